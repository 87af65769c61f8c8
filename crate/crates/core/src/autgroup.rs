//! Automorphism groups of graphs.
//!
//! [`automorphism_group`] runs an individualization–refinement search with
//! 1-dimensional Weisfeiler–Leman color refinement. It walks a fixed "left"
//! path of individualized base points, then, deepest level first, completes the
//! basic orbit of each base point by searching for one automorphism per
//! missing orbit point. The generators found this way form a strong generating
//! set for the base, so the order is the product of the basic orbit lengths.

use num_bigint::BigUint;
use num_traits::{One, Pow};
use thiserror::Error;

use crate::graph::{words_for, Graph};
use crate::perm::{PermGroup, Permutation};

/// Default vertex cap for [`brute_force_automorphisms`].
pub const DEFAULT_BRUTE_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutError {
    #[error("permutation acts on {found} points but the graph has {expected} vertices")]
    LengthMismatch { expected: usize, found: usize },
    #[error("brute force refused: {vertices} vertices exceeds the cap of {cap}")]
    BruteForceCap { vertices: usize, cap: usize },
}

fn check_length(g: &Graph, sigma: &Permutation) -> Result<(), AutError> {
    if sigma.degree() != g.vertex_count() {
        return Err(AutError::LengthMismatch {
            expected: g.vertex_count(),
            found: sigma.degree(),
        });
    }
    Ok(())
}

/// Tests `d P = P d`, where `P` is the permutation matrix of `sigma`
/// (`P[σ(j)][j] = 1`). Entry-wise, `(dP)[i][j] = d[i][σ(j)]` and
/// `(Pd)[i][j] = d[σ⁻¹(i)][j]`.
pub fn is_automorphism(g: &Graph, sigma: &Permutation) -> Result<bool, AutError> {
    check_length(g, sigma)?;
    let n = g.vertex_count();
    let inv = sigma.inverse();
    for i in 0..n {
        for j in 0..n {
            let dp = g.has_edge(i, sigma.apply(j));
            let pd = g.has_edge(inv.apply(i), j);
            if dp != pd {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Tests `σ(i) ~ σ(j) ⟺ i ~ j` directly.
pub fn preserves_edges(g: &Graph, sigma: &Permutation) -> Result<bool, AutError> {
    check_length(g, sigma)?;
    Ok(preserves_edges_unchecked(g, sigma.images()))
}

fn preserves_edges_unchecked(g: &Graph, images: &[usize]) -> bool {
    let n = g.vertex_count();
    (0..n).all(|i| ((i + 1)..n).all(|j| g.has_edge(images[i], images[j]) == g.has_edge(i, j)))
}

/// Evaluates, for the 0/1 matrix `u = P_σ` (`u[i][k] = 1` iff `σ(k) = i`),
/// the three relation sets characterizing graph symmetries of a magic unitary:
///
/// 1. `d u = u d`;
/// 2. `Σ_{k ∈ W(i)} u[k][j] = Σ_{k ∈ W(j)} u[i][k]` for all `i, j`, where
///    `W(i)` are the co-neighbors of `i`;
/// 3. `(i ~ j and k ≁ l) ⟹ u[i][k]·u[j][l] = 0 = u[k][i]·u[l][j]`.
///
/// Returns `true` iff all three verdicts coincide.
pub fn relation_equivalence_check(g: &Graph, sigma: &Permutation) -> Result<bool, AutError> {
    check_length(g, sigma)?;
    let u = permutation_matrix(sigma);
    let d: Vec<Vec<i64>> = g
        .adjacency_matrix()
        .into_iter()
        .map(|r| r.into_iter().map(i64::from).collect())
        .collect();
    let r1 = commutes(&d, &u);
    let r2 = co_neighbor_sums_agree(g, &u);
    let r3 = vanishing_products(g, &u);
    Ok(r1 == r2 && r2 == r3)
}

/// Individual verdicts of the three relation sets, in order.
pub fn relation_verdicts(g: &Graph, sigma: &Permutation) -> Result<[bool; 3], AutError> {
    check_length(g, sigma)?;
    let u = permutation_matrix(sigma);
    let d: Vec<Vec<i64>> = g
        .adjacency_matrix()
        .into_iter()
        .map(|r| r.into_iter().map(i64::from).collect())
        .collect();
    Ok([
        commutes(&d, &u),
        co_neighbor_sums_agree(g, &u),
        vanishing_products(g, &u),
    ])
}

fn permutation_matrix(sigma: &Permutation) -> Vec<Vec<i64>> {
    let n = sigma.degree();
    let mut m = vec![vec![0; n]; n];
    for k in 0..n {
        m[sigma.apply(k)][k] = 1;
    }
    m
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut c = vec![vec![0; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] != 0 {
                for j in 0..n {
                    c[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    c
}

fn commutes(d: &[Vec<i64>], u: &[Vec<i64>]) -> bool {
    mat_mul(d, u) == mat_mul(u, d)
}

fn co_neighbor_sums_agree(g: &Graph, u: &[Vec<i64>]) -> bool {
    let n = g.vertex_count();
    let w: Vec<Vec<usize>> = (0..n)
        .map(|i| g.co_neighbors(i).expect("in range"))
        .collect();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let lhs: i64 = w[i].iter().map(|&k| u[k][j]).sum();
            let rhs: i64 = w[j].iter().map(|&k| u[i][k]).sum();
            lhs == rhs
        })
    })
}

fn vanishing_products(g: &Graph, u: &[Vec<i64>]) -> bool {
    let n = g.vertex_count();
    for i in 0..n {
        for j in 0..n {
            if !g.has_edge(i, j) {
                continue;
            }
            for k in 0..n {
                for l in 0..n {
                    if g.has_edge(k, l) {
                        continue;
                    }
                    if u[i][k] * u[j][l] != 0 || u[k][i] * u[l][j] != 0 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Every automorphism of `g`, found by scanning all `n!` permutations in
/// lexicographic order. Refuses graphs with more than `cap` vertices.
pub fn brute_force_automorphisms(g: &Graph, cap: usize) -> Result<Vec<Permutation>, AutError> {
    let n = g.vertex_count();
    if n > cap {
        return Err(AutError::BruteForceCap { vertices: n, cap });
    }
    let mut sigma = Permutation::identity(n);
    let mut out = Vec::new();
    loop {
        if is_automorphism(g, &sigma)? {
            out.push(sigma.clone());
        }
        if !sigma.next_lexicographic() {
            return Ok(out);
        }
    }
}

/// `|Aut(x)|^{|y|} · |Aut(y)|`, the order of the wreath product
/// `Aut(x) ≀ Aut(y)` embedded in `Aut(x ∘ y)`.
pub fn wreath_embedding_order(x: &Graph, y: &Graph) -> BigUint {
    let ax = automorphism_group(x);
    let ay = automorphism_group(y);
    wreath_order(ax.order(), y.vertex_count(), ay.order())
}

pub fn wreath_order(inner: &BigUint, copies: usize, outer: &BigUint) -> BigUint {
    Pow::pow(inner, copies) * outer
}

/// The image of `(σ_0, …, σ_{n-1}; τ)` under the wreath embedding:
/// `(i, a) ↦ (σ_a(i), τ(a))`, with vertex `(i, a)` at flat index `a·p + i`.
pub fn wreath_embed(inner: &[Permutation], outer: &Permutation) -> Permutation {
    assert_eq!(
        inner.len(),
        outer.degree(),
        "one inner permutation per outer point"
    );
    let p = inner.first().map_or(0, Permutation::degree);
    let n = outer.degree();
    let mut images = vec![0; p * n];
    for a in 0..n {
        assert_eq!(
            inner[a].degree(),
            p,
            "inner permutations must share a degree"
        );
        for i in 0..p {
            images[a * p + i] = outer.apply(a) * p + inner[a].apply(i);
        }
    }
    Permutation::from_images(images).expect("wreath image is a bijection")
}

/// The subgroup `Aut(x) ≀ Aut(y) ≤ Sym(|x|·|y|)` generated by the embedded
/// generators of both factors.
pub fn wreath_group(x: &Graph, y: &Graph) -> PermGroup {
    let (p, n) = (x.vertex_count(), y.vertex_count());
    let ax = automorphism_group(x);
    let ay = automorphism_group(y);
    let id_x = Permutation::identity(p);
    let mut gens = Vec::new();
    for a in 0..n {
        for s in ax.generators() {
            let mut inner = vec![id_x.clone(); n];
            inner[a] = s.clone();
            gens.push(wreath_embed(&inner, &Permutation::identity(n)));
        }
    }
    for t in ay.generators() {
        gens.push(wreath_embed(&vec![id_x.clone(); n], t));
    }
    PermGroup::from_generators(p * n, gens)
}

type Cells = Vec<Vec<usize>>;

/// Refines an ordered partition to the coarsest equitable partition below it.
/// Every decision depends only on cell positions and neighbor counts, so the
/// result commutes with relabeling.
fn refine(g: &Graph, cells: &mut Cells) {
    let words = words_for(g.vertex_count());
    loop {
        let mut split_any = false;
        let mut s = 0;
        while s < cells.len() {
            let mut mask = vec![0u64; words];
            for &v in &cells[s] {
                mask[v / 64] |= 1 << (v % 64);
            }
            let mut next = Vec::with_capacity(cells.len());
            for cell in cells.drain(..) {
                if cell.len() == 1 {
                    next.push(cell);
                    continue;
                }
                let mut keyed: Vec<(usize, usize)> =
                    cell.iter().map(|&v| (g.count_in(v, &mask), v)).collect();
                keyed.sort_unstable();
                let mut start = 0;
                for k in 1..=keyed.len() {
                    if k == keyed.len() || keyed[k].0 != keyed[start].0 {
                        next.push(keyed[start..k].iter().map(|&(_, v)| v).collect());
                        start = k;
                    }
                }
                if keyed[0].0 != keyed[keyed.len() - 1].0 {
                    split_any = true;
                }
            }
            *cells = next;
            s += 1;
        }
        if !split_any {
            return;
        }
    }
}

/// Splits cell `ci` into `[v]` followed by the rest.
fn individualize(cells: &Cells, ci: usize, v: usize) -> Cells {
    let mut out = Vec::with_capacity(cells.len() + 1);
    out.extend_from_slice(&cells[..ci]);
    out.push(vec![v]);
    out.push(cells[ci].iter().copied().filter(|&w| w != v).collect());
    out.extend_from_slice(&cells[ci + 1..]);
    out
}

/// Necessary condition for some automorphism to map `left` onto `right`
/// cell by cell: equal cell sizes and equal quotient matrices.
fn compatible(g: &Graph, left: &Cells, right: &Cells) -> bool {
    if left.len() != right.len() || left.iter().zip(right).any(|(a, b)| a.len() != b.len()) {
        return false;
    }
    let words = words_for(g.vertex_count());
    let masks = |cells: &Cells| -> Vec<Vec<u64>> {
        cells
            .iter()
            .map(|c| {
                let mut m = vec![0u64; words];
                for &v in c {
                    m[v / 64] |= 1 << (v % 64);
                }
                m
            })
            .collect()
    };
    let (lm, rm) = (masks(left), masks(right));
    (0..left.len()).all(|a| {
        (0..left.len()).all(|b| g.count_in(left[a][0], &lm[b]) == g.count_in(right[a][0], &rm[b]))
    })
}

struct Search<'a> {
    graph: &'a Graph,
    /// `path[k]` is the refined partition before individualizing `base[k]`.
    path: Vec<Cells>,
    /// Index of the target cell at each level.
    target: Vec<usize>,
    base: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(graph: &'a Graph) -> Self {
        let mut cells = vec![(0..graph.vertex_count()).collect::<Vec<_>>()];
        refine(graph, &mut cells);
        let mut search = Search {
            graph,
            path: Vec::new(),
            target: Vec::new(),
            base: Vec::new(),
        };
        while let Some(ci) = cells.iter().position(|c| c.len() > 1) {
            let b = *cells[ci].iter().min().expect("nonempty cell");
            let mut next = individualize(&cells, ci, b);
            refine(graph, &mut next);
            search.path.push(cells);
            search.target.push(ci);
            search.base.push(b);
            cells = next;
        }
        search.path.push(cells);
        search
    }

    fn depth(&self) -> usize {
        self.base.len()
    }

    /// An automorphism fixing `base[..level]` and sending `base[level]` to `v`.
    fn find(&self, level: usize, v: usize) -> Option<Permutation> {
        let mut right = individualize(&self.path[level], self.target[level], v);
        refine(self.graph, &mut right);
        if !compatible(self.graph, &self.path[level + 1], &right) {
            return None;
        }
        self.descend(level + 1, &right)
    }

    fn descend(&self, level: usize, right: &Cells) -> Option<Permutation> {
        if level == self.depth() {
            let n = self.graph.vertex_count();
            let mut images = vec![0; n];
            for (l, r) in self.path[level].iter().zip(right) {
                images[l[0]] = r[0];
            }
            return preserves_edges_unchecked(self.graph, &images).then(|| {
                Permutation::from_images(images).expect("discrete partitions give a bijection")
            });
        }
        let ci = self.target[level];
        let mut candidates = right[ci].clone();
        candidates.sort_unstable();
        for w in candidates {
            let mut next = individualize(right, ci, w);
            refine(self.graph, &mut next);
            if compatible(self.graph, &self.path[level + 1], &next) {
                if let Some(found) = self.descend(level + 1, &next) {
                    return Some(found);
                }
            }
        }
        None
    }
}

fn orbit(point: usize, gens: &[&Permutation], n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[point] = true;
    let mut stack = vec![point];
    while let Some(v) = stack.pop() {
        for g in gens {
            let w = g.apply(v);
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// The full automorphism group of `g` with its exact order.
///
/// Deterministic: base points are the smallest vertex of the first
/// non-singleton cell, and candidate images are tried in ascending order.
pub fn automorphism_group(g: &Graph) -> PermGroup {
    let n = g.vertex_count();
    let search = Search::new(g);
    // (level, generator); a generator found at level k fixes base[..k]
    let mut found: Vec<(usize, Permutation)> = Vec::new();
    let mut orbit_product = BigUint::one();
    for level in (0..search.depth()).rev() {
        let b = search.base[level];
        let gens_at = |found: &[(usize, Permutation)]| -> Vec<Permutation> {
            found
                .iter()
                .filter(|(k, _)| *k >= level)
                .map(|(_, p)| p.clone())
                .collect()
        };
        let mut current = gens_at(&found);
        let mut in_orbit = orbit(b, &current.iter().collect::<Vec<_>>(), n);
        let mut cell = search.path[level][search.target[level]].clone();
        cell.sort_unstable();
        for v in cell {
            if in_orbit[v] {
                continue;
            }
            if let Some(sigma) = search.find(level, v) {
                debug_assert!(preserves_edges_unchecked(g, sigma.images()));
                found.push((level, sigma));
                current = gens_at(&found);
                in_orbit = orbit(b, &current.iter().collect::<Vec<_>>(), n);
            }
        }
        orbit_product *= BigUint::from(in_orbit.iter().filter(|&&x| x).count());
    }
    // generators in base order: outermost level first
    found.sort_by_key(|(k, _)| *k);
    let gens: Vec<Permutation> = found.into_iter().map(|(_, p)| p).collect();
    let group = PermGroup::from_base_and_strong_generators(n, search.base.clone(), gens);
    debug_assert_eq!(
        group.order(),
        &orbit_product,
        "chain order disagrees with search orbits"
    );
    group
}

/// Exact order of a group.
pub fn group_order(group: &PermGroup) -> BigUint {
    group.order().clone()
}
