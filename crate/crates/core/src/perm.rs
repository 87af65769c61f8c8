//! Permutations and permutation groups given by a stabilizer chain.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("image list is not a bijection on 0..{0}")]
    NotABijection(usize),
    #[error("cannot parse permutation: {0}")]
    Syntax(String),
}

/// A bijection on `0..n`, stored as its image list: `i -> images[i]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(PermError::NotABijection(n));
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &j)| *i != j)
            .map(|(i, _)| i)
    }

    /// Rewrites to the next permutation in lexicographic order of image lists.
    /// Returns `false` (leaving `self` unchanged) at the last permutation.
    pub fn next_lexicographic(&mut self) -> bool {
        let v = &mut self.images;
        let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
            return false;
        };
        let j = (i..v.len())
            .rev()
            .find(|&j| v[j] > v[i - 1])
            .expect("v[i] qualifies");
        v.swap(i - 1, j);
        v[i..].reverse();
        true
    }
}

impl fmt::Display for Permutation {
    /// One-line image notation, e.g. `[2,0,1]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, x) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, PermError> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| PermError::Syntax(format!("expected `[...]`, found `{s}`")))?;
        let images = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| PermError::Syntax(format!("bad image `{t}`")))
                })
                .collect::<Result<_, _>>()?
        };
        Permutation::from_images(images)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One level of a stabilizer chain: the basic orbit of `base_point` under the
/// strong generators fixing all earlier base points, with coset
/// representatives.
#[derive(Debug, Clone)]
pub struct ChainLevel {
    pub base_point: usize,
    /// Orbit points in discovery order.
    pub orbit: Vec<usize>,
    /// `transversal[v]` maps `base_point` to `v` for every orbit point `v`.
    transversal: Vec<Option<Permutation>>,
}

impl ChainLevel {
    fn build(degree: usize, base_point: usize, gens: &[&Permutation]) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base_point] = Some(Permutation::identity(degree));
        let mut orbit = vec![base_point];
        let mut k = 0;
        while k < orbit.len() {
            let v = orbit[k];
            for g in gens {
                let w = g.apply(v);
                if transversal[w].is_none() {
                    let rep = g.compose(transversal[v].as_ref().expect("orbit point has a rep"));
                    transversal[w] = Some(rep);
                    orbit.push(w);
                }
            }
            k += 1;
        }
        ChainLevel {
            base_point,
            orbit,
            transversal,
        }
    }

    pub fn representative(&self, v: usize) -> Option<&Permutation> {
        self.transversal.get(v).and_then(Option::as_ref)
    }
}

/// A permutation group with an exact order, held as generators plus a
/// stabilizer chain (base and strong generating set).
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    strong: Vec<Permutation>,
    levels: Vec<ChainLevel>,
    order: BigUint,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        Self::from_generators(degree, Vec::new())
    }

    /// Builds the group generated by `generators` with the deterministic
    /// Schreier–Sims algorithm.
    pub fn from_generators(degree: usize, generators: Vec<Permutation>) -> Self {
        Self::with_base(degree, generators, &[])
    }

    /// Schreier–Sims seeded with a preferred base prefix.
    pub fn with_base(degree: usize, generators: Vec<Permutation>, base: &[usize]) -> Self {
        for g in &generators {
            assert_eq!(g.degree(), degree, "generator degree mismatch");
        }
        let mut group = Self::assemble(degree, generators.clone(), generators, base.to_vec());
        group.complete();
        group
    }

    /// Builds the chain from a base and a generating set that the caller
    /// claims is strong for it, then checks the claim with random Schreier
    /// generators, falling back to full Schreier–Sims on any failure.
    pub fn from_base_and_strong_generators(
        degree: usize,
        base: Vec<usize>,
        strong: Vec<Permutation>,
    ) -> Self {
        let mut group = Self::assemble(degree, strong.clone(), strong, base);
        if !group.random_schreier_check(64, 0x5eed) {
            group.complete();
        }
        group
    }

    fn assemble(
        degree: usize,
        generators: Vec<Permutation>,
        strong: Vec<Permutation>,
        mut base: Vec<usize>,
    ) -> Self {
        let strong: Vec<Permutation> = strong.into_iter().filter(|g| !g.is_identity()).collect();
        for g in &strong {
            if base.iter().all(|&b| g.apply(b) == b) {
                base.push(g.first_moved_point().expect("non-identity"));
            }
        }
        let mut group = PermGroup {
            degree,
            generators,
            strong,
            levels: Vec::new(),
            order: BigUint::one(),
        };
        group.rebuild_levels_from(0, &base);
        group
    }

    fn level_generators(&self, i: usize) -> Vec<&Permutation> {
        self.strong
            .iter()
            .filter(|g| {
                self.levels[..i]
                    .iter()
                    .all(|l| g.apply(l.base_point) == l.base_point)
            })
            .collect()
    }

    fn rebuild_levels_from(&mut self, from: usize, base: &[usize]) {
        self.levels.truncate(from);
        for (i, &b) in base.iter().enumerate().skip(from) {
            let gens: Vec<Permutation> = self.level_generators(i).into_iter().cloned().collect();
            let refs: Vec<&Permutation> = gens.iter().collect();
            self.levels.push(ChainLevel::build(self.degree, b, &refs));
        }
        self.order = self
            .levels
            .iter()
            .map(|l| BigUint::from(l.orbit.len()))
            .product();
    }

    fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    /// Strips `g` through the chain starting at `from`. Returns the residue and
    /// the level where stripping stopped (`levels.len()` if it went through).
    fn strip(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let image = g.apply(level.base_point);
            match level.representative(image) {
                Some(rep) => g = rep.inverse().compose(&g),
                None => return (g, i),
            }
        }
        let depth = self.levels.len();
        (g, depth)
    }

    /// Deterministic Schreier–Sims: verify every Schreier generator level by
    /// level from the bottom, adding residues as new strong generators.
    fn complete(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            let level = i - 1;
            match self.find_unsifted(level) {
                Some((h, j)) => {
                    // h fixes base[..j]; it lies in the group already, so only
                    // levels below `level` can grow
                    let mut base = self.base();
                    if j == base.len() {
                        base.push(h.first_moved_point().expect("residue is not the identity"));
                    }
                    self.strong.push(h);
                    self.rebuild_levels_from(level + 1, &base);
                    i = j + 1;
                }
                None => i -= 1,
            }
        }
    }

    fn find_unsifted(&self, i: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[i];
        let gens = self.level_generators(i);
        for &beta in &level.orbit {
            let u_beta = level.representative(beta).expect("orbit point");
            for s in &gens {
                let u_sb = level
                    .representative(s.apply(beta))
                    .expect("orbit is closed");
                let schreier = u_sb.inverse().compose(&s.compose(u_beta));
                let (h, j) = self.strip(schreier, i + 1);
                if !h.is_identity() {
                    return Some((h, j));
                }
            }
        }
        None
    }

    fn random_schreier_check(&self, samples: usize, seed: u64) -> bool {
        if self.levels.is_empty() {
            return self.strong.is_empty();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let level_gens: Vec<Vec<&Permutation>> = (0..self.levels.len())
            .map(|i| self.level_generators(i))
            .collect();
        for _ in 0..samples {
            let i = rng.gen_range(0..self.levels.len());
            let level = &self.levels[i];
            let Some(s) = level_gens[i].choose(&mut rng) else {
                continue;
            };
            let beta = *level
                .orbit
                .choose(&mut rng)
                .expect("orbit contains base point");
            let u_beta = level.representative(beta).expect("orbit point");
            let u_sb = level
                .representative(s.apply(beta))
                .expect("orbit is closed");
            let schreier = u_sb.inverse().compose(&s.compose(u_beta));
            if !self.strip(schreier, i + 1).0.is_identity() {
                return false;
            }
        }
        true
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    pub fn chain(&self) -> &[ChainLevel] {
        &self.levels
    }

    /// Exact group order: the product of basic orbit lengths.
    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Membership by sifting through the chain.
    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.strip(g.clone(), 0).0.is_identity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Permutation {
        Permutation::from_images(v.to_vec()).unwrap()
    }

    fn factorial(n: u64) -> BigUint {
        (1..=n).map(BigUint::from).product()
    }

    #[test]
    fn permutation_basics() {
        let a = p(&[1, 2, 0]);
        assert_eq!(a.compose(&a.inverse()), Permutation::identity(3));
        assert_eq!(a.compose(&p(&[1, 0, 2])).images(), &[2, 1, 0]);
        assert_eq!(a.to_string(), "[1,2,0]");
        assert_eq!("[1, 2,0]".parse::<Permutation>().unwrap(), a);
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![2, 0]).is_err());
        assert!("1,2".parse::<Permutation>().is_err());
        assert_eq!(serde_json::to_string(&a).unwrap(), "\"[1,2,0]\"");
    }

    #[test]
    fn lexicographic_enumeration() {
        let mut q = Permutation::identity(4);
        let mut all = vec![q.clone()];
        while q.next_lexicographic() {
            all.push(q.clone());
        }
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn symmetric_group_orders() {
        for n in 2..=9u64 {
            let cycle: Vec<usize> = (0..n as usize).map(|i| (i + 1) % n as usize).collect();
            let mut swap: Vec<usize> = (0..n as usize).collect();
            swap.swap(0, 1);
            let g = PermGroup::from_generators(n as usize, vec![p(&cycle), p(&swap)]);
            assert_eq!(g.order(), &factorial(n));
        }
    }

    #[test]
    fn alternating_and_cyclic_orders() {
        // 3-cycles generate A_5
        let g = PermGroup::from_generators(5, vec![p(&[1, 2, 0, 3, 4]), p(&[0, 1, 3, 4, 2])]);
        assert_eq!(g.order(), &BigUint::from(60u32));
        assert!(!g.contains(&p(&[1, 0, 2, 3, 4])));
        assert!(g.contains(&p(&[1, 0, 3, 2, 4])));
        let c = PermGroup::from_generators(6, vec![p(&[1, 2, 3, 4, 5, 0])]);
        assert_eq!(c.order(), &BigUint::from(6u32));
        assert_eq!(PermGroup::trivial(4).order(), &BigUint::from(1u32));
    }

    #[test]
    fn wrong_strong_claim_is_repaired() {
        // [1,2,0,3] and [0,1,3,2] with base [0]: the claimed chain misses the
        // stabilizer of 0, which random Schreier generators expose.
        let gens = vec![p(&[1, 0, 2, 3]), p(&[0, 2, 3, 1])];
        let g = PermGroup::from_base_and_strong_generators(4, vec![0], gens);
        assert_eq!(g.order(), &BigUint::from(24u32));
    }
}
