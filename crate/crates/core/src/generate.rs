//! Graph enumeration and random sampling for sweeps and property tests.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Graph, GraphError};

/// Unordered vertex pairs `(i, j)`, `i < j`, in column order: `(0,1), (0,2),
/// (1,2), (0,3), ...`. Bit `k` of an enumeration mask toggles pair `k`.
fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

/// Every labeled graph on exactly `n` vertices, `2^(n choose 2)` in total,
/// ordered by edge mask. `n` is limited to 11 so the mask fits in 64 bits.
pub fn all_labeled_graphs(n: usize) -> Result<impl Iterator<Item = Graph>, GraphError> {
    assert!(
        n <= 11,
        "labeled enumeration beyond 11 vertices is not supported"
    );
    Graph::empty(n)?;
    let pairs = pairs(n);
    let total: u64 = 1 << pairs.len();
    Ok((0..total).map(move |mask| {
        Graph::from_edges(
            n,
            pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e),
        )
        .expect("pairs are in range and loop-free")
    }))
}

/// All labeled graphs with `1..=max` vertices, smallest first.
pub fn all_labeled_graphs_up_to(max: usize) -> impl Iterator<Item = Graph> {
    (1..=max).flat_map(|n| all_labeled_graphs(n).expect("n >= 1"))
}

/// Erdős–Rényi sample: each pair is an edge with probability `p`.
pub fn random_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph, GraphError> {
    Graph::from_fn(n, |_, _| rng.gen_bool(p))
}

/// A uniformly random permutation of `0..n` as an image vector.
pub fn random_images<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    v
}

/// A random `k`-regular graph on `n` vertices via the pairing model with
/// rejection. Returns `None` when `n * k` is odd, `k >= n`, or no simple
/// pairing was found within the attempt budget.
pub fn random_regular<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Option<Graph> {
    if n == 0 || k >= n || (n * k) % 2 == 1 {
        return None;
    }
    // dense regular graphs come out faster as complements of sparse ones
    if 2 * k > n - 1 {
        return random_regular(n, n - 1 - k, rng).map(|g| g.complement());
    }
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat(v).take(k)).collect();
    'attempt: for _ in 0..10_000 {
        stubs.shuffle(rng);
        let mut edges = Vec::with_capacity(stubs.len() / 2);
        for pair in stubs.chunks(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || edges.contains(&(u, v)) {
                continue 'attempt;
            }
            edges.push((u, v));
        }
        return Graph::from_edges(n, edges).ok();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn labeled_counts() {
        let counts: Vec<usize> = (1..=5)
            .map(|n| all_labeled_graphs(n).unwrap().count())
            .collect();
        assert_eq!(counts, vec![1, 2, 8, 64, 1024]);
        assert_eq!(all_labeled_graphs_up_to(4).count(), 75);
    }

    #[test]
    fn labeled_graphs_are_distinct() {
        let all: std::collections::HashSet<Graph> = all_labeled_graphs(4).unwrap().collect();
        assert_eq!(all.len(), 64);
    }

    #[test]
    fn random_regular_is_regular() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=9 {
            for k in 0..n {
                match random_regular(n, k, &mut rng) {
                    Some(g) => assert_eq!(g.regularity(), Some(k), "n={n} k={k}"),
                    None => assert!(n * k % 2 == 1, "n={n} k={k}"),
                }
            }
        }
    }
}
