//! Independent oracles for the integration tests. Nothing here calls the
//! library's polynomial or group algorithms.

#![allow(dead_code)]

use lexwreath::{Graph, IntPolynomial};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

pub fn factorial(n: u64) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// All permutations of `0..n` as image vectors, by recursive insertion.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn sign(p: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Ascending coefficients of `a * b` for i64 coefficient vectors.
fn mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `det(tI − A)` by the Leibniz expansion with polynomial entries.
pub fn leibniz_char_poly(g: &Graph) -> IntPolynomial {
    let n = g.vertex_count();
    let entry = |i: usize, j: usize| -> Vec<i64> {
        if i == j {
            vec![0, 1]
        } else if g.has_edge(i, j) {
            vec![-1]
        } else {
            vec![0]
        }
    };
    let mut total = vec![0i64; n + 1];
    for p in permutations(n) {
        let term = (0..n).fold(vec![sign(&p)], |acc, i| mul(&acc, &entry(i, p[i])));
        for (k, c) in term.iter().enumerate() {
            total[k] += c;
        }
    }
    IntPolynomial::from_i64(&total)
}

/// Determinant by fraction-free Bareiss elimination.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = ((k + 1)..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Resultant via the Sylvester matrix; zero iff the polynomials share a root
/// (for nonzero leading coefficients).
pub fn sylvester_resultant(f: &IntPolynomial, g: &IntPolynomial) -> BigInt {
    let (m, n) = (f.degree().unwrap(), g.degree().unwrap());
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut rows = Vec::with_capacity(size);
    let desc =
        |p: &IntPolynomial| -> Vec<BigInt> { p.coefficients().iter().rev().cloned().collect() };
    let (fd, gd) = (desc(f), desc(g));
    for r in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (k, c) in fd.iter().enumerate() {
            row[r + k] = c.clone();
        }
        rows.push(row);
    }
    for r in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (k, c) in gd.iter().enumerate() {
            row[r + k] = c.clone();
        }
        rows.push(row);
    }
    bareiss_det(rows)
}

/// Labeled graph on `n <= 11` vertices from the low bits of `mask`, pairs in
/// column order `(0,1), (0,2), (1,2), (0,3), ...`.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut k = 0;
    Graph::from_fn(n, |_, _| {
        let bit = mask >> k & 1 == 1;
        k += 1;
        bit
    })
    .unwrap()
}
