//! Exact evaluation of the spectral sufficient condition for the wreath
//! decomposition of `X ∘ Y`:
//!
//! ```text
//! {λ1 − λi | i ≠ 1} ∩ {−n·μj} = ∅
//! ```
//!
//! where `λi` runs over the adjacency spectrum of `X` (regular, connected,
//! valence `λ1`, order `n`) and `μj` over that of `Y` (regular). Both sets are
//! carried as roots of integer polynomials, and emptiness of the intersection
//! is decided by a subresultant gcd. Floating-point spectra are only used for
//! reporting a witness and for cross-checks.

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::poly::IntPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("the zero polynomial has no well-defined root set")]
    ZeroPolynomial,
}

/// `det(tI − A)` by Faddeev–LeVerrier. Every division in the recurrence is
/// exact for integer matrices.
pub fn char_poly(g: &Graph) -> IntPolynomial {
    let n = g.vertex_count();
    let nbrs: Vec<Vec<usize>> = (0..n).map(|i| g.neighbors(i).expect("in range")).collect();
    let times_adjacency = |m: &[Vec<BigInt>]| -> Vec<Vec<BigInt>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        nbrs[i]
                            .iter()
                            .fold(BigInt::zero(), |acc, &k| acc + &m[k][j])
                    })
                    .collect()
            })
            .collect()
    };
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    // A·M_{k-1}, with M_0 = 0
    let mut am = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        let mut m = am;
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        am = times_adjacency(&m);
        let trace = (0..n).fold(BigInt::zero(), |acc, i| acc + &am[i][i]);
        let k_big = BigInt::from(k);
        debug_assert!(
            (&trace % &k_big).is_zero(),
            "Faddeev–LeVerrier division must be exact"
        );
        coeffs[n - k] = -(trace / k_big);
    }
    IntPolynomial::new(coeffs)
}

/// `q(t) = ±p(c − t)`, signed so that `q` keeps the leading coefficient of
/// `p`. The roots of `q` are `{c − λ : p(λ) = 0}`.
pub fn shift_reflect(p: &IntPolynomial, c: &BigInt) -> IntPolynomial {
    let q = p.compose_linear(c, &BigInt::from(-1));
    match p.degree() {
        Some(d) if d % 2 == 1 => -&q,
        _ => q,
    }
}

/// `r(t) = (−m)^deg · p(−t/m)`, an integer polynomial with the leading
/// coefficient of `p` whose roots are `{−m·μ : p(μ) = 0}`.
pub fn scale_negate(p: &IntPolynomial, m: u64) -> IntPolynomial {
    assert!(m >= 1, "scale factor must be positive");
    let Some(deg) = p.degree() else {
        return IntPolynomial::zero();
    };
    let m = BigInt::from(m);
    IntPolynomial::new(
        p.coefficients()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let sign = if (k + deg) % 2 == 0 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                };
                a * sign * Pow::pow(&m, deg - k)
            })
            .collect(),
    )
}

/// Gcd over `Z[t]` by the subresultant polynomial remainder sequence.
/// The result is primitive up to the gcd of the input contents and has a
/// positive leading coefficient.
pub fn poly_gcd(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let (mut a, mut b) = if a.degree() >= b.degree() {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    if b.is_zero() {
        return a.primitive_part().scale(&a.content());
    }
    let d = a.content().gcd_with(&b.content());
    a = a.primitive_part();
    b = b.primitive_part();
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.degree().expect("nonzero") - b.degree().expect("nonzero");
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            break;
        }
        if r.degree() == Some(0) {
            b = IntPolynomial::constant(BigInt::one());
            break;
        }
        a = b;
        let divisor = &g * Pow::pow(&h, delta);
        b = r
            .div_exact(&IntPolynomial::constant(divisor))
            .expect("subresultant division is exact");
        g = a.leading_coefficient().expect("nonzero").clone();
        // h = g^δ / h^(δ−1)
        h = if delta == 0 {
            h
        } else {
            Pow::pow(&g, delta) / Pow::pow(&h, delta - 1)
        };
    }
    b.primitive_part().scale(&d)
}

trait GcdWith {
    fn gcd_with(&self, other: &Self) -> Self;
}

impl GcdWith for BigInt {
    fn gcd_with(&self, other: &BigInt) -> BigInt {
        num_integer::Integer::gcd(self, other)
    }
}

/// Whether `f` and `g` share a complex root, i.e. their gcd over the
/// rationals is nonconstant.
pub fn have_common_root(f: &IntPolynomial, g: &IntPolynomial) -> Result<bool, SpectralError> {
    if f.is_zero() || g.is_zero() {
        return Err(SpectralError::ZeroPolynomial);
    }
    Ok(poly_gcd(f, g).degree().is_some_and(|d| d >= 1))
}

/// Polynomials behind an applicable verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralPolynomials {
    pub x_char_poly: IntPolynomial,
    pub y_char_poly: IntPolynomial,
    /// Roots `{λ1 − λi | i ≠ 1}`.
    pub shifted: IntPolynomial,
    /// Roots `{−n·μj}`.
    pub scaled: IntPolynomial,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralVerdict {
    /// Both graphs regular and `x` connected.
    pub applicable: bool,
    pub holds: bool,
    /// Approximate common value of the two root sets when the condition fails.
    pub witness: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomials: Option<SpectralPolynomials>,
}

impl SpectralVerdict {
    fn not_applicable(reason: &str) -> Self {
        SpectralVerdict {
            applicable: false,
            holds: false,
            witness: None,
            reason: Some(reason.to_string()),
            polynomials: None,
        }
    }
}

/// Decides the spectral condition exactly.
pub fn spectral_condition(x: &Graph, y: &Graph) -> SpectralVerdict {
    let Some(valence) = x.regularity() else {
        return SpectralVerdict::not_applicable("X is not regular");
    };
    if y.regularity().is_none() {
        return SpectralVerdict::not_applicable("Y is not regular");
    }
    if !x.is_connected() {
        return SpectralVerdict::not_applicable("X is not connected");
    }
    let px = char_poly(x);
    let py = char_poly(y);
    let reflected = shift_reflect(&px, &BigInt::from(valence));
    // the Perron root maps to 0 and is simple because X is connected
    assert!(
        reflected.coefficient(0).is_zero() && !reflected.coefficient(1).is_zero(),
        "valence must be a simple eigenvalue of a connected regular graph"
    );
    let shifted = reflected.div_exact(&IntPolynomial::t()).expect("root at 0");
    let scaled = scale_negate(&py, x.vertex_count() as u64);
    let common =
        have_common_root(&shifted, &scaled).expect("characteristic polynomials are nonzero");
    let witness = common.then(|| float_witness(x, y, valence)).flatten();
    SpectralVerdict {
        applicable: true,
        holds: !common,
        witness,
        reason: None,
        polynomials: Some(SpectralPolynomials {
            x_char_poly: px,
            y_char_poly: py,
            shifted,
            scaled,
        }),
    }
}

/// The two root sets computed from floating spectra: `{λ1 − λi}` with one copy
/// of the Perron value removed, and `{−n·μj}`.
pub fn float_root_sets(x: &Graph, y: &Graph, valence: usize) -> (Vec<f64>, Vec<f64>) {
    let mut lx = float_spectrum(x);
    let perron = lx
        .iter()
        .enumerate()
        .min_by(|a, b| {
            (a.1 - valence as f64)
                .abs()
                .total_cmp(&(b.1 - valence as f64).abs())
        })
        .map(|(k, _)| k)
        .expect("nonempty spectrum");
    lx.remove(perron);
    let shifted = lx.iter().map(|l| valence as f64 - l).collect();
    let n = x.vertex_count() as f64;
    let scaled = float_spectrum(y).iter().map(|m| -n * m).collect();
    (shifted, scaled)
}

/// Smallest distance between the two floating root sets and the pair
/// midpoint realizing it; `None` when either set is empty.
pub fn closest_pair(a: &[f64], b: &[f64]) -> Option<(f64, f64)> {
    a.iter()
        .flat_map(|&u| b.iter().map(move |&v| ((u - v).abs(), (u + v) / 2.0)))
        .min_by(|p, q| p.0.total_cmp(&q.0))
}

fn float_witness(x: &Graph, y: &Graph, valence: usize) -> Option<f64> {
    let (a, b) = float_root_sets(x, y, valence);
    closest_pair(&a, &b).map(|(_, mid)| mid)
}

/// Adjacency eigenvalues in ascending order by cyclic Jacobi rotations, run
/// until every off-diagonal entry is below `1e-12` in magnitude.
pub fn float_spectrum(g: &Graph) -> Vec<f64> {
    let n = g.vertex_count();
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if g.has_edge(i, j) { 1.0 } else { 0.0 })
                .collect()
        })
        .collect();
    for _sweep in 0..100 {
        let off = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| a[p][q].abs())
            .fold(0.0, f64::max);
        if off < 1e-12 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eig.sort_by(f64::total_cmp);
    eig
}

/// Largest absolute coefficient, as a float scale for residual checks.
pub fn max_abs_coefficient(p: &IntPolynomial) -> f64 {
    p.coefficients()
        .iter()
        .map(|c| crate::poly::to_f64(&c.abs()))
        .fold(0.0, f64::max)
}
