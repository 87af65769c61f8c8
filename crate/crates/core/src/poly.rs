//! Dense univariate polynomials with arbitrary-precision integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Coefficients in ascending degree; the zero polynomial is the empty vector
/// and every other polynomial has a nonzero leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `(t - r_1)(t - r_2)...`
    pub fn from_roots(roots: &[i64]) -> Self {
        roots.iter().fold(Self::from_i64(&[1]), |acc, &r| {
            &acc * &Self::from_i64(&[-r, 1])
        })
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coefficient().is_some_and(One::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coefficient(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Gcd of the coefficients (zero for the zero polynomial), always nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides by the content, leaving a positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading_coefficient().expect("nonzero").is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Exact division by `divisor`; `None` if it leaves a remainder or is not
    /// exact over the integers.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        let d = divisor.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let lead = divisor.leading_coefficient().expect("nonzero");
        let mut rem = self.coeffs.clone();
        let n = self.degree().expect("nonzero");
        if n < d {
            return None;
        }
        let mut quot = vec![BigInt::zero(); n - d + 1];
        for k in (0..=n - d).rev() {
            let top = &rem[k + d];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
            quot[k] = q;
        }
        rem.iter().all(Zero::is_zero).then(|| Self::new(quot))
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) · a mod b`.
    pub fn pseudo_rem(&self, b: &IntPolynomial) -> IntPolynomial {
        let db = b.degree().expect("pseudo-division by zero polynomial");
        let Some(da) = self.degree() else {
            return Self::zero();
        };
        if da < db {
            return self.clone();
        }
        let lead = b.leading_coefficient().expect("nonzero");
        let mut r = self.coeffs.clone();
        for k in (0..=da - db).rev() {
            let top = r[k + db].clone();
            for c in r.iter_mut() {
                *c *= lead;
            }
            for (i, c) in b.coeffs.iter().enumerate() {
                r[k + i] -= &top * c;
            }
        }
        r.truncate(db);
        Self::new(r)
    }

    /// `p(t) -> p(a + s·t)` for integers `a`, `s`.
    pub fn compose_linear(&self, a: &BigInt, s: &BigInt) -> IntPolynomial {
        let lin = IntPolynomial::new(vec![a.clone(), s.clone()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * &lin) + &Self::constant(c.clone())
        })
    }
}

pub(crate) fn to_f64(c: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or(if c.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new(
            (0..n)
                .map(|k| self.coefficient(k) + rhs.coefficient(k))
                .collect(),
        )
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new(
            (0..n)
                .map(|k| self.coefficient(k) - rhs.coefficient(k))
                .collect(),
        )
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPolynomial {
    /// Descending-degree form in `t`, e.g. `t^3 - 3t - 2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            if k == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

/// Serialized as an ascending array of decimal strings.
impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(ToString::to_string))
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        let coeffs = raw
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntPolynomial::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn normalization_and_display() {
        assert!(poly(&[0, 0]).is_zero());
        assert_eq!(poly(&[1, 2, 0]).degree(), Some(1));
        assert_eq!(poly(&[-2, -3, 0, 1]).to_string(), "t^3 - 3t - 2");
        assert_eq!(poly(&[0, -1]).to_string(), "-t");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn arithmetic() {
        let a = IntPolynomial::from_roots(&[2, -1, -1]);
        assert_eq!(a, poly(&[-2, -3, 0, 1]));
        assert_eq!(&a - &a, IntPolynomial::zero());
        let b = poly(&[1, 1]);
        assert_eq!(
            a.div_exact(&b).unwrap(),
            IntPolynomial::from_roots(&[2, -1])
        );
        assert_eq!(a.div_exact(&poly(&[1, 2])), None);
        assert_eq!(poly(&[1, 0, 1]).div_exact(&b), None);
        assert_eq!(poly(&[6, 4, 2]).primitive_part(), poly(&[3, 2, 1]));
        assert_eq!(poly(&[-6, -4]).primitive_part(), poly(&[3, 2]));
    }

    #[test]
    fn pseudo_remainder_matches_definition() {
        // lc(b)^(2-1+1) a = q b + r with deg r < deg b
        let a = poly(&[1, 2, 3]);
        let b = poly(&[1, 2]);
        let r = a.pseudo_rem(&b);
        let scaled = a.scale(&BigInt::from(4));
        let diff = &scaled - &r;
        assert!(diff.div_exact(&b).is_some());
        assert!(r.degree().unwrap_or(0) < 1);
    }

    #[test]
    fn linear_composition() {
        // p(t) = t^2 - 1, p(1 - t) = t^2 - 2t
        let p = poly(&[-1, 0, 1]);
        assert_eq!(
            p.compose_linear(&BigInt::from(1), &BigInt::from(-1)),
            poly(&[0, -2, 1])
        );
    }

    #[test]
    fn serde_as_decimal_strings() {
        let p = poly(&[-2, -3, 0, 1]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"["-2","-3","0","1"]"#);
        assert_eq!(serde_json::from_str::<IntPolynomial>(&json).unwrap(), p);
    }
}
