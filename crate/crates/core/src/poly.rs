//! Dense polynomials in `t` with big-integer coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// `coeffs[k]` is the coefficient of `t^k`. Trailing zeros are always trimmed,
/// so the zero polynomial has no coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<BigInt>", into = "Vec<BigInt>")]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial::default()
    }

    pub fn from_coeffs<T: Into<BigInt>>(coeffs: impl IntoIterator<Item = T>) -> Self {
        let mut p = IntPolynomial {
            coeffs: coeffs.into_iter().map(Into::into).collect(),
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Adds `amount` to the coefficient of `t^k`.
    pub fn add_to_coeff(&mut self, k: usize, amount: impl Into<BigInt>) {
        if self.coeffs.len() <= k {
            self.coeffs.resize(k + 1, BigInt::zero());
        }
        self.coeffs[k] += amount.into();
        self.trim();
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn scaled(&self, factor: &BigInt) -> Self {
        IntPolynomial::from_coeffs(self.coeffs.iter().map(|c| c * factor))
    }
}

impl From<Vec<BigInt>> for IntPolynomial {
    fn from(coeffs: Vec<BigInt>) -> Self {
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl From<IntPolynomial> for Vec<BigInt> {
    fn from(p: IntPolynomial) -> Self {
        p.coeffs
    }
}

impl AddAssign<&IntPolynomial> for IntPolynomial {
    fn add_assign(&mut self, rhs: &IntPolynomial) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        self.trim();
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
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
        IntPolynomial::from_coeffs(out)
    }
}

/// `2 + 3t + t^3`; the zero polynomial prints as `0`.
impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c < &BigInt::zero();
            let magnitude = c.magnitude();
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let unit = magnitude.is_one();
            if k == 0 || !unit {
                write!(f, "{magnitude}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_eval() {
        let p = IntPolynomial::from_coeffs([2, 3, 0, 1]);
        assert_eq!(p.to_string(), "2 + 3t + t^3");
        assert_eq!(p.eval(&BigInt::from(1)), BigInt::from(6));
        assert_eq!(p.eval(&BigInt::from(0)), BigInt::from(2));
        assert_eq!(IntPolynomial::from_coeffs([0, 1]).to_string(), "t");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(
            IntPolynomial::from_coeffs([-1, 0, -2]).to_string(),
            "-1 - 2t^2"
        );
    }

    #[test]
    fn trimming() {
        let p = IntPolynomial::from_coeffs([1, 0, 0]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(IntPolynomial::from_coeffs([0, 0]).degree(), None);
        let mut q = IntPolynomial::from_coeffs([0, 1]);
        q.add_to_coeff(1, -1);
        assert!(q.is_zero());
    }

    #[test]
    fn arithmetic() {
        let a = IntPolynomial::from_coeffs([1, 1]);
        let b = IntPolynomial::from_coeffs([1, -1]);
        assert_eq!(&a * &b, IntPolynomial::from_coeffs([1, 0, -1]));
        assert_eq!(&a + &b, IntPolynomial::from_coeffs([2]));
        assert_eq!(
            a.scaled(&BigInt::from(3)),
            IntPolynomial::from_coeffs([3, 3])
        );
    }
}
