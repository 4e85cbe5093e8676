use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::matrix::RatMatrix;
use super::rational::{int, Rational};

/// Univariate polynomial in `t`, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// `(t - 1)^k`
    pub fn t_minus_one_pow(k: usize) -> Self {
        let base = Polynomial::from_ints(&[-1, 1]);
        (0..k).fold(Polynomial::from_ints(&[1]), |acc, _| acc.mul(&base))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).copied().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Polynomial::new(vec![]);
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1;
            let c = rem[k] / lead;
            quot[k - dd] = c;
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + i] -= c * dc;
            }
            rem.pop();
            while rem.last().is_some_and(|x| x.is_zero()) && rem.len() > dd {
                rem.pop();
            }
        }
        (Polynomial::new(quot), Polynomial::new(rem))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `det(t I - A)` by Faddeev-LeVerrier in exact arithmetic.
pub fn char_poly(a: &RatMatrix) -> Polynomial {
    assert!(a.is_square());
    let n = a.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let id = RatMatrix::identity(n);
    let mut m = RatMatrix::zeros(n, n);
    for k in 1..=n {
        m = a.mul_mat(&m).add_mat(&id.scale(&coeffs[n - k + 1]));
        coeffs[n - k] = -a.mul_mat(&m).trace() / int(k as i64);
    }
    Polynomial::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::matrix::IntMatrix;

    #[test]
    fn char_poly_of_rotation_and_reflection() {
        let j = IntMatrix::from_rows(vec![vec![0, 1], vec![-1, 0]]).to_rational();
        assert_eq!(char_poly(&j), Polynomial::from_ints(&[1, 0, 1]));
        let r = IntMatrix::diagonal(&[1, -1, -1]).to_rational();
        assert_eq!(char_poly(&r), Polynomial::from_ints(&[-1, -1, 1, 1]));
        assert_eq!(char_poly(&RatMatrix::identity(3)), Polynomial::t_minus_one_pow(3));
    }

    #[test]
    fn exact_division_and_display() {
        let p = Polynomial::from_ints(&[-1, -1, 1, 1]);
        let (q, r) = p.div_rem(&Polynomial::from_ints(&[-1, 1]));
        assert!(r.coeffs().is_empty());
        assert_eq!(q, Polynomial::from_ints(&[1, 2, 1]));
        assert_eq!(q.to_string(), "t^2 + 2t + 1");
        assert_eq!(Polynomial::from_ints(&[-1, 0, -3]).to_string(), "-3t^2 - 1");
        assert_eq!(Polynomial::from_ints(&[1]).to_string(), "1");
    }
}
