use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::matrix::RatMatrix;
use super::rational::{floor_sqrt, int, Rational};
use crate::error::{Error, Result};

/// Positive definite quadratic form `x^T G x` with its exact `L D L^T` factorisation.
///
/// `x^T G x = sum_j d_j (x_j + sum_{i>j} l_ij x_i)^2`, which drives the
/// coordinate-by-coordinate bounds of the enumerator.
#[derive(Clone, Debug)]
pub struct QuadraticForm {
    gram: RatMatrix,
    l: RatMatrix,
    d: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePoint {
    pub coords: Vec<i64>,
    pub norm: Rational,
}

impl QuadraticForm {
    pub fn new(gram: &RatMatrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::NotPositiveDefinite);
        }
        let n = gram.rows();
        let mut l = RatMatrix::identity(n);
        let mut d = vec![Rational::zero(); n];
        for j in 0..n {
            let mut dj = gram[(j, j)];
            for k in 0..j {
                dj -= l[(j, k)] * l[(j, k)] * d[k];
            }
            if !dj.is_positive() {
                return Err(Error::NotPositiveDefinite);
            }
            d[j] = dj;
            for i in j + 1..n {
                let mut v = gram[(i, j)];
                for k in 0..j {
                    v -= l[(i, k)] * l[(j, k)] * d[k];
                }
                l[(i, j)] = v / dj;
            }
        }
        Ok(QuadraticForm {
            gram: gram.clone(),
            l,
            d,
        })
    }

    pub fn dim(&self) -> usize {
        self.d.len()
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    /// Diagonal of the `L D L^T` factorisation; all entries are positive.
    pub fn ldl_diagonal(&self) -> &[Rational] {
        &self.d
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.gram.bilinear(x, x)
    }

    pub fn eval_int(&self, x: &[i64]) -> Rational {
        let xr: Vec<Rational> = x.iter().map(|&v| int(v)).collect();
        self.eval(&xr)
    }

    /// All integer `c` with `q(c + shift) <= max`, sorted lexicographically.
    pub fn enumerate_coset(&self, shift: &[Rational], max: &Rational) -> Vec<LatticePoint> {
        let n = self.dim();
        assert_eq!(shift.len(), n);
        let mut out = Vec::new();
        if max.is_negative() {
            return out;
        }
        if n == 0 {
            out.push(LatticePoint {
                coords: vec![],
                norm: Rational::zero(),
            });
            return out;
        }
        let mut c = vec![0i64; n];
        let mut y = vec![Rational::zero(); n];
        self.descend(n - 1, shift, max, &Rational::zero(), &mut c, &mut y, &mut out);
        out.sort_by(|a, b| a.coords.cmp(&b.coords));
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn descend(
        &self,
        j: usize,
        shift: &[Rational],
        max: &Rational,
        used: &Rational,
        c: &mut [i64],
        y: &mut [Rational],
        out: &mut Vec<LatticePoint>,
    ) {
        let n = self.dim();
        let mut center = shift[j];
        for i in j + 1..n {
            center += self.l[(i, j)] * y[i];
        }
        let remaining = max - used;
        let radius = floor_sqrt(&(remaining / self.d[j])) as i64;
        let neg = -center;
        let lo = neg.ceil().to_integer() as i64 - radius - 1;
        let hi = neg.floor().to_integer() as i64 + radius + 1;
        for cj in lo..=hi {
            let t = int(cj) + center;
            let term = self.d[j] * t * t;
            let total = used + term;
            if total > *max {
                continue;
            }
            c[j] = cj;
            y[j] = int(cj) + shift[j];
            if j == 0 {
                out.push(LatticePoint {
                    coords: c.to_vec(),
                    norm: total,
                });
            } else {
                self.descend(j - 1, shift, max, &total, c, y, out);
            }
        }
    }

    pub fn enumerate_ball(&self, max: &Rational) -> Vec<LatticePoint> {
        self.enumerate_coset(&vec![Rational::zero(); self.dim()], max)
    }
}

/// Integer vectors `x` with `x^T G x == mu`, in lexicographic order.
pub fn enumerate_shell(gram: &RatMatrix, mu: &Rational) -> Result<Vec<Vec<i64>>> {
    let q = QuadraticForm::new(gram)?;
    Ok(q.enumerate_ball(mu)
        .into_iter()
        .filter(|p| p.norm == *mu)
        .map(|p| p.coords)
        .collect())
}

/// Integer vectors with `x^T G x <= mu_max`, grouped by norm.
pub fn enumerate_ball(gram: &RatMatrix, mu_max: &Rational) -> Result<BTreeMap<Rational, Vec<Vec<i64>>>> {
    let q = QuadraticForm::new(gram)?;
    let mut shells: BTreeMap<Rational, Vec<Vec<i64>>> = BTreeMap::new();
    for p in q.enumerate_ball(mu_max) {
        shells.entry(p.norm).or_default().push(p.coords);
    }
    Ok(shells)
}
