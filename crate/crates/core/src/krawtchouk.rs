//! Krawtchouk polynomials and the traces of `B` on `p`-forms.
//!
//! `K_p^n(x) = sum_t (-1)^t C(x, t) C(n - x, p - t)` is the coefficient of
//! `t^p` in `(1 - t)^x (1 + t)^(n - x)`, so for a diagonal `±1` matrix with
//! `x` entries equal to `-1` it is the trace on `Λ^p`.

use crate::error::{Error, Result};
use crate::exact::{char_poly, IntMatrix};

fn binomial(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

pub fn krawtchouk(n: usize, p: usize, x: usize) -> Result<i64> {
    if p > n || x > n {
        return Err(Error::KrawtchoukDomain { n, p, x });
    }
    let sum: i128 = (0..=p.min(x))
        .map(|t| {
            let term = binomial(x, t) * binomial(n - x, p - t);
            if t % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum();
    Ok(sum as i64)
}

/// `x ∈ {0, ..., n}` with `K_p^n(x) = 0`.
pub fn integral_roots(n: usize, p: usize) -> Result<Vec<usize>> {
    let mut roots = Vec::new();
    for x in 0..=n {
        if krawtchouk(n, p, x)? == 0 {
            roots.push(x);
        }
    }
    Ok(roots)
}

/// `tr_p(B)` for `p = 0..=n`: the coefficients of `det(Id + tB)`.
///
/// `det(Id + tB) = (-t)^n det(-t^-1 Id - B)`, so `tr_p(B) = (-1)^p c_{n-p}`
/// where `c_k` are the coefficients of `det(t Id - B)`.
pub fn traces(b: &IntMatrix) -> Vec<i64> {
    let n = b.rows();
    let cp = char_poly(&b.to_rational());
    (0..=n)
        .map(|p| {
            let c = cp.coeff(n - p);
            assert!(c.is_integer(), "integral matrix has integral characteristic polynomial");
            let v = *c.numer() as i64;
            if p % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .collect()
}

pub fn trace_p(b: &IntMatrix, p: usize) -> Result<i64> {
    let n = b.rows();
    if p > n {
        return Err(Error::KrawtchoukDomain { n, p, x: 0 });
    }
    Ok(traces(b)[p])
}
