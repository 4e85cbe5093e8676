//! Independent oracles shared by the integration suites.
//!
//! Nothing here calls the trace formula, the Smith-form class labels or the
//! Fincke-Pohst enumerator; each check recomputes its quantity from scratch.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use flatspec::bieberbach::{AffineElement, BieberbachGroup};
use flatspec::corpus;
use flatspec::exact::{IntMatrix, RatMatrix, Rational};
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn group(name: &str) -> BieberbachGroup {
    corpus::get(name)
        .unwrap_or_else(|e| panic!("{name}: {e}"))
        .build()
        .unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Integer vectors with `x^T G x == mu`, by scanning the box `|x_i|^2 <= mu (G^-1)_ii`.
pub fn box_shell(gram: &RatMatrix, mu: &Rational) -> BTreeSet<Vec<i64>> {
    let n = gram.rows();
    let inv = gram.inverse().expect("positive definite");
    let bounds: Vec<i64> = (0..n)
        .map(|i| {
            let b = (mu * inv[(i, i)]).to_f64().unwrap().sqrt();
            b.floor() as i64 + 1
        })
        .collect();
    let mut out = BTreeSet::new();
    let mut x: Vec<i64> = bounds.iter().map(|b| -b).collect();
    loop {
        let xr: Vec<Rational> = x.iter().map(|&v| Rational::from_integer(v as i128)).collect();
        if gram.bilinear(&xr, &xr) == *mu {
            out.insert(x.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if x[i] < bounds[i] {
                x[i] += 1;
                break;
            }
            x[i] = -bounds[i];
            i += 1;
        }
    }
}

/// Sorted `p`-subsets of `0..n`.
pub fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, p, &mut Vec::new(), &mut out);
    out
}

/// `Λ^p(a)` in the basis of sorted subsets, entries are `p x p` minors.
pub fn exterior_power(a: &RatMatrix, p: usize) -> RatMatrix {
    let basis = subsets(a.rows(), p);
    RatMatrix::from_fn(basis.len(), basis.len(), |r, c| {
        let minor = RatMatrix::from_fn(p, p, |i, j| a[(basis[r][i], basis[c][j])]);
        if p == 0 {
            Rational::one()
        } else {
            minor.determinant()
        }
    })
}

/// Whether the oracle below applies: standard Gram and half-integral translations.
pub fn oracle_applies(group: &BieberbachGroup) -> bool {
    group.gram_is_identity()
        && group
            .cosets()
            .iter()
            .all(|c| c.translation.iter().all(|t| (t * Rational::from_integer(2)).is_integer()))
}

/// `d_{p,μ}` as the rank of the averaging projector on `span{e^{2πi v·x} dx_I : |v|^2 = μ}`.
///
/// The space splits into `F`-orbits of dual vectors; each orbit block is
/// averaged and its rank taken by exact elimination.
pub fn averaged_multiplicity(group: &BieberbachGroup, p: usize, mu: &Rational) -> u64 {
    assert!(oracle_applies(group));
    let n = group.dimension();
    let actions: Vec<(RatMatrix, RatMatrix, Vec<i64>)> = group
        .cosets()
        .iter()
        .map(|c| {
            // orthogonal, so B^{-T} = B
            let a = c.point.to_rational();
            let forms = exterior_power(&a, p);
            let two_b: Vec<i64> = c
                .translation
                .iter()
                .map(|t| (t * Rational::from_integer(2)).to_integer() as i64)
                .collect();
            (a, forms, two_b)
        })
        .collect();
    let dim_forms = subsets(n, p).len();
    let shell = box_shell(&RatMatrix::identity(n), mu);
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut total = 0u64;
    for v in &shell {
        if seen.contains(v) {
            continue;
        }
        let mut orbit: Vec<Vec<i64>> = vec![v.clone()];
        let mut k = 0;
        while k < orbit.len() {
            for (a, _, _) in &actions {
                let w = apply_int(a, &orbit[k]);
                if !orbit.contains(&w) {
                    orbit.push(w);
                }
            }
            k += 1;
        }
        let index: BTreeMap<&Vec<i64>, usize> = orbit.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let size = orbit.len() * dim_forms;
        let mut avg = RatMatrix::zeros(size, size);
        for (a, forms, two_b) in &actions {
            for (i, w) in orbit.iter().enumerate() {
                let image = index[&apply_int(a, w)];
                let dot: i64 = w.iter().zip(two_b).map(|(x, y)| x * y).sum();
                let phase = if dot.rem_euclid(2) == 0 { Rational::one() } else { -Rational::one() };
                for r in 0..dim_forms {
                    for c in 0..dim_forms {
                        let e = forms[(r, c)];
                        if !e.is_zero() {
                            let (row, col) = (image * dim_forms + r, i * dim_forms + c);
                            avg[(row, col)] = avg[(row, col)] + phase * e;
                        }
                    }
                }
            }
        }
        total += avg.rank() as u64;
        seen.extend(orbit);
    }
    total
}

fn apply_int(a: &RatMatrix, v: &[i64]) -> Vec<i64> {
    let vr: Vec<Rational> = v.iter().map(|&x| Rational::from_integer(x as i128)).collect();
    a.mul_vec(&vr).iter().map(|x| x.to_integer() as i64).collect()
}

/// F-orbits of nonzero lattice vectors with `‖λ‖^2 <= cutoff`, counted per squared length.
pub fn translation_orbits(group: &BieberbachGroup, cutoff: &Rational) -> BTreeMap<Rational, u64> {
    let gram = group.gram();
    let mut by_norm: BTreeMap<Rational, u64> = BTreeMap::new();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut mu = Rational::zero();
    // all norms of integer vectors are multiples of 1/D
    let d = gram
        .to_rows()
        .iter()
        .flatten()
        .map(|x| *x.denom())
        .fold(1i128, |a, b| num_integer::Integer::lcm(&a, &b));
    let step = Rational::new(1, d);
    while mu < *cutoff {
        mu += step;
        for v in box_shell(gram, &mu) {
            if seen.contains(&v) {
                continue;
            }
            let mut orbit = vec![v];
            let mut k = 0;
            while k < orbit.len() {
                for c in group.cosets() {
                    let w = apply_int(&c.point.to_rational(), &orbit[k]);
                    if !orbit.contains(&w) {
                        orbit.push(w);
                    }
                }
                k += 1;
            }
            *by_norm.entry(mu).or_default() += 1;
            seen.extend(orbit);
        }
    }
    by_norm
}

/// `δ Γ δ^{-1}` for `δ = C L_c`, with the metric transported so `δ` is an isometry.
pub fn conjugated(group: &BieberbachGroup, c: &IntMatrix, shift: &[Rational]) -> BieberbachGroup {
    let delta = AffineElement::new(c.clone(), shift.to_vec());
    let c_inv = c.to_rational().inverse().expect("unimodular");
    let gram = c_inv.transpose().mul_mat(group.gram()).mul_mat(&c_inv);
    let gens: Vec<AffineElement> = group.generators().iter().map(|g| g.conjugate_by(&delta)).collect();
    flatspec::bieberbach::close_group(&gens, &gram).expect("conjugate closes")
}

/// `det(B) == (-1)^(n - n_B)` where `n_B` counts the eigenvalue 1.
pub fn parity_orientable(group: &BieberbachGroup) -> bool {
    let n = group.dimension();
    group.cosets().iter().all(|c| {
        let b = c.point.to_rational();
        let fixed = b.sub_mat(&RatMatrix::identity(n)).kernel().cols();
        (n - fixed) % 2 == 0
    })
}

pub fn abs_det(m: &IntMatrix) -> i128 {
    m.to_rational().determinant().abs().to_integer()
}
