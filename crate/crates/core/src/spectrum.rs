//! Multiplicities of Hodge-Laplace eigenvalues on `p`-forms.
//!
//! The eigenvalue `4π²μ` has multiplicity
//! `d_{p,μ} = |F|^-1 sum_γ tr_p(B) e_{μ,γ}` with
//! `e_{μ,γ} = sum_{v ∈ Λ*, ‖v‖² = μ, Bv = v} exp(-2πi v·b)`.
//!
//! Dual vectors are stored by integer coordinates `k` with `v = Q^-1 k`, so
//! `‖v‖² = k^T Q^-1 k`, `v·b = k·b` and `Bv = v` iff `B^T k = k`.
//! Character sums are accumulated in `Z[ζ_q]` and reduced modulo the
//! cyclotomic polynomial, which decides rationality exactly.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::bieberbach::{fixed_coordinates, is_diagonal_type, BieberbachGroup};
use crate::error::{Error, Result};
use crate::exact::rational::{common_denominator, int};
use crate::exact::snf::integer_kernel;
use crate::exact::{IntMatrix, QuadraticForm, RatMatrix, Rational};
use crate::krawtchouk::{krawtchouk, traces};

/// Integer combination `sum_r counts[r] ζ^r` with `ζ = exp(-2πi/q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicSum {
    modulus: i64,
    counts: Vec<i64>,
}

impl CyclotomicSum {
    pub fn new(modulus: i64) -> Self {
        assert!(modulus >= 1);
        CyclotomicSum {
            modulus,
            counts: vec![0; modulus as usize],
        }
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn add(&mut self, residue: i64, count: i64) {
        let r = residue.rem_euclid(self.modulus) as usize;
        self.counts[r] += count;
    }

    /// The same element written over `ζ_m` for a multiple `m` of the modulus.
    pub fn lift(&self, m: i64) -> CyclotomicSum {
        assert_eq!(m % self.modulus, 0);
        let k = m / self.modulus;
        let mut out = CyclotomicSum::new(m);
        for (r, &c) in self.counts.iter().enumerate() {
            out.counts[r * k as usize] += c;
        }
        out
    }

    /// `self += k * other`, over the lcm of both moduli.
    pub fn add_scaled(&mut self, other: &CyclotomicSum, k: i64) {
        let m = self.modulus.lcm(&other.modulus);
        if m != self.modulus {
            *self = self.lift(m);
        }
        let o = other.lift(m);
        for (a, b) in self.counts.iter_mut().zip(o.counts) {
            *a += k * b;
        }
    }

    /// Exact value if it is rational (then it is an integer).
    pub fn evaluate(&self) -> Result<i64> {
        let phi = cyclotomic_polynomial(self.modulus);
        let rem = poly_rem(&self.counts, &phi);
        if rem.iter().skip(1).any(|&c| c != 0) {
            return Err(Error::IrrationalCharacterSum {
                modulus: self.modulus,
            });
        }
        Ok(rem.first().copied().unwrap_or(0))
    }
}

/// Integer coefficients of `Φ_q`, ascending.
pub fn cyclotomic_polynomial(q: i64) -> Vec<i64> {
    let mut num = vec![0i64; q as usize + 1];
    num[0] = -1;
    num[q as usize] = 1;
    for d in 1..q {
        if q % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn poly_div_exact(a: &[i64], monic: &[i64]) -> Vec<i64> {
    let dd = monic.len() - 1;
    let mut rem = a.to_vec();
    let mut q = vec![0i64; a.len() - dd];
    for k in (dd..a.len()).rev() {
        let c = rem[k];
        q[k - dd] = c;
        for (i, &m) in monic.iter().enumerate() {
            rem[k - dd + i] -= c * m;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

fn poly_rem(a: &[i64], monic: &[i64]) -> Vec<i64> {
    let dd = monic.len() - 1;
    let mut rem = a.to_vec();
    if rem.len() <= dd {
        return rem;
    }
    for k in (dd..rem.len()).rev() {
        let c = rem[k];
        if c == 0 {
            continue;
        }
        for (i, &m) in monic.iter().enumerate() {
            rem[k - dd + i] -= c * m;
        }
    }
    rem.truncate(dd.max(1));
    rem
}

/// Per-coset data for sums over `(Λ*)^B`.
#[derive(Clone, Debug)]
pub struct FixedDual {
    /// Basis (columns, dual coordinates) of `{k : B^T k = k}`.
    pub basis: IntMatrix,
    /// Norm form `K^T Q^-1 K` on that basis.
    pub form: QuadraticForm,
    /// `K^T b`: the character is `exp(-2πi c·phases)`.
    pub phases: Vec<Rational>,
    /// Common denominator of `phases`.
    pub modulus: i64,
}

impl FixedDual {
    pub fn new(group: &BieberbachGroup, coset: usize) -> Self {
        let c = &group.cosets()[coset];
        let n = group.dimension();
        let bt = c.point.transpose().sub_mat(&IntMatrix::identity(n));
        let basis = integer_kernel(&bt);
        let kr = basis.to_rational();
        let form = QuadraticForm::new(&kr.transpose().mul_mat(group.gram_inverse()).mul_mat(&kr))
            .expect("sublattice of a definite lattice is definite");
        let phases = kr.transpose().mul_vec(&c.translation);
        let modulus = common_denominator(&phases) as i64;
        FixedDual {
            basis,
            form,
            phases,
            modulus,
        }
    }

    fn residue(&self, coords: &[i64]) -> i64 {
        let m = int(self.modulus);
        let s: Rational = coords
            .iter()
            .zip(&self.phases)
            .fold(Rational::zero(), |acc, (&c, ph)| acc + int(c) * ph * m);
        s.to_integer().to_i64().unwrap()
    }

    /// Character sums `e_{μ,γ}` for all `μ <= mu_max`, as cyclotomic elements.
    pub fn character_sums(&self, mu_max: &Rational) -> BTreeMap<Rational, CyclotomicSum> {
        let mut out: BTreeMap<Rational, CyclotomicSum> = BTreeMap::new();
        for pt in self.form.enumerate_ball(mu_max) {
            let r = self.residue(&pt.coords);
            out.entry(pt.norm)
                .or_insert_with(|| CyclotomicSum::new(self.modulus))
                .add(r, 1);
        }
        out
    }
}

/// `e_{μ,γ}` for coset `coset`. Uses the sign formula for diagonal groups.
pub fn e_term(group: &BieberbachGroup, coset: usize, mu: &Rational) -> Result<i64> {
    if is_diagonal_type(group) {
        return Ok(e_term_diagonal(group, coset, mu));
    }
    e_term_general(group, coset, mu)
}

pub fn e_term_general(group: &BieberbachGroup, coset: usize, mu: &Rational) -> Result<i64> {
    let fd = FixedDual::new(group, coset);
    match fd.character_sums(mu).remove(mu) {
        Some(acc) => acc.evaluate(),
        None => Ok(0),
    }
}

/// `sum (-1)^{|I_v^odd ∩ I_2b^odd|}` over `v ∈ Z^n` supported on `I_B` with `‖v‖² = μ`.
fn e_term_diagonal(group: &BieberbachGroup, coset: usize, mu: &Rational) -> i64 {
    let c = &group.cosets()[coset];
    let fixed = fixed_coordinates(&c.point);
    let half: Vec<bool> = fixed
        .iter()
        .map(|&i| {
            let bi = c.translation[i];
            assert!(bi.is_zero() || bi == Rational::new(1, 2), "fixed coordinate translation is 0 or 1/2");
            !bi.is_zero()
        })
        .collect();
    let form = QuadraticForm::new(&RatMatrix::identity(fixed.len())).unwrap();
    form.enumerate_ball(mu)
        .into_iter()
        .filter(|pt| pt.norm == *mu)
        .map(|pt| {
            let odd = pt
                .coords
                .iter()
                .zip(&half)
                .filter(|(v, h)| **h && *v % 2 != 0)
                .count();
            if odd % 2 == 0 {
                1
            } else {
                -1
            }
        })
        .sum()
}

/// Nonzero multiplicities `d_{p,μ}` for `μ <= mu_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumTable {
    pub p: usize,
    #[serde(serialize_with = "crate::exact::rational::serialize")]
    pub mu_max: Rational,
    #[serde(serialize_with = "ser_entries")]
    pub entries: BTreeMap<Rational, u64>,
}

fn ser_entries<S: serde::Serializer>(
    m: &BTreeMap<Rational, u64>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.len()))?;
    for (k, v) in m {
        seq.serialize_element(&(k.to_string(), v))?;
    }
    seq.end()
}

impl SpectrumTable {
    pub fn multiplicity(&self, mu: &Rational) -> u64 {
        self.entries.get(mu).copied().unwrap_or(0)
    }

    /// Smallest positive `μ` in the table.
    pub fn first_positive(&self) -> Option<Rational> {
        self.entries.keys().find(|k| !k.is_zero()).copied()
    }
}

/// Spectrum tables for every `p = 0..=n` up to `mu_max`.
pub fn spectra(group: &BieberbachGroup, mu_max: &Rational) -> Result<Vec<SpectrumTable>> {
    let n = group.dimension();
    let order = group.holonomy_order() as i64;
    let per_coset: Vec<(Vec<i64>, BTreeMap<Rational, CyclotomicSum>)> = (0..group.holonomy_order())
        .map(|i| {
            let fd = FixedDual::new(group, i);
            (traces(&group.cosets()[i].point), fd.character_sums(mu_max))
        })
        .collect();
    let mus: BTreeSet<Rational> = per_coset.iter().flat_map(|(_, m)| m.keys().copied()).collect();
    let mut tables: Vec<SpectrumTable> = (0..=n)
        .map(|p| SpectrumTable {
            p,
            mu_max: *mu_max,
            entries: BTreeMap::new(),
        })
        .collect();
    for mu in &mus {
        let accs: Vec<(&Vec<i64>, &CyclotomicSum)> = per_coset
            .iter()
            .filter_map(|(tr, m)| m.get(mu).map(|a| (tr, a)))
            .collect();
        let values: Option<Vec<i64>> = accs.iter().map(|(_, a)| a.evaluate().ok()).collect();
        for p in 0..=n {
            let total = match &values {
                Some(vals) => accs.iter().zip(vals).map(|((tr, _), v)| tr[p] * v).sum(),
                None => {
                    let mut combined = CyclotomicSum::new(1);
                    for (tr, a) in &accs {
                        combined.add_scaled(a, tr[p]);
                    }
                    combined.evaluate()?
                }
            };
            if total % order != 0 || total < 0 {
                return Err(Error::NonIntegralMultiplicity {
                    mu: mu.to_string(),
                    value: Rational::new(total as i128, order as i128).to_string(),
                });
            }
            if total != 0 {
                tables[p].entries.insert(*mu, (total / order) as u64);
            }
        }
    }
    Ok(tables)
}

pub fn spectrum_table(group: &BieberbachGroup, p: usize, mu_max: &Rational) -> Result<SpectrumTable> {
    if p > group.dimension() {
        return Err(Error::InvalidArgument(format!("p = {p} exceeds the dimension")));
    }
    Ok(spectra(group, mu_max)?.swap_remove(p))
}

pub fn multiplicity(group: &BieberbachGroup, p: usize, mu: &Rational) -> Result<u64> {
    Ok(spectrum_table(group, p, mu)?.multiplicity(mu))
}

/// `b_p = |F|^-1 sum_γ tr_p(B)`.
pub fn betti_numbers(group: &BieberbachGroup) -> Vec<u64> {
    let n = group.dimension();
    let mut sums = vec![0i64; n + 1];
    for c in group.cosets() {
        for (s, t) in sums.iter_mut().zip(traces(&c.point)) {
            *s += t;
        }
    }
    let order = group.holonomy_order() as i64;
    sums.into_iter()
        .map(|s| {
            assert_eq!(s % order, 0, "Betti number is an integer");
            (s / order) as u64
        })
        .collect()
}

/// `c_{d,t}`: cosets with `n_B = d` and `t` half-integral fixed translation coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SunadaTable {
    pub n: usize,
    /// `counts[d][t]`
    pub counts: Vec<Vec<u64>>,
}

impl SunadaTable {
    pub fn get(&self, d: usize, t: usize) -> u64 {
        self.counts[d][t]
    }

    /// Nonzero cells `(d, t, c_{d,t})`.
    pub fn nonzero(&self) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for (d, row) in self.counts.iter().enumerate() {
            for (t, &c) in row.iter().enumerate() {
                if c != 0 {
                    out.push((d, t, c));
                }
            }
        }
        out
    }
}

/// `(n_B, t)` of a coset of a diagonal group.
pub fn sunada_type(group: &BieberbachGroup, coset: usize) -> (usize, usize) {
    let c = &group.cosets()[coset];
    let fixed = fixed_coordinates(&c.point);
    let t = fixed.iter().filter(|&&i| !c.translation[i].is_zero()).count();
    (fixed.len(), t)
}

pub fn sunada_numbers(group: &BieberbachGroup) -> Result<SunadaTable> {
    if !is_diagonal_type(group) {
        return Err(Error::NotDiagonalType);
    }
    let n = group.dimension();
    let mut counts = vec![vec![0u64; n + 1]; n + 1];
    for i in 0..group.holonomy_order() {
        let (d, t) = sunada_type(group, i);
        counts[d][t] += 1;
    }
    Ok(SunadaTable { n, counts })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Divergence {
    #[serde(serialize_with = "crate::exact::rational::serialize")]
    pub mu: Rational,
    pub left: u64,
    pub right: u64,
}

/// Comparison of `p`-spectra up to a cutoff; `divergence` is the smallest `μ` that differs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralComparison {
    pub p: usize,
    #[serde(serialize_with = "crate::exact::rational::serialize")]
    pub mu_max: Rational,
    pub divergence: Option<Divergence>,
}

impl SpectralComparison {
    pub fn equal(&self) -> bool {
        self.divergence.is_none()
    }
}

pub fn compare_tables(a: &SpectrumTable, b: &SpectrumTable) -> SpectralComparison {
    let keys: BTreeSet<&Rational> = a.entries.keys().chain(b.entries.keys()).collect();
    let divergence = keys.into_iter().find_map(|mu| {
        let (l, r) = (a.multiplicity(mu), b.multiplicity(mu));
        (l != r).then_some(Divergence {
            mu: *mu,
            left: l,
            right: r,
        })
    });
    SpectralComparison {
        p: a.p,
        mu_max: a.mu_max.min(b.mu_max),
        divergence,
    }
}

pub fn compare_p_spectra(
    a: &BieberbachGroup,
    b: &BieberbachGroup,
    p: usize,
    mu_max: &Rational,
) -> Result<SpectralComparison> {
    check_same_dimension(a, b)?;
    Ok(compare_tables(
        &spectrum_table(a, p, mu_max)?,
        &spectrum_table(b, p, mu_max)?,
    ))
}

fn check_same_dimension(a: &BieberbachGroup, b: &BieberbachGroup) -> Result<()> {
    if a.dimension() != b.dimension() {
        return Err(Error::DimensionMismatch(format!(
            "groups of dimension {} and {}",
            a.dimension(),
            b.dimension()
        )));
    }
    Ok(())
}

/// Outcome of the Sunada-number test for `p`-isospectrality of diagonal groups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub p: usize,
    pub isospectral: bool,
    pub same_holonomy_order: bool,
    /// Cells `(d, t, c_{d,t}(a), c_{d,t}(b))` with `K_p^n(n-d) (c - c') ≠ 0`.
    pub witnesses: Vec<(usize, usize, u64, u64)>,
}

/// Diagonal groups with the same holonomy order are `p`-isospectral iff
/// `K_p^n(n-d) c_{d,t}` agree for all `d, t`.
pub fn diagonal_isospectrality_criterion(
    a: &BieberbachGroup,
    b: &BieberbachGroup,
    p: usize,
) -> Result<CriterionReport> {
    check_same_dimension(a, b)?;
    let n = a.dimension();
    let (ca, cb) = (sunada_numbers(a)?, sunada_numbers(b)?);
    let mut witnesses = Vec::new();
    for d in 0..=n {
        let k = krawtchouk(n, p, n - d)?;
        for t in 0..=n {
            let (x, y) = (ca.get(d, t), cb.get(d, t));
            if k != 0 && x != y {
                witnesses.push((d, t, x, y));
            }
        }
    }
    let same_holonomy_order = a.holonomy_order() == b.holonomy_order();
    Ok(CriterionReport {
        p,
        isospectral: same_holonomy_order && witnesses.is_empty(),
        same_holonomy_order,
        witnesses,
    })
}

pub fn sunada_isospectral(a: &BieberbachGroup, b: &BieberbachGroup) -> Result<bool> {
    check_same_dimension(a, b)?;
    Ok(sunada_numbers(a)? == sunada_numbers(b)?)
}

/// Pairing of cosets `(i, j)` with `tr_p(B_i) e_{μ,γ_i} = tr_p(B'_j) e_{μ,γ'_j}` for every probed `μ`.
pub fn bijection_certificate(
    a: &BieberbachGroup,
    b: &BieberbachGroup,
    p: usize,
    mus: &[Rational],
) -> Result<Option<Vec<(usize, usize)>>> {
    check_same_dimension(a, b)?;
    if !is_diagonal_type(a) || !is_diagonal_type(b) {
        return Err(Error::NotDiagonalType);
    }
    if a.holonomy_order() != b.holonomy_order() {
        return Ok(None);
    }
    let signature = |g: &BieberbachGroup, i: usize| -> Result<Vec<i64>> {
        let tr = traces(&g.cosets()[i].point)[p];
        mus.iter().map(|mu| Ok(tr * e_term(g, i, mu)?)).collect()
    };
    let mut unmatched: Vec<(usize, Vec<i64>)> = (0..b.holonomy_order())
        .map(|j| Ok((j, signature(b, j)?)))
        .collect::<Result<_>>()?;
    let mut pairs = Vec::new();
    for i in 0..a.holonomy_order() {
        let s = signature(a, i)?;
        match unmatched.iter().position(|(_, t)| *t == s) {
            Some(pos) => pairs.push((i, unmatched.remove(pos).0)),
            None => return Ok(None),
        }
    }
    Ok(Some(pairs))
}
