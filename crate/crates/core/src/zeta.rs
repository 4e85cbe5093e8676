//! Heat traces `Z_p(s) = Σ_μ d_{p,μ} e^{-4π²μs}` from both sides of Poisson summation.
//!
//! Spectral side: the multiplicity table up to `μ <= M`, or, for diagonal
//! groups, the coset sums `|F|^-1 Σ_γ tr_p(B) Σ_{k ∈ (Λ*)^B} e^{2πi k·b} e^{-4π²s‖k‖²}`
//! factored over fixed coordinates.
//!
//! Geometric side:
//! `|F|^-1 Σ_γ tr_p(B) vol((Λ*)^B)^-1 (4πs)^{-n_B/2} Σ_{λ_+ ∈ p_B(Λ)} e^{-‖λ_+ + b_+‖²/4s}`.
//!
//! Tail constants, all rigorous:
//! - one-dimensional `Σ_{|x| > R} e^{-c x²}` over a unit-spaced progression
//!   `x ∈ u + Z` is at most `2 e^{-cR²} / (1 - e^{-2cR})` (geometric comparison
//!   from the first excluded point on each side);
//! - for a form with `L D L^T` diagonal `d_i`, any shift and any `ε ∈ (0, 1)`,
//!   `Σ_{q(x) > R} e^{-a q(x)} <= e^{-a(1-ε)R} Π_i (1 + sqrt(π / (aε d_i)))`,
//!   since each nested one-dimensional sum is at most `1 + sqrt(π/c)`;
//! - `d_{p,μ} <= C(n,p) |{k ∈ Λ* : ‖k‖² = μ}|`, as `d_{p,μ}` is the dimension of
//!   the invariants of a representation of that dimension.
//!
//! Products of truncated factors `P_i` with tails `T_i` carry the error
//! `Π(|P_i| + T_i) - Π|P_i|`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::bieberbach::{fixed_coordinates, fixed_space, is_diagonal_type, BieberbachGroup};
use crate::error::{Error, Result};
use crate::exact::rational::{int, to_f64};
use crate::exact::snf::integer_kernel;
use crate::exact::{IntMatrix, QuadraticForm, Rational};
use crate::krawtchouk::{krawtchouk, traces};
use crate::spectrum::{spectra, sunada_numbers, SpectrumTable};

/// Tails below this bound are certified for `poisson_check` (a quarter of `1e-8`).
pub const TAIL_BUDGET: f64 = 2.5e-9;
pub const POISSON_TOLERANCE: f64 = 1e-8;

const EPSILON_GRID: [f64; 19] = [
    0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9, 0.95,
];

/// Bound on `Σ_{q(x) > r} e^{-a q(x)}` for a form with `L D L^T` diagonal `ldl`.
pub fn gaussian_ball_tail(ldl: &[f64], a: f64, r: f64) -> f64 {
    EPSILON_GRID
        .iter()
        .map(|&eps| {
            let prod: f64 = ldl.iter().map(|d| 1.0 + (PI / (a * eps * d)).sqrt()).product();
            (-a * (1.0 - eps) * r).exp() * prod
        })
        .fold(f64::INFINITY, f64::min)
}

/// `Σ_{x ∈ u + Z, |x| <= radius} w(x) e^{-c x²}` with the tail bound, `|w| <= 1`.
fn gauss_1d(c: f64, u: f64, radius: f64, weight: impl Fn(f64) -> f64) -> (f64, f64) {
    let lo = (-radius - u).ceil() as i64;
    let hi = (radius - u).floor() as i64;
    let value: f64 = (lo..=hi).map(|m| {
        let x = m as f64 + u;
        weight(x) * (-c * x * x).exp()
    }).sum();
    let tail = 2.0 * (-c * radius * radius).exp() / (1.0 - (-2.0 * c * radius).exp());
    (value, tail)
}

/// Truncated product `Π P_i` and its error `Π(|P_i| + T_i) - Π|P_i|`.
fn product_with_tail(factors: &[(f64, f64)]) -> (f64, f64) {
    let value: f64 = factors.iter().map(|f| f.0).product();
    let upper: f64 = factors.iter().map(|f| f.0.abs() + f.1).product();
    let lower: f64 = factors.iter().map(|f| f.0.abs()).product();
    (value, upper - lower)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThetaSum {
    pub d: usize,
    pub t: usize,
    pub z: f64,
    pub shells: f64,
    pub value: f64,
    pub tail: f64,
}

/// `θ_{d,t}(z) = Σ_{m ∈ Z^d} e^{-z(Σ_{j<=t} (1/2 + m_j)² + Σ_{j>t} m_j²)}`.
///
/// Every tuple whose squares `(1/2 + m_j)²` and `m_j²` are each at most
/// `shells` is summed; this box contains the ball where their sum is `<= shells`.
pub fn theta(d: usize, t: usize, z: f64, shells: f64) -> Result<ThetaSum> {
    if t > d || !(z > 0.0) || !(shells >= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "theta needs 0 <= t <= d, z > 0, shells >= 1; got d={d}, t={t}, z={z}, shells={shells}"
        )));
    }
    let r = shells.sqrt();
    let half = gauss_1d(z, 0.5, r, |_| 1.0);
    let whole = gauss_1d(z, 0.0, r, |_| 1.0);
    let mut factors = vec![half; t];
    factors.extend(std::iter::repeat(whole).take(d - t));
    let (value, tail) = product_with_tail(&factors);
    Ok(ThetaSum { d, t, z, shells, value, tail })
}

/// A truncated evaluation with its certified tail.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZetaSide {
    pub value: f64,
    pub tail: f64,
    /// `μ` cutoff, dual coordinate radius or squared-norm ball, by route.
    pub truncation: f64,
}

fn dual_ldl(group: &BieberbachGroup) -> Vec<f64> {
    QuadraticForm::new(group.gram_inverse())
        .expect("inverse of a definite Gram is definite")
        .ldl_diagonal()
        .iter()
        .map(to_f64)
        .collect()
}

/// Tail of the spectral series beyond `μ > mu_max`.
pub fn spectral_tail(group: &BieberbachGroup, p: usize, s: f64, mu_max: f64) -> f64 {
    let n = group.dimension();
    binomial(n, p) * gaussian_ball_tail(&dual_ldl(group), 4.0 * PI * PI * s, mu_max)
}

fn spectral_from_table(group: &BieberbachGroup, table: &SpectrumTable, s: f64) -> ZetaSide {
    let a = 4.0 * PI * PI * s;
    let value = table.entries.iter().map(|(mu, &d)| d as f64 * (-a * to_f64(mu)).exp()).sum();
    let mu_max = to_f64(&table.mu_max);
    ZetaSide {
        value,
        tail: spectral_tail(group, table.p, s, mu_max),
        truncation: mu_max,
    }
}

/// `Σ_{μ <= mu_max} d_{p,μ} e^{-4π²μs}` from the multiplicity table.
pub fn zeta_spectral(group: &BieberbachGroup, p: usize, s: f64, mu_max: &Rational) -> Result<ZetaSide> {
    check_p(group, p)?;
    let table = crate::spectrum::spectrum_table(group, p, mu_max)?;
    Ok(spectral_from_table(group, &table, s))
}

/// The spectral side summed coset by coset; diagonal groups only.
///
/// Dual coordinates on fixed axes run over `|k| <= radius`.
pub fn zeta_spectral_resolved(group: &BieberbachGroup, p: usize, s: f64, radius: u32) -> Result<ZetaSide> {
    check_p(group, p)?;
    if !is_diagonal_type(group) {
        return Err(Error::NotDiagonalType);
    }
    let a = 4.0 * PI * PI * s;
    let order = group.holonomy_order() as f64;
    let (mut value, mut tail) = (0.0, 0.0);
    for c in group.cosets() {
        let tr = traces(&c.point)[p] as f64;
        if tr == 0.0 {
            continue;
        }
        // On a fixed axis the translation is 0 or 1/2, so the phase is ±1 per k.
        let factors: Vec<(f64, f64)> = fixed_coordinates(&c.point)
            .into_iter()
            .map(|j| {
                let b = to_f64(&c.translation[j]);
                let r = radius as f64 + 0.5;
                gauss_1d(a, 0.0, r, |k| (2.0 * PI * k * b).cos())
            })
            .collect();
        let (v, t) = product_with_tail(&factors);
        value += tr * v / order;
        tail += tr.abs() * t / order;
    }
    Ok(ZetaSide {
        value,
        tail,
        truncation: radius as f64,
    })
}

/// `vol((Λ*)^B)` from the exact Gram determinant of the fixed dual lattice.
fn fixed_dual_volume(group: &BieberbachGroup, b: &IntMatrix) -> f64 {
    let n = group.dimension();
    let k = integer_kernel(&b.transpose().sub_mat(&IntMatrix::identity(n))).to_rational();
    let g = k.transpose().mul_mat(group.gram_inverse()).mul_mat(&k);
    to_f64(&g.determinant()).sqrt()
}

/// The geometric side; `λ_+` ranges over a region containing `‖λ_+ + b_+‖² <= ball_max`.
pub fn zeta_geometric(group: &BieberbachGroup, p: usize, s: f64, ball_max: f64) -> Result<ZetaSide> {
    check_p(group, p)?;
    let order = group.holonomy_order() as f64;
    let a = 1.0 / (4.0 * s);
    let (mut value, mut tail) = (0.0, 0.0);
    for c in group.cosets() {
        let tr = traces(&c.point)[p] as f64;
        if tr == 0.0 {
            continue;
        }
        let fs = fixed_space(&c.point, group.gram());
        let pref = tr / (order * fixed_dual_volume(group, &c.point) * (4.0 * PI * s).powf(fs.n_b as f64 / 2.0));
        let shift = fs.projected_coordinates(&c.translation);
        let (v, t) = if fs.projected_gram.is_diagonal() {
            let factors: Vec<(f64, f64)> = (0..fs.n_b)
                .map(|i| {
                    let g = to_f64(&fs.projected_gram[(i, i)]);
                    gauss_1d(a * g, to_f64(&shift[i]), (ball_max / g).sqrt(), |_| 1.0)
                })
                .collect();
            product_with_tail(&factors)
        } else {
            let form = QuadraticForm::new(&fs.projected_gram).expect("projected Gram is definite");
            let cutoff = Rational::new((ball_max * 1024.0).floor() as i128, 1024);
            let v = form
                .enumerate_coset(&shift, &cutoff)
                .iter()
                .map(|pt| (-a * to_f64(&pt.norm)).exp())
                .sum();
            let ldl: Vec<f64> = form.ldl_diagonal().iter().map(to_f64).collect();
            (v, gaussian_ball_tail(&ldl, a, to_f64(&cutoff)))
        };
        value += pref * v;
        tail += pref.abs() * t;
    }
    Ok(ZetaSide {
        value,
        tail,
        truncation: ball_max,
    })
}

fn check_p(group: &BieberbachGroup, p: usize) -> Result<()> {
    if p > group.dimension() {
        return Err(Error::InvalidArgument(format!(
            "p = {p} exceeds the dimension {}",
            group.dimension()
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectralRoute {
    /// Multiplicity table up to a `μ` cutoff.
    Table,
    /// Coset-resolved dual sums (diagonal groups).
    Resolved,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PoissonPoint {
    pub s: f64,
    pub spectral: ZetaSide,
    pub geometric: ZetaSide,
    pub difference: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PoissonReport {
    pub p: usize,
    pub route: SpectralRoute,
    pub points: Vec<PoissonPoint>,
}

impl PoissonReport {
    pub fn passed(&self) -> bool {
        self.points.iter().all(|pt| pt.pass)
    }
}

/// Largest dual ball the table route enumerates, in estimated lattice points.
const TABLE_POINT_LIMIT: f64 = 2.0e5;
/// Largest `μ` cutoff tried before giving up on the table route.
const MU_LIMIT: i64 = 400;

fn estimated_ball_points(group: &BieberbachGroup, mu: f64) -> f64 {
    let n = group.dimension() as f64;
    // vol(B_n(sqrt(mu))) / covolume of Λ*
    let unit_ball = PI.powf(n / 2.0) / gamma_half_integer(group.dimension() + 2);
    let covol = to_f64(&group.gram_inverse().determinant()).sqrt();
    unit_ball * mu.powf(n / 2.0) / covol
}

/// `Γ(k / 2)` for a positive integer `k`.
fn gamma_half_integer(k: usize) -> f64 {
    let (mut x, mut acc) = (k as f64 / 2.0, 1.0);
    while x > 1.0 {
        x -= 1.0;
        acc *= x;
    }
    if (x - 0.5).abs() < 1e-12 {
        acc * PI.sqrt()
    } else {
        acc
    }
}

fn mu_for_budget(group: &BieberbachGroup, ps: &[usize], s: f64) -> Option<i64> {
    (1..=MU_LIMIT).find(|&m| ps.iter().all(|&p| spectral_tail(group, p, s, m as f64) < TAIL_BUDGET))
}

fn radius_for_budget(group: &BieberbachGroup, p: usize, s: f64) -> Result<u32> {
    for r in 1..=200u32 {
        if zeta_spectral_resolved(group, p, s, r)?.tail < TAIL_BUDGET {
            return Ok(r);
        }
    }
    Err(Error::TailNotControlled { s, tail: zeta_spectral_resolved(group, p, s, 200)?.tail, allowed: TAIL_BUDGET })
}

fn ball_for_budget(group: &BieberbachGroup, p: usize, s: f64) -> Result<ZetaSide> {
    let mut ball = 1.0;
    loop {
        let g = zeta_geometric(group, p, s, ball)?;
        if g.tail < TAIL_BUDGET {
            return Ok(g);
        }
        if ball > 4096.0 {
            return Err(Error::TailNotControlled { s, tail: g.tail, allowed: TAIL_BUDGET });
        }
        ball += 1.0 + ball / 4.0;
    }
}

/// Checks `|spectral - geometric| <= 1e-8 + tails` for each `p` and `s`.
///
/// Truncations are chosen so every tail is below `TAIL_BUDGET`. The table
/// route is used while its dual ball stays small; diagonal groups otherwise
/// switch to the resolved route, and others fail with `TailNotControlled`.
pub fn poisson_check_many(group: &BieberbachGroup, ps: &[usize], s_list: &[f64]) -> Result<Vec<PoissonReport>> {
    for &p in ps {
        check_p(group, p)?;
    }
    if let Some(&s) = s_list.iter().find(|&&s| !(s > 0.0)) {
        return Err(Error::InvalidArgument(format!("s must be positive, got {s}")));
    }
    let s_min = s_list.iter().copied().fold(f64::INFINITY, f64::min);
    let mu = mu_for_budget(group, ps, s_min);
    let table_ok = mu.is_some_and(|m| estimated_ball_points(group, m as f64) <= TABLE_POINT_LIMIT);
    let route = if table_ok {
        SpectralRoute::Table
    } else if is_diagonal_type(group) {
        SpectralRoute::Resolved
    } else {
        let tail = spectral_tail(group, ps.iter().copied().max().unwrap_or(0), s_min, MU_LIMIT as f64);
        return Err(Error::TailNotControlled { s: s_min, tail, allowed: TAIL_BUDGET });
    };
    let tables: Option<Vec<SpectrumTable>> = match route {
        SpectralRoute::Table => Some(spectra(group, &int(mu.unwrap()))?),
        SpectralRoute::Resolved => None,
    };
    let mut reports = Vec::new();
    for &p in ps {
        let mut points = Vec::new();
        for &s in s_list {
            let spectral = match &tables {
                Some(t) => spectral_from_table(group, &t[p], s),
                None => zeta_spectral_resolved(group, p, s, radius_for_budget(group, p, s)?)?,
            };
            let geometric = ball_for_budget(group, p, s)?;
            let difference = (spectral.value - geometric.value).abs();
            let tolerance = POISSON_TOLERANCE + spectral.tail + geometric.tail;
            points.push(PoissonPoint {
                s,
                pass: difference <= tolerance,
                spectral,
                geometric,
                difference,
                tolerance,
            });
        }
        reports.push(PoissonReport { p, route, points });
    }
    Ok(reports)
}

pub fn poisson_check(group: &BieberbachGroup, p: usize, s_list: &[f64]) -> Result<PoissonReport> {
    Ok(poisson_check_many(group, &[p], s_list)?.remove(0))
}

/// `2^{-r} Σ_d K_p^n(n-d) (4πs)^{-d/2} Σ_t c_{d,t} θ_{d,t}(1/4s)`, where `|F| = 2^r`.
pub fn diagonal_zeta(group: &BieberbachGroup, p: usize, s: f64) -> Result<ZetaSide> {
    check_p(group, p)?;
    let table = sunada_numbers(group)?;
    let n = group.dimension();
    let order = group.holonomy_order() as f64;
    let z = 1.0 / (4.0 * s);
    // Each one-dimensional factor then has tail below e^{-40}.
    let shells = 40.0 / z + 4.0;
    let (mut value, mut tail) = (0.0, 0.0);
    for (d, t, c) in table.nonzero() {
        let k = krawtchouk(n, p, n - d)? as f64;
        if k == 0.0 {
            continue;
        }
        let th = theta(d, t, z, shells)?;
        let coef = k * c as f64 / (order * (4.0 * PI * s).powf(d as f64 / 2.0));
        value += coef * th.value;
        tail += coef.abs() * th.tail;
    }
    Ok(ZetaSide {
        value,
        tail,
        truncation: shells,
    })
}

/// Small-`s` check of the leading non-identity term of a diagonal group.
///
/// Cells `(d, t)` order by `(4πs)^{-d/2} e^{-t/16s}`: smaller `t` dominates,
/// then larger `d`. The identity cell is subtracted from the geometric side
/// and the exponent `t` of the remainder is fitted from two values of `s`,
/// assuming the predicted `d`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticFit {
    pub p: usize,
    pub predicted_d: usize,
    pub predicted_t: usize,
    /// `K_p^n(n-d) c_{d,t}`
    pub coefficient: i64,
    pub fitted_t: f64,
    pub sign_matches: bool,
    pub s: [f64; 2],
}

pub const FIT_POINTS: [f64; 2] = [0.02, 0.01];

pub fn asymptotic_fit(group: &BieberbachGroup, p: usize) -> Result<Option<AsymptoticFit>> {
    check_p(group, p)?;
    let table = sunada_numbers(group)?;
    let n = group.dimension();
    let mut leading: Option<(usize, usize, i64)> = None;
    for (d, t, c) in table.nonzero() {
        if d == n {
            continue;
        }
        let coef = krawtchouk(n, p, n - d)? * c as i64;
        if coef == 0 {
            continue;
        }
        let better = match leading {
            None => true,
            Some((ld, lt, _)) => t < lt || (t == lt && d > ld),
        };
        if better {
            leading = Some((d, t, coef));
        }
    }
    let Some((d, t, coefficient)) = leading else { return Ok(None) };
    let order = group.holonomy_order() as f64;
    let mut logs = [0.0; 2];
    let mut sign_matches = true;
    for (i, &s) in FIT_POINTS.iter().enumerate() {
        let total = ball_for_budget(group, p, s)?.value;
        let id = theta(n, 0, 1.0 / (4.0 * s), 40.0 * 4.0 * s + 4.0)?.value * binomial(n, p)
            / (order * (4.0 * PI * s).powf(n as f64 / 2.0));
        let rest = total - id;
        sign_matches &= rest.signum() == (coefficient as f64).signum();
        logs[i] = rest.abs().ln();
    }
    let [s1, s2] = FIT_POINTS;
    let hd = d as f64 / 2.0;
    // ln R(s) = C - (d/2) ln s - t / (16 s)
    let fitted_t = 16.0 * (logs[0] - logs[1] + hd * (s1.ln() - s2.ln())) / (1.0 / s2 - 1.0 / s1);
    Ok(Some(AsymptoticFit {
        p,
        predicted_d: d,
        predicted_t: t,
        coefficient,
        fitted_t,
        sign_matches,
        s: FIT_POINTS,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bieberbach::close_group;
    use crate::corpus;
    use crate::exact::RatMatrix;

    fn group(name: &str) -> BieberbachGroup {
        corpus::get(name).unwrap().build().unwrap()
    }

    #[test]
    fn theta_values() {
        let z = 3.0;
        let t10 = theta(1, 0, z, 50.0).unwrap();
        let direct = 1.0 + 2.0 * (-z).exp() + 2.0 * (-4.0 * z).exp() + 2.0 * (-9.0 * z).exp();
        assert!((t10.value - direct).abs() < 1e-10);
        let t11 = theta(1, 1, 40.0, 10.0).unwrap();
        assert!((t11.value / (2.0 * (-10.0f64).exp()) - 1.0).abs() < 1e-6);
        assert!((theta(3, 0, 60.0, 4.0).unwrap().value - 1.0).abs() < 1e-20);
        assert!(theta(1, 2, 1.0, 4.0).is_err());
        assert!(theta(1, 0, -1.0, 4.0).is_err());
        let small = theta(2, 1, 0.5, 4.0).unwrap();
        let large = theta(2, 1, 0.5, 40.0).unwrap();
        assert!(small.value <= large.value && large.tail <= small.tail);
        assert!(large.value <= small.value + small.tail);
    }

    #[test]
    fn torus_jacobi_identity() {
        let torus = close_group(&[], &RatMatrix::identity(2)).unwrap();
        let r = poisson_check(&torus, 0, &[0.3]).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn klein_bottle_poisson() {
        let g = group("klein_bottle");
        for p in 0..=2 {
            let r = poisson_check(&g, p, &[0.1, 0.2, 0.5]).unwrap();
            assert!(r.passed(), "{r:?}");
            for pt in &r.points {
                let dz = diagonal_zeta(&g, p, pt.s).unwrap();
                assert!((dz.value - pt.geometric.value).abs() <= 1e-8 + dz.tail + pt.geometric.tail);
            }
        }
    }

    #[test]
    fn resolved_route_matches_table() {
        let g = group("ex34_gamma");
        for p in 0..=4 {
            let t = zeta_spectral(&g, p, 0.2, &int(12)).unwrap();
            let r = zeta_spectral_resolved(&g, p, 0.2, 6).unwrap();
            assert!((t.value - r.value).abs() <= 1e-10 + t.tail + r.tail);
        }
    }

    #[test]
    fn tails_shrink_with_truncation() {
        let g = group("ex23iii_gammap");
        let a = zeta_geometric(&g, 1, 0.2, 2.0).unwrap();
        let b = zeta_geometric(&g, 1, 0.2, 8.0).unwrap();
        assert!(b.tail <= a.tail);
        assert!(spectral_tail(&g, 1, 0.2, 8.0) <= spectral_tail(&g, 1, 0.2, 2.0));
    }

    #[test]
    fn leading_asymptotic_exponent() {
        let g = group("ex23i_gamma");
        let fit = asymptotic_fit(&g, 0).unwrap().unwrap();
        assert_eq!((fit.predicted_d, fit.predicted_t), (1, 1));
        assert!((fit.fitted_t - 1.0).abs() < 0.05, "{fit:?}");
        assert!(fit.sign_matches);
    }
}
