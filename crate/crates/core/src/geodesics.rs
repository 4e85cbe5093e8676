//! Closed geodesics: lengths, complex lengths and conjugacy-class multiplicities.
//!
//! The closed geodesics in the free homotopy class of `γ = B L_b` all have
//! squared length `‖b_+‖²`, where `b_+` is the projection of `b` onto
//! `ker(B - Id)`, and holonomy `B^⊥`, the restriction of `B` to the
//! orthogonal complement of the direction. `B^⊥` is recorded by its
//! characteristic polynomial `char_poly(B) / (t - 1)`; eigenvalue multisets
//! determine conjugacy classes of orthogonal matrices.
//!
//! Within one coset `B L_b Λ`, conjugation by `L_μ` moves `λ` by
//! `(B^-1 - Id) μ`, so translation-conjugacy classes are the elements of
//! `Λ / (B^-1 - Id) Λ`. With `U (B^-1 - Id) V = S` in Smith normal form a
//! class is labelled by `y = U λ`: coordinates with `s_i = 0` are free,
//! coordinates with `s_i > 1` are read modulo `s_i`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::Zero;
use serde::Serialize;

use crate::bieberbach::{fixed_space, AffineElement, BieberbachGroup};
use crate::error::{Error, Result};
use crate::exact::rational::{int, lift_int_vec, rat};
use crate::exact::snf::unimodular_inverse;
use crate::exact::{char_poly, smith_normal_form, IntMatrix, Polynomial, QuadraticForm, RatMatrix, Rational};

/// `‖p_B(b)‖²` for `γ = B L_b`.
pub fn length_sq(g: &AffineElement, gram: &RatMatrix) -> Rational {
    let fs = fixed_space(&g.point, gram);
    let bp = fs.project(&g.translation);
    gram.bilinear(&bp, &bp)
}

/// The point `o_γ ⊥ ker(B - Id)` with `(B - Id) o_γ = -B b'`; `γ` translates
/// the line `o_γ + R b_+` along itself by `b_+`.
pub fn base_point(g: &AffineElement, gram: &RatMatrix) -> Vec<Rational> {
    let n = g.dim();
    let fs = fixed_space(&g.point, gram);
    let b_plus = fs.project(&g.translation);
    let b_perp: Vec<Rational> = g.translation.iter().zip(&b_plus).map(|(a, b)| a - b).collect();
    let b = g.point.to_rational();
    let rhs_top: Vec<Rational> = b.mul_vec(&b_perp).into_iter().map(|x| -x).collect();
    let bm = b.sub_mat(&RatMatrix::identity(n));
    // Orthogonality to the fixed lattice pins down the component in ker(B - Id).
    let wq = fs.fixed_lattice.to_rational().transpose().mul_mat(gram);
    let mut rows = bm.to_rows();
    rows.extend(wq.to_rows());
    let mut rhs = rhs_top;
    rhs.extend(std::iter::repeat(Rational::zero()).take(fs.n_b));
    let o = RatMatrix::from_rows(rows)
        .solve(&rhs)
        .expect("(B - Id) is invertible on the complement of its kernel");
    for t in [int(0), int(1)] {
        let x: Vec<Rational> = o.iter().zip(&b_plus).map(|(o, v)| o + t * v).collect();
        let y: Vec<Rational> = o.iter().zip(&b_plus).map(|(o, v)| o + (t + 1) * v).collect();
        assert_eq!(g.apply(&x), y, "γ preserves its axis");
    }
    o
}

/// `char_poly(B) / (t - 1)`, the invariant of the holonomy `B^⊥`.
pub fn holonomy_invariant(g: &AffineElement, gram: &RatMatrix) -> Result<Polynomial> {
    if length_sq(g, gram).is_zero() {
        return Err(Error::ZeroLength);
    }
    Ok(point_holonomy(&g.point))
}

fn point_holonomy(b: &IntMatrix) -> Polynomial {
    let (q, r) = char_poly(&b.to_rational()).div_rem(&Polynomial::t_minus_one_pow(1));
    assert!(r.degree().is_none(), "1 is an eigenvalue of every point part");
    q
}

/// Squared lengths `‖b_+ + λ_+‖² <= cutoff_sq` over all cosets.
pub fn weak_length_spectrum(group: &BieberbachGroup, cutoff_sq: &Rational) -> BTreeSet<Rational> {
    weak_complex_spectrum(group, cutoff_sq)
        .into_iter()
        .map(|(l, _)| l)
        .collect()
}

/// Pairs `(squared length, holonomy invariant)` up to the cutoff, without multiplicities.
pub fn weak_complex_spectrum(group: &BieberbachGroup, cutoff_sq: &Rational) -> BTreeSet<(Rational, Polynomial)> {
    let mut out = BTreeSet::new();
    for c in group.cosets() {
        let fs = fixed_space(&c.point, group.gram());
        let form = QuadraticForm::new(&fs.projected_gram).expect("projected Gram is positive definite");
        let shift = fs.projected_coordinates(&c.translation);
        let hol = point_holonomy(&c.point);
        for pt in form.enumerate_coset(&shift, cutoff_sq) {
            out.insert((pt.norm, hol.clone()));
        }
    }
    out
}

/// `(min positive squared length) / 4`, the squared injectivity radius.
pub fn injectivity_radius_sq(group: &BieberbachGroup) -> Rational {
    let mut cutoff = rat(1, 64);
    loop {
        if let Some(l) = weak_length_spectrum(group, &cutoff).into_iter().find(|l| !l.is_zero()) {
            return l / int(4);
        }
        cutoff *= int(2);
    }
}

/// A translation-conjugacy class inside one coset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassLabel {
    pub coset: usize,
    pub free: Vec<i64>,
    pub torsion: Vec<i64>,
}

/// `Λ / (B^-1 - Id) Λ` for one coset, with the length form on its free part.
#[derive(Clone, Debug)]
pub struct CosetQuotient {
    pub coset: usize,
    /// `n_B`, the number of free coordinates.
    pub free_rank: usize,
    /// Images `p_B(U^-1 e_i)` of the free coordinate vectors; a basis of `p_B(Λ)`.
    pub free_basis: Vec<Vec<Rational>>,
    /// Invariant factors `> 1`; the torsion part is their product of cyclic groups.
    pub torsion: Vec<i64>,
    u: IntMatrix,
    u_inv: IntMatrix,
    free_idx: Vec<usize>,
    torsion_idx: Vec<usize>,
    /// Coordinates of `b_+` in `free_basis`.
    beta: Vec<Rational>,
    form: QuadraticForm,
}

impl CosetQuotient {
    pub fn new(group: &BieberbachGroup, coset: usize) -> Self {
        let c = &group.cosets()[coset];
        let n = c.dim();
        let m = group.point_inverse(coset).sub_mat(&IntMatrix::identity(n));
        let snf = smith_normal_form(&m);
        let mut free_idx = Vec::new();
        let mut torsion_idx = Vec::new();
        let mut torsion = Vec::new();
        for (i, s) in snf.invariant_factors().into_iter().enumerate() {
            match s.abs() {
                0 => free_idx.push(i),
                1 => {}
                s => {
                    torsion_idx.push(i);
                    torsion.push(s);
                }
            }
        }
        let u_inv = unimodular_inverse(&snf.u);
        let fs = fixed_space(&c.point, group.gram());
        let free_basis: Vec<Vec<Rational>> = free_idx
            .iter()
            .map(|&i| fs.project(&lift_int_vec(&u_inv.col(i))))
            .collect();
        let w = RatMatrix::from_columns(n, &free_basis);
        let beta = w
            .solve(&fs.project(&c.translation))
            .expect("b_+ lies in the span of p_B(Λ)");
        let gram = w.transpose().mul_mat(group.gram()).mul_mat(&w);
        let form = QuadraticForm::new(&gram).expect("free basis is linearly independent");
        CosetQuotient {
            coset,
            free_rank: free_idx.len(),
            free_basis,
            torsion,
            u: snf.u,
            u_inv,
            free_idx,
            torsion_idx,
            beta,
            form,
        }
    }

    pub fn label(&self, lambda: &[i64]) -> ClassLabel {
        let y = self.u.mul_vec(lambda);
        ClassLabel {
            coset: self.coset,
            free: self.free_idx.iter().map(|&i| y[i]).collect(),
            torsion: self
                .torsion_idx
                .iter()
                .zip(&self.torsion)
                .map(|(&i, &s)| y[i].rem_euclid(s))
                .collect(),
        }
    }

    /// A representative `λ` of the class.
    pub fn lift(&self, label: &ClassLabel) -> Vec<i64> {
        let mut y = vec![0i64; self.u.rows()];
        for (&i, &v) in self.free_idx.iter().zip(&label.free) {
            y[i] = v;
        }
        for (&i, &v) in self.torsion_idx.iter().zip(&label.torsion) {
            y[i] = v;
        }
        self.u_inv.mul_vec(&y)
    }

    pub fn squared_length(&self, label: &ClassLabel) -> Rational {
        let x: Vec<Rational> = label.free.iter().zip(&self.beta).map(|(&f, b)| int(f) + b).collect();
        self.form.eval(&x)
    }

    pub fn torsion_order(&self) -> usize {
        self.torsion.iter().map(|&s| s as usize).product()
    }

    /// Every class with squared length `<= cutoff_sq`, paired with its length.
    pub fn classes_within(&self, cutoff_sq: &Rational) -> Vec<(ClassLabel, Rational)> {
        let mut out = Vec::new();
        for pt in self.form.enumerate_coset(&self.beta, cutoff_sq) {
            let mut t = vec![0i64; self.torsion.len()];
            loop {
                out.push((
                    ClassLabel {
                        coset: self.coset,
                        free: pt.coords.clone(),
                        torsion: t.clone(),
                    },
                    pt.norm,
                ));
                let Some(i) = (0..t.len()).find(|&i| t[i] + 1 < self.torsion[i]) else { break };
                t[i] += 1;
                t[..i].iter_mut().for_each(|v| *v = 0);
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LengthMode {
    /// Set of lengths.
    Weak,
    /// Lengths with class multiplicities.
    Counted,
    /// Set of complex lengths.
    ComplexWeak,
    /// Complex lengths with class multiplicities.
    ComplexCounted,
}

/// Γ-conjugacy classes sharing a squared length and a holonomy invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeodesicClass {
    #[serde(serialize_with = "crate::exact::rational::serialize")]
    pub squared_length: Rational,
    pub holonomy_poly: Polynomial,
    /// Smallest coset index among the classes.
    pub coset: usize,
    #[serde(skip)]
    pub coset_point_part: IntMatrix,
    pub count: u64,
}

/// Classes up to a cutoff, sorted by `(squared_length, holonomy_poly)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthSpectrumReport {
    #[serde(serialize_with = "crate::exact::rational::serialize")]
    pub cutoff: Rational,
    pub classes: Vec<GeodesicClass>,
}

impl LengthSpectrumReport {
    /// Aggregates orbits given as `(squared length, smallest coset index)`.
    fn from_orbits(group: &BieberbachGroup, cutoff: &Rational, orbits: impl IntoIterator<Item = (Rational, usize)>) -> Self {
        let holonomy: Vec<Polynomial> = group.cosets().iter().map(|c| point_holonomy(&c.point)).collect();
        let mut agg: BTreeMap<(Rational, Polynomial), (usize, u64)> = BTreeMap::new();
        for (len, coset) in orbits {
            let e = agg.entry((len, holonomy[coset].clone())).or_insert((coset, 0));
            e.0 = e.0.min(coset);
            e.1 += 1;
        }
        let classes = agg
            .into_iter()
            .map(|((squared_length, holonomy_poly), (coset, count))| GeodesicClass {
                squared_length,
                holonomy_poly,
                coset,
                coset_point_part: group.cosets()[coset].point.clone(),
                count,
            })
            .collect();
        LengthSpectrumReport { cutoff: *cutoff, classes }
    }

    /// Number of classes with the given squared length.
    pub fn multiplicity(&self, squared_length: &Rational) -> u64 {
        self.classes
            .iter()
            .filter(|c| c.squared_length == *squared_length)
            .map(|c| c.count)
            .sum()
    }

    /// Comparison keys and counts for a mode; weak modes report presence as `1`.
    pub fn keyed(&self, mode: LengthMode) -> BTreeMap<(Rational, Option<Polynomial>), u64> {
        let mut out = BTreeMap::new();
        for c in &self.classes {
            let hol = matches!(mode, LengthMode::ComplexWeak | LengthMode::ComplexCounted)
                .then(|| c.holonomy_poly.clone());
            *out.entry((c.squared_length, hol)).or_insert(0) += c.count;
        }
        if matches!(mode, LengthMode::Weak | LengthMode::ComplexWeak) {
            out.values_mut().for_each(|v| *v = 1);
        }
        out
    }

    pub fn total(&self) -> u64 {
        self.classes.iter().map(|c| c.count).sum()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // The smaller index stays the root so orbits keep their minimal label.
        if ra < rb {
            self.0[rb] = ra;
        } else {
            self.0[ra] = rb;
        }
    }
}

/// `δ = C L_c` acting on coset labels: `δ (B L_{b+λ}) δ^-1 = B' L_{b'+Cλ+κ}`.
struct Conjugator {
    point: IntMatrix,
    /// `(target coset, κ)` per source coset.
    action: Vec<(usize, Vec<i64>)>,
}

impl Conjugator {
    fn new(group: &BieberbachGroup, delta: &AffineElement) -> Self {
        let action = group
            .cosets()
            .iter()
            .map(|c| {
                let conj = c.conjugate_by(delta);
                let k = group
                    .coset_of_point(&conj.point)
                    .expect("conjugate point part lies in the holonomy group");
                let kappa: Vec<i64> = conj
                    .translation
                    .iter()
                    .zip(&group.cosets()[k].translation)
                    .map(|(a, b)| {
                        let d = a - b;
                        assert!(d.is_integer(), "conjugate differs from its coset representative by Λ");
                        *d.numer() as i64
                    })
                    .collect();
                (k, kappa)
            })
            .collect();
        Conjugator {
            point: delta.point.clone(),
            action,
        }
    }
}

/// Γ-conjugacy classes of squared length `<= cutoff_sq`.
pub fn conjugacy_classes(group: &BieberbachGroup, cutoff_sq: &Rational) -> LengthSpectrumReport {
    let quotients: Vec<CosetQuotient> = (0..group.holonomy_order())
        .map(|i| CosetQuotient::new(group, i))
        .collect();
    let mut labels: Vec<(ClassLabel, Rational)> = Vec::new();
    for q in &quotients {
        labels.extend(q.classes_within(cutoff_sq));
    }
    let index: HashMap<&ClassLabel, usize> = labels.iter().enumerate().map(|(i, (l, _))| (l, i)).collect();
    let conjugators: Vec<Conjugator> = group
        .generators()
        .iter()
        .map(|g| Conjugator::new(group, &g.reduced()))
        .collect();
    let mut uf = UnionFind::new(labels.len());
    // Conjugation preserves length, so the label set below the cutoff is closed.
    for (i, (label, _)) in labels.iter().enumerate() {
        let lambda = quotients[label.coset].lift(label);
        for d in &conjugators {
            let (k, kappa) = &d.action[label.coset];
            let moved: Vec<i64> = d.point.mul_vec(&lambda).iter().zip(kappa).map(|(a, b)| a + b).collect();
            let target = quotients[*k].label(&moved);
            let j = *index.get(&target).expect("conjugation preserves squared length");
            uf.union(i, j);
        }
    }
    let mut orbits: BTreeMap<usize, (Rational, usize)> = BTreeMap::new();
    for (i, (label, len)) in labels.iter().enumerate() {
        let root = uf.find(i);
        let e = orbits.entry(root).or_insert((*len, label.coset));
        e.1 = e.1.min(label.coset);
    }
    LengthSpectrumReport::from_orbits(group, cutoff_sq, orbits.into_values())
}

/// Brute-force oracle: union-find over explicit elements `B L_{b+λ}` with
/// `λ` in a box, joined by explicit conjugation.
///
/// Elements are taken with `|λ_i| <= box_radius + margin`; classes are those
/// components meeting `|λ_i| <= box_radius`. The count is repeated with a
/// wider margin and `BoxTooSmall` is returned if the two disagree.
pub fn brute_force_classes(group: &BieberbachGroup, cutoff_sq: &Rational, box_radius: i64) -> Result<LengthSpectrumReport> {
    let first = brute_force_components(group, cutoff_sq, box_radius, box_radius.max(1))?;
    let second = brute_force_components(group, cutoff_sq, box_radius, box_radius.max(1) + 1)?;
    if first != second {
        return Err(Error::BoxTooSmall);
    }
    Ok(LengthSpectrumReport::from_orbits(group, cutoff_sq, first))
}

/// An integral quadratic form computing `D * ‖p_B(b + λ)‖²` via `v = d (b + λ)`.
struct ScaledLength {
    form: Vec<Vec<i128>>,
    b_num: Vec<i128>,
    b_den: i128,
    /// `D * d^2`.
    scale: i128,
}

impl ScaledLength {
    /// Uses the averaging projector `(1/m) Σ B^k`, independent of kernels.
    fn new(c: &AffineElement, gram: &RatMatrix) -> Self {
        let n = c.dim();
        let b = c.point.to_rational();
        let mut power = RatMatrix::identity(n);
        let mut sum = RatMatrix::zeros(n, n);
        let mut order = 0i64;
        loop {
            sum = sum.add_mat(&power);
            order += 1;
            power = power.mul_mat(&b);
            if power.is_identity() {
                break;
            }
        }
        let p = sum.scale(&rat(1, order as i128));
        let a = p.transpose().mul_mat(gram).mul_mat(&p);
        let d_a = crate::exact::rational::common_denominator(a.to_rows().iter().flatten());
        let b_den = crate::exact::rational::common_denominator(c.translation.iter());
        let form = a
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|x| (x * Rational::from_integer(d_a)).to_integer()).collect())
            .collect();
        let b_num = c
            .translation
            .iter()
            .map(|x| (x * Rational::from_integer(b_den)).to_integer())
            .collect();
        ScaledLength {
            form,
            b_num,
            b_den,
            scale: d_a * b_den * b_den,
        }
    }

    fn eval(&self, lambda: &[i64]) -> Rational {
        Rational::new(self.scaled(lambda), self.scale)
    }

    /// `scale * ‖p_B(b + λ)‖²`, an integer.
    fn scaled(&self, lambda: &[i64]) -> i128 {
        let v: Vec<i128> = lambda
            .iter()
            .zip(&self.b_num)
            .map(|(&l, &b)| l as i128 * self.b_den + b)
            .collect();
        let mut acc = 0i128;
        for (i, row) in self.form.iter().enumerate() {
            let dot: i128 = row.iter().zip(&v).map(|(a, x)| a * x).sum();
            acc += v[i] * dot;
        }
        acc
    }
}

fn brute_force_components(
    group: &BieberbachGroup,
    cutoff_sq: &Rational,
    core: i64,
    margin: i64,
) -> Result<Vec<(Rational, usize)>> {
    let n = group.dimension();
    let outer = core + margin;
    let lengths: Vec<ScaledLength> = group.cosets().iter().map(|c| ScaledLength::new(c, group.gram())).collect();
    let mut nodes: Vec<(usize, Vec<i64>, Rational)> = Vec::new();
    for (ci, sl) in lengths.iter().enumerate() {
        let mut lambda = vec![-outer; n];
        // acc / scale <= p / q  iff  acc * q <= p * scale
        let (p, q) = (*cutoff_sq.numer(), *cutoff_sq.denom());
        loop {
            if sl.scaled(&lambda) * q <= p * sl.scale {
                nodes.push((ci, lambda.clone(), sl.eval(&lambda)));
            }
            let Some(i) = (0..n).find(|&i| lambda[i] < outer) else { break };
            lambda[i] += 1;
            lambda[..i].iter_mut().for_each(|v| *v = -outer);
        }
    }
    let index: HashMap<(usize, &[i64]), usize> = nodes
        .iter()
        .enumerate()
        .map(|(i, (c, l, _))| ((*c, l.as_slice()), i))
        .collect();
    let mut deltas: Vec<AffineElement> = group.cosets().to_vec();
    for k in 0..n {
        let mut e = vec![0i64; n];
        e[k] = 1;
        deltas.push(AffineElement::translation_by(&lift_int_vec(&e)));
    }
    // Conjugating `B L_{b+λ}` is affine in `λ`; sample it at `0` and each `e_j`.
    let mut moves: Vec<Vec<(usize, Vec<i64>, IntMatrix)>> = Vec::with_capacity(group.holonomy_order());
    for ci in 0..group.holonomy_order() {
        let mut per_delta = Vec::with_capacity(deltas.len());
        for d in &deltas {
            let conjugate = |lambda: &[i64]| -> Result<(usize, Vec<i64>)> {
                let conj = group.cosets()[ci].shifted(lambda).conjugate_by(d);
                let k = group.coset_of_point(&conj.point).ok_or_else(|| {
                    Error::InvalidArgument("conjugate point part outside the holonomy group".into())
                })?;
                let moved = conj
                    .translation
                    .iter()
                    .zip(&group.cosets()[k].translation)
                    .map(|(a, b)| (a - b).to_integer() as i64)
                    .collect();
                Ok((k, moved))
            };
            let (k, kappa) = conjugate(&vec![0; n])?;
            let mut columns = Vec::with_capacity(n);
            for j in 0..n {
                let mut e = vec![0i64; n];
                e[j] = 1;
                let (_, image) = conjugate(&e)?;
                columns.push(image.iter().zip(&kappa).map(|(a, b)| a - b).collect::<Vec<i64>>());
            }
            per_delta.push((k, kappa, IntMatrix::from_columns(n, &columns)));
        }
        moves.push(per_delta);
    }
    let mut uf = UnionFind::new(nodes.len());
    let mut moved = vec![0i64; n];
    for (i, (ci, lambda, _)) in nodes.iter().enumerate() {
        for (k, kappa, a) in &moves[*ci] {
            for (r, m) in moved.iter_mut().enumerate() {
                *m = kappa[r] + (0..n).map(|c| a[(r, c)] * lambda[c]).sum::<i64>();
            }
            if let Some(&j) = index.get(&(*k, moved.as_slice())) {
                uf.union(i, j);
            }
        }
    }
    let mut comps: BTreeMap<usize, (Rational, usize, bool)> = BTreeMap::new();
    for (i, (ci, lambda, len)) in nodes.iter().enumerate() {
        let root = uf.find(i);
        let in_core = lambda.iter().all(|v| v.abs() <= core);
        let e = comps.entry(root).or_insert((*len, *ci, false));
        e.1 = e.1.min(*ci);
        e.2 |= in_core;
    }
    let mut out: Vec<(Rational, usize)> = comps.into_values().filter(|c| c.2).map(|c| (c.0, c.1)).collect();
    out.sort();
    Ok(out)
}

/// First key at which two reports differ under a mode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthDivergence {
    #[serde(serialize_with = "crate::exact::rational::serialize")]
    pub squared_length: Rational,
    pub holonomy_poly: Option<Polynomial>,
    pub left: u64,
    pub right: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthComparison {
    pub mode: LengthMode,
    #[serde(serialize_with = "crate::exact::rational::serialize")]
    pub cutoff: Rational,
    pub divergence: Option<LengthDivergence>,
}

impl LengthComparison {
    pub fn equal(&self) -> bool {
        self.divergence.is_none()
    }
}

pub fn compare_reports(a: &LengthSpectrumReport, b: &LengthSpectrumReport, mode: LengthMode) -> LengthComparison {
    let (ka, kb) = (a.keyed(mode), b.keyed(mode));
    let keys: BTreeSet<_> = ka.keys().chain(kb.keys()).collect();
    let divergence = keys.into_iter().find_map(|k| {
        let (l, r) = (ka.get(k).copied().unwrap_or(0), kb.get(k).copied().unwrap_or(0));
        (l != r).then(|| LengthDivergence {
            squared_length: k.0,
            holonomy_poly: k.1.clone(),
            left: l,
            right: r,
        })
    });
    LengthComparison {
        mode,
        cutoff: a.cutoff.min(b.cutoff),
        divergence,
    }
}

pub fn compare_length_spectra(
    a: &BieberbachGroup,
    b: &BieberbachGroup,
    cutoff_sq: &Rational,
    mode: LengthMode,
) -> Result<LengthComparison> {
    if a.dimension() != b.dimension() {
        return Err(Error::DimensionMismatch(format!(
            "groups of dimension {} and {}",
            a.dimension(),
            b.dimension()
        )));
    }
    Ok(compare_reports(
        &conjugacy_classes(a, cutoff_sq),
        &conjugacy_classes(b, cutoff_sq),
        mode,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bieberbach::close_group;
    use crate::corpus;

    fn group(name: &str) -> BieberbachGroup {
        corpus::get(name).unwrap().build().unwrap()
    }

    #[test]
    fn lengths_of_dimension_seven_generator() {
        let g = group("ex37_gamma");
        let b1 = &g.generators()[0];
        assert_eq!(length_sq(b1, g.gram()), rat(3, 4));
        let mut e1 = vec![0i64; 7];
        e1[0] = 1;
        assert_eq!(length_sq(&b1.shifted(&e1), g.gram()), rat(11, 4));
        let t = AffineElement::translation_by(&lift_int_vec(&e1));
        assert_eq!(length_sq(&t, g.gram()), int(1));
    }

    #[test]
    fn base_points() {
        let g = group("klein_bottle");
        for m1 in -3..=3 {
            let o = base_point(&g.cosets()[1].shifted(&[m1, 0]), g.gram());
            assert_eq!(o, vec![rat(-m1 as i128, 2), int(0)]);
        }
        let g = group("ex23iii_gammap");
        assert_eq!(base_point(&g.generators()[0], g.gram()), vec![int(0); 4]);
    }

    #[test]
    fn holonomy_invariants() {
        let g = group("ex23i_gamma");
        let p = holonomy_invariant(&g.generators()[0], g.gram()).unwrap();
        assert_eq!(p, Polynomial::from_ints(&[1, 1]).mul(&Polynomial::from_ints(&[1, 1])).mul(&Polynomial::from_ints(&[1, 1])));
        let g = group("ex23i_gammap");
        let p = holonomy_invariant(&g.generators()[0], g.gram()).unwrap();
        assert_eq!(p, Polynomial::t_minus_one_pow(2).mul(&Polynomial::from_ints(&[1, 1])));
        let id = AffineElement::identity(3);
        assert_eq!(holonomy_invariant(&id, &RatMatrix::identity(3)), Err(Error::ZeroLength));
    }

    #[test]
    fn klein_bottle_multiplicities() {
        let g = group("klein_bottle");
        let r = conjugacy_classes(&g, &rat(25, 4));
        for k in 0..3i128 {
            let l = rat(2 * k + 1, 2);
            assert_eq!(r.multiplicity(&(l * l)), 4);
        }
        assert_eq!(r.multiplicity(&int(0)), 1);
    }

    #[test]
    fn quotient_label_round_trip() {
        let g = group("ex36_gamma");
        for i in 0..g.holonomy_order() {
            let q = CosetQuotient::new(&g, i);
            assert_eq!(q.free_rank, fixed_space(&g.cosets()[i].point, g.gram()).n_b);
            for lambda in [[1, -2, 0, 3, 1, 1], [0, 0, 0, 0, 0, 0], [5, 1, -1, 2, -3, 0]] {
                let l = q.label(&lambda);
                assert_eq!(q.label(&q.lift(&l)), l);
                let direct = length_sq(&g.cosets()[i].shifted(&lambda), g.gram());
                assert_eq!(q.squared_length(&l), direct);
            }
        }
    }

    #[test]
    fn oracle_agrees_on_small_groups() {
        for (name, cutoff, radius) in [("klein_bottle", rat(9, 4), 3), ("ex34_gamma", rat(1, 4), 2), ("ex34_gammap", rat(1, 4), 2)] {
            let g = group(name);
            assert_eq!(brute_force_classes(&g, &cutoff, radius).unwrap(), conjugacy_classes(&g, &cutoff), "{name}");
        }
        let torus = close_group(&[], &RatMatrix::identity(2)).unwrap();
        assert_eq!(brute_force_classes(&torus, &int(2), 3).unwrap().total(), 9);
    }

    #[test]
    fn injectivity_radii() {
        assert_eq!(injectivity_radius_sq(&group("ex23ii_gamma")), rat(1, 16));
        assert_eq!(injectivity_radius_sq(&group("ex23ii_gammap")), rat(1, 8));
        assert_eq!(injectivity_radius_sq(&group("ex23iii_gammap")), rat(1, 64));
        assert_eq!(injectivity_radius_sq(&group("torus_4")), rat(1, 4));
    }

    #[test]
    fn weak_spectra() {
        let l = weak_length_spectrum(&group("ex23i_gammap"), &int(2));
        assert!(l.contains(&rat(5, 4)));
        assert!(!weak_length_spectrum(&group("ex23i_gamma"), &int(2)).contains(&rat(5, 4)));
        let t: Vec<Rational> = weak_length_spectrum(&group("torus_4"), &int(3)).into_iter().collect();
        assert_eq!(t, vec![int(0), int(1), int(2), int(3)]);
    }
}
