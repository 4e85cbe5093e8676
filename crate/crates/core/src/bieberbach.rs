//! Bieberbach groups `Γ = <B L_b, Λ>` acting on `R^n` by `x ↦ B(x + b)`.
//!
//! Coordinates are lattice coordinates: `Λ = Z^n` and the metric is given by
//! a Gram matrix `Q`. A point part `B` is an integral matrix with `B^T Q B = Q`.

use std::collections::{HashMap, VecDeque};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::rational::{common_denominator, frac_vec, int, is_integer_vec};
use crate::exact::snf::{column_lattice_basis, integer_kernel, unimodular_inverse};
use crate::exact::{IntMatrix, QuadraticForm, RatMatrix, Rational};

pub const DEFAULT_CLOSURE_BOUND: usize = 1024;

/// The motion `B L_b : x ↦ B(x + b)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineElement {
    pub point: IntMatrix,
    pub translation: Vec<Rational>,
}

impl AffineElement {
    pub fn new(point: IntMatrix, translation: Vec<Rational>) -> Self {
        assert!(point.is_square() && point.rows() == translation.len());
        AffineElement { point, translation }
    }

    pub fn identity(n: usize) -> Self {
        AffineElement::new(IntMatrix::identity(n), vec![Rational::zero(); n])
    }

    pub fn translation_by(lambda: &[Rational]) -> Self {
        AffineElement::new(IntMatrix::identity(lambda.len()), lambda.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        let shifted: Vec<Rational> = x.iter().zip(&self.translation).map(|(a, b)| a + b).collect();
        self.point.to_rational().mul_vec(&shifted)
    }

    /// `(B L_b)(C L_c) = BC L_{C^-1 b + c}`.
    pub fn compose(&self, other: &AffineElement) -> AffineElement {
        let cinv = unimodular_inverse(&other.point).to_rational();
        let t: Vec<Rational> = cinv
            .mul_vec(&self.translation)
            .iter()
            .zip(&other.translation)
            .map(|(a, b)| a + b)
            .collect();
        AffineElement::new(self.point.mul_mat(&other.point), t)
    }

    /// `(B L_b)^-1 = B^-1 L_{-Bb}`.
    pub fn inverse(&self) -> AffineElement {
        let bb = self.point.to_rational().mul_vec(&self.translation);
        AffineElement::new(
            unimodular_inverse(&self.point),
            bb.into_iter().map(|x| -x).collect(),
        )
    }

    /// `δ γ δ^-1`.
    pub fn conjugate_by(&self, delta: &AffineElement) -> AffineElement {
        delta.compose(self).compose(&delta.inverse())
    }

    /// Translation reduced into `[0, 1)^n`.
    pub fn reduced(&self) -> AffineElement {
        AffineElement::new(self.point.clone(), frac_vec(&self.translation))
    }

    /// `B L_{b + λ}`.
    pub fn shifted(&self, lambda: &[i64]) -> AffineElement {
        let t = self
            .translation
            .iter()
            .zip(lambda)
            .map(|(b, &l)| b + int(l))
            .collect();
        AffineElement::new(self.point.clone(), t)
    }

    pub fn is_translation(&self) -> bool {
        self.point.is_identity()
    }
}

/// Fixed-space data of a point part `B`.
#[derive(Clone, Debug)]
pub struct FixedSpace {
    /// `dim ker(B - Id)`
    pub n_b: usize,
    /// Basis of `Λ^B = Λ ∩ ker(B - Id)`, as columns.
    pub fixed_lattice: IntMatrix,
    /// Orthogonal projection onto `ker(B - Id)` with respect to `Q`.
    pub projector: RatMatrix,
    /// Basis of `p_B(Λ)`, as columns.
    pub projected_basis: RatMatrix,
    /// Gram matrix of `projected_basis`.
    pub projected_gram: RatMatrix,
    /// Maps `v` to the coordinates of `p_B(v)` in `projected_basis`.
    coord_map: RatMatrix,
}

impl FixedSpace {
    pub fn project(&self, v: &[Rational]) -> Vec<Rational> {
        self.projector.mul_vec(v)
    }

    /// Coordinates of `p_B(v)` in the basis of `p_B(Λ)`.
    pub fn projected_coordinates(&self, v: &[Rational]) -> Vec<Rational> {
        self.coord_map.mul_vec(v)
    }
}

pub fn fixed_space(b: &IntMatrix, gram: &RatMatrix) -> FixedSpace {
    let n = b.rows();
    let bm = b.sub_mat(&IntMatrix::identity(n));
    let w_int = integer_kernel(&bm);
    let d = w_int.cols();
    if d == 0 {
        return FixedSpace {
            n_b: 0,
            fixed_lattice: w_int,
            projector: RatMatrix::zeros(n, n),
            projected_basis: RatMatrix::zeros(n, 0),
            projected_gram: RatMatrix::zeros(0, 0),
            coord_map: RatMatrix::zeros(0, n),
        };
    }
    let w = w_int.to_rational();
    let wt_q = w.transpose().mul_mat(gram);
    let g0_inv = wt_q.mul_mat(&w).inverse().expect("fixed lattice Gram is singular");
    // coordinates of p_B(e_i) in the basis w
    let cmat = g0_inv.mul_mat(&wt_q);
    let projector = w.mul_mat(&cmat);

    let den = common_denominator((0..d).flat_map(|r| (0..n).map(move |c| (r, c))).map(|rc| &cmat[rc]));
    let scaled = cmat
        .scale(&int(den as i64))
        .to_integer()
        .expect("scaled projection coordinates are integral");
    let e = column_lattice_basis(&scaled)
        .to_rational()
        .scale(&Rational::new(1, den));
    let projected_basis = w.mul_mat(&e);
    let projected_gram = projected_basis.transpose().mul_mat(gram).mul_mat(&projected_basis);
    let coord_map = e.inverse().expect("projected basis is degenerate").mul_mat(&cmat);
    FixedSpace {
        n_b: d,
        fixed_lattice: w_int,
        projector,
        projected_basis,
        projected_gram,
        coord_map,
    }
}

/// A closed Bieberbach group: one canonical representative per coset of `Λ`.
#[derive(Clone, Debug)]
pub struct BieberbachGroup {
    gram: RatMatrix,
    gram_inv: RatMatrix,
    generators: Vec<AffineElement>,
    /// `cosets[0]` is the identity; translations lie in `[0, 1)^n`.
    cosets: Vec<AffineElement>,
    inverses: Vec<IntMatrix>,
    index: HashMap<IntMatrix, usize>,
}

impl BieberbachGroup {
    pub fn dimension(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn gram_inverse(&self) -> &RatMatrix {
        &self.gram_inv
    }

    pub fn generators(&self) -> &[AffineElement] {
        &self.generators
    }

    pub fn cosets(&self) -> &[AffineElement] {
        &self.cosets
    }

    pub fn holonomy_order(&self) -> usize {
        self.cosets.len()
    }

    /// Integral inverse of the point part of coset `i`.
    pub fn point_inverse(&self, i: usize) -> &IntMatrix {
        &self.inverses[i]
    }

    pub fn coset_of_point(&self, point: &IntMatrix) -> Option<usize> {
        self.index.get(point).copied()
    }

    pub fn gram_is_identity(&self) -> bool {
        self.gram.is_identity()
    }
}

/// Closes the generated group modulo `Λ` with the default bound.
pub fn close_group(generators: &[AffineElement], gram: &RatMatrix) -> Result<BieberbachGroup> {
    close_group_bounded(generators, gram, DEFAULT_CLOSURE_BOUND)
}

pub fn close_group_bounded(
    generators: &[AffineElement],
    gram: &RatMatrix,
    bound: usize,
) -> Result<BieberbachGroup> {
    let n = gram.rows();
    QuadraticForm::new(gram)?;
    for (i, g) in generators.iter().enumerate() {
        if g.dim() != n {
            return Err(Error::DimensionMismatch(format!(
                "generator {i} has dimension {} but the Gram matrix has {n}",
                g.dim()
            )));
        }
        let b = g.point.to_rational();
        if b.transpose().mul_mat(gram).mul_mat(&b) != *gram {
            return Err(Error::NonOrthogonalGenerator { index: i });
        }
    }

    let mut cosets = vec![AffineElement::identity(n)];
    let mut index: HashMap<IntMatrix, usize> = HashMap::from([(IntMatrix::identity(n), 0)]);
    let mut queue = VecDeque::from([0usize]);
    let gens: Vec<AffineElement> = generators.iter().map(|g| g.reduced()).collect();
    while let Some(i) = queue.pop_front() {
        for g in &gens {
            let prod = cosets[i].compose(g).reduced();
            match index.get(&prod.point) {
                Some(&j) => {
                    if cosets[j].translation != prod.translation {
                        return Err(Error::CocycleInconsistent {
                            point: prod.point.to_string(),
                        });
                    }
                }
                None => {
                    if cosets.len() == bound {
                        return Err(Error::ClosureBoundExceeded { bound });
                    }
                    index.insert(prod.point.clone(), cosets.len());
                    queue.push_back(cosets.len());
                    cosets.push(prod);
                }
            }
        }
    }

    // Right multiplication by generators is consistent, so the table closes;
    // the full check below guards the transcription of every product.
    if cosets.len() <= 256 {
        for a in &cosets {
            for b in &cosets {
                let prod = a.compose(b).reduced();
                let j = index[&prod.point];
                if cosets[j].translation != prod.translation {
                    return Err(Error::CocycleInconsistent {
                        point: prod.point.to_string(),
                    });
                }
            }
        }
    }

    let inverses = cosets.iter().map(|c| unimodular_inverse(&c.point)).collect();
    let gram_inv = gram.inverse().expect("positive definite Gram is invertible");
    Ok(BieberbachGroup {
        gram: gram.clone(),
        gram_inv,
        generators: generators.to_vec(),
        cosets,
        inverses,
        index,
    })
}

/// A coset `B L_b Λ` containing an element with a fixed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionViolation {
    pub coset: usize,
    pub element: AffineElement,
}

/// Γ is torsion-free iff `b_+ ∉ p_B(Λ)` for every coset with `B ≠ Id`.
pub fn torsion_free_check(group: &BieberbachGroup) -> std::result::Result<(), TorsionViolation> {
    for (i, c) in group.cosets().iter().enumerate().skip(1) {
        let fs = fixed_space(&c.point, group.gram());
        if is_integer_vec(&fs.projected_coordinates(&c.translation)) {
            return Err(TorsionViolation {
                coset: i,
                element: c.clone(),
            });
        }
    }
    Ok(())
}

pub fn point_determinant(b: &IntMatrix) -> i64 {
    let d = b.to_rational().determinant();
    *d.numer() as i64
}

pub fn is_orientable(group: &BieberbachGroup) -> bool {
    group.cosets().iter().all(|c| point_determinant(&c.point) == 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagonalStatus {
    Diagonal,
    NotDiagonal,
    /// The notion needs an orthonormal lattice basis; the Gram is not the identity.
    NotApplicable,
}

pub fn diagonal_status(group: &BieberbachGroup) -> DiagonalStatus {
    if !group.gram_is_identity() {
        return DiagonalStatus::NotApplicable;
    }
    let diagonal = group.cosets().iter().all(|c| {
        c.point.is_diagonal() && (0..c.dim()).all(|i| c.point[(i, i)].abs() == 1)
    });
    if diagonal {
        DiagonalStatus::Diagonal
    } else {
        DiagonalStatus::NotDiagonal
    }
}

pub fn is_diagonal_type(group: &BieberbachGroup) -> bool {
    diagonal_status(group) == DiagonalStatus::Diagonal
}

/// Indices `i` with `B_ii = 1` for a diagonal point part.
pub fn fixed_coordinates(b: &IntMatrix) -> Vec<usize> {
    (0..b.rows()).filter(|&i| b[(i, i)].is_one()).collect()
}
