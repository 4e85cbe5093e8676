//! Pairwise isospectrality verdicts across all notions at once.

use serde::Serialize;

use crate::bieberbach::{is_diagonal_type, BieberbachGroup};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::geodesics::{compare_reports, conjugacy_classes, LengthComparison, LengthMode};
use crate::spectrum::{compare_tables, spectra, sunada_isospectral, SpectralComparison};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sunada {
    Yes,
    No,
    /// Sunada numbers are unavailable or differ, yet every probed `p`-spectrum agrees.
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairVerdict {
    /// One comparison per `p = 0..=n`.
    pub p_spectra: Vec<SpectralComparison>,
    pub sunada: Sunada,
    pub counted: LengthComparison,
    pub weak: LengthComparison,
    pub complex_weak: LengthComparison,
    pub complex_counted: LengthComparison,
}

impl PairVerdict {
    /// The `p` whose spectra agree up to the probe.
    pub fn isospectral_p(&self) -> Vec<usize> {
        self.p_spectra.iter().filter(|c| c.equal()).map(|c| c.p).collect()
    }
}

/// Compares `p`-spectra for every `p` up to `mu_max` and length spectra in
/// every mode up to `cutoff_sq`.
///
/// Equal Sunada numbers of diagonal groups give `Yes`; a differing
/// `p`-spectrum gives `No`.
pub fn compare_pair(a: &BieberbachGroup, b: &BieberbachGroup, mu_max: &Rational, cutoff_sq: &Rational) -> Result<PairVerdict> {
    if a.dimension() != b.dimension() {
        return Err(Error::DimensionMismatch(format!(
            "groups of dimension {} and {}",
            a.dimension(),
            b.dimension()
        )));
    }
    let (sa, sb) = (spectra(a, mu_max)?, spectra(b, mu_max)?);
    let p_spectra: Vec<SpectralComparison> = sa.iter().zip(&sb).map(|(x, y)| compare_tables(x, y)).collect();
    let sunada = if is_diagonal_type(a) && is_diagonal_type(b) && sunada_isospectral(a, b)? {
        Sunada::Yes
    } else if p_spectra.iter().any(|c| !c.equal()) {
        Sunada::No
    } else {
        Sunada::Undetermined
    };
    let (ra, rb) = (conjugacy_classes(a, cutoff_sq), conjugacy_classes(b, cutoff_sq));
    Ok(PairVerdict {
        p_spectra,
        sunada,
        counted: compare_reports(&ra, &rb, LengthMode::Counted),
        weak: compare_reports(&ra, &rb, LengthMode::Weak),
        complex_weak: compare_reports(&ra, &rb, LengthMode::ComplexWeak),
        complex_counted: compare_reports(&ra, &rb, LengthMode::ComplexCounted),
    })
}
