//! Invariants as properties, over random inputs and over the whole corpus.

mod common;

use common::{box_shell, conjugated, group, translation_orbits};
use flatspec::bieberbach::{is_diagonal_type, is_orientable};
use flatspec::corpus;
use flatspec::exact::{enumerate_shell, int, parse_rational, rat, IntMatrix, RatMatrix, Rational};
use flatspec::geodesics::{conjugacy_classes, weak_length_spectrum, LengthMode};
use flatspec::krawtchouk::{krawtchouk, traces};
use flatspec::spectrum::{betti_numbers, spectra};
use flatspec::zeta::{diagonal_zeta, zeta_geometric};
use num_traits::Zero;
use proptest::prelude::*;

const SMALL_GROUPS: [&str; 5] = ["klein_bottle", "ex23i_gamma", "ex23ii_gammap", "ex23iii_gammap", "ex34_gamma"];

/// Products of elementary matrices `I + k E_ij`, so always unimodular.
fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, -2i64..=2), 1..=4).prop_map(move |ops| {
        ops.into_iter().fold(IntMatrix::identity(n), |acc, (i, j, k)| {
            if i == j {
                return acc;
            }
            let mut e = IntMatrix::identity(n);
            e[(i, j)] = k;
            e.mul_mat(&acc)
        })
    })
}

fn conjugator(n: usize) -> impl Strategy<Value = (IntMatrix, Vec<Rational>)> {
    (unimodular(n), prop::collection::vec(0i128..8, n)).prop_map(|(c, shift)| (c, shift.into_iter().map(|s| rat(s, 8)).collect()))
}

fn group_and_conjugator() -> impl Strategy<Value = (&'static str, IntMatrix, Vec<Rational>)> {
    prop::sample::select(SMALL_GROUPS.to_vec())
        .prop_flat_map(|name| (Just(name), conjugator(group(name).dimension())))
        .prop_map(|(name, (c, s))| (name, c, s))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 20, ..ProptestConfig::default() })]

    #[test]
    fn complex_lengths_are_conjugation_invariant((name, c, shift) in group_and_conjugator()) {
        let g = group(name);
        let h = conjugated(&g, &c, &shift);
        let cutoff = int(2);
        for mode in [LengthMode::Counted, LengthMode::ComplexCounted] {
            prop_assert_eq!(conjugacy_classes(&g, &cutoff).keyed(mode), conjugacy_classes(&h, &cutoff).keyed(mode));
        }
    }

    #[test]
    fn spectra_are_conjugation_invariant((name, c, shift) in group_and_conjugator()) {
        let g = group(name);
        let h = conjugated(&g, &c, &shift);
        prop_assert_eq!(spectra(&g, &int(3)).unwrap(), spectra(&h, &int(3)).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn shell_enumeration_matches_a_box_scan(
        (n, entries, k) in (1usize..=3).prop_flat_map(|n| (Just(n), prop::collection::vec(-2i128..=2, n * n), 1i128..=3)),
        num in 0i128..=24,
        den in 1i128..=4,
    ) {
        let a = RatMatrix::from_fn(n, n, |i, j| Rational::from_integer(entries[i * n + j]));
        let gram = a.transpose().mul_mat(&a).add_mat(&RatMatrix::identity(n).scale(&rat(1, k)));
        let mu = rat(num, den);
        let got: std::collections::BTreeSet<Vec<i64>> = enumerate_shell(&gram, &mu).unwrap().into_iter().collect();
        prop_assert_eq!(got, box_shell(&gram, &mu));
    }

    #[test]
    fn krawtchouk_is_the_trace_of_a_diagonal_sign_matrix(n in 1usize..=12, x in 0usize..=12, p in 0usize..=12) {
        prop_assume!(x <= n && p <= n);
        let b = IntMatrix::diagonal(&(0..n).map(|i| if i < x { -1 } else { 1 }).collect::<Vec<i64>>());
        prop_assert_eq!(krawtchouk(n, p, x).unwrap(), traces(&b)[p]);
    }

    #[test]
    fn krawtchouk_reciprocity(n in 1usize..=16, x in 0usize..=16, p in 0usize..=16) {
        prop_assume!(x <= n && p <= n);
        let binom = |n: usize, k: usize| (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128);
        prop_assert_eq!(
            binom(n, x) * krawtchouk(n, p, x).unwrap() as i128,
            binom(n, p) * krawtchouk(n, x, p).unwrap() as i128
        );
    }

    #[test]
    fn rationals_round_trip_through_text(num in -10_000i128..10_000, den in 1i128..500) {
        let r = rat(num, den);
        prop_assert_eq!(parse_rational(&r.to_string()).unwrap(), r);
    }
}

fn corpus_groups() -> impl Iterator<Item = (&'static str, flatspec::bieberbach::BieberbachGroup)> {
    corpus::names().iter().map(|&name| (name, group(name)))
}

#[test]
fn multiplicities_alternate_to_zero_and_respect_duality() {
    for (name, g) in corpus_groups() {
        let n = g.dimension();
        let tables = spectra(&g, &int(6)).unwrap();
        let betti = betti_numbers(&g);
        for p in 0..=n {
            assert_eq!(tables[p].multiplicity(&Rational::zero()), betti[p], "{name} p = {p}");
        }
        let mus: std::collections::BTreeSet<Rational> = tables.iter().flat_map(|t| t.entries.keys().copied()).collect();
        for mu in &mus {
            let alt: i64 = (0..=n).map(|p| if p % 2 == 0 { 1 } else { -1 } * tables[p].multiplicity(mu) as i64).sum();
            assert_eq!(alt, 0, "{name} mu = {mu}");
            if is_orientable(&g) {
                for p in 0..=n {
                    assert_eq!(tables[p].multiplicity(mu), tables[n - p].multiplicity(mu), "{name} p = {p} mu = {mu}");
                }
            }
        }
    }
}

#[test]
fn nonorientable_entries_have_no_top_degree_harmonic_forms() {
    for (name, g) in corpus_groups() {
        if !is_orientable(&g) {
            let b = betti_numbers(&g);
            assert_eq!(b[g.dimension()], 0, "{name}: top Betti number");
        }
    }
}

#[test]
fn translation_classes_are_holonomy_orbits() {
    for (name, g) in corpus_groups().filter(|(_, g)| g.dimension() <= 7) {
        let cutoff = int(2);
        let report = conjugacy_classes(&g, &cutoff);
        let identity = (0..g.holonomy_order()).find(|&i| g.cosets()[i].point.is_identity()).unwrap();
        let mut counted: std::collections::BTreeMap<Rational, u64> = std::collections::BTreeMap::new();
        for c in report.classes.iter().filter(|c| c.coset == identity && !c.squared_length.is_zero()) {
            *counted.entry(c.squared_length).or_default() += c.count;
        }
        assert_eq!(counted, translation_orbits(&g, &cutoff), "{name}");
    }
}

#[test]
fn weak_spectrum_is_the_support_of_the_counted_one() {
    for (name, g) in corpus_groups().filter(|(_, g)| g.dimension() <= 7) {
        let cutoff = int(4);
        let from_classes: std::collections::BTreeSet<Rational> =
            conjugacy_classes(&g, &cutoff).keyed(LengthMode::Weak).into_keys().map(|(l, _)| l).collect();
        assert_eq!(from_classes, weak_length_spectrum(&g, &cutoff), "{name}");
    }
}

#[test]
fn diagonal_zeta_matches_the_geometric_side() {
    for (name, g) in corpus_groups().filter(|(_, g)| g.dimension() <= 7 && is_diagonal_type(g)) {
        for p in 0..=g.dimension() {
            for s in [0.1, 0.3] {
                let closed = diagonal_zeta(&g, p, s).unwrap();
                let geo = zeta_geometric(&g, p, s, 40.0).unwrap();
                let allowed = 1e-9 + closed.tail + geo.tail;
                assert!((closed.value - geo.value).abs() <= allowed, "{name} p = {p} s = {s}: {} vs {}", closed.value, geo.value);
            }
        }
    }
}
