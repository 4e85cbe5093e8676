//! Published values for the classical examples, checked exactly.

mod common;

use common::group;
use flatspec::bieberbach::is_orientable;
use flatspec::exact::{int, rat, Rational};
use flatspec::geodesics::{conjugacy_classes, injectivity_radius_sq, weak_length_spectrum};
use flatspec::krawtchouk::{integral_roots, krawtchouk, traces};
use flatspec::spectrum::{compare_p_spectra, spectrum_table};

fn isospectral_ps(left: &str, right: &str, mu_max: i64) -> Vec<usize> {
    let (a, b) = (group(left), group(right));
    (0..=a.dimension())
        .filter(|&p| compare_p_spectra(&a, &b, p, &int(mu_max)).unwrap().equal())
        .collect()
}

#[test]
fn z2_pair_is_isospectral_only_in_the_middle_degree() {
    assert_eq!(isospectral_ps("ex23i_gamma", "ex23i_gammap", 10), vec![2]);
}

#[test]
fn isomorphic_pair_is_isospectral_in_odd_degrees() {
    assert_eq!(isospectral_ps("ex23ii_gamma", "ex23ii_gammap", 8), vec![1, 3]);
    let (a, b) = (group("ex23ii_gamma"), group("ex23ii_gammap"));
    // 1/2 is a length for the first group only
    assert!(weak_length_spectrum(&a, &rat(1, 4)).contains(&rat(1, 4)));
    assert!(!weak_length_spectrum(&b, &rat(1, 4)).contains(&rat(1, 4)));
}

#[test]
fn klein_four_and_cyclic_pair() {
    assert_eq!(isospectral_ps("ex23iii_gamma", "ex23iii_gammap", 8), vec![1, 3]);
    let (a, b) = (group("ex23iii_gamma"), group("ex23iii_gammap"));
    assert!(is_orientable(&a));
    assert!(!is_orientable(&b));
    // length 1/4 occurs for the cyclic group only
    assert!(conjugacy_classes(&b, &rat(1, 16)).multiplicity(&rat(1, 16)) > 0);
    assert_eq!(conjugacy_classes(&a, &rat(1, 16)).multiplicity(&rat(1, 16)), 0);
    assert_ne!(injectivity_radius_sq(&a), injectivity_radius_sq(&b));
}

#[test]
fn cyclic_generator_traces_match_the_listed_values() {
    let b = group("ex23iii_gammap");
    let holonomy: Vec<_> = b.cosets().iter().map(|c| traces(&c.point)).collect();
    let k: Vec<i64> = (0..=4).map(|p| krawtchouk(4, p, 2).unwrap()).collect();
    assert_eq!(k, vec![1, 0, -2, 0, 1]);
    // B'^2 = diag(-I_2, 1, 1) has K_p^4(2) as traces; B', B'^3 vanish in degrees 1..3
    assert!(holonomy.contains(&k));
    let rotations: Vec<&Vec<i64>> = holonomy.iter().filter(|t| t[1..4] == [0, 0, 0]).collect();
    assert_eq!(rotations.len(), 2);
    for t in rotations {
        assert_eq!(t[0], 1);
        // determinant of a non-orientable generator
        assert_eq!(t[4], -1);
    }
}

#[test]
fn two_isospectral_pair_with_different_first_eigenvalue() {
    assert!(isospectral_ps("ex23iv_gamma", "ex23iv_gammap", 8).contains(&2));
    let first = |name: &str| spectrum_table(&group(name), 0, &int(4)).unwrap().first_positive();
    assert_eq!(first("ex23iv_gammap"), Some(int(1)));
    assert_eq!(first("ex23iv_gamma"), Some(int(2)));
    let (a, b) = (group("ex23iv_gamma"), group("ex23iv_gammap"));
    assert_eq!(injectivity_radius_sq(&a), injectivity_radius_sq(&b));
    assert_ne!(weak_length_spectrum(&a, &int(2)), weak_length_spectrum(&b, &int(2)));
}

#[test]
fn variant_changes_only_the_injectivity_radius() {
    assert!(isospectral_ps("ex23iv_gamma_variant", "ex23iv_gammap", 8).contains(&2));
    assert_eq!(injectivity_radius_sq(&group("ex23iv_gamma_variant")), rat(1, 8));
    assert_eq!(injectivity_radius_sq(&group("ex23iv_gammap")), rat(1, 16));
}

#[test]
fn family_is_middle_degree_isospectral_with_distinct_lengths() {
    let names = ["gamma_6_5_1", "gamma_6_5_2", "gamma_6_5_3"];
    for (i, a) in names.iter().enumerate() {
        for b in &names[i + 1..] {
            let ps = isospectral_ps(a, b, 6);
            assert!(ps.contains(&3), "{a} {b}: {ps:?}");
            assert!(!ps.contains(&0), "{a} {b}: {ps:?}");
            let cutoff = int(2);
            assert_ne!(weak_length_spectrum(&group(a), &cutoff), weak_length_spectrum(&group(b), &cutoff));
        }
    }
}

#[test]
fn krawtchouk_zeros_in_dimension_fourteen() {
    let roots = integral_roots(14, 7).unwrap();
    assert!(roots.contains(&3), "{roots:?}");
    assert!(!roots.contains(&4), "{roots:?}");
}

#[test]
fn klein_bottle_lengths_are_half_odd() {
    let r = conjugacy_classes(&group("klein_bottle"), &rat(25, 4));
    let nontrivial: Vec<Rational> = r
        .keyed(flatspec::geodesics::LengthMode::Counted)
        .into_keys()
        .map(|(l, _)| l)
        .filter(|l| !Rational::is_integer(l))
        .collect();
    assert_eq!(nontrivial, vec![rat(1, 4), rat(9, 4), rat(25, 4)]);
}
