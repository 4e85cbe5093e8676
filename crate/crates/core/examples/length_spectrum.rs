//! Counted and complex length spectra, checked against the brute-force oracle.

use flatspec::corpus;
use flatspec::exact::rat;
use flatspec::geodesics::{brute_force_classes, compare_length_spectra, conjugacy_classes, injectivity_radius_sq, LengthMode};

fn main() -> flatspec::Result<()> {
    let a = corpus::get("ex36_gamma")?.build()?;
    let b = corpus::get("ex36_gammap")?.build()?;
    let cutoff = rat(1, 2);
    for (name, g) in [("ex36_gamma", &a), ("ex36_gammap", &b)] {
        let fast = conjugacy_classes(g, &cutoff);
        let slow = brute_force_classes(g, &cutoff, 1)?;
        println!("{name}: m(1/2) = {} (oracle {}), injectivity radius^2 {}", fast.multiplicity(&cutoff), slow.multiplicity(&cutoff), injectivity_radius_sq(g));
    }
    for mode in [LengthMode::Weak, LengthMode::Counted, LengthMode::ComplexWeak, LengthMode::ComplexCounted] {
        let c = compare_length_spectra(&a, &b, &rat(4, 1), mode)?;
        println!("{mode:?}: {}", if c.equal() { "equal up to 4" } else { "differ" });
    }
    Ok(())
}
