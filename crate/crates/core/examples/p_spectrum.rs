//! Two flat 4-manifolds that share the 2-form spectrum and nothing else.

use flatspec::corpus;
use flatspec::exact::int;
use flatspec::spectrum::{compare_p_spectra, multiplicity};

fn main() -> flatspec::Result<()> {
    let a = corpus::get("ex23i_gamma")?.build()?;
    let b = corpus::get("ex23i_gammap")?.build()?;
    println!("d_(0,1): {} vs {}", multiplicity(&a, 0, &int(1))?, multiplicity(&b, 0, &int(1))?);
    for p in 0..=4 {
        let c = compare_p_spectra(&a, &b, p, &int(10))?;
        match c.divergence {
            None => println!("p = {p}: equal up to mu = {}", c.mu_max),
            Some(d) => println!("p = {p}: mu = {} has multiplicities {} vs {}", d.mu, d.left, d.right),
        }
    }
    Ok(())
}
