//! The Klein bottle: group closure, Betti numbers, low spectrum and short geodesics.

use flatspec::bieberbach::{is_orientable, torsion_free_check};
use flatspec::corpus;
use flatspec::exact::{int, rat};
use flatspec::geodesics::{conjugacy_classes, injectivity_radius_sq};
use flatspec::spectrum::{betti_numbers, spectrum_table};

fn main() -> flatspec::Result<()> {
    let g = corpus::get("klein_bottle")?.build()?;
    println!("holonomy order {}, orientable {}, torsion-free {}", g.holonomy_order(), is_orientable(&g), torsion_free_check(&g).is_ok());
    println!("betti numbers {:?}", betti_numbers(&g));
    for (mu, d) in &spectrum_table(&g, 0, &int(5))?.entries {
        println!("  mu = {mu:<3} d_0 = {d}");
    }
    let report = conjugacy_classes(&g, &rat(25, 4));
    for class in &report.classes {
        println!("  |γ|^2 = {:<5} holonomy {:?} count {}", class.squared_length.to_string(), class.holonomy_poly.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(), class.count);
    }
    println!("squared injectivity radius {}", injectivity_radius_sq(&g));
    Ok(())
}
