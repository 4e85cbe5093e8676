//! Both sides of the Poisson identity for the heat trace, with certified tails.

use flatspec::corpus;
use flatspec::zeta::{asymptotic_fit, poisson_check};

fn main() -> flatspec::Result<()> {
    for name in ["klein_bottle", "ex23iii_gammap", "ex35_gamma"] {
        let g = corpus::get(name)?.build()?;
        let report = poisson_check(&g, 1, &[0.1, 0.2, 0.5])?;
        println!("{name} p = 1 via {:?}", report.route);
        for pt in &report.points {
            println!(
                "  s = {:<4} spectral {:.12} geometric {:.12} diff {:.1e} (allowed {:.1e})",
                pt.s, pt.spectral.value, pt.geometric.value, pt.difference, pt.tolerance
            );
        }
    }
    let g = corpus::get("ex23i_gamma")?.build()?;
    if let Some(fit) = asymptotic_fit(&g, 1)? {
        println!("small-s leading term: predicted (d, t) = ({}, {}), fitted t = {:.3}", fit.predicted_d, fit.predicted_t, fit.fitted_t);
    }
    Ok(())
}
