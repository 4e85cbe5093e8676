//! Reproduces the summary table of isospectrality notions for the classical pairs.

use flatspec::corpus::{self, PAIRS};
use flatspec::exact::int;
use flatspec::verdict::compare_pair;

fn yes(b: bool) -> &'static str {
    if b {
        "Yes"
    } else {
        "No"
    }
}

fn main() -> flatspec::Result<()> {
    println!("{:<5} {:<18} {:<13} {:<5} {:<5} {:<5} {:<5} {:<6}", "pair", "p-isospectral", "Sunada", "[L]", "L", "L_c", "[L_c]", "iso pi1");
    for pair in PAIRS {
        let a = corpus::get(pair.left)?.build()?;
        let b = corpus::get(pair.right)?.build()?;
        // The 13-dimensional pair already separates every p at the first eigenvalue.
        let mu_max = if a.dimension() > 7 { int(1) } else { int(6) };
        let v = compare_pair(&a, &b, &mu_max, &int(4))?;
        let ps = v.isospectral_p();
        let ps = if ps.is_empty() {
            "none".to_string()
        } else if ps.len() == a.dimension() + 1 {
            "all".to_string()
        } else {
            format!("{ps:?}")
        };
        println!(
            "{:<5} {:<18} {:<13} {:<5} {:<5} {:<5} {:<5} {:<6}",
            pair.label,
            ps,
            format!("{:?}", v.sunada),
            yes(v.counted.equal()),
            yes(v.weak.equal()),
            yes(v.complex_weak.equal()),
            yes(v.complex_counted.equal()),
            yes(pair.isomorphic_fundamental_groups),
        );
    }
    Ok(())
}
