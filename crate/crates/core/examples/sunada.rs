//! Sunada numbers and the Krawtchouk criterion for diagonal groups.

use flatspec::corpus;
use flatspec::spectrum::{diagonal_isospectrality_criterion, sunada_isospectral, sunada_numbers};

fn main() -> flatspec::Result<()> {
    for (left, right) in [("ex34_gamma", "ex34_gammap"), ("ex23i_gamma", "ex23i_gammap")] {
        let a = corpus::get(left)?.build()?;
        let b = corpus::get(right)?.build()?;
        println!("{left}: c_(d,t) {:?}", sunada_numbers(&a)?.nonzero());
        println!("{right}: c_(d,t) {:?}", sunada_numbers(&b)?.nonzero());
        println!("  Sunada isospectral: {}", sunada_isospectral(&a, &b)?);
        let ps: Vec<usize> = (0..=a.dimension())
            .filter(|&p| diagonal_isospectrality_criterion(&a, &b, p).map(|r| r.isospectral).unwrap_or(false))
            .collect();
        println!("  p-isospectral exactly for p in {ps:?}");
    }
    Ok(())
}
