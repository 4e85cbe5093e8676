//! Binary Krawtchouk polynomials and their integral roots.

use flatspec::exact::IntMatrix;
use flatspec::krawtchouk::{integral_roots, krawtchouk, traces};

fn main() -> flatspec::Result<()> {
    for n in [4, 6, 14] {
        for p in 0..=n {
            let roots = integral_roots(n, p)?;
            if !roots.is_empty() {
                println!("K_{p}^{n} vanishes at {roots:?}");
            }
        }
    }
    // tr_p of diag(-1, -1, 1, 1) is K_p^4(2)
    let b = IntMatrix::diagonal(&[-1, -1, 1, 1]);
    let k: Vec<i64> = (0..=4).map(|p| krawtchouk(4, p, 2)).collect::<flatspec::Result<_>>()?;
    println!("traces {:?} = K^4(2) {:?}", traces(&b), k);
    Ok(())
}
