//! Lowest eigenvalues of the linearization around the radial extremal, one
//! angular mode at a time, and the resulting stability verdict.

use cknmt::spectrum::{mode_spectrum, stability_verdict};

fn main() -> cknmt::Result<()> {
    for (a, p) in [(1.0, 4.0), (1.0, 3.0), (0.1, 10.0)] {
        let (stable, size) = stability_verdict(a, p)?;
        println!("a={a} p={p}: stable={stable}, |mode-1 value| {size:.10}");
        for k in 1..=3 {
            let r = mode_spectrum(a, p, k)?;
            match r.exact_lowest_mode1 {
                Some(exact) => println!("  k={k}: {:.12} (exact {exact:.12})", r.numeric_lowest),
                None => println!("  k={k}: {:.12}", r.numeric_lowest),
            }
        }
    }
    Ok(())
}
