//! Minimize the Sobolev quotient on the cylinder on both sides of the
//! symmetry-breaking curve and print the diagnostics of each solve.

use std::time::Instant;

use cknmt::cylinder::{minimize_f, InitStrategy, SolverOptions};

fn main() -> cknmt::Result<()> {
    let opts = SolverOptions::default();
    for (a, p) in [(1.0, 3.0), (1.0, 4.0), (0.1, 10.0)] {
        let start = Instant::now();
        let r = minimize_f(a, p, InitStrategy::RadialPlusMode1, &opts)?;
        println!(
            "a={a} p={p}: {:?} F={:.12} F_radial={:.12} θ-fraction={:.3e} EL={:.1e} Pohozaev={:.1e} iterations={} ({:.1}s)",
            r.classification,
            r.f_value,
            r.f_radial,
            r.theta_energy_fraction,
            r.el_residual,
            r.pohozaev_residual,
            r.iterations,
            start.elapsed().as_secs_f64()
        );
    }
    Ok(())
}
