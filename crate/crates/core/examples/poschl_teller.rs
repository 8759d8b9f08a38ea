//! Ground states of `-d²/dt² - β sech²(κt)` against the exact value
//! `-κ²s²`, `s = (√(1 + 4β/κ²) - 1)/2`.

use cknmt::numerics::{solve_schrodinger_ground, EigenGrid};

fn main() -> cknmt::Result<()> {
    println!("{:>6} {:>8} {:>22} {:>22} {:>10}", "κ", "β", "numeric", "exact", "rel.err");
    for (k, beta) in [(1.0f64, 2.0f64), (1.0, 6.0), (0.5, 0.3), (2.0, 30.0), (0.1, 0.05)] {
        let s = 0.5 * ((1.0 + 4.0 * beta / (k * k)).sqrt() - 1.0);
        let exact = -(k * s) * (k * s);
        let r = solve_schrodinger_ground(k, beta, EigenGrid::default())?;
        println!(
            "{k:>6} {beta:>8} {:>22.15} {exact:>22.15} {:>10.2e}",
            r.eigenvalue,
            ((r.eigenvalue - exact) / exact).abs()
        );
    }
    Ok(())
}
