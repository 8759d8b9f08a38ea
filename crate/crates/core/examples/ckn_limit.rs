//! The Moser-Trudinger inequality as a limit of CKN inequalities: the
//! first-order energy coefficient and the convergence of the Lp side.

use cknmt::mt_lab::{ckn_to_mt_limit, circle_inequality_check, corpus, PlaneFn, Witness};
use cknmt::numerics::bessel_i0;

fn main() -> cknmt::Result<()> {
    let eps = [0.1, 0.05, 0.025, 0.0125];
    let f = &corpus(3, 1)[0];
    for alpha in [0.0, 1.0] {
        let fit = ckn_to_mt_limit(alpha, f, &eps)?;
        println!(
            "α={alpha}: coefficient {:.6} vs {:.6} (rel. error {:.2e}); Lp gaps {:?}",
            fit.fitted_coefficient, fit.expected_coefficient, fit.relative_error, fit.lp_gaps
        );
    }

    let (lhs, rhs) = circle_inequality_check(|x| Witness.value(x))?;
    println!("circle: lhs/rhs = {:.12} (I₀(1) = {:.12})", lhs / rhs, bessel_i0(1.0));
    Ok(())
}
