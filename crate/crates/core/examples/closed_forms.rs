//! Closed-form quantities across the (a, p) plane: the symmetry-breaking
//! margin, the radial quotient, the Lp norm of the cylinder profile and the
//! lowest non-radial eigenvalue.

use cknmt::closed_forms::{
    breaks_symmetry, c_p, c_p_gamma, h_curve, mu1, radial_quotient, w_star_lp_norm, w_star_lp_norm_quadrature,
    CknParams,
};

fn main() -> cknmt::Result<()> {
    println!("c_4 = {:.15} (Gamma form {:.15})", c_p(4.0)?, c_p_gamma(4.0)?);
    println!("{:>5} {:>5} {:>9} {:>9} {:>8} {:>14} {:>10} {:>10}", "a", "p", "b", "h(a)", "breaks", "F_radial", "μ₁", "‖w*‖ err");
    for (a, p) in [(1.0, 3.0), (1.0, 4.0), (0.1, 10.0), (2.0, 6.0), (-0.5, 4.0)] {
        let params = CknParams::from_ap(a, p)?;
        let closed = w_star_lp_norm(a, p)?;
        let quad = w_star_lp_norm_quadrature(a, p)?;
        println!(
            "{a:>5} {p:>5} {:>9.5} {:>9.5} {:>8} {:>14.10} {:>10.5} {:>10.1e}",
            params.b(),
            h_curve(a)?,
            breaks_symmetry(a, p)?,
            radial_quotient(a, p)?,
            mu1(a, p)?,
            ((closed - quad) / closed).abs()
        );
    }
    Ok(())
}
