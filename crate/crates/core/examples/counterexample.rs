//! The plain inequality fails for α > 0: scan the concentrating family v_ε
//! and fit the logarithmic growth of the exponential integral.

use cknmt::mt_lab::{log_slope_fit, violation_scan};

fn main() -> cknmt::Result<()> {
    let eps: Vec<f64> = (1..=10).map(|k| 10f64.powi(-k)).collect();
    for alpha in [0.5, 1.0, 5.0] {
        println!("α = {alpha}");
        for p in violation_scan(alpha, &eps)? {
            println!(
                "  ε={:.0e}: lhs {:+.6} rhs {:+.6} deficit {:+.3e}{}",
                p.eps,
                p.report.lhs_log,
                p.report.rhs_log,
                p.report.deficit,
                if p.report.violated { "  VIOLATED" } else { "" }
            );
        }
        let fit = log_slope_fit(alpha, &eps[4..])?;
        println!("  slope {:.5}, expected {:.5} (rel. error {:.2e})", fit.slope, fit.expected, fit.relative_error);
    }
    Ok(())
}
