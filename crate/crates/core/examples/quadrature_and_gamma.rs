//! Adaptive quadrature on finite and infinite domains, tanh-sinh for endpoint
//! singularities, and the Gamma/Beta/Bessel helpers.

use std::f64::consts::PI;

use cknmt::numerics::{bessel_i0, beta_integral, integrate_tanh_sinh, log_gamma, Domain, Integrator};

fn main() -> cknmt::Result<()> {
    let q = Integrator::new(1e-12);

    let gauss = q.integrate(|x| (-x * x).exp(), Domain::Whole)?;
    println!("∫ e^(-x²) dx        = {:.15} (√π = {:.15}, est. error {:.1e})", gauss.value, PI.sqrt(), gauss.error);

    let sech4 = q.integrate(|t| t.cosh().powi(-4), Domain::Whole)?;
    println!("∫ sech⁴ t dt        = {:.15} (4/3)", sech4.value);

    let kinked = q.integrate_breakpoints(|x| (x - 0.3).abs().sqrt(), &[0.0, 0.3, 1.0])?;
    let exact = (0.3f64.powf(1.5) + 0.7f64.powf(1.5)) * 2.0 / 3.0;
    println!("∫₀¹ |x-0.3|^½ dx    = {:.15} ({exact:.15}, {} panels)", kinked.value, kinked.panels);

    let singular = integrate_tanh_sinh(|s| 1.0 / (s * (2.0 - s)).sqrt(), 0.0, 1.0, 1e-13, 0.0)?;
    println!("∫₀¹ ds/√(s(2-s))    = {:.15} (π/2 = {:.15})", singular.value, PI / 2.0);

    println!("log Γ(10)           = {:.15} (log 9! = {:.15})", log_gamma(10.0)?, 362_880f64.ln());
    println!("Γ(3/2)Γ(5/2)/Γ(4)   = {:.15} (π/16 = {:.15})", beta_integral(1.5, 4.0)?, PI / 16.0);
    println!("I₀(1)               = {:.15}", bessel_i0(1.0));
    Ok(())
}
