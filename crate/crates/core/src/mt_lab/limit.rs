//! The unweighted circle inequality and the limit of the CKN functional
//! under the coupling `a = -ε(α+1)/(1-ε)`, `b = a + ε`, `p = 2/ε`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{check_alpha, plane_lebesgue, plane_measure, plane_pieces, PlaneFn, DEFAULT_REL_TOL};
use crate::closed_forms::{kappa_lambda, u_rad_derivatives, CknParams};
use crate::error::{Error, Result};
use crate::numerics::periodic_mean;

/// `(lhs, rhs)` of `(1/2π)∫e^{2v(cos θ, sin θ)} dθ ≤ exp((1/π)∫v(cos θ, sin θ) dθ)`.
pub fn circle_inequality_check<F: Fn([f64; 2]) -> f64>(v: F) -> Result<(f64, f64)> {
    let on_circle = |theta: f64| v([theta.cos(), theta.sin()]);
    let lhs = periodic_mean(|t| (2.0 * on_circle(t)).exp(), 1e-15)?;
    let rhs = (2.0 * periodic_mean(on_circle, 1e-15)?).exp();
    Ok((lhs, rhs))
}

/// `x₁² η(|x|)` with a smooth cutoff `η = 1` on the unit disc and `0`
/// outside the disc of radius two.
#[derive(Debug, Clone, Copy, Default)]
pub struct Witness;

/// `e^{-1/t}` for `t > 0` and its derivative.
fn smooth_step(t: f64) -> (f64, f64) {
    if t <= 0.0 {
        (0.0, 0.0)
    } else {
        let s = (-1.0 / t).exp();
        (s, s / (t * t))
    }
}

impl Witness {
    /// `(η(r), η'(r))`.
    pub fn cutoff(r: f64) -> (f64, f64) {
        let (a, da) = smooth_step(2.0 - r);
        let (b, db) = smooth_step(r - 1.0);
        let sum = a + b;
        (a / sum, (-da * b - a * db) / (sum * sum))
    }
}

impl PlaneFn for Witness {
    fn value(&self, x: [f64; 2]) -> f64 {
        let r = x[0].hypot(x[1]);
        x[0] * x[0] * Self::cutoff(r).0
    }

    fn gradient(&self, x: [f64; 2]) -> [f64; 2] {
        let r = x[0].hypot(x[1]);
        let (eta, deta) = Self::cutoff(r);
        if r == 0.0 {
            return [0.0, 0.0];
        }
        let k = x[0] * x[0] * deta / r;
        [2.0 * x[0] * eta + k * x[0], k * x[1]]
    }
}

/// Both sides of the CKN inequality along the limit coupling, with the
/// first-order coefficient of the energy expansion extracted by Richardson
/// extrapolation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionFit {
    pub alpha: f64,
    pub eps: Vec<f64>,
    /// `(1/λ_ε)∫|∇w_ε|²|x|^{-2a}` for `w_ε = (1 + εv)u_ε`.
    pub energy_ratio: Vec<f64>,
    /// `(energy_ratio - 1)/ε`.
    pub first_order: Vec<f64>,
    /// `(1/κ_ε)∫|1 + εv|^{2/ε} f_ε`, `f_ε = u_ε^{2/ε}|x|^{-2(a+ε)/ε}`.
    pub lp_ratio: Vec<f64>,
    /// Polynomial extrapolation of `first_order` to `ε = 0`.
    pub fitted_coefficient: f64,
    /// `2μ_α(v) + ‖∇v‖²/(4π(α+1))`.
    pub expected_coefficient: f64,
    pub relative_error: f64,
    /// `∫e^{2v} dμ_α`.
    pub lp_limit: f64,
    /// `|lp_ratio/lp_limit - 1|` per `ε`.
    pub lp_gaps: Vec<f64>,
    /// `log₂` of successive `first_order` difference ratios, when `ε` halves.
    pub observed_orders: Vec<f64>,
}

/// Value at zero of the polynomial through `(x_i, y_i)` (Neville).
fn extrapolate_to_zero(x: &[f64], y: &[f64]) -> f64 {
    let mut p = y.to_vec();
    let n = x.len();
    for k in 1..n {
        for i in 0..n - k {
            p[i] = (x[i + k] * p[i] - x[i] * p[i + 1]) / (x[i + k] - x[i]);
        }
    }
    p[0]
}

/// Evaluates both CKN ratios at each `ε` for the test function `v`.
pub fn ckn_to_mt_limit<V: PlaneFn + ?Sized>(alpha: f64, v: &V, eps_list: &[f64]) -> Result<ExpansionFit> {
    check_alpha(alpha)?;
    if eps_list.is_empty() {
        return Err(Error::domain("ε list is empty"));
    }
    if eps_list.iter().any(|&e| !(e > 0.0 && e < 0.2)) || eps_list.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::domain("ε list must be decreasing in (0, 0.2)"));
    }
    let tol = DEFAULT_REL_TOL;
    let mut energy_ratio = Vec::new();
    let mut first_order = Vec::new();
    let mut lp_ratio = Vec::new();
    for &eps in eps_list {
        let params = CknParams::limit_coupling(alpha, eps)?;
        let (a, b) = (params.a(), params.b());
        let p = 2.0 / eps;
        let profile = |r: f64| u_rad_derivatives(a, b, r).unwrap_or((0.0, 0.0, 0.0));
        let (_, lambda) = kappa_lambda(alpha, eps)?;
        // Only terms carrying v survive the subtraction of λ_ε, so the
        // slowly decaying |∇u_ε|²|x|^{-2a} tail never enters the quadrature.
        let excess = plane_lebesgue(
            |r, th| {
                let x = [r * th.cos(), r * th.sin()];
                let g = v.gradient(x);
                let vv = v.value(x);
                let (u, du, _) = profile(r);
                let radial = (x[0] * g[0] + x[1] * g[1]) / r;
                let t = (2.0 * eps * vv + eps * eps * vv * vv) * du * du
                    + 2.0 * eps * (1.0 + eps * vv) * u * du * radial
                    + eps * eps * u * u * (g[0] * g[0] + g[1] * g[1]);
                t * r.powf(-2.0 * a)
            },
            tol,
        )?;
        let d = 1.0 + excess / lambda;
        energy_ratio.push(d);
        first_order.push(excess / lambda / eps);

        let exponent = 2.0 * (alpha + eps) / (1.0 - eps);
        let density = |r: f64| {
            if r == 0.0 {
                return 0.0;
            }
            let s = r.powf(2.0 * (alpha + 1.0));
            (-2.0 / (1.0 - eps) * s.ln_1p() + exponent * r.ln()).exp()
        };
        let kappa = plane_lebesgue(|r, _| density(r), tol)?;
        let lp_excess = plane_lebesgue(
            |r, th| ((1.0 + eps * v.value([r * th.cos(), r * th.sin()])).abs().powf(p) - 1.0) * density(r),
            tol,
        )?;
        lp_ratio.push(1.0 + lp_excess / kappa);
    }
    let fitted_coefficient = extrapolate_to_zero(eps_list, &first_order);
    let pieces = plane_pieces(alpha, v, tol)?;
    let expected_coefficient = 2.0 * pieces.mean + pieces.dirichlet / (4.0 * PI * (alpha + 1.0));
    let lp_limit = plane_measure(alpha, |r, th| (2.0 * v.value([r * th.cos(), r * th.sin()])).exp(), tol)?;
    let lp_gaps = lp_ratio.iter().map(|l| (l / lp_limit - 1.0).abs()).collect();
    let observed_orders = first_order
        .windows(3)
        .map(|w| ((w[0] - w[1]) / (w[1] - w[2])).abs().log2())
        .collect();
    let relative_error = if expected_coefficient == 0.0 {
        fitted_coefficient.abs()
    } else {
        ((fitted_coefficient - expected_coefficient) / expected_coefficient).abs()
    };
    Ok(ExpansionFit {
        alpha,
        eps: eps_list.to_vec(),
        energy_ratio,
        first_order,
        lp_ratio,
        fitted_coefficient,
        expected_coefficient,
        relative_error,
        lp_limit,
        lp_gaps,
        observed_orders,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{Constant, CorpusFn, Term};
    use super::*;
    use crate::numerics::bessel_i0;

    #[test]
    fn witness_violates_the_circle_inequality() {
        let (lhs, rhs) = circle_inequality_check(|x| Witness.value(x)).unwrap();
        assert!((lhs / rhs - bessel_i0(1.0)).abs() < 1e-12, "{lhs} {rhs}");
        let (lhs, rhs) = circle_inequality_check(|x| x[0]).unwrap();
        assert!((lhs - bessel_i0(2.0)).abs() < 1e-12 && (rhs - 1.0).abs() < 1e-15);
        let (lhs, rhs) = circle_inequality_check(|_| 0.4).unwrap();
        assert!((lhs - rhs).abs() < 1e-15);
    }

    #[test]
    fn witness_cutoff_is_smooth() {
        assert_eq!(Witness::cutoff(0.5), (1.0, 0.0));
        assert_eq!(Witness::cutoff(2.5), (0.0, 0.0));
        let h = 1e-6;
        for r in [1.2, 1.5, 1.9] {
            let fd = (Witness::cutoff(r + h).0 - Witness::cutoff(r - h).0) / (2.0 * h);
            assert!((Witness::cutoff(r).1 - fd).abs() < 1e-7);
        }
    }

    #[test]
    fn zero_perturbation_is_exact() {
        let fit = ckn_to_mt_limit(0.0, &Constant(0.0), &[0.1, 0.05]).unwrap();
        assert!(fit.energy_ratio.iter().all(|&d| d == 1.0));
        assert!(fit.lp_ratio.iter().all(|&l| l == 1.0));
    }

    #[test]
    fn kappa_matches_closed_form() {
        for (alpha, eps) in [(0.0, 0.1), (1.0, 0.05)] {
            let kappa = kappa_lambda(alpha, eps).unwrap().0;
            let exponent = 2.0 * (alpha + eps) / (1.0 - eps);
            let kq = plane_lebesgue(
                |r, _| (-2.0 / (1.0 - eps) * r.powf(2.0 * (alpha + 1.0)).ln_1p()).exp() * r.powf(exponent),
                1e-11,
            )
            .unwrap();
            assert!((kq / kappa - 1.0).abs() < 1e-9, "κ: {kq} vs {kappa}");
        }
    }

    #[test]
    fn first_order_coefficient_alpha_zero() {
        let v = CorpusFn {
            id: 0,
            terms: vec![Term::Gaussian { center: [0.4, -0.2], width: 0.5, amplitude: 0.8 }],
        };
        let fit = ckn_to_mt_limit(0.0, &v, &[0.1, 0.05, 0.025]).unwrap();
        assert!(fit.relative_error < 0.05, "{fit:?}");
        let lp = ckn_to_mt_limit(0.0, &v, &[0.01]).unwrap();
        assert!(lp.lp_gaps[0] < 0.02, "{lp:?}");
    }
}
