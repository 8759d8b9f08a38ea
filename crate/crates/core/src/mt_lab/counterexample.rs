//! The piecewise-logarithmic family centred at `x̄ = (1, 0)`:
//! `v_ε = ½ log ε - log(ε + π|x - x̄|²)` on the unit disc about `x̄`, and
//! its boundary value outside.

use std::cell::RefCell;
use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use super::{check_alpha, MtForm, MtPieces, MtReport, PlaneFn, ABS_TOL};
use crate::error::{Error, Result};
use crate::geometry::Frame;
use crate::numerics::Integrator;

/// `k · v_ε` for an amplitude `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VEps {
    eps: f64,
    amplitude: f64,
}

/// Exact values that the quadrature must reproduce.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormPieces {
    pub eps: f64,
    /// `‖∇v_ε‖² = 4π log((ε+π)/ε) - 4π²/(ε+π)`.
    pub gradient_norm_sq: f64,
}

impl ClosedFormPieces {
    /// `lim_{ε→0} μ_α(e^{2v_ε}) = (α+1)/(4π)`.
    pub fn lhs_limit(alpha: f64) -> f64 {
        (alpha + 1.0) / (4.0 * PI)
    }
}

/// `v_ε` together with its closed-form pieces.
pub fn counterexample_v_eps(eps: f64) -> Result<(VEps, ClosedFormPieces)> {
    let v = VEps::new(eps)?;
    let gradient_norm_sq = 4.0 * PI * ((eps + PI) / eps).ln() - 4.0 * PI * PI / (eps + PI);
    Ok((v, ClosedFormPieces { eps, gradient_norm_sq }))
}

/// `ρ² = |x - x̄|²` from origin polar coordinates, without cancellation.
fn rho_sq(r: f64, theta: f64) -> f64 {
    let h = (0.5 * theta).sin();
    (r - 1.0) * (r - 1.0) + 4.0 * r * h * h
}

/// `√ε · 4^k` below `limit`: where the peak of width `√ε` needs resolving.
fn offsets(eps: f64, limit: f64) -> Vec<f64> {
    std::iter::successors(Some(eps.sqrt()), |d| Some(4.0 * d)).take_while(|&d| d < limit).collect()
}

/// `∫_a^b f` with interior breakpoints, collecting failures of a nested `f`.
fn nested<F: Fn(f64) -> Result<f64>>(f: F, a: f64, b: f64, interior: &[f64], rel_tol: f64) -> Result<f64> {
    let mut points = vec![a];
    points.extend(interior.iter().copied().filter(|&x| x > a && x < b));
    points.push(b);
    points.sort_by(f64::total_cmp);
    points.dedup();
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let g = |x: f64| match f(x) {
        Ok(v) => v,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            0.0
        }
    };
    let value = Integrator::new(rel_tol).with_abs_tol(ABS_TOL).integrate_breakpoints(g, &points)?.value;
    match failure.into_inner() {
        Some(e) => Err(e),
        None => Ok(value),
    }
}

impl VEps {
    pub fn new(eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::domain(format!("ε must lie in (0, 1), got {eps}")));
        }
        Ok(Self { eps, amplitude: 1.0 })
    }

    /// `k · v_ε`.
    pub fn scaled(self, k: f64) -> Self {
        Self { amplitude: self.amplitude * k, ..self }
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    /// Unscaled value from `ρ²`.
    fn base(&self, rho2: f64) -> f64 {
        0.5 * self.eps.ln() - (self.eps + PI * rho2.min(1.0)).ln()
    }

    /// `‖∇v_ε‖²` (unscaled) by quadrature in `ρ = |x - x̄|`.
    pub fn gradient_norm_sq(&self, rel_tol: f64) -> Result<f64> {
        let eps = self.eps;
        nested(
            |rho| {
                let g = 2.0 * PI * rho / (eps + PI * rho * rho);
                Ok(2.0 * PI * rho * g * g)
            },
            0.0,
            1.0,
            &offsets(eps, 1.0),
            rel_tol,
        )
    }

    /// `∫_disc g(r, θ) dμ_α`, in `s = r^{2(α+1)}` over the half disc `θ > 0`
    /// and doubled by symmetry.
    fn disc_measure<G: Fn(f64, f64) -> f64>(&self, alpha: f64, g: G, rel_tol: f64) -> Result<f64> {
        let c = alpha + 1.0;
        let offs = offsets(self.eps, 1.0);
        let mut radii = vec![1.0];
        for d in &offs {
            radii.push(1.0 - d);
            radii.push(1.0 + d);
        }
        let inner = |theta: f64| {
            let r_max = 2.0 * theta.cos();
            let s_points: Vec<f64> = radii.iter().filter(|&&r| r > 0.0 && r < r_max).map(|r| r.powf(2.0 * c)).collect();
            nested(
                |s| Ok(g(s.powf(0.5 / c), theta) / (PI * (1.0 + s) * (1.0 + s))),
                0.0,
                r_max.powf(2.0 * c),
                &s_points,
                rel_tol,
            )
        };
        nested(inner, 0.0, FRAC_PI_2, &offsets(self.eps, FRAC_PI_2), rel_tol)
    }

    /// `‖r⁻¹∂_θ v_ε‖²` (unscaled) over the disc, in origin polar coordinates.
    fn angular_energy(&self, rel_tol: f64) -> Result<f64> {
        let eps = self.eps;
        let offs = offsets(eps, 1.0);
        let mut radii = vec![1.0];
        for d in &offs {
            radii.push(1.0 - d);
            radii.push(1.0 + d);
        }
        let inner = |theta: f64| {
            let sin = theta.sin();
            let r_max = 2.0 * theta.cos();
            nested(
                |r| {
                    let q = eps + PI * rho_sq(r, theta);
                    // ∂_θ v = -2π r sin θ / q
                    Ok(4.0 * PI * PI * sin * sin / (q * q) * r)
                },
                0.0,
                r_max,
                &radii,
                rel_tol,
            )
        };
        Ok(2.0 * nested(inner, 0.0, FRAC_PI_2, &offsets(eps, FRAC_PI_2), rel_tol)?)
    }
}

impl PlaneFn for VEps {
    fn value(&self, x: [f64; 2]) -> f64 {
        let d = [x[0] - 1.0, x[1]];
        self.amplitude * self.base(d[0] * d[0] + d[1] * d[1])
    }

    fn gradient(&self, x: [f64; 2]) -> [f64; 2] {
        let d = [x[0] - 1.0, x[1]];
        let rho2 = d[0] * d[0] + d[1] * d[1];
        if rho2 >= 1.0 {
            return [0.0, 0.0];
        }
        let k = -2.0 * PI * self.amplitude / (self.eps + PI * rho2);
        [k * d[0], k * d[1]]
    }

    /// Splits the plane at the unit circle about `x̄`, where `v_ε` has a kink;
    /// outside it `v_ε` is constant and `μ_α` of the exterior is `1 - μ_α(disc)`.
    fn pieces(&self, alpha: f64, rel_tol: f64) -> Result<MtPieces> {
        check_alpha(alpha)?;
        let k = self.amplitude;
        let outside = self.base(1.0);
        let disc = self.disc_measure(alpha, |_, _| 1.0, rel_tol)?;
        let exterior = 1.0 - disc;
        let inner_mean = self.disc_measure(alpha, |r, th| self.base(rho_sq(r, th)), rel_tol)?;
        let mean = k * (inner_mean + outside * exterior);
        let inner_exp = self.disc_measure(alpha, |r, th| (k * self.base(rho_sq(r, th)) - mean).exp(), rel_tol)?;
        let lhs = inner_exp + (k * outside - mean).exp() * exterior;
        Ok(MtPieces {
            mean,
            lhs_log: lhs.ln(),
            dirichlet: k * k * self.gradient_norm_sq(rel_tol)?,
            angular: k * k * self.angular_energy(rel_tol)?,
        })
    }
}

/// One point of a scan over `ε`: the plain inequality applied to `2v_ε`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub eps: f64,
    /// `μ_α(e^{2v_ε})`.
    pub exp_integral: f64,
    /// `‖∇v_ε‖²/(4π(α+1)) + 2μ_α(v_ε)`.
    pub rhs_expression: f64,
    pub report: MtReport,
}

/// Evaluates `2v_ε` in the plain form for each `ε`.
pub fn violation_scan(alpha: f64, eps_list: &[f64]) -> Result<Vec<ScanPoint>> {
    check_alpha(alpha)?;
    eps_list
        .iter()
        .map(|&eps| {
            let v = VEps::new(eps)?.scaled(2.0);
            let pieces = v.pieces(alpha, 1e-10)?;
            let report = MtReport::from_pieces(alpha, Frame::Plane, MtForm::Plain, pieces);
            Ok(ScanPoint {
                eps,
                exp_integral: (report.lhs_log + report.mean).exp(),
                rhs_expression: report.rhs_log + report.mean,
                report,
            })
        })
        .collect()
}

/// Least-squares slope of the right-hand side against `log ε`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlopeFit {
    pub alpha: f64,
    pub points: Vec<ScanPoint>,
    pub slope: f64,
    /// `α/(1+α)`.
    pub expected: f64,
    pub relative_error: f64,
}

pub fn log_slope_fit(alpha: f64, eps_list: &[f64]) -> Result<SlopeFit> {
    if eps_list.len() < 2 {
        return Err(Error::domain("a slope fit needs at least two values of ε"));
    }
    let points = violation_scan(alpha, eps_list)?;
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.eps.ln()).collect();
    let xm = xs.iter().sum::<f64>() / n;
    let ym = points.iter().map(|p| p.rhs_expression).sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&points).map(|(x, p)| (x - xm) * (p.rhs_expression - ym)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - xm) * (x - xm)).sum();
    let slope = sxy / sxx;
    let expected = alpha / (1.0 + alpha);
    Ok(SlopeFit { alpha, points, slope, expected, relative_error: ((slope - expected) / expected).abs() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gradient_norm_matches_closed_form() {
        for eps in [0.5, 1e-2, 1e-4, 1e-6] {
            let (v, exact) = counterexample_v_eps(eps).unwrap();
            let q = v.gradient_norm_sq(1e-11).unwrap();
            assert!((q / exact.gradient_norm_sq - 1.0).abs() < 1e-9, "ε={eps}: {q} vs {exact:?}");
        }
    }

    #[test]
    fn closed_form_at_eps_pi_argument() {
        // The closed form evaluated at ε = π.
        let g = 4.0 * PI * ((PI + PI) / PI).ln() - 4.0 * PI * PI / (PI + PI);
        assert!((g - (4.0 * PI * 2f64.ln() - 2.0 * PI)).abs() < 1e-14);
        assert!(counterexample_v_eps(PI).is_err());
        assert!(counterexample_v_eps(0.0).is_err());
    }

    #[test]
    fn lhs_tends_to_its_limit() {
        let p = &violation_scan(1.0, &[1e-6]).unwrap()[0];
        let limit = ClosedFormPieces::lhs_limit(1.0);
        assert!((p.exp_integral / limit - 1.0).abs() < 0.05, "{p:?}");
    }

    #[test]
    fn violated_for_alpha_one() {
        let p = &violation_scan(1.0, &[1e-4]).unwrap()[0];
        assert!(p.report.violated, "{p:?}");
        let s = &violation_scan(1.0, &[1e-4]).unwrap()[0];
        assert_eq!(p, s);
    }

    #[test]
    fn strengthened_form_survives() {
        let v = VEps::new(1e-4).unwrap().scaled(2.0);
        let r = super::super::mt_check(1.0, &v, MtForm::Strengthened).unwrap();
        assert!(!r.violated, "{r:?}");
    }

    #[test]
    fn disc_mass_for_alpha_zero() {
        // Σ_0 maps the disc to a spherical cap at height 1/√5 from the centre.
        let v = VEps::new(0.3).unwrap();
        let disc = v.disc_measure(0.0, |_, _| 1.0, 1e-11).unwrap();
        assert!((disc - 0.5 * (1.0 - 5f64.sqrt().recip())).abs() < 1e-10, "{disc}");
    }

    #[test]
    fn slope_for_alpha_one() {
        let fit = log_slope_fit(1.0, &[1e-3, 1e-4, 1e-5, 1e-6]).unwrap();
        assert!(fit.relative_error < 0.02, "{fit:?}");
    }
}
