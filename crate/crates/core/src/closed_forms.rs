//! Explicit formulas: the symmetry-breaking curve, radial extremals on the
//! plane and the cylinder, their norms, the limit integrals of the
//! CKN-to-Moser-Trudinger coupling, the first transverse eigenvalue, the
//! Kelvin map and the Liouville profile.
//!
//! Formulas that depend on `a` only through the cylinder problem use `|a|`;
//! negative `a` is reduced to positive `a` by [`kelvin_map`].

use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{log_gamma, Domain, Integrator};

/// A consistent CKN parameter set.
///
/// `p = 2/(b-a)`, `ε = b - a = 2/p` and `1 + α = (p-2)|a|/2` always hold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CknParams {
    a: f64,
    b: f64,
    p: f64,
    alpha: f64,
    eps: f64,
}

fn finite(name: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be finite, got {x}")))
    }
}

impl CknParams {
    /// CKN mode: `a ≠ 0`, `a < b ≤ a + 1`.
    pub fn from_ab(a: f64, b: f64) -> Result<Self> {
        finite("a", a)?;
        finite("b", b)?;
        if a == 0.0 {
            return Err(Error::domain("a must be non-zero"));
        }
        if !(b > a && b <= a + 1.0) {
            return Err(Error::domain(format!("need a < b ≤ a+1, got a={a}, b={b}")));
        }
        Ok(Self::complete(a, b - a))
    }

    /// Cylinder mode: `a ≠ 0`, `p > 2`, with `b = a + 2/p`.
    pub fn from_ap(a: f64, p: f64) -> Result<Self> {
        finite("a", a)?;
        finite("p", p)?;
        if a == 0.0 {
            return Err(Error::domain("a must be non-zero"));
        }
        if !(p > 2.0) {
            return Err(Error::domain(format!("p must exceed 2, got {p}")));
        }
        Ok(Self::complete(a, 2.0 / p))
    }

    /// The coupling `a = -ε(α+1)/(1-ε)`, `b = a + ε`, `p = 2/ε`.
    pub fn limit_coupling(alpha: f64, eps: f64) -> Result<Self> {
        finite("α", alpha)?;
        if !(alpha > -1.0) {
            return Err(Error::domain(format!("α must exceed -1, got {alpha}")));
        }
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::domain(format!("ε must lie in (0,1), got {eps}")));
        }
        let a = -eps * (alpha + 1.0) / (1.0 - eps);
        let mut out = Self::complete(a, eps);
        out.alpha = alpha;
        Ok(out)
    }

    fn complete(a: f64, eps: f64) -> Self {
        let p = 2.0 / eps;
        Self { a, b: a + eps, p, alpha: 0.5 * (p - 2.0) * a.abs() - 1.0, eps }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// `b - h(a)`: negative strictly inside the symmetry-breaking region.
    pub fn margin(&self) -> f64 {
        symmetry_margin(self.a, self.b)
    }
}

/// `h(a) = a + |a|/√(1+a²)`.
pub fn h_curve(a: f64) -> Result<f64> {
    finite("a", a)?;
    if a == 0.0 {
        return Err(Error::domain("h(a) is defined for a ≠ 0"));
    }
    Ok(a + a.abs() / a.hypot(1.0))
}

/// `b - h(a)`, arranged to avoid cancellation when `b` is close to `a`.
pub fn symmetry_margin(a: f64, b: f64) -> f64 {
    (b - a) - a.abs() / a.hypot(1.0)
}

/// `ln cosh x` without overflow.
pub fn log_cosh(x: f64) -> f64 {
    let y = x.abs();
    y + (-2.0 * y).exp().ln_1p() - LN_2
}

/// Exponents `(m, q)` with `u_rad(r) = (1 + r^m)^{-q}`.
fn u_rad_exponents(a: f64, b: f64) -> Result<(f64, f64)> {
    finite("a", a)?;
    finite("b", b)?;
    if a == 0.0 {
        return Err(Error::domain("a must be non-zero"));
    }
    if !(b > a) {
        return Err(Error::domain(format!("need b > a, got a={a}, b={b}")));
    }
    if b >= a + 1.0 {
        return Err(Error::domain(format!("the radial profile degenerates for b ≥ a+1 (a={a}, b={b})")));
    }
    let gap = 1.0 + a - b;
    Ok((-2.0 * a * gap / (b - a), (b - a) / gap))
}

/// Radial extremal `(1 + r^{-2a(1+a-b)/(b-a)})^{-(b-a)/(1+a-b)}`.
///
/// The value lies in `(0, 1)`. For `a > 0` it increases from `0` at the
/// origin to its supremum `1` at infinity; for `a < 0` it decreases from `1`
/// at the origin to `0` at infinity.
pub fn u_rad(a: f64, b: f64, r: f64) -> Result<f64> {
    let (m, q) = u_rad_exponents(a, b)?;
    if !(r > 0.0) {
        return Err(Error::domain(format!("r must be positive, got {r}")));
    }
    Ok((-q * log1p_pow(r, m)).exp())
}

/// `ln(1 + r^m)` for `r > 0` without overflow.
fn log1p_pow(r: f64, m: f64) -> f64 {
    let l = m * r.ln();
    if l > 0.0 {
        l + (-l).exp().ln_1p()
    } else {
        l.exp().ln_1p()
    }
}

/// `(u, u', u'')` of [`u_rad`] in `r`.
pub fn u_rad_derivatives(a: f64, b: f64, r: f64) -> Result<(f64, f64, f64)> {
    let u = u_rad(a, b, r)?;
    let (m, q) = u_rad_exponents(a, b)?;
    // x = r^m/(1 + r^m), computed without overflow
    let l = m * r.ln();
    let x = if l > 0.0 { 1.0 / (1.0 + (-l).exp()) } else { l.exp() / (1.0 + l.exp()) };
    let d1 = -q * m * x * u / r;
    let d2 = -q * m * u / (r * r) * x * ((m - 1.0) - (q + 1.0) * m * x);
    Ok((u, d1, d2))
}

/// `-∇·(|x|^{-2a}∇u)` for `u = u_rad`, in the cancellation-free form
/// `-2a m (1+q) r^{-2a-2} u x (1-x)` with `x = r^m/(1+r^m)`.
pub fn u_rad_weighted_laplacian(a: f64, b: f64, r: f64) -> Result<f64> {
    let u = u_rad(a, b, r)?;
    let (m, q) = u_rad_exponents(a, b)?;
    let l = m * r.ln();
    let (x, y) = if l > 0.0 {
        let e = (-l).exp();
        (1.0 / (1.0 + e), e / (1.0 + e))
    } else {
        let e = l.exp();
        (e / (1.0 + e), 1.0 / (1.0 + e))
    };
    Ok(-2.0 * a * m * (1.0 + q) * r.powf(-2.0 * a - 2.0) * u * x * y)
}

/// Relative residual of `-∇·(|x|^{-2a}∇u) = (4a²/ε) u^{2/ε-1} |x|^{2(α-a)}`
/// for `u = u_rad` under the limit coupling.
pub fn limit_coupling_el_residual(params: &CknParams, r: f64) -> Result<f64> {
    let (a, eps, alpha) = (params.a, params.eps, params.alpha);
    let u = u_rad(a, params.b, r)?;
    let lhs = u_rad_weighted_laplacian(a, params.b, r)?;
    let rhs = 4.0 * a * a / eps * u.powf(2.0 / eps - 1.0) * r.powf(2.0 * (alpha - a));
    Ok((lhs - rhs).abs() / lhs.abs().max(rhs.abs()))
}

/// The θ-independent cylinder extremal
/// `w*(t) = (a²p/2)^{1/(p-2)} cosh((p-2)at/2)^{-2/(p-2)}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WStar {
    a: f64,
    p: f64,
}

impl WStar {
    pub fn new(a: f64, p: f64) -> Result<Self> {
        let params = CknParams::from_ap(a, p)?;
        Ok(Self { a: params.a.abs(), p: params.p })
    }

    /// `w*(0) = (a²p/2)^{1/(p-2)}`.
    pub fn peak(&self) -> f64 {
        (0.5 * self.a * self.a * self.p).powf(1.0 / (self.p - 2.0))
    }

    /// Decay rate `k = (p-2)|a|/2` of the cosh.
    pub fn rate(&self) -> f64 {
        0.5 * (self.p - 2.0) * self.a
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.peak() * (-2.0 / (self.p - 2.0) * log_cosh(self.rate() * t)).exp()
    }

    /// `w*'(t)`.
    pub fn derivative(&self, t: f64) -> f64 {
        -2.0 / (self.p - 2.0) * self.rate() * (self.rate() * t).tanh() * self.eval(t)
    }

    /// `∫_ℝ w*(t)^p dt` by adaptive quadrature.
    pub fn line_integral_quadrature(&self, rel_tol: f64) -> Result<f64> {
        let half = Integrator::new(rel_tol)
            .with_abs_tol(1e-300)
            .integrate(|t| self.eval(t).powf(self.p), Domain::UpperInfinite(0.0))?;
        Ok(2.0 * half.value)
    }
}

/// `w*(t)` for `a ≠ 0`, `p > 2`.
pub fn w_star(a: f64, p: f64, t: f64) -> Result<f64> {
    Ok(WStar::new(a, p)?.eval(t))
}

/// `c_p = ∫_0^1 (1 + s^{(p-2)/p})^{-2p/(p-2)} ds`, by quadrature in `x = s^{(p-2)/p}`.
pub fn c_p(p: f64) -> Result<f64> {
    finite("p", p)?;
    if !(p > 2.0) {
        return Err(Error::domain(format!("p must exceed 2, got {p}")));
    }
    let e = (p - 2.0) / p;
    let f = |x: f64| {
        if x <= 0.0 {
            return 0.0;
        }
        ((1.0 / e - 1.0) * x.ln() - 2.0 / e * x.ln_1p()).exp()
    };
    let est = Integrator::new(1e-13).with_abs_tol(1e-300).integrate(f, Domain::Finite(0.0, 1.0))?;
    Ok(est.value / e)
}

/// `c_p` through Gamma functions: `p/(2(p-2)) Γ(p/(p-2))² / Γ(2p/(p-2))`.
pub fn c_p_gamma(p: f64) -> Result<f64> {
    if !(p > 2.0) {
        return Err(Error::domain(format!("p must exceed 2, got {p}")));
    }
    let x = p / (p - 2.0);
    Ok(0.5 * x * (2.0 * log_gamma(x)? - log_gamma(2.0 * x)?).exp())
}

/// `‖w*‖^p_{L^p(ℝ×S¹)} = 4π (2|a|)^{p/(p-2)} (|a|p)^{2/(p-2)} c_p`.
pub fn w_star_lp_norm(a: f64, p: f64) -> Result<f64> {
    let w = WStar::new(a, p)?;
    let a = w.a;
    Ok(4.0 * PI * (2.0 * a).powf(p / (p - 2.0)) * (a * p).powf(2.0 / (p - 2.0)) * c_p(p)?)
}

/// `2π ∫_ℝ w*^p dt` by direct quadrature.
pub fn w_star_lp_norm_quadrature(a: f64, p: f64) -> Result<f64> {
    Ok(2.0 * PI * WStar::new(a, p)?.line_integral_quadrature(1e-13)?)
}

/// `F(w*) = ‖w*‖^{p-2}_{L^p}` from the closed form: for the Euler-Lagrange
/// solution `‖w*‖²_{H} = ‖w*‖^p_p`, so the quotient reduces to this power.
pub fn radial_quotient(a: f64, p: f64) -> Result<f64> {
    Ok(w_star_lp_norm(a, p)?.powf((p - 2.0) / p))
}

/// `(κ_ε, λ_ε)` for the limit coupling.
///
/// `κ_ε = π/(α+1) ∫_0^∞ s^{ε/(1-ε)} (1+s)^{-2/(1-ε)} ds` by quadrature and
/// `λ_ε = 4π|a| Γ((2-ε)/(1-ε)) Γ(1/(1-ε)) / Γ(2/(1-ε))`.
pub fn kappa_lambda(alpha: f64, eps: f64) -> Result<(f64, f64)> {
    let params = CknParams::limit_coupling(alpha, eps)?;
    let x = 1.0 / (1.0 - eps);
    let f = |s: f64| {
        if s <= 0.0 {
            return 0.0;
        }
        (eps * x * s.ln() - 2.0 * x * s.ln_1p()).exp()
    };
    let kappa_int = half_line_integral(f, 1e-13)?;
    let kappa = PI / (alpha + 1.0) * kappa_int;
    let lambda = 4.0
        * PI
        * params.a.abs()
        * (log_gamma((2.0 - eps) * x)? + log_gamma(x)? - log_gamma(2.0 * x)?).exp();
    Ok((kappa, lambda))
}

/// `∫_0^∞ f`, split at one.
pub(crate) fn half_line_integral<F: Fn(f64) -> f64>(f: F, rel_tol: f64) -> Result<f64> {
    let integrator = Integrator::new(rel_tol).with_abs_tol(1e-300);
    Ok(integrator.integrate(&f, Domain::Finite(0.0, 1.0))?.value + integrator.integrate(&f, Domain::UpperInfinite(1.0))?.value)
}

/// `μ₁ = a² + 1 - (ap/2)²`, the infimum of the linearized quadratic form on
/// functions with zero θ-mean.
pub fn mu1(a: f64, p: f64) -> Result<f64> {
    let params = CknParams::from_ap(a, p)?;
    let a = params.a;
    let half = 0.5 * a * p;
    Ok(a * a + 1.0 - half * half)
}

/// `|a|p > 2√(1+a²)`: the radial extremal is not a local minimizer.
pub fn breaks_symmetry(a: f64, p: f64) -> Result<bool> {
    let params = CknParams::from_ap(a, p)?;
    Ok(params.a.abs() * params.p > 2.0 * params.a.hypot(1.0))
}

/// Kelvin transformation `(a, b) ↦ (-a, b - 2a)`, which preserves `p` and the
/// optimal constant. It is its own inverse.
pub fn kelvin_map(a: f64, b: f64) -> Result<(f64, f64)> {
    CknParams::from_ab(a, b)?;
    Ok((-a, b - 2.0 * a))
}

/// Liouville profile `V(t) = -2 ln cosh((α+1)t)`, solving `-V'' = 2(α+1)² e^V`.
pub fn liouville_profile(alpha: f64, t: f64) -> Result<f64> {
    if !(alpha > -1.0 && alpha < 0.0) {
        return Err(Error::domain(format!("the Liouville profile is used for α ∈ (-1,0), got {alpha}")));
    }
    Ok(-2.0 * log_cosh((alpha + 1.0) * t))
}
