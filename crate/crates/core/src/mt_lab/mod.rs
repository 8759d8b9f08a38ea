//! The weighted Moser-Trudinger inequality
//!
//! ```text
//! log ∫ e^{v - ∫v dμ_α} dμ_α  ≤  (‖∇v‖² [+ α(α+2)‖r⁻¹∂_θ v‖²]) / (16π(α+1))
//! ```
//!
//! evaluated by quadrature in the plane, on the sphere through the dilated
//! stereographic projection `Σ_α`, and on the cylinder `t = log r`.

mod corpus;
mod counterexample;
mod limit;

pub use corpus::{corpus, radial_corpus, CorpusFn, Term};
pub use counterexample::{
    counterexample_v_eps, log_slope_fit, violation_scan, ClosedFormPieces, ScanPoint, SlopeFit, VEps,
};
pub use limit::{ckn_to_mt_limit, circle_inequality_check, ExpansionFit, Witness};

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{plane_density, with_angle, CylinderPoint, Frame, SphereFunction, SpherePoint};
use crate::numerics::{integrate_tanh_sinh, Domain, Integrator};

/// Relative tolerance used by the `mt_check*` entry points.
pub const DEFAULT_REL_TOL: f64 = 1e-11;

/// Absolute floor for panel integrals whose value is tiny or cancels.
const ABS_TOL: f64 = 1e-15;

/// Radial panel breakpoints shared by all three frames.
pub(crate) const RADIAL_BREAKS: [f64; 7] = [0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0];

/// Which right-hand side to test against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MtForm {
    /// Dirichlet energy only.
    Plain,
    /// Adds `α(α+2)‖r⁻¹∂_θ v‖²`; holds for every `α > -1`.
    Strengthened,
}

impl FromStr for MtForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "plain" => Ok(MtForm::Plain),
            "strengthened" => Ok(MtForm::Strengthened),
            _ => Err(Error::domain(format!("unknown form {s:?}; expected plain or strengthened"))),
        }
    }
}

impl fmt::Display for MtForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            MtForm::Plain => "plain",
            MtForm::Strengthened => "strengthened",
        })
    }
}

/// A differentiable function on the plane.
pub trait PlaneFn {
    fn value(&self, x: [f64; 2]) -> f64;
    fn gradient(&self, x: [f64; 2]) -> [f64; 2];

    /// Quadrature of the inequality's ingredients. Functions with features
    /// the generic radial panels would miss override this.
    fn pieces(&self, alpha: f64, rel_tol: f64) -> Result<MtPieces> {
        plane_pieces(alpha, self, rel_tol)
    }
}

/// A differentiable function on the cylinder `ℝ × S¹`.
pub trait CylinderFn {
    fn value(&self, p: CylinderPoint) -> f64;
    /// `(∂_t w, ∂_θ w)`.
    fn gradient(&self, p: CylinderPoint) -> (f64, f64);
}

/// [`PlaneFn`] from a pair of closures.
pub struct PlaneClosure<V, G> {
    pub value: V,
    pub gradient: G,
}

impl<V, G> PlaneFn for PlaneClosure<V, G>
where
    V: Fn([f64; 2]) -> f64,
    G: Fn([f64; 2]) -> [f64; 2],
{
    fn value(&self, x: [f64; 2]) -> f64 {
        (self.value)(x)
    }

    fn gradient(&self, x: [f64; 2]) -> [f64; 2] {
        (self.gradient)(x)
    }
}

/// [`CylinderFn`] from a pair of closures.
pub struct CylinderClosure<V, G> {
    pub value: V,
    pub gradient: G,
}

impl<V, G> CylinderFn for CylinderClosure<V, G>
where
    V: Fn(CylinderPoint) -> f64,
    G: Fn(CylinderPoint) -> (f64, f64),
{
    fn value(&self, p: CylinderPoint) -> f64 {
        (self.value)(p)
    }

    fn gradient(&self, p: CylinderPoint) -> (f64, f64) {
        (self.gradient)(p)
    }
}

/// The constant function, usable in every frame.
#[derive(Debug, Clone, Copy)]
pub struct Constant(pub f64);

impl PlaneFn for Constant {
    fn value(&self, _: [f64; 2]) -> f64 {
        self.0
    }

    fn gradient(&self, _: [f64; 2]) -> [f64; 2] {
        [0.0, 0.0]
    }
}

impl CylinderFn for Constant {
    fn value(&self, _: CylinderPoint) -> f64 {
        self.0
    }

    fn gradient(&self, _: CylinderPoint) -> (f64, f64) {
        (0.0, 0.0)
    }
}

impl SphereFunction for Constant {
    fn value(&self, _: SpherePoint) -> f64 {
        self.0
    }

    fn gradient(&self, _: SpherePoint) -> (f64, f64) {
        (0.0, 0.0)
    }
}

/// `(x·∇v, x∧∇v)`, the cylinder derivatives `(∂_t, ∂_θ)` of `v(e^{t+iθ})`.
fn radial_angular(x: [f64; 2], g: [f64; 2]) -> (f64, f64) {
    (x[0] * g[0] + x[1] * g[1], x[0] * g[1] - x[1] * g[0])
}

/// Radii beyond this are treated as this, keeping `x · ∇v` finite far out.
const R_MAX: f64 = 1e150;

/// A plane function seen on the sphere, `u = v ∘ Σ_α⁻¹`.
pub struct OnSphere<'a, V: ?Sized> {
    v: &'a V,
    alpha: f64,
}

impl<'a, V: PlaneFn + ?Sized> OnSphere<'a, V> {
    pub fn new(alpha: f64, v: &'a V) -> Self {
        Self { v, alpha }
    }

    fn eval(&self, r: f64, theta: f64, cos_phi: f64) -> (f64, f64, f64) {
        let r = r.min(R_MAX);
        let x = [r * theta.cos(), r * theta.sin()];
        let (wt, wth) = radial_angular(x, self.v.gradient(x));
        (self.v.value(x), wt / ((self.alpha + 1.0) * cos_phi), wth)
    }
}

impl<V: PlaneFn + ?Sized> SphereFunction for OnSphere<'_, V> {
    fn value(&self, p: SpherePoint) -> f64 {
        let r = (p.phi / 2.0 + PI / 4.0).tan().powf(1.0 / (self.alpha + 1.0)).min(R_MAX);
        self.v.value([r * p.theta.cos(), r * p.theta.sin()])
    }

    fn gradient(&self, p: SpherePoint) -> (f64, f64) {
        let r = (p.phi / 2.0 + PI / 4.0).tan().powf(1.0 / (self.alpha + 1.0));
        let (_, dp, dt) = self.eval(r, p.theta, p.phi.cos());
        (dp, dt)
    }

    fn near_pole(&self, south: bool, psi: f64, theta: f64) -> (f64, f64, f64) {
        let e = if south { 1.0 } else { -1.0 } / (self.alpha + 1.0);
        self.eval((psi / 2.0).tan().powf(e), theta, psi.sin())
    }
}

/// A plane function seen on the cylinder, `w(t, θ) = v(e^t e^{iθ})`.
pub struct OnCylinder<'a, V: ?Sized>(pub &'a V);

impl<V: PlaneFn + ?Sized> CylinderFn for OnCylinder<'_, V> {
    fn value(&self, p: CylinderPoint) -> f64 {
        let r = p.t.exp().min(R_MAX);
        self.0.value([r * p.theta.cos(), r * p.theta.sin()])
    }

    fn gradient(&self, p: CylinderPoint) -> (f64, f64) {
        let r = p.t.exp().min(R_MAX);
        let x = [r * p.theta.cos(), r * p.theta.sin()];
        radial_angular(x, self.0.gradient(x))
    }
}

/// A cylinder function seen on the plane, `v(r e^{iθ}) = w(log r, θ)`.
pub struct OnPlane<'a, W: ?Sized>(pub &'a W);

impl<W: CylinderFn + ?Sized> PlaneFn for OnPlane<'_, W> {
    fn value(&self, x: [f64; 2]) -> f64 {
        self.0.value(to_cylinder(x))
    }

    fn gradient(&self, x: [f64; 2]) -> [f64; 2] {
        let p = to_cylinder(x);
        let (wt, wth) = self.0.gradient(p);
        let r2 = x[0] * x[0] + x[1] * x[1];
        [(x[0] * wt - x[1] * wth) / r2, (x[1] * wt + x[0] * wth) / r2]
    }
}

fn to_cylinder(x: [f64; 2]) -> CylinderPoint {
    CylinderPoint { t: 0.5 * (x[0] * x[0] + x[1] * x[1]).ln(), theta: x[1].atan2(x[0]) }
}

/// The ingredients of both sides, in plane units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MtPieces {
    /// `∫ v dμ_α`.
    pub mean: f64,
    /// `log ∫ e^{v - ∫v dμ_α} dμ_α`.
    pub lhs_log: f64,
    /// `‖∇v‖²` over `ℝ²`.
    pub dirichlet: f64,
    /// `‖r⁻¹∂_θ v‖²` over `ℝ²`.
    pub angular: f64,
}

/// Both sides of the inequality for one function, form and frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MtReport {
    pub alpha: f64,
    pub frame: Frame,
    pub form: MtForm,
    pub mean: f64,
    pub lhs_log: f64,
    pub dirichlet: f64,
    pub angular: f64,
    pub rhs_log: f64,
    /// `rhs_log - lhs_log`.
    pub deficit: f64,
    /// `deficit < -1e-8 · max(1, |rhs_log|)`.
    pub violated: bool,
}

impl MtReport {
    pub fn from_pieces(alpha: f64, frame: Frame, form: MtForm, pieces: MtPieces) -> Self {
        let energy = match form {
            MtForm::Plain => pieces.dirichlet,
            MtForm::Strengthened => pieces.dirichlet + alpha * (alpha + 2.0) * pieces.angular,
        };
        let rhs_log = energy / (16.0 * PI * (alpha + 1.0));
        let deficit = rhs_log - pieces.lhs_log;
        Self {
            alpha,
            frame,
            form,
            mean: pieces.mean,
            lhs_log: pieces.lhs_log,
            dirichlet: pieces.dirichlet,
            angular: pieces.angular,
            rhs_log,
            deficit,
            violated: deficit < -1e-8 * rhs_log.abs().max(1.0),
        }
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > -1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("α must be finite and exceed -1, got {alpha}")))
    }
}

/// The inequality for a plane function, evaluated in the plane.
pub fn mt_check<V: PlaneFn + ?Sized>(alpha: f64, v: &V, form: MtForm) -> Result<MtReport> {
    check_alpha(alpha)?;
    Ok(MtReport::from_pieces(alpha, Frame::Plane, form, v.pieces(alpha, DEFAULT_REL_TOL)?))
}

/// The inequality for a plane function, transported to `frame` and
/// evaluated there.
pub fn mt_check_in<V: PlaneFn + ?Sized>(alpha: f64, v: &V, form: MtForm, frame: Frame) -> Result<MtReport> {
    match frame {
        Frame::Plane => mt_check(alpha, v, form),
        Frame::Sphere => mt_sphere_check(alpha, &OnSphere::new(alpha, v), form),
        Frame::Cylinder => mt_cylinder_check(alpha, &OnCylinder(v), form),
    }
}

/// The inequality for `u` on the sphere carrying `Σ_α`'s pullback geometry.
pub fn mt_sphere_check<U: SphereFunction + ?Sized>(alpha: f64, u: &U, form: MtForm) -> Result<MtReport> {
    check_alpha(alpha)?;
    Ok(MtReport::from_pieces(alpha, Frame::Sphere, form, sphere_pieces(alpha, u, DEFAULT_REL_TOL)?))
}

/// The inequality on the cylinder against `ν_α = (α+1)/(4π) sech²((α+1)t) dt dθ`.
pub fn mt_cylinder_check<W: CylinderFn + ?Sized>(alpha: f64, w: &W, form: MtForm) -> Result<MtReport> {
    check_alpha(alpha)?;
    Ok(MtReport::from_pieces(alpha, Frame::Cylinder, form, cylinder_pieces(alpha, w, DEFAULT_REL_TOL)?))
}

/// One function evaluated in all three frames.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameComparison {
    pub plane: MtReport,
    pub sphere: MtReport,
    pub cylinder: MtReport,
    /// Largest discrepancy in `mean`, `lhs_log` or `rhs_log` against the
    /// plane value, relative to `max(1, |plane value|)`.
    pub max_discrepancy: f64,
}

pub fn frame_transport<V: PlaneFn + ?Sized>(alpha: f64, v: &V, form: MtForm) -> Result<FrameComparison> {
    let plane = mt_check_in(alpha, v, form, Frame::Plane)?;
    let sphere = mt_check_in(alpha, v, form, Frame::Sphere)?;
    let cylinder = mt_check_in(alpha, v, form, Frame::Cylinder)?;
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1.0);
    let max_discrepancy = [&sphere, &cylinder]
        .iter()
        .flat_map(|r| {
            [rel(r.mean, plane.mean), rel(r.lhs_log, plane.lhs_log), rel(r.rhs_log, plane.rhs_log)]
        })
        .fold(0.0, f64::max);
    Ok(FrameComparison { plane, sphere, cylinder, max_discrepancy })
}

/// `∫_outer ∫ f dθ` with the shared tolerances.
fn panel<F: Fn(f64, f64) -> f64>(f: F, outer: Domain, rel_tol: f64) -> Result<f64> {
    with_angle(f, rel_tol, |g| Ok(Integrator::new(rel_tol).with_abs_tol(ABS_TOL).integrate(g, outer)?.value))
}

/// Sum of [`panel`] over the radial panels for `f(r, θ)` against `dr dθ`.
/// With `f_s`, the innermost disc and the outer tail are done instead in
/// `s = r^{2(α+1)}` against `ds dθ`: tanh-sinh absorbs the `s^{1/(α+1)}`
/// behaviour at `s = 0`, and the tail decays like `s^{-2}` whatever `α`.
fn radial_panels<F, G>(alpha: f64, f: F, f_s: Option<G>, rel_tol: f64) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
    G: Fn(f64, f64) -> f64,
{
    let (first, last) = (RADIAL_BREAKS[0], RADIAL_BREAKS[RADIAL_BREAKS.len() - 1]);
    let mut total = 0.0;
    for w in RADIAL_BREAKS.windows(2) {
        total += panel(&f, Domain::Finite(w[0], w[1]), rel_tol)?;
    }
    match f_s {
        Some(f_s) => {
            let to_s = |r: f64| r.powf(2.0 * (alpha + 1.0));
            total += with_angle(&f_s, rel_tol, |g| Ok(integrate_tanh_sinh(g, 0.0, to_s(first), rel_tol, ABS_TOL)?.value))?;
            total += panel(&f_s, Domain::UpperInfinite(to_s(last)), rel_tol)?;
        }
        None => {
            total += panel(&f, Domain::Finite(0.0, first), rel_tol)?;
            total += panel(&f, Domain::UpperInfinite(last), rel_tol)?;
        }
    }
    Ok(total)
}

/// `∫ g dμ_α` for `g(r, θ)`.
pub(crate) fn plane_measure<G: Fn(f64, f64) -> f64>(alpha: f64, g: G, rel_tol: f64) -> Result<f64> {
    let c = alpha + 1.0;
    radial_panels(
        alpha,
        |r, th| g(r, th) * plane_density(alpha, r) * r,
        Some(|s: f64, th| g(s.powf(0.5 / c), th) / (TAU * (1.0 + s) * (1.0 + s))),
        rel_tol,
    )
}

/// `∫ h dx` for `h(r, θ)`.
pub(crate) fn plane_lebesgue<H: Fn(f64, f64) -> f64>(h: H, rel_tol: f64) -> Result<f64> {
    radial_panels(0.0, |r, th| h(r, th) * r, None::<fn(f64, f64) -> f64>, rel_tol)
}

fn polar(r: f64, theta: f64) -> [f64; 2] {
    [r * theta.cos(), r * theta.sin()]
}

/// The generic plane evaluation behind [`PlaneFn::pieces`].
pub fn plane_pieces<V: PlaneFn + ?Sized>(alpha: f64, v: &V, rel_tol: f64) -> Result<MtPieces> {
    check_alpha(alpha)?;
    let mass = plane_measure(alpha, |_, _| 1.0, rel_tol)?;
    let mean = plane_measure(alpha, |r, th| v.value(polar(r, th)), rel_tol)? / mass;
    let expo = plane_measure(alpha, |r, th| (v.value(polar(r, th)) - mean).exp(), rel_tol)? / mass;
    let dirichlet = plane_lebesgue(
        |r, th| {
            let g = v.gradient(polar(r, th));
            g[0] * g[0] + g[1] * g[1]
        },
        rel_tol,
    )?;
    let angular = plane_lebesgue(
        |r, th| {
            let x = polar(r, th);
            let (_, wth) = radial_angular(x, v.gradient(x));
            wth * wth / (r * r)
        },
        rel_tol,
    )?;
    Ok(MtPieces { mean, lhs_log: expo.ln(), dirichlet, angular })
}

/// `(u, ∂_φ u, ∂_θ u, cos φ)` at one sphere sample.
type SphereSample = (f64, f64, f64, f64);

/// `∫ g dσ/(4π)` in `φ`, with tanh-sinh panels in the polar distance at both
/// poles, where transported functions are typically singular.
fn sphere_measure<U, G>(alpha: f64, u: &U, g: G, rel_tol: f64) -> Result<f64>
where
    U: SphereFunction + ?Sized,
    G: Fn(SphereSample) -> f64,
{
    let c = alpha + 1.0;
    let breaks: Vec<f64> = RADIAL_BREAKS.iter().map(|r| 2.0 * r.powf(c).atan() - FRAC_PI_2).collect();
    let weight = 1.0 / (4.0 * PI);
    let cap = |south: bool, psi_max: f64| {
        with_angle(
            |psi, th| {
                let (val, dp, dt) = u.near_pole(south, psi, th);
                let cp = psi.sin();
                g((val, dp, dt, cp)) * cp * weight
            },
            rel_tol,
            |h| Ok(integrate_tanh_sinh(h, 0.0, psi_max, rel_tol, ABS_TOL)?.value),
        )
    };
    let mut total = cap(true, breaks[0] + FRAC_PI_2)?;
    for w in breaks.windows(2) {
        total += panel(
            |phi, th| {
                let p = SpherePoint { phi, theta: th };
                let (dp, dt) = u.gradient(p);
                let cp = phi.cos();
                g((u.value(p), dp, dt, cp)) * cp * weight
            },
            Domain::Finite(w[0], w[1]),
            rel_tol,
        )?;
    }
    total += cap(false, FRAC_PI_2 - breaks[6])?;
    Ok(total)
}

/// Sphere evaluation, converted to plane units by
/// `‖∇v‖² = 4π(α+1) S_φ + 4π S_θ/(α+1)` and `‖r⁻¹∂_θ v‖² = 4π S_θ/(α+1)`.
pub fn sphere_pieces<U: SphereFunction + ?Sized>(alpha: f64, u: &U, rel_tol: f64) -> Result<MtPieces> {
    check_alpha(alpha)?;
    let c = alpha + 1.0;
    let mass = sphere_measure(alpha, u, |_| 1.0, rel_tol)?;
    let mean = sphere_measure(alpha, u, |s| s.0, rel_tol)? / mass;
    let expo = sphere_measure(alpha, u, |s| (s.0 - mean).exp(), rel_tol)? / mass;
    let s_phi = sphere_measure(alpha, u, |s| s.1 * s.1, rel_tol)?;
    let s_theta = sphere_measure(alpha, u, |s| s.2 * s.2 / (s.3 * s.3), rel_tol)?;
    let angular = 4.0 * PI * s_theta / c;
    Ok(MtPieces { mean, lhs_log: expo.ln(), dirichlet: 4.0 * PI * c * s_phi + angular, angular })
}

/// `∫ g dt dθ` over the cylinder for `g(t, θ)`.
fn cylinder_integral<G: Fn(f64, f64) -> f64>(g: G, rel_tol: f64) -> Result<f64> {
    let breaks: Vec<f64> = RADIAL_BREAKS.iter().map(|r| r.ln()).collect();
    let mut total = panel(&g, Domain::LowerInfinite(breaks[0]), rel_tol)?;
    for w in breaks.windows(2) {
        total += panel(&g, Domain::Finite(w[0], w[1]), rel_tol)?;
    }
    total += panel(&g, Domain::UpperInfinite(breaks[6]), rel_tol)?;
    Ok(total)
}

/// `(α+1)/(4π) sech²((α+1)t)` without overflow.
fn cylinder_density(alpha: f64, t: f64) -> f64 {
    let c = alpha + 1.0;
    let e = (-2.0 * c * t.abs()).exp();
    c / PI * e / ((1.0 + e) * (1.0 + e))
}

/// Cylinder evaluation. Dirichlet energies are conformally invariant, so
/// `‖∇v‖² = ∫(w_t² + w_θ²)` and `‖r⁻¹∂_θ v‖² = ∫w_θ²`.
pub fn cylinder_pieces<W: CylinderFn + ?Sized>(alpha: f64, w: &W, rel_tol: f64) -> Result<MtPieces> {
    check_alpha(alpha)?;
    let at = |t, theta| CylinderPoint { t, theta };
    let nu = |g: &dyn Fn(f64, f64) -> f64| cylinder_integral(|t, th| g(t, th) * cylinder_density(alpha, t), rel_tol);
    let mass = nu(&|_, _| 1.0)?;
    let mean = nu(&|t, th| w.value(at(t, th)))? / mass;
    let expo = nu(&|t, th| (w.value(at(t, th)) - mean).exp())? / mass;
    let radial = cylinder_integral(|t, th| w.gradient(at(t, th)).0.powi(2), rel_tol)?;
    let angular = cylinder_integral(|t, th| w.gradient(at(t, th)).1.powi(2), rel_tol)?;
    Ok(MtPieces { mean, lhs_log: expo.ln(), dirichlet: radial + angular, angular })
}
