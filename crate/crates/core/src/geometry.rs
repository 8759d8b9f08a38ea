//! Plane, sphere and cylinder frames, their weighted probability measures,
//! the dilated stereographic projection `Σ_α` and the Emden-Fowler transform.
//!
//! Coordinates: the plane uses polar `(r, θ)`, the sphere latitude
//! `φ ∈ [-π/2, π/2]` and longitude `θ` (south pole `φ = -π/2`), the cylinder
//! `(t, θ)` with `t = log r`.
//!
//! Measures (all of total mass one):
//!
//! * plane: `dμ_α = (α+1)/π · r^{2α} / (1 + r^{2(α+1)})² dx`
//! * sphere: `dσ = cos φ dφ dθ / 4π`
//! * cylinder: `dν_α = (α+1)/4π · sech²((α+1)t) dt dθ`, the image of `μ_α`
//!   under `t = log r`.

use std::cell::RefCell;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{periodic_mean_with, Domain, Integrator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Frame {
    Plane,
    Sphere,
    Cylinder,
}

impl std::str::FromStr for Frame {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "plane" => Ok(Frame::Plane),
            "sphere" => Ok(Frame::Sphere),
            "cylinder" => Ok(Frame::Cylinder),
            _ => Err(Error::domain(format!("unknown frame {s:?}; expected plane, sphere or cylinder"))),
        }
    }
}

impl std::fmt::Display for Frame {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.pad(match self {
            Frame::Plane => "plane",
            Frame::Sphere => "sphere",
            Frame::Cylinder => "cylinder",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarPoint {
    pub r: f64,
    pub theta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpherePoint {
    pub phi: f64,
    pub theta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CylinderPoint {
    pub t: f64,
    pub theta: f64,
}

/// Reduce an angle to `[0, 2π)`.
pub fn wrap_angle(theta: f64) -> f64 {
    let w = theta.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

impl PolarPoint {
    pub fn new(r: f64, theta: f64) -> Self {
        Self { r, theta: wrap_angle(theta) }
    }

    pub fn from_cartesian(x: [f64; 2]) -> Self {
        Self::new(x[0].hypot(x[1]), x[1].atan2(x[0]))
    }

    pub fn to_cartesian(self) -> [f64; 2] {
        [self.r * self.theta.cos(), self.r * self.theta.sin()]
    }
}

impl SpherePoint {
    pub fn new(phi: f64, theta: f64) -> Self {
        Self { phi, theta: wrap_angle(theta) }
    }

    /// From cylindrical coordinates `(ρ e^{iθ}, z)` of a point on the unit sphere.
    pub fn from_cylindrical(rho: f64, z: f64, theta: f64) -> Self {
        Self::new(z.atan2(rho), theta)
    }

    pub fn z(self) -> f64 {
        self.phi.sin()
    }

    pub fn rho(self) -> f64 {
        self.phi.cos()
    }
}

impl CylinderPoint {
    pub fn new(t: f64, theta: f64) -> Self {
        Self { t, theta: wrap_angle(theta) }
    }
}

/// One of the three weighted probability measures.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureSpec {
    frame: Frame,
    alpha: f64,
}

impl MeasureSpec {
    pub fn new(frame: Frame, alpha: f64) -> Result<Self> {
        if !(alpha > -1.0) || !alpha.is_finite() {
            return Err(Error::domain(format!("measure weight α must exceed -1, got {alpha}")));
        }
        Ok(Self { frame, alpha })
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Plane density per unit Lebesgue area at radius `r`.
    pub fn plane_density(&self, r: f64) -> f64 {
        plane_density(self.alpha, r)
    }

    /// Cylinder density per `dt dθ`.
    pub fn cylinder_density(&self, t: f64) -> f64 {
        let c = self.alpha + 1.0;
        let s = 1.0 / (c * t).cosh();
        c / (4.0 * PI) * s * s
    }

    /// Sphere density per `dφ dθ` (independent of `α`).
    pub fn sphere_density(&self, phi: f64) -> f64 {
        phi.cos() / (4.0 * PI)
    }
}

pub(crate) fn plane_density(alpha: f64, r: f64) -> f64 {
    let s = r.powf(2.0 * (alpha + 1.0));
    let d = 1.0 + s;
    (alpha + 1.0) / PI * r.powf(2.0 * alpha) / (d * d)
}

/// `Σ_α(r e^{iθ})`: `cos φ = 2 r^{α+1}/(1 + r^{2(α+1)})`,
/// `sin φ = (r^{2(α+1)} - 1)/(1 + r^{2(α+1)})`. `r = 0` is the south pole and
/// `r → ∞` tends to the north pole.
pub fn sigma_alpha(alpha: f64, p: PolarPoint) -> SpherePoint {
    let s = p.r.powf(alpha + 1.0);
    SpherePoint { phi: 2.0 * s.atan() - FRAC_PI_2, theta: p.theta }
}

/// Inverse of [`sigma_alpha`]: `r = (ρ/(1 - z))^{1/(α+1)}`.
pub fn sigma_alpha_inv(alpha: f64, s: SpherePoint) -> Result<PolarPoint> {
    if s.phi >= FRAC_PI_2 {
        return Err(Error::domain("the north pole has no preimage under Σ_α"));
    }
    // ρ/(1 - z) = tan(φ/2 + π/4), evaluated without cancellation.
    let ratio = (0.5 * s.phi + 0.25 * PI).tan().max(0.0);
    Ok(PolarPoint { r: ratio.powf(1.0 / (alpha + 1.0)), theta: s.theta })
}

/// `dφ/dr` along `Σ_α`.
pub(crate) fn dphi_dr(alpha: f64, r: f64) -> f64 {
    let c = alpha + 1.0;
    2.0 * c * r.powf(alpha) / (1.0 + r.powf(2.0 * c))
}

/// Emden-Fowler transform in two dimensions: `t = log|x|`,
/// `w(t, θ) = e^{-a t} v(e^t e^{iθ})`.
pub fn emden_fowler<V>(a: f64, v: V) -> impl Fn(CylinderPoint) -> f64
where
    V: Fn(PolarPoint) -> f64,
{
    move |c: CylinderPoint| (-a * c.t).exp() * v(PolarPoint { r: c.t.exp(), theta: c.theta })
}

/// Inverse Emden-Fowler transform: `v(x) = |x|^a w(log|x|, θ)`.
pub fn emden_fowler_inv<W>(a: f64, w: W) -> impl Fn(PolarPoint) -> f64
where
    W: Fn(CylinderPoint) -> f64,
{
    move |p: PolarPoint| p.r.powf(a) * w(CylinderPoint { t: p.r.ln(), theta: p.theta })
}

/// A function given in the coordinates of one frame.
pub enum FrameFn<'a> {
    Plane(&'a dyn Fn(PolarPoint) -> f64),
    Sphere(&'a dyn Fn(SpherePoint) -> f64),
    Cylinder(&'a dyn Fn(CylinderPoint) -> f64),
}

impl FrameFn<'_> {
    pub fn frame(&self) -> Frame {
        match self {
            FrameFn::Plane(_) => Frame::Plane,
            FrameFn::Sphere(_) => Frame::Sphere,
            FrameFn::Cylinder(_) => Frame::Cylinder,
        }
    }
}

/// `∫_outer ∫_0^{2π} f dθ d(outer)`, inner by the periodic trapezoid rule.
pub(crate) fn integrate_with_angle<F>(f: F, outer: Domain, rel_tol: f64) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
{
    with_angle(f, rel_tol, |g| Ok(Integrator::new(rel_tol).with_abs_tol(1e-300).integrate(g, outer)?.value))
}

/// Wraps the angular mean of `f(x, ·)` (times `2π`) as a 1D integrand and
/// hands it to `outer`; inner failures take precedence over the outer result.
pub(crate) fn with_angle<F, O>(f: F, rel_tol: f64, outer: O) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
    O: FnOnce(&dyn Fn(f64) -> f64) -> Result<f64>,
{
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let inner_tol = (0.01 * rel_tol).max(1e-15);
    let g = |x: f64| match periodic_mean_with(|theta| f(x, theta), inner_tol, 1e-17) {
        Ok(m) => TAU * m,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            0.0
        }
    };
    let value = outer(&g);
    match failure.into_inner() {
        Some(e) => Err(e),
        None => value,
    }
}

/// `∫ f dm` over the measure's frame.
///
/// The plane is integrated in `s = r^{2(α+1)}` (so `dμ_α = ds dθ / (2π(1+s)²)`,
/// with no singularity at the origin for any `α > -1`), the sphere in `φ`,
/// the cylinder in `t`.
pub fn integrate_measure(m: &MeasureSpec, f: FrameFn<'_>, rel_tol: f64) -> Result<f64> {
    if f.frame() != m.frame {
        return Err(Error::domain(format!(
            "function is given on {:?} but the measure lives on {:?}",
            f.frame(),
            m.frame
        )));
    }
    let c = m.alpha + 1.0;
    match f {
        FrameFn::Plane(f) => integrate_with_angle(
            |s, theta| {
                let r = s.powf(0.5 / c);
                f(PolarPoint { r, theta }) / (TAU * (1.0 + s) * (1.0 + s))
            },
            Domain::UpperInfinite(0.0),
            rel_tol,
        ),
        FrameFn::Sphere(f) => integrate_with_angle(
            |phi, theta| f(SpherePoint { phi, theta }) * phi.cos() / (4.0 * PI),
            Domain::Finite(-FRAC_PI_2, FRAC_PI_2),
            rel_tol,
        ),
        FrameFn::Cylinder(f) => integrate_with_angle(
            |t, theta| {
                let s = 1.0 / (c * t).cosh();
                f(CylinderPoint { t, theta }) * c / (4.0 * PI) * s * s
            },
            Domain::Whole,
            rel_tol,
        ),
    }
}

/// `∫_{ℝ²} f dx` in polar coordinates.
pub fn integrate_plane_lebesgue<F>(f: F, rel_tol: f64) -> Result<f64>
where
    F: Fn(PolarPoint) -> f64,
{
    integrate_with_angle(|r, theta| f(PolarPoint { r, theta }) * r, Domain::UpperInfinite(0.0), rel_tol)
}

/// A differentiable function on the sphere.
pub trait SphereFunction {
    fn value(&self, p: SpherePoint) -> f64;
    /// `(∂_φ u, ∂_θ u)`.
    fn gradient(&self, p: SpherePoint) -> (f64, f64);

    /// `(u, ∂_φ u, ∂_θ u)` at polar distance `psi` from the south pole
    /// (`south = true`) or the north pole. Override when the function can be
    /// evaluated more accurately from `psi` than from `φ = ∓(π/2 − psi)`.
    fn near_pole(&self, south: bool, psi: f64, theta: f64) -> (f64, f64, f64) {
        let phi = if south { psi - FRAC_PI_2 } else { FRAC_PI_2 - psi };
        let p = SpherePoint { phi, theta };
        let (dp, dt) = self.gradient(p);
        (self.value(p), dp, dt)
    }
}

/// [`SphereFunction`] built from closures for the value and both partials.
pub struct SphereFn<V, G> {
    pub value: V,
    pub gradient: G,
}

impl<V, G> SphereFunction for SphereFn<V, G>
where
    V: Fn(SpherePoint) -> f64,
    G: Fn(SpherePoint) -> (f64, f64),
{
    fn value(&self, p: SpherePoint) -> f64 {
        (self.value)(p)
    }

    fn gradient(&self, p: SpherePoint) -> (f64, f64) {
        (self.gradient)(p)
    }
}

/// Both sides of `4π ∫_{S²} |∇u|² dσ = (1/(α+1)) ∫ (|∇v|² + α(α+2)|r⁻¹∂_θ v|²) dx`
/// for `v = u ∘ Σ_α`, each by its own quadrature.
pub fn gradient_identity_check<U: SphereFunction + ?Sized>(alpha: f64, u: &U, rel_tol: f64) -> Result<(f64, f64)> {
    if !(alpha > -1.0) {
        return Err(Error::domain(format!("α must exceed -1, got {alpha}")));
    }
    let lhs = 4.0
        * PI
        * integrate_with_angle(
            |phi, theta| {
                let (dp, dt) = u.gradient(SpherePoint { phi, theta });
                let c = phi.cos();
                (dp * dp * c + dt * dt / c) / (4.0 * PI)
            },
            Domain::Finite(-FRAC_PI_2, FRAC_PI_2),
            rel_tol,
        )?;
    let angular = 1.0 + alpha * (alpha + 2.0);
    let rhs = integrate_with_angle(
        |r, theta| {
            let sp = sigma_alpha(alpha, PolarPoint { r, theta });
            let (dp, dt) = u.gradient(sp);
            let vr = dp * dphi_dr(alpha, r);
            (vr * vr * r + angular * dt * dt / r) / (alpha + 1.0)
        },
        Domain::UpperInfinite(0.0),
        rel_tol,
    )?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALPHAS: [f64; 5] = [-0.9, -0.5, 0.0, 1.0, 5.0];

    #[test]
    fn sigma_examples() {
        let eq = sigma_alpha(0.0, PolarPoint::new(1.0, 0.3));
        assert!(eq.phi.abs() < 1e-15 && (eq.theta - 0.3).abs() < 1e-15);
        for alpha in ALPHAS {
            assert!((sigma_alpha(alpha, PolarPoint::new(0.0, 1.0)).z() + 1.0).abs() < 1e-15);
        }
        let p = sigma_alpha(1.0, PolarPoint::new(2f64.sqrt(), 0.0));
        assert!((p.rho() - 0.8).abs() < 1e-15 && (p.z() - 0.6).abs() < 1e-15);
        // Σ_α(r) = Σ_0(r^{α+1})
        let q = sigma_alpha(0.0, PolarPoint::new(2.0, 0.0));
        assert!((q.phi - p.phi).abs() < 1e-15);
    }

    #[test]
    fn sigma_inverse_examples() {
        let r = sigma_alpha_inv(0.0, SpherePoint::from_cylindrical(1.0, 0.0, 0.0)).unwrap();
        assert!((r.r - 1.0).abs() < 1e-15);
        let r = sigma_alpha_inv(1.0, SpherePoint::from_cylindrical(0.8, 0.6, 0.0)).unwrap();
        assert!((r.r - 2f64.sqrt()).abs() < 1e-14);
        let south = sigma_alpha_inv(0.5, SpherePoint::new(-FRAC_PI_2, 0.0)).unwrap();
        assert!(south.r.abs() < 1e-15);
        assert!(sigma_alpha_inv(0.5, SpherePoint::new(FRAC_PI_2, 0.0)).is_err());
    }

    #[test]
    fn sigma_round_trip() {
        for alpha in ALPHAS {
            // latitude loses relative resolution near the poles, so sample
            // s = r^{α+1} over a fixed band around the equator
            for i in 0..200 {
                let r = 10f64.powf((-2.0 + 4.0 * i as f64 / 199.0) / (alpha + 1.0));
                let back = sigma_alpha_inv(alpha, sigma_alpha(alpha, PolarPoint::new(r, 1.0))).unwrap();
                assert!(((back.r - r) / r).abs() < 1e-12, "α={alpha} r={r} got {}", back.r);
            }
        }
    }

    #[test]
    fn emden_fowler_examples_and_round_trip() {
        let w = emden_fowler(0.0, |_p: PolarPoint| 1.0);
        assert_eq!(w(CylinderPoint::new(3.0, 1.0)), 1.0);
        let a = 0.7;
        let w = emden_fowler(a, |p: PolarPoint| p.r.powf(a));
        for t in [-5.0, -1.0, 0.0, 2.5] {
            assert!((w(CylinderPoint::new(t, 0.2)) - 1.0).abs() < 1e-12);
        }
        let v = |p: PolarPoint| (p.r * p.theta.cos()).sin() + p.r * p.r * (-p.r).exp();
        let back = emden_fowler_inv(-1.3, emden_fowler(-1.3, v));
        for i in 1..50 {
            let p = PolarPoint::new(0.1 * i as f64, 0.37 * i as f64);
            assert!((back(p) - v(p)).abs() < 1e-12 * v(p).abs().max(1.0));
        }
    }

    #[test]
    fn all_measures_have_unit_mass() {
        for alpha in ALPHAS {
            let one = |_: PolarPoint| 1.0;
            let m = integrate_measure(&MeasureSpec::new(Frame::Plane, alpha).unwrap(), FrameFn::Plane(&one), 1e-12)
                .unwrap();
            assert!((m - 1.0).abs() < 1e-10, "plane α={alpha}: {m}");
            let one = |_: SpherePoint| 1.0;
            let m = integrate_measure(&MeasureSpec::new(Frame::Sphere, alpha).unwrap(), FrameFn::Sphere(&one), 1e-12)
                .unwrap();
            assert!((m - 1.0).abs() < 1e-10, "sphere: {m}");
            let one = |_: CylinderPoint| 1.0;
            let m = integrate_measure(
                &MeasureSpec::new(Frame::Cylinder, alpha).unwrap(),
                FrameFn::Cylinder(&one),
                1e-12,
            )
            .unwrap();
            assert!((m - 1.0).abs() < 1e-10, "cylinder α={alpha}: {m}");
        }
    }

    #[test]
    fn plane_density_in_lebesgue_terms() {
        // ∫ (α+1)/π r^{2α}/(1+r^{2(α+1)})² dx over the plane is one.
        for alpha in [-0.5, 0.0, 2.0] {
            let m = integrate_plane_lebesgue(|p| plane_density(alpha, p.r), 1e-11).unwrap();
            assert!((m - 1.0).abs() < 1e-9, "α={alpha}: {m}");
        }
    }

    #[test]
    fn measure_examples() {
        let f = |p: PolarPoint| 1.0 / (1.0 + p.r * p.r);
        let v = integrate_measure(&MeasureSpec::new(Frame::Plane, 0.0).unwrap(), FrameFn::Plane(&f), 1e-12).unwrap();
        assert!((v - 0.5).abs() < 1e-11);
        let g = |c: CylinderPoint| (2.0 * c.t).tanh().powi(2);
        let v = integrate_measure(&MeasureSpec::new(Frame::Cylinder, 1.0).unwrap(), FrameFn::Cylinder(&g), 1e-12)
            .unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-11);
    }

    #[test]
    fn frame_mismatch_and_bad_alpha() {
        let f = |_: SpherePoint| 1.0;
        assert!(integrate_measure(&MeasureSpec::new(Frame::Plane, 0.0).unwrap(), FrameFn::Sphere(&f), 1e-8).is_err());
        assert!(MeasureSpec::new(Frame::Plane, -1.0).is_err());
    }

    #[test]
    fn gradient_identity_examples() {
        let sin_phi = SphereFn { value: |p: SpherePoint| p.phi.sin(), gradient: |p: SpherePoint| (p.phi.cos(), 0.0) };
        let (l, r) = gradient_identity_check(0.0, &sin_phi, 1e-11).unwrap();
        assert!((l - 8.0 * PI / 3.0).abs() < 1e-8 * l, "{l}");
        assert!((l - r).abs() <= 1e-8 * l, "{l} vs {r}");

        let first = SphereFn {
            value: |p: SpherePoint| p.phi.cos() * p.theta.cos(),
            gradient: |p: SpherePoint| (-p.phi.sin() * p.theta.cos(), -p.phi.cos() * p.theta.sin()),
        };
        let (l, r) = gradient_identity_check(0.5, &first, 1e-11).unwrap();
        assert!((l - 8.0 * PI / 3.0).abs() < 1e-8 * l, "{l}");
        assert!((l - r).abs() <= 1e-8 * l, "{l} vs {r}");

        let radial = SphereFn {
            value: |p: SpherePoint| (2.0 * p.phi).sin(),
            gradient: |p: SpherePoint| (2.0 * (2.0 * p.phi).cos(), 0.0),
        };
        let (l, r) = gradient_identity_check(-0.4, &radial, 1e-11).unwrap();
        assert!((l - r).abs() <= 1e-8 * l, "{l} vs {r}");
    }
}
