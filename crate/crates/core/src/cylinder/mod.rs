//! The Sobolev quotient on the cylinder `C = ℝ × S¹`,
//!
//! `F(w) = (‖∂_t w‖² + ‖∂_θ w‖² + a²‖w‖²) / ‖w‖²_{L^p(C)}`,
//!
//! discretized by Fourier collocation in both variables on the periodized box
//! `[-T, T) × [0, 2π)`. The box is wide enough that extremals, which decay
//! like `e^{-|a||t|}`, are below rounding at `±T`.

mod solver;
mod spectral;

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use solver::{minimize_f, radial_minimizer, Classification, InitStrategy, SolveReport, SolverOptions};
pub(crate) use spectral::Spectral;

/// Tensor grid: `t_i = (i - (N_t-1)/2) h` with `h = 2T/N_t`, `θ_j = 2πj/N_θ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CylinderGrid {
    pub n_t: usize,
    pub n_theta: usize,
    pub half_width: f64,
}

impl CylinderGrid {
    pub fn new(n_t: usize, n_theta: usize, half_width: f64) -> Result<Self> {
        if n_t < 8 || n_theta == 0 {
            return Err(Error::Config(format!("grid too small: N_t={n_t}, N_θ={n_theta}")));
        }
        if !(half_width > 0.0) || !half_width.is_finite() {
            return Err(Error::Config(format!("half width must be positive, got {half_width}")));
        }
        Ok(Self { n_t, n_theta, half_width })
    }

    /// Default box for a given `a`: `T = 30/|a|`.
    pub fn for_a(a: f64, n_t: usize, n_theta: usize) -> Result<Self> {
        if a == 0.0 || !a.is_finite() {
            return Err(Error::domain("a must be finite and non-zero"));
        }
        Self::new(n_t, n_theta, 30.0 / a.abs())
    }

    pub fn len(&self) -> usize {
        self.n_t * self.n_theta
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn step(&self) -> f64 {
        2.0 * self.half_width / self.n_t as f64
    }

    pub fn t(&self, i: usize) -> f64 {
        (i as f64 - 0.5 * (self.n_t as f64 - 1.0)) * self.step()
    }

    pub fn theta(&self, j: usize) -> f64 {
        TAU * j as f64 / self.n_theta as f64
    }

    /// Quadrature weight of one grid cell.
    pub fn cell_area(&self) -> f64 {
        self.step() * TAU / self.n_theta as f64
    }

    /// Row-major samples `f(t_i, θ_j)`.
    pub fn sample<F: Fn(f64, f64) -> f64>(&self, f: F) -> Vec<f64> {
        let mut v = Vec::with_capacity(self.len());
        for i in 0..self.n_t {
            let t = self.t(i);
            for j in 0..self.n_theta {
                v.push(f(t, self.theta(j)));
            }
        }
        v
    }
}

/// Grid values of a function on the cylinder for given `(a, p)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CylinderField {
    pub grid: CylinderGrid,
    pub a: f64,
    pub p: f64,
    /// `values[i * n_theta + j] = w(t_i, θ_j)`.
    pub values: Vec<f64>,
}

impl CylinderField {
    pub fn new(grid: CylinderGrid, a: f64, p: f64, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Config(format!("expected {} values, got {}", grid.len(), values.len())));
        }
        if a == 0.0 || !(p > 2.0) {
            return Err(Error::domain(format!("need a ≠ 0 and p > 2, got a={a}, p={p}")));
        }
        Ok(Self { grid, a, p, values })
    }

    pub fn sample<F: Fn(f64, f64) -> f64>(grid: CylinderGrid, a: f64, p: f64, f: F) -> Result<Self> {
        Self::new(grid, a, p, grid.sample(f))
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.grid.n_theta + j % self.grid.n_theta]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn min(&self) -> f64 {
        self.values.iter().fold(f64::INFINITY, |m, &v| m.min(v))
    }

    /// `max |w(±T, ·)| / max |w|`.
    pub fn boundary_ratio(&self) -> f64 {
        let n = self.grid.n_theta;
        let last = (self.grid.n_t - 1) * n;
        let edge = self.values[..n].iter().chain(&self.values[last..]).fold(0.0f64, |m, v| m.max(v.abs()));
        edge / self.max_abs()
    }

    /// `max |w(t,θ) - w(-t,θ)| / max |w|`.
    pub fn evenness_defect(&self) -> f64 {
        let (nt, n) = (self.grid.n_t, self.grid.n_theta);
        let mut d = 0.0f64;
        for i in 0..nt {
            for j in 0..n {
                d = d.max((self.at(i, j) - self.at(nt - 1 - i, j)).abs());
            }
        }
        d / self.max_abs()
    }

    /// `∫∫ |w|^p`.
    pub fn lp_integral(&self) -> f64 {
        self.values.iter().map(|v| v.abs().powf(self.p)).sum::<f64>() * self.grid.cell_area()
    }

    /// The profile `t ↦ (1/2π)∫ w(t,θ) dθ`.
    pub fn theta_mean(&self) -> Vec<f64> {
        let n = self.grid.n_theta;
        self.values.chunks(n).map(|row| row.iter().sum::<f64>() / n as f64).collect()
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self { values: self.values.iter().map(|v| c * v).collect(), ..self.clone() }
    }
}

/// The discrete quotient `F(w)`.
pub fn evaluate_f(w: &CylinderField) -> Result<f64> {
    let s = Spectral::new(&w.grid, w.a);
    quotient(&s, w)
}

pub(crate) fn quotient(s: &Spectral, w: &CylinderField) -> Result<f64> {
    let lp = w.lp_integral();
    if !(lp > 0.0) {
        return Err(Error::domain("F is undefined for the zero field"));
    }
    Ok(s.energy(&s.forward(&w.values)) / lp.powf(2.0 / w.p))
}

/// For θ-independent `f`, the quotient with `dt` in place of `dt dθ`:
/// `F(f) = (2π)^{1-2/p} F*(f)`.
pub fn line_quotient(w: &CylinderField) -> Result<f64> {
    Ok(evaluate_f(w)? / TAU.powf(1.0 - 2.0 / w.p))
}

/// Replace `w` by its θ-average.
pub fn symmetrize_theta(w: &CylinderField) -> CylinderField {
    let n = w.grid.n_theta;
    let values = w.theta_mean().into_iter().flat_map(|m| std::iter::repeat(m).take(n)).collect();
    CylinderField { values, ..w.clone() }
}

/// `‖w - w̄‖²_{H¹}/‖w‖²_{H¹}` in the energy norm, where `w̄` is the θ-average.
pub fn theta_energy_fraction(w: &CylinderField) -> Result<f64> {
    let s = Spectral::new(&w.grid, w.a);
    theta_fraction(&s, &s.forward(&w.values))
}

pub(crate) fn theta_fraction(s: &Spectral, spec: &[rustfft::num_complex::Complex64]) -> Result<f64> {
    let total = s.energy(spec);
    if !(total > 0.0) {
        return Err(Error::domain("θ energy fraction is undefined for the zero field"));
    }
    Ok((s.nonradial_energy(spec) / total).clamp(0.0, 1.0))
}

/// Slice-wise Pohozaev identity
/// `∫(∂_θ w)² dθ = ∫(∂_t w)² dθ - a²∫w² dθ + (2/p)∫|w|^p dθ`:
/// the largest defect over `t`, relative to the largest slice magnitude.
pub fn pohozaev_residual(w: &CylinderField) -> f64 {
    let s = Spectral::new(&w.grid, w.a);
    let spec = s.forward(&w.values);
    let dt = s.d_t(&spec);
    let dth = s.d_theta(&spec);
    let n = w.grid.n_theta;
    let dtheta = TAU / n as f64;
    let (a2, p) = (w.a * w.a, w.p);
    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for i in 0..w.grid.n_t {
        let (mut qt, mut qth, mut q0, mut qp) = (0.0, 0.0, 0.0, 0.0);
        for j in 0..n {
            let k = i * n + j;
            qt += dt[k] * dt[k];
            qth += dth[k] * dth[k];
            q0 += w.values[k] * w.values[k];
            qp += w.values[k].abs().powf(p);
        }
        let (qt, qth, q0, qp) = (qt * dtheta, qth * dtheta, a2 * q0 * dtheta, 2.0 / p * qp * dtheta);
        worst = worst.max((qth - qt + q0 - qp).abs());
        scale = scale.max(qth + qt + q0 + qp);
    }
    if scale == 0.0 {
        0.0
    } else {
        worst / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::{w_star_lp_norm, WStar};

    fn w_star_field(a: f64, p: f64, n_t: usize, n_theta: usize) -> CylinderField {
        let grid = CylinderGrid::for_a(a, n_t, n_theta).unwrap();
        let w = WStar::new(a, p).unwrap();
        CylinderField::sample(grid, a, p, |t, _| w.eval(t)).unwrap()
    }

    #[test]
    fn grid_is_symmetric() {
        let g = CylinderGrid::new(11, 4, 5.0).unwrap();
        assert_eq!(g.t(5), 0.0);
        assert!((g.t(0) + g.t(10)).abs() < 1e-15);
        assert!((g.t(10) - (5.0 - 0.5 * g.step())).abs() < 1e-14);
        assert!(CylinderGrid::new(4, 4, 1.0).is_err());
    }

    #[test]
    fn quotient_of_w_star_matches_closed_form() {
        for (a, p) in [(1.0, 4.0), (0.5, 3.0), (0.1, 10.0)] {
            let f = evaluate_f(&w_star_field(a, p, 2001, 1)).unwrap();
            let exact = w_star_lp_norm(a, p).unwrap().powf((p - 2.0) / p);
            assert!((f - exact).abs() < 1e-10 * exact, "a={a} p={p}: {f} vs {exact}");
        }
    }

    #[test]
    fn line_quotient_convention() {
        let w = w_star_field(1.0, 4.0, 1001, 1);
        let f = evaluate_f(&w).unwrap();
        let line = line_quotient(&w).unwrap();
        assert!((f - TAU.sqrt() * line).abs() < 1e-12 * f);
    }

    #[test]
    fn quotient_converges_spectrally() {
        let exact = w_star_lp_norm(1.0, 4.0).unwrap().sqrt();
        let errs: Vec<f64> =
            [101, 201, 401].iter().map(|&n| (evaluate_f(&w_star_field(1.0, 4.0, n, 1)).unwrap() - exact).abs()).collect();
        assert!(errs[1] < 1e-3 * errs[0] && errs[2] < 1e-10 * exact, "{errs:?}");
    }

    #[test]
    fn quotient_is_scale_invariant() {
        let w = w_star_field(1.0, 3.0, 301, 8);
        let f = evaluate_f(&w).unwrap();
        assert!((evaluate_f(&w.scaled(3.0)).unwrap() - f).abs() <= 1e-12 * f);
        assert!((evaluate_f(&w.scaled(-0.25)).unwrap() - f).abs() <= 1e-12 * f);
        assert!(evaluate_f(&w.scaled(0.0)).is_err());
    }

    #[test]
    fn symmetrize_examples() {
        let w = w_star_field(1.0, 3.0, 101, 8);
        let sym = symmetrize_theta(&w);
        assert!(sym.values.iter().zip(&w.values).all(|(x, y)| (x - y).abs() <= 1e-15 * y.abs()));
        let grid = w.grid;
        let m1 = CylinderField::sample(grid, 1.0, 3.0, |t, th| (-t * t).exp() * th.cos()).unwrap();
        assert!(symmetrize_theta(&m1).max_abs() < 1e-15);
        let mixed = CylinderField::sample(grid, 1.0, 3.0, |t, th| (-t * t).exp() * (1.0 + th.cos() + th.sin())).unwrap();
        let once = symmetrize_theta(&mixed);
        let twice = symmetrize_theta(&once);
        assert!(twice.values.iter().zip(&once.values).all(|(x, y)| (x - y).abs() <= 1e-15 * y.abs()));
        let frac = theta_energy_fraction(&mixed).unwrap();
        assert!(frac > 0.0 && frac < 1.0);
        assert!(theta_energy_fraction(&w).unwrap() < 1e-28);
    }

    #[test]
    fn pohozaev_on_w_star_and_on_noise() {
        for (a, p) in [(1.0, 4.0), (1.0, 3.0), (0.1, 10.0)] {
            let r = pohozaev_residual(&w_star_field(a, p, 2001, 4));
            assert!(r <= 1e-8, "a={a} p={p}: {r}");
        }
        let grid = CylinderGrid::for_a(1.0, 201, 8).unwrap();
        let noise = CylinderField::sample(grid, 1.0, 3.0, |t, th| (-t * t / 4.0).exp() * (1.0 + 0.5 * (3.0 * th).cos()))
            .unwrap();
        assert!(pohozaev_residual(&noise) > 0.05);
    }
}
