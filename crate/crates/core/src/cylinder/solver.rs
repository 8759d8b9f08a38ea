//! Minimization of `F` by a normalized fixed-point iteration.
//!
//! Each step solves `(-Δ + a²)v = |w|^{p-2}w` exactly in Fourier space and
//! rescales `v` so that `‖v‖²_H = ‖v‖^p_p`, which is the scaling under which a
//! critical point solves `-Δw + a²w = |w|^{p-2}w` with coefficient one. A step
//! that would raise `F` is damped until it does not.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{pohozaev_residual, theta_fraction, CylinderField, CylinderGrid, Spectral};
use crate::closed_forms::{CknParams, WStar};
use crate::error::{Error, Result};

/// θ energy fraction above which a non-broken solution is flagged as neutral.
const NEUTRAL_FRACTION: f64 = 1e-8;
/// Iterations without a new best residual before giving up.
const STAGNATION_WINDOW: usize = 5000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum InitStrategy {
    /// `w* + 0.05 w*(0) sech(t) cos θ`.
    RadialPlusMode1,
    /// `w*` with no perturbation.
    Radial,
    /// `w*` times a seeded random combination of the first three θ modes.
    Random { seed: u64 },
    /// Row-major values on the solver grid.
    Custom(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    pub n_t: usize,
    pub n_theta: usize,
    /// Half width `T` of the box; `30/|a|` when absent.
    pub half_width: Option<f64>,
    pub el_tol: f64,
    pub max_iter: usize,
    pub tol_break: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { n_t: 2001, n_theta: 64, half_width: None, el_tol: 1e-8, max_iter: 100_000, tol_break: 1e-6 }
    }
}

impl SolverOptions {
    pub fn grid(&self, a: f64) -> Result<CylinderGrid> {
        match self.half_width {
            Some(t) => CylinderGrid::new(self.n_t, self.n_theta, t),
            None => CylinderGrid::for_a(a, self.n_t, self.n_theta),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    Radial,
    Broken,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<CylinderField>,
    pub a: f64,
    pub p: f64,
    #[serde(rename = "F_init")]
    pub f_init: f64,
    #[serde(rename = "F_value")]
    pub f_value: f64,
    #[serde(rename = "F_radial")]
    pub f_radial: f64,
    pub el_residual: f64,
    pub pohozaev_residual: f64,
    pub theta_energy_fraction: f64,
    pub classification: Classification,
    /// Not broken, yet with a θ-dependent component above rounding.
    pub neutral: bool,
    pub iterations: usize,
}

impl SolveReport {
    /// The converged field. Always present on reports returned by [`minimize_f`].
    pub fn field(&self) -> &CylinderField {
        self.field.as_ref().expect("solve reports carry their field until stripped")
    }

    /// A copy without the field arrays, for compact serialization.
    pub fn without_field(&self) -> Self {
        Self { field: None, ..self.clone() }
    }
}

struct State {
    values: Vec<f64>,
    spec: Vec<Complex64>,
    quotient: f64,
}

impl State {
    /// Rescale so that `‖w‖²_H = ‖w‖^p_p`.
    fn normalized(s: &Spectral, area: f64, p: f64, mut values: Vec<f64>, mut spec: Vec<Complex64>) -> Result<Self> {
        let energy = s.energy(&spec);
        let lp = values.iter().map(|v| v.abs().powf(p)).sum::<f64>() * area;
        if !(energy > 0.0 && lp > 0.0) || !energy.is_finite() || !lp.is_finite() {
            return Err(Error::domain("iterate collapsed to zero or overflowed"));
        }
        let c = (energy / lp).powf(1.0 / (p - 2.0));
        values.iter_mut().for_each(|v| *v *= c);
        spec.iter_mut().for_each(|z| *z *= c);
        let quotient = energy / lp.powf(2.0 / p);
        Ok(Self { values, spec, quotient })
    }
}

struct Converged {
    values: Vec<f64>,
    spec: Vec<Complex64>,
    quotient: f64,
    residual: f64,
    iterations: usize,
}

fn iterate(s: &Spectral, grid: &CylinderGrid, p: f64, init: Vec<f64>, el_tol: f64, max_iter: usize) -> Result<Converged> {
    let area = grid.cell_area();
    let spec = s.forward(&init);
    let mut w = State::normalized(s, area, p, init, spec)?;
    let n = s.len() as f64;
    let mut best = (f64::INFINITY, 0usize);
    for it in 0..=max_iter {
        let nonlinear: Vec<f64> = w.values.iter().map(|v| v.abs().powf(p - 2.0) * v).collect();
        let nhat = s.forward(&nonlinear);
        let res2: f64 = w.spec.iter().zip(&nhat).zip(s.sigma()).map(|((c, m), sg)| (c * sg - m).norm_sqr()).sum();
        let residual = (res2 * area / n).sqrt();
        if !residual.is_finite() {
            return Err(Error::domain("iteration produced non-finite values"));
        }
        if residual <= el_tol {
            return Ok(Converged { values: w.values, spec: w.spec, quotient: w.quotient, residual, iterations: it });
        }
        if residual < best.0 {
            best = (residual, it);
        }
        if it == max_iter || it - best.1 > STAGNATION_WINDOW {
            return Err(Error::NonConvergence {
                iterations: it,
                residual,
                best: Some(Box::new(w.values)),
            });
        }
        let vhat: Vec<Complex64> = nhat.iter().zip(s.sigma()).map(|(m, sg)| m / sg).collect();
        let v = s.inverse(&vhat);
        let mut next = State::normalized(s, area, p, v, vhat)?;
        let mut tau = 1.0;
        while next.quotient > w.quotient * (1.0 + 1e-12) && tau > 1e-6 {
            tau *= 0.5;
            let values = w.values.iter().zip(&next.values).map(|(x, y)| (1.0 - tau) * x + tau * y).collect();
            let spec = w.spec.iter().zip(&next.spec).map(|(x, y)| x * (1.0 - tau) + y * tau).collect();
            let candidate = State::normalized(s, area, p, values, spec)?;
            if candidate.quotient <= w.quotient * (1.0 + 1e-12) {
                next = candidate;
                break;
            }
        }
        w = next;
    }
    unreachable!("loop returns on its last iteration")
}

fn initial_values(grid: &CylinderGrid, w: &WStar, init: &InitStrategy) -> Result<Vec<f64>> {
    Ok(match init {
        InitStrategy::Radial => grid.sample(|t, _| w.eval(t)),
        InitStrategy::RadialPlusMode1 => {
            let bump = 0.05 * w.peak();
            grid.sample(|t, th| w.eval(t) + bump / t.cosh() * th.cos())
        }
        InitStrategy::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let coeffs: Vec<(f64, f64)> =
                (1..=3).map(|k| (rng.gen_range(-0.2..0.2) / k as f64, rng.gen_range(-0.2..0.2) / k as f64)).collect();
            grid.sample(|t, th| {
                let mut m = 1.0;
                for (k, (c, s)) in coeffs.iter().enumerate() {
                    let k = (k + 1) as f64;
                    m += (c * (k * th).cos() + s * (k * th).sin()) / t.cosh();
                }
                w.eval(t) * m
            })
        }
        InitStrategy::Custom(values) => {
            if values.len() != grid.len() {
                return Err(Error::Config(format!(
                    "custom initial field has {} values, grid needs {}",
                    values.len(),
                    grid.len()
                )));
            }
            values.clone()
        }
    })
}

/// The θ-independent discrete minimizer on the same `t` grid, started from `w*`.
/// Returns the field (with `N_θ = 1`) and its quotient.
pub fn radial_minimizer(a: f64, p: f64, opts: &SolverOptions) -> Result<(CylinderField, f64)> {
    let grid = opts.grid(a)?;
    let line = CylinderGrid::new(grid.n_t, 1, grid.half_width)?;
    let w = WStar::new(a, p)?;
    let s = Spectral::new(&line, a);
    let out = iterate(&s, &line, p, line.sample(|t, _| w.eval(t)), opts.el_tol, opts.max_iter)?;
    Ok((CylinderField::new(line, a, p, out.values)?, out.quotient))
}

/// Minimize `F` for `(a, p)` and compare with the θ-independent extremal.
pub fn minimize_f(a: f64, p: f64, init: InitStrategy, opts: &SolverOptions) -> Result<SolveReport> {
    let params = CknParams::from_ap(a, p)?;
    if !(opts.el_tol > 0.0 && opts.tol_break >= 0.0) {
        return Err(Error::Config("el_tol must be positive and tol_break non-negative".into()));
    }
    let grid = opts.grid(a)?;
    let w_star = WStar::new(params.a(), p)?;
    let s = Spectral::new(&grid, a);
    let init = initial_values(&grid, &w_star, &init)?;
    let init_field = CylinderField::new(grid, a, p, init.clone())?;
    let f_init = super::quotient(&s, &init_field)?;

    let out = iterate(&s, &grid, p, init, opts.el_tol, opts.max_iter)?;
    let (_, f_radial) = radial_minimizer(a, p, opts)?;
    let field = CylinderField::new(grid, a, p, out.values)?;
    let fraction = theta_fraction(&s, &out.spec)?;
    let broken = out.quotient < f_radial * (1.0 - opts.tol_break);
    Ok(SolveReport {
        pohozaev_residual: pohozaev_residual(&field),
        field: Some(field),
        a,
        p,
        f_init,
        f_value: out.quotient,
        f_radial,
        el_residual: out.residual,
        theta_energy_fraction: fraction,
        classification: if broken { Classification::Broken } else { Classification::Radial },
        neutral: !broken && fraction > NEUTRAL_FRACTION,
        iterations: out.iterations,
    })
}
