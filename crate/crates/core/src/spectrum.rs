//! Linearization of `F` at the θ-independent extremal `w*`.
//!
//! On functions with zero θ-mean the second variation is
//! `Q(ψ) = ‖∇ψ‖² + a²‖ψ‖² - (p-1)∫|w*|^{p-2}ψ²`. The θ-mode `k` reduces it to
//! the Pöschl-Teller operator `-d²/dt² - β sech²(κt)` shifted by `k² + a²`,
//! with `κ = (p-2)|a|/2` and `β = a²p(p-1)/2`, whose ground state is
//! `-(ap/2)²`.

use serde::{Deserialize, Serialize};

use crate::closed_forms::{breaks_symmetry, mu1, CknParams, WStar};
use crate::cylinder::{CylinderField, Spectral};
use crate::error::{Error, Result};
use crate::numerics::{solve_schrodinger_ground, EigenGrid};

/// Maximum number of profile samples kept in a report.
const PROFILE_SAMPLES: usize = 401;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub a: f64,
    pub p: f64,
    pub mode_k: u32,
    /// `k² + a² + λ₁`.
    pub numeric_lowest: f64,
    /// Ground eigenvalue `λ₁` of the Pöschl-Teller operator.
    pub ground_eigenvalue: f64,
    /// `1 + a² - (ap/2)²`, for `k = 1` only.
    pub exact_lowest_mode1: Option<f64>,
    /// `|numeric - exact| / (ap/2)²`, for `k = 1` only.
    pub agreement: Option<f64>,
    /// `(t, f(t))` samples of the normalized ground state.
    pub eigenfunction: Vec<[f64; 2]>,
}

/// Pöschl-Teller parameters `(κ, β)` of the linearized operator.
pub fn poschl_teller_parameters(a: f64, p: f64) -> Result<(f64, f64)> {
    let params = CknParams::from_ap(a, p)?;
    let a = params.a().abs();
    Ok((0.5 * (p - 2.0) * a, 0.5 * a * a * p * (p - 1.0)))
}

/// `Q(ψ)` on the grid of `psi`, which must have zero θ-mean on every slice.
pub fn q_form(a: f64, p: f64, psi: &CylinderField) -> Result<f64> {
    let w = WStar::new(a, p)?;
    let n = psi.grid.n_theta;
    let scale = psi.max_abs();
    for (i, m) in psi.theta_mean().iter().enumerate() {
        if m.abs() > 1e-10 * scale {
            return Err(Error::domain(format!(
                "ψ must have zero θ-mean on each slice; slice t={} has mean {m:e}",
                psi.grid.t(i)
            )));
        }
    }
    let s = Spectral::new(&psi.grid, a);
    let gradient = s.energy(&s.forward(&psi.values));
    let mut potential = 0.0;
    for i in 0..psi.grid.n_t {
        let weight = (p - 1.0) * w.eval(psi.grid.t(i)).powf(p - 2.0);
        potential += weight * psi.values[i * n..(i + 1) * n].iter().map(|v| v * v).sum::<f64>();
    }
    Ok(gradient - potential * psi.grid.cell_area())
}

/// Lowest value of the mode-`k` Rayleigh quotient of `Q`.
pub fn mode_spectrum(a: f64, p: f64, k: u32) -> Result<SpectrumReport> {
    mode_spectrum_on(a, p, k, EigenGrid::default())
}

pub fn mode_spectrum_on(a: f64, p: f64, k: u32, grid: EigenGrid) -> Result<SpectrumReport> {
    if k == 0 {
        return Err(Error::domain("mode index k must be at least 1"));
    }
    let (kappa, beta) = poschl_teller_parameters(a, p)?;
    let ground = solve_schrodinger_ground(kappa, beta, grid)?;
    let shift = (k as f64).powi(2) + a * a;
    let numeric = shift + ground.eigenvalue;
    let (exact, agreement) = if k == 1 {
        let exact = mu1(a, p)?;
        let scale = (0.5 * a * p).powi(2);
        (Some(exact), Some((numeric - exact).abs() / scale))
    } else {
        (None, None)
    };
    let stride = ground.eigenfunction.len().div_ceil(PROFILE_SAMPLES).max(1);
    let eigenfunction = ground
        .grid()
        .zip(&ground.eigenfunction)
        .step_by(stride)
        .map(|(t, &f)| [t, f])
        .collect();
    Ok(SpectrumReport {
        a,
        p,
        mode_k: k,
        numeric_lowest: numeric,
        ground_eigenvalue: ground.eigenvalue,
        exact_lowest_mode1: exact,
        agreement,
        eigenfunction,
    })
}

/// `(stable, |1 + a² - (ap/2)²|)`: stable when the mode-1 value is positive.
pub fn stability_verdict(a: f64, p: f64) -> Result<(bool, f64)> {
    let m = mu1(a, p)?;
    let stable = m > 0.0;
    debug_assert!(m == 0.0 || stable != breaks_symmetry(a, p)?);
    Ok((stable, m.abs()))
}
