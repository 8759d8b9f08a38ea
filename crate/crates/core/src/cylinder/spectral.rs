//! Two-dimensional Fourier transforms on the periodized cylinder grid and the
//! operators that are diagonal in that basis.

use std::f64::consts::PI;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::CylinderGrid;

/// FFT plans and symbols for one grid and one `a`.
pub(crate) struct Spectral {
    n_t: usize,
    n_theta: usize,
    fwd_t: Arc<dyn Fft<f64>>,
    inv_t: Arc<dyn Fft<f64>>,
    fwd_theta: Arc<dyn Fft<f64>>,
    inv_theta: Arc<dyn Fft<f64>>,
    /// Wavenumbers for the first derivative (zero at the Nyquist index).
    kt: Vec<f64>,
    ktheta: Vec<f64>,
    /// Symbol of `-Δ + a²`, row-major like the field.
    sigma: Vec<f64>,
    area: f64,
}

fn wavenumbers(n: usize, scale: f64) -> (Vec<f64>, Vec<f64>) {
    let mut first = vec![0.0; n];
    let mut second = vec![0.0; n];
    for (i, (d1, d2)) in first.iter_mut().zip(second.iter_mut()).enumerate() {
        let m = if 2 * i <= n { i as f64 } else { i as f64 - n as f64 };
        let k = m * scale;
        *d2 = k * k;
        *d1 = if n % 2 == 0 && 2 * i == n { 0.0 } else { k };
    }
    (first, second)
}

impl Spectral {
    pub(crate) fn new(grid: &CylinderGrid, a: f64) -> Self {
        let (n_t, n_theta) = (grid.n_t, grid.n_theta);
        let mut planner = FftPlanner::new();
        let (kt, kt2) = wavenumbers(n_t, PI / grid.half_width);
        let (ktheta, ktheta2) = wavenumbers(n_theta, 1.0);
        let mut sigma = Vec::with_capacity(n_t * n_theta);
        for &x in &kt2 {
            for &y in &ktheta2 {
                sigma.push(x + y + a * a);
            }
        }
        Self {
            n_t,
            n_theta,
            fwd_t: planner.plan_fft_forward(n_t),
            inv_t: planner.plan_fft_inverse(n_t),
            fwd_theta: planner.plan_fft_forward(n_theta),
            inv_theta: planner.plan_fft_inverse(n_theta),
            kt,
            ktheta,
            sigma,
            area: grid.cell_area(),
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.n_t * self.n_theta
    }

    pub(crate) fn sigma(&self) -> &[f64] {
        &self.sigma
    }

    fn transform(&self, buf: &mut [Complex64], along_theta: &dyn Fft<f64>, along_t: &dyn Fft<f64>) {
        if self.n_theta > 1 {
            along_theta.process(buf);
        }
        let (nt, nth) = (self.n_t, self.n_theta);
        let mut tr = vec![Complex64::new(0.0, 0.0); buf.len()];
        for i in 0..nt {
            for j in 0..nth {
                tr[j * nt + i] = buf[i * nth + j];
            }
        }
        along_t.process(&mut tr);
        for i in 0..nt {
            for j in 0..nth {
                buf[i * nth + j] = tr[j * nt + i];
            }
        }
    }

    pub(crate) fn forward(&self, values: &[f64]) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.transform(&mut buf, self.fwd_theta.as_ref(), self.fwd_t.as_ref());
        buf
    }

    pub(crate) fn inverse(&self, spec: &[Complex64]) -> Vec<f64> {
        let mut buf = spec.to_vec();
        self.transform(&mut buf, self.inv_theta.as_ref(), self.inv_t.as_ref());
        let scale = 1.0 / self.len() as f64;
        buf.iter().map(|c| c.re * scale).collect()
    }

    /// `⟨(-Δ + a²)w, w⟩` from the coefficients of `w`.
    pub(crate) fn energy(&self, spec: &[Complex64]) -> f64 {
        let s: f64 = spec.iter().zip(&self.sigma).map(|(c, s)| s * c.norm_sqr()).sum();
        s * self.area / self.len() as f64
    }

    /// Energy carried by the modes with non-zero θ frequency.
    pub(crate) fn nonradial_energy(&self, spec: &[Complex64]) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n_t {
            for j in 1..self.n_theta {
                let k = i * self.n_theta + j;
                s += self.sigma[k] * spec[k].norm_sqr();
            }
        }
        s * self.area / self.len() as f64
    }

    pub(crate) fn d_t(&self, spec: &[Complex64]) -> Vec<f64> {
        let mut d = spec.to_vec();
        for i in 0..self.n_t {
            let k = Complex64::new(0.0, self.kt[i]);
            for c in &mut d[i * self.n_theta..(i + 1) * self.n_theta] {
                *c *= k;
            }
        }
        self.inverse(&d)
    }

    pub(crate) fn d_theta(&self, spec: &[Complex64]) -> Vec<f64> {
        let mut d = spec.to_vec();
        for (idx, c) in d.iter_mut().enumerate() {
            *c *= Complex64::new(0.0, self.ktheta[idx % self.n_theta]);
        }
        self.inverse(&d)
    }
}
