//! Shared numerical kernels: quadrature, special functions and a 1D
//! Schrödinger ground-state solver.

mod eigen;
mod gamma;
mod quadrature;

pub use eigen::{solve_schrodinger_ground, EigenGrid, EigenResult};
pub use gamma::{bessel_i0, beta_integral, log_gamma};
pub use quadrature::{
    integrate_1d, integrate_tanh_sinh, periodic_mean, periodic_mean_with, Domain, Estimate, IntegrationOptions, Integrator, QuadratureRule, RuleKind,
};
