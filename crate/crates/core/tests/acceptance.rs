//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! fails if any criterion fails.

use std::time::Instant;

use cknmt::closed_forms::{c_p, w_star_lp_norm, w_star_lp_norm_quadrature};
use cknmt::cylinder::{minimize_f, Classification, InitStrategy, SolverOptions};
use cknmt::mt_lab::{
    ckn_to_mt_limit, circle_inequality_check, corpus, frame_transport, log_slope_fit, mt_check, violation_scan,
    MtForm, PlaneFn, Witness,
};
use cknmt::numerics::bessel_i0;
use cknmt::region_mapper::{boundary_gap, boundary_slope, sweep, ClassifyMode, GridSpec, RegionOptions};
use cknmt::spectrum::mode_spectrum;

const SEED: u64 = 20_240_601;
const A_GRID: [f64; 5] = [0.05, 0.1, 0.5, 1.0, 2.0];
const P_GRID: [f64; 5] = [2.5, 3.0, 4.0, 6.0, 10.0];

type Outcome = cknmt::Result<(bool, String)>;

fn eigenvalues() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for a in A_GRID {
        for p in P_GRID {
            let exact = -(a * p / 2.0).powi(2);
            let r = mode_spectrum(a, p, 1)?;
            worst = worst.max(((r.ground_eigenvalue - exact) / exact).abs());
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Ok((worst <= 1e-6 && secs < 30.0, format!("max rel. error {worst:.2e} over 25 points in {secs:.2}s")))
}

fn closed_form_norms() -> Outcome {
    let mut worst: f64 = 0.0;
    for a in A_GRID {
        for p in P_GRID {
            let closed = w_star_lp_norm(a, p)?;
            worst = worst.max(((closed - w_star_lp_norm_quadrature(a, p)?) / closed).abs());
        }
    }
    let c4 = (c_p(4.0)? - 1.0 / 6.0).abs();
    Ok((worst <= 1e-8 && c4 <= 1e-10, format!("max rel. error {worst:.2e}; |c_4 - 1/6| = {c4:.1e}")))
}

fn symmetry_breaking(pohozaev: &mut Vec<f64>) -> Outcome {
    let opts = SolverOptions::default();
    let mut ok = true;
    let mut detail = Vec::new();
    for (a, p) in [(1.0, 3.0), (1.0, 4.0)] {
        let start = Instant::now();
        let r = minimize_f(a, p, InitStrategy::RadialPlusMode1, &opts)?;
        let gap = (r.f_radial - r.f_value) / r.f_radial;
        let secs = start.elapsed().as_secs_f64();
        ok &= r.classification == Classification::Broken && gap >= 1e-3 && secs < 300.0;
        pohozaev.push(r.pohozaev_residual);
        detail.push(format!("({a},{p}) {:?} gap {gap:.3e} {secs:.1}s", r.classification));
    }
    let start = Instant::now();
    let r = minimize_f(0.1, 10.0, InitStrategy::RadialPlusMode1, &opts)?;
    let secs = start.elapsed().as_secs_f64();
    ok &= r.classification == Classification::Radial && r.theta_energy_fraction <= 1e-8 && secs < 300.0;
    pohozaev.push(r.pohozaev_residual);
    detail.push(format!("(0.1,10) {:?} θ-fraction {:.1e} {secs:.1}s", r.classification, r.theta_energy_fraction));
    Ok((ok, detail.join("; ")))
}

fn pohozaev(residuals: &[f64]) -> Outcome {
    let worst = residuals.iter().cloned().fold(0.0, f64::max);
    Ok((!residuals.is_empty() && worst <= 1e-6, format!("max residual {worst:.2e} over {} solves", residuals.len())))
}

fn counterexample() -> Outcome {
    let eps: Vec<f64> = (1..=12).map(|k| 10f64.powi(-k)).collect();
    let first = violation_scan(1.0, &eps)?.into_iter().find(|p| p.report.violated).map(|p| p.eps);
    let fit = log_slope_fit(1.0, &eps[4..])?;
    Ok((
        first.is_some() && fit.relative_error <= 0.02,
        format!("first violation at ε = {first:?}; slope {:.5} vs 0.5", fit.slope),
    ))
}

fn corpus_holds() -> Outcome {
    let fns = corpus(SEED, 50);
    let mut violations = 0;
    let mut checks = 0;
    for alpha in [-0.9, -0.5, 0.0, 0.5, 1.0, 3.0] {
        for f in &fns {
            checks += 1;
            violations += mt_check(alpha, f, MtForm::Strengthened)?.violated as usize;
            if alpha <= 0.0 {
                checks += 1;
                violations += mt_check(alpha, f, MtForm::Plain)?.violated as usize;
            }
        }
    }
    Ok((violations == 0, format!("{violations} violations in {checks} checks")))
}

fn circle() -> Outcome {
    let (lhs, rhs) = circle_inequality_check(|x| Witness.value(x))?;
    let ratio = lhs / rhs;
    let oracle = (ratio - bessel_i0(1.0)).abs();
    Ok((ratio >= 1.26 && oracle <= 1e-6, format!("ratio {ratio:.12}, |ratio - I₀(1)| = {oracle:.1e}")))
}

fn frames() -> Outcome {
    let mut worst: f64 = 0.0;
    for (i, f) in corpus(SEED + 1, 10).iter().enumerate() {
        let alpha = [-0.5, 0.0, 1.0, 2.0, 5.0][i % 5];
        worst = worst.max(frame_transport(alpha, f, MtForm::Strengthened)?.max_discrepancy);
    }
    Ok((worst <= 1e-8, format!("max discrepancy {worst:.2e} over 10 functions")))
}

fn ckn_limit() -> Outcome {
    let f = &corpus(SEED, 1)[0];
    let mut ok = true;
    let mut detail = Vec::new();
    for alpha in [0.0, 1.0] {
        let fit = ckn_to_mt_limit(alpha, f, &[0.1, 0.05, 0.025, 0.0125])?;
        ok &= fit.relative_error <= 0.05;
        detail.push(format!("α={alpha}: {:.5} vs {:.5} ({:.2e})", fit.fitted_coefficient, fit.expected_coefficient, fit.relative_error));
    }
    Ok((ok, detail.join("; ")))
}

fn region() -> Outcome {
    let grid = GridSpec { a_min: 0.1, a_max: 10.0, n_a: 15, n_b: 15, mirror: true };
    let s = sweep(&grid, ClassifyMode::FormulaOnly, &RegionOptions::default())?;
    let half = s.points.len() / 2;
    let (neg, pos) = s.points.split_at(half);
    let kelvin = pos.len() == neg.len()
        && pos.iter().all(|x| neg.iter().any(|y| (y.a + x.a).abs() < 1e-12 && (y.b - (x.b - 2.0 * x.a)).abs() < 1e-9 && y.predicted == x.predicted));
    let slope = boundary_slope(1e-3)?;
    let gap = boundary_gap(10.0)?.max(boundary_gap(-10.0)?);
    Ok((
        kelvin && (slope - 2.0).abs() <= 0.02 && gap < 0.005,
        format!("Kelvin symmetric: {kelvin}; slope {slope:.6}; gap {gap:.2e}"),
    ))
}

#[test]
fn acceptance() {
    let mut residuals = Vec::new();
    let mut results: Vec<(&str, Outcome)> = vec![
        ("eigenvalue exactness", eigenvalues()),
        ("closed form vs quadrature", closed_form_norms()),
        ("symmetry breaking", symmetry_breaking(&mut residuals)),
    ];
    results.push(("Pohozaev identity", pohozaev(&residuals)));
    results.extend([
        ("MT counterexample", counterexample()),
        ("MT corpus", corpus_holds()),
        ("circle inequality", circle()),
        ("frame transport", frames()),
        ("CKN to MT limit", ckn_limit()),
        ("region map", region()),
    ]);
    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        let (pass, detail) = match outcome {
            Ok((pass, detail)) => (*pass, detail.clone()),
            Err(e) => (false, format!("error: {e}")),
        };
        failed += !pass as usize;
        println!("{} {:>2}. {name}: {detail}", if pass { "PASS" } else { "FAIL" }, i + 1);
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
