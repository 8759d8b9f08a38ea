//! Phase diagram of the `(a, b)` strip `a < b < a + 1`: which parameters
//! force non-radial extremals, by the closed-form criterion `b < h(a)` and
//! optionally by direct minimization on the cylinder.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_forms::{h_curve, radial_quotient, symmetry_margin};
use crate::cylinder::{minimize_f, Classification, InitStrategy, SolverOptions};
use crate::error::{Error, Result};

/// Label from the closed-form criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Predicted {
    /// `b < h(a)`: every extremal is non-radial.
    Broken,
    /// Above the band; radial extremals are not excluded.
    RadialCandidate,
    /// `h(a) ≤ b < h(a) + band_eps`, left unclassified.
    NeutralBand,
}

impl fmt::Display for Predicted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Predicted::Broken => "Broken",
            Predicted::RadialCandidate => "RadialCandidate",
            Predicted::NeutralBand => "NeutralBand",
        })
    }
}

/// Whether to run the cylinder solver as well.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassifyMode {
    FormulaOnly,
    WithSolve,
}

impl FromStr for ClassifyMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "formula" | "formula-only" | "formulaonly" => Ok(ClassifyMode::FormulaOnly),
            "solve" | "with-solve" | "withsolve" => Ok(ClassifyMode::WithSolve),
            _ => Err(Error::domain(format!("unknown mode {s:?}; expected formula or solve"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionOptions {
    /// Width of the unclassified band above `h(a)`, in `b` units.
    pub band_eps: f64,
    pub solver: SolverOptions,
}

impl Default for RegionOptions {
    fn default() -> Self {
        Self { band_eps: 0.02, solver: SolverOptions::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionPoint {
    pub a: f64,
    pub b: f64,
    pub p: f64,
    pub predicted: Predicted,
    pub solver_class: Option<Classification>,
    #[serde(rename = "F_radial")]
    pub f_radial: f64,
    #[serde(rename = "F_min")]
    pub f_min: Option<f64>,
    /// `b - h(a)`.
    pub margin: f64,
    /// Why the solver produced no class, when it did not.
    pub note: Option<String>,
}

/// Closed-form label of `(a, b)` for a band of width `band_eps`.
pub fn predict(a: f64, b: f64, band_eps: f64) -> Result<Predicted> {
    check_point(a, b)?;
    let margin = symmetry_margin(a, b);
    Ok(if margin < 0.0 {
        Predicted::Broken
    } else if margin < band_eps {
        Predicted::NeutralBand
    } else {
        Predicted::RadialCandidate
    })
}

fn check_point(a: f64, b: f64) -> Result<()> {
    if !(a.is_finite() && b.is_finite()) || a == 0.0 {
        return Err(Error::domain(format!("need finite a ≠ 0 and b, got ({a}, {b})")));
    }
    if !(a < b && b < a + 1.0) {
        return Err(Error::domain(format!("need a < b < a + 1, got ({a}, {b})")));
    }
    Ok(())
}

pub fn classify_point(a: f64, b: f64, mode: ClassifyMode, opts: &RegionOptions) -> Result<RegionPoint> {
    let predicted = predict(a, b, opts.band_eps)?;
    let p = 2.0 / (b - a);
    let mut point = RegionPoint {
        a,
        b,
        p,
        predicted,
        solver_class: None,
        f_radial: radial_quotient(a.abs(), p)?,
        f_min: None,
        margin: symmetry_margin(a, b),
        note: None,
    };
    if mode == ClassifyMode::WithSolve {
        match minimize_f(a.abs(), p, InitStrategy::RadialPlusMode1, &opts.solver) {
            Ok(report) => {
                point.solver_class = Some(report.classification);
                point.f_min = Some(report.f_value);
            }
            Err(e) if e.is_convergence_failure() => point.note = Some(e.to_string()),
            Err(e) => return Err(e),
        }
    }
    Ok(point)
}

/// Rectangular grid: `n_a` values of `a` evenly spaced in `[a_min, a_max]`
/// and, for each, `n_b` values `b = a + (j+1)/(n_b+1)` strictly inside the strip.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub a_min: f64,
    pub a_max: f64,
    pub n_a: usize,
    pub n_b: usize,
    /// Also sweep the mirror column `-a` for every `a`.
    pub mirror: bool,
}

impl GridSpec {
    pub fn points(&self) -> Result<Vec<(f64, f64)>> {
        if self.n_a == 0 || self.n_b == 0 {
            return Err(Error::domain("grid needs at least one point per axis"));
        }
        if !(self.a_min.is_finite() && self.a_max.is_finite()) || self.a_min > self.a_max {
            return Err(Error::domain("need a_min ≤ a_max"));
        }
        let a_values: Vec<f64> = (0..self.n_a)
            .map(|i| {
                if self.n_a == 1 {
                    self.a_min
                } else {
                    self.a_min + (self.a_max - self.a_min) * i as f64 / (self.n_a - 1) as f64
                }
            })
            .collect();
        if a_values.iter().any(|&a| a == 0.0) {
            return Err(Error::domain("grid must avoid a = 0"));
        }
        let mut columns = a_values.clone();
        if self.mirror {
            columns = a_values.iter().rev().map(|a| -a).chain(a_values.iter().copied()).collect();
        }
        Ok(columns
            .iter()
            .flat_map(|&a| (0..self.n_b).map(move |j| (a, a + (j + 1) as f64 / (self.n_b + 1) as f64)))
            .collect())
    }
}

/// Counts per class and the empirical boundary slopes `b/a` near the origin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub broken: usize,
    pub radial_candidate: usize,
    pub neutral_band: usize,
    pub errors: usize,
    /// Solver classes that disagree with a `Broken` prediction.
    pub solver_disagreements: usize,
    /// Boundary slope on the `a > 0` side, from the column nearest the origin.
    pub slope_positive: Option<f64>,
    /// Boundary slope on the `a < 0` side, from the column nearest the origin.
    pub slope_negative: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sweep {
    pub points: Vec<RegionPoint>,
    /// `(a, b, message)` for points that failed, in input order.
    pub errors: Vec<(f64, f64, String)>,
    pub summary: SweepSummary,
}

/// Classifies every grid point, in parallel, keeping input order.
pub fn sweep(grid: &GridSpec, mode: ClassifyMode, opts: &RegionOptions) -> Result<Sweep> {
    let coords = grid.points()?;
    let results: Vec<Result<RegionPoint>> =
        coords.par_iter().map(|&(a, b)| classify_point(a, b, mode, opts)).collect();
    let mut points = Vec::new();
    let mut errors = Vec::new();
    for ((a, b), r) in coords.into_iter().zip(results) {
        match r {
            Ok(p) => points.push(p),
            Err(e) => errors.push((a, b, e.to_string())),
        }
    }
    let count = |c: Predicted| points.iter().filter(|p| p.predicted == c).count();
    let summary = SweepSummary {
        broken: count(Predicted::Broken),
        radial_candidate: count(Predicted::RadialCandidate),
        neutral_band: count(Predicted::NeutralBand),
        errors: errors.len(),
        solver_disagreements: points
            .iter()
            .filter(|p| p.predicted == Predicted::Broken && p.solver_class == Some(Classification::Radial))
            .count(),
        slope_positive: observed_slope(&points, 1.0),
        slope_negative: observed_slope(&points, -1.0),
    };
    Ok(Sweep { points, errors, summary })
}

/// Midpoint between the highest `Broken` and lowest non-`Broken` `b` in the
/// column of smallest `|a|` on one side, divided by `a`.
fn observed_slope(points: &[RegionPoint], side: f64) -> Option<f64> {
    let a0 = points.iter().filter(|p| p.a * side > 0.0).map(|p| p.a).min_by(|x, y| x.abs().total_cmp(&y.abs()))?;
    let column: Vec<&RegionPoint> = points.iter().filter(|p| p.a == a0).collect();
    let top_broken = column.iter().filter(|p| p.predicted == Predicted::Broken).map(|p| p.b).reduce(f64::max)?;
    let low_other = column.iter().filter(|p| p.predicted != Predicted::Broken).map(|p| p.b).reduce(f64::min)?;
    Some(0.5 * (top_broken + low_other) / a0)
}

/// Central-difference slope of `h` at `a`, with step `a/10`.
pub fn boundary_slope(a: f64) -> Result<f64> {
    let d = 0.1 * a.abs();
    Ok((h_curve(a + d)? - h_curve(a - d)?) / (2.0 * d))
}

/// `a + 1 - h(a)`, the width of the strip above the boundary.
pub fn boundary_gap(a: f64) -> Result<f64> {
    Ok(a + 1.0 - h_curve(a)?)
}

pub const CSV_HEADER: &str = "a,b,p,predicted,solver_class,F_radial,F_min,margin";

/// One row per point, floats with 17 significant digits.
pub fn to_csv(points: &[RegionPoint]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for p in points {
        let class = match p.solver_class {
            Some(Classification::Radial) => "Radial",
            Some(Classification::Broken) => "Broken",
            None => "",
        };
        let f_min = p.f_min.map(|f| format!("{f:.16e}")).unwrap_or_default();
        let _ = writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{},{},{:.16e},{},{:.16e}",
            p.a, p.b, p.p, p.predicted, class, p.f_radial, f_min, p.margin
        );
    }
    out
}

/// Deterministic SVG of the sweep with the lines `b = a`, `b = a + 1` and
/// the curve `b = h(a)`.
pub fn to_svg(points: &[RegionPoint]) -> String {
    const W: f64 = 640.0;
    const H: f64 = 480.0;
    const PAD: f64 = 48.0;
    let a_lo = points.iter().map(|p| p.a).fold(f64::INFINITY, f64::min).min(0.0);
    let a_hi = points.iter().map(|p| p.a).fold(f64::NEG_INFINITY, f64::max).max(0.0);
    let (a_lo, a_hi) = if a_hi - a_lo > 0.0 { (a_lo, a_hi) } else { (a_lo - 1.0, a_hi + 1.0) };
    let (b_lo, b_hi) = (a_lo, a_hi + 1.0);
    let sx = |a: f64| PAD + (a - a_lo) / (a_hi - a_lo) * (W - 2.0 * PAD);
    let sy = |b: f64| H - PAD - (b - b_lo) / (b_hi - b_lo) * (H - 2.0 * PAD);
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#);
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="black"/>"#,
        PAD,
        H - PAD,
        W - PAD,
        H - PAD
    );
    let _ = writeln!(s, r#"<line x1="{PAD:.3}" y1="{PAD:.3}" x2="{PAD:.3}" y2="{:.3}" stroke="black"/>"#, H - PAD);
    let _ = writeln!(s, r#"<text x="{:.3}" y="{:.3}" font-size="14">a</text>"#, W - PAD + 8.0, H - PAD + 4.0);
    let _ = writeln!(s, r#"<text x="{:.3}" y="{:.3}" font-size="14">b</text>"#, PAD - 4.0, PAD - 10.0);
    let polyline = |s: &mut String, pts: Vec<(f64, f64)>, colour: &str| {
        let coords: Vec<String> = pts.iter().map(|&(a, b)| format!("{:.3},{:.3}", sx(a), sy(b))).collect();
        let _ = writeln!(s, r#"<polyline fill="none" stroke="{colour}" points="{}"/>"#, coords.join(" "));
    };
    let samples: Vec<f64> = (0..400).map(|i| a_lo + (a_hi - a_lo) * i as f64 / 399.0).collect();
    polyline(&mut s, samples.iter().map(|&a| (a, a)).collect(), "gray");
    polyline(&mut s, samples.iter().map(|&a| (a, a + 1.0)).collect(), "gray");
    let h_side = |pred: fn(&f64) -> bool| samples.iter().copied().filter(pred).filter_map(|a| h_curve(a).ok().map(|h| (a, h)));
    let neg: Vec<(f64, f64)> = h_side(|a| *a < 0.0).collect();
    let pos: Vec<(f64, f64)> = h_side(|a| *a > 0.0).collect();
    for side in [neg, pos] {
        if side.len() > 1 {
            polyline(&mut s, side, "blue");
        }
    }
    for p in points {
        let colour = match p.predicted {
            Predicted::Broken => "crimson",
            Predicted::RadialCandidate => "seagreen",
            Predicted::NeutralBand => "orange",
        };
        let _ = writeln!(s, r#"<circle cx="{:.3}" cy="{:.3}" r="2" fill="{colour}"/>"#, sx(p.a), sy(p.b));
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::kelvin_map;

    #[test]
    fn examples() {
        assert_eq!(predict(1.0, 1.2, 0.02).unwrap(), Predicted::Broken);
        assert_eq!(predict(0.05, 0.9, 0.02).unwrap(), Predicted::RadialCandidate);
        let h = h_curve(0.7).unwrap();
        assert_eq!(predict(0.7, h, 0.02).unwrap(), Predicted::NeutralBand);
        assert!(predict(0.0, 0.5, 0.02).is_err());
        assert!(predict(1.0, 2.5, 0.02).is_err());
    }

    #[test]
    fn kelvin_symmetry_is_exact() {
        let grid = GridSpec { a_min: 0.05, a_max: 3.0, n_a: 15, n_b: 15, mirror: false };
        for (a, b) in grid.points().unwrap() {
            let (a2, b2) = kelvin_map(a, b).unwrap();
            assert_eq!(predict(a, b, 0.02).unwrap(), predict(a2, b2, 0.02).unwrap(), "({a}, {b})");
        }
    }

    #[test]
    fn boundary_asymptotics() {
        assert!((boundary_slope(1e-3).unwrap() / 2.0 - 1.0).abs() < 0.01);
        assert!(boundary_gap(10.0).unwrap() < 0.005 && boundary_gap(-10.0).unwrap() < 0.005);
        let mut last = f64::INFINITY;
        for a in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
            let g = boundary_gap(a).unwrap();
            assert!(g > 0.0 && g < last && (boundary_gap(-a).unwrap() - g).abs() < 1e-12);
            last = g;
        }
    }

    #[test]
    fn coarse_sweep_is_total_and_ordered() {
        let grid = GridSpec { a_min: 0.05, a_max: 2.0, n_a: 20, n_b: 20, mirror: true };
        let s = sweep(&grid, ClassifyMode::FormulaOnly, &RegionOptions::default()).unwrap();
        assert_eq!(s.points.len(), 800);
        assert_eq!(s.summary.broken + s.summary.radial_candidate + s.summary.neutral_band, 800);
        let coords: Vec<(f64, f64)> = s.points.iter().map(|p| (p.a, p.b)).collect();
        assert_eq!(coords, grid.points().unwrap());
        // Within half a b-step of the exact boundary, in slope units.
        let tol = 0.5 / 21.0 / 0.05 + 1e-12;
        let slope = s.summary.slope_positive.unwrap();
        assert!((slope - h_curve(0.05).unwrap() / 0.05).abs() <= tol, "{slope}");
        let slope = s.summary.slope_negative.unwrap();
        assert!((slope - h_curve(-0.05).unwrap() / -0.05).abs() <= tol, "{slope}");
    }

    #[test]
    fn outputs_are_deterministic() {
        let grid = GridSpec { a_min: 0.2, a_max: 1.0, n_a: 4, n_b: 3, mirror: false };
        let opts = RegionOptions::default();
        let s1 = sweep(&grid, ClassifyMode::FormulaOnly, &opts).unwrap();
        let s2 = sweep(&grid, ClassifyMode::FormulaOnly, &opts).unwrap();
        assert_eq!(to_csv(&s1.points), to_csv(&s2.points));
        assert_eq!(to_svg(&s1.points), to_svg(&s2.points));
        let csv = to_csv(&s1.points);
        assert!(csv.starts_with("a,b,p,predicted,solver_class,F_radial,F_min,margin\n"));
        assert_eq!(csv.lines().count(), 13);
        assert!(to_svg(&s1.points).matches("<circle").count() == 12);
    }
}
