//! Command-line front end. Every run prints its main result as JSON and
//! writes it, with any CSV/SVG artifacts and a `manifest.json`, to the output
//! directory.
//!
//! Exit codes: 0 success, 1 domain error, 2 numerical non-convergence,
//! 64 usage or configuration error.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::closed_forms::{
    breaks_symmetry, c_p, c_p_gamma, h_curve, kelvin_map, mu1, radial_quotient, symmetry_margin, w_star_lp_norm,
    w_star_lp_norm_quadrature, CknParams, WStar,
};
use crate::cylinder::{minimize_f, InitStrategy, SolverOptions};
use crate::error::{Error, Result};
use crate::geometry::{integrate_measure, sigma_alpha, sigma_alpha_inv, Frame, FrameFn, MeasureSpec, PolarPoint};
use crate::mt_lab::{
    ckn_to_mt_limit, corpus, cylinder_pieces, frame_transport, log_slope_fit, sphere_pieces, violation_scan,
    Constant, CorpusFn, MtForm, MtReport, OnCylinder, OnSphere, PlaneFn, VEps, Witness, DEFAULT_REL_TOL,
};
use crate::region_mapper::{sweep, to_csv, to_svg, ClassifyMode, GridSpec, RegionOptions};
use crate::spectrum::mode_spectrum;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_CONVERGENCE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "cknmt", version, about = "Weighted CKN and Moser-Trudinger inequalities, numerically")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Serialize)]
struct GlobalArgs {
    /// Config file of `key = value` lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    output_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    rel_tol: Option<f64>,
    /// Cylinder grid points along `t`.
    #[arg(long, global = true)]
    n_t: Option<usize>,
    /// Cylinder grid points along `θ`.
    #[arg(long, global = true)]
    n_theta: Option<usize>,
    /// Cylinder half-length `T`.
    #[arg(long, global = true)]
    half_width: Option<f64>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Closed-form quantities at one (a, b) or (a, p).
    #[command(allow_negative_numbers = true)]
    ClosedForms {
        #[arg(long)]
        a: f64,
        #[arg(long, conflicts_with = "b")]
        p: Option<f64>,
        #[arg(long)]
        b: Option<f64>,
    },
    /// Minimize the cylinder quotient.
    #[command(allow_negative_numbers = true)]
    Solve {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        p: f64,
        /// radial, mode1 or random.
        #[arg(long, default_value = "mode1")]
        init: String,
        #[arg(long)]
        el_tol: Option<f64>,
        #[arg(long)]
        max_iter: Option<usize>,
    },
    /// Linearized spectrum of the k-th angular mode.
    #[command(allow_negative_numbers = true)]
    Spectrum {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Weighted Moser-Trudinger inequality for one function.
    #[command(allow_negative_numbers = true)]
    MtCheck {
        #[arg(long)]
        alpha: f64,
        /// plain or strengthened.
        #[arg(long, default_value = "strengthened")]
        form: String,
        /// plane, sphere or cylinder.
        #[arg(long, default_value = "plane")]
        frame: String,
        /// corpus, witness, veps or constant.
        #[arg(long, default_value = "corpus")]
        function: String,
        /// Corpus member, for `--function corpus`.
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// ε, for `--function veps` (evaluated on 2v_ε).
        #[arg(long, default_value_t = 1e-4)]
        eps: f64,
        /// Value, for `--function constant`.
        #[arg(long, default_value_t = 0.0)]
        value: f64,
    },
    /// Scan the v_ε family for violations and fit the log-slope.
    #[command(allow_negative_numbers = true)]
    Counterexample {
        #[arg(long)]
        alpha: f64,
        /// `hi:lo`, log-spaced and decreasing.
        #[arg(long, default_value = "1e-1:1e-8")]
        eps_scan: String,
        #[arg(long, default_value_t = 1)]
        per_decade: usize,
    },
    /// CKN energy expansion along the limit coupling.
    #[command(allow_negative_numbers = true)]
    Limit {
        #[arg(long)]
        alpha: f64,
        /// Comma-separated decreasing ε values.
        #[arg(long, default_value = "0.1,0.05,0.025")]
        eps: String,
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Sweep the (a, b) strip.
    #[command(allow_negative_numbers = true)]
    RegionScan {
        #[arg(long)]
        amin: f64,
        #[arg(long)]
        amax: f64,
        /// Points along a (and along b unless --nb is given).
        #[arg(long)]
        n: usize,
        #[arg(long)]
        nb: Option<usize>,
        /// formula or solve.
        #[arg(long, default_value = "formula")]
        mode: String,
        /// Also sweep the a < 0 side.
        #[arg(long)]
        mirror: bool,
        #[arg(long, default_value_t = 0.02)]
        band_eps: f64,
    },
    /// Check the change-of-variables identities between the three frames.
    VerifyAppendix,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::ClosedForms { .. } => "closed-forms",
            Command::Solve { .. } => "solve",
            Command::Spectrum { .. } => "spectrum",
            Command::MtCheck { .. } => "mt-check",
            Command::Counterexample { .. } => "counterexample",
            Command::Limit { .. } => "limit",
            Command::RegionScan { .. } => "region-scan",
            Command::VerifyAppendix => "verify-appendix",
        }
    }
}

/// Global settings after merging the config file and flags (flags win).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub output_dir: PathBuf,
    pub seed: u64,
    pub rel_tol: f64,
    pub n_t: Option<usize>,
    pub n_theta: Option<usize>,
    pub half_width: Option<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            output_dir: PathBuf::from("cknmt-out"),
            seed: 0,
            rel_tol: DEFAULT_REL_TOL,
            n_t: None,
            n_theta: None,
            half_width: None,
        }
    }
}

impl RunConfig {
    fn solver_options(&self) -> SolverOptions {
        let d = SolverOptions::default();
        SolverOptions {
            n_t: self.n_t.unwrap_or(d.n_t),
            n_theta: self.n_theta.unwrap_or(d.n_theta),
            half_width: self.half_width.or(d.half_width),
            ..d
        }
    }
}

/// Parses `key = value` lines with `#` comments; unknown keys are errors.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", n + 1)))?;
        let (key, value) = (key.trim(), value.trim());
        let bad = |what: &str| Error::Config(format!("line {}: {key} must be {what}, got {value:?}", n + 1));
        match key {
            "output_dir" => cfg.output_dir = PathBuf::from(value),
            "seed" => cfg.seed = value.parse().map_err(|_| bad("an unsigned integer"))?,
            "rel_tol" => cfg.rel_tol = value.parse().map_err(|_| bad("a number"))?,
            "n_t" => cfg.n_t = Some(value.parse().map_err(|_| bad("an unsigned integer"))?),
            "n_theta" => cfg.n_theta = Some(value.parse().map_err(|_| bad("an unsigned integer"))?),
            "half_width" => cfg.half_width = Some(value.parse().map_err(|_| bad("a number"))?),
            _ => return Err(Error::Config(format!("line {}: unknown key {key:?}", n + 1))),
        }
    }
    Ok(cfg)
}

fn resolve_config(g: &GlobalArgs) -> Result<RunConfig> {
    let mut cfg = match &g.config {
        Some(path) => parse_config(&fs::read_to_string(path)?)?,
        None => RunConfig::default(),
    };
    if let Some(d) = &g.output_dir {
        cfg.output_dir = d.clone();
    }
    if let Some(s) = g.seed {
        cfg.seed = s;
    }
    if let Some(t) = g.rel_tol {
        cfg.rel_tol = t;
    }
    cfg.n_t = g.n_t.or(cfg.n_t);
    cfg.n_theta = g.n_theta.or(cfg.n_theta);
    cfg.half_width = g.half_width.or(cfg.half_width);
    if !(cfg.rel_tol > 0.0 && cfg.rel_tol < 1.0) {
        return Err(Error::Config(format!("rel_tol must lie in (0, 1), got {}", cfg.rel_tol)));
    }
    Ok(cfg)
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) => EXIT_USAGE,
        e if e.is_convergence_failure() => EXIT_CONVERGENCE,
        _ => EXIT_DOMAIN,
    }
}

/// What a subcommand produced: the JSON result and extra files.
struct Output {
    result: Value,
    files: Vec<(String, String)>,
    exit: i32,
}

impl Output {
    fn json(result: Value) -> Self {
        Self { result, files: Vec::new(), exit: EXIT_OK }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cli: &Cli) -> Result<i32> {
    let cfg = resolve_config(&cli.global)?;
    let out = dispatch(&cli.command, &cfg)?;
    let name = cli.command.name();
    fs::create_dir_all(&cfg.output_dir)?;
    let result_name = format!("{name}.json");
    write(&cfg.output_dir, &result_name, &pretty(&out.result)?)?;
    let mut outputs = vec![result_name];
    for (file, contents) in &out.files {
        write(&cfg.output_dir, file, contents)?;
        outputs.push(file.clone());
    }
    let manifest = json!({
        "command": name,
        "library_version": env!("CARGO_PKG_VERSION"),
        "config": cfg,
        "inputs": cli.command,
        "outputs": outputs,
    });
    write(&cfg.output_dir, "manifest.json", &pretty(&manifest)?)?;
    println!("{}", pretty(&out.result)?.trim_end());
    Ok(out.exit)
}

fn pretty(v: &Value) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<()> {
    fs::write(dir.join(name), contents)?;
    Ok(())
}

fn to_value<T: Serialize>(t: &T) -> Result<Value> {
    Ok(serde_json::to_value(t)?)
}

fn dispatch(cmd: &Command, cfg: &RunConfig) -> Result<Output> {
    match cmd {
        Command::ClosedForms { a, p, b } => closed_forms(*a, *p, *b),
        Command::Solve { a, p, init, el_tol, max_iter } => {
            let init = match init.as_str() {
                "radial" => InitStrategy::Radial,
                "mode1" => InitStrategy::RadialPlusMode1,
                "random" => InitStrategy::Random { seed: cfg.seed },
                other => return Err(Error::Config(format!("unknown init {other:?}; expected radial, mode1 or random"))),
            };
            let mut opts = cfg.solver_options();
            opts.el_tol = el_tol.unwrap_or(opts.el_tol);
            opts.max_iter = max_iter.unwrap_or(opts.max_iter);
            let report = minimize_f(*a, *p, init, &opts)?.without_field();
            Ok(Output::json(to_value(&report)?))
        }
        Command::Spectrum { a, p, k } => {
            let mut report = mode_spectrum(*a, *p, *k)?;
            let mut csv = String::from("t,psi\n");
            for [t, psi] in std::mem::take(&mut report.eigenfunction) {
                csv.push_str(&format!("{t:.16e},{psi:.16e}\n"));
            }
            let mut value = to_value(&report)?;
            if let Value::Object(m) = &mut value {
                m.remove("eigenfunction");
            }
            let mut out = Output::json(value);
            out.files.push(("spectrum-eigenfunction.csv".into(), csv));
            Ok(out)
        }
        Command::MtCheck { alpha, form, frame, function, index, eps, value } => {
            let form: MtForm = form.parse().map_err(config_error)?;
            let frame: Frame = frame.parse().map_err(config_error)?;
            let report = match function.as_str() {
                "corpus" => {
                    let f = corpus_member(cfg.seed, *index);
                    mt_report(*alpha, &f, form, frame, cfg.rel_tol)?
                }
                "witness" => mt_report(*alpha, &Witness, form, frame, cfg.rel_tol)?,
                "constant" => mt_report(*alpha, &Constant(*value), form, frame, cfg.rel_tol)?,
                "veps" => {
                    if frame != Frame::Plane {
                        return Err(Error::domain("v_ε is evaluated in the plane frame only"));
                    }
                    mt_report(*alpha, &VEps::new(*eps)?.scaled(2.0), form, frame, cfg.rel_tol)?
                }
                other => return Err(Error::Config(format!("unknown function {other:?}"))),
            };
            Ok(Output::json(to_value(&report)?))
        }
        Command::Counterexample { alpha, eps_scan, per_decade } => {
            let eps = parse_scan(eps_scan, *per_decade)?;
            let scan = violation_scan(*alpha, &eps)?;
            let first = scan.iter().find(|p| p.report.violated).map(|p| p.eps);
            let fit = if eps.len() >= 2 { Some(log_slope_fit(*alpha, &eps)?) } else { None };
            let rows: Vec<Value> = scan
                .iter()
                .map(|p| {
                    json!({
                        "eps": p.eps,
                        "exp_integral": p.exp_integral,
                        "rhs_expression": p.rhs_expression,
                        "lhs_log": p.report.lhs_log,
                        "rhs_log": p.report.rhs_log,
                        "deficit": p.report.deficit,
                        "violated": p.report.violated,
                    })
                })
                .collect();
            Ok(Output::json(json!({
                "alpha": alpha,
                "first_violating_eps": first,
                "scan": rows,
                "slope": fit.as_ref().map(|f| f.slope),
                "expected_slope": alpha / (1.0 + alpha),
                "slope_relative_error": fit.as_ref().map(|f| f.relative_error),
            })))
        }
        Command::Limit { alpha, eps, index } => {
            let eps: Vec<f64> = eps
                .split(',')
                .map(|s| s.trim().parse().map_err(|_| Error::Config(format!("bad ε value {s:?}"))))
                .collect::<Result<_>>()?;
            let f = corpus_member(cfg.seed, *index);
            Ok(Output::json(to_value(&ckn_to_mt_limit(*alpha, &f, &eps)?)?))
        }
        Command::RegionScan { amin, amax, n, nb, mode, mirror, band_eps } => {
            let mode: ClassifyMode = mode.parse().map_err(config_error)?;
            let grid = GridSpec { a_min: *amin, a_max: *amax, n_a: *n, n_b: nb.unwrap_or(*n), mirror: *mirror };
            let opts = RegionOptions { band_eps: *band_eps, solver: cfg.solver_options() };
            let s = sweep(&grid, mode, &opts)?;
            let mut out = Output::json(json!({
                "grid": grid,
                "summary": s.summary,
                "errors": s.errors,
            }));
            out.files.push(("region-scan.csv".into(), to_csv(&s.points)));
            out.files.push(("region-scan.svg".into(), to_svg(&s.points)));
            Ok(out)
        }
        Command::VerifyAppendix => {
            let checks = frame_identities(cfg.seed)?;
            for c in &checks {
                eprintln!(
                    "{} {} (α = {}): error {:.3e} (tolerance {:.0e})",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.identity,
                    c.alpha,
                    c.error,
                    c.tolerance
                );
            }
            let all = checks.iter().all(|c| c.passed);
            let mut out = Output::json(json!({ "all_passed": all, "checks": checks }));
            out.exit = if all { EXIT_OK } else { EXIT_CONVERGENCE };
            Ok(out)
        }
    }
}

fn config_error(e: Error) -> Error {
    Error::Config(e.to_string())
}

fn corpus_member(seed: u64, index: usize) -> CorpusFn {
    corpus(seed, index + 1).pop().expect("corpus of positive size")
}

fn mt_report<V: PlaneFn + ?Sized>(alpha: f64, v: &V, form: MtForm, frame: Frame, rel_tol: f64) -> Result<MtReport> {
    let pieces = match frame {
        Frame::Plane => v.pieces(alpha, rel_tol)?,
        Frame::Sphere => sphere_pieces(alpha, &OnSphere::new(alpha, v), rel_tol)?,
        Frame::Cylinder => cylinder_pieces(alpha, &OnCylinder(v), rel_tol)?,
    };
    Ok(MtReport::from_pieces(alpha, frame, form, pieces))
}

fn closed_forms(a: f64, p: Option<f64>, b: Option<f64>) -> Result<Output> {
    let params = match (p, b) {
        (Some(p), None) => CknParams::from_ap(a, p)?,
        (None, Some(b)) => CknParams::from_ab(a, b)?,
        _ => return Err(Error::Config("give exactly one of --p and --b".into())),
    };
    let (a, b, p) = (params.a(), params.b(), params.p());
    let w = WStar::new(a, p)?;
    let kelvin = if a > 0.0 { Some(kelvin_map(a, b)?) } else { None };
    Ok(Output::json(json!({
        "a": a,
        "b": b,
        "p": p,
        "alpha": params.alpha(),
        "h": h_curve(a)?,
        "margin": symmetry_margin(a, b),
        "breaks_symmetry": breaks_symmetry(a, p)?,
        "mu1": mu1(a, p)?,
        "w_star_peak": w.peak(),
        "w_star_rate": w.rate(),
        "w_star_lp_norm": w_star_lp_norm(a, p)?,
        "w_star_lp_norm_quadrature": w_star_lp_norm_quadrature(a, p)?,
        "F_radial": radial_quotient(a, p)?,
        "c_p": c_p(p)?,
        "c_p_gamma": c_p_gamma(p)?,
        "kelvin_image": kelvin,
    })))
}

/// `hi:lo` into `per_decade` log-spaced points per decade, decreasing.
fn parse_scan(spec: &str, per_decade: usize) -> Result<Vec<f64>> {
    let bad = || Error::Config(format!("ε scan must be `hi:lo` with 1 > hi ≥ lo > 0, got {spec:?}"));
    let (hi, lo) = spec.split_once(':').ok_or_else(bad)?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    if !(hi < 1.0 && lo > 0.0 && hi >= lo) || per_decade == 0 {
        return Err(bad());
    }
    let decades = (hi / lo).log10();
    let n = (decades * per_decade as f64).round() as usize;
    Ok((0..=n).map(|i| if n == 0 { hi } else { hi * (lo / hi).powf(i as f64 / n as f64) }).collect())
}

/// One identity of the frame-change suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub alpha: f64,
    pub error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Checks the change-of-variables identities between plane, sphere and
/// cylinder on a seeded corpus function for several `α`.
pub fn frame_identities(seed: u64) -> Result<Vec<IdentityCheck>> {
    let f = corpus_member(seed, 0);
    let mut checks = Vec::new();
    let mut push = |identity: &str, alpha: f64, error: f64, tolerance: f64| {
        checks.push(IdentityCheck { identity: identity.into(), alpha, error, tolerance, passed: error <= tolerance })
    };
    for alpha in [-0.5, 0.0, 1.0, 3.0] {
        let mut round_trip: f64 = 0.0;
        for r in [0.1, 0.5, 1.0, 2.0, 10.0] {
            for theta in [0.0, 1.0, 2.5, -2.0] {
                let back = sigma_alpha_inv(alpha, sigma_alpha(alpha, PolarPoint::new(r, theta)))?;
                let (x, y) = (PolarPoint::new(r, theta).to_cartesian(), back.to_cartesian());
                round_trip = round_trip.max((x[0] - y[0]).hypot(x[1] - y[1]) / r);
            }
        }
        push("sigma_alpha round trip", alpha, round_trip, 1e-12);

        let m = MeasureSpec::new(Frame::Plane, alpha)?;
        let mass = integrate_measure(&m, FrameFn::Plane(&|_: PolarPoint| 1.0), 1e-12)?;
        push("mu_alpha has unit mass", alpha, (mass - 1.0).abs(), 1e-10);

        let c = frame_transport(alpha, &f, MtForm::Strengthened)?;
        let rel = |x: f64, y: f64| (x - y).abs() / y.abs().max(1.0);
        push("integrals: sphere = plane", alpha, rel(c.sphere.mean, c.plane.mean).max(rel(c.sphere.lhs_log, c.plane.lhs_log)), 1e-8);
        push("integrals: cylinder = plane", alpha, rel(c.cylinder.mean, c.plane.mean).max(rel(c.cylinder.lhs_log, c.plane.lhs_log)), 1e-8);
        let energy = |r: &MtReport| r.dirichlet + alpha * (alpha + 2.0) * r.angular;
        push("gradient: sphere = plane", alpha, rel(energy(&c.sphere), energy(&c.plane)), 1e-8);
        push("gradient: cylinder = plane", alpha, rel(c.cylinder.dirichlet, c.plane.dirichlet).max(rel(c.cylinder.angular, c.plane.angular)), 1e-8);
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_grammar() {
        let cfg = parse_config("# comment\nseed = 7\n\nrel_tol = 1e-9  # trailing\noutput_dir = out\nn_t=256\n").unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.rel_tol, 1e-9);
        assert_eq!(cfg.output_dir, PathBuf::from("out"));
        assert_eq!(cfg.n_t, Some(256));
        assert!(matches!(parse_config("colour = red"), Err(Error::Config(_))));
        assert!(matches!(parse_config("seed = -1"), Err(Error::Config(_))));
        assert!(matches!(parse_config("seed 7"), Err(Error::Config(_))));
    }

    #[test]
    fn scan_parsing() {
        let e = parse_scan("1e-2:1e-6", 1).unwrap();
        assert_eq!(e.len(), 5);
        assert!((e[0] - 1e-2).abs() < 1e-18 && (e[4] - 1e-6).abs() < 1e-20);
        assert!(e.windows(2).all(|w| w[1] < w[0]));
        assert_eq!(parse_scan("1e-3:1e-3", 2).unwrap(), vec![1e-3]);
        assert!(parse_scan("1e-6:1e-2", 1).is_err());
        assert!(parse_scan("2:1e-2", 1).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Config("x".into())), EXIT_USAGE);
        assert_eq!(exit_code(&Error::Domain("x".into())), EXIT_DOMAIN);
        assert_eq!(exit_code(&Error::Quadrature { estimate: 0.0, error_bound: 1.0 }), EXIT_CONVERGENCE);
        assert_eq!(run(["cknmt", "no-such-command"]), EXIT_USAGE);
        assert_eq!(run(["cknmt", "spectrum", "--a", "1", "--p", "4", "--bogus"]), EXIT_USAGE);
    }
}
