//! Subcommand grammar and dispatch. Each command builds one JSON document.

use std::path::PathBuf;

use charvar::curves::{generic_plane_chart, preset_chart, CurveChart, Preset};
use charvar::dixon::{dixon_eval, dixon_series};
use charvar::incidence::{
    afbg_decompose, cayley_bacharach_check, chasles_instance, collinear_removal_instance, serret_syzygy, CbReport,
    IncidenceError,
};
use charvar::integralrep::{default_rule, pde_residual_fd, represent, Profile};
use charvar::kernelspace::{bott_dimension, kernel_basis, kernel_dimension_predicted};
use charvar::minitwistor::{john_gaussian_closed_form, john_transform, ultrahyperbolic_symbol, DEFAULT_NODES};
use charvar::polyhom::{format_rational, parse_poly_json, AnyPoly, HomogeneousPoly, ProjPoint};
use charvar::powerbasis::build_power_basis;
use charvar::scalar::{C64, QC};
use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::acceptance::{self, Fault};
use crate::config::RunConfig;
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "charvar", version, about = "Solutions of constant-coefficient PDEs from their characteristic varieties")]
pub struct Cli {
    /// Seed for every randomized step (default: config file, then CHARVAR_SEED, then 0).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// JSON config file with seed, nodes, tolerances and output.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write the JSON document here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Predicted and computed dimension of the degree-m kernel of F(∂).
    Dim(DimArgs),
    /// dim H^q(P^n, O(k)).
    Bott(BottArgs),
    /// A basis of the degree-m kernel made of m-th powers of chart points.
    Basis(BasisArgs),
    /// Linear relations among r-th powers of the linear forms of points.
    Serret(SerretArgs),
    /// The Cayley-Bacharach test on the intersection of two plane curves.
    CayleyBacharach(CbArgs),
    /// Solve L = A·F + B·G.
    Afbg(AfbgArgs),
    /// Dixon elliptic functions.
    Dixon(DixonArgs),
    /// Evaluate an integral representation at a point.
    Represent(RepresentArgs),
    /// John transform of the standard Gaussian.
    John(JohnArgs),
    /// Chart points and residuals.
    Chart(ChartArgs),
    /// Run the acceptance suite.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct DimArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub m: u32,
    /// Symbol as polynomial JSON or @file; a seeded random integer symbol otherwise.
    #[arg(long)]
    pub symbol: Option<String>,
}

#[derive(Debug, Args)]
pub struct BottArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub k: i64,
    #[arg(long)]
    pub q: u32,
}

#[derive(Debug, Args)]
pub struct ChartSource {
    /// laplace_quadric, wave_quadric, fermat_cubic or product_hypersurface(n).
    #[arg(long, conflicts_with = "symbol")]
    pub preset: Option<String>,
    /// A plane curve as polynomial JSON or @file.
    #[arg(long)]
    pub symbol: Option<String>,
}

#[derive(Debug, Args)]
pub struct BasisArgs {
    #[command(flatten)]
    pub source: ChartSource,
    #[arg(long)]
    pub m: u32,
}

#[derive(Debug, Args)]
pub struct SerretArgs {
    /// Points as "a,b,c;a,b,c;…"; exact arithmetic when every entry is an integer.
    #[arg(long, allow_hyphen_values = true)]
    pub points: String,
    #[arg(long)]
    pub r: u32,
}

#[derive(Debug, Args)]
pub struct CbArgs {
    #[arg(long, requires_all = ["f2", "gamma"], conflicts_with = "instance")]
    pub f1: Option<String>,
    #[arg(long)]
    pub f2: Option<String>,
    #[arg(long)]
    pub gamma: Option<u32>,
    /// A built-in instance: chasles or collinear.
    #[arg(long)]
    pub instance: Option<String>,
}

#[derive(Debug, Args)]
pub struct AfbgArgs {
    #[arg(long)]
    pub l: String,
    #[arg(long)]
    pub f: String,
    #[arg(long)]
    pub g: String,
}

#[derive(Debug, Args)]
pub struct DixonArgs {
    /// Complex argument, e.g. 0.5 or 0.3+0.2i.
    #[arg(long, allow_hyphen_values = true)]
    pub eval: Option<String>,
    #[arg(long, default_value_t = 64)]
    pub order: usize,
    /// Print the exact coefficients through u^N.
    #[arg(long)]
    pub coeffs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RepresentArgs {
    #[arg(long)]
    pub preset: String,
    /// Profile JSON or @file, e.g. {"kind":"poly_in_w","coeffs":[0,0,1]}.
    #[arg(long)]
    pub profile: String,
    /// Comma-separated real coordinates.
    #[arg(long, allow_hyphen_values = true)]
    pub at: String,
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Also compute the finite-difference PDE residual; exit 1 above tolerance.
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Args)]
pub struct JohnArgs {
    /// s,x,y,z
    #[arg(long, allow_hyphen_values = true)]
    pub at: String,
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Compare with the closed form and the ultrahyperbolic residual.
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Args)]
pub struct ChartArgs {
    #[command(flatten)]
    pub source: ChartSource,
    /// Parameters, comma-separated complex values.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
    /// Number of seeded sample parameters.
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Run only these criteria.
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<u32>,
    #[arg(long, hide = true)]
    pub inject_fault: Option<String>,
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

/// Inline text, or the contents of a file when prefixed with `@`.
fn read_arg(text: &str) -> Result<String, CliError> {
    match text.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}"))),
        None => Ok(text.to_string()),
    }
}

fn poly_arg(text: &str) -> Result<AnyPoly, CliError> {
    parse_poly_json(&read_arg(text)?).map_err(|e| usage(format!("malformed polynomial JSON: {e}")))
}

fn exact_arg(text: &str, what: &str) -> Result<HomogeneousPoly<QC>, CliError> {
    match poly_arg(text)? {
        AnyPoly::Exact(p) => Ok(p),
        AnyPoly::Float(_) => Err(usage(format!("{what} must use exact coefficients"))),
    }
}

fn complex_arg(text: &str) -> Result<C64, CliError> {
    text.trim().parse::<C64>().map_err(|_| usage(format!("not a complex number: {text}")))
}

fn reals_arg(text: &str, len: usize) -> Result<Vec<f64>, CliError> {
    let v: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| usage(format!("not a real number: {s}"))))
        .collect::<Result<_, _>>()?;
    if v.len() != len {
        return Err(usage(format!("expected {len} coordinates, got {}", v.len())));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(usage("coordinates must be finite"));
    }
    Ok(v)
}

fn preset_arg(name: &str) -> Result<Preset, CliError> {
    name.parse().map_err(|e: charvar::curves::CurveError| usage(e))
}

fn chart_from(source: &ChartSource, seed: u64) -> Result<CurveChart, CliError> {
    match (&source.preset, &source.symbol) {
        (Some(p), None) => Ok(preset_chart(preset_arg(p)?)),
        (None, Some(s)) => generic_plane_chart(&poly_arg(s)?.to_float(), seed).map_err(usage),
        _ => Err(usage("give exactly one of --preset or --symbol")),
    }
}

fn random_integer_symbol(d: usize, n: u32, seed: u64) -> HomogeneousPoly<QC> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let terms: Vec<(Vec<u32>, QC)> = charvar::monomial_basis(d, n)
            .into_iter()
            .map(|m| (m.exps, charvar::scalar::qci(rng.gen_range(-5..=5), rng.gen_range(-5..=5))))
            .collect();
        let f = HomogeneousPoly::from_terms(d, n, terms).expect("homogeneous");
        if !f.is_zero() {
            return f;
        }
    }
}

fn rational_json(r: &BigRational) -> Value {
    Value::String(format_rational(r))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Runs one command and returns its JSON document.
pub fn execute(command: &Command, cfg: &RunConfig) -> Result<Value, CliError> {
    match command {
        Command::Dim(a) => dim(a, cfg),
        Command::Bott(a) => Ok(json!({
            "n": a.n, "k": a.k, "q": a.q, "dimension": bott_dimension(a.n, a.k, a.q)
        })),
        Command::Basis(a) => {
            let chart = chart_from(&a.source, cfg.seed)?;
            let basis = build_power_basis(&chart.symbol, a.m, &chart, cfg.seed).map_err(usage)?;
            let mut out = basis.to_json();
            out["chart"] = json!(chart.name);
            out["max_kernel_residual"] = json!(basis.max_kernel_residual());
            Ok(out)
        }
        Command::Serret(a) => serret(a),
        Command::CayleyBacharach(a) => cayley_bacharach(a, cfg),
        Command::Afbg(a) => {
            let (l, f, g) = (exact_arg(&a.l, "L")?, exact_arg(&a.f, "F")?, exact_arg(&a.g, "G")?);
            let (pa, pb) = afbg_decompose(&l, &f, &g).map_err(|e| match e {
                IncidenceError::Infeasible { .. } => CliError::Check(e.to_string()),
                other => usage(other),
            })?;
            Ok(json!({ "a": to_value(&pa.to_json()), "b": to_value(&pb.to_json()) }))
        }
        Command::Dixon(a) => dixon(a),
        Command::Represent(a) => represent_cmd(a, cfg),
        Command::John(a) => john(a, cfg),
        Command::Chart(a) => chart(a, cfg),
        Command::Selftest(a) => selftest(a),
    }
}

fn dim(a: &DimArgs, cfg: &RunConfig) -> Result<Value, CliError> {
    if a.d < 1 || a.n < 1 {
        return Err(usage("need d ≥ 1 and n ≥ 1"));
    }
    let (symbol, seed) = match &a.symbol {
        Some(s) => {
            let f = exact_arg(s, "symbol")?;
            if f.nvars() != a.d || f.degree() != a.n {
                return Err(usage(format!("symbol has {} variables and degree {}", f.nvars(), f.degree())));
            }
            (f, None)
        }
        None => (random_integer_symbol(a.d, a.n, cfg.seed), Some(cfg.seed)),
    };
    let predicted = kernel_dimension_predicted(a.d, a.n, a.m);
    let computed = kernel_basis(&symbol, a.m).len();
    if computed != predicted {
        eprintln!("computed kernel dimension {computed} differs from predicted {predicted}");
    }
    Ok(json!({ "d": a.d, "n": a.n, "m": a.m, "seed": seed, "predicted": predicted, "computed": computed }))
}

enum Points {
    Exact(Vec<ProjPoint<QC>>),
    Float(Vec<ProjPoint<C64>>),
}

fn parse_points(text: &str) -> Result<Points, CliError> {
    let rows: Vec<Vec<&str>> = text.split(';').map(|p| p.split(',').map(str::trim).collect()).collect();
    let dim = rows[0].len();
    if rows.iter().any(|r| r.len() != dim) || dim < 2 {
        return Err(usage("points need a common number (≥ 2) of coordinates"));
    }
    let ints: Option<Vec<Vec<i64>>> = rows.iter().map(|r| r.iter().map(|s| s.parse().ok()).collect()).collect();
    if let Some(ints) = ints {
        return Ok(Points::Exact(ints.iter().map(|r| ProjPoint::from_ints(r)).collect()));
    }
    let floats = rows
        .iter()
        .map(|r| r.iter().map(|s| complex_arg(s)).collect::<Result<Vec<_>, _>>().map(ProjPoint::new))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Points::Float(floats))
}

fn serret(a: &SerretArgs) -> Result<Value, CliError> {
    match parse_points(&a.points)? {
        Points::Exact(points) => {
            let rep = serret_syzygy(&points, a.r).map_err(usage)?;
            let syzygy: Option<Vec<Value>> =
                rep.syzygy.as_ref().map(|s| s.iter().map(|c| json!([rational_json(&c.re), rational_json(&c.im)])).collect());
            Ok(json!({
                "field": "exact",
                "power": rep.power,
                "nullspace_dim": rep.nullspace_dim,
                "syzygy": syzygy,
                "all_coeffs_nonzero": rep.all_coeffs_nonzero,
            }))
        }
        Points::Float(points) => {
            let rep = serret_syzygy(&points, a.r).map_err(usage)?;
            Ok(json!({
                "field": "float",
                "power": rep.power,
                "nullspace_dim": rep.nullspace_dim,
                "syzygy": to_value(&rep.syzygy),
                "all_coeffs_nonzero": rep.all_coeffs_nonzero,
                "relative_residual": rep.relative_residual,
            }))
        }
    }
}

fn cayley_bacharach(a: &CbArgs, cfg: &RunConfig) -> Result<Value, CliError> {
    let report: CbReport = match (&a.instance, &a.f1) {
        (Some(name), None) => match name.as_str() {
            "chasles" => chasles_instance(cfg.seed),
            "collinear" => collinear_removal_instance(cfg.seed),
            other => return Err(usage(format!("unknown instance {other}; expected chasles or collinear"))),
        }
        .map_err(|e| CliError::Check(e.to_string()))?,
        (None, Some(f1)) => {
            let f1 = poly_arg(f1)?.to_float();
            let f2 = poly_arg(a.f2.as_deref().unwrap_or_default())?.to_float();
            let gamma = a.gamma.ok_or_else(|| usage("--gamma is required with --f1"))?;
            cayley_bacharach_check(&f1, &f2, gamma, cfg.seed).map_err(usage)?
        }
        _ => return Err(usage("give --f1/--f2/--gamma or --instance")),
    };
    let mut out = to_value(&report);
    out["seed"] = json!(cfg.seed);
    Ok(out)
}

fn dixon(a: &DixonArgs) -> Result<Value, CliError> {
    if a.order == 0 {
        return Err(usage("order must be positive"));
    }
    let mut out = json!({ "order": a.order });
    if let Some(text) = &a.eval {
        let u = complex_arg(text)?;
        let v = dixon_eval(u, a.order).map_err(usage)?;
        out["u"] = to_value(&u);
        out["s"] = to_value(&v.s);
        out["c"] = to_value(&v.c);
        out["cubic_residual"] = json!(v.cubic_residual);
    }
    if let Some(n) = a.coeffs {
        let series = dixon_series(n.max(1)).map_err(usage)?;
        out["s_coeffs"] = series.s_coeffs.iter().take(n + 1).map(rational_json).collect();
        out["c_coeffs"] = series.c_coeffs.iter().take(n + 1).map(rational_json).collect();
    }
    if a.eval.is_none() && a.coeffs.is_none() {
        let series = dixon_series(a.order).map_err(usage)?;
        out["validated_radius"] = json!(series.validated_radius());
    }
    Ok(out)
}

fn represent_cmd(a: &RepresentArgs, cfg: &RunConfig) -> Result<Value, CliError> {
    let chart = preset_chart(preset_arg(&a.preset)?);
    let profile: Profile =
        serde_json::from_str(&read_arg(&a.profile)?).map_err(|e| usage(format!("malformed profile JSON: {e}")))?;
    let x = reals_arg(&a.at, chart.nvars())?;
    let nodes = cfg.nodes_or(a.nodes, 64);
    let rule = default_rule(&chart, nodes);
    let xc: Vec<C64> = x.iter().map(|&v| C64::new(v, 0.0)).collect();
    let value = represent(&chart, &profile, &rule, &xc).map_err(usage)?;
    let mut out = json!({ "preset": chart.name, "at": x, "nodes": nodes, "value": to_value(&value) });
    if a.check {
        let v = |p: &[f64]| {
            let pc: Vec<C64> = p.iter().map(|&q| C64::new(q, 0.0)).collect();
            represent(&chart, &profile, &rule, &pc).unwrap_or(C64::new(f64::NAN, f64::NAN))
        };
        let report = pde_residual_fd(&chart.symbol, &v, std::slice::from_ref(&x));
        let tol = cfg.tolerance("residual", 1e-8);
        out["residual"] = json!(report.relative_residual);
        out["tolerance"] = json!(tol);
        finish_check(out, report.relative_residual <= tol)
    } else {
        Ok(out)
    }
}

/// Emits the document and turns a failed check into exit code 1.
fn finish_check(out: Value, ok: bool) -> Result<Value, CliError> {
    if ok {
        Ok(out)
    } else {
        Err(CliError::Check(serde_json::to_string_pretty(&out).expect("serializable")))
    }
}

fn john(a: &JohnArgs, cfg: &RunConfig) -> Result<Value, CliError> {
    let p = reals_arg(&a.at, 4)?;
    let nodes = cfg.nodes_or(a.nodes, DEFAULT_NODES);
    let gaussian = |q: [f64; 3]| (-(q[0] * q[0] + q[1] * q[1] + q[2] * q[2])).exp();
    let v = john_transform(gaussian, p[0], p[1], p[2], p[3], nodes);
    for w in &v.warnings {
        eprintln!("warning: {w}");
    }
    let mut out = json!({ "at": p, "nodes": nodes, "value": v.value, "half_width": v.half_width, "warnings": v.warnings });
    if a.check {
        let closed = john_gaussian_closed_form(p[0], p[1], p[2], p[3]);
        let phi = |q: &[f64]| C64::new(john_transform(gaussian, q[0], q[1], q[2], q[3], nodes).value, 0.0);
        let residual = pde_residual_fd(&ultrahyperbolic_symbol(), &phi, std::slice::from_ref(&p)).relative_residual;
        let error = (v.value - closed).abs();
        out["closed_form"] = json!(closed);
        out["error"] = json!(error);
        out["residual"] = json!(residual);
        let ok = error <= cfg.tolerance("closed_form", 1e-10) && residual <= cfg.tolerance("residual", 1e-6);
        finish_check(out, ok)
    } else {
        Ok(out)
    }
}

fn chart(a: &ChartArgs, cfg: &RunConfig) -> Result<Value, CliError> {
    let chart = chart_from(&a.source, cfg.seed)?;
    let params: Vec<Vec<C64>> = match (&a.t, a.samples) {
        (Some(t), None) => vec![t.split(',').map(complex_arg).collect::<Result<_, _>>()?],
        (None, n) => chart.sample_params(n.unwrap_or(5), cfg.seed),
        (Some(_), Some(_)) => return Err(usage("give --t or --samples, not both")),
    };
    let mut rows = Vec::with_capacity(params.len());
    for t in &params {
        let point = chart.point(t).map_err(usage)?;
        let residual = chart.residual(t).map_err(usage)?;
        rows.push(json!({ "t": to_value(t), "point": to_value(&point), "residual": residual }));
    }
    Ok(json!({
        "chart": chart.name,
        "symbol": to_value(&chart.symbol.to_json()),
        "domain": to_value(&chart.domain),
        "path": to_value(&chart.path),
        "seed": cfg.seed,
        "samples": rows,
    }))
}

fn selftest(a: &SelftestArgs) -> Result<Value, CliError> {
    let fault = match a.inject_fault.as_deref() {
        None => None,
        Some("dixon") => Some(Fault::Dixon),
        Some(other) => return Err(usage(format!("unknown fault {other}"))),
    };
    let ids: Vec<u32> = if a.only.is_empty() { acceptance::CRITERIA.iter().map(|(i, _)| *i).collect() } else { a.only.clone() };
    if let Some(bad) = ids.iter().find(|i| !(1..=11).contains(*i)) {
        return Err(usage(format!("no criterion {bad}")));
    }
    let results: Vec<_> = ids
        .iter()
        .map(|&id| {
            let r = acceptance::run(id, fault);
            eprintln!("{}", r.line());
            r
        })
        .collect();
    let ok = results.iter().all(|r| r.passed);
    finish_check(json!({ "passed": ok, "criteria": to_value(&results) }), ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn point_lists() {
        assert!(matches!(parse_points("1,0,0;0,1,0").unwrap(), Points::Exact(p) if p.len() == 2));
        assert!(matches!(parse_points("1,0.5,0;0,1,0").unwrap(), Points::Float(_)));
        assert!(parse_points("1,0;0,1,0").is_err());
    }

    #[test]
    fn rationals_render_as_fractions() {
        let r = BigRational::new(BigInt::from(-4), BigInt::from(24));
        assert_eq!(rational_json(&r), json!("-1/6"));
    }
}
