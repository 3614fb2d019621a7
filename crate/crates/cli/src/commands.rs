//! One adapter per subcommand: build inputs, call the library, render.

use std::fmt::Write as _;

use anyhow::{anyhow, Context, Result};
use serde::Serialize;

use locproj::grassmann::{euler_localized, martin_chi, symfun_in_x, IdentityReport, MartinMethod, WeightList};
use locproj::models::{jtp_table, vanishing_lemma_check, ExampleSpec, EXAMPLES};
use locproj::plethysm::{gamma_am, SymFun};
use locproj::projection::{check_conditions, verify_projection, ConditionReport, Schedule, VerificationReport};
use locproj::series::{Exponent, Grading, Truncation, TruncationJson};

use crate::{RunArgs, EXIT_CONFIG, EXIT_ERROR, EXIT_MATCH, EXIT_MISMATCH, EXIT_NO_STABILIZATION};

pub struct Output {
    pub text: String,
    pub code: u8,
}

/// A configuration problem outside the library (flags, files, JSON).
#[derive(Debug)]
struct ConfigError(String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn config(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(ConfigError(msg.into()))
}

pub fn exit_code(e: &anyhow::Error) -> u8 {
    use locproj::Error as E;
    for cause in e.chain() {
        if cause.is::<ConfigError>() || cause.is::<serde_json::Error>() || cause.is::<std::io::Error>() {
            return EXIT_CONFIG;
        }
        if let Some(err) = cause.downcast_ref::<E>() {
            return match err {
                E::NoStabilization { .. } => EXIT_NO_STABILIZATION,
                E::InvalidSpec(_)
                | E::DegenerateGrading(_)
                | E::BadRank { .. }
                | E::BadRange { .. }
                | E::IndexTooLarge { .. }
                | E::ZeroGradeDenominator => EXIT_CONFIG,
                _ => EXIT_ERROR,
            };
        }
    }
    EXIT_ERROR
}

fn render_json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn parse_f(run: &RunArgs) -> Result<Option<SymFun>> {
    let Some(s) = &run.f else { return Ok(None) };
    let f: SymFun = serde_json::from_str(s).context("--f is not a symmetric-function JSON list")?;
    f.validate().map_err(|e| config(format!("--f: {e}")))?;
    Ok(Some(f))
}

fn grading_override(run: &RunArgs, rank: usize) -> Result<Option<Grading>> {
    let Some(g) = &run.grading else { return Ok(None) };
    if g.len() != rank {
        return Err(config(format!("--grading has {} entries, the torus has rank {rank}", g.len())));
    }
    if g.iter().all(|&a| a == 0) {
        return Err(config("--grading must be nonzero"));
    }
    Ok(Some(Grading(g.clone())))
}

/// The example or spec file with flag overrides applied, and the t-order.
fn load_spec(run: &RunArgs) -> Result<(ExampleSpec, i64)> {
    if run.order < 0 {
        return Err(config("--order must be nonnegative"));
    }
    if run.budget == 0 {
        return Err(config("--budget must be at least 1"));
    }
    let f = parse_f(run)?;
    let mut spec = match (&run.example, &run.spec) {
        (Some(name), _) => {
            let default_n = if name == "affine-sl2" { 3 } else { 1 };
            let m = run.m.unwrap_or(if name == "cusp-curve" { 1 } else { 0 });
            ExampleSpec::builtin(name, run.n.unwrap_or(default_n), m, f.clone().unwrap_or_else(SymFun::one), run.order)?
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let mut s = ExampleSpec::from_json_str(&text)?;
            if let Some(n) = run.n {
                s.n = n;
            }
            if let Some(m) = run.m {
                s.m = m;
            }
            s
        }
        (None, None) => {
            return Err(config(format!("give --example ({}) or --spec <path.json>", EXAMPLES.join(", "))));
        }
    };
    if let Some(f) = f {
        spec.f = f;
    }
    if let Some(g) = grading_override(run, spec.rank())? {
        spec.grading = g;
    }
    let order = run.order * spec.order_scale;
    Ok((spec, order))
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    #[serde(flatten)]
    report: Option<&'a VerificationReport>,
    conditions: &'a ConditionReport,
}

fn show_trunc(t: &Truncation) -> String {
    t.to_string()
}

pub fn verify(run: &RunArgs, confirm: bool) -> Result<Output> {
    let (spec, order) = load_spec(run)?;
    let g = spec.grading.clone();
    let conditions = check_conditions(&spec, run.window)?;
    if !conditions.all_passed {
        // The formula is not claimed here; report the hypotheses instead.
        if run.json {
            return Ok(Output { text: render_json(&VerifyJson { report: None, conditions: &conditions })?, code: EXIT_MISMATCH });
        }
        let mut s = String::new();
        writeln!(s, "example     {}", spec.name)?;
        for c in conditions.conditions.iter().filter(|c| !c.passed) {
            writeln!(s, "condition   ({}) FAILED: {}", c.name, c.detail)?;
        }
        writeln!(s, "result      not verified: hypotheses fail")?;
        return Ok(Output { text: s, code: EXIT_MISMATCH });
    }
    let mut schedule = Schedule::for_spec(&spec, &g, order, run.window, run.budget)?;
    schedule.confirm = confirm;
    let report = verify_projection(&spec, &schedule, &g)?;
    // A confirm round that moves the RHS means the stop was premature.
    let code = if report.matches && report.confirmed() != Some(false) { EXIT_MATCH } else { EXIT_MISMATCH };
    if run.json {
        return Ok(Output { text: render_json(&VerifyJson { report: Some(&report), conditions: &conditions })?, code });
    }
    let mut s = String::new();
    writeln!(s, "example     {} (n = {}, m = {}, f = {})", report.example, report.n, report.m, report.f)?;
    writeln!(s, "grading     {:?}", report.grading)?;
    writeln!(s, "conditions  all pass")?;
    if spec.m < spec.min_m {
        writeln!(s, "note        this example needs m >= {}; a mismatch is expected", spec.min_m)?;
    }
    let c = report.cutoffs;
    writeln!(s, "cutoffs     k = {}, l = {}, J = {}, N = {} after {} rounds", c.k, c.l, c.j, c.n, report.trace.len())?;
    if let Some(ok) = report.confirmed() {
        writeln!(s, "confirm     {}", if ok { "unchanged" } else { "CHANGED" })?;
    }
    writeln!(s, "LHS         {}", show_trunc(&report.lhs))?;
    writeln!(s, "RHS         {}", show_trunc(&report.rhs))?;
    match report.first_mismatch {
        None => writeln!(s, "result      match")?,
        Some(d) => writeln!(s, "result      MISMATCH at t^{d}")?,
    }
    if !report.rhs_integral {
        writeln!(s, "warning     RHS has non-integral coefficients")?;
    }
    Ok(Output { text: s, code })
}

#[derive(Serialize)]
struct EulerJson {
    n: usize,
    m: i64,
    f: String,
    grading: Vec<i64>,
    order: i64,
    chi: TruncationJson,
    cross_check: Vec<IdentityReport>,
}

fn load_weights(run: &RunArgs, weights: Option<&[i64]>) -> Result<WeightList> {
    if let Some(ws) = weights {
        return Ok(WeightList::univariate(ws));
    }
    let Some(path) = &run.spec else {
        return Err(config("give --weights w1,w2,... or --spec <weights.json>"));
    };
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let raw: Vec<Vec<i64>> = serde_json::from_str(&text).context("a weight list is a JSON list of exponent arrays")?;
    let rank = raw.first().map_or(1, |w| w.len());
    Ok(WeightList::new(rank, raw.into_iter().map(Exponent).collect())?)
}

pub fn euler(run: &RunArgs, weights: Option<&[i64]>, cross_check: bool) -> Result<Output> {
    if run.order < 0 {
        return Err(config("--order must be nonnegative"));
    }
    let z = load_weights(run, weights)?;
    let n = run.n.unwrap_or(1);
    let m = run.m.unwrap_or(0);
    let f = parse_f(run)?.unwrap_or_else(SymFun::one);
    let g = grading_override(run, z.rank())?.unwrap_or_else(|| z.suggest_grading());
    let chi = euler_localized(&z, n as i64, |u| gamma_am(u, m, &f), &g, run.order)?;
    let mut checks = Vec::new();
    if cross_check {
        let fx = symfun_in_x(&f, n, m)?;
        for (name, method) in [("localized", MartinMethod::Localized), ("borel-weil", MartinMethod::BorelWeil)] {
            let other = martin_chi(&z, n, &fx, &g, run.order, method)?;
            checks.push(IdentityReport::compare(name, run.order, &chi, &other));
        }
    }
    // Borel-Weil only agrees when higher cohomology vanishes; report it but
    // let only the localized operator decide the exit code.
    let code = if checks.first().is_none_or(|r| r.matches) { EXIT_MATCH } else { EXIT_MISMATCH };
    if run.json {
        let j = EulerJson { n, m, f: f.label(), grading: g.0.clone(), order: run.order, chi: chi.to_json(), cross_check: checks };
        return Ok(Output { text: render_json(&j)?, code });
    }
    let mut s = String::new();
    writeln!(s, "chi         {}", show_trunc(&chi))?;
    writeln!(s, "grading     {:?}", g.0)?;
    for r in &checks {
        let state = match r.first_mismatch {
            None => "match".to_string(),
            Some(d) => format!("differs at t^{d}"),
        };
        writeln!(s, "{:<11} {state}", r.identity)?;
    }
    Ok(Output { text: s, code })
}

pub fn lemma(run: &RunArgs, k: i64, inject_transpose: bool) -> Result<Output> {
    if k < 0 {
        return Err(config("--k must be nonnegative"));
    }
    let n = run.n.unwrap_or(2);
    let r = vanishing_lemma_check(n, k, inject_transpose)?;
    let code = if r.passed { EXIT_MATCH } else { EXIT_MISMATCH };
    if run.json {
        return Ok(Output { text: render_json(&r)?, code });
    }
    let mut s = String::new();
    writeln!(s, "subsets     {} of size {n} in degree <= {k}", r.subsets)?;
    writeln!(s, "vanishing   {} (Young diagrams of size {n}: {})", r.vanishing, r.partitions)?;
    for f in r.failures.iter().take(10) {
        writeln!(s, "failure     {:?}: constant term {}, coloring {}, diagram {}", f.points, f.constant_term, f.coloring, f.young)?;
    }
    if !r.symmetry_failures.is_empty() {
        writeln!(s, "symmetry    FAILED at {}", r.symmetry_failures.join(", "))?;
    }
    writeln!(s, "result      {}", if r.passed { "pass" } else { "FAIL" })?;
    Ok(Output { text: s, code })
}

pub fn conditions(run: &RunArgs) -> Result<Output> {
    let (spec, _) = load_spec(run)?;
    let r = check_conditions(&spec, run.window)?;
    let code = if r.all_passed { EXIT_MATCH } else { EXIT_MISMATCH };
    if run.json {
        return Ok(Output { text: render_json(&r)?, code });
    }
    let mut s = String::new();
    writeln!(s, "example     {} grading {:?}, window {}", r.example, r.grading, r.window)?;
    for c in &r.conditions {
        writeln!(s, "({})         {}  {}", c.name, if c.passed { "pass" } else { "FAIL" }, c.detail)?;
    }
    for w in &r.warnings {
        writeln!(s, "note        {w}")?;
    }
    if spec.m < spec.min_m {
        writeln!(s, "note        the projection formula for this example needs m >= {}", spec.min_m)?;
    }
    Ok(Output { text: s, code })
}

pub fn jtp(run: &RunArgs, range: i64) -> Result<Output> {
    if run.order < 0 || range < 0 {
        return Err(config("--order and --range must be nonnegative"));
    }
    let r = jtp_table(range, run.order)?;
    let code = if r.matches { EXIT_MATCH } else { EXIT_MISMATCH };
    if run.json {
        return Ok(Output { text: render_json(&r)?, code });
    }
    let mut s = String::new();
    writeln!(s, "q^d  {:<40} theta(z^2; q)", "theta sum")?;
    for row in &r.rows {
        let mark = if row.matches { "" } else { "   <- differs" };
        writeln!(s, "{:<4} {:<40} {}{mark}", row.q_degree, row.sum, row.product)?;
    }
    match r.first_mismatch {
        None => writeln!(s, "result      match through q^{}", r.order)?,
        Some(d) => writeln!(s, "result      MISMATCH at q^{d} (range {range} too small?)")?,
    }
    Ok(Output { text: s, code })
}
