//! Command-line surface. Each subcommand is a plain function returning the text
//! to print and an exit code, so the binary is a thin wrapper and tests can call
//! commands directly.
//!
//! Exit codes: 0 success, 1 validation or signaling failure (or a failed
//! check), 2 parse error or bad usage, 3 enumeration budget exceeded,
//! 4 LP failure or unverified certificate.
//!
//! Budgets come from `LQHV_ENUMERATION_BUDGET` (deterministic strategies
//! visited by LHV enumeration) and `LQHV_OMEGA_BUDGET` (global assignments in
//! the γ linear program).

use std::env;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::behavior::{pr_box, Behavior, NONSIGNALING_TOLERANCE};
use crate::document::{load_behavior, load_family, Document};
use crate::error::{Error, Result};
use crate::functional::{builtin, CorrelationFunctional, LhvBoundsSummary, DEFAULT_ENUMERATION_BUDGET};
use crate::nonlocality::{
    analog_bounds, gamma_with_budget, tv_lp_with_budget, upsilon_family_with_budget, verify_certificate, SolveMode,
    DEFAULT_OMEGA_BUDGET,
};
use crate::quantum::{bound_general, bound_projective, chsh_optimal_model, maximally_mixed_model, random_model, QuantumModel};
use crate::scalar::{parse_rational, Mode, Rational, Value};
use crate::scenario::Scenario;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_LP: i32 = 4;

pub const ENUMERATION_BUDGET_VAR: &str = "LQHV_ENUMERATION_BUDGET";
pub const OMEGA_BUDGET_VAR: &str = "LQHV_OMEGA_BUDGET";

/// Slack when comparing a float γ against a closed-form bound.
pub const BOUND_SLACK: f64 = 1e-6;

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse(_) | Error::Io { .. } => EXIT_PARSE,
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Lp(_) => EXIT_LP,
        _ => EXIT_VALIDATION,
    }
}

#[derive(Parser, Debug)]
#[command(name = "lqhv", version, about = "Bell nonlocality: LHV constants, gamma, nonsignaling analogs, quantum bounds")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a behavior and test nonsignaling.
    Check(CheckArgs),
    /// Tight LHV constants of a Bell functional.
    LhvBounds(LhvBoundsArgs),
    /// γ of a nonsignaling behavior with primal witness and dual certificate.
    Gamma(GammaArgs),
    /// Nonsignaling analog of a Bell inequality for a given Υ.
    Analog(AnalogArgs),
    /// Born-rule behavior of a quantum model, with optional γ and bound checks.
    Quantum(QuantumArgs),
    /// Υ of a family of behaviors listed in a family document.
    Family(FamilyArgs),
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("behavior_source").required(true).args(["file", "pr_box"])))]
pub struct BehaviorSource {
    /// Behavior document.
    pub file: Option<PathBuf>,
    /// Use the built-in PR box.
    #[arg(long)]
    pub pr_box: bool,
}

impl BehaviorSource {
    fn load(&self) -> Result<Behavior> {
        match &self.file {
            Some(path) => load_behavior(path),
            None => Ok(pr_box()),
        }
    }
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    pub source: BehaviorSource,
    /// Nonsignaling tolerance for float behaviors.
    #[arg(long, default_value_t = NONSIGNALING_TOLERANCE)]
    pub tolerance: f64,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("functional_source").required(true).args(["file", "builtin"])))]
pub struct LhvBoundsArgs {
    /// Functional document.
    pub file: Option<PathBuf>,
    /// Built-in functional: CH, CHSH, ZG (with --d), ZG(d) or ZG:d.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Outcome count for ZG.
    #[arg(long)]
    pub d: Option<usize>,
}

#[derive(Args, Debug)]
pub struct GammaArgs {
    #[command(flatten)]
    pub source: BehaviorSource,
    /// Arithmetic; defaults to the behavior's own mode.
    #[arg(long, value_parser = parse_mode)]
    pub mode: Option<Mode>,
    /// Float pivoting and verification tolerance.
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Write the witness signed distribution here.
    #[arg(long)]
    pub witness_out: Option<PathBuf>,
    /// Write the normalized certificate functional here.
    #[arg(long)]
    pub certificate_out: Option<PathBuf>,
    /// Write the exact LP in plain-text form here (exact behaviors only).
    #[arg(long)]
    pub dump_lp: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AnalogArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub binf: String,
    #[arg(long, allow_hyphen_values = true)]
    pub bsup: String,
    #[arg(long, allow_hyphen_values = true)]
    pub upsilon: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    ChshOptimal,
    MaximallyMixed,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("model_source").required(true).args(["file", "preset", "random"])))]
pub struct QuantumArgs {
    /// Quantum-model document.
    pub file: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    /// Seed for a Haar-random pure state with random measurements (implies --check-bounds).
    #[arg(long)]
    pub random: Option<u64>,
    /// Random model: number of parties.
    #[arg(long, default_value_t = 2)]
    pub parties: usize,
    /// Random model: settings per party.
    #[arg(long, default_value_t = 2)]
    pub settings: usize,
    /// Random model: outcomes (and local dimension) per party.
    #[arg(long, default_value_t = 2)]
    pub outcomes: usize,
    /// Random model: generalized instead of projective measurements.
    #[arg(long)]
    pub povm: bool,
    /// Compute γ and compare it with the closed-form quantum bound.
    #[arg(long)]
    pub check_bounds: bool,
    /// Write the behavior document here instead of printing it.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    /// Family document.
    pub file: PathBuf,
    #[arg(long, value_parser = parse_mode)]
    pub mode: Option<Mode>,
}

fn parse_mode(s: &str) -> std::result::Result<Mode, String> {
    s.parse()
}

/// Budgets for the enumerations behind each command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budgets {
    pub enumeration: u128,
    pub omega: u128,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { enumeration: DEFAULT_ENUMERATION_BUDGET, omega: DEFAULT_OMEGA_BUDGET }
    }
}

impl Budgets {
    /// Defaults overridden by the budget environment variables.
    pub fn from_env() -> Result<Budgets> {
        let read = |var: &str, default: u128| -> Result<u128> {
            match env::var(var) {
                Ok(v) => parse_budget(&v).ok_or_else(|| Error::Parse(format!("{var}: `{v}` is not a budget"))),
                Err(_) => Ok(default),
            }
        };
        let d = Budgets::default();
        Ok(Budgets { enumeration: read(ENUMERATION_BUDGET_VAR, d.enumeration)?, omega: read(OMEGA_BUDGET_VAR, d.omega)? })
    }
}

/// Accepts plain integers and scientific forms such as `1e8`.
fn parse_budget(s: &str) -> Option<u128> {
    let s = s.trim();
    if let Ok(n) = s.parse::<u128>() {
        return Some(n);
    }
    let (mantissa, exp) = s.split_once(['e', 'E'])?;
    let m: u128 = mantissa.parse().ok()?;
    let e: u32 = exp.parse().ok()?;
    m.checked_mul(10u128.checked_pow(e)?)
}

/// What a command printed and how it exits.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { stdout, stderr: String::new(), code: EXIT_OK }
    }

    fn with_code(stdout: String, code: i32) -> Outcome {
        Outcome { stdout, stderr: String::new(), code }
    }

    fn error(format: Format, command: &str, err: &Error) -> Outcome {
        let code = exit_code(err);
        let mut out = Outcome { code, ..Default::default() };
        match format {
            Format::Text => {
                out.stderr = format!("error: {err}\n");
                if let Error::Signaling(report) = err {
                    out.stderr.push_str(&violation_line(report));
                }
            }
            Format::Structured => {
                let mut body = json!({ "command": command, "ok": false, "exit_code": code, "error": err.to_string() });
                if let Error::Signaling(report) = err {
                    body["nonsignaling"] = json!(report);
                }
                out.stdout = pretty(&body);
            }
        }
        out
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json") + "\n"
}

fn violation_line(report: &crate::behavior::NonsignalingReport) -> String {
    match &report.violation {
        Some(w) => format!(
            "violation: marginal of the other parties moves when party {} changes settings {:?} -> {:?} (deviation {:e})\n",
            w.party, w.settings, w.other_settings, report.worst_deviation
        ),
        None => String::new(),
    }
}

/// Parses arguments and runs, with budgets from the environment.
pub fn main_with_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome { stderr: text, code, ..Default::default() }
            };
        }
    };
    match Budgets::from_env() {
        Ok(budgets) => run(&cli, budgets),
        Err(e) => Outcome::error(cli.format, "env", &e),
    }
}

pub fn run(cli: &Cli, budgets: Budgets) -> Outcome {
    let f = cli.format;
    let (name, result) = match &cli.command {
        Command::Check(a) => ("check", cmd_check(a, f)),
        Command::LhvBounds(a) => ("lhv-bounds", cmd_lhv_bounds(a, f, budgets)),
        Command::Gamma(a) => ("gamma", cmd_gamma(a, f, budgets)),
        Command::Analog(a) => ("analog", cmd_analog(a, f)),
        Command::Quantum(a) => ("quantum", cmd_quantum(a, f, budgets)),
        Command::Family(a) => ("family", cmd_family(a, f, budgets)),
    };
    result.unwrap_or_else(|e| Outcome::error(f, name, &e))
}

fn describe(sc: &Scenario) -> String {
    format!("{} parties, settings {:?}, outcomes {:?}", sc.parties(), sc.settings(), sc.outcomes())
}

pub fn cmd_check(args: &CheckArgs, format: Format) -> Result<Outcome> {
    let b = args.source.load()?;
    let report = b.nonsignaling_report(args.tolerance);
    let code = if report.passed { EXIT_OK } else { EXIT_VALIDATION };
    let text = match format {
        Format::Text => {
            let mut s = format!("scenario: {}\nmode: {}\nvalid: PASS\n", describe(b.scenario()), b.mode());
            s.push_str(&format!(
                "nonsignaling: {} (worst deviation {:e}, tolerance {:e})\n",
                if report.passed { "PASS" } else { "FAIL" },
                report.worst_deviation,
                report.tolerance
            ));
            s.push_str(&violation_line(&report));
            s
        }
        Format::Structured => pretty(&json!({
            "command": "check",
            "ok": report.passed,
            "exit_code": code,
            "scenario": b.scenario(),
            "mode": b.mode(),
            "valid": true,
            "nonsignaling": report,
        })),
    };
    Ok(Outcome::with_code(text, code))
}

pub fn cmd_lhv_bounds(args: &LhvBoundsArgs, format: Format, budgets: Budgets) -> Result<Outcome> {
    let f = match (&args.file, &args.builtin) {
        (Some(path), _) => match Document::load(path)? {
            Document::Functional(f) => f,
            other => return Err(Error::Parse(format!("expected a functional document, found `{}`", other.kind()))),
        },
        (None, Some(name)) => builtin(name, args.d)?,
        (None, None) => unreachable!("clap enforces one source"),
    };
    let bounds = f.lhv_bounds_with_budget(budgets.enumeration)?;
    let summary = LhvBoundsSummary::from(&bounds);
    let text = match format {
        Format::Text => format!(
            "scenario: {}\nB_inf = {}, B_sup = {}\nB_lhv = {}\nargmin strategy: {:?}\nargmax strategy: {:?}\n",
            describe(f.scenario()),
            summary.b_inf,
            summary.b_sup,
            summary.b_lhv,
            summary.argmin,
            summary.argmax
        ),
        Format::Structured => pretty(&json!({
            "command": "lhv-bounds",
            "ok": true,
            "exit_code": EXIT_OK,
            "scenario": f.scenario(),
            "mode": f.mode(),
            "b_inf": summary.b_inf,
            "b_sup": summary.b_sup,
            "b_lhv": summary.b_lhv,
            "b_inf_f64": bounds.inf.to_f64(),
            "b_sup_f64": bounds.sup.to_f64(),
            "argmin": summary.argmin,
            "argmax": summary.argmax,
        })),
    };
    Ok(Outcome::ok(text))
}

fn solve_mode(mode: Option<Mode>, behavior: &Behavior, tolerance: f64) -> SolveMode {
    match mode.unwrap_or(behavior.mode()) {
        Mode::Exact => SolveMode::Exact,
        Mode::Float => SolveMode::Float { tolerance },
    }
}

/// Shows exact values as-is and floats to six decimals.
fn show(v: &Value) -> String {
    match v {
        Value::Exact(r) => r.to_string(),
        Value::Float(x) => format!("{x:.6}"),
    }
}

pub fn cmd_gamma(args: &GammaArgs, format: Format, budgets: Budgets) -> Result<Outcome> {
    let b = args.source.load()?;
    let mode = solve_mode(args.mode, &b, args.tolerance);
    if let Some(path) = &args.dump_lp {
        let lp = tv_lp_with_budget::<Rational>(&b, budgets.omega)?;
        std::fs::write(path, lp.to_text()).map_err(|source| Error::Io { path: path.display().to_string(), source })?;
    }
    let result = gamma_with_budget(&b, mode, budgets.omega)?;
    let check_tol = if mode == SolveMode::Exact { 0.0 } else { args.tolerance.max(1e-9) };
    let cert = verify_certificate(&b, &result.certificate, &result.gamma, check_tol)?;
    let deviation = result.witness.marginals().max_deviation(&b)?;
    let witness_ok = if mode == SolveMode::Exact { deviation == 0.0 } else { deviation <= check_tol };
    let tv = result.witness.total_variation();
    let tv_ok = tv.approx_eq(&result.gamma, check_tol);
    let verified = cert.matches_gamma && witness_ok && tv_ok;
    if let Some(path) = &args.witness_out {
        Document::SignedDistribution(result.witness.clone()).save(path)?;
    }
    if let Some(path) = &args.certificate_out {
        Document::Functional(result.certificate.clone()).save(path)?;
    }
    let code = if verified { EXIT_OK } else { EXIT_LP };
    let mode_name = if mode == SolveMode::Exact { "exact" } else { "float" };
    let text = match format {
        Format::Text => {
            let mut s = format!(
                "gamma = {} ({mode_name}), certificate ratio = {}, {}\n",
                show(&result.gamma),
                show(&result.certificate_ratio()),
                if verified { "verified" } else { "NOT verified" }
            );
            s.push_str(&format!(
                "certificate: B_inf = {}, B_sup = {}, B_lhv = {}, value = {}\n",
                cert.b_inf, cert.b_sup, cert.b_lhv, cert.value
            ));
            s.push_str(&format!("witness: total variation = {}, marginal deviation = {deviation:e}\n", show(&tv)));
            s.push_str(&format!("pivots: {}\n", result.pivots));
            s
        }
        Format::Structured => pretty(&json!({
            "command": "gamma",
            "ok": verified,
            "exit_code": code,
            "mode": mode_name,
            "scenario": b.scenario(),
            "gamma": result.gamma.to_string(),
            "gamma_f64": result.gamma.to_f64(),
            "certificate_ratio": result.certificate_ratio().to_string(),
            "certificate": cert,
            "witness_total_variation": tv.to_string(),
            "witness_marginal_deviation": deviation,
            "verified": verified,
            "pivots": result.pivots,
        })),
    };
    Ok(Outcome::with_code(text, code))
}

fn rational_arg(name: &str, s: &str) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| Error::Parse(format!("--{name}: `{s}` is not a number")))
}

pub fn cmd_analog(args: &AnalogArgs, format: Format) -> Result<Outcome> {
    let b_inf = rational_arg("binf", &args.binf)?;
    let b_sup = rational_arg("bsup", &args.bsup)?;
    let upsilon = rational_arg("upsilon", &args.upsilon)?;
    let r = analog_bounds(b_inf, b_sup, upsilon)?;
    let (lo, hi) = (crate::scalar::Scalar::to_f64(&r.lower), crate::scalar::Scalar::to_f64(&r.upper));
    let text = match format {
        Format::Text => format!("[{lo}, {hi}]\nexact: [{}, {}]\n", r.lower, r.upper),
        Format::Structured => pretty(&json!({
            "command": "analog",
            "ok": true,
            "exit_code": EXIT_OK,
            "lower": r.lower.to_string(),
            "upper": r.upper.to_string(),
            "lower_f64": lo,
            "upper_f64": hi,
        })),
    };
    Ok(Outcome::ok(text))
}

/// Closed-form bound for a model: projective or general, using the largest
/// local dimension and setting count (both bounds grow with each).
pub fn model_bound(model: &QuantumModel) -> Result<f64> {
    let sc = model.scenario();
    let d = *model.local_dims().iter().max().expect("at least one party");
    let s = *sc.settings().iter().max().expect("at least one party");
    if model.is_projective() {
        bound_projective(d, s, sc.parties())
    } else {
        bound_general(d, s, sc.parties())
    }
}

pub fn cmd_quantum(args: &QuantumArgs, format: Format, budgets: Budgets) -> Result<Outcome> {
    let model = match (&args.file, args.preset, args.random) {
        (Some(path), _, _) => match Document::load(path)? {
            Document::QuantumModel(m) => m,
            other => return Err(Error::Parse(format!("expected a quantum-model document, found `{}`", other.kind()))),
        },
        (None, Some(Preset::ChshOptimal), _) => chsh_optimal_model(),
        (None, Some(Preset::MaximallyMixed), _) => maximally_mixed_model(),
        (None, None, Some(seed)) => {
            let sc = Scenario::new(args.parties, vec![args.settings; args.parties], vec![args.outcomes; args.parties])?;
            random_model(&sc, seed, !args.povm)?
        }
        (None, None, None) => unreachable!("clap enforces one source"),
    };
    let behavior = model.born_behavior()?;
    let doc = Document::Behavior(behavior.clone());
    if let Some(path) = &args.out {
        doc.save(path)?;
    }
    let sc = behavior.scenario();
    let chsh = if sc == &Scenario::chsh() {
        Some(CorrelationFunctional::chsh().lift(None)?.evaluate(&behavior)?.to_f64() + 0.0)
    } else {
        None
    };
    let check = args.check_bounds || args.random.is_some();
    let mut report = Vec::new();
    let mut structured = json!({
        "command": "quantum",
        "scenario": sc,
        "projective": model.is_projective(),
    });
    if let Some(v) = chsh {
        report.push(format!("CHSH = {v:.6}"));
        structured["chsh"] = json!(v);
    }
    let mut code = EXIT_OK;
    if check {
        let g = gamma_with_budget(&behavior, SolveMode::float(), budgets.omega)?.gamma.to_f64();
        let bound = model_bound(&model)?;
        let pass = g <= bound + BOUND_SLACK;
        if !pass {
            code = EXIT_VALIDATION;
        }
        report.push(format!("gamma = {g:.6} ≤ bound {bound:.6} {}", if pass { "PASS" } else { "FAIL" }));
        structured["gamma"] = json!(g);
        structured["bound"] = json!(bound);
        structured["bound_kind"] = json!(if model.is_projective() { "projective" } else { "general" });
        structured["bound_check"] = json!(pass);
    }
    structured["ok"] = json!(code == EXIT_OK);
    structured["exit_code"] = json!(code);
    let line = if report.is_empty() { String::new() } else { report.join(", ") + "\n" };
    Ok(match format {
        Format::Text if args.out.is_some() => Outcome::with_code(line, code),
        Format::Text => Outcome { stdout: doc.to_json_string(), stderr: line, code },
        Format::Structured => {
            if args.out.is_none() {
                structured["behavior"] = doc.to_json();
            }
            Outcome::with_code(pretty(&structured), code)
        }
    })
}

pub fn cmd_family(args: &FamilyArgs, format: Format, budgets: Budgets) -> Result<Outcome> {
    let members = load_family(&args.file)?;
    let mode = match args.mode {
        Some(Mode::Exact) => SolveMode::Exact,
        Some(Mode::Float) => SolveMode::float(),
        None if members.iter().all(|b| b.mode() == Mode::Exact) => SolveMode::Exact,
        None => SolveMode::float(),
    };
    let r = upsilon_family_with_budget(&members, mode, budgets.omega)?;
    let text = match format {
        Format::Text => {
            let mut s = String::new();
            for (i, g) in r.gammas.iter().enumerate() {
                s.push_str(&format!("member {i}: gamma = {}\n", show(g)));
            }
            s.push_str(&format!("upsilon = {} (member {})\n", show(&r.upsilon), r.argmax));
            s
        }
        Format::Structured => pretty(&json!({
            "command": "family",
            "ok": true,
            "exit_code": EXIT_OK,
            "upsilon": r.upsilon.to_string(),
            "upsilon_f64": r.upsilon.to_f64(),
            "argmax": r.argmax,
            "gammas": r.gammas.iter().map(Value::to_string).collect::<Vec<_>>(),
        })),
    };
    Ok(Outcome::ok(text))
}
