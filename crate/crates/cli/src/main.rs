//! `korthog` command-line driver.
//!
//! Exit status: 0 on success or PASS, 1 when a check runs and fails, 2 on
//! usage or input errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use korthog::distance::{css_distances_with, DistanceOptions, Method, TypedDistance};
use korthog::gates::{find_transversal_phases, GateDescriptor};
use korthog::io::{CodeDescriptor, GateFile, Report};
use korthog::search::{Budget, SearchSpace};
use korthog::{
    controlled_phase_action, is_k_orthogonal, logical_phase_action, max_orthogonality, minimal_korth_matrix,
    minimality_search, nondegenerate_reduction, subdual_css, to_standard_form, verify_korth_necessity, BitMat,
    BitVec, DyadicPhaseVector, PhaseAction, Prune, StandardFormCode,
};

#[derive(Parser)]
#[command(name = "korthog", version, about = "k-orthogonal codes and transversal diagonal gates")]
struct Cli {
    /// Worker threads for search and distance computations (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a sub-dual Hamming CSS code or a minimal k-orthogonal matrix.
    Construct(ConstructArgs),
    /// Reduce a code to standard form.
    StandardForm(StandardFormArgs),
    /// Check k-orthogonality of A_X.
    CheckOrth(CheckOrthArgs),
    /// Solve for every transversal phase gate at level k.
    FindGates(FindGatesArgs),
    /// Verify a transversal (controlled) phase gate.
    VerifyGate(VerifyGateArgs),
    /// Z and X distances of a CSS code.
    Distance(DistanceArgs),
    /// Exhaustive search for small k-orthogonal matrices.
    SearchMin(SearchArgs),
    /// Merge qubits with identical A_X columns and aggregate their phases.
    ReduceDegenerate(ReduceArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    JsonCode,
    MatrixText,
}

#[derive(Clone, Copy, ValueEnum)]
enum Block {
    #[value(name = "a-x")]
    AX,
    #[value(name = "a-z")]
    AZ,
}

#[derive(Args)]
struct ConstructArgs {
    /// Rows of the Hamming parity check; builds the 2^m − 1 qubit code.
    #[arg(long, conflicts_with = "minimal_k", required_unless_present = "minimal_k")]
    m: Option<usize>,
    /// Emit the minimal k-orthogonal matrix instead (matrix text).
    #[arg(long)]
    minimal_k: Option<usize>,
    #[arg(long, value_enum, default_value = "json-code")]
    format: Format,
    /// Block exported with `--format matrix-text`.
    #[arg(long, value_enum, default_value = "a-x")]
    matrix: Block,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StandardFormArgs {
    #[arg(long)]
    code: PathBuf,
    /// Also write the standard-form code as a JSON descriptor.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckOrthArgs {
    #[arg(long, conflicts_with = "code", required_unless_present = "code")]
    matrix: Option<PathBuf>,
    #[arg(long)]
    code: Option<PathBuf>,
    #[arg(long)]
    k: usize,
    /// Restrict weights to the support of this bit string.
    #[arg(long)]
    restrict: Option<String>,
}

#[derive(Args)]
struct FindGatesArgs {
    #[arg(long)]
    code: PathBuf,
    #[arg(long)]
    k: u32,
}

#[derive(Args)]
struct PhaseArgs {
    #[arg(long)]
    k: Option<u32>,
    /// `all-ones` or a comma-separated list of powers.
    #[arg(long)]
    p: Option<String>,
}

#[derive(Args)]
struct VerifyGateArgs {
    #[arg(long)]
    code: PathBuf,
    /// JSON gate descriptor `{ "k", "controls", "p" }`.
    #[arg(long, conflicts_with_all = ["k", "p", "controls"])]
    gate: Option<PathBuf>,
    #[command(flatten)]
    phases: PhaseArgs,
    #[arg(long, default_value_t = 0)]
    controls: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Enumerate,
    Weight,
}

#[derive(Args)]
struct DistanceArgs {
    #[arg(long)]
    code: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
    /// Largest weight tried by the increasing-weight search.
    #[arg(long, default_value_t = korthog::distance::DEFAULT_WEIGHT_CAP)]
    weight_cap: usize,
    /// Print `d_Z=.. d_X=..` and witness lines instead of JSON.
    #[arg(long)]
    text: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum PruneArg {
    None,
    Orbit,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    m_min: usize,
    #[arg(long)]
    m_max: usize,
    #[arg(long)]
    n_max: usize,
    #[arg(long)]
    budget_seconds: Option<f64>,
    #[arg(long)]
    max_candidates: Option<u64>,
    #[arg(long, value_enum, default_value = "none")]
    prune: PruneArg,
    /// Include elapsed time (makes the report run-dependent).
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long)]
    code: PathBuf,
    #[command(flatten)]
    phases: PhaseArgs,
}

enum Verdict {
    Pass,
    Fail,
}

type CliResult = Result<Verdict, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: cannot configure {threads} threads: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Construct(a) => construct(a),
        Command::StandardForm(a) => standard_form(a),
        Command::CheckOrth(a) => check_orth(a),
        Command::FindGates(a) => find_gates(a),
        Command::VerifyGate(a) => verify_gate(a),
        Command::Distance(a) => distance(a),
        Command::SearchMin(a) => search_min(a),
        Command::ReduceDegenerate(a) => reduce_degenerate(a),
    };
    match result {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn check_input(path: &Path) -> Result<(), String> {
    if !path.is_file() {
        return Err(format!("{}: no such file", path.display()));
    }
    Ok(())
}

fn check_output(path: &Path) -> Result<(), String> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() && !dir.is_dir() => {
            Err(format!("{}: directory does not exist", dir.display()))
        }
        _ => Ok(()),
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_code(path: &Path) -> Result<StandardFormCode, String> {
    let text = read(path)?;
    let at = |e: korthog::Error| format!("{}: {e}", path.display());
    let code = CodeDescriptor::from_json(&text).and_then(|d| d.to_code()).map_err(at)?;
    to_standard_form(&code).map_err(at)
}

fn load_matrix(path: &Path) -> Result<BitMat, String> {
    BitMat::parse_text(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn out(text: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush());
}

fn emit(kind: &str, body: Value) {
    out(&(Report::new(kind, body).to_json() + "\n"));
}

fn write_artifact(path: Option<&Path>, content: &str) -> Result<(), String> {
    match path {
        Some(path) => fs::write(path, content).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            out(content);
            Ok(())
        }
    }
}

fn rows(m: &BitMat) -> Vec<String> {
    m.rows().iter().map(BitVec::to_string).collect()
}

fn parse_phases(args: &PhaseArgs, n: usize) -> Result<(u32, Vec<u64>), String> {
    let k = args.k.ok_or("--k is required")?;
    let spec = args.p.as_deref().ok_or("--p is required")?;
    let p = if spec == "all-ones" {
        vec![1; n]
    } else {
        spec.split(',')
            .map(|s| s.trim().parse::<u64>().map_err(|e| format!("--p entry {s:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()?
    };
    if p.len() != n {
        return Err(format!("--p has {} entries, code has {n} qubits", p.len()));
    }
    Ok((k, p))
}

fn construct(a: ConstructArgs) -> CliResult {
    if let Some(out) = &a.out {
        check_output(out)?;
    }
    let content = if let Some(k) = a.minimal_k {
        minimal_korth_matrix(k).map_err(|e| e.to_string())?.to_text()
    } else {
        let m = a.m.expect("clap requires --m or --minimal-k");
        let sf = subdual_css(m).map_err(|e| e.to_string())?;
        match a.format {
            Format::JsonCode => {
                let mut s = CodeDescriptor::from_standard_form(&sf).map_err(|e| e.to_string())?.to_json();
                s.push('\n');
                s
            }
            Format::MatrixText => match a.matrix {
                Block::AX => sf.a_x().to_text(),
                Block::AZ => sf.a_z().to_text(),
            },
        }
    };
    write_artifact(a.out.as_deref(), &content)?;
    Ok(Verdict::Pass)
}

fn standard_form(a: StandardFormArgs) -> CliResult {
    check_input(&a.code)?;
    if let Some(out) = &a.out {
        check_output(out)?;
    }
    let sf = load_code(&a.code)?;
    let descriptor = CodeDescriptor::from_standard_form(&sf).map_err(|e| e.to_string())?;
    emit(
        "standard-form",
        json!({
            "n": sf.n(),
            "m": sf.m(),
            "a_x": rows(sf.a_x()),
            "b": rows(sf.b()),
            "x_phases": sf.x_phases().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "a_z": rows(sf.a_z()),
            "r": sf.r().to_string(),
            "s": sf.s().to_string(),
            "sign_frame": sf.sign_frame().to_string(),
            "pure_x_logical": sf.pure_x_logical(),
            "css": sf.is_css(),
            "code": descriptor,
        }),
    );
    if let Some(out) = &a.out {
        fs::write(out, descriptor.to_json() + "\n").map_err(|e| format!("{}: {e}", out.display()))?;
    }
    Ok(Verdict::Pass)
}

fn check_orth(a: CheckOrthArgs) -> CliResult {
    let a_x = match (&a.matrix, &a.code) {
        (Some(path), _) => {
            check_input(path)?;
            load_matrix(path)?
        }
        (None, Some(path)) => {
            check_input(path)?;
            load_code(path)?.a_x().clone()
        }
        (None, None) => return Err("--matrix or --code is required".into()),
    };
    let restriction = a
        .restrict
        .as_deref()
        .map(|s| s.parse::<BitVec>().map_err(|e| format!("--restrict: {e}")))
        .transpose()?;
    let report = is_k_orthogonal(&a_x, a.k, restriction.as_ref()).map_err(|e| e.to_string())?;
    let verdict = if report.holds { Verdict::Pass } else { Verdict::Fail };
    let mut body = serde_json::to_value(&report).expect("serializable");
    body["verdict"] = json!(if report.holds { "PASS" } else { "FAIL" });
    body["max_orthogonality"] = json!(max_orthogonality(&a_x));
    emit("check-orth", body);
    Ok(verdict)
}

fn find_gates(a: FindGatesArgs) -> CliResult {
    check_input(&a.code)?;
    let sf = load_code(&a.code)?;
    let found = find_transversal_phases(&sf, a.k).map_err(|e| e.to_string())?;
    let generators: Vec<Value> = found
        .generators
        .iter()
        .map(|(theta, phase)| json!({ "p": theta.numerators(), "logical_phase": phase.to_string() }))
        .collect();
    emit(
        "find-gates",
        json!({
            "k": found.k,
            "n": sf.n(),
            "log2_solutions": found.log2_count(),
            "generators": generators,
            "finest_logical_phase": found.finest_logical_phase.map(|p| p.to_string()),
        }),
    );
    Ok(Verdict::Pass)
}

fn verify_gate(a: VerifyGateArgs) -> CliResult {
    check_input(&a.code)?;
    if let Some(g) = &a.gate {
        check_input(g)?;
    }
    let sf = load_code(&a.code)?;
    let gate = match &a.gate {
        Some(path) => GateFile::from_json(&read(path)?)
            .and_then(|g| g.to_descriptor())
            .map_err(|e| format!("{}: {e}", path.display()))?,
        None => {
            let (k, p) = parse_phases(&a.phases, sf.n())?;
            GateDescriptor::new(k, a.controls, p).map_err(|e| e.to_string())?
        }
    };
    if gate.realized().len() != sf.n() {
        return Err(format!("gate has {} phases, code has {} qubits", gate.realized().len(), sf.n()));
    }
    if gate.controls() > 0 {
        let report = controlled_phase_action(&sf, &gate).map_err(|e| e.to_string())?;
        let mut body = serde_json::to_value(&report).expect("serializable");
        body["verdict"] = json!(if report.holds { "PASS" } else { "FAIL" });
        body["target_phase"] = json!(report.target_phase.to_string());
        emit("verify-gate", body);
        return Ok(if report.holds { Verdict::Pass } else { Verdict::Fail });
    }
    let theta = gate.realized();
    let action = logical_phase_action(&sf, theta).map_err(|e| e.to_string())?;
    let body = match &action {
        PhaseAction::Logical(phase) => {
            let necessity = verify_korth_necessity(&sf, theta)
                .ok()
                .map(|r| serde_json::to_value(r).expect("serializable"));
            json!({
                "verdict": "PASS",
                "k": gate.k(),
                "logical_phase": phase.to_string(),
                "numerator": phase.numerator,
                "non_clifford": gate.k() >= 3 && phase.numerator % 2 == 1,
                "necessity": necessity,
            })
        }
        PhaseAction::BreaksZero { x, residue } => json!({
            "verdict": "FAIL",
            "k": gate.k(),
            "reason": "a term of |0_L> picks up a nonzero phase",
            "witness": { "x": x.to_string(), "residue": residue },
        }),
        PhaseAction::BreaksOne { x, residue } => json!({
            "verdict": "FAIL",
            "k": gate.k(),
            "reason": "terms of |1_L> pick up different phases",
            "witness": { "x": x.to_string(), "residue": residue },
        }),
    };
    let pass = action.phase().is_some();
    if !sf.is_css() {
        eprintln!("note: non-CSS code; only basis-state supports enter the check, the s_xy signs do not");
    }
    emit("verify-gate", body);
    Ok(if pass { Verdict::Pass } else { Verdict::Fail })
}

fn typed(d: &TypedDistance) -> Value {
    serde_json::to_value(d).expect("serializable")
}

fn distance(a: DistanceArgs) -> CliResult {
    check_input(&a.code)?;
    let sf = load_code(&a.code)?;
    if !sf.is_css() {
        return Err("distance needs a CSS code (B block is nonzero)".into());
    }
    let opts = DistanceOptions {
        weight_cap: a.weight_cap,
        force: match a.method {
            MethodArg::Auto => None,
            MethodArg::Enumerate => Some(Method::NullSpaceEnumeration),
            MethodArg::Weight => Some(Method::IncreasingWeight),
        },
        ..DistanceOptions::default()
    };
    let report = css_distances_with(sf.a_x(), sf.a_z(), sf.r(), sf.s(), opts).map_err(|e| e.to_string())?;
    let show = |d: &TypedDistance| {
        if d.exact {
            d.distance.to_string()
        } else {
            format!(">={}", d.distance)
        }
    };
    if a.text {
        let mut text = format!("d_Z={} d_X={}\n", show(&report.d_z), show(&report.d_x));
        for (name, d) in [("Z", &report.d_z), ("X", &report.d_x)] {
            if let Some(w) = &d.witness {
                text.push_str(&format!("witness_{name}={w}\n"));
            }
        }
        out(&text);
    } else {
        emit(
            "distance",
            json!({
                "summary": format!("d_Z={} d_X={}", show(&report.d_z), show(&report.d_x)),
                "d_z": typed(&report.d_z),
                "d_x": typed(&report.d_x),
            }),
        );
    }
    Ok(Verdict::Pass)
}

fn search_min(a: SearchArgs) -> CliResult {
    let budget = Budget {
        time: a
            .budget_seconds
            .map(|s| {
                Duration::try_from_secs_f64(s).map_err(|e| format!("--budget-seconds {s}: {e}"))
            })
            .transpose()?,
        max_candidates: a.max_candidates,
    };
    let prune = match a.prune {
        PruneArg::None => Prune::None,
        PruneArg::Orbit => Prune::Orbit,
    };
    let space = SearchSpace::new(a.k, a.m_min, a.m_max, a.n_max)
        .with_prune(prune)
        .with_budget(budget);
    let report = minimality_search(&space).map_err(|e| e.to_string())?;
    let mut value = serde_json::to_value(&report).expect("serializable");
    if !a.timing {
        value
            .as_object_mut()
            .expect("report is an object")
            .remove("elapsed_seconds");
    }
    out(&(serde_json::to_string_pretty(&value).expect("serializable") + "\n"));
    Ok(Verdict::Pass)
}

fn reduce_degenerate(a: ReduceArgs) -> CliResult {
    check_input(&a.code)?;
    let sf = load_code(&a.code)?;
    let (k, p) = parse_phases(&a.phases, sf.n())?;
    let theta = DyadicPhaseVector::new(k, p).map_err(|e| e.to_string())?;
    let red = nondegenerate_reduction(&sf, &theta).map_err(|e| e.to_string())?;
    let describe = |action: PhaseAction| match action {
        PhaseAction::Logical(p) => json!({ "logical_phase": p.to_string() }),
        PhaseAction::BreaksZero { x, residue } => json!({ "breaks": "zero", "x": x.to_string(), "residue": residue }),
        PhaseAction::BreaksOne { x, residue } => json!({ "breaks": "one", "x": x.to_string(), "residue": residue }),
    };
    let before = logical_phase_action(&sf, &theta).map_err(|e| e.to_string())?;
    let after = logical_phase_action(&sf, &red.phases).map_err(|e| e.to_string())?;
    emit(
        "reduce-degenerate",
        json!({
            "classes": red.partition.classes,
            "representatives": red.partition.representatives,
            "undetectable_class": red.partition.undetectable,
            "nondegenerate": red.partition.is_nondegenerate(),
            "phases": red.phases.numerators(),
            "reduced_a_x": rows(&red.reduced_a_x),
            "action_before": describe(before),
            "action_after": describe(after),
        }),
    );
    Ok(Verdict::Pass)
}
