use std::fs;
use std::path::{Path, PathBuf};

use binary_lcl::classify::{randomized_bounds, relaxation_target, RandomizedBounds, RelaxationTarget};
use binary_lcl::labeling::LabelingError;
use binary_lcl::limits::Limits;
use binary_lcl::local::{run_local_simulation, LocalSolver, SimError, SimOptions};
use binary_lcl::oracle::{brute_force_solve, verify_labeling, witness_pair, BruteForceOutcome, OracleError, SearchMode};
use binary_lcl::re::{black_output, is_fixed_point, make_fdso, white_output, GeneralProblem, ReError};
use binary_lcl::solve::{plan, solve_with_plan, SolveError, SolvePlan};
use binary_lcl::tree::{caterpillar, complete_biregular, path, random_biregular, TreeDocument, TreeError};
use binary_lcl::{classify, BinaryProblem, Color, ColoredTree, Complexity, EdgeLabeling, Family};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::manifest::RunManifest;
use crate::{named, ColorArg, Command, GenArgs, OracleMode, RunMode, SideArg, TreeKind, WitnessKind};

/// Largest table `classify --sweep` will produce.
const MAX_SWEEP_ROWS: u64 = 2_000_000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Expectation(String),
    #[error("{0}")]
    Resource(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Expectation(_) => 3,
            CliError::Resource(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Expectation(_) => "expectation",
            CliError::Resource(_) => "resource",
        }
    }

    fn stage(self, stage: &str) -> CliError {
        match self {
            CliError::Input(m) => CliError::Input(format!("{stage}: {m}")),
            CliError::Expectation(m) => CliError::Expectation(format!("{stage}: {m}")),
            CliError::Resource(m) => CliError::Resource(format!("{stage}: {m}")),
        }
    }
}

impl From<TreeError> for CliError {
    fn from(e: TreeError) -> Self {
        match e {
            TreeError::TooLarge { .. } => CliError::Resource(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<LabelingError> for CliError {
    fn from(e: LabelingError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::TooManyEdges { .. } => CliError::Resource(e.to_string()),
            OracleError::Tree(t) => t.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<ReError> for CliError {
    fn from(e: ReError) -> Self {
        match e {
            ReError::AlphabetTooLarge { .. } | ReError::DegreeTooLarge { .. } => CliError::Resource(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::InvalidParameter(_) => CliError::Input(e.to_string()),
            _ => CliError::Expectation(e.to_string()),
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::MaxRoundsExceeded { .. } => CliError::Resource(e.to_string()),
            _ => CliError::Expectation(e.to_string()),
        }
    }
}

/// What a command produced; `failure` turns a complete run into exit code 3.
pub struct Outcome {
    pub manifest: RunManifest,
    pub result: Value,
    pub files: Vec<(PathBuf, Vec<u8>)>,
    pub failure: Option<String>,
}

impl Outcome {
    fn new(manifest: RunManifest, result: Value) -> Self {
        Outcome {
            manifest,
            result,
            files: Vec::new(),
            failure: None,
        }
    }
}

pub fn execute(cmd: &Command, limits: &Limits) -> Result<Outcome, CliError> {
    match cmd {
        Command::Classify { inline, problem, sweep } => cmd_classify(inline.as_deref(), problem.as_deref(), sweep.as_deref()),
        Command::Solve {
            problem,
            tree,
            mode,
            emit_layers,
            out,
        } => cmd_solve(problem, tree, *mode, emit_layers.as_ref(), out.as_deref(), limits),
        Command::Verify { problem, tree, labeling } => cmd_verify(problem, tree, labeling),
        Command::Oracle {
            problem,
            tree,
            witness,
            mode,
            max_edges,
        } => cmd_oracle(problem, tree.as_deref(), *witness, *mode, max_edges.unwrap_or(limits.max_edges)),
        Command::ReStep { problem, side, out } => cmd_re_step(problem, *side, out.as_deref(), limits),
        Command::FixedPoint { problem, fdso, pairs } => cmd_fixed_point(problem.as_deref(), fdso.as_deref(), *pairs, limits),
        Command::GenTree { generator, out } => cmd_gen_tree(generator, out.as_deref()),
        Command::Pipeline {
            problem,
            generator,
            mode,
            out,
            expect_solvable,
        } => cmd_pipeline(problem, generator, *mode, out.as_deref(), *expect_solvable, limits),
    }
}

fn limits_value(l: &Limits) -> Value {
    json!({
        "max_edges": l.max_edges,
        "max_rounds": l.max_rounds,
        "max_alphabet": l.max_alphabet,
        "max_re_degree": l.max_re_degree,
        "max_iso_alphabet": l.max_iso_alphabet,
    })
}

fn read_file(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn utf8(bytes: &[u8], path: &Path) -> Result<String, CliError> {
    String::from_utf8(bytes.to_vec()).map_err(|_| CliError::Input(format!("{} is not UTF-8", path.display())))
}

/// Resolves an example name, a file path or inline text to its bytes.
fn problem_text(arg: &str) -> Result<String, CliError> {
    if let Some(inline) = named::lookup(arg) {
        return Ok(inline.to_string());
    }
    let p = Path::new(arg);
    if p.is_file() {
        return utf8(&read_file(p)?, p);
    }
    Ok(arg.to_string())
}

fn load_problem(arg: &str, m: &mut RunManifest) -> Result<BinaryProblem, CliError> {
    let text = problem_text(arg)?;
    m.input("problem", text.as_bytes());
    let p = BinaryProblem::parse(&text).map_err(|e| CliError::Input(format!("problem: {e}")))?;
    m.param("problem", p.to_string());
    Ok(p)
}

fn is_general_document(text: &str) -> bool {
    serde_json::from_str::<Value>(text).is_ok_and(|v| v.get("alphabet").is_some())
}

fn load_general(arg: &str, m: &mut RunManifest) -> Result<GeneralProblem, CliError> {
    let text = problem_text(arg)?;
    m.input("problem", text.as_bytes());
    let g = if is_general_document(&text) {
        GeneralProblem::from_json(&text)?
    } else {
        let p = BinaryProblem::parse(&text).map_err(|e| CliError::Input(format!("problem: {e}")))?;
        GeneralProblem::from_binary(&p)
    };
    m.param("problem", g.to_document());
    Ok(g)
}

fn load_tree(path: &Path, m: &mut RunManifest) -> Result<ColoredTree, CliError> {
    let bytes = read_file(path)?;
    m.input("tree", &bytes);
    m.param("tree", path.display().to_string());
    Ok(ColoredTree::from_json(&utf8(&bytes, path)?)?)
}

fn json_bytes(value: &impl Serialize) -> Vec<u8> {
    let mut v = serde_json::to_vec(value).expect("json");
    v.push(b'\n');
    v
}

/// Ports are written only when they differ from the ascending-id default.
pub fn tree_document(t: &ColoredTree) -> TreeDocument {
    let plain = t.to_document(false);
    if ColoredTree::from_document(&plain).is_ok_and(|u| u == *t) {
        plain
    } else {
        t.to_document(true)
    }
}

#[derive(Serialize)]
struct ClassReport {
    problem: String,
    #[serde(flatten)]
    classification: binary_lcl::Classification,
    randomized: Option<RandomizedBounds>,
    #[serde(skip_serializing_if = "Option::is_none")]
    relaxation_target: Option<RelaxationTarget>,
}

fn class_report(p: &BinaryProblem) -> ClassReport {
    let classification = classify(p);
    let relax = (classification.primary_family == Family::VII)
        .then(|| relaxation_target(p).ok())
        .flatten();
    ClassReport {
        problem: p.to_string(),
        randomized: randomized_bounds(p).ok(),
        relaxation_target: relax,
        classification,
    }
}

fn bit_string(mask: u64, len: usize) -> String {
    (0..len).map(|i| if mask >> (len - 1 - i) & 1 == 1 { '1' } else { '0' }).collect()
}

fn cmd_classify(inline: Option<&str>, problem: Option<&str>, sweep: Option<&[usize]>) -> Result<Outcome, CliError> {
    let mut m = RunManifest::new("classify");
    if let Some(&[d_max, delta_max]) = sweep {
        if d_max < 2 || delta_max < 2 {
            return Err(CliError::Input("sweep bounds must be at least 2".into()));
        }
        m.param("sweep", [d_max, delta_max]);
        let total: u64 = (2..=d_max)
            .flat_map(|d| (2..=delta_max).map(move |e| (d, e)))
            .map(|(d, e)| 1u64.checked_shl((d + e + 2) as u32).unwrap_or(u64::MAX))
            .fold(0u64, |a, b| a.saturating_add(b));
        if total > MAX_SWEEP_ROWS {
            return Err(CliError::Resource(format!("sweep has {total} rows, over the cap of {MAX_SWEEP_ROWS}")));
        }
        let mut rows = Vec::with_capacity(total as usize);
        let mut counts = std::collections::BTreeMap::<Complexity, usize>::new();
        for d in 2..=d_max {
            for delta in 2..=delta_max {
                for w in 0..1u64 << (d + 1) {
                    for b in 0..1u64 << (delta + 1) {
                        let p = BinaryProblem::from_parts(d, delta, &bit_string(w, d + 1), &bit_string(b, delta + 1))
                            .expect("valid sweep problem");
                        let c = classify(&p);
                        *counts.entry(c.complexity).or_default() += 1;
                        rows.push(json!({
                            "problem": p.to_string(),
                            "complexity": c.complexity,
                            "primary_family": c.primary_family,
                        }));
                    }
                }
            }
        }
        let counts: serde_json::Map<String, Value> = counts
            .into_iter()
            .map(|(k, v)| (serde_json::to_value(k).expect("json").as_str().unwrap_or_default().to_string(), json!(v)))
            .collect();
        let result = json!({ "count": rows.len(), "by_complexity": counts, "rows": rows });
        return Ok(Outcome::new(m, result));
    }
    let p = match (inline, problem) {
        (Some(text), _) => {
            m.input("problem", text.as_bytes());
            let p = BinaryProblem::parse(text).map_err(|e| CliError::Input(format!("problem: {e}")))?;
            m.param("problem", p.to_string());
            p
        }
        (None, Some(arg)) => load_problem(arg, &mut m)?,
        (None, None) => return Err(CliError::Input("no problem given".into())),
    };
    let result = serde_json::to_value(class_report(&p)).expect("json");
    Ok(Outcome::new(m, result))
}

struct Solved {
    plan: SolvePlan,
    labeling: EdgeLabeling,
    rounds: Option<usize>,
}

/// Runs the solver in the requested mode and re-verifies the labeling.
fn run_solver(p: &BinaryProblem, t: &ColoredTree, mode: RunMode, limits: &Limits) -> Result<Solved, CliError> {
    let plan = plan(p)?;
    let (labeling, rounds) = match mode {
        RunMode::Centralized => (solve_with_plan(p, t, plan.clone())?.labeling, None),
        RunMode::Local => {
            let opts = SimOptions {
                max_rounds: limits.max_rounds,
                include_ids: true,
            };
            let sim = run_local_simulation(t, &LocalSolver::new(plan.clone()), opts)?;
            (sim.labeling, Some(sim.rounds))
        }
    };
    Ok(Solved { plan, labeling, rounds })
}

fn cmd_solve(
    problem: &str,
    tree: &Path,
    mode: RunMode,
    emit_layers: Option<&Option<PathBuf>>,
    out: Option<&Path>,
    limits: &Limits,
) -> Result<Outcome, CliError> {
    let mut m = RunManifest::new("solve");
    let p = load_problem(problem, &mut m)?;
    let t = load_tree(tree, &mut m)?;
    m.param("mode", mode);
    m.param("limits", limits_value(limits));
    let solved = run_solver(&p, &t, mode, limits)?;
    let violations = verify_labeling(&t, &p, &solved.labeling)?;
    let mut result = json!({
        "plan": solved.plan,
        "mode": mode,
        "rounds": solved.rounds,
        "edges": t.edge_count(),
        "violations": violations.len(),
    });
    let mut files = Vec::new();
    let doc = solved.labeling.to_document(&t);
    match out {
        Some(path) => {
            m.param("out", path.display().to_string());
            files.push((path.to_path_buf(), json_bytes(&doc)));
        }
        None => result["labeling"] = serde_json::to_value(&doc).expect("json"),
    }
    if let Some(target) = emit_layers {
        let layers = solve_with_plan(&p, &t, solved.plan.clone())?
            .decomposition
            .map(|dec| dec.to_document(&t));
        match (target, layers) {
            (Some(path), Some(doc)) => {
                m.param("emit_layers", path.display().to_string());
                files.push((path.clone(), json_bytes(&doc)));
            }
            (None, layers) => {
                m.param("emit_layers", true);
                result["layers"] = serde_json::to_value(&layers).expect("json");
            }
            (Some(path), None) => {
                m.param("emit_layers", path.display().to_string());
                result["layers"] = Value::Null;
            }
        }
    }
    let mut outcome = Outcome::new(m, result);
    outcome.files = files;
    if !violations.is_empty() {
        outcome.failure = Some(format!("solver output violates {} nodes", violations.len()));
    }
    Ok(outcome)
}

fn cmd_verify(problem: &str, tree: &Path, labeling: &Path) -> Result<Outcome, CliError> {
    let mut m = RunManifest::new("verify");
    let p = load_problem(problem, &mut m)?;
    let t = load_tree(tree, &mut m)?;
    let bytes = read_file(labeling)?;
    m.input("labeling", &bytes);
    m.param("labeling", labeling.display().to_string());
    let x = EdgeLabeling::from_json(&t, &utf8(&bytes, labeling)?)?;
    let violations = verify_labeling(&t, &p, &x)?;
    let n = violations.len();
    let result = json!({ "valid": n == 0, "violation_count": n, "violations": violations });
    let mut outcome = Outcome::new(m, result);
    if n > 0 {
        outcome.failure = Some(format!("{n} nodes violate their constraint"));
    }
    Ok(outcome)
}

fn search_mode(mode: OracleMode) -> SearchMode {
    match mode {
        OracleMode::First => SearchMode::First,
        OracleMode::Count => SearchMode::Count,
        OracleMode::All => SearchMode::All,
    }
}

fn cmd_oracle(
    problem: &str,
    tree: Option<&Path>,
    witness: Option<WitnessKind>,
    mode: OracleMode,
    max_edges: usize,
) -> Result<Outcome, CliError> {
    let mut m = RunManifest::new("oracle");
    let p = load_problem(problem, &mut m)?;
    m.param("mode", mode);
    m.param("max_edges", max_edges);
    let trees: Vec<(&str, ColoredTree)> = match (tree, witness) {
        (Some(path), _) => vec![("tree", load_tree(path, &mut m)?)],
        (None, Some(kind)) => {
            m.param("witness", kind);
            let [white, black] = witness_pair(&p)?;
            match kind {
                WitnessKind::Auto => vec![("white-center", white), ("black-center", black)],
                WitnessKind::White => vec![("white-center", white)],
                WitnessKind::Black => vec![("black-center", black)],
            }
        }
        (None, None) => return Err(CliError::Input("need --tree or --witness".into())),
    };
    let mut runs = Vec::new();
    let mut refuted = false;
    let mut min_count: Option<u64> = None;
    for (name, t) in &trees {
        let outcome = brute_force_solve(t, &p, search_mode(mode), max_edges)?;
        refuted |= !outcome.is_solvable();
        let mut run = json!({
            "tree": name,
            "nodes": t.node_count(),
            "edges": t.edge_count(),
            "solvable": outcome.is_solvable(),
        });
        match outcome {
            BruteForceOutcome::First(x) => {
                run["solution"] = serde_json::to_value(x.map(|x| x.to_document(t))).expect("json");
            }
            BruteForceOutcome::Count(c) => {
                min_count = Some(min_count.map_or(c, |a| a.min(c)));
                run["count"] = json!(c);
            }
            BruteForceOutcome::All(xs) => {
                let c = xs.len() as u64;
                min_count = Some(min_count.map_or(c, |a| a.min(c)));
                run["count"] = json!(c);
                run["solutions"] = serde_json::to_value(xs.iter().map(|x| x.to_document(t)).collect::<Vec<_>>())
                    .expect("json");
            }
        }
        runs.push(run);
    }
    let mut result = json!({ "refuted": refuted, "runs": runs });
    if let Some(c) = min_count {
        result["count"] = json!(c);
    }
    Ok(Outcome::new(m, result))
}

fn cmd_re_step(problem: &str, side: SideArg, out: Option<&Path>, limits: &Limits) -> Result<Outcome, CliError> {
    let mut m = RunManifest::new("re-step");
    let g = load_general(problem, &mut m)?;
    m.param("side", side);
    m.param("limits", limits_value(limits));
    let next = match side {
        SideArg::Black => black_output(&g, limits)?,
        SideArg::White => white_output(&g, limits)?,
    };
    let doc = next.to_document();
    let mut result = json!({
        "alphabet_size": next.alphabet.len(),
        "white_configurations": next.white.len(),
        "black_configurations": next.black.len(),
    });
    let mut files = Vec::new();
    match out {
        Some(path) => {
            m.param("out", path.display().to_string());
            files.push((path.to_path_buf(), json_bytes(&doc)));
        }
        None => result["problem"] = serde_json::to_value(&doc).expect("json"),
    }
    let mut outcome = Outcome::new(m, result);
    outcome.files = files;
    Ok(outcome)
}

fn parse_fdso(text: &str) -> Result<(usize, usize, usize), CliError> {
    let (mut d, mut delta, mut s) = (None, None, None);
    for part in text.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("expected key=value, got '{part}'")))?;
        let v: usize = v
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("bad value '{v}'")))?;
        match k.trim() {
            "d" => d = Some(v),
            "delta" => delta = Some(v),
            "s" => s = Some(v),
            other => return Err(CliError::Input(format!("unknown key '{other}'"))),
        }
    }
    match (d, delta, s) {
        (Some(d), Some(delta), Some(s)) => Ok((d, delta, s)),
        _ => Err(CliError::Input("--fdso needs d, delta and s".into())),
    }
}

fn cmd_fixed_point(problem: Option<&str>, fdso: Option<&str>, pairs: usize, limits: &Limits) -> Result<Outcome, CliError> {
    let mut m = RunManifest::new("fixed-point");
    let g = match (problem, fdso) {
        (Some(arg), _) => load_general(arg, &mut m)?,
        (None, Some(spec)) => {
            let (d, delta, s) = parse_fdso(spec)?;
            m.param("fdso", json!({ "d": d, "delta": delta, "s": s }));
            make_fdso(d, delta, s)?
        }
        (None, None) => return Err(CliError::Input("need --problem or --fdso".into())),
    };
    if pairs == 0 {
        return Err(CliError::Input("--pairs must be at least 1".into()));
    }
    m.param("pairs", pairs);
    m.param("limits", limits_value(limits));
    let report = is_fixed_point(&g, pairs, limits)?;
    let result = json!({
        "is_fixed_point": report.is_fixed_point,
        "pairs_needed": report.pairs_needed,
        "bijection": report.bijection,
        "intermediates": report.intermediates.iter().map(|h| h.to_document()).collect::<Vec<_>>(),
    });
    Ok(Outcome::new(m, result))
}

fn need(v: Option<usize>, flag: &str, kind: TreeKind) -> Result<usize, CliError> {
    v.ok_or_else(|| CliError::Input(format!("--{flag} is required for {kind:?} trees")))
}

fn color(c: ColorArg) -> Color {
    match c {
        ColorArg::White => Color::White,
        ColorArg::Black => Color::Black,
    }
}

/// Builds the requested tree; `defaults` supplies `d`, `delta` when not given.
fn generate(g: &GenArgs, defaults: Option<(usize, usize)>, m: &mut RunManifest) -> Result<ColoredTree, CliError> {
    let d = g.d.or(defaults.map(|x| x.0));
    let delta = g.delta.or(defaults.map(|x| x.1));
    m.param("kind", g.kind);
    let tree = match g.kind {
        TreeKind::Complete => {
            let (d, delta) = (need(d, "d", g.kind)?, need(delta, "delta", g.kind)?);
            let radius = need(g.radius, "radius", g.kind)?;
            m.param("d", d);
            m.param("delta", delta);
            m.param("radius", radius);
            m.param("center", g.center);
            complete_biregular(d, delta, radius, color(g.center), None)?
        }
        TreeKind::Random => {
            let (d, delta) = (need(d, "d", g.kind)?, need(delta, "delta", g.kind)?);
            let n = need(g.n, "n", g.kind)?;
            m.param("d", d);
            m.param("delta", delta);
            m.param("n", n);
            m.param("seed", g.seed);
            random_biregular(d, delta, n, g.seed)?
        }
        TreeKind::Caterpillar => {
            let d = need(d, "d", g.kind)?;
            let len = need(g.path_len, "path-len", g.kind)?;
            m.param("d", d);
            m.param("path_len", len);
            caterpillar(d, len, None)?
        }
        TreeKind::Path => {
            let n = need(g.n, "n", g.kind)?;
            m.param("n", n);
            m.param("center", g.center);
            path(n, color(g.center))?
        }
    };
    m.param("id_seed", g.id_seed);
    Ok(match g.id_seed {
        Some(seed) => tree.with_permuted_ids(seed),
        None => tree,
    })
}

fn cmd_gen_tree(g: &GenArgs, out: Option<&Path>) -> Result<Outcome, CliError> {
    let mut m = RunManifest::new("gen-tree");
    let t = generate(g, None, &mut m)?;
    let doc = tree_document(&t);
    let mut result = json!({ "nodes": t.node_count(), "edges": t.edge_count() });
    let mut files = Vec::new();
    match out {
        Some(path) => {
            m.param("out", path.display().to_string());
            files.push((path.to_path_buf(), json_bytes(&doc)));
        }
        None => result["tree"] = serde_json::to_value(&doc).expect("json"),
    }
    let mut outcome = Outcome::new(m, result);
    outcome.files = files;
    Ok(outcome)
}

fn cmd_pipeline(
    problem: &str,
    g: &GenArgs,
    mode: RunMode,
    out: Option<&Path>,
    expect_solvable: bool,
    limits: &Limits,
) -> Result<Outcome, CliError> {
    let mut m = RunManifest::new("pipeline");
    let p = load_problem(problem, &mut m)?;
    m.param("mode", mode);
    m.param("expect_solvable", expect_solvable);
    m.param("limits", limits_value(limits));
    let t = generate(g, Some((p.d, p.delta)), &mut m).map_err(|e| e.stage("generate"))?;
    let report = class_report(&p);
    let mut result = json!({
        "classification": report,
        "tree": { "nodes": t.node_count(), "edges": t.edge_count() },
        "mode": mode,
    });
    let mut outcome_files = Vec::new();
    let mut failure = None;
    if classify(&p).complexity == Complexity::Unsolvable {
        result["verdict"] = json!("UNSOLVABLE");
        if expect_solvable {
            failure = Some(format!("problem {p} is unsolvable"));
        }
    } else {
        let solved = run_solver(&p, &t, mode, limits).map_err(|e| e.stage("solve"))?;
        let violations = verify_labeling(&t, &p, &solved.labeling)
            .map_err(|e| CliError::from(e).stage("verify"))?;
        let pass = violations.is_empty();
        result["plan"] = serde_json::to_value(&solved.plan).expect("json");
        result["rounds"] = json!(solved.rounds);
        result["violations"] = json!(violations.len());
        result["verdict"] = json!(if pass { "PASS" } else { "FAIL" });
        let doc = solved.labeling.to_document(&t);
        match out {
            Some(path) => {
                m.param("out", path.display().to_string());
                outcome_files.push((path.to_path_buf(), json_bytes(&doc)));
            }
            None => result["labeling"] = serde_json::to_value(&doc).expect("json"),
        }
        if !pass {
            failure = Some(format!("verification failed at {} nodes", violations.len()));
        }
    }
    let mut outcome = Outcome::new(m, result);
    outcome.files = outcome_files;
    outcome.failure = failure;
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fdso_spec_parses() {
        assert_eq!(parse_fdso("d=3,delta=4,s=2").unwrap(), (3, 4, 2));
        assert!(parse_fdso("d=3,delta=4").is_err());
        assert!(parse_fdso("d=3,x=1,s=1").is_err());
    }

    #[test]
    fn sweep_bit_strings_are_msb_first() {
        assert_eq!(bit_string(0b011, 3), "011");
        assert_eq!(bit_string(1, 4), "0001");
    }

    #[test]
    fn error_codes() {
        assert_eq!(CliError::from(OracleError::TooManyEdges { edges: 30, cap: 22 }).exit_code(), 4);
        assert_eq!(CliError::from(TreeError::ZeroId).exit_code(), 2);
        assert_eq!(CliError::Expectation("x".into()).stage("solve").to_string(), "solve: x");
    }

    #[test]
    fn general_documents_are_recognised() {
        assert!(is_general_document(r#"{"alphabet":["A"],"d":2,"delta":2}"#));
        assert!(!is_general_document(r#"{"d":2,"delta":2,"W":"010","B":"010"}"#));
        assert!(!is_general_document("d=2,delta=2,W=010,B=010"));
    }
}
