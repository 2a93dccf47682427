//! The `dgla` command-line front end.
//!
//! Exit codes: 0 success, 1 failed check or build/eval error, 2 usage error.

use std::io::{Read, Write};
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cells::{
    banana_model_at_a, banana_model_symmetric, banana_p, banana_symmetry, bigon_model, check_cyclic_covariance,
    check_identity6, check_reversal_covariance, check_symmetry, cube_data, interval_model, polyhedron_model,
    polyhedron_morphism, PVariant, PolyhedronSpec, SymmetryKind,
};
use crate::error::{DglaError, Result};
use crate::json::{
    element_from_json, element_to_json, model_to_json, operator_to_json, parse_tree, GeneratorEntry, GeneratorTable,
};
use crate::lie::series::{set_max_terms, TermLimitExceeded};
use crate::lie::{Generator, LieElement};
use crate::model::{
    check_bracket_free, check_d_squared, check_localised, check_locality, check_mc, check_morphism, Model, Morphism,
    Report,
};
use crate::series_calc::{bch_multi, exp_ad, extract_q, flow, mu2, mun, Differential};

#[derive(Parser, Debug)]
#[command(name = "dgla", version, about = "Build and verify DGLA models of cells")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a model and print it as JSON.
    Build {
        kind: ModelKind,
        #[command(flatten)]
        opts: ModelOpts,
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
    },
    /// Evaluate a series operation on elements read from JSON.
    Eval {
        op: EvalOp,
        /// Input file (`-` for stdin): `{"generators":[..],"args":[ELEMENT,..]}`.
        #[arg(long = "in")]
        input: Option<String>,
        #[arg(long, default_value_t = 3)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
    },
    /// Run a verification suite.
    Verify {
        suite: Suite,
        #[arg(long = "model", value_enum)]
        kind: Option<ModelKind>,
        #[command(flatten)]
        opts: ModelOpts,
        #[arg(long = "map", value_enum)]
        map: Option<MapKind>,
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ModelOpts {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long, value_enum)]
    pub variant: Option<Variant>,
    #[arg(long)]
    pub spec: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    Interval,
    Bigon,
    Banana,
    Cube,
    Polyhedron,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    AtA,
    Symmetric,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Tau,
    Sigma,
    Iota,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Emit {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalOp {
    Bch,
    Mu2,
    Mun,
    Flow,
    Expad,
    Q,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Dsquared,
    Mc,
    Locality,
    Boundary,
    Symmetry,
    Morphism,
    Bchprops,
    Identity6,
}

/// Failure of a command, mapped to an exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
}

impl From<DglaError> for CliError {
    fn from(e: DglaError) -> Self {
        CliError::Failed(e.to_string())
    }
}

/// Standard output of a successful or failing run.
pub struct Outcome {
    pub stdout: String,
    pub pass: bool,
}

fn default_order(kind: ModelKind) -> usize {
    match kind {
        ModelKind::Cube | ModelKind::Polyhedron => 2,
        _ => 3,
    }
}

fn read_spec(opts: &ModelOpts) -> std::result::Result<PolyhedronSpec, CliError> {
    let path = opts.spec.as_ref().ok_or_else(|| CliError::Usage("polyhedron requires --spec PATH".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Failed(format!("{}: {e}", path.display())))?;
    Ok(PolyhedronSpec::from_json(&text)?)
}

fn banana_n(opts: &ModelOpts) -> std::result::Result<usize, CliError> {
    match opts.n {
        Some(n) if n >= 2 => Ok(n),
        Some(n) => Err(CliError::Usage(format!("banana requires --n ≥ 2, got {n}"))),
        None => Err(CliError::Usage("banana requires --n".into())),
    }
}

pub fn build_model(kind: ModelKind, opts: &ModelOpts) -> std::result::Result<Model, CliError> {
    let order = opts.order.unwrap_or(default_order(kind));
    Ok(match kind {
        ModelKind::Interval => interval_model(order)?,
        ModelKind::Bigon => bigon_model(order)?,
        ModelKind::Banana => {
            let n = banana_n(opts)?;
            match opts.variant.unwrap_or(Variant::Symmetric) {
                Variant::AtA => banana_model_at_a(n, order)?,
                Variant::Symmetric => banana_model_symmetric(n, order)?,
            }
        }
        ModelKind::Cube => (*cube_data(order)?.model).clone(),
        ModelKind::Polyhedron => polyhedron_model(&read_spec(opts)?, order)?,
    })
}

fn run_build(kind: ModelKind, opts: &ModelOpts, emit: Emit) -> std::result::Result<Outcome, CliError> {
    let m = build_model(kind, opts)?;
    let stdout = match emit {
        Emit::Json => serde_json::to_string_pretty(&model_to_json(&m)).expect("json"),
        Emit::Text => {
            let mut s = format!("{} (order {})\n", m.name(), m.max_order());
            for c in m.cells() {
                s.push_str(&format!("d{} = {}\n", c.generator, c.diff));
            }
            s
        }
    };
    Ok(Outcome { stdout, pass: true })
}

#[derive(serde::Deserialize)]
struct EvalInput {
    #[serde(default)]
    generators: Vec<GeneratorEntry>,
    #[serde(default)]
    args: Vec<Value>,
    /// Differentials of the listed generators, for `flow`; every generator needs one.
    #[serde(default)]
    diff: Option<std::collections::BTreeMap<String, Value>>,
    /// Name of a built model supplying generators and differentials.
    #[serde(default)]
    model: Option<String>,
    #[serde(default)]
    n: Option<usize>,
    #[serde(default)]
    variant: Option<String>,
}

/// Differential given by an explicit table over a free generating set.
struct TableDiff(Model);

impl Differential for TableDiff {
    fn apply(&self, x: &crate::lie::AssocSeries) -> Result<crate::lie::AssocSeries> {
        self.0.apply(x)
    }
}

fn read_input(input: &Option<String>) -> std::result::Result<String, CliError> {
    match input.as_deref() {
        None => Err(CliError::Usage("this operation needs --in FILE (or - for stdin)".into())),
        Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Failed(e.to_string()))?;
            Ok(s)
        }
        Some(path) => std::fs::read_to_string(path).map_err(|e| CliError::Failed(format!("{path}: {e}"))),
    }
}

fn eval_context(inp: &EvalInput, order: usize) -> std::result::Result<(GeneratorTable, Option<Model>), CliError> {
    if let Some(kind) = &inp.model {
        let kind = ModelKind::from_str(kind, true).map_err(|_| CliError::Usage(format!("unknown model {kind:?}")))?;
        let variant = match inp.variant.as_deref() {
            None => None,
            Some(v) => Some(Variant::from_str(v, true).map_err(|_| CliError::Usage(format!("unknown variant {v:?}")))?),
        };
        let opts = ModelOpts { n: inp.n, order: Some(order), variant, spec: None };
        let m = build_model(kind, &opts)?;
        return Ok((GeneratorTable::from_model(&m), Some(m)));
    }
    let table = GeneratorTable::from_entries(&inp.generators)?;
    let model = match &inp.diff {
        None => None,
        Some(diffs) => {
            let mut cells = Vec::new();
            for e in &inp.generators {
                let g = table.get(&e.name)?;
                let d = match diffs.get(&e.name) {
                    Some(v) => element_from_json(v, &table)?,
                    None => return Err(CliError::Failed(format!("no differential given for {}", e.name))),
                };
                cells.push(crate::model::Cell::new(g, d.clone(), d.component(0), Default::default()));
            }
            Some(Model::new("input", order, cells)?)
        }
    };
    Ok((table, model))
}

/// An element, or a bare tree string standing for that tree with coefficient 1.
fn eval_arg(v: &Value, table: &GeneratorTable) -> Result<LieElement> {
    match v {
        Value::String(s) => Ok(LieElement::tree(parse_tree(s, table)?)),
        _ => element_from_json(v, table),
    }
}

fn arity(args: &[LieElement], n: usize) -> std::result::Result<(), CliError> {
    if args.len() != n {
        return Err(DglaError::ArityMismatch { expected: n, found: args.len() }.into());
    }
    Ok(())
}

fn run_eval(op: EvalOp, input: &Option<String>, order: usize, emit: Emit) -> std::result::Result<Outcome, CliError> {
    if op == EvalOp::Q {
        let q = extract_q(order);
        let stdout = match emit {
            Emit::Json => json!({"op": "q", "order": order, "result": operator_to_json(&q)}).to_string(),
            Emit::Text => operator_text(&q),
        };
        return Ok(Outcome { stdout, pass: true });
    }
    let text = read_input(input)?;
    let inp: EvalInput = serde_json::from_str(&text).map_err(|e| CliError::Failed(format!("parse error: {e}")))?;
    let (table, model) = eval_context(&inp, order)?;
    let args: Vec<LieElement> = inp.args.iter().map(|v| eval_arg(v, &table)).collect::<Result<_>>()?;
    let result = match op {
        EvalOp::Bch => bch_multi(&args, order)?,
        EvalOp::Mu2 => {
            arity(&args, 2)?;
            mu2(&args[0], &args[1], order)?
        }
        EvalOp::Mun => mun(&args, order)?,
        EvalOp::Expad => {
            arity(&args, 2)?;
            exp_ad(&args[0], &args[1], order)?
        }
        EvalOp::Flow => {
            arity(&args, 2)?;
            let m = model.ok_or_else(|| CliError::Failed("flow needs a \"diff\" table or a \"model\"".into()))?;
            flow(&args[0], &args[1], &TableDiff(m), order)?
        }
        EvalOp::Q => unreachable!(),
    };
    let name = format!("{op:?}").to_lowercase();
    let stdout = match emit {
        Emit::Json => json!({"op": name, "order": order, "result": element_to_json(&result)}).to_string(),
        Emit::Text => result.to_string(),
    };
    Ok(Outcome { stdout, pass: true })
}

fn operator_text(q: &crate::series_calc::OperatorPoly) -> String {
    use num_traits::Signed;
    let mut out = String::new();
    for (i, (w, c)) in q.terms().iter().enumerate() {
        let word: String = w.iter().map(|&k| format!("X{}", k + 1)).collect();
        let word = if word.is_empty() { "1".to_string() } else { word };
        let mag = crate::rational::format(&c.abs());
        match (i, c.is_negative()) {
            (0, false) => out.push_str(&format!("{mag} {word}")),
            (0, true) => out.push_str(&format!("-{mag} {word}")),
            (_, false) => out.push_str(&format!(" + {mag} {word}")),
            (_, true) => out.push_str(&format!(" - {mag} {word}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn symmetry_kind(m: MapKind) -> SymmetryKind {
    match m {
        MapKind::Tau => SymmetryKind::Tau,
        MapKind::Sigma => SymmetryKind::Sigma,
        MapKind::Iota => SymmetryKind::Iota,
    }
}

fn require_model(kind: Option<ModelKind>, suite: Suite) -> std::result::Result<ModelKind, CliError> {
    kind.ok_or_else(|| CliError::Usage(format!("suite {suite:?} requires --model")))
}

/// Interval edge `e ↦ e1` into a model whose first edge runs from `a` to `b`.
fn interval_into(target: Arc<Model>, order: usize) -> std::result::Result<Morphism, CliError> {
    let source = Arc::new(interval_model(order)?);
    let mut assign = std::collections::BTreeMap::new();
    for (s, t) in [("a", "a"), ("b", "b"), ("e", "e1")] {
        assign.insert(source.generator(s)?, target.elem(t)?);
    }
    Ok(Morphism::new(source, target, assign)?)
}

fn run_verify(
    suite: Suite,
    kind: Option<ModelKind>,
    opts: &ModelOpts,
    map: Option<MapKind>,
) -> std::result::Result<Vec<Report>, CliError> {
    let order_for = |k: ModelKind| opts.order.unwrap_or(default_order(k));
    Ok(match suite {
        Suite::Bchprops => bch_properties(opts.order.unwrap_or(4))?,
        Suite::Identity6 => {
            let n = banana_n(opts)?;
            let order = opts.order.unwrap_or(3);
            let ps = banana_p(n, order, PVariant::Averaged)?;
            vec![check_identity6(&ps, order)?, check_cyclic_covariance(&ps)?, check_reversal_covariance(&ps)?]
        }
        Suite::Dsquared => {
            let k = require_model(kind, suite)?;
            vec![check_d_squared(&build_model(k, opts)?, order_for(k))?]
        }
        Suite::Boundary => vec![check_bracket_free(&build_model(require_model(kind, suite)?, opts)?)],
        Suite::Mc => {
            let k = require_model(kind, suite)?;
            let m = build_model(k, opts)?;
            let mut reports = Vec::new();
            for g in m.generators().filter(|g| g.degree() == -1) {
                let mut r = check_mc(&m, &LieElement::generator(g), order_for(k))?;
                r.check = format!("mc:{g}");
                reports.push(r);
            }
            for c in m.cells() {
                if let Some(p) = &c.localisation {
                    let mut r = check_mc(&m, p, order_for(k))?;
                    r.check = format!("mc:{}", c.generator);
                    reports.push(r);
                }
            }
            reports
        }
        Suite::Locality => {
            let k = require_model(kind, suite)?;
            let m = build_model(k, opts)?;
            let mut reports = vec![check_locality(&m)];
            for c in m.cells().iter().filter(|c| c.generator.degree() >= 1) {
                if let Some(p) = &c.localisation {
                    let mut r = check_localised(&m, c.generator, p, order_for(k))?;
                    r.check = format!("localised:{}", c.generator);
                    reports.push(r);
                }
            }
            reports
        }
        Suite::Symmetry => {
            let k = require_model(kind, suite)?;
            if k != ModelKind::Banana {
                return Err(CliError::Usage("symmetry is defined for --model banana".into()));
            }
            let map = map.ok_or_else(|| CliError::Usage("symmetry requires --map".into()))?;
            let m = Arc::new(build_model(k, opts)?);
            let phi = banana_symmetry(symmetry_kind(map), m.clone())?;
            vec![check_symmetry(&m, &phi, order_for(k))?]
        }
        Suite::Morphism => {
            let k = require_model(kind, suite)?;
            let order = order_for(k);
            let phi = match k {
                ModelKind::Interval => Morphism::identity(Arc::new(build_model(k, opts)?)),
                ModelKind::Bigon | ModelKind::Banana => interval_into(Arc::new(build_model(k, opts)?), order)?,
                ModelKind::Cube => cube_data(order)?.morphism,
                ModelKind::Polyhedron => polyhedron_morphism(&read_spec(opts)?, order)?,
            };
            vec![check_morphism(&phi, order)?]
        }
    })
}

/// BCH properties on free degree-0 generators: re-exponentiation,
/// associativity, `BCH(ad_x, ad_y) = ad_{BCH(x,y)}`, and the `Q` identity.
fn bch_properties(order: usize) -> Result<Vec<Report>> {
    use crate::lie::AssocSeries;
    use crate::model::Failure;
    let g = |s: &str| LieElement::generator(Generator::new(s, 0));
    let (x, y, z) = (g("x"), g("y"), g("z"));
    let t = LieElement::generator(Generator::new("t", 1));
    let report = |name: &str, delta: AssocSeries| {
        let failures = crate::model::first_nonzero(&delta)
            .map(|k| Failure {
                subject: name.to_string(),
                component: k,
                term: LieElement::from_assoc(&delta.length_component(k + 1)).to_string(),
            })
            .into_iter()
            .collect();
        Report::new(name, failures)
    };
    let xy = bch_multi(&[x.clone(), y.clone()], order)?;
    let exp_check = xy.expand_assoc(order).exp().sub(&x.expand_assoc(order).exp().mul(&y.expand_assoc(order).exp()));
    let left = bch_multi(&[xy.clone(), z.clone()], order)?;
    let right = bch_multi(&[x.clone(), bch_multi(&[y.clone(), z.clone()], order)?], order)?;
    let (xs, ys, ts) = (x.expand_assoc(order), y.expand_assoc(order), t.expand_assoc(order));
    let ops = crate::series_calc::OperatorPoly::bch(
        &[crate::series_calc::OperatorPoly::symbol(0, 2, order), crate::series_calc::OperatorPoly::symbol(1, 2, order)],
        2,
        order,
    );
    let ad = ops.apply_series(&[xs.clone(), ys.clone()], &ts).sub(&xy.expand_assoc(order).bracket(&ts));
    let q = extract_q(order);
    let q_check =
        (&(&x + &y) + &q.apply(&[x.clone(), y.clone()], &y, order)?).expand_assoc(order).sub(&xy.expand_assoc(order));
    Ok(vec![
        report("bch_exp", exp_check),
        report("bch_assoc", left.expand_assoc(order).sub(&right.expand_assoc(order))),
        report("bch_ad", ad),
        report("q_identity", q_check),
    ])
}

fn verify_output(suite: Suite, reports: &[Report], emit: Emit) -> Outcome {
    let pass = reports.iter().all(|r| r.pass);
    let name = format!("{suite:?}").to_lowercase();
    let stdout = match emit {
        Emit::Json => {
            serde_json::to_string_pretty(&json!({"suite": name, "pass": pass, "checks": reports})).expect("json")
        }
        Emit::Text => {
            let mut lines: Vec<String> = reports
                .iter()
                .map(|r| {
                    let mut line = format!("{} {}", if r.pass { "PASS" } else { "FAIL" }, r.check);
                    if let Some(f) = r.failures.first() {
                        let term: String = f.term.chars().take(160).collect();
                        let more = if term.len() < f.term.len() { " ..." } else { "" };
                        line.push_str(&format!(" ({}: {}-bracket term {term}{more})", f.subject, f.component));
                    }
                    line
                })
                .collect();
            lines.push(format!("suite {name}: {}", if pass { "PASS" } else { "FAIL" }));
            lines.join("\n")
        }
    };
    Outcome { stdout, pass }
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> std::result::Result<Outcome, CliError> {
    match &cli.command {
        Command::Build { kind, opts, emit } => run_build(*kind, opts, *emit),
        Command::Eval { op, input, order, emit } => run_eval(*op, input, *order, *emit),
        Command::Verify { suite, kind, opts, map, emit } => {
            let reports = run_verify(*suite, *kind, opts, *map)?;
            Ok(verify_output(*suite, &reports, *emit))
        }
    }
}

fn max_terms_from_env() -> std::result::Result<Option<usize>, CliError> {
    match std::env::var("DGLA_MAX_TERMS") {
        Err(_) => Ok(None),
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("DGLA_MAX_TERMS must be a non-negative integer, got {v:?}"))),
    }
}

/// Entry point: parses arguments, runs, prints, and returns the exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match max_terms_from_env() {
        Ok(limit) => set_max_terms(limit),
        Err(CliError::Usage(msg)) | Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            return 2;
        }
    }
    let default_hook = panic::take_hook();
    panic::set_hook(Box::new(move |info| {
        if info.payload().downcast_ref::<TermLimitExceeded>().is_none() {
            default_hook(info);
        }
    }));
    let result = panic::catch_unwind(AssertUnwindSafe(|| execute(&cli)));
    match result {
        Ok(Ok(out)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{}", out.stdout).and_then(|_| stdout.flush());
            if out.pass {
                0
            } else {
                1
            }
        }
        Ok(Err(CliError::Usage(msg))) => {
            eprintln!("error: {msg}");
            2
        }
        Ok(Err(CliError::Failed(msg))) => {
            eprintln!("error: {msg}");
            1
        }
        Err(payload) => match payload.downcast_ref::<TermLimitExceeded>() {
            Some(t) => {
                eprintln!("error: term limit exceeded ({} terms, DGLA_MAX_TERMS = {})", t.found, t.limit);
                1
            }
            None => {
                eprintln!("error: internal failure");
                1
            }
        },
    }
}
