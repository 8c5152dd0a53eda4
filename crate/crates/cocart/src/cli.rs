//! Command-line front end. Every command parses its inputs with [`crate::json`],
//! calls one library operation and serializes the result.
//!
//! Exit codes: 0 success or positive verdict, 1 negative verdict, 2 size guard or
//! search budget exceeded, 64 unreadable or unparsable input, 65 input that parses
//! but violates an axiom.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::fibration::{
    check_cocartesian_fibration, cocartesian_edges, interval_analysis, natural_marking_with, Fibration,
    VerdictReport,
};
use crate::fincat::{FinCategory, Functor, DEFAULT_GUARD};
use crate::grothendieck::{colimit, limit, straighten, unstraighten, ColimitMethod, ColimitReport, Strictification};
use crate::json::{self, AssignmentJson, CategoryJson, DiagramJson, FunctorJson, MapJson, RefJson};
use crate::lifting::{has_rlp, Labeled, RlpVerdict, DEFAULT_BUDGET};
use crate::marked::{delta_plus_hom_with, DpObject, DEFAULT_DEGREE_BOUND};
use crate::necklace::{appendix_battery, appendix_checks, necklace_category, NecklaceOpts};
use crate::simplicial::{Cell, FinSimplicialSet};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_SIZE: i32 = 2;
pub const EXIT_PARSE: i32 = 64;
pub const EXIT_INVARIANT: i32 = 65;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        Error::SizeGuard { .. } | Error::Budget(_) | Error::BoundExceeded { .. } => EXIT_SIZE,
        Error::NotAFibration(_) => EXIT_NEGATIVE,
        _ => EXIT_INVARIANT,
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    #[default]
    Auto,
    Category,
    Functor,
    Diagram,
    Simplicial,
    Map,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Set oracle for discrete values, localization otherwise.
    #[default]
    Auto,
    Localize,
    Sets,
}

#[derive(Debug, Parser)]
#[command(name = "cocart", version, about = "Cocartesian fibrations and straightening over finite categories")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Worker threads for commands taking several inputs.
    #[arg(long, default_value_t = 1, global = true)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Parse and check the axioms of a category, functor, diagram, simplicial set or map.
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Kind::Auto)]
        kind: Kind,
    },
    /// Decide whether a functor is a cocartesian fibration; prints lifts or a witness.
    CheckCocart {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Natural marking of a functor: nerves truncated at N, cocartesian edges marked.
    Mark {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        trunc: usize,
    },
    /// Fibers, L₁ ∘ i₀ and the cartesian criterion for a fibration over [1].
    Interval { file: PathBuf },
    /// Does the right map lift against the left one.
    Lift {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        unique: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Diagram classified by a cocartesian fibration.
    Straighten { file: PathBuf },
    /// Grothendieck construction of a diagram.
    Unstraighten { file: PathBuf },
    /// Colimit of a diagram.
    Colim {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        bound: usize,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Limit of a diagram as cocartesian sections.
    Lim {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        guard: usize,
    },
    /// Components of the mapping space between two vertices, by necklaces.
    MapSpace {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Only necklaces whose beads are nondegenerate.
        #[arg(long)]
        nondeg: bool,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        #[arg(long, default_value_t = 3)]
        max_beads: usize,
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        guard: usize,
    },
    /// Necklace checks on K; without a file, the standard battery at truncation N and N+1.
    AppendixA {
        file: Option<PathBuf>,
        #[arg(long, default_value = "+")]
        plus: String,
        #[arg(long, default_value_t = 2)]
        trunc: usize,
        /// Admit necklaces with degenerate beads.
        #[arg(long)]
        full: bool,
        #[arg(long, default_value_t = 3)]
        max_beads: usize,
    },
    /// The marked simplex category.
    DeltaPlus {
        #[command(subcommand)]
        command: DeltaPlusCommand,
    },
}

#[derive(Clone, Debug, Subcommand)]
pub enum DeltaPlusCommand {
    /// Arrows x -> y in normal form; objects are `+` or `n`.
    Hom {
        x: String,
        y: String,
        #[arg(long, default_value_t = DEFAULT_DEGREE_BOUND)]
        bound: usize,
    },
}

/// A parsed invocation.
#[derive(Clone, Debug)]
pub struct Job {
    pub command: Command,
    pub format: Format,
    pub jobs: usize,
}

impl Job {
    pub fn parse_from<I, T>(args: I) -> std::result::Result<Job, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args)?;
        Ok(Job { command: cli.command, format: cli.format, jobs: cli.jobs.max(1) })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Result of one command before formatting.
#[derive(Clone, Debug)]
pub struct Reply {
    pub code: i32,
    pub json: Value,
    pub text: String,
    pub dot: Option<String>,
}

impl Reply {
    fn new<T: Serialize>(code: i32, report: &T, text: String) -> Self {
        Reply { code, json: serde_json::to_value(report).expect("serializable"), text, dot: None }
    }

    fn with_dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }
}

#[derive(Clone, Debug, Serialize)]
struct ErrorJson {
    code: i32,
    message: String,
}

fn error_reply(e: &Error) -> Reply {
    let code = exit_code(e);
    let body = BTreeMap::from([("error", ErrorJson { code, message: e.to_string() })]);
    Reply::new(code, &body, String::new())
}

pub fn run(job: &Job) -> Outcome {
    let replies: Vec<(Option<String>, std::result::Result<Reply, Error>)> = match &job.command {
        Command::Validate { files, kind } => many(files, job.jobs, |p| validate(p, *kind)),
        Command::CheckCocart { files } => many(files, job.jobs, check_cocart),
        other => vec![(None, single(other))],
    };
    let code = replies
        .iter()
        .map(|(_, r)| match r {
            Ok(r) => r.code,
            Err(e) => exit_code(e),
        })
        .max()
        .unwrap_or(EXIT_OK);
    let mut stdout = String::new();
    let mut stderr = String::new();
    let multi = replies.len() > 1;
    match job.format {
        Format::Json => {
            let value = |r: &std::result::Result<Reply, Error>| match r {
                Ok(r) => r.json.clone(),
                Err(e) => error_reply(e).json,
            };
            let v = if multi {
                Value::Object(replies.iter().map(|(n, r)| (n.clone().unwrap_or_default(), value(r))).collect())
            } else {
                value(&replies[0].1)
            };
            stdout = serde_json::to_string_pretty(&v).expect("serializable");
            stdout.push('\n');
        }
        Format::Text | Format::Dot => {
            for (name, r) in &replies {
                if multi {
                    let _ = writeln!(stdout, "== {} ==", name.as_deref().unwrap_or(""));
                }
                match r {
                    Ok(r) if job.format == Format::Text => stdout.push_str(&r.text),
                    Ok(r) => match &r.dot {
                        Some(d) => stdout.push_str(d),
                        None => {
                            let _ = writeln!(stderr, "error: no graph output for this command");
                        }
                    },
                    Err(e) if multi => {
                        let _ = writeln!(stdout, "error: {e}");
                    }
                    Err(e) => {
                        let _ = writeln!(stderr, "error: {e}");
                    }
                }
            }
        }
    }
    let code = if job.format == Format::Dot && replies.iter().any(|(_, r)| matches!(r, Ok(r) if r.dot.is_none())) {
        code.max(EXIT_PARSE)
    } else {
        code
    };
    Outcome { code, stdout, stderr }
}

/// Independent inputs, run on up to `jobs` threads, reported sorted by path.
fn many(
    files: &[PathBuf],
    jobs: usize,
    f: impl Fn(&Path) -> Result<Reply> + Sync,
) -> Vec<(Option<String>, std::result::Result<Reply, Error>)> {
    let mut files: Vec<&PathBuf> = files.iter().collect();
    files.sort();
    files.dedup();
    let mut out: Vec<Option<Result<Reply>>> = vec![None; files.len()];
    let chunk = files.len().div_ceil(jobs.max(1)).max(1);
    std::thread::scope(|s| {
        for (fs, slots) in files.chunks(chunk).zip(out.chunks_mut(chunk)) {
            let f = &f;
            s.spawn(move || {
                for (p, slot) in fs.iter().zip(slots) {
                    *slot = Some(f(p));
                }
            });
        }
    });
    files
        .iter()
        .zip(out)
        .map(|(p, r)| (Some(p.display().to_string()), r.expect("every slot filled")))
        .collect()
}

fn single(c: &Command) -> Result<Reply> {
    match c {
        Command::Validate { .. } | Command::CheckCocart { .. } => unreachable!("handled by many"),
        Command::Mark { file, trunc } => mark(file, *trunc),
        Command::Interval { file } => interval(file),
        Command::Lift { left, right, unique, budget } => lift(left, right, *unique, *budget),
        Command::Straighten { file } => straighten_cmd(file),
        Command::Unstraighten { file } => unstraighten_cmd(file),
        Command::Colim { file, bound, method } => colim(file, *bound, *method),
        Command::Lim { file, guard } => lim(file, *guard),
        Command::MapSpace { file, from, to, nondeg, max_dim, max_beads, guard } => {
            let opts = NecklaceOpts { nondeg_only: *nondeg, max_dim: *max_dim, max_beads: *max_beads };
            map_space(file, from, to, opts, *guard)
        }
        Command::AppendixA { file, plus, trunc, full, max_beads } => appendix(file.as_deref(), plus, *trunc, *full, *max_beads),
        Command::DeltaPlus { command: DeltaPlusCommand::Hom { x, y, bound } } => delta_plus(x, y, *bound),
    }
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Graphviz rendering: objects as nodes, non-identity arrows as edges, flagged
/// arrows bold red.
pub fn dot_category(c: &FinCategory, flagged: &[bool]) -> String {
    let q = |s: &str| format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""));
    let mut s = String::from("digraph {\n  rankdir=LR;\n");
    for o in c.objects() {
        let _ = writeln!(s, "  {};", q(c.object_name(o)));
    }
    for a in c.non_identity_arrows() {
        let style = if flagged.get(a).copied().unwrap_or(false) { ", color=red, penwidth=2" } else { "" };
        let _ = writeln!(
            s,
            "  {} -> {} [label={}{}];",
            q(c.object_name(c.src(a))),
            q(c.object_name(c.tgt(a))),
            q(c.arrow_name(a)),
            style
        );
    }
    s.push_str("}\n");
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidateReport {
    pub kind: String,
    pub counts: BTreeMap<String, usize>,
}

fn detect(v: &Value) -> Kind {
    let has = |k: &str| v.get(k).is_some();
    if has("shape") {
        Kind::Diagram
    } else if has("assignment") {
        Kind::Map
    } else if has("source") && has("target") {
        Kind::Functor
    } else if has("cells") || has("nerve") {
        Kind::Simplicial
    } else if let Some(s) = v.get("standard").and_then(Value::as_str) {
        if matches!(s, "point" | "ordinal" | "discrete" | "indiscrete" | "parallel") {
            Kind::Category
        } else {
            Kind::Simplicial
        }
    } else {
        Kind::Category
    }
}

fn cat_counts(c: &FinCategory) -> BTreeMap<String, usize> {
    BTreeMap::from([("objects".into(), c.num_objects()), ("arrows".into(), c.num_arrows())])
}

fn set_counts(x: &FinSimplicialSet) -> BTreeMap<String, usize> {
    x.counts().iter().enumerate().map(|(n, &k)| (format!("dim{n}"), k)).collect()
}

pub fn validate(path: &Path, kind: Kind) -> Result<Reply> {
    let text = read(path)?;
    let kind = match kind {
        Kind::Auto => detect(&serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?),
        k => k,
    };
    let report = match kind {
        Kind::Category | Kind::Auto => ValidateReport { kind: "category".into(), counts: cat_counts(&json::parse_category(&text)?) },
        Kind::Functor => {
            let f = json::parse_functor(&text)?;
            let mut counts = cat_counts(&f.source);
            counts.insert("target_objects".into(), f.target.num_objects());
            counts.insert("target_arrows".into(), f.target.num_arrows());
            ValidateReport { kind: "functor".into(), counts }
        }
        Kind::Diagram => {
            let d = json::parse_diagram(&text)?;
            let mut counts = cat_counts(&d.shape);
            counts.insert("elements".into(), d.values.iter().map(|v| v.num_objects()).sum());
            ValidateReport { kind: "diagram".into(), counts }
        }
        Kind::Simplicial => {
            let m = json::parse_marked(&text)?;
            m.check()?;
            let mut counts = set_counts(&m.underlying);
            counts.insert("marked".into(), m.marked_nondegenerate().len());
            ValidateReport { kind: "simplicial".into(), counts }
        }
        Kind::Map => {
            let f = json::parse_marked_map(&text)?;
            f.check()?;
            let mut counts = set_counts(&f.source.underlying);
            counts.insert("target_cells".into(), f.target.underlying.total_cells());
            ValidateReport { kind: "map".into(), counts }
        }
    };
    let mut text = format!("valid {}\n", report.kind);
    for (k, v) in &report.counts {
        let _ = writeln!(text, "  {k}: {v}");
    }
    Ok(Reply::new(EXIT_OK, &report, text))
}

pub fn check_cocart(path: &Path) -> Result<Reply> {
    let p = json::parse_functor(&read(path)?)?;
    let v = check_cocartesian_fibration(&p);
    let report = VerdictReport::new(&p, &v);
    let mut text = String::new();
    if report.cocartesian {
        let _ = writeln!(text, "cocartesian fibration");
        let _ = writeln!(text, "lifts (object, base arrow -> lift):");
        for (x, a, l) in &report.lifts {
            let _ = writeln!(text, "  {x}  {a}  -> {l}");
        }
    } else {
        let (x, a) = report.witness.clone().unwrap_or_default();
        let _ = writeln!(text, "not a cocartesian fibration: {a} has no cocartesian lift at {x}");
    }
    let code = if report.cocartesian { EXIT_OK } else { EXIT_NEGATIVE };
    let dot = dot_category(&p.source, &cocartesian_edges(&p));
    Ok(Reply::new(code, &report, text).with_dot(dot))
}

pub fn mark(path: &Path, level: usize) -> Result<Reply> {
    let p = json::parse_functor(&read(path)?)?;
    let nm = natural_marking_with(&p, &cocartesian_edges(&p), level);
    let report: MapJson = json::marked_map_to_json(&nm.map);
    let x = &nm.total.set;
    let mut text = format!("natural marking at level {level}\n  cells: {:?}\n  marked:", x.counts());
    for e in nm.map.source.marked_nondegenerate() {
        let _ = write!(text, " {}", x.name(Cell::new(1, *e)));
    }
    text.push('\n');
    Ok(Reply::new(EXIT_OK, &report, text))
}

#[derive(Clone, Debug, Serialize)]
pub struct IntervalReport {
    pub fiber0: CategoryJson,
    pub fiber1: CategoryJson,
    /// `L₁ ∘ i₀` from the fiber over 0 to the fiber over 1.
    pub straightened: AssignmentJson,
    pub left_adjoint: AssignmentJson,
    pub cartesian: bool,
    pub right_adjoint: Option<AssignmentJson>,
}

fn line(f: &Functor) -> String {
    let a = json::assignment_to_json(f);
    a.objects.iter().map(|(x, y)| format!("{x}->{y}")).collect::<Vec<_>>().join(" ")
}

pub fn interval(path: &Path) -> Result<Reply> {
    let p = json::parse_functor(&read(path)?)?;
    let a = match interval_analysis(&p) {
        Err(Error::NotAFibration(m)) => {
            let v = check_cocartesian_fibration(&p);
            let report = VerdictReport::new(&p, &v);
            return Ok(Reply::new(EXIT_NEGATIVE, &report, format!("not a cocartesian fibration: {m}\n")));
        }
        other => other?,
    };
    let report = IntervalReport {
        fiber0: json::category_to_json(&a.fiber0.0),
        fiber1: json::category_to_json(&a.fiber1.0),
        straightened: json::assignment_to_json(&a.straightened),
        left_adjoint: json::assignment_to_json(&a.l1),
        cartesian: a.cartesian,
        right_adjoint: a.right_adjoint.as_ref().map(json::assignment_to_json),
    };
    let mut text = String::new();
    let _ = writeln!(text, "fiber over 0: {}", a.fiber0.0.object_names().join(" "));
    let _ = writeln!(text, "fiber over 1: {}", a.fiber1.0.object_names().join(" "));
    let _ = writeln!(text, "L1 . i0: {}", line(&a.straightened));
    let _ = writeln!(text, "cartesian: {}", a.cartesian);
    if let Some(r) = &a.right_adjoint {
        let _ = writeln!(text, "right adjoint: {}", line(r));
    }
    Ok(Reply::new(EXIT_OK, &report, text))
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftReport {
    pub holds: bool,
    /// `holds`, `fails` or `budget-exceeded`.
    pub verdict: String,
    pub squares: usize,
    pub fillers: Option<usize>,
    pub top: Option<BTreeMap<String, RefJson>>,
    pub bottom: Option<BTreeMap<String, RefJson>>,
}

pub fn lift(left: &Path, right: &Path, unique: bool, budget: u64) -> Result<Reply> {
    let i = json::parse_marked_map(&read(left)?)?;
    let p = json::parse_marked_map(&read(right)?)?;
    let r = has_rlp(&p, &[Labeled { label: "left".into(), map: i }], unique, budget);
    let (code, verdict, fillers, top, bottom) = match &r.verdict {
        RlpVerdict::Holds => (EXIT_OK, "holds", None, None, None),
        RlpVerdict::Fails { square, fillers, .. } => (
            EXIT_NEGATIVE,
            "fails",
            Some(*fillers),
            Some(json::map_to_json(&square.top.map).assignment),
            Some(json::map_to_json(&square.bottom.map).assignment),
        ),
        RlpVerdict::BudgetExceeded { .. } => (EXIT_SIZE, "budget-exceeded", None, None, None),
    };
    let report = LiftReport { holds: r.holds(), verdict: verdict.into(), squares: r.squares, fillers, top, bottom };
    let mut text = format!("{verdict} ({} squares)\n", r.squares);
    if let (Some(n), Some(t), Some(b)) = (&report.fillers, &report.top, &report.bottom) {
        let show = |m: &BTreeMap<String, RefJson>| {
            m.iter().map(|(k, v)| format!("{k}->{}{:?}", v.base, v.word)).collect::<Vec<_>>().join(" ")
        };
        let _ = writeln!(text, "square with {n} fillers\n  top: {}\n  bottom: {}", show(t), show(b));
    }
    Ok(Reply::new(code, &report, text))
}

#[derive(Clone, Debug, Serialize)]
pub struct StraightenReport {
    pub method: Strictification,
    pub comparisons: usize,
    pub diagram: DiagramJson,
}

pub fn straighten_cmd(path: &Path) -> Result<Reply> {
    let p = json::parse_functor(&read(path)?)?;
    let fib = match Fibration::new(p.clone()) {
        Ok(f) => f,
        Err(Error::NotAFibration(m)) => {
            let report = VerdictReport::new(&p, &check_cocartesian_fibration(&p));
            return Ok(Reply::new(EXIT_NEGATIVE, &report, format!("not a cocartesian fibration: {m}\n")));
        }
        Err(e) => return Err(e),
    };
    let st = straighten(&fib)?;
    let report = StraightenReport {
        method: st.method,
        comparisons: st.comparisons.len(),
        diagram: json::diagram_to_json(&st.diagram),
    };
    let d = &st.diagram;
    let mut text = format!("straightening by {:?}\n", st.method);
    for j in d.shape.objects() {
        let _ = writeln!(text, "  {}: {}", d.shape.object_name(j), d.values[j].object_names().join(" "));
    }
    for a in d.shape.non_identity_arrows() {
        let _ = writeln!(text, "  {}: {}", d.shape.arrow_name(a), line(&d.actions[a]));
    }
    Ok(Reply::new(EXIT_OK, &report, text))
}

#[derive(Clone, Debug, Serialize)]
pub struct UnstraightenReport {
    pub functor: FunctorJson,
    pub cocartesian: Vec<String>,
}

pub fn unstraighten_cmd(path: &Path) -> Result<Reply> {
    let d = json::parse_diagram(&read(path)?)?;
    let un = unstraighten(&d)?;
    let fib = &un.fibration;
    let total = fib.total();
    let report = UnstraightenReport {
        functor: json::functor_to_json(&fib.p),
        cocartesian: total.non_identity_arrows().filter(|&a| fib.is_cocartesian(a)).map(|a| total.arrow_name(a).to_string()).collect(),
    };
    let text = format!(
        "total category: {} objects, {} arrows\n  objects: {}\n  cocartesian: {}\n",
        total.num_objects(),
        total.num_arrows(),
        total.object_names().join(" "),
        report.cocartesian.join(" ")
    );
    let dot = dot_category(total, fib.flags());
    Ok(Reply::new(EXIT_OK, &report, text).with_dot(dot))
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum ColimitJson {
    Finite {
        method: String,
        objects: Vec<String>,
        components: usize,
        category: CategoryJson,
        legs: BTreeMap<String, AssignmentJson>,
    },
    Infinite {
        bound: usize,
        hom: (String, String),
        growth: Vec<usize>,
    },
}

pub fn colim(path: &Path, bound: usize, method: Method) -> Result<Reply> {
    let d = json::parse_diagram(&read(path)?)?;
    let m = match method {
        Method::Auto => ColimitMethod::auto(&d, bound),
        Method::Localize => ColimitMethod::Localization(bound),
        Method::Sets => ColimitMethod::SetOracle,
    };
    match colimit(&d, m)? {
        ColimitReport::Finite { method, category, legs } => {
            let report = ColimitJson::Finite {
                method: match method {
                    ColimitMethod::SetOracle => "sets".into(),
                    ColimitMethod::Localization(_) => "localization".into(),
                },
                objects: category.object_names().to_vec(),
                components: category.num_components(),
                category: json::category_to_json(&category),
                legs: d.shape.objects().map(|j| (d.shape.object_name(j).to_string(), json::assignment_to_json(&legs[j]))).collect(),
            };
            let text = format!(
                "colimit: {} objects, {} arrows, {} components\n  {}\n",
                category.num_objects(),
                category.num_arrows(),
                category.num_components(),
                category.object_names().join(" ")
            );
            let dot = dot_category(&category, &[]);
            Ok(Reply::new(EXIT_OK, &report, text).with_dot(dot))
        }
        ColimitReport::Infinite { bound, hom, growth } => {
            let text = format!("no finite localization within bound {bound}: Hom({}, {}) grows {:?}\n", hom.0, hom.1, growth);
            let report = ColimitJson::Infinite { bound, hom, growth };
            Ok(Reply::new(EXIT_SIZE, &report, text))
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitJson {
    pub objects: Vec<String>,
    pub category: CategoryJson,
    pub legs: BTreeMap<String, AssignmentJson>,
}

pub fn lim(path: &Path, guard: usize) -> Result<Reply> {
    let d = json::parse_diagram(&read(path)?)?;
    let l = limit(&d, guard)?;
    let c = &l.category;
    let report = LimitJson {
        objects: c.object_names().to_vec(),
        category: json::category_to_json(c),
        legs: d.shape.objects().map(|j| (d.shape.object_name(j).to_string(), json::assignment_to_json(&l.legs[j]))).collect(),
    };
    let mut text = format!("limit: {} objects, {} arrows\n", c.num_objects(), c.num_arrows());
    for k in 0..l.sections.len() {
        let vals: Vec<String> = d
            .shape
            .objects()
            .map(|j| format!("{}={}", d.shape.object_name(j), d.values[j].object_name(l.legs[j].ob(k))))
            .collect();
        let _ = writeln!(text, "  {}: {}", c.object_name(k), vals.join(" "));
    }
    let dot = dot_category(c, &[]);
    Ok(Reply::new(EXIT_OK, &report, text).with_dot(dot))
}

fn vertex(x: &FinSimplicialSet, name: &str) -> Result<Cell> {
    match x.find(name) {
        Some(c) if c.dim == 0 => Ok(c),
        _ => Err(Error::Parse(format!("no vertex named {name}"))),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MapSpaceReport {
    pub from: String,
    pub to: String,
    pub opts: NecklaceOpts,
    pub necklaces: Vec<String>,
    pub arrows: usize,
    pub pi0: usize,
}

pub fn map_space(path: &Path, from: &str, to: &str, opts: NecklaceOpts, guard: usize) -> Result<Reply> {
    let x = Arc::new(json::parse_simplicial(&read(path)?)?);
    let (s, t) = (vertex(&x, from)?, vertex(&x, to)?);
    let nc = necklace_category(&x, s, t, opts, guard)?;
    let c = &nc.category;
    let report = MapSpaceReport {
        from: from.into(),
        to: to.into(),
        opts,
        necklaces: nc.objects.iter().map(|m| m.name()).collect(),
        arrows: c.num_arrows(),
        pi0: nc.pi0(),
    };
    let text = format!(
        "necklace category {from} -> {to}: {} objects, {} arrows\nπ0 = {}\n",
        c.num_objects(),
        c.num_arrows(),
        report.pi0
    );
    let dot = dot_category(c, &[]);
    Ok(Reply::new(EXIT_OK, &report, text).with_dot(dot))
}

pub fn appendix(file: Option<&Path>, plus: &str, trunc: usize, full: bool, max_beads: usize) -> Result<Reply> {
    let show = |r: &crate::necklace::AppendixReport| {
        format!(
            "  objects {} (degenerate {}, nondegenerate {}), cross arrows {}\n  final object: {}\n  π0: degenerate {}, nondegenerate {}, comparison {}, total {}\n",
            r.objects,
            r.degenerate,
            r.nondegenerate,
            r.cross_arrows,
            r.final_object.as_deref().unwrap_or("none"),
            r.pi0_degenerate,
            r.pi0_nondegenerate,
            r.pi0_comparison,
            r.total
        )
    };
    match file {
        Some(path) => {
            let k = Arc::new(json::parse_simplicial(&read(path)?)?);
            let p = vertex(&k, plus)?;
            let opts = NecklaceOpts { nondeg_only: !full, max_dim: 2.max(k.top()), max_beads };
            let r = appendix_checks(&k, p, opts)?;
            let code = if r.holds() { EXIT_OK } else { EXIT_NEGATIVE };
            let text = format!("{}\n{}", if r.holds() { "checks hold" } else { "checks fail" }, show(&r));
            Ok(Reply::new(code, &r, text))
        }
        None => {
            let b = appendix_battery(trunc, !full, max_beads)?;
            let mut text = format!("oracle |Hom(+,+)| = {}\n", b.oracle);
            for (l, r) in &b.levels {
                let _ = write!(text, "sk{l}:\n{}", show(r));
            }
            let _ = writeln!(text, "stable: {}\n{}", b.stable, if b.passed() { "passed" } else { "failed" });
            let code = if b.passed() { EXIT_OK } else { EXIT_NEGATIVE };
            Ok(Reply::new(code, &b, text))
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HomReport {
    pub source: DpObject,
    pub target: DpObject,
    pub arrows: Vec<String>,
}

pub fn delta_plus(x: &str, y: &str, bound: usize) -> Result<Reply> {
    let (x, y): (DpObject, DpObject) = (x.parse()?, y.parse()?);
    let hom = delta_plus_hom_with(x, y, bound)?;
    let report = HomReport { source: x, target: y, arrows: hom.into_iter().map(|(_, w)| w).collect() };
    let mut text = format!("Hom({x}, {y}): {}\n", report.arrows.len());
    for w in &report.arrows {
        let _ = writeln!(text, "  {w}");
    }
    Ok(Reply::new(EXIT_OK, &report, text))
}
