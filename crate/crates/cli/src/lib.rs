//! The `pathalg` command line: argument parsing, name resolution and the
//! subcommands. [`run`] returns the exit code and both output streams so the
//! whole front end can be driven in-process.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad input.

pub mod examples;
pub mod registry;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path as FsPath;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use pathalg_core::admissible::{admissibility, breaking_vertices, kernel_generators, GraphInclusion};
use pathalg_core::algebra::expr::{evaluate, ExprError};
use pathalg_core::algebra::induced::{InducedHom, InducedKind};
use pathalg_core::algebra::AlgebraContext;
use pathalg_core::format::{self, GraphDoc, GraphRef, InclusionDoc, InstanceDoc, MorphismDoc};
use pathalg_core::pullback::{
    check_commutativity, check_hypotheses, check_kernel_inclusion, CommutativityReport, HypothesisReport,
    KernelReport, PullbackInstance, Status,
};
use pathalg_core::{compose, Category, Graph, PathHom};

#[derive(Debug, Parser)]
#[command(name = "pathalg", version, about = "Path homomorphisms and Leavitt path algebras")]
pub struct Cli {
    /// Machine-readable output
    #[arg(long, global = true)]
    pub json: bool,
    /// Override the length bound of a pullback instance
    #[arg(long, global = true, value_name = "N")]
    pub bound: Option<usize>,
    /// Load a graph file; it is registered under its file stem
    #[arg(long = "graph", global = true, value_name = "FILE")]
    pub graphs: Vec<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a morphism into the categories PG .. RMBPG
    Classify {
        /// Built-in morphism name or morphism file
        morphism: String,
        /// Exit 1 unless the morphism lies in this category
        #[arg(long, value_name = "CLASS")]
        require: Option<Category>,
    },
    /// Evaluate an expression to its normal form
    Eval(EvalArgs),
    /// Compose two morphisms: `compose G F` is G after F
    Compose { g: String, f: String },
    /// Check admissibility of a graph inclusion
    Admissible { inclusion: String },
    /// Check the pullback hypotheses of an instance
    Pullback { instance: String },
    /// Replay the built-in worked examples
    Examples { name: Option<String> },
    /// List built-in graphs, morphisms, inclusions, instances and examples
    List,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// `P(g)`, `C(g)`, `L(g)` or `R[v,w](g)` for a graph `g`
    pub context: String,
    #[arg(allow_hyphen_values = true)]
    pub expr: String,
    /// Push the element through the induced map of this morphism
    #[arg(long, value_name = "MORPHISM")]
    pub apply: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Unreadable, unparsable or unresolvable input.
    Input(String),
    /// A well-formed request whose check failed.
    Failed(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Failed(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Failed(m) => m,
        }
    }
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Graphs loaded from files, on top of the built-ins.
#[derive(Debug, Default)]
pub struct Workspace {
    graphs: BTreeMap<String, Arc<Graph>>,
}

fn read(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))
}

fn parse_file<T: serde::de::DeserializeOwned>(path: &str) -> Result<T, CliError> {
    format::parse(&read(path)?).map_err(|e| CliError::Input(format!("{path}:{e}")))
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn load_graph(&mut self, path: &str) -> Result<String, CliError> {
        let name = FsPath::new(path)
            .file_stem()
            .and_then(|s| s.to_str())
            .ok_or_else(|| CliError::Input(format!("no graph name in {path}")))?
            .to_string();
        if self.graph(&name).is_some() {
            return Err(CliError::Input(format!("graph name `{name}` is already taken")));
        }
        let doc: GraphDoc = parse_file(path)?;
        let g = doc.build().map_err(|e| CliError::Input(format!("{path}: {e}")))?;
        self.graphs.insert(name.clone(), Arc::new(g));
        Ok(name)
    }

    pub fn graph(&self, name: &str) -> Option<Arc<Graph>> {
        self.graphs
            .get(name)
            .cloned()
            .or_else(|| registry::find(registry::GRAPHS, name).map(Arc::new))
    }

    pub fn morphism(&self, arg: &str) -> Result<PathHom, CliError> {
        if let Some(f) = registry::find(registry::MORPHISMS, arg) {
            return Ok(f);
        }
        let doc: MorphismDoc = parse_file(arg)?;
        doc.build(&|n| self.graph(n)).map_err(|e| CliError::Input(format!("{arg}: {e}")))
    }

    pub fn inclusion(&self, arg: &str) -> Result<GraphInclusion, CliError> {
        if let Some(i) = registry::find(registry::INCLUSIONS, arg) {
            return Ok(i);
        }
        let doc: InclusionDoc = parse_file(arg)?;
        doc.build(&|n| self.graph(n)).map_err(|e| CliError::Input(format!("{arg}: {e}")))
    }

    pub fn instance(&self, arg: &str) -> Result<PullbackInstance, CliError> {
        if let Some(i) = registry::find(registry::INSTANCES, arg) {
            return Ok(i);
        }
        let doc: InstanceDoc = parse_file(arg)?;
        doc.build(&|n| self.graph(n)).map_err(|e| CliError::Input(format!("{arg}: {e}")))
    }

    /// Parses `P(g)`, `C(g)`, `L(g)` or `R[v,w,..](g)`.
    pub fn context(&self, spec: &str) -> Result<(char, Arc<AlgebraContext>), CliError> {
        let bad = || CliError::Input(format!("bad context `{spec}`: expected P(g), C(g), L(g) or R[v,..](g)"));
        let spec = spec.trim();
        let kind = spec.chars().next().ok_or_else(bad)?;
        let mut rest = &spec[kind.len_utf8()..];
        let mut xs = None;
        if kind == 'R' {
            let close = rest.find(']').ok_or_else(bad)?;
            let inner = rest.strip_prefix('[').ok_or_else(bad)?;
            let list = &inner[..close - 1];
            xs = Some(
                list.split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(String::from)
                    .collect::<Vec<_>>(),
            );
            rest = &rest[close + 1..];
        }
        let name = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .map(str::trim)
            .ok_or_else(bad)?;
        let g = self
            .graph(name)
            .ok_or_else(|| CliError::Input(format!("unknown graph `{name}`")))?;
        let ctx = match kind {
            'P' => AlgebraContext::path(g),
            'C' => AlgebraContext::cohn(g),
            'L' => AlgebraContext::leavitt(g),
            'R' => {
                let mut set = std::collections::BTreeSet::new();
                for v in xs.unwrap_or_default() {
                    set.insert(
                        g.vertex_by_name(&v)
                            .ok_or_else(|| CliError::Input(format!("unknown vertex `{v}` in `{name}`")))?,
                    );
                }
                AlgebraContext::relative_cohn(g, set)
            }
            _ => return Err(bad()),
        }
        .map_err(input)?;
        Ok((kind, ctx))
    }
}

/// Re-serializes a graph, morphism, inclusion or instance document in
/// canonical form. The kind is recognised by its leading fields.
pub fn canonicalize(text: &str) -> Result<String, CliError> {
    let value: serde_json::Value = format::parse(text).map_err(input)?;
    let has = |k: &str| value.get(k).is_some();
    let out = if has("graphs") {
        format::to_json(&format::parse::<InstanceDoc>(text).map_err(input)?)
    } else if has("dom") {
        format::to_json(&format::parse::<MorphismDoc>(text).map_err(input)?)
    } else if has("sub") {
        format::to_json(&format::parse::<InclusionDoc>(text).map_err(input)?)
    } else {
        format::to_json(&format::parse::<GraphDoc>(text).map_err(input)?)
    };
    Ok(out)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: 2, stdout: String::new(), stderr: text }
            } else {
                Output { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut out = String::new();
    match execute(&cli, &mut out) {
        Ok(()) => Output { code: 0, stdout: out, stderr: String::new() },
        Err(e) => Output {
            code: e.code(),
            stdout: out,
            stderr: format!("error: {}\n", e.message()),
        },
    }
}

pub fn execute(cli: &Cli, out: &mut String) -> Result<(), CliError> {
    let mut ws = Workspace::new();
    for path in &cli.graphs {
        ws.load_graph(path)?;
    }
    match &cli.command {
        Command::Classify { morphism, require } => classify(&ws, cli, morphism, *require, out),
        Command::Eval(args) => eval(&ws, args, out),
        Command::Compose { g, f } => compose_cmd(&ws, cli, g, f, out),
        Command::Admissible { inclusion } => admissible(&ws, cli, inclusion, out),
        Command::Pullback { instance } => pullback(&ws, cli, instance, out),
        Command::Examples { name } => run_examples(name.as_deref(), out),
        Command::List => {
            list(out);
            Ok(())
        }
    }
}

fn write_images(f: &PathHom, out: &mut String) {
    let d = f.dom();
    for v in d.vertices() {
        let _ = writeln!(out, "  {} -> {}", d.vertex_name(v), f.cod().vertex_name(f.vertex_image(v)));
    }
    for e in d.edges() {
        let _ = writeln!(out, "  {} -> {}", d.edge_name(e), f.fmt_edge_image(e));
    }
}

#[derive(Serialize)]
struct ClassifyJson {
    vertex_injective: bool,
    vertex_bijective_finite: bool,
    monotone: bool,
    regular: bool,
    classes: Vec<String>,
    witnesses: BTreeMap<&'static str, String>,
}

fn classify(ws: &Workspace, cli: &Cli, arg: &str, require: Option<Category>, out: &mut String) -> Result<(), CliError> {
    let f = ws.morphism(arg)?;
    let v = f.classify().map_err(failed)?;
    let classes: Vec<String> = Category::ALL
        .into_iter()
        .filter(|&c| v.is_member(c))
        .map(|c| c.to_string())
        .collect();
    let witnesses: BTreeMap<&'static str, String> =
        v.witnesses.iter().map(|(p, w)| (p.name(), w.describe(&f))).collect();
    if cli.json {
        out.push_str(&format::to_json(&ClassifyJson {
            vertex_injective: v.vertex_injective,
            vertex_bijective_finite: v.vertex_bijective_finite,
            monotone: v.monotone,
            regular: v.regular,
            classes: classes.clone(),
            witnesses: witnesses.clone(),
        }));
    } else {
        write_images(&f, out);
        for (name, value) in [
            ("vertex_injective", v.vertex_injective),
            ("vertex_bijective_finite", v.vertex_bijective_finite),
            ("monotone", v.monotone),
            ("regular", v.regular),
        ] {
            let _ = write!(out, "{name}: {value}");
            match witnesses.get(name) {
                Some(w) => {
                    let _ = writeln!(out, " ({w})");
                }
                None => out.push('\n'),
            }
        }
        let _ = writeln!(out, "classes: {}", classes.join(" "));
    }
    match require {
        Some(c) if !v.is_member(c) => {
            let why = v
                .first_failure(c)
                .map(|p| match witnesses.get(p.name()) {
                    Some(w) => format!("{} fails: {w}", p.name()),
                    None => format!("{} fails", p.name()),
                })
                .unwrap_or_default();
            Err(CliError::Failed(format!("not in {c}: {why}")))
        }
        _ => Ok(()),
    }
}

fn expr_error(e: ExprError) -> CliError {
    match e {
        ExprError::Algebra(a) => input(a),
        other => input(other),
    }
}

fn eval(ws: &Workspace, args: &EvalArgs, out: &mut String) -> Result<(), CliError> {
    let (kind, ctx) = ws.context(&args.context)?;
    let value = match &args.apply {
        None => evaluate(&ctx, &args.expr).map_err(expr_error)?,
        Some(m) => {
            let f = ws.morphism(m)?;
            let kind = match kind {
                'P' => InducedKind::Path,
                'C' => InducedKind::Cohn,
                'L' => InducedKind::Leavitt,
                _ => return Err(CliError::Input("--apply needs a P, C or L context".into())),
            };
            if **ctx.graph() != **f.dom() {
                return Err(CliError::Input(format!(
                    "{} is not the domain of the morphism",
                    args.context
                )));
            }
            let h = InducedHom::new(&f, kind).map_err(failed)?;
            let x = evaluate(h.source(), &args.expr).map_err(expr_error)?;
            h.apply(&x).map_err(failed)?
        }
    };
    let _ = writeln!(out, "{value}");
    Ok(())
}

fn compose_cmd(ws: &Workspace, cli: &Cli, g: &str, f: &str, out: &mut String) -> Result<(), CliError> {
    let (g, f) = (ws.morphism(g)?, ws.morphism(f)?);
    let h = compose(&g, &f).map_err(input)?;
    if cli.json {
        let doc = MorphismDoc::from_morphism(
            &h,
            GraphRef::Inline(GraphDoc::from_graph(h.dom())),
            GraphRef::Inline(GraphDoc::from_graph(h.cod())),
        );
        out.push_str(&format::to_json(&doc));
    } else {
        write_images(&h, out);
        let v = h.classify().map_err(failed)?;
        let classes: Vec<String> = Category::ALL
            .into_iter()
            .filter(|&c| v.is_member(c))
            .map(|c| c.to_string())
            .collect();
        let _ = writeln!(out, "classes: {}", classes.join(" "));
    }
    Ok(())
}

fn admissible(ws: &Workspace, cli: &Cli, arg: &str, out: &mut String) -> Result<(), CliError> {
    let inc = ws.inclusion(arg)?;
    let amb = inc.amb();
    let report = admissibility(&inc);
    let names = |vs: &mut dyn Iterator<Item = pathalg_core::VertexId>| -> Vec<String> {
        vs.map(|v| amb.vertex_name(v).to_string()).collect()
    };
    let complement = inc.complement();
    let breaking = breaking_vertices(amb, &complement).map_err(failed);
    let hereditary = report.hereditary.as_ref().map(|e| e.describe(amb));
    if cli.json {
        #[derive(Serialize)]
        struct AdmissibleJson {
            admissible: bool,
            detail: String,
            hereditary: bool,
            complement: Vec<String>,
            breaking_vertices: Option<Vec<String>>,
        }
        out.push_str(&format::to_json(&AdmissibleJson {
            admissible: report.is_admissible(),
            detail: report.describe(amb),
            hereditary: hereditary.is_none(),
            complement: names(&mut complement.iter().copied()),
            breaking_vertices: breaking.as_ref().ok().map(|b| names(&mut b.iter().copied())),
        }));
    } else {
        let _ = writeln!(out, "{}", report.describe(amb));
        match &hereditary {
            None => out.push_str("complement is hereditary\n"),
            Some(e) => {
                let _ = writeln!(out, "complement is not hereditary: {e}");
            }
        }
        let _ = writeln!(out, "complement: {{{}}}", names(&mut complement.iter().copied()).join(", "));
        match &breaking {
            Ok(b) => {
                let _ = writeln!(out, "breaking vertices: {{{}}}", names(&mut b.iter().copied()).join(", "));
            }
            Err(e) => {
                let _ = writeln!(out, "breaking vertices: {}", e.message());
            }
        }
        if let Ok(k) = kernel_generators(&inc) {
            let mut gens: Vec<String> = k
                .vertex_projections
                .iter()
                .map(|&v| amb.vertex_name(v).to_string())
                .collect();
            for (w, edges) in &k.breaking_corrections {
                let sum: Vec<String> = edges
                    .iter()
                    .map(|&e| format!("{0} {0}*", amb.edge_name(e)))
                    .collect();
                gens.push(format!("{} - {}", amb.vertex_name(*w), sum.join(" - ")));
            }
            let _ = writeln!(out, "kernel generators: {}", gens.join(", "));
        }
    }
    if report.is_admissible() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("not admissible: {}", report.describe(amb))))
    }
}

#[derive(Serialize)]
struct PullbackJson<'a> {
    report: &'a HypothesisReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    commutativity: Option<CommutativityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    kernel: Option<KernelReport>,
}

fn pullback(ws: &Workspace, cli: &Cli, arg: &str, out: &mut String) -> Result<(), CliError> {
    let mut inst = ws.instance(arg)?;
    if let Some(b) = cli.bound {
        inst = inst.with_bound(b);
    }
    let mut report = check_hypotheses(&inst);
    if inst.length_bound == 0 {
        report
            .notes
            .push("length bound 0: only paths of length 0 were checked".into());
    }
    let passed = matches!(report.overall, Status::Pass | Status::PassUpToBound);
    let (comm, kernel) = if passed {
        (
            Some(check_commutativity(&inst).map_err(failed)?),
            Some(check_kernel_inclusion(&inst).map_err(failed)?),
        )
    } else {
        (None, None)
    };
    if cli.json {
        out.push_str(&format::to_json(&PullbackJson {
            report: &report,
            commutativity: comm.clone(),
            kernel: kernel.clone(),
        }));
    } else {
        let _ = writeln!(out, "{report}");
        if let Some(c) = &comm {
            if c.commutes() {
                let _ = writeln!(out, "commutativity: all {} generators agree", c.entries.len());
            } else {
                for m in c.mismatches() {
                    let _ = writeln!(out, "commutativity: {} gives {} but {}", m.generator, m.via_f, m.via_f_res);
                }
            }
        }
        if let Some(k) = &kernel {
            let ok = k.entries.iter().filter(|e| e.killed_by_pi1 && e.maps_back).count();
            let _ = writeln!(
                out,
                "kernel: {ok}/{} spanning elements up to length {} have preimages killed by pi1*",
                k.entries.len(),
                k.length_bound
            );
        }
    }
    let commutes = comm.as_ref().is_none_or(CommutativityReport::commutes);
    let lifted = kernel.as_ref().is_none_or(KernelReport::holds);
    if !passed {
        Err(CliError::Failed(match report.first_failure() {
            Some(h) => format!("{} at {h}", report.overall),
            None => report.overall.to_string(),
        }))
    } else if !commutes {
        Err(CliError::Failed("the square does not commute".into()))
    } else if !lifted {
        Err(CliError::Failed("a kernel element has no suitable preimage".into()))
    } else {
        Ok(())
    }
}

fn run_examples(name: Option<&str>, out: &mut String) -> Result<(), CliError> {
    let selected: Vec<&examples::BuiltinExample> = match name {
        Some(n) => vec![examples::find(n).ok_or_else(|| CliError::Input(format!("unknown example `{n}`")))?],
        None => examples::EXAMPLES.iter().collect(),
    };
    let mut mismatches = 0;
    for ex in selected {
        let (actual, detail) = match (ex.run)() {
            Ok(o) => (o.summary, o.detail),
            Err(e) => (format!("error: {e}"), String::new()),
        };
        let ok = actual == ex.expected;
        if !ok {
            mismatches += 1;
        }
        let _ = writeln!(
            out,
            "{:<20} {}  expected: {}  actual: {}",
            ex.name,
            if ok { "match" } else { "MISMATCH" },
            ex.expected,
            actual
        );
        if !detail.is_empty() {
            let _ = writeln!(out, "{:<20} {detail}", "");
        }
    }
    if mismatches == 0 {
        Ok(())
    } else {
        Err(CliError::Failed(format!("{mismatches} example(s) did not match")))
    }
}

fn list(out: &mut String) {
    fn section<T>(out: &mut String, title: &str, table: &[registry::Builtin<T>]) {
        let _ = writeln!(out, "{title}:");
        for b in table {
            let _ = writeln!(out, "  {:<24} {}", b.name, b.about);
        }
    }
    section(out, "graphs", registry::GRAPHS);
    section(out, "morphisms", registry::MORPHISMS);
    section(out, "inclusions", registry::INCLUSIONS);
    section(out, "instances", registry::INSTANCES);
    let _ = writeln!(out, "examples:");
    for e in examples::EXAMPLES {
        let _ = writeln!(out, "  {:<24} {}", e.name, e.about);
    }
}
