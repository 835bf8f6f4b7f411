//! Command-line front end: argument parsing, command runners and reports.
//!
//! Every command produces a [`RunReport`] listing named checks; the process
//! exits with status 0 exactly when all of them pass.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::assembly::{self, AssemblyConfig};
use crate::automata::{Alphabet, CoreGraph};
use crate::covers::{
    build_branched_cover, build_branched_cover_noncut, girth, girth_amplify, is_cut_vertex, verify_branched_cover,
    BranchedCoverMap, Multigraph,
};
use crate::error::Error;
use crate::surface::{self, BranchingData, CoverPlan, SurfaceSig};
use crate::witness::{self, ConSeparation, DeltaSummary, ScsVerdict};

/// Relative `--out` paths are resolved against this directory when set.
pub const OUT_DIR_VAR: &str = "FOLDCOVER_OUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "foldcover",
    version,
    about = "Subgroup separation, graph covers and surface cover bookkeeping"
)]
pub struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Readable summary followed by the structured block.
    Text,
    /// The report as JSON.
    Structured,
    /// The constructed graph in DOT.
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Conjugate H2 into H1, or build a finite-index witness separating them.
    ConSeparate {
        #[command(flatten)]
        pair: PairArgs,
        /// Length bound for the witness (default: longest generator of H2).
        #[arg(long = "C")]
        c: Option<usize>,
    },
    /// Decide conjugacy of H1 and H2, separating them in a finite quotient otherwise.
    Scs {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Covers of finite graphs: large girth, branched, non-cut lifts.
    #[command(subcommand)]
    Cover(CoverCommand),
    /// Branching data of surface covers: realizability checks and planners.
    #[command(subcommand)]
    Surface(SurfaceCommand),
    /// Build a closed cover from an assembly configuration.
    Assemble {
        config: PathBuf,
        /// Override the number of layers.
        #[arg(long = "T")]
        t: Option<usize>,
    },
}

#[derive(Debug, clap::Args)]
pub struct PairArgs {
    #[arg(long, default_value_t = 2)]
    pub rank: usize,
    /// Comma-separated generators, e.g. `ab,Ba`.
    #[arg(long, allow_hyphen_values = true)]
    pub h1: String,
    /// Comma-separated generators; must not be empty.
    #[arg(long, allow_hyphen_values = true)]
    pub h2: String,
}

#[derive(Debug, clap::Args)]
pub struct GraphArgs {
    /// Multigraph JSON file `{"vertices": n, "edges": [[t, h], ...]}`.
    pub graph: Option<PathBuf>,
    /// Use the rose with this many petals instead of a file.
    #[arg(long, conflicts_with = "graph")]
    pub rose: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum CoverCommand {
    /// A finite cover with girth greater than m.
    Girth {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        m: usize,
    },
    /// A connected branched cover with prescribed branched degrees.
    Branched {
        #[command(flatten)]
        graph: GraphArgs,
        /// One degree per vertex, comma-separated.
        #[arg(long)]
        degrees: String,
    },
    /// As `branched`, with a lift of the given vertex that is not a cut vertex.
    Noncut {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        degrees: String,
        #[arg(long)]
        vertex: usize,
    },
}

#[derive(Debug, clap::Args)]
pub struct SurfaceArgs {
    #[arg(long)]
    pub genus: u64,
    #[arg(long)]
    pub boundaries: usize,
}

#[derive(Debug, Subcommand)]
pub enum SurfaceCommand {
    /// Realizability of branching data, given inline or as `@file`.
    Check { data: String },
    /// Degree 2 or 4 cover of positive genus with a degree-1 circle over `R1`.
    Cor1 {
        #[command(flatten)]
        surface: SurfaceArgs,
    },
    /// Even-degree cover in which every boundary circle has degree `M`.
    #[command(name = "corM")]
    CorM {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Branching data of the cover to factor through (default: identity).
        #[arg(long)]
        phi: Option<String>,
        #[arg(long = "M")]
        m: u64,
    },
    /// As `corM`, keeping one circle of degree 1 over a chosen label.
    #[command(name = "corM1")]
    CorM1 {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Branching data of the cover to factor through (default: the cor1 plan).
        #[arg(long)]
        phi: Option<String>,
        #[arg(long = "M")]
        m: u64,
    },
    /// The uniform plan and the per-label plans for `M` a multiple of `M0`.
    VeryTechnical {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long = "M")]
        m: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    /// SHA-256 of the command name and its canonical inputs.
    pub inputs_digest: String,
    pub result: Value,
    pub checks: Vec<NamedCheck>,
    pub provenance: BTreeMap<String, Value>,
    #[serde(skip)]
    pub dot: Option<String>,
    /// Extra files written next to `--out`, keyed by extension.
    #[serde(skip)]
    pub attachments: Vec<(String, String)>,
}

impl RunReport {
    fn new(command: &str, inputs: &[&str]) -> RunReport {
        let mut hasher = Sha256::new();
        hasher.update(command.as_bytes());
        for i in inputs {
            hasher.update([0u8]);
            hasher.update(i.as_bytes());
        }
        let digest = hasher.finalize().iter().fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        });
        RunReport {
            command: command.into(),
            inputs_digest: digest,
            result: Value::Null,
            checks: Vec::new(),
            provenance: BTreeMap::new(),
            dot: None,
            attachments: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(NamedCheck {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn note(&mut self, key: &str, value: impl Serialize) {
        self.provenance
            .insert(key.into(), serde_json::to_value(value).expect("provenance serializes"));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        writeln!(out, "inputs: sha256:{}", self.inputs_digest).unwrap();
        for (k, v) in &self.provenance {
            writeln!(out, "{k}: {v}").unwrap();
        }
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            writeln!(out, "[{mark}] {}: {}", c.name, c.detail).unwrap();
        }
        writeln!(out, "status: {}", if self.passed() { "ok" } else { "failed" }).unwrap();
        writeln!(out, "--- structured ---").unwrap();
        out.push_str(&self.to_json());
        out.push('\n');
        out
    }

    pub fn render(&self, format: Format) -> Result<String, Error> {
        match format {
            Format::Text => Ok(self.to_text()),
            Format::Structured => Ok(self.to_json() + "\n"),
            Format::Dot => self
                .dot
                .clone()
                .ok_or_else(|| Error::Usage(format!("{} produces no graph to draw", self.command))),
        }
    }
}

fn core(alphabet: Alphabet, text: &str) -> Result<CoreGraph, Error> {
    let gens = alphabet.parse_generators(text)?;
    Ok(CoreGraph::build(alphabet, &gens))
}

fn alphabet(rank: usize) -> Result<Alphabet, Error> {
    Alphabet::new(rank).ok_or_else(|| Error::Usage("rank must be at least 1".into()))
}

fn separation_result(report: &mut RunReport, h1: &CoreGraph, result: &ConSeparation) -> Value {
    match result {
        ConSeparation::Conjugator { g, verified } => {
            report.check(
                "conjugator",
                *verified,
                format!("every generator h of H2 has {g}^-1 h {g} in H1"),
            );
            json!({ "kind": "conjugator", "g": g.to_string() })
        }
        ConSeparation::Witness { delta, scan } => {
            let summary = DeltaSummary::from(delta.as_ref());
            report.check("h1_contained", scan.h1_contained, "every generator of H1 lies in D");
            report.check(
                "no_conjugate_of_h2",
                scan.failures.is_empty(),
                format!(
                    "{} cosets scanned, {} contain a conjugate of H2",
                    scan.cosets_checked,
                    scan.failures.len()
                ),
            );
            report.check(
                "distance_property",
                delta.distance_ok(),
                format!("{:?} with bound {}", delta.removed_edge_distance, delta.params.c),
            );
            let labeled = delta.cover.to_labeled();
            let props = witness::verify_witness_properties(&labeled, h1, delta.params.c);
            report.check(
                "witness_properties",
                props.passed(),
                format!("{} paths examined", props.paths_examined),
            );
            report.note("C", delta.params.c);
            report.note("index", delta.index());
            report.note("gamma_k_girth", delta.gamma_k.girth);
            report.dot = Some(labeled.to_dot("witness"));
            json!({
                "kind": "witness",
                "summary": summary,
                "scan": scan,
                "cover": labeled.to_document(),
            })
        }
    }
}

fn load_graph(args: &GraphArgs) -> Result<(Multigraph, String), Error> {
    match (&args.graph, args.rose) {
        (_, Some(k)) => Ok((Multigraph::rose(k), format!("rose:{k}"))),
        (Some(p), None) => {
            let text = std::fs::read_to_string(p)?;
            let g = Multigraph::from_json(&text)?;
            Ok((g, text))
        }
        (None, None) => Err(Error::Usage("give a graph file or --rose".into())),
    }
}

fn parse_degrees(s: &str) -> Result<Vec<usize>, Error> {
    s.split(',')
        .map(|d| {
            d.trim()
                .parse()
                .map_err(|_| Error::Usage(format!("{d:?} is not a branched degree")))
        })
        .collect()
}

fn branched_checks(report: &mut RunReport, map: &BranchedCoverMap) {
    let r = verify_branched_cover(map);
    report.check("connected", r.connected, format!("{} vertices", map.source.vertices));
    for (c, what) in [
        (0, "maps respect endpoints"),
        (1, "every edge has `sheets` preimages"),
        (2, "each lift covers each incident end d times"),
        (3, "degrees over each vertex sum to `sheets`"),
    ] {
        let details: Vec<&str> = r
            .violations
            .iter()
            .filter(|v| v.condition == c)
            .map(|v| v.detail.as_str())
            .collect();
        let name = if c == 0 {
            "shape".to_string()
        } else {
            format!("condition_{c}")
        };
        report.check(
            &name,
            details.is_empty(),
            if details.is_empty() {
                what.to_string()
            } else {
                details.join("; ")
            },
        );
    }
    report.note("sheets", map.sheets);
    report.dot = Some(map.to_dot("branched"));
}

fn read_data(arg: &str) -> Result<(BranchingData, String), Error> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)?,
        None => arg.to_string(),
    };
    let data = text.trim().parse()?;
    Ok((data, text))
}

fn plan_checks(report: &mut RunReport, prefix: &str, plan: &CoverPlan) {
    report.check(
        &format!("{prefix}arithmetic"),
        plan.arithmetic_ok(),
        "degree sums and Euler characteristic identities on every stage",
    );
    report.check(
        &format!("{prefix}realizable"),
        plan.realizable(),
        plan.stages
            .iter()
            .map(|s| format!("{}: {:?}", s.name, s.verdict))
            .collect::<Vec<_>>()
            .join("; "),
    );
}

fn plan_value(plan: &CoverPlan) -> Value {
    json!({
        "result": plan.result.to_string(),
        "stages": plan.stages,
    })
}

fn sig(args: &SurfaceArgs) -> SurfaceSig {
    SurfaceSig::orientable(args.genus, args.boundaries)
}

fn run_surface(cmd: &SurfaceCommand) -> Result<RunReport, Error> {
    let mut report;
    match cmd {
        SurfaceCommand::Check { data } => {
            let (b, text) = read_data(data)?;
            report = RunReport::new("surface check", &[text.trim()]);
            let verdict = surface::hurwitz_check(&b)?;
            report.check(
                "arithmetic",
                b.sums_ok() && b.euler_ok(),
                "degree sums and Euler characteristic",
            );
            report.check("realizable", verdict.is_realizable(), format!("{verdict:?}"));
            report.result = json!({ "data": b.to_string(), "verdict": verdict });
        }
        SurfaceCommand::Cor1 { surface: s } => {
            report = RunReport::new("surface cor1", &[&s.genus.to_string(), &s.boundaries.to_string()]);
            let plan = surface::plan_cor1(&sig(s))?;
            plan_checks(&mut report, "", &plan);
            report.result = plan_value(&plan);
        }
        SurfaceCommand::CorM { surface: s, phi, m } => {
            let base = sig(s);
            let phi = match phi {
                Some(p) => read_data(p)?.0,
                None => BranchingData::identity(&base),
            };
            report = RunReport::new(
                "surface corM",
                &[
                    &s.genus.to_string(),
                    &s.boundaries.to_string(),
                    &phi.to_string(),
                    &m.to_string(),
                ],
            );
            let plan = surface::plan_corm(&base, &phi, *m)?;
            plan_checks(&mut report, "", &plan);
            report.check(
                "boundary_degrees",
                plan.result.data.iter().flatten().all(|d| d == m) && plan.result.degree % 2 == 0,
                format!("every boundary has degree {m}, total degree {}", plan.result.degree),
            );
            report.note("M", m);
            report.result = plan_value(&plan);
        }
        SurfaceCommand::CorM1 { surface: s, phi, m } => {
            let base = sig(s);
            let phi = match phi {
                Some(p) => read_data(p)?.0,
                None => surface::plan_cor1(&base)?.result,
            };
            report = RunReport::new(
                "surface corM1",
                &[
                    &s.genus.to_string(),
                    &s.boundaries.to_string(),
                    &phi.to_string(),
                    &m.to_string(),
                ],
            );
            let plan = surface::plan_corm1(&base, &phi, *m)?;
            plan_checks(&mut report, "", &plan);
            report.note("M", m);
            report.result = plan_value(&plan);
        }
        SurfaceCommand::VeryTechnical { surface: s, m } => {
            report = RunReport::new(
                "surface very-technical",
                &[&s.genus.to_string(), &s.boundaries.to_string(), &m.to_string()],
            );
            let p = surface::plan_very_technical(&sig(s), *m)?;
            plan_checks(&mut report, "theta.", &p.theta);
            for (i, plan) in p.theta_i.iter().enumerate() {
                plan_checks(&mut report, &format!("theta_{}.", i + 1), plan);
            }
            let first = &p.theta.result.data[0];
            report.check(
                "uniform_shape",
                p.theta
                    .result
                    .data
                    .iter()
                    .all(|ds| ds == first && ds.iter().all(|d| d == m)),
                format!("every label covered by {} circles of degree {m}", p.c),
            );
            let special_ok = p.theta_i.iter().enumerate().all(|(i, plan)| {
                plan.result.data.iter().enumerate().all(|(j, ds)| {
                    if i == j {
                        let mut expected = vec![1; (*m / 2) as usize];
                        expected.push(m / 2);
                        expected.extend(std::iter::repeat_n(*m, p.d as usize - 1));
                        *ds == expected
                    } else {
                        *ds == vec![*m; p.d as usize]
                    }
                })
            });
            report.check(
                "special_shape",
                special_ok,
                "each per-label plan differs only at its own label",
            );
            report.note("M0", p.m0);
            report.note("modulus_uniform", p.modulus_uniform);
            report.note("modulus_special", p.modulus_special);
            report.note("out_of_scope", &p.out_of_scope);
            report.result = json!({
                "theta": plan_value(&p.theta),
                "theta_i": p.theta_i.iter().map(plan_value).collect::<Vec<_>>(),
            });
        }
    }
    Ok(report)
}

fn run_cover(cmd: &CoverCommand) -> Result<RunReport, Error> {
    match cmd {
        CoverCommand::Girth { graph, m } => {
            let (g, text) = load_graph(graph)?;
            let mut report = RunReport::new("cover girth", &[&text, &m.to_string()]);
            let amp = girth_amplify(&g, *m)?;
            let measured = girth(&amp.cover.graph);
            report.check(
                "cover_valid",
                amp.cover.verify(&g).is_ok(),
                format!("{} sheets", amp.cover.sheets()),
            );
            report.check(
                "girth",
                measured.exceeds(*m),
                format!("BFS girth {measured}, required above {m}"),
            );
            let increasing = amp.stages.windows(2).all(|w| w[1].girth > w[0].girth);
            report.check(
                "girth_increasing",
                increasing,
                format!("{} rounds", amp.stages.len() - 1),
            );
            report.note("m", m);
            report.note("girths", amp.stages.iter().map(|s| s.girth).collect::<Vec<_>>());
            report.dot = Some(amp.cover.graph.to_dot("cover"));
            report.result = serde_json::to_value(&amp.cover)?;
            Ok(report)
        }
        CoverCommand::Branched { graph, degrees } => {
            let (g, text) = load_graph(graph)?;
            let mut report = RunReport::new("cover branched", &[&text, degrees]);
            let map = build_branched_cover(&g, &parse_degrees(degrees)?)?;
            branched_checks(&mut report, &map);
            report.result = serde_json::to_value(&map)?;
            Ok(report)
        }
        CoverCommand::Noncut { graph, degrees, vertex } => {
            let (g, text) = load_graph(graph)?;
            let mut report = RunReport::new("cover noncut", &[&text, degrees, &vertex.to_string()]);
            let nc = build_branched_cover_noncut(&g, &parse_degrees(degrees)?, *vertex)?;
            branched_checks(&mut report, &nc.map);
            let ok = nc.map.vertex_map[nc.lift] == *vertex && !is_cut_vertex(&nc.map.source, nc.lift);
            report.check("noncut_lift", ok, format!("lift {} of vertex {vertex}", nc.lift));
            report.note("source_girth", nc.source_girth);
            report.result = json!({ "map": nc.map, "lift": nc.lift });
            Ok(report)
        }
    }
}

fn run_assemble(path: &Path, t: Option<usize>) -> Result<RunReport, Error> {
    let text = std::fs::read_to_string(path)?;
    let mut cfg: AssemblyConfig = text.parse()?;
    if let Some(t) = t {
        cfg.params.t = t;
    }
    let mut report = RunReport::new("assemble", &[&text, &cfg.params.t.to_string()]);
    let a = assembly::assemble(&cfg)?;
    for c in &a.report.checks {
        report.check(&c.name, c.passed, c.detail.clone());
    }
    report.note("n", cfg.params.n);
    report.note("M", cfg.params.m);
    report.note("T", cfg.params.t);
    report.note("sheets", a.report.sheets);
    report.note("euler_char", a.report.euler_char);
    report.note("pattern_girth", a.report.pattern_girth);
    report.note("underlying_girth", a.report.underlying_girth);
    report.note(
        "copies",
        json!({ "S_T": a.closure.copies_st, "A_M": a.closure.copies_am, "A_2M": a.closure.copies_a2m }),
    );
    let closed = a.closed();
    report.dot = Some(closed.to_dot("assembly"));
    report.attachments.push(("complex".into(), closed.to_text()));
    report.attachments.push(("dot".into(), closed.to_dot("assembly")));
    report.result = json!({
        "pieces": closed.pieces.len(),
        "gluings": closed.gluings.len(),
        "pattern_vertices": a.closure.pattern_vertices,
        "amplification_rounds": a.closure.amplification_rounds,
        "inventories": a.inventories.iter().map(|inv| {
            inv.iter().map(|(&(l, d), &k)| format!("({},{}) x{k}", assembly::label_name(l), d)).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
        "complex": closed,
    });
    Ok(report)
}

/// Runs a parsed command line and returns its report.
pub fn run(cli: &Cli) -> Result<RunReport, Error> {
    match &cli.command {
        Command::ConSeparate { pair, c } => {
            let a = alphabet(pair.rank)?;
            let (h1, h2) = (core(a, &pair.h1)?, core(a, &pair.h2)?);
            let bound = c.map(|c| c.to_string()).unwrap_or_default();
            let mut report = RunReport::new("con-separate", &[&pair.rank.to_string(), &pair.h1, &pair.h2, &bound]);
            let result = witness::con_separate_with_bound(&h1, &h2, *c)?;
            report.result = separation_result(&mut report, &h1, &result);
            Ok(report)
        }
        Command::Scs { pair } => {
            let a = alphabet(pair.rank)?;
            let (h1, h2) = (core(a, &pair.h1)?, core(a, &pair.h2)?);
            let mut report = RunReport::new("scs", &[&pair.rank.to_string(), &pair.h1, &pair.h2]);
            report.result = match witness::scs(&h1, &h2)? {
                ScsVerdict::Conjugate { g, verified } => {
                    report.check("both_inclusions", verified, format!("{g}^-1 H1 {g} = H2"));
                    json!({ "verdict": "conjugate", "g": g.to_string() })
                }
                ScsVerdict::Separated { direction, result } => {
                    let inner = match direction {
                        witness::Direction::H1FromH2 => &h1,
                        witness::Direction::H2FromH1 => &h2,
                    };
                    report.check(
                        "separated",
                        matches!(result, ConSeparation::Witness { .. }),
                        format!("{direction:?}"),
                    );
                    let v = separation_result(&mut report, inner, &result);
                    json!({ "verdict": "separated", "direction": direction, "result": v })
                }
            };
            Ok(report)
        }
        Command::Cover(c) => run_cover(c),
        Command::Surface(s) => run_surface(s),
        Command::Assemble { config, t } => run_assemble(config, *t),
    }
}

fn resolve(out: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if out.is_relative() => Path::new(&dir).join(out),
        _ => out.to_path_buf(),
    }
}

/// Writes through a temporary file in the same directory and renames it
/// into place.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}

/// Parses arguments, runs the command and writes its output. Returns the
/// process exit code: 0 when every check passed, 1 when some check failed,
/// 2 on errors.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let outcome = run(&cli).and_then(|report| {
        let rendered = report.render(cli.format)?;
        match &cli.out {
            Some(out) => {
                let path = resolve(out);
                write_atomic(&path, &rendered)?;
                for (ext, body) in &report.attachments {
                    let mut p = path.clone().into_os_string();
                    p.push(format!(".{ext}"));
                    write_atomic(Path::new(&p), body)?;
                }
            }
            None => print!("{rendered}"),
        }
        Ok(report.passed())
    });
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
