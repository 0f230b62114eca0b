//! Command-line surface: argument types and the commands behind them.
//!
//! Every command writes JSON lines to stdout and a short human summary to
//! stderr. Edge sets are arrays of edge ids; with `--extended` the extra
//! point is edge id m, one past the last edge in the file.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::arrangement::{
    build_arrangement, chromatic_polynomials, count_regions, enumerate_cells, generate_family, polytope_dimension,
    polytope_points, Family, FamilySpec, Hyperplane, IntPolynomial, PointFamily, SignPattern,
};
use crate::corpus::{load_dir, random_instance};
use crate::edge_set::EdgeSet;
use crate::error::{Error, Result};
use crate::gain::GainSignedGraph;
use crate::group::{AbelianGroup, Integers, IntegersMod, RationalEmbedding};
use crate::instance::{AnyGraph, InstanceFile};
use crate::linalg::{exact_rank, RationalField};
use crate::matroid::{
    bases, circuits, classify_circuit, closure, cocircuits, descriptor, is_independent, minor, rank, rank_table, Budget,
    FlatKind,
};
use crate::verify::{verify_any, Status, VerifyOptions};
use crate::with_graph;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "gainsign", version, about = "Matroids and arrangements of gain signed graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub limits: Limits,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Limits {
    /// Largest ground set for flats, bases, cocircuits and verification.
    #[arg(long, global = true, default_value_t = 16)]
    pub max_edges: usize,
    /// Most subsets any single enumeration may visit.
    #[arg(long, global = true, default_value_t = 1 << 20)]
    pub max_subsets: u64,
}

impl Limits {
    pub fn budget(&self) -> Budget {
        let log = (63 - self.max_subsets.max(1).leading_zeros()) as usize;
        Budget { max_edges: self.max_edges.min(log), max_circuit_edges: log }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Input {
    /// Instance file (JSON).
    pub file: PathBuf,
    /// Work in the one-point extension by the extra point.
    #[arg(long)]
    pub extended: bool,
    /// Comma-separated edge ids; an empty string is the empty set.
    #[arg(long)]
    pub subset: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank of a subset (default: all edges).
    Rank(Input),
    /// Whether a subset (default: all edges) is independent.
    Independent(Input),
    /// Closure of a subset (default: the empty set).
    Closure(Input),
    /// Every circuit with its class.
    Circuits(Input),
    /// Every basis.
    Bases(Input),
    /// Every cocircuit.
    Cocircuits(Input),
    /// Delete and contract edges, printing the minor as an instance file.
    Minor {
        file: PathBuf,
        /// Comma-separated edge ids to delete.
        #[arg(long, default_value = "")]
        delete: String,
        /// Comma-separated edge ids to contract.
        #[arg(long, default_value = "")]
        contract: String,
    },
    /// Hyperplanes, chromatic polynomials and region counts.
    Arrangement {
        /// Instance file; use --family instead to generate one.
        #[arg(required_unless_present = "family", conflicts_with = "family")]
        file: Option<PathBuf>,
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Lower end −k of the gain window.
        #[arg(long, default_value_t = 0)]
        k: i64,
        /// Upper end l of the gain window.
        #[arg(long, default_value_t = 1)]
        l: i64,
        /// Signs for custom deformations: positive, negative, both, both-with-loops.
        #[arg(long, default_value = "positive")]
        pattern: String,
    },
    /// Run the full oracle battery over a corpus or random instances.
    Verify {
        #[arg(long, required_unless_present = "random", conflicts_with = "random")]
        corpus: Option<PathBuf>,
        /// SEED COUNT
        #[arg(long, num_args = 2, value_names = ["SEED", "COUNT"])]
        random: Option<Vec<u64>>,
    },
    /// Affine dimension of a polytope spanned by edge points.
    Polytope {
        #[arg(long)]
        points: String,
        file: PathBuf,
    },
}

/// What a command produced. `code` is the exit status.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Report {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Report {
    fn line(&mut self, v: Value) {
        self.stdout += &v.to_string();
        self.stdout.push('\n');
    }

    fn note(&mut self, s: impl AsRef<str>) {
        self.stderr += s.as_ref();
        self.stderr.push('\n');
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Budget { .. } => EXIT_BUDGET,
        _ => EXIT_INPUT,
    }
}

/// Run a command; errors become a report with the matching exit code.
pub fn run(cli: &Cli) -> Report {
    match dispatch(cli) {
        Ok(r) => r,
        Err(e) => Report { stdout: String::new(), stderr: format!("error: {e}\n"), code: exit_code(&e) },
    }
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let budget = cli.limits.budget();
    match &cli.command {
        Command::Rank(i) => with_input(i, |u, s| Ok(cmd_rank(u, s))),
        Command::Independent(i) => with_input(i, |u, s| Ok(cmd_independent(u, s))),
        Command::Closure(i) => with_input(i, |u, s| Ok(cmd_closure(u, s))),
        Command::Circuits(i) => with_input(i, |u, _| cmd_circuits(u, i.extended, &budget)),
        Command::Bases(i) => with_input(i, |u, _| cmd_bases(u, &budget)),
        Command::Cocircuits(i) => with_input(i, |u, _| cmd_cocircuits(u, &budget)),
        Command::Minor { file, delete, contract } => {
            let g = load(file)?;
            with_graph!(&g, u => cmd_minor(u, &parse_ids(delete, u.m())?, &parse_ids(contract, u.m())?))
        }
        Command::Arrangement { file, family, n, k, l, pattern } => {
            let g = match (file, family) {
                (Some(f), _) => load(f)?,
                (None, Some(name)) => {
                    let spec = FamilySpec::new(name.parse::<Family>()?, *n)
                        .window(*k, *l)
                        .pattern(pattern.parse::<SignPattern>()?);
                    AnyGraph::Z(generate_family(&spec)?)
                }
                (None, None) => return Err(Error::Invalid("give a file or --family".into())),
            };
            match &g {
                AnyGraph::Z(u) => cmd_arrangement(u, &budget),
                AnyGraph::Q(u) => cmd_arrangement(u, &budget),
                AnyGraph::Zmod(_) => Err(Error::Invalid("arrangements need gains in Z or Q".into())),
            }
        }
        Command::Verify { corpus, random } => {
            let opts = VerifyOptions { budget, ..VerifyOptions::default() };
            let instances = match (corpus, random.as_deref()) {
                (Some(dir), _) => load_dir(dir)?,
                (None, Some(&[seed, count])) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    (0..count)
                        .map(|i| (format!("random-{seed}-{i}"), AnyGraph::Z(random_instance(&mut rng, &Integers, 4, 6, 2))))
                        .collect()
                }
                _ => return Err(Error::Invalid("give --corpus DIR or --random SEED COUNT".into())),
            };
            Ok(cmd_verify(&instances, &opts))
        }
        Command::Polytope { points, file } => {
            let family: PointFamily = points.parse()?;
            let g = load(file)?;
            with_graph!(&g, u => cmd_polytope(u, family))
        }
    }
}

pub fn load(path: &PathBuf) -> Result<AnyGraph> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    AnyGraph::parse(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// Parse "0,2,5" into an edge set over `m` edges.
pub fn parse_ids(s: &str, m: usize) -> Result<EdgeSet> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let e: usize = t.parse().map_err(|_| Error::Parse(format!("not an edge id: {t:?}")))?;
            if e >= m {
                return Err(Error::EdgeOutOfRange(e));
            }
            Ok(e)
        })
        .collect()
}

fn ids(s: &EdgeSet) -> Value {
    json!(s.to_vec())
}

/// Load the input, extend it if asked, and hand over the chosen subset
/// (`None` when `--subset` was not given).
fn with_input(
    i: &Input,
    f: impl Fn(&dyn InputGraph, Option<EdgeSet>) -> Result<Report>,
) -> Result<Report> {
    let g = load(&i.file)?;
    with_graph!(&g, u => {
        let u = if i.extended { u.extended() } else { u.clone() };
        let s = i.subset.as_deref().map(|s| parse_ids(s, u.m())).transpose()?;
        f(&u, s)
    })
}

/// The operations the per-subset commands need, object safe so one closure
/// serves every group.
pub trait InputGraph {
    fn m(&self) -> usize;
    fn ground(&self) -> EdgeSet;
    fn rank(&self, s: &EdgeSet) -> usize;
    fn independent(&self, s: &EdgeSet) -> bool;
    fn closure(&self, s: &EdgeSet) -> (EdgeSet, FlatKind);
    fn extra_point(&self) -> Option<usize>;
    fn circuit_list(&self, extended: bool, budget: &Budget) -> Result<Vec<(EdgeSet, Option<&'static str>)>>;
    fn bases(&self, budget: &Budget) -> Result<Vec<EdgeSet>>;
    fn cocircuits(&self, budget: &Budget) -> Result<Vec<EdgeSet>>;
}

impl<G: AbelianGroup> InputGraph for GainSignedGraph<G> {
    fn m(&self) -> usize {
        GainSignedGraph::m(self)
    }

    fn ground(&self) -> EdgeSet {
        GainSignedGraph::ground(self)
    }

    fn rank(&self, s: &EdgeSet) -> usize {
        rank(self, s)
    }

    fn independent(&self, s: &EdgeSet) -> bool {
        is_independent(self, s).independent
    }

    fn closure(&self, s: &EdgeSet) -> (EdgeSet, FlatKind) {
        (closure(self, s), descriptor(self, s).kind)
    }

    fn extra_point(&self) -> Option<usize> {
        GainSignedGraph::extra_point(self)
    }

    fn circuit_list(&self, extended: bool, budget: &Budget) -> Result<Vec<(EdgeSet, Option<&'static str>)>> {
        let Some(x) = self.extra_point().filter(|_| extended) else {
            return Ok(circuits(self, budget)?.into_iter().map(|(c, k)| (c, Some(k.name()))).collect());
        };
        // Circuits of M∞: those avoiding e∞ are circuits of M(Υ) and get a class.
        budget.check("circuit enumeration (edges)", self.m(), budget.max_circuit_edges)?;
        let table = rank_table(self);
        let nul = |mask: u64| mask.count_ones() as usize - table[mask as usize] as usize;
        let mut out = Vec::new();
        for mask in 1u64..1 << self.m() {
            if nul(mask) == 1 && (0..self.m()).all(|e| mask >> e & 1 == 0 || nul(mask & !(1 << e)) == 0) {
                let c = EdgeSet::from_mask(mask);
                let class = if c.contains(x) { None } else { Some(classify_circuit(self, &c)?.name()) };
                out.push((c, class));
            }
        }
        Ok(out)
    }

    fn bases(&self, budget: &Budget) -> Result<Vec<EdgeSet>> {
        bases(self, budget)
    }

    fn cocircuits(&self, budget: &Budget) -> Result<Vec<EdgeSet>> {
        cocircuits(self, budget)
    }
}

pub fn cmd_rank(u: &dyn InputGraph, s: Option<EdgeSet>) -> Report {
    let s = s.unwrap_or_else(|| u.ground());
    let r = u.rank(&s);
    let mut out = Report::default();
    out.line(json!({"command": "rank", "subset": ids(&s), "rank": r}));
    out.note(format!("rank {r} on {} of {} edges", s.len(), u.m()));
    out
}

pub fn cmd_independent(u: &dyn InputGraph, s: Option<EdgeSet>) -> Report {
    let s = s.unwrap_or_else(|| u.ground());
    let (r, ind) = (u.rank(&s), u.independent(&s));
    let mut out = Report::default();
    out.line(json!({"command": "independent", "subset": ids(&s), "independent": ind, "rank": r}));
    out.note(format!("{s} is {}", if ind { "independent" } else { "dependent" }));
    out
}

pub fn cmd_closure(u: &dyn InputGraph, s: Option<EdgeSet>) -> Report {
    let s = s.unwrap_or_default();
    let (c, kind) = u.closure(&s);
    let kind = match kind {
        FlatKind::Hyperbalanced => "hyperbalanced",
        FlatKind::Hyperfrustrated => "hyperfrustrated",
    };
    let mut out = Report::default();
    out.line(json!({"command": "closure", "subset": ids(&s), "closure": ids(&c), "kind": kind}));
    out.note(format!("closure of {s} is {c} ({kind})"));
    out
}

pub fn cmd_circuits(u: &dyn InputGraph, extended: bool, budget: &Budget) -> Result<Report> {
    let list = u.circuit_list(extended, budget)?;
    let mut out = Report::default();
    for (c, class) in &list {
        out.line(json!({"command": "circuits", "circuit": ids(c), "class": class}));
    }
    out.note(format!("{} circuits", list.len()));
    Ok(out)
}

pub fn cmd_bases(u: &dyn InputGraph, budget: &Budget) -> Result<Report> {
    let list = u.bases(budget)?;
    let mut out = Report::default();
    for b in &list {
        out.line(json!({"command": "bases", "basis": ids(b)}));
    }
    out.note(format!("{} bases", list.len()));
    Ok(out)
}

pub fn cmd_cocircuits(u: &dyn InputGraph, budget: &Budget) -> Result<Report> {
    let list = u.cocircuits(budget)?;
    let mut out = Report::default();
    for c in &list {
        out.line(json!({"command": "cocircuits", "cocircuit": ids(c)}));
    }
    out.note(format!("{} cocircuits", list.len()));
    Ok(out)
}

/// The minor as an instance file. Erased gains are written over ℤ/1.
pub fn minor_instance<G: AbelianGroup>(
    u: &GainSignedGraph<G>,
    delete: &EdgeSet,
    contract: &EdgeSet,
) -> Result<InstanceFile> {
    let m = minor(u, delete, contract)?;
    if !m.gains_erased {
        return InstanceFile::from_graph(&m.graph);
    }
    let trivial = IntegersMod::new(1)?;
    let g = m.graph.map_gains(trivial, |_| 0);
    Ok(InstanceFile::from_graph(&g)?.with_note(format!(
        "gains erased: contracted set {contract} is hyperfrustrated in group {}",
        u.group().name()
    )))
}

pub fn cmd_minor<G: AbelianGroup>(u: &GainSignedGraph<G>, delete: &EdgeSet, contract: &EdgeSet) -> Result<Report> {
    let f = minor_instance(u, delete, contract)?;
    let mut out = Report { stdout: f.to_json(), ..Report::default() };
    out.note(format!(
        "deleted {delete}, contracted {contract}: n {} -> {}, m {} -> {}{}",
        u.n(),
        f.n,
        u.m(),
        f.edges.len(),
        if f.note.is_some() { ", gains erased" } else { "" }
    ));
    Ok(out)
}

fn poly(p: &IntPolynomial) -> Value {
    json!({"text": p.to_string(), "terms": p.terms().map(|(e, c)| json!([e, c.to_string()])).collect::<Vec<_>>()})
}

pub fn cmd_arrangement<G: RationalEmbedding>(u: &GainSignedGraph<G>, budget: &Budget) -> Result<Report> {
    let mut out = Report::default();
    let hyperplanes = build_arrangement(u);
    for h in &hyperplanes {
        out.line(json!({"command": "arrangement", "edge": h.edge(), "hyperplane": h.to_string()}));
    }
    let p = chromatic_polynomials(u, budget)?;
    out.line(json!({
        "command": "arrangement",
        "chi": poly(&p.chi),
        "chi_balanced": poly(&p.chi_balanced),
        "chi_infinity": poly(&p.chi_infinity),
    }));
    let r = count_regions(u, budget)?;
    out.line(json!({
        "command": "arrangement",
        "n": u.n(),
        "rank": r.rank,
        "regions": r.regions.to_string(),
        "bounded": r.bounded.to_string(),
        "relatively_bounded": r.relatively_bounded.to_string(),
        "regions_infinity": r.regions_infinity.to_string(),
    }));
    let mut summary = format!("{} hyperplanes in dimension {}: {} regions, {} bounded", hyperplanes.len(), u.n(), r.regions, r.bounded);
    if u.n() <= 2 && !hyperplanes.iter().any(|h| matches!(h, Hyperplane::Degenerate { .. })) {
        let cells = enumerate_cells(&hyperplanes, u.n())?;
        out.line(json!({"command": "arrangement", "cells": cells.regions, "bounded_cells": cells.bounded}));
        let _ = write!(summary, "; cell enumeration finds {} and {}", cells.regions, cells.bounded);
    }
    out.note(summary);
    Ok(out)
}

pub fn cmd_verify(instances: &[(String, AnyGraph)], opts: &VerifyOptions) -> Report {
    let mut out = Report::default();
    let (mut failed, mut over_budget) = (Vec::new(), Vec::new());
    for (name, g) in instances {
        match verify_any(g, opts) {
            Ok(checks) => {
                for c in &checks {
                    out.line(json!({"command": "verify", "instance": name, "check": c.check, "status": c.status, "checked": c.checked, "witness": c.witness}));
                    if c.status == Status::Fail {
                        out.note(format!("FAIL {name} {}: {}", c.check, c.witness.as_deref().unwrap_or("")));
                        failed.push(name.clone());
                    }
                }
            }
            Err(e) => {
                out.line(json!({"command": "verify", "instance": name, "error": e.to_string()}));
                out.note(format!("ERROR {name}: {e}"));
                over_budget.push(name.clone());
            }
        }
    }
    failed.dedup();
    out.note(format!(
        "{} instances: {} failed, {} not checked",
        instances.len(),
        failed.len(),
        over_budget.len()
    ));
    out.code = if !failed.is_empty() {
        EXIT_VERIFY_FAILED
    } else if !over_budget.is_empty() {
        EXIT_BUDGET
    } else {
        EXIT_OK
    };
    out
}

pub fn cmd_polytope<G: AbelianGroup>(u: &GainSignedGraph<G>, family: PointFamily) -> Result<Report> {
    let d = polytope_dimension(u, family)?;
    let points = polytope_points(u, family)?;
    let r = exact_rank(&RationalField, &points);
    let name = match family {
        PointFamily::Edge => "edge",
        PointFamily::Bidirected => "bidirected",
        PointFamily::Arc => "arc",
        PointFamily::DoubleArc => "double-arc",
    };
    let mut out = Report::default();
    out.line(json!({"command": "polytope", "points": name, "count": points.cols(), "dimension": d, "point_rank": r}));
    out.note(format!("{name} points: {} points, dimension {d}", points.cols()));
    Ok(out)
}
