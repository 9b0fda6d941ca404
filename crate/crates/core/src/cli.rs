//! Command-line front end: JSON I/O for every operation in the crate, with
//! deterministic seeding and canonical output ordering.
//!
//! Exit codes: `0` for a mathematical success or positive decision, `1` for a
//! negative decision (outside a cone, not a member, validation found a
//! violation), `2` for usage errors including malformed JSON.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra;
use crate::combinatorics::{self, Edge, EdgeSet, Matching};
use crate::coords::{self, Basis, WeightVector};
use crate::fan;
use crate::rational::{format_rat, parse_rat, Rat};
use crate::tropical::{self, TropicalMatrix};
use crate::Error;

const LONG_VERSION: &str = concat!(
    env!("CARGO_PKG_VERSION"),
    "\nsubcommands:",
    "\n  mt    crossings, matchings, maximal crossing-free graph enumeration, accordions",
    "\n  cone  separation coordinates, four-point positivity, weight-cone facets and membership",
    "\n  trop  prevariety membership, crossing-free part, balance, tropical rank, symmetrization",
    "\n  alg   pfaffians, leading forms, matroid rank, band completion",
    "\n  fan   seed projections, sign vectors, fan validation, polytope realization",
);

#[derive(Parser)]
#[command(name = "pfassoc", version, long_version = LONG_VERSION)]
#[command(about = "Exact tools for multitriangulations, weight cones, tropical Pfaffian \
                   prevarieties and associahedron fans")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    output: OutputFormat,

    /// Vertex labels in the input start at this index; normalized internally,
    /// all output is 1-based.
    #[arg(long, global = true, default_value_t = 1)]
    index_base: u8,

    /// Seed for the deterministic random generator.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Cmd {
    /// Multitriangulation combinatorics.
    #[command(subcommand)]
    Mt(MtCmd),
    /// Separation coordinates and the simplicial weight cone.
    #[command(subcommand)]
    Cone(ConeCmd),
    /// Tropical prevariety, positivity certificates, tropical rank.
    #[command(subcommand)]
    Trop(TropCmd),
    /// Exact Pfaffian algebra and the associated matroid.
    #[command(subcommand)]
    Alg(AlgCmd),
    /// Seed fans and polytopes for the crossing-free case.
    #[command(subcommand)]
    Fan(FanCmd),
}

#[derive(Subcommand)]
enum MtCmd {
    /// Enumerate every maximal (k+1)-crossing-free graph on [n], JSON-lines.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Print only the number of graphs.
        #[arg(long)]
        count: bool,
    },
    /// Largest number of mutually crossing chords in the input edge set.
    MaxCrossing {
        #[arg(long)]
        input: PathBuf,
    },
    /// Whether the input edge set avoids any (k+1)-fold crossing.
    Free {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// All perfect matchings of the listed vertices, JSON-lines.
    Matchings {
        /// Comma-separated vertex list, e.g. 1,2,5,6.
        #[arg(long)]
        vertices: String,
        #[arg(long)]
        count: bool,
    },
    /// Crossing parity of the matching given by repeated --pair i,j.
    Parity {
        #[arg(long = "pair", required = true)]
        pairs: Vec<String>,
    },
    /// Replace two pairs of a matching by another matching of their endpoints.
    Swap {
        #[arg(long = "pair", required = true)]
        pairs: Vec<String>,
        #[arg(long)]
        e: String,
        #[arg(long)]
        f: String,
        /// 1 or 2, selecting the replacement in lexicographic order.
        #[arg(long, default_value_t = 1)]
        variant: usize,
    },
    /// Accordion path inside a maximal crossing-free graph.
    Accordion {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
}

#[derive(Subcommand)]
enum ConeCmd {
    /// Full description: lineality, rays, facets.
    Describe {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// The facet forms (count or list).
    Facets {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        count: bool,
    },
    /// Membership of a weight vector; exit 1 with the violated facets listed.
    Member {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Labels of the facets strict at the vector (its face).
    Face {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// The alternating cycle inequalities (count or list).
    Cycles {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        count: bool,
    },
    /// Separation transform of a w-basis vector.
    Separation {
        #[arg(long)]
        input: PathBuf,
    },
    /// Inverse transform of a v-basis vector.
    Inverse {
        #[arg(long)]
        input: PathBuf,
    },
    /// Four-point positivity of a vector; exit 1 when it fails.
    Fp {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum TropCmd {
    /// Prevariety membership: ties on every (2k+2)-subset.
    Member(TropMemberArgs),
    /// Membership in the crossing-free part (cone and prevariety).
    Plus(TropMemberArgs),
    /// Balance certificate: equal parity counts among maximum matchings.
    Balanced(TropMemberArgs),
    /// Tropical rank of a matrix.
    Rank {
        #[arg(long)]
        input: PathBuf,
    },
    /// Symmetrized embedding of a rectangular matrix.
    Sym {
        #[arg(long)]
        input: PathBuf,
        /// Offset: a rational, `auto`, or `inf`.
        #[arg(long = "K", default_value = "auto")]
        offset: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Maximum-weight matchings of a vertex subset under a weight vector.
    MaxMatchings {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        vertices: String,
    },
}

#[derive(Args)]
struct TropMemberArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    k: usize,
}

#[derive(Subcommand)]
enum AlgCmd {
    /// Pfaffian of an antisymmetric matrix.
    Pfaffian {
        #[arg(long)]
        input: PathBuf,
    },
    /// Probabilistic generic rank of an edge set in the dimension-2k matroid.
    MatroidRank {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        trials: usize,
    },
    /// Unique rank-2k completion of band data (first 2k rows prescribed).
    CompleteBand {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// The fixed nine-vertex certificate that the signed-matching generators
    /// are not a universal leading-term basis.
    UgbDemo,
    /// The antisymmetric matrix of the bilinear map on the given vectors.
    Parametrize {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum FanCmd {
    /// Rays and cones of the fan projected from a seed triangulation.
    Build {
        #[arg(long = "seed-triangulation")]
        seed_triangulation: PathBuf,
    },
    /// Flip-circuit validation with right-hand sides; exit 1 on violation.
    Validate {
        #[arg(long = "seed-triangulation")]
        seed_triangulation: PathBuf,
    },
    /// H-representation, vertices and parallel facet pairs.
    Polytope {
        #[arg(long = "seed-triangulation")]
        seed_triangulation: PathBuf,
        /// Write an OFF file (three-dimensional cases only).
        #[arg(long)]
        off: Option<PathBuf>,
    },
    /// Sign vector of an edge against the seed.
    GVector {
        #[arg(long = "seed-triangulation")]
        seed_triangulation: PathBuf,
        #[arg(long)]
        edge: String,
    },
    /// Exact projection of a crossing-free-part vector to seed coordinates.
    Project {
        #[arg(long = "seed-triangulation")]
        seed_triangulation: PathBuf,
        #[arg(long)]
        input: PathBuf,
    },
}

/// Parsed command output: a JSON value, a human-readable rendering, and
/// whether the result counts as a positive decision.
struct Outcome {
    value: Value,
    table: String,
    positive: bool,
}

impl Outcome {
    fn positive(value: Value, table: String) -> Self {
        Outcome { value, table, positive: true }
    }

    fn decided(value: Value, table: String, positive: bool) -> Self {
        Outcome { value, table, positive }
    }
}

/// Entry point; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version on stdout with success
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if cli.index_base > 1 {
        eprintln!("error: --index-base must be 0 or 1");
        return 2;
    }
    let ctx = Ctx { base: cli.index_base, seed: cli.seed };
    match dispatch(&cli.cmd, &ctx) {
        Ok(out) => {
            match cli.output {
                OutputFormat::Json => println!("{}", out.value),
                OutputFormat::Table => println!("{}", out.table),
            }
            if out.positive {
                0
            } else {
                1
            }
        }
        Err(err) => {
            let code = match &err {
                Error::OutsideCone(_) | Error::OutsidePositivePart(_) => 1,
                _ => 2,
            };
            eprintln!("error: {err}");
            code
        }
    }
}

struct Ctx {
    base: u8,
    seed: u64,
}

impl Ctx {
    fn shift(&self, v: usize) -> usize {
        v + (1 - self.base as usize)
    }

    fn parse_edge(&self, s: &str) -> crate::Result<Edge> {
        let (i, j) = s
            .split_once(',')
            .ok_or_else(|| Error::InvalidInput(format!("edge must be i,j, got {s:?}")))?;
        let i: usize = i
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad vertex {i:?}")))?;
        let j: usize = j
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad vertex {j:?}")))?;
        Edge::new(self.shift(i), self.shift(j))
    }

    fn parse_vertices(&self, s: &str) -> crate::Result<Vec<usize>> {
        s.split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map(|v| self.shift(v))
                    .map_err(|_| Error::InvalidInput(format!("bad vertex {x:?}")))
            })
            .collect()
    }

    fn load_json(&self, path: &PathBuf) -> crate::Result<Value> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| Error::InvalidInput(format!("{}: malformed JSON: {e}", path.display())))
    }

    fn load_edgeset(&self, path: &PathBuf) -> crate::Result<EdgeSet> {
        let raw = self.load_json(path)?;
        let n = raw
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::InvalidInput("edge set JSON needs an integer field \"n\"".into()))?
            as usize;
        let edges_raw = raw
            .get("edges")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidInput("edge set JSON needs an array field \"edges\"".into()))?;
        let mut edges = Vec::with_capacity(edges_raw.len());
        for item in edges_raw {
            let pair = item
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::InvalidInput(format!("bad edge entry {item}")))?;
            let i = pair[0]
                .as_u64()
                .ok_or_else(|| Error::InvalidInput(format!("bad vertex {}", pair[0])))?;
            let j = pair[1]
                .as_u64()
                .ok_or_else(|| Error::InvalidInput(format!("bad vertex {}", pair[1])))?;
            edges.push(Edge::new(self.shift(i as usize), self.shift(j as usize))?);
        }
        EdgeSet::new(n, edges)
    }

    fn parse_keyed_rationals(
        &self,
        raw: &Value,
        field: &str,
    ) -> crate::Result<BTreeMap<(usize, usize), Rat>> {
        let obj = raw
            .get(field)
            .map(|v| {
                v.as_object()
                    .ok_or_else(|| Error::InvalidInput(format!("field {field:?} must be an object")))
            })
            .transpose()?;
        let mut out = BTreeMap::new();
        if let Some(obj) = obj {
            for (key, val) in obj {
                let (i, j) = key
                    .split_once(',')
                    .ok_or_else(|| Error::InvalidInput(format!("bad key {key:?}")))?;
                let i: usize = i
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad key {key:?}")))?;
                let j: usize = j
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad key {key:?}")))?;
                let s = val
                    .as_str()
                    .ok_or_else(|| Error::InvalidInput(format!("value for {key:?} must be a string")))?;
                out.insert((self.shift(i), self.shift(j)), parse_rat(s)?);
            }
        }
        Ok(out)
    }

    fn load_weightvector(&self, path: &PathBuf) -> crate::Result<WeightVector> {
        let raw = self.load_json(path)?;
        let n = raw
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::InvalidInput("weight vector JSON needs \"n\"".into()))?
            as usize;
        let basis = match raw.get("basis").and_then(Value::as_str) {
            Some("v") | None => Basis::V,
            Some("w") => Basis::W,
            Some(other) => {
                return Err(Error::InvalidInput(format!("basis must be \"v\" or \"w\", got {other:?}")))
            }
        };
        let entries = self.parse_keyed_rationals(&raw, "entries")?;
        WeightVector::from_entries(
            n,
            basis,
            entries
                .into_iter()
                .map(|((i, j), r)| (Edge::new(i, j).expect("validated"), r)),
        )
    }

    fn load_antisym(&self, path: &PathBuf) -> crate::Result<algebra::AntisymmetricMatrix> {
        let raw = self.load_json(path)?;
        let n = raw
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::InvalidInput("matrix JSON needs \"n\"".into()))? as usize;
        let upper = self.parse_keyed_rationals(&raw, "upper")?;
        algebra::AntisymmetricMatrix::from_upper(n, upper)
    }

    fn load_band(&self, path: &PathBuf) -> crate::Result<(usize, BTreeMap<(usize, usize), Rat>)> {
        let raw = self.load_json(path)?;
        let n = raw
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::InvalidInput("band JSON needs \"n\"".into()))? as usize;
        Ok((n, self.parse_keyed_rationals(&raw, "upper")?))
    }

    fn load_tropical(&self, path: &PathBuf) -> crate::Result<TropicalMatrix> {
        let raw = self.load_json(path)?;
        serde_json::from_value(raw)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
    }
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn edge_json(e: &Edge) -> Value {
    json!([e.i(), e.j()])
}

fn matching_json(m: &Matching) -> Value {
    json!({
        "pairs": m.pairs().iter().map(edge_json).collect::<Vec<_>>(),
        "parity": if m.parity() == combinatorics::Parity::Even { "even" } else { "odd" },
    })
}

fn parse_matching(ctx: &Ctx, pairs: &[String]) -> crate::Result<Matching> {
    let pairs = pairs
        .iter()
        .map(|s| ctx.parse_edge(s))
        .collect::<crate::Result<Vec<_>>>()?;
    Matching::new(pairs)
}

fn dispatch(cmd: &Cmd, ctx: &Ctx) -> crate::Result<Outcome> {
    match cmd {
        Cmd::Mt(mt) => run_mt(mt, ctx),
        Cmd::Cone(c) => run_cone(c, ctx),
        Cmd::Trop(t) => run_trop(t, ctx),
        Cmd::Alg(a) => run_alg(a, ctx),
        Cmd::Fan(f) => run_fan(f, ctx),
    }
}

fn run_mt(cmd: &MtCmd, ctx: &Ctx) -> crate::Result<Outcome> {
    match cmd {
        MtCmd::Enumerate { n, k, count } => {
            let ts = combinatorics::enumerate_k_triangulations(*n, *k)?;
            if *count {
                return Ok(Outcome::positive(
                    json!({"n": n, "k": k, "count": ts.len()}),
                    format!("{}", ts.len()),
                ));
            }
            let lines: Vec<String> = ts
                .iter()
                .map(|t| serde_json::to_string(t).expect("serializable"))
                .collect();
            Ok(Outcome::positive(
                Value::Array(ts.iter().map(to_json).collect()),
                lines.join("\n"),
            ))
        }
        MtCmd::MaxCrossing { input } => {
            let g = ctx.load_edgeset(input)?;
            let size = combinatorics::max_crossing_size(&g);
            Ok(Outcome::positive(
                json!({"max_crossing_size": size}),
                format!("max crossing size: {size}"),
            ))
        }
        MtCmd::Free { input, k } => {
            let g = ctx.load_edgeset(input)?;
            let free = combinatorics::is_k_free(&g, *k);
            Ok(Outcome::decided(
                json!({"k": k, "free": free}),
                format!("({}+1)-crossing-free: {free}", k),
                free,
            ))
        }
        MtCmd::Matchings { vertices, count } => {
            let u = ctx.parse_vertices(vertices)?;
            let ms = combinatorics::matchings(&u)?;
            if *count {
                return Ok(Outcome::positive(
                    json!({"count": ms.len()}),
                    format!("{}", ms.len()),
                ));
            }
            let lines: Vec<String> = ms.iter().map(|m| matching_json(m).to_string()).collect();
            Ok(Outcome::positive(
                Value::Array(ms.iter().map(matching_json).collect()),
                lines.join("\n"),
            ))
        }
        MtCmd::Parity { pairs } => {
            let m = parse_matching(ctx, pairs)?;
            let p = m.parity();
            Ok(Outcome::positive(
                matching_json(&m),
                format!("parity: {}", if p == combinatorics::Parity::Even { "even" } else { "odd" }),
            ))
        }
        MtCmd::Swap { pairs, e, f, variant } => {
            let m = parse_matching(ctx, pairs)?;
            let e = ctx.parse_edge(e)?;
            let f = ctx.parse_edge(f)?;
            let s = combinatorics::swap(&m, &e, &f, *variant)?;
            Ok(Outcome::positive(
                json!({"before": matching_json(&m), "after": matching_json(&s)}),
                format!(
                    "swapped parity: {} -> {}",
                    if m.parity() == combinatorics::Parity::Even { "even" } else { "odd" },
                    if s.parity() == combinatorics::Parity::Even { "even" } else { "odd" }
                ),
            ))
        }
        MtCmd::Accordion { input, from, to } => {
            let t = ctx.load_edgeset(input)?;
            let e = ctx.parse_edge(from)?;
            let f = ctx.parse_edge(to)?;
            let path = combinatorics::accordion(&t, &e, &f)?;
            Ok(Outcome::positive(
                json!({"accordion": path.iter().map(edge_json).collect::<Vec<_>>()}),
                path.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" - "),
            ))
        }
    }
}

fn run_cone(cmd: &ConeCmd, ctx: &Ctx) -> crate::Result<Outcome> {
    match cmd {
        ConeCmd::Describe { n, k } => {
            let cone = coords::grobner_cone(*n, *k)?;
            Ok(Outcome::positive(
                to_json(&cone),
                format!(
                    "cone on n={n}, k={k}: {} facets, {} rays, lineality dimension {}",
                    cone.facets.len(),
                    cone.rays.len(),
                    cone.lineality.len()
                ),
            ))
        }
        ConeCmd::Facets { n, k, count } => {
            let cone = coords::grobner_cone(*n, *k)?;
            if *count {
                return Ok(Outcome::positive(
                    json!({"count": cone.facets.len()}),
                    format!("{}", cone.facets.len()),
                ));
            }
            Ok(Outcome::positive(
                to_json(&cone.facets),
                format!("{} facet forms", cone.facets.len()),
            ))
        }
        ConeCmd::Member { input, k } => {
            let v = ctx.load_weightvector(input)?;
            let cone = coords::grobner_cone(v.n(), *k)?;
            let violated = coords::violated_facets(&cone, &v);
            let member = violated.is_empty();
            Ok(Outcome::decided(
                json!({
                    "member": member,
                    "violated_facets": violated.iter().map(edge_json).collect::<Vec<_>>(),
                }),
                if member {
                    "in cone: yes".to_string()
                } else {
                    format!(
                        "in cone: no; violated facets: {}",
                        violated.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")
                    )
                },
                member,
            ))
        }
        ConeCmd::Face { input, k } => {
            let v = ctx.load_weightvector(input)?;
            let face = coords::cone_face_of(&v, *k)?;
            Ok(Outcome::positive(
                to_json(&face),
                format!(
                    "face labels: {}",
                    face.edges().iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")
                ),
            ))
        }
        ConeCmd::Cycles { n, k, count } => {
            let forms = coords::cycle_inequalities(*n, *k)?;
            if *count {
                return Ok(Outcome::positive(
                    json!({"count": forms.len()}),
                    format!("{}", forms.len()),
                ));
            }
            Ok(Outcome::positive(
                to_json(&forms),
                format!("{} cycle forms", forms.len()),
            ))
        }
        ConeCmd::Separation { input } => {
            let w = ctx.load_weightvector(input)?;
            let v = coords::separation_vector(&w)?;
            Ok(Outcome::positive(to_json(&v), format!("{v}")))
        }
        ConeCmd::Inverse { input } => {
            let v = ctx.load_weightvector(input)?;
            let w = coords::inverse_separation(&v)?;
            Ok(Outcome::positive(to_json(&w), format!("{w}")))
        }
        ConeCmd::Fp { input } => {
            let v = ctx.load_weightvector(input)?;
            let fp = coords::is_fp_positive(&v);
            Ok(Outcome::decided(
                json!({"fp_positive": fp}),
                format!("four-point positive: {fp}"),
                fp,
            ))
        }
    }
}

fn run_trop(cmd: &TropCmd, ctx: &Ctx) -> crate::Result<Outcome> {
    match cmd {
        TropCmd::Member(args) => {
            let v = ctx.load_weightvector(&args.input)?;
            let member = tropical::in_prevariety(&v, args.k)?;
            Ok(Outcome::decided(
                json!({"prevariety_member": member}),
                format!("in prevariety: {member}"),
                member,
            ))
        }
        TropCmd::Plus(args) => {
            let v = ctx.load_weightvector(&args.input)?;
            let member = tropical::in_pv_plus(&v, args.k)?;
            Ok(Outcome::decided(
                json!({"crossing_free_part_member": member}),
                format!("in crossing-free part: {member}"),
                member,
            ))
        }
        TropCmd::Balanced(args) => {
            let v = ctx.load_weightvector(&args.input)?;
            let balanced = tropical::is_balanced(&v, args.k)?;
            Ok(Outcome::decided(
                json!({
                    "balanced": balanced,
                    "note": "balance certifies the positive part; it is not a decision procedure for it",
                }),
                format!("balanced: {balanced}"),
                balanced,
            ))
        }
        TropCmd::Rank { input } => {
            let m = ctx.load_tropical(input)?;
            let r = tropical::tropical_rank(&m);
            Ok(Outcome::positive(json!({"tropical_rank": r}), format!("tropical rank: {r}")))
        }
        TropCmd::Sym { input, offset, k } => {
            let m = ctx.load_tropical(input)?;
            let (vec, used): (tropical::TropicalWeightVector, Value) = match offset.as_str() {
                "inf" => (tropical::sym_construction(&m, None)?, json!("inf")),
                "auto" => {
                    let kc = tropical::choose_k_offset(&m, *k)?;
                    (
                        tropical::sym_construction(&m, Some(&kc))?,
                        json!(format_rat(&kc)),
                    )
                }
                lit => {
                    let kc = parse_rat(lit)?;
                    (
                        tropical::sym_construction(&m, Some(&kc))?,
                        json!(format_rat(&kc)),
                    )
                }
            };
            Ok(Outcome::positive(
                json!({"offset": used, "vector": to_json(&vec)}),
                format!("symmetrized on n = {}, offset {}", vec.n, used),
            ))
        }
        TropCmd::MaxMatchings { input, vertices } => {
            let v = ctx.load_weightvector(input)?;
            let u = ctx.parse_vertices(vertices)?;
            let ms = tropical::max_matchings(&v, &u)?;
            Ok(Outcome::positive(
                Value::Array(ms.iter().map(|(m, _)| matching_json(m)).collect()),
                format!("{} maximum matchings", ms.len()),
            ))
        }
    }
}

fn run_alg(cmd: &AlgCmd, ctx: &Ctx) -> crate::Result<Outcome> {
    match cmd {
        AlgCmd::Pfaffian { input } => {
            let m = ctx.load_antisym(input)?;
            let pf = algebra::pfaffian(&m)?;
            Ok(Outcome::positive(
                json!({"pfaffian": format_rat(&pf)}),
                format!("pfaffian: {}", format_rat(&pf)),
            ))
        }
        AlgCmd::MatroidRank { input, k, trials } => {
            let s = ctx.load_edgeset(input)?;
            let r = algebra::matroid_rank(&s, *k, *trials, ctx.seed);
            Ok(Outcome::positive(
                json!({
                    "rank": r,
                    "trials": trials,
                    "certificate": "probabilistic lower bound, generically tight",
                }),
                format!("matroid rank (lower-bound certificate over {trials} trials): {r}"),
            ))
        }
        AlgCmd::CompleteBand { input, k } => {
            let (n, known) = ctx.load_band(input)?;
            let m = algebra::complete_band(&known, n, *k)?;
            Ok(Outcome::positive(
                to_json(&m),
                format!("completed matrix of rank {}", m.rank()),
            ))
        }
        AlgCmd::UgbDemo => {
            let report = algebra::ugb_counterexample()?;
            let table = format!(
                "leading monomial: {}; weight {}; {} subsets scanned; divisor found: {}",
                report
                    .h_leading_monomial
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
                report.h_leading_weight,
                report.subsets_scanned,
                report.divisor_exists,
            );
            Ok(Outcome::positive(to_json(&report), table))
        }
        AlgCmd::Parametrize { input } => {
            let raw = ctx.load_json(input)?;
            let vectors_raw = raw
                .get("vectors")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::InvalidInput("parametrize JSON needs \"vectors\"".into()))?;
            let mut vectors = Vec::new();
            for row in vectors_raw {
                let row = row
                    .as_array()
                    .ok_or_else(|| Error::InvalidInput("vectors must be arrays".into()))?;
                let mut v = Vec::new();
                for cell in row {
                    let s = cell
                        .as_str()
                        .ok_or_else(|| Error::InvalidInput("vector entries must be strings".into()))?;
                    v.push(parse_rat(s)?);
                }
                vectors.push(v);
            }
            let m = algebra::parametrize(&vectors)?;
            Ok(Outcome::positive(
                to_json(&m),
                format!("matrix on n = {}, rank {}", m.n(), m.rank()),
            ))
        }
    }
}

fn run_fan(cmd: &FanCmd, ctx: &Ctx) -> crate::Result<Outcome> {
    match cmd {
        FanCmd::Build { seed_triangulation } => {
            let t = ctx.load_edgeset(seed_triangulation)?;
            let f = fan::build_fan(&t)?;
            Ok(Outcome::positive(
                to_json(&f),
                format!("fan in dimension {}: {} rays, {} cones", f.dim, f.rays.len(), f.cones.len()),
            ))
        }
        FanCmd::Validate { seed_triangulation } => {
            let t = ctx.load_edgeset(seed_triangulation)?;
            let f = fan::build_fan(&t)?;
            let report = fan::validate_fan(&f, &t)?;
            Ok(Outcome::decided(
                to_json(&report),
                format!(
                    "{} flips checked; sign patterns and right-hand sides all valid: {}",
                    report.flips, report.all_ok
                ),
                report.all_ok,
            ))
        }
        FanCmd::Polytope { seed_triangulation, off } => {
            let t = ctx.load_edgeset(seed_triangulation)?;
            let p = fan::associahedron_polytope(&t)?;
            if let Some(path) = off {
                let text = fan::polytope_off(&p)?;
                fs::write(path, text)
                    .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(Outcome::positive(
                to_json(&p),
                format!(
                    "polytope in dimension {}: {} facets, {} vertices, {} parallel pairs",
                    p.dim,
                    p.inequalities.len(),
                    p.vertices.len(),
                    p.parallel_pairs.len()
                ),
            ))
        }
        FanCmd::GVector { seed_triangulation, edge } => {
            let t = ctx.load_edgeset(seed_triangulation)?;
            let e = ctx.parse_edge(edge)?;
            let g = fan::g_vector(&t, &e)?;
            Ok(Outcome::positive(
                to_json(&g),
                format!(
                    "sign vector of {e}: [{}]",
                    g.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
                ),
            ))
        }
        FanCmd::Project { seed_triangulation, input } => {
            let t = ctx.load_edgeset(seed_triangulation)?;
            let v = ctx.load_weightvector(input)?;
            let coords = fan::project(&v, &t)?;
            let strs: Vec<String> = coords.iter().map(format_rat).collect();
            Ok(Outcome::positive(
                json!({"coordinates": strs}),
                format!("[{}]", strs.join(", ")),
            ))
        }
    }
}
