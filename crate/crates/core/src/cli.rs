//! The `lie` command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactmath::{random_rational, ExactMatrix, Rational};
use crate::graphs::{delta_sign, enumerate_four_graphs, enumerate_three_trees, enumerate_trees, Variant};
use crate::lie_generators::{kirchhoff_differences, lie_closure};
use crate::limits::Bounds;
use crate::sdet::{monomial_coefficient, monomial_graph, sdet_with, symbolic_pair, MainTable};
use crate::verify::{self, Status, VerificationReport};
use crate::wedge_rep::{lie_space_on, Representation};
use crate::weights::{Symbolic, Weights};

#[derive(Parser, Debug)]
#[command(name = "lie", version, about = "Lie elements of the symmetric group algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Debug, Clone)]
struct Opts {
    /// Degree / vertex count.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// First seed; trial `t` uses `seed + t`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1)]
    trials: usize,
    /// JSON weight file; replaces random weights.
    #[arg(long, global = true)]
    weights: Option<PathBuf>,
    #[arg(long, global = true)]
    symbolic: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Lift the default size bounds.
    #[arg(long, global = true)]
    allow_heavy: bool,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Record elapsed milliseconds in reports.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check an identity exactly.
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// The space of Lie elements.
    Lie {
        #[command(subcommand)]
        what: LieCmd,
    },
    /// Dimension data for the open conjectures (informational).
    Conjectures {
        /// Directory of golden values keyed by (theorem, n).
        #[arg(long)]
        results: Option<PathBuf>,
    },
    /// Shuffle determinants.
    Sdet {
        #[command(subcommand)]
        what: SdetCmd,
    },
    /// List trees, 3-trees and 4-graphs.
    Enumerate {
        #[command(subcommand)]
        what: EnumCmd,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// det x|_V against weighted spanning trees.
    Mtt,
    /// Pfaffian of y on V against signed 3-trees.
    Pft,
    /// Characteristic polynomial of z against shuffle determinants.
    Main,
    /// η_ijkl on Q^n as a rank-two matrix.
    Rank2 {
        /// Four distinct labels, e.g. 1,2,3,4.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4")]
        indices: Vec<usize>,
    },
    /// Lifting Lie elements from S_n to S_{n+1}.
    Iota,
}

#[derive(Subcommand, Debug)]
enum LieCmd {
    Dim,
    Basis,
    /// Bracket closure of the κ_ij.
    Closure,
}

#[derive(Subcommand, Debug)]
enum SdetCmd {
    /// sdet of two matrices given as rows separated by `;`.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
    },
    /// sdet of two matrices of independent variables.
    Symbolic,
    /// ±2^m from the auxiliary graph; without --edges, every monomial of
    /// the symbolic sdet is checked.
    CoeffGraph {
        /// Directed edges `i>j`, comma separated.
        #[arg(long)]
        edges: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum EnumCmd {
    Trees,
    #[command(name = "3trees")]
    ThreeTrees,
    #[command(name = "4graphs")]
    FourGraphs {
        #[arg(long, default_value_t = 1)]
        r: usize,
    },
}

struct Row {
    json: Value,
    text: String,
}

struct Output {
    columns: Vec<&'static str>,
    rows: Vec<Row>,
    statuses: Vec<Status>,
}

impl Output {
    fn records(columns: Vec<&'static str>, rows: Vec<Row>) -> Self {
        Output {
            columns,
            rows,
            statuses: Vec::new(),
        }
    }

    fn reports(reports: Vec<VerificationReport>) -> Self {
        let statuses = reports.iter().map(|r| r.status).collect();
        let rows = reports
            .into_iter()
            .map(|r| Row {
                text: r.to_text(),
                json: serde_json::to_value(&r).expect("report serializes"),
            })
            .collect();
        Output {
            columns: vec!["theorem", "n", "seed", "status", "lhs", "rhs", "elapsed_ms"],
            rows,
            statuses,
        }
    }

    fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Text => Ok(self.rows.iter().map(|r| format!("{}\n", r.text)).collect()),
            Format::Json => {
                let all: Vec<&Value> = self.rows.iter().map(|r| &r.json).collect();
                Ok(serde_json::to_string_pretty(&all).expect("values serialize") + "\n")
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let csv_err = |e: csv::Error| Error::Parse(e.to_string());
                w.write_record(&self.columns).map_err(csv_err)?;
                for r in &self.rows {
                    let cells = self.columns.iter().map(|c| match r.json.get(*c) {
                        None | Some(Value::Null) => String::new(),
                        Some(Value::String(s)) => s.clone(),
                        Some(v) => v.to_string(),
                    });
                    w.write_record(cells).map_err(csv_err)?;
                }
                let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
                Ok(String::from_utf8(bytes).expect("csv is utf-8"))
            }
        }
    }
}

struct Ctx {
    opts: Opts,
    bounds: Bounds,
}

impl Ctx {
    fn n(&self, default: usize) -> usize {
        self.opts.n.unwrap_or(default)
    }

    fn seeds(&self) -> Vec<u64> {
        (0..self.opts.trials as u64).map(|t| self.opts.seed + t).collect()
    }

    fn weights(&self) -> Result<Option<Weights>> {
        self.opts.weights.as_deref().map(Weights::load).transpose()
    }

    /// Runs `f` once per seed in parallel, reports in seed order.
    fn per_seed<F>(&self, f: F) -> Result<Vec<VerificationReport>>
    where
        F: Fn(u64) -> Result<VerificationReport> + Sync,
    {
        self.seeds().into_par_iter().map(|s| self.timed(|| f(s))).collect()
    }

    fn timed<F: FnOnce() -> Result<VerificationReport>>(&self, f: F) -> Result<VerificationReport> {
        let t = Instant::now();
        let mut rep = f()?;
        if self.opts.timing {
            rep.elapsed_ms = Some(t.elapsed().as_millis() as u64);
        }
        Ok(rep)
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit code:
/// 0 pass, 1 verification failure, 2 usage, 3 resource bound.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let bounds = if cli.opts.allow_heavy {
        let _ = writeln!(err, "warning: --allow-heavy lifts size bounds; runs may take long");
        Bounds::heavy()
    } else {
        Bounds::default()
    };
    let ctx = Ctx {
        opts: cli.opts.clone(),
        bounds,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(ctx.opts.jobs.unwrap_or(0))
        .build()
        .expect("thread pool");
    let result = pool.install(|| dispatch(&cli.command, &ctx));
    let output = match result {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return match e {
                Error::ResourceLimit { .. } => 3,
                _ => 2,
            };
        }
    };
    let text = match output.render(ctx.opts.format) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let written = match &ctx.opts.out {
        Some(p) => std::fs::write(p, &text).map_err(|e| format!("{}: {e}", p.display())),
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return 2;
    }
    if output.statuses.contains(&Status::Fail) {
        1
    } else {
        0
    }
}

fn dispatch(cmd: &Command, ctx: &Ctx) -> Result<Output> {
    match cmd {
        Command::Verify { what } => verify_cmd(what, ctx).map(Output::reports),
        Command::Lie { what } => lie_cmd(what, ctx),
        Command::Conjectures { results } => conjectures(results.as_deref(), ctx).map(Output::reports),
        Command::Sdet { what } => sdet_cmd(what, ctx),
        Command::Enumerate { what } => enumerate_cmd(what, ctx),
    }
}

fn verify_cmd(what: &VerifyCmd, ctx: &Ctx) -> Result<Vec<VerificationReport>> {
    let b = &ctx.bounds;
    match what {
        VerifyCmd::Mtt => {
            let n = ctx.n(4);
            if ctx.opts.symbolic {
                return Ok(vec![ctx.timed(|| verify::verify_mtt_symbolic(n, b))?]);
            }
            if let Some(w) = ctx.weights()? {
                return Ok(vec![ctx.timed(|| verify::verify_mtt(n, &w, b))?]);
            }
            ctx.per_seed(|s| verify::verify_mtt_seeded(n, s, b))
        }
        VerifyCmd::Pft => {
            let n = ctx.n(5);
            if ctx.opts.symbolic {
                return Ok(vec![ctx.timed(|| symbolic_pft(n, b))?]);
            }
            if let Some(w) = ctx.weights()? {
                return Ok(vec![ctx.timed(|| verify::verify_pft(n, &w, b))?]);
            }
            ctx.per_seed(|s| verify::verify_pft_seeded(n, s, b))
        }
        VerifyCmd::Main => {
            let n = ctx.n(4);
            crate::limits::check("main theorem degree", n, b.main_n)?;
            if n < 2 {
                return Err(Error::Structure("main theorem needs n >= 2".into()));
            }
            let table = MainTable::build(n)?;
            if let Some(w) = ctx.weights()? {
                return Ok(vec![ctx.timed(|| verify::verify_main(&table, &w, b))?]);
            }
            ctx.per_seed(|s| verify::verify_main_seeded(&table, s, b))
        }
        VerifyCmd::Rank2 { indices } => {
            let [i, j, k, l] = <[usize; 4]>::try_from(indices.as_slice())
                .map_err(|_| Error::InvalidIndex(format!("need four labels, got {indices:?}")))?;
            let n = ctx.n(i.max(j).max(k).max(l));
            Ok(vec![ctx.timed(|| verify::verify_rank2(i, j, k, l, n))?])
        }
        VerifyCmd::Iota => {
            let n = ctx.n(3);
            Ok(vec![
                ctx.timed(|| verify::verify_iota(n, ctx.opts.trials, ctx.opts.seed, b))?
            ])
        }
    }
}

fn symbolic_pft(n: usize, b: &Bounds) -> Result<VerificationReport> {
    crate::limits::check("symbolic Pfaffian degree", n, b.symbolic_n.min(b.pft_n))?;
    let s = Symbolic::triples(n);
    let d = verify::pft_data(n, &s.weights, b)?;
    let (l, r) = (d.pfaffian.clone(), d.expected());
    let status = if d.skew && l == r { Status::Pass } else { Status::Fail };
    Ok(VerificationReport::new(
        "pft-symbolic",
        n,
        None,
        status,
        l.display_with(&s.names),
        r.display_with(&s.names),
    ))
}

fn lie_cmd(what: &LieCmd, ctx: &Ctx) -> Result<Output> {
    let n = ctx.n(3);
    let b = &ctx.bounds;
    let elements = match what {
        LieCmd::Dim => {
            let space = lie_space_on(n, Representation::Permutation, b)?;
            let row = Row {
                json: json!({"n": n, "dim": space.dim()}),
                text: space.dim().to_string(),
            };
            return Ok(Output::records(vec!["n", "dim"], vec![row]));
        }
        LieCmd::Basis => lie_space_on(n, Representation::Permutation, b)?.basis().to_vec(),
        LieCmd::Closure => lie_closure(&kirchhoff_differences(n)?, n, b)?,
    };
    let rows = elements
        .iter()
        .enumerate()
        .map(|(k, x)| Row {
            json: json!({"index": k, "element": x.to_json(), "text": x.to_string()}),
            text: x.to_string(),
        })
        .collect();
    Ok(Output::records(vec!["index", "text"], rows))
}

fn conjectures(results: Option<&std::path::Path>, ctx: &Ctx) -> Result<Vec<VerificationReport>> {
    let degrees: Vec<usize> = match ctx.opts.n {
        Some(n) => vec![n],
        None => (2..=ctx.bounds.conjecture_n).collect(),
    };
    let mut out = Vec::new();
    for n in degrees {
        let mut rep = ctx.timed(|| verify::conjecture_report(n, &ctx.bounds))?;
        if let Some(dir) = results {
            let data = verify::conjecture_data(n, &ctx.bounds)?;
            let golden = verify::persist_golden(dir, "conjectures", n, &data)?;
            if golden != data {
                rep.status = Status::Fail;
                rep.rhs = format!("{} (golden differs: {golden:?})", rep.rhs);
            }
        }
        out.push(rep);
    }
    Ok(out)
}

fn sdet_cmd(what: &SdetCmd, ctx: &Ctx) -> Result<Output> {
    let b = &ctx.bounds;
    match what {
        SdetCmd::Eval { a, b: bm } => {
            let (a, bm) = match (a, bm) {
                (Some(a), Some(bm)) => (ExactMatrix::parse(a)?, ExactMatrix::parse(bm)?),
                (None, None) => {
                    let n = ctx.n(3);
                    let mut rng = ChaCha8Rng::seed_from_u64(ctx.opts.seed);
                    let mut m = || ExactMatrix::from_fn(n, n, |_, _| random_rational(&mut rng));
                    (m(), m())
                }
                _ => return Err(Error::Parse("give both --a and --b, or neither".into())),
            };
            let v = sdet_with(&a, &bm, b)?;
            let row = Row {
                json: json!({"a": a.to_string(), "b": bm.to_string(), "sdet": v.to_string()}),
                text: v.to_string(),
            };
            Ok(Output::records(vec!["a", "b", "sdet"], vec![row]))
        }
        SdetCmd::Symbolic => {
            let n = ctx.n(2);
            crate::limits::check("symbolic sdet size", n, b.symbolic_n.min(4))?;
            let (a, bm, names) = symbolic_pair(n);
            let v = sdet_with(&a, &bm, b)?;
            let text = v.display_with(&names);
            let row = Row {
                json: json!({"n": n, "terms": v.num_terms(), "sdet": text}),
                text,
            };
            Ok(Output::records(vec!["n", "terms", "sdet"], vec![row]))
        }
        SdetCmd::CoeffGraph { edges: Some(edges) } => {
            let parsed: Vec<(usize, usize)> = edges
                .split(',')
                .map(|e| {
                    let (i, j) = e
                        .trim()
                        .split_once('>')
                        .ok_or_else(|| Error::Parse(format!("edge {e:?} is not i>j")))?;
                    let p = |t: &str| {
                        t.trim()
                            .parse::<usize>()
                            .map_err(|x| Error::Parse(format!("{t:?}: {x}")))
                    };
                    Ok((p(i)?, p(j)?))
                })
                .collect::<Result<_>>()?;
            let g = monomial_coefficient(&parsed)?;
            let row = Row {
                json: json!({"edges": edges, "cycles": g.cycles, "coefficient": g.coefficient}),
                text: format!("cycles={} coefficient={}", g.cycles, g.coefficient),
            };
            Ok(Output::records(vec!["edges", "cycles", "coefficient"], vec![row]))
        }
        SdetCmd::CoeffGraph { edges: None } => {
            let n = ctx.n(2);
            crate::limits::check("symbolic sdet size", n, b.symbolic_n.min(4))?;
            let (a, bm, _) = symbolic_pair(n);
            let v = sdet_with(&a, &bm, b)?;
            let mut bad = 0;
            for (m, c) in v.terms() {
                let g = monomial_coefficient(&monomial_graph(n, m))?;
                if Rational::from_integer(g.coefficient.into()) != *c {
                    bad += 1;
                }
            }
            let total = v.num_terms();
            let status = if bad == 0 { Status::Pass } else { Status::Fail };
            let rep = VerificationReport::new(
                "coeff-graph",
                n,
                None,
                status,
                format!("{} of {total} monomials match ±2^m", total - bad),
                format!("{total} of {total} monomials match ±2^m"),
            );
            Ok(Output::reports(vec![rep]))
        }
    }
}

fn enumerate_cmd(what: &EnumCmd, ctx: &Ctx) -> Result<Output> {
    let b = &ctx.bounds;
    match what {
        EnumCmd::Trees => {
            let n = ctx.n(3);
            let rows = enumerate_trees(n, b)?
                .map(|t| {
                    let edges: Vec<[usize; 2]> = t.edges().iter().map(|&(a, c)| [a, c]).collect();
                    Row {
                        text: t.edges().iter().map(|(a, c)| format!("{a}-{c}")).join(" "),
                        json: json!({"n": n, "edges": edges, "prufer": t.prufer()}),
                    }
                })
                .collect();
            Ok(Output::records(vec!["n", "edges", "prufer"], rows))
        }
        EnumCmd::ThreeTrees => {
            let n = ctx.n(5);
            if n.is_multiple_of(2) {
                return Err(Error::Structure(format!("3-trees have an odd vertex count, got {n}")));
            }
            let rows = enumerate_three_trees((n - 1) / 2, b)?
                .into_iter()
                .map(|g| {
                    let d = delta_sign(&g)?;
                    Ok(Row {
                        text: format!(
                            "{:+} {}",
                            d,
                            g.triangles()
                                .iter()
                                .map(|t| format!("{{{}}}", t.iter().join(",")))
                                .join(" ")
                        ),
                        json: json!({"n": n, "triangles": g.triangles(), "delta": d}),
                    })
                })
                .collect::<Result<_>>()?;
            Ok(Output::records(vec!["n", "triangles", "delta"], rows))
        }
        EnumCmd::FourGraphs { r } => {
            let n = ctx.n(4);
            let graphs = enumerate_four_graphs(*r, n, b)?;
            let rows = graphs
                .par_iter()
                .map(|g| {
                    let c = if *r <= n {
                        Some(g.edge_system()?.coefficient()?)
                    } else {
                        None
                    };
                    let edges: Vec<Value> = g
                        .edges()
                        .iter()
                        .map(|(s, v)| json!({"vertices": s, "variant": variant_name(*v)}))
                        .collect();
                    let text = g
                        .edges()
                        .iter()
                        .map(|(s, v)| format!("{}{{{}}}", variant_name(*v), s.iter().join(",")))
                        .join(" ");
                    let text = match c {
                        Some(c) => format!("{text} c={c}"),
                        None => text,
                    };
                    Ok(Row {
                        text,
                        json: json!({"n": n, "edges": edges, "tuples": g.tuples(), "coefficient": c}),
                    })
                })
                .collect::<Result<_>>()?;
            Ok(Output::records(vec!["n", "edges", "tuples", "coefficient"], rows))
        }
    }
}

fn variant_name(v: Variant) -> &'static str {
    match v {
        Variant::T1 => "T1",
        Variant::T2 => "T2",
    }
}
