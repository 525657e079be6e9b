//! `facehit`: validate plane multigraphs, split them into two dominating and
//! face-hitting classes, build small dominating sets of triangulations, and
//! benchmark the bounds.
//!
//! Every run writes a one-line JSON manifest to stderr (suppress with
//! `--quiet`). Exit codes: 0 ok, 1 invalid embedding, 2 parse or IO error,
//! 3 precondition or domain error, 4 search budget exceeded.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use facehit_core::domatic::theorem_coloring;
use facehit_core::generators::{self, FamilyKind};
use facehit_core::oracle::{self, OracleBudget};
use facehit_core::plg::{parse_plg, to_dot, write_plg};
use facehit_core::triangulation::{
    best_independent_set, compare_bounds, corollary_dominating_set_with, greedy_mis, BoundReport,
    CorollaryOptions, MisStrategy,
};
use facehit_core::verify::{audit_two_coloring, Side};
use facehit_core::{Error, PlaneMultigraph, Vertex};

#[derive(Parser)]
#[command(name = "facehit", version, about)]
struct Cli {
    /// Do not write the run manifest to stderr
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a PLG file against every embedding invariant
    Validate { path: PathBuf },
    /// Split the vertices into two dominating, face-hitting classes
    Color {
        path: PathBuf,
        /// Cross-check against the exact solver (at most 20 vertices)
        #[arg(long)]
        check: bool,
        #[arg(long)]
        json: bool,
    },
    /// Dominating set of a plane triangulation from an independent set
    Dominate {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = MisArg::Best)]
        mis: MisArg,
        /// Seed for `--mis random`
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also compute the domination number exactly (at most 20 vertices)
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run the dominating-set pipeline on generated triangulations
    Bench {
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 30)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = BenchFamily::Stacked)]
        family: BenchFamily,
        #[arg(long)]
        json: bool,
    },
    /// Write a generated instance as PLG
    Gen {
        #[arg(value_enum)]
        family: GenFamily,
        /// Vertex count, polygon length, or kleetope base size
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Number of copies for the disjoint families
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Exact solvers for small graphs
    Oracle {
        path: PathBuf,
        #[arg(long, value_enum)]
        problem: Problem,
        #[arg(long, default_value_t = 50_000_000)]
        max_nodes: u64,
        #[arg(long)]
        json: bool,
    },
    /// Export the abstract graph as Graphviz DOT
    Render {
        path: PathBuf,
        #[arg(long)]
        dot: PathBuf,
        /// Fill vertices by their color class
        #[arg(long)]
        color: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MisArg {
    Best,
    MinDegree,
    MaxDegree,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchFamily {
    Stacked,
    Kleetope,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenFamily {
    Polygon,
    Octahedron,
    Icosahedron,
    Stacked,
    Kleetope,
    Edges,
    Paths,
    Cycles,
    DoubledK4,
    LoopGadget,
    Theorem,
    Lemma,
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    /// Domination number
    Gamma,
    /// Minimum face-hitting set
    Beta,
    /// Maximum independent set
    Mis,
    /// A coloring that is domatic and polychromatic
    Dp,
    /// A coloring that is domatic and polychromatic on faces of length 3 or more
    Dp3,
}

enum Failure {
    Io(PathBuf, io::Error),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(..) => 2,
            Failure::Core(Error::Parse { .. }) => 2,
            Failure::Core(Error::InvalidEmbedding(_)) => 1,
            Failure::Core(Error::BudgetExceeded(_)) => 4,
            Failure::Core(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Io(p, e) => format!("{}: {e}", p.display()),
            Failure::Core(e) => e.to_string(),
        }
    }
}

#[derive(Serialize)]
struct RunManifest {
    command: &'static str,
    input_sha256: Option<String>,
    seeds: Vec<u64>,
    version: &'static str,
    elapsed_ms: f64,
    exit_code: u8,
    result: Value,
}

struct Run {
    command: &'static str,
    input_sha256: Option<String>,
    seeds: Vec<u64>,
    result: Value,
}

impl Run {
    fn new(command: &'static str) -> Self {
        Run {
            command,
            input_sha256: None,
            seeds: Vec::new(),
            result: Value::Null,
        }
    }

    fn read(&mut self, path: &Path) -> Result<String, Failure> {
        let bytes = fs::read(path).map_err(|e| Failure::Io(path.to_path_buf(), e))?;
        self.input_sha256 = Some(format!("{:x}", Sha256::digest(&bytes)));
        String::from_utf8(bytes).map_err(|e| {
            Failure::Io(
                path.to_path_buf(),
                io::Error::new(io::ErrorKind::InvalidData, e),
            )
        })
    }

    fn load(&mut self, path: &Path) -> Result<PlaneMultigraph, Failure> {
        let text = self.read(path)?;
        Ok(parse_plg(&text)?)
    }
}

fn labels(g: &PlaneMultigraph, vs: &[Vertex]) -> Vec<u32> {
    vs.iter().map(|&v| g.vertex_label(v)).collect()
}

fn joined(xs: &[u32]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn emit(out: &mut impl Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Io(PathBuf::from("<stdout>"), e))
}

fn validate(run: &mut Run, path: &Path, out: &mut impl Write) -> Result<(), Failure> {
    const FAMILIES: [&str; 4] = ["edges", "rotation", "euler", "nesting"];
    let text = run.read(path)?;
    match parse_plg(&text) {
        Ok(g) => {
            let mut s = String::from("parse: pass\n");
            for f in FAMILIES {
                s.push_str(&format!("{f}: pass\n"));
            }
            s.push_str(&format!(
                "valid: {} vertices, {} edges, {} faces, {} components\n",
                g.vertex_count(),
                g.edge_count(),
                g.faces().len(),
                g.component_count()
            ));
            run.result = json!({"valid": true});
            emit(out, &s)
        }
        Err(Error::InvalidEmbedding(e)) => {
            let mut s = String::from("parse: pass\n");
            for f in FAMILIES {
                if f == e.category() {
                    s.push_str(&format!("{f}: FAIL: {e}\n"));
                } else {
                    s.push_str(&format!("{f}: not checked\n"));
                }
            }
            emit(out, &s)?;
            run.result = json!({"valid": false, "category": e.category()});
            Err(Failure::Core(Error::InvalidEmbedding(e)))
        }
        Err(e) => {
            emit(out, &format!("parse: FAIL: {e}\n"))?;
            run.result = json!({"valid": false, "category": "parse"});
            Err(e.into())
        }
    }
}

fn color(
    run: &mut Run,
    path: &Path,
    check: bool,
    as_json: bool,
    out: &mut impl Write,
) -> Result<(), Failure> {
    let g = run.load(path)?;
    let c = theorem_coloring(&g)?;
    let audit = audit_two_coloring(&g, &c);
    let a = labels(&g, &c.class(Side::A));
    let b = labels(&g, &c.class(Side::B));
    let oracle_found = if check && g.vertex_count() <= 20 {
        Some(oracle::exists_dp_two_coloring(&g, false, OracleBudget::default())?.is_some())
    } else {
        None
    };
    run.result = json!({
        "n": g.vertex_count(),
        "class_a": a.len(),
        "class_b": b.len(),
        "domatic": audit.domatic,
        "polychromatic": audit.polychromatic,
    });
    if as_json {
        let v = json!({
            "class_a": a,
            "class_b": b,
            "audit": audit,
            "oracle_coloring_exists": oracle_found,
        });
        emit(
            out,
            &format!("{}\n", serde_json::to_string_pretty(&v).unwrap()),
        )?;
    } else {
        let mut s = format!(
            "A ({}): {}\nB ({}): {}\n",
            a.len(),
            joined(&a),
            b.len(),
            joined(&b)
        );
        s.push_str(&format!("domatic: {}\n", audit.domatic));
        s.push_str(&format!("polychromatic: {}\n", audit.polychromatic));
        s.push_str(&format!(
            "polychromatic_3plus: {}\n",
            audit.polychromatic_3plus
        ));
        match oracle_found {
            Some(f) => s.push_str(&format!("oracle_coloring_exists: {f}\n")),
            None if check => s.push_str("oracle_coloring_exists: skipped (n > 20)\n"),
            None => {}
        }
        emit(out, &s)?;
    }
    if !audit.domatic || !audit.polychromatic || oracle_found == Some(false) {
        return Err(Error::Internal("coloring failed its audit".into()).into());
    }
    Ok(())
}

fn dominate(
    run: &mut Run,
    path: &Path,
    mis: MisArg,
    seed: u64,
    exact: bool,
    as_json: bool,
    out: &mut impl Write,
) -> Result<(), Failure> {
    let g = run.load(path)?;
    let (independent, strategy) = match mis {
        MisArg::Best => best_independent_set(&g),
        MisArg::MinDegree => (
            greedy_mis(&g, MisStrategy::MinDegreeFirst),
            "min-degree".into(),
        ),
        MisArg::MaxDegree => (
            greedy_mis(&g, MisStrategy::MaxDegreeFirst),
            "max-degree".into(),
        ),
        MisArg::Random => {
            run.seeds.push(seed);
            let s = MisStrategy::Random(seed);
            (greedy_mis(&g, s), s.name())
        }
    };
    let (s, report) =
        corollary_dominating_set_with(&g, Some(&independent), CorollaryOptions { exact })?;
    let s_labels = labels(&g, &s);
    let i_labels = labels(&g, &independent);
    run.result = serde_json::to_value(&report).unwrap();
    if as_json {
        let v = json!({
            "dominating_set": s_labels,
            "independent_set": i_labels,
            "strategy": strategy,
            "report": report,
        });
        emit(
            out,
            &format!("{}\n", serde_json::to_string_pretty(&v).unwrap()),
        )
    } else {
        let text = format!(
            "independent ({strategy}, {}): {}\ndominating ({}): {}\n{}\n{}\n",
            i_labels.len(),
            joined(&i_labels),
            s_labels.len(),
            joined(&s_labels),
            BoundReport::CSV_HEADER,
            report.csv_row()
        );
        emit(out, &text)
    }
}

fn bench(
    run: &mut Run,
    count: usize,
    n: usize,
    seed: u64,
    family: BenchFamily,
    as_json: bool,
    out: &mut impl Write,
) -> Result<(), Failure> {
    if count == 0 || n == 0 {
        return Err(Error::BadParameter("count and n must be positive".into()).into());
    }
    let seeds: Vec<u64> = (0..count as u64).map(|i| seed.wrapping_add(i)).collect();
    run.seeds = seeds.clone();
    let reports: Vec<BoundReport> = seeds
        .par_iter()
        .map(|&s| {
            let g = match family {
                BenchFamily::Stacked => generators::stacked_triangulation(n, s)?,
                BenchFamily::Kleetope => generators::kleetope(n, s)?,
            };
            corollary_dominating_set_with(&g, None, CorollaryOptions::default()).map(|r| r.1)
        })
        .collect::<Result<_, Error>>()?;
    let summary = compare_bounds(&reports);
    run.result = serde_json::to_value(&summary).unwrap();
    if as_json {
        let rows: Vec<Value> = seeds
            .iter()
            .zip(&reports)
            .enumerate()
            .map(|(i, (s, r))| json!({"instance": i, "seed": s, "report": r}))
            .collect();
        let v = json!({"rows": rows, "summary": summary});
        return emit(
            out,
            &format!("{}\n", serde_json::to_string_pretty(&v).unwrap()),
        );
    }
    let mut text = format!("instance,seed,{}\n", BoundReport::CSV_HEADER);
    for (i, (s, r)) in seeds.iter().zip(&reports).enumerate() {
        text.push_str(&format!("{i},{s},{}\n", r.csv_row()));
    }
    text.push_str(&format!("# instances {}\n", summary.instances));
    text.push_str(&format!(
        "# frac_alpha_above_3_7 {}\n",
        summary.frac_alpha_above_3_7
    ));
    text.push_str(&format!(
        "# frac_mis_below_2n_7 {}\n",
        summary.frac_mis_below_2n_7
    ));
    text.push_str(&format!(
        "# mean_dominating_ratio {}\n",
        summary.mean_dominating_ratio
    ));
    text.push_str(&format!(
        "# wins mt={} crr={} ours={}\n",
        summary.wins_mt, summary.wins_crr, summary.wins_ours
    ));
    emit(out, &text)
}

fn generate(family: GenFamily, n: usize, k: usize, seed: u64) -> Result<PlaneMultigraph, Error> {
    Ok(match family {
        GenFamily::Polygon => {
            if n < 2 {
                return Err(Error::BadParameter("polygon needs n >= 2".into()));
            }
            generators::polygon(n)
        }
        GenFamily::Octahedron => generators::octahedron(),
        GenFamily::Icosahedron => generators::icosahedron(),
        GenFamily::Stacked => generators::stacked_triangulation(n, seed)?,
        GenFamily::Kleetope => generators::kleetope(n, seed)?,
        GenFamily::Edges => generators::disjoint_family(FamilyKind::Edges, k)?,
        GenFamily::Paths => generators::disjoint_family(FamilyKind::Paths3Edge, k)?,
        GenFamily::Cycles => generators::disjoint_family(FamilyKind::Cycles4, k)?,
        GenFamily::DoubledK4 => generators::doubled_k4_family(k)?,
        GenFamily::LoopGadget => generators::loop_gadget(),
        GenFamily::Theorem => generators::random_theorem_instance(n, seed)?,
        GenFamily::Lemma => generators::random_lemma_instance(n, seed)?,
    })
}

fn oracle_cmd(
    run: &mut Run,
    path: &Path,
    problem: Problem,
    max_nodes: u64,
    as_json: bool,
    out: &mut impl Write,
) -> Result<(), Failure> {
    let g = run.load(path)?;
    let budget = OracleBudget {
        max_nodes,
        ..OracleBudget::default()
    };
    let (name, value, witness): (&str, Option<usize>, Option<Vec<u32>>) = match problem {
        Problem::Gamma => {
            let (k, s) = oracle::min_dominating_exact(&g, budget)?;
            ("gamma", Some(k), Some(labels(&g, &s)))
        }
        Problem::Beta => {
            let (k, s) = oracle::min_face_hitting_exact(&g, budget)?;
            ("beta", Some(k), Some(labels(&g, &s)))
        }
        Problem::Mis => {
            let s = oracle::max_independent_exact(&g, budget)?;
            ("alpha", Some(s.len()), Some(labels(&g, &s)))
        }
        Problem::Dp | Problem::Dp3 => {
            let three = matches!(problem, Problem::Dp3);
            let found = oracle::exists_dp_two_coloring(&g, three, budget)?;
            let name = if three { "dp3" } else { "dp" };
            (name, None, found.map(|c| labels(&g, &c.class(Side::A))))
        }
    };
    run.result = json!({"problem": name, "value": value, "found": witness.is_some()});
    if as_json {
        let v = json!({"problem": name, "value": value, "witness": witness});
        return emit(
            out,
            &format!("{}\n", serde_json::to_string_pretty(&v).unwrap()),
        );
    }
    let text = match (value, witness) {
        (Some(k), Some(w)) => format!("{name} = {k}\nwitness: {}\n", joined(&w)),
        (None, Some(w)) => format!("{name}: found\nclass A: {}\n", joined(&w)),
        _ => format!("{name}: none\n"),
    };
    emit(out, &text)
}

fn render(run: &mut Run, path: &Path, dot: &Path, with_color: bool) -> Result<(), Failure> {
    let g = run.load(path)?;
    let c = if with_color {
        Some(theorem_coloring(&g)?)
    } else {
        None
    };
    fs::write(dot, to_dot(&g, c.as_ref())).map_err(|e| Failure::Io(dot.to_path_buf(), e))?;
    run.result = json!({"dot": dot.display().to_string()});
    Ok(())
}

fn dispatch(command: &Command, run: &mut Run, out: &mut impl Write) -> Result<(), Failure> {
    match command {
        Command::Validate { path } => validate(run, path, out),
        Command::Color { path, check, json } => color(run, path, *check, *json, out),
        Command::Dominate {
            path,
            mis,
            seed,
            exact,
            json,
        } => dominate(run, path, *mis, *seed, *exact, *json, out),
        Command::Bench {
            count,
            n,
            seed,
            family,
            json,
        } => bench(run, *count, *n, *seed, *family, *json, out),
        Command::Gen {
            family,
            n,
            k,
            seed,
            out: dest,
        } => {
            run.seeds.push(*seed);
            let g = generate(*family, *n, *k, *seed)?;
            let text = write_plg(&g);
            run.result = json!({"vertices": g.vertex_count(), "edges": g.edge_count()});
            match dest {
                Some(p) => fs::write(p, text).map_err(|e| Failure::Io(p.clone(), e)),
                None => emit(out, &text),
            }
        }
        Command::Oracle {
            path,
            problem,
            max_nodes,
            json,
        } => oracle_cmd(run, path, *problem, *max_nodes, *json, out),
        Command::Render { path, dot, color } => render(run, path, dot, *color),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Color { .. } => "color",
        Command::Dominate { .. } => "dominate",
        Command::Bench { .. } => "bench",
        Command::Gen { .. } => "gen",
        Command::Oracle { .. } => "oracle",
        Command::Render { .. } => "render",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut run = Run::new(command_name(&cli.command));
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let outcome = dispatch(&cli.command, &mut run, &mut out);
    let _ = out.flush();
    let code = match &outcome {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {}", f.message());
            f.exit_code()
        }
    };
    if !cli.quiet {
        let manifest = RunManifest {
            command: run.command,
            input_sha256: run.input_sha256,
            seeds: run.seeds,
            version: env!("CARGO_PKG_VERSION"),
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            exit_code: code,
            result: run.result,
        };
        eprintln!("{}", serde_json::to_string(&manifest).unwrap());
    }
    ExitCode::from(code)
}
