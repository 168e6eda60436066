use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use wtreereg::betti::{betti_table_with, regularity_with, OracleLimits};
use wtreereg::formulas::{power_regularity, reg_closed_form, reg_path_closed_form};
use wtreereg::harness::{run_suite, SuiteConfig, VerifyOptions};
use wtreereg::matchings::{induced_matching_number, s_value};
use wtreereg::monomial::{edge_ideal, MonomialIdeal};
use wtreereg::wgraph::{is_integrally_closed, non_trivial_spine, WeightedGraph};

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(name = "wtreereg", version, about = "Regularity of edge ideals of weighted trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a graph and report integral closure, spine and matchings.
    Check { graph: PathBuf },
    /// Closed-form regularity of the edge ideal.
    Reg {
        graph: PathBuf,
        /// Also compute the regularity from graded Betti numbers.
        #[arg(long)]
        oracle: bool,
    },
    /// Exact value (where known) and upper bound for reg(I^t).
    Power {
        graph: PathBuf,
        #[arg(long, default_value_t = 2)]
        t: u32,
        #[arg(long)]
        oracle: bool,
    },
    /// Graded Betti table of an ideal given as {"vars": [...], "gens": [...]}.
    Betti { ideal: PathBuf },
    /// Compare closed forms against the oracle over a corpus.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// The worked instances with their printed values.
    #[arg(long)]
    golden: bool,
    /// Every integrally closed weighted tree up to the size limits.
    #[arg(long)]
    enumerate: bool,
    /// This many seeded random trees.
    #[arg(long, value_name = "N")]
    random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 7)]
    max_vertices: usize,
    #[arg(long, default_value_t = 3)]
    max_weight: u32,
    #[arg(long, default_value_t = 2)]
    t_max: u32,
    /// Write the JSON Lines report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Io(String),
    Mismatch(String),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn print(v: &Value) {
    let text = serde_json::to_string_pretty(v).expect("values serialize");
    let _ = writeln!(io::stdout().lock(), "{text}");
}

fn check(path: &Path) -> Result<(), Failure> {
    let g: WeightedGraph = read_json(path)?;
    let matching = induced_matching_number(&g);
    let mut out = json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "is_tree": g.is_tree(),
        "is_forest": g.is_forest(),
        "integrally_closed": is_integrally_closed(&g),
        "trivially_weighted": g.is_trivially_weighted(),
        "nu": matching.size,
        "matching_witness": matching.witness,
    });
    if let Ok(spine) = non_trivial_spine(&g) {
        let s_at = |j| spine.spine_edge(&g, j).map(|e| s_value(&g, e));
        out["s_i"] = json!(s_at(spine.heavy_index));
        out["s_i_plus_2"] = json!(s_at(spine.heavy_index + 2));
        out["spine"] = json!(spine);
    }
    print(&out);
    Ok(())
}

fn reg(path: &Path, oracle: bool) -> Result<(), Failure> {
    let g: WeightedGraph = read_json(path)?;
    let formula = reg_closed_form(&g).map_err(usage)?;
    let mut out = json!({ "formula": formula });
    if let Ok(p) = reg_path_closed_form(&g) {
        out["path_formula"] = json!(p.value);
    }
    let mut mismatch = None;
    if oracle {
        let table = betti_table_with(&edge_ideal(&g), &OracleLimits::from_env()).map_err(usage)?;
        let r = table.regularity();
        if r != Some(formula.value) {
            mismatch = Some(format!("closed form {} but oracle {:?}", formula.value, r));
        }
        out["oracle"] = json!(r);
        out["betti"] = json!(table);
    }
    print(&out);
    mismatch.map_or(Ok(()), |m| Err(Failure::Mismatch(m)))
}

fn power(path: &Path, t: u32, oracle: bool) -> Result<(), Failure> {
    let g: WeightedGraph = read_json(path)?;
    let r = power_regularity(&g, t).map_err(usage)?;
    let mut out = json!(r);
    let mut mismatch = None;
    if oracle {
        let ideal = edge_ideal(&g).power(t).map_err(usage)?;
        let o = regularity_with(&ideal, &OracleLimits::from_env()).map_err(usage)?;
        if o > r.upper_bound || r.exact.is_some_and(|e| e != o) {
            mismatch = Some(format!("oracle reg(I^{t}) = {o} contradicts {r:?}"));
        }
        out["oracle"] = json!(o);
    }
    print(&out);
    mismatch.map_or(Ok(()), |m| Err(Failure::Mismatch(m)))
}

fn betti(path: &Path) -> Result<(), Failure> {
    let ideal: MonomialIdeal = read_json(path)?;
    let table = betti_table_with(&ideal, &OracleLimits::from_env()).map_err(usage)?;
    print(&json!(table));
    Ok(())
}

fn verify(args: &VerifyArgs) -> Result<(), Failure> {
    let config = SuiteConfig {
        golden: args.golden,
        enumerate: args.enumerate,
        random: args.random,
        seed: args.seed,
        max_vertices: args.max_vertices,
        max_weight: args.max_weight,
        options: VerifyOptions {
            t_max: args.t_max,
            limits: OracleLimits::from_env(),
            ..VerifyOptions::default()
        },
    };
    if config.is_empty() {
        return Err(Failure::Usage(
            "nothing to verify: pass --golden, --enumerate or --random N".into(),
        ));
    }
    if args.max_vertices < 2 || args.max_weight < 1 || args.t_max < 1 {
        return Err(Failure::Usage(
            "--max-vertices must be >= 2, --max-weight and --t-max >= 1".into(),
        ));
    }
    let summary = match &args.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            run_suite(&config, &mut w)?
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            let s = run_suite(&config, &mut w)?;
            w.flush()?;
            s
        }
    };
    eprintln!("{}", serde_json::to_string(&summary).expect("summary serializes"));
    if summary.mismatches() > 0 {
        return Err(Failure::Mismatch(format!("{} instances disagree with the oracle", summary.mismatches())));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check { graph } => check(graph),
        Command::Reg { graph, oracle } => reg(graph, *oracle),
        Command::Power { graph, t, oracle } => power(graph, *t, *oracle),
        Command::Betti { ideal } => betti(ideal),
        Command::Verify(args) => verify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(m)) => {
            eprintln!("mismatch: {m}");
            ExitCode::from(EXIT_MISMATCH)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Io(m)) => {
            eprintln!("i/o error: {m}");
            ExitCode::from(EXIT_IO)
        }
    }
}
