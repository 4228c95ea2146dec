mod analysis;

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lapen::consensus::{gain_experiment, measured_rate, simulate, SimConfig, DEFAULT_WINDOW, RNG_NAME};
use lapen::search::{extremal_search_with, SearchOptions};
use lapen::spectral::{algebraic_connectivity, laplacian_spectrum};
use lapen::verify::{verify, VerifyOptions, VERIFY_N_MAX};
use lapen::{construct, select_case, Format, Graph, SimError};

#[derive(Parser)]
#[command(name = "lapen", version, about = "Minimal Laplacian energy graphs and their connectivity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the minimum-energy graph for (n, m).
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "edges")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Energy, spectrum and connectivity of an edge-list file.
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive extremal search over all graphs with n vertices.
    Search {
        #[arg(long)]
        n: usize,
        /// Single edge count; default is every m from n-1 to n(n-1)/2.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        connected_only: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
        /// Write every extremal representative here as an edge list.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Permit n up to 11.
        #[arg(long)]
        allow_large: bool,
    },
    /// Integrate x' = -Lx and fit the decay rate of the disagreement.
    Simulate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 20.0)]
        t_end: f64,
        /// Integrator step; default 0.1 / lambda_max.
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// File of n numbers, or "random".
        #[arg(long, default_value = "random")]
        x0: String,
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: f64,
        /// Write the JSON summary here instead of standard error.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Algebraic connectivity gain of a rewired regular lattice.
    Gain {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_delimiter = ',', default_value = "0,0.001,0.01,0.1,1")]
        p_grid: Vec<f64>,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Emit the full report as JSON instead of CSV.
        #[arg(long)]
        json: bool,
    },
    /// Sweep every constructed graph up to n-max and check all invariants.
    Verify {
        #[arg(long, default_value_t = VERIFY_N_MAX)]
        n_max: usize,
        /// Also regenerate the small-n matching tables.
        #[arg(long)]
        search: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

/// Exit statuses.
const USAGE: u8 = 2;
const PARSE: u8 = 3;
const INTERNAL: u8 = 4;

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(e: impl std::fmt::Display) -> Self {
        Failure { code: USAGE, message: e.to_string() }
    }

    fn parse(e: impl std::fmt::Display) -> Self {
        Failure { code: PARSE, message: e.to_string() }
    }

    fn internal(e: impl std::fmt::Display) -> Self {
        Failure { code: INTERNAL, message: e.to_string() }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    std::panic::set_hook(Box::new(|info| eprintln!("internal error: {info}")));
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(f)) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
        Err(_) => ExitCode::from(INTERNAL),
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Construct { n, m, format, out } => cmd_construct(n, m, format, out.as_deref()),
        Command::Analyze { input, json } => cmd_analyze(&input, json),
        Command::Search { n, m, connected_only, format, out_dir, threads, allow_large } => {
            let opts = SearchOptions { connected_only, threads, allow_large };
            cmd_search(n, m, opts, format, out_dir.as_deref())
        }
        Command::Simulate { input, t_end, dt, seed, x0, window, summary } => {
            cmd_simulate(&input, t_end, dt, seed, &x0, window, summary.as_deref())
        }
        Command::Gain { n, k, p_grid, samples, seed, json } => cmd_gain(n, k, &p_grid, samples, seed, json),
        Command::Verify { n_max, search, threads } => cmd_verify(VerifyOptions { n_max, search, threads }),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).map_err(Failure::internal)
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    Graph::read_edge_list(&text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

fn cmd_construct(n: usize, m: usize, format: Format, out: Option<&Path>) -> Outcome {
    let plan = select_case(n, m).map_err(Failure::usage)?;
    let g = construct(n, m).map_err(Failure::usage)?;
    eprintln!("case {}", plan.case);
    emit(out, &g.write(format))
}

fn cmd_analyze(input: &Path, json: bool) -> Outcome {
    let g = read_graph(input)?;
    let bundle = analysis::analyze(&g);
    let text = if json {
        serde_json::to_string_pretty(&bundle).map_err(Failure::internal)? + "\n"
    } else {
        bundle.to_text()
    };
    emit(None, &text)
}

fn cmd_search(n: usize, m: Option<usize>, opts: SearchOptions, format: TableFormat, out_dir: Option<&Path>) -> Outcome {
    let ms: Vec<usize> = match m {
        Some(m) => vec![m],
        None => (n.saturating_sub(1)..=n * n.saturating_sub(1) / 2).collect(),
    };
    let mut rows = Vec::with_capacity(ms.len());
    for m in ms {
        rows.push(extremal_search_with(n, m, opts).map_err(Failure::usage)?);
    }
    for r in rows.iter().filter(|r| !r.matched && r.complete_bipartite_max_a) {
        eprintln!("n = {}, m = {}: non-matching row with a complete bipartite max-a graph", r.n, r.m);
    }
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(|e| Failure::usage(format!("{}: {e}", dir.display())))?;
        for r in &rows {
            for (label, reps) in [("min_energy", &r.min_energy_reps), ("max_a", &r.max_a_reps)] {
                for (i, rep) in reps.iter().enumerate() {
                    let path = dir.join(format!("n{}_m{}_{label}_{i}.edges", r.n, r.m));
                    emit(Some(&path), &rep.to_graph().to_edge_list())?;
                }
            }
        }
    }
    let text = match format {
        TableFormat::Json => serde_json::to_string_pretty(&rows).map_err(Failure::internal)? + "\n",
        TableFormat::Csv => {
            let mut s = String::from("n,m,min_energy,max_a,match,n_min_energy_classes,n_max_a_classes\n");
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{:.12},{},{},{}",
                    r.n, r.m, r.min_energy, r.max_a, r.matched, r.n_min_energy_classes, r.n_max_a_classes
                );
            }
            s
        }
    };
    emit(None, &text)
}

fn read_state(spec: &str, n: usize, seed: u64) -> Result<Vec<f64>, Failure> {
    if spec == "random" {
        return Ok(lapen::consensus::random_state(n, seed));
    }
    let text = fs::read_to_string(spec).map_err(|e| Failure::usage(format!("{spec}: {e}")))?;
    text.split_whitespace()
        .enumerate()
        .map(|(i, tok)| tok.parse::<f64>().map_err(|_| Failure::parse(format!("{spec}: entry {}: not a number: {tok:?}", i + 1))))
        .collect()
}

#[derive(serde::Serialize)]
struct SimSummary {
    n: usize,
    m: usize,
    t_end: f64,
    dt: f64,
    seed: u64,
    window: f64,
    measured_rate: Option<f64>,
    a: f64,
    relative_error: Option<f64>,
    rate_source: &'static str,
}

fn cmd_simulate(
    input: &Path,
    t_end: f64,
    dt: Option<f64>,
    seed: u64,
    x0: &str,
    window: f64,
    summary: Option<&Path>,
) -> Outcome {
    let g = read_graph(input)?;
    let x0 = read_state(x0, g.n(), seed)?;
    let dt = match dt {
        Some(dt) => dt,
        None => {
            let lmax = laplacian_spectrum(&g).last().copied().unwrap_or(0.0);
            if lmax > 0.0 { (0.1 / lmax).min(t_end) } else { t_end }
        }
    };
    let cfg = SimConfig { t_end, dt, x0, seed };
    let traj = simulate(&g, &cfg).map_err(Failure::usage)?;
    let a = algebraic_connectivity(&g);
    let (rate, source) = match measured_rate(&traj, window) {
        Ok(r) => (Some(r), "fit"),
        Err(SimError::Underflow) => {
            eprintln!("disagreement reached machine precision inside the fit window; reporting the spectral rate");
            (None, "spectral")
        }
        Err(e) => return Err(Failure::usage(e)),
    };
    let s = SimSummary {
        n: g.n(),
        m: g.m(),
        t_end,
        dt,
        seed,
        window,
        measured_rate: rate,
        a,
        relative_error: rate.filter(|_| a > 0.0).map(|r| (r - a).abs() / a),
        rate_source: source,
    };
    let json = serde_json::to_string_pretty(&s).map_err(Failure::internal)? + "\n";
    match summary {
        Some(path) => emit(Some(path), &json)?,
        None => eprint!("{json}"),
    }
    let mut csv = String::from("t,disagreement\n");
    for (t, d) in traj.times.iter().zip(&traj.disagreement) {
        let _ = writeln!(csv, "{t:.9},{d:.12e}");
    }
    emit(None, &csv)
}

fn cmd_gain(n: usize, k: usize, ps: &[f64], samples: usize, seed: u64, json: bool) -> Outcome {
    if samples == 0 {
        return Err(Failure::usage("samples must be at least 1"));
    }
    let exp = gain_experiment(n, k, ps, samples, seed).map_err(|e| match e {
        SimError::BaselineMismatch { .. } => Failure::internal(e),
        e => Failure::usage(e),
    })?;
    eprintln!("rng {RNG_NAME}, seed {seed}, lambda2(0) = {:.12}", exp.lambda2_eigensolver);
    let text = if json {
        serde_json::to_string_pretty(&exp).map_err(Failure::internal)? + "\n"
    } else {
        let mut s = String::from("p,mean_gain,disconnected_count\n");
        for r in &exp.rows {
            let gain = r.gain.map_or_else(String::new, |g| format!("{g:.12}"));
            let _ = writeln!(s, "{},{gain},{}", r.p, r.disconnected);
        }
        s
    };
    emit(None, &text)
}

fn cmd_verify(opts: VerifyOptions) -> Outcome {
    let report = verify(opts).map_err(Failure::usage)?;
    for c in &report.checks {
        eprintln!("{:<22}{:>8} cases {:>6} failures", c.name, c.cases, c.failures);
    }
    eprintln!("{} expected equality discrepancies recorded", report.discrepancies.len());
    emit(None, &(serde_json::to_string_pretty(&report).map_err(Failure::internal)? + "\n"))?;
    if report.pass {
        Ok(())
    } else {
        Err(Failure::internal(format!("{} invariant failures", report.failures.len())))
    }
}
