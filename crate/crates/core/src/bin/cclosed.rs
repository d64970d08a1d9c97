use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};

use cclosed::bounds::{evaluate, CertifyOptions};
use cclosed::cliques::{cclosed as engine, cliques_pivot, count_pivot, degeneracy_ordering, CClosedOptions, Mode};
use cclosed::closure::{weak_closure_with, ClosureOptions, CodegreeMethod};
use cclosed::generators::{self, BaseGraph, GeneratorSpec};
use cclosed::graph::{load_edge_list, load_edge_list_path};
use cclosed::report::{analyze, bounds_table};
use cclosed::verify::{self, VerifyOptions};
use cclosed::{Error, Graph, Vertex};

const BUDGET_ENV: &str = "CCLOSED_BUDGET_SECONDS";

#[derive(Parser)]
#[command(name = "cclosed", version, about = "Triadic-closure parameters and maximal clique enumeration")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// c-closure, weak c-closure, A-bound and degree statistics of a graph.
    Analyze {
        /// Edge-list file, or `-` for stdin.
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        budget: Budget,
        /// Pair count above which codegrees are accumulated over wedges.
        #[arg(long)]
        pair_threshold: Option<u64>,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Enumerate maximal cliques.
    Cliques {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        /// weak-closure, id, degeneracy or file:PATH (labels in processing order).
        #[arg(long, default_value = "weak-closure")]
        ordering: String,
        /// Print only the number of cliques (paths, in superset mode).
        #[arg(long)]
        count_only: bool,
        /// Largest common neighbourhood handed to a subcall.
        #[arg(long, default_value_t = 40)]
        max_subcall: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: Budget,
    },
    /// Evaluate every clique-count bound and certify the exact count against them.
    Bounds {
        input: PathBuf,
        #[arg(long)]
        skip_count: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        max_subcall: Option<usize>,
        #[command(flatten)]
        budget: Budget,
    },
    /// Write a generated graph as an edge list.
    Generate {
        /// One of the families listed by `--describe`.
        family: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        c: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Prime order of the projective plane.
        #[arg(long)]
        p: Option<u64>,
        /// Edge probability for erdos_renyi.
        #[arg(long)]
        prob: Option<f64>,
        /// Vertex count for girth5_greedy and the greedy base.
        #[arg(long)]
        v: Option<usize>,
        #[arg(long, value_enum, default_value_t = BaseArg::Petersen)]
        base: BaseArg,
        /// Base graph read from an edge list instead of `--base`.
        #[arg(long)]
        base_file: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the parameters of a family (or all families) and exit.
        #[arg(long)]
        describe: bool,
    },
    /// Run the invariant corpus.
    Verify {
        #[arg(long)]
        only: Option<String>,
        #[arg(long, default_value_t = 200)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 200)]
        random_graphs: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Wall time against n on the blowup family at fixed c.
    Bench {
        #[arg(long, default_value_t = 4)]
        c: usize,
        /// Base-graph vertex counts.
        #[arg(long, value_delimiter = ',', default_value = "10,20,40,80,160")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(clap::Args)]
struct Budget {
    /// Wall-clock budget; also read from CCLOSED_BUDGET_SECONDS.
    #[arg(long)]
    budget_seconds: Option<f64>,
}

impl Budget {
    fn deadline(&self) -> Result<Option<Instant>, Error> {
        let secs = match self.budget_seconds {
            Some(s) => Some(s),
            None => match std::env::var(BUDGET_ENV) {
                Ok(v) => Some(
                    v.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::InvalidArgument(format!("{BUDGET_ENV}={v:?} is not a number")))?,
                ),
                Err(_) => None,
            },
        };
        match secs {
            None => Ok(None),
            Some(s) if s > 0.0 && s.is_finite() => Ok(Some(Instant::now() + Duration::from_secs_f64(s))),
            Some(s) => Err(Error::InvalidArgument(format!("budget must be positive, got {s}"))),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Pairs,
    Wedges,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Superset,
    Exact,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum BaseArg {
    C5,
    Petersen,
    Greedy,
}

/// Failure carrying the process exit code.
struct Exit(u8, String);

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BoundViolation { .. } => 1,
            Error::BudgetExceeded(_) => 3,
            _ => 2,
        };
        Exit(code, e.to_string())
    }
}

impl From<io::Error> for Exit {
    fn from(e: io::Error) -> Self {
        Exit(2, e.to_string())
    }
}

type Outcome = Result<u8, Exit>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        pool = pool.num_threads(t);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| dispatch(cli.command)) {
        Ok(code) => ExitCode::from(code),
        Err(Exit(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Analyze {
            input,
            format,
            budget,
            pair_threshold,
            method,
        } => cmd_analyze(&input, format, &budget, pair_threshold, method),
        Command::Cliques {
            input,
            mode,
            ordering,
            count_only,
            max_subcall,
            out,
            budget,
        } => cmd_cliques(&input, mode, &ordering, count_only, max_subcall, out.as_deref(), &budget),
        Command::Bounds {
            input,
            skip_count,
            format,
            max_subcall,
            budget,
        } => cmd_bounds(&input, skip_count, format, max_subcall, &budget),
        Command::Generate {
            family,
            n,
            c,
            k,
            p,
            prob,
            v,
            base,
            base_file,
            seed,
            out,
            describe,
        } => {
            if describe {
                return cmd_describe(family.as_deref());
            }
            let family = family.ok_or_else(|| Exit(2, "missing family; try --describe".into()))?;
            let params = GenParams {
                n,
                c,
                k,
                p,
                prob,
                v,
                base,
                base_file,
                seed,
            };
            let g = build_generator(&family, &params)?;
            write_output(out.as_deref(), |w| g.write_edge_list(w))?;
            Ok(0)
        }
        Command::Verify {
            only,
            n_max,
            seed,
            samples,
            random_graphs,
            format,
            inject_fault,
        } => {
            let opts = VerifyOptions {
                only,
                n_max,
                seed,
                samples,
                random_graphs,
                inject_fault,
            };
            let report = verify::run(&opts)?;
            match format {
                Format::Json => println!("{}", to_json(&report)?),
                _ => print!("{}", report.to_text()),
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Bench { c, sizes, seed } => cmd_bench(c, &sizes, seed),
    }
}

fn load(input: &Path) -> Result<Graph, Error> {
    if input == Path::new("-") {
        load_edge_list(io::stdin().lock())
    } else {
        load_edge_list_path(input)
    }
}

fn graph_name(input: &Path) -> String {
    if input == Path::new("-") {
        return "stdin".into();
    }
    input
        .file_stem()
        .map_or_else(|| input.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn to_json<T: serde::Serialize>(x: &T) -> Result<String, Exit> {
    serde_json::to_string_pretty(x).map_err(|e| Exit(2, e.to_string()))
}

fn write_output<F>(out: Option<&Path>, f: F) -> Result<(), Exit>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            f(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            f(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn cmd_analyze(
    input: &Path,
    format: Format,
    budget: &Budget,
    pair_threshold: Option<u64>,
    method: MethodArg,
) -> Outcome {
    let deadline = budget.deadline()?;
    let g = load(input)?;
    let mut opts = ClosureOptions {
        deadline,
        method: match method {
            MethodArg::Auto => None,
            MethodArg::Pairs => Some(CodegreeMethod::AllPairs),
            MethodArg::Wedges => Some(CodegreeMethod::Wedges),
        },
        ..Default::default()
    };
    if let Some(t) = pair_threshold {
        opts.pair_threshold = t;
    }
    let r = analyze(&graph_name(input), &g, &opts);
    match format {
        Format::Json => println!("{}", to_json(&r)?),
        Format::Text => print!("{}", r.to_table()),
        Format::Tsv => {
            let cell = |x: Option<String>| x.unwrap_or_default();
            println!("graph\tn\tm\tc_closure\tweak_c_closure\ta_bound\tincomplete");
            println!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                r.name,
                r.n,
                r.m,
                cell(r.c_closure.map(|c| c.to_string())),
                cell(r.weak_c_closure.map(|c| c.to_string())),
                cell(r.a_bound.map(|a| a.to_string())),
                r.incomplete
            );
        }
    }
    if r.incomplete {
        eprintln!("error: budget exceeded before {}", r.missing.join(", "));
        return Ok(3);
    }
    Ok(0)
}

fn parse_ordering(g: &Graph, spec: &str, deadline: Option<Instant>) -> Result<Vec<Vertex>, Error> {
    match spec {
        "weak-closure" => Ok(weak_closure_with(
            g,
            &ClosureOptions {
                deadline,
                ..Default::default()
            },
        )?
        .ordering),
        "id" => Ok(g.vertices().collect()),
        "degeneracy" => Ok(degeneracy_ordering(g)),
        _ => {
            let path = spec.strip_prefix("file:").ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown ordering {spec:?}; expected weak-closure, id, degeneracy or file:PATH"
                ))
            })?;
            let text = std::fs::read_to_string(path)?;
            let index = g.label_index();
            text.split_whitespace()
                .map(|tok| {
                    let label: u64 = tok
                        .parse()
                        .map_err(|_| Error::InvalidArgument(format!("ordering entry {tok:?} is not an integer")))?;
                    index
                        .get(&label)
                        .copied()
                        .ok_or_else(|| Error::InvalidArgument(format!("ordering names unknown vertex {label}")))
                })
                .collect()
        }
    }
}

fn cmd_cliques(
    input: &Path,
    mode: ModeArg,
    ordering: &str,
    count_only: bool,
    max_subcall: usize,
    out: Option<&Path>,
    budget: &Budget,
) -> Outcome {
    let deadline = budget.deadline()?;
    let g = load(input)?;
    let (count, set) = match mode {
        ModeArg::Oracle if count_only => (count_pivot(&g) as usize, None),
        ModeArg::Oracle => {
            let set = cliques_pivot(&g).to_clique_set();
            (set.len(), Some(set))
        }
        ModeArg::Superset | ModeArg::Exact => {
            let order = parse_ordering(&g, ordering, deadline)?;
            let opts = CClosedOptions {
                mode: if matches!(mode, ModeArg::Exact) { Mode::Exact } else { Mode::Superset },
                max_subcall,
                record_type3: false,
                deadline,
            };
            let forest = engine::run(&g, &order, &opts)?.forest;
            let count = forest.leaf_count();
            (count, (!count_only).then(|| forest.to_clique_set()))
        }
    };
    write_output(out, |w| match &set {
        Some(set) => set.write_text(&g, w),
        None => writeln!(w, "{count}"),
    })?;
    Ok(0)
}

fn cmd_bounds(input: &Path, skip_count: bool, format: Format, max_subcall: Option<usize>, budget: &Budget) -> Outcome {
    let deadline = budget.deadline()?;
    let g = load(input)?;
    let opts = CertifyOptions {
        skip_count,
        deadline,
        max_subcall,
        ..Default::default()
    };
    let r = evaluate(&g, &opts)?;
    match format {
        Format::Json => println!("{}", to_json(&r)?),
        _ => print!("{}", bounds_table(&graph_name(input), &r)),
    }
    if !r.violations.is_empty() {
        return Ok(1);
    }
    if !skip_count && !r.count_available {
        eprintln!("error: count unavailable within the budget");
        return Ok(3);
    }
    Ok(0)
}

fn cmd_describe(family: Option<&str>) -> Outcome {
    match family {
        Some(f) => {
            let text = generators::describe(f).ok_or_else(|| unknown_family(f))?;
            println!("{text}");
        }
        None => {
            for f in generators::FAMILIES {
                println!("{}\n", generators::describe(f).expect("listed family"));
            }
        }
    }
    Ok(0)
}

fn unknown_family(f: &str) -> Exit {
    Exit(
        2,
        format!("unknown family {f:?}; expected one of {}", generators::FAMILIES.join(", ")),
    )
}

struct GenParams {
    n: Option<usize>,
    c: Option<usize>,
    k: Option<usize>,
    p: Option<u64>,
    prob: Option<f64>,
    v: Option<usize>,
    base: BaseArg,
    base_file: Option<PathBuf>,
    seed: u64,
}

fn need<T>(x: Option<T>, flag: &str, family: &str) -> Result<T, Exit> {
    x.ok_or_else(|| Exit(2, format!("{family} needs --{flag}")))
}

fn build_generator(family: &str, a: &GenParams) -> Result<Graph, Exit> {
    let spec = match family {
        "moon_moser" => GeneratorSpec::MoonMoser {
            n: need(a.n, "n", family)?,
        },
        "moon_moser_union" => GeneratorSpec::MoonMoserUnion {
            n: need(a.n, "n", family)?,
            c: need(a.c, "c", family)?,
        },
        "clique_minus_edge" => GeneratorSpec::CliqueMinusEdge {
            k: need(a.k, "k", family)?,
        },
        "projective_incidence" => GeneratorSpec::ProjectiveIncidence {
            p: need(a.p, "p", family)?,
        },
        "blowup" => {
            let c = need(a.c, "c", family)?;
            if let Some(path) = &a.base_file {
                let h = load_edge_list(BufReader::new(File::open(path)?))?;
                return Ok(generators::blowup(&h, c)?);
            }
            let base = match a.base {
                BaseArg::C5 => BaseGraph::C5,
                BaseArg::Petersen => BaseGraph::Petersen,
                BaseArg::Greedy => BaseGraph::Greedy {
                    v: need(a.v, "v", family)?,
                    seed: a.seed,
                },
            };
            GeneratorSpec::Blowup { base, c }
        }
        "girth5_greedy" => GeneratorSpec::Girth5Greedy {
            v: need(a.v, "v", family)?,
            seed: a.seed,
        },
        "erdos_renyi" => GeneratorSpec::ErdosRenyi {
            n: need(a.n, "n", family)?,
            p: need(a.prob, "prob", family)?,
            seed: a.seed,
        },
        _ => return Err(unknown_family(family)),
    };
    Ok(spec.build()?)
}

fn cmd_bench(c: usize, sizes: &[usize], seed: u64) -> Outcome {
    println!(
        "{:>6} {:>8} {:>10} {:>10} {:>12} {:>12}",
        "base", "n", "m", "cliques", "cclosed_ms", "pivot_ms"
    );
    for &v in sizes {
        let h = generators::girth5_greedy(v, seed)?;
        let g = generators::blowup(&h, c)?;
        let t = Instant::now();
        let order = weak_closure_with(&g, &ClosureOptions::default())?.ordering;
        let count = engine::run(&g, &order, &CClosedOptions::default())?.forest.leaf_count();
        let t_cc = t.elapsed();
        let t = Instant::now();
        let oracle = count_pivot(&g);
        let t_pv = t.elapsed();
        if oracle != count as u64 {
            return Err(Exit(1, format!("blowup of base size {v}: {count} != oracle {oracle}")));
        }
        println!(
            "{:>6} {:>8} {:>10} {:>10} {:>12.3} {:>12.3}",
            v,
            g.n(),
            g.m(),
            count,
            t_cc.as_secs_f64() * 1e3,
            t_pv.as_secs_f64() * 1e3
        );
    }
    Ok(0)
}
