use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use symschub_core::cache::DegreeCache;
use symschub_core::classify::classify_with_degree;
use symschub_core::enumerate::{enumerate_with_cache, write_csv};
use symschub_core::instance::parse_rational;
use symschub_core::system::{generate_from_instance, DEFAULT_TOL};
use symschub_core::{
    lg_problem_degree, read_solutions, read_system, table1_row, verify_solutions, write_system, BoxBound,
    EnumerationFilter, Error, InstanceDoc, Partition, Result, SchubertProblem,
};

#[derive(Parser)]
#[command(name = "symschub", version, about = "Symmetric Schubert problems on Gr(m,2m) and LG(m,2m)")]
struct Cli {
    /// Directory holding the degree cache (degrees.txt).
    #[arg(long, global = true, env = "SYMSCHUB_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ProblemArgs {
    #[arg(long)]
    m: u32,
    /// A condition such as 3,2,1; repeat once per condition.
    #[arg(short = 'c', long = "condition", required = true)]
    conditions: Vec<String>,
}

impl ProblemArgs {
    fn parse(&self) -> Result<(BoxBound, Vec<Partition>)> {
        let m = BoxBound::new(self.m)?;
        let conds = self.conditions.iter().map(|c| c.parse()).collect::<Result<Vec<Partition>>>()?;
        Ok((m, conds))
    }

    fn problem(&self) -> Result<SchubertProblem> {
        let (m, conds) = self.parse()?;
        SchubertProblem::new(m, conds)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Number of solutions d(λ) for general flags.
    Degree(ProblemArgs),
    /// Mod-4 classification of a symmetric problem, as JSON.
    Classify(ProblemArgs),
    /// One table row: m, number of symmetric problems, number with a lower bound of two.
    Table1 {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = EnumerationFilter::default().min_degree)]
        min_degree: u64,
    },
    /// All symmetric problems for one m.
    Enumerate {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = EnumerationFilter::default().min_degree)]
        min_degree: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Degree of the corresponding problem on the Lagrangian Grassmannian.
    LgDegree(ProblemArgs),
    /// Writes an instance (problem plus flags) as JSON.
    MakeInstance {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Osculation points, one per condition, e.g. 0,1,2,-1/2.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "random_isotropic")]
        osculate: Option<String>,
        #[arg(long, requires = "seed")]
        random_isotropic: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Writes the polynomial system of an instance and its JSON sidecar.
    ExportSystem {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Checks solutions computed by an external solver, printing a JSON report.
    CheckSolutions {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        solutions: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidInput(_) => 2,
        Error::InvalidProblem(_) => 3,
        Error::Chart(_) => 4,
        Error::Parse { .. } | Error::Io { .. } | Error::Json(_) | Error::Csv(_) => 5,
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io { path: path.into(), source: e }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Error::Io { path: "<stdout>".into(), source: e })
        }
    }
}

struct Cache {
    dir: Option<PathBuf>,
    inner: DegreeCache,
}

impl Cache {
    fn open(dir: Option<PathBuf>) -> Result<Self> {
        let inner = match &dir {
            Some(d) => DegreeCache::load(d)?,
            None => DegreeCache::new(),
        };
        Ok(Cache { dir, inner })
    }

    fn save(&self) -> Result<()> {
        if let Some(d) = &self.dir {
            self.inner.save(d)?;
        }
        Ok(())
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Degree(args) => {
            let p = args.problem()?;
            let cache = Cache::open(cli.cache_dir)?;
            let d = cache.inner.degree(&p)?;
            cache.save()?;
            emit(None, &format!("{d}\n"))
        }
        Command::Classify(args) => {
            let p = SchubertProblem::symmetric(args.problem()?.m, args.parse()?.1)?;
            let cache = Cache::open(cli.cache_dir)?;
            let d = cache.inner.degree(&p)?;
            cache.save()?;
            let c = classify_with_degree(&p, &d)?;
            emit(None, &(serde_json::to_string_pretty(&c)? + "\n"))
        }
        Command::Table1 { m, jobs, min_degree } => {
            let filter = EnumerationFilter { min_degree, ..Default::default() };
            let row = table1_row(BoxBound::new(m)?, &filter, jobs)?;
            emit(None, &format!("{},{},{}\n", row.m, row.n_symmetric, row.n_lower_bound))
        }
        Command::Enumerate { m, min_degree, jobs, format, out } => {
            let filter = EnumerationFilter { min_degree, ..Default::default() };
            let cache = Cache::open(cli.cache_dir)?;
            let records = enumerate_with_cache(BoxBound::new(m)?, &filter, jobs, Some(&cache.inner))?;
            cache.save()?;
            let text = match format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    write_csv(&records, &mut buf)?;
                    String::from_utf8(buf).expect("csv output is utf-8")
                }
                Format::Json => {
                    let rows: Vec<_> = records.iter().map(|r| &r.classification).collect();
                    serde_json::to_string_pretty(&rows)? + "\n"
                }
                Format::Text => records
                    .iter()
                    .map(|r| format!("{}\t{}\n", r.problem.conditions_key(), r.degree))
                    .collect(),
            };
            emit(out.as_deref(), &text)
        }
        Command::LgDegree(args) => {
            let (m, conds) = args.parse()?;
            let d = lg_problem_degree(&conds, m)?;
            emit(None, &format!("{d}\n"))
        }
        Command::MakeInstance { problem, osculate, random_isotropic, seed, out } => {
            let p = problem.problem()?;
            let doc = match (osculate, random_isotropic) {
                (Some(points), false) => {
                    let ts = points.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
                    InstanceDoc::osculating(p.m, p.conditions, &ts)?
                }
                (None, true) => InstanceDoc::random_isotropic(p.m, p.conditions, seed.unwrap_or_default()),
                _ => {
                    return Err(Error::InvalidInput(
                        "give exactly one of --osculate t1,t2,... or --random-isotropic --seed s".into(),
                    ))
                }
            };
            emit(out.as_deref(), &(doc.to_json()? + "\n"))
        }
        Command::ExportSystem { instance, out } => {
            let doc = InstanceDoc::read(&instance)?;
            let sys = generate_from_instance(&doc)?;
            write_system(&sys, &out)?;
            emit(None, &format!("{} variables, {} polynomials\n", sys.n_vars(), sys.polynomials.len()))
        }
        Command::CheckSolutions { system, solutions, tol } => {
            let sys = read_system(&system)?;
            let sols = read_solutions(&solutions)?;
            let report = verify_solutions(&sys, &sols, tol)?;
            emit(None, &(serde_json::to_string_pretty(&report)? + "\n"))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
