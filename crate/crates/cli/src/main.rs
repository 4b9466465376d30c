use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use ncgalois::suites::{run_suite, Backend, SuiteConfig, SUITES};
use ncgalois::{Catalog, Error, Registry, Scalar, Symbolic};

#[derive(Parser)]
#[command(name = "ncgalois", version, about = "Rewriting and Hopf-Galois checks for quantum group presentations")]
struct Cli {
    /// Presentation files to add to the registry before running the command.
    #[arg(long = "load", global = true, value_name = "FILE")]
    load: Vec<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Check {
        #[arg(long, default_value = "all", value_parser = suite_name)]
        suite: String,
        /// Word length bound for axiom checks; confluence runs to twice this.
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = BackendArg::Symbolic)]
        backend: BackendArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Worker threads; `NCGALOIS_JOBS` takes precedence.
        #[arg(long)]
        jobs: Option<usize>,
        /// Report 0 ms for every check so output is reproducible byte for byte.
        #[arg(long)]
        no_timings: bool,
    },
    /// Print the normal form of an expression.
    Nf {
        #[arg(long)]
        algebra: String,
        expression: String,
    },
    /// Parse a presentation file and list what it defines.
    Load {
        file: PathBuf,
        /// Also check local confluence of the loaded algebras to this degree.
        #[arg(long, value_name = "DEGREE")]
        confluence: Option<usize>,
    },
    /// Print an algebra, morphism or action in the presentation language.
    Print { name: String },
    /// List the registry contents.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Symbolic,
    Numeric,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn suite_name(s: &str) -> Result<String, String> {
    if s == "all" || SUITES.contains(&s) {
        Ok(s.to_string())
    } else {
        Err(format!("expected one of {} or all", SUITES.join(", ")))
    }
}

/// Failure modes mapped to exit codes.
enum Failure {
    /// Bad input: exit 2.
    Usage(String),
    /// A check failed: exit 1.
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_file(reg: &mut Registry, path: &PathBuf) -> Result<Vec<String>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    reg.load(&text).map_err(|e| Failure::Usage(format!("{}:{e}", path.display())))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut reg = Registry::standard();
    for path in &cli.load {
        load_file(&mut reg, path)?;
    }
    match cli.command {
        Command::Check { suite, degree, seed, backend, format, jobs, no_timings } => {
            let jobs = jobs_from_env()?.or(jobs);
            let cfg = SuiteConfig {
                degree,
                seed,
                backend: match backend {
                    BackendArg::Symbolic => Backend::Symbolic,
                    BackendArg::Numeric => Backend::Numeric,
                },
                timings: !no_timings,
            };
            let reg = Arc::new(reg);
            let mut pool = rayon::ThreadPoolBuilder::new();
            if let Some(j) = jobs {
                pool = pool.num_threads(j);
            }
            let pool = pool.build().map_err(|e| Failure::Usage(e.to_string()))?;
            let report = pool.install(|| run_suite(&suite, &cfg, reg))?;
            match format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{}", report.to_json()),
            }
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
        Command::Nf { algebra, expression } => {
            let cat = Catalog::<Scalar>::new(Arc::new(reg), Arc::new(Symbolic));
            let alg = cat.algebra(&algebra)?;
            let f = alg.parse(&expression)?;
            println!("{}", alg.fmt(&f));
            Ok(())
        }
        Command::Load { file, confluence } => {
            let names = load_file(&mut reg, &file)?;
            let mut failed = false;
            for name in &names {
                if reg.lookup(name).is_none() {
                    println!("{name}");
                    continue;
                }
                match confluence {
                    None => println!("{name}"),
                    Some(d) => {
                        let sys = reg.presentation(name)?.rewrite_system::<Scalar>(&Symbolic)?;
                        let rep = sys.check_local_confluence(d);
                        let alpha = sys.alphabet().clone();
                        println!("{name}: {} ambiguities, {} unresolved", rep.checked, rep.failures.len());
                        for f in &rep.failures {
                            println!(
                                "  {}: {} != {}",
                                alpha.fmt_word(&f.ambiguity.word),
                                f.left.display(&alpha),
                                f.right.display(&alpha)
                            );
                        }
                        failed |= !rep.passed();
                    }
                }
            }
            if failed {
                Err(Failure::Check)
            } else {
                Ok(())
            }
        }
        Command::Print { name } => {
            println!("{}", reg.print(&name)?.trim_end());
            Ok(())
        }
        Command::List => {
            for (kind, names) in [
                ("algebra", reg.algebra_names().collect::<Vec<_>>()),
                ("morphism", reg.morphism_names().collect()),
                ("action", reg.action_names().collect()),
            ] {
                for n in names {
                    println!("{kind} {n}");
                }
            }
            Ok(())
        }
    }
}

fn jobs_from_env() -> Result<Option<usize>, Failure> {
    match std::env::var("NCGALOIS_JOBS") {
        Ok(v) if !v.is_empty() => v
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .map(Some)
            .ok_or_else(|| Failure::Usage(format!("NCGALOIS_JOBS must be a positive integer, got `{v}`"))),
        _ => Ok(None),
    }
}
