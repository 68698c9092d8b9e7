use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use shrinker_spectra::chengyang::{bound_sweep, table1, table1_csv, table1_markdown, BoundSource};
use shrinker_spectra::dirichlet::{convergence_orders, solve, DirichletProblem};
use shrinker_spectra::inequalities::{lower_order_check, yang_sweep};
use shrinker_spectra::model::{cylinder_spectrum, ou_spectrum, sphere_spectrum};
use shrinker_spectra::verify::verify_all;
use shrinker_spectra::{EigenvalueSequence, Error, ProblemKind};

const EXIT_ASSERTION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_INSUFFICIENT: u8 = 4;

#[derive(Parser)]
#[command(name = "shrinker-spectra", version, about = "Drift-Laplacian spectra and universal eigenvalue inequalities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Sphere,
    EuclideanOu,
    Cylinder,
    #[value(name = "dirichlet-1d")]
    Dirichlet1d,
    DirichletRect,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpectrumFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Md,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Closed,
    Dirichlet,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    #[value(name = "1.2")]
    Closed,
    #[value(name = "5.2")]
    Dirichlet,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a model spectrum or solve a Dirichlet problem.
    Spectrum {
        #[arg(value_enum)]
        model: Model,
        /// Dimension (total dimension for the cylinder).
        #[arg(long)]
        n: Option<usize>,
        /// Sphere factor dimension of the cylinder.
        #[arg(long)]
        k: Option<usize>,
        /// Distinct levels (eigenvalues for dirichlet-1d).
        #[arg(long)]
        count: usize,
        /// Interval endpoints; four values for a rectangle.
        #[arg(long, num_args = 2..=4, allow_negative_numbers = true)]
        bounds: Vec<f64>,
        #[arg(long, default_value_t = 2000)]
        grid: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: SpectrumFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the quadratic inequality for k = 0..=k_max (1..=k_max for Dirichlet spectra).
    Yang {
        spectrum: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        min_x2: f64,
        #[arg(long)]
        k_max: usize,
        /// Problem kind of a CSV spectrum file.
        #[arg(long, value_enum, default_value = "closed")]
        kind: Kind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the lower-order inequality on a Dirichlet spectrum.
    LowerOrder {
        spectrum: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        inf_x2: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Upper bounds on eigenvalue growth for k = 1..=k_max.
    Bound {
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "inf_x2")]
        min_x2: Option<f64>,
        #[arg(long)]
        inf_x2: Option<f64>,
        #[arg(long)]
        lambda1: Option<f64>,
        #[arg(long)]
        k_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Coefficient table for k = 1..=41.
    Table1 {
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve a Dirichlet problem given as JSON, with a convergence annex.
    Dirichlet {
        problem: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every verification group and print the report.
    VerifyAll {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => EXIT_PARSE,
            Error::InsufficientSpectrum { .. } | Error::InsufficientInputLevels(_) => EXIT_INSUFFICIENT,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// JSON spectra carry their own kind and dimension; CSV ones take them from flags.
fn load_spectrum(path: &Path, kind: ProblemKind, n: usize) -> Result<EigenvalueSequence, Failure> {
    let text = read(path)?;
    let seq = if text.trim_start().starts_with('{') {
        EigenvalueSequence::from_json(&text)?
    } else {
        EigenvalueSequence::from_csv(&text, kind, n)?
    };
    Ok(seq)
}

fn pretty(value: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn need(value: Option<usize>, flag: &str) -> Result<usize, Failure> {
    value.ok_or_else(|| usage(format!("--{flag} is required for this model")))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Spectrum {
            model,
            n,
            k,
            count,
            bounds,
            grid,
            format,
            out,
        } => {
            let seq = match model {
                Model::Sphere => sphere_spectrum(need(n, "n")?, count)?,
                Model::EuclideanOu => ou_spectrum(need(n, "n")?, count)?,
                Model::Cylinder => cylinder_spectrum(need(k, "k")?, need(n, "n")?, count)?,
                Model::Dirichlet1d => {
                    if bounds.len() != 2 {
                        return Err(usage("dirichlet-1d needs --bounds A B"));
                    }
                    solve(&DirichletProblem::interval(bounds[0], bounds[1], grid, count)?)?
                }
                Model::DirichletRect => {
                    if bounds.len() != 4 {
                        return Err(usage("dirichlet-rect needs --bounds A B C D"));
                    }
                    let p = DirichletProblem::rectangle((bounds[0], bounds[1]), (bounds[2], bounds[3]), grid, count)?;
                    solve(&p)?
                }
            };
            let text = match format {
                SpectrumFormat::Json => seq.to_json(),
                SpectrumFormat::Csv => seq.to_csv(),
            };
            emit(out.as_deref(), &text)
        }
        Command::Yang {
            spectrum,
            n,
            min_x2,
            k_max,
            kind,
            out,
        } => {
            let kind = match kind {
                Kind::Closed => ProblemKind::Closed,
                Kind::Dirichlet => ProblemKind::Dirichlet,
            };
            let seq = load_spectrum(&spectrum, kind, n)?;
            let first = match seq.kind() {
                ProblemKind::Closed => 0,
                ProblemKind::Dirichlet => 1,
            };
            if k_max < first {
                return Err(usage(format!("--k-max must be at least {first} for a {} spectrum", seq.kind().as_str())));
            }
            let reports = yang_sweep(&seq, n, min_x2, first..=k_max)?;
            emit(out.as_deref(), &pretty(&reports))?;
            match reports.iter().find(|r| !r.satisfied) {
                Some(r) => Err(Failure {
                    code: EXIT_ASSERTION,
                    message: format!("inequality fails at k = {} (gap {})", r.k, r.gap),
                }),
                None => Ok(()),
            }
        }
        Command::LowerOrder { spectrum, n, inf_x2, out } => {
            let seq = load_spectrum(&spectrum, ProblemKind::Dirichlet, n)?;
            let report = lower_order_check(&seq, n, inf_x2)?;
            emit(out.as_deref(), &pretty(&report))?;
            if report.satisfied {
                Ok(())
            } else {
                Err(Failure {
                    code: EXIT_ASSERTION,
                    message: format!("lower-order inequality fails: {} > {}", report.lhs, report.rhs),
                })
            }
        }
        Command::Bound {
            theorem,
            n,
            min_x2,
            inf_x2,
            lambda1,
            k_max,
            out,
        } => {
            let bounds = match theorem {
                Theorem::Closed => {
                    let x2 = min_x2.ok_or_else(|| usage("--theorem 1.2 needs --min-x2"))?;
                    bound_sweep(BoundSource::Thm12, n, x2, None, k_max)?
                }
                Theorem::Dirichlet => {
                    let x2 = inf_x2.ok_or_else(|| usage("--theorem 5.2 needs --inf-x2"))?;
                    let l = lambda1.ok_or_else(|| usage("--theorem 5.2 needs --lambda1"))?;
                    bound_sweep(BoundSource::Thm52, n, x2, Some(l), k_max)?
                }
            };
            emit(out.as_deref(), &pretty(&bounds))
        }
        Command::Table1 { format, out } => {
            let rows = table1();
            let text = match format {
                TableFormat::Csv => table1_csv(&rows),
                TableFormat::Md => table1_markdown(&rows),
            };
            emit(out.as_deref(), &text)
        }
        Command::Dirichlet { problem, out } => {
            let text = read(&problem)?;
            let problem: DirichletProblem =
                serde_json::from_str(&text).map_err(|e| Failure::from(Error::Parse(e.to_string())))?;
            let seq = solve(&problem)?;
            let annex = convergence_orders(&problem)?;
            let mut value = serde_json::to_value(&seq).expect("serializable");
            value["convergence"] = json!({ "grids": annex.grids, "order_estimates": annex.order_estimates });
            emit(out.as_deref(), &pretty(&value))
        }
        Command::VerifyAll { out } => {
            let report = verify_all();
            emit(out.as_deref(), &report.to_json())?;
            for s in &report.sections {
                let tag = if s.exploratory { " (exploratory)" } else { "" };
                let verdict = if s.ok() { "ok" } else { "FAIL" };
                eprintln!("{:<32} {verdict:<4} {}/{}{tag}", s.name, s.passed, s.checks);
                for f in &s.failures {
                    eprintln!("    {f}");
                }
            }
            if report.overall_pass {
                Ok(())
            } else {
                Err(Failure {
                    code: EXIT_ASSERTION,
                    message: "verification failed".into(),
                })
            }
        }
    }
}

fn configure_threads() {
    if let Ok(v) = std::env::var("SHRINKER_SPECTRA_THREADS") {
        match v.parse::<usize>() {
            Ok(t) if t > 0 => {
                // fails only if the pool already exists
                let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
            }
            _ => eprintln!("warning: ignoring SHRINKER_SPECTRA_THREADS={v}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    configure_threads();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
