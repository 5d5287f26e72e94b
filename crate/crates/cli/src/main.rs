use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bqg_core::duality::build_dual;
use bqg_core::integrals::QuantumGroup;
use bqg_core::io;
use bqg_core::models::builders::{drinfeld_double, function_algebra, group_algebra, taft};
use bqg_core::models::group::GroupTable;
use bqg_core::report::Report;
use bqg_core::subgroups::{subgroup_suite, Side};
use bqg_core::suite::{run_suite, SuiteKind, SuiteOptions};
use bqg_core::Error;

#[derive(Parser)]
#[command(name = "bqg", version, about = "Verify finite-dimensional quantum groups")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Algebraic,
    Analytic,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Function,
    Group,
    Double,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the verification suites on a model file.
    Verify {
        model: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Tolerance for float checks (exact checks always use 0).
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = SuiteOptions::default().seed)]
        seed: u64,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Write the dual quantum group of a model.
    Dual {
        model: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Build C(G), C[G] or D(G) from a group table.
    BuildGroup {
        #[arg(long)]
        table: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Build the Taft algebra of order n (n = 2 is Sweedler's algebra).
    BuildTaft {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check that a morphism G -> H makes H a closed quantum subgroup of G.
    Subgroup {
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn is_input_error(e: &Error) -> bool {
    matches!(e, Error::Format(_) | Error::Json(_) | Error::Io(_) | Error::Argument(_) | Error::GroupTable(_))
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Argument(format!("{}: {e}", path.display())))
}

fn load_model(path: &Path) -> Result<bqg_core::hopf::QGModel, Error> {
    io::parse_model(&read(path)?).map_err(|e| match e {
        Error::Format(msg) => Error::Format(format!("{}: {msg}", path.display())),
        e => e,
    })
}

fn finish(report: &Report, out: Option<&Path>) -> Result<ExitCode, Error> {
    print!("{}", report.render_text());
    if let Some(p) = out {
        fs::write(p, report.to_json() + "\n")?;
    }
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.cmd {
        Cmd::Verify { model, suite, tol, seed, report } => {
            let m = load_model(&model)?;
            let kind = match suite {
                Suite::Algebraic => SuiteKind::Algebraic,
                Suite::Analytic => SuiteKind::Analytic,
                Suite::All => SuiteKind::All,
            };
            let out = run_suite(&m, &SuiteOptions { kind, tol, seed });
            if let (SuiteKind::Analytic, Some(reason)) = (kind, &out.refused) {
                eprintln!("analytic suite refused for {}: {reason}", m.name());
                if let Some(p) = &report {
                    fs::write(p, out.report.to_json() + "\n")?;
                }
                return Ok(ExitCode::from(2));
            }
            finish(&out.report, report.as_deref())
        }
        Cmd::Dual { model, output } => {
            let m = load_model(&model)?;
            let name = format!("dual_{}", m.name());
            let qg = QuantumGroup::build(m)?;
            let dual = build_dual(&qg)?;
            io::write_model(&dual.model.renamed(&name), &output)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::BuildGroup { table, kind, output } => {
            let g = GroupTable::from_json(&read(&table)?)?;
            let stem = table.file_stem().and_then(|s| s.to_str()).unwrap_or("g");
            let m = match kind {
                Kind::Function => function_algebra(&g, &format!("c_{stem}")),
                Kind::Group => group_algebra(&g, &format!("cg_{stem}")),
                Kind::Double => drinfeld_double(&g, &format!("d_{stem}")),
            };
            io::write_model(&m, &output)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::BuildTaft { n, output } => {
            let m = taft(n)?;
            io::write_model(&m, &output)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Subgroup { g, h, map, report } => {
            let (gm, hm) = (load_model(&g)?, load_model(&h)?);
            let mor = io::parse_morphism(&read(&map)?, &gm, &hm)?;
            let (gs, hs) = (Side::build(gm)?, Side::build(hm)?);
            finish(&subgroup_suite(&gs, &hs, &mor), report.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if is_input_error(&e) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
