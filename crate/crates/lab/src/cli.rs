use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cslab_core::{aluthge_t, certify_cs, duggal, mean_t, CertifyConfig, ComplexMatrix};

use crate::analyze::{analyze, Operator};
use crate::error::{CliError, CliResult};
use crate::format::{
    parse_shift, read_matrix, read_shift, write_matrix, MatrixFile, VerdictReport,
};
use crate::repro::{case_ids, run_all, run_case};
use crate::suite::{run_suite, Criteria};
use crate::text::{fmt_matrix, fmt_real};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "cslab",
    version,
    about = "Complex symmetry of weighted shifts and their transforms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Polar parts, transforms, criteria, certifier verdicts and structure of one operator.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        /// Transform parameter; repeat for several values.
        #[arg(long = "t", default_values_t = [0.5])]
        ts: Vec<f64>,
        #[command(flatten)]
        certifier: CertifierArgs,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Apply one transform and print or save the result.
    Transform {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum)]
        kind: TransformKind,
        /// Parameter for `aluthge` (in [0, 1]) and `mean` (in [0, 1/2]).
        #[arg(long = "t", default_value_t = 0.5)]
        t: f64,
        /// Write the transformed matrix to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Run the numerical complex-symmetry certifier.
    Certify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        certifier: CertifierArgs,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Reproduce a worked example from the catalog.
    Repro {
        /// Case id; see `--list`.
        #[arg(required_unless_present_any = ["all", "list"])]
        id: Option<String>,
        #[arg(long, conflicts_with = "id")]
        all: bool,
        /// Print the case ids and exit.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        certifier: CertifierArgs,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Randomized property suite over the weighted-shift family.
    Suite {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Random instances per property.
        #[arg(long = "cases", default_value_t = 100)]
        n_cases: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct InputArgs {
    /// Weights of a weighted shift, comma separated: `1,2,1` or `1+1i,-2,0.5i`.
    #[arg(long, allow_hyphen_values = true)]
    pub shift: Option<String>,
    /// Weighted shift stored as `{"n": .., "weights": [[re, im], ..]}`.
    #[arg(long)]
    pub shift_file: Option<PathBuf>,
    /// Matrix stored as `{"rows": .., "cols": .., "data": [[re, im], ..]}`.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
}

impl InputArgs {
    pub fn operator(&self) -> CliResult<Operator> {
        match (&self.shift, &self.shift_file, &self.matrix) {
            (Some(spec), _, _) => Ok(Operator::Shift(parse_shift(spec)?)),
            (_, Some(path), _) => Ok(Operator::Shift(read_shift(path)?)),
            (_, _, Some(path)) => Ok(Operator::Matrix(read_matrix(path)?)),
            _ => Err(CliError::Usage(
                "one of --shift, --shift-file, --matrix is required".into(),
            )),
        }
    }
}

#[derive(Args, Debug)]
pub struct CertifierArgs {
    #[arg(long, default_value_t = CertifyConfig::default().seed)]
    pub seed: u64,
    #[arg(long, default_value_t = CertifyConfig::default().restarts)]
    pub restarts: usize,
}

impl CertifierArgs {
    pub fn config(&self) -> CertifyConfig {
        CertifyConfig {
            seed: self.seed,
            restarts: self.restarts,
            ..CertifyConfig::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Report,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TransformKind {
    Duggal,
    Aluthge,
    Mean,
}

fn json<T: serde::Serialize>(value: &T) -> CliResult<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// Executes a parsed command, writing to `out`; returns the exit code.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> CliResult<i32> {
    match &cli.command {
        Command::Analyze {
            input,
            ts,
            certifier,
            format,
        } => {
            let report = analyze(&input.operator()?, ts, &certifier.config())?;
            let text = match format {
                Format::Table => report.render_table()?,
                Format::Report => json(&report)?,
            };
            out.write_all(text.as_bytes())?;
            Ok(EXIT_PASS)
        }
        Command::Transform {
            input,
            kind,
            t,
            out: path,
            format,
        } => {
            let m = input.operator()?.matrix();
            let result: ComplexMatrix = match kind {
                TransformKind::Duggal => duggal(&m)?,
                TransformKind::Aluthge => aluthge_t(&m, *t)?,
                TransformKind::Mean => mean_t(&m, *t)?,
            };
            if let Some(path) = path {
                write_matrix(path, &result)?;
            }
            let text = match format {
                Format::Table => fmt_matrix(&result),
                Format::Report => json(&MatrixFile::from_matrix(&result))?,
            };
            out.write_all(text.as_bytes())?;
            Ok(EXIT_PASS)
        }
        Command::Certify {
            input,
            certifier,
            format,
        } => {
            let cfg = certifier.config();
            let v = certify_cs(&input.operator()?.matrix(), &cfg)?;
            let report = VerdictReport::new(&v, cfg.tau_yes, cfg.tau_no);
            let text = match format {
                Format::Table => {
                    let mut s = format!(
                        "status    {}\nresidual  {}\nrestarts  {}\nseed      {}\n",
                        report.status,
                        fmt_real(report.residual),
                        report.restarts_used,
                        report.seed
                    );
                    if let Some(j) = &v.certificate {
                        s.push_str("certificate J =\n");
                        s.push_str(&fmt_matrix(j));
                    }
                    s
                }
                Format::Report => json(&report)?,
            };
            out.write_all(text.as_bytes())?;
            Ok(EXIT_PASS)
        }
        Command::Repro {
            id,
            all,
            list,
            certifier,
            format,
        } => {
            if *list {
                for id in case_ids() {
                    writeln!(out, "{id}")?;
                }
                return Ok(EXIT_PASS);
            }
            let cfg = certifier.config();
            let reports = if *all {
                run_all(&cfg)?
            } else {
                let id = id
                    .as_deref()
                    .ok_or_else(|| CliError::Usage("missing case id".into()))?;
                vec![run_case(id, &cfg)?]
            };
            let passed = reports.iter().all(|r| r.passed());
            let text = match format {
                Format::Table => {
                    let mut s: String = reports.iter().map(|r| r.render_table() + "\n").collect();
                    let n_pass = reports.iter().filter(|r| r.passed()).count();
                    s.push_str(&format!("{n_pass}/{} cases passed\n", reports.len()));
                    s
                }
                Format::Report => json(&reports)?,
            };
            out.write_all(text.as_bytes())?;
            Ok(if passed { EXIT_PASS } else { EXIT_MISMATCH })
        }
        Command::Suite {
            seed,
            n_cases,
            format,
        } => {
            let report = run_suite(&Criteria::reference(), *seed, *n_cases);
            let text = match format {
                Format::Table => report.render_table(),
                Format::Report => json(&report)?,
            };
            out.write_all(text.as_bytes())?;
            Ok(if report.passed {
                EXIT_PASS
            } else {
                EXIT_MISMATCH
            })
        }
    }
}
