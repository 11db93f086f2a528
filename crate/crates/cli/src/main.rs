//! `sl4-branch`: K-type tables, restrictions, decompositions and structure
//! checks for the SL(4,ℝ) modules in `branching-core`.

mod figures;
mod render;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use branching_core::branching::{admissibility, restrict_module, Admissibility, Subgroup};
use branching_core::catalog::{h_summand_table, ktypes, ModuleDescriptor};
use branching_core::decomposer::{decompose, pseudo_dual_grid, verify_branching, Family};
use branching_core::matrix::{pseudo_dual_report, structure_report};
use branching_core::report::{first_failure, Clause};
use branching_core::weights::U2Variant;
use branching_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use render::{table_doc, Format};

#[derive(Parser)]
#[command(name = "sl4-branch", version, about = "Branching laws for SL(4,R) modules, computed exactly")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    #[value(name = "V1")]
    V1,
    #[value(name = "V2")]
    V2,
}

impl From<VariantArg> for U2Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::V1 => U2Variant::V1,
            VariantArg::V2 => U2Variant::V2,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Structure,
    Branching,
    Grid,
}

#[derive(Subcommand)]
enum Cmd {
    /// K-types of a G-module, or K∩H-types of a summand (sp:, spcone:, glray:).
    Ktypes {
        #[arg(long)]
        module: ModuleDescriptor,
        #[arg(long)]
        max: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Restriction of a G-module to one of the U(2) subgroups.
    Restrict {
        #[arg(long)]
        module: ModuleDescriptor,
        #[arg(long, conflicts_with = "variant", required_unless_present = "variant")]
        subgroup: Option<Subgroup>,
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
        #[arg(long)]
        max: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Peel the restriction into symplectic cones (sp) or GL rays (gl).
    Decompose {
        #[arg(long)]
        module: ModuleDescriptor,
        #[arg(long)]
        subgroup: Subgroup,
        #[arg(long)]
        max: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Exact admissibility verdict for the restriction.
    Admissible {
        #[arg(long)]
        module: ModuleDescriptor,
        #[arg(long, conflicts_with = "variant", required_unless_present = "variant")]
        subgroup: Option<Subgroup>,
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
        #[command(flatten)]
        output: Output,
    },
    /// Run a verification suite; exits 1 if any clause fails.
    Verify {
        #[arg(value_enum)]
        target: Target,
        #[arg(long, default_value = "aq:0")]
        module: ModuleDescriptor,
        #[arg(long, default_value = "sp")]
        subgroup: Subgroup,
        /// Region bound (default 40 for branching, 20 for grid).
        #[arg(long)]
        max: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The two K-type/summand bijections between the pseudo dual subgroups.
    Grid {
        #[arg(long, default_value_t = 20)]
        max: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Write the lattice figures as text grids and SVG files.
    Figures {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 10)]
        max: u32,
    },
}

enum Failure {
    Usage(String),
    Verification(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::ParameterOutOfRange { .. }
            | Error::NotDominant { .. }
            | Error::Unsupported { .. }
            | Error::RegionTooSmall { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Verification(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn variant_of(subgroup: Option<Subgroup>, variant: Option<VariantArg>) -> U2Variant {
    match (subgroup, variant) {
        (_, Some(v)) => v.into(),
        (Some(s), None) => s.variant(),
        // clap enforces one of the two
        (None, None) => unreachable!("--subgroup or --variant is required"),
    }
}

fn check_clauses(clauses: &[Clause]) -> Result<(), Failure> {
    match first_failure(clauses) {
        Some(c) => Err(Failure::Verification(format!(
            "clause {} failed: expected {}, observed {}",
            c.id, c.expected, c.observed
        ))),
        None => Ok(()),
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct VerifyDoc<T: Serialize> {
    target: &'static str,
    passed: bool,
    #[serde(flatten)]
    body: T,
}

fn pretty<T: Serialize>(value: &T) -> Result<String, Failure> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Ktypes { module, max, output } => {
            let doc = if module.is_g_module() {
                table_doc(&module, None, None, &ktypes(&module, max)?, None)
            } else {
                let t = h_summand_table(&module, max)?;
                table_doc(&module, None, Some(U2Variant::V1), &t, None)
            };
            emit(&output.out, &doc.render(output.format)?)
        }
        Cmd::Restrict {
            module,
            subgroup,
            variant,
            max,
            output,
        } => {
            let v = variant_of(subgroup, variant);
            let res = restrict_module(&module, v, max)?;
            let finiteness = serde_json::json!({
                "finite": res.is_finite(),
                "infiniteKeys": res.infinite,
            });
            let doc = table_doc(&module, subgroup, Some(v), &res.table, Some(finiteness));
            emit(&output.out, &doc.render(output.format)?)
        }
        Cmd::Decompose {
            module,
            subgroup,
            max,
            output,
        } => {
            let family = Family::for_subgroup(subgroup)?;
            let res = restrict_module(&module, subgroup.variant(), max)?;
            if let Some(inf) = res.infinite.first() {
                return Err(Error::NotAdmissible {
                    descriptor: module.to_string(),
                    key: inf.key.to_string(),
                }
                .into());
            }
            let cert = decompose(&res.table, family)?;
            let text = match output.format {
                Format::Json => {
                    let doc = table_doc(
                        &module,
                        Some(subgroup),
                        Some(subgroup.variant()),
                        &res.table,
                        Some(serde_json::to_value(&cert)?),
                    );
                    doc.render(Format::Json)?
                }
                Format::Tsv => render::summands_tsv(&cert),
            };
            emit(&output.out, &text)
        }
        Cmd::Admissible {
            module,
            subgroup,
            variant,
            output,
        } => {
            let v = variant_of(subgroup, variant);
            let verdict = admissibility(&module, v)?;
            let text = match output.format {
                Format::Json => pretty(&serde_json::json!({
                    "module": module,
                    "subgroup": subgroup,
                    "variant": v,
                    "admissible": verdict.is_admissible(),
                    "certificate": verdict,
                }))?,
                Format::Tsv => {
                    let (word, witness) = match &verdict {
                        Admissibility::Admissible => ("admissible", "-".to_owned()),
                        Admissibility::NotAdmissible { witness, contributors } => (
                            "not-admissible",
                            format!(
                                "{} base={:?} direction={:?}",
                                witness.hw(),
                                contributors.base.clone().unwrap_or_default(),
                                contributors.direction
                            ),
                        ),
                    };
                    format!("module\tvariant\tverdict\twitness\n{module}\t{v}\t{word}\t{witness}\n")
                }
            };
            emit(&output.out, &text)
        }
        Cmd::Verify {
            target,
            module,
            subgroup,
            max,
            out,
        } => match target {
            Target::Structure => {
                let structure = structure_report()?;
                let pseudo = pseudo_dual_report()?;
                let doc = VerifyDoc {
                    target: "structure",
                    passed: true,
                    body: serde_json::json!({ "structure": structure, "pseudoDual": pseudo }),
                };
                emit(&out, &pretty(&doc)?)
            }
            Target::Branching => {
                let report = verify_branching(&module, subgroup, max.unwrap_or(40))?;
                let passed = first_failure(&report.clauses).is_none();
                emit(
                    &out,
                    &pretty(&VerifyDoc {
                        target: "branching",
                        passed,
                        body: &report,
                    })?,
                )?;
                check_clauses(&report.clauses)
            }
            Target::Grid => {
                let report = pseudo_dual_grid(max.unwrap_or(20))?;
                let passed = first_failure(&report.clauses).is_none();
                emit(
                    &out,
                    &pretty(&VerifyDoc {
                        target: "grid",
                        passed,
                        body: &report,
                    })?,
                )?;
                check_clauses(&report.clauses)
            }
        },
        Cmd::Grid { max, output } => {
            let report = pseudo_dual_grid(max)?;
            let text = match output.format {
                Format::Json => pretty(&report)?,
                Format::Tsv => render::grid_tsv(&report),
            };
            emit(&output.out, &text)?;
            check_clauses(&report.clauses)
        }
        Cmd::Figures { out, max } => {
            fs::create_dir_all(&out)?;
            for fig in figures::build(max)? {
                fs::write(out.join(format!("{}.txt", fig.name)), fig.ascii())?;
                fs::write(out.join(format!("{}.svg", fig.name)), fig.svg())?;
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
