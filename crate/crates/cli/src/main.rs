//! `qappell`: generate q-lattice orthogonal polynomial families and verify
//! the operator identities, structure relations, difference systems, Pearson
//! equations and distributional functional equations they satisfy, all in
//! exact rational arithmetic.
//!
//! Exit codes: 0 when every residual is zero, 1 on a mathematical failure
//! (some residual nonzero or a non-regular input), 2 on a usage error.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qappell_cli::{commands, report};
use qappell_core::appell::{AppellCase, CaseKind};
use qappell_core::pearson::PearsonData;
use qappell_core::{LatticeParam, Scalar, Sign};

use commands::FamilyChoice;
use report::{Format, Reporter};

fn parse_scalar(s: &str) -> Result<Scalar, String> {
    s.parse::<Scalar>().map_err(|e| e.to_string())
}

/// The lattice parameter `v = q^(1/2)` must be a positive rational != 1.
fn parse_lattice_v(s: &str) -> Result<Scalar, String> {
    let v = parse_scalar(s)?;
    if !v.is_positive() || v.is_one() {
        return Err(format!("v must be positive and != 1, got {v}"));
    }
    Ok(v)
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    match s {
        "+1" | "1" | "+" | "plus" => Ok(Sign::Plus),
        "-1" | "-" | "minus" => Ok(Sign::Minus),
        _ => Err(format!("sign must be +1 or -1, got {s}")),
    }
}

/// Depths and trial counts must be at least 1.
fn parse_depth(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("expected an integer >= 1, got {s}")),
    }
}

fn parse_case(s: &str) -> Result<CaseKind, String> {
    match s {
        "1" => Ok(CaseKind::Case1),
        "2" => Ok(CaseKind::Case2),
        _ => Err(format!("case must be 1 or 2, got {s}")),
    }
}

#[derive(Parser)]
#[command(
    name = "qappell",
    version,
    about = "Exact verification of Appell-type orthogonal polynomial identities on the q-quadratic lattice"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct LatticeArgs {
    /// Lattice base as v = q^(1/2); a positive rational != 1, e.g. 1/2
    #[arg(long, value_parser = parse_lattice_v, allow_hyphen_values = true)]
    v: Scalar,
    /// Emit newline-delimited JSON records (the default)
    #[arg(long, conflicts_with = "table")]
    json: bool,
    /// Render human-readable tables instead of JSON records
    #[arg(long)]
    table: bool,
}

impl LatticeArgs {
    fn lattice(&self) -> LatticeParam {
        LatticeParam::new(self.v.clone()).expect("validated by the parser")
    }

    fn format(&self) -> Format {
        if self.table {
            Format::Table
        } else {
            Format::Json
        }
    }
}

#[derive(Args)]
struct CaseArgs {
    /// Appell case: 1 for Sq Dq lowering, 2 for Dq Sq lowering
    #[arg(long, value_parser = parse_case)]
    case: CaseKind,
    /// Sign s = +1 or -1 selecting the base q^s
    #[arg(long, default_value = "+1", value_parser = parse_sign, allow_hyphen_values = true)]
    sign: Sign,
}

impl CaseArgs {
    fn appell(&self) -> AppellCase {
        AppellCase::new(self.case, self.sign)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Dump a family's recurrence coefficients and polynomials
    Generate {
        #[command(subcommand)]
        family: GenerateCmd,
    },
    /// Run a verification suite; exit 0 iff every residual is zero
    Verify {
        #[command(subcommand)]
        suite: VerifyCmd,
    },
}

#[derive(Subcommand)]
enum GenerateCmd {
    /// Al-Salam-Chihara family with parameters a, b
    Asc {
        #[arg(long, value_parser = parse_scalar, allow_hyphen_values = true)]
        a: Scalar,
        #[arg(long, value_parser = parse_scalar, allow_hyphen_values = true)]
        b: Scalar,
        /// Family depth: polynomials P_0..P_n
        #[arg(long, default_value_t = 20, value_parser = parse_depth)]
        n: usize,
        #[command(flatten)]
        lattice: LatticeArgs,
    },
    /// Rogers q-Hermite family (a = b = 0)
    Rogers {
        #[arg(long, default_value_t = 20, value_parser = parse_depth)]
        n: usize,
        #[command(flatten)]
        lattice: LatticeArgs,
    },
    /// Solution family of the Sq Dq lowering equation
    Case1 {
        #[arg(long, default_value = "+1", value_parser = parse_sign, allow_hyphen_values = true)]
        sign: Sign,
        #[arg(long, default_value_t = 20, value_parser = parse_depth)]
        n: usize,
        #[command(flatten)]
        lattice: LatticeArgs,
    },
    /// Solution family of the Dq Sq lowering equation (Rogers q^2-Hermite)
    Case2 {
        #[arg(long, default_value = "+1", value_parser = parse_sign, allow_hyphen_values = true)]
        sign: Sign,
        #[arg(long, default_value_t = 20, value_parser = parse_depth)]
        n: usize,
        #[command(flatten)]
        lattice: LatticeArgs,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Product rules, Sq^2 identity and Dq^n Sq commutations on seeded
    /// random polynomials and functionals
    Identities {
        /// Maximum degree of the random polynomials
        #[arg(long, default_value_t = 10)]
        degree: usize,
        /// Number of random inputs
        #[arg(long, default_value_t = 50, value_parser = parse_depth)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[command(flatten)]
        lattice: LatticeArgs,
    },
    /// The lowering equation Sq Dq P_n = k_n P_{n-1} (or Dq Sq) on the
    /// solution family
    Appell {
        #[command(flatten)]
        case: CaseArgs,
        /// Check indices 1..=n
        #[arg(long, default_value_t = 20, value_parser = parse_depth)]
        n: usize,
        #[command(flatten)]
        lattice: LatticeArgs,
    },
    /// The three structure relations, with the third-slot cross-check
    Structure {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, default_value_t = 15, value_parser = parse_depth)]
        n: usize,
        #[command(flatten)]
        lattice: LatticeArgs,
    },
    /// The five-equation difference system for the recurrence coefficients
    System {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, default_value_t = 15, value_parser = parse_depth)]
        n: usize,
        #[command(flatten)]
        lattice: LatticeArgs,
    },
    /// The Pearson map: recurrence coefficients from (phi, psi) and the
    /// distributional residual on the induced moments
    Pearson {
        /// phi coefficients a b c (default: the Sq Dq-Appell pair)
        #[arg(long, num_args = 3, value_parser = parse_scalar, allow_hyphen_values = true)]
        phi: Option<Vec<Scalar>>,
        /// psi coefficients d e
        #[arg(long, num_args = 2, value_parser = parse_scalar, allow_hyphen_values = true)]
        psi: Option<Vec<Scalar>>,
        /// Sign of the default pair
        #[arg(long, default_value = "+1", value_parser = parse_sign, allow_hyphen_values = true)]
        sign: Sign,
        /// Compare recurrence coefficients up to n
        #[arg(long, default_value_t = 15, value_parser = parse_depth)]
        n: usize,
        /// Check residual moments up to m
        #[arg(long, default_value_t = 18)]
        m: usize,
        #[command(flatten)]
        lattice: LatticeArgs,
    },
    /// The four distributional functional equations on matching moments
    Functional {
        #[command(flatten)]
        case: CaseArgs,
        /// Check residual moments up to m
        #[arg(long, default_value_t = 18)]
        m: usize,
        #[command(flatten)]
        lattice: LatticeArgs,
    },
    /// The perturbed family C_n(r): passes exactly at r = 0
    Falsify {
        #[arg(long, value_parser = parse_scalar, allow_hyphen_values = true)]
        r: Scalar,
        #[arg(long, default_value_t = 12, value_parser = parse_depth)]
        n: usize,
        #[command(flatten)]
        lattice: LatticeArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<bool, qappell_core::Error> {
    match cli.command {
        Command::Generate { family } => {
            let (choice, n, lattice) = match family {
                GenerateCmd::Asc { a, b, n, lattice } => (FamilyChoice::Asc { a, b }, n, lattice),
                GenerateCmd::Rogers { n, lattice } => (FamilyChoice::Rogers, n, lattice),
                GenerateCmd::Case1 { sign, n, lattice } => (FamilyChoice::Case1(sign), n, lattice),
                GenerateCmd::Case2 { sign, n, lattice } => (FamilyChoice::Case2(sign), n, lattice),
            };
            commands::cmd_generate(choice, &lattice.lattice(), n, lattice.format())?;
            Ok(true)
        }
        Command::Verify { suite } => {
            let lattice_args: &LatticeArgs = match &suite {
                VerifyCmd::Identities { lattice, .. }
                | VerifyCmd::Appell { lattice, .. }
                | VerifyCmd::Structure { lattice, .. }
                | VerifyCmd::System { lattice, .. }
                | VerifyCmd::Pearson { lattice, .. }
                | VerifyCmd::Functional { lattice, .. }
                | VerifyCmd::Falsify { lattice, .. } => lattice,
            };
            let lp = lattice_args.lattice();
            let mut reporter = Reporter::new(lattice_args.format());
            match &suite {
                VerifyCmd::Identities {
                    degree,
                    trials,
                    seed,
                    ..
                } => {
                    let cfg = commands::IdentityConfig {
                        degree: *degree,
                        trials: *trials,
                        seed: *seed,
                    };
                    commands::cmd_verify_identities(&cfg, &lp, &mut reporter)?;
                }
                VerifyCmd::Appell { case, n, .. } => {
                    commands::cmd_verify_appell(case.appell(), &lp, *n, &mut reporter)?;
                }
                VerifyCmd::Structure { case, n, .. } => {
                    commands::cmd_verify_structure(case.appell(), &lp, *n, &mut reporter)?;
                }
                VerifyCmd::System { case, n, .. } => {
                    commands::cmd_verify_system(case.appell(), &lp, *n, &mut reporter)?;
                }
                VerifyCmd::Pearson {
                    phi,
                    psi,
                    sign,
                    n,
                    m,
                    ..
                } => {
                    let (pd, expected) = match (phi, psi) {
                        (None, None) => (PearsonData::appell_case1(*sign, &lp), Some(*sign)),
                        (Some(p), Some(s)) => (
                            PearsonData::new(
                                p[0].clone(),
                                p[1].clone(),
                                p[2].clone(),
                                s[0].clone(),
                                s[1].clone(),
                            )?,
                            None,
                        ),
                        _ => {
                            eprintln!("error: --phi and --psi must be given together");
                            std::process::exit(2);
                        }
                    };
                    commands::cmd_verify_pearson(&pd, expected, &lp, *n, *m, &mut reporter)?;
                }
                VerifyCmd::Functional { case, m, .. } => {
                    commands::cmd_verify_functional(case.appell(), &lp, *m, &mut reporter)?;
                }
                VerifyCmd::Falsify { r, n, .. } => {
                    commands::cmd_verify_falsify(r, &lp, *n, &mut reporter)?;
                }
            }
            Ok(reporter.all_pass)
        }
    }
}
