use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fiblucas::dixmier::{cayley_closed, cayley_constructive};
use fiblucas::exactnum::format_rational;
use fiblucas::identity::{conjecture_scan, discriminant_demo, emit, verify_identity, Format};
use fiblucas::intertwine::{check_intertwining, cross_check_routes, psi};
use fiblucas::{Builtin, Derivation, Error, FamilyKind, MapKind, Poly, Route};

#[derive(Parser)]
#[command(
    name = "fiblucas",
    version,
    about = "Exact Fibonacci/Lucas/Appell derivation toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Fib,
    Lucas,
    Appell,
}

impl From<Family> for FamilyKind {
    fn from(f: Family) -> Self {
        match f {
            Family::Fib => FamilyKind::Fibonacci,
            Family::Lucas => FamilyKind::Lucas,
            Family::Appell => FamilyKind::AppellMonomial,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PairFamily {
    Fib,
    Lucas,
}

impl From<PairFamily> for FamilyKind {
    fn from(f: PairFamily) -> Self {
        match f {
            PairFamily::Fib => FamilyKind::Fibonacci,
            PairFamily::Lucas => FamilyKind::Lucas,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CayleyRoute {
    Closed,
    Constructive,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Latex,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    #[value(name = "AL")]
    Al,
    #[value(name = "AF")]
    Af,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Recurrence,
    Beta,
    Series,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a derivation (optionally k times) to a polynomial.
    Derive {
        #[arg(long, value_enum)]
        family: Family,
        /// Poly JSON file, or `-` for stdin.
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 1)]
        power: usize,
    },
    /// Cayley kernel element C_n.
    Cayley {
        #[arg(long, value_enum)]
        family: PairFamily,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "closed")]
        route: CayleyRoute,
    },
    /// Is the polynomial annihilated by the derivation?
    KernelCheck {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        input: String,
    },
    /// Substitute the family polynomials and report whether the result is constant.
    Identity {
        #[arg(long, value_enum)]
        family: PairFamily,
        #[arg(long)]
        input: String,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// Evaluate C_n under the family substitution and compare with the conjectured pattern.
    Scan {
        #[arg(long, value_enum)]
        family: PairFamily,
        #[arg(long)]
        max: u32,
    },
    /// Build psi_AL or psi_AF and check the intertwining property.
    Intertwine {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        max: u32,
        #[arg(long, value_enum, default_value = "series")]
        route: RouteArg,
    },
    /// Worked examples.
    Demo {
        #[command(subcommand)]
        which: Demo,
    },
}

#[derive(Subcommand)]
enum Demo {
    /// The 5x5 determinant invariant and its Lucas identity.
    Discriminant,
}

enum Outcome {
    Ok,
    Failed,
}

fn read_poly(input: &str) -> Result<Poly, Error> {
    let text = if input == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::InvalidArgument(format!("reading stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(input)
            .map_err(|e| Error::InvalidArgument(format!("reading {input}: {e}")))?
    };
    Poly::from_json(&text)
}

fn builtin(family: impl Into<FamilyKind>) -> Derivation {
    Derivation::Builtin(Builtin::from(family.into()))
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    match cli.command {
        Command::Derive {
            family,
            input,
            power,
        } => {
            let p = read_poly(&input)?;
            println!("{}", builtin(family).derive_power(&p, power)?.to_json());
            Ok(Outcome::Ok)
        }
        Command::Cayley { family, n, route } => {
            let kind = Builtin::from(FamilyKind::from(family));
            match route {
                CayleyRoute::Closed => println!("{}", cayley_closed(kind, n)?.to_json()),
                CayleyRoute::Constructive => {
                    println!("{}", cayley_constructive(kind, n)?.to_json())
                }
                CayleyRoute::Both => {
                    let closed = cayley_closed(kind, n)?;
                    let constructive = cayley_constructive(kind, n)?;
                    println!("{}", closed.to_json());
                    if closed != constructive {
                        eprintln!("routes disagree; constructive: {}", constructive.to_json());
                        return Ok(Outcome::Failed);
                    }
                }
            }
            Ok(Outcome::Ok)
        }
        Command::KernelCheck { family, input } => {
            let p = read_poly(&input)?;
            let in_kernel = builtin(family).kernel_member(&p)?;
            println!("{}", serde_json::json!({ "in_kernel": in_kernel }));
            Ok(if in_kernel {
                Outcome::Ok
            } else {
                Outcome::Failed
            })
        }
        Command::Identity {
            family,
            input,
            format,
        } => {
            let p = read_poly(&input)?;
            let report = verify_identity(&p, family.into())?;
            let format = match format {
                OutputFormat::Json => Format::Json,
                OutputFormat::Latex => Format::Latex,
            };
            println!("{}", emit(&report, format));
            Ok(if report.is_constant {
                Outcome::Ok
            } else {
                Outcome::Failed
            })
        }
        Command::Scan { family, max } => {
            let report = conjecture_scan(family.into(), max)?;
            let show = |v: &Option<fiblucas::Rational>| {
                v.as_ref().map_or("-".to_string(), format_rational)
            };
            println!("n\tvalue\texpected\tstatus");
            for row in &report.rows {
                let status = if row.boundary {
                    "boundary"
                } else if row.ok {
                    "ok"
                } else {
                    "VIOLATION"
                };
                println!(
                    "{}\t{}\t{}\t{status}",
                    row.n,
                    show(&row.value),
                    show(&row.expected)
                );
            }
            if report.ok {
                println!("conjecture: PASS");
                Ok(Outcome::Ok)
            } else {
                let list: Vec<String> = report.violations.iter().map(u32::to_string).collect();
                println!("conjecture: FAIL at n = {}", list.join(", "));
                Ok(Outcome::Failed)
            }
        }
        Command::Intertwine { kind, max, route } => {
            let kind = match kind {
                Kind::Al => MapKind::AL,
                Kind::Af => MapKind::AF,
            };
            let mut outcome = Outcome::Ok;
            let route = match route {
                RouteArg::Recurrence => Route::RecurrenceDirect,
                RouteArg::Beta => Route::BetaDecomposition,
                RouteArg::Series => Route::SeriesReciprocal,
                RouteArg::All => {
                    let s_max = max.saturating_sub(1) / 2;
                    if let Some((n, s)) = cross_check_routes(kind, s_max, max)? {
                        eprintln!("routes disagree at n = {n}, s = {s}");
                        outcome = Outcome::Failed;
                    }
                    Route::RecurrenceDirect
                }
            };
            let m = psi(kind, max, route)?;
            let report = check_intertwining(&m, &Derivation::appell(), &kind.target(), max)?;
            println!("{}", report.to_json());
            if !report.ok {
                outcome = Outcome::Failed;
            }
            Ok(outcome)
        }
        Command::Demo {
            which: Demo::Discriminant,
        } => {
            let report = discriminant_demo()?;
            print!("{}", report.to_text());
            Ok(if report.ok {
                Outcome::Ok
            } else {
                Outcome::Failed
            })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
