use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use triloc::family::Rules;
use triloc::fraction::{phi_factorization, rational_factorization};
use triloc::suite::{paper_suite, random_suite, RandomSize};
use triloc::tring::DEFAULT_BUDGET;
use triloc::{
    localize_module, parse_expr, verify_sigma_inverting, CentralPair, Error, Family, FamilyDescriptor, MatrixRing,
    Report, TRing, TriangularRing, TripleModule, DEFAULT_SEED,
};

#[derive(Parser)]
#[command(name = "triloc", version, about = "Normal forms and localizations for triangular matrix rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Reduction step budget for normalization.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Paper,
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of an element of T(M,p) and its oracle value.
    Normalize {
        /// Family descriptor JSON, or @path to a file holding it.
        #[arg(long)]
        family: String,
        #[arg(long)]
        expr: String,
    },
    /// The matrix rho(r) in M2(T) for r = (a; m; b).
    Rho {
        #[arg(long)]
        family: String,
        /// The element as `a; m; b`.
        #[arg(long)]
        expr: String,
    },
    /// Runs the fixture suite or the seeded property suites.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Samples per property in the random suite.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Random triple modules per family in the random suite.
        #[arg(long, default_value_t = 5)]
        modules: usize,
        /// Runs with the relation x_p = 1 removed; every suite must fail.
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// Writes an element of T(M, a0 p) as phi(alpha) / x_(a0 p)^r.
    Fraction {
        #[arg(long)]
        family: String,
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = 2)]
        a0: i64,
    },
    /// Evaluates the factorization of the oracle map through phi.
    Factor {
        #[arg(long)]
        family: String,
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = 2)]
        a0: i64,
    },
    /// Checks that rho: R -> M2(T) inverts sigma.
    LocalizeRing {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Localizes a triple module given as JSON.
    LocalizeModule {
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

/// Input the command could not use, with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExhausted { .. } => 3,
            Error::NotInverse(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn input_error(message: String) -> Failure {
    Failure { code: 2, message }
}

/// Inline text, or the contents of the file after `@`.
fn read_arg(arg: &str) -> Result<String, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| input_error(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn load_family(arg: &str) -> Result<Family, Failure> {
    Ok(FamilyDescriptor::parse(&read_arg(arg)?)?.build()?)
}

fn ring(cli: &Cli, family: &str) -> Result<TRing, Failure> {
    Ok(TRing::new(load_family(family)?).with_budget(cli.budget))
}

fn shift_pair(t: &TRing, a0: i64) -> Result<CentralPair, Failure> {
    let f = t.family();
    let a = f.parse_a(&a0.to_string())?;
    let b = f.parse_b(&a0.to_string())?;
    Ok(CentralPair::new(t, a, b)?)
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let seed = Some(cli.seed);
    Ok(match &cli.command {
        Command::Normalize { family, expr } => {
            let t = ring(cli, family)?;
            let e = t.parse(expr)?;
            let mut r = Report::new("normalize", seed);
            r.fact("family", t.family().label());
            r.fact("input", expr.clone());
            r.fact("normal form", t.render(&e));
            r.fact("T", t.oracle_ring().name());
            r.fact("oracle", t.family_iso(&e).to_string());
            r
        }
        Command::Rho { family, expr } => {
            let t = ring(cli, family)?;
            let x = TriangularRing::new(t.family().clone()).parse(expr)?;
            let mat = MatrixRing::new(t.clone());
            let image = mat.rho_matrix(&x)?;
            let oracle: Vec<String> = [&image.t11, &image.t12, &image.t21, &image.t22]
                .iter()
                .map(|e| t.family_iso(e).to_string())
                .collect();
            let mut r = Report::new("rho", seed);
            r.fact("family", t.family().label());
            r.fact("element", TriangularRing::new(t.family().clone()).render(&x));
            r.fact("rho", mat.render(&image));
            r.fact("oracle", format!("[[{}, {}], [{}, {}]]", oracle[0], oracle[1], oracle[2], oracle[3]));
            r
        }
        Command::Verify { suite, samples, modules, corrupt } => {
            let rules = Rules { identity: !corrupt };
            match suite {
                Suite::Paper => paper_suite(cli.seed, cli.budget, rules)?,
                Suite::Random if *corrupt => {
                    return Err(input_error("--corrupt applies to the paper suite".into()));
                }
                Suite::Random => {
                    random_suite(cli.seed, cli.budget, RandomSize { samples: *samples, modules: *modules })?
                }
            }
        }
        Command::Fraction { family, expr, a0 } => {
            let pair = shift_pair(&ring(cli, family)?, *a0)?;
            let target = pair.target()?;
            let e = target.parse(expr)?;
            let fr = pair.fraction_form(&e)?;
            let mut r = Report::new("fraction", seed);
            r.fact("source", pair.source().family().label());
            r.fact("target", target.family().label());
            r.fact("element", target.render(&e));
            r.fact("numerator", pair.source().render(&fr.numerator));
            r.fact("exponent", fr.exponent.to_string());
            r.fact("fraction", pair.render_fraction(&fr)?);
            let back = pair.reassemble(&fr)?;
            r.check("phi(alpha) x_p^r reassembles the element", 1, (back != e).then(|| target.render(&back)));
            r
        }
        Command::Factor { family, expr, a0 } => {
            let pair = shift_pair(&ring(cli, family)?, *a0)?;
            let target = pair.target()?;
            let tree = parse_expr(expr, target.family())?;
            let e = target.normalize(&tree)?;
            let q = rational_factorization(&pair)?;
            let (on_form, on_tree, on_fraction) = (q.eval(&e), q.eval_expr(&tree), q.eval_fraction(&e)?);
            let mut r = Report::new("factor", seed);
            r.fact("element", target.render(&e));
            r.fact("f~ on the normal form", on_form.to_string());
            r.fact("f~ on the expression", on_tree.to_string());
            r.fact("f(alpha) / a0^r", on_fraction.to_string());
            let disagree = (on_form != on_tree || on_form != on_fraction)
                .then(|| format!("{on_form}, {on_tree}, {on_fraction}"));
            r.check("evaluation orders agree", 1, disagree);
            let phi = phi_factorization(&pair)?;
            let image = phi.eval(&e);
            r.check("f = phi factors through the identity", 1, (image != e).then(|| target.render(&image)));
            r
        }
        Command::LocalizeRing { family, samples } => {
            let t = ring(cli, family)?;
            verify_sigma_inverting(&t, cli.seed, *samples)?
        }
        Command::LocalizeModule { spec, samples } => {
            let text = fs::read_to_string(spec).map_err(|e| input_error(format!("cannot read {spec}: {e}")))?;
            let n = TripleModule::from_json(&text)?;
            localize_module(&n, cli.seed, *samples)?.report
        }
    })
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: &'a str,
    exit: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.render_text()),
                Format::Json => println!("{}", report.render_json()),
            }
            ExitCode::from(if report.passed { 0 } else { 1 })
        }
        Err(f) => {
            match cli.format {
                Format::Text => eprintln!("error: {}", f.message),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&ErrorReport { error: &f.message, exit: f.code })
                        .expect("error reports serialize")
                ),
            }
            ExitCode::from(f.code)
        }
    }
}
