//! Command line for the exact Pascal-kernel library.
//!
//! Exit codes: 0 success or all checks verified, 1 verification failure,
//! 2 usage error, 3 input parse error. All output is deterministic
//! byte-for-byte for identical inputs and flags; no arithmetic lives here,
//! every subcommand is a thin wrapper over the library.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pascal_rkhs::combinatorics::parse_rat;
use pascal_rkhs::error::Error;
use pascal_rkhs::hurwitz::{hurwitz_series, PowerSeriesJson};
use pascal_rkhs::hypergroup::CoproductJson;
use pascal_rkhs::kernels::{build_kernel, GramMatrix};
use pascal_rkhs::operators::build_matrix;
use pascal_rkhs::rkhs::{membership_diagnostic, MembershipReportJson};
use pascal_rkhs::transforms::{bft, bft_inv, second_fwd, second_inv, SequenceJson};
use pascal_rkhs::verify::run_suite;

#[derive(Parser)]
#[command(
    name = "pascal-rkhs",
    version,
    about = "Exact kernels, binomial transforms, and identity verification \
             for the Pascal-triangle reproducing kernel space"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a kernel at a point, or emit its Gram matrix as CSV
    Kernel(KernelArgs),
    /// Apply one of the four sequence transforms to a JSON sequence
    Transform(TransformArgs),
    /// Emit a triangular matrix truncation (CSV by default)
    Matrix(MatrixArgs),
    /// Expand the pointwise product of two basis functions in the basis
    Coproduct(CoproductArgs),
    /// Exponential generating function of a prefix, optionally evaluated
    Hurwitz(HurwitzArgs),
    /// Membership evidence for a value prefix
    Member(MemberArgs),
    /// Run an identity suite and emit a machine-readable report
    Verify(VerifyArgs),
}

#[derive(Args)]
struct KernelArgs {
    /// Kernel name: pascal, lambda, q, or signed-pascal
    #[arg(long)]
    kind: String,
    /// Row index (required unless --size is given)
    #[arg(long)]
    x: Option<u64>,
    /// Column index (required unless --size is given)
    #[arg(long)]
    y: Option<u64>,
    /// Deformation parameter for the lambda kernel
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Deformation parameter for the q kernel
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    /// Emit the (N+1)x(N+1) Gram matrix as CSV instead of one value
    #[arg(long)]
    size: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TransformKind {
    /// Forward binomial transform (prefix to prefix)
    Bft,
    /// Inverse binomial transform (prefix to prefix)
    BftInv,
    /// Upper-triangular forward transform (finite support required)
    Second,
    /// Upper-triangular inverse transform (finite support required)
    SecondInv,
}

#[derive(Args)]
struct TransformArgs {
    #[arg(long, value_enum)]
    kind: TransformKind,
    /// Path to a sequence JSON file, or - for stdin
    #[arg(long)]
    input: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct MatrixArgs {
    /// Matrix name: l, a, m, or d
    #[arg(long)]
    kind: String,
    /// Grading parameter (required for l, m, d; rejected for a)
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Truncation: emit the (N+1)x(N+1) leading block
    #[arg(long)]
    size: u64,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
}

#[derive(Args)]
struct CoproductArgs {
    #[arg(long)]
    m: u64,
    #[arg(long)]
    n: u64,
}

#[derive(Args)]
struct HurwitzArgs {
    /// Path to a sequence JSON file, or - for stdin
    #[arg(long)]
    input: PathBuf,
    /// Truncation degree (must be below the prefix length)
    #[arg(long)]
    degree: u64,
    /// Evaluate the truncated series exactly at this rational point
    #[arg(long, allow_hyphen_values = true)]
    eval: Option<String>,
}

#[derive(Args)]
struct MemberArgs {
    /// Path to a sequence JSON file, or - for stdin
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name: all, orthogonality, inversion, semigroup, factorization,
    /// coproduct, hurwitz, plancherel, or qkernel
    #[arg(long, default_value = "all")]
    suite: String,
    /// Scale knob bounding the identity grids
    #[arg(long, default_value_t = 16)]
    max_n: u64,
}

/// Failure carrying the process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::ParseRational(_) => 3,
            Error::Identity { .. } => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Failure {
        Failure {
            code: 3,
            message: format!("invalid JSON input: {e}"),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure {
            code: 3,
            message: format!("cannot read input: {e}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Kernel(args) => kernel_command(args),
        Command::Transform(args) => transform_command(args),
        Command::Matrix(args) => matrix_command(args),
        Command::Coproduct(args) => coproduct_command(args),
        Command::Hurwitz(args) => hurwitz_command(args),
        Command::Member(args) => member_command(args),
        Command::Verify(args) => verify_command(args),
    }
}

fn parse_opt_rat(s: &Option<String>) -> Result<Option<pascal_rkhs::Rat>, Failure> {
    match s {
        None => Ok(None),
        Some(text) => Ok(Some(parse_rat(text)?)),
    }
}

fn kernel_command(args: KernelArgs) -> Result<(), Failure> {
    let lambda = parse_opt_rat(&args.lambda)?;
    let q = parse_opt_rat(&args.q)?;
    let kernel = build_kernel(&args.kind, lambda, q)?;
    if let Some(size) = args.size {
        let gram = GramMatrix::build(kernel.as_ref(), size);
        print!("{}", gram.to_csv());
        return Ok(());
    }
    let (x, y) = match (args.x, args.y) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(Failure::usage("either --size or both --x and --y are required")),
    };
    println!("{}", kernel.eval(x, y));
    Ok(())
}

fn read_sequence(path: &PathBuf) -> Result<SequenceJson, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut buffer = String::new();
        std::io::stdin().read_to_string(&mut buffer)?;
        buffer
    } else {
        std::fs::read_to_string(path)?
    };
    Ok(serde_json::from_str(&text)?)
}

fn transform_command(args: TransformArgs) -> Result<(), Failure> {
    let wire = read_sequence(&args.input)?;
    let output = match args.kind {
        TransformKind::Bft => SequenceJson::from_prefix(&bft(&wire.to_prefix()?)),
        TransformKind::BftInv => SequenceJson::from_prefix(&bft_inv(&wire.to_prefix()?)),
        TransformKind::Second => SequenceJson::from_finite(&second_fwd(&wire.to_finite()?)),
        TransformKind::SecondInv => SequenceJson::from_finite(&second_inv(&wire.to_finite()?)),
    };
    println!("{}", serde_json::to_string(&output)?);
    Ok(())
}

fn matrix_command(args: MatrixArgs) -> Result<(), Failure> {
    let lambda = parse_opt_rat(&args.lambda)?;
    let matrix = build_matrix(&args.kind, lambda.as_ref(), args.size)?;
    match args.format {
        OutputFormat::Csv => print!("{}", matrix.to_csv()),
        OutputFormat::Json => {
            let rows: Vec<Vec<String>> = matrix
                .rows()
                .iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect())
                .collect();
            let payload = serde_json::json!({
                "kind": args.kind,
                "size": args.size,
                "rows": rows,
            });
            println!("{payload}");
        }
    }
    Ok(())
}

fn coproduct_command(args: CoproductArgs) -> Result<(), Failure> {
    let wire = CoproductJson::compute(args.m, args.n);
    println!("{}", serde_json::to_string(&wire)?);
    if wire.formula_agrees {
        Ok(())
    } else {
        Err(Failure {
            code: 1,
            message: "closed form disagrees with the transform oracle".into(),
        })
    }
}

fn hurwitz_command(args: HurwitzArgs) -> Result<(), Failure> {
    let wire = read_sequence(&args.input)?;
    let series = hurwitz_series(&wire.to_prefix()?, args.degree)?;
    match args.eval {
        Some(point) => println!("{}", series.eval(&parse_rat(&point)?)),
        None => println!(
            "{}",
            serde_json::to_string(&PowerSeriesJson::from_series(&series))?
        ),
    }
    Ok(())
}

fn member_command(args: MemberArgs) -> Result<(), Failure> {
    let wire = read_sequence(&args.input)?;
    let report = membership_diagnostic(&wire.to_prefix()?)?;
    println!(
        "{}",
        serde_json::to_string(&MembershipReportJson::from_report(&report))?
    );
    Ok(())
}

fn verify_command(args: VerifyArgs) -> Result<(), Failure> {
    let report = run_suite(&args.suite, args.max_n)?;
    println!("{}", serde_json::to_string(&report)?);
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure {
            code: 1,
            message: format!(
                "{} of {} checks failed",
                report.summary.failed, report.summary.total
            ),
        })
    }
}
