use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use blockwitness_core::arith::{is_prime, PrimePower};
use blockwitness_core::conjectures::{
    oracle_degree, oracle_intersection_sn, scan_conjectures, verify_with_oracle, PairSelection, ScanKind,
};
use blockwitness_core::selftest;
use blockwitness_core::symbols::Family;
use blockwitness_core::witnesses::{verify_witness, Status};
use clap::{Args, Parser, Subcommand};

const MAX_WITNESS_N: usize = 5000;
const MAX_ENUMERATION_N: usize = 60;

#[derive(Parser, Debug)]
#[command(
    name = "blockwitness",
    version,
    about = "Characters in two principal blocks of degree prime to both primes"
)]
struct Cli {
    /// Worker threads for scans (default: available parallelism)
    #[arg(long, global = true, env = "BLOCKWITNESS_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the witness character and check it
    Witness(WitnessArgs),
    /// Like `witness`, adding the brute-force oracle cross-check where available
    Verify(WitnessArgs),
    /// Scan a conjecture over a range of n
    Scan(ScanArgs),
    /// Exhaustive intersection of the two p'/q' principal-block sets of S_n
    Oracle(OracleArgs),
    /// Run the invariant suites
    Selftest {
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Args, Debug)]
struct WitnessArgs {
    /// sn, gl, gu, bc, d or 2d
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: u64,
    /// Characteristic of the field of definition
    #[arg(long)]
    ell: Option<u64>,
    /// q = ell^f
    #[arg(long, default_value_t = 1)]
    f: u32,
    /// JSON lines (the only output format)
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct ScanArgs {
    /// a, b or c
    #[arg(long)]
    conjecture: String,
    #[arg(long)]
    n_min: usize,
    #[arg(long)]
    n_max: usize,
    /// with2, odd or all
    #[arg(long, default_value = "with2")]
    pairs: String,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    q: u64,
}

/// Invalid input: one diagnostic line, exit 3.
struct Invalid(String);

impl<E: std::fmt::Display> From<E> for Invalid {
    fn from(err: E) -> Self {
        Invalid(err.to_string())
    }
}

fn field(args: &WitnessArgs, family: Family) -> Result<Option<PrimePower>, Invalid> {
    match (family, args.ell) {
        (Family::Symmetric, None) => Ok(None),
        (Family::Symmetric, Some(_)) => Err(Invalid("--ell is not used for sn".into())),
        (_, None) => Err(Invalid(format!("family {family} needs --ell"))),
        (_, Some(ell)) => Ok(Some(PrimePower::new(ell, args.f)?)),
    }
}

fn run_witness(args: &WitnessArgs, with_oracle: bool, out: &mut impl Write) -> Result<u8, Invalid> {
    let family: Family = args.family.parse()?;
    if args.n == 0 || args.n > MAX_WITNESS_N {
        return Err(Invalid(format!("--n must lie in 1..={MAX_WITNESS_N}")));
    }
    let q = field(args, family)?;
    let report = if with_oracle && args.n <= MAX_ENUMERATION_N {
        verify_with_oracle(family, args.n, args.p, q.as_ref())?
    } else {
        verify_witness(family, args.n, args.p, q.as_ref())?
    };
    writeln!(out, "{}", report.to_json())?;
    Ok(match report.status {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::Unsupported => 2,
    })
}

fn run_scan(args: &ScanArgs) -> Result<u8, Invalid> {
    let kind: ScanKind = args.conjecture.parse()?;
    let pairs: PairSelection = args.pairs.parse()?;
    if args.n_min == 0 || args.n_min > args.n_max || args.n_max > MAX_ENUMERATION_N {
        return Err(Invalid(format!(
            "need 1 <= --n-min <= --n-max <= {MAX_ENUMERATION_N}"
        )));
    }
    let rows = scan_conjectures(kind, args.n_min, args.n_max, pairs)?;
    let mut text = String::new();
    for row in &rows {
        text.push_str(&row.to_json());
        text.push('\n');
    }
    match &args.out {
        Some(path) => std::fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(0)
}

fn run_oracle(args: &OracleArgs, out: &mut impl Write) -> Result<u8, Invalid> {
    if !is_prime(args.p) || !is_prime(args.q) || args.p == args.q {
        return Err(Invalid("--p and --q must be distinct primes".into()));
    }
    if args.n == 0 || args.n > MAX_ENUMERATION_N {
        return Err(Invalid(format!("--n must lie in 1..={MAX_ENUMERATION_N}")));
    }
    for lambda in oracle_intersection_sn(args.n, args.p, args.q) {
        let line = serde_json::json!({
            "partition": lambda.to_string(),
            "degree": oracle_degree(&lambda).to_string(),
        });
        writeln!(out, "{line}")?;
    }
    Ok(0)
}

fn run_selftest(quick: bool, out: &mut impl Write) -> Result<u8, Invalid> {
    let mut code = 0;
    for suite in selftest::run_all(quick) {
        let status = if suite.passed() { "PASS" } else { "FAIL" };
        let line = serde_json::json!({
            "suite": suite.name,
            "instances": suite.instances,
            "failures": suite.failures.len(),
            "first_failure": suite.failures.first(),
            "status": status,
        });
        writeln!(out, "{line}")?;
        if !suite.passed() {
            code = 1;
        }
    }
    Ok(code)
}

fn dispatch(cli: &Cli) -> Result<u8, Invalid> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = match &cli.command {
        Command::Witness(args) => run_witness(args, false, &mut out)?,
        Command::Verify(args) => run_witness(args, true, &mut out)?,
        Command::Scan(args) => {
            drop(out);
            return run_scan(args);
        }
        Command::Oracle(args) => run_oracle(args, &mut out)?,
        Command::Selftest { quick } => run_selftest(*quick, &mut out)?,
    };
    out.flush()?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) if !err.use_stderr() => {
            let _ = err.print();
            return ExitCode::SUCCESS;
        }
        Err(err) => {
            let msg = err.to_string();
            eprintln!("{}", msg.lines().next().unwrap_or("invalid arguments"));
            return ExitCode::from(3);
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    match cli.threads {
        Some(0) => {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(3);
        }
        Some(k) => pool = pool.num_threads(k),
        None => {}
    }
    let pool = match pool.build() {
        Ok(pool) => pool,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(3);
        }
    };
    match pool.install(|| dispatch(&cli)) {
        Ok(code) => ExitCode::from(code),
        Err(Invalid(msg)) => {
            eprintln!("error: {}", msg.lines().next().unwrap_or_default());
            ExitCode::from(3)
        }
    }
}
