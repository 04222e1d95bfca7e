use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use linnik::factor::cubic_part;
use linnik::lemma::{verify_lemma, LemmaParameters};
use linnik::scanner::{least_prime_in_ap, scan_range_with, ScanConfig, CSV_HEADER, MAX_CAP};
use linnik::zeros::{to_lambda_mu, ZeroDensityTable};
use linnik::Verdict;

#[derive(Parser)]
#[command(
    name = "linnik",
    version,
    about = "Exact cubic-field certification and least-prime-in-progression scanning"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify monotonicity and endpoint signs of the window polynomial S
    VerifyLemma {
        /// Decimal places of the rendered quantities (guaranteed error
        /// below 10^-digits)
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..=100))]
        digits: u32,
        /// Emit the report as JSON instead of key: value lines
        #[arg(long)]
        json: bool,
        /// Write the report to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scan moduli for the worst least prime per residue; CSV to stdout,
    /// summary to stderr
    Scan {
        #[arg(long)]
        q_min: u64,
        #[arg(long)]
        q_max: u64,
        /// Keep only moduli whose cubic part q3 is at most this bound
        #[arg(long)]
        cubic_bound: Option<u64>,
        /// Exponent of the search cap and of the violation test
        #[arg(long, default_value_t = 4.5)]
        exponent: f64,
        /// Constant of the search cap and of the violation test
        #[arg(long, default_value_t = 1.0)]
        constant: f64,
        /// Hard search ceiling (at most 2^63-1)
        #[arg(long)]
        cap: Option<u64>,
        /// Worker threads for the range scan (default: available cores)
        #[arg(long)]
        jobs: Option<usize>,
        /// Write CSV rows to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Least prime congruent to A modulo Q
    LeastPrime {
        a: u64,
        q: u64,
        /// Search ceiling (default 2^63-1)
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Cube-part decomposition Q = q3^3 * q2 with q2 cube-free
    CubicPart { q: u64 },
    /// Rescale zero coordinates: lambda = (1-beta) ln q, mu = gamma ln q
    Coords {
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        json: bool,
    },
    /// Print the N(lambda) reference table as CSV
    Table {
        /// Write the table to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn writer(out: &Option<PathBuf>) -> io::Result<Box<dyn Write + Send>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(std::fs::File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn fail_invalid(err: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(2)
}

fn cmd_verify_lemma(digits: u32, json: bool, out: &Option<PathBuf>) -> io::Result<ExitCode> {
    let params = LemmaParameters::default();
    let report = verify_lemma(&params, digits);
    let mut w = writer(out)?;
    if json {
        let doc = serde_json::json!({
            "verdict": report.verdict,
            "discriminant_sign": report.discriminant_sign,
            "monotone_increasing": report.monotone_increasing,
            "constraint_ok": report.constraint_ok,
            "s_low": report.s_low,
            "s_high": report.s_high,
            "s_high_below_threshold": report.s_high_below_threshold,
            "epsilon_max": report.epsilon_max,
            "c1": report.c1.to_decimal(digits),
            "c2": report.c2.to_decimal(digits),
            "c3": report.c3.to_decimal(digits),
            "digits": digits,
        });
        writeln!(w, "{}", serde_json::to_string_pretty(&doc)?)?;
    } else {
        writeln!(w, "verdict: {}", report.verdict)?;
        writeln!(w, "discriminant_sign: {}", report.discriminant_sign)?;
        writeln!(w, "monotone_increasing: {}", report.monotone_increasing)?;
        writeln!(w, "constraint_ok: {}", report.constraint_ok)?;
        writeln!(w, "s_low: {}", report.s_low)?;
        writeln!(w, "s_high: {}", report.s_high)?;
        writeln!(
            w,
            "s_high_below_threshold: {}",
            report.s_high_below_threshold
        )?;
        writeln!(w, "epsilon_max: {}", report.epsilon_max)?;
        writeln!(w, "c1: {}", report.c1.to_decimal(digits))?;
        writeln!(w, "c2: {}", report.c2.to_decimal(digits))?;
        writeln!(w, "c3: {}", report.c3.to_decimal(digits))?;
    }
    w.flush()?;
    Ok(match report.verdict {
        Verdict::Pass => ExitCode::SUCCESS,
        Verdict::Fail => ExitCode::from(1),
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_scan(
    q_min: u64,
    q_max: u64,
    cubic_bound: Option<u64>,
    exponent: f64,
    constant: f64,
    cap: Option<u64>,
    jobs: Option<usize>,
    out: &Option<PathBuf>,
) -> io::Result<ExitCode> {
    let config = ScanConfig {
        q_min,
        q_max,
        cubic_bound,
        exponent_bound: exponent,
        constant_c: constant,
        absolute_cap: cap.unwrap_or(MAX_CAP),
    };
    if let Err(err) = config.validate() {
        return Ok(fail_invalid(err));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| io::Error::other(e.to_string()))?;

    let mut w = writer(out)?;
    writeln!(w, "{CSV_HEADER}")?;
    let mut write_err: Option<io::Error> = None;
    let summary = pool
        .install(|| {
            scan_range_with(&config, |rec| {
                if write_err.is_none() {
                    if let Err(e) = writeln!(w, "{}", rec.csv_row()) {
                        write_err = Some(e);
                    }
                }
            })
        })
        .expect("config validated above");
    if let Some(e) = write_err {
        return Err(e);
    }
    w.flush()?;

    eprintln!("records: {}", summary.records);
    match summary.max_exponent_q {
        Some(q) => eprintln!("max exponent: {:.6} at q={}", summary.max_exponent, q),
        None => eprintln!("max exponent: n/a"),
    }
    eprintln!("cap exceeded: {}", summary.cap_exceeded);
    eprintln!("violations: {}", summary.violations);
    Ok(if summary.violations == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_least_prime(a: u64, q: u64, cap: Option<u64>) -> ExitCode {
    match least_prime_in_ap(a, q, cap.unwrap_or(MAX_CAP)) {
        Ok(Some(p)) => {
            println!("{p}");
            ExitCode::SUCCESS
        }
        Ok(None) => {
            println!("NOT_FOUND");
            ExitCode::SUCCESS
        }
        Err(err) => fail_invalid(err),
    }
}

fn cmd_cubic_part(q: u64) -> ExitCode {
    if q == 0 {
        return fail_invalid("q must be at least 1");
    }
    let (q3, q2) = cubic_part(q);
    println!("q3={q3} q2={q2}");
    ExitCode::SUCCESS
}

fn cmd_coords(beta: f64, gamma: f64, q: u64, json: bool) -> ExitCode {
    match to_lambda_mu(beta, gamma, q) {
        Ok((lambda, mu)) => {
            if json {
                let doc = serde_json::json!({
                    "beta": beta,
                    "gamma": gamma,
                    "q": q,
                    "lambda": lambda,
                    "mu": mu,
                });
                println!("{doc}");
            } else {
                println!("lambda: {lambda}");
                println!("mu: {mu}");
            }
            ExitCode::SUCCESS
        }
        Err(err) => fail_invalid(err),
    }
}

fn cmd_table(out: &Option<PathBuf>) -> io::Result<ExitCode> {
    let table = ZeroDensityTable::reference();
    let mut w = writer(out)?;
    writeln!(w, "lambda,N")?;
    write!(w, "{}", table.csv_body())?;
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::VerifyLemma { digits, json, out } => cmd_verify_lemma(digits, json, &out),
        Command::Scan {
            q_min,
            q_max,
            cubic_bound,
            exponent,
            constant,
            cap,
            jobs,
            out,
        } => cmd_scan(q_min, q_max, cubic_bound, exponent, constant, cap, jobs, &out),
        Command::LeastPrime { a, q, cap } => Ok(cmd_least_prime(a, q, cap)),
        Command::CubicPart { q } => Ok(cmd_cubic_part(q)),
        Command::Coords {
            beta,
            gamma,
            q,
            json,
        } => Ok(cmd_coords(beta, gamma, q, json)),
        Command::Table { out } => cmd_table(&out),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("io error: {err}");
            ExitCode::from(2)
        }
    }
}
