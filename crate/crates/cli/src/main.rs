//! Command-line front end: prime sweeps, WZ grids, series evaluation, and
//! exact oracle reductions, with JSON-lines output for machine consumers.
//!
//! Exit codes: 0 all checks pass (skips allowed), 1 at least one failure,
//! 2 usage or configuration error.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::Rational64;
use serde_json::json;

use supercong::hypersum::{self, Status};
use supercong::oracle;
use supercong::padic::PadicCtx;
use supercong::series;
use supercong::suite::{self, CheckResult, SweepReport};
use supercong::wz;

#[derive(Parser)]
#[command(
    name = "supercong",
    version,
    about = "Exact verification laboratory for divergent Ramanujan-type supercongruences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep one registered check over a prime range
    Sweep(SweepArgs),
    /// Sweep every registered check up to its capped range
    VerifyAll(VerifyAllArgs),
    /// Verify a WZ certificate pair exactly on a grid
    Wz(WzArgs),
    /// Evaluate a registered series and compare it with its limit
    Series(SeriesArgs),
    /// Print the exact truncated sum and its reduction at one prime
    Oracle(OracleArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// Check id (see `verify-all` output for the full list)
    #[arg(long)]
    check: String,
    /// Lower end of the prime range
    #[arg(long, default_value_t = 3)]
    pmin: u64,
    /// Upper end of the prime range
    #[arg(long)]
    pmax: u64,
    /// Emit JSON lines instead of the human report
    #[arg(long)]
    json: bool,
    /// Force single-threaded execution
    #[arg(long)]
    serial: bool,
}

#[derive(Args)]
struct VerifyAllArgs {
    /// Upper end of the prime range (per-check caps still apply)
    #[arg(long, default_value_t = 200)]
    pmax: u64,
    /// Emit JSON lines instead of the human report
    #[arg(long)]
    json: bool,
    /// Force single-threaded execution
    #[arg(long)]
    serial: bool,
}

#[derive(Args)]
struct WzArgs {
    /// Pair id: LEMMA3, J1, J2 or J4
    #[arg(long)]
    pair: String,
    /// Grid bound; the relation is checked for n,k up to this value
    #[arg(long, default_value_t = 12)]
    grid: u64,
    /// Rational parameter x for LEMMA3, e.g. 1/3 or -2
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
}

#[derive(Args)]
struct SeriesArgs {
    /// Series id: guillera-8pi2 or sqrt7-pi
    #[arg(long)]
    id: String,
    /// Requested decimal precision (at least 15)
    #[arg(long, default_value_t = 30)]
    digits: usize,
}

#[derive(Args)]
struct OracleArgs {
    /// Hypergeometric check id, e.g. J1
    #[arg(long)]
    check: String,
    /// Odd prime at which to reduce
    #[arg(long)]
    p: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Sweep(args) => cmd_sweep(args),
        Command::VerifyAll(args) => cmd_verify_all(args),
        Command::Wz(args) => cmd_wz(args),
        Command::Series(args) => cmd_series(args),
        Command::Oracle(args) => cmd_oracle(args),
    };
    ExitCode::from(code)
}

fn config_error(msg: &str) -> u8 {
    eprintln!("error: {msg}");
    2
}

fn json_line(r: &CheckResult) -> String {
    json!({
        "check": r.id,
        "p": r.p,
        "modulus": format!("{}^{}", r.p, r.mod_exp),
        "lhs": r.lhs.map(|v| v.to_string()),
        "rhs": r.rhs.map(|v| v.to_string()),
        "pass": r.pass,
        "skipped": r.skipped,
    })
    .to_string()
}

fn human_line(r: &CheckResult) -> String {
    match (&r.skipped, r.lhs, r.rhs) {
        (Some(reason), _, _) => format!("skip {} p={}: {}", r.id, r.p, reason),
        (None, Some(lhs), Some(rhs)) => {
            let verdict = if r.pass { "ok  " } else { "FAIL" };
            let route = if r.via_oracle { " [oracle]" } else { "" };
            let rel = if r.pass { "==" } else { "!=" };
            format!(
                "{verdict} {} p={} (mod {}^{}): {} {} {}{}",
                r.id, r.p, r.p, r.mod_exp, lhs, rel, rhs, route
            )
        }
        _ => unreachable!("non-skipped results carry both residues"),
    }
}

fn emit_report(report: &SweepReport, json: bool) {
    for r in &report.results {
        println!("{}", if json { json_line(r) } else { human_line(r) });
    }
    if !json {
        println!(
            "{}: {} ok, {} failed, {} skipped (p in [{}, {}]) in {:.2?}",
            report.id,
            report.passes,
            report.failures,
            report.skips,
            report.p_lo,
            report.p_hi,
            report.wall
        );
    }
}

fn cmd_sweep(args: SweepArgs) -> u8 {
    if args.pmin > args.pmax {
        return config_error("--pmin must not exceed --pmax");
    }
    match suite::sweep(&args.check, args.pmin, args.pmax, !args.serial) {
        Ok(report) => {
            emit_report(&report, args.json);
            u8::from(report.failures > 0)
        }
        Err(e) => config_error(&e.to_string()),
    }
}

fn cmd_verify_all(args: VerifyAllArgs) -> u8 {
    let mut reports = match suite::verify_all(args.pmax, !args.serial) {
        Ok(reports) => reports,
        Err(e) => return config_error(&e.to_string()),
    };
    reports.sort_by_key(|r| r.id);
    if args.json {
        for report in &reports {
            for r in &report.results {
                println!("{}", json_line(r));
            }
        }
    } else {
        let mut tallies = [(Status::Proven, 0u64, 0u64, 0u64, 0u64); 2];
        tallies[1].0 = Status::Conjectural;
        for report in &reports {
            emit_report(report, false);
            let t = &mut tallies[usize::from(report.status == Status::Conjectural)];
            t.1 += 1;
            t.2 += report.passes;
            t.3 += report.failures;
            t.4 += report.skips;
        }
        println!();
        for (status, checks, passes, failures, skips) in tallies {
            let label = match status {
                Status::Proven => "PROVEN     ",
                Status::Conjectural => "CONJECTURAL",
            };
            println!("{label} {checks:2} checks: {passes} ok, {failures} failed, {skips} skipped");
        }
        let failed: Vec<&str> = reports
            .iter()
            .filter(|r| r.failures > 0)
            .map(|r| r.id)
            .collect();
        if failed.is_empty() {
            println!("all checks pass");
        } else {
            println!("FAILING: {}", failed.join(", "));
        }
    }
    u8::from(reports.iter().any(|r| r.failures > 0))
}

fn parse_rational(s: &str) -> Option<Rational64> {
    s.parse::<Rational64>().ok()
}

fn cmd_wz(args: WzArgs) -> u8 {
    if args.grid < 1 {
        return config_error("--grid must be at least 1");
    }
    let pair = match args.pair.to_uppercase().as_str() {
        "LEMMA3" => {
            let x = match &args.x {
                Some(s) => match parse_rational(s) {
                    Some(x) => x,
                    None => return config_error("--x must be a rational like 1/3"),
                },
                None => Rational64::new(1, 3),
            };
            match wz::WzPair::lemma3(x) {
                Ok(pair) => pair,
                Err(e) => return config_error(&e.to_string()),
            }
        }
        "J1" | "J2" | "J4" => {
            if args.x.is_some() {
                return config_error("--x only applies to LEMMA3");
            }
            match args.pair.to_uppercase().as_str() {
                "J1" => wz::WzPair::j1(),
                "J2" => wz::WzPair::j2(),
                _ => wz::WzPair::j4(),
            }
        }
        other => return config_error(&format!("unknown pair: {other}")),
    };
    let report = wz::check_pair(&pair, args.grid, args.grid);
    let x_note = report.x.map_or(String::new(), |x| format!(" x={x}"));
    if report.pass {
        println!(
            "pair {}{} grid {}x{}: PASS (exact at every point)",
            report.id.as_str(),
            x_note,
            report.n_max,
            report.k_max
        );
        0
    } else {
        let (n, k) = report.counterexample.unwrap();
        println!(
            "pair {}{} grid {}x{}: FAIL at (n, k) = ({}, {})",
            report.id.as_str(),
            x_note,
            report.n_max,
            report.k_max,
            n,
            k
        );
        1
    }
}

fn cmd_series(args: SeriesArgs) -> u8 {
    if args.digits < 15 {
        return config_error("--digits must be at least 15");
    }
    let spec = match series::series_spec(&args.id) {
        Some(spec) => spec,
        None => return config_error(&format!("unknown series id: {}", args.id)),
    };
    match series::eval_series(&spec, args.digits) {
        Ok(v) => {
            let target = series::target_value(spec.target, args.digits);
            let diff = (&v.value.re.rescale(args.digits) - &target).to_f64().abs();
            println!(
                "series {} at {} digits ({} terms)",
                spec.id, args.digits, v.terms
            );
            println!("value  = {}", v.value.re.rescale(args.digits));
            if !v.value.im.is_zero() {
                println!("imag   = {}", v.value.im.rescale(args.digits));
            }
            println!("target = {target}");
            println!("|diff| = {diff:.3e} (error estimate {:.3e})", v.error);
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn cmd_oracle(args: OracleArgs) -> u8 {
    let spec = match hypersum::spec(&args.check) {
        Some(spec) => spec,
        None => {
            return config_error(&format!(
                "oracle reductions are defined for the hypergeometric checks; unknown id: {}",
                args.check
            ))
        }
    };
    let ctx = match PadicCtx::new(args.p, spec.mod_exp) {
        Ok(ctx) => ctx,
        Err(e) => return config_error(&e.to_string()),
    };
    let sum = oracle::sum_exact(spec, args.p);
    match oracle::reduce_mod(&sum, ctx) {
        Ok(r) => {
            println!("{} \u{2261} {} (mod {})", sum, r.residue(), ctx.modulus());
            0
        }
        Err(_) => {
            eprintln!("error: sum is not p-integral at p = {}", args.p);
            1
        }
    }
}
