//! `lnscert` command-line front end.
//!
//! Exit codes: 0 success, 1 a property or axiom check failed, 2 usage error.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lnscert::expr::{convert_literal, parse_rational, taylor_exp_exact, taylor_exp_tree};
use lnscert::level2::eval_level2;
use lnscert::lnscore::{add_level_1, compute_table_unchecked, pow_plus_one, sez_pq, sweep_s_properties, AxiomReport};
use lnscert::tablefile::{parse_table, parse_table_unchecked, write_table};
use lnscert::tolerance::tol_holds;
use lnscert::{
    certify_expression, floor_log, floor_log_fast, parse_expr, pow_rational, verify_axioms, AddMode, Base,
    LnsError, PosRational, RangeConfig, Rep, SumOrder, SumTable, Tolerance,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Reference-loop budget (`N*Q` iterations) below which the slow route runs
/// without `--force`.
pub const NAIVE_BUDGET: u64 = 10_000_000;

/// Largest table `bench-table` will build at all.
pub const BENCH_MAX_ENTRIES: u64 = 1_000_000;

/// Values swept by `verify` for the `S` properties.
pub const SWEEP_CAP: u64 = 5_000;

#[derive(Debug, Parser)]
#[command(name = "lnscert", version, about = "Exact logarithmic number system toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct BaseArgs {
    /// Numerator of the base P/Q
    #[arg(long)]
    pub p: BigUint,
    /// Denominator of the base P/Q
    #[arg(long)]
    pub q: BigUint,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the addition table for a base and write it as an LNS1 file
    GenTable {
        #[command(flatten)]
        base: BaseArgs,
        /// Output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert a rational N/D to its Level-1 representation
    Convert {
        /// The value, as N or N/D
        value: String,
        #[command(flatten)]
        base: BaseArgs,
    },
    /// Check the table axioms and the S properties for a base
    Verify {
        #[command(flatten)]
        base: BaseArgs,
        /// Verify this LNS1 file instead of a freshly computed table
        #[arg(long)]
        table: Option<PathBuf>,
        /// Seed for the randomized addition sweep
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Evaluate an expression with a certified tolerance
    Eval {
        /// Expression over N or N/D literals with + * / and parentheses
        expr: String,
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long, default_value = "loose")]
        mode: AddMode,
        /// Level 2 lower representation bound
        #[arg(long, allow_negative_numbers = true)]
        min: Option<BigInt>,
        /// Level 2 upper representation bound
        #[arg(long, allow_negative_numbers = true)]
        max: Option<BigInt>,
    },
    /// Certify the cubic Taylor polynomial of exp at x in both summation orders
    DemoExp {
        /// The input x, as N or N/D
        x: String,
        #[command(flatten)]
        base: BaseArgs,
    },
    /// Time table construction by reference search against bisection
    BenchTable {
        #[command(flatten)]
        base: BaseArgs,
        /// Run the reference search even when it exceeds the budget
        #[arg(long)]
        force: bool,
    },
}

/// Failure carrying its exit code.
struct Exit(i32, String);

fn usage(msg: impl std::fmt::Display) -> Exit {
    Exit(EXIT_USAGE, format!("error: {msg}"))
}

fn failed(msg: impl std::fmt::Display) -> Exit {
    Exit(EXIT_FAIL, format!("error: {msg}"))
}

impl From<std::io::Error> for Exit {
    fn from(e: std::io::Error) -> Self {
        failed(e)
    }
}

type CmdResult = Result<i32, Exit>;

fn axiom_base(args: &BaseArgs) -> Result<Base, Exit> {
    Base::new(args.p.clone(), args.q.clone()).map_err(usage)
}

fn build(base: &Base, err: &mut dyn Write) -> Result<SumTable, Exit> {
    let table = compute_table_unchecked(base).map_err(usage)?;
    let report = verify_axioms(&table);
    if !report.all_hold() {
        write_report(err, &report, &table)?;
        return Err(failed(format!("table for base {base} violates the axioms")));
    }
    Ok(table)
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn write_report(out: &mut dyn Write, report: &AxiomReport, table: &SumTable) -> std::io::Result<()> {
    for c in &report.checks {
        match c.witness {
            Some(z) => writeln!(out, "axiom ({}): {} at Z={z}", c.axiom, pass(c.holds))?,
            None => writeln!(out, "axiom ({}): {}", c.axiom, pass(c.holds))?,
        }
        if c.axiom == 2 && !c.holds && table.sez() == 0 {
            writeln!(
                out,
                "note: SEZ_PQ = 0 for base {}; bases above the golden ratio cannot satisfy 0 < SEZ",
                table.base()
            )?;
        }
    }
    Ok(())
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::GenTable { base, out: path } => gen_table(base, path.as_ref(), out, err),
        Command::Convert { value, base } => convert(value, base, out),
        Command::Verify { base, table, seed } => verify(base, table.as_ref(), *seed, out),
        Command::Eval {
            expr,
            base,
            mode,
            min,
            max,
        } => eval(expr, base, *mode, min.as_ref(), max.as_ref(), out),
        Command::DemoExp { x, base } => demo_exp(x, base, out),
        Command::BenchTable { base, force } => bench_table(base, *force, out),
    };
    match result {
        Ok(code) => code,
        Err(Exit(code, msg)) => {
            let _ = writeln!(err, "{msg}");
            code
        }
    }
}

fn gen_table(args: &BaseArgs, path: Option<&PathBuf>, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let base = axiom_base(args)?;
    let table = build(&base, err)?;
    let text = write_table(&table);
    let summary = format!("SEZ={}\nentries={}\n", table.sez(), table.entries().len());
    match path {
        Some(path) => {
            std::fs::write(path, &text)?;
            let reread = std::fs::read_to_string(path)?;
            let reloaded = parse_table(&reread).map_err(failed)?;
            if reloaded != table {
                return Err(failed("reloaded table differs from the one written"));
            }
            out.write_all(summary.as_bytes())?;
        }
        None => {
            out.write_all(text.as_bytes())?;
            err.write_all(summary.as_bytes())?;
        }
    }
    Ok(EXIT_OK)
}

fn convert(value: &str, args: &BaseArgs, out: &mut dyn Write) -> CmdResult {
    let base = Base::above_one(args.p.clone(), args.q.clone()).map_err(usage)?;
    let v = parse_rational(value).map_err(usage)?;
    let tr = convert_literal(&base, &v);
    let exact = tr.tol == Tolerance::EXACT;
    writeln!(out, "Z={} {}", tr.rep, if exact { "exact" } else { "inexact" })?;
    let loop_num = if v.is_at_least_one() { v.num() } else { v.den() };
    let budget: BigUint = loop_num * base.q();
    if budget <= BigUint::from(NAIVE_BUDGET) {
        let reference = floor_log(&v, &base).map_err(failed)?;
        if reference != tr.rep.0 {
            writeln!(out, "reference: MISMATCH (reference gives {reference})")?;
            return Ok(EXIT_FAIL);
        }
        writeln!(out, "reference: agrees")?;
    } else {
        writeln!(out, "reference: skipped (budget {budget} > {NAIVE_BUDGET})")?;
    }
    Ok(EXIT_OK)
}

fn verify(args: &BaseArgs, path: Option<&PathBuf>, seed: u64, out: &mut dyn Write) -> CmdResult {
    let table = match path {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(usage)?;
            let t = parse_table_unchecked(&text).map_err(usage)?;
            if t.base().p() != &args.p || t.base().q() != &args.q {
                return Err(usage(format!(
                    "table base {} does not match --p {} --q {}",
                    t.base(),
                    args.p,
                    args.q
                )));
            }
            t
        }
        None => compute_table_unchecked(&axiom_base(args)?).map_err(usage)?,
    };
    writeln!(out, "base={} SEZ={}", table.base(), table.sez())?;
    let report = verify_axioms(&table);
    write_report(out, &report, &table)?;
    if !report.all_hold() {
        return Ok(EXIT_FAIL);
    }

    let sweep = sweep_s_properties(&table, SWEEP_CAP);
    let range = format!("Z in [{}, {}]", sweep.lo, sweep.hi);
    let line = |name: &str, failure: Option<i64>| match failure {
        None => format!("{name}: PASS ({range})"),
        Some(z) => format!("{name}: FAIL at Z={z}"),
    };
    writeln!(out, "{}", line("S bracket", sweep.bracket_failure))?;
    writeln!(out, "{}", line("S reflection", sweep.reflection_failure))?;
    writeln!(out, "{}", line("S first difference", sweep.difference_failure))?;

    let add_failure = random_add_sweep(&table, seed, 200);
    match &add_failure {
        None => writeln!(out, "add floor-correctness: PASS (200 pairs, seed {seed})")?,
        Some((x, y)) => writeln!(out, "add floor-correctness: FAIL at X={x} Y={y}")?,
    }
    Ok(if sweep.all_hold() && add_failure.is_none() {
        EXIT_OK
    } else {
        EXIT_FAIL
    })
}

/// Random exact operand pairs; compares Level-1 addition with the floor of
/// the exact sum found by bisection.
fn random_add_sweep(table: &SumTable, seed: u64, pairs: usize) -> Option<(i64, i64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = table.base();
    let reach = 2 * table.sez().min(2_000) as i64 + 4;
    (0..pairs)
        .map(|_| (rng.gen_range(-reach..=reach), rng.gen_range(-reach..=reach)))
        .find(|&(x, y)| {
            let sum = pow_rational(base, &x.into()).add(&pow_rational(base, &y.into()));
            add_level_1(table, &Rep::from(x), &Rep::from(y)).0 != floor_log_fast(&sum, base)
        })
}

fn eval(
    text: &str,
    args: &BaseArgs,
    mode: AddMode,
    min: Option<&BigInt>,
    max: Option<&BigInt>,
    out: &mut dyn Write,
) -> CmdResult {
    let expr = parse_expr(text).map_err(usage)?;
    let base = axiom_base(args)?;
    let range = match (min, max) {
        (None, None) => None,
        (Some(lo), Some(hi)) => Some(RangeConfig::new(lo.clone(), hi.clone()).map_err(usage)?),
        _ => return Err(usage("--min and --max must be given together")),
    };
    let table = build(&base, &mut std::io::sink())?;

    if let Some(cfg) = &range {
        let v = eval_level2(cfg, &table, &expr).map_err(usage)?;
        if !v.is_in_range() {
            writeln!(out, "{}", v.display(cfg))?;
            return Ok(EXIT_OK);
        }
    }

    let cert = match certify_expression(&table, &expr, mode) {
        Ok(c) => c,
        Err(e @ LnsError::Unsound(_)) => {
            writeln!(out, "tol_holds=FAIL")?;
            return Err(failed(e));
        }
        Err(e) => return Err(usage(e)),
    };
    let tr = &cert.tol_rep;
    writeln!(out, "Z={}", tr.rep)?;
    writeln!(out, "tolerance={}", tr.tol)?;
    writeln!(out, "lower={}", pow_rational(&base, &tr.lower_exponent()))?;
    writeln!(out, "upper={}", pow_rational(&base, &tr.upper_exponent()))?;
    writeln!(out, "exact={}", cert.value)?;
    if let Some(cfg) = &range {
        let v = eval_level2(cfg, &table, &expr).map_err(usage)?;
        if v.to_raw(cfg) != tr.rep.0 {
            writeln!(out, "level2=MISMATCH {}", v.display(cfg))?;
            return Ok(EXIT_FAIL);
        }
        writeln!(out, "level2=in-range")?;
    }
    let holds = tol_holds(&base, tr, &cert.value);
    writeln!(out, "tol_holds={}", pass(holds))?;
    Ok(if holds { EXIT_OK } else { EXIT_FAIL })
}

fn demo_exp(x_text: &str, args: &BaseArgs, out: &mut dyn Write) -> CmdResult {
    let x = parse_rational(x_text).map_err(usage)?;
    let base = axiom_base(args)?;
    let table = build(&base, &mut std::io::sink())?;
    let converted = convert_literal(&base, &x);
    writeln!(out, "base={base}")?;
    writeln!(
        out,
        "x={x} Z={} conversion={} input-tolerance={}",
        converted.rep,
        if converted.tol == Tolerance::EXACT { "exact" } else { "inexact" },
        Tolerance::FLOOR
    )?;
    let exact_f = taylor_exp_exact(&x);
    writeln!(out, "f(x)={exact_f}")?;

    let mut ok = true;
    for (name, order, expected) in [
        ("forward", SumOrder::Forward, Tolerance::new(-1, 4).unwrap()),
        ("reversed", SumOrder::Reversed, Tolerance::new(-1, 6).unwrap()),
    ] {
        let tree = taylor_exp_tree(&x, Tolerance::FLOOR, order);
        let cert = certify_expression(&table, &tree, AddMode::Loose).map_err(failed)?;
        let holds = tol_holds(&base, &cert.tol_rep, &exact_f);
        let matches = cert.tol_rep.tol == expected;
        ok &= holds && matches;
        writeln!(
            out,
            "{name}: Z={} tolerance={} expected={expected} {} tol_holds={}",
            cert.tol_rep.rep,
            cert.tol_rep.tol,
            if matches { "MATCH" } else { "MISMATCH" },
            pass(holds)
        )?;
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAIL })
}

fn naive_table(base: &Base) -> Result<SumTable, LnsError> {
    let arg = PosRational::new(base.q().clone(), base.p() - base.q())?;
    let sez = floor_log(&arg, base)?;
    let sez: u64 = sez.try_into().expect("SEZ fits in 64 bits");
    let st = (0..=sez)
        .map(|z| floor_log(&pow_plus_one(base, &z.into()), base).map(|v| v.try_into().expect("entry fits")))
        .collect::<Result<Vec<u64>, _>>()?;
    SumTable::from_parts(base.clone(), sez, st)
}

fn bench_table(args: &BaseArgs, force: bool, out: &mut dyn Write) -> CmdResult {
    let base = axiom_base(args)?;
    let sez = sez_pq(&base).map_err(usage)?;
    writeln!(out, "base={base}")?;
    writeln!(out, "SEZ={sez}")?;
    writeln!(out, "entries={}", sez + 1)?;
    if sez + 1 > BENCH_MAX_ENTRIES {
        let bits = BigUint::from(sez) * base.p().bits();
        writeln!(
            out,
            "refused: {} entries exceeds the benchmark cap of {BENCH_MAX_ENTRIES}; \
             the largest entry alone involves integers of about {bits} bits",
            sez + 1
        )?;
        return Ok(EXIT_USAGE);
    }

    let start = Instant::now();
    let fast = compute_table_unchecked(&base).map_err(failed)?;
    let fast_us = start.elapsed().as_micros();

    // Loop budget of the largest reference search, for Z = SEZ.
    let budget: BigUint = pow_plus_one(&base, &BigInt::from(sez)).num() * base.q();
    let run_naive = force || budget <= BigUint::from(NAIVE_BUDGET);
    let mut naive_us = None;
    if run_naive {
        let start = Instant::now();
        let naive = naive_table(&base).map_err(failed)?;
        naive_us = Some(start.elapsed().as_micros());
        let same = naive == fast;
        writeln!(out, "naive: run")?;
        writeln!(out, "tables identical: {}", if same { "yes" } else { "NO" })?;
        if !same {
            return Ok(EXIT_FAIL);
        }
    } else {
        writeln!(
            out,
            "naive: skipped (budget exceeds {NAIVE_BUDGET} iterations; pass --force to run it)"
        )?;
    }
    writeln!(out, "[timing]")?;
    writeln!(out, "fast_us={fast_us}")?;
    if let Some(n) = naive_us {
        writeln!(out, "naive_us={n}")?;
        writeln!(out, "ratio={n}/{}", fast_us.max(1))?;
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_sweep_is_clean_for_fixtures() {
        for (p, q) in [(3u64, 2u64), (4, 3)] {
            let t = lnscert::build_table(&Base::from_u64(p, q)).unwrap();
            assert_eq!(random_add_sweep(&t, 7, 100), None);
        }
    }
}
