use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use quadirr_cli::bench::{parse_grid, run_grid, BenchError, BenchMethod};
use quadirr_cli::output;
use quadirr_cli::selftest;
use quadirr_cli::sweep::{run_sweep, SweepConfig};
use quadirr_core::bernoulli::bernoulli_table;
use quadirr_core::characters::Discriminant;
use quadirr_core::elementary_zeta::{zeta_eq1_range, Eq1Variant, ZetaValue};
use quadirr_core::irregularity::{irregularity_index, Engine};
use quadirr_core::modular_coeffs::CoeffPipeline;
use quadirr_core::modular_zeta::{zeta_eq2, zeta_eq3};
use quadirr_core::{Error, MulCounter};

#[derive(Parser)]
#[command(
    name = "quadirr",
    version,
    about = "Exact zeta values of real quadratic fields at negative odd integers, three ways"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact values zeta_D(1-2m) for one discriminant, 2 <= 2m <= mmax
    Zeta {
        /// fundamental discriminant
        #[arg(long = "D")]
        d: u64,
        /// largest 2m to evaluate (even)
        #[arg(long)]
        mmax: u32,
        /// eq1 | eq1-naive | eq1-batch | eq2 | eq3
        #[arg(long, default_value = "eq1")]
        method: String,
        #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
        format: OutFormat,
    },
    /// Values for every fundamental discriminant in 5..=dmax
    Sweep {
        #[arg(long)]
        dmax: u64,
        /// largest 2m to evaluate (even)
        #[arg(long)]
        mmax: u32,
        /// memoize divisor-power sums within each m (summary on stderr)
        #[arg(long)]
        cache: bool,
        /// bound the cache; largest arguments are evicted first
        #[arg(long)]
        cache_capacity: Option<usize>,
        /// worker threads for the discriminant loop; outputs are
        /// identical for any value
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
        format: OutFormat,
    },
    /// Index of D-irregularity of an odd prime p
    Irregular {
        #[arg(long)]
        p: u64,
        /// fundamental discriminant
        #[arg(long = "D")]
        d: u64,
        /// eq1 | eq3
        #[arg(long, default_value = "eq1")]
        engine: String,
    },
    /// Dump the integer coefficient tables driving eq2/eq3
    Coeffs {
        /// largest 2m covered (even)
        #[arg(long)]
        mmax: u32,
    },
    /// Run methods over a grid and report multiplication counters
    Bench {
        /// grid as "D1,D2,...;M1,M2,..."
        #[arg(long)]
        grid: String,
        /// comma list of eq1-naive, eq1-batch, eq2, eq3, eq3-cached
        #[arg(long, default_value = "eq1-batch,eq3")]
        methods: String,
        #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
        emit: OutFormat,
    },
    /// Recompute everything every way and require agreement
    Selftest {
        #[arg(long, default_value_t = 60)]
        dmax: u64,
        /// largest 2m to check (even)
        #[arg(long, default_value_t = 20)]
        mmax: u32,
        /// corrupt one coefficient table to verify the check trips
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

/// Exit discipline: 2 for anything wrong with the request or its domain,
/// 3 when routes that must agree do not.
enum AppError {
    Usage(String),
    Oracle(String),
}

impl From<Error> for AppError {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => AppError::Oracle(e.to_string()),
            _ => AppError::Usage(e.to_string()),
        }
    }
}

impl From<BenchError> for AppError {
    fn from(e: BenchError) -> Self {
        match e {
            BenchError::Core(c) => c.into(),
            m @ BenchError::Mismatch { .. } => AppError::Oracle(m.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(AppError::Oracle(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<(), AppError> {
    match cmd {
        Cmd::Zeta {
            d,
            mmax,
            method,
            format,
        } => cmd_zeta(d, mmax, &method, format),
        Cmd::Sweep {
            dmax,
            mmax,
            cache,
            cache_capacity,
            jobs,
            format,
        } => cmd_sweep(dmax, mmax, cache, cache_capacity, jobs, format),
        Cmd::Irregular { p, d, engine } => cmd_irregular(p, d, &engine),
        Cmd::Coeffs { mmax } => cmd_coeffs(mmax),
        Cmd::Bench {
            grid,
            methods,
            emit,
        } => cmd_bench(&grid, &methods, emit),
        Cmd::Selftest {
            dmax,
            mmax,
            inject_fault,
        } => cmd_selftest(dmax, mmax, inject_fault),
    }
}

fn cmd_zeta(d: u64, mmax: u32, method: &str, format: OutFormat) -> Result<(), AppError> {
    let d = Discriminant::new(d)?;
    let mut ctr = MulCounter::new();
    let values: Vec<ZetaValue> = match method {
        "eq1" | "eq1-batch" | "eq1-naive" => {
            let variant = if method == "eq1-naive" {
                Eq1Variant::Naive
            } else {
                Eq1Variant::Batch
            };
            let table = bernoulli_table(mmax, &mut ctr);
            zeta_eq1_range(d, mmax, variant, &table, &mut ctr)?
        }
        "eq2" | "eq3" => {
            let mut pipe = CoeffPipeline::new(mmax, &mut ctr)?;
            let mut out = Vec::with_capacity((mmax / 2) as usize);
            for m in 1..=mmax / 2 {
                let ct = pipe.coeff_table(m, &mut ctr)?;
                let ev = if method == "eq2" {
                    zeta_eq2(d, m, &ct, None, &mut ctr)?
                } else {
                    zeta_eq3(d, m, &ct, None, &mut ctr)?
                };
                out.push(ev.zeta);
            }
            out
        }
        other => {
            return Err(AppError::Usage(format!(
                "unknown method '{other}' (expected eq1, eq1-naive, eq1-batch, eq2, or eq3)"
            )))
        }
    };
    match format {
        OutFormat::Csv => print!("{}", output::zeta_csv(&values)),
        OutFormat::Json => print!("{}", output::zeta_json(&values)),
    }
    Ok(())
}

fn cmd_sweep(
    dmax: u64,
    mmax: u32,
    cache: bool,
    cache_capacity: Option<usize>,
    jobs: usize,
    format: OutFormat,
) -> Result<(), AppError> {
    let out = run_sweep(&SweepConfig {
        d_max: dmax,
        m_upper: mmax,
        use_cache: cache,
        cache_capacity,
        jobs,
    })?;
    match format {
        OutFormat::Csv => print!("{}", output::zeta_csv(&out.values)),
        OutFormat::Json => print!("{}", output::zeta_json(&out.values)),
    }
    if cache {
        for line in output::sweep_summary(&out.per_m, true) {
            eprintln!("{line}");
        }
    }
    Ok(())
}

fn cmd_irregular(p: u64, d: u64, engine: &str) -> Result<(), AppError> {
    let engine = match engine {
        "eq1" => Engine::Eq1,
        "eq3" => Engine::Eq3,
        other => {
            return Err(AppError::Usage(format!(
                "unknown engine '{other}' (expected eq1 or eq3)"
            )))
        }
    };
    let d = Discriminant::new(d)?;
    let mut ctr = MulCounter::new();
    let rep = irregularity_index(p, d, engine, &mut ctr)?;
    print!("{}", output::irregular_json(&rep));
    Ok(())
}

fn cmd_coeffs(mmax: u32) -> Result<(), AppError> {
    let mut ctr = MulCounter::new();
    let mut pipe = CoeffPipeline::new(mmax, &mut ctr)?;
    let mut tables = Vec::with_capacity((mmax / 2) as usize);
    for m in 1..=mmax / 2 {
        tables.push(pipe.coeff_table(m, &mut ctr)?);
    }
    print!("{}", output::coeff_csv(&tables));
    Ok(())
}

fn cmd_bench(grid: &str, methods: &str, emit: OutFormat) -> Result<(), AppError> {
    let (ds, ms) = parse_grid(grid).ok_or_else(|| {
        AppError::Usage(format!(
            "grid '{grid}' is not of the form \"D1,D2,...;M1,M2,...\""
        ))
    })?;
    let ds = ds
        .into_iter()
        .map(Discriminant::new)
        .collect::<Result<Vec<_>, _>>()?;
    let methods = methods
        .split(',')
        .map(str::trim)
        .map(|name| {
            BenchMethod::parse(name).ok_or_else(|| {
                AppError::Usage(format!(
                    "unknown method '{name}' (expected eq1-naive, eq1-batch, eq2, eq3, or eq3-cached)"
                ))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let records = run_grid(&ds, &ms, &methods)?;
    match emit {
        OutFormat::Csv => print!("{}", output::bench_csv(&records)),
        OutFormat::Json => print!("{}", output::bench_json(&records)),
    }
    Ok(())
}

fn cmd_selftest(dmax: u64, mmax: u32, inject_fault: bool) -> Result<(), AppError> {
    let rep = selftest::run(dmax, mmax, inject_fault)?;
    for line in &rep.checks {
        println!("{line}");
    }
    if rep.passed() {
        println!("selftest: pass");
        Ok(())
    } else {
        const SHOWN: usize = 8;
        for f in rep.failures.iter().take(SHOWN) {
            eprintln!("{f}");
        }
        if rep.failures.len() > SHOWN {
            eprintln!("... and {} more", rep.failures.len() - SHOWN);
        }
        Err(AppError::Oracle(format!(
            "selftest failed with {} disagreement(s); first at {}",
            rep.failures.len(),
            rep.failures[0]
        )))
    }
}
