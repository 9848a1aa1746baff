//! `sgs`: build transversal systems from generator files, test membership,
//! and measure cost growth over generator families.
//!
//! Exit codes: 0 success, 1 parse or usage error, 2 degree violation,
//! 3 non-member.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sgs_core::analysis::{growth_fit, write_csv, GrowthOptions};
use sgs_core::{build, parse_cycles, FamilySpec, Strategy};

mod genfile;

const EXIT_PARSE: u8 = 1;
const EXIT_DEGREE: u8 = 2;
const EXIT_NON_MEMBER: u8 = 3;

#[derive(Parser)]
#[command(
    name = "sgs",
    version,
    about = "Transversal systems for permutation groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a transversal system and report its order and level sizes.
    Build {
        file: PathBuf,
        #[arg(long, default_value = "recursive")]
        strategy: Strategy,
        /// Print construction counters.
        #[arg(long)]
        stats: bool,
        /// Print every stored representative.
        #[arg(long)]
        dump: bool,
    },
    /// Sift a perm through the system built from a generator file.
    Member {
        file: PathBuf,
        perm: String,
        #[arg(long, default_value = "recursive")]
        strategy: Strategy,
    },
    /// Build a family over a chain of sizes and report cost growth.
    Bench {
        /// e.g. two-gen, stairs-random:n=16,seed=1, doubling:h=4
        #[arg(long)]
        family: String,
        /// Comma-separated sizes, or '-' for the single instance in --family.
        #[arg(long, default_value = "-")]
        sizes: String,
        #[arg(long, default_value = "recursive")]
        strategy: Strategy,
        /// Seeds for stairs-random: a list '1,2,3' or an inclusive range '1..20'.
        #[arg(long)]
        seeds: Option<String>,
        /// CSV destination; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Abort any instance whose cost passes this many units.
        #[arg(long)]
        cost_ceiling: Option<u64>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }
}

impl From<genfile::GenFileError> for Failure {
    fn from(e: genfile::GenFileError) -> Self {
        let code = if e.is_degree_violation() {
            EXIT_DEGREE
        } else {
            EXIT_PARSE
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::parse(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_PARSE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::Build {
            file,
            strategy,
            stats,
            dump,
        } => cmd_build(&mut out, &file, strategy, stats, dump),
        Command::Member {
            file,
            perm,
            strategy,
        } => cmd_member(&mut out, &file, &perm, strategy),
        Command::Bench {
            family,
            sizes,
            strategy,
            seeds,
            out: csv_path,
            cost_ceiling,
        } => cmd_bench(
            &mut out,
            &family,
            &sizes,
            strategy,
            seeds.as_deref(),
            csv_path,
            cost_ceiling,
        ),
    };
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(code), Ok(())) => ExitCode::from(code),
        (Err(f), _) => {
            eprintln!("sgs: {}", f.message);
            ExitCode::from(f.code)
        }
        (Ok(_), Err(e)) => {
            eprintln!("sgs: {e}");
            ExitCode::from(EXIT_PARSE)
        }
    }
}

fn cmd_build(
    out: &mut impl Write,
    file: &std::path::Path,
    strategy: Strategy,
    show_stats: bool,
    dump: bool,
) -> Result<u8, Failure> {
    let gens = genfile::read(file)?;
    let (sys, stats) = build(&gens, strategy).map_err(|e| Failure::parse(e.to_string()))?;
    writeln!(out, "degree {}", sys.degree())?;
    writeln!(out, "order {}", sys.order())?;
    for level in sys.level_stats().iter().rev().filter(|l| l.s > 1) {
        writeln!(out, "level {} s={} t={}", level.k, level.s, level.t)?;
    }
    writeln!(out, "strong_generators {}", sys.strong_generators().len())?;
    if show_stats {
        writeln!(out, "strategy {}", stats.strategy)?;
        writeln!(out, "membership_tests {}", stats.membership_tests)?;
        writeln!(out, "b_invocations {}", stats.b_invocations)?;
        writeln!(out, "product_tests {}", stats.product_tests)?;
        writeln!(out, "mult_cost_units {}", stats.mult_cost_units)?;
        writeln!(out, "slots_filled {}", stats.slots_filled)?;
    }
    if dump {
        for (k, j, rep) in sys.stored_slots() {
            writeln!(out, "sigma {k} {j} {}", rep.to_perm())?;
        }
    }
    Ok(0)
}

fn cmd_member(
    out: &mut impl Write,
    file: &std::path::Path,
    text: &str,
    strategy: Strategy,
) -> Result<u8, Failure> {
    let gens = genfile::read(file)?;
    let perm = parse_cycles(text, gens.degree()).map_err(|e| Failure {
        code: if e.is_degree_violation() {
            EXIT_DEGREE
        } else {
            EXIT_PARSE
        },
        message: format!("perm: {e}"),
    })?;
    let (sys, _) = build(&gens, strategy).map_err(|e| Failure::parse(e.to_string()))?;
    let trace = sys.sift(&perm).map_err(|e| Failure {
        code: EXIT_DEGREE,
        message: e.to_string(),
    })?;
    let path: String = trace
        .path
        .iter()
        .map(|(k, j)| format!("({k},{j})"))
        .collect();
    if trace.member {
        let path = if path.is_empty() { "()".into() } else { path };
        writeln!(
            out,
            "MEMBER path={path} multiplications={} cost={}",
            trace.multiplications(),
            trace.cost_units
        )?;
        Ok(0)
    } else {
        let (level, column) = trace.failure.expect("non-member has a failing slot");
        writeln!(out, "NON-MEMBER level={level} column={column}")?;
        Ok(EXIT_NON_MEMBER)
    }
}

fn parse_list(text: &str, what: &str) -> Result<Vec<u64>, Failure> {
    let bad = || Failure::parse(format!("bad {what} list '{text}'"));
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    text.split(',')
        .map(|x| x.trim().parse().map_err(|_| bad()))
        .collect()
}

fn cmd_bench(
    out: &mut impl Write,
    family: &str,
    sizes: &str,
    strategy: Strategy,
    seeds: Option<&str>,
    csv_path: Option<PathBuf>,
    cost_ceiling: Option<u64>,
) -> Result<u8, Failure> {
    let spec: FamilySpec = family
        .parse()
        .map_err(|e: sgs_core::families::FamilyError| Failure::parse(e.to_string()))?;
    let sizes: Vec<usize> = if sizes.trim() == "-" {
        vec![spec
            .size()
            .ok_or_else(|| Failure::parse(format!("{family}: no size given")))?]
    } else {
        parse_list(sizes, "size")?
            .into_iter()
            .map(|x| x as usize)
            .collect()
    };
    let seeds = seeds
        .map(|s| parse_list(s, "seed"))
        .transpose()?
        .unwrap_or_default();
    let fit = growth_fit(
        &spec,
        &sizes,
        strategy,
        &seeds,
        GrowthOptions { cost_ceiling },
    )
    .map_err(|e| Failure::parse(e.to_string()))?;

    let mut summary = String::new();
    summary.push_str(&format!("{}\n", fit.label));
    for (i, &size) in fit.sizes.iter().enumerate() {
        let slots: Vec<u64> = fit
            .rows
            .iter()
            .filter(|r| r.n == fit.degrees[i])
            .map(|r| r.slots_filled)
            .collect();
        let mean_slots = slots.iter().sum::<u64>() as f64 / slots.len() as f64;
        summary.push_str(&format!(
            "size={size} n={} cost={:.1} slots={mean_slots}",
            fit.degrees[i], fit.costs[i]
        ));
        if i > 0 {
            summary.push_str(&format!(" exponent={:.3}", fit.pairwise_exponents[i - 1]));
        }
        summary.push('\n');
    }

    match csv_path {
        Some(path) => {
            let file = File::create(&path)
                .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
            write_csv(&fit.rows, BufWriter::new(file))
                .map_err(|e| Failure::parse(e.to_string()))?;
            out.write_all(summary.as_bytes())?;
        }
        None => {
            write_csv(&fit.rows, &mut *out).map_err(|e| Failure::parse(e.to_string()))?;
            eprint!("{summary}");
        }
    }
    Ok(0)
}
