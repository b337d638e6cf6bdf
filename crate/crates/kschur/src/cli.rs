//! Command-line front end: conversions, strip chains, tableau enumeration,
//! k-Kostka tables, basis expansions, charge statistics, and the
//! verification suites.
//!
//! Exit codes: 0 success, 1 input error, 2 verification failure, 3 internal
//! anomaly (the contradiction channel).

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::abc::{abc_enumerate, stats, Abc};
use crate::cores::{bounded_from_core, core_from_bounded, Core};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::strong::bottom_strong_chain;
use crate::symfunc::{
    convert, dual_kschur_to_monomial, hall_littlewood_to_schur, kostka_matrix_k, kschur_t, Basis,
    SymFunc,
};
use crate::tpoly::TPoly;
use crate::verify::{run_suite, VerifyOptions, SUITES};

#[derive(Parser)]
#[command(
    name = "kschur",
    version,
    about = "Exact k-Schur combinatorics: cores, strong strips, counter-tableaux, charge, and t-deformed Kostka matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    #[default]
    Text,
    Json,
    Latex,
}

#[derive(Subcommand)]
enum Command {
    /// Convert between k-bounded partitions and (k+1)-cores
    Core {
        #[command(subcommand)]
        direction: CoreDirection,
    },
    /// The unique bottom strong chain over a base core, if the skew is a strip
    Strip(StripArgs),
    /// Enumerate affine Bruhat counter-tableaux of a k-weight
    Abc(AbcArgs),
    /// The k-Kostka matrix of a degree
    Kostka(KostkaArgs),
    /// Expand symmetric functions into a chosen basis
    Expand {
        #[command(subcommand)]
        what: ExpandWhat,
    },
    /// Charge statistics of words and counter-tableaux
    Charge {
        #[command(subcommand)]
        what: ChargeWhat,
    },
    /// Run verification suites
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum CoreDirection {
    /// Map a k-bounded partition to its (k+1)-core
    ToCore(CoreArgs),
    /// Map a (k+1)-core to its k-bounded partition
    ToBounded(CoreArgs),
}

#[derive(Args)]
struct CoreArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    k: u32,
    /// Comma-separated descending parts; the empty partition is "" or "0"
    #[arg(long)]
    partition: String,
    #[arg(long, value_enum, default_value_t)]
    format: OutputFormat,
}

#[derive(Args)]
struct StripArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    k: u32,
    /// Bottom core of the strip
    #[arg(long)]
    inner: String,
    /// Base core; the strip target is (k + base_1, base)
    #[arg(long)]
    base: String,
    #[arg(long, value_enum, default_value_t)]
    format: OutputFormat,
}

#[derive(Args)]
struct AbcArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    k: u32,
    /// k-weight, comma separated (a composition with entries in 1..=k)
    #[arg(long)]
    weight: String,
    /// Keep only tableaux with this inner shape
    #[arg(long)]
    inner_shape: Option<String>,
    /// Also print per-tableau reading-word charges, offsets, beta, k-charge
    #[arg(long)]
    stats: bool,
    #[arg(long, value_enum, default_value_t)]
    format: OutputFormat,
}

#[derive(Args)]
struct KostkaArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    k: u32,
    #[arg(long)]
    degree: u32,
    /// Evaluate every entry at an integer t
    #[arg(long)]
    t_eval: Option<i64>,
    #[arg(long, value_enum, default_value_t)]
    format: OutputFormat,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    /// Hall-Littlewood H[.;t]
    #[default]
    Hl,
    Schur,
    Monomial,
    Homogeneous,
}

impl BasisArg {
    fn to_basis(self) -> Basis {
        match self {
            BasisArg::Hl => Basis::HallLittlewood,
            BasisArg::Schur => Basis::Schur,
            BasisArg::Monomial => Basis::Monomial,
            BasisArg::Homogeneous => Basis::Homogeneous,
        }
    }
}

#[derive(Subcommand)]
enum ExpandWhat {
    /// k-Schur function with parameter t
    KschurT(ExpandArgs),
    /// Dual k-Schur function (weight generating function)
    DualKschur(ExpandDualArgs),
    /// Hall-Littlewood polynomial
    Hl(ExpandHlArgs),
}

#[derive(Args)]
struct ExpandArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    k: u32,
    #[arg(long)]
    lambda: String,
    #[arg(long, value_enum, default_value_t)]
    basis: BasisArg,
    /// Evaluate coefficients at an integer t
    #[arg(long)]
    t_eval: Option<i64>,
    #[arg(long, value_enum, default_value_t)]
    format: OutputFormat,
}

#[derive(Args)]
struct ExpandDualArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    k: u32,
    #[arg(long)]
    lambda: String,
    #[arg(long, value_enum, default_value_t = BasisArg::Monomial)]
    basis: BasisArg,
    #[arg(long)]
    t_eval: Option<i64>,
    #[arg(long, value_enum, default_value_t)]
    format: OutputFormat,
}

#[derive(Args)]
struct ExpandHlArgs {
    #[arg(long)]
    mu: String,
    #[arg(long, value_enum, default_value_t = BasisArg::Schur)]
    basis: BasisArg,
    #[arg(long)]
    t_eval: Option<i64>,
    #[arg(long, value_enum, default_value_t)]
    format: OutputFormat,
}

#[derive(Subcommand)]
enum ChargeWhat {
    /// Charge of a word of partition weight
    Word { letters: String },
    /// Charge subword decomposition of a word
    Subwords { letters: String },
    /// Statistics of a counter-tableau given as JSON (file or stdin)
    Abc {
        /// Path to the JSON file, or "-" for stdin
        #[arg(long, default_value = "-")]
        file: String,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name
    #[arg(long, default_value = "all")]
    suite: String,
    /// Largest degree for weight/partition sweeps
    #[arg(long, default_value_t = 6)]
    max_n: u32,
    /// Inclusive k range, e.g. 2..4
    #[arg(long, default_value = "2..4")]
    k_range: String,
    /// Largest core degree for the strong-order sweeps
    #[arg(long, default_value_t = 10)]
    max_core_degree: u32,
}

/// Parses "6,2,2,1"; "" and "0" denote the empty partition.
fn parse_partition(text: &str) -> Result<Partition> {
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed == "0" {
        return Ok(Partition::empty());
    }
    let parts = parse_numbers(trimmed)?;
    Partition::new(parts)
}

fn parse_numbers(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|piece| {
            piece
                .trim()
                .parse::<u32>()
                .map_err(|_| Error::InputError(format!("bad integer {piece:?}")))
        })
        .collect()
}

fn parse_core(text: &str, k: u32) -> Result<Core> {
    Core::new(parse_partition(text)?, k + 1)
}

fn parse_k_range(text: &str) -> Result<(u32, u32)> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| Error::InputError(format!("bad k range {text:?}, expected a..b")))?;
    let lo = lo
        .trim()
        .parse::<u32>()
        .map_err(|_| Error::InputError(format!("bad k range bound {lo:?}")))?;
    let hi = hi
        .trim()
        .parse::<u32>()
        .map_err(|_| Error::InputError(format!("bad k range bound {hi:?}")))?;
    if lo > hi || lo < 1 {
        return Err(Error::InputError(format!("empty k range {text:?}")));
    }
    Ok((lo, hi))
}

fn partition_latex(q: &Partition) -> String {
    if q.is_empty() {
        return "\\varnothing".to_string();
    }
    let inner: Vec<String> = q.parts().iter().map(u32::to_string).collect();
    format!("({})", inner.join(","))
}

fn symfunc_latex(f: &SymFunc) -> String {
    if f.coeffs().is_empty() {
        return "0".to_string();
    }
    let symbol = match f.basis() {
        Basis::Monomial => "m",
        Basis::Homogeneous => "h",
        Basis::Schur => "s",
        Basis::HallLittlewood => "H",
        Basis::DualKschur(_) => "\\mathfrak{S}",
        Basis::KschurT(_) => "s",
    };
    let mut out = String::new();
    for (index, coeff) in f.coeffs() {
        let base = format!("{symbol}_{{{}}}", partition_latex(index));
        let rendered = coeff.render("t");
        let single_term = !rendered.contains(" + ") && !rendered.contains(" - ");
        // the sign moves out front only when the coefficient is one term
        let (negative, body) = if coeff.is_one() {
            (false, base)
        } else if (-coeff).is_one() {
            (true, base)
        } else if single_term {
            let magnitude = rendered.trim_start_matches('-');
            (rendered.starts_with('-'), format!("{magnitude}\\,{base}"))
        } else {
            (false, format!("({rendered})\\,{base}"))
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

fn eval_symfunc(f: &SymFunc, t0: i64) -> Result<SymFunc> {
    let coeffs = f
        .coeffs()
        .iter()
        .map(|(q, c)| (q.clone(), TPoly::from_coeffs(vec![c.eval_i64(t0)])))
        .collect();
    SymFunc::new(f.basis(), f.degree(), coeffs)
}

fn print_symfunc(f: &SymFunc, format: OutputFormat, t_eval: Option<i64>) -> Result<()> {
    let f = match t_eval {
        Some(t0) => eval_symfunc(f, t0)?,
        None => f.clone(),
    };
    match format {
        OutputFormat::Text => println!("{}", f.render_text()),
        OutputFormat::Json => println!("{}", serde_json::to_string(&f).unwrap()),
        OutputFormat::Latex => println!("{}", symfunc_latex(&f)),
    }
    Ok(())
}

fn render_abc_text(abc: &Abc) -> String {
    let mut lines = vec![format!(
        "k = {}  weight = {:?}  inner = {}",
        abc.k(),
        abc.weight(),
        abc.inner_shape().shape()
    )];
    for (j, row) in abc.rows().iter().enumerate() {
        let mut cells: Vec<String> = Vec::with_capacity(row.length as usize);
        let filled: std::collections::BTreeMap<u32, u32> =
            row.cells.iter().map(|c| (c.col, c.letter)).collect();
        for col in 1..=row.length {
            cells.push(match filled.get(&col) {
                Some(letter) => letter.to_string(),
                None => ".".to_string(),
            });
        }
        lines.push(format!("row {:>2}: {}", j + 1, cells.join(" ")));
    }
    lines.join("\n")
}

fn run_command(command: Command) -> Result<i32> {
    match command {
        Command::Core { direction } => {
            let (args, to_core) = match direction {
                CoreDirection::ToCore(a) => (a, true),
                CoreDirection::ToBounded(a) => (a, false),
            };
            let result = if to_core {
                let bounded = parse_partition(&args.partition)?;
                core_from_bounded(&bounded, args.k)?.shape().clone()
            } else {
                let core = parse_core(&args.partition, args.k)?;
                bounded_from_core(&core)
            };
            match args.format {
                OutputFormat::Latex => println!("{}", partition_latex(&result)),
                _ => println!("{result}"),
            }
            Ok(0)
        }
        Command::Strip(args) => {
            let inner = parse_core(&args.inner, args.k)?;
            let base = parse_core(&args.base, args.k)?;
            match bottom_strong_chain(&inner, &base)? {
                Some(chain) => match args.format {
                    OutputFormat::Json | OutputFormat::Text => {
                        println!("{}", serde_json::to_string(&chain).unwrap());
                    }
                    OutputFormat::Latex => {
                        let steps: Vec<String> = chain
                            .cores()
                            .iter()
                            .map(|c| partition_latex(c.shape()))
                            .collect();
                        println!("{}", steps.join(" \\lessdot "));
                    }
                },
                None => match args.format {
                    OutputFormat::Json => println!("null"),
                    _ => println!("not a strip"),
                },
            }
            Ok(0)
        }
        Command::Abc(args) => {
            let weight = parse_numbers(&args.weight)?;
            let inner = args
                .inner_shape
                .as_deref()
                .map(|text| parse_core(text, args.k))
                .transpose()?;
            let tableaux = abc_enumerate(args.k, &weight, inner.as_ref())?;
            match args.format {
                OutputFormat::Json => {
                    let mut items = Vec::with_capacity(tableaux.len());
                    for abc in &tableaux {
                        if args.stats {
                            items.push(json!({"abc": abc, "stats": stats(abc)?}));
                        } else {
                            items.push(serde_json::to_value(abc).unwrap());
                        }
                    }
                    println!("{}", serde_json::Value::Array(items));
                }
                _ => {
                    println!("{} tableaux", tableaux.len());
                    for abc in &tableaux {
                        println!();
                        println!("{}", render_abc_text(abc));
                        if args.stats {
                            let st = stats(abc)?;
                            println!(
                                "stats: charges = {:?}, off = {}, beta = {}, k-charge = {}",
                                st.charge_words, st.off, st.beta, st.k_charge
                            );
                        }
                    }
                }
            }
            Ok(0)
        }
        Command::Kostka(args) => {
            let km = kostka_matrix_k(args.k, args.degree)?;
            let entries: Vec<Vec<TPoly>> = km
                .matrix()
                .rows()
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|p| match args.t_eval {
                            Some(t0) => TPoly::from_coeffs(vec![p.eval_i64(t0)]),
                            None => p.clone(),
                        })
                        .collect()
                })
                .collect();
            match args.format {
                OutputFormat::Json => {
                    println!(
                        "{}",
                        json!({
                            "k": args.k,
                            "degree": args.degree,
                            "index": km.index(),
                            "matrix": entries,
                        })
                    );
                }
                OutputFormat::Text => {
                    let names: Vec<String> = km.index().iter().map(|q| q.to_string()).collect();
                    let rendered: Vec<Vec<String>> = entries
                        .iter()
                        .map(|row| row.iter().map(|p| p.to_string()).collect())
                        .collect();
                    let mut width = names.iter().map(String::len).max().unwrap_or(1);
                    for row in &rendered {
                        for cell in row {
                            width = width.max(cell.len());
                        }
                    }
                    let header: Vec<String> =
                        names.iter().map(|n| format!("{n:>width$}")).collect();
                    println!("{:>width$}  {}", "", header.join("  "));
                    for (name, row) in names.iter().zip(&rendered) {
                        let cells: Vec<String> =
                            row.iter().map(|c| format!("{c:>width$}")).collect();
                        println!("{name:>width$}  {}", cells.join("  "));
                    }
                }
                OutputFormat::Latex => {
                    let cols = "c".repeat(km.index().len());
                    println!("\\begin{{array}}{{r|{cols}}}");
                    let header: Vec<String> = km.index().iter().map(partition_latex).collect();
                    println!(" & {} \\\\\\hline", header.join(" & "));
                    for (q, row) in km.index().iter().zip(&entries) {
                        let cells: Vec<String> = row.iter().map(|p| p.render("t")).collect();
                        println!("{} & {} \\\\", partition_latex(q), cells.join(" & "));
                    }
                    println!("\\end{{array}}");
                }
            }
            Ok(0)
        }
        Command::Expand { what } => {
            match what {
                ExpandWhat::KschurT(args) => {
                    let lambda = parse_partition(&args.lambda)?;
                    let f = kschur_t(&lambda, args.k, args.basis.to_basis())?;
                    print_symfunc(&f, args.format, args.t_eval)?;
                }
                ExpandWhat::DualKschur(args) => {
                    let lambda = parse_partition(&args.lambda)?;
                    let f = dual_kschur_to_monomial(&lambda, args.k)?;
                    let f = convert(&f, args.basis.to_basis())?;
                    print_symfunc(&f, args.format, args.t_eval)?;
                }
                ExpandWhat::Hl(args) => {
                    let mu = parse_partition(&args.mu)?;
                    let f = hall_littlewood_to_schur(&mu)?;
                    let f = convert(&f, args.basis.to_basis())?;
                    print_symfunc(&f, args.format, args.t_eval)?;
                }
            }
            Ok(0)
        }
        Command::Charge { what } => {
            match what {
                ChargeWhat::Word { letters } => {
                    let word = parse_numbers(&letters)?;
                    println!("{}", crate::charge::charge_word(&word)?);
                }
                ChargeWhat::Subwords { letters } => {
                    let word = parse_numbers(&letters)?;
                    let subs = crate::charge::charge_subwords(&word)?;
                    println!("{}", serde_json::to_string(&subs).unwrap());
                }
                ChargeWhat::Abc { file } => {
                    let text = if file == "-" {
                        use std::io::Read;
                        let mut buf = String::new();
                        std::io::stdin()
                            .read_to_string(&mut buf)
                            .map_err(|e| Error::InputError(e.to_string()))?;
                        buf
                    } else {
                        std::fs::read_to_string(&file)
                            .map_err(|e| Error::InputError(format!("{file}: {e}")))?
                    };
                    let abc: Abc = serde_json::from_str(&text)
                        .map_err(|e| Error::InputError(format!("bad tableau JSON: {e}")))?;
                    println!("{}", serde_json::to_string(&stats(&abc)?).unwrap());
                }
            }
            Ok(0)
        }
        Command::Verify(args) => {
            let (k_lo, k_hi) = parse_k_range(&args.k_range)?;
            let opts = VerifyOptions {
                max_n: args.max_n,
                k_range: (k_lo, k_hi),
                max_core_degree: args.max_core_degree,
            };
            if !SUITES.contains(&args.suite.as_str()) {
                return Err(Error::InputError(format!(
                    "unknown suite {:?}; expected one of {}",
                    args.suite,
                    SUITES.join(", ")
                )));
            }
            let results = run_suite(&args.suite, &opts)?;
            let mut failed = 0;
            for check in &results {
                if check.passed {
                    println!("ok      {} — {}", check.name, check.details);
                } else {
                    failed += 1;
                    println!("FAILED  {} — {}", check.name, check.details);
                }
            }
            println!(
                "suite {}: {} passed, {} failed",
                args.suite,
                results.len() - failed,
                failed
            );
            Ok(if failed > 0 { 2 } else { 0 })
        }
    }
}

/// Parses arguments and runs; returns the process exit code.
pub fn main_entry<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return code;
        }
    };
    match run_command(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            if err.is_anomaly() {
                3
            } else {
                1
            }
        }
    }
}
