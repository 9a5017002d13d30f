//! `sll`: command-line front end.
//!
//! Exit status 0 means every check passed, 1 that a mathematical check
//! failed (or `--expect-simple` was not met), 2 that the input or the
//! command line was unusable.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use sll_core::analyze::DEFAULT_ORACLE_BOUND;
use sll_core::exactlin::{Field, FieldDescriptor, PrimeField, Rationals};
use sll_core::iocli::generators::{example1, example1_cartan, example2, example2_cartan};
use sll_core::iocli::report::{analyze_report, check_report, connect_report, decompose_report, split_report};
use sll_core::iocli::{fuzz_corpus, parse_field_flag, AlgebraDocument, AnalyzeOptions, AnyLoaded, ConnectRequest, Meta, Outcome, Report};
use sll_core::splitdec::Upsilon;

const BOUND_ENV: &str = "SLL_ORACLE_BOUND";

#[derive(Parser)]
#[command(name = "sll", version, about = "Exact analysis of split Leibniz superalgebras")]
struct Cli {
    /// Print the machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Base field, `Q` or `Fp:p`; overrides the document's field.
    #[arg(long, global = true, value_name = "FIELD")]
    field: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Example {
    Example1,
    Example2,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    #[value(name = "I")]
    I,
    #[value(name = "notI")]
    NotI,
}

#[derive(Subcommand)]
enum Command {
    /// Check the grading and the right super Leibniz identity.
    Check { file: PathBuf },
    /// Root space decomposition over the document's Cartan generators.
    Split { file: PathBuf },
    /// Connection classes, or a witness between two roots.
    Connect {
        file: PathBuf,
        /// Source root, `v1,v2,...`, or `v1,...@p` for a graded slot.
        #[arg(long, requires = "to", allow_hyphen_values = true)]
        from: Option<String>,
        #[arg(long, requires = "from", allow_hyphen_values = true)]
        to: Option<String>,
        /// Use graded connections restricted to one side of the partition.
        #[arg(long)]
        neg_i: bool,
        #[arg(long, value_enum, default_value = "notI", requires = "neg_i")]
        upsilon: Side,
    },
    /// Decomposition into class ideals plus a complement in H.
    Decompose { file: PathBuf },
    /// Hypotheses, simplicity verdicts and classification.
    Analyze {
        file: PathBuf,
        /// Largest number of candidate ideals the oracle may test.
        #[arg(long, value_name = "N")]
        oracle_bound: Option<u64>,
        /// Exit with status 1 unless the verdict is Simple.
        #[arg(long)]
        expect_simple: bool,
    },
    /// Write one of the built-in examples.
    Gen {
        #[arg(value_enum)]
        which: Example,
        #[arg(long)]
        n: Option<usize>,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Write a deterministic corpus of valid algebras.
    Fuzz {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        count: usize,
        #[arg(short, long, value_name = "DIR")]
        output: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, report: &Report) -> Outcome {
    if cli.json {
        print!("{}", report.to_json_string());
    } else {
        print!("{}", report.to_human());
    }
    report.outcome
}

fn load(path: &Path, field: Option<FieldDescriptor>) -> anyhow::Result<AnyLoaded> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let doc = AlgebraDocument::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
    doc.load(field).with_context(|| format!("loading {}", path.display()))
}

fn oracle_bound(flag: Option<u64>) -> anyhow::Result<u64> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BOUND_ENV) {
        Ok(v) => v.trim().parse().with_context(|| format!("{BOUND_ENV}={v:?} is not a number")),
        Err(_) => Ok(DEFAULT_ORACLE_BOUND),
    }
}

/// Runs `$body` with `$l` bound to the loaded algebra over its own field.
macro_rules! with_loaded {
    ($any:expr, $l:ident => $body:expr) => {
        match $any {
            AnyLoaded::Q(mut $l) => $body,
            AnyLoaded::Fp(mut $l) => $body,
        }
    };
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let field = cli.field.as_deref().map(parse_field_flag).transpose()?;
    let report = match &cli.command {
        Command::Check { file } => with_loaded!(load(file, field)?, l => check_report(&mut l.algebra)),
        Command::Split { file } => with_loaded!(load(file, field)?, l => split_report(&mut l.algebra, l.cartan.as_deref())?),
        Command::Connect { file, from, to, neg_i, upsilon } => {
            let req = ConnectRequest {
                from: from.clone(),
                to: to.clone(),
                neg_i: neg_i.then_some(match upsilon {
                    Side::I => Upsilon::I,
                    Side::NotI => Upsilon::NotI,
                }),
            };
            with_loaded!(load(file, field)?, l => connect_report(&mut l.algebra, l.cartan.as_deref(), &req)?)
        }
        Command::Decompose { file } => {
            with_loaded!(load(file, field)?, l => decompose_report(&mut l.algebra, l.cartan.as_deref())?)
        }
        Command::Analyze { file, oracle_bound: bound, expect_simple } => {
            let opts = AnalyzeOptions { oracle_bound: oracle_bound(*bound)?, expect_simple: *expect_simple };
            with_loaded!(load(file, field)?, l => analyze_report(&mut l.algebra, l.cartan.as_deref(), opts)?)
        }
        Command::Gen { which, n, output } => return generate(field.unwrap_or(FieldDescriptor::Rationals), *which, *n, output.as_deref()),
        Command::Fuzz { seed, count, output } => return fuzz(cli, *seed, *count, output),
    };
    Ok(emit(cli, &report))
}

fn example_document<F: Field>(field: F, which: Example, n: Option<usize>) -> anyhow::Result<AlgebraDocument> {
    let (alg, cartan, name) = match which {
        Example::Example1 => {
            if n.is_some() {
                bail!("--n only applies to example2");
            }
            if field.characteristic() == 2 {
                bail!("example1 needs characteristic other than 2");
            }
            let a = example1(field);
            let h = example1_cartan(&a);
            (a, h, "example1".to_string())
        }
        Example::Example2 => {
            let n = n.ok_or_else(|| anyhow!("example2 needs --n"))?;
            if n == 0 {
                bail!("example2 needs n >= 1");
            }
            let a = example2(field, n);
            let h = example2_cartan(&a);
            (a, h, format!("example2(n={n})"))
        }
    };
    Ok(AlgebraDocument::from_algebra(&alg, Some(&cartan), Meta { name: Some(name), ..Meta::default() }))
}

fn generate(field: FieldDescriptor, which: Example, n: Option<usize>, output: Option<&Path>) -> anyhow::Result<Outcome> {
    let doc = match field {
        FieldDescriptor::Rationals => example_document(Rationals, which, n)?,
        FieldDescriptor::PrimeField(p) => example_document(PrimeField::new(p as u64)?, which, n)?,
    };
    let text = doc.to_canonical_json();
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(Outcome::Pass)
}

fn fuzz(cli: &Cli, seed: u64, count: usize, dir: &Path) -> anyhow::Result<Outcome> {
    if cli.field.is_some() {
        bail!("the fuzz corpus is built over Q only");
    }
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut files = Vec::new();
    for (index, m) in fuzz_corpus(seed, count).into_iter().enumerate() {
        let name = format!("fuzz-{seed}-{index:04}.json");
        let path = dir.join(&name);
        fs::write(&path, m.document.to_canonical_json()).with_context(|| format!("writing {}", path.display()))?;
        files.push(json!({ "file": name, "provenance": m.provenance, "dim": m.document.dim }));
    }
    let report = Report { command: "fuzz", outcome: Outcome::Pass, body: json!({ "seed": seed, "count": count, "members": files }) };
    Ok(emit(cli, &report))
}
