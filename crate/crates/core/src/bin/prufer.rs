use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use prufer::almost_dedekind::{weak_factorize, MIN_TRUNCATION};
use prufer::format::{FamilyFile, FiniteFile, PresentationFile};
use prufer::oracle::{v_closure_oracle, DEFAULT_BOUND};
use prufer::suite::{run_suite, Suite, SuiteConfig};
use prufer::LocalOp;

#[derive(Parser)]
#[command(name = "prufer", version, about = "Ideal arithmetic and factorization in Prüfer domains")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpKind {
    Product,
    Sum,
    Intersect,
    Radical,
    Trace,
}

#[derive(Subcommand)]
enum Command {
    /// Factor an ideal as its divisorial closure times maximal ideals.
    Factor { file: PathBuf, ideal: String },
    /// Divisorial closure of an ideal.
    Closure { file: PathBuf, ideal: String },
    /// Apply an ideal operation.
    Op {
        #[arg(long, value_enum)]
        kind: OpKind,
        file: PathBuf,
        i: String,
        j: Option<String>,
    },
    /// Run property suites.
    Verify {
        #[arg(long, value_parser = |s: &str| s.parse::<Suite>())]
        suite: Suite,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long)]
        trunc: Option<u32>,
        #[arg(long)]
        bound: Option<i64>,
    },
}

/// Outcome of a command: printable output plus whether every verdict held.
struct Outcome {
    json: serde_json::Value,
    table: String,
    ok: bool,
}

fn input_error(e: impl Display) -> String {
    e.to_string()
}

fn load(path: &Path) -> Result<PresentationFile, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    PresentationFile::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn to_json<T: Serialize>(x: &T) -> serde_json::Value {
    serde_json::to_value(x).expect("serializable")
}

fn factor(file: &PresentationFile, name: &str) -> Result<Outcome, String> {
    match file {
        PresentationFile::Finite(f) => {
            let i = f.ideal(name).map_err(input_error)?;
            let fac = f.domain.strong_factorize(i).map_err(input_error)?;
            let table = format!(
                "{name} = ({}) * {}\ncertificate: product {}, irredundant {}\n",
                fac.divisorial_part,
                if fac.factors.is_empty() { "R".to_string() } else { fac.factors.join(" * ") },
                fac.certificate.product_matches,
                fac.certificate.irredundant,
            );
            Ok(Outcome { json: to_json(&fac), table, ok: fac.certificate.holds() })
        }
        PresentationFile::Family(f) => {
            let i = f.ideal(name).map_err(input_error)?;
            let w = weak_factorize(&f.presentation, i).map_err(input_error)?;
            let factors: Vec<String> = w.exponents.iter().map(|(n, t)| format!("M{n}^{t}")).collect();
            let table = format!(
                "{name} = ({}) * {}\ncertified {}, principal values agree {}\n",
                w.divisorial_part,
                if factors.is_empty() { "R".to_string() } else { factors.join(" * ") },
                w.certified,
                w.principal_values_agree,
            );
            let ok = w.certified && w.principal_values_agree;
            Ok(Outcome { json: to_json(&w), table, ok })
        }
    }
}

fn closure(file: &PresentationFile, name: &str) -> Result<Outcome, String> {
    match file {
        PresentationFile::Finite(f) => {
            let i = f.ideal(name).map_err(input_error)?;
            let d = &f.domain;
            let (v, method) = if d.is_hlocal() {
                (d.v_closure(i), "closed form")
            } else {
                (v_closure_oracle(d, i, DEFAULT_BOUND), "oracle")
            };
            let v = v.map_err(input_error)?;
            let divisorial = v == *i;
            let table = format!("{name}^v = {v}\ndivisorial: {divisorial}\nmethod: {method}\n");
            let json = json!({ "closure": v, "divisorial": divisorial, "method": method });
            Ok(Outcome { json, table, ok: true })
        }
        PresentationFile::Family(f) => {
            let p = profile(f, name)?;
            let v = p.v_closure().map_err(input_error)?;
            let divisorial = v == p;
            let table = format!("{name}^v = {v}\ndivisorial: {divisorial}\n");
            Ok(Outcome { json: json!({ "closure": v, "divisorial": divisorial }), table, ok: true })
        }
    }
}

fn profile(f: &FamilyFile, name: &str) -> Result<prufer::almost_dedekind::IdealProfile, String> {
    f.ideal(name).and_then(|i| i.profile(&f.presentation)).map_err(input_error)
}

fn second<'a>(j: &'a Option<String>, kind: &str) -> Result<&'a str, String> {
    j.as_deref().ok_or_else(|| format!("{kind} needs two ideals"))
}

fn finite_op(f: &FiniteFile, kind: OpKind, i: &str, j: &Option<String>) -> Result<Outcome, String> {
    let d = &f.domain;
    let a = f.ideal(i).map_err(input_error)?;
    let binary = |op: LocalOp, label: &str| -> Result<Outcome, String> {
        let b = f.ideal(second(j, label)?).map_err(input_error)?;
        let r = d.combine(op, a, b).map_err(input_error)?;
        Ok(Outcome { table: format!("{r}\n"), json: json!({ "result": r }), ok: true })
    };
    match kind {
        OpKind::Product => binary(LocalOp::Product, "product"),
        OpKind::Sum => binary(LocalOp::Sum, "sum"),
        OpKind::Intersect => binary(LocalOp::Intersect, "intersect"),
        OpKind::Radical => {
            let r = d.radical(a).map_err(input_error)?;
            Ok(Outcome { table: format!("{r}\n"), json: json!({ "result": r }), ok: true })
        }
        OpKind::Trace => {
            let t = d.trace_and_invertibility(a).map_err(input_error)?;
            let table = format!("{}\ninvertible: {}\nclosure invertible: {}\n", t.trace, t.invertible, t.iv_invertible);
            Ok(Outcome { json: to_json(&t), table, ok: true })
        }
    }
}

fn family_op(f: &FamilyFile, kind: OpKind, i: &str, j: &Option<String>) -> Result<Outcome, String> {
    let a = profile(f, i)?;
    let r = match kind {
        OpKind::Product => a.product(&profile(f, second(j, "product")?)?),
        OpKind::Sum => a.sum(&profile(f, second(j, "sum")?)?),
        OpKind::Intersect => a.intersect(&profile(f, second(j, "intersect")?)?),
        OpKind::Trace => a.inverse().and_then(|inv| a.product(&inv)),
        OpKind::Radical => return Err("radical is only available for finite presentations".into()),
    }
    .map_err(input_error)?;
    Ok(Outcome { table: format!("{r}\n"), json: json!({ "result": r }), ok: true })
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    match &cli.command {
        Command::Factor { file, ideal } => factor(&load(file)?, ideal),
        Command::Closure { file, ideal } => closure(&load(file)?, ideal),
        Command::Op { kind, file, i, j } => match load(file)? {
            PresentationFile::Finite(f) => finite_op(&f, *kind, i, j),
            PresentationFile::Family(f) => family_op(&f, *kind, i, j),
        },
        Command::Verify { suite, seed, cases, trunc, bound } => {
            let mut config = SuiteConfig { seed: *seed, cases: *cases, ..SuiteConfig::default() };
            if let Some(k) = trunc {
                if *k < MIN_TRUNCATION {
                    return Err(format!("--trunc must be at least {MIN_TRUNCATION}"));
                }
                config.truncation = *k;
            }
            if let Some(b) = bound {
                config.bound = *b;
            }
            let report = run_suite(*suite, &config);
            Ok(Outcome { json: to_json(&report), table: report.to_table(), ok: report.passed })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json")),
                Format::Table => print!("{}", out.table),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
