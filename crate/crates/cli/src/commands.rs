use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use rug::float::Round;
use rug::Float;
use serde::Serialize;
use serde_json::json;

use gosc_core::gfunc::{conditional_bound, upper_bound_g, Direction};
use gosc_core::goldbach::{compare_explicit_formula, summaries_to_csv, GOLDBACH_PREC};
use gosc_core::otr::{
    figure1_witnesses, run_pipeline, verify_witness, PipelineOptions, PipelineOutcome, Witness,
    WitnessKind,
};
use gosc_core::report::{format_fixed, parse_decimal, truncate};
use gosc_core::{ApproxProblem, ZeroTable};

use crate::output::{csv, emit, json_document, reject_format};
use crate::{
    ConditionalArgs, Figure1Args, FixturesArgs, Format, GoldbachArgs, OtrArgs, UpperBoundArgs,
};

fn load_table(path: &Path) -> Result<ZeroTable> {
    log::info!("loading {}", path.display());
    let table = ZeroTable::load(path, 0)
        .with_context(|| format!("loading zero table {}", path.display()))?;
    log::info!(
        "{}: {} ordinates at {} bits",
        table.id(),
        table.count(),
        table.precision_bits()
    );
    Ok(table)
}

fn decimal(s: &str, name: &str, prec: u32) -> Result<Float> {
    parse_decimal(s, prec).with_context(|| format!("--{name}: not a decimal number: {s:?}"))
}

pub fn upper_bound(args: &UpperBoundArgs, default_table: &str) -> Result<()> {
    let c = &args.common;
    let prec = c.precision;
    let table = load_table(&c.table_or(default_table))?;
    let t1 = decimal(&args.t1, "t1", prec)?;
    let t2 = decimal(&args.t2, "t2", prec)?;
    let report = upper_bound_g(&table, &t1, &t2, prec)?;
    let body = match c.format_or(Format::Json) {
        Format::Json => json_document(
            "upper-bound",
            json!({ "table": table.id(), "report": report.to_record(12) }),
        )?,
        Format::Text => format!("sup |G(x)| < {}\n", report.value_decimal(9)),
        f => return reject_format(f, "upper-bound"),
    };
    emit(c.out.as_deref(), &body)
}

#[derive(Serialize)]
struct ConditionalRow {
    n: usize,
    /// Truncated to six decimals.
    value: String,
    value_12: String,
}

pub fn conditional_table(args: &ConditionalArgs, default_table: &str) -> Result<()> {
    let c = &args.common;
    let prec = c.precision;
    let table = load_table(&c.table_or(default_table))?;
    let eps = decimal(&args.eps, "eps", prec)?;
    let mut rows = Vec::with_capacity(args.n.len());
    for &n in &args.n {
        let report = conditional_bound(&table, n, &eps, Direction::Positive, prec)
            .with_context(|| format!("N = {n}"))?;
        rows.push(ConditionalRow {
            n,
            value: truncate(&report.value, 6),
            value_12: report.value_decimal(12),
        });
    }
    let body = match c.format_or(Format::Json) {
        Format::Json => json_document(
            "conditional-table",
            json!({ "table": table.id(), "eps": args.eps, "precision_bits": prec, "rows": rows }),
        )?,
        Format::Csv => csv(
            &["n", "value"],
            &rows
                .iter()
                .map(|r| vec![r.n.to_string(), r.value.clone()])
                .collect::<Vec<_>>(),
        ),
        Format::Text => {
            let mut out = String::new();
            for r in &rows {
                writeln!(out, "{:>6}  {}", r.n, r.value)?;
            }
            out
        }
    };
    emit(c.out.as_deref(), &body)
}

fn witness_json(w: &Witness) -> serde_json::Value {
    json!({
        "record": w.to_record(),
        "depth": w.n,
        "eps_6": w.eps_decimal(6),
        "bound_7": w.bound_decimal(7),
        "numerator_bits": w.numerator.significant_bits(),
        "negated": w.negated,
    })
}

fn write_witnesses(dir: &Path, outcome: &PipelineOutcome) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let p = &outcome.problem;
    let mut paths = Vec::new();
    for w in [&outcome.inhomogeneous, &outcome.homogeneous] {
        let path = dir.join(format!("witness-n{}-b{}-{}.txt", p.n, p.b, w.kind.as_str()));
        fs::write(&path, w.to_text()).with_context(|| format!("writing {}", path.display()))?;
        log::info!("wrote {}", path.display());
        paths.push(path);
    }
    Ok(paths)
}

pub fn otr(args: &OtrArgs, default_table: &str) -> Result<()> {
    let c = &args.common;
    let table = load_table(&c.table_or(default_table))?;
    let threshold: f64 = args
        .eps
        .parse()
        .with_context(|| format!("--eps: not a number: {:?}", args.eps))?;
    let options = PipelineOptions {
        eps_threshold: threshold,
        prec: c.precision,
        ..PipelineOptions::default()
    };

    let mut b = args.bits;
    let mut attempt = 0;
    let outcome = loop {
        attempt += 1;
        let problem = ApproxProblem::new(args.n, b, args.c, args.d, &table)?;
        log::info!("attempt {attempt}: N = {}, b = {b}, c = {}, d = {}", args.n, args.c, args.d);
        let outcome = run_pipeline(&problem, &table, &options)?;
        match &outcome.advisory {
            Some(note) if attempt <= args.retries => {
                log::warn!("{note}");
                b += args.bits_step.unwrap_or((b / 4).max(1));
            }
            Some(note) => {
                log::warn!("{note}");
                break outcome;
            }
            None => break outcome,
        }
    };

    let dir = match (&args.witness_dir, &c.out) {
        (Some(d), _) => d.clone(),
        (None, Some(out)) => out.parent().map(Path::to_path_buf).unwrap_or_default(),
        (None, None) => PathBuf::from("."),
    };
    let dir = if dir.as_os_str().is_empty() { PathBuf::from(".") } else { dir };
    write_witnesses(&dir, &outcome)?;

    let (wi, wh) = (&outcome.inhomogeneous, &outcome.homogeneous);
    let p = &outcome.problem;
    let body = match c.format_or(Format::Json) {
        Format::Json => json_document(
            "otr",
            json!({
                "table": table.id(),
                "problem": { "n": p.n, "b": p.b, "c": p.c, "d": p.d },
                "attempts": attempt,
                "precision_bits": c.precision,
                "eps1": wi.eps_decimal(6),
                "eps2": wh.eps_decimal(6),
                "positive": outcome.positive.to_record(12),
                "negative": outcome.negative.to_record(12),
                "witnesses": [witness_json(wi), witness_json(wh)],
                "advisory": outcome.advisory,
                "reduction": {
                    "iterations": outcome.stats.iterations,
                    "escalations": outcome.stats.escalations,
                    "backend": format!("{:?}", outcome.stats.backend),
                },
            }),
        )?,
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "N {}  b {}  c {}  d {}", p.n, p.b, p.c, p.d)?;
            writeln!(out, "eps1 {}", wi.eps_decimal(6))?;
            writeln!(out, "eps2 {}", wh.eps_decimal(6))?;
            writeln!(out, "lower {}", wh.bound_decimal(7))?;
            writeln!(out, "upper {}", wi.bound_decimal(7))?;
            if let Some(note) = &outcome.advisory {
                writeln!(out, "advisory {note}")?;
            }
            out
        }
        f => return reject_format(f, "otr"),
    };
    emit(c.out.as_deref(), &body)
}

pub fn verify_figure1(args: &Figure1Args, default_table: &str) -> Result<()> {
    let c = &args.common;
    if args.depth == 0 {
        bail!("--depth must be at least 1");
    }
    let table = load_table(&c.table_or(default_table))?;
    let published = figure1_witnesses();
    let mut results = Vec::new();
    for (kind, numerator) in [
        (WitnessKind::Inhomogeneous, &published.y_numerator),
        (WitnessKind::Homogeneous, &published.z_numerator),
    ] {
        log::info!("certifying {} witness over {} zeros", kind.as_str(), args.depth);
        let w = verify_witness(numerator, published.c, kind, args.depth, &table, c.precision)?;
        results.push(w);
    }
    let body = match c.format_or(Format::Json) {
        Format::Json => json_document(
            "verify-figure1",
            json!({
                "table": table.id(),
                "depth": args.depth,
                "precision_bits": c.precision,
                "witnesses": results.iter().map(witness_json).collect::<Vec<_>>(),
            }),
        )?,
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "depth {}", args.depth)?;
            for w in &results {
                writeln!(
                    out,
                    "{:<14} eps {}  bound {}",
                    w.kind.as_str(),
                    w.eps_decimal(6),
                    w.bound_decimal(7)
                )?;
            }
            out
        }
        f => return reject_format(f, "verify-figure1"),
    };
    emit(c.out.as_deref(), &body)
}

pub fn goldbach(args: &GoldbachArgs, default_table: &str) -> Result<()> {
    let c = &args.common;
    let prec = c.precision.max(GOLDBACH_PREC);
    let table = load_table(&c.table_or(default_table))?;
    let t = decimal(&args.t, "t", prec)?;
    let mut rows = Vec::with_capacity(args.x.len());
    for &x in &args.x {
        log::info!("x = {x}");
        rows.push(compare_explicit_formula(x, &table, &t, args.max_x, prec)?);
    }
    let body = match c.format_or(Format::Csv) {
        Format::Csv => summaries_to_csv(&rows, 20),
        Format::Json => {
            let fmt = |v: &Float| v.to_string_radix(10, Some(20));
            let items: Vec<_> = rows
                .iter()
                .map(|r| {
                    json!({
                        "x": r.x,
                        "sum_r": fmt(&r.sum_r),
                        "main_term": fmt(&r.main_term),
                        "zero_term": fmt(&r.zero_term),
                        "residual": fmt(&r.residual),
                        "relative_residual": format_fixed(&r.relative_residual(), 8, Round::Up),
                    })
                })
                .collect();
            json_document(
                "goldbach",
                json!({ "table": table.id(), "t": args.t, "precision_bits": prec, "rows": items }),
            )?
        }
        Format::Text => {
            let mut out = String::new();
            for r in &rows {
                writeln!(
                    out,
                    "x {}  residual/main {}",
                    r.x,
                    format_fixed(&r.relative_residual(), 8, Round::Up)
                )?;
            }
            out
        }
    };
    emit(c.out.as_deref(), &body)
}

#[derive(Serialize)]
struct FixtureInfo {
    path: String,
    id: String,
    count: usize,
    digits: u32,
    precision_bits: u32,
    first: String,
    last: String,
}

pub fn fixtures_check(args: &FixturesArgs, defaults: &[&str]) -> Result<()> {
    let paths: Vec<PathBuf> = if args.tables.is_empty() {
        defaults.iter().map(PathBuf::from).collect()
    } else {
        args.tables.clone()
    };
    let mut infos = Vec::new();
    for path in &paths {
        let table = load_table(path)?;
        infos.push(FixtureInfo {
            path: path.display().to_string(),
            id: table.id().to_string(),
            count: table.count(),
            digits: table.decimal_digits(),
            precision_bits: table.precision_bits(),
            first: table.gamma(1).to_string_radix(10, Some(30)),
            last: table.last().to_string_radix(10, Some(30)),
        });
    }
    let body = match args.format {
        Format::Json => json_document("gen-fixtures-check", json!({ "tables": infos }))?,
        Format::Text => {
            let mut out = String::new();
            for i in &infos {
                writeln!(
                    out,
                    "ok {}  {} zeros  {} digits ({} bits)  last {}",
                    i.id, i.count, i.digits, i.precision_bits, i.last
                )?;
            }
            out
        }
        f => return reject_format(f, "gen-fixtures-check"),
    };
    emit(args.out.as_deref(), &body)
}
