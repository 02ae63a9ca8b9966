//! The `sclkit` command line: argument parsing, dispatch, and output in JSON
//! or as aligned text tables.

pub mod json;
mod table;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use sclkit::fatgraph::factor_contribution;
use sclkit::{
    certificate_check, cl_lower_bound, cl_version_bound, compute_scl, default_k_max,
    enumerate_irreducible, multi_factor_bound, parse_rational, parse_word, AlternatingWord,
    CheckStatus, ClBoundQuery, Error, ExactScl, FactorOrder, FactorSignature, Fatgraph, Rational,
    SclOptions,
};

use json::{
    BoundDocument, CheckEntry, ClBoundDocument, Contribution, DiskEntry, DisksDocument,
    FactorDisks, FatgraphDocument, Fraction, SclDocument, SelftestEntry,
};
use table::Table;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("{0} does not fit in a 64-bit fraction")]
    Overflow(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    /// 2 for malformed input, 1 for everything the mathematics rejects.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_)
            | CliError::Core(Error::Syntax { .. })
            | CliError::Core(Error::UnknownGenerator(_))
            | CliError::Core(Error::InvalidSignature(_)) => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(
    name = "sclkit",
    version,
    about = "Exact stable commutator length in free products of cyclic groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact scl of an alternating word, with a checkable certificate.
    Scl {
        #[arg(long)]
        word: String,
        /// Comma-separated factor orders, `inf` for infinite cyclic.
        #[arg(long)]
        orders: String,
        /// Disk length bound for infinite-order factors.
        #[arg(long, env = "SCLKIT_KMAX")]
        kmax: Option<usize>,
    },
    /// The closed-form lower bound `1/2 − 1/N`.
    Bound {
        #[arg(long)]
        word: String,
        #[arg(long)]
        orders: String,
    },
    /// Lower bounds for the commutator length of a product of powers.
    ClBound {
        /// Comma-separated powers `n_1,...,n_m`.
        #[arg(
            long,
            value_delimiter = ',',
            allow_negative_numbers = true,
            required = true
        )]
        powers: Vec<i64>,
        /// scl of the base element as `p/q`; computed from `--word` otherwise.
        #[arg(long)]
        scl: Option<String>,
        #[arg(long)]
        word: Option<String>,
        /// Factor orders of `--word`, or a single least order `N`.
        #[arg(long)]
        orders: Option<String>,
    },
    /// Irreducible disk vectors of both factors.
    Disks {
        #[arg(long)]
        word: String,
        #[arg(long)]
        orders: String,
        #[arg(long, env = "SCLKIT_KMAX")]
        kmax: Option<usize>,
    },
    /// Runs the certificate checks on a fatgraph file.
    CheckFatgraph {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        word: String,
        #[arg(long, default_value = "inf,inf")]
        orders: String,
    },
    /// Runs the acceptance suite.
    Selftest,
}

/// What a successful run prints; `failed` still prints but exits nonzero.
#[derive(Debug, Default)]
pub struct Output {
    pub stdout: String,
    pub warnings: Vec<String>,
    pub failed: Option<String>,
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Scl { word, orders, kmax } => scl(word, orders, *kmax, cli.format),
        Command::Bound { word, orders } => bound(word, orders, cli.format),
        Command::ClBound {
            powers,
            scl,
            word,
            orders,
        } => cl_bound(
            powers,
            scl.as_deref(),
            word.as_deref(),
            orders.as_deref(),
            cli.format,
        ),
        Command::Disks { word, orders, kmax } => disks(word, orders, *kmax, cli.format),
        Command::CheckFatgraph { file, word, orders } => {
            check_fatgraph(file, word, orders, cli.format)
        }
        Command::Selftest => selftest(cli.format),
    }
}

fn to_json<T: serde::Serialize>(doc: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(doc)? + "\n")
}

fn frac(r: &Rational) -> Result<Fraction, CliError> {
    Fraction::try_from(r)
}

fn alternating(word: &str, orders: &str) -> Result<AlternatingWord, CliError> {
    Ok(AlternatingWord::parse(
        word,
        &FactorSignature::parse(orders)?,
    )?)
}

/// Computes scl, falling back to the unconfirmed upper bound when the
/// saturation check fails.
pub fn solve(
    w: &AlternatingWord,
    k_max: Option<usize>,
) -> Result<(ExactScl, Vec<String>), CliError> {
    let opts = SclOptions {
        k_max,
        skip_saturation: false,
    };
    match compute_scl::<Rational>(w, &opts) {
        Ok(r) => Ok((r, Vec::new())),
        Err(e @ Error::BoundTooSmall { .. }) => {
            let opts = SclOptions {
                skip_saturation: true,
                ..opts
            };
            let r = compute_scl::<Rational>(w, &opts)?;
            Ok((
                r,
                vec![format!(
                    "{e}; reporting an upper bound, rerun with a larger --kmax"
                )],
            ))
        }
        Err(e) => Err(e.into()),
    }
}

fn scl(word: &str, orders: &str, k_max: Option<usize>, format: Format) -> Result<Output, CliError> {
    let w = alternating(word, orders)?;
    let (r, warnings) = solve(&w, k_max)?;
    let doc = SclDocument::from_result(&r)?;
    let stdout = match format {
        Format::Json => to_json(&doc)?,
        Format::Table => {
            let mut t = Table::new();
            t.row("word", &doc.word)
                .row("orders", &doc.orders)
                .row("L", doc.len)
                .row("scl", &r.value)
                .row("exact", doc.exact)
                .row("bound kind", &doc.bound_kind)
                .row("objective", &r.opt_objective);
            let mut out = t.render();
            for (side, d) in [
                ("A", &doc.certificate.decomp_a),
                ("B", &doc.certificate.decomp_b),
            ] {
                out.push_str(&format!("\ndisks on side {side} (total {})\n", d.objective));
                let mut t = Table::new();
                for term in &d.terms {
                    t.row(&term.weight, format!("{:?}", term.sequence));
                }
                out.push_str(&t.render());
            }
            out
        }
    };
    Ok(Output {
        stdout,
        warnings,
        failed: None,
    })
}

fn bound(word: &str, orders: &str, format: Format) -> Result<Output, CliError> {
    let sig = FactorSignature::parse(orders)?;
    let w = parse_word(word, &sig)?;
    let value: Rational = multi_factor_bound(&w, &sig)?;
    let least = w
        .letters()
        .iter()
        .map(|l| sig.order(l.factor).element_order(l.exponent))
        .min()
        .unwrap_or(FactorOrder::Infinite);
    let doc = BoundDocument {
        word: word.to_string(),
        orders: sig.to_string(),
        least_order: least.to_string(),
        value: frac(&value)?,
    };
    let stdout = match format {
        Format::Json => to_json(&doc)?,
        Format::Table => Table::new()
            .row("word", &doc.word)
            .row("orders", &doc.orders)
            .row("N", &doc.least_order)
            .row("bound", &value)
            .render(),
    };
    Ok(Output {
        stdout,
        ..Default::default()
    })
}

fn cl_bound(
    powers: &[i64],
    scl_text: Option<&str>,
    word: Option<&str>,
    orders: Option<&str>,
    format: Format,
) -> Result<Output, CliError> {
    let q = ClBoundQuery::new(powers.to_vec())?;
    let mut warnings = Vec::new();
    let (scl_value, least) = match (scl_text, word, orders) {
        (Some(text), None, orders) => {
            let v = parse_rational(text)
                .ok_or_else(|| CliError::Usage(format!("--scl {text:?} is not a rational")))?;
            let least = orders.map(FactorOrder::parse).transpose()?;
            (v, least)
        }
        (None, Some(word), Some(orders)) => {
            let w = alternating(word, orders)?;
            let (r, warn) = solve(&w, None)?;
            warnings = warn;
            if !r.exact {
                warnings.push("scl is only an upper bound, so the cl bounds are not proven".into());
            }
            (r.value, Some(w.min_order()))
        }
        _ => {
            return Err(CliError::Usage(
                "give either --scl (optionally with --orders N) or --word with --orders".into(),
            ))
        }
    };
    let lower = cl_lower_bound(&q, &scl_value)?;
    let doc = ClBoundDocument {
        powers: powers.to_vec(),
        scl: frac(&scl_value)?,
        lower_bound: frac(&lower)?,
        version_bound: least.map(|n| cl_version_bound(&q, n)),
        least_order: least.map(|n| n.to_string()),
    };
    let stdout = match format {
        Format::Json => to_json(&doc)?,
        Format::Table => {
            let mut t = Table::new();
            t.row("powers", format!("{powers:?}"))
                .row("scl", &scl_value)
                .row("cl lower bound", &lower);
            if let (Some(b), Some(n)) = (doc.version_bound, &doc.least_order) {
                t.row("N", n).row("2cl - 2 lower bound", b);
            }
            t.render()
        }
    };
    Ok(Output {
        stdout,
        warnings,
        failed: None,
    })
}

fn factor_disks(exps: &[i64], order: FactorOrder, k_max: Option<usize>) -> FactorDisks {
    let k = k_max.unwrap_or_else(|| default_k_max(exps, order));
    let e = enumerate_irreducible(exps, order, k);
    FactorDisks {
        order: order.to_string(),
        exponents: exps.to_vec(),
        k_max: e.k_max,
        complete: e.complete,
        disks: e
            .disks
            .iter()
            .map(|d| DiskEntry {
                sequence: d.sequence().iter().map(|i| i + 1).collect(),
                pair_counts: d.pair_counts().to_vec(),
            })
            .collect(),
    }
}

fn disks(
    word: &str,
    orders: &str,
    k_max: Option<usize>,
    format: Format,
) -> Result<Output, CliError> {
    let w = alternating(word, orders)?;
    let doc = DisksDocument {
        word: w.to_string(),
        orders: w.signature().to_string(),
        len: w.len(),
        factor_a: factor_disks(w.exp_a(), w.order_a(), k_max),
        factor_b: factor_disks(w.exp_b(), w.order_b(), k_max),
    };
    let stdout = match format {
        Format::Json => to_json(&doc)?,
        Format::Table => {
            let mut out = String::new();
            for (side, f) in [("A", &doc.factor_a), ("B", &doc.factor_b)] {
                out.push_str(&format!(
                    "side {side}: order {}, exponents {:?}, k_max {}, {} disks{}\n",
                    f.order,
                    f.exponents,
                    f.k_max,
                    f.disks.len(),
                    if f.complete { "" } else { " (truncated)" }
                ));
                let mut t = Table::new();
                for d in &f.disks {
                    t.row(format!("{:?}", d.sequence), format!("{:?}", d.pair_counts));
                }
                out.push_str(&t.render());
            }
            out
        }
    };
    Ok(Output {
        stdout,
        ..Default::default()
    })
}

fn check_fatgraph(
    file: &PathBuf,
    word: &str,
    orders: &str,
    format: Format,
) -> Result<Output, CliError> {
    let text = std::fs::read_to_string(file).map_err(|source| CliError::Io {
        path: file.clone(),
        source,
    })?;
    let fg = Fatgraph::parse(&text)?;
    let sig = FactorSignature::parse(orders)?;
    let g = parse_word(word, &sig)?;
    let report = certificate_check(&fg, &g);
    let contributions = if sig.len() == 2 && report.passed() {
        factor_contribution(&fg, &g)?
            .iter()
            .map(|c| {
                Ok(Contribution {
                    factor: c.factor + 1,
                    pieces: c.pieces,
                    edges: c.edges,
                    euler_characteristic: c.euler_characteristic,
                    contribution: frac(&c.contribution)?,
                    disk_estimate: frac(&c.disk_estimate)?,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?
    } else {
        Vec::new()
    };
    let doc = FatgraphDocument {
        word: word.to_string(),
        passed: report.passed(),
        checks: report
            .checks
            .iter()
            .map(|c| {
                let (status, detail) = match &c.status {
                    CheckStatus::Pass => ("pass", None),
                    CheckStatus::Fail(why) => ("fail", Some(why.clone())),
                    CheckStatus::NotApplicable(why) => ("n/a", Some(why.clone())),
                };
                CheckEntry {
                    name: c.name.to_string(),
                    status: status.to_string(),
                    detail,
                }
            })
            .collect(),
        degree: report.degree,
        euler_characteristic: report.euler_characteristic,
        valence_sum: report.valence_sum,
        descending_count: report.descending_count,
        scl_upper_bound: report.bound.as_ref().map(frac).transpose()?,
        contributions,
    };
    let stdout = match format {
        Format::Json => to_json(&doc)?,
        Format::Table => {
            let mut t = Table::new();
            for c in &doc.checks {
                t.row(
                    &c.name,
                    c.detail
                        .as_ref()
                        .map_or(c.status.clone(), |d| format!("{} ({d})", c.status)),
                );
            }
            t.row("euler characteristic", doc.euler_characteristic)
                .row("valence sum", doc.valence_sum);
            if let Some(n) = doc.degree {
                t.row("degree", n);
            }
            if let Some(d) = doc.descending_count {
                t.row("descending edges", d);
            }
            if let Some(b) = &report.bound {
                t.row("scl upper bound", b);
            }
            for c in &doc.contributions {
                t.row(format!("factor {} contribution", c.factor), c.contribution);
            }
            t.render()
        }
    };
    let failed = (!report.passed()).then(|| {
        let names: Vec<&str> = report.failures().iter().map(|(n, _)| *n).collect();
        format!("certificate checks failed: {}", names.join(", "))
    });
    Ok(Output {
        stdout,
        warnings: Vec::new(),
        failed,
    })
}

fn selftest(format: Format) -> Result<Output, CliError> {
    let outcomes = sclkit_verify::run_all();
    let failed: Vec<String> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| o.id.to_string())
        .collect();
    let stdout = match format {
        Format::Json => to_json(
            &outcomes
                .iter()
                .map(|o| SelftestEntry {
                    criterion: o.id,
                    title: o.title.to_string(),
                    passed: o.passed,
                    millis: o.elapsed.as_millis() as u64,
                    detail: o.detail.clone(),
                })
                .collect::<Vec<_>>(),
        )?,
        Format::Table => outcomes.iter().map(|o| format!("{o}\n")).collect(),
    };
    Ok(Output {
        stdout,
        warnings: Vec::new(),
        failed: (!failed.is_empty()).then(|| format!("failed criteria: {}", failed.join(", "))),
    })
}
