//! Bounded small object argument: the cofibrant-replacement cotriple or the
//! fibrant-replacement triple on a finite simplicial set.

use std::fmt::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Result};
use bkcomp::delta::FiniteSimplicialSet;
use bkcomp::small_object::{associativity_report, cofibrant_stages, fibrant_stages, iterate, StageLedger};
use bkcomp::triple::AxiomReport;
use clap::{Args as ClapArgs, ValueEnum};
use serde::Serialize;

use crate::config::{read_fixture, Output, RunConfig};
use crate::{Capacity, Invariant, Usage};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Fibrant,
    Cofibrant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Report {
    /// Triple or cotriple laws of the lifted structure maps.
    Axioms,
    /// Horn filling (fibrant) or lifting against boundaries (cofibrant).
    Kan,
    /// Stage-by-stage attachments only.
    Ledger,
}

#[derive(ClapArgs)]
pub struct Args {
    /// Simplicial set fixture (JSON); overrides `--shape`.
    pub fixture: Option<PathBuf>,
    /// `point`, `empty`, `standard:K`, `boundary:N` or `horn:N:K`.
    #[arg(long, default_value = "point")]
    pub shape: String,
    #[arg(long, value_enum, default_value = "fibrant")]
    pub side: Side,
    #[arg(long, default_value_t = 1)]
    pub bound_stages: usize,
    #[arg(long, default_value_t = 1)]
    pub bound_dim: usize,
    /// Stop once this many cells exist.
    #[arg(long, default_value_t = 200_000)]
    pub budget: usize,
    #[arg(long, value_enum, default_value = "axioms")]
    pub report: Report,
}

pub fn parse_shape(shape: &str, max_dim: usize) -> Result<FiniteSimplicialSet> {
    let parts: Vec<&str> = shape.split(':').collect();
    let num = |s: &str| s.parse::<usize>().map_err(|_| Usage(format!("bad number {s:?} in shape {shape:?}")));
    Ok(match parts.as_slice() {
        ["point"] => FiniteSimplicialSet::standard(0, max_dim),
        ["empty"] => FiniteSimplicialSet::empty(max_dim),
        ["standard", k] => FiniteSimplicialSet::standard(num(k)?, max_dim.max(num(k)?)),
        ["boundary", n] if num(n)? >= 1 => FiniteSimplicialSet::boundary(num(n)?),
        ["horn", n, k] if num(n)? >= 1 && num(k)? <= num(n)? => FiniteSimplicialSet::horn(num(n)?, num(k)?),
        _ => bail!(Usage(format!("unknown shape {shape:?}"))),
    })
}

#[derive(Serialize)]
struct Summary<'a> {
    side: Side,
    cells_by_dim: Vec<usize>,
    attachments: usize,
    ledger: &'a StageLedger,
}

fn ledger_tsv(ledger: &StageLedger) -> String {
    let mut out = String::from("stage\tcell\tgenerator\tdatum\n");
    for s in &ledger.stages {
        for a in &s.attachments {
            let _ = writeln!(out, "{}\t{}\t{}\t{}", s.stage, a.cell, a.generator, a.datum.join(" "));
        }
    }
    out
}

fn merge(parts: Vec<AxiomReport>) -> AxiomReport {
    AxiomReport { checks: parts.into_iter().flat_map(|r| r.checks).collect() }
}

pub fn run(args: &Args, out: &Path, seed: u64) -> Result<Vec<PathBuf>> {
    let config = RunConfig {
        bound_stages: Some(args.bound_stages),
        bound_dim: Some(args.bound_dim),
        cap: Some(args.budget),
        ..RunConfig::new("kan", out, seed)
    };
    config.validate()?;
    let x: FiniteSimplicialSet = match &args.fixture {
        Some(p) => read_fixture(p)?,
        None => parse_shape(&args.shape, args.bound_dim)?,
    };
    let (b, n, budget) = (args.bound_stages, args.bound_dim, args.budget);
    let windows = vec![format!("stages <= {b}, dimension <= {n}, at most {budget} cells")];
    let (cells_by_dim, ledger, report) = match args.side {
        Side::Fibrant => {
            let mut t = fibrant_stages(&x, b, n, budget);
            t.record_unreached();
            let report = match args.report {
                Report::Axioms => {
                    let ttt = iterate(&iterate(&t, "y", budget), "z", budget);
                    if !ttt.ledger.complete {
                        bail!(Capacity(format!("T T T X exceeds the budget of {budget} cells")));
                    }
                    Some(merge(vec![t.codiagonal_report(), associativity_report(&ttt)]))
                }
                Report::Kan => Some(merge(vec![t.kan_report(), t.redundancy_report()])),
                Report::Ledger => None,
            };
            (t.cells.iter().map(Vec::len).collect::<Vec<_>>(), t.ledger, report)
        }
        Side::Cofibrant => {
            let mut s = cofibrant_stages(&x, b, n, budget);
            s.record_unreached();
            let report = match args.report {
                Report::Axioms => Some(s.diagonal_report()),
                Report::Kan => Some(s.lifting_report()),
                Report::Ledger => None,
            };
            (s.cells.iter().map(Vec::len).collect::<Vec<_>>(), s.ledger, report)
        }
    };
    let mut output = Output::new(&config, windows)?;
    let attachments = ledger.attachment_count();
    output.json("ledger.json", &Summary { side: args.side, cells_by_dim, attachments, ledger: &ledger })?;
    output.text("ledger.tsv", &ledger_tsv(&ledger))?;
    if let Some(r) = &report {
        let name = if args.report == Report::Kan { "kan.json" } else { "axioms.json" };
        output.json(name, r)?;
    }
    if !ledger.complete {
        bail!(Capacity(format!("the construction stopped at the budget of {budget} cells")));
    }
    if let Some(f) = report.as_ref().and_then(|r| r.failures().next()) {
        bail!(Invariant(format!("{} fails at fixture {}: {}", f.axiom, f.fixture, f.detail.clone().unwrap_or_default())));
    }
    Ok(output.written().to_vec())
}
