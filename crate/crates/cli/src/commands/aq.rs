//! The abelianization experiment on a simplicial augmented algebra given by
//! a table fixture or a free presentation.

use std::fmt::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Result};
use bkcomp::simpalg::{conjecture_experiment, AlgebraFixture, FreePresentation, SimplicialAlgebra, TruncationPolicy};
use clap::Args as ClapArgs;
use serde::{Deserialize, Serialize};

use super::{completion_windows, write_completion};
use crate::config::{read_fixture, Output, RunConfig};
use crate::{Invariant, Usage};

#[derive(ClapArgs)]
pub struct Args {
    /// `{"table": ...}` or `{"free": ...}` (JSON).
    pub fixture: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub smax: usize,
    #[arg(long, default_value_t = 1)]
    pub tmax: usize,
    /// Polynomial degree kept by the free algebras (and by a free presentation).
    #[arg(long, default_value_t = TruncationPolicy::default().degree)]
    pub degree: usize,
    /// Largest basis allowed at any level.
    #[arg(long, default_value_t = TruncationPolicy::default().cap)]
    pub cap: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AqFixture {
    Table(AlgebraFixture),
    Free(FreePresentation),
}

impl AqFixture {
    fn characteristic(&self) -> u32 {
        match self {
            AqFixture::Table(t) => t.characteristic,
            AqFixture::Free(f) => f.characteristic,
        }
    }

    fn build(&self, degree: usize) -> Result<SimplicialAlgebra> {
        match self {
            AqFixture::Table(t) => Ok(t.build()?),
            AqFixture::Free(f) => {
                let f = FreePresentation { degree, ..f.clone() };
                Ok(f.build()?.0)
            }
        }
    }
}

pub fn run(args: &Args, out: &Path, seed: u64) -> Result<Vec<PathBuf>> {
    let fixture: AqFixture = read_fixture(&args.fixture)?;
    let config = RunConfig {
        characteristic: Some(fixture.characteristic()),
        s_max: Some(args.smax),
        t_max: Some(args.tmax),
        n_max: Some(args.tmax + 1),
        r_max: Some(args.smax + 1),
        degree: Some(args.degree),
        cap: Some(args.cap),
        ..RunConfig::new("aq", out, seed)
    };
    config.validate()?;
    let x = fixture.build(args.degree)?;
    if x.n_max() < args.tmax + 1 {
        bail!(Usage(format!("the fixture has levels 0..={} but tmax {} needs level {}", x.n_max(), args.tmax, args.tmax + 1)));
    }
    let policy = TruncationPolicy { degree: args.degree, cap: args.cap };
    let report = conjecture_experiment(&Arc::new(x), args.smax, args.tmax, policy)?;

    let mut windows = completion_windows(args.smax, args.tmax, args.smax + 1);
    windows.push(format!("free algebras truncated above degree {}", args.degree));
    let mut output = Output::new(&config, windows)?;
    output.json("experiment.json", &report)?;
    write_completion(&mut output, &report.completion)?;
    let mut levels = String::from("level\tdims\tdropped\n");
    for l in &report.levels {
        let level = l.level.map_or("augmented".to_string(), |k| k.to_string());
        let dims: Vec<String> = l.dims.iter().map(usize::to_string).collect();
        let _ = writeln!(levels, "{level}\t{}\t{}", dims.join(","), l.dropped.values().sum::<usize>());
    }
    output.text("levels.tsv", &levels)?;
    let summary = format!(
        "connected\t{}\npi0_dim\t{}\ne2_checked\t{}\ne2_concentrated_in_s0\t{}\ninvariants_hold\t{}\n",
        report.connected, report.pi0_dim, report.e2_checked, report.e2_concentrated_in_s0, report.invariants_hold
    );
    output.text("summary.tsv", &summary)?;
    if !report.connected {
        eprintln!("note: the input is not connected; the completion need not recover it");
    }
    if !report.invariants_hold {
        bail!(Invariant(format!("experiment invariants failed: {}", report.failures.join("; "))));
    }
    Ok(output.written().to_vec())
}
