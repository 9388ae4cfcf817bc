//! `A (x) -` on vector spaces with the identity cotriple: the cobar
//! resolution of a module and its descent spectral sequence.

use std::path::{Path, PathBuf};

use anyhow::{bail, Result};
use bkcomp::linalg::Field;
use bkcomp::simplicial::VectCat;
use bkcomp::triple::{completion, verify_triple, FiniteAlgebra, IdentityCotriple, TensorTriple};
use clap::{Args as ClapArgs, ValueEnum};
use serde::{Deserialize, Serialize};

use super::{completion_windows, e2_off_axis, write_completion};
use crate::config::{read_fixture, Output, RunConfig};
use crate::{Invariant, Usage};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FieldChoice {
    /// The characteristic named in the fixture.
    Fixture,
    Rational,
}

#[derive(ClapArgs)]
pub struct Args {
    /// Algebra fixture (JSON).
    pub fixture: PathBuf,
    #[arg(long, value_enum, default_value = "fixture")]
    pub field: FieldChoice,
    #[arg(long, default_value_t = 3)]
    pub smax: usize,
    #[arg(long, default_value_t = 4)]
    pub tmax: usize,
    /// Last page computed.
    #[arg(long, default_value_t = 3)]
    pub rmax: usize,
}

/// Structure constants `(i, j, k, c)`: `e_i e_j` has `c` at `e_k`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraTable {
    pub dim: usize,
    pub products: Vec<(usize, usize, usize, i64)>,
    pub unit: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CobarFixture {
    pub characteristic: u32,
    pub algebra: AlgebraTable,
    pub module_dim: usize,
}

impl CobarFixture {
    pub fn algebra(&self, field: &Field) -> Result<FiniteAlgebra> {
        let a = &self.algebra;
        if a.dim == 0 {
            bail!(Usage("the algebra has dimension 0".into()));
        }
        if a.unit.len() != a.dim {
            bail!(Usage(format!("unit has {} entries for an algebra of dimension {}", a.unit.len(), a.dim)));
        }
        if let Some(p) = a.products.iter().find(|&&(i, j, k, _)| i >= a.dim || j >= a.dim || k >= a.dim) {
            bail!(Usage(format!("product {p:?} is out of range")));
        }
        Ok(FiniteAlgebra::from_table(field, a.dim, &a.products, &a.unit))
    }
}

pub fn run(args: &Args, out: &Path, seed: u64) -> Result<Vec<PathBuf>> {
    let fixture: CobarFixture = read_fixture(&args.fixture)?;
    let characteristic = match args.field {
        FieldChoice::Fixture => fixture.characteristic,
        FieldChoice::Rational => 0,
    };
    let config = RunConfig {
        characteristic: Some(characteristic),
        s_max: Some(args.smax),
        t_max: Some(args.tmax),
        n_max: Some(args.tmax + 1),
        r_max: Some(args.rmax),
        ..RunConfig::new("cobar", out, seed)
    };
    config.validate()?;
    if args.rmax < 2 {
        bail!(Usage("rmax must be at least 2".into()));
    }
    let field = Field::from_characteristic(characteristic).map_err(|e| Usage(e.to_string()))?;
    let r = TensorTriple::new(fixture.algebra(&field)?);
    let axioms = verify_triple(&r, &[1, fixture.module_dim.max(1)]);
    if let Some(f) = axioms.failures().next() {
        bail!(Usage(format!("the algebra does not give a triple: {} fails ({})", f.axiom, f.detail.clone().unwrap_or_default())));
    }
    let s = IdentityCotriple(VectCat::new(field));
    let done = completion(&s, &r, &fixture.module_dim, args.smax, args.tmax, args.rmax)?;

    let mut output = Output::new(&config, completion_windows(args.smax, args.tmax, args.rmax))?;
    write_completion(&mut output, &done)?;
    if !done.report.pages_consistent {
        bail!(Invariant("pages are inconsistent: d d != 0 or E_{r+1} != H(E_r)".into()));
    }
    let off = e2_off_axis(&done);
    if !off.is_empty() {
        eprintln!("note: E_2 has exact entries off s = 0: {off:?}");
    }
    Ok(output.written().to_vec())
}
