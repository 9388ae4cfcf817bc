//! Edgewise subdivision checks on a cosimplicial module: `F_k^* Y` satisfies
//! the identities, each `u_k^l` is a cosimplicial map, and the explicit
//! witnesses are homotopies `u_k^l ~ u_k^{l'}`. Optionally, the diagonal
//! overcategory bijection.

use std::fmt::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Result};
use bkcomp::delta::{diag_overcategory_bijection, SubdivisionSpec};
use bkcomp::linalg::Field;
use bkcomp::simplicial::fixture::ModuleFixture;
use bkcomp::simplicial::{check_cosimplicial_homotopy, cochains_on, edgewise_homotopy, edgewise_pullback, u_pullback, CosimplicialObject, VectCat};
use clap::Args as ClapArgs;
use serde::Serialize;

use super::kan::parse_shape;
use crate::config::{read_fixture, Output, RunConfig};
use crate::{Invariant, Usage};

#[derive(ClapArgs)]
pub struct Args {
    /// Cosimplicial module fixture (JSON); overrides `--shape`.
    pub fixture: Option<PathBuf>,
    /// Cochains on this simplicial set (see `kan --shape`).
    #[arg(long, default_value = "boundary:2")]
    pub shape: String,
    #[arg(long, default_value_t = 2)]
    pub characteristic: u32,
    #[arg(long, default_value_t = 5)]
    pub smax: usize,
    /// Largest fold count `k`.
    #[arg(long, default_value_t = 3)]
    pub kmax: usize,
    /// Also match the diagonal overcategory at `([K1], [K2])` with the simplex
    /// category of the product, e.g. `1,1`.
    #[arg(long, value_parser = parse_pair)]
    pub bijection: Option<(usize, usize)>,
    #[arg(long, default_value_t = 2)]
    pub dim_bound: usize,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected K1,K2")?;
    Ok((a.trim().parse().map_err(|_| "bad K1")?, b.trim().parse().map_err(|_| "bad K2")?))
}

#[derive(Debug, Serialize)]
pub struct CopyCheck {
    pub k: usize,
    pub l: usize,
    pub l2: usize,
    pub levels: usize,
    pub pullback_identities: bool,
    pub maps_cosimplicial: bool,
    pub homotopy_verified: bool,
}

impl CopyCheck {
    fn passed(&self) -> bool {
        self.pullback_identities && self.maps_cosimplicial && self.homotopy_verified
    }
}

#[derive(Debug, Serialize)]
struct BijectionCheck {
    k1: usize,
    k2: usize,
    dim_bound: usize,
    objects: usize,
    arrows: usize,
    error: Option<String>,
}

/// Every check for `1 <= l <= l' <= k <= k_max`, skipping `k` whose
/// subdivision does not fit in the truncation.
pub fn copy_checks(y: &CosimplicialObject<VectCat>, k_max: usize) -> Result<Vec<CopyCheck>> {
    let mut out = Vec::new();
    for k in 1..=k_max {
        let Ok(fk) = edgewise_pullback(y, k) else { continue };
        let identities = fk.check_identities().is_ok();
        let yt = y.truncate(fk.s_max());
        for l in 1..=k {
            let f = u_pullback(y, SubdivisionSpec::new(k, l)?)?;
            for l2 in l..=k {
                let g = u_pullback(y, SubdivisionSpec::new(k, l2)?)?;
                let h = edgewise_homotopy(y, k, l, l2)?;
                out.push(CopyCheck {
                    k,
                    l,
                    l2,
                    levels: fk.s_max() + 1,
                    pullback_identities: identities,
                    maps_cosimplicial: f.is_cosimplicial_map(&yt, &fk) && g.is_cosimplicial_map(&yt, &fk),
                    homotopy_verified: check_cosimplicial_homotopy(&yt, &fk, &f, &g, &h)?,
                });
            }
        }
    }
    Ok(out)
}

pub fn run(args: &Args, out: &Path, seed: u64) -> Result<Vec<PathBuf>> {
    let y = match &args.fixture {
        Some(p) => {
            let m: ModuleFixture = read_fixture(p)?;
            m.to_cosimplicial().map_err(|e| Usage(e.to_string()))?
        }
        None => {
            let field = Field::from_characteristic(args.characteristic).map_err(|e| Usage(e.to_string()))?;
            cochains_on(&field, &parse_shape(&args.shape, args.smax)?, args.smax)
        }
    };
    let config = RunConfig {
        characteristic: Some(y.cat.field.characteristic()),
        s_max: Some(y.s_max().max(1)),
        bound_dim: Some(args.dim_bound),
        ..RunConfig::new("subdiv", out, seed)
    };
    config.validate()?;
    if args.kmax == 0 {
        bail!(Usage("kmax must be positive".into()));
    }
    if let Err(e) = y.check_identities() {
        bail!(Usage(format!("the fixture is not cosimplicial: {e:?}")));
    }
    let checks = copy_checks(&y, args.kmax)?;
    let windows = vec![format!("F_k level n uses level k(n+1)-1 <= {}", y.s_max())];
    let mut output = Output::new(&config, windows)?;
    let mut table = String::from("k\tl\tl2\tlevels\tidentities\tcosimplicial\thomotopy\n");
    for c in &checks {
        let _ = writeln!(table, "{}\t{}\t{}\t{}\t{}\t{}\t{}", c.k, c.l, c.l2, c.levels, c.pullback_identities, c.maps_cosimplicial, c.homotopy_verified);
    }
    output.json("subdiv.json", &checks)?;
    output.text("subdiv.tsv", &table)?;
    let mut failed: Vec<String> = checks.iter().filter(|c| !c.passed()).map(|c| format!("k={} l={} l'={}", c.k, c.l, c.l2)).collect();
    if let Some((k1, k2)) = args.bijection {
        let iso = diag_overcategory_bijection(k1, k2, args.dim_bound);
        let check = match &iso {
            Ok(i) => BijectionCheck { k1, k2, dim_bound: args.dim_bound, objects: i.objects, arrows: i.arrows, error: None },
            Err(e) => BijectionCheck { k1, k2, dim_bound: args.dim_bound, objects: 0, arrows: 0, error: Some(e.clone()) },
        };
        output.json("bijection.json", &check)?;
        if let Some(e) = check.error {
            failed.push(format!("bijection ({k1}, {k2}): {e}"));
        }
    }
    if checks.is_empty() {
        bail!(Usage(format!("truncation {} is too small for any subdivision", y.s_max())));
    }
    if !failed.is_empty() {
        bail!(Invariant(format!("failed: {}", failed.join(", "))));
    }
    Ok(output.written().to_vec())
}
