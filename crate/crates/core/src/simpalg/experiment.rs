//! The completion of a connected simplicial algebra with respect to
//! abelianization over free algebras, with truncation accounting.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::spectral::exact;
use crate::triple::{completion, mixed_resolution, Completion, TripleError};

use super::abelian::AbelianizationTriple;
use super::free::{FreeForget, TruncationPolicy};
use super::object::{AlgObj, SimpAlgCat};

#[derive(Clone, Debug, Serialize)]
pub struct LevelOverflow {
    /// Cosimplicial level; `None` for the augmentation `SX`.
    pub level: Option<usize>,
    pub dims: Vec<usize>,
    /// Products dropped by the truncation, by monomial degree.
    pub dropped: BTreeMap<usize, usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub policy: TruncationPolicy,
    pub connected: bool,
    pub pi0_dim: usize,
    pub levels: Vec<LevelOverflow>,
    /// Products skipped while checking that the cofaces and codegeneracies
    /// are algebra maps, by monomial degree.
    pub map_dropped: BTreeMap<usize, usize>,
    /// Cosimplicial identities, algebra-map checks and page consistency.
    pub invariants_hold: bool,
    pub failures: Vec<String>,
    /// Whether every exact `E_2` entry with `s > 0` vanishes.
    pub e2_concentrated_in_s0: bool,
    /// Exact `E_2` entries with `s > 0`.
    pub e2_checked: usize,
    pub completion: Completion,
}

/// Resolves `x` by the free/forget cotriple against abelianization up to
/// cosimplicial level `s_max` and runs the completion pipeline through
/// simplicial degree `t_max`. Disconnected inputs run but are flagged.
pub fn conjecture_experiment(x: &AlgObj, s_max: usize, t_max: usize, policy: TruncationPolicy) -> Result<ExperimentReport, TripleError> {
    let n_max = t_max + 1;
    if x.n_max() < n_max {
        return Err(TripleError::Capacity(format!("the algebra is known to level {} but level {n_max} is needed", x.n_max())));
    }
    let x: AlgObj = std::sync::Arc::new(x.truncate(n_max));
    let cat = SimpAlgCat::new(x.field.clone(), n_max);
    let s = FreeForget::new(cat.clone(), policy);
    let r = AbelianizationTriple::new(cat);
    let mut failures = Vec::new();
    let input = x.validate().map_err(TripleError::from)?;

    let res = mixed_resolution(&s, &r, &x, s_max)?;
    if let Err(e) = res.validate() {
        failures.push(e.to_string());
    }
    let mut levels = vec![LevelOverflow { level: None, dims: res.augmented.dims(), dropped: BTreeMap::new() }];
    levels.extend(res.object.levels.iter().enumerate().map(|(k, v)| LevelOverflow { level: Some(k), dims: v.dims(), dropped: BTreeMap::new() }));
    let objects = std::iter::once(&res.augmented).chain(&res.object.levels);
    for (entry, v) in levels.iter_mut().zip(objects) {
        match v.validate() {
            Ok(o) => entry.dropped = o.dropped,
            Err(e) => failures.push(format!("level {:?}: {e}", entry.level)),
        }
    }
    let mut map_dropped = BTreeMap::new();
    let maps = std::iter::once(&res.augmentation).chain(res.object.cofaces.iter().flatten()).chain(res.object.codegeneracies.iter().flatten());
    for f in maps {
        match f.validate() {
            Ok(o) => {
                for (d, c) in o.dropped {
                    *map_dropped.entry(d).or_insert(0) += c;
                }
            }
            Err(e) => failures.push(format!("structure map: {e}")),
        }
    }
    for (d, c) in input.dropped {
        *map_dropped.entry(d).or_insert(0) += c;
    }

    let completion = completion(&s, &r, &x, s_max, t_max, s_max + 1)?;
    if !completion.report.pages_consistent {
        failures.push("spectral pages inconsistent".into());
    }
    let window: Vec<usize> = completion
        .report
        .pages
        .iter()
        .find(|p| p.r == 2)
        .map(|p| p.entries.iter().filter(|e| e.s > 0 && exact(e.s, e.t, 2, s_max, n_max)).map(|e| e.dim).collect())
        .unwrap_or_default();
    Ok(ExperimentReport {
        policy,
        connected: x.is_connected(),
        pi0_dim: x.pi0_dim(),
        levels,
        map_dropped,
        invariants_hold: failures.is_empty(),
        failures,
        e2_concentrated_in_s0: window.iter().all(|&d| d == 0),
        e2_checked: window.len(),
        completion,
    })
}
