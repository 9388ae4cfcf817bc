//! The invariant suite, with a corrupted-fixture negative control.

use std::fmt::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use anyhow::{bail, Result};
use bkcomp::delta::FiniteSimplicialSet;
use bkcomp::linalg::Field;
use bkcomp::simpalg::{conjecture_experiment, AbelianizationTriple, FreeForget, SimpAlgCat, SimplicialAlgebra, TruncationPolicy};
use bkcomp::simplicial::{cochains_on, VectCat};
use bkcomp::small_object::{associativity_report, cofibrant_stages, fibrant_stages, iterate};
use bkcomp::spectral::{e2_by_iterated_homology, random_bicomplex, spectral_sequence};
use bkcomp::triple::{completion, verify_cotriple, verify_triple, Contraction, FiniteAlgebra, IdentityCotriple, TensorTriple};
use clap::Args as ClapArgs;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::subdiv::copy_checks;
use crate::config::{Output, RunConfig};
use crate::Invariant;

#[derive(ClapArgs)]
pub struct Args {
    /// Only the fast checks.
    #[arg(long)]
    pub quick: bool,
    /// Corrupt the descent algebra fixture; the suite must then fail.
    #[arg(long)]
    pub inject_corruption: bool,
}

#[derive(Debug, Serialize)]
pub struct Outcome {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

type Check = Box<dyn Fn() -> Result<Option<String>>>;

const BUDGET: usize = 200_000;

/// `F_2 x F_2` by structure constants; the corruption makes `e_1 e_1 = e_0`.
fn descent_algebra(field: &Field, corrupt: bool) -> FiniteAlgebra {
    let square = if corrupt { (1, 1, 0, 1) } else { (1, 1, 1, 1) };
    FiniteAlgebra::from_table(field, 2, &[(0, 0, 0, 1), square], &[1, 1])
}

fn failing(report: &bkcomp::triple::AxiomReport) -> Option<String> {
    if report.checks.is_empty() {
        return Some("no checks ran".into());
    }
    report.failures().next().map(|f| format!("{} at fixture {}: {}", f.axiom, f.fixture, f.detail.clone().unwrap_or_default()))
}

fn suite(quick: bool, corrupt: bool, seed: u64) -> Vec<(&'static str, Check)> {
    let f2 = Field::f2();
    let mut checks: Vec<(&'static str, Check)> = Vec::new();
    {
        let f = f2.clone();
        checks.push(("triple laws of the descent algebra", Box::new(move || {
            let r = TensorTriple::new(descent_algebra(&f, corrupt));
            Ok(failing(&verify_triple(&r, &[0, 1, 2])))
        })));
    }
    {
        let f = f2.clone();
        checks.push(("non-associative algebra is rejected", Box::new(move || {
            let r = TensorTriple::new(FiniteAlgebra::non_associative(&f));
            let report = verify_triple(&r, &[1]);
            let caught = report.failures().next().is_some();
            Ok((!caught).then(|| "laws passed on a non-associative algebra".into()))
        })));
    }
    {
        let f = f2.clone();
        checks.push(("descent: E_2 in s = 0 and completion recovers the base", Box::new(move || {
            let r = TensorTriple::new(descent_algebra(&f, corrupt));
            let done = completion(&IdentityCotriple(VectCat::new(f.clone())), &r, &1, 3, 4, 3)?;
            if !done.report.pages_consistent {
                return Ok(Some("pages inconsistent".into()));
            }
            let e2 = done.report.page(2).expect("page 2");
            if let Some(e) = e2.entries.iter().find(|e| e.reliable && e.s > 0 && e.dim > 0) {
                return Ok(Some(format!("E_2({}, {}) = {}", e.s, e.t, e.dim)));
            }
            let bad = done.reliable_degrees().find(|d| d.dim != usize::from(d.degree == 0) || (d.degree == 0 && !d.comparison_is_iso()));
            Ok(bad.map(|d| format!("degree {}: dim {} rank {}", d.degree, d.dim, d.comparison_rank)))
        })));
    }
    checks.push(("E_2 equals iterated homology on seeded bicomplexes", Box::new(move || {
        for k in 0..4 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k));
            let f = if k % 2 == 0 { Field::f2() } else { Field::prime(3)? };
            let rb = random_bicomplex(&f, 3, 3, 5, &mut rng)?;
            let report = spectral_sequence(&rb.bicomplex, 3, 3)?;
            if !report.pages_consistent {
                return Ok(Some(format!("sample {k}: pages inconsistent")));
            }
            let e2 = e2_by_iterated_homology(&rb.bicomplex);
            if let Some(e) = report.page(2).expect("page 2").entries.iter().find(|e| e.dim != e2[e.s][e.t]) {
                return Ok(Some(format!("sample {k}: ({}, {}) page {} vs {}", e.s, e.t, e.dim, e2[e.s][e.t])));
            }
        }
        Ok(None)
    })));
    {
        let f = f2.clone();
        checks.push(("edgewise copies are homotopic", Box::new(move || {
            let y = cochains_on(&f, &FiniteSimplicialSet::boundary(2), 5);
            let bad = copy_checks(&y, 3)?.into_iter().find(|c| !(c.pullback_identities && c.maps_cosimplicial && c.homotopy_verified));
            Ok(bad.map(|c| format!("k={} l={} l'={}", c.k, c.l, c.l2)))
        })));
    }
    checks.push(("fibrant replacement fills horns", Box::new(|| {
        let t = fibrant_stages(&FiniteSimplicialSet::standard(1, 2), 2, 2, BUDGET);
        Ok(failing(&t.kan_report()).or_else(|| failing(&t.redundancy_report())).or_else(|| failing(&t.codiagonal_report())))
    })));
    checks.push(("cofibrant replacement lifts against boundaries", Box::new(|| {
        let s = cofibrant_stages(&FiniteSimplicialSet::standard(1, 1), 3, 1, BUDGET);
        Ok(failing(&s.lifting_report()).or_else(|| failing(&s.diagonal_report())))
    })));
    if !quick {
        checks.push(("codiagonal is associative on T T T of a point", Box::new(|| {
            let t = fibrant_stages(&FiniteSimplicialSet::standard(0, 1), 1, 1, BUDGET);
            let ttt = iterate(&iterate(&t, "y", BUDGET), "z", BUDGET);
            Ok(failing(&associativity_report(&ttt)))
        })));
        {
            let f = f2.clone();
            checks.push(("free/forget cotriple laws at degree 1", Box::new(move || {
                let cat = SimpAlgCat::new(f.clone(), 2);
                let s = FreeForget::new(cat, TruncationPolicy { degree: 1, cap: 4096 });
                Ok(failing(&verify_cotriple(&s, &[Arc::new(SimplicialAlgebra::ground(&f, 2))])))
            })));
        }
        {
            let f = f2.clone();
            checks.push(("algebra resolution contractions at filtration 1", Box::new(move || {
                let cat = SimpAlgCat::new(f.clone(), 2);
                let s = FreeForget::new(cat.clone(), TruncationPolicy::default());
                let r = AbelianizationTriple::new(cat);
                let x = Arc::new(SimplicialAlgebra::ground(&f, 2));
                let left = Contraction::left(&s, &r, &x, 1)?.check()?;
                let right = Contraction::right(&s, &r, &x, 1)?.check()?;
                Ok((!(left && right)).then(|| format!("left {left}, right {right}")))
            })));
        }
        checks.push(("cofibrant diagonal laws on the boundary of a 2-simplex", Box::new(|| {
            let s = cofibrant_stages(&FiniteSimplicialSet::boundary(2), 2, 2, BUDGET);
            Ok(failing(&s.diagonal_report()))
        })));
        {
            let f = f2.clone();
            checks.push(("abelian input concentrates in filtration zero", Box::new(move || {
                let x = Arc::new(SimplicialAlgebra::ground(&f, 3));
                let report = conjecture_experiment(&x, 2, 2, TruncationPolicy { degree: 1, cap: 4096 })?;
                let ok = report.invariants_hold && report.e2_checked > 0 && report.e2_concentrated_in_s0;
                Ok((!ok).then(|| format!("checked {}, failures {:?}", report.e2_checked, report.failures)))
            })));
        }
        {
            let f = f2.clone();
            checks.push(("ground algebra experiment completes", Box::new(move || {
                let x = Arc::new(SimplicialAlgebra::ground(&f, 2));
                let report = conjecture_experiment(&x, 1, 1, TruncationPolicy::default())?;
                Ok((!(report.invariants_hold && report.connected && report.e2_concentrated_in_s0)).then(|| report.failures.join("; ")))
            })));
        }
    }
    checks
}

pub fn run(args: &Args, out: &Path, seed: u64) -> Result<Vec<PathBuf>> {
    let config = RunConfig { characteristic: Some(2), ..RunConfig::new("selftest", out, seed) };
    config.validate()?;
    let mut outcomes = Vec::new();
    for (name, check) in suite(args.quick, args.inject_corruption, seed) {
        let start = Instant::now();
        let (passed, detail) = match check() {
            Ok(None) => (true, None),
            Ok(Some(d)) => (false, Some(d)),
            Err(e) => (false, Some(format!("{e:#}"))),
        };
        eprintln!("{} {name} ({:.2?})", if passed { "pass" } else { "FAIL" }, start.elapsed());
        outcomes.push(Outcome { name: name.to_string(), passed, detail });
    }
    let mode = if args.quick { "quick" } else { "full" };
    let mut windows = vec![format!("{mode} suite")];
    if args.inject_corruption {
        windows.push("corrupted descent fixture".into());
    }
    let mut output = Output::new(&config, windows)?;
    let mut table = String::from("check\tpassed\tdetail\n");
    for o in &outcomes {
        let _ = writeln!(table, "{}\t{}\t{}", o.name, o.passed, o.detail.as_deref().unwrap_or("-"));
    }
    output.json("selftest.json", &outcomes)?;
    output.text("selftest.tsv", &table)?;
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed).map(|o| o.name.as_str()).collect();
    if !failed.is_empty() {
        bail!(Invariant(format!("{} of {} checks failed: {}", failed.len(), outcomes.len(), failed.join(", "))));
    }
    Ok(output.written().to_vec())
}
