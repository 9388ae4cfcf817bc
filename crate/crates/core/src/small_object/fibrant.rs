//! Bounded fibrant replacement attaching fillers only for horns that do not
//! already lie in an earlier stage, with the unit and the lifted codiagonal.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::hash::{DefaultHasher, Hash, Hasher};
use std::sync::Arc;

use crate::delta::{FiniteSimplicialSet, SimplicialMap};
use crate::triple::AxiomReport;

use super::cells::{base_cells, base_simplex, extend, face, Attachment, BaseCell, Core, Names, Simp, SimplexTable, StageLedger, StageRecord};

/// Cells of `T Y`: wrapped cells of `Y` (stage 0), horn fillers and their
/// missing faces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FibCore {
    Base(Arc<BaseCell<FibCore>>),
    Inner(Arc<FibCore>),
    Filler(Arc<HornCell>),
    Face(Arc<HornCell>),
}

pub type FibSimplex = Simp<FibCore>;

/// A horn `Lambda^missing[dim]`: its faces `d_i` for `i != missing`, in order.
#[derive(Clone, Debug)]
pub struct HornCell {
    pub stage: usize,
    pub dim: usize,
    pub missing: usize,
    pub horn: Vec<FibSimplex>,
    digest: u64,
}

impl HornCell {
    /// The filler sits one stage above the latest face of the horn.
    pub fn new(dim: usize, missing: usize, horn: Vec<FibSimplex>) -> HornCell {
        let stage = 1 + horn.iter().map(Simp::stage).max().unwrap_or(0);
        let mut h = DefaultHasher::new();
        (dim, missing, &horn).hash(&mut h);
        HornCell { stage, dim, missing, horn, digest: h.finish() }
    }

    fn key(&self) -> (usize, usize, &Vec<FibSimplex>) {
        (self.dim, self.missing, &self.horn)
    }
}

impl PartialEq for HornCell {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.digest == other.digest && self.key() == other.key())
    }
}

impl Eq for HornCell {}

impl Hash for HornCell {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.digest.hash(state);
    }
}

impl PartialOrd for HornCell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HornCell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl Core for FibCore {
    fn dim(&self) -> usize {
        match self {
            FibCore::Base(b) => b.dim,
            FibCore::Inner(c) => c.dim(),
            FibCore::Filler(h) => h.dim,
            FibCore::Face(h) => h.dim - 1,
        }
    }

    fn stage(&self) -> usize {
        match self {
            FibCore::Base(_) | FibCore::Inner(_) => 0,
            FibCore::Filler(h) | FibCore::Face(h) => h.stage,
        }
    }

    fn faces(&self) -> Vec<FibSimplex> {
        match self {
            FibCore::Base(b) => b.faces.clone(),
            FibCore::Inner(c) => c.faces().iter().map(unit).collect(),
            FibCore::Filler(h) => {
                let mut out = h.horn.clone();
                out.insert(h.missing, Simp::nondegenerate(FibCore::Face(h.clone())));
                out
            }
            FibCore::Face(h) => {
                let k = h.missing;
                (0..h.dim).map(|j| if j < k { face(&h.horn[j], k - 1) } else { face(&h.horn[j], k) }).collect()
            }
        }
    }
}

/// `nu: Y -> T Y`.
pub fn unit(s: &FibSimplex) -> FibSimplex {
    Simp { epi: s.epi.clone(), core: FibCore::Inner(Arc::new(s.core.clone())) }
}

fn inner(core: &FibCore) -> Option<&FibCore> {
    match core {
        FibCore::Inner(c) => Some(c),
        _ => None,
    }
}

pub fn fib_base(x: &FiniteSimplicialSet, space: usize) -> Vec<Vec<FibCore>> {
    base_cells(x, space, FibCore::Base)
}

/// `T_B Y` up to dimension `N`, with its stage ledger.
#[derive(Clone, Debug)]
pub struct FibrantReplacement {
    pub bound_stages: usize,
    pub bound_dim: usize,
    /// Nondegenerate cells of `Y`.
    pub base: Vec<Vec<FibCore>>,
    /// Nondegenerate cells of `T_B Y` by dimension, stage 0 first.
    pub cells: Vec<Vec<FibCore>>,
    pub names: Names<FibCore>,
    pub ledger: StageLedger,
    /// Horns found at each stage that lay in an earlier stage and were skipped.
    pub skipped: Vec<usize>,
}

/// `T_B X` for a finite simplicial set.
pub fn fibrant_stages(x: &FiniteSimplicialSet, bound_stages: usize, bound_dim: usize, budget: usize) -> FibrantReplacement {
    let base = fib_base(x, 0);
    let base: Vec<Vec<FibCore>> = (0..=bound_dim).map(|d| base.get(d).cloned().unwrap_or_default()).collect();
    fibrant_over(base, "x", bound_stages, bound_dim, budget)
}

/// `T_B Y` for a space `Y` given by its nondegenerate cells up to `N`.
pub fn fibrant_over(base: Vec<Vec<FibCore>>, prefix: &str, bound_stages: usize, bound_dim: usize, budget: usize) -> FibrantReplacement {
    let mut names = Names::default();
    let mut cells: Vec<Vec<FibCore>> = vec![Vec::new(); bound_dim + 1];
    for (d, row) in base.iter().enumerate().take(bound_dim + 1) {
        for (i, c) in row.iter().enumerate() {
            let wrapped = FibCore::Inner(Arc::new(c.clone()));
            names.insert(&wrapped, format!("{prefix}{d}.{i}"));
            cells[d].push(wrapped);
        }
    }
    let mut ledger = StageLedger { complete: true, ..StageLedger::default() };
    let mut skipped = Vec::new();
    let mut total = cells.iter().map(Vec::len).sum::<usize>();
    for beta in 0..bound_stages {
        let (fresh_horns, old) = horns_at(&cells, bound_dim, beta, budget.saturating_sub(total) / 2);
        skipped.push(old);
        let mut record = StageRecord { stage: beta + 1, attachments: Vec::new() };
        let mut fresh: Vec<Vec<FibCore>> = vec![Vec::new(); bound_dim + 1];
        for h in fresh_horns {
            if total + 2 > budget {
                ledger.complete = false;
                break;
            }
            let n = h.dim;
            let name = format!("f{}.{}.{}", beta + 1, n, fresh[n].len());
            let datum = h.horn.iter().map(|a| names.simplex(a)).collect();
            record.attachments.push(Attachment { cell: name.clone(), generator: format!("horn {n} {}", h.missing), datum });
            let h = Arc::new(h);
            let filler = FibCore::Filler(h.clone());
            let missing = FibCore::Face(h);
            names.insert(&missing, format!("{name}'"));
            names.insert(&filler, name);
            fresh[n - 1].push(missing);
            fresh[n].push(filler);
            total += 2;
        }
        for (row, new) in cells.iter_mut().zip(fresh) {
            row.extend(new);
        }
        ledger.stages.push(record);
        if !ledger.complete {
            break;
        }
    }
    FibrantReplacement { bound_stages, bound_dim, base, cells, names, ledger, skipped }
}

/// Horns of dimension `1..=N` whose latest face has stage exactly `beta`, at
/// most `limit` of them, and the number of horns lying wholly in earlier stages.
fn horns_at(cells: &[Vec<FibCore>], bound_dim: usize, beta: usize, limit: usize) -> (Vec<HornCell>, usize) {
    let mut out = Vec::new();
    let old = scan_horns(cells, bound_dim, beta, &mut |n, k, horn| {
        out.push(HornCell::new(n, k, horn.to_vec()));
        out.len() <= limit
    });
    (out, old)
}

fn count_horns_at(cells: &[Vec<FibCore>], bound_dim: usize, beta: usize) -> usize {
    let mut fresh = 0;
    scan_horns(cells, bound_dim, beta, &mut |_, _, _| {
        fresh += 1;
        true
    });
    fresh
}

fn scan_horns(cells: &[Vec<FibCore>], bound_dim: usize, beta: usize, visit: &mut dyn FnMut(usize, usize, &[FibSimplex]) -> bool) -> usize {
    let table = SimplexTable::new(cells, bound_dim.saturating_sub(1));
    let mut old = 0;
    for n in 1..=bound_dim {
        let level = &table.simplices[n - 1];
        let all: Vec<usize> = (0..level.len()).filter(|&a| level[a].stage() <= beta).collect();
        for k in 0..=n {
            let positions: Vec<usize> = (0..=n).filter(|&i| i != k).collect();
            let candidates = vec![all.clone(); positions.len()];
            let finished = table.for_each_compatible(n, &positions, &candidates, &mut |tuple| {
                if tuple.iter().any(|&a| level[a].stage() == beta) {
                    let horn: Vec<FibSimplex> = tuple.iter().map(|&a| level[a].clone()).collect();
                    visit(n, k, &horn)
                } else {
                    old += 1;
                    true
                }
            });
            if !finished {
                return old;
            }
        }
    }
    old
}

impl FibrantReplacement {
    /// Fills `ledger.unreached` with the horns a further stage would attach.
    pub fn record_unreached(&mut self) {
        self.ledger.unreached = Some(count_horns_at(&self.cells, self.bound_dim, self.bound_stages));
    }

    pub fn cell_count(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn simplices(&self, max_dim: usize) -> SimplexTable<FibCore> {
        SimplexTable::new(&self.cells, max_dim)
    }

    /// Every horn of dimension at most `N` in `T_{B-1}` has a filler in `T_B`,
    /// searched among all `n`-simplices.
    pub fn kan_report(&self) -> AxiomReport {
        let mut report = AxiomReport::default();
        let table = self.simplices(self.bound_dim);
        let earlier = self.bound_stages.saturating_sub(1);
        let mut fixture = 0;
        for n in 1..=self.bound_dim {
            let level = &table.simplices[n - 1];
            let all: Vec<usize> = (0..level.len()).filter(|&a| level[a].stage() <= earlier).collect();
            for k in 0..=n {
                let positions: Vec<usize> = (0..=n).filter(|&i| i != k).collect();
                let filled: HashSet<Vec<usize>> =
                    (0..table.count(n)).map(|s| positions.iter().map(|&i| table.face_id(n, s, i)).collect()).collect();
                table.for_each_compatible(n, &positions, &vec![all.clone(); positions.len()], &mut |tuple| {
                    report.check(&format!("fill horn {n} {k}"), fixture, filled.contains(tuple), &format!("{tuple:?}"));
                    fixture += 1;
                    true
                });
            }
        }
        report
    }

    /// Every attached horn fails to lie in an earlier stage, and no horn is
    /// attached twice.
    pub fn redundancy_report(&self) -> AxiomReport {
        let mut report = AxiomReport::default();
        let mut seen = HashSet::new();
        for (k, c) in self.cells.iter().flatten().enumerate() {
            if let FibCore::Filler(h) = c {
                let fresh = h.horn.iter().any(|a| a.stage() + 1 == h.stage);
                report.check("attached horn is new at its stage", k, fresh, &self.names.cell(c));
                report.check("horn attached once", k, seen.insert((h.dim, h.missing, h.horn.clone())), &self.names.cell(c));
            }
        }
        report
    }

    /// Unit and associativity of the lifted codiagonal on every cell of
    /// `T_B Y`, and unit laws on `T_B T_B Y` when given.
    pub fn codiagonal_report(&self) -> AxiomReport {
        let mult = Lift::new(|s: &FibSimplex| s.clone());
        let t_unit = Functor::new(unit);
        let mut report = AxiomReport::default();
        for (k, c) in self.cells.iter().flatten().enumerate() {
            let s = Simp::nondegenerate(c.clone());
            let name = self.names.cell(c);
            report.check("mult . unit T", k, mult.apply(&unit(&s)) == s, &name);
            report.check("mult . T unit", k, mult.apply(&t_unit.apply(&s)) == s, &name);
        }
        report
    }
}

/// Associativity `mult . mult T = mult . T mult` on every cell of `T T T Y`.
pub fn associativity_report(ttt: &FibrantReplacement) -> AxiomReport {
    let mult = Lift::new(|s: &FibSimplex| s.clone());
    let t_mult = Functor::new(|s: &FibSimplex| mult.apply(s));
    let mut report = AxiomReport::default();
    for (k, c) in ttt.cells.iter().flatten().enumerate() {
        let s = Simp::nondegenerate(c.clone());
        let left = mult.apply(&mult.apply(&s));
        let right = mult.apply(&t_mult.apply(&s));
        report.check("mult . mult T = mult . T mult", k, left == right, &ttt.names.cell(c));
    }
    report
}

/// `T T Y` from `T Y`, reusing the bounds.
pub fn iterate(t: &FibrantReplacement, prefix: &str, budget: usize) -> FibrantReplacement {
    fibrant_over(t.cells.clone(), prefix, t.bound_stages, t.bound_dim, budget)
}

/// `T f` for `f: Y -> Z`, cell by cell.
pub struct Functor<F> {
    f: F,
    memo: RefCell<HashMap<FibCore, FibCore>>,
}

impl<F: Fn(&FibSimplex) -> FibSimplex> Functor<F> {
    pub fn new(f: F) -> Functor<F> {
        Functor { f, memo: RefCell::new(HashMap::new()) }
    }

    pub fn apply(&self, s: &FibSimplex) -> FibSimplex {
        extend(s, |c| self.cell(c))
    }

    fn cell(&self, core: &FibCore) -> FibSimplex {
        if let Some(c) = inner(core) {
            return unit(&(self.f)(&Simp::nondegenerate(c.clone())));
        }
        if let Some(hit) = self.memo.borrow().get(core) {
            return Simp::nondegenerate(hit.clone());
        }
        let image = match core {
            FibCore::Filler(h) => FibCore::Filler(Arc::new(self.horn(h))),
            FibCore::Face(h) => FibCore::Face(Arc::new(self.horn(h))),
            _ => panic!("not a cell of a replacement"),
        };
        self.memo.borrow_mut().insert(core.clone(), image.clone());
        Simp::nondegenerate(image)
    }

    fn horn(&self, h: &HornCell) -> HornCell {
        HornCell::new(h.dim, h.missing, h.horn.iter().map(|a| self.apply(a)).collect())
    }
}

/// `L(a): T Y -> T Z` for `a: Y -> T Z`: stage-0 cells go through `a`, fillers
/// to the fillers of the image horns.
pub struct Lift<F> {
    a: F,
    memo: RefCell<HashMap<FibCore, FibCore>>,
}

impl<F: Fn(&FibSimplex) -> FibSimplex> Lift<F> {
    pub fn new(a: F) -> Lift<F> {
        Lift { a, memo: RefCell::new(HashMap::new()) }
    }

    pub fn apply(&self, s: &FibSimplex) -> FibSimplex {
        extend(s, |c| self.cell(c))
    }

    fn cell(&self, core: &FibCore) -> FibSimplex {
        if let Some(c) = inner(core) {
            return (self.a)(&Simp::nondegenerate(c.clone()));
        }
        if let Some(hit) = self.memo.borrow().get(core) {
            return Simp::nondegenerate(hit.clone());
        }
        let image = match core {
            FibCore::Filler(h) => FibCore::Filler(Arc::new(self.horn(h))),
            FibCore::Face(h) => FibCore::Face(Arc::new(self.horn(h))),
            _ => panic!("not a cell of a replacement"),
        };
        self.memo.borrow_mut().insert(core.clone(), image.clone());
        Simp::nondegenerate(image)
    }

    fn horn(&self, h: &HornCell) -> HornCell {
        HornCell::new(h.dim, h.missing, h.horn.iter().map(|a| self.apply(a)).collect())
    }
}

/// A simplicial map between finite sets, acting on base simplices.
pub fn base_map<'a>(target: &'a [Vec<FibCore>], map: &'a SimplicialMap) -> impl Fn(&FibSimplex) -> FibSimplex + 'a {
    move |s| {
        extend(s, |c| match c {
            FibCore::Base(b) => base_simplex(target, &map.images[b.dim][b.index]),
            _ => panic!("not a base simplex"),
        })
    }
}
