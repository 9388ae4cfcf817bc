//! Bounded cofibrant replacement: cells attached along every commuting square
//! from a boundary inclusion, with the counit and the lifted diagonal.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::hash::{DefaultHasher, Hash, Hasher};
use std::sync::Arc;

use crate::delta::FiniteSimplicialSet;
use crate::triple::AxiomReport;

use super::cells::{base_cells, extend, Attachment, BaseCell, Core, Names, Simp, SimplexTable, StageLedger, StageRecord};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CofCore {
    Base(Arc<BaseCell<CofCore>>),
    Cell(Arc<CofCell>),
}

pub type CofSimplex = Simp<CofCore>;

/// The cell attached at `stage` along the square with top edge `boundary`
/// and bottom edge `datum`.
#[derive(Clone, Debug)]
pub struct CofCell {
    pub stage: usize,
    pub dim: usize,
    pub boundary: Vec<CofSimplex>,
    pub datum: CofSimplex,
    digest: u64,
}

impl CofCell {
    pub fn new(stage: usize, dim: usize, boundary: Vec<CofSimplex>, datum: CofSimplex) -> CofCell {
        let mut h = DefaultHasher::new();
        (stage, dim, &boundary, &datum).hash(&mut h);
        CofCell { stage, dim, boundary, datum, digest: h.finish() }
    }

    fn key(&self) -> (usize, usize, &Vec<CofSimplex>, &CofSimplex) {
        (self.stage, self.dim, &self.boundary, &self.datum)
    }
}

impl PartialEq for CofCell {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.digest == other.digest && self.key() == other.key())
    }
}

impl Eq for CofCell {}

impl Hash for CofCell {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.digest.hash(state);
    }
}

impl PartialOrd for CofCell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CofCell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl Core for CofCore {
    fn dim(&self) -> usize {
        match self {
            CofCore::Base(b) => b.dim,
            CofCore::Cell(c) => c.dim,
        }
    }

    fn stage(&self) -> usize {
        match self {
            CofCore::Base(_) => 0,
            CofCore::Cell(c) => c.stage,
        }
    }

    fn faces(&self) -> Vec<CofSimplex> {
        match self {
            CofCore::Base(b) => b.faces.clone(),
            CofCore::Cell(c) => c.boundary.clone(),
        }
    }
}

fn cell_of(core: &CofCore) -> &CofCell {
    match core {
        CofCore::Cell(c) => c,
        CofCore::Base(_) => panic!("a base simplex is not an attached cell"),
    }
}

/// The cells of a finite simplicial set, as the space the replacement covers.
pub fn cof_base(x: &FiniteSimplicialSet, space: usize) -> Vec<Vec<CofCore>> {
    base_cells(x, space, CofCore::Base)
}

/// `S_B X` up to dimension `N`, with its stage ledger.
#[derive(Clone, Debug)]
pub struct CofibrantReplacement {
    pub bound_stages: usize,
    pub bound_dim: usize,
    pub base: Vec<Vec<CofCore>>,
    /// Nondegenerate cells by dimension, in attachment order.
    pub cells: Vec<Vec<CofCore>>,
    pub names: Names<CofCore>,
    pub ledger: StageLedger,
}

/// `epsilon: S X -> X`.
pub fn counit(s: &CofSimplex) -> CofSimplex {
    extend(s, |c| cell_of(c).datum.clone())
}

/// Attaches one `n`-cell per commuting square `(boundary of Delta[n] -> S_beta, Delta[n] -> X)`
/// for `n <= bound_dim`, `bound_stages` times, stopping once `budget` cells exist.
pub fn cofibrant_stages(x: &FiniteSimplicialSet, bound_stages: usize, bound_dim: usize, budget: usize) -> CofibrantReplacement {
    let base = cof_base(x, 0);
    let base_table = SimplexTable::new(&base, bound_dim);
    let mut names = Names::default();
    for (d, row) in base.iter().enumerate() {
        for (i, c) in row.iter().enumerate() {
            names.insert(c, format!("x{d}.{i}"));
        }
    }
    let mut cells: Vec<Vec<CofCore>> = vec![Vec::new(); bound_dim + 1];
    let mut ledger = StageLedger { complete: true, ..StageLedger::default() };
    let mut total = 0;
    for beta in 0..bound_stages {
        let squares = squares(&base_table, &cells, bound_dim, budget.saturating_sub(total));
        let mut record = StageRecord { stage: beta + 1, attachments: Vec::new() };
        let mut fresh: Vec<Vec<CofCore>> = vec![Vec::new(); bound_dim + 1];
        for (n, boundary, datum) in squares {
            if total >= budget {
                ledger.complete = false;
                break;
            }
            let cell = CofCore::Cell(Arc::new(CofCell::new(beta + 1, n, boundary, datum)));
            let name = format!("c{}.{}.{}", beta + 1, n, fresh[n].len());
            let c = cell_of(&cell);
            let mut datum: Vec<String> = c.boundary.iter().map(|a| names.simplex(a)).collect();
            datum.push(names.simplex(&c.datum));
            record.attachments.push(Attachment { cell: name.clone(), generator: format!("boundary {n}"), datum });
            names.insert(&cell, name);
            fresh[n].push(cell);
            total += 1;
        }
        for (row, new) in cells.iter_mut().zip(fresh) {
            row.extend(new);
        }
        ledger.stages.push(record);
        if !ledger.complete {
            break;
        }
    }
    CofibrantReplacement { bound_stages, bound_dim, base, cells, names, ledger }
}

/// Every commuting square over the current cells: `(n, boundary, simplex of X)`.
fn squares(base_table: &SimplexTable<CofCore>, cells: &[Vec<CofCore>], bound_dim: usize, limit: usize) -> Vec<(usize, Vec<CofSimplex>, CofSimplex)> {
    let table = SimplexTable::new(cells, bound_dim.saturating_sub(1));
    let over: Vec<Vec<usize>> = (0..bound_dim)
        .map(|m| {
            table.simplices[m].iter().map(|a| base_table.id(&counit(a)).expect("counit lands in X")).collect()
        })
        .collect();
    let mut out = Vec::new();
    for n in 0..=bound_dim {
        for (xi, x) in base_table.simplices[n].iter().enumerate() {
            if n == 0 {
                out.push((0, Vec::new(), x.clone()));
                if out.len() > limit {
                    return out;
                }
                continue;
            }
            let positions: Vec<usize> = (0..=n).collect();
            let candidates: Vec<Vec<usize>> = positions
                .iter()
                .map(|&i| {
                    let want = base_table.face_id(n, xi, i);
                    (0..table.count(n - 1)).filter(|&a| over[n - 1][a] == want).collect()
                })
                .collect();
            let finished = table.for_each_compatible(n, &positions, &candidates, &mut |tuple| {
                let boundary = tuple.iter().map(|&a| table.simplices[n - 1][a].clone()).collect();
                out.push((n, boundary, x.clone()));
                out.len() <= limit
            });
            if !finished {
                return out;
            }
        }
    }
    out
}

impl CofibrantReplacement {
    /// Fills `ledger.unreached` with the squares a further stage would attach.
    pub fn record_unreached(&mut self) {
        let base_table = SimplexTable::new(&self.base, self.bound_dim);
        self.ledger.unreached = Some(squares(&base_table, &self.cells, self.bound_dim, usize::MAX).len());
    }

    pub fn cell_count(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn simplices(&self, max_dim: usize) -> SimplexTable<CofCore> {
        SimplexTable::new(&self.cells, max_dim)
    }

    /// Right lifting property of `epsilon` against every boundary inclusion of
    /// dimension at most `N`, for squares whose top edge lands in
    /// `S_{B-1}`: a filler is searched among all simplices of `S_B`.
    pub fn lifting_report(&self) -> AxiomReport {
        let mut report = AxiomReport::default();
        let earlier: Vec<Vec<CofCore>> =
            self.cells.iter().map(|row| row.iter().filter(|c| c.stage() < self.bound_stages).cloned().collect()).collect();
        let base_table = SimplexTable::new(&self.base, self.bound_dim);
        let table = self.simplices(self.bound_dim);
        for (k, (n, boundary, x)) in squares(&base_table, &earlier, self.bound_dim, usize::MAX).into_iter().enumerate() {
            let lifted = table.simplices[n].iter().any(|s| {
                counit(s) == x && (n == 0 || (0..=n).all(|i| super::cells::face(s, i) == boundary[i]))
            });
            report.check(&format!("lift boundary {n}"), k, lifted, &format!("no filler over {}", self.names.simplex(&x)));
        }
        report
    }

    /// Counit and coassociativity of the lifted diagonal on every cell.
    pub fn diagonal_report(&self) -> AxiomReport {
        let diag = Lift::new(|s: &CofSimplex| s.clone());
        let s_counit = Functor::new(counit);
        let s_diag = Functor::new(|s: &CofSimplex| diag.apply(s));
        let mut report = AxiomReport::default();
        for (k, c) in self.cells.iter().flatten().enumerate() {
            let s = Simp::nondegenerate(c.clone());
            let d = diag.apply(&s);
            let name = self.names.cell(c);
            report.check("counit . diagonal", k, counit(&d) == s, &name);
            report.check("S counit . diagonal", k, s_counit.apply(&d) == s, &name);
            report.check("S diagonal . diagonal = diagonal S . diagonal", k, s_diag.apply(&d) == diag.apply(&d), &name);
        }
        report
    }
}

/// `S f` for `f: X -> Y`, cell by cell.
pub struct Functor<F> {
    f: F,
    memo: RefCell<HashMap<CofCore, CofCore>>,
}

impl<F: Fn(&CofSimplex) -> CofSimplex> Functor<F> {
    pub fn new(f: F) -> Functor<F> {
        Functor { f, memo: RefCell::new(HashMap::new()) }
    }

    pub fn apply(&self, s: &CofSimplex) -> CofSimplex {
        extend(s, |c| Simp::nondegenerate(self.cell(c)))
    }

    fn cell(&self, core: &CofCore) -> CofCore {
        if let Some(hit) = self.memo.borrow().get(core) {
            return hit.clone();
        }
        let c = cell_of(core);
        let boundary = c.boundary.iter().map(|a| self.apply(a)).collect();
        let image = CofCore::Cell(Arc::new(CofCell::new(c.stage, c.dim, boundary, (self.f)(&c.datum))));
        self.memo.borrow_mut().insert(core.clone(), image.clone());
        image
    }
}

/// `L(b): S X -> S Y` for `b: S X -> Y`: each cell goes to the cell attached
/// along the image square.
pub struct Lift<F> {
    b: F,
    memo: RefCell<HashMap<CofCore, CofCore>>,
}

impl<F: Fn(&CofSimplex) -> CofSimplex> Lift<F> {
    pub fn new(b: F) -> Lift<F> {
        Lift { b, memo: RefCell::new(HashMap::new()) }
    }

    pub fn apply(&self, s: &CofSimplex) -> CofSimplex {
        extend(s, |c| Simp::nondegenerate(self.cell(c)))
    }

    fn cell(&self, core: &CofCore) -> CofCore {
        if let Some(hit) = self.memo.borrow().get(core) {
            return hit.clone();
        }
        let c = cell_of(core);
        let boundary = c.boundary.iter().map(|a| self.apply(a)).collect();
        let datum = (self.b)(&Simp::nondegenerate(core.clone()));
        let image = CofCore::Cell(Arc::new(CofCell::new(c.stage, c.dim, boundary, datum)));
        self.memo.borrow_mut().insert(core.clone(), image.clone());
        image
    }
}

/// A simplicial map between finite sets, acting on base simplices.
pub fn base_map<'a>(target: &'a [Vec<CofCore>], images: &'a crate::delta::SimplicialMap) -> impl Fn(&CofSimplex) -> CofSimplex + 'a {
    move |s| {
        extend(s, |c| match c {
            CofCore::Base(b) => {
                let image = &images.images[b.dim][b.index];
                super::cells::base_simplex(target, image)
            }
            CofCore::Cell(_) => panic!("not a base simplex"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::{OrdinalMap, SimplicialMap, Simplex};

    const BUDGET: usize = 100_000;

    #[test]
    fn point_at_dimension_zero_gains_one_vertex_per_stage() {
        let x = FiniteSimplicialSet::standard(0, 0);
        let r = cofibrant_stages(&x, 1, 0, BUDGET);
        assert_eq!(r.cells[0].len(), 1);
        assert_eq!(r.ledger.stages[0].attachments.len(), 1);
        let r3 = cofibrant_stages(&x, 3, 0, BUDGET);
        assert_eq!(r3.cells[0].len(), 3);
        assert!(r3.ledger.complete);
    }

    #[test]
    fn empty_set_stays_empty() {
        let x = FiniteSimplicialSet::empty(2);
        let mut r = cofibrant_stages(&x, 3, 2, BUDGET);
        r.record_unreached();
        assert_eq!(r.cell_count(), 0);
        assert_eq!(r.ledger.unreached, Some(0));
    }

    /// Squares for `Delta[1]`, `N = 1`, counted by hand from vertex counts:
    /// stage `b` adds 2 vertices and `3 * v_{b-1}^2 / 4`-style edge squares.
    #[test]
    fn interval_stage_counts_match_square_enumeration() {
        let x = FiniteSimplicialSet::standard(1, 1);
        let r = cofibrant_stages(&x, 3, 1, BUDGET);
        // vertices over each endpoint after stage b: b
        assert_eq!(r.cells[0].len(), 6);
        // edges at stage b+1: for each 1-simplex of X (01, 00, 11), pairs of
        // vertices over its endpoints in S_b: b * b each
        assert_eq!(r.cells[1].len(), 3 + 3 * 4);
        let mut r = r;
        r.record_unreached();
        // stage 4 would add 2 vertices and 3 * 3 * 3 edges
        assert_eq!(r.ledger.unreached, Some(2 + 27));
    }

    #[test]
    fn interval_lifting_property_holds() {
        let x = FiniteSimplicialSet::standard(1, 1);
        let r = cofibrant_stages(&x, 3, 1, BUDGET);
        let report = r.lifting_report();
        assert!(!report.checks.is_empty());
        assert!(report.all_passed(), "{:?}", report.failures().next());
    }

    #[test]
    fn lifting_fails_without_the_last_stage() {
        // squares through S_{B-1} need S_B; restricting to S_{B-1} loses them
        let x = FiniteSimplicialSet::standard(1, 1);
        let mut r = cofibrant_stages(&x, 2, 1, BUDGET);
        for row in r.cells.iter_mut() {
            row.retain(|c| c.stage() < 2);
        }
        assert!(!r.lifting_report().all_passed());
    }

    #[test]
    fn diagonal_axioms_hold_on_every_cell() {
        for (x, b, n) in [
            (FiniteSimplicialSet::standard(0, 1), 2, 1),
            (FiniteSimplicialSet::standard(1, 1), 2, 1),
            (FiniteSimplicialSet::boundary(2), 2, 2),
        ] {
            let r = cofibrant_stages(&x, b, n, BUDGET);
            let report = r.diagonal_report();
            assert!(report.all_passed(), "{:?}", report.failures().next());
        }
    }

    #[test]
    fn diagonal_of_the_point_vertex() {
        let x = FiniteSimplicialSet::standard(0, 0);
        let r = cofibrant_stages(&x, 1, 0, BUDGET);
        let v = Simp::nondegenerate(r.cells[0][0].clone());
        let d = Lift::new(|s: &CofSimplex| s.clone()).apply(&v);
        let expected = CofCore::Cell(Arc::new(CofCell::new(1, 0, Vec::new(), v.clone())));
        assert_eq!(d, Simp::nondegenerate(expected));
    }

    fn interval_to_point() -> (FiniteSimplicialSet, SimplicialMap) {
        let y = FiniteSimplicialSet::standard(0, 1);
        let images = vec![
            vec![Simplex::nondegenerate(0, 0), Simplex::nondegenerate(0, 0)],
            vec![Simplex { epi: OrdinalMap::degeneracy(0, 0), base: 0 }],
        ];
        (y, SimplicialMap { images })
    }

    #[test]
    fn lift_of_a_map_through_the_counit_is_the_functor() {
        let x = FiniteSimplicialSet::standard(1, 1);
        let (y, f) = interval_to_point();
        assert!(f.is_valid(&x, &y));
        let y_cells = cof_base(&y, 1);
        let fx = base_map(&y_cells, &f);
        let r = cofibrant_stages(&x, 2, 1, BUDGET);
        let sf = Functor::new(&fx);
        let lf = Lift::new(|s: &CofSimplex| fx(&counit(s)));
        for c in r.cells.iter().flatten() {
            let s = Simp::nondegenerate(c.clone());
            assert_eq!(lf.apply(&s), sf.apply(&s));
            // counit L(b) = b
            assert_eq!(counit(&lf.apply(&s)), fx(&counit(&s)));
        }
    }

    #[test]
    fn lift_is_associative() {
        let x = FiniteSimplicialSet::standard(1, 1);
        let r = cofibrant_stages(&x, 2, 1, BUDGET);
        // b = id, b' = id: L(b' L(b)) = L(b') L(b)
        let diag = Lift::new(|s: &CofSimplex| s.clone());
        let left = Lift::new(|s: &CofSimplex| diag.apply(s));
        // b = f counit, b' = g counit with f: Delta[1] -> Delta[0], g = id
        let (y, f) = interval_to_point();
        let y_cells = cof_base(&y, 1);
        let fx = base_map(&y_cells, &f);
        let lb = Lift::new(|s: &CofSimplex| fx(&counit(s)));
        let lb2 = Lift::new(|s: &CofSimplex| counit(s));
        let composite = Lift::new(|s: &CofSimplex| counit(&lb.apply(s)));
        for c in r.cells.iter().flatten() {
            let s = Simp::nondegenerate(c.clone());
            assert_eq!(left.apply(&s), diag.apply(&diag.apply(&s)));
            assert_eq!(composite.apply(&s), lb2.apply(&lb.apply(&s)));
        }
    }

    #[test]
    fn counit_is_surjective_up_to_the_bound() {
        let x = FiniteSimplicialSet::boundary(2);
        let r = cofibrant_stages(&x, 2, 1, BUDGET);
        let table = r.simplices(1);
        let base_table = SimplexTable::new(&r.base, 1);
        for m in 0..=1 {
            for x in &base_table.simplices[m] {
                assert!(table.simplices[m].iter().any(|s| &counit(s) == x));
            }
        }
    }

    #[test]
    fn replay_is_deterministic() {
        let x = FiniteSimplicialSet::standard(1, 1);
        let a = cofibrant_stages(&x, 3, 1, BUDGET);
        let b = cofibrant_stages(&x, 3, 1, BUDGET);
        assert_eq!(serde_json::to_string(&a.ledger).unwrap(), serde_json::to_string(&b.ledger).unwrap());
    }

    #[test]
    fn budget_marks_the_ledger_incomplete() {
        let x = FiniteSimplicialSet::standard(1, 1);
        let r = cofibrant_stages(&x, 3, 1, 4);
        assert!(!r.ledger.complete);
        assert_eq!(r.cell_count(), 4);
    }
}
