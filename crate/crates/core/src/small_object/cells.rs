//! Simplices over lazily named nondegenerate cells, and indexed tables of the
//! simplices of a bounded space.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::Serialize;

use crate::delta::{compose, FiniteSimplicialSet, OrdinalMap, Simplex};

/// A nondegenerate cell whose faces are known from its construction.
pub trait Core: Clone + Eq + Hash + Ord + Debug {
    fn dim(&self) -> usize;
    /// The stage at which the cell was attached in its own space.
    fn stage(&self) -> usize;
    fn faces(&self) -> Vec<Simp<Self>>;
}

/// A degeneracy `epi` of a nondegenerate cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simp<K> {
    pub epi: OrdinalMap,
    pub core: K,
}

impl<K: Core> Simp<K> {
    pub fn nondegenerate(core: K) -> Simp<K> {
        Simp { epi: OrdinalMap::identity(core.dim()), core }
    }

    pub fn dim(&self) -> usize {
        self.epi.source()
    }

    pub fn stage(&self) -> usize {
        self.core.stage()
    }

    pub fn is_degenerate(&self) -> bool {
        self.epi.source() != self.epi.target()
    }
}

/// `theta^* s` for `theta: [m] -> [dim s]`.
pub fn act<K: Core>(theta: &OrdinalMap, s: &Simp<K>) -> Simp<K> {
    let st = compose(theta, &s.epi).expect("operator matches the simplex");
    let (epi, mono) = st.epi_mono();
    let inner = mono_face(&mono, &s.core);
    Simp { epi: compose(&epi, &inner.epi).expect("dimensions agree"), core: inner.core }
}

fn mono_face<K: Core>(mono: &OrdinalMap, core: &K) -> Simp<K> {
    if mono.is_identity() {
        return Simp::nondegenerate(core.clone());
    }
    let dim = mono.target();
    let i = (0..=dim).rev().find(|v| !mono.values().contains(v)).expect("a proper injection omits a value");
    let first = core.faces().swap_remove(i);
    let rest = OrdinalMap::new_unchecked(mono.source(), dim - 1, mono.values().iter().map(|&v| if v < i { v } else { v - 1 }).collect());
    act(&rest, &first)
}

pub fn face<K: Core>(s: &Simp<K>, i: usize) -> Simp<K> {
    act(&OrdinalMap::face(s.dim(), i), s)
}

/// A simplicial map given on nondegenerate cells, extended to all simplices.
pub fn extend<K: Core, L: Core>(s: &Simp<K>, on_cell: impl FnOnce(&K) -> Simp<L>) -> Simp<L> {
    let image = on_cell(&s.core);
    act(&s.epi, &image)
}

/// A nondegenerate simplex of a finite simplicial set, carrying its faces.
/// Identity is `(space, dim, index)`.
#[derive(Clone, Debug)]
pub struct BaseCell<K> {
    pub space: usize,
    pub dim: usize,
    pub index: usize,
    pub faces: Vec<Simp<K>>,
}

impl<K> BaseCell<K> {
    fn key(&self) -> (usize, usize, usize) {
        (self.space, self.dim, self.index)
    }
}

impl<K> PartialEq for BaseCell<K> {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl<K> Eq for BaseCell<K> {}

impl<K> Hash for BaseCell<K> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl<K> PartialOrd for BaseCell<K> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<K> Ord for BaseCell<K> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

/// The nondegenerate cells of `x` by dimension, wrapped as cores of type `K`.
pub fn base_cells<K: Core>(x: &FiniteSimplicialSet, space: usize, wrap: impl Fn(Arc<BaseCell<K>>) -> K) -> Vec<Vec<K>> {
    let mut cells: Vec<Vec<K>> = Vec::new();
    for dim in 0..=x.max_dim() {
        let row = (0..x.nondegenerate_count(dim))
            .map(|index| {
                let faces = x.faces_of(dim, index).iter().map(|s| base_simplex(&cells, s)).collect();
                wrap(Arc::new(BaseCell { space, dim, index, faces }))
            })
            .collect();
        cells.push(row);
    }
    cells
}

/// The simplex `s` of a finite set whose nondegenerate cells are `cells`.
pub fn base_simplex<K: Core>(cells: &[Vec<K>], s: &Simplex) -> Simp<K> {
    Simp { epi: s.epi.clone(), core: cells[s.base_dim()][s.base].clone() }
}

/// All simplices of dimensions `0..=max_dim` of a space given by its
/// nondegenerate cells, with integer face tables.
#[derive(Clone, Debug)]
pub struct SimplexTable<K> {
    pub simplices: Vec<Vec<Simp<K>>>,
    index: Vec<HashMap<Simp<K>, usize>>,
    faces: Vec<Vec<Vec<usize>>>,
}

impl<K: Core> SimplexTable<K> {
    pub fn new(cells: &[Vec<K>], max_dim: usize) -> SimplexTable<K> {
        let mut simplices = Vec::with_capacity(max_dim + 1);
        let mut index = Vec::with_capacity(max_dim + 1);
        let mut faces: Vec<Vec<Vec<usize>>> = Vec::with_capacity(max_dim + 1);
        for m in 0..=max_dim {
            let mut list = Vec::new();
            for (d, row) in cells.iter().enumerate().take(m + 1) {
                if row.is_empty() {
                    continue;
                }
                for epi in OrdinalMap::all_surjections(m, d) {
                    for c in row {
                        list.push(Simp { epi: epi.clone(), core: c.clone() });
                    }
                }
            }
            let idx: HashMap<Simp<K>, usize> = list.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
            let f = if m == 0 {
                vec![Vec::new(); list.len()]
            } else {
                list.iter()
                    .map(|s| (0..=m).map(|i| index_of(&index[m - 1], &face(s, i))).collect())
                    .collect()
            };
            simplices.push(list);
            index.push(idx);
            faces.push(f);
        }
        SimplexTable { simplices, index, faces }
    }

    pub fn id(&self, s: &Simp<K>) -> Option<usize> {
        self.index.get(s.dim())?.get(s).copied()
    }

    pub fn face_id(&self, m: usize, id: usize, i: usize) -> usize {
        self.faces[m][id][i]
    }

    pub fn count(&self, m: usize) -> usize {
        self.simplices.get(m).map_or(0, Vec::len)
    }

    /// Tuples of `(n - 1)`-simplices, one for each face index in `positions`,
    /// with `d_i x_j = d_{j-1} x_i` for `i < j`, drawn from per-position
    /// candidate lists.
    pub fn compatible_tuples(&self, n: usize, positions: &[usize], candidates: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.for_each_compatible(n, positions, candidates, &mut |t| {
            out.push(t.to_vec());
            true
        });
        out
    }

    /// Visits compatible tuples until `visit` returns false; returns whether
    /// the enumeration ran to the end.
    pub fn for_each_compatible(&self, n: usize, positions: &[usize], candidates: &[Vec<usize>], visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let mut current = Vec::with_capacity(positions.len());
        self.extend_tuple(n, positions, candidates, &mut current, visit)
    }

    fn extend_tuple(&self, n: usize, positions: &[usize], candidates: &[Vec<usize>], current: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let p = current.len();
        if p == positions.len() {
            return visit(current);
        }
        let j = positions[p];
        for &x in &candidates[p] {
            let fits = n < 2
                || current.iter().zip(positions).all(|(&y, &i)| self.face_id(n - 1, x, i) == self.face_id(n - 1, y, j - 1));
            if fits {
                current.push(x);
                let go_on = self.extend_tuple(n, positions, candidates, current, visit);
                current.pop();
                if !go_on {
                    return false;
                }
            }
        }
        true
    }
}

fn index_of<K: Core>(index: &HashMap<Simp<K>, usize>, s: &Simp<K>) -> usize {
    *index.get(s).unwrap_or_else(|| panic!("face {s:?} lies outside the table"))
}

/// Stable short names for the cells of an enumerated space.
#[derive(Clone, Debug)]
pub struct Names<K: Hash + Eq> {
    names: HashMap<K, String>,
}

impl<K: Hash + Eq> Default for Names<K> {
    fn default() -> Self {
        Names { names: HashMap::new() }
    }
}

impl<K: Core> Names<K> {
    pub fn insert(&mut self, core: &K, name: String) {
        self.names.insert(core.clone(), name);
    }

    pub fn cell(&self, core: &K) -> String {
        self.names.get(core).cloned().unwrap_or_else(|| "?".into())
    }

    pub fn simplex(&self, s: &Simp<K>) -> String {
        if s.is_degenerate() {
            format!("{}{:?}", self.cell(&s.core), s.epi.values())
        } else {
            self.cell(&s.core)
        }
    }
}

/// One cell attached at a stage, with its provenance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Attachment {
    pub cell: String,
    /// `"boundary n"` or `"horn n k"`.
    pub generator: String,
    /// Attaching datum: the boundary or horn faces, then (cofibrant case) the simplex of the base.
    pub datum: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageRecord {
    pub stage: usize,
    pub attachments: Vec<Attachment>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StageLedger {
    pub stages: Vec<StageRecord>,
    /// Attaching data present at the last stage, left out by the stage bound
    /// (counted on request).
    pub unreached: Option<usize>,
    /// False when the cell budget stopped the construction early.
    pub complete: bool,
}

impl StageLedger {
    pub fn attachment_count(&self) -> usize {
        self.stages.iter().map(|s| s.attachments.len()).sum()
    }
}
