//! Finite simplicial sets presented by their nondegenerate simplices.
//!
//! Every simplex is stored in Eilenberg-Zilber form: a surjection
//! `[n] -> [m]` applied to a nondegenerate `m`-simplex.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::ordinal::{compose, OrdinalMap};
use super::DeltaError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Simplex {
    pub epi: OrdinalMap,
    pub base: usize,
}

impl Simplex {
    pub fn nondegenerate(dim: usize, base: usize) -> Simplex {
        Simplex { epi: OrdinalMap::identity(dim), base }
    }

    pub fn dim(&self) -> usize {
        self.epi.source()
    }

    pub fn base_dim(&self) -> usize {
        self.epi.target()
    }

    pub fn is_degenerate(&self) -> bool {
        self.epi.source() != self.epi.target()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteSimplicialSet {
    max_dim: usize,
    /// `faces[m][x]`: the `m + 1` faces of the nondegenerate `m`-simplex `x`
    /// (empty lists in dimension 0).
    faces: Vec<Vec<Vec<Simplex>>>,
}

impl FiniteSimplicialSet {
    /// The empty simplicial set, known up to dimension `max_dim`.
    pub fn empty(max_dim: usize) -> FiniteSimplicialSet {
        FiniteSimplicialSet { max_dim, faces: vec![Vec::new(); max_dim + 1] }
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn nondegenerate_count(&self, dim: usize) -> usize {
        self.faces.get(dim).map_or(0, |v| v.len())
    }

    pub fn is_empty(&self) -> bool {
        self.nondegenerate_count(0) == 0
    }

    pub fn faces_of(&self, dim: usize, x: usize) -> &[Simplex] {
        &self.faces[dim][x]
    }

    pub fn add_vertex(&mut self) -> usize {
        self.faces[0].push(Vec::new());
        self.faces[0].len() - 1
    }

    /// Adds a nondegenerate simplex with the given faces, checking the
    /// simplicial identities `d_i d_j = d_{j-1} d_i` for `i < j`.
    pub fn add_simplex(&mut self, dim: usize, faces: Vec<Simplex>) -> Result<usize, DeltaError> {
        if dim == 0 {
            return Ok(self.add_vertex());
        }
        if dim > self.max_dim {
            return Err(DeltaError::InvalidSimplex(format!("dimension {dim} exceeds bound {}", self.max_dim)));
        }
        if faces.len() != dim + 1 || faces.iter().any(|f| f.dim() != dim - 1) {
            return Err(DeltaError::InvalidSimplex(format!("a {dim}-simplex needs {} faces of dimension {}", dim + 1, dim - 1)));
        }
        for f in &faces {
            if f.base >= self.nondegenerate_count(f.base_dim()) {
                return Err(DeltaError::InvalidSimplex("face refers to an unknown simplex".into()));
            }
        }
        if dim >= 2 {
            for j in 0..=dim {
                for i in 0..j {
                    let a = self.face(&faces[j], i);
                    let b = self.face(&faces[i], j - 1);
                    if a != b {
                        return Err(DeltaError::InvalidSimplex(format!("d_{i} d_{j} != d_{} d_{i}", j - 1)));
                    }
                }
            }
        }
        self.faces[dim].push(faces);
        Ok(self.faces[dim].len() - 1)
    }

    /// The simplicial operator `theta^*` applied to `s`, for `theta: [m] -> [dim s]`.
    pub fn act(&self, theta: &OrdinalMap, s: &Simplex) -> Simplex {
        assert_eq!(theta.target(), s.dim(), "operator does not match simplex dimension");
        let st = compose(theta, &s.epi).expect("checked above");
        let (epi, mono) = st.epi_mono();
        let inner = self.mono_face(&mono, s.base_dim(), s.base);
        Simplex { epi: compose(&epi, &inner.epi).expect("dimensions agree"), base: inner.base }
    }

    fn mono_face(&self, mono: &OrdinalMap, dim: usize, base: usize) -> Simplex {
        if mono.is_identity() {
            return Simplex::nondegenerate(dim, base);
        }
        // the largest omitted index is applied first
        let w = super::ordinal::epi_mono_factor(mono);
        let i = w.faces[0];
        let first = self.faces[dim][base][i].clone();
        // remaining mono: mono = d^i . rest, so rest = the map into [dim-1]
        let rest_vals: Vec<usize> = mono.values().iter().map(|&v| if v < i { v } else { v - 1 }).collect();
        let rest = OrdinalMap::new_unchecked(mono.source(), dim - 1, rest_vals);
        self.act(&rest, &first)
    }

    pub fn face(&self, s: &Simplex, i: usize) -> Simplex {
        self.act(&OrdinalMap::face(s.dim(), i), s)
    }

    pub fn degeneracy(&self, s: &Simplex, j: usize) -> Simplex {
        self.act(&OrdinalMap::degeneracy(s.dim(), j), s)
    }

    /// All simplices of dimension `n`, degenerate ones included, in a fixed order.
    pub fn simplices(&self, n: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        for m in 0..=n.min(self.max_dim) {
            let count = self.nondegenerate_count(m);
            if count == 0 {
                continue;
            }
            for epi in OrdinalMap::all_surjections(n, m) {
                for base in 0..count {
                    out.push(Simplex { epi: epi.clone(), base });
                }
            }
        }
        out
    }

    pub fn simplex_count(&self, n: usize) -> usize {
        self.simplices(n).len()
    }

    pub fn vertices(&self, s: &Simplex) -> Vec<usize> {
        (0..=s.dim()).map(|i| self.act(&OrdinalMap::constant(0, s.dim(), i), s).base).collect()
    }

    /// The standard simplex `Delta[k]`, truncated at `max_dim`.
    pub fn standard(k: usize, max_dim: usize) -> FiniteSimplicialSet {
        FiniteSimplicialSet::standard_filtered(k, max_dim, |_| true)
    }

    /// The boundary of `Delta[n]`.
    pub fn boundary(n: usize) -> FiniteSimplicialSet {
        FiniteSimplicialSet::standard_filtered(n, n, |f| !(f.source() == n))
    }

    /// The horn `Lambda^k[n]`: all faces of `Delta[n]` except the `k`-th.
    pub fn horn(n: usize, k: usize) -> FiniteSimplicialSet {
        assert!(k <= n && n >= 1);
        FiniteSimplicialSet::standard_filtered(n, n, |f| {
            f.source() < n - 1 || (f.source() == n - 1 && f.values().contains(&k))
        })
    }

    /// Sub-simplicial set of `Delta[k]` generated by the injections accepted
    /// by `keep` (which must be closed under faces).
    fn standard_filtered(k: usize, max_dim: usize, keep: impl Fn(&OrdinalMap) -> bool) -> FiniteSimplicialSet {
        let mut x = FiniteSimplicialSet::empty(max_dim);
        let mut index: HashMap<OrdinalMap, usize> = HashMap::new();
        for m in 0..=k.min(max_dim) {
            for f in OrdinalMap::all_injections(m, k) {
                if !keep(&f) {
                    continue;
                }
                let faces = if m == 0 {
                    Vec::new()
                } else {
                    (0..=m)
                        .map(|i| {
                            let g = compose(&OrdinalMap::face(m, i), &f).unwrap();
                            Simplex::nondegenerate(m - 1, index[&g])
                        })
                        .collect()
                };
                let id = x.add_simplex(m, faces).expect("faces of a standard simplex are consistent");
                index.insert(f, id);
            }
        }
        x
    }

    /// The simplex of `Delta[k]` given by a monotone map `[n] -> [k]`.
    pub fn standard_simplex(map: &OrdinalMap) -> Simplex {
        let (epi, mono) = map.epi_mono();
        let idx = OrdinalMap::all_injections(mono.source(), mono.target()).iter().position(|g| *g == mono).unwrap();
        Simplex { epi, base: idx }
    }

    /// The product `self x other` up to `max_dim`.
    pub fn product(&self, other: &FiniteSimplicialSet, max_dim: usize) -> FiniteSimplicialSet {
        let mut x = FiniteSimplicialSet::empty(max_dim);
        let mut index: HashMap<(Simplex, Simplex), usize> = HashMap::new();
        for n in 0..=max_dim {
            for a in self.simplices(n) {
                for b in other.simplices(n) {
                    let joint = (0..n).any(|j| {
                        a.epi.at(j) == a.epi.at(j + 1) && b.epi.at(j) == b.epi.at(j + 1)
                    });
                    if joint {
                        continue;
                    }
                    let faces = if n == 0 {
                        Vec::new()
                    } else {
                        (0..=n)
                            .map(|i| product_normal_form(&self.face(&a, i), &other.face(&b, i), &index))
                            .collect()
                    };
                    let id = x.add_simplex(n, faces).expect("product faces are consistent");
                    index.insert((a.clone(), b.clone()), id);
                }
            }
        }
        x
    }
}

/// Writes a pair of `n`-simplices as a degeneracy of a nondegenerate pair.
fn product_normal_form(a: &Simplex, b: &Simplex, index: &HashMap<(Simplex, Simplex), usize>) -> Simplex {
    let n = a.dim();
    let collapsed: Vec<usize> = (0..n).filter(|&j| a.epi.at(j) == a.epi.at(j + 1) && b.epi.at(j) == b.epi.at(j + 1)).collect();
    // joint surjection identifying exactly the collapsed pairs
    let mut vals = Vec::with_capacity(n + 1);
    let mut cur = 0usize;
    for i in 0..=n {
        if i > 0 && !collapsed.contains(&(i - 1)) {
            cur += 1;
        }
        vals.push(cur);
    }
    let eps = OrdinalMap::new_unchecked(n, cur, vals);
    let section: Vec<usize> = (0..=cur).map(|v| eps.values().iter().position(|&x| x == v).unwrap()).collect();
    let restrict = |s: &Simplex| Simplex {
        epi: OrdinalMap::new_unchecked(cur, s.base_dim(), section.iter().map(|&i| s.epi.at(i)).collect()),
        base: s.base,
    };
    let key = (restrict(a), restrict(b));
    Simplex { epi: eps, base: index[&key] }
}

/// A simplicial map, given on nondegenerate simplices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimplicialMap {
    pub images: Vec<Vec<Simplex>>,
}

impl SimplicialMap {
    pub fn apply(&self, target: &FiniteSimplicialSet, s: &Simplex) -> Simplex {
        let img = &self.images[s.base_dim()][s.base];
        target.act(&s.epi, img)
    }

    /// Checks dimensions and compatibility with faces.
    pub fn is_valid(&self, source: &FiniteSimplicialSet, target: &FiniteSimplicialSet) -> bool {
        for m in 0..=source.max_dim() {
            let imgs = self.images.get(m).map_or(&[][..], |v| &v[..]);
            if imgs.len() != source.nondegenerate_count(m) {
                return false;
            }
            for (x, img) in imgs.iter().enumerate() {
                if img.dim() != m || img.base >= target.nondegenerate_count(img.base_dim()) {
                    return false;
                }
                if m > 0 {
                    for i in 0..=m {
                        let lhs = self.apply(target, &source.faces_of(m, x)[i]);
                        if lhs != target.face(img, i) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}
