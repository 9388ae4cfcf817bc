//! Multigraded complexes with commuting differentials and their Dold-Kan
//! realizations as (multi)cosimplicial simplicial modules.
//!
//! Every direction but the last is a cochain direction (differentials raise
//! the degree); the last is a chain direction (differentials lower it).

use std::collections::HashMap;

use rand::Rng;
use serde::Serialize;

use crate::delta::{compose, OrdinalMap};
use crate::linalg::{Field, Matrix, Scalar, SparseVec};
use crate::simplicial::{LevelMap, SimplicialObject, VectCat};

use super::bicomplex::Bicomplex;
use super::cssm::CosimplicialSimplicialModule;
use super::SpectralError;

#[derive(Clone, Debug)]
pub struct MultiComplex {
    pub field: Field,
    /// Largest degree in each direction.
    pub bounds: Vec<usize>,
    dims: Vec<usize>,
    /// `maps[dir][flat(idx)]`: the differential out of `idx` in direction `dir`.
    maps: Vec<Vec<Matrix>>,
}

/// A basis of generators with a multidegree each, and unit-coefficient
/// differentials between them.
#[derive(Clone, Debug, Default, Serialize)]
pub struct GeneratorSet {
    pub degrees: Vec<Vec<usize>>,
    /// `(direction, from, to)`.
    pub edges: Vec<(usize, usize, usize)>,
}

impl GeneratorSet {
    pub fn add(&mut self, degree: Vec<usize>) -> usize {
        self.degrees.push(degree);
        self.degrees.len() - 1
    }

    /// Tensor product of one-direction pieces; `factors[d]` lists the degrees
    /// of its generators and its edges.
    pub fn add_tensor(&mut self, factors: &[(Vec<usize>, Vec<(usize, usize)>)]) {
        let base = self.degrees.len();
        let sizes: Vec<usize> = factors.iter().map(|f| f.0.len()).collect();
        let total: usize = sizes.iter().product();
        let index = |digits: &[usize]| digits.iter().zip(&sizes).fold(0, |acc, (d, s)| acc * s + d);
        let mut digits = vec![0; factors.len()];
        for _ in 0..total {
            self.degrees.push(digits.iter().enumerate().map(|(d, &i)| factors[d].0[i]).collect());
            for (d, f) in factors.iter().enumerate() {
                for &(from, to) in &f.1 {
                    if digits[d] == from {
                        let mut other = digits.clone();
                        other[d] = to;
                        self.edges.push((d, base + index(&digits), base + index(&other)));
                    }
                }
            }
            for d in (0..digits.len()).rev() {
                digits[d] += 1;
                if digits[d] < sizes[d] {
                    break;
                }
                digits[d] = 0;
            }
        }
    }
}

fn flat(bounds: &[usize], idx: &[usize]) -> usize {
    idx.iter().zip(bounds).fold(0, |acc, (i, b)| acc * (b + 1) + i)
}

fn all_indices(bounds: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        out = out.into_iter().flat_map(|p| (0..=b).map(move |i| [p.clone(), vec![i]].concat())).collect();
    }
    out
}

impl MultiComplex {
    pub fn directions(&self) -> usize {
        self.bounds.len()
    }

    pub fn dim(&self, idx: &[usize]) -> usize {
        if idx.iter().zip(&self.bounds).any(|(i, b)| i > b) {
            return 0;
        }
        self.dims[flat(&self.bounds, idx)]
    }

    /// Target of the differential in direction `dir`, if inside the bounds.
    pub fn step(&self, dir: usize, idx: &[usize]) -> Option<Vec<usize>> {
        let mut t = idx.to_vec();
        if dir + 1 == self.directions() {
            t[dir] = idx[dir].checked_sub(1)?;
        } else {
            t[dir] += 1;
            if t[dir] > self.bounds[dir] {
                return None;
            }
        }
        Some(t)
    }

    /// The differential out of `idx` in direction `dir` (zero rows past the bounds).
    pub fn map(&self, dir: usize, idx: &[usize]) -> Matrix {
        self.maps[dir][flat(&self.bounds, idx)].clone()
    }

    pub fn from_generators(field: &Field, bounds: Vec<usize>, gens: &GeneratorSet) -> Result<MultiComplex, SpectralError> {
        let n = bounds.len();
        let cells = all_indices(&bounds);
        let mut position = vec![0; gens.degrees.len()];
        let mut dims = vec![0; cells.len()];
        for (g, deg) in gens.degrees.iter().enumerate() {
            if deg.len() != n || deg.iter().zip(&bounds).any(|(i, b)| i > b) {
                return Err(SpectralError::Invalid(format!("generator {g} has degree {deg:?} outside the bounds")));
            }
            let f = flat(&bounds, deg);
            position[g] = dims[f];
            dims[f] += 1;
        }
        let mut entries: Vec<Vec<Vec<SparseVec>>> = (0..n).map(|_| cells.iter().map(|c| vec![Vec::new(); dims[flat(&bounds, c)]]).collect()).collect();
        let shell = MultiComplex { field: field.clone(), bounds: bounds.clone(), dims: dims.clone(), maps: Vec::new() };
        for &(dir, from, to) in &gens.edges {
            let src = &gens.degrees[from];
            if shell.step(dir, src).as_deref() != Some(gens.degrees[to].as_slice()) {
                return Err(SpectralError::Invalid(format!("edge {from} -> {to} does not move one step in direction {dir}")));
            }
            entries[dir][flat(&bounds, src)][position[from]].push((position[to], field.one()));
        }
        let maps = entries
            .into_iter()
            .enumerate()
            .map(|(dir, per_cell)| {
                cells
                    .iter()
                    .zip(per_cell)
                    .map(|(c, cols)| {
                        let rows = shell.step(dir, c).map_or(0, |t| shell.dim(&t));
                        Matrix::from_sparse_cols(field, rows, shell.dim(c), cols)
                    })
                    .collect()
            })
            .collect();
        let out = MultiComplex { field: field.clone(), bounds, dims, maps };
        out.validate()?;
        Ok(out)
    }

    /// A multicomplex from its dimensions and differentials; `map(dir, idx)`
    /// is `None` where the differential leaves the bounds.
    pub fn from_parts(
        field: &Field,
        bounds: Vec<usize>,
        dim: impl Fn(&[usize]) -> usize,
        map: impl Fn(usize, &[usize]) -> Option<Matrix>,
    ) -> MultiComplex {
        let cells = all_indices(&bounds);
        let dims: Vec<usize> = cells.iter().map(|c| dim(c)).collect();
        let maps = (0..bounds.len())
            .map(|dir| cells.iter().map(|c| map(dir, c).unwrap_or_else(|| Matrix::zeros(field, 0, dims[flat(&bounds, c)]))).collect())
            .collect();
        MultiComplex { field: field.clone(), bounds, dims, maps }
    }

    /// Squares vanish and differentials in different directions commute.
    pub fn validate(&self) -> Result<(), SpectralError> {
        for idx in all_indices(&self.bounds) {
            for a in 0..self.directions() {
                let Some(ia) = self.step(a, &idx) else { continue };
                for b in 0..self.directions() {
                    let Some(iab) = self.step(b, &ia) else { continue };
                    let ab = self.map(b, &ia).mul(&self.map(a, &idx));
                    let ok = if a == b {
                        ab.is_zero()
                    } else {
                        let ib = self.step(b, &idx).unwrap();
                        debug_assert_eq!(self.step(a, &ib).as_ref(), Some(&iab));
                        ab == self.map(a, &ib).mul(&self.map(b, &idx))
                    };
                    if !ok {
                        return Err(SpectralError::Invalid(format!("differentials {a} and {b} fail at {idx:?}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Conjugate every differential by a random invertible matrix per multidegree.
    pub fn change_basis(&self, rng: &mut impl Rng) -> MultiComplex {
        let cells = all_indices(&self.bounds);
        let bases: Vec<(Matrix, Matrix)> = cells
            .iter()
            .map(|c| {
                let p = random_invertible(&self.field, self.dim(c), rng);
                let inv = p.inverse().expect("invertible by construction");
                (p, inv)
            })
            .collect();
        let maps = (0..self.directions())
            .map(|dir| {
                cells
                    .iter()
                    .map(|c| {
                        let m = self.map(dir, c);
                        match self.step(dir, c) {
                            Some(t) => bases[flat(&self.bounds, &t)].0.mul(&m).mul(&bases[flat(&self.bounds, c)].1),
                            None => m,
                        }
                    })
                    .collect()
            })
            .collect();
        MultiComplex { field: self.field.clone(), bounds: self.bounds.clone(), dims: self.dims.clone(), maps }
    }

    /// The two-direction case as a bicomplex `C^{s,t}`.
    pub fn to_bicomplex(&self) -> Result<Bicomplex, SpectralError> {
        if self.directions() != 2 {
            return Err(SpectralError::Invalid("a bicomplex has exactly two directions".into()));
        }
        let (sm, tm) = (self.bounds[0], self.bounds[1]);
        let dims = (0..=sm).map(|s| (0..=tm).map(|t| self.dim(&[s, t])).collect()).collect();
        let horizontal = (0..sm).map(|s| (0..=tm).map(|t| self.map(0, &[s, t])).collect()).collect();
        let vertical = (0..=sm).map(|s| (0..=tm).map(|t| self.map(1, &[s, t])).collect()).collect();
        Bicomplex::new(&self.field, dims, horizontal, vertical)
    }

    /// Total complex homology, each direction normalized away: degree is the
    /// chain degree minus the sum of the cochain degrees.
    pub fn total_homology(&self) -> Vec<(i64, usize)> {
        let n = self.directions();
        let cells = all_indices(&self.bounds);
        let degree = |c: &[usize]| c[n - 1] as i64 - c[..n - 1].iter().sum::<usize>() as i64;
        let lo = -(self.bounds[..n - 1].iter().sum::<usize>() as i64);
        let hi = self.bounds[n - 1] as i64;
        let mut offsets: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut sizes = vec![0usize; (hi - lo + 1) as usize];
        for c in &cells {
            let k = (degree(c) - lo) as usize;
            offsets.insert(c.clone(), sizes[k]);
            sizes[k] += self.dim(c);
        }
        let mut diffs = vec![Matrix::zeros(&self.field, 0, sizes[0])];
        for k in 1..sizes.len() {
            let mut cols: Vec<SparseVec> = vec![Vec::new(); sizes[k]];
            for c in cells.iter().filter(|c| (degree(c) - lo) as usize == k) {
                let mut sign_exp = 0usize;
                for dir in 0..n {
                    let parity = sign_exp % 2;
                    sign_exp += c[dir];
                    let Some(t) = self.step(dir, c) else { continue };
                    let sign = if parity == 0 { self.field.one() } else { self.field.one().neg() };
                    let (so, to) = (offsets[c], offsets[&t]);
                    for (j, col) in self.map(dir, c).sparse_cols().into_iter().enumerate() {
                        cols[so + j].extend(col.into_iter().map(|(r, v)| (to + r, v.mul(&sign))));
                    }
                }
            }
            for col in cols.iter_mut() {
                col.sort_by_key(|e| e.0);
            }
            diffs.push(Matrix::from_sparse_cols(&self.field, sizes[k - 1], sizes[k], cols));
        }
        let c = crate::linear::ChainComplex::new(&self.field, lo, sizes, diffs).expect("signed total differential squares to zero");
        c.homology_dims()
    }
}

pub(crate) fn random_scalar<R: Rng + ?Sized>(field: &Field, rng: &mut R) -> Scalar {
    match field {
        Field::Prime(p) => field.from_i64(rng.gen_range(0..*p as i64)),
        Field::Rational => field.from_i64(rng.gen_range(-2..=2)),
    }
}

pub fn random_matrix(field: &Field, rows: usize, cols: usize, rng: &mut impl Rng) -> Matrix {
    let data = (0..rows)
        .map(|_| (0..cols).filter_map(|j| Some((j, random_scalar(field, rng))).filter(|e| !e.1.is_zero())).collect())
        .collect();
    Matrix::from_sparse_rows(field, rows, cols, data)
}

/// A product of random unit lower and upper triangular matrices and a random permutation.
pub fn random_invertible(field: &Field, n: usize, rng: &mut impl Rng) -> Matrix {
    let tri = |lower: bool, rng: &mut dyn rand::RngCore| {
        let rows = (0..n)
            .map(|i| {
                let mut row: SparseVec = Vec::new();
                for j in 0..n {
                    let x = if i == j {
                        field.one()
                    } else if (j < i) == lower {
                        random_scalar(field, &mut *rng)
                    } else {
                        field.zero()
                    };
                    if !x.is_zero() {
                        row.push((j, x));
                    }
                }
                row
            })
            .collect();
        Matrix::from_sparse_rows(field, n, n, rows)
    };
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let p = Matrix::identity(field, n).select_rows(&perm);
    p.mul(&tri(true, rng)).mul(&tri(false, rng))
}

/// Summands of the Dold-Kan object at a multilevel: one per tuple of surjections.
struct Summands {
    list: Vec<(Vec<OrdinalMap>, usize)>,
    lookup: HashMap<Vec<OrdinalMap>, usize>,
    dim: usize,
}

/// The Dold-Kan realization of a multicomplex: cosimplicial in every
/// cochain direction, simplicial in the chain direction.
pub struct DoldKan<'a> {
    c: &'a MultiComplex,
    cache: std::sync::Mutex<HashMap<Vec<usize>, std::sync::Arc<Summands>>>,
}

impl<'a> DoldKan<'a> {
    pub fn new(c: &'a MultiComplex) -> DoldKan<'a> {
        DoldKan { c, cache: std::sync::Mutex::new(HashMap::new()) }
    }

    fn summands(&self, level: &[usize]) -> std::sync::Arc<Summands> {
        if let Some(s) = self.cache.lock().unwrap().get(level) {
            return s.clone();
        }
        let mut tuples: Vec<Vec<OrdinalMap>> = vec![Vec::new()];
        for (d, &n) in level.iter().enumerate() {
            let maps: Vec<OrdinalMap> = (0..=n.min(self.c.bounds[d])).flat_map(|k| OrdinalMap::all_surjections(n, k)).collect();
            tuples = tuples.into_iter().flat_map(|t| maps.iter().map(move |m| [t.clone(), vec![m.clone()]].concat())).collect();
        }
        let mut off = 0;
        let mut list = Vec::with_capacity(tuples.len());
        let mut lookup = HashMap::new();
        for t in tuples {
            let deg: Vec<usize> = t.iter().map(|m| m.target()).collect();
            lookup.insert(t.clone(), off);
            list.push((t, off));
            off += self.c.dim(&deg);
        }
        let s = std::sync::Arc::new(Summands { list, lookup, dim: off });
        self.cache.lock().unwrap().insert(level.to_vec(), s.clone());
        s
    }

    pub fn dim(&self, level: &[usize]) -> usize {
        self.summands(level).dim
    }

    /// The structure map of `theta` in direction `dir` out of `level`
    /// (covariant in cochain directions, contravariant in the chain direction).
    pub fn operator(&self, dir: usize, theta: &OrdinalMap, level: &[usize]) -> Matrix {
        let field = &self.c.field;
        let chain = dir + 1 == self.c.directions();
        let mut tgt_level = level.to_vec();
        tgt_level[dir] = if chain { theta.source() } else { theta.target() };
        let (src, tgt) = (self.summands(level), self.summands(&tgt_level));
        let mut cols: Vec<SparseVec> = vec![Vec::new(); src.dim];
        let mut put = |block: &Matrix, row_off: usize, col_off: usize| {
            for (j, col) in block.sparse_cols().into_iter().enumerate() {
                cols[col_off + j].extend(col.into_iter().map(|(r, v)| (row_off + r, v)));
            }
        };
        let walk = if chain { &src.list } else { &tgt.list };
        for (maps, off) in walk {
            let (e, mono) = compose(theta, &maps[dir]).expect("composable").epi_mono();
            let mut other = maps.clone();
            other[dir] = e.clone();
            let (k, j) = (maps[dir].target(), e.target());
            let deg: Vec<usize> = (if chain { maps } else { &other }).iter().map(|m| m.target()).collect();
            let block = if mono.is_identity() {
                Matrix::identity(field, self.c.dim(&deg))
            } else if mono == OrdinalMap::face(k, 0) && j + 1 == k {
                self.c.map(dir, &deg)
            } else {
                continue;
            };
            if chain {
                put(&block, tgt.lookup[&other], *off);
            } else {
                put(&block, *off, src.lookup[&other]);
            }
        }
        for col in cols.iter_mut() {
            col.sort_by_key(|e| e.0);
        }
        Matrix::from_sparse_cols(field, tgt.dim, src.dim, cols)
    }

    /// The simplicial module in the chain direction at cochain multilevel `outer`.
    pub fn column(&self, outer: &[usize], n_max: usize) -> SimplicialObject<VectCat> {
        let d = self.c.directions() - 1;
        let at = |n: usize| [outer.to_vec(), vec![n]].concat();
        SimplicialObject {
            cat: VectCat::new(self.c.field.clone()),
            levels: (0..=n_max).map(|n| self.dim(&at(n))).collect(),
            faces: (0..=n_max).map(|n| if n == 0 { Vec::new() } else { (0..=n).map(|i| self.operator(d, &OrdinalMap::face(n, i), &at(n))).collect() }).collect(),
            degeneracies: (0..=n_max)
                .map(|n| if n == n_max { Vec::new() } else { (0..=n).map(|j| self.operator(d, &OrdinalMap::degeneracy(n, j), &at(n))).collect() })
                .collect(),
        }
    }

    /// A cochain-direction operator as a map of columns.
    pub fn column_map(&self, dir: usize, theta: &OrdinalMap, outer: &[usize], n_max: usize) -> LevelMap<VectCat> {
        LevelMap { components: (0..=n_max).map(|n| self.operator(dir, theta, &[outer.to_vec(), vec![n]].concat())).collect() }
    }
}

/// `Gamma` in both directions of a bicomplex, truncated at the given levels.
pub fn bicomplex_module(c: &MultiComplex, s_levels: usize, n_max: usize) -> Result<CosimplicialSimplicialModule, SpectralError> {
    if c.directions() != 2 {
        return Err(SpectralError::Invalid("expected one cochain and one chain direction".into()));
    }
    let dk = DoldKan::new(c);
    let columns = (0..=s_levels).map(|s| dk.column(&[s], n_max)).collect();
    let cofaces = (0..=s_levels)
        .map(|s| if s == 0 { Vec::new() } else { (0..=s).map(|i| dk.column_map(0, &OrdinalMap::face(s, i), &[s - 1], n_max)).collect() })
        .collect();
    let codegeneracies = (0..=s_levels)
        .map(|s| if s == s_levels { Vec::new() } else { (0..=s).map(|j| dk.column_map(0, &OrdinalMap::degeneracy(s, j), &[s + 1], n_max)).collect() })
        .collect();
    Ok(CosimplicialSimplicialModule { field: c.field.clone(), columns, cofaces, codegeneracies })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::conormalize_bicomplex;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn edge_up() -> (Vec<usize>, Vec<(usize, usize)>) {
        (vec![0, 1], vec![(0, 1)])
    }

    fn edge_down() -> (Vec<usize>, Vec<(usize, usize)>) {
        (vec![1, 0], vec![(0, 1)])
    }

    #[test]
    fn tensor_of_edges_is_acyclic() {
        let f = Field::f2();
        let mut g = GeneratorSet::default();
        g.add_tensor(&[edge_up(), edge_down()]);
        let c = MultiComplex::from_generators(&f, vec![1, 1], &g).unwrap();
        assert!(c.total_homology().iter().all(|&(_, d)| d == 0));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = c.change_basis(&mut rng);
        c.validate().unwrap();
    }

    #[test]
    fn rejects_misplaced_edges() {
        let f = Field::f2();
        let mut g = GeneratorSet::default();
        let a = g.add(vec![0, 0]);
        let b = g.add(vec![0, 1]);
        g.edges.push((1, a, b));
        assert!(MultiComplex::from_generators(&f, vec![1, 1], &g).is_err());
    }

    #[test]
    fn realization_recovers_the_bicomplex() {
        let f = Field::prime(3).unwrap();
        let mut g = GeneratorSet::default();
        g.add_tensor(&[edge_up(), edge_down()]);
        g.add_tensor(&[(vec![1], vec![]), (vec![0], vec![])]);
        g.add_tensor(&[edge_up(), (vec![1], vec![])]);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let c = MultiComplex::from_generators(&f, vec![1, 1], &g).unwrap().change_basis(&mut rng);
        let y = bicomplex_module(&c, 3, 3).unwrap();
        y.validate().unwrap();
        let b = conormalize_bicomplex(&y).unwrap().bicomplex;
        for s in 0..=3 {
            for t in 0..=3 {
                assert_eq!(b.dims[s][t], c.dim(&[s, t]), "({s},{t})");
            }
        }
        let tot = crate::spectral::total_complex(&b, 3);
        let direct = c.total_homology();
        for (m, d) in direct {
            assert_eq!(tot.complex.homology(m).dim, d, "degree {m}");
        }
    }
}
