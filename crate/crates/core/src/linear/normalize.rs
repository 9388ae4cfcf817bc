//! Moore complexes, the Dold-Kan inverse and homotopy groups of simplicial modules.

use serde::Serialize;

use crate::delta::{compose, OrdinalMap};
use crate::linalg::{Field, Matrix, Scalar, SparseVec};
use crate::simplicial::{CosimplicialObject, LevelMap, SimplicialObject, VectCat};

use super::chain::ChainComplex;
use super::LinearError;

pub type SimplicialModule = SimplicialObject<VectCat>;

/// The Moore complex together with the inclusions `N_n -> M_n` as column bases.
#[derive(Clone, Debug)]
pub struct NormalizedComplex {
    pub complex: ChainComplex,
    pub inclusions: Vec<Matrix>,
}

/// Intersection of the kernels of `maps` (all out of a space of dimension `n`).
pub fn common_kernel(field: &Field, n: usize, maps: &[&Matrix]) -> Matrix {
    if maps.is_empty() {
        return Matrix::identity(field, n);
    }
    let rows: usize = maps.iter().map(|m| m.rows()).sum();
    if rows == 0 {
        return Matrix::identity(field, n);
    }
    Matrix::vstack(maps, field, n).kernel_basis()
}

/// `N_n = ker d_1 cap ... cap ker d_n` with differential `d_0`.
pub fn moore_complex(m: &SimplicialModule) -> NormalizedComplex {
    let field = &m.cat.field;
    let inclusions: Vec<Matrix> = (0..=m.n_max())
        .map(|n| common_kernel(field, m.levels[n], &m.faces[n].iter().skip(1).collect::<Vec<_>>()))
        .collect();
    let mut diffs = vec![Matrix::zeros(field, 0, inclusions[0].cols())];
    for n in 1..=m.n_max() {
        let image = m.faces[n][0].mul(&inclusions[n]);
        let coords = inclusions[n - 1].solve(&image).expect("d_0 preserves the normalized subspace");
        diffs.push(coords);
    }
    let dims = inclusions.iter().map(|b| b.cols()).collect();
    let complex = ChainComplex::new(field, 0, dims, diffs).expect("Moore complex squares to zero");
    NormalizedComplex { complex, inclusions }
}

/// The unnormalized complex with differential the alternating sum of faces.
pub fn unnormalized_complex(m: &SimplicialModule) -> ChainComplex {
    let field = &m.cat.field;
    let mut diffs = vec![Matrix::zeros(field, 0, m.levels[0])];
    for n in 1..=m.n_max() {
        let mut d = Matrix::zeros(field, m.levels[n - 1], m.levels[n]);
        for (i, f) in m.faces[n].iter().enumerate() {
            d = if i % 2 == 0 { d.add(f) } else { d.sub(f) };
        }
        diffs.push(d);
    }
    ChainComplex::new(field, 0, m.levels.clone(), diffs).expect("alternating face sums square to zero")
}

/// The simplicial module `Gamma(C)` with `Gamma(C)_n` the sum of `C_k` over
/// surjections `[n] -> [k]`, truncated at `n_max`.
pub fn dold_kan(c: &ChainComplex, n_max: usize) -> Result<SimplicialModule, LinearError> {
    if c.min_degree < 0 {
        return Err(LinearError::NegativeDegree(c.min_degree));
    }
    let field = &c.field;
    let blocks: Vec<Vec<(OrdinalMap, usize)>> = (0..=n_max)
        .map(|n| {
            let mut off = 0;
            let mut out = Vec::new();
            for k in 0..=n {
                for s in OrdinalMap::all_surjections(n, k) {
                    out.push((s, off));
                    off += c.dim(k as i64);
                }
            }
            out
        })
        .collect();
    let level_dim = |n: usize| blocks[n].iter().map(|(s, _)| c.dim(s.target() as i64)).sum::<usize>();
    // Gamma(theta) for theta: [m] -> [n]
    let operator = |theta: &OrdinalMap| -> Matrix {
        let (m, n) = (theta.source(), theta.target());
        let mut cols: Vec<SparseVec> = Vec::with_capacity(level_dim(n));
        for (sigma, _) in &blocks[n] {
            let k = sigma.target();
            let (e, mono) = compose(theta, sigma).expect("composable").epi_mono();
            let target = blocks[m].iter().find(|(b, _)| *b == e).map(|b| b.1);
            let j = e.target();
            let part: Option<Matrix> = if mono.is_identity() {
                Some(Matrix::identity(field, c.dim(k as i64)))
            } else if j + 1 == k && mono == OrdinalMap::face(k, 0) {
                Some(c.differential(k as i64))
            } else {
                None
            };
            for col in 0..c.dim(k as i64) {
                let v: SparseVec = match (&part, target) {
                    (Some(p), Some(off)) => p.col(col).into_iter().map(|(r, x): (usize, Scalar)| (r + off, x)).collect(),
                    _ => Vec::new(),
                };
                cols.push(v);
            }
        }
        Matrix::from_sparse_cols(field, level_dim(m), level_dim(n), cols)
    };
    let faces = (0..=n_max).map(|n| if n == 0 { Vec::new() } else { (0..=n).map(|i| operator(&OrdinalMap::face(n, i))).collect() }).collect();
    let degeneracies = (0..=n_max).map(|n| if n == n_max { Vec::new() } else { (0..=n).map(|j| operator(&OrdinalMap::degeneracy(n, j))).collect() }).collect();
    Ok(SimplicialObject { cat: VectCat::new(field.clone()), levels: (0..=n_max).map(level_dim).collect(), faces, degeneracies })
}

/// `Gamma(f)` for a degreewise map `f[k]: C_k -> C'_k` of complexes with the
/// given dimensions: block diagonal over the surjections out of each `[n]`.
pub fn dold_kan_map(field: &Field, src_dims: &[usize], tgt_dims: &[usize], f: &[Matrix], n_max: usize) -> LevelMap<VectCat> {
    let dim = |d: &[usize], k: usize| d.get(k).copied().unwrap_or(0);
    let components = (0..=n_max)
        .map(|n| {
            let parts: Vec<Matrix> = (0..=n)
                .flat_map(|k| {
                    let block = if k < f.len() { f[k].clone() } else { Matrix::zeros(field, dim(tgt_dims, k), dim(src_dims, k)) };
                    std::iter::repeat(block).take(OrdinalMap::all_surjections(n, k).len())
                })
                .collect();
            Matrix::block_diag(&parts.iter().collect::<Vec<_>>(), field)
        })
        .collect();
    LevelMap { components }
}

/// The cosimplicial module of a cochain complex `D^0 -> D^1 -> ...` with
/// `coboundaries[k]: D^k -> D^{k+1}`: the transpose of `Gamma` of the dual complex.
pub fn cosimplicial_dold_kan(field: &Field, dims: &[usize], coboundaries: &[Matrix], s_max: usize) -> Result<CosimplicialObject<VectCat>, LinearError> {
    let diffs: Vec<Matrix> = coboundaries.iter().take(dims.len().saturating_sub(1)).map(|d| d.transpose()).collect();
    let dual = ChainComplex::new(field, 0, dims.to_vec(), diffs)?;
    let g = dold_kan(&dual, s_max)?;
    let t = |v: &Vec<Vec<Matrix>>| v.iter().map(|l| l.iter().map(|m| m.transpose()).collect()).collect();
    Ok(CosimplicialObject { cat: g.cat.clone(), levels: g.levels.clone(), cofaces: t(&g.faces), codegeneracies: t(&g.degeneracies) })
}

#[derive(Clone, Debug, Serialize)]
pub struct HomotopyGroups {
    pub dims: Vec<usize>,
    /// Degree `t` is reliable when level `t + 1` is present.
    pub reliable: Vec<bool>,
    #[serde(skip)]
    pub representatives: Vec<Matrix>,
}

/// `pi_t` for `t <= t_max` as homology of the Moore complex, with cycle
/// representatives in `M_t`.
pub fn homotopy_groups(m: &SimplicialModule, t_max: usize) -> HomotopyGroups {
    let norm = moore_complex(m);
    let mut dims = Vec::new();
    let mut reliable = Vec::new();
    let mut representatives = Vec::new();
    for t in 0..=t_max {
        if t > m.n_max() {
            dims.push(0);
            reliable.push(false);
            representatives.push(Matrix::zeros(&m.cat.field, 0, 0));
            continue;
        }
        let h = norm.complex.homology(t as i64);
        dims.push(h.dim);
        reliable.push(t < m.n_max());
        representatives.push(norm.inclusions[t].mul(&h.representatives));
    }
    HomotopyGroups { dims, reliable, representatives }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::{FiniteSimplicialSet, Simplex};
    use crate::simplicial::chains_on;

    fn circle() -> FiniteSimplicialSet {
        let mut k = FiniteSimplicialSet::empty(1);
        let v = k.add_vertex();
        k.add_simplex(1, vec![Simplex::nondegenerate(0, v), Simplex::nondegenerate(0, v)]).unwrap();
        k
    }

    #[test]
    fn constant_module() {
        let c = VectCat::new(Field::f2());
        let m = SimplicialObject::constant(&c, &3, 3);
        let n = moore_complex(&m);
        assert_eq!(n.complex.dims, vec![3, 0, 0, 0]);
        assert_eq!(homotopy_groups(&m, 2).dims, vec![3, 0, 0]);
    }

    #[test]
    fn circle_has_one_dimensional_h1() {
        let m = chains_on(&Field::f2(), &circle(), 4);
        m.check_identities().unwrap();
        let pi = homotopy_groups(&m, 3);
        assert_eq!(pi.dims, vec![1, 1, 0, 0]);
        let raw = unnormalized_complex(&m);
        let brute: Vec<usize> = (0..=3).map(|t| raw.homology_dim_by_rank(t)).collect();
        assert_eq!(brute, pi.dims);
    }

    #[test]
    fn eilenberg_maclane_data() {
        for (p, deg) in [(2u32, 1usize), (3, 2)] {
            let f = Field::prime(p).unwrap();
            let mut dims = vec![0; deg + 1];
            dims[deg] = 1;
            let diffs = (0..=deg).map(|i| Matrix::zeros(&f, if i == 0 { 0 } else { dims[i - 1] }, dims[i])).collect();
            let c = ChainComplex::new(&f, 0, dims, diffs).unwrap();
            let m = dold_kan(&c, deg + 2).unwrap();
            m.check_identities().unwrap();
            let mut expected = vec![0; deg + 2];
            expected[deg] = 1;
            assert_eq!(homotopy_groups(&m, deg + 1).dims, expected);
            let raw = unnormalized_complex(&m);
            assert_eq!((0..=deg as i64 + 1).map(|t| raw.homology_dim_by_rank(t)).collect::<Vec<_>>(), expected);
        }
    }

    #[test]
    fn dold_kan_roundtrip_recovers_the_complex() {
        let f = Field::f2();
        let d1 = Matrix::from_i64(&f, 2, 1, &[vec![1], vec![1]]).unwrap();
        let d2 = Matrix::zeros(&f, 1, 1);
        let c = ChainComplex::new(&f, 0, vec![2, 1, 1], vec![d1, d2]).unwrap();
        let m = dold_kan(&c, 3).unwrap();
        m.check_identities().unwrap();
        let n = moore_complex(&m);
        assert_eq!(&n.complex.dims[..3], &c.dims[..]);
        assert_eq!(n.complex.dims[3], 0);
        // the normalized part is exactly the identity summand
        for k in 1..=2 {
            assert_eq!(n.complex.diffs[k], c.diffs[k]);
        }
        let zero = ChainComplex::concentrated(&f, 0, 0);
        assert!(dold_kan(&zero, 2).unwrap().levels.iter().all(|&d| d == 0));
    }
}
