//! The free/forget cotriple: `S X` is the polynomial algebra on the
//! underlying set of the augmentation ideal, truncated in monomial degree.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::linalg::{Matrix, SparseVec};
use crate::triple::{Cotriple, TripleError};

use super::level::{AlgebraLevel, MonomialBasis};
use super::object::{AlgMap, AlgObj, SimpAlgCat, SimplicialAlgebra};
use super::SimpAlgError;

/// Monomial degree bound `D` (higher products drop to zero) and the largest
/// basis allowed on any level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    pub degree: usize,
    pub cap: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy { degree: 3, cap: 4096 }
    }
}

/// `free . forget` with generators `x_e`, `e` indexing the elements of the
/// augmentation ideal in base-`p` digit order; `x_0` is the generator at 0.
#[derive(Debug)]
pub struct FreeForget {
    pub cat: SimpAlgCat,
    pub policy: TruncationPolicy,
    // S X by the address of X, keeping X alive
    cache: Mutex<Vec<(AlgObj, AlgObj)>>,
    bases: Mutex<HashMap<usize, Arc<MonomialBasis>>>,
}

impl Clone for FreeForget {
    fn clone(&self) -> Self {
        FreeForget::new(self.cat.clone(), self.policy)
    }
}

impl FreeForget {
    pub fn new(cat: SimpAlgCat, policy: TruncationPolicy) -> FreeForget {
        FreeForget { cat, policy, cache: Mutex::new(Vec::new()), bases: Mutex::new(HashMap::new()) }
    }

    fn basis(&self, gens: usize) -> Arc<MonomialBasis> {
        self.bases.lock().expect("poisoned").entry(gens).or_insert_with(|| Arc::new(MonomialBasis::new(gens, self.policy.degree))).clone()
    }

    /// Generators of `S X` on level `n`, or a capacity error naming the level.
    pub fn generator_count(&self, level: &AlgebraLevel, n: usize) -> Result<usize, SimpAlgError> {
        let cap = self.policy.cap;
        let too_big = |needed: String| SimpAlgError::Capacity { level: n, needed, cap };
        let gens = level.ideal_size().filter(|&g| g <= cap as u64).ok_or_else(|| {
            too_big(format!("{}^{} generators", level.field.characteristic(), level.ideal_dim()))
        })? as usize;
        match MonomialBasis::size(gens, self.policy.degree) {
            Some(size) if size <= cap => Ok(gens),
            size => Err(too_big(format!("{gens} generators, {} monomials", size.map_or("more than 2^64".to_string(), |s| s.to_string())))),
        }
    }

    fn build(&self, x: &SimplicialAlgebra) -> Result<SimplicialAlgebra, SimpAlgError> {
        let field = &x.field;
        let mut levels = Vec::with_capacity(x.levels.len());
        for (n, level) in x.levels.iter().enumerate() {
            let gens = self.generator_count(level, n)?;
            levels.push(AlgebraLevel::polynomial(field, self.basis(gens), |g| format!("x{g}")));
        }
        let map = |m: &Matrix, from: usize, to: usize| -> Matrix {
            let image = self.generator_images(&x.levels[from], &x.levels[to], |v| m.apply(v));
            monomial_map(&levels[from], &levels[to], &image)
        };
        let faces = x.faces.iter().enumerate().map(|(n, row)| row.iter().map(|d| map(d, n, n - 1)).collect()).collect();
        let degeneracies = x.degeneracies.iter().enumerate().map(|(n, row)| row.iter().map(|s| map(s, n, n + 1)).collect()).collect();
        Ok(SimplicialAlgebra { field: field.clone(), levels, faces, degeneracies })
    }

    /// `e -> index of f(element e)` on the augmentation ideals.
    fn generator_images(&self, from: &AlgebraLevel, to: &AlgebraLevel, f: impl Fn(&SparseVec) -> SparseVec) -> Vec<usize> {
        let count = from.ideal_size().expect("checked by generator_count");
        (0..count).map(|e| to.ideal_index(&f(&from.ideal_element(e))) as usize).collect()
    }

    fn cached(&self, x: &AlgObj) -> Option<AlgObj> {
        let cache = self.cache.lock().expect("poisoned");
        cache.iter().find(|(k, _)| Arc::ptr_eq(k, x) || **k == **x).map(|(_, v)| v.clone())
    }
}

/// The matrix of the algebra map of truncated polynomial algebras sending
/// generator `g` to generator `image[g]`.
pub fn monomial_map(src: &AlgebraLevel, tgt: &AlgebraLevel, image: &[usize]) -> Matrix {
    let (sb, tb) = (src.monomials().expect("free level"), tgt.monomials().expect("free level"));
    let one = src.field.one();
    let cols = (0..sb.len())
        .map(|i| {
            let mut m: Vec<u32> = sb.monomial(i).iter().map(|&g| image[g as usize] as u32).collect();
            m.sort_unstable();
            vec![(tb.index_of(&m).expect("generator maps preserve degree"), one.clone())]
        })
        .collect();
    Matrix::from_sparse_cols(&src.field, tb.len(), sb.len(), cols)
}

impl Cotriple for FreeForget {
    type Cat = SimpAlgCat;

    fn category(&self) -> &SimpAlgCat {
        &self.cat
    }

    fn apply(&self, x: &AlgObj) -> Result<AlgObj, TripleError> {
        if let Some(hit) = self.cached(x) {
            return Ok(hit);
        }
        let sx = Arc::new(self.build(x)?);
        self.cache.lock().expect("poisoned").push((x.clone(), sx.clone()));
        Ok(sx)
    }

    fn apply_mor(&self, f: &AlgMap) -> Result<AlgMap, TripleError> {
        let (sa, sb) = (self.apply(&f.source)?, self.apply(&f.target)?);
        let components = f
            .components
            .iter()
            .enumerate()
            .map(|(n, m)| {
                let image = self.generator_images(&f.source.levels[n], &f.target.levels[n], |v| m.apply(v));
                monomial_map(&sa.levels[n], &sb.levels[n], &image)
            })
            .collect();
        Ok(AlgMap { source: sa, target: sb, components })
    }

    /// Evaluation `x_e -> e`; exact in `X`, but not multiplicative on products
    /// that the truncation of `S X` drops.
    fn counit(&self, x: &AlgObj) -> Result<AlgMap, TripleError> {
        let sx = self.apply(x)?;
        let components = x
            .levels
            .iter()
            .zip(&sx.levels)
            .map(|(level, free)| {
                let basis = free.monomials().expect("free level");
                let elements: Vec<SparseVec> = (0..basis.gens as u64).map(|e| level.ideal_element(e)).collect();
                let cols = (0..basis.len())
                    .map(|i| basis.monomial(i).iter().fold(level.unit.clone(), |acc, &g| level.mul(&acc, &elements[g as usize]).0))
                    .collect();
                Matrix::from_sparse_cols(&x.field, level.dim(), basis.len(), cols)
            })
            .collect();
        Ok(AlgMap { source: sx, target: x.clone(), components })
    }

    fn comult(&self, x: &AlgObj) -> Result<AlgMap, TripleError> {
        let sx = self.apply(x)?;
        self.coextend(x, &AlgMap::identity(&sx))
    }

    /// `x_e -> x_{g(x_e)}`, without building `S S X`.
    fn coextend(&self, x: &AlgObj, g: &AlgMap) -> Result<AlgMap, TripleError> {
        let sx = self.apply(x)?;
        let sy = self.apply(&g.target)?;
        let components = g
            .components
            .iter()
            .enumerate()
            .map(|(n, m)| {
                let basis = sx.levels[n].monomials().expect("free level");
                let image: Vec<usize> =
                    (0..basis.gens).map(|e| g.target.levels[n].ideal_index(&m.col(basis.generator(e))) as usize).collect();
                monomial_map(&sx.levels[n], &sy.levels[n], &image)
            })
            .collect();
        Ok(AlgMap { source: sx, target: sy, components })
    }
}
