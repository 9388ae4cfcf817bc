//! Truncated simplicial augmented commutative algebras and their category.

use std::sync::Arc;

use crate::linalg::{Field, Matrix};
use crate::linear::SimplicialModule;
use crate::simplicial::{ConcreteCategory, LevelMap, SimplicialError, SimplicialObject, VectCat};
use crate::triple::{Linearize, TripleError};

use super::level::{AlgebraLevel, Overflow};
use super::SimpAlgError;

/// Levels `0..=n_max` with faces and degeneracies as matrices; the
/// conventions follow [`SimplicialObject`].
#[derive(Clone, Debug, PartialEq)]
pub struct SimplicialAlgebra {
    pub field: Field,
    pub levels: Vec<AlgebraLevel>,
    pub faces: Vec<Vec<Matrix>>,
    pub degeneracies: Vec<Vec<Matrix>>,
}

pub type AlgObj = Arc<SimplicialAlgebra>;

/// Levels above this dimension are checked for the algebra axioms only
/// through their structure (monomial and square-zero products are correct by
/// construction).
const AXIOM_CHECK_DIM: usize = 64;

impl SimplicialAlgebra {
    pub fn n_max(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn constant(level: &AlgebraLevel, n_max: usize) -> SimplicialAlgebra {
        let id = Matrix::identity(&level.field, level.dim());
        SimplicialAlgebra {
            field: level.field.clone(),
            levels: vec![level.clone(); n_max + 1],
            faces: (0..=n_max).map(|n| vec![id.clone(); if n == 0 { 0 } else { n + 1 }]).collect(),
            degeneracies: (0..=n_max).map(|n| vec![id.clone(); if n == n_max { 0 } else { n + 1 }]).collect(),
        }
    }

    /// The constant algebra `k`.
    pub fn ground(field: &Field, n_max: usize) -> SimplicialAlgebra {
        SimplicialAlgebra::constant(&AlgebraLevel::square_zero(field, vec!["1".into()]), n_max)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(AlgebraLevel::dim).collect()
    }

    /// The underlying simplicial vector space.
    pub fn module(&self) -> SimplicialModule {
        SimplicialObject {
            cat: VectCat::new(self.field.clone()),
            levels: self.dims(),
            faces: self.faces.clone(),
            degeneracies: self.degeneracies.clone(),
        }
    }

    pub fn truncate(&self, n_max: usize) -> SimplicialAlgebra {
        let mut degeneracies = self.degeneracies[..=n_max].to_vec();
        degeneracies[n_max].clear();
        SimplicialAlgebra {
            field: self.field.clone(),
            levels: self.levels[..=n_max].to_vec(),
            faces: self.faces[..=n_max].to_vec(),
            degeneracies,
        }
    }

    /// Level axioms, simplicial identities, and every structure map an
    /// algebra map. Returns the products skipped by truncation.
    pub fn validate(&self) -> Result<Overflow, SimpAlgError> {
        for (n, level) in self.levels.iter().enumerate() {
            if level.dim() <= AXIOM_CHECK_DIM || matches!(level.product, super::level::Product::Table(_)) {
                level.check_axioms().map_err(|e| SimpAlgError::Invalid(format!("level {n}: {e}")))?;
            }
        }
        self.module().check_identities().map_err(|v| SimpAlgError::Invalid(format!("{} vs {} at level {}", v.first, v.second, v.level)))?;
        let mut skipped = Overflow::default();
        for n in 0..=self.n_max() {
            for (i, d) in self.faces[n].iter().enumerate() {
                let o = self.levels[n].map_defect(d, &self.levels[n - 1]).map_err(|e| SimpAlgError::Invalid(format!("d_{i} at level {n}: {e}")))?;
                skipped.absorb(&o);
            }
            for (j, s) in self.degeneracies[n].iter().enumerate() {
                let o = self.levels[n].map_defect(s, &self.levels[n + 1]).map_err(|e| SimpAlgError::Invalid(format!("s_{j} at level {n}: {e}")))?;
                skipped.absorb(&o);
            }
        }
        Ok(skipped)
    }

    /// `dim pi_0` of the underlying module, `X_0 / im(d_0 - d_1)`.
    pub fn pi0_dim(&self) -> usize {
        let x0 = self.levels[0].dim();
        if self.n_max() == 0 {
            return x0;
        }
        x0 - self.faces[1][0].sub(&self.faces[1][1]).rank()
    }

    /// Whether `k -> pi_0 X` is an isomorphism.
    pub fn is_connected(&self) -> bool {
        assert!(self.n_max() >= 1, "connectedness needs level 1");
        let boundary = self.faces[1][0].sub(&self.faces[1][1]);
        let with_unit = Matrix::hstack(&[&boundary, &Matrix::column(&self.field, self.levels[0].unit.clone(), self.levels[0].dim())], &self.field, self.levels[0].dim());
        self.pi0_dim() == 1 && with_unit.rank() > boundary.rank()
    }
}

/// A map of simplicial algebras, level by level.
#[derive(Clone, Debug)]
pub struct AlgMap {
    pub source: AlgObj,
    pub target: AlgObj,
    pub components: Vec<Matrix>,
}

impl AlgMap {
    pub fn identity(x: &AlgObj) -> AlgMap {
        AlgMap { source: x.clone(), target: x.clone(), components: x.levels.iter().map(|l| Matrix::identity(&x.field, l.dim())).collect() }
    }

    /// Components are algebra maps commuting with faces and degeneracies.
    pub fn validate(&self) -> Result<Overflow, SimpAlgError> {
        let (x, y) = (&self.source, &self.target);
        let mut skipped = Overflow::default();
        for (n, f) in self.components.iter().enumerate() {
            skipped.absorb(&x.levels[n].map_defect(f, &y.levels[n]).map_err(|e| SimpAlgError::Invalid(format!("level {n}: {e}")))?);
        }
        let lm = LevelMap::<VectCat> { components: self.components.clone() };
        if !lm.is_simplicial_map(&x.module(), &y.module()) {
            return Err(SimpAlgError::Invalid("not simplicial".into()));
        }
        Ok(skipped)
    }
}

fn same(a: &AlgObj, b: &AlgObj) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Simplicial augmented commutative algebras over `field`, truncated at `n_max`.
#[derive(Clone, Debug)]
pub struct SimpAlgCat {
    pub field: Field,
    pub n_max: usize,
}

impl SimpAlgCat {
    pub fn new(field: Field, n_max: usize) -> SimpAlgCat {
        SimpAlgCat { field, n_max }
    }
}

impl ConcreteCategory for SimpAlgCat {
    type Obj = AlgObj;
    type Mor = AlgMap;

    fn source(&self, f: &AlgMap) -> AlgObj {
        f.source.clone()
    }

    fn target(&self, f: &AlgMap) -> AlgObj {
        f.target.clone()
    }

    fn identity(&self, x: &AlgObj) -> AlgMap {
        AlgMap::identity(x)
    }

    fn then(&self, f: &AlgMap, g: &AlgMap) -> Result<AlgMap, SimplicialError> {
        if !same(&f.target, &g.source) {
            return Err(SimplicialError::Shape("composing maps whose ends differ".into()));
        }
        let components = f.components.iter().zip(&g.components).map(|(a, b)| b.mul(a)).collect();
        Ok(AlgMap { source: f.source.clone(), target: g.target.clone(), components })
    }

    fn mor_eq(&self, f: &AlgMap, g: &AlgMap) -> bool {
        same(&f.source, &g.source) && same(&f.target, &g.target) && f.components == g.components
    }

    fn linear_map(&self, _f: &AlgMap) -> Option<Matrix> {
        None
    }
}

impl Linearize for SimpAlgCat {
    fn base_field(&self) -> &Field {
        &self.field
    }

    fn module(&self, x: &AlgObj, n_max: usize) -> Result<SimplicialModule, TripleError> {
        if x.n_max() < n_max {
            return Err(TripleError::Capacity(format!("object known to level {} but level {n_max} requested", x.n_max())));
        }
        Ok(x.truncate(n_max).module())
    }

    fn module_map(&self, f: &AlgMap, n_max: usize) -> Result<LevelMap<VectCat>, TripleError> {
        Ok(LevelMap { components: f.components[..=n_max].to_vec() })
    }
}
