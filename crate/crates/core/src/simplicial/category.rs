//! Concrete categories with the finite limits and colimits the constructions need.

use std::fmt::Debug;

use serde::{Deserialize, Serialize};

use crate::linalg::{Field, Matrix};

use super::SimplicialError;

/// A category whose morphisms can be composed and compared exactly.
///
/// `then(f, g)` is the composite `g . f`. Finite (co)products are optional
/// capabilities; an instance without them reports a capability error.
pub trait ConcreteCategory: Clone + Debug {
    type Obj: Clone + PartialEq + Debug;
    type Mor: Clone + Debug;

    fn source(&self, f: &Self::Mor) -> Self::Obj;
    fn target(&self, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, x: &Self::Obj) -> Self::Mor;
    fn then(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor, SimplicialError>;
    fn mor_eq(&self, f: &Self::Mor, g: &Self::Mor) -> bool;

    /// Product object with its projections.
    fn product(&self, _factors: &[Self::Obj]) -> Result<(Self::Obj, Vec<Self::Mor>), SimplicialError> {
        Err(SimplicialError::Capability("finite products"))
    }

    /// The map into a product determined by its components.
    fn tuple(&self, _source: &Self::Obj, _components: &[Self::Mor]) -> Result<Self::Mor, SimplicialError> {
        Err(SimplicialError::Capability("finite products"))
    }

    /// Coproduct object with its injections.
    fn coproduct(&self, _summands: &[Self::Obj]) -> Result<(Self::Obj, Vec<Self::Mor>), SimplicialError> {
        Err(SimplicialError::Capability("finite coproducts"))
    }

    /// The map out of a coproduct determined by its components.
    fn cotuple(&self, _target: &Self::Obj, _components: &[Self::Mor]) -> Result<Self::Mor, SimplicialError> {
        Err(SimplicialError::Capability("finite coproducts"))
    }

    /// Underlying vector-space dimension, when the category has one.
    fn linear_dim(&self, _x: &Self::Obj) -> Option<usize> {
        None
    }

    /// Underlying linear map, when the category has one.
    fn linear_map(&self, _f: &Self::Mor) -> Option<Matrix> {
        None
    }
}

/// Finite-dimensional vector spaces over a fixed field; objects are dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectCat {
    pub field: Field,
}

impl VectCat {
    pub fn new(field: Field) -> VectCat {
        VectCat { field }
    }
}

impl ConcreteCategory for VectCat {
    type Obj = usize;
    type Mor = Matrix;

    fn source(&self, f: &Matrix) -> usize {
        f.cols()
    }

    fn target(&self, f: &Matrix) -> usize {
        f.rows()
    }

    fn identity(&self, x: &usize) -> Matrix {
        Matrix::identity(&self.field, *x)
    }

    fn then(&self, f: &Matrix, g: &Matrix) -> Result<Matrix, SimplicialError> {
        if f.rows() != g.cols() {
            return Err(SimplicialError::Shape(format!("cannot follow {:?} by {:?}", f.shape(), g.shape())));
        }
        Ok(g.mul(f))
    }

    fn mor_eq(&self, f: &Matrix, g: &Matrix) -> bool {
        f == g
    }

    fn product(&self, factors: &[usize]) -> Result<(usize, Vec<Matrix>), SimplicialError> {
        let total: usize = factors.iter().sum();
        let mut off = 0;
        let mut projections = Vec::with_capacity(factors.len());
        for &d in factors {
            let rows = (0..d).map(|i| vec![(off + i, self.field.one())]).collect();
            projections.push(Matrix::from_sparse_rows(&self.field, d, total, rows));
            off += d;
        }
        Ok((total, projections))
    }

    fn tuple(&self, source: &usize, components: &[Matrix]) -> Result<Matrix, SimplicialError> {
        if components.iter().any(|c| c.cols() != *source) {
            return Err(SimplicialError::Shape("tuple components disagree on the source".into()));
        }
        Ok(Matrix::vstack(&components.iter().collect::<Vec<_>>(), &self.field, *source))
    }

    fn coproduct(&self, summands: &[usize]) -> Result<(usize, Vec<Matrix>), SimplicialError> {
        let (total, projections) = self.product(summands)?;
        Ok((total, projections.iter().map(|p| p.transpose()).collect()))
    }

    fn cotuple(&self, target: &usize, components: &[Matrix]) -> Result<Matrix, SimplicialError> {
        if components.iter().any(|c| c.rows() != *target) {
            return Err(SimplicialError::Shape("cotuple components disagree on the target".into()));
        }
        Ok(Matrix::hstack(&components.iter().collect::<Vec<_>>(), &self.field, *target))
    }

    fn linear_dim(&self, x: &usize) -> Option<usize> {
        Some(*x)
    }

    fn linear_map(&self, f: &Matrix) -> Option<Matrix> {
        Some(f.clone())
    }
}

/// A function between finite sets `{0..source} -> {0..target}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FnTable {
    pub source: usize,
    pub target: usize,
    pub values: Vec<usize>,
}

/// Finite sets; objects are cardinalities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FinSetCat;

impl ConcreteCategory for FinSetCat {
    type Obj = usize;
    type Mor = FnTable;

    fn source(&self, f: &FnTable) -> usize {
        f.source
    }

    fn target(&self, f: &FnTable) -> usize {
        f.target
    }

    fn identity(&self, x: &usize) -> FnTable {
        FnTable { source: *x, target: *x, values: (0..*x).collect() }
    }

    fn then(&self, f: &FnTable, g: &FnTable) -> Result<FnTable, SimplicialError> {
        if f.target != g.source {
            return Err(SimplicialError::Shape(format!("cannot follow a map into {} by one out of {}", f.target, g.source)));
        }
        Ok(FnTable { source: f.source, target: g.target, values: f.values.iter().map(|&v| g.values[v]).collect() })
    }

    fn mor_eq(&self, f: &FnTable, g: &FnTable) -> bool {
        f == g
    }

    fn product(&self, factors: &[usize]) -> Result<(usize, Vec<FnTable>), SimplicialError> {
        let total: usize = factors.iter().product();
        let mut projections = Vec::with_capacity(factors.len());
        // mixed radix, first factor most significant
        for (k, &d) in factors.iter().enumerate() {
            let stride: usize = factors[k + 1..].iter().product();
            let values = (0..total).map(|x| (x / stride.max(1)) % d.max(1)).collect();
            projections.push(FnTable { source: total, target: d, values });
        }
        Ok((total, projections))
    }

    fn tuple(&self, source: &usize, components: &[FnTable]) -> Result<FnTable, SimplicialError> {
        let dims: Vec<usize> = components.iter().map(|c| c.target).collect();
        let total: usize = dims.iter().product();
        let values = (0..*source)
            .map(|x| components.iter().fold(0, |acc, c| acc * c.target + c.values[x]))
            .collect();
        Ok(FnTable { source: *source, target: total, values })
    }

    fn coproduct(&self, summands: &[usize]) -> Result<(usize, Vec<FnTable>), SimplicialError> {
        let total: usize = summands.iter().sum();
        let mut off = 0;
        let mut inj = Vec::new();
        for &d in summands {
            inj.push(FnTable { source: d, target: total, values: (off..off + d).collect() });
            off += d;
        }
        Ok((total, inj))
    }

    fn cotuple(&self, target: &usize, components: &[FnTable]) -> Result<FnTable, SimplicialError> {
        let values: Vec<usize> = components.iter().flat_map(|c| c.values.iter().copied()).collect();
        Ok(FnTable { source: values.len(), target: *target, values })
    }
}
