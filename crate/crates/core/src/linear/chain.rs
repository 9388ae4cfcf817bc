//! Bounded chain complexes over an exact field.

use serde::Serialize;

use crate::linalg::{Field, Matrix, QuotientBasis, Subspace};

use super::LinearError;

/// `dims[i]` is the dimension in degree `min_degree + i`; `diffs[i]` is the
/// differential out of that degree (a `dims[i-1] x dims[i]` matrix, and a
/// `0 x dims[0]` matrix for the lowest degree).
#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex {
    pub field: Field,
    pub min_degree: i64,
    pub dims: Vec<usize>,
    pub diffs: Vec<Matrix>,
}

/// Homology in one degree with cycle representatives as columns.
#[derive(Clone, Debug, Serialize)]
pub struct HomologyGroup {
    pub degree: i64,
    pub dim: usize,
    #[serde(skip)]
    pub representatives: Matrix,
}

impl ChainComplex {
    pub fn new(field: &Field, min_degree: i64, dims: Vec<usize>, mut diffs: Vec<Matrix>) -> Result<ChainComplex, LinearError> {
        if diffs.len() + 1 == dims.len() {
            diffs.insert(0, Matrix::zeros(field, 0, dims.first().copied().unwrap_or(0)));
        }
        if diffs.len() != dims.len() {
            return Err(LinearError::Shape(format!("{} degrees but {} differentials", dims.len(), diffs.len())));
        }
        for (i, d) in diffs.iter().enumerate() {
            let rows = if i == 0 { 0 } else { dims[i - 1] };
            if d.shape() != (rows, dims[i]) {
                return Err(LinearError::Shape(format!("differential out of degree {} has shape {:?}", min_degree + i as i64, d.shape())));
            }
        }
        let c = ChainComplex { field: field.clone(), min_degree, dims, diffs };
        if let Some(m) = c.first_nonzero_square() {
            return Err(LinearError::NotAComplex(m));
        }
        Ok(c)
    }

    /// A complex concentrated in one degree.
    pub fn concentrated(field: &Field, degree: i64, dim: usize) -> ChainComplex {
        ChainComplex { field: field.clone(), min_degree: degree, dims: vec![dim], diffs: vec![Matrix::zeros(field, 0, dim)] }
    }

    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.dims.len() as i64 - 1
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.index(degree).map_or(0, |i| self.dims[i])
    }

    fn index(&self, degree: i64) -> Option<usize> {
        let i = degree - self.min_degree;
        (i >= 0 && (i as usize) < self.dims.len()).then_some(i as usize)
    }

    /// The differential out of `degree`.
    pub fn differential(&self, degree: i64) -> Matrix {
        match self.index(degree) {
            Some(i) if i > 0 => self.diffs[i].clone(),
            _ => Matrix::zeros(&self.field, self.dim(degree - 1), self.dim(degree)),
        }
    }

    fn first_nonzero_square(&self) -> Option<i64> {
        (1..self.dims.len()).skip(1).find_map(|i| {
            (!self.diffs[i - 1].mul(&self.diffs[i]).is_zero()).then_some(self.min_degree + i as i64)
        })
    }

    pub fn homology(&self, degree: i64) -> HomologyGroup {
        let out = self.differential(degree);
        let inc = self.differential(degree + 1);
        let n = self.dim(degree);
        let cycles = out.kernel_basis();
        let boundaries = Subspace::column_span(&inc);
        let q = QuotientBasis::new(&self.field, n, &cycles.sparse_cols(), &boundaries);
        HomologyGroup { degree, dim: q.dim(), representatives: q.reps_matrix() }
    }

    pub fn homology_dims(&self) -> Vec<(i64, usize)> {
        (self.min_degree..=self.max_degree()).map(|m| (m, self.homology(m).dim)).collect()
    }

    /// Homology dimension from ranks alone: `dim - rank(out) - rank(in)`.
    pub fn homology_dim_by_rank(&self, degree: i64) -> usize {
        self.dim(degree) - self.differential(degree).rank() - self.differential(degree + 1).rank()
    }

    /// The map induced on homology by a chain map `f` into `other`, in the
    /// bases of homology representatives of both sides.
    pub fn induced_on_homology(&self, other: &ChainComplex, f: &Matrix, degree: i64) -> Option<Matrix> {
        let src = self.homology(degree);
        let tgt_cycles = other.differential(degree).kernel_basis();
        let boundaries = Subspace::column_span(&other.differential(degree + 1));
        let q = QuotientBasis::new(&other.field, other.dim(degree), &tgt_cycles.sparse_cols(), &boundaries);
        q.coords(&f.mul(&src.representatives))
    }
}
