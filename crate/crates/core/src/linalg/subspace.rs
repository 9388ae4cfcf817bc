//! Subspaces of `F^n` in reduced echelon form, and bases of quotients.

use super::field::{Field, Scalar};
use super::matrix::{Echelon, Matrix, SparseVec};

#[derive(Clone, Debug)]
pub struct Subspace {
    field: Field,
    ech: Echelon,
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace { field: field.clone(), ech: Echelon::new(field, ambient) }
    }

    pub fn span(field: &Field, ambient: usize, vecs: &[SparseVec]) -> Subspace {
        let mut s = Subspace::zero(field, ambient);
        for v in vecs {
            s.ech.insert(v);
        }
        s
    }

    /// The span of the columns of `m`.
    pub fn column_span(m: &Matrix) -> Subspace {
        Subspace::span(m.field(), m.rows(), &m.sparse_cols())
    }

    /// The coordinate subspace spanned by `e_i` for `i` in `idx`.
    pub fn coordinates(field: &Field, ambient: usize, idx: impl IntoIterator<Item = usize>) -> Subspace {
        let vecs: Vec<SparseVec> = idx.into_iter().map(|i| vec![(i, field.one())]).collect();
        Subspace::span(field, ambient, &vecs)
    }

    pub fn ambient(&self) -> usize {
        self.ech.cols()
    }

    pub fn dim(&self) -> usize {
        self.ech.dim()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.ech.contains(v)
    }

    pub fn reduce(&self, v: &[(usize, Scalar)]) -> SparseVec {
        self.ech.reduce(v)
    }

    pub fn insert(&mut self, v: &[(usize, Scalar)]) -> bool {
        self.ech.insert(v)
    }

    /// The canonical (reduced echelon) basis.
    pub fn basis(&self) -> Vec<SparseVec> {
        self.ech.rref().rows
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_sparse_cols(&self.field, self.ambient(), self.dim(), self.basis())
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in other.basis() {
            s.ech.insert(&v);
        }
        s
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis().iter().all(|v| other.contains(v))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let a = self.basis_matrix();
        let b = other.basis_matrix();
        let joint = Matrix::hstack(&[&a, &b.neg()], &self.field, self.ambient());
        let k = joint.kernel_basis();
        let coeffs = k.select_rows(&(0..a.cols()).collect::<Vec<_>>());
        let vecs = a.mul(&coeffs).sparse_cols();
        Subspace::span(&self.field, self.ambient(), &vecs)
    }

    /// The image of this subspace under `m`.
    pub fn image(&self, m: &Matrix) -> Subspace {
        let vecs: Vec<SparseVec> = self.basis().iter().map(|v| m.apply(v)).collect();
        Subspace::span(&self.field, m.rows(), &vecs)
    }

    /// `{x in self : m x in target}`.
    pub fn preimage_within(&self, m: &Matrix, target: &Subspace) -> Subspace {
        let b = self.basis_matrix();
        let img = m.mul(&b);
        // write m x modulo target: columns of img reduced against the target
        let reduced: Vec<SparseVec> = img.sparse_cols().iter().map(|c| target.reduce(c)).collect();
        let r = Matrix::from_sparse_cols(&self.field, m.rows(), reduced.len(), reduced);
        let k = r.kernel_basis();
        Subspace::span(&self.field, self.ambient(), &b.mul(&k).sparse_cols())
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Subspace) -> bool {
        self.ambient() == other.ambient() && self.basis() == other.basis()
    }
}

/// A basis for `num / den` given by representatives in `num`.
///
/// Representatives are picked greedily from the supplied spanning vectors of
/// `num`, so the choice is reproducible.
#[derive(Clone, Debug)]
pub struct QuotientBasis {
    field: Field,
    ambient: usize,
    pub reps: Vec<SparseVec>,
    den: Subspace,
    // [reps | den basis] as columns, for coordinate extraction
    frame: Matrix,
}

impl QuotientBasis {
    pub fn new(field: &Field, ambient: usize, num_spanning: &[SparseVec], den: &Subspace) -> QuotientBasis {
        let mut acc = den.clone();
        let mut reps = Vec::new();
        for v in num_spanning {
            if acc.insert(v) {
                reps.push(v.clone());
            }
        }
        let mut cols = reps.clone();
        cols.extend(den.basis());
        let frame = Matrix::from_sparse_cols(field, ambient, cols.len(), cols);
        QuotientBasis { field: field.clone(), ambient, reps, den: den.clone(), frame }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn denominator(&self) -> &Subspace {
        &self.den
    }

    /// Coordinates of each column of `vs` on the representatives, modulo the
    /// denominator. `None` if some column is outside `num`.
    pub fn coords(&self, vs: &Matrix) -> Option<Matrix> {
        assert_eq!(vs.rows(), self.ambient);
        if vs.cols() == 0 {
            return Some(Matrix::zeros(&self.field, self.dim(), 0));
        }
        let x = self.frame.solve(vs)?;
        Some(x.select_rows(&(0..self.dim()).collect::<Vec<_>>()))
    }

    pub fn reps_matrix(&self) -> Matrix {
        Matrix::from_sparse_cols(&self.field, self.ambient, self.dim(), self.reps.clone())
    }
}
