//! Exact matrices with sparse row storage and a dense fallback for small shapes.
//!
//! Maps act on column vectors, so a map `V -> W` is a `dim W x dim V` matrix and
//! `g . f` is the product `G * F`.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use super::field::{Field, Scalar};
use super::LinalgError;

/// A sparse vector: strictly increasing indices, no explicit zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

static DENSE_THRESHOLD: AtomicUsize = AtomicUsize::new(64);

/// Shapes with both sides below this bound are stored densely.
pub fn dense_threshold() -> usize {
    DENSE_THRESHOLD.load(Ordering::Relaxed)
}

pub fn set_dense_threshold(t: usize) {
    DENSE_THRESHOLD.store(t, Ordering::Relaxed);
}

#[derive(Clone, Debug)]
enum Store {
    Dense(Vec<Scalar>),
    Sparse(Vec<SparseVec>),
}

#[derive(Clone, Debug)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    store: Store,
}

/// Reduced row echelon form: nonzero rows and their pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub cols: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<SparseVec>,
}

fn uses_dense(rows: usize, cols: usize) -> bool {
    let t = dense_threshold();
    rows < t && cols < t
}

pub fn sparse_add_scaled(field: &Field, a: &[(usize, Scalar)], c: &Scalar, b: &[(usize, Scalar)]) -> SparseVec {
    // a + c*b
    let _ = field;
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c.mul(&b[j].1)));
            j += 1;
        } else {
            let v = a[i].1.add(&c.mul(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn sparse_get(v: &[(usize, Scalar)], j: usize) -> Option<&Scalar> {
    v.binary_search_by_key(&j, |e| e.0).ok().map(|k| &v[k].1)
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        let store = if uses_dense(rows, cols) {
            Store::Dense(vec![field.zero(); rows * cols])
        } else {
            Store::Sparse(vec![Vec::new(); rows])
        };
        Matrix { field: field.clone(), rows, cols, store }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        Matrix::from_sparse_rows(field, n, n, (0..n).map(|i| vec![(i, field.one())]).collect())
    }

    /// Builds from sparse rows; entries are normalized (sorted, zeros dropped).
    pub fn from_sparse_rows(field: &Field, rows: usize, cols: usize, data: Vec<SparseVec>) -> Matrix {
        assert_eq!(data.len(), rows, "row count mismatch");
        let data: Vec<SparseVec> = data
            .into_iter()
            .map(|mut r| {
                r.sort_by_key(|e| e.0);
                let mut out: SparseVec = Vec::with_capacity(r.len());
                for (j, v) in r {
                    assert!(j < cols, "column index out of range");
                    match out.last_mut() {
                        Some(last) if last.0 == j => last.1 = last.1.add(&v),
                        _ => out.push((j, v)),
                    }
                }
                out.retain(|e| !e.1.is_zero());
                out
            })
            .collect();
        Matrix::from_normalized_rows(field, rows, cols, data)
    }

    fn from_normalized_rows(field: &Field, rows: usize, cols: usize, data: Vec<SparseVec>) -> Matrix {
        let store = if uses_dense(rows, cols) {
            let mut d = vec![field.zero(); rows * cols];
            for (i, r) in data.into_iter().enumerate() {
                for (j, v) in r {
                    d[i * cols + j] = v;
                }
            }
            Store::Dense(d)
        } else {
            Store::Sparse(data)
        };
        Matrix { field: field.clone(), rows, cols, store }
    }

    /// Builds from sparse columns.
    pub fn from_sparse_cols(field: &Field, rows: usize, cols: usize, data: Vec<SparseVec>) -> Matrix {
        assert_eq!(data.len(), cols, "column count mismatch");
        let mut rdata: Vec<SparseVec> = vec![Vec::new(); rows];
        for (j, c) in data.into_iter().enumerate() {
            for (i, v) in c {
                assert!(i < rows, "row index out of range");
                if !v.is_zero() {
                    rdata[i].push((j, v));
                }
            }
        }
        Matrix::from_normalized_rows(field, rows, cols, rdata)
    }

    /// Builds from integer rows (reduced into the field).
    pub fn from_i64(field: &Field, rows: usize, cols: usize, data: &[Vec<i64>]) -> Result<Matrix, LinalgError> {
        if data.len() != rows || data.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::Shape(format!("expected {rows}x{cols} integer rows")));
        }
        let sparse = data
            .iter()
            .map(|r| r.iter().enumerate().map(|(j, &x)| (j, field.from_i64(x))).collect())
            .collect();
        Ok(Matrix::from_sparse_rows(field, rows, cols, sparse))
    }

    /// A column vector.
    pub fn column(field: &Field, v: SparseVec, len: usize) -> Matrix {
        Matrix::from_sparse_cols(field, len, 1, vec![v])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.store, Store::Dense(_))
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols, "index out of range");
        match &self.store {
            Store::Dense(d) => d[i * self.cols + j].clone(),
            Store::Sparse(s) => sparse_get(&s[i], j).cloned().unwrap_or_else(|| self.field.zero()),
        }
    }

    pub fn row(&self, i: usize) -> SparseVec {
        match &self.store {
            Store::Dense(d) => d[i * self.cols..(i + 1) * self.cols]
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (j, v.clone()))
                .collect(),
            Store::Sparse(s) => s[i].clone(),
        }
    }

    pub fn sparse_rows(&self) -> Vec<SparseVec> {
        match &self.store {
            Store::Sparse(s) => s.clone(),
            Store::Dense(_) => (0..self.rows).map(|i| self.row(i)).collect(),
        }
    }

    pub fn col(&self, j: usize) -> SparseVec {
        (0..self.rows)
            .filter_map(|i| {
                let v = self.get(i, j);
                (!v.is_zero()).then_some((i, v))
            })
            .collect()
    }

    pub fn sparse_cols(&self) -> Vec<SparseVec> {
        let mut out: Vec<SparseVec> = vec![Vec::new(); self.cols];
        for i in 0..self.rows {
            for (j, v) in self.row(i) {
                out[j].push((i, v));
            }
        }
        out
    }

    pub fn nnz(&self) -> usize {
        match &self.store {
            Store::Dense(d) => d.iter().filter(|v| !v.is_zero()).count(),
            Store::Sparse(s) => s.iter().map(|r| r.len()).sum(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(&self.field, self.rows)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_sparse_cols(&self.field, self.cols, self.rows, self.sparse_rows())
    }

    /// Matrix product; panics on a shape mismatch.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "product shape mismatch {:?} * {:?}", self.shape(), rhs.shape());
        let b = rhs.sparse_rows();
        let a = self.sparse_rows();
        let f = &self.field;
        let row_of = |ar: &SparseVec| -> SparseVec {
            let mut acc: SparseVec = Vec::new();
            for (k, v) in ar {
                if !b[*k].is_empty() {
                    acc = sparse_add_scaled(f, &acc, v, &b[*k]);
                }
            }
            acc
        };
        let data: Vec<SparseVec> = if self.rows * rhs.cols > 4096 {
            a.par_iter().map(row_of).collect()
        } else {
            a.iter().map(row_of).collect()
        };
        Matrix::from_normalized_rows(f, self.rows, rhs.cols, data)
    }

    pub fn try_mul(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::Shape(format!("cannot multiply {:?} by {:?}", self.shape(), rhs.shape())));
        }
        Ok(self.mul(rhs))
    }

    pub fn apply(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let mut out = Vec::new();
        for i in 0..self.rows {
            let r = self.row(i);
            let mut acc = self.field.zero();
            let (mut a, mut b) = (0, 0);
            while a < r.len() && b < v.len() {
                match r[a].0.cmp(&v[b].0) {
                    std::cmp::Ordering::Less => a += 1,
                    std::cmp::Ordering::Greater => b += 1,
                    std::cmp::Ordering::Equal => {
                        acc = acc.add(&r[a].1.mul(&v[b].1));
                        a += 1;
                        b += 1;
                    }
                }
            }
            if !acc.is_zero() {
                out.push((i, acc));
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "sum shape mismatch");
        let one = self.field.one();
        let data = self
            .sparse_rows()
            .iter()
            .zip(rhs.sparse_rows().iter())
            .map(|(a, b)| sparse_add_scaled(&self.field, a, &one, b))
            .collect();
        Matrix::from_normalized_rows(&self.field, self.rows, self.cols, data)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self
            .sparse_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|(j, v)| (j, v.mul(c))).filter(|e| !e.1.is_zero()).collect())
            .collect();
        Matrix::from_normalized_rows(&self.field, self.rows, self.cols, data)
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&self.field.from_i64(-1))
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        self.add(&rhs.neg())
    }

    /// Kronecker product `self (x) rhs`, indexing `(i, k) -> i * rhs.rows + k`.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let (br, bc) = rhs.shape();
        let b = rhs.sparse_rows();
        let mut data: Vec<SparseVec> = Vec::with_capacity(self.rows * br);
        for ar in self.sparse_rows() {
            for brow in &b {
                let mut r = Vec::with_capacity(ar.len() * brow.len());
                for (j, v) in &ar {
                    for (l, w) in brow {
                        r.push((j * bc + l, v.mul(w)));
                    }
                }
                data.push(r);
            }
        }
        Matrix::from_normalized_rows(&self.field, self.rows * br, self.cols * bc, data)
    }

    pub fn hstack(parts: &[&Matrix], field: &Field, rows: usize) -> Matrix {
        let cols: usize = parts.iter().map(|m| m.cols).sum();
        let mut data: Vec<SparseVec> = vec![Vec::new(); rows];
        let mut off = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            for (i, r) in m.sparse_rows().into_iter().enumerate() {
                data[i].extend(r.into_iter().map(|(j, v)| (j + off, v)));
            }
            off += m.cols;
        }
        Matrix::from_normalized_rows(field, rows, cols, data)
    }

    pub fn vstack(parts: &[&Matrix], field: &Field, cols: usize) -> Matrix {
        let mut data = Vec::new();
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            data.extend(m.sparse_rows());
        }
        let rows = data.len();
        Matrix::from_normalized_rows(field, rows, cols, data)
    }

    pub fn block_diag(parts: &[&Matrix], field: &Field) -> Matrix {
        let rows: usize = parts.iter().map(|m| m.rows).sum();
        let cols: usize = parts.iter().map(|m| m.cols).sum();
        let mut data = Vec::with_capacity(rows);
        let mut off = 0;
        for m in parts {
            for r in m.sparse_rows() {
                data.push(r.into_iter().map(|(j, v)| (j + off, v)).collect());
            }
            off += m.cols;
        }
        Matrix::from_normalized_rows(field, rows, cols, data)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let data = idx.iter().map(|&i| self.row(i)).collect();
        Matrix::from_normalized_rows(&self.field, idx.len(), self.cols, data)
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        self.transpose().select_rows(idx).transpose()
    }

    pub fn rref(&self) -> Rref {
        if self.is_dense() {
            rref_dense(&self.field, self.rows, self.cols, self)
        } else {
            rref_sparse(&self.field, self.cols, self.sparse_rows())
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the null space, as the columns of a `cols x nullity` matrix.
    /// The basis is canonical: one vector per free column of the RREF.
    pub fn kernel_basis(&self) -> Matrix {
        let r = self.rref();
        let vecs = kernel_from_rref(&self.field, &r);
        Matrix::from_sparse_cols(&self.field, self.cols, vecs.len(), vecs)
    }

    /// The pivot columns of `self`, a canonical basis of the column space.
    pub fn image_basis(&self) -> Matrix {
        let r = self.rref();
        self.select_cols(&r.pivots)
    }

    /// Solves `self * X = rhs`. Returns `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows, "solve shape mismatch");
        let aug = Matrix::hstack(&[self, rhs], &self.field, self.rows);
        let r = aug.rref();
        if r.pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut cols: Vec<SparseVec> = vec![Vec::new(); rhs.cols];
        for (row, &p) in r.rows.iter().zip(r.pivots.iter()) {
            for (j, v) in row {
                if *j >= self.cols {
                    cols[j - self.cols].push((p, v.clone()));
                }
            }
        }
        Some(Matrix::from_sparse_cols(&self.field, self.cols, rhs.cols, cols))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve(&Matrix::identity(&self.field, self.rows))?;
        (self.rank() == self.rows).then_some(x)
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_i64().unwrap_or(i64::MIN)).collect())
            .collect()
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect()).collect()
    }
}

pub fn kernel_from_rref(field: &Field, r: &Rref) -> Vec<SparseVec> {
    let mut is_pivot = vec![false; r.cols];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..r.cols).filter(|&j| !is_pivot[j]) {
        let mut v: SparseVec = Vec::new();
        for (row, &p) in r.rows.iter().zip(r.pivots.iter()) {
            if let Some(x) = sparse_get(row, free) {
                v.push((p, x.neg()));
            }
        }
        v.push((free, field.one()));
        v.sort_by_key(|e| e.0);
        out.push(v);
    }
    out
}

/// Incremental reduced echelon basis: the engine behind every elimination.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    cols: usize,
    // pivot column -> reduced row, kept sorted by pivot column
    pivots: Vec<usize>,
    rows: Vec<SparseVec>,
}

impl Echelon {
    pub fn new(field: &Field, cols: usize) -> Echelon {
        Echelon { field: field.clone(), cols, pivots: Vec::new(), rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Reduces `v` against the stored rows.
    pub fn reduce(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let mut out: SparseVec = v.to_vec();
        // pivot rows are fully reduced, so each coefficient is read off `v` directly
        for (j, x) in v {
            if let Ok(k) = self.pivots.binary_search(j) {
                out = sparse_add_scaled(&self.field, &out, &x.neg(), &self.rows[k]);
            }
        }
        out
    }

    /// Adds `v` to the span; returns true if it was independent.
    pub fn insert(&mut self, v: &[(usize, Scalar)]) -> bool {
        let r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let (p, lead) = (r[0].0, r[0].1.clone());
        let inv = lead.inv();
        let r: SparseVec = r.into_iter().map(|(j, x)| (j, x.mul(&inv))).collect();
        for row in self.rows.iter_mut() {
            if let Some(x) = sparse_get(row, p).cloned() {
                *row = sparse_add_scaled(&self.field, row, &x.neg(), &r);
            }
        }
        let k = self.pivots.binary_search(&p).unwrap_err();
        self.pivots.insert(k, p);
        self.rows.insert(k, r);
        true
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn into_rref(self) -> Rref {
        Rref { cols: self.cols, pivots: self.pivots, rows: self.rows }
    }

    pub fn rref(&self) -> Rref {
        Rref { cols: self.cols, pivots: self.pivots.clone(), rows: self.rows.clone() }
    }
}

fn rref_sparse(field: &Field, cols: usize, rows: Vec<SparseVec>) -> Rref {
    let mut e = Echelon::new(field, cols);
    for r in rows {
        e.insert(&r);
    }
    e.into_rref()
}

fn rref_dense(field: &Field, rows: usize, cols: usize, m: &Matrix) -> Rref {
    let mut a: Vec<Vec<Scalar>> = (0..rows).map(|i| (0..cols).map(|j| m.get(i, j)).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(k) = (r..rows).find(|&k| !a[k][c].is_zero()) else { continue };
        a.swap(r, k);
        let inv = a[r][c].inv();
        for x in a[r].iter_mut() {
            *x = x.mul(&inv);
        }
        let pr = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].neg();
                for (x, y) in row.iter_mut().zip(pr.iter()) {
                    if !y.is_zero() {
                        *x = x.add(&f.mul(y));
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let _ = field;
    let out = a
        .into_iter()
        .take(pivots.len())
        .map(|row| row.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect())
        .collect();
    Rref { cols, pivots, rows: out }
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Matrix) -> bool {
        self.field == other.field
            && self.shape() == other.shape()
            && (0..self.rows).all(|i| self.row(i) == other.row(i))
    }
}

impl Eq for Matrix {}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let r: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", r.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::f2()
    }

    #[test]
    fn identity_has_full_rank() {
        for n in 0..6 {
            assert_eq!(Matrix::identity(&f2(), n).rank(), n);
        }
    }

    #[test]
    fn rank_two_by_row_space_enumeration() {
        let a = Matrix::from_i64(&f2(), 4, 4, &[vec![1, 0, 1, 1], vec![0, 1, 1, 0], vec![1, 1, 0, 1], vec![0, 0, 0, 0]])
            .unwrap();
        // brute force: the row space has 2^rank elements
        let rows: Vec<u8> = a.to_i64_rows().iter().map(|r| r.iter().fold(0u8, |acc, &x| acc * 2 + x as u8)).collect();
        let mut span = std::collections::BTreeSet::new();
        for mask in 0..16u8 {
            let mut v = 0u8;
            for (k, r) in rows.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    v ^= r;
                }
            }
            span.insert(v);
        }
        assert_eq!(span.len(), 4);
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn sparse_and_dense_elimination_agree() {
        let q = Field::Rational;
        let m = Matrix::from_i64(&q, 3, 4, &[vec![2, 4, 0, 6], vec![1, 2, 3, 3], vec![0, 0, 1, 0]]).unwrap();
        let dense = m.rref();
        let sparse = rref_sparse(&q, 4, m.sparse_rows());
        assert_eq!(dense, sparse);
    }

    #[test]
    fn solve_verifies_and_reports_inconsistency() {
        let q = Field::Rational;
        let a = Matrix::from_i64(&q, 2, 2, &[vec![1, 2], vec![2, 4]]).unwrap();
        let b = Matrix::from_i64(&q, 2, 1, &[vec![3], vec![6]]).unwrap();
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
        let bad = Matrix::from_i64(&q, 2, 1, &[vec![3], vec![7]]).unwrap();
        assert!(a.solve(&bad).is_none());
    }

    #[test]
    fn kronecker_of_identities() {
        let i2 = Matrix::identity(&f2(), 2);
        let i3 = Matrix::identity(&f2(), 3);
        assert!(i2.kron(&i3).is_identity());
    }

    #[test]
    fn threshold_switches_storage() {
        let big = Matrix::identity(&f2(), 100);
        assert!(!big.is_dense());
        assert!(Matrix::identity(&f2(), 3).is_dense());
        assert_eq!(big.mul(&big), big);
    }
}
