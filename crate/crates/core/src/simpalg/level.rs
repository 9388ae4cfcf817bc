//! Finite-dimensional augmented commutative algebras over a prime field.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::linalg::{Field, Matrix, QuotientBasis, Scalar, SparseVec, Subspace};

/// Monomials of degree at most `degree` in `gens` commuting variables, ordered
/// by degree, then lexicographically as sorted generator lists. Index 0 is 1
/// and index `1 + g` is the generator `g`.
#[derive(Debug)]
pub struct MonomialBasis {
    pub gens: usize,
    pub degree: usize,
    monomials: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl PartialEq for MonomialBasis {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens && self.degree == other.degree
    }
}

impl MonomialBasis {
    /// `C(gens + degree, degree)`, or `None` past `usize`.
    pub fn size(gens: usize, degree: usize) -> Option<usize> {
        let mut acc: u128 = 1;
        for i in 1..=degree as u128 {
            acc = acc * (gens as u128 + i) / i;
            if acc > usize::MAX as u128 {
                return None;
            }
        }
        Some(acc as usize)
    }

    pub fn new(gens: usize, degree: usize) -> MonomialBasis {
        let mut monomials = vec![Vec::new()];
        let mut layer: Vec<Vec<u32>> = vec![Vec::new()];
        for _ in 0..degree {
            let mut next = Vec::new();
            for m in &layer {
                let start = m.last().copied().unwrap_or(0);
                for g in start..gens as u32 {
                    let mut n = m.clone();
                    n.push(g);
                    next.push(n);
                }
            }
            monomials.extend(next.iter().cloned());
            layer = next;
        }
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        MonomialBasis { gens, degree, monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomial(&self, i: usize) -> &[u32] {
        &self.monomials[i]
    }

    pub fn degree_of(&self, i: usize) -> usize {
        self.monomials[i].len()
    }

    pub fn index_of(&self, m: &[u32]) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn generator(&self, g: usize) -> usize {
        1 + g
    }

    /// Index of the product, `None` when its degree exceeds the truncation.
    pub fn product(&self, i: usize, j: usize) -> Option<usize> {
        let mut m: Vec<u32> = self.monomials[i].iter().chain(&self.monomials[j]).copied().collect();
        if m.len() > self.degree {
            return None;
        }
        m.sort_unstable();
        self.index_of(&m)
    }

    pub fn label(&self, i: usize, gen_label: impl Fn(u32) -> String) -> String {
        if i == 0 {
            return "1".into();
        }
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for &g in &self.monomials[i] {
            *counts.entry(g).or_default() += 1;
        }
        counts
            .into_iter()
            .map(|(g, e)| if e == 1 { gen_label(g) } else { format!("{}^{e}", gen_label(g)) })
            .collect::<Vec<_>>()
            .join("*")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Product {
    /// `1` at index 0; every product of two other basis elements vanishes.
    SquareZero,
    /// Truncated polynomial algebra; products past the degree bound drop to zero.
    Monomial(Arc<MonomialBasis>),
    /// `table[i][j] = e_i e_j`.
    Table(Arc<Vec<Vec<SparseVec>>>),
}

/// One level: basis labels, multiplication, unit and augmentation.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraLevel {
    pub field: Field,
    pub labels: Vec<String>,
    pub product: Product,
    pub unit: SparseVec,
    /// The augmentation as a functional, by basis index.
    pub augmentation: SparseVec,
}

/// Result of multiplying, with the number of basis products dropped by the
/// truncation, by degree of the dropped monomial.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Overflow {
    pub dropped: BTreeMap<usize, usize>,
}

impl Overflow {
    pub fn total(&self) -> usize {
        self.dropped.values().sum()
    }

    pub fn absorb(&mut self, other: &Overflow) {
        for (d, c) in &other.dropped {
            *self.dropped.entry(*d).or_default() += c;
        }
    }
}

/// `Q = I / I^2` with a section into `I`.
#[derive(Clone, Debug)]
pub struct Indecomposables {
    /// `dim Q x dim`, zero on the unit.
    pub projection: Matrix,
    /// `dim x dim Q`, representatives in the augmentation ideal.
    pub section: Matrix,
}

impl Indecomposables {
    pub fn dim(&self) -> usize {
        self.projection.rows()
    }
}

fn accumulate(field: &Field, acc: &mut BTreeMap<usize, Scalar>, v: &[(usize, Scalar)], c: &Scalar) {
    for (j, x) in v {
        let e = acc.entry(*j).or_insert_with(|| field.zero());
        *e = e.add(&x.mul(c));
    }
}

fn collect(acc: BTreeMap<usize, Scalar>) -> SparseVec {
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

impl AlgebraLevel {
    pub fn square_zero(field: &Field, labels: Vec<String>) -> AlgebraLevel {
        AlgebraLevel {
            field: field.clone(),
            labels,
            product: Product::SquareZero,
            unit: vec![(0, field.one())],
            augmentation: vec![(0, field.one())],
        }
    }

    pub fn polynomial(field: &Field, basis: Arc<MonomialBasis>, gen_label: impl Fn(u32) -> String) -> AlgebraLevel {
        let labels = (0..basis.len()).map(|i| basis.label(i, &gen_label)).collect();
        AlgebraLevel {
            field: field.clone(),
            labels,
            product: Product::Monomial(basis),
            unit: vec![(0, field.one())],
            augmentation: vec![(0, field.one())],
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn monomials(&self) -> Option<&MonomialBasis> {
        match &self.product {
            Product::Monomial(b) => Some(b),
            _ => None,
        }
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> (SparseVec, Overflow) {
        let one = self.field.one();
        let mut overflow = Overflow::default();
        let v = match &self.product {
            Product::SquareZero => match (i, j) {
                (0, k) | (k, 0) => vec![(k, one)],
                _ => Vec::new(),
            },
            Product::Monomial(b) => match b.product(i, j) {
                Some(k) => vec![(k, one)],
                None => {
                    *overflow.dropped.entry(b.degree_of(i) + b.degree_of(j)).or_default() += 1;
                    Vec::new()
                }
            },
            Product::Table(t) => t[i][j].clone(),
        };
        (v, overflow)
    }

    pub fn mul(&self, a: &[(usize, Scalar)], b: &[(usize, Scalar)]) -> (SparseVec, Overflow) {
        let mut acc = BTreeMap::new();
        let mut overflow = Overflow::default();
        for (i, x) in a {
            for (j, y) in b {
                let (v, o) = self.mul_basis(*i, *j);
                overflow.absorb(&o);
                accumulate(&self.field, &mut acc, &v, &x.mul(y));
            }
        }
        (collect(acc), overflow)
    }

    pub fn augment(&self, v: &[(usize, Scalar)]) -> Scalar {
        let mut acc = self.field.zero();
        for (j, x) in v {
            if let Ok(k) = self.augmentation.binary_search_by_key(j, |e| e.0) {
                acc = acc.add(&x.mul(&self.augmentation[k].1));
            }
        }
        acc
    }

    /// Unital, commutative and associative on basis elements, and the
    /// augmentation is multiplicative and unital.
    pub fn check_axioms(&self) -> Result<(), String> {
        let n = self.dim();
        let e = |i: usize| vec![(i, self.field.one())];
        if !self.augment(&self.unit).is_one() {
            return Err("augmentation of 1 is not 1".into());
        }
        for i in 0..n {
            if self.mul(&self.unit, &e(i)).0 != e(i) {
                return Err(format!("1 * {} != {}", self.labels[i], self.labels[i]));
            }
            for j in 0..n {
                let (ij, _) = self.mul_basis(i, j);
                if ij != self.mul_basis(j, i).0 {
                    return Err(format!("{} and {} do not commute", self.labels[i], self.labels[j]));
                }
                if self.augment(&ij) != self.augment(&e(i)).mul(&self.augment(&e(j))) {
                    return Err(format!("augmentation not multiplicative on {} * {}", self.labels[i], self.labels[j]));
                }
                for k in 0..n {
                    let left = self.mul(&ij, &e(k)).0;
                    let right = self.mul(&e(i), &self.mul_basis(j, k).0).0;
                    if left != right {
                        return Err(format!("({} {}) {} != {} ({} {})", self.labels[i], self.labels[j], self.labels[k], self.labels[i], self.labels[j], self.labels[k]));
                    }
                }
            }
        }
        Ok(())
    }

    /// Pivot of the augmentation row; ideal coordinates are all other indices.
    fn pivot(&self) -> usize {
        self.augmentation.iter().find(|(_, x)| !x.is_zero()).map(|(j, _)| *j).expect("augmentation is nonzero")
    }

    pub fn ideal_dim(&self) -> usize {
        self.dim() - 1
    }

    /// Basis of the augmentation ideal: one vector per non-pivot index `j`,
    /// `e_j - (a_j / a_pivot) e_pivot`.
    pub fn ideal_basis_vector(&self, j: usize) -> SparseVec {
        let p = self.pivot();
        let aj = self.augment(&[(j, self.field.one())]);
        let ap = self.augment(&[(p, self.field.one())]);
        let mut v = vec![(j, self.field.one())];
        let c = aj.mul(&ap.inv()).neg();
        if !c.is_zero() {
            v.push((p, c));
        }
        v.sort_by_key(|e| e.0);
        v
    }

    fn ideal_indices(&self) -> Vec<usize> {
        let p = self.pivot();
        (0..self.dim()).filter(|&j| j != p).collect()
    }

    /// The element of the augmentation ideal with base-`p` digits `e` on the
    /// ideal basis (digit `k` on the `k`-th non-pivot index).
    pub fn ideal_element(&self, mut e: u64) -> SparseVec {
        let p = self.field.characteristic() as u64;
        let mut acc = BTreeMap::new();
        for j in self.ideal_indices() {
            let digit = e % p;
            e /= p;
            if digit != 0 {
                accumulate(&self.field, &mut acc, &self.ideal_basis_vector(j), &self.field.from_i64(digit as i64));
            }
        }
        collect(acc)
    }

    /// Inverse of [`AlgebraLevel::ideal_element`] on the augmentation ideal.
    pub fn ideal_index(&self, v: &[(usize, Scalar)]) -> u64 {
        let p = self.field.characteristic() as u64;
        let mut e = 0u64;
        let mut weight = 1u64;
        for j in self.ideal_indices() {
            if let Ok(k) = v.binary_search_by_key(&j, |x| x.0) {
                e += v[k].1.to_i64().expect("prime field") as u64 * weight;
            }
            weight = weight.saturating_mul(p);
        }
        e
    }

    /// Number of elements of the augmentation ideal, `None` past `u64`.
    pub fn ideal_size(&self) -> Option<u64> {
        (self.field.characteristic() as u64).checked_pow(u32::try_from(self.ideal_dim()).ok()?)
    }

    pub fn indecomposables(&self) -> Indecomposables {
        let f = &self.field;
        let n = self.dim();
        if let Product::Monomial(b) = &self.product {
            let g = b.gens.min(n.saturating_sub(1));
            let g = if b.degree == 0 { 0 } else { g };
            let projection = Matrix::from_sparse_rows(f, g, n, (0..g).map(|k| vec![(1 + k, f.one())]).collect());
            return Indecomposables { section: projection.transpose(), projection };
        }
        if let Product::SquareZero = &self.product {
            let projection = Matrix::from_sparse_rows(f, n - 1, n, (1..n).map(|k| vec![(k, f.one())]).collect());
            return Indecomposables { section: projection.transpose(), projection };
        }
        let ideal: Vec<SparseVec> = self.ideal_indices().into_iter().map(|j| self.ideal_basis_vector(j)).collect();
        let mut squares = Vec::new();
        for a in &ideal {
            for b in &ideal {
                squares.push(self.mul(a, b).0);
            }
        }
        let den = Subspace::span(f, n, &squares);
        let q = QuotientBasis::new(f, n, &ideal, &den);
        // columns e_j - aug(e_j) 1
        let to_ideal: Vec<SparseVec> = (0..n)
            .map(|j| {
                let mut acc = BTreeMap::new();
                accumulate(f, &mut acc, &[(j, f.one())], &f.one());
                accumulate(f, &mut acc, &self.unit, &self.augment(&[(j, f.one())]).neg());
                collect(acc)
            })
            .collect();
        let projection = q.coords(&Matrix::from_sparse_cols(f, n, n, to_ideal)).expect("ideal lies in I");
        Indecomposables { projection, section: q.reps_matrix() }
    }

    /// Checks that `f` (columns: images of this level's basis) is unital,
    /// preserves augmentations and is multiplicative. Basis products dropped
    /// by this level's truncation are skipped and counted.
    pub fn map_defect(&self, f: &Matrix, target: &AlgebraLevel) -> Result<Overflow, String> {
        let apply = |v: &[(usize, Scalar)]| f.apply(v);
        if apply(&self.unit) != target.unit {
            return Err("unit not preserved".into());
        }
        for j in 0..self.dim() {
            let e = vec![(j, self.field.one())];
            if target.augment(&apply(&e)) != self.augment(&e) {
                return Err(format!("augmentation not preserved on {}", self.labels[j]));
            }
        }
        let mut skipped = Overflow::default();
        if let Product::Monomial(b) = &self.product {
            for i in 1..self.dim() {
                let m = b.monomial(i);
                let mut image = target.unit.clone();
                for &g in m {
                    let (next, o) = target.mul(&image, &f.col(b.generator(g as usize)));
                    skipped.absorb(&o);
                    image = next;
                }
                if image != f.col(i) {
                    return Err(format!("not multiplicative on {}", self.labels[i]));
                }
            }
            return Ok(skipped);
        }
        for i in 0..self.dim() {
            for j in i..self.dim() {
                let (ij, o) = self.mul_basis(i, j);
                if o.total() > 0 {
                    skipped.absorb(&o);
                    continue;
                }
                let (prod, o) = target.mul(&f.col(i), &f.col(j));
                skipped.absorb(&o);
                if apply(&ij) != prod {
                    return Err(format!("not multiplicative on {} * {}", self.labels[i], self.labels[j]));
                }
            }
        }
        Ok(skipped)
    }
}
