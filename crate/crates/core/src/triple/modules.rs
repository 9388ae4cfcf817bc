//! Tensor triples `A (x) -` and cotriples `C (x) -` on finite-dimensional
//! vector spaces.

use crate::linalg::{Field, Matrix};
use crate::simplicial::VectCat;

use super::descriptor::{Cotriple, Triple, TripleMap};
use super::TripleError;

/// A finite-dimensional unital algebra. `mult` is `dim x dim^2`, with
/// `e_i (x) e_j` at column `i * dim + j`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteAlgebra {
    pub field: Field,
    pub dim: usize,
    pub mult: Matrix,
    pub unit: Matrix,
}

impl FiniteAlgebra {
    /// From structure constants `(i, j, k, c)`: `e_i e_j` has `c` at `e_k`.
    pub fn from_table(field: &Field, dim: usize, table: &[(usize, usize, usize, i64)], unit: &[i64]) -> FiniteAlgebra {
        let mut cols = vec![Vec::new(); dim * dim];
        for &(i, j, k, c) in table {
            cols[i * dim + j].push((k, field.from_i64(c)));
        }
        let mult = Matrix::from_sparse_cols(field, dim, dim * dim, cols);
        let unit = ints(field, &unit.iter().map(|&u| vec![u]).collect::<Vec<_>>());
        FiniteAlgebra { field: field.clone(), dim, mult, unit }
    }

    /// `k^n` with orthogonal idempotents.
    pub fn product_of_fields(field: &Field, n: usize) -> FiniteAlgebra {
        let table: Vec<_> = (0..n).map(|i| (i, i, i, 1)).collect();
        FiniteAlgebra::from_table(field, n, &table, &vec![1; n])
    }

    /// `k[x]/(x^2)`.
    pub fn dual_numbers(field: &Field) -> FiniteAlgebra {
        FiniteAlgebra::from_table(field, 2, &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)], &[1, 0])
    }

    /// Basis `1, x, y` with `x x = y`, `x y = x`, `y x = y y = 0`: unital but
    /// not associative.
    pub fn non_associative(field: &Field) -> FiniteAlgebra {
        let table = [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (0, 2, 2, 1), (2, 0, 2, 1), (1, 1, 2, 1), (1, 2, 1, 1)];
        FiniteAlgebra::from_table(field, 3, &table, &[1, 0, 0])
    }

    /// The product `a b` of two coordinate vectors.
    pub fn product(&self, a: &Matrix, b: &Matrix) -> Matrix {
        self.mult.mul(&a.kron(b))
    }
}

/// A finite-dimensional counital coalgebra; `comult` is `dim^2 x dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteCoalgebra {
    pub field: Field,
    pub dim: usize,
    pub comult: Matrix,
    pub counit: Matrix,
}

impl FiniteCoalgebra {
    /// Spanned by `n` group-like elements.
    pub fn grouplike(field: &Field, n: usize) -> FiniteCoalgebra {
        let comult = Matrix::from_sparse_cols(field, n * n, n, (0..n).map(|i| vec![(i * n + i, field.one())]).collect());
        let counit = ints(field, &[vec![1; n]]);
        FiniteCoalgebra { field: field.clone(), dim: n, comult, counit }
    }

    /// `k[x]/(x^2)` dualized: `1` group-like, `x` primitive.
    pub fn dual_numbers(field: &Field) -> FiniteCoalgebra {
        let one = field.one();
        let comult = Matrix::from_sparse_cols(field, 4, 2, vec![vec![(0, one.clone())], vec![(1, one.clone()), (2, one)]]);
        let counit = ints(field, &[vec![1, 0]]);
        FiniteCoalgebra { field: field.clone(), dim: 2, comult, counit }
    }
}

/// `R = A (x) -` with unit from the unit of `A` and multiplication from that of `A`.
#[derive(Clone, Debug)]
pub struct TensorTriple {
    pub algebra: FiniteAlgebra,
    cat: VectCat,
}

impl TensorTriple {
    pub fn new(algebra: FiniteAlgebra) -> TensorTriple {
        let cat = VectCat::new(algebra.field.clone());
        TensorTriple { algebra, cat }
    }
}

impl Triple for TensorTriple {
    type Cat = VectCat;

    fn category(&self) -> &VectCat {
        &self.cat
    }

    fn apply(&self, x: &usize) -> Result<usize, TripleError> {
        Ok(self.algebra.dim * x)
    }

    fn apply_mor(&self, f: &Matrix) -> Result<Matrix, TripleError> {
        Ok(Matrix::identity(&self.algebra.field, self.algebra.dim).kron(f))
    }

    fn unit(&self, x: &usize) -> Result<Matrix, TripleError> {
        Ok(self.algebra.unit.kron(&Matrix::identity(&self.algebra.field, *x)))
    }

    fn mult(&self, x: &usize) -> Result<Matrix, TripleError> {
        Ok(self.algebra.mult.kron(&Matrix::identity(&self.algebra.field, *x)))
    }
}

/// `S = C (x) -` with counit and comultiplication from those of `C`.
#[derive(Clone, Debug)]
pub struct CoalgebraCotriple {
    pub coalgebra: FiniteCoalgebra,
    cat: VectCat,
}

impl CoalgebraCotriple {
    pub fn new(coalgebra: FiniteCoalgebra) -> CoalgebraCotriple {
        let cat = VectCat::new(coalgebra.field.clone());
        CoalgebraCotriple { coalgebra, cat }
    }
}

impl Cotriple for CoalgebraCotriple {
    type Cat = VectCat;

    fn category(&self) -> &VectCat {
        &self.cat
    }

    fn apply(&self, x: &usize) -> Result<usize, TripleError> {
        Ok(self.coalgebra.dim * x)
    }

    fn apply_mor(&self, f: &Matrix) -> Result<Matrix, TripleError> {
        Ok(Matrix::identity(&self.coalgebra.field, self.coalgebra.dim).kron(f))
    }

    fn counit(&self, x: &usize) -> Result<Matrix, TripleError> {
        Ok(self.coalgebra.counit.kron(&Matrix::identity(&self.coalgebra.field, *x)))
    }

    fn comult(&self, x: &usize) -> Result<Matrix, TripleError> {
        Ok(self.coalgebra.comult.kron(&Matrix::identity(&self.coalgebra.field, *x)))
    }

    fn is_cofibrant_replacement(&self) -> bool {
        self.coalgebra.dim == 1
    }
}

/// The transformation `A (x) - => B (x) -` induced by a linear map `A -> B`.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    /// `dim B x dim A`.
    pub map: Matrix,
}

impl AlgebraMap {
    pub fn new(map: Matrix) -> AlgebraMap {
        AlgebraMap { map }
    }
}

impl TripleMap for AlgebraMap {
    type Cat = VectCat;

    fn component(&self, x: &usize) -> Result<Matrix, TripleError> {
        Ok(self.map.kron(&Matrix::identity(self.map.field(), *x)))
    }
}

/// A small integer matrix given by rows.
pub fn ints(field: &Field, rows: &[Vec<i64>]) -> Matrix {
    let cols = rows.first().map_or(0, Vec::len);
    Matrix::from_i64(field, rows.len(), cols, rows).expect("rectangular rows")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triple::descriptor::{verify_cotriple, verify_triple, verify_triple_map, verify_triple_naturality, IdentityTriple};

    fn f2() -> Field {
        Field::f2()
    }

    #[test]
    fn identity_triple_passes() {
        let r = IdentityTriple(VectCat::new(f2()));
        assert!(verify_triple(&r, &[0, 1, 3]).all_passed());
    }

    #[test]
    fn tensor_triples_pass() {
        for a in [FiniteAlgebra::dual_numbers(&f2()), FiniteAlgebra::product_of_fields(&f2(), 2), FiniteAlgebra::product_of_fields(&Field::prime(5).unwrap(), 3)] {
            let r = TensorTriple::new(a);
            assert!(verify_triple(&r, &[1, 2, 3]).all_passed());
            let f = ints(&r.algebra.field, &[vec![1, 1], vec![0, 1], vec![1, 0]]);
            assert!(verify_triple_naturality(&r, &[f]).all_passed());
        }
    }

    #[test]
    fn non_associative_multiplication_is_caught() {
        let r = TensorTriple::new(FiniteAlgebra::non_associative(&f2()));
        let report = verify_triple(&r, &[1, 2]);
        let failed: Vec<_> = report.failures().map(|c| c.axiom.as_str()).collect();
        assert!(!failed.is_empty());
        assert!(failed.iter().all(|a| a.starts_with("mult . mult")), "{failed:?}");
    }

    #[test]
    fn coalgebra_cotriples_pass() {
        for c in [FiniteCoalgebra::grouplike(&f2(), 2), FiniteCoalgebra::dual_numbers(&Field::prime(3).unwrap())] {
            assert!(verify_cotriple(&CoalgebraCotriple::new(c), &[1, 2]).all_passed());
        }
    }

    #[test]
    fn algebra_maps_are_triple_maps() {
        let f = f2();
        let a = TensorTriple::new(FiniteAlgebra::product_of_fields(&f, 2));
        let b = TensorTriple::new(FiniteAlgebra::product_of_fields(&f, 3));
        let first = AlgebraMap::new(ints(&f, &[vec![1, 0], vec![0, 1], vec![1, 0]]));
        assert!(verify_triple_map(&a, &b, &first, &[1, 2]).all_passed());
        let not_unital = AlgebraMap::new(ints(&f, &[vec![1, 0], vec![0, 1], vec![0, 0]]));
        let report = verify_triple_map(&a, &b, &not_unital, &[1]);
        assert!(!report.checks[0].passed);
    }
}
