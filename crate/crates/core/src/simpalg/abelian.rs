//! Square-zero extensions, abelianization, and the abelianization triple.

use std::sync::Arc;

use crate::linalg::Matrix;
use crate::linear::SimplicialModule;
use crate::simplicial::{SimplicialObject, VectCat};
use crate::triple::{Triple, TripleError};

use super::level::{AlgebraLevel, Indecomposables};
use super::object::{AlgMap, AlgObj, SimpAlgCat, SimplicialAlgebra};

fn with_unit(m: &Matrix) -> Matrix {
    Matrix::block_diag(&[&Matrix::identity(m.field(), 1), m], m.field())
}

/// `k + M` with `(b1, x1)(b2, x2) = (b1 b2, b1 x2 + b2 x1)`; the
/// augmentation is the first projection.
pub fn square_zero(m: &SimplicialModule) -> SimplicialAlgebra {
    let field = m.cat.field.clone();
    let levels = m
        .levels
        .iter()
        .map(|&d| AlgebraLevel::square_zero(&field, std::iter::once("1".to_string()).chain((0..d).map(|j| format!("q{j}"))).collect()))
        .collect();
    SimplicialAlgebra {
        field,
        levels,
        faces: m.faces.iter().map(|row| row.iter().map(with_unit).collect()).collect(),
        degeneracies: m.degeneracies.iter().map(|row| row.iter().map(with_unit).collect()).collect(),
    }
}

fn indecomposables(x: &SimplicialAlgebra) -> Vec<Indecomposables> {
    x.levels.iter().map(AlgebraLevel::indecomposables).collect()
}

fn induced(q: &[Indecomposables], m: &Matrix, from: usize, to: usize) -> Matrix {
    q[to].projection.mul(m).mul(&q[from].section)
}

/// `I / I^2` level by level with the induced structure maps.
pub fn abelianize(x: &SimplicialAlgebra) -> SimplicialModule {
    let q = indecomposables(x);
    SimplicialObject {
        cat: VectCat::new(x.field.clone()),
        levels: q.iter().map(Indecomposables::dim).collect(),
        faces: x.faces.iter().enumerate().map(|(n, row)| row.iter().map(|d| induced(&q, d, n, n - 1)).collect()).collect(),
        degeneracies: x.degeneracies.iter().enumerate().map(|(n, row)| row.iter().map(|s| induced(&q, s, n, n + 1)).collect()).collect(),
    }
}

/// `Q f` for an algebra map `f`.
pub fn abelianize_map(f: &AlgMap) -> Vec<Matrix> {
    let (qa, qb) = (indecomposables(&f.source), indecomposables(&f.target));
    f.components.iter().enumerate().map(|(n, m)| qb[n].projection.mul(m).mul(&qa[n].section)).collect()
}

/// `R = square_zero . abelianize`, with unit `(augmentation, residue class)`
/// and multiplication the canonical `R R X = R X`.
#[derive(Clone, Debug)]
pub struct AbelianizationTriple {
    pub cat: SimpAlgCat,
}

impl AbelianizationTriple {
    pub fn new(cat: SimpAlgCat) -> AbelianizationTriple {
        AbelianizationTriple { cat }
    }

    fn image(&self, x: &AlgObj) -> AlgObj {
        Arc::new(square_zero(&abelianize(x)))
    }
}

impl Triple for AbelianizationTriple {
    type Cat = SimpAlgCat;

    fn category(&self) -> &SimpAlgCat {
        &self.cat
    }

    fn apply(&self, x: &AlgObj) -> Result<AlgObj, TripleError> {
        Ok(self.image(x))
    }

    fn apply_mor(&self, f: &AlgMap) -> Result<AlgMap, TripleError> {
        let components = abelianize_map(f).iter().map(with_unit).collect();
        Ok(AlgMap { source: self.image(&f.source), target: self.image(&f.target), components })
    }

    fn unit(&self, x: &AlgObj) -> Result<AlgMap, TripleError> {
        let q = indecomposables(x);
        let components = x
            .levels
            .iter()
            .zip(&q)
            .map(|(level, q)| {
                let aug = Matrix::from_sparse_rows(&x.field, 1, level.dim(), vec![level.augmentation.clone()]);
                Matrix::vstack(&[&aug, &q.projection], &x.field, level.dim())
            })
            .collect();
        Ok(AlgMap { source: x.clone(), target: self.image(x), components })
    }

    fn mult(&self, x: &AlgObj) -> Result<AlgMap, TripleError> {
        let rx = self.image(x);
        let rrx = self.image(&rx);
        if rrx.dims() != rx.dims() {
            return Err(TripleError::Axiom("R R X and R X differ in size".into()));
        }
        let components = rx.levels.iter().map(|l| Matrix::identity(&x.field, l.dim())).collect();
        Ok(AlgMap { source: rrx, target: rx, components })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Field, Scalar};
    use crate::linear::{dold_kan, ChainComplex};
    use crate::simpalg::{FreeForget, MonomialBasis, TruncationPolicy};
    use crate::triple::{verify_triple, verify_triple_naturality, Cotriple};

    fn f2() -> Field {
        Field::f2()
    }

    /// One class in Moore degree 1.
    fn circle(n_max: usize) -> SimplicialModule {
        dold_kan(&ChainComplex::concentrated(&f2(), 1, 1), n_max).unwrap()
    }

    fn polynomial_constant(degree: usize, n_max: usize) -> AlgObj {
        let level = AlgebraLevel::polynomial(&f2(), Arc::new(MonomialBasis::new(1, degree)), |_| "x".into());
        Arc::new(SimplicialAlgebra::constant(&level, n_max))
    }

    #[test]
    fn zero_module_gives_the_ground_algebra() {
        let zero = SimplicialObject::constant(&VectCat::new(f2()), &0, 2);
        assert_eq!(square_zero(&zero), SimplicialAlgebra::ground(&f2(), 2));
    }

    #[test]
    fn square_of_one_plus_m_in_characteristic_two() {
        let x = square_zero(&SimplicialObject::constant(&VectCat::new(f2()), &1, 0));
        let one = f2().one();
        let v = vec![(0, one.clone()), (1, one.clone())];
        assert_eq!(x.levels[0].mul(&v, &v).0, vec![(0, one)]);
    }

    #[test]
    fn square_zero_products_follow_the_pair_formula() {
        // every element of k + k^2 over F_3, against (b1 b2, b1 x2 + b2 x1)
        let f = Field::prime(3).unwrap();
        let x = square_zero(&SimplicialObject::constant(&VectCat::new(f.clone()), &2, 0));
        let level = &x.levels[0];
        level.check_axioms().unwrap();
        let elements: Vec<[i64; 3]> = (0..27).map(|e| [e % 3, (e / 3) % 3, e / 9]).collect();
        let vector = |a: &[i64; 3]| -> Vec<(usize, Scalar)> { a.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, f.from_i64(c))).collect() };
        for a in &elements {
            for b in &elements {
                let expected = [a[0] * b[0], a[0] * b[1] + b[0] * a[1], a[0] * b[2] + b[0] * a[2]].map(|c| c.rem_euclid(3));
                assert_eq!(level.mul(&vector(a), &vector(b)).0, vector(&expected));
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let (ij, _) = level.mul_basis(i, j);
                    let (jk, _) = level.mul_basis(j, k);
                    assert_eq!(level.mul(&ij, &[(k, f.one())]).0, level.mul(&[(i, f.one())], &jk).0);
                }
            }
        }
    }

    #[test]
    fn abelianizing_a_square_zero_extension_returns_the_module() {
        let m = circle(3);
        let q = abelianize(&square_zero(&m));
        assert_eq!(q.levels, m.levels);
        assert_eq!(q.faces, m.faces);
        assert_eq!(q.degeneracies, m.degeneracies);
    }

    #[test]
    fn abelianization_of_truncated_polynomials_and_of_k() {
        assert_eq!(abelianize(&polynomial_constant(3, 2)).levels, vec![1, 1, 1]);
        assert_eq!(abelianize(&SimplicialAlgebra::ground(&f2(), 2)).levels, vec![0, 0, 0]);
    }

    #[test]
    fn triple_axioms_hold() {
        let r = AbelianizationTriple::new(SimpAlgCat::new(f2(), 2));
        let fixtures = vec![polynomial_constant(3, 2), Arc::new(square_zero(&circle(2))), Arc::new(SimplicialAlgebra::ground(&f2(), 2))];
        let report = verify_triple(&r, &fixtures);
        assert!(report.all_passed(), "{:?}", report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn unit_is_an_isomorphism_on_square_zero_algebras() {
        let r = AbelianizationTriple::new(SimpAlgCat::new(f2(), 3));
        let x: AlgObj = Arc::new(square_zero(&circle(3)));
        let nu = r.unit(&x).unwrap();
        nu.validate().unwrap();
        for m in &nu.components {
            assert_eq!(m.rows(), m.cols());
            assert_eq!(m.rank(), m.rows());
        }
        let rrx = r.apply(&r.apply(&x).unwrap()).unwrap();
        assert_eq!(rrx.dims(), x.dims());
    }

    #[test]
    fn indecomposables_are_natural() {
        let cat = SimpAlgCat::new(f2(), 2);
        let s = FreeForget::new(cat.clone(), TruncationPolicy::default());
        let r = AbelianizationTriple::new(cat);
        let xs = [polynomial_constant(3, 2), Arc::new(square_zero(&circle(2)))];
        let counits: Vec<AlgMap> = xs.iter().map(|x| s.counit(x).unwrap()).collect();
        for e in &counits {
            e.validate().unwrap();
            let (qa, qb) = (abelianize(&e.source), abelianize(&e.target));
            let lm = crate::simplicial::LevelMap::<VectCat> { components: abelianize_map(e) };
            assert!(lm.is_simplicial_map(&qa, &qb));
        }
        let report = verify_triple_naturality(&r, &counits);
        assert!(report.all_passed(), "{:?}", report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn module_maps_match_augmented_algebra_maps() {
        // over F_2 with dim M, dim N <= 2: every (1 + n) x (1 + m) matrix
        // that is an augmented algebra map k + M -> k + N has the form 1 + f
        let f = f2();
        for m in 0..=2usize {
            for n in 0..=2usize {
                let a = AlgebraLevel::square_zero(&f, (0..=m).map(|i| i.to_string()).collect());
                let b = AlgebraLevel::square_zero(&f, (0..=n).map(|i| i.to_string()).collect());
                let entries = (1 + n) * (1 + m);
                let mut algebra_maps = 0;
                for bits in 0u32..1 << entries {
                    let rows: Vec<Vec<i64>> = (0..=n).map(|i| (0..=m).map(|j| ((bits >> (i * (1 + m) + j)) & 1) as i64).collect()).collect();
                    let mat = Matrix::from_i64(&f, 1 + n, 1 + m, &rows).unwrap();
                    if a.map_defect(&mat, &b).is_ok() {
                        algebra_maps += 1;
                        assert!(rows[0][0] == 1 && rows[0][1..].iter().all(|&c| c == 0) && rows[1..].iter().all(|r| r[0] == 0));
                    }
                }
                assert_eq!(algebra_maps, 1 << (m * n), "dims {m}, {n}");
            }
        }
    }
}
