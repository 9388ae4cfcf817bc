//! Truncated simplicial and cosimplicial objects in a concrete category.

use crate::delta::{compose, FiniteSimplicialSet, OrdinalMap};

use super::category::ConcreteCategory;
use super::SimplicialError;

/// Levels `0..=s_max`; `cofaces[n][i] = d^i: Y^{n-1} -> Y^n` (empty for
/// `n = 0`), `codegeneracies[n][i] = s^i: Y^{n+1} -> Y^n` (empty for `n = s_max`).
#[derive(Clone, Debug)]
pub struct CosimplicialObject<C: ConcreteCategory> {
    pub cat: C,
    pub levels: Vec<C::Obj>,
    pub cofaces: Vec<Vec<C::Mor>>,
    pub codegeneracies: Vec<Vec<C::Mor>>,
}

/// Levels `0..=n_max`; `faces[n][i] = d_i: X_n -> X_{n-1}`,
/// `degeneracies[n][i] = s_i: X_n -> X_{n+1}` (empty for `n = n_max`).
#[derive(Clone, Debug)]
pub struct SimplicialObject<C: ConcreteCategory> {
    pub cat: C,
    pub levels: Vec<C::Obj>,
    pub faces: Vec<Vec<C::Mor>>,
    pub degeneracies: Vec<Vec<C::Mor>>,
}

/// A level-wise family of morphisms between two truncated objects.
#[derive(Clone, Debug)]
pub struct LevelMap<C: ConcreteCategory> {
    pub components: Vec<C::Mor>,
}

/// First failing identity, named by the elementary operators involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityViolation {
    pub first: String,
    pub second: String,
    pub level: usize,
}

fn elementary_pairs(bound: usize) -> Vec<(OrdinalMap, OrdinalMap)> {
    // composable pairs of elementary maps with all ordinals <= bound
    let mut elems = Vec::new();
    for n in 0..=bound {
        if n >= 1 {
            for i in 0..=n {
                elems.push(OrdinalMap::face(n, i));
            }
        }
        if n < bound {
            for i in 0..=n {
                elems.push(OrdinalMap::degeneracy(n, i));
            }
        }
    }
    let mut pairs = Vec::new();
    for a in &elems {
        for b in &elems {
            if a.target() == b.source() {
                pairs.push((a.clone(), b.clone()));
            }
        }
    }
    pairs
}

fn op_name(e: &OrdinalMap) -> String {
    if e.source() < e.target() {
        let w = crate::delta::epi_mono_factor(e);
        format!("d^{}", w.faces[0])
    } else {
        let w = crate::delta::epi_mono_factor(e);
        format!("s^{}", w.degeneracies[0])
    }
}

impl<C: ConcreteCategory> CosimplicialObject<C> {
    pub fn s_max(&self) -> usize {
        self.levels.len() - 1
    }

    /// The constant object on `x`.
    pub fn constant(cat: &C, x: &C::Obj, s_max: usize) -> CosimplicialObject<C> {
        let id = cat.identity(x);
        CosimplicialObject {
            cat: cat.clone(),
            levels: vec![x.clone(); s_max + 1],
            cofaces: (0..=s_max).map(|n| vec![id.clone(); if n == 0 { 0 } else { n + 1 }]).collect(),
            codegeneracies: (0..=s_max).map(|n| vec![id.clone(); if n == s_max { 0 } else { n + 1 }]).collect(),
        }
    }

    pub fn elementary(&self, e: &OrdinalMap) -> &C::Mor {
        if e.source() < e.target() {
            let i = crate::delta::epi_mono_factor(e).faces[0];
            &self.cofaces[e.target()][i]
        } else {
            let j = crate::delta::epi_mono_factor(e).degeneracies[0];
            &self.codegeneracies[e.target()][j]
        }
    }

    /// `Y(theta): Y^n -> Y^m` for `theta: [n] -> [m]`, via the normal form.
    pub fn apply(&self, theta: &OrdinalMap) -> Result<C::Mor, SimplicialError> {
        if theta.source() > self.s_max() || theta.target() > self.s_max() {
            return Err(SimplicialError::OutOfRange(theta.to_string()));
        }
        let mut acc = self.cat.identity(&self.levels[theta.source()]);
        for e in theta.elementary_chain() {
            if e.source().max(e.target()) > self.s_max() {
                return Err(SimplicialError::OutOfRange(theta.to_string()));
            }
            acc = self.cat.then(&acc, self.elementary(&e))?;
        }
        Ok(acc)
    }

    /// Checks every cosimplicial identity between elementary operators.
    pub fn check_identities(&self) -> Result<(), IdentityViolation> {
        for n in 0..=self.s_max() {
            let want_d = if n == 0 { 0 } else { n + 1 };
            let want_s = if n == self.s_max() { 0 } else { n + 1 };
            if self.cofaces[n].len() != want_d || self.codegeneracies[n].len() != want_s {
                return Err(IdentityViolation { first: "shape".into(), second: "shape".into(), level: n });
            }
        }
        for (a, b) in elementary_pairs(self.s_max()) {
            let lhs = self.cat.then(self.elementary(&a), self.elementary(&b));
            let rhs = compose(&a, &b).ok().and_then(|c| self.apply(&c).ok());
            let ok = match (lhs, rhs) {
                (Ok(l), Some(r)) => self.cat.mor_eq(&l, &r),
                _ => false,
            };
            if !ok {
                return Err(IdentityViolation { first: op_name(&a), second: op_name(&b), level: a.source() });
            }
        }
        Ok(())
    }

    pub fn truncate(&self, s_max: usize) -> CosimplicialObject<C> {
        assert!(s_max <= self.s_max());
        let mut out = CosimplicialObject {
            cat: self.cat.clone(),
            levels: self.levels[..=s_max].to_vec(),
            cofaces: self.cofaces[..=s_max].to_vec(),
            codegeneracies: self.codegeneracies[..=s_max].to_vec(),
        };
        out.codegeneracies[s_max].clear();
        out
    }

    /// Level-wise image under a functor given by its action on objects and maps.
    pub fn map_functor<D: ConcreteCategory>(
        &self,
        target: &D,
        on_obj: impl Fn(&C::Obj) -> D::Obj,
        on_mor: impl Fn(&C::Mor) -> D::Mor,
    ) -> CosimplicialObject<D> {
        CosimplicialObject {
            cat: target.clone(),
            levels: self.levels.iter().map(&on_obj).collect(),
            cofaces: self.cofaces.iter().map(|v| v.iter().map(&on_mor).collect()).collect(),
            codegeneracies: self.codegeneracies.iter().map(|v| v.iter().map(&on_mor).collect()).collect(),
        }
    }
}

impl<C: ConcreteCategory> SimplicialObject<C> {
    pub fn n_max(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn constant(cat: &C, x: &C::Obj, n_max: usize) -> SimplicialObject<C> {
        let id = cat.identity(x);
        SimplicialObject {
            cat: cat.clone(),
            levels: vec![x.clone(); n_max + 1],
            faces: (0..=n_max).map(|n| vec![id.clone(); if n == 0 { 0 } else { n + 1 }]).collect(),
            degeneracies: (0..=n_max).map(|n| vec![id.clone(); if n == n_max { 0 } else { n + 1 }]).collect(),
        }
    }

    /// The structure map of an elementary operator (contravariant).
    pub fn elementary(&self, e: &OrdinalMap) -> &C::Mor {
        if e.source() < e.target() {
            let i = crate::delta::epi_mono_factor(e).faces[0];
            &self.faces[e.target()][i]
        } else {
            let j = crate::delta::epi_mono_factor(e).degeneracies[0];
            &self.degeneracies[e.target()][j]
        }
    }

    /// `X(theta): X_m -> X_n` for `theta: [n] -> [m]`.
    pub fn apply(&self, theta: &OrdinalMap) -> Result<C::Mor, SimplicialError> {
        if theta.source() > self.n_max() || theta.target() > self.n_max() {
            return Err(SimplicialError::OutOfRange(theta.to_string()));
        }
        let chain = theta.elementary_chain();
        let mut acc = self.cat.identity(&self.levels[theta.target()]);
        for e in chain.iter().rev() {
            if e.source().max(e.target()) > self.n_max() {
                return Err(SimplicialError::OutOfRange(theta.to_string()));
            }
            acc = self.cat.then(&acc, self.elementary(e))?;
        }
        Ok(acc)
    }

    pub fn check_identities(&self) -> Result<(), IdentityViolation> {
        for n in 0..=self.n_max() {
            let want_d = if n == 0 { 0 } else { n + 1 };
            let want_s = if n == self.n_max() { 0 } else { n + 1 };
            if self.faces[n].len() != want_d || self.degeneracies[n].len() != want_s {
                return Err(IdentityViolation { first: "shape".into(), second: "shape".into(), level: n });
            }
        }
        for (a, b) in elementary_pairs(self.n_max()) {
            // X(b . a) = X(a) . X(b)
            let lhs = self.cat.then(self.elementary(&b), self.elementary(&a));
            let rhs = compose(&a, &b).ok().and_then(|c| self.apply(&c).ok());
            let ok = match (lhs, rhs) {
                (Ok(l), Some(r)) => self.cat.mor_eq(&l, &r),
                _ => false,
            };
            if !ok {
                return Err(IdentityViolation { first: op_name(&a), second: op_name(&b), level: a.source() });
            }
        }
        Ok(())
    }

    pub fn truncate(&self, n_max: usize) -> SimplicialObject<C> {
        assert!(n_max <= self.n_max());
        let mut out = SimplicialObject {
            cat: self.cat.clone(),
            levels: self.levels[..=n_max].to_vec(),
            faces: self.faces[..=n_max].to_vec(),
            degeneracies: self.degeneracies[..=n_max].to_vec(),
        };
        out.degeneracies[n_max].clear();
        out
    }

    pub fn map_functor<D: ConcreteCategory>(
        &self,
        target: &D,
        on_obj: impl Fn(&C::Obj) -> D::Obj,
        on_mor: impl Fn(&C::Mor) -> D::Mor,
    ) -> SimplicialObject<D> {
        SimplicialObject {
            cat: target.clone(),
            levels: self.levels.iter().map(&on_obj).collect(),
            faces: self.faces.iter().map(|v| v.iter().map(&on_mor).collect()).collect(),
            degeneracies: self.degeneracies.iter().map(|v| v.iter().map(&on_mor).collect()).collect(),
        }
    }
}

impl<C: ConcreteCategory> LevelMap<C> {
    /// Whether the components commute with all cofaces and codegeneracies.
    pub fn is_cosimplicial_map(&self, src: &CosimplicialObject<C>, tgt: &CosimplicialObject<C>) -> bool {
        let c = &src.cat;
        if self.components.len() != src.levels.len() || src.levels.len() != tgt.levels.len() {
            return false;
        }
        for n in 0..=src.s_max() {
            for (i, d) in src.cofaces[n].iter().enumerate() {
                let l = c.then(d, &self.components[n]);
                let r = c.then(&self.components[n - 1], &tgt.cofaces[n][i]);
                if !matches!((l, r), (Ok(l), Ok(r)) if c.mor_eq(&l, &r)) {
                    return false;
                }
            }
            for (i, s) in src.codegeneracies[n].iter().enumerate() {
                let l = c.then(s, &self.components[n]);
                let r = c.then(&self.components[n + 1], &tgt.codegeneracies[n][i]);
                if !matches!((l, r), (Ok(l), Ok(r)) if c.mor_eq(&l, &r)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_simplicial_map(&self, src: &SimplicialObject<C>, tgt: &SimplicialObject<C>) -> bool {
        let c = &src.cat;
        if self.components.len() != src.levels.len() || src.levels.len() != tgt.levels.len() {
            return false;
        }
        for n in 0..=src.n_max() {
            for (i, d) in src.faces[n].iter().enumerate() {
                let l = c.then(d, &self.components[n - 1]);
                let r = c.then(&self.components[n], &tgt.faces[n][i]);
                if !matches!((l, r), (Ok(l), Ok(r)) if c.mor_eq(&l, &r)) {
                    return false;
                }
            }
            for (i, s) in src.degeneracies[n].iter().enumerate() {
                let l = c.then(s, &self.components[n + 1]);
                let r = c.then(&self.components[n], &tgt.degeneracies[n][i]);
                if !matches!((l, r), (Ok(l), Ok(r)) if c.mor_eq(&l, &r)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn then(&self, cat: &C, g: &LevelMap<C>) -> Result<LevelMap<C>, SimplicialError> {
        let components = self
            .components
            .iter()
            .zip(g.components.iter())
            .map(|(a, b)| cat.then(a, b))
            .collect::<Result<_, _>>()?;
        Ok(LevelMap { components })
    }
}

/// `(X (x) K)_n`: one copy of `X_n` per `n`-simplex of `K`.
pub fn tensor_with<C: ConcreteCategory>(x: &SimplicialObject<C>, k: &FiniteSimplicialSet) -> Result<SimplicialObject<C>, SimplicialError> {
    let c = &x.cat;
    let n_max = x.n_max();
    let simplices: Vec<_> = (0..=n_max).map(|n| k.simplices(n)).collect();
    let mut levels = Vec::new();
    let mut injections = Vec::new();
    for n in 0..=n_max {
        let (obj, inj) = c.coproduct(&vec![x.levels[n].clone(); simplices[n].len()])?;
        levels.push(obj);
        injections.push(inj);
    }
    let index_of = |n: usize, s: &crate::delta::Simplex| simplices[n].iter().position(|t| t == s).expect("simplex listed");
    let mut faces = vec![Vec::new()];
    let mut degeneracies = Vec::new();
    for n in 0..=n_max {
        if n >= 1 {
            let mut row = Vec::new();
            for i in 0..=n {
                let comps = simplices[n]
                    .iter()
                    .map(|s| c.then(&x.faces[n][i], &injections[n - 1][index_of(n - 1, &k.face(s, i))]))
                    .collect::<Result<Vec<_>, _>>()?;
                row.push(c.cotuple(&levels[n - 1], &comps)?);
            }
            faces.push(row);
        }
        let mut row = Vec::new();
        if n < n_max {
            for j in 0..=n {
                let comps = simplices[n]
                    .iter()
                    .map(|s| c.then(&x.degeneracies[n][j], &injections[n + 1][index_of(n + 1, &k.degeneracy(s, j))]))
                    .collect::<Result<Vec<_>, _>>()?;
                row.push(c.cotuple(&levels[n + 1], &comps)?);
            }
        }
        degeneracies.push(row);
    }
    Ok(SimplicialObject { cat: c.clone(), levels, faces, degeneracies })
}

/// `(Y^K)^n`: one factor of `Y^n` per `n`-simplex of `K`.
pub fn power_by<C: ConcreteCategory>(y: &CosimplicialObject<C>, k: &FiniteSimplicialSet) -> Result<CosimplicialObject<C>, SimplicialError> {
    let c = &y.cat;
    let s_max = y.s_max();
    let simplices: Vec<_> = (0..=s_max).map(|n| k.simplices(n)).collect();
    let mut levels = Vec::new();
    let mut projections = Vec::new();
    for n in 0..=s_max {
        let (obj, proj) = c.product(&vec![y.levels[n].clone(); simplices[n].len()])?;
        levels.push(obj);
        projections.push(proj);
    }
    let index_of = |n: usize, s: &crate::delta::Simplex| simplices[n].iter().position(|t| t == s).expect("simplex listed");
    let mut cofaces = vec![Vec::new()];
    let mut codegeneracies = Vec::new();
    for n in 0..=s_max {
        if n >= 1 {
            let mut row = Vec::new();
            for i in 0..=n {
                let comps = simplices[n]
                    .iter()
                    .map(|s| c.then(&projections[n - 1][index_of(n - 1, &k.face(s, i))], &y.cofaces[n][i]))
                    .collect::<Result<Vec<_>, _>>()?;
                row.push(c.tuple(&levels[n - 1], &comps)?);
            }
            cofaces.push(row);
        }
        let mut row = Vec::new();
        if n < s_max {
            for j in 0..=n {
                let comps = simplices[n]
                    .iter()
                    .map(|s| c.then(&projections[n + 1][index_of(n + 1, &k.degeneracy(s, j))], &y.codegeneracies[n][j]))
                    .collect::<Result<Vec<_>, _>>()?;
                row.push(c.tuple(&levels[n + 1], &comps)?);
            }
        }
        codegeneracies.push(row);
    }
    Ok(CosimplicialObject { cat: c.clone(), levels, cofaces, codegeneracies })
}

fn simplex_operator_matrix(
    field: &crate::linalg::Field,
    k: &FiniteSimplicialSet,
    simplices: &[Vec<crate::delta::Simplex>],
    theta: &OrdinalMap,
) -> crate::linalg::Matrix {
    // the matrix of K(theta): F[K_m] -> F[K_n] for theta: [n] -> [m]
    let (n, m) = (theta.source(), theta.target());
    let cols = simplices[m]
        .iter()
        .map(|x| {
            let y = k.act(theta, x);
            vec![(simplices[n].iter().position(|s| *s == y).expect("simplex listed"), field.one())]
        })
        .collect();
    crate::linalg::Matrix::from_sparse_cols(field, simplices[n].len(), simplices[m].len(), cols)
}

/// The free simplicial module `F[K]` on a finite simplicial set.
pub fn chains_on(field: &crate::linalg::Field, k: &FiniteSimplicialSet, n_max: usize) -> SimplicialObject<super::VectCat> {
    let simplices: Vec<_> = (0..=n_max).map(|n| k.simplices(n)).collect();
    let op = |t: &OrdinalMap| simplex_operator_matrix(field, k, &simplices, t);
    SimplicialObject {
        cat: super::VectCat::new(field.clone()),
        levels: simplices.iter().map(|s| s.len()).collect(),
        faces: (0..=n_max).map(|n| if n == 0 { vec![] } else { (0..=n).map(|i| op(&OrdinalMap::face(n, i))).collect() }).collect(),
        degeneracies: (0..=n_max).map(|n| if n == n_max { vec![] } else { (0..=n).map(|j| op(&OrdinalMap::degeneracy(n, j))).collect() }).collect(),
    }
}

/// The cosimplicial module of cochains `F^{K_n}`, dual to [`chains_on`].
pub fn cochains_on(field: &crate::linalg::Field, k: &FiniteSimplicialSet, s_max: usize) -> CosimplicialObject<super::VectCat> {
    let simplices: Vec<_> = (0..=s_max).map(|n| k.simplices(n)).collect();
    let op = |t: &OrdinalMap| simplex_operator_matrix(field, k, &simplices, t).transpose();
    CosimplicialObject {
        cat: super::VectCat::new(field.clone()),
        levels: simplices.iter().map(|s| s.len()).collect(),
        cofaces: (0..=s_max).map(|n| if n == 0 { vec![] } else { (0..=n).map(|i| op(&OrdinalMap::face(n, i))).collect() }).collect(),
        codegeneracies: (0..=s_max).map(|n| if n == s_max { vec![] } else { (0..=n).map(|j| op(&OrdinalMap::degeneracy(n, j))).collect() }).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;
    use crate::simplicial::VectCat;

    #[test]
    fn generated_objects_satisfy_identities() {
        let f = Field::f2();
        for k in [FiniteSimplicialSet::standard(2, 4), FiniteSimplicialSet::boundary(2), FiniteSimplicialSet::horn(2, 1)] {
            chains_on(&f, &k, 4).check_identities().unwrap();
            cochains_on(&f, &k, 4).check_identities().unwrap();
        }
        let c = VectCat::new(f);
        CosimplicialObject::constant(&c, &2, 4).check_identities().unwrap();
        SimplicialObject::constant(&c, &2, 4).check_identities().unwrap();
    }

    #[test]
    fn checker_rejects_corruption() {
        let f = Field::f2();
        let mut y = cochains_on(&f, &FiniteSimplicialSet::standard(1, 3), 3);
        let (r, c) = y.cofaces[2][1].shape();
        y.cofaces[2][1] = crate::linalg::Matrix::zeros(&f, r, c);
        assert!(y.check_identities().is_err());
        let mut x = chains_on(&f, &FiniteSimplicialSet::standard(1, 3), 3);
        x.degeneracies[1].swap(0, 1);
        assert!(x.check_identities().is_err());
    }

    #[test]
    fn tensor_and_power_counts() {
        let f = Field::f2();
        let x = chains_on(&f, &FiniteSimplicialSet::boundary(2), 3);
        let interval = FiniteSimplicialSet::standard(1, 3);
        let t = tensor_with(&x, &interval).unwrap();
        t.check_identities().unwrap();
        for n in 0..=3 {
            assert_eq!(t.levels[n], x.levels[n] * (n + 2));
        }
        let y = cochains_on(&f, &FiniteSimplicialSet::boundary(2), 3);
        let p = power_by(&y, &interval).unwrap();
        p.check_identities().unwrap();
        for n in 0..=3 {
            assert_eq!(p.levels[n], y.levels[n] * (n + 2));
        }
        let point = FiniteSimplicialSet::standard(0, 3);
        let same = power_by(&y, &point).unwrap();
        for n in 0..=3 {
            assert_eq!(same.levels[n], y.levels[n]);
            for (a, b) in same.cofaces[n].iter().zip(y.cofaces[n].iter()) {
                assert_eq!(a, b);
            }
        }
        // FinSet-valued tensor needs only coproducts
        let fs = SimplicialObject::constant(&crate::simplicial::FinSetCat, &3, 2);
        assert!(tensor_with(&fs, &interval).unwrap().check_identities().is_ok());
    }
}
