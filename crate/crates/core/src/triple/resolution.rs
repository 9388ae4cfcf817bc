//! The standard resolution of a triple and the mixed resolution of a triple
//! and a cotriple, with their contractions and the homotopies induced by
//! triple maps.
//!
//! With `W_0 = X`, `W_{k+1} = R S W_k`, level `n` of the mixed resolution is
//! `S W_{n+1}` and the augmentation leaves `S W_0`.

use serde::Serialize;

use crate::delta::OrdinalMap;
use crate::simplicial::{check_cosimplicial_homotopy, ConcreteCategory, CosimplicialObject, Direction, HomotopyWitness, LevelMap};

use super::completion::Linearize;
use super::descriptor::{chain, then, verify_triple_map, Cotriple, Mor, Obj, Triple, TripleMap};
use super::TripleError;

/// An augmented cosimplicial object `augmented -> object`.
#[derive(Clone, Debug)]
pub struct MixedResolution<C: ConcreteCategory> {
    pub base: C::Obj,
    pub augmented: C::Obj,
    pub augmentation: C::Mor,
    pub object: CosimplicialObject<C>,
}

impl<C: ConcreteCategory> MixedResolution<C> {
    pub fn s_max(&self) -> usize {
        self.object.s_max()
    }

    /// `d^i`: level `n - 1` to level `n`; at `n = 0` the augmentation.
    pub fn coface(&self, n: usize, i: usize) -> &C::Mor {
        if n == 0 {
            &self.augmentation
        } else {
            &self.object.cofaces[n][i]
        }
    }

    /// Cosimplicial identities and `d^0 aug = d^1 aug`.
    pub fn validate(&self) -> Result<(), TripleError> {
        self.object
            .check_identities()
            .map_err(|v| TripleError::Identity(format!("{} against {} at level {}", v.first, v.second, v.level)))?;
        let c = &self.object.cat;
        if self.s_max() >= 1 {
            let a = then(c, &self.augmentation, &self.object.cofaces[1][0])?;
            let b = then(c, &self.augmentation, &self.object.cofaces[1][1])?;
            if !c.mor_eq(&a, &b) {
                return Err(TripleError::Identity("augmentation is not equalized by d^0, d^1".into()));
            }
        }
        Ok(())
    }

    /// Apply a functor levelwise, including the augmentation.
    pub fn map_functor(
        &self,
        on_obj: impl Fn(&C::Obj) -> Result<C::Obj, TripleError>,
        on_mor: impl Fn(&C::Mor) -> Result<C::Mor, TripleError>,
    ) -> Result<MixedResolution<C>, TripleError> {
        let o = &self.object;
        let map_all = |v: &Vec<Vec<C::Mor>>| v.iter().map(|l| l.iter().map(&on_mor).collect()).collect::<Result<Vec<Vec<_>>, _>>();
        Ok(MixedResolution {
            base: self.base.clone(),
            augmented: on_obj(&self.augmented)?,
            augmentation: on_mor(&self.augmentation)?,
            object: CosimplicialObject {
                cat: o.cat.clone(),
                levels: o.levels.iter().map(&on_obj).collect::<Result<_, _>>()?,
                cofaces: map_all(&o.cofaces)?,
                codegeneracies: map_all(&o.codegeneracies)?,
            },
        })
    }
}

/// Builds the objects `W_k` on demand and the structure maps between them.
pub struct Resolver<'a, S, R: Triple> {
    s: &'a S,
    r: &'a R,
    inner: Vec<Obj<R::Cat>>,
}

impl<'a, S, R> Resolver<'a, S, R>
where
    S: Cotriple,
    R: Triple<Cat = S::Cat>,
{
    pub fn new(s: &'a S, r: &'a R, x: &Obj<R::Cat>) -> Resolver<'a, S, R> {
        Resolver { s, r, inner: vec![x.clone()] }
    }

    fn cat(&self) -> &R::Cat {
        self.r.category()
    }

    /// `W_k = (RS)^k X`.
    pub fn w(&mut self, k: usize) -> Result<Obj<R::Cat>, TripleError> {
        while self.inner.len() <= k {
            let last = self.inner.last().expect("nonempty");
            let next = self.r.apply(&self.s.apply(last)?)?;
            self.inner.push(next);
        }
        Ok(self.inner[k].clone())
    }

    /// `V_k = S W_k`, level `k - 1` of the resolution.
    pub fn v(&mut self, k: usize) -> Result<Obj<R::Cat>, TripleError> {
        let w = self.w(k)?;
        self.s.apply(&w)
    }

    /// `(SR)^i` on a morphism.
    pub fn sr_power(&self, i: usize, m: Mor<R::Cat>) -> Result<Mor<R::Cat>, TripleError> {
        (0..i).try_fold(m, |m, _| self.s.apply_mor(&self.r.apply_mor(&m)?))
    }

    /// `S(unit_{SW}) . comult_W : SW -> SRSW`.
    pub fn coaugment(&self, w: &Obj<R::Cat>) -> Result<Mor<R::Cat>, TripleError> {
        let sw = self.s.apply(w)?;
        self.s.coextend(w, &self.r.unit(&sw)?)
    }

    /// `mult_V . R(counit_{RV}) : RSRV -> RV`.
    pub fn collapse(&self, v: &Obj<R::Cat>) -> Result<Mor<R::Cat>, TripleError> {
        let rv = self.r.apply(v)?;
        chain(self.cat(), &[self.r.apply_mor(&self.s.counit(&rv)?)?, self.r.mult(v)?])
    }

    /// `d^i` from level `n - 1` to level `n`, `i <= n`.
    pub fn coface(&mut self, n: usize, i: usize) -> Result<Mor<R::Cat>, TripleError> {
        let w = self.w(n - i)?;
        self.sr_power(i, self.coaugment(&w)?)
    }

    /// `s^i` from level `n + 1` to level `n`, `i <= n`.
    pub fn codegeneracy(&mut self, n: usize, i: usize) -> Result<Mor<R::Cat>, TripleError> {
        let v = self.v(n - i)?;
        self.sr_power(i, self.s.apply_mor(&self.collapse(&v)?)?)
    }

    pub fn resolution(&mut self, s_max: usize) -> Result<MixedResolution<R::Cat>, TripleError> {
        let levels = (1..=s_max + 1).map(|k| self.v(k)).collect::<Result<Vec<_>, _>>()?;
        let mut cofaces = vec![Vec::new()];
        let mut codegeneracies = Vec::with_capacity(s_max + 1);
        for n in 1..=s_max {
            cofaces.push((0..=n).map(|i| self.coface(n, i)).collect::<Result<Vec<_>, _>>()?);
        }
        for n in 0..=s_max {
            let row = if n == s_max { Vec::new() } else { (0..=n).map(|i| self.codegeneracy(n, i)).collect::<Result<Vec<_>, _>>()? };
            codegeneracies.push(row);
        }
        let res = MixedResolution {
            base: self.inner[0].clone(),
            augmented: self.v(0)?,
            augmentation: self.coface(0, 0)?,
            object: CosimplicialObject { cat: self.cat().clone(), levels, cofaces, codegeneracies },
        };
        res.validate()?;
        Ok(res)
    }

    /// The extra codegeneracies of the resolution of `X = RY`:
    /// `(SR)^{n+1} S(collapse_Y)` from level `n + 1` to level `n`, for `n >= -1`.
    fn right_extra(&mut self, y: &Obj<R::Cat>, s_max: usize) -> Result<Vec<Mor<R::Cat>>, TripleError> {
        let base = self.s.apply_mor(&self.collapse(y)?)?;
        (0..=s_max).map(|k| self.sr_power(k, base.clone())).collect()
    }

    /// The extra codegeneracies `collapse_{V_{n+1}}` of `R` applied to the
    /// resolution, from level `n + 1` to level `n`, for `n >= -1`.
    fn left_extra(&mut self, s_max: usize) -> Result<Vec<Mor<R::Cat>>, TripleError> {
        (0..=s_max).map(|k| self.v(k).and_then(|v| self.collapse(&v))).collect()
    }
}

/// The mixed resolution of `x` for the cotriple `s` and the triple `r`.
pub fn mixed_resolution<S, R>(s: &S, r: &R, x: &Obj<R::Cat>, s_max: usize) -> Result<MixedResolution<R::Cat>, TripleError>
where
    S: Cotriple,
    R: Triple<Cat = S::Cat>,
{
    Resolver::new(s, r, x).resolution(s_max)
}

/// `R^{n+1} X` with `d^i = R^i unit R^{n-i}` and `s^i = R^i mult R^{n-i}`.
pub fn standard_resolution<R: Triple>(r: &R, x: &Obj<R::Cat>, s_max: usize) -> Result<MixedResolution<R::Cat>, TripleError> {
    let mut powers = vec![x.clone()];
    for k in 0..=s_max + 1 {
        let next = r.apply(&powers[k])?;
        powers.push(next);
    }
    let power = |i: usize, m: Mor<R::Cat>| (0..i).try_fold(m, |m, _| r.apply_mor(&m));
    let cofaces = (0..=s_max)
        .map(|n| if n == 0 { Ok(Vec::new()) } else { (0..=n).map(|i| power(i, r.unit(&powers[n - i])?)).collect() })
        .collect::<Result<Vec<_>, TripleError>>()?;
    let codegeneracies = (0..=s_max)
        .map(|n| if n == s_max { Ok(Vec::new()) } else { (0..=n).map(|i| power(i, r.mult(&powers[n - i])?)).collect() })
        .collect::<Result<Vec<_>, TripleError>>()?;
    let res = MixedResolution {
        base: x.clone(),
        augmented: x.clone(),
        augmentation: r.unit(x)?,
        object: CosimplicialObject { cat: r.category().clone(), levels: powers[1..=s_max + 1].to_vec(), cofaces, codegeneracies },
    };
    res.validate()?;
    Ok(res)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    /// Extra codegeneracy after the last one, on the resolution of `RY`.
    Right,
    /// Extra codegeneracy before the first one, on `R` applied to the resolution.
    Left,
}

/// An augmented resolution with extra codegeneracies `extra[n + 1]` from
/// level `n + 1` to level `n`, `n >= -1`.
#[derive(Clone, Debug)]
pub struct Contraction<C: ConcreteCategory> {
    pub side: Side,
    pub resolution: MixedResolution<C>,
    pub extra: Vec<C::Mor>,
}

impl<C: ConcreteCategory> Contraction<C> {
    /// The contraction of the resolution of `RY` towards `SRY`.
    pub fn right<S, R>(s: &S, r: &R, y: &C::Obj, s_max: usize) -> Result<Contraction<C>, TripleError>
    where
        S: Cotriple<Cat = C>,
        R: Triple<Cat = C>,
    {
        let mut resolver = Resolver::new(s, r, &r.apply(y)?);
        let resolution = resolver.resolution(s_max)?;
        let extra = resolver.right_extra(y, s_max)?;
        Ok(Contraction { side: Side::Right, resolution, extra })
    }

    /// The contraction of `R` applied to the resolution of `X` towards `RSX`.
    pub fn left<S, R>(s: &S, r: &R, x: &C::Obj, s_max: usize) -> Result<Contraction<C>, TripleError>
    where
        S: Cotriple<Cat = C>,
        R: Triple<Cat = C>,
    {
        let mut resolver = Resolver::new(s, r, x);
        let resolution = resolver.resolution(s_max)?.map_functor(|o| r.apply(o), |m| r.apply_mor(m))?;
        let extra = resolver.left_extra(s_max)?;
        Ok(Contraction { side: Side::Left, resolution, extra })
    }

    fn cat(&self) -> &C {
        &self.resolution.object.cat
    }

    /// Extra codegeneracy from level `n + 1` to level `n`; `n = -1` is the augmented object.
    fn t(&self, n: i64) -> &C::Mor {
        &self.extra[(n + 1) as usize]
    }

    fn d(&self, n: usize, i: usize) -> &C::Mor {
        self.resolution.coface(n, i)
    }

    fn s(&self, n: usize, j: usize) -> &C::Mor {
        &self.resolution.object.codegeneracies[n][j]
    }

    /// The extra-codegeneracy identities, naming the first that fails.
    pub fn identities(&self) -> Result<(), TripleError> {
        let c = self.cat();
        let s_max = self.resolution.s_max();
        let eq = |name: String, a: Vec<&C::Mor>, b: Vec<&C::Mor>| -> Result<(), TripleError> {
            let lhs = chain(c, &a.into_iter().cloned().collect::<Vec<_>>())?;
            let rhs = chain(c, &b.into_iter().cloned().collect::<Vec<_>>())?;
            if c.mor_eq(&lhs, &rhs) {
                Ok(())
            } else {
                Err(TripleError::Identity(name))
            }
        };
        for n in -1..s_max as i64 {
            let up = (n + 1) as usize;
            let source = if n < 0 { self.resolution.augmented.clone() } else { self.resolution.object.levels[n as usize].clone() };
            let id = c.identity(&source);
            match self.side {
                Side::Right => {
                    eq(format!("t^{n} d^{up} = id"), vec![self.d(up, up), self.t(n)], vec![&id])?;
                    for i in 0..up {
                        eq(format!("t^{n} d^{i} = d^{i} t^{}", n - 1), vec![self.d(up, i), self.t(n)], vec![self.t(n - 1), self.d(up - 1, i)])?;
                    }
                    if up + 1 <= s_max {
                        for j in 0..up {
                            eq(format!("t^{n} s^{j} = s^{j} t^{}", n + 1), vec![self.s(up, j), self.t(n)], vec![self.t(n + 1), self.s(up - 1, j)])?;
                        }
                    }
                }
                Side::Left => {
                    eq(format!("u^{n} d^0 = id"), vec![self.d(up, 0), self.t(n)], vec![&id])?;
                    for i in 0..up {
                        eq(format!("u^{n} d^{} = d^{i} u^{}", i + 1, n - 1), vec![self.d(up, i + 1), self.t(n)], vec![self.t(n - 1), self.d(up - 1, i)])?;
                    }
                    if up + 1 <= s_max {
                        for j in 0..up {
                            eq(format!("u^{n} s^{} = s^{j} u^{}", j + 1, n + 1), vec![self.s(up, j + 1), self.t(n)], vec![self.t(n + 1), self.s(up - 1, j)])?;
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Down by extra codegeneracies from level `n` to level `k - 1`, then up
    /// by `extra_up` cofaces.
    fn through(&self, n: usize, k: usize) -> Result<C::Mor, TripleError> {
        let c = self.cat();
        let mut maps = vec![c.identity(&self.resolution.object.levels[n])];
        for m in (k as i64 - 1..n as i64).rev() {
            maps.push(self.t(m).clone());
        }
        for m in k..=n {
            let i = match self.side {
                Side::Right => m,
                Side::Left => 0,
            };
            maps.push(self.d(m, i).clone());
        }
        chain(c, &maps)
    }

    /// The identity and the map through the augmented object, in the order
    /// the witness connects them.
    pub fn endpoints(&self) -> Result<(LevelMap<C>, LevelMap<C>), TripleError> {
        let w = self.witness()?;
        Ok((w.endpoint(0), w.endpoint(1)))
    }

    /// `H[n][a]` for a map `a: [n] -> [1]` with `k` zeros (right) or `k` ones
    /// (left) passes through level `k - 1`.
    pub fn witness(&self) -> Result<HomotopyWitness<C>, TripleError> {
        let components = (0..=self.resolution.s_max())
            .map(|n| {
                OrdinalMap::all(n, 1)
                    .iter()
                    .map(|a| {
                        let ones = a.values().iter().filter(|&&v| v == 1).count();
                        let k = match self.side {
                            Side::Right => n + 1 - ones,
                            Side::Left => ones,
                        };
                        self.through(n, k)
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(HomotopyWitness { direction: Direction::Cosimplicial, components })
    }

    /// Identities, then the witness as a homotopy between its endpoints.
    pub fn check(&self) -> Result<bool, TripleError> {
        if self.identities().is_err() {
            return Ok(false);
        }
        let w = self.witness()?;
        let o = &self.resolution.object;
        Ok(check_cosimplicial_homotopy(o, o, &w.endpoint(0), &w.endpoint(1), &w)?)
    }
}

/// `W^R_k -> W^T_k` built from the outermost factor inwards by `pick(position)`.
fn horizontal<S, R, T, F>(
    s: &S,
    r: &R,
    targets: &mut Resolver<'_, S, T>,
    pick: impl Fn(usize) -> F,
    n: usize,
    x: &Obj<R::Cat>,
) -> Result<Mor<R::Cat>, TripleError>
where
    S: Cotriple,
    R: Triple<Cat = S::Cat>,
    T: Triple<Cat = S::Cat>,
    F: std::ops::Deref,
    F::Target: TripleMap<Cat = S::Cat>,
{
    let c = r.category();
    let mut m = c.identity(x);
    for k in 0..=n {
        let sw = targets.v(k)?;
        m = then(c, &r.apply_mor(&s.apply_mor(&m)?)?, &pick(n - k).component(&sw)?)?;
    }
    s.apply_mor(&m)
}

fn require_triple_map<S, R, T, F>(s: &S, r: &R, t: &T, f: &F, x: &Obj<R::Cat>, s_max: usize) -> Result<(), TripleError>
where
    S: Cotriple,
    R: Triple<Cat = S::Cat>,
    T: Triple<Cat = S::Cat>,
    F: TripleMap<Cat = S::Cat>,
{
    let mut targets = Resolver::new(s, t, x);
    let fixtures = (0..=s_max + 1).map(|k| targets.v(k)).collect::<Result<Vec<_>, _>>()?;
    let report = verify_triple_map(r, t, f, &fixtures);
    let failure = report.failures().next().map(|c| format!("not a triple map: {} at fixture {}", c.axiom, c.fixture));
    failure.map_or(Ok(()), |e| Err(TripleError::Axiom(e)))
}

/// The cosimplicial map between mixed resolutions induced by a triple map,
/// with the identity on the augmented object as its first entry.
pub fn induced_map<S, R, T, F>(s: &S, r: &R, t: &T, f: &F, x: &Obj<R::Cat>, s_max: usize) -> Result<(Mor<R::Cat>, LevelMap<R::Cat>), TripleError>
where
    S: Cotriple,
    R: Triple<Cat = S::Cat>,
    T: Triple<Cat = S::Cat>,
    F: TripleMap<Cat = S::Cat>,
{
    let mut targets = Resolver::new(s, t, x);
    let components = (0..=s_max).map(|n| horizontal(s, r, &mut targets, |_| f, n, x)).collect::<Result<Vec<_>, _>>()?;
    let sx = s.apply(x)?;
    Ok((r.category().identity(&sx), LevelMap { components }))
}

/// The homotopy between the maps induced by two triple maps `R => T`:
/// `H[n][a]` uses `f` at the positions where `a` is 0 and `g` where it is 1.
pub fn triple_map_homotopy<S, R, T, F, G>(
    s: &S,
    r: &R,
    t: &T,
    f: &F,
    g: &G,
    x: &Obj<R::Cat>,
    s_max: usize,
) -> Result<HomotopyWitness<R::Cat>, TripleError>
where
    S: Cotriple,
    R: Triple<Cat = S::Cat>,
    T: Triple<Cat = S::Cat>,
    F: TripleMap<Cat = S::Cat>,
    G: TripleMap<Cat = S::Cat>,
{
    require_triple_map(s, r, t, f, x, s_max)?;
    require_triple_map(s, r, t, g, x, s_max)?;
    let mut targets = Resolver::new(s, t, x);
    let mut components = Vec::with_capacity(s_max + 1);
    for n in 0..=s_max {
        let row = OrdinalMap::all(n, 1)
            .iter()
            .map(|a| {
                let pick = |p: usize| -> &dyn TripleMap<Cat = S::Cat> {
                    if a.values()[p] == 0 {
                        f
                    } else {
                        g
                    }
                };
                horizontal(s, r, &mut targets, pick, n, x)
            })
            .collect::<Result<Vec<_>, _>>()?;
        components.push(row);
    }
    Ok(HomotopyWitness { direction: Direction::Cosimplicial, components })
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelDump {
    pub level: i64,
    /// Dimensions of the linearization in simplicial degrees `0..=n_max`.
    pub dims: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MapDump {
    pub kind: &'static str,
    pub level: i64,
    pub index: usize,
    /// One matrix per simplicial degree.
    pub matrices: Vec<Vec<Vec<String>>>,
}

/// Linearized levels and structure maps of a resolution.
#[derive(Clone, Debug, Serialize)]
pub struct ResolutionDump {
    pub s_max: usize,
    pub n_max: usize,
    pub levels: Vec<LevelDump>,
    pub maps: Vec<MapDump>,
}

impl ResolutionDump {
    pub fn new<C: Linearize>(res: &MixedResolution<C>, n_max: usize) -> Result<ResolutionDump, TripleError> {
        let c = &res.object.cat;
        let mut levels = vec![LevelDump { level: -1, dims: c.module(&res.augmented, n_max)?.levels }];
        for (n, x) in res.object.levels.iter().enumerate() {
            levels.push(LevelDump { level: n as i64, dims: c.module(x, n_max)?.levels });
        }
        let dump = |kind, level: i64, index, f: &C::Mor| -> Result<MapDump, TripleError> {
            let m = c.module_map(f, n_max)?;
            Ok(MapDump { kind, level, index, matrices: m.components.iter().map(|a| a.to_string_rows()).collect() })
        };
        let mut maps = vec![dump("augmentation", 0, 0, &res.augmentation)?];
        for (n, row) in res.object.cofaces.iter().enumerate() {
            for (i, f) in row.iter().enumerate() {
                maps.push(dump("coface", n as i64, i, f)?);
            }
        }
        for (n, row) in res.object.codegeneracies.iter().enumerate() {
            for (i, f) in row.iter().enumerate() {
                maps.push(dump("codegeneracy", n as i64, i, f)?);
            }
        }
        Ok(ResolutionDump { s_max: res.s_max(), n_max, levels, maps })
    }
}

/// The cosimplicial map `(SR)^{n+1} S f` between the resolutions of the
/// source and target of `f`, with `S f` on the augmented objects.
pub fn resolution_map<S, R>(s: &S, r: &R, f: &Mor<R::Cat>, s_max: usize) -> Result<(Mor<R::Cat>, LevelMap<R::Cat>), TripleError>
where
    S: Cotriple,
    R: Triple<Cat = S::Cat>,
{
    let sf = s.apply_mor(f)?;
    let resolver = Resolver::new(s, r, &r.category().source(f));
    let components = (1..=s_max + 1).map(|k| resolver.sr_power(k, sf.clone())).collect::<Result<Vec<_>, _>>()?;
    Ok((sf, LevelMap { components }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Field, Matrix};
    use crate::simplicial::VectCat;
    use crate::triple::descriptor::{IdentityCotriple, IdentityTriple};
    use crate::triple::modules::{ints, AlgebraMap, CoalgebraCotriple, FiniteAlgebra, FiniteCoalgebra, TensorTriple};

    fn f2() -> Field {
        Field::f2()
    }

    fn id_cotriple(f: &Field) -> IdentityCotriple<VectCat> {
        IdentityCotriple(VectCat::new(f.clone()))
    }

    /// Basis index of a tensor of basis vectors of an algebra of dimension `d`.
    fn index(digits: &[usize], d: usize) -> usize {
        digits.iter().fold(0, |acc, &x| acc * d + x)
    }

    fn digits(mut k: usize, len: usize, d: usize) -> Vec<usize> {
        let mut out = vec![0; len];
        for slot in out.iter_mut().rev() {
            *slot = k % d;
            k /= d;
        }
        out
    }

    /// Cobar cofaces and codegeneracies on `A^{(x) n}` assembled basis vector by basis vector.
    fn cobar_coface(a: &FiniteAlgebra, n: usize, i: usize) -> Matrix {
        let d = a.dim;
        let cols = (0..d.pow(n as u32))
            .map(|k| {
                let mut t = digits(k, n, d);
                let mut col = Vec::new();
                for (b, v) in a.unit.col(0) {
                    t.insert(i, b);
                    col.push((index(&t, d), v));
                    t.remove(i);
                }
                col
            })
            .collect();
        Matrix::from_sparse_cols(&a.field, d.pow(n as u32 + 1), d.pow(n as u32), cols)
    }

    fn cobar_codegeneracy(a: &FiniteAlgebra, n: usize, i: usize) -> Matrix {
        let d = a.dim;
        let cols = (0..d.pow(n as u32 + 2))
            .map(|k| {
                let t = digits(k, n + 2, d);
                a.mult
                    .col(t[i] * d + t[i + 1])
                    .into_iter()
                    .map(|(c, v)| {
                        let mut u = t.clone();
                        u.splice(i..i + 2, [c]);
                        (index(&u, d), v)
                    })
                    .collect()
            })
            .collect();
        Matrix::from_sparse_cols(&a.field, d.pow(n as u32 + 1), d.pow(n as u32 + 2), cols)
    }

    #[test]
    fn identity_triple_gives_a_constant_object() {
        let r = IdentityTriple(VectCat::new(f2()));
        let res = standard_resolution(&r, &3, 3).unwrap();
        assert!(res.object.levels.iter().all(|&l| l == 3));
        assert!(res.object.cofaces.iter().flatten().chain(res.object.codegeneracies.iter().flatten()).all(|m| m.is_identity()));
    }

    #[test]
    fn standard_resolution_is_the_cobar_construction() {
        for a in [FiniteAlgebra::dual_numbers(&f2()), FiniteAlgebra::product_of_fields(&Field::prime(3).unwrap(), 2)] {
            let r = TensorTriple::new(a.clone());
            let res = standard_resolution(&r, &1, 3).unwrap();
            assert_eq!(res.object.levels, vec![2, 4, 8, 16]);
            assert_eq!(res.augmentation, cobar_coface(&a, 0, 0));
            for n in 1..=3 {
                for i in 0..=n {
                    assert_eq!(res.object.cofaces[n][i], cobar_coface(&a, n, i), "d^{i} at {n}");
                }
            }
            for n in 0..3 {
                for i in 0..=n {
                    assert_eq!(res.object.codegeneracies[n][i], cobar_codegeneracy(&a, n, i), "s^{i} at {n}");
                }
            }
        }
    }

    #[test]
    fn identity_cotriple_reduces_to_the_standard_resolution() {
        let f = f2();
        let r = TensorTriple::new(FiniteAlgebra::dual_numbers(&f));
        for x in [1, 2] {
            let mixed = mixed_resolution(&id_cotriple(&f), &r, &x, 3).unwrap();
            let standard = standard_resolution(&r, &x, 3).unwrap();
            assert_eq!(mixed.object.levels, standard.object.levels);
            assert_eq!(mixed.augmentation, standard.augmentation);
            assert_eq!(mixed.object.cofaces, standard.object.cofaces);
            assert_eq!(mixed.object.codegeneracies, standard.object.codegeneracies);
        }
    }

    #[test]
    fn mixed_resolutions_satisfy_the_identities() {
        let f = f2();
        let r = TensorTriple::new(FiniteAlgebra::dual_numbers(&f));
        for c in [FiniteCoalgebra::grouplike(&f, 2), FiniteCoalgebra::dual_numbers(&f)] {
            let s = CoalgebraCotriple::new(c);
            let res = mixed_resolution(&s, &r, &1, 2).unwrap();
            assert_eq!(res.augmented, 2);
            assert_eq!(res.object.levels, vec![8, 32, 128]);
        }
    }

    #[test]
    fn resolutions_are_functorial() {
        let f = f2();
        let s = CoalgebraCotriple::new(FiniteCoalgebra::grouplike(&f, 2));
        let r = TensorTriple::new(FiniteAlgebra::dual_numbers(&f));
        let g = ints(&f, &[vec![1, 1], vec![0, 1], vec![1, 0]]);
        let (src, tgt) = (mixed_resolution(&s, &r, &2, 2).unwrap(), mixed_resolution(&s, &r, &3, 2).unwrap());
        let (aug, map) = resolution_map(&s, &r, &g, 2).unwrap();
        assert!(map.is_cosimplicial_map(&src.object, &tgt.object));
        assert_eq!(map.components[0].mul(&src.augmentation), tgt.augmentation.mul(&aug));
    }

    #[test]
    fn contractions_of_the_cobar_construction() {
        let f = f2();
        let r = TensorTriple::new(FiniteAlgebra::product_of_fields(&f, 2));
        let s = id_cotriple(&f);
        let right = Contraction::right(&s, &r, &1, 3).unwrap();
        right.identities().unwrap();
        assert!(right.check().unwrap());
        let left = Contraction::left(&s, &r, &1, 3).unwrap();
        left.identities().unwrap();
        assert!(left.check().unwrap());
    }

    #[test]
    fn contractions_of_mixed_resolutions() {
        let f = f2();
        let r = TensorTriple::new(FiniteAlgebra::dual_numbers(&f));
        for c in [FiniteCoalgebra::grouplike(&f, 2), FiniteCoalgebra::dual_numbers(&f)] {
            let s = CoalgebraCotriple::new(c);
            let right = Contraction::right(&s, &r, &1, 2).unwrap();
            right.identities().unwrap();
            assert!(right.check().unwrap());
            let left = Contraction::left(&s, &r, &1, 2).unwrap();
            left.identities().unwrap();
            assert!(left.check().unwrap());
        }
    }

    /// `C (x) -` whose counit is replaced by projection onto the first basis vector.
    #[derive(Clone, Debug)]
    struct WrongCounit(CoalgebraCotriple);

    impl Cotriple for WrongCounit {
        type Cat = VectCat;

        fn category(&self) -> &VectCat {
            self.0.category()
        }

        fn apply(&self, x: &usize) -> Result<usize, TripleError> {
            self.0.apply(x)
        }

        fn apply_mor(&self, f: &Matrix) -> Result<Matrix, TripleError> {
            self.0.apply_mor(f)
        }

        fn counit(&self, x: &usize) -> Result<Matrix, TripleError> {
            let c = &self.0.coalgebra;
            let first = Matrix::from_sparse_cols(&c.field, 1, c.dim, (0..c.dim).map(|i| if i == 0 { vec![(0, c.field.one())] } else { Vec::new() }).collect());
            Ok(first.kron(&Matrix::identity(&c.field, *x)))
        }

        fn comult(&self, x: &usize) -> Result<Matrix, TripleError> {
            self.0.comult(x)
        }
    }

    #[test]
    fn contraction_needs_the_counit() {
        let f = f2();
        let r = TensorTriple::new(FiniteAlgebra::dual_numbers(&f));
        let good = CoalgebraCotriple::new(FiniteCoalgebra::grouplike(&f, 2));
        let bad = WrongCounit(good.clone());
        let mut fixed = Resolver::new(&good, &r, &2);
        let correct = fixed.resolution(2).unwrap();
        let mut broken = Resolver::new(&bad, &r, &2);
        let extra = broken.right_extra(&1, 2).unwrap();
        let c = Contraction { side: Side::Right, resolution: correct, extra };
        assert!(matches!(c.identities(), Err(TripleError::Identity(_))));
        assert!(!c.check().unwrap());
    }

    #[test]
    fn triple_maps_induce_homotopic_maps() {
        let f = f2();
        let r = TensorTriple::new(FiniteAlgebra::product_of_fields(&f, 2));
        let t = TensorTriple::new(FiniteAlgebra::product_of_fields(&f, 3));
        let first = AlgebraMap::new(ints(&f, &[vec![1, 0], vec![0, 1], vec![1, 0]]));
        let second = AlgebraMap::new(ints(&f, &[vec![1, 0], vec![0, 1], vec![0, 1]]));
        for s in [CoalgebraCotriple::new(FiniteCoalgebra::grouplike(&f, 1)), CoalgebraCotriple::new(FiniteCoalgebra::grouplike(&f, 2))] {
            let (src, tgt) = (mixed_resolution(&s, &r, &1, 2).unwrap(), mixed_resolution(&s, &t, &1, 2).unwrap());
            let (_, fm) = induced_map(&s, &r, &t, &first, &1, 2).unwrap();
            let (_, gm) = induced_map(&s, &r, &t, &second, &1, 2).unwrap();
            assert!(fm.is_cosimplicial_map(&src.object, &tgt.object));
            assert!(gm.is_cosimplicial_map(&src.object, &tgt.object));
            let h = triple_map_homotopy(&s, &r, &t, &first, &second, &1, 2).unwrap();
            assert!(check_cosimplicial_homotopy(&src.object, &tgt.object, &fm, &gm, &h).unwrap());
        }
        let zero = AlgebraMap::new(Matrix::zeros(&f, 3, 2));
        let refused = triple_map_homotopy(&id_cotriple(&f), &r, &t, &first, &zero, &1, 2);
        assert!(matches!(refused, Err(TripleError::Axiom(_))));
    }

    #[test]
    fn dump_lists_every_structure_map() {
        let f = f2();
        let r = TensorTriple::new(FiniteAlgebra::dual_numbers(&f));
        let res = standard_resolution(&r, &1, 2).unwrap();
        let dump = ResolutionDump::new(&res, 1).unwrap();
        assert_eq!(dump.levels.len(), 4);
        assert_eq!(dump.maps.len(), 1 + 2 + 3 + 1 + 2);
        let json = serde_json::to_string(&dump).unwrap();
        assert!(json.contains("codegeneracy"));
    }
}
