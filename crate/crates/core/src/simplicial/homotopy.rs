//! Homotopies between maps of (co)simplicial objects, given by explicit
//! components indexed by the simplices of `Delta[1]`.
//!
//! `components[n][a]` is the component at the `a`-th monotone map
//! `[n] -> [1]` in lexicographic order. The constant map at 0 carries `f`,
//! the constant map at 1 carries `g`.

use serde::{Deserialize, Serialize};

use crate::delta::{compose, edgewise_map, edgewise_object, h_structure_map, u_component, OrdinalMap, SubdivisionSpec};

use super::category::ConcreteCategory;
use super::objects::{CosimplicialObject, LevelMap, SimplicialObject};
use super::SimplicialError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Simplicial,
    Cosimplicial,
}

#[derive(Clone, Debug)]
pub struct HomotopyWitness<C: ConcreteCategory> {
    pub direction: Direction,
    pub components: Vec<Vec<C::Mor>>,
}

fn interval_index(n: usize) -> impl Fn(&OrdinalMap) -> usize {
    let all = OrdinalMap::all(n, 1);
    move |a: &OrdinalMap| all.iter().position(|b| b == a).expect("a map into [1]")
}

impl<C: ConcreteCategory> HomotopyWitness<C> {
    /// The homotopy from `f` to itself.
    pub fn constant(direction: Direction, f: &LevelMap<C>) -> HomotopyWitness<C> {
        let components = f
            .components
            .iter()
            .enumerate()
            .map(|(n, c)| vec![c.clone(); n + 2])
            .collect();
        HomotopyWitness { direction, components }
    }

    /// Image under a functor given by its action on morphisms.
    pub fn map_functor<D: ConcreteCategory>(&self, on_mor: impl Fn(&C::Mor) -> D::Mor) -> HomotopyWitness<D> {
        HomotopyWitness {
            direction: self.direction,
            components: self.components.iter().map(|v| v.iter().map(&on_mor).collect()).collect(),
        }
    }

    /// The end-point map at vertex 0 or 1.
    pub fn endpoint(&self, vertex: usize) -> LevelMap<C> {
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(n, v)| v[interval_index(n)(&OrdinalMap::constant(n, 1, vertex))].clone())
            .collect();
        LevelMap { components }
    }

    fn check_shape(&self, levels: usize, direction: Direction) -> Result<(), SimplicialError> {
        if self.direction != direction {
            return Err(SimplicialError::Shape("witness direction does not match the objects".into()));
        }
        if self.components.len() != levels {
            return Err(SimplicialError::Shape(format!("witness has {} levels, expected {levels}", self.components.len())));
        }
        for (n, v) in self.components.iter().enumerate() {
            if v.len() != n + 2 {
                return Err(SimplicialError::Shape(format!("level {n} needs {} components, found {}", n + 2, v.len())));
            }
        }
        Ok(())
    }
}

fn eq_then<C: ConcreteCategory>(c: &C, a: &C::Mor, b: &C::Mor, x: &C::Mor, y: &C::Mor) -> bool {
    match (c.then(a, b), c.then(x, y)) {
        (Ok(l), Ok(r)) => c.mor_eq(&l, &r),
        _ => false,
    }
}

/// Whether `h` is a homotopy from `f` to `g` between cosimplicial maps `x -> y`.
pub fn check_cosimplicial_homotopy<C: ConcreteCategory>(
    x: &CosimplicialObject<C>,
    y: &CosimplicialObject<C>,
    f: &LevelMap<C>,
    g: &LevelMap<C>,
    h: &HomotopyWitness<C>,
) -> Result<bool, SimplicialError> {
    let levels = x.levels.len();
    if y.levels.len() != levels || f.components.len() != levels || g.components.len() != levels {
        return Err(SimplicialError::Shape("maps and objects have different truncations".into()));
    }
    h.check_shape(levels, Direction::Cosimplicial)?;
    let c = &x.cat;
    for n in 0..levels {
        let idx = interval_index(n);
        let zero = &h.components[n][idx(&OrdinalMap::constant(n, 1, 0))];
        let one = &h.components[n][idx(&OrdinalMap::constant(n, 1, 1))];
        if !c.mor_eq(zero, &f.components[n]) || !c.mor_eq(one, &g.components[n]) {
            return Ok(false);
        }
        for (a, alpha) in OrdinalMap::all(n, 1).iter().enumerate() {
            if n >= 1 {
                let prev = interval_index(n - 1);
                for i in 0..=n {
                    let restricted = compose(&OrdinalMap::face(n, i), alpha).expect("composable");
                    let lower = &h.components[n - 1][prev(&restricted)];
                    if !eq_then(c, &x.cofaces[n][i], &h.components[n][a], lower, &y.cofaces[n][i]) {
                        return Ok(false);
                    }
                }
            }
            if n + 1 < levels {
                let next = interval_index(n + 1);
                for j in 0..=n {
                    let extended = compose(&OrdinalMap::degeneracy(n, j), alpha).expect("composable");
                    let upper = &h.components[n + 1][next(&extended)];
                    if !eq_then(c, &x.codegeneracies[n][j], &h.components[n][a], upper, &y.codegeneracies[n][j]) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Whether `h` is a homotopy from `f` to `g` between simplicial maps `x -> y`.
pub fn check_simplicial_homotopy<C: ConcreteCategory>(
    x: &SimplicialObject<C>,
    y: &SimplicialObject<C>,
    f: &LevelMap<C>,
    g: &LevelMap<C>,
    h: &HomotopyWitness<C>,
) -> Result<bool, SimplicialError> {
    let levels = x.levels.len();
    if y.levels.len() != levels || f.components.len() != levels || g.components.len() != levels {
        return Err(SimplicialError::Shape("maps and objects have different truncations".into()));
    }
    h.check_shape(levels, Direction::Simplicial)?;
    let c = &x.cat;
    for n in 0..levels {
        let idx = interval_index(n);
        let zero = &h.components[n][idx(&OrdinalMap::constant(n, 1, 0))];
        let one = &h.components[n][idx(&OrdinalMap::constant(n, 1, 1))];
        if !c.mor_eq(zero, &f.components[n]) || !c.mor_eq(one, &g.components[n]) {
            return Ok(false);
        }
        for (a, alpha) in OrdinalMap::all(n, 1).iter().enumerate() {
            if n >= 1 {
                let prev = interval_index(n - 1);
                for i in 0..=n {
                    let restricted = compose(&OrdinalMap::face(n, i), alpha).expect("composable");
                    let lower = &h.components[n - 1][prev(&restricted)];
                    if !eq_then(c, &x.faces[n][i], lower, &h.components[n][a], &y.faces[n][i]) {
                        return Ok(false);
                    }
                }
            }
            if n + 1 < levels {
                let next = interval_index(n + 1);
                for j in 0..=n {
                    let extended = compose(&OrdinalMap::degeneracy(n, j), alpha).expect("composable");
                    let upper = &h.components[n + 1][next(&extended)];
                    if !eq_then(c, &x.degeneracies[n][j], upper, &h.components[n][a], &y.degeneracies[n][j]) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

fn edgewise_levels(k: usize, s_max: usize) -> usize {
    (0..=s_max).take_while(|&n| edgewise_object(k, n) <= s_max).count()
}

/// `F_k^* Y`: level `n` is `Y` at `k(n+1) - 1`, as far as `y` reaches.
pub fn edgewise_pullback<C: ConcreteCategory>(y: &CosimplicialObject<C>, k: usize) -> Result<CosimplicialObject<C>, SimplicialError> {
    let levels = edgewise_levels(k, y.s_max());
    if levels == 0 {
        return Err(SimplicialError::Shape(format!("truncation {} too small for {k}-fold subdivision", y.s_max())));
    }
    let top = levels - 1;
    let mut out = CosimplicialObject {
        cat: y.cat.clone(),
        levels: Vec::new(),
        cofaces: Vec::new(),
        codegeneracies: Vec::new(),
    };
    for n in 0..levels {
        out.levels.push(y.levels[edgewise_object(k, n)].clone());
        let d = if n == 0 { Vec::new() } else { (0..=n).map(|i| y.apply(&edgewise_map(k, &OrdinalMap::face(n, i)))).collect::<Result<_, _>>()? };
        out.cofaces.push(d);
        let s = if n == top { Vec::new() } else { (0..=n).map(|j| y.apply(&edgewise_map(k, &OrdinalMap::degeneracy(n, j)))).collect::<Result<_, _>>()? };
        out.codegeneracies.push(s);
    }
    Ok(out)
}

/// The cosimplicial map `Y -> F_k^* Y` induced by the copy inclusions `u_k^l`.
pub fn u_pullback<C: ConcreteCategory>(y: &CosimplicialObject<C>, spec: SubdivisionSpec) -> Result<LevelMap<C>, SimplicialError> {
    let levels = edgewise_levels(spec.k(), y.s_max());
    let components = (0..levels).map(|n| y.apply(&u_component(spec, n + 1))).collect::<Result<_, _>>()?;
    Ok(LevelMap { components })
}

/// Homotopy from `u_k^l` to `u_k^{l'}` (as maps `Y -> F_k^* Y`) built from the
/// structure maps of the patterns that send vertex 0 of `Delta[1]` to copy `l`
/// and vertex 1 to copy `l'`. Requires `l <= l'`.
pub fn edgewise_homotopy<C: ConcreteCategory>(
    y: &CosimplicialObject<C>,
    k: usize,
    l: usize,
    l2: usize,
) -> Result<HomotopyWitness<C>, SimplicialError> {
    SubdivisionSpec::new(k, l).map_err(|e| SimplicialError::Shape(e.to_string()))?;
    SubdivisionSpec::new(k, l2).map_err(|e| SimplicialError::Shape(e.to_string()))?;
    if l > l2 {
        return Err(SimplicialError::Shape(format!("copy {l} must not exceed copy {l2}")));
    }
    let levels = edgewise_levels(k, y.s_max());
    let mut components = Vec::with_capacity(levels);
    for n in 0..levels {
        let mut row = Vec::with_capacity(n + 2);
        for alpha in OrdinalMap::all(n, 1) {
            let pattern: Vec<usize> = alpha.values().iter().map(|&v| if v == 0 { l - 1 } else { l2 - 1 }).collect();
            let pattern = OrdinalMap::new(n, k - 1, pattern).expect("monotone since l <= l'");
            let psi = h_structure_map(k, &pattern).expect("pattern lands in [k-1]");
            row.push(y.apply(&psi)?);
        }
        components.push(row);
    }
    Ok(HomotopyWitness { direction: Direction::Cosimplicial, components })
}
