//! The simplex category of a simplicial set and the comparison of the
//! diagonal's overcategories with simplex categories of products.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::ordinal::{compose, OrdinalMap};
use super::sset::{FiniteSimplicialSet, Simplex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

/// A finite category with an explicit composition table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiniteCategory {
    pub objects: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub identities: Vec<usize>,
    /// `(f, g) -> g . f` for composable `f: a -> b`, `g: b -> c`.
    composition: HashMap<(usize, usize), usize>,
}

impl FiniteCategory {
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.composition.get(&(f, g)).copied()
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    /// Exhaustive associativity and unit check; returns the first violation.
    pub fn check_axioms(&self) -> Result<(), String> {
        for (f, a) in self.arrows.iter().enumerate() {
            let (ida, idb) = (self.identities[a.source], self.identities[a.target]);
            if self.compose(ida, f) != Some(f) || self.compose(f, idb) != Some(f) {
                return Err(format!("unit law fails at arrow {f}"));
            }
        }
        let mut out_of: Vec<Vec<usize>> = vec![Vec::new(); self.objects.len()];
        for (f, a) in self.arrows.iter().enumerate() {
            out_of[a.source].push(f);
        }
        for (f, a) in self.arrows.iter().enumerate() {
            for &g in &out_of[a.target] {
                let fg = self.compose(f, g).ok_or_else(|| format!("missing composite ({f},{g})"))?;
                for &h in &out_of[self.arrows[g].target] {
                    let l = self.compose(fg, h);
                    let r = self.compose(g, h).and_then(|gh| self.compose(f, gh));
                    if l.is_none() || l != r {
                        return Err(format!("associativity fails at ({f},{g},{h})"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Objects are `(n, x)` with `x` an `n`-simplex; arrows are `theta: [n] -> [m]`.
fn simplex_category_parts(
    objects: Vec<(usize, String)>,
    arrow_maps: Vec<(usize, usize, OrdinalMap)>,
) -> FiniteCategory {
    let mut index: HashMap<(usize, usize, OrdinalMap), usize> = HashMap::new();
    let mut arrows = Vec::with_capacity(arrow_maps.len());
    for (i, (s, t, m)) in arrow_maps.iter().enumerate() {
        index.insert((*s, *t, m.clone()), i);
        arrows.push(Arrow { source: *s, target: *t, label: m.to_string() });
    }
    let identities = objects
        .iter()
        .enumerate()
        .map(|(o, (n, _))| index[&(o, o, OrdinalMap::identity(*n))])
        .collect();
    let mut out_of: Vec<Vec<usize>> = vec![Vec::new(); objects.len()];
    for (i, (s, _, _)) in arrow_maps.iter().enumerate() {
        out_of[*s].push(i);
    }
    let mut composition = HashMap::new();
    for (f, (s, t, m)) in arrow_maps.iter().enumerate() {
        for &g in &out_of[*t] {
            let (_, u, m2) = &arrow_maps[g];
            let c = compose(m, m2).expect("composable by construction");
            if let Some(&h) = index.get(&(*s, *u, c)) {
                composition.insert((f, g), h);
            }
        }
    }
    FiniteCategory { objects: objects.into_iter().map(|(_, l)| l).collect(), arrows, identities, composition }
}

fn subdivision_objects(k: &FiniteSimplicialSet, dim_bound: usize) -> Vec<(usize, Simplex)> {
    (0..=dim_bound).flat_map(|n| k.simplices(n).into_iter().map(move |s| (n, s))).collect()
}

fn subdivision_arrows(k: &FiniteSimplicialSet, objs: &[(usize, Simplex)]) -> Vec<(usize, usize, OrdinalMap)> {
    let mut arrows = Vec::new();
    for (a, (n, x)) in objs.iter().enumerate() {
        for (b, (m, y)) in objs.iter().enumerate() {
            for theta in OrdinalMap::all(*n, *m) {
                if k.act(&theta, y) == *x {
                    arrows.push((a, b, theta));
                }
            }
        }
    }
    arrows
}

/// The simplex category of `k`: maps `Delta[n] -> k` for `n <= dim_bound`
/// and the commuting triangles between them.
pub fn delta_subdivision(k: &FiniteSimplicialSet, dim_bound: usize) -> FiniteCategory {
    let objs = subdivision_objects(k, dim_bound);
    let arrows = subdivision_arrows(k, &objs);
    let labels = objs.iter().map(|(n, s)| (*n, format!("{n}:{}#{}", s.epi, s.base))).collect();
    simplex_category_parts(labels, arrows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryIso {
    /// `object_map[i]` is the image of comma-category object `i`.
    pub object_map: Vec<usize>,
    pub arrow_map: Vec<usize>,
    pub objects: usize,
    pub arrows: usize,
}

/// Matches the overcategory of the diagonal `Delta -> Delta x Delta` at
/// `([k1], [k2])` with the simplex category of `Delta[k1] x Delta[k2]`.
pub fn diag_overcategory_bijection(k1: usize, k2: usize, dim_bound: usize) -> Result<CategoryIso, String> {
    // overcategory side: pairs of monotone maps out of [n]
    let mut comma_objs: Vec<(usize, OrdinalMap, OrdinalMap)> = Vec::new();
    for n in 0..=dim_bound {
        for a in OrdinalMap::all(n, k1) {
            for b in OrdinalMap::all(n, k2) {
                comma_objs.push((n, a.clone(), b));
            }
        }
    }
    let mut comma_arrows = Vec::new();
    for (i, (n, a, b)) in comma_objs.iter().enumerate() {
        for (j, (m, a2, b2)) in comma_objs.iter().enumerate() {
            for theta in OrdinalMap::all(*n, *m) {
                if compose(&theta, a2).unwrap() == *a && compose(&theta, b2).unwrap() == *b {
                    comma_arrows.push((i, j, theta));
                }
            }
        }
    }
    let comma = simplex_category_parts(
        comma_objs.iter().map(|(n, a, b)| (*n, format!("{a}|{b}"))).collect(),
        comma_arrows.clone(),
    );
    comma.check_axioms()?;

    // simplex-category side, built from the product simplicial set
    let prod = FiniteSimplicialSet::standard(k1, dim_bound).product(&FiniteSimplicialSet::standard(k2, dim_bound), dim_bound);
    let objs = subdivision_objects(&prod, dim_bound);
    let arrows = subdivision_arrows(&prod, &objs);
    let sub = simplex_category_parts(objs.iter().map(|(n, s)| (*n, format!("{s:?}"))).collect(), arrows.clone());
    sub.check_axioms()?;

    if objs.len() != comma_objs.len() {
        return Err(format!("object counts differ: {} vs {}", comma_objs.len(), objs.len()));
    }
    // a product simplex is determined by its vertex pairs
    let width = k2 + 1;
    let mut by_coords: HashMap<(usize, Vec<usize>, Vec<usize>), usize> = HashMap::new();
    for (idx, (n, s)) in objs.iter().enumerate() {
        let verts = prod.vertices(s);
        let key = (*n, verts.iter().map(|v| v / width).collect(), verts.iter().map(|v| v % width).collect());
        if by_coords.insert(key, idx).is_some() {
            return Err(format!("two product simplices share the vertices of object {idx}"));
        }
    }
    let mut object_map = Vec::with_capacity(comma_objs.len());
    let mut hit = vec![false; objs.len()];
    for (i, (n, a, b)) in comma_objs.iter().enumerate() {
        let key = (*n, a.values().to_vec(), b.values().to_vec());
        let Some(&j) = by_coords.get(&key) else {
            return Err(format!("comma object {i} ({a}, {b}) has no product simplex"));
        };
        if std::mem::replace(&mut hit[j], true) {
            return Err(format!("product simplex {j} hit twice"));
        }
        object_map.push(j);
    }
    let arrow_index: HashMap<(usize, usize, OrdinalMap), usize> =
        arrows.iter().enumerate().map(|(i, (s, t, m))| ((*s, *t, m.clone()), i)).collect();
    if arrows.len() != comma_arrows.len() {
        return Err(format!("arrow counts differ: {} vs {}", comma_arrows.len(), arrows.len()));
    }
    let mut arrow_map = Vec::with_capacity(comma_arrows.len());
    let mut hit = vec![false; arrows.len()];
    for (i, (s, t, m)) in comma_arrows.iter().enumerate() {
        let key = (object_map[*s], object_map[*t], m.clone());
        let Some(&j) = arrow_index.get(&key) else {
            return Err(format!("comma arrow {i} has no image"));
        };
        if std::mem::replace(&mut hit[j], true) {
            return Err(format!("arrow {j} hit twice"));
        }
        arrow_map.push(j);
    }
    for f in 0..comma.arrow_count() {
        for g in 0..comma.arrow_count() {
            if let Some(h) = comma.compose(f, g) {
                if sub.compose(arrow_map[f], arrow_map[g]) != Some(arrow_map[h]) {
                    return Err(format!("composite ({f},{g}) not preserved"));
                }
            }
        }
    }
    Ok(CategoryIso { objects: object_map.len(), arrows: arrow_map.len(), object_map, arrow_map })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_has_one_object() {
        let c = delta_subdivision(&FiniteSimplicialSet::standard(0, 0), 0);
        assert_eq!((c.object_count(), c.arrow_count()), (1, 1));
        c.check_axioms().unwrap();
    }

    #[test]
    fn interval_counts_match_enumeration() {
        let k = FiniteSimplicialSet::standard(1, 1);
        let c = delta_subdivision(&k, 1);
        // maps Delta[n] -> Delta[1] are monotone maps [n] -> [1]
        let objects: usize = (0..=1).map(|n| OrdinalMap::all(n, 1).len()).sum();
        assert_eq!(c.object_count(), objects);
        // arrows are factorizations x = y . theta through monotone maps
        let mut arrows = 0;
        for n in 0..=1 {
            for m in 0..=1 {
                for x in OrdinalMap::all(n, 1) {
                    for y in OrdinalMap::all(m, 1) {
                        arrows += OrdinalMap::all(n, m).iter().filter(|t| compose(t, &y).unwrap() == x).count();
                    }
                }
            }
        }
        assert_eq!(c.arrow_count(), arrows);
        c.check_axioms().unwrap();
    }

    #[test]
    fn small_bijections() {
        for (k1, k2) in [(0, 0), (1, 0), (1, 1)] {
            let w = diag_overcategory_bijection(k1, k2, 2).unwrap();
            assert_eq!(w.object_map.len(), w.objects);
        }
    }
}
