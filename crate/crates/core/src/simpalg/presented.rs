//! Fixture formats: algebras given by tables, and free simplicial algebras
//! given by generators with face polynomials.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::delta::{compose, OrdinalMap};
use crate::linalg::{Field, Matrix, Scalar, SparseVec};

use super::free::monomial_map;
use super::level::{AlgebraLevel, MonomialBasis, Overflow, Product};
use super::object::SimplicialAlgebra;
use super::SimpAlgError;

/// One level of a table fixture. `products` lists `(i, j, k, c)`: the
/// coefficient `c` of `e_k` in `e_i e_j`; pairs involving the unit index 0
/// may be omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelFixture {
    pub labels: Vec<String>,
    #[serde(default)]
    pub products: Vec<(usize, usize, usize, i64)>,
    /// Defaults to `e_0`.
    #[serde(default)]
    pub unit: Option<Vec<i64>>,
    /// Defaults to the functional picking the coefficient of `e_0`.
    #[serde(default)]
    pub augmentation: Option<Vec<i64>>,
}

/// A simplicial algebra given by dense matrices; `faces[n][i]` has `dim X_{n-1}` rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFixture {
    pub characteristic: u32,
    pub levels: Vec<LevelFixture>,
    pub faces: Vec<Vec<Vec<Vec<i64>>>>,
    pub degeneracies: Vec<Vec<Vec<Vec<i64>>>>,
}

fn dense(field: &Field, v: &[i64]) -> SparseVec {
    v.iter().enumerate().map(|(i, &x)| (i, field.from_i64(x))).filter(|(_, x)| !x.is_zero()).collect()
}

impl AlgebraFixture {
    pub fn build(&self) -> Result<SimplicialAlgebra, SimpAlgError> {
        let bad = |m: String| SimpAlgError::Invalid(m);
        let field = Field::prime(self.characteristic).map_err(|e| bad(e.to_string()))?;
        let mut levels = Vec::new();
        for (n, l) in self.levels.iter().enumerate() {
            let d = l.labels.len();
            if d == 0 {
                return Err(bad(format!("level {n} is empty")));
            }
            let mut table: Vec<Vec<SparseVec>> = (0..d).map(|i| (0..d).map(|j| if i == 0 { vec![(j, field.one())] } else if j == 0 { vec![(i, field.one())] } else { Vec::new() }).collect()).collect();
            let mut given: HashMap<(usize, usize), Vec<(usize, i64)>> = HashMap::new();
            for &(i, j, k, c) in &l.products {
                if i >= d || j >= d || k >= d {
                    return Err(bad(format!("level {n}: product ({i}, {j}) -> {k} out of range")));
                }
                given.entry((i, j)).or_default().push((k, c));
            }
            for ((i, j), terms) in given {
                let mut v = vec![0i64; d];
                for (k, c) in terms {
                    v[k] += c;
                }
                table[i][j] = dense(&field, &v);
            }
            let vector = |v: &Option<Vec<i64>>, what: &str| -> Result<SparseVec, SimpAlgError> {
                match v {
                    None => Ok(vec![(0, field.one())]),
                    Some(v) if v.len() == d => Ok(dense(&field, v)),
                    Some(_) => Err(bad(format!("level {n}: {what} has the wrong length"))),
                }
            };
            levels.push(AlgebraLevel {
                field: field.clone(),
                labels: l.labels.clone(),
                product: Product::Table(Arc::new(table)),
                unit: vector(&l.unit, "unit")?,
                augmentation: vector(&l.augmentation, "augmentation")?,
            });
        }
        let matrices = |maps: &[Vec<Vec<Vec<i64>>>], shift: fn(usize) -> Option<usize>| -> Result<Vec<Vec<Matrix>>, SimpAlgError> {
            maps.iter()
                .enumerate()
                .map(|(n, row)| {
                    row.iter()
                        .map(|m| {
                            let t = shift(n).filter(|&t| t < levels.len()).ok_or_else(|| bad(format!("structure map out of level {n} leaves the range")))?;
                            Matrix::from_i64(&field, levels[t].dim(), levels[n].dim(), m).map_err(|e| bad(format!("level {n}: {e}")))
                        })
                        .collect()
                })
                .collect()
        };
        let x = SimplicialAlgebra {
            field: field.clone(),
            faces: matrices(&self.faces, |n| n.checked_sub(1))?,
            degeneracies: matrices(&self.degeneracies, |n| Some(n + 1))?,
            levels,
        };
        let n_max = x.n_max();
        let face_shape = x.faces.len() == n_max + 1 && x.faces.iter().enumerate().all(|(n, r)| r.len() == if n == 0 { 0 } else { n + 1 });
        let deg_shape = x.degeneracies.len() == n_max + 1 && x.degeneracies.iter().enumerate().all(|(n, r)| r.len() == if n == n_max { 0 } else { n + 1 });
        if !face_shape || !deg_shape {
            return Err(bad("wrong number of faces or degeneracies".into()));
        }
        Ok(x)
    }
}

/// A generator `name` pulled back along the surjection with the given values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub generator: String,
    /// Values of a surjection `[n] -> [level of generator]`; empty means identity.
    #[serde(default)]
    pub degeneracy: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coefficient: i64,
    pub factors: Vec<Factor>,
}

/// A nondegenerate generator in simplicial degree `level`; `faces[i]` is a
/// polynomial in degree `level - 1` without constant term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub level: usize,
    #[serde(default)]
    pub faces: Vec<Vec<Term>>,
}

/// A free simplicial algebra: level `n` is the polynomial algebra, truncated
/// at `degree`, on all degeneracies of generators of level `<= n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreePresentation {
    pub characteristic: u32,
    pub degree: usize,
    pub n_max: usize,
    pub generators: Vec<GeneratorSpec>,
}

type Poly = Vec<(Scalar, Vec<usize>)>;

struct Levels {
    // (surjection, generator) per level
    gens: Vec<Vec<(OrdinalMap, usize)>>,
    index: Vec<HashMap<(OrdinalMap, usize), usize>>,
}

impl FreePresentation {
    /// The algebra and the products its face maps drop.
    pub fn build(&self) -> Result<(SimplicialAlgebra, Overflow), SimpAlgError> {
        let bad = |m: String| SimpAlgError::Invalid(m);
        let field = Field::prime(self.characteristic).map_err(|e| bad(e.to_string()))?;
        let names: HashMap<&str, usize> = self.generators.iter().enumerate().map(|(i, g)| (g.name.as_str(), i)).collect();
        if names.len() != self.generators.len() {
            return Err(bad("duplicate generator names".into()));
        }
        for g in &self.generators {
            let expected = if g.level == 0 { 0 } else { g.level + 1 };
            if g.faces.len() != expected {
                return Err(bad(format!("generator {} needs {expected} faces", g.name)));
            }
        }
        let mut gens = Vec::new();
        let mut index = Vec::new();
        for n in 0..=self.n_max {
            let mut row = Vec::new();
            for (k, g) in self.generators.iter().enumerate().filter(|(_, g)| g.level <= n) {
                for epi in OrdinalMap::all_surjections(n, g.level) {
                    row.push((epi, k));
                }
            }
            index.push(row.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect());
            gens.push(row);
        }
        let table = Levels { gens, index };
        // face polynomials with generator indices resolved at level - 1
        let mut faces: Vec<Vec<Poly>> = Vec::new();
        for g in &self.generators {
            let mut polys = Vec::new();
            for terms in &g.faces {
                let mut poly = Vec::new();
                for t in terms {
                    let mut factors = Vec::new();
                    for f in &t.factors {
                        let &k = names.get(f.generator.as_str()).ok_or_else(|| bad(format!("unknown generator {}", f.generator)))?;
                        let target = self.generators[k].level;
                        let epi = if f.degeneracy.is_empty() {
                            OrdinalMap::identity(target)
                        } else {
                            OrdinalMap::new(f.degeneracy.len() - 1, target, f.degeneracy.clone()).map_err(|e| bad(e.to_string()))?
                        };
                        if epi.source() + 1 != g.level || !epi.epi_mono().1.is_identity() {
                            return Err(bad(format!("factor {} in a face of {} is not a degeneracy into level {}", f.generator, g.name, g.level - 1)));
                        }
                        factors.push(table.index[g.level - 1][&(epi, k)]);
                    }
                    poly.push((field.from_i64(t.coefficient), factors));
                }
                polys.push(poly);
            }
            faces.push(polys);
        }

        let levels: Vec<AlgebraLevel> = table
            .gens
            .iter()
            .map(|row| {
                let label = |g: u32| {
                    let (epi, k) = &row[g as usize];
                    let name = &self.generators[*k].name;
                    if epi.is_identity() { name.clone() } else { format!("{name}{:?}", epi.values()) }
                };
                AlgebraLevel::polynomial(&field, Arc::new(MonomialBasis::new(row.len(), self.degree)), label)
            })
            .collect();
        for (n, l) in levels.iter().enumerate() {
            if l.dim() > 1 << 16 {
                return Err(SimpAlgError::Capacity { level: n, needed: format!("{} monomials", l.dim()), cap: 1 << 16 });
            }
        }

        let mut overflow = Overflow::default();
        let mut face_maps = vec![Vec::new()];
        for n in 1..=self.n_max {
            let mut row = Vec::new();
            for i in 0..=n {
                let theta = OrdinalMap::face(n, i);
                let images: Vec<Poly> = table.gens[n].iter().map(|(epi, k)| pull_back(&table, &faces, &theta, epi, *k, &field)).collect();
                row.push(polynomial_map(&levels[n], &levels[n - 1], &images, &mut overflow));
            }
            face_maps.push(row);
        }
        let degeneracies = (0..=self.n_max)
            .map(|n| {
                if n == self.n_max {
                    return Vec::new();
                }
                (0..=n)
                    .map(|j| {
                        let sigma = OrdinalMap::degeneracy(n, j);
                        let image: Vec<usize> = table.gens[n]
                            .iter()
                            .map(|(epi, k)| table.index[n + 1][&(compose(&sigma, epi).expect("composable"), *k)])
                            .collect();
                        monomial_map(&levels[n], &levels[n + 1], &image)
                    })
                    .collect()
            })
            .collect();
        let x = SimplicialAlgebra { field, levels, faces: face_maps, degeneracies };
        overflow.absorb(&x.validate()?);
        Ok((x, overflow))
    }
}

/// `theta^*` of the generator `epi^* g_k`, as a polynomial in the generators
/// of the source level of `theta`.
fn pull_back(table: &Levels, faces: &[Vec<Poly>], theta: &OrdinalMap, epi: &OrdinalMap, k: usize, field: &Field) -> Poly {
    let st = compose(theta, epi).expect("composable");
    let (e, mono) = st.epi_mono();
    if mono.is_identity() {
        return vec![(field.one(), vec![table.index[theta.source()][&(e, k)]])];
    }
    let dim = mono.target();
    let i = (0..=dim).rev().find(|v| !mono.values().contains(v)).expect("a proper injection omits a value");
    let rest = OrdinalMap::new(mono.source(), dim - 1, mono.values().iter().map(|&v| if v < i { v } else { v - 1 }).collect()).expect("monotone");
    let op = compose(&e, &rest).expect("composable");
    let mut out = Vec::new();
    for (c, factors) in &faces[k][i] {
        let mut expanded: Poly = vec![(c.clone(), Vec::new())];
        for &f in factors {
            let (fe, fk) = &table.gens[dim - 1][f];
            let image = pull_back(table, faces, &op, fe, *fk, field);
            expanded = expanded
                .iter()
                .flat_map(|(a, m)| image.iter().map(move |(b, n)| (a.mul(b), m.iter().chain(n).copied().collect())))
                .collect();
        }
        out.extend(expanded);
    }
    out
}

/// The algebra map of free algebras sending generator `g` to `images[g]`.
fn polynomial_map(src: &AlgebraLevel, tgt: &AlgebraLevel, images: &[Poly], overflow: &mut Overflow) -> Matrix {
    let sb = src.monomials().expect("free level");
    let tb = tgt.monomials().expect("free level");
    let field = &src.field;
    let evaluate = |p: &Poly, overflow: &mut Overflow| -> SparseVec {
        let mut acc: SparseVec = Vec::new();
        for (c, factors) in p {
            let mut v: SparseVec = vec![(0, c.clone())];
            for &g in factors {
                let (w, o) = tgt.mul(&v, &[(tb.generator(g), field.one())]);
                overflow.absorb(&o);
                v = w;
            }
            acc = add(field, &acc, &v);
        }
        acc
    };
    let gen_images: Vec<SparseVec> = images.iter().map(|p| evaluate(p, overflow)).collect();
    let cols = (0..sb.len())
        .map(|i| {
            let mut v: SparseVec = tgt.unit.clone();
            for &g in sb.monomial(i) {
                let (w, o) = tgt.mul(&v, &gen_images[g as usize]);
                overflow.absorb(&o);
                v = w;
            }
            v
        })
        .collect();
    Matrix::from_sparse_cols(field, tgt.dim(), src.dim(), cols)
}

fn add(field: &Field, a: &[(usize, Scalar)], b: &[(usize, Scalar)]) -> SparseVec {
    let mut acc = std::collections::BTreeMap::new();
    for (j, x) in a.iter().chain(b) {
        let e = acc.entry(*j).or_insert_with(|| field.zero());
        *e = e.add(x);
    }
    acc.into_iter().filter(|(_, x): &(usize, Scalar)| !x.is_zero()).collect()
}
