//! Bicosimplicial simplicial modules and the comparison of their diagonal
//! with the total complex of the double conormalization.

use rand::Rng;
use serde::Serialize;

use crate::delta::OrdinalMap;
use crate::linalg::Matrix;
use crate::linear::{common_kernel, SimplicialModule};
use crate::simplicial::{LevelMap, SimplicialObject, VectCat};

use super::bicomplex::{conormalize_bicomplex, total_complex};
use super::cssm::CosimplicialSimplicialModule;
use super::multi::{random_invertible, DoldKan, GeneratorSet, MultiComplex};
use super::SpectralError;

/// `Z^{a,b}_n` for `a, b <= s_max` and `n <= n_max`.
#[derive(Clone, Debug)]
pub struct BicosimplicialModule {
    pub field: crate::linalg::Field,
    pub s_max: usize,
    pub n_max: usize,
    /// `columns[a][b]`.
    pub columns: Vec<Vec<SimplicialModule>>,
    /// `cofaces[dir][a][b][i]`: the coface in direction `dir` into `(a, b)`.
    pub cofaces: [Vec<Vec<Vec<LevelMap<VectCat>>>>; 2],
    /// `codegeneracies[dir][a][b][j]`: out of the next level in direction `dir` into `(a, b)`.
    pub codegeneracies: [Vec<Vec<Vec<LevelMap<VectCat>>>>; 2],
}

/// `g` after `f`, level by level.
fn then(f: &LevelMap<VectCat>, g: &LevelMap<VectCat>) -> LevelMap<VectCat> {
    LevelMap { components: f.components.iter().zip(&g.components).map(|(a, b)| b.mul(a)).collect() }
}

fn bump(a: usize, b: usize, dir: usize, by: isize) -> (usize, usize) {
    if dir == 0 {
        ((a as isize + by) as usize, b)
    } else {
        (a, (b as isize + by) as usize)
    }
}

impl BicosimplicialModule {
    /// Dold-Kan realization of a complex with two cochain directions and one chain direction.
    pub fn from_multicomplex(c: &MultiComplex, s_max: usize, n_max: usize) -> Result<BicosimplicialModule, SpectralError> {
        if c.directions() != 3 {
            return Err(SpectralError::Invalid("expected two cochain directions and one chain direction".into()));
        }
        let dk = DoldKan::new(c);
        let grid = |f: &dyn Fn(usize, usize) -> SimplicialModule| (0..=s_max).map(|a| (0..=s_max).map(|b| f(a, b)).collect()).collect::<Vec<Vec<_>>>();
        let columns = grid(&|a, b| dk.column(&[a, b], n_max));
        let structure = |dir: usize, degenerate: bool| -> Vec<Vec<Vec<LevelMap<VectCat>>>> {
            (0..=s_max)
                .map(|a| {
                    (0..=s_max)
                        .map(|b| {
                            let lvl = if dir == 0 { a } else { b };
                            if !degenerate {
                                if lvl == 0 {
                                    return Vec::new();
                                }
                                let (pa, pb) = bump(a, b, dir, -1);
                                (0..=lvl).map(|i| dk.column_map(dir, &OrdinalMap::face(lvl, i), &[pa, pb], n_max)).collect()
                            } else {
                                if lvl == s_max {
                                    return Vec::new();
                                }
                                let (na, nb) = bump(a, b, dir, 1);
                                (0..=lvl).map(|j| dk.column_map(dir, &OrdinalMap::degeneracy(lvl, j), &[na, nb], n_max)).collect()
                            }
                        })
                        .collect()
                })
                .collect()
        };
        Ok(BicosimplicialModule {
            field: c.field.clone(),
            s_max,
            n_max,
            columns,
            cofaces: [structure(0, false), structure(1, false)],
            codegeneracies: [structure(0, true), structure(1, true)],
        })
    }

    /// Conjugate all structure maps by a random automorphism of each `Z^{a,b}_n`.
    pub fn change_basis(&self, rng: &mut impl Rng) -> BicosimplicialModule {
        let (sm, nm) = (self.s_max, self.n_max);
        let field = &self.field;
        let autos: Vec<Vec<Vec<(Matrix, Matrix)>>> = (0..=sm)
            .map(|a| {
                (0..=sm)
                    .map(|b| {
                        (0..=nm)
                            .map(|n| {
                                let p = random_invertible(field, self.columns[a][b].levels[n], rng);
                                let inv = p.inverse().expect("invertible by construction");
                                (p, inv)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let conj = |m: &Matrix, to: (usize, usize, usize), from: (usize, usize, usize)| autos[to.0][to.1][to.2].0.mul(m).mul(&autos[from.0][from.1][from.2].1);
        let columns = (0..=sm)
            .map(|a| {
                (0..=sm)
                    .map(|b| {
                        let c = &self.columns[a][b];
                        SimplicialObject {
                            cat: c.cat.clone(),
                            levels: c.levels.clone(),
                            faces: c.faces.iter().enumerate().map(|(n, v)| v.iter().map(|m| conj(m, (a, b, n - 1), (a, b, n))).collect()).collect(),
                            degeneracies: c.degeneracies.iter().enumerate().map(|(n, v)| v.iter().map(|m| conj(m, (a, b, n + 1), (a, b, n))).collect()).collect(),
                        }
                    })
                    .collect()
            })
            .collect();
        let maps = |all: &Vec<Vec<Vec<LevelMap<VectCat>>>>, dir: usize, by: isize| -> Vec<Vec<Vec<LevelMap<VectCat>>>> {
            all.iter()
                .enumerate()
                .map(|(a, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(b, v)| {
                            let (sa, sb) = bump(a, b, dir, by);
                            v.iter()
                                .map(|f| LevelMap { components: f.components.iter().enumerate().map(|(n, m)| conj(m, (a, b, n), (sa, sb, n))).collect() })
                                .collect()
                        })
                        .collect()
                })
                .collect()
        };
        BicosimplicialModule {
            field: field.clone(),
            s_max: sm,
            n_max: nm,
            columns,
            cofaces: [maps(&self.cofaces[0], 0, -1), maps(&self.cofaces[1], 1, -1)],
            codegeneracies: [maps(&self.codegeneracies[0], 0, 1), maps(&self.codegeneracies[1], 1, 1)],
        }
    }

    /// The cosimplicial simplicial module with `b` fixed, cosimplicial in `a`.
    pub fn first_direction(&self, b: usize) -> CosimplicialSimplicialModule {
        CosimplicialSimplicialModule {
            field: self.field.clone(),
            columns: (0..=self.s_max).map(|a| self.columns[a][b].clone()).collect(),
            cofaces: (0..=self.s_max).map(|a| self.cofaces[0][a][b].clone()).collect(),
            codegeneracies: (0..=self.s_max).map(|a| self.codegeneracies[0][a][b].clone()).collect(),
        }
    }

    /// The cosimplicial simplicial module with `a` fixed, cosimplicial in `b`.
    pub fn second_direction(&self, a: usize) -> CosimplicialSimplicialModule {
        CosimplicialSimplicialModule {
            field: self.field.clone(),
            columns: self.columns[a].clone(),
            cofaces: self.cofaces[1][a].clone(),
            codegeneracies: self.codegeneracies[1][a].clone(),
        }
    }

    /// Both directions are cosimplicial simplicial modules and their structure maps commute.
    pub fn validate(&self) -> Result<(), SpectralError> {
        for k in 0..=self.s_max {
            self.first_direction(k).validate()?;
            self.second_direction(k).validate()?;
        }
        let sm = self.s_max;
        // generating operators out of level `k`: (coface?, index, target level)
        let ops = |k: usize| -> Vec<(bool, usize, usize)> {
            let mut v: Vec<(bool, usize, usize)> = if k < sm { (0..=k + 1).map(|i| (true, i, k + 1)).collect() } else { Vec::new() };
            if k > 0 {
                v.extend((0..k).map(|j| (false, j, k - 1)));
            }
            v
        };
        for a in 0..=sm {
            for b in 0..=sm {
                for &(ka, ia, ta) in &ops(a) {
                    for &(kb, ib, tb) in &ops(b) {
                        let lhs = then(self.op(0, ka, ia, ta, b), self.op(1, kb, ib, ta, tb));
                        let rhs = then(self.op(1, kb, ib, a, tb), self.op(0, ka, ia, ta, tb));
                        if lhs.components != rhs.components {
                            return Err(SpectralError::Invalid(format!("operators out of ({a},{b}) do not commute")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// A generating operator of direction `dir` landing in `(a, b)`.
    fn op(&self, dir: usize, coface: bool, i: usize, a: usize, b: usize) -> &LevelMap<VectCat> {
        if coface {
            &self.cofaces[dir][a][b][i]
        } else {
            &self.codegeneracies[dir][a][b][i]
        }
    }

    /// `Y^s_n = Z^{s,s}_n` with cofaces `d^i d^i` and codegeneracies `s^j s^j`.
    pub fn diagonal(&self) -> CosimplicialSimplicialModule {
        let sm = self.s_max;
        let cofaces = (0..=sm)
            .map(|s| if s == 0 { Vec::new() } else { (0..=s).map(|i| then(&self.cofaces[1][s - 1][s][i], &self.cofaces[0][s][s][i])).collect() })
            .collect();
        let codegeneracies = (0..=sm)
            .map(|s| if s == sm { Vec::new() } else { (0..=s).map(|j| then(&self.codegeneracies[1][s + 1][s][j], &self.codegeneracies[0][s][s][j])).collect() })
            .collect();
        CosimplicialSimplicialModule { field: self.field.clone(), columns: (0..=sm).map(|s| self.columns[s][s].clone()).collect(), cofaces, codegeneracies }
    }

    /// Normalization in all three directions, as a multicomplex with
    /// bounds `[s_max, s_max, n_max]`.
    pub fn normalized(&self) -> MultiComplex {
        let (sm, nm) = (self.s_max, self.n_max);
        let field = &self.field;
        let inclusion = |a: usize, b: usize, n: usize| -> Matrix {
            let mut maps: Vec<&Matrix> = self.columns[a][b].faces[n].iter().skip(1).collect();
            if a > 0 {
                maps.extend(self.codegeneracies[0][a - 1][b].iter().map(|m| &m.components[n]));
            }
            if b > 0 {
                maps.extend(self.codegeneracies[1][a][b - 1].iter().map(|m| &m.components[n]));
            }
            common_kernel(field, self.columns[a][b].levels[n], &maps)
        };
        let incl: Vec<Vec<Vec<Matrix>>> = (0..=sm).map(|a| (0..=sm).map(|b| (0..=nm).map(|n| inclusion(a, b, n)).collect()).collect()).collect();
        let restrict = |m: &Matrix, from: (usize, usize, usize), to: (usize, usize, usize)| -> Matrix {
            incl[to.0][to.1][to.2].solve(&m.mul(&incl[from.0][from.1][from.2])).expect("normalized pieces are preserved")
        };
        let alternating = |v: &[LevelMap<VectCat>], n: usize| -> Matrix {
            let mut out = v[0].components[n].clone();
            for (i, f) in v.iter().enumerate().skip(1) {
                out = if i % 2 == 0 { out.add(&f.components[n]) } else { out.sub(&f.components[n]) };
            }
            out
        };
        MultiComplex::from_parts(field, vec![sm, sm, nm], |idx| incl[idx[0]][idx[1]][idx[2]].cols(), |dir, idx| {
            let (a, b, n) = (idx[0], idx[1], idx[2]);
            match dir {
                0 if a < sm => Some(restrict(&alternating(&self.cofaces[0][a + 1][b], n), (a, b, n), (a + 1, b, n))),
                1 if b < sm => Some(restrict(&alternating(&self.cofaces[1][a][b + 1], n), (a, b, n), (a, b + 1, n))),
                2 if n > 0 => Some(restrict(&self.columns[a][b].faces[n][0], (a, b, n), (a, b, n - 1))),
                _ => None,
            }
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagVsTotal {
    pub diagonal: Vec<(i64, usize)>,
    pub total: Vec<(i64, usize)>,
    /// Normalized pieces vanish at the top cosimplicial levels, so neither side loses anything to truncation.
    pub cosimplicial_exact: bool,
    /// Normalized pieces vanish at the top simplicial level.
    pub simplicial_exact: bool,
    /// Degrees in which the two sides are compared.
    pub window: Vec<i64>,
    pub agree: bool,
}

/// Homology of the total complex of the diagonal against that of the triple normalization.
pub fn diag_vs_total(z: &BicosimplicialModule) -> Result<DiagVsTotal, SpectralError> {
    z.validate()?;
    let (sm, nm) = (z.s_max, z.n_max);
    let diag = conormalize_bicomplex(&z.diagonal())?;
    let diagonal = total_complex(&diag.bicomplex, sm).complex.homology_dims();
    let normalized = z.normalized();
    let total = normalized.total_homology();
    let cosimplicial_exact = diag.bicomplex.dims[sm].iter().all(|&d| d == 0)
        && (0..=sm).all(|k| (0..=nm).all(|n| normalized.dim(&[sm, k, n]) == 0 && normalized.dim(&[k, sm, n]) == 0));
    let simplicial_exact = diag.bicomplex.dims.iter().all(|r| r[nm] == 0) && (0..=sm).all(|a| (0..=sm).all(|b| normalized.dim(&[a, b, nm]) == 0));
    let window: Vec<i64> = if !cosimplicial_exact {
        Vec::new()
    } else if simplicial_exact {
        (-2 * sm as i64..=nm as i64).collect()
    } else {
        (-2 * sm as i64..=nm as i64 - 1 - 2 * sm as i64).collect()
    };
    let look = |v: &[(i64, usize)], m: i64| v.iter().find(|e| e.0 == m).map_or(0, |e| e.1);
    let agree = window.iter().all(|&m| look(&diagonal, m) == look(&total, m));
    Ok(DiagVsTotal { diagonal, total, cosimplicial_exact, simplicial_exact, window, agree })
}

/// A random complex with two cochain directions in degrees `0..=1` and a chain
/// direction in degrees `0..=1`, as a sum of tensor products of small pieces.
pub fn random_triple_complex(field: &crate::linalg::Field, pieces: usize, rng: &mut impl Rng) -> Result<MultiComplex, SpectralError> {
    let cochain = |rng: &mut dyn rand::RngCore| -> (Vec<usize>, Vec<(usize, usize)>) {
        match rng.gen_range(0..3) {
            0 => (vec![0], vec![]),
            1 => (vec![1], vec![]),
            _ => (vec![0, 1], vec![(0, 1)]),
        }
    };
    let mut g = GeneratorSet::default();
    for _ in 0..pieces {
        let a = cochain(rng);
        let b = cochain(rng);
        let t = match rng.gen_range(0..3) {
            0 => (vec![0], vec![]),
            1 => (vec![1], vec![]),
            _ => (vec![1, 0], vec![(0, 1)]),
        };
        g.add_tensor(&[a, b, t]);
    }
    Ok(MultiComplex::from_generators(field, vec![1, 1, 1], &g)?.change_basis(rng))
}

/// A random bicosimplicial fixture: the realization of [`random_triple_complex`]
/// at cosimplicial levels `<= s_max`, with a random basis in every level.
pub fn random_bicosimplicial(field: &crate::linalg::Field, s_max: usize, n_max: usize, pieces: usize, rng: &mut impl Rng) -> Result<(MultiComplex, BicosimplicialModule), SpectralError> {
    let c = random_triple_complex(field, pieces, rng)?;
    let z = BicosimplicialModule::from_multicomplex(&c, s_max, n_max)?.change_basis(rng);
    Ok((c, z))
}
