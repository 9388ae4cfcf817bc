//! The Tot tower: total complexes of the row-wise coskeleta `cosk^n Y`.

use crate::linalg::Matrix;
use crate::linear::ChainComplex;
use crate::simplicial::truncation::{coskeleton, coskeleton_map, coskeleton_tower_map};
use crate::simplicial::{CosimplicialObject, LevelMap, SimplicialObject, VectCat};

use super::bicomplex::{conormalize_bicomplex, conormalized_map, total_complex, total_map, Conormalized, TotalComplex};
use super::cssm::CosimplicialSimplicialModule;
use super::SpectralError;

fn lift(e: crate::simplicial::SimplicialError) -> SpectralError {
    SpectralError::Invalid(e.to_string())
}

/// Regroup row-indexed cosimplicial maps `rows[n]` into column-indexed simplicial maps.
fn transpose_maps(rows: &[LevelMap<VectCat>], s_max: usize) -> Vec<LevelMap<VectCat>> {
    (0..=s_max).map(|s| LevelMap { components: rows.iter().map(|r| r.components[s].clone()).collect() }).collect()
}

/// `cosk^n` applied to every row of `y`, with the column structure induced by functoriality.
pub fn coskeleton_rows(y: &CosimplicialSimplicialModule, n: usize) -> Result<CosimplicialSimplicialModule, SpectralError> {
    let (sm, nm) = (y.s_max(), y.n_max());
    if n > sm {
        return Err(SpectralError::Invalid(format!("coskeleton degree {n} exceeds truncation {sm}")));
    }
    let rows: Vec<CosimplicialObject<VectCat>> = (0..=nm).map(|t| y.row(t)).collect();
    let cosk: Vec<CosimplicialObject<VectCat>> = rows.iter().map(|r| coskeleton(r, n, sm)).collect::<Result<_, _>>().map_err(lift)?;
    let column_map = |src: usize, tgt: usize, per_column: &dyn Fn(usize) -> Matrix| -> Result<LevelMap<VectCat>, SpectralError> {
        let f = LevelMap { components: (0..=sm).map(per_column).collect() };
        coskeleton_map(&rows[src], &rows[tgt], &f, n, sm).map_err(lift)
    };
    // faces[t][i] and degeneracies[t][j] as maps of cosimplicial rows
    let mut faces = Vec::with_capacity(nm + 1);
    let mut degeneracies = Vec::with_capacity(nm + 1);
    for t in 0..=nm {
        let fs = if t == 0 {
            Vec::new()
        } else {
            (0..=t).map(|i| column_map(t, t - 1, &|s| y.columns[s].faces[t][i].clone())).collect::<Result<Vec<_>, _>>()?
        };
        let ds = if t == nm {
            Vec::new()
        } else {
            (0..=t).map(|j| column_map(t, t + 1, &|s| y.columns[s].degeneracies[t][j].clone())).collect::<Result<Vec<_>, _>>()?
        };
        faces.push(fs);
        degeneracies.push(ds);
    }
    let cat = VectCat::new(y.field.clone());
    let columns = (0..=sm)
        .map(|s| SimplicialObject {
            cat: cat.clone(),
            levels: cosk.iter().map(|c| c.levels[s]).collect(),
            faces: faces.iter().map(|v| v.iter().map(|m| m.components[s].clone()).collect()).collect(),
            degeneracies: degeneracies.iter().map(|v| v.iter().map(|m| m.components[s].clone()).collect()).collect(),
        })
        .collect();
    let cofaces = (0..=sm)
        .map(|s| if s == 0 { Vec::new() } else { (0..=s).map(|i| LevelMap { components: cosk.iter().map(|c| c.cofaces[s][i].clone()).collect() }).collect() })
        .collect();
    let codegeneracies = (0..=sm)
        .map(|s| if s == sm { Vec::new() } else { (0..=s).map(|j| LevelMap { components: cosk.iter().map(|c| c.codegeneracies[s][j].clone()).collect() }).collect() })
        .collect();
    Ok(CosimplicialSimplicialModule { field: y.field.clone(), columns, cofaces, codegeneracies })
}

/// One stage `tot^n Y = tot(cosk^n Y)` of the tower.
#[derive(Clone, Debug)]
pub struct TotStage {
    pub n: usize,
    pub module: CosimplicialSimplicialModule,
    pub conormalized: Conormalized,
    pub total: TotalComplex,
}

impl TotStage {
    pub fn complex(&self) -> &ChainComplex {
        &self.total.complex
    }
}

pub fn tot_truncation(y: &CosimplicialSimplicialModule, n: usize) -> Result<TotStage, SpectralError> {
    let module = coskeleton_rows(y, n)?;
    let conormalized = conormalize_bicomplex(&module)?;
    let total = total_complex(&conormalized.bicomplex, y.s_max());
    Ok(TotStage { n, module, conormalized, total })
}

#[derive(Clone, Debug)]
pub struct TotTower {
    pub stages: Vec<TotStage>,
    /// `maps[n][m]`: the map `H_m(tot^{n+1}) -> H_m(tot^n)` in homology representative bases.
    pub homology_maps: Vec<Vec<(i64, Matrix)>>,
}

/// The tower `tot^{s_max} -> ... -> tot^0` with its maps on homology.
pub fn tot_tower(y: &CosimplicialSimplicialModule) -> Result<TotTower, SpectralError> {
    let sm = y.s_max();
    let stages = (0..=sm).map(|n| tot_truncation(y, n)).collect::<Result<Vec<_>, _>>()?;
    let rows: Vec<CosimplicialObject<VectCat>> = (0..=y.n_max()).map(|t| y.row(t)).collect();
    let mut homology_maps = Vec::with_capacity(sm);
    for n in 0..sm {
        let per_row = rows.iter().map(|r| coskeleton_tower_map(r, n, sm)).collect::<Result<Vec<_>, _>>().map_err(lift)?;
        let (upper, lower) = (&stages[n + 1], &stages[n]);
        let bigraded = conormalized_map(&upper.conormalized, &lower.conormalized, &transpose_maps(&per_row, sm))?;
        let c = upper.complex();
        let mut maps = Vec::new();
        for m in c.min_degree..=c.max_degree() {
            let f = total_map(&upper.total, &lower.total, &bigraded, m);
            let h = c
                .induced_on_homology(lower.complex(), &f, m)
                .ok_or_else(|| SpectralError::Invalid(format!("tower map is not a chain map in degree {m}")))?;
            maps.push((m, h));
        }
        homology_maps.push(maps);
    }
    Ok(TotTower { stages, homology_maps })
}

/// The map on total homology in degree `m` induced by a map of cosimplicial
/// simplicial modules, given column by column.
pub fn tot_homology_map(
    src: &CosimplicialSimplicialModule,
    tgt: &CosimplicialSimplicialModule,
    columns: &[LevelMap<VectCat>],
    m: i64,
) -> Result<Matrix, SpectralError> {
    let (a, b) = (conormalize_bicomplex(src)?, conormalize_bicomplex(tgt)?);
    let bigraded = conormalized_map(&a, &b, columns)?;
    let (ta, tb) = (total_complex(&a.bicomplex, src.s_max()), total_complex(&b.bicomplex, tgt.s_max()));
    let f = total_map(&ta, &tb, &bigraded, m);
    ta.complex.induced_on_homology(&tb.complex, &f, m).ok_or_else(|| SpectralError::Invalid(format!("not a chain map in degree {m}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::FiniteSimplicialSet;
    use crate::linalg::Field;
    use crate::simplicial::{chains_on, cochains_on};

    fn homology(c: &ChainComplex) -> Vec<(i64, usize)> {
        c.homology_dims()
    }

    #[test]
    fn top_stage_is_the_total_complex() {
        let f = Field::f2();
        let y = CosimplicialSimplicialModule::from_cosimplicial(&cochains_on(&f, &FiniteSimplicialSet::boundary(2), 3), 2);
        let full = total_complex(&conormalize_bicomplex(&y).unwrap().bicomplex, 3);
        let top = tot_truncation(&y, 3).unwrap();
        assert_eq!(top.complex().dims, full.complex.dims);
        assert_eq!(homology(top.complex()), homology(&full.complex));
    }

    #[test]
    fn stage_zero_is_column_zero() {
        let f = Field::f2();
        let x = chains_on(&f, &FiniteSimplicialSet::boundary(2), 3);
        let y = CosimplicialSimplicialModule::from_simplicial(&x, 2);
        let zero = tot_truncation(&y, 0).unwrap();
        let column = crate::linear::moore_complex(&y.columns[0]).complex;
        let dims: Vec<usize> = (0..=3).map(|t| zero.complex().dim(t)).collect();
        assert_eq!(dims, column.dims);
        for s in 1..=2 {
            assert!(zero.conormalized.bicomplex.dims[s].iter().all(|&d| d == 0));
        }
    }

    #[test]
    fn stages_agree_with_column_truncation() {
        let f = Field::f2();
        let y = CosimplicialSimplicialModule::from_cosimplicial(&cochains_on(&f, &FiniteSimplicialSet::boundary(3), 3), 2);
        let b = conormalize_bicomplex(&y).unwrap().bicomplex;
        let tower = tot_tower(&y).unwrap();
        for stage in &tower.stages {
            let cut = total_complex(&b.truncate(stage.n, b.t_max()), stage.n);
            for m in -3..=2 {
                assert_eq!(stage.complex().dim(m), cut.complex.dim(m), "stage {} degree {m}", stage.n);
                assert_eq!(stage.complex().homology(m).dim, cut.complex.homology(m).dim);
            }
        }
        assert_eq!(tower.homology_maps.len(), 3);
    }
}
