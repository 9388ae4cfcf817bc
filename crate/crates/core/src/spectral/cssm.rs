//! Cosimplicial simplicial modules: a grid of spaces `Y^s_n` with simplicial
//! structure down each column and cosimplicial structure along each row.

use crate::linalg::{Field, Matrix};
use crate::linear::SimplicialModule;
use crate::simplicial::{ConcreteCategory, CosimplicialObject, LevelMap, SimplicialObject, VectCat};

use super::SpectralError;

#[derive(Clone, Debug)]
pub struct CosimplicialSimplicialModule {
    pub field: Field,
    /// `columns[s]` is the simplicial module in cosimplicial degree `s`.
    pub columns: Vec<SimplicialModule>,
    /// `cofaces[s][i]`: the map `columns[s-1] -> columns[s]`, one matrix per simplicial level.
    pub cofaces: Vec<Vec<LevelMap<VectCat>>>,
    /// `codegeneracies[s][j]`: `columns[s+1] -> columns[s]`.
    pub codegeneracies: Vec<Vec<LevelMap<VectCat>>>,
}

impl CosimplicialSimplicialModule {
    pub fn s_max(&self) -> usize {
        self.columns.len() - 1
    }

    pub fn n_max(&self) -> usize {
        self.columns[0].n_max()
    }

    pub fn dim(&self, s: usize, n: usize) -> usize {
        self.columns[s].levels[n]
    }

    /// A cosimplicial module viewed as constant in the simplicial direction.
    pub fn from_cosimplicial(y: &CosimplicialObject<VectCat>, n_max: usize) -> CosimplicialSimplicialModule {
        let cat = y.cat.clone();
        let columns = y.levels.iter().map(|d| SimplicialObject::constant(&cat, d, n_max)).collect();
        let lift = |m: &Matrix| LevelMap { components: vec![m.clone(); n_max + 1] };
        CosimplicialSimplicialModule {
            field: cat.field.clone(),
            columns,
            cofaces: y.cofaces.iter().map(|v| v.iter().map(lift).collect()).collect(),
            codegeneracies: y.codegeneracies.iter().map(|v| v.iter().map(lift).collect()).collect(),
        }
    }

    /// A simplicial module viewed as constant in the cosimplicial direction.
    pub fn from_simplicial(x: &SimplicialModule, s_max: usize) -> CosimplicialSimplicialModule {
        let id = LevelMap { components: x.levels.iter().map(|d| x.cat.identity(d)).collect() };
        CosimplicialSimplicialModule {
            field: x.cat.field.clone(),
            columns: vec![x.clone(); s_max + 1],
            cofaces: (0..=s_max).map(|s| if s == 0 { Vec::new() } else { vec![id.clone(); s + 1] }).collect(),
            codegeneracies: (0..=s_max).map(|s| if s == s_max { Vec::new() } else { vec![id.clone(); s + 1] }).collect(),
        }
    }

    /// The cosimplicial module in simplicial degree `n`.
    pub fn row(&self, n: usize) -> CosimplicialObject<VectCat> {
        CosimplicialObject {
            cat: VectCat::new(self.field.clone()),
            levels: self.columns.iter().map(|c| c.levels[n]).collect(),
            cofaces: self.cofaces.iter().map(|v| v.iter().map(|m| m.components[n].clone()).collect()).collect(),
            codegeneracies: self.codegeneracies.iter().map(|v| v.iter().map(|m| m.components[n].clone()).collect()).collect(),
        }
    }

    /// Restriction to cosimplicial degrees `<= s_max`.
    pub fn truncate(&self, s_max: usize) -> CosimplicialSimplicialModule {
        let mut out = CosimplicialSimplicialModule {
            field: self.field.clone(),
            columns: self.columns[..=s_max].to_vec(),
            cofaces: self.cofaces[..=s_max].to_vec(),
            codegeneracies: self.codegeneracies[..=s_max].to_vec(),
        };
        out.codegeneracies[s_max].clear();
        out
    }

    /// Column identities, row identities and commutation of the two structures.
    pub fn validate(&self) -> Result<(), SpectralError> {
        let n_max = self.n_max();
        for (s, c) in self.columns.iter().enumerate() {
            if c.n_max() != n_max {
                return Err(SpectralError::Invalid(format!("column {s} has a different simplicial truncation")));
            }
            c.check_identities().map_err(|v| SpectralError::Invalid(format!("column {s}: {} then {} at level {}", v.first, v.second, v.level)))?;
        }
        for n in 0..=n_max {
            self.row(n).check_identities().map_err(|v| SpectralError::Invalid(format!("row {n}: {} then {} at level {}", v.first, v.second, v.level)))?;
        }
        for s in 0..=self.s_max() {
            for (i, d) in self.cofaces[s].iter().enumerate() {
                if !d.is_simplicial_map(&self.columns[s - 1], &self.columns[s]) {
                    return Err(SpectralError::Invalid(format!("coface d^{i} into column {s} is not simplicial")));
                }
            }
            for (j, m) in self.codegeneracies[s].iter().enumerate() {
                if !m.is_simplicial_map(&self.columns[s + 1], &self.columns[s]) {
                    return Err(SpectralError::Invalid(format!("codegeneracy s^{j} out of column {} is not simplicial", s + 1)));
                }
            }
        }
        Ok(())
    }
}
