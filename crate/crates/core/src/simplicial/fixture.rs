//! JSON fixtures for (co)simplicial modules: integer matrices in row-major
//! order over a field given by its characteristic (0 for the rationals).

use serde::{Deserialize, Serialize};

use crate::linalg::{Field, Matrix};

use super::category::VectCat;
use super::objects::{CosimplicialObject, SimplicialObject};
use super::SimplicialError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FixtureKind {
    Simplicial,
    Cosimplicial,
}

/// `lowering[n][i]` are the faces (or codegeneracies) out of level `n`,
/// `raising[n][i]` the degeneracies (or cofaces) out of level `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFixture {
    pub characteristic: u32,
    pub kind: FixtureKind,
    pub levels: Vec<usize>,
    pub lowering: Vec<Vec<Vec<Vec<i64>>>>,
    pub raising: Vec<Vec<Vec<Vec<i64>>>>,
}

fn matrices(field: &Field, data: &[Vec<Vec<i64>>], rows: usize, cols: usize) -> Result<Vec<Matrix>, SimplicialError> {
    data.iter()
        .map(|m| Matrix::from_i64(field, rows, cols, m).map_err(|e| SimplicialError::Fixture(e.to_string())))
        .collect()
}

fn to_rows(ms: &[Matrix]) -> Vec<Vec<Vec<i64>>> {
    ms.iter().map(|m| m.to_i64_rows()).collect()
}

impl ModuleFixture {
    pub fn field(&self) -> Result<Field, SimplicialError> {
        Field::from_characteristic(self.characteristic).map_err(|e| SimplicialError::Fixture(e.to_string()))
    }

    fn check_counts(&self) -> Result<usize, SimplicialError> {
        let top = self.levels.len().checked_sub(1).ok_or_else(|| SimplicialError::Fixture("no levels".into()))?;
        if self.lowering.len() != top + 1 || self.raising.len() != top + 1 {
            return Err(SimplicialError::Fixture("one list of structure maps per level is required".into()));
        }
        Ok(top)
    }

    pub fn to_cosimplicial(&self) -> Result<CosimplicialObject<VectCat>, SimplicialError> {
        if self.kind != FixtureKind::Cosimplicial {
            return Err(SimplicialError::Fixture("not a cosimplicial fixture".into()));
        }
        let top = self.check_counts()?;
        let field = self.field()?;
        let l = &self.levels;
        let mut cofaces = vec![Vec::new()];
        let mut codegeneracies = Vec::new();
        for n in 0..=top {
            if n < top {
                cofaces.push(matrices(&field, &self.raising[n], l[n + 1], l[n])?);
            } else if !self.raising[n].is_empty() {
                return Err(SimplicialError::Fixture("cofaces out of the top level".into()));
            }
            if n > 0 {
                codegeneracies.push(matrices(&field, &self.lowering[n], l[n - 1], l[n])?);
            } else if !self.lowering[0].is_empty() {
                return Err(SimplicialError::Fixture("codegeneracies out of level 0".into()));
            }
        }
        codegeneracies.push(Vec::new());
        let y = CosimplicialObject { cat: VectCat::new(field), levels: l.clone(), cofaces, codegeneracies };
        y.check_identities().map_err(|v| SimplicialError::Identity(format!("{} then {} at level {}", v.first, v.second, v.level)))?;
        Ok(y)
    }

    pub fn to_simplicial(&self) -> Result<SimplicialObject<VectCat>, SimplicialError> {
        if self.kind != FixtureKind::Simplicial {
            return Err(SimplicialError::Fixture("not a simplicial fixture".into()));
        }
        let top = self.check_counts()?;
        let field = self.field()?;
        let l = &self.levels;
        let mut faces = Vec::new();
        let mut degeneracies = Vec::new();
        for n in 0..=top {
            faces.push(if n == 0 { Vec::new() } else { matrices(&field, &self.lowering[n], l[n - 1], l[n])? });
            degeneracies.push(if n == top { Vec::new() } else { matrices(&field, &self.raising[n], l[n + 1], l[n])? });
        }
        let x = SimplicialObject { cat: VectCat::new(field), levels: l.clone(), faces, degeneracies };
        x.check_identities().map_err(|v| SimplicialError::Identity(format!("{} then {} at level {}", v.first, v.second, v.level)))?;
        Ok(x)
    }

    pub fn from_cosimplicial(y: &CosimplicialObject<VectCat>) -> ModuleFixture {
        let top = y.s_max();
        ModuleFixture {
            characteristic: y.cat.field.characteristic(),
            kind: FixtureKind::Cosimplicial,
            levels: y.levels.clone(),
            lowering: (0..=top).map(|n| if n == 0 { Vec::new() } else { to_rows(&y.codegeneracies[n - 1]) }).collect(),
            raising: (0..=top).map(|n| if n == top { Vec::new() } else { to_rows(&y.cofaces[n + 1]) }).collect(),
        }
    }

    pub fn from_simplicial(x: &SimplicialObject<VectCat>) -> ModuleFixture {
        ModuleFixture {
            characteristic: x.cat.field.characteristic(),
            kind: FixtureKind::Simplicial,
            levels: x.levels.clone(),
            lowering: x.faces.iter().map(|v| to_rows(v)).collect(),
            raising: x.degeneracies.iter().map(|v| to_rows(v)).collect(),
        }
    }
}
