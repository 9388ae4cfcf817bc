//! Bicomplexes, conormalization and total complexes.
//!
//! `C^{s,t}` sits in total degree `t - s`. The total differential on
//! `C^{s,t}` is `D = delta + (-1)^s d`, with `delta: C^{s,t} -> C^{s+1,t}` and
//! `d: C^{s,t} -> C^{s,t-1}` commuting.

use serde::Serialize;

use crate::linalg::{Field, Matrix};
use crate::linear::{common_kernel, ChainComplex};
use crate::simplicial::{LevelMap, VectCat};

use super::cssm::CosimplicialSimplicialModule;
use super::SpectralError;

pub const SIGN_CONVENTION: &str = "D = delta + (-1)^s d on C^{s,t}, total degree t - s";

#[derive(Clone, Debug)]
pub struct Bicomplex {
    pub field: Field,
    /// `dims[s][t]`.
    pub dims: Vec<Vec<usize>>,
    /// `horizontal[s][t]: C^{s,t} -> C^{s+1,t}` for `s < s_max`.
    pub horizontal: Vec<Vec<Matrix>>,
    /// `vertical[s][t]: C^{s,t} -> C^{s,t-1}`; a `0 x dim` matrix at `t = 0`.
    pub vertical: Vec<Vec<Matrix>>,
}

impl Bicomplex {
    pub fn new(field: &Field, dims: Vec<Vec<usize>>, horizontal: Vec<Vec<Matrix>>, vertical: Vec<Vec<Matrix>>) -> Result<Bicomplex, SpectralError> {
        let b = Bicomplex { field: field.clone(), dims, horizontal, vertical };
        b.validate()?;
        Ok(b)
    }

    pub fn s_max(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn t_max(&self) -> usize {
        self.dims[0].len() - 1
    }

    pub fn dim(&self, s: usize, t: usize) -> usize {
        self.dims[s][t]
    }

    pub fn zero(field: &Field, s_max: usize, t_max: usize) -> Bicomplex {
        let dims = vec![vec![0; t_max + 1]; s_max + 1];
        let horizontal = (0..s_max).map(|_| vec![Matrix::zeros(field, 0, 0); t_max + 1]).collect();
        let vertical = vec![vec![Matrix::zeros(field, 0, 0); t_max + 1]; s_max + 1];
        Bicomplex { field: field.clone(), dims, horizontal, vertical }
    }

    pub fn validate(&self) -> Result<(), SpectralError> {
        let (sm, tm) = (self.s_max(), self.t_max());
        if self.horizontal.len() != sm || self.vertical.len() != sm + 1 {
            return Err(SpectralError::Invalid("differential grid has the wrong size".into()));
        }
        for s in 0..=sm {
            if self.dims[s].len() != tm + 1 {
                return Err(SpectralError::Invalid(format!("row of dimensions {s} has the wrong length")));
            }
            for t in 0..=tm {
                let want = if t == 0 { 0 } else { self.dims[s][t - 1] };
                if self.vertical[s][t].shape() != (want, self.dims[s][t]) {
                    return Err(SpectralError::Invalid(format!("vertical map at ({s},{t}) has shape {:?}", self.vertical[s][t].shape())));
                }
                if s < sm && self.horizontal[s][t].shape() != (self.dims[s + 1][t], self.dims[s][t]) {
                    return Err(SpectralError::Invalid(format!("horizontal map at ({s},{t}) has shape {:?}", self.horizontal[s][t].shape())));
                }
                if t >= 2 && !self.vertical[s][t - 1].mul(&self.vertical[s][t]).is_zero() {
                    return Err(SpectralError::Invalid(format!("vertical square nonzero at ({s},{t})")));
                }
                if s + 2 <= sm && !self.horizontal[s + 1][t].mul(&self.horizontal[s][t]).is_zero() {
                    return Err(SpectralError::Invalid(format!("horizontal square nonzero at ({s},{t})")));
                }
                if s < sm && t >= 1 && self.horizontal[s][t - 1].mul(&self.vertical[s][t]) != self.vertical[s + 1][t].mul(&self.horizontal[s][t]) {
                    return Err(SpectralError::Invalid(format!("differentials do not commute at ({s},{t})")));
                }
            }
        }
        Ok(())
    }

    /// Restriction to `s <= s_max`, `t <= t_max`.
    pub fn truncate(&self, s_max: usize, t_max: usize) -> Bicomplex {
        Bicomplex {
            field: self.field.clone(),
            dims: self.dims[..=s_max].iter().map(|r| r[..=t_max].to_vec()).collect(),
            horizontal: self.horizontal[..s_max].iter().map(|r| r[..=t_max].to_vec()).collect(),
            vertical: self.vertical[..=s_max].iter().map(|r| r[..=t_max].to_vec()).collect(),
        }
    }
}

/// The bicomplex together with the inclusions `C^{s,t} -> Y^s_t`.
#[derive(Clone, Debug)]
pub struct Conormalized {
    pub bicomplex: Bicomplex,
    pub inclusions: Vec<Vec<Matrix>>,
}

/// Joint normalization: kernels of the faces `d_i`, `i >= 1`, and of all codegeneracies.
pub fn conormalize_bicomplex(y: &CosimplicialSimplicialModule) -> Result<Conormalized, SpectralError> {
    y.validate()?;
    Ok(conormalize_unchecked(y))
}

pub(crate) fn conormalize_unchecked(y: &CosimplicialSimplicialModule) -> Conormalized {
    let field = &y.field;
    let (sm, nm) = (y.s_max(), y.n_max());
    let mut inclusions = Vec::with_capacity(sm + 1);
    for s in 0..=sm {
        let mut row = Vec::with_capacity(nm + 1);
        for t in 0..=nm {
            let mut maps: Vec<&Matrix> = y.columns[s].faces[t].iter().skip(1).collect();
            if s >= 1 {
                maps.extend(y.codegeneracies[s - 1].iter().map(|m| &m.components[t]));
            }
            row.push(common_kernel(field, y.dim(s, t), &maps));
        }
        inclusions.push(row);
    }
    let dims: Vec<Vec<usize>> = inclusions.iter().map(|r| r.iter().map(|m| m.cols()).collect()).collect();
    let mut horizontal = Vec::with_capacity(sm);
    for s in 0..sm {
        let mut row = Vec::with_capacity(nm + 1);
        for t in 0..=nm {
            let mut delta = Matrix::zeros(field, y.dim(s + 1, t), y.dim(s, t));
            for (i, d) in y.cofaces[s + 1].iter().enumerate() {
                delta = if i % 2 == 0 { delta.add(&d.components[t]) } else { delta.sub(&d.components[t]) };
            }
            let image = delta.mul(&inclusions[s][t]);
            row.push(inclusions[s + 1][t].solve(&image).expect("the coboundary preserves normalized cochains"));
        }
        horizontal.push(row);
    }
    let mut vertical = Vec::with_capacity(sm + 1);
    for s in 0..=sm {
        let mut row = vec![Matrix::zeros(field, 0, dims[s][0])];
        for t in 1..=nm {
            let image = y.columns[s].faces[t][0].mul(&inclusions[s][t]);
            row.push(inclusions[s][t - 1].solve(&image).expect("d_0 preserves the normalized subspace"));
        }
        vertical.push(row);
    }
    let bicomplex = Bicomplex { field: field.clone(), dims, horizontal, vertical };
    debug_assert!(bicomplex.validate().is_ok());
    Conormalized { bicomplex, inclusions }
}

/// The map of bicomplexes induced by a map of cosimplicial simplicial
/// modules given column by column.
pub fn conormalized_map(src: &Conormalized, tgt: &Conormalized, columns: &[LevelMap<VectCat>]) -> Result<Vec<Vec<Matrix>>, SpectralError> {
    let mut out = Vec::new();
    for (s, f) in columns.iter().enumerate() {
        let mut row = Vec::new();
        for (t, m) in f.components.iter().enumerate() {
            let image = m.mul(&src.inclusions[s][t]);
            row.push(tgt.inclusions[s][t].solve(&image).ok_or_else(|| SpectralError::Invalid(format!("map does not preserve normalized cochains at ({s},{t})")))?);
        }
        out.push(row);
    }
    Ok(out)
}

/// Placement of the bigraded pieces inside each total degree.
#[derive(Clone, Debug, Serialize)]
pub struct TotalLayout {
    pub min_degree: i64,
    /// `blocks[i]` lists `(s, t, offset)` in degree `min_degree + i`, by increasing `s`.
    pub blocks: Vec<Vec<(usize, usize, usize)>>,
}

impl TotalLayout {
    pub fn new(dims: &[Vec<usize>]) -> TotalLayout {
        let sm = dims.len() - 1;
        let tm = dims[0].len() - 1;
        let min_degree = -(sm as i64);
        let mut blocks = Vec::new();
        for m in min_degree..=tm as i64 {
            let mut off = 0;
            let mut row = Vec::new();
            for s in 0..=sm {
                let t = m + s as i64;
                if t >= 0 && t as usize <= tm {
                    row.push((s, t as usize, off));
                    off += dims[s][t as usize];
                }
            }
            blocks.push(row);
        }
        TotalLayout { min_degree, blocks }
    }

    pub fn degree_index(&self, m: i64) -> Option<usize> {
        let i = m - self.min_degree;
        (i >= 0 && (i as usize) < self.blocks.len()).then_some(i as usize)
    }

    pub fn offset(&self, s: usize, t: usize) -> usize {
        let m = t as i64 - s as i64;
        self.blocks[self.degree_index(m).unwrap()].iter().find(|b| b.0 == s).unwrap().2
    }
}

#[derive(Clone, Debug)]
pub struct TotalComplex {
    pub complex: ChainComplex,
    pub layout: TotalLayout,
}

fn sign(s: usize) -> i64 {
    if s % 2 == 0 { 1 } else { -1 }
}

/// The total complex of `b` restricted to `s <= s_max`.
pub fn total_complex(b: &Bicomplex, s_max: usize) -> TotalComplex {
    let b = if s_max < b.s_max() { b.truncate(s_max, b.t_max()) } else { b.clone() };
    let field = &b.field;
    let layout = TotalLayout::new(&b.dims);
    let dims: Vec<usize> = layout.blocks.iter().map(|r| r.iter().map(|&(s, t, _)| b.dims[s][t]).sum()).collect();
    let mut diffs = Vec::with_capacity(dims.len());
    for (i, row) in layout.blocks.iter().enumerate() {
        if i == 0 {
            diffs.push(Matrix::zeros(field, 0, dims[0]));
            continue;
        }
        let lower = &layout.blocks[i - 1];
        let mut entries: Vec<Vec<(usize, crate::linalg::Scalar)>> = vec![Vec::new(); dims[i]];
        for &(s, t, off) in row {
            // delta into (s+1, t)
            if s < b.s_max() {
                if let Some(&(_, _, toff)) = lower.iter().find(|x| x.0 == s + 1 && x.1 == t) {
                    for (c, col) in b.horizontal[s][t].sparse_cols().into_iter().enumerate() {
                        entries[off + c].extend(col.into_iter().map(|(r, v)| (toff + r, v)));
                    }
                }
            }
            if t >= 1 {
                if let Some(&(_, _, toff)) = lower.iter().find(|x| x.0 == s && x.1 == t - 1) {
                    let sg = field.from_i64(sign(s));
                    for (c, col) in b.vertical[s][t].sparse_cols().into_iter().enumerate() {
                        entries[off + c].extend(col.into_iter().map(|(r, v)| (toff + r, v.mul(&sg))));
                    }
                }
            }
        }
        for col in entries.iter_mut() {
            col.sort_by_key(|e| e.0);
        }
        diffs.push(Matrix::from_sparse_cols(field, dims[i - 1], dims[i], entries));
    }
    let complex = ChainComplex::new(field, layout.min_degree, dims, diffs).expect("total differential squares to zero");
    TotalComplex { complex, layout }
}

/// The chain map on total complexes induced by a bigraded family of maps.
pub fn total_map(src: &TotalComplex, tgt: &TotalComplex, maps: &[Vec<Matrix>], degree: i64) -> Matrix {
    let field = &src.complex.field;
    let (rows, cols) = (tgt.complex.dim(degree), src.complex.dim(degree));
    let mut out = Matrix::zeros(field, rows, cols);
    let (Some(si), Some(ti)) = (src.layout.degree_index(degree), tgt.layout.degree_index(degree)) else {
        return out;
    };
    let mut cols_data: Vec<Vec<(usize, crate::linalg::Scalar)>> = vec![Vec::new(); cols];
    for &(s, t, off) in &src.layout.blocks[si] {
        if let Some(&(_, _, toff)) = tgt.layout.blocks[ti].iter().find(|x| x.0 == s && x.1 == t) {
            for (c, col) in maps[s][t].sparse_cols().into_iter().enumerate() {
                cols_data[off + c].extend(col.into_iter().map(|(r, v)| (toff + r, v)));
            }
        }
    }
    if cols > 0 {
        out = Matrix::from_sparse_cols(field, rows, cols, cols_data);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::FiniteSimplicialSet;
    use crate::simplicial::cochains_on;

    #[test]
    fn constant_cosimplicial_direction_concentrates_in_column_zero() {
        let f = Field::f2();
        let x = crate::simplicial::chains_on(&f, &FiniteSimplicialSet::boundary(2), 3);
        let y = CosimplicialSimplicialModule::from_simplicial(&x, 3);
        let c = conormalize_bicomplex(&y).unwrap();
        for s in 1..=3 {
            assert!(c.bicomplex.dims[s].iter().all(|&d| d == 0));
        }
        let tot = total_complex(&c.bicomplex, 3);
        let pi = crate::linear::homotopy_groups(&x, 2);
        for t in 0..=2 {
            assert_eq!(tot.complex.homology(t as i64).dim, pi.dims[t]);
        }
    }

    #[test]
    fn two_by_two_grid_commutes() {
        let f = Field::f2();
        let y = cochains_on(&f, &FiniteSimplicialSet::standard(1, 1), 1);
        let z = CosimplicialSimplicialModule::from_cosimplicial(&y, 1);
        let c = conormalize_bicomplex(&z).unwrap();
        c.bicomplex.validate().unwrap();
        assert_eq!(c.bicomplex.dims, vec![vec![2, 0], vec![1, 0]]);
        let zero = Bicomplex::zero(&f, 2, 2);
        zero.validate().unwrap();
        assert!(total_complex(&zero, 2).complex.dims.iter().all(|&d| d == 0));
    }
}
