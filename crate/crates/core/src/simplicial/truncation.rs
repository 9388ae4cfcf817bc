//! Skeleta and coskeleta of module-valued (co)simplicial objects, with their
//! latching and matching objects.
//!
//! Every level is presented inside an ambient direct sum indexed by maps of
//! the simplex category; `proj` takes ambient vectors to level coordinates
//! and `lift` is a section of it.

use crate::delta::{compose, OrdinalMap};
use crate::linalg::{Field, Matrix, QuotientBasis, Scalar, SparseVec, Subspace};

use super::category::VectCat;
use super::objects::{CosimplicialObject, LevelMap, SimplicialObject};
use super::SimplicialError;

struct Presentation {
    blocks: Vec<(OrdinalMap, usize)>,
    ambient: usize,
    proj: Matrix,
    lift: Matrix,
}

impl Presentation {
    fn offset(&self, m: &OrdinalMap) -> usize {
        self.blocks.iter().find(|(b, _)| b == m).expect("indexing map listed").1
    }

    fn dim(&self) -> usize {
        self.lift.cols()
    }
}

fn blocks_for(maps: Vec<OrdinalMap>, dim_of: impl Fn(usize) -> usize, on_target: bool) -> (Vec<(OrdinalMap, usize)>, usize) {
    let mut off = 0;
    let mut blocks = Vec::with_capacity(maps.len());
    for m in maps {
        let d = dim_of(if on_target { m.target() } else { m.source() });
        blocks.push((m, off));
        off += d;
    }
    (blocks, off)
}

fn place(row_off: usize, col_off: usize, m: &Matrix) -> Vec<(usize, usize, Scalar)> {
    let mut out = Vec::new();
    for (i, row) in m.sparse_rows().into_iter().enumerate() {
        for (j, v) in row {
            out.push((row_off + i, col_off + j, v));
        }
    }
    out
}

fn from_triplets(field: &Field, rows: usize, cols: usize, entries: Vec<(usize, usize, Scalar)>) -> Matrix {
    let mut data: Vec<SparseVec> = vec![Vec::new(); rows];
    for (i, j, v) in entries {
        data[i].push((j, v));
    }
    Matrix::from_sparse_rows(field, rows, cols, data)
}

/// Limit over the surjections out of `[k]` with target at most `bound`.
fn limit_level(y: &CosimplicialObject<VectCat>, k: usize, bound: usize) -> Result<Presentation, SimplicialError> {
    let field = &y.cat.field;
    let maps: Vec<OrdinalMap> = (0..=bound.min(k)).flat_map(|j| OrdinalMap::all_surjections(k, j)).collect();
    let (blocks, ambient) = blocks_for(maps, |j| y.levels[j], true);
    if k <= bound {
        // families determined by their identity component
        let parts = blocks.iter().map(|(s, _)| y.apply(s)).collect::<Result<Vec<_>, _>>()?;
        let lift = Matrix::vstack(&parts.iter().collect::<Vec<_>>(), field, y.levels[k]);
        let off = blocks.iter().find(|(s, _)| s.is_identity()).unwrap().1;
        let proj = Matrix::identity(field, ambient).select_rows(&(off..off + y.levels[k]).collect::<Vec<_>>());
        return Ok(Presentation { blocks, ambient, proj, lift });
    }
    let mut entries = Vec::new();
    let mut row = 0;
    for (s, off) in &blocks {
        let j = s.target();
        for i in 0..j {
            let deg = OrdinalMap::degeneracy(j - 1, i);
            let composite = compose(s, &deg).expect("composable");
            let target_off = blocks.iter().find(|(b, _)| *b == composite).unwrap().1;
            let ymap = &y.codegeneracies[j - 1][i];
            entries.extend(place(row, *off, ymap));
            for r in 0..y.levels[j - 1] {
                entries.push((row + r, target_off + r, field.one().neg()));
            }
            row += y.levels[j - 1];
        }
    }
    let constraints = from_triplets(field, row, ambient, merge(entries));
    let lift = constraints.kernel_basis();
    let proj = projection_onto_columns(&lift);
    Ok(Presentation { blocks, ambient, proj, lift })
}

fn merge(mut entries: Vec<(usize, usize, Scalar)>) -> Vec<(usize, usize, Scalar)> {
    entries.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    let mut out: Vec<(usize, usize, Scalar)> = Vec::with_capacity(entries.len());
    for (i, j, v) in entries {
        match out.last_mut() {
            Some(last) if last.0 == i && last.1 == j => last.2 = last.2.add(&v),
            _ => out.push((i, j, v)),
        }
    }
    out.retain(|e| !e.2.is_zero());
    out
}

/// A left inverse of an injective column basis.
fn projection_onto_columns(basis: &Matrix) -> Matrix {
    let field = basis.field().clone();
    if basis.cols() == 0 {
        return Matrix::zeros(&field, 0, basis.rows());
    }
    // extend to an invertible matrix and keep the first rows of the inverse
    let mut ech = crate::linalg::Echelon::new(&field, basis.rows());
    let mut cols: Vec<SparseVec> = basis.sparse_cols();
    for c in &cols {
        ech.insert(c);
    }
    for e in 0..basis.rows() {
        let v = vec![(e, field.one())];
        if ech.insert(&v) {
            cols.push(v);
        }
    }
    let full = Matrix::from_sparse_cols(&field, basis.rows(), basis.rows(), cols);
    let inv = full.inverse().expect("basis was extended to a full basis");
    inv.select_rows(&(0..basis.cols()).collect::<Vec<_>>())
}

/// Ambient map of the limit presentations induced by `theta: [k] -> [k2]`.
fn limit_ambient_map(y: &CosimplicialObject<VectCat>, src: &Presentation, tgt: &Presentation, theta: &OrdinalMap) -> Result<Matrix, SimplicialError> {
    let field = &y.cat.field;
    let mut entries = Vec::new();
    for (rho, off) in &tgt.blocks {
        let (e, m) = compose(theta, rho).expect("composable").epi_mono();
        let ym = y.apply(&m)?;
        entries.extend(place(*off, src.offset(&e), &ym));
    }
    Ok(from_triplets(field, tgt.ambient, src.ambient, merge(entries)))
}

fn assemble_cosimplicial(
    y: &CosimplicialObject<VectCat>,
    pres: &[Presentation],
    ambient_map: impl Fn(&Presentation, &Presentation, &OrdinalMap) -> Result<Matrix, SimplicialError>,
) -> Result<CosimplicialObject<VectCat>, SimplicialError> {
    let top = pres.len() - 1;
    let map = |k: usize, k2: usize, theta: OrdinalMap| -> Result<Matrix, SimplicialError> {
        let a = ambient_map(&pres[k], &pres[k2], &theta)?;
        Ok(pres[k2].proj.mul(&a.mul(&pres[k].lift)))
    };
    let mut cofaces = Vec::new();
    let mut codegeneracies = Vec::new();
    for n in 0..=top {
        cofaces.push(if n == 0 { Vec::new() } else { (0..=n).map(|i| map(n - 1, n, OrdinalMap::face(n, i))).collect::<Result<_, _>>()? });
        codegeneracies.push(if n == top { Vec::new() } else { (0..=n).map(|j| map(n + 1, n, OrdinalMap::degeneracy(n, j))).collect::<Result<_, _>>()? });
    }
    Ok(CosimplicialObject { cat: y.cat.clone(), levels: pres.iter().map(|p| p.dim()).collect(), cofaces, codegeneracies })
}

/// `cosk^n Y` truncated at `top`: the right Kan extension of the restriction
/// of `y` to levels `<= n`.
pub fn coskeleton(y: &CosimplicialObject<VectCat>, n: usize, top: usize) -> Result<CosimplicialObject<VectCat>, SimplicialError> {
    if n > y.s_max() {
        return Err(SimplicialError::Shape(format!("coskeleton degree {n} exceeds truncation {}", y.s_max())));
    }
    let pres = (0..=top).map(|k| limit_level(y, k, n)).collect::<Result<Vec<_>, _>>()?;
    assemble_cosimplicial(y, &pres, |s, t, th| limit_ambient_map(y, s, t, th))
}

/// The map `cosk^n Y -> cosk^n Y'` induced by a cosimplicial map `f`.
pub fn coskeleton_map(
    y: &CosimplicialObject<VectCat>,
    y2: &CosimplicialObject<VectCat>,
    f: &LevelMap<VectCat>,
    n: usize,
    top: usize,
) -> Result<LevelMap<VectCat>, SimplicialError> {
    if n > y.s_max().min(y2.s_max()) {
        return Err(SimplicialError::Shape(format!("coskeleton degree {n} exceeds truncation")));
    }
    let field = &y.cat.field;
    let components = (0..=top)
        .map(|k| {
            let (src, tgt) = (limit_level(y, k, n)?, limit_level(y2, k, n)?);
            let mut entries = Vec::new();
            for (sigma, off) in &src.blocks {
                entries.extend(place(tgt.offset(sigma), *off, &f.components[sigma.target()]));
            }
            let a = from_triplets(field, tgt.ambient, src.ambient, merge(entries));
            Ok(tgt.proj.mul(&a.mul(&src.lift)))
        })
        .collect::<Result<Vec<_>, SimplicialError>>()?;
    Ok(LevelMap { components })
}

/// The tower map `cosk^{n+1} Y -> cosk^n Y`, forgetting the components
/// indexed by surjections onto `[n+1]`.
pub fn coskeleton_tower_map(y: &CosimplicialObject<VectCat>, n: usize, top: usize) -> Result<LevelMap<VectCat>, SimplicialError> {
    if n + 1 > y.s_max() {
        return Err(SimplicialError::Shape(format!("coskeleton degree {} exceeds truncation {}", n + 1, y.s_max())));
    }
    let field = &y.cat.field;
    let components = (0..=top)
        .map(|k| {
            let (src, tgt) = (limit_level(y, k, n + 1)?, limit_level(y, k, n)?);
            let mut entries = Vec::new();
            for (sigma, off) in &tgt.blocks {
                let so = src.offset(sigma);
                for r in 0..y.levels[sigma.target()] {
                    entries.push((off + r, so + r, field.one()));
                }
            }
            let a = from_triplets(field, tgt.ambient, src.ambient, entries);
            Ok(tgt.proj.mul(&a.mul(&src.lift)))
        })
        .collect::<Result<Vec<_>, SimplicialError>>()?;
    Ok(LevelMap { components })
}

/// The matching object at level `k` (`1 <= k <= s_max`) and the matching map into it.
pub fn matching_map(y: &CosimplicialObject<VectCat>, k: usize) -> Result<Matrix, SimplicialError> {
    if k == 0 || k > y.s_max() {
        return Err(SimplicialError::Shape(format!("no matching map at level {k}")));
    }
    let pres = limit_level(y, k, k - 1)?;
    let parts = pres.blocks.iter().map(|(s, _)| y.apply(s)).collect::<Result<Vec<_>, _>>()?;
    let into_ambient = Matrix::vstack(&parts.iter().collect::<Vec<_>>(), &y.cat.field, y.levels[k]);
    Ok(pres.proj.mul(&into_ambient))
}

/// Colimit presentation over maps into or out of `[k]`, given the indexing
/// maps, the relation generators and the evaluation into the level itself.
struct ColimitInput {
    blocks: Vec<(OrdinalMap, usize)>,
    ambient: usize,
    relations: Vec<SparseVec>,
    evaluation: Option<Matrix>,
    identity_block: Option<usize>,
}

fn colimit_presentation(field: &Field, input: ColimitInput, level_dim: usize) -> Presentation {
    let ColimitInput { blocks, ambient, relations, evaluation, identity_block } = input;
    match (evaluation, identity_block) {
        (Some(ev), Some(off)) => {
            let lift = Matrix::identity(field, ambient).select_cols(&(off..off + level_dim).collect::<Vec<_>>());
            Presentation { blocks, ambient, proj: ev, lift }
        }
        _ => {
            let den = Subspace::span(field, ambient, &relations);
            let spanning: Vec<SparseVec> = (0..ambient).map(|e| vec![(e, field.one())]).collect();
            let q = QuotientBasis::new(field, ambient, &spanning, &den);
            let proj = q.coords(&Matrix::identity(field, ambient)).expect("every vector has quotient coordinates");
            Presentation { blocks, ambient, proj, lift: q.reps_matrix() }
        }
    }
}

fn column_block(m: &Matrix, off: usize) -> Vec<SparseVec> {
    (0..m.cols()).map(|c| m.col(c).into_iter().map(|(i, x)| (i + off, x)).collect()).collect()
}

fn sub_vectors(field: &Field, a: &[SparseVec], b: &[SparseVec]) -> Vec<SparseVec> {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| crate::linalg::sparse_add_scaled(field, x, &field.one().neg(), y))
        .collect()
}

fn skeleton_level(x: &SimplicialObject<VectCat>, k: usize, bound: usize) -> Result<Presentation, SimplicialError> {
    let field = &x.cat.field;
    let maps: Vec<OrdinalMap> = (0..=bound.min(k)).flat_map(|j| OrdinalMap::all_surjections(k, j)).collect();
    let (blocks, ambient) = blocks_for(maps, |j| x.levels[j], true);
    let mut relations = Vec::new();
    for (s, off) in &blocks {
        let j = s.target();
        for i in 0..j {
            let deg = OrdinalMap::degeneracy(j - 1, i);
            let composite = compose(s, &deg).expect("composable");
            let low_off = blocks.iter().find(|(b, _)| *b == composite).unwrap().1;
            let a = column_block(&Matrix::identity(field, x.levels[j - 1]), low_off);
            let b = column_block(&x.degeneracies[j - 1][i], *off);
            relations.extend(sub_vectors(field, &a, &b));
        }
    }
    let (evaluation, identity_block) = if k <= bound {
        let parts = blocks.iter().map(|(s, _)| x.apply(s)).collect::<Result<Vec<_>, _>>()?;
        let ev = Matrix::hstack(&parts.iter().collect::<Vec<_>>(), field, x.levels[k]);
        (Some(ev), blocks.iter().find(|(s, _)| s.is_identity()).map(|b| b.1))
    } else {
        (None, None)
    };
    let level_dim = if k <= bound { x.levels[k] } else { 0 };
    Ok(colimit_presentation(field, ColimitInput { blocks, ambient, relations, evaluation, identity_block }, level_dim))
}

/// `sk_n X` truncated at `top`: the left Kan extension of the restriction of
/// `x` to levels `<= n`.
pub fn skeleton(x: &SimplicialObject<VectCat>, n: usize, top: usize) -> Result<SimplicialObject<VectCat>, SimplicialError> {
    if n > x.n_max() {
        return Err(SimplicialError::Shape(format!("skeleton degree {n} exceeds truncation {}", x.n_max())));
    }
    let field = &x.cat.field;
    let pres = (0..=top).map(|k| skeleton_level(x, k, n)).collect::<Result<Vec<_>, _>>()?;
    // X(theta) for theta: [k2] -> [k] sends block sigma to block e, where sigma . theta = m . e
    let map = |k: usize, k2: usize, theta: OrdinalMap| -> Result<Matrix, SimplicialError> {
        let (src, tgt) = (&pres[k], &pres[k2]);
        let mut entries = Vec::new();
        for (sigma, off) in &src.blocks {
            let (e, m) = compose(&theta, sigma).expect("composable").epi_mono();
            let xm = x.apply(&m)?;
            entries.extend(place(tgt.offset(&e), *off, &xm));
        }
        let a = from_triplets(field, tgt.ambient, src.ambient, merge(entries));
        Ok(tgt.proj.mul(&a.mul(&src.lift)))
    };
    let mut faces = Vec::new();
    let mut degeneracies = Vec::new();
    for k in 0..=top {
        faces.push(if k == 0 { Vec::new() } else { (0..=k).map(|i| map(k, k - 1, OrdinalMap::face(k, i))).collect::<Result<_, _>>()? });
        degeneracies.push(if k == top { Vec::new() } else { (0..=k).map(|j| map(k, k + 1, OrdinalMap::degeneracy(k, j))).collect::<Result<_, _>>()? });
    }
    Ok(SimplicialObject { cat: x.cat.clone(), levels: pres.iter().map(|p| p.dim()).collect(), faces, degeneracies })
}

/// The latching map `L_k X -> X_k` for `1 <= k <= n_max`.
pub fn latching_map(x: &SimplicialObject<VectCat>, k: usize) -> Result<Matrix, SimplicialError> {
    if k == 0 || k > x.n_max() {
        return Err(SimplicialError::Shape(format!("no latching map at level {k}")));
    }
    let pres = skeleton_level(x, k, k - 1)?;
    let parts = pres.blocks.iter().map(|(s, _)| x.apply(s)).collect::<Result<Vec<_>, _>>()?;
    let ev = Matrix::hstack(&parts.iter().collect::<Vec<_>>(), &x.cat.field, x.levels[k]);
    Ok(ev.mul(&pres.lift))
}

/// Skeleton of a cosimplicial module: colimit over injections `[j] -> [k]`, `j <= n`.
pub fn cosimplicial_skeleton(x: &CosimplicialObject<VectCat>, n: usize, top: usize) -> Result<CosimplicialObject<VectCat>, SimplicialError> {
    if n > x.s_max() {
        return Err(SimplicialError::Shape(format!("skeleton degree {n} exceeds truncation {}", x.s_max())));
    }
    let field = &x.cat.field;
    let mut pres = Vec::new();
    for k in 0..=top {
        let maps: Vec<OrdinalMap> = (0..=n.min(k)).flat_map(|j| OrdinalMap::all_injections(j, k)).collect();
        let (blocks, ambient) = blocks_for(maps, |j| x.levels[j], false);
        let mut relations = Vec::new();
        for (iota, off) in &blocks {
            let j = iota.source();
            for i in 0..=j {
                if j == 0 {
                    break;
                }
                let face = OrdinalMap::face(j, i);
                let composite = compose(&face, iota).expect("composable");
                let low_off = blocks.iter().find(|(b, _)| *b == composite).unwrap().1;
                let a = column_block(&Matrix::identity(field, x.levels[j - 1]), low_off);
                let b = column_block(&x.cofaces[j][i], *off);
                relations.extend(sub_vectors(field, &a, &b));
            }
        }
        let (evaluation, identity_block) = if k <= n {
            let parts = blocks.iter().map(|(s, _)| x.apply(s)).collect::<Result<Vec<_>, _>>()?;
            (Some(Matrix::hstack(&parts.iter().collect::<Vec<_>>(), field, x.levels[k])), blocks.iter().find(|(s, _)| s.is_identity()).map(|b| b.1))
        } else {
            (None, None)
        };
        let level_dim = if k <= n { x.levels[k] } else { 0 };
        pres.push(colimit_presentation(field, ColimitInput { blocks, ambient, relations, evaluation, identity_block }, level_dim));
    }
    assemble_cosimplicial(x, &pres, |src, tgt, theta| {
        let mut entries = Vec::new();
        for (iota, off) in &src.blocks {
            let (e, m) = compose(iota, theta).expect("composable").epi_mono();
            let xe = x.apply(&e)?;
            entries.extend(place(tgt.offset(&m), *off, &xe));
        }
        Ok(from_triplets(field, tgt.ambient, src.ambient, merge(entries)))
    })
}

/// Dimension of the space of cosimplicial maps `x -> y` (same truncation).
pub fn cosimplicial_hom_dim(x: &CosimplicialObject<VectCat>, y: &CosimplicialObject<VectCat>) -> Result<usize, SimplicialError> {
    if x.levels.len() != y.levels.len() {
        return Err(SimplicialError::Shape("different truncations".into()));
    }
    let field = &x.cat.field;
    // unknown F_k[r][c] at offset[k] + r * dim x_k + c
    let mut offsets = Vec::new();
    let mut vars = 0;
    for k in 0..x.levels.len() {
        offsets.push(vars);
        vars += x.levels[k] * y.levels[k];
    }
    let var = |k: usize, r: usize, c: usize| offsets[k] + r * x.levels[k] + c;
    let mut rows: Vec<SparseVec> = Vec::new();
    // F_b . X(e) = Y(e) . F_a for e: a -> b
    let mut equation = |a: usize, b: usize, xm: &Matrix, ym: &Matrix| {
        for r in 0..y.levels[b] {
            for c in 0..x.levels[a] {
                let mut entries = Vec::new();
                for t in 0..x.levels[b] {
                    let v = xm.get(t, c);
                    if !v.is_zero() {
                        entries.push((var(b, r, t), v));
                    }
                }
                for t in 0..y.levels[a] {
                    let v = ym.get(r, t);
                    if !v.is_zero() {
                        entries.push((var(a, t, c), v.neg()));
                    }
                }
                rows.push(merge(entries.into_iter().map(|(j, v)| (0, j, v)).collect()).into_iter().map(|(_, j, v)| (j, v)).collect());
            }
        }
    };
    for n in 0..x.levels.len() {
        for i in 0..x.cofaces[n].len() {
            equation(n - 1, n, &x.cofaces[n][i], &y.cofaces[n][i]);
        }
        for j in 0..x.codegeneracies[n].len() {
            equation(n + 1, n, &x.codegeneracies[n][j], &y.codegeneracies[n][j]);
        }
    }
    let m = Matrix::from_sparse_rows(field, rows.len(), vars, rows);
    Ok(vars - m.rank())
}
