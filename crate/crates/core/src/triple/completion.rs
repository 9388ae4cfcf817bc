//! Completion: the linearized resolution, its total complex and spectral
//! sequence, the comparison map out of `SX`, and naturality in the triple.

use serde::Serialize;

use crate::linalg::{Field, Matrix};
use crate::linear::{moore_complex, SimplicialModule};
use crate::simplicial::{check_cosimplicial_homotopy, ConcreteCategory, LevelMap, SimplicialObject, VectCat};
use crate::spectral::{conormalize_bicomplex, spectral_sequence, tot_homology_map, tot_truncation, CosimplicialSimplicialModule, SSReport};

use super::descriptor::{chain, Cotriple, Obj, Triple, TripleMap};
use super::resolution::{induced_map, mixed_resolution, triple_map_homotopy, MixedResolution};
use super::TripleError;

/// Categories whose objects have an underlying simplicial module.
pub trait Linearize: ConcreteCategory {
    fn base_field(&self) -> &Field;
    fn module(&self, x: &Self::Obj, n_max: usize) -> Result<SimplicialModule, TripleError>;
    fn module_map(&self, f: &Self::Mor, n_max: usize) -> Result<LevelMap<VectCat>, TripleError>;
}

impl Linearize for VectCat {
    fn base_field(&self) -> &Field {
        &self.field
    }

    fn module(&self, x: &usize, n_max: usize) -> Result<SimplicialModule, TripleError> {
        Ok(SimplicialObject::constant(self, x, n_max))
    }

    fn module_map(&self, f: &Matrix, n_max: usize) -> Result<LevelMap<VectCat>, TripleError> {
        Ok(LevelMap { components: vec![f.clone(); n_max + 1] })
    }
}

/// The cosimplicial simplicial module underlying a resolution, augmentation dropped.
pub fn linearize<C: Linearize>(res: &MixedResolution<C>, n_max: usize) -> Result<CosimplicialSimplicialModule, TripleError> {
    let c = &res.object.cat;
    let lift = |rows: &Vec<Vec<C::Mor>>| -> Result<Vec<Vec<LevelMap<VectCat>>>, TripleError> {
        rows.iter().map(|r| r.iter().map(|f| c.module_map(f, n_max)).collect()).collect()
    };
    let y = CosimplicialSimplicialModule {
        field: c.base_field().clone(),
        columns: res.object.levels.iter().map(|x| c.module(x, n_max)).collect::<Result<_, _>>()?,
        cofaces: lift(&res.object.cofaces)?,
        codegeneracies: lift(&res.object.codegeneracies)?,
    };
    y.validate()?;
    Ok(y)
}

/// A cosimplicial map given level by level, regrouped into simplicial maps per column.
fn column_maps<C: Linearize>(c: &C, map: &LevelMap<C>, n_max: usize) -> Result<Vec<LevelMap<VectCat>>, TripleError> {
    map.components.iter().map(|f| c.module_map(f, n_max)).collect()
}

/// Maps `H_m(Tot)` between the linearizations of two resolutions, for every
/// total degree `m` of the source.
pub fn homology_maps<C: Linearize>(
    src: &MixedResolution<C>,
    tgt: &MixedResolution<C>,
    map: &LevelMap<C>,
    n_max: usize,
) -> Result<Vec<(i64, Matrix)>, TripleError> {
    let c = &src.object.cat;
    let (a, b) = (linearize(src, n_max)?, linearize(tgt, n_max)?);
    let cols = column_maps(c, map, n_max)?;
    let lo = -(src.s_max() as i64);
    (lo..=n_max as i64).map(|m| Ok((m, tot_homology_map(&a, &b, &cols, m)?))).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CompletionDegree {
    pub degree: i64,
    /// `dim H_m(Tot)` at the top stage.
    pub dim: usize,
    /// `dim H_m` one stage below.
    pub previous_stage: usize,
    /// `dim pi_m(SX)`.
    pub source_dim: usize,
    /// Rank of the completion map `pi_m(SX) -> H_m(Tot)`.
    pub comparison_rank: usize,
    pub reliable: bool,
}

impl CompletionDegree {
    pub fn comparison_is_iso(&self) -> bool {
        self.comparison_rank == self.dim && self.comparison_rank == self.source_dim
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Completion {
    pub s_max: usize,
    pub t_max: usize,
    pub n_max: usize,
    pub cofibrant_replacement: bool,
    pub degrees: Vec<CompletionDegree>,
    pub report: SSReport,
}

impl Completion {
    pub fn degree(&self, m: i64) -> Option<&CompletionDegree> {
        self.degrees.iter().find(|d| d.degree == m)
    }

    pub fn reliable_degrees(&self) -> impl Iterator<Item = &CompletionDegree> {
        self.degrees.iter().filter(|d| d.reliable)
    }
}

/// `d^s ... d^1 aug : SX -> level s`, the coaugmentation into every level.
fn coaugmentation<C: ConcreteCategory>(res: &MixedResolution<C>) -> Result<LevelMap<C>, TripleError> {
    let c = &res.object.cat;
    let mut maps = vec![res.augmentation.clone()];
    let mut components = vec![res.augmentation.clone()];
    for s in 1..=res.s_max() {
        maps.push(res.object.cofaces[s][s].clone());
        components.push(chain(c, &maps)?);
    }
    Ok(LevelMap { components })
}

/// Total homology of the linearized resolution in degrees `-s_max..=t_max`,
/// the spectral sequence up to `E_{r_max}`, and the comparison with `pi_*(SX)`.
///
/// Degree `m` is reliable when every cell `(s, m + s + 1)`, `s <= s_max`, lies
/// below the simplicial truncation `t_max + 1`, and the top two stages of the
/// Tot tower agree in degree `m`.
pub fn completion<S, R>(s: &S, r: &R, x: &Obj<R::Cat>, s_max: usize, t_max: usize, r_max: usize) -> Result<Completion, TripleError>
where
    S: Cotriple,
    R: Triple<Cat = S::Cat>,
    R::Cat: Linearize,
{
    let c = r.category();
    let n_max = t_max + 1;
    let res = mixed_resolution(s, r, x, s_max)?;
    let y = linearize(&res, n_max)?;
    let report = spectral_sequence(&conormalize_bicomplex(&y)?.bicomplex, r_max, n_max)?;
    let top = tot_truncation(&y, s_max)?;
    let below = if s_max == 0 { None } else { Some(tot_truncation(&y, s_max - 1)?) };

    let source = c.module(&res.augmented, n_max)?;
    let source_complex = moore_complex(&source).complex;
    let constant = CosimplicialSimplicialModule::from_simplicial(&source, s_max);
    let cols = column_maps(c, &coaugmentation(&res)?, n_max)?;

    let mut degrees = Vec::new();
    for m in -(s_max as i64)..=t_max as i64 {
        let dim = top.complex().homology(m).dim;
        let previous_stage = below.as_ref().map_or(dim, |b| b.complex().homology(m).dim);
        let source_dim = if m < 0 { 0 } else { source_complex.homology(m).dim };
        let comparison_rank = tot_homology_map(&constant, &y, &cols, m)?.rank();
        let within = m + s_max as i64 + 1 <= n_max as i64;
        degrees.push(CompletionDegree { degree: m, dim, previous_stage, source_dim, comparison_rank, reliable: within && dim == previous_stage });
    }
    Ok(Completion { s_max, t_max, n_max, cofibrant_replacement: s.is_cofibrant_replacement(), degrees, report })
}

#[derive(Clone, Debug, Serialize)]
pub struct Naturality {
    /// Whether the induced cosimplicial maps differ at some level.
    pub cochain_maps_differ: bool,
    pub witness_verified: bool,
    /// `(m, f^, g^)` on total homology, in degrees above `-s_max`; the lowest
    /// degree only sees the cut-off column.
    #[serde(skip)]
    pub maps: Vec<(i64, Matrix, Matrix)>,
    pub equal: bool,
}

/// Compares the maps induced on completions by two triple maps `R => T`,
/// after verifying the homotopy that connects their resolutions.
#[allow(clippy::too_many_arguments)]
pub fn completion_naturality<S, R, T, F, G>(
    s: &S,
    r: &R,
    t: &T,
    f: &F,
    g: &G,
    x: &Obj<R::Cat>,
    s_max: usize,
    t_max: usize,
) -> Result<Naturality, TripleError>
where
    S: Cotriple,
    R: Triple<Cat = S::Cat>,
    T: Triple<Cat = S::Cat>,
    F: TripleMap<Cat = S::Cat>,
    G: TripleMap<Cat = S::Cat>,
    S::Cat: Linearize,
{
    let c = r.category();
    let n_max = t_max + 1;
    let witness = triple_map_homotopy(s, r, t, f, g, x, s_max)?;
    let (src, tgt) = (mixed_resolution(s, r, x, s_max)?, mixed_resolution(s, t, x, s_max)?);
    let (_, fmap) = induced_map(s, r, t, f, x, s_max)?;
    let (_, gmap) = induced_map(s, r, t, g, x, s_max)?;
    let cochain_maps_differ = fmap.components.iter().zip(&gmap.components).any(|(a, b)| !c.mor_eq(a, b));
    let witness_verified = check_cosimplicial_homotopy(&src.object, &tgt.object, &fmap, &gmap, &witness)?;
    let fh = homology_maps(&src, &tgt, &fmap, n_max)?;
    let gh = homology_maps(&src, &tgt, &gmap, n_max)?;
    let lowest = -(s_max as i64);
    let maps: Vec<_> = fh.into_iter().zip(gh).filter(|((m, _), _)| s_max == 0 || *m > lowest).map(|((m, a), (_, b))| (m, a, b)).collect();
    let equal = maps.iter().all(|(_, a, b)| a == b);
    Ok(Naturality { cochain_maps_differ, witness_verified, maps, equal })
}
