//! Random bounded bicomplexes built from staircases, vertical pairs and
//! isolated generators, disguised by a random basis in every bidegree.

use rand::Rng;
use serde::Serialize;

use super::bicomplex::Bicomplex;
use super::multi::{GeneratorSet, MultiComplex};
use super::SpectralError;
use crate::linalg::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Piece {
    /// One generator with no differentials.
    Point { s: usize, t: usize },
    /// `a` at `(s, t)` with vertical differential onto `b` at `(s, t - 1)`.
    VerticalPair { s: usize, t: usize },
    /// `x_j` at `(s + j, t + j)` and `y_j` at `(s + j + 1, t + j)` for
    /// `j < len`, with `delta x_j = y_j` and `d x_j = y_{j-1}`.
    Staircase { s: usize, t: usize, len: usize },
}

impl Piece {
    fn fits(&self, s_max: usize, t_max: usize) -> bool {
        match *self {
            Piece::Point { s, t } => s <= s_max && t <= t_max,
            Piece::VerticalPair { s, t } => t >= 1 && s <= s_max && t <= t_max,
            Piece::Staircase { s, t, len } => len >= 1 && s + len <= s_max && t + len - 1 <= t_max,
        }
    }

    fn add_to(&self, g: &mut GeneratorSet) {
        match *self {
            Piece::Point { s, t } => {
                g.add(vec![s, t]);
            }
            Piece::VerticalPair { s, t } => {
                let a = g.add(vec![s, t]);
                let b = g.add(vec![s, t - 1]);
                g.edges.push((1, a, b));
            }
            Piece::Staircase { s, t, len } => {
                let mut prev_y = None;
                for j in 0..len {
                    let x = g.add(vec![s + j, t + j]);
                    let y = g.add(vec![s + j + 1, t + j]);
                    g.edges.push((0, x, y));
                    if let Some(py) = prev_y {
                        g.edges.push((1, x, py));
                    }
                    prev_y = Some(y);
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct RandomBicomplex {
    pub bicomplex: Bicomplex,
    pub source: MultiComplex,
    pub pieces: Vec<Piece>,
}

/// `pieces` random pieces that fit in `s <= s_max`, `t <= t_max`.
pub fn random_bicomplex(field: &Field, s_max: usize, t_max: usize, pieces: usize, rng: &mut impl Rng) -> Result<RandomBicomplex, SpectralError> {
    let mut chosen = Vec::with_capacity(pieces);
    let mut g = GeneratorSet::default();
    while chosen.len() < pieces {
        let (s, t) = (rng.gen_range(0..=s_max), rng.gen_range(0..=t_max));
        let piece = match rng.gen_range(0..4) {
            0 => Piece::Point { s, t },
            1 => Piece::VerticalPair { s, t },
            _ => Piece::Staircase { s, t, len: rng.gen_range(1..=s_max.max(1)) },
        };
        if piece.fits(s_max, t_max) {
            piece.add_to(&mut g);
            chosen.push(piece);
        }
    }
    let plain = MultiComplex::from_generators(field, vec![s_max, t_max], &g)?;
    let source = plain.change_basis(rng);
    Ok(RandomBicomplex { bicomplex: source.to_bicomplex()?, source, pieces: chosen })
}
