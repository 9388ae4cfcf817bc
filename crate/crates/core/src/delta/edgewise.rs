//! Edgewise subdivision `F_k` of the simplex category and the maps that
//! compare a subdivided object with its copies.
//!
//! An ordinal `[n]` has `n + 1` elements; `F_k` concatenates `k` copies, so
//! `F_k[n] = [k(n+1) - 1]`.

use serde::{Deserialize, Serialize};

use super::ordinal::OrdinalMap;
use super::DeltaError;

/// Which of the `k` copies the comparison map lands in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionSpec {
    k: usize,
    l: usize,
}

impl SubdivisionSpec {
    pub fn new(k: usize, l: usize) -> Result<SubdivisionSpec, DeltaError> {
        if k == 0 || l == 0 || l > k {
            return Err(DeltaError::InvalidSubdivision { k, l });
        }
        Ok(SubdivisionSpec { k, l })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }
}

pub fn edgewise_object(k: usize, n: usize) -> usize {
    assert!(k >= 1, "fold count must be positive");
    k * (n + 1) - 1
}

pub fn edgewise_map(k: usize, phi: &OrdinalMap) -> OrdinalMap {
    assert!(k >= 1, "fold count must be positive");
    let (n1, n2) = (phi.source() + 1, phi.target() + 1);
    let mut values = Vec::with_capacity(k * n1);
    for t in 0..k {
        for i in 0..n1 {
            values.push(t * n2 + phi.at(i));
        }
    }
    OrdinalMap::new_unchecked(k * n1 - 1, k * n2 - 1, values)
}

/// The inclusion of the `l`-th copy, `i -> (l-1) n + i`, for an ordinal with
/// `elements` elements.
pub fn u_component(spec: SubdivisionSpec, elements: usize) -> OrdinalMap {
    assert!(elements >= 1);
    let n = elements;
    let values = (0..n).map(|i| (spec.l - 1) * n + i).collect();
    OrdinalMap::new_unchecked(n - 1, spec.k * n - 1, values)
}

/// The structure map `i -> pattern(i) * n + i` attached to a monotone
/// `pattern: [n-1] -> [k-1]`.
pub fn h_structure_map(k: usize, pattern: &OrdinalMap) -> Result<OrdinalMap, DeltaError> {
    if pattern.target() + 1 != k {
        return Err(DeltaError::InvalidMap(format!("pattern {pattern} must land in [{}]", k.saturating_sub(1))));
    }
    let n = pattern.source() + 1;
    let values: Vec<usize> = (0..n).map(|i| pattern.at(i) * n + i).collect();
    assert!(values.windows(2).all(|w| w[0] <= w[1]), "structure map must be monotone");
    Ok(OrdinalMap::new_unchecked(n - 1, k * n - 1, values))
}
