use std::fmt;

use serde::{Deserialize, Serialize};

use super::DeltaError;

/// A monotone map `[source] -> [target]` between ordinals `[n] = {0, ..., n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrdinalMap {
    source: usize,
    target: usize,
    values: Vec<usize>,
}

/// Normal form `f = d^{i_1} ... d^{i_k} s^{j_1} ... s^{j_l}` with
/// `i_1 > ... > i_k` and `j_1 < ... < j_l` (rightmost factor acts first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct EpiMonoWord {
    pub degeneracies: Vec<usize>,
    pub faces: Vec<usize>,
}

impl OrdinalMap {
    pub fn new(source: usize, target: usize, values: Vec<usize>) -> Result<OrdinalMap, DeltaError> {
        if values.len() != source + 1 {
            return Err(DeltaError::InvalidMap(format!("expected {} values, got {}", source + 1, values.len())));
        }
        if values.iter().any(|&v| v > target) {
            return Err(DeltaError::InvalidMap(format!("value exceeds target {target}")));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(DeltaError::InvalidMap(format!("{values:?} is not monotone")));
        }
        Ok(OrdinalMap { source, target, values })
    }

    pub(crate) fn new_unchecked(source: usize, target: usize, values: Vec<usize>) -> OrdinalMap {
        debug_assert!(OrdinalMap::new(source, target, values.clone()).is_ok());
        OrdinalMap { source, target, values }
    }

    pub fn identity(n: usize) -> OrdinalMap {
        OrdinalMap { source: n, target: n, values: (0..=n).collect() }
    }

    /// The coface `d^i: [n-1] -> [n]` skipping `i`.
    pub fn face(n: usize, i: usize) -> OrdinalMap {
        assert!(n >= 1 && i <= n, "face d^{i} into [{n}] does not exist");
        OrdinalMap { source: n - 1, target: n, values: (0..n).map(|j| if j < i { j } else { j + 1 }).collect() }
    }

    /// The codegeneracy `s^i: [n+1] -> [n]` hitting `i` twice.
    pub fn degeneracy(n: usize, i: usize) -> OrdinalMap {
        assert!(i <= n, "degeneracy s^{i} onto [{n}] does not exist");
        OrdinalMap { source: n + 1, target: n, values: (0..=n + 1).map(|j| if j <= i { j } else { j - 1 }).collect() }
    }

    pub fn constant(source: usize, target: usize, v: usize) -> OrdinalMap {
        assert!(v <= target);
        OrdinalMap { source, target, values: vec![v; source + 1] }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn at(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0 && self.values[self.source] == self.target && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// `self` followed by `g`, i.e. `g . self`.
    pub fn then(&self, g: &OrdinalMap) -> Result<OrdinalMap, DeltaError> {
        compose(self, g)
    }

    /// All monotone maps `[n] -> [m]` in lexicographic order of their values.
    pub fn all(n: usize, m: usize) -> Vec<OrdinalMap> {
        let mut out = Vec::new();
        let mut cur = vec![0usize; n + 1];
        loop {
            out.push(OrdinalMap { source: n, target: m, values: cur.clone() });
            // next weakly increasing sequence
            let mut k = n as isize;
            while k >= 0 && cur[k as usize] == m {
                k -= 1;
            }
            if k < 0 {
                break;
            }
            let v = cur[k as usize] + 1;
            for x in cur.iter_mut().skip(k as usize) {
                *x = v;
            }
        }
        out
    }

    pub fn all_surjections(n: usize, m: usize) -> Vec<OrdinalMap> {
        if m > n {
            return Vec::new();
        }
        OrdinalMap::all(n, m).into_iter().filter(|f| f.is_surjective()).collect()
    }

    pub fn all_injections(n: usize, m: usize) -> Vec<OrdinalMap> {
        if n > m {
            return Vec::new();
        }
        OrdinalMap::all(n, m).into_iter().filter(|f| f.is_injective()).collect()
    }

    /// Factor as `mono . epi`.
    pub fn epi_mono(&self) -> (OrdinalMap, OrdinalMap) {
        let mut image: Vec<usize> = self.values.clone();
        image.dedup();
        let j = image.len() - 1;
        let epi = OrdinalMap {
            source: self.source,
            target: j,
            values: self.values.iter().map(|v| image.binary_search(v).unwrap()).collect(),
        };
        let mono = OrdinalMap { source: j, target: self.target, values: image };
        (epi, mono)
    }

    /// Elementary factors in application order: `self = e_last . ... . e_1`.
    pub fn elementary_chain(&self) -> Vec<OrdinalMap> {
        let w = epi_mono_factor(self);
        let mut out = Vec::new();
        let mut level = self.source;
        for &j in w.degeneracies.iter().rev() {
            out.push(OrdinalMap::degeneracy(level - 1, j));
            level -= 1;
        }
        for &i in w.faces.iter().rev() {
            out.push(OrdinalMap::face(level + 1, i));
            level += 1;
        }
        out
    }
}

impl fmt::Display for OrdinalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.values.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]->[{}]({})", self.source, self.target, v.join(","))
    }
}

/// Diagrammatic composite: apply `f`, then `g`.
pub fn compose(f: &OrdinalMap, g: &OrdinalMap) -> Result<OrdinalMap, DeltaError> {
    if f.target != g.source {
        return Err(DeltaError::Composition { left: f.to_string(), right: g.to_string() });
    }
    Ok(OrdinalMap { source: f.source, target: g.target, values: f.values.iter().map(|&i| g.values[i]).collect() })
}

pub fn epi_mono_factor(f: &OrdinalMap) -> EpiMonoWord {
    let degeneracies: Vec<usize> = (0..f.source).filter(|&j| f.values[j] == f.values[j + 1]).collect();
    let mut faces: Vec<usize> = (0..=f.target).filter(|v| f.values.binary_search(v).is_err()).collect();
    faces.reverse();
    EpiMonoWord { degeneracies, faces }
}

/// Rebuilds the map `[source] -> ...` described by a normal-form word.
pub fn recompose(word: &EpiMonoWord, source: usize) -> Result<OrdinalMap, DeltaError> {
    let mut acc = OrdinalMap::identity(source);
    let mut level = source;
    for &j in word.degeneracies.iter().rev() {
        if level == 0 || j >= level {
            return Err(DeltaError::InvalidWord(format!("s^{j} cannot act on [{level}]")));
        }
        acc = compose(&acc, &OrdinalMap::degeneracy(level - 1, j))?;
        level -= 1;
    }
    for &i in word.faces.iter().rev() {
        if i > level + 1 {
            return Err(DeltaError::InvalidWord(format!("d^{i} cannot act on [{level}]")));
        }
        acc = compose(&acc, &OrdinalMap::face(level + 1, i))?;
        level += 1;
    }
    Ok(acc)
}

impl EpiMonoWord {
    pub fn is_normal(&self) -> bool {
        self.degeneracies.windows(2).all(|w| w[0] < w[1]) && self.faces.windows(2).all(|w| w[0] > w[1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_compose_to_identity() {
        let id = OrdinalMap::identity(2);
        assert_eq!(compose(&id, &id).unwrap(), id);
    }

    #[test]
    fn degeneracy_after_face_is_identity() {
        let d1 = OrdinalMap::face(1, 1);
        let s0 = OrdinalMap::degeneracy(0, 0);
        assert_eq!(compose(&d1, &s0).unwrap(), OrdinalMap::identity(0));
    }

    #[test]
    fn mismatched_composition_is_an_error() {
        assert!(compose(&OrdinalMap::identity(1), &OrdinalMap::identity(2)).is_err());
    }

    #[test]
    fn enumeration_counts_are_binomial() {
        // monotone [n] -> [m] number C(n+m+1, n+1)
        fn binom(a: usize, b: usize) -> usize {
            (0..b).fold(1, |acc, i| acc * (a - i) / (i + 1))
        }
        for n in 0..4 {
            for m in 0..4 {
                assert_eq!(OrdinalMap::all(n, m).len(), binom(n + m + 1, n + 1));
            }
        }
        assert_eq!(OrdinalMap::all(1, 3).len(), 10);
    }

    #[test]
    fn small_words() {
        assert_eq!(epi_mono_factor(&OrdinalMap::identity(3)), EpiMonoWord::default());
        let w = epi_mono_factor(&OrdinalMap::face(2, 2));
        assert_eq!(w.faces, vec![2]);
        assert!(w.degeneracies.is_empty());
        let c = OrdinalMap::constant(2, 1, 1);
        let w = epi_mono_factor(&c);
        assert!(w.is_normal());
        assert_eq!(recompose(&w, 2).unwrap(), c);
    }

    #[test]
    fn elementary_chain_recomposes() {
        for f in OrdinalMap::all(3, 2) {
            let chain = f.elementary_chain();
            let mut acc = OrdinalMap::identity(3);
            for e in &chain {
                acc = compose(&acc, e).unwrap();
            }
            assert_eq!(acc, f);
        }
    }
}
