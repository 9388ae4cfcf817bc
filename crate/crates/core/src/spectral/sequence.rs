//! The spectral sequence of the column filtration `F^p = sum_{s >= p} C^{s,*}`
//! of a bicomplex, computed from zig-zag representatives in the total complex.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::linalg::{Matrix, QuotientBasis, SparseVec, Subspace};
use crate::linear::ChainComplex;

use super::bicomplex::{total_complex, Bicomplex, TotalComplex, SIGN_CONVENTION};
use super::cssm::CosimplicialSimplicialModule;
use super::SpectralError;

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub s: usize,
    pub t: usize,
    pub dim: usize,
    pub reliable: bool,
    /// Inside the window where this page agrees with the untruncated one.
    pub exact: bool,
    /// Inside the reported region `t >= s`.
    pub in_range: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Differential {
    pub s: usize,
    pub t: usize,
    pub target: (usize, usize),
    pub rows: usize,
    pub cols: usize,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Page {
    pub r: usize,
    pub entries: Vec<Entry>,
    pub differentials: Vec<Differential>,
    #[serde(skip)]
    pub representatives: Vec<Matrix>,
}

impl Page {
    pub fn dim(&self, s: usize, t: usize) -> usize {
        self.entries.iter().find(|e| e.s == s && e.t == t).map_or(0, |e| e.dim)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SSReport {
    pub sign_convention: String,
    pub s_max: usize,
    pub t_max: usize,
    pub r_max: usize,
    pub pages: Vec<Page>,
    /// `(s, t, r)`: the page from which the entry stays constant up to `r_max`.
    pub stabilization: Vec<(usize, usize, usize)>,
    /// Reliable entries that still change after page `max(s+1, t-s+2)`.
    pub late_changes: Vec<(usize, usize)>,
    /// `d_r d_r = 0` and `E_{r+1} = H(E_r, d_r)` on every page.
    pub pages_consistent: bool,
    /// Total homology dimensions by degree `t - s`.
    pub total_homology: Vec<(i64, usize)>,
}

struct Filtered {
    tot: TotalComplex,
}

impl Filtered {
    fn ambient(&self, m: i64) -> usize {
        self.tot.complex.dim(m)
    }

    /// First coordinate of `F^p` in degree `m`.
    fn start(&self, m: i64, p: i64) -> usize {
        let Some(i) = self.tot.layout.degree_index(m) else { return 0 };
        self.tot.layout.blocks[i].iter().find(|b| b.0 as i64 >= p).map_or(self.ambient(m), |b| b.2)
    }

    /// `Z_k^p(m) = F^p cap D^{-1}(F^{p+k})`.
    fn z(&self, m: i64, p: i64, k: i64) -> Vec<SparseVec> {
        let d = self.tot.complex.differential(m);
        let n = self.ambient(m);
        let lo = self.start(m, p);
        let hi = self.start(m - 1, p + k);
        let cols: Vec<usize> = (lo..n).collect();
        let rows: Vec<usize> = (0..hi).collect();
        let sub = d.select_rows(&rows).select_cols(&cols);
        let ker = if rows.is_empty() { Matrix::identity(&d.field().clone(), cols.len()) } else { sub.kernel_basis() };
        ker.sparse_cols().into_iter().map(|v| v.into_iter().map(|(i, x)| (i + lo, x)).collect()).collect()
    }

    /// `B_k^p(m) = F^p cap D(F^{p-k})`.
    fn b(&self, m: i64, p: i64, k: i64) -> Subspace {
        let field = self.tot.complex.field.clone();
        let n = self.ambient(m);
        let up = self.tot.complex.differential(m + 1);
        let lo = self.start(m + 1, p - k);
        let image = Subspace::column_span(&up.select_cols(&(lo..self.ambient(m + 1)).collect::<Vec<_>>()));
        let fp = Subspace::coordinates(&field, n, self.start(m, p)..n);
        image.intersect(&fp)
    }

    fn page_entry(&self, r: usize, s: usize, t: usize) -> QuotientBasis {
        let (m, p, r) = (t as i64 - s as i64, s as i64, r as i64);
        let field = self.tot.complex.field.clone();
        let n = self.ambient(m);
        let num = self.z(m, p, r);
        let mut den = Subspace::span(&field, n, &self.z(m, p + 1, r - 1));
        den = den.sum(&self.b(m, p, r - 1));
        QuotientBasis::new(&field, n, &num, &den)
    }
}

/// The reporting window for every page up to `r_max`.
pub fn reliable(s: usize, t: usize, r_max: usize, s_max: usize, n_max: usize) -> bool {
    s + r_max <= s_max && t + r_max < n_max
}

/// `E_r^{s,t}` of the truncation equals that of any extension past column
/// `s_max` and row `n_max` once `s + r - 1 <= s_max` and `t + max(r, 2) - 1 <= n_max`.
pub fn exact(s: usize, t: usize, r: usize, s_max: usize, n_max: usize) -> bool {
    s + r <= s_max + 1 && t + r.max(2) <= n_max + 1
}

/// Pages `E_1 ..= E_{r_max}` of `b`, with `n_max` the simplicial truncation
/// used for the reliability flags.
pub fn spectral_sequence(b: &Bicomplex, r_max: usize, n_max: usize) -> Result<SSReport, SpectralError> {
    if r_max < 2 {
        return Err(SpectralError::Invalid("pages up to at least E_2 are required".into()));
    }
    b.validate()?;
    let (sm, tm) = (b.s_max(), b.t_max());
    let filt = Filtered { tot: total_complex(b, sm) };
    let cells: Vec<(usize, usize)> = (0..=sm).flat_map(|s| (0..=tm).map(move |t| (s, t))).collect();
    let mut pages = Vec::with_capacity(r_max);
    let mut consistent = true;
    let mut prev: Option<(Vec<usize>, Vec<usize>, Vec<usize>)> = None;
    for r in 1..=r_max {
        let quotients: Vec<QuotientBasis> = cells.par_iter().map(|&(s, t)| filt.page_entry(r, s, t)).collect();
        let dims: Vec<usize> = quotients.iter().map(|q| q.dim()).collect();
        let index = |s: usize, t: usize| s * (tm + 1) + t;
        if let Some((kernels, _, incoming)) = &prev {
            for (c, &(s, t)) in cells.iter().enumerate() {
                if dims[c] != kernels[c] - incoming[c] {
                    consistent = false;
                    let _ = (s, t);
                }
            }
        }
        // d_r: (s, t) -> (s + r, t + r - 1)
        let mut diffs: Vec<Option<Matrix>> = vec![None; cells.len()];
        for (c, &(s, t)) in cells.iter().enumerate() {
            let (s2, t2) = (s + r, t + r - 1);
            let m = t as i64 - s as i64;
            let reps = quotients[c].reps_matrix();
            let image = filt.tot.complex.differential(m).mul(&reps);
            let mat = if s2 <= sm && t2 <= tm {
                let target = &quotients[index(s2, t2)];
                match target.coords(&image) {
                    Some(x) => x,
                    None => {
                        consistent = false;
                        Matrix::zeros(&b.field, target.dim(), reps.cols())
                    }
                }
            } else {
                Matrix::zeros(&b.field, 0, reps.cols())
            };
            diffs[c] = Some(mat);
        }
        let diffs: Vec<Matrix> = diffs.into_iter().map(|m| m.unwrap()).collect();
        for (c, &(s, t)) in cells.iter().enumerate() {
            let (s2, t2) = (s + r, t + r - 1);
            if s2 <= sm && t2 <= tm && !diffs[index(s2, t2)].mul(&diffs[c]).is_zero() {
                consistent = false;
            }
        }
        let kernels: Vec<usize> = diffs.iter().map(|d| d.cols() - d.rank()).collect();
        let mut incoming = vec![0; cells.len()];
        for (c, &(s, t)) in cells.iter().enumerate() {
            let (s2, t2) = (s + r, t + r - 1);
            if s2 <= sm && t2 <= tm {
                incoming[index(s2, t2)] = diffs[c].rank();
            }
        }
        let entries = cells
            .iter()
            .enumerate()
            .map(|(c, &(s, t))| Entry { s, t, dim: dims[c], reliable: reliable(s, t, r_max, sm, n_max), exact: exact(s, t, r, sm, n_max), in_range: t >= s })
            .collect();
        let differentials = cells
            .iter()
            .enumerate()
            .filter(|(c, _)| diffs[*c].rows() > 0 && diffs[*c].cols() > 0)
            .map(|(c, &(s, t))| Differential {
                s,
                t,
                target: (s + r, t + r - 1),
                rows: diffs[c].rows(),
                cols: diffs[c].cols(),
                matrix: diffs[c].to_string_rows(),
            })
            .collect();
        let representatives = quotients.iter().map(|q| q.reps_matrix()).collect();
        pages.push(Page { r, entries, differentials, representatives });
        prev = Some((kernels, dims, incoming));
    }
    let stabilization = cells
        .iter()
        .map(|&(s, t)| {
            let dims: Vec<usize> = pages.iter().map(|p| p.dim(s, t)).collect();
            let last = *dims.last().unwrap();
            let mut r = dims.len();
            while r > 1 && dims[r - 2] == last {
                r -= 1;
            }
            (s, t, r)
        })
        .collect::<Vec<_>>();
    let late_changes = stabilization
        .iter()
        .filter(|&&(s, t, r)| {
            let bound = (s + 1).max((t as i64 - s as i64 + 2).max(0) as usize);
            reliable(s, t, r_max, sm, n_max) && r > bound + 1
        })
        .map(|&(s, t, _)| (s, t))
        .collect();
    Ok(SSReport {
        sign_convention: SIGN_CONVENTION.to_string(),
        s_max: sm,
        t_max: tm,
        r_max,
        pages,
        stabilization,
        late_changes,
        pages_consistent: consistent,
        total_homology: filt.tot.complex.homology_dims(),
    })
}

/// `E_2` from vertical homology and then horizontal cohomology, without the filtration.
pub fn e2_by_iterated_homology(b: &Bicomplex) -> Vec<Vec<usize>> {
    let (sm, tm) = (b.s_max(), b.t_max());
    let field = &b.field;
    let columns: Vec<ChainComplex> = (0..=sm)
        .map(|s| ChainComplex::new(field, 0, b.dims[s].clone(), b.vertical[s].clone()).expect("vertical squares to zero"))
        .collect();
    let mut out = vec![vec![0; tm + 1]; sm + 1];
    for t in 0..=tm {
        // delta on H_t of each column
        let induced: Vec<Matrix> = (0..sm)
            .map(|s| columns[s].induced_on_homology(&columns[s + 1], &b.horizontal[s][t], t as i64).expect("delta is a chain map"))
            .collect();
        for s in 0..=sm {
            let h = columns[s].homology(t as i64).dim;
            let out_rank = if s < sm { induced[s].rank() } else { 0 };
            let in_rank = if s > 0 { induced[s - 1].rank() } else { 0 };
            out[s][t] = h - out_rank - in_rank;
        }
    }
    out
}

/// `E_2^{s,t}` as `pi^s pi_t`: homotopy of each column, then conormalized
/// cohomology of the resulting cosimplicial spaces.
pub fn e2_from_homotopy(y: &CosimplicialSimplicialModule) -> Vec<Vec<usize>> {
    use crate::linear::homotopy_groups;
    let (sm, nm) = (y.s_max(), y.n_max());
    let field = &y.field;
    let pis: Vec<_> = y.columns.iter().map(|c| homotopy_groups(c, nm)).collect();
    let norms: Vec<ChainComplex> = y.columns.iter().map(|c| crate::linear::moore_complex(c).complex).collect();
    let incl: Vec<Vec<Matrix>> = y.columns.iter().map(|c| crate::linear::moore_complex(c).inclusions).collect();
    let mut out = vec![vec![0; nm + 1]; sm + 1];
    for t in 0..=nm {
        // the map induced on pi_t by a column map, in representative coordinates
        let induce = |src: usize, tgt: usize, m: &Matrix| -> Matrix {
            let image = m.mul(&pis[src].representatives[t]);
            let cycles = incl[tgt][t].solve(&image).expect("simplicial maps preserve normalized chains");
            let q = QuotientBasis::new(
                field,
                norms[tgt].dim(t as i64),
                &norms[tgt].differential(t as i64).kernel_basis().sparse_cols(),
                &Subspace::column_span(&norms[tgt].differential(t as i64 + 1)),
            );
            q.coords(&cycles).expect("cycles map to cycles")
        };
        let dims: Vec<usize> = (0..=sm).map(|s| pis[s].dims[t]).collect();
        let normalized: Vec<Matrix> = (0..=sm)
            .map(|s| {
                let maps: Vec<Matrix> = if s == 0 { Vec::new() } else { y.codegeneracies[s - 1].iter().map(|c| induce(s, s - 1, &c.components[t])).collect() };
                crate::linear::common_kernel(field, dims[s], &maps.iter().collect::<Vec<_>>())
            })
            .collect();
        let mut ranks = vec![0; sm + 1];
        for s in 0..sm {
            let mut delta = Matrix::zeros(field, dims[s + 1], dims[s]);
            for (i, d) in y.cofaces[s + 1].iter().enumerate() {
                let m = induce(s, s + 1, &d.components[t]);
                delta = if i % 2 == 0 { delta.add(&m) } else { delta.sub(&m) };
            }
            ranks[s] = delta.mul(&normalized[s]).rank();
        }
        for s in 0..=sm {
            out[s][t] = normalized[s].cols() - ranks[s] - if s > 0 { ranks[s - 1] } else { 0 };
        }
    }
    out
}

impl SSReport {
    pub fn page(&self, r: usize) -> Option<&Page> {
        self.pages.iter().find(|p| p.r == r)
    }

    /// Tab-separated table for one page, preceded by `#` header lines.
    pub fn page_tsv(&self, r: usize, header: &[String]) -> String {
        let mut out = String::new();
        for h in header {
            let _ = writeln!(out, "# {h}");
        }
        let _ = writeln!(out, "# {}", self.sign_convention);
        let _ = writeln!(out, "# reliable: s + {r} <= {} and t + {r} <= n_max - 1", self.s_max, r = self.r_max);
        let _ = writeln!(out, "# exact on page r: s + r <= {} and t + max(r, 2) <= n_max + 1", self.s_max + 1);
        let _ = writeln!(out, "s\tt\tdim\tflags");
        if let Some(p) = self.page(r) {
            for e in &p.entries {
                let mut flags = Vec::new();
                if !e.reliable {
                    flags.push("unreliable");
                }
                if !e.exact {
                    flags.push("inexact");
                }
                if !e.in_range {
                    flags.push("masked");
                }
                let flags = if flags.is_empty() { "-".to_string() } else { flags.join(",") };
                let _ = writeln!(out, "{}\t{}\t{}\t{}", e.s, e.t, e.dim, flags);
            }
        }
        out
    }

    /// The differentials of one page, one block per nonzero source and target.
    pub fn differentials_tsv(&self, r: usize) -> String {
        let mut out = String::new();
        if let Some(p) = self.page(r) {
            for d in &p.differentials {
                let _ = writeln!(out, "d{r} ({},{}) -> ({},{})\t{}x{}", d.s, d.t, d.target.0, d.target.1, d.rows, d.cols);
                for row in &d.matrix {
                    let _ = writeln!(out, "{}", row.join("\t"));
                }
            }
        }
        out
    }

    /// `sum_s dim E_r^{s, m+s}` by total degree, for the last page.
    pub fn last_page_by_degree(&self) -> Vec<(i64, usize)> {
        let p = self.pages.last().expect("at least one page");
        self.total_homology
            .iter()
            .map(|&(m, _)| (m, p.entries.iter().filter(|e| e.t as i64 - e.s as i64 == m).map(|e| e.dim).sum()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::FiniteSimplicialSet;
    use crate::linalg::Field;
    use crate::simplicial::chains_on;
    use crate::spectral::{bicomplex_module, conormalize_bicomplex, random_bicomplex, Piece};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Page dimensions predicted from the pieces alone.
    fn predicted(pieces: &[Piece], r: usize, s_max: usize, t_max: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![0; t_max + 1]; s_max + 1];
        for p in pieces {
            match *p {
                Piece::Point { s, t } => out[s][t] += 1,
                Piece::VerticalPair { .. } => {}
                Piece::Staircase { s, t, len } => {
                    if r <= len {
                        out[s][t] += 1;
                        out[s + len][t + len - 1] += 1;
                    }
                }
            }
        }
        out
    }

    #[test]
    fn column_zero_only() {
        let f = Field::f2();
        let x = chains_on(&f, &FiniteSimplicialSet::boundary(2), 4);
        let y = CosimplicialSimplicialModule::from_simplicial(&x, 2);
        let b = conormalize_bicomplex(&y).unwrap().bicomplex;
        let report = spectral_sequence(&b, 3, 4).unwrap();
        assert!(report.pages_consistent);
        let pi = crate::linear::homotopy_groups(&x, 4);
        let e2 = report.page(2).unwrap();
        for e in &e2.entries {
            assert_eq!(e.dim, if e.s == 0 { pi.dims[e.t] } else { 0 });
        }
        assert!(report.pages.iter().all(|p| p.differentials.iter().all(|d| d.matrix.iter().flatten().all(|x| x == "0"))));
    }

    #[test]
    fn random_pages_follow_the_pieces() {
        for seed in 0..6 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = if seed % 2 == 0 { Field::f2() } else { Field::prime(5).unwrap() };
            let rb = random_bicomplex(&f, 3, 3, 5, &mut rng).unwrap();
            let report = spectral_sequence(&rb.bicomplex, 4, 3).unwrap();
            assert!(report.pages_consistent, "seed {seed}");
            for page in &report.pages {
                let want = predicted(&rb.pieces, page.r, 3, 3);
                for e in &page.entries {
                    assert_eq!(e.dim, want[e.s][e.t], "seed {seed} page {} at ({},{})", page.r, e.s, e.t);
                }
            }
            let e2 = e2_by_iterated_homology(&rb.bicomplex);
            for e in &report.page(2).unwrap().entries {
                assert_eq!(e.dim, e2[e.s][e.t]);
            }
            // the last page sums to the total homology
            assert_eq!(report.last_page_by_degree(), report.total_homology);
        }
    }

    #[test]
    fn homotopy_path_agrees_on_realized_bicomplexes() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let f = Field::f2();
        let rb = random_bicomplex(&f, 2, 2, 4, &mut rng).unwrap();
        let y = bicomplex_module(&rb.source, 2, 3).unwrap();
        let b = conormalize_bicomplex(&y).unwrap().bicomplex;
        let report = spectral_sequence(&b, 2, 3).unwrap();
        let from_pi = e2_from_homotopy(&y);
        for e in &report.page(2).unwrap().entries {
            assert_eq!(e.dim, from_pi[e.s][e.t], "({},{})", e.s, e.t);
        }
    }

    #[test]
    fn report_is_deterministic_and_serializes() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rb = random_bicomplex(&Field::f2(), 3, 3, 6, &mut rng).unwrap();
        let a = spectral_sequence(&rb.bicomplex, 3, 3).unwrap();
        let b = spectral_sequence(&rb.bicomplex, 3, 3).unwrap();
        let (ja, jb) = (serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(ja, jb);
        let tsv = a.page_tsv(2, &["seed 5".to_string()]);
        assert!(tsv.contains("s\tt\tdim\tflags"));
        assert_eq!(tsv.lines().filter(|l| !l.starts_with('#')).count(), 1 + 16);
        assert!(spectral_sequence(&rb.bicomplex, 1, 3).is_err());
    }

    /// `x0 (0,0) -> y0 (1,0) <- x1 (1,1) -> y1 (2,1)`: `d_2` joins `(0,0)` and `(2,1)`.
    fn staircase() -> Bicomplex {
        let mut g = crate::spectral::GeneratorSet::default();
        let x0 = g.add(vec![0, 0]);
        let y0 = g.add(vec![1, 0]);
        let x1 = g.add(vec![1, 1]);
        let y1 = g.add(vec![2, 1]);
        g.edges.extend([(0, x0, y0), (1, x1, y0), (0, x1, y1)]);
        crate::spectral::MultiComplex::from_generators(&Field::f2(), vec![2, 1], &g).unwrap().to_bicomplex().unwrap()
    }

    #[test]
    fn exact_window_is_tight() {
        let b = staircase();
        let full = spectral_sequence(&b, 3, 1).unwrap();
        assert_eq!((full.page(2).unwrap().dim(0, 0), full.page(3).unwrap().dim(0, 0)), (1, 0));
        // one column short: E_2 is still right, E_3 is not
        let cols = spectral_sequence(&b.truncate(1, 1), 2, 1).unwrap();
        assert!(cols.page(2).unwrap().entries.iter().find(|e| (e.s, e.t) == (0, 0)).unwrap().exact);
        assert_eq!(cols.page(2).unwrap().dim(0, 0), 1);
        let cols = spectral_sequence(&b.truncate(1, 1), 3, 1).unwrap();
        assert!(!cols.page(3).unwrap().entries.iter().find(|e| (e.s, e.t) == (0, 0)).unwrap().exact);
        assert_eq!(cols.page(3).unwrap().dim(0, 0), 1);
        // one row short: E_2 at (0,0) is wrong and flagged
        let rows = spectral_sequence(&b.truncate(2, 0), 2, 0).unwrap();
        assert!(!rows.page(2).unwrap().entries.iter().find(|e| (e.s, e.t) == (0, 0)).unwrap().exact);
        assert_eq!(rows.page(2).unwrap().dim(0, 0), 0);
    }

    #[test]
    fn exact_entries_survive_extension() {
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(100 + seed);
            let rb = random_bicomplex(&Field::f2(), 5, 5, 8, &mut rng).unwrap();
            for r_max in 2..=3 {
                let full = spectral_sequence(&rb.bicomplex, r_max, 5).unwrap();
                for (s_cut, t_cut) in [(1, 1), (2, 3), (3, 2), (4, 4)] {
                    let cut = spectral_sequence(&rb.bicomplex.truncate(s_cut, t_cut), r_max, t_cut).unwrap();
                    for page in &cut.pages {
                        for e in page.entries.iter().filter(|e| e.exact) {
                            assert_eq!(e.dim, full.page(page.r).unwrap().dim(e.s, e.t), "seed {seed} cut ({s_cut},{t_cut}) E_{} ({},{})", page.r, e.s, e.t);
                        }
                    }
                }
            }
        }
    }
}
