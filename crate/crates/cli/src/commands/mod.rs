pub mod aq;
pub mod cobar;
pub mod kan;
pub mod selftest;
pub mod subdiv;

use std::fmt::Write;

use anyhow::Result;
use bkcomp::spectral::exact;
use bkcomp::triple::Completion;

use crate::config::Output;

/// The reliability and exactness windows of a completion run.
pub fn completion_windows(s_max: usize, t_max: usize, r_max: usize) -> Vec<String> {
    let n_max = t_max + 1;
    vec![
        format!("reliable: s + {r_max} <= {s_max} and t + {r_max} < {n_max}"),
        format!("exact on page r: s + r <= {} and t + max(r, 2) <= {}", s_max + 1, n_max + 1),
        format!("homology degree m reliable: cells (s, m + s + 1) below t = {n_max}, top two tower stages agree"),
    ]
}

/// `completion.json`, one `e{r}.tsv` and `d{r}.tsv` per page, and `homology.tsv`.
pub fn write_completion(out: &mut Output, c: &Completion) -> Result<()> {
    out.json("completion.json", c)?;
    let lines = out.header_lines();
    for p in &c.report.pages {
        out.raw(&format!("e{}.tsv", p.r), c.report.page_tsv(p.r, &lines))?;
        out.text(&format!("d{}.tsv", p.r), &c.report.differentials_tsv(p.r))?;
    }
    let mut table = String::from("degree\tdim\tprevious_stage\tsource_dim\tcomparison_rank\treliable\n");
    for d in &c.degrees {
        let _ = writeln!(table, "{}\t{}\t{}\t{}\t{}\t{}", d.degree, d.dim, d.previous_stage, d.source_dim, d.comparison_rank, d.reliable);
    }
    out.text("homology.tsv", &table)
}

/// Entries of `E_2` at `s > 0` inside the exact window that are nonzero.
pub fn e2_off_axis(c: &Completion) -> Vec<(usize, usize, usize)> {
    let Some(p) = c.report.page(2) else { return Vec::new() };
    p.entries
        .iter()
        .filter(|e| e.s > 0 && e.dim > 0 && exact(e.s, e.t, 2, c.s_max, c.n_max))
        .map(|e| (e.s, e.t, e.dim))
        .collect()
}
