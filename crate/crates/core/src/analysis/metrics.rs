//! Ranking metrics over per-query relevance grades listed in rank order.

use crate::{Error, Result};

fn check(queries: usize, k: usize) -> Result<()> {
    if queries == 0 {
        return Err(Error::input("no queries"));
    }
    if k == 0 {
        return Err(Error::config("cutoff k must be positive"));
    }
    Ok(())
}

/// Mean reciprocal rank of the first item with a positive grade within the
/// top `k`; a query with none contributes 0.
pub fn mrr_at_k<L: AsRef<[u32]>>(runs: &[L], k: usize) -> Result<f64> {
    check(runs.len(), k)?;
    let total: f64 = runs
        .iter()
        .map(|r| {
            r.as_ref()
                .iter()
                .take(k)
                .position(|&g| g > 0)
                .map_or(0.0, |p| 1.0 / (p + 1) as f64)
        })
        .sum();
    Ok(total / runs.len() as f64)
}

fn dcg(grades: impl Iterator<Item = u32>) -> f64 {
    grades
        .enumerate()
        .map(|(i, g)| (2f64.powi(g as i32) - 1.0) / ((i + 2) as f64).log2())
        .sum()
}

/// nDCG with exponential gain `2^rel - 1`. The ideal ordering is taken over
/// each query's own list; queries whose ideal DCG is 0 are skipped.
pub fn ndcg_at_k<L: AsRef<[u32]>>(runs: &[L], k: usize) -> Result<f64> {
    check(runs.len(), k)?;
    let mut sum = 0.0;
    let mut used = 0usize;
    for r in runs {
        let r = r.as_ref();
        let mut ideal = r.to_vec();
        ideal.sort_unstable_by(|a, b| b.cmp(a));
        let idcg = dcg(ideal.into_iter().take(k));
        if idcg == 0.0 {
            continue;
        }
        sum += dcg(r.iter().copied().take(k)) / idcg;
        used += 1;
    }
    if used == 0 {
        return Err(Error::input("every query has zero ideal DCG"));
    }
    Ok(sum / used as f64)
}
