use std::collections::{BTreeMap, HashMap, HashSet};

use crate::{Error, Result};

pub const DEFAULT_DF_BIN_WIDTH: f64 = 1.0;

/// Number of documents containing each token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DfTable {
    counts: HashMap<u32, u64>,
    total_docs: u64,
}

impl DfTable {
    pub fn new(counts: HashMap<u32, u64>, total_docs: u64) -> Result<Self> {
        if total_docs == 0 {
            return Err(Error::input("document frequency needs at least one document"));
        }
        if let Some((t, c)) = counts.iter().find(|(_, &c)| c == 0 || c > total_docs) {
            return Err(Error::input(format!(
                "token {t} has count {c}, outside 1..={total_docs}"
            )));
        }
        Ok(Self { counts, total_docs })
    }

    /// Counts each token once per document it appears in.
    pub fn from_documents<'a, I>(docs: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a [u32]>,
    {
        let mut counts = HashMap::new();
        let mut total = 0;
        for doc in docs {
            total += 1;
            let unique: HashSet<u32> = doc.iter().copied().collect();
            for t in unique {
                *counts.entry(t).or_insert(0) += 1;
            }
        }
        Self::new(counts, total)
    }

    pub fn count(&self, token: u32) -> Option<u64> {
        self.counts.get(&token).copied()
    }

    pub fn total_docs(&self) -> u64 {
        self.total_docs
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// `log10(count / total_docs)`; always `<= 0`.
pub fn df(token: u32, table: &DfTable) -> Result<f64> {
    let count = table
        .count(token)
        .ok_or_else(|| Error::NotFound(format!("token {token} has no document frequency")))?;
    Ok((count as f64 / table.total_docs as f64).log10())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DfBin {
    /// Bin centre, `round(df / width) * width`.
    pub df: f64,
    pub mean_mse: f64,
    pub count: usize,
}

/// Averages per-token MSE within rounded-DF bins, sorted by DF. Empty bins
/// are omitted.
pub fn mse_by_df(per_token: &[(u32, f64)], table: &DfTable, bin_width: f64) -> Result<Vec<DfBin>> {
    if !(bin_width > 0.0 && bin_width.is_finite()) {
        return Err(Error::config(format!("bin width must be positive, got {bin_width}")));
    }
    let mut bins: BTreeMap<i64, (f64, usize)> = BTreeMap::new();
    for &(token, mse) in per_token {
        let key = (df(token, table)? / bin_width).round() as i64;
        let slot = bins.entry(key).or_insert((0.0, 0));
        slot.0 += mse;
        slot.1 += 1;
    }
    Ok(bins
        .into_iter()
        .map(|(key, (sum, count))| DfBin {
            df: key as f64 * bin_width,
            mean_mse: sum / count as f64,
            count,
        })
        .collect())
}
