use crate::{Error, Result};

/// Plug-in entropy of the index histogram, in bits per symbol.
pub fn empirical_entropy(indices: &[u8], bits: u8) -> Result<f64> {
    if indices.is_empty() {
        return Err(Error::input("entropy of an empty sequence"));
    }
    if !(1..=8).contains(&bits) {
        return Err(Error::config(format!("alphabet bits must be in 1..=8, got {bits}")));
    }
    let levels = 1usize << bits;
    let mut counts = vec![0u64; levels];
    for &i in indices {
        let slot = counts
            .get_mut(i as usize)
            .ok_or_else(|| Error::input(format!("index {i} outside a {bits}-bit alphabet")))?;
        *slot += 1;
    }
    let n = indices.len() as f64;
    let h: f64 = counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum();
    Ok(h.clamp(0.0, bits as f64))
}

/// Bits per sample needed by an ideal lossy code for a unit-variance
/// Gaussian source at the given MSE.
pub fn rd_optimal_rate(mse: f64) -> Result<f64> {
    if !(mse > 0.0 && mse <= 1.0) {
        return Err(Error::Domain(format!("mse must lie in (0, 1], got {mse}")));
    }
    Ok(-0.5 * mse.log2())
}
