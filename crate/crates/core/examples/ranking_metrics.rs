//! Ranking metrics on a few toy runs, plus the rate bounds used to judge
//! quantizer efficiency.

use sdr::analysis::{mrr_at_k, ndcg_at_k, rd_optimal_rate};

fn main() -> sdr::Result<()> {
    // One line per query: relevance grades in rank order.
    let runs = vec![vec![0, 1, 0], vec![2, 0, 1], vec![0, 0, 0, 0, 3]];
    println!("MRR@10  {:.4}", mrr_at_k(&runs, 10)?);
    println!("nDCG@10 {:.4}", ndcg_at_k(&runs, 10)?);
    println!("MRR@3   {:.4}", mrr_at_k(&runs, 3)?);

    for mse in [9.3e-3, 2.4e-3, 6.06e-4] {
        println!("rate needed for MSE {mse:.2e}: {:.3} bits", rd_optimal_rate(mse)?);
    }
    Ok(())
}
