//! Mean squared error of every scheme on Gaussian and heavy-tailed blocks.

use sdr::analysis::{quant_bench, InputDist, Table};
use sdr::quantize::Scheme;

fn main() -> sdr::Result<()> {
    let seeds = [1, 2, 3];
    for dist in [InputDist::Gaussian, InputDist::StudentT { nu: 3.0 }] {
        let mut table = Table::new(["scheme", "B=2", "B=4", "B=6"]);
        for scheme in Scheme::ALL {
            let mut row = vec![scheme.name().to_string()];
            for bits in [2, 4, 6] {
                let r = quant_bench(scheme, bits, &dist, 128, 2000, &seeds)?;
                row.push(format!("{:.3e}", r.mse));
            }
            table.push(row)?;
        }
        println!("{dist}\n{table}");
    }
    Ok(())
}
