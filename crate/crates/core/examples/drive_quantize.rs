//! Quantizes Gaussian blocks with DRIVE at every bit width and compares the
//! measured error with the distortion implied by the centroid table.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use sdr::quantize::{drive_bc_dequantize, drive_dequantize, drive_quantize, CentroidTable};

fn main() -> sdr::Result<()> {
    let d = 128;
    let blocks = 2000;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let data: Vec<Vec<f32>> = (0..blocks)
        .map(|_| (0..d).map(|_| StandardNormal.sample(&mut rng)).collect())
        .collect();

    println!("B=1 centroids {:?}", CentroidTable::standard(1)?.centroids());
    println!("{:>2}  {:>10}  {:>10}  {:>10}", "B", "table", "DRIVE", "DRIVE-BC");
    for bits in 1..=8 {
        let table = CentroidTable::standard(bits)?;
        let (mut plain, mut corrected, mut energy) = (0.0, 0.0, 0.0);
        for (k, x) in data.iter().enumerate() {
            let seed = k as u64;
            let q = drive_quantize(x, seed, table)?;
            let a = drive_dequantize(&q, seed, table)?;
            let b = drive_bc_dequantize(&q, seed, table)?;
            for i in 0..d {
                plain += f64::from(a[i] - x[i]).powi(2);
                corrected += f64::from(b[i] - x[i]).powi(2);
                energy += f64::from(x[i]).powi(2);
            }
        }
        println!(
            "{bits:>2}  {:>10.3e}  {:>10.3e}  {:>10.3e}",
            table.gaussian_distortion(),
            plain / energy,
            corrected / energy
        );
    }
    Ok(())
}
