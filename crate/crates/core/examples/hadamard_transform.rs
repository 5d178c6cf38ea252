//! Rotates a flat-tailed vector with the randomized Hadamard transform and
//! shows that the result looks Gaussian, keeps its norm, and inverts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sdr::hadamard::{inverse_randomized_transform, randomized_transform};

fn excess_kurtosis(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let m2 = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    let m4 = x.iter().map(|v| (v - mean).powi(4)).sum::<f64>() / n;
    m4 / (m2 * m2) - 3.0
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn main() -> sdr::Result<()> {
    let d = 1 << 12;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let x: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();

    let y = randomized_transform(&x, 42)?;
    let back = inverse_randomized_transform(&y)?;
    let err: Vec<f64> = x.iter().zip(&back).map(|(a, b)| a - b).collect();

    println!("d = {d}");
    println!(
        "excess kurtosis  input {:+.3}  rotated {:+.3}  (uniform -1.2, gaussian 0)",
        excess_kurtosis(&x),
        excess_kurtosis(&y.values)
    );
    println!("norm             input {:.6}  rotated {:.6}", norm(&x), norm(&y.values));
    println!("roundtrip error  {:.2e}", norm(&err) / norm(&x));
    Ok(())
}
