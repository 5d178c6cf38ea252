//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion with
//! the measured numbers underneath, and exits nonzero if any criterion fails.

mod common;

use std::hint::black_box;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{dense_hadamard, finite_difference_gradient, lloyd_residual, max_rel_error, random_matrix, random_params};
use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use sdr::aesi::{gradients, per_token_mse, reconstruction_loss, train, TrainConfig, Variant};
use sdr::analysis::{
    empirical_entropy, mrr_at_k, mse_by_df, ndcg_at_k, quant_bench, rd_optimal_rate, DfTable, InputDist,
    QuantBenchResult, DEFAULT_DF_BIN_WIDTH,
};
use sdr::blockwise::{
    compress_document, compression_ratio_from_overheads, decompress_document, msmarco_padding_overhead, read_container,
    write_container, CodecConfig, CompressedDocument, NormPrecision, MSMARCO_REFERENCE_CR,
};
use sdr::corpus::{gen_synth, SynthConfig};
use sdr::hadamard::{fwht_inplace, inverse_randomized_transform, randomized_transform};
use sdr::pipeline::{blob_storage_report, reference_cr_table};
use sdr::quantize::{drive_quantize, CentroidTable, Scheme};

/// Findings for one criterion.
#[derive(Default)]
struct Check {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Check {
    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }
}

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Duration,
    run: fn(&mut Check),
}

fn gaussian(m: usize, c: usize, seed: u64) -> Array2<f32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Array2::from_shape_simple_fn((m, c), || StandardNormal.sample(&mut rng))
}

fn synthetic_lengths(docs: usize, seed: u64) -> Vec<usize> {
    let cfg = SynthConfig {
        vocab: 500,
        h: 8,
        docs,
        seed,
        ..Default::default()
    };
    gen_synth(&cfg).unwrap().docs.iter().map(|d| d.ids.len()).collect()
}

fn float_ratios(check: &mut Check) {
    let lengths = synthetic_lengths(300, 1);
    for (c, want) in [(16usize, 24u32), (12, 32), (8, 48), (4, 96)] {
        let blobs: Vec<CompressedDocument> = lengths
            .iter()
            .enumerate()
            .map(|(k, &m)| compress_document(gaussian(m, c, k as u64).view(), &CodecConfig::new(c, 32), 0).unwrap())
            .collect();
        let cr = blob_storage_report(&blobs, 384).unwrap().compression_ratio;
        check.note(format!("c={c:>2} B=32  CR {cr}  want {want}"));
        check.expect(cr == f64::from(want), format!("c={c}: CR {cr} != {want}"));
    }
}

fn quantized_ratios(check: &mut Check) {
    for line in reference_cr_table().to_string().lines() {
        check.note(line.to_string());
    }
    for &(bits, c, reference) in MSMARCO_REFERENCE_CR.iter().filter(|r| r.0 != 32) {
        let cfg = CodecConfig::new(c, bits);
        let cr = compression_ratio_from_overheads(&cfg, msmarco_padding_overhead(c).unwrap());
        let gap = cr / reference - 1.0;
        check.expect(
            gap.abs() <= 0.05,
            format!("c={c} B={bits}: {cr:.2} vs {reference} ({gap:+.4})"),
        );
    }
}

/// Best-of-seven wall time per transform.
fn time_fwht(d: usize) -> f64 {
    let reps = (1 << 22) / d;
    let mut buf: Vec<f32> = (0..d).map(|i| (i % 7) as f32 - 3.0).collect();
    (0..7)
        .map(|_| {
            let t = Instant::now();
            for _ in 0..reps {
                fwht_inplace(black_box(&mut buf)).unwrap();
            }
            t.elapsed().as_secs_f64() / reps as f64
        })
        .fold(f64::INFINITY, f64::min)
}

fn hadamard_suite(check: &mut Check) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let norm32 = |v: &[f32]| v.iter().map(|&a| f64::from(a).powi(2)).sum::<f64>().sqrt();
    let (mut worst_norm, mut worst_inv) = (0.0f64, 0.0f64);
    for k in 1..=14u32 {
        let d = 1usize << k;
        let x: Vec<f32> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
        let y = randomized_transform(&x, u64::from(k) * 7919).unwrap();
        worst_norm = worst_norm.max((norm32(&y.values) / norm32(&x) - 1.0).abs());
        let back = inverse_randomized_transform(&y).unwrap();
        let err: Vec<f32> = x.iter().zip(&back).map(|(a, b)| a - b).collect();
        worst_inv = worst_inv.max(norm32(&err) / norm32(&x));
    }
    check.note(format!(
        "norm preservation, worst relative error (f32, d<=2^14): {worst_norm:.2e}"
    ));
    check.note(format!(
        "inverse roundtrip, worst relative error (f32): {worst_inv:.2e}"
    ));
    check.expect(worst_norm <= 1e-6, "norm not preserved within 1e-6");
    check.expect(worst_inv <= 1e-6, "inverse roundtrip error above 1e-6");

    let mut worst_dense = 0.0f64;
    for d in [2usize, 4, 8, 16] {
        let x: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
        let want = dense_hadamard(d).dot(&ndarray::Array1::from(x.clone()));
        let mut got = x;
        fwht_inplace(&mut got).unwrap();
        worst_dense = worst_dense.max(max_rel_error(&got, want.as_slice().unwrap(), 1e-300));
    }
    check.note(format!(
        "fwht vs dense matrix, worst relative error (f64): {worst_dense:.2e}"
    ));
    check.expect(worst_dense <= 1e-10, "fwht disagrees with the dense matrix");

    // Below 2^8 call overhead dominates the timing.
    let sizes: Vec<usize> = (8..=14).map(|k| 1 << k).collect();
    let times: Vec<f64> = sizes.iter().map(|&d| time_fwht(d)).collect();
    for (w, d) in times.windows(2).zip(&sizes[1..]) {
        let ratio = w[1] / w[0];
        check.note(format!("doubling to d={d:>5}: {:.2} us, ratio {ratio:.2}", w[1] * 1e6));
        check.expect(ratio <= 2.6, format!("doubling to {d} costs {ratio:.2}x"));
    }
}

fn centroid_oracle(check: &mut Check) {
    let one = CentroidTable::standard(1).unwrap();
    let want = (2.0 / std::f64::consts::PI).sqrt();
    let dev = (one.centroids()[0] + want).abs().max((one.centroids()[1] - want).abs());
    check.note(format!(
        "B=1 centroids {:?}, deviation from sqrt(2/pi) {dev:.2e}",
        one.centroids()
    ));
    check.expect(dev <= 1e-4, "B=1 centroids off sqrt(2/pi)");
    for bits in 1..=8u8 {
        let t = CentroidTable::standard(bits).unwrap();
        let r = lloyd_residual(t.centroids(), t.boundaries());
        check.note(format!("B={bits} Lloyd residual {r:.2e}"));
        check.expect(r <= 1e-6, format!("B={bits} not stationary: {r:.2e}"));
    }
}

const RUN_SEEDS: [u64; 10] = [101, 102, 103, 104, 105, 106, 107, 108, 109, 110];
const BENCH_TRIALS: usize = 10_000;

fn bench(scheme: Scheme, bits: u8, dist: &InputDist) -> QuantBenchResult {
    quant_bench(scheme, bits, dist, 128, BENCH_TRIALS, &RUN_SEEDS).unwrap()
}

fn leq(check: &mut Check, label: &str, a: &QuantBenchResult, b: &QuantBenchResult) {
    let ok = a.mse <= b.mse;
    check.note(format!(
        "{} {label}: {} {:.4e} <= {} {:.4e}  ratio {:.3}",
        if ok { "ok  " } else { "MISS" },
        a.scheme.name(),
        a.mse,
        b.scheme.name(),
        b.mse,
        a.mse / b.mse
    ));
    check.expect(
        ok,
        format!(
            "{label}: {} {:.4e} > {} {:.4e}",
            a.scheme.name(),
            a.mse,
            b.scheme.name(),
            b.mse
        ),
    );
}

fn quantizer_statistics(check: &mut Check) {
    let gauss = InputDist::Gaussian;
    let t3 = InputDist::StudentT { nu: 3.0 };
    for bits in 1..=6u8 {
        let g = |s| bench(s, bits, &gauss);
        let (drive, drive_bc) = (g(Scheme::Drive), g(Scheme::DriveBc));
        let (hsd, hsr, sd, sr) = (g(Scheme::HSd), g(Scheme::HSr), g(Scheme::Sd), g(Scheme::Sr));
        let tag = |what: &str| format!("B={bits} gaussian {what}");
        leq(check, &tag("DRIVE<=H-SD"), &drive, &hsd);
        leq(check, &tag("H-SD<=H-SR"), &hsd, &hsr);
        leq(check, &tag("SD<=SR"), &sd, &sr);
        leq(check, &tag("DRIVE<=DRIVE-BC"), &drive, &drive_bc);
        let usd = bench(Scheme::Sd, bits, &InputDist::Uniform);
        let usr = bench(Scheme::Sr, bits, &InputDist::Uniform);
        leq(check, &format!("B={bits} uniform SD<=SR"), &usd, &usr);
        for (h, x) in [
            (Scheme::HDr, Scheme::Dr),
            (Scheme::HSr, Scheme::Sr),
            (Scheme::HSd, Scheme::Sd),
        ] {
            let (a, b) = (bench(h, bits, &t3), bench(x, bits, &t3));
            leq(
                check,
                &format!("B={bits} student-t3 {}<={}", h.name(), x.name()),
                &a,
                &b,
            );
        }
        for r in [&sr, &sd] {
            check.note(format!("B={bits} {} bias z {:+.2}", r.scheme.name(), r.bias_z));
            check.expect(
                r.bias_z.abs() <= 3.0,
                format!("B={bits} {} bias z {:.2}", r.scheme.name(), r.bias_z),
            );
        }
    }
}

fn gradient_checks(check: &mut Check) {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for variant in Variant::ALL {
        let mut worst = 0.0f64;
        for config in 0..20u64 {
            let h = rng.random_range(2..=8);
            let i = rng.random_range(1..=8);
            let c = rng.random_range(1..=h);
            let rows = rng.random_range(1..=6);
            let bias = rng.random_bool(0.5);
            let p = random_params(variant, h, i, c, bias, 1000 + config);
            let v = random_matrix(rows, h, &mut rng);
            let u = random_matrix(rows, h, &mut rng);
            let exact = gradients(&p, v.view(), u.view()).unwrap().flatten();
            let fd = finite_difference_gradient(&p, v.view(), u.view(), 1e-5);
            let err = max_rel_error(&exact, &fd, 1e-6);
            worst = worst.max(err);
            check.expect(
                err <= 1e-4,
                format!("{variant} h={h} i={i} c={c} rows={rows} bias={bias}: {err:.2e}"),
            );
        }
        check.note(format!(
            "{variant}: 20 configurations, worst relative error {worst:.2e}"
        ));
    }
}

fn synthetic_training(check: &mut Check) {
    // The planted high-context function tokens are what give the encoder a
    // use for u: without them every variant with u ties.
    let cfg = SynthConfig {
        function_tokens: 20,
        function_alpha: 0.95,
        ..Default::default()
    };
    check.note(format!(
        "corpus V={} h={} N={} alpha={} function tokens {} at alpha {}",
        cfg.vocab, cfg.h, cfg.docs, cfg.alpha, cfg.function_tokens, cfg.function_alpha
    ));
    let corpus = gen_synth(&cfg).unwrap();
    let (v, u) = corpus.stacked();
    let ids: Vec<u32> = corpus.docs.iter().flat_map(|d| d.ids.iter().copied()).collect();
    let df = DfTable::from_documents(corpus.docs.iter().map(|d| d.ids.as_slice())).unwrap();
    let fit = |variant: Variant, c: usize| {
        let mut tc = TrainConfig::new(variant, cfg.h, c);
        tc.epochs = 10;
        let params = train(v.view(), u.view(), &tc).unwrap().params;
        let mse = f64::from(reconstruction_loss(&params, v.view(), u.view()).unwrap());
        let per: Vec<(u32, f64)> = ids
            .iter()
            .zip(per_token_mse(&params, v.view(), u.view()).unwrap())
            .map(|(&t, e)| (t, f64::from(e)))
            .collect();
        (mse, mse_by_df(&per, &df, DEFAULT_DF_BIN_WIDTH).unwrap())
    };
    check.note(format!("{} tokens, 10 epochs", v.nrows()));
    for c in [1usize, 2, 4, 8] {
        let (aesi, aesi_bins) = fit(Variant::Aesi2L, c);
        let (dec, _) = fit(Variant::AesiDec2L, c);
        let (ae, ae_bins) = fit(Variant::Ae2L, c);
        let mut line = format!("c={c}  AESI-2L {aesi:.6}  AESI-DEC-2L {dec:.6}  AE-2L {ae:.6}");
        check.expect(aesi < dec, format!("c={c}: AESI-2L {aesi:.6} !< AESI-DEC-2L {dec:.6}"));
        check.expect(dec < ae, format!("c={c}: AESI-DEC-2L {dec:.6} !< AE-2L {ae:.6}"));
        if c <= 2 {
            let (one, _) = fit(Variant::Aesi1L, c);
            line += &format!("  AESI-1L {one:.6}");
            check.expect(aesi < one, format!("c={c}: AESI-2L {aesi:.6} !< AESI-1L {one:.6}"));
        }
        line += &format!("  margin vs DEC {:+.2}%", 100.0 * (dec - aesi) / dec);
        check.note(line);
        for (a, b) in aesi_bins.iter().zip(&ae_bins) {
            assert_eq!(a.df, b.df);
            check.note(format!(
                "    df {:>5.1}  AESI-2L {:.5}  AE-2L {:.5}  ({} tokens)",
                a.df, a.mean_mse, b.mean_mse, a.count
            ));
            check.expect(
                a.mean_mse < b.mean_mse,
                format!("c={c} df bin {}: AESI {:.6} !< AE {:.6}", a.df, a.mean_mse, b.mean_mse),
            );
        }
    }
}

fn rate_and_entropy(check: &mut Check) {
    for k in 1..=16 {
        let r = f64::from(k) / 2.0;
        let got = rd_optimal_rate(2f64.powf(-2.0 * r)).unwrap();
        check.expect(got == r, format!("rd_optimal_rate(2^-{}) = {got}", 2.0 * r));
    }
    let r = rd_optimal_rate(6.06e-4).unwrap();
    check.note(format!("rd_optimal_rate(6.06e-4) = {r:.4}"));
    check.expect((r - 5.35).abs() <= 0.01, format!("rate {r} not 5.35"));

    let table = CentroidTable::standard(6).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut indices = Vec::with_capacity(10_000 * 128);
    for k in 0..10_000u64 {
        let x: Vec<f32> = (0..128).map(|_| StandardNormal.sample(&mut rng)).collect();
        indices.extend(drive_quantize(&x, k, table).unwrap().indices);
    }
    let h = empirical_entropy(&indices, 6).unwrap();
    check.note(format!("DRIVE B=6 index entropy {h:.4} bits"));
    check.expect(h > 5.0 && h < 6.0, format!("entropy {h} outside (5, 6)"));
}

/// FNV-1a, so the frozen digest below needs no extra dependency.
fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

const FROZEN_DIGEST: u64 = 0xe6b3_9cdc_6851_8a93;

fn codec_fidelity(check: &mut Check) {
    let mut shapes = 0;
    for c in [4usize, 8, 12, 16] {
        for m in 1..=300 {
            let doc = compress_document(gaussian(m, c, (m * c) as u64).view(), &CodecConfig::new(c, 6), 7).unwrap();
            let back = decompress_document(&doc).unwrap();
            check.expect(
                back.dim() == (m, c),
                format!("m={m} c={c} came back as {:?}", back.dim()),
            );
            shapes += 1;
        }
    }
    check.note(format!("{shapes} shape roundtrips"));

    let e = gaussian(37, 12, 5);
    for bits in [1u8, 2, 3, 4, 5, 6, 7, 8, 32] {
        for precision in [NormPrecision::F32, NormPrecision::F16] {
            let cfg = CodecConfig::new(12, bits).with_norm_precision(precision);
            let doc = compress_document(e.view(), &cfg, 99).unwrap();
            let bytes = doc.to_bytes();
            let again = CompressedDocument::from_bytes(&bytes).unwrap();
            check.expect(
                again == doc && again.to_bytes() == bytes,
                format!("B={bits} {precision:?} serialization"),
            );
        }
    }
    let docs: Vec<CompressedDocument> = (0..5)
        .map(|k| compress_document(gaussian(10 + k, 8, k as u64).view(), &CodecConfig::new(8, 4), k as u64).unwrap())
        .collect();
    let buf = write_container(&docs);
    check.expect(read_container(&buf).unwrap() == docs, "container roundtrip");

    let x = gaussian(53, 16, 1);
    let float = compress_document(x.view(), &CodecConfig::new(16, 32), 0).unwrap();
    check.expect(decompress_document(&float).unwrap() == x, "B=32 passthrough not exact");

    let mut digest_input = Vec::new();
    for bits in [2u8, 4, 6, 32] {
        let cfg = CodecConfig::new(16, bits);
        let a = compress_document(gaussian(77, 16, 3).view(), &cfg, 2024)
            .unwrap()
            .to_bytes();
        let b = compress_document(gaussian(77, 16, 3).view(), &cfg, 2024)
            .unwrap()
            .to_bytes();
        check.expect(a == b, format!("B={bits}: repeated compression differs"));
        digest_input.extend(a);
    }
    let digest = fnv1a(&digest_input);
    check.note(format!("compressed-bytes digest {digest:#018x}"));
    check.expect(
        digest == FROZEN_DIGEST,
        format!("digest {digest:#018x} != frozen {FROZEN_DIGEST:#018x}"),
    );
}

fn metric_examples(check: &mut Check) {
    let late: Vec<u32> = (0..11).map(|k| u32::from(k == 10)).collect();
    let cases = [
        ("mrr rank 1", mrr_at_k(&[vec![1, 0, 0]], 10).unwrap(), 1.0),
        ("mrr rank 4", mrr_at_k(&[vec![0, 0, 0, 1]], 10).unwrap(), 0.25),
        ("mrr rank 11", mrr_at_k(&[late], 10).unwrap(), 0.0),
        ("ndcg perfect", ndcg_at_k(&[vec![3, 2, 1, 0]], 10).unwrap(), 1.0),
        (
            "ndcg rank 2 of 2",
            ndcg_at_k(&[vec![0, 1]], 10).unwrap(),
            1.0 / 3f64.log2(),
        ),
        (
            "ndcg zero query excluded",
            ndcg_at_k(&[vec![0, 0], vec![2]], 10).unwrap(),
            1.0,
        ),
    ];
    for (name, got, want) in cases {
        check.note(format!("{name}: {got}"));
        check.expect(got == want, format!("{name}: {got} != {want}"));
    }
    check.expect(
        ndcg_at_k(&[vec![0, 0]], 10).is_err(),
        "all-zero ndcg should be an error",
    );
    check.expect(mrr_at_k::<Vec<u32>>(&[], 10).is_err(), "empty mrr should be an error");
    check.expect(ndcg_at_k::<Vec<u32>>(&[], 10).is_err(), "empty ndcg should be an error");
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            id: 1,
            title: "compression ratios, float path",
            budget: secs(5),
            run: float_ratios,
        },
        Criterion {
            id: 2,
            title: "compression ratios, quantized path",
            budget: secs(1),
            run: quantized_ratios,
        },
        Criterion {
            id: 3,
            title: "hadamard suite",
            budget: secs(30),
            run: hadamard_suite,
        },
        Criterion {
            id: 4,
            title: "centroid oracle",
            budget: secs(60),
            run: centroid_oracle,
        },
        Criterion {
            id: 5,
            title: "quantizer statistics",
            budget: secs(300),
            run: quantizer_statistics,
        },
        Criterion {
            id: 6,
            title: "gradient correctness",
            budget: secs(120),
            run: gradient_checks,
        },
        Criterion {
            id: 7,
            title: "synthetic side-information training",
            budget: secs(600),
            run: synthetic_training,
        },
        Criterion {
            id: 8,
            title: "rate-distortion and entropy",
            budget: secs(30),
            run: rate_and_entropy,
        },
        Criterion {
            id: 9,
            title: "codec fidelity",
            budget: secs(60),
            run: codec_fidelity,
        },
        Criterion {
            id: 10,
            title: "metric utilities",
            budget: secs(1),
            run: metric_examples,
        },
    ];
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    let mut ran = 0;
    for c in criteria.iter().filter(|c| only.is_empty() || only.contains(&c.id)) {
        let mut check = Check::default();
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(|| (c.run)(&mut check)));
        let elapsed = start.elapsed();
        if let Err(e) = outcome {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            check.failures.push(format!("panicked: {msg}"));
        }
        if elapsed > c.budget {
            check.failures.push(format!(
                "took {:.1} s, budget {} s",
                elapsed.as_secs_f64(),
                c.budget.as_secs()
            ));
        }
        let pass = check.failures.is_empty();
        ran += 1;
        if !pass {
            failed += 1;
        }
        println!(
            "{} [{}] {} ({:.2} s)",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            elapsed.as_secs_f64()
        );
        for n in &check.notes {
            println!("      {n}");
        }
        for f in &check.failures {
            println!("    ! {f}");
        }
    }
    println!("{}/{ran} criteria passed", ran - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
