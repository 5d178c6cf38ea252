//! Command-line driver. Every command is deterministic given its flags and
//! seeds. Exit codes: 0 ok, 1 usage error, 2 data error.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sdr::aesi::{read_checkpoint, train, write_checkpoint, write_loss_csv, AutoencoderParams, TrainConfig, Variant};
use sdr::analysis::{
    empirical_entropy, mrr_at_k, ndcg_at_k, quant_bench, rd_optimal_rate, InputDist, Table, DEFAULT_DF_BIN_WIDTH,
};
use sdr::blockwise::{load_container, save_container, CodecConfig, NormPrecision, DEFAULT_BASELINE_DIM};
use sdr::corpus::{gen_synth, Corpus, EncodedCorpus, SynthConfig};
use sdr::pipeline::{
    blob_storage_report, compress_corpus, decompress_corpus, df_table, encode_corpus, eval_recon, reference_cr_table,
};
use sdr::quantize::{gaussian_lloyd_max, CentroidTable, Scheme};
use sdr::{Error, Result};

#[derive(Parser)]
#[command(name = "sdr", version, about = "Compress contextual token embeddings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print Gaussian Lloyd-Max centroid tables (all widths unless --bits).
    Centroids {
        #[arg(long)]
        bits: Option<u8>,
        /// Recompute by Lloyd iteration instead of using the embedded tables.
        #[arg(long)]
        regenerate: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a synthetic corpus from a TOML config (defaults if omitted).
    GenSynth {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Overrides the config seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Train an autoencoder; writes a checkpoint and a step,loss CSV.
    Train(TrainArgs),
    /// Encode every token of a corpus with a trained encoder.
    Encode {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        checkpoint: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Quantize encoded documents into a blob container.
    Compress {
        #[arg(long)]
        encoded: PathBuf,
        /// Expected encoded width; checked against the file.
        #[arg(long)]
        c: Option<usize>,
        #[command(flatten)]
        codec: CodecArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Restore encoded documents from a blob container.
    Decompress {
        #[arg(long)]
        blobs: PathBuf,
        /// Corpus the blobs were made from; supplies token ids.
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Storage report for a blob container and/or the reference table.
    Report {
        #[arg(long, required_unless_present = "reference")]
        blobs: Option<PathBuf>,
        /// Counts tokens from this corpus instead of the blob headers.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BASELINE_DIM)]
        baseline_h: usize,
        /// Also print the reference MSMARCO compression ratios next to the closed form.
        #[arg(long)]
        reference: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Reconstruction MSE of a corpus, overall and by document frequency.
    EvalRecon {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        checkpoint: PathBuf,
        /// Quantize the codes at this width before decoding.
        #[arg(long)]
        bits: Option<u8>,
        #[arg(long, default_value_t = 128)]
        block: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_DF_BIN_WIDTH)]
        df_bin: f64,
        #[arg(long)]
        csv: bool,
    },
    /// Monte-Carlo MSE and bias of the scalar quantizers.
    QuantBench {
        /// Comma-separated scheme names or `all`.
        #[arg(long, default_value = "all")]
        schemes: String,
        /// `1..6`, `4` or `1,3,5`.
        #[arg(long, default_value = "1..6")]
        bits: String,
        #[arg(long, default_value_t = 128)]
        d: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 10)]
        runs: usize,
        /// gaussian, uniform, grid or student-t:NU.
        #[arg(long, default_value = "gaussian")]
        dist: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv: bool,
    },
    /// Optimal rate in bits for a Gaussian source at the given MSE.
    Rd {
        #[arg(long)]
        mse: f64,
    },
    /// Empirical entropy of the quantization indices in a blob container.
    Entropy {
        #[arg(long)]
        blobs: PathBuf,
    },
    /// Ranking metrics over a runs file: one query per line, relevance grades in rank order.
    Metrics {
        metric: Metric,
        #[arg(long)]
        runs: PathBuf,
        #[arg(long, default_value_t = 10)]
        k: usize,
    },
}

#[derive(Args)]
struct TrainArgs {
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long, default_value = "aesi-2l")]
    variant: Variant,
    #[arg(long)]
    c: usize,
    /// Hidden width; defaults to the corpus width.
    #[arg(long)]
    i: Option<usize>,
    #[arg(long, default_value_t = 1e-3)]
    lr: f64,
    #[arg(long, default_value_t = 10)]
    epochs: usize,
    #[arg(long, default_value_t = 256)]
    batch_size: usize,
    #[arg(long)]
    max_steps: Option<usize>,
    #[arg(long)]
    bias: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    loss_csv: Option<PathBuf>,
}

#[derive(Args)]
struct CodecArgs {
    /// 1..=8, or 32 to store floats.
    #[arg(long)]
    bits: u8,
    #[arg(long, default_value_t = 128)]
    block: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Store block norms as 16-bit floats.
    #[arg(long)]
    f16_norms: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Metric {
    Mrr,
    Ndcg,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Config(_) => 1,
                _ => 2,
            })
        }
    }
}

fn run(command: Command) -> Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::Centroids {
            bits,
            regenerate,
            out: path,
        } => {
            let widths: Vec<u8> = match bits {
                Some(b) => vec![b],
                None => (1..=8).collect(),
            };
            let mut text = String::from("# bits index centroid\n");
            for b in widths {
                let table = if regenerate {
                    gaussian_lloyd_max(b)?
                } else {
                    CentroidTable::standard(b)?.clone()
                };
                text.push_str(&table.to_text());
            }
            emit(&mut out, path.as_deref(), &text)?;
        }
        Command::GenSynth {
            config,
            seed,
            out: path,
        } => {
            let mut cfg = match config {
                Some(p) => SynthConfig::load(p)?,
                None => SynthConfig::default(),
            };
            if let Some(s) = seed {
                cfg.seed = s;
            }
            let corpus = gen_synth(&cfg)?;
            corpus.save(&path)?;
            writeln!(
                out,
                "wrote {} documents, {} tokens to {}",
                corpus.docs.len(),
                corpus.num_tokens(),
                path.display()
            )?;
        }
        Command::Train(args) => run_train(args, &mut out)?,
        Command::Encode {
            corpus,
            checkpoint,
            out: path,
        } => {
            let corpus = Corpus::load(corpus)?;
            let params = load_checkpoint(&checkpoint)?;
            let enc = encode_corpus(&corpus, &params)?;
            enc.save(&path)?;
            writeln!(
                out,
                "encoded {} tokens to width {}",
                corpus.num_tokens(),
                enc.encoded_dim
            )?;
        }
        Command::Compress {
            encoded,
            c,
            codec,
            out: path,
        } => {
            let enc = EncodedCorpus::load(encoded)?;
            if let Some(c) = c.filter(|&c| c != enc.encoded_dim) {
                return Err(Error::Config(format!(
                    "--c {c} but the file has width {}",
                    enc.encoded_dim
                )));
            }
            let config = codec_config(enc.encoded_dim, &codec)?;
            let blobs = compress_corpus(&enc, &config, codec.seed)?;
            save_container(&path, &blobs)?;
            writeln!(out, "compressed {} documents to {}", blobs.len(), path.display())?;
        }
        Command::Decompress {
            blobs,
            corpus,
            out: path,
        } => {
            let blobs = load_container(blobs)?;
            let corpus = Corpus::load(corpus)?;
            let enc = decompress_corpus(&blobs, &corpus)?;
            enc.save(&path)?;
            writeln!(out, "restored {} documents", enc.docs.len())?;
        }
        Command::Report {
            blobs,
            corpus,
            baseline_h,
            reference,
            csv,
        } => {
            if let Some(path) = blobs {
                let blobs = load_container(path)?;
                if let Some(cp) = corpus {
                    let corpus = Corpus::load(cp)?;
                    let same = corpus.docs.len() == blobs.len()
                        && corpus.docs.iter().zip(&blobs).all(|(d, b)| d.len() == b.num_tokens);
                    if !same {
                        return Err(Error::InvalidInput("blobs do not match the corpus".into()));
                    }
                }
                let r = blob_storage_report(&blobs, baseline_h)?;
                let mut t = Table::new(["metric", "value"]);
                t.push(["documents".to_string(), blobs.len().to_string()])?;
                t.push(["payload_bits".to_string(), r.payload_bits.to_string()])?;
                t.push(["baseline_bits".to_string(), r.baseline_bits.to_string()])?;
                t.push(["norm_overhead".to_string(), format!("{:.6}", r.norm_overhead_fraction)])?;
                t.push([
                    "padding_overhead".to_string(),
                    format!("{:.6}", r.padding_overhead_fraction),
                ])?;
                t.push(["CR".to_string(), format!("{:.1}", r.compression_ratio)])?;
                print_table(&mut out, &t, csv)?;
            }
            if reference {
                print_table(&mut out, &reference_cr_table(), csv)?;
            }
        }
        Command::EvalRecon {
            corpus,
            checkpoint,
            bits,
            block,
            seed,
            df_bin,
            csv,
        } => {
            let corpus = Corpus::load(corpus)?;
            let params = load_checkpoint(&checkpoint)?;
            let config = bits
                .map(|b| {
                    let cfg = CodecConfig::new(params.c, b)
                        .with_block_size(block)
                        .with_baseline_dim(corpus.dim().max(params.c));
                    cfg.validate().map(|_| cfg)
                })
                .transpose()?;
            let r = eval_recon(&corpus, &params, config.as_ref().map(|c| (c, seed)), df_bin)?;
            writeln!(out, "mse {:.6e}", r.mse)?;
            print_table(&mut out, &df_table(&r.by_df), csv)?;
        }
        Command::QuantBench {
            schemes,
            bits,
            d,
            trials,
            runs,
            dist,
            seed,
            csv,
        } => {
            let schemes = parse_schemes(&schemes)?;
            let widths = parse_bits(&bits)?;
            let dist: InputDist = dist.parse()?;
            if runs == 0 {
                return Err(Error::Config("--runs must be positive".into()));
            }
            let seeds: Vec<u64> = (0..runs as u64).map(|r| seed.wrapping_add(r)).collect();
            let mut t = Table::new(["scheme", "bits", "mse", "std", "bias_norm", "bias_z"]);
            for &b in &widths {
                for &s in &schemes {
                    let r = quant_bench(s, b, &dist, d, trials, &seeds)?;
                    t.push([
                        s.to_string(),
                        b.to_string(),
                        format!("{:.6e}", r.mse),
                        format!("{:.3e}", r.std),
                        format!("{:.3e}", r.bias_norm),
                        format!("{:+.2}", r.bias_z),
                    ])?;
                }
            }
            print_table(&mut out, &t, csv)?;
        }
        Command::Rd { mse } => writeln!(out, "{:.6}", rd_optimal_rate(mse)?)?,
        Command::Entropy { blobs } => {
            let blobs = load_container(blobs)?;
            let first = blobs.first().ok_or_else(|| Error::InvalidInput("no blobs".into()))?;
            if first.is_float() || blobs.iter().any(|b| b.bits != first.bits) {
                return Err(Error::InvalidInput(
                    "entropy needs blobs quantized at one bit width".into(),
                ));
            }
            let indices: Vec<u8> = blobs.iter().flat_map(|b| b.indices()).collect();
            let h = empirical_entropy(&indices, first.bits)?;
            writeln!(out, "entropy {h:.4} bits/coordinate ({} bits allotted)", first.bits)?;
        }
        Command::Metrics { metric, runs, k } => {
            let runs = read_runs(&runs)?;
            let v = match metric {
                Metric::Mrr => mrr_at_k(&runs, k)?,
                Metric::Ndcg => ndcg_at_k(&runs, k)?,
            };
            writeln!(out, "{v:.6}")?;
        }
    }
    Ok(())
}

fn run_train(args: TrainArgs, out: &mut impl Write) -> Result<()> {
    let corpus = Corpus::load(&args.corpus)?;
    let (v, u) = corpus.stacked();
    let mut config = TrainConfig::new(args.variant, corpus.dim(), args.c);
    config.i = args.i.unwrap_or(config.h);
    config.lr = args.lr;
    config.epochs = args.epochs;
    config.batch_size = args.batch_size;
    config.max_steps = args.max_steps;
    config.bias = args.bias;
    config.seed = args.seed;
    if args.c == 0 || args.c > corpus.dim() {
        return Err(Error::Config(format!("--c must be in 1..={}", corpus.dim())));
    }
    let outcome = train(v.view(), u.view(), &config)?;
    write_checkpoint(&outcome.params, BufWriter::new(File::create(&args.out)?))?;
    if let Some(p) = &args.loss_csv {
        write_loss_csv(&outcome.history, BufWriter::new(File::create(p)?))?;
    }
    let last = outcome.history.last().map_or(f64::NAN, |r| r.loss);
    writeln!(
        out,
        "trained {} for {} steps, final batch loss {last:.6e}",
        args.variant,
        outcome.history.len()
    )?;
    Ok(())
}

fn load_checkpoint(path: &Path) -> Result<AutoencoderParams<f32>> {
    read_checkpoint(io::BufReader::new(File::open(path)?))
}

fn codec_config(c: usize, args: &CodecArgs) -> Result<CodecConfig> {
    let precision = if args.f16_norms {
        NormPrecision::F16
    } else {
        NormPrecision::F32
    };
    let cfg = CodecConfig::new(c, args.bits)
        .with_block_size(args.block)
        .with_baseline_dim(DEFAULT_BASELINE_DIM.max(c))
        .with_norm_precision(precision);
    cfg.validate()?;
    Ok(cfg)
}

fn emit(out: &mut impl Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn print_table(out: &mut impl Write, t: &Table, csv: bool) -> Result<()> {
    if csv {
        t.write_csv(&mut *out)
    } else {
        write!(out, "{t}")?;
        Ok(())
    }
}

fn parse_schemes(s: &str) -> Result<Vec<Scheme>> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(Scheme::ALL.to_vec());
    }
    s.split(',')
        .map(|p| p.parse().map_err(|e: Error| Error::Config(e.to_string())))
        .collect()
}

fn parse_bits(s: &str) -> Result<Vec<u8>> {
    let bad = || Error::Config(format!("cannot parse bit list '{s}'"));
    let num = |p: &str| p.trim().parse::<u8>().map_err(|_| bad());
    let widths: Vec<u8> = if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
        if a > b {
            return Err(bad());
        }
        (a..=b).collect()
    } else {
        s.split(',').map(num).collect::<Result<_>>()?
    };
    if widths.is_empty() || widths.iter().any(|b| !(1..=8).contains(b)) {
        return Err(Error::Config(format!("bit widths must lie in 1..=8, got '{s}'")));
    }
    Ok(widths)
}

/// Blank lines and lines starting with `#` are skipped.
fn read_runs(path: &Path) -> Result<Vec<Vec<u32>>> {
    let text = fs::read_to_string(path)?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(n, l)| {
            l.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Error::InvalidInput(format!("line {}: '{t}' is not a relevance grade", n + 1)))
                })
                .collect()
        })
        .collect()
}
