use std::fmt;
use std::str::FromStr;

use super::{
    drive_bc_dequantize, drive_dequantize, drive_quantize, hadamard_wrap, minmax_dequantize, minmax_quantize,
    CentroidTable, RoundingKind,
};
use crate::{Error, Result};

/// Every quantizer compared in the benchmark harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Drive,
    DriveBc,
    Dr,
    Sr,
    Sd,
    HDr,
    HSr,
    HSd,
}

impl Scheme {
    pub const ALL: [Scheme; 8] = [
        Scheme::Drive,
        Scheme::DriveBc,
        Scheme::Dr,
        Scheme::Sr,
        Scheme::Sd,
        Scheme::HDr,
        Scheme::HSr,
        Scheme::HSd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Drive => "DRIVE",
            Scheme::DriveBc => "DRIVE-BC",
            Scheme::Dr => "DR",
            Scheme::Sr => "SR",
            Scheme::Sd => "SD",
            Scheme::HDr => "H-DR",
            Scheme::HSr => "H-SR",
            Scheme::HSd => "H-SD",
        }
    }

    fn rounding(self) -> Option<(RoundingKind, bool)> {
        use RoundingKind::*;
        match self {
            Scheme::Drive | Scheme::DriveBc => None,
            Scheme::Dr => Some((Deterministic, false)),
            Scheme::Sr => Some((Stochastic, false)),
            Scheme::Sd => Some((Subtractive, false)),
            Scheme::HDr => Some((Deterministic, true)),
            Scheme::HSr => Some((Stochastic, true)),
            Scheme::HSd => Some((Subtractive, true)),
        }
    }

    /// Whether the scheme needs a power-of-two block length.
    pub fn needs_power_of_two(self) -> bool {
        !matches!(self, Scheme::Dr | Scheme::Sr | Scheme::Sd)
    }

    /// Quantizes and immediately reconstructs `x`.
    pub fn roundtrip(self, x: &[f32], bits: u8, seed: u64) -> Result<Vec<f32>> {
        match self.rounding() {
            None => {
                let table = CentroidTable::standard(bits)?;
                let q = drive_quantize(x, seed, table)?;
                if self == Scheme::Drive {
                    drive_dequantize(&q, seed, table)
                } else {
                    drive_bc_dequantize(&q, seed, table)
                }
            }
            Some((kind, false)) => {
                let q = minmax_quantize(kind, x, bits, seed)?;
                Ok(minmax_dequantize(kind, &q, seed))
            }
            Some((kind, true)) => {
                let w = hadamard_wrap(kind);
                let q = w.quantize(x, bits, seed)?;
                w.dequantize(&q, seed)
            }
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('_', "-");
        Scheme::ALL
            .into_iter()
            .find(|sch| sch.name() == norm || sch.name().replace('-', "") == norm)
            .ok_or_else(|| Error::config(format!("unknown quantization scheme {s:?}")))
    }
}
