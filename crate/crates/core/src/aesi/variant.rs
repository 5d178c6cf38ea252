use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Autoencoder architecture. Side information is the static token
/// embedding `u`, concatenated after the main input of a stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Two dense layers per side, `u` fed to encoder and decoder.
    Aesi2L,
    /// Two dense layers per side, no side information.
    Ae2L,
    /// One linear layer per side, no side information.
    Ae1L,
    /// One linear layer per side, `u` fed to encoder and decoder.
    Aesi1L,
    /// Two dense layers per side, `u` fed to the decoder only.
    AesiDec2L,
}

impl Variant {
    pub const ALL: [Variant; 5] = [
        Variant::Aesi2L,
        Variant::Ae2L,
        Variant::Ae1L,
        Variant::Aesi1L,
        Variant::AesiDec2L,
    ];

    pub fn id(self) -> u8 {
        match self {
            Variant::Aesi2L => 0,
            Variant::Ae2L => 1,
            Variant::Ae1L => 2,
            Variant::Aesi1L => 3,
            Variant::AesiDec2L => 4,
        }
    }

    pub fn from_id(id: u8) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.id() == id)
            .ok_or_else(|| Error::format(format!("unknown variant id {id}")))
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Aesi2L => "aesi-2l",
            Variant::Ae2L => "ae-2l",
            Variant::Ae1L => "ae-1l",
            Variant::Aesi1L => "aesi-1l",
            Variant::AesiDec2L => "aesi-dec-2l",
        }
    }

    pub fn encoder_side_info(self) -> bool {
        matches!(self, Variant::Aesi2L | Variant::Aesi1L)
    }

    pub fn decoder_side_info(self) -> bool {
        matches!(self, Variant::Aesi2L | Variant::Aesi1L | Variant::AesiDec2L)
    }

    pub fn two_layer(self) -> bool {
        !matches!(self, Variant::Ae1L | Variant::Aesi1L)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase().replace('_', "-");
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::config(format!("unknown autoencoder variant {s:?}")))
    }
}
