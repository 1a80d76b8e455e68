//! Shared domain types: MIMO configuration, quantization bit widths and
//! angle identifiers.
//!
//! Everything here is a small immutable value type; the rest of the crate
//! derives shapes and bit widths from these.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Errors raised by configuration and table lookups.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("unknown configuration: no subcarrier count for {standard} {bandwidth_mhz} MHz Ng={grouping_ng} (extend the table file)")]
    UnknownConfiguration {
        standard: Standard,
        bandwidth_mhz: u16,
        grouping_ng: u8,
    },
    #[error("invalid MIMO configuration: {0}")]
    InvalidConfig(String),
    #[error("subcarrier table line {line}: {reason}")]
    TableSyntax { line: usize, reason: String },
    #[error("invalid MAC address {0:?}")]
    BadMacAddress(String),
}

/// PHY designation: VHT is 802.11ac, HE is 802.11ax.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Standard {
    Vht,
    He,
}

impl fmt::Display for Standard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Standard::Vht => write!(f, "vht"),
            Standard::He => write!(f, "he"),
        }
    }
}

impl FromStr for Standard {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, ModelError> {
        match s.to_ascii_lowercase().as_str() {
            "vht" | "11ac" | "ac" => Ok(Standard::Vht),
            "he" | "11ax" | "ax" => Ok(Standard::He),
            other => Err(ModelError::InvalidConfig(format!(
                "unknown standard {other:?} (expected vht or he)"
            ))),
        }
    }
}

/// Channel bandwidth. The two-bit width code in the MIMO control field maps
/// onto these in order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bandwidth {
    Bw20,
    Bw40,
    Bw80,
    Bw160,
}

impl Bandwidth {
    pub fn mhz(self) -> u16 {
        match self {
            Bandwidth::Bw20 => 20,
            Bandwidth::Bw40 => 40,
            Bandwidth::Bw80 => 80,
            Bandwidth::Bw160 => 160,
        }
    }

    /// Width code as carried in the VHT/HE MIMO control field.
    pub fn code(self) -> u8 {
        match self {
            Bandwidth::Bw20 => 0,
            Bandwidth::Bw40 => 1,
            Bandwidth::Bw80 => 2,
            Bandwidth::Bw160 => 3,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(Bandwidth::Bw20),
            1 => Some(Bandwidth::Bw40),
            2 => Some(Bandwidth::Bw80),
            3 => Some(Bandwidth::Bw160),
            _ => None,
        }
    }

    pub fn from_mhz(mhz: u16) -> Option<Self> {
        match mhz {
            20 => Some(Bandwidth::Bw20),
            40 => Some(Bandwidth::Bw40),
            80 => Some(Bandwidth::Bw80),
            160 => Some(Bandwidth::Bw160),
            _ => None,
        }
    }
}

impl fmt::Display for Bandwidth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.mhz())
    }
}

/// Single-user or multi-user feedback; selects the quantization bit widths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FeedbackType {
    Su,
    Mu,
}

impl fmt::Display for FeedbackType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FeedbackType::Su => write!(f, "su"),
            FeedbackType::Mu => write!(f, "mu"),
        }
    }
}

/// One network configuration: everything that fixes the feedback shapes and
/// bit widths for a stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MimoConfig {
    pub standard: Standard,
    pub bandwidth: Bandwidth,
    /// Transmit antennas at the beamformer (rows of the feedback matrix), 1..=8.
    pub n_rows: u8,
    /// Spatial streams (columns of the feedback matrix), 1..=n_rows.
    pub n_cols: u8,
    pub feedback: FeedbackType,
    /// Subcarrier grouping factor Ng (VHT: 1/2/4, HE: 4/16).
    pub grouping_ng: u8,
}

impl MimoConfig {
    pub fn new(
        standard: Standard,
        bandwidth: Bandwidth,
        n_rows: u8,
        n_cols: u8,
        feedback: FeedbackType,
        grouping_ng: u8,
    ) -> Result<Self, ModelError> {
        if n_rows == 0 || n_rows > 8 || n_cols == 0 || n_cols > n_rows {
            return Err(ModelError::InvalidConfig(format!(
                "need 1 <= n_cols <= n_rows <= 8, got {n_rows}x{n_cols}"
            )));
        }
        let ng_ok = match standard {
            Standard::Vht => matches!(grouping_ng, 1 | 2 | 4),
            Standard::He => matches!(grouping_ng, 4 | 16),
        };
        if !ng_ok {
            return Err(ModelError::InvalidConfig(format!(
                "grouping Ng={grouping_ng} is not defined for {standard}"
            )));
        }
        Ok(MimoConfig {
            standard,
            bandwidth,
            n_rows,
            n_cols,
            feedback,
            grouping_ng,
        })
    }

    /// Default grouping for a standard: the densest feedback the standard
    /// defines (VHT Ng=1, HE Ng=4).
    pub fn default_grouping(standard: Standard) -> u8 {
        match standard {
            Standard::Vht => 1,
            Standard::He => 4,
        }
    }
}

impl fmt::Display for MimoConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{} {}x{} {} Ng={}",
            self.standard, self.bandwidth, self.n_rows, self.n_cols, self.feedback, self.grouping_ng
        )
    }
}

/// Quantization bit widths for the two angle families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuantBits {
    pub b_phi: u8,
    pub b_psi: u8,
}

impl QuantBits {
    /// b_psi is always b_phi - 2.
    pub fn from_b_phi(b_phi: u8) -> Self {
        QuantBits {
            b_phi,
            b_psi: b_phi - 2,
        }
    }
}

/// Bit widths for a feedback type and codebook-information bit.
///
/// MU feedback uses the wide pairs (codebook 1: 9/7, codebook 0: 7/5), SU the
/// narrow ones (codebook 1: 6/4, codebook 0: 4/2).
pub fn quant_bits(feedback: FeedbackType, codebook: u8) -> QuantBits {
    let b_phi = match (feedback, codebook) {
        (FeedbackType::Mu, 0) => 7,
        (FeedbackType::Mu, _) => 9,
        (FeedbackType::Su, 0) => 4,
        (FeedbackType::Su, _) => 6,
    };
    QuantBits::from_b_phi(b_phi)
}

/// Inverse of [`quant_bits`]: recover the codebook bit from a width pair.
pub fn codebook_for_bits(feedback: FeedbackType, bits: QuantBits) -> Result<u8, ModelError> {
    for cb in [0u8, 1u8] {
        if quant_bits(feedback, cb) == bits {
            return Ok(cb);
        }
    }
    Err(ModelError::InvalidConfig(format!(
        "bit widths ({}, {}) are not defined for {} feedback",
        bits.b_phi, bits.b_psi, feedback
    )))
}

/// Which angle family an entry of the report belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AngleKind {
    Phi,
    Psi,
}

/// Identifier of one feedback angle, with the 1-based row/column subscripts
/// used throughout IEEE 802.11 (phi_{row,col} / psi_{row,col}).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AngleId {
    pub kind: AngleKind,
    pub row: u8,
    pub col: u8,
}

impl AngleId {
    pub fn phi(row: u8, col: u8) -> Self {
        AngleId {
            kind: AngleKind::Phi,
            row,
            col,
        }
    }

    pub fn psi(row: u8, col: u8) -> Self {
        AngleId {
            kind: AngleKind::Psi,
            row,
            col,
        }
    }
}

impl fmt::Display for AngleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            AngleKind::Phi => write!(f, "phi_{}_{}", self.row, self.col),
            AngleKind::Psi => write!(f, "psi_{}_{}", self.row, self.col),
        }
    }
}

/// Number of angles per subcarrier for a (rows, streams) pair.
///
/// Each column index i in 1..=min(n_cols, n_rows-1) contributes n_rows - i
/// phi angles and as many psi angles.
pub fn angle_count(n_rows: u8, n_cols: u8) -> usize {
    let m = n_rows as usize;
    let upper = (n_cols as usize).min(m.saturating_sub(1));
    2 * (1..=upper).map(|i| m - i).sum::<usize>()
}

/// 48-bit IEEE 802 MAC address.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MacAddr(pub [u8; 6]);

impl fmt::Display for MacAddr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = self.0;
        write!(
            f,
            "{:02x}:{:02x}:{:02x}:{:02x}:{:02x}:{:02x}",
            b[0], b[1], b[2], b[3], b[4], b[5]
        )
    }
}

impl FromStr for MacAddr {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, ModelError> {
        let parts: Vec<&str> = s.split([':', '-']).collect();
        if parts.len() != 6 {
            return Err(ModelError::BadMacAddress(s.to_string()));
        }
        let mut out = [0u8; 6];
        for (dst, part) in out.iter_mut().zip(parts) {
            *dst = u8::from_str_radix(part, 16)
                .map_err(|_| ModelError::BadMacAddress(s.to_string()))?;
        }
        Ok(MacAddr(out))
    }
}
