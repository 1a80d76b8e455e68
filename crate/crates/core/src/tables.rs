//! Subcarrier-count table, loaded from a line-oriented text file.
//!
//! The number of sounded subcarriers K depends on the standard, the channel
//! bandwidth and the grouping factor Ng. The crate ships a default table
//! (`data/subcarriers.txt`); deployments can extend or override it with
//! their own file of the same grammar.

use std::collections::BTreeMap;

use crate::model::{Bandwidth, ModelError, Standard};

/// Map from (standard, bandwidth, grouping) to the subcarrier count K.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubcarrierTable {
    entries: BTreeMap<(Standard, u16, u8), u16>,
}

impl SubcarrierTable {
    /// The table shipped with the crate.
    pub fn builtin() -> Self {
        // The shipped file is validated by a unit test; parsing cannot fail.
        Self::parse(include_str!("../data/subcarriers.txt"))
            .expect("built-in subcarrier table is well-formed")
    }

    /// Parse the text grammar: `standard bandwidth grouping count` per line,
    /// `#` comments, blank lines ignored, later lines override earlier ones.
    pub fn parse(text: &str) -> Result<Self, ModelError> {
        let mut entries = BTreeMap::new();
        for (idx, raw_line) in text.lines().enumerate() {
            let line = raw_line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |reason: String| ModelError::TableSyntax {
                line: idx + 1,
                reason,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(syntax(format!(
                    "expected 4 fields `standard bandwidth grouping count`, got {}",
                    fields.len()
                )));
            }
            let standard: Standard = fields[0]
                .parse()
                .map_err(|e: ModelError| syntax(e.to_string()))?;
            let mhz: u16 = fields[1]
                .parse()
                .map_err(|_| syntax(format!("bad bandwidth {:?}", fields[1])))?;
            if Bandwidth::from_mhz(mhz).is_none() {
                return Err(syntax(format!("bandwidth {mhz} MHz is not one of 20/40/80/160")));
            }
            let ng: u8 = fields[2]
                .parse()
                .map_err(|_| syntax(format!("bad grouping {:?}", fields[2])))?;
            let count: u16 = fields[3]
                .parse()
                .map_err(|_| syntax(format!("bad subcarrier count {:?}", fields[3])))?;
            if count == 0 {
                return Err(syntax("subcarrier count must be positive".to_string()));
            }
            entries.insert((standard, mhz, ng), count);
        }
        Ok(SubcarrierTable { entries })
    }

    /// Subcarrier count for a configuration key.
    pub fn subcarrier_count(
        &self,
        standard: Standard,
        bandwidth: Bandwidth,
        grouping_ng: u8,
    ) -> Result<u16, ModelError> {
        self.entries
            .get(&(standard, bandwidth.mhz(), grouping_ng))
            .copied()
            .ok_or(ModelError::UnknownConfiguration {
                standard,
                bandwidth_mhz: bandwidth.mhz(),
                grouping_ng,
            })
    }

    /// All entries in deterministic key order.
    pub fn iter(&self) -> impl Iterator<Item = (Standard, u16, u8, u16)> + '_ {
        self.entries
            .iter()
            .map(|(&(standard, mhz, ng), &count)| (standard, mhz, ng, count))
    }
}
