//! Boolean oracles as explicit truth tables, and their prefix split into
//! per-node sub-functions.
//!
//! # Oracle file format
//!
//! A JSON object with `n_bits` and exactly one of:
//!
//! * `targets`: array of `n_bits`-character bitstrings marked by the oracle;
//! * `truth_table_hex`: the table packed four entries per hex digit, entry
//!   `0` in the most significant bit of the first digit. The string has
//!   `ceil(2^n_bits / 4)` digits and any padding bits must be zero.
//!
//! ```json
//! { "n_bits": 6, "targets": ["110110", "111111", "011001"] }
//! { "n_bits": 3, "truth_table_hex": "81" }
//! ```

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bits::{format_bits, parse_bits};
use crate::error::{invalid, Error, Result};
use crate::statevector::MAX_QUBITS;

/// A total Boolean function on `n_bits`-bit inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanOracle {
    n_bits: usize,
    table: Vec<bool>,
}

fn check_bits(n: usize) -> Result<()> {
    if n == 0 {
        return Err(invalid("oracle must have at least one input bit"));
    }
    if n > MAX_QUBITS {
        return Err(Error::Resource(format!("{n} input bits exceeds the cap of {MAX_QUBITS}")));
    }
    Ok(())
}

impl BooleanOracle {
    pub fn from_table(table: Vec<bool>) -> Result<Self> {
        let len = table.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(invalid(format!("truth table length {len} is not a power of two >= 2")));
        }
        let n_bits = len.trailing_zeros() as usize;
        check_bits(n_bits)?;
        Ok(Self { n_bits, table })
    }

    /// Marks exactly the given bitstrings.
    pub fn from_targets<S: AsRef<str>>(n: usize, targets: impl IntoIterator<Item = S>) -> Result<Self> {
        check_bits(n)?;
        let mut table = vec![false; 1 << n];
        for t in targets {
            table[parse_bits(t.as_ref(), n)?] = true;
        }
        Ok(Self { n_bits: n, table })
    }

    pub fn from_indices(n: usize, targets: impl IntoIterator<Item = usize>) -> Result<Self> {
        check_bits(n)?;
        let mut table = vec![false; 1 << n];
        for t in targets {
            *table
                .get_mut(t)
                .ok_or_else(|| invalid(format!("target index {t} out of range for {n} bits")))? = true;
        }
        Ok(Self { n_bits: n, table })
    }

    /// Tabulate a predicate over basis indices.
    pub fn from_predicate<F: Fn(usize) -> bool>(n: usize, predicate: F) -> Result<Self> {
        check_bits(n)?;
        Ok(Self {
            n_bits: n,
            table: (0..1usize << n).map(predicate).collect(),
        })
    }

    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    pub fn evaluate(&self, x: &str) -> Result<bool> {
        Ok(self.table[parse_bits(x, self.n_bits)?])
    }

    /// Table lookup by basis index; panics when out of range.
    pub fn is_marked(&self, index: usize) -> bool {
        self.table[index]
    }

    pub fn count_targets(&self) -> usize {
        self.table.iter().filter(|&&b| b).count()
    }

    pub fn target_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.table.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn targets(&self) -> Vec<String> {
        self.target_indices().map(|i| format_bits(i, self.n_bits)).collect()
    }

    /// Fix the leading `j` bits: sub-function `k` is `x -> f(k ∥ x)`.
    pub fn split(&self, j: usize) -> Result<OracleSplit> {
        if j == 0 || j >= self.n_bits {
            return Err(invalid(format!(
                "prefix width {j} must satisfy 1 <= j < {}",
                self.n_bits
            )));
        }
        let width = 1usize << (self.n_bits - j);
        let subs = self
            .table
            .chunks_exact(width)
            .map(|chunk| BooleanOracle {
                n_bits: self.n_bits - j,
                table: chunk.to_vec(),
            })
            .collect();
        Ok(OracleSplit { j, subs })
    }

    pub fn to_hex(&self) -> String {
        self.table
            .chunks(4)
            .map(|nibble| {
                let value = nibble
                    .iter()
                    .enumerate()
                    .fold(0u32, |acc, (pos, &b)| acc | (u32::from(b) << (3 - pos)));
                char::from_digit(value, 16).expect("nibble")
            })
            .collect()
    }

    pub fn from_hex(n: usize, hex: &str) -> Result<Self> {
        check_bits(n)?;
        let len = 1usize << n;
        let digits = len.div_ceil(4);
        if hex.len() != digits {
            return Err(Error::Parse(format!(
                "truth table for {n} bits needs {digits} hex digits, got {}",
                hex.len()
            )));
        }
        let mut table = Vec::with_capacity(digits * 4);
        for c in hex.chars() {
            let value = c
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("invalid hex digit {c:?}")))?;
            table.extend((0..4).map(|pos| (value >> (3 - pos)) & 1 == 1));
        }
        if table[len..].iter().any(|&b| b) {
            return Err(Error::Parse("truth table padding bits must be zero".into()));
        }
        table.truncate(len);
        Ok(Self { n_bits: n, table })
    }

    pub fn parse_file_contents(text: &str) -> Result<Self> {
        let file: OracleFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("oracle file: {e}")))?;
        file.into_oracle()
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse_file_contents(&std::fs::read_to_string(path)?)
    }

    /// Serialized form using an explicit target list.
    pub fn to_file_contents(&self) -> String {
        let file = OracleFile {
            n_bits: self.n_bits,
            targets: Some(self.targets()),
            truth_table_hex: None,
        };
        serde_json::to_string_pretty(&file).expect("oracle file serializes")
    }
}

/// On-disk oracle description.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleFile {
    pub n_bits: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub targets: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truth_table_hex: Option<String>,
}

impl OracleFile {
    pub fn into_oracle(self) -> Result<BooleanOracle> {
        match (self.targets, self.truth_table_hex) {
            (Some(targets), None) => {
                let unique: BTreeSet<&String> = targets.iter().collect();
                if unique.len() != targets.len() {
                    return Err(Error::Parse("duplicate target in oracle file".into()));
                }
                BooleanOracle::from_targets(self.n_bits, &targets).map_err(|e| match e {
                    Error::InvalidArgument(msg) => Error::Parse(msg),
                    other => other,
                })
            }
            (None, Some(hex)) => BooleanOracle::from_hex(self.n_bits, &hex),
            _ => Err(Error::Parse(
                "oracle file needs exactly one of `targets` or `truth_table_hex`".into(),
            )),
        }
    }
}

/// The `2^j` sub-functions obtained by fixing a `j`-bit prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleSplit {
    j: usize,
    subs: Vec<BooleanOracle>,
}

impl OracleSplit {
    pub fn prefix_width(&self) -> usize {
        self.j
    }

    pub fn subs(&self) -> &[BooleanOracle] {
        &self.subs
    }

    pub fn sub(&self, k: usize) -> &BooleanOracle {
        &self.subs[k]
    }

    /// Concatenate the sub-tables in prefix order.
    pub fn concat(&self) -> BooleanOracle {
        let table = self.subs.iter().flat_map(|s| s.table.iter().copied()).collect();
        BooleanOracle {
            n_bits: self.j + self.subs[0].n_bits,
            table,
        }
    }
}
