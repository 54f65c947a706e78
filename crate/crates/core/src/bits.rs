//! Big-endian bitstring text form: the leftmost character is the first
//! qubit, so the string `"0110"` is basis index 6.

use crate::error::{invalid, Result};

/// Render `index` as a `width`-character bitstring.
pub fn format_bits(index: usize, width: usize) -> String {
    (0..width)
        .rev()
        .map(|shift| if (index >> shift) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Parse a bitstring of exactly `width` characters into its basis index.
pub fn parse_bits(text: &str, width: usize) -> Result<usize> {
    if text.len() != width {
        return Err(invalid(format!(
            "bitstring {text:?} has length {}, expected {width}",
            text.len()
        )));
    }
    text.chars().try_fold(0usize, |acc, c| match c {
        '0' => Ok(acc << 1),
        '1' => Ok((acc << 1) | 1),
        other => Err(invalid(format!("bitstring {text:?} contains {other:?}"))),
    })
}
