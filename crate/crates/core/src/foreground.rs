//! Foreground path: compact each row's non-zero pixels, difference
//! neighbouring values, and entropy-code the residuals.

use thiserror::Error;

use crate::compactor::{compact_structural, MaskedVector};
use crate::row_scanner::BitmapRow;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ForegroundError {
    #[error("bitmap width {bitmap} does not match row width {row}")]
    WidthMismatch { row: usize, bitmap: usize },

    #[error("bitmap bit {index} disagrees with pixel value {value}")]
    BitmapDisagrees { index: usize, value: u8 },

    #[error("residual {index} reconstructs a zero foreground pixel")]
    ZeroPixel { index: usize },
}

fn check(row: &[u8], b: &BitmapRow) -> Result<(), ForegroundError> {
    if row.len() != b.width() {
        return Err(ForegroundError::WidthMismatch {
            row: row.len(),
            bitmap: b.width(),
        });
    }
    if let Some((index, &value)) = row.iter().enumerate().find(|&(j, &v)| (v != 0) != b.get(j)) {
        return Err(ForegroundError::BitmapDisagrees { index, value });
    }
    Ok(())
}

/// Kept pixels of one row, in column order.
pub fn extract_foreground(row: &[u8], b: &BitmapRow) -> Result<Vec<u8>, ForegroundError> {
    check(row, b)?;
    Ok(row.iter().copied().filter(|&v| v != 0).collect())
}

/// Same as [`extract_foreground`], routed through the RU grid model.
pub fn extract_foreground_structural(
    row: &[u8],
    b: &BitmapRow,
) -> Result<Vec<u8>, ForegroundError> {
    check(row, b)?;
    if row.is_empty() {
        return Ok(Vec::new());
    }
    let mv = MaskedVector::new(row.to_vec(), b.bits().to_vec()).expect("widths checked");
    let mut out = compact_structural(&mv);
    out.truncate(mv.kept());
    Ok(out)
}

/// `r[i] = v[i] - v[i-1] (mod 256)` with `v[-1] = 0`.
pub fn residual_encode(fg: &[u8]) -> Vec<u8> {
    let mut prev = 0u8;
    fg.iter()
        .map(|&v| {
            let r = v.wrapping_sub(prev);
            prev = v;
            r
        })
        .collect()
}

/// Inverse of [`residual_encode`]. Any reconstructed zero is corruption,
/// since foreground pixels are non-zero by definition.
pub fn residual_decode(rs: &[u8]) -> Result<Vec<u8>, ForegroundError> {
    let mut prev = 0u8;
    rs.iter()
        .enumerate()
        .map(|(index, &r)| {
            prev = prev.wrapping_add(r);
            if prev == 0 {
                Err(ForegroundError::ZeroPixel { index })
            } else {
                Ok(prev)
            }
        })
        .collect()
}

/// Running residual coder whose state spans rows, so the image-wide
/// foreground stream is differenced as one sequence.
#[derive(Debug, Clone, Copy, Default)]
pub struct ResidualState {
    prev: u8,
}

impl ResidualState {
    pub fn push(&mut self, v: u8) -> u8 {
        let r = v.wrapping_sub(self.prev);
        self.prev = v;
        r
    }
}
