//! Background side-channel: every row's bitmap transmitted as its run-start
//! indices.
//!
//! Section layout, one record per row, all integers little-endian:
//!
//! ```text
//! count   : B_cnt bytes   (0 = all-zero row)
//! index   : B_idx bytes   x count
//! ```
//!
//! `B_idx` is the smallest byte width holding `W - 1` and `B_cnt` the
//! smallest holding `W` (a fully alternating row has `W` starts).

use thiserror::Error;

use crate::image::Image;
use crate::row_scanner::{scan_row, BitmapRow, IndexList};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum BackgroundError {
    #[error("row {row}: index {index} out of range for width {width}")]
    IndexOutOfRange {
        row: usize,
        index: usize,
        width: usize,
    },

    #[error("row {row}: run-start indices are not strictly increasing")]
    NotIncreasing { row: usize },

    #[error("row {row}: count {count} exceeds row width {width}")]
    CountExceedsWidth {
        row: usize,
        count: usize,
        width: usize,
    },

    #[error("background section truncated in row {row}")]
    Truncated { row: usize },

    #[error("background section has {0} unexpected trailing bytes")]
    TrailingBytes(usize),

    #[error("row width must be at least 1")]
    ZeroWidth,
}

/// Minimal number of bytes holding `value` (at least one).
pub fn field_bytes(value: usize) -> usize {
    let bits = usize::BITS - value.leading_zeros();
    (bits as usize).div_ceil(8).max(1)
}

/// `(B_cnt, B_idx)` for rows of `width` pixels.
pub fn field_widths(width: usize) -> (usize, usize) {
    (field_bytes(width), field_bytes(width.saturating_sub(1)))
}

fn check_indices(row: usize, idx: &[usize], width: usize) -> Result<(), BackgroundError> {
    if let Some(&index) = idx.iter().find(|&&i| i >= width) {
        return Err(BackgroundError::IndexOutOfRange { row, index, width });
    }
    if idx.windows(2).any(|w| w[0] >= w[1]) {
        return Err(BackgroundError::NotIncreasing { row });
    }
    Ok(())
}

fn put_le(out: &mut Vec<u8>, value: usize, nbytes: usize) {
    out.extend((0..nbytes).map(|i| (value >> (8 * i)) as u8));
}

fn get_le(bytes: &[u8]) -> usize {
    bytes
        .iter()
        .rev()
        .fold(0usize, |acc, &b| (acc << 8) | usize::from(b))
}

/// Appends one row record.
pub fn encode_row_record(
    out: &mut Vec<u8>,
    row: usize,
    idx: &[usize],
    width: usize,
) -> Result<(), BackgroundError> {
    if width == 0 {
        return Err(BackgroundError::ZeroWidth);
    }
    check_indices(row, idx, width)?;
    let (b_cnt, b_idx) = field_widths(width);
    put_le(out, idx.len(), b_cnt);
    for &i in idx {
        put_le(out, i, b_idx);
    }
    Ok(())
}

pub fn encode_bitmap_section(rows: &[IndexList], width: usize) -> Result<Vec<u8>, BackgroundError> {
    let mut out = Vec::with_capacity(section_len(rows, width));
    for (r, idx) in rows.iter().enumerate() {
        encode_row_record(&mut out, r, idx, width)?;
    }
    Ok(out)
}

/// Encoded size: the sum over rows of `B_cnt + count * B_idx`.
pub fn section_len(rows: &[IndexList], width: usize) -> usize {
    let (b_cnt, b_idx) = field_widths(width);
    rows.iter().map(|r| b_cnt + r.len() * b_idx).sum()
}

/// Parses `height` row records back into index lists.
pub fn decode_index_lists(
    bytes: &[u8],
    width: usize,
    height: usize,
) -> Result<Vec<IndexList>, BackgroundError> {
    if width == 0 {
        return Err(BackgroundError::ZeroWidth);
    }
    let (b_cnt, b_idx) = field_widths(width);
    let mut pos = 0;
    let mut rows = Vec::with_capacity(height);
    for row in 0..height {
        let field = bytes
            .get(pos..pos + b_cnt)
            .ok_or(BackgroundError::Truncated { row })?;
        pos += b_cnt;
        let count = get_le(field);
        if count > width {
            return Err(BackgroundError::CountExceedsWidth { row, count, width });
        }
        let body = bytes
            .get(pos..pos + count * b_idx)
            .ok_or(BackgroundError::Truncated { row })?;
        pos += count * b_idx;
        let idx: IndexList = body.chunks_exact(b_idx).map(get_le).collect();
        check_indices(row, &idx, width)?;
        rows.push(idx);
    }
    if pos != bytes.len() {
        return Err(BackgroundError::TrailingBytes(bytes.len() - pos));
    }
    Ok(rows)
}

pub fn decode_bitmap_section(
    bytes: &[u8],
    width: usize,
    height: usize,
) -> Result<Vec<BitmapRow>, BackgroundError> {
    decode_index_lists(bytes, width, height)?
        .iter()
        .map(|idx| reconstruct_bitmap_row(idx, width))
        .collect()
}

/// Rebuilds a bitmap from its run starts: zeros before the first index, then
/// alternating 1-runs and 0-runs, the last run extending to the row end.
pub fn reconstruct_bitmap_row(idx: &[usize], width: usize) -> Result<BitmapRow, BackgroundError> {
    check_indices(0, idx, width)?;
    let mut bits = vec![false; width];
    let mut level = false;
    let mut next = idx.iter().peekable();
    for (j, bit) in bits.iter_mut().enumerate() {
        if next.next_if_eq(&&j).is_some() {
            level = !level;
        }
        *bit = level;
    }
    Ok(BitmapRow::from_bits(bits))
}

/// Bit accounting with raw 8-bit indices, one 8-bit code per all-zero row
/// and no row delimiters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PaperAccounting {
    pub foreground_bits: u64,
    pub index_bits: u64,
    pub zero_row_bits: u64,
    pub total_bits: u64,
    pub raw_bits: u64,
}

impl PaperAccounting {
    pub fn ratio(&self) -> f64 {
        self.raw_bits as f64 / self.total_bits as f64
    }
}

pub fn paper_cost_model(img: &Image) -> PaperAccounting {
    let mut fg = 0u64;
    let mut indices = 0u64;
    let mut zero_rows = 0u64;
    for row in img.rows() {
        let (bitmap, idx) = scan_row(row);
        fg += bitmap.count_ones() as u64;
        if idx.is_empty() {
            zero_rows += 1;
        } else {
            indices += idx.len() as u64;
        }
    }
    let foreground_bits = 8 * fg;
    let index_bits = 8 * indices;
    let zero_row_bits = 8 * zero_rows;
    PaperAccounting {
        foreground_bits,
        index_bits,
        zero_row_bits,
        total_bits: foreground_bits + index_bits + zero_row_bits,
        raw_bits: 8 * (img.width() * img.height()) as u64,
    }
}
