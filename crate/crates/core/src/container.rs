//! The `.macc` file format and top-level compress/decompress.
//!
//! ```text
//! offset  size  field
//! 0       4     magic "MACC"
//! 4       1     version (1)
//! 5       4     width             u32 LE
//! 9       4     height            u32 LE
//! 13      8     fg_count          u64 LE, number of non-zero pixels
//! 21      8     bg_section_len    u64 LE
//! 29      256   Huffman code lengths, one byte per residual symbol
//! 285     ..    background section (bg_section_len bytes)
//! ..      ..    foreground bitstream, MSB-first, to end of file
//! ```

use std::fmt;

use thiserror::Error;

use crate::background::{
    decode_bitmap_section, encode_bitmap_section, paper_cost_model, BackgroundError,
    PaperAccounting,
};
use crate::bitio::BitReader;
use crate::foreground::{extract_foreground, residual_decode, residual_encode, ForegroundError};
use crate::huffman::{
    histogram, huffman_build, huffman_encode, HuffmanError, HuffmanTable, ALPHABET,
};
use crate::image::Image;
use crate::row_scanner::{scan_row, IndexList};

pub const MAGIC: [u8; 4] = *b"MACC";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 29;
pub const TABLE_LEN: usize = ALPHABET;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ContainerError {
    #[error("not a MACC file")]
    BadMagic,

    #[error("unsupported MACC version {0} (this build reads version {VERSION})")]
    UnsupportedVersion(u8),

    #[error("MACC header truncated ({0} bytes)")]
    TruncatedHeader(usize),

    #[error("invalid image dimensions {width}x{height}")]
    InvalidDimensions { width: u64, height: u64 },

    #[error("background section declares {declared} bytes but only {available} remain")]
    SectionLength { declared: u64, available: u64 },

    #[error("invalid Huffman table: {0}")]
    Table(HuffmanError),

    #[error("background section: {0}")]
    Background(#[from] BackgroundError),

    #[error("header declares {header} foreground pixels but the bitmaps hold {bitmap}")]
    FgCountMismatch { header: u64, bitmap: u64 },

    #[error("foreground bitstream: {0}")]
    Foreground(HuffmanError),

    #[error("foreground bitstream has {0} bytes past the last code")]
    TrailingForeground(usize),

    #[error("foreground residuals: {0}")]
    Residual(#[from] ForegroundError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Header {
    pub width: u32,
    pub height: u32,
    pub fg_count: u64,
    pub bg_section_len: u64,
}

impl Header {
    fn write(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&MAGIC);
        out.push(VERSION);
        out.extend_from_slice(&self.width.to_le_bytes());
        out.extend_from_slice(&self.height.to_le_bytes());
        out.extend_from_slice(&self.fg_count.to_le_bytes());
        out.extend_from_slice(&self.bg_section_len.to_le_bytes());
    }

    fn read(bytes: &[u8]) -> Result<Self, ContainerError> {
        if bytes.len() < MAGIC.len() || bytes[..4] != MAGIC {
            return Err(ContainerError::BadMagic);
        }
        if bytes.len() < HEADER_LEN {
            return Err(ContainerError::TruncatedHeader(bytes.len()));
        }
        if bytes[4] != VERSION {
            return Err(ContainerError::UnsupportedVersion(bytes[4]));
        }
        let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
        let u64_at = |o: usize| u64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
        let header = Self {
            width: u32_at(5),
            height: u32_at(9),
            fg_count: u64_at(13),
            bg_section_len: u64_at(21),
        };
        if header.width == 0 || header.height == 0 {
            return Err(ContainerError::InvalidDimensions {
                width: header.width.into(),
                height: header.height.into(),
            });
        }
        Ok(header)
    }
}

/// A parsed `.macc` stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressedStream {
    pub header: Header,
    pub table: HuffmanTable,
    pub background: Vec<u8>,
    pub foreground: Vec<u8>,
}

impl CompressedStream {
    pub fn len(&self) -> usize {
        HEADER_LEN + TABLE_LEN + self.background.len() + self.foreground.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.len());
        self.header.write(&mut out);
        out.extend_from_slice(&self.table.serialize());
        out.extend_from_slice(&self.background);
        out.extend_from_slice(&self.foreground);
        out
    }

    /// Splits a file into its sections; checks magic, version, and lengths.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self, ContainerError> {
        let header = Header::read(bytes)?;
        let rest = &bytes[HEADER_LEN..];
        if rest.len() < TABLE_LEN {
            return Err(ContainerError::Table(HuffmanError::BadTableLength(
                rest.len(),
            )));
        }
        let table = HuffmanTable::deserialize(&rest[..TABLE_LEN]).map_err(ContainerError::Table)?;
        let rest = &rest[TABLE_LEN..];
        let available = rest.len() as u64;
        if header.bg_section_len > available {
            return Err(ContainerError::SectionLength {
                declared: header.bg_section_len,
                available,
            });
        }
        let (background, foreground) = rest.split_at(header.bg_section_len as usize);
        Ok(Self {
            header,
            table,
            background: background.to_vec(),
            foreground: foreground.to_vec(),
        })
    }
}

/// Per-row intermediate products shared by the codec and the simulator.
pub(crate) fn encode_sections(img: &Image) -> (Vec<IndexList>, Vec<u8>) {
    let mut rows = Vec::with_capacity(img.height());
    let mut fg = Vec::new();
    for row in img.rows() {
        let (bitmap, idx) = scan_row(row);
        fg.extend(extract_foreground(row, &bitmap).expect("bitmap derived from row"));
        rows.push(idx);
    }
    (rows, fg)
}

/// Huffman table for an image's residual stream (empty if no foreground).
pub fn residual_table(residuals: &[u8]) -> HuffmanTable {
    if residuals.is_empty() {
        HuffmanTable::empty()
    } else {
        huffman_build(&histogram(residuals)).expect("non-empty histogram")
    }
}

/// # Panics
///
/// If either dimension exceeds `u32::MAX`.
pub fn compress(img: &Image) -> CompressedStream {
    let width = u32::try_from(img.width()).expect("width fits in u32");
    let height = u32::try_from(img.height()).expect("height fits in u32");
    let (rows, fg) = encode_sections(img);
    let background = encode_bitmap_section(&rows, img.width()).expect("scanner output is valid");
    let residuals = residual_encode(&fg);
    let table = residual_table(&residuals);
    let (foreground, _) = huffman_encode(&residuals, &table).expect("table covers every residual");
    CompressedStream {
        header: Header {
            width,
            height,
            fg_count: fg.len() as u64,
            bg_section_len: background.len() as u64,
        },
        table,
        background,
        foreground,
    }
}

pub fn decompress(cs: &CompressedStream) -> Result<Image, ContainerError> {
    let width = cs.header.width as usize;
    let height = cs.header.height as usize;
    if cs.background.len() as u64 != cs.header.bg_section_len {
        return Err(ContainerError::SectionLength {
            declared: cs.header.bg_section_len,
            available: cs.background.len() as u64,
        });
    }
    let bitmaps = decode_bitmap_section(&cs.background, width, height)?;
    let popcount: u64 = bitmaps.iter().map(|b| b.count_ones() as u64).sum();
    if popcount != cs.header.fg_count {
        return Err(ContainerError::FgCountMismatch {
            header: cs.header.fg_count,
            bitmap: popcount,
        });
    }

    let n = popcount as usize;
    let mut reader = BitReader::new(&cs.foreground);
    let mut residuals = Vec::with_capacity(n);
    while residuals.len() < n {
        match cs.table.decode_symbol(&mut reader) {
            Ok(Some(s)) => residuals.push(s),
            Ok(None) => {
                return Err(ContainerError::Foreground(HuffmanError::Exhausted {
                    decoded: residuals.len(),
                    expected: n,
                }))
            }
            Err(e) => return Err(ContainerError::Foreground(e)),
        }
    }
    let used = reader.position().div_ceil(8) as usize;
    if used < cs.foreground.len() {
        return Err(ContainerError::TrailingForeground(
            cs.foreground.len() - used,
        ));
    }
    let fg = residual_decode(&residuals)?;

    let mut pixels = vec![0u8; width * height];
    let mut values = fg.into_iter();
    for (bitmap, out) in bitmaps.iter().zip(pixels.chunks_exact_mut(width)) {
        for (px, _) in out.iter_mut().zip(bitmap.bits()).filter(|(_, &b)| b) {
            *px = values.next().expect("count checked against popcount");
        }
    }
    Ok(Image::new(width, height, pixels).expect("dimensions validated"))
}

pub fn compress_to_vec(img: &Image) -> Vec<u8> {
    compress(img).to_bytes()
}

pub fn decompress_bytes(bytes: &[u8]) -> Result<Image, ContainerError> {
    decompress(&CompressedStream::from_bytes(bytes)?)
}

/// Measured sizes of an actual compression run next to the idealised model.
#[derive(Debug, Clone, PartialEq)]
pub struct StatsReport {
    pub width: usize,
    pub height: usize,
    pub raw_bits: u64,
    pub container_bits: u64,
    pub container_ratio: f64,
    pub paper_model: PaperAccounting,
    pub fg_count: u64,
    pub fg_raw_bits: u64,
    /// Exact code bits before byte padding.
    pub fg_code_bits: u64,
    /// `fg_raw_bits / (8 * foreground bytes)`; `None` without foreground.
    pub fg_ratio: Option<f64>,
    pub header_bytes: usize,
    pub table_bytes: usize,
    pub background_bytes: usize,
    pub foreground_bytes: usize,
}

pub fn stats(img: &Image) -> StatsReport {
    let cs = compress(img);
    let raw_bits = 8 * (img.width() * img.height()) as u64;
    let container_bits = 8 * cs.len() as u64;
    let fg_raw_bits = 8 * cs.header.fg_count;
    let fg_coded = 8 * cs.foreground.len() as u64;
    let (_, fg_code_bits) = {
        let (_, fg) = encode_sections(img);
        huffman_encode(&residual_encode(&fg), &cs.table).expect("table from same stream")
    };
    StatsReport {
        width: img.width(),
        height: img.height(),
        raw_bits,
        container_bits,
        container_ratio: raw_bits as f64 / container_bits as f64,
        paper_model: paper_cost_model(img),
        fg_count: cs.header.fg_count,
        fg_raw_bits,
        fg_code_bits,
        fg_ratio: (fg_coded > 0).then(|| fg_raw_bits as f64 / fg_coded as f64),
        header_bytes: HEADER_LEN,
        table_bytes: TABLE_LEN,
        background_bytes: cs.background.len(),
        foreground_bytes: cs.foreground.len(),
    }
}

impl fmt::Display for StatsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "size:              {}x{}", self.width, self.height)?;
        writeln!(f, "raw bits:          {}", self.raw_bits)?;
        writeln!(
            f,
            "container bits:    {} (header {} + table {} + background {} + foreground {} bytes)",
            self.container_bits,
            self.header_bytes,
            self.table_bytes,
            self.background_bytes,
            self.foreground_bytes
        )?;
        writeln!(f, "container ratio:   {:.4}", self.container_ratio)?;
        writeln!(f, "foreground pixels: {}", self.fg_count)?;
        match self.fg_ratio {
            Some(r) => writeln!(
                f,
                "foreground ratio:  {r:.4} ({} raw bits / {} coded bits)",
                self.fg_raw_bits,
                8 * self.foreground_bytes
            )?,
            None => writeln!(f, "foreground ratio:  n/a (no foreground)")?,
        }
        let m = &self.paper_model;
        write!(
            f,
            "8-bit model:       {:.4} ({} raw / {} bits = fg {} + indices {} + zero rows {})",
            m.ratio(),
            m.raw_bits,
            m.total_bits,
            m.foreground_bits,
            m.index_bits,
            m.zero_row_bits
        )
    }
}
