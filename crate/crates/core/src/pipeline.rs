//! Cycle-level model of the three-stage row pipeline.
//!
//! | stage | work                                                        |
//! |-------|-------------------------------------------------------------|
//! | 1     | OR-reduce pixels into the row bitmap                        |
//! | 2     | XOR transitions -> index CU; in parallel, pixels -> fg CU   |
//! | 3     | emit the row's index record, residual + Huffman its pixels  |
//!
//! One row enters per cycle, so a row admitted on cycle `c` leaves stage 3
//! on cycle `c + 2` and an `H`-row image takes `H + 2` cycles. Both CUs are
//! evaluated through the RU grid model and are combinational inside stage 2.
//! The Huffman table comes from a histogram pass made before simulation.

use std::fmt::Write as _;

use crate::background::encode_row_record;
use crate::bitio::BitWriter;
use crate::compactor::{compact_structural, MaskedVector};
use crate::container::{encode_sections, residual_table};
use crate::foreground::{extract_foreground_structural, residual_encode, ResidualState};
use crate::huffman::{encode_into, HuffmanTable};
use crate::image::Image;
use crate::row_scanner::{bitmap_row, transitions, BitmapRow, IndexList};

#[derive(Debug, Clone)]
struct BitmapReg {
    row: usize,
    pixels: Vec<u8>,
    bitmap: BitmapRow,
}

#[derive(Debug, Clone)]
struct CompactReg {
    row: usize,
    indices: IndexList,
    foreground: Vec<u8>,
}

/// What stage 3 released on one cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowEmission {
    pub row: usize,
    pub background: Vec<u8>,
    /// Foreground bytes completed this cycle; a partial byte carries over.
    pub foreground: Vec<u8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CycleRecord {
    /// 1-based.
    pub cycle: u64,
    pub stage1: Option<usize>,
    pub stage2: Option<usize>,
    pub stage3: Option<usize>,
    /// Row whose run starts the index CU compacted this cycle.
    pub index_cu: Option<usize>,
    /// Row whose pixels the foreground CU compacted this cycle.
    pub foreground_cu: Option<usize>,
    pub bytes_emitted: usize,
}

#[derive(Debug, Clone)]
pub struct PipelineState {
    width: usize,
    table: HuffmanTable,
    cycle: u64,
    admitted: usize,
    reg12: Option<BitmapReg>,
    reg23: Option<CompactReg>,
    residuals: ResidualState,
    writer: BitWriter,
    background: Vec<u8>,
    foreground: Vec<u8>,
    emitted: Vec<CycleRecord>,
}

impl PipelineState {
    pub fn new(width: usize, table: HuffmanTable) -> Self {
        Self {
            width,
            table,
            cycle: 0,
            admitted: 0,
            reg12: None,
            reg23: None,
            residuals: ResidualState::default(),
            writer: BitWriter::new(),
            background: Vec::new(),
            foreground: Vec::new(),
            emitted: Vec::new(),
        }
    }

    pub fn cycle(&self) -> u64 {
        self.cycle
    }

    /// Rows currently held in stage registers.
    pub fn in_flight(&self) -> usize {
        self.reg12.is_some() as usize + self.reg23.is_some() as usize
    }

    /// Advances one clock. `None` inserts a bubble.
    ///
    /// # Panics
    ///
    /// If `input` is not `width` pixels wide, or the table lacks a residual
    /// symbol the image produces.
    pub fn step(&mut self, input: Option<&[u8]>) -> Option<RowEmission> {
        self.cycle += 1;

        // stage 3
        let emission = self.reg23.take().map(|reg| {
            let mut background = Vec::new();
            encode_row_record(&mut background, reg.row, &reg.indices, self.width)
                .expect("indices come from the scanner");
            let residuals: Vec<u8> = reg
                .foreground
                .iter()
                .map(|&v| self.residuals.push(v))
                .collect();
            encode_into(&mut self.writer, &residuals, &self.table)
                .expect("table built from this image's residuals");
            let foreground = self.writer.drain_complete();
            self.background.extend_from_slice(&background);
            self.foreground.extend_from_slice(&foreground);
            RowEmission {
                row: reg.row,
                background,
                foreground,
            }
        });

        // stage 2: both CUs see the same row in the same cycle
        let stage2 = self.reg12.take().map(|reg| {
            let t = transitions(&reg.bitmap);
            let columns = MaskedVector::new((0..self.width).collect(), t.bits().to_vec())
                .expect("row width is non-zero");
            let mut indices = compact_structural(&columns);
            indices.truncate(columns.kept());
            let foreground = extract_foreground_structural(&reg.pixels, &reg.bitmap)
                .expect("bitmap derived from row");
            CompactReg {
                row: reg.row,
                indices,
                foreground,
            }
        });

        // stage 1
        let stage1 = input.map(|pixels| {
            assert_eq!(pixels.len(), self.width, "row width");
            let row = self.admitted;
            self.admitted += 1;
            BitmapReg {
                row,
                pixels: pixels.to_vec(),
                bitmap: bitmap_row(pixels),
            }
        });

        let stage2_row = stage2.as_ref().map(|r| r.row);
        self.emitted.push(CycleRecord {
            cycle: self.cycle,
            stage1: stage1.as_ref().map(|r| r.row),
            stage2: stage2_row,
            stage3: emission.as_ref().map(|e| e.row),
            index_cu: stage2_row,
            foreground_cu: stage2_row,
            bytes_emitted: emission
                .as_ref()
                .map_or(0, |e| e.background.len() + e.foreground.len()),
        });
        self.reg23 = stage2;
        self.reg12 = stage1;
        emission
    }

    /// Flushes the padded final foreground byte into the last cycle's count.
    pub fn finish(mut self, height: usize) -> SimTrace {
        let tail = self.writer.finish();
        if let Some(last) = self.emitted.last_mut() {
            last.bytes_emitted += tail.len();
        }
        self.foreground.extend_from_slice(&tail);
        SimTrace {
            width: self.width,
            height,
            table: self.table,
            cycles: self.emitted,
            background: self.background,
            foreground: self.foreground,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SimTrace {
    pub width: usize,
    pub height: usize,
    pub table: HuffmanTable,
    pub cycles: Vec<CycleRecord>,
    pub background: Vec<u8>,
    pub foreground: Vec<u8>,
}

impl SimTrace {
    pub fn total_cycles(&self) -> u64 {
        self.cycles.last().map_or(0, |c| c.cycle)
    }

    /// `cycle,stage1_row,stage2_row,stage3_row,bytes_emitted`, `-` for a bubble.
    pub fn to_csv(&self) -> String {
        let cell = |r: Option<usize>| r.map_or_else(|| "-".to_string(), |r| r.to_string());
        let mut out = String::from("cycle,stage1_row,stage2_row,stage3_row,bytes_emitted\n");
        for c in &self.cycles {
            writeln!(
                out,
                "{},{},{},{},{}",
                c.cycle,
                cell(c.stage1),
                cell(c.stage2),
                cell(c.stage3),
                c.bytes_emitted
            )
            .unwrap();
        }
        out
    }
}

pub fn simulate(img: &Image) -> SimTrace {
    let (_, fg) = encode_sections(img);
    let table = residual_table(&residual_encode(&fg));
    let mut state = PipelineState::new(img.width(), table);
    let rows: Vec<&[u8]> = img.rows().collect();
    for c in 0..img.height() + 2 {
        state.step(rows.get(c).copied());
    }
    debug_assert_eq!(state.in_flight(), 0);
    state.finish(img.height())
}
