//! Lossless compression for microarray scans.
//!
//! Zero pixels are background. Each row is split into a foreground bitmap,
//! sent as the column indices where runs of 0s and 1s start, and the
//! non-zero pixels themselves, packed to the left by a compaction network,
//! differenced, and Huffman coded.
//!
//! ```
//! use macc_core::{compress_to_vec, decompress_bytes, gen_synthetic, SpotLayoutParams};
//!
//! let img = gen_synthetic(&SpotLayoutParams::fig8()).unwrap();
//! let packed = compress_to_vec(&img);
//! assert_eq!(decompress_bytes(&packed).unwrap(), img);
//! ```

pub mod background;
pub mod bitio;
pub mod compactor;
pub mod container;
pub mod foreground;
pub mod huffman;
pub mod image;
pub mod pgm;
pub mod pipeline;
pub mod row_scanner;
pub mod synth;

pub use background::{paper_cost_model, PaperAccounting};
pub use compactor::{compact, cu_structural, derive_controls, MaskedVector, RuControl, RuGrid};
pub use container::{
    compress, compress_to_vec, decompress, decompress_bytes, stats, CompressedStream,
    ContainerError, StatsReport,
};
pub use image::{Image, ImageError};
pub use pgm::{load_pgm, store_pgm, PgmError};
pub use pipeline::{simulate, SimTrace};
pub use row_scanner::{bitmap_row, run_start_indices, transitions, BitmapRow, TransitionRow};
pub use synth::{gen_synthetic, IntensityLaw, SpotLayoutParams, SpotShape, SynthError};
