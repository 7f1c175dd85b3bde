//! Browser bindings for the demo page in `www/`.
//!
//! Three operations: generate and compress a synthetic slide, scan one row
//! into bitmap, transitions and run starts, and route a mask through the
//! compaction network. Everything returns owned getter structs so the crate
//! also builds and tests on the host.

use macc_core::compactor::{cu_trace, derive_controls, MaskedVector};
use macc_core::row_scanner::{bitmap_row, parse_bits, run_start_indices, transitions};
use macc_core::{
    compress_to_vec, decompress_bytes, gen_synthetic, stats, SpotLayoutParams, SpotShape,
};
use wasm_bindgen::prelude::*;

#[wasm_bindgen]
pub struct Slide {
    width: u32,
    height: u32,
    pixels: Vec<u8>,
    compressed_bytes: u32,
    container_ratio: f64,
    fg_ratio: f64,
    model_ratio: f64,
    fg_count: u32,
    lossless: bool,
    report: String,
}

#[wasm_bindgen]
impl Slide {
    #[wasm_bindgen(getter)]
    pub fn width(&self) -> u32 {
        self.width
    }
    #[wasm_bindgen(getter)]
    pub fn height(&self) -> u32 {
        self.height
    }
    /// Row-major grey levels.
    #[wasm_bindgen(getter)]
    pub fn pixels(&self) -> Vec<u8> {
        self.pixels.clone()
    }
    #[wasm_bindgen(getter, js_name = compressedBytes)]
    pub fn compressed_bytes(&self) -> u32 {
        self.compressed_bytes
    }
    #[wasm_bindgen(getter, js_name = containerRatio)]
    pub fn container_ratio(&self) -> f64 {
        self.container_ratio
    }
    /// 0 when the slide has no foreground.
    #[wasm_bindgen(getter, js_name = fgRatio)]
    pub fn fg_ratio(&self) -> f64 {
        self.fg_ratio
    }
    #[wasm_bindgen(getter, js_name = modelRatio)]
    pub fn model_ratio(&self) -> f64 {
        self.model_ratio
    }
    #[wasm_bindgen(getter, js_name = fgCount)]
    pub fn fg_count(&self) -> u32 {
        self.fg_count
    }
    /// Whether decompressing the container gave back the same pixels.
    #[wasm_bindgen(getter)]
    pub fn lossless(&self) -> bool {
        self.lossless
    }
    #[wasm_bindgen(getter)]
    pub fn report(&self) -> String {
        self.report.clone()
    }
}

/// Generates a 256x256 slide of disk spots, or the small 18x18 sample when
/// `diameter` is 0, then compresses and decompresses it.
#[wasm_bindgen(js_name = generateSlide)]
pub fn generate_slide(
    seed: u32,
    occupancy: f64,
    diameter: u32,
    noise: u8,
) -> Result<Slide, JsError> {
    let params = if diameter == 0 {
        SpotLayoutParams::fig8()
    } else {
        SpotLayoutParams {
            spot: SpotShape::Disk {
                diameter: diameter as usize,
            },
            occupancy,
            noise,
            ..SpotLayoutParams::microarray(u64::from(seed))
        }
    };
    let img = gen_synthetic(&params).map_err(|e| JsError::new(&e.to_string()))?;
    let packed = compress_to_vec(&img);
    let lossless = decompress_bytes(&packed).is_ok_and(|back| back == img);
    let s = stats(&img);
    Ok(Slide {
        width: img.width() as u32,
        height: img.height() as u32,
        compressed_bytes: packed.len() as u32,
        container_ratio: s.container_ratio,
        fg_ratio: s.fg_ratio.unwrap_or(0.0),
        model_ratio: s.paper_model.ratio(),
        fg_count: s.fg_count as u32,
        lossless,
        report: s.to_string(),
        pixels: img.into_pixels(),
    })
}

#[wasm_bindgen]
pub struct RowScan {
    bitmap: String,
    transitions: String,
    starts: Vec<u32>,
}

#[wasm_bindgen]
impl RowScan {
    #[wasm_bindgen(getter)]
    pub fn bitmap(&self) -> String {
        self.bitmap.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn transitions(&self) -> String {
        self.transitions.clone()
    }
    /// Columns where a run of 0s or 1s begins.
    #[wasm_bindgen(getter)]
    pub fn starts(&self) -> Vec<u32> {
        self.starts.clone()
    }
}

#[wasm_bindgen(js_name = scanRow)]
pub fn scan_row(pixels: &[u8]) -> RowScan {
    let b = bitmap_row(pixels);
    let t = transitions(&b);
    RowScan {
        bitmap: b.to_string(),
        transitions: t.to_string(),
        starts: run_start_indices(&t)
            .into_iter()
            .map(|i| i as u32)
            .collect(),
    }
}

#[wasm_bindgen]
pub struct Routing {
    width: u32,
    grid: Vec<String>,
    buses: Vec<u32>,
    kept: u32,
}

#[wasm_bindgen]
impl Routing {
    #[wasm_bindgen(getter)]
    pub fn width(&self) -> u32 {
        self.width
    }
    /// One string per stage: `.` pass, `R` take right, `L` give left.
    #[wasm_bindgen(getter)]
    pub fn grid(&self) -> Vec<String> {
        self.grid.clone()
    }
    /// Down-bus after each stage, concatenated; `width` values per stage.
    #[wasm_bindgen(getter)]
    pub fn buses(&self) -> Vec<u32> {
        self.buses.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn kept(&self) -> u32 {
        self.kept
    }
}

/// Routes column numbers `0..n` through the network for a `0`/`1` mask.
#[wasm_bindgen(js_name = routeMask)]
pub fn route_mask(mask: &str) -> Result<Routing, JsError> {
    let y = parse_bits(mask).map_err(|e| JsError::new(&e.to_string()))?;
    let n = y.len();
    let mv =
        MaskedVector::new((0..n as u32).collect(), y).map_err(|e| JsError::new(&e.to_string()))?;
    let grid = derive_controls(mv.mask());
    let buses = cu_trace(&mv, &grid).map_err(|e| JsError::new(&e.to_string()))?;
    Ok(Routing {
        width: n as u32,
        grid: grid
            .stages()
            .iter()
            .map(|s| s.iter().map(|c| c.glyph()).collect())
            .collect(),
        buses: buses.concat(),
        kept: mv.kept() as u32,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_slide() {
        let s = generate_slide(0, 0.0, 0, 0).unwrap();
        assert_eq!((s.width(), s.height()), (18, 18));
        assert_eq!(s.fg_count(), 96);
        assert_eq!(s.model_ratio(), 2.16);
        assert!(s.lossless());
    }

    #[test]
    fn microarray_slide() {
        let s = generate_slide(3, 0.4, 12, 2).unwrap();
        assert_eq!(s.pixels().len(), 256 * 256);
        assert!(s.lossless());
        assert!(s.container_ratio() > 1.5);
    }

    #[test]
    fn row_scan() {
        let r = scan_row(&[0, 0, 5, 5, 5, 0, 1]);
        assert_eq!(r.bitmap(), "0011101");
        assert_eq!(r.transitions(), "0010011");
        assert_eq!(r.starts(), vec![2, 5, 6]);
    }

    #[test]
    fn routing() {
        let r = route_mask("00100101").unwrap();
        assert_eq!(r.width(), 8);
        assert_eq!(r.grid().len(), 8);
        assert_eq!(r.kept(), 3);
        let buses = r.buses();
        assert_eq!(&buses[buses.len() - 8..], &[2, 5, 7, 0, 0, 0, 0, 0]);
    }
}
