//! Synthetic microarray images: a regular grid of spots on a zero background.
//!
//! Each grid cell is `pitch` x `pitch` pixels, the first cell starts `margin`
//! pixels in from the top-left corner, and a spot is centred inside its cell.
//! Randomness comes from ChaCha8 seeded with `seed`, so output is a pure
//! function of the parameters.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use thiserror::Error;

use crate::image::Image;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum SynthError {
    #[error("spot extent {extent} exceeds pitch {pitch}")]
    SpotTooLarge { extent: usize, pitch: usize },

    #[error("layout needs {needed} pixels along {axis} but the image has {available}")]
    DoesNotFit {
        axis: &'static str,
        needed: usize,
        available: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpotShape {
    Disk { diameter: usize },
    Rect { width: usize, height: usize },
}

impl SpotShape {
    fn extent(&self) -> (usize, usize) {
        match *self {
            SpotShape::Disk { diameter } => (diameter, diameter),
            SpotShape::Rect { width, height } => (width, height),
        }
    }

    fn covers(&self, dx: usize, dy: usize) -> bool {
        match *self {
            SpotShape::Rect { .. } => true,
            SpotShape::Disk { diameter } => {
                // centre at (d-1)/2, radius d/2, doubled to stay in integers
                let c = diameter as i64 - 1;
                let x = 2 * dx as i64 - c;
                let y = 2 * dy as i64 - c;
                x * x + y * y <= (diameter * diameter) as i64
            }
        }
    }
}

/// Per-spot brightness law. The drawn level is shared by every pixel of a spot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IntensityLaw {
    Uniform {
        lo: u8,
        hi: u8,
    },
    /// Clipped to 1..=255 after rounding.
    Gaussian {
        mean: f64,
        sd: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpotLayoutParams {
    pub width: usize,
    pub height: usize,
    pub grid_rows: usize,
    pub grid_cols: usize,
    pub spot: SpotShape,
    pub pitch: usize,
    pub margin: usize,
    /// Probability that a grid cell holds a spot.
    pub occupancy: f64,
    pub intensity: IntensityLaw,
    /// Each spot pixel gets independent uniform noise in `-noise..=noise`.
    pub noise: u8,
    pub seed: u64,
}

impl SpotLayoutParams {
    /// 18x18 image with four 4-wide, 6-tall rectangular spots. Rows 0, 1, 8,
    /// 9, 16, 17 are empty and spots occupy columns 3..=6 and 11..=14, which
    /// gives 96 foreground pixels, 48 run starts and 6 all-zero rows.
    pub fn fig8() -> Self {
        Self {
            width: 18,
            height: 18,
            grid_rows: 2,
            grid_cols: 2,
            spot: SpotShape::Rect {
                width: 4,
                height: 6,
            },
            pitch: 8,
            margin: 1,
            occupancy: 1.0,
            intensity: IntensityLaw::Uniform { lo: 40, hi: 220 },
            noise: 0,
            seed: 8,
        }
    }

    /// 256x256 slide: 12-pixel disks on a 16-pixel pitch, ~40% of cells
    /// filled, which lands near 15% foreground.
    pub fn microarray(seed: u64) -> Self {
        Self {
            width: 256,
            height: 256,
            grid_rows: 15,
            grid_cols: 15,
            spot: SpotShape::Disk { diameter: 12 },
            pitch: 16,
            margin: 8,
            occupancy: 0.4,
            intensity: IntensityLaw::Gaussian {
                mean: 140.0,
                sd: 45.0,
            },
            noise: 2,
            seed,
        }
    }

    fn validate(&self) -> Result<(), SynthError> {
        if self.width == 0 || self.height == 0 {
            return Err(SynthError::InvalidParameter(format!(
                "image size {}x{}",
                self.width, self.height
            )));
        }
        if !(0.0..=1.0).contains(&self.occupancy) {
            return Err(SynthError::InvalidParameter(format!(
                "occupancy {} not in [0, 1]",
                self.occupancy
            )));
        }
        match self.intensity {
            IntensityLaw::Uniform { lo, hi } if lo == 0 || lo > hi => {
                return Err(SynthError::InvalidParameter(format!(
                    "uniform intensity range {lo}..={hi} must be non-empty and non-zero"
                )))
            }
            IntensityLaw::Gaussian { mean, sd } if !mean.is_finite() || sd.is_nan() || sd < 0.0 => {
                return Err(SynthError::InvalidParameter(format!(
                    "gaussian intensity mean {mean} sd {sd}"
                )))
            }
            _ => {}
        }
        let (ew, eh) = self.spot.extent();
        if ew == 0 || eh == 0 {
            return Err(SynthError::InvalidParameter("empty spot shape".into()));
        }
        let extent = ew.max(eh);
        if extent > self.pitch {
            return Err(SynthError::SpotTooLarge {
                extent,
                pitch: self.pitch,
            });
        }
        for (axis, cells, available) in [
            ("x", self.grid_cols, self.width),
            ("y", self.grid_rows, self.height),
        ] {
            let needed = cells
                .checked_mul(self.pitch)
                .and_then(|n| n.checked_add(2 * self.margin))
                .unwrap_or(usize::MAX);
            if needed > available {
                return Err(SynthError::DoesNotFit {
                    axis,
                    needed,
                    available,
                });
            }
        }
        Ok(())
    }
}

/// Placement of one generated spot (top-left corner of its bounding box).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlacedSpot {
    pub grid_row: usize,
    pub grid_col: usize,
    pub x: usize,
    pub y: usize,
    pub level: u8,
}

pub fn gen_synthetic(params: &SpotLayoutParams) -> Result<Image, SynthError> {
    gen_synthetic_with_spots(params).map(|(img, _)| img)
}

pub fn gen_synthetic_with_spots(
    params: &SpotLayoutParams,
) -> Result<(Image, Vec<PlacedSpot>), SynthError> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut img = Image::zeros(params.width, params.height)
        .map_err(|e| SynthError::InvalidParameter(e.to_string()))?;
    let (ew, eh) = params.spot.extent();
    let normal = match params.intensity {
        IntensityLaw::Gaussian { mean, sd } => {
            Some(Normal::new(mean, sd).map_err(|e| SynthError::InvalidParameter(e.to_string()))?)
        }
        IntensityLaw::Uniform { .. } => None,
    };
    let noise = i32::from(params.noise);
    let mut spots = Vec::new();

    for grid_row in 0..params.grid_rows {
        for grid_col in 0..params.grid_cols {
            if rng.random::<f64>() >= params.occupancy {
                continue;
            }
            let level = match (params.intensity, &normal) {
                (IntensityLaw::Uniform { lo, hi }, _) => rng.random_range(lo..=hi),
                (IntensityLaw::Gaussian { .. }, Some(n)) => {
                    n.sample(&mut rng).round().clamp(1.0, 255.0) as u8
                }
                _ => unreachable!(),
            };
            let x = params.margin + grid_col * params.pitch + (params.pitch - ew) / 2;
            let y = params.margin + grid_row * params.pitch + (params.pitch - eh) / 2;
            for dy in 0..eh {
                for dx in 0..ew {
                    if !params.spot.covers(dx, dy) {
                        continue;
                    }
                    let jitter = if noise > 0 {
                        rng.random_range(-noise..=noise)
                    } else {
                        0
                    };
                    let v = (i32::from(level) + jitter).clamp(1, 255) as u8;
                    img.set(x + dx, y + dy, v);
                }
            }
            spots.push(PlacedSpot {
                grid_row,
                grid_col,
                x,
                y,
                level,
            });
        }
    }
    Ok((img, spots))
}
