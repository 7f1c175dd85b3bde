//! `macc gen` flag parsing. A preset supplies every field and the
//! individual flags override it.

use clap::{Args, ValueEnum};
use macc_core::{IntensityLaw, SpotLayoutParams, SpotShape};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Preset {
    /// 18x18, four rectangular spots
    Fig8,
    /// 256x256 slide of Gaussian-intensity disks
    Microarray,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum, default_value = "microarray")]
    pub preset: Preset,
    #[arg(long)]
    pub width: Option<usize>,
    #[arg(long)]
    pub height: Option<usize>,
    /// Spot grid as ROWS COLS
    #[arg(long, num_args = 2, value_names = ["ROWS", "COLS"])]
    pub grid: Option<Vec<usize>>,
    /// `disk:D` or `rect:WxH`
    #[arg(long)]
    pub spot: Option<String>,
    #[arg(long)]
    pub pitch: Option<usize>,
    #[arg(long)]
    pub margin: Option<usize>,
    /// Fraction of grid cells holding a spot
    #[arg(long)]
    pub occupancy: Option<f64>,
    /// `uniform:LO-HI` or `gaussian:MEAN,SD`
    #[arg(long)]
    pub intensity: Option<String>,
    /// Per-pixel noise amplitude
    #[arg(long)]
    pub noise: Option<u8>,
    #[arg(long)]
    pub seed: Option<u64>,
}

fn bad(msg: String) -> CliError {
    CliError::Argument(msg)
}

fn num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, CliError> {
    s.trim()
        .parse()
        .map_err(|_| bad(format!("{what}: cannot parse {s:?}")))
}

pub fn parse_spot(s: &str) -> Result<SpotShape, CliError> {
    let (kind, rest) = s
        .split_once(':')
        .ok_or_else(|| bad(format!("spot {s:?}: expected disk:D or rect:WxH")))?;
    match kind {
        "disk" => Ok(SpotShape::Disk {
            diameter: num(rest, "disk diameter")?,
        }),
        "rect" => {
            let (w, h) = rest
                .split_once('x')
                .ok_or_else(|| bad(format!("spot {s:?}: expected rect:WxH")))?;
            Ok(SpotShape::Rect {
                width: num(w, "rect width")?,
                height: num(h, "rect height")?,
            })
        }
        _ => Err(bad(format!("spot {s:?}: unknown shape {kind:?}"))),
    }
}

pub fn parse_intensity(s: &str) -> Result<IntensityLaw, CliError> {
    let (kind, rest) = s.split_once(':').ok_or_else(|| {
        bad(format!(
            "intensity {s:?}: expected uniform:LO-HI or gaussian:MEAN,SD"
        ))
    })?;
    match kind {
        "uniform" => {
            let (lo, hi) = rest
                .split_once('-')
                .ok_or_else(|| bad(format!("intensity {s:?}: expected uniform:LO-HI")))?;
            Ok(IntensityLaw::Uniform {
                lo: num(lo, "uniform low")?,
                hi: num(hi, "uniform high")?,
            })
        }
        "gaussian" => {
            let (m, sd) = rest
                .split_once(',')
                .ok_or_else(|| bad(format!("intensity {s:?}: expected gaussian:MEAN,SD")))?;
            Ok(IntensityLaw::Gaussian {
                mean: num(m, "gaussian mean")?,
                sd: num(sd, "gaussian sd")?,
            })
        }
        _ => Err(bad(format!("intensity {s:?}: unknown law {kind:?}"))),
    }
}

impl GenArgs {
    pub fn params(&self) -> Result<SpotLayoutParams, CliError> {
        let mut p = match self.preset {
            Preset::Fig8 => SpotLayoutParams::fig8(),
            Preset::Microarray => SpotLayoutParams::microarray(0),
        };
        if let Some(seed) = self.seed {
            p.seed = seed;
        }
        if let Some(w) = self.width {
            p.width = w;
        }
        if let Some(h) = self.height {
            p.height = h;
        }
        if let Some(g) = &self.grid {
            p.grid_rows = g[0];
            p.grid_cols = g[1];
        }
        if let Some(s) = &self.spot {
            p.spot = parse_spot(s)?;
        }
        if let Some(v) = self.pitch {
            p.pitch = v;
        }
        if let Some(v) = self.margin {
            p.margin = v;
        }
        if let Some(v) = self.occupancy {
            p.occupancy = v;
        }
        if let Some(s) = &self.intensity {
            p.intensity = parse_intensity(s)?;
        }
        if let Some(v) = self.noise {
            p.noise = v;
        }
        Ok(p)
    }
}
