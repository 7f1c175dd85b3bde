//! `macc`: compress, inspect and simulate microarray images.

mod error;
mod gen;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use macc_core::compactor::{cu_trace, derive_controls, MaskedVector};
use macc_core::row_scanner::parse_bits;
use macc_core::{
    compress, decompress_bytes, gen_synthetic, load_pgm, simulate, stats, store_pgm, Image,
    StatsReport,
};

use error::CliError;
use gen::GenArgs;

#[derive(Debug, Parser)]
#[command(name = "macc", version, about = "Lossless microarray image codec")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compress a binary PGM (P5) into a .macc container
    Compress {
        /// Decompress the result and compare before reporting success
        #[arg(long)]
        verify: bool,
        input: PathBuf,
        output: PathBuf,
    },
    /// Restore the PGM from a .macc container
    Decompress { input: PathBuf, output: PathBuf },
    /// Write a synthetic spot-grid image as PGM
    Gen {
        #[command(flatten)]
        args: GenArgs,
        output: PathBuf,
    },
    /// Print size accounting for a PGM
    Stats { input: PathBuf },
    /// Run the three-stage pipeline model over a PGM
    Simulate {
        input: PathBuf,
        /// Per-cycle CSV trace
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Compress every .pgm in a directory and report ratios as CSV
    Bench {
        dir: PathBuf,
        /// Report path; stdout if omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Show the compaction network's stage-by-stage routing for a 0/1 mask
    Cu {
        /// e.g. 00100101
        mask: String,
    },
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|source| CliError::Read {
        path: path.to_owned(),
        source,
    })
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|source| CliError::Write {
        path: path.to_owned(),
        source,
    })
}

fn read_pgm(path: &Path) -> Result<Image, CliError> {
    load_pgm(&read(path)?).map_err(|source| CliError::Pgm {
        path: path.to_owned(),
        source,
    })
}

fn cmd_compress(verify: bool, input: &Path, output: &Path) -> Result<(), CliError> {
    let img = read_pgm(input)?;
    let bytes = compress(&img).to_bytes();
    if verify {
        let back = decompress_bytes(&bytes).map_err(|source| CliError::Container {
            path: output.to_owned(),
            source,
        })?;
        if back != img {
            return Err(CliError::VerifyFailed(input.to_owned()));
        }
    }
    write(output, &bytes)?;
    let s = stats(&img);
    println!(
        "{} -> {}: {} -> {} bytes, container ratio {:.4}, 8-bit model ratio {:.4}{}",
        input.display(),
        output.display(),
        s.raw_bits / 8,
        bytes.len(),
        s.container_ratio,
        s.paper_model.ratio(),
        if verify { ", verified" } else { "" }
    );
    Ok(())
}

fn cmd_decompress(input: &Path, output: &Path) -> Result<(), CliError> {
    let img = decompress_bytes(&read(input)?).map_err(|source| CliError::Container {
        path: input.to_owned(),
        source,
    })?;
    write(output, &store_pgm(&img))
}

fn cmd_gen(args: &GenArgs, output: &Path) -> Result<(), CliError> {
    let img = gen_synthetic(&args.params()?)?;
    write(output, &store_pgm(&img))?;
    println!(
        "{}: {}x{}, {} foreground pixels",
        output.display(),
        img.width(),
        img.height(),
        img.foreground_count()
    );
    Ok(())
}

fn cmd_simulate(input: &Path, trace_path: Option<&Path>) -> Result<(), CliError> {
    let img = read_pgm(input)?;
    let trace = simulate(&img);
    if let Some(p) = trace_path {
        write(p, trace.to_csv().as_bytes())?;
    }
    println!(
        "{} rows in {} cycles, {} background + {} foreground bytes",
        trace.height,
        trace.total_cycles(),
        trace.background.len(),
        trace.foreground.len()
    );
    Ok(())
}

const BENCH_HEADER: [&str; 7] = [
    "name",
    "raw_bytes",
    "compressed_bytes",
    "container_ratio",
    "fg_ratio",
    "paper_model_ratio",
    "error",
];

fn bench_entries(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let read_err = |source| CliError::Read {
        path: dir.to_owned(),
        source,
    };
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).map_err(read_err)? {
        let path = entry.map_err(read_err)?.path();
        let is_pgm = path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("pgm"));
        if is_pgm && path.is_file() {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn cmd_bench(dir: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let files = bench_entries(dir)?;
    let results: Vec<(String, Result<StatsReport, CliError>)> = std::thread::scope(|s| {
        let handles: Vec<_> = files
            .iter()
            .map(|p| s.spawn(move || read_pgm(p).map(|img| stats(&img))))
            .collect();
        files
            .iter()
            .zip(handles)
            .map(|(p, h)| {
                let name = p
                    .file_name()
                    .unwrap_or_default()
                    .to_string_lossy()
                    .into_owned();
                (name, h.join().expect("bench worker panicked"))
            })
            .collect()
    });

    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(BENCH_HEADER)?;
    let mut sums = [0.0f64; 3];
    let mut counts = [0usize; 3];
    let mut raw_total = 0u64;
    let mut packed_total = 0u64;
    for (name, r) in &results {
        match r {
            Ok(s) => {
                let fg = s.fg_ratio.map_or(String::new(), |v| format!("{v:.6}"));
                let ratios = [
                    Some(s.container_ratio),
                    s.fg_ratio,
                    Some(s.paper_model.ratio()),
                ];
                for (k, v) in ratios.iter().enumerate() {
                    if let Some(v) = v {
                        sums[k] += v;
                        counts[k] += 1;
                    }
                }
                raw_total += s.raw_bits / 8;
                packed_total += s.container_bits / 8;
                w.write_record([
                    name.as_str(),
                    &(s.raw_bits / 8).to_string(),
                    &(s.container_bits / 8).to_string(),
                    &format!("{:.6}", s.container_ratio),
                    &fg,
                    &format!("{:.6}", s.paper_model.ratio()),
                    "",
                ])?;
            }
            Err(e) => w.write_record([name.as_str(), "", "", "", "", "", &e.to_string()])?,
        }
    }
    if counts[0] > 0 {
        let mean = |k: usize| {
            if counts[k] == 0 {
                String::new()
            } else {
                format!("{:.6}", sums[k] / counts[k] as f64)
            }
        };
        w.write_record([
            "mean",
            &raw_total.to_string(),
            &packed_total.to_string(),
            &mean(0),
            &mean(1),
            &mean(2),
            "",
        ])?;
    }
    let report = w
        .into_inner()
        .map_err(|e| CliError::Argument(e.to_string()))?;
    match out {
        Some(p) => write(p, &report)?,
        None => io::stdout()
            .write_all(&report)
            .map_err(|source| CliError::Write {
                path: PathBuf::from("<stdout>"),
                source,
            })?,
    }
    let failed = results.iter().filter(|(_, r)| r.is_err()).count();
    eprintln!("bench: {} files, {failed} failed", results.len());
    Ok(())
}

fn cmd_cu(mask: &str) -> Result<(), CliError> {
    let y = parse_bits(mask)?;
    let n = y.len();
    let mv = MaskedVector::new((0..n).collect(), y)?;
    let grid = derive_controls(mv.mask());
    let buses = cu_trace(&mv, &grid)?;
    let width = n.saturating_sub(1).to_string().len();
    let fmt_bus = |bus: &[usize]| {
        bus.iter()
            .map(|v| format!("{v:>width$}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    println!("input  {:>4}  {}", "", fmt_bus(mv.values()));
    for (s, (stage, bus)) in grid.stages().iter().zip(&buses).enumerate() {
        let glyphs: String = stage.iter().map(|c| c.glyph()).collect();
        println!("stage {s:>3}  {glyphs}  {}", fmt_bus(bus));
    }
    let out = buses.last().map(Vec::as_slice).unwrap_or_default();
    println!("output {:>4}  {}", "", fmt_bus(&out[..mv.kept()]));
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Compress {
            verify,
            input,
            output,
        } => cmd_compress(verify, &input, &output),
        Command::Decompress { input, output } => cmd_decompress(&input, &output),
        Command::Gen { args, output } => cmd_gen(&args, &output),
        Command::Stats { input } => {
            let s = stats(&read_pgm(&input)?);
            println!("{s}");
            Ok(())
        }
        Command::Simulate { input, trace } => cmd_simulate(&input, trace.as_deref()),
        Command::Bench { dir, out } => cmd_bench(&dir, out.as_deref()),
        Command::Cu { mask } => cmd_cu(&mask),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("macc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
