//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use macc_core::background::paper_cost_model;
use macc_core::compactor::{compact, cu_structural, derive_controls, MaskedVector};
use macc_core::container::{compress, compress_to_vec, decompress_bytes, stats, TABLE_LEN};
use macc_core::foreground::residual_encode;
use macc_core::huffman::{histogram, huffman_build, huffman_encode, HuffmanTable, ALPHABET};
use macc_core::pipeline::simulate;
use macc_core::row_scanner::{
    bitmap_row, parse_bits, run_start_indices, scan_row, transitions, BitmapRow,
};
use macc_core::synth::{gen_synthetic, IntensityLaw, SpotLayoutParams, SpotShape};
use macc_core::Image;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_image(rng: &mut ChaCha8Rng, max_w: usize, max_h: usize) -> Image {
    let w = rng.random_range(1..=max_w);
    let h = rng.random_range(1..=max_h);
    // vary the background density so some images are sparse, some dense
    let zero_p: f64 = rng.random();
    let px = (0..w * h)
        .map(|_| {
            if rng.random::<f64>() < zero_p {
                0
            } else {
                rng.random()
            }
        })
        .collect();
    Image::new(w, h, px).unwrap()
}

fn synthetic_variants(rng: &mut ChaCha8Rng, count: usize) -> Vec<Image> {
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let base = SpotLayoutParams::microarray(rng.random());
        let p = match i % 4 {
            0 => base,
            1 => SpotLayoutParams {
                occupancy: rng.random(),
                intensity: IntensityLaw::Uniform { lo: 1, hi: 255 },
                noise: rng.random_range(0..20),
                ..base
            },
            2 => {
                let pitch = rng.random_range(6..=24);
                let grid = rng.random_range(1..=8);
                let size = 2 + grid * pitch + rng.random_range(0..10);
                SpotLayoutParams {
                    width: size,
                    height: size,
                    grid_rows: grid,
                    grid_cols: grid,
                    spot: SpotShape::Rect {
                        width: rng.random_range(1..=pitch),
                        height: rng.random_range(1..=pitch),
                    },
                    pitch,
                    margin: 1,
                    ..base
                }
            }
            _ => SpotLayoutParams {
                width: 200,
                height: 120,
                grid_rows: 7,
                grid_cols: 12,
                spot: SpotShape::Disk {
                    diameter: rng.random_range(3..=16),
                },
                margin: 2,
                ..base
            },
        };
        out.push(gen_synthetic(&p).unwrap());
    }
    out
}

fn edge_cases() -> Vec<Image> {
    let mut v = vec![
        Image::zeros(1, 1).unwrap(),
        Image::new(1, 1, vec![255]).unwrap(),
        Image::new(1, 1, vec![1]).unwrap(),
        Image::zeros(64, 64).unwrap(),
        Image::zeros(256, 256).unwrap(),
        Image::new(64, 64, vec![255; 64 * 64]).unwrap(),
        Image::new(256, 256, vec![255; 256 * 256]).unwrap(),
        gen_synthetic(&SpotLayoutParams::fig8()).unwrap(),
    ];
    for n in [2usize, 7, 64, 255, 256, 257, 300] {
        let ramp: Vec<u8> = (0..n).map(|i| (i % 256) as u8).collect();
        v.push(Image::new(n, 1, ramp.clone()).unwrap());
        v.push(Image::new(1, n, ramp).unwrap());
        v.push(Image::new(n, 1, vec![255; n]).unwrap());
        v.push(Image::new(1, n, vec![255; n]).unwrap());
        let alternating: Vec<u8> = (0..n).map(|i| (i % 2 * 200) as u8).collect();
        v.push(Image::new(n, 1, alternating).unwrap());
    }
    v
}

fn corpus() -> Vec<Image> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_ACCE);
    let mut images = edge_cases();
    images.extend(synthetic_variants(&mut rng, 40));
    while images.len() < 1024 {
        images.push(random_image(&mut rng, 64, 64));
    }
    images
}

fn losslessness(corpus: &[Image]) -> Outcome {
    let mut max_side = 0;
    for (i, img) in corpus.iter().enumerate() {
        let bytes = compress_to_vec(img);
        let back = decompress_bytes(&bytes).map_err(|e| format!("image {i}: {e}"))?;
        ensure(&back == img, || {
            format!("image {i} ({img:?}) differs after round trip")
        })?;
        max_side = max_side.max(img.width().max(img.height()));
    }
    Ok(format!(
        "{} images byte-exact (largest side {max_side})",
        corpus.len()
    ))
}

fn fig8_accounting() -> Outcome {
    let img = gen_synthetic(&SpotLayoutParams::fig8()).unwrap();
    let rows: Vec<Vec<usize>> = img.rows().map(|r| scan_row(r).1).collect();
    let indices: usize = rows.iter().map(Vec::len).sum();
    let zero_rows = rows.iter().filter(|r| r.is_empty()).count();
    ensure(img.foreground_count() == 96, || {
        format!("{} foreground pixels", img.foreground_count())
    })?;
    ensure(indices == 48, || format!("{indices} run starts"))?;
    ensure(zero_rows == 6, || format!("{zero_rows} zero rows"))?;
    let acc = paper_cost_model(&img);
    ensure(acc.total_bits == 1200, || {
        format!("total {} bits", acc.total_bits)
    })?;
    ensure(acc.raw_bits == 2592, || {
        format!("raw {} bits", acc.raw_bits)
    })?;
    ensure(
        acc.ratio() == 2592.0 / 1200.0 && acc.ratio() == 2.16,
        || format!("ratio {}", acc.ratio()),
    )?;
    Ok(format!(
        "96 fg px, 48 indices, 6 zero rows -> {}/{} = {}",
        acc.raw_bits,
        acc.total_bits,
        acc.ratio()
    ))
}

fn sixteen_wide_vector() -> Outcome {
    let b: BitmapRow = "0011111001111100".parse().unwrap();
    let pixels: Vec<u8> = b.bits().iter().map(|&x| if x { 99 } else { 0 }).collect();
    ensure(bitmap_row(&pixels) == b, || "bitmap".into())?;
    let t = transitions(&b);
    ensure(t.to_string() == "0010000101000010", || {
        format!("transitions {t}")
    })?;
    let idx = run_start_indices(&t);
    let mv = MaskedVector::new((0..16u32).collect(), t.bits().to_vec()).unwrap();
    let cu = cu_structural(&mv, &derive_controls(mv.mask())).unwrap();
    ensure(idx == [2, 7, 9, 14], || format!("indices {idx:?}"))?;
    ensure(
        cu[..4] == [2, 7, 9, 14] && cu[4..].iter().all(|&v| v == 0),
        || format!("CU output {cu:?}"),
    )?;
    Ok(format!("{b} -> {t} -> {:?}", &cu[..4]))
}

fn eight_wide_example() -> Outcome {
    let mv = MaskedVector::new((0..8u32).collect(), parse_bits("00100101").unwrap()).unwrap();
    let behavioural = compact(&mv);
    let structural = cu_structural(&mv, &derive_controls(mv.mask())).unwrap();
    let expect = vec![2, 5, 7, 0, 0, 0, 0, 0];
    ensure(behavioural == expect, || format!("compact {behavioural:?}"))?;
    ensure(structural == expect, || format!("RU grid {structural:?}"))?;
    Ok(format!("{expect:?} from both models"))
}

fn structural_equivalence() -> Outcome {
    let mut mismatches = 0;
    let x: Vec<u32> = (10..18).collect();
    for m in 0u32..256 {
        let y = (0..8).map(|i| m >> i & 1 == 1).collect();
        let mv = MaskedVector::new(x.clone(), y).unwrap();
        if cu_structural(&mv, &derive_controls(mv.mask())).unwrap() != compact(&mv) {
            mismatches += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(256);
    for _ in 0..1000 {
        let density: f64 = rng.random();
        let x: Vec<u32> = (0..256).map(|_| rng.random()).collect();
        let y: Vec<bool> = (0..256).map(|_| rng.random::<f64>() < density).collect();
        let mv = MaskedVector::new(x, y).unwrap();
        if cu_structural(&mv, &derive_controls(mv.mask())).unwrap() != compact(&mv) {
            mismatches += 1;
        }
    }
    ensure(mismatches == 0, || format!("{mismatches} mismatches"))?;
    Ok("256 exhaustive masks at N=8 + 1000 random at N=256, 0 mismatches".into())
}

fn prefix_free(t: &HuffmanTable) -> bool {
    let mut codes: Vec<String> = (0..=255u8)
        .filter_map(|s| t.code(s).map(|c| c.to_string()))
        .collect();
    codes.sort();
    codes.windows(2).all(|w| !w[1].starts_with(&w[0]))
}

fn random_histogram(rng: &mut ChaCha8Rng) -> [u64; ALPHABET] {
    let symbols = rng.random_range(1..=ALPHABET);
    let skew: f64 = rng.random_range(0.0..3.0);
    let mut h = [0u64; ALPHABET];
    for _ in 0..symbols {
        let s = rng.random_range(0..ALPHABET);
        let u: f64 = rng.random_range(0.0..1.0);
        h[s] += 1 + (1000.0 * u.powf(1.0 + 4.0 * skew)) as u64;
    }
    h
}

/// Cheapest prefix code by exhaustive search: all non-decreasing length
/// vectors (lengths 1..=n-1) assigned to counts in descending order, keeping
/// those that satisfy Kraft.
fn brute_force_optimum(counts: &[u64]) -> u64 {
    let n = counts.len();
    if n == 1 {
        return counts[0];
    }
    let mut sorted = counts.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let max = n - 1;
    let mut best = u64::MAX;
    let mut lens = vec![1usize; n];
    fn rec(i: usize, lo: usize, max: usize, lens: &mut [usize], c: &[u64], best: &mut u64) {
        if i == lens.len() {
            let kraft: u64 = lens.iter().map(|&l| 1u64 << (max - l)).sum();
            if kraft <= 1 << max {
                let cost = lens.iter().zip(c).map(|(&l, &w)| l as u64 * w).sum();
                *best = (*best).min(cost);
            }
            return;
        }
        for l in lo..=max {
            lens[i] = l;
            rec(i + 1, l, max, lens, c, best);
        }
    }
    rec(0, 1, max, &mut lens, &sorted, &mut best);
    best
}

fn entropy_bits(hist: &[u64; ALPHABET]) -> f64 {
    let n: u64 = hist.iter().sum();
    hist.iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n as f64;
            -p * p.log2()
        })
        .sum()
}

fn huffman_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..1000 {
        let t = huffman_build(&random_histogram(&mut rng)).unwrap();
        ensure(prefix_free(&t), || format!("table {i} not prefix-free"))?;
        ensure(t.kraft_sum() <= 1.0, || {
            format!("table {i} Kraft {}", t.kraft_sum())
        })?;
        let back = HuffmanTable::deserialize(&t.serialize()).unwrap();
        ensure(back == t, || format!("table {i} serialization"))?;
    }

    let mut optimal_checks = 0;
    for n in 1..=8usize {
        for _ in 0..40 {
            let counts: Vec<u64> = (0..n).map(|_| rng.random_range(1..=500)).collect();
            let mut h = [0u64; ALPHABET];
            let mut symbols: Vec<usize> = (0..ALPHABET).collect();
            for (k, &c) in counts.iter().enumerate() {
                let j = rng.random_range(k..ALPHABET);
                symbols.swap(k, j);
                h[symbols[k]] = c;
            }
            let got = huffman_build(&h).unwrap().cost(&h);
            let want = brute_force_optimum(&counts);
            ensure(got == want, || {
                format!("counts {counts:?}: cost {got}, optimum {want}")
            })?;
            optimal_checks += 1;
        }
    }

    let mut worst_slack = f64::INFINITY;
    for _ in 0..200 {
        let len = rng.random_range(1..20_000);
        let step = rng.random_range(0..12u8);
        let mut v: u8 = rng.random_range(1..=255);
        let fg: Vec<u8> = (0..len)
            .map(|_| {
                let d = rng.random_range(0..=2 * step) as i16 - i16::from(step);
                v = (i16::from(v) + d).clamp(1, 255) as u8;
                v
            })
            .collect();
        let rs = residual_encode(&fg);
        let hist = histogram(&rs);
        let t = huffman_build(&hist).unwrap();
        let (_, code_bits) = huffman_encode(&rs, &t).unwrap();
        let encoded = code_bits as f64 + 8.0 * TABLE_LEN as f64;
        let bound = (entropy_bits(&hist) + 1.0) * rs.len() as f64 + 2048.0;
        ensure(encoded <= bound, || {
            format!("{encoded} bits > bound {bound}")
        })?;
        worst_slack = worst_slack.min(bound - encoded);
    }
    Ok(format!(
        "1000 tables prefix-free & Kraft<=1; {optimal_checks} optimality checks; 200 streams within (H+1)n+2048 (min slack {worst_slack:.1} bits)"
    ))
}

fn pipeline_equivalence(corpus: &[Image]) -> Outcome {
    for (i, img) in corpus.iter().enumerate() {
        let trace = simulate(img);
        let cs = compress(img);
        ensure(trace.background == cs.background, || {
            format!("image {i}: background differs")
        })?;
        ensure(trace.foreground == cs.foreground, || {
            format!("image {i}: foreground differs")
        })?;
        ensure(trace.total_cycles() == img.height() as u64 + 2, || {
            format!("image {i}: {} cycles", trace.total_cycles())
        })?;
        ensure(
            trace.cycles.iter().all(|c| c.index_cu == c.foreground_cu),
            || format!("image {i}: CUs out of step"),
        )?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(300);
    for h in 1..=300usize {
        let w = rng.random_range(1..=24);
        let px = (0..w * h).map(|_| rng.random_range(0..3u8) * 90).collect();
        let trace = simulate(&Image::new(w, h, px).unwrap());
        ensure(trace.total_cycles() == h as u64 + 2, || {
            format!("height {h}: {} cycles", trace.total_cycles())
        })?;
    }
    Ok(format!(
        "{} images byte-identical to compress(); cycles = H+2 for H in 1..=300",
        corpus.len()
    ))
}

fn synthetic_sanity_floor() -> Outcome {
    let mut sum_c = 0.0;
    let mut sum_f = 0.0;
    let mut sum_fg_share = 0.0;
    let n = 24;
    for seed in 0..n {
        let img = gen_synthetic(&SpotLayoutParams::microarray(seed)).unwrap();
        let s = stats(&img);
        let fg = s.fg_ratio.ok_or("image without foreground")?;
        ensure(s.container_ratio > 1.5, || {
            format!("seed {seed}: container ratio {}", s.container_ratio)
        })?;
        ensure(fg > 1.0, || format!("seed {seed}: fg ratio {fg}"))?;
        sum_c += s.container_ratio;
        sum_f += fg;
        sum_fg_share += s.fg_count as f64 / (s.width * s.height) as f64;
    }
    let nf = n as f64;
    Ok(format!(
        "{n} images, {:.1}% foreground: mean container ratio {:.2} (>1.5), mean fg ratio {:.2} (>1.0)",
        100.0 * sum_fg_share / nf,
        sum_c / nf,
        sum_f / nf
    ))
}

fn main() -> ExitCode {
    let corpus = corpus();
    let criteria: Vec<Criterion> = vec![
        ("1 losslessness", Box::new(|| losslessness(&corpus))),
        ("2 fig8 preset accounting", Box::new(fig8_accounting)),
        ("3 row scan vector", Box::new(sixteen_wide_vector)),
        ("4 eight-wide CU example", Box::new(eight_wide_example)),
        (
            "5 structural == behavioural CU",
            Box::new(structural_equivalence),
        ),
        ("6 huffman soundness", Box::new(huffman_soundness)),
        (
            "7 pipeline equivalence + latency",
            Box::new(|| pipeline_equivalence(&corpus)),
        ),
        (
            "8 synthetic corpus sanity floor",
            Box::new(synthetic_sanity_floor),
        ),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  criterion {name}: {detail} [{secs:.2}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {name}: {detail} [{secs:.2}s]");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
