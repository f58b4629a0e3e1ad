//! Statistical cryptanalysis of cipher images, plus the two limitation
//! experiments: ciphertext cropping and checkerboard plaintexts.

use crate::error::{Error, Result};
use crate::image::GrayImage;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Horizontal,
    Vertical,
    Diagonal,
}

impl Direction {
    pub const ALL: [Direction; 3] = [Direction::Horizontal, Direction::Vertical, Direction::Diagonal];

    fn offset(self) -> (usize, usize) {
        match self {
            Direction::Horizontal => (0, 1),
            Direction::Vertical => (1, 0),
            Direction::Diagonal => (1, 1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::Horizontal => "horizontal",
            Direction::Vertical => "vertical",
            Direction::Diagonal => "diagonal",
        }
    }
}

/// Every adjacent pair `(p(i,j), p(i+di, j+dj))` in row-major order.
pub fn adjacent_pairs(image: &GrayImage, direction: Direction) -> impl Iterator<Item = (u8, u8)> + Clone + '_ {
    let (di, dj) = direction.offset();
    let rows = image.height().saturating_sub(di);
    let cols = image.width().saturating_sub(dj);
    (0..rows).flat_map(move |i| (0..cols).map(move |j| (image.get(i, j), image.get(i + di, j + dj))))
}

pub fn adjacent_pair_count(image: &GrayImage, direction: Direction) -> usize {
    let (di, dj) = direction.offset();
    image.height().saturating_sub(di) * image.width().saturating_sub(dj)
}

/// Pearson correlation of adjacent pixels with population (1/N) moments.
pub fn correlation_coefficient(image: &GrayImage, direction: Direction) -> Result<f64> {
    pearson(adjacent_pairs(image, direction))
}

pub(crate) fn pearson(pairs: impl Iterator<Item = (u8, u8)> + Clone) -> Result<f64> {
    let (mut n, mut sx, mut sy) = (0usize, 0u64, 0u64);
    for (a, b) in pairs.clone() {
        n += 1;
        sx += u64::from(a);
        sy += u64::from(b);
    }
    if n == 0 {
        return Err(Error::NoAdjacentPairs);
    }
    let mx = sx as f64 / n as f64;
    let my = sy as f64 / n as f64;
    let (mut cov, mut vx, mut vy) = (0.0, 0.0, 0.0);
    for (a, b) in pairs {
        let dx = f64::from(a) - mx;
        let dy = f64::from(b) - my;
        cov += dx * dy;
        vx += dx * dx;
        vy += dy * dy;
    }
    if vx == 0.0 || vy == 0.0 {
        return Err(Error::ZeroVariance);
    }
    Ok(cov / (vx.sqrt() * vy.sqrt()))
}

/// Every `k`-th adjacent pair, with `k` chosen so at most `max_pairs` remain.
pub fn adjacent_scatter(image: &GrayImage, direction: Direction, max_pairs: usize) -> Vec<(u8, u8)> {
    let total = adjacent_pair_count(image, direction);
    if max_pairs == 0 || total == 0 {
        return Vec::new();
    }
    let stride = total.div_ceil(max_pairs);
    adjacent_pairs(image, direction).step_by(stride).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub counts: [u64; 256],
    /// Population standard deviation of the 256 bin counts.
    pub std: f64,
}

pub fn histogram(image: &GrayImage) -> Histogram {
    let mut counts = [0u64; 256];
    for &p in image.pixels() {
        counts[p as usize] += 1;
    }
    Histogram {
        counts,
        std: bin_std(&counts),
    }
}

fn bin_std(counts: &[u64; 256]) -> f64 {
    let mean = counts.iter().sum::<u64>() as f64 / 256.0;
    let var = counts
        .iter()
        .map(|&c| (c as f64 - mean).powi(2))
        .sum::<f64>()
        / 256.0;
    var.sqrt()
}

/// Shannon entropy of the gray-level distribution, in bits.
pub fn information_entropy(image: &GrayImage) -> f64 {
    let n = image.len() as f64;
    let h: f64 = histogram(image)
        .counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum();
    h.max(0.0)
}

/// Percentage of positions where the two images differ.
pub fn npcr(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    a.ensure_same_shape(b)?;
    let changed = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .filter(|(x, y)| x != y)
        .count();
    Ok(100.0 * changed as f64 / a.len() as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub entropy: f64,
    /// `None` when the correlation is undefined (zero variance).
    pub cc_horizontal: Option<f64>,
    pub cc_vertical: Option<f64>,
    pub cc_diagonal: Option<f64>,
    pub npcr: f64,
    pub histogram: [u64; 256],
    pub histogram_std: f64,
}

/// Metrics of `encrypted`, with NPCR measured against `original`.
pub fn evaluate(original: &GrayImage, encrypted: &GrayImage) -> Result<MetricsReport> {
    let npcr = npcr(original, encrypted)?;
    let cc = |d| match correlation_coefficient(encrypted, d) {
        Ok(v) => Ok(Some(v)),
        Err(Error::ZeroVariance | Error::NoAdjacentPairs) => Ok(None),
        Err(e) => Err(e),
    };
    let hist = histogram(encrypted);
    Ok(MetricsReport {
        entropy: information_entropy(encrypted),
        cc_horizontal: cc(Direction::Horizontal)?,
        cc_vertical: cc(Direction::Vertical)?,
        cc_diagonal: cc(Direction::Diagonal)?,
        npcr,
        histogram: hist.counts,
        histogram_std: hist.std,
    })
}

/// Copy of `cipher` with the `w`×`h` rectangle at column `x`, row `y` set
/// to `fill`.
pub fn crop_cipher(cipher: &GrayImage, x: usize, y: usize, w: usize, h: usize, fill: u8) -> Result<GrayImage> {
    let fits = |start: usize, len: usize, limit: usize| start.checked_add(len).is_some_and(|end| end <= limit);
    if !fits(x, w, cipher.width()) || !fits(y, h, cipher.height()) {
        return Err(Error::OutOfBounds {
            x,
            y,
            w,
            h,
            height: cipher.height(),
            width: cipher.width(),
        });
    }
    let mut out = cipher.clone();
    for row in y..y + h {
        for col in x..x + w {
            out.set(row, col, fill);
        }
    }
    Ok(out)
}

pub fn gen_checkerboard(height: usize, width: usize, low: u8, high: u8) -> Result<GrayImage> {
    GrayImage::from_fn(height, width, |i, j| if (i + j) % 2 == 0 { low } else { high })
}
