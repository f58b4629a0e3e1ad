//! Self-adaptive diffusion.
//!
//! Pixels are visited row by row. Each pixel is predicted to equal its
//! predecessor (the left neighbour, or for the first column the pixel above)
//! and remapped through a bijection that sends gray values close to the
//! prediction onto the output values that have been used least so far. For
//! natural images most predictions are close, so the output histogram is
//! driven towards uniform.
//!
//! The mapping is fixed by two orderings:
//!
//! * input slots: the prediction, then `p−1, p+1, p−2, p+2, …`, continuing on
//!   one side only once the other runs out of gray values;
//! * output values: all 256 gray values sorted by (running count, value).
//!
//! Counts are reals so a chaotic initialization in [0, 1) only reorders ties.

use crate::image::GrayImage;

pub const LEVELS: usize = 256;

/// Running occurrence counts of output gray values.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyTable {
    counts: [f64; LEVELS],
}

impl FrequencyTable {
    pub fn zeros() -> Self {
        Self {
            counts: [0.0; LEVELS],
        }
    }

    pub fn from_init(init: &[f64; LEVELS]) -> Self {
        Self { counts: *init }
    }

    pub fn counts(&self) -> &[f64; LEVELS] {
        &self.counts
    }

    pub fn record(&mut self, value: u8) {
        self.counts[value as usize] += 1.0;
    }

    pub fn total(&self) -> f64 {
        self.counts.iter().sum()
    }

    /// Gray values sorted by (count ascending, value ascending).
    pub fn output_order(&self) -> [u8; LEVELS] {
        let mut order: [u8; LEVELS] = std::array::from_fn(|v| v as u8);
        order.sort_by(|&a, &b| {
            self.counts[a as usize]
                .total_cmp(&self.counts[b as usize])
                .then(a.cmp(&b))
        });
        order
    }
}

impl Default for FrequencyTable {
    fn default() -> Self {
        Self::zeros()
    }
}

/// A bijection on gray values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayMapping {
    forward: [u8; LEVELS],
}

impl GrayMapping {
    pub fn apply(&self, value: u8) -> u8 {
        self.forward[value as usize]
    }

    pub fn forward(&self) -> &[u8; LEVELS] {
        &self.forward
    }

    pub fn inverse(&self) -> GrayMapping {
        let mut inv = [0u8; LEVELS];
        for (v, &out) in self.forward.iter().enumerate() {
            inv[out as usize] = v as u8;
        }
        GrayMapping { forward: inv }
    }
}

/// Position of `value` in the input-slot order around `prediction`.
pub fn slot_index(prediction: u8, value: u8) -> usize {
    let p = prediction as usize;
    let v = value as usize;
    let d = p.abs_diff(v);
    let both_sides = p.min(255 - p);
    if d == 0 {
        0
    } else if d <= both_sides {
        if v < p {
            2 * d - 1
        } else {
            2 * d
        }
    } else {
        both_sides + d
    }
}

/// Inverse of [`slot_index`].
pub fn slot_value(prediction: u8, index: usize) -> u8 {
    debug_assert!(index < LEVELS);
    let p = prediction as usize;
    let below = p;
    let above = 255 - p;
    let both_sides = below.min(above);
    let v = if index == 0 {
        p
    } else if index <= 2 * both_sides {
        let d = index.div_ceil(2);
        if index % 2 == 1 {
            p - d
        } else {
            p + d
        }
    } else {
        let d = index - both_sides;
        if below > above {
            p - d
        } else {
            p + d
        }
    };
    v as u8
}

/// Input-slot order around `prediction`.
pub fn slot_order(prediction: u8) -> [u8; LEVELS] {
    std::array::from_fn(|k| slot_value(prediction, k))
}

/// Builds the full mapping from scratch. This is the reference definition;
/// [`diffuse`] maintains the same ordering incrementally.
pub fn build_mapping(freq: &FrequencyTable, prediction: u8) -> GrayMapping {
    let slots = slot_order(prediction);
    let outputs = freq.output_order();
    let mut forward = [0u8; LEVELS];
    for (slot, out) in slots.iter().zip(outputs) {
        forward[*slot as usize] = out;
    }
    GrayMapping { forward }
}

/// Output values kept sorted by (count, value) across single-count updates.
struct RankedCounts {
    table: FrequencyTable,
    order: [u8; LEVELS],
    position: [usize; LEVELS],
}

impl RankedCounts {
    fn new(table: FrequencyTable) -> Self {
        let order = table.output_order();
        let mut position = [0; LEVELS];
        for (i, &v) in order.iter().enumerate() {
            position[v as usize] = i;
        }
        Self {
            table,
            order,
            position,
        }
    }

    fn at(&self, rank: usize) -> u8 {
        self.order[rank]
    }

    fn rank_of(&self, value: u8) -> usize {
        self.position[value as usize]
    }

    fn record(&mut self, value: u8) {
        self.table.record(value);
        let counts = &self.table.counts;
        let key = counts[value as usize];
        let from = self.position[value as usize];
        // the value only moves right; everything after it is still sorted
        let shift = self.order[from + 1..].partition_point(|&o| {
            counts[o as usize]
                .total_cmp(&key)
                .then(o.cmp(&value))
                .is_lt()
        });
        if shift > 0 {
            self.order[from..=from + shift].rotate_left(1);
            for i in from..=from + shift {
                self.position[self.order[i] as usize] = i;
            }
        }
    }
}

/// Processing order as `(index, predecessor index)` pairs in row-major
/// order, skipping the first pixel.
fn predecessors(height: usize, width: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..height).flat_map(move |i| {
        (0..width).filter_map(move |j| match (i, j) {
            (0, 0) => None,
            (_, 0) => Some((i * width, (i - 1) * width)),
            _ => Some((i * width + j, i * width + j - 1)),
        })
    })
}

/// Forward diffusion. `init` seeds the frequency table (all zeros for the
/// unoptimized variant).
pub fn diffuse(image: &GrayImage, init: &[f64; LEVELS]) -> GrayImage {
    diffuse_with_table(image, init).0
}

/// Forward diffusion that also returns the final frequency table.
pub fn diffuse_with_table(image: &GrayImage, init: &[f64; LEVELS]) -> (GrayImage, FrequencyTable) {
    let plain = image.pixels();
    let mut out = vec![0u8; plain.len()];
    let mut ranked = RankedCounts::new(FrequencyTable::from_init(init));

    out[0] = plain[0];
    ranked.record(out[0]);
    for (idx, pred) in predecessors(image.height(), image.width()) {
        let mapped = ranked.at(slot_index(plain[pred], plain[idx]));
        out[idx] = mapped;
        ranked.record(mapped);
    }
    (image.with_pixels(out), ranked.table)
}

/// Exact inverse of [`diffuse`] for the same `init`.
pub fn undiffuse(image: &GrayImage, init: &[f64; LEVELS]) -> GrayImage {
    let cipher = image.pixels();
    let mut plain = vec![0u8; cipher.len()];
    let mut ranked = RankedCounts::new(FrequencyTable::from_init(init));

    plain[0] = cipher[0];
    ranked.record(cipher[0]);
    for (idx, pred) in predecessors(image.height(), image.width()) {
        plain[idx] = slot_value(plain[pred], ranked.rank_of(cipher[idx]));
        ranked.record(cipher[idx]);
    }
    image.with_pixels(plain)
}

/// Forward diffusion rebuilding the whole mapping for every pixel. Slow;
/// kept as the reference the incremental path is checked against.
pub fn diffuse_reference(image: &GrayImage, init: &[f64; LEVELS]) -> GrayImage {
    let plain = image.pixels();
    let mut out = vec![0u8; plain.len()];
    let mut freq = FrequencyTable::from_init(init);
    out[0] = plain[0];
    freq.record(out[0]);
    for (idx, pred) in predecessors(image.height(), image.width()) {
        out[idx] = build_mapping(&freq, plain[pred]).apply(plain[idx]);
        freq.record(out[idx]);
    }
    image.with_pixels(out)
}
