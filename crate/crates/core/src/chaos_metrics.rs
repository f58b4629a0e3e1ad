//! Chaos diagnostics for planar maps: Lyapunov spectrum, the 0–1 test,
//! correlation dimension, Kolmogorov entropy, initial-value sensitivity and
//! the data behind bifurcation and attractor plots.
//!
//! Scalar metrics take a time series; for the 2D-RA map this is normally the
//! x-coordinate series returned by [`x_series`].

use std::collections::HashMap;
use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ra_map::{MapParams, MapState, Mat2, Orbit, PlanarMap, RaMap, DEFAULT_WARMUP};

#[derive(Debug, Clone, PartialEq)]
pub struct MetricConfig {
    /// Iterations accumulated by the Lyapunov estimator.
    pub n_iterations: usize,
    /// Iterations discarded before any measurement.
    pub transient: usize,
    /// Box width used to symbolize series for the entropy estimate.
    pub epsilon: f64,
    /// Radii at which the correlation integral is evaluated.
    pub r_grid: Vec<f64>,
    /// Number of random frequencies drawn by the 0–1 test.
    pub c_samples: usize,
    pub rng_seed: u64,
    /// Longest symbol block used by the entropy estimate.
    pub ke_block_max: usize,
}

impl Default for MetricConfig {
    fn default() -> Self {
        Self {
            n_iterations: 10_000,
            transient: DEFAULT_WARMUP,
            epsilon: 1.0 / 12.0,
            r_grid: geometric_grid(0.01, 0.1, 10),
            c_samples: 20,
            rng_seed: 42,
            ke_block_max: 3,
        }
    }
}

impl MetricConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidConfig(m.to_string()));
        if self.n_iterations == 0 || self.c_samples == 0 {
            return bad("counts must be at least 1");
        }
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return bad("epsilon must be positive");
        }
        if self.ke_block_max < 2 {
            return bad("ke_block_max must be at least 2");
        }
        if self.r_grid.is_empty() || self.r_grid.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
            return bad("r_grid must hold positive radii");
        }
        if self.r_grid.windows(2).any(|w| w[0] >= w[1]) {
            return bad("r_grid must be strictly increasing");
        }
        Ok(())
    }
}

/// `n` log-spaced values from `lo` to `hi` inclusive.
pub fn geometric_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let ratio = (hi / lo).ln() / (n - 1) as f64;
            (0..n).map(|k| lo * (ratio * k as f64).exp()).collect()
        }
    }
}

/// The x-coordinates of `length` consecutive states after `transient`
/// discarded iterations.
pub fn x_series(params: &MapParams, transient: usize, length: usize) -> Vec<f64> {
    let map = RaMap::new(*params);
    map.orbit().skip(transient).take(length).map(|s| s.x).collect()
}

// ---------------------------------------------------------------------------
// Lyapunov exponents

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LyapunovPair {
    pub le1: f64,
    pub le2: f64,
    pub iterations: usize,
}

/// Lyapunov spectrum of a planar map via tangent-space propagation with a
/// Gram–Schmidt re-orthonormalization after every step.
///
/// The 2D-RA Jacobian entries are around 10⁹, so the raw product overflows
/// after a few dozen steps; accumulating the log of the diagonal of each
/// QR factor avoids that.
pub fn lyapunov_pair<M: PlanarMap + ?Sized>(
    map: &M,
    start: MapState,
    config: &MetricConfig,
) -> Result<LyapunovPair> {
    if config.n_iterations < 100 {
        return Err(Error::InvalidConfig("lyapunov_pair needs at least 100 iterations".into()));
    }
    let mut state = start;
    for iteration in 0..config.transient {
        state = map.step(state);
        if !state.is_finite() {
            return Err(Error::NonFiniteState { iteration });
        }
    }

    // columns of the orthonormal frame
    let mut q1 = [1.0, 0.0];
    let mut q2 = [0.0, 1.0];
    let mut sum1 = 0.0;
    let mut sum2 = 0.0;
    for iteration in 0..config.n_iterations {
        let j = map.jacobian(state);
        let v1 = mat_vec(&j, q1);
        let v2 = mat_vec(&j, q2);

        let r11 = norm(v1);
        if !(r11.is_finite() && r11 > 0.0) {
            return Err(Error::NonFiniteState { iteration });
        }
        q1 = [v1[0] / r11, v1[1] / r11];
        let r12 = q1[0] * v2[0] + q1[1] * v2[1];
        let w = [v2[0] - r12 * q1[0], v2[1] - r12 * q1[1]];
        let r22 = norm(w);
        if !(r22.is_finite() && r22 > 0.0) {
            return Err(Error::NonFiniteState { iteration });
        }
        q2 = [w[0] / r22, w[1] / r22];

        sum1 += r11.ln();
        sum2 += r22.ln();

        state = map.step(state);
        if !state.is_finite() {
            return Err(Error::NonFiniteState { iteration });
        }
    }
    let n = config.n_iterations as f64;
    let (a, b) = (sum1 / n, sum2 / n);
    Ok(LyapunovPair {
        le1: a.max(b),
        le2: a.min(b),
        iterations: config.n_iterations,
    })
}

fn mat_vec(m: &Mat2, v: [f64; 2]) -> [f64; 2] {
    [
        m[0][0] * v[0] + m[0][1] * v[1],
        m[1][0] * v[0] + m[1][1] * v[1],
    ]
}

fn norm(v: [f64; 2]) -> f64 {
    v[0].hypot(v[1])
}

// ---------------------------------------------------------------------------
// 0–1 test

pub const ZERO_ONE_MIN_LEN: usize = 1000;

/// Gottwald–Melbourne 0–1 test. For each random frequency `c` the
/// mean-removed series `φ` drives the translation variables
///
/// ```text
/// p(n) = Σ_{j≤n} φ(j)·cos(jc),   q(n) = Σ_{j≤n} φ(j)·sin(jc)
/// ```
///
/// Removing the mean drops the bounded oscillation a nonzero mean adds to
/// `M(n)`, which otherwise drags the fitted slope well below 1 at `n ≤ N/10`.
///
/// whose mean-square displacement `M(n)` is evaluated for `n` up to a tenth
/// of the series length. `K_c` is the least-squares slope of `ln M(n)`
/// against `ln n`; the result is the median `K_c`, clamped to [0, 1].
pub fn zero_one_test(series: &[f64], config: &MetricConfig) -> Result<f64> {
    if series.len() < ZERO_ONE_MIN_LEN {
        return Err(Error::SeriesTooShort {
            len: series.len(),
            min: ZERO_ONE_MIN_LEN,
        });
    }
    if config.c_samples == 0 {
        return Err(Error::InvalidConfig("c_samples must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let cs: Vec<f64> = (0..config.c_samples)
        .map(|_| loop {
            let c = rng.gen_range(0.0..TAU);
            if c > 0.0 {
                break c;
            }
        })
        .collect();

    let mut ks: Vec<f64> = cs.par_iter().map(|&c| growth_rate(series, c)).collect();
    ks.sort_by(f64::total_cmp);
    let mid = ks.len() / 2;
    let median = if ks.len() % 2 == 1 {
        ks[mid]
    } else {
        0.5 * (ks[mid - 1] + ks[mid])
    };
    Ok(median.clamp(0.0, 1.0))
}

fn growth_rate(series: &[f64], c: f64) -> f64 {
    let n_total = series.len();
    let mean = series.iter().sum::<f64>() / n_total as f64;
    let mut p = Vec::with_capacity(n_total);
    let mut q = Vec::with_capacity(n_total);
    let (mut pc, mut qc) = (0.0, 0.0);
    for (j, &value) in series.iter().enumerate() {
        let phi = value - mean;
        let angle = c * (j + 1) as f64;
        pc += phi * angle.cos();
        qc += phi * angle.sin();
        p.push(pc);
        q.push(qc);
    }

    let n_cut = n_total / 10;
    let mut log_n = Vec::with_capacity(n_cut);
    let mut log_m = Vec::with_capacity(n_cut);
    for lag in 1..=n_cut {
        let terms = n_total - lag;
        let msd: f64 = (0..terms)
            .map(|i| {
                let dp = p[i + lag] - p[i];
                let dq = q[i + lag] - q[i];
                dp * dp + dq * dq
            })
            .sum::<f64>()
            / terms as f64;
        if msd <= 0.0 {
            // a zero series never moves
            return 0.0;
        }
        log_n.push((lag as f64).ln());
        log_m.push(msd.ln());
    }
    least_squares_slope(&log_n, &log_m).unwrap_or(0.0)
}

pub(crate) fn least_squares_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let n = xs.len() as f64;
    if xs.len() < 2 {
        return None;
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    (sxx > 0.0).then(|| sxy / sxx)
}

// ---------------------------------------------------------------------------
// Correlation dimension

pub const CD_MIN_LEN: usize = 500;
pub const CD_MAX_LEN: usize = 5000;

/// Correlation integral `C(R)` of the series delay-embedded as consecutive
/// pairs `(s[i], s[i+1])`, using the Chebyshev distance. Returns one value
/// per radius of `r_grid`.
pub fn correlation_integral(series: &[f64], r_grid: &[f64]) -> Vec<f64> {
    let points: Vec<(f64, f64)> = series.windows(2).map(|w| (w[0], w[1])).collect();
    let n = points.len();
    if n < 2 {
        return vec![0.0; r_grid.len()];
    }
    // bucket[k] counts pairs whose distance first fits under r_grid[k]
    let buckets = (0..n - 1)
        .into_par_iter()
        .fold(
            || vec![0u64; r_grid.len() + 1],
            |mut acc, i| {
                let (xi, yi) = points[i];
                for &(xj, yj) in &points[i + 1..] {
                    let d = (xi - xj).abs().max((yi - yj).abs());
                    acc[r_grid.partition_point(|&r| r < d)] += 1;
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; r_grid.len() + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let total_pairs = (n * (n - 1) / 2) as f64;
    let mut running = 0u64;
    buckets[..r_grid.len()]
        .iter()
        .map(|&b| {
            running += b;
            running as f64 / total_pairs
        })
        .collect()
}

/// Log-log slope of the correlation integral over the radii where
/// `0 < C(R) < 1`.
pub fn correlation_dimension(series: &[f64], config: &MetricConfig) -> Result<f64> {
    if series.len() < CD_MIN_LEN {
        return Err(Error::SeriesTooShort {
            len: series.len(),
            min: CD_MIN_LEN,
        });
    }
    if series.len() > CD_MAX_LEN {
        return Err(Error::SeriesTooLong {
            len: series.len(),
            max: CD_MAX_LEN,
        });
    }
    config.validate()?;
    let first = (series[0], series[1]);
    if series.windows(2).all(|w| (w[0], w[1]) == first) {
        return Err(Error::DegenerateSeries("all embedded points coincide"));
    }

    let c = correlation_integral(series, &config.r_grid);
    let (log_r, log_c): (Vec<f64>, Vec<f64>) = config
        .r_grid
        .iter()
        .zip(&c)
        .filter(|(_, &cr)| cr > 0.0 && cr < 1.0)
        .map(|(r, cr)| (r.ln(), cr.ln()))
        .unzip();
    least_squares_slope(&log_r, &log_c)
        .ok_or(Error::DegenerateSeries("fewer than two radii inside the scaling range"))
}

// ---------------------------------------------------------------------------
// Kolmogorov entropy

pub const KE_MIN_LEN: usize = 1000;

/// Shannon block entropy (nats) of overlapping length-`n` blocks.
pub fn block_entropy(symbols: &[u32], n: usize) -> f64 {
    if n == 0 || symbols.len() < n {
        return 0.0;
    }
    let mut counts: HashMap<&[u32], usize> = HashMap::new();
    for block in symbols.windows(n) {
        *counts.entry(block).or_default() += 1;
    }
    let total = (symbols.len() - n + 1) as f64;
    counts
        .values()
        .map(|&k| {
            let p = k as f64 / total;
            -p * p.ln()
        })
        .sum()
}

/// Coarse-grains the series into boxes of width `epsilon` and averages the
/// block-entropy increments `K_{n+1} − K_n` for `n = 1 .. ke_block_max − 1`.
pub fn kolmogorov_entropy(series: &[f64], config: &MetricConfig) -> Result<f64> {
    if series.len() < KE_MIN_LEN {
        return Err(Error::SeriesTooShort {
            len: series.len(),
            min: KE_MIN_LEN,
        });
    }
    config.validate()?;
    let symbols = series
        .iter()
        .enumerate()
        .map(|(index, &value)| {
            if (0.0..1.0).contains(&value) {
                Ok((value / config.epsilon).floor() as u32)
            } else {
                Err(Error::ValueOutOfRange { index, value })
            }
        })
        .collect::<Result<Vec<u32>>>()?;

    let entropies: Vec<f64> = (1..=config.ke_block_max)
        .map(|n| block_entropy(&symbols, n))
        .collect();
    let increments = entropies.windows(2).map(|w| w[1] - w[0]);
    let mean = increments.sum::<f64>() / (entropies.len() - 1) as f64;
    Ok(mean.max(0.0))
}

// ---------------------------------------------------------------------------
// Sensitivity, bifurcation and attractor data

#[derive(Debug, Clone, PartialEq)]
pub struct Sensitivity {
    /// First iteration (1-based) with `|x − x′| > threshold`, if any.
    pub diverged_at: Option<usize>,
    pub reference: Vec<MapState>,
    pub perturbed: Vec<MapState>,
}

/// Twin trajectories from `(x_init, y_init)` and `(x_init + delta, y_init)`,
/// each `max_iter` states long.
pub fn sensitivity_divergence(
    params: &MapParams,
    delta: f64,
    threshold: f64,
    max_iter: usize,
) -> Sensitivity {
    let map = RaMap::new(*params);
    let start = params.initial_state();
    let shifted = MapState::new(start.x + delta, start.y);
    let reference: Vec<MapState> = Orbit::new(&map, start).take(max_iter).collect();
    let perturbed: Vec<MapState> = Orbit::new(&map, shifted).take(max_iter).collect();
    let diverged_at = reference
        .iter()
        .zip(&perturbed)
        .position(|(a, b)| (a.x - b.x).abs() > threshold)
        .map(|i| i + 1);
    Sensitivity {
        diverged_at,
        reference,
        perturbed,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    Alpha,
    Beta,
}

impl SweepAxis {
    pub fn apply(self, base: &MapParams, value: u32) -> MapParams {
        let mut p = *base;
        match self {
            SweepAxis::Alpha => p.alpha = value,
            SweepAxis::Beta => p.beta = value,
        }
        p
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub param_value: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub values: Vec<u32>,
    pub transient: usize,
    /// x-values emitted per grid point.
    pub samples: usize,
}

impl SweepSpec {
    pub fn new(axis: SweepAxis, values: Vec<u32>) -> Self {
        Self {
            axis,
            values,
            transient: DEFAULT_WARMUP,
            samples: 100,
        }
    }
}

/// Evaluates `f` at every grid value in parallel; results keep grid order.
pub fn sweep<T, F>(base: &MapParams, axis: SweepAxis, values: &[u32], f: F) -> Vec<(u32, T)>
where
    T: Send,
    F: Fn(&MapParams) -> T + Sync,
{
    values
        .par_iter()
        .map(|&v| (v, f(&axis.apply(base, v))))
        .collect()
}

pub fn bifurcation_sweep(base: &MapParams, spec: &SweepSpec) -> Vec<SweepPoint> {
    sweep(base, spec.axis, &spec.values, |p| {
        x_series(p, spec.transient, spec.samples)
    })
    .into_iter()
    .flat_map(|(v, xs)| {
        xs.into_iter().map(move |x| SweepPoint {
            param_value: f64::from(v),
            value: x,
        })
    })
    .collect()
}

pub fn attractor_points(params: &MapParams, n_points: usize, transient: usize) -> Vec<MapState> {
    RaMap::new(*params)
        .orbit()
        .skip(transient)
        .take(n_points)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ra_map::frac;

    /// (x, y) → (2x mod 1, 3y mod 1).
    struct Expanding;

    impl PlanarMap for Expanding {
        fn step(&self, s: MapState) -> MapState {
            MapState::new(frac(2.0 * s.x), frac(3.0 * s.y))
        }
        fn jacobian(&self, _: MapState) -> Mat2 {
            [[2.0, 0.0], [0.0, 3.0]]
        }
    }

    struct Identity;

    impl PlanarMap for Identity {
        fn step(&self, s: MapState) -> MapState {
            s
        }
        fn jacobian(&self, _: MapState) -> Mat2 {
            [[1.0, 0.0], [0.0, 1.0]]
        }
    }

    fn unit_params() -> MapParams {
        MapParams::new(1, 1, 0.5, 0.5).unwrap()
    }

    fn uniform_series(seed: u64, n: usize) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| rng.gen::<f64>()).collect()
    }

    #[test]
    fn lyapunov_constant_jacobian_is_exact() {
        let le = lyapunov_pair(&Expanding, MapState::new(0.1, 0.2), &MetricConfig::default()).unwrap();
        assert!((le.le1 - 3f64.ln()).abs() < 1e-6);
        assert!((le.le2 - 2f64.ln()).abs() < 1e-6);
    }

    #[test]
    fn lyapunov_identity_is_zero() {
        let le = lyapunov_pair(&Identity, MapState::new(0.1, 0.2), &MetricConfig::default()).unwrap();
        assert_eq!((le.le1, le.le2), (0.0, 0.0));
    }

    #[test]
    fn lyapunov_rejects_short_runs() {
        let cfg = MetricConfig {
            n_iterations: 10,
            ..Default::default()
        };
        assert!(lyapunov_pair(&Identity, MapState::new(0.1, 0.2), &cfg).is_err());
    }

    #[test]
    fn ra_map_is_hyperchaotic() {
        let p = unit_params();
        let le = lyapunov_pair(&RaMap::new(p), p.initial_state(), &MetricConfig::default()).unwrap();
        assert!(le.le2 > 0.0);
        assert!((18.0..=26.0).contains(&le.le1), "{le:?}");
        // order of magnitude: ln(2π·10⁸) ≈ 20.3
        assert!((le.le1 - (TAU * 1e8).ln()).abs() < 3.0);
    }

    #[test]
    fn zero_one_periodic_is_regular() {
        let series: Vec<f64> = (0..5000).map(|i| if i % 2 == 0 { 0.1 } else { 0.9 }).collect();
        let k = zero_one_test(&series, &MetricConfig::default()).unwrap();
        assert!(k < 0.1, "K = {k}");
    }

    #[test]
    fn zero_one_iid_is_chaotic() {
        let k = zero_one_test(&uniform_series(3, 5000), &MetricConfig::default()).unwrap();
        assert!(k > 0.9, "K = {k}");
    }

    #[test]
    fn zero_one_ra_map_is_chaotic() {
        let xs = x_series(&unit_params(), DEFAULT_WARMUP, 5000);
        let k = zero_one_test(&xs, &MetricConfig::default()).unwrap();
        assert!(k >= 0.95, "K = {k}");
    }

    #[test]
    fn zero_one_rejects_short_series() {
        assert!(matches!(
            zero_one_test(&[0.5; 999], &MetricConfig::default()),
            Err(Error::SeriesTooShort { .. })
        ));
    }

    #[test]
    fn zero_one_is_seeded() {
        let s = uniform_series(4, 2000);
        let cfg = MetricConfig::default();
        assert_eq!(zero_one_test(&s, &cfg).unwrap(), zero_one_test(&s, &cfg).unwrap());
    }

    /// Independent O(N²) correlation integral: every ordered pair i ≠ j.
    fn brute_force_correlation(series: &[f64], r: f64) -> f64 {
        let pts: Vec<(f64, f64)> = series.windows(2).map(|w| (w[0], w[1])).collect();
        let n = pts.len();
        let mut hits = 0usize;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let d = (pts[i].0 - pts[j].0).abs().max((pts[i].1 - pts[j].1).abs());
                    if r - d >= 0.0 {
                        hits += 1;
                    }
                }
            }
        }
        hits as f64 / (n * (n - 1)) as f64
    }

    #[test]
    fn correlation_integral_matches_brute_force() {
        let s = uniform_series(5, 600);
        let grid = MetricConfig::default().r_grid;
        let fast = correlation_integral(&s, &grid);
        for (r, c) in grid.iter().zip(&fast) {
            assert!((c - brute_force_correlation(&s, *r)).abs() < 1e-12);
        }
    }

    #[test]
    fn correlation_dimension_of_a_line() {
        let n = 1000;
        let s: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
        let cd = correlation_dimension(&s, &MetricConfig::default()).unwrap();
        assert!((cd - 1.0).abs() < 0.1, "CD = {cd}");
    }

    #[test]
    fn correlation_dimension_of_uniform_plane() {
        let s = uniform_series(6, 2000);
        let cfg = MetricConfig::default();
        let cd = correlation_dimension(&s, &cfg).unwrap();
        assert!((cd - 2.0).abs() < 0.1, "CD = {cd}");

        // brute-force slope over the same grid
        let (lr, lc): (Vec<f64>, Vec<f64>) = cfg
            .r_grid
            .iter()
            .map(|&r| (r.ln(), brute_force_correlation(&s, r).ln()))
            .unzip();
        let oracle = least_squares_slope(&lr, &lc).unwrap();
        assert!((cd - oracle).abs() < 1e-9);
    }

    #[test]
    fn correlation_integral_is_monotone_and_saturates() {
        let s = uniform_series(7, 800);
        let grid = vec![0.01, 0.05, 0.2, 0.5, 1.5];
        let c = correlation_integral(&s, &grid);
        assert!(c.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(*c.last().unwrap(), 1.0);
    }

    #[test]
    fn correlation_dimension_errors() {
        let cfg = MetricConfig::default();
        assert!(matches!(
            correlation_dimension(&[0.3; 600], &cfg),
            Err(Error::DegenerateSeries(_))
        ));
        assert!(matches!(
            correlation_dimension(&[0.3; 100], &cfg),
            Err(Error::SeriesTooShort { .. })
        ));
        assert!(matches!(
            correlation_dimension(&uniform_series(1, 6000), &cfg),
            Err(Error::SeriesTooLong { .. })
        ));
    }

    #[test]
    fn kolmogorov_entropy_constant_is_zero() {
        assert_eq!(kolmogorov_entropy(&[0.3; 2000], &MetricConfig::default()).unwrap(), 0.0);
    }

    #[test]
    fn kolmogorov_entropy_periodic_is_zero() {
        let s: Vec<f64> = (0..3000).map(|i| [0.05, 0.55, 0.95][i % 3]).collect();
        let ke = kolmogorov_entropy(&s, &MetricConfig::default()).unwrap();
        assert!(ke.abs() < 1e-12, "KE = {ke}");
    }

    /// Brute-force block entropy with explicit base-12 block codes.
    fn brute_block_entropy(sym: &[u32], n: usize) -> f64 {
        let mut counts = vec![0usize; 12usize.pow(n as u32)];
        for w in sym.windows(n) {
            let code = w.iter().fold(0usize, |acc, &s| acc * 12 + s as usize);
            counts[code] += 1;
        }
        let total = (sym.len() - n + 1) as f64;
        counts
            .iter()
            .filter(|&&k| k > 0)
            .map(|&k| {
                let p = k as f64 / total;
                -p * p.ln()
            })
            .sum()
    }

    #[test]
    fn kolmogorov_entropy_of_iid_series() {
        let s = uniform_series(8, 200_000);
        let cfg = MetricConfig::default();
        let ke = kolmogorov_entropy(&s, &cfg).unwrap();
        assert!((ke - 12f64.ln()).abs() < 0.02, "KE = {ke}");

        let sym: Vec<u32> = s.iter().map(|v| (v * 12.0).floor() as u32).collect();
        let oracle = (brute_block_entropy(&sym, 3) - brute_block_entropy(&sym, 1)) / 2.0;
        assert!((ke - oracle).abs() < 1e-9);
    }

    #[test]
    fn kolmogorov_entropy_of_ra_map() {
        let xs = x_series(&unit_params(), DEFAULT_WARMUP, 20_000);
        let ke = kolmogorov_entropy(&xs, &MetricConfig::default()).unwrap();
        assert!(ke > 2.4, "KE = {ke}");
    }

    #[test]
    fn kolmogorov_entropy_rejects_out_of_range() {
        let mut s = vec![0.5; 1500];
        s[10] = 1.0;
        assert!(matches!(
            kolmogorov_entropy(&s, &MetricConfig::default()),
            Err(Error::ValueOutOfRange { index: 10, .. })
        ));
    }

    #[test]
    fn sensitivity_zero_delta_never_diverges() {
        let s = sensitivity_divergence(&unit_params(), 0.0, 0.1, 50);
        assert_eq!(s.diverged_at, None);
        assert_eq!(s.reference.len(), 50);
        assert_eq!(s.perturbed.len(), 50);
    }

    #[test]
    fn sensitivity_tiny_delta_diverges_early() {
        let s = sensitivity_divergence(&unit_params(), 1e-9, 0.1, 100);
        let at = s.diverged_at.expect("never diverged");
        assert!((1..=3).contains(&at), "diverged at {at}");
    }

    #[test]
    fn bifurcation_counts() {
        let p = unit_params();
        let mut one = SweepSpec::new(SweepAxis::Alpha, vec![3]);
        one.samples = 1;
        assert_eq!(bifurcation_sweep(&p, &one).len(), 1);

        let spec = SweepSpec::new(SweepAxis::Alpha, (0..=200).collect());
        let pts = bifurcation_sweep(&p, &spec);
        assert_eq!(pts.len(), 20_100);
        assert!(pts.iter().all(|s| (0.0..1.0).contains(&s.value)));

        // no bin of a 20-bin histogram exceeds 20% of a grid point's samples
        let clustered = pts
            .chunks(100)
            .filter(|chunk| {
                let mut bins = [0usize; 20];
                chunk.iter().for_each(|s| bins[(s.value * 20.0) as usize] += 1);
                bins.iter().any(|&b| b > 20)
            })
            .count();
        assert!(clustered as f64 <= 0.05 * 201.0, "{clustered} clustered grid points");
    }

    #[test]
    fn attractor_fills_phase_space() {
        let one = attractor_points(&unit_params(), 1, 0);
        assert_eq!(one.len(), 1);
        assert!((0.0..1.0).contains(&one[0].x) && (0.0..1.0).contains(&one[0].y));

        let n = 10_000;
        let pts = attractor_points(&unit_params(), n, DEFAULT_WARMUP);
        let mut grid = [0usize; 256];
        for s in &pts {
            grid[(s.x * 16.0) as usize * 16 + (s.y * 16.0) as usize] += 1;
        }
        assert!(grid.iter().all(|&c| c > 0));
        let expected = n as f64 / 256.0;
        let sigma = (n as f64 * (1.0 / 256.0) * (255.0 / 256.0)).sqrt();
        let max = *grid.iter().max().unwrap() as f64;
        assert!(max < 2.0 * expected + 5.0 * sigma, "max cell {max}");
    }

    #[test]
    fn sweep_keeps_grid_order() {
        let out = sweep(&unit_params(), SweepAxis::Beta, &[5, 1, 9], |p| p.beta);
        assert_eq!(out, vec![(5, 5), (1, 1), (9, 9)]);
    }

    #[test]
    fn config_validation() {
        let mut cfg = MetricConfig::default();
        assert!(cfg.validate().is_ok());
        cfg.r_grid = vec![0.1, 0.05];
        assert!(cfg.validate().is_err());
    }
}
