//! The 2D-RA map: a Rastrigin/Ackley hybrid iterated on the unit square.
//!
//! ```text
//! x' = [x² − (β+b)·cos(2πx) − (α+b)·exp(−0.2·√(0.5x² + 0.5y²))] mod 1
//! y' = [y² − (β+b)·cos(2πy) − (α+b)·exp(0.5·cos(2πx) + 0.5·cos(2πy)) + e] mod 1
//! ```
//!
//! The pre-mod terms are of order `b` (10⁸ by default), so only about seven
//! or eight fractional digits survive the reduction. Streams are
//! reproducible within one build; decrypting on a platform with different
//! `exp`/`cos` implementations is not guaranteed to be bit-exact.

use std::f64::consts::{E, PI, TAU};

use crate::error::{Error, Result};

pub const DEFAULT_BIAS: f64 = 1e8;

/// Iterations discarded before a stream starts emitting values.
pub const DEFAULT_WARMUP: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapParams {
    pub alpha: u32,
    pub beta: u32,
    pub bias: f64,
    pub x_init: f64,
    pub y_init: f64,
}

impl MapParams {
    pub fn new(alpha: u32, beta: u32, x_init: f64, y_init: f64) -> Result<Self> {
        Self::with_bias(alpha, beta, DEFAULT_BIAS, x_init, y_init)
    }

    pub fn with_bias(alpha: u32, beta: u32, bias: f64, x_init: f64, y_init: f64) -> Result<Self> {
        if !(bias.is_finite() && bias > 0.0) {
            return Err(Error::InvalidConfig(format!("bias must be positive, got {bias}")));
        }
        for (name, v) in [("x_init", x_init), ("y_init", y_init)] {
            if !(v > 0.0 && v <= 1.0) {
                return Err(Error::InvalidConfig(format!("{name} must lie in (0, 1], got {v}")));
            }
        }
        Ok(Self {
            alpha,
            beta,
            bias,
            x_init,
            y_init,
        })
    }

    pub fn initial_state(&self) -> MapState {
        MapState {
            x: self.x_init,
            y: self.y_init,
        }
    }

    fn alpha_term(&self) -> f64 {
        f64::from(self.alpha) + self.bias
    }

    fn beta_term(&self) -> f64 {
        f64::from(self.beta) + self.bias
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapState {
    pub x: f64,
    pub y: f64,
}

impl MapState {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// 2×2 matrix stored row-major: `m[row][col]`.
pub type Mat2 = [[f64; 2]; 2];

/// A two-dimensional discrete map with an analytic Jacobian.
pub trait PlanarMap {
    fn step(&self, state: MapState) -> MapState;

    /// Derivative of the map at `state`, with any `mod 1` reduction treated
    /// as having derivative 1.
    fn jacobian(&self, state: MapState) -> Mat2;
}

/// Reduction into [0, 1) that also handles negative arguments.
#[inline]
pub fn frac(t: f64) -> f64 {
    let r = t - t.floor();
    // t slightly below an integer can round up to exactly 1.0
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// The two right-hand sides before the `mod 1` reduction.
pub fn step_raw(state: MapState, params: &MapParams) -> (f64, f64) {
    let MapState { x, y } = state;
    let a = params.alpha_term();
    let b = params.beta_term();
    let cos_x = (TAU * x).cos();
    let cos_y = (TAU * y).cos();
    let radial = (0.5 * x * x + 0.5 * y * y).sqrt();
    let raw_x = x * x - b * cos_x - a * (-0.2 * radial).exp();
    let raw_y = y * y - b * cos_y - a * (0.5 * cos_x + 0.5 * cos_y).exp() + E;
    (raw_x, raw_y)
}

pub fn step(state: MapState, params: &MapParams) -> MapState {
    let (raw_x, raw_y) = step_raw(state, params);
    MapState {
        x: frac(raw_x),
        y: frac(raw_y),
    }
}

/// Analytic Jacobian of [`step_raw`]. At the origin the radial term's
/// gradient is taken to be zero.
pub fn jacobian_raw(state: MapState, params: &MapParams) -> Mat2 {
    let MapState { x, y } = state;
    let a = params.alpha_term();
    let b = params.beta_term();
    let sin_x = (TAU * x).sin();
    let sin_y = (TAU * y).sin();
    let cos_x = (TAU * x).cos();
    let cos_y = (TAU * y).cos();
    let radial = (0.5 * x * x + 0.5 * y * y).sqrt();

    // d/dx of −a·exp(−0.2r) = 0.1·a·exp(−0.2r)·x/r
    let (radial_dx, radial_dy) = if radial > 0.0 {
        let g = 0.1 * a * (-0.2 * radial).exp() / radial;
        (g * x, g * y)
    } else {
        (0.0, 0.0)
    };
    let ackley = (0.5 * cos_x + 0.5 * cos_y).exp();

    [
        [2.0 * x + TAU * b * sin_x + radial_dx, radial_dy],
        [
            PI * a * ackley * sin_x,
            2.0 * y + TAU * b * sin_y + PI * a * ackley * sin_y,
        ],
    ]
}

/// The 2D-RA map bound to a parameter set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RaMap {
    pub params: MapParams,
}

impl RaMap {
    pub fn new(params: MapParams) -> Self {
        Self { params }
    }

    /// Endless sequence of states following the initial condition.
    pub fn orbit(&self) -> Orbit<'_, Self> {
        Orbit::new(self, self.params.initial_state())
    }
}

impl PlanarMap for RaMap {
    fn step(&self, state: MapState) -> MapState {
        step(state, &self.params)
    }

    fn jacobian(&self, state: MapState) -> Mat2 {
        jacobian_raw(state, &self.params)
    }
}

/// Iterator over successive images of a starting state (the start itself
/// is not yielded).
pub struct Orbit<'a, M: PlanarMap + ?Sized> {
    map: &'a M,
    state: MapState,
}

impl<'a, M: PlanarMap + ?Sized> Orbit<'a, M> {
    pub fn new(map: &'a M, start: MapState) -> Self {
        Self { map, state: start }
    }
}

impl<M: PlanarMap + ?Sized> Iterator for Orbit<'_, M> {
    type Item = MapState;

    fn next(&mut self) -> Option<MapState> {
        self.state = self.map.step(self.state);
        Some(self.state)
    }
}

/// Interleaved `x₁, y₁, x₂, y₂, …` values drawn from one trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct ChaoticStream {
    values: Vec<f64>,
    warmup: usize,
}

impl ChaoticStream {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn warmup(&self) -> usize {
        self.warmup
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Runs the map from the initial condition, drops `warmup` iterations, then
/// emits interleaved coordinates until `length` values are collected. An odd
/// `length` ends on an x value.
pub fn generate_stream(params: &MapParams, warmup: usize, length: usize) -> ChaoticStream {
    let map = RaMap::new(*params);
    let mut values = Vec::with_capacity(length);
    for state in map.orbit().skip(warmup) {
        if values.len() >= length {
            break;
        }
        values.push(state.x);
        if values.len() < length {
            values.push(state.y);
        }
    }
    ChaoticStream { values, warmup }
}
