//! The 2D-RA hyper-chaotic map, its chaos diagnostics, and an image cipher
//! built from self-adaptive (histogram-equalizing) diffusion followed by a
//! rank-based pixel permutation.
//!
//! Module map:
//!
//! * [`ra_map`]: map iteration, analytic Jacobian, chaotic streams.
//! * [`chaos_metrics`]: Lyapunov exponents, 0–1 test, correlation dimension,
//!   Kolmogorov entropy, sensitivity and sweep data.
//! * [`key_schedule`]: SHA-256 plaintext digest to map parameters; key files.
//! * [`diffusion`]: self-adaptive diffusion and its inverse.
//! * [`confusion`]: rank permutation and its inverse.
//! * [`cipher`]: the end-to-end pipeline.
//! * [`analysis`]: cryptanalysis metrics and limitation experiments.
//! * [`io`]: PGM, CSV and JSON emitters.
//! * [`cli`]: the `ra-crypt` command-line surface.

pub mod analysis;
pub mod chaos_metrics;
pub mod cipher;
pub mod confusion;
pub mod diffusion;
mod error;
pub mod image;
pub mod cli;
pub mod io;
pub mod key_schedule;
pub mod ra_map;

pub use error::{Error, Result};
pub use image::GrayImage;
