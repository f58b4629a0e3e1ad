use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("image has no pixels")]
    EmptyImage,
    #[error("pixel buffer holds {actual} values, expected {expected}")]
    SizeMismatch { expected: usize, actual: usize },
    #[error("image dimensions differ: {left_h}x{left_w} vs {right_h}x{right_w}")]
    DimensionMismatch {
        left_h: usize,
        left_w: usize,
        right_h: usize,
        right_w: usize,
    },
    #[error("malformed key: {0}")]
    MalformedKey(String),
    #[error("map produced a non-finite state at iteration {iteration}")]
    NonFiniteState { iteration: usize },
    #[error("series of length {len} is too short (need at least {min})")]
    SeriesTooShort { len: usize, min: usize },
    #[error("series of length {len} is too long (at most {max})")]
    SeriesTooLong { len: usize, max: usize },
    #[error("series is degenerate: {0}")]
    DegenerateSeries(&'static str),
    #[error("series value {value} at index {index} lies outside [0, 1)")]
    ValueOutOfRange { index: usize, value: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("correlation undefined: zero variance")]
    ZeroVariance,
    #[error("image has no adjacent pixel pairs in that direction")]
    NoAdjacentPairs,
    #[error("sequence is empty")]
    EmptySequence,
    #[error("rectangle {x},{y},{w},{h} exceeds the {height}x{width} image")]
    OutOfBounds {
        x: usize,
        y: usize,
        w: usize,
        h: usize,
        height: usize,
        width: usize,
    },
    #[error("unsupported image format: {0}")]
    UnsupportedFormat(String),
    #[error("image data truncated: expected {expected} bytes, found {found}")]
    TruncatedData { expected: usize, found: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
