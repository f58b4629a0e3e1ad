//! Plaintext-dependent key schedule.
//!
//! The SHA-256 digest of the plaintext pixels is split into eight big-endian
//! 32-bit words `w0..w7`, and the map parameters are
//!
//! ```text
//! α = w0 ⊕ w1    β = w2 ⊕ w3    x₀ = 1 / ((w4 ⊕ w5) + 1)    y₀ = 1 / ((w6 ⊕ w7) + 1)
//! ```
//!
//! The key file stores only the digest, as 64 lowercase hex characters and a
//! newline; the parameters are always re-derived.

use std::fmt;

use sha2::{Digest as _, Sha256};

use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::ra_map::{MapParams, DEFAULT_BIAS};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Digest(pub [u8; 32]);

impl Digest {
    /// The eight big-endian words in digest order.
    pub fn words(&self) -> [u32; 8] {
        let mut w = [0u32; 8];
        for (word, chunk) in w.iter_mut().zip(self.0.chunks_exact(4)) {
            *word = u32::from_be_bytes(chunk.try_into().expect("4-byte chunk"));
        }
        w
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(hex: &str) -> Result<Self> {
        if hex.len() != 64 {
            return Err(Error::MalformedKey(format!(
                "expected 64 hex characters, found {}",
                hex.len()
            )));
        }
        let mut bytes = [0u8; 32];
        for (i, pair) in hex.as_bytes().chunks_exact(2).enumerate() {
            bytes[i] = (nibble(pair[0])? << 4) | nibble(pair[1])?;
        }
        Ok(Self(bytes))
    }
}

fn nibble(c: u8) -> Result<u8> {
    match c {
        b'0'..=b'9' => Ok(c - b'0'),
        b'a'..=b'f' => Ok(c - b'a' + 10),
        _ => Err(Error::MalformedKey(format!(
            "invalid character {:?}",
            char::from(c)
        ))),
    }
}

impl fmt::Debug for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digest({})", self.to_hex())
    }
}

impl fmt::Display for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeyMaterial {
    pub digest: Digest,
    pub derived: MapParams,
}

impl KeyMaterial {
    pub fn from_digest(digest: Digest) -> Self {
        Self {
            digest,
            derived: derive_params(&digest),
        }
    }

    pub fn from_image(image: &GrayImage) -> Self {
        Self::from_digest(hash_image(image))
    }
}

/// SHA-256 of the row-major pixel bytes, without any header.
pub fn hash_image(image: &GrayImage) -> Digest {
    Digest(Sha256::digest(image.pixels()).into())
}

pub fn derive_params(digest: &Digest) -> MapParams {
    let w = digest.words();
    let inv = |a: u32, b: u32| 1.0 / (f64::from(a ^ b) + 1.0);
    MapParams {
        alpha: w[0] ^ w[1],
        beta: w[2] ^ w[3],
        bias: DEFAULT_BIAS,
        x_init: inv(w[4], w[5]),
        y_init: inv(w[6], w[7]),
    }
}

pub fn format_key(key: &KeyMaterial) -> String {
    format!("{}\n", key.digest.to_hex())
}

pub fn parse_key(text: &str) -> Result<KeyMaterial> {
    let hex = text.strip_suffix('\n').unwrap_or(text);
    Digest::from_hex(hex).map(KeyMaterial::from_digest)
}
