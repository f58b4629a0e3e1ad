//! Encryption pipeline: plaintext digest → map parameters → chaotic stream →
//! self-adaptive diffusion → rank confusion.
//!
//! The stream is consumed in a fixed order: the first 256 values seed the
//! diffusion frequency table, the next `H·W` values define the permutation.
//! Because the parameters come from the plaintext digest, the key (digest)
//! has to travel with the ciphertext.

use crate::confusion::{confuse, rank_permutation, unconfuse, RankPermutation};
use crate::diffusion::{diffuse, undiffuse, LEVELS};
use crate::image::GrayImage;
use crate::key_schedule::{hash_image, KeyMaterial};
use crate::ra_map::{generate_stream, DEFAULT_WARMUP};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CipherOptions {
    /// Seed the diffusion frequency table from the stream instead of zeros.
    pub chaotic_init: bool,
    pub warmup: usize,
}

impl Default for CipherOptions {
    fn default() -> Self {
        Self {
            chaotic_init: true,
            warmup: DEFAULT_WARMUP,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CipherOutput {
    pub ciphertext: GrayImage,
    pub key: KeyMaterial,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decryption {
    pub image: GrayImage,
    /// Whether the recovered image hashes back to the key digest. A
    /// mismatch means a wrong key, a wrong option set or damaged ciphertext.
    pub verified: bool,
}

struct Keystream {
    diffusion_init: [f64; LEVELS],
    permutation: RankPermutation,
}

fn keystream(key: &KeyMaterial, pixels: usize, options: &CipherOptions) -> Keystream {
    let stream = generate_stream(&key.derived, options.warmup, LEVELS + pixels);
    let (head, tail) = stream.values().split_at(LEVELS);
    let diffusion_init = if options.chaotic_init {
        head.try_into().expect("stream head holds 256 values")
    } else {
        [0.0; LEVELS]
    };
    let permutation = rank_permutation(tail).expect("images have at least one pixel");
    Keystream {
        diffusion_init,
        permutation,
    }
}

pub fn encrypt(image: &GrayImage, options: &CipherOptions) -> CipherOutput {
    let key = KeyMaterial::from_digest(hash_image(image));
    let ks = keystream(&key, image.len(), options);
    let diffused = diffuse(image, &ks.diffusion_init);
    let ciphertext = confuse(&diffused, &ks.permutation).expect("permutation sized to image");
    CipherOutput { ciphertext, key }
}

pub fn decrypt(ciphertext: &GrayImage, key: &KeyMaterial, options: &CipherOptions) -> Decryption {
    let ks = keystream(key, ciphertext.len(), options);
    let diffused = unconfuse(ciphertext, &ks.permutation).expect("permutation sized to image");
    let image = undiffuse(&diffused, &ks.diffusion_init);
    let verified = hash_image(&image) == key.digest;
    Decryption { image, verified }
}

/// Round-trips a small built-in image. Used by the CLI before touching
/// files, since bit-exact decryption depends on the floating-point
/// behaviour of the build.
pub fn self_test() -> bool {
    let Ok(probe) = GrayImage::from_fn(24, 24, |i, j| ((i * 7 + j * 13) % 256) as u8) else {
        return false;
    };
    [true, false].into_iter().all(|chaotic_init| {
        let options = CipherOptions {
            chaotic_init,
            ..Default::default()
        };
        let out = encrypt(&probe, &options);
        let back = decrypt(&out.ciphertext, &out.key, &options);
        back.verified && back.image == probe
    })
}
