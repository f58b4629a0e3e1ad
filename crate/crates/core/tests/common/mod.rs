#![allow(dead_code)]

use std::path::PathBuf;

use ra_crypt::io::load_image;
use ra_crypt::GrayImage;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

/// 512×512 natural test images: a smooth one and a heavily textured one.
/// `RA_CRYPT_PEPPER` / `RA_CRYPT_BABOON` may point at other PGM or PNG files.
pub fn natural_images() -> Vec<(String, GrayImage)> {
    [("RA_CRYPT_PEPPER", "camera.pgm"), ("RA_CRYPT_BABOON", "grass.pgm")]
        .into_iter()
        .map(|(var, fallback)| {
            let path = std::env::var_os(var)
                .map(PathBuf::from)
                .unwrap_or_else(|| data_path(fallback));
            let img = load_image(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            (path.file_name().unwrap().to_string_lossy().into_owned(), img)
        })
        .collect()
}
