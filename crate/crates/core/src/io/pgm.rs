use std::path::Path;

use crate::error::{Error, Result};
use crate::image::GrayImage;

/// Parses a binary (P5) graymap with maxval 255. Header tokens may be
/// separated by any whitespace and interleaved with `#` comments; exactly
/// one whitespace byte separates the maxval from the raster.
pub fn read_pgm(bytes: &[u8]) -> Result<GrayImage> {
    if !bytes.starts_with(b"P5") {
        let magic = String::from_utf8_lossy(&bytes[..bytes.len().min(2)]).into_owned();
        return Err(Error::UnsupportedFormat(format!("magic {magic:?}, expected P5")));
    }
    let mut cursor = 2;
    let mut fields = [0usize; 3];
    for field in &mut fields {
        *field = next_header_number(bytes, &mut cursor)?;
    }
    let [width, height, maxval] = fields;
    if maxval != 255 {
        return Err(Error::UnsupportedFormat(format!("maxval {maxval}, expected 255")));
    }
    match bytes.get(cursor) {
        Some(b) if b.is_ascii_whitespace() => cursor += 1,
        _ => return Err(Error::UnsupportedFormat("missing whitespace after maxval".into())),
    }
    let expected = width
        .checked_mul(height)
        .ok_or_else(|| Error::UnsupportedFormat("dimensions overflow".into()))?;
    let raster = &bytes[cursor..];
    if raster.len() < expected {
        return Err(Error::TruncatedData {
            expected,
            found: raster.len(),
        });
    }
    GrayImage::new(height, width, raster[..expected].to_vec())
}

fn next_header_number(bytes: &[u8], cursor: &mut usize) -> Result<usize> {
    loop {
        match bytes.get(*cursor) {
            Some(b'#') => {
                while bytes.get(*cursor).is_some_and(|&b| b != b'\n') {
                    *cursor += 1;
                }
            }
            Some(b) if b.is_ascii_whitespace() => *cursor += 1,
            Some(_) => break,
            None => {
                return Err(Error::TruncatedData {
                    expected: *cursor + 1,
                    found: bytes.len(),
                })
            }
        }
    }
    let start = *cursor;
    while bytes.get(*cursor).is_some_and(u8::is_ascii_digit) {
        *cursor += 1;
    }
    std::str::from_utf8(&bytes[start..*cursor])
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::UnsupportedFormat("malformed PGM header".into()))
}

pub fn write_pgm(image: &GrayImage) -> Vec<u8> {
    let header = format!("P5\n{} {}\n255\n", image.width(), image.height());
    let mut out = Vec::with_capacity(header.len() + image.len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(image.pixels());
    out
}

pub fn save_pgm(image: &GrayImage, path: &Path) -> Result<()> {
    std::fs::write(path, write_pgm(image))?;
    Ok(())
}

/// Integer BT.601 luma, rounded down.
pub fn luma_bt601(r: u8, g: u8, b: u8) -> u8 {
    ((299 * u32::from(r) + 587 * u32::from(g) + 114 * u32::from(b)) / 1000) as u8
}

/// Loads a PGM file, or a PNG (by extension) converted with
/// [`luma_bt601`]. The conversion changes the pixel bytes, and so the key.
pub fn load_image(path: &Path) -> Result<GrayImage> {
    let is_png = path
        .extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("png"));
    if !is_png {
        return read_pgm(&std::fs::read(path)?);
    }
    let decoded = image::open(path)
        .map_err(|e| Error::UnsupportedFormat(format!("{}: {e}", path.display())))?
        .into_rgb8();
    let (w, h) = decoded.dimensions();
    let pixels = decoded
        .pixels()
        .map(|p| luma_bt601(p.0[0], p.0[1], p.0[2]))
        .collect();
    GrayImage::new(h as usize, w as usize, pixels)
}
