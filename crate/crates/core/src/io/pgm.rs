//! Binary PGM (P5) reading and writing, 8-bit grayscale.

use std::fs;
use std::path::Path;

use crate::dataset::GrayImage;
use crate::error::{Error, Result};

pub fn write_pgm(path: &Path, img: &GrayImage) -> Result<()> {
    let mut bytes = format!("P5\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    bytes.extend_from_slice(img.pixels());
    fs::write(path, bytes)?;
    Ok(())
}

pub fn read_pgm(path: &Path) -> Result<GrayImage> {
    let bytes = fs::read(path)?;
    let fail = |msg: &str| Error::FileFormat {
        path: path.to_path_buf(),
        msg: msg.to_string(),
    };

    let mut pos = 0usize;

    // header token reader: skips whitespace and '#' comment lines
    let mut next_token = |bytes: &[u8]| -> Result<String> {
        loop {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if pos < bytes.len() && bytes[pos] == b'#' {
                while pos < bytes.len() && bytes[pos] != b'\n' {
                    pos += 1;
                }
                continue;
            }
            break;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err(fail("truncated header"));
        }
        Ok(String::from_utf8_lossy(&bytes[start..pos]).into_owned())
    };

    if next_token(&bytes)? != "P5" {
        return Err(fail("not a binary PGM (P5) file"));
    }
    let width: usize = next_token(&bytes)?
        .parse()
        .map_err(|_| fail("bad width"))?;
    let height: usize = next_token(&bytes)?
        .parse()
        .map_err(|_| fail("bad height"))?;
    let maxval: u32 = next_token(&bytes)?
        .parse()
        .map_err(|_| fail("bad maxval"))?;
    if maxval == 0 || maxval > 255 {
        return Err(fail("maxval must be in 1..=255"));
    }

    // exactly one whitespace byte separates the header from the raster
    if pos >= bytes.len() || !bytes[pos].is_ascii_whitespace() {
        return Err(fail("missing raster separator"));
    }
    pos += 1;

    let expected = width * height;
    let raster = &bytes[pos..];
    if raster.len() < expected {
        return Err(fail("truncated raster"));
    }
    GrayImage::new(width, height, raster[..expected].to_vec())
}
