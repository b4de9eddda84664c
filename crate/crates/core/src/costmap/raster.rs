//! Grayscale rasters: binary PGM ("P5") input/output and bilinear lookup.

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

/// Row-major grid of values in `[0, 1]`. Row 0 is the top of the image.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid2D {
    width: usize,
    height: usize,
    values: Vec<f64>,
}

impl Grid2D {
    pub fn new(width: usize, height: usize, values: Vec<f64>) -> Result<Self> {
        if width < 2 || height < 2 {
            return Err(Error::Config(format!(
                "raster must be at least 2x2, got {width}x{height}"
            )));
        }
        if values.len() != width * height {
            return Err(Error::Config(format!(
                "raster of {width}x{height} needs {} values, got {}",
                width * height,
                values.len()
            )));
        }
        if let Some(v) = values
            .iter()
            .find(|v| !(v.is_finite() && (0.0..=1.0).contains(*v)))
        {
            return Err(Error::Config(format!("raster value {v} outside [0, 1]")));
        }
        Ok(Self {
            width,
            height,
            values,
        })
    }

    /// Samples `f(col, row)` at every pixel.
    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let mut values = Vec::with_capacity(width * height);
        for row in 0..height {
            for col in 0..width {
                values.push(f(col, row));
            }
        }
        Self::new(width, height, values)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn get(&self, col: usize, row: usize) -> f64 {
        self.values[row * self.width + col]
    }

    /// Bilinear interpolation at fractional pixel coordinates, clamped to the
    /// grid. `col` runs left to right, `row` top to bottom.
    pub fn bilinear(&self, col: f64, row: f64) -> f64 {
        let col = col.clamp(0.0, (self.width - 1) as f64);
        let row = row.clamp(0.0, (self.height - 1) as f64);
        let c0 = (col.floor() as usize).min(self.width - 2);
        let r0 = (row.floor() as usize).min(self.height - 2);
        let tc = col - c0 as f64;
        let tr = row - r0 as f64;
        let top = self.get(c0, r0) * (1.0 - tc) + self.get(c0 + 1, r0) * tc;
        let bottom = self.get(c0, r0 + 1) * (1.0 - tc) + self.get(c0 + 1, r0 + 1) * tc;
        top * (1.0 - tr) + bottom * tr
    }

    /// Parses an 8-bit binary PGM. Sample `v` maps to `v / maxval`.
    pub fn from_pgm(bytes: &[u8]) -> Result<Self> {
        let mut pos = 0;
        let magic = next_token(bytes, &mut pos)?;
        if magic != b"P5" {
            return Err(Error::Pgm(format!(
                "expected magic P5, found {:?}",
                String::from_utf8_lossy(magic)
            )));
        }
        let width = parse_header_int(bytes, &mut pos, "width")?;
        let height = parse_header_int(bytes, &mut pos, "height")?;
        let maxval = parse_header_int(bytes, &mut pos, "maxval")?;
        if maxval == 0 || maxval > 255 {
            return Err(Error::Pgm(format!("unsupported maxval {maxval}")));
        }
        // exactly one whitespace byte separates the header from the raster
        match bytes.get(pos) {
            Some(b) if b.is_ascii_whitespace() => pos += 1,
            _ => return Err(Error::Pgm("missing whitespace after header".into())),
        }
        let n = width
            .checked_mul(height)
            .ok_or_else(|| Error::Pgm("image too large".into()))?;
        let data = bytes.get(pos..pos + n).ok_or_else(|| {
            Error::Pgm(format!(
                "expected {n} raster bytes, found {}",
                bytes.len() - pos
            ))
        })?;
        let scale = maxval as f64;
        let values = data
            .iter()
            .map(|&v| {
                if v as usize > maxval {
                    Err(Error::Pgm(format!("sample {v} exceeds maxval {maxval}")))
                } else {
                    Ok(v as f64 / scale)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(width, height, values).map_err(|e| Error::Pgm(e.to_string()))
    }

    pub fn load_pgm(path: impl AsRef<Path>) -> Result<Self> {
        let bytes = std::fs::read(path)?;
        Self::from_pgm(&bytes)
    }

    /// Encodes as an 8-bit binary PGM, quantizing each value to `round(v * 255)`.
    pub fn to_pgm(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.values.len() + 32);
        write!(out, "P5\n{} {}\n255\n", self.width, self.height).expect("write to vec");
        out.extend(self.values.iter().map(|v| (v * 255.0).round() as u8));
        out
    }
}

fn skip_whitespace_and_comments(bytes: &[u8], pos: &mut usize) {
    while let Some(&b) = bytes.get(*pos) {
        if b.is_ascii_whitespace() {
            *pos += 1;
        } else if b == b'#' {
            while let Some(&c) = bytes.get(*pos) {
                *pos += 1;
                if c == b'\n' || c == b'\r' {
                    break;
                }
            }
        } else {
            break;
        }
    }
}

fn next_token<'a>(bytes: &'a [u8], pos: &mut usize) -> Result<&'a [u8]> {
    skip_whitespace_and_comments(bytes, pos);
    let start = *pos;
    while let Some(&b) = bytes.get(*pos) {
        if b.is_ascii_whitespace() || b == b'#' {
            break;
        }
        *pos += 1;
    }
    if start == *pos {
        return Err(Error::Pgm("truncated header".into()));
    }
    Ok(&bytes[start..*pos])
}

fn parse_header_int(bytes: &[u8], pos: &mut usize, what: &str) -> Result<usize> {
    let tok = next_token(bytes, pos)?;
    std::str::from_utf8(tok)
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .ok_or_else(|| Error::Pgm(format!("bad {what}: {:?}", String::from_utf8_lossy(tok))))
}
