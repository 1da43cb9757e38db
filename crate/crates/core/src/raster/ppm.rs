//! Binary PPM (P6, maxval 255).

use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

use super::Raster;

#[derive(Debug, Error)]
pub enum PpmError {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("malformed PPM header: {0}")]
    MalformedHeader(String),
    #[error("truncated PPM payload: expected {expected} bytes, found {actual}")]
    Truncated { expected: usize, actual: usize },
    #[error("unsupported PPM maxval {0} (only 255 is supported)")]
    UnsupportedMaxval(u64),
}

struct HeaderCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl HeaderCursor<'_> {
    fn skip_whitespace_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u64, PpmError> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(PpmError::MalformedHeader(format!("expected {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| PpmError::MalformedHeader(format!("{what} out of range")))
    }
}

pub fn decode_ppm(bytes: &[u8]) -> Result<Raster, PpmError> {
    if bytes.len() < 2 || &bytes[..2] != b"P6" {
        return Err(PpmError::MalformedHeader("missing P6 magic".into()));
    }
    let mut cur = HeaderCursor { bytes, pos: 2 };
    if !cur.bytes.get(2).is_some_and(|b| b.is_ascii_whitespace() || *b == b'#') {
        return Err(PpmError::MalformedHeader("missing P6 magic".into()));
    }
    let width = cur.number("width")?;
    let height = cur.number("height")?;
    let maxval = cur.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(PpmError::MalformedHeader(format!("zero dimension {width}x{height}")));
    }
    if maxval != 255 {
        return Err(PpmError::UnsupportedMaxval(maxval));
    }
    // exactly one whitespace byte separates the header from the raster
    match bytes.get(cur.pos) {
        Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
        _ => return Err(PpmError::MalformedHeader("missing separator after maxval".into())),
    }
    let expected = usize::try_from(width)
        .ok()
        .zip(usize::try_from(height).ok())
        .and_then(|(w, h)| w.checked_mul(h)?.checked_mul(3))
        .ok_or_else(|| PpmError::MalformedHeader("dimensions overflow".into()))?;
    let payload = &bytes[cur.pos..];
    if payload.len() < expected {
        return Err(PpmError::Truncated { expected, actual: payload.len() });
    }
    Raster::from_raw(width as usize, height as usize, payload[..expected].to_vec())
        .map_err(|e| PpmError::MalformedHeader(e.to_string()))
}

pub fn encode_ppm(raster: &Raster) -> Vec<u8> {
    let header = format!("P6\n{} {}\n255\n", raster.width(), raster.height());
    let mut out = Vec::with_capacity(header.len() + raster.as_bytes().len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(raster.as_bytes());
    out
}

pub fn read_image(path: impl AsRef<Path>) -> Result<Raster, PpmError> {
    decode_ppm(&fs::read(path)?)
}

pub fn write_image(raster: &Raster, path: impl AsRef<Path>) -> Result<(), PpmError> {
    fs::write(path, encode_ppm(raster))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_by_two() -> Raster {
        Raster::from_raw(2, 2, (0..12).map(|v| v * 20).collect()).unwrap()
    }

    #[test]
    fn header_definition() {
        let mut bytes = b"P6\n2 2\n255\n".to_vec();
        bytes.extend(0..12u8);
        let r = decode_ppm(&bytes).unwrap();
        assert_eq!((r.width(), r.height()), (2, 2));
        assert_eq!(r.pixel(1, 1), [9, 10, 11]);
    }

    #[test]
    fn comments_and_whitespace_in_header() {
        let mut bytes = b"P6 # made by hand\n  2\t2 # dims\n255\n".to_vec();
        bytes.extend(0..12u8);
        assert_eq!(decode_ppm(&bytes).unwrap().pixel(0, 0), [0, 1, 2]);
    }

    #[test]
    fn file_round_trip_is_bit_identical() {
        let dir = std::env::temp_dir().join(format!("dronecsa-ppm-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("rt.ppm");
        let r = two_by_two();
        write_image(&r, &path).unwrap();
        let back = read_image(&path).unwrap();
        assert_eq!(back, r);
        assert_eq!(std::fs::read(&path).unwrap(), encode_ppm(&back));
        std::fs::remove_dir_all(dir).ok();
    }

    #[test]
    fn distinct_errors() {
        let mut wide = b"P6\n2 2\n65535\n".to_vec();
        wide.extend([0u8; 24]);
        assert!(matches!(decode_ppm(&wide), Err(PpmError::UnsupportedMaxval(65535))));

        let mut short = b"P6\n2 2\n255\n".to_vec();
        short.extend([0u8; 7]);
        assert!(matches!(decode_ppm(&short), Err(PpmError::Truncated { expected: 12, actual: 7 })));

        assert!(matches!(decode_ppm(b"P3\n2 2\n255\n"), Err(PpmError::MalformedHeader(_))));
        assert!(matches!(decode_ppm(b"P6\n2 x\n255\n"), Err(PpmError::MalformedHeader(_))));
        assert!(matches!(decode_ppm(b"P6\n0 2\n255\n"), Err(PpmError::MalformedHeader(_))));
        assert!(matches!(decode_ppm(b""), Err(PpmError::MalformedHeader(_))));
        assert!(matches!(read_image("/nonexistent/x.ppm"), Err(PpmError::Io(_))));
    }
}
