//! RGB8 images, color conversion, PPM I/O and synthetic transfer stains.
//!
//! Storage uses image coordinates (x right, y down). Angles that cross the
//! public API are in the math convention (counter-clockwise from +x, y up).

mod color;
pub mod dataset;
mod ppm;
mod stroke;

pub use color::{rgb_to_hsv, HsvPixel, Rgb};
pub use ppm::{decode_ppm, encode_ppm, read_image, write_image, PpmError};
pub use stroke::{generate_smear, Continuity, StampShape, StrokeSpec};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum RasterError {
    #[error("raster dimensions must be at least 1x1, got {width}x{height}")]
    InvalidDimensions { width: usize, height: usize },
    #[error("pixel buffer holds {actual} bytes, expected {expected}")]
    BufferLength { expected: usize, actual: usize },
    #[error("invalid stroke: {0}")]
    InvalidStroke(String),
    #[error("stamp {stamp_index} of the stroke leaves the canvas")]
    StrokeOutOfBounds { stamp_index: usize },
    #[error("canvas must be uniform white")]
    CanvasNotWhite,
}

/// Owned row-major RGB8 image.
#[derive(Clone, PartialEq, Eq)]
pub struct Raster {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl std::fmt::Debug for Raster {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Raster").field("width", &self.width).field("height", &self.height).finish_non_exhaustive()
    }
}

impl Raster {
    pub fn new(width: usize, height: usize, fill: Rgb) -> Result<Self, RasterError> {
        if width == 0 || height == 0 {
            return Err(RasterError::InvalidDimensions { width, height });
        }
        let mut pixels = Vec::with_capacity(width * height * 3);
        for _ in 0..width * height {
            pixels.extend_from_slice(&fill);
        }
        Ok(Self { width, height, pixels })
    }

    pub fn white(width: usize, height: usize) -> Result<Self, RasterError> {
        Self::new(width, height, [255, 255, 255])
    }

    pub fn from_raw(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self, RasterError> {
        if width == 0 || height == 0 {
            return Err(RasterError::InvalidDimensions { width, height });
        }
        let expected = width * height * 3;
        if pixels.len() != expected {
            return Err(RasterError::BufferLength { expected, actual: pixels.len() });
        }
        Ok(Self { width, height, pixels })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.pixels
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.pixels
    }

    /// Pixel at column `x`, row `y`. Panics when out of bounds.
    pub fn pixel(&self, x: usize, y: usize) -> Rgb {
        let i = self.index(x, y);
        [self.pixels[i], self.pixels[i + 1], self.pixels[i + 2]]
    }

    pub fn set_pixel(&mut self, x: usize, y: usize, rgb: Rgb) {
        let i = self.index(x, y);
        self.pixels[i..i + 3].copy_from_slice(&rgb);
    }

    pub fn pixels(&self) -> impl Iterator<Item = Rgb> + '_ {
        self.pixels.chunks_exact(3).map(|c| [c[0], c[1], c[2]])
    }

    fn index(&self, x: usize, y: usize) -> usize {
        assert!(x < self.width && y < self.height, "pixel ({x}, {y}) out of bounds");
        (y * self.width + x) * 3
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn buffer_length_invariant() {
        let r = Raster::white(4, 3).unwrap();
        assert_eq!(r.as_bytes().len(), 36);
        assert!(r.pixels().all(|p| p == [255, 255, 255]));
        assert_eq!(Raster::from_raw(2, 2, vec![0; 11]), Err(RasterError::BufferLength { expected: 12, actual: 11 }));
        assert!(matches!(Raster::white(0, 5), Err(RasterError::InvalidDimensions { .. })));
    }

    #[test]
    fn set_and_get() {
        let mut r = Raster::white(3, 2).unwrap();
        r.set_pixel(2, 1, [1, 2, 3]);
        assert_eq!(r.pixel(2, 1), [1, 2, 3]);
        assert_eq!(&r.as_bytes()[15..18], &[1, 2, 3]);
    }
}
