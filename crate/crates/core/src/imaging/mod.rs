//! Raster data model and the preprocessing chain: red-channel projection,
//! rectangular crops and intensity extents.

mod codec;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use codec::{decode, encode, sniff_format, DecodeError, ImageFormat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ImageError {
    #[error("pixel buffer holds {actual} values but {width}x{height} needs {expected}")]
    BufferSize {
        width: usize,
        height: usize,
        expected: usize,
        actual: usize,
    },
    #[error("roi {roi} exceeds the {edge} edge of a {width}x{height} image")]
    RoiOutOfBounds {
        roi: Roi,
        edge: Edge,
        width: usize,
        height: usize,
    },
    #[error("image has no pixels")]
    Empty,
}

/// Image edge violated by an out-of-bounds [`Roi`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Edge {
    Right,
    Bottom,
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Edge::Right => "right",
            Edge::Bottom => "bottom",
        })
    }
}

/// 8-bit RGB pixel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rgb {
    pub r: u8,
    pub g: u8,
    pub b: u8,
}

impl Rgb {
    pub const fn new(r: u8, g: u8, b: u8) -> Self {
        Rgb { r, g, b }
    }
}

/// Row-major 2-D grid of pixels.
#[derive(Debug, Clone, PartialEq)]
pub struct Raster<P> {
    width: usize,
    height: usize,
    pixels: Vec<P>,
}

pub type RgbImage = Raster<Rgb>;
pub type GrayImage = Raster<u8>;

impl<P: Copy> Raster<P> {
    pub fn new(width: usize, height: usize, pixels: Vec<P>) -> Result<Self, ImageError> {
        let expected = width.saturating_mul(height);
        if pixels.len() != expected {
            return Err(ImageError::BufferSize {
                width,
                height,
                expected,
                actual: pixels.len(),
            });
        }
        Ok(Raster { width, height, pixels })
    }

    pub fn filled(width: usize, height: usize, value: P) -> Self {
        Raster {
            width,
            height,
            pixels: vec![value; width * height],
        }
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> P) -> Self {
        let mut pixels = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Raster { width, height, pixels }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn pixels(&self) -> &[P] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<P> {
        self.pixels
    }

    /// Panics if `(x, y)` is outside the image.
    pub fn get(&self, x: usize, y: usize) -> P {
        assert!(
            x < self.width && y < self.height,
            "pixel ({x}, {y}) outside {}x{}",
            self.width,
            self.height
        );
        self.pixels[y * self.width + x]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[P]> {
        // chunks_exact panics on a zero chunk size
        self.pixels.chunks_exact(self.width.max(1))
    }

    pub fn map<Q>(&self, f: impl FnMut(P) -> Q) -> Raster<Q> {
        Raster {
            width: self.width,
            height: self.height,
            pixels: self.pixels.iter().copied().map(f).collect(),
        }
    }
}

/// Rectangular region: left column, top row, width, height.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Roi {
    pub x: usize,
    pub y: usize,
    pub w: usize,
    pub h: usize,
}

impl Roi {
    pub const fn new(x: usize, y: usize, w: usize, h: usize) -> Self {
        Roi { x, y, w, h }
    }

    pub fn full<P: Copy>(img: &Raster<P>) -> Self {
        Roi::new(0, 0, img.width(), img.height())
    }

    /// Checks that the region is non-empty and inside a `width`x`height` frame.
    pub fn check_within(&self, width: usize, height: usize) -> Result<(), ImageError> {
        let out = |edge| ImageError::RoiOutOfBounds {
            roi: *self,
            edge,
            width,
            height,
        };
        if self.w == 0 || self.x.checked_add(self.w).is_none_or(|right| right > width) {
            return Err(out(Edge::Right));
        }
        if self.h == 0 || self.y.checked_add(self.h).is_none_or(|bottom| bottom > height) {
            return Err(out(Edge::Bottom));
        }
        Ok(())
    }

    /// `inner` taken relative to this region's origin.
    pub fn compose(&self, inner: Roi) -> Roi {
        Roi::new(self.x + inner.x, self.y + inner.y, inner.w, inner.h)
    }
}

impl fmt::Display for Roi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.x, self.y, self.w, self.h)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("expected roi as x,y,w,h with w,h >= 1, got {0:?}")]
pub struct ParseRoiError(String);

impl FromStr for Roi {
    type Err = ParseRoiError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRoiError(s.to_owned());
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| err())?;
        match parts[..] {
            [x, y, w, h] if w > 0 && h > 0 => Ok(Roi::new(x, y, w, h)),
            _ => Err(err()),
        }
    }
}

/// Lowest and highest intensity present in an image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntensityExtent {
    pub i_min: u8,
    pub i_max: u8,
}

impl IntensityExtent {
    pub fn is_degenerate(&self) -> bool {
        self.i_min == self.i_max
    }

    pub fn contains(&self, i: u8) -> bool {
        (self.i_min..=self.i_max).contains(&i)
    }
}

/// Grayscale field made of the red channel, unweighted.
pub fn red_channel(img: &RgbImage) -> GrayImage {
    img.map(|p| p.r)
}

pub fn crop<P: Copy>(img: &Raster<P>, roi: Roi) -> Result<Raster<P>, ImageError> {
    roi.check_within(img.width, img.height)?;
    let mut pixels = Vec::with_capacity(roi.w * roi.h);
    for row in img.rows().skip(roi.y).take(roi.h) {
        pixels.extend_from_slice(&row[roi.x..roi.x + roi.w]);
    }
    Ok(Raster {
        width: roi.w,
        height: roi.h,
        pixels,
    })
}

pub fn intensity_extent(img: &GrayImage) -> Result<IntensityExtent, ImageError> {
    let mut it = img.pixels().iter().copied();
    let first = it.next().ok_or(ImageError::Empty)?;
    let (i_min, i_max) = it.fold((first, first), |(lo, hi), v| (lo.min(v), hi.max(v)));
    Ok(IntensityExtent { i_min, i_max })
}
