//! Jet pseudocolor rendering of an intensity field.

use crate::imaging::{GrayImage, Rgb, RgbImage};

/// One anchor of a piecewise-linear colormap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColorStop {
    pub position: f64,
    pub color: [f64; 3],
}

const fn stop(position: f64, r: f64, g: f64, b: f64) -> ColorStop {
    ColorStop {
        position,
        color: [r, g, b],
    }
}

/// Dark blue, blue, cyan, yellow, red, dark red.
pub const JET_STOPS: [ColorStop; 6] = [
    stop(0.0, 0.0, 0.0, 0.5),
    stop(0.125, 0.0, 0.0, 1.0),
    stop(0.375, 0.0, 1.0, 1.0),
    stop(0.625, 1.0, 1.0, 0.0),
    stop(0.875, 1.0, 0.0, 0.0),
    stop(1.0, 0.5, 0.0, 0.0),
];

// Interpolation runs on the 0..=255 scale. Every stop position is a multiple
// of 1/8, so 255 * position and the per-segment division are exact and an
// integer intensity lands on its exact rational colour.
fn jet_scaled(x: f64) -> [f64; 3] {
    let x = x.clamp(0.0, 255.0);
    let seg = JET_STOPS
        .windows(2)
        .find(|w| x <= 255.0 * w[1].position)
        .unwrap_or(&JET_STOPS[4..]);
    let (lo, hi) = (seg[0], seg[1]);
    let offset = (x - 255.0 * lo.position) / (hi.position - lo.position);
    std::array::from_fn(|c| 255.0 * lo.color[c] + (hi.color[c] - lo.color[c]) * offset)
}

/// Jet colour for a normalized intensity. Inputs outside `[0, 1]` (and NaN,
/// treated as 0) are clamped.
pub fn jet(u: f64) -> [f64; 3] {
    let u = if u.is_nan() { 0.0 } else { u };
    jet_scaled(255.0 * u.clamp(0.0, 1.0)).map(|v| v / 255.0)
}

/// Round-half-up of `v * 255`, saturating to `0..=255`.
pub fn quantize(v: f64) -> u8 {
    (v * 255.0 + 0.5).floor().clamp(0.0, 255.0) as u8
}

fn quantize_scaled(v: f64) -> u8 {
    (v + 0.5).floor().clamp(0.0, 255.0) as u8
}

/// The 256-entry lookup table used by [`pseudocolor`].
pub fn jet_lut() -> [Rgb; 256] {
    std::array::from_fn(|i| {
        let [r, g, b] = jet_scaled(i as f64).map(quantize_scaled);
        Rgb::new(r, g, b)
    })
}

pub fn pseudocolor(img: &GrayImage) -> RgbImage {
    let lut = jet_lut();
    img.map(|i| lut[usize::from(i)])
}

/// Horizontal colour bar, intensity 0 on the left and 255 on the right.
pub fn legend_strip(width: usize, height: usize) -> RgbImage {
    let lut = jet_lut();
    let span = width.saturating_sub(1).max(1);
    RgbImage::from_fn(width, height, |x, _| lut[(x * 255 + span / 2) / span])
}
