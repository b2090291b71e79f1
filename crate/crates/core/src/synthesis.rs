//! Synthetic scenes with known temperature fields.
//!
//! A scene is rendered by inverting the linear calibration into the red
//! channel (green and blue stay 0), so running the estimation pipeline on
//! the rendered image must reproduce the field to within half a temperature
//! quantum, `(t_high - t_low) / 510`.
//!
//! Random fields come from `ChaCha8Rng::seed_from_u64(seed)`, whose output
//! stream is fixed across platforms.
//!
//! # Scene file format
//!
//! Plain UTF-8 text, one header key per line, then `height` rows of `width`
//! space-separated values in °C:
//!
//! ```text
//! thermoscope-scene 1
//! width 3
//! height 2
//! t_low 30
//! t_high 40
//! seed 42
//! 30 31.5 33
//! 35 38.25 40
//! ```
//!
//! Values are written in shortest round-trip decimal form, so a written
//! scene parses back bit-exactly.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::estimation::{temperature_map, CalibrationRange, EstimationError};
use crate::imaging::{intensity_extent, red_channel, ImageError, Raster, Rgb, RgbImage};

/// Added to the half-quantum bound to absorb floating-point rounding.
pub const FLOAT_SLACK: f64 = 1e-9;

const MAGIC: &str = "thermoscope-scene 1";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SynthesisError {
    #[error(transparent)]
    Calibration(#[from] EstimationError),
    #[error(transparent)]
    Image(#[from] ImageError),
    #[error("scene needs at least 2 pixels, got {width}x{height}")]
    TooSmall { width: usize, height: usize },
    #[error("field value {value} at ({x}, {y}) is outside [{t_low}, {t_high}]")]
    OutOfRange {
        x: usize,
        y: usize,
        value: f64,
        t_low: f64,
        t_high: f64,
    },
    #[error("field must contain both calibration endpoints exactly (min {min}, max {max})")]
    MissingEndpoints { min: f64, max: f64 },
    #[error("scene file line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, SynthesisError>;

/// Shape of a generated field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SceneKind {
    /// Independent uniform values per pixel.
    #[default]
    Noise,
    /// A few smooth warm spots over a cool background.
    Hotspots,
}

impl std::str::FromStr for SceneKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "noise" => Ok(SceneKind::Noise),
            "hotspots" => Ok(SceneKind::Hotspots),
            other => Err(format!("unknown scene kind {other:?} (expected noise or hotspots)")),
        }
    }
}

/// Ground-truth temperature field plus the calibration used to render it.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticScene {
    field: Raster<f64>,
    cal: CalibrationRange,
    seed: u64,
}

impl SyntheticScene {
    /// Wraps an explicit field. Every value must lie in the calibration range
    /// and both endpoints must occur.
    pub fn from_field(field: Raster<f64>, cal: CalibrationRange, seed: u64) -> Result<Self> {
        if field.len() < 2 {
            return Err(SynthesisError::TooSmall {
                width: field.width(),
                height: field.height(),
            });
        }
        let (mut min, mut max) = (f64::INFINITY, f64::NEG_INFINITY);
        for (i, &v) in field.pixels().iter().enumerate() {
            if !(cal.t_low()..=cal.t_high()).contains(&v) {
                return Err(SynthesisError::OutOfRange {
                    x: i % field.width(),
                    y: i / field.width(),
                    value: v,
                    t_low: cal.t_low(),
                    t_high: cal.t_high(),
                });
            }
            min = min.min(v);
            max = max.max(v);
        }
        if min != cal.t_low() || max != cal.t_high() {
            return Err(SynthesisError::MissingEndpoints { min, max });
        }
        Ok(SyntheticScene { field, cal, seed })
    }

    pub fn generate(kind: SceneKind, width: usize, height: usize, cal: CalibrationRange, seed: u64) -> Result<Self> {
        let n = width.checked_mul(height).unwrap_or(0);
        if n < 2 {
            return Err(SynthesisError::TooSmall { width, height });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut values = match kind {
            SceneKind::Noise => (0..n).map(|_| rng.random::<f64>()).collect::<Vec<_>>(),
            SceneKind::Hotspots => hotspots(width, height, &mut rng),
        };
        let mut cold = 0;
        let mut hot = n - 1;
        for (i, &v) in values.iter().enumerate() {
            if v < values[cold] {
                cold = i;
            }
            if v > values[hot] {
                hot = i;
            }
        }
        if cold == hot {
            (cold, hot) = (0, n - 1);
        }
        let (lo, hi) = (values[cold], values[hot]);
        let range = if hi > lo { hi - lo } else { 1.0 };
        for v in &mut values {
            *v = (cal.t_low() + cal.span() * ((*v - lo) / range)).clamp(cal.t_low(), cal.t_high());
        }
        // the coldest and hottest pixels land exactly on the endpoints
        values[cold] = cal.t_low();
        values[hot] = cal.t_high();
        let field = Raster::new(width, height, values)?;
        Ok(SyntheticScene { field, cal, seed })
    }

    pub fn field(&self) -> &Raster<f64> {
        &self.field
    }

    pub fn calibration(&self) -> CalibrationRange {
        self.cal
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn width(&self) -> usize {
        self.field.width()
    }

    pub fn height(&self) -> usize {
        self.field.height()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{MAGIC}");
        let _ = writeln!(out, "width {}", self.width());
        let _ = writeln!(out, "height {}", self.height());
        let _ = writeln!(out, "t_low {}", self.cal.t_low());
        let _ = writeln!(out, "t_high {}", self.cal.t_high());
        let _ = writeln!(out, "seed {}", self.seed);
        for row in self.field.rows() {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let mut next = |what: &str| {
            lines.next().ok_or_else(|| SynthesisError::Parse {
                line: 0,
                reason: format!("unexpected end of file, expected {what}"),
            })
        };
        let (line, magic) = next("header")?;
        if magic != MAGIC {
            return Err(SynthesisError::Parse {
                line,
                reason: format!("expected {MAGIC:?}"),
            });
        }
        fn keyed<T: std::str::FromStr>((line, text): (usize, &str), key: &str) -> Result<T> {
            text.strip_prefix(key)
                .and_then(|rest| rest.strip_prefix(' '))
                .and_then(|v| v.trim().parse().ok())
                .ok_or_else(|| SynthesisError::Parse {
                    line,
                    reason: format!("expected `{key} <value>`"),
                })
        }
        let width: usize = keyed(next("width")?, "width")?;
        let height: usize = keyed(next("height")?, "height")?;
        let t_low: f64 = keyed(next("t_low")?, "t_low")?;
        let t_high: f64 = keyed(next("t_high")?, "t_high")?;
        let seed: u64 = keyed(next("seed")?, "seed")?;
        let cal = CalibrationRange::new(t_low, t_high)?;

        let mut values = Vec::with_capacity(width.saturating_mul(height));
        for _ in 0..height {
            let (line, row) = next("field row")?;
            let parsed = row
                .split_ascii_whitespace()
                .map(str::parse::<f64>)
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| SynthesisError::Parse {
                    line,
                    reason: e.to_string(),
                })?;
            if parsed.len() != width {
                return Err(SynthesisError::Parse {
                    line,
                    reason: format!("expected {width} values, found {}", parsed.len()),
                });
            }
            values.extend(parsed);
        }
        if let Some((line, extra)) = lines.find(|(_, l)| !l.is_empty()) {
            return Err(SynthesisError::Parse {
                line,
                reason: format!("unexpected trailing content {extra:?}"),
            });
        }
        SyntheticScene::from_field(Raster::new(width, height, values)?, cal, seed)
    }
}

// Sum of 3-6 Gaussian bumps over a gentle horizontal gradient.
fn hotspots(width: usize, height: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let count = rng.random_range(3..=6);
    let scale = width.max(height) as f64;
    let bumps: Vec<(f64, f64, f64, f64)> = (0..count)
        .map(|_| {
            let cx = rng.random::<f64>() * width as f64;
            let cy = rng.random::<f64>() * height as f64;
            let radius = scale * (0.08 + 0.2 * rng.random::<f64>());
            let amp = 0.4 + 0.6 * rng.random::<f64>();
            (cx, cy, radius, amp)
        })
        .collect();
    let mut out = Vec::with_capacity(width * height);
    for y in 0..height {
        for x in 0..width {
            let base = 0.15 * x as f64 / scale;
            let heat: f64 = bumps
                .iter()
                .map(|&(cx, cy, r, a)| {
                    let d2 = (x as f64 + 0.5 - cx).powi(2) + (y as f64 + 0.5 - cy).powi(2);
                    a * (-d2 / (2.0 * r * r)).exp()
                })
                .sum();
            out.push(base + heat);
        }
    }
    out
}

/// Red intensity for a field value: round-half-up of the inverse calibration.
pub fn render_intensity(value: f64, cal: CalibrationRange) -> u8 {
    let scaled = 255.0 * ((value - cal.t_low()) / cal.span());
    (scaled + 0.5).floor().clamp(0.0, 255.0) as u8
}

pub fn render(scene: &SyntheticScene) -> RgbImage {
    scene.field.map(|t| Rgb::new(render_intensity(t, scene.cal), 0, 0))
}

/// Worst-case round-trip error allowed by 8-bit quantization, before slack.
pub fn round_trip_bound(cal: CalibrationRange) -> f64 {
    cal.half_quantum()
}

/// Runs render, red channel, extent and temperature map, and returns the
/// largest absolute deviation from the ground-truth field.
pub fn round_trip_error(scene: &SyntheticScene) -> Result<f64> {
    let gray = red_channel(&render(scene));
    let extent = intensity_extent(&gray)?;
    let map = temperature_map(&gray, scene.cal, extent)?;
    Ok(map
        .values()
        .pixels()
        .iter()
        .zip(scene.field.pixels())
        .map(|(est, truth)| (est - truth).abs())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimation::pixel_temperature;
    use crate::imaging::IntensityExtent;
    use proptest::prelude::*;

    fn cal(lo: f64, hi: f64) -> CalibrationRange {
        CalibrationRange::new(lo, hi).unwrap()
    }

    #[test]
    fn render_endpoints_and_midpoint() {
        let c = cal(30.0, 40.0);
        assert_eq!(render_intensity(30.0, c), 0);
        assert_eq!(render_intensity(40.0, c), 255);
        assert_eq!(render_intensity(35.0, c), 128);
    }

    #[test]
    fn render_is_red_only() {
        let s = SyntheticScene::generate(SceneKind::Hotspots, 20, 10, cal(30.0, 40.0), 3).unwrap();
        let img = render(&s);
        assert!(img.pixels().iter().all(|p| p.g == 0 && p.b == 0));
        let e = intensity_extent(&red_channel(&img)).unwrap();
        assert_eq!(e, IntensityExtent { i_min: 0, i_max: 255 });
    }

    #[test]
    fn render_matches_scalar_arithmetic() {
        let c = cal(-12.5, 61.0);
        let s = SyntheticScene::generate(SceneKind::Noise, 32, 32, c, 9).unwrap();
        let img = render(&s);
        for (p, &t) in img.pixels().iter().zip(s.field().pixels()) {
            let expect = (255.0 * (t - c.t_low()) / (c.t_high() - c.t_low()) + 0.5).floor();
            assert!((f64::from(p.r) - expect).abs() <= 1.0);
            // exact unless the scaled value sits within float noise of a half step
            let frac = (255.0 * (t - c.t_low()) / c.span()).fract();
            if (frac - 0.5).abs() > 1e-9 {
                assert_eq!(f64::from(p.r), expect);
            }
        }
    }

    #[test]
    fn quantized_field_round_trips_exactly() {
        let c = cal(30.0, 40.0);
        let full = IntensityExtent { i_min: 0, i_max: 255 };
        let field = Raster::from_fn(16, 16, |x, y| pixel_temperature((y * 16 + x) as u8, full, c).unwrap());
        let s = SyntheticScene::from_field(field, c, 0).unwrap();
        assert_eq!(round_trip_error(&s).unwrap(), 0.0);
    }

    #[test]
    fn noise_within_half_quantum() {
        let c = cal(30.0, 40.0);
        let s = SyntheticScene::generate(SceneKind::Noise, 40, 30, c, 1).unwrap();
        let err = round_trip_error(&s).unwrap();
        assert!(err <= 0.5 * 10.0 / 255.0 + FLOAT_SLACK, "{err}");
        assert!(err > 0.0);
    }

    #[test]
    fn generation_is_deterministic() {
        let c = cal(30.0, 40.0);
        for kind in [SceneKind::Noise, SceneKind::Hotspots] {
            let a = SyntheticScene::generate(kind, 64, 64, c, 42).unwrap();
            let b = SyntheticScene::generate(kind, 64, 64, c, 42).unwrap();
            assert_eq!(a, b);
            assert_eq!(render(&a), render(&b));
            let other = SyntheticScene::generate(kind, 64, 64, c, 43).unwrap();
            assert_ne!(a.field(), other.field());
        }
    }

    #[test]
    fn construction_errors() {
        let c = cal(0.0, 1.0);
        assert!(matches!(
            SyntheticScene::generate(SceneKind::Noise, 1, 1, c, 0),
            Err(SynthesisError::TooSmall { .. })
        ));
        let f = Raster::new(2, 1, vec![0.0, 2.0]).unwrap();
        assert!(matches!(
            SyntheticScene::from_field(f, c, 0),
            Err(SynthesisError::OutOfRange { x: 1, y: 0, .. })
        ));
        let f = Raster::new(2, 1, vec![0.0, 0.5]).unwrap();
        assert!(matches!(
            SyntheticScene::from_field(f, c, 0),
            Err(SynthesisError::MissingEndpoints { .. })
        ));
    }

    #[test]
    fn text_round_trip() {
        let s = SyntheticScene::generate(SceneKind::Hotspots, 7, 5, cal(-3.25, 101.0), 77).unwrap();
        let text = s.to_text();
        assert!(text.starts_with("thermoscope-scene 1\nwidth 7\nheight 5\nt_low -3.25\nt_high 101\nseed 77\n"));
        assert_eq!(SyntheticScene::from_text(&text).unwrap(), s);
    }

    #[test]
    fn text_example_parses() {
        let text = "thermoscope-scene 1\nwidth 3\nheight 2\nt_low 30\nt_high 40\nseed 42\n30 31.5 33\n35 38.25 40\n";
        let s = SyntheticScene::from_text(text).unwrap();
        assert_eq!(s.field().get(1, 1), 38.25);
        assert_eq!(s.seed(), 42);
    }

    #[test]
    fn text_errors() {
        let bad = [
            ("", 0),
            ("nope\n", 1),
            ("thermoscope-scene 1\nwidth x\n", 2),
            (
                "thermoscope-scene 1\nwidth 2\nheight 1\nt_low 0\nt_high 1\nseed 0\n0 1 1\n",
                7,
            ),
            (
                "thermoscope-scene 1\nwidth 2\nheight 1\nt_low 0\nt_high 1\nseed 0\n0 q\n",
                7,
            ),
            (
                "thermoscope-scene 1\nwidth 2\nheight 1\nt_low 0\nt_high 1\nseed 0\n0 1\nextra\n",
                8,
            ),
        ];
        for (text, line) in bad {
            match SyntheticScene::from_text(text) {
                Err(SynthesisError::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        let degenerate = "thermoscope-scene 1\nwidth 2\nheight 1\nt_low 1\nt_high 1\nseed 0\n1 1\n";
        assert!(matches!(
            SyntheticScene::from_text(degenerate),
            Err(SynthesisError::Calibration(EstimationError::InvalidCalibration { .. }))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn half_quantum_bound(
            seed in any::<u64>(), w in 1usize..48, h in 2usize..48,
            t_low in -20.0f64..90.0, span in 0.1f64..120.0, hot in any::<bool>(),
        ) {
            let c = cal(t_low, t_low + span);
            let kind = if hot { SceneKind::Hotspots } else { SceneKind::Noise };
            let s = SyntheticScene::generate(kind, w, h, c, seed).unwrap();
            let err = round_trip_error(&s).unwrap();
            prop_assert!(err <= c.span() / 510.0 + FLOAT_SLACK, "{} > {}", err, c.span() / 510.0);
            prop_assert_eq!(render(&s), render(&s.clone()));
        }
    }
}
