//! Linear intensity-to-temperature calibration, per-pixel temperature maps,
//! ROI aggregation and the validation accuracy metric.
//!
//! The calibration maps the intensity extent of a frame onto a temperature
//! span:
//!
//! ```text
//! T = t_low + (t_high - t_low) * (I - I_min) / (I_max - I_min)
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::imaging::{crop, GrayImage, ImageError, IntensityExtent, Raster, Roi};
use crate::radiometry::CELSIUS_OFFSET;

/// Calibration span used when the caller does not supply one.
pub const DEFAULT_CALIBRATION: CalibrationRange = CalibrationRange {
    t_low: 30.0,
    t_high: 40.0,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EstimationError {
    #[error("calibration range [{t_low}, {t_high}] °C is invalid: need t_low < t_high, both above absolute zero")]
    InvalidCalibration { t_low: f64, t_high: f64 },
    #[error("uniform-intensity image, calibration undefined (all pixels = {0})")]
    DegenerateExtent(u8),
    #[error("intensity {intensity} outside extent [{i_min}, {i_max}]")]
    IntensityOutOfRange { intensity: u8, i_min: u8, i_max: u8 },
    #[error("pixel ({x}, {y}) has intensity {intensity} outside extent [{i_min}, {i_max}]")]
    PixelOutOfRange {
        x: usize,
        y: usize,
        intensity: u8,
        i_min: u8,
        i_max: u8,
    },
    #[error(transparent)]
    Image(#[from] ImageError),
    #[error("at least one reference temperature is required")]
    NoReferences,
    #[error("accuracy is undefined for a mean reference of {0} °C (must be above 0 °C)")]
    MetricUndefined(f64),
}

pub type Result<T> = std::result::Result<T, EstimationError>;

/// Temperature span, in °C, mapped onto the intensity extent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CalibrationRange {
    t_low: f64,
    t_high: f64,
}

impl CalibrationRange {
    pub fn new(t_low: f64, t_high: f64) -> Result<Self> {
        let valid = t_low.is_finite() && t_high.is_finite() && t_low > -CELSIUS_OFFSET && t_low < t_high;
        if !valid {
            return Err(EstimationError::InvalidCalibration { t_low, t_high });
        }
        Ok(CalibrationRange { t_low, t_high })
    }

    pub fn t_low(&self) -> f64 {
        self.t_low
    }

    pub fn t_high(&self) -> f64 {
        self.t_high
    }

    pub fn span(&self) -> f64 {
        self.t_high - self.t_low
    }

    /// Largest error 8-bit quantization can introduce: half an intensity step.
    pub fn half_quantum(&self) -> f64 {
        self.span() / 510.0
    }
}

impl Default for CalibrationRange {
    fn default() -> Self {
        DEFAULT_CALIBRATION
    }
}

/// Temperature of a single intensity under `cal`, anchored on `extent`.
///
/// Exact at both endpoints and monotone non-decreasing in `intensity`.
pub fn pixel_temperature(intensity: u8, extent: IntensityExtent, cal: CalibrationRange) -> Result<f64> {
    if extent.is_degenerate() {
        return Err(EstimationError::DegenerateExtent(extent.i_min));
    }
    if !extent.contains(intensity) {
        return Err(EstimationError::IntensityOutOfRange {
            intensity,
            i_min: extent.i_min,
            i_max: extent.i_max,
        });
    }
    if intensity == extent.i_max {
        return Ok(cal.t_high);
    }
    let frac = f64::from(intensity - extent.i_min) / f64::from(extent.i_max - extent.i_min);
    Ok(lerp(cal.t_low, cal.t_high, frac))
}

// Monotone in `t`, exact at t = 0, and free of cancellation when the
// endpoints straddle zero.
fn lerp(a: f64, b: f64, t: f64) -> f64 {
    if (a <= 0.0 && b >= 0.0) || (a >= 0.0 && b <= 0.0) {
        t * b + (1.0 - t) * a
    } else {
        a + t * (b - a)
    }
}

/// Per-pixel temperatures in °C, with the calibration that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct TemperatureMap {
    values: Raster<f64>,
    cal: CalibrationRange,
}

impl TemperatureMap {
    pub fn width(&self) -> usize {
        self.values.width()
    }

    pub fn height(&self) -> usize {
        self.values.height()
    }

    pub fn calibration(&self) -> CalibrationRange {
        self.cal
    }

    pub fn values(&self) -> &Raster<f64> {
        &self.values
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.values.get(x, y)
    }
}

pub fn temperature_map(img: &GrayImage, cal: CalibrationRange, extent: IntensityExtent) -> Result<TemperatureMap> {
    if extent.is_degenerate() {
        return Err(EstimationError::DegenerateExtent(extent.i_min));
    }
    // 256-entry table; the per-pixel scalar path is the definition.
    let mut table = [f64::NAN; 256];
    for i in extent.i_min..=extent.i_max {
        table[usize::from(i)] = pixel_temperature(i, extent, cal)?;
    }
    let mut values = Vec::with_capacity(img.len());
    for (y, row) in img.rows().enumerate().take(img.height()) {
        for (x, &i) in row.iter().enumerate() {
            if !extent.contains(i) {
                return Err(EstimationError::PixelOutOfRange {
                    x,
                    y,
                    intensity: i,
                    i_min: extent.i_min,
                    i_max: extent.i_max,
                });
            }
            values.push(table[usize::from(i)]);
        }
    }
    Ok(TemperatureMap {
        values: Raster::new(img.width(), img.height(), values)?,
        cal,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Aggregator {
    #[default]
    Mean,
    Median,
    Max,
}

impl Aggregator {
    pub const ALL: [Aggregator; 3] = [Aggregator::Mean, Aggregator::Median, Aggregator::Max];

    pub fn as_str(&self) -> &'static str {
        match self {
            Aggregator::Mean => "mean",
            Aggregator::Median => "median",
            Aggregator::Max => "max",
        }
    }
}

impl fmt::Display for Aggregator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Aggregator {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "mean" => Ok(Aggregator::Mean),
            "median" => Ok(Aggregator::Median),
            "max" => Ok(Aggregator::Max),
            other => Err(format!("unknown aggregator {other:?} (expected mean, median or max)")),
        }
    }
}

/// Aggregates a non-empty sample. The mean is accumulated relative to the
/// minimum and clamped into `[min, max]`, so a constant region returns its
/// value exactly.
fn aggregate(values: &[f64], how: Aggregator) -> f64 {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    match how {
        Aggregator::Max => max,
        Aggregator::Mean => {
            let excess: f64 = values.iter().map(|v| v - min).sum();
            (min + excess / values.len() as f64).clamp(min, max)
        }
        Aggregator::Median => {
            let mut sorted = values.to_vec();
            sorted.sort_by(f64::total_cmp);
            let mid = sorted.len() / 2;
            if sorted.len() % 2 == 1 {
                sorted[mid]
            } else {
                let (a, b) = (sorted[mid - 1], sorted[mid]);
                (a + (b - a) / 2.0).clamp(a, b)
            }
        }
    }
}

pub fn roi_temperature(map: &TemperatureMap, roi: Roi, how: Aggregator) -> Result<f64> {
    let region = crop(&map.values, roi)?;
    Ok(aggregate(region.pixels(), how))
}

/// Estimated temperature compared against one or more reference readings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub estimated: f64,
    pub references: Vec<f64>,
    pub mean_reference: f64,
    pub abs_error: f64,
    pub accuracy_pct: f64,
}

impl ValidationReport {
    /// Accuracy rounded to a whole percent, e.g. `"97%"`.
    pub fn accuracy_display(&self) -> String {
        // + 0.0 turns -0 into 0
        format!("{}%", self.accuracy_pct.round() + 0.0)
    }
}

/// `accuracy = (1 - |estimated - mean(references)| / mean(references)) * 100`,
/// all temperatures in °C.
pub fn accuracy(estimated: f64, references: &[f64]) -> Result<ValidationReport> {
    if references.is_empty() {
        return Err(EstimationError::NoReferences);
    }
    let mean_reference = references.iter().sum::<f64>() / references.len() as f64;
    if mean_reference.is_nan() || mean_reference <= 0.0 {
        return Err(EstimationError::MetricUndefined(mean_reference));
    }
    let abs_error = (estimated - mean_reference).abs();
    Ok(ValidationReport {
        estimated,
        references: references.to_vec(),
        mean_reference,
        abs_error,
        accuracy_pct: (1.0 - abs_error / mean_reference) * 100.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cal(lo: f64, hi: f64) -> CalibrationRange {
        CalibrationRange::new(lo, hi).unwrap()
    }

    fn ext(i_min: u8, i_max: u8) -> IntensityExtent {
        IntensityExtent { i_min, i_max }
    }

    #[test]
    fn calibration_validation() {
        assert!(CalibrationRange::new(40.0, 30.0).is_err());
        assert!(CalibrationRange::new(30.0, 30.0).is_err());
        assert!(CalibrationRange::new(-273.15, 0.0).is_err());
        assert!(CalibrationRange::new(f64::NAN, 1.0).is_err());
        assert_eq!(CalibrationRange::default(), cal(30.0, 40.0));
        assert_eq!(cal(30.0, 40.0).half_quantum(), 10.0 / 510.0);
    }

    #[test]
    fn endpoints_and_midpoint() {
        let c = cal(30.0, 40.0);
        assert_eq!(pixel_temperature(10, ext(10, 200), c).unwrap(), 30.0);
        assert_eq!(pixel_temperature(200, ext(10, 200), c).unwrap(), 40.0);
        assert_eq!(pixel_temperature(105, ext(10, 200), c).unwrap(), 35.0);
        // straddling zero, mean barely off it
        let c = cal(-20.000_001, 20.0);
        assert_eq!(pixel_temperature(1, ext(0, 2), c).unwrap(), (-20.000_001 + 20.0) / 2.0);
        let c = cal(-7.5, 7.5);
        assert_eq!(pixel_temperature(50, ext(0, 100), c).unwrap(), 0.0);
        let ts: Vec<f64> = (0..=255)
            .map(|i| pixel_temperature(i, ext(0, 255), c).unwrap())
            .collect();
        assert!(ts.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn worked_value() {
        let t = pixel_temperature(97, ext(0, 255), cal(30.0, 40.0)).unwrap();
        assert!((t - 33.803_921_568_627_45).abs() < 1e-12, "{t}");
        // brute force over every intensity
        for i in 0..=255u8 {
            let t = pixel_temperature(i, ext(0, 255), cal(30.0, 40.0)).unwrap();
            assert!((t - (30.0 + 10.0 * f64::from(i) / 255.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn pixel_errors() {
        let c = cal(0.0, 1.0);
        assert_eq!(
            pixel_temperature(5, ext(5, 5), c),
            Err(EstimationError::DegenerateExtent(5))
        );
        assert!(matches!(
            pixel_temperature(4, ext(5, 9), c),
            Err(EstimationError::IntensityOutOfRange { intensity: 4, .. })
        ));
        assert!(matches!(
            pixel_temperature(10, ext(5, 9), c),
            Err(EstimationError::IntensityOutOfRange { .. })
        ));
    }

    #[test]
    fn map_cases() {
        let c = cal(20.0, 45.0);
        let flat = GrayImage::filled(4, 4, 9);
        assert_eq!(
            temperature_map(&flat, c, ext(9, 9)),
            Err(EstimationError::DegenerateExtent(9))
        );
        let pair = GrayImage::new(2, 1, vec![3, 250]).unwrap();
        let m = temperature_map(&pair, c, ext(3, 250)).unwrap();
        assert_eq!(m.values().pixels(), &[20.0, 45.0]);
        assert_eq!(m.calibration(), c);

        let img = GrayImage::new(3, 2, vec![5, 6, 7, 8, 9, 99]).unwrap();
        assert_eq!(
            temperature_map(&img, c, ext(5, 9)),
            Err(EstimationError::PixelOutOfRange {
                x: 2,
                y: 1,
                intensity: 99,
                i_min: 5,
                i_max: 9
            })
        );
    }

    #[test]
    fn roi_aggregates() {
        let img = GrayImage::from_fn(4, 4, |x, y| (y * 4 + x) as u8 * 17);
        let m = temperature_map(&img, cal(0.0, 255.0), ext(0, 255)).unwrap();
        for how in Aggregator::ALL {
            assert_eq!(roi_temperature(&m, Roi::new(2, 1, 1, 1), how).unwrap(), m.get(2, 1));
        }
        let roi = Roi::new(0, 0, 2, 2);
        // 0, 17, 68, 85
        assert_eq!(roi_temperature(&m, roi, Aggregator::Max).unwrap(), 85.0);
        assert_eq!(roi_temperature(&m, roi, Aggregator::Median).unwrap(), 42.5);
        assert_eq!(roi_temperature(&m, roi, Aggregator::Mean).unwrap(), 42.5);
        assert!(matches!(
            roi_temperature(&m, Roi::new(3, 3, 2, 1), Aggregator::Mean),
            Err(EstimationError::Image(ImageError::RoiOutOfBounds { .. }))
        ));
    }

    #[test]
    fn constant_region_exact() {
        let values = vec![0.1; 9];
        for how in Aggregator::ALL {
            assert_eq!(aggregate(&values, how), 0.1);
        }
        assert_eq!(aggregate(&[3.0, 1.0, 2.0], Aggregator::Median), 2.0);
    }

    #[test]
    fn accuracy_published_example() {
        let r = accuracy(33.8, &[34.9]).unwrap();
        assert!((r.abs_error - 1.1).abs() < 1e-12);
        assert!(
            (r.accuracy_pct - 96.848_137_535_816_62).abs() < 1e-9,
            "{}",
            r.accuracy_pct
        );
        assert_eq!(r.accuracy_display(), "97%");

        let r = accuracy(33.8, &[34.6, 34.9]).unwrap();
        assert!((r.mean_reference - 34.75).abs() < 1e-12);
        assert!((r.abs_error - 0.95).abs() < 1e-12);
        assert!((r.accuracy_pct - (1.0 - 0.95 / 34.75) * 100.0).abs() < 1e-9);

        let r = accuracy(36.6, &[36.6]).unwrap();
        assert_eq!(r.accuracy_pct, 100.0);
        assert_eq!(r.accuracy_display(), "100%");
    }

    #[test]
    fn accuracy_errors() {
        assert_eq!(accuracy(1.0, &[]), Err(EstimationError::NoReferences));
        assert_eq!(accuracy(1.0, &[0.0]), Err(EstimationError::MetricUndefined(0.0)));
        assert!(accuracy(1.0, &[-5.0, 2.0]).is_err());
    }

    #[test]
    fn aggregator_names() {
        for a in Aggregator::ALL {
            assert_eq!(a.as_str().parse::<Aggregator>().unwrap(), a);
        }
        assert!("min".parse::<Aggregator>().is_err());
    }

    proptest! {
        #[test]
        fn affine_in_intensity(
            lo in 0u8..=250, gap in 4u8..=255, picks in (0.0f64..1.0, 0.0f64..1.0, 0.0f64..1.0),
            t_low in -50.0f64..50.0, span in 0.5f64..100.0,
        ) {
            let hi = lo.saturating_add(gap);
            prop_assume!(hi - lo >= 3);
            let e = ext(lo, hi);
            let c = cal(t_low, t_low + span);
            let mut idx: Vec<u8> = [picks.0, picks.1, picks.2]
                .iter()
                .map(|p| lo + (p * f64::from(hi - lo)) as u8)
                .collect();
            idx.sort();
            idx.dedup();
            prop_assume!(idx.len() == 3);
            let t = |i: u8| pixel_temperature(i, e, c).unwrap();
            let s1 = (t(idx[1]) - t(idx[0])) / f64::from(idx[1] - idx[0]);
            let s2 = (t(idx[2]) - t(idx[1])) / f64::from(idx[2] - idx[1]);
            let scale = span / f64::from(hi - lo);
            prop_assert!((s1 - s2).abs() <= 1e-12 * (scale + t_low.abs().max(span) / f64::from(hi - lo)));
        }

        #[test]
        fn map_confined_and_monotone(
            px in proptest::collection::vec(any::<u8>(), 2..200),
            t_low in -100.0f64..100.0, span in 0.01f64..200.0,
        ) {
            let img = GrayImage::new(px.len(), 1, px.clone()).unwrap();
            let e = crate::imaging::intensity_extent(&img).unwrap();
            prop_assume!(!e.is_degenerate());
            let c = cal(t_low, t_low + span);
            let m = temperature_map(&img, c, e).unwrap();
            for (x, &i) in px.iter().enumerate() {
                let v = m.get(x, 0);
                prop_assert!(v >= c.t_low() && v <= c.t_high());
                prop_assert_eq!(v, pixel_temperature(i, e, c).unwrap());
            }
            let mut prev = f64::NEG_INFINITY;
            for i in e.i_min..=e.i_max {
                let t = pixel_temperature(i, e, c).unwrap();
                prop_assert!(t >= prev);
                prev = t;
            }
        }

        #[test]
        fn calibration_shift(
            px in proptest::collection::vec(any::<u8>(), 2..64),
            t_low in -100i32..100, span in 1i32..100, d in -50i32..50,
        ) {
            let img = GrayImage::new(px.len(), 1, px).unwrap();
            let e = crate::imaging::intensity_extent(&img).unwrap();
            prop_assume!(!e.is_degenerate());
            let (lo, hi, d) = (f64::from(t_low), f64::from(t_low + span), f64::from(d));
            let a = temperature_map(&img, cal(lo, hi), e).unwrap();
            let b = temperature_map(&img, cal(lo + d, hi + d), e).unwrap();
            for (x, y) in a.values().pixels().iter().zip(b.values().pixels()) {
                prop_assert!((y - x - d).abs() <= 1e-12 * (lo.abs() + hi.abs() + d.abs()));
            }
        }

        #[test]
        fn aggregator_sandwich(values in proptest::collection::vec(-1e3f64..1e3, 1..50)) {
            let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            for how in Aggregator::ALL {
                let v = aggregate(&values, how);
                prop_assert!(lo <= v && v <= hi);
            }
            let naive = values.iter().sum::<f64>() / values.len() as f64;
            prop_assert!((aggregate(&values, Aggregator::Mean) - naive).abs() <= 1e-9);
        }

        #[test]
        fn accuracy_capped_at_100(est in 0.1f64..100.0, refs in proptest::collection::vec(0.1f64..100.0, 1..5)) {
            let r = accuracy(est, &refs).unwrap();
            prop_assert!(r.accuracy_pct <= 100.0);
            prop_assert_eq!(r.abs_error, (est - r.mean_reference).abs());
        }
    }
}
