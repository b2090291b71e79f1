//! Browser bindings for the thermoscope demo page.
//!
//! The [`api`] module is plain Rust and is what the tests exercise; the
//! `#[wasm_bindgen]` functions below only convert errors and buffers.

use wasm_bindgen::prelude::*;

pub mod api {
    use serde_json::{json, Value};
    use thermoscope::colormap::pseudocolor;
    use thermoscope::estimation::{accuracy, roi_temperature, temperature_map, Aggregator, CalibrationRange};
    use thermoscope::imaging::{decode, encode, intensity_extent, red_channel, sniff_format, ImageFormat, Roi};
    use thermoscope::radiometry::{
        band_dominance_ratio, ln_spectral_radiance_hz, spectral_radiance, AbsoluteTemperature, SpectralBand,
    };
    use thermoscope::synthesis::{render, SceneKind, SyntheticScene};

    pub type Result<T> = std::result::Result<T, String>;

    fn err(e: impl std::fmt::Display) -> String {
        e.to_string()
    }

    /// A decoded frame rendered in jet, with the region estimate as JSON.
    #[derive(Debug, Clone, PartialEq)]
    pub struct Analysis {
        pub width: usize,
        pub height: usize,
        /// Pseudocolor image, 4 bytes per pixel, row-major.
        pub rgba: Vec<u8>,
        pub summary: Value,
    }

    /// Generates a synthetic scene and returns it encoded as binary PPM.
    pub fn synth_scene(kind: &str, width: usize, height: usize, seed: u64, t_low: f64, t_high: f64) -> Result<Vec<u8>> {
        let kind: SceneKind = kind.parse()?;
        let cal = CalibrationRange::new(t_low, t_high).map_err(err)?;
        let scene = SyntheticScene::generate(kind, width, height, cal, seed).map_err(err)?;
        encode(&render(&scene), ImageFormat::Ppm).map_err(err)
    }

    /// Decodes PNG or PPM bytes, renders the red channel in jet and
    /// estimates the temperature of `roi` (whole frame when `None`).
    pub fn analyze(bytes: &[u8], roi: Option<Roi>, t_low: f64, t_high: f64, aggregator: &str) -> Result<Analysis> {
        let format = sniff_format(bytes).ok_or("not a PNG or binary PPM file")?;
        let img = decode(bytes, format).map_err(err)?;
        let gray = red_channel(&img);
        let rgba = pseudocolor(&gray)
            .pixels()
            .iter()
            .flat_map(|p| [p.r, p.g, p.b, 255])
            .collect();
        let roi = roi.unwrap_or_else(|| Roi::full(&gray));
        roi.check_within(gray.width(), gray.height()).map_err(err)?;
        let how: Aggregator = aggregator.parse().map_err(err)?;
        let cal = CalibrationRange::new(t_low, t_high).map_err(err)?;
        let extent = intensity_extent(&gray).map_err(err)?;
        let map = temperature_map(&gray, cal, extent).map_err(err)?;
        let stat = |how| roi_temperature(&map, roi, how).map_err(err);
        let summary = json!({
            "format": format.as_str(),
            "width": gray.width(),
            "height": gray.height(),
            "roi": roi,
            "calibration": { "t_low_c": t_low, "t_high_c": t_high },
            "extent": { "i_min": extent.i_min, "i_max": extent.i_max },
            "aggregator": how.as_str(),
            "roi_temperature_c": stat(how)?,
            "roi_statistics_c": {
                "mean": stat(Aggregator::Mean)?,
                "median": stat(Aggregator::Median)?,
                "max": stat(Aggregator::Max)?,
            },
        });
        Ok(Analysis {
            width: gray.width(),
            height: gray.height(),
            rgba,
            summary,
        })
    }

    /// Log spectral radiance over `[from_nm, to_nm]` at `kelvin`, plus the
    /// red and blue band radiances and their ratio.
    pub fn planck_curve(kelvin: f64, from_nm: f64, to_nm: f64, samples: usize) -> Result<Value> {
        if samples < 2 || !(from_nm > 0.0 && to_nm > from_nm) {
            return Err(format!(
                "need at least 2 samples over a positive range, got {samples} over {from_nm}..{to_nm} nm"
            ));
        }
        let t = AbsoluteTemperature::new(kelvin).map_err(err)?;
        let mut points = Vec::with_capacity(samples);
        for n in 0..samples {
            let nm = from_nm + (to_nm - from_nm) * n as f64 / (samples - 1) as f64;
            let band = SpectralBand::from_wavelength("sample", nm * 1e-9).map_err(err)?;
            let ln_b = ln_spectral_radiance_hz(band.frequency_hz(), t).map_err(err)?;
            points.push(json!([nm, ln_b]));
        }
        let band = |b: &SpectralBand| -> Result<Value> {
            Ok(json!({
                "wavelength_nm": b.wavelength_m() * 1e9,
                "radiance": spectral_radiance(b, t).map_err(err)?,
                "ln_radiance": ln_spectral_radiance_hz(b.frequency_hz(), t).map_err(err)?,
            }))
        };
        Ok(json!({
            "kelvin": kelvin,
            "celsius": t.celsius(),
            "ln_radiance": points,
            "red": band(&SpectralBand::RED)?,
            "blue": band(&SpectralBand::BLUE)?,
            // null where the ratio leaves the f64 range
            "blue_over_red": band_dominance_ratio(t).ok(),
        }))
    }

    pub fn accuracy_report(estimated: f64, references: &[f64]) -> Result<Value> {
        let v = accuracy(estimated, references).map_err(err)?;
        Ok(json!({
            "estimated_c": v.estimated,
            "references_c": v.references,
            "mean_reference_c": v.mean_reference,
            "abs_error_c": v.abs_error,
            "accuracy_pct": v.accuracy_pct,
            "accuracy_display": v.accuracy_display(),
        }))
    }
}

fn js_err(e: String) -> JsError {
    JsError::new(&e)
}

#[wasm_bindgen]
pub struct Analysis {
    inner: api::Analysis,
}

#[wasm_bindgen]
impl Analysis {
    #[wasm_bindgen(getter)]
    pub fn width(&self) -> usize {
        self.inner.width
    }

    #[wasm_bindgen(getter)]
    pub fn height(&self) -> usize {
        self.inner.height
    }

    /// RGBA bytes suitable for `ImageData`.
    pub fn rgba(&self) -> Vec<u8> {
        self.inner.rgba.clone()
    }

    pub fn summary(&self) -> String {
        self.inner.summary.to_string()
    }
}

#[wasm_bindgen]
pub fn synth_scene(
    kind: &str,
    width: usize,
    height: usize,
    seed: u32,
    t_low: f64,
    t_high: f64,
) -> Result<Vec<u8>, JsError> {
    api::synth_scene(kind, width, height, u64::from(seed), t_low, t_high).map_err(js_err)
}

/// ROI is ignored when `roi_w` or `roi_h` is 0.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn analyze(
    bytes: &[u8],
    roi_x: usize,
    roi_y: usize,
    roi_w: usize,
    roi_h: usize,
    t_low: f64,
    t_high: f64,
    aggregator: &str,
) -> Result<Analysis, JsError> {
    let roi = (roi_w > 0 && roi_h > 0).then(|| thermoscope::imaging::Roi::new(roi_x, roi_y, roi_w, roi_h));
    let inner = api::analyze(bytes, roi, t_low, t_high, aggregator).map_err(js_err)?;
    Ok(Analysis { inner })
}

#[wasm_bindgen]
pub fn planck_curve(kelvin: f64, from_nm: f64, to_nm: f64, samples: usize) -> Result<String, JsError> {
    Ok(api::planck_curve(kelvin, from_nm, to_nm, samples)
        .map_err(js_err)?
        .to_string())
}

#[wasm_bindgen]
pub fn accuracy_report(estimated: f64, references: &[f64]) -> Result<String, JsError> {
    Ok(api::accuracy_report(estimated, references).map_err(js_err)?.to_string())
}
