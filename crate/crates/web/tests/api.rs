use thermoscope::colormap::jet_lut;
use thermoscope::imaging::{encode, ImageFormat, Rgb, RgbImage, Roi};
use thermoscope_web::api;

#[test]
fn scene_analyzes_within_calibration() {
    let ppm = api::synth_scene("hotspots", 48, 32, 7, 20.0, 45.0).unwrap();
    assert!(ppm.starts_with(b"P6\n48 32\n255\n"));
    let a = api::analyze(&ppm, None, 20.0, 45.0, "mean").unwrap();
    assert_eq!((a.width, a.height), (48, 32));
    assert_eq!(a.rgba.len(), 48 * 32 * 4);
    assert!(a.rgba.chunks(4).all(|p| p[3] == 255));
    let s = &a.summary;
    assert_eq!(s["format"], "ppm");
    assert_eq!(s["extent"]["i_min"], 0);
    assert_eq!(s["extent"]["i_max"], 255);
    assert_eq!(s["roi_statistics_c"]["max"].as_f64(), Some(45.0));
    let mean = s["roi_temperature_c"].as_f64().unwrap();
    assert!((20.0..=45.0).contains(&mean));
}

#[test]
fn analyze_png_roi() {
    let img = RgbImage::from_fn(4, 2, |x, y| {
        Rgb::new([[0, 60, 120, 255], [30, 90, 150, 200]][y][x], 5, 5)
    });
    let png = encode(&img, ImageFormat::Png).unwrap();
    let a = api::analyze(&png, Some(Roi::new(3, 0, 1, 1)), 30.0, 40.0, "max").unwrap();
    assert_eq!(a.summary["roi_temperature_c"].as_f64(), Some(40.0));
    assert_eq!(a.summary["roi"], serde_json::json!({"x": 3, "y": 0, "w": 1, "h": 1}));
    let lut = jet_lut();
    assert_eq!(&a.rgba[..4], &[lut[0].r, lut[0].g, lut[0].b, 255]);
}

#[test]
fn analyze_errors() {
    assert!(api::analyze(b"hello", None, 30.0, 40.0, "mean").is_err());
    let flat = encode(&RgbImage::filled(3, 3, Rgb::new(9, 9, 9)), ImageFormat::Ppm).unwrap();
    assert!(api::analyze(&flat, None, 30.0, 40.0, "mean")
        .unwrap_err()
        .contains("uniform"));
    let ppm = api::synth_scene("noise", 8, 8, 1, 30.0, 40.0).unwrap();
    assert!(api::analyze(&ppm, Some(Roi::new(6, 6, 4, 1)), 30.0, 40.0, "mean").is_err());
    assert!(api::analyze(&ppm, None, 40.0, 30.0, "mean").is_err());
    assert!(api::analyze(&ppm, None, 30.0, 40.0, "mode").is_err());
    assert!(api::synth_scene("stripes", 8, 8, 1, 30.0, 40.0).is_err());
}

#[test]
fn planck_curve_shifts_blue_with_temperature() {
    let cool = api::planck_curve(310.0, 380.0, 780.0, 41).unwrap();
    let hot = api::planck_curve(3000.0, 380.0, 780.0, 41).unwrap();
    assert_eq!(cool["ln_radiance"].as_array().unwrap().len(), 41);
    assert_eq!(cool["ln_radiance"][0][0].as_f64(), Some(380.0));
    assert_eq!(cool["ln_radiance"][40][0].as_f64(), Some(780.0));
    let ratio = |v: &serde_json::Value| v["blue_over_red"].as_f64().unwrap();
    assert!(ratio(&hot) > ratio(&cool));
    assert!((cool["celsius"].as_f64().unwrap() - 36.85).abs() < 1e-12);
    assert_eq!(cool["red"]["wavelength_nm"].as_f64().map(f64::round), Some(700.0));

    // far below the range where the ratio is representable
    let cold = api::planck_curve(2.0, 380.0, 780.0, 3).unwrap();
    assert!(cold["blue_over_red"].is_null());
    assert!(cold["ln_radiance"][1][1].as_f64().unwrap().is_finite());

    assert!(api::planck_curve(-1.0, 380.0, 780.0, 3).is_err());
    assert!(api::planck_curve(300.0, 780.0, 380.0, 3).is_err());
    assert!(api::planck_curve(300.0, 380.0, 780.0, 1).is_err());
}

#[test]
fn accuracy_calculator() {
    let v = api::accuracy_report(33.8, &[34.9]).unwrap();
    assert_eq!(v["accuracy_display"], "97%");
    assert!((v["accuracy_pct"].as_f64().unwrap() - 96.848_137_535_816_62).abs() < 1e-9);
    assert!(api::accuracy_report(33.8, &[]).is_err());
}
