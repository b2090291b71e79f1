mod common;

use common::fixture;
use proptest::prelude::*;
use thermoscope::imaging::{decode, encode, DecodeError, ImageFormat, Raster, Rgb, RgbImage};

fn read(name: &str) -> Vec<u8> {
    std::fs::read(fixture(name)).unwrap()
}

#[test]
fn png_fixture_converts_to_reference_ppm() {
    let img = decode(&read("scene_rgb.png"), ImageFormat::Png).unwrap();
    assert_eq!((img.width(), img.height()), (24, 16));
    // spot value from the generator: (x*255/23, (y*37 + x*11) % 256, x*y % 256)
    assert_eq!(img.get(5, 3), Rgb::new(55, 166, 15));
    let ppm = encode(&img, ImageFormat::Ppm).unwrap();
    assert_eq!(ppm, read("scene_rgb.ppm"));
    assert_eq!(decode(&read("scene_rgb.ppm"), ImageFormat::Ppm).unwrap(), img);
}

#[test]
fn png_alpha_is_dropped() {
    let rgba = decode(&read("scene_rgba.png"), ImageFormat::Png).unwrap();
    let rgb = decode(&read("scene_rgb.png"), ImageFormat::Png).unwrap();
    assert_eq!(rgba, rgb);
}

#[test]
fn paletted_png_is_unsupported() {
    match decode(&read("scene_palette.png"), ImageFormat::Png) {
        Err(DecodeError::Unsupported { detail, .. }) => assert!(detail.contains("Indexed"), "{detail}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn wrong_container_is_malformed() {
    assert!(matches!(
        decode(&read("scene_rgb.ppm"), ImageFormat::Png),
        Err(DecodeError::Malformed { .. })
    ));
    assert!(matches!(
        decode(&read("scene_rgb.png"), ImageFormat::Ppm),
        Err(DecodeError::Malformed { offset: 0, .. })
    ));
}

fn arb_image() -> impl Strategy<Value = RgbImage> {
    (1usize..=64, 1usize..=64).prop_flat_map(|(w, h)| {
        proptest::collection::vec(any::<[u8; 3]>(), w * h)
            .prop_map(move |px| Raster::new(w, h, px.into_iter().map(|[r, g, b]| Rgb::new(r, g, b)).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decode_encode_identity(img in arb_image()) {
        for format in [ImageFormat::Ppm, ImageFormat::Png] {
            let bytes = encode(&img, format).unwrap();
            prop_assert_eq!(&decode(&bytes, format).unwrap(), &img);
        }
    }

    #[test]
    fn canonical_ppm_bytes_survive(img in arb_image()) {
        let bytes = encode(&img, ImageFormat::Ppm).unwrap();
        let again = encode(&decode(&bytes, ImageFormat::Ppm).unwrap(), ImageFormat::Ppm).unwrap();
        prop_assert_eq!(again, bytes);
    }

    #[test]
    fn truncated_ppm_never_panics(img in arb_image(), cut in 0.0f64..1.0) {
        let bytes = encode(&img, ImageFormat::Ppm).unwrap();
        let n = (cut * bytes.len() as f64) as usize;
        prop_assert!(decode(&bytes[..n], ImageFormat::Ppm).is_err());
    }

    #[test]
    fn garbage_never_panics(bytes in proptest::collection::vec(any::<u8>(), 0..256)) {
        let _ = decode(&bytes, ImageFormat::Ppm);
        let _ = decode(&bytes, ImageFormat::Png);
    }
}
