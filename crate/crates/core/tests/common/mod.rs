#![allow(dead_code)]

use std::path::PathBuf;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

/// One row of the 50-digit Planck oracle table.
#[derive(Debug, Clone, Copy)]
pub struct OracleRow {
    pub freq_hz: f64,
    pub temp_k: f64,
    /// 0.0 when the exact value is below the f64 range.
    pub radiance: f64,
    pub ln_radiance: f64,
}

pub fn planck_oracle(set: &str) -> Vec<OracleRow> {
    let text = std::fs::read_to_string(fixture("planck_oracle.csv")).unwrap();
    text.lines()
        .skip(1)
        .filter_map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            (f[0] == set).then(|| OracleRow {
                freq_hz: f[1].parse().unwrap(),
                temp_k: f[2].parse().unwrap(),
                radiance: f[3].parse().unwrap(),
                ln_radiance: f[4].parse().unwrap(),
            })
        })
        .collect()
}

/// (temp_k, red, blue, blue/red) rows for the built-in bands.
pub fn band_oracle() -> Vec<[f64; 4]> {
    let text = std::fs::read_to_string(fixture("planck_bands.csv")).unwrap();
    text.lines()
        .skip(1)
        .map(|line| {
            let v: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
            [v[0], v[1], v[2], v[3]]
        })
        .collect()
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    ((got - want) / want).abs()
}

/// Relative error of a radiance, falling back to the log form when the
/// exact value is not a normal f64.
pub fn radiance_rel_err(row: &OracleRow, radiance: f64, ln_radiance: f64) -> f64 {
    if row.radiance >= f64::MIN_POSITIVE {
        rel_err(radiance, row.radiance)
    } else {
        (ln_radiance - row.ln_radiance).exp_m1().abs()
    }
}

/// Exact jet quantization for integer intensities, in integer arithmetic.
///
/// Channel k (r=3, g=2, b=1) is clamp(1.5 - |4u - k|, 0, 1). With u = i/255
/// and everything scaled by 510, that is clamp(765 - |8i - 510k|, 0, 510);
/// the 8-bit value is that over 2, rounded half up.
pub fn jet_oracle(i: u8) -> [u8; 3] {
    let i = i64::from(i);
    [3, 2, 1].map(|k| {
        let n = (765 - (8 * i - 510 * k).abs()).clamp(0, 510);
        ((n + 1) / 2) as u8
    })
}
