//! Planck blackbody spectral radiance in the frequency form, plus the
//! red/blue band utilities used to reason about which channel dominates at
//! a given temperature.
//!
//! Radiance is evaluated as
//!
//! ```text
//! B(v, T) = (2 h v^3 / c^2) * e^{-x} / (1 - e^{-x}),   x = h v / (k T)
//! ```
//!
//! which never forms `e^{x}` and stays accurate for small `x` through
//! `expm1`. For very cold or very high-frequency inputs the true value drops
//! below the smallest `f64`; [`ln_spectral_radiance_hz`] still returns its
//! logarithm to full precision.

use std::borrow::Cow;

use thiserror::Error;

/// Planck constant, J·s (exact SI-2019 value).
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Boltzmann constant, J/K (exact SI-2019 value).
pub const BOLTZMANN: f64 = 1.380_649e-23;
/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Offset between the Celsius and Kelvin scales.
pub const CELSIUS_OFFSET: f64 = 273.15;

/// Upper temperature, in kelvin, below which the red channel is treated as
/// the informative one. Documented only; nothing is gated on it.
pub const RED_CHANNEL_VALIDITY_K: f64 = 800.0;

// h/k split into a leading double and its rounding residual, so that
// x = h v / (k T) can be formed to roughly 1e-32 relative accuracy.
const H_OVER_K_HI: f64 = 4.799_243_073_366_221e-11;
const H_OVER_K_LO: f64 = 2.429_594_167_459_689_6e-27;

const TWO_H_OVER_C2: f64 = 1.474_499_464_762_541_7e-50;
const LN_TWO_H_OVER_C2: f64 = -114.740_936_063_425_05;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum RadiometryError {
    #[error("{quantity} must be finite and positive, got {value}")]
    Domain { quantity: &'static str, value: f64 },
    #[error("temperature {celsius} °C is at or below absolute zero")]
    BelowAbsoluteZero { celsius: f64 },
    #[error("band dominance ratio at {kelvin} K is outside the representable range")]
    RatioOutOfRange { kelvin: f64 },
}

pub type Result<T> = std::result::Result<T, RadiometryError>;

fn positive(quantity: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(RadiometryError::Domain { quantity, value })
    }
}

/// The three defining constants that enter Planck's law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub h: f64,
    pub k: f64,
    pub c: f64,
}

impl PhysicalConstants {
    pub const SI_2019: PhysicalConstants = PhysicalConstants {
        h: PLANCK,
        k: BOLTZMANN,
        c: SPEED_OF_LIGHT,
    };
}

/// A narrow spectral band, specified by wavelength.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralBand {
    name: Cow<'static, str>,
    wavelength_m: f64,
    frequency_hz: f64,
}

impl SpectralBand {
    /// Red band at 700 nm.
    pub const RED: SpectralBand = SpectralBand::builtin("red", 700e-9);
    /// Blue band at 490 nm.
    pub const BLUE: SpectralBand = SpectralBand::builtin("blue", 490e-9);

    const fn builtin(name: &'static str, wavelength_m: f64) -> Self {
        SpectralBand {
            name: Cow::Borrowed(name),
            wavelength_m,
            frequency_hz: SPEED_OF_LIGHT / wavelength_m,
        }
    }

    pub fn from_wavelength(name: impl Into<Cow<'static, str>>, wavelength_m: f64) -> Result<Self> {
        let wavelength_m = positive("wavelength", wavelength_m)?;
        Ok(SpectralBand {
            name: name.into(),
            wavelength_m,
            frequency_hz: SPEED_OF_LIGHT / wavelength_m,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn wavelength_m(&self) -> f64 {
        self.wavelength_m
    }

    pub fn frequency_hz(&self) -> f64 {
        self.frequency_hz
    }
}

/// A thermodynamic temperature in kelvin.
///
/// Values built from Celsius keep the rounding residual of the offset
/// addition, which makes [`kelvin_to_celsius`] an exact inverse of
/// [`celsius_to_kelvin`]. Physics only ever sees [`kelvin`](Self::kelvin).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbsoluteTemperature {
    kelvin: f64,
    residual: f64,
}

impl AbsoluteTemperature {
    pub fn new(kelvin: f64) -> Result<Self> {
        Ok(AbsoluteTemperature {
            kelvin: positive("temperature", kelvin)?,
            residual: 0.0,
        })
    }

    pub fn from_celsius(celsius: f64) -> Result<Self> {
        celsius_to_kelvin(celsius)
    }

    pub fn kelvin(&self) -> f64 {
        self.kelvin
    }

    pub fn celsius(&self) -> f64 {
        kelvin_to_celsius(*self)
    }
}

// Knuth's branch-free TwoSum: a + b == s + err exactly.
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

pub fn celsius_to_kelvin(celsius: f64) -> Result<AbsoluteTemperature> {
    if !celsius.is_finite() || celsius <= -CELSIUS_OFFSET {
        return Err(RadiometryError::BelowAbsoluteZero { celsius });
    }
    let (kelvin, residual) = two_sum(celsius, CELSIUS_OFFSET);
    Ok(AbsoluteTemperature { kelvin, residual })
}

pub fn kelvin_to_celsius(t: AbsoluteTemperature) -> f64 {
    let (diff, err) = two_sum(t.kelvin, -CELSIUS_OFFSET);
    diff + (err + t.residual)
}

/// `x = h v / (k T)` as an unevaluated sum `hi + lo`.
fn reduced_frequency(freq_hz: f64, kelvin: f64) -> (f64, f64) {
    let p = H_OVER_K_HI * freq_hz;
    let p_err = H_OVER_K_HI.mul_add(freq_hz, -p) + H_OVER_K_LO * freq_hz;
    let q = p / kelvin;
    let rem = (-q).mul_add(kelvin, p) + p_err;
    let (hi, lo) = two_sum(q, rem / kelvin);
    (hi, lo)
}

/// Spectral radiance per unit frequency, W·sr⁻¹·m⁻²·Hz⁻¹.
///
/// Returns 0.0 only where the exact value lies below the smallest positive
/// `f64`; use [`ln_spectral_radiance_hz`] there.
pub fn spectral_radiance_hz(freq_hz: f64, t: AbsoluteTemperature) -> Result<f64> {
    let v = positive("frequency", freq_hz)?;
    let (x, x_lo) = reduced_frequency(v, t.kelvin);
    let boltzmann_factor = (-x).exp() * (1.0 - x_lo);
    let occupancy = boltzmann_factor / -(-x).exp_m1();
    let prefactor = TWO_H_OVER_C2 * v * v * v;
    if prefactor.is_finite() && prefactor > 0.0 {
        Ok(prefactor * occupancy)
    } else {
        Ok(ln_spectral_radiance_hz(v, t)?.exp())
    }
}

/// Natural log of [`spectral_radiance_hz`], finite for every valid input.
pub fn ln_spectral_radiance_hz(freq_hz: f64, t: AbsoluteTemperature) -> Result<f64> {
    let v = positive("frequency", freq_hz)?;
    let (x, x_lo) = reduced_frequency(v, t.kelvin);
    let small = LN_TWO_H_OVER_C2 + 3.0 * v.ln() - (-(-x).exp_m1()).ln();
    Ok((small - x_lo) - x)
}

pub fn spectral_radiance(band: &SpectralBand, t: AbsoluteTemperature) -> Result<f64> {
    spectral_radiance_hz(band.frequency_hz, t)
}

/// Blue-to-red radiance ratio at temperature `t`. Grows with temperature as
/// the emission peak moves toward shorter wavelengths.
pub fn band_dominance_ratio(t: AbsoluteTemperature) -> Result<f64> {
    let ln_ratio = ln_spectral_radiance_hz(SpectralBand::BLUE.frequency_hz, t)?
        - ln_spectral_radiance_hz(SpectralBand::RED.frequency_hz, t)?;
    let ratio = ln_ratio.exp();
    if ratio.is_normal() {
        Ok(ratio)
    } else {
        Err(RadiometryError::RatioOutOfRange { kelvin: t.kelvin })
    }
}
