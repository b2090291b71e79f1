//! Temperature estimation from ordinary RGB images.
//!
//! The pipeline takes the red channel of an image as an intensity field,
//! maps its intensity extent linearly onto a calibration span in °C, and
//! aggregates the resulting per-pixel temperatures over a region of
//! interest. Around it sit:
//!
//! - [`radiometry`]: Planck spectral radiance (frequency form) and the
//!   blue/red band dominance ratio.
//! - [`imaging`]: raster types, PNG/PPM codecs, red-channel projection,
//!   crops and intensity extents.
//! - [`colormap`]: jet pseudocolor rendering.
//! - [`estimation`]: calibration, temperature maps, ROI aggregation and the
//!   validation accuracy metric.
//! - [`synthesis`]: synthetic scenes with known ground truth for end-to-end
//!   checks.
//! - [`cli`]: the `thermoscope` command-line tool.
//!
//! ```
//! use thermoscope::estimation::{roi_temperature, temperature_map, Aggregator, CalibrationRange};
//! use thermoscope::imaging::{intensity_extent, red_channel, Rgb, RgbImage, Roi};
//!
//! let img = RgbImage::from_fn(4, 4, |x, y| Rgb::new((x * 60 + y * 5) as u8, 0, 0));
//! let gray = red_channel(&img);
//! let extent = intensity_extent(&gray).unwrap();
//! let map = temperature_map(&gray, CalibrationRange::new(30.0, 40.0).unwrap(), extent).unwrap();
//! let t = roi_temperature(&map, Roi::new(3, 3, 1, 1), Aggregator::Mean).unwrap();
//! assert_eq!(t, 40.0);
//! ```

pub mod cli;
pub mod colormap;
pub mod estimation;
pub mod imaging;
pub mod radiometry;
pub mod synthesis;
