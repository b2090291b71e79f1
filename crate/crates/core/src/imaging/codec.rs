//! PNG and binary PPM (P6) codecs.
//!
//! PPM output is always `P6\n<w> <h>\n255\n` followed by the raw RGB bytes.
//! The PPM reader also accepts arbitrary whitespace and `#` comments in the
//! header. PNG input must be 8-bit RGB or RGBA; alpha is dropped.

use std::fmt;
use std::io::Cursor;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

use super::{Rgb, RgbImage};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ImageFormat {
    Png,
    Ppm,
}

impl ImageFormat {
    pub fn from_path(path: &Path) -> Option<Self> {
        let ext = path.extension()?.to_str()?.to_ascii_lowercase();
        match ext.as_str() {
            "png" => Some(ImageFormat::Png),
            "ppm" | "pnm" => Some(ImageFormat::Ppm),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ImageFormat::Png => "png",
            ImageFormat::Ppm => "ppm",
        }
    }
}

impl fmt::Display for ImageFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ImageFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "png" => Ok(ImageFormat::Png),
            "ppm" => Ok(ImageFormat::Ppm),
            other => Err(format!("unknown image format {other:?} (expected png or ppm)")),
        }
    }
}

const PNG_SIGNATURE: &[u8] = b"\x89PNG\r\n\x1a\n";

/// Guesses the container from its leading bytes.
pub fn sniff_format(bytes: &[u8]) -> Option<ImageFormat> {
    if bytes.starts_with(PNG_SIGNATURE) {
        Some(ImageFormat::Png)
    } else if bytes.starts_with(b"P6") {
        Some(ImageFormat::Ppm)
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("malformed {format} at byte {offset}: {reason}")]
    Malformed {
        format: ImageFormat,
        offset: usize,
        reason: String,
    },
    #[error("truncated {format} payload at byte {offset}: expected {expected} bytes of pixel data, found {actual}")]
    Truncated {
        format: ImageFormat,
        offset: usize,
        expected: usize,
        actual: usize,
    },
    #[error("unsupported {format} variant: {detail}")]
    Unsupported { format: ImageFormat, detail: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error("cannot encode an image with no pixels")]
    Empty,
    #[error("png encoder: {0}")]
    Png(String),
}

pub fn decode(bytes: &[u8], format: ImageFormat) -> Result<RgbImage, DecodeError> {
    match format {
        ImageFormat::Ppm => decode_ppm(bytes),
        ImageFormat::Png => decode_png(bytes),
    }
}

pub fn encode(img: &RgbImage, format: ImageFormat) -> Result<Vec<u8>, EncodeError> {
    if img.is_empty() {
        return Err(EncodeError::Empty);
    }
    match format {
        ImageFormat::Ppm => Ok(encode_ppm(img)),
        ImageFormat::Png => encode_png(img),
    }
}

fn interleave(img: &RgbImage) -> Vec<u8> {
    img.pixels().iter().flat_map(|p| [p.r, p.g, p.b]).collect()
}

fn encode_ppm(img: &RgbImage) -> Vec<u8> {
    let mut out = format!("P6\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend(interleave(img));
    out
}

fn encode_png(img: &RgbImage) -> Result<Vec<u8>, EncodeError> {
    let err = |e: png::EncodingError| EncodeError::Png(e.to_string());
    let width = u32::try_from(img.width()).map_err(|_| EncodeError::Png("width exceeds u32".into()))?;
    let height = u32::try_from(img.height()).map_err(|_| EncodeError::Png("height exceeds u32".into()))?;
    let mut out = Vec::new();
    let mut encoder = png::Encoder::new(&mut out, width, height);
    encoder.set_color(png::ColorType::Rgb);
    encoder.set_depth(png::BitDepth::Eight);
    let mut writer = encoder.write_header().map_err(err)?;
    writer.write_image_data(&interleave(img)).map_err(err)?;
    writer.finish().map_err(err)?;
    Ok(out)
}

struct PpmHeader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl PpmHeader<'_> {
    fn malformed(&self, reason: impl Into<String>) -> DecodeError {
        DecodeError::Malformed {
            format: ImageFormat::Ppm,
            offset: self.pos,
            reason: reason.into(),
        }
    }

    /// Skips whitespace and comments; errors if none was present.
    fn separator(&mut self) -> Result<(), DecodeError> {
        let start = self.pos;
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&c| c != b'\n' && c != b'\r') {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
        if self.pos == start {
            return Err(self.malformed("expected whitespace"));
        }
        Ok(())
    }

    fn number(&mut self, what: &str) -> Result<usize, DecodeError> {
        let start = self.pos;
        let mut value: usize = 0;
        while let Some(&b) = self.bytes.get(self.pos).filter(|b| b.is_ascii_digit()) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(usize::from(b - b'0')))
                .ok_or_else(|| self.malformed(format!("{what} overflows")))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.malformed(format!("expected {what}")));
        }
        Ok(value)
    }
}

fn decode_ppm(bytes: &[u8]) -> Result<RgbImage, DecodeError> {
    let mut hdr = PpmHeader { bytes, pos: 0 };
    match bytes {
        [b'P', b'6', ..] => hdr.pos = 2,
        [b'P', d @ b'1'..=b'7', ..] => {
            return Err(DecodeError::Unsupported {
                format: ImageFormat::Ppm,
                detail: format!("netpbm type P{}; only binary P6 is supported", char::from(*d)),
            })
        }
        _ => return Err(hdr.malformed("missing P6 magic")),
    }
    hdr.separator()?;
    let width = hdr.number("width")?;
    hdr.separator()?;
    let height = hdr.number("height")?;
    hdr.separator()?;
    let maxval_at = hdr.pos;
    let maxval = hdr.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(hdr.malformed(format!("zero-sized image {width}x{height}")));
    }
    if maxval == 0 || maxval > 65535 {
        hdr.pos = maxval_at;
        return Err(hdr.malformed(format!("maxval {maxval} outside 1..=65535")));
    }
    if maxval != 255 {
        return Err(DecodeError::Unsupported {
            format: ImageFormat::Ppm,
            detail: format!("maxval {maxval}; only 8-bit (255) is supported"),
        });
    }
    match bytes.get(hdr.pos) {
        Some(b) if b.is_ascii_whitespace() => hdr.pos += 1,
        _ => return Err(hdr.malformed("expected a single whitespace byte after maxval")),
    }

    let expected = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(3))
        .ok_or_else(|| hdr.malformed("image dimensions overflow"))?;
    let payload = &bytes[hdr.pos..];
    if payload.len() < expected {
        return Err(DecodeError::Truncated {
            format: ImageFormat::Ppm,
            offset: bytes.len(),
            expected,
            actual: payload.len(),
        });
    }
    let pixels = payload[..expected]
        .chunks_exact(3)
        .map(|c| Rgb::new(c[0], c[1], c[2]))
        .collect();
    Ok(RgbImage::new(width, height, pixels).expect("pixel count matches header"))
}

fn decode_png(bytes: &[u8]) -> Result<RgbImage, DecodeError> {
    let mut cursor = Cursor::new(bytes);
    let fail = |cursor: &Cursor<&[u8]>, e: png::DecodingError| DecodeError::Malformed {
        format: ImageFormat::Png,
        offset: cursor.position() as usize,
        reason: e.to_string(),
    };
    let unsupported = |detail: String| DecodeError::Unsupported {
        format: ImageFormat::Png,
        detail,
    };

    let mut decoder = png::Decoder::new(&mut cursor);
    decoder.set_transformations(png::Transformations::IDENTITY);
    let result = decoder.read_info();
    let mut reader = match result {
        Ok(r) => r,
        Err(e) => return Err(fail(&cursor, e)),
    };
    let info = reader.info();
    let (width, height) = (info.width as usize, info.height as usize);
    let channels = match info.color_type {
        png::ColorType::Rgb => 3,
        png::ColorType::Rgba => 4,
        other => {
            return Err(unsupported(format!(
                "color type {other:?}; only RGB and RGBA are supported"
            )))
        }
    };
    if info.bit_depth != png::BitDepth::Eight {
        return Err(unsupported(format!(
            "{}-bit samples; only 8-bit is supported",
            info.bit_depth as u8
        )));
    }
    let size = reader
        .output_buffer_size()
        .ok_or_else(|| unsupported("image too large to buffer".into()))?;
    let mut buf = vec![0u8; size];
    let frame = reader.next_frame(&mut buf);
    drop(reader);
    let frame = frame.map_err(|e| fail(&cursor, e))?;

    let mut pixels = Vec::with_capacity(width * height);
    for line in buf.chunks_exact(frame.line_size).take(height) {
        pixels.extend(
            line[..width * channels]
                .chunks_exact(channels)
                .map(|c| Rgb::new(c[0], c[1], c[2])),
        );
    }
    RgbImage::new(width, height, pixels).map_err(|e| DecodeError::Malformed {
        format: ImageFormat::Png,
        offset: bytes.len(),
        reason: e.to_string(),
    })
}
