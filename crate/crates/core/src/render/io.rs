//! Bit-exact RGBD sample file format.
//!
//! Layout: magic bytes `RGBD`, little-endian u32 width, u32 height,
//! u32 channels (= 4), u32 reserved (= 0), then width·height·4 little-endian
//! 32-bit floats in row-major, channel-interleaved order (R, G, B, D per
//! pixel).

use super::{RenderError, RgbdImage};

const MAGIC: &[u8; 4] = b"RGBD";

pub fn rgbd_to_bytes(image: &RgbdImage) -> Vec<u8> {
    let mut out = Vec::with_capacity(20 + image.data.len() * 4);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&(image.width as u32).to_le_bytes());
    out.extend_from_slice(&(image.height as u32).to_le_bytes());
    out.extend_from_slice(&4u32.to_le_bytes());
    out.extend_from_slice(&0u32.to_le_bytes());
    for v in &image.data {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

pub fn rgbd_from_bytes(bytes: &[u8]) -> Result<RgbdImage, RenderError> {
    if bytes.len() < 20 {
        return Err(RenderError::Parse("file shorter than the header".into()));
    }
    if &bytes[0..4] != MAGIC {
        return Err(RenderError::Parse("bad magic, expected RGBD".into()));
    }
    let read_u32 = |off: usize| u32::from_le_bytes(bytes[off..off + 4].try_into().unwrap());
    let width = read_u32(4) as usize;
    let height = read_u32(8) as usize;
    let channels = read_u32(12);
    let reserved = read_u32(16);
    if channels != 4 {
        return Err(RenderError::Parse(format!("expected 4 channels, got {channels}")));
    }
    if reserved != 0 {
        return Err(RenderError::Parse(format!("reserved field must be 0, got {reserved}")));
    }
    let expected = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(16))
        .ok_or_else(|| RenderError::Parse("image dimensions overflow".into()))?;
    if bytes.len() != 20 + expected {
        return Err(RenderError::Parse(format!(
            "expected {} payload bytes, got {}",
            expected,
            bytes.len() - 20
        )));
    }
    let data: Vec<f32> = bytes[20..]
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes(c.try_into().unwrap()))
        .collect();
    if data.iter().any(|v| !v.is_finite()) {
        return Err(RenderError::Parse("non-finite sample value".into()));
    }
    Ok(RgbdImage { width, height, data })
}
