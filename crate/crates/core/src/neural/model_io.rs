//! Bit-exact model file format.
//!
//! Layout:
//! - magic `ANN1` (4 bytes), little-endian u32 version (= 1)
//! - u32 record count; one record per descriptor: u8 tag, u32 rank,
//!   rank × u32 dims. Tags: 0 input [h, w, c]; 1 conv [filters, kernel,
//!   activation]; 2 maxpool [pool, stride]; 3 flatten []; 4 dropout
//!   [low u32, high u32 of the f64 bits of p]; 5 dense [units, activation].
//!   Activation codes: 0 linear, 1 tanh, 2 relu.
//! - for each parametric layer in order, the weight then bias payloads as
//!   little-endian 32-bit floats
//! - trailing u64 CRC-64/ECMA checksum of every byte after the 8-byte
//!   magic+version prefix.

use super::layers::Activation;
use super::network::{LayerSpec, NetworkParams, NetworkSpec};
use super::tensor::Tensor;
use super::NeuralError;
use std::path::Path;

const MAGIC: &[u8; 4] = b"ANN1";
const VERSION: u32 = 1;

// CRC-64/ECMA-182, MSB-first
const CRC64_POLY: u64 = 0x42F0_E1EB_A9EA_3693;

const fn crc64_table() -> [u64; 256] {
    let mut table = [0u64; 256];
    let mut i = 0;
    while i < 256 {
        let mut crc = (i as u64) << 56;
        let mut bit = 0;
        while bit < 8 {
            crc = if crc & (1 << 63) != 0 {
                (crc << 1) ^ CRC64_POLY
            } else {
                crc << 1
            };
            bit += 1;
        }
        table[i] = crc;
        i += 1;
    }
    table
}

static CRC_TABLE: [u64; 256] = crc64_table();

pub fn crc64(bytes: &[u8]) -> u64 {
    let mut crc = 0u64;
    for &b in bytes {
        crc = (crc << 8) ^ CRC_TABLE[(((crc >> 56) as u8) ^ b) as usize];
    }
    crc
}

fn activation_code(a: Activation) -> u32 {
    match a {
        Activation::Linear => 0,
        Activation::Tanh => 1,
        Activation::Relu => 2,
    }
}

fn activation_from_code(c: u32) -> Result<Activation, NeuralError> {
    match c {
        0 => Ok(Activation::Linear),
        1 => Ok(Activation::Tanh),
        2 => Ok(Activation::Relu),
        _ => Err(NeuralError::Parse(format!("unknown activation code {c}"))),
    }
}

pub fn model_to_bytes(spec: &NetworkSpec, params: &NetworkParams) -> Result<Vec<u8>, NeuralError> {
    if params.layers.len() != spec.layers.len() {
        return Err(NeuralError::ShapeMismatch(
            "parameters do not align with the spec".into(),
        ));
    }
    let mut body: Vec<u8> = Vec::new();
    let record_count = 1 + spec.layers.len() as u32;
    body.extend_from_slice(&record_count.to_le_bytes());

    let push_record = |body: &mut Vec<u8>, tag: u8, dims: &[u32]| {
        body.push(tag);
        body.extend_from_slice(&(dims.len() as u32).to_le_bytes());
        for d in dims {
            body.extend_from_slice(&d.to_le_bytes());
        }
    };
    push_record(
        &mut body,
        0,
        &[spec.input[0] as u32, spec.input[1] as u32, spec.input[2] as u32],
    );
    for layer in &spec.layers {
        match layer {
            LayerSpec::Conv2d {
                filters,
                kernel,
                activation,
            } => push_record(
                &mut body,
                1,
                &[*filters as u32, *kernel as u32, activation_code(*activation)],
            ),
            LayerSpec::MaxPool { pool, stride } => {
                push_record(&mut body, 2, &[*pool as u32, *stride as u32])
            }
            LayerSpec::Flatten => push_record(&mut body, 3, &[]),
            LayerSpec::Dropout { p } => {
                let bits = p.to_bits();
                push_record(&mut body, 4, &[bits as u32, (bits >> 32) as u32])
            }
            LayerSpec::Dense { units, activation } => {
                push_record(&mut body, 5, &[*units as u32, activation_code(*activation)])
            }
        }
    }
    for pair in params.layers.iter().flatten() {
        for t in [&pair.0, &pair.1] {
            for &v in t.data() {
                body.extend_from_slice(&(v as f32).to_le_bytes());
            }
        }
    }

    let mut out = Vec::with_capacity(8 + body.len() + 8);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&body);
    out.extend_from_slice(&crc64(&body).to_le_bytes());
    Ok(out)
}

pub fn model_from_bytes(bytes: &[u8]) -> Result<(NetworkSpec, NetworkParams), NeuralError> {
    if bytes.len() < 8 + 4 + 8 {
        return Err(NeuralError::Parse("file too short".into()));
    }
    if &bytes[0..4] != MAGIC {
        return Err(NeuralError::Parse("bad magic, expected ANN1".into()));
    }
    let version = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
    if version != VERSION {
        return Err(NeuralError::VersionMismatch { found: version });
    }
    let body = &bytes[8..bytes.len() - 8];
    let stored_crc = u64::from_le_bytes(bytes[bytes.len() - 8..].try_into().unwrap());
    if crc64(body) != stored_crc {
        return Err(NeuralError::Parse("checksum mismatch".into()));
    }

    let mut cursor = 0usize;
    let take_u32 = |cursor: &mut usize| -> Result<u32, NeuralError> {
        if *cursor + 4 > body.len() {
            return Err(NeuralError::Parse("truncated record".into()));
        }
        let v = u32::from_le_bytes(body[*cursor..*cursor + 4].try_into().unwrap());
        *cursor += 4;
        Ok(v)
    };
    let record_count = take_u32(&mut cursor)? as usize;
    if record_count == 0 {
        return Err(NeuralError::Parse("no records".into()));
    }
    let mut input: Option<[usize; 3]> = None;
    let mut layers = Vec::new();
    for r in 0..record_count {
        if cursor >= body.len() {
            return Err(NeuralError::Parse("truncated record".into()));
        }
        let tag = body[cursor];
        cursor += 1;
        let rank = take_u32(&mut cursor)? as usize;
        let mut dims = Vec::with_capacity(rank);
        for _ in 0..rank {
            dims.push(take_u32(&mut cursor)?);
        }
        match (tag, dims.as_slice()) {
            (0, [h, w, c]) if r == 0 => input = Some([*h as usize, *w as usize, *c as usize]),
            (1, [filters, kernel, act]) => layers.push(LayerSpec::Conv2d {
                filters: *filters as usize,
                kernel: *kernel as usize,
                activation: activation_from_code(*act)?,
            }),
            (2, [pool, stride]) => layers.push(LayerSpec::MaxPool {
                pool: *pool as usize,
                stride: *stride as usize,
            }),
            (3, []) => layers.push(LayerSpec::Flatten),
            (4, [lo, hi]) => layers.push(LayerSpec::Dropout {
                p: f64::from_bits((*hi as u64) << 32 | *lo as u64),
            }),
            (5, [units, act]) => layers.push(LayerSpec::Dense {
                units: *units as usize,
                activation: activation_from_code(*act)?,
            }),
            _ => {
                return Err(NeuralError::Parse(format!(
                    "record {r}: unknown tag {tag} with rank {rank}"
                )))
            }
        }
    }
    let input = input.ok_or_else(|| NeuralError::Parse("missing input record".into()))?;
    let spec = NetworkSpec { input, layers };

    let shapes = spec.param_shapes()?;
    let mut param_layers = Vec::with_capacity(spec.layers.len());
    for entry in shapes {
        let pair = match entry {
            None => None,
            Some((wshape, blen)) => {
                let w = read_tensor(body, &mut cursor, &wshape)?;
                let b = read_tensor(body, &mut cursor, &[blen])?;
                Some((w, b))
            }
        };
        param_layers.push(pair);
    }
    if cursor != body.len() {
        return Err(NeuralError::Parse(format!(
            "{} trailing bytes after payload",
            body.len() - cursor
        )));
    }
    Ok((spec, NetworkParams { layers: param_layers }))
}

fn read_tensor(body: &[u8], cursor: &mut usize, shape: &[usize]) -> Result<Tensor, NeuralError> {
    let len: usize = shape.iter().product();
    if *cursor + len * 4 > body.len() {
        return Err(NeuralError::Parse("truncated payload".into()));
    }
    let data: Vec<f64> = body[*cursor..*cursor + len * 4]
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes(c.try_into().unwrap()) as f64)
        .collect();
    *cursor += len * 4;
    Tensor::from_vec(shape, data)
}

pub fn save_model(spec: &NetworkSpec, params: &NetworkParams, path: &Path) -> Result<(), NeuralError> {
    let bytes = model_to_bytes(spec, params)?;
    std::fs::write(path, bytes)?;
    Ok(())
}

pub fn load_model(path: &Path) -> Result<(NetworkSpec, NetworkParams), NeuralError> {
    let bytes = std::fs::read(path)?;
    model_from_bytes(&bytes)
}
