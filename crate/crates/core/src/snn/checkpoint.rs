//! `SNN1` model checkpoints.
//!
//! `SNN1`, u16 version, u32 layer count, f64 surrogate slope, then per layer:
//! u32 inputs, u32 outputs, f64 threshold, `outputs * inputs` f64 weights
//! (row-major) and `outputs` f64 biases. Little-endian throughout.

use std::path::Path;

use crate::error::{Error, Result};
use crate::snn::model::{Layer, SnnModel};

pub const CHECKPOINT_MAGIC: [u8; 4] = *b"SNN1";
pub const CHECKPOINT_VERSION: u16 = 1;

pub fn write_checkpoint(model: &SnnModel) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(&CHECKPOINT_MAGIC);
    out.extend_from_slice(&CHECKPOINT_VERSION.to_le_bytes());
    out.extend_from_slice(&(model.layers.len() as u32).to_le_bytes());
    out.extend_from_slice(&model.surrogate_slope.to_le_bytes());
    for layer in &model.layers {
        out.extend_from_slice(&(layer.inputs as u32).to_le_bytes());
        out.extend_from_slice(&(layer.outputs as u32).to_le_bytes());
        out.extend_from_slice(&layer.threshold.to_le_bytes());
        for v in layer.weights.iter().chain(&layer.bias) {
            out.extend_from_slice(&v.to_le_bytes());
        }
    }
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn take<const N: usize>(&mut self) -> Result<[u8; N]> {
        let end = self.pos + N;
        let chunk = self.bytes.get(self.pos..end).ok_or(Error::LengthMismatch {
            expected: end,
            found: self.bytes.len(),
        })?;
        self.pos = end;
        Ok(chunk.try_into().unwrap())
    }

    fn u32(&mut self) -> Result<usize> {
        Ok(u32::from_le_bytes(self.take()?) as usize)
    }

    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take()?))
    }

    fn f64s(&mut self, n: usize) -> Result<Vec<f64>> {
        let need = n.checked_mul(8).and_then(|b| b.checked_add(self.pos));
        if need.is_none_or(|end| end > self.bytes.len()) {
            return Err(Error::LengthMismatch {
                expected: need.unwrap_or(usize::MAX),
                found: self.bytes.len(),
            });
        }
        (0..n).map(|_| self.f64()).collect()
    }
}

pub fn read_checkpoint(bytes: &[u8]) -> Result<SnnModel> {
    let mut r = Reader { bytes, pos: 0 };
    let magic: [u8; 4] = r.take()?;
    if magic != CHECKPOINT_MAGIC {
        return Err(Error::BadMagic(magic));
    }
    let version = u16::from_le_bytes(r.take()?);
    if version != CHECKPOINT_VERSION {
        return Err(Error::VersionMismatch(version));
    }
    let count = r.u32()?;
    let slope = r.f64()?;
    let mut layers = Vec::new();
    for _ in 0..count {
        let inputs = r.u32()?;
        let outputs = r.u32()?;
        let threshold = r.f64()?;
        let weights = r.f64s(inputs * outputs)?;
        let bias = r.f64s(outputs)?;
        layers.push(Layer {
            inputs,
            outputs,
            weights,
            bias,
            threshold,
        });
    }
    if r.pos != bytes.len() {
        return Err(Error::LengthMismatch {
            expected: r.pos,
            found: bytes.len(),
        });
    }
    SnnModel::new(layers, slope)
}

pub fn write_checkpoint_file(path: impl AsRef<Path>, model: &SnnModel) -> Result<()> {
    std::fs::write(path, write_checkpoint(model))?;
    Ok(())
}

pub fn read_checkpoint_file(path: impl AsRef<Path>) -> Result<SnnModel> {
    read_checkpoint(&std::fs::read(path)?)
}
