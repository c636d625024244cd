//! CIFAR-10 binary batches: records of one label byte followed by 1024 red,
//! 1024 green and 1024 blue bytes, each plane row-major over 32x32.

use std::path::Path;

use crate::error::{Error, Result};
use crate::types::RawImage;

pub const CIFAR10_RECORD_LEN: usize = 1 + 3 * 1024;
pub const CIFAR10_CLASSES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledImage {
    pub image: RawImage,
    pub label: usize,
}

pub fn read_cifar10_batch(bytes: &[u8]) -> Result<Vec<LabeledImage>> {
    if bytes.len() % CIFAR10_RECORD_LEN != 0 {
        return Err(Error::BadRecordCount(bytes.len()));
    }
    bytes
        .chunks_exact(CIFAR10_RECORD_LEN)
        .enumerate()
        .map(|(record, chunk)| {
            let label = chunk[0];
            if label as usize >= CIFAR10_CLASSES {
                return Err(Error::BadLabel { record, label });
            }
            let planes = &chunk[1..];
            let mut pixels = Vec::with_capacity(3 * 1024);
            for i in 0..1024 {
                pixels.extend([planes[i], planes[1024 + i], planes[2048 + i]]);
            }
            Ok(LabeledImage {
                image: RawImage::new(32, 32, 3, pixels)?,
                label: label as usize,
            })
        })
        .collect()
}

pub fn read_cifar10_file(path: impl AsRef<Path>) -> Result<Vec<LabeledImage>> {
    read_cifar10_batch(&std::fs::read(path)?)
}
