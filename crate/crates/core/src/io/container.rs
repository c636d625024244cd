//! The `SPK1` spike container.
//!
//! Layout (all integers little-endian):
//!
//! | offset | size | field            |
//! |--------|------|------------------|
//! | 0      | 4    | magic `SPK1`     |
//! | 4      | 2    | version (1)      |
//! | 6      | 4    | channels         |
//! | 10     | 4    | time steps       |
//! | 14     | 4    | width            |
//! | 18     | 4    | height           |
//! | 22     | 1    | channel-set id   |
//! | 23     | 1    | codec id         |
//! | 24     | 4    | threshold x 1000 |
//! | 28     | 8    | seed             |
//! | 36     | 8    | reserved, zero   |
//!
//! The payload follows: bits in `(c, t, y, x)` order, `x` fastest, packed
//! LSB-first, `ceil(C*T*W*H / 8)` bytes.

use std::path::Path;

use crate::error::{Error, Result};
use crate::types::{ChannelSet, Codec, Provenance, SpikeTensor};

pub const CONTAINER_MAGIC: [u8; 4] = *b"SPK1";
pub const CONTAINER_VERSION: u16 = 1;
pub const HEADER_LEN: usize = 44;

pub fn write_spike_container(spikes: &SpikeTensor) -> Vec<u8> {
    let prov = spikes.provenance();
    let mut out = Vec::with_capacity(HEADER_LEN + spikes.len().div_ceil(8));
    out.extend_from_slice(&CONTAINER_MAGIC);
    out.extend_from_slice(&CONTAINER_VERSION.to_le_bytes());
    for dim in [spikes.channels(), spikes.time_steps(), spikes.width(), spikes.height()] {
        out.extend_from_slice(&(dim as u32).to_le_bytes());
    }
    out.push(prov.channel_set.code());
    out.push(prov.codec.code());
    out.extend_from_slice(&prov.threshold_milli.to_le_bytes());
    out.extend_from_slice(&prov.seed.to_le_bytes());
    out.extend_from_slice(&[0u8; 8]);

    for chunk in spikes.bits().chunks(8) {
        let byte = chunk
            .iter()
            .enumerate()
            .fold(0u8, |acc, (i, &bit)| acc | ((bit as u8) << i));
        out.push(byte);
    }
    out
}

fn u32_at(bytes: &[u8], offset: usize) -> u32 {
    u32::from_le_bytes(bytes[offset..offset + 4].try_into().unwrap())
}

pub fn read_spike_container(bytes: &[u8]) -> Result<SpikeTensor> {
    if bytes.len() < HEADER_LEN {
        if bytes.len() >= 4 && bytes[..4] != CONTAINER_MAGIC {
            return Err(Error::BadMagic(bytes[..4].try_into().unwrap()));
        }
        return Err(Error::LengthMismatch {
            expected: HEADER_LEN,
            found: bytes.len(),
        });
    }
    let magic: [u8; 4] = bytes[..4].try_into().unwrap();
    if magic != CONTAINER_MAGIC {
        return Err(Error::BadMagic(magic));
    }
    let version = u16::from_le_bytes([bytes[4], bytes[5]]);
    if version != CONTAINER_VERSION {
        return Err(Error::VersionMismatch(version));
    }
    let [channels, steps, width, height] = [6, 10, 14, 18].map(|o| u32_at(bytes, o) as usize);
    let channel_set = ChannelSet::from_code(bytes[22]).ok_or(Error::UnknownCode {
        kind: "channel set",
        code: bytes[22],
    })?;
    let codec = Codec::from_code(bytes[23]).ok_or(Error::UnknownCode {
        kind: "codec",
        code: bytes[23],
    })?;
    if channel_set.channel_count() != channels {
        return Err(Error::ShapeMismatch(format!(
            "header says {channels} channels but channel set {channel_set} has {}",
            channel_set.channel_count()
        )));
    }
    let provenance = Provenance {
        channel_set,
        codec,
        threshold_milli: u32_at(bytes, 24),
        seed: u64::from_le_bytes(bytes[28..36].try_into().unwrap()),
    };

    let bit_len = channels
        .checked_mul(steps)
        .and_then(|n| n.checked_mul(width))
        .and_then(|n| n.checked_mul(height))
        .ok_or_else(|| Error::ShapeMismatch("tensor dimensions overflow".into()))?;
    let payload = &bytes[HEADER_LEN..];
    let expected = bit_len.div_ceil(8);
    if payload.len() != expected {
        return Err(Error::LengthMismatch {
            expected: HEADER_LEN + expected,
            found: bytes.len(),
        });
    }
    let bits = (0..bit_len).map(|i| payload[i / 8] >> (i % 8) & 1 == 1).collect();
    SpikeTensor::from_bits(steps, width, height, bits, provenance)
}

pub fn write_spike_container_file(path: impl AsRef<Path>, spikes: &SpikeTensor) -> Result<()> {
    std::fs::write(path, write_spike_container(spikes))?;
    Ok(())
}

pub fn read_spike_container_file(path: impl AsRef<Path>) -> Result<SpikeTensor> {
    read_spike_container(&std::fs::read(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::EncoderConfig;
    use proptest::prelude::*;

    fn gray(steps: usize, w: usize, h: usize) -> SpikeTensor {
        SpikeTensor::zeros(steps, w, h, Provenance::new(ChannelSet::Gray, &EncoderConfig::default()))
    }

    #[test]
    fn header_layout() {
        let bytes = write_spike_container(&gray(8, 1, 1));
        assert_eq!(bytes.len(), HEADER_LEN + 1);
        assert_eq!(&bytes[..4], b"SPK1");
        assert_eq!(&bytes[4..6], &[1, 0]);
        assert_eq!(&bytes[10..14], &[8, 0, 0, 0]);
        assert_eq!(&bytes[24..28], &1000u32.to_le_bytes());
        assert!(bytes[36..44].iter().all(|&b| b == 0));
        assert_eq!(bytes[HEADER_LEN], 0);
    }

    #[test]
    fn first_bit_is_lsb_of_first_byte() {
        let mut s = gray(8, 2, 2);
        s.set(0, 0, 0, 0, true);
        assert_eq!(write_spike_container(&s)[HEADER_LEN], 0x01);
        let mut s = gray(8, 2, 2);
        s.set(0, 0, 1, 0, true); // index 2
        s.set(0, 2, 0, 1, true); // index 9
        let bytes = write_spike_container(&s);
        assert_eq!(&bytes[HEADER_LEN..HEADER_LEN + 2], &[0x04, 0x02]);
    }

    #[test]
    fn rejects_damage() {
        let good = write_spike_container(&gray(3, 3, 3));
        let mut bad = good.clone();
        bad[0] = b'X';
        assert!(matches!(read_spike_container(&bad), Err(Error::BadMagic(_))));
        let mut bad = good.clone();
        bad[4] = 2;
        assert!(matches!(read_spike_container(&bad), Err(Error::VersionMismatch(2))));
        assert!(matches!(read_spike_container(&good[..good.len() - 1]), Err(Error::LengthMismatch { .. })));
        assert!(matches!(read_spike_container(&good[..10]), Err(Error::LengthMismatch { .. })));
        let mut bad = good.clone();
        bad.push(0);
        assert!(matches!(read_spike_container(&bad), Err(Error::LengthMismatch { .. })));
        let mut bad = good.clone();
        bad[23] = 9;
        assert!(matches!(read_spike_container(&bad), Err(Error::UnknownCode { .. })));
        let mut bad = good;
        bad[6] = 3;
        assert!(matches!(read_spike_container(&bad), Err(Error::ShapeMismatch(_))));
    }

    proptest! {
        #[test]
        fn round_trip(seed in any::<u64>(), steps in 1usize..12, w in 1usize..6, h in 1usize..6, set in 0u8..6, codec in 0u8..4) {
            let config = EncoderConfig::new(Codec::from_code(codec).unwrap()).with_seed(seed).with_threshold(0.75);
            let prov = Provenance::new(ChannelSet::from_code(set).unwrap(), &config);
            let mut s = SpikeTensor::zeros(steps, w, h, prov);
            let n = s.len();
            let bits: Vec<bool> = (0..n).map(|i| (seed.rotate_left(i as u32 % 64) ^ i as u64) & 1 == 1).collect();
            s = SpikeTensor::from_bits(steps, w, h, bits, prov).unwrap();
            let back = read_spike_container(&write_spike_container(&s)).unwrap();
            prop_assert_eq!(back, s);
        }
    }
}
