//! Spike encoding of static images.
//!
//! Images are normalized into per-channel intensity planes, optionally passed
//! through an artificial photoreceptor layer (colour channels plus a
//! luminance channel), and converted to binary spike tensors by an
//! integrate-and-fire, leaky integrate-and-fire, rate or time-to-first-spike
//! encoder. The crate also covers decoding, spike statistics, a binary spike
//! container, event and raster export, and a small surrogate-gradient SNN for
//! comparing encoders end to end.

pub mod analysis;
pub mod codecs;
pub mod error;
pub mod io;
pub mod photoreceptor;
pub mod snn;
pub mod types;

pub use error::{Error, Result};
pub use types::{
    normalize, ChannelLabel, ChannelSet, Codec, EncoderConfig, NormalizedPlane, Provenance, RawImage, SpikeTensor,
};
