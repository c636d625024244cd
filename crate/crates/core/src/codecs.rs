//! Spike encoders and decoders.
//!
//! Every encoder maps one [`NormalizedPlane`] to a single-channel
//! [`SpikeTensor`]; pixels are encoded independently and membrane state starts
//! afresh for every plane.
//!
//! The IF encoder works in integer units of `1 / full_scale`: each step adds
//! the pixel's level to an accumulator and fires when the accumulator reaches
//! `round(full_scale * threshold)`, subtracting the threshold on a spike. The
//! comparison is `>=`, so a pixel at exactly one quarter of full scale fires
//! on steps 4, 8, 12, ...

use crate::error::{Error, Result};
use crate::types::{ChannelSet, Codec, EncoderConfig, NormalizedPlane, Provenance, SpikeTensor};

/// Integer integrate-and-fire state for one pixel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IfState {
    accumulator: i64,
    threshold: i64,
}

impl IfState {
    pub fn new(full_scale: u32, config: &EncoderConfig) -> Self {
        Self {
            accumulator: scaled_initial(full_scale, config.initial_potential),
            threshold: threshold_units(full_scale, config.threshold),
        }
    }

    pub fn accumulator(&self) -> i64 {
        self.accumulator
    }

    pub fn threshold(&self) -> i64 {
        self.threshold
    }

    /// Integrates one step of input and reports whether the neuron fired.
    pub fn step(&mut self, level: u32) -> bool {
        self.accumulator += level as i64;
        if self.accumulator >= self.threshold {
            self.accumulator -= self.threshold;
            true
        } else {
            false
        }
    }
}

/// Leaky integrate-and-fire state, membrane kept in units of `1 / full_scale`.
///
/// With `leak_factor == 1` every quantity stays integral in `f64`, so the
/// spike train matches [`IfState`] bit for bit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LifState {
    membrane: f64,
    leak_factor: f64,
    threshold: f64,
}

impl LifState {
    pub fn new(full_scale: u32, config: &EncoderConfig) -> Self {
        Self {
            membrane: scaled_initial(full_scale, config.initial_potential) as f64,
            leak_factor: config.leak_factor,
            threshold: threshold_units(full_scale, config.threshold) as f64,
        }
    }

    pub fn membrane(&self) -> f64 {
        self.membrane
    }

    pub fn step(&mut self, level: u32) -> bool {
        self.membrane = self.leak_factor * self.membrane + level as f64;
        if self.membrane >= self.threshold {
            self.membrane -= self.threshold;
            true
        } else {
            false
        }
    }
}

fn threshold_units(full_scale: u32, threshold: f64) -> i64 {
    ((full_scale as f64 * threshold).round() as i64).max(1)
}

fn scaled_initial(full_scale: u32, initial_potential: f64) -> i64 {
    (full_scale as f64 * initial_potential).round() as i64
}

fn empty_output(plane: &NormalizedPlane, config: &EncoderConfig, codec: Codec) -> SpikeTensor {
    let config = EncoderConfig { codec, ..*config };
    let provenance = Provenance::new(ChannelSet::for_single(plane.label()), &config);
    SpikeTensor::zeros(config.time_steps, plane.width(), plane.height(), provenance)
}

fn encode_with<F>(plane: &NormalizedPlane, config: &EncoderConfig, codec: Codec, mut neuron: F) -> SpikeTensor
where
    F: FnMut(usize, u32, &mut dyn FnMut(usize)),
{
    let mut out = empty_output(plane, config, codec);
    let w = plane.width();
    for (i, &level) in plane.levels().iter().enumerate() {
        let (y, x) = (i / w, i % w);
        neuron(i, level, &mut |t| out.set(0, t, y, x, true));
    }
    out
}

pub fn if_encode(plane: &NormalizedPlane, config: &EncoderConfig) -> SpikeTensor {
    let steps = config.time_steps;
    let fs = plane.full_scale();
    encode_with(plane, config, Codec::If, |_, level, fire| {
        let mut state = IfState::new(fs, config);
        for t in 0..steps {
            if state.step(level) {
                fire(t);
            }
        }
    })
}

pub fn lif_encode(plane: &NormalizedPlane, config: &EncoderConfig) -> SpikeTensor {
    let steps = config.time_steps;
    let fs = plane.full_scale();
    encode_with(plane, config, Codec::Lif, |_, level, fire| {
        let mut state = LifState::new(fs, config);
        for t in 0..steps {
            if state.step(level) {
                fire(t);
            }
        }
    })
}

/// Bernoulli rate coding. Each `(seed, label, x, y, t)` coordinate owns an
/// independent uniform draw, so the output does not depend on evaluation order.
pub fn rate_encode(plane: &NormalizedPlane, config: &EncoderConfig) -> SpikeTensor {
    let steps = config.time_steps;
    let w = plane.width();
    let label = plane.label().code() as u64;
    let fs = plane.full_scale() as f64;
    encode_with(plane, config, Codec::Rate, |i, level, fire| {
        let p = level as f64 / fs;
        let (y, x) = ((i / w) as u64, (i % w) as u64);
        for t in 0..steps {
            if coordinate_uniform(config.seed, label, x, y, t as u64) < p {
                fire(t);
            }
        }
    })
}

/// Zero-based firing index of a TTFS pixel, `None` for a dark pixel.
///
/// The one-based step is `floor((1 - p) * (T - 1)) + 1`, evaluated exactly on
/// the integer level.
pub fn ttfs_latency(level: u32, full_scale: u32, time_steps: usize) -> Option<usize> {
    if level == 0 || time_steps == 0 {
        return None;
    }
    let dark = (full_scale - level) as u64;
    Some((dark * (time_steps as u64 - 1) / full_scale as u64) as usize)
}

pub fn ttfs_encode(plane: &NormalizedPlane, config: &EncoderConfig) -> SpikeTensor {
    let steps = config.time_steps;
    let fs = plane.full_scale();
    encode_with(plane, config, Codec::Ttfs, |_, level, fire| {
        if let Some(t) = ttfs_latency(level, fs, steps) {
            fire(t);
        }
    })
}

/// Dispatches on `config.codec`.
pub fn encode_plane(plane: &NormalizedPlane, config: &EncoderConfig) -> SpikeTensor {
    match config.codec {
        Codec::If => if_encode(plane, config),
        Codec::Lif => lif_encode(plane, config),
        Codec::Rate => rate_encode(plane, config),
        Codec::Ttfs => ttfs_encode(plane, config),
    }
}

/// Spike count over the window, per channel: `value = count / T`.
pub fn decode_count(spikes: &SpikeTensor) -> Vec<NormalizedPlane> {
    let (w, h, t) = (spikes.width(), spikes.height(), spikes.time_steps());
    (0..spikes.channels())
        .map(|c| {
            let levels = (0..h)
                .flat_map(|y| (0..w).map(move |x| (y, x)))
                .map(|(y, x)| spikes.spike_count(c, y, x) as u32)
                .collect();
            NormalizedPlane::from_levels(w, h, levels, t.max(1) as u32, spikes.labels()[c])
                .expect("counts never exceed T")
        })
        .collect()
}

/// Inverts the TTFS latency map; silent pixels decode to 0.
pub fn decode_ttfs(spikes: &SpikeTensor) -> Result<Vec<NormalizedPlane>> {
    let (w, h, steps) = (spikes.width(), spikes.height(), spikes.time_steps());
    let full_scale = steps.saturating_sub(1).max(1) as u32;
    let mut planes = Vec::with_capacity(spikes.channels());
    for c in 0..spikes.channels() {
        let mut levels = Vec::with_capacity(w * h);
        for y in 0..h {
            for x in 0..w {
                let fired = spikes.spike_steps(c, y, x);
                let level = match fired.as_slice() {
                    [] => 0,
                    [_] if steps == 1 => 1,
                    [step] => (steps - step) as u32,
                    many => {
                        return Err(Error::MultipleSpikes {
                            index: (c * h + y) * w + x,
                            count: many.len(),
                        })
                    }
                };
                levels.push(level);
            }
        }
        planes.push(NormalizedPlane::from_levels(w, h, levels, full_scale, spikes.labels()[c])?);
    }
    Ok(planes)
}

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Keyed counter-based uniform in `[0, 1)`.
pub fn coordinate_uniform(seed: u64, label: u64, x: u64, y: u64, t: u64) -> f64 {
    let mut h = mix64(seed.wrapping_add(GOLDEN));
    for word in [label, x, y, t] {
        h = mix64(h ^ word.wrapping_add(GOLDEN).wrapping_mul(GOLDEN));
    }
    (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
