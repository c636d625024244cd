//! Domain types shared by every stage of the pipeline: raw 8-bit images,
//! normalized intensity planes, encoder configuration and spike tensors.
//!
//! Everything here is immutable after construction apart from the explicit
//! `set` on [`SpikeTensor`], which encoders use while filling a fresh tensor.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Full-scale value of an 8-bit pixel.
pub const MAX_INTENSITY: u32 = 255;

/// Default number of presentation steps per image.
pub const DEFAULT_TIME_STEPS: usize = 256;

/// An 8-bit image, row-major, channel-interleaved when it has three channels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawImage {
    width: usize,
    height: usize,
    channels: usize,
    pixels: Vec<u8>,
}

impl RawImage {
    pub fn new(width: usize, height: usize, channels: usize, pixels: Vec<u8>) -> Result<Self> {
        if channels != 1 && channels != 3 {
            return Err(Error::InvalidImage(format!(
                "channel count must be 1 or 3, got {channels}"
            )));
        }
        let expected = width * height * channels;
        if pixels.len() != expected {
            return Err(Error::InvalidImage(format!(
                "{width}x{height}x{channels} image needs {expected} bytes, got {}",
                pixels.len()
            )));
        }
        Ok(Self {
            width,
            height,
            channels,
            pixels,
        })
    }

    /// A single-channel image filled with one value.
    pub fn uniform_gray(width: usize, height: usize, value: u8) -> Self {
        Self {
            width,
            height,
            channels: 1,
            pixels: vec![value; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn pixel_count(&self) -> usize {
        self.width * self.height
    }

    /// The `(r, g, b)` triple at pixel index `i`. Panics on gray images.
    pub fn rgb(&self, i: usize) -> [u8; 3] {
        assert_eq!(self.channels, 3, "rgb() on a {}-channel image", self.channels);
        let o = i * 3;
        [self.pixels[o], self.pixels[o + 1], self.pixels[o + 2]]
    }

    /// Extracts one channel as a contiguous row-major vector.
    pub fn channel(&self, c: usize) -> Vec<u8> {
        assert!(c < self.channels);
        self.pixels
            .iter()
            .skip(c)
            .step_by(self.channels)
            .copied()
            .collect()
    }
}

/// Semantic tag of a spike or intensity channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChannelLabel {
    Gray,
    R,
    G,
    B,
    L,
    LCone,
    MCone,
    SCone,
    LabL,
    LabA,
    LabB,
    Y,
    U,
    V,
}

impl ChannelLabel {
    pub const ALL: [ChannelLabel; 14] = [
        ChannelLabel::Gray,
        ChannelLabel::R,
        ChannelLabel::G,
        ChannelLabel::B,
        ChannelLabel::L,
        ChannelLabel::LCone,
        ChannelLabel::MCone,
        ChannelLabel::SCone,
        ChannelLabel::LabL,
        ChannelLabel::LabA,
        ChannelLabel::LabB,
        ChannelLabel::Y,
        ChannelLabel::U,
        ChannelLabel::V,
    ];

    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Option<Self> {
        Self::ALL.get(code as usize).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            ChannelLabel::Gray => "GRAY",
            ChannelLabel::R => "R",
            ChannelLabel::G => "G",
            ChannelLabel::B => "B",
            ChannelLabel::L => "L",
            ChannelLabel::LCone => "Lcone",
            ChannelLabel::MCone => "Mcone",
            ChannelLabel::SCone => "Scone",
            ChannelLabel::LabL => "Lab_L",
            ChannelLabel::LabA => "Lab_a",
            ChannelLabel::LabB => "Lab_b",
            ChannelLabel::Y => "Y",
            ChannelLabel::U => "U",
            ChannelLabel::V => "V",
        }
    }
}

impl fmt::Display for ChannelLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which channels the photoreceptor layer produces.
///
/// `Single` tags a one-channel tensor produced by encoding a lone plane
/// directly rather than through channel assembly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelSet {
    Gray,
    Rgb,
    Rgbl,
    Lms,
    Lab,
    Yuv,
    Single(ChannelLabel),
}

impl ChannelSet {
    pub const ASSEMBLED: [ChannelSet; 6] = [
        ChannelSet::Gray,
        ChannelSet::Rgb,
        ChannelSet::Rgbl,
        ChannelSet::Lms,
        ChannelSet::Lab,
        ChannelSet::Yuv,
    ];

    pub fn labels(self) -> Vec<ChannelLabel> {
        use ChannelLabel::*;
        match self {
            ChannelSet::Gray => vec![Gray],
            ChannelSet::Rgb => vec![R, G, B],
            ChannelSet::Rgbl => vec![R, G, B, L],
            ChannelSet::Lms => vec![LCone, MCone, SCone],
            ChannelSet::Lab => vec![LabL, LabA, LabB],
            ChannelSet::Yuv => vec![Y, U, V],
            ChannelSet::Single(label) => vec![label],
        }
    }

    pub fn channel_count(self) -> usize {
        match self {
            ChannelSet::Gray | ChannelSet::Single(_) => 1,
            ChannelSet::Rgbl => 4,
            _ => 3,
        }
    }

    /// 8-bit identifier used by the spike container. Single-label sets use
    /// the high bit with the label code in the low bits.
    pub fn code(self) -> u8 {
        match self {
            ChannelSet::Gray => 0,
            ChannelSet::Rgb => 1,
            ChannelSet::Rgbl => 2,
            ChannelSet::Lms => 3,
            ChannelSet::Lab => 4,
            ChannelSet::Yuv => 5,
            ChannelSet::Single(label) => 0x80 | label.code(),
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        if code & 0x80 != 0 {
            return ChannelLabel::from_code(code & 0x7f).map(ChannelSet::Single);
        }
        Self::ASSEMBLED.get(code as usize).copied()
    }

    /// The set a lone plane with this label belongs to.
    pub fn for_single(label: ChannelLabel) -> Self {
        match label {
            ChannelLabel::Gray => ChannelSet::Gray,
            other => ChannelSet::Single(other),
        }
    }
}

impl FromStr for ChannelSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gray" | "grey" => Ok(ChannelSet::Gray),
            "rgb" => Ok(ChannelSet::Rgb),
            "rgbl" => Ok(ChannelSet::Rgbl),
            "lms" => Ok(ChannelSet::Lms),
            "lab" => Ok(ChannelSet::Lab),
            "yuv" => Ok(ChannelSet::Yuv),
            other => Err(Error::InvalidConfig(format!("unknown channel set '{other}'"))),
        }
    }
}

impl fmt::Display for ChannelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChannelSet::Gray => f.write_str("gray"),
            ChannelSet::Rgb => f.write_str("rgb"),
            ChannelSet::Rgbl => f.write_str("rgbl"),
            ChannelSet::Lms => f.write_str("lms"),
            ChannelSet::Lab => f.write_str("lab"),
            ChannelSet::Yuv => f.write_str("yuv"),
            ChannelSet::Single(label) => write!(f, "single:{label}"),
        }
    }
}

/// Per-channel light intensity in `[0, 1]`.
///
/// Each value is stored as an integer level over a full-scale denominator, so
/// `value(i) = level(i) / full_scale` exactly. Planes built from 8-bit pixels
/// have `full_scale = 255` and the levels are the source pixels themselves;
/// this is what lets the IF encoder run in exact integer arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedPlane {
    width: usize,
    height: usize,
    levels: Vec<u32>,
    full_scale: u32,
    label: ChannelLabel,
}

impl NormalizedPlane {
    pub fn from_levels(
        width: usize,
        height: usize,
        levels: Vec<u32>,
        full_scale: u32,
        label: ChannelLabel,
    ) -> Result<Self> {
        if full_scale == 0 {
            return Err(Error::InvalidImage("full scale must be positive".into()));
        }
        if levels.len() != width * height {
            return Err(Error::InvalidImage(format!(
                "{width}x{height} plane needs {} levels, got {}",
                width * height,
                levels.len()
            )));
        }
        if let Some(&bad) = levels.iter().find(|&&l| l > full_scale) {
            return Err(Error::InvalidImage(format!(
                "level {bad} exceeds full scale {full_scale}"
            )));
        }
        Ok(Self {
            width,
            height,
            levels,
            full_scale,
            label,
        })
    }

    /// A plane of 8-bit source pixels.
    pub fn from_pixels(width: usize, height: usize, pixels: &[u8], label: ChannelLabel) -> Result<Self> {
        let levels = pixels.iter().map(|&p| p as u32).collect();
        Self::from_levels(width, height, levels, MAX_INTENSITY, label)
    }

    /// Quantizes real intensities (clamped to `[0, 1]`) to 8-bit levels.
    pub fn quantize(width: usize, height: usize, values: &[f64], label: ChannelLabel) -> Result<Self> {
        let levels = values.iter().map(|&v| quantize_unit(v) as u32).collect();
        Self::from_levels(width, height, levels, MAX_INTENSITY, label)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn label(&self) -> ChannelLabel {
        self.label
    }

    pub fn with_label(mut self, label: ChannelLabel) -> Self {
        self.label = label;
        self
    }

    pub fn full_scale(&self) -> u32 {
        self.full_scale
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    /// The original 8-bit pixels, if this plane is at 8-bit granularity.
    pub fn source_pixels(&self) -> Option<Vec<u8>> {
        (self.full_scale == MAX_INTENSITY).then(|| self.levels.iter().map(|&l| l as u8).collect())
    }

    pub fn value(&self, i: usize) -> f64 {
        self.levels[i] as f64 / self.full_scale as f64
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.levels.len()).map(|i| self.value(i)).collect()
    }

    /// Rescales to 8 bits with round-half-up.
    pub fn to_pixels(&self) -> Vec<u8> {
        self.values().into_iter().map(quantize_unit).collect()
    }
}

/// Maps a real intensity to the nearest 8-bit level, clamping to `[0, 1]`.
pub fn quantize_unit(v: f64) -> u8 {
    let v = if v.is_nan() { 0.0 } else { v.clamp(0.0, 1.0) };
    (v * MAX_INTENSITY as f64 + 0.5).floor() as u8
}

/// Splits an image into per-channel planes with `value = pixel / 255`.
pub fn normalize(image: &RawImage) -> Vec<NormalizedPlane> {
    let labels: &[ChannelLabel] = if image.channels() == 1 {
        &[ChannelLabel::Gray]
    } else {
        &[ChannelLabel::R, ChannelLabel::G, ChannelLabel::B]
    };
    labels
        .iter()
        .enumerate()
        .map(|(c, &label)| {
            NormalizedPlane::from_pixels(image.width(), image.height(), &image.channel(c), label)
                .expect("a valid image yields valid planes")
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Codec {
    If,
    Lif,
    Rate,
    Ttfs,
}

impl Codec {
    pub const ALL: [Codec; 4] = [Codec::If, Codec::Lif, Codec::Rate, Codec::Ttfs];

    pub fn code(self) -> u8 {
        match self {
            Codec::If => 0,
            Codec::Lif => 1,
            Codec::Rate => 2,
            Codec::Ttfs => 3,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        Self::ALL.get(code as usize).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            Codec::If => "if",
            Codec::Lif => "lif",
            Codec::Rate => "rate",
            Codec::Ttfs => "ttfs",
        }
    }
}

impl FromStr for Codec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "if" => Ok(Codec::If),
            "lif" => Ok(Codec::Lif),
            "rate" => Ok(Codec::Rate),
            "ttfs" => Ok(Codec::Ttfs),
            other => Err(Error::InvalidConfig(format!("unknown codec '{other}'"))),
        }
    }
}

impl fmt::Display for Codec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EncoderConfig {
    pub codec: Codec,
    pub time_steps: usize,
    pub threshold: f64,
    /// Per-step membrane retention for LIF, `exp(-dt / RC)` with `dt = 1`.
    pub leak_factor: f64,
    pub initial_potential: f64,
    pub seed: u64,
}

impl Default for EncoderConfig {
    fn default() -> Self {
        Self {
            codec: Codec::If,
            time_steps: DEFAULT_TIME_STEPS,
            threshold: 1.0,
            leak_factor: 1.0,
            initial_potential: 0.0,
            seed: 0,
        }
    }
}

impl EncoderConfig {
    pub fn new(codec: Codec) -> Self {
        Self {
            codec,
            ..Self::default()
        }
    }

    pub fn with_steps(mut self, time_steps: usize) -> Self {
        self.time_steps = time_steps;
        self
    }

    pub fn with_threshold(mut self, threshold: f64) -> Self {
        self.threshold = threshold;
        self
    }

    pub fn with_leak(mut self, leak_factor: f64) -> Self {
        self.leak_factor = leak_factor;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.time_steps == 0 {
            return Err(Error::InvalidConfig("time steps must be >= 1".into()));
        }
        if !(self.threshold.is_finite() && self.threshold > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "threshold must be positive, got {}",
                self.threshold
            )));
        }
        if !(self.leak_factor > 0.0 && self.leak_factor <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "leak factor must lie in (0, 1], got {}",
                self.leak_factor
            )));
        }
        if !self.initial_potential.is_finite() {
            return Err(Error::InvalidConfig("initial potential must be finite".into()));
        }
        Ok(())
    }

    /// Threshold rounded to thousandths, as stored in the spike container.
    pub fn threshold_milli(&self) -> u32 {
        (self.threshold * 1000.0).round().clamp(0.0, u32::MAX as f64) as u32
    }
}

/// Encoder metadata carried alongside a spike tensor and persisted in the
/// container header.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Provenance {
    pub channel_set: ChannelSet,
    pub codec: Codec,
    pub threshold_milli: u32,
    pub seed: u64,
}

impl Provenance {
    pub fn new(channel_set: ChannelSet, config: &EncoderConfig) -> Self {
        Self {
            channel_set,
            codec: config.codec,
            threshold_milli: config.threshold_milli(),
            seed: config.seed,
        }
    }
}

/// Binary spikes indexed `(channel, time, y, x)` with `x` fastest.
///
/// Time indices are zero-based internally; step `t` in user-facing output is
/// index `t - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpikeTensor {
    channels: usize,
    time_steps: usize,
    width: usize,
    height: usize,
    bits: Vec<bool>,
    labels: Vec<ChannelLabel>,
    provenance: Provenance,
}

impl SpikeTensor {
    /// An all-zero tensor whose channels follow `provenance.channel_set`.
    pub fn zeros(time_steps: usize, width: usize, height: usize, provenance: Provenance) -> Self {
        let labels = provenance.channel_set.labels();
        let channels = labels.len();
        Self {
            channels,
            time_steps,
            width,
            height,
            bits: vec![false; channels * time_steps * width * height],
            labels,
            provenance,
        }
    }

    pub fn from_bits(
        time_steps: usize,
        width: usize,
        height: usize,
        bits: Vec<bool>,
        provenance: Provenance,
    ) -> Result<Self> {
        let labels = provenance.channel_set.labels();
        let expected = labels.len() * time_steps * width * height;
        if bits.len() != expected {
            return Err(Error::ShapeMismatch(format!(
                "expected {expected} spike bits, got {}",
                bits.len()
            )));
        }
        Ok(Self {
            channels: labels.len(),
            time_steps,
            width,
            height,
            bits,
            labels,
            provenance,
        })
    }

    /// Concatenates single-channel tensors along the channel axis.
    pub fn stack(parts: Vec<SpikeTensor>, provenance: Provenance) -> Result<Self> {
        let labels = provenance.channel_set.labels();
        if parts.len() != labels.len() {
            return Err(Error::ShapeMismatch(format!(
                "channel set {} needs {} channels, got {}",
                provenance.channel_set,
                labels.len(),
                parts.len()
            )));
        }
        let first = parts.first().ok_or_else(|| Error::ShapeMismatch("nothing to stack".into()))?;
        let (t, w, h) = (first.time_steps, first.width, first.height);
        let mut bits = Vec::with_capacity(labels.len() * t * w * h);
        for part in &parts {
            if (part.time_steps, part.width, part.height) != (t, w, h) {
                return Err(Error::ShapeMismatch("stacked tensors differ in shape".into()));
            }
            bits.extend_from_slice(&part.bits);
        }
        Self::from_bits(t, w, h, bits, provenance)
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn time_steps(&self) -> usize {
        self.time_steps
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn labels(&self) -> &[ChannelLabel] {
        &self.labels
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn index(&self, c: usize, t: usize, y: usize, x: usize) -> usize {
        debug_assert!(c < self.channels && t < self.time_steps && y < self.height && x < self.width);
        ((c * self.time_steps + t) * self.height + y) * self.width + x
    }

    pub fn get(&self, c: usize, t: usize, y: usize, x: usize) -> bool {
        self.bits[self.index(c, t, y, x)]
    }

    pub fn set(&mut self, c: usize, t: usize, y: usize, x: usize, spike: bool) {
        let i = self.index(c, t, y, x);
        self.bits[i] = spike;
    }

    pub fn contains(&self, c: usize, y: usize, x: usize) -> bool {
        c < self.channels && y < self.height && x < self.width
    }

    /// The spike train of one pixel, in time order.
    pub fn train(&self, c: usize, y: usize, x: usize) -> Vec<bool> {
        (0..self.time_steps).map(|t| self.get(c, t, y, x)).collect()
    }

    /// One-based step numbers at which the pixel fires.
    pub fn spike_steps(&self, c: usize, y: usize, x: usize) -> Vec<usize> {
        (0..self.time_steps)
            .filter(|&t| self.get(c, t, y, x))
            .map(|t| t + 1)
            .collect()
    }

    pub fn spike_count(&self, c: usize, y: usize, x: usize) -> usize {
        (0..self.time_steps).filter(|&t| self.get(c, t, y, x)).count()
    }

    pub fn total_spikes(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// The bits of one time step, flattened `(c, y, x)`.
    pub fn frame(&self, t: usize) -> Vec<bool> {
        let plane = self.width * self.height;
        let mut out = Vec::with_capacity(self.channels * plane);
        for c in 0..self.channels {
            let start = (c * self.time_steps + t) * plane;
            out.extend_from_slice(&self.bits[start..start + plane]);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalize_endpoints() {
        let img = RawImage::new(3, 1, 1, vec![0, 255, 1]).unwrap();
        let planes = normalize(&img);
        assert_eq!(planes.len(), 1);
        assert_eq!(planes[0].value(0), 0.0);
        assert_eq!(planes[0].value(1), 1.0);
        assert!((planes[0].value(2) - 0.003922).abs() < 1e-6);
        assert_eq!(planes[0].value(2), 1.0 / 255.0);
        assert_eq!(planes[0].source_pixels().unwrap(), vec![0, 255, 1]);
    }

    #[test]
    fn normalize_keeps_channel_order() {
        let img = RawImage::new(2, 1, 3, vec![1, 2, 3, 4, 5, 6]).unwrap();
        let planes = normalize(&img);
        let labels: Vec<_> = planes.iter().map(|p| p.label()).collect();
        assert_eq!(labels, vec![ChannelLabel::R, ChannelLabel::G, ChannelLabel::B]);
        assert_eq!(planes[1].levels(), &[2, 5]);
    }

    #[test]
    fn rejects_bad_images() {
        assert!(RawImage::new(2, 2, 2, vec![0; 8]).is_err());
        assert!(RawImage::new(2, 2, 3, vec![0; 11]).is_err());
        assert!(NormalizedPlane::from_levels(1, 1, vec![5], 4, ChannelLabel::Gray).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(EncoderConfig::default().validate().is_ok());
        assert!(EncoderConfig::default().with_steps(0).validate().is_err());
        assert!(EncoderConfig::default().with_threshold(0.0).validate().is_err());
        assert!(EncoderConfig::default().with_leak(0.0).validate().is_err());
        assert!(EncoderConfig::default().with_leak(1.5).validate().is_err());
        assert_eq!(EncoderConfig::default().threshold_milli(), 1000);
    }

    #[test]
    fn channel_set_codes_round_trip() {
        for set in ChannelSet::ASSEMBLED {
            assert_eq!(ChannelSet::from_code(set.code()), Some(set));
        }
        for label in ChannelLabel::ALL {
            let set = ChannelSet::Single(label);
            assert_eq!(ChannelSet::from_code(set.code()), Some(set));
        }
        assert_eq!(ChannelSet::Rgbl.channel_count(), 4);
        assert_eq!(ChannelSet::Lab.channel_count(), 3);
        assert_eq!(ChannelSet::Gray.channel_count(), 1);
    }

    #[test]
    fn tensor_layout_is_x_fastest() {
        let prov = Provenance::new(ChannelSet::Rgb, &EncoderConfig::default());
        let t = SpikeTensor::zeros(2, 3, 2, prov);
        assert_eq!(t.index(0, 0, 0, 1), 1);
        assert_eq!(t.index(0, 0, 1, 0), 3);
        assert_eq!(t.index(0, 1, 0, 0), 6);
        assert_eq!(t.index(1, 0, 0, 0), 12);
        assert_eq!(t.len(), 3 * 2 * 3 * 2);
    }

    proptest! {
        #[test]
        fn normalize_is_monotone(a in any::<u8>(), b in any::<u8>()) {
            let img = RawImage::new(2, 1, 1, vec![a, b]).unwrap();
            let p = &normalize(&img)[0];
            if a <= b {
                prop_assert!(p.value(0) <= p.value(1));
            }
        }
    }

    #[test]
    fn normalize_then_rescale_is_identity() {
        let pixels: Vec<u8> = (0..=255).collect();
        let img = RawImage::new(256, 1, 1, pixels.clone()).unwrap();
        assert_eq!(normalize(&img)[0].to_pixels(), pixels);
    }
}
