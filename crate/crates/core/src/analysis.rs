//! Spike statistics, reconstruction metrics and cost accounting.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::photoreceptor::encode_photoreceptor;
use crate::types::{ChannelSet, Codec, EncoderConfig, NormalizedPlane, RawImage, SpikeTensor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pixel {
    pub x: usize,
    pub y: usize,
    pub c: usize,
}

impl Pixel {
    pub fn new(x: usize, y: usize, c: usize) -> Self {
        Self { x, y, c }
    }
}

fn check_pixel(spikes: &SpikeTensor, p: Pixel) -> Result<()> {
    if spikes.contains(p.c, p.y, p.x) {
        Ok(())
    } else {
        Err(Error::OutOfBounds(format!("{p:?}")))
    }
}

fn check_window(spikes: &SpikeTensor, start: usize, window: usize) -> Result<()> {
    if window == 0 || start + window > spikes.time_steps() {
        return Err(Error::OutOfBounds(format!(
            "window [{start}, {}) outside 0..{}",
            start + window,
            spikes.time_steps()
        )));
    }
    Ok(())
}

fn spikes_in_window(spikes: &SpikeTensor, p: Pixel, start: usize, window: usize) -> usize {
    (start..start + window).filter(|&t| spikes.get(p.c, t, p.y, p.x)).count()
}

/// Spike count of one pixel over the whole presentation.
pub fn count_rate(spikes: &SpikeTensor, pixel: Pixel) -> Result<usize> {
    check_pixel(spikes, pixel)?;
    Ok(spikes.spike_count(pixel.c, pixel.y, pixel.x))
}

/// Average rate of one pixel across `K` trials over `[start, start + window)`:
/// `N_K / (window * K)`.
pub fn density_rate(trials: &[SpikeTensor], pixel: Pixel, start: usize, window: usize) -> Result<f64> {
    let first = trials.first().ok_or(Error::EmptyDataset)?;
    let shape = |s: &SpikeTensor| (s.channels(), s.time_steps(), s.width(), s.height());
    if trials.iter().any(|s| shape(s) != shape(first)) {
        return Err(Error::ShapeMismatch("trials differ in shape".into()));
    }
    check_pixel(first, pixel)?;
    check_window(first, start, window)?;
    let total: usize = trials.iter().map(|s| spikes_in_window(s, pixel, start, window)).sum();
    Ok(total as f64 / (window * trials.len()) as f64)
}

/// Average activity of a pixel population over `[start, start + window)`:
/// `N_act / (window * n)`.
pub fn population_rate(spikes: &SpikeTensor, region: &[Pixel], start: usize, window: usize) -> Result<f64> {
    if region.is_empty() {
        return Err(Error::OutOfBounds("empty region".into()));
    }
    for &p in region {
        check_pixel(spikes, p)?;
    }
    check_window(spikes, start, window)?;
    let total: usize = region.iter().map(|&p| spikes_in_window(spikes, p, start, window)).sum();
    Ok(total as f64 / (window * region.len()) as f64)
}

/// Every pixel of one channel.
pub fn channel_region(spikes: &SpikeTensor, c: usize) -> Vec<Pixel> {
    (0..spikes.height())
        .flat_map(|y| (0..spikes.width()).map(move |x| Pixel::new(x, y, c)))
        .collect()
}

/// Per-channel firing summary.
#[derive(Debug, Clone, PartialEq)]
pub struct FiringStats {
    pub channel: usize,
    pub label: String,
    pub total_spikes: usize,
    /// Mean of the per-pixel spike counts.
    pub mean_count_rate: f64,
    pub max_count_rate: usize,
    /// Population rate over the full window.
    pub population_rate: f64,
    /// Population rate per consecutive window of `window` steps.
    pub windowed_population_rate: Vec<f64>,
}

/// Summaries for every channel, with windowed population rates over
/// `window`-step windows (a trailing partial window is dropped).
pub fn firing_stats(spikes: &SpikeTensor, window: usize) -> Result<Vec<FiringStats>> {
    let steps = spikes.time_steps();
    if window == 0 || window > steps {
        return Err(Error::OutOfBounds(format!("window {window} with T = {steps}")));
    }
    (0..spikes.channels())
        .map(|c| {
            let region = channel_region(spikes, c);
            let counts: Vec<usize> = region.iter().map(|p| spikes.spike_count(c, p.y, p.x)).collect();
            let total: usize = counts.iter().sum();
            Ok(FiringStats {
                channel: c,
                label: spikes.labels()[c].to_string(),
                total_spikes: total,
                mean_count_rate: total as f64 / counts.len().max(1) as f64,
                max_count_rate: counts.iter().copied().max().unwrap_or(0),
                population_rate: population_rate(spikes, &region, 0, steps)?,
                windowed_population_rate: (0..steps / window)
                    .map(|k| population_rate(spikes, &region, k * window, window))
                    .collect::<Result<_>>()?,
            })
        })
        .collect()
}

/// `(max |a - b|, mean |a - b|)` over two planes of the same size.
pub fn reconstruction_error(original: &NormalizedPlane, decoded: &NormalizedPlane) -> Result<(f64, f64)> {
    if (original.width(), original.height()) != (decoded.width(), decoded.height()) {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} vs {}x{}",
            original.width(),
            original.height(),
            decoded.width(),
            decoded.height()
        )));
    }
    let n = original.len();
    if n == 0 {
        return Ok((0.0, 0.0));
    }
    let (max, sum) = (0..n)
        .map(|i| (original.value(i) - decoded.value(i)).abs())
        .fold((0.0f64, 0.0), |(m, s), d| (m.max(d), s + d));
    Ok((max, sum / n as f64))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimingSummary {
    /// Retained per-repetition wall-clock samples, microseconds.
    pub samples_micros: Vec<f64>,
    pub mean_micros: f64,
    pub stddev_micros: f64,
    pub threads: usize,
}

impl TimingSummary {
    pub fn from_samples(samples_micros: Vec<f64>, threads: usize) -> Self {
        let n = samples_micros.len();
        let mean = if n == 0 { 0.0 } else { samples_micros.iter().sum::<f64>() / n as f64 };
        let var = if n < 2 {
            0.0
        } else {
            samples_micros.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (n - 1) as f64
        };
        Self {
            samples_micros,
            mean_micros: mean,
            stddev_micros: var.sqrt(),
            threads,
        }
    }

    pub fn count(&self) -> usize {
        self.samples_micros.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CostReport {
    pub flops: u64,
    pub parameters: u64,
    pub timing: Option<TimingSummary>,
}

/// Elementary operations per pixel per step (per pixel for TTFS).
///
/// IF: accumulate, compare, conditional subtract, spike write. LIF adds the
/// decay multiply. RATE: draw, compare. TTFS: latency computation and one write.
pub fn ops_per_pixel(codec: Codec) -> u64 {
    match codec {
        Codec::If => 4,
        Codec::Lif => 5,
        Codec::Rate | Codec::Ttfs => 2,
    }
}

/// Operation and parameter count of encoding one `width x height x channels`
/// image. None of the encoders has learnable parameters.
pub fn flops_report(config: &EncoderConfig, width: usize, height: usize, channels: usize) -> CostReport {
    let pixels = (width * height * channels) as u64;
    let per_pixel = match config.codec {
        Codec::Ttfs => ops_per_pixel(Codec::Ttfs),
        codec => ops_per_pixel(codec) * config.time_steps as u64,
    };
    CostReport {
        flops: pixels * per_pixel,
        parameters: 0,
        timing: None,
    }
}

/// Times encoding of the whole dataset `repetitions` times on the calling
/// thread. The first repetition is warm-up and is discarded.
pub fn bench_encode(
    config: &EncoderConfig,
    channels: ChannelSet,
    dataset: &[RawImage],
    repetitions: usize,
) -> Result<CostReport> {
    if dataset.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if repetitions == 0 {
        return Err(Error::InvalidConfig("repetitions must be >= 1".into()));
    }
    config.validate()?;
    let mut samples = Vec::with_capacity(repetitions - 1);
    let mut sink = 0usize;
    for rep in 0..repetitions {
        let start = Instant::now();
        for image in dataset {
            sink += encode_photoreceptor(image, channels, config)?.len();
        }
        let elapsed = start.elapsed().as_secs_f64() * 1e6;
        if rep > 0 {
            samples.push(elapsed);
        }
    }
    std::hint::black_box(sink);
    let flops = dataset
        .iter()
        .map(|img| flops_report(config, img.width(), img.height(), channels.channel_count()).flops)
        .sum();
    Ok(CostReport {
        flops,
        parameters: 0,
        timing: Some(TimingSummary::from_samples(samples, 1)),
    })
}

/// `channel,label,total_spikes,mean_count_rate,max_count_rate,population_rate`
/// followed by one `window_k` column per window.
pub fn stats_csv(stats: &[FiringStats]) -> String {
    let windows = stats.iter().map(|s| s.windowed_population_rate.len()).max().unwrap_or(0);
    let mut out = String::from("channel,label,total_spikes,mean_count_rate,max_count_rate,population_rate");
    for k in 0..windows {
        out.push_str(&format!(",window_{k}"));
    }
    out.push('\n');
    for s in stats {
        out.push_str(&format!(
            "{},{},{},{:.6},{},{:.6}",
            s.channel, s.label, s.total_spikes, s.mean_count_rate, s.max_count_rate, s.population_rate
        ));
        for r in &s.windowed_population_rate {
            out.push_str(&format!(",{r:.6}"));
        }
        out.push('\n');
    }
    out
}

/// One row per benchmarked configuration.
pub fn bench_csv(rows: &[(Codec, ChannelSet, usize, CostReport)]) -> String {
    let mut out = String::from("codec,channels,images,flops,parameters,reps,mean_micros,stddev_micros,threads\n");
    for (codec, set, images, report) in rows {
        let (reps, mean, sd, threads) = report
            .timing
            .as_ref()
            .map_or((0, 0.0, 0.0, 0), |t| (t.count(), t.mean_micros, t.stddev_micros, t.threads));
        out.push_str(&format!(
            "{codec},{set},{images},{},{},{reps},{mean:.3},{sd:.3},{threads}\n",
            report.flops, report.parameters
        ));
    }
    out
}
