//! Desk-scale encoder comparison: a small CIFAR-10 subset, downscaled to
//! grayscale, encoded by each codec and classified by the same SNN.

use std::path::Path;

use crate::error::{Error, Result};
use crate::io::{read_cifar10_file, LabeledImage};
use crate::photoreceptor::{encode_photoreceptor, luma};
use crate::snn::model::{Architecture, SnnModel};
use crate::snn::network::SpikeSample;
use crate::snn::train::{evaluate, train, TrainConfig};
use crate::types::{ChannelSet, Codec, EncoderConfig, RawImage};

#[derive(Debug, Clone, PartialEq)]
pub struct DeskProtocol {
    /// CIFAR-10 class indices kept; they are relabelled `0..classes.len()`.
    pub classes: Vec<usize>,
    pub train_count: usize,
    pub test_count: usize,
    /// Output side length; the 32x32 source is mean-pooled down to it.
    pub side: usize,
}

impl Default for DeskProtocol {
    /// Airplane vs automobile, 1000 / 200 images, 16x16.
    fn default() -> Self {
        Self {
            classes: vec![0, 1],
            train_count: 1000,
            test_count: 200,
            side: 16,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ImageDataset {
    pub train: Vec<LabeledImage>,
    pub test: Vec<LabeledImage>,
}

/// Rec.601 grayscale followed by `k x k` mean pooling, rounded half-up.
pub fn downscale_gray(image: &RawImage, side: usize) -> Result<RawImage> {
    let (w, h) = (image.width(), image.height());
    if side == 0 || w % side != 0 || h % side != 0 || w / side != h / side {
        return Err(Error::ShapeMismatch(format!("cannot pool {w}x{h} down to {side}x{side}")));
    }
    let k = w / side;
    let gray: Vec<u8> = match image.channels() {
        1 => image.pixels().to_vec(),
        _ => (0..image.pixel_count()).map(|i| luma(image.rgb(i))).collect(),
    };
    let area = (k * k) as u32;
    let mut out = Vec::with_capacity(side * side);
    for by in 0..side {
        for bx in 0..side {
            let mut sum = 0u32;
            for dy in 0..k {
                for dx in 0..k {
                    sum += gray[(by * k + dy) * w + bx * k + dx] as u32;
                }
            }
            out.push(((sum + area / 2) / area) as u8);
        }
    }
    RawImage::new(side, side, 1, out)
}

/// The first `count / classes.len()` items of each kept class, in input order,
/// with labels remapped to positions in `classes`.
pub fn select_balanced(items: &[LabeledImage], classes: &[usize], count: usize) -> Vec<LabeledImage> {
    let quota = count / classes.len().max(1);
    let mut taken = vec![0; classes.len()];
    let mut out = Vec::with_capacity(count);
    for item in items {
        if let Some(k) = classes.iter().position(|&c| c == item.label) {
            if taken[k] < quota {
                taken[k] += 1;
                out.push(LabeledImage {
                    image: item.image.clone(),
                    label: k,
                });
            }
        }
    }
    out
}

/// Applies the protocol to already-loaded CIFAR-10 train and test records.
pub fn prepare_desk_dataset(
    train_items: &[LabeledImage],
    test_items: &[LabeledImage],
    protocol: &DeskProtocol,
) -> Result<ImageDataset> {
    let prep = |items: &[LabeledImage], count: usize, what: &str| -> Result<Vec<LabeledImage>> {
        let chosen = select_balanced(items, &protocol.classes, count);
        let wanted = count / protocol.classes.len() * protocol.classes.len();
        if chosen.len() < wanted {
            return Err(Error::InvalidConfig(format!(
                "only {} {what} images available for classes {:?}, need {wanted}",
                chosen.len(),
                protocol.classes
            )));
        }
        chosen
            .into_iter()
            .map(|item| {
                Ok(LabeledImage {
                    image: downscale_gray(&item.image, protocol.side)?,
                    label: item.label,
                })
            })
            .collect()
    };
    Ok(ImageDataset {
        train: prep(train_items, protocol.train_count, "training")?,
        test: prep(test_items, protocol.test_count, "test")?,
    })
}

/// Loads `data_batch_1.bin`.. (as many as needed) and `test_batch.bin` from a
/// CIFAR-10 binary directory and applies the protocol.
pub fn load_cifar10_desk(dir: impl AsRef<Path>, protocol: &DeskProtocol) -> Result<ImageDataset> {
    let dir = dir.as_ref();
    let per_class = protocol.train_count / protocol.classes.len().max(1);
    let mut train_items = Vec::new();
    for k in 1..=5 {
        train_items.extend(read_cifar10_file(dir.join(format!("data_batch_{k}.bin")))?);
        let enough = protocol
            .classes
            .iter()
            .all(|&c| train_items.iter().filter(|i| i.label == c).count() >= per_class);
        if enough {
            break;
        }
    }
    let test_items = read_cifar10_file(dir.join("test_batch.bin"))?;
    prepare_desk_dataset(&train_items, &test_items, protocol)
}

pub fn encode_dataset(
    images: &[LabeledImage],
    channels: ChannelSet,
    config: &EncoderConfig,
) -> Result<Vec<SpikeSample>> {
    images
        .iter()
        .map(|item| {
            let tensor = encode_photoreceptor(&item.image, channels, config)?;
            Ok(SpikeSample::from_tensor(&tensor, item.label))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CodecResult {
    pub codec: Codec,
    /// `(seed, test accuracy)` in seed order.
    pub per_seed: Vec<(u64, f64)>,
    pub mean: f64,
    /// Sample standard deviation (0 for a single seed).
    pub stddev: f64,
}

/// Trains one model per `(codec, seed)`. For a given seed every codec starts
/// from the same initial weights and sees the same batch order; only the
/// encoder differs. The seed also keys the rate encoder.
pub fn compare_codecs(
    data: &ImageDataset,
    codecs: &[Codec],
    seeds: &[u64],
    channels: ChannelSet,
    arch: &Architecture,
    train_config: &TrainConfig,
) -> Result<Vec<CodecResult>> {
    if codecs.is_empty() || seeds.is_empty() {
        return Err(Error::InvalidConfig("need at least one codec and one seed".into()));
    }
    codecs
        .iter()
        .map(|&codec| {
            let mut per_seed = Vec::with_capacity(seeds.len());
            for &seed in seeds {
                let enc = EncoderConfig::new(codec)
                    .with_steps(train_config.time_steps)
                    .with_seed(seed);
                let train_set = encode_dataset(&data.train, channels, &enc)?;
                let test_set = encode_dataset(&data.test, channels, &enc)?;
                let mut model = SnnModel::init(arch, seed)?;
                let cfg = TrainConfig {
                    seed,
                    ..train_config.clone()
                };
                train(&mut model, &train_set, &cfg)?;
                per_seed.push((seed, evaluate(&model, &test_set)?));
            }
            let n = per_seed.len() as f64;
            let mean = per_seed.iter().map(|p| p.1).sum::<f64>() / n;
            let stddev = if per_seed.len() < 2 {
                0.0
            } else {
                (per_seed.iter().map(|p| (p.1 - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
            };
            Ok(CodecResult {
                codec,
                per_seed,
                mean,
                stddev,
            })
        })
        .collect()
}

/// `codec,mean_accuracy,stddev_accuracy,per_seed` with `seed:accuracy` pairs
/// joined by `;`.
pub fn compare_csv(results: &[CodecResult]) -> String {
    let mut out = String::from("codec,mean_accuracy,stddev_accuracy,per_seed\n");
    for r in results {
        let seeds: Vec<String> = r.per_seed.iter().map(|(s, a)| format!("{s}:{a:.4}")).collect();
        out.push_str(&format!("{},{:.4},{:.4},{}\n", r.codec, r.mean, r.stddev, seeds.join(";")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labeled(label: usize, value: u8) -> LabeledImage {
        LabeledImage {
            image: RawImage::new(4, 4, 3, vec![value; 48]).unwrap(),
            label,
        }
    }

    #[test]
    fn downscale_means_and_rounds() {
        let img = RawImage::new(2, 2, 1, vec![1, 2, 2, 2]).unwrap();
        assert_eq!(downscale_gray(&img, 1).unwrap().pixels(), &[2]);
        let img = RawImage::new(2, 2, 1, vec![1, 1, 1, 2]).unwrap();
        assert_eq!(downscale_gray(&img, 1).unwrap().pixels(), &[1]);
        let color = RawImage::new(2, 2, 3, [[255u8, 0, 0]; 4].concat()).unwrap();
        assert_eq!(downscale_gray(&color, 1).unwrap().pixels(), &[76]);
        assert!(downscale_gray(&img, 3).is_err());
    }

    #[test]
    fn balanced_selection() {
        let items: Vec<_> = [3, 0, 1, 0, 0, 1, 1, 2].iter().map(|&l| labeled(l, l as u8)).collect();
        let chosen = select_balanced(&items, &[0, 1], 4);
        let labels: Vec<_> = chosen.iter().map(|i| i.label).collect();
        assert_eq!(labels, vec![0, 1, 0, 1]);
        let chosen = select_balanced(&items, &[1, 3], 4);
        assert_eq!(chosen.iter().map(|i| i.label).collect::<Vec<_>>(), vec![1, 0, 0]);

        let protocol = DeskProtocol { classes: vec![1, 3], train_count: 4, test_count: 2, side: 2 };
        assert!(prepare_desk_dataset(&items, &items, &protocol).is_err());
        let protocol = DeskProtocol { classes: vec![0, 1], train_count: 4, test_count: 2, side: 2 };
        let ds = prepare_desk_dataset(&items, &items, &protocol).unwrap();
        assert_eq!((ds.train.len(), ds.test.len()), (4, 2));
        assert_eq!(ds.train[0].image.width(), 2);
        assert_eq!(ds.train[0].image.channels(), 1);
    }

    #[test]
    fn comparison_rows_are_deterministic() {
        let img = |label: usize, v: u8| LabeledImage { image: RawImage::uniform_gray(2, 2, v), label };
        let data = ImageDataset {
            train: vec![img(0, 40), img(1, 220), img(0, 60), img(1, 200)],
            test: vec![img(0, 50), img(1, 210)],
        };
        let arch = Architecture { sizes: vec![4, 3, 2], threshold: 1.0, surrogate_slope: 1.0 };
        let cfg = TrainConfig { epochs: 3, batch_size: 2, time_steps: 8, ..TrainConfig::default() };
        let rows = compare_codecs(&data, &[Codec::If], &[5], ChannelSet::Gray, &arch, &cfg).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].stddev, 0.0);
        let twice = compare_codecs(&data, &[Codec::Rate, Codec::Rate], &[1, 2], ChannelSet::Gray, &arch, &cfg).unwrap();
        assert_eq!(twice[0], twice[1]);
        assert!(compare_codecs(&data, &[], &[1], ChannelSet::Gray, &arch, &cfg).is_err());
        assert!(compare_codecs(&data, &[Codec::If], &[], ChannelSet::Gray, &arch, &cfg).is_err());
        let csv = compare_csv(&rows);
        assert!(csv.starts_with("codec,mean_accuracy,stddev_accuracy,per_seed\nif,"));
        assert_eq!(csv.lines().count(), 2);
    }
}
