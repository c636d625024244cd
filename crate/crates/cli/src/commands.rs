use std::fmt;
use std::fs;
use std::path::Path;

use photospike::analysis::{bench_csv, bench_encode, firing_stats, stats_csv};
use photospike::codecs::{decode_count, decode_ttfs};
use photospike::io::{
    read_cifar10_batch, read_ppm, read_spike_container_file, write_ppm_file, write_raster_svg,
    write_spike_container_file,
};
use photospike::photoreceptor::{encode_photoreceptor, reconstruct_image};
use photospike::snn::checkpoint::write_checkpoint_file;
use photospike::snn::desk::{compare_codecs, compare_csv, encode_dataset, load_cifar10_desk, DeskProtocol};
use photospike::snn::{evaluate, history_csv, train, Architecture, SnnModel, TrainConfig};
use photospike::{ChannelSet, Codec, EncoderConfig, RawImage};

use crate::args::{
    BenchArgs, CompareArgs, DecodeArgs, DecodeMode, DeskArgs, EncodeArgs, EncoderArgs, RasterArgs, StatsArgs,
    TrainArgs,
};

#[derive(Debug)]
pub enum CliError {
    /// Bad flag combination; exit code 2.
    Usage(String),
    /// Unreadable or malformed data; exit code 1.
    Data(photospike::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Data(err) => write!(f, "error: {err}"),
        }
    }
}

impl From<photospike::Error> for CliError {
    fn from(err: photospike::Error) -> Self {
        CliError::Data(err)
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Data(err.into())
    }
}

type CliResult<T = ()> = Result<T, CliError>;

enum Input {
    Image(RawImage),
    Batch(Vec<RawImage>),
}

fn load_input(path: &Path, limit: Option<usize>) -> CliResult<Input> {
    let bytes = fs::read(path)?;
    if bytes.starts_with(b"P5") || bytes.starts_with(b"P6") {
        return Ok(Input::Image(read_ppm(&bytes)?));
    }
    let records = read_cifar10_batch(&bytes)?;
    let take = limit.unwrap_or(records.len());
    Ok(Input::Batch(records.into_iter().take(take).map(|r| r.image).collect()))
}

fn encoder_config(codec: Codec, args: &EncoderArgs) -> CliResult<EncoderConfig> {
    let seed = match (codec, args.seed) {
        (Codec::Rate, None) => return Err(CliError::Usage("--codec rate requires --seed".into())),
        (_, seed) => seed.unwrap_or(0),
    };
    let config = EncoderConfig::new(codec)
        .with_steps(args.steps)
        .with_threshold(args.theta)
        .with_leak(args.leak)
        .with_seed(seed);
    config.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(config)
}

fn channels_for(args: &EncoderArgs, image: &RawImage) -> ChannelSet {
    args.channels.unwrap_or(if image.channels() == 1 {
        ChannelSet::Gray
    } else {
        ChannelSet::Rgb
    })
}

fn write_text(output: Option<&Path>, text: &str) -> CliResult {
    match output {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

pub fn encode(args: &EncodeArgs) -> CliResult {
    let config = encoder_config(args.codec, &args.encoder)?;
    match load_input(&args.input, args.limit)? {
        Input::Image(image) => {
            let spikes = encode_photoreceptor(&image, channels_for(&args.encoder, &image), &config)?;
            write_spike_container_file(&args.output, &spikes)?;
        }
        Input::Batch(images) => {
            fs::create_dir_all(&args.output)?;
            for (i, image) in images.iter().enumerate() {
                let spikes = encode_photoreceptor(image, channels_for(&args.encoder, image), &config)?;
                write_spike_container_file(args.output.join(format!("{i:05}.spk")), &spikes)?;
            }
            eprintln!("encoded {} images into {}", images.len(), args.output.display());
        }
    }
    Ok(())
}

pub fn decode(args: &DecodeArgs) -> CliResult {
    let spikes = read_spike_container_file(&args.input)?;
    let planes = match args.mode {
        DecodeMode::Count => decode_count(&spikes),
        DecodeMode::Ttfs => decode_ttfs(&spikes)?,
    };
    let image = reconstruct_image(&planes, spikes.provenance().channel_set)?;
    write_ppm_file(&args.output, &image)?;
    Ok(())
}

pub fn stats(args: &StatsArgs) -> CliResult {
    let spikes = read_spike_container_file(&args.input)?;
    let window = args.window.unwrap_or(spikes.time_steps());
    if window == 0 || window > spikes.time_steps() {
        return Err(CliError::Usage(format!(
            "--window must lie in 1..={}",
            spikes.time_steps()
        )));
    }
    write_text(args.output.as_deref(), &stats_csv(&firing_stats(&spikes, window)?))
}

fn parse_pixel(text: &str) -> CliResult<(usize, usize, usize)> {
    let parts: Vec<usize> = text
        .split(',')
        .map(|p| p.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("bad pixel '{text}', expected x,y or x,y,c")))?;
    match parts[..] {
        [x, y] => Ok((x, y, 0)),
        [x, y, c] => Ok((x, y, c)),
        _ => Err(CliError::Usage(format!("bad pixel '{text}', expected x,y or x,y,c"))),
    }
}

pub fn raster(args: &RasterArgs) -> CliResult {
    let selection = args.pixels.iter().map(|p| parse_pixel(p)).collect::<CliResult<Vec<_>>>()?;
    let spikes = read_spike_container_file(&args.input)?;
    fs::write(&args.output, write_raster_svg(&spikes, &selection)?)?;
    Ok(())
}

pub fn bench(args: &BenchArgs) -> CliResult {
    if args.reps < 2 {
        return Err(CliError::Usage("--reps must be at least 2 (the first is warm-up)".into()));
    }
    let configs = args
        .codecs
        .iter()
        .map(|&codec| encoder_config(codec, &args.encoder))
        .collect::<CliResult<Vec<_>>>()?;
    let mut images = Vec::new();
    for path in &args.inputs {
        match load_input(path, args.limit)? {
            Input::Image(image) => images.push(image),
            Input::Batch(batch) => images.extend(batch),
        }
    }
    let channels = match images.first() {
        Some(first) => channels_for(&args.encoder, first),
        None => return Err(CliError::Data(photospike::Error::EmptyDataset)),
    };
    let mut rows = Vec::new();
    for config in configs {
        let report = bench_encode(&config, channels, &images, args.reps)?;
        rows.push((config.codec, channels, images.len(), report));
    }
    write_text(args.output.as_deref(), &bench_csv(&rows))
}

fn protocol(desk: &DeskArgs) -> CliResult<DeskProtocol> {
    if desk.classes.len() < 2 {
        return Err(CliError::Usage("--classes needs at least two classes".into()));
    }
    Ok(DeskProtocol {
        classes: desk.classes.clone(),
        train_count: desk.train_count,
        test_count: desk.test_count,
        side: desk.side,
    })
}

fn architecture(desk: &DeskArgs) -> Architecture {
    let mut sizes = vec![desk.side * desk.side];
    sizes.extend(&desk.hidden);
    sizes.push(desk.classes.len());
    Architecture {
        sizes,
        threshold: desk.threshold,
        surrogate_slope: desk.slope,
    }
}

fn train_config(desk: &DeskArgs, seed: u64) -> TrainConfig {
    TrainConfig {
        learning_rate: desk.lr,
        epochs: desk.epochs,
        batch_size: desk.batch_size,
        seed,
        time_steps: desk.steps,
    }
}

pub fn train_desk(args: &TrainArgs) -> CliResult {
    let desk = &args.desk;
    let encoder = EncoderConfig::new(args.codec)
        .with_steps(desk.steps)
        .with_seed(args.seed);
    encoder.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let data = load_cifar10_desk(&desk.dataset, &protocol(desk)?)?;
    let train_set = encode_dataset(&data.train, ChannelSet::Gray, &encoder)?;
    let test_set = encode_dataset(&data.test, ChannelSet::Gray, &encoder)?;
    let mut model = SnnModel::init(&architecture(desk), args.seed)?;
    let history = train(&mut model, &train_set, &train_config(desk, args.seed))?;
    let accuracy = evaluate(&model, &test_set)?;
    write_checkpoint_file(&args.output, &model)?;
    if let Some(path) = &args.history {
        fs::write(path, history_csv(&history))?;
    }
    println!("{} test accuracy {accuracy:.4}", args.codec);
    Ok(())
}

pub fn compare(args: &CompareArgs) -> CliResult {
    let desk = &args.desk;
    let data = load_cifar10_desk(&desk.dataset, &protocol(desk)?)?;
    let rows = compare_codecs(
        &data,
        &args.codecs,
        &args.seeds,
        ChannelSet::Gray,
        &architecture(desk),
        &train_config(desk, 0),
    )?;
    write_text(args.output.as_deref(), &compare_csv(&rows))
}
