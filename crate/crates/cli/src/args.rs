use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use photospike::{ChannelSet, Codec};

/// Spike encoding toolkit: encode images, inspect spike containers and
/// compare codecs on a small spiking network.
#[derive(Parser, Debug)]
#[command(name = "photospike", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Encode a PPM/PGM image or a CIFAR-10 batch into spike containers
    Encode(EncodeArgs),
    /// Reconstruct an image from a spike container
    Decode(DecodeArgs),
    /// Firing statistics of a spike container as CSV
    Stats(StatsArgs),
    /// Draw selected spike trains as an SVG raster
    Raster(RasterArgs),
    /// Time the encoders over a dataset
    Bench(BenchArgs),
    /// Train one network on the desk-scale CIFAR-10 task
    Train(TrainArgs),
    /// Train one network per codec and seed and tabulate test accuracy
    Compare(CompareArgs),
}

#[derive(Args, Debug, Clone)]
pub struct EncoderArgs {
    /// Channel set; defaults to rgb, or gray for single-channel input
    #[arg(long, value_parser = clap::value_parser!(ChannelSet))]
    pub channels: Option<ChannelSet>,

    /// Number of time steps T
    #[arg(long, default_value_t = 256)]
    pub steps: usize,

    /// Firing threshold as a fraction of full scale
    #[arg(long, default_value_t = 1.0)]
    pub theta: f64,

    /// LIF per-step retention factor in (0, 1]
    #[arg(long, default_value_t = 1.0)]
    pub leak: f64,

    /// Seed for the rate encoder (required for --codec rate)
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args, Debug)]
pub struct EncodeArgs {
    /// Input .ppm/.pgm image or CIFAR-10 binary batch
    pub input: PathBuf,

    #[arg(long, default_value = "if", value_parser = clap::value_parser!(Codec))]
    pub codec: Codec,

    #[command(flatten)]
    pub encoder: EncoderArgs,

    /// Only encode the first N images of a batch
    #[arg(long)]
    pub limit: Option<usize>,

    /// Output container, or output directory for a batch
    #[arg(short, long)]
    pub output: PathBuf,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodeMode {
    Count,
    Ttfs,
}

#[derive(Args, Debug)]
pub struct DecodeArgs {
    pub input: PathBuf,

    #[arg(long, value_enum, default_value_t = DecodeMode::Count)]
    pub mode: DecodeMode,

    /// Output .ppm (colour) or .pgm (gray)
    #[arg(short, long)]
    pub output: PathBuf,
}

#[derive(Args, Debug)]
pub struct StatsArgs {
    pub input: PathBuf,

    /// Window length for the windowed population rate (defaults to T)
    #[arg(long)]
    pub window: Option<usize>,

    /// Write CSV here instead of stdout
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RasterArgs {
    pub input: PathBuf,

    /// Pixels as x,y or x,y,c (channel 0 when omitted)
    #[arg(long, num_args = 1.., required = true)]
    pub pixels: Vec<String>,

    #[arg(short, long)]
    pub output: PathBuf,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Images (.ppm/.pgm) or CIFAR-10 batches
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,

    #[arg(long, value_delimiter = ',', default_value = "if", value_parser = clap::value_parser!(Codec))]
    pub codecs: Vec<Codec>,

    #[command(flatten)]
    pub encoder: EncoderArgs,

    /// Repetitions; the first one is warm-up and not reported
    #[arg(long, default_value_t = 6)]
    pub reps: usize,

    /// Only use the first N images of each batch
    #[arg(long)]
    pub limit: Option<usize>,

    /// Write CSV here instead of stdout
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct DeskArgs {
    /// Directory with data_batch_*.bin and test_batch.bin
    pub dataset: PathBuf,

    /// CIFAR-10 classes to keep
    #[arg(long, value_delimiter = ',', default_value = "0,1")]
    pub classes: Vec<usize>,

    #[arg(long, default_value_t = 1000)]
    pub train_count: usize,

    #[arg(long, default_value_t = 200)]
    pub test_count: usize,

    /// Side length after downscaling
    #[arg(long, default_value_t = 16)]
    pub side: usize,

    #[arg(long, default_value_t = 32)]
    pub steps: usize,

    #[arg(long, default_value_t = 20)]
    pub epochs: usize,

    #[arg(long, default_value_t = 20)]
    pub batch_size: usize,

    #[arg(long, default_value_t = 0.001)]
    pub lr: f64,

    /// Hidden layer widths
    #[arg(long, value_delimiter = ',', default_value = "128")]
    pub hidden: Vec<usize>,

    /// Network neuron threshold
    #[arg(long, default_value_t = 1.0)]
    pub threshold: f64,

    /// Surrogate derivative height (window width is its inverse)
    #[arg(long, default_value_t = 1.0)]
    pub slope: f64,
}

#[derive(Args, Debug)]
pub struct TrainArgs {
    #[command(flatten)]
    pub desk: DeskArgs,

    #[arg(long, default_value = "if", value_parser = clap::value_parser!(Codec))]
    pub codec: Codec,

    /// Seeds initialisation, batch order and the rate encoder
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Model checkpoint output
    #[arg(short, long)]
    pub output: PathBuf,

    /// Per-epoch loss/accuracy CSV
    #[arg(long)]
    pub history: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[command(flatten)]
    pub desk: DeskArgs,

    #[arg(long, value_delimiter = ',', default_value = "if,rate,ttfs", value_parser = clap::value_parser!(Codec))]
    pub codecs: Vec<Codec>,

    #[arg(long, value_delimiter = ',', default_value = "0,1,2")]
    pub seeds: Vec<u64>,

    /// Write CSV here instead of stdout
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}
