//! Reference spiking network of integrate-and-fire neurons, trained with
//! surrogate gradients, used to compare encoders end to end.

pub mod checkpoint;
pub mod desk;
pub mod model;
pub mod network;
pub mod train;

pub use checkpoint::{read_checkpoint, read_checkpoint_file, write_checkpoint, write_checkpoint_file};
pub use desk::{compare_codecs, compare_csv, encode_dataset, load_cifar10_desk, CodecResult, DeskProtocol, ImageDataset};
pub use model::{Architecture, Gradients, Layer, SnnModel};
pub use network::{forward, forward_outputs, loss_and_grad, BatchResult, Mode, SpikeSample};
pub use train::{evaluate, history_csv, train, EpochRecord, TrainConfig};
