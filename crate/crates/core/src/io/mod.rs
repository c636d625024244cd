//! Dataset ingestion, spike container serialization, event export and
//! raster rendering.

mod cifar;
mod container;
mod events;
mod ppm;
mod raster;

pub use cifar::{read_cifar10_batch, read_cifar10_file, LabeledImage, CIFAR10_CLASSES, CIFAR10_RECORD_LEN};
pub use container::{
    read_spike_container, read_spike_container_file, write_spike_container, write_spike_container_file,
    CONTAINER_MAGIC, CONTAINER_VERSION, HEADER_LEN,
};
pub use events::{events, export_event_list, parse_event_list, tensor_from_events, Event, EVENT_HEADER};
pub use ppm::{read_ppm, read_ppm_file, write_ppm, write_ppm_file};
pub use raster::write_raster_svg;
