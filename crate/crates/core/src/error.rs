use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid image: {0}")]
    InvalidImage(String),

    #[error("invalid encoder configuration: {0}")]
    InvalidConfig(String),

    #[error("operation needs a 3-channel colour image, got {channels} channel(s)")]
    NotColor { channels: usize },

    #[error("pixel {index} has {count} spikes; a time-to-first-spike train carries at most one")]
    MultipleSpikes { index: usize, count: usize },

    #[error("malformed image header: {0}")]
    MalformedHeader(String),

    #[error("image payload truncated: expected {expected} bytes, found {found}")]
    TruncatedPayload { expected: usize, found: usize },

    #[error("unsupported maxval {0} (only 255 is supported)")]
    UnsupportedMaxval(u32),

    #[error("CIFAR-10 batch length {0} is not a multiple of 3073")]
    BadRecordCount(usize),

    #[error("record {record} has label {label}, expected 0..=9")]
    BadLabel { record: usize, label: u8 },

    #[error("bad container magic {0:?}")]
    BadMagic([u8; 4]),

    #[error("unsupported container version {0}")]
    VersionMismatch(u16),

    #[error("length mismatch: expected {expected} bytes, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("unknown {kind} code {code}")]
    UnknownCode { kind: &'static str, code: u8 },

    #[error("coordinate out of bounds: {0}")]
    OutOfBounds(String),

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
