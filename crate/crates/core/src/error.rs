use std::path::PathBuf;

use thiserror::Error;

use crate::haar::{HaarGeometry, HaarType};

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate weights: all entries are zero")]
    DegenerateWeights,

    #[error("negative weight {value} at index {index}")]
    NegativeWeight { index: usize, value: f64 },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("label must be +1 or -1, got {0}")]
    BadLabel(i64),

    #[error("empty dataset")]
    EmptyDataset,

    #[error("dataset mixes window sizes: {expected_w}x{expected_h} vs {got_w}x{got_h}")]
    MixedWindows {
        expected_w: usize,
        expected_h: usize,
        got_w: usize,
        got_h: usize,
    },

    #[error("training data contains only label {label:+}")]
    SingleClass { label: i8 },

    #[error(
        "window mismatch: classifier expects {model_w}x{model_h}, got {data_w}x{data_h}"
    )]
    WindowMismatch {
        model_w: usize,
        model_h: usize,
        data_w: usize,
        data_h: usize,
    },

    #[error(
        "invalid geometry ({x},{y}) {width}x{height} for {haar_type:?} in {window_w}x{window_h} window"
    )]
    InvalidGeometry {
        x: i64,
        y: i64,
        width: i64,
        height: i64,
        haar_type: HaarType,
        window_w: usize,
        window_h: usize,
    },

    #[error("geometry field {field}={value} outside [0, {max}] for {bits}-bit encoding")]
    FieldOutOfRange {
        field: &'static str,
        value: i64,
        max: i64,
        bits: u32,
    },

    #[error("chromosome has {len} bits, expected {expected}")]
    ChromosomeLength { len: usize, expected: usize },

    #[error("crossover cut {cut} outside [1, {max}]")]
    CutOutOfRange { cut: usize, max: usize },

    #[error("bit index {index} outside [0, {max}]")]
    BitIndexOutOfRange { index: usize, max: usize },

    #[error("invalid config: {0}")]
    Config(String),

    #[error("no valid classifier: every candidate decoded to zero fitness")]
    NoValidClassifier,

    #[error("empty candidate space for {window_w}x{window_h} window")]
    EmptyCandidateSpace { window_w: usize, window_h: usize },

    #[error("weak learner not weak: weighted error {epsilon} >= 0.5")]
    WeakLearnerNotWeak { epsilon: f64 },

    #[error("empty manifest: {}", path.display())]
    EmptyManifest { path: PathBuf },

    #[error("{}:{line}: {msg}", path.display())]
    Manifest {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("{}: {msg}", path.display())]
    FileFormat { path: PathBuf, msg: String },

    #[error("model file: {0}")]
    Model(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid_geometry(
        g: HaarGeometry,
        t: HaarType,
        window_w: usize,
        window_h: usize,
    ) -> Self {
        Error::InvalidGeometry {
            x: g.x,
            y: g.y,
            width: g.width,
            height: g.height,
            haar_type: t,
            window_w,
            window_h,
        }
    }
}
