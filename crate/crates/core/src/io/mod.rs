//! File formats: PGM images, dataset manifests, model files and the
//! synthetic data generator.

pub mod gendata;
pub mod manifest;
pub mod model;
pub mod pgm;

pub use gendata::{gen_data, generate_dataset, generate_samples, GenDataOptions};
pub use manifest::{load_dataset, write_manifest};
pub use model::{load_model, model_to_string, parse_model, save_model};
pub use pgm::{read_pgm, write_pgm};
