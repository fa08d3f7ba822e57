//! Synthetic dataset generator.
//!
//! Positive windows carry a dark-to-bright edge band: a full-width stripe at
//! a random vertical position and of random height (at least a quarter of the
//! window), dark on the left half and bright on the right. Negative windows
//! are pure noise. Noise amplitude scales linearly with `difficulty`, so at
//! difficulty 0 the classes are separable by a single left-minus-right edge
//! feature.

use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dataset::{Dataset, GrayImage, Sample};
use crate::error::{Error, Result};
use crate::io::manifest::write_manifest;
use crate::io::pgm::write_pgm;

// Band contrast is kept small relative to the full noise range so the task
// degrades smoothly: separable at difficulty 0, noisy but learnable midway,
// near chance level at 1.
const DARK: u16 = 128;
const BRIGHT: u16 = 160;

#[derive(Debug, Clone)]
pub struct GenDataOptions {
    pub count: usize,
    pub window: usize,
    pub seed: u64,
    pub difficulty: f64,
}

impl GenDataOptions {
    pub fn validate(&self) -> Result<()> {
        if self.count < 2 {
            return Err(Error::Config(format!(
                "count must be >= 2, got {}",
                self.count
            )));
        }
        if self.window < 8 {
            return Err(Error::Config(format!(
                "window must be >= 8, got {}",
                self.window
            )));
        }
        if !(0.0..=1.0).contains(&self.difficulty) {
            return Err(Error::Config(format!(
                "difficulty must be in [0, 1], got {}",
                self.difficulty
            )));
        }
        Ok(())
    }
}

/// The images and labels `gen_data` would write, in manifest order:
/// labels alternate starting with +1, so any prefix stays balanced.
pub fn generate_samples(opts: &GenDataOptions) -> Result<Vec<Sample>> {
    opts.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let w = opts.window;
    let amplitude = (255.0 * opts.difficulty).round() as u16;

    let mut samples = Vec::with_capacity(opts.count);
    for i in 0..opts.count {
        let label: i8 = if i % 2 == 0 { 1 } else { -1 };
        let mut pixels = vec![0u16; w * w];
        if label == 1 {
            let min_band = (w / 4).max(1);
            let band_h = rng.gen_range(min_band..=w);
            let band_y = rng.gen_range(0..=w - band_h);
            for y in band_y..band_y + band_h {
                for x in 0..w {
                    pixels[y * w + x] = if x < w / 2 { DARK } else { BRIGHT };
                }
            }
        }
        let bytes: Vec<u8> = pixels
            .iter()
            .map(|&base| (base + rng.gen_range(0..=amplitude)).min(255) as u8)
            .collect();
        samples.push(Sample::new(GrayImage::new(w, w, bytes)?, label)?);
    }
    Ok(samples)
}

/// In-memory variant for callers that do not need files on disk.
pub fn generate_dataset(opts: &GenDataOptions) -> Result<Dataset> {
    Dataset::new(generate_samples(opts)?)
}

/// Writes `count` PGM images plus `manifest.txt` into `out_dir` and returns
/// the manifest path. Byte-identical output for identical options.
pub fn gen_data(out_dir: &Path, opts: &GenDataOptions) -> Result<PathBuf> {
    let samples = generate_samples(opts)?;
    fs::create_dir_all(out_dir)?;

    let mut entries = Vec::with_capacity(samples.len());
    for (i, sample) in samples.iter().enumerate() {
        let name = format!("img_{i:05}.pgm");
        write_pgm(&out_dir.join(&name), &sample.image)?;
        entries.push((name, sample.label));
    }
    let manifest = out_dir.join("manifest.txt");
    write_manifest(&manifest, &entries)?;
    Ok(manifest)
}
