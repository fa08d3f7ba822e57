//! Samples, datasets and the weighted error that boosting minimizes.
//!
//! Labels are `{-1, +1}` throughout; any external 0/1 labeling is converted
//! at ingestion. Weights are kept normalized so errors stay in `[0, 1]`.

use crate::error::{Error, Result};

/// Row-major 8-bit grayscale raster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 || pixels.len() != width * height {
            return Err(Error::Config(format!(
                "image {}x{} needs {} pixels, got {}",
                width,
                height,
                width * height,
                pixels.len()
            )));
        }
        Ok(GrayImage {
            width,
            height,
            pixels,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }
}

/// Validates that `label` is one of `{-1, +1}`.
pub fn check_label(label: i64) -> Result<i8> {
    match label {
        1 => Ok(1),
        -1 => Ok(-1),
        other => Err(Error::BadLabel(other)),
    }
}

#[derive(Debug, Clone)]
pub struct Sample {
    pub image: GrayImage,
    pub label: i8,
}

impl Sample {
    pub fn new(image: GrayImage, label: i8) -> Result<Self> {
        check_label(label as i64)?;
        Ok(Sample { image, label })
    }
}

/// Non-empty collection of equally sized labeled windows.
#[derive(Debug, Clone)]
pub struct Dataset {
    window_w: usize,
    window_h: usize,
    samples: Vec<Sample>,
}

impl Dataset {
    pub fn new(samples: Vec<Sample>) -> Result<Self> {
        let first = samples.first().ok_or(Error::EmptyDataset)?;
        let (window_w, window_h) = (first.image.width(), first.image.height());
        for s in &samples {
            if s.image.width() != window_w || s.image.height() != window_h {
                return Err(Error::MixedWindows {
                    expected_w: window_w,
                    expected_h: window_h,
                    got_w: s.image.width(),
                    got_h: s.image.height(),
                });
            }
        }
        Ok(Dataset {
            window_w,
            window_h,
            samples,
        })
    }

    pub fn window_w(&self) -> usize {
        self.window_w
    }

    pub fn window_h(&self) -> usize {
        self.window_h
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn labels(&self) -> Vec<i8> {
        self.samples.iter().map(|s| s.label).collect()
    }

    pub fn has_both_labels(&self) -> bool {
        let mut pos = false;
        let mut neg = false;
        for s in &self.samples {
            pos |= s.label == 1;
            neg |= s.label == -1;
        }
        pos && neg
    }
}

/// One non-negative weight per sample.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        for (index, &value) in weights.iter().enumerate() {
            if !(value >= 0.0) {
                return Err(Error::NegativeWeight { index, value });
            }
        }
        Ok(WeightVector(weights))
    }

    /// Uniform 1/n vector.
    pub fn uniform(n: usize) -> Self {
        WeightVector(vec![1.0 / n as f64; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.0
    }
}

/// Rescales so the entries sum to one. All-zero input is rejected.
pub fn normalize_weights(w: &WeightVector) -> Result<WeightVector> {
    let total = w.sum();
    if total <= 0.0 {
        return Err(Error::DegenerateWeights);
    }
    Ok(WeightVector(w.as_slice().iter().map(|x| x / total).collect()))
}

/// Sum of weights over indices where the prediction disagrees with the label.
///
/// Expects `w` normalized; the result is then in `[0, 1]`.
pub fn weighted_error(predictions: &[i8], labels: &[i8], w: &WeightVector) -> Result<f64> {
    if predictions.len() != labels.len() {
        return Err(Error::LengthMismatch {
            left: predictions.len(),
            right: labels.len(),
        });
    }
    if labels.len() != w.len() {
        return Err(Error::LengthMismatch {
            left: labels.len(),
            right: w.len(),
        });
    }
    let mut err = 0.0;
    for i in 0..labels.len() {
        if predictions[i] != labels[i] {
            err += w.as_slice()[i];
        }
    }
    Ok(err)
}
