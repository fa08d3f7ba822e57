//! Plain-text model files with a fixed field order, so identical models
//! serialize to identical bytes.

use std::fs;
use std::path::Path;

use crate::boost::{Stage, StrongClassifier, WeakClassifier};
use crate::error::{Error, Result};
use crate::haar::{HaarGeometry, HaarType};

/// Serializes the model. Floats use the shortest representation that parses
/// back to the same value.
pub fn model_to_string(model: &StrongClassifier) -> String {
    let mut out = String::new();
    out.push_str(&format!("window_w {}\n", model.window_w));
    out.push_str(&format!("window_h {}\n", model.window_h));
    out.push_str(&format!("stages {}\n", model.stages.len()));
    for (i, stage) in model.stages.iter().enumerate() {
        out.push_str(&format!("stage {i}\n"));
        out.push_str(&format!("alpha {}\n", stage.alpha));
        out.push_str(&format!("x {}\n", stage.weak.geometry.x));
        out.push_str(&format!("y {}\n", stage.weak.geometry.y));
        out.push_str(&format!("w {}\n", stage.weak.geometry.width));
        out.push_str(&format!("h {}\n", stage.weak.geometry.height));
        out.push_str(&format!("type {}\n", stage.weak.haar_type.index()));
        out.push_str(&format!("polarity {}\n", stage.weak.polarity));
        out.push_str(&format!("threshold {}\n", stage.weak.threshold));
    }
    out
}

pub fn save_model(path: &Path, model: &StrongClassifier) -> Result<()> {
    model.validate()?;
    fs::write(path, model_to_string(model))?;
    Ok(())
}

struct Lines<'a> {
    iter: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    /// Next `key value` line; the key must match.
    fn expect(&mut self, key: &str) -> Result<&'a str> {
        loop {
            let (idx, raw) = self
                .iter
                .next()
                .ok_or_else(|| Error::Model(format!("missing field {key:?}")))?;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once(' ')
                .ok_or_else(|| Error::Model(format!("line {}: expected key-value", idx + 1)))?;
            if k != key {
                return Err(Error::Model(format!(
                    "line {}: expected field {key:?}, found {k:?}",
                    idx + 1
                )));
            }
            return Ok(v);
        }
    }
}

pub fn parse_model(text: &str) -> Result<StrongClassifier> {
    let mut lines = Lines {
        iter: text.lines().enumerate(),
    };
    let int = |v: &str, what: &str| -> Result<i64> {
        v.parse()
            .map_err(|_| Error::Model(format!("bad {what} value {v:?}")))
    };
    let real = |v: &str, what: &str| -> Result<f64> {
        v.parse::<f64>()
            .map_err(|_| Error::Model(format!("bad {what} value {v:?}")))
            .and_then(|x| {
                if x.is_finite() {
                    Ok(x)
                } else {
                    Err(Error::Model(format!("non-finite {what} value {v:?}")))
                }
            })
    };

    let window_w = int(lines.expect("window_w")?, "window_w")? as usize;
    let window_h = int(lines.expect("window_h")?, "window_h")? as usize;
    let count = int(lines.expect("stages")?, "stages")? as usize;

    let mut stages = Vec::with_capacity(count);
    for i in 0..count {
        let idx = int(lines.expect("stage")?, "stage index")?;
        if idx != i as i64 {
            return Err(Error::Model(format!("stage {idx} out of order, expected {i}")));
        }
        let alpha = real(lines.expect("alpha")?, "alpha")?;
        let x = int(lines.expect("x")?, "x")?;
        let y = int(lines.expect("y")?, "y")?;
        let w = int(lines.expect("w")?, "w")?;
        let h = int(lines.expect("h")?, "h")?;
        let type_index = int(lines.expect("type")?, "type")?;
        let haar_type = HaarType::from_index(type_index as usize)
            .ok_or_else(|| Error::Model(format!("unknown feature type {type_index}")))?;
        let polarity = int(lines.expect("polarity")?, "polarity")?;
        if polarity != 1 && polarity != -1 {
            return Err(Error::Model(format!("polarity {polarity} must be +1 or -1")));
        }
        let threshold = real(lines.expect("threshold")?, "threshold")?;
        stages.push(Stage {
            alpha,
            weak: WeakClassifier {
                geometry: HaarGeometry::new(x, y, w, h),
                haar_type,
                polarity: polarity as i8,
                threshold,
            },
        });
    }

    let model = StrongClassifier {
        window_w,
        window_h,
        stages,
    };
    model.validate()?;
    Ok(model)
}

pub fn load_model(path: &Path) -> Result<StrongClassifier> {
    parse_model(&fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::tempdir;

    fn sample_model() -> StrongClassifier {
        StrongClassifier {
            window_w: 16,
            window_h: 16,
            stages: vec![
                Stage {
                    alpha: 0.5493061443340549,
                    weak: WeakClassifier {
                        geometry: HaarGeometry::new(2, 3, 4, 6),
                        haar_type: HaarType::EdgeV,
                        polarity: -1,
                        threshold: -17.5,
                    },
                },
                Stage {
                    alpha: 1.0,
                    weak: WeakClassifier {
                        geometry: HaarGeometry::new(0, 0, 6, 2),
                        haar_type: HaarType::LineH,
                        polarity: 1,
                        threshold: 0.3333333333333333,
                    },
                },
            ],
        }
    }

    #[test]
    fn round_trips_losslessly() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("model.txt");
        let model = sample_model();
        save_model(&path, &model).unwrap();
        let loaded = load_model(&path).unwrap();
        assert_eq!(loaded, model);
        // byte-stable: saving the loaded model reproduces the file
        let again = dir.path().join("model2.txt");
        save_model(&again, &loaded).unwrap();
        assert_eq!(
            std::fs::read(&path).unwrap(),
            std::fs::read(&again).unwrap()
        );
    }

    #[test]
    fn rejects_invalid_models() {
        // geometry wider than the window
        let mut model = sample_model();
        model.stages[0].weak.geometry.width = 99;
        assert!(parse_model(&model_to_string(&model)).is_err());

        let text = model_to_string(&sample_model());
        assert!(parse_model(&text.replace("polarity -1", "polarity 3")).is_err());
        assert!(parse_model(&text.replace("type 1", "type 9")).is_err());
        assert!(parse_model(&text.replace("stages 2", "stages 3")).is_err());
        assert!(parse_model("window_w 4\n").is_err());
    }
}
