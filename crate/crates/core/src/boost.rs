//! Discrete AdaBoost over haar-feature decision stumps.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use crate::dataset::{weighted_error, Dataset, WeightVector};
use crate::error::{Error, Result};
use crate::exhaustive::exhaustive_weak_learner_impl;
use crate::genetic::{genetic_weak_learner_impl, GeneticConfig};
use crate::haar::{haar_value, is_valid_geometry, HaarGeometry, HaarType, IntegralDataset, IntegralImage};
use crate::stump::{stump_predict, StumpParams};

/// Weighted-error clamp that keeps the stage weight finite.
pub const EPS_CLAMP: f64 = 1e-10;

/// One haar stump: rectangle, feature type, polarity and threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakClassifier {
    pub geometry: HaarGeometry,
    pub haar_type: HaarType,
    pub polarity: i8,
    pub threshold: f64,
}

impl WeakClassifier {
    pub fn stump(&self) -> StumpParams {
        StumpParams {
            polarity: self.polarity,
            threshold: self.threshold,
        }
    }

    pub fn validate(&self, window_w: usize, window_h: usize) -> Result<()> {
        if self.polarity != 1 && self.polarity != -1 {
            return Err(Error::BadLabel(self.polarity as i64));
        }
        if !is_valid_geometry(self.geometry, self.haar_type, window_w, window_h) {
            return Err(Error::invalid_geometry(
                self.geometry,
                self.haar_type,
                window_w,
                window_h,
            ));
        }
        Ok(())
    }
}

/// Thresholded feature response of one weak classifier.
pub fn weak_predict(wk: &WeakClassifier, ii: &IntegralImage) -> Result<i8> {
    let value = haar_value(ii, wk.geometry, wk.haar_type)?;
    Ok(stump_predict(value, wk.stump()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stage {
    pub alpha: f64,
    pub weak: WeakClassifier,
}

/// Weighted vote of the learned stages.
#[derive(Debug, Clone, PartialEq)]
pub struct StrongClassifier {
    pub window_w: usize,
    pub window_h: usize,
    pub stages: Vec<Stage>,
}

impl StrongClassifier {
    pub fn predict(&self, ii: &IntegralImage) -> Result<i8> {
        strong_predict(self, ii)
    }

    pub fn validate(&self) -> Result<()> {
        if self.stages.is_empty() {
            return Err(Error::Model("no stages".into()));
        }
        for stage in &self.stages {
            if !(stage.alpha > 0.0) {
                return Err(Error::Model(format!("stage alpha {} not > 0", stage.alpha)));
            }
            stage.weak.validate(self.window_w, self.window_h)?;
        }
        Ok(())
    }
}

/// Sign of the alpha-weighted stage votes; an exactly zero sum counts as +1.
pub fn strong_predict(s: &StrongClassifier, ii: &IntegralImage) -> Result<i8> {
    if ii.width() != s.window_w || ii.height() != s.window_h {
        return Err(Error::WindowMismatch {
            model_w: s.window_w,
            model_h: s.window_h,
            data_w: ii.width(),
            data_h: ii.height(),
        });
    }
    let mut sum = 0.0;
    for stage in &s.stages {
        sum += stage.alpha * weak_predict(&stage.weak, ii)? as f64;
    }
    Ok(if sum >= 0.0 { 1 } else { -1 })
}

/// Unweighted misclassification fraction of `s` on `data`.
pub fn classification_error(s: &StrongClassifier, data: &Dataset) -> Result<f64> {
    classification_error_prepared(s, &IntegralDataset::from_dataset(data))
}

/// Same as [`classification_error`] but over precomputed integral images.
pub fn classification_error_prepared(s: &StrongClassifier, data: &IntegralDataset) -> Result<f64> {
    if data.window_w() != s.window_w || data.window_h() != s.window_h {
        return Err(Error::WindowMismatch {
            model_w: s.window_w,
            model_h: s.window_h,
            data_w: data.window_w(),
            data_h: data.window_h(),
        });
    }
    if data.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut wrong = 0usize;
    for (ii, &label) in data.integrals().iter().zip(data.labels()) {
        if strong_predict(s, ii)? != label {
            wrong += 1;
        }
    }
    Ok(wrong as f64 / data.len() as f64)
}

/// Weak classifier plus the bookkeeping a boosting round needs.
#[derive(Debug, Clone)]
pub struct LearnedWeak {
    pub classifier: WeakClassifier,
    /// Weighted error as measured by the learner itself.
    pub train_error: f64,
    /// Stump evaluations the search spent.
    pub evaluations: u64,
}

/// A per-round weak classifier search.
pub trait WeakLearner: Sync {
    fn learn(&self, data: &IntegralDataset, w: &WeightVector) -> Result<LearnedWeak>;
}

/// Full scan of every (type, geometry) candidate.
#[derive(Debug, Default)]
pub struct ExhaustiveLearner {
    pub parallel: bool,
}

impl WeakLearner for ExhaustiveLearner {
    fn learn(&self, data: &IntegralDataset, w: &WeightVector) -> Result<LearnedWeak> {
        let found = exhaustive_weak_learner_impl(data, w, self.parallel)?;
        Ok(LearnedWeak {
            classifier: found.classifier,
            train_error: found.weighted_error,
            evaluations: found.candidates_evaluated,
        })
    }
}

/// Genetic search; each boosting round draws a fresh set of seed streams so
/// rounds explore independently while staying reproducible.
#[derive(Debug)]
pub struct GeneticLearner {
    pub config: GeneticConfig,
    pub parallel: bool,
    round: AtomicU64,
}

impl GeneticLearner {
    pub fn new(config: GeneticConfig, parallel: bool) -> Self {
        GeneticLearner {
            config,
            parallel,
            round: AtomicU64::new(0),
        }
    }
}

impl WeakLearner for GeneticLearner {
    fn learn(&self, data: &IntegralDataset, w: &WeightVector) -> Result<LearnedWeak> {
        let round = self.round.fetch_add(1, Ordering::Relaxed);
        let mut cfg = self.config.clone();
        cfg.seed = crate::genetic::run_seed(self.config.seed, 5, round as usize);
        let found = genetic_weak_learner_impl(data, w, &cfg, self.parallel)?;
        Ok(LearnedWeak {
            classifier: found.classifier,
            train_error: found.weighted_error,
            evaluations: found.evaluations,
        })
    }
}

/// What the observer sees after every boosting round.
#[derive(Debug, Clone)]
pub struct RoundStats {
    /// 1-based round number.
    pub round: usize,
    /// Weighted error of the selected weak classifier, before clamping.
    pub epsilon: f64,
    pub alpha: f64,
    pub evaluations: u64,
    pub duration: Duration,
}

/// Discrete AdaBoost: uniform initial weights, multiplicative exponential
/// reweighting, stage weight `alpha = ln((1-eps)/eps) / 2`.
///
/// A round with exactly zero weighted error short-circuits: that single
/// classifier, with alpha 1, becomes the whole model.
pub fn adaboost_train(
    data: &Dataset,
    learner: &dyn WeakLearner,
    rounds: usize,
    observer: &mut dyn FnMut(&RoundStats),
) -> Result<StrongClassifier> {
    if rounds == 0 {
        return Err(Error::Config("round count must be > 0".into()));
    }
    if !data.has_both_labels() {
        let label = data.samples().first().map(|s| s.label).unwrap_or(1);
        return Err(Error::SingleClass { label });
    }

    let prepared = IntegralDataset::from_dataset(data);
    let labels = prepared.labels().to_vec();
    let m = prepared.len();
    let mut w = WeightVector::uniform(m);
    let mut stages = Vec::with_capacity(rounds);

    for round in 1..=rounds {
        let start = Instant::now();
        let learned = learner.learn(&prepared, &w)?;
        let wk = learned.classifier;

        let values = prepared.feature_values(wk.geometry, wk.haar_type)?;
        let preds: Vec<i8> = values
            .iter()
            .map(|&v| stump_predict(v, wk.stump()))
            .collect();
        let eps = weighted_error(&preds, &labels, &w)?;

        if eps == 0.0 {
            observer(&RoundStats {
                round,
                epsilon: 0.0,
                alpha: 1.0,
                evaluations: learned.evaluations,
                duration: start.elapsed(),
            });
            return Ok(StrongClassifier {
                window_w: data.window_w(),
                window_h: data.window_h(),
                stages: vec![Stage {
                    alpha: 1.0,
                    weak: wk,
                }],
            });
        }
        if eps >= 0.5 {
            return Err(Error::WeakLearnerNotWeak { epsilon: eps });
        }

        let eps_c = eps.clamp(EPS_CLAMP, 0.5 - EPS_CLAMP);
        let alpha = 0.5 * ((1.0 - eps_c) / eps_c).ln();

        let up = alpha.exp();
        let down = (-alpha).exp();
        {
            let slots = w.as_mut_slice();
            for i in 0..m {
                slots[i] *= if preds[i] == labels[i] { down } else { up };
            }
        }
        w = crate::dataset::normalize_weights(&w)?;

        stages.push(Stage { alpha, weak: wk });
        observer(&RoundStats {
            round,
            epsilon: eps,
            alpha,
            evaluations: learned.evaluations,
            duration: start.elapsed(),
        });
    }

    Ok(StrongClassifier {
        window_w: data.window_w(),
        window_h: data.window_h(),
        stages,
    })
}
