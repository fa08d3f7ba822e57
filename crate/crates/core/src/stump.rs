//! Decision stumps over scalar feature values: the exact sub-learner for the
//! linked polarity/threshold parameters.

use crate::dataset::{weighted_error, WeightVector};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StumpParams {
    /// +1 or -1; the label emitted above the threshold.
    pub polarity: i8,
    pub threshold: f64,
}

/// Ties at `value == threshold` fall on the negated-polarity side.
pub fn stump_predict(value: f64, p: StumpParams) -> i8 {
    if value > p.threshold {
        p.polarity
    } else {
        -p.polarity
    }
}

/// Finds the (polarity, threshold) pair with minimal weighted error in
/// O(n log n).
///
/// Candidate thresholds are a sentinel below the smallest value, the
/// midpoints between consecutive distinct sorted values, and a sentinel
/// above the largest value, so the learned threshold never coincides with a
/// training value. Equal-error ties go to the smallest threshold, then to
/// polarity +1. The returned error is recomputed with [`weighted_error`] on
/// the winning stump's predictions.
pub fn learn_stump(
    values: &[f64],
    labels: &[i8],
    w: &WeightVector,
) -> Result<(StumpParams, f64)> {
    if values.len() != labels.len() {
        return Err(Error::LengthMismatch {
            left: values.len(),
            right: labels.len(),
        });
    }
    if labels.len() != w.len() {
        return Err(Error::LengthMismatch {
            left: labels.len(),
            right: w.len(),
        });
    }
    if values.is_empty() {
        return Err(Error::EmptyDataset);
    }

    let weights = w.as_slice();
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_unstable_by(|&a, &b| values[a].total_cmp(&values[b]));

    let mut w_pos = 0.0;
    let mut w_neg = 0.0;
    for i in 0..labels.len() {
        if labels[i] == 1 {
            w_pos += weights[i];
        } else {
            w_neg += weights[i];
        }
    }

    let mut best: Option<(f64, f64, i8)> = None; // (error, threshold, polarity)
    let consider = |err: f64, threshold: f64, polarity: i8, best: &mut Option<(f64, f64, i8)>| {
        if best.map_or(true, |(e, _, _)| err < e) {
            *best = Some((err, threshold, polarity));
        }
    };

    // Sweep thresholds in ascending order. s_pos / s_neg hold the weight of
    // samples at or below the current threshold, per label.
    let mut s_pos = 0.0;
    let mut s_neg = 0.0;
    let low_sentinel = values[order[0]] - 1.0;
    let err_pos = w_neg; // everything predicted +1
    consider(err_pos, low_sentinel, 1, &mut best);
    consider(w_pos, low_sentinel, -1, &mut best);

    let mut i = 0;
    while i < order.len() {
        let v = values[order[i]];
        // absorb the whole group of equal values
        while i < order.len() && values[order[i]] == v {
            let idx = order[i];
            if labels[idx] == 1 {
                s_pos += weights[idx];
            } else {
                s_neg += weights[idx];
            }
            i += 1;
        }
        let threshold = if i < order.len() {
            (v + values[order[i]]) / 2.0
        } else {
            v + 1.0
        };
        // polarity +1 errs on negatives above and positives at/below
        let err_pos = (w_neg - s_neg) + s_pos;
        let err_neg = (w_pos - s_pos) + s_neg;
        consider(err_pos, threshold, 1, &mut best);
        consider(err_neg, threshold, -1, &mut best);
    }

    let (_, threshold, polarity) = best.expect("non-empty input always yields a candidate");
    let params = StumpParams {
        polarity,
        threshold,
    };
    let preds: Vec<i8> = values.iter().map(|&v| stump_predict(v, params)).collect();
    let err = weighted_error(&preds, labels, w)?;
    Ok((params, err))
}
