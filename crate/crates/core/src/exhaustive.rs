//! Baseline weak learner: full scan over every (type, geometry) candidate.

use rayon::prelude::*;

use crate::boost::WeakClassifier;
use crate::dataset::WeightVector;
use crate::error::{Error, Result};
use crate::haar::{enumerate_geometries, HaarGeometry, HaarType, IntegralDataset};
use crate::stump::{learn_stump, StumpParams};

/// Result of an exhaustive scan.
#[derive(Debug, Clone)]
pub struct ExhaustiveSearch {
    pub classifier: WeakClassifier,
    pub weighted_error: f64,
    /// Exact number of (type, geometry) candidates scored.
    pub candidates_evaluated: u64,
}

/// Total candidate count for a window, without scoring anything.
pub fn count_candidates(window_w: usize, window_h: usize) -> u64 {
    HaarType::ALL
        .iter()
        .map(|&t| enumerate_geometries(t, window_w, window_h).len() as u64)
        .sum()
}

/// Scores every candidate with the exact stump learner and returns the
/// global minimum-weighted-error classifier. Ties break on (type index,
/// enumeration order). Feature values are computed per candidate and not
/// cached, so memory stays linear in the sample count.
pub fn exhaustive_weak_learner(
    data: &IntegralDataset,
    w: &WeightVector,
) -> Result<ExhaustiveSearch> {
    exhaustive_weak_learner_impl(data, w, false)
}

type Scored = (f64, usize, usize, StumpParams);

fn better(a: &Scored, b: &Scored) -> bool {
    (a.0, a.1, a.2) < (b.0, b.1, b.2)
}

pub(crate) fn exhaustive_weak_learner_impl(
    data: &IntegralDataset,
    w: &WeightVector,
    parallel: bool,
) -> Result<ExhaustiveSearch> {
    if data.is_empty() {
        return Err(Error::EmptyDataset);
    }

    let mut candidates: Vec<(usize, usize, HaarGeometry)> = Vec::new();
    for (ti, &t) in HaarType::ALL.iter().enumerate() {
        for (gi, g) in enumerate_geometries(t, data.window_w(), data.window_h())
            .into_iter()
            .enumerate()
        {
            candidates.push((ti, gi, g));
        }
    }
    if candidates.is_empty() {
        return Err(Error::EmptyCandidateSpace {
            window_w: data.window_w(),
            window_h: data.window_h(),
        });
    }

    let score = |&(ti, gi, g): &(usize, usize, HaarGeometry)| -> Scored {
        let t = HaarType::ALL[ti];
        let values = data
            .feature_values(g, t)
            .expect("enumerated geometries are valid");
        let (params, err) =
            learn_stump(&values, data.labels(), w).expect("lengths agree by construction");
        (err, ti, gi, params)
    };

    let best: Scored = if parallel {
        candidates
            .par_iter()
            .map(score)
            .reduce_with(|a, b| if better(&b, &a) { b } else { a })
            .expect("candidate list is non-empty")
    } else {
        let mut best: Option<Scored> = None;
        for cand in &candidates {
            let scored = score(cand);
            if best.as_ref().map_or(true, |b| better(&scored, b)) {
                best = Some(scored);
            }
        }
        best.expect("candidate list is non-empty")
    };

    let (err, ti, gi, params) = best;
    let t = HaarType::ALL[ti];
    let geometry = enumerate_geometries(t, data.window_w(), data.window_h())[gi];
    Ok(ExhaustiveSearch {
        classifier: WeakClassifier {
            geometry,
            haar_type: t,
            polarity: params.polarity,
            threshold: params.threshold,
        },
        weighted_error: err,
        candidates_evaluated: candidates.len() as u64,
    })
}
