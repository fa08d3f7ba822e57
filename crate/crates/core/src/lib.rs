//! Boosted haar-feature window classifiers.
//!
//! Trains strong two-class classifiers over fixed-size grayscale windows
//! with discrete AdaBoost. Each boosting round picks the haar decision stump
//! with minimal weighted error, searching the rectangle parameters either
//! exhaustively or with a genetic algorithm whose fitness is the reciprocal
//! weighted error; polarity and threshold are always solved exactly by the
//! stump learner. A benchmark harness compares the two searches on
//! evaluation counts, wall time and train/test error.

pub mod bench;
pub mod boost;
pub mod dataset;
pub mod error;
pub mod exhaustive;
pub mod genetic;
pub mod haar;
pub mod io;
pub mod stump;

pub use boost::{
    adaboost_train, classification_error, strong_predict, weak_predict, ExhaustiveLearner,
    GeneticLearner, RoundStats, Stage, StrongClassifier, WeakClassifier, WeakLearner,
};
pub use dataset::{
    normalize_weights, weighted_error, Dataset, GrayImage, Sample, WeightVector,
};
pub use error::{Error, Result};
pub use exhaustive::{count_candidates, exhaustive_weak_learner, ExhaustiveSearch};
pub use genetic::{
    crossover, decode, encode, evolve, fitness, genetic_weak_learner, mutate, Chromosome,
    GeneticConfig, GeneticSearch, ScoredMember,
};
pub use haar::{
    compute_integral, enumerate_geometries, haar_value, is_valid_geometry, HaarGeometry,
    HaarType, IntegralDataset, IntegralImage,
};
pub use stump::{learn_stump, stump_predict, StumpParams};
