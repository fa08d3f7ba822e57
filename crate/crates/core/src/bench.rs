//! Instrumented learner comparison: per-round wall time, evaluation counts,
//! acceleration ratios and train/test errors, emitted as CSV.

use std::time::Duration;

use crate::boost::{
    adaboost_train, classification_error_prepared, ExhaustiveLearner, GeneticLearner, RoundStats,
    WeakLearner,
};
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::exhaustive::count_candidates;
use crate::genetic::GeneticConfig;
use crate::haar::IntegralDataset;

pub const CSV_HEADER: &str =
    "learner,S,N,Kmax,Rc,Rm,rounds,sec_per_round,evals_per_round,accel_time,accel_evals,train_error,test_error";

/// One learner to benchmark.
#[derive(Debug, Clone, PartialEq)]
pub enum LearnerConfig {
    Exhaustive,
    Genetic {
        restarts_s: usize,
        population_n: usize,
        generations_kmax: usize,
        crossover_rate: f64,
        mutation_rate: f64,
    },
}

/// One emitted benchmark row. Genetic knob columns stay empty for the
/// exhaustive learner; `accel_time` stays empty when no exhaustive row was
/// timed in the same invocation.
#[derive(Debug, Clone)]
pub struct BenchRow {
    pub learner: &'static str,
    pub restarts_s: Option<usize>,
    pub population_n: Option<usize>,
    pub generations_kmax: Option<usize>,
    pub crossover_rate: Option<f64>,
    pub mutation_rate: Option<f64>,
    pub rounds: usize,
    pub sec_per_round: f64,
    pub evals_per_round: f64,
    pub accel_time: Option<f64>,
    pub accel_evals: f64,
    pub train_error: f64,
    pub test_error: f64,
}

#[derive(Debug, Clone)]
pub struct BenchOptions {
    pub rounds: usize,
    pub seed: u64,
    /// Lets learners use worker threads. Timing columns are then no longer
    /// comparable; leave this off for timed comparisons.
    pub parallel: bool,
}

/// Parses the learner config file: one config per line, either
/// `exhaustive` or `genetic <S> <N> <Kmax> <Rc> <Rm>`. Blank lines and
/// `#` comments are skipped.
pub fn parse_configs(text: &str) -> Result<Vec<LearnerConfig>> {
    let mut configs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: String| Error::Config(format!("configs line {}: {}", idx + 1, msg));
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("exhaustive") => {
                if parts.next().is_some() {
                    return Err(bad("exhaustive takes no parameters".into()));
                }
                configs.push(LearnerConfig::Exhaustive);
            }
            Some("genetic") => {
                let fields: Vec<&str> = parts.collect();
                if fields.len() != 5 {
                    return Err(bad(format!(
                        "genetic needs 5 parameters (S N Kmax Rc Rm), got {}",
                        fields.len()
                    )));
                }
                let parse_usize = |s: &str, name: &str| {
                    s.parse::<usize>()
                        .map_err(|_| bad(format!("bad {name} value {s:?}")))
                };
                let parse_f64 = |s: &str, name: &str| {
                    s.parse::<f64>()
                        .map_err(|_| bad(format!("bad {name} value {s:?}")))
                };
                configs.push(LearnerConfig::Genetic {
                    restarts_s: parse_usize(fields[0], "S")?,
                    population_n: parse_usize(fields[1], "N")?,
                    generations_kmax: parse_usize(fields[2], "Kmax")?,
                    crossover_rate: parse_f64(fields[3], "Rc")?,
                    mutation_rate: parse_f64(fields[4], "Rm")?,
                });
            }
            Some(other) => return Err(bad(format!("unknown learner {other:?}"))),
            None => unreachable!("blank lines were skipped"),
        }
    }
    if configs.is_empty() {
        return Err(Error::Config("configs file lists no learners".into()));
    }
    Ok(configs)
}

struct MeasuredRun {
    rounds: usize,
    mean_seconds: f64,
    mean_evals: f64,
    train_error: f64,
    test_error: f64,
}

fn run_config(
    config: &LearnerConfig,
    train: &Dataset,
    train_prepared: &IntegralDataset,
    test_prepared: &IntegralDataset,
    opts: &BenchOptions,
) -> Result<MeasuredRun> {
    let learner: Box<dyn WeakLearner> = match config {
        LearnerConfig::Exhaustive => Box::new(ExhaustiveLearner {
            parallel: opts.parallel,
        }),
        LearnerConfig::Genetic {
            restarts_s,
            population_n,
            generations_kmax,
            crossover_rate,
            mutation_rate,
        } => Box::new(GeneticLearner::new(
            GeneticConfig {
                population_n: *population_n,
                generations_kmax: *generations_kmax,
                crossover_rate: *crossover_rate,
                mutation_rate: *mutation_rate,
                restarts_s: *restarts_s,
                seed: opts.seed,
            },
            opts.parallel,
        )),
    };

    let mut durations: Vec<Duration> = Vec::with_capacity(opts.rounds);
    let mut evals: Vec<u64> = Vec::with_capacity(opts.rounds);
    let model = adaboost_train(train, learner.as_ref(), opts.rounds, &mut |s: &RoundStats| {
        durations.push(s.duration);
        evals.push(s.evaluations);
    })?;

    let rounds = durations.len();
    let mean_seconds =
        durations.iter().map(Duration::as_secs_f64).sum::<f64>() / rounds as f64;
    let mean_evals = evals.iter().sum::<u64>() as f64 / rounds as f64;
    Ok(MeasuredRun {
        rounds,
        mean_seconds,
        mean_evals,
        train_error: classification_error_prepared(&model, train_prepared)?,
        test_error: classification_error_prepared(&model, test_prepared)?,
    })
}

/// Trains one strong classifier per config and reports rows in config
/// order. Evaluation-count acceleration is measured against the exhaustive
/// row when one is present, otherwise against the counted (untimed)
/// exhaustive candidate total; wall-clock acceleration needs a timed
/// exhaustive row.
pub fn run_benchmark(
    train: &Dataset,
    test: &Dataset,
    configs: &[LearnerConfig],
    opts: &BenchOptions,
) -> Result<Vec<BenchRow>> {
    if configs.is_empty() {
        return Err(Error::Config("no learner configs given".into()));
    }
    if train.window_w() != test.window_w() || train.window_h() != test.window_h() {
        return Err(Error::WindowMismatch {
            model_w: train.window_w(),
            model_h: train.window_h(),
            data_w: test.window_w(),
            data_h: test.window_h(),
        });
    }

    let train_prepared = IntegralDataset::from_dataset(train);
    let test_prepared = IntegralDataset::from_dataset(test);

    let runs: Vec<MeasuredRun> = configs
        .iter()
        .map(|c| run_config(c, train, &train_prepared, &test_prepared, opts))
        .collect::<Result<_>>()?;

    let baseline = configs
        .iter()
        .position(|c| *c == LearnerConfig::Exhaustive);
    let baseline_evals = match baseline {
        Some(i) => runs[i].mean_evals,
        None => count_candidates(train.window_w(), train.window_h()) as f64,
    };
    let baseline_seconds = baseline.map(|i| runs[i].mean_seconds);

    let rows = configs
        .iter()
        .zip(&runs)
        .map(|(config, run)| {
            let (learner, s, n, kmax, rc, rm) = match config {
                LearnerConfig::Exhaustive => ("exhaustive", None, None, None, None, None),
                LearnerConfig::Genetic {
                    restarts_s,
                    population_n,
                    generations_kmax,
                    crossover_rate,
                    mutation_rate,
                } => (
                    "genetic",
                    Some(*restarts_s),
                    Some(*population_n),
                    Some(*generations_kmax),
                    Some(*crossover_rate),
                    Some(*mutation_rate),
                ),
            };
            BenchRow {
                learner,
                restarts_s: s,
                population_n: n,
                generations_kmax: kmax,
                crossover_rate: rc,
                mutation_rate: rm,
                rounds: run.rounds,
                sec_per_round: run.mean_seconds,
                evals_per_round: run.mean_evals,
                accel_time: baseline_seconds.map(|b| b / run.mean_seconds),
                accel_evals: baseline_evals / run.mean_evals,
                train_error: run.train_error,
                test_error: run.test_error,
            }
        })
        .collect();
    Ok(rows)
}

/// Plain decimal with 6 significant digits, no exponent notation.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0.00000".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (5 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Counts print as plain integers when they are whole.
fn fmt_count(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 9e15 {
        format!("{}", x as i64)
    } else {
        sig6(x)
    }
}

fn fmt_opt<T: ToString>(v: &Option<T>, to: impl Fn(&T) -> String) -> String {
    v.as_ref().map(|x| to(x)).unwrap_or_default()
}

pub fn rows_to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.learner,
            fmt_opt(&r.restarts_s, |v| v.to_string()),
            fmt_opt(&r.population_n, |v| v.to_string()),
            fmt_opt(&r.generations_kmax, |v| v.to_string()),
            fmt_opt(&r.crossover_rate, |v| sig6(*v)),
            fmt_opt(&r.mutation_rate, |v| sig6(*v)),
            r.rounds,
            sig6(r.sec_per_round),
            fmt_count(r.evals_per_round),
            fmt_opt(&r.accel_time, |v| sig6(*v)),
            sig6(r.accel_evals),
            sig6(r.train_error),
            sig6(r.test_error),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{GrayImage, Sample};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn noisy_dataset(seed: u64, n: usize, w: usize, h: usize) -> Dataset {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let samples: Vec<Sample> = (0..n)
            .map(|i| {
                let label: i8 = if i % 2 == 0 { 1 } else { -1 };
                let px: Vec<u8> = (0..w * h)
                    .map(|_| {
                        let base = if label == 1 { 160 } else { 60 };
                        rng.gen_range(0..80) + base
                    })
                    .collect();
                Sample::new(GrayImage::new(w, h, px).unwrap(), label).unwrap()
            })
            .collect();
        Dataset::new(samples).unwrap()
    }

    #[test]
    fn sig6_formats_six_significant_digits() {
        assert_eq!(sig6(928.52), "928.520");
        assert_eq!(sig6(0.0356), "0.0356000");
        assert_eq!(sig6(1.0), "1.00000");
        assert_eq!(sig6(129.8688), "129.869");
        assert_eq!(sig6(0.0), "0.00000");
        assert_eq!(sig6(162336.0), "162336");
    }

    #[test]
    fn parse_configs_round_trip() {
        let text = "# comment\nexhaustive\n\ngenetic 1 50 10 0.3 0.1\n";
        let configs = parse_configs(text).unwrap();
        assert_eq!(
            configs,
            vec![
                LearnerConfig::Exhaustive,
                LearnerConfig::Genetic {
                    restarts_s: 1,
                    population_n: 50,
                    generations_kmax: 10,
                    crossover_rate: 0.3,
                    mutation_rate: 0.1
                }
            ]
        );
        assert!(parse_configs("genetic 1 50\n").is_err());
        assert!(parse_configs("annealing 3\n").is_err());
        assert!(parse_configs("# nothing\n").is_err());
    }

    #[test]
    fn benchmark_emits_one_row_per_config_in_order() {
        let train = noisy_dataset(1, 16, 6, 6);
        let test = noisy_dataset(2, 16, 6, 6);
        let configs = vec![
            LearnerConfig::Genetic {
                restarts_s: 1,
                population_n: 10,
                generations_kmax: 3,
                crossover_rate: 0.3,
                mutation_rate: 0.1,
            },
            LearnerConfig::Exhaustive,
        ];
        let opts = BenchOptions {
            rounds: 2,
            seed: 5,
            parallel: false,
        };
        let rows = run_benchmark(&train, &test, &configs, &opts).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].learner, "genetic");
        assert_eq!(rows[1].learner, "exhaustive");
        assert_eq!(rows[1].accel_time, Some(1.0));
        assert_eq!(rows[1].accel_evals, 1.0);
        assert_eq!(rows[1].evals_per_round, count_candidates(6, 6) as f64);
        // ratio recomputable from the emitted counters
        let expected = rows[1].evals_per_round / rows[0].evals_per_round;
        assert_eq!(rows[0].accel_evals, expected);
    }

    #[test]
    fn rows_are_deterministic_except_timing() {
        let train = noisy_dataset(3, 12, 6, 6);
        let test = noisy_dataset(4, 12, 6, 6);
        let configs = vec![LearnerConfig::Genetic {
            restarts_s: 2,
            population_n: 8,
            generations_kmax: 3,
            crossover_rate: 0.5,
            mutation_rate: 0.2,
        }];
        let opts = BenchOptions {
            rounds: 3,
            seed: 11,
            parallel: false,
        };
        let a = run_benchmark(&train, &test, &configs, &opts).unwrap();
        let b = run_benchmark(&train, &test, &configs, &opts).unwrap();
        for (ra, rb) in a.iter().zip(&b) {
            assert_eq!(ra.rounds, rb.rounds);
            assert_eq!(ra.evals_per_round, rb.evals_per_round);
            assert_eq!(ra.accel_evals, rb.accel_evals);
            assert_eq!(ra.train_error, rb.train_error);
            assert_eq!(ra.test_error, rb.test_error);
        }
        // no exhaustive row: eval acceleration referenced to the counted total
        assert!(a[0].accel_time.is_none());
        assert_eq!(
            a[0].accel_evals,
            count_candidates(6, 6) as f64 / a[0].evals_per_round
        );
    }

    #[test]
    fn csv_has_header_and_blank_genetic_fields_for_exhaustive() {
        let rows = vec![BenchRow {
            learner: "exhaustive",
            restarts_s: None,
            population_n: None,
            generations_kmax: None,
            crossover_rate: None,
            mutation_rate: None,
            rounds: 4,
            sec_per_round: 12.5,
            evals_per_round: 162336.0,
            accel_time: Some(1.0),
            accel_evals: 1.0,
            train_error: 0.0,
            test_error: 0.0349,
        }];
        let csv = rows_to_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        assert_eq!(
            lines.next().unwrap(),
            "exhaustive,,,,,,4,12.5000,162336,1.00000,1.00000,0.00000,0.0349000"
        );
    }
}
