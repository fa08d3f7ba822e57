use std::fs;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use genboost::bench::{parse_configs, rows_to_csv, run_benchmark, BenchOptions};
use genboost::boost::{adaboost_train, RoundStats, WeakLearner};
use genboost::io::{gen_data, load_dataset, load_model, save_model, GenDataOptions};
use genboost::{classification_error, ExhaustiveLearner, GeneticConfig, GeneticLearner};

#[derive(Parser)]
#[command(
    name = "genboost",
    about = "Train and benchmark boosted haar-feature window classifiers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum LearnerKind {
    Genetic,
    Exhaustive,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic labeled PGM dataset plus manifest
    GenData {
        /// Output directory
        #[arg(long)]
        out: PathBuf,
        /// Number of images (balanced between the classes)
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Square window side in pixels
        #[arg(long, default_value_t = 24)]
        window: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Noise level in [0, 1]; 0 makes the classes trivially separable
        #[arg(long, default_value_t = 0.5)]
        difficulty: f64,
    },
    /// Train a strong classifier and write a model file
    Train {
        /// Training manifest
        #[arg(long)]
        data: PathBuf,
        #[arg(long, value_enum)]
        learner: LearnerKind,
        /// Boosting rounds
        #[arg(long)]
        rounds: usize,
        /// Genetic population size N
        #[arg(long, default_value_t = 50)]
        pop: usize,
        /// Genetic generation count Kmax
        #[arg(long, default_value_t = 10)]
        gens: usize,
        /// Genetic crossover rate Rc in (0, 1]
        #[arg(long, default_value_t = 0.3)]
        crossover_rate: f64,
        /// Genetic mutation rate Rm in (0, 1]
        #[arg(long, default_value_t = 0.1)]
        mutation_rate: f64,
        /// Independent genetic runs S per feature type
        #[arg(long, default_value_t = 1)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Where to write the model
        #[arg(long)]
        model_out: PathBuf,
    },
    /// Report a model's classification error on a dataset
    Eval {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        data: PathBuf,
    },
    /// Compare learner configs and write a CSV report
    Bench {
        /// Training manifest
        #[arg(long)]
        train: PathBuf,
        /// Test manifest
        #[arg(long)]
        test: PathBuf,
        #[arg(long)]
        rounds: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Learner list: `exhaustive` or `genetic S N Kmax Rc Rm` per line
        #[arg(long)]
        configs: PathBuf,
        /// Output CSV path
        #[arg(long)]
        out: PathBuf,
        /// Allow worker threads (timing columns stop being comparable)
        #[arg(long)]
        parallel: bool,
    },
}

fn main() -> anyhow::Result<()> {
    match Cli::parse().command {
        Command::GenData {
            out,
            count,
            window,
            seed,
            difficulty,
        } => {
            let manifest = gen_data(
                &out,
                &GenDataOptions {
                    count,
                    window,
                    seed,
                    difficulty,
                },
            )?;
            println!("wrote {}", manifest.display());
        }
        Command::Train {
            data,
            learner,
            rounds,
            pop,
            gens,
            crossover_rate,
            mutation_rate,
            restarts,
            seed,
            model_out,
        } => {
            let dataset = load_dataset(&data)?;
            let learner: Box<dyn WeakLearner> = match learner {
                LearnerKind::Exhaustive => Box::new(ExhaustiveLearner { parallel: false }),
                LearnerKind::Genetic => Box::new(GeneticLearner::new(
                    GeneticConfig {
                        population_n: pop,
                        generations_kmax: gens,
                        crossover_rate,
                        mutation_rate,
                        restarts_s: restarts,
                        seed,
                    },
                    false,
                )),
            };
            let model = adaboost_train(&dataset, learner.as_ref(), rounds, &mut |s: &RoundStats| {
                println!(
                    "round {}: eps={:.6} alpha={:.6} evals={} ms={:.1}",
                    s.round,
                    s.epsilon,
                    s.alpha,
                    s.evaluations,
                    s.duration.as_secs_f64() * 1e3
                );
            })?;
            save_model(&model_out, &model)?;
            println!("wrote {}", model_out.display());
        }
        Command::Eval { model, data } => {
            let model = load_model(&model)?;
            let dataset = load_dataset(&data)?;
            println!("error={:.6}", classification_error(&model, &dataset)?);
        }
        Command::Bench {
            train,
            test,
            rounds,
            seed,
            configs,
            out,
            parallel,
        } => {
            let text = fs::read_to_string(&configs)
                .with_context(|| format!("reading {}", configs.display()))?;
            let configs = parse_configs(&text)?;
            let train = load_dataset(&train)?;
            let test = load_dataset(&test)?;
            let rows = run_benchmark(
                &train,
                &test,
                &configs,
                &BenchOptions {
                    rounds,
                    seed,
                    parallel,
                },
            )?;
            let csv = rows_to_csv(&rows);
            fs::write(&out, &csv).with_context(|| format!("writing {}", out.display()))?;
            print!("{csv}");
        }
    }
    Ok(())
}
