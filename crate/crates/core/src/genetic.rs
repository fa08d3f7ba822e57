//! Genetic weak-learner search over the bit-encoded rectangle parameters.
//!
//! A population member encodes the free parameters (x, y, width, height) as
//! four big-endian fixed-width bit fields. The feature type stays outside
//! the chromosome: one search runs per type, and polarity/threshold are
//! solved exactly by the stump learner inside the fitness evaluation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::boost::WeakClassifier;
use crate::dataset::WeightVector;
use crate::error::{Error, Result};
use crate::haar::{is_valid_geometry, HaarGeometry, HaarType, IntegralDataset};
use crate::stump::learn_stump;

/// Weighted errors below this are treated as the zero-error case: fitness is
/// capped at `1/E_MIN` and the search stops early.
pub const E_MIN: f64 = 1e-10;

/// Fixed-length bit string holding the four encoded geometry fields.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chromosome {
    bits: Vec<bool>,
}

impl Chromosome {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        Chromosome { bits }
    }

    pub fn random<R: Rng>(len: usize, rng: &mut R) -> Self {
        Chromosome {
            bits: (0..len).map(|_| rng.gen()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }
}

/// Field width so every coordinate and extent of the window fits:
/// the smallest B with 2^B > max(window_w, window_h).
pub fn bit_width(window_w: usize, window_h: usize) -> u32 {
    let max = window_w.max(window_h) as u64;
    64 - max.leading_zeros()
}

fn field_to_bits(value: i64, bits: u32, field: &'static str) -> Result<Vec<bool>> {
    let max = (1i64 << bits) - 1;
    if value < 0 || value > max {
        return Err(Error::FieldOutOfRange {
            field,
            value,
            max,
            bits,
        });
    }
    Ok((0..bits).rev().map(|i| (value >> i) & 1 == 1).collect())
}

fn bits_to_field(bits: &[bool]) -> i64 {
    bits.iter().fold(0, |acc, &b| (acc << 1) | b as i64)
}

/// Packs (x, y, width, height) into 4·B bits, each field big-endian.
pub fn encode(g: HaarGeometry, bits: u32) -> Result<Chromosome> {
    let mut out = Vec::with_capacity(4 * bits as usize);
    out.extend(field_to_bits(g.x, bits, "x")?);
    out.extend(field_to_bits(g.y, bits, "y")?);
    out.extend(field_to_bits(g.width, bits, "width")?);
    out.extend(field_to_bits(g.height, bits, "height")?);
    Ok(Chromosome { bits: out })
}

/// Unpacks the four fields. No validity filtering happens here; geometry
/// checks are the fitness function's job.
pub fn decode(c: &Chromosome, bits: u32) -> Result<HaarGeometry> {
    let b = bits as usize;
    if c.bits.len() != 4 * b {
        return Err(Error::ChromosomeLength {
            len: c.bits.len(),
            expected: 4 * b,
        });
    }
    Ok(HaarGeometry::new(
        bits_to_field(&c.bits[0..b]),
        bits_to_field(&c.bits[b..2 * b]),
        bits_to_field(&c.bits[2 * b..3 * b]),
        bits_to_field(&c.bits[3 * b..4 * b]),
    ))
}

/// 1-point crossover: swaps all bits at and after `cut` between the parents.
pub fn crossover(a: &Chromosome, b: &Chromosome, cut: usize) -> Result<(Chromosome, Chromosome)> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if cut < 1 || cut > a.len().saturating_sub(1) {
        return Err(Error::CutOutOfRange {
            cut,
            max: a.len().saturating_sub(1),
        });
    }
    let mut c1 = a.bits.clone();
    let mut c2 = b.bits.clone();
    c1[cut..].copy_from_slice(&b.bits[cut..]);
    c2[cut..].copy_from_slice(&a.bits[cut..]);
    Ok((Chromosome { bits: c1 }, Chromosome { bits: c2 }))
}

/// Flips exactly one bit.
pub fn mutate(c: &Chromosome, bit_index: usize) -> Result<Chromosome> {
    if bit_index >= c.len() {
        return Err(Error::BitIndexOutOfRange {
            index: bit_index,
            max: c.len().saturating_sub(1),
        });
    }
    let mut bits = c.bits.clone();
    bits[bit_index] = !bits[bit_index];
    Ok(Chromosome { bits })
}

#[derive(Debug, Clone)]
pub struct GeneticConfig {
    pub population_n: usize,
    pub generations_kmax: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    pub restarts_s: usize,
    pub seed: u64,
}

impl Default for GeneticConfig {
    fn default() -> Self {
        GeneticConfig {
            population_n: 50,
            generations_kmax: 10,
            crossover_rate: 0.3,
            mutation_rate: 0.1,
            restarts_s: 1,
            seed: 0,
        }
    }
}

impl GeneticConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population_n == 0 {
            return Err(Error::Config("population size must be > 0".into()));
        }
        if self.generations_kmax == 0 {
            return Err(Error::Config("generation count must be > 0".into()));
        }
        if !(self.crossover_rate > 0.0 && self.crossover_rate <= 1.0) {
            return Err(Error::Config(format!(
                "crossover rate {} outside (0, 1]",
                self.crossover_rate
            )));
        }
        if !(self.mutation_rate > 0.0 && self.mutation_rate <= 1.0) {
            return Err(Error::Config(format!(
                "mutation rate {} outside (0, 1]",
                self.mutation_rate
            )));
        }
        if self.restarts_s == 0 {
            return Err(Error::Config("restart count must be >= 1".into()));
        }
        Ok(())
    }

    /// Children added per generation.
    pub fn children_per_generation(&self) -> usize {
        (self.population_n as f64 * self.crossover_rate).ceil() as usize
    }

    /// Members mutated per generation.
    pub fn mutations_per_generation(&self) -> usize {
        (self.population_n as f64 * self.mutation_rate).ceil() as usize
    }

    /// Fitness evaluations one evolution run may spend at most.
    pub fn eval_budget(&self) -> u64 {
        self.population_n as u64
            + self.generations_kmax as u64
                * (self.children_per_generation() as u64
                    + self.mutations_per_generation() as u64)
    }
}

#[derive(Debug, Clone)]
pub struct ScoredMember {
    pub chromosome: Chromosome,
    pub fitness: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct FitnessEval {
    pub fitness: f64,
    /// True when the stump error was exactly zero, which allows the caller
    /// to stop the search and the boosting driver to finish with this single
    /// classifier.
    pub exact_zero_error: bool,
}

/// Fitness of a chromosome for one feature type: `1/E` of the best stump on
/// the decoded geometry, zero when the decode does not describe a valid
/// geometry. Total over every bit pattern; never fails.
pub fn fitness(
    c: &Chromosome,
    t: HaarType,
    data: &IntegralDataset,
    w: &WeightVector,
) -> FitnessEval {
    let invalid = FitnessEval {
        fitness: 0.0,
        exact_zero_error: false,
    };
    let b = bit_width(data.window_w(), data.window_h());
    let geometry = match decode(c, b) {
        Ok(g) => g,
        Err(_) => return invalid,
    };
    if !is_valid_geometry(geometry, t, data.window_w(), data.window_h()) {
        return invalid;
    }
    let values = data
        .feature_values(geometry, t)
        .expect("validity checked above");
    let (_, err) = learn_stump(&values, data.labels(), w).expect("lengths agree by construction");
    FitnessEval {
        fitness: 1.0 / err.max(E_MIN),
        exact_zero_error: err == 0.0,
    }
}

#[derive(Debug, Clone)]
struct Member {
    chromosome: Chromosome,
    fitness: f64,
    scored: bool,
}

/// What one evolution run did, with enough of a trace to audit the
/// elitism and budget invariants.
#[derive(Debug, Clone)]
pub struct EvolveOutcome {
    pub best: ScoredMember,
    pub evaluations: u64,
    /// Best fitness after the initial scoring and after each generation.
    pub best_fitness_trace: Vec<f64>,
    /// Population size after each generation's selection.
    pub population_sizes: Vec<usize>,
    /// True when a zero-error classifier ended the run before all
    /// generations finished.
    pub found_zero_error: bool,
}

/// Runs one genetic search for a single feature type.
///
/// Each generation appends `ceil(N*Rc)` crossover children of the best
/// parent pairs, mutates `ceil(N*Rm)` previously scored members other than
/// the current best, scores whatever changed, and keeps the N best. The
/// best member is protected, so its fitness never decreases.
pub fn evolve<R: Rng>(
    t: HaarType,
    data: &IntegralDataset,
    w: &WeightVector,
    cfg: &GeneticConfig,
    rng: &mut R,
) -> EvolveOutcome {
    cfg.validate().expect("caller validates config");
    let chromosome_len = 4 * bit_width(data.window_w(), data.window_h()) as usize;
    let n = cfg.population_n;

    let mut population: Vec<Member> = (0..n)
        .map(|_| Member {
            chromosome: Chromosome::random(chromosome_len, rng),
            fitness: 0.0,
            scored: false,
        })
        .collect();

    let mut evaluations = 0u64;
    let mut best_fitness_trace = Vec::with_capacity(cfg.generations_kmax + 1);
    let mut population_sizes = Vec::with_capacity(cfg.generations_kmax);

    let score_pending = |population: &mut Vec<Member>, evaluations: &mut u64| -> Option<usize> {
        for i in 0..population.len() {
            if population[i].scored {
                continue;
            }
            let eval = fitness(&population[i].chromosome, t, data, w);
            population[i].fitness = eval.fitness;
            population[i].scored = true;
            *evaluations += 1;
            if eval.exact_zero_error {
                return Some(i);
            }
        }
        None
    };

    let outcome = |population: &[Member],
                   idx: usize,
                   evaluations: u64,
                   best_fitness_trace: Vec<f64>,
                   population_sizes: Vec<usize>,
                   found_zero_error: bool| EvolveOutcome {
        best: ScoredMember {
            chromosome: population[idx].chromosome.clone(),
            fitness: population[idx].fitness,
        },
        evaluations,
        best_fitness_trace,
        population_sizes,
        found_zero_error,
    };

    // Descending fitness; equal fitness ordered by ascending bit string so
    // every rerun sorts identically.
    fn rank(members: &mut [Member]) {
        members.sort_by(|a, b| {
            b.fitness
                .total_cmp(&a.fitness)
                .then_with(|| a.chromosome.cmp(&b.chromosome))
        });
    }

    if let Some(i) = score_pending(&mut population, &mut evaluations) {
        return outcome(&population, i, evaluations, best_fitness_trace, population_sizes, true);
    }
    rank(&mut population);
    best_fitness_trace.push(population[0].fitness);

    for _generation in 0..cfg.generations_kmax {
        // population is ranked here, carried members first
        let children_target = cfg.children_per_generation();
        let mut children = Vec::with_capacity(children_target);
        let mut pair = 0usize;
        while children.len() < children_target {
            let a = 2 * pair % n;
            let b = (2 * pair + 1) % n;
            let cut = rng.gen_range(1..chromosome_len);
            let (c1, c2) = crossover(
                &population[a].chromosome,
                &population[b].chromosome,
                cut,
            )
            .expect("cut in range");
            children.push(c1);
            if children.len() < children_target {
                children.push(c2);
            }
            pair += 1;
        }

        // Mutation targets come from the carried, already scored members,
        // so every generation costs exactly children + mutants evaluations.
        // The rank-0 elite is exempt.
        let mutation_target = cfg.mutations_per_generation().min(n - 1);
        let mut eligible: Vec<usize> = (1..n).collect();
        for k in 0..mutation_target {
            let pick = rng.gen_range(k..eligible.len());
            eligible.swap(k, pick);
            let idx = eligible[k];
            let bit = rng.gen_range(0..chromosome_len);
            population[idx].chromosome =
                mutate(&population[idx].chromosome, bit).expect("bit in range");
            population[idx].scored = false;
        }

        population.extend(children.into_iter().map(|chromosome| Member {
            chromosome,
            fitness: 0.0,
            scored: false,
        }));

        if let Some(i) = score_pending(&mut population, &mut evaluations) {
            return outcome(&population, i, evaluations, best_fitness_trace, population_sizes, true);
        }

        rank(&mut population);
        population.truncate(n);
        best_fitness_trace.push(population[0].fitness);
        population_sizes.push(population.len());
    }

    outcome(&population, 0, evaluations, best_fitness_trace, population_sizes, false)
}

/// One completed evolution run inside the per-type restart pattern.
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub haar_type: HaarType,
    pub run_index: usize,
    pub best_fitness: f64,
    pub evaluations: u64,
    pub found_zero_error: bool,
}

/// Outcome of the full genetic weak-learner search.
#[derive(Debug, Clone)]
pub struct GeneticSearch {
    pub classifier: WeakClassifier,
    pub weighted_error: f64,
    /// Fitness evaluations summed over all runs.
    pub evaluations: u64,
    pub found_zero_error: bool,
    pub runs: Vec<RunSummary>,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent, reproducible stream per (type, restart) run.
pub fn run_seed(seed: u64, type_index: usize, run_index: usize) -> u64 {
    seed ^ splitmix64(((type_index as u64) << 32) | run_index as u64)
}

/// Runs `restarts_s` evolutions per feature type (5·S independent runs) and
/// returns the globally best member, decoded and with polarity/threshold
/// re-derived by the stump learner. Ties go to the lower type index, then
/// the lower run index. Sequential and parallel execution pick the same
/// winner.
pub fn genetic_weak_learner(
    data: &IntegralDataset,
    w: &WeightVector,
    cfg: &GeneticConfig,
) -> Result<GeneticSearch> {
    genetic_weak_learner_impl(data, w, cfg, false)
}

pub(crate) fn genetic_weak_learner_impl(
    data: &IntegralDataset,
    w: &WeightVector,
    cfg: &GeneticConfig,
    parallel: bool,
) -> Result<GeneticSearch> {
    cfg.validate()?;
    if data.is_empty() {
        return Err(Error::EmptyDataset);
    }

    let run_ids: Vec<(usize, usize)> = HaarType::ALL
        .iter()
        .enumerate()
        .flat_map(|(ti, _)| (0..cfg.restarts_s).map(move |ri| (ti, ri)))
        .collect();

    let run_one = |&(ti, ri): &(usize, usize)| {
        let t = HaarType::ALL[ti];
        let mut rng = ChaCha8Rng::seed_from_u64(run_seed(cfg.seed, ti, ri));
        let out = evolve(t, data, w, cfg, &mut rng);
        (ti, ri, out)
    };

    let results: Vec<(usize, usize, EvolveOutcome)> = if parallel {
        run_ids.par_iter().map(run_one).collect()
    } else {
        run_ids.iter().map(run_one).collect()
    };

    let mut evaluations = 0u64;
    let mut runs = Vec::with_capacity(results.len());
    let mut best: Option<(f64, usize, usize, Chromosome, bool)> = None;
    for (ti, ri, out) in results {
        evaluations += out.evaluations;
        runs.push(RunSummary {
            haar_type: HaarType::ALL[ti],
            run_index: ri,
            best_fitness: out.best.fitness,
            evaluations: out.evaluations,
            found_zero_error: out.found_zero_error,
        });
        if out.best.fitness > 0.0
            && best.as_ref().map_or(true, |(f, ..)| out.best.fitness > *f)
        {
            best = Some((
                out.best.fitness,
                ti,
                ri,
                out.best.chromosome,
                out.found_zero_error,
            ));
        }
    }

    let (_, ti, _, chromosome, found_zero_error) = best.ok_or(Error::NoValidClassifier)?;
    let t = HaarType::ALL[ti];
    let geometry = decode(&chromosome, bit_width(data.window_w(), data.window_h()))
        .expect("winner decoded during scoring");
    let values = data.feature_values(geometry, t)?;
    let (params, err) = learn_stump(&values, data.labels(), w)?;

    Ok(GeneticSearch {
        classifier: WeakClassifier {
            geometry,
            haar_type: t,
            polarity: params.polarity,
            threshold: params.threshold,
        },
        weighted_error: err,
        evaluations,
        found_zero_error,
        runs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{Dataset, GrayImage, Sample};
    use proptest::prelude::*;
    use rand::Rng;

    fn chrom(s: &str) -> Chromosome {
        Chromosome::from_bits(s.chars().map(|c| c == '1').collect())
    }

    fn bits_string(c: &Chromosome) -> String {
        c.bits().iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    #[test]
    fn bit_width_covers_window() {
        assert_eq!(bit_width(24, 24), 5); // values 0..=24 need 5 bits
        assert_eq!(bit_width(16, 16), 5); // 0..=16
        assert_eq!(bit_width(15, 15), 4);
        assert_eq!(bit_width(1, 1), 1);
        assert_eq!(bit_width(8, 2), 4);
    }

    #[test]
    fn encode_single_field_pattern() {
        let c = encode(HaarGeometry::new(5, 0, 0, 0), 5).unwrap();
        assert_eq!(&bits_string(&c)[0..5], "00101");
    }

    #[test]
    fn encode_zero_geometry_is_all_zero_bits() {
        let c = encode(HaarGeometry::new(0, 0, 0, 0), 5).unwrap();
        assert_eq!(bits_string(&c), "0".repeat(20));
    }

    #[test]
    fn encode_rejects_out_of_range() {
        assert!(encode(HaarGeometry::new(32, 0, 0, 0), 5).is_err());
        assert!(encode(HaarGeometry::new(-1, 0, 0, 0), 5).is_err());
    }

    #[test]
    fn decode_all_zeros_and_all_ones() {
        assert_eq!(
            decode(&chrom(&"0".repeat(20)), 5).unwrap(),
            HaarGeometry::new(0, 0, 0, 0)
        );
        assert_eq!(
            decode(&chrom(&"1".repeat(20)), 5).unwrap(),
            HaarGeometry::new(31, 31, 31, 31)
        );
        assert!(decode(&chrom("0101"), 5).is_err());
    }

    #[test]
    fn crossover_example() {
        let (c1, c2) = crossover(&chrom("0000"), &chrom("1111"), 2).unwrap();
        assert_eq!(bits_string(&c1), "0011");
        assert_eq!(bits_string(&c2), "1100");
    }

    #[test]
    fn crossover_identical_parents() {
        let a = chrom("1010");
        let (c1, c2) = crossover(&a, &a, 1).unwrap();
        assert_eq!(c1, a);
        assert_eq!(c2, a);
    }

    #[test]
    fn crossover_preserves_bits_per_position() {
        let a = chrom("011010");
        let b = chrom("110001");
        for cut in 1..6 {
            let (c1, c2) = crossover(&a, &b, cut).unwrap();
            for i in 0..6 {
                let mut parents = [a.bits()[i], b.bits()[i]];
                let mut kids = [c1.bits()[i], c2.bits()[i]];
                parents.sort();
                kids.sort();
                assert_eq!(parents, kids);
            }
        }
        assert!(crossover(&a, &b, 0).is_err());
        assert!(crossover(&a, &b, 6).is_err());
    }

    #[test]
    fn mutate_example_and_involution() {
        let c = chrom("0000");
        let m = mutate(&c, 2).unwrap();
        assert_eq!(bits_string(&m), "0010");
        assert_eq!(mutate(&m, 2).unwrap(), c);
        for i in 0..4 {
            let m = mutate(&c, i).unwrap();
            let dist = m
                .bits()
                .iter()
                .zip(c.bits())
                .filter(|(a, b)| a != b)
                .count();
            assert_eq!(dist, 1);
        }
        assert!(mutate(&c, 4).is_err());
    }

    /// 2x1 windows [a, b]; EdgeH(0,0,2,1) evaluates to a - b.
    fn two_pixel_dataset(pairs: &[(u8, u8)], labels: &[i8]) -> IntegralDataset {
        let samples: Vec<Sample> = pairs
            .iter()
            .zip(labels)
            .map(|(&(a, b), &l)| {
                Sample::new(GrayImage::new(2, 1, vec![a, b]).unwrap(), l).unwrap()
            })
            .collect();
        IntegralDataset::from_dataset(&Dataset::new(samples).unwrap())
    }

    #[test]
    fn fitness_is_zero_for_invalid_decode() {
        let data = two_pixel_dataset(&[(1, 0), (0, 1)], &[1, -1]);
        let b = bit_width(2, 1);
        assert_eq!(b, 2);
        // x = 3 is outside the window, everything else irrelevant
        let c = chrom("11000000");
        let eval = fitness(&c, HaarType::EdgeH, &data, &WeightVector::uniform(2));
        assert_eq!(eval.fitness, 0.0);
        assert!(!eval.exact_zero_error);
    }

    #[test]
    fn fitness_is_reciprocal_error() {
        // feature values 1, 2, 3, 4 with labels -,+,-,+: best stump errs 0.25
        let data = two_pixel_dataset(&[(1, 0), (2, 0), (3, 0), (4, 0)], &[-1, 1, -1, 1]);
        let c = encode(HaarGeometry::new(0, 0, 2, 1), 2).unwrap();
        let eval = fitness(&c, HaarType::EdgeH, &data, &WeightVector::uniform(4));
        assert_eq!(eval.fitness, 4.0);
        assert!(!eval.exact_zero_error);
    }

    #[test]
    fn fitness_flags_exact_zero_error() {
        let data = two_pixel_dataset(&[(9, 0), (8, 0), (0, 9), (0, 8)], &[1, 1, -1, -1]);
        let c = encode(HaarGeometry::new(0, 0, 2, 1), 2).unwrap();
        let eval = fitness(&c, HaarType::EdgeH, &data, &WeightVector::uniform(4));
        assert!(eval.exact_zero_error);
        assert_eq!(eval.fitness, 1.0 / E_MIN);
    }

    #[test]
    fn fitness_matches_brute_force_stump() {
        use crate::dataset::normalize_weights;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let n = rng.gen_range(2..20);
            let pairs: Vec<(u8, u8)> = (0..n).map(|_| (rng.gen(), rng.gen())).collect();
            let labels: Vec<i8> =
                (0..n).map(|_| if rng.gen::<bool>() { 1 } else { -1 }).collect();
            let w = normalize_weights(
                &WeightVector::new((0..n).map(|_| rng.gen_range(0.01..1.0)).collect()).unwrap(),
            )
            .unwrap();
            let data = two_pixel_dataset(&pairs, &labels);
            let c = encode(HaarGeometry::new(0, 0, 2, 1), 2).unwrap();
            let eval = fitness(&c, HaarType::EdgeH, &data, &w);

            let values: Vec<f64> = pairs.iter().map(|&(a, b)| a as f64 - b as f64).collect();
            let (_, err) = crate::stump::tests::brute_force_stump(&values, &labels, &w);
            assert_eq!(eval.fitness, 1.0 / err.max(E_MIN));
        }
    }

    fn random_dataset(rng: &mut ChaCha8Rng, n: usize, w: usize, h: usize) -> IntegralDataset {
        let samples: Vec<Sample> = (0..n)
            .map(|i| {
                let px: Vec<u8> = (0..w * h).map(|_| rng.gen()).collect();
                let label = if i % 2 == 0 { 1 } else { -1 };
                Sample::new(GrayImage::new(w, h, px).unwrap(), label).unwrap()
            })
            .collect();
        IntegralDataset::from_dataset(&Dataset::new(samples).unwrap())
    }

    #[test]
    fn evolve_respects_budget_and_elitism() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let data = random_dataset(&mut rng, 20, 8, 8);
        let w = WeightVector::uniform(20);
        let cfg = GeneticConfig {
            population_n: 12,
            generations_kmax: 6,
            crossover_rate: 0.4,
            mutation_rate: 0.25,
            ..GeneticConfig::default()
        };
        let mut stream = ChaCha8Rng::seed_from_u64(77);
        let out = evolve(HaarType::EdgeH, &data, &w, &cfg, &mut stream);

        assert!(out.evaluations <= cfg.eval_budget());
        for pair in out.best_fitness_trace.windows(2) {
            assert!(pair[1] >= pair[0]);
        }
        if !out.found_zero_error {
            assert_eq!(out.population_sizes, vec![12; 6]);
            assert_eq!(out.evaluations, cfg.eval_budget());
        }
        assert_eq!(out.best.fitness, *out.best_fitness_trace.last().unwrap());
    }

    #[test]
    fn evolve_is_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let data = random_dataset(&mut rng, 16, 6, 6);
        let w = WeightVector::uniform(16);
        let cfg = GeneticConfig {
            population_n: 10,
            generations_kmax: 5,
            ..GeneticConfig::default()
        };
        let run = |seed| {
            let mut stream = ChaCha8Rng::seed_from_u64(seed);
            evolve(HaarType::Checker, &data, &w, &cfg, &mut stream)
        };
        let (a, b) = (run(123), run(123));
        assert_eq!(a.best.chromosome, b.best.chromosome);
        assert_eq!(a.best.fitness, b.best.fitness);
        assert_eq!(a.evaluations, b.evaluations);
        assert_ne!(run(124).best_fitness_trace, Vec::<f64>::new());
    }

    #[test]
    fn learner_stops_early_on_separable_data() {
        // EdgeH(0,0,2,1) separates perfectly and is the only valid point in
        // the tiny chromosome space, so this search finds it quickly.
        let data = two_pixel_dataset(&[(9, 0), (8, 0), (0, 9), (0, 8)], &[1, 1, -1, -1]);
        let w = WeightVector::uniform(4);
        let cfg = GeneticConfig {
            population_n: 40,
            generations_kmax: 5,
            seed: 0,
            ..GeneticConfig::default()
        };
        let got = genetic_weak_learner(&data, &w, &cfg).unwrap();
        assert!(got.found_zero_error);
        assert_eq!(got.weighted_error, 0.0);
        assert_eq!(got.runs.len(), 5);
        assert!(got.evaluations <= 5 * cfg.eval_budget());
    }

    #[test]
    fn learner_is_deterministic_and_parallel_agrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(40);
        let data = random_dataset(&mut rng, 24, 8, 8);
        let w = WeightVector::uniform(24);
        let cfg = GeneticConfig {
            population_n: 15,
            generations_kmax: 4,
            restarts_s: 2,
            seed: 9,
            ..GeneticConfig::default()
        };
        let a = genetic_weak_learner(&data, &w, &cfg).unwrap();
        let b = genetic_weak_learner(&data, &w, &cfg).unwrap();
        let c = genetic_weak_learner_impl(&data, &w, &cfg, true).unwrap();
        assert_eq!(a.classifier, b.classifier);
        assert_eq!(a.classifier, c.classifier);
        assert_eq!(a.weighted_error, b.weighted_error);
        assert_eq!(a.evaluations, c.evaluations);
        assert_eq!(a.runs.len(), 10);
    }

    #[test]
    fn learner_errors_when_no_geometry_fits() {
        // 1x1 windows admit no valid geometry for any feature type.
        let samples = vec![
            Sample::new(GrayImage::new(1, 1, vec![5]).unwrap(), 1).unwrap(),
            Sample::new(GrayImage::new(1, 1, vec![9]).unwrap(), -1).unwrap(),
        ];
        let data = IntegralDataset::from_dataset(&Dataset::new(samples).unwrap());
        let cfg = GeneticConfig {
            population_n: 8,
            generations_kmax: 2,
            ..GeneticConfig::default()
        };
        let err = genetic_weak_learner(&data, &WeightVector::uniform(2), &cfg).unwrap_err();
        assert!(err.to_string().contains("no valid classifier"));
    }

    proptest! {
        #[test]
        fn encode_decode_round_trip(
            x in 0i64..32, y in 0i64..32, wid in 0i64..32, hei in 0i64..32
        ) {
            let g = HaarGeometry::new(x, y, wid, hei);
            let c = encode(g, 5).unwrap();
            prop_assert_eq!(decode(&c, 5).unwrap(), g);
        }

        #[test]
        fn decode_encode_round_trip(bits in proptest::collection::vec(any::<bool>(), 20)) {
            let c = Chromosome::from_bits(bits);
            let g = decode(&c, 5).unwrap();
            prop_assert_eq!(encode(g, 5).unwrap(), c);
        }
    }
}
