//! Small-scale search for sets with small normalised sum-division functionals.
//!
//! Two objectives are supported, both invariant under dilation:
//!
//! * joint: `J(A) = |A+A|²·|A/A| / |A|⁴`, bounded below by `1/4`;
//! * max-form: `R(A) = max{|A+A|, |A/A|}³ / |A|⁴`, bounded below by `1/8`.
//!
//! Values are exact rationals and ranking never touches floating point.
//! Every evaluated candidate is checked against both lower bounds; a
//! violation is reported as [`Error::InvariantViolation`].

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::decimal;
use crate::error::{Error, Result};
use crate::families::{random_rational, random_set, RandomSpec};
use crate::rational::PosRational;
use crate::set::{self, PairCap, PositiveSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    /// `|A+A|²·|A/A| / |A|⁴`
    Joint,
    /// `max{|A+A|, |A/A|}³ / |A|⁴`
    Max,
}

/// Evaluates `objective` on `a`, checking `J ≥ 1/4` and `R ≥ 1/8` on the way.
pub fn evaluate(a: &PositiveSet, objective: Objective, cap: PairCap) -> Result<PosRational> {
    let s = BigUint::from(set::sumset(a, a, cap)?.len());
    let r = BigUint::from(set::ratioset(a, a, cap)?.len());
    let n4 = BigUint::from(a.len()).pow(4);
    let joint = &s * &s * &r;
    let max3 = (&s).max(&r).pow(3);
    if BigUint::from(4u32) * &joint < n4 || BigUint::from(8u32) * &max3 < n4 {
        return Err(Error::InvariantViolation(format!(
            "normalised bound violated by {a:?}: |A+A| = {s}, |A/A| = {r}"
        )));
    }
    let num = match objective {
        Objective::Joint => joint,
        Objective::Max => max3,
    };
    Ok(PosRational::new(num, n4).expect("positive sizes"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SearchMode {
    /// Every `cardinality`-subset of `{1, …, universe}`.
    Exhaustive {
        cardinality: usize,
        universe: u64,
        /// Maximum number of subsets to evaluate.
        budget: u64,
    },
    /// Seeded hill descent over rationals `p/q` with `p ≤ num_bound`, `q ≤ den_bound`.
    Local {
        cardinality: usize,
        seed: u64,
        iterations: u64,
        num_bound: u64,
        den_bound: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub objective: Objective,
    #[serde(flatten)]
    pub mode: SearchMode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    /// Subset rank (exhaustive) or iteration number (local; 0 is the start set).
    pub step: u64,
    pub value: PosRational,
    pub set: PositiveSet,
}

/// Best set found. `best_value` is an empirical minimum, not a proven optimum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub config: SearchConfig,
    pub best_set: PositiveSet,
    pub best_value: PosRational,
    pub best_value_decimal: String,
    pub evaluations: u64,
    pub trace: Vec<TraceEntry>,
}

pub fn run(config: &SearchConfig, cap: PairCap) -> Result<SearchResult> {
    match config.mode {
        SearchMode::Exhaustive { .. } => exhaustive_search(config, cap),
        SearchMode::Local { .. } => local_search(config, cap),
    }
}

fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// Advances `idx` to the next `k`-combination of `lo..=hi` in lexicographic order.
fn next_combination(idx: &mut [u64], hi: u64) -> bool {
    let k = idx.len();
    for pos in (0..k).rev() {
        let limit = hi - (k - 1 - pos) as u64;
        if idx[pos] < limit {
            idx[pos] += 1;
            for j in pos + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

struct Chunk {
    evaluations: u64,
    improvements: Vec<(u64, PosRational, Vec<u64>)>,
}

pub fn exhaustive_search(config: &SearchConfig, cap: PairCap) -> Result<SearchResult> {
    let SearchMode::Exhaustive { cardinality, universe, budget } = config.mode else {
        return Err(Error::InvalidSpec("exhaustive search needs an exhaustive config".into()));
    };
    if cardinality == 0 || cardinality as u64 > universe {
        return Err(Error::InvalidSpec(format!(
            "cannot choose {cardinality} elements from {{1..{universe}}}"
        )));
    }
    let k = cardinality as u64;
    let total = binomial(universe, k).unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(Error::BudgetExceeded {
            what: "subset evaluations",
            needed: total,
            budget: budget as u128,
        });
    }

    // Subsets are split by their smallest element; each chunk walks its
    // subsets in lexicographic order and keeps its own strict improvements.
    let firsts: Vec<u64> = (1..=universe - k + 1).collect();
    let offsets: Vec<u64> = firsts
        .iter()
        .scan(0u64, |acc, &f| {
            let start = *acc;
            *acc += binomial(universe - f, k - 1).unwrap() as u64;
            Some(start)
        })
        .collect();
    let chunks: Vec<Chunk> = firsts
        .par_iter()
        .zip(offsets.par_iter())
        .map(|(&first, &offset)| -> Result<Chunk> {
            let mut idx: Vec<u64> = (0..k).map(|i| first + i).collect();
            let mut chunk = Chunk { evaluations: 0, improvements: Vec::new() };
            loop {
                let candidate = PositiveSet::from_integers(idx.iter().copied())?;
                let value = evaluate(&candidate, config.objective, cap)?;
                let improves = chunk
                    .improvements
                    .last()
                    .is_none_or(|(_, best, _)| value < *best);
                if improves {
                    chunk
                        .improvements
                        .push((offset + chunk.evaluations, value, idx.clone()));
                }
                chunk.evaluations += 1;
                if k == 1 || !next_combination(&mut idx[1..], universe) {
                    break;
                }
            }
            Ok(chunk)
        })
        .collect::<Result<_>>()?;

    let mut evaluations = 0;
    let mut trace: Vec<TraceEntry> = Vec::new();
    for chunk in chunks {
        evaluations += chunk.evaluations;
        for (step, value, idx) in chunk.improvements {
            if trace.last().is_none_or(|t| value < t.value) {
                trace.push(TraceEntry {
                    step,
                    value,
                    set: PositiveSet::from_integers(idx)?,
                });
            }
        }
    }
    finish(config, evaluations, trace)
}

fn finish(config: &SearchConfig, evaluations: u64, trace: Vec<TraceEntry>) -> Result<SearchResult> {
    let best = trace.last().expect("at least one candidate evaluated").clone();
    Ok(SearchResult {
        config: config.clone(),
        best_value_decimal: decimal::render(&best.value, decimal::DEFAULT_SIG_DIGITS),
        best_set: best.set,
        best_value: best.value,
        evaluations,
        trace,
    })
}

pub fn local_search(config: &SearchConfig, cap: PairCap) -> Result<SearchResult> {
    let SearchMode::Local { cardinality, seed, iterations, num_bound, den_bound } = config.mode else {
        return Err(Error::InvalidSpec("local search needs a local config".into()));
    };
    if iterations == 0 {
        return Err(Error::InvalidSpec("local search needs at least one iteration".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = random_set(&RandomSpec {
        size: cardinality,
        seed: rng.gen(),
        num_bound,
        den_bound,
    })?;
    let mut current = start.elements().to_vec();
    let mut best = evaluate(&start, config.objective, cap)?;
    let mut evaluations = 1;
    let mut trace = vec![TraceEntry { step: 0, value: best.clone(), set: start }];

    for step in 1..=iterations {
        let pos = rng.gen_range(0..cardinality);
        let replacement = random_rational(&mut rng, num_bound, den_bound);
        if current.contains(&replacement) {
            continue;
        }
        let mut next = current.clone();
        next[pos] = replacement;
        let candidate = PositiveSet::new(next)?;
        let value = evaluate(&candidate, config.objective, cap)?;
        evaluations += 1;
        if value < best {
            best = value.clone();
            current = candidate.elements().to_vec();
            trace.push(TraceEntry { step, value, set: candidate });
        }
    }
    finish(config, evaluations, trace)
}
