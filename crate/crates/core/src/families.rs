//! Set families: intervals, geometric progressions, Farey fractions and seeded
//! random sets, plus the multiplication-table counter `M(n) = |{ij : 1 ≤ i,j ≤ n}|`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{parse_rational, PosRational};
use crate::set::{self, PairCap, PositiveSet};

/// `{1, 2, …, n}`.
pub fn interval_set(n: u64) -> Result<PositiveSet> {
    if n == 0 {
        return Err(Error::InvalidSpec("interval needs n >= 1".into()));
    }
    Ok(PositiveSet::from_sorted_unchecked(
        (1..=n).map(PosRational::from_integer).collect(),
    ))
}

/// `{1, r, r², …, r^{n-1}}`.
pub fn geometric_set(ratio: &PosRational, n: u32) -> Result<PositiveSet> {
    if n == 0 {
        return Err(Error::InvalidSpec("geometric progression needs n >= 1".into()));
    }
    if *ratio == PosRational::one() {
        return Err(Error::InvalidSpec("geometric ratio must differ from 1".into()));
    }
    PositiveSet::new((0..n).map(|i| ratio.pow(i)))
}

/// Farey fractions `{a/q : 1 ≤ a ≤ q ≤ n, gcd(a, q) = 1}`, ascending.
///
/// Walks the sequence with the neighbour recurrence, so every term comes out
/// reduced and in order without any gcd test.
pub fn farey_set(n: u64) -> Result<PositiveSet> {
    if n == 0 {
        return Err(Error::InvalidSpec("Farey order needs n >= 1".into()));
    }
    let (mut a, mut b, mut c, mut d) = (0u64, 1u64, 1u64, n);
    let mut out = Vec::new();
    loop {
        out.push(PosRational::from_u64s(c, d));
        if c == d {
            break;
        }
        let k = (n + b) / d;
        let (nc, nd) = (k * c - a, k * d - b);
        (a, b, c, d) = (c, d, nc, nd);
    }
    Ok(PositiveSet::from_sorted_unchecked(out))
}

/// Euler's totient for `0..=n` by a linear sieve.
pub fn totients(n: usize) -> Vec<u64> {
    let mut phi = vec![0u64; n + 1];
    let mut primes: Vec<usize> = Vec::new();
    if n >= 1 {
        phi[1] = 1;
    }
    for i in 2..=n {
        if phi[i] == 0 {
            phi[i] = i as u64 - 1;
            primes.push(i);
        }
        for &p in &primes {
            let ip = i * p;
            if ip > n {
                break;
            }
            if i % p == 0 {
                phi[ip] = phi[i] * p as u64;
                break;
            }
            phi[ip] = phi[i] * (p as u64 - 1);
        }
    }
    phi
}

/// `|F_n| = Σ_{q ≤ n} φ(q)` without building the set.
pub fn farey_size(n: u64) -> u64 {
    totients(n as usize).iter().skip(1).sum()
}

/// `(3/π²)·n²`, the leading term of `|F_n|`.
pub fn farey_asymptotic(n: u64) -> f64 {
    let n = n as f64;
    3.0 * n * n / (std::f64::consts::PI * std::f64::consts::PI)
}

/// `β = 1 − (1 + ln ln 2)/ln 2`, the exponent of `ln n` in the multiplication-table count.
pub fn beta_constant() -> f64 {
    let ln2 = std::f64::consts::LN_2;
    1.0 - (1.0 + ln2.ln()) / ln2
}

/// Largest bitmap the multiplication-table counter may allocate, in bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableBudget(pub u64);

impl Default for TableBudget {
    /// 2³² bits (512 MiB), enough for `n = 2¹⁶`.
    fn default() -> Self {
        TableBudget(1 << 32)
    }
}

/// `M(n)`: the number of distinct products `ij` with `1 ≤ i, j ≤ n`.
///
/// Marks `i·j` for `i ≤ j` in a flat bitmap over `1..=n²`; rows are processed in
/// parallel and bit-set writes are idempotent, so the count does not depend on
/// scheduling.
pub fn mult_table_count(n: u64, budget: TableBudget) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidSpec("table size needs n >= 1".into()));
    }
    let bits = n as u128 * n as u128 + 1;
    if bits > budget.0 as u128 {
        return Err(Error::BudgetExceeded {
            what: "multiplication table bitmap (bits)",
            needed: bits,
            budget: budget.0 as u128,
        });
    }
    let words = (bits as usize).div_ceil(64);
    let map: Vec<AtomicU64> = (0..words).map(|_| AtomicU64::new(0)).collect();
    (1..=n).into_par_iter().for_each(|i| {
        let mut word = usize::MAX;
        let mut acc = 0u64;
        for j in i..=n {
            let p = (i * j) as usize;
            let w = p >> 6;
            if w != word {
                if acc != 0 {
                    map[word].fetch_or(acc, Ordering::Relaxed);
                }
                word = w;
                acc = 0;
            }
            acc |= 1 << (p & 63);
        }
        if acc != 0 {
            map[word].fetch_or(acc, Ordering::Relaxed);
        }
    });
    Ok(map
        .iter()
        .map(|w| w.load(Ordering::Relaxed).count_ones() as u64)
        .sum())
}

/// One row of a multiplication-table sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub n: u64,
    pub count: u64,
    /// `M(n)/n²`, exact.
    pub density: PosRational,
    /// `ln(M(n)/n²)`
    pub ln_density: f64,
    /// `ln(n²/M(n)) / ln ln n`: the exponent `β + o(1)` seen at this `n`. Undefined for `n < 3`.
    pub effective_exponent: Option<f64>,
}

pub fn table_row(n: u64, budget: TableBudget) -> Result<TableRow> {
    let count = mult_table_count(n, budget)?;
    let density = PosRational::new(BigUint::from(count), BigUint::from(n) * n).unwrap();
    let ln_density = (count as f64).ln() - 2.0 * (n as f64).ln();
    let effective_exponent = (n >= 3).then(|| -ln_density / (n as f64).ln().ln());
    Ok(TableRow {
        n,
        count,
        density,
        ln_density,
        effective_exponent,
    })
}

/// Values of `n` in `lo..=hi`, either every integer or doubling from `lo`.
pub fn sweep_points(lo: u64, hi: u64, geometric: bool) -> Result<Vec<u64>> {
    if lo == 0 || lo > hi {
        return Err(Error::InvalidSpec(format!("bad sweep range {lo}..{hi}")));
    }
    if !geometric {
        return Ok((lo..=hi).collect());
    }
    let mut out = Vec::new();
    let mut n = lo;
    while n <= hi {
        out.push(n);
        n = n.saturating_mul(2);
        if n == u64::MAX {
            break;
        }
    }
    Ok(out)
}

/// Recipe for a seeded random set: `size` distinct values `p/q` with
/// `1 ≤ p ≤ num_bound`, `1 ≤ q ≤ den_bound`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RandomSpec {
    pub size: usize,
    pub seed: u64,
    pub num_bound: u64,
    pub den_bound: u64,
}

pub fn random_set(spec: &RandomSpec) -> Result<PositiveSet> {
    if spec.size == 0 || spec.num_bound == 0 || spec.den_bound == 0 {
        return Err(Error::InvalidSpec(format!("invalid random spec {spec:?}")));
    }
    if (spec.num_bound as u128) * (spec.den_bound as u128) < spec.size as u128 {
        return Err(Error::InvalidSpec(format!(
            "bounds {}x{} cannot supply {} distinct values",
            spec.num_bound, spec.den_bound, spec.size
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut values = BTreeSet::new();
    let max_draws = 1000 * spec.size as u64 + 1000;
    let mut draws = 0;
    while values.len() < spec.size {
        if draws == max_draws {
            return Err(Error::InvalidSpec(format!(
                "could not draw {} distinct values within the bounds",
                spec.size
            )));
        }
        draws += 1;
        values.insert(random_rational(&mut rng, spec.num_bound, spec.den_bound));
    }
    PositiveSet::new(values)
}

pub(crate) fn random_rational(rng: &mut impl Rng, num_bound: u64, den_bound: u64) -> PosRational {
    let p = rng.gen_range(1..=num_bound);
    let q = rng.gen_range(1..=den_bound);
    PosRational::from_u64s(p, q)
}

/// Deterministic list of random-set recipes with sizes in `1..=max_size`.
///
/// Bounds are drawn small relative to the size so ratios repeat often and
/// spectra are far from flat.
pub fn random_corpus(count: usize, seed: u64, max_size: usize) -> Vec<RandomSpec> {
    const DENOMINATORS: [u64; 6] = [1, 1, 2, 4, 6, 12];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=max_size.max(1));
            let den_bound = DENOMINATORS[rng.gen_range(0..DENOMINATORS.len())];
            let spread = rng.gen_range(1..=4u64);
            let num_bound = (size as u64 * spread).max(8);
            RandomSpec {
                size,
                seed: rng.gen(),
                num_bound,
                den_bound,
            }
        })
        .collect()
}

/// A named family, written `interval:N`, `geometric:R:N`, `farey:N` or
/// `random:N:SEED:NUM_BOUND:DEN_BOUND`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Interval { n: u64 },
    Geometric { ratio: PosRational, n: u32 },
    Farey { n: u64 },
    Random(RandomSpec),
}

impl FamilySpec {
    pub fn build(&self) -> Result<PositiveSet> {
        match self {
            FamilySpec::Interval { n } => interval_set(*n),
            FamilySpec::Geometric { ratio, n } => geometric_set(ratio, *n),
            FamilySpec::Farey { n } => farey_set(*n),
            FamilySpec::Random(spec) => random_set(spec),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Interval { n } => write!(f, "interval:{n}"),
            FamilySpec::Geometric { ratio, n } => write!(f, "geometric:{ratio}:{n}"),
            FamilySpec::Farey { n } => write!(f, "farey:{n}"),
            FamilySpec::Random(s) => write!(
                f,
                "random:{}:{}:{}:{}",
                s.size, s.seed, s.num_bound, s.den_bound
            ),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let bad = || Error::InvalidSpec(format!("unrecognised family spec {s:?}"));
        let int = |t: &str| t.parse::<u64>().map_err(|_| bad());
        let spec = match parts.as_slice() {
            ["interval", n] => FamilySpec::Interval { n: int(n)? },
            ["geometric", r, n] => FamilySpec::Geometric {
                ratio: parse_rational(r)?,
                n: n.parse().map_err(|_| bad())?,
            },
            ["farey", n] => FamilySpec::Farey { n: int(n)? },
            ["random", n, seed, num, den] => FamilySpec::Random(RandomSpec {
                size: int(n)? as usize,
                seed: int(seed)?,
                num_bound: int(num)?,
                den_bound: int(den)?,
            }),
            _ => return Err(bad()),
        };
        Ok(spec)
    }
}

/// Raw cardinalities of the four pairwise sets of `F_n`.
///
/// `F_n ⊂ (0, 1]` has no negative elements, so differences are counted as
/// `|{a − b : a > b}|`; the full difference set has `2·that + 1` elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FareyStatistics {
    pub n: u64,
    pub size: usize,
    pub sumset_size: usize,
    pub productset_size: usize,
    pub ratioset_size: usize,
    pub positive_difference_count: usize,
    pub difference_set_size: usize,
    /// Each of the four set sizes divided by `|F_n|²`.
    pub sumset_density: PosRational,
    pub productset_density: PosRational,
    pub ratioset_density: PosRational,
    pub difference_density: PosRational,
}

pub fn farey_statistics(n: u64, cap: PairCap) -> Result<FareyStatistics> {
    let f = farey_set(n)?;
    let size = f.len();
    cap.check(size as u128 * size as u128)?;
    let sumset_size = set::sumset(&f, &f, cap)?.len();
    let productset_size = set::productset(&f, &f, cap)?.len();
    let ratioset_size = set::ratioset(&f, &f, cap)?.len();
    let elems = f.elements();
    let diffs: HashSet<PosRational> = (0..size)
        .into_par_iter()
        .fold(HashSet::new, |mut acc, i| {
            acc.extend(elems[..i].iter().filter_map(|b| elems[i].checked_sub(b)));
            acc
        })
        .reduce(HashSet::new, |mut l, r| {
            l.extend(r);
            l
        });
    let positive_difference_count = diffs.len();
    let difference_set_size = 2 * positive_difference_count + 1;
    let sq = BigUint::from(size) * size;
    let density = |c: usize| PosRational::new(BigUint::from(c), sq.clone()).unwrap();
    Ok(FareyStatistics {
        n,
        size,
        sumset_size,
        productset_size,
        ratioset_size,
        positive_difference_count,
        difference_set_size,
        sumset_density: density(sumset_size),
        productset_density: density(productset_size),
        ratioset_density: density(ratioset_size),
        difference_density: density(difference_set_size),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn render(s: &PositiveSet) -> Vec<String> {
        s.iter().map(|e| e.to_string()).collect()
    }

    /// Oracle: double loop with a gcd filter.
    fn farey_oracle(n: u64) -> Vec<PosRational> {
        let mut out = Vec::new();
        for q in 1..=n {
            for a in 1..=q {
                if a.gcd(&q) == 1 {
                    out.push(PosRational::from_u64s(a, q));
                }
            }
        }
        out.sort();
        out
    }

    /// Oracle: every product in a hash set.
    fn table_oracle(n: u64) -> u64 {
        let mut seen = HashSet::new();
        for i in 1..=n {
            for j in 1..=n {
                seen.insert(i * j);
            }
        }
        seen.len() as u64
    }

    #[test]
    fn interval_examples() {
        assert_eq!(render(&interval_set(3).unwrap()), ["1", "2", "3"]);
        assert_eq!(render(&interval_set(1).unwrap()), ["1"]);
        assert!(interval_set(0).is_err());
    }

    #[test]
    fn farey_examples() {
        assert_eq!(render(&farey_set(3).unwrap()), ["1/3", "1/2", "2/3", "1"]);
        assert_eq!(farey_set(5).unwrap().len(), 10);
        assert_eq!(render(&farey_set(1).unwrap()), ["1"]);
        assert!(farey_set(0).is_err());
        assert_eq!(farey_size(5), 10);
        assert_eq!(farey_size(1), 1);
        for n in 1..=60 {
            assert_eq!(farey_set(n).unwrap().elements(), &farey_oracle(n)[..]);
        }
    }

    /// `F_n` is the part of `F_2000` with denominator at most `n`, so prefix
    /// sums of the denominator histogram give every `|F_n|` up to 2000.
    #[test]
    fn farey_size_matches_generated_sets_to_2000() {
        const N: usize = 2000;
        let big = farey_set(N as u64).unwrap();
        let mut by_den = vec![0u64; N + 1];
        for x in big.iter() {
            let q: usize = x.denom().try_into().unwrap();
            by_den[q] += 1;
        }
        let mut running = 0;
        for n in 1..=N {
            running += by_den[n];
            assert_eq!(farey_size(n as u64), running, "n = {n}");
        }
        for n in [1, 2, 97, 500, 1999] {
            assert_eq!(farey_set(n).unwrap().len() as u64, farey_size(n));
        }
    }

    #[test]
    fn totients_small() {
        assert_eq!(&totients(12)[1..], [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
    }

    #[test]
    fn table_examples() {
        let b = TableBudget::default();
        assert_eq!(mult_table_count(4, b).unwrap(), 9);
        assert_eq!(mult_table_count(1, b).unwrap(), 1);
        assert_eq!(mult_table_count(5, b).unwrap(), 14);
        for n in 1..=80 {
            assert_eq!(mult_table_count(n, b).unwrap(), table_oracle(n), "n = {n}");
        }
        assert!(matches!(
            mult_table_count(100, TableBudget(9_999)),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(mult_table_count(0, b).is_err());
    }

    #[test]
    fn table_is_monotone() {
        let b = TableBudget::default();
        let counts: Vec<u64> = (1..=300).map(|n| mult_table_count(n, b).unwrap()).collect();
        for (i, w) in counts.windows(2).enumerate() {
            assert!(w[0] <= w[1]);
            let n = i as u64 + 2;
            assert!(w[1] <= n * (n + 1) / 2);
        }
    }

    #[test]
    fn table_row_fields() {
        let row = table_row(4, TableBudget::default()).unwrap();
        assert_eq!(row.count, 9);
        assert_eq!(row.density, PosRational::from_u64s(9, 16));
        assert!((row.ln_density - (9.0f64 / 16.0).ln()).abs() < 1e-12);
        assert!(table_row(2, TableBudget::default()).unwrap().effective_exponent.is_none());
    }

    #[test]
    fn beta_value() {
        let beta = beta_constant();
        assert_eq!(format!("{beta:.7}"), "0.0860713");
        let inner = (1.0 + std::f64::consts::LN_2.ln()) / std::f64::consts::LN_2;
        assert!(inner > 0.91 && inner < 0.92);
        assert!(beta > 0.0 && beta < 1.0);
    }

    #[test]
    fn geometric_examples() {
        let two = PosRational::from_integer(2);
        assert_eq!(render(&geometric_set(&two, 4).unwrap()), ["1", "2", "4", "8"]);
        assert!(geometric_set(&PosRational::one(), 4).is_err());
        for n in 1..10 {
            let g = geometric_set(&PosRational::from_u64s(2, 3), n).unwrap();
            assert_eq!(g.ratioset(&g).unwrap().len(), 2 * n as usize - 1);
        }
    }

    #[test]
    fn random_is_deterministic() {
        let spec = RandomSpec { size: 20, seed: 42, num_bound: 50, den_bound: 7 };
        let a = random_set(&spec).unwrap();
        assert_eq!(a.len(), 20);
        assert_eq!(a, random_set(&spec).unwrap());
        assert_ne!(a, random_set(&RandomSpec { seed: 43, ..spec }).unwrap());
        for x in a.iter() {
            assert!(x.numer() <= &BigUint::from(50u32) && x.denom() <= &BigUint::from(7u32));
        }
        assert!(random_set(&RandomSpec { size: 10, seed: 1, num_bound: 3, den_bound: 3 }).is_err());
        assert_eq!(random_corpus(50, 9, 64), random_corpus(50, 9, 64));
    }

    #[test]
    fn family_spec_parsing() {
        for text in ["interval:5", "geometric:3/2:4", "farey:7", "random:5:11:20:3"] {
            let spec: FamilySpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
            assert!(spec.build().is_ok());
        }
        for bad in ["interval", "interval:x", "cube:3", "random:1:2:3"] {
            assert!(bad.parse::<FamilySpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn farey_statistics_examples() {
        let s = farey_statistics(2, PairCap::default()).unwrap();
        assert_eq!(
            (s.size, s.sumset_size, s.productset_size, s.ratioset_size, s.positive_difference_count),
            (2, 3, 3, 3, 1)
        );
        let s = farey_statistics(1, PairCap::default()).unwrap();
        assert_eq!((s.sumset_size, s.productset_size, s.ratioset_size), (1, 1, 1));
        assert_eq!((s.positive_difference_count, s.difference_set_size), (0, 1));
        let s = farey_statistics(30, PairCap::default()).unwrap();
        let sq = s.size * s.size;
        for c in [s.sumset_size, s.productset_size, s.ratioset_size, s.difference_set_size] {
            assert!(c < sq);
        }
        assert!(farey_statistics(30, PairCap(1000)).is_err());
    }

    proptest! {
        #[test]
        fn sweep_points_in_range(lo in 1u64..100, span in 0u64..5000, geo in any::<bool>()) {
            let pts = sweep_points(lo, lo + span, geo).unwrap();
            prop_assert_eq!(pts[0], lo);
            prop_assert!(pts.iter().all(|&n| n >= lo && n <= lo + span));
            prop_assert!(pts.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
