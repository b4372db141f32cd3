//! Finite sets of positive rationals and their pairwise set operations.

use std::collections::HashSet;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rational::{parse_rational, PosRational};

/// Default upper bound on the number of element pairs a single operation may enumerate.
pub const DEFAULT_PAIR_CAP: u64 = 100_000_000;

/// Pair counts at or above this are enumerated on the rayon pool.
const PARALLEL_PAIRS: u128 = 1 << 15;

/// Upper bound on pairs enumerated by one pairwise operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairCap(pub u64);

impl Default for PairCap {
    fn default() -> Self {
        PairCap(DEFAULT_PAIR_CAP)
    }
}

impl PairCap {
    pub fn check(self, pairs: u128) -> Result<()> {
        if pairs > self.0 as u128 {
            Err(Error::PairCapExceeded { pairs, cap: self.0 })
        } else {
            Ok(())
        }
    }
}

/// A nonempty finite set of positive rationals, stored strictly ascending.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PositiveSet {
    elements: Vec<PosRational>,
}

impl std::fmt::Debug for PositiveSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.elements.iter().map(|e| e.to_string())).finish()
    }
}

impl PositiveSet {
    /// Sorts and deduplicates `values`. Fails on empty input.
    pub fn new(values: impl IntoIterator<Item = PosRational>) -> Result<Self> {
        let mut elements: Vec<PosRational> = values.into_iter().collect();
        if elements.is_empty() {
            return Err(Error::EmptySet);
        }
        elements.sort();
        elements.dedup();
        Ok(PositiveSet { elements })
    }

    pub fn from_integers(values: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut out = Vec::new();
        for v in values {
            if v == 0 {
                return Err(Error::InvalidSpec("set elements must be positive".into()));
            }
            out.push(PosRational::from_integer(v));
        }
        Self::new(out)
    }

    /// Caller guarantees the vector is nonempty, sorted and duplicate-free.
    pub(crate) fn from_sorted_unchecked(elements: Vec<PosRational>) -> Self {
        debug_assert!(!elements.is_empty());
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        PositiveSet { elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Always false; kept for API symmetry with collections.
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[PosRational] {
        &self.elements
    }

    pub fn iter(&self) -> std::slice::Iter<'_, PosRational> {
        self.elements.iter()
    }

    pub fn contains(&self, x: &PosRational) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    pub fn min(&self) -> &PosRational {
        &self.elements[0]
    }

    pub fn max(&self) -> &PosRational {
        &self.elements[self.elements.len() - 1]
    }

    /// The dilate `cA = {c·a : a ∈ A}`.
    pub fn dilate(&self, c: &PosRational) -> PositiveSet {
        PositiveSet::from_sorted_unchecked(self.elements.iter().map(|a| a * c).collect())
    }

    /// Renders in the set file format: one element per line.
    pub fn to_set_file(&self) -> String {
        let mut out = String::new();
        for e in &self.elements {
            writeln!(out, "{e}").unwrap();
        }
        out
    }

    pub fn sumset(&self, other: &PositiveSet) -> Result<PositiveSet> {
        sumset(self, other, PairCap::default())
    }

    pub fn productset(&self, other: &PositiveSet) -> Result<PositiveSet> {
        productset(self, other, PairCap::default())
    }

    pub fn ratioset(&self, other: &PositiveSet) -> Result<PositiveSet> {
        ratioset(self, other, PairCap::default())
    }
}

impl serde::Serialize for PositiveSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(&self.elements)
    }
}

impl<'a> IntoIterator for &'a PositiveSet {
    type Item = &'a PosRational;
    type IntoIter = std::slice::Iter<'a, PosRational>;

    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

/// Parses the set file format: one rational per line, `#` comments, blank lines ignored.
pub fn parse_set_file(text: &str) -> Result<PositiveSet> {
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v = parse_rational(line).map_err(|source| Error::SetFile { line: i + 1, source })?;
        values.push(v);
    }
    PositiveSet::new(values)
}

fn pair_count(a: &PositiveSet, b: &PositiveSet) -> u128 {
    a.len() as u128 * b.len() as u128
}

/// Collects `{op(x, y) : x ∈ a, y ∈ b}` into a sorted set.
fn pairwise<F>(a: &PositiveSet, b: &PositiveSet, cap: PairCap, op: F) -> Result<PositiveSet>
where
    F: Fn(&PosRational, &PosRational) -> PosRational + Sync,
{
    let pairs = pair_count(a, b);
    cap.check(pairs)?;
    let distinct: HashSet<PosRational> = if pairs >= PARALLEL_PAIRS {
        a.elements
            .par_iter()
            .fold(HashSet::new, |mut acc, x| {
                acc.extend(b.elements.iter().map(|y| op(x, y)));
                acc
            })
            .reduce(HashSet::new, |l, r| {
                let (mut big, small) = if l.len() >= r.len() { (l, r) } else { (r, l) };
                big.extend(small);
                big
            })
    } else {
        a.elements
            .iter()
            .flat_map(|x| b.elements.iter().map(|y| op(x, y)))
            .collect()
    };
    let mut out: Vec<PosRational> = distinct.into_iter().collect();
    if out.len() >= PARALLEL_PAIRS as usize {
        out.par_sort_unstable();
    } else {
        out.sort_unstable();
    }
    Ok(PositiveSet::from_sorted_unchecked(out))
}

/// `A + B = {a + b}`.
pub fn sumset(a: &PositiveSet, b: &PositiveSet, cap: PairCap) -> Result<PositiveSet> {
    pairwise(a, b, cap, |x, y| x + y)
}

/// `AB = {a·b}`.
pub fn productset(a: &PositiveSet, b: &PositiveSet, cap: PairCap) -> Result<PositiveSet> {
    pairwise(a, b, cap, |x, y| x * y)
}

/// `A/B = {a/b}`.
pub fn ratioset(a: &PositiveSet, b: &PositiveSet, cap: PairCap) -> Result<PositiveSet> {
    pairwise(a, b, cap, |x, y| x / y)
}

/// `{a² : a ∈ A}`; squaring is increasing on positives so order is preserved.
pub fn square_set(a: &PositiveSet) -> PositiveSet {
    PositiveSet::from_sorted_unchecked(a.elements.iter().map(PosRational::square).collect())
}

/// `|(A×A) + (A×A)|` by building every sum of two grid points in the plane.
///
/// Coordinates are exact; the coordinate additions `a_i + a_j` are tabulated once
/// and the planar sums are keyed by value.
pub fn grid_sumset_size(a: &PositiveSet, cap: PairCap) -> Result<usize> {
    let n = a.len();
    let points = (n * n) as u128;
    cap.check(points * points)?;

    let table: Vec<Vec<PosRational>> = a
        .elements
        .iter()
        .map(|x| a.elements.iter().map(|y| x + y).collect())
        .collect();
    // Grid point p = (a[i], a[j]); p + q = (table[i1][i2], table[j1][j2]).
    // Point addition commutes, so unordered point pairs suffice.
    let grid: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let sums = grid
        .par_iter()
        .enumerate()
        .fold(HashSet::new, |mut acc, (pi, &(i1, j1))| {
            for &(i2, j2) in &grid[pi..] {
                acc.insert((&table[i1][i2], &table[j1][j2]));
            }
            acc
        })
        .reduce(HashSet::new, |mut l, r| {
            l.extend(r);
            l
        });
    Ok(sums.len())
}

/// Sizes of the radius-set and angle-set of the grid `A×A`.
///
/// Radii are counted through their squares `a² + b²` and angles through the
/// slopes `a/b`; both maps are injective on positive inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct RadAngSizes {
    pub radius_count: usize,
    pub angle_count: usize,
}

pub fn rad_ang_sizes(a: &PositiveSet, cap: PairCap) -> Result<RadAngSizes> {
    cap.check(pair_count(a, a))?;
    let mut radii = HashSet::new();
    let mut angles = HashSet::new();
    for x in &a.elements {
        let xx = x.square();
        for y in &a.elements {
            radii.insert(&xx + &y.square());
            angles.insert(x / y);
        }
    }
    Ok(RadAngSizes {
        radius_count: radii.len(),
        angle_count: angles.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[u64]) -> PositiveSet {
        PositiveSet::from_integers(v.iter().copied()).unwrap()
    }

    fn render(s: &PositiveSet) -> Vec<String> {
        s.iter().map(|e| e.to_string()).collect()
    }

    /// Naive oracle: double loop, linear-scan dedup, final sort.
    fn naive(a: &PositiveSet, op: impl Fn(&PosRational, &PosRational) -> PosRational) -> Vec<PosRational> {
        let mut out: Vec<PosRational> = Vec::new();
        for x in a.iter() {
            for y in a.iter() {
                let v = op(x, y);
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn make_set_examples() {
        assert_eq!(render(&ints(&[2, 1, 2])), ["1", "2"]);
        let half = PositiveSet::new([PosRational::from_u64s(1, 2)]).unwrap();
        assert_eq!(half.len(), 1);
        assert!(matches!(PositiveSet::new(Vec::new()), Err(Error::EmptySet)));
    }

    #[test]
    fn sumset_examples() {
        let a = ints(&[1, 2, 3]);
        assert_eq!(render(&a.sumset(&a).unwrap()), ["2", "3", "4", "5", "6"]);
        let b = ints(&[1, 2, 4]);
        assert_eq!(render(&b.sumset(&b).unwrap()), ["2", "3", "4", "5", "6", "8"]);
        for n in 1..30 {
            let s = PositiveSet::from_integers(1..=n).unwrap();
            assert_eq!(s.sumset(&s).unwrap().len() as u64, 2 * n - 1);
        }
    }

    #[test]
    fn productset_examples() {
        let a = ints(&[1, 2, 3]);
        assert_eq!(render(&a.productset(&a).unwrap()), ["1", "2", "3", "4", "6", "9"]);
        let b = ints(&[1, 2, 4]);
        assert_eq!(render(&b.productset(&b).unwrap()), ["1", "2", "4", "8", "16"]);
        let c = PositiveSet::new([PosRational::from_u64s(3, 7)]).unwrap();
        assert_eq!(render(&c.productset(&c).unwrap()), ["9/49"]);
    }

    #[test]
    fn ratioset_examples() {
        let a = ints(&[1, 2, 3]);
        assert_eq!(
            render(&a.ratioset(&a).unwrap()),
            ["1/3", "1/2", "2/3", "1", "3/2", "2", "3"]
        );
        let b = ints(&[1, 2, 4]);
        assert_eq!(render(&b.ratioset(&b).unwrap()), ["1/4", "1/2", "1", "2", "4"]);
        let r = PosRational::from_u64s(3, 2);
        let geo = PositiveSet::new((0..9).map(|i| r.pow(i))).unwrap();
        assert_eq!(geo.ratioset(&geo).unwrap().len(), 17);
    }

    #[test]
    fn square_set_examples() {
        assert_eq!(render(&square_set(&ints(&[1, 2, 3]))), ["1", "4", "9"]);
        let s = PositiveSet::new([PosRational::from_u64s(1, 2), PosRational::from_integer(2)]).unwrap();
        assert_eq!(render(&square_set(&s)), ["1/4", "4"]);
    }

    #[test]
    fn grid_examples() {
        let cap = PairCap::default();
        assert_eq!(grid_sumset_size(&ints(&[1, 2]), cap).unwrap(), 9);
        assert_eq!(grid_sumset_size(&ints(&[5]), cap).unwrap(), 1);
        assert_eq!(grid_sumset_size(&ints(&[1, 2, 3]), cap).unwrap(), 25);
    }

    #[test]
    fn rad_ang_examples() {
        let sizes = rad_ang_sizes(&ints(&[1, 2]), PairCap::default()).unwrap();
        assert_eq!(sizes, RadAngSizes { radius_count: 3, angle_count: 3 });
    }

    #[test]
    fn cap_is_reported() {
        let a = PositiveSet::from_integers(1..=10).unwrap();
        let err = sumset(&a, &a, PairCap(99)).unwrap_err();
        assert!(matches!(err, Error::PairCapExceeded { pairs: 100, cap: 99 }));
        assert!(sumset(&a, &a, PairCap(100)).is_ok());
        assert!(grid_sumset_size(&a, PairCap(9_999)).is_err());
    }

    #[test]
    fn parallel_path_matches_sequential() {
        // 250 x 250 pairs crosses the parallel threshold
        let a = PositiveSet::new((1..=250u64).map(|i| PosRational::from_u64s(i * i, 7 + i % 5))).unwrap();
        assert!(pair_count(&a, &a) >= PARALLEL_PAIRS);
        let fast = a.ratioset(&a).unwrap();
        let mut slow: HashSet<PosRational> = HashSet::new();
        for x in a.iter() {
            for y in a.iter() {
                slow.insert(x / y);
            }
        }
        let mut slow: Vec<_> = slow.into_iter().collect();
        slow.sort();
        assert_eq!(fast.elements(), &slow[..]);
    }

    #[test]
    fn set_file_parsing() {
        let s = parse_set_file("# comment\n1/2\n\n  3 \n0.5\n").unwrap();
        assert_eq!(render(&s), ["1/2", "3"]);
        assert!(matches!(parse_set_file("# nothing\n\n"), Err(Error::EmptySet)));
        assert!(matches!(parse_set_file("1\nx\n"), Err(Error::SetFile { line: 2, .. })));
        assert_eq!(parse_set_file(&s.to_set_file()).unwrap(), s);
    }

    fn arb_set(max: usize) -> impl Strategy<Value = PositiveSet> {
        prop::collection::vec((1u64..40, 1u64..8), 1..max).prop_map(|v| {
            PositiveSet::new(v.into_iter().map(|(n, d)| PosRational::from_u64s(n, d))).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn pairwise_ops_match_naive(a in arb_set(12)) {
            prop_assert_eq!(a.sumset(&a).unwrap().elements().to_vec(), naive(&a, |x, y| x + y));
            prop_assert_eq!(a.productset(&a).unwrap().elements().to_vec(), naive(&a, |x, y| x * y));
            prop_assert_eq!(a.ratioset(&a).unwrap().elements().to_vec(), naive(&a, |x, y| x / y));
        }

        #[test]
        fn sumset_lower_bound_and_progressions(a in arb_set(12)) {
            let n = a.len();
            let s = a.sumset(&a).unwrap().len();
            prop_assert!(s >= 2 * n - 1);
            let diffs: Vec<_> = a.elements().windows(2).map(|w| w[1].checked_sub(&w[0]).unwrap()).collect();
            let is_ap = diffs.windows(2).all(|w| w[0] == w[1]);
            prop_assert_eq!(s == 2 * n - 1, is_ap);
        }

        #[test]
        fn ratioset_has_odd_size(a in arb_set(16)) {
            prop_assert_eq!(a.ratioset(&a).unwrap().len() % 2, 1);
        }

        #[test]
        fn grid_identity(a in arb_set(8)) {
            let s = a.sumset(&a).unwrap().len();
            prop_assert_eq!(grid_sumset_size(&a, PairCap::default()).unwrap(), s * s);
        }

        #[test]
        fn rad_ang_identities(a in arb_set(12)) {
            let sizes = rad_ang_sizes(&a, PairCap::default()).unwrap();
            let sq = square_set(&a);
            prop_assert_eq!(sq.len(), a.len());
            prop_assert_eq!(sizes.angle_count, a.ratioset(&a).unwrap().len());
            prop_assert_eq!(sizes.angle_count, sq.ratioset(&sq).unwrap().len());
            prop_assert_eq!(sizes.radius_count, sq.sumset(&sq).unwrap().len());
        }
    }
}
