//! Exact verification of the sum-division inequality
//! `|A+A|²·|A/A| ≥ |A|⁴/4` and each estimate of its proof on a concrete set.
//!
//! With `m_1 ≤ … ≤ m_y` the ratio multiplicities and `k` the half-mass
//! threshold, the proof multiplies three estimates:
//!
//! * `|A/A| ≥ k ≥ |A|²/(2·m_k)`
//! * `Σ_{i≥k} m_i ≥ |A|²/2`
//! * `|A+A|² ≥ m_k · Σ_{i≥k} m_i`
//!
//! Every inequality here is checked with denominators cleared, in arbitrary
//! precision integers. Floating point appears only in rendered decimals.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::decimal;
use crate::error::{Error, Result};
use crate::rational::PosRational;
use crate::set::{self, PairCap, PositiveSet};
use crate::spectrum::{ratio_spectrum, SpectrumEntry};

fn big(x: impl Into<BigUint>) -> BigUint {
    x.into()
}

fn as_string<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// `⌈log₂ n⌉` for `n ≥ 1`.
pub fn ceil_log2(n: u64) -> u32 {
    assert!(n >= 1);
    64 - (n - 1).leading_zeros()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StatStatus {
    Pass,
    Fail,
    NotApplicable,
    ReportOnly,
}

/// One named statistic of [`report_ratios`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Statistic {
    /// Exact value when it is rational.
    pub exact: Option<PosRational>,
    /// Decimal rendering at the requested number of significant digits.
    pub decimal: Option<String>,
    pub status: StatStatus,
}

impl Statistic {
    fn exact(value: PosRational, status: StatStatus, digits: usize) -> Self {
        Statistic {
            decimal: Some(decimal::render(&value, digits)),
            exact: Some(value),
            status,
        }
    }

    fn not_applicable() -> Self {
        Statistic {
            exact: None,
            decimal: None,
            status: StatStatus::NotApplicable,
        }
    }
}

fn ratio(num: BigUint, den: BigUint) -> PosRational {
    PosRational::new(num, den).expect("statistics are strictly positive")
}

/// Cardinalities feeding the report statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SetSizes {
    pub cardinality: usize,
    pub sumset: usize,
    pub productset: usize,
    pub ratioset: usize,
}

impl SetSizes {
    pub fn compute(a: &PositiveSet, cap: PairCap) -> Result<Self> {
        Ok(SetSizes {
            cardinality: a.len(),
            sumset: set::sumset(a, a, cap)?.len(),
            productset: set::productset(a, a, cap)?.len(),
            ratioset: set::ratioset(a, a, cap)?.len(),
        })
    }
}

/// Named statistics for the neighbouring sum-product bounds.
///
/// Keys:
/// * `sum_division` — `|A+A|²|A/A| / |A|⁴`, passes when `≥ 1/4`.
/// * `solymosi_joint` — `4⌈log₂|A|⌉·|A+A|²|AA| / |A|⁴`, passes when `≥ 1`
///   (needs `|A| ≥ 2`).
/// * `solymosi_max` — `⌈log₂|A|⌉·(2·max{|A+A|,|AA|})³ / |A|⁴`, passes when
///   `≥ 1` (needs `|A| ≥ 2`).
/// * `elekes_ruzsa` — `|A+A|⁶|A/A| / |A|⁸`, report only.
/// * `szemeredi_trotter` — `|A+A||A/A| / |A|^{5/2}`, report only, decimal only.
/// * `multiplicative_energy` — `Σ m_i²` over the ratio spectrum, report only.
pub fn report_ratios_from(
    sizes: SetSizes,
    energy: u128,
    digits: usize,
) -> BTreeMap<String, Statistic> {
    let n = big(sizes.cardinality as u64);
    let s = big(sizes.sumset as u64);
    let p = big(sizes.productset as u64);
    let r = big(sizes.ratioset as u64);
    let n4 = n.pow(4);
    let mut out = BTreeMap::new();

    let j = ratio(&s * &s * &r, n4.clone());
    let j_ok = big(4u32) * j.numer() >= *j.denom();
    out.insert(
        "sum_division".to_string(),
        Statistic::exact(j, status(j_ok), digits),
    );

    if sizes.cardinality >= 2 {
        let lg = big(ceil_log2(sizes.cardinality as u64));
        let joint = ratio(big(4u32) * &lg * &s * &s * &p, n4.clone());
        let ok = joint.numer() >= joint.denom();
        out.insert(
            "solymosi_joint".to_string(),
            Statistic::exact(joint, status(ok), digits),
        );
        let mx = (&s).max(&p) * 2u32;
        let maxform = ratio(&lg * mx.pow(3), n4.clone());
        let ok = maxform.numer() >= maxform.denom();
        out.insert(
            "solymosi_max".to_string(),
            Statistic::exact(maxform, status(ok), digits),
        );
    } else {
        out.insert("solymosi_joint".to_string(), Statistic::not_applicable());
        out.insert("solymosi_max".to_string(), Statistic::not_applicable());
    }

    out.insert(
        "elekes_ruzsa".to_string(),
        Statistic::exact(ratio(s.pow(6) * &r, n.pow(8)), StatStatus::ReportOnly, digits),
    );

    // (|A+A||A/A|)² / |A|⁵, rendered through its square root
    let st_squared = ratio(s.pow(2) * r.pow(2), n.pow(5));
    out.insert(
        "szemeredi_trotter".to_string(),
        Statistic {
            exact: None,
            decimal: Some(decimal::render_root(&st_squared, 2, digits)),
            status: StatStatus::ReportOnly,
        },
    );

    let e = PosRational::new(BigUint::from(energy), big(1u32)).expect("energy ≥ |A|²");
    out.insert(
        "multiplicative_energy".to_string(),
        Statistic {
            decimal: None,
            exact: Some(e),
            status: StatStatus::ReportOnly,
        },
    );
    out
}

fn status(ok: bool) -> StatStatus {
    if ok {
        StatStatus::Pass
    } else {
        StatStatus::Fail
    }
}

/// Report statistics for `A`, at [`decimal::DEFAULT_SIG_DIGITS`].
pub fn report_ratios(a: &PositiveSet, cap: PairCap) -> Result<BTreeMap<String, Statistic>> {
    let sizes = SetSizes::compute(a, cap)?;
    let energy = ratio_spectrum(a, cap)?.energy();
    Ok(report_ratios_from(sizes, energy, decimal::DEFAULT_SIG_DIGITS))
}

/// Every quantity of the proof chain for one set, with exact pass/fail flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub cardinality: usize,
    pub sumset_size: usize,
    pub productset_size: usize,
    pub ratioset_size: usize,
    pub k: usize,
    pub m_k: u64,
    pub head_mass: u64,
    pub tail_mass: u64,
    /// `|A+A|²·|A/A|`
    #[serde(serialize_with = "as_string")]
    pub lhs: BigUint,
    /// `|A|⁴`, compared against `4·lhs`.
    #[serde(serialize_with = "as_string")]
    pub rhs_times4: BigUint,
    pub passes_theorem: bool,
    /// `|A/A| ≥ k` and `2·m_k·k ≥ |A|²` (hence `2·m_k·|A/A| ≥ |A|²`).
    pub passes_est1: bool,
    /// `2·tail_mass ≥ |A|²`
    pub passes_est2: bool,
    /// `|A+A|² ≥ m_k·tail_mass`
    pub passes_est3: bool,
    /// The product of the three estimates yields the theorem inequality.
    pub chain_implies_theorem: bool,
    /// `max{|A+A|, |A/A|}`
    pub corollary_lhs: usize,
    /// `(2·corollary_lhs)³ ≥ |A|⁴`
    pub passes_corollary: bool,
    pub report_ratios: BTreeMap<String, Statistic>,
}

impl VerificationReport {
    /// Turns a failed theorem or broken chain into [`Error::InvariantViolation`].
    /// Both are proved facts, so a failure here means a bug.
    pub fn ensure_sound(&self) -> Result<()> {
        if !self.passes_theorem {
            return Err(Error::InvariantViolation(format!(
                "4·|A+A|²·|A/A| = 4·{} < |A|⁴ = {}",
                self.lhs, self.rhs_times4
            )));
        }
        if !self.chain_implies_theorem {
            return Err(Error::InvariantViolation(
                "proof-chain estimates hold but their product does not".into(),
            ));
        }
        if !self.passes_corollary {
            return Err(Error::InvariantViolation(format!(
                "(2·{})³ < |A|⁴ for |A| = {}",
                self.corollary_lhs, self.cardinality
            )));
        }
        Ok(())
    }

    pub fn all_estimates_pass(&self) -> bool {
        self.passes_est1 && self.passes_est2 && self.passes_est3
    }
}

pub fn verify_sum_division(a: &PositiveSet, cap: PairCap) -> Result<VerificationReport> {
    verify_with_digits(a, cap, decimal::DEFAULT_SIG_DIGITS)
}

pub fn verify_with_digits(a: &PositiveSet, cap: PairCap, digits: usize) -> Result<VerificationReport> {
    let sizes = SetSizes::compute(a, cap)?;
    let spectrum = ratio_spectrum(a, cap)?;
    debug_assert_eq!(spectrum.len(), sizes.ratioset);
    let t = spectrum.threshold();

    let n2 = big(sizes.cardinality as u64).pow(2);
    let n4 = &n2 * &n2;
    let s2 = big(sizes.sumset as u64).pow(2);
    let y = big(sizes.ratioset as u64);
    let m_k = big(t.m_k);
    let tail = big(t.tail_mass);
    let two = big(2u32);

    let lhs = &s2 * &y;
    let passes_theorem = big(4u32) * &lhs >= n4;

    let passes_est1 = sizes.ratioset >= t.k
        && &two * &m_k * big(t.k as u64) >= n2
        && &two * &m_k * &y >= n2;
    let passes_est2 = &two * &tail >= n2;
    let passes_est3 = s2 >= &m_k * &tail;

    // (2·m_k·|A/A|)·(2·tail)·|A+A|² ≥ |A|²·|A|²·(m_k·tail); dividing by m_k·tail > 0
    // leaves 4·|A+A|²·|A/A| ≥ |A|⁴.
    let chain_implies_theorem = if passes_est1 && passes_est2 && passes_est3 {
        let product_lhs = (&two * &m_k * &y) * (&two * &tail) * &s2;
        let product_rhs = &n2 * &n2 * (&m_k * &tail);
        product_lhs >= product_rhs && passes_theorem
    } else {
        true
    };

    let corollary = corollary_from(sizes.cardinality, sizes.sumset.max(sizes.ratioset));

    Ok(VerificationReport {
        cardinality: sizes.cardinality,
        sumset_size: sizes.sumset,
        productset_size: sizes.productset,
        ratioset_size: sizes.ratioset,
        k: t.k,
        m_k: t.m_k,
        head_mass: t.head_mass,
        tail_mass: t.tail_mass,
        lhs,
        rhs_times4: n4,
        passes_theorem,
        passes_est1,
        passes_est2,
        passes_est3,
        chain_implies_theorem,
        corollary_lhs: corollary.max_value,
        passes_corollary: corollary.passes,
        report_ratios: report_ratios_from(sizes, spectrum.energy(), digits),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CorollaryCheck {
    pub max_value: usize,
    pub passes: bool,
}

fn corollary_from(cardinality: usize, max_value: usize) -> CorollaryCheck {
    let lhs = (big(max_value as u64) * 2u32).pow(3);
    CorollaryCheck {
        max_value,
        passes: lhs >= big(cardinality as u64).pow(4),
    }
}

/// `max{|A+A|, |A/A|} ≥ |A|^{4/3}/2`, checked as `(2·max)³ ≥ |A|⁴`.
pub fn corollary_max(a: &PositiveSet, cap: PairCap) -> Result<CorollaryCheck> {
    let s = set::sumset(a, a, cap)?.len();
    let r = set::ratioset(a, a, cap)?.len();
    Ok(corollary_from(a.len(), s.max(r)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RadAngBound {
    pub radius_count: usize,
    pub angle_count: usize,
    pub max_value: usize,
    /// `(2·max)³ ≥ |A|⁴`
    pub passes: bool,
    /// `radius_count = |Â+Â|` with `Â = {a²}`
    pub radius_matches_square_sumset: bool,
    /// `angle_count = |Â/Â|`
    pub angle_matches_square_ratioset: bool,
}

/// The corollary applied to the squares of `A`, read as radii and angles of the grid `A×A`.
pub fn rad_ang_bound(a: &PositiveSet, cap: PairCap) -> Result<RadAngBound> {
    let sizes = set::rad_ang_sizes(a, cap)?;
    let sq = set::square_set(a);
    let sq_sum = set::sumset(&sq, &sq, cap)?.len();
    let sq_ratio = set::ratioset(&sq, &sq, cap)?.len();
    let c = corollary_from(a.len(), sizes.radius_count.max(sizes.angle_count));
    Ok(RadAngBound {
        radius_count: sizes.radius_count,
        angle_count: sizes.angle_count,
        max_value: c.max_value,
        passes: c.passes,
        radius_matches_square_sumset: sizes.radius_count == sq_sum,
        angle_matches_square_ratioset: sizes.angle_count == sq_ratio,
    })
}

/// One sum of two grid points taken from neighbouring rays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RaySum {
    pub point: (PosRational, PosRational),
    /// The two generating ray ratios `x/y`, smaller first.
    pub sector: (PosRational, PosRational),
}

impl RaySum {
    /// True when `x/y` of the point lies in the closed sector of its rays.
    pub fn in_sector(&self) -> bool {
        let r = &self.point.0 / &self.point.1;
        self.sector.0 <= r && r <= self.sector.1
    }
}

/// Grid points `(a, b) ∈ A×A` with `a/b = z`.
pub fn ray_points(a: &PositiveSet, z: &PosRational) -> Vec<(PosRational, PosRational)> {
    a.iter()
        .filter_map(|x| {
            let b = x / z;
            a.contains(&b).then(|| (x.clone(), b))
        })
        .collect()
}

/// All sums `p + q` with `p`, `q` on consecutive rays of `rays` (sorted by ratio).
pub fn consecutive_ray_sums(a: &PositiveSet, rays: &[SpectrumEntry]) -> Vec<RaySum> {
    let points: Vec<_> = rays.iter().map(|r| ray_points(a, &r.ratio)).collect();
    let mut out = Vec::new();
    for j in 1..rays.len() {
        let sector = (rays[j - 1].ratio.clone(), rays[j].ratio.clone());
        for p in &points[j - 1] {
            for q in &points[j] {
                out.push(RaySum {
                    point: (&p.0 + &q.0, &p.1 + &q.1),
                    sector: sector.clone(),
                });
            }
        }
    }
    out
}

/// Constructive lower bound on `|(A×A)+(A×A)|` from neighbouring rays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RayCertificate {
    pub selected_from: usize,
    /// Rays kept have multiplicity at least this (`m` at `selected_from`).
    pub min_multiplicity: u64,
    pub slope_sorted_rays: Vec<SpectrumEntry>,
    /// `Σ_j μ_j·μ_{j+1}` over ratio-consecutive kept rays.
    pub pair_bound: u64,
    pub constructed_points: usize,
    pub direct_grid_size: usize,
    pub distinctness_verified: bool,
    pub sectors_verified: bool,
    /// `pair_bound ≤ direct_grid_size`
    pub bound_holds: bool,
}

/// Keeps every ray whose multiplicity is at least `m_{from_index}`, orders the
/// rays by ratio, builds all sums over neighbouring rays, and checks that they
/// are pairwise distinct, lie in their sectors, and number no more than the
/// directly constructed `|(A×A)+(A×A)|`.
pub fn ray_certificate(a: &PositiveSet, from_index: usize, cap: PairCap) -> Result<RayCertificate> {
    let spectrum = ratio_spectrum(a, cap)?;
    if from_index == 0 || from_index > spectrum.len() {
        return Err(Error::IndexOutOfRange {
            index: from_index,
            len: spectrum.len(),
        });
    }
    let floor = spectrum.entries()[from_index - 1].multiplicity;
    let mut rays: Vec<SpectrumEntry> = spectrum
        .entries()
        .iter()
        .filter(|e| e.multiplicity >= floor)
        .cloned()
        .collect();
    rays.sort_by(|l, r| l.ratio.cmp(&r.ratio));

    let pair_bound: u64 = rays
        .windows(2)
        .map(|w| w[0].multiplicity * w[1].multiplicity)
        .sum();
    cap.check(pair_bound as u128)?;

    let sums = consecutive_ray_sums(a, &rays);
    let distinct: HashSet<&(PosRational, PosRational)> = sums.iter().map(|s| &s.point).collect();
    let direct_grid_size = set::grid_sumset_size(a, cap)?;

    Ok(RayCertificate {
        selected_from: from_index,
        min_multiplicity: floor,
        pair_bound,
        constructed_points: sums.len(),
        distinctness_verified: distinct.len() == sums.len() && sums.len() as u64 == pair_bound,
        sectors_verified: sums.iter().all(RaySum::in_sector),
        bound_holds: pair_bound <= direct_grid_size as u64,
        direct_grid_size,
        slope_sorted_rays: rays,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[u64]) -> PositiveSet {
        PositiveSet::from_integers(v.iter().copied()).unwrap()
    }

    fn cap() -> PairCap {
        PairCap::default()
    }

    #[test]
    fn verify_1_2_4() {
        let r = verify_sum_division(&ints(&[1, 2, 4]), cap()).unwrap();
        assert_eq!(
            (r.sumset_size, r.ratioset_size, r.k, r.m_k, r.tail_mass),
            (6, 5, 4, 2, 5)
        );
        assert_eq!(r.lhs, big(180u32));
        assert_eq!(r.rhs_times4, big(81u32));
        assert!(r.passes_est1 && r.passes_est2 && r.passes_est3);
        assert!(r.passes_theorem && r.chain_implies_theorem);
        r.ensure_sound().unwrap();
    }

    #[test]
    fn verify_singleton() {
        let r = verify_sum_division(&ints(&[9]), cap()).unwrap();
        assert_eq!((r.sumset_size, r.ratioset_size, r.k, r.m_k, r.tail_mass), (1, 1, 1, 1, 1));
        assert!(r.passes_theorem);
        assert_eq!(r.report_ratios["solymosi_joint"].status, StatStatus::NotApplicable);
        assert_eq!(r.report_ratios["solymosi_max"].status, StatStatus::NotApplicable);
    }

    #[test]
    fn verify_1_2_3() {
        let r = verify_sum_division(&ints(&[1, 2, 3]), cap()).unwrap();
        assert_eq!((r.sumset_size, r.ratioset_size), (5, 7));
        assert_eq!(r.lhs, big(175u32));
        assert!(r.passes_theorem);
        assert_eq!(r.corollary_lhs, 7);
        let er = &r.report_ratios["elekes_ruzsa"];
        assert_eq!(er.exact.as_ref().unwrap().to_string(), "109375/6561");
        assert_eq!(er.status, StatStatus::ReportOnly);
    }

    #[test]
    fn corollary_examples() {
        assert_eq!(
            corollary_max(&ints(&[1, 2, 3]), cap()).unwrap(),
            CorollaryCheck { max_value: 7, passes: true }
        );
        assert_eq!(corollary_max(&ints(&[4]), cap()).unwrap().max_value, 1);
        assert_eq!(corollary_max(&ints(&[1, 2, 4]), cap()).unwrap().max_value, 6);
    }

    #[test]
    fn rad_ang_examples() {
        let b = rad_ang_bound(&ints(&[1, 2]), cap()).unwrap();
        assert_eq!((b.radius_count, b.angle_count, b.passes), (3, 3, true));
        let b = rad_ang_bound(&ints(&[3]), cap()).unwrap();
        assert_eq!((b.radius_count, b.angle_count), (1, 1));
        let b = rad_ang_bound(&ints(&[1, 2, 3]), cap()).unwrap();
        assert_eq!(b.angle_count, 7);
        assert!(b.radius_matches_square_sumset && b.angle_matches_square_ratioset);
    }

    #[test]
    fn solymosi_log_bound_on_pair() {
        let stats = report_ratios(&ints(&[1, 2]), cap()).unwrap();
        let joint = &stats["solymosi_joint"];
        // 4·1·9·3 / 16
        assert_eq!(joint.exact.as_ref().unwrap().to_string(), "27/4");
        assert_eq!(joint.status, StatStatus::Pass);
    }

    #[test]
    fn ceil_log2_values() {
        let got: Vec<u32> = [1u64, 2, 3, 4, 5, 8, 9, 64, 65].iter().map(|&n| ceil_log2(n)).collect();
        assert_eq!(got, [0, 1, 2, 2, 3, 3, 4, 6, 7]);
    }

    #[test]
    fn certificate_examples() {
        let c = ray_certificate(&ints(&[1, 2]), 1, cap()).unwrap();
        let rays: Vec<(String, u64)> = c
            .slope_sorted_rays
            .iter()
            .map(|e| (e.ratio.to_string(), e.multiplicity))
            .collect();
        assert_eq!(rays, [("1/2".into(), 1), ("1".into(), 2), ("2".into(), 1)]);
        assert_eq!(c.pair_bound, 4);
        assert_eq!(c.direct_grid_size, 9);
        assert!(c.distinctness_verified && c.sectors_verified && c.bound_holds);

        let c = ray_certificate(&ints(&[5]), 1, cap()).unwrap();
        assert_eq!((c.pair_bound, c.direct_grid_size), (0, 1));

        let c = ray_certificate(&ints(&[1, 2, 4]), 4, cap()).unwrap();
        let mults: Vec<u64> = c.slope_sorted_rays.iter().map(|e| e.multiplicity).collect();
        assert_eq!(mults, [2, 3, 2]);
        assert_eq!(c.pair_bound, 12);
        assert_eq!(c.direct_grid_size, 36);
        assert!(c.distinctness_verified && c.sectors_verified && c.bound_holds);

        assert!(ray_certificate(&ints(&[1, 2]), 0, cap()).is_err());
        assert!(ray_certificate(&ints(&[1, 2]), 4, cap()).is_err());
    }

    #[test]
    fn report_json_field_names() {
        let r = verify_sum_division(&ints(&[1, 2, 4]), cap()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["lhs"], "180");
        assert_eq!(v["k"], 4);
        assert_eq!(v["passes_theorem"], true);
        assert_eq!(v["report_ratios"]["elekes_ruzsa"]["status"], "report_only");
    }

    fn arb_set() -> impl Strategy<Value = PositiveSet> {
        prop::collection::vec((1u64..24, 1u64..6), 1..14).prop_map(|v| {
            PositiveSet::new(v.into_iter().map(|(n, d)| PosRational::from_u64s(n, d))).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn chain_and_theorem_hold(a in arb_set()) {
            let r = verify_sum_division(&a, cap()).unwrap();
            prop_assert!(r.all_estimates_pass());
            prop_assert!(r.ensure_sound().is_ok());
        }

        #[test]
        fn dilation_invariant_report(a in arb_set(), c in (1u64..40, 1u64..40)) {
            let c = PosRational::from_u64s(c.0, c.1);
            prop_assert_eq!(
                verify_sum_division(&a, cap()).unwrap(),
                verify_sum_division(&a.dilate(&c), cap()).unwrap()
            );
        }

        #[test]
        fn certificate_sound(a in arb_set()) {
            let k = ratio_spectrum(&a, cap()).unwrap().threshold().k;
            for from in [1, k] {
                let c = ray_certificate(&a, from, cap()).unwrap();
                prop_assert!(c.distinctness_verified && c.sectors_verified && c.bound_holds);
            }
        }
    }
}
