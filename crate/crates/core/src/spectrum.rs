//! Ratio multiplicity spectrum and its half-mass threshold.
//!
//! For a set `A`, each distinct ratio `z ∈ A/A` is represented by
//! `m(z) = |{(a, b) ∈ A×A : a/b = z}|` ordered pairs. The spectrum lists the
//! ratios by ascending multiplicity (ties by ascending ratio), so its total
//! mass is `|A|²`. The threshold index `k` is the unique position where the
//! running mass first reaches half of `|A|²`.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::PosRational;
use crate::set::{PairCap, PositiveSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumEntry {
    pub ratio: PosRational,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicitySpectrum {
    entries: Vec<SpectrumEntry>,
    source_cardinality: usize,
}

/// The threshold index `k` (1-based) with its multiplicity and the masses on
/// either side: `head_mass = Σ_{i<k} m_i`, `tail_mass = Σ_{i≥k} m_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ThresholdResult {
    pub k: usize,
    pub m_k: u64,
    pub head_mass: u64,
    pub tail_mass: u64,
}

/// Counts the representations of every ratio over all `|A|²` ordered pairs.
pub fn ratio_spectrum(a: &PositiveSet, cap: PairCap) -> Result<MultiplicitySpectrum> {
    let n = a.len();
    cap.check(n as u128 * n as u128)?;
    let mut counts: HashMap<PosRational, u64> = HashMap::new();
    for x in a {
        for y in a {
            *counts.entry(x / y).or_insert(0) += 1;
        }
    }
    let mut entries: Vec<SpectrumEntry> = counts
        .into_iter()
        .map(|(ratio, multiplicity)| SpectrumEntry { ratio, multiplicity })
        .collect();
    entries.sort_by(|l, r| {
        l.multiplicity
            .cmp(&r.multiplicity)
            .then_with(|| l.ratio.cmp(&r.ratio))
    });
    Ok(MultiplicitySpectrum {
        entries,
        source_cardinality: n,
    })
}

/// The unique `k` with `2·Σ_{i<k} m_i < total ≤ 2·Σ_{i≤k} m_i`, for any
/// ascending multiplicity sequence summing to `total`. The comparison is done
/// in integers against twice the running mass.
///
/// Panics when `multiplicities` is empty or sums to zero.
pub fn threshold_for_multiplicities(multiplicities: &[u64]) -> ThresholdResult {
    let total: u64 = multiplicities.iter().sum();
    assert!(total > 0, "spectrum must carry positive mass");
    let mut head = 0u64;
    for (i, &m) in multiplicities.iter().enumerate() {
        if 2 * (head + m) >= total {
            return ThresholdResult {
                k: i + 1,
                m_k: m,
                head_mass: head,
                tail_mass: total - head,
            };
        }
        head += m;
    }
    unreachable!("running mass reaches the total")
}

impl MultiplicitySpectrum {
    pub fn entries(&self) -> &[SpectrumEntry] {
        &self.entries
    }

    pub fn source_cardinality(&self) -> usize {
        self.source_cardinality
    }

    /// Number of distinct ratios, i.e. `|A/A|`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn multiplicities(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.multiplicity).collect()
    }

    pub fn total_mass(&self) -> u64 {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    pub fn multiplicity_of(&self, ratio: &PosRational) -> Option<u64> {
        self.entries
            .iter()
            .find(|e| &e.ratio == ratio)
            .map(|e| e.multiplicity)
    }

    pub fn threshold(&self) -> ThresholdResult {
        threshold_for_multiplicities(&self.multiplicities())
    }

    /// `Σ_{i=k}^{y} m_i` for a 1-based index `k`.
    pub fn tail_mass(&self, k: usize) -> Result<u64> {
        if k == 0 || k > self.entries.len() {
            return Err(Error::IndexOutOfRange {
                index: k,
                len: self.entries.len(),
            });
        }
        Ok(self.entries[k - 1..].iter().map(|e| e.multiplicity).sum())
    }

    /// Multiplicative energy `Σ m_i²`.
    pub fn energy(&self) -> u128 {
        self.entries
            .iter()
            .map(|e| e.multiplicity as u128 * e.multiplicity as u128)
            .sum()
    }

    /// CSV with columns `ratio,multiplicity,cumulative_mass`, in spectrum order.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["ratio", "multiplicity", "cumulative_mass"])
            .map_err(csv_err)?;
        let mut cumulative = 0u64;
        for e in &self.entries {
            cumulative += e.multiplicity;
            w.write_record([
                e.ratio.to_string(),
                e.multiplicity.to_string(),
                cumulative.to_string(),
            ])
            .map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }
}

pub(crate) fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Io(std::io::Error::other(format!("{other:?}"))),
    }
}
