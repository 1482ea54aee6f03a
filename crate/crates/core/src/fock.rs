//! Occupation-number configurations over a discretized bath.
//!
//! A `FockConfig` is a sparse map from mode index to photon number. Both the
//! exact-diagonalization engine and the functional hierarchy index their
//! state spaces by these configurations, so the ordering here is the single
//! source of truth for basis layouts: configurations sort by total
//! occupation first, then lexicographically by (mode, occupation) pairs.

use crate::model::BathSpec;
use std::fmt;

/// Sparse photon-number configuration, canonically sorted by mode index.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FockConfig {
    occ: Vec<(u16, u8)>,
}

impl FockConfig {
    /// The empty (vacuum) configuration.
    pub fn vacuum() -> Self {
        FockConfig { occ: Vec::new() }
    }

    /// Build from (mode, occupation) pairs; zero occupations are dropped.
    pub fn from_pairs<I: IntoIterator<Item = (usize, u32)>>(pairs: I) -> Self {
        let mut occ: Vec<(u16, u8)> = pairs
            .into_iter()
            .filter(|&(_, m)| m > 0)
            .map(|(k, m)| (k as u16, m as u8))
            .collect();
        occ.sort_unstable_by_key(|&(k, _)| k);
        occ.dedup_by(|b, a| {
            if a.0 == b.0 {
                a.1 += b.1;
                true
            } else {
                false
            }
        });
        FockConfig { occ }
    }

    /// Single photon in mode `k`.
    pub fn single(k: usize) -> Self {
        FockConfig {
            occ: vec![(k as u16, 1)],
        }
    }

    /// Total photon number.
    pub fn total(&self) -> u32 {
        self.occ.iter().map(|&(_, m)| m as u32).sum()
    }

    /// Occupation of mode `k`.
    pub fn occupation(&self, k: usize) -> u32 {
        self.occ
            .iter()
            .find(|&&(i, _)| i as usize == k)
            .map_or(0, |&(_, m)| m as u32)
    }

    /// Iterate over occupied modes as (mode, occupation).
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.occ.iter().map(|&(k, m)| (k as usize, m as u32))
    }

    pub fn is_vacuum(&self) -> bool {
        self.occ.is_empty()
    }

    /// Configuration with one more photon in mode `k`.
    pub fn with_added(&self, k: usize) -> Self {
        let mut out = self.clone();
        match out.occ.binary_search_by_key(&(k as u16), |&(i, _)| i) {
            Ok(pos) => out.occ[pos].1 += 1,
            Err(pos) => out.occ.insert(pos, (k as u16, 1)),
        }
        out
    }

    /// Configuration with one photon removed from mode `k`, if occupied.
    pub fn with_removed(&self, k: usize) -> Option<Self> {
        let mut out = self.clone();
        match out.occ.binary_search_by_key(&(k as u16), |&(i, _)| i) {
            Ok(pos) => {
                if out.occ[pos].1 == 1 {
                    out.occ.remove(pos);
                } else {
                    out.occ[pos].1 -= 1;
                }
                Some(out)
            }
            Err(_) => None,
        }
    }

    /// Bath energy of the configuration, sum of m_k * omega_k.
    pub fn energy(&self, bath: &BathSpec) -> f64 {
        self.iter()
            .map(|(k, m)| m as f64 * bath.modes()[k].omega)
            .sum()
    }

    /// Total occupation of modes at the qubit frequency (within `tol`).
    pub fn resonant_total(&self, bath: &BathSpec, omega0: f64, tol: f64) -> u32 {
        self.iter()
            .filter(|&(k, _)| (bath.modes()[k].omega - omega0).abs() <= tol)
            .map(|(_, m)| m)
            .sum()
    }

    /// Canonical sort key: total occupation, then lexicographic pairs.
    fn key(&self) -> (u32, &[(u16, u8)]) {
        (self.total(), &self.occ)
    }
}

impl PartialOrd for FockConfig {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FockConfig {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for FockConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.occ.is_empty() {
            return write!(f, "vacuum");
        }
        let parts: Vec<String> = self
            .occ
            .iter()
            .map(|&(k, m)| format!("m[{k}]={m}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// All configurations with exactly `total` photons over `modes`, in canonical
/// order.
pub fn configs_with_total(modes: &[usize], total: u32) -> Vec<FockConfig> {
    let mut out = Vec::new();
    let mut stack: Vec<(usize, u32)> = Vec::new();
    fn rec(
        modes: &[usize],
        pos: usize,
        left: u32,
        stack: &mut Vec<(usize, u32)>,
        out: &mut Vec<FockConfig>,
    ) {
        if left == 0 {
            out.push(FockConfig::from_pairs(stack.iter().copied()));
            return;
        }
        if pos == modes.len() {
            return;
        }
        for m in (0..=left).rev() {
            if m > 0 {
                stack.push((modes[pos], m));
            }
            rec(modes, pos + 1, left - m, stack, out);
            if m > 0 {
                stack.pop();
            }
        }
    }
    rec(modes, 0, total, &mut stack, &mut out);
    out.sort_unstable();
    out
}

/// All configurations with at most `cutoff` photons over `modes`, canonical
/// order (grouped by total occupation, ascending).
pub fn configs_up_to(modes: &[usize], cutoff: u32) -> Vec<FockConfig> {
    let mut out = Vec::new();
    for n in 0..=cutoff {
        out.extend(configs_with_total(modes, n));
    }
    out
}

/// Number of configurations with exactly `total` photons over `k` modes,
/// i.e. the binomial C(total + k - 1, total). Saturates at usize::MAX.
pub fn count_with_total(k: usize, total: u32) -> usize {
    let mut acc: u128 = 1;
    for i in 0..total as u128 {
        acc = acc * (k as u128 + i) / (i + 1);
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}
