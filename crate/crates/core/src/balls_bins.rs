//! Balls thrown independently and uniformly into bins.

use rand::Rng;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{domain, invalid, Result};

/// Bin index of every ball, bins numbered `1..=n_bins`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocationVector {
    n_bins: usize,
    entries: Vec<usize>,
}

impl LocationVector {
    pub fn new(n_bins: usize, entries: Vec<usize>) -> Result<Self> {
        if n_bins == 0 {
            return Err(domain("at least one bin is required"));
        }
        if let Some(bad) = entries.iter().find(|&&a| a == 0 || a > n_bins) {
            return Err(invalid(format!("bin {bad} outside [1, {n_bins}]")));
        }
        Ok(Self { n_bins, entries })
    }

    pub fn n_bins(&self) -> usize {
        self.n_bins
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Number of balls per bin. `loads()[j - 1]` is the load of bin `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoadVector {
    loads: Vec<usize>,
}

impl LoadVector {
    pub fn loads(&self) -> &[usize] {
        &self.loads
    }

    pub fn n_bins(&self) -> usize {
        self.loads.len()
    }

    pub fn total(&self) -> usize {
        self.loads.iter().sum()
    }

    pub fn max_load(&self) -> usize {
        self.loads.iter().copied().max().unwrap_or(0)
    }

    /// Maximum load among bins `1..=t`.
    pub fn max_load_prefix(&self, t: usize) -> Result<usize> {
        if t == 0 || t > self.loads.len() {
            return Err(domain(format!("prefix length {t} outside [1, {}]", self.loads.len())));
        }
        Ok(self.loads[..t].iter().copied().max().unwrap_or(0))
    }
}

pub fn sample_locations<R: Rng + ?Sized>(n_bins: usize, k: usize, rng: &mut R) -> Result<LocationVector> {
    if n_bins == 0 {
        return Err(domain("at least one bin is required"));
    }
    let entries = (0..k).map(|_| rng.gen_range(1..=n_bins)).collect();
    Ok(LocationVector { n_bins, entries })
}

pub fn loads(loc: &LocationVector) -> LoadVector {
    let mut loads = vec![0usize; loc.n_bins];
    for &a in &loc.entries {
        loads[a - 1] += 1;
    }
    LoadVector { loads }
}

/// Expected number of bins holding exactly `l` of `k` balls:
/// `n · C(k, l) · n^{-l} · (1 − 1/n)^{k−l}`, evaluated in log space.
pub fn expected_bins_with_load(l: u64, n_bins: u64, k: u64) -> Result<f64> {
    if n_bins == 0 {
        return Err(domain("at least one bin is required"));
    }
    if l > k {
        return Err(domain(format!("load {l} exceeds ball count {k}")));
    }
    if n_bins == 1 {
        return Ok(if l == k { 1.0 } else { 0.0 });
    }
    let n = n_bins as f64;
    let (l, k) = (l as f64, k as f64);
    let ln_binom = ln_gamma(k + 1.0) - ln_gamma(l + 1.0) - ln_gamma(k - l + 1.0);
    let ln_mu = n.ln() + ln_binom - l * n.ln() + (k - l) * (-1.0 / n).ln_1p();
    Ok(ln_mu.exp())
}
