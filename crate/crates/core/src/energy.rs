//! Laplacian energy `E = Σ(dᵢ² + dᵢ)`, the fixed-(n, m) optimum and its degree
//! pattern, and the Erdős–Gallai realizability test.
//!
//! Everything here is exact integer arithmetic.

use serde::Serialize;

use crate::error::EnergyError;
use crate::graph::{DegreeSequence, Graph};

/// Laplacian energy of a simple graph. Always a nonnegative even integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct EnergyValue(pub u64);

impl EnergyValue {
    pub fn value(self) -> u64 {
        self.0
    }
}

impl std::fmt::Display for EnergyValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Degree pattern of every minimum-energy graph with `n` vertices and `m` edges:
/// `count_k1` vertices of degree `k + 1` and `count_k` of degree `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OptimalPattern {
    pub k: usize,
    pub count_k: usize,
    pub count_k1: usize,
}

impl OptimalPattern {
    pub fn n(&self) -> usize {
        self.count_k + self.count_k1
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        let mut d = vec![self.k + 1; self.count_k1];
        d.extend(std::iter::repeat(self.k).take(self.count_k));
        DegreeSequence::new(d).expect("pattern is nonincreasing")
    }
}

pub fn laplacian_energy(g: &Graph) -> EnergyValue {
    EnergyValue(g.degrees().iter().map(|&d| (d * d + d) as u64).sum())
}

fn check_range(n: usize, m: usize) -> Result<(), EnergyError> {
    if n == 0 {
        return Err(EnergyError::NoVertices);
    }
    let max = n * (n - 1) / 2;
    if m > max {
        return Err(EnergyError::TooManyEdges { n, m, max });
    }
    Ok(())
}

/// `(k + 1)(4m - nk)` with `k = ⌊2m/n⌋`.
pub fn min_energy_value(n: usize, m: usize) -> Result<EnergyValue, EnergyError> {
    check_range(n, m)?;
    let k = 2 * m / n;
    Ok(EnergyValue(((k + 1) * (4 * m - n * k)) as u64))
}

pub fn optimal_degree_pattern(n: usize, m: usize) -> Result<OptimalPattern, EnergyError> {
    check_range(n, m)?;
    let k = 2 * m / n;
    Ok(OptimalPattern { k, count_k: n * (k + 1) - 2 * m, count_k1: 2 * m - n * k })
}

/// True iff the degree multiset of `g` is the optimal pattern for its `(n, m)`.
pub fn is_min_energy(g: &Graph) -> bool {
    match optimal_degree_pattern(g.n(), g.m()) {
        Ok(p) => g.degree_sequence() == p.degree_sequence(),
        Err(_) => false,
    }
}

/// Why a sequence fails the Erdős–Gallai conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphicViolation {
    OddSum,
    /// Smallest `j` (1-based) whose prefix inequality fails.
    Prefix(usize),
}

pub fn erdos_gallai_feasible(seq: &DegreeSequence) -> bool {
    erdos_gallai_check(seq).is_ok()
}

/// Erdős–Gallai test reporting the first failed condition.
pub fn erdos_gallai_check(seq: &DegreeSequence) -> Result<(), GraphicViolation> {
    let d = seq.as_slice();
    if d.iter().sum::<usize>() % 2 != 0 {
        return Err(GraphicViolation::OddSum);
    }
    let mut prefix = 0usize;
    for j in 1..=d.len() {
        prefix += d[j - 1];
        let tail: usize = d[j..].iter().map(|&x| x.min(j)).sum();
        if prefix > j * (j - 1) + tail {
            return Err(GraphicViolation::Prefix(j));
        }
    }
    Ok(())
}
