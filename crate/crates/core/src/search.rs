//! Exhaustive search for the smallest pixel expansion of the basis-matrix
//! models.
//!
//! Candidates are pairs of column multisets. A column is an `n`-bit code
//! with participant 1 as the most significant bit, so code order is the
//! canonical column order and the first witness found is the
//! lexicographically least one.
//!
//! For a fixed `S0`, `S1` is built column by column against the projection
//! counts of `S0` on every maximal forbidden set. Every completed `S1` is
//! therefore secure, and only the contrast conditions remain to check.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rayon::prelude::*;

use crate::access::{AccessStructure, SetKind, Subset};
use crate::error::{Result, VcsError};
use crate::matrix::{BasisModel, BasisScheme, BitMatrix, Column};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_n: usize,
    pub max_m: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_n: 5, max_m: 6 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchProgress {
    pub m: usize,
    /// `S0` multisets examined so far at this `m`.
    pub candidates: u64,
}

pub type ProgressFn = Arc<dyn Fn(SearchProgress) + Send + Sync>;

#[derive(Clone, Default)]
pub struct SearchConfig {
    pub limits: SearchLimits,
    pub progress: Option<ProgressFn>,
    /// Run on the calling thread only.
    pub sequential: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found { m_star: usize, witness: BasisScheme },
    Exhausted { m_max: usize },
}

/// Column mask of a participant set: participant `p` is bit `n - p`.
fn column_mask(x: Subset, n: usize) -> u64 {
    x.iter().fold(0, |m, p| m | 1 << (n - p))
}

struct Problem {
    n: usize,
    m: usize,
    model: BasisModel,
    forbidden: Vec<u64>,
    contrast: Vec<u64>,
    /// Sets whose weights must agree exactly (non-minimal qualified, model 3).
    equal: Vec<u64>,
}

impl Problem {
    fn new(gamma: &AccessStructure, model: BasisModel, m: usize, limits: &SearchLimits) -> Result<Self> {
        let n = gamma.n();
        if n > limits.max_n {
            return Err(VcsError::CapExceeded {
                what: "participant count for search",
                value: n,
                cap: limits.max_n,
            });
        }
        if m > limits.max_m {
            return Err(VcsError::CapExceeded {
                what: "pixel expansion for search",
                value: m,
                cap: limits.max_m,
            });
        }
        if m == 0 {
            return Err(VcsError::InvalidMatrix("pixel expansion must be at least 1".into()));
        }
        let masks = |sets: Vec<Subset>| sets.into_iter().map(|x| column_mask(x, n)).collect();
        let contrast = match model {
            BasisModel::Vcs2 => masks(gamma.enumerate_sets(SetKind::Qualified)?),
            _ => masks(gamma.minimal_qualified().to_vec()),
        };
        let equal = match model {
            BasisModel::Vcs3 => masks(gamma.enumerate_sets(SetKind::QualifiedNonMinimal)?),
            _ => Vec::new(),
        };
        Ok(Problem {
            n,
            m,
            model,
            forbidden: masks(gamma.maximal_forbidden()?),
            contrast,
            equal,
        })
    }

    fn codes(&self) -> u64 {
        1 << self.n
    }

    fn hits(cols: &[u64], mask: u64) -> usize {
        cols.iter().filter(|&&c| c & mask != 0).count()
    }

    fn contrast_ok(&self, s0: &[u64], s1: &[u64]) -> bool {
        let ok = self.contrast.iter().all(|&x| {
            let (w0, w1) = (Self::hits(s0, x), Self::hits(s1, x));
            match self.model {
                BasisModel::Vcs2 => w1 > w0,
                _ => w1 != w0,
            }
        });
        ok && self.equal.iter().all(|&x| Self::hits(s0, x) == Self::hits(s1, x))
    }

    /// Projection counts of `s0` on each maximal forbidden set.
    fn projection_tables(&self, s0: &[u64]) -> Vec<Vec<u8>> {
        self.forbidden
            .iter()
            .map(|&f| {
                let mut t = vec![0u8; self.codes() as usize];
                for &c in s0 {
                    t[(c & f) as usize] += 1;
                }
                t
            })
            .collect()
    }

    fn complete_s1(&self, s0: &[u64], tables: &mut [Vec<u8>], s1: &mut Vec<u64>, from: u64) -> bool {
        if s1.len() == self.m {
            return self.contrast_ok(s0, s1);
        }
        for c in from..self.codes() {
            let fits = self
                .forbidden
                .iter()
                .zip(tables.iter())
                .all(|(&f, t)| t[(c & f) as usize] > 0);
            if !fits {
                continue;
            }
            for (&f, t) in self.forbidden.iter().zip(tables.iter_mut()) {
                t[(c & f) as usize] -= 1;
            }
            s1.push(c);
            if self.complete_s1(s0, tables, s1, c) {
                return true;
            }
            s1.pop();
            for (&f, t) in self.forbidden.iter().zip(tables.iter_mut()) {
                t[(c & f) as usize] += 1;
            }
        }
        false
    }

    /// Enumerates `S0` multisets extending `s0` in lexicographic order.
    /// Returns the first `(S0, S1)` pair found.
    fn extend_s0(&self, s0: &mut Vec<u64>, from: u64, seen: &AtomicU64) -> Option<(Vec<u64>, Vec<u64>)> {
        if s0.len() == self.m {
            seen.fetch_add(1, Ordering::Relaxed);
            let mut tables = self.projection_tables(s0);
            let mut s1 = Vec::with_capacity(self.m);
            return self
                .complete_s1(s0, &mut tables, &mut s1, 0)
                .then(|| (s0.clone(), s1));
        }
        for c in from..self.codes() {
            s0.push(c);
            if let Some(found) = self.extend_s0(s0, c, seen) {
                return Some(found);
            }
            s0.pop();
        }
        None
    }

    fn to_matrix(&self, codes: &[u64]) -> Result<BitMatrix> {
        let cols = codes
            .iter()
            .map(|&c| {
                let bits: Vec<bool> = (0..self.n).map(|r| c >> (self.n - 1 - r) & 1 == 1).collect();
                Column::from_bits(&bits)
            })
            .collect();
        BitMatrix::from_columns(self.n, cols)
    }
}

pub fn feasible_at(gamma: &AccessStructure, model: BasisModel, m: usize) -> Result<Option<BasisScheme>> {
    feasible_at_with(gamma, model, m, &SearchConfig::default())
}

pub fn feasible_at_with(
    gamma: &AccessStructure,
    model: BasisModel,
    m: usize,
    config: &SearchConfig,
) -> Result<Option<BasisScheme>> {
    let problem = Problem::new(gamma, model, m, &config.limits)?;
    let seen = AtomicU64::new(0);
    let report = || {
        if let Some(progress) = &config.progress {
            progress(SearchProgress {
                m,
                candidates: seen.load(Ordering::Relaxed),
            });
        }
    };
    // One task per first column of S0; the first task in order that finds
    // a witness wins, which keeps the answer independent of scheduling.
    let task = |first: u64| {
        let found = problem.extend_s0(&mut vec![first], first, &seen);
        report();
        found
    };
    let found = if config.sequential {
        (0..problem.codes()).find_map(task)
    } else {
        (0..problem.codes()).into_par_iter().find_map_first(task)
    };
    let Some((s0, s1)) = found else {
        return Ok(None);
    };
    Ok(Some(BasisScheme::new(
        model,
        problem.to_matrix(&s0)?,
        problem.to_matrix(&s1)?,
    )?))
}

pub fn optimal_pixel_expansion(gamma: &AccessStructure, model: BasisModel, m_max: usize) -> Result<SearchOutcome> {
    optimal_pixel_expansion_with(gamma, model, m_max, &SearchConfig::default())
}

pub fn optimal_pixel_expansion_with(
    gamma: &AccessStructure,
    model: BasisModel,
    m_max: usize,
    config: &SearchConfig,
) -> Result<SearchOutcome> {
    if m_max > config.limits.max_m {
        return Err(VcsError::CapExceeded {
            what: "pixel expansion for search",
            value: m_max,
            cap: config.limits.max_m,
        });
    }
    for m in 1..=m_max {
        if let Some(witness) = feasible_at_with(gamma, model, m, config)? {
            return Ok(SearchOutcome::Found { m_star: m, witness });
        }
    }
    Ok(SearchOutcome::Exhausted { m_max })
}

/// Appends the same all-zero column to both basis matrices.
pub fn pad_zero_column(s: &BasisScheme) -> Result<BasisScheme> {
    let zero = BitMatrix::zeros(s.n(), 1)?;
    BasisScheme::new(s.model, s.s0.concat(&zero)?, s.s1.concat(&zero)?)
}
