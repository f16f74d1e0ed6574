//! Exact verification of schemes against an access structure.
//!
//! The verifiers never take a contrast value from the caller. They report
//! the largest contrast the scheme supports, as an exact rational, together
//! with the thresholds that achieve it.

use std::collections::BTreeMap;

use num_rational::Rational64;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::access::{AccessStructure, SetKind, Subset, DEFAULT_ENUMERATION_CAP};
use crate::error::{Result, VcsError};
use crate::matrix::{BasisModel, BasisScheme, BitMatrix, CollectionModel, CollectionScheme, Scheme};

/// Which way a reconstruction deviates from the white threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Black pixels stack to more ones than white ones.
    Darker,
    /// Black pixels stack to fewer ones than white ones.
    Lighter,
    /// Some black matrices are darker and some lighter (collections only).
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    Contrast,
    Security,
    /// White matrices disagree on the stacked weight of a minimal set.
    Exactness,
    /// A non-minimal qualified set sees different weights for black and white.
    NonMinimalEquality,
    /// Strict mode only: black matrices deviate in both directions.
    DirectionUniformity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub set: Subset,
    pub condition: Condition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub model: u8,
    pub valid: bool,
    /// Largest contrast consistent with the definition; may be `<= 0` when
    /// the contrast condition fails.
    pub alpha: Rational64,
    pub thresholds: BTreeMap<Subset, usize>,
    pub directions: BTreeMap<Subset, Direction>,
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    fn finish(mut self) -> Self {
        self.valid = self.violations.is_empty() && self.alpha > Rational64::from_integer(0);
        self
    }
}

pub(crate) fn rational_string(r: Rational64) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

struct KeyedBySet<'a, V>(&'a BTreeMap<Subset, V>);

impl<V: Serialize> Serialize for KeyedBySet<'_, V> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(&k.to_string(), v)?;
        }
        map.end()
    }
}

impl Serialize for VerifyReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let len = if self.directions.is_empty() { 5 } else { 6 };
        let mut map = serializer.serialize_map(Some(len))?;
        map.serialize_entry("model", &self.model)?;
        map.serialize_entry("valid", &self.valid)?;
        map.serialize_entry("alpha", &rational_string(self.alpha))?;
        map.serialize_entry("thresholds", &KeyedBySet(&self.thresholds))?;
        if !self.directions.is_empty() {
            map.serialize_entry("directions", &KeyedBySet(&self.directions))?;
        }
        map.serialize_entry("violations", &self.violations)?;
        map.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Collections: require every black matrix to deviate the same way for
    /// a given minimal qualified set.
    pub strict_direction: bool,
    pub enumeration_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            strict_direction: false,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

fn check_n(gamma: &AccessStructure, n: usize) -> Result<()> {
    if gamma.n() != n {
        return Err(VcsError::DimensionMismatch(format!(
            "scheme has {n} rows but the access structure has {} participants",
            gamma.n()
        )));
    }
    Ok(())
}

fn ratio(num: i64, m: usize) -> Rational64 {
    Rational64::new(num, m as i64)
}

pub fn verify_basis(gamma: &AccessStructure, s: &BasisScheme) -> Result<VerifyReport> {
    verify_basis_with(gamma, s, &VerifyOptions::default())
}

pub fn verify_basis_with(
    gamma: &AccessStructure,
    s: &BasisScheme,
    opts: &VerifyOptions,
) -> Result<VerifyReport> {
    check_n(gamma, s.n())?;
    let m = s.m();
    let mut report = VerifyReport {
        model: s.model.number(),
        valid: false,
        alpha: Rational64::from_integer(0),
        thresholds: BTreeMap::new(),
        directions: BTreeMap::new(),
        violations: Vec::new(),
    };

    let contrast_sets = match s.model {
        BasisModel::Vcs2 => gamma.enumerate_sets_capped(SetKind::Qualified, opts.enumeration_cap)?,
        BasisModel::Vcs3 | BasisModel::Vcs5 => gamma.minimal_qualified().to_vec(),
    };
    let mut min_gap: Option<i64> = None;
    for &x in &contrast_sets {
        let w0 = s.s0.or_weight(x) as i64;
        let w1 = s.s1.or_weight(x) as i64;
        let gap = match s.model {
            BasisModel::Vcs2 => {
                report.thresholds.insert(x, w1 as usize);
                w1 - w0
            }
            _ => {
                report.thresholds.insert(x, w0 as usize);
                if w1 != w0 {
                    let dir = if w1 > w0 {
                        Direction::Darker
                    } else {
                        Direction::Lighter
                    };
                    report.directions.insert(x, dir);
                }
                (w1 - w0).abs()
            }
        };
        if gap <= 0 {
            report.violations.push(Violation {
                set: x,
                condition: Condition::Contrast,
            });
        }
        min_gap = Some(min_gap.map_or(gap, |g| g.min(gap)));
    }
    report.alpha = ratio(min_gap.unwrap_or(0), m);

    if s.model == BasisModel::Vcs3 {
        for x in gamma.enumerate_sets_capped(SetKind::QualifiedNonMinimal, opts.enumeration_cap)? {
            if s.s0.or_weight(x) != s.s1.or_weight(x) {
                report.violations.push(Violation {
                    set: x,
                    condition: Condition::NonMinimalEquality,
                });
            }
        }
    }

    for x in gamma.enumerate_sets_capped(SetKind::Forbidden, opts.enumeration_cap)? {
        if x.is_empty() {
            continue;
        }
        if s.s0.restrict_unchecked(x).canonical() != s.s1.restrict_unchecked(x).canonical() {
            report.violations.push(Violation {
                set: x,
                condition: Condition::Security,
            });
        }
    }
    Ok(report.finish())
}

fn restricted_distribution(c: &BTreeMap<BitMatrix, u64>, x: Subset) -> BTreeMap<BitMatrix, u64> {
    let mut out = BTreeMap::new();
    for (mat, &f) in c {
        *out.entry(mat.restrict_unchecked(x)).or_insert(0) += f;
    }
    out
}

/// Equal as distributions: frequencies compared after scaling both sides to
/// a common total.
fn same_distribution(a: &BTreeMap<BitMatrix, u64>, b: &BTreeMap<BitMatrix, u64>) -> bool {
    let ta: u128 = a.values().map(|&f| f as u128).sum();
    let tb: u128 = b.values().map(|&f| f as u128).sum();
    a.len() == b.len()
        && a.iter().all(|(k, &fa)| {
            b.get(k)
                .is_some_and(|&fb| fa as u128 * tb == fb as u128 * ta)
        })
}

fn collections_secure(
    gamma: &AccessStructure,
    c: &CollectionScheme,
    cap: usize,
    violations: &mut Vec<Violation>,
) -> Result<()> {
    for x in gamma.enumerate_sets_capped(SetKind::Forbidden, cap)? {
        if x.is_empty() {
            continue;
        }
        let d0 = restricted_distribution(c.c0(), x);
        let d1 = restricted_distribution(c.c1(), x);
        if !same_distribution(&d0, &d1) {
            violations.push(Violation {
                set: x,
                condition: Condition::Security,
            });
        }
    }
    Ok(())
}

pub fn verify_collections(gamma: &AccessStructure, c: &CollectionScheme) -> Result<VerifyReport> {
    verify_collections_with(gamma, c, &VerifyOptions::default())
}

pub fn verify_collections_with(
    gamma: &AccessStructure,
    c: &CollectionScheme,
    opts: &VerifyOptions,
) -> Result<VerifyReport> {
    check_n(gamma, c.n())?;
    let m = c.m();
    let mut report = VerifyReport {
        model: c.model.number(),
        valid: false,
        alpha: Rational64::from_integer(0),
        thresholds: BTreeMap::new(),
        directions: BTreeMap::new(),
        violations: Vec::new(),
    };
    let mut min_gap: Option<i64> = None;

    match c.model {
        CollectionModel::Vcs1 => {
            for x in gamma.enumerate_sets_capped(SetKind::Qualified, opts.enumeration_cap)? {
                let max0 = c.c0().keys().map(|mat| mat.or_weight(x)).max().unwrap_or(0) as i64;
                let min1 = c.c1().keys().map(|mat| mat.or_weight(x)).min().unwrap_or(0) as i64;
                report.thresholds.insert(x, min1 as usize);
                let gap = min1 - max0;
                if gap <= 0 {
                    report.violations.push(Violation {
                        set: x,
                        condition: Condition::Contrast,
                    });
                }
                min_gap = Some(min_gap.map_or(gap, |g| g.min(gap)));
            }
        }
        CollectionModel::Vcs4 => {
            for &x in gamma.minimal_qualified() {
                let mut w0s = c.c0().keys().map(|mat| mat.or_weight(x) as i64);
                let t = w0s.next().unwrap_or(0);
                if w0s.any(|w| w != t) {
                    report.violations.push(Violation {
                        set: x,
                        condition: Condition::Exactness,
                    });
                }
                report.thresholds.insert(x, t as usize);
                let (mut darker, mut lighter, mut gap) = (false, false, i64::MAX);
                for mat in c.c1().keys() {
                    let d = mat.or_weight(x) as i64 - t;
                    darker |= d > 0;
                    lighter |= d < 0;
                    gap = gap.min(d.abs());
                }
                if gap == 0 {
                    report.violations.push(Violation {
                        set: x,
                        condition: Condition::Contrast,
                    });
                }
                match (darker, lighter) {
                    (true, false) => {
                        report.directions.insert(x, Direction::Darker);
                    }
                    (false, true) => {
                        report.directions.insert(x, Direction::Lighter);
                    }
                    (true, true) => {
                        report.directions.insert(x, Direction::Mixed);
                        if opts.strict_direction {
                            report.violations.push(Violation {
                                set: x,
                                condition: Condition::DirectionUniformity,
                            });
                        }
                    }
                    (false, false) => {}
                }
                min_gap = Some(min_gap.map_or(gap, |g| g.min(gap)));
            }
        }
    }
    report.alpha = ratio(min_gap.unwrap_or(0), m);
    collections_secure(gamma, c, opts.enumeration_cap, &mut report.violations)?;
    Ok(report.finish())
}

pub fn verify_scheme(gamma: &AccessStructure, scheme: &Scheme, opts: &VerifyOptions) -> Result<VerifyReport> {
    match scheme {
        Scheme::Basis(s) => verify_basis_with(gamma, s, opts),
        Scheme::Collection(c) => verify_collections_with(gamma, c, opts),
    }
}

/// Re-checks the defining conditions for a caller-supplied contrast,
/// searching every threshold `0..=m` where the definition leaves it free.
pub fn basis_holds_at(gamma: &AccessStructure, s: &BasisScheme, alpha: Rational64) -> Result<bool> {
    check_n(gamma, s.n())?;
    if alpha <= Rational64::from_integer(0) {
        return Ok(false);
    }
    let am = alpha * Rational64::from_integer(s.m() as i64);
    let w = |mat: &BitMatrix, x| Rational64::from_integer(mat.or_weight(x) as i64);
    let contrast_ok = match s.model {
        BasisModel::Vcs2 => gamma.enumerate_sets(SetKind::Qualified)?.into_iter().all(|x| {
            (0..=s.m() as i64).map(Rational64::from_integer).any(|t| {
                w(&s.s0, x) <= t - am && w(&s.s1, x) >= t
            })
        }),
        BasisModel::Vcs3 | BasisModel::Vcs5 => gamma.minimal_qualified().iter().all(|&x| {
            let t = w(&s.s0, x);
            w(&s.s1, x) >= t + am || w(&s.s1, x) <= t - am
        }),
    };
    let third_ok = s.model != BasisModel::Vcs3
        || gamma
            .enumerate_sets(SetKind::QualifiedNonMinimal)?
            .into_iter()
            .all(|x| s.s0.or_weight(x) == s.s1.or_weight(x));
    let secure = gamma
        .enumerate_sets(SetKind::Forbidden)?
        .into_iter()
        .filter(|x| !x.is_empty())
        .all(|x| s.s0.restrict_unchecked(x).permutation_equal(&s.s1.restrict_unchecked(x)));
    Ok(contrast_ok && third_ok && secure)
}

/// Collection counterpart of [`basis_holds_at`].
pub fn collections_hold_at(
    gamma: &AccessStructure,
    c: &CollectionScheme,
    alpha: Rational64,
    strict_direction: bool,
) -> Result<bool> {
    check_n(gamma, c.n())?;
    if alpha <= Rational64::from_integer(0) {
        return Ok(false);
    }
    let am = alpha * Rational64::from_integer(c.m() as i64);
    let w = |mat: &BitMatrix, x| Rational64::from_integer(mat.or_weight(x) as i64);
    let contrast_ok = match c.model {
        CollectionModel::Vcs1 => gamma.enumerate_sets(SetKind::Qualified)?.into_iter().all(|x| {
            (0..=c.m() as i64).map(Rational64::from_integer).any(|t| {
                c.c0().keys().all(|mat| w(mat, x) <= t - am)
                    && c.c1().keys().all(|mat| w(mat, x) >= t)
            })
        }),
        CollectionModel::Vcs4 => gamma.minimal_qualified().iter().all(|&x| {
            (0..=c.m() as i64).map(Rational64::from_integer).any(|t| {
                let exact = c.c0().keys().all(|mat| w(mat, x) == t);
                let up = c.c1().keys().all(|mat| w(mat, x) >= t + am);
                let down = c.c1().keys().all(|mat| w(mat, x) <= t - am);
                let each = c
                    .c1()
                    .keys()
                    .all(|mat| w(mat, x) >= t + am || w(mat, x) <= t - am);
                exact && if strict_direction { up || down } else { each }
            })
        }),
    };
    let mut violations = Vec::new();
    collections_secure(gamma, c, DEFAULT_ENUMERATION_CAP, &mut violations)?;
    Ok(contrast_ok && violations.is_empty())
}
