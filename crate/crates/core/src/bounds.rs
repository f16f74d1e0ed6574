//! Lower-bound certificates for the best pixel expansion of the basis-matrix
//! models, their checkers, and a small-scale search for the best one.
//!
//! Families of forbidden sets are handled as bit masks over family indices,
//! so each quantifier over sub-families is a mask comparison.

use serde::{Deserialize, Serialize};

use crate::access::{AccessStructure, Edge, SetKind, Subset};
use crate::error::{Result, VcsError};
use crate::graph_algos::{is_induced_matching, max_induced_matching};
use crate::matrix::BasisModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundKind {
    /// Forbidden family, pairwise separation; bounds model 2 by `t + 1`.
    T1,
    /// Forbidden family, minimal-qualified separation; bounds model 3 by `t + 1`.
    T2,
    /// Disjoint qualified blocks; bounds models 2 and 3.
    T3,
    /// Forbidden family, forbidden separation; bounds model 5 by `t`.
    T4,
    /// Half the number of minimal qualified sets; bounds model 3.
    TA,
    /// Induced matching of a graph structure; bounds models 2 and 3.
    C2,
    Trivial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelTag {
    M2,
    M3,
    M5,
}

impl From<BasisModel> for ModelTag {
    fn from(m: BasisModel) -> Self {
        match m {
            BasisModel::Vcs2 => ModelTag::M2,
            BasisModel::Vcs3 => ModelTag::M3,
            BasisModel::Vcs5 => ModelTag::M5,
        }
    }
}

impl ModelTag {
    pub fn model(self) -> BasisModel {
        match self {
            ModelTag::M2 => BasisModel::Vcs2,
            ModelTag::M3 => BasisModel::Vcs3,
            ModelTag::M5 => BasisModel::Vcs5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub kind: BoundKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Vec<Subset>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<Subset>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matching: Option<Vec<Edge>>,
    pub bound: usize,
    pub applies_to: Vec<ModelTag>,
}

impl BoundCertificate {
    fn with_omega(kind: BoundKind, omega: &[Subset], bound: usize, applies_to: Vec<ModelTag>) -> Self {
        BoundCertificate {
            kind,
            omega: Some(omega.to_vec()),
            blocks: None,
            matching: None,
            bound,
            applies_to,
        }
    }

    pub fn trivial(model: BasisModel) -> Self {
        BoundCertificate {
            kind: BoundKind::Trivial,
            omega: None,
            blocks: None,
            matching: None,
            bound: 1,
            applies_to: vec![model.into()],
        }
    }

    pub fn applies(&self, model: BasisModel) -> bool {
        self.applies_to.contains(&model.into())
    }
}

fn reject<T>(msg: impl Into<String>) -> Result<T> {
    Err(VcsError::Rejected(msg.into()))
}

/// Shared preconditions of the family checkers.
fn check_family(gamma: &AccessStructure, omega: &[Subset]) -> Result<()> {
    if omega.is_empty() {
        return reject("family is empty");
    }
    if omega.len() > 63 {
        return Err(VcsError::CapExceeded {
            what: "family size",
            value: omega.len(),
            cap: 63,
        });
    }
    for (i, &f) in omega.iter().enumerate() {
        gamma.check_in_range(f)?;
        if f.is_empty() {
            return reject("family members must be non-empty");
        }
        if !gamma.is_forbidden(f) {
            return Err(VcsError::NotForbidden(f));
        }
        if omega[..i].contains(&f) {
            return reject(format!("{f} appears twice in the family"));
        }
    }
    Ok(())
}

fn union_of(sets: &[Subset]) -> Subset {
    sets.iter().fold(Subset::EMPTY, |u, &s| u.union(s))
}

/// Bit `i` set when `omega[i] | other` satisfies `pred`.
fn member_mask(omega: &[Subset], other: Subset, pred: impl Fn(Subset) -> bool) -> u64 {
    omega
        .iter()
        .enumerate()
        .filter(|(_, &f)| pred(f.union(other)))
        .fold(0, |m, (i, _)| m | 1 << i)
}

fn distinct(mut masks: Vec<u64>) -> Vec<u64> {
    masks.sort_unstable();
    masks.dedup();
    masks
}

/// Non-empty submasks of `mask`.
fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
    .filter(|&s| s != 0)
}

fn full_mask(t: usize) -> u64 {
    if t == 64 {
        u64::MAX
    } else {
        (1u64 << t) - 1
    }
}

/// Pair separation: every pair of disjoint sub-families `A`, `B` with `B`
/// non-empty has some forbidden `F'` keeping all of one side forbidden while
/// making a member of the other side qualified. `A` may be empty: a single
/// member with no way to become qualified (a zero row) would otherwise pass.
fn pair_separated(gamma: &AccessStructure, forbidden: &[Subset], omega: &[Subset]) -> bool {
    let stays = distinct(
        forbidden
            .iter()
            .map(|&fp| member_mask(omega, fp, |x| gamma.is_forbidden(x)))
            .collect(),
    );
    let full = full_mask(omega.len());
    std::iter::once(0).chain(submasks(full)).all(|a| {
        submasks(full & !a).all(|b| {
            stays
                .iter()
                .any(|&f| (a & !f == 0 && b & !f != 0) || (b & !f == 0 && a & !f != 0))
        })
    })
}

fn t1_holds(gamma: &AccessStructure, forbidden: &[Subset], omega: &[Subset]) -> bool {
    gamma.is_forbidden(union_of(omega)) && pair_separated(gamma, forbidden, omega)
}

/// For every non-empty `A`, some forbidden `F''` completes exactly one
/// member of `A` to a minimal qualified set (`others_forbidden` tightens
/// the requirement on the remaining members to "forbidden").
fn singled_out(gamma: &AccessStructure, forbidden: &[Subset], omega: &[Subset], others_forbidden: bool) -> bool {
    let mut masks: Vec<(u64, u64)> = forbidden
        .iter()
        .map(|&fpp| {
            (
                member_mask(omega, fpp, |x| gamma.is_minimal_qualified(x)),
                member_mask(omega, fpp, |x| gamma.is_forbidden(x)),
            )
        })
        .collect();
    masks.sort_unstable();
    masks.dedup();
    submasks(full_mask(omega.len())).all(|a| {
        masks.iter().any(|&(q, f)| {
            if others_forbidden {
                let hits = a & q;
                (0..omega.len())
                    .filter(|&i| hits & (1 << i) != 0)
                    .any(|i| (a & !(1u64 << i)) & !f == 0)
            } else {
                (a & q).count_ones() == 1
            }
        })
    })
}

fn t2_holds(gamma: &AccessStructure, forbidden: &[Subset], omega: &[Subset]) -> bool {
    gamma.is_forbidden(union_of(omega)) && singled_out(gamma, forbidden, omega, false)
}

fn t4_holds(gamma: &AccessStructure, forbidden: &[Subset], omega: &[Subset]) -> bool {
    gamma.is_forbidden(union_of(omega)) && singled_out(gamma, forbidden, omega, true)
}

fn forbidden_sets(gamma: &AccessStructure) -> Result<Vec<Subset>> {
    gamma.enumerate_sets(SetKind::Forbidden)
}

pub fn check_separating_family(gamma: &AccessStructure, omega: &[Subset]) -> Result<BoundCertificate> {
    check_family(gamma, omega)?;
    if !t1_holds(gamma, &forbidden_sets(gamma)?, omega) {
        return reject("family fails the pair separation condition or has a qualified union");
    }
    Ok(BoundCertificate::with_omega(
        BoundKind::T1,
        omega,
        omega.len() + 1,
        vec![ModelTag::M2],
    ))
}

pub fn check_isolating_family(gamma: &AccessStructure, omega: &[Subset]) -> Result<BoundCertificate> {
    check_family(gamma, omega)?;
    if !t2_holds(gamma, &forbidden_sets(gamma)?, omega) {
        return reject("some sub-family has no member singled out, or the union is qualified");
    }
    Ok(BoundCertificate::with_omega(
        BoundKind::T2,
        omega,
        omega.len() + 1,
        vec![ModelTag::M3],
    ))
}

pub fn check_peeling_family(gamma: &AccessStructure, omega: &[Subset]) -> Result<BoundCertificate> {
    check_family(gamma, omega)?;
    if !t4_holds(gamma, &forbidden_sets(gamma)?, omega) {
        return reject("some sub-family has no member singled out, or the union is qualified");
    }
    Ok(BoundCertificate::with_omega(
        BoundKind::T4,
        omega,
        omega.len(),
        vec![ModelTag::M5],
    ))
}

fn blocks_bound(blocks: &[Subset]) -> usize {
    blocks.iter().map(|b| 1usize << (b.len() - 1)).sum::<usize>() - (blocks.len() - 1)
}

fn blocks_hold(gamma: &AccessStructure, blocks: &[Subset]) -> bool {
    union_of(blocks)
        .subsets()
        .filter(|&b| gamma.is_qualified(b))
        .all(|b| blocks.iter().any(|a| a.is_subset_of(b)))
}

pub fn check_disjoint_blocks(gamma: &AccessStructure, blocks: &[Subset]) -> Result<BoundCertificate> {
    if blocks.is_empty() {
        return reject("no blocks given");
    }
    for (i, &a) in blocks.iter().enumerate() {
        gamma.check_in_range(a)?;
        if !gamma.is_qualified(a) {
            return Err(VcsError::NotQualified(a));
        }
        if let Some(&b) = blocks[..i].iter().find(|b| !b.is_disjoint(a)) {
            return Err(VcsError::OverlappingBlocks(b, a));
        }
    }
    let union = union_of(blocks);
    if union.len() > gamma_cap() {
        return Err(VcsError::CapExceeded {
            what: "size of the block union",
            value: union.len(),
            cap: gamma_cap(),
        });
    }
    if !blocks_hold(gamma, blocks) {
        return reject("a qualified subset of the union contains no block");
    }
    Ok(BoundCertificate {
        kind: BoundKind::T3,
        omega: None,
        blocks: Some(blocks.to_vec()),
        matching: None,
        bound: blocks_bound(blocks),
        applies_to: vec![ModelTag::M2, ModelTag::M3],
    })
}

fn gamma_cap() -> usize {
    crate::access::DEFAULT_ENUMERATION_CAP
}

pub fn minimal_count_bound(gamma: &AccessStructure) -> BoundCertificate {
    BoundCertificate {
        kind: BoundKind::TA,
        omega: None,
        blocks: None,
        matching: None,
        bound: gamma.minimal_qualified().len().div_ceil(2),
        applies_to: vec![ModelTag::M3],
    }
}

/// An induced matching of a graph structure, read as one block per edge.
pub fn check_induced_matching(gamma: &AccessStructure, matching: &[Edge]) -> Result<BoundCertificate> {
    let g = gamma
        .to_graph()
        .ok_or_else(|| VcsError::InvalidGraph("access structure is not graph-based".into()))?;
    if matching.is_empty() {
        return reject("matching is empty");
    }
    if !is_induced_matching(&g, matching) {
        return reject("edges do not form an induced matching of the graph");
    }
    Ok(BoundCertificate {
        kind: BoundKind::C2,
        omega: None,
        blocks: None,
        matching: Some(matching.to_vec()),
        bound: matching.len() + 1,
        applies_to: vec![ModelTag::M2, ModelTag::M3],
    })
}

/// The forbidden family behind a block certificate: for each block, all
/// non-empty subsets of the block minus its largest participant.
pub fn omega_from_blocks(blocks: &[Subset]) -> Vec<Subset> {
    blocks
        .iter()
        .flat_map(|&a| {
            let y = a.difference(Subset::singleton(a.max().expect("non-empty block")));
            let mut parts: Vec<Subset> = y.subsets().filter(|s| !s.is_empty()).collect();
            parts.sort();
            parts
        })
        .collect()
}

/// Re-runs the checker named by `cert.kind` on its witness and insists on
/// the same bound and models.
pub fn revalidate(gamma: &AccessStructure, cert: &BoundCertificate) -> Result<BoundCertificate> {
    let missing = |what: &str| VcsError::Rejected(format!("certificate has no {what}"));
    let fresh = match cert.kind {
        BoundKind::T1 => check_separating_family(gamma, cert.omega.as_deref().ok_or_else(|| missing("omega"))?)?,
        BoundKind::T2 => check_isolating_family(gamma, cert.omega.as_deref().ok_or_else(|| missing("omega"))?)?,
        BoundKind::T4 => check_peeling_family(gamma, cert.omega.as_deref().ok_or_else(|| missing("omega"))?)?,
        BoundKind::T3 => check_disjoint_blocks(gamma, cert.blocks.as_deref().ok_or_else(|| missing("blocks"))?)?,
        BoundKind::C2 => {
            check_induced_matching(gamma, cert.matching.as_deref().ok_or_else(|| missing("matching"))?)?
        }
        BoundKind::TA => minimal_count_bound(gamma),
        BoundKind::Trivial => BoundCertificate {
            applies_to: cert.applies_to.clone(),
            ..BoundCertificate::trivial(BasisModel::Vcs2)
        },
    };
    if fresh.bound != cert.bound || fresh.applies_to != cert.applies_to {
        return reject(format!(
            "certificate states bound {} for {:?}, witness gives {} for {:?}",
            cert.bound, cert.applies_to, fresh.bound, fresh.applies_to
        ));
    }
    Ok(fresh)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundBudget {
    /// Largest family size tried for the forbidden-family certificates.
    pub max_omega: usize,
    /// Largest member size; `None` means `n - 1`.
    pub max_member_size: Option<usize>,
    /// Search nodes per certificate kind before giving up on larger families.
    pub max_nodes: usize,
}

impl Default for BoundBudget {
    fn default() -> Self {
        BoundBudget {
            max_omega: 4,
            max_member_size: None,
            max_nodes: 1_000_000,
        }
    }
}

type FamilyTest = dyn Fn(&AccessStructure, &[Subset], &[Subset]) -> bool;

struct FamilySearch<'a> {
    gamma: &'a AccessStructure,
    forbidden: &'a [Subset],
    cands: Vec<Subset>,
    max_len: usize,
    nodes: usize,
    max_nodes: usize,
    /// Condition inherited by sub-families; used to prune.
    keep: &'a FamilyTest,
    /// Full acceptance test for a family.
    accept: &'a FamilyTest,
    best: Vec<Subset>,
}

impl FamilySearch<'_> {
    fn run(&mut self, start: usize, family: &mut Vec<Subset>, union: Subset) {
        if family.len() > self.best.len() && (self.accept)(self.gamma, self.forbidden, family) {
            self.best = family.clone();
        }
        if family.len() == self.max_len {
            return;
        }
        for i in start..self.cands.len() {
            if self.nodes >= self.max_nodes {
                return;
            }
            self.nodes += 1;
            let next = union.union(self.cands[i]);
            if !self.gamma.is_forbidden(next) {
                continue;
            }
            family.push(self.cands[i]);
            if (self.keep)(self.gamma, self.forbidden, family) {
                self.run(i + 1, family, next);
            }
            family.pop();
        }
    }
}

fn best_family(
    gamma: &AccessStructure,
    forbidden: &[Subset],
    budget: &BoundBudget,
    keep: &FamilyTest,
    accept: &FamilyTest,
) -> Vec<Subset> {
    let max_size = budget.max_member_size.unwrap_or(gamma.n().saturating_sub(1));
    let mut search = FamilySearch {
        gamma,
        forbidden,
        cands: forbidden
            .iter()
            .copied()
            .filter(|f| !f.is_empty() && f.len() <= max_size)
            .collect(),
        max_len: budget.max_omega.min(63),
        nodes: 0,
        max_nodes: budget.max_nodes,
        keep,
        accept,
        best: Vec::new(),
    };
    search.run(0, &mut Vec::new(), Subset::EMPTY);
    search.best
}

fn best_blocks(gamma: &AccessStructure, budget: &BoundBudget) -> Vec<Subset> {
    #[allow(clippy::too_many_arguments)]
    fn run(
        gamma: &AccessStructure,
        q0: &[Subset],
        start: usize,
        family: &mut Vec<Subset>,
        used: Subset,
        nodes: &mut usize,
        max_nodes: usize,
        best: &mut (Vec<Subset>, usize),
    ) {
        for i in start..q0.len() {
            if *nodes >= max_nodes {
                return;
            }
            *nodes += 1;
            if !q0[i].is_disjoint(used) {
                continue;
            }
            family.push(q0[i]);
            if blocks_hold(gamma, family) {
                let b = blocks_bound(family);
                if b > best.1 {
                    *best = (family.clone(), b);
                }
                run(gamma, q0, i + 1, family, used.union(q0[i]), nodes, max_nodes, best);
            }
            family.pop();
        }
    }
    let mut best = (Vec::new(), 0);
    let mut nodes = 0;
    run(
        gamma,
        gamma.minimal_qualified(),
        0,
        &mut Vec::new(),
        Subset::EMPTY,
        &mut nodes,
        budget.max_nodes,
        &mut best,
    );
    best.0
}

/// The strongest certificate found within `budget` for `model`; a trivial
/// bound of 1 when nothing else applies.
pub fn best_lower_bound(gamma: &AccessStructure, model: BasisModel, budget: &BoundBudget) -> Result<BoundCertificate> {
    let forbidden = forbidden_sets(gamma)?;
    let mut best = BoundCertificate::trivial(model);
    let mut offer = |cert: BoundCertificate| {
        if cert.bound > best.bound {
            best = cert;
        }
    };

    let family = match model {
        BasisModel::Vcs2 => best_family(
            gamma,
            &forbidden,
            budget,
            &|g, f, o| pair_separated(g, f, o),
            &t1_holds,
        ),
        BasisModel::Vcs3 => best_family(gamma, &forbidden, budget, &t2_holds, &t2_holds),
        BasisModel::Vcs5 => best_family(gamma, &forbidden, budget, &t4_holds, &t4_holds),
    };
    if !family.is_empty() {
        offer(match model {
            BasisModel::Vcs2 => check_separating_family(gamma, &family)?,
            BasisModel::Vcs3 => check_isolating_family(gamma, &family)?,
            BasisModel::Vcs5 => check_peeling_family(gamma, &family)?,
        });
    }

    if model != BasisModel::Vcs5 {
        let blocks = best_blocks(gamma, budget);
        if !blocks.is_empty() {
            offer(check_disjoint_blocks(gamma, &blocks)?);
        }
        if let Some(g) = gamma.to_graph() {
            let matching = max_induced_matching(&g)?;
            offer(check_induced_matching(gamma, &matching.edges)?);
        }
    }
    if model == BasisModel::Vcs3 {
        offer(minimal_count_bound(gamma));
    }
    Ok(best)
}
