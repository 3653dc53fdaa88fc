use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::setcore::{analyze, canonicalize, AnalysisReport, IntSet};

/// `A ∪ {b}` for a far-away `b`, checked by direct computation to satisfy
/// `|A′∔A′| = |A∔A| + k`, `|A′−A′| = |A−A| + 2k` and `Δ(A′) = Δ(A) + k`.
///
/// Requires `|A| ≥ 3`, `min(A) = 0` and `b > 2·max(A)`. The last condition
/// makes every new difference `b − a` exceed `max(A−A)`; the weaker
/// `b > a_{k−2} + a_{k−1}` only separates the new sums.
pub fn extend(set: &IntSet, b: i64) -> Result<IntSet> {
    let before = analyze(set)?;
    extend_checked(&before, b).map(|r| r.set)
}

pub(crate) fn check_extension_preconditions(set: &IntSet, b: i64) -> Result<()> {
    if set.len() < 3 {
        return Err(Error::Precondition(format!(
            "|A| >= 3 (got |A| = {})",
            set.len()
        )));
    }
    if set.min_element() != Some(0) {
        return Err(Error::Precondition("min(A) = 0".into()));
    }
    let top = set.max_element().unwrap();
    let bound = top.checked_mul(2).ok_or(Error::Overflow("2·max(A)"))?;
    if b <= bound {
        return Err(Error::Precondition(format!(
            "b > 2·max(A) (b = {b}, 2·max(A) = {bound})"
        )));
    }
    Ok(())
}

/// Extension given the analysis of `A`; returns the analysis of `A ∪ {b}`.
pub(crate) fn extend_checked(before: &AnalysisReport, b: i64) -> Result<AnalysisReport> {
    check_extension_preconditions(&before.set, b)?;
    let extended = before.set.with_element(b)?;
    let after = analyze(&extended)?;
    let k = before.size;
    let checks = [
        (
            "|A'∔A'| = |A∔A| + k",
            after.restricted_sumset_size == before.restricted_sumset_size + k,
        ),
        (
            "|A'−A'| = |A−A| + 2k",
            after.difference_size == before.difference_size + 2 * k,
        ),
        ("Δ(A') = Δ(A) + k", after.delta == before.delta + k as i64),
    ];
    if let Some((what, _)) = checks.iter().find(|(_, ok)| !ok) {
        return Err(Error::Verification(format!(
            "{what} fails for A = {}, b = {b}",
            before.set
        )));
    }
    Ok(after)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Successor {
    /// The added element.
    pub element: i64,
    pub analysis: AnalysisReport,
}

/// `count` pairwise affinely inequivalent RSD sets of cardinality `|A| + 1`.
///
/// Requires `min(A) = 0`, `|A| ≥ 3` and `|A∔A| ≥ |A−A| + |A| + 1`. The
/// added elements run through `2·max(A) + 1, 2·max(A) + 2, …`; an element
/// whose extension falls into the class of an earlier output is skipped,
/// which can only happen when `gcd(A) > 1`.
pub fn rsd_successors(set: &IntSet, count: usize) -> Result<Vec<Successor>> {
    let before = analyze(set)?;
    rsd_successors_of(&before, count)
}

pub(crate) fn rsd_successors_of(before: &AnalysisReport, count: usize) -> Result<Vec<Successor>> {
    if count < 1 {
        return Err(Error::Precondition("count >= 1".into()));
    }
    let set = &before.set;
    if set.len() < 3 || set.min_element() != Some(0) {
        return Err(Error::Precondition("min(A) = 0 and |A| >= 3".into()));
    }
    let needed = before.difference_size + before.size + 1;
    if before.restricted_sumset_size < needed {
        return Err(Error::Precondition(format!(
            "|A∔A| >= |A−A| + |A| + 1 ({} < {} + {} + 1)",
            before.restricted_sumset_size, before.difference_size, before.size
        )));
    }
    let first = set
        .max_element()
        .unwrap()
        .checked_mul(2)
        .and_then(|v| v.checked_add(1))
        .ok_or(Error::Overflow("successor element"))?;
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count);
    let mut b = first;
    while out.len() < count {
        let after = extend_checked(before, b)?;
        if !after.is_rsd {
            return Err(Error::Verification(format!(
                "extension of an RSD set by {b} is not RSD"
            )));
        }
        if seen.insert(canonicalize(&after.set)?.representative) {
            out.push(Successor {
                element: b,
                analysis: after,
            });
        }
        b = b
            .checked_add(1)
            .ok_or(Error::Overflow("successor element"))?;
    }
    Ok(out)
}
