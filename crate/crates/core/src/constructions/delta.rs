//! Sets with a prescribed `Δ(A) = |A−A| − |A∔A| = −x` for every integer `x`.
//!
//! Closed forms:
//!
//! | x            | set                                                       |
//! |--------------|-----------------------------------------------------------|
//! | −1           | `{0}`                                                     |
//! | ≤ −2         | `{0, 1, …, −x−1} ∪ {−2x−2}`                               |
//! | 2j+1 ≥ 1     | `{0,2,3,4,7,11,12,14} + {0, 29, …, 29(k+3)}`, `k = j + 2` |
//! | 2j ≥ 8       | the same block set with `k = j + 2`, without `29`         |
//!
//! The block set for `k` has `|A∔A| = 26(2k+7) − 10` and `|A−A| = 25(2k+7)`,
//! so `Δ = 3 − 2k`; removing `29` loses one restricted sum and no
//! differences, giving `Δ = 4 − 2k`.
//!
//! The remaining values `0, 2, 4, 6` come from the bounded canonical search.

use serde::{Deserialize, Serialize};

use super::recipe::{ConstructionRecipe, RecipeKind};
use crate::enumeration::{
    search_delta_with_budget, DEFAULT_SEARCH_BUDGET, DEFAULT_SEARCH_MAX_DIAMETER,
    DEFAULT_SEARCH_MAX_K,
};
use crate::error::{Error, Result};
use crate::setcore::{analyze, IntSet};

/// The eight-element SD set whose 29-periodic copies drive the positive cases.
pub const BLOCK: [i64; 8] = [0, 2, 3, 4, 7, 11, 12, 14];
pub const PERIOD: i64 = 29;

/// Values of `x` the closed forms do not reach.
pub const RESIDUAL: [i64; 4] = [0, 2, 4, 6];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub max_diameter: u32,
    pub max_k: u32,
    pub budget: u64,
    /// 0 means all cores.
    pub threads: u32,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_diameter: DEFAULT_SEARCH_MAX_DIAMETER,
            max_k: DEFAULT_SEARCH_MAX_K,
            budget: DEFAULT_SEARCH_BUDGET,
            threads: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "case")]
pub enum DeltaCase {
    Singleton,
    ProgressionPlusPoint,
    /// Block set with parameter `k`.
    OddBlocks {
        k: i64,
    },
    /// Block set with parameter `k`, without `29`.
    EvenBlocks {
        k: i64,
    },
    Searched,
}

pub fn delta_case(x: i64) -> DeltaCase {
    match x {
        -1 => DeltaCase::Singleton,
        x if x <= -2 => DeltaCase::ProgressionPlusPoint,
        x if x % 2 == 1 => DeltaCase::OddBlocks { k: (x - 1) / 2 + 2 },
        x if x >= 8 => DeltaCase::EvenBlocks { k: x / 2 + 2 },
        _ => DeltaCase::Searched,
    }
}

/// `{0,2,3,4,7,11,12,14} + {0, 29, …, 29(k+3)}`.
pub fn odd_block_set(k: i64) -> Result<IntSet> {
    if k < 0 {
        return Err(Error::Precondition(format!("k >= 0 (got {k})")));
    }
    let blocks = k.checked_add(4).ok_or(Error::Overflow("block count"))?;
    let mut values = Vec::new();
    for j in 0..blocks {
        let base = j
            .checked_mul(PERIOD)
            .ok_or(Error::Overflow("block offset"))?;
        values.extend(BLOCK.iter().map(|b| base + b));
    }
    IntSet::new(&values)
}

fn closed_form(x: i64) -> Result<IntSet> {
    match delta_case(x) {
        DeltaCase::Singleton => Ok(IntSet::singleton(0)),
        DeltaCase::ProgressionPlusPoint => {
            let top = x
                .checked_neg()
                .and_then(|v| v.checked_mul(2))
                .and_then(|v| v.checked_sub(2))
                .ok_or(Error::Overflow("delta set"))?;
            let mut values: Vec<i64> = (0..-x).collect();
            values.push(top);
            IntSet::new(&values)
        }
        DeltaCase::OddBlocks { k } => odd_block_set(k),
        DeltaCase::EvenBlocks { k } => Ok(odd_block_set(k)?.without_element(PERIOD)),
        DeltaCase::Searched => unreachable!("residual values have no closed form"),
    }
}

/// A set with `Δ = −x` under the default search bounds.
pub fn delta_set(x: i64) -> Result<(IntSet, ConstructionRecipe)> {
    delta_set_with_bounds(x, &SearchBounds::default())
}

/// A set with `Δ = −x`, verified by direct computation. Residual values go
/// to the bounded search; if it finds nothing the error names the bounds so
/// the caller can raise them.
pub fn delta_set_with_bounds(
    x: i64,
    bounds: &SearchBounds,
) -> Result<(IntSet, ConstructionRecipe)> {
    let (set, parameters) = if delta_case(x) == DeltaCase::Searched {
        let found = search_delta_with_budget(
            x,
            bounds.max_diameter,
            bounds.max_k,
            bounds.budget,
            bounds.threads,
        )?;
        let set = found.ok_or(Error::SearchExhausted {
            delta: -x,
            max_diameter: bounds.max_diameter,
            max_k: bounds.max_k,
        })?;
        let budget = i64::try_from(bounds.budget).unwrap_or(i64::MAX);
        (
            set,
            vec![x, bounds.max_diameter as i64, bounds.max_k as i64, budget],
        )
    } else {
        (closed_form(x)?, vec![x])
    };
    let delta = analyze(&set)?.delta;
    if delta != -x {
        return Err(Error::Verification(format!(
            "Δ = {delta} for x = {x}, expected {}",
            -x
        )));
    }
    Ok((
        set,
        ConstructionRecipe::new(RecipeKind::DeltaSet, parameters, Vec::new()),
    ))
}

/// The block set's sizes next to the commonly quoted identities
/// `|A∔A| = 26(2k+7) − 6` and `|A−A| = 25(2k+7)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddCaseCheck {
    pub k: i64,
    pub restricted_sumset_size: usize,
    pub stated_restricted_sumset_size: i64,
    pub difference_size: usize,
    pub stated_difference_size: i64,
    /// `(A+A) \ (A∔A)`, the doubles with no other representation.
    pub lost_doubles: Vec<i64>,
    pub sumset_max: i64,
    pub delta: i64,
    pub identities_hold: bool,
}

pub fn check_odd_case(k: i64) -> Result<OddCaseCheck> {
    let a = odd_block_set(k)?;
    let sums = a.sumset()?;
    let restricted = a.restricted_sumset()?;
    let diffs = a.difference_set()?;
    let lost_doubles: Vec<i64> = sums.iter().filter(|s| !restricted.contains(*s)).collect();
    let stated_restricted = 26 * (2 * k + 7) - 6;
    let stated_difference = 25 * (2 * k + 7);
    Ok(OddCaseCheck {
        k,
        restricted_sumset_size: restricted.len(),
        stated_restricted_sumset_size: stated_restricted,
        difference_size: diffs.len(),
        stated_difference_size: stated_difference,
        lost_doubles,
        sumset_max: sums.max_element().unwrap(),
        delta: diffs.len() as i64 - restricted.len() as i64,
        identities_hold: restricted.len() as i64 == stated_restricted
            && diffs.len() as i64 == stated_difference,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cases() {
        assert_eq!(delta_case(-1), DeltaCase::Singleton);
        assert_eq!(delta_case(-7), DeltaCase::ProgressionPlusPoint);
        assert_eq!(delta_case(1), DeltaCase::OddBlocks { k: 2 });
        assert_eq!(delta_case(9), DeltaCase::OddBlocks { k: 6 });
        assert_eq!(delta_case(8), DeltaCase::EvenBlocks { k: 6 });
        for x in RESIDUAL {
            assert_eq!(delta_case(x), DeltaCase::Searched);
        }
    }

    #[test]
    fn singleton_and_progressions() {
        assert_eq!(delta_set(-1).unwrap().0.to_literal(), "0");
        let (s, _) = delta_set(-2).unwrap();
        assert_eq!(s.to_literal(), "0,1,2");
        assert_eq!(s.restricted_sumset().unwrap().to_literal(), "1,2,3");
        let (s, _) = delta_set(-5).unwrap();
        assert_eq!(s.to_literal(), "0,1,2,3,4,8");
    }

    #[test]
    fn block_cases() {
        let (s, r) = delta_set(1).unwrap();
        assert_eq!(s.len(), 48);
        assert_eq!(s.max_element(), Some(5 * 29 + 14));
        assert_eq!(r.parameters, vec![1]);
        let (s, _) = delta_set(8).unwrap();
        assert_eq!(s.len(), 79);
        assert!(!s.contains(29));
        assert_eq!(odd_block_set(6).unwrap().without_element(29), s);
    }

    #[test]
    fn quoted_identities_are_off_by_four() {
        for k in 0..4 {
            let c = check_odd_case(k).unwrap();
            assert!(!c.identities_hold);
            assert_eq!(c.difference_size as i64, c.stated_difference_size);
            assert_eq!(
                c.restricted_sumset_size as i64,
                c.stated_restricted_sumset_size - 4
            );
            assert_eq!(c.delta, 3 - 2 * k);
            assert_eq!(c.lost_doubles.len(), 10);
            assert_eq!(&c.lost_doubles[..5], &[0, 8, 22, 24, 28]);
        }
    }

    #[test]
    fn zero_comes_from_search() {
        let (s, r) = delta_set(0).unwrap();
        assert_eq!(analyze(&s).unwrap().delta, 0);
        assert_eq!(r.parameters.len(), 4);
        assert_eq!(r.replay().unwrap(), s);
    }

    #[test]
    fn search_failure_names_bounds() {
        let bounds = SearchBounds {
            max_diameter: 12,
            max_k: 8,
            ..SearchBounds::default()
        };
        let err = delta_set_with_bounds(2, &bounds).unwrap_err();
        assert_eq!(
            err,
            Error::SearchExhausted {
                delta: -2,
                max_diameter: 12,
                max_k: 8
            }
        );
    }
}
