//! Base-`m` digit sets `B = {Σ aᵢ mⁱ : aᵢ ∈ A}` and the RSD witness
//! pipeline built on them.

use serde::{Deserialize, Serialize};

use super::extension::{rsd_successors_of, Successor};
use super::recipe::{ConstructionRecipe, RecipeKind};
use crate::error::{Error, Result};
use crate::setcore::{analyze, AnalysisReport, IntSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasePowerParams {
    /// `m`.
    pub base: i64,
    /// `n`.
    pub digits: u32,
    pub digit_set: IntSet,
}

impl BasePowerParams {
    /// Checks `min(A) = 0`, `m > 2·max(A)` and `n ≥ 1`.
    pub fn new(digit_set: IntSet, base: i64, digits: u32) -> Result<Self> {
        let params = BasePowerParams {
            base,
            digits,
            digit_set,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn a_star(&self) -> i64 {
        self.digit_set.max_element().unwrap_or(0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.digit_set.min_element() != Some(0) {
            return Err(Error::Precondition(
                "digit set must be nonempty with min 0".into(),
            ));
        }
        if self.digits < 1 {
            return Err(Error::Precondition("n >= 1".into()));
        }
        if self.base <= 2 * self.a_star() {
            return Err(Error::Precondition(format!(
                "m > 2·a* (m = {}, a* = {})",
                self.base,
                self.a_star()
            )));
        }
        Ok(())
    }
}

/// `{Σ_{i<n} dᵢ mⁱ : dᵢ ∈ digits}` for any (possibly negative) digit set.
pub fn digit_expansion(digits: &IntSet, base: i64, n: u32) -> Result<IntSet> {
    let mut acc = digits.clone();
    let mut place: i64 = 1;
    for _ in 1..n {
        place = place
            .checked_mul(base)
            .ok_or(Error::Overflow("base power place value"))?;
        let shifted = digits.affine_map(0, place)?;
        acc = acc.add_set(&shifted)?;
    }
    Ok(acc)
}

pub fn base_power(params: &BasePowerParams) -> Result<IntSet> {
    params.validate()?;
    digit_expansion(&params.digit_set, params.base, params.digits)
}

/// Direct-computation check of `|B| = |A|ⁿ`, `|B−B| = |A−A|ⁿ` and
/// `|B∔B| ≥ |A∔A|ⁿ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasePowerCheck {
    pub size: usize,
    pub expected_size: u128,
    pub difference_size: usize,
    pub expected_difference_size: u128,
    pub restricted_sumset_size: usize,
    pub restricted_lower_bound: u128,
    pub holds: bool,
}

pub fn check_base_power(
    params: &BasePowerParams,
    digit_report: &AnalysisReport,
    b: &AnalysisReport,
) -> BasePowerCheck {
    let pow = |v: usize| (v as u128).checked_pow(params.digits).unwrap_or(u128::MAX);
    let expected_size = pow(digit_report.size);
    let expected_difference_size = pow(digit_report.difference_size);
    let restricted_lower_bound = pow(digit_report.restricted_sumset_size);
    BasePowerCheck {
        size: b.size,
        expected_size,
        difference_size: b.difference_size,
        expected_difference_size,
        restricted_sumset_size: b.restricted_sumset_size,
        restricted_lower_bound,
        holds: b.size as u128 == expected_size
            && b.difference_size as u128 == expected_difference_size
            && b.restricted_sumset_size as u128 >= restricted_lower_bound,
    }
}

/// `(A − min A) / gcd`, keeping orientation.
pub fn normalize(set: &IntSet) -> Result<IntSet> {
    let lo = set.min_element().ok_or(Error::EmptySet)?;
    let g = set.gcd_of_differences().max(1) as i64;
    let values: Vec<i64> = set.iter().map(|a| (a - lo) / g).collect();
    IntSet::new(&values)
}

/// One attempt at the gap condition for a given exponent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapProbe {
    pub n: u32,
    pub base_size: usize,
    pub restricted_sumset_size: usize,
    pub difference_size: usize,
    /// `|B∔B| − (|B−B| + |B| + 1)`; the condition holds iff this is ≥ 0.
    pub gap_margin: i64,
    pub lemma_check: BasePowerCheck,
}

impl GapProbe {
    pub fn passes(&self) -> bool {
        self.gap_margin >= 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub analysis: AnalysisReport,
    pub recipe: ConstructionRecipe,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem1Report {
    /// The normalized seed (min 0, gcd 1).
    pub seed: AnalysisReport,
    pub m: i64,
    pub n: u32,
    pub probe: GapProbe,
    pub witnesses: Vec<Witness>,
}

fn seed_checked(seed: &IntSet, m: i64) -> Result<AnalysisReport> {
    let normalized = normalize(seed)?;
    let report = analyze(&normalized)?;
    if !report.is_rsd {
        return Err(Error::Precondition(format!(
            "A must be RSD (Δ(A) = {} >= 0)",
            report.delta
        )));
    }
    let a_star = normalized.max_element().unwrap();
    if m <= 2 * a_star {
        return Err(Error::Precondition(format!(
            "m > 2·max(A) (m = {m}, max(A) = {a_star})"
        )));
    }
    Ok(report)
}

fn probe(seed: &AnalysisReport, m: i64, n: u32) -> Result<(GapProbe, AnalysisReport)> {
    let params = BasePowerParams::new(seed.set.clone(), m, n)?;
    let b = analyze(&base_power(&params)?)?;
    let lemma_check = check_base_power(&params, seed, &b);
    if !lemma_check.holds {
        return Err(Error::Verification(format!(
            "base-power identities fail for m = {m}, n = {n}: {lemma_check:?}"
        )));
    }
    let gap_margin = b.restricted_sumset_size as i64 - (b.difference_size + b.size + 1) as i64;
    Ok((
        GapProbe {
            n,
            base_size: b.size,
            restricted_sumset_size: b.restricted_sumset_size,
            difference_size: b.difference_size,
            gap_margin,
            lemma_check,
        },
        b,
    ))
}

/// Probes `n = 1, 2, …, max_n` and stops at the first exponent whose
/// base-power set satisfies the gap condition. The last probe passes iff
/// such an exponent was found.
pub fn find_gap_exponent(seed: &IntSet, m: i64, max_n: u32) -> Result<Vec<GapProbe>> {
    let seed = seed_checked(seed, m)?;
    let mut probes = Vec::new();
    for n in 1..=max_n {
        let (p, _) = probe(&seed, m, n)?;
        let done = p.passes();
        probes.push(p);
        if done {
            break;
        }
    }
    Ok(probes)
}

/// Builds `B` from the normalized seed, checks the gap condition directly
/// and returns `count` verified RSD sets of cardinality `|A|ⁿ + 1`.
pub fn theorem1_witness(seed: &IntSet, m: i64, n: u32, count: usize) -> Result<Theorem1Report> {
    let seed = seed_checked(seed, m)?;
    let (probe, b) = probe(&seed, m, n)?;
    if !probe.passes() {
        return Err(Error::GapCondition {
            restricted: probe.restricted_sumset_size,
            difference: probe.difference_size,
            size: probe.base_size,
        });
    }
    let first = 2 * b.set.max_element().unwrap() + 1;
    let seed_recipe = ConstructionRecipe::literal(&seed.set);
    let witnesses = rsd_successors_of(&b, count)?
        .into_iter()
        .map(|Successor { element, analysis }| Witness {
            analysis,
            recipe: ConstructionRecipe::new(
                RecipeKind::Theorem1Witness,
                vec![m, n as i64, element - first],
                vec![seed_recipe.clone()],
            ),
        })
        .collect();
    Ok(Theorem1Report {
        seed,
        m,
        n,
        probe,
        witnesses,
    })
}
