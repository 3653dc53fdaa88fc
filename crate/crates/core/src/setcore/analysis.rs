use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::setcore::{IntSet, Universe};

/// Cardinalities and classification of one set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub set: IntSet,
    pub size: usize,
    pub sumset_size: usize,
    pub restricted_sumset_size: usize,
    pub difference_size: usize,
    /// `|A−A| − |A∔A|`; negative exactly for RSD sets.
    pub delta: i64,
    /// `|A+A| − |A−A|`; positive exactly for SD sets.
    pub sum_diff_gap: i64,
    pub is_sd: bool,
    pub is_rsd: bool,
}

impl AnalysisReport {
    pub fn from_sizes(
        set: IntSet,
        sumset_size: usize,
        restricted_sumset_size: usize,
        difference_size: usize,
    ) -> Self {
        let delta = difference_size as i64 - restricted_sumset_size as i64;
        let sum_diff_gap = sumset_size as i64 - difference_size as i64;
        AnalysisReport {
            size: set.len(),
            set,
            sumset_size,
            restricted_sumset_size,
            difference_size,
            delta,
            sum_diff_gap,
            is_sd: sum_diff_gap > 0,
            is_rsd: delta < 0,
        }
    }

    /// CSV header matching [`AnalysisReport::csv_row`].
    pub const CSV_HEADER: &'static str = "set,size,sumset_size,restricted_sumset_size,difference_size,delta,sum_diff_gap,is_sd,is_rsd";

    pub fn csv_row(&self) -> String {
        format!(
            "\"{}\",{},{},{},{},{},{},{},{}",
            self.set.to_literal(),
            self.size,
            self.sumset_size,
            self.restricted_sumset_size,
            self.difference_size,
            self.delta,
            self.sum_diff_gap,
            self.is_sd,
            self.is_rsd
        )
    }
}

pub fn analyze(set: &IntSet) -> Result<AnalysisReport> {
    analyze_within(set, Universe::default())
}

pub fn analyze_within(set: &IntSet, universe: Universe) -> Result<AnalysisReport> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let sums = set.sumset_within(universe)?.len();
    let restricted = set.restricted_sumset_within(universe)?.len();
    let diffs = set.difference_set_within(universe)?.len();
    Ok(AnalysisReport::from_sizes(
        set.clone(),
        sums,
        restricted,
        diffs,
    ))
}
