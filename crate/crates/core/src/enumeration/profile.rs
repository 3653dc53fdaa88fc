use serde::{Deserialize, Serialize};

use super::{count_classes_with_budget, EnumParams, DEFAULT_BUDGET};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThroughputSample {
    pub threads: u32,
    pub matching_classes: u64,
    pub candidates_tested: u64,
    pub elapsed: f64,
    pub sets_per_second: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileReport {
    pub params: EnumParams,
    pub samples: Vec<ThroughputSample>,
    /// Whether every sample produced the same counts.
    pub consistent: bool,
}

/// Runs the same enumeration at 1, 2 and all available threads.
pub fn profile_enumeration(params: &EnumParams) -> Result<ProfileReport> {
    let max = std::thread::available_parallelism()
        .map(|n| n.get() as u32)
        .unwrap_or(1);
    let mut thread_counts = vec![1, 2, max];
    thread_counts.sort_unstable();
    thread_counts.dedup();
    let mut samples = Vec::new();
    for threads in thread_counts {
        let p = EnumParams {
            thread_count: threads,
            list_witnesses: false,
            ..params.clone()
        };
        let r = count_classes_with_budget(&p, DEFAULT_BUDGET)?;
        let secs = r.elapsed.as_secs_f64();
        samples.push(ThroughputSample {
            threads,
            matching_classes: r.matching_classes,
            candidates_tested: r.candidates_tested,
            elapsed: secs,
            sets_per_second: if secs > 0.0 {
                r.candidates_tested as f64 / secs
            } else {
                f64::INFINITY
            },
        });
    }
    let first = &samples[0];
    let consistent = samples.iter().all(|s| {
        s.matching_classes == first.matching_classes
            && s.candidates_tested == first.candidates_tested
    });
    if !consistent {
        return Err(Error::Verification(
            "enumeration counts differ across thread counts".into(),
        ));
    }
    Ok(ProfileReport {
        params: params.clone(),
        samples,
        consistent,
    })
}
