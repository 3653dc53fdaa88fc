//! Exhaustive enumeration of affine-equivalence classes of integer sets.
//!
//! Every class with a member inside `{0, …, n}` has exactly one canonical
//! representative there: `0 ∈ A`, `max(A) = d ≤ n`, `gcd(A) = 1` and `A` is
//! lexicographically no larger than `d − A`. The enumerator walks these
//! representatives diameter by diameter, so each class is tested once.
//!
//! Work for one diameter is split into shards by the membership pattern of
//! the first `⌈log₂ shard_count⌉` interior positions; shards are independent
//! and run on a rayon pool. Results are merged in a fixed order, so reports
//! do not depend on the shard or thread count.

mod kernel;
mod profile;
mod search;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::setcore::IntSet;

pub use kernel::{Node, MAX_KERNEL_DIAMETER};
pub use profile::{profile_enumeration, ProfileReport, ThroughputSample};
pub use search::{
    search_delta, search_delta_with_budget, DEFAULT_SEARCH_BUDGET, DEFAULT_SEARCH_MAX_DIAMETER,
    DEFAULT_SEARCH_MAX_K,
};

/// Default number of candidate sets an enumeration may test.
pub const DEFAULT_BUDGET: u64 = 2_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Predicate {
    Sd,
    Rsd,
    All,
    /// `Δ(A) = |A−A| − |A∔A| = x`.
    DeltaEq(i64),
}

impl Predicate {
    #[inline(always)]
    pub(crate) fn matches(&self, node: &Node) -> bool {
        match *self {
            Predicate::Sd => node.sumset_size() > node.difference_size(),
            Predicate::Rsd => node.restricted_size() > node.difference_size(),
            Predicate::All => true,
            Predicate::DeltaEq(x) => node.delta() == x,
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::Sd => f.write_str("sd"),
            Predicate::Rsd => f.write_str("rsd"),
            Predicate::All => f.write_str("all"),
            Predicate::DeltaEq(x) => write!(f, "delta={x}"),
        }
    }
}

impl FromStr for Predicate {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "sd" => Ok(Predicate::Sd),
            "rsd" => Ok(Predicate::Rsd),
            "all" => Ok(Predicate::All),
            other => other
                .strip_prefix("delta=")
                .and_then(|x| x.parse().ok())
                .map(Predicate::DeltaEq)
                .ok_or_else(|| {
                    format!("unknown predicate {s:?} (expected sd, rsd, all or delta=<x>)")
                }),
        }
    }
}

impl Serialize for Predicate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Predicate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumParams {
    pub k: u32,
    pub n: u32,
    pub predicate: Predicate,
    pub list_witnesses: bool,
    pub shard_count: u32,
    /// 0 means one thread per available core.
    pub thread_count: u32,
}

impl EnumParams {
    pub fn new(k: u32, n: u32, predicate: Predicate) -> Self {
        EnumParams {
            k,
            n,
            predicate,
            list_witnesses: false,
            shard_count: 64,
            thread_count: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 1 {
            return Err(Error::Precondition("k >= 1".into()));
        }
        if self.n + 1 < self.k {
            return Err(Error::Precondition("n >= k - 1".into()));
        }
        if self.shard_count < 1 {
            return Err(Error::Precondition("shard_count >= 1".into()));
        }
        if self.n > MAX_KERNEL_DIAMETER {
            return Err(Error::Precondition(format!(
                "n <= {MAX_KERNEL_DIAMETER} (enumeration kernel width)"
            )));
        }
        Ok(())
    }

    /// Diameters that can hold a canonical `k`-set.
    fn diameters(&self) -> std::ops::RangeInclusive<u32> {
        match self.k {
            1 => 0..=0,
            k => (k - 1).max(1)..=self.n,
        }
    }

    /// Candidate sets the enumeration will test: `Σ_d C(d−1, k−2)`.
    pub fn candidate_count(&self) -> u128 {
        if self.k == 1 {
            return 1;
        }
        self.diameters()
            .map(|d| binomial(d as u64 - 1, self.k as u64 - 2))
            .fold(0u128, u128::saturating_add)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub params: EnumParams,
    /// Canonical representatives tested (one per class).
    pub classes_examined: u64,
    /// Classes satisfying the predicate, i.e. `H(k, n)` or `H*(k, n)`.
    pub matching_classes: u64,
    /// Candidate sets visited, canonical or not; the budget unit.
    pub candidates_tested: u64,
    pub witnesses: Option<Vec<IntSet>>,
    #[serde(with = "duration_secs")]
    pub elapsed: Duration,
    pub per_shard_counts: Vec<u64>,
}

impl EnumerationReport {
    pub const CSV_HEADER: &'static str = "k,n,predicate,list_witnesses,shard_count,thread_count,classes_examined,matching_classes,candidates_tested,elapsed";

    pub fn csv_row(&self) -> String {
        let p = &self.params;
        format!(
            "{},{},{},{},{},{},{},{},{},{:.6}",
            p.k,
            p.n,
            p.predicate,
            p.list_witnesses,
            p.shard_count,
            p.thread_count,
            self.classes_examined,
            self.matching_classes,
            self.candidates_tested,
            self.elapsed.as_secs_f64()
        )
    }
}

mod duration_secs {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_secs_f64(f64::deserialize(d)?))
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Number of interior positions that define shards.
pub(crate) fn shard_bits(shard_count: u32) -> u32 {
    shard_count.next_power_of_two().trailing_zeros()
}

/// One shard's slice of one diameter: the interior positions `1..=bits`
/// have membership `pattern`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct WorkUnit {
    pub d: u32,
    pub bits: u32,
    pub pattern: u64,
    pub shard: u32,
}

impl WorkUnit {
    pub fn start(&self) -> Node {
        let mut node = Node::endpoints(self.d);
        for j in 0..self.bits {
            if (self.pattern >> j) & 1 == 1 {
                node = node.add(j + 1);
            }
        }
        node
    }

    /// First interior position the shard leaves free.
    pub fn free_from(&self) -> u32 {
        self.bits + 1
    }
}

pub(crate) fn work_units(d: u32, shard_count: u32) -> Vec<WorkUnit> {
    let bits = shard_bits(shard_count).min(d.saturating_sub(1));
    (0..1u64 << bits)
        .map(|pattern| WorkUnit {
            d,
            bits,
            pattern,
            shard: (pattern % shard_count as u64) as u32,
        })
        .collect()
}

pub fn with_pool<T: Send>(threads: u32, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads as usize)
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

#[derive(Default)]
struct UnitTally {
    shard: u32,
    candidates: u64,
    canonical: u64,
    matching: u64,
    witnesses: Vec<u128>,
}

/// Visits every `remaining`-subset of `[from, d−1]` added to `node`.
fn choose(node: Node, from: u32, remaining: u32, visit: &mut impl FnMut(&Node)) {
    if remaining == 0 {
        visit(&node);
        return;
    }
    for e in from..=node.d - remaining {
        choose(node.add(e), e + 1, remaining - 1, visit);
    }
}

fn run_unit(unit: &WorkUnit, k: u32, predicate: Predicate, list: bool) -> UnitTally {
    let mut tally = UnitTally {
        shard: unit.shard,
        ..Default::default()
    };
    let start = unit.start();
    let have = start.size();
    if have > k {
        return tally;
    }
    let remaining = k - have;
    let free = unit.d.saturating_sub(unit.free_from());
    if remaining > free {
        return tally;
    }
    choose(start, unit.free_from(), remaining, &mut |node| {
        tally.candidates += 1;
        if node.is_canonical() {
            tally.canonical += 1;
            if predicate.matches(node) {
                tally.matching += 1;
                if list {
                    tally.witnesses.push(node.mask);
                }
            }
        }
    });
    tally
}

/// Computes `H(k, n)`, `H*(k, n)` or the analogue for another predicate
/// under [`DEFAULT_BUDGET`].
pub fn count_classes(params: &EnumParams) -> Result<EnumerationReport> {
    count_classes_with_budget(params, DEFAULT_BUDGET)
}

pub fn count_classes_with_budget(params: &EnumParams, budget: u64) -> Result<EnumerationReport> {
    let mut witnesses = Vec::new();
    let mut report = enumerate_classes(params, budget, &mut |w| {
        witnesses.push(w.clone());
    })?;
    if params.list_witnesses {
        report.witnesses = Some(witnesses);
    }
    Ok(report)
}

/// Runs the enumeration, handing each matching representative to `sink`
/// in (diameter, lexicographic) order as soon as its diameter is finished.
/// The returned report never carries witnesses; the sink is only called
/// when `params.list_witnesses` is set.
pub fn enumerate_classes(
    params: &EnumParams,
    budget: u64,
    sink: &mut dyn FnMut(&IntSet),
) -> Result<EnumerationReport> {
    params.validate()?;
    let needed = params.candidate_count();
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let started = Instant::now();
    let mut per_shard = vec![0u64; params.shard_count as usize];
    let (mut candidates, mut canonical, mut matching) = (0u64, 0u64, 0u64);
    let k = params.k;
    let predicate = params.predicate;
    let list = params.list_witnesses;
    for d in params.diameters() {
        let units = work_units(d, params.shard_count);
        let tallies: Vec<UnitTally> = with_pool(params.thread_count, || {
            units
                .par_iter()
                .map(|u| run_unit(u, k, predicate, list))
                .collect()
        })?;
        let mut found = Vec::new();
        for t in tallies {
            candidates += t.candidates;
            canonical += t.canonical;
            matching += t.matching;
            per_shard[t.shard as usize] += t.matching;
            found.extend(t.witnesses);
        }
        found.sort_unstable_by(|&a, &b| {
            if a == b {
                std::cmp::Ordering::Equal
            } else if kernel::lex_lt(a, b) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        for mask in found {
            sink(&kernel::mask_to_intset(mask));
        }
    }
    Ok(EnumerationReport {
        params: params.clone(),
        classes_examined: canonical,
        matching_classes: matching,
        candidates_tested: candidates,
        witnesses: None,
        elapsed: started.elapsed(),
        per_shard_counts: per_shard,
    })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::setcore::canonicalize;

    /// Every k-subset of {0..n}, canonicalized and deduplicated.
    fn oracle_classes(k: usize, n: i64) -> BTreeSet<IntSet> {
        let mut out = BTreeSet::new();
        let mut stack = vec![(Vec::<i64>::new(), 0i64)];
        while let Some((chosen, next)) = stack.pop() {
            if chosen.len() == k {
                let s = IntSet::new(&chosen).unwrap();
                out.insert(canonicalize(&s).unwrap().representative);
                continue;
            }
            for v in next..=n {
                let mut c = chosen.clone();
                c.push(v);
                stack.push((c, v + 1));
            }
        }
        out
    }

    #[test]
    fn three_sets_in_small_range() {
        let mut p = EnumParams::new(3, 3, Predicate::All);
        p.list_witnesses = true;
        let r = count_classes(&p).unwrap();
        assert_eq!(r.matching_classes, 2);
        let lits: Vec<String> = r
            .witnesses
            .unwrap()
            .iter()
            .map(|s| s.to_literal())
            .collect();
        assert_eq!(lits, vec!["0,1,2", "0,1,3"]);
        assert_eq!(oracle_classes(3, 3).len(), 2);
    }

    #[test]
    fn matches_oracle_small() {
        for k in 1..=4 {
            for n in (k as u32 - 1)..=8 {
                let r = count_classes(&EnumParams::new(k as u32, n, Predicate::All)).unwrap();
                assert_eq!(
                    r.matching_classes as usize,
                    oracle_classes(k, n as i64).len(),
                    "k={k} n={n}"
                );
                assert_eq!(r.classes_examined, r.matching_classes);
            }
        }
    }

    #[test]
    fn shard_and_thread_invariance() {
        let base = EnumParams {
            list_witnesses: true,
            ..EnumParams::new(6, 16, Predicate::DeltaEq(8))
        };
        let reference = count_classes(&EnumParams {
            shard_count: 1,
            thread_count: 1,
            ..base.clone()
        })
        .unwrap();
        for (shards, threads) in [(3, 1), (64, 2), (7, 4)] {
            let r = count_classes(&EnumParams {
                shard_count: shards,
                thread_count: threads,
                ..base.clone()
            })
            .unwrap();
            assert_eq!(r.matching_classes, reference.matching_classes);
            assert_eq!(r.candidates_tested, reference.candidates_tested);
            assert_eq!(r.witnesses, reference.witnesses);
            assert_eq!(r.per_shard_counts.iter().sum::<u64>(), r.matching_classes);
        }
    }

    #[test]
    fn unique_sd_eight_set() {
        let mut p = EnumParams::new(8, 14, Predicate::Sd);
        p.list_witnesses = true;
        let r = count_classes(&p).unwrap();
        assert_eq!(r.matching_classes, 1);
        assert_eq!(r.witnesses.unwrap()[0].to_literal(), "0,2,3,4,7,11,12,14");
    }

    #[test]
    fn invalid_params() {
        assert!(count_classes(&EnumParams::new(0, 3, Predicate::All)).is_err());
        assert!(count_classes(&EnumParams::new(5, 2, Predicate::All)).is_err());
        assert!(count_classes(&EnumParams {
            shard_count: 0,
            ..EnumParams::new(3, 5, Predicate::All)
        })
        .is_err());
        assert!(count_classes(&EnumParams::new(3, 64, Predicate::All)).is_err());
    }

    #[test]
    fn budget_is_checked_up_front() {
        let p = EnumParams::new(6, 30, Predicate::All);
        let needed = p.candidate_count();
        assert_eq!(needed, binomial(30, 5));
        let err = count_classes_with_budget(&p, 100).unwrap_err();
        assert_eq!(
            err,
            Error::BudgetExceeded {
                needed,
                budget: 100
            }
        );
    }

    #[test]
    fn predicate_parsing() {
        assert_eq!("SD".parse::<Predicate>().unwrap(), Predicate::Sd);
        assert_eq!(
            "delta=-3".parse::<Predicate>().unwrap(),
            Predicate::DeltaEq(-3)
        );
        assert!("bogus".parse::<Predicate>().is_err());
        assert_eq!(Predicate::DeltaEq(4).to_string(), "delta=4");
    }

    #[test]
    fn csv_row_has_header_arity() {
        let r = count_classes(&EnumParams::new(3, 5, Predicate::All)).unwrap();
        assert_eq!(
            r.csv_row().split(',').count(),
            EnumerationReport::CSV_HEADER.split(',').count()
        );
    }
}
