use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use super::kernel::{lex_lt, mask_to_intset, Node, MAX_KERNEL_DIAMETER};
use super::{shard_bits, with_pool};
use crate::error::{Error, Result};
use crate::setcore::{analyze, IntSet};

pub const DEFAULT_SEARCH_MAX_DIAMETER: u32 = 60;
pub const DEFAULT_SEARCH_MAX_K: u32 = 16;
/// Default number of search-tree nodes (candidate sets) a search may visit.
pub const DEFAULT_SEARCH_BUDGET: u64 = 200_000_000;

const SEARCH_SHARDS: u32 = 64;

/// Smallest canonical set with `Δ(A) = −x`, ordered by diameter, then
/// cardinality, then lexicographically. `Ok(None)` means the bounded space
/// holds no such set.
pub fn search_delta(x: i64, max_diameter: u32, max_k: u32) -> Result<Option<IntSet>> {
    search_delta_with_budget(x, max_diameter, max_k, DEFAULT_SEARCH_BUDGET, 0)
}

/// As [`search_delta`], with an explicit candidate budget and thread count
/// (0 = all cores). The budget counts visited search-tree nodes; whether it
/// is exceeded does not depend on scheduling, since every diameter is
/// either searched completely or reported as over budget.
pub fn search_delta_with_budget(
    x: i64,
    max_diameter: u32,
    max_k: u32,
    budget: u64,
    threads: u32,
) -> Result<Option<IntSet>> {
    if max_k == 0 {
        return Err(Error::Precondition("max_k >= 1".into()));
    }
    if max_diameter > MAX_KERNEL_DIAMETER {
        return Err(Error::Precondition(format!(
            "max_diameter <= {MAX_KERNEL_DIAMETER} (enumeration kernel width)"
        )));
    }
    let target = -x;
    let visited = AtomicU64::new(1);
    if target == 1 {
        return verified(IntSet::singleton(0), target).map(Some);
    }
    if max_k < 2 {
        return Ok(None);
    }
    for d in 1..=max_diameter {
        let plan = Plan::new(d);
        let bits = (shard_bits(SEARCH_SHARDS) as usize).min(plan.order.len());
        let bests: Vec<Vec<Option<u128>>> = with_pool(threads, || {
            (0..1u64 << bits)
                .into_par_iter()
                .map(|pattern| search_unit(&plan, bits, pattern, max_k, target, &visited, budget))
                .collect()
        })?;
        let spent = visited.load(Ordering::Relaxed);
        if spent > budget {
            return Err(Error::BudgetExceeded {
                needed: spent as u128,
                budget,
            });
        }
        let mut best: Vec<Option<u128>> = vec![None; max_k as usize + 1];
        for unit_best in bests {
            for (size, cand) in unit_best.into_iter().enumerate() {
                if let Some(c) = cand {
                    if best[size].is_none_or(|b| lex_lt(c, b)) {
                        best[size] = Some(c);
                    }
                }
            }
        }
        if let Some(mask) = best.into_iter().flatten().next() {
            return verified(mask_to_intset(mask), target).map(Some);
        }
    }
    Ok(None)
}

fn verified(set: IntSet, target: i64) -> Result<IntSet> {
    let r = analyze(&set)?;
    if r.delta != target {
        return Err(Error::Verification(format!(
            "search returned {set} with delta {} instead of {target}",
            r.delta
        )));
    }
    Ok(set)
}

/// Per-diameter tables for the outside-in decision order
/// `1, d−1, 2, d−2, …`.
struct Plan {
    d: u32,
    order: Vec<u32>,
    /// Restricted-sum positions whose membership is final once the first
    /// `l` decisions are made: `[0, L] ∪ [d + H, 2d]` where `[0, L]` and
    /// `[H, d]` are the decided prefix and suffix.
    frozen_sums: Vec<u128>,
    /// Positions `j` for which both `j` and `d − j` are decided.
    paired: Vec<u128>,
    /// Bits `0..=2d`.
    sum_range: u128,
}

impl Plan {
    fn new(d: u32) -> Plan {
        let mut order = Vec::with_capacity(d as usize);
        let (mut lo, mut hi) = (1u32, d.saturating_sub(1));
        while lo <= hi && d >= 2 {
            order.push(lo);
            if hi != lo {
                order.push(hi);
            }
            lo += 1;
            hi -= 1;
        }
        let full = |bits: u32| -> u128 {
            if bits >= 128 {
                u128::MAX
            } else {
                (1u128 << bits) - 1
            }
        };
        let mut frozen_sums = Vec::with_capacity(order.len() + 1);
        let mut paired = Vec::with_capacity(order.len() + 1);
        let mut decided: u128 = 1 | (1u128 << d);
        for l in 0..=order.len() {
            if l > 0 {
                decided |= 1u128 << order[l - 1];
            }
            let low_end = decided.trailing_ones() - 1;
            let high_run = (decided << (127 - d)).leading_ones();
            let high_start = d + 1 - high_run;
            let low = full(low_end + 1);
            let high = full(2 * d + 1) & !full(d + high_start);
            frozen_sums.push(low | high);
            let pairs = if l == order.len() { d } else { (l / 2) as u32 };
            paired.push(full(pairs + 1));
        }
        Plan {
            d,
            sum_range: full(2 * d + 1),
            order,
            frozen_sums,
            paired,
        }
    }
}

struct Walk<'a> {
    plan: &'a Plan,
    max_k: u32,
    target: i64,
    best: Vec<Option<u128>>,
    pending: u64,
    visited: &'a AtomicU64,
    budget: u64,
    stopped: bool,
}

const FLUSH_EVERY: u64 = 1 << 14;

impl Walk<'_> {
    /// Visits `node` and every extension of it by positions
    /// `order[next..]`, skipping subtrees that provably hold no canonical
    /// set with the target delta.
    fn visit(&mut self, node: Node, next: usize) {
        if self.stopped {
            return;
        }
        self.pending += 1;
        if self.pending == FLUSH_EVERY {
            self.flush();
            if self.stopped {
                return;
            }
        }
        let plan = self.plan;
        let asym = (node.mask ^ node.rev) & plan.paired[next];
        if asym != 0 && (node.mask >> asym.trailing_zeros()) & 1 == 0 {
            // Some descendant's reflection is lexicographically smaller.
            return;
        }
        let width = 2 * plan.d as i64 + 1;
        let size = node.size() as i64;
        let diff_misses = width - node.difference_size() as i64;
        let frozen = plan.frozen_sums[next];
        let frozen_misses = (frozen & !node.restricted).count_ones() as i64;
        let open_misses = (plan.sum_range & !frozen & !node.restricted).count_ones() as i64;
        let room = (self.max_k as i64 - size).min((plan.order.len() - next) as i64);
        let new_sums = room * size + room * (room - 1) / 2;
        let sum_misses = frozen_misses + (open_misses - new_sums).max(0);
        // Final delta = sum misses − difference misses; sum misses are at
        // least this bound and difference misses only shrink below this node.
        if sum_misses - diff_misses > self.target {
            return;
        }
        if node.delta() == self.target && node.is_canonical() {
            let slot = &mut self.best[size as usize];
            if slot.is_none_or(|b| lex_lt(node.mask, b)) {
                *slot = Some(node.mask);
            }
        }
        if size as u32 == self.max_k {
            return;
        }
        for j in next..plan.order.len() {
            self.visit(node.add(plan.order[j]), j + 1);
        }
    }

    fn flush(&mut self) {
        let total = self.visited.fetch_add(self.pending, Ordering::Relaxed) + self.pending;
        self.pending = 0;
        if total > self.budget {
            self.stopped = true;
        }
    }
}

/// Lexicographically smallest canonical match per cardinality among sets
/// whose first `bits` decisions follow `pattern`.
fn search_unit(
    plan: &Plan,
    bits: usize,
    pattern: u64,
    max_k: u32,
    target: i64,
    visited: &AtomicU64,
    budget: u64,
) -> Vec<Option<u128>> {
    let mut start = Node::endpoints(plan.d);
    for (j, &pos) in plan.order[..bits].iter().enumerate() {
        if (pattern >> j) & 1 == 1 {
            start = start.add(pos);
        }
    }
    let mut walk = Walk {
        plan,
        max_k,
        target,
        best: vec![None; max_k as usize + 1],
        pending: 0,
        visited,
        budget,
        stopped: false,
    };
    if start.size() <= max_k {
        walk.visit(start, bits);
    }
    walk.flush();
    walk.best
}
