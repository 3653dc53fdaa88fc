//! Naive double-loop oracles over `BTreeSet<i64>`.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rsdkit::IntSet;

pub struct Sizes {
    pub sums: usize,
    pub restricted: usize,
    pub differences: usize,
}

pub fn sums(a: &[i64]) -> BTreeSet<i64> {
    let mut out = BTreeSet::new();
    for &x in a {
        for &y in a {
            out.insert(x + y);
        }
    }
    out
}

pub fn restricted(a: &[i64]) -> BTreeSet<i64> {
    let mut out = BTreeSet::new();
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in a.iter().enumerate() {
            if i != j {
                out.insert(x + y);
            }
        }
    }
    out
}

pub fn differences(a: &[i64]) -> BTreeSet<i64> {
    let mut out = BTreeSet::new();
    for &x in a {
        for &y in a {
            out.insert(x - y);
        }
    }
    out
}

pub fn sizes(a: &[i64]) -> Sizes {
    Sizes {
        sums: sums(a).len(),
        restricted: restricted(a).len(),
        differences: differences(a).len(),
    }
}

pub fn to_vec(s: &BTreeSet<i64>) -> Vec<i64> {
    s.iter().copied().collect()
}

pub fn set(v: &[i64]) -> IntSet {
    IntSet::new(v).unwrap()
}

/// All canonical classes of `k`-subsets of `[0, n]` with diameter ≥ 1,
/// via canonicalize-and-dedup over every subset containing 0.
pub fn classes_by_subsets(k: u32, n: u32, keep: impl Fn(&IntSet) -> bool) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    for mask in 0u64..(1u64 << n) {
        if mask.count_ones() + 1 != k {
            continue;
        }
        let mut v = vec![0i64];
        v.extend((0..n).filter(|i| mask >> i & 1 == 1).map(|i| i as i64 + 1));
        let s = IntSet::new(&v).unwrap();
        if keep(&s) {
            out.insert(rsdkit::canonicalize(&s).unwrap().representative.to_vec());
        }
    }
    out
}
