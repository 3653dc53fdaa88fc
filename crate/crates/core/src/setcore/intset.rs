//! Finite integer sets stored as an offset plus a dense bit vector, with the
//! shift-or kernels for `A+A`, `A∔A` and `A−A`.

use std::fmt;

use num_integer::Integer;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default number of bit positions a single set may span.
pub const DEFAULT_UNIVERSE_BITS: u64 = 1 << 26;

/// Allocation guard for dense sets. Every operation that may grow a set
/// checks the span of its result against this bound before allocating.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Universe {
    pub max_span: u64,
}

impl Default for Universe {
    fn default() -> Self {
        Universe {
            max_span: DEFAULT_UNIVERSE_BITS,
        }
    }
}

impl Universe {
    pub fn new(max_span: u64) -> Self {
        Universe { max_span }
    }

    fn check(&self, span: u128) -> Result<usize> {
        if span > self.max_span as u128 {
            Err(Error::Capacity {
                span,
                bound: self.max_span,
            })
        } else {
            Ok(span as usize)
        }
    }
}

/// A finite set of integers.
///
/// Bit `i` of `words` stands for the integer `offset + i`. When the set is
/// nonempty bit 0 is always set (so `offset` is the minimum) and the last
/// word is nonzero; the empty set has no words. With this normalization two
/// sets are equal exactly when their fields are equal.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntSet {
    offset: i64,
    words: Vec<u64>,
    len: usize,
}

fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

/// `dst |= src << shift`, where both are little-endian word arrays and bits
/// shifted past the end of `dst` are known to be zero.
#[inline]
fn or_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let ws = shift / 64;
    let bs = (shift % 64) as u32;
    if bs == 0 {
        for (d, &w) in dst[ws..].iter_mut().zip(src) {
            *d |= w;
        }
        return;
    }
    let mut carry = 0u64;
    let mut i = ws;
    for &w in src {
        dst[i] |= (w << bs) | carry;
        carry = w >> (64 - bs);
        i += 1;
    }
    if carry != 0 {
        dst[i] |= carry;
    }
}

fn set_bit(words: &mut [u64], i: usize) {
    words[i / 64] |= 1 << (i % 64);
}

impl IntSet {
    /// Fewer members than words: pairwise loops beat shift-or.
    fn is_sparse(&self) -> bool {
        self.len < self.words.len()
    }

    pub fn empty() -> Self {
        IntSet::default()
    }

    pub fn singleton(value: i64) -> Self {
        IntSet {
            offset: value,
            words: vec![1],
            len: 1,
        }
    }

    /// Builds a set from elements given in any order. Duplicates are an
    /// error naming the first repeated value and its input position.
    pub fn new(elements: &[i64]) -> Result<Self> {
        Self::new_within(elements, Universe::default())
    }

    pub fn new_within(elements: &[i64], universe: Universe) -> Result<Self> {
        let mut indexed: Vec<(i64, usize)> =
            elements.iter().copied().zip(0..elements.len()).collect();
        indexed.sort_unstable();
        for pair in indexed.windows(2) {
            if pair[0].0 == pair[1].0 {
                let position = pair[0].1.max(pair[1].1);
                return Err(Error::DuplicateElement {
                    value: pair[0].0,
                    position,
                });
            }
        }
        let sorted: Vec<i64> = indexed.into_iter().map(|(v, _)| v).collect();
        Self::from_sorted_within(&sorted, universe)
    }

    /// Builds a set from arbitrary values, silently merging duplicates.
    pub fn from_values<I: IntoIterator<Item = i64>>(values: I) -> Result<Self> {
        let mut v: Vec<i64> = values.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self::from_sorted_within(&v, Universe::default())
    }

    /// `sorted` must be strictly increasing.
    pub(crate) fn from_sorted_within(sorted: &[i64], universe: Universe) -> Result<Self> {
        let (Some(&lo), Some(&hi)) = (sorted.first(), sorted.last()) else {
            return Ok(IntSet::empty());
        };
        debug_assert!(sorted.windows(2).all(|w| w[0] < w[1]));
        let span = universe.check((hi as i128 - lo as i128 + 1) as u128)?;
        let mut words = vec![0u64; words_for(span)];
        for &v in sorted {
            let i = (v as i128 - lo as i128) as usize;
            words[i / 64] |= 1 << (i % 64);
        }
        Ok(IntSet {
            offset: lo,
            words,
            len: sorted.len(),
        })
    }

    /// Wraps a raw bit vector whose bit 0 stands for `offset`. Leading and
    /// trailing zero bits are trimmed.
    pub(crate) fn from_words(offset: i64, mut words: Vec<u64>) -> Self {
        while words.last() == Some(&0) {
            words.pop();
        }
        let Some(first) = words.iter().position(|&w| w != 0) else {
            return IntSet::empty();
        };
        let low = first * 64 + words[first].trailing_zeros() as usize;
        let len = words.iter().map(|w| w.count_ones() as usize).sum();
        if low == 0 {
            return IntSet { offset, words, len };
        }
        let span = words.len() * 64 - low;
        let mut shifted = vec![0u64; words_for(span)];
        let ws = low / 64;
        let bs = (low % 64) as u32;
        for (i, out) in shifted.iter_mut().enumerate() {
            let lo_word = words.get(i + ws).copied().unwrap_or(0);
            let hi_word = words.get(i + ws + 1).copied().unwrap_or(0);
            *out = if bs == 0 {
                lo_word
            } else {
                (lo_word >> bs) | (hi_word << (64 - bs))
            };
        }
        IntSet::from_words(offset + low as i64, shifted)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn min_element(&self) -> Option<i64> {
        (!self.is_empty()).then_some(self.offset)
    }

    pub fn max_element(&self) -> Option<i64> {
        let last = self.words.last()?;
        let top = (self.words.len() - 1) * 64 + 63 - last.leading_zeros() as usize;
        Some(self.offset + top as i64)
    }

    /// `max − min`, or 0 for the empty set.
    pub fn diameter(&self) -> u64 {
        match (self.min_element(), self.max_element()) {
            (Some(lo), Some(hi)) => (hi as i128 - lo as i128) as u64,
            _ => 0,
        }
    }

    fn span_bits(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            self.diameter() as usize + 1
        }
    }

    #[inline]
    fn bit(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    pub fn contains(&self, value: i64) -> bool {
        let rel = value as i128 - self.offset as i128;
        rel >= 0 && rel < self.span_bits() as i128 && self.bit(rel as usize)
    }

    /// Offsets (relative to the minimum) of the members, ascending.
    fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        let offset = self.offset;
        self.indices().map(move |i| offset + i as i64)
    }

    pub fn to_vec(&self) -> Vec<i64> {
        self.iter().collect()
    }

    /// Greatest common divisor of `a − min(A)` over the members; 0 for sets
    /// with fewer than two elements.
    pub fn gcd_of_differences(&self) -> u64 {
        let mut g = 0u64;
        for i in self.indices() {
            g = g.gcd(&(i as u64));
            if g == 1 {
                break;
            }
        }
        g
    }

    /// `A+A`.
    pub fn sumset(&self) -> Result<IntSet> {
        self.sumset_within(Universe::default())
    }

    pub fn sumset_within(&self, universe: Universe) -> Result<IntSet> {
        if self.is_empty() {
            return Ok(IntSet::empty());
        }
        let offset = self
            .offset
            .checked_mul(2)
            .ok_or(Error::Overflow("sumset minimum"))?;
        self.max_element()
            .unwrap()
            .checked_mul(2)
            .ok_or(Error::Overflow("sumset maximum"))?;
        let bits = universe.check(2 * self.diameter() as u128 + 1)?;
        let mut out = vec![0u64; words_for(bits)];
        if self.is_sparse() {
            let members: Vec<usize> = self.indices().collect();
            for (p, &i) in members.iter().enumerate() {
                for &j in &members[p..] {
                    set_bit(&mut out, i + j);
                }
            }
        } else {
            for i in self.indices() {
                or_shifted(&mut out, &self.words, i);
            }
        }
        Ok(IntSet::from_words(offset, out))
    }

    /// `A∔A`, the sums of two distinct members.
    ///
    /// Computed as `A+A` with every double `2a` removed that has no
    /// representation `b + c` with `b < a < c`.
    pub fn restricted_sumset(&self) -> Result<IntSet> {
        self.restricted_sumset_within(Universe::default())
    }

    pub fn restricted_sumset_within(&self, universe: Universe) -> Result<IntSet> {
        if self.len() <= 1 {
            return Ok(IntSet::empty());
        }
        let sums = self.sumset_within(universe)?;
        let mut out = sums.words;
        let members: Vec<usize> = self.indices().collect();
        let diam = self.diameter() as usize;
        for (pos, &i) in members.iter().enumerate() {
            let paired = members[..pos]
                .iter()
                .rev()
                .any(|&j| 2 * i - j <= diam && self.bit(2 * i - j));
            if !paired {
                let d = 2 * i;
                out[d / 64] &= !(1u64 << (d % 64));
            }
        }
        Ok(IntSet::from_words(sums.offset, out))
    }

    /// `A−A`.
    pub fn difference_set(&self) -> Result<IntSet> {
        self.difference_set_within(Universe::default())
    }

    pub fn difference_set_within(&self, universe: Universe) -> Result<IntSet> {
        if self.is_empty() {
            return Ok(IntSet::empty());
        }
        let diam = self.diameter();
        let bits = universe.check(2 * diam as u128 + 1)?;
        let mut out = vec![0u64; words_for(bits)];
        let diam = diam as usize;
        if self.is_sparse() {
            let members: Vec<usize> = self.indices().collect();
            for &i in &members {
                for &j in &members {
                    set_bit(&mut out, i + diam - j);
                }
            }
        } else {
            for j in self.indices() {
                or_shifted(&mut out, &self.words, diam - j);
            }
        }
        Ok(IntSet::from_words(-(diam as i64), out))
    }

    /// `shift + scale·A`, with overflow checking on every element.
    pub fn affine_map(&self, shift: i64, scale: i64) -> Result<IntSet> {
        self.affine_map_within(shift, scale, Universe::default())
    }

    pub fn affine_map_within(&self, shift: i64, scale: i64, universe: Universe) -> Result<IntSet> {
        if scale == 0 {
            return Err(Error::ZeroScale);
        }
        if self.is_empty() {
            return Ok(IntSet::empty());
        }
        universe.check(self.diameter() as u128 * scale.unsigned_abs() as u128 + 1)?;
        let mut values = self
            .iter()
            .map(|a| {
                a.checked_mul(scale)
                    .and_then(|v| v.checked_add(shift))
                    .ok_or(Error::Overflow("affine map"))
            })
            .collect::<Result<Vec<i64>>>()?;
        if scale < 0 {
            values.reverse();
        }
        IntSet::from_sorted_within(&values, universe)
    }

    pub fn translate(&self, shift: i64) -> Result<IntSet> {
        if self.is_empty() {
            return Ok(IntSet::empty());
        }
        let offset = self
            .offset
            .checked_add(shift)
            .ok_or(Error::Overflow("translation"))?;
        self.max_element()
            .unwrap()
            .checked_add(shift)
            .ok_or(Error::Overflow("translation"))?;
        Ok(IntSet {
            offset,
            words: self.words.clone(),
            len: self.len,
        })
    }

    /// `A ∪ {value}`.
    pub fn with_element(&self, value: i64) -> Result<IntSet> {
        if self.contains(value) {
            return Ok(self.clone());
        }
        let mut v = self.to_vec();
        let at = v.partition_point(|&x| x < value);
        v.insert(at, value);
        IntSet::from_sorted_within(&v, Universe::default())
    }

    /// `A \ {value}`.
    pub fn without_element(&self, value: i64) -> IntSet {
        if !self.contains(value) {
            return self.clone();
        }
        let mut words = self.words.clone();
        let i = (value - self.offset) as usize;
        words[i / 64] &= !(1u64 << (i % 64));
        IntSet::from_words(self.offset, words)
    }

    /// `A + B` for two (possibly different) sets.
    pub fn add_set(&self, other: &IntSet) -> Result<IntSet> {
        if self.is_empty() || other.is_empty() {
            return Ok(IntSet::empty());
        }
        let offset = self
            .offset
            .checked_add(other.offset)
            .ok_or(Error::Overflow("sum of sets"))?;
        self.max_element()
            .unwrap()
            .checked_add(other.max_element().unwrap())
            .ok_or(Error::Overflow("sum of sets"))?;
        let bits =
            Universe::default().check(self.diameter() as u128 + other.diameter() as u128 + 1)?;
        let mut out = vec![0u64; words_for(bits)];
        for j in other.indices() {
            or_shifted(&mut out, &self.words, j);
        }
        Ok(IntSet::from_words(offset, out))
    }

    /// Comma-separated ascending literal, e.g. `0,2,3`.
    pub fn to_literal(&self) -> String {
        let mut s = String::new();
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&v.to_string());
        }
        s
    }
}

impl fmt::Debug for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_literal())
    }
}

impl PartialOrd for IntSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on the ascending element sequences.
impl Ord for IntSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl Serialize for IntSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_literal())
    }
}

impl<'de> Deserialize<'de> for IntSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}
