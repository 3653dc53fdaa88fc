//! Incremental 128-bit kernel for sets inside `{0, …, d}` with `d ≤ 63`.
//!
//! A node carries the member mask together with `A∔A`, the doubles `2a`, and
//! `A−A` (shifted by `d`), so adding one element costs a handful of word
//! operations instead of a full recomputation.

use crate::setcore::IntSet;

pub const MAX_KERNEL_DIAMETER: u32 = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Node {
    pub d: u32,
    /// Bit `a` for every member `a`.
    pub mask: u128,
    /// Bit `d − a` for every member `a`.
    pub rev: u128,
    /// Bit `a + b` for members `a ≠ b`.
    pub restricted: u128,
    /// Bit `2a` for every member.
    pub doubles: u128,
    /// Bit `a − b + d` for members `a`, `b`.
    pub diff: u128,
}

impl Node {
    /// `{0, d}`, or `{0}` when `d = 0`.
    pub fn endpoints(d: u32) -> Node {
        debug_assert!(d <= MAX_KERNEL_DIAMETER);
        if d == 0 {
            return Node {
                d,
                mask: 1,
                rev: 1,
                restricted: 0,
                doubles: 1,
                diff: 1,
            };
        }
        let ends = 1u128 | (1u128 << d);
        Node {
            d,
            mask: ends,
            rev: ends,
            restricted: 1u128 << d,
            doubles: 1u128 | (1u128 << (2 * d)),
            diff: 1u128 | (1u128 << d) | (1u128 << (2 * d)),
        }
    }

    /// Adds `e` with `0 < e < d`, not already present.
    #[inline(always)]
    pub fn add(&self, e: u32) -> Node {
        let d = self.d;
        Node {
            d,
            mask: self.mask | (1u128 << e),
            rev: self.rev | (1u128 << (d - e)),
            restricted: self.restricted | (self.mask << e),
            doubles: self.doubles | (1u128 << (2 * e)),
            diff: self.diff | (self.mask << (d - e)) | (self.rev << e),
        }
    }

    #[inline(always)]
    pub fn size(&self) -> u32 {
        self.mask.count_ones()
    }

    #[inline(always)]
    pub fn sumset_size(&self) -> u32 {
        (self.restricted | self.doubles).count_ones()
    }

    #[inline(always)]
    pub fn restricted_size(&self) -> u32 {
        self.restricted.count_ones()
    }

    #[inline(always)]
    pub fn difference_size(&self) -> u32 {
        self.diff.count_ones()
    }

    #[inline(always)]
    pub fn delta(&self) -> i64 {
        self.difference_size() as i64 - self.restricted_size() as i64
    }

    /// gcd 1 and lexicographically no larger than the reflection `d − A`.
    /// Together with `0, d ∈ A` this is exactly the canonical normal form.
    #[inline]
    pub fn is_canonical(&self) -> bool {
        if !lex_le(self.mask, self.rev) {
            return false;
        }
        if self.d <= 1 {
            return true;
        }
        let mut g = self.d;
        let mut rest = self.mask & !1;
        while rest != 0 {
            let a = rest.trailing_zeros();
            g = gcd_u32(g, a);
            if g == 1 {
                return true;
            }
            rest &= rest - 1;
        }
        false
    }

    pub fn to_intset(&self) -> IntSet {
        mask_to_intset(self.mask)
    }
}

/// Lexicographic comparison of two equal-size member masks read as ascending
/// sequences: the first differing element decides, which is the lowest bit
/// where the masks differ.
#[inline(always)]
pub fn lex_le(a: u128, b: u128) -> bool {
    let x = a ^ b;
    x == 0 || (a >> x.trailing_zeros()) & 1 == 1
}

#[inline(always)]
pub fn lex_lt(a: u128, b: u128) -> bool {
    a != b && lex_le(a, b)
}

fn gcd_u32(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn mask_to_intset(mask: u128) -> IntSet {
    let mut v = Vec::with_capacity(mask.count_ones() as usize);
    let mut rest = mask;
    while rest != 0 {
        v.push(rest.trailing_zeros() as i64);
        rest &= rest - 1;
    }
    IntSet::from_values(v).expect("mask sets are within every universe")
}
