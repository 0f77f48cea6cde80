//! Subsets of a small ground set `[n] = {1, .., n}` packed into one machine word.
//!
//! Element `e` lives at bit `e`, so bit 0 is always clear and `n <= 63`.
//! Comparing two words as integers is colex order on the sets they encode;
//! every "canonical" or "least" choice in this crate refers to that order.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_GROUND: u8 = 63;

/// Bits `1..=n`.
#[inline]
pub fn ground_mask(n: u8) -> u64 {
    debug_assert!(n <= MAX_GROUND);
    (((1u128 << (n as u32 + 1)) - 1) as u64) & !1
}

/// Compresses the bits of `x` selected by `mask` into the low bits (software `pext`).
#[inline]
pub fn extract(x: u64, mask: u64) -> u64 {
    let mut out = 0u64;
    let mut m = mask;
    let mut pos = 0;
    while m != 0 {
        let low = m & m.wrapping_neg();
        if x & low != 0 {
            out |= 1 << pos;
        }
        pos += 1;
        m ^= low;
    }
    out
}

/// Inverse of [`extract`]: spreads the low bits of `local` onto the set bits of `mask`.
#[inline]
pub fn deposit(local: u64, mask: u64) -> u64 {
    let mut out = 0u64;
    let mut m = mask;
    let mut pos = 0;
    while m != 0 {
        let low = m & m.wrapping_neg();
        if local & (1 << pos) != 0 {
            out |= low;
        }
        pos += 1;
        m ^= low;
    }
    out
}

/// `C(n, k)`, saturating at `u64::MAX`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Like [`binomial`] but with signed arguments, `C(n, k) = 0` for `k < 0` or `n < k`.
pub fn binomial_signed(n: i64, k: i64) -> u64 {
    if k < 0 || n < 0 || k > n {
        0
    } else {
        binomial(n as u64, k as u64)
    }
}

/// All `k`-subsets of the bits in `0..width` as raw words, in increasing
/// integer order (Gosper's hack). Yields the empty word once when `k = 0`.
#[derive(Debug, Clone)]
pub struct RawCombinations {
    next: Option<u128>,
    limit: u128,
}

impl RawCombinations {
    pub fn new(width: u32, k: u32) -> Self {
        let limit = 1u128 << width;
        let next = if k > width { None } else { Some((1u128 << k) - 1) };
        RawCombinations { next, limit }
    }
}

impl Iterator for RawCombinations {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        if cur >= self.limit {
            self.next = None;
            return None;
        }
        self.next = if cur == 0 {
            None
        } else {
            let low = cur & cur.wrapping_neg();
            let ripple = cur + low;
            Some((((ripple ^ cur) >> 2) / low) | ripple)
        };
        Some(cur as u64)
    }
}

/// A subset of `[n]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetWord {
    bits: u64,
    n: u8,
}

impl SubsetWord {
    pub fn new(n: u8, bits: u64) -> Result<Self> {
        if n == 0 || n > MAX_GROUND {
            return Err(Error::usage(format!("ground set size {n} outside 1..=63")));
        }
        if bits & !ground_mask(n) != 0 {
            return Err(Error::usage(format!(
                "word {bits:#x} has bits outside the ground set [{n}]"
            )));
        }
        Ok(SubsetWord { bits, n })
    }

    /// Caller guarantees `bits` lies inside `ground_mask(n)`.
    #[inline]
    pub(crate) fn from_raw(n: u8, bits: u64) -> Self {
        debug_assert!(bits & !ground_mask(n) == 0);
        SubsetWord { bits, n }
    }

    pub fn empty(n: u8) -> Self {
        SubsetWord { bits: 0, n }
    }

    pub fn full(n: u8) -> Self {
        SubsetWord {
            bits: ground_mask(n),
            n,
        }
    }

    pub fn from_elements(n: u8, elements: &[u8]) -> Result<Self> {
        let mut bits = 0u64;
        for &e in elements {
            if e == 0 || e > n {
                return Err(Error::usage(format!("element {e} outside [1..{n}]")));
            }
            bits |= 1 << e;
        }
        SubsetWord::new(n, bits)
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn n(self) -> u8 {
        self.n
    }

    #[inline]
    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn contains(self, e: u8) -> bool {
        e >= 1 && e <= self.n && self.bits & (1 << e) != 0
    }

    #[inline]
    pub fn is_subset_of(self, other: SubsetWord) -> bool {
        self.bits & !other.bits == 0
    }

    #[inline]
    pub fn intersection(self, other: SubsetWord) -> SubsetWord {
        debug_assert_eq!(self.n, other.n);
        SubsetWord::from_raw(self.n, self.bits & other.bits)
    }

    #[inline]
    pub fn union(self, other: SubsetWord) -> SubsetWord {
        debug_assert_eq!(self.n, other.n);
        SubsetWord::from_raw(self.n, self.bits | other.bits)
    }

    #[inline]
    pub fn difference(self, other: SubsetWord) -> SubsetWord {
        debug_assert_eq!(self.n, other.n);
        SubsetWord::from_raw(self.n, self.bits & !other.bits)
    }

    /// `self ∪ {e}`.
    #[inline]
    pub fn with(self, e: u8) -> SubsetWord {
        debug_assert!(e >= 1 && e <= self.n);
        SubsetWord::from_raw(self.n, self.bits | (1 << e))
    }

    /// `self \ {e}`.
    #[inline]
    pub fn without(self, e: u8) -> SubsetWord {
        SubsetWord::from_raw(self.n, self.bits & !(1u64 << e))
    }

    pub fn elements(self) -> Elements {
        Elements { bits: self.bits }
    }

    pub fn to_vec(self) -> Vec<u8> {
        self.elements().collect()
    }

    /// Least element, if any.
    pub fn min_element(self) -> Option<u8> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as u8)
    }

    /// All subsets of `self` with exactly `k` elements, canonical order.
    pub fn subsets_of_size(self, k: usize) -> impl Iterator<Item = SubsetWord> {
        let (n, mask) = (self.n, self.bits);
        RawCombinations::new(self.len() as u32, k as u32)
            .map(move |local| SubsetWord::from_raw(n, deposit(local, mask)))
    }

    /// Space separated elements, the member-line syntax of `.fam` files.
    pub fn to_line(self) -> String {
        let parts: Vec<String> = self.elements().map(|e| e.to_string()).collect();
        parts.join(" ")
    }
}

/// All `k`-subsets of `[n]` in canonical order.
pub fn k_subsets(n: u8, k: usize) -> impl Iterator<Item = SubsetWord> {
    SubsetWord::full(n).subsets_of_size(k)
}

pub struct Elements {
    bits: u64,
}

impl Iterator for Elements {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        if self.bits == 0 {
            return None;
        }
        let e = self.bits.trailing_zeros() as u8;
        self.bits &= self.bits - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.bits.count_ones() as usize;
        (c, Some(c))
    }
}

impl fmt::Display for SubsetWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for SubsetWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
