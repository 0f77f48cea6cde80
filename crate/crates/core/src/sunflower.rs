//! Erdős–Rado sunflower extraction.
//!
//! A k-uniform family with at least `k!(p-1)^k` members contains `p` sets whose
//! pairwise intersections all equal one common core, provided `k >= 2`. For
//! `k = 1` equality is not enough (`p-1` singletons), and one more member is
//! needed; for `k >= 2` the greedy disjoint subfamily is counted `k` times,
//! which pushes the popular element strictly past the next threshold. The extractor follows the
//! classical proof: a large pairwise-disjoint subfamily is already a sunflower
//! with empty core; otherwise some element lies in many members and the search
//! recurses into its link.

use crate::error::{Error, Result};
use crate::family::UniformFamily;
use crate::subset::SubsetWord;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sunflower {
    pub core: SubsetWord,
    /// Full members, core included, canonical order.
    pub petals: Vec<SubsetWord>,
}

/// `k!(p-1)^k`, saturating.
pub fn erdos_rado_threshold(k: u32, p: u32) -> u128 {
    let fact = (1..=k as u128).fold(1u128, |a, i| a.saturating_mul(i));
    fact.saturating_mul((p.saturating_sub(1) as u128).saturating_pow(k))
}

/// A sunflower with at least `p` petals, if the extractor finds one. Always
/// succeeds when `|fam| >= k!(p-1)^k` and `k >= 2`, or `|fam| > k!(p-1)^k`.
pub fn find_sunflower(fam: &UniformFamily, p: i64) -> Result<Option<Sunflower>> {
    if p <= 0 {
        return Err(Error::usage(format!("sunflower size must be positive, got {p}")));
    }
    let words: Vec<u64> = fam.iter().map(|m| m.bits()).collect();
    let n = fam.n();
    Ok(extract(&words, p as usize).map(|(core, mut petals)| {
        petals.sort_unstable();
        Sunflower {
            core: SubsetWord::new(n, core).expect("core within ground set"),
            petals: petals
                .into_iter()
                .map(|b| SubsetWord::new(n, b).expect("petal within ground set"))
                .collect(),
        }
    }))
}

/// `sets` are distinct and in canonical order. Returns `(core, petals)`.
fn extract(sets: &[u64], p: usize) -> Option<(u64, Vec<u64>)> {
    let mut disjoint = Vec::new();
    let mut union = 0u64;
    for &s in sets {
        if s & union == 0 && !(s == 0 && disjoint.contains(&0)) {
            disjoint.push(s);
            union |= s;
        }
    }
    if disjoint.len() >= p {
        return Some((0, disjoint));
    }

    // Most popular element of the disjoint union, counted over all of `sets`.
    let mut best: Option<(usize, u32)> = None;
    let mut rest = union;
    while rest != 0 {
        let e = rest.trailing_zeros();
        rest &= rest - 1;
        let count = sets.iter().filter(|&&s| s & (1 << e) != 0).count();
        if best.is_none_or(|(c, _)| count > c) {
            best = Some((count, e));
        }
    }
    let (_, x) = best?;
    let bit = 1u64 << x;
    let mut link: Vec<u64> = sets
        .iter()
        .filter(|&&s| s & bit != 0)
        .map(|&s| s & !bit)
        .collect();
    link.sort_unstable();
    let (core, petals) = extract(&link, p)?;
    Some((core | bit, petals.into_iter().map(|s| s | bit).collect()))
}

/// Petals distinct, each containing the core, and pairwise meeting exactly in it.
pub fn validate_sunflower(s: &Sunflower) -> bool {
    let petals = &s.petals;
    petals.iter().all(|&f| s.core.is_subset_of(f))
        && petals.iter().enumerate().all(|(i, &a)| {
            petals[i + 1..]
                .iter()
                .all(|&b| a != b && a.intersection(b) == s.core)
        })
}
