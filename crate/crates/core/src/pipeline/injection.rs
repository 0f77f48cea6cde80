//! Rounding the fractional map `f` to an injection `g : F3 → 𝒮`.
//!
//! Members with a unit image keep it. The remaining members each spread two
//! half-units; their supports form `U₂`, disjoint from the unit images `U₁`,
//! and every index of `U₂` is hit at most twice, so `|U₂|` is at least the
//! number of such members and a canonical matching suffices.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::subset::SubsetWord;

use super::vector_map::CoefficientVector;

pub fn build_injection_g(
    f: &BTreeMap<SubsetWord, CoefficientVector>,
) -> Result<BTreeMap<SubsetWord, usize>> {
    let mut g = BTreeMap::new();
    let mut u1 = BTreeSet::new();
    let mut halves = Vec::new();
    let mut uses: BTreeMap<usize, u32> = BTreeMap::new();
    for (&member, vec) in f {
        if vec.is_unit() {
            let idx = vec.entries[0].0;
            if !u1.insert(idx) {
                return Err(Error::violation(
                    "g-injective",
                    format!("two unit images share index {idx}"),
                ));
            }
            g.insert(member, idx);
        } else {
            halves.push(member);
            for &(idx, _) in &vec.entries {
                *uses.entry(idx).or_insert(0) += 1;
            }
        }
    }
    if let Some(idx) = uses.keys().find(|i| u1.contains(i)) {
        return Err(Error::violation(
            "g-u1-u2-disjoint",
            format!("index {idx} is both a unit image and in a half-half support"),
        ));
    }
    if let Some((idx, count)) = uses.iter().find(|(_, &c)| c > 2) {
        return Err(Error::violation(
            "g-u2-multiplicity",
            format!("index {idx} lies in {count} half-half supports"),
        ));
    }
    let u2: Vec<usize> = uses.into_keys().collect();
    if u2.len() < halves.len() {
        return Err(Error::violation(
            "g-u2-size",
            format!("{} half-half members but only {} indices", halves.len(), u2.len()),
        ));
    }
    for (member, idx) in halves.into_iter().zip(u2) {
        g.insert(member, idx);
    }
    let distinct: BTreeSet<usize> = g.values().copied().collect();
    if distinct.len() != g.len() {
        return Err(Error::violation("g-injective", "g maps two members to one index"));
    }
    Ok(g)
}
