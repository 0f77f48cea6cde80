//! Benchmark families: stars, complete families, and seeded random maximal
//! families of VC-dimension at most `d`.

use crate::error::{Error, Result};
use crate::family::UniformFamily;
use crate::subset::{k_subsets, SubsetWord};
use crate::trace_state::{CertificateRule, TraceState, MAX_TRACE_K};

/// All (d+1)-subsets of `[n]` containing element 1.
pub fn star_family(n: u8, d: u8) -> Result<UniformFamily> {
    if d < 1 || n < d + 1 || n > crate::subset::MAX_GROUND {
        return Err(Error::usage(format!("star needs n >= d+1 >= 2, got n={n}, d={d}")));
    }
    let members = k_subsets(n, d as usize + 1).filter(|s| s.contains(1)).collect();
    Ok(UniformFamily::from_sorted_unchecked(n, d + 1, members))
}

/// All of `C([n], k)`.
pub fn complete_family(n: u8, k: u8) -> Result<UniformFamily> {
    UniformFamily::empty(n, k)?;
    Ok(UniformFamily::from_sorted_unchecked(n, k, k_subsets(n, k as usize).collect()))
}

/// SplitMix64: a 64-bit state advanced by the golden-ratio increment, output
/// through two xor-shift-multiply rounds (constants from Steele, Lea & Flood).
///
/// Written out here rather than taken from a crate so that fuzz corpora keep
/// their exact contents regardless of dependency versions.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `0..bound` by rejection (no modulo bias). `bound > 0`.
    pub fn below(&mut self, bound: u64) -> u64 {
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }

    /// Fisher–Yates, from the back.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FuzzSeed {
    pub seed: u64,
    pub n: u8,
    pub d: u8,
}

/// Greedy maximal (d+1)-uniform family of VC-dimension at most `d`: every
/// (d+1)-subset of `[n]` is offered once, in seeded random order, and kept iff
/// every member still has a certificate afterwards.
pub fn random_maximal_vc_family(seed: FuzzSeed) -> Result<UniformFamily> {
    let FuzzSeed { seed, n, d } = seed;
    let k = d as usize + 1;
    if n == 0 || n > crate::subset::MAX_GROUND || k > n as usize || k > MAX_TRACE_K {
        return Err(Error::usage(format!(
            "random family needs 1 <= d+1 <= min(n, {MAX_TRACE_K}), got n={n}, d={d}"
        )));
    }
    let mut order: Vec<u64> = k_subsets(n, k).map(SubsetWord::bits).collect();
    SplitMix64::new(seed).shuffle(&mut order);
    let mut state = TraceState::new(k, CertificateRule::Any);
    for g in order {
        if state.can_add(g) {
            state.push(g);
        }
    }
    Ok(UniformFamily::from_raw_words(n, k as u8, state.members().iter().copied()))
}
