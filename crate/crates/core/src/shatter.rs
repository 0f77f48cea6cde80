//! Traces, shattering, VC-dimension and shadows.

use crate::error::{Error, Result};
use crate::family::UniformFamily;
use crate::subset::{binomial, extract, k_subsets, SubsetWord};

/// Largest `|S|` accepted by [`is_shattered`]; the trace table has `2^|S|` bits.
pub const MAX_SHATTER_SIZE: usize = 25;

/// `F ∩ S`.
pub fn trace(member: SubsetWord, s: SubsetWord) -> Result<SubsetWord> {
    if member.n() != s.n() {
        return Err(Error::usage(format!(
            "trace of a set over [{}] on a set over [{}]",
            member.n(),
            s.n()
        )));
    }
    Ok(member.intersection(s))
}

/// Whether every subset of `s` occurs as `F ∩ s` for some member `F`.
pub fn is_shattered(s: SubsetWord, fam: &UniformFamily) -> Result<bool> {
    if s.n() != fam.n() {
        return Err(Error::usage(format!(
            "set over [{}] tested against a family over [{}]",
            s.n(),
            fam.n()
        )));
    }
    if s.len() > MAX_SHATTER_SIZE {
        return Err(Error::usage(format!(
            "shattering test limited to |S| <= {MAX_SHATTER_SIZE}, got {}",
            s.len()
        )));
    }
    Ok(shattered_unchecked(s, fam))
}

fn shattered_unchecked(s: SubsetWord, fam: &UniformFamily) -> bool {
    let size = s.len();
    let needed = 1usize << size;
    if fam.len() < needed {
        return false;
    }
    let mut seen = vec![0u64; needed.div_ceil(64)];
    let mut distinct = 0usize;
    for f in fam {
        let t = extract(f.bits() & s.bits(), s.bits()) as usize;
        let (w, b) = (t / 64, t % 64);
        if seen[w] & (1 << b) == 0 {
            seen[w] |= 1 << b;
            distinct += 1;
            if distinct == needed {
                return true;
            }
        }
    }
    false
}

/// Canonically least shattered `s`-set, if any.
pub fn shattered_witness(fam: &UniformFamily, s: usize) -> Option<SubsetWord> {
    if s > fam.n() as usize || s > MAX_SHATTER_SIZE || fam.len() < (1usize << s) {
        return None;
    }
    // A shattered set of size k needs itself as a trace, so it must be a member.
    if s == fam.k() as usize {
        return fam.iter().copied().find(|&m| shattered_unchecked(m, fam));
    }
    if s > fam.k() as usize {
        return None;
    }
    k_subsets(fam.n(), s).find(|&cand| shattered_unchecked(cand, fam))
}

/// Largest size of a shattered set; `-1` for the empty family, which shatters nothing.
///
/// Shattering is closed under taking subsets, so sizes are scanned upwards
/// and the scan stops at the first size without a shattered set.
pub fn vc_dimension(fam: &UniformFamily) -> i32 {
    let mut best = -1i32;
    for s in 0..=fam.k() as usize {
        if shattered_witness(fam, s).is_some() {
            best = s as i32;
        } else {
            break;
        }
    }
    best
}

/// Either the shadow `∂ℱ` or its complement within `C([n], k-1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShadowSet {
    n: u8,
    k: u8,
    members: Vec<SubsetWord>,
    complement: bool,
}

impl ShadowSet {
    /// Uniformity of the family this shadow came from; members have `k - 1` elements.
    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn members(&self) -> &[SubsetWord] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_complement(&self) -> bool {
        self.complement
    }

    pub fn contains(&self, s: SubsetWord) -> bool {
        self.members.binary_search(&s).is_ok()
    }
}

pub fn shadow(fam: &UniformFamily) -> Result<ShadowSet> {
    if fam.k() == 0 {
        return Err(Error::usage("shadow of a 0-uniform family"));
    }
    let mut members: Vec<SubsetWord> = fam
        .iter()
        .flat_map(|&f| f.elements().map(move |e| f.without(e)))
        .collect();
    members.sort_unstable();
    members.dedup();
    Ok(ShadowSet {
        n: fam.n(),
        k: fam.k(),
        members,
        complement: false,
    })
}

/// `C([n], k-1) \ ∂ℱ`.
pub fn complement_shadow(fam: &UniformFamily) -> Result<ShadowSet> {
    let sh = shadow(fam)?;
    let members = k_subsets(fam.n(), fam.k() as usize - 1)
        .filter(|s| !sh.contains(*s))
        .collect();
    Ok(ShadowSet {
        n: fam.n(),
        k: fam.k(),
        members,
        complement: true,
    })
}

/// `Σ_{i<=d} C(n, i)`.
pub fn sauer_shelah_bound(n: u64, d: u64) -> u64 {
    (0..=d).fold(0u64, |acc, i| acc.saturating_add(binomial(n, i)))
}

/// `C(n, d)`, the ceiling for (d+1)-uniform families of VC-dimension at most `d`.
pub fn frankl_pach_bound(n: u64, d: u64) -> u64 {
    binomial(n, d)
}

/// Checks both size ceilings for a family known to have VC-dimension at most `d`.
pub fn check_size_bounds(fam: &UniformFamily, d: usize) -> Result<()> {
    let (n, size) = (fam.n() as u64, fam.len() as u64);
    let ss = sauer_shelah_bound(n, d as u64);
    if size > ss {
        return Err(Error::violation(
            "sauer-shelah",
            format!("|F| = {size} > sum_(i<={d}) C({n},i) = {ss}"),
        ));
    }
    if fam.k() as usize == d + 1 {
        let fp = frankl_pach_bound(n, d as u64);
        if size > fp {
            return Err(Error::violation(
                "frankl-pach",
                format!("|F| = {size} > C({n},{d}) = {fp}"),
            ));
        }
    }
    Ok(())
}
