//! From a certificate assignment to the three-part split `F1 ∪ F2 ∪ F3` and
//! the class labels on `F3`.

use std::collections::BTreeMap;
use std::fmt;

use crate::certificates::{CertificateAssignment, RealizedTraces};
use crate::error::{Error, Result};
use crate::family::UniformFamily;
use crate::shatter::complement_shadow;
use crate::subset::{deposit, RawCombinations, SubsetWord};

use super::pairs::PairCollection;

/// Labels for members of `F3`; anchors `{i, j}`, `V = [n] \ {i, j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MemberClass {
    /// meets `{i, j}`, certificate avoids it
    H0Star,
    /// meets `{i, j}` once, certificate too
    H11,
    /// contains both anchors, certificate contains one
    H12,
    /// inside `V`, certificate of size `d`
    Kd,
    /// inside `V`, certificate of size `d-1`
    Kd1,
}

impl MemberClass {
    pub fn label(self) -> &'static str {
        match self {
            MemberClass::H0Star => "H0STAR",
            MemberClass::H11 => "H11",
            MemberClass::H12 => "H12",
            MemberClass::Kd => "KD",
            MemberClass::Kd1 => "KD1",
        }
    }
}

impl fmt::Display for MemberClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub anchors: (u8, u8),
    pub v: SubsetWord,
    pub pairs: PairCollection,
    /// `𝒢 = (ℱ_d ∪ ℱ_{d-1}) \ 𝒫` with its reassigned maximum certificates
    pub good: CertificateAssignment,
    pub f1: Vec<SubsetWord>,
    pub f2: Vec<SubsetWord>,
    pub f3: Vec<SubsetWord>,
    pub classes: BTreeMap<SubsetWord, MemberClass>,
}

impl Partition {
    pub fn anchor_set(&self) -> SubsetWord {
        SubsetWord::empty(self.v.n()).with(self.anchors.0).with(self.anchors.1)
    }

    pub fn class_members(&self, class: MemberClass) -> impl Iterator<Item = SubsetWord> + '_ {
        self.classes
            .iter()
            .filter(move |(_, &c)| c == class)
            .map(|(&f, _)| f)
    }

    /// `c_𝒢(F)`; `F` must lie in `𝒢 = F2 ∪ F3`.
    pub fn cert(&self, f: SubsetWord) -> SubsetWord {
        self.good.assigned(f).expect("member of the good subfamily")
    }
}

/// Canonically least unrealized `size`-subset of `f` with respect to `traces`.
fn least_unrealized(f: SubsetWord, traces: &RealizedTraces, size: usize) -> Option<SubsetWord> {
    RawCombinations::new(f.len() as u32, size as u32)
        .map(|local| SubsetWord::new(f.n(), deposit(local, f.bits())).expect("subset of member"))
        .find(|&t| !traces.is_realized(t))
}

/// Builds `𝒢` and reassigns certificates: a member keeps `c_ℱ(F)` when its
/// largest `𝒢`-certificate still has `d-1` elements, and otherwise takes the
/// canonically least `𝒢`-certificate of size `d`.
pub fn build_good_subfamily(
    assign: &CertificateAssignment,
    pairs: &PairCollection,
) -> Result<CertificateAssignment> {
    let d = assign.d();
    let fam = assign.family();
    let good = fam.filter(|f| {
        let c = assign.assigned(f).expect("member");
        (c.len() == d || c.len() + 1 == d) && !pairs.contains(f)
    });
    let mut choices = Vec::with_capacity(good.len());
    for &f in &good {
        let traces = RealizedTraces::collect(f, &good)?;
        let max = traces.max_certificate_size().ok_or(Error::MemberShattered(f))?;
        let c = if max == d {
            least_unrealized(f, &traces, d).expect("size-d certificate exists")
        } else if max + 1 == d {
            assign.assigned(f).expect("member")
        } else {
            return Err(Error::violation(
                "good-subfamily",
                format!("{f} has a largest certificate of size {max} in the subfamily, below d-1"),
            ));
        };
        choices.push(c);
    }
    CertificateAssignment::with_choices(good, d, choices)
}

/// Anchor score for a pair: co-shadow load, then `(d-1)`-stratum load.
pub(crate) fn anchor_scores(good: &CertificateAssignment) -> Result<(Vec<u64>, Vec<u64>)> {
    let fam = good.family();
    let n = fam.n() as usize;
    let mut co = vec![0u64; n + 1];
    for s in complement_shadow(fam)?.members() {
        for e in s.elements() {
            co[e as usize] += 1;
        }
    }
    let mut low = vec![0u64; n + 1];
    let d = good.d();
    for (f, c) in good.pairs() {
        if c.len() + 1 == d {
            for e in f.elements() {
                low[e as usize] += 1;
            }
        }
    }
    Ok((co, low))
}

/// The pair `{i, j}` minimizing `(|∂̄𝒢(i)| + |∂̄𝒢(j)|, |𝒢_{d-1}(i)| + |𝒢_{d-1}(j)|)`,
/// ties to the canonically least pair.
pub fn select_anchor_pair(good: &CertificateAssignment) -> Result<(u8, u8)> {
    let n = good.family().n();
    if n < 2 {
        return Err(Error::usage("anchor pair needs n >= 2"));
    }
    let (co, low) = anchor_scores(good)?;
    let mut best: Option<((u64, u64), (u8, u8))> = None;
    for pair in RawCombinations::new(n as u32, 2) {
        let bits = deposit(pair, crate::subset::ground_mask(n));
        let i = bits.trailing_zeros() as u8;
        let j = 63 - bits.leading_zeros() as u8;
        let score = (
            co[i as usize] + co[j as usize],
            low[i as usize] + low[j as usize],
        );
        if best.is_none_or(|(b, _)| score < b) {
            best = Some((score, (i, j)));
        }
    }
    Ok(best.expect("n >= 2 gives a pair").1)
}

/// Splits the family around the anchors and labels `F3`.
pub fn partition_family(
    assign: &CertificateAssignment,
    pairs: PairCollection,
    good: CertificateAssignment,
    anchors: (u8, u8),
) -> Result<Partition> {
    let fam: &UniformFamily = assign.family();
    let d = assign.d();
    let n = fam.n();
    let (i, j) = anchors;
    let ij = SubsetWord::empty(n).with(i).with(j);
    let v = SubsetWord::full(n).difference(ij);

    let (mut f1, mut f2, mut f3) = (Vec::new(), Vec::new(), Vec::new());
    for &f in fam {
        let Some(c) = good.assigned(f) else {
            f1.push(f);
            continue;
        };
        let both = ij.is_subset_of(f) && c.difference(ij).len() + 2 <= d;
        let low_at_anchor = c.len() + 1 == d && !f.intersection(ij).is_empty();
        if both || low_at_anchor {
            f2.push(f);
        } else {
            f3.push(f);
        }
    }

    let mut classes = BTreeMap::new();
    for &f in &f3 {
        let c = good.assigned(f).expect("F3 lies in the good subfamily");
        let class = if f.is_subset_of(v) {
            if c.len() == d {
                MemberClass::Kd
            } else {
                MemberClass::Kd1
            }
        } else {
            if c.len() != d {
                return Err(Error::violation(
                    "h-class",
                    format!("{f} meets the anchors but c = {c} has size {}", c.len()),
                ));
            }
            match (c.intersection(ij).len(), f.intersection(ij).len()) {
                (0, _) => MemberClass::H0Star,
                (1, 1) => MemberClass::H11,
                (1, 2) => MemberClass::H12,
                (ci, fi) => {
                    return Err(Error::violation(
                        "h-class",
                        format!("{f} has |c ∩ {{i,j}}| = {ci}, |F ∩ {{i,j}}| = {fi}"),
                    ))
                }
            }
        };
        classes.insert(f, class);
    }

    Ok(Partition {
        anchors,
        v,
        pairs,
        good,
        f1,
        f2,
        f3,
        classes,
    })
}
