//! The pair collection: disjoint pairs `{F, F'}` of members with
//! `(d-1)`-sized certificates whose certificates together span `F ∩ F'`.

use crate::certificates::CertificateAssignment;
use crate::subset::SubsetWord;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PairCollection {
    /// `(F, F')` with `F < F'`, in the order they were chosen
    pub pairs: Vec<(SubsetWord, SubsetWord)>,
    /// every paired member, canonical order
    pub members: Vec<SubsetWord>,
}

impl PairCollection {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, f: SubsetWord) -> bool {
        self.members.binary_search(&f).is_ok()
    }
}

/// `c(F) ∪ c(F') = F ∩ F'`.
pub(crate) fn pairable(assign: &CertificateAssignment, f: SubsetWord, g: SubsetWord) -> bool {
    let (cf, cg) = (assign.assigned(f), assign.assigned(g));
    matches!((cf, cg), (Some(a), Some(b)) if a.union(b) == f.intersection(g))
}

/// Greedy over canonically ordered pairs of the `(d-1)`-stratum, repeated
/// until a full pass adds nothing, so the result is maximal.
pub fn build_pair_collection(assign: &CertificateAssignment) -> PairCollection {
    let d = assign.d();
    if d == 0 {
        return PairCollection::default();
    }
    let stratum = assign.stratum(d - 1);
    let mut used = vec![false; stratum.len()];
    let mut pairs = Vec::new();
    loop {
        let mut added = false;
        for a in 0..stratum.len() {
            if used[a] {
                continue;
            }
            for b in a + 1..stratum.len() {
                if !used[b] && pairable(assign, stratum[a], stratum[b]) {
                    used[a] = true;
                    used[b] = true;
                    pairs.push((stratum[a], stratum[b]));
                    added = true;
                    break;
                }
            }
        }
        if !added {
            break;
        }
    }
    let mut members: Vec<SubsetWord> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    members.sort_unstable();
    PairCollection { pairs, members }
}
