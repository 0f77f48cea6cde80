//! Incremental trace bookkeeping shared by the generator and the search.
//!
//! For each current member `F` we keep the set of realized traces `F' ∩ F`
//! (compressed to local indices of `F`) and how many *required* positions are
//! still unrealized. A member stays alive while that count is positive. Adding
//! a set only ever realizes more traces, so the property is hereditary.

use crate::subset::{extract, RawCombinations};

/// Which proper subsets count as certificates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum CertificateRule {
    /// any proper subset: alive iff not shattered, i.e. VC-dimension stays below k
    Any,
    /// only subsets of exactly this size
    Order(usize),
}

pub(crate) struct TraceState {
    words: usize,
    required: Vec<u64>,
    members: Vec<u64>,
    occupancy: Vec<u64>,
    missing: Vec<u32>,
    /// (member index, local trace) bits set by each push
    undo: Vec<(u32, u32)>,
    frames: Vec<usize>,
}

/// Largest uniformity the bookkeeping accepts (`2^k` bits per member).
pub(crate) const MAX_TRACE_K: usize = 16;

impl TraceState {
    pub(crate) fn new(k: usize, rule: CertificateRule) -> Self {
        assert!((1..=MAX_TRACE_K).contains(&k), "uniformity {k} outside 1..={MAX_TRACE_K}");
        let words = (1usize << k).div_ceil(64);
        let mut required = vec![0u64; words];
        let full = (1u64 << k) - 1;
        let mut mark = |local: u64| required[(local / 64) as usize] |= 1 << (local % 64);
        match rule {
            CertificateRule::Any => (0..full).for_each(&mut mark),
            CertificateRule::Order(s) => {
                assert!(s < k, "certificate order {s} must be below {k}");
                RawCombinations::new(k as u32, s as u32).for_each(&mut mark);
            }
        }
        TraceState {
            words,
            required,
            members: Vec::new(),
            occupancy: Vec::new(),
            missing: Vec::new(),
            undo: Vec::new(),
            frames: Vec::new(),
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.members.len()
    }

    pub(crate) fn members(&self) -> &[u64] {
        &self.members
    }

    #[inline]
    fn is_required(&self, t: u64) -> bool {
        self.required[(t / 64) as usize] & (1 << (t % 64)) != 0
    }

    #[inline]
    fn occupied(&self, member: usize, t: u64) -> bool {
        self.occupancy[member * self.words + (t / 64) as usize] & (1 << (t % 64)) != 0
    }

    /// Required positions `g` would leave unrealized on itself, with its occupancy.
    fn own_missing(&self, g: u64) -> (u32, Vec<u64>) {
        let mut occ = vec![0u64; self.words];
        for t in self.members.iter().map(|&m| extract(m & g, g)).chain([extract(g, g)]) {
            occ[(t / 64) as usize] |= 1 << (t % 64);
        }
        (self.count_missing(&occ), occ)
    }

    fn count_missing(&self, occ: &[u64]) -> u32 {
        occ.iter()
            .zip(&self.required)
            .map(|(o, r)| (r & !o).count_ones())
            .sum()
    }

    fn own_alive(&self, g: u64) -> bool {
        if self.words == 1 {
            let mut occ = 1u64 << extract(g, g);
            for &m in &self.members {
                occ |= 1 << extract(m & g, g);
            }
            self.required[0] & !occ != 0
        } else {
            self.own_missing(g).0 > 0
        }
    }

    /// Whether every member, `g` included, keeps a required unrealized trace.
    pub(crate) fn can_add(&self, g: u64) -> bool {
        for (i, &m) in self.members.iter().enumerate() {
            if self.missing[i] == 1 {
                let t = extract(g & m, m);
                if self.is_required(t) && !self.occupied(i, t) {
                    return false;
                }
            }
        }
        self.own_alive(g)
    }

    /// Adds `g` unconditionally; the caller has checked [`Self::can_add`].
    pub(crate) fn push(&mut self, g: u64) {
        self.frames.push(self.undo.len());
        for i in 0..self.members.len() {
            let m = self.members[i];
            let t = extract(g & m, m);
            if !self.occupied(i, t) {
                self.occupancy[i * self.words + (t / 64) as usize] |= 1 << (t % 64);
                if self.is_required(t) {
                    self.missing[i] -= 1;
                }
                self.undo.push((i as u32, t as u32));
            }
        }
        let (missing, occ) = self.own_missing(g);
        self.members.push(g);
        self.occupancy.extend_from_slice(&occ);
        self.missing.push(missing);
    }

    pub(crate) fn pop(&mut self) {
        let start = self.frames.pop().expect("pop without push");
        self.members.pop();
        self.missing.pop();
        let len = self.occupancy.len() - self.words;
        self.occupancy.truncate(len);
        for (i, t) in self.undo.drain(start..) {
            let (i, t) = (i as usize, t as u64);
            self.occupancy[i * self.words + (t / 64) as usize] &= !(1 << (t % 64));
            if self.required[(t / 64) as usize] & (1 << (t % 64)) != 0 {
                self.missing[i] += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::UniformFamily;
    use crate::shatter::vc_dimension;
    use crate::subset::{k_subsets, SubsetWord};

    fn vc_ok(n: u8, k: u8, words: &[u64]) -> bool {
        let fam = UniformFamily::from_raw_words(n, k, words.iter().copied());
        vc_dimension(&fam) < k as i32
    }

    #[test]
    fn agrees_with_oracle_on_all_pairs_of_5() {
        let cands: Vec<u64> = k_subsets(5, 2).map(SubsetWord::bits).collect();
        let mut st = TraceState::new(2, CertificateRule::Any);
        let mut chosen = Vec::new();
        for &g in &cands {
            let mut with = chosen.clone();
            with.push(g);
            assert_eq!(st.can_add(g), vc_ok(5, 2, &with));
            if st.can_add(g) {
                st.push(g);
                chosen.push(g);
            }
        }
        assert!(!chosen.is_empty());
    }

    #[test]
    fn pop_restores_state() {
        let cands: Vec<u64> = k_subsets(6, 3).map(SubsetWord::bits).collect();
        let mut st = TraceState::new(3, CertificateRule::Any);
        st.push(cands[0]);
        let before: Vec<bool> = cands.iter().map(|&g| st.can_add(g)).collect();
        st.push(cands[5]);
        st.push(cands[9]);
        st.pop();
        st.pop();
        let after: Vec<bool> = cands.iter().map(|&g| st.can_add(g)).collect();
        assert_eq!(before, after);
        assert_eq!(st.len(), 1);
    }

    #[test]
    fn order_rule_needs_exact_size() {
        // Order 0 means trace ∅ stays unrealized: every other member meets it.
        let a = SubsetWord::from_elements(6, &[1, 2, 3]).unwrap().bits();
        let b = SubsetWord::from_elements(6, &[4, 5, 6]).unwrap().bits();
        let c = SubsetWord::from_elements(6, &[1, 4, 5]).unwrap().bits();
        let mut st = TraceState::new(3, CertificateRule::Order(0));
        st.push(a);
        assert!(!st.can_add(b));
        assert!(st.can_add(c));
    }
}
