//! k-uniform families and the `.fam` text format.
//!
//! ```text
//! # comments and blank lines are ignored
//! 4 3
//! 1 2 3
//! 1 2 4
//! ```
//!
//! The header gives `n k`; every further line is one member, `k` strictly
//! increasing elements of `[1..n]` separated by single spaces.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::subset::{SubsetWord, MAX_GROUND};

/// A k-uniform family over `[n]`, members strictly increasing in canonical order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniformFamily {
    n: u8,
    k: u8,
    members: Vec<SubsetWord>,
}

impl UniformFamily {
    pub fn empty(n: u8, k: u8) -> Result<Self> {
        check_params(n, k)?;
        Ok(UniformFamily {
            n,
            k,
            members: Vec::new(),
        })
    }

    /// Sorts `members` canonically. Duplicates, wrong cardinalities and words
    /// over a different ground set are rejected.
    pub fn new(n: u8, k: u8, members: impl IntoIterator<Item = SubsetWord>) -> Result<Self> {
        check_params(n, k)?;
        let mut members: Vec<SubsetWord> = members.into_iter().collect();
        for m in &members {
            if m.n() != n {
                return Err(Error::usage(format!(
                    "member {m} is over [{}], family is over [{n}]",
                    m.n()
                )));
            }
            if m.len() != k as usize {
                return Err(Error::usage(format!("member {m} does not have {k} elements")));
            }
        }
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::usage(format!("duplicate member {}", w[0])));
        }
        Ok(UniformFamily { n, k, members })
    }

    /// Convenience constructor from element lists.
    pub fn from_sets(n: u8, k: u8, sets: &[&[u8]]) -> Result<Self> {
        let words = sets
            .iter()
            .map(|s| SubsetWord::from_elements(n, s))
            .collect::<Result<Vec<_>>>()?;
        UniformFamily::new(n, k, words)
    }

    /// Members already in canonical order and valid; only checked in debug builds.
    pub(crate) fn from_sorted_unchecked(n: u8, k: u8, members: Vec<SubsetWord>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.iter().all(|m| m.len() == k as usize && m.n() == n));
        UniformFamily { n, k, members }
    }

    /// Builds from raw words in any order; words must be valid `k`-sets of `[n]`.
    pub(crate) fn from_raw_words(n: u8, k: u8, words: impl IntoIterator<Item = u64>) -> Self {
        let mut members: Vec<SubsetWord> = words
            .into_iter()
            .map(|b| SubsetWord::from_raw(n, b))
            .collect();
        members.sort_unstable();
        members.dedup();
        UniformFamily::from_sorted_unchecked(n, k, members)
    }

    #[inline]
    pub fn n(&self) -> u8 {
        self.n
    }

    #[inline]
    pub fn k(&self) -> u8 {
        self.k
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    #[inline]
    pub fn members(&self) -> &[SubsetWord] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SubsetWord> {
        self.members.iter()
    }

    pub fn index_of(&self, member: SubsetWord) -> Option<usize> {
        self.members.binary_search(&member).ok()
    }

    pub fn contains(&self, member: SubsetWord) -> bool {
        self.index_of(member).is_some()
    }

    /// The members satisfying `keep`, same `n` and `k`.
    pub fn filter(&self, mut keep: impl FnMut(SubsetWord) -> bool) -> UniformFamily {
        let members = self.members.iter().copied().filter(|&m| keep(m)).collect();
        UniformFamily::from_sorted_unchecked(self.n, self.k, members)
    }

    pub fn parse_fam(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (header_line, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header line \"n k\"".into(),
        })?;
        let fields = split_fields(header_line, header)?;
        if fields.len() != 2 {
            return Err(Error::Parse {
                line: header_line,
                message: format!("header needs exactly two integers \"n k\", found {}", fields.len()),
            });
        }
        let n = fields[0];
        let k = fields[1];
        if n == 0 || n > MAX_GROUND as u64 {
            return Err(Error::Parse {
                line: header_line,
                message: format!("n = {n} outside 1..=63"),
            });
        }
        if k == 0 || k > n {
            return Err(Error::Parse {
                line: header_line,
                message: format!("k = {k} outside 1..=n"),
            });
        }
        let (n, k) = (n as u8, k as u8);

        let mut seen: HashMap<u64, usize> = HashMap::new();
        let mut members = Vec::new();
        for (line_no, line) in lines {
            let elems = split_fields(line_no, line)?;
            if elems.len() != k as usize {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("member has {} elements, expected {k}", elems.len()),
                });
            }
            let mut bits = 0u64;
            let mut prev = 0u64;
            for &e in &elems {
                if e == 0 || e > n as u64 {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("element {e} outside [1..{n}]"),
                    });
                }
                if e <= prev {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "elements must be strictly increasing".into(),
                    });
                }
                prev = e;
                bits |= 1 << e;
            }
            if let Some(first) = seen.insert(bits, line_no) {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("duplicate member (first seen on line {first})"),
                });
            }
            members.push(SubsetWord::from_raw(n, bits));
        }
        members.sort_unstable();
        Ok(UniformFamily { n, k, members })
    }

    pub fn to_fam_string(&self) -> String {
        let mut out = String::with_capacity(8 + self.members.len() * 3 * self.k as usize);
        let _ = writeln!(out, "{} {}", self.n, self.k);
        for m in &self.members {
            let _ = writeln!(out, "{}", m.to_line());
        }
        out
    }
}

impl<'a> IntoIterator for &'a UniformFamily {
    type Item = &'a SubsetWord;
    type IntoIter = std::slice::Iter<'a, SubsetWord>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

fn check_params(n: u8, k: u8) -> Result<()> {
    if n == 0 || n > MAX_GROUND {
        return Err(Error::usage(format!("ground set size {n} outside 1..=63")));
    }
    if k > n {
        return Err(Error::usage(format!("uniformity {k} exceeds ground set size {n}")));
    }
    Ok(())
}

fn split_fields(line_no: usize, line: &str) -> Result<Vec<u64>> {
    line.split(' ')
        .map(|tok| {
            if tok.is_empty() {
                return Err(Error::Parse {
                    line: line_no,
                    message: "fields must be separated by single spaces".into(),
                });
            }
            tok.parse::<u64>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("not a non-negative integer: {tok:?}"),
            })
        })
        .collect()
}
