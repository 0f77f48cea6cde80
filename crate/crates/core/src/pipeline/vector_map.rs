//! The index family `𝒮` and the vector map `f : F3 → R^𝒮`.
//!
//! Coefficients are integers in half-units: a unit vector is one entry of
//! weight 2, a half-half vector two entries of weight 1.

use std::collections::BTreeMap;

use crate::certificates::FiberShape;
use crate::error::{Error, Result};
use crate::family::UniformFamily;
use crate::shatter::shadow;
use crate::subset::SubsetWord;

use super::partition::{MemberClass, Partition};

/// `𝒮 = C(V, d-1) ∪ (C(V, d) ∩ ∂F3)` in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexFamily {
    sets: Vec<SubsetWord>,
}

impl IndexFamily {
    pub fn build(part: &Partition, d: usize) -> Result<IndexFamily> {
        let n = part.v.n();
        let f3 = UniformFamily::new(n, d as u8 + 1, part.f3.iter().copied())?;
        let sh = shadow(&f3)?;
        let mut sets: Vec<SubsetWord> = part.v.subsets_of_size(d - 1).collect();
        sets.extend(sh.members().iter().copied().filter(|s| s.is_subset_of(part.v)));
        sets.sort_unstable();
        Ok(IndexFamily { sets })
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[SubsetWord] {
        &self.sets
    }

    pub fn get(&self, idx: usize) -> SubsetWord {
        self.sets[idx]
    }

    pub fn index_of(&self, s: SubsetWord) -> Option<usize> {
        self.sets.binary_search(&s).ok()
    }
}

/// Sparse `(index, half-units)` entries, sorted by index, total weight 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoefficientVector {
    pub entries: Vec<(usize, u8)>,
}

impl CoefficientVector {
    pub fn is_unit(&self) -> bool {
        self.entries.len() == 1
    }

    pub fn mass(&self) -> u32 {
        self.entries.iter().map(|&(_, w)| w as u32).sum()
    }
}

struct Builder<'a> {
    index: &'a IndexFamily,
    member: SubsetWord,
}

impl Builder<'_> {
    fn idx(&self, s: SubsetWord) -> Result<usize> {
        self.index.index_of(s).ok_or_else(|| {
            Error::violation(
                "f-well-defined",
                format!("f({}) refers to {s}, which is not in the index family", self.member),
            )
        })
    }

    fn unit(&self, s: SubsetWord) -> Result<CoefficientVector> {
        Ok(CoefficientVector {
            entries: vec![(self.idx(s)?, 2)],
        })
    }

    fn halves(&self, a: SubsetWord, b: SubsetWord) -> Result<CoefficientVector> {
        let (x, y) = (self.idx(a)?, self.idx(b)?);
        if x == y {
            return Err(Error::violation(
                "f-well-defined",
                format!("f({}) splits its mass over one index twice", self.member),
            ));
        }
        Ok(CoefficientVector {
            entries: vec![(x.min(y), 1), (x.max(y), 1)],
        })
    }
}

/// Images of the `(d-1)`-certificate members of `V`, grouped by certificate.
fn kd1_images(
    part: &Partition,
    index: &IndexFamily,
    out: &mut BTreeMap<SubsetWord, CoefficientVector>,
) -> Result<()> {
    let mut groups: BTreeMap<SubsetWord, Vec<SubsetWord>> = BTreeMap::new();
    for f in part.class_members(MemberClass::Kd1) {
        groups.entry(part.cert(f)).or_default().push(f);
    }
    let h11: Vec<SubsetWord> = part.class_members(MemberClass::H11).collect();

    for (t, fiber) in groups {
        let shape = FiberShape::from_members(t, &fiber)?;
        match shape {
            FiberShape::Triangle { core, x, y, z } => {
                for (a, b, img) in [(x, y, x), (y, z, y), (z, x, z)] {
                    let member = core.with(a).with(b);
                    let bld = Builder { index, member };
                    out.insert(member, bld.unit(core.with(img))?);
                }
            }
            FiberShape::Cherry {
                core,
                shared,
                leaves: (b, c),
                ..
            } => {
                for leaf in [b, c] {
                    let member = core.with(shared).with(leaf);
                    let bld = Builder { index, member };
                    out.insert(member, bld.unit(core.with(leaf))?);
                }
            }
            FiberShape::Singleton { core, x, y, .. } => {
                let member = core.with(x).with(y);
                let bld = Builder { index, member };
                let above: Vec<SubsetWord> = h11
                    .iter()
                    .copied()
                    .filter(|&h| part.cert(h).intersection(part.v) == core)
                    .collect();
                let other = |a: u8| -> Result<u8> {
                    if a == x {
                        Ok(y)
                    } else if a == y {
                        Ok(x)
                    } else {
                        Err(Error::violation(
                            "f-singleton",
                            format!("element {a} attached to {core} is not in {member}"),
                        ))
                    }
                };
                let img = match above.as_slice() {
                    [] => bld.unit(core)?,
                    [h] => {
                        let a = h.intersection(part.v).difference(core);
                        let a = single(a, member, "f-singleton")?;
                        bld.halves(core, core.with(other(a)?))?
                    }
                    [h1, h2] => {
                        let shared = h1.intersection(*h2).difference(core);
                        if shared.is_empty() {
                            bld.halves(core.with(x), core.with(y))?
                        } else {
                            let a = single(shared, member, "f-singleton")?;
                            bld.unit(core.with(other(a)?))?
                        }
                    }
                    more => {
                        return Err(Error::violation(
                            "f-singleton",
                            format!("{} members of H11 sit above {core}, at most 2 allowed", more.len()),
                        ))
                    }
                };
                out.insert(member, img);
            }
        }
    }
    Ok(())
}

fn single(s: SubsetWord, member: SubsetWord, check: &'static str) -> Result<u8> {
    match s.len() {
        1 => Ok(s.min_element().unwrap()),
        _ => Err(Error::violation(
            check,
            format!("expected one element in {s} while mapping {member}"),
        )),
    }
}

pub fn build_f(part: &Partition, index: &IndexFamily) -> Result<BTreeMap<SubsetWord, CoefficientVector>> {
    let v = part.v;
    let mut out = BTreeMap::new();
    for (&f, &class) in &part.classes {
        let bld = Builder { index, member: f };
        let c = part.cert(f);
        let img = match class {
            MemberClass::H0Star | MemberClass::Kd => bld.unit(c)?,
            MemberClass::H12 => bld.unit(f.intersection(v))?,
            MemberClass::H11 => bld.halves(f.intersection(v), c.intersection(v))?,
            MemberClass::Kd1 => continue,
        };
        out.insert(f, img);
    }
    kd1_images(part, index, &mut out)?;
    Ok(out)
}

/// Column sums `Σ_F f(F)[S]` in half-units; fails above 2 (i.e. above 1).
pub fn verify_column_sums(
    f: &BTreeMap<SubsetWord, CoefficientVector>,
    index: &IndexFamily,
) -> Result<u32> {
    let mut cols = vec![0u32; index.len()];
    for vec in f.values() {
        for &(i, w) in &vec.entries {
            cols[i] += w as u32;
        }
    }
    let max = cols.iter().copied().max().unwrap_or(0);
    if let Some(i) = cols.iter().position(|&c| c > 2) {
        return Err(Error::violation(
            "column-sum",
            format!("column {} sums to {} half-units", index.get(i), cols[i]),
        ));
    }
    Ok(max)
}
