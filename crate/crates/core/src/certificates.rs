//! Certificates: proper subsets `T ⊊ F` that are not the trace of any member on `F`.
//!
//! A member has a certificate iff the family does not shatter it, so for a
//! (d+1)-uniform family "every member has a certificate" is the same as
//! "VC-dimension at most d". An assignment picks one maximum certificate per
//! member; its fibers and strata drive the whole partition pipeline.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::family::UniformFamily;
use crate::subset::{deposit, extract, RawCombinations, SubsetWord};

/// Members may have at most this many elements; the trace table has `2^k` bits.
pub const MAX_CERTIFICATE_K: usize = 20;

/// Bit table of the traces `F' ∩ F` realized on `member`, indexed by the
/// compressed position of the trace inside `member`.
pub(crate) struct RealizedTraces {
    member: SubsetWord,
    bits: Vec<u64>,
}

impl RealizedTraces {
    pub(crate) fn collect(member: SubsetWord, fam: &UniformFamily) -> Result<Self> {
        let k = member.len();
        if k > MAX_CERTIFICATE_K {
            return Err(Error::usage(format!(
                "certificates limited to members of size <= {MAX_CERTIFICATE_K}"
            )));
        }
        let mut bits = vec![0u64; (1usize << k).div_ceil(64)];
        for other in fam {
            let t = extract(other.bits() & member.bits(), member.bits()) as usize;
            bits[t / 64] |= 1 << (t % 64);
        }
        Ok(RealizedTraces { member, bits })
    }

    #[inline]
    fn realized_local(&self, local: u64) -> bool {
        let t = local as usize;
        self.bits[t / 64] & (1 << (t % 64)) != 0
    }

    pub(crate) fn is_realized(&self, t: SubsetWord) -> bool {
        debug_assert!(t.is_subset_of(self.member));
        self.realized_local(extract(t.bits(), self.member.bits()))
    }

    /// Unrealized proper subsets of exactly `size` elements, canonical order.
    fn unrealized_of_size(&self, size: usize) -> impl Iterator<Item = SubsetWord> + '_ {
        let k = self.member.len();
        let (n, mask) = (self.member.n(), self.member.bits());
        RawCombinations::new(k as u32, size as u32)
            .filter(move |&local| size < k && !self.realized_local(local))
            .map(move |local| SubsetWord::from_raw(n, deposit(local, mask)))
    }

    /// All maximum certificates, canonical order; empty iff the member is shattered.
    pub(crate) fn maximum_certificates(&self) -> Vec<SubsetWord> {
        let k = self.member.len();
        for size in (0..k).rev() {
            let found: Vec<SubsetWord> = self.unrealized_of_size(size).collect();
            if !found.is_empty() {
                return found;
            }
        }
        Vec::new()
    }

    pub(crate) fn max_certificate_size(&self) -> Option<usize> {
        let k = self.member.len();
        (0..k)
            .rev()
            .find(|&size| self.unrealized_of_size(size).next().is_some())
    }

    pub(crate) fn has_certificate_of_size(&self, size: usize) -> bool {
        self.unrealized_of_size(size).next().is_some()
    }
}

fn require_member(member: SubsetWord, fam: &UniformFamily) -> Result<()> {
    if member.n() != fam.n() || !fam.contains(member) {
        return Err(Error::usage(format!("{member} is not a member of the family")));
    }
    Ok(())
}

/// Every certificate of `member`, canonical order.
pub fn certificates_of(member: SubsetWord, fam: &UniformFamily) -> Result<Vec<SubsetWord>> {
    require_member(member, fam)?;
    let traces = RealizedTraces::collect(member, fam)?;
    let k = member.len();
    let full = (1u64 << k) - 1;
    Ok((0..full)
        .filter(|&local| !traces.realized_local(local))
        .map(|local| SubsetWord::from_raw(member.n(), deposit(local, member.bits())))
        .collect())
}

/// Canonically least certificate of maximum size.
pub fn max_certificate(member: SubsetWord, fam: &UniformFamily) -> Result<SubsetWord> {
    require_member(member, fam)?;
    RealizedTraces::collect(member, fam)?
        .maximum_certificates()
        .first()
        .copied()
        .ok_or(Error::MemberShattered(member))
}

/// A choice of maximum certificate `c(F)` for every member, with its fibers
/// `c⁻¹(T)` and strata `ℱ_s = {F : |c(F)| = s}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateAssignment {
    family: UniformFamily,
    d: usize,
    assigned: Vec<SubsetWord>,
    fibers: BTreeMap<SubsetWord, Vec<SubsetWord>>,
    strata: BTreeMap<usize, Vec<SubsetWord>>,
}

impl CertificateAssignment {
    /// Wraps explicit choices after checking each is a maximum certificate.
    pub fn with_choices(family: UniformFamily, d: usize, assigned: Vec<SubsetWord>) -> Result<Self> {
        check_uniformity(&family, d)?;
        if assigned.len() != family.len() {
            return Err(Error::usage("one certificate per member required"));
        }
        for (&f, &c) in family.iter().zip(&assigned) {
            let traces = RealizedTraces::collect(f, &family)?;
            let max = traces.max_certificate_size().ok_or(Error::MemberShattered(f))?;
            if !c.is_subset_of(f) || c == f || traces.is_realized(c) {
                return Err(Error::violation(
                    "certificate",
                    format!("{c} is not a certificate of {f}"),
                ));
            }
            if c.len() != max {
                return Err(Error::violation(
                    "maximum-certificate",
                    format!("{c} has size {} but {f} has a certificate of size {max}", c.len()),
                ));
            }
        }
        Ok(Self::assemble(family, d, assigned))
    }

    fn assemble(family: UniformFamily, d: usize, assigned: Vec<SubsetWord>) -> Self {
        let mut fibers: BTreeMap<SubsetWord, Vec<SubsetWord>> = BTreeMap::new();
        let mut strata: BTreeMap<usize, Vec<SubsetWord>> = BTreeMap::new();
        for (&f, &c) in family.iter().zip(&assigned) {
            fibers.entry(c).or_default().push(f);
            strata.entry(c.len()).or_default().push(f);
        }
        CertificateAssignment {
            family,
            d,
            assigned,
            fibers,
            strata,
        }
    }

    pub fn family(&self) -> &UniformFamily {
        &self.family
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.assigned.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assigned.is_empty()
    }

    pub fn assigned(&self, member: SubsetWord) -> Option<SubsetWord> {
        self.family.index_of(member).map(|i| self.assigned[i])
    }

    /// `(F, c(F))` in canonical member order.
    pub fn pairs(&self) -> impl Iterator<Item = (SubsetWord, SubsetWord)> + '_ {
        self.family.iter().copied().zip(self.assigned.iter().copied())
    }

    pub fn fibers(&self) -> &BTreeMap<SubsetWord, Vec<SubsetWord>> {
        &self.fibers
    }

    pub fn fiber(&self, t: SubsetWord) -> &[SubsetWord] {
        self.fibers.get(&t).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn strata(&self) -> &BTreeMap<usize, Vec<SubsetWord>> {
        &self.strata
    }

    pub fn stratum(&self, size: usize) -> &[SubsetWord] {
        self.strata.get(&size).map(Vec::as_slice).unwrap_or(&[])
    }
}

fn check_uniformity(fam: &UniformFamily, d: usize) -> Result<()> {
    if fam.k() as usize != d + 1 {
        return Err(Error::usage(format!(
            "family is {}-uniform, expected (d+1) = {}",
            fam.k(),
            d + 1
        )));
    }
    Ok(())
}

/// The canonical assignment: every member gets its least maximum certificate.
pub fn build_assignment(fam: &UniformFamily, d: usize) -> Result<CertificateAssignment> {
    build_assignment_with(fam, d, |_, maxima| maxima[0])
}

/// Like [`build_assignment`], with `choose` picking among the (non-empty,
/// canonically ordered) maximum certificates of each member.
pub fn build_assignment_with(
    fam: &UniformFamily,
    d: usize,
    mut choose: impl FnMut(SubsetWord, &[SubsetWord]) -> SubsetWord,
) -> Result<CertificateAssignment> {
    check_uniformity(fam, d)?;
    let mut assigned = Vec::with_capacity(fam.len());
    for &f in fam {
        let maxima = RealizedTraces::collect(f, fam)?.maximum_certificates();
        if maxima.is_empty() {
            return Err(Error::MemberShattered(f));
        }
        let c = choose(f, &maxima);
        if !maxima.contains(&c) {
            return Err(Error::usage(format!("tie-break chose {c}, not a maximum certificate of {f}")));
        }
        assigned.push(c);
    }
    Ok(CertificateAssignment::assemble(fam.clone(), d, assigned))
}

/// `(d+1)! (d+1)^(d+1)`: at or above this many members a fiber would contain a
/// (d+2)-sunflower, which forces a member to realize its own certificate.
pub fn fiber_size_bound(d: usize) -> u128 {
    let k = d as u128 + 1;
    let fact = (1..=k).fold(1u128, |a, i| a.saturating_mul(i));
    let pow = (0..k).fold(1u128, |a, _| a.saturating_mul(k));
    fact.saturating_mul(pow)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberHistogram {
    /// fiber size → number of certificates with a fiber of that size
    pub counts: BTreeMap<usize, usize>,
    pub max: usize,
    pub bound: u128,
}

pub fn fiber_size_histogram(assign: &CertificateAssignment) -> Result<FiberHistogram> {
    let mut counts = BTreeMap::new();
    let mut max = 0;
    for fiber in assign.fibers().values() {
        *counts.entry(fiber.len()).or_insert(0) += 1;
        max = max.max(fiber.len());
    }
    let bound = fiber_size_bound(assign.d());
    if max as u128 > bound {
        return Err(Error::violation(
            "fiber-size-bound",
            format!("fiber of size {max} exceeds (d+1)!(d+1)^(d+1) = {bound}"),
        ));
    }
    Ok(FiberHistogram { counts, max, bound })
}

/// Shape of the fiber of a `(d-1)`-sized certificate `T`.
///
/// Elements are named as in `T ∪ {x, y}`; the side sets describe the other
/// members containing `T` (empty when the shape was built from a fiber alone).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberShape {
    /// fiber `{Txy, Tyz, Tzx}`, and no other member contains `T`
    Triangle {
        core: SubsetWord,
        x: u8,
        y: u8,
        z: u8,
    },
    /// fiber `{Tab, Tac}` sharing `a`, leaves `b < c`; the other members
    /// containing `T` are `Tau` for `u ∈ spokes`, plus `Tbc` when `closed`
    Cherry {
        core: SubsetWord,
        shared: u8,
        leaves: (u8, u8),
        spokes: SubsetWord,
        closed: bool,
    },
    /// fiber `{Txy}`, `x < y`; the other members containing `T` are `Txu`
    /// for `u ∈ x_side` and `Tyv` for `v ∈ y_side`
    Singleton {
        core: SubsetWord,
        x: u8,
        y: u8,
        x_side: SubsetWord,
        y_side: SubsetWord,
    },
}

impl FiberShape {
    pub fn core(&self) -> SubsetWord {
        match *self {
            FiberShape::Triangle { core, .. }
            | FiberShape::Cherry { core, .. }
            | FiberShape::Singleton { core, .. } => core,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            FiberShape::Triangle { .. } => "TRIANGLE",
            FiberShape::Cherry { .. } => "CHERRY",
            FiberShape::Singleton { .. } => "SINGLETON",
        }
    }

    /// The fiber rebuilt from the named elements, canonical order.
    pub fn members(&self) -> Vec<SubsetWord> {
        let mut out = match *self {
            FiberShape::Triangle { core, x, y, z } => {
                vec![core.with(x).with(y), core.with(y).with(z), core.with(z).with(x)]
            }
            FiberShape::Cherry {
                core,
                shared,
                leaves: (b, c),
                ..
            } => vec![core.with(shared).with(b), core.with(shared).with(c)],
            FiberShape::Singleton { core, x, y, .. } => vec![core.with(x).with(y)],
        };
        out.sort_unstable();
        out
    }

    /// Names the pattern formed by `members`, all of which must be `T` plus two
    /// elements. Side sets are left empty.
    ///
    /// Two members sharing one element beyond `T` are a cherry whatever the
    /// surrounding family looks like, which lets this run on sub-fibers.
    pub fn from_members(core: SubsetWord, members: &[SubsetWord]) -> Result<FiberShape> {
        let mut petals = Vec::with_capacity(members.len());
        for &m in members {
            if !core.is_subset_of(m) || m.len() != core.len() + 2 {
                return Err(Error::violation(
                    "fiber-shape",
                    format!("{m} is not {core} plus two elements"),
                ));
            }
            petals.push(m.difference(core));
        }
        let empty = SubsetWord::empty(core.n());
        match petals.as_slice() {
            [p] => {
                let v = p.to_vec();
                Ok(FiberShape::Singleton {
                    core,
                    x: v[0],
                    y: v[1],
                    x_side: empty,
                    y_side: empty,
                })
            }
            [p, q] => {
                let shared = p.intersection(*q);
                if shared.len() != 1 {
                    return Err(Error::violation(
                        "fiber-shape",
                        format!("fiber {p} / {q} over {core} does not share exactly one element"),
                    ));
                }
                let a = shared.min_element().unwrap();
                let b = p.without(a).min_element().unwrap();
                let c = q.without(a).min_element().unwrap();
                Ok(FiberShape::Cherry {
                    core,
                    shared: a,
                    leaves: (b.min(c), b.max(c)),
                    spokes: empty,
                    closed: false,
                })
            }
            [p, q, r] => {
                let all = p.union(*q).union(*r);
                let distinct = p != q && q != r && p != r;
                if all.len() != 3 || !distinct {
                    return Err(Error::violation(
                        "fiber-shape",
                        format!("three-member fiber over {core} is not a triangle"),
                    ));
                }
                let v = all.to_vec();
                Ok(FiberShape::Triangle {
                    core,
                    x: v[0],
                    y: v[1],
                    z: v[2],
                })
            }
            other => Err(Error::violation(
                "fiber-shape",
                format!("fiber over {core} has {} members (expected 1..=3)", other.len()),
            )),
        }
    }
}

/// Classifies the fiber of `t` and checks the full pattern of members containing `t`.
pub fn classify_fiber(t: SubsetWord, assign: &CertificateAssignment) -> Result<FiberShape> {
    let d = assign.d();
    if d == 0 || t.len() != d - 1 {
        return Err(Error::usage(format!("{t} does not have d-1 = {} elements", d as i64 - 1)));
    }
    let fiber = assign.fiber(t);
    if fiber.is_empty() {
        return Err(Error::usage(format!("{t} is not an assigned certificate")));
    }
    let shape = FiberShape::from_members(t, fiber)?;
    let supersets: Vec<SubsetWord> = assign
        .family()
        .iter()
        .copied()
        .filter(|m| t.is_subset_of(*m))
        .collect();
    let n = t.n();
    let mismatch = |m: SubsetWord| {
        Error::violation(
            "fiber-shape",
            format!("member {m} contains {t} but breaks the {} pattern", shape.kind()),
        )
    };

    match shape {
        FiberShape::Triangle { .. } => {
            if let Some(&m) = supersets.iter().find(|m| !fiber.contains(m)) {
                return Err(mismatch(m));
            }
            Ok(shape)
        }
        FiberShape::Cherry {
            core,
            shared,
            leaves: (b, c),
            ..
        } => {
            let mut spokes = SubsetWord::empty(n);
            let mut closed = false;
            for &m in &supersets {
                if fiber.contains(&m) {
                    continue;
                }
                let petal = m.difference(core);
                if petal.contains(b) && petal.contains(c) {
                    closed = true;
                } else if petal.contains(shared) && !petal.contains(b) && !petal.contains(c) {
                    spokes = spokes.union(petal.without(shared));
                } else {
                    return Err(mismatch(m));
                }
            }
            Ok(FiberShape::Cherry {
                core,
                shared,
                leaves: (b, c),
                spokes,
                closed,
            })
        }
        FiberShape::Singleton { core, x, y, .. } => {
            let mut x_side = SubsetWord::empty(n);
            let mut y_side = SubsetWord::empty(n);
            for &m in &supersets {
                if fiber.contains(&m) {
                    continue;
                }
                let petal = m.difference(core);
                if petal.contains(x) {
                    x_side = x_side.union(petal.without(x));
                } else if petal.contains(y) {
                    y_side = y_side.union(petal.without(y));
                } else {
                    return Err(mismatch(m));
                }
            }
            Ok(FiberShape::Singleton {
                core,
                x,
                y,
                x_side,
                y_side,
            })
        }
    }
}

/// The fiber structure every assignment of a VC-bounded family must have:
/// size-`d` certificates lie in exactly one member, size-`(d-1)` fibers have
/// at most three members and classify, and no fiber reaches the sunflower bound.
pub fn check_fiber_structure(assign: &CertificateAssignment) -> Result<FiberHistogram> {
    let d = assign.d();
    let hist = fiber_size_histogram(assign)?;
    for (&t, fiber) in assign.fibers() {
        if t.len() == d {
            let holders = assign.family().iter().filter(|m| t.is_subset_of(**m)).count();
            if holders != 1 || fiber.len() != 1 {
                return Err(Error::violation(
                    "size-d-certificate",
                    format!("{t} lies in {holders} members, fiber size {}", fiber.len()),
                ));
            }
        } else if d >= 1 && t.len() == d - 1 {
            if fiber.len() > 3 {
                return Err(Error::violation(
                    "size-(d-1)-fiber",
                    format!("fiber of {t} has {} members", fiber.len()),
                ));
            }
            classify_fiber(t, assign)?;
        }
    }
    Ok(hist)
}
