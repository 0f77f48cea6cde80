//! Re-derives a [`PartitionReport`] from the definitions and checks every
//! structural claim it encodes. Shares no code with the builders beyond the
//! basic set types and the plain certificate enumerator.

use std::collections::{BTreeMap, BTreeSet};

use crate::certificates::{certificates_of, FiberShape};
use crate::error::{Error, Result};
use crate::family::UniformFamily;
use crate::subset::{binomial, k_subsets, SubsetWord};

use super::partition::MemberClass;
use super::PartitionReport;

fn fail(check: &'static str, detail: String) -> Error {
    Error::violation(check, detail)
}

fn ensure(ok: bool, check: &'static str, detail: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(fail(check, detail()))
    }
}

fn max_cert_size(f: SubsetWord, fam: &UniformFamily) -> Result<usize> {
    certificates_of(f, fam)?
        .iter()
        .map(|c| c.len())
        .max()
        .ok_or(Error::MemberShattered(f))
}

/// `{S ∈ C(F, d-1) ∪ C(F, d) : c ⊆ S}`.
fn s_family(f: SubsetWord, c: SubsetWord, d: usize) -> Vec<SubsetWord> {
    f.subsets_of_size(d - 1)
        .chain(f.subsets_of_size(d))
        .filter(|s| c.is_subset_of(*s))
        .collect()
}

/// Checks everything; returns nothing on success.
pub fn verify_report(r: &PartitionReport) -> Result<()> {
    let assign = &r.assign;
    let fam = assign.family();
    let d = assign.d();
    let n = fam.n();
    let p = &r.partition;

    // Assignment: each c(F) is a maximum certificate.
    for (f, c) in assign.pairs() {
        let certs = certificates_of(f, fam)?;
        ensure(certs.contains(&c), "assignment", || format!("{c} is not a certificate of {f}"))?;
        let max = certs.iter().map(|c| c.len()).max().unwrap_or(0);
        ensure(c.len() == max, "assignment", || format!("{c} is not maximum for {f}"))?;
    }

    // Partition exactness.
    let mut all: Vec<SubsetWord> = p.f1.iter().chain(&p.f2).chain(&p.f3).copied().collect();
    all.sort_unstable();
    ensure(all.as_slice() == fam.members(), "partition-exact", || {
        format!(
            "|F1|+|F2|+|F3| = {}+{}+{} does not partition |F| = {}",
            p.f1.len(),
            p.f2.len(),
            p.f3.len(),
            fam.len()
        )
    })?;

    // Pair collection.
    let low = |f: SubsetWord| assign.assigned(f).is_some_and(|c| c.len() + 1 == d);
    let mut seen = BTreeSet::new();
    for &(a, b) in &p.pairs.pairs {
        let (ca, cb) = (assign.assigned(a).unwrap(), assign.assigned(b).unwrap());
        let ok = low(a)
            && low(b)
            && seen.insert(a)
            && seen.insert(b)
            && ca.union(cb) == a.intersection(b)
            && a.intersection(b).len() == d
            && ca.intersection(cb).len() + 2 == d;
        ensure(ok, "pair-collection", || format!("pair {a}, {b} breaks the pair conditions"))?;
    }
    let unpaired: Vec<SubsetWord> = fam.iter().copied().filter(|&f| low(f) && !seen.contains(&f)).collect();
    for (x, &a) in unpaired.iter().enumerate() {
        for &b in &unpaired[x + 1..] {
            let (ca, cb) = (assign.assigned(a).unwrap(), assign.assigned(b).unwrap());
            ensure(ca.union(cb) != a.intersection(b), "pair-maximality", || {
                format!("{a}, {b} could still be paired")
            })?;
        }
    }

    // F1 = stratum below d-1 plus the pairs.
    let expect_f1: Vec<SubsetWord> = fam
        .iter()
        .copied()
        .filter(|&f| assign.assigned(f).unwrap().len() + 1 < d || seen.contains(&f))
        .collect();
    ensure(p.f1 == expect_f1, "f1-definition", || "F1 differs from its definition".into())?;

    // Good subfamily: maximum certificates within it, sizes d-1..=d, disjoint S-families.
    let good = p.good.family();
    let expect_good: Vec<SubsetWord> = fam.iter().copied().filter(|f| !expect_f1.contains(f)).collect();
    ensure(good.members() == expect_good.as_slice(), "good-subfamily", || {
        "good subfamily differs from F minus F1".into()
    })?;
    let mut owner: BTreeMap<SubsetWord, SubsetWord> = BTreeMap::new();
    for (f, c) in p.good.pairs() {
        let max = max_cert_size(f, good)?;
        ensure(
            c.len() == max && certificates_of(f, good)?.contains(&c),
            "good-subfamily-maximum",
            || format!("{c} is not a maximum certificate of {f} within the subfamily"),
        )?;
        ensure(c.len() + 1 >= d && c.len() <= d, "good-subfamily-sizes", || {
            format!("certificate {c} of {f} has size outside d-1..=d")
        })?;
        if c.len() + 1 == d {
            for s in s_family(f, c, d) {
                let prev = *owner.entry(s).or_insert(c);
                ensure(prev == c, "good-subfamily-disjoint", || {
                    format!("{s} lies in the S-families of certificates {prev} and {c}")
                })?;
            }
        }
    }

    // F2 / F3 and classes, from the definitions.
    let ij = p.anchor_set();
    ensure(ij.len() == 2 && p.v == SubsetWord::full(n).difference(ij), "anchors", || {
        "anchors and V disagree".into()
    })?;
    let mut f2 = Vec::new();
    let mut f3 = Vec::new();
    for (f, c) in p.good.pairs() {
        let in_gij = ij.is_subset_of(f) && c.difference(ij).len() + 2 <= d;
        let in_low = c.len() + 1 == d && !f.intersection(ij).is_empty();
        if in_gij || in_low { f2.push(f) } else { f3.push(f) }
    }
    ensure(p.f2 == f2 && p.f3 == f3, "f2-definition", || "F2/F3 differ from their definitions".into())?;
    ensure(p.classes.keys().copied().eq(f3.iter().copied()), "classes", || {
        "classes must label exactly F3".into()
    })?;
    for (&f, &class) in &p.classes {
        let c = p.cert(f);
        let expect = if f.is_subset_of(p.v) {
            if c.len() == d { MemberClass::Kd } else { MemberClass::Kd1 }
        } else {
            ensure(c.len() == d && c.intersection(ij).len() <= 1, "h-class", || {
                format!("{f} meets the anchors with certificate {c}")
            })?;
            match (c.intersection(ij).len(), f.intersection(ij).len()) {
                (0, _) => MemberClass::H0Star,
                (_, 1) => MemberClass::H11,
                _ => MemberClass::H12,
            }
        };
        ensure(class == expect, "classes", || format!("{f} labelled {class}, expected {expect}"))?;
    }

    // Restricted fibers on the (d-1)-certificate part of V.
    let mut groups: BTreeMap<SubsetWord, Vec<SubsetWord>> = BTreeMap::new();
    for f in p.class_members(MemberClass::Kd1) {
        groups.entry(p.cert(f)).or_default().push(f);
    }
    for (t, fiber) in &groups {
        FiberShape::from_members(*t, fiber)?;
    }

    // Index family, by brute force.
    let f3_set: BTreeSet<SubsetWord> = f3.iter().copied().collect();
    let mut index: Vec<SubsetWord> = k_subsets(n, d - 1).filter(|s| s.is_subset_of(p.v)).collect();
    index.extend(
        k_subsets(n, d)
            .filter(|s| s.is_subset_of(p.v) && f3_set.iter().any(|f| s.is_subset_of(*f))),
    );
    index.sort_unstable();
    ensure(r.index.sets() == index.as_slice(), "index-family", || "index family mismatch".into())?;

    // f: domain, mass, support.
    ensure(r.f.keys().copied().eq(f3.iter().copied()), "f-domain", || "f must be defined on F3".into())?;
    let mut cols = vec![0u32; index.len()];
    let mut support_owner: BTreeMap<usize, SubsetWord> = BTreeMap::new();
    for (&f, vec) in &r.f {
        ensure(vec.mass() == 2, "f-mass", || format!("f({f}) has mass {} half-units", vec.mass()))?;
        let shape_ok = match vec.entries.as_slice() {
            [(_, 2)] => true,
            [(a, 1), (b, 1)] => a < b,
            _ => false,
        };
        ensure(shape_ok, "f-shape", || format!("f({f}) is neither a unit nor two halves"))?;
        for &(i, w) in &vec.entries {
            ensure(i < index.len() && index[i].is_subset_of(f), "f-support", || {
                format!("f({f}) uses an index outside its subsets")
            })?;
            cols[i] += w as u32;
        }
        if p.classes[&f] == MemberClass::Kd1 {
            let c = p.cert(f);
            let allowed = s_family(f, c, d);
            for &(i, _) in &vec.entries {
                ensure(allowed.contains(&index[i]), "f-kd1-support", || {
                    format!("f({f}) leaves the S-family of its certificate {c}")
                })?;
                let prev = *support_owner.entry(i).or_insert(c);
                ensure(
                    prev == c,
                    "f-kd1-disjoint",
                    || format!("index {} shared by certificates {prev} and {c}", index[i]),
                )?;
            }
        }
    }
    let max_col = cols.iter().copied().max().unwrap_or(0);
    ensure(max_col <= 2 && max_col == r.max_column, "column-sum", || {
        format!("largest column sum {max_col} half-units (reported {})", r.max_column)
    })?;

    // g: injective, onto unit images for unit members, into U₂ otherwise.
    let u1: BTreeSet<usize> = r.f.values().filter(|v| v.is_unit()).map(|v| v.entries[0].0).collect();
    let u2: BTreeSet<usize> = r
        .f
        .values()
        .filter(|v| !v.is_unit())
        .flat_map(|v| v.entries.iter().map(|e| e.0))
        .collect();
    ensure(u1.is_disjoint(&u2), "g-u1-u2-disjoint", || "U1 and U2 overlap".into())?;
    ensure(r.g.keys().copied().eq(f3.iter().copied()), "g-domain", || "g must be defined on F3".into())?;
    let mut used = BTreeSet::new();
    for (&f, &i) in &r.g {
        let vec = &r.f[&f];
        let ok = if vec.is_unit() { vec.entries[0].0 == i } else { u2.contains(&i) };
        ensure(ok && used.insert(i), "g-injective", || format!("g({f}) = {i} is not admissible"))?;
    }

    // Audit, recomputed.
    let co = |family: &[SubsetWord], within: Option<SubsetWord>| {
        k_subsets(n, d)
            .filter(|s| within.is_none_or(|v| s.is_subset_of(v)))
            .filter(|s| !family.iter().any(|f| s.is_subset_of(*f)))
            .count() as i128
    };
    let co_f3_v = co(&f3, Some(p.v));
    let s = &r.audit.sizes;
    let chain_rhs = (p.f1.len() + p.f2.len()) as i128 + binomial(n as u64 - 1, d as u64) as i128 - co_f3_v;
    ensure(
        s.co_shadow_f3_v as i128 == co_f3_v
            && s.co_shadow == co(fam.members(), None) as u64
            && s.co_shadow_good as i128 == co(good.members(), None),
        "audit-sizes",
        || "audit sizes disagree with a recount".into(),
    )?;
    ensure(f3.len() <= index.len(), "audit-f3-index", || {
        format!("|F3| = {} > |S| = {}", f3.len(), index.len())
    })?;
    ensure((fam.len() as i128) <= chain_rhs && r.audit.slack == chain_rhs - fam.len() as i128, "audit-chain", || {
        format!("|F| = {} vs chain bound {chain_rhs}", fam.len())
    })?;
    Ok(())
}
