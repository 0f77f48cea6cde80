//! The per-instance size audit.
//!
//! Asserted (exact integers):
//! * `|F3| <= |𝒮|` (from the injection `g`);
//! * `|𝒮| = C(n-2, d-1) + C(n-2, d) - |∂̄F3 ∩ C(V, d)|`;
//! * `|ℱ| <= |F1| + |F2| + C(n-1, d) - |∂̄F3 ∩ C(V, d)|`, the chain giving the
//!   size bound once the first two parts are small.
//!
//! Reported only (exact fractions, never asserted): the quantities behind the
//! asymptotic estimates, which need not hold at small `n`.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::family::UniformFamily;
use crate::shatter::complement_shadow;
use crate::subset::{binomial, binomial_signed};

use super::partition::Partition;
use super::vector_map::IndexFamily;

pub type Fraction = Ratio<i128>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditSizes {
    pub family: u64,
    pub f1: u64,
    pub f2: u64,
    pub f3: u64,
    pub pairs: u64,
    pub index: u64,
    pub co_shadow: u64,
    pub co_shadow_good: u64,
    pub co_shadow_good_v: u64,
    pub co_shadow_f3: u64,
    pub co_shadow_f3_v: u64,
    pub binom_n1_d: u64,
    pub binom_n2_d1: u64,
    pub binom_n2_d: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub name: &'static str,
    pub relation: &'static str,
    pub lhs: i128,
    pub rhs: i128,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reported {
    pub name: &'static str,
    pub lhs: Fraction,
    pub rhs: Fraction,
    /// `lhs / rhs`, absent when `rhs = 0`
    pub ratio: Option<Fraction>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundAudit {
    pub sizes: AuditSizes,
    pub asserted: Vec<Inequality>,
    pub reported: Vec<Reported>,
    /// rhs - lhs of the chain inequality
    pub slack: i128,
}

fn int(x: u64) -> i128 {
    x as i128
}

fn frac(x: i128) -> Fraction {
    Fraction::from_integer(x)
}

fn reported(name: &'static str, lhs: Fraction, rhs: Fraction) -> Reported {
    let ratio = (rhs != frac(0)).then(|| lhs / rhs);
    Reported {
        name,
        lhs,
        rhs,
        ratio,
    }
}

pub fn audit_bound(
    fam: &UniformFamily,
    d: usize,
    part: &Partition,
    index: &IndexFamily,
) -> Result<BoundAudit> {
    let n = fam.n();
    let (n64, d64) = (n as i64, d as i64);
    let within_v = |s: &&crate::subset::SubsetWord| s.is_subset_of(part.v);

    let f3 = UniformFamily::new(n, fam.k(), part.f3.iter().copied())?;
    let co_f3 = complement_shadow(&f3)?;
    let co_good = complement_shadow(part.good.family())?;
    let sizes = AuditSizes {
        family: fam.len() as u64,
        f1: part.f1.len() as u64,
        f2: part.f2.len() as u64,
        f3: part.f3.len() as u64,
        pairs: part.pairs.members.len() as u64,
        index: index.len() as u64,
        co_shadow: complement_shadow(fam)?.len() as u64,
        co_shadow_good: co_good.len() as u64,
        co_shadow_good_v: co_good.members().iter().filter(within_v).count() as u64,
        co_shadow_f3: co_f3.len() as u64,
        co_shadow_f3_v: co_f3.members().iter().filter(within_v).count() as u64,
        binom_n1_d: binomial(n as u64 - 1, d as u64),
        binom_n2_d1: binomial_signed(n64 - 2, d64 - 1),
        binom_n2_d: binomial_signed(n64 - 2, d64),
    };
    let s = &sizes;

    let ineq = |name, relation, lhs: i128, rhs: i128| Inequality {
        name,
        relation,
        lhs,
        rhs,
        holds: if relation == "=" { lhs == rhs } else { lhs <= rhs },
    };
    let chain_rhs = int(s.f1) + int(s.f2) + int(s.binom_n1_d) - int(s.co_shadow_f3_v);
    let asserted = vec![
        ineq("f3_le_index", "<=", int(s.f3), int(s.index)),
        ineq(
            "index_size",
            "=",
            int(s.index),
            int(s.binom_n2_d1) + int(s.binom_n2_d) - int(s.co_shadow_f3_v),
        ),
        ineq("size_chain", "<=", int(s.family), chain_rhs),
    ];
    if let Some(bad) = asserted.iter().find(|q| !q.holds) {
        return Err(Error::violation(
            "bound-audit",
            format!("{}: {} {} {} fails", bad.name, bad.lhs, bad.relation, bad.rhs),
        ));
    }

    let d128 = d as i128;
    let pair_threshold = if d >= 2 {
        frac(400 * d128 * d128 * (n as i128).pow(d as u32 - 2))
    } else {
        Fraction::new(400 * d128 * d128, n as i128)
    };
    let reported = vec![
        reported(
            "f1_f2_vs_tenth_co_shadow",
            frac(int(s.f1 + s.f2)),
            Fraction::new(int(s.co_shadow), 10),
        ),
        reported("pairs_vs_threshold", frac(int(s.pairs)), pair_threshold),
        reported(
            "co_shadow_vs_ten_ninths_deficit",
            frac(int(s.co_shadow)),
            Fraction::new(10 * (int(s.binom_n1_d) - int(s.family)), 9),
        ),
        reported(
            "co_shadow_good_in_v",
            frac(int(s.co_shadow_good_v)),
            frac(int(s.co_shadow_good)),
        ),
        reported(
            "co_shadow_f3_in_v",
            frac(int(s.co_shadow_f3_v)),
            frac(int(s.co_shadow_f3)),
        ),
    ];

    Ok(BoundAudit {
        slack: chain_rhs - int(s.family),
        sizes,
        asserted,
        reported,
    })
}
