//! The size-bound argument for VC-bounded (d+1)-uniform families, run on a
//! concrete family.
//!
//! 1. assign maximum certificates `c`;
//! 2. pair up members of the `(d-1)`-stratum whose certificates span their
//!    intersection (the pair collection `𝒫`);
//! 3. drop `𝒫` and the members with certificates below `d-1`, giving `𝒢`, and
//!    reassign maximum certificates within `𝒢`;
//! 4. pick anchors `i, j` and split `ℱ = F1 ∪ F2 ∪ F3`;
//! 5. map `F3` fractionally into the index family `𝒮` (`f`), check every
//!    coordinate receives at most 1, and round to an injection `g`;
//! 6. audit the resulting size inequality.
//!
//! Every step fails with an invariant violation rather than papering over a
//! structural surprise; [`check::verify_report`] re-derives the whole report
//! from the definitions.

mod audit;
pub mod check;
mod injection;
mod pairs;
mod partition;
mod vector_map;

use std::collections::BTreeMap;

pub use audit::{audit_bound, AuditSizes, BoundAudit, Fraction, Inequality, Reported};
pub use injection::build_injection_g;
pub use pairs::{build_pair_collection, PairCollection};
pub use partition::{
    build_good_subfamily, partition_family, select_anchor_pair, MemberClass, Partition,
};
pub use vector_map::{build_f, verify_column_sums, CoefficientVector, IndexFamily};

use crate::certificates::{build_assignment, CertificateAssignment};
use crate::error::{Error, Result};
use crate::family::UniformFamily;
use crate::shatter::vc_dimension;
use crate::subset::SubsetWord;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PipelineOptions {
    /// Skip the up-front VC check; structural failures then surface as
    /// invariant violations from the step that breaks.
    pub assume_vc: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionReport {
    pub assign: CertificateAssignment,
    pub partition: Partition,
    pub index: IndexFamily,
    pub f: BTreeMap<SubsetWord, CoefficientVector>,
    /// largest column sum of `f`, in half-units
    pub max_column: u32,
    pub g: BTreeMap<SubsetWord, usize>,
    pub audit: BoundAudit,
}

pub fn run_pipeline(fam: &UniformFamily, d: usize, opts: PipelineOptions) -> Result<PartitionReport> {
    if d < 1 {
        return Err(Error::usage("the partition needs d >= 1"));
    }
    if fam.k() as usize != d + 1 {
        return Err(Error::usage(format!(
            "family is {}-uniform, expected d+1 = {}",
            fam.k(),
            d + 1
        )));
    }
    if !opts.assume_vc {
        let vc = vc_dimension(fam);
        if vc > d as i32 {
            return Err(Error::usage(format!(
                "family has VC-dimension {vc} > d = {d}; pass --assume-vc to run anyway"
            )));
        }
    }
    let assign = build_assignment(fam, d).map_err(|e| match e {
        Error::MemberShattered(m) => Error::violation(
            "certificate-existence",
            format!("member {m} has no certificate, so the family shatters it"),
        ),
        other => other,
    })?;
    run_with_assignment(assign)
}

/// Runs steps 2–6 on a given assignment (any choice of maximum certificates).
pub fn run_with_assignment(assign: CertificateAssignment) -> Result<PartitionReport> {
    let d = assign.d();
    let pairs = build_pair_collection(&assign);
    let good = build_good_subfamily(&assign, &pairs)?;
    let anchors = select_anchor_pair(&good)?;
    let partition = partition_family(&assign, pairs, good, anchors)?;
    let index = IndexFamily::build(&partition, d)?;
    let f = build_f(&partition, &index)?;
    let max_column = verify_column_sums(&f, &index)?;
    let g = build_injection_g(&f)?;
    let audit = audit_bound(assign.family(), d, &partition, &index)?;
    Ok(PartitionReport {
        assign,
        partition,
        index,
        f,
        max_column,
        g,
        audit,
    })
}
