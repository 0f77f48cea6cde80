//! One call that runs every per-instance check on a VC-bounded family: size
//! bounds, fiber structure, and the full partition pipeline with its
//! independent re-verification. This is what the fuzz campaign runs per seed.

use std::collections::BTreeMap;

use crate::certificates::{build_assignment, check_fiber_structure};
use crate::error::{Error, Result};
use crate::family::UniformFamily;
use crate::pipeline::{check::verify_report, run_with_assignment};
use crate::shatter::{check_size_bounds, vc_dimension};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceStats {
    pub size: usize,
    pub vc: i32,
    pub max_fiber: usize,
    /// fiber shape name → count, over `(d-1)`-sized certificates
    pub shapes: BTreeMap<&'static str, usize>,
    pub max_column: u32,
    pub slack: i128,
    pub pairs: usize,
}

pub fn validate_instance(fam: &UniformFamily, d: usize) -> Result<InstanceStats> {
    if d < 1 || fam.k() as usize != d + 1 {
        return Err(Error::usage("validation needs a (d+1)-uniform family with d >= 1"));
    }
    let vc = vc_dimension(fam);
    if vc > d as i32 {
        return Err(Error::usage(format!("family has VC-dimension {vc} > d = {d}")));
    }
    check_size_bounds(fam, d)?;
    let assign = build_assignment(fam, d)?;
    let hist = check_fiber_structure(&assign)?;
    let mut shapes = BTreeMap::new();
    for &t in assign.fibers().keys().filter(|t| t.len() + 1 == d) {
        let shape = crate::certificates::classify_fiber(t, &assign)?;
        *shapes.entry(shape.kind()).or_insert(0) += 1;
    }
    let report = run_with_assignment(assign)?;
    verify_report(&report)?;
    Ok(InstanceStats {
        size: fam.len(),
        vc,
        max_fiber: hist.max,
        shapes,
        max_column: report.max_column,
        slack: report.audit.slack,
        pairs: report.partition.pairs.len(),
    })
}
