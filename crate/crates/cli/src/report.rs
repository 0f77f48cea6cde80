//! JSON and table renderings. JSON carries integers and exact fractions only;
//! coefficients of `f` are in half-units.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};
use vcx_core::pipeline::{Fraction, MemberClass};
use vcx_core::search::Bracket;
use vcx_core::{
    CertificateAssignment, FiberHistogram, FiberShape, PartitionReport, SearchMode, SearchResult,
    ShadowSet, SubsetWord, Sunflower, UniformFamily,
};

use crate::fuzz::FuzzSummary;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

pub enum Report {
    /// `inline`: the family itself goes to the output (no `--out` file)
    Generated { kind: String, family: UniformFamily, d: u8, seed: Option<u64>, inline: bool },
    Vc { family: UniformFamily, vc: i32, witness: Option<SubsetWord> },
    Shadow { family: UniformFamily, shadow: ShadowSet, complement: ShadowSet },
    Certify { assign: CertificateAssignment, histogram: FiberHistogram, shapes: Vec<FiberShape> },
    Sunflower { family: UniformFamily, p: i64, threshold: u128, found: Option<Sunflower> },
    Pipeline(Box<PartitionReport>),
    Search(Box<SearchResult>),
    Fuzz(FuzzSummary),
}

pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => to_pretty(&report.to_json()) + "\n",
        Format::Table => report.to_table(),
    }
}

/// Indented JSON with arrays of scalars (sets, `[index, half-units]` pairs)
/// kept on one line.
pub fn to_pretty(v: &Value) -> String {
    let mut out = String::new();
    pretty_into(&mut out, v, 0);
    out
}

fn is_scalar(v: &Value) -> bool {
    !v.is_array() && !v.is_object()
}

/// Scalars inline always; arrays of scalar arrays inline while short.
fn inline(items: &[Value]) -> bool {
    items.iter().all(is_scalar)
        || items.iter().all(|x| x.as_array().is_some_and(|a| a.iter().all(is_scalar)))
            && Value::Array(items.to_vec()).to_string().len() <= 72
}

fn pretty_into(out: &mut String, v: &Value, depth: usize) {
    let pad = |out: &mut String, d: usize| out.push_str(&"  ".repeat(d));
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                pad(out, depth + 1);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                pretty_into(out, x, depth + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push('}');
        }
        Value::Array(items) if !inline(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                pad(out, depth + 1);
                pretty_into(out, x, depth + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push(']');
        }
        Value::Array(items) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                pretty_into(out, x, depth);
            }
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}

/// `"1 2 3"`: the member's line in a `.fam` file.
pub fn key(s: SubsetWord) -> String {
    s.to_line()
}

pub fn set(s: SubsetWord) -> Value {
    json!(s.to_vec())
}

fn sets<'a>(items: impl IntoIterator<Item = &'a SubsetWord>) -> Value {
    Value::Array(items.into_iter().map(|&s| set(s)).collect())
}

/// An integer, or its decimal string if it does not fit in 64 bits.
fn int(x: i128) -> Value {
    i64::try_from(x).map(Value::from).unwrap_or_else(|_| json!(x.to_string()))
}

pub fn fraction(x: &Fraction) -> Value {
    json!({ "num": int(*x.numer()), "den": int(*x.denom()) })
}

fn big(x: u128) -> Value {
    u64::try_from(x).map(Value::from).unwrap_or_else(|_| json!(x.to_string()))
}

fn mode_name(mode: SearchMode) -> &'static str {
    match mode {
        SearchMode::Exact => "exact",
        SearchMode::Witness { .. } => "witness",
        SearchMode::CertificateOrder { .. } => "order-s",
    }
}

fn shape_json(shape: &FiberShape) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), json!(shape.kind()));
    m.insert("members".into(), sets(&shape.members()));
    match *shape {
        FiberShape::Triangle { x, y, z, .. } => {
            m.insert("elements".into(), json!([x, y, z]));
        }
        FiberShape::Cherry { shared, leaves, spokes, closed, .. } => {
            m.insert("shared".into(), json!(shared));
            m.insert("leaves".into(), json!([leaves.0, leaves.1]));
            m.insert("spokes".into(), set(spokes));
            m.insert("closed".into(), json!(closed));
        }
        FiberShape::Singleton { x, y, x_side, y_side, .. } => {
            m.insert("elements".into(), json!([x, y]));
            m.insert("x_side".into(), set(x_side));
            m.insert("y_side".into(), set(y_side));
        }
    }
    Value::Object(m)
}

fn bracket_json(b: &Bracket, best: u64) -> Value {
    json!({ "lower": b.lower, "upper": b.upper, "applies": b.applies, "contains_best": b.contains(best) })
}

fn pipeline_json(r: &PartitionReport) -> Value {
    let p = &r.partition;
    let a = &r.audit;
    let s = &a.sizes;
    let sizes = json!({
        "family": s.family, "f1": s.f1, "f2": s.f2, "f3": s.f3, "pairs": s.pairs, "index": s.index,
        "co_shadow": s.co_shadow, "co_shadow_good": s.co_shadow_good,
        "co_shadow_good_v": s.co_shadow_good_v, "co_shadow_f3": s.co_shadow_f3,
        "co_shadow_f3_v": s.co_shadow_f3_v, "binom_n1_d": s.binom_n1_d,
        "binom_n2_d1": s.binom_n2_d1, "binom_n2_d": s.binom_n2_d, "slack": int(a.slack),
    });
    let classes: Map<String, Value> = p.classes.iter().map(|(&f, c)| (key(f), json!(c.label()))).collect();
    let f: Map<String, Value> = r
        .f
        .iter()
        .map(|(&m, v)| (key(m), json!(v.entries.iter().map(|&(i, w)| [i, w as usize]).collect::<Vec<_>>())))
        .collect();
    let g: Map<String, Value> = r.g.iter().map(|(&m, &i)| (key(m), json!(i))).collect();
    let mut asserted: Vec<Value> = a
        .asserted
        .iter()
        .map(|q| json!({ "name": q.name, "relation": q.relation, "lhs": int(q.lhs), "rhs": int(q.rhs), "holds": q.holds }))
        .collect();
    asserted.push(json!({
        "name": "column_sum_half_units", "relation": "<=", "lhs": r.max_column, "rhs": 2,
        "holds": r.max_column <= 2,
    }));
    let reported: Vec<Value> = a
        .reported
        .iter()
        .map(|q| {
            json!({
                "name": q.name, "lhs": fraction(&q.lhs), "rhs": fraction(&q.rhs),
                "ratio": q.ratio.as_ref().map(fraction),
            })
        })
        .collect();
    json!({
        "anchors": [p.anchors.0, p.anchors.1],
        "sizes": sizes,
        "classes": classes,
        "f": f,
        "g": g,
        "asserted": asserted,
        "reported": reported,
    })
}

fn search_json(r: &SearchResult) -> Value {
    let s = match r.mode {
        SearchMode::CertificateOrder { s } => json!(s),
        _ => Value::Null,
    };
    json!({
        "n": r.n,
        "d": r.d,
        "mode": mode_name(r.mode),
        "s": s,
        "best": r.best,
        "optimal": r.optimal,
        "budget_exhausted": r.budget_exhausted(),
        "target": r.target,
        "target_reached": r.target_reached,
        "bracket": bracket_json(&r.bracket, r.best),
        "conjecture_bound": r.conjecture_bound,
        "conjecture_counterexample": r.conjecture_counterexample,
        "witness": sets(r.witness.members()),
        "nodes": r.nodes,
        "wall_time_ms": r.wall_time.as_millis() as u64,
    })
}

fn fuzz_json(s: &FuzzSummary) -> Value {
    let cells: Vec<Value> = s
        .cells
        .iter()
        .map(|c| {
            json!({
                "n": c.n, "d": c.d, "seed0": c.seed0, "count": c.count, "passed": c.passed,
                "failed": c.failed, "max_size": c.max_size, "max_fiber": c.max_fiber,
                "max_column": c.max_column, "min_slack": c.min_slack.map(int),
                "shapes": c.shapes,
            })
        })
        .collect();
    let failures: Vec<Value> = s
        .failures
        .iter()
        .map(|f| {
            json!({
                "n": f.n, "d": f.d, "seed": f.seed, "error": f.error,
                "family_file": f.family_file.display().to_string(),
                "manifest_file": f.manifest_file.display().to_string(),
            })
        })
        .collect();
    json!({
        "total": s.total(),
        "passed": s.passed(),
        "failed": s.failed(),
        "max_fiber": s.max_fiber(),
        "max_column": s.max_column(),
        "min_slack": s.min_slack().map(int),
        "cells": cells,
        "failures": failures,
        "wall_time_ms": s.wall_time.as_millis() as u64,
    })
}

impl Report {
    pub fn to_json(&self) -> Value {
        match self {
            Report::Generated { kind, family, d, seed, inline } => {
                let mut v = json!({
                    "kind": kind, "n": family.n(), "d": d, "k": family.k(), "seed": seed,
                    "size": family.len(),
                    "digest": crate::io::digest64(family.to_fam_string().as_bytes()),
                });
                if *inline {
                    v["family"] = sets(family.members());
                }
                v
            }
            Report::Vc { family, vc, witness } => json!({
                "n": family.n(), "k": family.k(), "size": family.len(), "vc": vc,
                "shattered": witness.map(set),
            }),
            Report::Shadow { family, shadow, complement } => json!({
                "n": family.n(), "k": family.k(), "size": family.len(),
                "shadow_size": shadow.len(), "complement_size": complement.len(),
                "shadow": sets(shadow.members()), "complement": sets(complement.members()),
            }),
            Report::Certify { assign, histogram, shapes } => {
                let fam = assign.family();
                let assignment: Map<String, Value> = assign.pairs().map(|(f, c)| (key(f), set(c))).collect();
                let strata: Map<String, Value> =
                    assign.strata().iter().map(|(k, v)| (k.to_string(), json!(v.len()))).collect();
                let counts: Map<String, Value> =
                    histogram.counts.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
                let shape_map: Map<String, Value> = shapes.iter().map(|s| (key(s.core()), shape_json(s))).collect();
                json!({
                    "n": fam.n(), "k": fam.k(), "d": assign.d(), "size": fam.len(),
                    "assignment": assignment,
                    "strata": strata,
                    "fiber_histogram": { "counts": counts, "max": histogram.max, "bound": big(histogram.bound) },
                    "shapes": shape_map,
                })
            }
            Report::Sunflower { family, p, threshold, found } => json!({
                "n": family.n(), "k": family.k(), "size": family.len(), "p": p,
                "threshold": big(*threshold),
                "found": found.is_some(),
                "core": found.as_ref().map(|s| set(s.core)),
                "petals": found.as_ref().map(|s| sets(&s.petals)),
            }),
            Report::Pipeline(r) => pipeline_json(r),
            Report::Search(r) => search_json(r),
            Report::Fuzz(s) => fuzz_json(s),
        }
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        match self {
            Report::Generated { family, inline: true, .. } => out.push_str(&family.to_fam_string()),
            Report::Generated { kind, family, d, seed, .. } => {
                let _ = writeln!(w, "{kind} family: n={} d={d} k={} size={}", family.n(), family.k(), family.len());
                if let Some(seed) = seed {
                    let _ = writeln!(w, "seed {seed}");
                }
            }
            Report::Vc { family, vc, witness } => {
                let _ = writeln!(w, "n={} k={} size={}", family.n(), family.k(), family.len());
                let _ = writeln!(w, "VC-dimension {vc}");
                if let Some(s) = witness {
                    let _ = writeln!(w, "shattered set {s}");
                }
            }
            Report::Shadow { family, shadow, complement } => {
                let _ = writeln!(w, "n={} k={} size={}", family.n(), family.k(), family.len());
                let _ = writeln!(w, "shadow: {} sets", shadow.len());
                for s in shadow.members() {
                    let _ = writeln!(w, "  {s}");
                }
                let _ = writeln!(w, "complement shadow: {} sets", complement.len());
                for s in complement.members() {
                    let _ = writeln!(w, "  {s}");
                }
            }
            Report::Certify { assign, histogram, shapes } => {
                let _ = writeln!(w, "{:<20} certificate", "member");
                for (f, c) in assign.pairs() {
                    let _ = writeln!(w, "{:<20} {c}", f.to_string());
                }
                let strata: Vec<String> = assign.strata().iter().map(|(k, v)| format!("{k}:{}", v.len())).collect();
                let _ = writeln!(w, "strata (size:count) {}", strata.join(" "));
                let hist: Vec<String> = histogram.counts.iter().map(|(k, v)| format!("{k}:{v}")).collect();
                let _ = writeln!(w, "fiber sizes (size:count) {}", hist.join(" "));
                let _ = writeln!(w, "largest fiber {} (bound {})", histogram.max, histogram.bound);
                for s in shapes {
                    let members: Vec<String> = s.members().iter().map(|m| m.to_string()).collect();
                    let _ = writeln!(w, "  T={:<12} {:<9} {}", s.core().to_string(), s.kind(), members.join(" "));
                }
            }
            Report::Sunflower { family, p, threshold, found } => {
                let _ = writeln!(w, "k={} size={} p={p} threshold={threshold}", family.k(), family.len());
                match found {
                    Some(s) => {
                        let petals: Vec<String> = s.petals.iter().map(|m| m.to_string()).collect();
                        let _ = writeln!(w, "core {}  petals {}", s.core, petals.join(" "));
                    }
                    None => {
                        let _ = writeln!(w, "no {p}-sunflower found");
                    }
                }
            }
            Report::Pipeline(r) => pipeline_table(w, r),
            Report::Search(r) => {
                let _ = writeln!(w, "mode {}  n={} d={}", mode_name(r.mode), r.n, r.d);
                let _ = writeln!(w, "best {}  optimal {}  nodes ~{}  {} ms", r.best, r.optimal, r.nodes, r.wall_time.as_millis());
                if let (Some(t), Some(hit)) = (r.target, r.target_reached) {
                    let _ = writeln!(w, "target {t} {}", if hit { "reached" } else { "NOT reached" });
                }
                let b = &r.bracket;
                let _ = writeln!(
                    w,
                    "bracket [{}, {}]{}",
                    b.lower,
                    b.upper,
                    if b.applies { "" } else { " (not applicable: needs d >= 2, n >= 2(d+1))" }
                );
                if let Some(c) = r.conjecture_bound {
                    let _ = writeln!(w, "conjectured ceiling C(n-1,d) = {c}{}", if r.conjecture_counterexample { "  EXCEEDED" } else { "" });
                }
                for m in r.witness.members() {
                    let _ = writeln!(w, "  {}", m.to_line());
                }
            }
            Report::Fuzz(s) => {
                let _ = writeln!(w, "{:>3} {:>2} {:>8} {:>8} {:>6} {:>6} {:>6} {:>6}", "n", "d", "passed", "failed", "|F|max", "fiber", "column", "slack");
                for c in &s.cells {
                    let slack = c.min_slack.map_or("-".into(), |x| x.to_string());
                    let _ = writeln!(w, "{:>3} {:>2} {:>8} {:>8} {:>6} {:>6} {:>6} {:>6}", c.n, c.d, c.passed, c.failed, c.max_size, c.max_fiber, c.max_column, slack);
                }
                let _ = writeln!(w, "total {} passed {} failed {}", s.total(), s.passed(), s.failed());
                for f in &s.failures {
                    let _ = writeln!(w, "FAIL n={} d={} seed={}: {} ({})", f.n, f.d, f.seed, f.error, f.family_file.display());
                }
            }
        }
        out
    }
}

fn pipeline_table(w: &mut String, r: &PartitionReport) {
    let p = &r.partition;
    let s = &r.audit.sizes;
    let _ = writeln!(w, "anchors i={} j={}   V = {}", p.anchors.0, p.anchors.1, p.v);
    let _ = writeln!(w, "|F| = {} = |F1| {} + |F2| {} + |F3| {}   (pair members {})", s.family, s.f1, s.f2, s.f3, s.pairs);
    let counts: Vec<String> = [MemberClass::H0Star, MemberClass::H11, MemberClass::H12, MemberClass::Kd, MemberClass::Kd1]
        .iter()
        .map(|&c| format!("{} {}", c.label(), p.class_members(c).count()))
        .collect();
    let _ = writeln!(w, "classes  {}", counts.join("  "));
    let _ = writeln!(w, "|S| = {}   largest column sum {}/2 half-units", s.index, r.max_column);
    let _ = writeln!(w, "audit chain");
    for q in &r.audit.asserted {
        let _ = writeln!(w, "  {:<14} {:>6} {:<2} {:<6} {}", q.name, q.lhs, q.relation, q.rhs, if q.holds { "ok" } else { "FAILS" });
    }
    let _ = writeln!(
        w,
        "  |F| {} <= |F1|+|F2| {} + C(n-1,d) {} - |co-shadow(F3) in V| {}   slack {}",
        s.family,
        s.f1 + s.f2,
        s.binom_n1_d,
        s.co_shadow_f3_v,
        r.audit.slack
    );
    let _ = writeln!(w, "reported");
    for q in &r.audit.reported {
        let ratio = q.ratio.map_or("-".into(), |x| x.to_string());
        let _ = writeln!(w, "  {:<32} {:>8} / {:<8} = {}", q.name, q.lhs.to_string(), q.rhs.to_string(), ratio);
    }
    let _ = writeln!(w, "{:<20} {:<7} {:<20} g", "member", "class", "f (index:half-units)");
    for (&f, class) in &p.classes {
        let coeffs: Vec<String> = r.f[&f].entries.iter().map(|&(i, h)| format!("{}:{h}", r.index.get(i))).collect();
        let _ = writeln!(w, "{:<20} {:<7} {:<20} {}", f.to_string(), class.label(), coeffs.join(" "), r.index.get(r.g[&f]));
    }
}
