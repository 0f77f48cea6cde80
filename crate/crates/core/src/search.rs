//! Branch-and-bound for the largest (d+1)-uniform family over `[n]` of
//! VC-dimension at most `d`, plus two variants: stop at a target size
//! (lower-bound witnesses) and require certificates of one fixed order.
//!
//! Candidates are the (d+1)-subsets in canonical order. A node is a family
//! together with the list of later candidates still addable to it; since
//! addability is hereditary, a candidate filtered out once never returns on
//! that branch. The bound is `|family| + |addable|`, capped at `C(n, d)`.
//!
//! The tree is split into independent tasks at a shallow depth and run on a
//! rayon pool. Ties between equally good incumbents go to the lower task index
//! and, inside a task, to the first family in depth-first order, so the
//! reported witness does not depend on the schedule or thread count.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::certificates::RealizedTraces;
use crate::constructions::star_family;
use crate::error::{Error, Result};
use crate::family::UniformFamily;
use crate::shatter::{frankl_pach_bound, vc_dimension};
use crate::subset::{binomial, binomial_signed, k_subsets, SubsetWord, MAX_GROUND};
use crate::trace_state::{CertificateRule, TraceState, MAX_TRACE_K};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Exact,
    Witness { target: u64 },
    /// every member must keep a certificate of exactly this size
    CertificateOrder { s: u8 },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub timeout: Option<Duration>,
    /// 0 = rayon's default
    pub threads: usize,
}

/// The known range for the extremal size, valid when `n >= 2(d+1)` and `d >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bracket {
    /// `C(n-1, d) + C(n-4, d-2)`
    pub lower: u64,
    /// `C(n, d) - 1`
    pub upper: u64,
    pub applies: bool,
}

impl Bracket {
    pub fn new(n: u8, d: u8) -> Self {
        let (n64, d64) = (n as i64, d as i64);
        Bracket {
            lower: binomial_signed(n64 - 1, d64) + binomial_signed(n64 - 4, d64 - 2),
            upper: binomial(n as u64, d as u64).saturating_sub(1),
            applies: d >= 2 && n as u16 >= 2 * (d as u16 + 1),
        }
    }

    pub fn contains(&self, v: u64) -> bool {
        (self.lower..=self.upper).contains(&v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub n: u8,
    pub d: u8,
    pub mode: SearchMode,
    pub best: u64,
    pub witness: UniformFamily,
    /// the whole tree was explored (never set in witness mode)
    pub optimal: bool,
    pub nodes: u64,
    pub wall_time: Duration,
    pub target: Option<u64>,
    pub target_reached: Option<bool>,
    pub bracket: Bracket,
    /// `C(n-1, d)`, the conjectured ceiling for order-s certificates
    pub conjecture_bound: Option<u64>,
    /// `best` exceeds the ceiling with `n >= 2(d+1)`, where it is claimed
    pub conjecture_counterexample: bool,
}

impl SearchResult {
    pub fn budget_exhausted(&self) -> bool {
        match self.mode {
            SearchMode::Witness { .. } => self.target_reached == Some(false),
            _ => !self.optimal,
        }
    }
}

fn check_params(n: u8, d: u8) -> Result<()> {
    let k = d as usize + 1;
    if n == 0 || n > MAX_GROUND || k > n as usize {
        return Err(Error::usage(format!("search needs 1 <= d+1 <= n <= 63, got n={n}, d={d}")));
    }
    if k > MAX_TRACE_K {
        return Err(Error::usage(format!("search supports d+1 <= {MAX_TRACE_K}")));
    }
    Ok(())
}

/// Largest family with VC-dimension at most `d`.
pub fn exact_max(n: u8, d: u8, budget: Budget) -> Result<SearchResult> {
    check_params(n, d)?;
    run(n, d, SearchMode::Exact, budget)
}

/// Searches for a family of size at least `target` (default
/// `C(n-1, d) + C(n-4, d-2)`), starting from the star as the incumbent.
pub fn lower_bound_witness(n: u8, d: u8, target: Option<u64>, budget: Budget) -> Result<SearchResult> {
    check_params(n, d)?;
    let target = target.unwrap_or_else(|| Bracket::new(n, d).lower);
    run(n, d, SearchMode::Witness { target }, budget)
}

/// Largest family in which every member has a certificate of size exactly `s`.
pub fn certificate_order_max(n: u8, d: u8, s: u8, budget: Budget) -> Result<SearchResult> {
    check_params(n, d)?;
    if s > d {
        return Err(Error::usage(format!("certificate order {s} exceeds d = {d}")));
    }
    run(n, d, SearchMode::CertificateOrder { s }, budget)
}

struct Task {
    prefix: Vec<u64>,
    candidates: Vec<u64>,
}

/// Incumbent keys order by value, then by lower task index.
fn key(value: u64, task: u32) -> u64 {
    (value << 32) | (u32::MAX - task) as u64
}

struct Shared {
    mode: SearchMode,
    rule: CertificateRule,
    ceiling: u64,
    best_key: AtomicU64,
    best: Mutex<(u64, Vec<u64>)>,
    /// witness mode: lowest task that reached the target
    found_task: AtomicU64,
    nodes: AtomicU64,
    aborted: AtomicBool,
    max_nodes: u64,
    deadline: Option<Instant>,
}

impl Shared {
    fn offer(&self, family: &[u64], task: u32) {
        let k = key(family.len() as u64, task);
        if k <= self.best_key.load(Ordering::Relaxed) {
            return;
        }
        let mut best = self.best.lock().unwrap();
        if k > best.0 {
            *best = (k, family.to_vec());
            self.best_key.store(k, Ordering::Relaxed);
        }
    }

    fn prune(&self, bound: u64, task: u32) -> bool {
        match self.mode {
            SearchMode::Witness { target } => {
                bound < target || self.found_task.load(Ordering::Relaxed) < task as u64
            }
            _ => self.best_key.load(Ordering::Relaxed) >= key(bound, task),
        }
    }

    /// Counts a node; false once the budget is gone.
    fn tick(&self) -> bool {
        if self.aborted.load(Ordering::Relaxed) {
            return false;
        }
        let done = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over_nodes = done > self.max_nodes;
        let over_time = done.is_multiple_of(1024) && self.deadline.is_some_and(|t| Instant::now() >= t);
        if over_nodes || over_time {
            self.aborted.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }
}

/// Depth-first worker. Returns true when the task should stop (target hit).
fn dfs(state: &mut TraceState, candidates: &[u64], shared: &Shared, task: u32) -> bool {
    if !shared.tick() {
        return true;
    }
    let len = state.len() as u64;
    if let SearchMode::Witness { target } = shared.mode {
        if len >= target {
            shared.offer(state.members(), task);
            shared.found_task.fetch_min(task as u64, Ordering::Relaxed);
            return true;
        }
    } else {
        shared.offer(state.members(), task);
    }
    for (idx, &g) in candidates.iter().enumerate() {
        let bound = (len + (candidates.len() - idx) as u64).min(shared.ceiling);
        if shared.prune(bound, task) {
            return false;
        }
        state.push(g);
        let next: Vec<u64> = candidates[idx + 1..]
            .iter()
            .copied()
            .filter(|&c| state.can_add(c))
            .collect();
        let stop = dfs(state, &next, shared, task);
        state.pop();
        if stop {
            return true;
        }
    }
    false
}

/// Cuts the tree at `depth` below the root into tasks, in depth-first order.
/// An interior node is dominated by any of its children, so only the frontier
/// is kept. The root only branches on its first candidate: any non-empty
/// family can be relabeled to contain it.
fn split(k: usize, rule: CertificateRule, all: &[u64], depth: usize) -> Vec<Task> {
    fn go(state: &mut TraceState, cands: &[u64], depth: usize, out: &mut Vec<Task>) {
        if depth == 0 || cands.is_empty() {
            out.push(Task {
                prefix: state.members().to_vec(),
                candidates: cands.to_vec(),
            });
            return;
        }
        for (idx, &g) in cands.iter().enumerate() {
            state.push(g);
            let next: Vec<u64> = cands[idx + 1..]
                .iter()
                .copied()
                .filter(|&c| state.can_add(c))
                .collect();
            go(state, &next, depth - 1, out);
            state.pop();
        }
    }
    let mut out = Vec::new();
    let mut state = TraceState::new(k, rule);
    if let Some(&first) = all.first() {
        state.push(first);
        let next: Vec<u64> = all[1..].iter().copied().filter(|&c| state.can_add(c)).collect();
        go(&mut state, &next, depth, &mut out);
    }
    out
}

fn run(n: u8, d: u8, mode: SearchMode, budget: Budget) -> Result<SearchResult> {
    let start = Instant::now();
    let k = d as usize + 1;
    let rule = match mode {
        SearchMode::CertificateOrder { s } => CertificateRule::Order(s as usize),
        _ => CertificateRule::Any,
    };
    let bracket = Bracket::new(n, d);
    let ceiling = frankl_pach_bound(n as u64, d as u64);
    let all: Vec<u64> = k_subsets(n, k).map(SubsetWord::bits).collect();

    let shared = Shared {
        mode,
        rule,
        ceiling,
        best_key: AtomicU64::new(0),
        best: Mutex::new((0, Vec::new())),
        found_task: AtomicU64::new(u64::MAX),
        nodes: AtomicU64::new(0),
        aborted: AtomicBool::new(false),
        max_nodes: budget.max_nodes.unwrap_or(u64::MAX),
        deadline: budget.timeout.map(|t| start + t),
    };

    let mut early_star = None;
    if let SearchMode::Witness { target } = mode {
        // The star is the baseline incumbent; it may already be enough.
        if let Ok(star) = star_family(n, d) {
            let words: Vec<u64> = star.iter().map(|m| m.bits()).collect();
            *shared.best.lock().unwrap() = (key(words.len() as u64, u32::MAX), words);
            shared.best_key.store(key(star.len() as u64, u32::MAX), Ordering::Relaxed);
            if star.len() as u64 >= target {
                early_star = Some(star);
            }
        }
    }

    if early_star.is_none() {
        let depth = if all.len() > 24 { 2 } else { 1 };
        let tasks = split(k, shared.rule, &all, depth);
        let work = || {
            tasks.par_iter().enumerate().for_each(|(t, task)| {
                let t = t as u32;
                let mut state = TraceState::new(k, shared.rule);
                for &g in &task.prefix {
                    state.push(g);
                }
                dfs(&mut state, &task.candidates, &shared, t);
            })
        };
        if budget.threads > 0 {
            rayon::ThreadPoolBuilder::new()
                .num_threads(budget.threads)
                .build()
                .map_err(|e| Error::usage(format!("thread pool: {e}")))?
                .install(work);
        } else {
            work();
        }
    }

    let (_, words) = shared.best.into_inner().unwrap();
    let witness = UniformFamily::from_raw_words(n, k as u8, words);
    let best = witness.len() as u64;
    let aborted = shared.aborted.load(Ordering::Relaxed);
    let nodes = shared.nodes.load(Ordering::Relaxed);

    let (optimal, target, target_reached) = match mode {
        SearchMode::Witness { target } => (false, Some(target), Some(best >= target)),
        _ => (!aborted, None, None),
    };
    let (conjecture_bound, conjecture_counterexample) = match mode {
        SearchMode::CertificateOrder { .. } => {
            let c = binomial(n as u64 - 1, d as u64);
            (Some(c), best > c && n as u16 >= 2 * (d as u16 + 1))
        }
        _ => (None, false),
    };

    verify_witness(&witness, d, mode)?;
    if optimal && bracket.applies && mode == SearchMode::Exact && !bracket.contains(best) {
        return Err(Error::violation(
            "search-bracket",
            format!(
                "optimum {best} for n={n}, d={d} outside [{}, {}]",
                bracket.lower, bracket.upper
            ),
        ));
    }

    Ok(SearchResult {
        n,
        d,
        mode,
        best,
        witness,
        optimal,
        nodes,
        wall_time: start.elapsed(),
        target,
        target_reached,
        bracket,
        conjecture_bound,
        conjecture_counterexample,
    })
}

/// Independent re-check of a witness with the plain oracles.
fn verify_witness(w: &UniformFamily, d: u8, mode: SearchMode) -> Result<()> {
    if vc_dimension(w) > d as i32 {
        return Err(Error::violation(
            "search-witness",
            format!("witness of size {} has VC-dimension {}", w.len(), vc_dimension(w)),
        ));
    }
    if let SearchMode::CertificateOrder { s } = mode {
        for &f in w {
            if !RealizedTraces::collect(f, w)?.has_certificate_of_size(s as usize) {
                return Err(Error::violation(
                    "search-witness",
                    format!("member {f} has no certificate of size {s}"),
                ));
            }
        }
    }
    Ok(())
}
