//! Brute-force oracles. Deliberately naive and independent of the library:
//! sets are plain `u64` masks with element `e` at bit `e`.
#![allow(dead_code)]

use std::collections::HashSet;

pub fn ground(n: u8) -> u64 {
    ((1u64 << n) - 1) << 1
}

/// All subsets of `[n]` with exactly `k` elements, by filtering every mask.
pub fn all_k_sets(n: u8, k: u32) -> Vec<u64> {
    (0u64..1 << n).map(|m| m << 1).filter(|m| m.count_ones() == k).collect()
}

pub fn choose(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![1u64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row[k as usize]
}

pub fn shattered(s: u64, members: &[u64]) -> bool {
    let traces: HashSet<u64> = members.iter().map(|&m| m & s).collect();
    traces.len() as u64 == 1u64 << s.count_ones()
}

/// Largest shattered subset of `[n]`, trying every subset; -1 for no members.
pub fn vc(n: u8, members: &[u64]) -> i32 {
    if members.is_empty() {
        return -1;
    }
    (0u64..1 << n)
        .map(|m| m << 1)
        .filter(|&s| shattered(s, members))
        .map(|s| s.count_ones() as i32)
        .max()
        .unwrap()
}

/// Does `t ⊊ f` fail to be a trace of every member on `f`?
pub fn is_certificate(t: u64, f: u64, members: &[u64]) -> bool {
    t & !f == 0 && t != f && members.iter().all(|&m| m & f != t)
}

fn subsets_of(f: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut s = f;
    loop {
        out.push(s);
        if s == 0 {
            break;
        }
        s = (s - 1) & f;
    }
    out
}

pub fn max_certificate_len(f: u64, members: &[u64]) -> Option<u32> {
    subsets_of(f)
        .into_iter()
        .filter(|&t| is_certificate(t, f, members))
        .map(u64::count_ones)
        .max()
}

pub fn has_order_certificate(f: u64, s: u32, members: &[u64]) -> bool {
    subsets_of(f)
        .into_iter()
        .any(|t| t.count_ones() == s && is_certificate(t, f, members))
}

/// Largest subfamily of `C([n], d+1)` with VC-dimension at most `d`, over all
/// `2^C(n,d+1)` subfamilies. A family of `(d+1)`-sets has VC-dimension `<= d`
/// iff no `(d+1)`-set is shattered; the trace pattern on each such set is a
/// `2^(d+1)`-bit mask, OR-ed from two precomputed half tables.
pub fn brute_max(n: u8, d: u8) -> u64 {
    let k = d as u32 + 1;
    let cands = all_k_sets(n, k);
    let m = cands.len();
    assert!(m <= 22, "brute force only at desk scale");
    assert!(k <= 6);
    let full_pattern: u64 = if k == 6 { u64::MAX } else { (1u64 << (1u64 << k)) - 1 };
    let lo_bits = m / 2;
    let hi_bits = m - lo_bits;
    // per (d+1)-set S: table of OR-ed trace patterns for each half-mask
    let tables: Vec<(Vec<u64>, Vec<u64>)> = cands
        .iter()
        .map(|&s| {
            let local = |t: u64| {
                let mut idx = 0u32;
                let mut bit = 0;
                for e in 1..=n {
                    if s >> e & 1 == 1 {
                        if t >> e & 1 == 1 {
                            idx |= 1 << bit;
                        }
                        bit += 1;
                    }
                }
                1u64 << idx
            };
            let pat: Vec<u64> = cands.iter().map(|&c| local(c & s)).collect();
            let build = |offset: usize, width: usize| {
                (0u32..1 << width)
                    .map(|mask| {
                        (0..width).filter(|b| mask >> b & 1 == 1).fold(0u64, |acc, b| acc | pat[offset + b])
                    })
                    .collect::<Vec<u64>>()
            };
            (build(0, lo_bits), build(lo_bits, hi_bits))
        })
        .collect();
    let mut best = 0u32;
    for fam in 0u32..1 << m {
        let size = fam.count_ones();
        if size <= best {
            continue;
        }
        let (lo, hi) = ((fam & ((1 << lo_bits) - 1)) as usize, (fam >> lo_bits) as usize);
        if tables.iter().all(|(tl, th)| tl[lo] | th[hi] != full_pattern) {
            best = size;
        }
    }
    best as u64
}

/// Largest subfamily of `C([n], d+1)` in which every member has a certificate
/// of size exactly `s`, over all subfamilies.
pub fn brute_order_max(n: u8, d: u8, s: u32) -> u64 {
    let cands = all_k_sets(n, d as u32 + 1);
    assert!(cands.len() <= 16);
    let mut best = 0;
    for fam in 0u32..1 << cands.len() {
        let size = fam.count_ones() as u64;
        if size <= best {
            continue;
        }
        let members: Vec<u64> = (0..cands.len()).filter(|b| fam >> b & 1 == 1).map(|b| cands[b]).collect();
        if members.iter().all(|&f| has_order_certificate(f, s, &members)) {
            best = size;
        }
    }
    best
}

/// Words of a library family, as plain masks.
pub fn masks(fam: &vcx_core::UniformFamily) -> Vec<u64> {
    fam.iter().map(|m| m.bits()).collect()
}
