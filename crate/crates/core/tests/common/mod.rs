//! Brute-force reference implementations over bitmasks, independent of the
//! library's set-based code, plus random context generators.
#![allow(dead_code)]

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use triex_core::{AttrSet, FormalContext, ImplicationSet, TriadicContext};

pub fn mask(set: &AttrSet) -> u32 {
    set.iter().fold(0, |acc, &i| acc | (1 << i))
}

pub fn unmask(bits: u32) -> AttrSet {
    (0..32).filter(|i| bits >> i & 1 == 1).collect()
}

pub fn full(n: usize) -> u32 {
    (1u32 << n) - 1
}

/// `x''` over the rows: intersection of all rows containing `x`.
pub fn closure(rows: &[u32], x: u32, n: usize) -> u32 {
    rows.iter()
        .filter(|&&r| r & x == x)
        .fold(full(n), |acc, &r| acc & r)
}

/// Forward chaining over `(premise, conclusion)` masks.
pub fn horn_closure(imps: &[(u32, u32)], x: u32) -> u32 {
    let mut out = x;
    loop {
        let next = imps
            .iter()
            .filter(|(p, _)| p & out == *p)
            .fold(out, |acc, (_, c)| acc | c);
        if next == out {
            return out;
        }
        out = next;
    }
}

pub fn masks_of(l: &ImplicationSet) -> Vec<(u32, u32)> {
    l.iter()
        .map(|i| (mask(&i.premise), mask(&i.conclusion)))
        .collect()
}

pub fn rows_of(ctx: &FormalContext) -> Vec<u32> {
    ctx.rows().iter().map(mask).collect()
}

/// Rows of the subposition of the slices of `t` under the conditions in
/// `d` (a bitmask over conditions).
pub fn triadic_rows(t: &TriadicContext, d: u32) -> Vec<u32> {
    let mut out = Vec::new();
    for g in 0..t.objects().len() {
        for b in 0..t.conditions().len() {
            if d >> b & 1 == 1 {
                out.push(mask(t.row(g, b)));
            }
        }
    }
    out
}

/// `l` generates exactly the implication theory of `rows`: for every premise
/// the closures coincide.
pub fn same_theory(l: &[(u32, u32)], rows: &[u32], n: usize) -> bool {
    (0..=full(n)).all(|x| horn_closure(l, x) == closure(rows, x, n))
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// A random dyadic context with the given sizes and density.
pub fn random_dyadic(rng: &mut ChaCha8Rng, g: usize, m: usize, p: f64) -> FormalContext {
    let rows = (0..g)
        .map(|_| (0..m).filter(|_| rng.random_bool(p)).collect())
        .collect();
    FormalContext::from_rows(names("g", g), names("m", m), rows).unwrap()
}

/// A random triadic context with `|G| ≤ max_g`, `1 ≤ |M| ≤ max_m`,
/// `1 ≤ |B| ≤ max_b`.
pub fn random_triadic(
    rng: &mut ChaCha8Rng,
    max_g: usize,
    max_m: usize,
    max_b: usize,
) -> TriadicContext {
    let g = rng.random_range(0..=max_g);
    let m = rng.random_range(1..=max_m);
    let b = rng.random_range(1..=max_b);
    let p = rng.random_range(0.2..0.8);
    let mut triples = Vec::new();
    for gi in 0..g {
        for mi in 0..m {
            for bi in 0..b {
                if rng.random_bool(p) {
                    triples.push((gi, mi, bi));
                }
            }
        }
    }
    TriadicContext::new(names("g", g), names("m", m), names("c", b), triples).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn dyadic_strategy(max_g: usize, max_m: usize) -> impl Strategy<Value = FormalContext> {
    (0..=max_g, 1..=max_m).prop_flat_map(|(g, m)| {
        prop::collection::vec(prop::collection::btree_set(0..m, 0..=m), g).prop_map(move |rows| {
            FormalContext::from_rows(names("g", g), names("m", m), rows).unwrap()
        })
    })
}

pub fn triadic_strategy(
    max_g: usize,
    max_m: usize,
    max_b: usize,
) -> impl Strategy<Value = TriadicContext> {
    (0..=max_g, 1..=max_m, 1..=max_b).prop_flat_map(|(g, m, b)| {
        prop::collection::vec(
            prop::collection::vec(prop::collection::btree_set(0..m, 0..=m), b),
            g,
        )
        .prop_map(move |table| {
            let triples: Vec<_> = table
                .iter()
                .enumerate()
                .flat_map(|(gi, per_b)| {
                    per_b
                        .iter()
                        .enumerate()
                        .flat_map(move |(bi, row)| row.iter().map(move |&mi| (gi, mi, bi)))
                })
                .collect();
            TriadicContext::new(names("g", g), names("m", m), names("c", b), triples).unwrap()
        })
    })
}

pub fn empty_like(t: &TriadicContext) -> TriadicContext {
    TriadicContext::empty(t.attributes().to_vec(), t.conditions().to_vec()).unwrap()
}
