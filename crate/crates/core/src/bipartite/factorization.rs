//! Unordered 1-factorizations of regular bipartite graphs.
//!
//! For a `k`-regular graph `B` and any edge `e`, every 1-factorization has
//! exactly one factor through `e`, so `m(B) = sum m(B - F)` over the 1-factors
//! `F` containing `e`. Values are memoized per isomorphism class under the
//! full canonical key.

use std::io::{BufRead, Write};

use dashmap::DashMap;
use num_bigint::BigUint;
use num_traits::One;

use super::canon::{canonical_parts, CanonicalKey};
use super::matching::for_each_factor_through;
use super::{BipartiteGraph, Edge, GraphError};

pub const MAX_FACTORIZATION_N: usize = 11;

/// Which edge of the canonical representative the recursion branches on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EdgeRule {
    /// Lowest symbol of the first nonempty row.
    #[default]
    Canonical,
    /// A pseudo-random edge chosen from the seed and the class key.
    Seeded(u64),
}

/// Class key -> number of 1-factorizations. Safe to share between threads;
/// concurrent duplicate evaluation of a key stores the same value.
#[derive(Default)]
pub struct FactorizationMemo {
    map: DashMap<CanonicalKey, BigUint>,
}

impl FactorizationMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&self, key: &CanonicalKey) -> Option<BigUint> {
        self.map.get(key).map(|v| v.clone())
    }

    pub fn insert(&self, key: CanonicalKey, value: BigUint) {
        self.map.entry(key).or_insert(value);
    }

    /// Writes one `<hex key> <decimal count>` line per entry, sorted by key.
    pub fn save<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let mut entries: Vec<(CanonicalKey, BigUint)> =
            self.map.iter().map(|e| (e.key().clone(), e.value().clone())).collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        for (k, v) in entries {
            writeln!(out, "{} {}", k.to_hex(), v)?;
        }
        out.flush()
    }

    /// Reads records written by [`save`](Self::save) into this memo.
    pub fn load<R: BufRead>(&self, input: R) -> Result<usize, GraphError> {
        let mut count = 0;
        for (i, line) in input.lines().enumerate() {
            let line = line.map_err(|e| GraphError::Parse { line: i + 1, message: e.to_string() })?;
            let (key, value) = parse_memo_line(&line).map_err(|message| GraphError::Parse { line: i + 1, message })?;
            self.insert(key, value);
            count += 1;
        }
        Ok(count)
    }
}

/// Parses one memo-cache record `<hex of canonical key> <decimal m>`.
pub(crate) fn parse_memo_line(line: &str) -> Result<(CanonicalKey, BigUint), String> {
    let mut parts = line.split(' ');
    let (Some(hex), Some(dec), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err("expected \"<hex key> <decimal count>\"".into());
    };
    let key = CanonicalKey::from_hex(hex).map_err(|e| e.to_string())?;
    if dec.is_empty() || !dec.bytes().all(|b| b.is_ascii_digit()) || (dec.len() > 1 && dec.starts_with('0')) {
        return Err(format!("bad decimal count {dec:?}"));
    }
    let value = BigUint::parse_bytes(dec.as_bytes(), 10).ok_or_else(|| format!("bad decimal count {dec:?}"))?;
    Ok((key, value))
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn select(rows: &[u32], rule: EdgeRule) -> Option<Edge> {
    let edges = rows.iter().map(|r| r.count_ones() as usize).sum::<usize>();
    if edges == 0 {
        return None;
    }
    let mut target = match rule {
        EdgeRule::Canonical => 0,
        EdgeRule::Seeded(seed) => {
            let h = rows.iter().fold(splitmix(seed), |h, &r| splitmix(h ^ r as u64));
            (h % edges as u64) as usize
        }
    };
    for (column, &r) in rows.iter().enumerate() {
        let c = r.count_ones() as usize;
        if target < c {
            let mut m = r;
            for _ in 0..target {
                m &= m - 1;
            }
            return Some(Edge { column, symbol: m.trailing_zeros() as usize });
        }
        target -= c;
    }
    unreachable!("target below edge count")
}

/// The edge the recursion branches on: for the canonical rule, the first set
/// bit of the first nonempty row of `g`. Deterministic.
pub fn edge_select(g: &BipartiteGraph, rule: EdgeRule) -> Result<Edge, GraphError> {
    select(g.rows(), rule).ok_or(GraphError::EmptyGraph)
}

/// `m(B)` with the canonical edge rule.
pub fn factorization_count(g: &BipartiteGraph, memo: &FactorizationMemo) -> Result<BigUint, GraphError> {
    factorization_count_with(g, memo, EdgeRule::Canonical)
}

pub fn factorization_count_with(
    g: &BipartiteGraph,
    memo: &FactorizationMemo,
    rule: EdgeRule,
) -> Result<BigUint, GraphError> {
    if g.degree().is_none() {
        return Err(GraphError::NotRegular);
    }
    if g.n() > MAX_FACTORIZATION_N {
        return Err(GraphError::BudgetExceeded(format!(
            "1-factorization counts limited to n <= {MAX_FACTORIZATION_N}"
        )));
    }
    Ok(count(g.n(), g.rows(), g.degree().expect("checked"), memo, rule))
}

fn count(n: usize, rows: &[u32], k: usize, memo: &FactorizationMemo, rule: EdgeRule) -> BigUint {
    match k {
        0 | 1 => return BigUint::one(),
        // A union of c even cycles has 2^(c-1) unordered factorizations into two matchings.
        2 => {
            let g = BipartiteGraph::with_rows_unchecked(n, rows.to_vec(), Some(2));
            return BigUint::one() << (g.component_count() - 1);
        }
        _ => {}
    }
    let g = BipartiteGraph::with_rows_unchecked(n, rows.to_vec(), Some(k));
    let (key, _, _) = canonical_parts(&g);
    if let Some(v) = memo.get(&key) {
        return v;
    }
    let canon = key.rows();
    let e = select(&canon, rule).expect("k >= 3 graph has edges");
    let mut total = BigUint::default();
    let mut rest = canon.clone();
    for_each_factor_through(n, &canon, e, |m| {
        for (i, &j) in m.iter().enumerate() {
            rest[i] = canon[i] & !(1 << j);
        }
        total += count(n, &rest, k - 1, memo, rule);
    });
    memo.insert(key, total.clone());
    total
}
