use num_bigint::BigUint;

use super::graph::bits;
use super::{BipartiteGraph, Edge, GraphError};

/// A perfect matching: `matching[i]` is the (0-based) symbol vertex matched to column vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OneFactor {
    pub matching: Vec<u8>,
}

impl OneFactor {
    pub fn as_graph(&self) -> BipartiteGraph {
        BipartiteGraph::from_matching(&self.matching.iter().map(|&j| j as usize).collect::<Vec<_>>())
            .expect("matching has side size >= 1")
    }
}

/// Number of perfect matchings (the permanent of the biadjacency matrix),
/// by dynamic programming over the set of used symbol vertices.
pub fn count_perfect_matchings(g: &BipartiteGraph) -> Result<BigUint, GraphError> {
    let n = g.n();
    // `from_rows` already caps n at MAX_SIDE = 16; the table has 2^n entries.
    let mut ways = vec![0u64; 1 << n];
    ways[0] = 1;
    for used in 0u32..(1 << n) {
        let w = ways[used as usize];
        if w == 0 {
            continue;
        }
        let row = used.count_ones() as usize;
        if row == n {
            continue;
        }
        for j in bits(g.rows()[row] & !used) {
            ways[(used | 1 << j) as usize] += w;
        }
    }
    Ok(BigUint::from(ways[(1 << n) - 1]))
}

/// Calls `visit` with every perfect matching of `rows` that uses the edge `e`.
pub(crate) fn for_each_factor_through(n: usize, rows: &[u32], e: Edge, mut visit: impl FnMut(&[u8])) {
    fn go(n: usize, rows: &[u32], row: usize, used: u32, skip: usize, m: &mut [u8], visit: &mut impl FnMut(&[u8])) {
        if row == n {
            visit(m);
            return;
        }
        if row == skip {
            return go(n, rows, row + 1, used, skip, m, visit);
        }
        for j in bits(rows[row] & !used) {
            m[row] = j as u8;
            go(n, rows, row + 1, used | 1 << j, skip, m, visit);
        }
    }
    let mut m = vec![0u8; n];
    m[e.column] = e.symbol as u8;
    go(n, rows, 0, 1 << e.symbol, e.column, &mut m, &mut visit);
}

/// Every 1-factor of `g` containing `e`, each exactly once.
pub fn one_factors_through(g: &BipartiteGraph, e: Edge) -> Result<Vec<OneFactor>, GraphError> {
    if !g.has_edge(e) {
        return Err(GraphError::NotAnEdge(e));
    }
    let mut out = Vec::new();
    for_each_factor_through(g.n(), g.rows(), e, |m| out.push(OneFactor { matching: m.to_vec() }));
    Ok(out)
}

/// `g` with the edges of `f` deleted; a `k`-regular graph becomes `(k-1)`-regular.
pub fn remove_factor(g: &BipartiteGraph, f: &OneFactor) -> Result<BipartiteGraph, GraphError> {
    let n = g.n();
    if f.matching.len() != n {
        return Err(GraphError::FactorNotInGraph);
    }
    let mut seen = 0u32;
    let mut rows = g.rows().to_vec();
    for (i, &j) in f.matching.iter().enumerate() {
        let bit = 1u32.checked_shl(j as u32).unwrap_or(0);
        if bit == 0 || rows[i] & bit == 0 || seen & bit != 0 {
            return Err(GraphError::FactorNotInGraph);
        }
        seen |= bit;
        rows[i] &= !bit;
    }
    Ok(BipartiteGraph::with_rows_unchecked(n, rows, g.degree().map(|k| k - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::latin::Permutation;

    // Oracle: sum over all permutations.
    fn brute_matchings(g: &BipartiteGraph) -> u64 {
        let n = g.n();
        Permutation::all(n)
            .iter()
            .filter(|p| (0..n).all(|i| g.rows()[i] >> (p.apply(i + 1) - 1) & 1 == 1))
            .count() as u64
    }

    fn cycle8() -> BipartiteGraph {
        // c1 s1 c2 s2 c3 s3 c4 s4 c1
        BipartiteGraph::from_rows(4, vec![0b1001, 0b0011, 0b0110, 0b1100]).unwrap()
    }

    #[test]
    fn matching_counts() {
        assert_eq!(count_perfect_matchings(&BipartiteGraph::complete(3)).unwrap(), BigUint::from(6u32));
        assert_eq!(count_perfect_matchings(&cycle8()).unwrap(), BigUint::from(2u32));
        let derangements = BipartiteGraph::from_matching(&[0, 1, 2, 3]).unwrap().complement();
        assert_eq!(brute_matchings(&derangements), 9);
        assert_eq!(count_perfect_matchings(&derangements).unwrap(), BigUint::from(9u32));
        assert_eq!(count_perfect_matchings(&BipartiteGraph::empty(3)).unwrap(), BigUint::from(0u32));
        for m in (0u32..65536).step_by(97) {
            let g = BipartiteGraph::from_rows(4, (0..4).map(|i| (m >> (4 * i)) & 15).collect()).unwrap();
            assert_eq!(count_perfect_matchings(&g).unwrap(), BigUint::from(brute_matchings(&g)));
        }
    }

    #[test]
    fn factors_through_edges() {
        let pm = BipartiteGraph::from_matching(&[2, 0, 1]).unwrap();
        assert_eq!(one_factors_through(&pm, Edge { column: 1, symbol: 0 }).unwrap().len(), 1);
        let k33 = BipartiteGraph::complete(3);
        assert_eq!(one_factors_through(&k33, Edge { column: 0, symbol: 0 }).unwrap().len(), 2);
        for e in cycle8().edges() {
            assert_eq!(one_factors_through(&cycle8(), e).unwrap().len(), 1);
        }
        assert_eq!(
            one_factors_through(&pm, Edge { column: 0, symbol: 0 }),
            Err(GraphError::NotAnEdge(Edge { column: 0, symbol: 0 }))
        );
    }

    #[test]
    fn factors_through_partition_by_vertex() {
        // Summing over the edges at one vertex counts every perfect matching once.
        let g = BipartiteGraph::from_matching(&[0, 1, 2, 3, 4]).unwrap().complement();
        let total: usize = (0..5)
            .filter(|&j| g.rows()[2] >> j & 1 == 1)
            .map(|j| one_factors_through(&g, Edge { column: 2, symbol: j }).unwrap().len())
            .sum();
        assert_eq!(BigUint::from(total), count_perfect_matchings(&g).unwrap());
    }

    #[test]
    fn removing_factors() {
        let pm = BipartiteGraph::from_matching(&[1, 0]).unwrap();
        let f = OneFactor { matching: vec![1, 0] };
        assert_eq!(remove_factor(&pm, &f).unwrap(), BipartiteGraph::empty(2));
        let k22 = BipartiteGraph::complete(2);
        let id = OneFactor { matching: vec![0, 1] };
        assert_eq!(remove_factor(&k22, &id).unwrap(), pm);
        let hex = remove_factor(&BipartiteGraph::complete(3), &OneFactor { matching: vec![0, 1, 2] }).unwrap();
        assert_eq!(hex.rows(), &[0b110, 0b101, 0b011]);
        assert_eq!(hex.degree(), Some(2));
        assert_eq!(hex.component_count(), 1);
        assert_eq!(remove_factor(&pm, &id), Err(GraphError::FactorNotInGraph));
        assert_eq!(remove_factor(&k22, &OneFactor { matching: vec![0, 0] }), Err(GraphError::FactorNotInGraph));
    }
}
