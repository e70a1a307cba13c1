use std::fmt;

use super::GraphError;

/// Largest side size. Vertex sets of both sides fit one `u32`.
pub const MAX_SIDE: usize = 16;

/// An edge `c_{column+1} -- s_{symbol+1}` (0-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub column: usize,
    pub symbol: usize,
}

/// Bipartite graph given by its biadjacency rows: bit `j` of `rows[i]` is set
/// iff `c_{i+1}` is adjacent to `s_{j+1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    n: usize,
    rows: Vec<u32>,
    degree: Option<usize>,
}

impl BipartiteGraph {
    pub fn from_rows(n: usize, rows: Vec<u32>) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_SIDE {
            return Err(GraphError::Invalid(format!("side size {n} outside 1..={MAX_SIDE}")));
        }
        if rows.len() != n {
            return Err(GraphError::Invalid(format!("{} rows for side size {n}", rows.len())));
        }
        let width = width_mask(n);
        if rows.iter().any(|&r| r & !width != 0) {
            return Err(GraphError::Invalid("bits set beyond the side width".into()));
        }
        let degree = regular_degree(n, &rows);
        Ok(BipartiteGraph { n, rows, degree })
    }

    pub fn empty(n: usize) -> Self {
        Self::from_rows(n, vec![0; n]).expect("valid side size")
    }

    pub fn complete(n: usize) -> Self {
        Self::from_rows(n, vec![width_mask(n); n]).expect("valid side size")
    }

    /// `c_i -- s_{p(i)}` for a 0-based permutation `p`.
    pub fn from_matching(matching: &[usize]) -> Result<Self, GraphError> {
        let n = matching.len();
        Self::from_rows(n, matching.iter().map(|&j| 1u32.checked_shl(j as u32).unwrap_or(0)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Common degree, when the graph is regular.
    pub fn degree(&self) -> Option<usize> {
        self.degree
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        e.column < self.n && e.symbol < self.n && self.rows[e.column] >> e.symbol & 1 == 1
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.rows.iter().enumerate().flat_map(|(column, &r)| {
            (0..self.n).filter(move |&j| r >> j & 1 == 1).map(move |symbol| Edge { column, symbol })
        })
    }

    /// Column masks: bit `i` of entry `j` is set iff `c_{i+1} -- s_{j+1}`.
    pub fn columns(&self) -> Vec<u32> {
        transpose_rows(self.n, &self.rows)
    }

    /// Complement within `K_{n,n}`; degree `k` becomes `n - k`.
    pub fn complement(&self) -> BipartiteGraph {
        let w = width_mask(self.n);
        BipartiteGraph {
            n: self.n,
            rows: self.rows.iter().map(|r| !r & w).collect(),
            degree: self.degree.map(|k| self.n - k),
        }
    }

    /// Exchanges the roles of `C` and `S`.
    pub fn transpose(&self) -> BipartiteGraph {
        BipartiteGraph { n: self.n, rows: self.columns(), degree: self.degree }
    }

    /// Renames `c_i` to `c_{col_perm[i]}` and `s_j` to `s_{sym_perm[j]}` (0-based).
    pub fn relabel(&self, col_perm: &[usize], sym_perm: &[usize]) -> BipartiteGraph {
        let mut rows = vec![0u32; self.n];
        for (i, &r) in self.rows.iter().enumerate() {
            let mut img = 0u32;
            for (j, &pj) in sym_perm.iter().enumerate() {
                if r >> j & 1 == 1 {
                    img |= 1 << pj;
                }
            }
            rows[col_perm[i]] = img;
        }
        BipartiteGraph { n: self.n, rows, degree: self.degree }
    }

    pub(crate) fn with_rows_unchecked(n: usize, rows: Vec<u32>, degree: Option<usize>) -> Self {
        debug_assert_eq!(regular_degree(n, &rows), degree);
        BipartiteGraph { n, rows, degree }
    }

    /// Number of connected components (isolated vertices count).
    pub fn component_count(&self) -> usize {
        let n = self.n;
        let cols = self.columns();
        let mut seen_c = 0u32;
        let mut count = 0;
        let mut seen_s = 0u32;
        for start in 0..n {
            if seen_c >> start & 1 == 1 {
                continue;
            }
            count += 1;
            let mut frontier_c = 1u32 << start;
            seen_c |= frontier_c;
            while frontier_c != 0 {
                let mut reach_s = 0u32;
                for i in bits(frontier_c) {
                    reach_s |= self.rows[i];
                }
                let new_s = reach_s & !seen_s;
                seen_s |= new_s;
                let mut reach_c = 0u32;
                for j in bits(new_s) {
                    reach_c |= cols[j];
                }
                frontier_c = reach_c & !seen_c;
                seen_c |= frontier_c;
            }
        }
        count + (width_mask(n) & !seen_s).count_ones() as usize
    }
}

impl fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BipartiteGraph(n={}, k={:?}, rows=[", self.n, self.degree)?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            for j in 0..self.n {
                write!(f, "{}", r >> j & 1)?;
            }
        }
        write!(f, "])")
    }
}

#[inline]
pub(crate) fn width_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

#[inline]
pub(crate) fn bits(mut m: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

pub(crate) fn transpose_rows(n: usize, rows: &[u32]) -> Vec<u32> {
    let mut cols = vec![0u32; n];
    for (i, &r) in rows.iter().enumerate() {
        for j in bits(r) {
            cols[j] |= 1 << i;
        }
    }
    cols
}

fn regular_degree(n: usize, rows: &[u32]) -> Option<usize> {
    let k = rows.first()?.count_ones();
    if rows.iter().any(|r| r.count_ones() != k) {
        return None;
    }
    if transpose_rows(n, rows).iter().any(|c| c.count_ones() != k) {
        return None;
    }
    Some(k as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_examples() {
        let k = BipartiteGraph::complete(4);
        let e = k.complement();
        assert_eq!(e.degree(), Some(0));
        assert_eq!(e.edge_count(), 0);
        let m = BipartiteGraph::from_matching(&[0, 1]).unwrap();
        assert_eq!(m.complement(), BipartiteGraph::from_matching(&[1, 0]).unwrap());
        // 6-cycle c1 s1 c2 s2 c3 s3 c1 inside K_{3,3}.
        let hex = BipartiteGraph::from_rows(3, vec![0b101, 0b011, 0b110]).unwrap();
        assert_eq!(hex.degree(), Some(2));
        assert_eq!(hex.complement(), BipartiteGraph::from_matching(&[1, 2, 0]).unwrap());
        assert_eq!(hex.complement().complement(), hex);
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(BipartiteGraph::from_rows(2, vec![0b100, 0]).is_err());
        assert!(BipartiteGraph::from_rows(2, vec![0]).is_err());
        assert!(BipartiteGraph::from_rows(0, vec![]).is_err());
        assert!(BipartiteGraph::from_rows(17, vec![0; 17]).is_err());
    }

    #[test]
    fn irregular_has_no_degree() {
        let g = BipartiteGraph::from_rows(2, vec![0b11, 0b01]).unwrap();
        assert_eq!(g.degree(), None);
        assert_eq!(g.complement().degree(), None);
    }

    #[test]
    fn components() {
        assert_eq!(BipartiteGraph::empty(3).component_count(), 6);
        assert_eq!(BipartiteGraph::complete(3).component_count(), 1);
        assert_eq!(BipartiteGraph::from_rows(4, vec![0b0011, 0b0011, 0b1100, 0b1100]).unwrap().component_count(), 2);
    }
}
