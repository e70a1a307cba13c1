use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{LatinError, Paratopism};
use crate::bipartite::BipartiteGraph;

/// Largest supported order. Symbol sets are kept as `u32` masks.
pub const MAX_ORDER: usize = 16;

/// A validated `k x n` Latin rectangle over the symbols `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatinRectangle {
    k: usize,
    n: usize,
    // 0-based symbols, row-major
    cells: Vec<u8>,
}

impl LatinRectangle {
    /// Validates a 1-based array of rows.
    pub fn new(rows: &[Vec<usize>]) -> Result<Self, LatinError> {
        let k = rows.len();
        if k == 0 {
            return Err(LatinError::ShapeInvalid("no rows".into()));
        }
        let n = rows[0].len();
        if n == 0 {
            return Err(LatinError::ShapeInvalid("empty rows".into()));
        }
        if n > MAX_ORDER {
            return Err(LatinError::ShapeInvalid(format!("n = {n} exceeds {MAX_ORDER}")));
        }
        if let Some(i) = rows.iter().position(|r| r.len() != n) {
            return Err(LatinError::ShapeInvalid(format!(
                "row {} has {} entries, expected {n}",
                i + 1,
                rows[i].len()
            )));
        }
        if k > n {
            return Err(LatinError::ShapeInvalid(format!("k = {k} exceeds n = {n}")));
        }
        let mut cells = Vec::with_capacity(k * n);
        let mut col_used = vec![0u32; n];
        for (r, row) in rows.iter().enumerate() {
            let mut row_used = 0u32;
            for (c, &s) in row.iter().enumerate() {
                if s == 0 || s > n {
                    return Err(LatinError::SymbolOutOfRange { row: r + 1, column: c + 1, symbol: s, n });
                }
                let bit = 1u32 << (s - 1);
                if row_used & bit != 0 {
                    return Err(LatinError::RowRepeat { row: r + 1, column: c + 1, symbol: s });
                }
                if col_used[c] & bit != 0 {
                    return Err(LatinError::ColumnRepeat { row: r + 1, column: c + 1, symbol: s });
                }
                row_used |= bit;
                col_used[c] |= bit;
                cells.push((s - 1) as u8);
            }
        }
        Ok(LatinRectangle { k, n, cells })
    }

    pub(crate) fn from_cells_unchecked(k: usize, n: usize, cells: Vec<u8>) -> Self {
        debug_assert_eq!(cells.len(), k * n);
        LatinRectangle { k, n, cells }
    }

    pub fn rows_count(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn is_square(&self) -> bool {
        self.k == self.n
    }

    /// 1-based symbol at 1-based `(row, column)`.
    pub fn symbol(&self, row: usize, column: usize) -> usize {
        self.cells[(row - 1) * self.n + column - 1] as usize + 1
    }

    #[inline]
    pub(crate) fn at0(&self, row: usize, column: usize) -> usize {
        self.cells[row * self.n + column] as usize
    }

    #[cfg(test)]
    pub(crate) fn cells0(&self) -> &[u8] {
        &self.cells
    }

    /// 1-based rows.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.n).map(|r| r.iter().map(|&s| s as usize + 1).collect()).collect()
    }

    /// First row is `1..n` and first column is `1..k`.
    pub fn is_reduced(&self) -> bool {
        (0..self.n).all(|c| self.at0(0, c) == c) && (0..self.k).all(|r| self.at0(r, 0) == r)
    }

    /// Normalizes to the reduced form: permute columns so row 1 reads `1..n`,
    /// then order rows `2..k` by their first entry. For proper rectangles whose
    /// first column is not `{1..k}`, the symbols are then relabeled
    /// order-preservingly so the first column reads `1..k`, and the columns are
    /// permuted again to restore row 1.
    pub fn reduce(&self) -> LatinRectangle {
        let (k, n) = (self.k, self.n);
        let mut col_of_symbol = vec![0usize; n];
        for c in 0..n {
            col_of_symbol[self.at0(0, c)] = c;
        }
        let mut rows: Vec<Vec<u8>> = (0..k)
            .map(|r| (0..n).map(|s| self.cells[r * n + col_of_symbol[s]]).collect())
            .collect();
        rows[1..].sort_by_key(|row| row[0]);

        if rows.iter().enumerate().any(|(r, row)| row[0] as usize != r) {
            // Order-preserving relabel: first-column symbols to 0..k, the rest after them.
            let mut relabel = vec![u8::MAX; n];
            for (r, row) in rows.iter().enumerate() {
                relabel[row[0] as usize] = r as u8;
            }
            let mut next = k as u8;
            for slot in relabel.iter_mut() {
                if *slot == u8::MAX {
                    *slot = next;
                    next += 1;
                }
            }
            // Row 1 is the identity, so relabeling symbol s moves column s to column relabel[s].
            rows = rows
                .iter()
                .map(|row| {
                    let mut out = vec![0u8; n];
                    for (c, &s) in row.iter().enumerate() {
                        out[relabel[c] as usize] = relabel[s as usize];
                    }
                    out
                })
                .collect();
        }
        LatinRectangle { k, n, cells: rows.concat() }
    }

    /// Conjugate by permuting the (row, column, symbol) coordinates.
    pub fn conjugate(&self, c: super::Conjugate) -> Result<LatinRectangle, LatinError> {
        self.apply_paratopism(&Paratopism::conjugation(self.n, c))
    }

    pub fn transpose(&self) -> Result<LatinRectangle, LatinError> {
        self.conjugate(super::Conjugate::TRANSPOSE)
    }

    /// Applies the paratopism to the triple set of a square.
    pub fn apply_paratopism(&self, p: &Paratopism) -> Result<LatinRectangle, LatinError> {
        let n = self.n;
        if !self.is_square() {
            return Err(LatinError::NotSquare { k: self.k, n });
        }
        if p.degree() != n {
            return Err(LatinError::DegreeMismatch { expected: n, actual: p.degree() });
        }
        let mut out = vec![0u8; n * n];
        for r in 0..n {
            for c in 0..n {
                let [r2, c2, s2] = p.apply_triple0([r, c, self.at0(r, c)]);
                out[r2 * n + c2] = s2 as u8;
            }
        }
        Ok(LatinRectangle { k: n, n, cells: out })
    }

    /// The `k`-regular bipartite graph with an edge `c_i -- s_j` whenever symbol
    /// `j` appears in column `i`.
    pub fn to_bipartite(&self) -> BipartiteGraph {
        let mut rows = vec![0u32; self.n];
        for r in 0..self.k {
            for (c, mask) in rows.iter_mut().enumerate() {
                *mask |= 1 << self.at0(r, c);
            }
        }
        BipartiteGraph::from_rows(self.n, rows).expect("rectangle graph is well formed")
    }
}

impl fmt::Debug for LatinRectangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LatinRectangle{:?}", self.rows())
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// `L_{k,n} = n! (n-1)! R_{k,n} / (n-k)!`.
pub fn total_from_reduced(k: usize, n: usize, reduced: &BigUint) -> Result<BigUint, LatinError> {
    if k == 0 || k > n {
        return Err(LatinError::ShapeInvalid(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    let numerator = factorial(n) * factorial(n - 1) * reduced;
    let (q, r) = numerator.div_rem(&factorial(n - k));
    if !r.is_zero() {
        return Err(LatinError::InexactDivision(format!("L_({k},{n}) from R = {reduced}")));
    }
    Ok(q)
}
