//! Orders of autotopism and autoparatopism groups.
//!
//! Isotopisms `(rows, cols, symbols)` from `a` onto `b` satisfy
//! `b[rows(r)][cols(c)] = symbols(a[r][c])` for every cell. Knowing two of the
//! three images at any cell forces the third, so the search branches on one
//! unassigned row or column image at a time and propagates to a fixpoint.
//! In practice the images of one row and two columns force everything else.

use super::{Conjugate, LatinError, LatinRectangle, Paratopism};

pub const MAX_GROUP_ORDER_N: usize = 8;

const UNSET: u8 = u8::MAX;

#[derive(Clone, Copy)]
struct Maps {
    fwd: [[u8; MAX_GROUP_ORDER_N]; 3],
    inv: [[u8; MAX_GROUP_ORDER_N]; 3],
}

impl Maps {
    fn new() -> Self {
        Maps { fwd: [[UNSET; MAX_GROUP_ORDER_N]; 3], inv: [[UNSET; MAX_GROUP_ORDER_N]; 3] }
    }

    /// Records `which(x) = y`; false on a conflict.
    #[inline]
    fn set(&mut self, which: usize, x: usize, y: usize, changed: &mut bool) -> bool {
        let cur = self.fwd[which][x];
        if cur != UNSET {
            return cur as usize == y;
        }
        if self.inv[which][y] != UNSET {
            return false;
        }
        self.fwd[which][x] = y as u8;
        self.inv[which][y] = x as u8;
        *changed = true;
        true
    }
}

struct IsoSearch<'a> {
    n: usize,
    a: &'a LatinRectangle,
    b: &'a LatinRectangle,
    // b_row_of[col][sym] = row of b holding sym in col; b_col_of[row][sym] likewise
    b_row_of: [[u8; MAX_GROUP_ORDER_N]; MAX_GROUP_ORDER_N],
    b_col_of: [[u8; MAX_GROUP_ORDER_N]; MAX_GROUP_ORDER_N],
    found: u64,
    limit: u64,
}

impl IsoSearch<'_> {
    fn propagate(&self, m: &mut Maps) -> bool {
        let n = self.n;
        loop {
            let mut changed = false;
            for r in 0..n {
                for c in 0..n {
                    let s = self.a.at0(r, c);
                    let (ir, ic, is) = (m.fwd[0][r], m.fwd[1][c], m.fwd[2][s]);
                    let ok = match (ir != UNSET, ic != UNSET, is != UNSET) {
                        (true, true, _) => {
                            let t = self.b.at0(ir as usize, ic as usize);
                            m.set(2, s, t, &mut changed)
                        }
                        (true, false, true) => {
                            let col = self.b_col_of[ir as usize][is as usize] as usize;
                            m.set(1, c, col, &mut changed)
                        }
                        (false, true, true) => {
                            let row = self.b_row_of[ic as usize][is as usize] as usize;
                            m.set(0, r, row, &mut changed)
                        }
                        _ => true,
                    };
                    if !ok {
                        return false;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn search(&mut self, mut m: Maps) {
        if self.found >= self.limit || !self.propagate(&mut m) {
            return;
        }
        let n = self.n;
        let next = (0..2).find_map(|w| (0..n).find(|&x| m.fwd[w][x] == UNSET).map(|x| (w, x)));
        let Some((which, x)) = next else {
            // All rows and columns mapped; propagation fixed and checked every symbol.
            self.found += 1;
            return;
        };
        for y in 0..n {
            if m.inv[which][y] == UNSET {
                let mut child = m;
                child.fwd[which][x] = y as u8;
                child.inv[which][y] = x as u8;
                self.search(child);
                if self.found >= self.limit {
                    return;
                }
            }
        }
    }
}

fn check_square(l: &LatinRectangle) -> Result<(), LatinError> {
    if !l.is_square() {
        return Err(LatinError::NotSquare { k: l.rows_count(), n: l.order() });
    }
    if l.order() > MAX_GROUP_ORDER_N {
        return Err(LatinError::BudgetExceeded(format!(
            "group-order search limited to n <= {MAX_GROUP_ORDER_N}"
        )));
    }
    Ok(())
}

/// Number of isotopisms mapping square `a` onto square `b`, stopping early at `limit`.
pub fn count_isotopisms(a: &LatinRectangle, b: &LatinRectangle, limit: u64) -> Result<u64, LatinError> {
    check_square(a)?;
    check_square(b)?;
    if a.order() != b.order() {
        return Err(LatinError::DegreeMismatch { expected: a.order(), actual: b.order() });
    }
    let n = a.order();
    let mut b_row_of = [[0u8; MAX_GROUP_ORDER_N]; MAX_GROUP_ORDER_N];
    let mut b_col_of = [[0u8; MAX_GROUP_ORDER_N]; MAX_GROUP_ORDER_N];
    for r in 0..n {
        for c in 0..n {
            let s = b.at0(r, c);
            b_row_of[c][s] = r as u8;
            b_col_of[r][s] = c as u8;
        }
    }
    let mut search = IsoSearch { n, a, b, b_row_of, b_col_of, found: 0, limit };
    search.search(Maps::new());
    Ok(search.found)
}

/// Order of the group of isotopisms fixing `l`.
pub fn autotopism_group_order(l: &LatinRectangle) -> Result<u64, LatinError> {
    count_isotopisms(l, l, u64::MAX)
}

/// Order of the group of paratopisms fixing `l`: the sum over the six
/// conjugates `l'` of the number of isotopisms `l' -> l`.
pub fn autoparatopism_group_order(l: &LatinRectangle) -> Result<u64, LatinError> {
    check_square(l)?;
    let mut total = 0;
    for c in Conjugate::ALL {
        let conj = l.apply_paratopism(&Paratopism::conjugation(l.order(), c))?;
        total += count_isotopisms(&conj, l, u64::MAX)?;
    }
    Ok(total)
}

/// True when some paratopism other than the identity fixes `l`. Stops at the
/// first witness.
pub fn has_nontrivial_autoparatopism(l: &LatinRectangle) -> Result<bool, LatinError> {
    check_square(l)?;
    if count_isotopisms(l, l, 2)? >= 2 {
        return Ok(true);
    }
    for c in &Conjugate::ALL[1..] {
        let conj = l.apply_paratopism(&Paratopism::conjugation(l.order(), *c))?;
        if count_isotopisms(&conj, l, 1)? >= 1 {
            return Ok(true);
        }
    }
    Ok(false)
}
