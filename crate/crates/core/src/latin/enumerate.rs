use super::{LatinError, LatinRectangle};

/// Largest order accepted by the brute-force enumerator.
pub const MAX_ENUMERATION_ORDER: usize = 7;

/// Every reduced `k x n` rectangle exactly once, in lexicographic order of the
/// row-major cell sequence. Cell-by-cell backtracking with row and column
/// symbol masks.
pub struct ReducedRectangles {
    k: usize,
    n: usize,
    cells: Vec<u8>,
    row_used: Vec<u32>,
    col_used: Vec<u32>,
    free: Vec<(usize, usize)>,
    next_symbol: Vec<u8>,
    pos: usize,
    started: bool,
    done: bool,
}

pub fn enumerate_reduced(k: usize, n: usize) -> Result<ReducedRectangles, LatinError> {
    if k == 0 || n == 0 || k > n {
        return Err(LatinError::ShapeInvalid(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    if n > MAX_ENUMERATION_ORDER {
        return Err(LatinError::BudgetExceeded(format!(
            "brute-force enumeration limited to n <= {MAX_ENUMERATION_ORDER}"
        )));
    }
    let mut cells = vec![u8::MAX; k * n];
    let mut row_used = vec![0u32; k];
    let mut col_used = vec![0u32; n];
    let mut place = |r: usize, c: usize, s: usize| {
        cells[r * n + c] = s as u8;
        row_used[r] |= 1 << s;
        col_used[c] |= 1 << s;
    };
    for c in 0..n {
        place(0, c, c);
    }
    for r in 1..k {
        place(r, 0, r);
    }
    let free: Vec<(usize, usize)> = (1..k).flat_map(|r| (1..n).map(move |c| (r, c))).collect();
    let next_symbol = vec![0u8; free.len()];
    Ok(ReducedRectangles {
        k,
        n,
        cells,
        row_used,
        col_used,
        free,
        next_symbol,
        pos: 0,
        started: false,
        done: false,
    })
}

/// Number of reduced `k x n` rectangles by exhaustive enumeration.
pub fn count_reduced(k: usize, n: usize) -> Result<u64, LatinError> {
    Ok(enumerate_reduced(k, n)?.count() as u64)
}

impl ReducedRectangles {
    fn unplace(&mut self, i: usize) {
        let (r, c) = self.free[i];
        let s = self.cells[r * self.n + c];
        self.row_used[r] &= !(1 << s);
        self.col_used[c] &= !(1 << s);
        self.cells[r * self.n + c] = u8::MAX;
    }
}

impl Iterator for ReducedRectangles {
    type Item = LatinRectangle;

    fn next(&mut self) -> Option<LatinRectangle> {
        if self.done {
            return None;
        }
        if self.started {
            if self.free.is_empty() {
                self.done = true;
                return None;
            }
            self.pos = self.free.len() - 1;
            self.unplace(self.pos);
        }
        self.started = true;
        let full = (1u32 << self.n) - 1;
        loop {
            if self.pos == self.free.len() {
                return Some(LatinRectangle::from_cells_unchecked(self.k, self.n, self.cells.clone()));
            }
            let (r, c) = self.free[self.pos];
            let avail = full & !(self.row_used[r] | self.col_used[c]) & !((1u32 << self.next_symbol[self.pos]) - 1);
            if avail != 0 {
                let s = avail.trailing_zeros();
                self.cells[r * self.n + c] = s as u8;
                self.row_used[r] |= 1 << s;
                self.col_used[c] |= 1 << s;
                self.next_symbol[self.pos] = s as u8 + 1;
                self.pos += 1;
                if self.pos < self.free.len() {
                    self.next_symbol[self.pos] = 0;
                }
            } else {
                self.next_symbol[self.pos] = 0;
                if self.pos == 0 {
                    self.done = true;
                    return None;
                }
                self.pos -= 1;
                self.unplace(self.pos);
            }
        }
    }
}
