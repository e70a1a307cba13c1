//! `L_n` from permanents of `±1` matrices:
//!
//! ```text
//! L_n = 2^(-n^2) * sum over X in {-1,+1}^(n x n) of p(Per X) * π(X)
//! ```
//!
//! for any monic `p` of degree `n`, where `π(X)` is the product of the entries.
//! The sum is taken by tallying, for every attainable permanent value, the net
//! number of matrices with that permanent counted with sign `π(X)`.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

/// Largest order for the signed enumeration (`2^25` matrices at `n = 5`).
pub const MAX_PERMANENT_N: usize = 5;
/// Largest matrix accepted by [`permanent_int`].
pub const MAX_PERMANENT_MATRIX: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermanentError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("permanent overflows 128-bit arithmetic")]
    Overflow,
    #[error("inexact division: {0}")]
    InexactDivision(String),
}

pub type Result<T> = std::result::Result<T, PermanentError>;

/// An `n x n` matrix over `{-1, +1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignMatrix {
    n: usize,
    entries: Vec<i8>,
}

impl SignMatrix {
    /// Row-major entries, each `-1` or `1`.
    pub fn new(n: usize, entries: Vec<i8>) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(PermanentError::Invalid(format!("expected {} entries for n = {n}", n * n)));
        }
        if let Some(e) = entries.iter().find(|&&e| e != 1 && e != -1) {
            return Err(PermanentError::Invalid(format!("entry {e} is not +1 or -1")));
        }
        Ok(SignMatrix { n, entries })
    }

    /// Bit `i*n + j` of `bits` set means entry `(i, j)` is `-1`.
    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        if n == 0 || n * n > 64 {
            return Err(PermanentError::Invalid(format!("n = {n} does not fit a 64-bit mask")));
        }
        Ok(SignMatrix { n, entries: (0..n * n).map(|b| if bits >> b & 1 == 1 { -1 } else { 1 }).collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n).map(|r| r.iter().map(|&e| e as i64).collect()).collect()
    }

    pub fn negated(&self) -> Self {
        SignMatrix { n: self.n, entries: self.entries.iter().map(|&e| -e).collect() }
    }
}

/// `π(X)`, the product of all entries.
pub fn product_of_entries(x: &SignMatrix) -> i8 {
    if x.entries.iter().filter(|&&e| e < 0).count() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `z^n + c_{n-1} z^{n-1} + ... + c_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonicPolynomial {
    lower: Vec<BigInt>,
}

impl MonicPolynomial {
    /// `lower[i]` is the coefficient of `z^i`; the degree is `lower.len()`.
    pub fn new(lower: Vec<BigInt>) -> Result<Self> {
        if lower.is_empty() {
            return Err(PermanentError::Invalid("monic polynomial needs degree >= 1".into()));
        }
        Ok(MonicPolynomial { lower })
    }

    /// `z^n`.
    pub fn power(n: usize) -> Result<Self> {
        Self::new(vec![BigInt::zero(); n])
    }

    pub fn degree(&self) -> usize {
        self.lower.len()
    }

    pub fn eval(&self, z: &BigInt) -> BigInt {
        self.lower.iter().rev().fold(BigInt::one(), |acc, c| acc * z + c)
    }
}

impl fmt::Display for MonicPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z^{}", self.degree())?;
        for (i, c) in self.lower.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()) {
            let sign = if c.is_negative() { '-' } else { '+' };
            let mag = c.abs();
            match (i, mag.is_one()) {
                (0, _) => write!(f, " {sign} {mag}")?,
                (1, true) => write!(f, " {sign} z")?,
                (1, false) => write!(f, " {sign} {mag}z")?,
                (_, true) => write!(f, " {sign} z^{i}")?,
                (_, false) => write!(f, " {sign} {mag}z^{i}")?,
            }
        }
        Ok(())
    }
}

/// Permanent by Ryser's inclusion-exclusion over column subsets.
pub fn permanent_int(m: &[Vec<i64>]) -> Result<i128> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(PermanentError::Invalid("matrix is not square".into()));
    }
    if n > MAX_PERMANENT_MATRIX {
        return Err(PermanentError::BudgetExceeded(format!("permanent limited to n <= {MAX_PERMANENT_MATRIX}")));
    }
    if n == 0 {
        return Ok(1);
    }
    let mut sums = vec![0i128; n];
    let mut total = 0i128;
    let mut gray = 0u32;
    for step in 1u32..1 << n {
        let j = step.trailing_zeros() as usize;
        gray ^= 1 << j;
        let adding = gray >> j & 1 == 1;
        for (s, row) in sums.iter_mut().zip(m) {
            *s = if adding { s.checked_add(row[j] as i128) } else { s.checked_sub(row[j] as i128) }
                .ok_or(PermanentError::Overflow)?;
        }
        let prod = sums.iter().try_fold(1i128, |p, &s| p.checked_mul(s)).ok_or(PermanentError::Overflow)?;
        total = if (n - gray.count_ones() as usize) % 2 == 0 { total.checked_add(prod) } else { total.checked_sub(prod) }
            .ok_or(PermanentError::Overflow)?;
    }
    Ok(total)
}

/// Permanent of the sign matrix encoded by `bits` (set bit = `-1`), `n <= 5`.
fn sign_permanent(n: usize, bits: u32) -> i64 {
    let mut sums = [0i64; MAX_PERMANENT_N];
    let mut total = 0i64;
    let mut gray = 0u32;
    for step in 1u32..1 << n {
        let j = step.trailing_zeros() as usize;
        gray ^= 1 << j;
        let delta = if gray >> j & 1 == 1 { 1 } else { -1 };
        let mut prod = 1i64;
        for (i, s) in sums.iter_mut().enumerate().take(n) {
            let entry = 1 - 2 * (bits >> (i * n + j) & 1) as i64;
            *s += delta * entry;
            prod *= *s;
        }
        if (n - gray.count_ones() as usize) % 2 == 0 {
            total += prod;
        } else {
            total -= prod;
        }
    }
    total
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// `hist[v + n!]` = number of `X` with `Per X = v` and `π(X) = 1`, minus those with `π(X) = -1`.
fn signed_histogram(n: usize) -> Vec<i64> {
    let cells = n * n;
    let offset = factorial(n);
    let width = 2 * offset as usize + 1;
    let total = 1u64 << cells;
    let chunk = (total / 256).max(1);
    (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut hist = vec![0i64; width];
            let (start, end) = (c * chunk, ((c + 1) * chunk).min(total));
            let mut bits = (start ^ (start >> 1)) as u32;
            for i in start..end {
                if i > start {
                    bits ^= 1 << i.trailing_zeros();
                }
                let per = sign_permanent(n, bits);
                let sign = if bits.count_ones() % 2 == 0 { 1 } else { -1 };
                hist[(per + offset) as usize] += sign;
            }
            hist
        })
        .reduce(|| vec![0i64; width], |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        })
}

/// `L_n`, the number of Latin squares of order `n`, from the signed
/// permanent sum with polynomial `p` (degree `n`).
pub fn latin_count_via_permanents(n: usize, p: &MonicPolynomial) -> Result<BigUint> {
    if n == 0 || p.degree() != n {
        return Err(PermanentError::Invalid(format!("need n >= 1 and deg p = n, got n = {n}, deg p = {}", p.degree())));
    }
    if n > MAX_PERMANENT_N {
        return Err(PermanentError::BudgetExceeded(format!("signed enumeration limited to n <= {MAX_PERMANENT_N}")));
    }
    let offset = factorial(n);
    let sum: BigInt = signed_histogram(n)
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| p.eval(&BigInt::from(i as i64 - offset)) * c)
        .sum();
    let shift = n * n;
    let low_bits = &sum & ((BigInt::one() << shift) - 1u32);
    if !low_bits.is_zero() || sum.sign() == Sign::Minus {
        return Err(PermanentError::InexactDivision(format!("signed sum {sum} is not a nonnegative multiple of 2^{shift}")));
    }
    Ok((sum >> shift).magnitude().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::latin::Permutation;
    use rand::{Rng, SeedableRng};

    // Oracle: sum over permutations.
    fn definitional(m: &[Vec<i64>]) -> i128 {
        let n = m.len();
        Permutation::all(n)
            .iter()
            .map(|p| (0..n).map(|i| m[i][p.apply(i + 1) - 1] as i128).product::<i128>())
            .sum()
    }

    #[test]
    fn permanent_examples() {
        let id3 = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(permanent_int(&id3).unwrap(), 1);
        for n in 1..=8 {
            assert_eq!(permanent_int(&vec![vec![1; n]; n]).unwrap(), factorial(n) as i128);
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(permanent_int(&vec![vec![-1; n]; n]).unwrap(), sign * factorial(n) as i128);
        }
        assert_eq!(permanent_int(&[]).unwrap(), 1);
        assert!(matches!(permanent_int(&vec![vec![1; 9]; 9]), Err(PermanentError::BudgetExceeded(_))));
        assert!(matches!(permanent_int(&[vec![1, 2]]), Err(PermanentError::Invalid(_))));
        assert_eq!(permanent_int(&vec![vec![i64::MAX; 3]; 3]), Err(PermanentError::Overflow));
    }

    #[test]
    fn permanent_matches_definition() {
        for n in 1..=3 {
            let cells = n * n;
            for code in 0..3u32.pow(cells as u32) {
                let mut c = code;
                let m: Vec<Vec<i64>> = (0..n)
                    .map(|_| {
                        (0..n)
                            .map(|_| {
                                let v = (c % 3) as i64 - 1;
                                c /= 3;
                                v
                            })
                            .collect()
                    })
                    .collect();
                assert_eq!(permanent_int(&m).unwrap(), definitional(&m));
            }
        }
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        for _ in 0..200 {
            let m: Vec<Vec<i64>> = (0..5).map(|_| (0..5).map(|_| rng.gen_range(-1..=1)).collect()).collect();
            assert_eq!(permanent_int(&m).unwrap(), definitional(&m));
        }
    }

    #[test]
    fn sign_permanent_agrees() {
        for n in 1..=3 {
            for bits in 0u32..1 << (n * n) {
                let x = SignMatrix::from_bits(n, bits as u64).unwrap();
                assert_eq!(sign_permanent(n, bits) as i128, permanent_int(&x.rows()).unwrap());
            }
        }
    }

    #[test]
    fn entry_products() {
        let ones = SignMatrix::new(2, vec![1; 4]).unwrap();
        assert_eq!(product_of_entries(&ones), 1);
        let one_neg = SignMatrix::new(2, vec![1, -1, 1, 1]).unwrap();
        assert_eq!(product_of_entries(&one_neg), -1);
        for n in 1..=3 {
            for bits in 0u64..1 << (n * n) {
                let x = SignMatrix::from_bits(n, bits).unwrap();
                let sign = if (n * n) % 2 == 0 { 1 } else { -1 };
                assert_eq!(product_of_entries(&x.negated()), sign * product_of_entries(&x));
            }
        }
        assert!(SignMatrix::new(2, vec![1, 0, 1, 1]).is_err());
    }

    #[test]
    fn polynomial_evaluation_and_display() {
        let p = MonicPolynomial::new(vec![7.into(), 1.into(), 0.into()]).unwrap();
        assert_eq!(p.eval(&BigInt::from(2)), BigInt::from(8 + 2 + 7));
        assert_eq!(p.to_string(), "z^3 + z + 7");
        assert_eq!(MonicPolynomial::new(vec![(-3).into(), 0.into()]).unwrap().to_string(), "z^2 - 3");
        assert!(MonicPolynomial::new(vec![]).is_err());
    }

    #[test]
    fn small_latin_counts() {
        for (n, l) in [(1usize, 1u32), (2, 2), (3, 12), (4, 576)] {
            assert_eq!(latin_count_via_permanents(n, &MonicPolynomial::power(n).unwrap()).unwrap(), BigUint::from(l));
        }
        for n in 1..=3 {
            let mut lower = vec![BigInt::zero(); n];
            lower[0] += 7;
            if n > 1 {
                lower[1] += 1;
            } else {
                lower[0] += 1;
            }
            let p = MonicPolynomial::new(lower).unwrap();
            assert_eq!(
                latin_count_via_permanents(n, &p).unwrap(),
                latin_count_via_permanents(n, &MonicPolynomial::power(n).unwrap()).unwrap()
            );
        }
        assert!(matches!(
            latin_count_via_permanents(6, &MonicPolynomial::power(6).unwrap()),
            Err(PermanentError::BudgetExceeded(_))
        ));
        assert!(latin_count_via_permanents(3, &MonicPolynomial::power(2).unwrap()).is_err());
    }
}
