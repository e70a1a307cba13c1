//! How many Latin squares of small order have a non-trivial autoparatopism
//! group, and the explicit counting bound on that proportion.
//!
//! Each reduced square stands for exactly `n!(n-1)!` squares, all isotopic to
//! it, and whether the autoparatopism group is trivial is an isotopy
//! invariant, so the proportion over reduced squares is the proportion over
//! all squares.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::latin::{enumerate_reduced, has_nontrivial_autoparatopism, LatinError};
use crate::number_theory::{published_squares, NumberTheoryError};

/// Largest order for the exhaustive census.
pub const MAX_SYMMETRY_N: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryCensus {
    pub n: usize,
    pub total_reduced: BigUint,
    pub nontrivial_reduced: BigUint,
    pub proportion: BigRational,
}

fn fraction(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

impl SymmetryCensus {
    /// `SYM <n> <total> <nontrivial> <proportion> <bound>`, with `-` for the bound at `n = 1`.
    pub fn machine_line(&self) -> String {
        let bound = if self.n >= 2 { fraction(&bound_value(self.n)) } else { "-".into() };
        format!(
            "SYM {} {} {} {} {}",
            self.n,
            self.total_reduced,
            self.nontrivial_reduced,
            fraction(&self.proportion),
            bound
        )
    }
}

/// Exhaustive count over the reduced squares of order `n <= 6`.
pub fn symmetry_census(n: usize) -> Result<SymmetryCensus, LatinError> {
    if n == 0 {
        return Err(LatinError::ShapeInvalid("order must be at least 1".into()));
    }
    if n > MAX_SYMMETRY_N {
        return Err(LatinError::BudgetExceeded(format!("symmetry census limited to n <= {MAX_SYMMETRY_N}")));
    }
    let squares: Vec<_> = enumerate_reduced(n, n)?.collect();
    let nontrivial = squares
        .par_iter()
        .map(|l| has_nontrivial_autoparatopism(l).map(usize::from))
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    let total = BigUint::from(squares.len());
    let nontrivial = BigUint::from(nontrivial);
    let proportion = BigRational::new(BigInt::from(nontrivial.clone()), BigInt::from(total.clone()));
    Ok(SymmetryCensus { n, total_reduced: total, nontrivial_reduced: nontrivial, proportion })
}

fn factorial(n: usize) -> BigInt {
    (1..=n as u64).product::<BigUint>().into()
}

/// `6 n!^3 n^ceil(5n^2/8)` squares with symmetry at most, over the lower bound
/// `(n!)^(2n) n^(-n^2)` for `L_n`.
pub fn bound_value(n: usize) -> BigRational {
    assert!(n >= 2, "bound defined for n >= 2");
    let nn = BigInt::from(n);
    let orbits = (5 * n * n).div_ceil(8) as u32;
    let numer = factorial(n).pow(3u32) * 6 * nn.pow(orbits + (n * n) as u32);
    let denom = factorial(n).pow(2 * n as u32);
    BigRational::new(numer, denom)
}

/// Estimates `L_n/n!`, `L_n/n!^3`, `L_n/(6 n!^3)` of the numbers of
/// isomorphism, isotopy and main classes.
pub fn class_count_estimates(n: usize, latin_squares: &BigUint) -> [BigRational; 3] {
    let l = BigInt::from(latin_squares.clone());
    let f = factorial(n);
    let f3 = f.pow(3u32);
    [
        BigRational::new(l.clone(), f),
        BigRational::new(l.clone(), f3.clone()),
        BigRational::new(l, f3 * 6),
    ]
}

/// [`class_count_estimates`] with `L_n = n!(n-1)! R_n` from the published `R_n`.
pub fn published_class_count_estimates(n: usize) -> Result<[BigRational; 3], NumberTheoryError> {
    let r = published_squares(n).ok_or(NumberTheoryError::MissingConstant(n))?;
    let f = |m: usize| (1..=m as u64).product::<BigUint>();
    Ok(class_count_estimates(n, &(f(n) * f(n - 1) * r)))
}

/// Whether the bound says anything, i.e. is at most 1.
pub fn bound_is_informative(n: usize) -> bool {
    bound_value(n) <= BigRational::one()
}
