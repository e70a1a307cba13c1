use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{NumberTheoryError, Result};

/// Miller-Rabin with the first 13 prime bases is exact below this value.
pub const PRIMALITY_BOUND: u128 = 3_317_044_064_679_887_385_961_981;
/// Trial division covers all prime factors below this value.
pub const TRIAL_DIVISION_LIMIT: u32 = 1_000_000;

const BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const RHO_ROUNDS: u64 = 1 << 22;

/// Prime-power factors with strictly increasing primes; empty for 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    pub fn product(&self) -> BigUint {
        self.factors.iter().fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e))
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Deterministic primality below [`PRIMALITY_BOUND`]; larger inputs are
/// undecided and reported as an error.
pub fn is_prime(v: &BigUint) -> Result<bool> {
    if let Some(small) = v.to_u32() {
        if small < 2 {
            return Ok(false);
        }
        if BASES.contains(&small) {
            return Ok(true);
        }
    }
    if BASES.iter().any(|&p| (v % p).is_zero()) {
        return Ok(false);
    }
    if v.to_u128().map_or(true, |x| x >= PRIMALITY_BOUND) {
        return Err(NumberTheoryError::FactorizationIncomplete(format!("primality of {v} not decidable")));
    }
    let one = BigUint::one();
    let minus_one = v - 1u32;
    let s = minus_one.trailing_zeros().expect("v - 1 > 0");
    let d = &minus_one >> s;
    'bases: for &a in &BASES {
        let mut x = BigUint::from(a).modpow(&d, v);
        if x == one || x == minus_one {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % v;
            if x == minus_one {
                continue 'bases;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

/// A nontrivial factor of the odd composite `n` by Pollard's rho with Brent's cycle search.
fn rho(n: &BigUint) -> Option<BigUint> {
    for c in 1u32..20 {
        let f = |x: &BigUint| (x * x + c) % n;
        let (mut y, mut r, mut q) = (BigUint::from(2u32), 1u64, BigUint::one());
        let (mut x, mut ys);
        let mut g;
        let mut steps = 0u64;
        loop {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            loop {
                ys = y.clone();
                for _ in 0..128.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = q * diff % n;
                }
                g = q.gcd(n);
                k += 128;
                if k >= r || !g.is_one() {
                    break;
                }
            }
            steps += r;
            r *= 2;
            if !g.is_one() || steps > RHO_ROUNDS {
                break;
            }
        }
        if g == *n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() && g != *n {
            return Some(g);
        }
    }
    None
}

fn split(n: BigUint, out: &mut Vec<BigUint>) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    if is_prime(&n)? {
        out.push(n);
        return Ok(());
    }
    let d = rho(&n).ok_or_else(|| NumberTheoryError::FactorizationIncomplete(format!("no factor found for {n}")))?;
    let rest = &n / &d;
    split(d, out)?;
    split(rest, out)
}

/// Complete factorization: trial division below [`TRIAL_DIVISION_LIMIT`],
/// then Pollard rho on the cofactor, every prime certified by [`is_prime`].
pub fn factorize(v: &BigUint) -> Result<Factorization> {
    if v.is_zero() {
        return Err(NumberTheoryError::Invalid("cannot factorize zero".into()));
    }
    let mut rest = v.clone();
    let mut primes = Vec::new();
    let mut d = 2u32;
    while d < TRIAL_DIVISION_LIMIT && BigUint::from(d) * d <= rest {
        while (&rest % d).is_zero() {
            rest /= d;
            primes.push(BigUint::from(d));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    split(rest, &mut primes)?;
    primes.sort();
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(Factorization { factors })
}
