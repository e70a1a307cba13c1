//! Published values of `R_{k,n}` for `n <= 11`, their prime factorizations,
//! and the factorial divisibility rules for `R_n`.

mod primes;

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

pub use primes::{factorize, is_prime, Factorization, PRIMALITY_BOUND, TRIAL_DIVISION_LIMIT};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumberTheoryError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("no published value of R_{0}")]
    MissingConstant(usize),
    #[error("factorization incomplete: {0}")]
    FactorizationIncomplete(String),
}

pub type Result<T> = std::result::Result<T, NumberTheoryError>;

/// Largest order with published values.
pub const PUBLISHED_MAX_N: usize = 11;

/// `TABLE[n-1][k-1]` is `R_{k,n}`.
const TABLE: [&[&str]; PUBLISHED_MAX_N] = [
    &["1"],
    &["1", "1"],
    &["1", "1", "1"],
    &["1", "3", "4", "4"],
    &["1", "11", "46", "56", "56"],
    &["1", "53", "1064", "6552", "9408", "9408"],
    &["1", "309", "35792", "1293216", "11270400", "16942080", "16942080"],
    &["1", "2119", "1673792", "420909504", "27206658048", "335390189568", "535281401856", "535281401856"],
    &[
        "1",
        "16687",
        "103443808",
        "207624560256",
        "112681643083776",
        "12952605404381184",
        "224382967916691456",
        "377597570964258816",
        "377597570964258816",
    ],
    &[
        "1",
        "148329",
        "8154999232",
        "147174521059584",
        "746988383076286464",
        "870735405591003709440",
        "177144296983054185922560",
        "4292039421591854273003520",
        "7580721483160132811489280",
        "7580721483160132811489280",
    ],
    &[
        "1",
        "1468457",
        "798030483328",
        "143968880078466048",
        "7533492323047902093312",
        "96299552373292505158778880",
        "240123216475173515502173552640",
        "86108204357787266780858343751680",
        "2905990310033882693113989027594240",
        "5363937773277371298119673540771840",
        "5363937773277371298119673540771840",
    ],
];

/// FNV-1a over the lines `"<n> <k> <R_{k,n}>\n"` in table order.
pub const TABLE_CHECKSUM: u64 = 0xa49d_dfd3_252d_abd3;

/// Prime factorizations of `R_n` as published, `n = 2..=11`.
const FACTORIZATIONS: [(usize, &[(u64, u32)]); 10] = [
    (2, &[]),
    (3, &[]),
    (4, &[(2, 2)]),
    (5, &[(2, 3), (7, 1)]),
    (6, &[(2, 6), (3, 1), (7, 2)]),
    (7, &[(2, 10), (3, 1), (5, 1), (1103, 1)]),
    (8, &[(2, 17), (3, 1), (1361291, 1)]),
    (9, &[(2, 21), (3, 2), (5231, 1), (3824477, 1)]),
    (10, &[(2, 28), (3, 2), (5, 1), (31, 1), (37, 1), (547135293937, 1)]),
    (11, &[(2, 35), (3, 4), (5, 1), (2801, 1), (2206499, 1), (62368028479, 1)]),
];

/// `(n, k, min m(B), classes attaining the min, max m(B))` over `𝓑(k, n)`, `2 <= k <= n - 2`.
const EXTREMAL: [(usize, usize, &str, usize, &str); 36] = [
    (4, 2, "1", 1, "2"),
    (5, 2, "1", 1, "2"),
    (5, 3, "4", 1, "6"),
    (6, 2, "1", 1, "4"),
    (6, 3, "8", 4, "24"),
    (6, 4, "168", 1, "224"),
    (7, 2, "1", 1, "4"),
    (7, 3, "8", 3, "48"),
    (7, 4, "456", 2, "576"),
    (7, 5, "54528", 1, "55296"),
    (8, 2, "1", 1, "8"),
    (8, 3, "16", 18, "96"),
    (8, 4, "1120", 1, "13824"),
    (8, 5, "306432", 1, "402432"),
    (8, 6, "251894784", 1, "258392064"),
    (9, 2, "1", 1, "8"),
    (9, 3, "16", 7, "288"),
    (9, 4, "2720", 1, "32256"),
    (9, 5, "1718784", 1, "2312192"),
    (9, 6, "3585925120", 1, "3797508096"),
    (9, 7, "22606854291456", 1, "22710505439232"),
    (10, 2, "1", 1, "16"),
    (10, 3, "24", 2, "576"),
    (10, 4, "6992", 1, "129024"),
    (10, 5, "9457472", 1, "216760320"),
    (10, 6, "49712734208", 1, "71022182400"),
    (10, 7, "920073219063808", 1, "962525641310208"),
    (10, 8, "51072829020284387328", 1, "51411315765364654080"),
    (11, 2, "1", 1, "16"),
    (11, 3, "32", 25, "1152"),
    (11, 4, "17040", 1, "331776"),
    (11, 5, "49449728", 1, "1517322240"),
    (11, 6, "656992907264", 1, "1274550681600"),
    (11, 7, "36184087678025728", 1, "41312188744335360"),
    (11, 8, "6674288352734540070912", 1, "6904895678779049902080"),
    (11, 9, "3650989756490710602617978880", 1, "3665106903315598519509712896"),
];

/// Published `R_{k,n}`, if `1 <= k <= n <= 11`.
pub fn published_reduced(k: usize, n: usize) -> Option<BigUint> {
    if k == 0 || k > n || n > PUBLISHED_MAX_N {
        return None;
    }
    Some(TABLE[n - 1][k - 1].parse().expect("table entries are decimal"))
}

/// Published `R_n`.
pub fn published_squares(n: usize) -> Option<BigUint> {
    published_reduced(n, n)
}

/// Published factorization of `R_n`, `2 <= n <= 11`.
pub fn published_factorization(n: usize) -> Option<Factorization> {
    FACTORIZATIONS.iter().find(|(m, _)| *m == n).map(|(_, f)| Factorization {
        factors: f.iter().map(|&(p, e)| (BigUint::from(p), e)).collect(),
    })
}

/// Published `(min m(B), number of classes attaining it, max m(B))` over `𝓑(k, n)`.
pub fn published_extremal(k: usize, n: usize) -> Option<(BigUint, usize, BigUint)> {
    EXTREMAL.iter().find(|e| e.0 == n && e.1 == k).map(|&(_, _, lo, count, hi)| {
        (lo.parse().expect("decimal"), count, hi.parse().expect("decimal"))
    })
}

pub fn table_checksum() -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for (n, row) in TABLE.iter().enumerate() {
        for (k, v) in row.iter().enumerate() {
            for b in format!("{} {} {}\n", n + 1, k + 1, v).bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        }
    }
    h
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).product()
}

/// Divisor of `R_n` from the half-order argument: `(n/2)!` for even `n`,
/// `gcd(m!(m-1)! R_m, (m+1)!)` for `n = 2m + 1`.
pub fn predicted_divisor(n: usize) -> Result<BigUint> {
    if n < 2 {
        return Err(NumberTheoryError::Invalid(format!("need n >= 2, got {n}")));
    }
    let m = n / 2;
    if n % 2 == 0 {
        return Ok(factorial(m));
    }
    let r = published_squares(m).ok_or(NumberTheoryError::MissingConstant(m))?;
    Ok((factorial(m) * factorial(m - 1) * r).gcd(&factorial(m + 1)))
}

/// `((n-1)/2)!` when `n = 2p - 1` with `p` prime, else `((n+1)/2)!`.
pub fn corollary_divisor(n: usize) -> BigUint {
    let p = (n + 1) / 2;
    let prime_p = n % 2 == 1 && is_prime(&BigUint::from(p)).expect("small values are decidable");
    if prime_p {
        factorial((n - 1) / 2)
    } else {
        factorial((n + 1) / 2)
    }
}

/// Exponent of the largest power of two dividing `v`.
pub fn two_power_valuation(v: &BigUint) -> Result<u64> {
    v.trailing_zeros().ok_or_else(|| NumberTheoryError::Invalid("valuation of zero".into()))
}

/// One verification verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

/// Lines of the form `PASS|FAIL <check-id> <detail>`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    fn push(&mut self, id: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { id: id.into(), passed, detail: detail.into() });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {} {}", if c.passed { "PASS" } else { "FAIL" }, c.id, c.detail)?;
        }
        Ok(())
    }
}

fn divides(d: &BigUint, r: &BigUint) -> bool {
    (r % d).is_zero()
}

/// Checks `r` (claimed to be `R_n`) against both divisibility rules.
pub fn check_divisibility(n: usize, r: &BigUint) -> Report {
    let mut report = Report::default();
    if n < 2 || r.is_zero() {
        report.push(format!("divisibility-n{n}"), false, "need n >= 2 and R > 0");
        return report;
    }
    match predicted_divisor(n) {
        Ok(d) => report.push(format!("half-order-divisor-n{n}"), divides(&d, r), format!("{d} | {r}")),
        Err(e) => report.push(format!("half-order-divisor-n{n}"), false, e.to_string()),
    }
    let d = corollary_divisor(n);
    report.push(format!("factorial-divisor-n{n}"), divides(&d, r), format!("{d} | {r}"));
    report
}

/// Internal consistency of the published values and factorizations.
pub fn verify_published() -> Report {
    let mut report = Report::default();
    let sum = table_checksum();
    report.push("table-checksum", sum == TABLE_CHECKSUM, format!("{sum:#018x}"));

    let r11 = published_squares(11).expect("published");
    let residue = (&r11 % 21175u32).to_u32().expect("below modulus");
    report.push("r11-mod-21175", residue == 8515, format!("{residue} (expected 8515)"));

    for n in 1..=PUBLISHED_MAX_N {
        let first = published_reduced(1, n).expect("published");
        report.push(format!("first-row-n{n}"), first.is_one(), format!("R_(1,{n}) = {first}"));
        if n >= 2 {
            let a = published_reduced(n - 1, n).expect("published");
            let b = published_squares(n).expect("published");
            report.push(format!("last-row-n{n}"), a == b, format!("R_({},{n}) = {a}, R_({n},{n}) = {b}", n - 1));
        }
    }

    for n in 2..=PUBLISHED_MAX_N {
        let f = published_factorization(n).expect("published");
        let r = published_squares(n).expect("published");
        let primes_ok = f.factors.iter().all(|(p, _)| is_prime(p) == Ok(true));
        let increasing = f.factors.windows(2).all(|w| w[0].0 < w[1].0);
        let product = f.product();
        report.push(
            format!("factorization-n{n}"),
            primes_ok && increasing && product == r,
            format!("{f} = {product}"),
        );
    }

    for n in 2..=PUBLISHED_MAX_N {
        report.checks.extend(check_divisibility(n, &published_squares(n).expect("published")).checks);
    }
    report
}
