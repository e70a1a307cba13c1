//! Class sums over `𝓑(k, n)`, one representative per isomorphism class of
//! `k`-regular bipartite graphs on `n + n` vertices.
//!
//! With `G` the group of order `2(n!)^2` (independent relabelings of both
//! sides plus the side exchange), a class with automorphism group `Aut(B)`
//! has `2(n!)^2 / |Aut(B)|` labeled members. Sums are accumulated over those
//! integer weights and scaled once at the end.

mod generate;

use std::fs;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::bipartite::{factorization_count_with, CanonicalKey, EdgeRule, FactorizationMemo, GraphError};

pub use generate::GraphClass;

/// Largest order for which census formulas run.
pub const MAX_CENSUS_N: usize = 8;
/// Largest order for which `2`-regular (or sparser) classes are generated.
pub const MAX_SPARSE_CENSUS_N: usize = 11;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("class sum is not divisible as required: {0}")]
    InexactSum(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("checkpoint: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CensusError>;

/// The classes of `𝓑(k, n)`, sorted by canonical key.
#[derive(Debug)]
pub struct GraphClassStream {
    pub n: usize,
    pub k: usize,
    inner: std::vec::IntoIter<GraphClass>,
}

impl Iterator for GraphClassStream {
    type Item = GraphClass;

    fn next(&mut self) -> Option<GraphClass> {
        self.inner.next()
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.inner.size_hint()
    }
}

impl ExactSizeIterator for GraphClassStream {}

fn check_budget(k: usize, n: usize) -> Result<()> {
    let limit = if k.min(n - k) <= 2 { MAX_SPARSE_CENSUS_N } else { MAX_CENSUS_N };
    if n > limit {
        return Err(CensusError::BudgetExceeded(format!("class generation for k = {k} limited to n <= {limit}")));
    }
    Ok(())
}

fn classes(k: usize, n: usize) -> Result<Vec<GraphClass>> {
    if n == 0 || k > n {
        return Err(CensusError::Invalid(format!("need 0 <= k <= n and n >= 1, got k = {k}, n = {n}")));
    }
    check_budget(k, n)?;
    Ok(generate::generate(n, k))
}

/// One representative per isomorphism class of `k`-regular bipartite graphs on `n + n` vertices.
pub fn enumerate_graphs(k: usize, n: usize) -> Result<GraphClassStream> {
    if k == 0 {
        return Err(CensusError::Invalid("k must be at least 1".into()));
    }
    let v = classes(k, n)?;
    Ok(GraphClassStream { n, k, inner: v.into_iter() })
}

/// Partitions of `n` into parts of size at least 2: the number of
/// 2-regular classes, each a disjoint union of even cycles of lengths `2p`.
pub fn two_regular_class_count(n: usize) -> usize {
    fn parts(n: usize, min: usize) -> usize {
        if n == 0 {
            return 1;
        }
        (min..=n).map(|p| parts(n - p, p)).sum()
    }
    parts(n, 2)
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).product()
}

/// `2(n!)^2 / |Aut|`: the number of labeled graphs in the class.
fn class_size(n: usize, aut: &BigUint) -> BigUint {
    let group = factorial(n).pow(2) * 2u32;
    let (q, r) = group.div_rem(aut);
    assert!(r.is_zero(), "automorphism order {aut} does not divide 2(n!)^2");
    q
}

/// `2n k!(n-k)! / (2(n!)^2)` times `weighted`, checked to be integral.
fn scale(k: usize, n: usize, weighted: &BigUint) -> Result<BigUint> {
    let num = weighted * BigUint::from(n) * factorial(k) * factorial(n - k);
    let den = factorial(n).pow(2);
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(CensusError::InexactSum(format!("k = {k}, n = {n}: {num} / {den} leaves remainder {r}")));
    }
    Ok(q)
}

/// Extremal values of `m(B)` over `𝓑(k, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusResult {
    pub n: usize,
    pub k: usize,
    pub reduced_count: BigUint,
    pub class_count: usize,
    pub min_m: BigUint,
    pub max_m: BigUint,
    pub min_count: usize,
    pub max_count: usize,
    /// Keys of the classes attaining the minimum, then those attaining the maximum.
    pub witnesses: Vec<CanonicalKey>,
}

impl CensusResult {
    /// `CENSUS <n> <k> <R> <classes> <minM> <minCount> <maxM>`
    pub fn machine_line(&self) -> String {
        format!(
            "CENSUS {} {} {} {} {} {} {}",
            self.n, self.k, self.reduced_count, self.class_count, self.min_m, self.min_count, self.max_m
        )
    }
}

/// Where and how often the memo is written during a run.
#[derive(Clone, Debug)]
pub struct Checkpoint {
    pub path: PathBuf,
    pub every: usize,
}

/// Shared state for census runs: the factorization memo, edge rule and
/// checkpoint policy. Results do not depend on any of them.
pub struct Census {
    memo: Arc<FactorizationMemo>,
    rule: EdgeRule,
    checkpoint: Option<Checkpoint>,
    save_lock: Mutex<()>,
}

impl Default for Census {
    fn default() -> Self {
        Self::new(Arc::new(FactorizationMemo::new()))
    }
}

struct ClassValue {
    key: CanonicalKey,
    weight: BigUint,
    m: BigUint,
    m_complement: BigUint,
}

impl Census {
    pub fn new(memo: Arc<FactorizationMemo>) -> Self {
        Census { memo, rule: EdgeRule::Canonical, checkpoint: None, save_lock: Mutex::new(()) }
    }

    pub fn with_rule(mut self, rule: EdgeRule) -> Self {
        self.rule = rule;
        self
    }

    pub fn with_checkpoint(mut self, checkpoint: Checkpoint) -> Self {
        self.checkpoint = Some(checkpoint);
        self
    }

    pub fn memo(&self) -> &Arc<FactorizationMemo> {
        &self.memo
    }

    /// Writes the memo to `path` through a temporary file and rename.
    pub fn save_memo(&self, path: &Path) -> Result<()> {
        let _guard = self.save_lock.lock().unwrap_or_else(|e| e.into_inner());
        let tmp = path.with_extension("tmp");
        self.memo.save(BufWriter::new(fs::File::create(&tmp)?))?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    fn evaluate(&self, k: usize, n: usize, complement: bool) -> Result<Vec<ClassValue>> {
        let list = classes(k, n)?;
        let done = AtomicUsize::new(0);
        let values = list
            .into_par_iter()
            .map(|c| {
                let g = c.graph();
                let m = factorization_count_with(&g, &self.memo, self.rule)?;
                let m_complement = if complement {
                    factorization_count_with(&g.complement(), &self.memo, self.rule)?
                } else {
                    BigUint::one()
                };
                if let Some(cp) = &self.checkpoint {
                    let finished = done.fetch_add(1, Ordering::Relaxed) + 1;
                    if cp.every > 0 && finished % cp.every == 0 {
                        self.save_memo(&cp.path)?;
                    }
                }
                Ok(ClassValue { weight: class_size(n, &c.aut_order), key: c.key, m, m_complement })
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(cp) = &self.checkpoint {
            self.save_memo(&cp.path)?;
        }
        Ok(values)
    }

    /// `R_{k,n}`, the number of reduced `k x n` Latin rectangles.
    pub fn reduced_rectangles(&self, k: usize, n: usize) -> Result<BigUint> {
        if k == 0 || k > n {
            return Err(CensusError::Invalid(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
        }
        check_order(n)?;
        let values = self.evaluate(k, n, false)?;
        let weighted: BigUint = values.iter().map(|v| &v.m * &v.weight).sum();
        scale(k, n, &weighted)
    }

    /// `R_n` summed over `𝓑(k, n)`, pairing each class with its complement.
    /// `k` defaults to `n / 2`; every `0 <= k <= n` gives the same value.
    pub fn reduced_squares(&self, n: usize, k: Option<usize>) -> Result<BigUint> {
        let k = k.unwrap_or(n / 2);
        if n == 0 || k > n {
            return Err(CensusError::Invalid(format!("need 0 <= k <= n and n >= 1, got k = {k}, n = {n}")));
        }
        check_order(n)?;
        let values = self.evaluate(k, n, true)?;
        let weighted: BigUint = values.iter().map(|v| &v.m * &v.m_complement * &v.weight).sum();
        scale(k, n, &weighted)
    }

    /// Minimum and maximum of `m(B)` over `𝓑(k, n)` with their multiplicities.
    pub fn extremal_m(&self, k: usize, n: usize) -> Result<CensusResult> {
        if k < 2 || k + 2 > n {
            return Err(CensusError::Invalid(format!("need 2 <= k <= n - 2, got k = {k}, n = {n}")));
        }
        check_order(n)?;
        let values = self.evaluate(k, n, false)?;
        let weighted: BigUint = values.iter().map(|v| &v.m * &v.weight).sum();
        let min_m = values.iter().map(|v| &v.m).min().expect("at least one class").clone();
        let max_m = values.iter().map(|v| &v.m).max().expect("at least one class").clone();
        let at = |target: &BigUint| values.iter().filter(|v| &v.m == target).map(|v| v.key.clone()).collect::<Vec<_>>();
        let (lo, hi) = (at(&min_m), at(&max_m));
        Ok(CensusResult {
            n,
            k,
            reduced_count: scale(k, n, &weighted)?,
            class_count: values.len(),
            min_count: lo.len(),
            max_count: hi.len(),
            min_m,
            max_m,
            witnesses: lo.into_iter().chain(hi).collect(),
        })
    }
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_CENSUS_N {
        return Err(CensusError::BudgetExceeded(format!("census formulas limited to n <= {MAX_CENSUS_N}")));
    }
    Ok(())
}

pub fn reduced_rectangles(k: usize, n: usize) -> Result<BigUint> {
    Census::default().reduced_rectangles(k, n)
}

pub fn reduced_squares(n: usize, k: Option<usize>) -> Result<BigUint> {
    Census::default().reduced_squares(n, k)
}

pub fn extremal_m(k: usize, n: usize) -> Result<CensusResult> {
    Census::default().extremal_m(k, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartite::canonical_form;
    use crate::latin::count_reduced;

    // Oracle: n x n 0/1 matrices with every row and column sum equal to k.
    fn labeled_regular(n: usize, k: usize) -> u64 {
        fn go(n: usize, k: usize, row: usize, col_sums: &mut [usize]) -> u64 {
            if row == n {
                return col_sums.iter().all(|&c| c == k) as u64;
            }
            let mut total = 0;
            for m in 0u32..1 << n {
                if m.count_ones() as usize != k || (0..n).any(|j| m >> j & 1 == 1 && col_sums[j] == k) {
                    continue;
                }
                (0..n).filter(|&j| m >> j & 1 == 1).for_each(|j| col_sums[j] += 1);
                total += go(n, k, row + 1, col_sums);
                (0..n).filter(|&j| m >> j & 1 == 1).for_each(|j| col_sums[j] -= 1);
            }
            total
        }
        go(n, k, 0, &mut vec![0; n])
    }

    #[test]
    fn class_sizes_sum_to_labeled_count() {
        for n in 1..=5 {
            for k in 0..=n {
                let total: BigUint = classes(k, n).unwrap().iter().map(|c| class_size(n, &c.aut_order)).sum();
                assert_eq!(total, BigUint::from(labeled_regular(n, k)), "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn representatives_are_canonical_and_distinct() {
        for n in 1..=6 {
            for k in 0..=n {
                let list = classes(k, n).unwrap();
                for c in &list {
                    let f = canonical_form(&c.graph());
                    assert_eq!(f.key, c.key);
                    assert_eq!(f.aut_order, c.aut_order);
                }
                assert!(list.windows(2).all(|w| w[0].key < w[1].key));
            }
        }
    }

    #[test]
    fn hand_evaluated_examples() {
        assert_eq!(reduced_rectangles(2, 2).unwrap(), BigUint::one());
        assert_eq!(reduced_squares(2, Some(1)).unwrap(), BigUint::one());
        assert_eq!(enumerate_graphs(1, 6).unwrap().count(), 1);
        let k22 = enumerate_graphs(2, 2).unwrap().next().unwrap();
        assert_eq!(k22.aut_order, BigUint::from(8u32));
    }

    #[test]
    fn formulas_match_brute_force() {
        for n in 1..=6 {
            for k in 1..=n {
                assert_eq!(reduced_rectangles(k, n).unwrap(), BigUint::from(count_reduced(k, n).unwrap()), "{k}x{n}");
            }
            let r = BigUint::from(count_reduced(n, n).unwrap());
            for k in 0..=n {
                assert_eq!(reduced_squares(n, Some(k)).unwrap(), r, "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(enumerate_graphs(0, 3), Err(CensusError::Invalid(_))));
        assert!(matches!(enumerate_graphs(4, 3), Err(CensusError::Invalid(_))));
        assert!(matches!(enumerate_graphs(3, 9), Err(CensusError::BudgetExceeded(_))));
        assert!(enumerate_graphs(2, 11).is_ok());
        assert!(matches!(enumerate_graphs(2, 12), Err(CensusError::BudgetExceeded(_))));
        assert!(matches!(reduced_rectangles(2, 9), Err(CensusError::BudgetExceeded(_))));
        assert!(matches!(extremal_m(1, 5), Err(CensusError::Invalid(_))));
        assert!(matches!(extremal_m(4, 5), Err(CensusError::Invalid(_))));
    }

    #[test]
    fn small_extremal_values() {
        let r = extremal_m(3, 5).unwrap();
        assert_eq!((r.min_m.clone(), r.min_count, r.max_m.clone(), r.max_count), (4u32.into(), 1, 6u32.into(), 1));
        assert_eq!(r.reduced_count, BigUint::from(46u32));
        assert_eq!(r.witnesses.len(), 2);
        assert!(r.machine_line().starts_with("CENSUS 5 3 46 "));
    }

    #[test]
    fn checkpoint_writes_memo() {
        let dir = std::env::temp_dir().join(format!("census-cp-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("memo.txt");
        let census = Census::default().with_checkpoint(Checkpoint { path: path.clone(), every: 1 });
        census.reduced_rectangles(4, 6).unwrap();
        let reloaded = FactorizationMemo::new();
        let count = reloaded.load(std::io::BufReader::new(fs::File::open(&path).unwrap())).unwrap();
        assert_eq!(count, census.memo().len());
        fs::remove_dir_all(&dir).unwrap();
    }
}
