use std::fmt;

use super::LatinError;

/// A bijection on `{1..m}`. Stored 0-based.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation { images: (0..m as u8).collect() }
    }

    /// Builds a permutation from 1-based images: `images[i - 1]` is the image of `i`.
    pub fn from_images(images: &[usize]) -> Result<Self, LatinError> {
        let m = images.len();
        if m > u8::MAX as usize {
            return Err(LatinError::NotAPermutation(format!("degree {m} too large")));
        }
        let mut seen = vec![false; m];
        let mut out = Vec::with_capacity(m);
        for &x in images {
            if x == 0 || x > m || seen[x - 1] {
                return Err(LatinError::NotAPermutation(format!("{images:?}")));
            }
            seen[x - 1] = true;
            out.push((x - 1) as u8);
        }
        Ok(Permutation { images: out })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 1-based image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    /// 1-based images.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    #[inline]
    pub(crate) fn map0(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(self.degree(), other.degree());
        Permutation { images: other.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// All permutations of degree `m` in lexicographic order of their images.
    pub fn all(m: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..m as u8).collect();
        loop {
            out.push(Permutation { images: cur.clone() });
            if !next_permutation(&mut cur) {
                break;
            }
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images())
    }
}

pub(crate) fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A permutation of the three coordinates (row, column, symbol) of the triples
/// of a Latin square. Coordinate `i` of a triple moves to position `perm()[i]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Conjugate([u8; 3]);

impl Conjugate {
    pub const IDENTITY: Conjugate = Conjugate([0, 1, 2]);
    /// Swap rows and columns.
    pub const TRANSPOSE: Conjugate = Conjugate([1, 0, 2]);

    pub const ALL: [Conjugate; 6] = [
        Conjugate([0, 1, 2]),
        Conjugate([1, 0, 2]),
        Conjugate([0, 2, 1]),
        Conjugate([2, 1, 0]),
        Conjugate([1, 2, 0]),
        Conjugate([2, 0, 1]),
    ];

    /// From the 0-based destination positions of (row, column, symbol).
    pub fn new(perm: [usize; 3]) -> Option<Self> {
        let mut seen = [false; 3];
        for &p in &perm {
            if p > 2 || seen[p] {
                return None;
            }
            seen[p] = true;
        }
        Some(Conjugate([perm[0] as u8, perm[1] as u8, perm[2] as u8]))
    }

    pub fn perm(&self) -> [usize; 3] {
        [self.0[0] as usize, self.0[1] as usize, self.0[2] as usize]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = [0u8; 3];
        for i in 0..3 {
            inv[self.0[i] as usize] = i as u8;
        }
        Conjugate(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Conjugate) -> Self {
        Conjugate([self.0[other.0[0] as usize], self.0[other.0[1] as usize], self.0[other.0[2] as usize]])
    }

    #[inline]
    pub fn apply_triple(&self, t: [usize; 3]) -> [usize; 3] {
        let mut out = [0; 3];
        for i in 0..3 {
            out[self.0[i] as usize] = t[i];
        }
        out
    }
}

/// A conjugation followed by an isotopism: a triple `t` maps to
/// `(rows(t'0), cols(t'1), symbols(t'2))` where `t'` is `conjugate` applied to `t`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Paratopism {
    pub conjugate: Conjugate,
    pub rows: Permutation,
    pub cols: Permutation,
    pub symbols: Permutation,
}

impl Paratopism {
    pub fn identity(n: usize) -> Self {
        Self::isotopism(Permutation::identity(n), Permutation::identity(n), Permutation::identity(n))
            .expect("identity degrees agree")
    }

    pub fn new(
        conjugate: Conjugate,
        rows: Permutation,
        cols: Permutation,
        symbols: Permutation,
    ) -> Result<Self, LatinError> {
        let n = rows.degree();
        for p in [&cols, &symbols] {
            if p.degree() != n {
                return Err(LatinError::DegreeMismatch { expected: n, actual: p.degree() });
            }
        }
        Ok(Paratopism { conjugate, rows, cols, symbols })
    }

    pub fn isotopism(rows: Permutation, cols: Permutation, symbols: Permutation) -> Result<Self, LatinError> {
        Self::new(Conjugate::IDENTITY, rows, cols, symbols)
    }

    /// The same permutation on rows, columns and symbols.
    pub fn isomorphism(p: Permutation) -> Self {
        Paratopism { conjugate: Conjugate::IDENTITY, rows: p.clone(), cols: p.clone(), symbols: p }
    }

    pub fn conjugation(n: usize, conjugate: Conjugate) -> Self {
        let id = Permutation::identity(n);
        Paratopism { conjugate, rows: id.clone(), cols: id.clone(), symbols: id }
    }

    pub fn degree(&self) -> usize {
        self.rows.degree()
    }

    fn component(&self, i: usize) -> &Permutation {
        match i {
            0 => &self.rows,
            1 => &self.cols,
            _ => &self.symbols,
        }
    }

    /// Image of a 0-based triple.
    #[inline]
    pub(crate) fn apply_triple0(&self, t: [usize; 3]) -> [usize; 3] {
        let c = self.conjugate.apply_triple(t);
        [self.rows.map0(c[0]), self.cols.map0(c[1]), self.symbols.map0(c[2])]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Paratopism) -> Paratopism {
        // Moving `other`'s isotopism past `self.conjugate` relabels its components:
        // position i of the result carries other's component from position inv(i).
        let inv = self.conjugate.inverse().perm();
        let comp = |i: usize| self.component(i).compose(other.component(inv[i]));
        Paratopism {
            conjugate: self.conjugate.compose(&other.conjugate),
            rows: comp(0),
            cols: comp(1),
            symbols: comp(2),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.conjugate == Conjugate::IDENTITY
            && self.rows.is_identity()
            && self.cols.is_identity()
            && self.symbols.is_identity()
    }
}
