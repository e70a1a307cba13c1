//! Canonical labeling of bipartite graphs by individualization and refinement.
//!
//! Vertices `0..nc` form the ordered cell `C`, vertices `nc..nc+ns` the cell
//! `S`; the search only produces labelings that keep the two sides apart. The
//! canonical leaf is the one maximizing (refinement-trace sequence,
//! certificate). Automorphisms found at equivalent leaves prune sibling
//! subtrees in the same orbit, and the automorphism group order is the product
//! of the orbit sizes met along the first path.
//!
//! Side exchange for balanced graphs is handled in [`canonical_form`] by
//! labeling both the graph and its transpose.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;

use super::graph::{bits, transpose_rows, width_mask, BipartiteGraph};
use super::GraphError;

pub(crate) const MAXV: usize = 32;

struct Graph {
    nc: usize,
    nv: usize,
    adj: [u32; MAXV],
    rows: [u32; MAXV],
}

impl Graph {
    fn new(nc: usize, ns: usize, rows: &[u32]) -> Self {
        assert!(nc >= 1 && nc + ns <= MAXV && rows.len() == nc);
        let mut adj = [0u32; MAXV];
        let mut r = [0u32; MAXV];
        for (i, &row) in rows.iter().enumerate() {
            debug_assert_eq!(row & !width_mask(ns), 0);
            r[i] = row;
            adj[i] = row << nc;
            for j in bits(row) {
                adj[nc + j] |= 1 << i;
            }
        }
        Graph { nc, nv: nc + ns, adj, rows: r }
    }
}

#[derive(Clone)]
struct Partition {
    lab: [u8; MAXV],
    cell_start: [u8; MAXV],
    cell_end: [u8; MAXV],
    cell_mask: [u32; MAXV],
    cells: usize,
}

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    (h ^ x).wrapping_mul(0x0000_0100_0000_01b3).rotate_left(17)
}

impl Partition {
    fn initial(g: &Graph) -> Self {
        let mut p = Partition {
            lab: [0; MAXV],
            cell_start: [0; MAXV],
            cell_end: [0; MAXV],
            cell_mask: [0; MAXV],
            cells: 0,
        };
        for v in 0..g.nv {
            p.lab[v] = v as u8;
        }
        p.make_cell(0, g.nc);
        if g.nv > g.nc {
            p.make_cell(g.nc, g.nv);
        }
        p
    }

    fn make_cell(&mut self, start: usize, end: usize) {
        let mut mask = 0;
        for q in start..end {
            let v = self.lab[q];
            self.cell_start[v as usize] = start as u8;
            mask |= 1 << v;
        }
        self.cell_end[start] = end as u8;
        self.cell_mask[start] = mask;
        self.cells += 1;
    }

    fn is_discrete(&self, g: &Graph) -> bool {
        self.cells == g.nv
    }

    /// Refines to the coarsest equitable partition finer than the current one,
    /// splitting cells by neighbour counts into each queued splitter. Returns a
    /// hash of the refinement trace.
    fn refine(&mut self, g: &Graph, initial: &[usize]) -> u64 {
        let nv = g.nv;
        let mut queue: Vec<u8> = Vec::with_capacity(4 * MAXV);
        let mut queued = 0u32;
        for &s in initial {
            queue.push(s as u8);
            queued |= 1 << s;
        }
        let mut head = 0;
        let mut h = FNV_OFFSET;
        let mut counts = [0u8; MAXV];
        while head < queue.len() {
            let w = queue[head] as usize;
            head += 1;
            queued &= !(1 << w);
            let wmask = self.cell_mask[w];
            let mut x = 0;
            while x < nv {
                let end = self.cell_end[x] as usize;
                if end - x > 1 {
                    let c0 = (g.adj[self.lab[x] as usize] & wmask).count_ones() as u8;
                    let mut uniform = true;
                    for q in x..end {
                        let c = (g.adj[self.lab[q] as usize] & wmask).count_ones() as u8;
                        counts[q] = c;
                        uniform &= c == c0;
                    }
                    if !uniform {
                        // insertion sort of (count, vertex) on x..end
                        for i in x + 1..end {
                            let (c, v) = (counts[i], self.lab[i]);
                            let mut j = i;
                            while j > x && counts[j - 1] > c {
                                counts[j] = counts[j - 1];
                                self.lab[j] = self.lab[j - 1];
                                j -= 1;
                            }
                            counts[j] = c;
                            self.lab[j] = v;
                        }
                        let mut fs = x;
                        let mut fragments = 0;
                        while fs < end {
                            let val = counts[fs];
                            let mut fe = fs + 1;
                            while fe < end && counts[fe] == val {
                                fe += 1;
                            }
                            let mut mask = 0u32;
                            for q in fs..fe {
                                let v = self.lab[q];
                                mask |= 1 << v;
                                self.cell_start[v as usize] = fs as u8;
                            }
                            self.cell_end[fs] = fe as u8;
                            self.cell_mask[fs] = mask;
                            h = mix(h, (w as u64) << 48 | (x as u64) << 32 | (val as u64) << 16 | (fe - fs) as u64);
                            if queued >> fs & 1 == 0 {
                                queue.push(fs as u8);
                                queued |= 1 << fs;
                            }
                            fragments += 1;
                            fs = fe;
                        }
                        self.cells += fragments - 1;
                    }
                }
                x = end;
            }
        }
        mix(h, self.cells as u64)
    }

    fn individualize(&mut self, g: &Graph, v: usize) -> u64 {
        let x = self.cell_start[v] as usize;
        let end = self.cell_end[x] as usize;
        let p = (x..end).find(|&q| self.lab[q] as usize == v).expect("vertex in its cell");
        self.lab.swap(x, p);
        let old = self.cell_mask[x];
        self.cell_end[x] = (x + 1) as u8;
        self.cell_mask[x] = 1 << v;
        self.cell_end[x + 1] = end as u8;
        self.cell_mask[x + 1] = old & !(1 << v);
        for q in x + 1..end {
            self.cell_start[self.lab[q] as usize] = (x + 1) as u8;
        }
        self.cells += 1;
        self.refine(g, &[x])
    }

    /// First non-singleton cell of least size.
    fn target_cell(&self, g: &Graph) -> (usize, usize) {
        let mut best: Option<(usize, usize)> = None;
        let mut x = 0;
        while x < g.nv {
            let end = self.cell_end[x] as usize;
            if end - x > 1 && best.is_none_or(|(s, e)| end - x < e - s) {
                best = Some((x, end));
            }
            x = end;
        }
        best.expect("non-discrete partition has a non-singleton cell")
    }

    fn certificate(&self, g: &Graph) -> Vec<u32> {
        let mut pos = [0u8; MAXV];
        for q in g.nc..g.nv {
            pos[self.lab[q] as usize - g.nc] = (q - g.nc) as u8;
        }
        (0..g.nc)
            .map(|q| {
                let row = g.rows[self.lab[q] as usize];
                bits(row).fold(0u32, |acc, j| acc | 1 << pos[j])
            })
            .collect()
    }
}

#[derive(Clone)]
struct Leaf {
    path: Vec<u8>,
    invs: Vec<u64>,
    lab: [u8; MAXV],
    cert: Vec<u32>,
}

/// Result of labeling a bipartite graph without side exchange.
pub(crate) struct Labeling {
    pub nv: usize,
    /// Biadjacency rows under the canonical labeling.
    pub cert: Vec<u32>,
    /// Canonical position -> vertex.
    pub lab: [u8; MAXV],
    /// Automorphisms as vertex maps; together they generate the group.
    pub generators: Vec<[u8; MAXV]>,
    pub aut_order: u128,
}

impl Labeling {
    /// Orbit representative of every vertex under the automorphism group.
    pub fn orbits(&self) -> [u8; MAXV] {
        orbits_of(self.nv, self.generators.iter())
    }
}

fn uf_find(uf: &mut [u8; MAXV], mut x: usize) -> usize {
    while uf[x] as usize != x {
        uf[x] = uf[uf[x] as usize];
        x = uf[x] as usize;
    }
    x
}

pub(crate) fn orbits_of<'a>(nv: usize, gens: impl Iterator<Item = &'a [u8; MAXV]>) -> [u8; MAXV] {
    let mut uf = [0u8; MAXV];
    for (v, slot) in uf.iter_mut().enumerate() {
        *slot = v as u8;
    }
    for g in gens {
        for v in 0..nv {
            let (a, b) = (uf_find(&mut uf, v), uf_find(&mut uf, g[v] as usize));
            if a != b {
                let (lo, hi) = (a.min(b), a.max(b));
                uf[hi] = lo as u8;
            }
        }
    }
    for v in 0..nv {
        uf[v] = uf_find(&mut uf, v) as u8;
    }
    uf
}

struct Search<'a> {
    g: &'a Graph,
    path: Vec<u8>,
    invs: Vec<u64>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<[u8; MAXV]>,
    aut_order: u128,
}

fn common_prefix(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Compares a node's trace prefix with a complete leaf trace: `Less` means
/// every leaf below the node is smaller.
fn cmp_prefix(prefix: &[u64], full: &[u64]) -> Ordering {
    let m = prefix.len().min(full.len());
    match prefix[..m].cmp(&full[..m]) {
        Ordering::Equal if prefix.len() > full.len() => Ordering::Greater,
        o => o,
    }
}

impl Search<'_> {
    fn orbits_fixing_path(&self) -> [u8; MAXV] {
        let path = &self.path;
        orbits_of(self.g.nv, self.generators.iter().filter(|g| path.iter().all(|&v| g[v as usize] == v)))
    }

    fn record_automorphism(&mut self, from: &[u8; MAXV], to: &[u8; MAXV]) {
        let mut gen = [0u8; MAXV];
        for (v, slot) in gen.iter_mut().enumerate() {
            *slot = v as u8;
        }
        for q in 0..self.g.nv {
            gen[from[q] as usize] = to[q];
        }
        self.generators.push(gen);
    }

    fn leaf(&mut self, part: &Partition) -> Option<usize> {
        let cert = part.certificate(self.g);
        let Some(first) = &self.first else {
            let leaf = Leaf { path: self.path.clone(), invs: self.invs.clone(), lab: part.lab, cert };
            self.first = Some(leaf.clone());
            self.best = Some(leaf);
            return None;
        };
        if self.invs == first.invs && cert == first.cert {
            let (flab, fpath) = (first.lab, first.path.clone());
            self.record_automorphism(&flab, &part.lab);
            return Some(common_prefix(&self.path, &fpath));
        }
        let best = self.best.as_ref().expect("best set with first");
        match self.invs.cmp(&best.invs).then_with(|| cert.cmp(&best.cert)) {
            Ordering::Greater => {
                self.best = Some(Leaf { path: self.path.clone(), invs: self.invs.clone(), lab: part.lab, cert });
                None
            }
            Ordering::Equal => {
                let (blab, bpath) = (best.lab, best.path.clone());
                self.record_automorphism(&blab, &part.lab);
                Some(common_prefix(&self.path, &bpath))
            }
            Ordering::Less => None,
        }
    }

    /// Explores the subtree below `part`. A returned depth asks the ancestor
    /// at that depth to abandon its current child.
    fn node(&mut self, part: &Partition, on_first: bool) -> Option<usize> {
        if part.is_discrete(self.g) {
            return self.leaf(part);
        }
        let depth = self.path.len();
        let (x, end) = part.target_cell(self.g);
        let members: Vec<u8> = part.lab[x..end].to_vec();
        let mut explored: Vec<u8> = Vec::with_capacity(members.len());
        let mut orbit_cache: Option<(usize, [u8; MAXV])> = None;
        for (i, &v) in members.iter().enumerate() {
            if !explored.is_empty() {
                let stale = orbit_cache.as_ref().is_none_or(|(n, _)| *n != self.generators.len());
                if stale {
                    orbit_cache = Some((self.generators.len(), self.orbits_fixing_path()));
                }
                let orb = &orbit_cache.as_ref().expect("just computed").1;
                if explored.iter().any(|&e| orb[e as usize] == orb[v as usize]) {
                    continue;
                }
            }
            let mut child = part.clone();
            let h = child.individualize(self.g, v as usize);
            self.path.push(v);
            self.invs.push(h);
            let prune = match (&self.first, &self.best) {
                (Some(first), Some(best)) => {
                    first.invs.get(..self.invs.len()) != Some(&self.invs[..])
                        && cmp_prefix(&self.invs, &best.invs) == Ordering::Less
                }
                _ => false,
            };
            let jump = if prune { None } else { self.node(&child, on_first && i == 0) };
            self.path.pop();
            self.invs.pop();
            explored.push(v);
            if let Some(t) = jump {
                if t < depth {
                    return Some(t);
                }
            }
        }
        if on_first {
            let orb = self.orbits_fixing_path();
            let v1 = members[0] as usize;
            let size = members.iter().filter(|&&w| orb[w as usize] == orb[v1]).count();
            self.aut_order *= size as u128;
        }
        None
    }
}

/// Canonically labels the bipartite graph with `nc` column-side vertices
/// (biadjacency `rows`) and `ns` symbol-side vertices, keeping the sides fixed.
pub(crate) fn label(nc: usize, ns: usize, rows: &[u32]) -> Labeling {
    let g = Graph::new(nc, ns, rows);
    let mut root = Partition::initial(&g);
    let initial: Vec<usize> = if ns > 0 { vec![0, nc] } else { vec![0] };
    root.refine(&g, &initial);
    let mut search = Search {
        g: &g,
        path: Vec::new(),
        invs: Vec::new(),
        first: None,
        best: None,
        generators: Vec::new(),
        aut_order: 1,
    };
    search.node(&root, true);
    let best = search.best.expect("search reaches a leaf");
    Labeling {
        nv: g.nv,
        cert: best.cert,
        lab: best.lab,
        generators: search.generators,
        aut_order: search.aut_order,
    }
}

/// Isomorphism-class key of a balanced bipartite graph, where isomorphisms may
/// keep `C` and `S` in place or exchange them. Byte 0 is `n`; then one
/// big-endian `u16` per biadjacency row of the canonical relabeling.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Box<[u8]>);

impl CanonicalKey {
    fn from_rows(n: usize, rows: &[u32]) -> Self {
        let mut bytes = Vec::with_capacity(1 + 2 * n);
        bytes.push(n as u8);
        for &r in rows {
            bytes.extend_from_slice(&(r as u16).to_be_bytes());
        }
        CanonicalKey(bytes.into_boxed_slice())
    }

    /// Validates a raw key: side size in range, one row per column vertex,
    /// no bits beyond the side width.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self, GraphError> {
        let Some((&n, rest)) = bytes.split_first() else {
            return Err(GraphError::Invalid("empty key".into()));
        };
        let n = n as usize;
        if n == 0 || n > super::MAX_SIDE || rest.len() != 2 * n {
            return Err(GraphError::Invalid(format!("key length {} for side size {n}", bytes.len())));
        }
        let w = width_mask(n);
        if rest.chunks(2).any(|c| u16::from_be_bytes([c[0], c[1]]) as u32 & !w != 0) {
            return Err(GraphError::Invalid("key row has bits beyond the side width".into()));
        }
        Ok(CanonicalKey(bytes.into()))
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0[0] as usize
    }

    pub fn rows(&self) -> Vec<u32> {
        self.0[1..].chunks(2).map(|c| u16::from_be_bytes([c[0], c[1]]) as u32).collect()
    }

    /// The canonical representative graph.
    pub fn to_graph(&self) -> BipartiteGraph {
        BipartiteGraph::from_rows(self.n(), self.rows()).expect("validated key")
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str) -> Result<Self, GraphError> {
        if s.len() % 2 != 0 || !s.bytes().all(|b| b.is_ascii_hexdigit() && !b.is_ascii_uppercase()) {
            return Err(GraphError::Invalid(format!("bad hex key {s:?}")));
        }
        let bytes: Vec<u8> = (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(&s[i..i + 2], 16).expect("validated hex"))
            .collect();
        Self::from_bytes(&bytes)
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.to_hex())
    }
}

/// Canonical key plus the order of the automorphism group (side exchange allowed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub key: CanonicalKey,
    pub aut_order: BigUint,
}

impl CanonicalForm {
    pub fn graph(&self) -> BipartiteGraph {
        self.key.to_graph()
    }
}

/// Canonical form and side-preserving automorphism order, plus whether the
/// graph is isomorphic to its transpose.
pub(crate) fn canonical_parts(g: &BipartiteGraph) -> (CanonicalKey, u128, bool) {
    let n = g.n();
    let straight = label(n, n, g.rows());
    let flipped = label(n, n, &transpose_rows(n, g.rows()));
    let a = CanonicalKey::from_rows(n, &straight.cert);
    let b = CanonicalKey::from_rows(n, &flipped.cert);
    let self_dual = a == b;
    (a.min(b), straight.aut_order, self_dual)
}

pub fn canonical_form(g: &BipartiteGraph) -> CanonicalForm {
    let (key, preserving, self_dual) = canonical_parts(g);
    let mut aut_order = BigUint::from(preserving);
    if self_dual {
        aut_order *= 2u32;
    }
    CanonicalForm { key, aut_order }
}

/// Key of a graph whose side-preserving labeling is already known; used when
/// the straight orientation was labeled as part of generation.
pub(crate) fn key_from_cert(n: usize, cert: &[u32]) -> CanonicalKey {
    CanonicalKey::from_rows(n, cert)
}
