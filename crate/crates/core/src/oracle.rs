//! Brute-force ground truth on explicit small cubes.
//!
//! Vertices are bit-masks (bit `i` is coordinate `i`) and Hamming distance is
//! the population count of an XOR. Cells are 0-based internally.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational, TensorVector};
use crate::quotient::{validate_quotient, QuotientMatrix};
use crate::recursion::{initial_triangle, triples_at_level, DistributionTable, TableKind, Triple};

pub type Vertex = u32;

/// Largest cube that may be stored explicitly.
pub const MAX_STORED_N: usize = 14;
/// Default cap for full triple enumeration (8ⁿ triples).
pub const MAX_TRIPLE_N: usize = 6;
/// Cap for per-vertex pair enumeration (4ⁿ pairs).
pub const MAX_PAIR_N: usize = 7;

pub fn distance(u: Vertex, v: Vertex) -> usize {
    (u ^ v).count_ones() as usize
}

/// `(r1, r2, r3)` of an ordered triple `(v, x, y)`: the number of coordinates
/// where `v`, `x` or `y` respectively is the odd one out.
pub fn triple_of(v: Vertex, x: Vertex, y: Vertex) -> Triple {
    let r1 = ((v ^ x) & (v ^ y)).count_ones() as usize;
    let r2 = ((x ^ v) & (x ^ y)).count_ones() as usize;
    let r3 = ((y ^ v) & (y ^ x)).count_ones() as usize;
    (r1, r2, r3)
}

fn neighbors(v: Vertex, n: usize) -> impl Iterator<Item = Vertex> {
    (0..n).map(move |b| v ^ (1 << b))
}

/// Index of `t` among all triples of level at most `max`, levels ascending
/// and lexicographic within a level.
fn triple_slot(t: Triple) -> usize {
    let l = t.0 + t.1 + t.2;
    // triples below level l, then position of (a, b, c) within level l
    let below = l * (l + 1) * (l + 2) / 6;
    let a = t.0;
    let before_a: usize = (0..a).map(|a2| l - a2 + 1).sum();
    below + before_a + t.1
}

fn slot_count(max_level: usize) -> usize {
    (max_level + 1) * (max_level + 2) * (max_level + 3) / 6
}

/// An explicit assignment of every vertex of the n-cube to a cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionInstance {
    n: usize,
    m: usize,
    color: Vec<usize>,
}

impl PartitionInstance {
    /// `color[v]` is the 0-based cell of vertex `v`.
    pub fn new(n: usize, m: usize, color: Vec<usize>) -> Result<Self> {
        if n > MAX_STORED_N {
            return Err(Error::DimensionTooLarge { n, limit: MAX_STORED_N, what: "explicit partitions" });
        }
        if color.len() != 1 << n {
            return Err(Error::DimensionMismatch { expected: 1 << n, found: color.len() });
        }
        let mut seen = vec![false; m];
        for &c in &color {
            if c >= m {
                return Err(Error::InvalidArgument(format!("cell label {} outside 1..{m}", c + 1)));
            }
            seen[c] = true;
        }
        if let Some(empty) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidArgument(format!("cell {} is empty", empty + 1)));
        }
        Ok(Self { n, m, color })
    }

    /// Builds from explicit cells; every vertex must appear exactly once.
    pub fn from_cells(n: usize, cells: &[Vec<Vertex>]) -> Result<Self> {
        if n > MAX_STORED_N {
            return Err(Error::DimensionTooLarge { n, limit: MAX_STORED_N, what: "explicit partitions" });
        }
        let mut color = vec![usize::MAX; 1 << n];
        for (i, cell) in cells.iter().enumerate() {
            for &v in cell {
                let slot = color
                    .get_mut(v as usize)
                    .ok_or_else(|| Error::InvalidArgument(format!("vertex {v} outside the {n}-cube")))?;
                if *slot != usize::MAX {
                    return Err(Error::InvalidArgument(format!("vertex {v} appears twice")));
                }
                *slot = i;
            }
        }
        if let Some(v) = color.iter().position(|&c| c == usize::MAX) {
            return Err(Error::InvalidArgument(format!("vertex {v} is not assigned to a cell")));
        }
        Self::new(n, cells.len(), color)
    }

    /// Two cells: `first` and its complement.
    pub fn from_set(n: usize, first: &[Vertex]) -> Result<Self> {
        let mut color = vec![1; 1 << n];
        for &v in first {
            *color.get_mut(v as usize).ok_or_else(|| Error::InvalidArgument(format!("vertex {v} outside the {n}-cube")))? = 0;
        }
        Self::new(n, 2, color)
    }

    /// Every vertex in its own cell.
    pub fn singletons(n: usize) -> Result<Self> {
        Self::new(n, 1 << n, (0..1 << n).collect())
    }

    /// Even-weight and odd-weight vertices.
    pub fn parity(n: usize) -> Result<Self> {
        Self::new(n, 2, (0..1u32 << n).map(|v| (v.count_ones() % 2) as usize).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn color(&self, v: Vertex) -> usize {
        self.color[v as usize]
    }

    pub fn colors(&self) -> &[usize] {
        &self.color
    }

    pub fn cells(&self) -> Vec<Vec<Vertex>> {
        let mut cells = vec![Vec::new(); self.m];
        for (v, &c) in self.color.iter().enumerate() {
            cells[c].push(v as Vertex);
        }
        cells
    }

    pub fn cell_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.m];
        for &c in &self.color {
            sizes[c] += 1;
        }
        sizes
    }

    fn neighbor_counts(&self, v: Vertex) -> Vec<i64> {
        let mut row = vec![0; self.m];
        for u in neighbors(v, self.n) {
            row[self.color(u)] += 1;
        }
        row
    }
}

/// A vertex whose neighbor counts disagree with the first vertex of its cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquitableWitness {
    pub vertex: Vertex,
    pub cell: usize,
    pub reference: Vertex,
    pub expected: Vec<i64>,
    pub found: Vec<i64>,
}

impl std::fmt::Display for EquitableWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "vertex {} of cell {} has neighbor counts {:?}, vertex {} of the same cell has {:?}",
            self.vertex,
            self.cell + 1,
            self.found,
            self.reference,
            self.expected
        )
    }
}

/// Returns the quotient matrix, or the first vertex breaking equitability.
pub fn verify_equitable(p: &PartitionInstance) -> std::result::Result<QuotientMatrix, EquitableWitness> {
    let mut rows: Vec<Option<(Vertex, Vec<i64>)>> = vec![None; p.m];
    for v in 0..(1u32 << p.n) {
        let c = p.color(v);
        let counts = p.neighbor_counts(v);
        match &rows[c] {
            None => rows[c] = Some((v, counts)),
            Some((reference, expected)) if *expected != counts => {
                return Err(EquitableWitness {
                    vertex: v,
                    cell: c,
                    reference: *reference,
                    expected: expected.clone(),
                    found: counts,
                });
            }
            Some(_) => {}
        }
    }
    let rows: Vec<Vec<i64>> = rows.into_iter().map(|r| r.expect("cells are nonempty").1).collect();
    // the cube is connected, so the quotient of an equitable partition always validates
    Ok(validate_quotient(&rows, p.n).expect("quotient of an equitable partition is valid"))
}

/// Vertices with nonnegative multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexMultiset {
    counts: BTreeMap<Vertex, u64>,
}

impl VertexMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vertices(vs: &[Vertex]) -> Self {
        let mut x = Self::new();
        for &v in vs {
            x.insert(v, 1);
        }
        x
    }

    pub fn insert(&mut self, v: Vertex, k: u64) {
        if k > 0 {
            *self.counts.entry(v).or_insert(0) += k;
        }
    }

    pub fn multiplicity(&self, v: Vertex) -> u64 {
        self.counts.get(&v).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, u64)> + '_ {
        self.counts.iter().map(|(v, k)| (*v, *k))
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }
}

/// `[X]`: each vertex counted once per (multiplicity-weighted) neighbor in `X`.
pub fn multi_neighborhood(x: &VertexMultiset, n: usize) -> VertexMultiset {
    let mut out = VertexMultiset::new();
    for (v, k) in x.iter() {
        for u in neighbors(v, n) {
            out.insert(u, k);
        }
    }
    out
}

/// Total multiplicity of `x` in each cell.
pub fn spectrum(x: &VertexMultiset, p: &PartitionInstance) -> Vec<u64> {
    let mut sp = vec![0; p.m];
    for (v, k) in x.iter() {
        sp[p.color(v)] += k;
    }
    sp
}

fn check_cap(n: usize, limit: usize, allow_large: bool, what: &'static str) -> Result<()> {
    if n > limit && !allow_large {
        return Err(Error::DimensionTooLarge { n, limit, what });
    }
    Ok(())
}

fn counts_to_table(kind: TableKind, n: usize, m: usize, counts: &[u64]) -> Result<DistributionTable> {
    let m3 = m * m * m;
    let mut entries = BTreeMap::new();
    for level in 0..=n {
        for t in triples_at_level(level) {
            let slot = triple_slot(t);
            let vals: Vec<Rational> = counts[slot * m3..(slot + 1) * m3].iter().map(|&c| Rational::from_integer(c.into())).collect();
            entries.insert(t, TensorVector::from_entries(m, vals)?);
        }
    }
    DistributionTable::new(kind, n, m, n, entries)
}

/// Triangle table by enumerating all `8ⁿ` ordered triples `(v, x, y)`.
///
/// Roughly 2.6·10⁸ triples at `n = 6`, a few seconds on one core. Larger
/// cubes are refused unless `allow_large` is set.
pub fn brute_triangle(p: &PartitionInstance, allow_large: bool) -> Result<DistributionTable> {
    check_cap(p.n, MAX_TRIPLE_N, allow_large, "triple enumeration")?;
    let (n, m) = (p.n, p.m);
    let m3 = m * m * m;
    let len = slot_count(n) * m3;
    let counts = (0..1u32 << n)
        .into_par_iter()
        .fold(
            || vec![0u64; len],
            |mut acc, v| {
                let ci = p.color(v) * m * m;
                for x in 0..1u32 << n {
                    let cij = ci + p.color(x) * m;
                    for y in 0..1u32 << n {
                        let slot = triple_slot(triple_of(v, x, y));
                        acc[slot * m3 + cij + p.color(y)] += 1;
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; len],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    counts_to_table(TableKind::Triangle, n, m, &counts)
}

/// Interweight table anchored at `v`: counts of pairs `(x, y)` by cell and
/// distance triple. Only the slice `i = color(v)` is nonzero.
pub fn brute_interweight(p: &PartitionInstance, v: Vertex) -> Result<DistributionTable> {
    check_cap(p.n, MAX_PAIR_N, false, "pair enumeration")?;
    if v as usize >= p.color.len() {
        return Err(Error::InvalidArgument(format!("vertex {v} outside the {}-cube", p.n)));
    }
    let (n, m) = (p.n, p.m);
    let m3 = m * m * m;
    let mut counts = vec![0u64; slot_count(n) * m3];
    let ci = p.color(v) * m * m;
    for x in 0..1u32 << n {
        let cij = ci + p.color(x) * m;
        for y in 0..1u32 << n {
            counts[triple_slot(triple_of(v, x, y)) * m3 + cij + p.color(y)] += 1;
        }
    }
    counts_to_table(TableKind::Interweight, n, m, &counts)
}

/// Outcome of the strong distance invariance check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvarianceOutcome {
    /// Anchors within each cell give identical interweight tables.
    Invariant,
    /// Two anchors of one cell disagree at `triple`.
    NotInvariant { cell: usize, first: Vertex, second: Vertex, triple: Triple },
    /// The partition is not equitable, so the property does not apply.
    Inapplicable(EquitableWitness),
}

pub fn strong_invariance_check(p: &PartitionInstance) -> Result<InvarianceOutcome> {
    if let Err(w) = verify_equitable(p) {
        return Ok(InvarianceOutcome::Inapplicable(w));
    }
    let tables: Vec<DistributionTable> = (0..1u32 << p.n).into_par_iter().map(|v| brute_interweight(p, v)).collect::<Result<_>>()?;
    let mut reference: Vec<Option<Vertex>> = vec![None; p.m];
    for v in 0..1u32 << p.n {
        let c = p.color(v);
        match reference[c] {
            None => reference[c] = Some(v),
            Some(r) => {
                let (a, b) = (&tables[r as usize], &tables[v as usize]);
                if let Some((t, _)) = a.iter().find(|(t, w)| b.get(**t) != Some(*w)) {
                    return Ok(InvarianceOutcome::NotInvariant { cell: c, first: r, second: v, triple: *t });
                }
            }
        }
    }
    Ok(InvarianceOutcome::Invariant)
}

/// Sorted `(r1, r2, r3)` of every unordered 3-subset of `x`.
///
/// Permuting the roles of a triangle's vertices permutes its triple, so the
/// sorted triple is well defined.
pub fn set_triangle_multiset(x: &[Vertex]) -> Result<Vec<Triple>> {
    if x.len() < 3 {
        return Err(Error::InvalidArgument(format!("need at least 3 vertices, got {}", x.len())));
    }
    let mut out = Vec::new();
    for a in 0..x.len() {
        for b in a + 1..x.len() {
            for c in b + 1..x.len() {
                let (r1, r2, r3) = triple_of(x[a], x[b], x[c]);
                let mut t = [r1, r2, r3];
                t.sort_unstable();
                out.push((t[0], t[1], t[2]));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Sorted Hamming distances over unordered pairs of `x`.
pub fn distance_distribution(x: &[Vertex]) -> Result<Vec<usize>> {
    if x.len() < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 vertices, got {}", x.len())));
    }
    let mut out: Vec<usize> = (0..x.len()).flat_map(|a| (a + 1..x.len()).map(move |b| (a, b))).map(|(a, b)| distance(x[a], x[b])).collect();
    out.sort_unstable();
    Ok(out)
}

/// A rational m-vector at every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectStructure {
    n: usize,
    m: usize,
    values: Vec<Vec<Rational>>,
}

impl PerfectStructure {
    pub fn new(n: usize, m: usize, values: Vec<Vec<Rational>>) -> Result<Self> {
        if n > MAX_STORED_N {
            return Err(Error::DimensionTooLarge { n, limit: MAX_STORED_N, what: "perfect structures" });
        }
        if values.len() != 1 << n {
            return Err(Error::DimensionMismatch { expected: 1 << n, found: values.len() });
        }
        if let Some(bad) = values.iter().find(|v| v.len() != m) {
            return Err(Error::DimensionMismatch { expected: m, found: bad.len() });
        }
        Ok(Self { n, m, values })
    }

    pub fn from_integers(n: usize, values: &[Vec<i64>]) -> Result<Self> {
        let m = values.first().map_or(0, Vec::len);
        Self::new(n, m, values.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect())
    }

    /// Indicator vectors of the cells.
    pub fn from_partition(p: &PartitionInstance) -> Self {
        let values = p
            .colors()
            .iter()
            .map(|&c| (0..p.m).map(|j| if j == c { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        Self { n: p.n, m: p.m, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn value(&self, v: Vertex) -> &[Rational] {
        &self.values[v as usize]
    }

    pub fn values(&self) -> &[Vec<Rational>] {
        &self.values
    }
}

/// First vertex whose neighborhood sum differs from `value · S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectWitness {
    pub vertex: Vertex,
    pub expected: Vec<Rational>,
    pub found: Vec<Rational>,
}

pub fn verify_perfect_structure(ps: &PerfectStructure, s: &Matrix) -> Result<std::result::Result<(), PerfectWitness>> {
    if s.rows() != ps.m || s.cols() != ps.m {
        return Err(Error::DimensionMismatch { expected: ps.m, found: s.rows() });
    }
    for v in 0..1u32 << ps.n {
        let expected = s.left_mul_vec(ps.value(v))?;
        let mut found = vec![Rational::zero(); ps.m];
        for u in neighbors(v, ps.n) {
            for (f, x) in found.iter_mut().zip(ps.value(u)) {
                *f += x;
            }
        }
        if found != expected {
            return Ok(Err(PerfectWitness { vertex: v, expected, found }));
        }
    }
    Ok(Ok(()))
}

fn outer3(a: &[Rational], b: &[Rational], c: &[Rational]) -> Vec<Rational> {
    let mut out = Vec::with_capacity(a.len() * b.len() * c.len());
    for x in a {
        for y in b {
            let xy = x * y;
            for z in c {
                out.push(&xy * z);
            }
        }
    }
    out
}

/// `Σ_v C(v) ⊗ C(v) ⊗ C(v)`, the level-0 triangle tensor of a perfect structure.
pub fn ps_initial_triangle(ps: &PerfectStructure) -> TensorVector {
    let mut acc = TensorVector::zeros(ps.m);
    for v in &ps.values {
        let t = TensorVector::from_entries(ps.m, outer3(v, v, v)).expect("shape");
        acc += &t;
    }
    acc
}

/// Triangle table of a perfect structure by enumerating all triples.
pub fn brute_ps_triangle(ps: &PerfectStructure) -> Result<DistributionTable> {
    check_cap(ps.n, 4, false, "rational triple enumeration")?;
    let n = ps.n;
    let mut entries: BTreeMap<Triple, TensorVector> = (0..=n).flat_map(triples_at_level).map(|t| (t, TensorVector::zeros(ps.m))).collect();
    for v in 0..1u32 << n {
        for x in 0..1u32 << n {
            for y in 0..1u32 << n {
                let t = TensorVector::from_entries(ps.m, outer3(ps.value(v), ps.value(x), ps.value(y)))?;
                *entries.get_mut(&triple_of(v, x, y)).expect("triple within range") += &t;
            }
        }
    }
    DistributionTable::new(TableKind::Triangle, n, ps.m, n, entries)
}

/// Per-vertex pair interweight of a perfect structure: for each triple, the
/// sum of `C(x) ⊗ C(y)` over pairs anchored at `v`, as an m² vector.
pub fn ps_vertex_interweight(ps: &PerfectStructure, v: Vertex) -> Result<BTreeMap<Triple, Vec<Rational>>> {
    check_cap(ps.n, MAX_PAIR_N, false, "pair enumeration")?;
    let m2 = ps.m * ps.m;
    let mut out: BTreeMap<Triple, Vec<Rational>> = BTreeMap::new();
    for x in 0..1u32 << ps.n {
        for y in 0..1u32 << ps.n {
            let slot = out.entry(triple_of(v, x, y)).or_insert_with(|| vec![Rational::zero(); m2]);
            for (j, a) in ps.value(x).iter().enumerate() {
                for (k, b) in ps.value(y).iter().enumerate() {
                    slot[j * ps.m + k] += a * b;
                }
            }
        }
    }
    Ok(out)
}

/// Result of [`search_partitions`].
#[derive(Clone, Debug, Default)]
pub struct SearchResult {
    pub partitions: Vec<PartitionInstance>,
    /// The node budget ran out before the search space was exhausted.
    pub truncated: bool,
    pub nodes: u64,
}

pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

/// Finds up to `limit` partitions with quotient `q` by backtracking over
/// vertices in index order. `pins` force `(vertex, cell)` assignments.
///
/// No symmetry reduction: partitions equivalent under cube automorphisms are
/// all reported.
pub fn search_partitions(q: &QuotientMatrix, limit: usize, pins: &[(Vertex, usize)], node_budget: u64) -> Result<SearchResult> {
    let (n, m) = (q.n(), q.m());
    check_cap(n, MAX_TRIPLE_N, false, "partition search")?;
    if m > 3 {
        return Err(Error::InvalidArgument(format!("partition search supports at most 3 cells, got {m}")));
    }
    let size = 1usize << n;
    let mut forced = vec![None; size];
    for &(v, c) in pins {
        if v as usize >= size || c >= m {
            return Err(Error::InvalidArgument(format!("pin ({v}, {}) out of range", c + 1)));
        }
        forced[v as usize] = Some(c);
    }
    let mut st = Search {
        n,
        m,
        q,
        forced,
        color: vec![usize::MAX; size],
        counts: vec![vec![0; m]; size],
        limit,
        budget: node_budget,
        result: SearchResult::default(),
    };
    st.go(0);
    Ok(st.result)
}

struct Search<'a> {
    n: usize,
    m: usize,
    q: &'a QuotientMatrix,
    forced: Vec<Option<usize>>,
    color: Vec<usize>,
    counts: Vec<Vec<i64>>,
    limit: usize,
    budget: u64,
    result: SearchResult,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.result.partitions.len() >= self.limit || self.result.truncated
    }

    fn fits(&self, v: usize, c: usize) -> bool {
        if (0..self.m).any(|j| self.counts[v][j] > self.q.entry(c, j)) {
            return false;
        }
        neighbors(v as Vertex, self.n).all(|u| {
            let cu = self.color[u as usize];
            cu == usize::MAX || self.counts[u as usize][c] < self.q.entry(cu, c)
        })
    }

    fn assign(&mut self, v: usize, c: usize, delta: i64) {
        self.color[v] = if delta > 0 { c } else { usize::MAX };
        for u in neighbors(v as Vertex, self.n) {
            self.counts[u as usize][c] += delta;
        }
    }

    fn go(&mut self, v: usize) {
        if self.done() {
            return;
        }
        if v == self.color.len() {
            // row sums make the upper-bound checks exact once all vertices are placed
            if let Ok(p) = PartitionInstance::new(self.n, self.m, self.color.clone()) {
                if verify_equitable(&p).is_ok_and(|s| &s == self.q) {
                    self.result.partitions.push(p);
                }
            }
            return;
        }
        let choices: Vec<usize> = match self.forced[v] {
            Some(c) => vec![c],
            None => (0..self.m).collect(),
        };
        for c in choices {
            if self.result.nodes >= self.budget {
                self.result.truncated = true;
                return;
            }
            self.result.nodes += 1;
            if self.fits(v, c) {
                self.assign(v, c, 1);
                self.go(v + 1);
                self.assign(v, c, -1);
                if self.done() {
                    return;
                }
            }
        }
    }
}

/// Level-0 triangle tensor of a partition from its actual cell sizes.
pub fn partition_initial_triangle(p: &PartitionInstance) -> TensorVector {
    let sizes: Vec<Rational> = p.cell_sizes().into_iter().map(|s| Rational::from_integer(s.into())).collect();
    initial_triangle(&sizes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn c1() -> PartitionInstance {
        PartitionInstance::from_set(3, &[0b000, 0b111]).unwrap()
    }

    #[test]
    fn slots_are_dense() {
        let all: Vec<usize> = (0..=5).flat_map(triples_at_level).map(triple_slot).collect();
        assert_eq!(all, (0..slot_count(5)).collect::<Vec<_>>());
    }

    #[test]
    fn equitable_fixtures() {
        assert_eq!(verify_equitable(&c1()).unwrap().rows(), &[vec![0, 3], vec![1, 2]]);
        assert_eq!(verify_equitable(&PartitionInstance::parity(4).unwrap()).unwrap().rows(), &[vec![0, 4], vec![4, 0]]);
        let halves = PartitionInstance::from_cells(2, &[vec![0b00, 0b01], vec![0b10, 0b11]]).unwrap();
        assert_eq!(verify_equitable(&halves).unwrap().rows(), &[vec![1, 1], vec![1, 1]]);
        let bad = PartitionInstance::from_set(3, &[0b000, 0b001]).unwrap();
        let w = verify_equitable(&bad).unwrap_err();
        assert_eq!(w.cell, 1);
    }

    #[test]
    fn instance_validation() {
        assert!(PartitionInstance::from_cells(2, &[vec![0, 1], vec![1, 2, 3]]).is_err());
        assert!(PartitionInstance::from_cells(2, &[vec![0, 1], vec![2]]).is_err());
        assert!(PartitionInstance::new(2, 3, vec![0, 0, 1, 1]).is_err());
    }

    #[test]
    fn neighborhoods_and_spectra() {
        let x = VertexMultiset::from_vertices(&[0b000]);
        let nx = multi_neighborhood(&x, 3);
        assert_eq!(nx.iter().collect::<Vec<_>>(), vec![(1, 1), (2, 1), (4, 1)]);
        let x = VertexMultiset::from_vertices(&[0b000, 0b011]);
        let nx = multi_neighborhood(&x, 3);
        assert_eq!(nx.iter().collect::<Vec<_>>(), vec![(1, 2), (2, 2), (4, 1), (7, 1)]);
        assert!(multi_neighborhood(&VertexMultiset::new(), 3).is_empty());

        let p = c1();
        assert_eq!(spectrum(&VertexMultiset::from_vertices(&[0]), &p), vec![1, 0]);
        let all: Vec<Vertex> = (0..8).collect();
        assert_eq!(spectrum(&VertexMultiset::from_vertices(&all), &p), vec![2, 6]);
        let x = VertexMultiset::from_vertices(&[0b000, 0b001]);
        assert_eq!(spectrum(&multi_neighborhood(&x, 3), &p), vec![1, 5]);
    }

    #[test]
    fn brute_triangle_of_c1() {
        let t = brute_triangle(&c1(), false).unwrap();
        let ints = |v: &TensorVector| v.entries().to_vec();
        assert_eq!(ints(t.get((0, 0, 0)).unwrap()), [2, 0, 0, 0, 0, 0, 0, 6].map(rat));
        assert_eq!(ints(t.get((0, 0, 1)).unwrap()), [0, 6, 0, 0, 0, 0, 6, 12].map(rat));
        let total: Rational = t.iter().map(|(_, v)| v.sum()).sum();
        assert_eq!(total, rat(512));
    }

    #[test]
    fn triangle_cap() {
        let p = PartitionInstance::parity(7).unwrap();
        assert!(matches!(brute_triangle(&p, false), Err(Error::DimensionTooLarge { .. })));
    }

    #[test]
    fn anchored_interweight() {
        let p = c1();
        let w0 = brute_interweight(&p, 0b000).unwrap();
        let w7 = brute_interweight(&p, 0b111).unwrap();
        assert_eq!(w0, w7);
        assert_eq!(w0.get((0, 0, 0)).unwrap(), &TensorVector::basis(2, 0, 0, 0));
        // pairs (x, y) with x = v and y a neighbor: row 1 of S
        let w = w0.get((0, 0, 1)).unwrap();
        assert_eq!((w[(0, 0, 0)].clone(), w[(0, 0, 1)].clone()), (rat(0), rat(3)));
        assert_eq!(strong_invariance_check(&p).unwrap(), InvarianceOutcome::Invariant);
        assert_eq!(strong_invariance_check(&PartitionInstance::parity(4).unwrap()).unwrap(), InvarianceOutcome::Invariant);
    }

    #[test]
    fn set_fixtures_from_enumeration() {
        let a = [0b0000, 0b0001, 0b0010, 0b1111];
        let b = [0b0000, 0b0001, 0b0111, 0b1111];
        assert_eq!(distance_distribution(&a).unwrap(), vec![1, 1, 2, 3, 3, 4]);
        assert_eq!(distance_distribution(&b).unwrap(), vec![1, 1, 2, 3, 3, 4]);
        assert_eq!(set_triangle_multiset(&a).unwrap(), vec![(0, 1, 1), (0, 1, 3), (0, 1, 3), (1, 1, 2)]);
        assert_eq!(set_triangle_multiset(&b).unwrap(), vec![(0, 1, 2), (0, 1, 2), (0, 1, 3), (0, 1, 3)]);
        assert_eq!(set_triangle_multiset(&[0b000, 0b001, 0b011]).unwrap(), vec![(0, 1, 1)]);
        assert_eq!(distance_distribution(&[0b000, 0b111]).unwrap(), vec![3]);
        assert!(set_triangle_multiset(&[0, 1]).is_err());

        let mut cells = vec![a.to_vec(), b[2..3].to_vec()];
        cells.push((0..16).filter(|v| !a.contains(v) && !b.contains(v)).collect());
        let p = PartitionInstance::from_cells(4, &cells).unwrap();
        assert!(matches!(strong_invariance_check(&p).unwrap(), InvarianceOutcome::Inapplicable(_)));
    }

    fn ps_c() -> PerfectStructure {
        PerfectStructure::from_integers(2, &[vec![2, 0], vec![2, 0], vec![0, 2], vec![0, 2]]).unwrap()
    }

    fn ps_c_prime() -> PerfectStructure {
        PerfectStructure::from_integers(2, &[vec![2, 0], vec![1, 1], vec![1, 1], vec![0, 2]]).unwrap()
    }

    #[test]
    fn perfect_structures() {
        let s = Matrix::from_integers(&[[1, 1], [1, 1]]).unwrap();
        assert_eq!(verify_perfect_structure(&ps_c(), &s).unwrap(), Ok(()));
        assert_eq!(verify_perfect_structure(&ps_c_prime(), &s).unwrap(), Ok(()));
        let wrong = Matrix::from_integers(&[[2, 0], [0, 2]]).unwrap();
        assert!(verify_perfect_structure(&ps_c(), &wrong).unwrap().is_err());

        assert_eq!(ps_initial_triangle(&ps_c()).entries(), &[16, 0, 0, 0, 0, 0, 0, 16].map(rat));
        assert_eq!(ps_initial_triangle(&ps_c_prime()).entries(), &[10, 2, 2, 2, 2, 2, 2, 10].map(rat));

        let p = c1();
        assert_eq!(ps_initial_triangle(&PerfectStructure::from_partition(&p)), partition_initial_triangle(&p));

        let wc = ps_vertex_interweight(&ps_c(), 0).unwrap();
        let wc2 = ps_vertex_interweight(&ps_c_prime(), 0).unwrap();
        assert_eq!(wc[&(1, 0, 0)], [4, 0, 0, 4].map(rat));
        assert_eq!(wc2[&(1, 0, 0)], [2, 2, 2, 2].map(rat));
    }

    #[test]
    fn partition_search() {
        let q = validate_quotient(&[vec![0, 3], vec![1, 2]], 3).unwrap();
        let r = search_partitions(&q, 100, &[], DEFAULT_NODE_BUDGET).unwrap();
        assert!(!r.truncated);
        // the four antipodal pairs
        assert_eq!(r.partitions.len(), 4);
        assert!(r.partitions.contains(&c1()));

        let q = validate_quotient(&[vec![0, 4], vec![4, 0]], 4).unwrap();
        let r = search_partitions(&q, 10, &[], DEFAULT_NODE_BUDGET).unwrap();
        assert!(r.partitions.contains(&PartitionInstance::parity(4).unwrap()));

        let q = validate_quotient(&[vec![0, 3], vec![3, 0]], 3).unwrap();
        let r = search_partitions(&q, 10, &[(0, 0), (1, 0)], DEFAULT_NODE_BUDGET).unwrap();
        assert!(r.partitions.is_empty() && !r.truncated);

        let q = validate_quotient(&[vec![0, 4], vec![4, 0]], 4).unwrap();
        let r = search_partitions(&q, 10, &[], 3).unwrap();
        assert!(r.truncated);
    }
}
