//! Level-by-level construction of triangle and interweight tables from a
//! quotient matrix, violation scanning, and consistency checks of the
//! overdetermined recursion.
//!
//! Each triple `(a, b, c)` at level `a + b + c` is derived from levels
//! `ℓ - 1` and `ℓ - 2` by one of three recurrences, one per tensor index:
//!
//! ```text
//! a·T[a,b,c] = T[a-1,b,c]·S′ − (b+1)T[a-1,b+1,c-1] − (c+1)T[a-1,b-1,c+1] − (n-a-b-c+2)T[a-2,b,c]
//! b·T[a,b,c] = T[a,b-1,c]·S″ − (a+1)T[a+1,b-1,c-1] − (c+1)T[a-1,b-1,c+1] − (n-a-b-c+2)T[a,b-2,c]
//! c·T[a,b,c] = T[a,b,c-1]·S‴ − (a+1)T[a+1,b-1,c-1] − (b+1)T[a-1,b+1,c-1] − (n-a-b-c+2)T[a,b,c-2]
//! ```
//!
//! Interweight tables use the same recurrences with `S′ᵀ` in place of `S′`.
//! The canonical derivation divides by `a` if `a > 0`, else by `b`, else by `c`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{apply_lift, diag_lift, format_rational, kron_lift, rat, Axis, LiftedMatrix, Matrix, Rational, TensorVector};
use crate::quotient::{cell_sizes, QuotientMatrix};

/// Distance triple `(r1, r2, r3)`.
pub type Triple = (usize, usize, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableKind {
    Triangle,
    Interweight,
}

impl TableKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TableKind::Triangle => "triangle",
            TableKind::Interweight => "interweight",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "triangle" => Ok(TableKind::Triangle),
            "interweight" => Ok(TableKind::Interweight),
            other => Err(Error::Parse(format!("unknown table kind '{other}'"))),
        }
    }
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// All triples `(a, b, c)` with `a + b + c = level`, in lexicographic order.
pub fn triples_at_level(level: usize) -> impl Iterator<Item = Triple> {
    (0..=level).flat_map(move |a| (0..=level - a).map(move |b| (a, b, level - a - b)))
}

/// Map from every triple with sum at most `max_level` to its tensor vector.
/// Triples outside that range read as zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionTable {
    kind: TableKind,
    n: usize,
    m: usize,
    max_level: usize,
    entries: BTreeMap<Triple, TensorVector>,
}

impl DistributionTable {
    pub fn new(kind: TableKind, n: usize, m: usize, max_level: usize, entries: BTreeMap<Triple, TensorVector>) -> Result<Self> {
        for level in 0..=max_level {
            for t in triples_at_level(level) {
                match entries.get(&t) {
                    Some(v) if v.m() == m => {}
                    Some(v) => return Err(Error::DimensionMismatch { expected: m, found: v.m() }),
                    None => return Err(Error::InvalidArgument(format!("table is missing triple {t:?}"))),
                }
            }
        }
        if entries.keys().any(|&(a, b, c)| a + b + c > max_level) {
            return Err(Error::InvalidArgument("table has triples beyond its max level".into()));
        }
        Ok(Self { kind, n, m, max_level, entries })
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn max_level(&self) -> usize {
        self.max_level
    }

    pub fn get(&self, t: Triple) -> Option<&TensorVector> {
        self.entries.get(&t)
    }

    /// Lexicographic order of triples.
    pub fn iter(&self) -> impl Iterator<Item = (&Triple, &TensorVector)> {
        self.entries.iter()
    }

    /// Level order, then lexicographic within a level.
    pub fn iter_by_level(&self) -> impl Iterator<Item = (Triple, &TensorVector)> + '_ {
        (0..=self.max_level).flat_map(move |l| triples_at_level(l).map(move |t| (t, &self.entries[&t])))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn into_entries(self) -> BTreeMap<Triple, TensorVector> {
        self.entries
    }
}

/// The three lifts used by one table kind.
#[derive(Clone, Debug)]
pub struct Lifts {
    pub first: LiftedMatrix,
    pub second: LiftedMatrix,
    pub third: LiftedMatrix,
}

impl Lifts {
    pub fn new(s: &Matrix, kind: TableKind) -> Result<Self> {
        let first = kron_lift(s, Axis::First)?;
        Ok(Self {
            first: match kind {
                TableKind::Triangle => first,
                TableKind::Interweight => first.transposed(),
            },
            second: kron_lift(s, Axis::Second)?,
            third: kron_lift(s, Axis::Third)?,
        })
    }

    pub fn get(&self, axis: Axis) -> &LiftedMatrix {
        match axis {
            Axis::First => &self.first,
            Axis::Second => &self.second,
            Axis::Third => &self.third,
        }
    }
}

/// `T⁰⁰⁰` of an equitable partition: `sizes[i]` at `(i, i, i)`.
pub fn initial_triangle(sizes: &[Rational]) -> TensorVector {
    let m = sizes.len();
    let mut v = TensorVector::zeros(m);
    for (i, s) in sizes.iter().enumerate() {
        v[(i, i, i)] = s.clone();
    }
    v
}

/// `W⁰⁰⁰`: ones at `(i, i, i)`.
pub fn initial_interweight(m: usize) -> TensorVector {
    initial_triangle(&vec![Rational::one(); m])
}

/// Incremental level-by-level table construction.
#[derive(Clone, Debug)]
pub struct TableBuilder {
    kind: TableKind,
    n: usize,
    m: usize,
    lifts: Lifts,
    levels: Vec<BTreeMap<Triple, TensorVector>>,
    zero: TensorVector,
}

impl TableBuilder {
    /// Starts a table over a general parameter matrix (quotient or perfect-structure).
    pub fn new(s: &Matrix, n: usize, kind: TableKind, initial: TensorVector) -> Result<Self> {
        let lifts = Lifts::new(s, kind)?;
        let m = s.rows();
        if initial.m() != m {
            return Err(Error::DimensionMismatch { expected: m, found: initial.m() });
        }
        Ok(Self {
            kind,
            n,
            m,
            lifts,
            levels: vec![BTreeMap::from([((0, 0, 0), initial)])],
            zero: TensorVector::zeros(m),
        })
    }

    /// Uses the default initial vector of `kind`, deriving cell sizes for triangles.
    pub fn for_quotient(q: &QuotientMatrix, kind: TableKind) -> Result<Self> {
        let initial = match kind {
            TableKind::Triangle => initial_triangle(&cell_sizes(q)?),
            TableKind::Interweight => initial_interweight(q.m()),
        };
        Self::new(&q.to_matrix(), q.n(), kind, initial)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Highest level computed so far.
    pub fn level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn lifts(&self) -> &Lifts {
        &self.lifts
    }

    /// Reads any triple, with zero for negative coordinates and for levels
    /// beyond the cube dimension or not yet built.
    pub fn value(&self, a: i64, b: i64, c: i64) -> &TensorVector {
        if a < 0 || b < 0 || c < 0 {
            return &self.zero;
        }
        let t = (a as usize, b as usize, c as usize);
        let level = t.0 + t.1 + t.2;
        if level > self.n {
            return &self.zero;
        }
        self.levels.get(level).and_then(|l| l.get(&t)).unwrap_or(&self.zero)
    }

    /// Derives `target` by the recurrence that divides by its coordinate on `axis`.
    /// Requires that coordinate to be positive and levels `ℓ-1`, `ℓ-2` built.
    pub fn derive(&self, target: Triple, axis: Axis) -> TensorVector {
        let (a, b, c) = (target.0 as i64, target.1 as i64, target.2 as i64);
        let free = self.n as i64 - a - b - c + 2;
        // (divisor, source, [(coefficient, triple)] subtracted)
        let (div, src, terms) = match axis {
            Axis::First => (a, (a - 1, b, c), [(b + 1, (a - 1, b + 1, c - 1)), (c + 1, (a - 1, b - 1, c + 1)), (free, (a - 2, b, c))]),
            Axis::Second => (b, (a, b - 1, c), [(a + 1, (a + 1, b - 1, c - 1)), (c + 1, (a - 1, b - 1, c + 1)), (free, (a, b - 2, c))]),
            Axis::Third => (c, (a, b, c - 1), [(a + 1, (a + 1, b - 1, c - 1)), (b + 1, (a - 1, b + 1, c - 1)), (free, (a, b, c - 2))]),
        };
        assert!(div > 0, "derive along {axis:?} needs a positive coordinate, got {target:?}");
        let source = self.value(src.0, src.1, src.2);
        let mut out = apply_lift(source, self.lifts.get(axis)).expect("lift matches table size");
        for (coef, (x, y, z)) in terms {
            out.add_scaled(&-rat(coef), self.value(x, y, z));
        }
        let inv = Rational::new(BigInt::one(), BigInt::from(div));
        out.scale(&inv)
    }

    /// Canonical axis: first coordinate if positive, else second, else third.
    pub fn canonical_axis(t: Triple) -> Axis {
        if t.0 > 0 {
            Axis::First
        } else if t.1 > 0 {
            Axis::Second
        } else {
            Axis::Third
        }
    }

    /// Computes the next level and returns its index.
    pub fn step(&mut self) -> Result<usize> {
        let level = self.levels.len();
        if level > self.n {
            return Err(Error::LevelTooHigh { level, n: self.n });
        }
        let triples: Vec<Triple> = triples_at_level(level).collect();
        let computed: Vec<(Triple, TensorVector)> = triples
            .into_par_iter()
            .map(|t| (t, self.derive(t, Self::canonical_axis(t))))
            .collect();
        self.levels.push(computed.into_iter().collect());
        Ok(level)
    }

    pub fn level_entries(&self, level: usize) -> Option<&BTreeMap<Triple, TensorVector>> {
        self.levels.get(level)
    }

    pub fn finish(self) -> DistributionTable {
        let max_level = self.level();
        DistributionTable {
            kind: self.kind,
            n: self.n,
            m: self.m,
            max_level,
            entries: self.levels.into_iter().flatten().collect(),
        }
    }
}

/// Builds every level up to `max_level` from an explicit parameter matrix and initial vector.
pub fn build_table_from(s: &Matrix, n: usize, kind: TableKind, max_level: usize, initial: TensorVector) -> Result<DistributionTable> {
    if max_level > n {
        return Err(Error::LevelTooHigh { level: max_level, n });
    }
    let mut builder = TableBuilder::new(s, n, kind, initial)?;
    while builder.level() < max_level {
        builder.step()?;
    }
    Ok(builder.finish())
}

/// Builds the table of a quotient matrix; `initial` defaults to the kind's standard vector.
pub fn build_table(q: &QuotientMatrix, kind: TableKind, max_level: usize, initial: Option<TensorVector>) -> Result<DistributionTable> {
    if max_level > q.n() {
        return Err(Error::LevelTooHigh { level: max_level, n: q.n() });
    }
    let initial = match (initial, kind) {
        (Some(v), _) => v,
        (None, TableKind::Triangle) => initial_triangle(&cell_sizes(q)?),
        (None, TableKind::Interweight) => initial_interweight(q.m()),
    };
    build_table_from(&q.to_matrix(), q.n(), kind, max_level, initial)
}

/// `W^w` for `w = 0..=n`; row `i` of `W^w` counts vertices of each cell at
/// distance `w` from a vertex of cell `i`.
pub fn weight_distribution(q: &QuotientMatrix) -> Vec<Matrix> {
    let n = q.n();
    let s = q.to_matrix();
    let mut out = vec![Matrix::identity(q.m())];
    for w in 0..n {
        let mut next = out[w].mul(&s).expect("square");
        if w >= 1 {
            let coef = rat((n - w + 1) as i64);
            let prev = &out[w - 1];
            for i in 0..q.m() {
                for j in 0..q.m() {
                    next[(i, j)] -= &coef * &prev[(i, j)];
                }
            }
        }
        let div = rat(w as i64 + 1);
        for i in 0..q.m() {
            for j in 0..q.m() {
                next[(i, j)] = &next[(i, j)] / &div;
            }
        }
        out.push(next);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationReason {
    Negative,
    NonInteger,
}

impl ViolationReason {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationReason::Negative => "negative",
            ViolationReason::NonInteger => "non-integer",
        }
    }
}

/// A table entry that cannot be a count. `index` is 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub triple: Triple,
    pub index: (usize, usize, usize),
    pub value: Rational,
    pub reason: ViolationReason,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (r1, r2, r3) = self.triple;
        let (i, j, k) = self.index;
        write!(f, "T^{{{r1},{r2},{r3}}}_{{{}{}{}}} = {} ({})", i + 1, j + 1, k + 1, format_rational(&self.value), self.reason.as_str())
    }
}

fn entry_violations(t: Triple, v: &TensorVector, kind: TableKind, sizes: Option<&[Rational]>, out: &mut Vec<Violation>) {
    for (flat, value) in v.entries().iter().enumerate() {
        let index = v.triple_of(flat);
        if value.is_negative() {
            out.push(Violation { triple: t, index, value: value.clone(), reason: ViolationReason::Negative });
        }
        let count = match (kind, sizes) {
            (TableKind::Triangle, Some(sizes)) => value / &sizes[index.0],
            _ => value.clone(),
        };
        if !count.is_integer() {
            out.push(Violation { triple: t, index, value: value.clone(), reason: ViolationReason::NonInteger });
        }
    }
}

/// Negative entries, and entries whose implied count is non-integral, in
/// (level, triple, index) order. For triangle tables the count is `T / sizes[i]`.
pub fn scan_violations(table: &DistributionTable, sizes: Option<&[Rational]>) -> Vec<Violation> {
    let mut out = Vec::new();
    for (t, v) in table.iter_by_level() {
        entry_violations(t, v, table.kind, sizes, &mut out);
    }
    out
}

/// First violation of a single tensor vector, used by early-stopping scans.
pub fn first_violation_in(t: Triple, v: &TensorVector, kind: TableKind, sizes: Option<&[Rational]>) -> Option<Violation> {
    let mut out = Vec::new();
    entry_violations(t, v, kind, sizes, &mut out);
    out.into_iter().next()
}

/// Which consistency check found a mismatch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckKind {
    /// An alternative recurrence (dividing along this axis) disagrees.
    AlternativeDerivation(Axis),
    /// `T[r1,r2,r3]_ijk = T[r2,r1,r3]_jik` (triangle) or `W[r1,r2,r3]_ijk = W[r1,r3,r2]_ikj` (interweight).
    TransposeSymmetry,
    /// `T[r1,r2,r3]_ijk = T[r2,r3,r1]_jki`.
    CyclicSymmetry,
    /// `T = W·D′`.
    TriangleFromInterweight,
    /// Row marginals equal `sizes[i]` times the multinomial coefficient.
    Marginal,
    /// Vanishing of the level `n + 1`, see [`vanishing_check`].
    Vanishing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub check: CheckKind,
    pub table: TableKind,
    pub triple: Triple,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossCheckReport {
    /// Number of individual vector or entry comparisons performed.
    pub comparisons: usize,
    pub mismatches: Vec<Mismatch>,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn count(&self, check: CheckKind) -> usize {
        self.mismatches.iter().filter(|m| m.check == check).count()
    }
}

/// Multinomial `n! / (r1! r2! r3! (n - r1 - r2 - r3)!)`.
pub fn multinomial(n: usize, t: Triple) -> BigInt {
    let rest = n - t.0 - t.1 - t.2;
    let fact = |k: usize| (1..=k).fold(BigInt::one(), |acc, x| acc * x);
    fact(n) / (fact(t.0) * fact(t.1) * fact(t.2) * fact(rest))
}

fn rebuild_from(table: &DistributionTable, s: &Matrix) -> Result<TableBuilder> {
    let mut builder = TableBuilder::new(s, table.n, table.kind, table.entries[&(0, 0, 0)].clone())?;
    builder.levels = (0..=table.max_level)
        .map(|l| triples_at_level(l).map(|t| (t, table.entries[&t].clone())).collect())
        .collect();
    Ok(builder)
}

/// Re-derives every entry of `table` by each applicable recurrence.
fn check_alternatives(table: &DistributionTable, s: &Matrix, report: &mut CrossCheckReport) -> Result<()> {
    let builder = rebuild_from(table, s)?;
    let found: Vec<(usize, Vec<Mismatch>)> = (1..=table.max_level)
        .flat_map(triples_at_level)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|t| {
            let stored = &table.entries[&t];
            let coords = [t.0, t.1, t.2];
            let mut mism = Vec::new();
            let mut n = 0;
            for (axis, coord) in Axis::ALL.into_iter().zip(coords) {
                if coord == 0 {
                    continue;
                }
                n += 1;
                if &builder.derive(t, axis) != stored {
                    mism.push(Mismatch {
                        check: CheckKind::AlternativeDerivation(axis),
                        table: table.kind,
                        triple: t,
                        detail: format!("recurrence along {axis:?} disagrees with stored value"),
                    });
                }
            }
            (n, mism)
        })
        .collect();
    for (n, m) in found {
        report.comparisons += n;
        report.mismatches.extend(m);
    }
    Ok(())
}

type IndexMap = Box<dyn Fn(usize, usize, usize) -> (usize, usize, usize)>;

fn check_symmetries(table: &DistributionTable, report: &mut CrossCheckReport) {
    let m = table.m;
    for (&(r1, r2, r3), v) in &table.entries {
        let checks: Vec<(CheckKind, Triple, IndexMap)> = match table.kind {
            TableKind::Triangle => vec![
                (CheckKind::TransposeSymmetry, (r2, r1, r3), Box::new(|i, j, k| (j, i, k))),
                (CheckKind::CyclicSymmetry, (r2, r3, r1), Box::new(|i, j, k| (j, k, i))),
            ],
            TableKind::Interweight => vec![(CheckKind::TransposeSymmetry, (r1, r3, r2), Box::new(|i, j, k| (i, k, j)))],
        };
        for (kind, other_t, perm) in checks {
            let other = &table.entries[&other_t];
            report.comparisons += 1;
            let bad = (0..m).flat_map(|i| (0..m).flat_map(move |j| (0..m).map(move |k| (i, j, k)))).find(|&(i, j, k)| v[(i, j, k)] != other[perm(i, j, k)]);
            if let Some((i, j, k)) = bad {
                report.mismatches.push(Mismatch {
                    check: kind,
                    table: table.kind,
                    triple: (r1, r2, r3),
                    detail: format!("entry ({},{},{}) differs from its image in {other_t:?}", i + 1, j + 1, k + 1),
                });
            }
        }
    }
}

fn check_marginals(table: &DistributionTable, sizes: &[Rational], report: &mut CrossCheckReport) {
    let m = table.m;
    for (&t, v) in &table.entries {
        let mult = Rational::from_integer(multinomial(table.n, t));
        for i in 0..m {
            let sum = (0..m).flat_map(|j| (0..m).map(move |k| (j, k))).fold(Rational::zero(), |acc, (j, k)| acc + &v[(i, j, k)]);
            let expected = match table.kind {
                TableKind::Triangle => &sizes[i] * &mult,
                TableKind::Interweight => mult.clone(),
            };
            report.comparisons += 1;
            if sum != expected {
                report.mismatches.push(Mismatch {
                    check: CheckKind::Marginal,
                    table: table.kind,
                    triple: t,
                    detail: format!("row {} sums to {}, expected {}", i + 1, format_rational(&sum), format_rational(&expected)),
                });
            }
        }
    }
}

/// Derives every triple of level `n + 1` by each applicable recurrence and
/// reports the nonzero ones. Realizable partitions always pass; a failure on a
/// hypothetical matrix is itself evidence of nonexistence. Requires a table
/// built to level `n`.
pub fn vanishing_check(table: &DistributionTable, s: &Matrix) -> Result<CrossCheckReport> {
    if table.max_level != table.n {
        return Err(Error::InvalidArgument(format!("vanishing check needs a table built to level {}", table.n)));
    }
    let mut report = CrossCheckReport::default();
    let builder = rebuild_from(table, s)?;
    for t in triples_at_level(table.n + 1) {
        for (axis, coord) in Axis::ALL.into_iter().zip([t.0, t.1, t.2]) {
            if coord == 0 {
                continue;
            }
            report.comparisons += 1;
            if !builder.derive(t, axis).is_zero() {
                report.mismatches.push(Mismatch {
                    check: CheckKind::Vanishing,
                    table: table.kind,
                    triple: t,
                    detail: format!("recurrence along {axis:?} beyond level n is nonzero"),
                });
            }
        }
    }
    Ok(report)
}

/// Inputs to [`cross_check`]. Marginal and `T = W·D′` checks run only when
/// `sizes` is given (they assume indicator-valued cells).
pub struct CrossCheckInput<'a> {
    pub s: &'a Matrix,
    pub triangle: Option<&'a DistributionTable>,
    pub interweight: Option<&'a DistributionTable>,
    pub sizes: Option<&'a [Rational]>,
}

/// Alternative derivations, index symmetries, `T = W·D′` and marginal identities.
pub fn cross_check(input: &CrossCheckInput<'_>) -> Result<CrossCheckReport> {
    let mut report = CrossCheckReport::default();
    for table in [input.triangle, input.interweight].into_iter().flatten() {
        check_alternatives(table, input.s, &mut report)?;
        check_symmetries(table, &mut report);
        if let Some(sizes) = input.sizes {
            check_marginals(table, sizes, &mut report);
        }
    }
    if let (Some(tri), Some(iw), Some(sizes)) = (input.triangle, input.interweight, input.sizes) {
        let d = diag_lift(sizes)?;
        for (&t, w) in &iw.entries {
            let Some(tv) = tri.entries.get(&t) else { continue };
            report.comparisons += 1;
            if &apply_lift(w, &d)? != tv {
                report.mismatches.push(Mismatch {
                    check: CheckKind::TriangleFromInterweight,
                    table: TableKind::Triangle,
                    triple: t,
                    detail: "T differs from W·D′".into(),
                });
            }
        }
    }
    Ok(report)
}

/// Convenience wrapper: builds both tables of `q` to `max_level` and cross-checks them.
pub fn cross_check_quotient(q: &QuotientMatrix, max_level: usize) -> Result<CrossCheckReport> {
    let sizes = cell_sizes(q)?;
    let tri = build_table(q, TableKind::Triangle, max_level, None)?;
    let iw = build_table(q, TableKind::Interweight, max_level, None)?;
    cross_check(&CrossCheckInput { s: &q.to_matrix(), triangle: Some(&tri), interweight: Some(&iw), sizes: Some(&sizes) })
}

/// `Σ_{r} T^r_{ijk} = sizes[i]·sizes[j]·sizes[k]`; only meaningful for a
/// triangle table built to level `n` of a realizable partition.
pub fn completeness_holds(table: &DistributionTable, sizes: &[Rational]) -> bool {
    let m = table.m;
    let mut total = TensorVector::zeros(m);
    for v in table.entries.values() {
        total += v;
    }
    (0..m).all(|i| (0..m).all(|j| (0..m).all(|k| total[(i, j, k)] == &(&sizes[i] * &sizes[j]) * &sizes[k])))
}
