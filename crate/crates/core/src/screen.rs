//! Nonexistence screening: single-matrix certificates and the
//! correlation-immunity sweep over 2×2 quotient matrices.

use num_traits::Signed;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::quotient::{cell_sizes, ci_bound, divisibility_condition, feasibility_conditions, validate_quotient, FeasibilityReport};
use crate::recursion::{build_table, initial_triangle, scan_violations, TableBuilder, TableKind, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateVerdict {
    Nonexistent,
    Candidate,
}

impl CertificateVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            CertificateVerdict::Nonexistent => "nonexistent",
            CertificateVerdict::Candidate => "candidate",
        }
    }
}

/// Outcome of screening one matrix. Every field needed to re-check the
/// verdict is recorded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub matrix: Vec<Vec<i64>>,
    pub n: usize,
    pub verdict: CertificateVerdict,
    /// Set when the matrix is not a valid quotient matrix at all.
    pub validation_error: Option<Error>,
    pub feasibility: Option<FeasibilityReport>,
    pub first_violation: Option<Violation>,
    pub violation_count: usize,
    pub levels_scanned: usize,
}

impl Certificate {
    /// Recomputes the recorded violation from the matrix alone.
    pub fn recheck(&self) -> Result<bool> {
        let Some(v) = &self.first_violation else {
            return Ok(true);
        };
        let q = validate_quotient(&self.matrix, self.n)?;
        let level = v.triple.0 + v.triple.1 + v.triple.2;
        let table = build_table(&q, TableKind::Triangle, level, None)?;
        Ok(table.get(v.triple).map(|t| &t[v.index]) == Some(&v.value))
    }
}

/// Validates, applies every feasibility predicate, then builds the triangle
/// table to `max_level` (default `n`) and scans it for entries that cannot be counts.
pub fn certify(rows: &[Vec<i64>], n: usize, max_level: Option<usize>) -> Certificate {
    let mut cert = Certificate {
        matrix: rows.to_vec(),
        n,
        verdict: CertificateVerdict::Nonexistent,
        validation_error: None,
        feasibility: None,
        first_violation: None,
        violation_count: 0,
        levels_scanned: 0,
    };
    let q = match validate_quotient(rows, n) {
        Ok(q) => q,
        Err(e) => {
            cert.validation_error = Some(e);
            return cert;
        }
    };
    let feasibility = feasibility_conditions(&q);
    let feasible = feasibility.failures().is_empty();
    cert.feasibility = Some(feasibility);

    let level = max_level.unwrap_or(n).min(n);
    match cell_sizes(&q).and_then(|sizes| Ok((build_table(&q, TableKind::Triangle, level, Some(initial_triangle(&sizes)))?, sizes))) {
        Ok((table, sizes)) => {
            let violations = scan_violations(&table, Some(&sizes));
            cert.levels_scanned = level;
            cert.violation_count = violations.len();
            cert.first_violation = violations.into_iter().next();
        }
        Err(e) => cert.validation_error = Some(e),
    }
    if feasible && cert.first_violation.is_none() && cert.validation_error.is_none() {
        cert.verdict = CertificateVerdict::Candidate;
    }
    cert
}

/// One 2×2 matrix `[[a, b], [c, d]]` of the sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRecord {
    pub n: usize,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    /// First `(r2, r3)` with `T^{0,r2,r3}_{111} < 0`, and that entry.
    pub witness: Option<((usize, usize), Rational)>,
    pub levels_scanned: usize,
}

impl SweepRecord {
    pub fn rows(&self) -> Vec<Vec<i64>> {
        vec![vec![self.a, self.b], vec![self.c, self.d]]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub n_min: usize,
    pub n_max: usize,
    pub records: Vec<SweepRecord>,
}

impl SweepReport {
    pub fn candidates(&self) -> usize {
        self.records.len()
    }

    pub fn witnessed(&self) -> usize {
        self.records.iter().filter(|r| r.witness.is_some()).count()
    }

    pub fn missing(&self) -> usize {
        self.candidates() - self.witnessed()
    }
}

/// `(n, a, c)` with `b = n - a > c > 0`, the divisibility condition holding and
/// the correlation-immunity bound violated, ordered by `n`, then `a`, then `c`.
pub fn sweep_candidates(n_max: usize) -> Vec<(usize, i64, i64)> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for a in 0..=n as i64 {
            let b = n as i64 - a;
            for c in 1..b {
                if divisibility_condition(b, c, n) && !ci_bound(a, c, n) {
                    out.push((n, a, c));
                }
            }
        }
    }
    out
}

/// Builds the triangle table level by level and stops at the first negative
/// `(1,1,1)` entry on the plane `r1 = 0`, scanning `r2 + r3` upward, then `r2` upward.
pub fn find_witness(n: usize, a: i64, c: i64) -> Result<SweepRecord> {
    let (b, d) = (n as i64 - a, n as i64 - c);
    let q = validate_quotient(&[vec![a, b], vec![c, d]], n)?;
    let mut builder = TableBuilder::for_quotient(&q, TableKind::Triangle)?;
    let mut record = SweepRecord { n, a, b, c, d, witness: None, levels_scanned: 0 };
    for level in 1..=n {
        builder.step()?;
        record.levels_scanned = level;
        let entries = builder.level_entries(level).expect("level was just built");
        for r2 in 0..=level {
            let t = &entries[&(0, r2, level - r2)];
            let v = &t[(0, 0, 0)];
            if v.is_negative() {
                record.witness = Some(((r2, level - r2), v.clone()));
                return Ok(record);
            }
        }
    }
    Ok(record)
}

/// Screens every sweep candidate with `n <= n_max`. `jobs = None` uses the
/// global thread pool; the output order never depends on it.
pub fn sweep_ci(n_max: usize, jobs: Option<usize>) -> Result<SweepReport> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let candidates = sweep_candidates(n_max);
    let run = || candidates.par_iter().map(|&(n, a, c)| find_witness(n, a, c)).collect::<Result<Vec<_>>>();
    let records = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(run)?,
        None => run()?,
    };
    Ok(SweepReport { n_min: 1, n_max, records })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn certify_small() {
        let ok = certify(&[vec![0, 3], vec![1, 2]], 3, None);
        assert_eq!(ok.verdict, CertificateVerdict::Candidate);
        assert_eq!(ok.levels_scanned, 3);

        let bad = certify(&[vec![0, 5], vec![3, 2]], 5, None);
        assert_eq!(bad.verdict, CertificateVerdict::Nonexistent);
        assert_eq!(bad.feasibility.as_ref().unwrap().failures(), vec!["ci_bound"]);
        assert!(bad.first_violation.is_some());
        assert!(bad.recheck().unwrap());

        let invalid = certify(&[vec![1, 2], vec![1, 1]], 3, None);
        assert_eq!(invalid.verdict, CertificateVerdict::Nonexistent);
        assert!(matches!(invalid.validation_error, Some(Error::RowSum { row: 2, .. })));
    }

    #[test]
    fn candidate_enumeration_matches_direct_loop() {
        assert!(sweep_candidates(2).is_empty());
        assert!(sweep_candidates(5).contains(&(5, 0, 3)));
        for (n, a, c) in sweep_candidates(30) {
            let b = n as i64 - a;
            assert!(b > c && c > 0);
            let g = num_integer::gcd(b, c);
            assert_eq!((1i64 << n) % ((b + c) / g), 0);
            assert!(3 * (c - a) > n as i64);
        }
        // independent count for small n, using exact rationals for the bound
        let mut count = 0;
        for n in 1..=12usize {
            for a in 0..=n as i64 {
                for c in 1..(n as i64 - a) {
                    let b = n as i64 - a;
                    let q = (b + c) / num_integer::gcd(b, c);
                    let divides = (1i64 << n) % q == 0;
                    let bound = Rational::from_integer((c - a).into()) > Rational::new((n as i64).into(), 3.into());
                    if divides && bound {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(sweep_candidates(12).len(), count);
    }

    #[test]
    fn sweep_small() {
        let r = sweep_ci(5, Some(1)).unwrap();
        let rec = r.records.iter().find(|r| (r.n, r.a, r.c) == (5, 0, 3)).unwrap();
        assert!(rec.witness.is_some());
        assert_eq!(r.missing(), 0);
        assert_eq!(sweep_ci(5, Some(3)).unwrap(), r);
        assert_eq!(sweep_ci(2, None).unwrap().candidates(), 0);
    }

    #[test]
    fn witness_value_is_a_table_entry() {
        let rec = find_witness(5, 0, 3).unwrap();
        let ((r2, r3), v) = rec.witness.clone().unwrap();
        let q = validate_quotient(&rec.rows(), 5).unwrap();
        let t = build_table(&q, TableKind::Triangle, r2 + r3, None).unwrap();
        assert_eq!(t.get((0, r2, r3)).unwrap()[(0, 0, 0)], v);
        assert!(v < rat(0));
    }
}
