//! Candidate quotient matrices: validation, cell sizes and the necessary
//! conditions used to reject parameters before any table is built.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{format_rational, Matrix, Rational};

/// Nonnegative integer m×m matrix with every row summing to `n` and
/// symmetric support.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuotientMatrix {
    n: usize,
    rows: Vec<Vec<i64>>,
}

impl QuotientMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_integers(&self.rows).expect("validated matrix is rectangular")
    }

    /// Swaps cells 1 and 2 of a 2×2 matrix so that `b >= c`.
    pub fn oriented(&self) -> QuotientMatrix {
        if self.m() == 2 && self.rows[0][1] < self.rows[1][0] {
            let [a, b, c, d] = [self.rows[0][0], self.rows[0][1], self.rows[1][0], self.rows[1][1]];
            QuotientMatrix { n: self.n, rows: vec![vec![d, c], vec![b, a]] }
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for QuotientMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_matrix())
    }
}

/// Checks squareness, nonnegativity, row sums and support symmetry.
pub fn validate_quotient(rows: &[Vec<i64>], n: usize) -> Result<QuotientMatrix> {
    let m = rows.len();
    if m == 0 {
        return Err(Error::InvalidArgument("quotient matrix must have at least one cell".into()));
    }
    for row in rows {
        if row.len() != m {
            return Err(Error::NotSquare { rows: m, cols: row.len() });
        }
    }
    for (i, row) in rows.iter().enumerate() {
        if let Some(j) = row.iter().position(|&v| v < 0) {
            return Err(Error::NegativeEntry { row: i + 1, col: j + 1 });
        }
        let sum: i64 = row.iter().sum();
        if sum != n as i64 {
            return Err(Error::RowSum { row: i + 1, sum, n: n as i64 });
        }
    }
    #[allow(clippy::needless_range_loop)]
    for i in 0..m {
        for j in i + 1..m {
            if (rows[i][j] > 0) != (rows[j][i] > 0) {
                return Err(Error::SupportAsymmetry {
                    i: i + 1,
                    j: j + 1,
                    s_ij: rows[i][j],
                    s_ji: rows[j][i],
                });
            }
        }
    }
    Ok(QuotientMatrix { n, rows: rows.to_vec() })
}

/// The unique positive `p` with `p_i S_ij = p_j S_ji` and `Σ p_i = 2ⁿ`.
///
/// Ratios are propagated along a BFS spanning tree of the support graph and
/// then checked on every remaining edge.
pub fn cell_sizes(q: &QuotientMatrix) -> Result<Vec<Rational>> {
    let m = q.m();
    let mut ratio: Vec<Option<Rational>> = vec![None; m];
    ratio[0] = Some(Rational::one());
    let mut queue = VecDeque::from([0usize]);
    #[allow(clippy::needless_range_loop)]
    while let Some(i) = queue.pop_front() {
        let pi = ratio[i].clone().expect("queued cells are assigned");
        for j in 0..m {
            if i == j || q.entry(i, j) == 0 {
                continue;
            }
            let pj = &pi * Rational::new(q.entry(i, j).into(), q.entry(j, i).into());
            match &ratio[j] {
                None => {
                    ratio[j] = Some(pj);
                    queue.push_back(j);
                }
                Some(existing) if *existing != pj => {
                    return Err(Error::InconsistentRatios { i: i + 1, j: j + 1 });
                }
                Some(_) => {}
            }
        }
    }
    let ratio: Vec<Rational> = ratio.into_iter().collect::<Option<_>>().ok_or(Error::Disconnected)?;
    let total = ratio.iter().fold(Rational::zero(), |acc, r| acc + r);
    let scale = Rational::from_integer(BigInt::one() << q.n()) / total;
    Ok(ratio.into_iter().map(|r| r * &scale).collect())
}

/// Outcome of the cell-size computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SizeStatus {
    Integral(Vec<BigInt>),
    NonIntegral(Vec<Rational>),
    Undetermined(Error),
}

impl SizeStatus {
    pub fn is_integral(&self) -> bool {
        matches!(self, SizeStatus::Integral(_))
    }

    /// Sizes as rationals, if determined.
    pub fn rationals(&self) -> Option<Vec<Rational>> {
        match self {
            SizeStatus::Integral(v) => Some(v.iter().cloned().map(Rational::from_integer).collect()),
            SizeStatus::NonIntegral(v) => Some(v.clone()),
            SizeStatus::Undetermined(_) => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            SizeStatus::Integral(v) => {
                v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
            }
            SizeStatus::NonIntegral(v) => format!(
                "non-integral ({})",
                v.iter().map(format_rational).collect::<Vec<_>>().join(",")
            ),
            SizeStatus::Undetermined(e) => format!("undetermined: {e}"),
        }
    }
}

pub fn size_status(q: &QuotientMatrix) -> SizeStatus {
    match cell_sizes(q) {
        Ok(sizes) if sizes.iter().all(|s| s.is_integer()) => {
            SizeStatus::Integral(sizes.into_iter().map(|s| s.to_integer()).collect())
        }
        Ok(sizes) => SizeStatus::NonIntegral(sizes),
        Err(e) => SizeStatus::Undetermined(e),
    }
}

/// Integer characteristic polynomial and its factorization over the
/// eigenvalues `n - 2w` of the n-cube.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumReport {
    /// Coefficients of `det(λI - S)`, constant term first.
    pub char_poly: Vec<BigInt>,
    /// Cube eigenvalues found as roots, with multiplicity, descending.
    pub eigenvalues: Vec<i64>,
    /// Cofactor left after dividing out every cube eigenvalue; `[1]` iff the check passed.
    pub residual: Vec<BigInt>,
}

impl SpectrumReport {
    pub fn ok(&self) -> bool {
        self.residual.len() == 1
    }
}

/// Faddeev–LeVerrier over the rationals; the result is integral for integer `S`.
pub fn characteristic_polynomial(s: &Matrix) -> Vec<BigInt> {
    let m = s.rows();
    let mut coeffs = vec![Rational::zero(); m + 1];
    coeffs[m] = Rational::one();
    let mut aux = Matrix::zeros(m, m);
    for k in 1..=m {
        let mut next = s.mul(&aux).expect("square");
        for i in 0..m {
            next[(i, i)] += &coeffs[m - k + 1];
        }
        let prod = s.mul(&next).expect("square");
        let trace = (0..m).fold(Rational::zero(), |acc, i| acc + &prod[(i, i)]);
        coeffs[m - k] = -trace / Rational::from_integer(BigInt::from(k));
        aux = next;
    }
    coeffs
        .into_iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect()
}

/// Divides `poly` by `(λ - root)` if it is a root; coefficients constant term first.
fn divide_root(poly: &[BigInt], root: &BigInt) -> Option<Vec<BigInt>> {
    let deg = poly.len() - 1;
    if deg == 0 {
        return None;
    }
    let mut quotient = vec![BigInt::zero(); deg];
    let mut carry = BigInt::zero();
    for d in (1..=deg).rev() {
        carry = &poly[d] + carry * root;
        quotient[d - 1] = carry.clone();
    }
    let remainder = &poly[0] + carry * root;
    remainder.is_zero().then_some(quotient)
}

pub fn spectrum_check(q: &QuotientMatrix) -> SpectrumReport {
    let char_poly = characteristic_polynomial(&q.to_matrix());
    let mut residual = char_poly.clone();
    let mut eigenvalues = Vec::new();
    let n = q.n() as i64;
    for w in 0..=n {
        let root = BigInt::from(n - 2 * w);
        while let Some(next) = divide_root(&residual, &root) {
            residual = next;
            eigenvalues.push(n - 2 * w);
        }
    }
    SpectrumReport { char_poly, eigenvalues, residual }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Candidate,
    Rejected,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Candidate => "candidate",
            Verdict::Rejected => "rejected",
        }
    }
}

/// Every applicable necessary condition, evaluated exactly.
///
/// `divisibility_ok` and `ci_bound_ok` are `None` where they do not apply
/// (m ≠ 2, or `b = c` for the correlation-immunity bound). They refer to the
/// orientation with `b >= c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub row_sum_ok: bool,
    pub sizes: SizeStatus,
    pub sizes_connected: bool,
    pub divisibility_ok: Option<bool>,
    pub ci_bound_ok: Option<bool>,
    pub spectrum: SpectrumReport,
    pub verdict: Verdict,
}

impl FeasibilityReport {
    /// Names of the failed checks, in a fixed order.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.row_sum_ok {
            out.push("row_sum");
        }
        if !self.sizes_connected {
            out.push("sizes_connected");
        } else if !self.sizes.is_integral() {
            out.push("sizes_integral");
        }
        if self.divisibility_ok == Some(false) {
            out.push("divisibility");
        }
        if self.ci_bound_ok == Some(false) {
            out.push("ci_bound");
        }
        if !self.spectrum.ok() {
            out.push("spectrum");
        }
        out
    }
}

/// `(b + c) / gcd(b, c)` divides `2ⁿ`.
pub fn divisibility_condition(b: i64, c: i64, n: usize) -> bool {
    let g = b.gcd(&c);
    if g == 0 {
        return false;
    }
    let q = (b + c) / g;
    // q divides a power of two iff q is itself a power of two no larger than 2^n
    q > 0 && (q as u64).is_power_of_two() && q.trailing_zeros() as usize <= n
}

/// `c - a <= n/3`, compared as `3(c - a) <= n`.
pub fn ci_bound(a: i64, c: i64, n: usize) -> bool {
    3 * (c - a) <= n as i64
}

pub fn feasibility_conditions(q: &QuotientMatrix) -> FeasibilityReport {
    let n = q.n();
    let row_sum_ok = q.rows().iter().all(|r| r.iter().sum::<i64>() == n as i64);
    let sizes = size_status(q);
    let sizes_connected = !matches!(sizes, SizeStatus::Undetermined(_));
    let (divisibility_ok, ci_bound_ok) = if q.m() == 2 {
        let o = q.oriented();
        let (a, b, c) = (o.entry(0, 0), o.entry(0, 1), o.entry(1, 0));
        let div = if b == 0 && c == 0 { None } else { Some(divisibility_condition(b, c, n)) };
        let ci = (b != c).then(|| ci_bound(a, c, n));
        (div, ci)
    } else {
        (None, None)
    };
    let spectrum = spectrum_check(q);
    let mut report = FeasibilityReport {
        row_sum_ok,
        sizes,
        sizes_connected,
        divisibility_ok,
        ci_bound_ok,
        spectrum,
        verdict: Verdict::Candidate,
    };
    if !report.failures().is_empty() {
        report.verdict = Verdict::Rejected;
    }
    report
}

/// True iff every size is a positive integer.
pub fn sizes_are_integral(sizes: &[Rational]) -> bool {
    sizes.iter().all(|s| s.is_integer() && s.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn q(rows: &[&[i64]], n: usize) -> QuotientMatrix {
        validate_quotient(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), n).unwrap()
    }

    #[test]
    fn validation() {
        q(&[&[0, 3], &[1, 2]], 3);
        q(&[&[0, 22, 0], &[5, 6, 11], &[0, 10, 12]], 22);
        let err = validate_quotient(&[vec![1, 2], vec![1, 1]], 3).unwrap_err();
        assert_eq!(err, Error::RowSum { row: 2, sum: 2, n: 3 });
        let err = validate_quotient(&[vec![1, 2], vec![0, 3]], 3).unwrap_err();
        assert!(matches!(err, Error::SupportAsymmetry { i: 1, j: 2, .. }));
        assert!(matches!(validate_quotient(&[vec![1, 2]], 3), Err(Error::NotSquare { .. })));
        assert!(matches!(
            validate_quotient(&[vec![-1, 4], vec![1, 2]], 3),
            Err(Error::NegativeEntry { row: 1, col: 1 })
        ));
    }

    #[test]
    fn sizes() {
        assert_eq!(cell_sizes(&q(&[&[0, 3], &[1, 2]], 3)).unwrap(), vec![rat(2), rat(6)]);
        assert_eq!(cell_sizes(&q(&[&[0, 5], &[3, 2]], 5)).unwrap(), vec![rat(12), rat(20)]);
        assert_eq!(cell_sizes(&q(&[&[2]], 2)).unwrap(), vec![rat(4)]);
        let ex7 = cell_sizes(&q(&[&[0, 22, 0], &[5, 6, 11], &[0, 10, 12]], 22)).unwrap();
        assert_eq!(ex7.iter().fold(Rational::zero(), |a, b| a + b), rat(1 << 22));
        assert_eq!(
            cell_sizes(&q(&[&[1, 0], &[0, 1]], 1)).unwrap_err(),
            Error::Disconnected
        );
        // 1 -> 2 -> 3 -> 1 with ratio product 2 ≠ 1
        let cyc = q(&[&[0, 2, 1], &[1, 0, 2], &[2, 1, 0]], 3);
        assert!(matches!(cell_sizes(&cyc), Err(Error::InconsistentRatios { .. })));
    }

    #[test]
    fn non_integral_sizes_are_reported() {
        // p1 = 2 p2 and p1 + p2 = 4
        let s = size_status(&q(&[&[1, 1], &[2, 0]], 2));
        assert_eq!(s, SizeStatus::NonIntegral(vec![Rational::new(8.into(), 3.into()), Rational::new(4.into(), 3.into())]));
        let r = feasibility_conditions(&q(&[&[1, 1], &[2, 0]], 2));
        assert_eq!(r.verdict, Verdict::Rejected);
    }

    #[test]
    fn feasibility_examples() {
        let r = feasibility_conditions(&q(&[&[0, 3], &[1, 2]], 3));
        assert_eq!((r.divisibility_ok, r.ci_bound_ok, r.verdict), (Some(true), Some(true), Verdict::Candidate));

        let r = feasibility_conditions(&q(&[&[0, 5], &[3, 2]], 5));
        assert_eq!((r.divisibility_ok, r.ci_bound_ok, r.verdict), (Some(true), Some(false), Verdict::Rejected));
        assert_eq!(r.failures(), vec!["ci_bound"]);

        let r = feasibility_conditions(&q(&[&[2, 2], &[2, 2]], 4));
        assert_eq!((r.divisibility_ok, r.ci_bound_ok, r.verdict), (Some(true), None, Verdict::Candidate));

        // orientation: [[2,1],[3,0]] becomes [[0,3],[1,2]]
        let r = feasibility_conditions(&q(&[&[2, 1], &[3, 0]], 3));
        assert_eq!((r.divisibility_ok, r.ci_bound_ok), (Some(true), Some(true)));
    }

    #[test]
    fn ci_boundary_is_inclusive() {
        assert!(ci_bound(0, 2, 6));
        assert!(!ci_bound(0, 3, 8));
        assert!(divisibility_condition(3, 1, 2));
        assert!(!divisibility_condition(3, 1, 1));
        assert!(!divisibility_condition(2, 1, 10));
    }

    #[test]
    fn spectra() {
        let r = spectrum_check(&q(&[&[0, 22, 0], &[5, 6, 11], &[0, 10, 12]], 22));
        assert!(r.ok());
        assert_eq!(r.eigenvalues, vec![22, 6, -10]);

        let r = spectrum_check(&q(&[&[0, 3], &[1, 2]], 3));
        assert_eq!(r.char_poly, vec![BigInt::from(-3), BigInt::from(-2), BigInt::from(1)]);
        assert_eq!(r.eigenvalues, vec![3, -1]);

        let r = spectrum_check(&q(&[&[0, 2], &[1, 1]], 2));
        assert!(!r.ok());
        assert_eq!(r.eigenvalues, vec![2]);

        let r = spectrum_check(&q(&[&[4]], 4));
        assert_eq!(r.eigenvalues, vec![4]);
    }
}
