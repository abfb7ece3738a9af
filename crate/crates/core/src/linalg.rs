//! Exact rational matrices, m³ tensor vectors and the Kronecker lifts
//! `S ⊗ I ⊗ I`, `I ⊗ S ⊗ I`, `I ⊗ I ⊗ S` and `D ⊗ I ⊗ I`.
//!
//! Tensor vectors are row vectors of length m³ indexed by `(i, j, k)` with
//! `i` slowest and `k` fastest. Lifts are never materialized on the hot
//! path; [`apply_lift`] contracts a single index in O(m⁴).

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

pub(crate) fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Renders a rational as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational '{s}'"));
    match s.split_once('/') {
        None => Ok(Rational::from_integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(m: usize) -> Self {
        let mut id = Self::zeros(m, m);
        for i in 0..m {
            id[(i, i)] = Rational::one();
        }
        id
    }

    pub fn diagonal(diag: &[Rational]) -> Self {
        let mut d = Self::zeros(diag.len(), diag.len());
        for (i, v) in diag.iter().enumerate() {
            d[(i, i)] = v.clone();
        }
        d
    }

    /// Builds a matrix from rows; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Parse("matrix rows have different lengths".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_integers<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.as_ref().iter().map(|&v| rat(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = &self[(i, t)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(t, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: v.len() });
        }
        let mut out = vec![Rational::zero(); self.cols];
        for (t, vt) in v.iter().enumerate() {
            if vt.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let s = &self[(t, j)];
                if !s.is_zero() {
                    *o += vt * s;
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", format_rational(&self[(i, j)]))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Length-m³ vector indexed by `(i, j, k)`, `i` slowest, `k` fastest.
/// Indices are 0-based in the API.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorVector {
    m: usize,
    entries: Vec<Rational>,
}

impl TensorVector {
    pub fn zeros(m: usize) -> Self {
        Self { m, entries: vec![Rational::zero(); m * m * m] }
    }

    pub fn from_entries(m: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != m * m * m {
            return Err(Error::DimensionMismatch { expected: m * m * m, found: entries.len() });
        }
        Ok(Self { m, entries })
    }

    pub fn from_integers(m: usize, entries: &[i64]) -> Result<Self> {
        Self::from_entries(m, entries.iter().map(|&v| rat(v)).collect())
    }

    /// Indicator vector of `(i, j, k)`.
    pub fn basis(m: usize, i: usize, j: usize, k: usize) -> Self {
        let mut v = Self::zeros(m);
        v[(i, j, k)] = Rational::one();
        v
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.entries
    }

    pub fn flat_index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.m + j) * self.m + k
    }

    /// Inverse of [`Self::flat_index`].
    pub fn triple_of(&self, flat: usize) -> (usize, usize, usize) {
        let m = self.m;
        (flat / (m * m), (flat / m) % m, flat % m)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { m: self.m, entries: self.entries.iter().map(|e| e * c).collect() }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Rational, other: &TensorVector) {
        debug_assert_eq!(self.m, other.m);
        if c.is_zero() {
            return;
        }
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            if !b.is_zero() {
                *a += c * b;
            }
        }
    }

    pub fn sum(&self) -> Rational {
        self.entries.iter().fold(Rational::zero(), |acc, e| acc + e)
    }

    pub fn has_negative(&self) -> bool {
        self.entries.iter().any(Signed::is_negative)
    }
}

impl Index<(usize, usize, usize)> for TensorVector {
    type Output = Rational;
    fn index(&self, (i, j, k): (usize, usize, usize)) -> &Rational {
        &self.entries[(i * self.m + j) * self.m + k]
    }
}

impl IndexMut<(usize, usize, usize)> for TensorVector {
    fn index_mut(&mut self, (i, j, k): (usize, usize, usize)) -> &mut Rational {
        let m = self.m;
        &mut self.entries[(i * m + j) * m + k]
    }
}

impl Add for &TensorVector {
    type Output = TensorVector;
    fn add(self, rhs: &TensorVector) -> TensorVector {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&TensorVector> for TensorVector {
    fn add_assign(&mut self, rhs: &TensorVector) {
        debug_assert_eq!(self.m, rhs.m);
        for (a, b) in self.entries.iter_mut().zip(&rhs.entries) {
            *a += b;
        }
    }
}

impl Sub for &TensorVector {
    type Output = TensorVector;
    fn sub(self, rhs: &TensorVector) -> TensorVector {
        debug_assert_eq!(self.m, rhs.m);
        TensorVector {
            m: self.m,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Which tensor index a lift acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    First,
    Second,
    Third,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::First, Axis::Second, Axis::Third];

    /// 1-based position, as in `S′`, `S″`, `S‴`.
    pub fn from_position(position: u8) -> Result<Self> {
        match position {
            1 => Ok(Axis::First),
            2 => Ok(Axis::Second),
            3 => Ok(Axis::Third),
            p => Err(Error::InvalidArgument(format!("lift position must be 1, 2 or 3, got {p}"))),
        }
    }
}

/// A Kronecker lift of an m×m matrix onto one index of an m³ tensor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedMatrix {
    base: Matrix,
    axis: Axis,
    transposed: bool,
}

/// `S′`, `S″` or `S‴` depending on `axis`.
pub fn kron_lift(base: &Matrix, axis: Axis) -> Result<LiftedMatrix> {
    if !base.is_square() {
        return Err(Error::NotSquare { rows: base.rows(), cols: base.cols() });
    }
    Ok(LiftedMatrix { base: base.clone(), axis, transposed: false })
}

/// `D′ = D ⊗ I ⊗ I` with `D = diag(sizes)`.
pub fn diag_lift(sizes: &[Rational]) -> Result<LiftedMatrix> {
    if let Some(pos) = sizes.iter().position(|s| !s.is_positive()) {
        return Err(Error::NonPositiveSize { cell: pos + 1, value: format_rational(&sizes[pos]) });
    }
    Ok(LiftedMatrix { base: Matrix::diagonal(sizes), axis: Axis::First, transposed: false })
}

impl LiftedMatrix {
    pub fn base(&self) -> &Matrix {
        &self.base
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn is_transposed(&self) -> bool {
        self.transposed
    }

    pub fn m(&self) -> usize {
        self.base.rows()
    }

    /// The lift of `Sᵀ` on the same axis; equal to the transpose of the lift.
    pub fn transposed(&self) -> Self {
        Self { base: self.base.clone(), axis: self.axis, transposed: !self.transposed }
    }

    #[inline]
    fn coeff(&self, t: usize, i: usize) -> &Rational {
        if self.transposed {
            &self.base[(i, t)]
        } else {
            &self.base[(t, i)]
        }
    }

    /// Full m³×m³ matrix; test and debugging aid only.
    pub fn materialize(&self) -> Matrix {
        let m = self.m();
        let dim = m * m * m;
        let mut out = Matrix::zeros(dim, dim);
        for r in 0..dim {
            let mut e = TensorVector::zeros(m);
            e.entries[r] = Rational::one();
            let row = apply_lift(&e, self).expect("dimensions agree by construction");
            for (c, v) in row.entries.into_iter().enumerate() {
                out[(r, c)] = v;
            }
        }
        out
    }
}

/// `U · L` as a row vector times the lifted matrix, by contraction of one index.
pub fn apply_lift(u: &TensorVector, lift: &LiftedMatrix) -> Result<TensorVector> {
    let m = lift.m();
    if u.m != m {
        return Err(Error::DimensionMismatch { expected: m, found: u.m });
    }
    let mut out = TensorVector::zeros(m);
    for a in 0..m {
        for b in 0..m {
            for t in 0..m {
                let src = match lift.axis {
                    Axis::First => &u[(t, a, b)],
                    Axis::Second => &u[(a, t, b)],
                    Axis::Third => &u[(a, b, t)],
                };
                if src.is_zero() {
                    continue;
                }
                for s in 0..m {
                    let c = lift.coeff(t, s);
                    if c.is_zero() {
                        continue;
                    }
                    let dst = match lift.axis {
                        Axis::First => &mut out[(s, a, b)],
                        Axis::Second => &mut out[(a, s, b)],
                        Axis::Third => &mut out[(a, b, s)],
                    };
                    *dst += src * c;
                }
            }
        }
    }
    Ok(out)
}

/// Exact commutation test over every basis vector of the m³ space.
pub fn commutes(a: &LiftedMatrix, b: &LiftedMatrix) -> Result<bool> {
    let m = a.m();
    if b.m() != m {
        return Err(Error::DimensionMismatch { expected: m, found: b.m() });
    }
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                let e = TensorVector::basis(m, i, j, k);
                let ab = apply_lift(&apply_lift(&e, a)?, b)?;
                let ba = apply_lift(&apply_lift(&e, b)?, a)?;
                if ab != ba {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s_example() -> Matrix {
        Matrix::from_integers(&[[0, 3], [1, 2]]).unwrap()
    }

    fn sizes(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn identity_lift_is_identity() {
        let id = Matrix::identity(2);
        let u = TensorVector::from_integers(2, &[1, -2, 3, 4, 0, 5, 7, 9]).unwrap();
        for axis in Axis::ALL {
            let l = kron_lift(&id, axis).unwrap();
            assert_eq!(apply_lift(&u, &l).unwrap(), u);
        }
    }

    #[test]
    fn third_lift_on_basis_vector() {
        let l = kron_lift(&s_example(), Axis::Third).unwrap();
        let v = apply_lift(&TensorVector::basis(2, 0, 0, 0), &l).unwrap();
        assert_eq!(v, TensorVector::from_integers(2, &[0, 3, 0, 0, 0, 0, 0, 0]).unwrap());
    }

    #[test]
    fn transposed_first_lift_matches_explicit_product() {
        let l = kron_lift(&s_example(), Axis::First).unwrap().transposed();
        let u = TensorVector::from_integers(2, &[1, 0, 0, 0, 0, 0, 0, 1]).unwrap();
        let v = apply_lift(&u, &l).unwrap();
        let explicit = l.materialize();
        assert_eq!(explicit, kron_lift(&s_example(), Axis::First).unwrap().materialize().transpose());
        assert_eq!(v.entries(), explicit.left_mul_vec(u.entries()).unwrap().as_slice());
        // V_{ijk} = sum_t U_{tjk} S_{it}: (1,1,1) -> S_11 = 0, (2,1,1) -> S_21 = 1, (1,2,2) -> S_12 = 3
        assert_eq!(v, TensorVector::from_integers(2, &[0, 0, 0, 3, 1, 0, 0, 2]).unwrap());
    }

    #[test]
    fn rejects_bad_inputs() {
        let rect = Matrix::from_integers(&[vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        assert!(matches!(kron_lift(&rect, Axis::First), Err(Error::NotSquare { .. })));
        assert!(matches!(diag_lift(&sizes(&[2, 0])), Err(Error::NonPositiveSize { cell: 2, .. })));
        let l = kron_lift(&s_example(), Axis::First).unwrap();
        assert!(apply_lift(&TensorVector::zeros(3), &l).is_err());
        assert!(Matrix::from_integers(&[vec![1, 2], vec![3]]).is_err());
    }

    #[test]
    fn diag_lift_scales_first_index() {
        let d = diag_lift(&sizes(&[12, 20])).unwrap().materialize();
        let expected: Vec<i64> = vec![12, 12, 12, 12, 20, 20, 20, 20];
        for (r, e) in expected.iter().enumerate() {
            assert_eq!(d[(r, r)], rat(*e));
        }
        let one = diag_lift(&sizes(&[1, 1, 1])).unwrap();
        let u = TensorVector::from_entries(3, (0..27).map(rat).collect()).unwrap();
        assert_eq!(apply_lift(&u, &one).unwrap(), u);
    }

    #[test]
    fn commutation_pattern_of_example() {
        let s = s_example();
        let d = diag_lift(&sizes(&[2, 6])).unwrap();
        let [s1, s2, s3] = Axis::ALL.map(|a| kron_lift(&s, a).unwrap());
        assert!(commutes(&s2, &s3).unwrap());
        assert!(commutes(&s1, &s2).unwrap());
        assert!(commutes(&s1, &s3).unwrap());
        assert!(commutes(&d, &s2).unwrap());
        assert!(commutes(&d, &s3).unwrap());
        assert!(!commutes(&d, &s1).unwrap());
    }

    #[test]
    fn rational_text_round_trip() {
        for s in ["0", "-7", "3/4", "-12/5", "123456789012345678901234567890"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("6/4").unwrap()), "3/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
