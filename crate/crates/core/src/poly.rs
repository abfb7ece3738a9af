//! Sparse polynomials with rational coefficients in the four variables
//! `n, x, y, z`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linalg::{rat, Rational};

/// Exponents of `(n, x, y, z)`.
pub type Exponents = [u32; 4];

pub const N: usize = 0;
pub const X: usize = 1;
pub const Y: usize = 2;
pub const Z: usize = 3;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Exponents, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term([0; 4], c);
        p
    }

    pub fn int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn var(index: usize) -> Self {
        let mut e = [0; 4];
        e[index] = 1;
        let mut p = Self::zero();
        p.add_term(e, Rational::one());
        p
    }

    /// `c0 + c_n n + c_x x + c_y y + c_z z`.
    pub fn linear(constant: Rational, coeffs: [Rational; 4]) -> Self {
        let mut p = Self::constant(constant);
        for (i, c) in coeffs.into_iter().enumerate() {
            p = p + Self::var(i).scale(&c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: Exponents) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    /// Total degree in the variables selected by `mask` (indexed like [`Exponents`]).
    pub fn degree_in(&self, mask: [bool; 4]) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().zip(mask).filter(|(_, m)| *m).map(|(d, _)| *d).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Permutes variables: variable `i` becomes variable `perm[i]`.
    pub fn permute(&self, perm: [usize; 4]) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut ne = [0; 4];
            for i in 0..4 {
                ne[perm[i]] += e[i];
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Substitutes `images[i]` for variable `i`.
    pub fn compose(&self, images: &[Polynomial; 4]) -> Self {
        let max: Vec<u32> = (0..4).map(|i| self.terms.keys().map(|e| e[i]).max().unwrap_or(0)).collect();
        let powers: Vec<Vec<Polynomial>> = (0..4)
            .map(|i| {
                let mut p = vec![Self::one()];
                for k in 1..=max[i] as usize {
                    let next = &p[k - 1] * &images[i];
                    p.push(next);
                }
                p
            })
            .collect();
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for i in 0..4 {
                if e[i] > 0 {
                    t = &t * &powers[i][e[i] as usize];
                }
            }
            out = out + t;
        }
        out
    }

    /// Substitutes a fixed value for `n`.
    pub fn specialize_n(&self, n: i64) -> Self {
        let mut out = Self::zero();
        let nv = BigInt::from(n);
        for (e, c) in &self.terms {
            let f = Rational::from_integer(num_traits::pow(nv.clone(), e[N] as usize));
            out.add_term([0, e[X], e[Y], e[Z]], c * f);
        }
        out
    }

    /// Falling factorial `p (p-1) ... (p-k+1)`.
    pub fn falling(&self, k: u32) -> Self {
        let mut out = Self::one();
        for i in 0..k {
            out = &out * &(self - &Self::int(i as i64));
        }
        out
    }

    /// `p(p-1)...(p-k+1) / k!`.
    pub fn binomial(&self, k: u32) -> Self {
        self.falling(k).scale(&Rational::new(BigInt::one(), factorial(k)))
    }
}

pub fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, x| acc * x)
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.clone() + rhs.clone()
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Self { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let x = Polynomial::var(X);
        let y = Polynomial::var(Y);
        let sq = &(&x + &y) * &(&x + &y);
        assert_eq!(sq.coeff([0, 1, 1, 0]), rat(2));
        assert!((&sq - &sq).is_zero());
        assert_eq!(sq.degree_in([false, true, true, true]), 2);
        assert_eq!((&x - &y).pow(3).terms().len(), 4);
    }

    #[test]
    fn binomials_and_substitution() {
        let n = Polynomial::var(N);
        let b = n.binomial(2);
        assert_eq!(b.specialize_n(5), Polynomial::int(10));
        // n -> x + 1 in n(n-1)/2 gives (x+1)x/2
        let images = [&Polynomial::var(X) + &Polynomial::one(), Polynomial::var(X), Polynomial::var(Y), Polynomial::var(Z)];
        let c = b.compose(&images);
        assert_eq!(c.coeff([0, 2, 0, 0]), Rational::new(1.into(), 2.into()));
        assert_eq!(c.coeff([0, 1, 0, 0]), Rational::new(1.into(), 2.into()));
        assert_eq!(c.coeff([0, 0, 0, 0]), rat(0));
        let p = Polynomial::var(X).permute([0, 2, 3, 1]);
        assert_eq!(p, Polynomial::var(Y));
    }
}
