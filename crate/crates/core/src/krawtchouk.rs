//! Three-variable Krawtchouk polynomials `P^{r1,r2,r3}(x, y, z)` with
//! coefficients in `ℚ[n]`, computed three ways:
//!
//! * [`poly_recursive`]: the recurrence in the first index plus cyclic
//!   rotation `P^{0,b,c}(x,y,z) = P^{b,c,0}(y,z,x)`, memoized;
//! * [`poly_direct`]: the closed triple sum of quadrinomial coefficients in
//!   `δ = (n ± x ± y ± z)/4`;
//! * [`genfun_coeff`]: coefficient extraction from the truncated product
//!   `Π (1 ± X ± Y ± Z)^{(n ± x ± y ± z)/4}`.
//!
//! [`eval_at_lifts`] maps a polynomial to a tensor vector by substituting the
//! lifts `S′, S″, S‴` (or `S′ᵀ` for interweight tables) and applying it to an
//! initial vector.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{apply_lift, rat, Matrix, Rational, TensorVector};
use crate::poly::{factorial, Exponents, Polynomial, N, X, Y, Z};
use crate::recursion::{Lifts, TableKind, Triple};

/// Polynomial in `x, y, z` whose coefficients are polynomials in `n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TriVarPolynomial(Polynomial);

impl TriVarPolynomial {
    pub fn from_polynomial(p: Polynomial) -> Self {
        Self(p)
    }

    pub fn as_polynomial(&self) -> &Polynomial {
        &self.0
    }

    pub fn into_polynomial(self) -> Polynomial {
        self.0
    }

    /// Coefficients grouped by `(x, y, z)` exponents; each value lists
    /// `(power of n, coefficient)` pairs.
    pub fn coefficients(&self) -> BTreeMap<(u32, u32, u32), Vec<(u32, Rational)>> {
        let mut out: BTreeMap<(u32, u32, u32), Vec<(u32, Rational)>> = BTreeMap::new();
        for (e, c) in self.0.terms() {
            out.entry((e[X], e[Y], e[Z])).or_default().push((e[N], c.clone()));
        }
        out
    }

    /// Total degree in `x, y, z`.
    pub fn xyz_degree(&self) -> u32 {
        self.0.degree_in([false, true, true, true])
    }

    /// `P(y, z, x)` for `P(x, y, z)`.
    pub fn rotate(&self) -> Self {
        Self(self.0.permute([N, Y, Z, X]))
    }

    pub fn specialize_n(&self, n: i64) -> Self {
        Self(self.0.specialize_n(n))
    }

    /// Canonical text: the numerator over the least common denominator,
    /// monomials in graded-lex order, `n`-coefficients in parentheses.
    pub fn render(&self) -> String {
        render(self)
    }
}

impl fmt::Display for TriVarPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn graded_lex(a: &(u32, u32, u32), b: &(u32, u32, u32)) -> Ordering {
    (b.0 + b.1 + b.2).cmp(&(a.0 + a.1 + a.2)).then_with(|| b.cmp(a))
}

fn power(name: &str, e: u32) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        e => Some(format!("{name}^{e}")),
    }
}

fn monomial_text(m: (u32, u32, u32)) -> Vec<String> {
    [power("x", m.0), power("y", m.1), power("z", m.2)].into_iter().flatten().collect()
}

/// `|c|·n^k` joined with `*`, omitting a unit factor when something else remains.
fn product_text(c: &BigInt, nexp: u32, rest: &[String]) -> String {
    let mut parts = Vec::new();
    let mag = c.abs();
    if !mag.is_one() || (nexp == 0 && rest.is_empty()) {
        parts.push(mag.to_string());
    }
    parts.extend(power("n", nexp));
    parts.extend(rest.iter().cloned());
    parts.join("*")
}

fn render(p: &TriVarPolynomial) -> String {
    let coeffs = p.coefficients();
    if coeffs.is_empty() {
        return "0".into();
    }
    let denom = p.0.terms().values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut monos: Vec<_> = coeffs.keys().copied().collect();
    monos.sort_by(graded_lex);

    let mut pieces: Vec<(bool, String)> = Vec::new();
    for mono in monos {
        let mut nterms: Vec<(u32, BigInt)> = coeffs[&mono]
            .iter()
            .map(|(k, c)| (*k, (c * Rational::from_integer(denom.clone())).to_integer()))
            .collect();
        nterms.sort_by_key(|t| std::cmp::Reverse(t.0));
        let mono_txt = monomial_text(mono);
        if nterms.len() == 1 {
            let (k, c) = &nterms[0];
            pieces.push((c.is_negative(), product_text(c, *k, &mono_txt)));
            continue;
        }
        let negative = nterms.iter().all(|(_, c)| c.is_negative());
        if negative {
            for t in &mut nterms {
                t.1 = -t.1.clone();
            }
        }
        // lead with the highest-degree positive term
        if let Some(pos) = nterms.iter().position(|(_, c)| c.is_positive()) {
            let lead = nterms.remove(pos);
            nterms.insert(0, lead);
        }
        let mut inner = String::new();
        for (idx, (k, c)) in nterms.iter().enumerate() {
            if c.is_negative() {
                inner.push('-');
            } else if idx > 0 {
                inner.push('+');
            }
            inner.push_str(&product_text(c, *k, &[]));
        }
        let mut body = format!("({inner})");
        if !mono_txt.is_empty() {
            body.push('*');
            body.push_str(&mono_txt.join("*"));
        }
        pieces.push((negative, body));
    }

    let mut out = String::new();
    for (idx, (neg, body)) in pieces.iter().enumerate() {
        match (idx, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(body);
    }
    if denom.is_one() {
        out
    } else {
        format!("({out})/{denom}")
    }
}

fn check_indices(r1: i64, r2: i64, r3: i64) -> Result<Triple> {
    if r1 < 0 || r2 < 0 || r3 < 0 {
        return Err(Error::InvalidArgument(format!("polynomial indices must be nonnegative, got ({r1},{r2},{r3})")));
    }
    Ok((r1 as usize, r2 as usize, r3 as usize))
}

type Memo = RwLock<HashMap<Triple, Arc<TriVarPolynomial>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

fn recursive(a: i64, b: i64, c: i64) -> Arc<TriVarPolynomial> {
    if a < 0 || b < 0 || c < 0 {
        return Arc::new(TriVarPolynomial::default());
    }
    let key = (a as usize, b as usize, c as usize);
    if let Some(p) = memo().read().expect("memo lock").get(&key) {
        return p.clone();
    }
    let p = if a + b + c == 0 {
        Polynomial::one()
    } else if a > 0 {
        let n = Polynomial::var(N);
        let x = Polynomial::var(X);
        let free = &n - &Polynomial::int(a + b + c - 2);
        let mut acc = &x * recursive(a - 1, b, c).as_polynomial();
        acc = acc - &free * recursive(a - 2, b, c).as_polynomial();
        acc = acc - recursive(a - 1, b + 1, c - 1).as_polynomial().scale(&rat(b + 1));
        acc = acc - recursive(a - 1, b - 1, c + 1).as_polynomial().scale(&rat(c + 1));
        acc.scale(&Rational::new(BigInt::one(), BigInt::from(a)))
    } else {
        // P^{0,b,c}(x,y,z) = P^{b,c,0}(y,z,x)
        recursive(b, c, a).rotate().into_polynomial()
    };
    let p = Arc::new(TriVarPolynomial(p));
    memo().write().expect("memo lock").insert(key, p.clone());
    p
}

/// `P^{r1,r2,r3}` by recursion on the first index; memoized process-wide.
pub fn poly_recursive(r1: i64, r2: i64, r3: i64) -> Result<TriVarPolynomial> {
    check_indices(r1, r2, r3)?;
    Ok((*recursive(r1, r2, r3)).clone())
}

/// `(n + s1 x + s2 y + s3 z) / 4` for a sign pattern.
fn delta(signs: [i64; 3]) -> Polynomial {
    Polynomial::linear(Rational::zero(), [rat(1), rat(signs[0]), rat(signs[1]), rat(signs[2])]).scale(&Rational::new(1.into(), 4.into()))
}

/// The four exponents of the generating function, in factor order
/// `(1+X+Y+Z), (1+X-Y-Z), (1-X+Y-Z), (1-X-Y+Z)`.
const SIGNS: [[i64; 3]; 4] = [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]];

/// Coefficients of the falling factorial `t(t-1)...(t-k+1)`, constant term first.
fn falling_coeffs(k: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::one()];
    for i in 0..k {
        let mut next = vec![BigInt::zero(); c.len() + 1];
        for (d, v) in c.iter().enumerate() {
            next[d + 1] += v;
            next[d] -= v * BigInt::from(i);
        }
        c = next;
    }
    c
}

/// All `(i, j, k)` with `i + j + k <= r`.
fn bounded_triples(r: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..=r {
        for j in 0..=r - i {
            for k in 0..=r - i - j {
                out.push([i, j, k]);
            }
        }
    }
    out
}

/// `P^{r1,r2,r3}` from the closed triple sum of quadrinomial coefficients.
///
/// The sum is accumulated as a polynomial in the four symbols `δ_f`, where a
/// quadrinomial coefficient `(δ; α, β, γ, ·)` is `δ^{(α+β+γ)} / (α! β! γ!)`,
/// and only then are `δ_f = (n ± x ± y ± z)/4` substituted.
pub fn poly_direct(r1: i64, r2: i64, r3: i64) -> Result<TriVarPolynomial> {
    let r = check_indices(r1, r2, r3)?;
    let r = [r.0, r.1, r.2];
    let max_deg = r[0] + r[1] + r[2];
    let falling: Vec<Vec<BigInt>> = (0..=max_deg).map(falling_coeffs).collect();
    let fact: Vec<BigInt> = (0..=max_deg as u32).map(factorial).collect();
    // (parts[f][t]) = the index of factor f used for variable t; factor 0 takes the remainder.
    let choices: Vec<Vec<[usize; 3]>> = r.iter().map(|&rt| bounded_triples(rt)).collect();
    let mut acc: BTreeMap<Exponents, Rational> = BTreeMap::new();

    for c1 in &choices[0] {
        for c2 in &choices[1] {
            for c3 in &choices[2] {
                // c_t = (i_t, j_t, k_t): contributions of factors 1, 2, 3 to variable t
                let ijk = [[c1[0], c2[0], c3[0]], [c1[1], c2[1], c3[1]], [c1[2], c2[2], c3[2]]];
                let first = [r[0] - c1.iter().sum::<usize>(), r[1] - c2.iter().sum::<usize>(), r[2] - c3.iter().sum::<usize>()];
                let per_factor = [first, ijk[0], ijk[1], ijk[2]];
                // sign (-1)^{i2+i3+j1+j3+k1+k2}
                let odd = (ijk[0][1] + ijk[0][2] + ijk[1][0] + ijk[1][2] + ijk[2][0] + ijk[2][1]) % 2 == 1;
                let mut denom = BigInt::one();
                let mut degs = [0usize; 4];
                for (f, parts) in per_factor.iter().enumerate() {
                    for &p in parts {
                        denom *= &fact[p];
                    }
                    degs[f] = parts.iter().sum();
                }
                let scale = Rational::new(if odd { -BigInt::one() } else { BigInt::one() }, denom);
                for (e0, a0) in falling[degs[0]].iter().enumerate() {
                    if a0.is_zero() {
                        continue;
                    }
                    for (e1, a1) in falling[degs[1]].iter().enumerate() {
                        if a1.is_zero() {
                            continue;
                        }
                        let a01 = a0 * a1;
                        for (e2, a2) in falling[degs[2]].iter().enumerate() {
                            if a2.is_zero() {
                                continue;
                            }
                            let a012 = &a01 * a2;
                            for (e3, a3) in falling[degs[3]].iter().enumerate() {
                                if a3.is_zero() {
                                    continue;
                                }
                                let key = [e0 as u32, e1 as u32, e2 as u32, e3 as u32];
                                let v = &scale * Rational::from_integer(&a012 * a3);
                                *acc.entry(key).or_insert_with(Rational::zero) += v;
                            }
                        }
                    }
                }
            }
        }
    }

    let mut in_deltas = Polynomial::zero();
    for (e, c) in acc {
        in_deltas.add_term(e, c);
    }
    let images = SIGNS.map(delta);
    Ok(TriVarPolynomial(in_deltas.compose(&images)))
}

/// Truncated power series in `X, Y, Z` with polynomial coefficients,
/// stored densely over the box `[0, bound]`.
struct Series {
    bound: [usize; 3],
    coeffs: Vec<Polynomial>,
}

impl Series {
    fn zero(bound: [usize; 3]) -> Self {
        let len = (bound[0] + 1) * (bound[1] + 1) * (bound[2] + 1);
        Self { bound, coeffs: vec![Polynomial::zero(); len] }
    }

    fn idx(&self, a: usize, b: usize, c: usize) -> usize {
        (a * (self.bound[1] + 1) + b) * (self.bound[2] + 1) + c
    }

    fn keys(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        let [ba, bb, bc] = self.bound;
        (0..=ba).flat_map(move |a| (0..=bb).flat_map(move |b| (0..=bc).map(move |c| [a, b, c])))
    }

    fn get(&self, k: [usize; 3]) -> &Polynomial {
        &self.coeffs[self.idx(k[0], k[1], k[2])]
    }

    fn add_at(&mut self, k: [usize; 3], p: Polynomial) {
        let i = self.idx(k[0], k[1], k[2]);
        let cur = std::mem::take(&mut self.coeffs[i]);
        self.coeffs[i] = cur + p;
    }

    fn mul(&self, other: &Series) -> Series {
        let mut out = Series::zero(self.bound);
        for ka in self.keys() {
            let pa = self.get(ka);
            if pa.is_zero() {
                continue;
            }
            for kb in other.keys() {
                let k = [ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]];
                if k[0] > self.bound[0] || k[1] > self.bound[1] || k[2] > self.bound[2] {
                    continue;
                }
                let pb = other.get(kb);
                if pb.is_zero() {
                    continue;
                }
                out.add_at(k, pa * pb);
            }
        }
        out
    }

    /// `(1 + s1 X + s2 Y + s3 Z)^e = Σ_k C(e, k) u^k`, truncated.
    fn binomial_power(bound: [usize; 3], signs: [i64; 3], exponent: &Polynomial) -> Series {
        let mut u = Series::zero(bound);
        for (t, s) in signs.iter().enumerate() {
            let mut k = [0; 3];
            k[t] = 1;
            if bound[t] >= 1 {
                u.add_at(k, Polynomial::int(*s));
            }
        }
        let mut out = Series::zero(bound);
        out.add_at([0, 0, 0], Polynomial::one());
        let mut u_pow = out.clone_series();
        let total = bound.iter().sum::<usize>();
        for k in 1..=total {
            u_pow = u_pow.mul(&u);
            let binom = exponent.binomial(k as u32);
            for key in u_pow.keys().collect::<Vec<_>>() {
                let c = u_pow.get(key);
                if !c.is_zero() {
                    out.add_at(key, c * &binom);
                }
            }
        }
        out
    }

    fn clone_series(&self) -> Series {
        Series { bound: self.bound, coeffs: self.coeffs.clone() }
    }
}

/// Coefficient of `X^{r1} Y^{r2} Z^{r3}` in the four-factor generating function.
pub fn genfun_coeff(r1: i64, r2: i64, r3: i64) -> Result<TriVarPolynomial> {
    let r = check_indices(r1, r2, r3)?;
    let bound = [r.0, r.1, r.2];
    let mut product: Option<Series> = None;
    for signs in SIGNS {
        let factor = Series::binomial_power(bound, signs, &(delta(signs)));
        product = Some(match product {
            None => factor,
            Some(p) => p.mul(&factor),
        });
    }
    let product = product.expect("four factors");
    Ok(TriVarPolynomial(product.get(bound).clone()))
}

/// `K_r(x) = Σ_i (-1)^i C(x, i) C(n - x, r - i)` as a polynomial in `n` and `x`.
pub fn classical_krawtchouk(r: u32) -> Polynomial {
    let x = Polynomial::var(X);
    let rest = &Polynomial::var(N) - &x;
    let mut out = Polynomial::zero();
    for i in 0..=r {
        let term = &x.binomial(i) * &rest.binomial(r - i);
        out = if i % 2 == 0 { out + term } else { out - term };
    }
    out
}

/// `K_r((n - x)/2)`, which equals `P^{r,0,0}(x, y, z)`.
pub fn krawtchouk_at_inverse_k1(r: u32) -> Polynomial {
    let half = Rational::new(1.into(), 2.into());
    let arg = (&Polynomial::var(N) - &Polynomial::var(X)).scale(&half);
    classical_krawtchouk(r).compose(&[Polynomial::var(N), arg, Polynomial::var(Y), Polynomial::var(Z)])
}

/// Which way to compute a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Recursion,
    Direct,
    Genfun,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Recursion, Method::Direct, Method::Genfun];

    pub fn compute(self, r1: i64, r2: i64, r3: i64) -> Result<TriVarPolynomial> {
        match self {
            Method::Recursion => poly_recursive(r1, r2, r3),
            Method::Direct => poly_direct(r1, r2, r3),
            Method::Genfun => genfun_coeff(r1, r2, r3),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Recursion => "recursion",
            Method::Direct => "direct",
            Method::Genfun => "genfun",
        }
    }
}

/// `initial · P(L1, L2, L3)` with `n` fixed, where `(L1, L2, L3)` are the
/// lifts of `s` for `kind`. Monomials share prefixes through a memo on exponents.
pub fn eval_at_lifts_from(p: &TriVarPolynomial, s: &Matrix, kind: TableKind, fixed_n: i64, initial: &TensorVector) -> Result<TensorVector> {
    let lifts = Lifts::new(s, kind)?;
    if initial.m() != s.rows() {
        return Err(Error::DimensionMismatch { expected: s.rows(), found: initial.m() });
    }
    let spec = p.specialize_n(fixed_n);
    let mut cache: HashMap<(u32, u32, u32), TensorVector> = HashMap::new();
    cache.insert((0, 0, 0), initial.clone());
    let mut out = TensorVector::zeros(initial.m());
    for (mono, coeffs) in spec.coefficients() {
        let c = coeffs.iter().fold(Rational::zero(), |acc, (_, v)| acc + v);
        let v = monomial_vector(mono, &lifts, &mut cache)?;
        out.add_scaled(&c, &v);
    }
    Ok(out)
}

fn monomial_vector(mono: (u32, u32, u32), lifts: &Lifts, cache: &mut HashMap<(u32, u32, u32), TensorVector>) -> Result<TensorVector> {
    if let Some(v) = cache.get(&mono) {
        return Ok(v.clone());
    }
    let (prev, lift) = if mono.2 > 0 {
        ((mono.0, mono.1, mono.2 - 1), &lifts.third)
    } else if mono.1 > 0 {
        ((mono.0, mono.1 - 1, 0), &lifts.second)
    } else {
        ((mono.0 - 1, 0, 0), &lifts.first)
    };
    let base = monomial_vector(prev, lifts, cache)?;
    let v = apply_lift(&base, lift)?;
    cache.insert(mono, v.clone());
    Ok(v)
}

/// [`eval_at_lifts_from`] with the standard initial vector: `T⁰⁰⁰` from
/// `sizes` for triangles, `W⁰⁰⁰` for interweight.
pub fn eval_at_lifts(p: &TriVarPolynomial, s: &Matrix, kind: TableKind, fixed_n: i64, sizes: &[Rational]) -> Result<TensorVector> {
    let initial = match kind {
        TableKind::Triangle => crate::recursion::initial_triangle(sizes),
        TableKind::Interweight => crate::recursion::initial_interweight(s.rows()),
    };
    eval_at_lifts_from(p, s, kind, fixed_n, &initial)
}

/// Whether the m³×m³ matrix `P(L1, L2, L3)` is nonzero, probing basis rows
/// and stopping at the first nonzero image.
pub fn lift_polynomial_is_nonzero(p: &TriVarPolynomial, s: &Matrix, kind: TableKind, fixed_n: i64) -> Result<bool> {
    let m = s.rows();
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                let e = TensorVector::basis(m, i, j, k);
                if !eval_at_lifts_from(p, s, kind, fixed_n, &e)?.is_zero() {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}
