//! Exact arithmetic in the cyclotomic field `Q(w_N)`.
//!
//! A [`CycloNum`] stores `N` rational coefficients over the powers
//! `1, w_N, ..., w_N^{N-1}`. That representation is redundant; the canonical
//! form is the remainder modulo the cyclotomic polynomial `Phi_N`, supported
//! on exponents `0..phi(N)`. Equality and the integer / Eisenstein-integer
//! tests are all coefficient inspections on the canonical form.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, ToPrimitive, Zero};

use crate::error::{domain, invalid, Result};
use crate::scalar::{is_one, is_zero, ExactScalar};

/// Euler's totient.
pub fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials (integer coefficients, memoized)
// ---------------------------------------------------------------------------

type Cache<V> = OnceLock<RwLock<HashMap<u64, Arc<V>>>>;

static PHI_CACHE: Cache<Vec<i64>> = OnceLock::new();
static REDUCTION_CACHE: Cache<ReductionTable> = OnceLock::new();

fn cached<V>(cache: &'static Cache<V>, key: u64, build: impl FnOnce() -> V) -> Arc<V> {
    let lock = cache.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(v) = lock.read().unwrap().get(&key) {
        return Arc::clone(v);
    }
    // Built outside the write lock: building Phi_m recurses into the cache.
    let value = Arc::new(build());
    let mut map = lock.write().unwrap();
    Arc::clone(map.entry(key).or_insert(value))
}

/// Quotient of `num` by the monic `den`, or `None` on overflow or a nonzero
/// remainder.
fn divide_by_monic<I>(num: &[I], den: &[i64]) -> Option<Vec<I>>
where
    I: Clone + Zero + CheckedMul + CheckedSub + From<i64>,
{
    let n = num.len() - 1;
    let k = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![I::zero(); n - k + 1];
    for i in (0..=n - k).rev() {
        let q = rem[i + k].clone();
        if q.is_zero() {
            continue;
        }
        for (j, &d) in den.iter().enumerate() {
            let t = q.checked_mul(&I::from(d))?;
            rem[i + j] = rem[i + j].checked_sub(&t)?;
        }
        quot[i] = q;
    }
    if rem.iter().all(Zero::is_zero) {
        Some(quot)
    } else {
        None
    }
}

fn build_cyclotomic(m: u64) -> Vec<i64> {
    if m == 1 {
        return vec![-1, 1];
    }
    let proper: Vec<Arc<Vec<i64>>> = divisors(m)
        .into_iter()
        .filter(|&d| d < m)
        .map(cyclotomic_coefficients)
        .collect();

    let mut fast: Option<Vec<i128>> = {
        let mut p = vec![0i128; m as usize + 1];
        p[0] = -1;
        p[m as usize] = 1;
        Some(p)
    };
    for phi_d in &proper {
        fast = fast.and_then(|p| divide_by_monic(&p, phi_d));
    }
    if let Some(p) = fast {
        if let Some(out) = p.iter().map(|c| i64::try_from(*c).ok()).collect() {
            return out;
        }
    }

    let mut p = vec![BigInt::zero(); m as usize + 1];
    p[0] = BigInt::from(-1);
    p[m as usize] = BigInt::from(1);
    for phi_d in &proper {
        p = divide_by_monic(&p, phi_d).expect("x^m - 1 is divisible by Phi_d for d | m");
    }
    p.iter()
        .map(|c| c.to_i64().expect("cyclotomic coefficient exceeds i64"))
        .collect()
}

/// Coefficients of `Phi_m` (index = degree), computed as
/// `(x^m - 1) / prod_{d | m, d < m} Phi_d` and memoized.
pub fn cyclotomic_coefficients(m: u64) -> Arc<Vec<i64>> {
    assert!(m >= 1, "cyclotomic polynomial index must be positive");
    cached(&PHI_CACHE, m, || build_cyclotomic(m))
}

/// `Phi_m` as a polynomial over the exact scalar `T`.
pub fn cyclotomic_poly<T: ExactScalar>(m: u64) -> Polynomial<T> {
    Polynomial::from_ints(&cyclotomic_coefficients(m))
}

// ---------------------------------------------------------------------------
// Reduction modulo Phi_N
// ---------------------------------------------------------------------------

/// Row `j` is `x^j mod Phi_N`, stored sparsely.
struct ReductionTable {
    phi: usize,
    rows: Vec<Vec<(usize, i64)>>,
}

fn build_reduction_table(n: u64) -> ReductionTable {
    let phi_poly = cyclotomic_coefficients(n);
    let phi = phi_poly.len() - 1;
    let mut rows = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    for j in 0..n as usize {
        if j < phi {
            rows.push(vec![(j, 1)]);
            if j + 1 == phi {
                cur[j] = 1;
            }
            continue;
        }
        // x^j = x * x^{j-1}; fold the x^phi term back using the monic Phi_N.
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for (c, &p) in cur.iter_mut().zip(phi_poly.iter()) {
                *c = top
                    .checked_mul(p)
                    .and_then(|t| c.checked_sub(t))
                    .expect("reduction table coefficient exceeds i64");
            }
        }
        rows.push(
            cur.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (i, c))
                .collect(),
        );
    }
    ReductionTable { phi, rows }
}

fn reduction_table(n: u64) -> Arc<ReductionTable> {
    cached(&REDUCTION_CACHE, n, || build_reduction_table(n))
}

// ---------------------------------------------------------------------------
// CycloNum
// ---------------------------------------------------------------------------

/// An element `sum_j coeffs[j] * w_N^j` of `Q(w_N)`.
#[derive(Clone, Debug)]
pub struct CycloNum<T> {
    order: u64,
    coeffs: Vec<T>,
}

impl<T: ExactScalar> CycloNum<T> {
    /// # Panics
    /// If `order` is zero.
    pub fn zero(order: u64) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        CycloNum {
            order,
            coeffs: vec![T::zero(); order as usize],
        }
    }

    pub fn from_scalar(order: u64, v: T) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = v;
        z
    }

    pub fn from_int(order: u64, v: i64) -> Self {
        Self::from_scalar(order, T::from_int(v))
    }

    pub fn one(order: u64) -> Self {
        Self::from_int(order, 1)
    }

    /// `w_N^{j mod N}`.
    pub fn root(order: u64, j: i64) -> Result<Self> {
        if order == 0 {
            return Err(invalid("root of unity of order 0"));
        }
        let mut z = Self::zero(order);
        z.coeffs[j.rem_euclid(order as i64) as usize] = T::one();
        Ok(z)
    }

    /// `sum_j counts[j] * w_N^j` with integer multiplicities.
    pub fn from_exponent_counts(order: u64, counts: &[i64]) -> Self {
        assert_eq!(counts.len() as u64, order, "one count per exponent");
        assert!(order >= 1, "cyclotomic order must be positive");
        CycloNum {
            order,
            coeffs: counts.iter().map(|&c| T::from_int(c)).collect(),
        }
    }

    pub fn from_coeffs(order: u64, coeffs: Vec<T>) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        assert_eq!(coeffs.len() as u64, order, "one coefficient per exponent");
        CycloNum { order, coeffs }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Re-expresses the value in `Q(w_M)`; `M` must be a multiple of the order.
    pub fn lift(&self, new_order: u64) -> Self {
        assert!(
            new_order % self.order == 0,
            "cannot lift order {} to {}",
            self.order,
            new_order
        );
        if new_order == self.order {
            return self.clone();
        }
        let step = (new_order / self.order) as usize;
        let mut out = Self::zero(new_order);
        for (j, c) in self.coeffs.iter().enumerate() {
            out.coeffs[j * step] = c.clone();
        }
        out
    }

    fn lifted_pair(&self, other: &Self) -> (Self, Self) {
        let l = self.order.lcm(&other.order);
        (self.lift(l), other.lift(l))
    }

    pub fn scale(&self, k: &T) -> Self {
        CycloNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.clone() * k.clone()).collect(),
        }
    }

    /// Complex conjugate: `w^j -> w^{N-j}`.
    pub fn conj(&self) -> Self {
        let n = self.order as usize;
        let mut out = Self::zero(self.order);
        for (j, c) in self.coeffs.iter().enumerate() {
            out.coeffs[(n - j) % n] = c.clone();
        }
        out
    }

    /// Canonical form: remainder modulo `Phi_N`, supported on `0..phi(N)`.
    pub fn reduce(&self) -> Self {
        let table = reduction_table(self.order);
        let mut out = Self::zero(self.order);
        for (j, c) in self.coeffs.iter().enumerate() {
            if is_zero(c) {
                continue;
            }
            for &(i, v) in &table.rows[j] {
                out.coeffs[i] = out.coeffs[i].clone() + c.clone() * T::from_int(v);
            }
        }
        out
    }

    /// The `phi(N)` coefficients of the canonical form.
    pub fn canonical_coeffs(&self) -> Vec<T> {
        let phi = reduction_table(self.order).phi;
        let mut r = self.reduce().coeffs;
        r.truncate(phi);
        r
    }

    pub fn is_zero(&self) -> bool {
        self.reduce().coeffs.iter().all(is_zero)
    }

    /// The value as a rational number, if it is one.
    pub fn as_rational(&self) -> Option<T> {
        let r = self.reduce();
        if r.coeffs[1..].iter().all(is_zero) {
            Some(r.coeffs[0].clone())
        } else {
            None
        }
    }

    /// The value as a rational integer, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        self.as_rational().and_then(|q| q.to_int())
    }

    /// `(a, b)` with `self = a + b w_3` and `a, b` integers, if such exist.
    pub fn as_eisenstein(&self) -> Option<(i64, i64)> {
        let z = if self.order % 3 == 0 {
            self.clone()
        } else {
            self.lift(self.order * 3)
        };
        let n = z.order;
        let r = z.reduce().coeffs;
        let w3 = Self::root(n, (n / 3) as i64)
            .expect("positive order")
            .reduce()
            .coeffs;
        // w_3 is irrational, so its canonical form has a nonzero entry past 0.
        let pivot = (1..w3.len()).find(|&j| !is_zero(&w3[j]))?;
        let b = r[pivot].clone() / w3[pivot].clone();
        let a = r[0].clone() - b.clone() * w3[0].clone();
        let consistent = r.iter().zip(&w3).enumerate().all(|(i, (ri, wi))| {
            let base = if i == 0 { a.clone() } else { T::zero() };
            *ri == base + b.clone() * wi.clone()
        });
        if !consistent {
            return None;
        }
        Some((a.to_int()?, b.to_int()?))
    }

    /// `true` when the value is real, i.e. fixed by conjugation.
    pub fn is_real(&self) -> bool {
        (self.clone() - self.conj()).is_zero()
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !is_zero(*c))
            .map(|(j, c)| Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / n) * c.to_f64())
            .sum()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(T, T) -> T) -> Self {
        let (a, b) = self.lifted_pair(other);
        CycloNum {
            order: a.order,
            coeffs: a
                .coeffs
                .into_iter()
                .zip(b.coeffs)
                .map(|(x, y)| f(x, y))
                .collect(),
        }
    }

    fn convolve(&self, other: &Self) -> Self {
        let (a, b) = self.lifted_pair(other);
        let n = a.order as usize;
        let mut out = Self::zero(a.order);
        for (i, x) in a.coeffs.iter().enumerate().filter(|(_, x)| !is_zero(*x)) {
            for (j, y) in b.coeffs.iter().enumerate().filter(|(_, y)| !is_zero(*y)) {
                let k = (i + j) % n;
                out.coeffs[k] = out.coeffs[k].clone() + x.clone() * y.clone();
            }
        }
        out
    }
}

impl<T: ExactScalar> PartialEq for CycloNum<T> {
    fn eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_zero()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<T: ExactScalar> $trait for CycloNum<T> {
            type Output = CycloNum<T>;
            fn $method(self, rhs: Self) -> Self::Output {
                $body(&self, &rhs)
            }
        }
        impl<'a, T: ExactScalar> $trait<&'a CycloNum<T>> for &'a CycloNum<T> {
            type Output = CycloNum<T>;
            fn $method(self, rhs: Self) -> Self::Output {
                $body(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &CycloNum<T>, b: &CycloNum<T>| a.zip_with(b, |x, y| x + y));
forward_binop!(Sub, sub, |a: &CycloNum<T>, b: &CycloNum<T>| a.zip_with(b, |x, y| x - y));
forward_binop!(Mul, mul, |a: &CycloNum<T>, b: &CycloNum<T>| a.convolve(b));

impl<T: ExactScalar> Neg for CycloNum<T> {
    type Output = CycloNum<T>;
    fn neg(self) -> Self::Output {
        CycloNum {
            order: self.order,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<T: ExactScalar> Neg for &CycloNum<T> {
    type Output = CycloNum<T>;
    fn neg(self) -> Self::Output {
        -self.clone()
    }
}

impl<T: ExactScalar> fmt::Display for CycloNum<T> {
    /// Canonical form, e.g. `2 + w12^2` or `-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = self.canonical_coeffs();
        let mut terms = Vec::new();
        for (j, c) in coeffs.iter().enumerate().filter(|(_, c)| !is_zero(*c)) {
            let r = c.to_ratio_string();
            let r = r.strip_suffix("/1").unwrap_or(&r).to_string();
            terms.push(match j {
                0 => r,
                _ if is_one(c) => format!("w{}^{}", self.order, j),
                _ => format!("{}*w{}^{}", r, self.order, j),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

// ---------------------------------------------------------------------------
// Polynomials
// ---------------------------------------------------------------------------

/// Dense polynomial with exact rational coefficients, index = degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: ExactScalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(is_one)
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(ExactScalar::is_integral)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(Vec::new());
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    /// Euclidean division. Errors on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| domain("polynomial division by zero"))?;
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&nd| nd >= dd) else {
            return Ok((Self::new(Vec::new()), self.clone()));
        };
        let mut quot = vec![T::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let q = rem[i + dd].clone() / lead.clone();
            if is_zero(&q) {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - q.clone() * d.clone();
            }
            quot[i] = q;
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_f64())
    }
}

/// Polynomial whose coefficients are cyclotomic numbers of one common order.
#[derive(Clone, Debug)]
pub struct CycloPolynomial<T> {
    order: u64,
    coeffs: Vec<CycloNum<T>>,
}

impl<T: ExactScalar> CycloPolynomial<T> {
    pub fn one(order: u64) -> Self {
        CycloPolynomial {
            order,
            coeffs: vec![CycloNum::one(order)],
        }
    }

    /// `x - root`.
    pub fn linear(root: CycloNum<T>) -> Self {
        let order = root.order();
        CycloPolynomial {
            order,
            coeffs: vec![-root, CycloNum::one(order)],
        }
    }

    pub fn coeffs(&self) -> &[CycloNum<T>] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.as_integer() == Some(1))
    }

    /// Product with every coefficient reduced to canonical form.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.lcm(&other.order);
        let mut out = vec![CycloNum::zero(order); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        CycloPolynomial {
            order,
            coeffs: out.iter().map(CycloNum::reduce).collect(),
        }
    }

    /// Coefficientwise equality with a rational polynomial.
    pub fn equals(&self, p: &Polynomial<T>) -> bool {
        let len = self.coeffs.len().max(p.coeffs().len());
        (0..len).all(|i| {
            let lhs = self
                .coeffs
                .get(i)
                .cloned()
                .unwrap_or_else(|| CycloNum::zero(self.order));
            let rhs = p.coeffs().get(i).cloned().unwrap_or_else(T::zero);
            lhs == CycloNum::from_scalar(self.order, rhs)
        })
    }
}

/// The two conjugate factors `(Phi^1_{m,3}, Phi^2_{m,3})` of `Phi_m` over
/// `Q(w_3)`, expanded in `Q(w_N)`: roots `w_m^a` for units `a = 1` resp.
/// `a = 2 (mod 3)`.
pub fn phi3_factors<T: ExactScalar>(
    m: u64,
    n: u64,
) -> Result<(CycloPolynomial<T>, CycloPolynomial<T>)> {
    if m == 0 || m % 3 != 0 {
        return Err(domain(format!("{m} is not a positive multiple of 3")));
    }
    if n % m != 0 {
        return Err(domain(format!("{m} does not divide {n}")));
    }
    let step = (n / m) as i64;
    let mut factors = [CycloPolynomial::one(n), CycloPolynomial::one(n)];
    for a in (1..m).filter(|a| a.gcd(&m) == 1) {
        let root = CycloNum::root(n, a as i64 * step)?;
        let slot = if a % 3 == 1 { 0 } else { 1 };
        factors[slot] = factors[slot].mul(&CycloPolynomial::linear(root));
    }
    let [f1, f2] = factors;
    Ok((f1, f2))
}
