//! The cyclotomic field ℚ(ζ_r) realized as ℚ[x]/Φ_r(x).
//!
//! Elements are stored as residues of degree < φ(r). Which primitive root
//! `x` stands for is not pinned down by the residue; [`CyclotomicElement::to_complex`]
//! uses ζ_r = exp(2πi/r).

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Mul, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{ArithError, Rational};

pub fn euler_totient(r: u32) -> usize {
    let mut n = r;
    let mut result = r;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

fn cache() -> &'static Mutex<HashMap<u32, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Φ_r with ascending integer coefficients, obtained by dividing x^r − 1 by
/// Φ_d for every proper divisor d of r. Results are cached per `r`.
///
/// Panics if `r == 0`.
pub fn cyclotomic_polynomial(r: u32) -> Arc<Vec<BigInt>> {
    assert!(r >= 1, "cyclotomic polynomial of order 0");
    if let Some(hit) = cache().lock().expect("cyclotomic cache poisoned").get(&r) {
        return Arc::clone(hit);
    }

    // The lock is released while recursing into the divisors.
    let mut quotient = vec![BigInt::zero(); r as usize + 1];
    quotient[0] = BigInt::from(-1);
    quotient[r as usize] = BigInt::one();
    for d in (1..r).filter(|d| r.is_multiple_of(*d)) {
        let divisor = cyclotomic_polynomial(d);
        quotient = exact_div_monic(&quotient, &divisor);
    }
    debug_assert_eq!(quotient.len() - 1, euler_totient(r));

    let poly = Arc::new(quotient);
    cache()
        .lock()
        .expect("cyclotomic cache poisoned")
        .entry(r)
        .or_insert_with(|| Arc::clone(&poly));
    poly
}

fn exact_div_monic(dividend: &[BigInt], divisor: &[BigInt]) -> Vec<BigInt> {
    let n = divisor.len() - 1;
    let mut rem = dividend.to_vec();
    let mut quot = vec![BigInt::zero(); dividend.len() - n];
    for k in (n..dividend.len()).rev() {
        let c = std::mem::take(&mut rem[k]);
        if c.is_zero() {
            continue;
        }
        for (i, d) in divisor[..n].iter().enumerate() {
            rem[k - n + i] -= &c * d;
        }
        quot[k - n] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// Reduces a polynomial (ascending coefficients, any length) modulo Φ_r,
/// returning exactly φ(r) coefficients. Φ_r is monic with integer
/// coefficients, so integer input stays integral.
pub fn reduce_mod_cyclotomic<T>(r: u32, mut coeffs: Vec<T>) -> Vec<T>
where
    T: Clone + Zero + From<BigInt>,
    for<'a> &'a T: Sub<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    let phi = cyclotomic_polynomial(r);
    let n = phi.len() - 1;
    let phi: Vec<T> = phi[..n].iter().cloned().map(T::from).collect();
    for k in (n..coeffs.len()).rev() {
        let c = std::mem::replace(&mut coeffs[k], T::zero());
        if c.is_zero() {
            continue;
        }
        for (i, p) in phi.iter().enumerate() {
            let slot = &mut coeffs[k - n + i];
            *slot = &*slot - &(&c * p);
        }
    }
    coeffs.resize(n, T::zero());
    coeffs
}

/// Element of ℚ(ζ_r): a residue polynomial of degree < φ(r).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicElement {
    order: u32,
    coeffs: Vec<Rational>,
}

impl CyclotomicElement {
    /// Reduces an arbitrary polynomial in ζ_r into canonical form.
    pub fn from_coeffs(order: u32, coeffs: Vec<Rational>) -> Self {
        CyclotomicElement {
            order,
            coeffs: reduce_mod_cyclotomic(order, coeffs),
        }
    }

    pub fn from_rational(order: u32, value: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); euler_totient(order)];
        coeffs[0] = value;
        CyclotomicElement { order, coeffs }
    }

    pub fn zero(order: u32) -> Self {
        Self::from_rational(order, Rational::zero())
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, Rational::one())
    }

    /// ζ_r^e, with `e` taken modulo `r`.
    pub fn root_power(order: u32, e: i64) -> Self {
        let k = e.rem_euclid(order as i64) as usize;
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        Self::from_coeffs(order, coeffs)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Rational::is_zero)
    }

    fn same_field(&self, other: &Self) -> Result<(), ArithError> {
        if self.order != other.order {
            return Err(ArithError::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ArithError> {
        self.same_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CyclotomicElement {
            order: self.order,
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.same_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CyclotomicElement {
            order: self.order,
            coeffs,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.same_field(other)?;
        Ok(Self::from_coeffs(
            self.order,
            poly_mul(&self.coeffs, &other.coeffs),
        ))
    }

    pub fn neg(&self) -> Self {
        CyclotomicElement {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        CyclotomicElement {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm between the
    /// residue and Φ_r over ℚ.
    pub fn inverse(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::CyclotomicDivisionByZero);
        }
        let modulus: Vec<Rational> = cyclotomic_polynomial(self.order)
            .iter()
            .cloned()
            .map(Rational::from)
            .collect();

        // Invariant: s_i * self ≡ r_i (mod Φ_r).
        let mut r0 = modulus;
        let mut r1 = trimmed(self.coeffs.clone());
        let mut s0: Vec<Rational> = Vec::new();
        let mut s1 = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, rem) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // Φ_r is irreducible, so the gcd is a nonzero constant.
        debug_assert_eq!(r0.len(), 1);
        let scale = r0[0].recip()?;
        let coeffs = s0.iter().map(|c| c * &scale).collect();
        Ok(Self::from_coeffs(self.order, coeffs))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ArithError> {
        self.try_mul(&other.inverse()?)
    }

    /// The constant term, provided every higher coefficient vanishes.
    pub fn to_rational(&self) -> Result<Rational, ArithError> {
        if self.is_rational() {
            Ok(self.coeffs[0].clone())
        } else {
            Err(ArithError::NotRational)
        }
    }

    /// Embedding at ζ_r = exp(2πi/r) in double precision.
    pub fn to_complex(&self) -> Complex64 {
        let r = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| Complex64::from_polar(c.to_f64(), 2.0 * PI * k as f64 / r))
            .sum()
    }
}

impl fmt::Debug for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(z{})[", self.order)?;
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, "]")
    }
}

fn trimmed(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Rational::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
            out[i + j] += x * y;
        }
    }
    trimmed(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trimmed(out)
}

/// Quotient and remainder of trimmed polynomials; `divisor` must be nonzero.
fn poly_divrem(dividend: &[Rational], divisor: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let n = divisor.len() - 1;
    if dividend.len() <= n {
        return (Vec::new(), dividend.to_vec());
    }
    let lead_inv = divisor[n]
        .recip()
        .expect("trimmed divisor has nonzero lead");
    let mut rem = dividend.to_vec();
    let mut quot = vec![Rational::zero(); dividend.len() - n];
    for k in (n..dividend.len()).rev() {
        if rem[k].is_zero() {
            continue;
        }
        let c = &rem[k] * &lead_inv;
        for (i, d) in divisor.iter().enumerate() {
            rem[k - n + i] -= &c * d;
        }
        quot[k - n] = c;
    }
    rem.truncate(n);
    (trimmed(quot), trimmed(rem))
}
