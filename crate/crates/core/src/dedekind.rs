//! Dedekind sums of cyclic quotient singularities.
//!
//! For `1/r(b_1, ..., b_m)` and an index `i`,
//!
//! ```text
//! σ_i = (1/r) Σ_ε ε^i / ((1 - ε^{b_1}) ··· (1 - ε^{b_m}))
//! ```
//!
//! where ε runs over the r-th roots of unity with ε^{b_t} ≠ 1 for every t.
//! The exact value is assembled in ℚ(ζ_r) and must come out rational.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Pow, Zero};
use thiserror::Error;

use crate::arith::{reduce_mod_cyclotomic, Rational};

/// Largest order accepted by [`dedekind_sum_float_oracle`].
pub const FLOAT_ORACLE_MAX_ORDER: u32 = 10_000;

/// Bound on the imaginary residue of the float oracle.
pub const FLOAT_ORACLE_IMAG_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DedekindError {
    #[error("order r must be at least 1")]
    ZeroOrder,
    #[error("at least one weight is required")]
    NoWeights,
    #[error("order {0} exceeds the float oracle limit of {FLOAT_ORACLE_MAX_ORDER}")]
    OracleOrderTooLarge(u32),
    #[error("float oracle left an imaginary residue of {0:e}")]
    ImaginaryResidue(f64),
}

/// `σ_index(1/r(weights))` with weights and index reduced into `0..r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DedekindInput {
    r: u32,
    weights: Vec<u32>,
    index: u32,
}

impl DedekindInput {
    pub fn new(r: u32, weights: &[i64], index: i64) -> Result<Self, DedekindError> {
        if r == 0 {
            return Err(DedekindError::ZeroOrder);
        }
        if weights.is_empty() {
            return Err(DedekindError::NoWeights);
        }
        let reduce = |v: i64| v.rem_euclid(r as i64) as u32;
        Ok(DedekindInput {
            r,
            weights: weights.iter().map(|&b| reduce(b)).collect(),
            index: reduce(index),
        })
    }

    pub fn order(&self) -> u32 {
        self.r
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    /// Exponents j in 1..r whose root ζ^j keeps every denominator nonzero.
    fn admissible_exponents(&self) -> impl Iterator<Item = u64> + '_ {
        let r = self.r as u64;
        (1..r).filter(move |j| {
            self.weights
                .iter()
                .all(|&b| !(j * b as u64).is_multiple_of(r))
        })
    }
}

impl std::fmt::Display for DedekindInput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let weights: Vec<String> = self.weights.iter().map(u32::to_string).collect();
        write!(
            f,
            "sigma_{}(1/{}({}))",
            self.index,
            self.r,
            weights.join(",")
        )
    }
}

/// Exact Dedekind sum.
///
/// Each denominator `1 - ζ^a`, with ζ^a a primitive s-th root of unity,
/// is inverted through `1/(1 - x) = -(1/s) Σ_{k<s} k x^k`; every term is
/// then a sparse integer vector in ℤ[x]/(x^r - 1) over the common
/// denominator r^{m+1}. The accumulated integer vector is reduced modulo
/// Φ_r, which is a ring map onto ℤ[ζ_r], and must leave a constant.
///
/// Panics if the reduced sum is not rational; that can only be a bug.
pub fn dedekind_sum(input: &DedekindInput) -> Rational {
    let r = input.r as u64;
    let m = input.weights.len() as u32;
    // Per-term magnitude is at most (r^2/2)^m, summed over fewer than r terms.
    let bits = (r as f64).log2();
    let lifted: Vec<BigInt> = if bits + m as f64 * (2.0 * bits - 1.0) < 120.0 {
        lifted_sum::<i128>(input)
            .into_iter()
            .map(BigInt::from)
            .collect()
    } else {
        lifted_sum::<BigInt>(input)
    };
    if lifted.iter().all(Zero::is_zero) {
        return Rational::zero();
    }

    let reduced = reduce_mod_cyclotomic(input.r, lifted);
    assert!(
        reduced[1..].iter().all(Zero::is_zero),
        "{input} reduced to an irrational element"
    );
    Rational::new(reduced[0].clone(), BigInt::from(r).pow(m + 1))
}

/// r^{m+1} times the sum, as a vector indexed by exponents of ζ modulo r.
fn lifted_sum<T>(input: &DedekindInput) -> Vec<T>
where
    T: Clone + Zero + From<i64> + std::ops::AddAssign + std::ops::SubAssign,
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    let r = input.r as u64;
    let len = r as usize;
    let mut acc = vec![T::zero(); len];
    for j in input.admissible_exponents() {
        let mut term = vec![T::zero(); len];
        term[((input.index as u64 * j) % r) as usize] = T::from(1);
        for &b in &input.weights {
            let a = (j * b as u64) % r;
            term = mul_by_ramp(&term, a as usize, (r / a.gcd(&r)) as usize);
        }
        for (slot, c) in acc.iter_mut().zip(term) {
            *slot += c;
        }
    }
    acc
}

/// `term · (-(r/s) Σ_{k<s} k x^{ak})` in ℤ[x]/(x^r - 1), where x^a has order s.
///
/// Along each orbit `p, p + a, p + 2a, …` of length s the product
/// `Q_i = Σ_k k c_{i-k}` obeys `Q_{i+1} = Q_i + S - s c_{i+1}` with S the
/// orbit sum, so the whole product costs O(r).
fn mul_by_ramp<T>(term: &[T], a: usize, s: usize) -> Vec<T>
where
    T: Clone + Zero + From<i64> + std::ops::AddAssign + std::ops::SubAssign,
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    let len = term.len();
    let orbits = len / s;
    let scale = T::from(-(orbits as i64));
    let s_t = T::from(s as i64);
    let mut out = vec![T::zero(); len];
    for p in 0..orbits {
        let pos = |i: usize| (p + a * (i % s)) % len;
        let mut sum = T::zero();
        let mut q = T::zero();
        for k in 0..s {
            let c = &term[pos(s - k)];
            sum += c.clone();
            q += &T::from(k as i64) * c;
        }
        for i in 0..s {
            out[pos(i)] = &scale * &q;
            q += sum.clone();
            q -= &s_t * &term[pos(i + 1)];
        }
    }
    out
}

/// The same sum in double-precision complex arithmetic at ζ = exp(2πi/r).
/// Independent of the exact path; used only for cross-checking.
pub fn dedekind_sum_float_oracle(input: &DedekindInput) -> Result<f64, DedekindError> {
    if input.r > FLOAT_ORACLE_MAX_ORDER {
        return Err(DedekindError::OracleOrderTooLarge(input.r));
    }
    let r = input.r as u64;
    let root = |e: u64| Complex64::from_polar(1.0, 2.0 * PI * (e % r) as f64 / r as f64);
    let total: Complex64 = input
        .admissible_exponents()
        .map(|j| {
            let denom: Complex64 = input
                .weights
                .iter()
                .map(|&b| Complex64::new(1.0, 0.0) - root(j * b as u64))
                .product();
            root(input.index as u64 * j) / denom
        })
        .sum::<Complex64>()
        / r as f64;
    if total.im.abs() >= FLOAT_ORACLE_IMAG_TOLERANCE {
        return Err(DedekindError::ImaginaryResidue(total.im));
    }
    Ok(total.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma(r: u32, weights: &[i64], index: i64) -> Rational {
        dedekind_sum(&DedekindInput::new(r, weights, index).unwrap())
    }

    #[test]
    fn tabulated_values() {
        assert_eq!(sigma(4, &[1, 1], 2), Rational::new(1, 16));
        assert_eq!(sigma(4, &[1, 1], 0), Rational::new(1, 16));
        assert_eq!(sigma(8, &[1, 3], 4), Rational::new(5, 32));
        assert_eq!(sigma(8, &[1, 3], 0), Rational::new(5, 32));
        assert_eq!(sigma(9, &[1, 2], 6), Rational::new(2, 27));
        assert_eq!(sigma(9, &[1, 2], 0), Rational::new(2, 27));
    }

    #[test]
    fn single_term_at_order_two() {
        // ε = -1 only: (1/2) / (1 - (-1))^2.
        assert_eq!(sigma(2, &[1, 1], 0), Rational::new(1, 8));
    }

    #[test]
    fn empty_sums() {
        assert_eq!(sigma(1, &[1], 0), Rational::zero());
        assert_eq!(sigma(1, &[1], 5), Rational::zero());
        assert_eq!(sigma(7, &[3, 0], 2), Rational::zero());
        assert_eq!(sigma(7, &[7, 1], 2), Rational::zero());
    }

    #[test]
    fn negative_inputs_reduce() {
        let input = DedekindInput::new(9, &[-8, 2], -3).unwrap();
        assert_eq!(input.weights(), &[1, 2]);
        assert_eq!(input.index(), 6);
        assert_eq!(dedekind_sum(&input), Rational::new(2, 27));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            DedekindInput::new(0, &[1], 0),
            Err(DedekindError::ZeroOrder)
        );
        assert_eq!(DedekindInput::new(5, &[], 0), Err(DedekindError::NoWeights));
    }

    #[test]
    fn a_series_closed_form() {
        // 12 σ_0(1/(k+1)(1,k)) = (k+1) - 1/(k+1).
        for k in 1..=8i64 {
            let n = k + 1;
            let twelve = sigma(n as u32, &[1, k], 0) * Rational::from(12);
            assert_eq!(twelve, Rational::from(n) - Rational::new(1, n), "A_{k}");
        }
    }

    #[test]
    fn big_integer_path_matches() {
        // Enough weights to leave the i128 fast path.
        let weights: Vec<i64> = (0..25).map(|t| t % 10 + 1).collect();
        let input = DedekindInput::new(11, &weights, 3).unwrap();
        let exact = dedekind_sum(&input);
        let approx = dedekind_sum_float_oracle(&input).unwrap();
        assert!((exact.to_f64() - approx).abs() < 1e-6 * approx.abs().max(1.0));
    }

    #[test]
    fn float_oracle_values() {
        let v = dedekind_sum_float_oracle(&DedekindInput::new(4, &[1, 1], 2).unwrap()).unwrap();
        assert!((v - 0.0625).abs() < 1e-9);
        let v = dedekind_sum_float_oracle(&DedekindInput::new(9, &[1, 2], 0).unwrap()).unwrap();
        assert!((v - 2.0 / 27.0).abs() < 1e-9);
        let v = dedekind_sum_float_oracle(&DedekindInput::new(1, &[1], 0).unwrap()).unwrap();
        assert_eq!(v, 0.0);
        assert_eq!(
            dedekind_sum_float_oracle(&DedekindInput::new(10_001, &[1, 1], 0).unwrap()),
            Err(DedekindError::OracleOrderTooLarge(10_001))
        );
    }
}
