//! Singularity types and their local invariants.
//!
//! Covers cyclic quotient singularities `1/r(b1,b2)` and the du Val types
//! A_k, D_k, E_6, E_7, E_8: the order of the local fundamental group, the
//! orbifold Riemann–Roch correction terms μ for K⁻¹ and K², and the Milnor
//! number implied by the per-point relation `12μ(K⁻¹) = (1 - 1/n) + ν`.

mod notation;

pub use notation::{
    format_singularity_list, parse_singularity, parse_singularity_list, ParseError,
};

use std::fmt;

use num_integer::Integer;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::Rational;
use crate::dedekind::{dedekind_sum, DedekindInput};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("invalid singularity type: {0}")]
    InvalidType(String),
    #[error("anticanonical correction term for {0} is not tabulated in source")]
    AnticanonicalNotTabulated(SingularityType),
    #[error("K^2 correction term for {0} is not given in source for non-canonical types")]
    CanonicalSquareNotGiven(SingularityType),
}

/// Shape of a singularity. Obtain values through the validating
/// constructors on [`SingularityType`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SingularityKind {
    A(u32),
    D(u32),
    E(u32),
    /// `1/r(b1,b2)` with `b1 <= b2`, both reduced into `1..r` and coprime to `r`.
    CyclicQuotient {
        r: u32,
        b1: u32,
        b2: u32,
    },
}

/// A validated singularity type.
///
/// The derived ordering is the catalog order: A_k by k, then D_k, E_k, then
/// cyclic quotients by `(r, b1, b2)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SingularityType(SingularityKind);

impl SingularityType {
    pub fn a(k: u32) -> Result<Self, CatalogError> {
        if k == 0 {
            return Err(CatalogError::InvalidType("A_k needs k >= 1".into()));
        }
        Ok(SingularityType(SingularityKind::A(k)))
    }

    pub fn d(k: u32) -> Result<Self, CatalogError> {
        if k < 4 {
            return Err(CatalogError::InvalidType(format!("D{k}: D_k needs k >= 4")));
        }
        Ok(SingularityType(SingularityKind::D(k)))
    }

    pub fn e(k: u32) -> Result<Self, CatalogError> {
        if !(6..=8).contains(&k) {
            return Err(CatalogError::InvalidType(format!(
                "E{k}: only E6, E7, E8 exist"
            )));
        }
        Ok(SingularityType(SingularityKind::E(k)))
    }

    /// `1/r(b1,b2)`; weights are reduced mod r and sorted, and must be
    /// coprime to `r` so the singularity is isolated.
    pub fn cyclic(r: u32, b1: i64, b2: i64) -> Result<Self, CatalogError> {
        if r < 2 {
            return Err(CatalogError::InvalidType(format!(
                "1/{r}({b1},{b2}): order must be at least 2"
            )));
        }
        let reduce = |b: i64| b.rem_euclid(r as i64) as u32;
        let (mut w1, mut w2) = (reduce(b1), reduce(b2));
        if w1.gcd(&r) != 1 || w2.gcd(&r) != 1 {
            return Err(CatalogError::InvalidType(format!(
                "1/{r}({b1},{b2}): weights must be coprime to {r}"
            )));
        }
        if w1 > w2 {
            std::mem::swap(&mut w1, &mut w2);
        }
        Ok(SingularityType(SingularityKind::CyclicQuotient {
            r,
            b1: w1,
            b2: w2,
        }))
    }

    pub fn kind(&self) -> SingularityKind {
        self.0
    }

    /// Du Val (ADE) type.
    pub fn is_canonical(&self) -> bool {
        !matches!(self.0, SingularityKind::CyclicQuotient { .. })
    }

    /// Order of the local fundamental group.
    pub fn group_order(&self) -> u32 {
        match self.0 {
            SingularityKind::A(k) => k + 1,
            SingularityKind::D(k) => 4 * (k - 2),
            SingularityKind::E(6) => 24,
            SingularityKind::E(7) => 48,
            SingularityKind::E(_) => 120,
            SingularityKind::CyclicQuotient { r, .. } => r,
        }
    }

    /// `1 - 1/n`, the defect between topological and orbifold Euler numbers.
    pub fn euler_defect(&self) -> Rational {
        Rational::one() - Rational::new(1, self.group_order())
    }

    /// μ(K⁻¹). A_k and D_4 use their closed forms; cyclic quotients use the
    /// Dedekind sum σ_{r+k} with k = -(b1 + b2).
    pub fn mu_anticanonical(&self) -> Result<Rational, CatalogError> {
        match self.0 {
            SingularityKind::A(k) => {
                let n = k + 1;
                Ok((Rational::from(n) - Rational::new(1, n)) / Rational::from(12))
            }
            SingularityKind::D(4) => Ok(Rational::new(39, 96)),
            SingularityKind::D(_) | SingularityKind::E(_) => {
                Err(CatalogError::AnticanonicalNotTabulated(*self))
            }
            SingularityKind::CyclicQuotient { r, b1, b2 } => {
                let index = r as i64 - (b1 as i64 + b2 as i64);
                let input = DedekindInput::new(r, &[b1 as i64, b2 as i64], index)
                    .expect("catalog cyclic type has r >= 2");
                Ok(dedekind_sum(&input))
            }
        }
    }

    /// μ(K²) for du Val types.
    pub fn mu_canonical_square(&self) -> Result<Rational, CatalogError> {
        let twelve_mu = match self.0 {
            SingularityKind::A(n) => Rational::from(n + 1) - Rational::new(1, n + 1),
            SingularityKind::D(n) => Rational::from(n + 1) - Rational::new(1, 4 * (n - 2)),
            SingularityKind::E(6) => Rational::from(7) - Rational::new(1, 24),
            SingularityKind::E(7) => Rational::from(8) - Rational::new(1, 48),
            SingularityKind::E(_) => Rational::from(9) - Rational::new(1, 120),
            SingularityKind::CyclicQuotient { .. } => {
                return Err(CatalogError::CanonicalSquareNotGiven(*self))
            }
        };
        Ok(twelve_mu / Rational::from(12))
    }

    /// ν = 12μ(K⁻¹) - (1 - 1/n).
    pub fn milnor_number(&self) -> Result<Rational, CatalogError> {
        let twelve_mu = self.mu_anticanonical()? * Rational::from(12);
        Ok(twelve_mu - self.euler_defect())
    }

    pub fn attributes(&self) -> Result<SingularityAttributes, CatalogError> {
        let mu_anticanonical = self.mu_anticanonical()?;
        let milnor = &mu_anticanonical * &Rational::from(12) - self.euler_defect();
        Ok(SingularityAttributes {
            group_order: self.group_order(),
            milnor,
            mu_anticanonical,
            mu_canonical_square: self.mu_canonical_square().ok(),
        })
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            SingularityKind::A(k) => write!(f, "A{k}"),
            SingularityKind::D(k) => write!(f, "D{k}"),
            SingularityKind::E(k) => write!(f, "E{k}"),
            SingularityKind::CyclicQuotient { r, b1, b2 } => write!(f, "1/{r}({b1},{b2})"),
        }
    }
}

impl fmt::Debug for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for SingularityType {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_singularity(s)
    }
}

impl Serialize for SingularityType {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Local invariants of one singularity type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularityAttributes {
    pub group_order: u32,
    pub milnor: Rational,
    pub mu_anticanonical: Rational,
    pub mu_canonical_square: Option<Rational>,
}
