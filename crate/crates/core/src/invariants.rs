//! Euler-number and curvature-energy bookkeeping for orbifold surfaces.
//!
//! Curvature energies are carried in units of 8π², so every quantity here is
//! an exact rational and π never appears.

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::arith::Rational;
use crate::catalog::{format_singularity_list, CatalogError, SingularityType};

/// Smallest curvature energy of an ALE bubble in the quotient-of-hyper-Kähler
/// case, 6π², expressed in units of 8π².
pub fn ale_min_quantum() -> Rational {
    Rational::new(3, 4)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("topological Euler number of the orbifold is required")]
    MissingEulerNumber,
    #[error("degree of the Del Pezzo surface is required")]
    MissingDegree,
    #[error("energy quantum must be positive")]
    NonPositiveQuantum,
    #[error("energy {total} is below one quantum {quantum}")]
    EnergyBelowQuantum {
        total: Box<Rational>,
        quantum: Box<Rational>,
    },
}

/// Which line bundle's correction terms feed the energy identity: K⁻¹ when
/// the scalar curvature is positive, K² when it is negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bundle {
    Anticanonical,
    CanonicalSquare,
}

impl Bundle {
    pub fn mu(self, s: &SingularityType) -> Result<Rational, CatalogError> {
        match self {
            Bundle::Anticanonical => s.mu_anticanonical(),
            Bundle::CanonicalSquare => s.mu_canonical_square(),
        }
    }
}

/// A limit orbifold: optional Del Pezzo degree, its singularities, and
/// whatever topology is known.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrbifoldConfig {
    pub degree: Option<u8>,
    pub singularities: Vec<SingularityType>,
    pub euler_topological: Option<i64>,
    pub picard_rank: Option<u32>,
}

impl OrbifoldConfig {
    /// Singularities are sorted into catalog order.
    pub fn new(degree: Option<u8>, mut singularities: Vec<SingularityType>) -> Self {
        singularities.sort();
        OrbifoldConfig {
            degree,
            singularities,
            euler_topological: None,
            picard_rank: None,
        }
    }

    pub fn with_euler(mut self, chi: i64) -> Self {
        self.euler_topological = Some(chi);
        self
    }

    pub fn with_picard_rank(mut self, rho: u32) -> Self {
        self.picard_rank = Some(rho);
        self
    }

    pub fn notation(&self) -> String {
        format_singularity_list(&self.singularities)
    }
}

/// χ_orb = χ − Σ (1 − 1/n_p).
pub fn chi_orb_from_chi(chi: &Rational, sings: &[SingularityType]) -> Rational {
    sings
        .iter()
        .fold(chi.clone(), |acc, s| acc - s.euler_defect())
}

/// 12 Σ μ_p(bundle): the total bubble curvature energy in units of 8π².
pub fn bubble_energy_from_mu(
    sings: &[SingularityType],
    bundle: Bundle,
) -> Result<Rational, CatalogError> {
    let mut total = Rational::zero();
    for s in sings {
        total += bundle.mu(s)?;
    }
    Ok(total * Rational::from(12))
}

/// Both sides of the energy identity `lim χ(M_j) = χ_orb + 12Σμ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnergyLedger {
    pub total_bubble_energy_units: Rational,
    pub chi_orb: Rational,
    pub chi_limit: Rational,
}

impl EnergyLedger {
    /// Smooth Del Pezzo surfaces of degree d have χ = 12 − d.
    pub fn closes_for_degree(&self, degree: u8) -> bool {
        self.chi_limit == Rational::from(12 - degree as i64)
    }
}

pub fn energy_ledger(
    config: &OrbifoldConfig,
    bundle: Bundle,
) -> Result<EnergyLedger, InvariantError> {
    let chi = config
        .euler_topological
        .ok_or(InvariantError::MissingEulerNumber)?;
    let chi_orb = chi_orb_from_chi(&Rational::from(chi), &config.singularities);
    let energy = bubble_energy_from_mu(&config.singularities, bundle)?;
    Ok(EnergyLedger {
        chi_limit: &chi_orb + &energy,
        total_bubble_energy_units: energy,
        chi_orb,
    })
}

/// Euler number of the smooth surfaces converging to `config`.
pub fn chi_limit(config: &OrbifoldConfig, bundle: Bundle) -> Result<Rational, InvariantError> {
    Ok(energy_ledger(config, bundle)?.chi_limit)
}

/// Genus of a non-singular degree-`degree` curve in the weighted projective
/// plane ℙ(a0, a1, a2):
///
/// ```text
/// g = ½ (d²/(a0 a1 a2) − d Σ_{i<j} gcd(a_i,a_j)/(a_i a_j) + Σ_i gcd(a_i,d)/a_i − 1)
/// ```
///
/// Returned as a rational; it is integral only for curves that really are
/// non-singular, which this does not check.
pub fn genus_weighted_plane_curve(weights: [u64; 3], degree: u64) -> Rational {
    assert!(weights.iter().all(|&a| a > 0), "weights must be positive");
    let d = Rational::from(degree);
    let w: Vec<Rational> = weights.iter().map(|&a| Rational::from(a)).collect();

    let mut g = &(&d * &d) / &(&(&w[0] * &w[1]) * &w[2]);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let g_ij = Rational::from(weights[i].gcd(&weights[j]));
        g -= &d * &(g_ij / (&w[i] * &w[j]));
    }
    for (i, &a) in weights.iter().enumerate() {
        g += Rational::from(a.gcd(&degree)) / &w[i];
    }
    (g - Rational::one()) * Rational::new(1, 2)
}

/// χ of a double cover branched along a curve: 2χ(base) − χ(branch).
pub fn euler_double_cover(chi_base: i64, chi_branch: i64) -> i64 {
    2 * chi_base - chi_branch
}

/// Both identities linking Milnor numbers, correction terms and Picard rank
/// on a Del Pezzo limit of degree d:
///
/// ```text
/// Σ(1 − 1/n_p) + Σν_p = 12Σμ_p(K⁻¹)
/// ρ + 12Σμ_p(K⁻¹) − Σ(1 − 1/n_p) = 10 − d
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HrrMilnorReport {
    pub degree: u8,
    pub sum_euler_defect: Rational,
    pub sum_milnor: Rational,
    pub twelve_sum_mu: Rational,
    /// `Σ(1 − 1/n_p) + Σν_p`
    pub milnor_lhs: Rational,
    pub milnor_holds: bool,
    /// `10 − d − 12Σμ + Σ(1 − 1/n_p)`
    pub derived_picard_rank: Rational,
    pub derived_picard_is_positive_integer: bool,
    /// Present when the configuration states its Picard rank.
    pub picard_lhs: Option<Rational>,
    pub picard_rhs: Rational,
    pub picard_holds: Option<bool>,
}

pub fn hrr_milnor_check(config: &OrbifoldConfig) -> Result<HrrMilnorReport, InvariantError> {
    let degree = config.degree.ok_or(InvariantError::MissingDegree)?;
    let mut sum_euler_defect = Rational::zero();
    let mut sum_milnor = Rational::zero();
    let mut sum_mu = Rational::zero();
    for s in &config.singularities {
        let attrs = s.attributes()?;
        sum_euler_defect += s.euler_defect();
        sum_milnor += attrs.milnor;
        sum_mu += attrs.mu_anticanonical;
    }
    Ok(assemble_hrr_milnor(
        degree,
        config.picard_rank,
        sum_euler_defect,
        sum_milnor,
        sum_mu * Rational::from(12),
    ))
}

/// Builds the report from already-summed local data.
pub(crate) fn assemble_hrr_milnor(
    degree: u8,
    picard_rank: Option<u32>,
    sum_euler_defect: Rational,
    sum_milnor: Rational,
    twelve_sum_mu: Rational,
) -> HrrMilnorReport {
    let milnor_lhs = &sum_euler_defect + &sum_milnor;
    let picard_rhs = Rational::from(10 - degree as i64);
    let derived_picard_rank = &(&picard_rhs - &twelve_sum_mu) + &sum_euler_defect;
    let picard_lhs =
        picard_rank.map(|rho| &(&Rational::from(rho) + &twelve_sum_mu) - &sum_euler_defect);
    HrrMilnorReport {
        degree,
        milnor_holds: milnor_lhs == twelve_sum_mu,
        derived_picard_is_positive_integer: derived_picard_rank.is_integer()
            && derived_picard_rank.is_positive(),
        picard_holds: picard_lhs.as_ref().map(|lhs| *lhs == picard_rhs),
        sum_euler_defect,
        sum_milnor,
        twelve_sum_mu,
        milnor_lhs,
        derived_picard_rank,
        picard_lhs,
        picard_rhs,
    }
}

/// How many ALE bubbles of at least `quantum` energy fit in `total`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BubbleBounds {
    pub min: u64,
    pub max: u64,
    /// `total` is an exact multiple of the quantum, so `max` bubbles all of
    /// minimal energy fill it exactly.
    pub exact_fit: bool,
}

pub fn bubble_count_bounds(
    total: &Rational,
    quantum: &Rational,
) -> Result<BubbleBounds, InvariantError> {
    if !quantum.is_positive() {
        return Err(InvariantError::NonPositiveQuantum);
    }
    if total.is_zero() {
        return Ok(BubbleBounds {
            min: 0,
            max: 0,
            exact_fit: true,
        });
    }
    if total < quantum {
        return Err(InvariantError::EnergyBelowQuantum {
            total: Box::new(total.clone()),
            quantum: Box::new(quantum.clone()),
        });
    }
    let ratio = total / quantum;
    let max = ratio
        .floor()
        .to_u64()
        .unwrap_or_else(|| panic!("bubble count {ratio} does not fit in u64"));
    Ok(BubbleBounds {
        min: 1,
        max,
        exact_fit: ratio.is_integer(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::parse_singularity_list;

    fn sings(s: &str) -> Vec<SingularityType> {
        parse_singularity_list(s).unwrap()
    }

    #[test]
    fn orbifold_euler_numbers() {
        assert_eq!(
            chi_orb_from_chi(&Rational::from(10), &sings("2x 1/4(1,1)")),
            Rational::new(17, 2)
        );
        assert_eq!(
            chi_orb_from_chi(&Rational::from(3), &sings("A8, 2x 1/9(1,2)")),
            Rational::new(1, 3)
        );
        assert_eq!(chi_orb_from_chi(&Rational::from(7), &[]), Rational::from(7));
    }

    #[test]
    fn bubble_energy() {
        let e = bubble_energy_from_mu(&sings("2x 1/4(1,1)"), Bundle::Anticanonical).unwrap();
        assert_eq!(e, Rational::new(3, 2));
        let e = bubble_energy_from_mu(&sings("A8, 2x 1/9(1,2)"), Bundle::Anticanonical).unwrap();
        assert_eq!(e, Rational::new(32, 3));
        assert_eq!(
            bubble_energy_from_mu(&[], Bundle::Anticanonical).unwrap(),
            Rational::zero()
        );
        assert!(bubble_energy_from_mu(&sings("1/4(1,1)"), Bundle::CanonicalSquare).is_err());
        let e = bubble_energy_from_mu(&sings("E8"), Bundle::CanonicalSquare).unwrap();
        assert_eq!(e, Rational::new(1079, 120));
    }

    #[test]
    fn chi_limits() {
        let ex1 = OrbifoldConfig::new(Some(2), sings("2x 1/4(1,1)")).with_euler(10);
        assert_eq!(
            chi_limit(&ex1, Bundle::Anticanonical).unwrap(),
            Rational::from(10)
        );
        let ex2 = OrbifoldConfig::new(Some(1), sings("A8, 2x 1/9(1,2)")).with_euler(3);
        let ledger = energy_ledger(&ex2, Bundle::Anticanonical).unwrap();
        assert_eq!(ledger.chi_limit, Rational::from(11));
        assert!(ledger.closes_for_degree(1));
        let smooth = OrbifoldConfig::new(None, vec![]).with_euler(5);
        assert_eq!(
            chi_limit(&smooth, Bundle::Anticanonical).unwrap(),
            Rational::from(5)
        );
        assert_eq!(
            chi_limit(&OrbifoldConfig::new(None, vec![]), Bundle::Anticanonical),
            Err(InvariantError::MissingEulerNumber)
        );
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus_weighted_plane_curve([1, 1, 4], 8), Rational::from(3));
        assert_eq!(genus_weighted_plane_curve([1, 1, 1], 3), Rational::from(1));
        assert_eq!(genus_weighted_plane_curve([1, 1, 1], 4), Rational::from(3));
        for d in 1..=10i64 {
            let classical = Rational::from((d - 1) * (d - 2) / 2);
            assert_eq!(
                genus_weighted_plane_curve([1, 1, 1], d as u64),
                classical,
                "d = {d}"
            );
        }
    }

    #[test]
    fn double_cover() {
        assert_eq!(euler_double_cover(3, -4), 10);
        assert_eq!(euler_double_cover(6, 0), 12);
        let g = genus_weighted_plane_curve([1, 1, 4], 8)
            .to_integer()
            .unwrap();
        let chi_c = 2 - i64::try_from(g).unwrap() * 2;
        assert_eq!(euler_double_cover(3, chi_c), 10);
    }

    #[test]
    fn hrr_milnor_examples() {
        let ex2 = OrbifoldConfig::new(Some(1), sings("A8, 2x 1/9(1,2)"));
        let report = hrr_milnor_check(&ex2).unwrap();
        assert!(report.milnor_holds);
        assert_eq!(report.derived_picard_rank, Rational::one());
        assert!(report.derived_picard_is_positive_integer);
        assert_eq!(report.picard_holds, None);

        let with_rho = hrr_milnor_check(&ex2.clone().with_picard_rank(1)).unwrap();
        assert_eq!(with_rho.picard_holds, Some(true));
        let wrong_rho = hrr_milnor_check(&ex2.with_picard_rank(2)).unwrap();
        assert_eq!(wrong_rho.picard_holds, Some(false));

        for d in 1..=4u8 {
            let smooth = hrr_milnor_check(&OrbifoldConfig::new(Some(d), vec![])).unwrap();
            assert_eq!(smooth.derived_picard_rank, Rational::from(10 - d as i64));
        }

        for k in 1..=8 {
            let r =
                hrr_milnor_check(&OrbifoldConfig::new(Some(1), sings(&format!("A{k}")))).unwrap();
            assert!(r.milnor_holds);
            let n = Rational::from(k + 1);
            assert_eq!(r.milnor_lhs, &n - &Rational::one() / &n);
        }

        assert_eq!(
            hrr_milnor_check(&OrbifoldConfig::new(None, vec![])),
            Err(InvariantError::MissingDegree)
        );
    }

    #[test]
    fn bubble_counts() {
        let b = bubble_count_bounds(&Rational::new(3, 2), &ale_min_quantum()).unwrap();
        assert_eq!(
            b,
            BubbleBounds {
                min: 1,
                max: 2,
                exact_fit: true
            }
        );
        let b = bubble_count_bounds(&Rational::zero(), &ale_min_quantum()).unwrap();
        assert_eq!((b.min, b.max), (0, 0));
        let b = bubble_count_bounds(&Rational::new(32, 3), &ale_min_quantum()).unwrap();
        assert_eq!(
            b,
            BubbleBounds {
                min: 1,
                max: 14,
                exact_fit: false
            }
        );
        assert!(matches!(
            bubble_count_bounds(&Rational::new(1, 2), &ale_min_quantum()),
            Err(InvariantError::EnergyBelowQuantum { .. })
        ));
        assert_eq!(
            bubble_count_bounds(&Rational::one(), &Rational::zero()),
            Err(InvariantError::NonPositiveQuantum)
        );
    }
}
