//! Admissible singularity configurations of degenerating Kähler–Einstein
//! Del Pezzo surfaces.
//!
//! A limit of degree-d surfaces must satisfy `0 < 12Σμ_p(K⁻¹) < 12 − d`.
//! [`DegreeRules::enumerate`] lists every multiset of the degree's allowed
//! singularity types meeting that budget, annotates each with the
//! HRR–Milnor identities and bubble counts, and in
//! [`Mode::WithExclusions`] filters through the named [`rules`].

mod report;
pub mod rules;

pub use report::{ConstraintReport, RuleVerdict, Verdict};
pub use rules::{ExclusionRule, RuleInput, BUILTIN_RULES};

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::Rational;
use crate::catalog::{CatalogError, SingularityType};
use crate::invariants::{
    ale_min_quantum, assemble_hrr_milnor, bubble_count_bounds, energy_ledger, Bundle,
    OrbifoldConfig,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("degree must be 1, 2, 3 or 4 (got {0})")]
    InvalidDegree(u8),
    #[error("configuration has no degree")]
    MissingDegree,
    #[error("type not admissible for this analysis: {0}")]
    NotAdmissible(#[from] CatalogError),
    #[error("unknown exclusion rule {0:?}")]
    UnknownRule(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Mode {
    #[serde(rename = "inequality-only")]
    InequalityOnly,
    #[serde(rename = "with-exclusions")]
    WithExclusions,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::InequalityOnly => "inequality-only",
            Mode::WithExclusions => "with-exclusions",
        })
    }
}

/// Local data of one allowed type, computed once per search.
#[derive(Debug, Clone)]
struct TypeData {
    ty: SingularityType,
    twelve_mu: Rational,
    euler_defect: Rational,
    milnor: Rational,
}

impl TypeData {
    fn new(ty: SingularityType) -> Result<Self, CatalogError> {
        let attrs = ty.attributes()?;
        Ok(TypeData {
            ty,
            twelve_mu: attrs.mu_anticanonical * Rational::from(12),
            euler_defect: ty.euler_defect(),
            milnor: attrs.milnor,
        })
    }
}

/// Search space and constraints for one degree.
#[derive(Debug, Clone)]
pub struct DegreeRules {
    pub degree: u8,
    /// In catalog order.
    pub allowed_types: Vec<SingularityType>,
    /// Strict upper bound `12 − d` on 12Σμ.
    pub budget: Rational,
    pub exclusion_rules: Vec<ExclusionRule>,
}

impl DegreeRules {
    pub fn for_degree(degree: u8) -> Result<Self, EnumError> {
        let a = |k| SingularityType::a(k).expect("valid A_k");
        let cyclic = |r, b1, b2| SingularityType::cyclic(r, b1, b2).expect("valid cyclic type");
        let allowed_types = match degree {
            4 => vec![a(1)],
            3 => vec![a(1), a(2)],
            2 => vec![a(1), a(2), a(3), a(4), cyclic(4, 1, 1)],
            1 => {
                let mut types: Vec<_> = (1..=8).map(a).collect();
                types.push(SingularityType::d(4).expect("valid D4"));
                types.extend([cyclic(4, 1, 1), cyclic(8, 1, 3), cyclic(9, 1, 2)]);
                types
            }
            _ => return Err(EnumError::InvalidDegree(degree)),
        };
        Ok(DegreeRules {
            degree,
            allowed_types,
            budget: Rational::from(12 - degree as i64),
            exclusion_rules: BUILTIN_RULES.to_vec(),
        })
    }

    /// Drops the named rule from the with-exclusions filter.
    pub fn without_rule(mut self, name: &str) -> Result<Self, EnumError> {
        let before = self.exclusion_rules.len();
        self.exclusion_rules.retain(|r| r.name != name);
        if self.exclusion_rules.len() == before {
            return Err(EnumError::UnknownRule(name.to_string()));
        }
        Ok(self)
    }

    fn type_data(&self) -> Result<Vec<TypeData>, EnumError> {
        Ok(self
            .allowed_types
            .iter()
            .map(|&t| TypeData::new(t))
            .collect::<Result<_, _>>()?)
    }

    /// Full report for one configuration. Its degree must match these rules.
    pub fn check(
        &self,
        config: &OrbifoldConfig,
        mode: Mode,
    ) -> Result<ConstraintReport, EnumError> {
        let degree = config.degree.ok_or(EnumError::MissingDegree)?;
        if degree != self.degree {
            return Err(EnumError::InvalidDegree(degree));
        }
        let mut twelve_sum_mu = Rational::zero();
        let mut sum_defect = Rational::zero();
        let mut sum_milnor = Rational::zero();
        for &s in &config.singularities {
            let data = TypeData::new(s)?;
            twelve_sum_mu += data.twelve_mu;
            sum_defect += data.euler_defect;
            sum_milnor += data.milnor;
        }
        let mut report = self.assemble(
            mode,
            config.singularities.clone(),
            twelve_sum_mu,
            sum_defect,
            sum_milnor,
            config.picard_rank,
        );
        if config.euler_topological.is_some() {
            let ledger = energy_ledger(config, Bundle::Anticanonical)
                .expect("Euler number present and every μ already computed");
            report.ledger_closes = Some(ledger.closes_for_degree(self.degree));
            report.energy_ledger = Some(ledger);
        }
        Ok(report)
    }

    fn assemble(
        &self,
        mode: Mode,
        singularities: Vec<SingularityType>,
        twelve_sum_mu: Rational,
        sum_defect: Rational,
        sum_milnor: Rational,
        picard_rank: Option<u32>,
    ) -> ConstraintReport {
        let smooth = singularities.is_empty();
        let budget_satisfied = twelve_sum_mu.is_positive() && twelve_sum_mu < self.budget;
        let disallowed: Vec<SingularityType> = singularities
            .iter()
            .filter(|s| !self.allowed_types.contains(s))
            .copied()
            .collect();
        let hrr_milnor = assemble_hrr_milnor(
            self.degree,
            picard_rank,
            sum_defect,
            sum_milnor,
            twelve_sum_mu.clone(),
        );

        let rule_verdicts: Vec<RuleVerdict> = match mode {
            Mode::WithExclusions if !smooth => {
                let input = RuleInput {
                    degree: self.degree,
                    singularities: &singularities,
                    derived_picard_rank: &hrr_milnor.derived_picard_rank,
                };
                self.exclusion_rules
                    .iter()
                    .map(|rule| RuleVerdict {
                        rule: rule.name,
                        admits: (rule.admits)(&input),
                    })
                    .collect()
            }
            _ => Vec::new(),
        };

        let verdict = if smooth {
            Verdict::Smooth
        } else if !disallowed.is_empty() {
            Verdict::DisallowedType { types: disallowed }
        } else if !budget_satisfied {
            Verdict::BudgetViolated
        } else if rule_verdicts.iter().any(|v| !v.admits) {
            Verdict::Excluded {
                rules: rule_verdicts
                    .iter()
                    .filter(|v| !v.admits)
                    .map(|v| v.rule)
                    .collect(),
            }
        } else {
            Verdict::Admissible
        };

        let bubbles = bubble_count_bounds(&twelve_sum_mu, &ale_min_quantum());
        ConstraintReport {
            degree: self.degree,
            mode,
            singularities,
            budget: self.budget.clone(),
            budget_satisfied,
            twelve_sum_mu,
            hrr_milnor,
            bubble_note: bubbles.as_ref().err().map(ToString::to_string),
            bubble_bounds: bubbles.ok(),
            energy_ledger: None,
            ledger_closes: None,
            rule_verdicts,
            verdict,
        }
    }

    /// Every degenerate configuration with `0 < 12Σμ < 12 − d`, in
    /// catalog order with multiplicities descending. The search is split by
    /// the multiplicity of the first type and run in parallel; the merged
    /// output does not depend on scheduling.
    pub fn enumerate(&self, mode: Mode) -> Result<EnumerationResult, EnumError> {
        self.run(mode, true)
    }

    /// Same result as [`DegreeRules::enumerate`] on the calling thread only.
    pub fn enumerate_sequential(&self, mode: Mode) -> Result<EnumerationResult, EnumError> {
        self.run(mode, false)
    }

    fn run(&self, mode: Mode, parallel: bool) -> Result<EnumerationResult, EnumError> {
        let data = self.type_data()?;
        let vectors = if parallel {
            search_parallel(&data, &self.budget)
        } else {
            let mut out = Vec::new();
            let mut counts = vec![0u32; data.len()];
            search(
                &data,
                &self.budget,
                0,
                Rational::zero(),
                &mut counts,
                &mut out,
            );
            out
        };

        let build = |counts: &Vec<u32>| self.report_for_counts(&data, counts, mode);
        let reports: Vec<ConstraintReport> = if parallel {
            vectors.par_iter().map(build).collect()
        } else {
            vectors.iter().map(build).collect()
        };

        let searched = reports.len();
        let configurations: Vec<ConstraintReport> = reports
            .into_iter()
            .filter(|r| r.verdict == Verdict::Admissible)
            .collect();

        let mut max_multiplicity: BTreeMap<SingularityType, u32> =
            self.allowed_types.iter().map(|&t| (t, 0)).collect();
        for report in &configurations {
            for s in &report.singularities {
                let count = report.singularities.iter().filter(|t| *t == s).count() as u32;
                let slot = max_multiplicity.entry(*s).or_default();
                *slot = (*slot).max(count);
            }
        }

        Ok(EnumerationResult {
            degree: self.degree,
            mode,
            budget: self.budget.clone(),
            rules_applied: match mode {
                Mode::WithExclusions => self.exclusion_rules.iter().map(|r| r.name).collect(),
                Mode::InequalityOnly => Vec::new(),
            },
            smooth: self.assemble(
                mode,
                Vec::new(),
                Rational::zero(),
                Rational::zero(),
                Rational::zero(),
                None,
            ),
            rejected_by_rules: searched - configurations.len(),
            configurations,
            max_multiplicity,
        })
    }

    fn report_for_counts(&self, data: &[TypeData], counts: &[u32], mode: Mode) -> ConstraintReport {
        let mut sings = Vec::new();
        let mut twelve_sum_mu = Rational::zero();
        let mut sum_defect = Rational::zero();
        let mut sum_milnor = Rational::zero();
        for (d, &c) in data.iter().zip(counts).filter(|(_, &c)| c > 0) {
            let c_q = Rational::from(c);
            sings.extend(std::iter::repeat_n(d.ty, c as usize));
            twelve_sum_mu += &d.twelve_mu * &c_q;
            sum_defect += &d.euler_defect * &c_q;
            sum_milnor += &d.milnor * &c_q;
        }
        self.assemble(mode, sings, twelve_sum_mu, sum_defect, sum_milnor, None)
    }
}

/// Depth-first search over multiplicity vectors; pushes every non-empty
/// vector whose total stays strictly below `budget`.
fn search(
    data: &[TypeData],
    budget: &Rational,
    idx: usize,
    used: Rational,
    counts: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if idx == data.len() {
        if counts.iter().any(|&c| c > 0) {
            out.push(counts.clone());
        }
        return;
    }
    let step = &data[idx].twelve_mu;
    let mut cap = 0u32;
    let mut total = used.clone();
    let mut partials = vec![used];
    loop {
        total += step;
        if total >= *budget {
            break;
        }
        cap += 1;
        partials.push(total.clone());
    }
    for m in (0..=cap).rev() {
        counts[idx] = m;
        search(
            data,
            budget,
            idx + 1,
            partials[m as usize].clone(),
            counts,
            out,
        );
    }
    counts[idx] = 0;
}

fn search_parallel(data: &[TypeData], budget: &Rational) -> Vec<Vec<u32>> {
    if data.is_empty() {
        return Vec::new();
    }
    let step = &data[0].twelve_mu;
    let mut firsts = Vec::new();
    let mut total = Rational::zero();
    while total < *budget {
        firsts.push(total.clone());
        total += step;
    }
    let branches: Vec<Vec<Vec<u32>>> = firsts
        .into_par_iter()
        .enumerate()
        .rev()
        .map(|(m, used)| {
            let mut counts = vec![0u32; data.len()];
            counts[0] = m as u32;
            let mut out = Vec::new();
            search(data, budget, 1, used, &mut counts, &mut out);
            out
        })
        .collect();
    branches.into_iter().flatten().collect()
}

/// Whether A_k and A_l can coexist in a degree 1 limit on budget alone.
pub fn check_pair_rule(k: u32, l: u32) -> Result<bool, EnumError> {
    let a = SingularityType::a(k)?;
    let b = SingularityType::a(l)?;
    let twelve = (a.mu_anticanonical()? + b.mu_anticanonical()?) * Rational::from(12);
    Ok(twelve < Rational::from(11))
}

/// [`DegreeRules::check`] with the built-in rules for the configuration's degree.
pub fn check_config(config: &OrbifoldConfig, mode: Mode) -> Result<ConstraintReport, EnumError> {
    let degree = config.degree.ok_or(EnumError::MissingDegree)?;
    DegreeRules::for_degree(degree)?.check(config, mode)
}

/// [`DegreeRules::enumerate`] with the built-in rules.
pub fn enumerate(degree: u8, mode: Mode) -> Result<EnumerationResult, EnumError> {
    DegreeRules::for_degree(degree)?.enumerate(mode)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationResult {
    pub degree: u8,
    pub mode: Mode,
    pub budget: Rational,
    pub rules_applied: Vec<&'static str>,
    /// The non-degenerate case, reported apart from the configurations.
    pub smooth: ConstraintReport,
    /// Admissible configurations only.
    pub configurations: Vec<ConstraintReport>,
    /// Configurations within budget that an exclusion rule removed.
    pub rejected_by_rules: usize,
    /// Largest multiplicity of each allowed type across `configurations`.
    pub max_multiplicity: BTreeMap<SingularityType, u32>,
}

impl EnumerationResult {
    pub fn max_of(&self, ty: &SingularityType) -> u32 {
        self.max_multiplicity.get(ty).copied().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::parse_singularity_list;

    fn t(s: &str) -> SingularityType {
        s.parse().unwrap()
    }

    fn config(degree: u8, sings: &str) -> OrbifoldConfig {
        OrbifoldConfig::new(Some(degree), parse_singularity_list(sings).unwrap())
    }

    #[test]
    fn degree_rules_shape() {
        for d in 1..=4u8 {
            let rules = DegreeRules::for_degree(d).unwrap();
            assert_eq!(rules.budget, Rational::from(12 - d as i64));
            let mut sorted = rules.allowed_types.clone();
            sorted.sort();
            assert_eq!(sorted, rules.allowed_types);
        }
        assert_eq!(DegreeRules::for_degree(1).unwrap().allowed_types.len(), 12);
        assert_eq!(
            DegreeRules::for_degree(0).unwrap_err(),
            EnumError::InvalidDegree(0)
        );
        assert_eq!(
            DegreeRules::for_degree(5).unwrap_err(),
            EnumError::InvalidDegree(5)
        );
    }

    #[test]
    fn unknown_rule() {
        let rules = DegreeRules::for_degree(2).unwrap();
        assert!(matches!(
            rules.clone().without_rule("nope"),
            Err(EnumError::UnknownRule(_))
        ));
        let fewer = rules.without_rule("d2-canonical-no-a4").unwrap();
        assert_eq!(fewer.exclusion_rules.len(), BUILTIN_RULES.len() - 1);
    }

    #[test]
    fn degree_three_a1_bound() {
        let result = enumerate(3, Mode::InequalityOnly).unwrap();
        assert_eq!(result.max_of(&t("A1")), 5);
        assert!(result.configurations.iter().all(|r| r.budget_satisfied));
    }

    #[test]
    fn degree_two_a4_depends_on_mode() {
        let plain = enumerate(2, Mode::InequalityOnly).unwrap();
        let filtered = enumerate(2, Mode::WithExclusions).unwrap();
        assert_eq!(plain.max_of(&t("A4")), 2);
        assert_eq!(filtered.max_of(&t("A4")), 1);
        for result in [&plain, &filtered] {
            assert_eq!(result.max_of(&t("A1")), 6);
            assert_eq!(result.max_of(&t("A2")), 3);
            assert_eq!(result.max_of(&t("A3")), 2);
        }
        assert!(filtered.rejected_by_rules > 0);
        assert_eq!(plain.rejected_by_rules, 0);
    }

    #[test]
    fn pair_rule() {
        assert!(!check_pair_rule(5, 5).unwrap());
        assert!(check_pair_rule(4, 5).unwrap());
        assert!(check_pair_rule(1, 1).unwrap());
        for k in 1..=8 {
            for l in k..=8 {
                assert_eq!(check_pair_rule(k, l).unwrap(), k + l <= 9, "A{k} + A{l}");
            }
        }
        assert!(check_pair_rule(0, 1).is_err());
    }

    #[test]
    fn check_config_examples() {
        let ok = check_config(&config(1, "2x D4, 1/4(1,1)"), Mode::WithExclusions).unwrap();
        assert_eq!(ok.verdict, Verdict::Admissible);
        assert_eq!(ok.twelve_sum_mu, Rational::new(21, 2));

        let over = check_config(&config(1, "2x D4, A1"), Mode::InequalityOnly).unwrap();
        assert_eq!(over.verdict, Verdict::BudgetViolated);
        assert_eq!(over.twelve_sum_mu, Rational::new(45, 4));

        let smooth = check_config(&config(4, ""), Mode::InequalityOnly).unwrap();
        assert_eq!(smooth.verdict, Verdict::Smooth);
        assert_eq!(smooth.twelve_sum_mu, Rational::zero());
        assert_eq!(smooth.hrr_milnor.derived_picard_rank, Rational::from(6));

        let foreign = check_config(&config(3, "1/4(1,1)"), Mode::InequalityOnly).unwrap();
        assert!(matches!(foreign.verdict, Verdict::DisallowedType { .. }));

        assert!(matches!(
            check_config(&config(1, "E8"), Mode::InequalityOnly),
            Err(EnumError::NotAdmissible(_))
        ));
        assert_eq!(
            check_config(&OrbifoldConfig::new(None, vec![]), Mode::InequalityOnly),
            Err(EnumError::MissingDegree)
        );
    }

    #[test]
    fn check_config_with_euler_number() {
        let report = check_config(
            &config(2, "2x 1/4(1,1)").with_euler(10),
            Mode::WithExclusions,
        )
        .unwrap();
        assert_eq!(report.ledger_closes, Some(true));
        let ledger = report.energy_ledger.unwrap();
        assert_eq!(ledger.chi_orb, Rational::new(17, 2));
        assert_eq!(report.bubble_bounds.unwrap().max, 2);
        assert!(report.bubble_bounds.unwrap().exact_fit);
    }

    #[test]
    fn parallel_matches_sequential() {
        for d in 1..=4 {
            let rules = DegreeRules::for_degree(d).unwrap();
            for mode in [Mode::InequalityOnly, Mode::WithExclusions] {
                assert_eq!(
                    rules.enumerate(mode).unwrap(),
                    rules.enumerate_sequential(mode).unwrap()
                );
            }
        }
    }
}
