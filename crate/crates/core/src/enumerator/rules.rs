//! Named exclusion rules layered on top of the budget inequality.
//!
//! The budget `0 < 12Σμ < 12 − d` alone is what the energy identity proves.
//! The rules below encode classification facts about Kähler–Einstein Del
//! Pezzo limits that come from outside that identity, so each is kept as
//! separate, individually removable data.

use crate::catalog::{SingularityKind, SingularityType};

/// Context handed to every rule.
pub struct RuleInput<'a> {
    pub degree: u8,
    /// Sorted into catalog order, non-empty.
    pub singularities: &'a [SingularityType],
    /// `10 − d − 12Σμ + Σ(1 − 1/n_p)`, an integer for every cataloged type.
    pub derived_picard_rank: &'a crate::arith::Rational,
}

#[derive(Clone, Copy)]
pub struct ExclusionRule {
    pub name: &'static str,
    pub description: &'static str,
    /// Returns true when the configuration is compatible with the rule.
    pub admits: fn(&RuleInput<'_>) -> bool,
}

impl std::fmt::Debug for ExclusionRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ExclusionRule")
            .field("name", &self.name)
            .finish()
    }
}

fn all_canonical(sings: &[SingularityType]) -> bool {
    sings.iter().all(SingularityType::is_canonical)
}

fn is_a(s: &SingularityType, pred: impl Fn(u32) -> bool) -> bool {
    matches!(s.kind(), SingularityKind::A(k) if pred(k))
}

fn exactly(sings: &[SingularityType], count: usize, kind: SingularityKind) -> bool {
    sings.len() == count && sings.iter().all(|s| s.kind() == kind)
}

fn d2_canonical_no_a4(input: &RuleInput<'_>) -> bool {
    input.degree != 2
        || !all_canonical(input.singularities)
        || !input.singularities.iter().any(|s| is_a(s, |k| k == 4))
}

fn d2_canonical_classification(input: &RuleInput<'_>) -> bool {
    let sings = input.singularities;
    input.degree != 2
        || !all_canonical(sings)
        || sings.iter().all(|s| is_a(s, |k| k <= 2))
        || exactly(sings, 2, SingularityKind::A(3))
}

fn d1_canonical_classification(input: &RuleInput<'_>) -> bool {
    let sings = input.singularities;
    input.degree != 1
        || !all_canonical(sings)
        || sings.iter().all(|s| is_a(s, |k| k <= 7))
        || exactly(sings, 2, SingularityKind::D(4))
}

fn d3_classification(input: &RuleInput<'_>) -> bool {
    let sings = input.singularities;
    input.degree != 3
        || sings.iter().all(|s| is_a(s, |k| k == 1))
        || exactly(sings, 3, SingularityKind::A(2))
}

fn d4_classification(input: &RuleInput<'_>) -> bool {
    let sings = input.singularities;
    input.degree != 4
        || exactly(sings, 2, SingularityKind::A(1))
        || exactly(sings, 4, SingularityKind::A(1))
}

fn picard_rank_positive(input: &RuleInput<'_>) -> bool {
    input.derived_picard_rank.is_integer() && input.derived_picard_rank.is_positive()
}

/// Every built-in rule, in evaluation order.
pub const BUILTIN_RULES: &[ExclusionRule] = &[
    ExclusionRule {
        name: "d2-canonical-no-a4",
        description: "degree 2 limits with only canonical singularities have no A4 point",
        admits: d2_canonical_no_a4,
    },
    ExclusionRule {
        name: "d2-canonical-classification",
        description: "degree 2 limits with only canonical singularities carry only A1/A2 points or exactly two A3",
        admits: d2_canonical_classification,
    },
    ExclusionRule {
        name: "d1-canonical-classification",
        description: "degree 1 limits with only canonical singularities carry only A_k (k <= 7) or exactly two D4",
        admits: d1_canonical_classification,
    },
    ExclusionRule {
        name: "d3-classification",
        description: "degree 3 limits carry only A1 points or exactly three A2",
        admits: d3_classification,
    },
    ExclusionRule {
        name: "d4-classification",
        description: "degree 4 limits carry exactly two or four A1 points",
        admits: d4_classification,
    },
    ExclusionRule {
        name: "picard-rank-positive",
        description: "the Picard rank forced by the HRR-Milnor identity is a positive integer",
        admits: picard_rank_positive,
    },
];
