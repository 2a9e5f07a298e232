//! Per-configuration verdicts and their text / JSON renderings.
//!
//! Rationals are always written exactly: `p/q` in text, `{"num","den"}` in JSON.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::{EnumerationResult, Mode};
use crate::arith::Rational;
use crate::catalog::{format_singularity_list, SingularityType};
use crate::invariants::{BubbleBounds, EnergyLedger, HrrMilnorReport};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleVerdict {
    pub rule: &'static str,
    pub admits: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// No singularities: the sequence does not degenerate.
    Smooth,
    Admissible,
    /// 12Σμ is not strictly between 0 and 12 − d.
    BudgetViolated,
    /// A type outside the degree's allowed list.
    DisallowedType {
        types: Vec<SingularityType>,
    },
    /// Within budget but rejected by exclusion rules.
    Excluded {
        rules: Vec<&'static str>,
    },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Smooth => "smooth",
            Verdict::Admissible => "admissible",
            Verdict::BudgetViolated => "budget-violated",
            Verdict::DisallowedType { .. } => "disallowed-type",
            Verdict::Excluded { .. } => "excluded",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::DisallowedType { types } => {
                write!(f, "{} ({})", self.label(), format_singularity_list(types))
            }
            Verdict::Excluded { rules } => write!(f, "{} by {}", self.label(), rules.join(", ")),
            _ => f.write_str(self.label()),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.label())
    }
}

/// Everything known about one configuration: budget, HRR–Milnor identities,
/// bubble counts, exclusion rules and the overall verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintReport {
    pub degree: u8,
    pub mode: Mode,
    pub singularities: Vec<SingularityType>,
    pub budget: Rational,
    pub budget_satisfied: bool,
    pub twelve_sum_mu: Rational,
    pub hrr_milnor: HrrMilnorReport,
    pub bubble_bounds: Option<BubbleBounds>,
    /// Why `bubble_bounds` is absent.
    pub bubble_note: Option<String>,
    /// Present when the configuration states its topological Euler number.
    pub energy_ledger: Option<EnergyLedger>,
    pub ledger_closes: Option<bool>,
    /// Empty in inequality-only mode.
    pub rule_verdicts: Vec<RuleVerdict>,
    pub verdict: Verdict,
}

struct RuleMap<'a>(&'a [RuleVerdict]);

impl Serialize for RuleMap<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for v in self.0 {
            map.serialize_entry(v.rule, &v.admits)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct Verdicts<'a> {
    budget: bool,
    milnor_identity: bool,
    picard_rank_positive_integer: bool,
    picard_identity: Option<bool>,
    rules: RuleMap<'a>,
    overall: &'a Verdict,
}

/// The compact per-configuration record used in enumeration output.
#[derive(Serialize)]
struct Record<'a> {
    singularities: &'a [SingularityType],
    twelve_sum_mu: &'a Rational,
    chi_orb_if_chi_known: Option<&'a Rational>,
    derived_picard_rank: &'a Rational,
    bubble_bounds: Option<&'a BubbleBounds>,
    verdicts: Verdicts<'a>,
}

impl ConstraintReport {
    fn record(&self) -> Record<'_> {
        Record {
            singularities: &self.singularities,
            twelve_sum_mu: &self.twelve_sum_mu,
            chi_orb_if_chi_known: self.energy_ledger.as_ref().map(|l| &l.chi_orb),
            derived_picard_rank: &self.hrr_milnor.derived_picard_rank,
            bubble_bounds: self.bubble_bounds.as_ref(),
            verdicts: Verdicts {
                budget: self.budget_satisfied,
                milnor_identity: self.hrr_milnor.milnor_holds,
                picard_rank_positive_integer: self.hrr_milnor.derived_picard_is_positive_integer,
                picard_identity: self.hrr_milnor.picard_holds,
                rules: RuleMap(&self.rule_verdicts),
                overall: &self.verdict,
            },
        }
    }

    pub fn notation(&self) -> String {
        format_singularity_list(&self.singularities)
    }

    /// One summary line, used in enumeration listings.
    pub fn summary_line(&self) -> String {
        let bubbles = match &self.bubble_bounds {
            Some(b) if b.exact_fit => format!("{}..{} (exact fit)", b.min, b.max),
            Some(b) => format!("{}..{}", b.min, b.max),
            None => "n/a".to_string(),
        };
        format!(
            "{:<32} 12*sum(mu)={:<8} rho={:<4} bubbles={:<18} {}",
            self.notation(),
            self.twelve_sum_mu.to_string(),
            self.hrr_milnor.derived_picard_rank.to_string(),
            bubbles,
            self.verdict
        )
    }
}

/// The full report, a superset of the enumeration record.
impl Serialize for ConstraintReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Full<'a> {
            degree: u8,
            mode: Mode,
            budget: &'a Rational,
            #[serde(flatten)]
            record: Record<'a>,
            hrr_milnor: &'a HrrMilnorReport,
            bubble_note: &'a Option<String>,
            energy_ledger: &'a Option<EnergyLedger>,
            ledger_closes: Option<bool>,
            disallowed_types: Vec<SingularityType>,
            excluded_by: Vec<&'static str>,
        }
        Full {
            degree: self.degree,
            mode: self.mode,
            budget: &self.budget,
            record: self.record(),
            hrr_milnor: &self.hrr_milnor,
            bubble_note: &self.bubble_note,
            energy_ledger: &self.energy_ledger,
            ledger_closes: self.ledger_closes,
            disallowed_types: match &self.verdict {
                Verdict::DisallowedType { types } => types.clone(),
                _ => Vec::new(),
            },
            excluded_by: match &self.verdict {
                Verdict::Excluded { rules } => rules.clone(),
                _ => Vec::new(),
            },
        }
        .serialize(serializer)
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl fmt::Display for ConstraintReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = &self.hrr_milnor;
        let notation = self.notation();
        writeln!(
            f,
            "configuration: {}",
            if notation.is_empty() {
                "(smooth)"
            } else {
                &notation
            }
        )?;
        writeln!(f, "degree: {}", self.degree)?;
        writeln!(f, "mode: {}", self.mode)?;
        writeln!(
            f,
            "budget: 0 < 12*sum(mu) = {} < {}: {}",
            self.twelve_sum_mu,
            self.budget,
            yes_no(self.budget_satisfied)
        )?;
        writeln!(f, "sum(1 - 1/n): {}", h.sum_euler_defect)?;
        writeln!(f, "sum(milnor): {}", h.sum_milnor)?;
        writeln!(
            f,
            "milnor identity: {} = {}: {}",
            h.milnor_lhs,
            h.twelve_sum_mu,
            yes_no(h.milnor_holds)
        )?;
        writeln!(
            f,
            "derived picard rank: {} (positive integer: {})",
            h.derived_picard_rank,
            yes_no(h.derived_picard_is_positive_integer)
        )?;
        if let (Some(lhs), Some(holds)) = (&h.picard_lhs, h.picard_holds) {
            writeln!(
                f,
                "picard identity: {} = {}: {}",
                lhs,
                h.picard_rhs,
                yes_no(holds)
            )?;
        }
        match (&self.bubble_bounds, &self.bubble_note) {
            (Some(b), _) => writeln!(
                f,
                "bubbles: min {} max {} exact fit: {}",
                b.min,
                b.max,
                yes_no(b.exact_fit)
            )?,
            (None, Some(note)) => writeln!(f, "bubbles: {note}")?,
            (None, None) => {}
        }
        if let Some(ledger) = &self.energy_ledger {
            writeln!(f, "chi_orb: {}", ledger.chi_orb)?;
            writeln!(f, "chi limit: {}", ledger.chi_limit)?;
        }
        if let Some(closes) = self.ledger_closes {
            writeln!(f, "chi limit = 12 - d: {}", yes_no(closes))?;
        }
        for v in &self.rule_verdicts {
            writeln!(
                f,
                "rule {}: {}",
                v.rule,
                if v.admits { "admits" } else { "rejects" }
            )?;
        }
        write!(f, "verdict: {}", self.verdict)
    }
}

struct MultiplicityTable<'a>(&'a BTreeMap<SingularityType, u32>);

impl Serialize for MultiplicityTable<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (ty, count) in self.0 {
            map.serialize_entry(&ty.to_string(), count)?;
        }
        map.end()
    }
}

impl Serialize for EnumerationResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            degree: u8,
            mode: Mode,
            budget: &'a Rational,
            rules_applied: &'a [&'static str],
            smooth: Record<'a>,
            configurations: Vec<Record<'a>>,
            rejected_by_rules: usize,
            max_multiplicity: MultiplicityTable<'a>,
        }
        Out {
            degree: self.degree,
            mode: self.mode,
            budget: &self.budget,
            rules_applied: &self.rules_applied,
            smooth: self.smooth.record(),
            configurations: self
                .configurations
                .iter()
                .map(ConstraintReport::record)
                .collect(),
            rejected_by_rules: self.rejected_by_rules,
            max_multiplicity: MultiplicityTable(&self.max_multiplicity),
        }
        .serialize(serializer)
    }
}

impl fmt::Display for EnumerationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree: {}", self.degree)?;
        writeln!(f, "mode: {}", self.mode)?;
        writeln!(f, "budget: 0 < 12*sum(mu) < {}", self.budget)?;
        if !self.rules_applied.is_empty() {
            writeln!(f, "rules: {}", self.rules_applied.join(", "))?;
        }
        writeln!(
            f,
            "smooth case: 12*sum(mu) = 0, picard rank {}",
            self.smooth.hrr_milnor.derived_picard_rank
        )?;
        writeln!(f, "configurations: {}", self.configurations.len())?;
        if self.rejected_by_rules > 0 {
            writeln!(f, "rejected by rules: {}", self.rejected_by_rules)?;
        }
        for report in &self.configurations {
            writeln!(f, "  {}", report.summary_line().trim_end())?;
        }
        writeln!(f, "max multiplicity:")?;
        for (ty, count) in &self.max_multiplicity {
            writeln!(f, "  {ty}: {count}")?;
        }
        Ok(())
    }
}
