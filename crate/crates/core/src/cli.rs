//! Command-line front end.
//!
//! Exit status: 0 on success (including configurations that fail their
//! constraints, which is reported in the output), 1 on a domain error,
//! 2 on a usage error.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::arith::Rational;
use crate::catalog::{
    format_singularity_list, parse_singularity, parse_singularity_list, SingularityType,
};
use crate::dedekind::{dedekind_sum, dedekind_sum_float_oracle, DedekindInput};
use crate::enumerator::{DegreeRules, Mode};
use crate::invariants::{
    ale_min_quantum, bubble_count_bounds, chi_orb_from_chi, euler_double_cover,
    genus_weighted_plane_curve, Bundle, OrbifoldConfig,
};
use crate::known_values::known_value_checks;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }
}

fn domain(e: impl ToString) -> CliError {
    CliError::Domain(e.to_string())
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    InequalityOnly,
    WithExclusions,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::InequalityOnly => Mode::InequalityOnly,
            ModeArg::WithExclusions => Mode::WithExclusions,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BundleArg {
    Anticanonical,
    CanonicalSquare,
}

impl From<BundleArg> for Bundle {
    fn from(b: BundleArg) -> Self {
        match b {
            BundleArg::Anticanonical => Bundle::Anticanonical,
            BundleArg::CanonicalSquare => Bundle::CanonicalSquare,
        }
    }
}

/// Exact invariants of quotient surface singularities.
#[derive(Debug, Parser)]
#[command(name = "orbiquant", version)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dedekind sum sigma_index(1/r(weights)).
    Dedekind {
        #[arg(long)]
        r: u32,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        weights: Vec<i64>,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        index: i64,
        /// Also evaluate in floating point and print both side by side.
        #[arg(long)]
        oracle: bool,
    },
    /// Correction term mu, Milnor number and group order of one singularity.
    Mu {
        #[arg(long)]
        sing: String,
        #[arg(long, value_enum, default_value_t = BundleArg::Anticanonical)]
        bundle: BundleArg,
    },
    /// Orbifold Euler number chi - sum(1 - 1/n_p).
    ChiOrb {
        #[arg(long, allow_hyphen_values = true)]
        chi: Rational,
        #[arg(long, default_value = "")]
        sings: String,
    },
    /// Genus of a non-singular curve in a weighted projective plane.
    Genus {
        #[arg(long, value_delimiter = ',', num_args = 1, required = true)]
        weights: Vec<u64>,
        #[arg(long)]
        degree: u64,
    },
    /// Euler number of a double cover: 2 chi(base) - chi(branch).
    DoubleCover {
        #[arg(long, allow_hyphen_values = true)]
        chi_base: i64,
        #[arg(long, allow_hyphen_values = true)]
        chi_branch: i64,
    },
    /// Check one configuration against the degree-d constraints.
    Check {
        #[arg(long)]
        degree: u8,
        #[arg(long, default_value = "")]
        sings: String,
        /// Topological Euler number of the orbifold, if known.
        #[arg(long, allow_hyphen_values = true)]
        chi: Option<i64>,
        /// Picard rank of the orbifold, if known.
        #[arg(long)]
        picard: Option<u32>,
        #[arg(long, value_enum, default_value_t = ModeArg::InequalityOnly)]
        mode: ModeArg,
        #[arg(long = "disable-rule")]
        disable_rules: Vec<String>,
    },
    /// List every admissible configuration for a degree.
    Enumerate {
        #[arg(long)]
        degree: u8,
        #[arg(long, value_enum, default_value_t = ModeArg::InequalityOnly)]
        mode: ModeArg,
        #[arg(long = "disable-rule")]
        disable_rules: Vec<String>,
    },
    /// Bounds on the number of ALE bubbles carrying a given total energy.
    Bubbles {
        /// Total energy in units of 8 pi^2.
        #[arg(long)]
        total: Rational,
        /// Smallest bubble energy in units of 8 pi^2.
        #[arg(long, default_value = "3/4")]
        quantum: Rational,
    },
    /// Recompute every reference value and compare exactly.
    VerifyExamples,
}

/// A rendered report and the exit status to finish with.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub status: i32,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome {
            output,
            status: EXIT_OK,
        }
    }
}

#[derive(Serialize)]
struct Envelope<R: Serialize> {
    command: &'static str,
    input: serde_json::Value,
    result: R,
}

fn render<R: Serialize>(
    format: Format,
    command: &'static str,
    input: serde_json::Value,
    result: &R,
    text: impl FnOnce() -> String,
) -> String {
    match format {
        Format::Text => text(),
        Format::Json => serde_json::to_string_pretty(&Envelope {
            command,
            input,
            result,
        })
        .expect("report serializes"),
    }
}

fn parse_list(text: &str) -> Result<Vec<SingularityType>, CliError> {
    parse_singularity_list(text).map_err(usage)
}

fn rules_for(degree: u8, disabled: &[String]) -> Result<DegreeRules, CliError> {
    let mut rules = DegreeRules::for_degree(degree).map_err(usage)?;
    for name in disabled {
        rules = rules.without_rule(name).map_err(usage)?;
    }
    Ok(rules)
}

/// Dispatches a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Dedekind {
            r,
            weights,
            index,
            oracle,
        } => {
            let input = DedekindInput::new(*r, weights, *index).map_err(usage)?;
            let float = if *oracle {
                Some(dedekind_sum_float_oracle(&input).map_err(domain)?)
            } else {
                None
            };
            let exact = dedekind_sum(&input);
            let echo = json!({
                "r": r, "weights": input.weights(), "index": input.index(), "oracle": oracle
            });
            #[derive(Serialize)]
            struct Out<'a> {
                value: &'a Rational,
                #[serde(skip_serializing_if = "Option::is_none")]
                oracle: Option<f64>,
                #[serde(skip_serializing_if = "Option::is_none")]
                oracle_abs_diff: Option<f64>,
            }
            let diff = float.map(|f| (exact.to_f64() - f).abs());
            let out = Out {
                value: &exact,
                oracle: float,
                oracle_abs_diff: diff,
            };
            Ok(Outcome::ok(render(
                format,
                "dedekind",
                echo,
                &out,
                || match float {
                    None => format!("{input} = {exact}"),
                    Some(f) => format!(
                        "{input} = {exact}\n  exact  {:.15e}\n  oracle {f:.15e}\n  |diff| {:.3e}",
                        exact.to_f64(),
                        diff.unwrap_or_default()
                    ),
                },
            )))
        }

        Command::Mu { sing, bundle } => {
            let ty = parse_singularity(sing).map_err(usage)?;
            let bundle: Bundle = (*bundle).into();
            let mu = bundle.mu(&ty).map_err(domain)?;
            let twelve_mu = &mu * &Rational::from(12);
            let milnor = ty.milnor_number().ok();
            #[derive(Serialize)]
            struct Out<'a> {
                singularity: SingularityType,
                bundle: Bundle,
                group_order: u32,
                mu: &'a Rational,
                twelve_mu: &'a Rational,
                milnor: Option<&'a Rational>,
            }
            let out = Out {
                singularity: ty,
                bundle,
                group_order: ty.group_order(),
                mu: &mu,
                twelve_mu: &twelve_mu,
                milnor: milnor.as_ref(),
            };
            let label = match bundle {
                Bundle::Anticanonical => "K^-1",
                Bundle::CanonicalSquare => "K^2",
            };
            let echo = json!({ "sing": ty.to_string(), "bundle": bundle });
            Ok(Outcome::ok(render(format, "mu", echo, &out, || {
                let mut text = format!(
                    "singularity: {ty}\ngroup order: {}\nmu({label}): {mu}\n12 mu({label}): {twelve_mu}",
                    ty.group_order()
                );
                if let Some(m) = &milnor {
                    text.push_str(&format!("\nmilnor number: {m}"));
                }
                text
            })))
        }

        Command::ChiOrb { chi, sings } => {
            let list = parse_list(sings)?;
            let value = chi_orb_from_chi(chi, &list);
            let notation = format_singularity_list(&list);
            let echo = json!({ "chi": chi, "sings": list });
            Ok(Outcome::ok(render(format, "chi-orb", echo, &value, || {
                format!("chi_orb(chi = {chi}; {notation}) = {value}")
            })))
        }

        Command::Genus { weights, degree } => {
            let weights: [u64; 3] = weights
                .as_slice()
                .try_into()
                .map_err(|_| usage("--weights takes exactly three values a0,a1,a2"))?;
            if weights.contains(&0) {
                return Err(usage("weights must be positive"));
            }
            let g = genus_weighted_plane_curve(weights, *degree);
            let echo = json!({ "weights": weights, "degree": degree });
            #[derive(Serialize)]
            struct Out<'a> {
                genus: &'a Rational,
                integral: bool,
            }
            let out = Out {
                genus: &g,
                integral: g.is_integer(),
            };
            Ok(Outcome::ok(render(format, "genus", echo, &out, || {
                let [a0, a1, a2] = weights;
                format!("genus(P({a0},{a1},{a2}), degree {degree}) = {g}")
            })))
        }

        Command::DoubleCover {
            chi_base,
            chi_branch,
        } => {
            let chi = euler_double_cover(*chi_base, *chi_branch);
            let echo = json!({ "chi_base": chi_base, "chi_branch": chi_branch });
            Ok(Outcome::ok(render(
                format,
                "double-cover",
                echo,
                &chi,
                || format!("chi = 2 * {chi_base} - ({chi_branch}) = {chi}"),
            )))
        }

        Command::Check {
            degree,
            sings,
            chi,
            picard,
            mode,
            disable_rules,
        } => {
            let rules = rules_for(*degree, disable_rules)?;
            let mut config = OrbifoldConfig::new(Some(*degree), parse_list(sings)?);
            config.euler_topological = *chi;
            config.picard_rank = *picard;
            let report = rules.check(&config, (*mode).into()).map_err(domain)?;
            let echo = json!({
                "degree": degree,
                "sings": config.singularities,
                "chi": chi,
                "picard": picard,
                "mode": Mode::from(*mode),
                "disabled_rules": disable_rules,
            });
            Ok(Outcome::ok(render(format, "check", echo, &report, || {
                report.to_string()
            })))
        }

        Command::Enumerate {
            degree,
            mode,
            disable_rules,
        } => {
            let rules = rules_for(*degree, disable_rules)?;
            let result = rules.enumerate((*mode).into()).map_err(domain)?;
            let echo = json!({
                "degree": degree,
                "mode": Mode::from(*mode),
                "disabled_rules": disable_rules,
            });
            Ok(Outcome::ok(render(
                format,
                "enumerate",
                echo,
                &result,
                || result.to_string().trim_end().to_string(),
            )))
        }

        Command::Bubbles { total, quantum } => {
            let bounds = bubble_count_bounds(total, quantum).map_err(domain)?;
            let echo = json!({ "total": total, "quantum": quantum });
            Ok(Outcome::ok(render(
                format,
                "bubbles",
                echo,
                &bounds,
                || {
                    let fit = if bounds.exact_fit {
                        format!(", exact fit with {} bubbles", bounds.max)
                    } else {
                        String::new()
                    };
                    format!(
                        "bubbles(total = {total}, quantum = {quantum}): min {} max {}{fit}",
                        bounds.min, bounds.max
                    )
                },
            )))
        }

        Command::VerifyExamples => {
            let checks = known_value_checks();
            let failed = checks.iter().filter(|c| !c.passed).count();
            let echo = json!({ "quantum": ale_min_quantum() });
            let output = render(format, "verify-examples", echo, &checks, || {
                let mut lines: Vec<String> = checks
                    .iter()
                    .map(|c| {
                        let status = if c.passed { "PASS" } else { "FAIL" };
                        format!(
                            "[{status}] {}: expected {}, got {}",
                            c.name, c.expected, c.actual
                        )
                    })
                    .collect();
                lines.push(format!(
                    "{} of {} checks passed",
                    checks.len() - failed,
                    checks.len()
                ));
                lines.join("\n")
            });
            Ok(Outcome {
                output,
                status: if failed == 0 { EXIT_OK } else { EXIT_DOMAIN },
            })
        }
    }
}

/// Parses `args` (including the program name), runs the command, and
/// returns `(exit status, stdout, stderr)`.
pub fn execute<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            return if code == 0 {
                (code, rendered, String::new())
            } else {
                (EXIT_USAGE, String::new(), rendered)
            };
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            let mut output = outcome.output;
            output.push('\n');
            match &cli.out {
                None => (outcome.status, output, String::new()),
                Some(path) => match std::fs::write(path, &output) {
                    Ok(()) => (
                        outcome.status,
                        String::new(),
                        format!("wrote {}\n", path.display()),
                    ),
                    Err(e) => (
                        EXIT_DOMAIN,
                        String::new(),
                        format!("error: {}: {e}\n", path.display()),
                    ),
                },
            }
        }
        Err(e) => (e.exit_code(), String::new(), format!("error: {e}\n")),
    }
}
