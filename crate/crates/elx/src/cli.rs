//! Command-line front end.
//!
//! Exit codes: 0 affirmative, 1 negative and definitive, 2 unknown,
//! 3 usage or input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use elx_core::entailment::{check_schema, decide, generalize_goal, require_gelo, DecideOptions};
use elx_core::expansion::expansion_base;
use elx_core::oracle::{find_violation, preferred_mode, refute_entailment, DEFAULT_STATE_CEILING};
use elx_core::saturation::{normalize_ontology, saturate, Basic};
use elx_core::{classify, Axiom, Ontology};

use crate::report::*;
use crate::text::{parse_axiom, parse_concept_base, parse_interpretation, parse_ontology, ParseError, ParsedOntology};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}:{err}", path.display())]
    Parse { path: PathBuf, err: ParseError },
    #[error("goal:{0}")]
    Goal(ParseError),
    #[error(transparent)]
    Core(#[from] elx_core::Error),
}

#[derive(Parser, Debug)]
#[command(name = "elx", version, about = "Reasoning for EL with concept variables")]
struct Cli {
    /// Emit reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GoalArgs {
    /// Ontology file.
    file: PathBuf,
    /// Goal axiom, e.g. "A SubClassOf exists r.B".
    #[arg(long)]
    goal: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify each axiom against the gelo and gelt fragments.
    Validate { file: PathBuf },
    /// Decide whether the ontology entails the goal under second-order semantics.
    Entails {
        #[command(flatten)]
        target: GoalArgs,
        #[arg(long, default_value_t = 10)]
        max_level: usize,
        /// Check schema semantics over the concepts listed in this file instead.
        #[arg(long)]
        schema_base: Option<PathBuf>,
        /// Rewrite gelt axioms to one variable each first.
        #[arg(long)]
        single_variable: bool,
    },
    /// Print the expansion levels and the grounded ontology.
    Expand {
        #[command(flatten)]
        target: GoalArgs,
        #[arg(long, default_value_t = 10)]
        max_level: usize,
    },
    /// List subsumptions between concept names in the grounded expansion.
    Classify {
        #[command(flatten)]
        target: GoalArgs,
        #[arg(long, default_value_t = 10)]
        max_level: usize,
    },
    /// Brute-force checks over finite interpretations.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Print the ontology with sugar forms expanded.
    Desugar { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Search small interpretations for a model of the ontology violating the goal.
    Refute {
        #[command(flatten)]
        target: GoalArgs,
        #[arg(long, default_value_t = 3, value_parser = positive)]
        max_domain: usize,
        /// Largest number of interpretations to enumerate.
        #[arg(long, default_value_t = DEFAULT_STATE_CEILING)]
        ceiling: u128,
    },
    /// Check an interpretation against every axiom under second-order semantics.
    CheckModel {
        model: PathBuf,
        file: PathBuf,
        #[arg(long)]
        goal: Option<String>,
    },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load_ontology(path: &Path) -> Result<ParsedOntology, CliError> {
    parse_ontology(&read(path)?).map_err(|err| CliError::Parse { path: path.to_path_buf(), err })
}

fn load_goal(text: &str) -> Result<Axiom, CliError> {
    parse_axiom(text).map_err(CliError::Goal)
}

/// A report ready for printing.
trait Report: Serialize + std::fmt::Display {
    fn status(&self) -> ReportStatus;
}

macro_rules! report {
    ($($t:ty),*) => {
        $(impl Report for $t {
            fn status(&self) -> ReportStatus {
                self.status
            }
        })*
    };
}

report!(ValidateReport, EntailsReport, ExpandReport, ClassifyReport, RefuteReport, CheckModelReport, DesugarReport);

fn emit(report: &dyn ReportOut, json: bool, out: &mut dyn Write) -> std::io::Result<ExitStatus> {
    if json {
        writeln!(out, "{}", report.json())?;
    } else {
        write!(out, "{}", report.text())?;
    }
    Ok(report.exit())
}

/// Object-safe view of [`Report`].
trait ReportOut {
    fn json(&self) -> String;
    fn text(&self) -> String;
    fn exit(&self) -> ExitStatus;
}

impl<T: Report> ReportOut for T {
    fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    fn text(&self) -> String {
        self.to_string()
    }

    fn exit(&self) -> ExitStatus {
        self.status().exit()
    }
}

fn execute(command: Command) -> Result<Box<dyn ReportOut>, CliError> {
    Ok(match command {
        Command::Validate { file } => {
            let parsed = load_ontology(&file)?;
            let axioms: Vec<AxiomReport> = parsed.axioms.iter().map(|a| AxiomReport::new(a, &classify(&a.axiom))).collect();
            let status = if axioms.iter().all(|a| a.gelo) { ReportStatus::Valid } else { ReportStatus::Invalid };
            Box::new(ValidateReport { status, axioms })
        }
        Command::Entails { target, max_level, schema_base, single_variable } => {
            let kb = load_ontology(&target.file)?.ontology();
            let goal = load_goal(&target.goal)?;
            match schema_base {
                Some(path) => {
                    let base = parse_concept_base(&read(&path)?).map_err(|err| CliError::Parse { path, err })?;
                    let holds = check_schema(&kb, &goal, &base)?;
                    Box::new(EntailsReport::from_schema(goal.to_string(), &base, holds))
                }
                None => {
                    let options = DecideOptions { level_budget: max_level, single_variable, ..DecideOptions::default() };
                    let verdict = decide(&kb, &goal, options)?;
                    Box::new(EntailsReport::from_verdict(goal.to_string(), &verdict))
                }
            }
        }
        Command::Expand { target, max_level } => {
            let kb = load_ontology(&target.file)?.ontology();
            let goal = load_goal(&target.goal)?;
            let (ground_goal, _) = generalize_goal(&kb, &goal);
            let trace = expansion_base(&kb, &ground_goal, max_level)?;
            Box::new(ExpandReport::new(ground_goal.to_string(), &trace))
        }
        Command::Classify { target, max_level } => {
            let kb = load_ontology(&target.file)?.ontology();
            let goal = load_goal(&target.goal)?;
            Box::new(classify_names(&kb, &goal, max_level)?)
        }
        Command::Oracle { command: OracleCommand::Refute { target, max_domain, ceiling } } => {
            let kb = load_ontology(&target.file)?.ontology();
            let goal = load_goal(&target.goal)?;
            let found = refute_entailment(&kb, &goal, max_domain, ceiling)?;
            Box::new(RefuteReport {
                status: if found.is_some() { ReportStatus::CountermodelFound } else { ReportStatus::NoCountermodel },
                goal: goal.to_string(),
                max_domain,
                counterexample: found.as_ref().map(Counterexample::new),
            })
        }
        Command::Oracle { command: OracleCommand::CheckModel { model, file, goal } } => {
            let interp = parse_interpretation(&read(&model)?).map_err(|err| CliError::Parse { path: model, err })?;
            let parsed = load_ontology(&file)?;
            let mut axioms = Vec::new();
            for a in &parsed.axioms {
                let violation = find_violation(&interp, &a.axiom, preferred_mode(&a.axiom))?;
                axioms.push(AxiomCheck::new(a.axiom.to_string(), violation.as_ref(), &interp));
            }
            let goal = match goal {
                Some(g) => {
                    let g = load_goal(&g)?;
                    let violation = find_violation(&interp, &g, preferred_mode(&g))?;
                    Some(AxiomCheck::new(g.to_string(), violation.as_ref(), &interp))
                }
                None => None,
            };
            let violations = axioms.iter().filter(|a| !a.satisfied).count();
            let failed = violations > 0 || goal.as_ref().is_some_and(|g| !g.satisfied);
            Box::new(CheckModelReport {
                status: if failed { ReportStatus::Violated } else { ReportStatus::Satisfied },
                axioms,
                violations,
                goal,
            })
        }
        Command::Desugar { file } => {
            let parsed = load_ontology(&file)?;
            Box::new(DesugarReport::new(parsed.axioms.iter().map(|a| &a.axiom)))
        }
    })
}

fn classify_names(kb: &Ontology, goal: &Axiom, max_level: usize) -> Result<ClassifyReport, CliError> {
    require_gelo(kb)?;
    let (ground_goal, _) = generalize_goal(kb, goal);
    let trace = expansion_base(kb, &ground_goal, max_level)?;
    let mut user = trace.grounded.signature().concepts;
    user.extend(ground_goal.signature().concepts);
    let nf = normalize_ontology(&trace.grounded)?;
    let index = saturate(&nf.axioms, user.iter().map(|n| Basic::Name(n.clone())).collect::<Vec<_>>());
    let mut subsumptions = Vec::new();
    for sub in &user {
        for sup in &user {
            if sub != sup && index.is_subsumed(&Basic::Name(sub.clone()), &Basic::Name(sup.clone())) == Some(true) {
                subsumptions.push((sub.to_string(), sup.to_string()));
            }
        }
    }
    Ok(ClassifyReport {
        status: if trace.fixpoint_reached { ReportStatus::Done } else { ReportStatus::Unknown },
        goal: ground_goal.to_string(),
        fixpoint_reached: trace.fixpoint_reached,
        levels: trace.levels.iter().map(|l| l.iter().map(ToString::to_string).collect()).collect(),
        subsumptions,
    })
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let to_out = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let rendered = e.render().to_string();
            if to_out {
                let _ = write!(out, "{rendered}");
                return ExitStatus::AFFIRMATIVE;
            }
            let _ = write!(err, "{rendered}");
            return ExitStatus::INPUT_ERROR;
        }
    };
    match execute(cli.command) {
        Ok(report) => emit(report.as_ref(), cli.json, out).unwrap_or(ExitStatus::INPUT_ERROR),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            ExitStatus::INPUT_ERROR
        }
    }
}
