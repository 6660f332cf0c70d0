//! Structured results of the CLI subcommands, printable as text or JSON.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use elx_core::entailment::{EntailmentVerdict, Status};
use elx_core::oracle::Countermodel;
use elx_core::{Axiom, ConceptBase, FiniteInterpretation, FragmentReport, Valuation};

use crate::text::ParsedAxiom;

/// Process exit code.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ExitStatus(pub u8);

impl ExitStatus {
    pub const AFFIRMATIVE: ExitStatus = ExitStatus(0);
    pub const NEGATIVE: ExitStatus = ExitStatus(1);
    pub const UNKNOWN: ExitStatus = ExitStatus(2);
    pub const INPUT_ERROR: ExitStatus = ExitStatus(3);
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportStatus {
    Entailed,
    NotEntailed,
    Unknown,
    Valid,
    Invalid,
    FixpointReached,
    BudgetExhausted,
    CountermodelFound,
    NoCountermodel,
    Satisfied,
    Violated,
    Done,
}

impl ReportStatus {
    pub fn exit(self) -> ExitStatus {
        use ReportStatus::*;
        match self {
            Entailed | Valid | FixpointReached | Satisfied | Done => ExitStatus::AFFIRMATIVE,
            NotEntailed | Invalid | CountermodelFound | Violated => ExitStatus::NEGATIVE,
            Unknown | BudgetExhausted | NoCountermodel => ExitStatus::UNKNOWN,
        }
    }
}

impl From<Status> for ReportStatus {
    fn from(s: Status) -> ReportStatus {
        match s {
            Status::Entailed => ReportStatus::Entailed,
            Status::NotEntailed => ReportStatus::NotEntailed,
            Status::Unknown => ReportStatus::Unknown,
        }
    }
}

fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    items.into_iter().map(|x| x.to_string()).collect()
}

fn base_strings(base: &ConceptBase) -> Vec<String> {
    strings(base)
}

fn valuation_map(v: &Valuation, i: &FiniteInterpretation) -> BTreeMap<String, Vec<String>> {
    v.iter()
        .map(|(var, set)| (var.as_str().to_string(), set.iter().map(|e| i.element_name(e).to_string()).collect()))
        .collect()
}

fn valuation_text(map: &BTreeMap<String, Vec<String>>) -> String {
    let parts: Vec<String> = map.iter().map(|(v, elems)| format!("η({v})={{{}}}", elems.join(","))).collect();
    parts.join(", ")
}

fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AxiomReport {
    pub line: usize,
    pub axiom: String,
    pub range_restricted: bool,
    pub lhs_linear: bool,
    pub rhs_safe: bool,
    pub gelo: bool,
    pub gelt: bool,
    pub violations: Vec<String>,
}

impl AxiomReport {
    pub fn new(parsed: &ParsedAxiom, report: &FragmentReport) -> AxiomReport {
        AxiomReport {
            line: parsed.span.line,
            axiom: parsed.axiom.to_string(),
            range_restricted: report.range_restricted,
            lhs_linear: report.lhs_linear,
            rhs_safe: report.rhs_safe,
            gelo: report.is_gelo,
            gelt: report.is_gelt,
            violations: strings(&report.violations),
        }
    }

    fn class(&self) -> &'static str {
        if self.gelt {
            "gelt"
        } else if self.gelo {
            "gelo"
        } else {
            "not gelo"
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ValidateReport {
    pub status: ReportStatus,
    pub axioms: Vec<AxiomReport>,
}

impl fmt::Display for ValidateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.axioms {
            writeln!(f, "line {:<4} {:<9} {}", a.line, a.class(), a.axiom)?;
            for v in &a.violations {
                writeln!(f, "          {v}")?;
            }
        }
        let outside = self.axioms.iter().filter(|a| !a.gelo).count();
        if outside == 0 {
            writeln!(f, "all {} axioms are gelo", self.axioms.len())
        } else {
            writeln!(f, "{outside} of {} axioms outside gelo", self.axioms.len())
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EntailsReport {
    pub status: ReportStatus,
    pub goal: String,
    /// The goal actually decided, with variables replaced by fresh names.
    pub decided_goal: String,
    pub fresh: BTreeMap<String, String>,
    pub level: Option<usize>,
    pub definitive: bool,
    pub fixpoint_reached: bool,
    pub levels: Vec<Vec<String>>,
    /// Grounding the verdict was read off; the schema base in schema mode.
    pub witness: Vec<String>,
    pub schema_base: Option<Vec<String>>,
}

impl EntailsReport {
    pub fn from_verdict(goal: String, v: &EntailmentVerdict) -> EntailsReport {
        EntailsReport {
            status: v.status.into(),
            goal,
            decided_goal: v.goal.to_string(),
            fresh: v.fresh.iter().map(|(k, n)| (k.as_str().to_string(), n.to_string())).collect(),
            level: Some(v.level),
            definitive: v.definitive,
            fixpoint_reached: v.fixpoint_reached,
            levels: v.levels.iter().map(base_strings).collect(),
            witness: if v.status == Status::Entailed { strings(&v.grounding) } else { Vec::new() },
            schema_base: None,
        }
    }

    pub fn from_schema(goal: String, base: &ConceptBase, holds: bool) -> EntailsReport {
        EntailsReport {
            status: if holds { ReportStatus::Entailed } else { ReportStatus::NotEntailed },
            decided_goal: goal.clone(),
            goal,
            fresh: BTreeMap::new(),
            level: None,
            definitive: true,
            fixpoint_reached: false,
            levels: Vec::new(),
            witness: Vec::new(),
            schema_base: Some(base_strings(base)),
        }
    }
}

impl fmt::Display for EntailsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = match self.status {
            ReportStatus::Entailed => "ENTAILED",
            ReportStatus::NotEntailed => "NOT ENTAILED",
            _ => "UNKNOWN",
        };
        match (&self.schema_base, self.level) {
            (Some(base), _) => writeln!(f, "{head} under schema semantics over H = {}", braces(base))?,
            (None, Some(level)) if self.status == ReportStatus::Unknown => {
                writeln!(f, "{head} (no decision up to level {level}, no fixpoint)")?
            }
            (None, Some(level)) => writeln!(f, "{head} level {level}, definitive")?,
            (None, None) => writeln!(f, "{head}")?,
        }
        if !self.fresh.is_empty() {
            let parts: Vec<String> = self.fresh.iter().map(|(v, n)| format!("?{v} := {n}")).collect();
            writeln!(f, "goal generalized: {} ({})", self.decided_goal, parts.join(", "))?;
        }
        if !self.witness.is_empty() {
            writeln!(f, "grounding:")?;
            for a in &self.witness {
                writeln!(f, "  {a}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ExpandReport {
    pub status: ReportStatus,
    pub goal: String,
    pub levels: Vec<Vec<String>>,
    pub fixpoint_reached: bool,
    pub capped: bool,
    pub grounded: Vec<String>,
}

impl ExpandReport {
    pub fn new(goal: String, trace: &elx_core::ExpansionTrace) -> ExpandReport {
        ExpandReport {
            status: if trace.fixpoint_reached { ReportStatus::FixpointReached } else { ReportStatus::BudgetExhausted },
            goal,
            levels: trace.levels.iter().map(base_strings).collect(),
            fixpoint_reached: trace.fixpoint_reached,
            capped: trace.capped,
            grounded: strings(&trace.grounded),
        }
    }
}

impl fmt::Display for ExpandReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, level) in self.levels.iter().enumerate() {
            writeln!(f, "H{i} = {}", braces(level))?;
        }
        writeln!(f, "fixpoint_reached = {}", self.fixpoint_reached)?;
        if self.capped {
            writeln!(f, "stopped: next level exceeds the size cap")?;
        }
        writeln!(f, "grounded:")?;
        for a in &self.grounded {
            writeln!(f, "  {a}")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub status: ReportStatus,
    pub goal: String,
    pub fixpoint_reached: bool,
    pub levels: Vec<Vec<String>>,
    /// `(sub, sup)` pairs between user concept names, `sub ≠ sup`.
    pub subsumptions: Vec<(String, String)>,
}

impl fmt::Display for ClassifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.subsumptions.is_empty() {
            writeln!(f, "no subsumptions between concept names")?;
        }
        for (sub, sup) in &self.subsumptions {
            writeln!(f, "{sub} SubClassOf {sup}")?;
        }
        if !self.fixpoint_reached {
            writeln!(f, "# expansion stopped before a fixpoint; the list may be incomplete")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Counterexample {
    pub model: String,
    pub valuation: BTreeMap<String, Vec<String>>,
}

impl Counterexample {
    pub fn new(cm: &Countermodel) -> Counterexample {
        Counterexample {
            model: cm.interpretation.to_string(),
            valuation: valuation_map(&cm.valuation, &cm.interpretation),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RefuteReport {
    pub status: ReportStatus,
    pub goal: String,
    pub max_domain: usize,
    pub counterexample: Option<Counterexample>,
}

impl fmt::Display for RefuteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            Some(c) => {
                writeln!(f, "countermodel found for {}", self.goal)?;
                f.write_str(&c.model)?;
                if !c.valuation.is_empty() {
                    writeln!(f, "at {}", valuation_text(&c.valuation))?;
                }
                Ok(())
            }
            None => writeln!(
                f,
                "no countermodel with at most {} elements for {} (not a proof of entailment)",
                self.max_domain, self.goal
            ),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub satisfied: bool,
    /// First violating valuation, when not satisfied.
    pub valuation: Option<BTreeMap<String, Vec<String>>>,
}

impl AxiomCheck {
    pub fn new(axiom: String, violation: Option<&Valuation>, i: &FiniteInterpretation) -> AxiomCheck {
        AxiomCheck { axiom, satisfied: violation.is_none(), valuation: violation.map(|v| valuation_map(v, i)) }
    }

    fn line(&self, prefix: &str) -> String {
        match &self.valuation {
            None => format!("{prefix}satisfied: {}", self.axiom),
            Some(v) if v.is_empty() => format!("{prefix}violated: {}", self.axiom),
            Some(v) => format!("{prefix}violated: {} at {}", self.axiom, valuation_text(v)),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CheckModelReport {
    pub status: ReportStatus,
    pub axioms: Vec<AxiomCheck>,
    pub violations: usize,
    pub goal: Option<AxiomCheck>,
}

impl fmt::Display for CheckModelReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.axioms {
            writeln!(f, "{}", a.line(""))?;
        }
        if let Some(goal) = &self.goal {
            writeln!(f, "{}", goal.line("goal "))?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DesugarReport {
    pub status: ReportStatus,
    pub axioms: Vec<String>,
}

impl DesugarReport {
    pub fn new<'a>(axioms: impl IntoIterator<Item = &'a Axiom>) -> DesugarReport {
        DesugarReport { status: ReportStatus::Done, axioms: strings(axioms) }
    }
}

impl fmt::Display for DesugarReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.axioms {
            writeln!(f, "{a}")?;
        }
        Ok(())
    }
}
