//! Serializable reports shared by the command-line front end and library
//! users who want JSON.

use serde::Serialize;

use crate::hierarchy::ConceptHierarchy;
use crate::interval::Interval;
use crate::propagation::{PropagationTrace, TraceStep};
use crate::rational::{format_decimal, format_rational, Rational, RationalJson};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntervalJson {
    pub lo: RationalJson,
    pub hi: RationalJson,
}

impl From<&Interval> for IntervalJson {
    fn from(i: &Interval) -> Self {
        Self {
            lo: RationalJson::from_rational(i.lo()),
            hi: RationalJson::from_rational(i.hi()),
        }
    }
}

/// How a local range relates to the exact one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Agreement {
    Equal,
    LocalContainsExact,
    Vacuous,
    /// Only one method ran.
    NotCompared,
    /// The exact range is not inside the local one. Never expected.
    SoundnessViolation,
}

impl Agreement {
    pub fn compare(local: Option<&Interval>, exact: Option<&Interval>) -> Self {
        match (local, exact) {
            (Some(l), Some(e)) if l == e => Agreement::Equal,
            (Some(l), Some(e)) if l.contains_interval(e) => Agreement::LocalContainsExact,
            (Some(_), Some(_)) => Agreement::SoundnessViolation,
            _ => Agreement::NotCompared,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Agreement::Equal => "equal",
            Agreement::LocalContainsExact => "local_contains_exact",
            Agreement::Vacuous => "vacuous",
            Agreement::NotCompared => "not_compared",
            Agreement::SoundnessViolation => "soundness_violation",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timings {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub local_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuerySpec {
    pub antecedent: String,
    pub consequent: String,
    pub method: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStepJson {
    pub sweep: usize,
    pub rule: String,
    pub antecedent: String,
    pub consequent: String,
    pub context: Vec<String>,
    pub old: IntervalJson,
    /// `null` when the intersection was empty.
    pub new: Option<IntervalJson>,
}

pub fn trace_json(trace: &PropagationTrace) -> Vec<TraceStepJson> {
    let name = |i: usize| trace.tracked.concept(i).to_string();
    trace
        .steps
        .iter()
        .map(|s: &TraceStep| TraceStepJson {
            sweep: s.sweep,
            rule: s.rule.to_string(),
            antecedent: name(s.entry.0),
            consequent: name(s.entry.1),
            context: s.context.iter().map(|&i| name(i)).collect(),
            old: (&s.old).into(),
            new: s.new.as_ref().map(Into::into),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QueryReport {
    pub query: QuerySpec,
    pub local: Option<IntervalJson>,
    pub exact: Option<IntervalJson>,
    pub agreement: Agreement,
    pub trace: Option<Vec<TraceStepJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RangeRow {
    pub antecedent: String,
    pub consequent: String,
    pub local: Option<IntervalJson>,
    pub exact: Option<IntervalJson>,
    pub agreement: Agreement,
    /// Local width minus exact width.
    pub slack: Option<RationalJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RangesReport {
    pub method: String,
    pub concepts: Vec<String>,
    pub rows: Vec<RangeRow>,
    pub max_slack: Option<RationalJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodVerdict {
    pub consistent: bool,
    /// Human-readable explanation.
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceStepJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<RationalJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<RationalJson>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub method: String,
    pub consistent: bool,
    pub local: Option<MethodVerdict>,
    pub exact: Option<MethodVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HierarchyNodeJson {
    pub name: String,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HierarchyEdgeJson {
    pub child: String,
    pub parent: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HierarchyReport {
    pub nodes: Vec<HierarchyNodeJson>,
    pub edges: Vec<HierarchyEdgeJson>,
}

impl From<&ConceptHierarchy> for HierarchyReport {
    fn from(h: &ConceptHierarchy) -> Self {
        Self {
            nodes: h
                .nodes
                .iter()
                .map(|n| HierarchyNodeJson {
                    name: n.name.clone(),
                    members: n.members.clone(),
                })
                .collect(),
            edges: h
                .edges
                .iter()
                .map(|&(c, p)| HierarchyEdgeJson {
                    child: h.nodes[c].name.clone(),
                    parent: h.nodes[p].name.clone(),
                })
                .collect(),
        }
    }
}

/// `[3/4, 1] (0.7500, 1.0000)`.
pub fn describe_interval(i: &Interval) -> String {
    format!(
        "[{}, {}] ({}, {})",
        format_rational(i.lo()),
        format_rational(i.hi()),
        format_decimal(i.lo(), 4),
        format_decimal(i.hi(), 4)
    )
}

pub fn describe_rational(r: &Rational) -> String {
    format!("{} ({})", format_rational(r), format_decimal(r, 4))
}
