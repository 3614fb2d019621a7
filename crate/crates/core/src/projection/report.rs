use serde::Serialize;

use super::Cutoffs;
use crate::models::ExampleSpec;
use crate::series::{Grading, Truncation, TruncationJson};

/// One escalation round.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub round: usize,
    pub k: i64,
    pub l: i64,
    #[serde(rename = "J")]
    pub j: usize,
    /// `k` was held below the schedule to keep restricted weights distinct.
    pub k_capped: bool,
    /// First degree that differs from the previous round.
    pub changed_at: Option<i64>,
    /// Extra round run after stabilization.
    pub confirm: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub example: String,
    pub n: usize,
    pub m: i64,
    pub f: String,
    pub grading: Vec<i64>,
    pub cutoffs: Cutoffs,
    #[serde(serialize_with = "ser_trunc")]
    pub lhs: Truncation,
    #[serde(serialize_with = "ser_trunc")]
    pub rhs: Truncation,
    #[serde(rename = "match")]
    pub matches: bool,
    pub first_mismatch: Option<i64>,
    pub rhs_integral: bool,
    pub trace: Vec<TraceEntry>,
}

fn ser_trunc<S: serde::Serializer>(t: &Truncation, s: S) -> Result<S::Ok, S::Error> {
    let j: TruncationJson = t.to_json();
    j.serialize(s)
}

impl VerificationReport {
    pub fn new(
        spec: &ExampleSpec,
        g: &Grading,
        cutoffs: Cutoffs,
        lhs: Truncation,
        rhs: Truncation,
        trace: Vec<TraceEntry>,
    ) -> Self {
        let first_mismatch = lhs.first_mismatch(&rhs);
        VerificationReport {
            example: spec.name.clone(),
            n: spec.n,
            m: spec.m,
            f: spec.f.label(),
            grading: g.0.clone(),
            cutoffs,
            matches: first_mismatch.is_none(),
            first_mismatch,
            rhs_integral: rhs.is_integral(),
            lhs,
            rhs,
            trace,
        }
    }

    /// Whether the extra confirmation round (if any) agreed.
    pub fn confirmed(&self) -> Option<bool> {
        self.trace.iter().find(|t| t.confirm).map(|t| t.changed_at.is_none())
    }
}
