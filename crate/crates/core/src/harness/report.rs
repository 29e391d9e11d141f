use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = "<")]
    Below,
    #[serde(rename = ">=")]
    AtLeast,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::AtMost => "<=",
            Relation::Below => "<",
            Relation::AtLeast => ">=",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Equality,
    Violated,
    /// Not evaluated; the report's `note` says why.
    Skipped,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Equality => "equality",
            Verdict::Violated => "violated",
            Verdict::Skipped => "skipped",
        }
    }
}

/// One named inequality `lhs relation rhs`, evaluated.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub relation: Relation,
    /// Signed slack, positive when the inequality holds with room.
    pub margin: f64,
    pub verdict: Verdict,
    pub sharpness_ratio: f64,
    pub tolerance_used: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// max(1e−9, 3 · rel · |rhs|)
pub fn tolerance_for(rel: f64, rhs: f64) -> f64 {
    (3.0 * rel * rhs.abs()).max(1e-9)
}

impl InequalityReport {
    pub fn evaluate(name: &str, lhs: f64, relation: Relation, rhs: f64, rel_tol: f64) -> Self {
        let margin = match relation {
            Relation::AtLeast => lhs - rhs,
            Relation::AtMost | Relation::Below => rhs - lhs,
        };
        let tolerance_used = tolerance_for(rel_tol, rhs);
        let verdict = if !margin.is_finite() {
            Verdict::Violated
        } else if margin.abs() <= tolerance_used {
            Verdict::Equality
        } else if margin < 0.0 {
            Verdict::Violated
        } else {
            Verdict::Holds
        };
        Self {
            name: name.to_string(),
            lhs,
            rhs,
            relation,
            margin,
            verdict,
            sharpness_ratio: lhs / rhs,
            tolerance_used,
            note: None,
        }
    }

    pub fn skipped(name: &str, relation: Relation, reason: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            lhs: f64::NAN,
            rhs: f64::NAN,
            relation,
            margin: f64::NAN,
            verdict: Verdict::Skipped,
            sharpness_ratio: f64::NAN,
            tolerance_used: f64::NAN,
            note: Some(reason.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Holds or equality.
    pub fn passed(&self) -> bool {
        matches!(self.verdict, Verdict::Holds | Verdict::Equality)
    }
}

/// One parameter value of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub parameter: f64,
    pub values: BTreeMap<String, f64>,
    pub limit_target: f64,
    pub relative_gap: f64,
}

impl SweepRow {
    pub fn value(&self, key: &str) -> Option<f64> {
        self.values.get(key).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts_follow_the_margin() {
        let r = InequalityReport::evaluate("x", 2.0, Relation::AtLeast, 1.0, 1e-9);
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.margin, 1.0);
        let r = InequalityReport::evaluate("x", 1.0, Relation::AtMost, 1.0 + 1e-12, 1e-9);
        assert_eq!(r.verdict, Verdict::Equality);
        let r = InequalityReport::evaluate("x", 1.1, Relation::Below, 1.0, 1e-3);
        assert_eq!(r.verdict, Verdict::Violated);
        assert!((r.margin + 0.1).abs() < 1e-12);
        // 3 · 1e-3 · 1.0 covers a 0.2% shortfall
        let r = InequalityReport::evaluate("x", 0.998, Relation::AtLeast, 1.0, 1e-3);
        assert_eq!(r.verdict, Verdict::Equality);
    }

    #[test]
    fn tolerance_floor() {
        assert_eq!(tolerance_for(0.0, 5.0), 1e-9);
        assert!((tolerance_for(1e-3, -2.0) - 6e-3).abs() < 1e-15);
    }
}
