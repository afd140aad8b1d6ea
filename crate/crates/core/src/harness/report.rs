//! Verification reports: structured items, counts, JSON and text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functors::Outcome;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    VacuousHolds,
    NonVacuous,
    Violation,
    /// Recorded finding with no expectation attached.
    Info,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::VacuousHolds => "VACUOUS-HOLDS",
            Status::NonVacuous => "NON-VACUOUS",
            Status::Violation => "VIOLATION",
            Status::Info => "INFO",
        }
    }

    pub fn is_failure(self) -> bool {
        matches!(self, Status::Fail | Status::Violation)
    }

    pub fn check(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl From<Outcome> for Status {
    fn from(o: Outcome) -> Status {
        match o {
            Outcome::VacuousHolds => Status::VacuousHolds,
            Outcome::NonVacuous => Status::NonVacuous,
            Outcome::Violation => Status::Violation,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportItem {
    pub id: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub prime: Option<u64>,
    pub status: Status,
    pub degenerate: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "serde_json::Value::is_null", default)]
    pub data: serde_json::Value,
}

impl ReportItem {
    pub fn new(id: impl Into<String>, status: Status, detail: impl Into<String>) -> ReportItem {
        ReportItem {
            id: id.into(),
            group: None,
            prime: None,
            status,
            degenerate: false,
            detail: detail.into(),
            data: serde_json::Value::Null,
        }
    }

    pub fn group(mut self, g: impl Into<String>) -> Self {
        self.group = Some(g.into());
        self
    }

    pub fn prime(mut self, p: u64) -> Self {
        self.prime = Some(p);
        self
    }

    pub fn degenerate(mut self, d: bool) -> Self {
        self.degenerate = d;
        self
    }

    pub fn data<T: Serialize>(mut self, d: &T) -> Self {
        self.data = serde_json::to_value(d).unwrap_or(serde_json::Value::Null);
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub vacuous_holds: usize,
    pub non_vacuous: usize,
    pub violation: usize,
    pub info: usize,
    /// Items whose prime does not divide the group order (any status).
    pub degenerate: usize,
}

impl Counts {
    pub fn of(items: &[ReportItem]) -> Counts {
        let mut c = Counts::default();
        for it in items {
            c.total += 1;
            match it.status {
                Status::Pass => c.pass += 1,
                Status::Fail => c.fail += 1,
                Status::VacuousHolds => c.vacuous_holds += 1,
                Status::NonVacuous => c.non_vacuous += 1,
                Status::Violation => c.violation += 1,
                Status::Info => c.info += 1,
            }
            if it.degenerate {
                c.degenerate += 1;
            }
        }
        c
    }
}

/// Allowlist used for a hat class, and where it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AllowlistEcho {
    pub class: String,
    pub orders: Vec<u64>,
    pub provenance: String,
}

/// The settings a report was produced under.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub caret: String,
    pub e1: String,
    pub semantics_both: bool,
    pub bound: u64,
    pub lemma_order_limit: u64,
    pub corpus: String,
    pub corpus_size: usize,
    pub allowlists: Vec<AllowlistEcho>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub config: ConfigEcho,
    pub items: Vec<ReportItem>,
    pub counts: Counts,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, config: ConfigEcho, items: Vec<ReportItem>) -> VerificationReport {
        let counts = Counts::of(&items);
        VerificationReport {
            suite: suite.into(),
            config,
            items,
            counts,
        }
    }

    pub fn passed(&self) -> bool {
        self.counts.fail == 0 && self.counts.violation == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportItem> {
        self.items.iter().filter(|i| i.status.is_failure())
    }

    /// Items whose id starts with `prefix`.
    pub fn select<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a ReportItem> + 'a {
        self.items.iter().filter(move |i| i.id.starts_with(prefix))
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))
    }

    /// Aligned text table, one line per item, followed by the counts.
    pub fn render_text(&self, failures_and_info_only: bool) -> String {
        let rows: Vec<&ReportItem> = self
            .items
            .iter()
            .filter(|i| !failures_and_info_only || i.status.is_failure() || i.status == Status::Info)
            .collect();
        let w_id = rows.iter().map(|i| i.id.len()).max().unwrap_or(2).max(2);
        let w_g = rows
            .iter()
            .map(|i| i.group.as_deref().unwrap_or("-").len())
            .max()
            .unwrap_or(5)
            .max(5);
        let mut s = String::new();
        let _ = writeln!(s, "suite: {}", self.suite);
        let _ = writeln!(
            s,
            "{:<14} {:<w_id$} {:<w_g$} {:>3}  detail",
            "status", "id", "group", "p"
        );
        for it in rows {
            let p = it.prime.map(|p| p.to_string()).unwrap_or_else(|| "-".into());
            let deg = if it.degenerate { " [degenerate]" } else { "" };
            let _ = writeln!(
                s,
                "{:<14} {:<w_id$} {:<w_g$} {:>3}  {}{}",
                it.status.name(),
                it.id,
                it.group.as_deref().unwrap_or("-"),
                p,
                it.detail,
                deg
            );
        }
        let c = &self.counts;
        let _ = writeln!(
            s,
            "total {}: pass {}, fail {}, vacuous-holds {}, non-vacuous {}, violation {}, info {}, degenerate {}",
            c.total, c.pass, c.fail, c.vacuous_holds, c.non_vacuous, c.violation, c.info, c.degenerate
        );
        s
    }
}

/// Wall-clock timings, kept apart from the report so reports stay byte-stable.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub total_ms: f64,
    pub phases: BTreeMap<String, f64>,
}

/// `{"report": ..., "timing": ...}`
pub fn report_document(report: &VerificationReport, timing: &Timing) -> Result<String> {
    #[derive(Serialize)]
    struct Doc<'a> {
        report: &'a VerificationReport,
        timing: &'a Timing,
    }
    serde_json::to_string_pretty(&Doc { report, timing }).map_err(|e| Error::Io(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_sum_to_total() {
        let items = vec![
            ReportItem::new("a", Status::Pass, ""),
            ReportItem::new("b", Status::Violation, "").degenerate(true),
            ReportItem::new("c", Status::Info, ""),
        ];
        let r = VerificationReport::new("t", ConfigEcho::default(), items);
        let c = &r.counts;
        assert_eq!(
            c.pass + c.fail + c.vacuous_holds + c.non_vacuous + c.violation + c.info,
            c.total
        );
        assert_eq!(c.degenerate, 1);
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    fn json_round_trip() {
        let items = vec![ReportItem::new("x", Status::Pass, "ok")
            .group("sym(3)")
            .prime(2)
            .data(&vec![1, 2])];
        let r = VerificationReport::new("t", ConfigEcho::default(), items);
        let back: VerificationReport = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        assert_eq!(back, r);
    }
}
