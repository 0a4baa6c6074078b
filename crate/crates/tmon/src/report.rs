//! Human and JSON renderings of command results. Both carry the same records in the same order.

use serde::{Deserialize, Serialize};
use tmon_core::laws::LawReport;

/// One law on one instance. Field names are part of the output contract.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub law: String,
    pub instance: String,
    pub verdict: String,
    pub bound: String,
    pub witness: Option<String>,
    pub seed: u64,
}

impl From<&LawReport> for ReportRecord {
    fn from(r: &LawReport) -> ReportRecord {
        ReportRecord {
            law: r.law.clone(),
            instance: r.instance.clone(),
            verdict: r.verdict().to_string(),
            bound: r.bound.to_string(),
            witness: r.witness.clone(),
            seed: r.seed,
        }
    }
}

/// A hom-set in a listing: its endpoints, size and, when requested, its elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomEntry {
    pub source: String,
    pub target: String,
    pub count: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elements: Option<Vec<String>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Listing {
    pub objects: Vec<String>,
    pub homs: Vec<HomEntry>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub listing: Option<Listing>,
    pub reports: Vec<ReportRecord>,
    pub summary: Summary,
}

impl Document {
    pub fn new(listing: Option<Listing>, reports: &[LawReport]) -> Document {
        let passed = reports.iter().filter(|r| r.ok).count();
        Document {
            listing,
            reports: reports.iter().map(ReportRecord::from).collect(),
            summary: Summary { passed, failed: reports.len() - passed },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        if let Some(l) = &self.listing {
            if !l.objects.is_empty() {
                out.push_str(&format!("objects: {}\n", l.objects.join(", ")));
            }
            for h in &l.homs {
                out.push_str(&format!("{} -> {} : {}", h.source, h.target, h.count));
                if let Some(es) = h.elements.as_ref().filter(|es| !es.is_empty()) {
                    out.push_str(&format!(" | {}", es.join(", ")));
                }
                out.push('\n');
            }
        }
        for r in &self.reports {
            out.push_str(&format!("{} | {} | {} | {} | seed {}", r.verdict, r.instance, r.law, r.bound, r.seed));
            if let Some(w) = &r.witness {
                out.push_str(&format!(" | witness: {w}"));
            }
            out.push('\n');
        }
        if !self.reports.is_empty() {
            out.push_str(&format!("{} passed, {} failed\n", self.summary.passed, self.summary.failed));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tmon_core::Coverage;

    fn report(ok: bool) -> LawReport {
        LawReport {
            law: "unit".into(),
            instance: "x".into(),
            ok,
            bound: Coverage::UpTo(2),
            witness: (!ok).then(|| "at a: b vs c".into()),
            seed: 7,
        }
    }

    #[test]
    fn human_lines_match_core_reports() {
        let rs = [report(true), report(false)];
        let d = Document::new(None, &rs);
        let lines: Vec<String> = rs.iter().map(|r| r.to_string()).collect();
        assert_eq!(d.to_human(), format!("{}\n{}\n1 passed, 1 failed\n", lines[0], lines[1]));
    }

    #[test]
    fn json_uses_the_frozen_field_names() {
        let d = Document::new(None, &[report(false)]);
        let v: serde_json::Value = serde_json::from_str(&d.to_json()).unwrap();
        let r = &v["reports"][0];
        let mut keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
        keys.sort();
        assert_eq!(keys, ["bound", "instance", "law", "seed", "verdict", "witness"]);
        assert_eq!(r["verdict"], "fail");
        assert_eq!(r["bound"], "bound 2");
        assert_eq!(v["summary"]["failed"], 1);
        let back: Document = serde_json::from_value(v).unwrap();
        assert_eq!(back, d);
    }
}
