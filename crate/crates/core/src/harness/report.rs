use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedVerdict {
    pub name: String,
    pub is_pp: bool,
}

/// One row of a report. `index` is the position of the input in the suite's
/// grid, so filtered reports keep a stable ordering key.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Case {
    pub index: u64,
    pub input: Map<String, Value>,
    pub classifier_verdicts: Vec<NamedVerdict>,
    pub oracle_verdicts: Vec<NamedVerdict>,
    pub agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

impl Case {
    /// A case whose `input` is the given JSON object.
    pub fn new(index: u64, input: Value) -> Case {
        let input = match input {
            Value::Object(m) => m,
            other => {
                let mut m = Map::new();
                m.insert("value".into(), other);
                m
            }
        };
        Case {
            index,
            input,
            classifier_verdicts: Vec::new(),
            oracle_verdicts: Vec::new(),
            agree: true,
            detail: None,
        }
    }

    pub fn classifier(mut self, name: &str, is_pp: bool) -> Case {
        self.classifier_verdicts.push(NamedVerdict {
            name: name.into(),
            is_pp,
        });
        self
    }

    pub fn oracle(mut self, name: &str, is_pp: bool) -> Case {
        self.oracle_verdicts.push(NamedVerdict {
            name: name.into(),
            is_pp,
        });
        self
    }

    pub fn agree(mut self, agree: bool) -> Case {
        self.agree = agree;
        self
    }

    pub fn detail(mut self, detail: Value) -> Case {
        self.detail = Some(detail);
        self
    }

    /// Agreement between the first classifier and every oracle.
    pub fn classifier_matches_oracles(self) -> Case {
        let agree = match self.classifier_verdicts.first() {
            Some(c) => self.oracle_verdicts.iter().all(|o| o.is_pp == c.is_pp),
            None => true,
        };
        self.agree(agree)
    }

    /// The first oracle verdict if any oracle ran, else the first classifier
    /// verdict.
    pub fn is_positive(&self) -> bool {
        self.oracle_verdicts
            .first()
            .or(self.classifier_verdicts.first())
            .is_some_and(|v| v.is_pp)
    }
}

/// Which cases a report keeps. Counters in the summary always cover every
/// case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Retention {
    All,
    /// Only positive cases and disagreements.
    #[default]
    Notable,
}

impl FromStr for Retention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Retention> {
        match s {
            "all" => Ok(Retention::All),
            "notable" => Ok(Retention::Notable),
            other => Err(Error::Parse(format!("unknown case retention `{other}`"))),
        }
    }
}

impl fmt::Display for Retention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Retention::All => "all",
            Retention::Notable => "notable",
        })
    }
}

/// Counters and retained cases for one slice of a grid; slices are merged
/// in grid order.
#[derive(Debug, Clone, Default)]
pub struct Tally {
    pub total: u64,
    pub disagreements: u64,
    pub pp_count: u64,
    pub cases: Vec<Case>,
}

impl Tally {
    pub fn push(&mut self, case: Case, retention: Retention) {
        self.total += 1;
        let positive = case.is_positive();
        self.pp_count += positive as u64;
        self.disagreements += !case.agree as u64;
        if retention == Retention::All || positive || !case.agree {
            self.cases.push(case);
        }
    }

    pub fn merge(&mut self, other: Tally) {
        self.total += other.total;
        self.disagreements += other.disagreements;
        self.pp_count += other.pp_count;
        self.cases.extend(other.cases);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: u64,
    pub disagreements: u64,
    pub pp_count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_pp_count: Option<u64>,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub params: Value,
    pub cases: Vec<Case>,
    pub summary: Summary,
}

impl Report {
    /// No disagreements, and the expected PP count (if any) was met.
    pub fn passed(&self) -> bool {
        self.summary.disagreements == 0
            && self
                .summary
                .expected_pp_count
                .is_none_or(|e| e == self.summary.pp_count)
    }

    /// Zeroes `elapsed_ms` so that repeated runs serialize identically.
    pub fn without_timing(mut self) -> Report {
        self.summary.elapsed_ms = 0;
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// One row per retained case: `index`, the input fields, one column per
    /// classifier and oracle, `agree` and the JSON-encoded detail.
    pub fn to_csv(&self) -> Result<String> {
        let mut input_cols: Vec<&str> = Vec::new();
        let mut classifier_cols: Vec<&str> = Vec::new();
        let mut oracle_cols: Vec<&str> = Vec::new();
        fn note<'a>(cols: &mut Vec<&'a str>, name: &'a str) {
            if !cols.contains(&name) {
                cols.push(name);
            }
        }
        for case in &self.cases {
            case.input.keys().for_each(|k| note(&mut input_cols, k));
            case.classifier_verdicts
                .iter()
                .for_each(|v| note(&mut classifier_cols, &v.name));
            case.oracle_verdicts
                .iter()
                .for_each(|v| note(&mut oracle_cols, &v.name));
        }

        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["index".to_string()];
        header.extend(input_cols.iter().map(|c| c.to_string()));
        header.extend(classifier_cols.iter().map(|c| format!("classifier:{c}")));
        header.extend(oracle_cols.iter().map(|c| format!("oracle:{c}")));
        header.push("agree".into());
        header.push("detail".into());
        w.write_record(&header).map_err(csv_err)?;

        let verdict = |vs: &[NamedVerdict], name: &str| {
            vs.iter()
                .find(|v| v.name == name)
                .map(|v| v.is_pp.to_string())
                .unwrap_or_default()
        };
        for case in &self.cases {
            let mut row = vec![case.index.to_string()];
            row.extend(input_cols.iter().map(|c| match case.input.get(*c) {
                Some(Value::String(s)) => s.clone(),
                Some(v) => v.to_string(),
                None => String::new(),
            }));
            row.extend(
                classifier_cols
                    .iter()
                    .map(|c| verdict(&case.classifier_verdicts, c)),
            );
            row.extend(
                oracle_cols
                    .iter()
                    .map(|c| verdict(&case.oracle_verdicts, c)),
            );
            row.push(case.agree.to_string());
            row.push(
                case.detail
                    .as_ref()
                    .map(Value::to_string)
                    .unwrap_or_default(),
            );
            w.write_record(&row).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(format!("csv: {e}"))
}

/// Accumulates tallies and stamps the wall-clock time on completion.
pub struct ReportBuilder {
    suite: String,
    params: Value,
    started: Instant,
    tally: Tally,
    expected_pp_count: Option<u64>,
}

impl ReportBuilder {
    pub fn new(suite: &str, params: Value) -> ReportBuilder {
        ReportBuilder {
            suite: suite.into(),
            params,
            started: Instant::now(),
            tally: Tally::default(),
            expected_pp_count: None,
        }
    }

    pub fn expect_pp_count(&mut self, n: u64) {
        self.expected_pp_count = Some(n);
    }

    pub fn absorb(&mut self, tally: Tally) {
        self.tally.merge(tally);
    }

    pub fn extend(&mut self, tallies: impl IntoIterator<Item = Tally>) {
        tallies.into_iter().for_each(|t| self.absorb(t));
    }

    pub fn finish(self) -> Report {
        Report {
            suite: self.suite,
            params: self.params,
            summary: Summary {
                total: self.tally.total,
                disagreements: self.tally.disagreements,
                pp_count: self.tally.pp_count,
                expected_pp_count: self.expected_pp_count,
                elapsed_ms: self.started.elapsed().as_millis() as u64,
            },
            cases: self.tally.cases,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Report {
        let mut b = ReportBuilder::new("demo", json!({"s": 1}));
        let mut t = Tally::default();
        t.push(
            Case::new(0, json!({"a": "2"}))
                .classifier("canonical", true)
                .oracle("brute", true)
                .classifier_matches_oracles(),
            Retention::Notable,
        );
        t.push(
            Case::new(1, json!({"a": "3"}))
                .classifier("canonical", false)
                .oracle("brute", false)
                .classifier_matches_oracles(),
            Retention::Notable,
        );
        t.push(
            Case::new(2, json!({"a": "4"}))
                .classifier("canonical", false)
                .oracle("brute", true)
                .classifier_matches_oracles(),
            Retention::Notable,
        );
        b.absorb(t);
        b.expect_pp_count(2);
        b.finish()
    }

    #[test]
    fn tally_counts_every_case_but_keeps_notable_ones() {
        let r = sample();
        assert_eq!(r.summary.total, 3);
        assert_eq!(r.summary.pp_count, 2);
        assert_eq!(r.summary.disagreements, 1);
        assert_eq!(
            r.cases.iter().map(|c| c.index).collect::<Vec<_>>(),
            vec![0, 2]
        );
        assert!(!r.passed());
    }

    #[test]
    fn csv_has_one_row_per_case() {
        let csv = sample().to_csv().unwrap();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(
            lines[0],
            "index,a,classifier:canonical,oracle:brute,agree,detail"
        );
        assert_eq!(lines[1], "0,2,true,true,true,");
        assert_eq!(lines.len(), 3);
    }

    #[test]
    fn json_without_timing_is_stable() {
        let a = sample().without_timing().to_json();
        let b = sample().without_timing().to_json();
        assert_eq!(a, b);
        assert!(a.contains("\"elapsed_ms\": 0"));
    }
}
