//! The uniform result record printed by the command line.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Error;
use crate::space::Vector;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub kind: String,
    pub pass: bool,
    pub values: BTreeMap<String, f64>,
    pub witnesses: BTreeMap<String, Vector>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(kind: impl Into<String>) -> Self {
        Report {
            kind: kind.into(),
            pass: true,
            values: BTreeMap::new(),
            witnesses: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    /// A failed report carrying the error message.
    pub fn failure(kind: impl Into<String>, err: &Error) -> Self {
        let mut r = Report::new(kind);
        r.pass = false;
        r.notes.push(err.to_string());
        r
    }

    pub fn value(&mut self, name: impl Into<String>, v: f64) -> &mut Self {
        self.values.insert(name.into(), v);
        self
    }

    pub fn witness(&mut self, name: impl Into<String>, v: Vector) -> &mut Self {
        self.witnesses.insert(name.into(), v);
        self
    }

    /// Witness from real coordinates; empty lists are skipped.
    pub fn real_witness(&mut self, name: impl Into<String>, v: &[f64]) -> &mut Self {
        if let Ok(v) = Vector::from_real(v) {
            self.witnesses.insert(name.into(), v);
        }
        self
    }

    pub fn note(&mut self, s: impl Into<String>) -> &mut Self {
        self.notes.push(s.into());
        self
    }

    /// Records `why` and fails the report unless `ok`.
    pub fn require(&mut self, ok: bool, why: impl Into<String>) -> &mut Self {
        if !ok {
            self.pass = false;
            self.notes.push(why.into());
        }
        self
    }

    /// Merges another report's entries under `prefix.`.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for (k, v) in other.values {
            self.values.insert(format!("{prefix}.{k}"), v);
        }
        for (k, v) in other.witnesses {
            self.witnesses.insert(format!("{prefix}.{k}"), v);
        }
        for n in other.notes {
            self.notes.push(format!("{prefix}: {n}"));
        }
        self.pass &= other.pass;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}: {}", self.kind, if self.pass { "pass" } else { "FAIL" });
        for (k, v) in &self.values {
            let _ = writeln!(s, "  {k} = {v}");
        }
        for (k, v) in &self.witnesses {
            let coords: Vec<String> = v
                .iter()
                .map(|c| if c.im == 0.0 { format!("{}", c.re) } else { format!("{}", c) })
                .collect();
            let _ = writeln!(s, "  {k} = ({})", coords.join(", "));
        }
        for n in &self.notes {
            let _ = writeln!(s, "  note: {n}");
        }
        s
    }

    /// Adds a note when the report failed without any explanation.
    pub fn finish(mut self) -> Self {
        if !self.pass && self.notes.is_empty() && self.witnesses.is_empty() {
            self.notes.push("check failed".into());
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failure_is_explained() {
        let mut r = Report::new("x");
        r.pass = false;
        assert_eq!(r.finish().notes.len(), 1);
        let r = Report::failure("x", &Error::NoWitness("none"));
        assert!(!r.pass && !r.notes.is_empty());
    }

    #[test]
    fn absorb_prefixes() {
        let mut a = Report::new("suite");
        let mut b = Report::new("lp");
        b.value("v", 1.0).require(false, "bad");
        a.absorb("lp", b);
        assert!(!a.pass);
        assert_eq!(a.values["lp.v"], 1.0);
        assert_eq!(a.notes, vec!["lp: bad".to_string()]);
    }

    #[test]
    fn json_is_stable() {
        let mut r = Report::new("k");
        r.value("b", 2.0).value("a", 1.0);
        let s = r.to_json();
        assert!(s.find("\"a\"").unwrap() < s.find("\"b\"").unwrap());
    }
}
