//! Pass/fail reports shared by the verification routines. Rendering is
//! deterministic: the same inputs and seed give byte-identical output.

use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Number of instances examined.
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub facts: Vec<Fact>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl Report {
    pub fn new(title: impl Into<String>, seed: Option<u64>) -> Self {
        Report { title: title.into(), seed, facts: Vec::new(), checks: Vec::new(), passed: true }
    }

    pub fn fact(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.facts.push(Fact { key: key.into(), value: value.into() });
    }

    /// Records a check; `witness` is the first counterexample, if any.
    pub fn check(&mut self, name: impl Into<String>, cases: usize, witness: Option<String>) {
        let passed = witness.is_none();
        self.passed &= passed;
        self.checks.push(Check { name: name.into(), passed, cases, witness });
    }

    /// Merges `other`'s checks under a name prefix.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for f in other.facts {
            self.facts.push(Fact { key: format!("{prefix}: {}", f.key), value: f.value });
        }
        for c in other.checks {
            self.passed &= c.passed;
            self.checks.push(Check { name: format!("{prefix}: {}", c.name), ..c });
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "== {} ==", self.title);
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed: {seed}");
        }
        for f in &self.facts {
            let _ = writeln!(out, "{}: {}", f.key, f.value);
        }
        for c in &self.checks {
            let tag = if c.passed { "pass" } else { "FAIL" };
            let _ = writeln!(out, "[{tag}] {} ({} cases)", c.name, c.cases);
            if let Some(w) = &c.witness {
                let _ = writeln!(out, "       witness: {w}");
            }
        }
        let _ = writeln!(out, "result: {}", if self.passed { "pass" } else { "FAIL" });
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failures_propagate() {
        let mut r = Report::new("demo", Some(7));
        r.fact("family", "regular-Z");
        r.check("first", 3, None);
        assert!(r.passed);
        let mut inner = Report::new("inner", None);
        inner.check("second", 1, Some("x[2]".into()));
        r.absorb("inner", inner);
        assert!(!r.passed);
        assert_eq!(r.failures().count(), 1);
        let text = r.render_text();
        assert!(text.contains("[FAIL] inner: second (1 cases)"));
        assert!(text.ends_with("result: FAIL\n"));
        assert!(r.render_json().contains("\"witness\": \"x[2]\""));
    }
}
