use std::fmt;

/// Outcome of one checked condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub indices: Vec<usize>,
    pub witness: String,
}

/// Pass/fail ledger; passes overall iff every check passes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&mut self, name: &str) {
        self.checks.push(Check {
            name: name.into(),
            passed: true,
            indices: vec![],
            witness: String::new(),
        });
    }

    pub fn fail(&mut self, name: &str, indices: &[usize], witness: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed: false,
            indices: indices.to_vec(),
            witness: witness.into(),
        });
    }

    /// Records `name` as passing unless `failure` holds a witness.
    pub fn record(&mut self, name: &str, failure: Option<(Vec<usize>, String)>) {
        match failure {
            None => self.pass(name),
            Some((idx, w)) => self.fail(name, &idx, w),
        }
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.failures().next()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed(&self, name: &str) -> bool {
        self.check(name).is_some_and(|c| !c.passed)
    }

    /// Flat key/value records separated by blank lines.
    pub fn to_structured(&self) -> String {
        let mut out = format!(
            "overall: {}\nchecks: {}\nfailures: {}\n",
            if self.passed() { "pass" } else { "fail" },
            self.checks.len(),
            self.failures().count()
        );
        for c in &self.checks {
            let idx = if c.indices.is_empty() {
                "-".to_string()
            } else {
                c.indices
                    .iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            let witness = if c.witness.is_empty() {
                "-"
            } else {
                &c.witness
            };
            out.push_str(&format!(
                "\ncheck: {}\nstatus: {}\nindices: {}\nwitness: {}\n",
                c.name,
                if c.passed { "pass" } else { "fail" },
                idx,
                witness
            ));
        }
        out
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            if c.passed {
                writeln!(f, "PASS {}", c.name)?;
            } else {
                let idx: Vec<String> = c.indices.iter().map(|i| i.to_string()).collect();
                writeln!(f, "FAIL {} at ({}): {}", c.name, idx.join(","), c.witness)?;
            }
        }
        write!(
            f,
            "{}",
            if self.passed() {
                "overall: pass"
            } else {
                "overall: fail"
            }
        )
    }
}
