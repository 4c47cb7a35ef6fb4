use serde::Serialize;

/// Outcome of one command. Text and JSON renderings carry the same verdict,
/// details and witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub scenario: String,
    pub verdict: String,
    pub exit_code: i32,
    pub details: Vec<String>,
    pub witnesses: Vec<String>,
    /// Support points accepted without an irreducibility proof.
    pub trust: Vec<String>,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn new(command: &str, scenario: &str) -> Self {
        Report {
            command: command.into(),
            scenario: scenario.into(),
            verdict: String::new(),
            exit_code: 0,
            details: Vec::new(),
            witnesses: Vec::new(),
            trust: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn positive(&mut self, verdict: impl Into<String>) {
        self.verdict = verdict.into();
        self.exit_code = 0;
    }

    pub fn negative(&mut self, verdict: impl Into<String>) {
        self.verdict = verdict.into();
        self.exit_code = 1;
    }

    pub fn detail(&mut self, s: impl Into<String>) {
        self.details.push(s.into());
    }

    pub fn witness(&mut self, s: impl Into<String>) {
        self.witnesses.push(s.into());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\nscenario: {}\nverdict: {}\n", self.command, self.scenario, self.verdict);
        for d in &self.details {
            out.push_str(&format!("  {d}\n"));
        }
        for w in &self.witnesses {
            out.push_str(&format!("witness: {w}\n"));
        }
        if self.trust.is_empty() {
            out.push_str("trust: every support point certified\n");
        } else {
            for t in &self.trust {
                out.push_str(&format!("trust: TRUSTED {t}\n"));
            }
        }
        out.push_str(&format!("time: {} ms\n", self.elapsed_ms));
        out
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            self.to_json()
        } else {
            self.to_text()
        }
    }
}
