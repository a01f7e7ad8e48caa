//! Check reports: a named list of violated invariants.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    subject: String,
    messages: Vec<String>,
}

impl CheckReport {
    pub fn new(subject: impl Into<String>) -> Self {
        CheckReport {
            subject: subject.into(),
            messages: Vec::new(),
        }
    }

    pub fn violation(&mut self, message: String) {
        self.messages.push(message);
    }

    pub fn is_ok(&self) -> bool {
        self.messages.is_empty()
    }

    pub fn subject(&self) -> &str {
        &self.subject
    }

    pub fn messages(&self) -> &[String] {
        &self.messages
    }

    pub fn merge(&mut self, other: CheckReport) {
        for m in other.messages {
            self.messages.push(format!("{}: {}", other.subject, m));
        }
    }

    /// Convert to a hard error, for callers that require validity.
    pub fn into_result(self) -> Result<(), String> {
        if self.is_ok() {
            Ok(())
        } else {
            Err(format!("{}: {}", self.subject, self.messages.join("; ")))
        }
    }
}

impl std::fmt::Display for CheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_ok() {
            write!(f, "{}: ok", self.subject)
        } else {
            writeln!(f, "{}: {} violation(s)", self.subject, self.messages.len())?;
            for m in &self.messages {
                writeln!(f, "  - {}", m)?;
            }
            Ok(())
        }
    }
}
