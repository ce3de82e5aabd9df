use std::fmt::Write as _;

use effdual_core::suite::{CheckResult, Status as CheckStatus};
use effdual_core::FamilySignature;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

impl From<CheckStatus> for Status {
    fn from(s: CheckStatus) -> Self {
        match s {
            CheckStatus::Pass => Status::Pass,
            CheckStatus::Fail => Status::Fail,
            CheckStatus::Error => Status::Error,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigEntry {
    pub name: String,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResultEntry {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl From<CheckResult> for ResultEntry {
    fn from(r: CheckResult) -> Self {
        ResultEntry {
            name: r.name,
            status: r.status.into(),
            detail: r.detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub signature: Vec<SigEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<String>,
    pub results: Vec<ResultEntry>,
    /// The value a command computes (a dual term, an evaluation result).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    pub overall: Status,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

impl Report {
    pub fn new(command: &str, sig: Option<&FamilySignature>) -> Self {
        Report {
            command: command.to_string(),
            signature: sig
                .map(|sig| {
                    sig.entries()
                        .iter()
                        .map(|e| SigEntry {
                            name: e.name().to_string(),
                            size: e.size(),
                        })
                        .collect()
                })
                .unwrap_or_default(),
            trace: Vec::new(),
            results: Vec::new(),
            output: None,
            overall: Status::Pass,
        }
    }

    pub fn push(&mut self, entry: impl Into<ResultEntry>) {
        self.results.push(entry.into());
        self.overall = overall(&self.results);
    }

    pub fn push_error(&mut self, name: &str, message: impl Into<String>) {
        self.push(ResultEntry {
            name: name.to_string(),
            status: Status::Error,
            detail: Some(message.into()),
        });
    }

    /// 0 when everything passed, 1 on a semantic failure, 2 on an error.
    pub fn exit_code(&self) -> i32 {
        match self.overall {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Machine => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Human => self.human(),
        }
    }

    fn human(&self) -> String {
        let mut out = String::new();
        // A successful command that computes a value prints just the value.
        if let (Some(output), Status::Pass, true) =
            (&self.output, self.overall, self.trace.is_empty())
        {
            out.push_str(output);
            out.push('\n');
            return out;
        }
        if !self.signature.is_empty() {
            let sig: Vec<String> = self
                .signature
                .iter()
                .map(|e| format!("({}, {})", e.name, e.size))
                .collect();
            let _ = writeln!(out, "{} on [{}]", self.command, sig.join(", "));
        } else {
            let _ = writeln!(out, "{}", self.command);
        }
        for line in &self.trace {
            let _ = writeln!(out, "  {line}");
        }
        let width = self.results.iter().map(|r| r.name.len()).max().unwrap_or(0);
        for r in &self.results {
            match &r.detail {
                Some(d) => {
                    let _ = writeln!(out, "{:<5} {:<width$}  {d}", r.status.as_str(), r.name);
                }
                None => {
                    let _ = writeln!(out, "{:<5} {}", r.status.as_str(), r.name);
                }
            }
        }
        if let Some(output) = &self.output {
            let _ = writeln!(out, "output: {output}");
        }
        let _ = writeln!(out, "overall: {}", self.overall.as_str());
        out
    }
}

fn overall(results: &[ResultEntry]) -> Status {
    if results.iter().any(|r| r.status == Status::Error) {
        Status::Error
    } else if results.iter().any(|r| r.status == Status::Fail) {
        Status::Fail
    } else {
        Status::Pass
    }
}
