use serde::Serialize;
use std::fmt::Debug;
use thiserror::Error;

/// Failure of a command, carrying its stable exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Invalid parameters, unbuildable codes, unreadable or inconsistent files. Exit 1.
    #[error("{message}")]
    Domain { kind: String, message: String },
    /// Malformed invocation that the argument parser could not catch. Exit 2.
    #[error("{0}")]
    Usage(String),
    /// A check ran to completion and came out negative. Exit 3.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain { .. } => 1,
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 3,
        }
    }

    pub fn kind(&self) -> &str {
        match self {
            CliError::Domain { kind, .. } => kind,
            CliError::Usage(_) => "Usage",
            CliError::Failed(_) => "VerificationFailed",
        }
    }

    pub fn domain(kind: &str, message: impl Into<String>) -> Self {
        CliError::Domain { kind: kind.into(), message: message.into() }
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Report<'a> {
            error: &'a str,
            message: String,
            exit_code: i32,
        }
        serde_json::to_string(&Report { error: self.kind(), message: self.to_string(), exit_code: self.exit_code() })
            .expect("plain strings serialize")
    }
}

/// Leading identifier of a `Debug` rendering: the enum variant name.
fn variant_name(e: &impl Debug) -> String {
    let s = format!("{e:?}");
    let end = s.find(|c: char| !c.is_alphanumeric() && c != '_').unwrap_or(s.len());
    s[..end].to_string()
}

/// Wraps library errors as domain errors. Nested `Gf(..)`/`Codes(..)` wrappers
/// are unwrapped to the innermost variant name.
pub fn domain<E: Debug + std::fmt::Display>(e: E) -> CliError {
    let mut kind = variant_name(&e);
    let dbg = format!("{e:?}");
    let mut rest = dbg.as_str();
    while matches!(kind.as_str(), "Gf" | "Codes") {
        rest = &rest[kind.len() + 1..];
        let end = rest.find(|c: char| !c.is_alphanumeric() && c != '_').unwrap_or(rest.len());
        kind = rest[..end].to_string();
    }
    CliError::Domain { kind, message: e.to_string() }
}

pub fn io(path: &std::path::Path, e: std::io::Error) -> CliError {
    CliError::domain("Io", format!("{}: {e}", path.display()))
}
