//! Structured diagnostics with source spans.

use serde::Serialize;
use std::fmt;

use crate::tos::Profile;

/// Byte range into the source file. Always non-empty for reported errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Span {
        Span { start, end }
    }

    pub fn join(self, other: Span) -> Span {
        Span {
            start: self.start.min(other.start),
            end: self.end.max(other.end),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[allow(clippy::upper_case_acronyms)]
pub enum Code {
    #[serde(rename = "E_LEX")]
    ELex,
    #[serde(rename = "E_PARSE")]
    EParse,
    #[serde(rename = "E_DUPNAME")]
    EDupName,
    #[serde(rename = "E_PROFILE_MISSING")]
    EProfileMissing,
    #[serde(rename = "E_SCOPE")]
    EScope,
    #[serde(rename = "E_TYPE")]
    EType,
    #[serde(rename = "E_PROFILE")]
    EProfile,
    #[serde(rename = "E_EXTERN")]
    EExtern,
    #[serde(rename = "E_POSITIVITY_INTERNAL")]
    EPositivityInternal,
    #[serde(rename = "E_UNSUPPORTED")]
    EUnsupported,
    #[serde(rename = "E_INNER_TYPE")]
    EInnerType,
    #[serde(rename = "E_ARITY")]
    EArity,
    #[serde(rename = "E_OVERFLOW")]
    EOverflow,
}

impl Code {
    pub fn as_str(self) -> &'static str {
        match self {
            Code::ELex => "E_LEX",
            Code::EParse => "E_PARSE",
            Code::EDupName => "E_DUPNAME",
            Code::EProfileMissing => "E_PROFILE_MISSING",
            Code::EScope => "E_SCOPE",
            Code::EType => "E_TYPE",
            Code::EProfile => "E_PROFILE",
            Code::EExtern => "E_EXTERN",
            Code::EPositivityInternal => "E_POSITIVITY_INTERNAL",
            Code::EUnsupported => "E_UNSUPPORTED",
            Code::EInnerType => "E_INNER_TYPE",
            Code::EArity => "E_ARITY",
            Code::EOverflow => "E_OVERFLOW",
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A reported failure: code, message, source span and optional typing detail.
#[derive(Debug, Clone, Serialize)]
pub struct Diagnostic {
    pub code: Code,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub span: Option<Span>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<Profile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub actual: Option<String>,
}

impl Diagnostic {
    pub fn new(code: Code, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            code,
            message: message.into(),
            span: None,
            profile: None,
            expected: None,
            actual: None,
        }
    }

    pub fn with_span(mut self, span: Span) -> Diagnostic {
        self.span = Some(span);
        self
    }

    pub fn with_profile(mut self, profile: Profile) -> Diagnostic {
        self.profile = Some(profile);
        self
    }

    pub fn with_types(mut self, expected: impl Into<String>, actual: impl Into<String>) -> Diagnostic {
        self.expected = Some(expected.into());
        self.actual = Some(actual.into());
        self
    }

    /// Renders `file:line:col: CODE: message`, computing line/col from the
    /// span start against `source` (1-based, columns in bytes).
    pub fn render_line(&self, file: &str, source: &str) -> String {
        let (line, col) = match self.span {
            Some(span) => line_col(source, span.start),
            None => (1, 1),
        };
        let mut out = format!("{file}:{line}:{col}: {}: {}", self.code, self.message);
        if let (Some(exp), Some(act)) = (&self.expected, &self.actual) {
            out.push_str(&format!(" (expected {exp}, got {act})"));
        }
        out
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)?;
        if let (Some(exp), Some(act)) = (&self.expected, &self.actual) {
            write!(f, " (expected {exp}, got {act})")?;
        }
        Ok(())
    }
}

pub fn line_col(source: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(source.len());
    let mut line = 1;
    let mut col = 1;
    for b in source.as_bytes()[..offset].iter() {
        if *b == b'\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_points_at_line_and_column() {
        let src = "profile fqii\nsignature X where\n bad\n";
        let d = Diagnostic::new(Code::EParse, "unexpected token").with_span(Span::new(32, 35));
        assert_eq!(
            d.render_line("x.sig", src),
            "x.sig:3:2: E_PARSE: unexpected token"
        );
    }

    #[test]
    fn json_uses_wire_codes() {
        let d = Diagnostic::new(Code::EProfileMissing, "no profile header");
        let js = serde_json::to_value(&d).unwrap();
        assert_eq!(js["code"], "E_PROFILE_MISSING");
    }
}
