//! Grammar checking. The local checker flags only gross violations; the
//! remote checker, when configured, is authoritative and falls back to the
//! local rules if unreachable.

use serde::Deserialize;

use super::providers::{get_json, http_agent};
use super::Warnings;
use crate::text::{PosTag, Token};
use crate::Result;

pub const DETERMINERS: [&str; 7] = ["a", "an", "the", "this", "that", "these", "those"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrammarVerdict {
    Ok,
    Violations(Vec<String>),
}

impl GrammarVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, GrammarVerdict::Ok)
    }
}

pub trait GrammarChecker: Send + Sync {
    fn check(&self, sentence: &[Token]) -> GrammarVerdict;
}

/// Rule-based checker: empty sentence, duplicate adjacent tokens
/// (case-insensitive), determiner directly before a verb.
#[derive(Debug, Default, Clone, Copy)]
pub struct LocalGrammar;

impl GrammarChecker for LocalGrammar {
    fn check(&self, sentence: &[Token]) -> GrammarVerdict {
        let mut violations = Vec::new();
        if sentence.is_empty() {
            violations.push("empty sentence".to_string());
        }
        for pair in sentence.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            if a.key() == b.key() {
                violations.push(format!("duplicate adjacent token '{}'", b.key()));
            }
            if DETERMINERS.contains(&a.key().as_str()) && b.is_word() && b.pos == PosTag::Verb {
                violations.push(format!("determiner '{}' directly before verb '{}'", a.key(), b.key()));
            }
        }
        if violations.is_empty() {
            GrammarVerdict::Ok
        } else {
            GrammarVerdict::Violations(violations)
        }
    }
}

#[derive(Deserialize)]
struct GrammarResponse {
    ok: bool,
    #[serde(default)]
    violations: Vec<String>,
}

/// Remote checker: `GET {url}?word=<space-joined sentence>` returning
/// `{"ok": bool, "violations": [...]}`.
pub struct RemoteGrammar {
    url: String,
    agent: ureq::Agent,
    local: LocalGrammar,
    warnings: Warnings,
}

impl RemoteGrammar {
    pub fn new(url: &str) -> RemoteGrammar {
        RemoteGrammar {
            url: url.into(),
            agent: http_agent(),
            local: LocalGrammar,
            warnings: Warnings::default(),
        }
    }

    fn query(&self, sentence: &str) -> Result<GrammarResponse> {
        get_json(&self.agent, &self.url, sentence)
    }

    pub fn warnings(&self) -> Vec<String> {
        self.warnings.snapshot()
    }
}

impl GrammarChecker for RemoteGrammar {
    fn check(&self, sentence: &[Token]) -> GrammarVerdict {
        let joined: Vec<&str> = sentence.iter().map(|t| t.surface.as_str()).collect();
        match self.query(&joined.join(" ")) {
            Ok(resp) if resp.ok => GrammarVerdict::Ok,
            Ok(resp) => GrammarVerdict::Violations(resp.violations),
            Err(e) => {
                self.warnings.push(format!("grammar service unreachable: {e}; using local rules"));
                self.local.check(sentence)
            }
        }
    }
}
