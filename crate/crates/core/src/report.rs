//! Verdicts produced by the theorem verifiers.

use serde::Serialize;

use crate::network::{Network, PlayerSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub statement: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// A list of asserted claims plus informational notes. Notes never affect the verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub claims: Vec<Claim>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl TheoremReport {
    pub fn new(theorem: impl Into<String>) -> Self {
        TheoremReport {
            theorem: theorem.into(),
            claims: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn holds(&self) -> bool {
        self.claims.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| !c.holds)
    }

    pub fn claim(&mut self, statement: impl Into<String>, holds: bool, witness: Option<String>) {
        self.claims.push(Claim {
            statement: statement.into(),
            holds,
            witness: if holds { None } else { witness },
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Asserts `left == right` as network sets.
    pub fn sets_equal(&mut self, statement: impl Into<String>, ps: &PlayerSet, left: &[Network], right: &[Network]) {
        let only_left: Vec<Network> = left.iter().copied().filter(|g| !right.contains(g)).collect();
        let only_right: Vec<Network> = right.iter().copied().filter(|g| !left.contains(g)).collect();
        let holds = only_left.is_empty() && only_right.is_empty();
        let witness = format!(
            "only on the left: {}; only on the right: {}",
            format_set(ps, &only_left),
            format_set(ps, &only_right)
        );
        self.claim(statement, holds, Some(witness));
    }

    /// Asserts `left` is a subset of `right`.
    pub fn subset(&mut self, statement: impl Into<String>, ps: &PlayerSet, left: &[Network], right: &[Network]) {
        let missing: Vec<Network> = left.iter().copied().filter(|g| !right.contains(g)).collect();
        let witness = format!("not included: {}", format_set(ps, &missing));
        self.claim(statement, missing.is_empty(), Some(witness));
    }

    /// Asserts `left <=> right`; `detail` is only rendered on failure.
    pub fn equivalence(&mut self, statement: impl Into<String>, left: bool, right: bool, detail: impl FnOnce() -> String) {
        let holds = left == right;
        let witness = (!holds).then(|| format!("left side {left}, right side {right}; {}", detail()));
        self.claim(statement, holds, witness);
    }

    /// Appends another report's claims and notes, prefixing statements.
    pub fn absorb(&mut self, other: TheoremReport) {
        for c in other.claims {
            self.claims.push(Claim {
                statement: format!("{}: {}", other.theorem, c.statement),
                ..c
            });
        }
        self.notes.extend(other.notes);
    }
}

/// `{g0, {12}, gN}` style rendering.
pub fn format_set(ps: &PlayerSet, set: &[Network]) -> String {
    let parts: Vec<String> = set.iter().map(|&g| ps.display(g)).collect();
    format!("[{}]", parts.join(", "))
}
