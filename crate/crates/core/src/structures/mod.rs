//! Type D, type A and type DA structures over the torus algebra, with
//! checkers for their structure equations.

use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::{Basis, Idempotent};

mod morphism;
mod type_a;
mod type_d;
mod type_da;

pub use morphism::MorphismA;
pub use type_a::{TypeAStructure, Violation};
pub use type_d::{Edge, TypeDStructure};
pub use type_da::{DaGenerator, TypeDAStructure};

/// A basis generator with its idempotent decoration.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub idem: Idempotent,
}

impl Generator {
    pub fn new(name: impl Into<String>, idem: Idempotent) -> Self {
        Generator {
            name: name.into(),
            idem,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// Any of the three structure kinds, as read from a file or the catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyStructure {
    D(TypeDStructure),
    A(TypeAStructure),
    DA(TypeDAStructure),
}

impl AnyStructure {
    pub fn kind(&self) -> &'static str {
        match self {
            AnyStructure::D(_) => "typeD",
            AnyStructure::A(_) => "typeA",
            AnyStructure::DA(_) => "typeDA",
        }
    }
}

/// A word of algebra inputs.
pub type Word = Vec<Basis>;

/// GF(2) accumulation into a set: inserting a present element removes it.
pub(crate) fn toggle<T: Ord>(set: &mut BTreeSet<T>, value: T) {
    if !set.remove(&value) {
        set.insert(value);
    }
}

/// Follows a word through the quiver from `start`; returns the idempotent it
/// ends at, or `None` if consecutive letters do not compose.
pub fn word_endpoint(start: Idempotent, word: &[Basis]) -> Option<Idempotent> {
    let mut at = start;
    for b in word {
        if b.source() != at {
            return None;
        }
        at = b.target();
    }
    Some(at)
}

pub(crate) fn format_word(word: &[Basis]) -> String {
    if word.is_empty() {
        return "()".to_string();
    }
    word.iter().map(|b| b.token()).collect::<Vec<_>>().join(" ")
}

/// All idempotent-coherent Reeb words of length `0..=max_len` starting at
/// `start`, in depth-first lexicographic order.
pub fn coherent_reeb_words(start: Idempotent, max_len: usize) -> Vec<Word> {
    fn go(at: Idempotent, max_len: usize, cur: &mut Word, out: &mut Vec<Word>) {
        out.push(cur.clone());
        if cur.len() == max_len {
            return;
        }
        for r in Basis::REEB {
            if r.source() == at {
                cur.push(r);
                go(r.target(), max_len, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(start, max_len, &mut Vec::new(), &mut out);
    out
}
