use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::Basis;
use crate::error::{Error, Result};

use super::{format_word, toggle, word_endpoint, Generator, Word};

/// Components `t_i(y, a_1, .., a_{i-1})` of a morphism between type A
/// structures, stored sparsely like a type A table.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MorphismA {
    source: Vec<Generator>,
    target: Vec<Generator>,
    components: BTreeMap<(usize, Word), BTreeSet<usize>>,
}

impl MorphismA {
    pub fn new(source: Vec<Generator>, target: Vec<Generator>) -> Self {
        MorphismA {
            source,
            target,
            components: BTreeMap::new(),
        }
    }

    /// The identity: `t_1(y) = y`, no higher components.
    pub fn identity(generators: Vec<Generator>) -> Self {
        let mut t = MorphismA::new(generators.clone(), generators);
        for g in 0..t.source.len() {
            t.components.insert((g, Vec::new()), BTreeSet::from([g]));
        }
        t
    }

    pub fn add_component(&mut self, gen: usize, word: Word, output: usize) -> Result<()> {
        if gen >= self.source.len() {
            return Err(Error::GeneratorIndex(gen));
        }
        if output >= self.target.len() {
            return Err(Error::GeneratorIndex(output));
        }
        if let Some(i) = word.iter().find(|b| b.is_idempotent()) {
            return Err(Error::IdempotentInput(i.to_string()));
        }
        let key = (gen, word);
        let entry = self.components.entry(key.clone()).or_default();
        toggle(entry, output);
        if entry.is_empty() {
            self.components.remove(&key);
        }
        Ok(())
    }

    pub fn source(&self) -> &[Generator] {
        &self.source
    }

    pub fn target(&self) -> &[Generator] {
        &self.target
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &Word, &BTreeSet<usize>)> + '_ {
        self.components.iter().map(|((g, w), out)| (*g, w, out))
    }

    pub fn component(&self, gen: usize, word: &[Basis]) -> BTreeSet<usize> {
        self.components
            .get(&(gen, word.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn validate_idempotents(&self) -> Result<()> {
        for ((g, w), outs) in &self.components {
            let y = &self.source[*g];
            let end = word_endpoint(y.idem, w).ok_or_else(|| {
                Error::IncompatibleIdempotents(format!(
                    "component {} ; {} does not compose",
                    y.name,
                    format_word(w)
                ))
            })?;
            if let Some(z) = outs
                .iter()
                .map(|&z| &self.target[z])
                .find(|z| z.idem != end)
            {
                return Err(Error::IncompatibleIdempotents(format!(
                    "component {} ; {} -> {} lands in {}, expected {}",
                    y.name,
                    format_word(w),
                    z.name,
                    z.idem,
                    end
                )));
            }
        }
        Ok(())
    }
}
