use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{Basis, Idempotent};
use crate::error::{Error, Result};

use super::{format_word, toggle, word_endpoint, Word};

/// A bimodule generator: the left idempotent faces the type D side
/// (algebra outputs), the right idempotent faces the type A side (inputs).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DaGenerator {
    pub name: String,
    pub left: Idempotent,
    pub right: Idempotent,
}

/// A type DA structure given by its one-output maps `δ^j_1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypeDAStructure {
    generators: Vec<DaGenerator>,
    deltas: BTreeMap<(usize, Word), BTreeSet<(Basis, usize)>>,
}

impl TypeDAStructure {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_generator(
        &mut self,
        name: impl Into<String>,
        left: Idempotent,
        right: Idempotent,
    ) -> usize {
        self.generators.push(DaGenerator {
            name: name.into(),
            left,
            right,
        });
        self.generators.len() - 1
    }

    /// Toggles `label ⊗ output` in `δ^{j}_1(gen, word)`, `j = word.len() + 1`.
    pub fn add_delta(&mut self, gen: usize, word: Word, label: Basis, output: usize) -> Result<()> {
        for g in [gen, output] {
            if g >= self.generators.len() {
                return Err(Error::GeneratorIndex(g));
            }
        }
        if let Some(i) = word.iter().find(|b| b.is_idempotent()) {
            return Err(Error::IdempotentInput(i.to_string()));
        }
        let key = (gen, word);
        let entry = self.deltas.entry(key.clone()).or_default();
        toggle(entry, (label, output));
        if entry.is_empty() {
            self.deltas.remove(&key);
        }
        Ok(())
    }

    pub fn generators(&self) -> &[DaGenerator] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &DaGenerator {
        &self.generators[i]
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn deltas(&self) -> impl Iterator<Item = (usize, &Word, &BTreeSet<(Basis, usize)>)> + '_ {
        self.deltas.iter().map(|((g, w), out)| (*g, w, out))
    }

    /// Stored entries whose source generator is `gen`.
    pub(crate) fn deltas_from(
        &self,
        gen: usize,
    ) -> impl Iterator<Item = (&Word, &BTreeSet<(Basis, usize)>)> + '_ {
        self.deltas
            .range((gen, Vec::new())..)
            .take_while(move |((g, _), _)| *g == gen)
            .map(|((_, w), out)| (w, out))
    }

    pub fn delta_count(&self) -> usize {
        self.deltas.values().map(|s| s.len()).sum()
    }

    /// Largest `j` with a stored `δ^j_1`; zero when there are none.
    pub fn max_arity(&self) -> usize {
        self.deltas
            .keys()
            .map(|(_, w)| w.len() + 1)
            .max()
            .unwrap_or(0)
    }

    /// `δ^{j}_1(gen, word)` with strict unitality on idempotent inputs.
    pub fn delta(&self, gen: usize, word: &[Basis]) -> BTreeSet<(Basis, usize)> {
        if let [b] = word {
            if let Some(i) = b.as_idempotent() {
                let g = &self.generators[gen];
                return if g.right == i {
                    BTreeSet::from([(g.left.basis(), gen)])
                } else {
                    BTreeSet::new()
                };
            }
        }
        if word.iter().any(|b| b.is_idempotent()) {
            return BTreeSet::new();
        }
        self.deltas
            .get(&(gen, word.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn validate_idempotents(&self) -> Result<()> {
        for ((g, w), outs) in &self.deltas {
            let x = &self.generators[*g];
            let end = word_endpoint(x.right, w).ok_or_else(|| {
                Error::IncompatibleIdempotents(format!(
                    "da {} ; {} does not compose from {}",
                    x.name,
                    format_word(w),
                    x.right
                ))
            })?;
            for &(label, z) in outs {
                let z = &self.generators[z];
                if z.right != end || label.source() != x.left || label.target() != z.left {
                    return Err(Error::IncompatibleIdempotents(format!(
                        "da {} ; {} -> {} {}",
                        x.name,
                        format_word(w),
                        label,
                        z.name
                    )));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Basis::*;
    use Idempotent::{I1, I2};

    #[test]
    fn unital_input_passes_through() {
        let mut da = TypeDAStructure::new();
        let q = da.add_generator("q", I1, I2);
        assert_eq!(da.delta(q, &[Basis::I2]), BTreeSet::from([(Basis::I1, q)]));
        assert!(da.delta(q, &[Basis::I1]).is_empty());
    }

    #[test]
    fn coherence() {
        let mut da = TypeDAStructure::new();
        let q = da.add_generator("q", I2, I2);
        let r = da.add_generator("r", I2, I1);
        da.add_delta(q, vec![R23], R23, q).unwrap();
        assert!(da.validate_idempotents().is_ok());
        da.add_delta(r, vec![], R2, q).unwrap();
        // r's right idempotent i1 differs from q's right idempotent i2
        assert!(da.validate_idempotents().is_err());
        assert_eq!(da.max_arity(), 2);
        assert_eq!(da.deltas_from(q).count(), 1);
    }
}
