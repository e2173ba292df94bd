use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::algebra::{Basis, Idempotent};
use crate::error::{Error, Result};
use crate::par::{self, Execution};

use super::{coherent_reeb_words, format_word, toggle, word_endpoint, Generator, Word};

/// A bounded type A structure.
///
/// Only operations with Reeb inputs are stored. Idempotent inputs follow
/// strict unitality: `m_2(y, i)` is `y` when `i` is the idempotent of `y`
/// and zero otherwise, and every higher operation with an idempotent input
/// vanishes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypeAStructure {
    generators: Vec<Generator>,
    ops: BTreeMap<(usize, Word), BTreeSet<usize>>,
}

/// A generator and input word at which the A∞ relation fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub generator: usize,
    pub word: Word,
    /// The nonzero left-hand side of the relation.
    pub residue: BTreeSet<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "generator #{} on word {}",
            self.generator,
            format_word(&self.word)
        )
    }
}

impl TypeAStructure {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_generator(&mut self, name: impl Into<String>, idem: Idempotent) -> usize {
        self.generators.push(Generator::new(name, idem));
        self.generators.len() - 1
    }

    /// Toggles `output` in `m_{k}(gen, word)`, `k = word.len() + 1`.
    pub fn add_op(&mut self, gen: usize, word: Word, output: usize) -> Result<()> {
        for g in [gen, output] {
            if g >= self.generators.len() {
                return Err(Error::GeneratorIndex(g));
            }
        }
        if let Some(i) = word.iter().find(|b| b.is_idempotent()) {
            return Err(Error::IdempotentInput(i.to_string()));
        }
        let key = (gen, word);
        let entry = self.ops.entry(key.clone()).or_default();
        toggle(entry, output);
        if entry.is_empty() {
            self.ops.remove(&key);
        }
        Ok(())
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &Generator {
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

    /// Stored table entries in canonical order.
    pub fn ops(&self) -> impl Iterator<Item = (usize, &Word, &BTreeSet<usize>)> + '_ {
        self.ops.iter().map(|((g, w), out)| (*g, w, out))
    }

    pub fn op_count(&self) -> usize {
        self.ops.values().map(|s| s.len()).sum()
    }

    pub fn stored(&self, gen: usize, word: &[Basis]) -> Option<&BTreeSet<usize>> {
        // BTreeMap lookup needs an owned key of the same type.
        self.ops.get(&(gen, word.to_vec()))
    }

    /// Largest `k` with a stored `m_k`; zero for an empty table.
    pub fn max_arity(&self) -> usize {
        self.ops.keys().map(|(_, w)| w.len() + 1).max().unwrap_or(0)
    }

    /// Largest arity that can be nonzero once the unital `m_2(y, i)` is
    /// counted.
    pub(crate) fn effective_arity(&self) -> usize {
        self.max_arity().max(2)
    }

    pub fn is_nice(&self) -> bool {
        self.max_arity() <= 2
    }

    /// `m_{k}(gen, word)` including the strictly unital idempotent action.
    pub fn eval(&self, gen: usize, word: &[Basis]) -> BTreeSet<usize> {
        if let [b] = word {
            if let Some(i) = b.as_idempotent() {
                return if self.generators[gen].idem == i {
                    BTreeSet::from([gen])
                } else {
                    BTreeSet::new()
                };
            }
        }
        if word.iter().any(|b| b.is_idempotent()) {
            return BTreeSet::new();
        }
        self.stored(gen, word).cloned().unwrap_or_default()
    }

    pub fn validate_idempotents(&self) -> Result<()> {
        for ((g, w), outs) in &self.ops {
            let y = &self.generators[*g];
            let end = word_endpoint(y.idem, w).ok_or_else(|| {
                Error::IncompatibleIdempotents(format!(
                    "op {} ; {} does not compose from {}",
                    y.name,
                    format_word(w),
                    y.idem
                ))
            })?;
            for &z in outs {
                let z = &self.generators[z];
                if z.idem != end {
                    return Err(Error::IncompatibleIdempotents(format!(
                        "op {} ; {} -> {} lands in {} but the word ends at {}",
                        y.name,
                        format_word(w),
                        z.name,
                        z.idem,
                        end
                    )));
                }
            }
        }
        Ok(())
    }

    /// Left-hand side of the A∞ relation at `(x, word)`.
    pub fn relation_residue(&self, x: usize, word: &[Basis]) -> BTreeSet<usize> {
        let mut acc = BTreeSet::new();
        let len = word.len();
        // compositions m(m(x, a_1..a_{j-1}), a_j..a_{k-1})
        for split in 0..=len {
            for y in self.eval(x, &word[..split]) {
                for z in self.eval(y, &word[split..]) {
                    toggle(&mut acc, z);
                }
            }
        }
        // contractions m(x, .., a_j a_{j+1}, ..)
        for p in 0..len.saturating_sub(1) {
            if let Some(c) = word[p].mul(word[p + 1]) {
                let mut w = Vec::with_capacity(len - 1);
                w.extend_from_slice(&word[..p]);
                w.push(c);
                w.extend_from_slice(&word[p + 2..]);
                for z in self.eval(x, &w) {
                    toggle(&mut acc, z);
                }
            }
        }
        acc
    }

    /// Searches every coherent Reeb word of length up to `2K - 1` (beyond
    /// that each term has an operation of arity above `K`).
    pub fn structure_equation_violation_with(&self, exec: Execution) -> Option<Violation> {
        let k = self.max_arity();
        if k == 0 {
            return None;
        }
        let max_len = 2 * k - 1;
        let words = [Idempotent::I1, Idempotent::I2].map(|i| coherent_reeb_words(i, max_len));
        par::find_map_range(self.len(), exec, |x| {
            let ws = &words[self.generators[x].idem as usize];
            ws.iter().find_map(|w| {
                let residue = self.relation_residue(x, w);
                (!residue.is_empty()).then(|| Violation {
                    generator: x,
                    word: w.clone(),
                    residue,
                })
            })
        })
    }

    pub fn structure_equation_violation(&self) -> Option<Violation> {
        self.structure_equation_violation_with(Execution::default())
    }

    pub fn check_with(&self, exec: Execution) -> Result<bool> {
        self.validate_idempotents()?;
        Ok(self.structure_equation_violation_with(exec).is_none())
    }

    /// Whether the stored table satisfies the A∞ relations.
    pub fn check(&self) -> Result<bool> {
        self.check_with(Execution::default())
    }

    /// Errors with `InvalidStructure` unless [`check`](Self::check) passes.
    pub(crate) fn require_valid(&self) -> Result<()> {
        self.validate_idempotents()?;
        match self.structure_equation_violation() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidStructure(format!(
                "A-infinity relation fails at {} on word {}",
                self.generators[v.generator].name,
                format_word(&v.word)
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Basis::*;
    use Idempotent::{I1, I2};

    #[test]
    fn only_idempotent_actions_is_valid() {
        let mut a = TypeAStructure::new();
        a.add_generator("y", I1);
        a.add_generator("z", I2);
        assert!(a.check().unwrap());
        assert!(a.is_nice());
        assert_eq!(a.max_arity(), 0);
    }

    #[test]
    fn m1_squared_nonzero_fails() {
        let mut a = TypeAStructure::new();
        let y = a.add_generator("y", I2);
        a.add_op(y, vec![], y).unwrap();
        assert!(!a.check().unwrap());
        let v = a.structure_equation_violation().unwrap();
        assert!(v.word.is_empty());
    }

    #[test]
    fn unital_action() {
        let mut a = TypeAStructure::new();
        let y = a.add_generator("y", I2);
        assert_eq!(a.eval(y, &[Basis::I2]), BTreeSet::from([y]));
        assert!(a.eval(y, &[Basis::I1]).is_empty());
        assert!(a.eval(y, &[Basis::I2, R23]).is_empty());
    }

    #[test]
    fn idempotent_inputs_are_rejected() {
        let mut a = TypeAStructure::new();
        let y = a.add_generator("y", I2);
        assert!(matches!(
            a.add_op(y, vec![Basis::I2], y),
            Err(Error::IdempotentInput(_))
        ));
    }

    #[test]
    fn right_module_over_itself() {
        // basis of i2·A: i2, r2, r23; right multiplication only
        let mut a = TypeAStructure::new();
        let e = a.add_generator("i2", I2);
        let r2 = a.add_generator("r2", I1);
        let r23 = a.add_generator("r23", I2);
        a.add_op(e, vec![R2], r2).unwrap();
        a.add_op(e, vec![R23], r23).unwrap();
        a.add_op(r2, vec![R3], r23).unwrap();
        assert!(a.check().unwrap());
        // dropping the contraction partner breaks associativity at (e; r2 r3)
        a.add_op(r2, vec![R3], r23).unwrap();
        assert!(!a.check().unwrap());
    }

    #[test]
    fn m3_entry_is_not_nice() {
        let mut a = TypeAStructure::new();
        let y = a.add_generator("y", I1);
        let z = a.add_generator("z", I1);
        a.add_op(y, vec![R1, R2], z).unwrap();
        assert!(!a.is_nice());
        assert_eq!(a.max_arity(), 3);
    }

    #[test]
    fn incoherent_output_is_reported() {
        let mut a = TypeAStructure::new();
        let y = a.add_generator("y", I2);
        let z = a.add_generator("z", I2);
        a.add_op(y, vec![R2], z).unwrap();
        assert!(matches!(a.check(), Err(Error::IncompatibleIdempotents(_))));
    }
}
