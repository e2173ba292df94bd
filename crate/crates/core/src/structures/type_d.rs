use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{AlgebraElement, Basis, Idempotent};
use crate::error::{Error, Result};

use super::{toggle, Generator, Word};

/// One summand `label ⊗ to` of `δ_1(from)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: Basis,
}

/// A type D structure, stored as a decorated directed graph.
///
/// The edge set is a GF(2) set: adding an edge that is already present
/// removes it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypeDStructure {
    generators: Vec<Generator>,
    edges: BTreeSet<Edge>,
}

impl TypeDStructure {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_generator(&mut self, name: impl Into<String>, idem: Idempotent) -> usize {
        self.generators.push(Generator::new(name, idem));
        self.generators.len() - 1
    }

    pub fn add_edge(&mut self, from: usize, to: usize, label: Basis) -> Result<()> {
        for g in [from, to] {
            if g >= self.generators.len() {
                return Err(Error::GeneratorIndex(g));
            }
        }
        toggle(&mut self.edges, Edge { from, to, label });
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

    /// Edges in canonical `(from, to, label)` order.
    pub fn edges(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn out_edges(&self, from: usize) -> impl Iterator<Item = &Edge> + '_ {
        let lo = Edge {
            from,
            to: 0,
            label: Basis::I1,
        };
        self.edges.range(lo..).take_while(move |e| e.from == from)
    }

    /// Total coefficient of `to` in `δ_1(from)`.
    pub fn coefficient(&self, from: usize, to: usize) -> AlgebraElement {
        self.out_edges(from)
            .filter(|e| e.to == to)
            .map(|e| e.label)
            .collect()
    }

    pub fn validate_idempotents(&self) -> Result<()> {
        for e in &self.edges {
            let (x, y) = (&self.generators[e.from], &self.generators[e.to]);
            if e.label.source() != x.idem || e.label.target() != y.idem {
                return Err(Error::IncompatibleIdempotents(format!(
                    "edge {} -> {} labeled {} ({} -> {} needs {} -> {})",
                    x.name,
                    y.name,
                    e.label,
                    x.idem,
                    y.idem,
                    e.label.source(),
                    e.label.target()
                )));
            }
        }
        Ok(())
    }

    /// Finds `(x, product, z)` where the number of two-edge paths
    /// `x -> y -> z` whose labels multiply to `product` is odd.
    pub fn structure_equation_violation(&self) -> Option<(usize, Basis, usize)> {
        for x in 0..self.len() {
            let mut parity: BTreeSet<(usize, Basis)> = BTreeSet::new();
            for e1 in self.out_edges(x) {
                for e2 in self.out_edges(e1.to) {
                    if let Some(c) = e1.label.mul(e2.label) {
                        toggle(&mut parity, (e2.to, c));
                    }
                }
            }
            if let Some(&(z, c)) = parity.iter().next() {
                return Some((x, c, z));
            }
        }
        None
    }

    /// Whether `(μ ⊗ id) ∘ (id ⊗ δ_1) ∘ δ_1 = 0`.
    pub fn check(&self) -> Result<bool> {
        self.validate_idempotents()?;
        Ok(self.structure_equation_violation().is_none())
    }

    /// `δ_k(x)` as a GF(2) set of (label word, endpoint). Words are pure
    /// tensors: labels are not multiplied.
    pub fn delta_k(&self, x: usize, k: usize) -> Result<BTreeSet<(Word, usize)>> {
        if x >= self.len() {
            return Err(Error::GeneratorIndex(x));
        }
        let mut frontier: BTreeMap<(Word, usize), bool> = BTreeMap::new();
        frontier.insert((Vec::new(), x), true);
        for _ in 0..k {
            let mut next: BTreeMap<(Word, usize), bool> = BTreeMap::new();
            for ((word, at), odd) in frontier {
                if !odd {
                    continue;
                }
                for e in self.out_edges(at) {
                    let mut w = word.clone();
                    w.push(e.label);
                    *next.entry((w, e.to)).or_insert(false) ^= true;
                }
            }
            frontier = next;
        }
        Ok(frontier
            .into_iter()
            .filter(|(_, odd)| *odd)
            .map(|(k, _)| k)
            .collect())
    }

    /// `δ_0(x), ..., δ_max(x)`.
    pub(crate) fn deltas_up_to(&self, x: usize, max: usize) -> Vec<BTreeSet<(Word, usize)>> {
        (0..=max)
            .map(|k| self.delta_k(x, k).expect("index checked by caller"))
            .collect()
    }

    /// Bounded iff the edge graph has no directed cycle (self-loops count).
    pub fn is_bounded(&self) -> bool {
        // Kahn's algorithm on the underlying simple graph.
        let n = self.len();
        let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for e in &self.edges {
            succ[e.from].insert(e.to);
        }
        let mut indeg = vec![0usize; n];
        for s in &succ {
            for &t in s {
                indeg[t] += 1;
            }
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &t in &succ[v] {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    stack.push(t);
                }
            }
        }
        seen == n
    }
}
