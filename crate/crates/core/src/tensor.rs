//! Box tensor products over the idempotent ring: `A ⊠ D` (a chain
//! complex), `A ⊠ DA` (a type A structure) and `DA ⊠ D` (a type D
//! structure).

use std::collections::{BTreeSet, HashMap};

use crate::algebra::Basis;
use crate::error::{Error, Result};
use crate::homology::{verify_d_squared, Gf2Matrix};
use crate::par::{self, Execution};
use crate::structures::{toggle, TypeAStructure, TypeDAStructure, TypeDStructure, Word};

/// Separator used when naming tensor generators.
pub const TENSOR_SEP: &str = "⊗";

/// A generator of a chain complex, remembering the pair it came from when it
/// was produced by a box product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexGenerator {
    pub name: String,
    pub provenance: Option<(usize, usize)>,
}

/// A finite GF(2) chain complex. Column `j` of the boundary matrix lists the
/// generators in `∂(g_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    generators: Vec<ComplexGenerator>,
    boundary: Gf2Matrix,
}

impl ChainComplex {
    /// Errors with `NotAComplex` unless `∂² = 0`.
    pub fn new(generators: Vec<ComplexGenerator>, boundary: Gf2Matrix) -> Result<Self> {
        let c = Self::new_unchecked(generators, boundary);
        if verify_d_squared(&c) {
            Ok(c)
        } else {
            Err(Error::NotAComplex)
        }
    }

    pub fn new_unchecked(generators: Vec<ComplexGenerator>, boundary: Gf2Matrix) -> Self {
        assert_eq!(boundary.rows(), generators.len(), "boundary must be square");
        assert_eq!(boundary.cols(), generators.len(), "boundary must be square");
        ChainComplex {
            generators,
            boundary,
        }
    }

    /// A complex with anonymous generators `g0, g1, ..`.
    pub fn from_boundary(boundary: Gf2Matrix) -> Result<Self> {
        let gens = anonymous(boundary.cols());
        Self::new(gens, boundary)
    }

    pub fn from_boundary_unchecked(boundary: Gf2Matrix) -> Self {
        let gens = anonymous(boundary.cols());
        Self::new_unchecked(gens, boundary)
    }

    pub fn generators(&self) -> &[ComplexGenerator] {
        &self.generators
    }

    pub fn boundary(&self) -> &Gf2Matrix {
        &self.boundary
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Index of the generator produced from the pair `(a, d)`.
    pub fn find_pair(&self, a: usize, d: usize) -> Option<usize> {
        self.generators
            .iter()
            .position(|g| g.provenance == Some((a, d)))
    }
}

fn anonymous(n: usize) -> Vec<ComplexGenerator> {
    (0..n)
        .map(|i| ComplexGenerator {
            name: format!("g{i}"),
            provenance: None,
        })
        .collect()
}

pub(crate) fn pair_name(left: &str, right: &str) -> String {
    format!("{left}{TENSOR_SEP}{right}")
}

/// `A ⊠ D` with the default execution policy.
pub fn box_a_d(a: &TypeAStructure, d: &TypeDStructure) -> Result<ChainComplex> {
    box_a_d_with(a, d, Execution::default())
}

/// `δ^⊠(y ⊗ x) = Σ_k m_{k+1}(y, δ_k(x))`.
///
/// Paths in `D` are cut at length `K - 1`, where `K` is the largest arity
/// `A` can realise; every longer term is killed by `m`. This is what makes
/// the product finite against unbounded `D` such as `D_N`.
pub fn box_a_d_with(
    a: &TypeAStructure,
    d: &TypeDStructure,
    exec: Execution,
) -> Result<ChainComplex> {
    a.validate_idempotents()?;
    d.validate_idempotents()?;
    let max_path = a.effective_arity() - 1;

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    for (y, gy) in a.generators().iter().enumerate() {
        for (x, gx) in d.generators().iter().enumerate() {
            if gy.idem == gx.idem {
                index.insert((y, x), pairs.len());
                pairs.push((y, x));
            }
        }
    }

    let paths: Vec<Vec<BTreeSet<(Word, usize)>>> =
        par::map_range(d.len(), exec, |x| d.deltas_up_to(x, max_path));

    let columns: Vec<Result<Vec<usize>>> = par::map_slice(&pairs, exec, |&(y, x)| {
        let mut col = BTreeSet::new();
        for level in &paths[x] {
            for (word, end) in level {
                for z in a.eval(y, word) {
                    let i = index.get(&(z, *end)).ok_or_else(|| {
                        Error::IncompatibleIdempotents(format!(
                            "{} and {} land in different idempotents",
                            a.generator(z).name,
                            d.generator(*end).name
                        ))
                    })?;
                    toggle(&mut col, *i);
                }
            }
        }
        Ok(col.into_iter().collect())
    });
    let columns = columns.into_iter().collect::<Result<Vec<_>>>()?;

    let generators = pairs
        .iter()
        .map(|&(y, x)| ComplexGenerator {
            name: pair_name(&a.generator(y).name, &d.generator(x).name),
            provenance: Some((y, x)),
        })
        .collect();
    ChainComplex::new(generators, Gf2Matrix::from_columns(pairs.len(), columns))
}

/// `A ⊠ DA` with the default execution policy.
pub fn box_a_da(a: &TypeAStructure, da: &TypeDAStructure) -> Result<TypeAStructure> {
    box_a_da_with(a, da, Execution::default())
}

/// `m^⊠(x ⊗ y, a_1..a_{i-1}) = Σ_j m_{j+1}(x, b_1..b_j) ⊗ y'` where
/// `b_1..b_j ⊗ y'` runs over chains of one-output maps `δ^•_1` of the DA
/// structure consuming `a_1..a_{i-1}` in consecutive (possibly empty)
/// chunks, plus `m_1(x) ⊗ y` on the empty word.
///
/// Generators pair `x` with DA generators whose left idempotent matches;
/// the product generator carries the DA right idempotent.
pub fn box_a_da_with(
    a: &TypeAStructure,
    da: &TypeDAStructure,
    exec: Execution,
) -> Result<TypeAStructure> {
    a.validate_idempotents()?;
    da.validate_idempotents()?;
    let max_outputs = a.effective_arity() - 1;

    let mut out = TypeAStructure::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    for (x, gx) in a.generators().iter().enumerate() {
        for (y, gy) in da.generators().iter().enumerate() {
            if gx.idem == gy.left {
                let i = out.add_generator(pair_name(&gx.name, &gy.name), gy.right);
                index.insert((x, y), i);
                pairs.push((x, y));
            }
        }
    }

    // Each pair contributes a GF(2) list of (word, output pair) entries.
    let contributions: Vec<Vec<(Word, (usize, usize))>> =
        par::map_slice(&pairs, exec, |&(x, y)| {
            let mut acc: Vec<(Word, (usize, usize))> = Vec::new();
            for z in a.eval(x, &[]) {
                acc.push((Vec::new(), (z, y)));
            }
            let mut consumed = Vec::new();
            let mut outputs = Vec::new();
            chains(
                a,
                da,
                x,
                y,
                max_outputs,
                &mut consumed,
                &mut outputs,
                &mut acc,
            );
            acc
        });

    for ((x, y), entries) in pairs.iter().zip(contributions) {
        let src = index[&(*x, *y)];
        for (word, (z, w)) in entries {
            let dst = *index.get(&(z, w)).ok_or_else(|| {
                Error::IncompatibleIdempotents(format!(
                    "{} and {} do not pair",
                    a.generator(z).name,
                    da.generator(w).name
                ))
            })?;
            out.add_op(src, word, dst)?;
        }
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn chains(
    a: &TypeAStructure,
    da: &TypeDAStructure,
    x: usize,
    at: usize,
    max_outputs: usize,
    consumed: &mut Word,
    outputs: &mut Vec<Basis>,
    acc: &mut Vec<(Word, (usize, usize))>,
) {
    if outputs.len() == max_outputs {
        return;
    }
    for (chunk, outs) in da.deltas_from(at) {
        for &(b, next) in outs {
            consumed.extend_from_slice(chunk);
            outputs.push(b);
            for z in a.eval(x, outputs) {
                acc.push((consumed.clone(), (z, next)));
            }
            chains(a, da, x, next, max_outputs, consumed, outputs, acc);
            outputs.pop();
            consumed.truncate(consumed.len() - chunk.len());
        }
    }
}

/// `DA ⊠ D` with the default execution policy.
pub fn box_da_d(da: &TypeDAStructure, d: &TypeDStructure) -> Result<TypeDStructure> {
    box_da_d_with(da, d, Execution::default())
}

/// `δ_1(y ⊗ x) = Σ_k δ^{k+1}_1(y, δ_k(x))`, pairing DA right idempotents
/// with D idempotents. Paths in `D` are cut at the largest stored DA arity
/// (at least one step, so idempotent edges pass through unitally).
pub fn box_da_d_with(
    da: &TypeDAStructure,
    d: &TypeDStructure,
    exec: Execution,
) -> Result<TypeDStructure> {
    da.validate_idempotents()?;
    d.validate_idempotents()?;
    let max_path = da.max_arity().max(2) - 1;

    let mut out = TypeDStructure::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    for (y, gy) in da.generators().iter().enumerate() {
        for (x, gx) in d.generators().iter().enumerate() {
            if gy.right == gx.idem {
                let i = out.add_generator(pair_name(&gy.name, &gx.name), gy.left);
                index.insert((y, x), i);
                pairs.push((y, x));
            }
        }
    }

    let edges: Vec<Vec<(Basis, (usize, usize))>> = par::map_slice(&pairs, exec, |&(y, x)| {
        let mut acc = Vec::new();
        for level in d.deltas_up_to(x, max_path) {
            for (word, end) in level {
                for (b, z) in da.delta(y, &word) {
                    acc.push((b, (z, end)));
                }
            }
        }
        acc
    });

    for ((y, x), targets) in pairs.iter().zip(edges) {
        let src = index[&(*y, *x)];
        for (b, key) in targets {
            let dst = *index.get(&key).ok_or_else(|| {
                Error::IncompatibleIdempotents(format!(
                    "{} and {} do not pair",
                    da.generator(key.0).name,
                    d.generator(key.1).name
                ))
            })?;
            out.add_edge(src, dst, b)?;
        }
    }
    Ok(out)
}
