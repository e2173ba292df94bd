//! Orbifold constructions: the cyclic type D structure `D_N`, the
//! copy-and-shift extension of type A structures, and the iterated
//! multi-component invariant.
//!
//! The extension of a type A structure `M` to `n` copies indexes generators
//! as `(y : j)`, `j = 1..n`, and sets
//!
//! ```text
//! m̄_k((y : j), a_1, .., a_{k-1}) = (m_k(y, a_1, .., a_{k-1}) : [j + l])
//! ```
//!
//! where `l` counts the inputs among ρ3, ρ23, ρ123 and `[·]` reduces into
//! `1..n` (see [`bracket`]).

use std::collections::BTreeSet;
use std::fmt;

pub use crate::algebra::shift_count;
use crate::algebra::{Basis, Idempotent};
use crate::error::{Error, Result};
use crate::homology::homology_rank;
use crate::par::{self, Execution};
use crate::structures::{Generator, MorphismA, TypeAStructure, TypeDAStructure, TypeDStructure};
use crate::tensor::{box_a_d_with, box_a_da_with};

/// The orders `n_1, .., n_N` of the singular components, in pipeline order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrbifoldOrders(Vec<usize>);

impl OrbifoldOrders {
    pub fn new(orders: Vec<usize>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::EmptyOrders);
        }
        if orders.contains(&0) {
            return Err(Error::InvalidOrder(0));
        }
        Ok(OrbifoldOrders(orders))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Product of all orders.
    pub fn product(&self) -> usize {
        self.0.iter().product()
    }
}

impl TryFrom<Vec<usize>> for OrbifoldOrders {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        OrbifoldOrders::new(v)
    }
}

impl TryFrom<&[usize]> for OrbifoldOrders {
    type Error = Error;

    fn try_from(v: &[usize]) -> Result<Self> {
        OrbifoldOrders::new(v.to_vec())
    }
}

/// Generator `(y : j)` of an orbifold extension: base index and copy
/// `1..=n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexedGenerator {
    pub base: usize,
    pub copy: usize,
}

impl IndexedGenerator {
    /// Position in the output of [`orb_extend`]: base-major, copies
    /// consecutive.
    pub fn index(self, n: usize) -> usize {
        self.base * n + (self.copy - 1)
    }

    pub fn from_index(i: usize, n: usize) -> Self {
        IndexedGenerator {
            base: i / n,
            copy: i % n + 1,
        }
    }
}

impl fmt::Display for IndexedGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {})", self.base, self.copy)
    }
}

fn indexed_name(base: &str, copy: usize) -> String {
    format!("{base}:{copy}")
}

/// `n` if `n` divides `j`, else `j mod n`. Always lands in `1..=n`.
pub fn bracket(j: usize, n: usize) -> usize {
    assert!(n >= 1, "bracket modulus must be positive");
    match j % n {
        0 => n,
        r => r,
    }
}

/// The type D structure of the orbifold solid torus of order `n`: `n`
/// generators in `i2` joined in a ρ23-cycle `x_1 -> x_2 -> .. -> x_n -> x_1`.
pub fn d_n(n: usize) -> Result<TypeDStructure> {
    if n == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let mut d = TypeDStructure::new();
    for j in 1..=n {
        d.add_generator(format!("x{j}"), Idempotent::I2);
    }
    for j in 0..n {
        d.add_edge(j, (j + 1) % n, Basis::R23)?;
    }
    Ok(d)
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidOrder(0))
    } else {
        Ok(())
    }
}

/// Orbifold extension of `a` to `n` copies. Errors with `InvalidStructure`
/// if `a` fails its A∞ relations.
pub fn orb_extend(a: &TypeAStructure, n: usize) -> Result<TypeAStructure> {
    check_order(n)?;
    a.require_valid()?;
    Ok(orb_extend_unchecked(a, n))
}

fn orb_extend_unchecked(a: &TypeAStructure, n: usize) -> TypeAStructure {
    let mut out = TypeAStructure::new();
    for g in a.generators() {
        for j in 1..=n {
            out.add_generator(indexed_name(&g.name, j), g.idem);
        }
    }
    for (y, word, zs) in a.ops() {
        let l = shift_count(word);
        for j in 1..=n {
            let src = IndexedGenerator { base: y, copy: j }.index(n);
            let copy = bracket(j + l, n);
            for &z in zs {
                let dst = IndexedGenerator { base: z, copy }.index(n);
                out.add_op(src, word.clone(), dst)
                    .expect("indices in range");
            }
        }
    }
    out
}

/// Result of comparing `orb_extend(A, n) ⊠ D_1` with `A ⊠ D_n` under
/// `T((y : j) ⊗ x) = y ⊗ x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma42Witness {
    /// `bijection[i]` is the index in `A ⊠ D_n` of `T(g_i)`.
    pub bijection: Vec<usize>,
    /// Whether `T ∘ ∂ = ∂ ∘ T` entrywise.
    pub intertwines: bool,
}

pub fn lemma42_witness(a: &TypeAStructure, n: usize) -> Result<Lemma42Witness> {
    check_order(n)?;
    let extended = orb_extend(a, n)?;
    let c1 = box_a_d_with(&extended, &d_n(1)?, Execution::default())?;
    let c2 = box_a_d_with(a, &d_n(n)?, Execution::default())?;

    let mut bijection = Vec::with_capacity(c1.len());
    for g in c1.generators() {
        let (ai, _) = g
            .provenance
            .expect("box product generators carry provenance");
        let IndexedGenerator { base, copy } = IndexedGenerator::from_index(ai, n);
        let target = c2.find_pair(base, copy - 1).ok_or_else(|| {
            Error::InvalidStructure(format!("no image for {} in A ⊠ D_{n}", g.name))
        })?;
        bijection.push(target);
    }
    let distinct: BTreeSet<_> = bijection.iter().collect();
    let mut intertwines = distinct.len() == bijection.len() && bijection.len() == c2.len();
    if intertwines {
        for (i, &ti) in bijection.iter().enumerate() {
            let image: BTreeSet<usize> = c1
                .boundary()
                .column(i)
                .iter()
                .map(|&r| bijection[r])
                .collect();
            let direct: BTreeSet<usize> = c2.boundary().column(ti).iter().copied().collect();
            if image != direct {
                intertwines = false;
                break;
            }
        }
    }
    Ok(Lemma42Witness {
        bijection,
        intertwines,
    })
}

/// Extension of `A ⊠ DA` with shifts read off the outer inputs:
/// `m̄̄_i((x⊗y : j), a..) = (m^⊠_i(x⊗y, a..) : [j + l(a..)])`.
///
/// Errors with `InvalidStructure` when the box product fails its A∞
/// relations, which is how an ill-formed bimodule is detected.
pub fn orb_extend_box_da(
    a: &TypeAStructure,
    da: &TypeDAStructure,
    n: usize,
) -> Result<TypeAStructure> {
    check_order(n)?;
    a.require_valid()?;
    let boxed = box_a_da_with(a, da, Execution::default())?;
    // The shift depends only on the outer word, so this is exactly the
    // plain extension of the box product.
    orb_extend(&boxed, n)
}

/// `T_i((x : j), a..) = (t_i(x, a..) : [j + l(a..)])`.
pub fn shift_morphism(t: &MorphismA, n: usize) -> Result<MorphismA> {
    check_order(n)?;
    t.validate_idempotents()?;
    let expand = |gens: &[Generator]| -> Vec<Generator> {
        gens.iter()
            .flat_map(|g| (1..=n).map(move |j| Generator::new(indexed_name(&g.name, j), g.idem)))
            .collect()
    };
    let mut out = MorphismA::new(expand(t.source()), expand(t.target()));
    for (x, word, zs) in t.components() {
        let l = shift_count(word);
        for j in 1..=n {
            let src = IndexedGenerator { base: x, copy: j }.index(n);
            let copy = bracket(j + l, n);
            for &z in zs {
                out.add_component(
                    src,
                    word.clone(),
                    IndexedGenerator { base: z, copy }.index(n),
                )?;
            }
        }
    }
    Ok(out)
}

/// The structure fed into the final box product: `a` extended successively
/// by `n_1, .., n_{N-1}`.
pub fn hfo_structure(a: &TypeAStructure, orders: &OrbifoldOrders) -> Result<TypeAStructure> {
    a.require_valid()?;
    let (_, shifts) = orders.as_slice().split_last().expect("orders are nonempty");
    let mut current = a.clone();
    for &n in shifts {
        // validity is preserved by the extension, so only the input is checked
        current = orb_extend_unchecked(&current, n);
    }
    Ok(current)
}

/// Rank over GF(2) of `H(CFA^orb ⊠ D_{n_N})` for the given ordering.
pub fn hfo(a: &TypeAStructure, orders: &OrbifoldOrders) -> Result<usize> {
    hfo_with(a, orders, Execution::default())
}

pub fn hfo_with(a: &TypeAStructure, orders: &OrbifoldOrders, exec: Execution) -> Result<usize> {
    let extended = hfo_structure(a, orders)?;
    let last = *orders.as_slice().last().expect("orders are nonempty");
    let complex = box_a_d_with(&extended, &d_n(last)?, exec)?;
    homology_rank(&complex)
}

/// Evaluates several orderings independently.
pub fn hfo_many(
    a: &TypeAStructure,
    orderings: &[OrbifoldOrders],
    exec: Execution,
) -> Vec<Result<usize>> {
    // each job runs its own box product sequentially; the fan-out is across jobs
    par::map_slice(orderings, exec, |o| hfo_with(a, o, Execution::Sequential))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{
        Basis::*,
        Idempotent::{I1, I2},
    };
    use crate::catalog::lens_space_cfa;

    fn orders(v: &[usize]) -> OrbifoldOrders {
        OrbifoldOrders::new(v.to_vec()).unwrap()
    }

    #[test]
    fn bracket_values() {
        assert_eq!(bracket(4, 2), 2);
        assert_eq!(bracket(5, 3), 2);
        assert_eq!(bracket(1, 1), 1);
        for j in 1..30 {
            assert_eq!(bracket(j, 1), 1);
            assert!((1..=4).contains(&bracket(j, 4)));
        }
    }

    #[test]
    fn dn_shape() {
        let d = d_n(1).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.edges().count(), 1);
        let d = d_n(3).unwrap();
        assert_eq!(
            d.delta_k(0, 2).unwrap(),
            BTreeSet::from([(vec![R23, R23], 2)])
        );
        assert_eq!(d_n(0), Err(Error::InvalidOrder(0)));
        let d1 = d_n(1).unwrap();
        assert_eq!(
            d1.delta_k(0, 5).unwrap(),
            BTreeSet::from([(vec![R23; 5], 0)])
        );
    }

    #[test]
    fn single_r23_entry_shifts() {
        // i2·A: y = i2, w = r2, z = r23
        let mut a = TypeAStructure::new();
        let y = a.add_generator("y", I2);
        let w = a.add_generator("w", I1);
        let z = a.add_generator("z", I2);
        a.add_op(y, vec![R2], w).unwrap();
        a.add_op(y, vec![R23], z).unwrap();
        a.add_op(w, vec![R3], z).unwrap();
        let e = orb_extend(&a, 2).unwrap();
        let at = |s: &str| e.find(s).unwrap();
        assert_eq!(e.eval(at("y:1"), &[R23]), BTreeSet::from([at("z:2")]));
        assert_eq!(e.eval(at("y:2"), &[R23]), BTreeSet::from([at("z:1")]));
        assert_eq!(e.eval(at("y:1"), &[R2]), BTreeSet::from([at("w:1")]));
        assert_eq!(e.eval(at("w:2"), &[R3]), BTreeSet::from([at("z:1")]));
        assert!(e.check().unwrap());
    }

    #[test]
    fn lens_extension() {
        let e = orb_extend(&lens_space_cfa(3).unwrap(), 2).unwrap();
        assert_eq!(e.len(), 6);
        assert_eq!(e.op_count(), 0);
    }

    #[test]
    fn extension_by_one_is_relabeling() {
        let mut a = TypeAStructure::new();
        let y = a.add_generator("y", I1);
        let z = a.add_generator("z", I2);
        a.add_op(y, vec![R1], z).unwrap();
        let e = orb_extend(&a, 1).unwrap();
        let ops: Vec<_> = e.ops().map(|(g, w, o)| (g, w.clone(), o.clone())).collect();
        let base: Vec<_> = a.ops().map(|(g, w, o)| (g, w.clone(), o.clone())).collect();
        assert_eq!(ops, base);
    }

    #[test]
    fn invalid_input_rejected() {
        let mut a = TypeAStructure::new();
        let y = a.add_generator("y", I2);
        a.add_op(y, vec![], y).unwrap();
        assert!(matches!(orb_extend(&a, 2), Err(Error::InvalidStructure(_))));
        assert!(matches!(
            hfo(&a, &orders(&[2])),
            Err(Error::InvalidStructure(_))
        ));
        assert_eq!(
            orb_extend(&lens_space_cfa(2).unwrap(), 0),
            Err(Error::InvalidOrder(0))
        );
    }

    #[test]
    fn lens_hfo_values() {
        let a = lens_space_cfa(3).unwrap();
        assert_eq!(hfo(&a, &orders(&[2, 3])).unwrap(), 18);
        assert_eq!(hfo(&lens_space_cfa(5).unwrap(), &orders(&[1])).unwrap(), 5);
        assert_eq!(
            hfo(&lens_space_cfa(2).unwrap(), &orders(&[2, 2, 2])).unwrap(),
            16
        );
    }

    #[test]
    fn orders_validation() {
        assert_eq!(OrbifoldOrders::new(vec![]), Err(Error::EmptyOrders));
        assert_eq!(OrbifoldOrders::new(vec![2, 0]), Err(Error::InvalidOrder(0)));
        assert_eq!(orders(&[2, 3, 4]).product(), 24);
    }

    #[test]
    fn witness_on_lens() {
        let w = lemma42_witness(&lens_space_cfa(2).unwrap(), 3).unwrap();
        assert_eq!(w.bijection.len(), 6);
        assert!(w.intertwines);
    }

    #[test]
    fn shifted_morphism_entries() {
        let gens = vec![Generator::new("x", I2), Generator::new("y", I2)];
        let mut t = MorphismA::new(gens.clone(), gens.clone());
        t.add_component(0, vec![R23], 1).unwrap();
        let s = shift_morphism(&t, 2).unwrap();
        let comps: Vec<_> = s
            .components()
            .map(|(g, w, o)| (g, w.clone(), o.clone()))
            .collect();
        // (x:1) -> (y:2), (x:2) -> (y:1)
        assert_eq!(
            comps,
            vec![
                (0, vec![R23], BTreeSet::from([3])),
                (1, vec![R23], BTreeSet::from([2]))
            ]
        );

        let id = MorphismA::identity(gens);
        let sid = shift_morphism(&id, 3).unwrap();
        assert_eq!(sid, MorphismA::identity(sid.source().to_vec()));
    }
}
