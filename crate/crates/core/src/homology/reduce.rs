use std::collections::BTreeMap;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::structures::TypeDStructure;

/// Edge reduction: cancels idempotent-labeled edges `x -> y` (`x != y`)
/// until none remain, always taking the first such edge in canonical
/// `(from, to)` order.
///
/// The coefficient `c` of `y` in `δ_1(x)` is `e + n` with `e` the shared
/// idempotent and `n ∈ {0, ρ12, ρ23}`; since `n² = 0`, `c` is its own
/// inverse. Cancelling rewires every zig-zag `w -> y <- x -> z` into a new
/// summand `a · c · b` of the `w -> z` coefficient.
pub fn edge_reduce(d: &TypeDStructure) -> Result<TypeDStructure> {
    edge_reduce_counted(d).map(|(r, _)| r)
}

/// As [`edge_reduce`], also returning the number of cancellations.
pub fn edge_reduce_counted(d: &TypeDStructure) -> Result<(TypeDStructure, usize)> {
    if !d.check()? {
        return Err(Error::InvalidStructure(
            "type D structure equation fails; refusing to reduce".into(),
        ));
    }
    let n = d.len();
    let mut coeff: BTreeMap<(usize, usize), AlgebraElement> = BTreeMap::new();
    for e in d.edges() {
        let c = coeff.entry((e.from, e.to)).or_default();
        c.toggle(e.label);
    }
    coeff.retain(|_, c| !c.is_zero());
    let mut alive = vec![true; n];
    let mut cancelled = 0;

    loop {
        let pivot = coeff.iter().find_map(|(&(x, y), c)| {
            (x != y && c.contains(d.generator(x).idem.basis())).then_some((x, y, *c))
        });
        let Some((x, y, c)) = pivot else { break };
        let e: AlgebraElement = d.generator(x).idem.basis().into();
        debug_assert_eq!(c * c, e, "pivot coefficient must be its own inverse");

        let into_y: Vec<(usize, AlgebraElement)> = coeff
            .iter()
            .filter(|(&(w, t), _)| t == y && w != x && w != y)
            .map(|(&(w, _), &a)| (w, a))
            .collect();
        let out_of_x: Vec<(usize, AlgebraElement)> = coeff
            .range((x, 0)..(x + 1, 0))
            .filter(|(&(_, z), _)| z != x && z != y)
            .map(|(&(_, z), &b)| (z, b))
            .collect();
        for &(w, a) in &into_y {
            for &(z, b) in &out_of_x {
                let add = a * c * b;
                if !add.is_zero() {
                    *coeff.entry((w, z)).or_default() += add;
                }
            }
        }
        coeff.retain(|&(f, t), c| f != x && f != y && t != x && t != y && !c.is_zero());
        alive[x] = false;
        alive[y] = false;
        cancelled += 1;
    }

    let mut out = TypeDStructure::new();
    let mut remap = vec![usize::MAX; n];
    for (i, g) in d.generators().iter().enumerate() {
        if alive[i] {
            remap[i] = out.add_generator(g.name.clone(), g.idem);
        }
    }
    for ((f, t), c) in coeff {
        for b in c.terms() {
            out.add_edge(remap[f], remap[t], b)?;
        }
    }
    Ok((out, cancelled))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{
        Basis,
        Basis::*,
        Idempotent::{I1, I2},
    };
    use crate::orbifold::d_n;

    #[test]
    fn dn_is_unchanged() {
        for n in 1..5 {
            let d = d_n(n).unwrap();
            assert_eq!(edge_reduce(&d).unwrap(), d);
        }
    }

    #[test]
    fn acyclic_pair_cancels() {
        let mut d = TypeDStructure::new();
        let x = d.add_generator("x", I2);
        let y = d.add_generator("y", I2);
        d.add_edge(x, y, Basis::I2).unwrap();
        let (r, k) = edge_reduce_counted(&d).unwrap();
        assert!(r.is_empty());
        assert_eq!(k, 1);
    }

    #[test]
    fn zig_zag_composite() {
        // w -r2-> y <-i1- x -r3-> z  becomes  w -r23-> z
        let mut d = TypeDStructure::new();
        let w = d.add_generator("w", I2);
        let x = d.add_generator("x", I1);
        let y = d.add_generator("y", I1);
        let z = d.add_generator("z", I2);
        d.add_edge(w, y, R2).unwrap();
        d.add_edge(x, y, Basis::I1).unwrap();
        d.add_edge(x, z, R3).unwrap();
        assert!(d.check().unwrap());
        let r = edge_reduce(&d).unwrap();
        assert_eq!(r.len(), 2);
        let names: Vec<_> = r.generators().iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, ["w", "z"]);
        let edges: Vec<_> = r.edges().map(|e| (e.from, e.to, e.label)).collect();
        assert_eq!(edges, vec![(0, 1, R23)]);
        assert!(r.check().unwrap());
    }

    #[test]
    fn invalid_input_is_rejected() {
        let mut d = TypeDStructure::new();
        let x = d.add_generator("x", I1);
        let y = d.add_generator("y", I2);
        d.add_edge(x, y, R1).unwrap();
        d.add_edge(y, x, R2).unwrap();
        assert!(matches!(edge_reduce(&d), Err(Error::InvalidStructure(_))));
    }
}
