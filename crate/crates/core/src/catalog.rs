//! Built-in structures and seeded generators of random valid structures.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraElement, Basis, Idempotent};
use crate::error::{Error, Result};
use crate::orbifold::d_n;
use crate::structures::{toggle, AnyStructure, TypeAStructure, TypeDAStructure, TypeDStructure};

/// `CFD` of the solid torus with the ρ23 self-loop; the same as `d_n(1)`.
pub fn solid_torus_cfd() -> TypeDStructure {
    d_n(1).expect("order 1 is valid")
}

/// The part of the lens space type A structure that meets `D_N`: `p`
/// generators in `i2` and no operations on ρ23-words, so every box product
/// with `D_N` has vanishing differential.
pub fn lens_space_cfa(p: usize) -> Result<TypeAStructure> {
    if p == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let mut a = TypeAStructure::new();
    for i in 1..=p {
        a.add_generator(format!("y{i}"), Idempotent::I2);
    }
    Ok(a)
}

/// The identity bimodule: one generator per idempotent and
/// `δ^2_1(e_i, a) = a ⊗ e_{target(a)}`.
pub fn identity_da() -> TypeDAStructure {
    let mut da = TypeDAStructure::new();
    let e1 = da.add_generator("e1", Idempotent::I1, Idempotent::I1);
    let e2 = da.add_generator("e2", Idempotent::I2, Idempotent::I2);
    let of = |i: Idempotent| if i == Idempotent::I1 { e1 } else { e2 };
    for r in Basis::REEB {
        da.add_delta(of(r.source()), vec![r], r, of(r.target()))
            .expect("identity bimodule is coherent");
    }
    da
}

/// Resolves `solid-torus`, `lens:<p>`, `identity-da` and `random:<seed>`.
/// Returns `None` when `name` is not a catalog name.
pub fn lookup(name: &str) -> Option<Result<AnyStructure>> {
    let bad = |arg: &str| Error::Parse {
        line: 0,
        msg: format!("bad catalog argument `{arg}`"),
    };
    match name {
        "solid-torus" => return Some(Ok(AnyStructure::D(solid_torus_cfd()))),
        "identity-da" => return Some(Ok(AnyStructure::DA(identity_da()))),
        _ => {}
    }
    if let Some(p) = name.strip_prefix("lens:") {
        return Some(
            p.parse::<usize>()
                .map_err(|_| bad(p))
                .and_then(lens_space_cfa)
                .map(AnyStructure::A),
        );
    }
    if let Some(s) = name.strip_prefix("random:") {
        return Some(
            s.parse::<u64>()
                .map_err(|_| bad(s))
                .and_then(|seed| random_type_a(seed, &RandomTypeAParams::default()))
                .map(AnyStructure::A),
        );
    }
    None
}

/// Every fixed catalog structure, by name.
pub fn catalog_structures() -> Vec<(String, AnyStructure)> {
    let mut out = vec![
        (
            "solid-torus".to_string(),
            AnyStructure::D(solid_torus_cfd()),
        ),
        ("identity-da".to_string(), AnyStructure::DA(identity_da())),
    ];
    for p in 1..=5 {
        out.push((
            format!("lens:{p}"),
            AnyStructure::A(lens_space_cfa(p).expect("p >= 1")),
        ));
    }
    out
}

#[derive(Clone, Debug)]
pub struct RandomTypeAParams {
    /// Number of right-module pieces summed together.
    pub max_pieces: usize,
    pub max_generators: usize,
    /// Entries of the gauge map used to twist the module into one with
    /// higher operations.
    pub max_gauge_terms: usize,
    /// Chance of adding an acyclic `m_1` cone on one piece.
    pub cone_probability: f64,
    pub max_attempts: usize,
}

impl Default for RandomTypeAParams {
    fn default() -> Self {
        RandomTypeAParams {
            max_pieces: 3,
            max_generators: 10,
            max_gauge_terms: 3,
            cone_probability: 0.4,
            max_attempts: 64,
        }
    }
}

/// Smallest set of basis elements containing `seed` and closed under right
/// multiplication by Reeb elements.
fn right_closure(seed: &BTreeSet<Basis>) -> BTreeSet<Basis> {
    let mut out = seed.clone();
    loop {
        let new: Vec<Basis> = out
            .iter()
            .flat_map(|b| Basis::REEB.iter().filter_map(move |r| b.mul(*r)))
            .filter(|c| !out.contains(c))
            .collect();
        if new.is_empty() {
            return out;
        }
        out.extend(new);
    }
}

/// A subquotient `T / S` of the algebra as a right module over itself,
/// with `S ⊂ T` right ideals spanned by basis elements.
fn random_piece(rng: &mut ChaCha8Rng) -> Vec<Basis> {
    let seed: BTreeSet<Basis> = Basis::ALL
        .into_iter()
        .filter(|_| rng.gen_bool(0.25))
        .collect();
    let top = right_closure(&seed);
    let sub_seed: BTreeSet<Basis> = top.iter().copied().filter(|_| rng.gen_bool(0.3)).collect();
    let sub = right_closure(&sub_seed);
    top.difference(&sub).copied().collect()
}

type Table = BTreeMap<(usize, Vec<Basis>), BTreeSet<usize>>;

fn lookup_set(t: &Table, g: usize, w: &[Basis]) -> BTreeSet<usize> {
    t.get(&(g, w.to_vec())).cloned().unwrap_or_default()
}

fn apply(t: &Table, inputs: &BTreeSet<usize>, w: &[Basis], acc: &mut BTreeSet<usize>) {
    for &g in inputs {
        for z in lookup_set(t, g, w) {
            toggle(acc, z);
        }
    }
}

/// Candidate structure: module pieces, optional cone, then a gauge twist.
fn random_type_a_candidate(
    rng: &mut ChaCha8Rng,
    params: &RandomTypeAParams,
) -> Option<TypeAStructure> {
    let mut idems: Vec<Idempotent> = Vec::new();
    let mut base: Table = BTreeMap::new();
    let pieces = rng.gen_range(1..=params.max_pieces.max(1));
    let mut spans: Vec<(usize, Vec<Basis>)> = Vec::new();
    for _ in 0..pieces {
        let piece = random_piece(rng);
        if piece.is_empty() {
            continue;
        }
        spans.push((idems.len(), piece.clone()));
        add_piece(&mut idems, &mut base, &piece);
    }
    if !spans.is_empty() && rng.gen_bool(params.cone_probability) {
        let (start, piece) = spans.choose(rng).expect("nonempty").clone();
        let copy_start = idems.len();
        add_piece(&mut idems, &mut base, &piece);
        for k in 0..piece.len() {
            base.entry((start + k, Vec::new()))
                .or_default()
                .insert(copy_start + k);
        }
    }
    if idems.is_empty() || idems.len() > params.max_generators {
        return None;
    }

    // gauge map h(x, a) = z, coherent with idempotents
    let mut gauge: Table = BTreeMap::new();
    for _ in 0..rng.gen_range(0..=params.max_gauge_terms) {
        let x = rng.gen_range(0..idems.len());
        let letters: Vec<Basis> = Basis::REEB
            .into_iter()
            .filter(|r| r.source() == idems[x])
            .collect();
        let a = *letters
            .choose(rng)
            .expect("two or four letters per idempotent");
        let targets: Vec<usize> = (0..idems.len())
            .filter(|&z| idems[z] == a.target())
            .collect();
        if let Some(&z) = targets.choose(rng) {
            toggle(gauge.entry((x, vec![a])).or_default(), z);
        }
    }
    gauge.retain(|_, v| !v.is_empty());

    // Pull the structure back along f = id + h:
    //   m'_2(x,a)   = m_2(x,a) + m_1 h(x,a) + h(m_1 x, a)
    //   m'_3(x,a,b) = m_2(h(x,a), b) + h(m'_2(x,a), b) + h(x, ab)
    let mut twisted: Table = BTreeMap::new();
    for (x, &idem) in idems.iter().enumerate() {
        let m1x = lookup_set(&base, x, &[]);
        if !m1x.is_empty() {
            twisted.insert((x, Vec::new()), m1x.clone());
        }
        for a in Basis::REEB.into_iter().filter(|r| r.source() == idem) {
            let mut m2 = lookup_set(&base, x, &[a]);
            apply(&base, &lookup_set(&gauge, x, &[a]), &[], &mut m2);
            apply(&gauge, &m1x, &[a], &mut m2);
            if !m2.is_empty() {
                twisted.insert((x, vec![a]), m2.clone());
            }
            for b in Basis::REEB.into_iter().filter(|r| r.source() == a.target()) {
                let mut m3 = BTreeSet::new();
                apply(&base, &lookup_set(&gauge, x, &[a]), &[b], &mut m3);
                apply(&gauge, &m2, &[b], &mut m3);
                if let Some(ab) = a.mul(b) {
                    for z in lookup_set(&gauge, x, &[ab]) {
                        toggle(&mut m3, z);
                    }
                }
                if !m3.is_empty() {
                    twisted.insert((x, vec![a, b]), m3);
                }
            }
        }
    }

    let mut out = TypeAStructure::new();
    for (i, idem) in idems.iter().enumerate() {
        out.add_generator(format!("g{i}"), *idem);
    }
    for ((g, w), zs) in twisted {
        for z in zs {
            out.add_op(g, w.clone(), z).ok()?;
        }
    }
    Some(out)
}

fn add_piece(idems: &mut Vec<Idempotent>, table: &mut Table, piece: &[Basis]) {
    let start = idems.len();
    let pos: BTreeMap<Basis, usize> = piece
        .iter()
        .enumerate()
        .map(|(k, b)| (*b, start + k))
        .collect();
    for b in piece {
        idems.push(b.target());
    }
    for b in piece {
        for r in Basis::REEB {
            if let Some(c) = b.mul(r) {
                // products landing in the quotiented ideal vanish
                if let Some(&z) = pos.get(&c) {
                    table.entry((pos[b], vec![r])).or_default().insert(z);
                }
            }
        }
    }
}

/// A random valid type A structure of arity at most 3; deterministic per
/// seed. Candidates failing the A∞ relations are discarded.
pub fn random_type_a(seed: u64, params: &RandomTypeAParams) -> Result<TypeAStructure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..params.max_attempts {
        if let Some(a) = random_type_a_candidate(&mut rng, params) {
            if a.max_arity() <= 3 && a.check()? {
                return Ok(a);
            }
        }
    }
    Err(Error::GenerationFailed(params.max_attempts))
}

#[derive(Clone, Debug)]
pub struct RandomTypeDParams {
    pub max_generators: usize,
    pub edge_attempts: usize,
}

impl Default for RandomTypeDParams {
    fn default() -> Self {
        RandomTypeDParams {
            max_generators: 6,
            edge_attempts: 12,
        }
    }
}

/// A random valid type D structure with Reeb-labeled edges only, grown one
/// edge at a time and keeping an edge only if the structure equation still
/// holds.
pub fn random_type_d(seed: u64, params: &RandomTypeDParams) -> TypeDStructure {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d = TypeDStructure::new();
    let n = rng.gen_range(1..=params.max_generators.max(1));
    for i in 0..n {
        let idem = if rng.gen_bool(0.5) {
            Idempotent::I1
        } else {
            Idempotent::I2
        };
        d.add_generator(format!("x{}", i + 1), idem);
    }
    for _ in 0..params.edge_attempts {
        let from = rng.gen_range(0..n);
        let letters: Vec<Basis> = Basis::REEB
            .into_iter()
            .filter(|r| r.source() == d.generator(from).idem)
            .collect();
        let label = *letters.choose(&mut rng).expect("letters exist");
        let targets: Vec<usize> = (0..n)
            .filter(|&t| d.generator(t).idem == label.target())
            .collect();
        let Some(&to) = targets.choose(&mut rng) else {
            continue;
        };
        if d.coefficient(from, to).contains(label) {
            continue;
        }
        d.add_edge(from, to, label).expect("indices in range");
        if d.structure_equation_violation().is_some() {
            d.add_edge(from, to, label).expect("indices in range");
        }
    }
    d
}

/// Adds `pairs` acyclic pairs `p -> q` labeled by their idempotent, then
/// hides them with `mixes` random changes of basis `g_u ↦ g_u + g_v`
/// (same idempotent). The result is isomorphic to `d` plus the pairs, so it
/// still satisfies the structure equation and edge-reduces to something
/// homotopy equivalent to `d`.
pub fn with_cancelling_pairs(
    d: &TypeDStructure,
    seed: u64,
    pairs: usize,
    mixes: usize,
) -> Result<TypeDStructure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idems: Vec<Idempotent> = d.generators().iter().map(|g| g.idem).collect();
    let mut names: Vec<String> = d.generators().iter().map(|g| g.name.clone()).collect();
    let mut coeff: BTreeMap<(usize, usize), AlgebraElement> = BTreeMap::new();
    for e in d.edges() {
        coeff.entry((e.from, e.to)).or_default().toggle(e.label);
    }
    for k in 0..pairs {
        let idem = if rng.gen_bool(0.5) {
            Idempotent::I1
        } else {
            Idempotent::I2
        };
        let p = idems.len();
        idems.extend([idem, idem]);
        names.push(format!("p{}", k + 1));
        names.push(format!("q{}", k + 1));
        coeff.entry((p, p + 1)).or_default().toggle(idem.basis());
    }
    let n = idems.len();
    for _ in 0..mixes {
        let u = rng.gen_range(0..n);
        let partners: Vec<usize> = (0..n).filter(|&v| v != u && idems[v] == idems[u]).collect();
        let Some(&v) = partners.choose(&mut rng) else {
            continue;
        };
        // new basis g'_u = g_u + g_v: row u += row v, then column v += column u
        let row_v: Vec<(usize, AlgebraElement)> = coeff
            .range((v, 0)..(v + 1, 0))
            .map(|(&(_, t), &c)| (t, c))
            .collect();
        for (t, c) in row_v {
            *coeff.entry((u, t)).or_default() += c;
        }
        let col_u: Vec<(usize, AlgebraElement)> = coeff
            .iter()
            .filter(|(&(_, t), _)| t == u)
            .map(|(&(s, _), &c)| (s, c))
            .collect();
        for (s, c) in col_u {
            *coeff.entry((s, v)).or_default() += c;
        }
        coeff.retain(|_, c| !c.is_zero());
    }
    let mut out = TypeDStructure::new();
    for (name, idem) in names.into_iter().zip(idems) {
        out.add_generator(name, idem);
    }
    for ((f, t), c) in coeff {
        for b in c.terms() {
            out.add_edge(f, t, b)?;
        }
    }
    if !out.check()? {
        return Err(Error::InvalidStructure(
            "basis change broke the structure equation".into(),
        ));
    }
    Ok(out)
}
