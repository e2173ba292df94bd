//! Reference implementations used as oracles. Nothing here calls into the
//! library's algebra, checkers or linear algebra; structures are read only
//! through their public generator and operation tables.

#![allow(dead_code)]

use std::collections::HashMap;

use orbifold_hf::{Basis, Idempotent, TypeAStructure};

/// Algebra element in the chord model: an idempotent (1 or 2) or a Reeb
/// chord `[a, b)` on the boundary with `1 <= a < b <= 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    Idem(u8),
    Chord(u8, u8),
}

pub fn letter(b: Basis) -> Letter {
    match b.token() {
        "i1" => Letter::Idem(1),
        "i2" => Letter::Idem(2),
        "r1" => Letter::Chord(1, 2),
        "r2" => Letter::Chord(2, 3),
        "r3" => Letter::Chord(3, 4),
        "r12" => Letter::Chord(1, 3),
        "r23" => Letter::Chord(2, 4),
        "r123" => Letter::Chord(1, 4),
        t => panic!("unexpected token {t}"),
    }
}

pub fn from_letter(l: Letter) -> Basis {
    Basis::ALL
        .into_iter()
        .find(|b| letter(*b) == l)
        .expect("every letter is a basis element")
}

pub fn idem_number(i: Idempotent) -> u8 {
    match i.token() {
        "i1" => 1,
        _ => 2,
    }
}

/// Chords starting at 2 leave `i2`; the others leave `i1`.
pub fn source(l: Letter) -> u8 {
    match l {
        Letter::Idem(i) => i,
        Letter::Chord(a, _) => {
            if a == 2 {
                2
            } else {
                1
            }
        }
    }
}

/// Chords ending at 3 arrive at `i1`; the others at `i2`.
pub fn target(l: Letter) -> u8 {
    match l {
        Letter::Idem(i) => i,
        Letter::Chord(_, b) => {
            if b == 3 {
                1
            } else {
                2
            }
        }
    }
}

/// Concatenation of abutting chords; idempotents act as units on matching
/// sides.
pub fn product(x: Letter, y: Letter) -> Option<Letter> {
    match (x, y) {
        (Letter::Idem(i), Letter::Idem(j)) => (i == j).then_some(x),
        (Letter::Idem(i), c) => (source(c) == i).then_some(c),
        (c, Letter::Idem(j)) => (target(c) == j).then_some(c),
        (Letter::Chord(a, b), Letter::Chord(c, d)) => (b == c).then_some(Letter::Chord(a, d)),
    }
}

pub const LETTERS: [Letter; 8] = [
    Letter::Idem(1),
    Letter::Idem(2),
    Letter::Chord(1, 2),
    Letter::Chord(2, 3),
    Letter::Chord(3, 4),
    Letter::Chord(1, 3),
    Letter::Chord(2, 4),
    Letter::Chord(1, 4),
];

/// Base-9 code of a word; distinct words get distinct codes.
fn code(w: &[Letter]) -> u64 {
    w.iter().fold(0, |acc, l| {
        acc * 9 + 1 + LETTERS.iter().position(|m| m == l).expect("known letter") as u64
    })
}

/// A type A structure copied into plain tables, evaluated with strict
/// unitality. Sums of generators are bitmasks, so at most 128 generators.
pub struct OracleA {
    idems: Vec<u8>,
    ops: HashMap<(usize, u64), u128>,
    longest: usize,
}

impl OracleA {
    pub fn new(a: &TypeAStructure) -> Self {
        assert!(a.len() <= 128, "oracle handles at most 128 generators");
        let idems = a.generators().iter().map(|g| idem_number(g.idem)).collect();
        let mut ops = HashMap::new();
        let mut longest = 0;
        for (g, w, outs) in a.ops() {
            longest = longest.max(w.len());
            let letters: Vec<Letter> = w.iter().map(|b| letter(*b)).collect();
            let v = outs.iter().fold(0u128, |v, &z| v ^ (1 << z));
            ops.insert((g, code(&letters)), v);
        }
        OracleA {
            idems,
            ops,
            longest,
        }
    }

    /// `m_{|w|+1}(x, w)` for a single generator.
    pub fn m_gen(&self, x: usize, w: &[Letter]) -> u128 {
        if let [Letter::Idem(i)] = w {
            return if self.idems[x] == *i { 1 << x } else { 0 };
        }
        if w.len() > self.longest || w.iter().any(|l| matches!(l, Letter::Idem(_))) {
            return 0;
        }
        self.ops.get(&(x, code(w))).copied().unwrap_or(0)
    }

    fn m(&self, mut xs: u128, w: &[Letter]) -> u128 {
        if w.len() > self.longest.max(1) {
            return 0;
        }
        let mut out = 0;
        while xs != 0 {
            let x = xs.trailing_zeros() as usize;
            xs &= xs - 1;
            out ^= self.m_gen(x, w);
        }
        out
    }

    /// Left-hand side of the A∞ relation at `x` and `a_1 .. a_{k-1}`.
    pub fn relation(&self, x: usize, w: &[Letter]) -> u128 {
        let mut total = 0;
        for j in 0..=w.len() {
            total ^= self.m(self.m_gen(x, &w[..j]), &w[j..]);
        }
        for j in 0..w.len().saturating_sub(1) {
            if let Some(p) = product(w[j], w[j + 1]) {
                let mut merged = w[..j].to_vec();
                merged.push(p);
                merged.extend_from_slice(&w[j + 2..]);
                total ^= self.m_gen(x, &merged);
            }
        }
        total
    }

    /// Whether the relation holds on every coherent word of length up to
    /// `max_len`, with idempotent letters allowed when asked.
    pub fn check(&self, max_len: usize, with_idempotents: bool) -> bool {
        let letters: Vec<Letter> = LETTERS
            .into_iter()
            .filter(|l| with_idempotents || matches!(l, Letter::Chord(..)))
            .collect();
        // operations must also respect idempotents
        for (&(x, c), &outs) in &self.ops {
            let mut at = self.idems[x];
            for l in decode(c) {
                if source(l) != at {
                    return false;
                }
                at = target(l);
            }
            if (0..self.idems.len()).any(|z| outs >> z & 1 == 1 && self.idems[z] != at) {
                return false;
            }
        }
        for x in 0..self.idems.len() {
            let mut stack = vec![(self.idems[x], Vec::<Letter>::new())];
            while let Some((at, w)) = stack.pop() {
                if self.relation(x, &w) != 0 {
                    return false;
                }
                if w.len() < max_len {
                    for l in &letters {
                        if source(*l) == at {
                            let mut next = w.clone();
                            next.push(*l);
                            stack.push((target(*l), next));
                        }
                    }
                }
            }
        }
        true
    }
}

fn decode(mut c: u64) -> Vec<Letter> {
    let mut w = Vec::new();
    while c != 0 {
        w.push(LETTERS[(c % 9 - 1) as usize]);
        c /= 9;
    }
    w.reverse();
    w
}

/// Rank over GF(2) by dense row reduction.
pub fn dense_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `[j]_n`: the representative of `j` in `1..=n`.
fn wrap(j: usize, n: usize) -> usize {
    (j - 1) % n + 1
}

/// Homology rank of the fully expanded pipeline, computed directly.
///
/// Generators are tuples `(y, j_1, .., j_{N-1}, k)` with `y` in `i2`; the
/// only paths in `D_{n_N}` are `x_k -> x_{k+ℓ}` labeled `ρ23^ℓ`, and each
/// `ρ23` advances every copy index by one.
pub fn brute_force_hfo(a: &TypeAStructure, orders: &[usize]) -> usize {
    let oracle = OracleA::new(a);
    let r23 = Letter::Chord(2, 4);
    let ys: Vec<usize> = (0..a.len()).filter(|&y| oracle.idems[y] == 2).collect();
    let mut tuples: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut counter = vec![1; orders.len()];
    for &y in &ys {
        loop {
            tuples.push((y, counter.clone()));
            let mut i = orders.len();
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if counter[i] < orders[i] {
                    counter[i] += 1;
                    break;
                }
                counter[i] = 1;
            }
            if counter.iter().all(|&c| c == 1) {
                break;
            }
        }
    }
    let index: HashMap<(usize, Vec<usize>), usize> = tuples
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, t)| (t, i))
        .collect();
    let max_len = a.ops().map(|(_, w, _)| w.len()).max().unwrap_or(0);
    let n = tuples.len();
    let mut matrix = vec![vec![false; n]; n];
    for (col, (y, js)) in tuples.iter().enumerate() {
        for l in 0..=max_len {
            let word = vec![r23; l];
            let outs = oracle.m_gen(*y, &word);
            let shifted: Vec<usize> = js
                .iter()
                .zip(orders)
                .map(|(&j, &m)| wrap(j + l, m))
                .collect();
            for z in 0..a.len() {
                if outs >> z & 1 == 1 {
                    let row = index[&(z, shifted.clone())];
                    matrix[row][col] ^= true;
                }
            }
        }
    }
    n - 2 * dense_rank(matrix)
}

/// All permutations of `items`.
pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}
