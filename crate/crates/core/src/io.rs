//! Plain-text structure files.
//!
//! ```text
//! typeD
//! gen x1 i2
//! edge x1 x1 r23
//! ```
//!
//! Type A files use `op <gen> ; <label>* -> <gen>` and type DA files use
//! `gen <name> <left> <right>` with `da <gen> ; <label>* -> <label> <gen>`.
//! `#` starts a comment. Generators may be declared after their first use.
//! Repeating a record toggles it, matching GF(2) coefficients.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::algebra::{Basis, Idempotent};
use crate::error::{Error, Result};
use crate::structures::{AnyStructure, TypeAStructure, TypeDAStructure, TypeDStructure, Word};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    D,
    A,
    DA,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<&'a str>,
}

fn tokenize(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some(Line {
            number: i + 1,
            tokens,
        })
    })
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn basis(line: usize, token: &str) -> Result<Basis> {
    Basis::from_str(token).map_err(|e| e.at_line(line))
}

fn idempotent(line: usize, token: &str) -> Result<Idempotent> {
    Idempotent::from_str(token).map_err(|e| e.at_line(line))
}

/// Name table shared by the three kinds; rejects duplicates.
#[derive(Default)]
struct Names(HashMap<String, usize>);

impl Names {
    fn declare(&mut self, line: usize, name: &str) -> Result<()> {
        let next = self.0.len();
        if self.0.insert(name.to_string(), next).is_some() {
            return Err(Error::DuplicateGenerator {
                line,
                name: name.to_string(),
            });
        }
        Ok(())
    }

    fn get(&self, line: usize, name: &str) -> Result<usize> {
        self.0
            .get(name)
            .copied()
            .ok_or_else(|| parse_err(line, format!("unknown generator `{name}`")))
    }
}

/// Splits `<gen> ; <label>* -> <rest>` (tokens after the keyword).
fn split_op<'a>(
    line: usize,
    tokens: &'a [&'a str],
) -> Result<(&'a str, &'a [&'a str], &'a [&'a str])> {
    let [gen, semi, rest @ ..] = tokens else {
        return Err(parse_err(line, "expected `<gen> ; <labels> -> ...`"));
    };
    if *semi != ";" {
        return Err(parse_err(line, "expected `;` after the generator"));
    }
    let arrow = rest
        .iter()
        .position(|t| *t == "->")
        .ok_or_else(|| parse_err(line, "missing `->`"))?;
    Ok((gen, &rest[..arrow], &rest[arrow + 1..]))
}

fn word(line: usize, labels: &[&str]) -> Result<Word> {
    labels.iter().map(|t| basis(line, t)).collect()
}

/// Parses any structure file, dispatching on its header.
pub fn parse(text: &str) -> Result<AnyStructure> {
    let mut lines = tokenize(text);
    let header = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty file: expected a header"))?;
    let kind = match header.tokens.as_slice() {
        ["typeD"] => Kind::D,
        ["typeA"] => Kind::A,
        ["typeDA"] => Kind::DA,
        _ => {
            return Err(parse_err(
                header.number,
                "expected header typeD, typeA or typeDA",
            ))
        }
    };
    let lines: Vec<Line> = lines.collect();

    let mut names = Names::default();
    let mut gens: Vec<(String, Idempotent, Idempotent)> = Vec::new();
    for l in lines.iter().filter(|l| l.tokens[0] == "gen") {
        let (name, left, right) = match (kind, &l.tokens[1..]) {
            (Kind::DA, [name, left, right]) => (
                *name,
                idempotent(l.number, left)?,
                idempotent(l.number, right)?,
            ),
            (_, [name, idem]) => {
                let i = idempotent(l.number, idem)?;
                (*name, i, i)
            }
            (Kind::DA, _) => {
                return Err(parse_err(l.number, "expected `gen <name> <left> <right>`"))
            }
            _ => return Err(parse_err(l.number, "expected `gen <name> <i1|i2>`")),
        };
        names.declare(l.number, name)?;
        gens.push((name.to_string(), left, right));
    }

    let records = lines.iter().filter(|l| l.tokens[0] != "gen");
    match kind {
        Kind::D => {
            let mut d = TypeDStructure::new();
            for (name, idem, _) in gens {
                d.add_generator(name, idem);
            }
            for l in records {
                let n = l.number;
                match l.tokens.as_slice() {
                    ["edge", from, to, label] => {
                        let (f, t) = (names.get(n, from)?, names.get(n, to)?);
                        d.add_edge(f, t, basis(n, label)?)
                            .map_err(|e| e.at_line(n))?;
                    }
                    ["edge", ..] => {
                        return Err(parse_err(n, "expected `edge <from> <to> <label>`"))
                    }
                    [kw, ..] => return Err(unexpected(n, kw, "typeD")),
                    [] => unreachable!("blank lines are skipped"),
                }
            }
            Ok(AnyStructure::D(d))
        }
        Kind::A => {
            let mut a = TypeAStructure::new();
            for (name, idem, _) in gens {
                a.add_generator(name, idem);
            }
            for l in records {
                let n = l.number;
                match l.tokens.split_first() {
                    Some((&"op", rest)) => {
                        let (gen, labels, out) = split_op(n, rest)?;
                        let [out] = out else {
                            return Err(parse_err(n, "expected exactly one output generator"));
                        };
                        let g = names.get(n, gen)?;
                        let z = names.get(n, out)?;
                        a.add_op(g, word(n, labels)?, z).map_err(|e| e.at_line(n))?;
                    }
                    Some((kw, _)) => return Err(unexpected(n, kw, "typeA")),
                    None => unreachable!("blank lines are skipped"),
                }
            }
            Ok(AnyStructure::A(a))
        }
        Kind::DA => {
            let mut da = TypeDAStructure::new();
            for (name, left, right) in gens {
                da.add_generator(name, left, right);
            }
            for l in records {
                let n = l.number;
                match l.tokens.split_first() {
                    Some((&"da", rest)) => {
                        let (gen, labels, out) = split_op(n, rest)?;
                        let [label, out] = out else {
                            return Err(parse_err(n, "expected `-> <label> <gen>`"));
                        };
                        let g = names.get(n, gen)?;
                        let z = names.get(n, out)?;
                        da.add_delta(g, word(n, labels)?, basis(n, label)?, z)
                            .map_err(|e| e.at_line(n))?;
                    }
                    Some((kw, _)) => return Err(unexpected(n, kw, "typeDA")),
                    None => unreachable!("blank lines are skipped"),
                }
            }
            Ok(AnyStructure::DA(da))
        }
    }
}

fn unexpected(line: usize, keyword: &str, kind: &str) -> Error {
    parse_err(
        line,
        format!("unexpected record `{keyword}` in a {kind} file"),
    )
}

pub fn parse_type_d(text: &str) -> Result<TypeDStructure> {
    match parse(text)? {
        AnyStructure::D(d) => Ok(d),
        other => Err(parse_err(
            1,
            format!("expected typeD, found {}", other.kind()),
        )),
    }
}

pub fn parse_type_a(text: &str) -> Result<TypeAStructure> {
    match parse(text)? {
        AnyStructure::A(a) => Ok(a),
        other => Err(parse_err(
            1,
            format!("expected typeA, found {}", other.kind()),
        )),
    }
}

pub fn parse_type_da(text: &str) -> Result<TypeDAStructure> {
    match parse(text)? {
        AnyStructure::DA(da) => Ok(da),
        other => Err(parse_err(
            1,
            format!("expected typeDA, found {}", other.kind()),
        )),
    }
}

fn push_word(out: &mut String, w: &[Basis]) {
    for b in w {
        out.push(' ');
        out.push_str(b.token());
    }
}

/// Canonical text: generators in index order, then records in their
/// stored (sorted) order.
pub fn serialize(s: &AnyStructure) -> String {
    match s {
        AnyStructure::D(d) => serialize_type_d(d),
        AnyStructure::A(a) => serialize_type_a(a),
        AnyStructure::DA(da) => serialize_type_da(da),
    }
}

pub fn serialize_type_d(d: &TypeDStructure) -> String {
    let mut out = String::from("typeD\n");
    for g in d.generators() {
        let _ = writeln!(out, "gen {} {}", g.name, g.idem);
    }
    for e in d.edges() {
        let _ = writeln!(
            out,
            "edge {} {} {}",
            d.generator(e.from).name,
            d.generator(e.to).name,
            e.label
        );
    }
    out
}

pub fn serialize_type_a(a: &TypeAStructure) -> String {
    let mut out = String::from("typeA\n");
    for g in a.generators() {
        let _ = writeln!(out, "gen {} {}", g.name, g.idem);
    }
    for (g, w, outs) in a.ops() {
        for &z in outs {
            let _ = write!(out, "op {} ;", a.generator(g).name);
            push_word(&mut out, w);
            let _ = writeln!(out, " -> {}", a.generator(z).name);
        }
    }
    out
}

pub fn serialize_type_da(da: &TypeDAStructure) -> String {
    let mut out = String::from("typeDA\n");
    for g in da.generators() {
        let _ = writeln!(out, "gen {} {} {}", g.name, g.left, g.right);
    }
    for (g, w, outs) in da.deltas() {
        for &(label, z) in outs {
            let _ = write!(out, "da {} ;", da.generator(g).name);
            push_word(&mut out, w);
            let _ = writeln!(out, " -> {} {}", label, da.generator(z).name);
        }
    }
    out
}
