//! The line-oriented input format.
//!
//! ```text
//! # comments run to end of line
//! name: k<x,y;dy=x^2>
//! objects: pt
//! kind: semifree
//! cofibrant: true
//! x: pt->pt deg=0 wt=1
//! y: pt->pt deg=1 wt=2 d=x*x
//! ```
//!
//! Finite-dimensional inputs use `kind: finitedim`, declare basis elements
//! the same way, and give structure constants as `product: a*b = expr`.
//! Absent products are zero. Words compose right to left like morphisms, so
//! `x*y` needs `src(x) = tgt(y)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::{One, Signed};

use crate::dgcat::{DgPresentation, FiniteDimData, GeneratorDecl, Letter, MorElement, ObjectSet, PresentationKind, Word};
use crate::error::{Error, Result};
use crate::lin::Lin;
use crate::linalg::Rational;

const KEYWORDS: [&str; 5] = ["name", "objects", "kind", "cofibrant", "product"];

/// A parsed document is a presentation; `serialize` is its inverse.
pub type InputDocument = DgPresentation;

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_alphabetic() || c == '_')
        && cs.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// A monomial with its rational coefficient.
type Term = (Rational, Vec<String>);

/// Parses `expr := 0 | term (('+'|'-') term)*`, `term := [coef '*'] ident ('*' ident)*`.
fn parse_expr(text: &str, line: usize, col0: usize) -> Result<Vec<(Term, usize)>> {
    let s = text.trim();
    let col0 = col0 + (text.len() - text.trim_start().len());
    if s == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let bytes: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut first = true;
    while i < bytes.len() {
        while i < bytes.len() && bytes[i].is_whitespace() {
            i += 1;
        }
        let mut sign = Rational::one();
        if i < bytes.len() && (bytes[i] == '+' || bytes[i] == '-') {
            if bytes[i] == '-' {
                sign = -sign;
            }
            i += 1;
        } else if !first {
            return Err(perr(line, col0 + i + 1, "expected '+' or '-'"));
        }
        first = false;
        let start = i;
        while i < bytes.len() && bytes[i] != '+' && bytes[i] != '-' {
            i += 1;
        }
        let term: String = bytes[start..i].iter().collect();
        let col = col0 + start + 1 + (term.len() - term.trim_start().len());
        if term.trim().is_empty() {
            return Err(perr(line, col, "empty term"));
        }
        let mut factors: Vec<&str> = term.trim().split('*').map(str::trim).collect();
        let mut coef = sign;
        if factors[0].starts_with(|c: char| c.is_ascii_digit()) {
            let c = Rational::from_str(factors[0]).map_err(|_| perr(line, col, format!("bad coefficient {:?}", factors[0])))?;
            coef *= c;
            factors.remove(0);
            if factors.is_empty() {
                return Err(perr(line, col, "a term needs at least one generator"));
            }
        }
        for f in &factors {
            if !is_ident(f) {
                return Err(perr(line, col, format!("bad factor {f:?}")));
            }
        }
        out.push(((coef, factors.into_iter().map(String::from).collect()), col));
    }
    Ok(out)
}

struct PendingDecl {
    decl: GeneratorDecl,
    diff: Option<(String, usize, usize)>,
}

/// Parses a document into a validated presentation.
pub fn parse_input(text: &str) -> Result<InputDocument> {
    let mut name = String::from("input");
    let mut objects: Option<ObjectSet> = None;
    let mut finitedim = false;
    let mut cofibrant = false;
    let mut decls: Vec<PendingDecl> = Vec::new();
    let mut products: Vec<(String, usize, usize)> = Vec::new();

    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let indent = body.len() - body.trim_start().len();
        let Some((head, rest)) = body.split_once(':') else {
            return Err(perr(line, indent + 1, "expected `key: value`"));
        };
        let key = head.trim();
        let vcol = head.len() + 2;
        match key {
            "name" => name = rest.trim().to_string(),
            "objects" => {
                let names: Vec<String> = rest.split_whitespace().map(String::from).collect();
                if let Some(bad) = names.iter().find(|n| !is_ident(n)) {
                    return Err(perr(line, vcol, format!("bad object name {bad:?}")));
                }
                objects = Some(ObjectSet::new(names).map_err(|e| perr(line, vcol, e.to_string()))?);
            }
            "kind" => match rest.trim() {
                "semifree" => finitedim = false,
                "finitedim" => finitedim = true,
                other => return Err(perr(line, vcol, format!("unknown kind {other:?}"))),
            },
            "cofibrant" => match rest.trim() {
                "true" => cofibrant = true,
                "false" => cofibrant = false,
                other => return Err(perr(line, vcol, format!("expected true or false, found {other:?}"))),
            },
            "product" => products.push((rest.to_string(), line, vcol)),
            g if is_ident(g) => {
                let objs = objects.as_ref().ok_or_else(|| perr(line, indent + 1, "`objects:` must come first"))?;
                decls.push(parse_decl(g, rest, line, vcol, objs)?);
            }
            _ => return Err(perr(line, indent + 1, format!("bad key {key:?}"))),
        }
    }
    let objects = objects.ok_or_else(|| perr(1, 1, "missing `objects:` line"))?;
    let mut seen = BTreeMap::new();
    for (i, d) in decls.iter().enumerate() {
        if seen.insert(d.decl.name.clone(), i).is_some() {
            return Err(Error::Validation(format!("duplicate generator {}", d.decl.name)));
        }
    }
    let gens: Vec<GeneratorDecl> = decls.iter().map(|d| d.decl.clone()).collect();
    let lookup = |n: &str, line: usize, col: usize| -> Result<u32> {
        seen.get(n).map(|&i| i as u32).ok_or_else(|| perr(line, col, format!("unknown generator {n:?}")))
    };

    let mut p = if finitedim {
        let single = |t: &Term, line: usize, col: usize| -> Result<u32> {
            match t.1.as_slice() {
                [b] => lookup(b, line, col),
                _ => Err(perr(line, col, "finite-dimensional expressions are linear in basis elements")),
            }
        };
        let mut differential = Vec::new();
        for d in &decls {
            let mut x = Lin::zero();
            if let Some((txt, line, col)) = &d.diff {
                for (t, c) in parse_expr(txt, *line, *col)? {
                    x.add_term(single(&t, *line, c)?, t.0.clone());
                }
            }
            differential.push(x);
        }
        let mut prods = BTreeMap::new();
        for (txt, line, col) in &products {
            let (lhs, rhs) = txt.split_once('=').ok_or_else(|| perr(*line, *col, "expected `a*b = expr`"))?;
            let ab: Vec<&str> = lhs.split('*').map(str::trim).collect();
            let [a, b] = ab.as_slice() else {
                return Err(perr(*line, *col, "expected `a*b` on the left"));
            };
            let key = (lookup(a, *line, *col)?, lookup(b, *line, *col)?);
            let mut x = Lin::zero();
            for (t, c) in parse_expr(rhs, *line, col + lhs.len() + 1)? {
                x.add_term(single(&t, *line, c)?, t.0.clone());
            }
            if prods.insert(key, x).is_some() {
                return Err(perr(*line, *col, "product given twice"));
            }
        }
        DgPresentation::finite_dim(&name, objects, FiniteDimData { basis: gens, products: prods, differential })
    } else {
        if let Some((_, line, col)) = products.first() {
            return Err(perr(*line, *col, "`product:` needs `kind: finitedim`"));
        }
        let mut differential = Vec::new();
        for d in &decls {
            let mut x: MorElement = Lin::zero();
            if let Some((txt, line, col)) = &d.diff {
                for (t, c) in parse_expr(txt, *line, *col)? {
                    let letters = t.1.iter().map(|n| lookup(n, *line, c)).collect::<Result<Vec<u32>>>()?;
                    let w = word_of(&gens, &letters).ok_or_else(|| perr(*line, c, "word is not composable"))?;
                    x.add_term(w, t.0.clone());
                }
            }
            differential.push(x);
        }
        DgPresentation::semi_free(&name, objects, gens, differential)
    };
    p.cofibrant_asserted = cofibrant;
    let v = p.validate();
    if !v.passed() {
        return Err(Error::Validation(v.witnesses.join("; ")));
    }
    Ok(p)
}

fn word_of(gens: &[GeneratorDecl], letters: &[u32]) -> Option<Word> {
    let first = &gens[*letters.first()? as usize];
    let last = &gens[*letters.last()? as usize];
    for pair in letters.windows(2) {
        if gens[pair[0] as usize].src != gens[pair[1] as usize].tgt {
            return None;
        }
    }
    Some(Word { letters: letters.iter().map(|&i| Letter::Gen(i)).collect(), tgt: first.tgt, src: last.src })
}

fn parse_decl(name: &str, rest: &str, line: usize, col0: usize, objs: &ObjectSet) -> Result<PendingDecl> {
    if KEYWORDS.contains(&name) {
        return Err(perr(line, 1, format!("{name:?} is reserved")));
    }
    let (head, diff) = match rest.find("d=") {
        Some(i) => (&rest[..i], Some((rest[i + 2..].to_string(), line, col0 + i + 2))),
        None => (rest, None),
    };
    let mut fields = head.split_whitespace();
    let col_of = |tok: &str| col0 + head.find(tok).unwrap_or(0);
    let arrow = fields.next().ok_or_else(|| perr(line, col0, "expected `src->tgt`"))?;
    let (s, t) = arrow.split_once("->").ok_or_else(|| perr(line, col_of(arrow), "expected `src->tgt`"))?;
    let obj = |o: &str| objs.find(o).ok_or_else(|| perr(line, col_of(o), format!("unknown object {o:?}")));
    let (src, tgt) = (obj(s)?, obj(t)?);
    let mut degree = None;
    let mut weight = None;
    for f in fields {
        let c = col_of(f);
        match f.split_once('=') {
            Some(("deg", v)) => degree = Some(v.parse::<i64>().map_err(|_| perr(line, c, "bad degree"))?),
            Some(("wt", v)) => weight = Some(v.parse::<u32>().map_err(|_| perr(line, c, "bad weight"))?),
            _ => return Err(perr(line, c, format!("unexpected {f:?}"))),
        }
    }
    let degree = degree.ok_or_else(|| perr(line, col0, "missing deg="))?;
    let weight = weight.ok_or_else(|| perr(line, col0, "missing wt="))?;
    Ok(PendingDecl {
        decl: GeneratorDecl { name: name.into(), src, tgt, degree, weight, adjoined: false },
        diff,
    })
}

fn write_expr<K: Ord + Clone>(out: &mut String, x: &Lin<K>, mut mono: impl FnMut(&K) -> String) {
    if x.is_zero() {
        out.push('0');
        return;
    }
    for (i, (k, c)) in x.iter().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let a = c.abs();
        if !a.is_one() {
            let _ = write!(out, "{a}*");
        }
        out.push_str(&mono(k));
    }
}

/// Writes a presentation in the input format.
pub fn serialize(p: &InputDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "name: {}", p.name);
    let _ = writeln!(out, "objects: {}", p.objects.names().join(" "));
    let _ = writeln!(out, "kind: {}", if p.is_semi_free() { "semifree" } else { "finitedim" });
    let _ = writeln!(out, "cofibrant: {}", p.cofibrant_asserted);
    let decls = p.letters_decl();
    let gname = |i: u32| decls[i as usize].name.clone();
    for (i, g) in decls.iter().enumerate() {
        let _ = write!(
            out,
            "{}: {}->{} deg={} wt={}",
            g.name,
            p.objects.name(g.src),
            p.objects.name(g.tgt),
            g.degree,
            g.weight
        );
        match &p.kind {
            PresentationKind::SemiFree { differential, .. } if !differential[i].is_zero() => {
                out.push_str(" d=");
                write_expr(&mut out, &differential[i], |w: &Word| {
                    w.letters
                        .iter()
                        .map(|l| match l {
                            Letter::Gen(j) => gname(*j),
                            other => format!("{other:?}"),
                        })
                        .collect::<Vec<_>>()
                        .join("*")
                });
            }
            PresentationKind::FiniteDim(d) if !d.differential[i].is_zero() => {
                out.push_str(" d=");
                write_expr(&mut out, &d.differential[i], |j| gname(*j));
            }
            _ => {}
        }
        out.push('\n');
    }
    if let PresentationKind::FiniteDim(d) = &p.kind {
        for ((a, b), x) in &d.products {
            let _ = write!(out, "product: {}*{} = ", gname(*a), gname(*b));
            write_expr(&mut out, x, |j| gname(*j));
            out.push('\n');
        }
    }
    out
}

/// Reads and parses a file.
pub fn read_input(path: &std::path::Path) -> Result<InputDocument> {
    parse_input(&std::fs::read_to_string(path)?)
}
