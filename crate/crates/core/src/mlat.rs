//! The `.mlat` text format.
//!
//! ```text
//! # comments run to the end of the line
//! lattice C3
//! elements 0 m 1
//! order 0 < m, m < 1
//! mult meet
//! query classify
//! ```
//!
//! `order` takes `a < b` or `a <= b` items (both mean `a ⩽ b`; chains such
//! as `a < b < c` are allowed) and `mult` takes `meet` or `a*b=c` triples.
//! Items are separated by commas or newlines (a comma may end a line); a
//! line that does not start with a directive keyword continues the
//! previous `order` or `mult` list.
//! Products with the top or the bottom may be omitted.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::lattice::{ElementId, FiniteLattice};
use crate::quantale::{MultTable, MultiplicativeLattice, QuantaleError};

const KEYWORDS: [&str; 5] = ["lattice", "elements", "order", "mult", "query"];

/// 1-based line and column (in characters).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MlatError {
    #[error("{pos}: syntax error: {message}{}", expected_list(.expected))]
    Syntax { pos: Pos, message: String, expected: Vec<&'static str> },
    #[error("{pos}: undeclared label `{label}`")]
    UndeclaredLabel { pos: Pos, label: String },
    #[error("{pos}: duplicate product {a}*{b}")]
    DuplicateTriple { pos: Pos, a: String, b: String },
    #[error("{pos}: conflicting product {a}*{b}: {first} (line {first_line}) vs {second}")]
    ConflictingTriple { pos: Pos, a: String, b: String, first: String, first_line: usize, second: String },
    #[error("{pos}: missing product {a}*{b}")]
    MissingTriple { pos: Pos, a: String, b: String },
    #[error("invalid structure: {0}")]
    Invalid(#[from] QuantaleError),
}

fn expected_list(expected: &[&str]) -> String {
    if expected.is_empty() {
        String::new()
    } else {
        format!(" (expected {})", expected.join(", "))
    }
}

impl MlatError {
    /// Position of the diagnostic; `None` for validation failures.
    pub fn pos(&self) -> Option<Pos> {
        match self {
            MlatError::Syntax { pos, .. }
            | MlatError::UndeclaredLabel { pos, .. }
            | MlatError::DuplicateTriple { pos, .. }
            | MlatError::ConflictingTriple { pos, .. }
            | MlatError::MissingTriple { pos, .. } => Some(*pos),
            MlatError::Invalid(_) => None,
        }
    }

    pub fn is_parse_error(&self) -> bool {
        self.pos().is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultSpec {
    Meet,
    Triples(Vec<(String, String, String)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MlatDocument {
    pub name: String,
    pub elements: Vec<String>,
    pub order_pairs: Vec<(String, String)>,
    pub mult: MultSpec,
    pub queries: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Label(String),
    Lt,
    Le,
    Star,
    Eq,
    Comma,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Label(l) => format!("`{l}`"),
            Tok::Lt => "`<`".into(),
            Tok::Le => "`<=`".into(),
            Tok::Star => "`*`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Comma => "`,`".into(),
        }
    }
}

fn is_label_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, ',' | '<' | '*' | '=' | '#')
}

fn tokenize(line: &str, line_no: usize) -> Vec<(Pos, Tok)> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line: line_no, column: i + 1 };
        match c {
            '#' => break,
            c if c.is_whitespace() => i += 1,
            ',' => {
                out.push((pos, Tok::Comma));
                i += 1;
            }
            '*' => {
                out.push((pos, Tok::Star));
                i += 1;
            }
            '=' => {
                out.push((pos, Tok::Eq));
                i += 1;
            }
            '<' => {
                if chars.get(i + 1) == Some(&'=') {
                    out.push((pos, Tok::Le));
                    i += 2;
                } else {
                    out.push((pos, Tok::Lt));
                    i += 1;
                }
            }
            _ => {
                let start = i;
                while i < chars.len() && is_label_char(chars[i]) {
                    i += 1;
                }
                out.push((pos, Tok::Label(chars[start..i].iter().collect())));
            }
        }
    }
    out
}

fn syntax(pos: Pos, message: impl Into<String>, expected: &[&'static str]) -> MlatError {
    MlatError::Syntax { pos, message: message.into(), expected: expected.to_vec() }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Order,
    Mult,
}

#[derive(Default)]
struct Builder {
    name: Option<(Pos, String)>,
    elements: Option<(Pos, Vec<(Pos, String)>)>,
    order: Vec<(Pos, String, Pos, String)>,
    order_seen: bool,
    meet: Option<Pos>,
    triples: Vec<(Pos, [(Pos, String); 3])>,
    mult_pos: Option<Pos>,
    queries: Vec<String>,
}

/// Parses and checks labels and products; the order and the
/// multiplication are validated by [`MlatDocument::build`].
pub fn parse_mlat(text: &str) -> Result<MlatDocument, MlatError> {
    let mut b = Builder::default();
    let mut section = Section::None;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let toks = tokenize(raw, line_no);
        let Some((pos, first)) = toks.first().cloned() else { continue };
        let keyword = match &first {
            Tok::Label(l) if KEYWORDS.contains(&l.as_str()) => Some(l.clone()),
            _ => None,
        };
        let rest = &toks[1..];
        match keyword.as_deref() {
            Some("lattice") => {
                section = Section::None;
                if b.name.is_some() {
                    return Err(syntax(pos, "second `lattice` directive", &[]));
                }
                match rest {
                    [(_, Tok::Label(name))] => b.name = Some((pos, name.clone())),
                    [] => return Err(syntax(end_of(raw, line_no), "missing lattice name", &["name"])),
                    [_, (p, t), ..] | [(p, t)] => {
                        return Err(syntax(*p, format!("unexpected {}", t.describe()), &["end of line"]))
                    }
                }
            }
            Some("elements") => {
                section = Section::None;
                if b.elements.is_some() {
                    return Err(syntax(pos, "second `elements` directive", &[]));
                }
                let mut labels = Vec::new();
                for (p, t) in rest {
                    match t {
                        Tok::Comma => {}
                        Tok::Label(l) => {
                            if KEYWORDS.contains(&l.as_str()) {
                                return Err(syntax(*p, format!("`{l}` is reserved"), &["label"]));
                            }
                            if labels.iter().any(|(_, x)| x == l) {
                                return Err(syntax(*p, format!("element `{l}` declared twice"), &[]));
                            }
                            labels.push((*p, l.clone()));
                        }
                        _ => return Err(syntax(*p, format!("unexpected {}", t.describe()), &["label"])),
                    }
                }
                if labels.is_empty() {
                    return Err(syntax(end_of(raw, line_no), "no elements declared", &["label"]));
                }
                b.elements = Some((pos, labels));
            }
            Some("order") => {
                if b.order_seen {
                    return Err(syntax(pos, "second `order` directive", &[]));
                }
                b.order_seen = true;
                section = Section::Order;
                parse_order_items(rest, raw, line_no, &mut b)?;
            }
            Some("mult") => {
                if b.mult_pos.is_some() {
                    return Err(syntax(pos, "second `mult` directive", &[]));
                }
                b.mult_pos = Some(pos);
                if let [(p, Tok::Label(m)), tail @ ..] = rest {
                    if m == "meet" {
                        if let Some((q, t)) = tail.first() {
                            return Err(syntax(*q, format!("unexpected {}", t.describe()), &["end of line"]));
                        }
                        b.meet = Some(*p);
                        section = Section::None;
                        continue;
                    }
                }
                section = Section::Mult;
                parse_mult_items(rest, raw, line_no, &mut b)?;
            }
            Some("query") => {
                section = Section::None;
                let text = strip_comment(raw).trim_start();
                let text = text["query".len()..].trim();
                if text.is_empty() {
                    return Err(syntax(end_of(raw, line_no), "empty query", &["command"]));
                }
                b.queries.push(text.to_string());
            }
            _ => match section {
                Section::Order => parse_order_items(&toks, raw, line_no, &mut b)?,
                Section::Mult => parse_mult_items(&toks, raw, line_no, &mut b)?,
                Section::None => return Err(syntax(pos, format!("unexpected {}", first.describe()), &KEYWORDS)),
            },
        }
    }
    let eof = Pos { line: last_line + 1, column: 1 };
    let (_, name) = b.name.clone().ok_or_else(|| syntax(eof, "missing `lattice` directive", &["lattice"]))?;
    let (_, elements) = b.elements.clone().ok_or_else(|| syntax(eof, "missing `elements` directive", &["elements"]))?;
    let mult_pos = b.mult_pos.ok_or_else(|| syntax(eof, "missing `mult` directive", &["mult"]))?;
    let labels: Vec<String> = elements.iter().map(|(_, l)| l.clone()).collect();
    let index: BTreeMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let lookup = |p: Pos, l: &str| {
        index.get(l).copied().ok_or_else(|| MlatError::UndeclaredLabel { pos: p, label: l.to_string() })
    };

    let mut order_pairs = Vec::new();
    for (pa, a, pb, bb) in &b.order {
        lookup(*pa, a)?;
        lookup(*pb, bb)?;
        order_pairs.push((a.clone(), bb.clone()));
    }
    let mult = if b.meet.is_some() {
        if let Some((p, _)) = b.triples.first() {
            return Err(syntax(*p, "`mult meet` cannot take products", &[]));
        }
        MultSpec::Meet
    } else {
        let mut seen: BTreeMap<(usize, usize), (usize, String)> = BTreeMap::new();
        let mut triples = Vec::new();
        for (p, [(pa, a), (pb, bb), (pc, c)]) in &b.triples {
            let (i, j) = (lookup(*pa, a)?, lookup(*pb, bb)?);
            lookup(*pc, c)?;
            let key = (i.min(j), i.max(j));
            if let Some((first_line, first)) = seen.get(&key) {
                if first == c {
                    return Err(MlatError::DuplicateTriple { pos: *p, a: a.clone(), b: bb.clone() });
                }
                return Err(MlatError::ConflictingTriple {
                    pos: *p,
                    a: a.clone(),
                    b: bb.clone(),
                    first: first.clone(),
                    first_line: *first_line,
                    second: c.clone(),
                });
            }
            seen.insert(key, (p.line, c.clone()));
            triples.push((a.clone(), bb.clone(), c.clone()));
        }
        // Which pairs may be omitted depends on the bounds; skip the check
        // when the order is not a lattice and let validation report it.
        if let Ok(lat) = order_lattice(&labels, &order_pairs) {
            for i in 0..labels.len() {
                for j in i..labels.len() {
                    let bound = |k: usize| k == lat.top().index() || k == lat.bottom().index();
                    if !bound(i) && !bound(j) && !seen.contains_key(&(i, j)) {
                        return Err(MlatError::MissingTriple {
                            pos: mult_pos,
                            a: labels[i].clone(),
                            b: labels[j].clone(),
                        });
                    }
                }
            }
        }
        MultSpec::Triples(triples)
    };
    Ok(MlatDocument { name, elements: labels, order_pairs, mult, queries: b.queries })
}

fn strip_comment(raw: &str) -> &str {
    raw.split('#').next().unwrap_or("")
}

fn end_of(raw: &str, line_no: usize) -> Pos {
    Pos { line: line_no, column: strip_comment(raw).trim_end().chars().count() + 1 }
}

/// `a < b [< c …]` items separated by commas.
fn parse_order_items(toks: &[(Pos, Tok)], raw: &str, line_no: usize, b: &mut Builder) -> Result<(), MlatError> {
    let mut i = 0;
    while i < toks.len() {
        let (pa, a) = match &toks[i] {
            (p, Tok::Label(l)) => (*p, l.clone()),
            (p, Tok::Comma) => {
                return Err(syntax(*p, "empty order item", &["label"]));
            }
            (p, t) => return Err(syntax(*p, format!("unexpected {}", t.describe()), &["label"])),
        };
        i += 1;
        let mut prev = (pa, a);
        let mut links = 0;
        loop {
            match toks.get(i) {
                Some((_, Tok::Lt | Tok::Le)) => {}
                Some((_, Tok::Comma)) if links > 0 => {
                    i += 1;
                    break;
                }
                None if links > 0 => break,
                Some((p, t)) => return Err(syntax(*p, format!("unexpected {}", t.describe()), &["<", "<="])),
                None => return Err(syntax(end_of(raw, line_no), "incomplete order item", &["<", "<="])),
            }
            i += 1;
            let (pb, bb) = match toks.get(i) {
                Some((p, Tok::Label(l))) => (*p, l.clone()),
                Some((p, t)) => return Err(syntax(*p, format!("unexpected {}", t.describe()), &["label"])),
                None => return Err(syntax(end_of(raw, line_no), "incomplete order item", &["label"])),
            };
            i += 1;
            b.order.push((prev.0, prev.1.clone(), pb, bb.clone()));
            prev = (pb, bb);
            links += 1;
        }
    }
    Ok(())
}

/// `a*b=c` items separated by commas.
fn parse_mult_items(toks: &[(Pos, Tok)], raw: &str, line_no: usize, b: &mut Builder) -> Result<(), MlatError> {
    let mut i = 0;
    while i < toks.len() {
        let start = toks[i].0;
        let want = [("label", None), ("*", Some(Tok::Star)), ("label", None), ("=", Some(Tok::Eq)), ("label", None)];
        let mut labels = Vec::new();
        for (name, tok) in want {
            let Some((p, t)) = toks.get(i) else {
                return Err(syntax(end_of(raw, line_no), "incomplete product", &[name]));
            };
            match (tok, t) {
                (None, Tok::Label(l)) => labels.push((*p, l.clone())),
                (Some(ref w), t) if w == t => {}
                _ => return Err(syntax(*p, format!("unexpected {}", t.describe()), &[name])),
            }
            i += 1;
        }
        match toks.get(i) {
            None => {}
            Some((_, Tok::Comma)) => i += 1,
            Some((p, t)) => return Err(syntax(*p, format!("unexpected {}", t.describe()), &[",", "end of line"])),
        }
        let [x, y, z]: [(Pos, String); 3] = labels.try_into().expect("three labels");
        b.triples.push((start, [x, y, z]));
    }
    Ok(())
}

fn order_lattice(labels: &[String], pairs: &[(String, String)]) -> Result<FiniteLattice, QuantaleError> {
    let idx = |l: &str| labels.iter().position(|x| x == l).expect("labels checked");
    let pairs: Vec<(usize, usize)> = pairs.iter().map(|(a, b)| (idx(a), idx(b))).collect();
    Ok(FiniteLattice::from_order(labels.len(), &pairs, Some(labels.to_vec()))?)
}

impl MlatDocument {
    /// Validates the order and the multiplication.
    pub fn build(&self) -> Result<MultiplicativeLattice, MlatError> {
        let lat = order_lattice(&self.elements, &self.order_pairs)?;
        let mult = match &self.mult {
            MultSpec::Meet => MultTable::meet_of(&lat),
            MultSpec::Triples(ts) => {
                let n = lat.size();
                let idx = |l: &str| lat.element(l).expect("labels checked");
                let mut given: Vec<Option<ElementId>> = vec![None; n * n];
                for (a, b, c) in ts {
                    let (a, b, c) = (idx(a), idx(b), idx(c));
                    given[a.index() * n + b.index()] = Some(c);
                    given[b.index() * n + a.index()] = Some(c);
                }
                MultTable::from_fn(n, |a, b| {
                    given[a.index() * n + b.index()].unwrap_or_else(|| {
                        if a == lat.top() {
                            b
                        } else if b == lat.top() {
                            a
                        } else {
                            lat.bottom()
                        }
                    })
                })
            }
        };
        Ok(MultiplicativeLattice::new(self.name.clone(), lat, mult)?)
    }

    /// Describes `ml` with its cover pairs and, unless it is a frame, every
    /// product of two elements that are neither top nor bottom.
    pub fn from_structure(ml: &MultiplicativeLattice) -> Self {
        let lat = ml.lattice();
        let l = |x: ElementId| lat.label(x).to_string();
        let order_pairs = lat.covers().iter().map(|&(a, b)| (l(a), l(b))).collect();
        let mult = if ml.is_frame() {
            MultSpec::Meet
        } else {
            let inner: Vec<ElementId> = ml.elements().filter(|&x| x != ml.top() && x != ml.bottom()).collect();
            let mut ts = Vec::new();
            for (i, &a) in inner.iter().enumerate() {
                for &b in &inner[i..] {
                    ts.push((l(a), l(b), l(ml.multiply(a, b))));
                }
            }
            MultSpec::Triples(ts)
        };
        MlatDocument {
            name: ml.name().to_string(),
            elements: lat.labels().to_vec(),
            order_pairs,
            mult,
            queries: Vec::new(),
        }
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("lattice {}\nelements {}\n", self.name, self.elements.join(" "));
        let pairs: Vec<String> = self.order_pairs.iter().map(|(a, b)| format!("{a} < {b}")).collect();
        if pairs.is_empty() {
            out.push_str("order\n");
        } else {
            out.push_str(&format!("order {}\n", pairs.join(", ")));
        }
        match &self.mult {
            MultSpec::Meet => out.push_str("mult meet\n"),
            MultSpec::Triples(ts) if ts.is_empty() => out.push_str("mult\n"),
            MultSpec::Triples(ts) => {
                let items: Vec<String> = ts.iter().map(|(a, b, c)| format!("{a}*{b}={c}")).collect();
                out.push_str(&format!("mult {}\n", items.join(", ")));
            }
        }
        for q in &self.queries {
            out.push_str(&format!("query {q}\n"));
        }
        out
    }
}
