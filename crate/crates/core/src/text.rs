//! Line-oriented text formats for posets and relations.
//!
//! A poset file names its elements and its covers; the order is the
//! reflexive-transitive closure of the covers:
//!
//! ```text
//! # the four-element crown
//! elements: a b c d
//! covers: a<c a<d b<c b<d
//! ```
//!
//! A relation file lists cliques whose squares, together with the diagonal,
//! make up the relation. The `poset:` line is optional:
//!
//! ```text
//! poset: crown
//! cliques: {a,c} {b,d}
//! ```

use std::fmt;

use thiserror::Error;

use crate::relation::blocks;
use crate::{ElementSet, Error, Poset, Relation};

/// A parse failure with a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn at(line: &Line<'_>, byte: usize, message: impl Into<String>) -> Self {
        Self {
            line: line.number,
            column: line.raw[..byte].chars().count() + 1,
            message: message.into(),
        }
    }
}

/// A relation file: the relation plus the poset name it declares, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationFile {
    pub poset_name: Option<String>,
    pub relation: Relation,
}

const FORBIDDEN: [char; 4] = ['<', '{', '}', ','];

struct Line<'a> {
    number: usize,
    raw: &'a str,
    /// Text after the key and colon.
    value: &'a str,
    /// Byte offset of `value` within `raw`.
    offset: usize,
}

impl<'a> Line<'a> {
    /// Whitespace-separated tokens of the value with their byte offsets.
    fn tokens(&self) -> impl Iterator<Item = (usize, &'a str)> + '_ {
        let base = self.offset;
        let value = self.value;
        value.split_whitespace().map(move |tok| {
            (
                base + (tok.as_ptr() as usize - value.as_ptr() as usize),
                tok,
            )
        })
    }
}

/// Splits into keyed lines, dropping comments and blank lines.
fn keyed_lines(text: &str) -> Result<Vec<(&str, Line<'_>)>, ParseError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let start = content.len() - content.trim_start().len();
        let Some(colon) = content.find(':') else {
            let line = Line {
                number: idx + 1,
                raw,
                value: "",
                offset: 0,
            };
            return Err(ParseError::at(&line, start, "expected `key:`"));
        };
        let key = content[start..colon].trim();
        out.push((
            key,
            Line {
                number: idx + 1,
                raw,
                value: &content[colon + 1..],
                offset: colon + 1,
            },
        ));
    }
    Ok(out)
}

fn check_label(line: &Line<'_>, byte: usize, label: &str) -> Result<(), ParseError> {
    if label.is_empty() {
        return Err(ParseError::at(line, byte, "empty label"));
    }
    if let Some(bad) = label.find(FORBIDDEN) {
        return Err(ParseError::at(
            line,
            byte + bad,
            format!("label `{label}` contains a reserved character"),
        ));
    }
    Ok(())
}

fn end_of_input(text: &str, message: &str) -> ParseError {
    ParseError {
        line: text.lines().count().max(1),
        column: 1,
        message: message.to_string(),
    }
}

pub fn parse_poset(text: &str) -> Result<Poset, ParseError> {
    let lines = keyed_lines(text)?;
    let mut lines = lines.iter();
    let Some((key, elements)) = lines.next() else {
        return Err(end_of_input(text, "missing `elements:` line"));
    };
    if *key != "elements" {
        return Err(ParseError::at(
            elements,
            0,
            format!("expected `elements:`, found `{key}:`"),
        ));
    }
    let mut labels: Vec<String> = Vec::new();
    for (byte, tok) in elements.tokens() {
        check_label(elements, byte, tok)?;
        if labels.iter().any(|l| l == tok) {
            return Err(ParseError::at(
                elements,
                byte,
                format!("duplicate label `{tok}`"),
            ));
        }
        labels.push(tok.to_string());
    }

    let Some((key, covers)) = lines.next() else {
        return Err(end_of_input(text, "missing `covers:` line"));
    };
    if *key != "covers" {
        return Err(ParseError::at(
            covers,
            0,
            format!("expected `covers:`, found `{key}:`"),
        ));
    }
    let mut pairs = Vec::new();
    for (byte, tok) in covers.tokens() {
        let Some((lo, hi)) = tok.split_once('<') else {
            return Err(ParseError::at(
                covers,
                byte,
                format!("expected `A<B`, found `{tok}`"),
            ));
        };
        let lookup = |label: &str, at: usize| {
            check_label(covers, at, label)?;
            labels
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| ParseError::at(covers, at, format!("unknown label `{label}`")))
        };
        let a = lookup(lo, byte)?;
        let b = lookup(hi, byte + lo.len() + 1)?;
        pairs.push((a, b, byte));
    }
    if let Some((_, extra)) = lines.next() {
        return Err(ParseError::at(extra, 0, "unexpected line after `covers:`"));
    }

    let indices: Vec<(usize, usize)> = pairs.iter().map(|&(a, b, _)| (a, b)).collect();
    let names = labels.clone();
    Poset::from_cover_indices(labels, &indices).map_err(|e| {
        // Point at the first cover touching the element on the cycle.
        let byte = match &e {
            Error::Cycle(a, _) => pairs
                .iter()
                .find(|&&(x, y, _)| &names[x] == a || &names[y] == a)
                .map_or(covers.offset, |&(_, _, at)| at),
            _ => covers.offset,
        };
        ParseError::at(covers, byte, e.to_string())
    })
}

/// Parses a relation over `p`'s labels.
pub fn parse_relation(text: &str, p: &Poset) -> Result<RelationFile, ParseError> {
    let mut poset_name = None;
    let mut cliques: Option<Vec<ElementSet>> = None;
    for (key, line) in keyed_lines(text)? {
        match key {
            "poset" if poset_name.is_none() && cliques.is_none() => {
                let mut toks = line.tokens();
                let Some((_, name)) = toks.next() else {
                    return Err(ParseError::at(&line, line.offset, "missing poset name"));
                };
                if let Some((byte, _)) = toks.next() {
                    return Err(ParseError::at(&line, byte, "poset name must be one token"));
                }
                poset_name = Some(name.to_string());
            }
            "cliques" if cliques.is_none() => {
                let mut groups = Vec::new();
                for (byte, tok) in line.tokens() {
                    groups.push(parse_group(&line, byte, tok, p)?);
                }
                cliques = Some(groups);
            }
            _ => {
                return Err(ParseError::at(
                    &line,
                    0,
                    format!("unexpected `{key}:` line"),
                ));
            }
        }
    }
    let Some(cliques) = cliques else {
        return Err(end_of_input(text, "missing `cliques:` line"));
    };
    let relation = Relation::from_cliques(p.len(), &cliques).expect("labels resolved against p");
    Ok(RelationFile {
        poset_name,
        relation,
    })
}

fn parse_group(
    line: &Line<'_>,
    byte: usize,
    tok: &str,
    p: &Poset,
) -> Result<ElementSet, ParseError> {
    let inner = tok
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| {
            ParseError::at(line, byte, format!("expected `{{A,B,..}}`, found `{tok}`"))
        })?;
    if inner.is_empty() {
        return Err(ParseError::at(line, byte, "empty group"));
    }
    let mut set = ElementSet::new();
    let mut at = byte + 1;
    for label in inner.split(',') {
        check_label(line, at, label)?;
        let i = p
            .index_of(label)
            .ok_or_else(|| ParseError::at(line, at, format!("unknown label `{label}`")))?;
        set.insert(i);
        at += label.len() + 1;
    }
    Ok(set)
}

/// Serialises the poset by its cover relation.
pub fn format_poset(p: &Poset) -> String {
    let covers: Vec<String> = p
        .covers()
        .into_iter()
        .map(|(a, b)| format!("{}<{}", p.label(a), p.label(b)))
        .collect();
    format!(
        "elements: {}\ncovers: {}\n",
        p.labels().join(" "),
        covers.join(" ")
    )
    .replace(": \n", ":\n")
}

/// The clique form of a relation: its blocks with at least two members,
/// space separated. Empty for the diagonal.
pub fn format_cliques(p: &Poset, t: &Relation) -> String {
    blocks(t)
        .iter()
        .filter(|b| b.len() > 1)
        .map(|b| crate::quotient::block_label(p, b))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn format_relation(p: &Poset, t: &Relation, poset_name: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(name) = poset_name {
        out.push_str(&format!("poset: {name}\n"));
    }
    let cliques = format_cliques(p, t);
    if cliques.is_empty() {
        out.push_str("cliques:\n");
    } else {
        out.push_str(&format!("cliques: {cliques}\n"));
    }
    out
}

/// Wraps [`format_cliques`] for use in `format!`.
pub struct Cliques<'a>(pub &'a Poset, pub &'a Relation);

impl fmt::Display for Cliques<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = format_cliques(self.0, self.1);
        if s.is_empty() {
            f.write_str("(diagonal)")
        } else {
            f.write_str(&s)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const FIG1: &str =
        "# six elements\nelements: 0 a b c d 1\ncovers: 0<a 0<b a<c a<d b<c b<d c<1 d<1\n";

    #[test]
    fn parses_fig1() {
        let p = parse_poset(FIG1).unwrap();
        assert_eq!(p.len(), 6);
        assert!(p.leq(0, 5));
        assert_eq!(parse_poset(&format_poset(&p)).unwrap(), p);
    }

    #[test]
    fn singleton_and_empty_covers() {
        let p = parse_poset("elements: x\ncovers:\n").unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(format_poset(&p), "elements: x\ncovers:\n");
    }

    #[test]
    fn poset_errors_have_positions() {
        let e = parse_poset("elements: a b\ncovers: a<b b-a\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 13));
        let e = parse_poset("elements: a b\ncovers: a<z\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 11));
        assert!(e.message.contains("unknown label `z`"));
        let e = parse_poset("elements: a a\ncovers:\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 13));
        let e = parse_poset("elements: p q\ncovers: p<q q<p\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("cycle"), "{}", e.message);
        let e = parse_poset("elements: a{ b\ncovers:\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 12));
        assert!(parse_poset("").is_err());
        assert!(parse_poset("elements: a\n").is_err());
        assert!(parse_poset("covers:\nelements: a\n").is_err());
        assert!(parse_poset("elements: a\ncovers:\nextra: 1\n").is_err());
        assert!(parse_poset("elements: a\nnonsense\n").is_err());
    }

    #[test]
    fn relation_files() {
        let p = parse_poset(FIG1).unwrap();
        let r = parse_relation("poset: fig1\ncliques: {0,a,b,c} {b,c,d,1}\n", &p).unwrap();
        assert_eq!(r.poset_name.as_deref(), Some("fig1"));
        assert!(r.relation.contains(2, 4));
        assert_eq!(format_cliques(&p, &r.relation), "{0,a,b,c} {b,c,d,1}");
        let diag = parse_relation("cliques:\n", &p).unwrap();
        assert!(diag.relation.is_diagonal());
        assert_eq!(format_relation(&p, &diag.relation, None), "cliques:\n");

        let e = parse_relation("cliques: {0,q}\n", &p).unwrap_err();
        assert_eq!((e.line, e.column), (1, 13));
        let e = parse_relation("cliques: 0,a\n", &p).unwrap_err();
        assert_eq!(e.column, 10);
        assert!(parse_relation("cliques: {}\n", &p).is_err());
        assert!(parse_relation("poset: fig1\n", &p).is_err());
        assert!(parse_relation("cliques:\ncliques:\n", &p).is_err());
        assert!(parse_relation("cliques:\nposet: x\n", &p).is_err());
    }

    fn arb_poset() -> impl Strategy<Value = Poset> {
        (1usize..7).prop_flat_map(|n| {
            prop::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
                // Only forward covers i<j with i<j, so the closure is acyclic.
                let covers: Vec<(usize, usize)> = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| bits[i * n + j])
                    .collect();
                let labels = (0..n).map(|i| format!("e{i}")).collect();
                Poset::from_cover_indices(labels, &covers).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn round_trips(p in arb_poset(), seeds in prop::collection::vec(any::<u64>(), 0..4)) {
            let text = format_poset(&p);
            let back = parse_poset(&text).unwrap();
            prop_assert_eq!(&back, &p);

            let n = p.len();
            let cliques: Vec<ElementSet> = seeds
                .iter()
                .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
                .collect();
            let t = Relation::from_cliques(n, &cliques).unwrap();
            let text = format_relation(&p, &t, Some("p"));
            let parsed = parse_relation(&text, &p).unwrap();
            prop_assert_eq!(parsed.relation, t);
            prop_assert_eq!(parsed.poset_name.as_deref(), Some("p"));
        }
    }
}
