//! The worked examples as data files, together with the facts each one is
//! expected to exhibit. [`Fixture::replay`] recomputes every fact.

use crate::enumerate::{all_congruences, all_tolerances, minimal_upper_bounds, ToleranceFamily};
use crate::quotient::{block_label, quotient_poset};
use crate::refinement::RefinementPair;
use crate::relation::{blocks, is_congruence, is_tolerance};
use crate::text::{parse_poset, parse_relation};
use crate::{Poset, Relation};

macro_rules! data {
    ($name:literal) => {
        ($name, include_str!(concat!("../fixtures/", $name)))
    };
}

/// Every fixture file as `(file name, contents)`.
pub const FILES: &[(&str, &str)] = &[
    data!("fig1.poset"),
    data!("fig1-T1.rel"),
    data!("fig1-T2.rel"),
    data!("fig1-T1-cap-T2.rel"),
    data!("fig3-T1.rel"),
    data!("fig3-T2.rel"),
    data!("fig9-S.rel"),
    data!("fig9-T.rel"),
    data!("fig2.poset"),
    data!("fig2-T1.rel"),
    data!("fig2-T2.rel"),
    data!("fig2-T3.rel"),
    data!("fig2-T4.rel"),
    data!("fig7-S.rel"),
    data!("fig7-T.rel"),
    data!("fig4.poset"),
    data!("fig5.poset"),
    data!("fig5-C1.rel"),
    data!("fig5-C2.rel"),
    data!("fig5-C3.rel"),
    data!("fig5-C4.rel"),
    data!("fig5-C5.rel"),
    data!("fig5-C6.rel"),
    data!("fig5-C7.rel"),
    data!("fig5-C8.rel"),
    data!("crown-stack.poset"),
    data!("crown-stack-T.rel"),
];

pub fn file(name: &str) -> Option<&'static str> {
    FILES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|&(_, text)| text)
}

/// Parses the poset file `<name>.poset`.
pub fn poset(name: &str) -> Poset {
    let text = file(&format!("{name}.poset")).unwrap_or_else(|| panic!("no fixture {name}.poset"));
    parse_poset(text).unwrap_or_else(|e| panic!("{name}.poset: {e}"))
}

/// Parses `<rel>.rel` against the poset it names.
pub fn relation(rel: &str) -> (Poset, Relation) {
    let file_name = format!("{rel}.rel");
    let text = file(&file_name).unwrap_or_else(|| panic!("no fixture {file_name}"));
    let name = text
        .lines()
        .find_map(|l| l.strip_prefix("poset:"))
        .map(str::trim)
        .unwrap_or_else(|| panic!("{file_name} names no poset"));
    let p = poset(name);
    let parsed = parse_relation(text, &p).unwrap_or_else(|e| panic!("{file_name}: {e}"));
    (p, parsed.relation)
}

/// An expected fact about a fixture. Relations are named by file stem.
#[derive(Clone, Debug)]
pub enum Fact {
    Tolerance(&'static str, bool),
    Congruence(&'static str, bool),
    /// Blocks in printing order.
    Blocks(&'static str, &'static [&'static str]),
    /// Covers of the quotient poset by block label.
    QuotientCovers(&'static str, &'static [(&'static str, &'static str)]),
    Directed(&'static [&'static str], bool),
    Lattice(bool),
    RelativelyComplemented(bool),
    /// Fixture relations that are tolerances, by file stem.
    ToleranceFamily(&'static [&'static str]),
    CongruenceFamily(&'static [&'static str]),
    /// Minimal upper bounds of two relations in the tolerance family.
    MinimalUpperBounds(&'static str, &'static str, &'static [&'static str]),
    /// `S ≤ T`.
    Refines(&'static str, &'static str, bool),
    /// Images of the injection `P/T → (P/S)/(T/S)`, by block position.
    Injection(&'static str, &'static str, &'static [usize]),
    /// Images of the bijection `(P/S)/(T/S) → P/T`, by block position.
    Bijection(&'static str, &'static str, &'static [usize]),
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub facts: Vec<Fact>,
}

impl Fixture {
    pub fn poset(&self) -> Poset {
        poset(self.name)
    }

    /// Recomputes each fact; `Err` carries what was found instead.
    pub fn replay(&self) -> Vec<(String, Result<(), String>)> {
        self.facts
            .iter()
            .map(|fact| (format!("{}: {fact:?}", self.name), replay(self, fact)))
            .collect()
    }
}

fn expect<T: PartialEq + std::fmt::Debug>(found: T, wanted: T) -> Result<(), String> {
    if found == wanted {
        Ok(())
    } else {
        Err(format!("found {found:?}, expected {wanted:?}"))
    }
}

fn member_names(
    family: &ToleranceFamily,
    p: &Poset,
    candidates: &[&'static str],
) -> Vec<&'static str> {
    candidates
        .iter()
        .copied()
        .filter(|name| {
            let (q, r) = relation(name);
            q == *p && family.position(&r).is_some()
        })
        .collect()
}

fn replay(fixture: &Fixture, fact: &Fact) -> Result<(), String> {
    let p = fixture.poset();
    let rel = |name: &str| relation(name).1;
    match fact {
        Fact::Tolerance(r, want) => expect(is_tolerance(&p, &rel(r)), *want),
        Fact::Congruence(r, want) => expect(is_congruence(&p, &rel(r)), *want),
        Fact::Blocks(r, want) => {
            let found: Vec<String> = blocks(&rel(r)).iter().map(|b| block_label(&p, b)).collect();
            expect(found, want.iter().map(|s| s.to_string()).collect())
        }
        Fact::QuotientCovers(r, want) => {
            let q = quotient_poset(&p, &rel(r)).map_err(|e| e.to_string())?;
            let qp = q.poset();
            let found: Vec<(String, String)> = qp
                .covers()
                .into_iter()
                .map(|(a, b)| (qp.label(a).to_string(), qp.label(b).to_string()))
                .collect();
            expect(
                found,
                want.iter()
                    .map(|(a, b)| (a.to_string(), b.to_string()))
                    .collect(),
            )
        }
        Fact::Directed(labels, want) => {
            let set = p.set_of(labels).map_err(|e| e.to_string())?;
            expect(p.is_directed(&set), *want)
        }
        Fact::Lattice(want) => expect(p.is_lattice(), *want),
        Fact::RelativelyComplemented(want) => expect(p.is_relatively_complemented(), *want),
        Fact::ToleranceFamily(want) => {
            let family = all_tolerances(&p).map_err(|e| e.to_string())?;
            let found = member_names(&family, &p, want);
            expect(found.len(), want.len())?;
            expect(family.len(), want.len())
        }
        Fact::CongruenceFamily(want) => {
            let family = all_congruences(&p).map_err(|e| e.to_string())?;
            let found = member_names(&family, &p, want);
            expect(found.len(), want.len())?;
            expect(family.len(), want.len())
        }
        Fact::MinimalUpperBounds(a, b, want) => {
            let family = all_tolerances(&p).map_err(|e| e.to_string())?;
            let pos = |name: &str| {
                family
                    .position(&rel(name))
                    .ok_or_else(|| format!("{name} is not a tolerance"))
            };
            let bounds =
                minimal_upper_bounds(&family, pos(a)?, pos(b)?).map_err(|e| e.to_string())?;
            let mut wanted = want.iter().map(|w| pos(w)).collect::<Result<Vec<_>, _>>()?;
            wanted.sort_unstable();
            expect(bounds, wanted)
        }
        Fact::Refines(s, t, want) => {
            let pair = RefinementPair::new(&p, &rel(s), &rel(t)).map_err(|e| e.to_string())?;
            expect(pair.refines().map_err(|e| e.to_string())?, *want)
        }
        Fact::Injection(s, t, want) => {
            let pair = RefinementPair::new(&p, &rel(s), &rel(t)).map_err(|e| e.to_string())?;
            let (map, _) = pair.injection().map_err(|e| e.to_string())?;
            expect(map.images, want.to_vec())
        }
        Fact::Bijection(s, t, want) => {
            let pair = RefinementPair::new(&p, &rel(s), &rel(t)).map_err(|e| e.to_string())?;
            let (map, _) = pair.bijection().map_err(|e| e.to_string())?;
            expect(map.images, want.to_vec())
        }
    }
}

/// Every fixture with its expected facts.
pub fn all() -> Vec<Fixture> {
    use Fact::*;
    vec![
        Fixture {
            name: "fig1",
            facts: vec![
                Lattice(false),
                Tolerance("fig1-T1", true),
                Congruence("fig1-T1", false),
                Tolerance("fig1-T2", true),
                Congruence("fig1-T2", false),
                Tolerance("fig1-T1-cap-T2", false),
                Blocks("fig1-T1-cap-T2", &["{0,a,b}", "{a,c}", "{b,d}", "{c,d,1}"]),
                Directed(&["0", "a", "b"], false),
                Directed(&["c", "d", "1"], false),
                Directed(&["0", "a", "b", "c"], true),
                QuotientCovers("fig3-T1", &[("{0,a,b,c}", "{b,c,d,1}")]),
                QuotientCovers("fig3-T2", &[("{0,a}", "{b,c}"), ("{b,c}", "{d,1}")]),
                Tolerance("fig9-S", true),
                Congruence("fig9-S", true),
                Congruence("fig9-T", true),
                Refines("fig9-S", "fig9-T", true),
                Refines("fig9-T", "fig9-S", false),
                Refines("fig3-T2", "fig3-T1", false),
                Injection("fig9-S", "fig9-T", &[0, 1, 2]),
                Bijection("fig9-S", "fig9-T", &[0, 1, 2]),
            ],
        },
        Fixture {
            name: "fig2",
            facts: vec![
                Congruence("fig2-T1", true),
                Congruence("fig2-T2", true),
                Congruence("fig2-T3", true),
                Congruence("fig2-T4", true),
                MinimalUpperBounds("fig2-T1", "fig2-T2", &["fig2-T3", "fig2-T4"]),
                Refines("fig7-S", "fig7-T", true),
                Injection("fig7-S", "fig7-T", &[0, 1]),
                Bijection("fig7-S", "fig7-T", &[0, 1]),
            ],
        },
        Fixture {
            name: "fig4",
            facts: vec![
                Lattice(false),
                RelativelyComplemented(true),
                Directed(
                    &["0", "a", "b", "c", "d", "d'", "c'", "b'", "a'", "1"],
                    true,
                ),
            ],
        },
        Fixture {
            name: "fig5",
            facts: vec![
                Lattice(false),
                RelativelyComplemented(true),
                Directed(&["a", "b", "c", "d"], false),
                // {a,c}² ∪ {b,d}² is not closed under componentwise joins:
                // (a,c) and (d,b) give (a∨d, c∨b) = (d,c). The other
                // two-block partition fails the same way with (a,d), (c,b).
                Tolerance("fig5-C6", false),
                Tolerance("fig5-C7", false),
                ToleranceFamily(&[
                    "fig5-C1", "fig5-C2", "fig5-C3", "fig5-C4", "fig5-C5", "fig5-C8",
                ]),
                CongruenceFamily(&[
                    "fig5-C1", "fig5-C2", "fig5-C3", "fig5-C4", "fig5-C5", "fig5-C8",
                ]),
            ],
        },
        Fixture {
            name: "crown-stack",
            facts: vec![
                Lattice(false),
                RelativelyComplemented(true),
                Tolerance("crown-stack-T", true),
                Congruence("crown-stack-T", false),
            ],
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_file_parses() {
        for (name, _) in FILES {
            if let Some(stem) = name.strip_suffix(".poset") {
                poset(stem);
            } else {
                relation(name.strip_suffix(".rel").unwrap());
            }
        }
    }

    #[test]
    fn facts_replay() {
        for fixture in all() {
            for (what, outcome) in fixture.replay() {
                assert_eq!(outcome, Ok(()), "{what}");
            }
        }
    }
}
