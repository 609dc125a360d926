//! Reflexive symmetric relations on a poset's carrier, the four tolerance
//! conditions and block computation.

use std::cmp::Reverse;
use std::fmt;

use crate::{ElementSet, Error, Poset, Result};

/// A reflexive, symmetric relation on `{0, .., n-1}`.
///
/// Row `i` holds every `j` related to `i`. The constructors enforce
/// reflexivity and symmetry, so every value of this type is a candidate
/// tolerance.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Relation {
    rows: Vec<ElementSet>,
}

impl Relation {
    /// Each element related only to itself.
    pub fn diagonal(n: usize) -> Self {
        Self {
            rows: (0..n).map(ElementSet::singleton).collect(),
        }
    }

    /// Everything related to everything.
    pub fn full(n: usize) -> Self {
        Self {
            rows: vec![ElementSet::full(n); n],
        }
    }

    /// The diagonal together with the square of every clique.
    pub fn from_cliques(n: usize, cliques: &[ElementSet]) -> Result<Self> {
        let mut rows: Vec<ElementSet> = (0..n).map(ElementSet::singleton).collect();
        for clique in cliques {
            if clique.bound() > n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    found: clique.bound(),
                });
            }
            for i in clique.iter() {
                rows[i] = rows[i].union(clique);
            }
        }
        Ok(Self { rows })
    }

    /// From an `n x n` matrix, rejecting anything not reflexive and
    /// symmetric.
    pub fn from_matrix(matrix: &[Vec<bool>]) -> Result<Self> {
        let n = matrix.len();
        let mut rows = Vec::with_capacity(n);
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            if !row[i] {
                return Err(Error::InvalidRelation(format!("({i},{i}) missing")));
            }
            for j in 0..n {
                if row[j] != matrix[j][i] {
                    return Err(Error::InvalidRelation(format!(
                        "({i},{j}) and ({j},{i}) disagree"
                    )));
                }
            }
            rows.push((0..n).filter(|&j| row[j]).collect());
        }
        Ok(Self { rows })
    }

    pub(crate) fn from_rows(rows: Vec<ElementSet>) -> Self {
        debug_assert!(rows.iter().enumerate().all(|(i, r)| r.contains(i)));
        Self { rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    /// Everything related to `i`, including `i` itself.
    pub fn related(&self, i: usize) -> &ElementSet {
        &self.rows[i]
    }

    /// Number of ordered pairs in the relation.
    pub fn pair_count(&self) -> usize {
        self.rows.iter().map(ElementSet::len).sum()
    }

    /// All ordered pairs, ascending.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |j| (i, j)))
    }

    pub fn is_full(&self) -> bool {
        self.pair_count() == self.len() * self.len()
    }

    pub fn is_diagonal(&self) -> bool {
        self.pair_count() == self.len()
    }

    /// Diagonal or full.
    pub fn is_trivial(&self) -> bool {
        self.is_diagonal() || self.is_full()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.len() == other.len()
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(a, b)| a.is_subset(b))
    }

    pub fn intersection(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "relations on different carriers");
        Self {
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.intersection(b))
                .collect(),
        }
    }

    pub fn is_reflexive(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| r.contains(i))
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs().all(|(i, j)| self.contains(j, i))
    }

    pub fn is_transitive(&self) -> bool {
        self.pairs()
            .all(|(i, j)| self.rows[j].is_subset(&self.rows[i]))
    }

    /// `true` iff every pair inside `s` is related.
    pub fn contains_square(&self, s: &ElementSet) -> bool {
        s.iter().all(|i| s.is_subset(&self.rows[i]))
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Relation").field(&blocks(self)).finish()
    }
}

/// One of the four defining conditions of a tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    /// Related pairs have related componentwise joins, where they exist.
    Join,
    /// Dual of [`Condition::Join`] with meets.
    Meet,
    /// A chain `x T y T z` has a common lower bound related to `y` and a
    /// common upper bound related to `y`.
    CommonBounds,
    /// Each related pair is squeezed between a related pair below and above
    /// it which absorbs everything related to both.
    Absorbing,
}

impl Condition {
    pub const ALL: [Condition; 4] = [
        Condition::Join,
        Condition::Meet,
        Condition::CommonBounds,
        Condition::Absorbing,
    ];

    /// 1-based condition number.
    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    pub fn from_number(k: u8) -> Option<Self> {
        Self::ALL.get(usize::from(k).checked_sub(1)?).copied()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Violation {
    /// The forced pair of joins is not related.
    JoinsUnrelated {
        left: usize,
        right: usize,
    },
    /// The forced pair of meets is not related.
    MeetsUnrelated {
        left: usize,
        right: usize,
    },
    NoLowerBound,
    NoUpperBound,
    NoAbsorbingPair,
}

impl Violation {
    pub fn code(&self) -> &'static str {
        match self {
            Violation::JoinsUnrelated { .. } => "joins-unrelated",
            Violation::MeetsUnrelated { .. } => "meets-unrelated",
            Violation::NoLowerBound => "no-lower-bound",
            Violation::NoUpperBound => "no-upper-bound",
            Violation::NoAbsorbingPair => "no-absorbing-pair",
        }
    }
}

/// The lexicographically least tuple violating a condition.
///
/// `elements` is `[x, y, z, u]` for conditions 1 and 2, `[x, y, z]` for
/// condition 3 and `[x, y]` for condition 4.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConditionWitness {
    pub condition: Condition,
    pub elements: Vec<usize>,
    pub violation: Violation,
}

impl ConditionWitness {
    /// Re-checks the witness from scratch against `p` and `t`.
    pub fn replays(&self, p: &Poset, t: &Relation) -> bool {
        let e = &self.elements;
        match (self.condition, self.violation, e.as_slice()) {
            (Condition::Join, Violation::JoinsUnrelated { left, right }, &[x, y, z, u]) => {
                t.contains(x, y)
                    && t.contains(z, u)
                    && p.join(x, z) == Some(left)
                    && p.join(y, u) == Some(right)
                    && !t.contains(left, right)
            }
            (Condition::Meet, Violation::MeetsUnrelated { left, right }, &[x, y, z, u]) => {
                t.contains(x, y)
                    && t.contains(z, u)
                    && p.meet(x, z) == Some(left)
                    && p.meet(y, u) == Some(right)
                    && !t.contains(left, right)
            }
            (Condition::CommonBounds, v, &[x, y, z]) if !t.is_full() => {
                let chained = t.contains(x, y) && t.contains(y, z);
                let below = (0..p.len())
                    .any(|w| p.leq(w, x) && p.leq(w, y) && p.leq(w, z) && t.contains(w, y));
                let above = (0..p.len())
                    .any(|w| p.leq(x, w) && p.leq(y, w) && p.leq(z, w) && t.contains(y, w));
                chained
                    && match v {
                        Violation::NoLowerBound => !below,
                        Violation::NoUpperBound => !above,
                        _ => false,
                    }
            }
            (Condition::Absorbing, Violation::NoAbsorbingPair, &[x, y]) if !t.is_full() => {
                let n = p.len();
                let absorbs = |w: usize| {
                    (0..n)
                        .filter(|&v| t.contains(v, x) && t.contains(v, y))
                        .all(|v| t.contains(v, w))
                };
                t.contains(x, y)
                    && !(0..n).any(|z| {
                        (0..n).any(|u| {
                            t.contains(z, u)
                                && p.leq(z, x)
                                && p.leq(z, y)
                                && p.leq(x, u)
                                && p.leq(y, u)
                                && absorbs(z)
                                && absorbs(u)
                        })
                    })
            }
            _ => false,
        }
    }

    /// Human-readable rendering using the poset's labels.
    pub fn describe(&self, p: &Poset) -> String {
        let l = |i: usize| p.label(i);
        let e = &self.elements;
        match (self.violation, e.as_slice()) {
            (Violation::JoinsUnrelated { left, right }, &[x, y, z, u]) => format!(
                "condition 1: ({},{}) and ({},{}) related but joins ({},{}) are not",
                l(x), l(y), l(z), l(u), l(left), l(right)
            ),
            (Violation::MeetsUnrelated { left, right }, &[x, y, z, u]) => format!(
                "condition 2: ({},{}) and ({},{}) related but meets ({},{}) are not",
                l(x), l(y), l(z), l(u), l(left), l(right)
            ),
            (Violation::NoLowerBound, &[x, y, z]) => format!(
                "condition 3: ({},{}),({},{}) related but no common lower bound is related to {}",
                l(x), l(y), l(y), l(z), l(y)
            ),
            (Violation::NoUpperBound, &[x, y, z]) => format!(
                "condition 3: ({},{}),({},{}) related but no common upper bound is related to {}",
                l(x), l(y), l(y), l(z), l(y)
            ),
            (Violation::NoAbsorbingPair, &[x, y]) => format!(
                "condition 4: no related pair below and above ({},{}) absorbs their common neighbours",
                l(x), l(y)
            ),
            _ => format!("condition {}: {:?}", self.condition.number(), self.elements),
        }
    }
}

/// Checks one condition, returning the least violating tuple on failure.
///
/// Conditions 3 and 4 hold vacuously for the full relation.
pub fn check_condition(
    p: &Poset,
    t: &Relation,
    condition: Condition,
) -> std::result::Result<(), ConditionWitness> {
    assert_eq!(p.len(), t.len(), "relation and poset carriers differ");
    let found = match condition {
        Condition::Join => closure_violation(t, |a, b| p.join(a, b))
            .map(|(e, left, right)| (e, Violation::JoinsUnrelated { left, right })),
        Condition::Meet => closure_violation(t, |a, b| p.meet(a, b))
            .map(|(e, left, right)| (e, Violation::MeetsUnrelated { left, right })),
        _ if t.is_full() => None,
        Condition::CommonBounds => common_bounds_violation(p, t),
        Condition::Absorbing => absorbing_violation(p, t).map(|e| (e, Violation::NoAbsorbingPair)),
    };
    match found {
        None => Ok(()),
        Some((elements, violation)) => Err(ConditionWitness {
            condition,
            elements,
            violation,
        }),
    }
}

fn closure_violation(
    t: &Relation,
    op: impl Fn(usize, usize) -> Option<usize>,
) -> Option<(Vec<usize>, usize, usize)> {
    let n = t.len();
    for x in 0..n {
        for y in t.related(x).iter() {
            for z in 0..n {
                let Some(left) = op(x, z) else { continue };
                for u in t.related(z).iter() {
                    if let Some(right) = op(y, u) {
                        if !t.contains(left, right) {
                            return Some((vec![x, y, z, u], left, right));
                        }
                    }
                }
            }
        }
    }
    None
}

fn common_bounds_violation(p: &Poset, t: &Relation) -> Option<(Vec<usize>, Violation)> {
    for x in 0..t.len() {
        for y in t.related(x).iter() {
            let below_xy = p
                .down_set(x)
                .intersection(p.down_set(y))
                .intersection(t.related(y));
            let above_xy = p
                .up_set(x)
                .intersection(p.up_set(y))
                .intersection(t.related(y));
            for z in t.related(y).iter() {
                if !below_xy.intersects(p.down_set(z)) {
                    return Some((vec![x, y, z], Violation::NoLowerBound));
                }
                if !above_xy.intersects(p.up_set(z)) {
                    return Some((vec![x, y, z], Violation::NoUpperBound));
                }
            }
        }
    }
    None
}

fn absorbing_violation(p: &Poset, t: &Relation) -> Option<Vec<usize>> {
    for x in 0..t.len() {
        for y in t.related(x).iter() {
            let common = t.related(x).intersection(t.related(y));
            let absorbs = |w: &usize| common.is_subset(t.related(*w));
            let lows: Vec<usize> = p
                .down_set(x)
                .intersection(p.down_set(y))
                .iter()
                .filter(absorbs)
                .collect();
            let highs: ElementSet = p
                .up_set(x)
                .intersection(p.up_set(y))
                .iter()
                .filter(absorbs)
                .collect();
            if !lows.iter().any(|&z| t.related(z).intersects(&highs)) {
                return Some(vec![x, y]);
            }
        }
    }
    None
}

/// The first violated condition, in condition order.
pub fn first_violation(p: &Poset, t: &Relation) -> Option<ConditionWitness> {
    Condition::ALL
        .into_iter()
        .find_map(|c| check_condition(p, t, c).err())
}

pub fn is_tolerance(p: &Poset, t: &Relation) -> bool {
    p.len() == t.len() && t.is_reflexive() && t.is_symmetric() && first_violation(p, t).is_none()
}

/// A transitive tolerance.
pub fn is_congruence(p: &Poset, t: &Relation) -> bool {
    t.is_transitive() && is_tolerance(p, t)
}

/// Maximal sets whose square lies in `t`, i.e. the maximal cliques of the
/// graph `t` induces, sorted lexicographically by ascending members.
///
/// Works for any reflexive symmetric relation, tolerance or not.
pub fn blocks(t: &Relation) -> Vec<ElementSet> {
    let n = t.len();
    let neighbours: Vec<ElementSet> = (0..n)
        .map(|i| {
            let mut row = t.related(i).clone();
            row.remove(i);
            row
        })
        .collect();
    let mut out = Vec::new();
    expand(
        &neighbours,
        ElementSet::new(),
        ElementSet::full(n),
        ElementSet::new(),
        &mut out,
    );
    out.sort();
    out
}

/// Bron-Kerbosch with pivoting. Candidates are visited in ascending order
/// and the pivot is the lowest-indexed vertex of maximum candidate degree.
fn expand(
    neighbours: &[ElementSet],
    clique: ElementSet,
    mut candidates: ElementSet,
    mut excluded: ElementSet,
    out: &mut Vec<ElementSet>,
) {
    if candidates.is_empty() {
        if excluded.is_empty() {
            out.push(clique);
        }
        return;
    }
    let pivot = candidates
        .union(&excluded)
        .iter()
        .max_by_key(|&u| (candidates.intersection(&neighbours[u]).len(), Reverse(u)))
        .expect("candidates are non-empty");
    for v in candidates.difference(&neighbours[pivot]).iter() {
        let mut grown = clique.clone();
        grown.insert(v);
        expand(
            neighbours,
            grown,
            candidates.intersection(&neighbours[v]),
            excluded.intersection(&neighbours[v]),
            out,
        );
        candidates.remove(v);
        excluded.insert(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1() -> Poset {
        Poset::from_covers(
            &["0", "a", "b", "c", "d", "1"],
            &[
                ("0", "a"),
                ("0", "b"),
                ("a", "c"),
                ("a", "d"),
                ("b", "c"),
                ("b", "d"),
                ("c", "1"),
                ("d", "1"),
            ],
        )
        .unwrap()
    }

    fn rel(p: &Poset, cliques: &[&[&str]]) -> Relation {
        let cliques: Vec<ElementSet> = cliques.iter().map(|c| p.set_of(c).unwrap()).collect();
        Relation::from_cliques(p.len(), &cliques).unwrap()
    }

    #[test]
    fn trivial_relations() {
        let p = fig1();
        let diag = Relation::diagonal(6);
        let full = Relation::full(6);
        assert_eq!(blocks(&diag).len(), 6);
        assert_eq!(blocks(&full), vec![ElementSet::full(6)]);
        assert!(is_tolerance(&p, &diag) && is_congruence(&p, &diag));
        assert!(is_tolerance(&p, &full) && is_congruence(&p, &full));
        assert!(diag.is_trivial() && full.is_trivial());
        assert_eq!(Relation::from_cliques(6, &[]).unwrap(), diag);
    }

    #[test]
    fn matrix_constructor_validates() {
        assert!(Relation::from_matrix(&[vec![true, false], vec![false, true]]).is_ok());
        assert!(matches!(
            Relation::from_matrix(&[vec![true, true], vec![false, true]]),
            Err(Error::InvalidRelation(_))
        ));
        assert!(matches!(
            Relation::from_matrix(&[vec![false]]),
            Err(Error::InvalidRelation(_))
        ));
        assert!(Relation::from_cliques(2, &[ElementSet::singleton(2)]).is_err());
    }

    #[test]
    fn clique_form() {
        let p = fig1();
        let t1 = rel(&p, &[&["0", "a", "b", "c"], &["b", "c", "d", "1"]]);
        assert!(t1.contains(2, 4));
        assert!(!t1.contains(0, 4));
        assert_eq!(
            blocks(&t1),
            vec![
                p.set_of(&["0", "a", "b", "c"]).unwrap(),
                p.set_of(&["b", "c", "d", "1"]).unwrap()
            ]
        );
    }

    #[test]
    fn tolerance_checks_on_fig1() {
        let p = fig1();
        let t1 = rel(&p, &[&["0", "a", "b", "c"], &["b", "c", "d", "1"]]);
        let t2 = rel(&p, &[&["0", "a", "b", "d"], &["a", "c", "d", "1"]]);
        for c in Condition::ALL {
            assert!(check_condition(&p, &t1, c).is_ok(), "{c:?}");
        }
        assert!(is_tolerance(&p, &t2));
        assert!(!is_congruence(&p, &t1));
        assert!(!is_congruence(&p, &t2));

        let meet = t1.intersection(&t2);
        assert_eq!(
            meet,
            rel(
                &p,
                &[&["0", "a", "b"], &["a", "c"], &["b", "d"], &["c", "d", "1"]]
            )
        );
        let witness = first_violation(&p, &meet).expect("intersection is not a tolerance");
        assert!(witness.replays(&p, &meet));
        assert!(!is_tolerance(&p, &meet));
    }

    #[test]
    fn chain_with_gap_fails_meets() {
        let p = Poset::chain(3);
        let t = Relation::from_cliques(3, &[[0, 2].into_iter().collect()]).unwrap();
        let w = check_condition(&p, &t, Condition::Meet).unwrap_err();
        assert_eq!(w.elements, vec![0, 2, 1, 1]);
        assert_eq!(w.violation, Violation::MeetsUnrelated { left: 0, right: 1 });
        assert!(w.replays(&p, &t));
    }

    #[test]
    fn full_relation_skips_bound_conditions() {
        // The crown has no common lower bound for a, b, so the bound
        // conditions would fail if they were not guarded.
        let p = Poset::from_covers(
            &["a", "b", "c", "d"],
            &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
        )
        .unwrap();
        let full = Relation::full(4);
        assert!(check_condition(&p, &full, Condition::CommonBounds).is_ok());
        assert!(check_condition(&p, &full, Condition::Absorbing).is_ok());
        let almost = rel(&p, &[&["a", "b", "c"], &["c", "d"]]);
        assert!(!is_tolerance(&p, &almost));
    }

    #[test]
    fn condition_numbers_round_trip() {
        for c in Condition::ALL {
            assert_eq!(Condition::from_number(c.number()), Some(c));
        }
        assert_eq!(Condition::from_number(0), None);
        assert_eq!(Condition::from_number(5), None);
    }

    #[test]
    fn blocks_of_fig9_s() {
        let p = fig1();
        let s = rel(&p, &[&["0", "a"], &["d", "1"]]);
        let labels: Vec<Vec<&str>> = blocks(&s)
            .iter()
            .map(|b| b.iter().map(|i| p.label(i)).collect())
            .collect();
        assert_eq!(
            labels,
            vec![vec!["0", "a"], vec!["b"], vec!["c"], vec!["d", "1"]]
        );
    }
}
