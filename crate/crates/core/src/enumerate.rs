//! Exhaustive generation: posets up to isomorphism, every tolerance and
//! every congruence on a poset, and families of relations ordered by
//! inclusion.

use std::collections::BTreeSet;

use crate::order::{numeric_labels, CANONICAL_FORM_BOUND};
use crate::relation::{is_tolerance, Relation};
use crate::{CanonicalForm, ElementSet, Error, Poset, Result};

/// Default size limit for [`all_posets`].
pub const DEFAULT_POSET_BOUND: usize = 6;
/// Largest carrier for [`all_tolerances`].
pub const TOLERANCE_CARRIER_BOUND: usize = 6;
/// Largest carrier for [`all_congruences`].
pub const CONGRUENCE_CARRIER_BOUND: usize = 10;

/// One representative per isomorphism class of `n`-element posets, sorted
/// by canonical form and labelled `0..n`.
pub fn all_posets(n: usize) -> Result<Vec<Poset>> {
    all_posets_with_bound(n, DEFAULT_POSET_BOUND)
}

pub fn all_posets_with_bound(n: usize, bound: usize) -> Result<Vec<Poset>> {
    let bound = bound.min(CANONICAL_FORM_BOUND);
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "poset enumeration",
            size: n,
            bound,
        });
    }
    Ok(poset_classes(n)
        .iter()
        .map(CanonicalForm::to_poset)
        .collect())
}

/// Every `n`-poset arises from an `(n-1)`-poset by adding a maximal element
/// above some down-closed subset.
fn poset_classes(n: usize) -> BTreeSet<CanonicalForm> {
    let mut classes = BTreeSet::new();
    classes.insert(Poset::antichain(0).canonical_form().expect("empty poset"));
    for size in 1..=n {
        let mut next = BTreeSet::new();
        for form in &classes {
            let base = form.to_poset();
            let m = base.len();
            for mask in 0u32..(1 << m) {
                let ideal: ElementSet = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
                if !ideal.iter().all(|i| base.down_set(i).is_subset(&ideal)) {
                    continue;
                }
                let mut up: Vec<ElementSet> = (0..m).map(|i| base.up_set(i).clone()).collect();
                for i in ideal.iter() {
                    up[i].insert(m);
                }
                up.push(ElementSet::singleton(m));
                let extended = Poset::from_up_sets(numeric_labels(size), up);
                next.insert(extended.canonical_form().expect("bounded by caller"));
            }
        }
        classes = next;
    }
    classes
}

/// A duplicate-free list of relations on one poset with their inclusion
/// matrix.
#[derive(Clone, Debug)]
pub struct ToleranceFamily {
    poset: Poset,
    members: Vec<Relation>,
    /// `below[i]` holds every `j` with `members[i] ⊆ members[j]`.
    below: Vec<ElementSet>,
}

impl ToleranceFamily {
    /// Sorts members by size, then lexicographically, dropping duplicates.
    pub fn new(poset: Poset, mut members: Vec<Relation>) -> Self {
        members.sort_by(|a, b| (a.pair_count(), a).cmp(&(b.pair_count(), b)));
        members.dedup();
        let below = members
            .iter()
            .map(|a| {
                (0..members.len())
                    .filter(|&j| a.is_subset(&members[j]))
                    .collect()
            })
            .collect();
        Self {
            poset,
            members,
            below,
        }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn members(&self) -> &[Relation] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn position(&self, r: &Relation) -> Option<usize> {
        self.members.iter().position(|m| m == r)
    }

    /// `members[i] ⊆ members[j]`.
    pub fn is_subset(&self, i: usize, j: usize) -> bool {
        self.below[i].contains(j)
    }
}

/// Every tolerance on `p`.
pub fn all_tolerances(p: &Poset) -> Result<ToleranceFamily> {
    let members = closed_relations(p)?
        .into_iter()
        .filter(|t| is_tolerance(p, t))
        .collect();
    Ok(ToleranceFamily::new(p.clone(), members))
}

/// Every reflexive symmetric relation on `p` closed under componentwise
/// joins and meets, i.e. passing the first two tolerance conditions.
///
/// Depth-first over the off-diagonal pairs in lexicographic order. Adding a
/// pair records every pair it forces together with the pairs already
/// present; a branch dies as soon as a forced pair has been left out.
pub fn closed_relations(p: &Poset) -> Result<Vec<Relation>> {
    let n = p.len();
    if n > TOLERANCE_CARRIER_BOUND {
        return Err(Error::BoundExceeded {
            what: "tolerance enumeration",
            size: n,
            bound: TOLERANCE_CARRIER_BOUND,
        });
    }
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut search = ClosedSearch {
        poset: p,
        rows: (0..n).map(ElementSet::singleton).collect(),
        forced: vec![0; n * n],
        excluded: vec![false; n * n],
        found: Vec::new(),
    };
    search.descend(&slots, 0);
    Ok(search.found)
}

struct ClosedSearch<'a> {
    poset: &'a Poset,
    rows: Vec<ElementSet>,
    /// How many included pair combinations force each unordered pair.
    forced: Vec<u32>,
    excluded: Vec<bool>,
    found: Vec<Relation>,
}

impl ClosedSearch<'_> {
    fn descend(&mut self, slots: &[(usize, usize)], k: usize) {
        let Some(&(i, j)) = slots.get(k) else {
            self.found.push(Relation::from_rows(self.rows.clone()));
            return;
        };
        let n = self.poset.len();

        // Leave the pair out, unless something already forces it.
        if self.forced[i * n + j] == 0 {
            self.excluded[i * n + j] = true;
            self.descend(slots, k + 1);
            self.excluded[i * n + j] = false;
        }

        // Put it in.
        self.rows[i].insert(j);
        self.rows[j].insert(i);
        let forced = self.forced_by(i, j);
        if forced.iter().all(|&(a, b)| !self.excluded[a * n + b]) {
            for &(a, b) in &forced {
                self.forced[a * n + b] += 1;
            }
            self.descend(slots, k + 1);
            for &(a, b) in &forced {
                self.forced[a * n + b] -= 1;
            }
        }
        self.rows[i].remove(j);
        self.rows[j].remove(i);
    }

    /// Off-diagonal pairs forced by `(i, j)` together with any present
    /// pair, normalised to `a < b`.
    fn forced_by(&self, i: usize, j: usize) -> Vec<(usize, usize)> {
        let p = self.poset;
        let mut out = Vec::new();
        for (x, y) in [(i, j), (j, i)] {
            for z in 0..p.len() {
                for u in self.rows[z].iter() {
                    for (a, b) in [(p.join(x, z), p.join(y, u)), (p.meet(x, z), p.meet(y, u))] {
                        if let (Some(a), Some(b)) = (a, b) {
                            if a != b {
                                out.push((a.min(b), a.max(b)));
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// Every congruence on `p`, found by running each set partition of the
/// carrier through the tolerance check.
pub fn all_congruences(p: &Poset) -> Result<ToleranceFamily> {
    let n = p.len();
    if n > CONGRUENCE_CARRIER_BOUND {
        return Err(Error::BoundExceeded {
            what: "congruence enumeration",
            size: n,
            bound: CONGRUENCE_CARRIER_BOUND,
        });
    }
    let members = SetPartitions::new(n)
        .map(|classes| Relation::from_cliques(n, &classes).expect("classes within carrier"))
        .filter(|t| is_tolerance(p, t))
        .collect();
    Ok(ToleranceFamily::new(p.clone(), members))
}

/// Set partitions of `{0..n}` via restricted growth strings, in
/// lexicographic order of the strings.
pub struct SetPartitions {
    rgs: Vec<usize>,
    done: bool,
}

impl SetPartitions {
    pub fn new(n: usize) -> Self {
        Self {
            rgs: vec![0; n],
            done: false,
        }
    }

    fn advance(&mut self) {
        // Increment the rightmost position that may still grow.
        for k in (1..self.rgs.len()).rev() {
            let max_prefix = self.rgs[..k].iter().copied().max().unwrap_or(0);
            if self.rgs[k] <= max_prefix {
                self.rgs[k] += 1;
                for slot in &mut self.rgs[k + 1..] {
                    *slot = 0;
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for SetPartitions {
    type Item = Vec<ElementSet>;

    fn next(&mut self) -> Option<Vec<ElementSet>> {
        if self.done {
            return None;
        }
        let classes = self.rgs.iter().copied().max().map_or(0, |m| m + 1);
        let mut out = vec![ElementSet::new(); classes];
        for (i, &c) in self.rgs.iter().enumerate() {
            out[c].insert(i);
        }
        self.advance();
        Some(out)
    }
}

/// The family as a poset under inclusion, members labelled `T1..Tm`.
pub fn family_poset(f: &ToleranceFamily) -> Poset {
    let labels = (1..=f.len()).map(|i| format!("T{i}")).collect();
    Poset::from_up_sets(labels, f.below.clone())
}

/// The inclusion-minimal members containing both `i` and `j`.
pub fn minimal_upper_bounds(f: &ToleranceFamily, i: usize, j: usize) -> Result<Vec<usize>> {
    for k in [i, j] {
        if k >= f.len() {
            return Err(Error::NotInFamily(k));
        }
    }
    let upper = f.below[i].intersection(&f.below[j]);
    Ok(upper
        .iter()
        .filter(|&k| upper.iter().all(|m| m == k || !f.is_subset(m, k)))
        .collect())
}

/// The least member containing both, when there is one.
pub fn join_in_family(f: &ToleranceFamily, i: usize, j: usize) -> Result<Option<usize>> {
    let minimal = minimal_upper_bounds(f, i, j)?;
    let upper = f.below[i].intersection(&f.below[j]);
    Ok(match minimal.as_slice() {
        [k] if upper.is_subset(&f.below[*k]) => Some(*k),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_poset_counts() {
        assert_eq!(all_posets(1).unwrap().len(), 1);
        assert_eq!(all_posets(2).unwrap().len(), 2);
        assert_eq!(all_posets(3).unwrap().len(), 5);
        assert!(matches!(all_posets(7), Err(Error::BoundExceeded { .. })));
        assert_eq!(all_posets_with_bound(7, 7).unwrap().len(), 2045);
    }

    #[test]
    fn partitions_are_bell_numbers() {
        let counts: Vec<usize> = (0..=7).map(|n| SetPartitions::new(n).count()).collect();
        assert_eq!(counts, [1, 1, 2, 5, 15, 52, 203, 877]);
        let parts: Vec<Vec<ElementSet>> = SetPartitions::new(2).collect();
        assert_eq!(parts[0], vec![[0, 1].into_iter().collect::<ElementSet>()]);
        assert_eq!(
            parts[1],
            vec![ElementSet::singleton(0), ElementSet::singleton(1)]
        );
    }

    #[test]
    fn chain_tolerances() {
        assert_eq!(all_tolerances(&Poset::chain(2)).unwrap().len(), 2);
        let f = all_tolerances(&Poset::chain(3)).unwrap();
        assert_eq!(f.len(), 5);
        assert!(f.members()[0].is_diagonal());
        assert!(f.members()[4].is_full());
    }

    #[test]
    fn family_order() {
        let f = all_tolerances(&Poset::chain(3)).unwrap();
        let q = family_poset(&f);
        assert_eq!(q.bottom(), Some(0));
        assert_eq!(q.top(), Some(4));
        let one = |a: usize, b: usize| {
            f.position(&Relation::from_cliques(3, &[[a, b].into_iter().collect()]).unwrap())
                .unwrap()
        };
        let (low, high) = (one(0, 1), one(1, 2));
        assert!(!q.leq(low, high) && !q.leq(high, low));
        let both = f
            .position(
                &Relation::from_cliques(
                    3,
                    &[[0, 1].into_iter().collect(), [1, 2].into_iter().collect()],
                )
                .unwrap(),
            )
            .unwrap();
        assert_eq!(minimal_upper_bounds(&f, low, high).unwrap(), vec![both]);
        assert_eq!(join_in_family(&f, low, high).unwrap(), Some(both));
        assert_eq!(minimal_upper_bounds(&f, low, low).unwrap(), vec![low]);
        assert_eq!(minimal_upper_bounds(&f, 0, 9), Err(Error::NotInFamily(9)));
    }

    #[test]
    fn singleton_family() {
        let f = all_congruences(&Poset::chain(1)).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(family_poset(&f).len(), 1);
    }

    #[test]
    fn enumeration_bounds() {
        assert!(matches!(
            all_tolerances(&Poset::antichain(7)),
            Err(Error::BoundExceeded { .. })
        ));
        assert!(matches!(
            all_congruences(&Poset::antichain(11)),
            Err(Error::BoundExceeded { .. })
        ));
    }
}
