//! Finite posets and the order-theoretic predicates used throughout the crate.
//!
//! Elements are identified by position. Labels only matter for parsing and
//! display. The order is stored as one up-set and one down-set per element,
//! so most predicates reduce to a handful of set intersections.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use itertools::Itertools;

use crate::{ElementSet, Error, Result};

/// Largest carrier accepted by [`Poset::canonical_form`].
pub const CANONICAL_FORM_BOUND: usize = 8;

pub struct Poset {
    labels: Vec<String>,
    /// `up[i]` holds every `j` with `i <= j`.
    up: Vec<ElementSet>,
    /// `down[i]` holds every `j` with `j <= i`.
    down: Vec<ElementSet>,
    joins: OnceLock<Vec<Option<usize>>>,
    meets: OnceLock<Vec<Option<usize>>>,
}

impl Poset {
    /// Builds a poset whose order is the reflexive-transitive closure of
    /// `covers`, each pair `(a, b)` meaning `a < b`.
    pub fn from_covers(labels: &[&str], covers: &[(&str, &str)]) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        let index = label_index(&labels)?;
        let lookup = |l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))
        };
        let covers = covers
            .iter()
            .map(|&(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_cover_indices(labels, &covers)
    }

    /// Same as [`Poset::from_covers`] with covers given by position.
    pub fn from_cover_indices(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        label_index(&labels)?;
        let n = labels.len();
        let mut up: Vec<ElementSet> = (0..n).map(ElementSet::singleton).collect();
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(Error::UnknownLabel(format!("#{}", a.max(b))));
            }
            if a == b {
                return Err(Error::Cycle(labels[a].clone(), labels[b].clone()));
            }
            up[a].insert(b);
        }
        // Warshall closure over rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    *row = row.union(&row_k);
                }
            }
        }
        for i in 0..n {
            for j in up[i].iter() {
                if j != i && up[j].contains(i) {
                    return Err(Error::Cycle(labels[i].clone(), labels[j].clone()));
                }
            }
        }
        Ok(Self::from_up_sets(labels, up))
    }

    /// Builds a poset from a full incidence matrix, `leq[i][j]` meaning
    /// element `i` is below element `j`. All partial-order laws are checked.
    pub fn from_leq(labels: Vec<String>, leq: &[Vec<bool>]) -> Result<Self> {
        label_index(&labels)?;
        let n = labels.len();
        if leq.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: leq.len(),
            });
        }
        let mut up = Vec::with_capacity(n);
        for row in leq {
            if row.len() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            up.push((0..n).filter(|&j| row[j]).collect::<ElementSet>());
        }
        for i in 0..n {
            if !up[i].contains(i) {
                return Err(Error::InvalidOrder(format!(
                    "`{}` is not below itself",
                    labels[i]
                )));
            }
            for j in up[i].iter() {
                if j != i && up[j].contains(i) {
                    return Err(Error::Cycle(labels[i].clone(), labels[j].clone()));
                }
                if !up[j].is_subset(&up[i]) {
                    return Err(Error::InvalidOrder(format!(
                        "not transitive through `{}` <= `{}`",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        Ok(Self::from_up_sets(labels, up))
    }

    /// Caller guarantees `up` describes a partial order.
    pub(crate) fn from_up_sets(labels: Vec<String>, up: Vec<ElementSet>) -> Self {
        let n = labels.len();
        let mut down = vec![ElementSet::new(); n];
        for (i, row) in up.iter().enumerate() {
            for j in row.iter() {
                down[j].insert(i);
            }
        }
        Self {
            labels,
            up,
            down,
            joins: OnceLock::new(),
            meets: OnceLock::new(),
        }
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        let up = (0..n)
            .map(|i| ElementSet::full(n).difference(&ElementSet::full(i)))
            .collect();
        Self::from_up_sets(numeric_labels(n), up)
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_up_sets(
            numeric_labels(n),
            (0..n).map(ElementSet::singleton).collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Looks up several labels at once.
    pub fn set_of(&self, labels: &[&str]) -> Result<ElementSet> {
        labels
            .iter()
            .map(|l| {
                self.index_of(l)
                    .ok_or_else(|| Error::UnknownLabel(l.to_string()))
            })
            .collect()
    }

    pub fn elements(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    pub fn up_set(&self, i: usize) -> &ElementSet {
        &self.up[i]
    }

    pub fn down_set(&self, i: usize) -> &ElementSet {
        &self.down[i]
    }

    /// Common upper bounds of every member of `s`.
    pub fn upper_bounds(&self, s: &ElementSet) -> ElementSet {
        s.iter()
            .fold(self.elements(), |acc, i| acc.intersection(&self.up[i]))
    }

    pub fn lower_bounds(&self, s: &ElementSet) -> ElementSet {
        s.iter()
            .fold(self.elements(), |acc, i| acc.intersection(&self.down[i]))
    }

    /// The member of `s` below every other member, if there is one.
    pub fn least(&self, s: &ElementSet) -> Option<usize> {
        s.iter().find(|&m| s.is_subset(&self.up[m]))
    }

    pub fn greatest(&self, s: &ElementSet) -> Option<usize> {
        s.iter().find(|&m| s.is_subset(&self.down[m]))
    }

    pub fn bottom(&self) -> Option<usize> {
        self.least(&self.elements())
    }

    pub fn top(&self) -> Option<usize> {
        self.greatest(&self.elements())
    }

    /// Least upper bound of `x` and `y`, present only when the set of common
    /// upper bounds has a minimum.
    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        let n = self.len();
        self.joins.get_or_init(|| {
            (0..n * n)
                .map(|k| self.least(&self.up[k / n].intersection(&self.up[k % n])))
                .collect()
        })[x * n + y]
    }

    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        let n = self.len();
        self.meets.get_or_init(|| {
            (0..n * n)
                .map(|k| self.greatest(&self.down[k / n].intersection(&self.down[k % n])))
                .collect()
        })[x * n + y]
    }

    /// The closed interval `[a, b]`.
    pub fn interval(&self, a: usize, b: usize) -> Result<ElementSet> {
        if !self.leq(a, b) {
            return Err(Error::NotBelow(
                self.labels[a].clone(),
                self.labels[b].clone(),
            ));
        }
        Ok(self.up[a].intersection(&self.down[b]))
    }

    /// Every pair in `s` has a common lower bound and a common upper bound
    /// inside `s`.
    pub fn is_directed(&self, s: &ElementSet) -> bool {
        s.iter().tuple_combinations().all(|(x, y)| {
            let pair: ElementSet = [x, y].into_iter().collect();
            self.lower_bounds(&pair).intersects(s) && self.upper_bounds(&pair).intersects(s)
        })
    }

    /// For all `x <= y` in `s`, the interval `[x, y]` lies inside `s`.
    pub fn is_convex(&self, s: &ElementSet) -> bool {
        s.iter().all(|x| {
            self.up[x]
                .intersection(s)
                .iter()
                .all(|y| self.up[x].intersection(&self.down[y]).is_subset(s))
        })
    }

    pub fn is_lattice(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| (x..n).all(|y| self.join(x, y).is_some() && self.meet(x, y).is_some()))
    }

    /// Bounded, and every element has some complement relative to the
    /// bottom and top.
    pub fn is_complemented(&self) -> bool {
        let (Some(bottom), Some(top)) = (self.bottom(), self.top()) else {
            return false;
        };
        (0..self.len()).all(|x| {
            (0..self.len()).any(|y| self.join(x, y) == Some(top) && self.meet(x, y) == Some(bottom))
        })
    }

    /// Every interval `[a, b]`, taken as a poset in its own right, is
    /// complemented. Joins and meets are those of the interval, not of the
    /// ambient poset.
    pub fn is_relatively_complemented(&self) -> bool {
        (0..self.len()).all(|a| {
            self.up[a].iter().all(|b| {
                let interval = self.up[a].intersection(&self.down[b]);
                self.subposet(&interval).is_complemented()
            })
        })
    }

    /// The restriction of the order to `s`, elements renumbered in ascending
    /// order of their original positions.
    pub fn subposet(&self, s: &ElementSet) -> Poset {
        let members: Vec<usize> = s.iter().collect();
        let labels = members.iter().map(|&i| self.labels[i].clone()).collect();
        let up = members
            .iter()
            .map(|&i| {
                members
                    .iter()
                    .enumerate()
                    .filter(|&(_, &j)| self.leq(i, j))
                    .map(|(k, _)| k)
                    .collect()
            })
            .collect();
        Self::from_up_sets(labels, up)
    }

    /// Relabels positions: element `i` of the result is element `perm[i]`
    /// of `self`.
    pub fn permute(&self, perm: &[usize]) -> Poset {
        assert_eq!(perm.len(), self.len(), "permutation length");
        let mut inverse = vec![usize::MAX; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            inverse[p] = i;
        }
        let labels = perm.iter().map(|&p| self.labels[p].clone()).collect();
        let up = perm
            .iter()
            .map(|&p| self.up[p].iter().map(|j| inverse[j]).collect())
            .collect();
        Self::from_up_sets(labels, up)
    }

    /// The cover relation (Hasse diagram edges), sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in self.up[i].iter() {
                if j == i {
                    continue;
                }
                let between = self.up[i].intersection(&self.down[j]);
                if between.len() == 2 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Order matrix minimised over all relabelings, used to identify
    /// isomorphism classes.
    pub fn canonical_form(&self) -> Result<CanonicalForm> {
        let n = self.len();
        if n > CANONICAL_FORM_BOUND {
            return Err(Error::BoundExceeded {
                what: "poset",
                size: n,
                bound: CANONICAL_FORM_BOUND,
            });
        }
        let bits = (0..n)
            .permutations(n)
            .map(|perm| CanonicalForm::encode(n, |i, j| self.leq(perm[i], perm[j])))
            .min()
            .unwrap_or(0);
        Ok(CanonicalForm { size: n, bits })
    }
}

impl Clone for Poset {
    fn clone(&self) -> Self {
        Self::from_up_sets(self.labels.clone(), self.up.clone())
    }
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.up == other.up
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .covers()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.labels[a], self.labels[b]))
            .collect();
        f.debug_struct("Poset")
            .field("elements", &self.labels)
            .field("covers", &covers)
            .finish()
    }
}

/// Row-major order matrix of a poset with at most eight elements, packed so
/// that numeric order on `bits` is lexicographic order on the matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub size: usize,
    pub bits: u64,
}

impl CanonicalForm {
    fn encode(n: usize, leq: impl Fn(usize, usize) -> bool) -> u64 {
        let mut bits = 0u64;
        for i in 0..n {
            for j in 0..n {
                bits = (bits << 1) | leq(i, j) as u64;
            }
        }
        bits
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        let n = self.size;
        let pos = n * n - 1 - (i * n + j);
        self.bits >> pos & 1 == 1
    }

    /// Rebuilds a poset labelled `0..n`.
    pub fn to_poset(&self) -> Poset {
        let n = self.size;
        let up = (0..n)
            .map(|i| (0..n).filter(|&j| self.leq(i, j)).collect())
            .collect();
        Poset::from_up_sets(numeric_labels(n), up)
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.size;
        let rows: Vec<String> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if self.leq(i, j) { '1' } else { '0' })
                    .collect()
            })
            .collect();
        write!(f, "{}", rows.join("/"))
    }
}

pub(crate) fn numeric_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn label_index(labels: &[String]) -> Result<HashMap<&str, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.as_str(), i).is_some() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}
