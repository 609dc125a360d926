//! The refinement order on tolerances and the quotient tolerance `T/S`.
//!
//! `S ≤ T` when every block of `S` lies in exactly one block of `T` and every
//! block of `T` is a union of blocks of `S`. In that case `T/S` relates two
//! `S`-blocks when some `T`-block holds both, giving a relation on the
//! quotient poset `P/S`. The block maps between `P/T` and `(P/S)/(T/S)` are
//! rebuilt here and every property they are supposed to have is checked on
//! the spot.

use itertools::Itertools;

use crate::quotient::{quotient_poset, QuotientPoset};
use crate::relation::{is_tolerance, Relation};
use crate::{ElementSet, Error, Poset, Result};

/// Largest quotient accepted by [`exists_order_preserving_bijection`].
pub const BIJECTION_SEARCH_BOUND: usize = 8;

/// Two tolerances on one poset with their quotients and the block
/// containment map between them.
#[derive(Clone, Debug)]
pub struct RefinementPair {
    s_quotient: QuotientPoset,
    t_quotient: QuotientPoset,
    /// For each `S`-block, every `T`-block containing it.
    containment: Vec<Vec<usize>>,
    s_within_t: bool,
    congruences: bool,
}

impl RefinementPair {
    pub fn new(p: &Poset, s: &Relation, t: &Relation) -> Result<Self> {
        let s_quotient = quotient_poset(p, s)?;
        let t_quotient = quotient_poset(p, t)?;
        Ok(Self::from_quotients(
            s_quotient,
            t_quotient,
            s.is_subset(t),
            s.is_transitive() && t.is_transitive(),
        ))
    }

    /// From quotients already known to come from tolerances.
    pub(crate) fn from_quotients(
        s_quotient: QuotientPoset,
        t_quotient: QuotientPoset,
        s_within_t: bool,
        congruences: bool,
    ) -> Self {
        let containment = s_quotient
            .blocks()
            .iter()
            .map(|b| {
                (0..t_quotient.len())
                    .filter(|&k| b.is_subset(&t_quotient.blocks()[k]))
                    .collect()
            })
            .collect();
        Self {
            s_quotient,
            t_quotient,
            containment,
            s_within_t,
            congruences,
        }
    }

    /// `P/S`.
    pub fn s_quotient(&self) -> &QuotientPoset {
        &self.s_quotient
    }

    /// `P/T`.
    pub fn t_quotient(&self) -> &QuotientPoset {
        &self.t_quotient
    }

    pub fn containment(&self) -> &[Vec<usize>] {
        &self.containment
    }

    /// Both tolerances are transitive.
    pub fn is_congruence_pair(&self) -> bool {
        self.congruences
    }

    /// `S ≤ T`. When it holds, `S ⊆ T` is asserted as well.
    pub fn refines(&self) -> Result<bool> {
        let unique = self.containment.iter().all(|c| c.len() == 1);
        let unions = self.t_quotient.blocks().iter().all(|tb| {
            let covered = self
                .s_quotient
                .blocks()
                .iter()
                .filter(|sb| sb.is_subset(tb))
                .fold(ElementSet::new(), |acc, sb| acc.union(sb));
            &covered == tb
        });
        let holds = unique && unions;
        if holds && !self.s_within_t {
            return Err(Error::violated(
                "refinement-inclusion",
                "S ≤ T holds but S is not contained in T",
            ));
        }
        Ok(holds)
    }

    /// `T/S` as a relation on `P/S`. Reflexivity and symmetry are checked,
    /// not assumed.
    pub fn quotient_relation(&self) -> Result<Relation> {
        if !self.refines()? {
            return Err(Error::NotARefinement);
        }
        let m = self.s_quotient.len();
        let matrix: Vec<Vec<bool>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        self.containment[i]
                            .iter()
                            .any(|k| self.containment[j].contains(k))
                    })
                    .collect()
            })
            .collect();
        Relation::from_matrix(&matrix)
            .map_err(|e| Error::violated("quotient-relation", format!("T/S: {e}")))
    }

    /// `(P/S)/(T/S)`, available when `T/S` is a tolerance on `P/S`.
    pub fn double_quotient(&self) -> Result<QuotientPoset> {
        let ts = self.quotient_relation()?;
        if !is_tolerance(self.s_quotient.poset(), &ts) {
            return Err(Error::QuotientRelationNotTolerance);
        }
        quotient_poset(self.s_quotient.poset(), &ts)
    }

    /// Sends each `T`-block to the set of `S`-blocks inside it, checking
    /// that the image is a block of `T/S`, that the map is injective and
    /// that `|(P/S)/(T/S)| >= |P/T|`.
    pub fn injection(&self) -> Result<(BlockMap, QuotientPoset)> {
        let double = self.double_quotient()?;
        let mut images = Vec::with_capacity(self.t_quotient.len());
        for (k, tb) in self.t_quotient.blocks().iter().enumerate() {
            let inside: ElementSet = (0..self.s_quotient.len())
                .filter(|&i| self.s_quotient.blocks()[i].is_subset(tb))
                .collect();
            if inside.is_empty() {
                return Err(Error::violated(
                    "injection",
                    format!("no S-block inside {}", self.t_quotient.poset().label(k)),
                ));
            }
            let image = double.position(&inside).ok_or_else(|| {
                Error::violated(
                    "injection",
                    format!(
                        "S-blocks inside {} do not form a block of T/S",
                        self.t_quotient.poset().label(k)
                    ),
                )
            })?;
            images.push(image);
        }
        let map = BlockMap {
            direction: MapDirection::IntoDoubleQuotient,
            images,
        };
        if !map.is_injective() {
            return Err(Error::violated("injection", "two T-blocks share an image"));
        }
        if double.len() < self.t_quotient.len() {
            return Err(Error::violated(
                "injection",
                format!(
                    "|(P/S)/(T/S)| = {} < |P/T| = {}",
                    double.len(),
                    self.t_quotient.len()
                ),
            ));
        }
        Ok((map, double))
    }

    /// For congruences: sends each block of `T/S` to the union of its
    /// `S`-blocks, checking that this lands on `P/T` bijectively and
    /// preserves `⊑`.
    pub fn bijection(&self) -> Result<(BlockMap, QuotientPoset)> {
        if !self.congruences {
            return Err(Error::NotACongruence);
        }
        let double = self.double_quotient()?;
        let mut images = Vec::with_capacity(double.len());
        for (d, members) in double.blocks().iter().enumerate() {
            let union = members.iter().fold(ElementSet::new(), |acc, i| {
                acc.union(&self.s_quotient.blocks()[i])
            });
            let image = self.t_quotient.position(&union).ok_or_else(|| {
                Error::violated(
                    "bijection",
                    format!("union of {} is not a T-block", double.poset().label(d)),
                )
            })?;
            images.push(image);
        }
        let map = BlockMap {
            direction: MapDirection::OntoTBlocks,
            images,
        };
        if !map.is_bijective_onto(self.t_quotient.len()) {
            return Err(Error::violated(
                "bijection",
                "map is not a bijection onto P/T",
            ));
        }
        if let Some((x, y)) = order_violation(&map, double.poset(), self.t_quotient.poset()) {
            return Err(Error::violated(
                "bijection",
                format!(
                    "{} ⊑ {} but images are unordered",
                    double.poset().label(x),
                    double.poset().label(y)
                ),
            ));
        }
        Ok((map, double))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapDirection {
    /// `P/T → (P/S)/(T/S)`.
    IntoDoubleQuotient,
    /// `(P/S)/(T/S) → P/T`.
    OntoTBlocks,
}

impl MapDirection {
    fn reversed(self) -> Self {
        match self {
            MapDirection::IntoDoubleQuotient => MapDirection::OntoTBlocks,
            MapDirection::OntoTBlocks => MapDirection::IntoDoubleQuotient,
        }
    }
}

/// A map between quotient posets given by element positions:
/// domain element `i` goes to codomain element `images[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockMap {
    pub direction: MapDirection,
    pub images: Vec<usize>,
}

impl BlockMap {
    pub fn is_injective(&self) -> bool {
        self.images.iter().all_unique()
    }

    pub fn is_bijective_onto(&self, codomain_len: usize) -> bool {
        self.images.len() == codomain_len
            && self.is_injective()
            && self.images.iter().all(|&i| i < codomain_len)
    }

    /// The inverse of a bijection.
    pub fn inverse(&self) -> Option<BlockMap> {
        let n = self.images.len();
        if !self.is_bijective_onto(n) {
            return None;
        }
        let mut images = vec![0; n];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Some(BlockMap {
            direction: self.direction.reversed(),
            images,
        })
    }
}

/// The first pair `x ⊑ y` in `dom` whose images are not ordered in `cod`.
pub fn order_violation(map: &BlockMap, dom: &Poset, cod: &Poset) -> Option<(usize, usize)> {
    assert_eq!(
        map.images.len(),
        dom.len(),
        "map must be total on its domain"
    );
    (0..dom.len())
        .flat_map(|x| dom.up_set(x).iter().map(move |y| (x, y)))
        .find(|&(x, y)| !cod.leq(map.images[x], map.images[y]))
}

pub fn is_order_preserving(map: &BlockMap, dom: &Poset, cod: &Poset) -> bool {
    order_violation(map, dom, cod).is_none()
}

/// Exhaustive search over all bijections `dom → cod`.
pub fn exists_order_preserving_bijection(dom: &Poset, cod: &Poset) -> Result<bool> {
    if dom.len() != cod.len() {
        return Err(Error::SizeMismatch {
            expected: dom.len(),
            found: cod.len(),
        });
    }
    let n = dom.len();
    if n > BIJECTION_SEARCH_BOUND {
        return Err(Error::BoundExceeded {
            what: "quotient",
            size: n,
            bound: BIJECTION_SEARCH_BOUND,
        });
    }
    Ok((0..n)
        .permutations(n)
        .any(|perm| (0..n).all(|x| dom.up_set(x).iter().all(|y| cod.leq(perm[x], perm[y])))))
}

pub fn refines(p: &Poset, s: &Relation, t: &Relation) -> Result<bool> {
    RefinementPair::new(p, s, t)?.refines()
}

/// `P/S` together with `T/S` on it.
pub fn quotient_relation(
    p: &Poset,
    s: &Relation,
    t: &Relation,
) -> Result<(QuotientPoset, Relation)> {
    let pair = RefinementPair::new(p, s, t)?;
    let ts = pair.quotient_relation()?;
    Ok((pair.s_quotient, ts))
}

/// `P/T → (P/S)/(T/S)`; see [`RefinementPair::injection`].
pub fn injection_f(p: &Poset, s: &Relation, t: &Relation) -> Result<BlockMap> {
    Ok(RefinementPair::new(p, s, t)?.injection()?.0)
}

/// `(P/S)/(T/S) → P/T` for congruences; see [`RefinementPair::bijection`].
pub fn congruence_bijection_g(p: &Poset, s: &Relation, t: &Relation) -> Result<BlockMap> {
    Ok(RefinementPair::new(p, s, t)?.bijection()?.0)
}
