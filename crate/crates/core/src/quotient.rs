//! Quotient posets by a tolerance, and block joins/meets on lattices.
//!
//! Blocks are ordered by mutual domination: `B1 ⊑ B2` when every member of
//! `B1` sits below some member of `B2` and every member of `B2` sits above
//! some member of `B1`.

use crate::relation::{blocks, is_tolerance};
use crate::{ElementSet, Error, Poset, Relation, Result};

pub fn block_leq(p: &Poset, b1: &ElementSet, b2: &ElementSet) -> bool {
    b1.iter().all(|x| p.up_set(x).intersects(b2)) && b2.iter().all(|y| p.down_set(y).intersects(b1))
}

/// Renders a block as `{a,b,c}` with members in carrier order.
pub fn block_label(p: &Poset, block: &ElementSet) -> String {
    let members: Vec<&str> = block.iter().map(|i| p.label(i)).collect();
    format!("{{{}}}", members.join(","))
}

/// The blocks of a tolerance together with the order `⊑` on them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientPoset {
    blocks: Vec<ElementSet>,
    poset: Poset,
}

impl QuotientPoset {
    /// Blocks in deterministic (lexicographic) order; block `i` is element
    /// `i` of [`QuotientPoset::poset`].
    pub fn blocks(&self) -> &[ElementSet] {
        &self.blocks
    }

    /// The order on blocks as a poset, labelled `{a,b,..}`.
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn position(&self, block: &ElementSet) -> Option<usize> {
        self.blocks.iter().position(|b| b == block)
    }
}

/// Builds `P/T`. The block order is computed pointwise and then checked to
/// be a partial order; a failure there is reported as a violated claim
/// rather than trusted away.
pub fn quotient_poset(p: &Poset, t: &Relation) -> Result<QuotientPoset> {
    if !is_tolerance(p, t) {
        return Err(Error::NotATolerance);
    }
    order_blocks(p, blocks(t))
}

pub(crate) fn order_blocks(p: &Poset, blocks: Vec<ElementSet>) -> Result<QuotientPoset> {
    let labels = blocks.iter().map(|b| block_label(p, b)).collect();
    let matrix: Vec<Vec<bool>> = blocks
        .iter()
        .map(|b1| blocks.iter().map(|b2| block_leq(p, b1, b2)).collect())
        .collect();
    let poset = Poset::from_leq(labels, &matrix)
        .map_err(|e| Error::violated("quotient-poset", format!("block order: {e}")))?;
    Ok(QuotientPoset { blocks, poset })
}

/// For interval blocks `[a, b]` and `[c, d]`, `⊑` reduces to `a <= c` and
/// `b <= d`. Both sides are computed and compared.
pub fn interval_block_leq(p: &Poset, a: usize, b: usize, c: usize, d: usize) -> Result<bool> {
    let first = p
        .interval(a, b)
        .map_err(|_| Error::NotAnInterval(format!("[{},{}]", p.label(a), p.label(b))))?;
    let second = p
        .interval(c, d)
        .map_err(|_| Error::NotAnInterval(format!("[{},{}]", p.label(c), p.label(d))))?;
    let direct = block_leq(p, &first, &second);
    let endpoints = p.leq(a, c) && p.leq(b, d);
    if direct != endpoints {
        return Err(Error::violated(
            "interval-block-order",
            format!(
                "[{},{}] vs [{},{}]: block order {direct}, endpoints {endpoints}",
                p.label(a),
                p.label(b),
                p.label(c),
                p.label(d)
            ),
        ));
    }
    Ok(direct)
}

/// Block joins and meets of a tolerance on a lattice, computed from
/// elementwise joins and meets alone (never from `⊑`).
pub struct BlockLattice<'a> {
    poset: &'a Poset,
    blocks: Vec<ElementSet>,
}

impl<'a> BlockLattice<'a> {
    pub fn new(p: &'a Poset, t: &Relation) -> Result<Self> {
        if !p.is_lattice() {
            return Err(Error::NotALattice);
        }
        if !is_tolerance(p, t) {
            return Err(Error::NotATolerance);
        }
        Ok(Self {
            poset: p,
            blocks: blocks(t),
        })
    }

    pub fn blocks(&self) -> &[ElementSet] {
        &self.blocks
    }

    /// Index of the unique block holding `x ∨ y` for all `x ∈ B_i`, `y ∈ B_j`.
    pub fn join(&self, i: usize, j: usize) -> Result<usize> {
        self.absorbing_block(i, j, "join", |x, y| self.poset.join(x, y))
    }

    pub fn meet(&self, i: usize, j: usize) -> Result<usize> {
        self.absorbing_block(i, j, "meet", |x, y| self.poset.meet(x, y))
    }

    fn absorbing_block(
        &self,
        i: usize,
        j: usize,
        what: &str,
        op: impl Fn(usize, usize) -> Option<usize>,
    ) -> Result<usize> {
        let mut targets = ElementSet::new();
        for x in self.blocks[i].iter() {
            for y in self.blocks[j].iter() {
                targets.insert(op(x, y).ok_or(Error::NotALattice)?);
            }
        }
        let holders: Vec<usize> = (0..self.blocks.len())
            .filter(|&k| targets.is_subset(&self.blocks[k]))
            .collect();
        match holders.as_slice() {
            [k] => Ok(*k),
            _ => Err(Error::violated(
                "block-lattice",
                format!(
                    "{} of {} and {}: {} blocks hold {}",
                    what,
                    block_label(self.poset, &self.blocks[i]),
                    block_label(self.poset, &self.blocks[j]),
                    holders.len(),
                    block_label(self.poset, &targets)
                ),
            )),
        }
    }
}

/// Block join of two blocks of `t`; see [`BlockLattice`].
pub fn czedli_join(
    p: &Poset,
    t: &Relation,
    b1: &ElementSet,
    b2: &ElementSet,
) -> Result<ElementSet> {
    block_op(p, t, b1, b2, |l, i, j| l.join(i, j))
}

pub fn czedli_meet(
    p: &Poset,
    t: &Relation,
    b1: &ElementSet,
    b2: &ElementSet,
) -> Result<ElementSet> {
    block_op(p, t, b1, b2, |l, i, j| l.meet(i, j))
}

fn block_op(
    p: &Poset,
    t: &Relation,
    b1: &ElementSet,
    b2: &ElementSet,
    op: impl Fn(&BlockLattice<'_>, usize, usize) -> Result<usize>,
) -> Result<ElementSet> {
    let lattice = BlockLattice::new(p, t)?;
    let find =
        |b: &ElementSet| {
            lattice.blocks.iter().position(|x| x == b).ok_or_else(|| {
                Error::InvalidRelation(format!("{} is not a block", block_label(p, b)))
            })
        };
    let k = op(&lattice, find(b1)?, find(b2)?)?;
    Ok(lattice.blocks[k].clone())
}

/// On a lattice, `⊑` agrees with the order induced by block joins and
/// meets: `B1 ⊑ B2` iff `B1 ∨ B2 = B2` and `B1 ∧ B2 = B1`.
pub fn orders_coincide(p: &Poset, t: &Relation) -> Result<bool> {
    let lattice = BlockLattice::new(p, t)?;
    let quotient = order_blocks(p, lattice.blocks.clone())?;
    let m = quotient.len();
    for i in 0..m {
        for j in 0..m {
            let induced = lattice.join(i, j)? == j && lattice.meet(i, j)? == i;
            if induced != quotient.poset.leq(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
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

    fn sets(items: &[&[usize]]) -> Vec<ElementSet> {
        items.iter().map(|s| s.iter().copied().collect()).collect()
    }

    #[test]
    fn fig3_quotients() {
        let p = fig1();
        let t1 = rel(&p, &[&["0", "a", "b", "c"], &["b", "c", "d", "1"]]);
        let q1 = quotient_poset(&p, &t1).unwrap();
        assert_eq!(q1.poset().labels(), ["{0,a,b,c}", "{b,c,d,1}"]);
        assert_eq!(q1.poset().covers(), vec![(0, 1)]);
        assert!(block_leq(&p, &q1.blocks()[0], &q1.blocks()[1]));

        let t2 = rel(&p, &[&["0", "a"], &["b", "c"], &["d", "1"]]);
        let q2 = quotient_poset(&p, &t2).unwrap();
        assert_eq!(q2.poset().labels(), ["{0,a}", "{b,c}", "{d,1}"]);
        assert_eq!(q2.poset().covers(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn trivial_quotients() {
        let p = fig1();
        let diag = quotient_poset(&p, &Relation::diagonal(6)).unwrap();
        assert_eq!(diag.poset().covers(), p.covers());
        let full = quotient_poset(&p, &Relation::full(6)).unwrap();
        assert_eq!(full.len(), 1);
    }

    #[test]
    fn non_tolerance_rejected() {
        let p = fig1();
        let bad = rel(
            &p,
            &[&["0", "a", "b"], &["a", "c"], &["b", "d"], &["c", "d", "1"]],
        );
        assert_eq!(quotient_poset(&p, &bad), Err(Error::NotATolerance));
    }

    #[test]
    fn interval_blocks() {
        let p = fig1();
        // [0,c] and [b,1]
        assert!(interval_block_leq(&p, 0, 3, 2, 5).unwrap());
        assert!(interval_block_leq(&p, 4, 4, 4, 4).unwrap());
        assert!(matches!(
            interval_block_leq(&p, 3, 0, 2, 5),
            Err(Error::NotAnInterval(_))
        ));
        let chain = Poset::chain(3);
        assert!(interval_block_leq(&chain, 0, 1, 1, 2).unwrap());
        assert!(!interval_block_leq(&chain, 1, 2, 0, 1).unwrap());
    }

    #[test]
    fn block_lattice_on_chains() {
        let chain = Poset::chain(3);
        let blocks3 = sets(&[&[0, 1], &[1, 2]]);
        let t = Relation::from_cliques(3, &blocks3).unwrap();
        assert_eq!(
            czedli_join(&chain, &t, &blocks3[0], &blocks3[1]).unwrap(),
            blocks3[1]
        );
        assert_eq!(
            czedli_meet(&chain, &t, &blocks3[0], &blocks3[1]).unwrap(),
            blocks3[0]
        );
        assert_eq!(
            czedli_join(&chain, &t, &blocks3[0], &blocks3[0]).unwrap(),
            blocks3[0]
        );
        assert!(orders_coincide(&chain, &t).unwrap());

        let chain4 = Poset::chain(4);
        let blocks4 = sets(&[&[0, 1], &[2, 3]]);
        let t4 = Relation::from_cliques(4, &blocks4).unwrap();
        assert_eq!(
            czedli_join(&chain4, &t4, &blocks4[0], &blocks4[1]).unwrap(),
            blocks4[1]
        );
        assert!(orders_coincide(&chain4, &Relation::diagonal(4)).unwrap());
    }

    #[test]
    fn block_lattice_needs_a_lattice() {
        let p = fig1();
        assert!(matches!(
            orders_coincide(&p, &Relation::diagonal(6)),
            Err(Error::NotALattice)
        ));
    }
}
