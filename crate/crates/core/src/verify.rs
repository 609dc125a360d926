//! Exhaustive replay of the structural claims about tolerances over every
//! poset up to a given size.
//!
//! Each claim is checked concretely on every instance it applies to and
//! tallied; failures are collected (up to a cap) rather than aborting, so a
//! single run shows every counterexample class at once. Posets are
//! processed in parallel and merged in canonical-form order, which keeps
//! the report independent of the worker count.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::{
    all_congruences, all_posets, all_tolerances, closed_relations, TOLERANCE_CARRIER_BOUND,
};
use crate::quotient::{order_blocks, BlockLattice, QuotientPoset};
use crate::refinement::{
    exists_order_preserving_bijection, RefinementPair, BIJECTION_SEARCH_BOUND,
};
use crate::relation::{blocks, first_violation};
use crate::text::{format_cliques, format_poset};
use crate::{ElementSet, Error, Poset, Relation, Result};

/// Default number of failure witnesses kept in a report.
pub const DEFAULT_FAILURE_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(into = "&'static str")]
pub enum Claim {
    /// `(a,b) ∈ T` and `a <= b` give `[a,b]² ⊆ T`.
    IntervalSquares,
    /// A block with a bottom `a` and a top `b` equals `[a,b]`.
    BoundedBlocks,
    /// Blocks of a tolerance other than `P²` are directed and convex.
    DirectedConvexBlocks,
    /// Blocks of a tolerance other than `P²` are intervals.
    IntervalBlocks,
    /// `⊑` is a partial order on the blocks; the diagonal gives back `P`
    /// and `P²` gives a single block.
    QuotientPoset,
    /// On a lattice, block joins and meets exist, are unique, and make the
    /// blocks a lattice.
    BlockLattice,
    /// On a lattice, the order induced by block joins and meets is `⊑`.
    BlockLatticeOrder,
    /// On a lattice, relations closed under componentwise joins and meets
    /// satisfy the remaining two conditions as well.
    LatticeConditions,
    /// On a relatively complemented poset every tolerance is transitive.
    TolerancesAreCongruences,
    /// The diagonal and `P²` bound the family; congruences from set
    /// partitions are exactly the transitive tolerances.
    FamilyExtremes,
    /// `≤` on tolerances is reflexive and antisymmetric and implies `⊆`.
    RefinementOrder,
    /// `T/S` is reflexive and symmetric.
    QuotientRelation,
    /// When `T/S` is a tolerance, `P/T` injects into `(P/S)/(T/S)`.
    Injection,
    /// For congruences, `(P/S)/(T/S)` maps onto `P/T` bijectively and
    /// order-preservingly.
    Bijection,
}

impl Claim {
    pub const ALL: [Claim; 14] = [
        Claim::IntervalSquares,
        Claim::BoundedBlocks,
        Claim::DirectedConvexBlocks,
        Claim::IntervalBlocks,
        Claim::QuotientPoset,
        Claim::BlockLattice,
        Claim::BlockLatticeOrder,
        Claim::LatticeConditions,
        Claim::TolerancesAreCongruences,
        Claim::FamilyExtremes,
        Claim::RefinementOrder,
        Claim::QuotientRelation,
        Claim::Injection,
        Claim::Bijection,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::IntervalSquares => "interval-squares",
            Claim::BoundedBlocks => "bounded-blocks",
            Claim::DirectedConvexBlocks => "directed-convex-blocks",
            Claim::IntervalBlocks => "interval-blocks",
            Claim::QuotientPoset => "quotient-poset",
            Claim::BlockLattice => "block-lattice",
            Claim::BlockLatticeOrder => "block-lattice-order",
            Claim::LatticeConditions => "lattice-conditions",
            Claim::TolerancesAreCongruences => "tolerances-are-congruences",
            Claim::FamilyExtremes => "family-extremes",
            Claim::RefinementOrder => "refinement-order",
            Claim::QuotientRelation => "quotient-relation",
            Claim::Injection => "injection",
            Claim::Bijection => "bijection",
        }
    }

    fn index(self) -> usize {
        Claim::ALL.iter().position(|&c| c == self).expect("listed")
    }

    fn needs_pairs(self) -> bool {
        matches!(
            self,
            Claim::RefinementOrder | Claim::QuotientRelation | Claim::Injection | Claim::Bijection
        )
    }
}

impl From<Claim> for &'static str {
    fn from(c: Claim) -> Self {
        c.id()
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Claim {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Claim::ALL
            .iter()
            .copied()
            .find(|c| c.id() == s)
            .ok_or_else(|| format!("unknown claim `{s}`"))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClaimCounter {
    pub claim: String,
    pub instances: u64,
    pub passes: u64,
    pub failures: u64,
}

/// Tallies of facts recorded without being asserted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Observation {
    pub name: String,
    pub holds: u64,
    pub fails: u64,
    pub skipped: u64,
}

const OBSERVATIONS: [&str; 3] = [
    // R ≤ S and S ≤ T give R ≤ T.
    "refinement-transitive",
    // T/S satisfies all four conditions on P/S.
    "quotient-relation-tolerance",
    // P/T and (P/S)/(T/S) are isomorphic whenever the injection exists.
    "double-quotient-isomorphic",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailureWitness {
    pub claim: String,
    /// Canonical form of the poset, rows of its order matrix.
    pub poset: String,
    /// The poset in the `elements:`/`covers:` text format.
    pub covers: String,
    /// Clique form of each relation involved, `S` before `T`.
    pub relations: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PosetCount {
    pub size: usize,
    pub posets: u64,
    pub tolerances: u64,
    pub congruences: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub max_n: usize,
    pub claims: Vec<String>,
    pub failure_cap: usize,
    pub sizes: Vec<PosetCount>,
    pub counters: Vec<ClaimCounter>,
    pub observations: Vec<Observation>,
    /// Total failures across all claims; at most `failure_cap` are listed.
    pub total_failures: u64,
    pub failures: Vec<FailureWitness>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.total_failures == 0
    }

    pub fn counter(&self, claim: Claim) -> Option<&ClaimCounter> {
        self.counters.iter().find(|c| c.claim == claim.id())
    }

    pub fn observation(&self, name: &str) -> Option<&Observation> {
        self.observations.iter().find(|o| o.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises") + "\n"
    }

    pub fn summary_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<28} {:>10} {:>10} {:>10}",
            "claim", "instances", "passes", "failures"
        );
        for c in &self.counters {
            let _ = writeln!(
                out,
                "{:<28} {:>10} {:>10} {:>10}",
                c.claim, c.instances, c.passes, c.failures
            );
        }
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "{:<28} {:>10} {:>10} {:>10}",
            "observation", "holds", "fails", "skipped"
        );
        for o in &self.observations {
            let _ = writeln!(
                out,
                "{:<28} {:>10} {:>10} {:>10}",
                o.name, o.holds, o.fails, o.skipped
            );
        }
        let _ = writeln!(out);
        for f in &self.failures {
            let _ = writeln!(
                out,
                "FAIL {} on {} with [{}]: {}",
                f.claim,
                f.poset,
                f.relations.join(" | "),
                f.detail
            );
        }
        if self.total_failures as usize > self.failures.len() {
            let _ = writeln!(
                out,
                "... {} more failures",
                self.total_failures as usize - self.failures.len()
            );
        }
        let _ = writeln!(
            out,
            "{}: {} failures",
            if self.passed() { "PASS" } else { "FAIL" },
            self.total_failures
        );
        out
    }
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub max_n: usize,
    pub claims: BTreeSet<Claim>,
    pub failure_cap: usize,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl SweepOptions {
    pub fn new(max_n: usize) -> Self {
        Self {
            max_n,
            claims: Claim::ALL.into_iter().collect(),
            failure_cap: DEFAULT_FAILURE_CAP,
            threads: None,
        }
    }
}

/// Replays `claims` (every claim when empty) on every poset of size at most
/// `max_n`.
pub fn verify_theorems(max_n: usize, claims: &[Claim]) -> Result<VerificationReport> {
    let mut options = SweepOptions::new(max_n);
    if !claims.is_empty() {
        options.claims = claims.iter().copied().collect();
    }
    sweep(&options)
}

pub fn sweep(options: &SweepOptions) -> Result<VerificationReport> {
    if options.max_n > TOLERANCE_CARRIER_BOUND {
        return Err(Error::BoundExceeded {
            what: "verification sweep",
            size: options.max_n,
            bound: TOLERANCE_CARRIER_BOUND,
        });
    }
    let cap = options.failure_cap.max(1);
    let mut posets = Vec::new();
    for n in 1..=options.max_n {
        posets.extend(all_posets(n)?);
    }
    let run = || -> Vec<PosetTally> {
        posets
            .par_iter()
            .map(|p| check_poset(p, &options.claims, cap))
            .collect()
    };
    let tallies = match options.threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| Error::InvalidOrder(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };

    let mut counters: Vec<ClaimCounter> = Claim::ALL
        .iter()
        .map(|c| ClaimCounter {
            claim: c.id().to_string(),
            ..Default::default()
        })
        .collect();
    let mut observations: Vec<Observation> = OBSERVATIONS
        .iter()
        .map(|name| Observation {
            name: name.to_string(),
            ..Default::default()
        })
        .collect();
    let mut sizes: Vec<PosetCount> = (1..=options.max_n)
        .map(|size| PosetCount {
            size,
            posets: 0,
            tolerances: 0,
            congruences: 0,
        })
        .collect();
    let mut failures = Vec::new();
    for (p, tally) in posets.iter().zip(tallies) {
        let count = &mut sizes[p.len() - 1];
        count.posets += 1;
        count.tolerances += tally.tolerances;
        count.congruences += tally.congruences;
        for (total, part) in counters.iter_mut().zip(&tally.counters) {
            total.instances += part.instances;
            total.passes += part.passes;
            total.failures += part.failures;
        }
        for (total, part) in observations.iter_mut().zip(&tally.observations) {
            total.holds += part.holds;
            total.fails += part.fails;
            total.skipped += part.skipped;
        }
        for f in tally.failures {
            if failures.len() < cap {
                failures.push(f);
            }
        }
    }
    counters.retain(|c| options.claims.iter().any(|k| k.id() == c.claim));
    let total_failures = counters.iter().map(|c| c.failures).sum();
    Ok(VerificationReport {
        max_n: options.max_n,
        claims: options.claims.iter().map(|c| c.id().to_string()).collect(),
        failure_cap: cap,
        sizes,
        counters,
        observations,
        total_failures,
        failures,
    })
}

struct PosetTally {
    tolerances: u64,
    congruences: u64,
    counters: Vec<ClaimCounter>,
    observations: Vec<Observation>,
    failures: Vec<FailureWitness>,
}

struct Recorder<'a> {
    poset: &'a Poset,
    claims: &'a BTreeSet<Claim>,
    cap: usize,
    tally: PosetTally,
}

type Outcome = std::result::Result<(), String>;

impl<'a> Recorder<'a> {
    fn wants(&self, claim: Claim) -> bool {
        self.claims.contains(&claim)
    }

    fn record(&mut self, claim: Claim, relations: &[&Relation], outcome: Outcome) {
        let counter = &mut self.tally.counters[claim.index()];
        counter.instances += 1;
        match outcome {
            Ok(()) => counter.passes += 1,
            Err(detail) => {
                counter.failures += 1;
                if self.tally.failures.len() < self.cap {
                    let form = self
                        .poset
                        .canonical_form()
                        .map_or_else(|_| "?".to_string(), |f| f.to_string());
                    self.tally.failures.push(FailureWitness {
                        claim: claim.id().to_string(),
                        poset: form,
                        covers: format_poset(self.poset),
                        relations: relations
                            .iter()
                            .map(|t| format_cliques(self.poset, t))
                            .collect(),
                        detail,
                    });
                }
            }
        }
    }

    fn observe(&mut self, index: usize, holds: Option<bool>) {
        let o = &mut self.tally.observations[index];
        match holds {
            Some(true) => o.holds += 1,
            Some(false) => o.fails += 1,
            None => o.skipped += 1,
        }
    }
}

fn check_poset(p: &Poset, claims: &BTreeSet<Claim>, cap: usize) -> PosetTally {
    let mut rec = Recorder {
        poset: p,
        claims,
        cap,
        tally: PosetTally {
            tolerances: 0,
            congruences: 0,
            counters: Claim::ALL
                .iter()
                .map(|c| ClaimCounter {
                    claim: c.id().to_string(),
                    ..Default::default()
                })
                .collect(),
            observations: OBSERVATIONS
                .iter()
                .map(|name| Observation {
                    name: name.to_string(),
                    ..Default::default()
                })
                .collect(),
            failures: Vec::new(),
        },
    };
    let n = p.len();
    let family = all_tolerances(p).expect("sweep bound checked");
    let tolerances = family.members();
    rec.tally.tolerances = tolerances.len() as u64;
    let lattice = p.is_lattice();

    let mut quotients: Vec<Option<QuotientPoset>> = Vec::with_capacity(tolerances.len());
    for t in tolerances {
        let bs = blocks(t);
        if rec.wants(Claim::IntervalSquares) {
            rec.record(Claim::IntervalSquares, &[t], interval_squares(p, t));
        }
        if rec.wants(Claim::BoundedBlocks) {
            rec.record(Claim::BoundedBlocks, &[t], bounded_blocks(p, &bs));
        }
        if !t.is_full() {
            if rec.wants(Claim::DirectedConvexBlocks) {
                rec.record(Claim::DirectedConvexBlocks, &[t], directed_convex(p, &bs));
            }
            if rec.wants(Claim::IntervalBlocks) {
                rec.record(Claim::IntervalBlocks, &[t], interval_blocks(p, &bs));
            }
        }
        let quotient = order_blocks(p, bs);
        if rec.wants(Claim::QuotientPoset) {
            let outcome = match &quotient {
                Err(e) => Err(e.to_string()),
                Ok(q) => trivial_quotient(p, t, q),
            };
            rec.record(Claim::QuotientPoset, &[t], outcome);
        }
        if lattice && rec.wants(Claim::BlockLattice) {
            rec.record(Claim::BlockLattice, &[t], block_lattice(p, t));
        }
        if lattice && rec.wants(Claim::BlockLatticeOrder) {
            let outcome = match crate::quotient::orders_coincide(p, t) {
                Ok(true) => Ok(()),
                Ok(false) => Err("block join/meet order differs from ⊑".to_string()),
                Err(e) => Err(e.to_string()),
            };
            rec.record(Claim::BlockLatticeOrder, &[t], outcome);
        }
        quotients.push(quotient.ok());
    }

    if lattice && rec.wants(Claim::LatticeConditions) {
        for r in closed_relations(p).expect("sweep bound checked") {
            let outcome = match first_violation(p, &r) {
                None => Ok(()),
                Some(w) => Err(w.describe(p)),
            };
            rec.record(Claim::LatticeConditions, &[&r], outcome);
        }
    }

    if p.is_relatively_complemented() && rec.wants(Claim::TolerancesAreCongruences) {
        for t in tolerances {
            let outcome = if t.is_transitive() {
                Ok(())
            } else {
                Err(intransitivity(p, t))
            };
            rec.record(Claim::TolerancesAreCongruences, &[t], outcome);
        }
    }

    let congruences = all_congruences(p).expect("sweep bound checked");
    rec.tally.congruences = congruences.len() as u64;
    if rec.wants(Claim::FamilyExtremes) {
        let outcome = family_extremes(n, tolerances, congruences.members());
        rec.record(Claim::FamilyExtremes, &[], outcome);
    }

    if claims.iter().any(|c| c.needs_pairs()) {
        check_pairs(&mut rec, tolerances, &quotients);
    }
    rec.tally
}

fn interval_squares(p: &Poset, t: &Relation) -> Outcome {
    for (a, b) in t.pairs() {
        if p.leq(a, b) {
            let iv = p.interval(a, b).expect("a <= b");
            if !t.contains_square(&iv) {
                return Err(format!("[{},{}]² not inside T", p.label(a), p.label(b)));
            }
        }
    }
    Ok(())
}

fn bounded_blocks(p: &Poset, bs: &[ElementSet]) -> Outcome {
    for b in bs {
        if let (Some(lo), Some(hi)) = (p.least(b), p.greatest(b)) {
            let iv = p.interval(lo, hi).expect("least below greatest");
            if &iv != b {
                return Err(format!(
                    "block {} differs from [{},{}]",
                    crate::quotient::block_label(p, b),
                    p.label(lo),
                    p.label(hi)
                ));
            }
        }
    }
    Ok(())
}

fn directed_convex(p: &Poset, bs: &[ElementSet]) -> Outcome {
    for b in bs {
        let label = crate::quotient::block_label(p, b);
        if !p.is_directed(b) {
            return Err(format!("block {label} is not directed"));
        }
        if !p.is_convex(b) {
            return Err(format!("block {label} is not convex"));
        }
    }
    Ok(())
}

fn interval_blocks(p: &Poset, bs: &[ElementSet]) -> Outcome {
    for b in bs {
        let label = crate::quotient::block_label(p, b);
        match (p.least(b), p.greatest(b)) {
            (Some(lo), Some(hi)) if p.interval(lo, hi).as_ref() == Ok(b) => {}
            _ => return Err(format!("block {label} is not an interval")),
        }
    }
    Ok(())
}

fn trivial_quotient(p: &Poset, t: &Relation, q: &QuotientPoset) -> Outcome {
    if t.is_diagonal() {
        // Singleton blocks come out in carrier order.
        let same = q.len() == p.len()
            && (0..p.len()).all(|i| (0..p.len()).all(|j| q.poset().leq(i, j) == p.leq(i, j)));
        if !same {
            return Err("P/Δ is not P".to_string());
        }
    }
    if t.is_full() && q.len() != 1 {
        return Err(format!("P/P² has {} blocks", q.len()));
    }
    Ok(())
}

fn block_lattice(p: &Poset, t: &Relation) -> Outcome {
    let lattice = BlockLattice::new(p, t).map_err(|e| e.to_string())?;
    let m = lattice.blocks().len();
    for i in 0..m {
        for j in 0..m {
            lattice.join(i, j).map_err(|e| e.to_string())?;
            lattice.meet(i, j).map_err(|e| e.to_string())?;
        }
    }
    let q = order_blocks(p, lattice.blocks().to_vec()).map_err(|e| e.to_string())?;
    if !q.poset().is_lattice() {
        return Err("blocks do not form a lattice under ⊑".to_string());
    }
    Ok(())
}

fn intransitivity(p: &Poset, t: &Relation) -> String {
    for x in 0..t.len() {
        for y in t.related(x).iter() {
            for z in t.related(y).iter() {
                if !t.contains(x, z) {
                    return format!(
                        "({0},{1}) and ({1},{2}) in T but ({0},{2}) is not",
                        p.label(x),
                        p.label(y),
                        p.label(z)
                    );
                }
            }
        }
    }
    "relation is transitive".to_string()
}

fn family_extremes(n: usize, tolerances: &[Relation], congruences: &[Relation]) -> Outcome {
    let diag = Relation::diagonal(n);
    let full = Relation::full(n);
    if tolerances.first() != Some(&diag) || !tolerances.contains(&full) {
        return Err("diagonal or P² missing".to_string());
    }
    if !tolerances
        .iter()
        .all(|t| diag.is_subset(t) && t.is_subset(&full))
    {
        return Err("diagonal is not least or P² is not greatest".to_string());
    }
    let transitive: BTreeSet<&Relation> = tolerances.iter().filter(|t| t.is_transitive()).collect();
    let partitions: BTreeSet<&Relation> = congruences.iter().collect();
    if transitive != partitions {
        return Err(format!(
            "{} transitive tolerances but {} congruences from partitions",
            transitive.len(),
            partitions.len()
        ));
    }
    Ok(())
}

fn check_pairs(
    rec: &mut Recorder<'_>,
    tolerances: &[Relation],
    quotients: &[Option<QuotientPoset>],
) {
    let m = tolerances.len();
    let mut refines = vec![vec![false; m]; m];
    for s in 0..m {
        for t in 0..m {
            let (Some(qs), Some(qt)) = (&quotients[s], &quotients[t]) else {
                // Already reported under the quotient claim.
                continue;
            };
            let (rs, rt) = (&tolerances[s], &tolerances[t]);
            let pair = RefinementPair::from_quotients(
                qs.clone(),
                qt.clone(),
                rs.is_subset(rt),
                rs.is_transitive() && rt.is_transitive(),
            );
            let holds = match pair.refines() {
                Ok(h) => h,
                Err(e) => {
                    if rec.wants(Claim::RefinementOrder) {
                        rec.record(Claim::RefinementOrder, &[rs, rt], Err(e.to_string()));
                    }
                    continue;
                }
            };
            refines[s][t] = holds;
            if rec.wants(Claim::RefinementOrder) {
                let outcome = if s == t && !holds {
                    Err("T ≤ T fails".to_string())
                } else {
                    Ok(())
                };
                rec.record(Claim::RefinementOrder, &[rs, rt], outcome);
            }
            if !holds {
                continue;
            }
            if rec.wants(Claim::QuotientRelation) {
                let outcome = pair
                    .quotient_relation()
                    .map(|_| ())
                    .map_err(|e| e.to_string());
                rec.record(Claim::QuotientRelation, &[rs, rt], outcome);
            }
            match pair.double_quotient() {
                // Outside the hypotheses of both the injection and the
                // bijection claims.
                Err(Error::QuotientRelationNotTolerance) => rec.observe(1, Some(false)),
                Err(e) => {
                    if rec.wants(Claim::QuotientRelation) {
                        rec.record(Claim::QuotientRelation, &[rs, rt], Err(e.to_string()));
                    }
                }
                Ok(_) => {
                    rec.observe(1, Some(true));
                    let injection = pair.injection();
                    if rec.wants(Claim::Injection) {
                        let outcome = injection.as_ref().map(|_| ()).map_err(|e| e.to_string());
                        rec.record(Claim::Injection, &[rs, rt], outcome);
                    }
                    if let Ok((_, double)) = &injection {
                        let (a, b) = (pair.t_quotient().poset(), double.poset());
                        let iso = if a.len() != b.len() {
                            Some(false)
                        } else if a.len() > BIJECTION_SEARCH_BOUND {
                            None
                        } else {
                            Some(
                                exists_order_preserving_bijection(a, b).unwrap_or(false)
                                    && exists_order_preserving_bijection(b, a).unwrap_or(false),
                            )
                        };
                        rec.observe(2, iso);
                    }
                    if pair.is_congruence_pair() && rec.wants(Claim::Bijection) {
                        let outcome = pair.bijection().map(|_| ()).map_err(|e| e.to_string());
                        rec.record(Claim::Bijection, &[rs, rt], outcome);
                    }
                }
            }
        }
    }
    if rec.wants(Claim::RefinementOrder) {
        for s in 0..m {
            for t in s + 1..m {
                if refines[s][t] && refines[t][s] {
                    rec.record(
                        Claim::RefinementOrder,
                        &[&tolerances[s], &tolerances[t]],
                        Err("S ≤ T and T ≤ S for distinct S, T".to_string()),
                    );
                }
            }
        }
    }
    for from_r in &refines {
        for (s, _) in from_r.iter().enumerate().filter(|(_, &le)| le) {
            for (t, _) in refines[s].iter().enumerate().filter(|(_, &le)| le) {
                rec.observe(0, Some(from_r[t]));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claim_ids_round_trip() {
        for c in Claim::ALL {
            assert_eq!(c.id().parse::<Claim>(), Ok(c));
        }
        assert!("nope".parse::<Claim>().is_err());
    }

    #[test]
    fn tiny_sweep_passes() {
        let report = verify_theorems(2, &[]).unwrap();
        assert!(report.passed(), "{}", report.summary_table());
        assert_eq!(report.sizes[1].posets, 2);
        assert!(report.failures.is_empty());
        // Two posets of size two: chain and antichain, two tolerances each.
        assert_eq!(report.sizes[1].tolerances, 4);
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(
            verify_theorems(7, &[]),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn selected_claims_only() {
        let report = verify_theorems(3, &[Claim::IntervalSquares]).unwrap();
        assert_eq!(report.counters.len(), 1);
        assert_eq!(report.claims, ["interval-squares"]);
        assert!(report.counter(Claim::IntervalSquares).unwrap().instances > 0);
    }
}
