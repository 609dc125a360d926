//! Tolerance relations on finite posets.
//!
//! A tolerance on a poset is a reflexive, symmetric relation that is closed
//! under componentwise joins and meets (whenever they exist) and that keeps
//! its blocks directed. This crate verifies the defining conditions, computes
//! blocks and quotient posets, relates tolerances by refinement, and sweeps
//! every small poset up to isomorphism to check the structural claims about
//! all of these objects.
//!
//! Module map:
//!
//! * [`order`]: finite posets, joins and meets, intervals, directed/convex
//!   sets, relative complementation and canonical forms.
//! * [`relation`]: candidate relations, the four tolerance conditions,
//!   congruences and blocks.
//! * [`quotient`]: the block order and quotient posets, plus the block
//!   lattice operations on lattices.
//! * [`refinement`]: the refinement order on tolerances, quotient tolerances
//!   and the block maps between iterated quotients.
//! * [`enumerate`] and [`verify`]: exhaustive generation and the claim sweep.
//! * [`text`], [`dot`], [`fixtures`], [`cli`]: file formats, Graphviz output,
//!   the bundled example corpus and the command-line front end.

pub mod cli;
pub mod dot;
pub mod enumerate;
mod error;
pub mod fixtures;
pub mod order;
pub mod quotient;
pub mod refinement;
pub mod relation;
mod set;
pub mod text;
pub mod verify;

pub use error::{Error, Result};
pub use order::{CanonicalForm, Poset};
pub use quotient::QuotientPoset;
pub use relation::{Condition, ConditionWitness, Relation};
pub use set::ElementSet;
