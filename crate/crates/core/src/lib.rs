//! Sequent calculi and decision procedures for the paraconsistent logic Ciore
//! and its first-order extension QCiore.
//!
//! * [`syntax`] and [`parse`]: formulas, terms, the text grammar.
//! * [`matrix`]: the three-valued matrix and brute-force validity.
//! * [`sequent`]: sequents, rules, proof objects and the proof checker.
//! * [`prop_prover`]: the propositional decision procedure.
//! * [`fo_semantics`]: first-order structures and their triple semantics.
//! * [`fo_prover`]: the reduction-tree search for first-order sequents.

pub mod axioms;
pub mod fo_prover;
pub mod fo_semantics;
pub mod json;
pub mod matrix;
pub mod parse;
pub mod prop_prover;
pub mod random;
pub mod sequent;
pub mod syntax;

pub use matrix::{TruthValue, Valuation};
pub use parse::{parse_formula, parse_sequent, parse_term, ParseError};
pub use sequent::{Calculus, Proof, RuleId, Sequent};
pub use syntax::{Formula, Term};
