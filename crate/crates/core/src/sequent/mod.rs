//! Sequents, rule schemas, proofs and their checking.

mod derived;
mod proof;
mod rules;

use std::collections::BTreeSet;

use crate::syntax::{Formula, SyntaxError};

pub use derived::{expand_derived_rule, DerivedRule};
pub use proof::{check_derivation, check_proof, check_subformula_property, Proof, ProofError};
pub use rules::{backward_applications, check_rule_instance, schema, Application, Calculus, RuleId, RuleViolation, Schema, Side};

/// A pair of finite formula sets. Sets, so contraction and exchange are built in.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    pub ante: BTreeSet<Formula>,
    pub succ: BTreeSet<Formula>,
}

impl Sequent {
    pub fn new(ante: impl IntoIterator<Item = Formula>, succ: impl IntoIterator<Item = Formula>) -> Sequent {
        Sequent { ante: ante.into_iter().collect(), succ: succ.into_iter().collect() }
    }

    /// `⇒ φ`
    pub fn theorem(phi: Formula) -> Sequent {
        Sequent::new([], [phi])
    }

    pub fn side(&self, side: Side) -> &BTreeSet<Formula> {
        match side {
            Side::Left => &self.ante,
            Side::Right => &self.succ,
        }
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.ante.iter().chain(self.succ.iter())
    }

    /// A formula common to both sides, the least one in canonical order.
    pub fn common_formula(&self) -> Option<&Formula> {
        self.ante.iter().find(|f| self.succ.contains(*f))
    }

    pub fn is_closed(&self) -> bool {
        self.common_formula().is_some()
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        self.formulas().flat_map(|f| f.atoms()).collect()
    }

    pub fn free_variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for f in self.formulas() {
            f.collect_free(&mut out);
        }
        out
    }

    pub fn weight(&self) -> Result<u64, SyntaxError> {
        self.formulas().map(Formula::weight).sum()
    }

    pub fn gsub(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        for f in self.formulas() {
            f.collect_gsub(&mut out);
        }
        out
    }

    pub fn is_propositional(&self) -> bool {
        self.formulas().all(Formula::is_propositional)
    }

    /// Both sides contained in the corresponding sides of `other`.
    pub fn is_subsequent_of(&self, other: &Sequent) -> bool {
        self.ante.is_subset(&other.ante) && self.succ.is_subset(&other.succ)
    }

    pub fn extended(&self, left: &[Formula], right: &[Formula]) -> Sequent {
        let mut s = self.clone();
        s.ante.extend(left.iter().cloned());
        s.succ.extend(right.iter().cloned());
        s
    }

    pub fn without(&self, side: Side, f: &Formula) -> Sequent {
        let mut s = self.clone();
        match side {
            Side::Left => s.ante.remove(f),
            Side::Right => s.succ.remove(f),
        };
        s
    }
}
