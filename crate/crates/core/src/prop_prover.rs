//! Decision procedure for propositional sequents.
//!
//! Backward search in the invertible calculus. Every rule except the
//! right negation rule `NegR2` drops its principal and lowers the weight of
//! the sequent. `NegR2` keeps its principal (`¬∘α` or `¬p` in the
//! succedent), so each such formula is marked once reduced and never reduced
//! again on that branch. The pair (unmarked negations of the root's
//! generalized subformulas, weight) decreases lexicographically along every
//! edge, which bounds the search.
//!
//! A branch that ends with only literals and marked negations left is open;
//! reading its antecedent literals off as `p ↦ ½` (both `p` and `¬p`),
//! `p ↦ 1` (only `p`) and `p ↦ 0` (no `p`) gives a falsifying valuation.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::matrix::{self, EvalError, TruthValue, Valuation};
use crate::sequent::{check_proof, schema, Calculus, Proof, RuleId, Sequent, Side};
use crate::syntax::Formula;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Proved(Proof),
    Refuted(Valuation),
}

impl Verdict {
    pub fn is_proved(&self) -> bool {
        matches!(self, Verdict::Proved(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProverError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("input proof is not a valid derivation: {0}")]
    InvalidProof(String),
    #[error("internal error: {0}")]
    Internal(String),
}

/// A node of the search: a sequent plus the succedent negations already
/// reduced by `NegR2` on this branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchNode {
    pub sequent: Sequent,
    pub marked: BTreeSet<Formula>,
}

impl SearchNode {
    /// Termination measure relative to the root's generalized subformulas.
    pub fn measure(&self, pool: &BTreeSet<Formula>) -> (usize, u64) {
        let unmarked = pool.iter().filter(|f| matches!(f, Formula::Not(_)) && !self.marked.contains(*f)).count();
        (unmarked, self.sequent.weight().unwrap_or(u64::MAX))
    }
}

/// Keeps its principal; everything else is decreasing.
fn is_neg_r2_target(f: &Formula) -> bool {
    match f {
        Formula::Not(a) => a.is_atom() || matches!(**a, Formula::Circ(_)),
        _ => false,
    }
}

/// The invertible rule for a non-literal formula on the given side.
fn rule_for(f: &Formula, side: Side) -> Option<RuleId> {
    use Formula as F;
    use RuleId::*;
    Some(match (side, f) {
        (Side::Left, F::Or(..)) => OrL,
        (Side::Right, F::Or(..)) => OrR,
        (Side::Left, F::And(..)) => AndL,
        (Side::Right, F::And(..)) => AndR,
        (Side::Left, F::Imp(..)) => ImpL,
        (Side::Right, F::Imp(..)) => ImpR,
        (Side::Left, F::Circ(_)) => CircL,
        (Side::Right, F::Circ(_)) => CircR,
        (side, F::Not(x)) => match (side, &**x) {
            (Side::Left, F::Or(..)) => NegOrL,
            (Side::Right, F::Or(..)) => NegOrR2,
            (Side::Left, F::And(..)) => NegAndL,
            (Side::Right, F::And(..)) => NegAndR2,
            (Side::Left, F::Imp(..)) => NegImpL,
            (Side::Right, F::Imp(..)) => NegImpR2,
            (Side::Left, F::Not(_)) => NegNegL,
            (Side::Right, F::Not(_)) => NegNegR,
            (Side::Left, F::Circ(_)) => NegCircL,
            (Side::Right, F::Circ(_)) => NegR2,
            (Side::Right, a) if a.is_atom() => NegR2,
            _ => return None,
        },
        _ => return None,
    })
}

/// The next principal: decreasing rules first (antecedent, then succedent,
/// canonical order), then unmarked `¬∘α`, then unmarked `¬p`.
fn choose(node: &SearchNode) -> Option<(RuleId, Side, Formula)> {
    for side in [Side::Left, Side::Right] {
        for f in node.sequent.side(side) {
            if f.is_literal() || (side == Side::Right && is_neg_r2_target(f)) {
                continue;
            }
            if let Some(r) = rule_for(f, side) {
                return Some((r, side, f.clone()));
            }
        }
    }
    let pending = |lit: bool| {
        node.sequent
            .succ
            .iter()
            .find(|f| is_neg_r2_target(f) && f.is_literal() == lit && !node.marked.contains(*f))
            .cloned()
    };
    pending(false).or_else(|| pending(true)).map(|f| (RuleId::NegR2, Side::Right, f))
}

/// Valuation read off a terminal sequent.
fn read_countermodel(terminal: &Sequent, atoms: &BTreeSet<String>) -> Valuation {
    atoms
        .iter()
        .map(|p| {
            let pos = terminal.ante.contains(&Formula::prop(p.clone()));
            let negp = terminal.ante.contains(&Formula::not(Formula::prop(p.clone())));
            let v = match (pos, negp) {
                (true, true) => TruthValue::Half,
                (true, false) => TruthValue::One,
                (false, _) => TruthValue::Zero,
            };
            (p.clone(), v)
        })
        .collect()
}

enum Outcome {
    Proof(Proof),
    Open(Sequent),
}

fn search(node: SearchNode, observe: &mut dyn FnMut(&SearchNode, &SearchNode)) -> Outcome {
    if let Some(a) = node.sequent.common_formula() {
        return Outcome::Proof(Proof::closed_by(a, &node.sequent));
    }
    let Some((rule, side, phi)) = choose(&node) else {
        return Outcome::Open(node.sequent);
    };
    let sch = schema(rule, &phi, None).expect("chosen rule fits its principal");
    let ctx = node.sequent.without(side, &phi);
    let mut marked = node.marked.clone();
    if rule == RuleId::NegR2 {
        marked.insert(phi.clone());
    }
    let mut proofs = Vec::with_capacity(sch.premises.len());
    for (l, r) in &sch.premises {
        let child = SearchNode { sequent: ctx.extended(l, r), marked: marked.clone() };
        observe(&node, &child);
        match search(child, observe) {
            Outcome::Proof(p) => proofs.push(p),
            open => return open,
        }
    }
    Outcome::Proof(Proof::step(node.sequent, rule, phi, proofs))
}

/// Decides `s` and reports every search edge to `observe`.
pub fn decide_observed(s: &Sequent, cap: usize, observe: &mut dyn FnMut(&SearchNode, &SearchNode)) -> Result<Verdict, ProverError> {
    if let Some(f) = s.formulas().find(|f| !f.is_propositional()) {
        return Err(EvalError::NotPropositional(f.clone()).into());
    }
    let atoms = s.atoms();
    if atoms.len() > cap {
        return Err(EvalError::AtomCap { found: atoms.len(), cap }.into());
    }
    let root = SearchNode { sequent: s.clone(), marked: BTreeSet::new() };
    match search(root, observe) {
        Outcome::Proof(p) => Ok(Verdict::Proved(p)),
        Outcome::Open(terminal) => {
            let v = read_countermodel(&terminal, &atoms);
            if matrix::sequent_satisfied(s, &v)? {
                return Err(ProverError::Internal(format!("valuation read off {terminal} does not falsify {s}")));
            }
            Ok(Verdict::Refuted(v))
        }
    }
}

/// Cut-free GCiore′ proof or falsifying valuation.
pub fn decide(s: &Sequent, cap: usize) -> Result<Verdict, ProverError> {
    decide_observed(s, cap, &mut |_, _| {})
}

/// A cut-free proof of the end-sequent of a (possibly cut-using) proof.
pub fn eliminate_cut(p: &Proof, cap: usize) -> Result<Proof, ProverError> {
    let ok = [Calculus::GCiorePrime, Calculus::GCiore].iter().any(|&c| check_proof(p, c, true).is_ok());
    if !ok {
        return Err(ProverError::InvalidProof("not a GCiore or GCiore′ derivation".into()));
    }
    match decide(&p.sequent, cap)? {
        Verdict::Proved(q) => Ok(q),
        Verdict::Refuted(v) => Err(ProverError::Internal(format!("derivable end-sequent refuted by {v:?}"))),
    }
}

/// Decides `⇒ φ ∧ ¬φ`; consistency means this is always refuted.
pub fn contradiction_scan(phi: &Formula, cap: usize) -> Result<Verdict, ProverError> {
    decide(&Sequent::theorem(Formula::and(phi.clone(), Formula::not(phi.clone()))), cap)
}

/// Nine provable schemata about `∘` and contradictions, instantiated at `α`, `β`.
pub fn theorem_suite(a: &Formula, b: &Formula) -> Vec<(String, Sequent)> {
    use Formula as F;
    let n = |x: &Formula| F::not(x.clone());
    let o = |x: &Formula| F::circ(x.clone());
    let contra = |x: &Formula| F::and(x.clone(), n(x));
    let both = F::and(contra(a), contra(b));
    let circ_or = F::or(o(a), o(b));
    let items = [
        ("contradiction-is-inconsistency", F::iff(contra(a), n(&o(a)))),
        ("consistency-of-consistency", o(&o(a))),
        ("consistency-of-negation", F::iff(o(a), o(&n(a)))),
        ("contradiction-and", F::iff(both.clone(), contra(&F::and(a.clone(), b.clone())))),
        ("contradiction-or", F::iff(both.clone(), contra(&F::or(a.clone(), b.clone())))),
        ("contradiction-imp", F::iff(both, contra(&F::imp(a.clone(), b.clone())))),
        ("consistency-and", F::iff(circ_or.clone(), o(&F::and(a.clone(), b.clone())))),
        ("consistency-or", F::iff(circ_or.clone(), o(&F::or(a.clone(), b.clone())))),
        ("consistency-imp", F::iff(circ_or, o(&F::imp(a.clone(), b.clone())))),
    ];
    items.into_iter().map(|(name, f)| (name.to_string(), Sequent::theorem(f))).collect()
}
