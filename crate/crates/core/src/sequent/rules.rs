//! Rule identifiers, calculi and single-step instance checking.
//!
//! Every logical rule is described by a [`Schema`]: the side its principal
//! formula sits on and, per premise, the formulas added to each side of the
//! context. A conclusion `Γ ⇒ Δ` with principal `φ` yields premises
//! `Γ' ∪ L ⇒ Δ' ∪ R`, where the context on the principal's side either drops
//! `φ` or keeps it. Keeping it is what lets the reduction-tree proofs, whose
//! sequents only ever grow, check as ordinary rule applications.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::Sequent;
use crate::syntax::{fresh_free_variable, variable_order, Formula, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleId {
    Axiom,
    WeakL,
    WeakR,
    /// Several weakenings collapsed into one step; the premise is any
    /// subsequent of the conclusion.
    Weakenings,
    Cut,
    OrL,
    OrR,
    NegOrL,
    NegOrR,
    NegOrR2,
    AndL,
    AndR,
    NegAndL,
    NegAndR,
    NegAndR2,
    ImpL,
    ImpR,
    NegImpL,
    NegImpR,
    NegImpR2,
    NegR,
    NegR2,
    NegNegL,
    NegNegR,
    CircL,
    CircR,
    NegCircL,
    ForallL,
    ForallR,
    ExistsL,
    ExistsR,
    CircForallL,
    CircForallR,
    CircExistsL,
    CircExistsR,
    /// An undischarged premise of a derived rule.
    Hyp,
}

impl RuleId {
    pub const ALL: [RuleId; 36] = [
        RuleId::Axiom,
        RuleId::WeakL,
        RuleId::WeakR,
        RuleId::Weakenings,
        RuleId::Cut,
        RuleId::OrL,
        RuleId::OrR,
        RuleId::NegOrL,
        RuleId::NegOrR,
        RuleId::NegOrR2,
        RuleId::AndL,
        RuleId::AndR,
        RuleId::NegAndL,
        RuleId::NegAndR,
        RuleId::NegAndR2,
        RuleId::ImpL,
        RuleId::ImpR,
        RuleId::NegImpL,
        RuleId::NegImpR,
        RuleId::NegImpR2,
        RuleId::NegR,
        RuleId::NegR2,
        RuleId::NegNegL,
        RuleId::NegNegR,
        RuleId::CircL,
        RuleId::CircR,
        RuleId::NegCircL,
        RuleId::ForallL,
        RuleId::ForallR,
        RuleId::ExistsL,
        RuleId::ExistsR,
        RuleId::CircForallL,
        RuleId::CircForallR,
        RuleId::CircExistsL,
        RuleId::CircExistsR,
        RuleId::Hyp,
    ];

    pub fn is_structural(self) -> bool {
        matches!(self, RuleId::Axiom | RuleId::WeakL | RuleId::WeakR | RuleId::Weakenings | RuleId::Cut | RuleId::Hyp)
    }

    pub fn is_quantifier(self) -> bool {
        matches!(
            self,
            RuleId::ForallL
                | RuleId::ForallR
                | RuleId::ExistsL
                | RuleId::ExistsR
                | RuleId::CircForallL
                | RuleId::CircForallR
                | RuleId::CircExistsL
                | RuleId::CircExistsR
        )
    }

    /// Rules whose side term must be a fresh eigenvariable.
    pub fn needs_eigenvariable(self) -> bool {
        matches!(self, RuleId::ForallR | RuleId::ExistsL | RuleId::CircForallL | RuleId::CircExistsL)
    }

    pub fn name(self) -> &'static str {
        match self {
            RuleId::Axiom => "Axiom",
            RuleId::WeakL => "WeakL",
            RuleId::WeakR => "WeakR",
            RuleId::Weakenings => "Weakenings",
            RuleId::Cut => "Cut",
            RuleId::OrL => "OrL",
            RuleId::OrR => "OrR",
            RuleId::NegOrL => "NegOrL",
            RuleId::NegOrR => "NegOrR",
            RuleId::NegOrR2 => "NegOrR2",
            RuleId::AndL => "AndL",
            RuleId::AndR => "AndR",
            RuleId::NegAndL => "NegAndL",
            RuleId::NegAndR => "NegAndR",
            RuleId::NegAndR2 => "NegAndR2",
            RuleId::ImpL => "ImpL",
            RuleId::ImpR => "ImpR",
            RuleId::NegImpL => "NegImpL",
            RuleId::NegImpR => "NegImpR",
            RuleId::NegImpR2 => "NegImpR2",
            RuleId::NegR => "NegR",
            RuleId::NegR2 => "NegR2",
            RuleId::NegNegL => "NegNegL",
            RuleId::NegNegR => "NegNegR",
            RuleId::CircL => "CircL",
            RuleId::CircR => "CircR",
            RuleId::NegCircL => "NegCircL",
            RuleId::ForallL => "ForallL",
            RuleId::ForallR => "ForallR",
            RuleId::ExistsL => "ExistsL",
            RuleId::ExistsR => "ExistsR",
            RuleId::CircForallL => "CircForallL",
            RuleId::CircForallR => "CircForallR",
            RuleId::CircExistsL => "CircExistsL",
            RuleId::CircExistsR => "CircExistsR",
            RuleId::Hyp => "Hyp",
        }
    }

    pub fn from_name(s: &str) -> Option<RuleId> {
        RuleId::ALL.into_iter().find(|r| r.name() == s)
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Calculus {
    /// The original propositional calculus.
    GCiore,
    /// The variant whose right negation rules are invertible.
    GCiorePrime,
    /// First-order: every propositional rule of both variants plus the eight
    /// quantifier rules.
    GQCiore,
}

impl Calculus {
    pub fn allows(self, rule: RuleId) -> bool {
        use RuleId::*;
        match rule {
            Axiom | WeakL | WeakR | Weakenings | Cut | Hyp => true,
            NegOrR | NegAndR | NegImpR | NegR => self != Calculus::GCiorePrime,
            NegOrR2 | NegAndR2 | NegImpR2 | NegR2 => self != Calculus::GCiore,
            r if r.is_quantifier() => self == Calculus::GQCiore,
            _ => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct RuleViolation(pub String);

fn violation<T>(msg: impl Into<String>) -> Result<T, RuleViolation> {
    Err(RuleViolation(msg.into()))
}

/// Side of the principal and, per premise, the formulas added left and right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schema {
    pub side: Side,
    pub premises: Vec<(Vec<Formula>, Vec<Formula>)>,
}

fn neg(f: &Formula) -> Formula {
    Formula::not(f.clone())
}

/// The premise pattern of a logical rule applied to `principal`.
///
/// `term` is the instantiating term or eigenvariable of quantifier rules and
/// is ignored otherwise. Returns `None` when the rule does not fit the shape
/// of the principal.
pub fn schema(rule: RuleId, principal: &Formula, term: Option<&Term>) -> Option<Schema> {
    use Formula as F;
    use RuleId::*;
    let l = |adds: Vec<Vec<Formula>>| Schema { side: Side::Left, premises: adds.into_iter().map(|a| (a, vec![])).collect() };
    let r = |adds: Vec<Vec<Formula>>| Schema { side: Side::Right, premises: adds.into_iter().map(|a| (vec![], a)).collect() };
    let mixed = |side, prem: Vec<(Vec<Formula>, Vec<Formula>)>| Schema { side, premises: prem };
    let four = |a: &Formula, b: &Formula| r(vec![vec![a.clone()], vec![neg(a)], vec![b.clone()], vec![neg(b)]]);
    let inst = |q: &Formula| term.and_then(|t| q.instantiate(t).ok());

    Some(match (rule, principal) {
        (OrL, F::Or(a, b)) => l(vec![vec![(**a).clone()], vec![(**b).clone()]]),
        (OrR, F::Or(a, b)) => r(vec![vec![(**a).clone(), (**b).clone()]]),
        (AndL, F::And(a, b)) => l(vec![vec![(**a).clone(), (**b).clone()]]),
        (AndR, F::And(a, b)) => r(vec![vec![(**a).clone()], vec![(**b).clone()]]),
        (ImpL, F::Imp(a, b)) => mixed(Side::Left, vec![(vec![], vec![(**a).clone()]), (vec![(**b).clone()], vec![])]),
        (ImpR, F::Imp(a, b)) => mixed(Side::Right, vec![(vec![(**a).clone()], vec![(**b).clone()])]),
        (CircL, F::Circ(a)) => mixed(Side::Left, vec![(vec![], vec![(**a).clone()]), (vec![], vec![neg(a)])]),
        (CircR, F::Circ(a)) => mixed(Side::Right, vec![(vec![(**a).clone(), neg(a)], vec![])]),
        (NegR, F::Not(a)) => mixed(Side::Right, vec![(vec![(**a).clone()], vec![])]),
        (NegR2, F::Not(a)) => mixed(Side::Right, vec![(vec![(**a).clone()], vec![principal.clone()])]),
        (NegNegL, F::Not(x)) => match &**x {
            F::Not(a) => l(vec![vec![(**a).clone()]]),
            _ => return None,
        },
        (NegNegR, F::Not(x)) => match &**x {
            F::Not(a) => r(vec![vec![(**a).clone()]]),
            _ => return None,
        },
        (NegCircL, F::Not(x)) => match &**x {
            F::Circ(a) => l(vec![vec![(**a).clone(), neg(a)]]),
            _ => return None,
        },
        (NegOrL, F::Not(x)) => match &**x {
            F::Or(a, b) => mixed(
                Side::Left,
                vec![
                    (vec![(**a).clone(), neg(a), (**b).clone(), neg(b)], vec![]),
                    (vec![neg(a), neg(b)], vec![(**a).clone(), (**b).clone()]),
                ],
            ),
            _ => return None,
        },
        (NegOrR | NegAndR | NegImpR, F::Not(x)) => match (rule, &**x) {
            (NegOrR, F::Or(a, b)) | (NegAndR, F::And(a, b)) | (NegImpR, F::Imp(a, b)) => four(a, b),
            _ => return None,
        },
        (NegOrR2, F::Not(x)) => match &**x {
            F::Or(a, b) => {
                let (a, b) = ((**a).clone(), (**b).clone());
                mixed(
                    Side::Right,
                    vec![
                        (vec![a.clone()], vec![neg(&a)]),
                        (vec![a.clone()], vec![b.clone()]),
                        (vec![a.clone()], vec![neg(&b)]),
                        (vec![b.clone()], vec![a.clone()]),
                        (vec![b.clone()], vec![neg(&a)]),
                        (vec![b.clone()], vec![neg(&b)]),
                    ],
                )
            }
            _ => return None,
        },
        (NegAndL, F::Not(x)) => match &**x {
            F::And(a, b) => {
                let (a, b) = ((**a).clone(), (**b).clone());
                mixed(
                    Side::Left,
                    vec![
                        (vec![], vec![a.clone(), b.clone()]),
                        (vec![neg(&a)], vec![a.clone()]),
                        (vec![neg(&b)], vec![b.clone()]),
                        (vec![neg(&a), neg(&b)], vec![]),
                    ],
                )
            }
            _ => return None,
        },
        (NegAndR2, F::Not(x)) => match &**x {
            F::And(a, b) => {
                let (a, b) = ((**a).clone(), (**b).clone());
                mixed(
                    Side::Right,
                    vec![(vec![a.clone(), b.clone()], vec![neg(&a)]), (vec![a.clone(), b.clone()], vec![neg(&b)])],
                )
            }
            _ => return None,
        },
        (NegImpL, F::Not(x)) => match &**x {
            F::Imp(a, b) => {
                let (a, b) = ((**a).clone(), (**b).clone());
                mixed(
                    Side::Left,
                    vec![(vec![a.clone(), neg(&b)], vec![b.clone()]), (vec![a.clone(), neg(&a), neg(&b)], vec![])],
                )
            }
            _ => return None,
        },
        (NegImpR2, F::Not(x)) => match &**x {
            F::Imp(a, b) => {
                let (a, b) = ((**a).clone(), (**b).clone());
                mixed(
                    Side::Right,
                    vec![(vec![], vec![a.clone()]), (vec![b.clone()], vec![neg(&a)]), (vec![b.clone()], vec![neg(&b)])],
                )
            }
            _ => return None,
        },
        (ForallL, F::Forall(..)) => l(vec![vec![inst(principal)?]]),
        (ForallR, F::Forall(..)) => r(vec![vec![inst(principal)?]]),
        (ExistsL, F::Exists(..)) => l(vec![vec![inst(principal)?]]),
        (ExistsR, F::Exists(..)) => r(vec![vec![inst(principal)?]]),
        (CircForallL | CircForallR | CircExistsL | CircExistsR, F::Circ(q)) => {
            let body = Formula::circ(match (rule, &**q) {
                (CircForallL | CircForallR, F::Forall(..)) | (CircExistsL | CircExistsR, F::Exists(..)) => inst(q)?,
                _ => return None,
            });
            match rule {
                CircForallL | CircExistsL => l(vec![vec![body]]),
                _ => r(vec![vec![body]]),
            }
        }
        (WeakL, _) => l(vec![vec![]]),
        (WeakR, _) => r(vec![vec![]]),
        _ => return None,
    })
}

fn sorted(mut v: Vec<Sequent>) -> Vec<Sequent> {
    v.sort();
    v
}

/// Checks one inference step.
///
/// Premises are compared as a multiset, so their order is free.
pub fn check_rule_instance(
    rule: RuleId,
    conclusion: &Sequent,
    premises: &[Sequent],
    principal: Option<&Formula>,
    term: Option<&Term>,
) -> Result<(), RuleViolation> {
    match rule {
        RuleId::Axiom => {
            if !premises.is_empty() {
                return violation("an axiom has no premises");
            }
            let (Some(a), 1, 1) = (conclusion.ante.first(), conclusion.ante.len(), conclusion.succ.len()) else {
                return violation("an axiom has the shape α ⇒ α");
            };
            if !conclusion.succ.contains(a) {
                return violation("an axiom has the shape α ⇒ α");
            }
            if principal.is_some_and(|p| p != a) {
                return violation("axiom principal differs from its formula");
            }
            Ok(())
        }
        RuleId::Hyp => violation("hypothesis outside a derived-rule check"),
        RuleId::Weakenings => match premises {
            [p] if p.is_subsequent_of(conclusion) => Ok(()),
            [_] => violation("premise of weakenings is not a subsequent of the conclusion"),
            _ => violation("weakenings take exactly one premise"),
        },
        RuleId::Cut => {
            let Some(a) = principal else {
                return violation("cut needs its cut formula as principal");
            };
            let expected = sorted(vec![conclusion.extended(&[], &[a.clone()]), conclusion.extended(&[a.clone()], &[])]);
            if sorted(premises.to_vec()) == expected {
                Ok(())
            } else {
                violation("cut premises must be Γ ⇒ Δ, α and Γ, α ⇒ Δ")
            }
        }
        _ => {
            let Some(phi) = principal else {
                return violation(format!("{rule} needs a principal formula"));
            };
            check_logical(rule, conclusion, premises, phi, term)
        }
    }
}

fn check_logical(
    rule: RuleId,
    conclusion: &Sequent,
    premises: &[Sequent],
    phi: &Formula,
    term: Option<&Term>,
) -> Result<(), RuleViolation> {
    if rule.is_quantifier() && term.is_none() {
        // Recover the witness from the premises.
        let mut candidates: BTreeSet<String> = premises.iter().flat_map(Sequent::free_variables).collect();
        candidates.insert(fresh_free_variable(&conclusion.free_variables()));
        let mut last = violation(format!("no instantiating variable makes this a {rule} step"));
        for a in candidates {
            match check_logical(rule, conclusion, premises, phi, Some(&Term::Free(a))) {
                Ok(()) => return Ok(()),
                Err(e) => last = Err(e),
            }
        }
        return last;
    }
    let Some(sch) = schema(rule, phi, term) else {
        return violation(format!("{rule} does not apply to {phi}"));
    };
    if !conclusion.side(sch.side).contains(phi) {
        return violation(format!("principal {phi} is not on the {:?} side of the conclusion", sch.side));
    }
    if rule.needs_eigenvariable() {
        match term {
            Some(Term::Free(a)) if !conclusion.free_variables().contains(a) => {}
            Some(Term::Free(a)) => return violation(format!("eigenvariable {a} occurs in the conclusion")),
            _ => return violation("eigenvariable must be a free variable"),
        }
    }
    if rule.is_quantifier() && term.is_some_and(Term::has_bound) {
        return violation("instantiating term contains a bound variable");
    }
    let given = sorted(premises.to_vec());
    for ctx in [conclusion.without(sch.side, phi), conclusion.clone()] {
        let expected = sorted(sch.premises.iter().map(|(l, r)| ctx.extended(l, r)).collect());
        if expected == given {
            return Ok(());
        }
    }
    violation(format!("premises do not match {rule} on {phi}"))
}

/// One backward rule application.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Application {
    pub rule: RuleId,
    pub principal: Formula,
    pub side: Side,
    pub term: Option<Term>,
    pub premises: Vec<Sequent>,
}

/// Every logical-rule instance of `calculus` with conclusion `s`, ordered by
/// rule, then principal side, then principal.
///
/// Principals are dropped from the premise context. Quantifier rules with an
/// arbitrary witness are tried on each free variable of `s` and on one fresh
/// variable; eigenvariable rules use one fresh variable.
pub fn backward_applications(s: &Sequent, calculus: Calculus) -> Vec<Application> {
    let fresh = Term::Free(fresh_free_variable(&s.free_variables()));
    let mut vars: Vec<String> = s.free_variables().into_iter().collect();
    vars.sort_by(|a, b| variable_order(a, b));
    let mut witnesses: Vec<Term> = vars.into_iter().map(Term::Free).collect();
    witnesses.push(fresh.clone());

    let mut out = Vec::new();
    for rule in RuleId::ALL {
        if rule.is_structural() || !calculus.allows(rule) {
            continue;
        }
        for side in [Side::Left, Side::Right] {
            for phi in s.side(side) {
                let terms: Vec<Option<Term>> = if rule.needs_eigenvariable() {
                    vec![Some(fresh.clone())]
                } else if rule.is_quantifier() {
                    witnesses.iter().cloned().map(Some).collect()
                } else {
                    vec![None]
                };
                for term in terms {
                    let Some(sch) = schema(rule, phi, term.as_ref()) else { continue };
                    if sch.side != side {
                        continue;
                    }
                    let ctx = s.without(side, phi);
                    out.push(Application {
                        rule,
                        principal: phi.clone(),
                        side,
                        term,
                        premises: sch.premises.iter().map(|(l, r)| ctx.extended(l, r)).collect(),
                    });
                }
            }
        }
    }
    out
}
