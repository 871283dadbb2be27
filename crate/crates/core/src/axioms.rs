//! Hilbert axiom schemata of the propositional logic and its quantifier
//! extension, as formula builders.

use crate::syntax::{Formula, Quantifier, SyntaxError, Term};

type Schema = fn(&Formula, &Formula, &Formula) -> Formula;

fn imp(a: &Formula, b: &Formula) -> Formula {
    Formula::imp(a.clone(), b.clone())
}

fn circ(a: &Formula) -> Formula {
    Formula::circ(a.clone())
}

fn neg(a: &Formula) -> Formula {
    Formula::not(a.clone())
}

fn propagation(a: &Formula, b: &Formula, target: Formula) -> Formula {
    Formula::iff(Formula::or(circ(a), circ(b)), Formula::circ(target))
}

/// The sixteen propositional schemata in three metavariables.
pub const PROPOSITIONAL_SCHEMATA: [(&str, Schema); 16] = [
    ("weakening", |a, b, _| imp(a, &imp(b, a))),
    ("distribution", |a, b, c| imp(&imp(a, &imp(b, c)), &imp(&imp(a, b), &imp(a, c)))),
    ("and-intro", |a, b, _| imp(a, &imp(b, &Formula::and(a.clone(), b.clone())))),
    ("and-elim-left", |a, b, _| imp(&Formula::and(a.clone(), b.clone()), a)),
    ("and-elim-right", |a, b, _| imp(&Formula::and(a.clone(), b.clone()), b)),
    ("or-intro-left", |a, b, _| imp(a, &Formula::or(a.clone(), b.clone()))),
    ("or-intro-right", |a, b, _| imp(b, &Formula::or(a.clone(), b.clone()))),
    ("or-elim", |a, b, c| imp(&imp(a, c), &imp(&imp(b, c), &imp(&Formula::or(a.clone(), b.clone()), c)))),
    ("peirce-or", |a, b, _| Formula::or(imp(a, b), a.clone())),
    ("excluded-middle", |a, _, _| Formula::or(a.clone(), neg(a))),
    ("explosion", |a, b, _| imp(&circ(a), &imp(a, &imp(&neg(a), b)))),
    ("ci", |a, _, _| imp(&neg(&circ(a)), &Formula::and(a.clone(), neg(a)))),
    ("cf", |a, _, _| Formula::iff(neg(&neg(a)), a.clone())),
    ("propagation-and", |a, b, _| propagation(a, b, Formula::and(a.clone(), b.clone()))),
    ("propagation-or", |a, b, _| propagation(a, b, Formula::or(a.clone(), b.clone()))),
    ("propagation-imp", |a, b, _| propagation(a, b, Formula::imp(a.clone(), b.clone()))),
];

/// The four quantifier schemata for `phi(a)`, bound variable `x` and term `t`:
/// instance to existential, universal to instance, and the two consistency
/// biconditionals.
pub fn quantifier_axioms(phi: &Formula, a: &str, x: &str, t: &Term) -> Result<Vec<(&'static str, Formula)>, SyntaxError> {
    let inst = phi.substitute(a, t)?;
    let all = phi.bind(a, x, Quantifier::Forall)?;
    let some = phi.bind(a, x, Quantifier::Exists)?;
    let some_circ = Formula::circ(phi.clone()).bind(a, x, Quantifier::Exists)?;
    Ok(vec![
        ("exists-intro", Formula::imp(inst.clone(), some.clone())),
        ("forall-elim", Formula::imp(all.clone(), inst)),
        ("consistency-exists", Formula::iff(Formula::circ(some), some_circ.clone())),
        ("consistency-forall", Formula::iff(Formula::circ(all), some_circ)),
    ])
}
