//! Derived rules, expanded into trees of primitive steps over `Hyp` leaves.

use super::proof::Proof;
use super::rules::{RuleId, RuleViolation};
use super::Sequent;
use crate::syntax::{Formula, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DerivedRule {
    /// `Γ, α ⇒ Δ` and `Γ, β ⇒ Δ` give `Γ ⇒ Δ, ¬(α ∨ β)`.
    NegOrRPrime,
    /// `Γ, α, β ⇒ Δ` gives `Γ ⇒ Δ, ¬(α ∧ β)`.
    NegAndRPrime,
    /// `Γ ⇒ Δ, α` and `Γ, β ⇒ Δ` give `Γ ⇒ Δ, ¬(α → β)`.
    NegImpRPrime,
    /// `Γ ⇒ Δ, α` and `Γ ⇒ Δ, ¬α` give `Γ ⇒ Δ, ¬α`.
    NegRPrime,
    /// `⇒ φ → ψ(a)` gives `⇒ φ → ∀x ψ(x)` when `a` is not free in `φ`.
    ForallIntro,
    /// `⇒ φ(a) → ψ` gives `⇒ ∃x φ(x) → ψ` when `a` is not free in `ψ`.
    ExistsIntro,
}

impl DerivedRule {
    pub const ALL: [DerivedRule; 6] = [
        DerivedRule::NegOrRPrime,
        DerivedRule::NegAndRPrime,
        DerivedRule::NegImpRPrime,
        DerivedRule::NegRPrime,
        DerivedRule::ForallIntro,
        DerivedRule::ExistsIntro,
    ];
}

fn bad<T>(msg: impl Into<String>) -> Result<T, RuleViolation> {
    Err(RuleViolation(msg.into()))
}

/// Expands a derived rule application into primitive steps. The result has
/// `conclusion` at its root and one `Hyp` leaf per premise; it checks under
/// [`check_derivation`](super::check_derivation) with those premises as
/// hypotheses (the propositional ones in GCiore, the quantifier ones in
/// GQCiore with cut).
pub fn expand_derived_rule(rule: DerivedRule, conclusion: &Sequent, premises: &[Sequent]) -> Result<Proof, RuleViolation> {
    match rule {
        DerivedRule::NegOrRPrime | DerivedRule::NegAndRPrime | DerivedRule::NegImpRPrime => {
            for phi in &conclusion.succ {
                if let Some(p) = negated_binary(rule, conclusion, premises, phi) {
                    return Ok(p);
                }
            }
            bad(format!("{rule:?} does not produce {conclusion} from the given premises"))
        }
        DerivedRule::NegRPrime => match premises {
            [a, b] if b == conclusion => {
                let ok = conclusion.succ.iter().any(|phi| match phi {
                    Formula::Not(x) => {
                        let ctx = conclusion.without(super::Side::Right, phi);
                        *a == ctx.extended(&[], &[(**x).clone()])
                    }
                    _ => false,
                });
                if ok {
                    Ok(Proof::hyp(b.clone()))
                } else {
                    bad("first premise must be Γ ⇒ Δ, α")
                }
            }
            _ => bad("expected premises Γ ⇒ Δ, α and Γ ⇒ Δ, ¬α"),
        },
        DerivedRule::ForallIntro => forall_intro(conclusion, premises),
        DerivedRule::ExistsIntro => exists_intro(conclusion, premises),
    }
}

fn negated_binary(rule: DerivedRule, conclusion: &Sequent, premises: &[Sequent], phi: &Formula) -> Option<Proof> {
    let Formula::Not(inner) = phi else { return None };
    let ctx = conclusion.without(super::Side::Right, phi);
    let (first_rule, expected): (RuleId, Vec<Sequent>) = match (rule, &**inner) {
        (DerivedRule::NegOrRPrime, Formula::Or(a, b)) => {
            (RuleId::OrL, vec![ctx.extended(&[(**a).clone()], &[]), ctx.extended(&[(**b).clone()], &[])])
        }
        (DerivedRule::NegAndRPrime, Formula::And(a, b)) => (RuleId::AndL, vec![ctx.extended(&[(**a).clone(), (**b).clone()], &[])]),
        (DerivedRule::NegImpRPrime, Formula::Imp(a, b)) => {
            (RuleId::ImpL, vec![ctx.extended(&[], &[(**a).clone()]), ctx.extended(&[(**b).clone()], &[])])
        }
        _ => return None,
    };
    if expected != premises {
        return None;
    }
    let mid = ctx.extended(&[(**inner).clone()], &[]);
    let hyps = premises.iter().cloned().map(Proof::hyp).collect();
    let step = Proof::step(mid, first_rule, (**inner).clone(), hyps);
    Some(Proof::step(conclusion.clone(), RuleId::NegR, phi.clone(), vec![step]))
}

/// Finds `a` with `instantiate(q, a) == target` and `a` not free in `q`.
fn witness(q: &Formula, target: &Formula) -> Option<String> {
    target
        .free_variables()
        .into_iter()
        .find(|a| !q.free_variables().contains(a) && q.instantiate(&Term::Free(a.clone())).ok().as_ref() == Some(target))
}

fn single_implication(s: &Sequent) -> Option<(&Formula, &Formula)> {
    match (s.ante.len(), s.succ.first(), s.succ.len()) {
        (0, Some(Formula::Imp(a, b)), 1) => Some((a, b)),
        _ => None,
    }
}

fn forall_intro(conclusion: &Sequent, premises: &[Sequent]) -> Result<Proof, RuleViolation> {
    let ([prem], Some((phi, all)), Some((phi2, psi_a))) =
        (premises, single_implication(conclusion), premises.first().and_then(single_implication))
    else {
        return bad("expected ⇒ φ → ψ(a) above ⇒ φ → ∀x ψ(x)");
    };
    if phi != phi2 || !matches!(all, Formula::Forall(..)) {
        return bad("antecedents differ or consequent is not universal");
    }
    let Some(a) = witness(all, psi_a) else {
        return bad("ψ(a) is not an instance of the universal formula");
    };
    if phi.free_variables().contains(&a) {
        return bad(format!("{a} is free in φ"));
    }
    let imp = Formula::imp(phi.clone(), psi_a.clone());
    let phi_s = [phi.clone()];
    let psi_s = [psi_a.clone()];
    let empty = Sequent::default();

    let h = Proof::hyp(prem.clone());
    let h1 = Proof::step(empty.extended(&phi_s, &[imp.clone()]), RuleId::WeakL, phi.clone(), vec![h]);
    let h2 = Proof::step(empty.extended(&phi_s, &[imp.clone(), psi_a.clone()]), RuleId::WeakR, psi_a.clone(), vec![h1]);
    let ax_phi = Proof::step(empty.extended(&phi_s, &[phi.clone(), psi_a.clone()]), RuleId::WeakR, psi_a.clone(), vec![Proof::axiom(phi.clone())]);
    let ax_psi = Proof::step(empty.extended(&[phi.clone(), psi_a.clone()], &psi_s), RuleId::WeakL, phi.clone(), vec![Proof::axiom(psi_a.clone())]);
    let imp_l = Proof::step(empty.extended(&[phi.clone(), imp.clone()], &psi_s), RuleId::ImpL, imp.clone(), vec![ax_phi, ax_psi]);
    let cut = Proof::step(empty.extended(&phi_s, &psi_s), RuleId::Cut, imp, vec![h2, imp_l]);
    let mut gen = Proof::step(empty.extended(&phi_s, &[all.clone()]), RuleId::ForallR, all.clone(), vec![cut]);
    gen.term = Some(Term::Free(a));
    let top = Formula::imp(phi.clone(), all.clone());
    Ok(Proof::step(conclusion.clone(), RuleId::ImpR, top, vec![gen]))
}

fn exists_intro(conclusion: &Sequent, premises: &[Sequent]) -> Result<Proof, RuleViolation> {
    let ([prem], Some((ex, psi)), Some((phi_a, psi2))) =
        (premises, single_implication(conclusion), premises.first().and_then(single_implication))
    else {
        return bad("expected ⇒ φ(a) → ψ above ⇒ ∃x φ(x) → ψ");
    };
    if psi != psi2 || !matches!(ex, Formula::Exists(..)) {
        return bad("consequents differ or antecedent is not existential");
    }
    let Some(a) = witness(ex, phi_a) else {
        return bad("φ(a) is not an instance of the existential formula");
    };
    if psi.free_variables().contains(&a) {
        return bad(format!("{a} is free in ψ"));
    }
    let imp = Formula::imp(phi_a.clone(), psi.clone());
    let phi_s = [phi_a.clone()];
    let psi_s = [psi.clone()];
    let empty = Sequent::default();

    let h = Proof::hyp(prem.clone());
    let h1 = Proof::step(empty.extended(&phi_s, &[imp.clone()]), RuleId::WeakL, phi_a.clone(), vec![h]);
    let h2 = Proof::step(empty.extended(&phi_s, &[imp.clone(), psi.clone()]), RuleId::WeakR, psi.clone(), vec![h1]);
    let ax_phi = Proof::step(empty.extended(&phi_s, &[phi_a.clone(), psi.clone()]), RuleId::WeakR, psi.clone(), vec![Proof::axiom(phi_a.clone())]);
    let ax_psi = Proof::step(empty.extended(&[phi_a.clone(), psi.clone()], &psi_s), RuleId::WeakL, phi_a.clone(), vec![Proof::axiom(psi.clone())]);
    let imp_l = Proof::step(empty.extended(&[phi_a.clone(), imp.clone()], &psi_s), RuleId::ImpL, imp.clone(), vec![ax_phi, ax_psi]);
    let cut = Proof::step(empty.extended(&phi_s, &psi_s), RuleId::Cut, imp, vec![h2, imp_l]);
    let mut gen = Proof::step(empty.extended(&[ex.clone()], &psi_s), RuleId::ExistsL, ex.clone(), vec![cut]);
    gen.term = Some(Term::Free(a));
    let top = Formula::imp(ex.clone(), psi.clone());
    Ok(Proof::step(conclusion.clone(), RuleId::ImpR, top, vec![gen]))
}
