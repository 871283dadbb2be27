use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::rules::{check_rule_instance, Calculus, RuleId};
use super::Sequent;
use crate::syntax::{Formula, Term};

/// A derivation tree; the root's sequent is its end-sequent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub sequent: Sequent,
    pub rule: RuleId,
    pub principal: Option<Formula>,
    pub term: Option<Term>,
    pub premises: Vec<Proof>,
}

impl Proof {
    pub fn axiom(a: Formula) -> Proof {
        Proof {
            sequent: Sequent::new([a.clone()], [a.clone()]),
            rule: RuleId::Axiom,
            principal: Some(a),
            term: None,
            premises: vec![],
        }
    }

    pub fn hyp(s: Sequent) -> Proof {
        Proof { sequent: s, rule: RuleId::Hyp, principal: None, term: None, premises: vec![] }
    }

    pub fn step(sequent: Sequent, rule: RuleId, principal: Formula, premises: Vec<Proof>) -> Proof {
        Proof { sequent, rule, principal: Some(principal), term: None, premises }
    }

    /// `proof` weakened to `target`; no node is added when nothing changes.
    pub fn weaken_to(proof: Proof, target: &Sequent) -> Proof {
        if proof.sequent == *target {
            return proof;
        }
        Proof { sequent: target.clone(), rule: RuleId::Weakenings, principal: None, term: None, premises: vec![proof] }
    }

    /// `α ⇒ α` weakened to `target`.
    pub fn closed_by(a: &Formula, target: &Sequent) -> Proof {
        Proof::weaken_to(Proof::axiom(a.clone()), target)
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Proof::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(Proof::height).max().unwrap_or(0)
    }

    pub fn uses(&self, rule: RuleId) -> bool {
        self.rule == rule || self.premises.iter().any(|p| p.uses(rule))
    }

    pub fn rules(&self) -> BTreeSet<RuleId> {
        let mut out = BTreeSet::new();
        self.visit(&mut |p| {
            out.insert(p.rule);
        });
        out
    }

    fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Proof)) {
        f(self);
        for p in &self.premises {
            p.visit(f);
        }
    }

    /// Text rendering, conclusion first, premises indented below it.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, depth: usize) {
        use std::fmt::Write;
        let _ = write!(out, "{:indent$}{}   [{}", "", self.sequent, self.rule, indent = depth * 2);
        if let Some(p) = &self.principal {
            let _ = write!(out, " on {p}");
        }
        if let Some(t) = &self.term {
            let _ = write!(out, " with {t}");
        }
        out.push_str("]\n");
        for p in &self.premises {
            p.render_into(out, depth + 1);
        }
    }
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// The first bad node, addressed by premise indices from the root.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid step at {path:?}: {message}")]
pub struct ProofError {
    pub path: Vec<usize>,
    pub message: String,
}

/// Checks every node of `proof` against `calculus`.
pub fn check_proof(proof: &Proof, calculus: Calculus, allow_cut: bool) -> Result<(), ProofError> {
    check_derivation(proof, calculus, allow_cut, &[])
}

/// Like [`check_proof`], but `Hyp` leaves are accepted when their sequent is
/// one of `hypotheses`.
pub fn check_derivation(proof: &Proof, calculus: Calculus, allow_cut: bool, hypotheses: &[Sequent]) -> Result<(), ProofError> {
    let mut path = Vec::new();
    check_node(proof, calculus, allow_cut, hypotheses, &mut path)
}

fn check_node(p: &Proof, calc: Calculus, allow_cut: bool, hyps: &[Sequent], path: &mut Vec<usize>) -> Result<(), ProofError> {
    let fail = |path: &Vec<usize>, message: String| Err(ProofError { path: path.clone(), message });
    if !calc.allows(p.rule) {
        return fail(path, format!("{} is not a rule of {calc:?}", p.rule));
    }
    if p.rule == RuleId::Cut && !allow_cut {
        return fail(path, "cut is not allowed".into());
    }
    if p.rule == RuleId::Hyp {
        if !p.premises.is_empty() || !hyps.contains(&p.sequent) {
            return fail(path, format!("{} is not an available hypothesis", p.sequent));
        }
        return Ok(());
    }
    let premises: Vec<Sequent> = p.premises.iter().map(|q| q.sequent.clone()).collect();
    if let Err(e) = check_rule_instance(p.rule, &p.sequent, &premises, p.principal.as_ref(), p.term.as_ref()) {
        return fail(path, e.0);
    }
    for (i, q) in p.premises.iter().enumerate() {
        path.push(i);
        check_node(q, calc, allow_cut, hyps, path)?;
        path.pop();
    }
    Ok(())
}

/// Every formula of every node lies in the generalized subformulas of the
/// end-sequent.
pub fn check_subformula_property(proof: &Proof) -> bool {
    let allowed = proof.sequent.gsub();
    let mut ok = true;
    proof.visit(&mut |p| {
        ok &= p.sequent.formulas().all(|f| allowed.contains(f));
    });
    ok
}
