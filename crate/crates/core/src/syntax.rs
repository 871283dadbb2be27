//! Terms, formulas and signatures.
//!
//! Free and bound variables live in separate namespaces: a [`Term::Free`]
//! named `x` and a [`Term::Bound`] named `x` are different terms. Quantified
//! bodies mention their variable only as `Term::Bound`, so instantiating a
//! body never needs renaming.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Free(String),
    Bound(String),
    Const(String),
    App(String, Vec<Term>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Prop(String),
    Pred(String, Vec<Term>),
    Not(Box<Formula>),
    Circ(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantifier {
    Forall,
    Exists,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("substituted term `{0}` contains a bound variable")]
    BoundInTerm(Term),
    #[error("bound variable `{0}` already occurs in the formula")]
    BoundClash(String),
    #[error("weight is undefined on quantified formula `{0}`")]
    Quantified(Formula),
    #[error("`{0}` is not a quantified formula")]
    NotQuantified(Formula),
}

impl Term {
    pub fn free(name: impl Into<String>) -> Term {
        Term::Free(name.into())
    }

    pub fn has_bound(&self) -> bool {
        match self {
            Term::Bound(_) => true,
            Term::Free(_) | Term::Const(_) => false,
            Term::App(_, args) => args.iter().any(Term::has_bound),
        }
    }

    fn collect_free(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Free(a) => {
                out.insert(a.clone());
            }
            Term::Bound(_) | Term::Const(_) => {}
            Term::App(_, args) => args.iter().for_each(|t| t.collect_free(out)),
        }
    }

    pub fn free_variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn mentions_bound(&self, x: &str) -> bool {
        match self {
            Term::Bound(y) => y == x,
            Term::Free(_) | Term::Const(_) => false,
            Term::App(_, args) => args.iter().any(|t| t.mentions_bound(x)),
        }
    }

    /// Replaces every occurrence of `from` (compared structurally) by `to`.
    fn replace(&self, from: &Term, to: &Term) -> Term {
        if self == from {
            return to.clone();
        }
        match self {
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|t| t.replace(from, to)).collect()),
            other => other.clone(),
        }
    }
}

impl Formula {
    pub fn prop(name: impl Into<String>) -> Formula {
        Formula::Prop(name.into())
    }

    pub fn pred(name: impl Into<String>, args: Vec<Term>) -> Formula {
        Formula::Pred(name.into(), args)
    }

    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }

    pub fn circ(a: Formula) -> Formula {
        Formula::Circ(Box::new(a))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    /// `(a → b) ∧ (b → a)`.
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    pub fn forall(x: impl Into<String>, body: Formula) -> Formula {
        Formula::Forall(x.into(), Box::new(body))
    }

    pub fn exists(x: impl Into<String>, body: Formula) -> Formula {
        Formula::Exists(x.into(), Box::new(body))
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Prop(_) | Formula::Pred(..))
    }

    /// An atom or the negation of an atom.
    pub fn is_literal(&self) -> bool {
        match self {
            Formula::Not(a) => a.is_atom(),
            f => f.is_atom(),
        }
    }

    pub fn is_propositional(&self) -> bool {
        match self {
            Formula::Prop(_) => true,
            Formula::Pred(..) | Formula::Forall(..) | Formula::Exists(..) => false,
            Formula::Not(a) | Formula::Circ(a) => a.is_propositional(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => a.is_propositional() && b.is_propositional(),
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Prop(_) | Formula::Pred(..) => true,
            Formula::Forall(..) | Formula::Exists(..) => false,
            Formula::Not(a) | Formula::Circ(a) => a.is_quantifier_free(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => a.is_quantifier_free() && b.is_quantifier_free(),
        }
    }

    /// Number of connectives and quantifiers.
    pub fn complexity(&self) -> usize {
        match self {
            Formula::Prop(_) | Formula::Pred(..) => 0,
            Formula::Not(a) | Formula::Circ(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + a.complexity(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.complexity() + b.complexity(),
        }
    }

    /// Nesting depth of connectives; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Prop(_) | Formula::Pred(..) => 0,
            Formula::Not(a) | Formula::Circ(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + a.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Weight used by the termination argument of the propositional search.
    pub fn weight(&self) -> Result<u64, SyntaxError> {
        Ok(match self {
            f if f.is_literal() => 0,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => a.weight()? + b.weight()? + 1,
            Formula::Circ(a) => a.weight()? + Formula::not((**a).clone()).weight()? + 1,
            Formula::Not(inner) => match &**inner {
                Formula::Not(_) => inner.weight()? + 1,
                Formula::Circ(_) => inner.weight()? + 1,
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                    a.weight()?
                        + Formula::not((**a).clone()).weight()?
                        + b.weight()?
                        + Formula::not((**b).clone()).weight()?
                        + 2
                }
                _ => return Err(SyntaxError::Quantified(self.clone())),
            },
            _ => return Err(SyntaxError::Quantified(self.clone())),
        })
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Prop(p) => {
                out.insert(p.clone());
            }
            Formula::Pred(..) => {}
            Formula::Not(a) | Formula::Circ(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => a.collect_atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    pub fn free_variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    pub(crate) fn collect_free(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Prop(_) => {}
            Formula::Pred(_, args) => args.iter().for_each(|t| t.collect_free(out)),
            Formula::Not(a) | Formula::Circ(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => a.collect_free(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_free(out);
                b.collect_free(out);
            }
        }
    }

    /// True when `x` is used as a binder or as a bound variable anywhere.
    pub fn mentions_bound(&self, x: &str) -> bool {
        match self {
            Formula::Prop(_) => false,
            Formula::Pred(_, args) => args.iter().any(|t| t.mentions_bound(x)),
            Formula::Not(a) | Formula::Circ(a) => a.mentions_bound(x),
            Formula::Forall(y, a) | Formula::Exists(y, a) => y == x || a.mentions_bound(x),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => a.mentions_bound(x) || b.mentions_bound(x),
        }
    }

    fn map_terms(&self, f: &impl Fn(&Term) -> Term) -> Formula {
        match self {
            Formula::Prop(_) => self.clone(),
            Formula::Pred(p, args) => Formula::Pred(p.clone(), args.iter().map(f).collect()),
            Formula::Not(a) => Formula::not(a.map_terms(f)),
            Formula::Circ(a) => Formula::circ(a.map_terms(f)),
            Formula::And(a, b) => Formula::and(a.map_terms(f), b.map_terms(f)),
            Formula::Or(a, b) => Formula::or(a.map_terms(f), b.map_terms(f)),
            Formula::Imp(a, b) => Formula::imp(a.map_terms(f), b.map_terms(f)),
            Formula::Forall(x, a) => Formula::forall(x.clone(), a.map_terms(f)),
            Formula::Exists(x, a) => Formula::exists(x.clone(), a.map_terms(f)),
        }
    }

    /// `φ[a := t]` for a free variable `a`.
    pub fn substitute(&self, a: &str, t: &Term) -> Result<Formula, SyntaxError> {
        if t.has_bound() {
            return Err(SyntaxError::BoundInTerm(t.clone()));
        }
        let from = Term::Free(a.to_string());
        Ok(self.map_terms(&|s| s.replace(&from, t)))
    }

    /// Replaces the free variable `a` by the bound variable `x` and quantifies.
    pub fn bind(&self, a: &str, x: &str, q: Quantifier) -> Result<Formula, SyntaxError> {
        if self.mentions_bound(x) {
            return Err(SyntaxError::BoundClash(x.to_string()));
        }
        let from = Term::Free(a.to_string());
        let to = Term::Bound(x.to_string());
        let body = self.map_terms(&|s| s.replace(&from, &to));
        Ok(match q {
            Quantifier::Forall => Formula::forall(x, body),
            Quantifier::Exists => Formula::exists(x, body),
        })
    }

    /// For `Qx φ(x)` returns `φ(t)`.
    pub fn instantiate(&self, t: &Term) -> Result<Formula, SyntaxError> {
        match self {
            Formula::Forall(x, body) | Formula::Exists(x, body) => {
                if t.has_bound() {
                    return Err(SyntaxError::BoundInTerm(t.clone()));
                }
                Ok(body.open(x, t))
            }
            other => Err(SyntaxError::NotQuantified(other.clone())),
        }
    }

    fn open(&self, x: &str, t: &Term) -> Formula {
        let from = Term::Bound(x.to_string());
        match self {
            // An inner binder of the same name would shadow; stop there.
            Formula::Forall(y, _) | Formula::Exists(y, _) if y == x => self.clone(),
            Formula::Forall(y, a) => Formula::forall(y.clone(), a.open(x, t)),
            Formula::Exists(y, a) => Formula::exists(y.clone(), a.open(x, t)),
            Formula::Pred(..) => self.map_terms(&|s| s.replace(&from, t)),
            Formula::Prop(_) => self.clone(),
            Formula::Not(a) => Formula::not(a.open(x, t)),
            Formula::Circ(a) => Formula::circ(a.open(x, t)),
            Formula::And(a, b) => Formula::and(a.open(x, t), b.open(x, t)),
            Formula::Or(a, b) => Formula::or(a.open(x, t), b.open(x, t)),
            Formula::Imp(a, b) => Formula::imp(a.open(x, t), b.open(x, t)),
        }
    }

    /// Every bound variable sits under a binder of that name and no binder
    /// shadows another.
    pub fn is_well_scoped(&self) -> bool {
        fn go(f: &Formula, scope: &mut Vec<String>) -> bool {
            match f {
                Formula::Prop(_) => true,
                Formula::Pred(_, args) => args.iter().all(|t| term_ok(t, scope)),
                Formula::Not(a) | Formula::Circ(a) => go(a, scope),
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => go(a, scope) && go(b, scope),
                Formula::Forall(x, a) | Formula::Exists(x, a) => {
                    if scope.contains(x) {
                        return false;
                    }
                    scope.push(x.clone());
                    let ok = go(a, scope);
                    scope.pop();
                    ok
                }
            }
        }
        fn term_ok(t: &Term, scope: &[String]) -> bool {
            match t {
                Term::Bound(x) => scope.contains(x),
                Term::Free(_) | Term::Const(_) => true,
                Term::App(_, args) => args.iter().all(|s| term_ok(s, scope)),
            }
        }
        go(self, &mut Vec::new())
    }

    /// Generalized subformulas.
    ///
    /// Quantified formulas are not covered by the closure clauses and are
    /// treated as opaque.
    pub fn gsub(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_gsub(&mut out);
        out
    }

    pub(crate) fn collect_gsub(&self, out: &mut BTreeSet<Formula>) {
        if !out.insert(self.clone()) {
            return;
        }
        match self {
            Formula::Not(inner) => {
                inner.collect_gsub(out);
                if let Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) = &**inner {
                    Formula::not((**a).clone()).collect_gsub(out);
                    Formula::not((**b).clone()).collect_gsub(out);
                }
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_gsub(out);
                b.collect_gsub(out);
            }
            Formula::Circ(a) => Formula::not((**a).clone()).collect_gsub(out),
            _ => {}
        }
    }

    /// Immediate subformula occurrences, counting atoms.
    pub fn occurrences(&self) -> usize {
        match self {
            Formula::Prop(_) | Formula::Pred(..) => 1,
            Formula::Not(a) | Formula::Circ(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + a.occurrences(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.occurrences() + b.occurrences(),
        }
    }
}

/// Least `a{i}` (i ≥ 1) not in `avoid`.
pub fn fresh_free_variable<'a>(avoid: impl IntoIterator<Item = &'a String>) -> String {
    let taken: BTreeSet<&String> = avoid.into_iter().collect();
    (1..)
        .map(|i| format!("a{i}"))
        .find(|name| !taken.contains(name))
        .expect("unbounded range")
}

/// Orders free-variable names by their numeric suffix when they share a stem,
/// so `a2` sorts before `a10`.
pub fn variable_order(a: &str, b: &str) -> std::cmp::Ordering {
    fn split(s: &str) -> (&str, Option<u64>) {
        let stem = s.trim_end_matches(|c: char| c.is_ascii_digit());
        (stem, s[stem.len()..].parse().ok())
    }
    split(a).cmp(&split(b)).then_with(|| a.cmp(b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymbolKind {
    Predicate,
    Function,
    Constant,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("`{name}` used with arity {found}, expected {expected}")]
    Arity { name: String, expected: usize, found: usize },
    #[error("`{0}` used both as {1:?} and {2:?}")]
    KindClash(String, SymbolKind, SymbolKind),
    #[error("unknown symbol `{0}`")]
    Unknown(String),
}

/// Predicate, function and constant symbols with arities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub predicates: BTreeMap<String, usize>,
    pub functions: BTreeMap<String, usize>,
    pub constants: BTreeSet<String>,
}

impl Signature {
    /// Collects the symbols used in `formulas`, rejecting inconsistent use.
    pub fn infer<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Result<Signature, SignatureError> {
        let mut sig = Signature::default();
        for f in formulas {
            sig.absorb(f)?;
        }
        Ok(sig)
    }

    fn kind_of(&self, name: &str) -> Option<SymbolKind> {
        if self.predicates.contains_key(name) {
            Some(SymbolKind::Predicate)
        } else if self.functions.contains_key(name) {
            Some(SymbolKind::Function)
        } else if self.constants.contains(name) {
            Some(SymbolKind::Constant)
        } else {
            None
        }
    }

    fn declare(&mut self, name: &str, kind: SymbolKind, arity: usize) -> Result<(), SignatureError> {
        match self.kind_of(name) {
            Some(k) if k != kind => return Err(SignatureError::KindClash(name.to_string(), k, kind)),
            _ => {}
        }
        let table = match kind {
            SymbolKind::Predicate => &mut self.predicates,
            SymbolKind::Function => &mut self.functions,
            SymbolKind::Constant => {
                self.constants.insert(name.to_string());
                return Ok(());
            }
        };
        match table.get(name) {
            Some(&n) if n != arity => Err(SignatureError::Arity { name: name.to_string(), expected: n, found: arity }),
            _ => {
                table.insert(name.to_string(), arity);
                Ok(())
            }
        }
    }

    fn absorb_term(&mut self, t: &Term) -> Result<(), SignatureError> {
        match t {
            Term::Free(_) | Term::Bound(_) => Ok(()),
            Term::Const(c) => self.declare(c, SymbolKind::Constant, 0),
            Term::App(f, args) => {
                self.declare(f, SymbolKind::Function, args.len())?;
                args.iter().try_for_each(|a| self.absorb_term(a))
            }
        }
    }

    fn absorb(&mut self, f: &Formula) -> Result<(), SignatureError> {
        match f {
            Formula::Prop(_) => Ok(()),
            Formula::Pred(p, args) => {
                self.declare(p, SymbolKind::Predicate, args.len())?;
                args.iter().try_for_each(|a| self.absorb_term(a))
            }
            Formula::Not(a) | Formula::Circ(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => self.absorb(a),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                self.absorb(a)?;
                self.absorb(b)
            }
        }
    }

    /// Checks that every symbol of `f` is declared here with the right arity.
    pub fn check(&self, f: &Formula) -> Result<(), SignatureError> {
        let used = Signature::infer([f])?;
        for (p, &n) in &used.predicates {
            match self.predicates.get(p) {
                None => return Err(SignatureError::Unknown(p.clone())),
                Some(&m) if m != n => return Err(SignatureError::Arity { name: p.clone(), expected: m, found: n }),
                _ => {}
            }
        }
        for (g, &n) in &used.functions {
            match self.functions.get(g) {
                None => return Err(SignatureError::Unknown(g.clone())),
                Some(&m) if m != n => return Err(SignatureError::Arity { name: g.clone(), expected: m, found: n }),
                _ => {}
            }
        }
        match used.constants.iter().find(|c| !self.constants.contains(*c)) {
            Some(c) => Err(SignatureError::Unknown(c.clone())),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Quantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantifier::Forall => "forall",
            Quantifier::Exists => "exists",
        })
    }
}
