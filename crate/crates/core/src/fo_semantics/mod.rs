//! First-order structures with three-valued predicates.
//!
//! A formula denotes a [`Triple`] over assignments: the sets of assignments
//! sending it to `1`, `0` and `½`. [`denote`] computes that table clause by
//! clause, instantiating quantifiers with a fresh free variable;
//! [`value`] evaluates at a single assignment with bound variables looked up
//! in an environment. The two are independent routes to the same values.

mod structure;
mod triple;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::matrix::{self, TruthValue};
use crate::sequent::Sequent;
use crate::syntax::{fresh_free_variable, variable_order, Formula, Term};

pub use structure::Structure;
pub use triple::{triple_and, triple_circ, triple_imp, triple_not, triple_or, Component, Triple};

/// Free variables to domain elements (indices into the structure's domain).
pub type Assignment = BTreeMap<String, usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("not a partition: {0}")]
    NotAPartition(String),
    #[error("triples over bases of size {0} and {1}")]
    BaseMismatch(usize, usize),
    #[error("the domain is empty")]
    EmptyDomain,
    #[error("domain element `{0}` listed twice")]
    DuplicateElement(String),
    #[error("unknown domain element `{0}`")]
    UnknownElement(String),
    #[error("variable `{0}` is not assigned")]
    Unassigned(String),
    #[error("bound variable `{0}` outside its quantifier")]
    StrayBound(String),
    #[error("symbol `{0}` is not interpreted")]
    Uninterpreted(String),
    #[error("`{name}` has arity {expected}, used with {found} arguments")]
    Arity { name: String, expected: usize, found: usize },
    #[error("function `{0}` is not total")]
    PartialFunction(String),
}

/// `1` if some instance is `1` and none is `0`; `½` if all are `½`; else `0`.
pub fn forall_value(ys: &BTreeSet<TruthValue>) -> TruthValue {
    if ys.contains(&TruthValue::Zero) {
        TruthValue::Zero
    } else if ys.contains(&TruthValue::One) {
        TruthValue::One
    } else {
        TruthValue::Half
    }
}

/// `½` if all instances are `½`; `0` if all are `0`; else `1`.
pub fn exists_value(ys: &BTreeSet<TruthValue>) -> TruthValue {
    match (ys.len(), ys.first()) {
        (1, Some(&TruthValue::Half)) => TruthValue::Half,
        (1, Some(&TruthValue::Zero)) => TruthValue::Zero,
        _ => TruthValue::One,
    }
}

fn eval_term_env(t: &Term, st: &Structure, s: &Assignment, env: &[(String, usize)]) -> Result<usize, SemanticsError> {
    match t {
        Term::Free(a) => s.get(a).copied().ok_or_else(|| SemanticsError::Unassigned(a.clone())),
        Term::Bound(x) => env
            .iter()
            .rev()
            .find(|(y, _)| y == x)
            .map(|(_, m)| *m)
            .ok_or_else(|| SemanticsError::StrayBound(x.clone())),
        Term::Const(c) => st.constant(c),
        Term::App(f, args) => {
            let vals = args.iter().map(|a| eval_term_env(a, st, s, env)).collect::<Result<Vec<_>, _>>()?;
            st.apply(f, &vals)
        }
    }
}

pub fn eval_term(t: &Term, st: &Structure, s: &Assignment) -> Result<usize, SemanticsError> {
    eval_term_env(t, st, s, &[])
}

fn value_env(phi: &Formula, st: &Structure, s: &Assignment, env: &mut Vec<(String, usize)>) -> Result<TruthValue, SemanticsError> {
    Ok(match phi {
        Formula::Prop(p) => st.proposition(p)?,
        Formula::Pred(p, args) => {
            let vals = args.iter().map(|a| eval_term_env(a, st, s, env)).collect::<Result<Vec<_>, _>>()?;
            st.predicate_value(p, &vals)?
        }
        Formula::Not(a) => matrix::neg(value_env(a, st, s, env)?),
        Formula::Circ(a) => matrix::circ(value_env(a, st, s, env)?),
        Formula::And(a, b) => matrix::and(value_env(a, st, s, env)?, value_env(b, st, s, env)?),
        Formula::Or(a, b) => matrix::or(value_env(a, st, s, env)?, value_env(b, st, s, env)?),
        Formula::Imp(a, b) => matrix::imp(value_env(a, st, s, env)?, value_env(b, st, s, env)?),
        Formula::Forall(x, body) | Formula::Exists(x, body) => {
            let mut ys = BTreeSet::new();
            for m in 0..st.size() {
                env.push((x.clone(), m));
                let v = value_env(body, st, s, env);
                env.pop();
                ys.insert(v?);
            }
            if matches!(phi, Formula::Forall(..)) {
                forall_value(&ys)
            } else {
                exists_value(&ys)
            }
        }
    })
}

/// Value of `phi` at assignment `s`.
pub fn value(phi: &Formula, st: &Structure, s: &Assignment) -> Result<TruthValue, SemanticsError> {
    value_env(phi, st, s, &mut Vec::new())
}

pub fn satisfies(st: &Structure, s: &Assignment, phi: &Formula) -> Result<bool, SemanticsError> {
    Ok(value(phi, st, s)?.is_designated())
}

/// Every assignment of `vars` into a domain of `size` elements, first
/// variable most significant.
pub fn assignments(vars: &[String], size: usize) -> impl Iterator<Item = Assignment> + '_ {
    let count = size.pow(vars.len() as u32);
    (0..count).map(move |code| decode(vars, size, code))
}

fn decode(vars: &[String], size: usize, mut code: usize) -> Assignment {
    let mut out = Assignment::new();
    for v in vars.iter().rev() {
        out.insert(v.clone(), code % size);
        code /= size;
    }
    out
}

fn sorted_vars(set: BTreeSet<String>) -> Vec<String> {
    let mut v: Vec<String> = set.into_iter().collect();
    v.sort_by(|a, b| variable_order(a, b));
    v
}

/// A triple over the assignments of `vars`, indexed as in [`assignments`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Denotation {
    pub vars: Vec<String>,
    pub triple: Triple,
}

impl Denotation {
    pub fn at(&self, s: &Assignment, size: usize) -> Result<TruthValue, SemanticsError> {
        let mut code = 0;
        for v in &self.vars {
            let m = *s.get(v).ok_or_else(|| SemanticsError::Unassigned(v.clone()))?;
            code = code * size + m;
        }
        Ok(self.triple.value(code))
    }
}

fn table(phi: &Formula, st: &Structure, vars: &[String]) -> Result<Vec<TruthValue>, SemanticsError> {
    let n = st.size();
    let pointwise = |a: Vec<TruthValue>, b: Vec<TruthValue>, op: fn(TruthValue, TruthValue) -> TruthValue| {
        a.into_iter().zip(b).map(|(x, y)| op(x, y)).collect()
    };
    Ok(match phi {
        Formula::Prop(_) | Formula::Pred(..) => {
            assignments(vars, n).map(|s| value(phi, st, &s)).collect::<Result<_, _>>()?
        }
        Formula::Not(a) => table(a, st, vars)?.into_iter().map(matrix::neg).collect(),
        Formula::Circ(a) => table(a, st, vars)?.into_iter().map(matrix::circ).collect(),
        Formula::And(a, b) => pointwise(table(a, st, vars)?, table(b, st, vars)?, matrix::and),
        Formula::Or(a, b) => pointwise(table(a, st, vars)?, table(b, st, vars)?, matrix::or),
        Formula::Imp(a, b) => pointwise(table(a, st, vars)?, table(b, st, vars)?, matrix::imp),
        Formula::Forall(..) | Formula::Exists(..) => {
            let mut avoid: BTreeSet<String> = vars.iter().cloned().collect();
            avoid.extend(phi.free_variables());
            let a = fresh_free_variable(&avoid);
            let instance = phi.instantiate(&Term::Free(a.clone())).expect("free variable has no bound part");
            let mut inner_vars = vars.to_vec();
            inner_vars.push(a);
            let inner = table(&instance, st, &inner_vars)?;
            let fold = if matches!(phi, Formula::Forall(..)) { forall_value } else { exists_value };
            inner.chunks(n).map(|chunk| fold(&chunk.iter().copied().collect())).collect()
        }
    })
}

/// The triple of `phi` over the assignments of its free variables.
pub fn denote(phi: &Formula, st: &Structure) -> Result<Denotation, SemanticsError> {
    let vars = sorted_vars(phi.free_variables());
    let values = table(phi, st, &vars)?;
    Ok(Denotation { vars, triple: Triple::from_values(values) })
}

/// Satisfied at every assignment of its free variables.
pub fn valid_in(st: &Structure, phi: &Formula) -> Result<bool, SemanticsError> {
    let vars = sorted_vars(phi.free_variables());
    for s in assignments(&vars, st.size()) {
        if !satisfies(st, &s, phi)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn fo_sequent_satisfied(st: &Structure, s: &Assignment, seq: &Sequent) -> Result<bool, SemanticsError> {
    for a in &seq.ante {
        if !satisfies(st, s, a)? {
            return Ok(true);
        }
    }
    for b in &seq.succ {
        if satisfies(st, s, b)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// An assignment of the sequent's free variables that falsifies it.
pub fn fo_falsifying_assignment(st: &Structure, seq: &Sequent) -> Result<Option<Assignment>, SemanticsError> {
    let vars = sorted_vars(seq.free_variables());
    for s in assignments(&vars, st.size()) {
        if !fo_sequent_satisfied(st, &s, seq)? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

pub fn fo_sequent_valid_in(st: &Structure, seq: &Sequent) -> Result<bool, SemanticsError> {
    Ok(fo_falsifying_assignment(st, seq)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_formula, parse_sequent};

    fn unary(values: [TruthValue; 2]) -> Structure {
        Structure::new(vec!["m0".into(), "m1".into()])
            .unwrap()
            .with_predicate("P", 1, Triple::from_values(values.to_vec()))
            .unwrap()
    }

    #[test]
    fn quantifier_values() {
        use TruthValue::*;
        let set = |v: &[TruthValue]| v.iter().copied().collect::<BTreeSet<_>>();
        assert_eq!(forall_value(&set(&[One, Half])), One);
        assert_eq!(forall_value(&set(&[Half])), Half);
        assert_eq!(forall_value(&set(&[One, Zero])), Zero);
        assert_eq!(exists_value(&set(&[Zero, Half])), One);
        assert_eq!(exists_value(&set(&[Zero])), Zero);
        assert_eq!(exists_value(&set(&[Half])), Half);
    }

    #[test]
    fn denote_matches_pointwise() {
        let st = unary([TruthValue::One, TruthValue::Half]);
        for src in ["forall x. P(x)", "exists x. ~P(x) & P(a1)", "o forall x. P(x) -> P(a2)"] {
            let phi = parse_formula(src).unwrap();
            let d = denote(&phi, &st).unwrap();
            for s in assignments(&d.vars, st.size()) {
                assert_eq!(d.at(&s, st.size()).unwrap(), value(&phi, &st, &s).unwrap(), "{src}");
            }
        }
    }

    #[test]
    fn existential_does_not_imply_universal() {
        let st = unary([TruthValue::One, TruthValue::Zero]);
        let seq = parse_sequent("exists x. P(x) |- forall x. P(x)").unwrap();
        assert!(!fo_sequent_valid_in(&st, &seq).unwrap());
    }

    #[test]
    fn triple_components_partition() {
        let t = Triple::from_values(vec![TruthValue::One, TruthValue::Zero, TruthValue::Half]);
        assert_eq!(Triple::from_components(3, &t.plus(), &t.minus(), &t.circ()).unwrap(), t);
        let overlap: Component = [0, 1].into_iter().collect();
        assert!(Triple::from_components(3, &overlap, &overlap, &Component::new()).is_err());
    }
}
