//! Seeded random formulas and sequents for property tests and self-tests.

use rand::Rng;

use crate::sequent::Sequent;
use crate::syntax::{Formula, Quantifier, Term};

/// Atom names `p, q, r, s, t, u, …`.
pub fn atom_names(n: usize) -> Vec<String> {
    const BASE: [&str; 6] = ["p", "q", "r", "s", "t", "u"];
    (0..n).map(|i| if i < BASE.len() { BASE[i].to_string() } else { format!("p{i}") }).collect()
}

/// A propositional formula of depth at most `depth` over `atoms`.
pub fn random_formula(rng: &mut impl Rng, atoms: &[String], depth: usize) -> Formula {
    if depth == 0 || rng.random_bool(0.25) {
        return Formula::Prop(atoms[rng.random_range(0..atoms.len())].clone());
    }
    let d = depth - 1;
    match rng.random_range(0..5) {
        0 => Formula::not(random_formula(rng, atoms, d)),
        1 => Formula::circ(random_formula(rng, atoms, d)),
        2 => Formula::and(random_formula(rng, atoms, d), random_formula(rng, atoms, d)),
        3 => Formula::or(random_formula(rng, atoms, d), random_formula(rng, atoms, d)),
        _ => Formula::imp(random_formula(rng, atoms, d), random_formula(rng, atoms, d)),
    }
}

/// Up to `width` formulas per side.
pub fn random_sequent(rng: &mut impl Rng, atoms: &[String], depth: usize, width: usize) -> Sequent {
    let n = rng.random_range(0..=width);
    let ante: Vec<_> = (0..n).map(|_| random_formula(rng, atoms, depth)).collect();
    let n = rng.random_range(0..=width);
    let succ: Vec<_> = (0..n).map(|_| random_formula(rng, atoms, depth)).collect();
    Sequent::new(ante, succ)
}

/// Vocabulary for random first-order formulas.
#[derive(Clone, Debug)]
pub struct FoVocabulary {
    /// Predicate names with arities.
    pub predicates: Vec<(String, usize)>,
    pub variables: Vec<String>,
}

impl Default for FoVocabulary {
    fn default() -> Self {
        FoVocabulary {
            predicates: vec![("P".into(), 1), ("Q".into(), 1), ("R".into(), 2)],
            variables: vec!["a1".into(), "a2".into()],
        }
    }
}

/// Least `x{i}` not used as a bound variable in `f`.
fn fresh_bound(f: &Formula) -> String {
    (1..).map(|i| format!("x{i}")).find(|x| !f.mentions_bound(x)).expect("unbounded range")
}

/// A first-order formula of depth at most `depth`; quantifiers bind one of
/// the vocabulary's free variables.
pub fn random_fo_formula(rng: &mut impl Rng, voc: &FoVocabulary, depth: usize) -> Formula {
    if depth == 0 || rng.random_bool(0.25) {
        let (p, n) = &voc.predicates[rng.random_range(0..voc.predicates.len())];
        let args = (0..*n).map(|_| Term::Free(voc.variables[rng.random_range(0..voc.variables.len())].clone())).collect();
        return Formula::Pred(p.clone(), args);
    }
    let d = depth - 1;
    match rng.random_range(0..7) {
        0 => Formula::not(random_fo_formula(rng, voc, d)),
        1 => Formula::circ(random_fo_formula(rng, voc, d)),
        2 => Formula::and(random_fo_formula(rng, voc, d), random_fo_formula(rng, voc, d)),
        3 => Formula::or(random_fo_formula(rng, voc, d), random_fo_formula(rng, voc, d)),
        4 => Formula::imp(random_fo_formula(rng, voc, d), random_fo_formula(rng, voc, d)),
        k => {
            let body = random_fo_formula(rng, voc, d);
            let a = &voc.variables[rng.random_range(0..voc.variables.len())];
            let q = if k == 5 { Quantifier::Forall } else { Quantifier::Exists };
            body.bind(a, &fresh_bound(&body), q).expect("fresh bound name")
        }
    }
}
