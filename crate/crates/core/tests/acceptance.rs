//! Acceptance suite: one PASS/FAIL line per criterion, each with its time limit.
//!
//! Runs as a plain binary (`harness = false`) so the report is always shown.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ciore::axioms::{quantifier_axioms, PROPOSITIONAL_SCHEMATA};
use ciore::fo_prover::{decide_fo, fo_regression_suite, Budget, FoCase, FoVerdict};
use ciore::fo_semantics::{
    fo_sequent_satisfied, fo_sequent_valid_in, triple_and, triple_circ, triple_imp, triple_not, triple_or, valid_in, value,
    Assignment, Structure, Triple,
};
use ciore::matrix::{self, eval, matrix_valid, sequent_satisfied, TruthValue, DEFAULT_ATOM_CAP};
use ciore::prop_prover::{contradiction_scan, decide, eliminate_cut, theorem_suite, Verdict};
use ciore::random::{atom_names, random_fo_formula, random_formula, random_sequent, FoVocabulary};
use ciore::sequent::{
    check_derivation, check_proof, check_rule_instance, check_subformula_property, expand_derived_rule, schema, Calculus, Proof,
    RuleId, Side,
};
use ciore::syntax::{fresh_free_variable, Quantifier};
use ciore::{parse_sequent, Formula, Sequent, Term};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use TruthValue::{Half, One, Zero};

struct Outcome {
    pass: bool,
    detail: String,
    /// The stated scope cannot be run at all; only a reduced scope was checked.
    infeasible: bool,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Outcome {
        Outcome { pass, detail: detail.into(), infeasible: false }
    }
}

fn fail_on<T>(errors: &[T], ok_detail: String) -> Outcome
where
    T: std::fmt::Display,
{
    match errors.first() {
        None => Outcome::new(true, ok_detail),
        Some(e) => Outcome::new(false, format!("{} failure(s), first: {e}", errors.len())),
    }
}

// Truth tables typed in from the published matrix, rows and columns 1, 1/2, 0.
const ORDER: [TruthValue; 3] = [One, Half, Zero];
const AND: [[TruthValue; 3]; 3] = [[One, One, Zero], [One, Half, Zero], [Zero, Zero, Zero]];
const OR: [[TruthValue; 3]; 3] = [[One, One, One], [One, Half, One], [One, One, Zero]];
const IMP: [[TruthValue; 3]; 3] = [[One, One, Zero], [One, Half, Zero], [One, One, One]];
const NEG: [TruthValue; 3] = [Zero, Half, One];
const CIRC: [TruthValue; 3] = [One, Zero, One];

fn truth_tables() -> Outcome {
    let (p, q) = (Formula::prop("p"), Formula::prop("q"));
    let mut errors = Vec::new();
    let mut cells = 0;
    for (i, &a) in ORDER.iter().enumerate() {
        let v: matrix::Valuation = [("p".to_string(), a)].into_iter().collect();
        for (name, f, want) in [("~", Formula::not(p.clone()), NEG[i]), ("o", Formula::circ(p.clone()), CIRC[i])] {
            cells += 1;
            let got = eval(&f, &v).unwrap();
            if got != want {
                errors.push(format!("{name}{} = {} (want {})", a.as_str(), got.as_str(), want.as_str()));
            }
        }
        for (j, &b) in ORDER.iter().enumerate() {
            let v: matrix::Valuation = [("p".to_string(), a), ("q".to_string(), b)].into_iter().collect();
            for (name, f, table) in [
                ("&", Formula::and(p.clone(), q.clone()), AND),
                ("|", Formula::or(p.clone(), q.clone()), OR),
                ("->", Formula::imp(p.clone(), q.clone()), IMP),
            ] {
                cells += 1;
                let got = eval(&f, &v).unwrap();
                if got != table[i][j] {
                    errors.push(format!("{} {name} {} = {}", a.as_str(), b.as_str(), got.as_str()));
                }
            }
        }
    }
    fail_on(&errors, format!("{cells}/33 cells match"))
}

fn hilbert_axioms() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2);
    let mut errors = Vec::new();
    let mut n = 0;
    for (name, schema) in PROPOSITIONAL_SCHEMATA {
        for _ in 0..100 {
            let k = rng.random_range(1..=4);
            let atoms = atom_names(k);
            let [a, b, c] = [0; 3].map(|_| random_formula(&mut rng, &atoms, 3));
            let s = Sequent::theorem(schema(&a, &b, &c));
            n += 1;
            if !matrix_valid(&s, DEFAULT_ATOM_CAP).unwrap() {
                errors.push(format!("{name}: {s}"));
            }
        }
    }
    fail_on(&errors, format!("16 schemata x 100 instances, {n} valid"))
}

/// All formulas of depth at most `depth` over `atoms`.
fn formulas_up_to(atoms: &[Formula], depth: usize) -> Vec<Formula> {
    let mut level: Vec<Formula> = atoms.to_vec();
    for _ in 0..depth {
        let mut next = atoms.to_vec();
        for f in &level {
            next.push(Formula::not(f.clone()));
            next.push(Formula::circ(f.clone()));
        }
        for f in &level {
            for g in &level {
                next.push(Formula::and(f.clone(), g.clone()));
                next.push(Formula::or(f.clone(), g.clone()));
                next.push(Formula::imp(f.clone(), g.clone()));
            }
        }
        level = next;
    }
    level
}

/// Subsets of size at most 2.
fn small_sets(fs: &[Formula]) -> Vec<Vec<Formula>> {
    let mut out = vec![vec![]];
    for (i, f) in fs.iter().enumerate() {
        out.push(vec![f.clone()]);
        for g in &fs[i + 1..] {
            out.push(vec![f.clone(), g.clone()]);
        }
    }
    out
}

/// `None` when decide and the oracle agree on `s`.
fn disagreement(s: &Sequent) -> Option<String> {
    let valid = matrix_valid(s, DEFAULT_ATOM_CAP).unwrap();
    match decide(s, DEFAULT_ATOM_CAP).unwrap() {
        Verdict::Proved(_) if valid => None,
        Verdict::Refuted(v) if !valid && !sequent_satisfied(s, &v).unwrap() => None,
        Verdict::Proved(_) => Some(format!("proved but invalid: {s}")),
        Verdict::Refuted(v) => Some(format!("refuted {s} with {v:?} (valid: {valid})")),
    }
}

fn oracle_equivalence() -> Outcome {
    let atoms = [Formula::prop("p"), Formula::prop("q")];
    let shallow = formulas_up_to(&atoms, 1);
    let deep = formulas_up_to(&atoms, 2);
    assert_eq!((shallow.len(), deep.len()), (18, 1010));

    let sides = small_sets(&shallow);
    let a1: Vec<Sequent> = sides.iter().flat_map(|l| sides.iter().map(|r| Sequent::new(l.clone(), r.clone()))).collect();

    let singles: Vec<Vec<Formula>> = small_sets(&deep);
    let mut a2: Vec<Sequent> = Vec::new();
    for set in &singles {
        a2.push(Sequent::new(set.clone(), []));
        if !set.is_empty() {
            a2.push(Sequent::new([], set.clone()));
        }
    }
    for f in &deep {
        for g in &deep {
            a2.push(Sequent::new([f.clone()], [g.clone()]));
        }
    }

    let mut rng = StdRng::seed_from_u64(3);
    let b: Vec<Sequent> = (0..1000)
        .map(|_| {
            let k = rng.random_range(1..=4);
            random_sequent(&mut rng, &atom_names(k), 4, 3)
        })
        .collect();

    let total = a1.len() + a2.len() + b.len();
    let errors: Vec<String> = a1.par_iter().chain(a2.par_iter()).chain(b.par_iter()).filter_map(disagreement).collect();
    let per_side = small_sets(&deep).len() as f64;
    let literal = per_side * per_side;
    let mut out = fail_on(
        &errors,
        format!(
            "reduced scope agrees on {total} sequents ({} with <=2 per side at depth <=1, {} with <=2 in total at depth <=2, {} random); \
             literal scope is {literal:.2e} sequents and is not enumerable",
            a1.len(),
            a2.len(),
            b.len()
        ),
    );
    out.infeasible = true;
    out
}

fn theorem_regression() -> Outcome {
    let mut errors = Vec::new();
    let (p, q) = (Formula::prop("p"), Formula::prop("q"));
    let compound = (Formula::and(p.clone(), Formula::not(q.clone())), Formula::circ(Formula::imp(q.clone(), p.clone())));
    let mut n = 0;
    for (a, b) in [(p, q), compound] {
        for (name, s) in theorem_suite(&a, &b) {
            n += 1;
            match decide(&s, DEFAULT_ATOM_CAP).unwrap() {
                Verdict::Proved(proof) => {
                    if let Err(e) = check_proof(&proof, Calculus::GCiorePrime, false) {
                        errors.push(format!("{name}: {e}"));
                    } else if !check_subformula_property(&proof) {
                        errors.push(format!("{name}: leaves the generalized subformulas"));
                    }
                }
                Verdict::Refuted(v) => errors.push(format!("{name} refuted by {v:?}")),
            }
        }
    }
    fail_on(&errors, format!("{n} theorem instances proved cut-free and checked"))
}

fn cut_elimination() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let mut errors = Vec::new();
    let mut done = 0;
    while done < 100 {
        let atoms = atom_names(rng.random_range(1..=3));
        let s = random_sequent(&mut rng, &atoms, 3, 3);
        let Verdict::Proved(proof) = decide(&s, DEFAULT_ATOM_CAP).unwrap() else { continue };
        done += 1;
        let cut = random_formula(&mut rng, &atoms, 3);
        let left = Proof::weaken_to(proof.clone(), &s.extended(&[], std::slice::from_ref(&cut)));
        let right = Proof::weaken_to(proof, &s.extended(std::slice::from_ref(&cut), &[]));
        let with_cut = Proof::step(s.clone(), RuleId::Cut, cut, vec![left, right]);
        if let Err(e) = check_proof(&with_cut, Calculus::GCiorePrime, true) {
            errors.push(format!("cut proof rejected: {e}"));
            continue;
        }
        match eliminate_cut(&with_cut, DEFAULT_ATOM_CAP) {
            Ok(p) if p.sequent == s && !p.uses(RuleId::Cut) && check_proof(&p, Calculus::GCiorePrime, false).is_ok() => {}
            Ok(_) => errors.push(format!("bad cut-free proof of {s}")),
            Err(e) => errors.push(format!("{s}: {e}")),
        }
    }
    fail_on(&errors, format!("{done} cut proofs accepted and reduced to checked cut-free proofs"))
}

fn no_contradiction() -> Outcome {
    let mut rng = StdRng::seed_from_u64(6);
    let mut errors = Vec::new();
    for _ in 0..200 {
        let atoms = atom_names(rng.random_range(1..=4));
        let phi = random_formula(&mut rng, &atoms, 4);
        if contradiction_scan(&phi, DEFAULT_ATOM_CAP).unwrap().is_proved() {
            errors.push(format!("proved |- {phi} & ~{phi}"));
        }
    }
    if decide(&Sequent::new([], []), DEFAULT_ATOM_CAP).unwrap().is_proved() {
        errors.push("proved the empty sequent".into());
    }
    fail_on(&errors, "200 contradictions and the empty sequent refuted".into())
}

type Set = BTreeSet<usize>;

/// Component sets of the published characterization.
fn components(op: &str, r: &Triple, u: &Triple) -> (Set, Set, Set) {
    let (rp, rm, rc) = (r.plus(), r.minus(), r.circ());
    let (up, um, uc) = (u.plus(), u.minus(), u.circ());
    let i = |a: &Set, b: &Set| a.intersection(b).copied().collect::<Set>();
    let un = |a: &Set, b: &Set| a.union(b).copied().collect::<Set>();
    match op {
        "and" => (un(&un(&i(&rp, &up), &i(&rp, &uc)), &i(&rc, &up)), un(&rm, &um), i(&rc, &uc)),
        "or" => (un(&un(&rp, &up), &un(&i(&rc, &um), &i(&rm, &uc))), i(&rm, &um), i(&rc, &uc)),
        "imp" => (un(&un(&rm, &up), &i(&rp, &uc)), i(&un(&rp, &rc), &um), i(&rc, &uc)),
        "not" => (rm, rp, rc),
        "circ" => (un(&rp, &rm), rc, Set::new()),
        _ => unreachable!(),
    }
}

fn triple_coherence() -> Outcome {
    let mut errors = Vec::new();
    let mut pairs = 0;
    for n in 1..=3 {
        let all: Vec<Triple> = Triple::all(n).collect();
        for r in &all {
            for u in &all {
                pairs += 1;
                let ops: [(&str, Triple, fn(TruthValue, TruthValue) -> TruthValue); 5] = [
                    ("and", triple_and(r, u).unwrap(), matrix::and),
                    ("or", triple_or(r, u).unwrap(), matrix::or),
                    ("imp", triple_imp(r, u).unwrap(), matrix::imp),
                    ("not", triple_not(r), |a, _| matrix::neg(a)),
                    ("circ", triple_circ(r), |a, _| matrix::circ(a)),
                ];
                for (name, got, table) in ops {
                    let pointwise = Triple::from_values((0..n).map(|x| table(r.value(x), u.value(x))).collect());
                    let (p, m, c) = components(name, r, u);
                    let by_sets = Triple::from_components(n, &p, &m, &c);
                    if got != pointwise || by_sets.as_ref() != Ok(&pointwise) {
                        errors.push(format!("{name} on {:?}, {:?}", r.values(), u.values()));
                    }
                }
            }
        }
    }
    fail_on(&errors, format!("{pairs} operand pairs over |X| in 1..=3, 5 operations each"))
}

/// Sets of assignments as bit masks, assignments indexed in mixed radix over
/// `vars` with the first variable most significant.
#[derive(Clone, Copy)]
struct Comp {
    plus: u64,
    minus: u64,
    circ: u64,
}

fn comp_oracle(phi: &Formula, st: &Structure, vars: &[String]) -> Comp {
    let n = st.size();
    let len = n.pow(vars.len() as u32);
    assert!(len <= 64);
    let full = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
    let decode = |mut i: usize| {
        let mut s = vec![0; vars.len()];
        for slot in s.iter_mut().rev() {
            *slot = i % n;
            i /= n;
        }
        s
    };
    match phi {
        Formula::Pred(p, args) => {
            let mut c = Comp { plus: 0, minus: 0, circ: 0 };
            for i in 0..len {
                let s = decode(i);
                let tuple: Vec<usize> = args
                    .iter()
                    .map(|t| match t {
                        Term::Free(a) => s[vars.iter().position(|v| v == a).expect("free variable listed")],
                        _ => unreachable!("only variables occur"),
                    })
                    .collect();
                let bit = 1u64 << i;
                match st.predicate_value(p, &tuple).unwrap() {
                    One => c.plus |= bit,
                    Zero => c.minus |= bit,
                    Half => c.circ |= bit,
                }
            }
            c
        }
        Formula::Not(a) => {
            let a = comp_oracle(a, st, vars);
            Comp { plus: a.minus, minus: a.plus, circ: a.circ }
        }
        Formula::Circ(a) => {
            let a = comp_oracle(a, st, vars);
            Comp { plus: a.plus | a.minus, minus: a.circ, circ: 0 }
        }
        Formula::And(a, b) => {
            let (a, b) = (comp_oracle(a, st, vars), comp_oracle(b, st, vars));
            Comp {
                plus: (a.plus & b.plus) | (a.plus & b.circ) | (a.circ & b.plus),
                minus: a.minus | b.minus,
                circ: a.circ & b.circ,
            }
        }
        Formula::Or(a, b) => {
            let (a, b) = (comp_oracle(a, st, vars), comp_oracle(b, st, vars));
            Comp {
                plus: a.plus | b.plus | (a.circ & b.minus) | (a.minus & b.circ),
                minus: a.minus & b.minus,
                circ: a.circ & b.circ,
            }
        }
        Formula::Imp(a, b) => {
            let (a, b) = (comp_oracle(a, st, vars), comp_oracle(b, st, vars));
            Comp { plus: a.minus | b.plus | (a.plus & b.circ), minus: (a.plus | a.circ) & b.minus, circ: a.circ & b.circ }
        }
        Formula::Forall(..) | Formula::Exists(..) => {
            let fresh = fresh_free_variable(vars.iter().chain(phi.free_variables().iter()).collect::<Vec<_>>());
            let inner_vars: Vec<String> = vars.iter().cloned().chain([fresh.clone()]).collect();
            let body = comp_oracle(&phi.instantiate(&Term::free(fresh)).unwrap(), st, &inner_vars);
            let hat = |y: u64, every: bool| {
                let mut out = 0u64;
                for i in 0..len {
                    let hits = (0..n).filter(|m| y >> (i * n + m) & 1 == 1).count();
                    if (every && hits == n) || (!every && hits > 0) {
                        out |= 1 << i;
                    }
                }
                out
            };
            if matches!(phi, Formula::Forall(..)) {
                Comp { plus: hat(body.plus, false) & !hat(body.minus, false), minus: hat(body.minus, false), circ: hat(body.circ, true) }
            } else {
                let (minus, circ) = (hat(body.minus, true), hat(body.circ, true));
                Comp { plus: full & !(minus | circ), minus, circ }
            }
        }
        Formula::Prop(_) => unreachable!("first-order input"),
    }
}

/// Formulas of depth at most `depth` from `P(a1)`; quantifiers bind `a1`.
fn quantified_formulas(depth: usize) -> Vec<Formula> {
    let atom = Formula::pred("P", vec![Term::free("a1")]);
    let bound = |f: &Formula| (1..).map(|i| format!("x{i}")).find(|x| !f.mentions_bound(x)).unwrap();
    let mut level = vec![atom.clone()];
    for _ in 0..depth {
        let mut next = vec![atom.clone()];
        for f in &level {
            next.push(Formula::not(f.clone()));
            next.push(Formula::circ(f.clone()));
            next.push(f.bind("a1", &bound(f), Quantifier::Forall).unwrap());
            next.push(f.bind("a1", &bound(f), Quantifier::Exists).unwrap());
        }
        for f in &level {
            for g in &level {
                next.push(Formula::and(f.clone(), g.clone()));
                next.push(Formula::or(f.clone(), g.clone()));
                next.push(Formula::imp(f.clone(), g.clone()));
            }
        }
        level = next;
    }
    level
}

fn unary_structures(size: usize) -> Vec<Structure> {
    Triple::all(size).map(|t| Structure::with_size(size).unwrap().with_predicate("P", 1, t).unwrap()).collect()
}

fn denotation_mismatch(phi: &Formula, st: &Structure, vars: &[String]) -> Option<String> {
    let c = comp_oracle(phi, st, vars);
    let len = st.size().pow(vars.len() as u32);
    if c.plus & c.minus != 0 || c.plus & c.circ != 0 || c.minus & c.circ != 0 || (c.plus | c.minus | c.circ).count_ones() as usize != len {
        return Some(format!("components of {phi} do not partition"));
    }
    for (i, s) in ciore::fo_semantics::assignments(vars, st.size()).enumerate() {
        let want = if c.plus >> i & 1 == 1 {
            One
        } else if c.minus >> i & 1 == 1 {
            Zero
        } else {
            Half
        };
        if value(phi, st, &s).unwrap() != want {
            return Some(format!("{phi} at {s:?}"));
        }
    }
    None
}

fn denotation_equivalence() -> Outcome {
    let formulas = quantified_formulas(3);
    let structures = unary_structures(2);
    let one: Vec<String> = vec!["a1".into()];
    let mut errors: Vec<String> = formulas
        .par_iter()
        .flat_map_iter(|f| structures.iter().filter_map(|st| denotation_mismatch(f, st, &one)))
        .collect();
    let two: Vec<String> = vec!["a1".into(), "a2".into()];
    let voc = FoVocabulary { predicates: vec![("P".into(), 1)], variables: two.clone() };
    let mut rng = StdRng::seed_from_u64(8);
    let sample: Vec<Formula> = (0..3000).map(|_| random_fo_formula(&mut rng, &voc, 3)).collect();
    errors.extend(sample.iter().flat_map(|f| structures.iter().filter_map(|st| denotation_mismatch(f, st, &two))));
    fail_on(
        &errors,
        format!("{} formulas over P(a1) plus {} random over P(a1), P(a2), each in all 9 structures", formulas.len(), sample.len()),
    )
}

fn quantifier_axiom_validity() -> Outcome {
    let structures: Vec<Structure> = (1..=2).flat_map(unary_structures).collect();
    let bodies = quantified_formulas(2);
    let mut errors = Vec::new();
    let mut checked = 0;
    for phi in &bodies {
        let x = (1..).map(|i| format!("x{i}")).find(|x| !phi.mentions_bound(x)).unwrap();
        for t in ["a1", "a2"] {
            for (name, ax) in quantifier_axioms(phi, "a1", &x, &Term::free(t)).unwrap() {
                for st in &structures {
                    checked += 1;
                    if !valid_in(st, &ax).unwrap() {
                        errors.push(format!("{name}: {ax} in {st:?}"));
                    }
                }
            }
        }
    }
    let lifted = quantified_formulas(1);
    for (name, schema) in PROPOSITIONAL_SCHEMATA {
        for a in &lifted {
            for b in &lifted {
                for c in &lifted {
                    let ax = schema(a, b, c);
                    for st in &structures {
                        checked += 1;
                        if !valid_in(st, &ax).unwrap() {
                            errors.push(format!("{name}: {ax}"));
                        }
                    }
                }
            }
        }
    }
    fail_on(&errors, format!("{checked} axiom instances valid across all 12 structures with |A| <= 2"))
}

fn random_structure(rng: &mut StdRng) -> Structure {
    let n = rng.random_range(1..=3);
    let mut triple = |len: usize| Triple::from_values((0..len).map(|_| TruthValue::ALL[rng.random_range(0..3)]).collect());
    let (p, q, r) = (triple(n), triple(n), triple(n * n));
    Structure::with_size(n)
        .unwrap()
        .with_predicate("P", 1, p)
        .unwrap()
        .with_predicate("Q", 1, q)
        .unwrap()
        .with_predicate("R", 2, r)
        .unwrap()
}

/// A formula whose outermost shape fits `rule`.
fn principal_for(rule: RuleId, rng: &mut StdRng, voc: &FoVocabulary) -> Formula {
    use RuleId::*;
    let mut sub = || random_fo_formula(rng, voc, 2);
    let (a, b) = (sub(), sub());
    let body = Formula::and(Formula::pred("P", vec![Term::free("a1")]), sub());
    let x = (1..).map(|i| format!("x{i}")).find(|x| !body.mentions_bound(x)).unwrap();
    let all = || body.bind("a1", &x, Quantifier::Forall).unwrap();
    let some = || body.bind("a1", &x, Quantifier::Exists).unwrap();
    let n = Formula::not;
    match rule {
        OrL | OrR => Formula::or(a, b),
        AndL | AndR => Formula::and(a, b),
        ImpL | ImpR => Formula::imp(a, b),
        CircL | CircR => Formula::circ(a),
        NegR | NegR2 => n(a),
        NegNegL | NegNegR => n(n(a)),
        NegCircL => n(Formula::circ(a)),
        NegOrL | NegOrR | NegOrR2 => n(Formula::or(a, b)),
        NegAndL | NegAndR | NegAndR2 => n(Formula::and(a, b)),
        NegImpL | NegImpR | NegImpR2 => n(Formula::imp(a, b)),
        ForallL | ForallR => all(),
        ExistsL | ExistsR => some(),
        CircForallL | CircForallR => Formula::circ(all()),
        CircExistsL | CircExistsR => Formula::circ(some()),
        other => unreachable!("{other:?} is structural"),
    }
}

fn rule_soundness() -> Outcome {
    let voc = FoVocabulary::default();
    let mut rng = StdRng::seed_from_u64(10);
    let mut errors = Vec::new();
    let (mut instances, mut live, mut rules, mut loose_violations) = (0, 0, 0, 0);
    for rule in RuleId::ALL.into_iter().filter(|r| !r.is_structural() && Calculus::GQCiore.allows(*r)) {
        rules += 1;
        for _ in 0..200 {
            let principal = principal_for(rule, &mut rng, &voc);
            let mut ctx = || (0..rng.random_range(0..=2)).map(|_| random_fo_formula(&mut rng, &voc, 2)).collect::<Vec<_>>();
            let (gamma, delta) = (ctx(), ctx());
            let context = Sequent::new(gamma, delta);
            let probe = schema(rule, &principal, Some(&Term::free("a1"))).expect("shape fits");
            let conclusion = match probe.side {
                Side::Left => context.extended(std::slice::from_ref(&principal), &[]),
                Side::Right => context.extended(&[], std::slice::from_ref(&principal)),
            };
            let term = if rule.needs_eigenvariable() {
                Term::free(fresh_free_variable(&conclusion.free_variables()))
            } else {
                Term::free(voc.variables[rng.random_range(0..voc.variables.len())].clone())
            };
            let sch = schema(rule, &principal, Some(&term)).expect("shape fits");
            let ctx = conclusion.without(sch.side, &principal);
            let premises: Vec<Sequent> = sch.premises.iter().map(|(l, r)| ctx.extended(l, r)).collect();
            let term_arg = rule.is_quantifier().then_some(&term);
            if let Err(e) = check_rule_instance(rule, &conclusion, &premises, Some(&principal), term_arg) {
                errors.push(format!("{rule:?} instance rejected: {e}"));
                continue;
            }
            // Control: the same left rule with a variable of the conclusion.
            let loose = (rule == RuleId::CircForallL).then(|| {
                let sch = schema(rule, &principal, Some(&Term::free("a1"))).expect("shape fits");
                sch.premises.iter().map(|(l, r)| ctx.extended(l, r)).collect::<Vec<_>>()
            });
            for _ in 0..4 {
                let st = random_structure(&mut rng);
                instances += 1;
                if premises.iter().all(|p| fo_sequent_valid_in(&st, p).unwrap()) {
                    live += 1;
                    if !fo_sequent_valid_in(&st, &conclusion).unwrap() {
                        errors.push(format!("{rule:?}: {premises:?} valid but {conclusion} is not in {st:?}"));
                    }
                }
                if let Some(loose) = &loose {
                    if loose.iter().all(|p| fo_sequent_valid_in(&st, p).unwrap()) && !fo_sequent_valid_in(&st, &conclusion).unwrap() {
                        loose_violations += 1;
                    }
                }
            }
        }
    }
    fail_on(
        &errors,
        format!(
            "{rules} rules x 200 instances x 4 structures = {instances} checks, {live} with all premises valid; \
             control: non-fresh (o forall =>) breaks {loose_violations} times"
        ),
    )
}

fn fo_regression() -> Outcome {
    let mut errors = Vec::new();
    let (mut proved, mut expanded) = (0, 0);
    for case in fo_regression_suite() {
        match case {
            FoCase::Provable { name, sequent } => match decide_fo(&sequent, Budget::default()) {
                Ok(FoVerdict::Proved(p)) => match check_proof(&p, Calculus::GQCiore, false) {
                    Ok(()) if !p.uses(RuleId::Cut) => proved += 1,
                    Ok(()) => errors.push(format!("{name}: proof uses cut")),
                    Err(e) => errors.push(format!("{name}: {e}")),
                },
                other => errors.push(format!("{name}: {other:?}")),
            },
            FoCase::Derived { name, rule, conclusion, premises } => match expand_derived_rule(rule, &conclusion, &premises) {
                Ok(p) => match check_derivation(&p, Calculus::GQCiore, true, &premises) {
                    Ok(()) => expanded += 1,
                    Err(e) => errors.push(format!("{name}: {e}")),
                },
                Err(e) => errors.push(format!("{name}: {e}")),
            },
        }
    }
    let mut out = fail_on(&errors, format!("{proved} sequents proved cut-free, {expanded} derived rules expanded and checked"));
    out.pass &= proved == 4 && expanded == 2;
    out
}

fn fo_refutation() -> Outcome {
    let mut errors = Vec::new();
    for text in ["exists x. P(x) |- forall x. P(x)", "|- (forall x. P(x) | Q(x)) -> (forall x. P(x)) | (forall x. Q(x))"] {
        let s = parse_sequent(text).unwrap();
        match decide_fo(&s, Budget::default()).unwrap() {
            FoVerdict::Refuted { structure, assignment } => {
                let asg: &Assignment = &assignment;
                if fo_sequent_satisfied(&structure, asg, &s).unwrap() {
                    errors.push(format!("{text}: reported pair satisfies the sequent"));
                }
            }
            other => errors.push(format!("{text}: {other:?}")),
        }
    }
    fail_on(&errors, "2 sequents refuted, countermodels verified".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 12] = [
        ("truth-table conformance", 1, truth_tables),
        ("hilbert axiom validity", 10, hilbert_axioms),
        ("oracle equivalence", 120, oracle_equivalence),
        ("theorem regression", 10, theorem_regression),
        ("cut elimination", 60, cut_elimination),
        ("no contradiction", 30, no_contradiction),
        ("triple-algebra coherence", 30, triple_coherence),
        ("denotation equivalence", 60, denotation_equivalence),
        ("quantifier axiom validity", 30, quantifier_axiom_validity),
        ("rule soundness", 120, rule_soundness),
        ("first-order regression", 60, fo_regression),
        ("first-order refutation", 60, fo_refutation),
    ];
    let mut unexpected = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs(*limit);
        let pass = out.pass && in_time && !out.infeasible;
        println!(
            "[{}] {:>2} {name}: {} ({:.2}s, limit {limit}s)",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            out.detail,
            elapsed.as_secs_f64()
        );
        // An infeasible criterion still fails the run if its reduced scope fails.
        if !(pass || (out.infeasible && out.pass && in_time)) {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criterion/criteria failed");
        ExitCode::FAILURE
    }
}
