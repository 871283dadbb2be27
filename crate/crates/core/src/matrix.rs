//! The three-valued matrix: values `0 < ½ < 1`, designated values `{½, 1}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sequent::Sequent;
use crate::syntax::Formula;

pub const DEFAULT_ATOM_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TruthValue {
    Zero,
    Half,
    One,
}

pub use TruthValue::{Half, One, Zero};

impl TruthValue {
    pub const ALL: [TruthValue; 3] = [Zero, Half, One];

    pub fn is_designated(self) -> bool {
        self != Zero
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Zero => "0",
            Half => "1/2",
            One => "1",
        }
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TruthValue {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "0" => Ok(Zero),
            "1/2" | "½" | "0.5" => Ok(Half),
            "1" => Ok(One),
            other => Err(format!("not a truth value: {other}")),
        }
    }
}

pub fn and(a: TruthValue, b: TruthValue) -> TruthValue {
    match (a, b) {
        (Zero, _) | (_, Zero) => Zero,
        (Half, Half) => Half,
        _ => One,
    }
}

pub fn or(a: TruthValue, b: TruthValue) -> TruthValue {
    match (a, b) {
        (Zero, Zero) => Zero,
        (Half, Half) => Half,
        _ => One,
    }
}

pub fn imp(a: TruthValue, b: TruthValue) -> TruthValue {
    match (a, b) {
        (Zero, _) => One,
        (_, Zero) => Zero,
        (Half, Half) => Half,
        _ => One,
    }
}

pub fn neg(a: TruthValue) -> TruthValue {
    match a {
        Zero => One,
        Half => Half,
        One => Zero,
    }
}

pub fn circ(a: TruthValue) -> TruthValue {
    match a {
        Half => Zero,
        _ => One,
    }
}

pub type Valuation = BTreeMap<String, TruthValue>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("atom `{0}` has no value")]
    Unassigned(String),
    #[error("`{0}` is not propositional")]
    NotPropositional(Formula),
    #[error("{found} atoms exceed the cap of {cap}")]
    AtomCap { found: usize, cap: usize },
}

pub fn eval(phi: &Formula, v: &Valuation) -> Result<TruthValue, EvalError> {
    Ok(match phi {
        Formula::Prop(p) => *v.get(p).ok_or_else(|| EvalError::Unassigned(p.clone()))?,
        Formula::Not(a) => neg(eval(a, v)?),
        Formula::Circ(a) => circ(eval(a, v)?),
        Formula::And(a, b) => and(eval(a, v)?, eval(b, v)?),
        Formula::Or(a, b) => or(eval(a, v)?, eval(b, v)?),
        Formula::Imp(a, b) => imp(eval(a, v)?, eval(b, v)?),
        other => return Err(EvalError::NotPropositional(other.clone())),
    })
}

pub fn designated(phi: &Formula, v: &Valuation) -> Result<bool, EvalError> {
    Ok(eval(phi, v)?.is_designated())
}

/// Some antecedent formula undesignated or some succedent formula designated.
pub fn sequent_satisfied(s: &Sequent, v: &Valuation) -> Result<bool, EvalError> {
    for a in &s.ante {
        if !designated(a, v)? {
            return Ok(true);
        }
    }
    for b in &s.succ {
        if designated(b, v)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// All valuations of `atoms`, lexicographic with the first atom most
/// significant and `0 < ½ < 1`.
pub fn valuations(atoms: &BTreeSet<String>) -> impl Iterator<Item = Valuation> + '_ {
    let n = atoms.len() as u32;
    (0..3usize.pow(n)).map(move |mut code| {
        let mut vals = vec![Zero; n as usize];
        for slot in vals.iter_mut().rev() {
            *slot = TruthValue::ALL[code % 3];
            code /= 3;
        }
        atoms.iter().cloned().zip(vals).collect()
    })
}

fn check_cap(atoms: &BTreeSet<String>, cap: usize) -> Result<(), EvalError> {
    if atoms.len() > cap {
        Err(EvalError::AtomCap { found: atoms.len(), cap })
    } else {
        Ok(())
    }
}

/// The first falsifying valuation in [`valuations`] order.
pub fn find_countermodel(s: &Sequent, cap: usize) -> Result<Option<Valuation>, EvalError> {
    if !s.is_propositional() {
        let f = s.formulas().find(|f| !f.is_propositional()).cloned();
        return Err(EvalError::NotPropositional(f.expect("some formula is not propositional")));
    }
    let atoms = s.atoms();
    check_cap(&atoms, cap)?;
    for v in valuations(&atoms) {
        if !sequent_satisfied(s, &v)? {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

pub fn matrix_valid(s: &Sequent, cap: usize) -> Result<bool, EvalError> {
    Ok(find_countermodel(s, cap)?.is_none())
}

/// A sequent of three formula sets, one per truth value.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NSequent {
    pub zero: BTreeSet<Formula>,
    pub half: BTreeSet<Formula>,
    pub one: BTreeSet<Formula>,
}

impl NSequent {
    /// `Γ ⇒ Δ` as `Γ | Δ | Δ`.
    pub fn embed(s: &Sequent) -> NSequent {
        NSequent { zero: s.ante.clone(), half: s.succ.clone(), one: s.succ.clone() }
    }

    pub fn component(&self, t: TruthValue) -> &BTreeSet<Formula> {
        match t {
            Zero => &self.zero,
            Half => &self.half,
            One => &self.one,
        }
    }
}

/// Some formula in component `t` takes value `t`.
pub fn nsequent_satisfied(s: &NSequent, v: &Valuation) -> Result<bool, EvalError> {
    for t in TruthValue::ALL {
        for f in s.component(t) {
            if eval(f, v)? == t {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Designated,
    Undesignated,
}

/// Sign `D` asks for a designated value, `N` for an undesignated one.
pub fn signed_satisfied(phi: &Formula, sign: Sign, v: &Valuation) -> Result<bool, EvalError> {
    Ok(designated(phi, v)? == (sign == Sign::Designated))
}

/// Signed formulas whose joint satisfaction pins `phi` to value `t`.
pub fn expressiveness_witnesses(phi: &Formula, t: TruthValue) -> Vec<(Formula, Sign)> {
    let n = Formula::not(phi.clone());
    match t {
        Zero => vec![(phi.clone(), Sign::Undesignated)],
        Half => vec![(phi.clone(), Sign::Designated), (n, Sign::Designated)],
        One => vec![(phi.clone(), Sign::Designated), (n, Sign::Undesignated)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_sequent;

    #[test]
    fn tables_spot_check() {
        assert_eq!(and(Half, One), One);
        assert_eq!(or(Zero, Half), One);
        assert_eq!(imp(Half, Zero), Zero);
        assert_eq!(circ(Half), Zero);
        assert_eq!(neg(Half), Half);
    }

    #[test]
    fn valuation_order() {
        let atoms: BTreeSet<String> = ["p".into(), "q".into()].into_iter().collect();
        let all: Vec<Valuation> = valuations(&atoms).collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0]["p"], Zero);
        assert_eq!(all[1]["q"], Half);
        assert_eq!(all[3]["p"], Half);
    }

    #[test]
    fn countermodels() {
        let s = parse_sequent("p |- o p").unwrap();
        let v = find_countermodel(&s, DEFAULT_ATOM_CAP).unwrap().unwrap();
        assert_eq!(v["p"], Half);
        assert!(matrix_valid(&parse_sequent("|- p | ~p").unwrap(), DEFAULT_ATOM_CAP).unwrap());
        assert!(!matrix_valid(&parse_sequent("|-").unwrap(), DEFAULT_ATOM_CAP).unwrap());
    }

    #[test]
    fn cap_and_fragment_errors() {
        let s = parse_sequent("|- p | q | r").unwrap();
        assert!(matches!(find_countermodel(&s, 2), Err(EvalError::AtomCap { found: 3, cap: 2 })));
        let fo = parse_sequent("|- P(a1)").unwrap();
        assert!(matches!(find_countermodel(&fo, 2), Err(EvalError::NotPropositional(_))));
    }

    #[test]
    fn truth_value_strings() {
        for t in TruthValue::ALL {
            assert_eq!(t.as_str().parse::<TruthValue>().unwrap(), t);
        }
    }
}
