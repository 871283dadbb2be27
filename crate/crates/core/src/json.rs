//! JSON encodings of proofs, valuations, verdicts and structures.
//!
//! Formulas and terms are written in the text grammar of [`crate::parse`].

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::fo_prover::{BudgetReport, FoVerdict};
use crate::fo_semantics::{Assignment, SemanticsError, Structure, Triple};
use crate::matrix::{TruthValue, Valuation};
use crate::parse::{parse_formula, parse_term, ParseError};
use crate::prop_prover::Verdict;
use crate::sequent::{Proof, RuleId, Sequent};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error(transparent)]
    Serde(#[from] serde_json::Error),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error("{0}")]
    Shape(String),
}

#[derive(Serialize, Deserialize)]
struct SequentJson {
    ante: Vec<String>,
    succ: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct ProofJson {
    sequent: SequentJson,
    rule: String,
    principal: Option<String>,
    side: Option<String>,
    #[serde(default)]
    premises: Vec<ProofJson>,
}

fn sequent_json(s: &Sequent) -> SequentJson {
    SequentJson { ante: s.ante.iter().map(|f| f.to_string()).collect(), succ: s.succ.iter().map(|f| f.to_string()).collect() }
}

fn proof_json(p: &Proof) -> ProofJson {
    ProofJson {
        sequent: sequent_json(&p.sequent),
        rule: p.rule.name().to_string(),
        principal: p.principal.as_ref().map(|f| f.to_string()),
        side: p.term.as_ref().map(|t| t.to_string()),
        premises: p.premises.iter().map(proof_json).collect(),
    }
}

pub fn sequent_to_json(s: &Sequent) -> Value {
    serde_json::to_value(sequent_json(s)).expect("plain data serializes")
}

pub fn proof_to_json(p: &Proof) -> Value {
    serde_json::to_value(proof_json(p)).expect("plain data serializes")
}

fn proof_from(j: ProofJson) -> Result<Proof, JsonError> {
    let parse_all = |v: Vec<String>| v.iter().map(|s| parse_formula(s)).collect::<Result<Vec<_>, _>>();
    let sequent = Sequent::new(parse_all(j.sequent.ante)?, parse_all(j.sequent.succ)?);
    let rule = RuleId::from_name(&j.rule).ok_or_else(|| JsonError::Shape(format!("unknown rule `{}`", j.rule)))?;
    let principal = j.principal.map(|s| parse_formula(&s)).transpose()?;
    let term = j.side.map(|s| parse_term(&s)).transpose()?;
    let premises = j.premises.into_iter().map(proof_from).collect::<Result<_, _>>()?;
    Ok(Proof { sequent, rule, principal, term, premises })
}

pub fn proof_from_json(v: &Value) -> Result<Proof, JsonError> {
    proof_from(ProofJson::deserialize(v)?)
}

pub fn proof_from_str(s: &str) -> Result<Proof, JsonError> {
    proof_from(serde_json::from_str(s)?)
}

pub fn valuation_to_json(v: &Valuation) -> Value {
    Value::Object(v.iter().map(|(k, t)| (k.clone(), Value::String(t.as_str().into()))).collect())
}

pub fn valuation_from_json(v: &Value) -> Result<Valuation, JsonError> {
    let map: BTreeMap<String, String> = serde_json::from_value(v.clone())?;
    map.into_iter()
        .map(|(k, s)| s.parse::<TruthValue>().map(|t| (k, t)).map_err(JsonError::Shape))
        .collect()
}

pub fn verdict_to_json(v: &Verdict) -> Value {
    match v {
        Verdict::Proved(p) => json!({"status": "proved", "proof": proof_to_json(p)}),
        Verdict::Refuted(val) => json!({"status": "refuted", "valuation": valuation_to_json(val)}),
    }
}

#[derive(Serialize, Deserialize, Default)]
struct PredicateJson {
    plus: Vec<Vec<String>>,
    minus: Vec<Vec<String>>,
    circ: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct FunctionRow {
    args: Vec<String>,
    value: String,
}

#[derive(Serialize, Deserialize)]
struct StructureJson {
    domain: Vec<String>,
    #[serde(default)]
    predicates: BTreeMap<String, PredicateJson>,
    #[serde(default)]
    functions: BTreeMap<String, Vec<FunctionRow>>,
    #[serde(default)]
    constants: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    propositions: BTreeMap<String, String>,
}

pub fn structure_to_json(st: &Structure) -> Value {
    let names = |t: &[usize]| t.iter().map(|&i| st.domain()[i].clone()).collect::<Vec<_>>();
    let mut predicates = BTreeMap::new();
    for (p, (arity, triple)) in st.predicates() {
        let mut pj = PredicateJson::default();
        for t in st.tuples(*arity) {
            let bucket = match triple.value(st.tuple_index(&t)) {
                TruthValue::One => &mut pj.plus,
                TruthValue::Zero => &mut pj.minus,
                TruthValue::Half => &mut pj.circ,
            };
            bucket.push(names(&t));
        }
        predicates.insert(p.clone(), pj);
    }
    let functions = st
        .functions()
        .iter()
        .map(|(f, (arity, table))| {
            let rows = st
                .tuples(*arity)
                .into_iter()
                .map(|t| FunctionRow { value: st.domain()[table[st.tuple_index(&t)]].clone(), args: names(&t) })
                .collect();
            (f.clone(), rows)
        })
        .collect();
    let sj = StructureJson {
        domain: st.domain().to_vec(),
        predicates,
        functions,
        constants: st.constants().iter().map(|(c, &i)| (c.clone(), st.domain()[i].clone())).collect(),
        propositions: st.propositions().iter().map(|(p, t)| (p.clone(), t.as_str().to_string())).collect(),
    };
    serde_json::to_value(sj).expect("plain data serializes")
}

pub fn structure_from_json(v: &Value) -> Result<Structure, JsonError> {
    let sj = StructureJson::deserialize(v)?;
    let mut st = Structure::new(sj.domain)?;
    let index = |st: &Structure, t: &[String]| -> Result<Vec<usize>, JsonError> {
        t.iter().map(|n| st.element(n).map_err(JsonError::from)).collect()
    };
    for (p, pj) in &sj.predicates {
        let arity = [&pj.plus, &pj.minus, &pj.circ]
            .iter()
            .find_map(|b| b.first().map(Vec::len))
            .ok_or_else(|| JsonError::Shape(format!("predicate `{p}` lists no tuples")))?;
        let mut comps: [BTreeSet<usize>; 3] = Default::default();
        for (bucket, comp) in [&pj.plus, &pj.minus, &pj.circ].into_iter().zip(comps.iter_mut()) {
            for t in bucket {
                if t.len() != arity {
                    return Err(JsonError::Shape(format!("predicate `{p}` mixes arities")));
                }
                let i = st.tuple_index(&index(&st, t)?);
                if !comp.insert(i) {
                    return Err(JsonError::Shape(format!("predicate `{p}` lists a tuple twice")));
                }
            }
        }
        let triple = Triple::from_components(st.size().pow(arity as u32), &comps[0], &comps[1], &comps[2])?;
        st = st.with_predicate(p, arity, triple)?;
    }
    for (f, rows) in &sj.functions {
        let arity = rows.first().map(|r| r.args.len()).ok_or_else(|| JsonError::Shape(format!("function `{f}` has no rows")))?;
        let mut table = vec![None; st.size().pow(arity as u32)];
        for r in rows {
            if r.args.len() != arity {
                return Err(JsonError::Shape(format!("function `{f}` mixes arities")));
            }
            let i = st.tuple_index(&index(&st, &r.args)?);
            if table[i].replace(st.element(&r.value)?).is_some() {
                return Err(JsonError::Shape(format!("function `{f}` lists an argument tuple twice")));
            }
        }
        let table = table.into_iter().collect::<Option<Vec<_>>>().ok_or(SemanticsError::PartialFunction(f.clone()))?;
        st = st.with_function(f, arity, table)?;
    }
    for (c, e) in &sj.constants {
        let i = st.element(e)?;
        st = st.with_constant(c, i)?;
    }
    for (p, t) in &sj.propositions {
        let t: TruthValue = t.parse().map_err(JsonError::Shape)?;
        st = st.with_proposition(p, t);
    }
    Ok(st)
}

pub fn assignment_to_json(st: &Structure, s: &Assignment) -> Value {
    Value::Object(s.iter().map(|(k, &i)| (k.clone(), Value::String(st.domain()[i].clone()))).collect())
}

pub fn report_to_json(r: &BudgetReport) -> Value {
    json!({
        "nodes": r.nodes,
        "depth": r.depth,
        "stages": r.stages,
        "open_leaves": r.open_leaves,
        "reason": r.reason,
    })
}

pub fn fo_verdict_to_json(v: &FoVerdict) -> Value {
    match v {
        FoVerdict::Proved(p) => json!({"status": "proved", "proof": proof_to_json(p)}),
        FoVerdict::Refuted { structure, assignment } => json!({
            "status": "refuted",
            "structure": structure_to_json(structure),
            "assignment": assignment_to_json(structure, assignment),
        }),
        FoVerdict::Unknown(r) => json!({"status": "unknown", "report": report_to_json(r)}),
    }
}
