//! Search for first-order sequents by reduction trees.
//!
//! Starting from the end-sequent, each stage applies one phase to every open
//! leaf: all eligible principals of that phase are reduced at once and the
//! leaf gets one child per combination of premises. Sequents only grow, so
//! a branch's last sequent is the union of everything on it.
//!
//! A leaf is closed when its two sides share a formula. A leaf that no phase
//! changes for a whole cycle is saturated; its sequent yields a candidate
//! countermodel whose domain is the branch's free variables. The candidate is
//! verified against the end-sequent before it is reported, because the rule
//! set has no left rules for negated quantifiers and an unverified candidate
//! proves nothing.

mod phase;

use std::collections::BTreeSet;
use std::fmt::Write;

use thiserror::Error;

use crate::fo_semantics::{fo_sequent_satisfied, Assignment, SemanticsError, Structure, Triple};
use crate::matrix::TruthValue;
use crate::sequent::{schema, DerivedRule, Proof, RuleId, Sequent, Side};
use crate::syntax::{fresh_free_variable, variable_order, Formula, Signature, Term};

pub use phase::{Mode, Phase};

pub const DEFAULT_MAX_NODES: usize = 20_000;
pub const DEFAULT_MAX_DEPTH: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: usize,
    pub max_depth: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_nodes: DEFAULT_MAX_NODES, max_depth: DEFAULT_MAX_DEPTH }
    }
}

/// Bookkeeping for a reduction already performed on a branch. Quantifier
/// instantiations record the variable used.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Mark {
    pub phase: Phase,
    pub formula: Formula,
    pub var: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeStatus {
    Open,
    Closed,
    Saturated,
    Interior,
}

#[derive(Clone, Debug)]
pub struct ReductionNode {
    pub sequent: Sequent,
    /// Stage at which the node was written; 0 for the root.
    pub stage: usize,
    pub marks: BTreeSet<Mark>,
    /// Variables available for instantiation on this branch.
    pub available: Vec<String>,
    pub depth: usize,
    pub children: Vec<usize>,
    /// Principals reduced to produce the children, in application order.
    pub step: Vec<(RuleId, Formula, Option<Term>)>,
    pub status: NodeStatus,
    idle: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BudgetReport {
    pub nodes: usize,
    pub depth: usize,
    pub stages: usize,
    pub open_leaves: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FoVerdict {
    Proved(Proof),
    Refuted { structure: Structure, assignment: Assignment },
    Unknown(BudgetReport),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoError {
    #[error("constants and function symbols are outside the prover's fragment: {0}")]
    Unsupported(Formula),
    #[error("formula `{0}` has a bound variable outside its quantifier or a shadowed binder")]
    IllScoped(Formula),
    #[error(transparent)]
    Signature(#[from] crate::syntax::SignatureError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

fn variables_only(f: &Formula) -> bool {
    match f {
        Formula::Prop(_) => true,
        Formula::Pred(_, args) => args.iter().all(|t| matches!(t, Term::Free(_) | Term::Bound(_))),
        Formula::Not(a) | Formula::Circ(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => variables_only(a),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => variables_only(a) && variables_only(b),
    }
}

/// A reduction tree under construction, stored as an arena rooted at 0.
#[derive(Clone, Debug)]
pub struct ReductionTree {
    pub nodes: Vec<ReductionNode>,
    leaves: Vec<usize>,
    pub stage: usize,
    pub budget: Budget,
    pub exhausted: bool,
}

impl ReductionTree {
    pub fn new(root: Sequent, budget: Budget) -> ReductionTree {
        let mut available: Vec<String> = root.free_variables().into_iter().collect();
        available.sort_by(|a, b| variable_order(a, b));
        if available.is_empty() {
            available.push(fresh_free_variable(&[]));
        }
        let status = if root.is_closed() { NodeStatus::Closed } else { NodeStatus::Open };
        let node = ReductionNode {
            sequent: root,
            stage: 0,
            marks: BTreeSet::new(),
            available,
            depth: 0,
            children: vec![],
            step: vec![],
            status,
            idle: 0,
        };
        ReductionTree { nodes: vec![node], leaves: vec![0], stage: 0, budget, exhausted: false }
    }

    pub fn root(&self) -> &ReductionNode {
        &self.nodes[0]
    }

    pub fn leaves(&self) -> &[usize] {
        &self.leaves
    }

    pub fn is_closed(&self) -> bool {
        self.leaves.iter().all(|&i| self.nodes[i].status == NodeStatus::Closed)
    }

    pub fn has_open_leaf(&self) -> bool {
        self.leaves.iter().any(|&i| self.nodes[i].status == NodeStatus::Open)
    }

    pub fn max_depth(&self) -> usize {
        self.leaves.iter().map(|&i| self.nodes[i].depth).max().unwrap_or(0)
    }

    /// Runs one stage. Returns the leaves that became saturated.
    pub fn run_stage(&mut self) -> Vec<usize> {
        self.stage += 1;
        let phase = Phase::of_stage(self.stage);
        let mut saturated = Vec::new();
        let mut next = Vec::with_capacity(self.leaves.len());
        let leaves = std::mem::take(&mut self.leaves);
        for (pos, &id) in leaves.iter().enumerate() {
            if self.nodes[id].status != NodeStatus::Open || self.exhausted {
                next.push(id);
                continue;
            }
            let plan = plan(&self.nodes[id], phase);
            if plan.principals.is_empty() {
                let node = &mut self.nodes[id];
                node.idle += 1;
                if node.idle >= Phase::ALL.len() {
                    node.status = NodeStatus::Saturated;
                    saturated.push(id);
                }
                next.push(id);
                continue;
            }
            let children = expand(&self.nodes[id], &plan, self.stage);
            let depth = self.nodes[id].depth + 1;
            if self.nodes.len() + children.len() > self.budget.max_nodes || depth > self.budget.max_depth {
                self.exhausted = true;
                next.extend_from_slice(&leaves[pos..]);
                break;
            }
            let first = self.nodes.len();
            self.nodes.extend(children);
            let ids: Vec<usize> = (first..self.nodes.len()).collect();
            let node = &mut self.nodes[id];
            node.children = ids.clone();
            node.step = plan.principals;
            node.status = NodeStatus::Interior;
            next.extend(ids);
        }
        self.leaves = next;
        saturated
    }

    /// Root-to-leaf path.
    pub fn branch(&self, leaf: usize) -> Vec<&ReductionNode> {
        let mut path = Vec::new();
        self.collect_path(0, leaf, &mut path);
        path
    }

    fn collect_path<'a>(&'a self, at: usize, leaf: usize, out: &mut Vec<&'a ReductionNode>) -> bool {
        out.push(&self.nodes[at]);
        if at == leaf {
            return true;
        }
        for &c in &self.nodes[at].children {
            if self.collect_path(c, leaf, out) {
                return true;
            }
        }
        out.pop();
        false
    }

    /// The cut-free proof a closed tree encodes.
    pub fn to_proof(&self) -> Option<Proof> {
        self.is_closed().then(|| self.node_proof(0))
    }

    fn node_proof(&self, id: usize) -> Proof {
        let node = &self.nodes[id];
        if node.status == NodeStatus::Closed {
            let a = node.sequent.common_formula().expect("closed node shares a formula");
            return Proof::closed_by(a, &node.sequent);
        }
        let mut kids = node.children.iter().map(|&c| self.node_proof(c));
        let p = chain(&node.sequent, &node.step, &mut kids);
        debug_assert!(kids.next().is_none());
        p
    }

    /// One node per line, indented by depth:
    /// `k=<stage>/<phase> <sequent> [<marks>] <status>`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        self.dump_node(0, &mut out);
        out
    }

    fn dump_node(&self, id: usize, out: &mut String) {
        let n = &self.nodes[id];
        let phase = if n.stage == 0 { "start" } else { Phase::of_stage(n.stage).label() };
        let marks: Vec<String> = n
            .marks
            .iter()
            .map(|m| match &m.var {
                Some(v) => format!("{}{}@{v}", m.phase, m.formula),
                None => format!("{}{}", m.phase, m.formula),
            })
            .collect();
        let status = match n.status {
            NodeStatus::Open => " open",
            NodeStatus::Closed => " closed",
            NodeStatus::Saturated => " saturated",
            NodeStatus::Interior => "",
        };
        let _ = writeln!(out, "{:indent$}k={}/{} {} [{}]{}", "", n.stage, phase, n.sequent, marks.join("; "), status, indent = n.depth * 2);
        for &c in &n.children {
            self.dump_node(c, out);
        }
    }
}

struct Plan {
    principals: Vec<(RuleId, Formula, Option<Term>)>,
    new_marks: Vec<Mark>,
    new_vars: Vec<String>,
}

fn fits(rule: RuleId, f: &Formula, side: Side) -> bool {
    schema(rule, f, Some(&Term::free("a1"))).is_some_and(|s| s.side == side)
}

fn plan(node: &ReductionNode, phase: Phase) -> Plan {
    let mut plan = Plan { principals: vec![], new_marks: vec![], new_vars: vec![] };
    let Some(rule) = phase.rule() else { return plan };
    let mut avail = node.available.clone();
    for f in node.sequent.side(phase.side()) {
        if !fits(rule, f, phase.side()) {
            continue;
        }
        let once = Mark { phase, formula: f.clone(), var: None };
        match phase.mode() {
            Mode::Idle => {}
            Mode::Once => {
                if !node.marks.contains(&once) {
                    plan.principals.push((rule, f.clone(), None));
                    plan.new_marks.push(once);
                }
            }
            Mode::Eigen => {
                if !node.marks.contains(&once) {
                    let a = fresh_free_variable(&avail);
                    avail.push(a.clone());
                    plan.new_vars.push(a.clone());
                    plan.principals.push((rule, f.clone(), Some(Term::Free(a))));
                    plan.new_marks.push(once);
                }
            }
            Mode::Instantiate => {
                let unused = node.available.iter().find(|v| {
                    !node.marks.contains(&Mark { phase, formula: f.clone(), var: Some((*v).clone()) })
                });
                if let Some(v) = unused {
                    plan.principals.push((rule, f.clone(), Some(Term::Free(v.clone()))));
                    plan.new_marks.push(Mark { phase, formula: f.clone(), var: Some(v.clone()) });
                }
            }
        }
    }
    plan
}

/// Children of `node`: one per choice of premise for each principal, the
/// first principal varying slowest.
fn expand(node: &ReductionNode, plan: &Plan, stage: usize) -> Vec<ReductionNode> {
    let mut seqs = vec![node.sequent.clone()];
    for (rule, f, term) in &plan.principals {
        let sch = schema(*rule, f, term.as_ref()).expect("planned rule fits");
        seqs = seqs.iter().flat_map(|s| sch.premises.iter().map(move |(l, r)| s.extended(l, r))).collect();
    }
    let mut marks = node.marks.clone();
    marks.extend(plan.new_marks.iter().cloned());
    let mut available = node.available.clone();
    available.extend(plan.new_vars.iter().cloned());
    seqs.into_iter()
        .map(|sequent| {
            let status = if sequent.is_closed() { NodeStatus::Closed } else { NodeStatus::Open };
            ReductionNode {
                sequent,
                stage,
                marks: marks.clone(),
                available: available.clone(),
                depth: node.depth + 1,
                children: vec![],
                step: vec![],
                status,
                idle: 0,
            }
        })
        .collect()
}

/// Applies the principals one rule at a time, keeping each principal in its
/// premises, and hangs the children's proofs on the leaves in order.
fn chain(seq: &Sequent, steps: &[(RuleId, Formula, Option<Term>)], kids: &mut dyn Iterator<Item = Proof>) -> Proof {
    let Some(((rule, f, term), rest)) = steps.split_first() else {
        let p = kids.next().expect("one child per premise combination");
        debug_assert_eq!(&p.sequent, seq);
        return p;
    };
    let sch = schema(*rule, f, term.as_ref()).expect("recorded rule fits");
    let premises = sch.premises.iter().map(|(l, r)| chain(&seq.extended(l, r), rest, kids)).collect();
    Proof { sequent: seq.clone(), rule: *rule, principal: Some(f.clone()), term: term.clone(), premises }
}

/// The structure and assignment read off a branch: the domain is the
/// branch's free variables, each assigned to itself, and an atom is `½` when
/// it and its negation are both in the antecedent, `1` when only it is, and
/// `0` otherwise.
pub fn extract_countermodel(branch: &[&ReductionNode]) -> Result<(Structure, Assignment), FoError> {
    let mut gamma = BTreeSet::new();
    let mut delta = BTreeSet::new();
    for n in branch {
        gamma.extend(n.sequent.ante.iter().cloned());
        delta.extend(n.sequent.succ.iter().cloned());
    }
    let all = Sequent { ante: gamma, succ: delta };
    let mut vars: Vec<String> = all.free_variables().into_iter().collect();
    vars.sort_by(|a, b| variable_order(a, b));
    if vars.is_empty() {
        vars.push(fresh_free_variable(&[]));
    }
    let sig = Signature::infer(all.formulas())?;
    let read = |atom: Formula| -> TruthValue {
        let neg = Formula::not(atom.clone());
        match (all.ante.contains(&atom), all.ante.contains(&neg)) {
            (true, true) => TruthValue::Half,
            (true, false) => TruthValue::One,
            (false, _) => TruthValue::Zero,
        }
    };
    let mut st = Structure::new(vars.clone())?;
    for (p, &arity) in &sig.predicates {
        let values = st
            .tuples(arity)
            .into_iter()
            .map(|t| read(Formula::pred(p.clone(), t.iter().map(|&i| Term::Free(vars[i].clone())).collect())))
            .collect();
        st = st.with_predicate(p, arity, Triple::from_values(values))?;
    }
    for p in all.atoms() {
        st = st.with_proposition(&p, read(Formula::prop(p.clone())));
    }
    let assignment = vars.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
    Ok((st, assignment))
}

fn check_input(s: &Sequent) -> Result<(), FoError> {
    for f in s.formulas() {
        if !variables_only(f) {
            return Err(FoError::Unsupported(f.clone()));
        }
        if !f.is_well_scoped() {
            return Err(FoError::IllScoped(f.clone()));
        }
    }
    Signature::infer(s.formulas())?;
    Ok(())
}

/// Grows the tree until it closes, saturates everywhere, or runs out of budget.
pub fn build_reduction_tree(s: &Sequent, budget: Budget) -> Result<ReductionTree, FoError> {
    check_input(s)?;
    let mut tree = ReductionTree::new(s.clone(), budget);
    while tree.has_open_leaf() && !tree.exhausted {
        tree.run_stage();
    }
    Ok(tree)
}

/// Proof, verified countermodel, or a report of where the search stopped.
pub fn decide_fo(s: &Sequent, budget: Budget) -> Result<FoVerdict, FoError> {
    check_input(s)?;
    let mut tree = ReductionTree::new(s.clone(), budget);
    loop {
        if tree.is_closed() {
            return Ok(FoVerdict::Proved(tree.to_proof().expect("closed tree")));
        }
        if !tree.has_open_leaf() || tree.exhausted {
            let open = tree.leaves().iter().filter(|&&i| tree.nodes[i].status != NodeStatus::Closed).count();
            let reason = if tree.exhausted {
                "budget exhausted".to_string()
            } else {
                "saturated branches gave no countermodel".to_string()
            };
            return Ok(FoVerdict::Unknown(BudgetReport {
                nodes: tree.nodes.len(),
                depth: tree.max_depth(),
                stages: tree.stage,
                open_leaves: open,
                reason,
            }));
        }
        for leaf in tree.run_stage() {
            let (st, asg) = extract_countermodel(&tree.branch(leaf))?;
            if !fo_sequent_satisfied(&st, &asg, s)? {
                return Ok(FoVerdict::Refuted { structure: st, assignment: asg });
            }
        }
    }
}

/// A fixed first-order test case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FoCase {
    /// Must be proved by [`decide_fo`].
    Provable { name: String, sequent: Sequent },
    /// Must expand and check with cut enabled.
    Derived { name: String, rule: DerivedRule, conclusion: Sequent, premises: Vec<Sequent> },
}

/// The quantifier interaction theorems and the two generalization rules.
pub fn fo_regression_suite() -> Vec<FoCase> {
    let p = |v: &str| Formula::pred("P", vec![Term::free(v)]);
    let px = || Formula::pred("P", vec![Term::Bound("x".into())]);
    let q2 = Formula::pred("Q", vec![Term::free("a2")]);
    let all = Formula::forall("x", px());
    let ex = Formula::exists("x", px());
    let ex_circ = Formula::exists("x", Formula::circ(px()));
    let provable = |name: &str, f: Formula| FoCase::Provable { name: name.into(), sequent: Sequent::theorem(f) };
    vec![
        provable("instance-implies-existential", Formula::imp(p("a1"), ex.clone())),
        provable("universal-implies-instance", Formula::imp(all.clone(), p("a1"))),
        provable("consistent-existential", Formula::iff(Formula::circ(ex.clone()), ex_circ.clone())),
        provable("consistent-universal", Formula::iff(Formula::circ(all.clone()), ex_circ)),
        FoCase::Derived {
            name: "universal-generalization".into(),
            rule: DerivedRule::ForallIntro,
            conclusion: Sequent::theorem(Formula::imp(q2.clone(), all)),
            premises: vec![Sequent::theorem(Formula::imp(q2.clone(), p("a1")))],
        },
        FoCase::Derived {
            name: "existential-generalization".into(),
            rule: DerivedRule::ExistsIntro,
            conclusion: Sequent::theorem(Formula::imp(ex, q2.clone())),
            premises: vec![Sequent::theorem(Formula::imp(p("a1"), q2))],
        },
    ]
}
