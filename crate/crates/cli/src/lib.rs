//! The `ciore` command line.
//!
//! [`run`] does all the work so the binary stays a two-liner and the
//! integration tests can drive it without spawning processes.

use std::fs;
use std::io::{Read, Write};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ciore::axioms::{quantifier_axioms, PROPOSITIONAL_SCHEMATA};
use ciore::fo_prover::{build_reduction_tree, decide_fo, fo_regression_suite, Budget, FoCase, FoError, FoVerdict, DEFAULT_MAX_DEPTH, DEFAULT_MAX_NODES};
use ciore::fo_semantics::{fo_falsifying_assignment, valid_in, SemanticsError, Structure, Triple};
use ciore::json::{
    assignment_to_json, fo_verdict_to_json, proof_from_str, structure_from_json, structure_to_json, valuation_to_json, verdict_to_json, JsonError,
};
use ciore::matrix::{self, find_countermodel, matrix_valid, EvalError, DEFAULT_ATOM_CAP};
use ciore::prop_prover::{decide, theorem_suite, ProverError, Verdict};
use ciore::sequent::{check_derivation, check_proof, check_subformula_property, expand_derived_rule, ProofError};
use ciore::{parse_formula, parse_sequent, Calculus, Formula, Proof, Sequent, Term, TruthValue};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_PARSE: i32 = 65;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Parser, Debug)]
#[command(name = "ciore", version, about = "Provers and model checkers for the paraconsistent logics Ciore and QCiore")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Search for a cut-free proof; print it or a countermodel.
    Prove {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        limits: Limits,
    },
    /// Print `valid` or `invalid`.
    Validity {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        limits: Limits,
        /// Check validity in this structure (JSON) instead of in general.
        #[arg(long, value_name = "FILE")]
        structure: Option<String>,
    },
    /// Print a falsifying valuation, structure or assignment.
    Countermodel {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        limits: Limits,
        /// Look for a falsifying assignment in this structure (JSON).
        #[arg(long, value_name = "FILE")]
        structure: Option<String>,
    },
    /// Check a proof in JSON form, read from FILE or standard input.
    CheckProof {
        /// Proof file; `-` or nothing reads standard input.
        file: Option<String>,
        #[arg(long)]
        allow_cut: bool,
        #[arg(long, value_enum, default_value_t = CalculusArg::Auto)]
        calculus: CalculusArg,
        #[arg(long)]
        json: bool,
    },
    /// Run the built-in truth-table, axiom, theorem and first-order suites.
    Selftest {
        #[arg(long)]
        json: bool,
    },
    /// Print the reduction tree of a sequent.
    ReductionTree {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        limits: Limits,
    },
}

#[derive(Args, Debug)]
struct Input {
    /// A sequent `A, B |- C`, or a single formula (read as `|- A`).
    sequent: String,
    /// Accept quantifiers and predicates.
    #[arg(long)]
    fo: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct Limits {
    /// Most distinct atoms a propositional search will enumerate.
    #[arg(long, env = "CIORE_ATOM_CAP", default_value_t = DEFAULT_ATOM_CAP)]
    atom_cap: usize,
    /// Reduction-tree depth limit.
    #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
    depth: usize,
    /// Reduction-tree node limit.
    #[arg(long, default_value_t = DEFAULT_MAX_NODES)]
    nodes: usize,
}

impl Limits {
    fn budget(&self) -> Budget {
        Budget { max_nodes: self.nodes, max_depth: self.depth }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum CalculusArg {
    Auto,
    Gciore,
    GciorePrime,
    Gqciore,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Parse(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Parse(_) => EXIT_PARSE,
            Failure::Internal(_) => EXIT_INTERNAL,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Parse(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::AtomCap { .. } => Failure::Usage(format!("{e}; raise --atom-cap or CIORE_ATOM_CAP")),
            EvalError::NotPropositional(_) => Failure::Usage(format!("{e}; use --fo")),
            EvalError::Unassigned(_) => Failure::Internal(e.to_string()),
        }
    }
}

impl From<ProverError> for Failure {
    fn from(e: ProverError) -> Self {
        match e {
            ProverError::Eval(e) => e.into(),
            other => Failure::Internal(other.to_string()),
        }
    }
}

impl From<FoError> for Failure {
    fn from(e: FoError) -> Self {
        match e {
            FoError::Unsupported(_) => Failure::Usage(e.to_string()),
            FoError::IllScoped(_) | FoError::Signature(_) => Failure::Parse(e.to_string()),
            FoError::Semantics(_) => Failure::Internal(e.to_string()),
        }
    }
}

impl From<JsonError> for Failure {
    fn from(e: JsonError) -> Self {
        Failure::Parse(e.to_string())
    }
}

// Raised while evaluating against a user-supplied structure, so the data is at fault.
impl From<SemanticsError> for Failure {
    fn from(e: SemanticsError) -> Self {
        Failure::Parse(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

/// Runs one command line; `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Prove { input, limits } => prove(&input, &limits, out),
        Command::Validity { input, limits, structure } => validity(&input, &limits, structure.as_deref(), out),
        Command::Countermodel { input, limits, structure } => countermodel(&input, &limits, structure.as_deref(), out),
        Command::CheckProof { file, allow_cut, calculus, json } => check(file.as_deref(), allow_cut, calculus, json, stdin, out),
        Command::Selftest { json } => selftest(json, out),
        Command::ReductionTree { input, limits } => reduction_tree(&input, &limits, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "ciore: {}", f.message());
            f.code()
        }
    }
}

fn io(e: std::io::Error) -> Failure {
    Failure::Internal(format!("write failed: {e}"))
}

fn read_sequent(input: &Input) -> Result<Sequent, Failure> {
    let src = input.sequent.as_str();
    let s = if src.contains("|-") {
        parse_sequent(src).map_err(|e| Failure::Parse(e.to_string()))?
    } else {
        Sequent::theorem(parse_formula(src).map_err(|e| Failure::Parse(e.to_string()))?)
    };
    if !input.fo && !s.is_propositional() {
        return Err(Failure::Usage("quantified or predicate input needs --fo".into()));
    }
    Ok(s)
}

fn read_structure(path: &str) -> Result<Structure, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("{path}: {e}")))?;
    Ok(structure_from_json(&v)?)
}

fn emit(out: &mut dyn Write, v: &Value, pretty: bool) -> Result<(), Failure> {
    let text = if pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) };
    writeln!(out, "{}", text.map_err(|e| Failure::Internal(e.to_string()))?).map_err(io)
}

fn prove(input: &Input, limits: &Limits, out: &mut dyn Write) -> Outcome {
    let s = read_sequent(input)?;
    if input.fo {
        let verdict = decide_fo(&s, limits.budget())?;
        if input.json {
            emit(out, &fo_verdict_to_json(&verdict), false)?;
        } else {
            match &verdict {
                FoVerdict::Proved(p) => write!(out, "proved\n{}", p.render()).map_err(io)?,
                FoVerdict::Refuted { structure, assignment } => {
                    writeln!(out, "refuted").map_err(io)?;
                    let v = json!({"structure": structure_to_json(structure), "assignment": assignment_to_json(structure, assignment)});
                    emit(out, &v, true)?;
                }
                FoVerdict::Unknown(r) => writeln!(out, "unknown: {} ({} nodes, depth {}, {} stages)", r.reason, r.nodes, r.depth, r.stages).map_err(io)?,
            }
        }
        return Ok(fo_code(&verdict));
    }
    let verdict = decide(&s, limits.atom_cap)?;
    if input.json {
        emit(out, &verdict_to_json(&verdict), false)?;
    } else {
        match &verdict {
            Verdict::Proved(p) => write!(out, "proved\n{}", p.render()).map_err(io)?,
            Verdict::Refuted(v) => {
                writeln!(out, "refuted").map_err(io)?;
                emit(out, &valuation_to_json(v), false)?;
            }
        }
    }
    Ok(if verdict.is_proved() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn fo_code(v: &FoVerdict) -> i32 {
    match v {
        FoVerdict::Proved(_) => EXIT_OK,
        FoVerdict::Refuted { .. } => EXIT_NEGATIVE,
        FoVerdict::Unknown(_) => EXIT_UNKNOWN,
    }
}

fn status_line(out: &mut dyn Write, status: &str, json: bool) -> Result<(), Failure> {
    if json {
        emit(out, &json!({ "status": status }), false)
    } else {
        writeln!(out, "{status}").map_err(io)
    }
}

fn validity(input: &Input, limits: &Limits, structure: Option<&str>, out: &mut dyn Write) -> Outcome {
    let s = read_sequent(input)?;
    let status = if let Some(path) = structure {
        let st = read_structure(path)?;
        if fo_falsifying_assignment(&st, &s)?.is_none() {
            "valid"
        } else {
            "invalid"
        }
    } else if input.fo {
        match decide_fo(&s, limits.budget())? {
            FoVerdict::Proved(_) => "valid",
            FoVerdict::Refuted { .. } => "invalid",
            FoVerdict::Unknown(_) => "unknown",
        }
    } else if matrix_valid(&s, limits.atom_cap)? {
        "valid"
    } else {
        "invalid"
    };
    status_line(out, status, input.json)?;
    Ok(match status {
        "valid" => EXIT_OK,
        "invalid" => EXIT_NEGATIVE,
        _ => EXIT_UNKNOWN,
    })
}

fn countermodel(input: &Input, limits: &Limits, structure: Option<&str>, out: &mut dyn Write) -> Outcome {
    let s = read_sequent(input)?;
    let model = if let Some(path) = structure {
        let st = read_structure(path)?;
        fo_falsifying_assignment(&st, &s)?.map(|a| assignment_to_json(&st, &a))
    } else if input.fo {
        match decide_fo(&s, limits.budget())? {
            FoVerdict::Proved(_) => None,
            FoVerdict::Refuted { structure, assignment } => {
                Some(json!({"structure": structure_to_json(&structure), "assignment": assignment_to_json(&structure, &assignment)}))
            }
            FoVerdict::Unknown(r) => {
                status_line(out, "unknown", input.json)?;
                if !input.json {
                    writeln!(out, "{} ({} nodes, depth {})", r.reason, r.nodes, r.depth).map_err(io)?;
                }
                return Ok(EXIT_UNKNOWN);
            }
        }
    } else {
        find_countermodel(&s, limits.atom_cap)?.map(|v| valuation_to_json(&v))
    };
    match model {
        Some(m) => {
            emit(out, &m, !input.json && input.fo && structure.is_none())?;
            Ok(EXIT_NEGATIVE)
        }
        None => {
            status_line(out, "valid", input.json)?;
            Ok(EXIT_OK)
        }
    }
}

fn calculus_name(c: Calculus) -> &'static str {
    match c {
        Calculus::GCiore => "GCiore",
        Calculus::GCiorePrime => "GCiore'",
        Calculus::GQCiore => "GQCiore",
    }
}

fn first_order(p: &Proof) -> bool {
    !p.sequent.is_propositional() || p.rule.is_quantifier() || p.premises.iter().any(first_order)
}

fn node_at<'a>(p: &'a Proof, path: &[usize]) -> Option<&'a Proof> {
    path.iter().try_fold(p, |node, &i| node.premises.get(i))
}

fn check(file: Option<&str>, allow_cut: bool, calculus: CalculusArg, json: bool, stdin: &mut dyn Read, out: &mut dyn Write) -> Outcome {
    let text = match file {
        None | Some("-") => {
            let mut buf = String::new();
            stdin.read_to_string(&mut buf).map_err(|e| Failure::Usage(format!("cannot read standard input: {e}")))?;
            buf
        }
        Some(path) => fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?,
    };
    let proof = proof_from_str(&text)?;
    let candidates = match calculus {
        CalculusArg::Gciore => vec![Calculus::GCiore],
        CalculusArg::GciorePrime => vec![Calculus::GCiorePrime],
        CalculusArg::Gqciore => vec![Calculus::GQCiore],
        CalculusArg::Auto if first_order(&proof) => vec![Calculus::GQCiore],
        CalculusArg::Auto => vec![Calculus::GCiorePrime, Calculus::GCiore],
    };
    let mut failures: Vec<(Calculus, ProofError)> = Vec::new();
    for &c in &candidates {
        match check_proof(&proof, c, allow_cut) {
            Ok(()) => {
                if json {
                    emit(out, &json!({"status": "pass", "calculus": calculus_name(c)}), false)?;
                } else {
                    writeln!(out, "pass ({})", calculus_name(c)).map_err(io)?;
                }
                return Ok(EXIT_OK);
            }
            Err(e) => failures.push((c, e)),
        }
    }
    // Report the calculus whose rules fit the proof best.
    let rules = proof.rules();
    let (c, e) = failures
        .into_iter()
        .min_by_key(|(c, _)| rules.iter().filter(|r| !c.allows(**r)).count())
        .ok_or_else(|| Failure::Internal("no calculus to check against".into()))?;
    let node = node_at(&proof, &e.path).map(|n| n.sequent.to_string()).unwrap_or_default();
    if json {
        let v = json!({"status": "fail", "calculus": calculus_name(c), "path": e.path, "sequent": node, "message": e.message});
        emit(out, &v, false)?;
    } else {
        writeln!(out, "fail ({}) at {:?}: {}", calculus_name(c), e.path, e.message).map_err(io)?;
        writeln!(out, "  node: {node}").map_err(io)?;
    }
    Ok(EXIT_NEGATIVE)
}

fn reduction_tree(input: &Input, limits: &Limits, out: &mut dyn Write) -> Outcome {
    let s = read_sequent(input)?;
    let tree = build_reduction_tree(&s, limits.budget())?;
    write!(out, "{}", tree.dump()).map_err(io)?;
    Ok(if tree.is_closed() {
        EXIT_OK
    } else if tree.exhausted {
        EXIT_UNKNOWN
    } else {
        EXIT_NEGATIVE
    })
}

/// One self-test suite: name, cases run, failure descriptions.
struct Suite {
    name: &'static str,
    cases: usize,
    failures: Vec<String>,
}

fn selftest(json: bool, out: &mut dyn Write) -> Outcome {
    let suites = [truth_table_suite(), axiom_suite()?, theorem_regression()?, fo_regression()?];
    let ok = suites.iter().all(|s| s.failures.is_empty());
    if json {
        let v: Vec<Value> = suites
            .iter()
            .map(|s| json!({"suite": s.name, "cases": s.cases, "pass": s.failures.is_empty(), "failures": s.failures}))
            .collect();
        emit(out, &json!({"status": if ok { "pass" } else { "fail" }, "suites": v}), false)?;
    } else {
        for s in &suites {
            let tag = if s.failures.is_empty() { "pass" } else { "FAIL" };
            writeln!(out, "{tag} {}: {} cases, {} failures", s.name, s.cases, s.failures.len()).map_err(io)?;
            for f in &s.failures {
                writeln!(out, "  {f}").map_err(io)?;
            }
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE })
}

fn truth_table_suite() -> Suite {
    use TruthValue::{Half, One, Zero};
    let order = [One, Half, Zero];
    let and = [[One, One, Zero], [One, Half, Zero], [Zero, Zero, Zero]];
    let or = [[One, One, One], [One, Half, One], [One, One, Zero]];
    let imp = [[One, One, Zero], [One, Half, Zero], [One, One, One]];
    let neg = [Zero, Half, One];
    let circ = [One, Zero, One];
    let mut failures = Vec::new();
    let mut cases = 0;
    for (i, &a) in order.iter().enumerate() {
        for (j, &b) in order.iter().enumerate() {
            for (name, got, want) in [("&", matrix::and(a, b), and[i][j]), ("|", matrix::or(a, b), or[i][j]), ("->", matrix::imp(a, b), imp[i][j])] {
                cases += 1;
                if got != want {
                    failures.push(format!("{a} {name} {b} = {got}, expected {want}"));
                }
            }
        }
        for (name, got, want) in [("~", matrix::neg(a), neg[i]), ("o", matrix::circ(a), circ[i])] {
            cases += 1;
            if got != want {
                failures.push(format!("{name}{a} = {got}, expected {want}"));
            }
        }
    }
    Suite { name: "truth tables", cases, failures }
}

fn axiom_suite() -> Result<Suite, Failure> {
    let samples: Vec<Formula> = ["p", "~q", "o p", "p & ~p", "o (p | q) -> ~r"]
        .iter()
        .map(|s| parse_formula(s).map_err(|e| Failure::Internal(e.to_string())))
        .collect::<Result<_, _>>()?;
    let mut failures = Vec::new();
    let mut cases = 0;
    for (name, schema) in PROPOSITIONAL_SCHEMATA {
        for a in &samples {
            for b in &samples {
                for c in &samples {
                    let phi = schema(a, b, c);
                    cases += 1;
                    if !matrix_valid(&Sequent::theorem(phi.clone()), DEFAULT_ATOM_CAP)? {
                        failures.push(format!("{name}: {phi}"));
                    }
                }
            }
        }
    }
    // Quantifier axioms over one unary predicate, in every structure of size 1 or 2.
    let bodies: Vec<Formula> = ["P(a1)", "~P(a1)", "o P(a1)", "P(a1) & ~P(a1)", "P(a1) -> P(a2)"]
        .iter()
        .map(|s| parse_formula(s).map_err(|e| Failure::Internal(e.to_string())))
        .collect::<Result<_, _>>()?;
    let mut structures = Vec::new();
    for n in 1..=2 {
        for t in Triple::all(n) {
            let st = Structure::with_size(n).and_then(|st| st.with_predicate("P", 1, t)).map_err(|e| Failure::Internal(e.to_string()))?;
            structures.push(st);
        }
    }
    for body in &bodies {
        for t in ["a1", "a2"] {
            let axioms = quantifier_axioms(body, "a1", "x", &Term::free(t)).map_err(|e| Failure::Internal(e.to_string()))?;
            for (name, phi) in axioms {
                for st in &structures {
                    cases += 1;
                    if !valid_in(st, &phi).map_err(|e| Failure::Internal(e.to_string()))? {
                        failures.push(format!("{name}: {phi} in a structure of size {}", st.size()));
                    }
                }
            }
        }
    }
    Ok(Suite { name: "axiom validity", cases, failures })
}

fn theorem_regression() -> Result<Suite, Failure> {
    let (a, b) = (Formula::prop("p"), Formula::prop("q"));
    let mut failures = Vec::new();
    let suite = theorem_suite(&a, &b);
    for (name, s) in &suite {
        match decide(s, DEFAULT_ATOM_CAP)? {
            Verdict::Proved(p) => {
                if let Err(e) = check_proof(&p, Calculus::GCiorePrime, false) {
                    failures.push(format!("{name}: proof rejected: {e}"));
                } else if !check_subformula_property(&p) {
                    failures.push(format!("{name}: proof leaves the generalized subformulas"));
                }
            }
            Verdict::Refuted(v) => failures.push(format!("{name}: refuted by {}", valuation_to_json(&v))),
        }
    }
    Ok(Suite { name: "theorems", cases: suite.len(), failures })
}

fn fo_regression() -> Result<Suite, Failure> {
    let mut failures = Vec::new();
    let suite = fo_regression_suite();
    for case in &suite {
        match case {
            FoCase::Provable { name, sequent } => match decide_fo(sequent, Budget::default())? {
                FoVerdict::Proved(p) => {
                    if let Err(e) = check_proof(&p, Calculus::GQCiore, false) {
                        failures.push(format!("{name}: proof rejected: {e}"));
                    }
                }
                other => failures.push(format!("{name}: {}", fo_verdict_to_json(&other)["status"])),
            },
            FoCase::Derived { name, rule, conclusion, premises } => match expand_derived_rule(*rule, conclusion, premises) {
                Ok(p) => {
                    if let Err(e) = check_derivation(&p, Calculus::GQCiore, true, premises) {
                        failures.push(format!("{name}: expansion rejected: {e}"));
                    }
                }
                Err(e) => failures.push(format!("{name}: {e}")),
            },
        }
    }
    Ok(Suite { name: "first-order regression", cases: suite.len(), failures })
}
