use std::collections::{BTreeMap, BTreeSet};

use super::{SemanticsError, Triple};
use crate::matrix::TruthValue;
use crate::syntax::Signature;

/// A finite structure. Domain elements are addressed by index; `domain`
/// holds their display names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    domain: Vec<String>,
    /// Arity and a triple over `domain^arity`, tuples in mixed radix with the
    /// first argument most significant.
    predicates: BTreeMap<String, (usize, Triple)>,
    functions: BTreeMap<String, (usize, Vec<usize>)>,
    constants: BTreeMap<String, usize>,
    propositions: BTreeMap<String, TruthValue>,
}

impl Structure {
    pub fn new(domain: Vec<String>) -> Result<Structure, SemanticsError> {
        if domain.is_empty() {
            return Err(SemanticsError::EmptyDomain);
        }
        let mut seen = BTreeSet::new();
        for d in &domain {
            if !seen.insert(d) {
                return Err(SemanticsError::DuplicateElement(d.clone()));
            }
        }
        Ok(Structure {
            domain,
            predicates: BTreeMap::new(),
            functions: BTreeMap::new(),
            constants: BTreeMap::new(),
            propositions: BTreeMap::new(),
        })
    }

    /// Domain `{m0, …, m(n-1)}`.
    pub fn with_size(n: usize) -> Result<Structure, SemanticsError> {
        Structure::new((0..n).map(|i| format!("m{i}")).collect())
    }

    pub fn with_predicate(mut self, name: &str, arity: usize, triple: Triple) -> Result<Structure, SemanticsError> {
        let need = self.size().pow(arity as u32);
        if triple.len() != need {
            return Err(SemanticsError::NotAPartition(format!("`{name}` needs {need} tuples, got {}", triple.len())));
        }
        self.predicates.insert(name.to_string(), (arity, triple));
        Ok(self)
    }

    pub fn with_function(mut self, name: &str, arity: usize, table: Vec<usize>) -> Result<Structure, SemanticsError> {
        if table.len() != self.size().pow(arity as u32) || table.iter().any(|&m| m >= self.size()) {
            return Err(SemanticsError::PartialFunction(name.to_string()));
        }
        self.functions.insert(name.to_string(), (arity, table));
        Ok(self)
    }

    pub fn with_constant(mut self, name: &str, element: usize) -> Result<Structure, SemanticsError> {
        if element >= self.size() {
            return Err(SemanticsError::UnknownElement(format!("#{element}")));
        }
        self.constants.insert(name.to_string(), element);
        Ok(self)
    }

    pub fn with_proposition(mut self, name: &str, t: TruthValue) -> Structure {
        self.propositions.insert(name.to_string(), t);
        self
    }

    pub fn size(&self) -> usize {
        self.domain.len()
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn element(&self, name: &str) -> Result<usize, SemanticsError> {
        self.domain.iter().position(|d| d == name).ok_or_else(|| SemanticsError::UnknownElement(name.to_string()))
    }

    pub fn predicates(&self) -> &BTreeMap<String, (usize, Triple)> {
        &self.predicates
    }

    pub fn functions(&self) -> &BTreeMap<String, (usize, Vec<usize>)> {
        &self.functions
    }

    pub fn constants(&self) -> &BTreeMap<String, usize> {
        &self.constants
    }

    pub fn propositions(&self) -> &BTreeMap<String, TruthValue> {
        &self.propositions
    }

    pub fn signature(&self) -> Signature {
        Signature {
            predicates: self.predicates.iter().map(|(k, (n, _))| (k.clone(), *n)).collect(),
            functions: self.functions.iter().map(|(k, (n, _))| (k.clone(), *n)).collect(),
            constants: self.constants.keys().cloned().collect(),
        }
    }

    pub fn tuple_index(&self, args: &[usize]) -> usize {
        args.iter().fold(0, |acc, &m| acc * self.size() + m)
    }

    /// All tuples of the given arity in index order.
    pub fn tuples(&self, arity: usize) -> Vec<Vec<usize>> {
        let n = self.size();
        (0..n.pow(arity as u32))
            .map(|mut code| {
                let mut t = vec![0; arity];
                for slot in t.iter_mut().rev() {
                    *slot = code % n;
                    code /= n;
                }
                t
            })
            .collect()
    }

    pub fn predicate_value(&self, name: &str, args: &[usize]) -> Result<TruthValue, SemanticsError> {
        let (arity, triple) = self.predicates.get(name).ok_or_else(|| SemanticsError::Uninterpreted(name.to_string()))?;
        if *arity != args.len() {
            return Err(SemanticsError::Arity { name: name.to_string(), expected: *arity, found: args.len() });
        }
        Ok(triple.value(self.tuple_index(args)))
    }

    pub fn apply(&self, name: &str, args: &[usize]) -> Result<usize, SemanticsError> {
        let (arity, table) = self.functions.get(name).ok_or_else(|| SemanticsError::Uninterpreted(name.to_string()))?;
        if *arity != args.len() {
            return Err(SemanticsError::Arity { name: name.to_string(), expected: *arity, found: args.len() });
        }
        Ok(table[self.tuple_index(args)])
    }

    pub fn constant(&self, name: &str) -> Result<usize, SemanticsError> {
        self.constants.get(name).copied().ok_or_else(|| SemanticsError::Uninterpreted(name.to_string()))
    }

    pub fn proposition(&self, name: &str) -> Result<TruthValue, SemanticsError> {
        self.propositions.get(name).copied().ok_or_else(|| SemanticsError::Uninterpreted(name.to_string()))
    }
}
