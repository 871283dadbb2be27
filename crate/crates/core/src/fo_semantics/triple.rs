use std::collections::BTreeSet;

use super::SemanticsError;
use crate::matrix::TruthValue;

/// A three-valued characteristic function on a finite base set `{0, …, n-1}`,
/// read as the partition `⟨plus, minus, circ⟩` into the preimages of `1`,
/// `0` and `½`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triple {
    values: Vec<TruthValue>,
}

pub type Component = BTreeSet<usize>;

impl Triple {
    pub fn from_values(values: Vec<TruthValue>) -> Triple {
        Triple { values }
    }

    pub fn constant(len: usize, t: TruthValue) -> Triple {
        Triple { values: vec![t; len] }
    }

    /// Fails unless the three sets partition `0..len`.
    pub fn from_components(len: usize, plus: &Component, minus: &Component, circ: &Component) -> Result<Triple, SemanticsError> {
        let mut values = vec![None; len];
        for (set, t) in [(plus, TruthValue::One), (minus, TruthValue::Zero), (circ, TruthValue::Half)] {
            for &i in set {
                match values.get_mut(i) {
                    None => return Err(SemanticsError::NotAPartition(format!("element {i} outside base of size {len}"))),
                    Some(Some(_)) => return Err(SemanticsError::NotAPartition(format!("element {i} in two components"))),
                    Some(slot) => *slot = Some(t),
                }
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| SemanticsError::NotAPartition(format!("element {i} in no component"))))
            .collect::<Result<_, _>>()?;
        Ok(Triple { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, i: usize) -> TruthValue {
        self.values[i]
    }

    pub fn values(&self) -> &[TruthValue] {
        &self.values
    }

    fn preimage(&self, t: TruthValue) -> Component {
        self.values.iter().enumerate().filter(|(_, v)| **v == t).map(|(i, _)| i).collect()
    }

    pub fn plus(&self) -> Component {
        self.preimage(TruthValue::One)
    }

    pub fn minus(&self) -> Component {
        self.preimage(TruthValue::Zero)
    }

    pub fn circ(&self) -> Component {
        self.preimage(TruthValue::Half)
    }

    /// Every triple over a base of size `len`.
    pub fn all(len: usize) -> impl Iterator<Item = Triple> {
        (0..3usize.pow(len as u32)).map(move |mut code| {
            let mut values = Vec::with_capacity(len);
            for _ in 0..len {
                values.push(TruthValue::ALL[code % 3]);
                code /= 3;
            }
            Triple { values }
        })
    }
}

fn same_base(r: &Triple, u: &Triple) -> Result<usize, SemanticsError> {
    if r.len() == u.len() {
        Ok(r.len())
    } else {
        Err(SemanticsError::BaseMismatch(r.len(), u.len()))
    }
}

fn union(sets: &[&Component]) -> Component {
    sets.iter().flat_map(|s| s.iter().copied()).collect()
}

fn meet(a: &Component, b: &Component) -> Component {
    a.intersection(b).copied().collect()
}

// The operations below are written in terms of components, not values.

pub fn triple_and(r: &Triple, u: &Triple) -> Result<Triple, SemanticsError> {
    let n = same_base(r, u)?;
    let (rp, rm, rc) = (r.plus(), r.minus(), r.circ());
    let (up, um, uc) = (u.plus(), u.minus(), u.circ());
    let plus = union(&[&meet(&rp, &up), &meet(&rp, &uc), &meet(&rc, &up)]);
    let minus = union(&[&rm, &um]);
    Triple::from_components(n, &plus, &minus, &meet(&rc, &uc))
}

pub fn triple_or(r: &Triple, u: &Triple) -> Result<Triple, SemanticsError> {
    let n = same_base(r, u)?;
    let (rp, rm, rc) = (r.plus(), r.minus(), r.circ());
    let (up, um, uc) = (u.plus(), u.minus(), u.circ());
    let plus = union(&[&rp, &up, &meet(&rc, &um), &meet(&rm, &uc)]);
    Triple::from_components(n, &plus, &meet(&rm, &um), &meet(&rc, &uc))
}

pub fn triple_imp(r: &Triple, u: &Triple) -> Result<Triple, SemanticsError> {
    let n = same_base(r, u)?;
    let (rp, rm, rc) = (r.plus(), r.minus(), r.circ());
    let (up, um, uc) = (u.plus(), u.minus(), u.circ());
    let plus = union(&[&rm, &up, &meet(&rp, &uc)]);
    let minus = meet(&union(&[&rp, &rc]), &um);
    Triple::from_components(n, &plus, &minus, &meet(&rc, &uc))
}

pub fn triple_not(r: &Triple) -> Triple {
    Triple::from_components(r.len(), &r.minus(), &r.plus(), &r.circ()).expect("swapping components keeps a partition")
}

pub fn triple_circ(r: &Triple) -> Triple {
    Triple::from_components(r.len(), &union(&[&r.plus(), &r.minus()]), &r.circ(), &Component::new())
        .expect("merging components keeps a partition")
}
