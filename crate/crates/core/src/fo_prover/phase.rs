use std::fmt;

use crate::sequent::{RuleId, Side};

/// The 27 reduction phases, visited cyclically: stage `k` runs phase
/// `k mod 27`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phase {
    CircL,
    CircR,
    NegR,
    NegCircL,
    AndL,
    AndR,
    OrL,
    OrR,
    ImpL,
    ImpR,
    NegOrL,
    NegOrR,
    NegAndL,
    NegAndR,
    NegImpL,
    NegImpR,
    NegNegL,
    NegNegR,
    ForallL,
    ForallR,
    ExistsL,
    ExistsR,
    CircForallL,
    CircForallR,
    CircExistsL,
    CircExistsR,
    Copy,
}

/// How a phase picks principals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Each formula is reduced once per branch.
    Once,
    /// Reapplied with the next available variable not yet used for it.
    Instantiate,
    /// Once per formula, with a new variable.
    Eigen,
    Idle,
}

impl Phase {
    pub const ALL: [Phase; 27] = [
        Phase::CircL,
        Phase::CircR,
        Phase::NegR,
        Phase::NegCircL,
        Phase::AndL,
        Phase::AndR,
        Phase::OrL,
        Phase::OrR,
        Phase::ImpL,
        Phase::ImpR,
        Phase::NegOrL,
        Phase::NegOrR,
        Phase::NegAndL,
        Phase::NegAndR,
        Phase::NegImpL,
        Phase::NegImpR,
        Phase::NegNegL,
        Phase::NegNegR,
        Phase::ForallL,
        Phase::ForallR,
        Phase::ExistsL,
        Phase::ExistsR,
        Phase::CircForallL,
        Phase::CircForallR,
        Phase::CircExistsL,
        Phase::CircExistsR,
        Phase::Copy,
    ];

    pub fn of_stage(k: usize) -> Phase {
        Phase::ALL[k % 27]
    }

    /// The rule each principal is reduced with. The negated binary phases on
    /// the right use the four-premise rule for disjunction and the invertible
    /// variants for conjunction and implication.
    pub fn rule(self) -> Option<RuleId> {
        use RuleId as R;
        Some(match self {
            Phase::CircL => R::CircL,
            Phase::CircR => R::CircR,
            Phase::NegR => R::NegR,
            Phase::NegCircL => R::NegCircL,
            Phase::AndL => R::AndL,
            Phase::AndR => R::AndR,
            Phase::OrL => R::OrL,
            Phase::OrR => R::OrR,
            Phase::ImpL => R::ImpL,
            Phase::ImpR => R::ImpR,
            Phase::NegOrL => R::NegOrL,
            Phase::NegOrR => R::NegOrR,
            Phase::NegAndL => R::NegAndL,
            Phase::NegAndR => R::NegAndR2,
            Phase::NegImpL => R::NegImpL,
            Phase::NegImpR => R::NegImpR2,
            Phase::NegNegL => R::NegNegL,
            Phase::NegNegR => R::NegNegR,
            Phase::ForallL => R::ForallL,
            Phase::ForallR => R::ForallR,
            Phase::ExistsL => R::ExistsL,
            Phase::ExistsR => R::ExistsR,
            Phase::CircForallL => R::CircForallL,
            Phase::CircForallR => R::CircForallR,
            Phase::CircExistsL => R::CircExistsL,
            Phase::CircExistsR => R::CircExistsR,
            Phase::Copy => return None,
        })
    }

    pub fn side(self) -> Side {
        match self {
            Phase::CircL
            | Phase::NegCircL
            | Phase::AndL
            | Phase::OrL
            | Phase::ImpL
            | Phase::NegOrL
            | Phase::NegAndL
            | Phase::NegImpL
            | Phase::NegNegL
            | Phase::ForallL
            | Phase::ExistsL
            | Phase::CircForallL
            | Phase::CircExistsL
            | Phase::Copy => Side::Left,
            _ => Side::Right,
        }
    }

    pub fn mode(self) -> Mode {
        match self {
            Phase::Copy => Mode::Idle,
            Phase::ForallL | Phase::ExistsR | Phase::CircForallR | Phase::CircExistsR => Mode::Instantiate,
            Phase::ForallR | Phase::ExistsL | Phase::CircForallL | Phase::CircExistsL => Mode::Eigen,
            _ => Mode::Once,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Phase::CircL => "(o=>)",
            Phase::CircR => "(=>o)",
            Phase::NegR => "(=>~)",
            Phase::NegCircL => "(~o=>)",
            Phase::AndL => "(&=>)",
            Phase::AndR => "(=>&)",
            Phase::OrL => "(|=>)",
            Phase::OrR => "(=>|)",
            Phase::ImpL => "(->=>)",
            Phase::ImpR => "(=>->)",
            Phase::NegOrL => "(~|=>)",
            Phase::NegOrR => "(=>~|)",
            Phase::NegAndL => "(~&=>)",
            Phase::NegAndR => "(=>~&)",
            Phase::NegImpL => "(~->=>)",
            Phase::NegImpR => "(=>~->)",
            Phase::NegNegL => "(~~=>)",
            Phase::NegNegR => "(=>~~)",
            Phase::ForallL => "(forall=>)",
            Phase::ForallR => "(=>forall)",
            Phase::ExistsL => "(exists=>)",
            Phase::ExistsR => "(=>exists)",
            Phase::CircForallL => "(oforall=>)",
            Phase::CircForallR => "(=>oforall)",
            Phase::CircExistsL => "(oexists=>)",
            Phase::CircExistsR => "(=>oexists)",
            Phase::Copy => "(copy)",
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}
