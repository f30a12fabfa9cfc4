//! Deciders for classical, intuitionistic and minimal propositional logic.

mod g4;
mod prop;
mod refute;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{fresh_atom, substitute_bot, Formula};
use crate::kripke::FiniteModel;
use prop::Arena;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Logic {
    Cpc,
    Ipc,
    Mpc,
}

impl Logic {
    pub const ALL: [Logic; 3] = [Logic::Cpc, Logic::Ipc, Logic::Mpc];

    pub fn as_str(self) -> &'static str {
        match self {
            Logic::Cpc => "cpc",
            Logic::Ipc => "ipc",
            Logic::Mpc => "mpc",
        }
    }
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Logic {
    type Err = ProveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "cpc" => Ok(Logic::Cpc),
            "ipc" => Ok(Logic::Ipc),
            "mpc" => Ok(Logic::Mpc),
            _ => Err(ProveError::UnknownLogic(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Provable,
    Unprovable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub logic: Logic,
    pub status: Status,
    /// Present for unprovable IPC and MPC queries. Its root does not force
    /// [`Decision::subject`].
    pub countermodel: Option<FiniteModel>,
    /// The formula actually decided: the query itself, or for MPC the query
    /// with `⊥` replaced by a fresh atom.
    #[serde(serialize_with = "serialize_formula")]
    pub subject: Formula,
}

impl Decision {
    pub fn is_provable(&self) -> bool {
        self.status == Status::Provable
    }
}

fn serialize_formula<S: serde::Serializer>(f: &Formula, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&f.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ProveError {
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("unknown logic `{0}` (expected cpc, ipc or mpc)")]
    UnknownLogic(String),
    #[error("inconsistent verdicts: {0}")]
    Inconsistent(String),
}

/// Decides `a` in `logic`, producing a countermodel when IPC/MPC fail.
pub fn decide(logic: Logic, a: &Formula) -> Result<Decision, ProveError> {
    let subject = subject(logic, a);
    let mut arena = Arena::for_formulas([&subject])?;
    let id = arena.add(&subject);
    let provable = match logic {
        Logic::Cpc => arena.classical_witness(&[], &[id]).is_none() && cpc_fallback(&arena, id),
        Logic::Ipc | Logic::Mpc => g4::G4::new(&mut arena).prove(BTreeSet::new(), id),
    };
    let countermodel = if provable || logic == Logic::Cpc {
        None
    } else {
        let world = refute::Refuter::new(&arena)
            .refute(BTreeSet::new(), BTreeSet::from([id]))
            .expect("proof search and countermodel search disagree");
        Some(refute::minimise(refute::to_model(&arena, &world), &subject))
    };
    Ok(Decision {
        logic,
        status: if provable {
            Status::Provable
        } else {
            Status::Unprovable
        },
        countermodel,
        subject,
    })
}

/// Like [`decide`] without building a countermodel.
pub fn is_provable(logic: Logic, a: &Formula) -> Result<bool, ProveError> {
    let subject = subject(logic, a);
    let mut arena = Arena::for_formulas([&subject])?;
    let id = arena.add(&subject);
    Ok(match logic {
        Logic::Cpc => arena.classical_witness(&[], &[id]).is_none() && cpc_fallback(&arena, id),
        Logic::Ipc | Logic::Mpc => g4::G4::new(&mut arena).prove(BTreeSet::new(), id),
    })
}

/// Decides `a ↔ b`.
pub fn equivalent(logic: Logic, a: &Formula, b: &Formula) -> Result<Decision, ProveError> {
    decide(logic, &Formula::iff(a.clone(), b.clone()))
}

/// The formula handed to the propositional decider for `logic`.
pub fn subject(logic: Logic, a: &Formula) -> Formula {
    match logic {
        Logic::Mpc => {
            let f = Formula::atom(fresh_atom(&a.predicates()));
            substitute_bot(a, &f)
        }
        Logic::Cpc | Logic::Ipc => a.clone(),
    }
}

/// Truth tables are disabled above a size limit; enumerate valuations
/// directly instead.
fn cpc_fallback(arena: &Arena, id: prop::Id) -> bool {
    if arena.has_tables() {
        return true;
    }
    let n = arena.atom_count();
    assert!(n < 32, "too many atoms for classical enumeration");
    (0..1u64 << n).all(|row| eval_row(arena, id, row))
}

fn eval_row(arena: &Arena, id: prop::Id, row: u64) -> bool {
    match arena.node(id) {
        prop::Node::Bot => false,
        prop::Node::Atom(i) => (row >> i) & 1 == 1,
        prop::Node::And(a, b) => eval_row(arena, a, row) && eval_row(arena, b, row),
        prop::Node::Or(a, b) => eval_row(arena, a, row) || eval_row(arena, b, row),
        prop::Node::Imp(a, b) => !eval_row(arena, a, row) || eval_row(arena, b, row),
    }
}

/// The five classes of the provability/refutability scale.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScaleClass {
    StronglyProvable,
    ProvableNotStrongly,
    Undecidable,
    RefutableNotStrongly,
    StronglyRefutable,
}

impl ScaleClass {
    pub const ALL: [ScaleClass; 5] = [
        ScaleClass::StronglyProvable,
        ScaleClass::ProvableNotStrongly,
        ScaleClass::Undecidable,
        ScaleClass::RefutableNotStrongly,
        ScaleClass::StronglyRefutable,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ScaleClass::StronglyProvable => "strongly-provable",
            ScaleClass::ProvableNotStrongly => "provable-not-strongly",
            ScaleClass::Undecidable => "undecidable",
            ScaleClass::RefutableNotStrongly => "refutable-not-strongly",
            ScaleClass::StronglyRefutable => "strongly-refutable",
        }
    }
}

impl fmt::Display for ScaleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Places `a` on the scale from CPC and IPC verdicts on `a` and `¬a`.
pub fn classify_scale(a: &Formula) -> Result<ScaleClass, ProveError> {
    let not_a = Formula::not(a.clone());
    let cpc_a = is_provable(Logic::Cpc, a)?;
    let ipc_a = is_provable(Logic::Ipc, a)?;
    let cpc_n = is_provable(Logic::Cpc, &not_a)?;
    let ipc_n = is_provable(Logic::Ipc, &not_a)?;
    match (cpc_a, ipc_a, cpc_n, ipc_n) {
        (true, true, false, false) => Ok(ScaleClass::StronglyProvable),
        (true, false, false, false) => Ok(ScaleClass::ProvableNotStrongly),
        (false, false, false, false) => Ok(ScaleClass::Undecidable),
        (false, false, true, false) => Ok(ScaleClass::RefutableNotStrongly),
        (false, false, true, true) => Ok(ScaleClass::StronglyRefutable),
        other => Err(ProveError::Inconsistent(format!(
            "CPC/IPC verdicts on the formula and its negation: {other:?}"
        ))),
    }
}
