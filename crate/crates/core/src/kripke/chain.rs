use std::cmp::{max, min};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{KripkeError, OmegaChainModel};
use crate::formula::{Formula, Term};

/// Least chain node forcing a formula. The forcing set is `[t, ∞)` for
/// `At(t)` and empty for `Never`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Threshold {
    At(u64),
    Never,
}

impl Threshold {
    pub fn is_finite(self) -> bool {
        matches!(self, Threshold::At(_))
    }

    /// Whether node `k` is in the forcing set.
    pub fn forced_at(self, k: u64) -> bool {
        matches!(self, Threshold::At(t) if t <= k)
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::At(t) => write!(f, "{t}"),
            Threshold::Never => f.write_str("inf"),
        }
    }
}

impl Serialize for Threshold {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Threshold::At(t) => s.serialize_u64(*t),
            Threshold::Never => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Threshold {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(t) => Ok(Threshold::At(t)),
            Raw::Text(s) if s == "inf" => Ok(Threshold::Never),
            Raw::Text(s) => Err(serde::de::Error::custom(format!(
                "threshold must be a natural number or \"inf\", got {s:?}"
            ))),
        }
    }
}

/// Eventual behaviour of a [`ThresholdFn`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tail {
    /// `t(d) = c`
    Const(u64),
    /// `t(d) = d + b`
    Linear(u64),
    NeverForced,
}

impl Tail {
    fn at(self, d: u64) -> Threshold {
        match self {
            Tail::Const(c) => Threshold::At(c),
            Tail::Linear(b) => Threshold::At(d + b),
            Tail::NeverForced => Threshold::Never,
        }
    }

    // From this argument on, the order between the two tails no longer changes.
    fn stable_from(self, other: Tail) -> u64 {
        match (self, other) {
            (Tail::Const(a), Tail::Linear(b)) | (Tail::Linear(b), Tail::Const(a)) => {
                (a + 1).saturating_sub(b)
            }
            _ => 0,
        }
    }

    fn min(self, other: Tail) -> Tail {
        use Tail::*;
        match (self, other) {
            (NeverForced, x) | (x, NeverForced) => x,
            (Const(a), Const(b)) => Const(a.min(b)),
            (Linear(a), Linear(b)) => Linear(a.min(b)),
            (Const(a), Linear(_)) | (Linear(_), Const(a)) => Const(a),
        }
    }

    fn max(self, other: Tail) -> Tail {
        use Tail::*;
        match (self, other) {
            (NeverForced, _) | (_, NeverForced) => NeverForced,
            (Const(a), Const(b)) => Const(a.max(b)),
            (Linear(a), Linear(b)) => Linear(a.max(b)),
            (Const(_), Linear(b)) | (Linear(b), Const(_)) => Linear(b),
        }
    }

    fn implies(self, other: Tail) -> Tail {
        use Tail::*;
        match (self, other) {
            (NeverForced, _) => Const(0),
            (_, NeverForced) => NeverForced,
            (Const(a), Const(b)) => {
                if a >= b {
                    Const(0)
                } else {
                    Const(b)
                }
            }
            (Linear(a), Linear(b)) => {
                if a >= b {
                    Const(0)
                } else {
                    Linear(b)
                }
            }
            (Linear(_), Const(_)) => Const(0),
            (Const(_), Linear(b)) => Linear(b),
        }
    }
}

/// Threshold of a formula as a function of the one free variable being
/// eliminated: explicit values below `prefix.len()`, then `tail`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThresholdFn {
    pub prefix: Vec<Threshold>,
    pub tail: Tail,
}

fn implies(a: Threshold, b: Threshold) -> Threshold {
    if a >= b {
        Threshold::At(0)
    } else {
        b
    }
}

impl ThresholdFn {
    pub fn constant(t: Threshold) -> ThresholdFn {
        ThresholdFn {
            prefix: Vec::new(),
            tail: match t {
                Threshold::At(c) => Tail::Const(c),
                Threshold::Never => Tail::NeverForced,
            },
        }
    }

    pub fn linear(offset: u64) -> ThresholdFn {
        ThresholdFn {
            prefix: Vec::new(),
            tail: Tail::Linear(offset),
        }
    }

    pub fn at(&self, d: u64) -> Threshold {
        match self.prefix.get(d as usize) {
            Some(&t) => t,
            None => self.tail.at(d),
        }
    }

    fn combine(
        &self,
        other: &ThresholdFn,
        point: fn(Threshold, Threshold) -> Threshold,
        tail: fn(Tail, Tail) -> Tail,
    ) -> ThresholdFn {
        let len = self
            .prefix
            .len()
            .max(other.prefix.len())
            .max(self.tail.stable_from(other.tail) as usize);
        let prefix = (0..len as u64)
            .map(|d| point(self.at(d), other.at(d)))
            .collect();
        ThresholdFn {
            prefix,
            tail: tail(self.tail, other.tail),
        }
        .trimmed()
    }

    pub fn pointwise_min(&self, other: &ThresholdFn) -> ThresholdFn {
        self.combine(other, min, Tail::min)
    }

    pub fn pointwise_max(&self, other: &ThresholdFn) -> ThresholdFn {
        self.combine(other, max, Tail::max)
    }

    /// Implication on a linear frame: forced everywhere when the antecedent
    /// comes no earlier than the consequent, otherwise from the consequent on.
    pub fn implies(&self, other: &ThresholdFn) -> ThresholdFn {
        self.combine(other, implies, Tail::implies)
    }

    // Drop prefix entries the tail already predicts.
    fn trimmed(mut self) -> ThresholdFn {
        while let Some(&last) = self.prefix.last() {
            if last == self.tail.at(self.prefix.len() as u64 - 1) {
                self.prefix.pop();
            } else {
                break;
            }
        }
        self
    }

    /// `∃x A`: least node `k` with some `d ≤ k` such that `k` forces `A(d)`.
    pub fn eliminate_exists(&self) -> Threshold {
        let c = self.prefix.len() as u64;
        let from_prefix = self
            .prefix
            .iter()
            .enumerate()
            .map(|(d, &t)| max(Threshold::At(d as u64), t))
            .min()
            .unwrap_or(Threshold::Never);
        let from_tail = match self.tail {
            Tail::Const(a) => Threshold::At(max(c, a)),
            Tail::Linear(b) => Threshold::At(c + b),
            Tail::NeverForced => Threshold::Never,
        };
        min(from_prefix, from_tail)
    }

    /// `∀x A`: least `k` such that every `k' ≥ k` forces `A(d)` for all
    /// `d ≤ k'`, i.e. `k' ≥ max_{d ≤ k'} t(d)`.
    pub fn eliminate_forall(&self) -> Threshold {
        let c = self.prefix.len() as u64;
        let mut running = Threshold::At(0);
        let mut last_failure: Option<u64> = None;
        for (k, &t) in self.prefix.iter().enumerate() {
            running = max(running, t);
            if !running.forced_at(k as u64) {
                last_failure = Some(k as u64);
            }
        }
        let tail_max = match self.tail {
            Tail::NeverForced => Threshold::Never,
            Tail::Linear(b) if b > 0 => Threshold::Never,
            // t(d) = d: from `c` on the running max is max(prefix max, k')
            Tail::Linear(_) => running,
            Tail::Const(a) => max(running, Threshold::At(a)),
        };
        match tail_max {
            Threshold::Never => Threshold::Never,
            Threshold::At(m) if m > c => Threshold::At(m),
            Threshold::At(_) => last_failure.map_or(Threshold::At(0), |k| Threshold::At(k + 1)),
        }
    }
}

/// Least node of the chain forcing the closed formula `a`.
pub fn chain_threshold(m: &OmegaChainModel, a: &Formula) -> Result<Threshold, KripkeError> {
    let violations = m.validate();
    if !violations.is_empty() {
        return Err(KripkeError::Malformed(violations));
    }
    let f = ChainEval { model: m }.eval(a, &mut Vec::new())?;
    Ok(f.at(0))
}

struct ChainEval<'m> {
    model: &'m OmegaChainModel,
}

impl ChainEval<'_> {
    // `bound` is the quantifier stack; only its last entry may occur free.
    fn eval(&self, a: &Formula, bound: &mut Vec<String>) -> Result<ThresholdFn, KripkeError> {
        match a {
            Formula::Bot => Ok(ThresholdFn::constant(Threshold::Never)),
            Formula::Atom(p, args) => self.atom(p, args, bound),
            Formula::And(l, r) => Ok(self.eval(l, bound)?.pointwise_max(&self.eval(r, bound)?)),
            Formula::Or(l, r) => Ok(self.eval(l, bound)?.pointwise_min(&self.eval(r, bound)?)),
            Formula::Imp(l, r) => Ok(self.eval(l, bound)?.implies(&self.eval(r, bound)?)),
            Formula::Forall(x, body) | Formula::Exists(x, body) => {
                bound.push(x.clone());
                let inner = self.eval(body, bound);
                bound.pop();
                let inner = inner?;
                let t = if matches!(a, Formula::Forall(..)) {
                    inner.eliminate_forall()
                } else {
                    inner.eliminate_exists()
                };
                Ok(ThresholdFn::constant(t))
            }
        }
    }

    fn atom(&self, p: &str, args: &[Term], bound: &[String]) -> Result<ThresholdFn, KripkeError> {
        match (args, self.model.unary.get(p), self.model.nullary.get(p)) {
            ([], None, Some(&t)) => Ok(ThresholdFn::constant(t)),
            ([arg], Some(&offset), None) => match arg {
                Term::Elem(d) => Ok(ThresholdFn::constant(Threshold::At(d + offset))),
                Term::Var(v) if bound.last() == Some(v) => Ok(ThresholdFn::linear(offset)),
                Term::Var(v) if bound.contains(v) => {
                    Err(KripkeError::UnsupportedNesting(v.clone()))
                }
                Term::Var(v) => Err(KripkeError::FreeVariable(v.clone())),
            },
            (_, None, None) => Err(KripkeError::UnknownPredicate(p.to_string())),
            (_, Some(_), _) => Err(KripkeError::Arity {
                pred: p.to_string(),
                expected: 1,
                got: args.len(),
            }),
            (_, None, Some(_)) => Err(KripkeError::Arity {
                pred: p.to_string(),
                expected: 0,
                got: args.len(),
            }),
        }
    }
}

/// Forcing at node `k` by direct evaluation, for quantifier-free formulas
/// over nullary atoms. Nodes at or above the largest finite atom threshold
/// `T` all agree with the classical valuation "atom holds iff its threshold
/// is finite"; below `T` implications are checked against every later node.
pub fn chain_forces_bruteforce(
    m: &OmegaChainModel,
    a: &Formula,
    k: u64,
) -> Result<bool, KripkeError> {
    if a.has_quantifiers() {
        return Err(KripkeError::Unsupported(
            "quantifiers in brute-force chain evaluation".into(),
        ));
    }
    let mut stabilization = 0u64;
    for p in a.predicates() {
        if m.unary.contains_key(&p) {
            return Err(KripkeError::Unsupported(format!(
                "unary atom `{p}` in brute-force chain evaluation"
            )));
        }
        match m.nullary.get(&p) {
            Some(Threshold::At(t)) => stabilization = stabilization.max(*t),
            Some(Threshold::Never) => {}
            None => return Err(KripkeError::UnknownPredicate(p)),
        }
    }
    if !a.is_propositional() {
        return Err(KripkeError::Unsupported("atom with arguments".into()));
    }
    let column = brute(m, a, stabilization);
    Ok(column[k.min(stabilization) as usize])
}

// Truth at nodes 0..=top, where index `top` stands for every node >= top.
fn brute(m: &OmegaChainModel, a: &Formula, top: u64) -> Vec<bool> {
    let n = top as usize + 1;
    match a {
        Formula::Bot => vec![false; n],
        Formula::Atom(p, _) => {
            let t = m.nullary[p];
            (0..n as u64).map(|k| t.forced_at(k)).collect()
        }
        Formula::And(l, r) => {
            let (l, r) = (brute(m, l, top), brute(m, r, top));
            l.iter().zip(&r).map(|(x, y)| *x && *y).collect()
        }
        Formula::Or(l, r) => {
            let (l, r) = (brute(m, l, top), brute(m, r, top));
            l.iter().zip(&r).map(|(x, y)| *x || *y).collect()
        }
        Formula::Imp(l, r) => {
            let (l, r) = (brute(m, l, top), brute(m, r, top));
            let mut out = vec![false; n];
            let mut later_ok = true;
            for k in (0..n).rev() {
                later_ok = later_ok && (!l[k] || r[k]);
                out[k] = later_ok;
            }
            out
        }
        Formula::Forall(..) | Formula::Exists(..) => unreachable!("rejected above"),
    }
}
