//! First-order formulas over `⊥, ∧, ∨, →, ∀, ∃`.
//!
//! Negation and bi-implication are not constructors: `¬A` is `A → ⊥` and
//! `A ↔ B` is `(A → B) ∧ (B → A)`. Equality is literal syntactic equality,
//! bound variable names included.

mod parser;
mod printer;

use std::collections::BTreeSet;
use std::fmt;

pub use parser::{parse, ParseError};
pub use printer::print;

/// Reserved spelling of falsum in the text syntax.
pub const BOT_TOKEN: &str = "bot";

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    /// A domain element substituted in during Kripke evaluation.
    Elem(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Bot,
    Atom(String, Vec<Term>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    /// Nullary atom.
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into(), Vec::new())
    }

    /// Atom applied to variables.
    pub fn pred(name: impl Into<String>, vars: &[&str]) -> Formula {
        Formula::Atom(
            name.into(),
            vars.iter().map(|v| Term::Var(v.to_string())).collect(),
        )
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::imp(a, Formula::Bot)
    }

    pub fn not_not(a: Formula) -> Formula {
        Formula::not(Formula::not(a))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    pub fn forall(var: impl Into<String>, body: Formula) -> Formula {
        Formula::Forall(var.into(), Box::new(body))
    }

    pub fn exists(var: impl Into<String>, body: Formula) -> Formula {
        Formula::Exists(var.into(), Box::new(body))
    }

    /// Returns `A` when `self` is `A → ⊥`.
    pub fn as_negation(&self) -> Option<&Formula> {
        match self {
            Formula::Imp(a, b) if **b == Formula::Bot => Some(a),
            _ => None,
        }
    }

    /// Returns `(A, B)` when `self` is literally `(A → B) ∧ (B → A)`.
    pub fn as_iff(&self) -> Option<(&Formula, &Formula)> {
        if let Formula::And(l, r) = self {
            if let (Formula::Imp(a, b), Formula::Imp(b2, a2)) = (&**l, &**r) {
                if a == a2 && b == b2 {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Atom(..))
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Bot | Formula::Atom(..) => 1,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.size() + b.size(),
            Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + a.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Bot | Formula::Atom(..) => 0,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                1 + a.depth().max(b.depth())
            }
            Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + a.depth(),
        }
    }

    pub fn has_quantifiers(&self) -> bool {
        match self {
            Formula::Bot | Formula::Atom(..) => false,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.has_quantifiers() || b.has_quantifiers()
            }
            Formula::Forall(..) | Formula::Exists(..) => true,
        }
    }

    /// Quantifier-free with only nullary atoms.
    pub fn is_propositional(&self) -> bool {
        match self {
            Formula::Bot => true,
            Formula::Atom(_, args) => args.is_empty(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.is_propositional() && b.is_propositional()
            }
            Formula::Forall(..) | Formula::Exists(..) => false,
        }
    }

    /// Names of all predicates occurring in the formula.
    pub fn predicates(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_predicates(&mut out);
        out
    }

    fn collect_predicates(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Bot => {}
            Formula::Atom(p, _) => {
                out.insert(p.clone());
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_predicates(out);
                b.collect_predicates(out);
            }
            Formula::Forall(_, a) | Formula::Exists(_, a) => a.collect_predicates(out),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free_vars(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free_vars(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Bot => {}
            Formula::Atom(_, args) => {
                for t in args {
                    if let Term::Var(v) = t {
                        if !bound.contains(v) {
                            out.insert(v.clone());
                        }
                    }
                }
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_free_vars(bound, out);
                b.collect_free_vars(bound, out);
            }
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                bound.push(x.clone());
                a.collect_free_vars(bound, out);
                bound.pop();
            }
        }
    }

    /// Variables bound by some quantifier in the formula.
    pub fn bound_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_bound_vars(&mut out);
        out
    }

    fn collect_bound_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Bot | Formula::Atom(..) => {}
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_bound_vars(out);
                b.collect_bound_vars(out);
            }
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                out.insert(x.clone());
                a.collect_bound_vars(out);
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// Membership in the negative fragment: `⊥`, `¬P` for atomic `P`, closed
/// under `∧`, `→` and `∀`.
pub fn is_nf(f: &Formula) -> bool {
    match f {
        Formula::Bot => true,
        Formula::Imp(a, b) if a.is_atomic() && **b == Formula::Bot => true,
        Formula::And(a, b) | Formula::Imp(a, b) => is_nf(a) && is_nf(b),
        Formula::Forall(_, a) => is_nf(a),
        Formula::Atom(..) | Formula::Or(..) | Formula::Exists(..) => false,
    }
}

/// Replaces every `⊥` leaf of `f` by `g`.
pub fn substitute_bot(f: &Formula, g: &Formula) -> Formula {
    match f {
        Formula::Bot => g.clone(),
        Formula::Atom(..) => f.clone(),
        Formula::And(a, b) => Formula::and(substitute_bot(a, g), substitute_bot(b, g)),
        Formula::Or(a, b) => Formula::or(substitute_bot(a, g), substitute_bot(b, g)),
        Formula::Imp(a, b) => Formula::imp(substitute_bot(a, g), substitute_bot(b, g)),
        Formula::Forall(x, a) => Formula::forall(x.clone(), substitute_bot(a, g)),
        Formula::Exists(x, a) => Formula::exists(x.clone(), substitute_bot(a, g)),
    }
}

/// Replaces the free occurrences of variable `x` by the domain element `d`.
pub fn substitute_var(f: &Formula, x: &str, d: u64) -> Formula {
    match f {
        Formula::Bot => Formula::Bot,
        Formula::Atom(p, args) => Formula::Atom(
            p.clone(),
            args.iter()
                .map(|t| match t {
                    Term::Var(v) if v == x => Term::Elem(d),
                    _ => t.clone(),
                })
                .collect(),
        ),
        Formula::And(a, b) => Formula::and(substitute_var(a, x, d), substitute_var(b, x, d)),
        Formula::Or(a, b) => Formula::or(substitute_var(a, x, d), substitute_var(b, x, d)),
        Formula::Imp(a, b) => Formula::imp(substitute_var(a, x, d), substitute_var(b, x, d)),
        Formula::Forall(y, _) | Formula::Exists(y, _) if y == x => f.clone(),
        Formula::Forall(y, a) => Formula::forall(y.clone(), substitute_var(a, x, d)),
        Formula::Exists(y, a) => Formula::exists(y.clone(), substitute_var(a, x, d)),
    }
}

/// Rewrites every `¬¬¬P` (`P` a non-⊥ atom) to `¬P`, to a fixed point.
pub fn collapse_triple_negation(f: &Formula) -> Formula {
    // Children are normalised first, so a single check per node suffices:
    // the rewrite result `¬P` never contains a new redex.
    let rebuilt = match f {
        Formula::Bot | Formula::Atom(..) => return f.clone(),
        Formula::And(a, b) => {
            Formula::and(collapse_triple_negation(a), collapse_triple_negation(b))
        }
        Formula::Or(a, b) => Formula::or(collapse_triple_negation(a), collapse_triple_negation(b)),
        Formula::Imp(a, b) => {
            Formula::imp(collapse_triple_negation(a), collapse_triple_negation(b))
        }
        Formula::Forall(x, a) => Formula::forall(x.clone(), collapse_triple_negation(a)),
        Formula::Exists(x, a) => Formula::exists(x.clone(), collapse_triple_negation(a)),
    };
    match triple_negated_atom(&rebuilt) {
        Some(p) => Formula::not(p.clone()),
        None => rebuilt,
    }
}

fn triple_negated_atom(f: &Formula) -> Option<&Formula> {
    let p = f.as_negation()?.as_negation()?.as_negation()?;
    p.is_atomic().then_some(p)
}

/// First name `_f0`, `_f1`, ... not in `avoid`.
pub fn fresh_atom(avoid: &BTreeSet<String>) -> String {
    (0u64..)
        .map(|i| format!("_f{i}"))
        .find(|name| !avoid.contains(name) && name != BOT_TOKEN)
        .expect("unbounded name supply")
}
