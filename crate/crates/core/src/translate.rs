//! Negative translations and the Friedman-Dragalin style substitutions.
//!
//! Every translation is defined by structural recursion and never renames
//! bound variables.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::formula::{substitute_bot, Formula};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TranslationKind {
    Kolmogorov,
    /// Gödel-Gentzen with Gentzen's implication clause.
    GoedelGentzen,
    /// Gödel's variant: `A → B` goes to `¬(GA ∧ ¬GB)`.
    GoedelOriginal,
    Kuroda,
    Krivine,
    /// `G A ∨ F`
    N1(Formula),
    /// `G A [F/⊥]`
    N2(Formula),
    /// Friedman-Dragalin: `⊥ ↦ F`, `P ↦ P ∨ F`.
    FD(Formula),
    /// Refined Friedman-Dragalin: `⊥ ↦ F` only.
    RFD(Formula),
}

/// Kinds without a parameter, as named on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KindName {
    Ko,
    G,
    Goedel,
    Ku,
    Kr,
    N1,
    N2,
    Fd,
    Rfd,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KindError {
    #[error("unknown translation kind `{0}` (expected ko, g, goedel, ku, kr, n1, n2, fd or rfd)")]
    Unknown(String),
    #[error("translation `{0}` requires a parameter formula")]
    MissingParameter(KindName),
    #[error("translation `{0}` takes no parameter formula")]
    UnexpectedParameter(KindName),
}

impl KindName {
    pub const ALL: [KindName; 9] = [
        KindName::Ko,
        KindName::G,
        KindName::Goedel,
        KindName::Ku,
        KindName::Kr,
        KindName::N1,
        KindName::N2,
        KindName::Fd,
        KindName::Rfd,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            KindName::Ko => "ko",
            KindName::G => "g",
            KindName::Goedel => "goedel",
            KindName::Ku => "ku",
            KindName::Kr => "kr",
            KindName::N1 => "n1",
            KindName::N2 => "n2",
            KindName::Fd => "fd",
            KindName::Rfd => "rfd",
        }
    }

    pub fn is_parameterised(self) -> bool {
        matches!(
            self,
            KindName::N1 | KindName::N2 | KindName::Fd | KindName::Rfd
        )
    }

    /// Attaches the parameter, rejecting a missing or superfluous one.
    pub fn with_parameter(self, param: Option<Formula>) -> Result<TranslationKind, KindError> {
        use TranslationKind as T;
        match (self, param) {
            (KindName::Ko, None) => Ok(T::Kolmogorov),
            (KindName::G, None) => Ok(T::GoedelGentzen),
            (KindName::Goedel, None) => Ok(T::GoedelOriginal),
            (KindName::Ku, None) => Ok(T::Kuroda),
            (KindName::Kr, None) => Ok(T::Krivine),
            (KindName::N1, Some(f)) => Ok(T::N1(f)),
            (KindName::N2, Some(f)) => Ok(T::N2(f)),
            (KindName::Fd, Some(f)) => Ok(T::FD(f)),
            (KindName::Rfd, Some(f)) => Ok(T::RFD(f)),
            (k, None) => Err(KindError::MissingParameter(k)),
            (k, Some(_)) => Err(KindError::UnexpectedParameter(k)),
        }
    }
}

impl fmt::Display for KindName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for KindName {
    type Err = KindError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        KindName::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| KindError::Unknown(s.to_string()))
    }
}

impl TranslationKind {
    /// The five translations that are mutually equivalent in IL.
    pub fn usual() -> [TranslationKind; 5] {
        [
            TranslationKind::Kolmogorov,
            TranslationKind::GoedelGentzen,
            TranslationKind::GoedelOriginal,
            TranslationKind::Kuroda,
            TranslationKind::Krivine,
        ]
    }

    pub fn name(&self) -> KindName {
        match self {
            TranslationKind::Kolmogorov => KindName::Ko,
            TranslationKind::GoedelGentzen => KindName::G,
            TranslationKind::GoedelOriginal => KindName::Goedel,
            TranslationKind::Kuroda => KindName::Ku,
            TranslationKind::Krivine => KindName::Kr,
            TranslationKind::N1(_) => KindName::N1,
            TranslationKind::N2(_) => KindName::N2,
            TranslationKind::FD(_) => KindName::Fd,
            TranslationKind::RFD(_) => KindName::Rfd,
        }
    }

    pub fn parameter(&self) -> Option<&Formula> {
        match self {
            TranslationKind::N1(f)
            | TranslationKind::N2(f)
            | TranslationKind::FD(f)
            | TranslationKind::RFD(f) => Some(f),
            _ => None,
        }
    }
}

impl fmt::Display for TranslationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parameter() {
            Some(p) => write!(f, "{}[{}]", self.name(), p),
            None => write!(f, "{}", self.name()),
        }
    }
}

pub fn translate(kind: &TranslationKind, a: &Formula) -> Formula {
    match kind {
        TranslationKind::Kolmogorov => kolmogorov(a),
        TranslationKind::GoedelGentzen => goedel_gentzen(a),
        TranslationKind::GoedelOriginal => goedel_original(a),
        TranslationKind::Kuroda => Formula::not_not(kuroda_inner(a)),
        TranslationKind::Krivine => Formula::not(krivine_inner(a)),
        TranslationKind::N1(f) => Formula::or(goedel_gentzen(a), f.clone()),
        TranslationKind::N2(f) => substitute_bot(&goedel_gentzen(a), f),
        TranslationKind::FD(f) => friedman_dragalin(a, f),
        TranslationKind::RFD(f) => substitute_bot(a, f),
    }
}

fn kolmogorov(a: &Formula) -> Formula {
    use Formula::*;
    match a {
        Bot => Bot,
        Atom(..) => Formula::not_not(a.clone()),
        And(l, r) => Formula::not_not(Formula::and(kolmogorov(l), kolmogorov(r))),
        Or(l, r) => Formula::not_not(Formula::or(kolmogorov(l), kolmogorov(r))),
        Imp(l, r) => Formula::not_not(Formula::imp(kolmogorov(l), kolmogorov(r))),
        Forall(x, b) => Formula::not_not(Formula::forall(x.clone(), kolmogorov(b))),
        Exists(x, b) => Formula::not_not(Formula::exists(x.clone(), kolmogorov(b))),
    }
}

fn goedel_gentzen(a: &Formula) -> Formula {
    goedel(a, false)
}

fn goedel_original(a: &Formula) -> Formula {
    goedel(a, true)
}

// The two variants share every clause except implication.
fn goedel(a: &Formula, original: bool) -> Formula {
    use Formula::*;
    match a {
        Bot => Bot,
        Atom(..) => Formula::not_not(a.clone()),
        And(l, r) => Formula::and(goedel(l, original), goedel(r, original)),
        Or(l, r) => Formula::not(Formula::and(
            Formula::not(goedel(l, original)),
            Formula::not(goedel(r, original)),
        )),
        Imp(l, r) if original => Formula::not(Formula::and(
            goedel(l, original),
            Formula::not(goedel(r, original)),
        )),
        Imp(l, r) => Formula::imp(goedel(l, original), goedel(r, original)),
        Forall(x, b) => Formula::forall(x.clone(), goedel(b, original)),
        Exists(x, b) => Formula::not(Formula::forall(
            x.clone(),
            Formula::not(goedel(b, original)),
        )),
    }
}

fn kuroda_inner(a: &Formula) -> Formula {
    use Formula::*;
    match a {
        Bot | Atom(..) => a.clone(),
        And(l, r) => Formula::and(kuroda_inner(l), kuroda_inner(r)),
        Or(l, r) => Formula::or(kuroda_inner(l), kuroda_inner(r)),
        Imp(l, r) => Formula::imp(kuroda_inner(l), kuroda_inner(r)),
        Forall(x, b) => Formula::forall(x.clone(), Formula::not_not(kuroda_inner(b))),
        Exists(x, b) => Formula::exists(x.clone(), kuroda_inner(b)),
    }
}

// ⊥ goes through the atomic clause, so the inner translation of ⊥ is ¬⊥.
fn krivine_inner(a: &Formula) -> Formula {
    use Formula::*;
    match a {
        Bot | Atom(..) => Formula::not(a.clone()),
        And(l, r) => Formula::or(krivine_inner(l), krivine_inner(r)),
        Or(l, r) => Formula::and(krivine_inner(l), krivine_inner(r)),
        Imp(l, r) => Formula::and(Formula::not(krivine_inner(l)), krivine_inner(r)),
        Forall(x, b) => Formula::exists(x.clone(), krivine_inner(b)),
        Exists(x, b) => Formula::not(Formula::exists(x.clone(), Formula::not(krivine_inner(b)))),
    }
}

fn friedman_dragalin(a: &Formula, f: &Formula) -> Formula {
    use Formula::*;
    match a {
        Bot => f.clone(),
        Atom(..) => Formula::or(a.clone(), f.clone()),
        And(l, r) => Formula::and(friedman_dragalin(l, f), friedman_dragalin(r, f)),
        Or(l, r) => Formula::or(friedman_dragalin(l, f), friedman_dragalin(r, f)),
        Imp(l, r) => Formula::imp(friedman_dragalin(l, f), friedman_dragalin(r, f)),
        Forall(x, b) => Formula::forall(x.clone(), friedman_dragalin(b, f)),
        Exists(x, b) => Formula::exists(x.clone(), friedman_dragalin(b, f)),
    }
}

/// `N2` computed directly from its unfolded clause table, without going
/// through `G` and a ⊥-substitution. Used to cross-check [`translate`].
pub fn unfold_n2_clauses(a: &Formula, f: &Formula) -> Formula {
    use Formula::*;
    let rel = |b: Formula| Formula::imp(b, f.clone());
    match a {
        Bot => f.clone(),
        Atom(..) => rel(rel(a.clone())),
        And(l, r) => Formula::and(unfold_n2_clauses(l, f), unfold_n2_clauses(r, f)),
        Or(l, r) => rel(Formula::and(
            rel(unfold_n2_clauses(l, f)),
            rel(unfold_n2_clauses(r, f)),
        )),
        Imp(l, r) => Formula::imp(unfold_n2_clauses(l, f), unfold_n2_clauses(r, f)),
        Forall(x, b) => Formula::forall(x.clone(), unfold_n2_clauses(b, f)),
        Exists(x, b) => rel(Formula::forall(x.clone(), rel(unfold_n2_clauses(b, f)))),
    }
}

/// Variables free in the parameter that the input binds; substituting the
/// parameter under such a binder would capture them.
pub fn capture_warnings(kind: &TranslationKind, a: &Formula) -> Vec<String> {
    let Some(param) = kind.parameter() else {
        return Vec::new();
    };
    let bound = a.bound_vars();
    param
        .free_vars()
        .into_iter()
        .filter(|v| bound.contains(v))
        .map(|v| {
            format!("parameter formula has free variable `{v}`, which the input also binds; it may be captured")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{is_nf, parse};

    fn t(kind: TranslationKind, text: &str) -> Formula {
        translate(&kind, &parse(text).unwrap())
    }

    fn f(text: &str) -> Formula {
        parse(text).unwrap()
    }

    #[test]
    fn goedel_gentzen_excluded_middle() {
        assert_eq!(
            t(TranslationKind::GoedelGentzen, "P | ~P"),
            f("~(~~~P & ~~~~P)")
        );
    }

    #[test]
    fn table_examples() {
        assert_eq!(t(TranslationKind::Kolmogorov, "bot"), Formula::Bot);
        assert_eq!(t(TranslationKind::Kolmogorov, "P & Q"), f("~~(~~P & ~~Q)"));
        assert_eq!(
            t(TranslationKind::Kuroda, "forall x. P(x)"),
            f("~~(forall x. ~~P(x))")
        );
        assert_eq!(t(TranslationKind::Krivine, "P -> Q"), f("~(~~P & ~Q)"));
        assert_eq!(t(TranslationKind::Krivine, "bot"), f("~~bot"));
        assert_eq!(
            t(TranslationKind::GoedelOriginal, "P -> Q"),
            f("~(~~P & ~~~Q)")
        );
        assert_eq!(
            t(TranslationKind::GoedelGentzen, "exists x. P(x)"),
            f("~(forall x. ~~~P(x))")
        );
    }

    #[test]
    fn parameterised_examples() {
        let fq = Formula::atom("F");
        assert_eq!(
            t(TranslationKind::N1(fq.clone()), "bot"),
            Formula::or(Formula::Bot, fq.clone())
        );
        assert_eq!(t(TranslationKind::N2(fq.clone()), "Q"), f("(Q -> F) -> F"));
        assert_eq!(t(TranslationKind::FD(fq.clone()), "P"), f("P | F"));
        assert_eq!(t(TranslationKind::RFD(fq.clone()), "~P"), f("P -> F"));
        assert_eq!(
            t(TranslationKind::FD(fq.clone()), "~P(x)"),
            f("P(x) | F -> F")
        );
    }

    #[test]
    fn unfolded_n2_clauses() {
        let fq = Formula::atom("F");
        assert_eq!(unfold_n2_clauses(&Formula::Bot, &fq), fq);
        assert_eq!(unfold_n2_clauses(&f("P"), &fq), f("(P -> F) -> F"));
        let (a, b) = (f("P -> Q"), f("R | Q"));
        assert_eq!(
            unfold_n2_clauses(&Formula::and(a.clone(), b.clone()), &fq),
            Formula::and(unfold_n2_clauses(&a, &fq), unfold_n2_clauses(&b, &fq))
        );
        for text in [
            "P | Q",
            "exists x. P(x) -> Q",
            "forall x. (P(x) | ~Q) & bot",
        ] {
            assert_eq!(
                unfold_n2_clauses(&f(text), &fq),
                t(TranslationKind::N2(fq.clone()), text),
                "{text}"
            );
        }
    }

    #[test]
    fn goedel_gentzen_preserves_iff() {
        let (a, b) = (f("P | Q"), f("exists x. R(x)"));
        let g = |x: &Formula| translate(&TranslationKind::GoedelGentzen, x);
        assert_eq!(
            g(&Formula::iff(a.clone(), b.clone())),
            Formula::iff(g(&a), g(&b))
        );
    }

    #[test]
    fn non_strengthening_witnesses() {
        assert!(!is_nf(&t(TranslationKind::Kuroda, "P | Q")));
        assert!(!is_nf(&t(TranslationKind::Kolmogorov, "P | Q")));
        assert!(!is_nf(&t(TranslationKind::Krivine, "P & Q")));
        let a = f("bot -> bot");
        assert!(is_nf(&a));
        assert_ne!(translate(&TranslationKind::Kolmogorov, &a), a);
    }

    #[test]
    fn kind_names() {
        for k in KindName::ALL {
            assert_eq!(k.as_str().parse::<KindName>().unwrap(), k);
        }
        assert!("nope".parse::<KindName>().is_err());
        assert_eq!(
            KindName::N1.with_parameter(None),
            Err(KindError::MissingParameter(KindName::N1))
        );
        assert_eq!(
            KindName::G.with_parameter(Some(Formula::Bot)),
            Err(KindError::UnexpectedParameter(KindName::G))
        );
        assert_eq!(
            KindName::Rfd.with_parameter(Some(Formula::Bot)),
            Ok(TranslationKind::RFD(Formula::Bot))
        );
    }

    #[test]
    fn capture_is_flagged() {
        let kind = TranslationKind::N2(f("P(x)"));
        assert_eq!(capture_warnings(&kind, &f("forall x. Q(x)")).len(), 1);
        assert!(capture_warnings(&kind, &f("forall y. Q(y)")).is_empty());
        assert!(capture_warnings(&TranslationKind::Kuroda, &f("forall x. Q(x)")).is_empty());
    }
}
