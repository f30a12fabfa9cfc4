//! Negative translations, propositional deciders and Kripke semantics.

pub mod formula;
pub mod harness;
pub mod kripke;
pub mod prove;
pub mod translate;

pub use formula::{parse, print, Formula, ParseError, Term};
pub use prove::{classify_scale, decide, equivalent, Decision, Logic, ScaleClass, Status};
pub use translate::{translate, TranslationKind};
