use super::{chain_threshold, forces_finite, GraftChild, GraftedModel, KripkeError, Threshold};
use crate::formula::{substitute_var, Formula, Term};

/// Forcing at the fresh root of a grafted model.
///
/// Every node above the root lies in exactly one child, and each child is an
/// up-closed submodel, so `→` and `∀` at the root reduce to a local check
/// plus the same formula at every child's bottom node.
pub fn forces_grafted(m: &GraftedModel, a: &Formula) -> Result<bool, KripkeError> {
    let violations = m.validate();
    if !violations.is_empty() {
        return Err(KripkeError::Malformed(violations));
    }
    at_root(m, a)
}

fn at_root(m: &GraftedModel, a: &Formula) -> Result<bool, KripkeError> {
    match a {
        Formula::Bot => Ok(false),
        Formula::Atom(p, args) => {
            let args = args
                .iter()
                .map(|t| match t {
                    Term::Elem(d) => Ok(*d),
                    Term::Var(v) => Err(KripkeError::FreeVariable(v.clone())),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(m.root_atoms.iter().any(|r| r.pred == *p && r.args == args))
        }
        Formula::And(l, r) => Ok(at_root(m, l)? && at_root(m, r)?),
        Formula::Or(l, r) => Ok(at_root(m, l)? || at_root(m, r)?),
        Formula::Imp(l, r) => {
            let here = !at_root(m, l)? || at_root(m, r)?;
            Ok(here && children_force(m, a)?)
        }
        Formula::Forall(x, body) => {
            for &d in &m.root_domain {
                if !at_root(m, &substitute_var(body, x, d))? {
                    return Ok(false);
                }
            }
            children_force(m, a)
        }
        Formula::Exists(x, body) => {
            for &d in &m.root_domain {
                if at_root(m, &substitute_var(body, x, d))? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

fn children_force(m: &GraftedModel, a: &Formula) -> Result<bool, KripkeError> {
    for child in &m.children {
        let forced = match child {
            GraftChild::Finite(k) => forces_finite(k, k.root, a)?,
            GraftChild::Chain(c) => chain_threshold(c, a)? == Threshold::At(0),
        };
        if !forced {
            return Ok(false);
        }
    }
    Ok(true)
}
