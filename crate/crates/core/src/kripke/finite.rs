use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::{FiniteModel, Frame, KripkeError, NodeId};
use crate::formula::{Formula, Term};

/// Whether node `n` of `m` forces the closed formula `a`.
pub fn forces_finite(m: &FiniteModel, n: NodeId, a: &Formula) -> Result<bool, KripkeError> {
    let set = forcing_set(m, a)?;
    m.nodes
        .iter()
        .position(|&x| x == n)
        .map(|i| set[i])
        .ok_or(KripkeError::UnknownNode(n))
}

/// Forcing status of `a` at every node, in the order of `m.nodes`.
pub fn forcing_set(m: &FiniteModel, a: &Formula) -> Result<Vec<bool>, KripkeError> {
    let violations = m.validate();
    if !violations.is_empty() {
        return Err(KripkeError::Malformed(violations));
    }
    let eval = Evaluator::new(m);
    eval.eval(a, &mut Vec::new())
}

struct Evaluator<'m> {
    frame: Frame,
    domains: Vec<&'m BTreeSet<u64>>,
    universe: BTreeSet<u64>,
    atoms: HashSet<(usize, &'m str, &'m [u64])>,
}

impl<'m> Evaluator<'m> {
    fn new(m: &'m FiniteModel) -> Self {
        let frame = Frame::new(m);
        let domains: Vec<_> = m.nodes.iter().map(|n| &m.domains[n]).collect();
        let universe = domains.iter().flat_map(|d| d.iter().copied()).collect();
        let atoms = m
            .atoms
            .iter()
            .map(|a| (frame.index[&a.node], a.pred.as_str(), a.args.as_slice()))
            .collect();
        Evaluator {
            frame,
            domains,
            universe,
            atoms,
        }
    }

    fn len(&self) -> usize {
        self.domains.len()
    }

    // Forcing sets are computed bottom-up per subformula instance; `env`
    // carries the current quantifier bindings, innermost last.
    fn eval(&self, a: &Formula, env: &mut Vec<(String, u64)>) -> Result<Vec<bool>, KripkeError> {
        let n = self.len();
        Ok(match a {
            Formula::Bot => vec![false; n],
            Formula::Atom(p, args) => {
                let args = args
                    .iter()
                    .map(|t| match t {
                        Term::Elem(d) => Ok(*d),
                        Term::Var(v) => env
                            .iter()
                            .rev()
                            .find(|(x, _)| x == v)
                            .map(|&(_, d)| d)
                            .ok_or_else(|| KripkeError::FreeVariable(v.clone())),
                    })
                    .collect::<Result<Vec<u64>, _>>()?;
                (0..n)
                    .map(|i| self.atoms.contains(&(i, p.as_str(), args.as_slice())))
                    .collect()
            }
            Formula::And(l, r) => {
                let (l, r) = (self.eval(l, env)?, self.eval(r, env)?);
                l.iter().zip(&r).map(|(x, y)| *x && *y).collect()
            }
            Formula::Or(l, r) => {
                let (l, r) = (self.eval(l, env)?, self.eval(r, env)?);
                l.iter().zip(&r).map(|(x, y)| *x || *y).collect()
            }
            Formula::Imp(l, r) => {
                let (l, r) = (self.eval(l, env)?, self.eval(r, env)?);
                (0..n)
                    .map(|i| self.frame.up[i].iter().all(|&j| !l[j] || r[j]))
                    .collect()
            }
            Formula::Forall(x, body) => {
                let instances = self.instances(x, body, env)?;
                (0..n)
                    .map(|i| {
                        self.frame.up[i]
                            .iter()
                            .all(|&j| self.domains[j].iter().all(|d| instances[d][j]))
                    })
                    .collect()
            }
            Formula::Exists(x, body) => {
                let instances = self.instances(x, body, env)?;
                (0..n)
                    .map(|i| self.domains[i].iter().any(|d| instances[d][i]))
                    .collect()
            }
        })
    }

    fn instances(
        &self,
        x: &str,
        body: &Formula,
        env: &mut Vec<(String, u64)>,
    ) -> Result<BTreeMap<u64, Vec<bool>>, KripkeError> {
        let mut out = BTreeMap::new();
        for &d in &self.universe {
            env.push((x.to_string(), d));
            let set = self.eval(body, env);
            env.pop();
            out.insert(d, set?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::kripke::{presets, AtomFact};

    fn f(text: &str) -> Formula {
        parse(text).unwrap()
    }

    /// `0 ≤ 1`, both with domain `{0}`, `P` forced only at 1.
    fn two_chain() -> FiniteModel {
        FiniteModel {
            nodes: vec![0, 1],
            edges: vec![(0, 1)],
            root: 0,
            domains: BTreeMap::from([(0, BTreeSet::from([0])), (1, BTreeSet::from([0]))]),
            atoms: BTreeSet::from([AtomFact {
                node: 1,
                pred: "P".into(),
                args: vec![],
            }]),
        }
    }

    #[test]
    fn fig4_forces_negated_f() {
        let m = presets::fig4();
        let not_f = f("~(~(forall x. P(x)) & (forall x. ~~P(x)))");
        assert!(forces_finite(&m, 0, &not_f).unwrap());
        assert!(forces_finite(&m, 0, &f("forall x. P(x)")).unwrap());
    }

    #[test]
    fn excluded_middle_fails_on_two_chain() {
        let m = two_chain();
        assert!(!forces_finite(&m, 0, &f("P | ~P")).unwrap());
        assert!(forces_finite(&m, 1, &f("P | ~P")).unwrap());
        assert!(forces_finite(&m, 0, &f("~~P")).unwrap());
        assert!(!forces_finite(&m, 0, &f("~~P -> P")).unwrap());
    }

    #[test]
    fn bot_never_forced() {
        for m in [two_chain(), presets::fig4()] {
            assert!(forcing_set(&m, &Formula::Bot).unwrap().iter().all(|b| !b));
        }
    }

    #[test]
    fn growing_domain_quantifiers() {
        // node 1 adds element 1 without P(1): ∀ fails at 0 even though P(0) holds there
        let m = FiniteModel {
            nodes: vec![0, 1],
            edges: vec![(0, 1)],
            root: 0,
            domains: BTreeMap::from([(0, BTreeSet::from([0])), (1, BTreeSet::from([0, 1]))]),
            atoms: BTreeSet::from([
                AtomFact {
                    node: 0,
                    pred: "P".into(),
                    args: vec![0],
                },
                AtomFact {
                    node: 1,
                    pred: "P".into(),
                    args: vec![0],
                },
            ]),
        };
        assert_eq!(
            forcing_set(&m, &f("forall x. P(x)")).unwrap(),
            vec![false, false]
        );
        assert_eq!(
            forcing_set(&m, &f("exists x. P(x)")).unwrap(),
            vec![true, true]
        );
        assert_eq!(
            forcing_set(&m, &f("exists x. ~P(x)")).unwrap(),
            vec![false, true]
        );
    }

    #[test]
    fn errors() {
        let m = two_chain();
        assert_eq!(
            forces_finite(&m, 0, &f("P(x)")),
            Err(KripkeError::FreeVariable("x".into()))
        );
        assert_eq!(
            forces_finite(&m, 9, &f("P")),
            Err(KripkeError::UnknownNode(9))
        );
        let mut bad = two_chain();
        bad.atoms.insert(AtomFact {
            node: 0,
            pred: "Q".into(),
            args: vec![],
        });
        assert!(matches!(
            forces_finite(&bad, 0, &f("Q")),
            Err(KripkeError::Malformed(_))
        ));
    }
}
