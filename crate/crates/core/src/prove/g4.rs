//! Contraction-free sequent search for IPC.
//!
//! Invertible rules are applied eagerly (left conjunction, left implication
//! with an available antecedent, the conjunction/disjunction/⊥ antecedent
//! splits, right implication and conjunction, left disjunction). The
//! remaining choice points are right disjunction and the left rule for
//! nested implications. Sequents are memoised after saturation and pruned
//! with a classical truth-table check.

use std::collections::{BTreeSet, HashMap};

use super::prop::{Arena, Id, Node};

pub(crate) struct G4<'a> {
    arena: &'a mut Arena,
    memo: HashMap<(Vec<Id>, Id), bool>,
}

impl<'a> G4<'a> {
    pub fn new(arena: &'a mut Arena) -> Self {
        G4 {
            arena,
            memo: HashMap::new(),
        }
    }

    pub fn prove(&mut self, mut gamma: BTreeSet<Id>, goal: Id) -> bool {
        match self.arena.node(goal) {
            Node::Imp(a, b) => {
                gamma.insert(a);
                return self.prove(gamma, b);
            }
            Node::And(a, b) => return self.prove(gamma.clone(), a) && self.prove(gamma, b),
            _ => {}
        }
        if !self.saturate(&mut gamma) || gamma.contains(&goal) {
            return true;
        }
        let key_gamma: Vec<Id> = gamma.iter().copied().collect();
        if !self.arena.classically_valid(&key_gamma, goal) {
            return false;
        }
        let key = (key_gamma, goal);
        if let Some(&known) = self.memo.get(&key) {
            return known;
        }
        let result = self.search(gamma, goal);
        self.memo.insert(key, result);
        result
    }

    /// Applies the non-branching left rules to a fixpoint. Returns `false`
    /// when `⊥` lands in the context.
    fn saturate(&mut self, gamma: &mut BTreeSet<Id>) -> bool {
        loop {
            let mut changed = false;
            let snapshot: Vec<Id> = gamma.iter().copied().collect();
            for id in snapshot {
                if !gamma.contains(&id) {
                    continue;
                }
                match self.arena.node(id) {
                    Node::Bot => return false,
                    Node::And(a, b) => {
                        gamma.remove(&id);
                        gamma.insert(a);
                        gamma.insert(b);
                        changed = true;
                    }
                    Node::Imp(a, b) => {
                        let replacement: Option<Vec<Id>> = if a == b || gamma.contains(&b) {
                            Some(vec![])
                        } else if gamma.contains(&a) {
                            Some(vec![b])
                        } else {
                            match self.arena.node(a) {
                                Node::Bot => Some(vec![]),
                                Node::And(c, d) => {
                                    let inner = self.arena.imp(d, b);
                                    Some(vec![self.arena.imp(c, inner)])
                                }
                                Node::Or(c, d) => {
                                    Some(vec![self.arena.imp(c, b), self.arena.imp(d, b)])
                                }
                                _ => None,
                            }
                        };
                        if let Some(new) = replacement {
                            gamma.remove(&id);
                            gamma.extend(new);
                            changed = true;
                        }
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn search(&mut self, gamma: BTreeSet<Id>, goal: Id) -> bool {
        let disjunction = gamma.iter().find_map(|&id| match self.arena.node(id) {
            Node::Or(a, b) => Some((id, a, b)),
            _ => None,
        });
        if let Some((id, a, b)) = disjunction {
            let mut left = gamma;
            left.remove(&id);
            let mut right = left.clone();
            left.insert(a);
            right.insert(b);
            return self.prove(left, goal) && self.prove(right, goal);
        }

        if let Node::Or(a, b) = self.arena.node(goal) {
            if self.prove(gamma.clone(), a) || self.prove(gamma.clone(), b) {
                return true;
            }
        }

        let nested: Vec<(Id, Id, Id, Id)> = gamma
            .iter()
            .filter_map(|&id| match self.arena.node(id) {
                Node::Imp(cd, b) => match self.arena.node(cd) {
                    Node::Imp(c, d) => Some((id, c, d, b)),
                    _ => None,
                },
                _ => None,
            })
            .collect();
        for (id, c, d, b) in nested {
            let mut rest = gamma.clone();
            rest.remove(&id);
            // Γ, B ⇒ G follows from the conclusion, so its failure is final.
            let mut with_b = rest.clone();
            with_b.insert(b);
            if !self.prove(with_b, goal) {
                return false;
            }
            let db = self.arena.imp(d, b);
            let cd = self.arena.imp(c, d);
            rest.insert(db);
            if self.prove(rest, cd) {
                return true;
            }
        }
        false
    }
}
