//! Countermodel search over signed sequents.
//!
//! A state `(Γ, Δ)` asks for a world forcing all of `Γ` and none of `Δ`.
//! Each state is saturated with the deterministic rules, split on the
//! remaining disjunctive obligations, and finally given one successor per
//! refuted implication `C → D ∈ Δ` with `C ∉ Γ`. Successors strictly enlarge
//! `Γ`, so the search terminates; it is complete for finite rooted models.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

use super::prop::{Arena, Id, Node};
use crate::formula::Formula;
use crate::kripke::{forces_finite, AtomFact, FiniteModel, Frame};

pub(crate) struct World {
    atoms: Vec<u32>,
    children: Vec<Rc<World>>,
}

type Memo = HashMap<(Vec<Id>, Vec<Id>), Option<Rc<World>>>;

pub(crate) struct Refuter<'a> {
    arena: &'a Arena,
    memo: Memo,
}

impl<'a> Refuter<'a> {
    pub fn new(arena: &'a Arena) -> Self {
        Refuter {
            arena,
            memo: HashMap::new(),
        }
    }

    pub fn refute(&mut self, gamma: BTreeSet<Id>, delta: BTreeSet<Id>) -> Option<Rc<World>> {
        let (gamma, delta) = self.saturate(gamma, delta)?;
        let g: Vec<Id> = gamma.iter().copied().collect();
        let d: Vec<Id> = delta.iter().copied().collect();
        if let Some(row) = self.arena.classical_witness(&g, &d) {
            return Some(Rc::new(World {
                atoms: self.arena.row_atoms(row),
                children: Vec::new(),
            }));
        }
        let key = (g, d);
        if let Some(known) = self.memo.get(&key) {
            return known.clone();
        }
        let result = self.expand(gamma, delta);
        self.memo.insert(key, result.clone());
        result
    }

    fn expand(&mut self, gamma: BTreeSet<Id>, delta: BTreeSet<Id>) -> Option<Rc<World>> {
        if let Some(branches) = self.split(&gamma, &delta) {
            return branches.into_iter().find_map(|(g, d)| self.refute(g, d));
        }
        let mut children = Vec::new();
        for &id in &delta {
            if let Node::Imp(c, e) = self.arena.node(id) {
                if !gamma.contains(&c) {
                    let mut g = gamma.clone();
                    g.insert(c);
                    children.push(self.refute(g, BTreeSet::from([e]))?);
                }
            }
        }
        let atoms = gamma
            .iter()
            .filter_map(|&id| match self.arena.node(id) {
                Node::Atom(i) => Some(i),
                _ => None,
            })
            .collect();
        Some(Rc::new(World { atoms, children }))
    }

    /// First unresolved disjunctive obligation, as two alternative states.
    #[allow(clippy::type_complexity)]
    fn split(
        &self,
        gamma: &BTreeSet<Id>,
        delta: &BTreeSet<Id>,
    ) -> Option<Vec<(BTreeSet<Id>, BTreeSet<Id>)>> {
        let with = |set: &BTreeSet<Id>, x: Id| {
            let mut s = set.clone();
            s.insert(x);
            s
        };
        for &id in gamma {
            match self.arena.node(id) {
                Node::Imp(a, b) if !delta.contains(&a) && !gamma.contains(&b) => {
                    return Some(vec![
                        (with(gamma, b), delta.clone()),
                        (gamma.clone(), with(delta, a)),
                    ]);
                }
                Node::Or(a, b) if !gamma.contains(&a) && !gamma.contains(&b) => {
                    return Some(vec![
                        (with(gamma, a), delta.clone()),
                        (with(gamma, b), delta.clone()),
                    ]);
                }
                _ => {}
            }
        }
        for &id in delta {
            if let Node::And(a, b) = self.arena.node(id) {
                if !delta.contains(&a) && !delta.contains(&b) {
                    return Some(vec![
                        (gamma.clone(), with(delta, a)),
                        (gamma.clone(), with(delta, b)),
                    ]);
                }
            }
        }
        None
    }

    /// Closes `(Γ, Δ)` under the deterministic rules; `None` on a clash.
    fn saturate(
        &self,
        mut gamma: BTreeSet<Id>,
        mut delta: BTreeSet<Id>,
    ) -> Option<(BTreeSet<Id>, BTreeSet<Id>)> {
        loop {
            let mut changed = false;
            for id in gamma.clone() {
                match self.arena.node(id) {
                    Node::Bot => return None,
                    Node::And(a, b) => {
                        changed |= gamma.insert(a);
                        changed |= gamma.insert(b);
                    }
                    Node::Or(a, b) => {
                        if delta.contains(&a) {
                            changed |= gamma.insert(b);
                        }
                        if delta.contains(&b) {
                            changed |= gamma.insert(a);
                        }
                    }
                    Node::Imp(a, b) => {
                        if gamma.contains(&a) {
                            changed |= gamma.insert(b);
                        }
                        if delta.contains(&b) || self.arena.node(b) == Node::Bot {
                            changed |= delta.insert(a);
                        }
                    }
                    Node::Atom(_) => {}
                }
            }
            for id in delta.clone() {
                match self.arena.node(id) {
                    Node::Or(a, b) => {
                        changed |= delta.insert(a);
                        changed |= delta.insert(b);
                    }
                    Node::And(a, b) => {
                        if gamma.contains(&a) {
                            changed |= delta.insert(b);
                        }
                        if gamma.contains(&b) {
                            changed |= delta.insert(a);
                        }
                    }
                    Node::Imp(a, b) => {
                        if gamma.contains(&b) {
                            return None;
                        }
                        if gamma.contains(&a) {
                            changed |= delta.insert(b);
                        }
                    }
                    Node::Bot | Node::Atom(_) => {}
                }
            }
            if gamma.iter().any(|x| delta.contains(x)) {
                return None;
            }
            if !changed {
                return Some((gamma, delta));
            }
        }
    }
}

/// Flattens a world graph into a finite model with singleton domains.
/// Shared successors stay shared, so the frame is a DAG rooted at node 0.
pub(crate) fn to_model(arena: &Arena, root: &Rc<World>) -> FiniteModel {
    let mut ids: HashMap<*const World, u32> = HashMap::new();
    let mut order: Vec<Rc<World>> = Vec::new();
    let mut stack = vec![root.clone()];
    while let Some(w) = stack.pop() {
        let ptr = Rc::as_ptr(&w);
        if ids.contains_key(&ptr) {
            continue;
        }
        ids.insert(ptr, order.len() as u32);
        for c in w.children.iter().rev() {
            stack.push(c.clone());
        }
        order.push(w);
    }
    let mut edges = BTreeSet::new();
    let mut atoms = BTreeSet::new();
    let mut domains = BTreeMap::new();
    for w in &order {
        let id = ids[&Rc::as_ptr(w)];
        domains.insert(id, BTreeSet::from([0u64]));
        for c in &w.children {
            edges.insert((id, ids[&Rc::as_ptr(c)]));
        }
        for &a in &w.atoms {
            atoms.insert(AtomFact {
                node: id,
                pred: arena.atom_name(a).to_string(),
                args: vec![],
            });
        }
    }
    FiniteModel {
        nodes: (0..order.len() as u32).collect(),
        edges: edges.into_iter().collect(),
        root: 0,
        domains,
        atoms,
    }
}

/// Greedily drops nodes while the model stays rooted and still refutes `a`.
pub(crate) fn minimise(mut m: FiniteModel, a: &Formula) -> FiniteModel {
    'outer: loop {
        for &n in &m.nodes {
            if let Some(smaller) = without_node(&m, n) {
                if forces_finite(&smaller, smaller.root, a) == Ok(false) {
                    m = smaller;
                    continue 'outer;
                }
            }
        }
        return m;
    }
}

/// `m` restricted to all nodes but `n`, if that still has a least node.
fn without_node(m: &FiniteModel, n: u32) -> Option<FiniteModel> {
    let frame = Frame::new(m);
    let keep: Vec<u32> = m.nodes.iter().copied().filter(|&x| x != n).collect();
    let idx = |x: u32| frame.index[&x];
    let root = *keep
        .iter()
        .find(|&&r| keep.iter().all(|&x| frame.leq[idx(r)][idx(x)]))?;
    let mut edges = Vec::new();
    for &x in &keep {
        for &y in &keep {
            if x != y && frame.leq[idx(x)][idx(y)] {
                edges.push((x, y));
            }
        }
    }
    Some(FiniteModel {
        nodes: keep,
        edges,
        root,
        domains: m
            .domains
            .iter()
            .filter(|(k, _)| **k != n)
            .map(|(k, v)| (*k, v.clone()))
            .collect(),
        atoms: m.atoms.iter().filter(|f| f.node != n).cloned().collect(),
    })
}
