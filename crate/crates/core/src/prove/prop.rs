//! Hash-consed propositional formulas with truth-table bitmasks.

use std::collections::HashMap;

use super::ProveError;
use crate::formula::Formula;

pub(crate) type Id = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Node {
    Bot,
    Atom(u32),
    And(Id, Id),
    Or(Id, Id),
    Imp(Id, Id),
}

/// Above this many atoms truth tables are not kept and classical pruning
/// is skipped.
const MAX_TABLE_ATOMS: usize = 16;

pub(crate) struct Arena {
    nodes: Vec<Node>,
    lookup: HashMap<Node, Id>,
    atom_names: Vec<String>,
    atom_index: HashMap<String, u32>,
    /// Truth table per node, one bit per valuation; empty when disabled.
    masks: Vec<Vec<u64>>,
    words: usize,
    tables: bool,
}

impl Arena {
    /// Arena over the atoms of `formulas`, which must be propositional.
    pub fn for_formulas<'a>(
        formulas: impl IntoIterator<Item = &'a Formula>,
    ) -> Result<Arena, ProveError> {
        let formulas: Vec<&Formula> = formulas.into_iter().collect();
        let mut names = std::collections::BTreeSet::new();
        for f in &formulas {
            check_propositional(f)?;
            names.extend(f.predicates());
        }
        let atom_names: Vec<String> = names.into_iter().collect();
        let tables = atom_names.len() <= MAX_TABLE_ATOMS;
        let words = if tables {
            (1usize << atom_names.len()).div_ceil(64)
        } else {
            0
        };
        Ok(Arena {
            nodes: Vec::new(),
            lookup: HashMap::new(),
            atom_index: atom_names
                .iter()
                .enumerate()
                .map(|(i, n)| (n.clone(), i as u32))
                .collect(),
            atom_names,
            masks: Vec::new(),
            words,
            tables,
        })
    }

    pub fn node(&self, id: Id) -> Node {
        self.nodes[id as usize]
    }

    pub fn atom_name(&self, atom: u32) -> &str {
        &self.atom_names[atom as usize]
    }

    pub fn atom_count(&self) -> usize {
        self.atom_names.len()
    }

    pub fn has_tables(&self) -> bool {
        self.tables
    }

    pub fn intern(&mut self, node: Node) -> Id {
        if let Some(&id) = self.lookup.get(&node) {
            return id;
        }
        let id = self.nodes.len() as Id;
        self.nodes.push(node);
        self.lookup.insert(node, id);
        if self.tables {
            let mask = self.compute_mask(node);
            self.masks.push(mask);
        }
        id
    }

    pub fn imp(&mut self, a: Id, b: Id) -> Id {
        self.intern(Node::Imp(a, b))
    }

    /// Interns a formula accepted by [`Arena::for_formulas`].
    pub fn add(&mut self, f: &Formula) -> Id {
        let node = match f {
            Formula::Bot => Node::Bot,
            Formula::Atom(p, _) => Node::Atom(self.atom_index[p]),
            Formula::And(a, b) => {
                let (a, b) = (self.add(a), self.add(b));
                Node::And(a, b)
            }
            Formula::Or(a, b) => {
                let (a, b) = (self.add(a), self.add(b));
                Node::Or(a, b)
            }
            Formula::Imp(a, b) => {
                let (a, b) = (self.add(a), self.add(b));
                Node::Imp(a, b)
            }
            Formula::Forall(..) | Formula::Exists(..) => unreachable!("checked propositional"),
        };
        self.intern(node)
    }

    fn compute_mask(&self, node: Node) -> Vec<u64> {
        let rows = 1usize << self.atom_names.len();
        let full = |w: usize| -> u64 {
            let bits = rows.saturating_sub(w * 64).min(64);
            if bits == 64 {
                u64::MAX
            } else {
                (1u64 << bits) - 1
            }
        };
        match node {
            Node::Bot => vec![0; self.words],
            Node::Atom(i) => (0..self.words)
                .map(|w| {
                    let mut m = 0u64;
                    for bit in 0..64 {
                        let row = w * 64 + bit;
                        if row < rows && (row >> i) & 1 == 1 {
                            m |= 1 << bit;
                        }
                    }
                    m
                })
                .collect(),
            Node::And(a, b) => self.zip(a, b, |x, y| x & y),
            Node::Or(a, b) => self.zip(a, b, |x, y| x | y),
            Node::Imp(a, b) => {
                let (ma, mb) = (&self.masks[a as usize], &self.masks[b as usize]);
                (0..self.words)
                    .map(|w| (!ma[w] | mb[w]) & full(w))
                    .collect()
            }
        }
    }

    fn zip(&self, a: Id, b: Id, op: fn(u64, u64) -> u64) -> Vec<u64> {
        let (ma, mb) = (&self.masks[a as usize], &self.masks[b as usize]);
        ma.iter().zip(mb).map(|(x, y)| op(*x, *y)).collect()
    }

    /// A valuation (as a row index) making every `gamma` true and every
    /// `delta` false, if one exists. `None` also when tables are disabled.
    pub fn classical_witness(&self, gamma: &[Id], delta: &[Id]) -> Option<usize> {
        if !self.tables {
            return None;
        }
        let rows = 1usize << self.atom_names.len();
        for w in 0..self.words {
            let mut m = if (w + 1) * 64 <= rows {
                u64::MAX
            } else {
                (1u64 << (rows - w * 64)) - 1
            };
            for &g in gamma {
                m &= self.masks[g as usize][w];
            }
            for &d in delta {
                m &= !self.masks[d as usize][w];
            }
            if m != 0 {
                return Some(w * 64 + m.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Whether `gamma ⇒ goal` is classically valid. Without tables this
    /// conservatively answers `true`.
    pub fn classically_valid(&self, gamma: &[Id], goal: Id) -> bool {
        !self.tables || self.classical_witness(gamma, &[goal]).is_none()
    }

    /// Atoms true in a valuation row.
    pub fn row_atoms(&self, row: usize) -> Vec<u32> {
        (0..self.atom_names.len() as u32)
            .filter(|i| (row >> i) & 1 == 1)
            .collect()
    }
}

pub(crate) fn check_propositional(f: &Formula) -> Result<(), ProveError> {
    match f {
        Formula::Bot => Ok(()),
        Formula::Atom(_, args) if args.is_empty() => Ok(()),
        Formula::Atom(p, _) => Err(ProveError::Unsupported(format!(
            "atom `{p}` has arguments; only nullary atoms are decidable here"
        ))),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
            check_propositional(a)?;
            check_propositional(b)
        }
        Formula::Forall(..) | Formula::Exists(..) => Err(ProveError::Unsupported(
            "quantifiers are outside the propositional deciders".into(),
        )),
    }
}
