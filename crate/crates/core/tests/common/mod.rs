#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use negtrans::kripke::{AtomFact, FiniteModel};

/// Every rooted frame with at most three nodes, up to isomorphism, as
/// `(node count, edges)`; node 0 is the root.
pub fn small_frames() -> Vec<(u32, Vec<(u32, u32)>)> {
    vec![
        (1, vec![]),
        (2, vec![(0, 1)]),
        (3, vec![(0, 1), (1, 2), (0, 2)]),
        (3, vec![(0, 1), (0, 2)]),
    ]
}

fn up_sets(n: u32, edges: &[(u32, u32)]) -> Vec<BTreeSet<u32>> {
    (0u32..1 << n)
        .map(|bits| {
            (0..n)
                .filter(|i| bits >> i & 1 == 1)
                .collect::<BTreeSet<u32>>()
        })
        .filter(|s| edges.iter().all(|(a, b)| !s.contains(a) || s.contains(b)))
        .collect()
}

/// All models over the small frames with singleton domains and every
/// monotone valuation of the nullary `atoms`.
pub fn small_models(atoms: &[String]) -> Vec<FiniteModel> {
    let mut out = Vec::new();
    for (n, edges) in small_frames() {
        let ups = up_sets(n, &edges);
        let mut choice = vec![0usize; atoms.len()];
        loop {
            let mut facts = BTreeSet::new();
            for (a, &c) in atoms.iter().zip(&choice) {
                for &node in &ups[c] {
                    facts.insert(AtomFact {
                        node,
                        pred: a.clone(),
                        args: vec![],
                    });
                }
            }
            out.push(FiniteModel {
                nodes: (0..n).collect(),
                edges: edges.clone(),
                root: 0,
                domains: (0..n)
                    .map(|i| (i, BTreeSet::from([0])))
                    .collect::<BTreeMap<_, _>>(),
                atoms: facts,
            });
            let mut i = 0;
            loop {
                if i == choice.len() {
                    break;
                }
                choice[i] += 1;
                if choice[i] < ups.len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == choice.len() {
                break;
            }
        }
    }
    out
}

/// Classical truth under the valuation `row` (bit `i` is `atoms[i]`).
pub fn classical(f: &negtrans::Formula, atoms: &[String], row: u64) -> bool {
    use negtrans::Formula::*;
    match f {
        Bot => false,
        Atom(p, _) => {
            let i = atoms.iter().position(|a| a == p).expect("atom listed");
            row >> i & 1 == 1
        }
        And(a, b) => classical(a, atoms, row) && classical(b, atoms, row),
        Or(a, b) => classical(a, atoms, row) || classical(b, atoms, row),
        Imp(a, b) => !classical(a, atoms, row) || classical(b, atoms, row),
        Forall(..) | Exists(..) => panic!("propositional only"),
    }
}

pub fn tautology(f: &negtrans::Formula) -> bool {
    let atoms: Vec<String> = f.predicates().into_iter().collect();
    (0..1u64 << atoms.len()).all(|row| classical(f, &atoms, row))
}
