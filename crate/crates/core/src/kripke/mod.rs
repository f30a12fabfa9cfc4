//! Kripke semantics for intuitionistic first-order logic.
//!
//! Three model families are supported:
//!
//! * [`FiniteModel`]: a finite rooted poset with monotone domains and atoms.
//! * [`OmegaChainModel`]: the infinite chain `0 ≤ 1 ≤ 2 ≤ ...` with domain
//!   `{0, ..., k}` at node `k`. On a linear frame every forcing set is an
//!   up-set, so a formula is summarised exactly by the least node forcing it
//!   (its [`Threshold`]); [`chain_threshold`] computes it by structural
//!   recursion.
//! * [`GraftedModel`]: a fresh root placed below several finite or chain
//!   models.

mod chain;
mod finite;
mod grafted;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use chain::{chain_forces_bruteforce, chain_threshold, Tail, Threshold, ThresholdFn};
pub use finite::{forces_finite, forcing_set};
pub use grafted::forces_grafted;

pub type NodeId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KripkeError {
    #[error("malformed model: {}", join_violations(.0))]
    Malformed(Vec<Violation>),
    #[error("free variable `{0}` in formula")]
    FreeVariable(String),
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("predicate `{pred}` used with {got} argument(s), expected {expected}")]
    Arity {
        pred: String,
        expected: usize,
        got: usize,
    },
    #[error("unsupported nesting: quantifier body depends on outer variable `{0}`")]
    UnsupportedNesting(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("invalid model file: {0}")]
    Json(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    EmptyModel,
    DuplicateNode,
    UnknownNode,
    OrderNotAntisymmetric,
    RootNotMinimum,
    EmptyDomain,
    DomainNotMonotone,
    AtomOutsideDomain,
    ForcingNotMonotone,
    ChainOffset,
    ArityClash,
    DomainMismatch,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::EmptyModel => "empty-model",
            ViolationKind::DuplicateNode => "duplicate-node",
            ViolationKind::UnknownNode => "unknown-node",
            ViolationKind::OrderNotAntisymmetric => "order-not-antisymmetric",
            ViolationKind::RootNotMinimum => "root-not-minimum",
            ViolationKind::EmptyDomain => "empty-domain",
            ViolationKind::DomainNotMonotone => "domain-not-monotone",
            ViolationKind::AtomOutsideDomain => "atom-outside-domain",
            ViolationKind::ForcingNotMonotone => "forcing-not-monotone",
            ViolationKind::ChainOffset => "chain-offset",
            ViolationKind::ArityClash => "arity-clash",
            ViolationKind::DomainMismatch => "domain-mismatch",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub nodes: Vec<NodeId>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at {:?}: {}",
            self.kind.as_str(),
            self.nodes,
            self.detail
        )
    }
}

fn violation(kind: ViolationKind, nodes: Vec<NodeId>, detail: impl Into<String>) -> Violation {
    Violation {
        kind,
        nodes,
        detail: detail.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AtomFact {
    pub node: NodeId,
    pub pred: String,
    #[serde(default)]
    pub args: Vec<u64>,
}

/// A finite rooted Kripke model. `edges` generate the order by
/// reflexive-transitive closure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteModel {
    pub nodes: Vec<NodeId>,
    #[serde(default)]
    pub edges: Vec<(NodeId, NodeId)>,
    pub root: NodeId,
    #[serde(with = "node_keys")]
    pub domains: BTreeMap<NodeId, BTreeSet<u64>>,
    #[serde(default)]
    pub atoms: BTreeSet<AtomFact>,
}

/// The infinite chain: unary `P` with offset `c` holds of `d` from node
/// `d + c` on; a nullary atom holds from its threshold on.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaChainModel {
    #[serde(default)]
    pub unary: BTreeMap<String, u64>,
    #[serde(default)]
    pub nullary: BTreeMap<String, Threshold>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RootAtom {
    pub pred: String,
    #[serde(default)]
    pub args: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GraftChild {
    Finite(FiniteModel),
    Chain(OmegaChainModel),
}

/// A fresh bottom node joined below the bottoms of `children`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraftedModel {
    pub root_domain: BTreeSet<u64>,
    #[serde(default)]
    pub root_atoms: BTreeSet<RootAtom>,
    pub children: Vec<GraftChild>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Model {
    Finite(FiniteModel),
    Chain(OmegaChainModel),
    Grafted(GraftedModel),
}

impl Model {
    pub fn from_json(text: &str) -> Result<Model, KripkeError> {
        serde_json::from_str(text).map_err(|e| KripkeError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("models serialize")
    }

    pub fn validate(&self) -> Vec<Violation> {
        match self {
            Model::Finite(m) => m.validate(),
            Model::Chain(m) => m.validate(),
            Model::Grafted(m) => m.validate(),
        }
    }

    /// Whether the bottom node forces `a`.
    pub fn forces_at_root(&self, a: &crate::Formula) -> Result<bool, KripkeError> {
        match self {
            Model::Finite(m) => forces_finite(m, m.root, a),
            Model::Chain(m) => Ok(chain_threshold(m, a)? == Threshold::At(0)),
            Model::Grafted(m) => forces_grafted(m, a),
        }
    }
}

// Tagged enums buffer their content, which turns integer map keys into
// strings; go through string keys explicitly.
mod node_keys {
    use std::collections::{BTreeMap, BTreeSet};

    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    use super::NodeId;

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<NodeId, BTreeSet<u64>>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let keyed: BTreeMap<String, &BTreeSet<u64>> =
            map.iter().map(|(k, v)| (k.to_string(), v)).collect();
        keyed.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<NodeId, BTreeSet<u64>>, D::Error> {
        BTreeMap::<String, BTreeSet<u64>>::deserialize(d)?
            .into_iter()
            .map(|(k, v)| {
                k.parse::<NodeId>()
                    .map(|k| (k, v))
                    .map_err(|_| D::Error::custom(format!("node key `{k}` is not a node id")))
            })
            .collect()
    }
}

/// Well-formedness check for finite and grafted models.
pub fn validate_model(m: &Model) -> Vec<Violation> {
    m.validate()
}

/// Reflexive-transitive closure of a finite model's edges, over node indices.
pub(crate) struct Frame {
    pub index: BTreeMap<NodeId, usize>,
    /// `up[i]` lists every `j` with `i ≤ j`, including `i`.
    pub up: Vec<Vec<usize>>,
    pub leq: Vec<Vec<bool>>,
}

impl Frame {
    /// Builds the closure, ignoring edges to unknown nodes.
    pub fn new(m: &FiniteModel) -> Frame {
        let index: BTreeMap<NodeId, usize> =
            m.nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        let n = m.nodes.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in &m.edges {
            if let (Some(&i), Some(&j)) = (index.get(&a), index.get(&b)) {
                leq[i][j] = true;
            }
        }
        for k in 0..n {
            let via = leq[k].clone();
            for row in leq.iter_mut() {
                if row[k] {
                    for (cell, &reach) in row.iter_mut().zip(&via) {
                        *cell |= reach;
                    }
                }
            }
        }
        let up = leq
            .iter()
            .map(|row| (0..n).filter(|&j| row[j]).collect())
            .collect();
        Frame { index, up, leq }
    }
}

impl FiniteModel {
    /// A one-node model over domain `{0}` with the given nullary atoms.
    pub fn single_node<I, S>(atoms: I) -> FiniteModel
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        FiniteModel {
            nodes: vec![0],
            edges: Vec::new(),
            root: 0,
            domains: BTreeMap::from([(0, BTreeSet::from([0]))]),
            atoms: atoms
                .into_iter()
                .map(|p| AtomFact {
                    node: 0,
                    pred: p.into(),
                    args: Vec::new(),
                })
                .collect(),
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        use ViolationKind::*;
        let mut out = Vec::new();
        if self.nodes.is_empty() {
            out.push(violation(EmptyModel, vec![], "model has no nodes"));
            return out;
        }
        let mut seen = BTreeSet::new();
        for &n in &self.nodes {
            if !seen.insert(n) {
                out.push(violation(DuplicateNode, vec![n], "node listed twice"));
            }
        }
        for &(a, b) in &self.edges {
            for x in [a, b] {
                if !seen.contains(&x) {
                    out.push(violation(
                        UnknownNode,
                        vec![x],
                        format!("edge ({a}, {b}) mentions unknown node"),
                    ));
                }
            }
        }
        if !seen.contains(&self.root) {
            out.push(violation(
                UnknownNode,
                vec![self.root],
                "root is not a node",
            ));
        }
        for (&n, _) in self.domains.iter().filter(|(n, _)| !seen.contains(n)) {
            out.push(violation(
                UnknownNode,
                vec![n],
                "domain given for unknown node",
            ));
        }
        for a in self.atoms.iter().filter(|a| !seen.contains(&a.node)) {
            out.push(violation(
                UnknownNode,
                vec![a.node],
                format!("atom {} at unknown node", a.pred),
            ));
        }
        if !out.is_empty() {
            return out;
        }

        let frame = Frame::new(self);
        let ids = &self.nodes;
        for i in 0..ids.len() {
            for j in (i + 1)..ids.len() {
                if frame.leq[i][j] && frame.leq[j][i] {
                    out.push(violation(
                        OrderNotAntisymmetric,
                        vec![ids[i], ids[j]],
                        "nodes are mutually reachable",
                    ));
                }
            }
        }
        let r = frame.index[&self.root];
        for (j, &id) in ids.iter().enumerate() {
            if !frame.leq[r][j] {
                out.push(violation(
                    RootNotMinimum,
                    vec![self.root, id],
                    "root is not below node",
                ));
            }
        }
        let empty = BTreeSet::new();
        let dom = |n: NodeId| self.domains.get(&n).unwrap_or(&empty);
        for &n in ids {
            if dom(n).is_empty() {
                out.push(violation(
                    EmptyDomain,
                    vec![n],
                    "domain is missing or empty",
                ));
            }
        }
        for (i, &a) in ids.iter().enumerate() {
            for &j in &frame.up[i] {
                let b = ids[j];
                if a != b && !dom(a).is_subset(dom(b)) {
                    out.push(violation(
                        DomainNotMonotone,
                        vec![a, b],
                        format!("domain of {a} is not contained in domain of {b}"),
                    ));
                }
            }
        }
        for atom in &self.atoms {
            if atom.args.iter().any(|d| !dom(atom.node).contains(d)) {
                out.push(violation(
                    AtomOutsideDomain,
                    vec![atom.node],
                    format!(
                        "{}{:?} has an argument outside the domain",
                        atom.pred, atom.args
                    ),
                ));
            }
            let i = frame.index[&atom.node];
            for &j in &frame.up[i] {
                let above = AtomFact {
                    node: ids[j],
                    ..atom.clone()
                };
                if !self.atoms.contains(&above) {
                    out.push(violation(
                        ForcingNotMonotone,
                        vec![atom.node, ids[j]],
                        format!("{}{:?} forced below but not above", atom.pred, atom.args),
                    ));
                }
            }
        }
        out
    }

    /// Domain of the root node.
    pub fn root_domain(&self) -> BTreeSet<u64> {
        self.domains.get(&self.root).cloned().unwrap_or_default()
    }
}

impl OmegaChainModel {
    /// Unary `P` with offset 1: node `k + 1` is the first to force `P(k)`.
    pub fn standard() -> OmegaChainModel {
        OmegaChainModel {
            unary: BTreeMap::from([("P".to_string(), 1)]),
            nullary: BTreeMap::new(),
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (p, &c) in &self.unary {
            if c == 0 {
                out.push(violation(
                    ViolationKind::ChainOffset,
                    vec![],
                    format!("offset of `{p}` must be at least 1"),
                ));
            }
            if self.nullary.contains_key(p) {
                out.push(violation(
                    ViolationKind::ArityClash,
                    vec![],
                    format!("`{p}` declared both unary and nullary"),
                ));
            }
        }
        out
    }
}

impl GraftedModel {
    pub fn validate(&self) -> Vec<Violation> {
        use ViolationKind::*;
        let mut out = Vec::new();
        if self.root_domain.is_empty() {
            out.push(violation(EmptyDomain, vec![], "root domain is empty"));
        }
        for atom in &self.root_atoms {
            if atom.args.iter().any(|d| !self.root_domain.contains(d)) {
                out.push(violation(
                    AtomOutsideDomain,
                    vec![],
                    format!(
                        "root atom {}{:?} outside the root domain",
                        atom.pred, atom.args
                    ),
                ));
            }
        }
        for (i, child) in self.children.iter().enumerate() {
            match child {
                GraftChild::Finite(m) => {
                    let inner = m.validate();
                    if !inner.is_empty() {
                        out.extend(inner.into_iter().map(|mut v| {
                            v.detail = format!("child {i}: {}", v.detail);
                            v
                        }));
                        continue;
                    }
                    if !self.root_domain.is_subset(&m.root_domain()) {
                        out.push(violation(
                            DomainNotMonotone,
                            vec![m.root],
                            format!("root domain not contained in the bottom domain of child {i}"),
                        ));
                    }
                    for atom in &self.root_atoms {
                        let fact = AtomFact {
                            node: m.root,
                            pred: atom.pred.clone(),
                            args: atom.args.clone(),
                        };
                        if !m.atoms.contains(&fact) {
                            out.push(violation(
                                ForcingNotMonotone,
                                vec![m.root],
                                format!(
                                    "root atom {}{:?} not forced at the bottom of child {i}",
                                    atom.pred, atom.args
                                ),
                            ));
                        }
                    }
                }
                GraftChild::Chain(m) => {
                    out.extend(m.validate().into_iter().map(|mut v| {
                        v.detail = format!("child {i}: {}", v.detail);
                        v
                    }));
                    if !self.root_domain.is_subset(&BTreeSet::from([0])) {
                        out.push(violation(
                            DomainNotMonotone,
                            vec![],
                            format!("root domain not contained in {{0}}, the bottom domain of chain child {i}"),
                        ));
                    }
                    for atom in &self.root_atoms {
                        let forced_at_bottom = atom.args.is_empty()
                            && m.nullary.get(&atom.pred) == Some(&Threshold::At(0));
                        if !forced_at_bottom {
                            out.push(violation(
                                ForcingNotMonotone,
                                vec![],
                                format!(
                                    "root atom {}{:?} not forced at the bottom of chain child {i}",
                                    atom.pred, atom.args
                                ),
                            ));
                        }
                    }
                }
            }
        }
        out
    }
}

/// Named models shipped with the crate.
pub mod presets {
    use super::{GraftChild, GraftedModel, Model};

    pub const NAMES: [&str; 3] = ["fig3", "fig4", "fig5"];

    const FIG3: &str = include_str!("../../presets/fig3.json");
    const FIG4: &str = include_str!("../../presets/fig4.json");
    const FIG5: &str = include_str!("../../presets/fig5.json");

    pub fn get(name: &str) -> Option<Model> {
        let text = match name {
            "fig3" => FIG3,
            "fig4" => FIG4,
            "fig5" => FIG5,
            _ => return None,
        };
        Some(Model::from_json(text).expect("embedded preset parses"))
    }

    /// The chain `{P ↦ 1}`; it forces `¬∀x P(x) ∧ ∀x ¬¬P(x)` at every node.
    pub fn fig3() -> super::OmegaChainModel {
        match get("fig3") {
            Some(Model::Chain(m)) => m,
            _ => unreachable!("fig3 is a chain"),
        }
    }

    /// One node, domain `{0}`, forcing `P(0)`.
    pub fn fig4() -> super::FiniteModel {
        match get("fig4") {
            Some(Model::Finite(m)) => m,
            _ => unreachable!("fig4 is finite"),
        }
    }

    /// Fresh root with domain `{0}` below `fig4 + Q` and `fig3` with `Q` never forced.
    pub fn fig5() -> GraftedModel {
        match get("fig5") {
            Some(Model::Grafted(m)) => {
                debug_assert!(matches!(
                    m.children[..],
                    [GraftChild::Finite(_), GraftChild::Chain(_)]
                ));
                m
            }
            _ => unreachable!("fig5 is grafted"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_node(dom0: &[u64], dom1: &[u64], atoms: &[(NodeId, &str)]) -> FiniteModel {
        FiniteModel {
            nodes: vec![0, 1],
            edges: vec![(0, 1)],
            root: 0,
            domains: BTreeMap::from([
                (0, dom0.iter().copied().collect()),
                (1, dom1.iter().copied().collect()),
            ]),
            atoms: atoms
                .iter()
                .map(|&(node, p)| AtomFact {
                    node,
                    pred: p.into(),
                    args: vec![],
                })
                .collect(),
        }
    }

    fn kinds(v: &[Violation]) -> Vec<ViolationKind> {
        v.iter().map(|x| x.kind).collect()
    }

    #[test]
    fn presets_are_well_formed() {
        for name in presets::NAMES {
            let m = presets::get(name).unwrap();
            assert!(m.validate().is_empty(), "{name}: {:?}", m.validate());
        }
        assert_eq!(presets::fig3(), OmegaChainModel::standard());
        assert!(presets::get("fig6").is_none());
    }

    #[test]
    fn shrinking_domain_is_reported() {
        let m = two_node(&[0, 1], &[0], &[]);
        assert_eq!(kinds(&m.validate()), vec![ViolationKind::DomainNotMonotone]);
    }

    #[test]
    fn non_monotone_atom_is_reported() {
        let m = two_node(&[0], &[0], &[(0, "Q")]);
        assert_eq!(
            kinds(&m.validate()),
            vec![ViolationKind::ForcingNotMonotone]
        );
        let ok = two_node(&[0], &[0], &[(0, "Q"), (1, "Q")]);
        assert!(ok.validate().is_empty());
    }

    #[test]
    fn structural_violations() {
        let mut m = two_node(&[0], &[0], &[]);
        m.edges.push((1, 0));
        assert!(kinds(&m.validate()).contains(&ViolationKind::OrderNotAntisymmetric));

        let mut m = two_node(&[0], &[0], &[]);
        m.edges.clear();
        assert_eq!(kinds(&m.validate()), vec![ViolationKind::RootNotMinimum]);

        let mut m = two_node(&[], &[0], &[]);
        m.domains.remove(&0);
        assert_eq!(kinds(&m.validate()), vec![ViolationKind::EmptyDomain]);

        let mut m = two_node(&[0], &[0], &[]);
        m.edges.push((0, 7));
        assert_eq!(kinds(&m.validate()), vec![ViolationKind::UnknownNode]);

        let mut m = two_node(&[0], &[0], &[]);
        m.atoms.insert(AtomFact {
            node: 1,
            pred: "P".into(),
            args: vec![5],
        });
        assert_eq!(kinds(&m.validate()), vec![ViolationKind::AtomOutsideDomain]);
    }

    #[test]
    fn grafted_violations() {
        let mut m = presets::fig5();
        m.root_domain = BTreeSet::from([3]);
        let k = kinds(&m.validate());
        assert!(k.contains(&ViolationKind::DomainNotMonotone));

        let mut m = presets::fig5();
        m.root_atoms.insert(RootAtom {
            pred: "Q".into(),
            args: vec![],
        });
        // Q holds in the finite child but never in the chain child
        assert_eq!(
            kinds(&m.validate()),
            vec![ViolationKind::ForcingNotMonotone]
        );
    }

    #[test]
    fn chain_offsets_must_be_positive() {
        let mut m = OmegaChainModel::standard();
        m.unary.insert("R".into(), 0);
        assert_eq!(kinds(&m.validate()), vec![ViolationKind::ChainOffset]);
    }

    #[test]
    fn json_shapes() {
        let text = r#"{"kind":"finite","nodes":[0,1],"edges":[[0,1]],"root":0,
            "domains":{"0":[0],"1":[0,1]},"atoms":[{"node":1,"pred":"P","args":[1]}]}"#;
        let m = Model::from_json(text).unwrap();
        assert!(m.validate().is_empty());
        assert_eq!(Model::from_json(&m.to_json()).unwrap(), m);

        let chain =
            Model::from_json(r#"{"kind":"chain","unary":{"P":1},"nullary":{"Q":"inf","R":2}}"#)
                .unwrap();
        match &chain {
            Model::Chain(c) => {
                assert_eq!(c.nullary["Q"], Threshold::Never);
                assert_eq!(c.nullary["R"], Threshold::At(2));
            }
            _ => panic!("expected chain"),
        }
        assert_eq!(Model::from_json(&chain.to_json()).unwrap(), chain);
        assert!(matches!(
            Model::from_json("{\"kind\":\"tree\"}"),
            Err(KripkeError::Json(_))
        ));
    }
}
