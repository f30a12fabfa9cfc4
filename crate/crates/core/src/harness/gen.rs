use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::formula::{Formula, Term};

/// Relative weights of the generator's choices. Leaves compete with the
/// connectives at every level below `max_depth`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectiveWeights {
    pub bot: u32,
    pub atom: u32,
    pub and: u32,
    pub or: u32,
    pub imp: u32,
    pub not: u32,
    pub forall: u32,
    pub exists: u32,
}

impl Default for ConnectiveWeights {
    fn default() -> Self {
        ConnectiveWeights {
            bot: 1,
            atom: 4,
            and: 3,
            or: 3,
            imp: 4,
            not: 2,
            forall: 2,
            exists: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenConfig {
    pub atom_count: usize,
    pub max_depth: usize,
    pub weights: ConnectiveWeights,
    pub allow_quantifiers: bool,
    pub seed: u64,
    /// Samples per randomized check.
    pub samples: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            atom_count: 4,
            max_depth: 6,
            weights: ConnectiveWeights::default(),
            allow_quantifiers: false,
            seed: 0,
            samples: 100,
        }
    }
}

impl GenConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.atom_count == 0 {
            return Err(HarnessError::InvalidConfig(
                "atom_count must be at least 1".into(),
            ));
        }
        if self.weights.bot == 0 && self.weights.atom == 0 {
            return Err(HarnessError::InvalidConfig(
                "bot and atom weights are both zero; no leaf can be generated".into(),
            ));
        }
        Ok(())
    }
}

/// One formula from `cfg` and `cfg.seed`.
pub fn gen_formula(cfg: &GenConfig) -> Result<Formula, HarnessError> {
    Ok(Generator::new(cfg, 0)?.formula())
}

#[derive(Clone, Copy)]
enum Choice {
    Bot,
    Atom,
    And,
    Or,
    Imp,
    Not,
    Forall,
    Exists,
}

const VARS: [&str; 3] = ["x", "y", "z"];

/// A deterministic stream of formulas. Quantified formulas are closed:
/// nullary atoms are `P0…`, unary ones `R0(v)…` with `v` bound.
pub struct Generator {
    cfg: GenConfig,
    rng: ChaCha8Rng,
}

impl Generator {
    /// Generator for `cfg.seed`; distinct `stream`s give independent
    /// sequences from the same seed.
    pub fn new(cfg: &GenConfig, stream: u64) -> Result<Generator, HarnessError> {
        cfg.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(stream);
        Ok(Generator {
            cfg: cfg.clone(),
            rng,
        })
    }

    pub fn config(&self) -> &GenConfig {
        &self.cfg
    }

    pub fn formula(&mut self) -> Formula {
        self.formula_of_depth(self.cfg.max_depth)
    }

    /// The root is a connective whenever `depth > 0`.
    pub fn formula_of_depth(&mut self, depth: usize) -> Formula {
        self.gen(depth, &mut Vec::new(), depth == 0)
    }

    /// A closed quantifier-free formula over `P0…` of depth at most 3.
    pub fn parameter(&mut self) -> Formula {
        let quantifiers = std::mem::replace(&mut self.cfg.allow_quantifiers, false);
        let f = self.formula_of_depth(self.cfg.max_depth.min(3));
        self.cfg.allow_quantifiers = quantifiers;
        f
    }

    /// A formula of the negative fragment: `⊥` and `¬P` leaves under
    /// `∧`, `→` and (when allowed) `∀`.
    pub fn nf_formula(&mut self) -> Formula {
        let depth = self.cfg.max_depth;
        self.gen_nf(depth, &mut Vec::new(), depth <= 1)
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    fn pick(&mut self, options: &[(Choice, u32)]) -> Choice {
        let live: Vec<(Choice, u32)> = options.iter().copied().filter(|(_, w)| *w > 0).collect();
        if live.is_empty() {
            return Choice::Atom;
        }
        let dist = WeightedIndex::new(live.iter().map(|(_, w)| *w)).expect("positive weights");
        live[dist.sample(&mut self.rng)].0
    }

    fn atom(&mut self, scope: &[String]) -> Formula {
        let i = self.rng.gen_range(0..self.cfg.atom_count);
        if !scope.is_empty() && self.rng.gen_bool(0.5) {
            let v = scope[self.rng.gen_range(0..scope.len())].clone();
            Formula::Atom(format!("R{i}"), vec![Term::Var(v)])
        } else {
            Formula::atom(format!("P{i}"))
        }
    }

    fn gen(&mut self, depth: usize, scope: &mut Vec<String>, leaves: bool) -> Formula {
        let w = self.cfg.weights.clone();
        let mut options = Vec::new();
        if leaves {
            options.extend([(Choice::Bot, w.bot), (Choice::Atom, w.atom)]);
        }
        if depth > 0 {
            options.extend([
                (Choice::And, w.and),
                (Choice::Or, w.or),
                (Choice::Imp, w.imp),
                (Choice::Not, w.not),
            ]);
            if self.cfg.allow_quantifiers {
                options.extend([(Choice::Forall, w.forall), (Choice::Exists, w.exists)]);
            }
        }
        match self.pick(&options) {
            Choice::Bot => Formula::Bot,
            Choice::Atom => self.atom(scope),
            Choice::And => Formula::and(
                self.gen(depth - 1, scope, true),
                self.gen(depth - 1, scope, true),
            ),
            Choice::Or => Formula::or(
                self.gen(depth - 1, scope, true),
                self.gen(depth - 1, scope, true),
            ),
            Choice::Imp => Formula::imp(
                self.gen(depth - 1, scope, true),
                self.gen(depth - 1, scope, true),
            ),
            Choice::Not => Formula::not(self.gen(depth - 1, scope, true)),
            c @ (Choice::Forall | Choice::Exists) => {
                let v = VARS[self.rng.gen_range(0..VARS.len())].to_string();
                scope.push(v.clone());
                let body = self.gen(depth - 1, scope, true);
                scope.pop();
                match c {
                    Choice::Forall => Formula::forall(v, body),
                    _ => Formula::exists(v, body),
                }
            }
        }
    }

    fn gen_nf(&mut self, depth: usize, scope: &mut Vec<String>, leaves: bool) -> Formula {
        let w = self.cfg.weights.clone();
        let mut options = Vec::new();
        if leaves {
            options.extend([(Choice::Bot, w.bot), (Choice::Not, w.atom)]);
        }
        if depth > 1 {
            options.extend([(Choice::And, w.and), (Choice::Imp, w.imp)]);
            if self.cfg.allow_quantifiers {
                options.push((Choice::Forall, w.forall));
            }
        }
        match self.pick(&options) {
            Choice::Bot => Formula::Bot,
            Choice::And => Formula::and(
                self.gen_nf(depth - 1, scope, true),
                self.gen_nf(depth - 1, scope, true),
            ),
            Choice::Imp => Formula::imp(
                self.gen_nf(depth - 1, scope, true),
                self.gen_nf(depth - 1, scope, true),
            ),
            Choice::Forall => {
                let v = VARS[self.rng.gen_range(0..VARS.len())].to_string();
                scope.push(v.clone());
                let body = self.gen_nf(depth - 1, scope, true);
                scope.pop();
                Formula::forall(v, body)
            }
            _ => Formula::not(self.atom(scope)),
        }
    }
}
