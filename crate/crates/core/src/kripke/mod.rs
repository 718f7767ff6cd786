//! Finite Kripke frames and models.
//!
//! Worlds are addressed by index; every frame also carries a display name per
//! world so that JSON and DOT round-trips keep the caller's ids.

mod class;
mod io;
mod pmorph;
mod search;
mod subst;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::formula::{Atom, Formula};
use crate::limits::LimitExceeded;

pub use class::{frame_class, FrameClass, FrameClassReport};
pub use io::{frame_to_dot, model_to_dot, FrameJson, WorldId};
pub use pmorph::{
    build_pmorphism_from_g1, g1_generated_frame, G1Point, PMorphism, PMorphismFailure,
};
pub use search::{
    countermodel_search, enumerate_frames, tree_countermodel_search, CompiledFormula,
};
pub use subst::restricted_substitution;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KripkeError {
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("level-{0} boxes are not evaluated on single-relation frames")]
    UnsupportedLevel(u32),
    #[error("`|>` cannot be evaluated on a plain Kripke model")]
    UnsupportedConnective,
    #[error("invalid frame: {0}")]
    InvalidFrame(String),
    #[error("frame is outside the required class: {0}")]
    NotInClass(String),
    #[error("p-morphism construction failed verification: {0}")]
    ConstructionFailed(String),
    #[error("defining formula for world `{0}` does not single it out")]
    NotDefining(String),
    #[error(transparent)]
    Limit(#[from] LimitExceeded),
    #[error("malformed model JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    names: Vec<String>,
    adj: Vec<Vec<bool>>,
}

impl Frame {
    /// Builds a frame from world names and edges given by index.
    pub fn new(names: Vec<String>, edges: &[(usize, usize)]) -> Result<Frame, KripkeError> {
        if names.is_empty() {
            return Err(KripkeError::InvalidFrame(
                "a frame needs at least one world".into(),
            ));
        }
        let unique: BTreeSet<&String> = names.iter().collect();
        if unique.len() != names.len() {
            return Err(KripkeError::InvalidFrame("duplicate world ids".into()));
        }
        let n = names.len();
        let mut adj = vec![vec![false; n]; n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(KripkeError::InvalidFrame(format!(
                    "edge ({a},{b}) out of range"
                )));
            }
            adj[a][b] = true;
        }
        Ok(Frame { names, adj })
    }

    /// Frame on worlds named `0..n` with relation given by a predicate.
    pub fn from_fn(n: usize, rel: impl Fn(usize, usize) -> bool) -> Frame {
        let names = (0..n).map(|i| i.to_string()).collect();
        let adj = (0..n)
            .map(|i| (0..n).map(|j| rel(i, j)).collect())
            .collect();
        Frame { names, adj }
    }

    /// Strict linear order on ranks `0..n`: rank `a` sees rank `b` iff `a > b`.
    pub fn linear(n: usize) -> Frame {
        Frame::from_fn(n, |a, b| a > b)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, w: usize) -> &str {
        &self.names[w]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize, KripkeError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| KripkeError::UnknownWorld(name.to_string()))
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.adj[a][b]
    }

    pub fn successors(&self, w: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[w]
            .iter()
            .enumerate()
            .filter_map(|(j, &r)| r.then_some(j))
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|a| self.successors(a).map(move |b| (a, b)))
            .collect()
    }

    pub fn rename(&mut self, names: Vec<String>) {
        assert_eq!(names.len(), self.len());
        self.names = names;
    }

    pub fn transitive_closure(&self) -> Frame {
        let n = self.len();
        let mut adj = self.adj.clone();
        for k in 0..n {
            for i in 0..n {
                if adj[i][k] {
                    let row = adj[k].clone();
                    for (j, r) in row.into_iter().enumerate() {
                        if r {
                            adj[i][j] = true;
                        }
                    }
                }
            }
        }
        Frame {
            names: self.names.clone(),
            adj,
        }
    }

    /// Worlds reachable from `x` in one or more steps, plus `x`, in index order.
    pub fn reachable_from(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        seen[x] = true;
        let mut stack = vec![x];
        while let Some(w) = stack.pop() {
            for v in self.successors(w) {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        (0..self.len()).filter(|&w| seen[w]).collect()
    }

    /// Restriction to the given worlds (kept in the given order).
    pub fn restrict(&self, worlds: &[usize]) -> Frame {
        Frame {
            names: worlds.iter().map(|&w| self.names[w].clone()).collect(),
            adj: worlds
                .iter()
                .map(|&a| worlds.iter().map(|&b| self.adj[a][b]).collect())
                .collect(),
        }
    }

    /// The subframe generated by `x`; returns it with the original indices.
    pub fn generated_subframe(&self, x: usize) -> (Frame, Vec<usize>) {
        let worlds = self.reachable_from(x);
        (self.restrict(&worlds), worlds)
    }
}

/// A frame together with a valuation of atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    pub frame: Frame,
    valuation: BTreeMap<Atom, BTreeSet<usize>>,
}

impl Model {
    pub fn new(frame: Frame) -> Model {
        Model {
            frame,
            valuation: BTreeMap::new(),
        }
    }

    pub fn with_valuation(
        frame: Frame,
        valuation: BTreeMap<Atom, BTreeSet<usize>>,
    ) -> Result<Model, KripkeError> {
        if let Some(bad) = valuation.values().flatten().find(|&&w| w >= frame.len()) {
            return Err(KripkeError::InvalidFrame(format!(
                "valuation mentions world {bad}"
            )));
        }
        Ok(Model { frame, valuation })
    }

    pub fn set(&mut self, atom: Atom, worlds: impl IntoIterator<Item = usize>) {
        self.valuation.insert(atom, worlds.into_iter().collect());
    }

    pub fn valuation(&self) -> &BTreeMap<Atom, BTreeSet<usize>> {
        &self.valuation
    }

    /// Atoms without an entry are false everywhere.
    pub fn holds_atom(&self, atom: &Atom, w: usize) -> bool {
        self.valuation.get(atom).is_some_and(|s| s.contains(&w))
    }

    /// Truth value of `f` at every world.
    pub fn truth_set(&self, f: &Formula) -> Result<Vec<bool>, KripkeError> {
        let n = self.frame.len();
        Ok(match f {
            Formula::Bot => vec![false; n],
            Formula::Var(v) => {
                let a = Atom::Var(v.clone());
                (0..n).map(|w| self.holds_atom(&a, w)).collect()
            }
            Formula::Const(i) => {
                let a = Atom::Const(*i);
                (0..n).map(|w| self.holds_atom(&a, w)).collect()
            }
            Formula::Implies(a, b) => {
                let ta = self.truth_set(a)?;
                let tb = self.truth_set(b)?;
                ta.iter().zip(&tb).map(|(&x, &y)| !x || y).collect()
            }
            Formula::BoxN(0, a) => {
                let ta = self.truth_set(a)?;
                (0..n)
                    .map(|w| self.frame.successors(w).all(|v| ta[v]))
                    .collect()
            }
            Formula::BoxN(level, _) => return Err(KripkeError::UnsupportedLevel(*level)),
        })
    }

    /// `m, w ⊨ f`.
    pub fn check(&self, w: usize, f: &Formula) -> Result<bool, KripkeError> {
        if w >= self.frame.len() {
            return Err(KripkeError::UnknownWorld(w.to_string()));
        }
        Ok(self.truth_set(f)?[w])
    }

    pub fn check_named(&self, world: &str, f: &Formula) -> Result<bool, KripkeError> {
        self.check(self.frame.index_of(world)?, f)
    }

    /// Pulls the valuation back along `map: source world → self world`.
    pub fn pull_back(&self, source: Frame, map: &[usize]) -> Model {
        let valuation = self
            .valuation
            .iter()
            .map(|(a, ws)| {
                let pre = (0..source.len())
                    .filter(|&x| ws.contains(&map[x]))
                    .collect();
                (a.clone(), pre)
            })
            .collect();
        Model {
            frame: source,
            valuation,
        }
    }
}
