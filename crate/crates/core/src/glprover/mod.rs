//! Decision procedures with countermodels for GL, GL.3, GL.4 and the
//! constant logics FGLₙ.
//!
//! Every procedure returns a [`Verdict`]. Refutations carry a finite pointed
//! model that is re-checked with [`Model::check`] before being returned.

mod closure;
mod fgl;
mod layered;
mod tableau;

use serde::Serialize;
use thiserror::Error;

use crate::formula::{Formula, FragmentTag};
use crate::kripke::{KripkeError, Model};
use crate::limits::{LimitExceeded, Limits};

pub use fgl::{
    decide_fgl, eval_gn, gn_generated_model, normal_form, normal_form_traced, GnPoint, NfClause,
    NormalForm, Rank, MAX_CONSTANTS,
};
pub use layered::{
    decide_gl3, decide_gl3_with, decide_gl4, decide_gl4_with, decide_gl_closed, Gl4Engine,
};
pub use tableau::{decide_gl, decide_gl_with};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GlError {
    #[error("formula outside the fragment: {0}")]
    Fragment(String),
    #[error("formula too large: {0}")]
    TooLarge(String),
    #[error("bounds violation: {0}")]
    Bounds(String),
    #[error("engines disagree: {0}")]
    Disagreement(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Limit(#[from] LimitExceeded),
    #[error(transparent)]
    Kripke(#[from] KripkeError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Provable { trace: Vec<String> },
    Refuted { model: Model, world: usize },
}

impl Verdict {
    pub fn is_provable(&self) -> bool {
        matches!(self, Verdict::Provable { .. })
    }

    pub fn countermodel(&self) -> Option<(&Model, usize)> {
        match self {
            Verdict::Refuted { model, world } => Some((model, *world)),
            Verdict::Provable { .. } => None,
        }
    }

    /// Builds a refutation after confirming that `model` falsifies `f` at `world`.
    pub fn refuted(model: Model, world: usize, f: &Formula) -> Result<Verdict, GlError> {
        if model.check(world, f)? {
            return Err(GlError::Internal(format!(
                "countermodel does not falsify {f} at {}",
                model.frame.name(world)
            )));
        }
        Ok(Verdict::Refuted { model, world })
    }

    pub fn summary(&self) -> VerdictSummary {
        match self {
            Verdict::Provable { .. } => VerdictSummary {
                verdict: "provable",
                worlds: None,
                world: None,
            },
            Verdict::Refuted { model, world } => VerdictSummary {
                verdict: "refuted",
                worlds: Some(model.frame.len()),
                world: Some(model.frame.name(*world).to_string()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictSummary {
    pub verdict: &'static str,
    pub worlds: Option<usize>,
    pub world: Option<String>,
}

/// Knobs shared by the deciders.
#[derive(Debug, Clone, Copy, Default)]
pub struct DecideOptions {
    /// Run the second engine and fail on disagreement.
    pub cross_check: bool,
    pub limits: Limits,
}

pub(crate) fn require_level0(f: &Formula) -> Result<(), GlError> {
    match f.fragment_violation(FragmentTag::FullGL) {
        _ if f.max_level() > 0 => Err(GlError::Fragment("only the level-0 box is allowed".into())),
        Some(r) => Err(GlError::Fragment(r)),
        None => Ok(()),
    }
}
