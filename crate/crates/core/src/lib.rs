//! Decision procedures, countermodels and frame constructions for provability
//! logics with restricted realizations: GL, GL.3, GL.4, the constant logics
//! FGLₙ, the closed fragment of GLP over Ignatiev's frame, and ILW.3 through a
//! translation into GL.3.

pub mod experiments;
pub mod formula;
pub mod generate;
pub mod glprover;
pub mod ignatiev;
pub mod interp;
pub mod kripke;
pub mod limits;
pub mod ordinal;

pub use formula::{Atom, Formula, FragmentTag, IlFormula, Syntax};
pub use glprover::{DecideOptions, Verdict};
pub use kripke::{Frame, Model};
pub use limits::{LimitExceeded, Limits};
pub use ordinal::Ordinal;
