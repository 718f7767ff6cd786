//! Frame-class predicates, evaluated by direct quantification.

use serde::Serialize;

use super::Frame;

/// Selector for [`countermodel_search`](super::countermodel_search).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrameClass {
    /// Every relation.
    All,
    /// Irreflexive relations, transitivity not required.
    Irreflexive,
    /// Finite, irreflexive, transitive.
    Gl,
    /// GL-frames that are non-triple-branching and strongly confluent.
    C,
    /// Finite strict linear orders.
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FrameClassReport {
    pub irreflexive: bool,
    pub transitive: bool,
    pub c2: bool,
    pub c3: bool,
    pub linear: bool,
}

impl FrameClassReport {
    /// C1 ∧ C2 ∧ C3.
    pub fn in_c(&self) -> bool {
        self.irreflexive && self.transitive && self.c2 && self.c3
    }

    pub fn is_gl(&self) -> bool {
        self.irreflexive && self.transitive
    }
}

pub(crate) fn irreflexive(fr: &Frame) -> bool {
    (0..fr.len()).all(|w| !fr.related(w, w))
}

pub(crate) fn transitive(fr: &Frame) -> bool {
    let n = fr.len();
    (0..n).all(|a| {
        fr.successors(a)
            .all(|b| fr.successors(b).all(|c| fr.related(a, c)))
    })
}

/// Non-triple branching at `x` for successors `y, z, w`.
pub(crate) fn c2_at(fr: &Frame, y: usize, z: usize, w: usize) -> bool {
    let r = |a, b| fr.related(a, b);
    r(w, y) || r(y, w) || r(z, w) || r(w, z) || r(y, z) || r(z, y) || w == y || z == y || w == z
}

pub(crate) fn c2(fr: &Frame) -> bool {
    (0..fr.len()).all(|x| {
        let succ: Vec<usize> = fr.successors(x).collect();
        succ.iter().all(|&y| {
            succ.iter()
                .all(|&z| succ.iter().all(|&w| c2_at(fr, y, z, w)))
        })
    })
}

/// Strong confluence: `xRy ∧ xRz ∧ yRw ⇒ zRw ∨ wRz ∨ yRz`.
pub(crate) fn c3(fr: &Frame) -> bool {
    (0..fr.len()).all(|x| {
        fr.successors(x).all(|y| {
            fr.successors(x).all(|z| {
                fr.successors(y)
                    .all(|w| fr.related(z, w) || fr.related(w, z) || fr.related(y, z))
            })
        })
    })
}

pub(crate) fn linear(fr: &Frame) -> bool {
    let n = fr.len();
    irreflexive(fr)
        && transitive(fr)
        && (0..n).all(|a| (0..n).all(|b| a == b || fr.related(a, b) || fr.related(b, a)))
}

pub fn frame_class(fr: &Frame) -> FrameClassReport {
    FrameClassReport {
        irreflexive: irreflexive(fr),
        transitive: transitive(fr),
        c2: c2(fr),
        c3: c3(fr),
        linear: linear(fr),
    }
}
