//! Subformula closure with bitset evaluation at a single point.

use std::collections::HashMap;

use super::GlError;
use crate::formula::{Atom, Formula};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Op {
    Bot,
    Atom(usize),
    Imp(usize, usize),
    /// Box number `k`; its body is `Closure::box_body[k]`.
    Box(usize),
}

/// Distinct subformulas of a level-0 formula, children before parents, the
/// formula itself last.
#[derive(Debug, Clone)]
pub(crate) struct Closure {
    pub ops: Vec<Op>,
    pub atoms: Vec<Atom>,
    pub box_op: Vec<usize>,
    pub box_body: Vec<usize>,
}

pub(crate) const MAX_BOXES: usize = 64;

impl Closure {
    pub fn new(f: &Formula) -> Result<Closure, GlError> {
        let mut c = Closure {
            ops: Vec::new(),
            atoms: f.atoms().into_iter().collect(),
            box_op: Vec::new(),
            box_body: Vec::new(),
        };
        if c.atoms.len() > 24 {
            return Err(GlError::TooLarge(format!("{} atoms", c.atoms.len())));
        }
        let mut memo = HashMap::new();
        c.push(f, &mut memo)?;
        if c.box_op.len() > MAX_BOXES {
            return Err(GlError::TooLarge(format!(
                "{} box subformulas",
                c.box_op.len()
            )));
        }
        Ok(c)
    }

    fn push<'a>(
        &mut self,
        f: &'a Formula,
        memo: &mut HashMap<&'a Formula, usize>,
    ) -> Result<usize, GlError> {
        if let Some(&i) = memo.get(f) {
            return Ok(i);
        }
        let op = match f {
            Formula::Bot => Op::Bot,
            Formula::Var(_) | Formula::Const(_) => {
                let a = match f {
                    Formula::Var(v) => Atom::Var(v.clone()),
                    Formula::Const(i) => Atom::Const(*i),
                    _ => unreachable!(),
                };
                Op::Atom(
                    self.atoms
                        .iter()
                        .position(|x| *x == a)
                        .expect("atom collected"),
                )
            }
            Formula::Implies(a, b) => {
                let a = self.push(a, memo)?;
                let b = self.push(b, memo)?;
                Op::Imp(a, b)
            }
            Formula::BoxN(0, a) => {
                let body = self.push(a, memo)?;
                self.box_body.push(body);
                self.box_op.push(self.ops.len());
                Op::Box(self.box_body.len() - 1)
            }
            Formula::BoxN(l, _) => {
                return Err(GlError::Fragment(format!(
                    "level-{l} box; only the level-0 box is allowed"
                )))
            }
        };
        self.ops.push(op);
        memo.insert(f, self.ops.len() - 1);
        Ok(self.ops.len() - 1)
    }

    pub fn root(&self) -> usize {
        self.ops.len() - 1
    }

    pub fn num_boxes(&self) -> usize {
        self.box_op.len()
    }

    /// All boxes true: the state of a point without successors.
    pub fn all_boxes(&self) -> u64 {
        if self.num_boxes() == 64 {
            u64::MAX
        } else {
            (1u64 << self.num_boxes()) - 1
        }
    }

    /// Truth of every subformula at a point where exactly the boxes in
    /// `state` hold and exactly the atoms in `val` are true.
    pub fn eval(&self, state: u64, val: u64, out: &mut Vec<bool>) {
        out.clear();
        for op in &self.ops {
            let t = match *op {
                Op::Bot => false,
                Op::Atom(a) => (val >> a) & 1 == 1,
                Op::Imp(a, b) => !out[a] || out[b],
                Op::Box(k) => (state >> k) & 1 == 1,
            };
            out.push(t);
        }
    }

    /// Boxes whose body holds, given a truth vector from [`Self::eval`].
    pub fn bodies_true(&self, truth: &[bool]) -> u64 {
        self.box_body
            .iter()
            .enumerate()
            .filter(|&(_, &b)| truth[b])
            .fold(0, |m, (k, _)| m | (1 << k))
    }

    pub fn num_valuations(&self) -> u64 {
        1u64 << self.atoms.len()
    }
}
