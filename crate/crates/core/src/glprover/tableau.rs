//! Signed tableau for GL.
//!
//! A node is a set of signed subformulas. Propositional rules saturate it;
//! each `F □A` then opens a successor holding `T B, T □B` for every `T □B` of
//! the node together with `T □A, F A`. The `T □A` makes the boxed set grow
//! along every path, so the tableau is finite. Open tableaux are read off as
//! trees whose transitive closure is the countermodel.

use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use super::closure::{Closure, Op};
use super::{require_level0, DecideOptions, GlError, Verdict};
use crate::formula::Formula;
use crate::kripke::{tree_countermodel_search, Frame, Model};
use crate::limits::{LimitExceeded, Limits};

/// Literal: subformula index times two, plus one for `T`.
type Lit = u32;

fn lit(op: usize, truth: bool) -> Lit {
    ((op as u32) << 1) | truth as u32
}

#[derive(Debug)]
struct Node {
    true_atoms: Vec<usize>,
    children: Vec<Rc<Node>>,
}

struct Tableau<'a> {
    c: &'a Closure,
    memo: HashMap<Vec<Lit>, Option<Rc<Node>>>,
    limits: &'a Limits,
    steps: u64,
}

impl Tableau<'_> {
    fn sat(&mut self, start: Vec<Lit>) -> Result<Option<Rc<Node>>, LimitExceeded> {
        if let Some(r) = self.memo.get(&start) {
            return Ok(r.clone());
        }
        self.steps += 1;
        if self.steps.is_multiple_of(256) {
            let n = self.memo.len();
            self.limits
                .check(|| format!("{n} tableau nodes explored"))?;
        }
        let r = self.expand(BTreeSet::new(), start.clone())?;
        self.memo.insert(start, r.clone());
        Ok(r)
    }

    fn expand(
        &mut self,
        mut set: BTreeSet<Lit>,
        mut pending: Vec<Lit>,
    ) -> Result<Option<Rc<Node>>, LimitExceeded> {
        while let Some(l) = pending.pop() {
            if set.contains(&(l ^ 1)) {
                return Ok(None);
            }
            if !set.insert(l) {
                continue;
            }
            let truth = l & 1 == 1;
            match (self.c.ops[(l >> 1) as usize], truth) {
                (Op::Bot, true) => return Ok(None),
                (Op::Imp(a, b), false) => {
                    pending.push(lit(a, true));
                    pending.push(lit(b, false));
                }
                (Op::Imp(a, b), true) => {
                    let mut left = pending.clone();
                    left.push(lit(a, false));
                    if let Some(n) = self.expand(set.clone(), left)? {
                        return Ok(Some(n));
                    }
                    pending.push(lit(b, true));
                }
                _ => {}
            }
        }
        self.modal(&set)
    }

    fn modal(&mut self, set: &BTreeSet<Lit>) -> Result<Option<Rc<Node>>, LimitExceeded> {
        let mut boxed = Vec::new();
        let mut refuted = Vec::new();
        let mut true_atoms = Vec::new();
        for &l in set {
            match self.c.ops[(l >> 1) as usize] {
                Op::Box(k) if l & 1 == 1 => boxed.push(k),
                Op::Box(k) => refuted.push(k),
                Op::Atom(a) if l & 1 == 1 => true_atoms.push(a),
                _ => {}
            }
        }
        let mut children = Vec::new();
        for &k in &refuted {
            let mut next: Vec<Lit> = boxed
                .iter()
                .flat_map(|&j| [lit(self.c.box_body[j], true), lit(self.c.box_op[j], true)])
                .collect();
            next.push(lit(self.c.box_op[k], true));
            next.push(lit(self.c.box_body[k], false));
            next.sort_unstable();
            next.dedup();
            match self.sat(next)? {
                Some(child) => children.push(child),
                None => return Ok(None),
            }
        }
        Ok(Some(Rc::new(Node {
            true_atoms,
            children,
        })))
    }
}

fn tree_model(c: &Closure, root: &Node) -> Model {
    fn walk(n: &Node, parent: Option<usize>, nodes: &mut Vec<(Option<usize>, Vec<usize>)>) {
        let me = nodes.len();
        nodes.push((parent, n.true_atoms.clone()));
        for ch in &n.children {
            walk(ch, Some(me), nodes);
        }
    }
    let mut nodes = Vec::new();
    walk(root, None, &mut nodes);
    let edges: Vec<(usize, usize)> = nodes
        .iter()
        .enumerate()
        .filter_map(|(i, (p, _))| p.map(|p| (p, i)))
        .collect();
    let names = (0..nodes.len()).map(|i| i.to_string()).collect();
    let frame = Frame::new(names, &edges)
        .expect("tree indices are in range")
        .transitive_closure();
    let mut m = Model::new(frame);
    for (a, atom) in c.atoms.iter().enumerate() {
        let worlds: Vec<usize> = (0..nodes.len())
            .filter(|&w| nodes[w].1.contains(&a))
            .collect();
        m.set(atom.clone(), worlds);
    }
    m
}

/// GL-validity (finite irreflexive transitive frames), by tableau.
pub fn decide_gl(f: &Formula) -> Result<Verdict, GlError> {
    decide_gl_with(f, &DecideOptions::default())
}

/// As [`decide_gl`]; with `cross_check`, also searches tree-shaped frames of
/// height at most `b + 1` and branching at most `b` (`b` the number of boxed
/// subformulas), with at most `limits.max_worlds` worlds. A disagreement
/// within the searched space is an error.
pub fn decide_gl_with(f: &Formula, opts: &DecideOptions) -> Result<Verdict, GlError> {
    require_level0(f)?;
    let c = Closure::new(f)?;
    let mut t = Tableau {
        c: &c,
        memo: HashMap::new(),
        limits: &opts.limits,
        steps: 0,
    };
    let open = t.sat(vec![lit(c.root(), false)])?;
    let explored = t.memo.len();
    let verdict = match open {
        None => Verdict::Provable {
            trace: vec![format!(
                "tableau for F {f} closed; {explored} nodes explored"
            )],
        },
        Some(root) => Verdict::refuted(tree_model(&c, &root), 0, f)?,
    };
    if opts.cross_check {
        let b = c.num_boxes();
        let found = tree_countermodel_search(f, b + 1, b.max(1), &opts.limits)?;
        match (&verdict, found) {
            (Verdict::Provable { .. }, Some((m, _))) => {
                return Err(GlError::Disagreement(format!(
                    "tableau proves {f} but a {}-world tree refutes it",
                    m.frame.len()
                )))
            }
            (Verdict::Refuted { model, .. }, None)
                if model.frame.len() <= opts.limits.max_worlds =>
            {
                return Err(GlError::Disagreement(format!(
                    "tableau refutes {f} with {} worlds but the tree search found nothing",
                    model.frame.len()
                )))
            }
            _ => {}
        }
    }
    Ok(verdict)
}
