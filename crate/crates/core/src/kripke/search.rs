//! Exhaustive countermodel search over small frames.
//!
//! Frames are bitmask adjacency rows (`succ[w]` has bit `v` set iff `wRv`),
//! so at most 64 worlds. The falsifying world is always world 0, which
//! reaches every other world; any countermodel's generated subframe can be
//! relabelled into that shape.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use super::{Frame, FrameClass, KripkeError, Model};
use crate::formula::{Atom, Formula};
use crate::limits::{LimitExceeded, Limits};

#[derive(Debug, Clone, Copy)]
enum Op {
    Bot,
    Atom(usize),
    Imp(usize, usize),
    Box(usize),
}

/// A level-0 formula flattened into a DAG of shared subformulas, evaluated
/// on bitmask frames.
#[derive(Debug, Clone)]
pub struct CompiledFormula {
    ops: Vec<Op>,
    atoms: Vec<Atom>,
}

impl CompiledFormula {
    pub fn compile(f: &Formula) -> Result<CompiledFormula, KripkeError> {
        let mut c = CompiledFormula {
            ops: Vec::new(),
            atoms: f.atoms().into_iter().collect(),
        };
        let mut memo = HashMap::new();
        c.push(f, &mut memo)?;
        Ok(c)
    }

    fn push<'a>(
        &mut self,
        f: &'a Formula,
        memo: &mut HashMap<&'a Formula, usize>,
    ) -> Result<usize, KripkeError> {
        if let Some(&i) = memo.get(f) {
            return Ok(i);
        }
        let op = match f {
            Formula::Bot => Op::Bot,
            Formula::Var(v) => Op::Atom(self.atom_index(&Atom::Var(v.clone()))),
            Formula::Const(i) => Op::Atom(self.atom_index(&Atom::Const(*i))),
            Formula::Implies(a, b) => {
                let a = self.push(a, memo)?;
                let b = self.push(b, memo)?;
                Op::Imp(a, b)
            }
            Formula::BoxN(0, a) => Op::Box(self.push(a, memo)?),
            Formula::BoxN(l, _) => return Err(KripkeError::UnsupportedLevel(*l)),
        };
        self.ops.push(op);
        memo.insert(f, self.ops.len() - 1);
        Ok(self.ops.len() - 1)
    }

    fn atom_index(&self, a: &Atom) -> usize {
        self.atoms
            .iter()
            .position(|x| x == a)
            .expect("atom collected")
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// Truth set of the whole formula; `atom_masks` follows [`Self::atoms`].
    pub fn eval(&self, succ: &[u64], atom_masks: &[u64], scratch: &mut Vec<u64>) -> u64 {
        let n = succ.len();
        let full = full_mask(n);
        scratch.clear();
        for op in &self.ops {
            let v = match *op {
                Op::Bot => 0,
                Op::Atom(i) => atom_masks[i],
                Op::Imp(a, b) => (!scratch[a] | scratch[b]) & full,
                Op::Box(a) => {
                    let fail = !scratch[a] & full;
                    let mut m = 0u64;
                    for (w, &s) in succ.iter().enumerate() {
                        if s & fail == 0 {
                            m |= 1 << w;
                        }
                    }
                    m
                }
            };
            scratch.push(v);
        }
        *scratch.last().expect("non-empty program")
    }
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Search one world count: the first frame (in the given order) and the first
/// valuation on it falsifying the formula at world 0.
fn scan(
    prog: &CompiledFormula,
    n: usize,
    frames: &[Vec<u64>],
    limits: &Limits,
) -> Result<Option<(usize, u64)>, LimitExceeded> {
    let k = prog.atoms.len();
    let bits = k * n;
    if bits > 40 {
        return Err(LimitExceeded {
            reason: format!("{k} atoms over {n} worlds is too many valuations"),
            progress: format!("searching {n}-world frames"),
        });
    }
    let total = 1u64 << bits;
    let full = full_mask(n);
    let found = frames
        .par_iter()
        .enumerate()
        .map_init(Vec::new, |scratch, (idx, succ)| {
            let mut masks = vec![0u64; k];
            for v in 0..total {
                if v & 0xfff == 0 && limits.expired() {
                    return Some(Err(idx));
                }
                for (a, m) in masks.iter_mut().enumerate() {
                    *m = (v >> (a * n)) & full;
                }
                if prog.eval(succ, &masks, scratch) & 1 == 0 {
                    return Some(Ok((idx, v)));
                }
            }
            None
        })
        .find_map_first(|x| x);
    match found {
        None => Ok(None),
        Some(Ok(hit)) => Ok(Some(hit)),
        Some(Err(idx)) => Err(LimitExceeded {
            reason: "timeout".into(),
            progress: format!(
                "exhausted frames below {n} worlds; at {n} worlds reached frame {idx} of {}",
                frames.len()
            ),
        }),
    }
}

fn to_model(prog: &CompiledFormula, succ: &[u64], v: u64) -> Model {
    let n = succ.len();
    let frame = Frame::from_fn(n, |a, b| (succ[a] >> b) & 1 == 1);
    let mut m = Model::new(frame);
    for (a, atom) in prog.atoms.iter().enumerate() {
        let mask = (v >> (a * n)) & full_mask(n);
        let worlds: BTreeSet<usize> = (0..n).filter(|&w| (mask >> w) & 1 == 1).collect();
        m.set(atom.clone(), worlds);
    }
    m
}

/// Rooted transitive irreflexive frames on `n` worlds where `i R j` implies
/// `i < j` and world 0 sees everything else. Produced in lexicographic order
/// of the predecessor sets `pred(1), pred(2), …`.
fn dag_frames(n: usize, class: FrameClass) -> Vec<Vec<u64>> {
    fn rec(j: usize, n: usize, class: FrameClass, preds: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if j == n {
            let mut succ = vec![0u64; n];
            for (t, &p) in preds.iter().enumerate() {
                for (s, row) in succ.iter_mut().enumerate() {
                    if (p >> s) & 1 == 1 {
                        *row |= 1 << t;
                    }
                }
            }
            out.push(succ);
            return;
        }
        let below = (1u64 << j) - 1;
        let choices: Vec<u64> = if class == FrameClass::Linear {
            vec![below]
        } else {
            (0..=below).filter(|c| c & 1 == 1).collect()
        };
        for c in choices {
            let closed = (0..j).all(|i| (c >> i) & 1 == 0 || preds[i] & !c == 0);
            if !closed {
                continue;
            }
            preds.push(c);
            if class != FrameClass::C || partial_in_c(preds) {
                rec(j + 1, n, class, preds, out);
            }
            preds.pop();
        }
    }
    let mut out = Vec::new();
    let mut preds = vec![0u64];
    if n == 1 {
        return vec![vec![0]];
    }
    rec(1, n, class, &mut preds, &mut out);
    out
}

/// C2 and C3 on the worlds placed so far, for triples touching the newest.
fn partial_in_c(preds: &[u64]) -> bool {
    let len = preds.len();
    let r = |a: usize, b: usize| (preds[b] >> a) & 1 == 1;
    let new = len - 1;
    for x in 0..len {
        for y in 0..len {
            if !r(x, y) {
                continue;
            }
            for z in 0..len {
                if !r(x, z) {
                    continue;
                }
                for w in 0..len {
                    if x != new && y != new && z != new && w != new {
                        continue;
                    }
                    if r(x, w)
                        && !(r(w, y)
                            || r(y, w)
                            || r(z, w)
                            || r(w, z)
                            || r(y, z)
                            || r(z, y)
                            || w == y
                            || z == y
                            || w == z)
                    {
                        return false;
                    }
                    if r(y, w) && !(r(z, w) || r(w, z) || r(y, z)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Arbitrary relations on `n` worlds with every world reachable from 0,
/// ordered by the row-major pair bitmask.
fn general_frames(n: usize, reflexive_allowed: bool) -> Vec<Vec<u64>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| reflexive_allowed || a != b)
        .collect();
    // Most significant bit is the first pair, so numeric order is lexicographic.
    let p = pairs.len();
    let mut out = Vec::new();
    for mask in 0..(1u64 << p) {
        let mut succ = vec![0u64; n];
        for (k, &(a, b)) in pairs.iter().enumerate() {
            if (mask >> (p - 1 - k)) & 1 == 1 {
                succ[a] |= 1 << b;
            }
        }
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0;
            for (w, &s) in succ.iter().enumerate() {
                if (frontier >> w) & 1 == 1 {
                    next |= s;
                }
            }
            frontier = next & !seen;
            seen |= next;
        }
        if seen == full_mask(n) {
            out.push(succ);
        }
    }
    out
}

fn frames_for(n: usize, class: FrameClass) -> Vec<Vec<u64>> {
    match class {
        FrameClass::All => general_frames(n, true),
        FrameClass::Irreflexive => general_frames(n, false),
        FrameClass::Gl | FrameClass::C | FrameClass::Linear => dag_frames(n, class),
    }
}

/// All frames of `class` on exactly `n` worlds in search order, with world 0
/// the root. For `All` and `Irreflexive` every world is reachable from 0; the
/// other classes are labelled so that `i R j` implies `i < j`.
pub fn enumerate_frames(n: usize, class: FrameClass) -> Vec<Frame> {
    frames_for(n, class)
        .into_iter()
        .map(|succ| Frame::from_fn(n, |a, b| (succ[a] >> b) & 1 == 1))
        .collect()
}

/// Smallest falsifying pointed model in `class` with at most
/// `limits.max_worlds` worlds, or `None` if every such model validates `f`.
///
/// Order: world count, then frame, then valuation bitmask (atom `a` at world
/// `w` is bit `a·n + w`). The first hit in that order is returned regardless
/// of thread scheduling.
pub fn countermodel_search(
    f: &Formula,
    class: FrameClass,
    limits: &Limits,
) -> Result<Option<(Model, usize)>, KripkeError> {
    if limits.max_worlds == 0 || limits.max_worlds > 64 {
        return Err(KripkeError::InvalidFrame(format!(
            "max_worlds must be in 1..=64, got {}",
            limits.max_worlds
        )));
    }
    let prog = CompiledFormula::compile(f)?;
    for n in 1..=limits.max_worlds {
        limits.check(|| format!("exhausted frames below {n} worlds"))?;
        let frames = frames_for(n, class);
        if let Some((idx, v)) = scan(&prog, n, &frames, limits)? {
            return Ok(Some((to_model(&prog, &frames[idx], v), 0)));
        }
    }
    Ok(None)
}

/// Unordered rooted trees as preorder parent arrays (`parent[0]` unused).
fn trees(size: usize, height: usize, branching: usize) -> Vec<Vec<usize>> {
    type Memo = HashMap<(usize, usize), Vec<Vec<usize>>>;

    fn build(size: usize, height: usize, b: usize, memo: &mut Memo) -> Vec<Vec<usize>> {
        if let Some(v) = memo.get(&(size, height)) {
            return v.clone();
        }
        let mut out = Vec::new();
        if size == 1 {
            out.push(vec![usize::MAX]);
        } else if height > 0 {
            // All candidate subtrees, indexed so children can be chosen in
            // non-increasing index order (one representative per multiset).
            let mut pool: Vec<Vec<usize>> = Vec::new();
            for s in 1..size {
                pool.extend(build(s, height - 1, b, memo));
            }
            let mut chosen = Vec::new();
            pick(&pool, pool.len(), size - 1, b, &mut chosen, &mut out);
        }
        memo.insert((size, height), out.clone());
        out
    }

    fn pick(
        pool: &[Vec<usize>],
        max_idx: usize,
        remaining: usize,
        slots: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if remaining == 0 {
            let mut parent = vec![usize::MAX];
            for &c in chosen.iter() {
                let base = parent.len();
                for (k, &p) in pool[c].iter().enumerate() {
                    parent.push(if k == 0 { 0 } else { base + p });
                }
            }
            out.push(parent);
            return;
        }
        if slots == 0 {
            return;
        }
        for idx in (0..max_idx).rev() {
            if pool[idx].len() <= remaining {
                chosen.push(idx);
                pick(
                    pool,
                    idx + 1,
                    remaining - pool[idx].len(),
                    slots - 1,
                    chosen,
                    out,
                );
                chosen.pop();
            }
        }
    }

    let mut memo = Memo::new();
    build(size, height, branching, &mut memo)
}

/// Countermodel search restricted to transitive closures of trees with the
/// given height and branching bounds, by increasing node count.
pub fn tree_countermodel_search(
    f: &Formula,
    max_height: usize,
    max_branching: usize,
    limits: &Limits,
) -> Result<Option<(Model, usize)>, KripkeError> {
    let prog = CompiledFormula::compile(f)?;
    for n in 1..=limits.max_worlds.min(64) {
        limits.check(|| format!("exhausted trees below {n} nodes"))?;
        let frames: Vec<Vec<u64>> = trees(n, max_height, max_branching)
            .into_iter()
            .map(|parent| {
                let mut succ = vec![0u64; n];
                // Preorder: every node's parent has a smaller index.
                for v in (1..n).rev() {
                    let p = parent[v];
                    succ[p] |= succ[v] | (1 << v);
                }
                succ
            })
            .collect();
        if let Some((idx, v)) = scan(&prog, n, &frames, limits)? {
            return Ok(Some((to_model(&prog, &frames[idx], v), 0)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{instantiate_schema, parse_formula, Schema, SchemaArgs, Syntax};
    use crate::kripke::frame_class;

    fn lim(n: usize) -> Limits {
        Limits::unbounded_time(n)
    }

    #[test]
    fn compiled_matches_model_check() {
        let f = parse_formula("[]([]p -> p) -> []p & <>q").unwrap();
        let prog = CompiledFormula::compile(&f).unwrap();
        for succ in frames_for(4, FrameClass::Irreflexive).iter().take(200) {
            for v in 0..(1u64 << 8) {
                let masks = [v & 0xf, v >> 4];
                let truth = prog.eval(succ, &masks, &mut Vec::new());
                let m = to_model(&prog, succ, v);
                let expect = m.truth_set(&f).unwrap();
                for (w, &e) in expect.iter().enumerate() {
                    assert_eq!((truth >> w) & 1 == 1, e);
                }
            }
        }
    }

    #[test]
    fn dag_frames_are_in_class() {
        for n in 1..=5 {
            let gl = frames_for(n, FrameClass::Gl);
            let c = frames_for(n, FrameClass::C);
            for (class, frames) in [(FrameClass::Gl, &gl), (FrameClass::C, &c)] {
                for succ in frames {
                    let fr = Frame::from_fn(n, |a, b| (succ[a] >> b) & 1 == 1);
                    let r = frame_class(&fr);
                    assert!(r.is_gl());
                    assert_eq!(fr.reachable_from(0).len(), n);
                    if class == FrameClass::C {
                        assert!(r.in_c());
                    }
                }
            }
            // Pruning drops exactly the GL-frames outside the class.
            let kept = gl
                .iter()
                .filter(|s| frame_class(&Frame::from_fn(n, |a, b| (s[a] >> b) & 1 == 1)).in_c())
                .count();
            assert_eq!(kept, c.len(), "n = {n}");
        }
        assert_eq!(frames_for(4, FrameClass::Linear).len(), 1);
    }

    #[test]
    fn lob_has_no_small_countermodel() {
        let lob =
            instantiate_schema(Schema::Lob, &SchemaArgs::from([("A", Formula::var("p"))])).unwrap();
        assert!(countermodel_search(&lob, FrameClass::Gl, &lim(4))
            .unwrap()
            .is_none());
    }

    #[test]
    fn linearity_refuted_by_fork() {
        let f = parse_formula("[]([]p -> q) | [](boxplus q -> p)").unwrap();
        let (m, w) = countermodel_search(&f, FrameClass::Gl, &lim(3))
            .unwrap()
            .unwrap();
        assert_eq!(m.frame.len(), 3);
        assert!(!m.check(w, &f).unwrap());
        assert!(!frame_class(&m.frame).linear);
    }

    #[test]
    fn q2_valid_on_c() {
        let q2 = instantiate_schema(
            Schema::Q2,
            &SchemaArgs::from([("A", Formula::var("p")), ("B", Formula::var("q"))]),
        )
        .unwrap();
        assert!(countermodel_search(&q2, FrameClass::C, &lim(6))
            .unwrap()
            .is_none());
        assert!(countermodel_search(&q2, FrameClass::Gl, &lim(4))
            .unwrap()
            .is_some());
    }

    #[test]
    fn four_fails_without_transitivity() {
        let f = parse_formula("[]p -> [][]p").unwrap();
        let (m, _) = countermodel_search(&f, FrameClass::Irreflexive, &lim(3))
            .unwrap()
            .unwrap();
        // Two worlds seeing each other.
        assert_eq!(m.frame.len(), 2);
        assert!(m.frame.related(0, 1) && m.frame.related(1, 0));
        assert!(countermodel_search(&f, FrameClass::Gl, &lim(4))
            .unwrap()
            .is_none());
    }

    #[test]
    fn reflexive_point_refutes_lob() {
        let f = parse_formula("[]([]p -> p) -> []p").unwrap();
        let (m, _) = countermodel_search(&f, FrameClass::All, &lim(1))
            .unwrap()
            .unwrap();
        assert!(m.frame.related(0, 0));
    }

    #[test]
    fn tree_counts() {
        // Unordered rooted trees: 1, 1, 2, 4, 9, 20 for sizes 1..=6.
        let counts: Vec<usize> = (1..=6).map(|s| trees(s, 10, 10).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 9, 20]);
        assert_eq!(trees(4, 1, 10).len(), 1);
        assert_eq!(trees(4, 10, 1).len(), 1);
    }

    #[test]
    fn tree_search_finds_fork() {
        let f = parse_formula("[]([]p -> q) | [](boxplus q -> p)").unwrap();
        let (m, _) = tree_countermodel_search(&f, 3, 3, &lim(5))
            .unwrap()
            .unwrap();
        assert_eq!(m.frame.len(), 3);
    }

    #[test]
    fn timeout_is_reported() {
        let f = parse_formula("[]([]p -> p) -> []p").unwrap();
        let limits = Limits {
            max_worlds: 6,
            deadline: Some(std::time::Instant::now()),
        };
        assert!(matches!(
            countermodel_search(&f, FrameClass::Gl, &limits),
            Err(KripkeError::Limit(_))
        ));
    }
}
