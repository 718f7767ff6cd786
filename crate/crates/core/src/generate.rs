//! Seeded random formula generators and a fixed size-ordered enumeration.
//!
//! All generators are deterministic given the seed (ChaCha8). Modal depth is
//! bounded exactly: every `□`, `◇` or `[n]` costs one level, every `▷` two.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::{Formula, IlFormula, Syntax};

/// Shape parameters for random formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenConfig {
    pub vars: Vec<String>,
    /// Constants `s1 … s_consts`.
    pub consts: u32,
    pub max_depth: usize,
    /// Highest box level; 0 for the GL language.
    pub max_level: u32,
    /// Upper bound on connective nodes.
    pub max_size: usize,
    /// Upper bound on box nodes (diamonds and `▷` count as one box each).
    pub max_boxes: usize,
    pub rhd: bool,
}

impl GenConfig {
    /// GL formulas over `p, q, …`.
    pub fn gl(vars: usize, max_depth: usize) -> GenConfig {
        GenConfig {
            vars: ["p", "q", "r", "t", "u"][..vars.min(5)]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            consts: 0,
            max_depth,
            max_level: 0,
            max_size: 8,
            max_boxes: usize::MAX,
            rhd: false,
        }
    }

    /// Variable-free GL formulas (fragment ℬ).
    pub fn closed(max_depth: usize) -> GenConfig {
        GenConfig {
            vars: Vec::new(),
            ..GenConfig::gl(0, max_depth)
        }
    }

    /// Formulas of ℱₙ: constants `s1 … sn`, no variables.
    pub fn constants(n: u32, max_depth: usize) -> GenConfig {
        GenConfig {
            consts: n,
            ..GenConfig::closed(max_depth)
        }
    }

    /// Variable-free polymodal formulas (fragment 𝒟) with levels `0..=max_level`.
    pub fn polymodal(max_level: u32, max_depth: usize) -> GenConfig {
        GenConfig {
            max_level,
            ..GenConfig::closed(max_depth)
        }
    }

    /// Interpretability formulas over `p, q, …`.
    pub fn il(vars: usize, max_depth: usize) -> GenConfig {
        GenConfig {
            rhd: true,
            ..GenConfig::gl(vars, max_depth)
        }
    }

    pub fn with_size(mut self, max_size: usize) -> GenConfig {
        self.max_size = max_size;
        self
    }

    pub fn with_boxes(mut self, max_boxes: usize) -> GenConfig {
        self.max_boxes = max_boxes;
        self
    }
}

#[derive(Debug, Clone, Copy)]
enum Op {
    Not,
    And,
    Or,
    Imp,
    Box,
    Dia,
    Rhd,
}

/// Random formula source.
#[derive(Debug, Clone)]
pub struct FormulaGen {
    config: GenConfig,
    rng: ChaCha8Rng,
}

impl FormulaGen {
    pub fn new(config: GenConfig, seed: u64) -> FormulaGen {
        FormulaGen {
            config,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn config(&self) -> &GenConfig {
        &self.config
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// One formula in either language; `▷` only appears if the language has it.
    pub fn formula<F: Syntax>(&mut self) -> F {
        let size = self.rng.gen_range(0..=self.config.max_size);
        let mut boxes = 0;
        self.build(self.config.max_depth, size, &mut boxes)
    }

    pub fn gl(&mut self) -> Formula {
        self.formula()
    }

    pub fn il(&mut self) -> IlFormula {
        self.formula()
    }

    /// `count` GL formulas.
    pub fn gl_batch(&mut self, count: usize) -> Vec<Formula> {
        (0..count).map(|_| self.gl()).collect()
    }

    /// Boolean combination of `□ᵏ⊥` with `k ≤ max_k`, and `⊤`.
    pub fn rank_combination(&mut self, max_k: usize) -> Formula {
        let size = self.rng.gen_range(0..=3);
        self.rank_comb(size, max_k)
    }

    fn rank_comb(&mut self, size: usize, max_k: usize) -> Formula {
        if size == 0 {
            return match self.rng.gen_range(0..max_k + 3) {
                0 => Formula::top(),
                1 => Formula::Bot,
                k => Formula::box_iter(k - 2, Formula::Bot),
            };
        }
        match self.rng.gen_range(0..4) {
            0 => Formula::not(self.rank_comb(size - 1, max_k)),
            op => {
                let l = self.rng.gen_range(0..size);
                let a = self.rank_comb(l, max_k);
                let b = self.rank_comb(size - 1 - l, max_k);
                match op {
                    1 => Formula::and(a, b),
                    2 => Formula::or(a, b),
                    _ => Formula::imp(a, b),
                }
            }
        }
    }

    fn leaf<F: Syntax>(&mut self) -> F {
        let vars = self.config.vars.len();
        let consts = self.config.consts as usize;
        let atoms = vars + consts;
        // Constants ⊥ and ⊤ are rarer once real atoms exist.
        let pick = if atoms == 0 || self.rng.gen_bool(0.15) {
            self.rng.gen_range(0..2)
        } else {
            2 + self.rng.gen_range(0..atoms)
        };
        match pick {
            0 => F::bot(),
            1 => F::top(),
            k if k - 2 < vars => F::var(&self.config.vars[k - 2]),
            k => F::cons((k - 2 - vars) as u32 + 1),
        }
    }

    fn build<F: Syntax>(&mut self, depth: usize, size: usize, boxes: &mut usize) -> F {
        if size == 0 {
            return self.leaf();
        }
        let has_rhd = F::try_rhd(F::bot(), F::bot()).is_some() && self.config.rhd;
        let modal = depth > 0 && *boxes < self.config.max_boxes;
        let mut ops = vec![Op::Not];
        if size >= 2 {
            ops.extend([Op::And, Op::Or, Op::Imp, Op::Imp]);
        }
        if modal {
            ops.extend([Op::Box, Op::Box, Op::Dia]);
            if has_rhd && depth >= 2 && size >= 2 {
                ops.extend([Op::Rhd, Op::Rhd]);
            }
        }
        let op = *ops.choose(&mut self.rng).expect("non-empty");
        match op {
            Op::Not => F::not(self.build(depth, size - 1, boxes)),
            Op::Box | Op::Dia => {
                *boxes += 1;
                let level = self.rng.gen_range(0..=self.config.max_level);
                let a = self.build(depth - 1, size - 1, boxes);
                match op {
                    Op::Box => F::boxn(level, a),
                    _ => F::dian(level, a),
                }
            }
            Op::Rhd => {
                *boxes += 1;
                let l = self.rng.gen_range(0..size);
                let a = self.build(depth - 2, l, boxes);
                let b = self.build(depth - 2, size - 1 - l, boxes);
                F::try_rhd(a, b).expect("language has rhd")
            }
            _ => {
                let l = self.rng.gen_range(0..size);
                let a = self.build(depth, l, boxes);
                let b = self.build(depth, size - 1 - l, boxes);
                match op {
                    Op::And => F::and(a, b),
                    Op::Or => F::or(a, b),
                    _ => F::imp(a, b),
                }
            }
        }
    }
}

/// The first `limit` distinct formulas over `⊥` and `vars`, built from `¬`,
/// `→` and `□`, with modal depth at most `max_depth`, in order of node count.
pub fn enumerate_formulas(vars: &[&str], max_depth: usize, limit: usize) -> Vec<Formula> {
    // by_size[s] = formulas with s nodes (leaves count 1, ¬ and □ add 1, → adds 1).
    let mut by_size: Vec<Vec<Formula>> = vec![Vec::new()];
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut s = 1;
    while out.len() < limit {
        let mut layer = Vec::new();
        if s == 1 {
            layer.push(Formula::Bot);
            layer.extend(vars.iter().map(|v| Formula::var(v)));
        } else {
            for a in &by_size[s - 1] {
                layer.push(Formula::not(a.clone()));
                if a.modal_depth() < max_depth {
                    layer.push(Formula::boxed(a.clone()));
                }
            }
            for l in 1..s - 1 {
                for a in &by_size[l] {
                    for b in &by_size[s - 1 - l] {
                        layer.push(Formula::imp(a.clone(), b.clone()));
                    }
                }
            }
        }
        let layer: Vec<Formula> = layer
            .into_iter()
            .filter(|f| seen.insert(f.clone()))
            .collect();
        if layer.is_empty() && s > 3 {
            break;
        }
        for f in &layer {
            if out.len() < limit {
                out.push(f.clone());
            }
        }
        by_size.push(layer);
        s += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::FragmentTag;

    #[test]
    fn deterministic() {
        let a = FormulaGen::new(GenConfig::gl(2, 3), 7).gl_batch(20);
        let b = FormulaGen::new(GenConfig::gl(2, 3), 7).gl_batch(20);
        assert_eq!(a, b);
        let c = FormulaGen::new(GenConfig::gl(2, 3), 8).gl_batch(20);
        assert_ne!(a, c);
    }

    #[test]
    fn respects_bounds() {
        let mut g = FormulaGen::new(GenConfig::gl(2, 3).with_boxes(2), 1);
        for _ in 0..300 {
            let f = g.gl();
            assert!(f.modal_depth() <= 3);
            assert!(f.atoms().len() <= 2);
            let boxes = f.box_subformulas().len();
            assert!(boxes <= 2, "{f}");
        }
        let mut g = FormulaGen::new(GenConfig::constants(1, 3), 2);
        for _ in 0..100 {
            assert!(g.gl().in_fragment(FragmentTag::Fn(1)));
        }
        let mut g = FormulaGen::new(GenConfig::polymodal(2, 2), 3);
        for _ in 0..100 {
            let f = g.gl();
            assert!(f.in_fragment(FragmentTag::ClosedD) && f.max_level() <= 2);
        }
        let mut g = FormulaGen::new(GenConfig::il(2, 2), 4);
        let fs: Vec<IlFormula> = (0..200).map(|_| g.il()).collect();
        assert!(fs.iter().all(|f| f.modal_depth() <= 2));
        assert!(fs.iter().any(|f| f.contains_rhd()));
    }

    #[test]
    fn rank_combinations() {
        let mut g = FormulaGen::new(GenConfig::closed(0), 5);
        for _ in 0..50 {
            let b = g.rank_combination(3);
            assert!(crate::formula::is_rank_combination(&b), "{b}");
        }
    }

    #[test]
    fn enumeration() {
        let fs = enumerate_formulas(&["p", "q"], 2, 200);
        assert_eq!(fs.len(), 200);
        let set: BTreeSet<_> = fs.iter().collect();
        assert_eq!(set.len(), 200);
        assert!(fs.iter().all(|f| f.modal_depth() <= 2));
        assert!(fs.iter().any(|f| f.modal_depth() == 2));
        assert_eq!(
            fs[..3],
            [Formula::Bot, Formula::var("p"), Formula::var("q")]
        );
    }
}
