//! Ignatiev's universal frame for the closed fragment of GLP, seen through
//! finite truncations.
//!
//! A point is a sequence `(α₀, α₁, …)` of ordinals below ε₀ with
//! `α_{i+1} ≤ e(α_i)` and a zero tail. `α Rₙ β` holds when the sequences
//! agree below `n` and `αₙ > βₙ`. A truncation keeps the points whose
//! coordinates all have hereditary size at most a bound; truth on a
//! truncation is an approximation to truth on the whole frame.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::Serialize;
use thiserror::Error;

use crate::formula::{Formula, FragmentTag, Syntax};
use crate::ordinal::{Ordinal, OrdinalError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IgnatievError {
    #[error("formula outside the closed fragment: {0}")]
    Fragment(String),
    #[error("level {level} exceeds the materialized maximum {max}")]
    LevelTooHigh { level: u32, max: u32 },
    #[error("point {0} is not in the truncation")]
    PointOutside(String),
    #[error("not a point of the frame: {0}")]
    NotInUniverse(String),
    #[error(transparent)]
    Ordinal(#[from] OrdinalError),
}

/// A point with trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IgnatievPoint {
    coords: Vec<Ordinal>,
}

/// `α_{i+1} ≤ e(α_i)` for every `i` (missing coordinates are zero).
pub fn in_universe(coords: &[Ordinal]) -> bool {
    coords.windows(2).all(|w| w[1] <= w[0].end_exponent())
}

impl IgnatievPoint {
    pub fn new(mut coords: Vec<Ordinal>) -> Result<IgnatievPoint, IgnatievError> {
        while coords.last().is_some_and(Ordinal::is_zero) {
            coords.pop();
        }
        if !in_universe(&coords) {
            let p = IgnatievPoint { coords };
            return Err(IgnatievError::NotInUniverse(p.to_string()));
        }
        Ok(IgnatievPoint { coords })
    }

    pub fn zero() -> IgnatievPoint {
        IgnatievPoint { coords: Vec::new() }
    }

    /// Parses `"(w, 1)"` or `"w, 1"`; `"()"` is the zero point.
    pub fn parse(text: &str) -> Result<IgnatievPoint, IgnatievError> {
        let inner = text.trim();
        let inner = inner
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .unwrap_or(inner)
            .trim();
        if inner.is_empty() {
            return Ok(IgnatievPoint::zero());
        }
        let coords = split_top_level(inner)
            .into_iter()
            .map(|c| Ordinal::parse(c.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        IgnatievPoint::new(coords)
    }

    pub fn coords(&self) -> &[Ordinal] {
        &self.coords
    }

    /// Coordinate `k`, zero past the stored prefix.
    pub fn coord(&self, k: usize) -> Ordinal {
        self.coords.get(k).cloned().unwrap_or_default()
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

impl fmt::Display for IgnatievPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for IgnatievPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        parts.serialize(s)
    }
}

/// `α Rₙ β`: equal below `n`, and `αₙ > βₙ`.
pub fn rel_n(n: usize, a: &IgnatievPoint, b: &IgnatievPoint) -> bool {
    (0..n).all(|m| a.coord(m) == b.coord(m)) && a.coord(n) > b.coord(n)
}

/// `(α, e(α), e(e(α)), …)`.
pub fn root_point(alpha: &Ordinal) -> IgnatievPoint {
    let mut coords = Vec::new();
    let mut cur = alpha.clone();
    while !cur.is_zero() {
        let next = cur.end_exponent();
        coords.push(cur);
        cur = next;
    }
    IgnatievPoint { coords }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Trichotomy {
    /// `α̂ R₀ β̂`
    R0Ab,
    /// `β̂ R₀ α̂`
    R0Ba,
    Equal,
}

/// Which of `α̂ R₀ β̂`, `β̂ R₀ α̂`, `α̂ = β̂` holds; decided by comparing `α`, `β`.
pub fn roots_trichotomy(a: &Ordinal, b: &Ordinal) -> Trichotomy {
    match a.cmp(b) {
        std::cmp::Ordering::Greater => Trichotomy::R0Ab,
        std::cmp::Ordering::Less => Trichotomy::R0Ba,
        std::cmp::Ordering::Equal => Trichotomy::Equal,
    }
}

/// Points whose every coordinate has size at most `bound`, with the
/// relations `R₀ … R_max_level` materialized.
#[derive(Debug, Clone)]
pub struct TruncatedUniverse {
    bound: usize,
    max_level: u32,
    points: Vec<IgnatievPoint>,
    index: BTreeMap<IgnatievPoint, usize>,
    /// `succ[n][x]`: the `Rₙ`-successors of point `x`.
    succ: Vec<Vec<Vec<usize>>>,
}

pub const MAX_BOUND: usize = 6;

impl TruncatedUniverse {
    pub fn new(bound: usize, max_level: u32) -> Result<TruncatedUniverse, IgnatievError> {
        if bound > MAX_BOUND {
            return Err(IgnatievError::PointOutside(format!(
                "bound {bound} exceeds {MAX_BOUND}"
            )));
        }
        let ords = Ordinal::all_up_to_size(bound);
        let mut points = Vec::new();
        let mut stack = Vec::new();
        fn extend(
            ords: &[Ordinal],
            cap: Option<&Ordinal>,
            stack: &mut Vec<Ordinal>,
            out: &mut Vec<IgnatievPoint>,
        ) {
            out.push(IgnatievPoint {
                coords: stack.clone(),
            });
            for o in ords {
                if o.is_zero() || cap.is_some_and(|c| o > c) {
                    continue;
                }
                let e = o.end_exponent();
                stack.push(o.clone());
                extend(ords, Some(&e), stack, out);
                stack.pop();
            }
        }
        extend(&ords, None, &mut stack, &mut points);
        points.sort();
        let index = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let succ = (0..=max_level as usize)
            .map(|n| {
                points
                    .iter()
                    .map(|a| {
                        (0..points.len())
                            .filter(|&j| rel_n(n, a, &points[j]))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(TruncatedUniverse {
            bound,
            max_level,
            points,
            index,
            succ,
        })
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn max_level(&self) -> u32 {
        self.max_level
    }

    pub fn points(&self) -> &[IgnatievPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, p: &IgnatievPoint) -> Result<usize, IgnatievError> {
        self.index
            .get(p)
            .copied()
            .ok_or_else(|| IgnatievError::PointOutside(p.to_string()))
    }

    pub fn successors(&self, level: u32, x: usize) -> &[usize] {
        &self.succ[level as usize][x]
    }

    pub fn edge_count(&self, level: u32) -> usize {
        self.succ[level as usize].iter().map(Vec::len).sum()
    }

    fn check_formula(&self, f: &Formula) -> Result<(), IgnatievError> {
        if let Some(r) = f.fragment_violation(FragmentTag::ClosedD) {
            return Err(IgnatievError::Fragment(r));
        }
        if f.max_level() > self.max_level {
            return Err(IgnatievError::LevelTooHigh {
                level: f.max_level(),
                max: self.max_level,
            });
        }
        Ok(())
    }

    /// Truth of a closed formula at every point of the truncation.
    pub fn truth_set(&self, f: &Formula) -> Result<Vec<bool>, IgnatievError> {
        self.check_formula(f)?;
        Ok(self.truth_unchecked(f))
    }

    fn truth_unchecked(&self, f: &Formula) -> Vec<bool> {
        let n = self.points.len();
        match f {
            Formula::Bot => vec![false; n],
            Formula::Implies(a, b) => {
                let (ta, tb) = (self.truth_unchecked(a), self.truth_unchecked(b));
                ta.iter().zip(&tb).map(|(&x, &y)| !x || y).collect()
            }
            Formula::BoxN(l, a) => {
                let ta = self.truth_unchecked(a);
                (0..n)
                    .map(|x| self.successors(*l, x).iter().all(|&y| ta[y]))
                    .collect()
            }
            Formula::Var(_) | Formula::Const(_) => unreachable!("closed formulas only"),
        }
    }

    /// Serializable description: points in the ordinal grammar and the
    /// relation edges per level, as point indices.
    pub fn export(&self) -> TruncationExport {
        TruncationExport {
            approximate: true,
            bound: self.bound,
            levels: self.max_level,
            points: self.points.clone(),
            relations: (0..=self.max_level)
                .map(|l| LevelEdges {
                    level: l,
                    edges: (0..self.len())
                        .flat_map(|x| self.successors(l, x).iter().map(move |&y| (x, y)))
                        .collect(),
                })
                .collect(),
        }
    }

    /// DOT with `R0`, `R1`, … edge labels. Only edges not implied by
    /// transitivity at the same level are drawn.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph ignatiev {\n  rankdir=BT;\n");
        for (i, p) in self.points.iter().enumerate() {
            let _ = writeln!(out, "  p{i} [label=\"{p}\"];");
        }
        for l in 0..=self.max_level {
            for x in 0..self.len() {
                let succ = self.successors(l, x);
                for &y in succ {
                    let implied = succ.iter().any(|&z| self.successors(l, z).contains(&y));
                    if !implied {
                        let _ = writeln!(out, "  p{x} -> p{y} [label=\"R{l}\"];");
                    }
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelEdges {
    pub level: u32,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TruncationExport {
    pub approximate: bool,
    pub bound: usize,
    pub levels: u32,
    pub points: Vec<IgnatievPoint>,
    pub relations: Vec<LevelEdges>,
}

/// Truth of `f` at `p` on the truncation.
pub fn eval_d(
    tu: &TruncatedUniverse,
    p: &IgnatievPoint,
    f: &Formula,
) -> Result<bool, IgnatievError> {
    let x = tu.index_of(p)?;
    Ok(tu.truth_set(f)?[x])
}

#[derive(Debug, Clone, Serialize)]
pub struct LinearityViolation {
    pub point: IgnatievPoint,
    /// An `R₀`-successor where `□A ∧ ¬B` holds.
    pub left: IgnatievPoint,
    /// An `R₀`-successor where `□⁺B ∧ ¬A` holds.
    pub right: IgnatievPoint,
    /// Root points of the first coordinates of `left` and `right`.
    pub roots: (IgnatievPoint, IgnatievPoint),
}

#[derive(Debug, Clone, Serialize)]
pub struct LinearityReport {
    pub approximate: bool,
    pub formula: String,
    pub points_checked: usize,
    pub violations: Vec<LinearityViolation>,
}

/// Checks `□(□A → B) ∨ □(□⁺B → A)` at every point of the truncation.
pub fn linearity_experiment(
    tu: &TruncatedUniverse,
    a: &Formula,
    b: &Formula,
) -> Result<LinearityReport, IgnatievError> {
    let left = Formula::and(Formula::boxed(a.clone()), Formula::not(b.clone()));
    let right = Formula::and(Formula::boxplus(b.clone()), Formula::not(a.clone()));
    let lin = Formula::or(
        Formula::boxed(Formula::imp(Formula::boxed(a.clone()), b.clone())),
        Formula::boxed(Formula::imp(Formula::boxplus(b.clone()), a.clone())),
    );
    let tl = tu.truth_set(&left)?;
    let tr = tu.truth_set(&right)?;
    let mut violations = Vec::new();
    for x in 0..tu.len() {
        let succ = tu.successors(0, x);
        let y = succ.iter().find(|&&y| tl[y]);
        let z = succ.iter().find(|&&z| tr[z]);
        if let (Some(&y), Some(&z)) = (y, z) {
            let (py, pz) = (&tu.points[y], &tu.points[z]);
            violations.push(LinearityViolation {
                point: tu.points[x].clone(),
                left: py.clone(),
                right: pz.clone(),
                roots: (root_point(&py.coord(0)), root_point(&pz.coord(0))),
            });
        }
    }
    Ok(LinearityReport {
        approximate: true,
        formula: lin.to_string(),
        points_checked: tu.len(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_in;

    fn o(s: &str) -> Ordinal {
        Ordinal::parse(s).unwrap()
    }

    fn pt(s: &str) -> IgnatievPoint {
        IgnatievPoint::parse(s).unwrap()
    }

    fn d(s: &str) -> Formula {
        parse_in(s, FragmentTag::ClosedD).unwrap()
    }

    #[test]
    fn universe_membership() {
        assert!(in_universe(&[o("w"), o("1")]));
        assert!(!in_universe(&[o("1"), o("1")]));
        assert!(in_universe(&[]));
        assert!(IgnatievPoint::new(vec![o("1"), o("1")]).is_err());
        assert_eq!(pt("(w, 1, 0, 0)"), pt("w, 1"));
    }

    #[test]
    fn relations() {
        assert!(rel_n(0, &pt("(1)"), &IgnatievPoint::zero()));
        assert!(rel_n(1, &pt("(w, 1)"), &pt("(w)")));
        assert!(!rel_n(1, &pt("(w, 1)"), &pt("(2)")));
        assert!(rel_n(0, &pt("(w, 1)"), &pt("(2)")));
    }

    #[test]
    fn roots() {
        assert_eq!(root_point(&Ordinal::zero()), IgnatievPoint::zero());
        assert_eq!(root_point(&o("w")), pt("(w, 1)"));
        assert_eq!(root_point(&o("w^w")), pt("(w^w, w, 1)"));
        assert_eq!(roots_trichotomy(&o("w"), &o("1")), Trichotomy::R0Ab);
        assert_eq!(roots_trichotomy(&o("w"), &o("w")), Trichotomy::Equal);
        assert_eq!(
            roots_trichotomy(&Ordinal::zero(), &o("1")),
            Trichotomy::R0Ba
        );
    }

    #[test]
    fn bound3_truncation() {
        let tu = TruncatedUniverse::new(3, 2).unwrap();
        assert_eq!(tu.len(), 16);
        for p in tu.points() {
            assert!(in_universe(p.coords()));
        }
        assert!(tu.index_of(&pt("(w^w, w, 1)")).is_ok());
        assert!(tu.index_of(&pt("(w^2, 2)")).is_ok());
    }

    #[test]
    fn eval_examples() {
        let tu = TruncatedUniverse::new(3, 2).unwrap();
        assert!(eval_d(&tu, &IgnatievPoint::zero(), &d("[0]bot")).unwrap());
        assert!(eval_d(&tu, &pt("(1)"), &d("<0>top & [1]bot")).unwrap());
        assert!(eval_d(&tu, &pt("(w, 1)"), &d("<1>top")).unwrap());
        assert!(matches!(
            eval_d(&tu, &IgnatievPoint::zero(), &d("[3]bot")),
            Err(IgnatievError::LevelTooHigh { level: 3, max: 2 })
        ));
        assert!(matches!(
            eval_d(&tu, &pt("(w^w^w)"), &d("bot")),
            Err(IgnatievError::PointOutside(_))
        ));
    }

    #[test]
    fn relations_are_strict_orders() {
        let tu = TruncatedUniverse::new(4, 3).unwrap();
        for l in 0..=3 {
            for x in 0..tu.len() {
                assert!(!tu.successors(l, x).contains(&x));
                for &y in tu.successors(l, x) {
                    for &z in tu.successors(l, y) {
                        assert!(tu.successors(l, x).contains(&z));
                    }
                }
            }
        }
    }

    #[test]
    fn linearity_examples() {
        let tu = TruncatedUniverse::new(3, 2).unwrap();
        for (a, b) in [("[1]bot", "[0]bot"), ("top", "top"), ("<0>top", "<1>top")] {
            let r = linearity_experiment(&tu, &d(a), &d(b)).unwrap();
            assert!(r.violations.is_empty(), "{a} / {b}: {:?}", r.violations);
            assert_eq!(r.points_checked, 16);
        }
    }

    #[test]
    fn export_lists_points() {
        let tu = TruncatedUniverse::new(2, 1).unwrap();
        let json = serde_json::to_string(&tu.export()).unwrap();
        assert!(json.contains("[\"w\",\"1\"]"));
        assert!(json.contains("\"approximate\":true"));
        assert!(tu.to_dot().contains("label=\"R1\""));
    }
}
