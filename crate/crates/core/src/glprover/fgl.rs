//! The frames 𝔊ₙ and models 𝔊ₙ•: points `⟨m,i⟩` with `i < 2ⁿ`, `⟨m,i⟩` sees
//! every point of a lower row, and `s_j` holds where bit `j−1` of the column
//! is set.
//!
//! Truth of a formula of modal depth `d` at `⟨m,i⟩` is the same for all
//! `m ≥ d`, so rows `0..=d` decide validity.

use std::fmt;

use serde::Serialize;

use super::closure::{Closure, Op};
use super::{GlError, Verdict};
use crate::formula::{column_formula, Atom, Formula, FragmentTag, Syntax};
use crate::kripke::{Frame, Model};

pub const MAX_CONSTANTS: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GnPoint {
    pub n: u32,
    pub m: usize,
    pub i: u32,
}

impl GnPoint {
    pub fn new(n: u32, m: usize, i: u32) -> Result<GnPoint, GlError> {
        if n > MAX_CONSTANTS {
            return Err(GlError::Bounds(format!("n = {n} exceeds {MAX_CONSTANTS}")));
        }
        if i >= 1 << n {
            return Err(GlError::Bounds(format!("column {i} not below 2^{n}")));
        }
        Ok(GnPoint { n, m, i })
    }
}

impl fmt::Display for GnPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{}>", self.m, self.i)
    }
}

fn fn_closure(n: u32, f: &Formula) -> Result<Closure, GlError> {
    if n > MAX_CONSTANTS {
        return Err(GlError::Bounds(format!("n = {n} exceeds {MAX_CONSTANTS}")));
    }
    if let Some(r) = f.fragment_violation(FragmentTag::Fn(n)) {
        return Err(GlError::Fragment(r));
    }
    Closure::new(f)
}

/// Atom valuation of column `i` in the closure's atom order.
fn column_val(c: &Closure, i: u32) -> u64 {
    c.atoms
        .iter()
        .enumerate()
        .fold(0, |acc, (a, atom)| match atom {
            Atom::Const(j) if (i >> (j - 1)) & 1 == 1 => acc | (1 << a),
            _ => acc,
        })
}

/// Box states of rows `0..=rows`.
fn row_states(c: &Closure, n: u32, rows: usize) -> Vec<u64> {
    let vals: Vec<u64> = (0..1u32 << n).map(|i| column_val(c, i)).collect();
    let mut states = vec![c.all_boxes()];
    let mut truth = Vec::new();
    for _ in 0..rows {
        let s = *states.last().expect("non-empty");
        let t = vals.iter().fold(u64::MAX, |acc, &v| {
            c.eval(s, v, &mut truth);
            acc & c.bodies_true(&truth)
        });
        states.push(s & t);
    }
    states
}

/// Truth of `f` at `⟨m,i⟩` in 𝔊ₙ•.
pub fn eval_gn(n: u32, m: usize, i: u32, f: &Formula) -> Result<bool, GlError> {
    GnPoint::new(n, m, i)?;
    let c = fn_closure(n, f)?;
    // Rows beyond the depth repeat the depth row.
    let m = m.min(f.modal_depth());
    let s = row_states(&c, n, m)[m];
    let mut truth = Vec::new();
    c.eval(s, column_val(&c, i), &mut truth);
    Ok(truth[c.root()])
}

/// The finite subframe of 𝔊ₙ• generated by `p`: `p` first, then every lower
/// row, rows descending, columns ascending.
pub fn gn_generated_model(p: GnPoint) -> Model {
    let mut pts = vec![(p.m, p.i)];
    for r in (0..p.m).rev() {
        for c in 0..1u32 << p.n {
            pts.push((r, c));
        }
    }
    let mut frame = Frame::from_fn(pts.len(), |a, b| pts[b].0 < pts[a].0);
    frame.rename(pts.iter().map(|(r, c)| format!("<{r},{c}>")).collect());
    let mut m = Model::new(frame);
    for j in 1..=p.n {
        let worlds: Vec<usize> = (0..pts.len())
            .filter(|&w| (pts[w].1 >> (j - 1)) & 1 == 1)
            .collect();
        m.set(Atom::Const(j), worlds);
    }
    m
}

/// FGLₙ-provability: truth at every `⟨m,i⟩` with `m ≤ depth(f)`.
pub fn decide_fgl(n: u32, f: &Formula) -> Result<Verdict, GlError> {
    let c = fn_closure(n, f)?;
    let d = f.modal_depth();
    let states = row_states(&c, n, d);
    let mut truth = Vec::new();
    for (m, &s) in states.iter().enumerate() {
        for i in 0..1u32 << n {
            c.eval(s, column_val(&c, i), &mut truth);
            if !truth[c.root()] {
                let model = gn_generated_model(GnPoint { n, m, i });
                return Verdict::refuted(model, 0, f);
            }
        }
    }
    Ok(Verdict::Provable {
        trace: vec![format!(
            "true at all <m,i> with m <= {d}, i < {}",
            1u32 << n
        )],
    })
}

/// Upper end of a rank interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Rank {
    Fin(usize),
    Omega,
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Fin(k) => write!(f, "{k}"),
            Rank::Omega => f.write_str("omega"),
        }
    }
}

/// `𝐬ᵢ ∧ ¬□^lo⊥ ∧ □^hi⊥`, i.e. column `i` (any column if `None`) and
/// `lo ≤ m < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct NfClause {
    pub lo: usize,
    pub hi: Rank,
    pub column: Option<u32>,
}

/// Canonical disjunctive normal form over column literals and `□^α⊥`,
/// `α ≤ ω`. Clauses are sorted and duplicate-free; a rank interval shared by
/// every column is written once without column literals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct NormalForm {
    pub n: u32,
    pub clauses: Vec<NfClause>,
}

fn tower(k: usize) -> Formula {
    Formula::box_iter(k, Formula::Bot)
}

impl NfClause {
    fn literals(&self, n: u32) -> Vec<Formula> {
        let mut lits = Vec::new();
        if let Some(i) = self.column.filter(|_| n > 0) {
            lits.push(column_formula(n, i));
        }
        if self.lo > 0 {
            lits.push(Formula::not(tower(self.lo)));
        }
        if let Rank::Fin(h) = self.hi {
            lits.push(tower(h));
        }
        lits
    }

    fn render(&self, n: u32) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(i) = self.column {
            for j in 0..n {
                let neg = if (i >> j) & 1 == 1 { "" } else { "~" };
                out.push(format!("{neg}s{}", j + 1));
            }
        }
        if self.lo > 0 {
            out.push(format!("~[]^{} bot", self.lo));
        }
        if let Rank::Fin(h) = self.hi {
            out.push(format!("[]^{h} bot"));
        }
        out
    }

    pub fn holds(&self, m: usize, i: u32) -> bool {
        self.column.is_none_or(|c| c == i)
            && self.lo <= m
            && match self.hi {
                Rank::Fin(h) => m < h,
                Rank::Omega => true,
            }
    }
}

impl NormalForm {
    pub fn to_formula(&self) -> Formula {
        Formula::disj(self.clauses.iter().map(|c| {
            let lits = c.literals(self.n);
            if lits.is_empty() {
                Formula::top()
            } else {
                Formula::conj(lits)
            }
        }))
    }

    pub fn holds(&self, m: usize, i: u32) -> bool {
        self.clauses.iter().any(|c| c.holds(m, i))
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return f.write_str("bot");
        }
        let many = self.clauses.len() > 1;
        let parts: Vec<String> = self
            .clauses
            .iter()
            .map(|c| {
                let lits = c.render(self.n);
                match lits.len() {
                    0 => "[]^omega bot".to_string(),
                    1 => lits[0].clone(),
                    _ if many => format!("({})", lits.join(" & ")),
                    _ => lits.join(" & "),
                }
            })
            .collect();
        f.write_str(&parts.join(" | "))
    }
}

/// Normal form of `f ∈ ℱₙ`, with a log of the `□B ↦ □^α⊥` rewrites.
pub fn normal_form_traced(n: u32, f: &Formula) -> Result<(NormalForm, Vec<String>), GlError> {
    let c = fn_closure(n, f)?;
    let cols = 1usize << n;
    // Rows 0..h; the last row stands for every higher one.
    let h = f.modal_depth() + 2;
    let mut tables: Vec<Vec<Vec<bool>>> = Vec::with_capacity(c.ops.len());
    let mut trace = Vec::new();
    for op in &c.ops {
        let t: Vec<Vec<bool>> = match *op {
            Op::Bot => vec![vec![false; h]; cols],
            Op::Atom(a) => {
                let j = match &c.atoms[a] {
                    Atom::Const(j) => *j,
                    Atom::Var(_) => unreachable!("fragment check excludes variables"),
                };
                (0..cols)
                    .map(|i| vec![(i >> (j - 1)) & 1 == 1; h])
                    .collect()
            }
            Op::Imp(a, b) => (0..cols)
                .map(|i| {
                    (0..h)
                        .map(|r| !tables[a][i][r] || tables[b][i][r])
                        .collect()
                })
                .collect(),
            Op::Box(k) => {
                let body = &tables[c.box_body[k]];
                let fail = (0..h).find(|&r| (0..cols).any(|i| !body[i][r]));
                let label = formula_of(&c, c.box_op[k]);
                let rank = match fail {
                    Some(a) => Rank::Fin(a + 1),
                    None => Rank::Omega,
                };
                trace.push(format!("{label} => []^{rank} bot"));
                (0..cols)
                    .map(|_| (0..h).map(|r| fail.is_none_or(|a| r <= a)).collect())
                    .collect()
            }
        };
        tables.push(t);
    }
    let root = &tables[c.root()];
    let mut per_col: Vec<Vec<(usize, Rank)>> = Vec::new();
    for row in root.iter() {
        let mut ivs = Vec::new();
        let mut r = 0;
        while r < h {
            if row[r] {
                let start = r;
                while r < h && row[r] {
                    r += 1;
                }
                let end = if r == h { Rank::Omega } else { Rank::Fin(r) };
                ivs.push((start, end));
            } else {
                r += 1;
            }
        }
        per_col.push(ivs);
    }
    let mut clauses = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (i, ivs) in per_col.iter().enumerate() {
        for &(lo, hi) in ivs {
            if per_col.iter().all(|o| o.contains(&(lo, hi))) {
                if seen.insert((lo, hi)) {
                    clauses.push(NfClause {
                        lo,
                        hi,
                        column: None,
                    });
                }
            } else {
                clauses.push(NfClause {
                    lo,
                    hi,
                    column: Some(i as u32),
                });
            }
        }
    }
    clauses.sort();
    Ok((NormalForm { n, clauses }, trace))
}

/// Reconstructs the subformula at closure index `op` (for trace labels).
fn formula_of(c: &Closure, op: usize) -> Formula {
    match c.ops[op] {
        Op::Bot => Formula::Bot,
        Op::Atom(a) => c.atoms[a].to_formula(),
        Op::Imp(a, b) => Formula::imp(formula_of(c, a), formula_of(c, b)),
        Op::Box(k) => Formula::boxed(formula_of(c, c.box_body[k])),
    }
}

/// Normal form of `f ∈ ℱₙ`.
pub fn normal_form(n: u32, f: &Formula) -> Result<NormalForm, GlError> {
    normal_form_traced(n, f).map(|(nf, _)| nf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{instantiate_schema, parse_formula, Schema, SchemaArgs};

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn constants_read_column_bits() {
        for m in 0..5 {
            assert!(eval_gn(1, m, 1, &p("s1")).unwrap());
            assert!(!eval_gn(1, m, 0, &p("s1")).unwrap());
        }
        assert!(eval_gn(2, 0, 2, &p("~s1 & s2")).unwrap());
    }

    #[test]
    fn eval_examples() {
        for i in 0..2 {
            assert!(eval_gn(1, 0, i, &p("[]bot")).unwrap());
        }
        assert!(!eval_gn(1, 2, 0, &p("[](s1 -> []bot)")).unwrap());
        assert!(eval_gn(1, 1, 0, &p("[](s1 -> []bot)")).unwrap());
        assert!(eval_gn(1, 3, 0, &p("s1")).is_ok());
        assert!(matches!(
            eval_gn(1, 0, 2, &p("s1")),
            Err(GlError::Bounds(_))
        ));
        assert!(matches!(
            eval_gn(1, 0, 0, &p("s2")),
            Err(GlError::Fragment(_))
        ));
    }

    #[test]
    fn eval_matches_model_check() {
        for s in [
            "[](s1 -> []bot)",
            "<>(s1 & <>~s1)",
            "[]([]s1 -> s1) -> []s1",
            "<><>top",
        ] {
            let f = p(s);
            for m in 0..5 {
                for i in 0..2 {
                    let model = gn_generated_model(GnPoint { n: 1, m, i });
                    assert_eq!(
                        model.check(0, &f).unwrap(),
                        eval_gn(1, m, i, &f).unwrap(),
                        "{s} at <{m},{i}>"
                    );
                }
            }
        }
    }

    #[test]
    fn fgl_decisions() {
        let b = tower(2);
        let ax = instantiate_schema(
            Schema::FglAxiom { n: 1, index: 1 },
            &SchemaArgs::from([("B", b)]),
        )
        .unwrap();
        assert!(decide_fgl(1, &ax).unwrap().is_provable());
        let v = decide_fgl(1, &p("s1")).unwrap();
        let (m, w) = v.countermodel().unwrap();
        assert_eq!(m.frame.name(w), "<0,0>");
        let q2 = instantiate_schema(
            Schema::Q2,
            &SchemaArgs::from([("A", p("s1")), ("B", p("~s1"))]),
        )
        .unwrap();
        assert!(decide_fgl(1, &q2).unwrap().is_provable());
    }

    #[test]
    fn normal_form_examples() {
        let nf = normal_form(1, &p("[]top")).unwrap();
        assert_eq!(nf.to_string(), "[]^omega bot");
        assert_eq!(normal_form(1, &p("s1")).unwrap().to_string(), "s1");
        let f = p("[](s1 -> []bot)");
        let nf = normal_form(1, &f).unwrap();
        // s1 -> []bot first fails at <1,1>, so the box holds exactly below row 2.
        assert_eq!(nf.to_string(), "[]^2 bot");
        let g = nf.to_formula();
        for m in 0..6 {
            for i in 0..2 {
                assert_eq!(eval_gn(1, m, i, &f).unwrap(), eval_gn(1, m, i, &g).unwrap());
            }
        }
        assert_eq!(normal_form(1, &Formula::Bot).unwrap().to_string(), "bot");
    }

    #[test]
    fn normal_form_trace_logs_boxes() {
        let (_, trace) = normal_form_traced(1, &p("[](s1 -> []bot)")).unwrap();
        assert_eq!(
            trace,
            vec!["[]bot => []^1 bot", "[](s1 -> []bot) => []^2 bot"]
        );
    }
}
