//! Row-by-row searches over linear orders and over the two-column frame 𝔊₁,
//! plus the closed-fragment rank check.
//!
//! In both frame shapes every point of row `r` sees exactly the points of
//! the rows below, so all points of a row agree on which boxed subformulas
//! hold. That set is the search state: row 0 has every box true, and a row
//! whose points make the bodies `T₁, …, T_w` true moves the state from `S`
//! to `S ∩ T₁ ∩ … ∩ T_w`. A breadth-first search over states finds the
//! lowest falsifying point; states only shrink, so at most `b + 1` rows are
//! ever needed for `b` boxed subformulas.

use std::collections::HashMap;

use super::closure::Closure;
use super::{require_level0, DecideOptions, GlError, Verdict};
use crate::formula::{Atom, Formula, FragmentTag};
use crate::kripke::{countermodel_search, g1_generated_frame, Frame, FrameClass, G1Point, Model};
use crate::limits::Limits;

/// A falsifying configuration: valuations of each full row, bottom first,
/// then the valuation of the single falsifying point on top.
struct Witness {
    rows: Vec<Vec<u64>>,
    top: u64,
}

fn layered_search(c: &Closure, width: usize, limits: &Limits) -> Result<Option<Witness>, GlError> {
    let nval = c.num_valuations();
    let mut parent: HashMap<u64, Option<(u64, Vec<u64>)>> = HashMap::new();
    let start = c.all_boxes();
    parent.insert(start, None);
    let mut frontier = vec![start];
    let mut truth = Vec::new();
    let mut depth = 0usize;
    while !frontier.is_empty() {
        limits.check(|| format!("{depth} rows searched, {} states", parent.len()))?;
        frontier.sort_unstable_by(|a, b| b.cmp(a));
        // Falsifying point on top of the current rows?
        for &s in &frontier {
            for v in 0..nval {
                c.eval(s, v, &mut truth);
                if !truth[c.root()] {
                    let mut rows = Vec::new();
                    let mut cur = s;
                    while let Some(Some((prev, row))) = parent.get(&cur) {
                        rows.push(row.clone());
                        cur = *prev;
                    }
                    rows.reverse();
                    return Ok(Some(Witness { rows, top: v }));
                }
            }
        }
        // Distinct body sets reachable by one point, with a witness valuation.
        let mut next = Vec::new();
        for &s in &frontier {
            let mut options: Vec<(u64, u64)> = Vec::new();
            for v in 0..nval {
                c.eval(s, v, &mut truth);
                let t = c.bodies_true(&truth);
                if !options.iter().any(|&(t2, _)| t2 == t) {
                    options.push((t, v));
                }
            }
            let mut rows: Vec<(u64, Vec<u64>)> = vec![(u64::MAX, Vec::new())];
            for _ in 0..width {
                let mut grown = Vec::new();
                for (t, vals) in &rows {
                    for &(t2, v) in &options {
                        let mut vals = vals.clone();
                        vals.push(v);
                        grown.push((t & t2, vals));
                    }
                }
                rows = grown;
            }
            for (t, vals) in rows {
                let s2 = s & t;
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(s2) {
                    e.insert(Some((s, vals)));
                    next.push(s2);
                }
            }
        }
        frontier = next;
        depth += 1;
    }
    Ok(None)
}

fn set_atoms(m: &mut Model, atoms: &[Atom], vals: &[(usize, u64)]) {
    for (a, atom) in atoms.iter().enumerate() {
        let worlds: Vec<usize> = vals
            .iter()
            .filter(|&&(_, v)| (v >> a) & 1 == 1)
            .map(|&(w, _)| w)
            .collect();
        m.set(atom.clone(), worlds);
    }
}

/// GL.3-validity: truth at every point of every finite strict linear order.
/// Refutations use the shortest falsifying order, falsified at its top.
pub fn decide_gl3(f: &Formula) -> Result<Verdict, GlError> {
    decide_gl3_with(f, &DecideOptions::default())
}

/// As [`decide_gl3`]; `cross_check` also enumerates linear frames up to
/// `limits.max_worlds` and requires the same answer.
pub fn decide_gl3_with(f: &Formula, opts: &DecideOptions) -> Result<Verdict, GlError> {
    require_level0(f)?;
    let c = Closure::new(f)?;
    let verdict = match layered_search(&c, 1, &opts.limits)? {
        None => Verdict::Provable {
            trace: vec![format!(
                "every reachable box state over linear orders satisfies {f}"
            )],
        },
        Some(w) => {
            let r = w.rows.len();
            let mut m = Model::new(Frame::linear(r + 1));
            let mut vals: Vec<(usize, u64)> = w
                .rows
                .iter()
                .enumerate()
                .map(|(rank, row)| (rank, row[0]))
                .collect();
            vals.push((r, w.top));
            set_atoms(&mut m, &c.atoms, &vals);
            Verdict::refuted(m, r, f)?
        }
    };
    if opts.cross_check {
        let found = countermodel_search(f, FrameClass::Linear, &opts.limits)?;
        check_agreement(
            "GL.3 row search",
            &verdict,
            "linear enumeration",
            found,
            opts.limits.max_worlds,
        )?;
    }
    Ok(verdict)
}

fn check_agreement(
    first: &str,
    verdict: &Verdict,
    second: &str,
    found: Option<(Model, usize)>,
    cap: usize,
) -> Result<(), GlError> {
    match (verdict, found) {
        (Verdict::Provable { .. }, Some((m, _))) => Err(GlError::Disagreement(format!(
            "{first} says provable, {second} found a {}-world countermodel",
            m.frame.len()
        ))),
        (Verdict::Refuted { model, .. }, None) if model.frame.len() <= cap => {
            Err(GlError::Disagreement(format!(
                "{first} refutes with {} worlds, {second} found nothing up to {cap}",
                model.frame.len()
            )))
        }
        _ => Ok(()),
    }
}

/// Closed formulas: truth at ranks `0..=depth` of `⟨ω,>⟩`. A closed formula's
/// truth at a point depends only on its rank, and ranks above the modal
/// depth all behave like the depth.
pub fn decide_gl_closed(f: &Formula) -> Result<Verdict, GlError> {
    if let Some(r) = f.fragment_violation(FragmentTag::ClosedB) {
        return Err(GlError::Fragment(r));
    }
    let d = f.modal_depth();
    let chain = Model::new(Frame::linear(d + 1));
    let truth = chain.truth_set(f)?;
    match truth.iter().position(|&t| !t) {
        None => Ok(Verdict::Provable {
            trace: vec![format!("true at ranks 0..={d}")],
        }),
        Some(r) => Verdict::refuted(Model::new(Frame::linear(r + 1)), r, f),
    }
}

/// The two GL.4 engines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Gl4Engine {
    /// Enumerate frames of class C with at most `1 + 2b` worlds.
    Enumeration,
    /// Row search over subframes of 𝔊₁ generated by `⟨m,0⟩`.
    #[default]
    G1,
}

/// GL.4-validity with the default engine.
pub fn decide_gl4(f: &Formula) -> Result<Verdict, GlError> {
    decide_gl4_with(f, Gl4Engine::default(), &DecideOptions::default())
}

/// GL.4-validity with a chosen engine; `cross_check` runs the other engine too.
///
/// The enumeration engine searches `1 + 2b` worlds, or `limits.max_worlds`
/// if smaller; in that case a failed search is reported as a resource limit,
/// not as provability.
pub fn decide_gl4_with(
    f: &Formula,
    engine: Gl4Engine,
    opts: &DecideOptions,
) -> Result<Verdict, GlError> {
    require_level0(f)?;
    let c = Closure::new(f)?;
    let bound = 1 + 2 * c.num_boxes();
    let run = |e: Gl4Engine| -> Result<Verdict, GlError> {
        match e {
            Gl4Engine::G1 => match layered_search(&c, 2, &opts.limits)? {
                None => Ok(Verdict::Provable {
                    trace: vec![format!("no generated subframe of G1 falsifies {f}")],
                }),
                Some(w) => {
                    let m_row = w.rows.len();
                    let (frame, _) = g1_generated_frame(G1Point { m: m_row, i: 0 });
                    let mut m = Model::new(frame);
                    // Point 0 is the top; row r columns 0, 1 sit at 1 + 2(m-1-r) + col.
                    let mut vals = vec![(0, w.top)];
                    for (r, row) in w.rows.iter().enumerate() {
                        for (col, &v) in row.iter().enumerate() {
                            vals.push((1 + 2 * (m_row - 1 - r) + col, v));
                        }
                    }
                    set_atoms(&mut m, &c.atoms, &vals);
                    Verdict::refuted(m, 0, f)
                }
            },
            Gl4Engine::Enumeration => {
                let cap = bound.min(opts.limits.max_worlds);
                let limits = Limits {
                    max_worlds: cap,
                    deadline: opts.limits.deadline,
                };
                match countermodel_search(f, FrameClass::C, &limits)? {
                    Some((m, w)) => Verdict::refuted(m, w, f),
                    None if cap < bound => Err(GlError::Limit(crate::limits::LimitExceeded {
                        reason: format!("size bound {bound} exceeds max_worlds {cap}"),
                        progress: format!("no countermodel with at most {cap} worlds"),
                    })),
                    None => Ok(Verdict::Provable {
                        trace: vec![format!(
                            "no frame of class C with at most {bound} worlds falsifies {f}"
                        )],
                    }),
                }
            }
        }
    };
    let verdict = run(engine)?;
    if opts.cross_check {
        let other = match engine {
            Gl4Engine::G1 => Gl4Engine::Enumeration,
            Gl4Engine::Enumeration => Gl4Engine::G1,
        };
        let second = run(other)?;
        if verdict.is_provable() != second.is_provable() {
            return Err(GlError::Disagreement(format!(
                "{engine:?} says {}, {other:?} says {} for {f}",
                verdict.summary().verdict,
                second.summary().verdict
            )));
        }
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{instantiate_schema, parse_formula, Schema, SchemaArgs, Syntax};
    use crate::kripke::frame_class;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn args3() -> SchemaArgs {
        SchemaArgs::from([
            ("A", Formula::var("p")),
            ("B", Formula::var("q")),
            ("C", Formula::var("r")),
        ])
    }

    #[test]
    fn gl3_examples() {
        let lin = instantiate_schema(Schema::Linearity, &args3()).unwrap();
        assert!(decide_gl3(&lin).unwrap().is_provable());
        let v = decide_gl3(&Formula::Bot).unwrap();
        assert_eq!(v.countermodel().unwrap().0.frame.len(), 1);
        let v = decide_gl3(&p("[]p -> p")).unwrap();
        let (m, w) = v.countermodel().unwrap();
        assert_eq!((m.frame.len(), w), (1, 0));
    }

    #[test]
    fn gl3_shortest_chain() {
        // Needs a point with two points below: <><>top fails only at ranks 0 and 1.
        let v = decide_gl3(&p("<>top -> <><>top")).unwrap();
        let (m, w) = v.countermodel().unwrap();
        assert_eq!((m.frame.len(), w), (2, 1));
        assert!(frame_class(&m.frame).linear);
    }

    #[test]
    fn closed_fragment() {
        for n in 0..=3usize {
            let d = Formula::and(
                Formula::dia_iter(n, Formula::top()),
                Formula::box_iter(n + 1, Formula::Bot),
            );
            assert!(!decide_gl_closed(&d).unwrap().is_provable());
            assert!(!decide_gl_closed(&Formula::not(d.clone()))
                .unwrap()
                .is_provable());
            let chain = Model::new(Frame::linear(8));
            let truth = chain.truth_set(&d).unwrap();
            assert_eq!(truth.iter().filter(|&&t| t).count(), 1);
            assert!(truth[n]);
        }
        assert!(decide_gl_closed(&p("[]bot | <>top")).unwrap().is_provable());
        let v = decide_gl_closed(&p("[][]bot -> []bot")).unwrap();
        assert_eq!(v.countermodel().unwrap().1, 1);
        assert!(decide_gl_closed(&p("[]p")).is_err());
    }

    #[test]
    fn gl4_examples_both_engines() {
        let opts = DecideOptions {
            cross_check: true,
            limits: Limits::unbounded_time(9),
        };
        let q1 = instantiate_schema(Schema::Q1, &args3()).unwrap();
        let q2 = instantiate_schema(Schema::Q2, &args3()).unwrap();
        let lin = instantiate_schema(Schema::Linearity, &args3()).unwrap();
        assert!(decide_gl4_with(&q2, Gl4Engine::G1, &opts)
            .unwrap()
            .is_provable());
        assert!(decide_gl4(&q1).unwrap().is_provable());
        let v = decide_gl4_with(&lin, Gl4Engine::G1, &opts).unwrap();
        let (m, _) = v.countermodel().unwrap();
        assert!(frame_class(&m.frame).in_c());
        let v = decide_gl4_with(&lin, Gl4Engine::Enumeration, &DecideOptions::default()).unwrap();
        assert_eq!(v.countermodel().unwrap().0.frame.len(), 3);
    }

    #[test]
    fn enumeration_reports_short_cap() {
        let q2 = instantiate_schema(Schema::Q2, &args3()).unwrap();
        let opts = DecideOptions {
            cross_check: false,
            limits: Limits::unbounded_time(3),
        };
        assert!(matches!(
            decide_gl4_with(&q2, Gl4Engine::Enumeration, &opts),
            Err(GlError::Limit(_))
        ));
    }
}
