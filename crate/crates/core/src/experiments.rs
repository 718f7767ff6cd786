//! Executable experiment suites. Each suite runs a batch of checks and
//! reports pass/fail per check; nothing here panics on a failed check.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::formula::{instantiate_schema, Formula, IlFormula, Schema, SchemaArgs, Syntax};
use crate::generate::{enumerate_formulas, FormulaGen, GenConfig};
use crate::glprover::{
    decide_fgl, decide_gl, decide_gl3, decide_gl4, decide_gl4_with, decide_gl_closed, eval_gn,
    normal_form, DecideOptions, Gl4Engine, Verdict,
};
use crate::ignatiev::{
    in_universe, rel_n, root_point, roots_trichotomy, Trichotomy, TruncatedUniverse,
};
use crate::interp::{decide_ilw3, il_axiom_instance, translate_tr, IlSchema};
use crate::kripke::{
    build_pmorphism_from_g1, countermodel_search, enumerate_frames, frame_class,
    restricted_substitution, Frame, FrameClass, Model,
};
use crate::limits::Limits;

type BoxError = Box<dyn std::error::Error + Send + Sync>;
type Outcome = Result<(bool, String), BoxError>;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Tableau against brute-force GL-frame enumeration.
    GlOracle,
    /// Closed fragment and GL.3: linearity, rank-defining formulas.
    ClosedLinear,
    /// Substitution by disjunctions of world-defining formulas on linear models.
    Substitution,
    /// Root points, GLP schemata and linearity on Ignatiev truncations.
    Ignatiev,
    /// FGL₁: normal forms, axioms, box elimination, stabilization.
    Constants,
    /// p-morphisms from 𝔊₁ onto every small frame of class C.
    Pmorph,
    /// GL.4 engines and axioms.
    Gl4,
    /// The `tr` translation and ILW.3.
    Interp,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::GlOracle,
        Suite::ClosedLinear,
        Suite::Substitution,
        Suite::Ignatiev,
        Suite::Constants,
        Suite::Pmorph,
        Suite::Gl4,
        Suite::Interp,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::GlOracle => "gl-oracle",
            Suite::ClosedLinear => "closed-linear",
            Suite::Substitution => "substitution",
            Suite::Ignatiev => "ignatiev",
            Suite::Constants => "constants",
            Suite::Pmorph => "pmorph",
            Suite::Gl4 => "gl4",
            Suite::Interp => "interp",
        }
    }

    pub fn run(&self, seed: u64) -> SuiteReport {
        let start = Instant::now();
        let checks = match self {
            Suite::GlOracle => gl_oracle(seed),
            Suite::ClosedLinear => closed_linear(seed),
            Suite::Substitution => substitution(),
            Suite::Ignatiev => ignatiev(seed),
            Suite::Constants => constants(seed),
            Suite::Pmorph => pmorph(),
            Suite::Gl4 => gl4(seed),
            Suite::Interp => interp(seed),
        };
        SuiteReport {
            suite: *self,
            seed,
            checks,
            elapsed_ms: start.elapsed().as_millis(),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite `{0}`")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Suite, UnknownSuite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub elapsed_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// One line per check: status, name, detail.
    pub fn table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status}  {:width$}  {}\n", c.name, c.detail));
        }
        let status = if self.passed() { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "{status}  suite {} ({} checks)\n",
            self.suite,
            self.checks.len()
        ));
        out
    }
}

fn check(name: impl Into<String>, body: impl FnOnce() -> Outcome) -> Check {
    let start = Instant::now();
    let (passed, detail) = match body() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    Check {
        name: name.into(),
        passed,
        detail,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

fn timing(name: &str, elapsed: Duration, budget: Duration) -> Check {
    Check {
        name: name.to_string(),
        passed: elapsed < budget,
        detail: format!(
            "{:.2} s (budget {} s)",
            elapsed.as_secs_f64(),
            budget.as_secs()
        ),
        elapsed_ms: 0,
    }
}

/// Counts failures and keeps the first few for the report.
#[derive(Default)]
struct Tally {
    total: usize,
    failures: Vec<String>,
}

impl Tally {
    fn from_results(results: Vec<Result<Option<String>, String>>) -> Tally {
        let mut t = Tally::default();
        for r in results {
            t.total += 1;
            match r {
                Ok(None) => {}
                Ok(Some(msg)) | Err(msg) => t.failures.push(msg),
            }
        }
        t
    }

    fn outcome(self, what: &str) -> Outcome {
        let n = self.failures.len();
        let mut detail = format!("{}/{} {what}", self.total - n, self.total);
        if n > 0 {
            let shown: Vec<&str> = self.failures.iter().take(3).map(String::as_str).collect();
            detail.push_str(&format!("; failures: {}", shown.join("; ")));
        }
        Ok((n == 0, detail))
    }
}

fn args2(a: Formula, b: Formula) -> SchemaArgs {
    SchemaArgs::from([("A", a), ("B", b)])
}

fn var(v: &str) -> Formula {
    Formula::var(v)
}

/// `◇ⁿ⊤ ∧ □ⁿ⁺¹⊥`, true exactly at rank `n` of a strict linear order.
pub fn rank_defining(n: usize) -> Formula {
    Formula::and(
        Formula::dia_iter(n, Formula::top()),
        Formula::box_iter(n + 1, Formula::Bot),
    )
}

fn gl_oracle(seed: u64) -> Vec<Check> {
    let start = Instant::now();
    let formulas = FormulaGen::new(GenConfig::gl(2, 3), seed).gl_batch(500);
    let results: Vec<Result<Option<String>, String>> = formulas
        .par_iter()
        .map(|f| {
            let tab = decide_gl(f).map_err(|e| format!("{f}: {e}"))?;
            let brute = countermodel_search(f, FrameClass::Gl, &Limits::unbounded_time(4))
                .map_err(|e| format!("{f}: {e}"))?;
            Ok(match (&tab, &brute) {
                (Verdict::Provable { .. }, None) | (Verdict::Refuted { .. }, Some(_)) => None,
                (Verdict::Provable { .. }, Some((m, _))) => Some(format!(
                    "{f}: tableau proves it but a {}-world GL model refutes it",
                    m.frame.len()
                )),
                (Verdict::Refuted { model, .. }, None) => {
                    let size = model.frame.len();
                    let wider =
                        countermodel_search(f, FrameClass::Gl, &Limits::unbounded_time(size))
                            .map_err(|e| format!("{f}: {e}"))?;
                    Some(format!(
                        "{f}: no GL countermodel with at most 4 worlds; tableau countermodel has \
                         {size}, smallest by enumeration has {}",
                        wider.map_or("none".to_string(), |(m, _)| m.frame.len().to_string())
                    ))
                }
            })
        })
        .collect();
    let agree = check("tableau agrees with 4-world enumeration", || {
        Tally::from_results(results).outcome("formulas agree")
    });
    vec![
        agree,
        timing("runtime", start.elapsed(), Duration::from_secs(60)),
    ]
}

fn closed_linear(seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    out.push(check("linearity instances are GL.3-provable", || {
        let mut g = FormulaGen::new(GenConfig::gl(2, 2), seed);
        let results = (0..50)
            .map(|_| {
                let (a, b) = (g.gl(), g.gl());
                let f = instantiate_schema(Schema::Linearity, &args2(a, b))
                    .map_err(|e| e.to_string())?;
                match decide_gl3(&f) {
                    Ok(v) if v.is_provable() => Ok(None),
                    Ok(_) => Ok(Some(format!("{f} refuted"))),
                    Err(e) => Err(format!("{f}: {e}")),
                }
            })
            .collect();
        Tally::from_results(results).outcome("instances provable")
    }));
    out.push(check(
        "rank-defining formulas hold exactly at their rank",
        || {
            let mut cases = 0;
            for n in 0..=4 {
                let d = rank_defining(n);
                for len in n + 1..=n + 6 {
                    let truth = Model::new(Frame::linear(len)).truth_set(&d)?;
                    let expected: Vec<bool> = (0..len).map(|w| w == n).collect();
                    if truth != expected {
                        return Ok((false, format!("{d} on {len} ranks: {truth:?}")));
                    }
                    cases += 1;
                }
                // Neither the formula nor its negation is a theorem.
                if decide_gl_closed(&d)?.is_provable()
                    || decide_gl_closed(&Formula::not(d.clone()))?.is_provable()
                {
                    return Ok((false, format!("{d} or its negation decided provable")));
                }
            }
            Ok((true, format!("n = 0..=4 on {cases} truncations")))
        },
    ));
    out.push(check("GL refutes linearity with a 3-world model", || {
        let lin = instantiate_schema(Schema::Linearity, &args2(var("p"), var("q")))?;
        let tab = decide_gl(&lin)?;
        let small = countermodel_search(&lin, FrameClass::Gl, &Limits::unbounded_time(3))?;
        let smaller = countermodel_search(&lin, FrameClass::Gl, &Limits::unbounded_time(2))?;
        match (tab.is_provable(), small) {
            (false, Some((m, w))) if smaller.is_none() => Ok((
                !m.check(w, &lin)?,
                format!("minimal countermodel has {} worlds", m.frame.len()),
            )),
            _ => Ok((false, "no 3-world countermodel".into())),
        }
    }));
    out
}

fn substitution() -> Vec<Check> {
    let formulas = enumerate_formulas(&["p", "q"], 2, 200);
    let defining: BTreeMap<usize, Formula> = (0..4).map(|x| (x, rank_defining(x))).collect();
    let jobs: Vec<(usize, u64)> = (1..=4usize)
        .flat_map(|n| (0..1u64 << (2 * n)).map(move |v| (n, v)))
        .collect();
    let start = Instant::now();
    let per_job: Vec<Result<(usize, Vec<String>), String>> = jobs
        .par_iter()
        .map(|&(n, v)| {
            let frame = Frame::linear(n);
            let mut val: BTreeMap<String, BTreeSet<usize>> = BTreeMap::new();
            val.insert("p".into(), (0..n).filter(|w| (v >> w) & 1 == 1).collect());
            val.insert(
                "q".into(),
                (0..n).filter(|w| (v >> (n + w)) & 1 == 1).collect(),
            );
            let mut m = Model::new(frame);
            for (p, ws) in &val {
                m.set(crate::formula::Atom::Var(p.clone()), ws.iter().copied());
            }
            let truths: Vec<Vec<bool>> = formulas
                .iter()
                .map(|c| m.truth_set(c))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            let mut checked = 0;
            let mut fails = Vec::new();
            for i in 0..n {
                let defs: BTreeMap<usize, Formula> =
                    defining.range(..n).map(|(k, d)| (*k, d.clone())).collect();
                let subst =
                    restricted_substitution(&m, i, &val, &defs).map_err(|e| e.to_string())?;
                let cone = m.frame.reachable_from(i);
                for (c, truth) in formulas.iter().zip(&truths) {
                    let cs = c.substitute(&subst);
                    let ts = m.truth_set(&cs).map_err(|e| e.to_string())?;
                    for &j in &cone {
                        checked += 1;
                        if truth[j] != ts[j] {
                            fails.push(format!("{c} at {j} on {n} ranks, i = {i}, V = {val:?}"));
                        }
                    }
                }
            }
            Ok((checked, fails))
        })
        .collect();
    let c = check("substituted formulas agree on every cone", || {
        let mut total = 0;
        let mut fails = Vec::new();
        for r in per_job {
            let (n, f) = r?;
            total += n;
            fails.extend(f);
        }
        let detail = format!(
            "{} formulas, {} models, {total} comparisons, {} failures{}",
            formulas.len(),
            jobs.len(),
            fails.len(),
            fails
                .first()
                .map(|f| format!("; first: {f}"))
                .unwrap_or_default()
        );
        Ok((fails.is_empty() && formulas.len() == 200, detail))
    });
    vec![
        c,
        timing("runtime", start.elapsed(), Duration::from_secs(300)),
    ]
}

fn glp_schemata(max_level: u32) -> Vec<Schema> {
    let mut out = Vec::new();
    for n in 0..=max_level {
        out.push(Schema::GlpLob { n });
    }
    for n in 0..=max_level {
        for m in 0..=n {
            out.push(Schema::GlpMonotone { m, n });
        }
    }
    for n in 0..=max_level {
        for m in 0..n {
            out.push(Schema::GlpNegative { m, n });
        }
    }
    out
}

fn ignatiev(seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    out.push(check(
        "root-point trichotomy on the bound-4 truncation",
        || {
            let tu = TruncatedUniverse::new(4, 0)?;
            let roots: Vec<_> = tu
                .points()
                .iter()
                .filter(|p| root_point(&p.coord(0)) == **p)
                .collect();
            let mut pairs = 0;
            for a in &roots {
                if !in_universe(a.coords()) {
                    return Ok((false, format!("{a} is not a point")));
                }
                for b in &roots {
                    let ab = rel_n(0, a, b);
                    let ba = rel_n(0, b, a);
                    let eq = a == b;
                    let expected = match roots_trichotomy(&a.coord(0), &b.coord(0)) {
                        Trichotomy::R0Ab => (true, false, false),
                        Trichotomy::R0Ba => (false, true, false),
                        Trichotomy::Equal => (false, false, true),
                    };
                    if (ab, ba, eq) != expected {
                        return Ok((false, format!("{a} vs {b}: {:?}", (ab, ba, eq))));
                    }
                    pairs += 1;
                }
            }
            Ok((
                true,
                format!("{} root points, {pairs} ordered pairs", roots.len()),
            ))
        },
    ));
    let tu = match TruncatedUniverse::new(3, 2) {
        Ok(tu) => tu,
        Err(e) => {
            out.push(check("bound-3 truncation", || Err(e.into())));
            return out;
        }
    };
    for (k, schema) in glp_schemata(2).into_iter().enumerate() {
        out.push(check(
            format!("{schema:?} valid on the bound-3 truncation"),
            || {
                let mut g =
                    FormulaGen::new(GenConfig::polymodal(2, 2), seed.wrapping_add(k as u64));
                let results = (0..30)
                    .map(|_| {
                        let a = g.gl();
                        let f = instantiate_schema(schema, &SchemaArgs::from([("A", a)]))
                            .map_err(|e| e.to_string())?;
                        let truth = tu.truth_set(&f).map_err(|e| e.to_string())?;
                        Ok(truth
                            .iter()
                            .position(|t| !t)
                            .map(|x| format!("{f} fails at {}", tu.points()[x])))
                    })
                    .collect();
                Tally::from_results(results).outcome("instances valid")
            },
        ));
    }
    out.push(check("linearity holds on the bound-3 truncation", || {
        let mut g = FormulaGen::new(GenConfig::polymodal(2, 2), seed);
        let results = (0..30)
            .map(|_| {
                let (a, b) = (g.gl(), g.gl());
                let r = crate::ignatiev::linearity_experiment(&tu, &a, &b)
                    .map_err(|e| e.to_string())?;
                Ok(r.violations.first().map(|v| {
                    format!(
                        "A = {a}, B = {b}: {} violations, first at {}",
                        r.violations.len(),
                        v.point
                    )
                }))
            })
            .collect();
        Tally::from_results(results).outcome("pairs without violations")
    }));
    out
}

fn constants(seed: u64) -> Vec<Check> {
    let formulas = FormulaGen::new(GenConfig::constants(1, 3), seed).gl_batch(200);
    let mut out = Vec::new();
    out.push(check("normal forms are equivalent on G1", || {
        let results = formulas
            .par_iter()
            .map(|f| {
                let nf = normal_form(1, f).map_err(|e| format!("{f}: {e}"))?;
                let nff = nf.to_formula();
                for m in 0..=f.modal_depth() + 2 {
                    for i in 0..2 {
                        let want = eval_gn(1, m, i, f).map_err(|e| e.to_string())?;
                        let got = eval_gn(1, m, i, &nff).map_err(|e| e.to_string())?;
                        if want != got || want != nf.holds(m, i) {
                            return Ok(Some(format!("{f} vs {nf} at <{m},{i}>")));
                        }
                    }
                }
                Ok(None)
            })
            .collect();
        Tally::from_results(results).outcome("formulas")
    }));
    out.push(check("provable box implies provable body", || {
        let mut premises = 0;
        let results: Vec<_> = formulas
            .iter()
            .map(|f| {
                let boxed = decide_fgl(1, &Formula::boxed(f.clone())).map_err(|e| e.to_string())?;
                if !boxed.is_provable() {
                    return Ok(None);
                }
                premises += 1;
                let plain = decide_fgl(1, f).map_err(|e| e.to_string())?;
                Ok((!plain.is_provable()).then(|| format!("{f}")))
            })
            .collect();
        let (ok, detail) = Tally::from_results(results).outcome("formulas")?;
        Ok((ok, format!("{detail} ({premises} with provable box)")))
    }));
    out.push(check("truth stabilizes from row depth", || {
        let results = formulas
            .iter()
            .map(|f| {
                let d = f.modal_depth();
                for i in 0..2 {
                    let base = eval_gn(1, d, i, f).map_err(|e| e.to_string())?;
                    for m in d + 1..=d + 4 {
                        if eval_gn(1, m, i, f).map_err(|e| e.to_string())? != base {
                            return Ok(Some(format!("{f} at <{m},{i}>")));
                        }
                    }
                }
                Ok(None)
            })
            .collect();
        Tally::from_results(results).outcome("formulas")
    }));
    for index in 0..2 {
        out.push(check(format!("FGL1 axiom for column {index}"), || {
            let mut g = FormulaGen::new(GenConfig::closed(0), seed.wrapping_add(index as u64));
            let results = (0..30)
                .map(|_| {
                    let b = g.rank_combination(3);
                    let f = instantiate_schema(
                        Schema::FglAxiom { n: 1, index },
                        &SchemaArgs::from([("B", b)]),
                    )
                    .map_err(|e| e.to_string())?;
                    let v = decide_fgl(1, &f).map_err(|e| e.to_string())?;
                    Ok((!v.is_provable()).then(|| format!("{f}")))
                })
                .collect();
            Tally::from_results(results).outcome("instances provable")
        }));
    }
    out.push(check("GL.4 proves Q1 and Q2 and refutes linearity", || {
        let (p, q, r) = (var("p"), var("q"), var("r"));
        let q1 = instantiate_schema(
            Schema::Q1,
            &SchemaArgs::from([("A", p.clone()), ("B", q.clone()), ("C", r)]),
        )?;
        let q2 = instantiate_schema(Schema::Q2, &args2(p.clone(), q.clone()))?;
        let lin = instantiate_schema(Schema::Linearity, &args2(p, q))?;
        let ok = decide_gl4(&q1)?.is_provable()
            && decide_gl4(&q2)?.is_provable()
            && !decide_gl4(&lin)?.is_provable();
        Ok((ok, "Q1 provable, Q2 provable, linearity refuted".into()))
    }));
    out
}

/// Every transitive irreflexive relation on `n` labelled worlds.
fn strict_orders(n: usize) -> Vec<Frame> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|(a, b)| a != b)
        .collect();
    (0..1u64 << pairs.len())
        .into_par_iter()
        .filter_map(|mask| {
            let mut rel = vec![0u32; n];
            for (k, &(a, b)) in pairs.iter().enumerate() {
                if (mask >> k) & 1 == 1 {
                    rel[a] |= 1 << b;
                }
            }
            let transitive = (0..n).all(|a| {
                (0..n)
                    .filter(|&b| (rel[a] >> b) & 1 == 1)
                    .all(|b| rel[b] & !rel[a] == 0)
            });
            let irreflexive = (0..n).all(|a| (rel[a] >> a) & 1 == 0);
            (transitive && irreflexive).then(|| Frame::from_fn(n, |a, b| (rel[a] >> b) & 1 == 1))
        })
        .collect()
}

fn pmorph() -> Vec<Check> {
    let start = Instant::now();
    let c = check("p-morphism from G1 onto every generated subframe", || {
        let mut frames = 0;
        let mut roots = 0;
        let mut fails = Vec::new();
        for n in 1..=5 {
            let class_c: Vec<Frame> = strict_orders(n)
                .into_iter()
                .filter(|f| frame_class(f).in_c())
                .collect();
            frames += class_c.len();
            let results: Vec<Option<String>> = class_c
                .par_iter()
                .flat_map_iter(|fr| {
                    (0..fr.len()).map(move |x| match build_pmorphism_from_g1(fr, x) {
                        Ok((_, pm)) if pm.is_valid() && pm.is_surjective() => None,
                        Ok((p, _)) => {
                            Some(format!("{:?} at {x}: map from {p} rejected", fr.edges()))
                        }
                        Err(e) => Some(format!("{:?} at {x}: {e}", fr.edges())),
                    })
                })
                .collect();
            roots += results.len();
            fails.extend(results.into_iter().flatten());
        }
        let detail = format!(
            "{frames} frames of class C, {} of {roots} points succeed{}",
            roots - fails.len(),
            fails
                .first()
                .map(|f| format!("; first failure: {f}"))
                .unwrap_or_default()
        );
        Ok((fails.is_empty(), detail))
    });
    vec![
        c,
        timing("runtime", start.elapsed(), Duration::from_secs(300)),
    ]
}

fn gl4(seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    out.push(check("GL.4 engines agree", || {
        let formulas = FormulaGen::new(GenConfig::gl(2, 2), seed).gl_batch(200);
        let results = formulas
            .par_iter()
            .map(|f| {
                let bound = 1 + 2 * f.box_subformulas().len();
                let opts = DecideOptions {
                    cross_check: false,
                    limits: Limits::unbounded_time(bound),
                };
                let a = decide_gl4_with(f, Gl4Engine::Enumeration, &opts)
                    .map_err(|e| format!("{f}: {e}"))?;
                let b =
                    decide_gl4_with(f, Gl4Engine::G1, &opts).map_err(|e| format!("{f}: {e}"))?;
                Ok((a.is_provable() != b.is_provable()).then(|| {
                    format!(
                        "{f}: enumeration {}, G1 {}",
                        a.summary().verdict,
                        b.summary().verdict
                    )
                }))
            })
            .collect();
        Tally::from_results(results).outcome("formulas agree")
    }));
    out.push(check("Q1 and Q2 provable", || {
        let (p, q, r) = (var("p"), var("q"), var("r"));
        let q1 = instantiate_schema(
            Schema::Q1,
            &SchemaArgs::from([("A", p.clone()), ("B", q.clone()), ("C", r)]),
        )?;
        let q2 = instantiate_schema(Schema::Q2, &args2(p, q))?;
        let full = |f: &Formula| DecideOptions {
            cross_check: false,
            limits: Limits::unbounded_time(1 + 2 * f.box_subformulas().len()),
        };
        let q1_g1 = decide_gl4_with(&q1, Gl4Engine::G1, &full(&q1))?.is_provable();
        let q2_g1 = decide_gl4_with(&q2, Gl4Engine::G1, &full(&q2))?.is_provable();
        let q2_enum = decide_gl4_with(&q2, Gl4Engine::Enumeration, &full(&q2))?.is_provable();
        // Q1 has three letters and six boxes: the full enumeration bound (13
        // worlds, 39 valuation bits) is out of reach, so only 7 worlds.
        let q1_small = countermodel_search(&q1, FrameClass::C, &Limits::unbounded_time(7))?;
        Ok((
            q1_g1 && q2_g1 && q2_enum && q1_small.is_none(),
            format!(
                "Q1: G1 {q1_g1}, no C-countermodel up to 7 worlds {}; Q2: G1 {q2_g1}, enumeration {q2_enum}",
                q1_small.is_none()
            ),
        ))
    }));
    out.push(check("non-branching schemata", || {
        let letters = |n: u32| -> SchemaArgs {
            let names = ["p", "q", "r", "t"];
            SchemaArgs(
                (1..=n + 2)
                    .map(|i| (format!("A{i}"), var(names[i as usize - 1])))
                    .collect(),
            )
        };
        let nb0 = instantiate_schema(Schema::NonBranching { n: 0 }, &letters(0))?;
        let nb1 = instantiate_schema(Schema::NonBranching { n: 1 }, &letters(1))?;
        let gl3_0 = decide_gl3(&nb0)?.is_provable();
        let gl4_1 = decide_gl4(&nb1)?.is_provable();
        let gl4_0 = decide_gl4(&nb0)?.is_provable();
        Ok((
            gl3_0 && gl4_1 && !gl4_0,
            format!("n=0 in GL.3: {gl3_0}, n=1 in GL.4: {gl4_1}, n=0 in GL.4: {gl4_0}"),
        ))
    }));
    out
}

fn il_args(schema: IlSchema, g: &mut FormulaGen) -> BTreeMap<String, IlFormula> {
    schema
        .letters()
        .iter()
        .map(|l| (l.to_string(), g.il()))
        .collect()
}

/// First model on exactly `n` worlds of `class` falsifying `f` at world 0.
fn countermodel_on(f: &Formula, n: usize, class: FrameClass) -> Result<Option<Model>, BoxError> {
    let atoms: Vec<_> = f.atoms().into_iter().collect();
    let bits = atoms.len() * n;
    for frame in enumerate_frames(n, class) {
        for v in 0..1u64 << bits {
            let mut m = Model::new(frame.clone());
            for (k, a) in atoms.iter().enumerate() {
                m.set(a.clone(), (0..n).filter(|w| (v >> (k * n + w)) & 1 == 1));
            }
            if !m.check(0, f)? {
                return Ok(Some(m));
            }
        }
    }
    Ok(None)
}

fn interp(seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    for (k, schema) in IlSchema::ALL.into_iter().enumerate() {
        out.push(check(
            format!("tr of {} is GL.3-provable", schema.name()),
            || {
                let mut g = FormulaGen::new(GenConfig::il(2, 2), seed.wrapping_add(k as u64));
                let instances: Vec<IlFormula> = (0..50)
                    .map(|_| il_axiom_instance(schema, &il_args(schema, &mut g)))
                    .collect::<Result<_, _>>()?;
                let results = instances
                    .par_iter()
                    .map(|f| {
                        let v = decide_ilw3(f).map_err(|e| format!("{f}: {e}"))?;
                        Ok((!v.is_provable()).then(|| format!("{f}")))
                    })
                    .collect();
                Tally::from_results(results).outcome("instances provable")
            },
        ));
    }
    out.push(check("modus ponens closure", || {
        let mut g = FormulaGen::new(GenConfig::il(2, 2), seed);
        let mut premises = 0;
        let mut results = Vec::new();
        for k in 0..60 {
            let schema = IlSchema::ALL[k % IlSchema::ALL.len()];
            let phi = il_axiom_instance(schema, &il_args(schema, &mut g))?;
            // Consequents: a random formula, and one provable by construction.
            let chi = g.il();
            for psi in [chi.clone(), IlFormula::or(chi, phi.clone())] {
                let imp = IlFormula::imp(phi.clone(), psi.clone());
                if decide_ilw3(&phi)?.is_provable() && decide_ilw3(&imp)?.is_provable() {
                    premises += 1;
                    let ok = decide_ilw3(&psi)?.is_provable();
                    results.push(Ok((!ok).then(|| format!("{psi}"))));
                }
            }
        }
        let (ok, detail) = Tally::from_results(results).outcome("conclusions provable")?;
        Ok((ok && premises > 0, detail))
    }));
    out.push(check("necessitation closure", || {
        let mut g = FormulaGen::new(GenConfig::il(2, 2), seed.wrapping_add(1));
        let mut results = Vec::new();
        for k in 0..60 {
            let f = if k % 2 == 0 {
                let schema = IlSchema::ALL[(k / 2) % IlSchema::ALL.len()];
                il_axiom_instance(schema, &il_args(schema, &mut g))?
            } else {
                g.il()
            };
            if decide_ilw3(&f)?.is_provable() {
                let ok = decide_ilw3(&IlFormula::boxed(f.clone()))?.is_provable();
                results.push(Ok((!ok).then(|| format!("{f}"))));
            }
        }
        Tally::from_results(results).outcome("boxed theorems provable")
    }));
    for schema in [IlSchema::J2, IlSchema::J4] {
        out.push(check(
            format!(
                "tr of {} fails on a non-transitive 3-world model",
                schema.name()
            ),
            || {
                let args: BTreeMap<String, IlFormula> = ["A", "B", "C"]
                    .iter()
                    .zip(["p", "q", "r"])
                    .map(|(l, v)| (l.to_string(), IlFormula::var(v)))
                    .collect();
                let f = translate_tr(&il_axiom_instance(schema, &args)?)?;
                if !decide_gl3(&f)?.is_provable() {
                    return Ok((false, format!("{f} is not GL.3-provable")));
                }
                match countermodel_on(&f, 3, FrameClass::Irreflexive)? {
                    Some(m) => {
                        let transitive = frame_class(&m.frame).transitive;
                        Ok((
                            !transitive,
                            format!("falsified on relation {:?}", m.frame.edges()),
                        ))
                    }
                    None => Ok((false, "no 3-world countermodel".into())),
                }
            },
        ));
    }
    out
}
