//! Interpretability logic: the translation `tr` into the GL language, ILW.3
//! decided through GL.3, and instances of the IL axiom schemata.
//!
//! `tr` is the identity except on `▷`, where
//! `(A ▷ B)^tr = □(A^tr → (B^tr ∨ ◇B^tr))`. It is applied to formulas with
//! variables as well as to closed ones.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::formula::{Formula, IlFormula, Syntax};
use crate::glprover::{decide_gl3_with, DecideOptions, GlError, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpError {
    #[error("only the level-0 box is allowed, found level {0}")]
    Level(u32),
    #[error("missing argument for schema letter {0}")]
    MissingArgument(String),
    #[error(transparent)]
    Gl(#[from] GlError),
}

pub fn translate_tr(f: &IlFormula) -> Result<Formula, InterpError> {
    Ok(match f {
        IlFormula::Bot => Formula::Bot,
        IlFormula::Var(v) => Formula::var(v),
        IlFormula::Const(i) => Formula::cons(*i),
        IlFormula::Implies(a, b) => Formula::imp(translate_tr(a)?, translate_tr(b)?),
        IlFormula::BoxN(0, a) => Formula::boxed(translate_tr(a)?),
        IlFormula::BoxN(l, _) => return Err(InterpError::Level(*l)),
        IlFormula::Rhd(a, b) => {
            let (a, b) = (translate_tr(a)?, translate_tr(b)?);
            Formula::boxed(Formula::imp(a, Formula::or(b.clone(), Formula::dia(b))))
        }
    })
}

/// ILW.3 decision through GL.3. A refutation is a linear countermodel of the
/// translation, not of the IL formula itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ilw3Verdict {
    pub translation: Formula,
    pub verdict: Verdict,
}

impl Ilw3Verdict {
    pub fn is_provable(&self) -> bool {
        self.verdict.is_provable()
    }
}

pub fn decide_ilw3(f: &IlFormula) -> Result<Ilw3Verdict, InterpError> {
    decide_ilw3_with(f, &DecideOptions::default())
}

pub fn decide_ilw3_with(f: &IlFormula, opts: &DecideOptions) -> Result<Ilw3Verdict, InterpError> {
    let translation = translate_tr(f)?;
    let verdict = decide_gl3_with(&translation, opts)?;
    Ok(Ilw3Verdict {
        translation,
        verdict,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IlSchema {
    L1,
    L2,
    L3,
    J1,
    J2,
    J3,
    J4,
    J5,
    M,
    P,
    W,
    Ilw3Linearity,
}

impl IlSchema {
    pub const ALL: [IlSchema; 12] = [
        IlSchema::L1,
        IlSchema::L2,
        IlSchema::L3,
        IlSchema::J1,
        IlSchema::J2,
        IlSchema::J3,
        IlSchema::J4,
        IlSchema::J5,
        IlSchema::M,
        IlSchema::P,
        IlSchema::W,
        IlSchema::Ilw3Linearity,
    ];

    pub fn letters(&self) -> &'static [&'static str] {
        match self {
            IlSchema::L2 | IlSchema::L3 | IlSchema::J5 => &["A"],
            IlSchema::L1
            | IlSchema::J1
            | IlSchema::J4
            | IlSchema::P
            | IlSchema::W
            | IlSchema::Ilw3Linearity => &["A", "B"],
            IlSchema::J2 | IlSchema::J3 | IlSchema::M => &["A", "B", "C"],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            IlSchema::L1 => "L1",
            IlSchema::L2 => "L2",
            IlSchema::L3 => "L3",
            IlSchema::J1 => "J1",
            IlSchema::J2 => "J2",
            IlSchema::J3 => "J3",
            IlSchema::J4 => "J4",
            IlSchema::J5 => "J5",
            IlSchema::M => "M",
            IlSchema::P => "P",
            IlSchema::W => "W",
            IlSchema::Ilw3Linearity => "ILW3-linearity",
        }
    }
}

pub fn il_axiom_instance(
    schema: IlSchema,
    args: &BTreeMap<String, IlFormula>,
) -> Result<IlFormula, InterpError> {
    type F = IlFormula;
    let get = |l: &str| {
        args.get(l)
            .cloned()
            .ok_or_else(|| InterpError::MissingArgument(l.to_string()))
    };
    let rhd = F::rhd;
    Ok(match schema {
        IlSchema::L1 => {
            let (a, b) = (get("A")?, get("B")?);
            F::imp(
                F::boxed(F::imp(a.clone(), b.clone())),
                F::imp(F::boxed(a), F::boxed(b)),
            )
        }
        IlSchema::L2 => {
            let a = get("A")?;
            F::imp(F::boxed(a.clone()), F::box_iter(2, a))
        }
        IlSchema::L3 => {
            let a = get("A")?;
            F::imp(
                F::boxed(F::imp(F::boxed(a.clone()), a.clone())),
                F::boxed(a),
            )
        }
        IlSchema::J1 => {
            let (a, b) = (get("A")?, get("B")?);
            F::imp(F::boxed(F::imp(a.clone(), b.clone())), rhd(a, b))
        }
        IlSchema::J2 => {
            let (a, b, c) = (get("A")?, get("B")?, get("C")?);
            F::imp(
                F::and(rhd(a.clone(), b.clone()), rhd(b, c.clone())),
                rhd(a, c),
            )
        }
        IlSchema::J3 => {
            let (a, b, c) = (get("A")?, get("B")?, get("C")?);
            F::imp(
                F::and(rhd(a.clone(), c.clone()), rhd(b.clone(), c.clone())),
                rhd(F::or(a, b), c),
            )
        }
        IlSchema::J4 => {
            let (a, b) = (get("A")?, get("B")?);
            F::imp(rhd(a.clone(), b.clone()), F::imp(F::dia(a), F::dia(b)))
        }
        IlSchema::J5 => {
            let a = get("A")?;
            rhd(F::dia(a.clone()), a)
        }
        IlSchema::M => {
            let (a, b, c) = (get("A")?, get("B")?, get("C")?);
            F::imp(
                rhd(a.clone(), b.clone()),
                rhd(F::and(a, F::boxed(c.clone())), F::and(b, F::boxed(c))),
            )
        }
        IlSchema::P => {
            let (a, b) = (get("A")?, get("B")?);
            let ab = rhd(a, b);
            F::imp(ab.clone(), F::boxed(ab))
        }
        IlSchema::W => {
            let (a, b) = (get("A")?, get("B")?);
            F::imp(
                rhd(a.clone(), b.clone()),
                rhd(a.clone(), F::and(b, F::boxed(F::not(a)))),
            )
        }
        IlSchema::Ilw3Linearity => {
            let (a, b) = (get("A")?, get("B")?);
            F::or(
                F::boxed(F::imp(F::boxed(a.clone()), b.clone())),
                F::boxed(F::imp(F::boxplus(b), a)),
            )
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse_formula, parse_il};

    fn il(s: &str) -> IlFormula {
        parse_il(s).unwrap()
    }

    fn args(pairs: &[(&str, &str)]) -> BTreeMap<String, IlFormula> {
        pairs.iter().map(|(k, v)| (k.to_string(), il(v))).collect()
    }

    #[test]
    fn tr_examples() {
        assert_eq!(
            translate_tr(&il("p |> q")).unwrap(),
            parse_formula("[](p -> q | <>q)").unwrap()
        );
        assert_eq!(
            translate_tr(&il("[]p")).unwrap(),
            parse_formula("[]p").unwrap()
        );
        assert_eq!(
            translate_tr(&il("(p |> q) -> (q |> p)")).unwrap(),
            parse_formula("[](p -> q | <>q) -> [](q -> p | <>p)").unwrap()
        );
        assert_eq!(translate_tr(&il("[1]p")), Err(InterpError::Level(1)));
    }

    #[test]
    fn schema_instances() {
        let j5 = il_axiom_instance(IlSchema::J5, &args(&[("A", "p")])).unwrap();
        assert_eq!(j5, il("<>p |> p"));
        let m =
            il_axiom_instance(IlSchema::M, &args(&[("A", "p"), ("B", "q"), ("C", "r")])).unwrap();
        assert_eq!(m, il("p |> q -> p & []r |> q & []r"));
        let w = il_axiom_instance(IlSchema::W, &args(&[("A", "p"), ("B", "q")])).unwrap();
        assert_eq!(w, il("p |> q -> p |> q & []~p"));
        let j2 = il_axiom_instance(
            IlSchema::J2,
            &args(&[("A", "top"), ("B", "top"), ("C", "top")]),
        )
        .unwrap();
        assert_eq!(j2, il("(top |> top) & (top |> top) -> top |> top"));
        assert_eq!(
            il_axiom_instance(IlSchema::J1, &args(&[("A", "p")])),
            Err(InterpError::MissingArgument("B".into()))
        );
    }

    #[test]
    fn ilw3_examples() {
        let pq = args(&[("A", "p"), ("B", "q"), ("C", "r")]);
        for s in [IlSchema::W, IlSchema::M, IlSchema::P] {
            let f = il_axiom_instance(s, &pq).unwrap();
            assert!(decide_ilw3(&f).unwrap().is_provable(), "{}", s.name());
        }
        assert!(decide_ilw3(&il("top |> top")).unwrap().is_provable());
        let v = decide_ilw3(&il("p |> q")).unwrap();
        assert!(!v.is_provable());
        let (m, w) = v.verdict.countermodel().unwrap();
        assert!(!m.check(w, &v.translation).unwrap());
    }

    #[test]
    fn tr_depth_bound() {
        for s in ["p |> q", "(p |> []q) -> <>(q |> p)", "[](p |> (q |> r))"] {
            let f = il(s);
            assert!(translate_tr(&f).unwrap().modal_depth() <= f.modal_depth());
        }
    }
}
