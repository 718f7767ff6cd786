//! Axiom schemata of the GL family, instantiated by letter.

use std::collections::BTreeMap;

use thiserror::Error;

use super::{Formula, Syntax};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schema {
    /// `□(A→B) → (□A → □B)`
    K,
    /// `□(□A→A) → □A`
    Lob,
    /// `□A → □□A`
    Four,
    /// `□(□A → B) ∨ □(□⁺B → A)`
    Linearity,
    /// Non-triple-branching.
    Q1,
    /// Strong confluence: `◇(◇A ∧ □B) → □(◇A ∨ B)`.
    Q2,
    /// The FGLₙ absorption axiom `□(𝐬ᵢ → B) → □B` for column `index < 2ⁿ`.
    FglAxiom { n: u32, index: u32 },
    /// `⋁_{i ≤ n+1} □(□⁺Aᵢ → ⋁_{j≠i} Aⱼ)` over letters `A1 … A(n+2)`.
    NonBranching { n: u32 },
    /// `[n]([n]A → A) → [n]A`
    GlpLob { n: u32 },
    /// `[m]A → [n]A`, `m ≤ n`
    GlpMonotone { m: u32, n: u32 },
    /// `<m>A → [n]<m>A`, `m < n`
    GlpNegative { m: u32, n: u32 },
}

impl Schema {
    /// Letters the instantiation expects.
    pub fn letters(&self) -> Vec<String> {
        let abc = |k: usize| ["A", "B", "C"][..k].iter().map(|s| s.to_string()).collect();
        match self {
            Schema::K | Schema::Linearity | Schema::Q2 => abc(2),
            Schema::Lob | Schema::Four => abc(1),
            Schema::Q1 => abc(3),
            Schema::FglAxiom { .. } => vec!["B".into()],
            Schema::NonBranching { n } => (1..=n + 2).map(|i| format!("A{i}")).collect(),
            Schema::GlpLob { .. } | Schema::GlpMonotone { .. } | Schema::GlpNegative { .. } => {
                abc(1)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("missing argument for schema letter {0}")]
    MissingArgument(String),
    #[error("B must be a Boolean combination of formulas []^k bot, got {0}")]
    MalformedB(String),
    #[error("invalid schema parameters: {0}")]
    BadParameters(String),
}

/// Mapping from schema letters (`A`, `B`, `C`, `A1`, …) to formulas.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SchemaArgs(pub BTreeMap<String, Formula>);

impl SchemaArgs {
    pub fn get(&self, letter: &str) -> Result<Formula, SchemaError> {
        self.0
            .get(letter)
            .cloned()
            .ok_or_else(|| SchemaError::MissingArgument(letter.to_string()))
    }

    pub fn insert(&mut self, letter: impl Into<String>, f: Formula) {
        self.0.insert(letter.into(), f);
    }
}

impl<const N: usize> From<[(&str, Formula); N]> for SchemaArgs {
    fn from(items: [(&str, Formula); N]) -> Self {
        SchemaArgs(items.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }
}

/// Whether `b` is built from `⊥`, `→` and towers `□ᵏ⊥`. `⊤ = ⊥→⊥` stands
/// for `□^ω⊥`.
pub fn is_rank_combination(b: &Formula) -> bool {
    match b {
        Formula::Bot => true,
        Formula::Implies(x, y) => is_rank_combination(x) && is_rank_combination(y),
        Formula::BoxN(0, _) => b.as_box_tower().is_some(),
        _ => false,
    }
}

/// The column formula `𝐬ᵢ`: `s_{j+1}` for each 1-bit `j` of `i` and
/// `¬s_{k+1}` for each 0-bit `k < n`.
pub fn column_formula(n: u32, i: u32) -> Formula {
    Formula::conj((0..n).map(|j| {
        let s = Formula::cons(j + 1);
        if (i >> j) & 1 == 1 {
            s
        } else {
            Formula::not(s)
        }
    }))
}

pub fn instantiate_schema(schema: Schema, args: &SchemaArgs) -> Result<Formula, SchemaError> {
    use Formula as F;
    let a = || args.get("A");
    let b = || args.get("B");
    let c = || args.get("C");
    Ok(match schema {
        Schema::K => {
            let (a, b) = (a()?, b()?);
            F::imp(
                F::boxed(F::imp(a.clone(), b.clone())),
                F::imp(F::boxed(a), F::boxed(b)),
            )
        }
        Schema::Lob => {
            let a = a()?;
            F::imp(
                F::boxed(F::imp(F::boxed(a.clone()), a.clone())),
                F::boxed(a),
            )
        }
        Schema::Four => {
            let a = a()?;
            F::imp(F::boxed(a.clone()), F::box_iter(2, a))
        }
        Schema::Linearity => {
            let (a, b) = (a()?, b()?);
            F::or(
                F::boxed(F::imp(F::boxed(a.clone()), b.clone())),
                F::boxed(F::imp(F::boxplus(b), a)),
            )
        }
        Schema::Q1 => {
            let (a, b, c) = (a()?, b()?, c()?);
            F::disj([
                F::boxed(F::imp(F::boxed(a.clone()), F::or(b.clone(), c.clone()))),
                F::boxed(F::imp(F::boxplus(b.clone()), F::or(a.clone(), c.clone()))),
                F::boxed(F::imp(F::boxplus(c), F::or(a, b))),
            ])
        }
        Schema::Q2 => {
            let (a, b) = (a()?, b()?);
            F::imp(
                F::dia(F::and(F::dia(a.clone()), F::boxed(b.clone()))),
                F::boxed(F::or(F::dia(a), b)),
            )
        }
        Schema::FglAxiom { n, index } => {
            if n >= 31 || index >= (1u32 << n) {
                return Err(SchemaError::BadParameters(format!(
                    "column {index} out of range for n = {n}"
                )));
            }
            let b = b()?;
            if !is_rank_combination(&b) {
                return Err(SchemaError::MalformedB(b.to_string()));
            }
            F::imp(
                F::boxed(F::imp(column_formula(n, index), b.clone())),
                F::boxed(b),
            )
        }
        Schema::NonBranching { .. } => {
            let letters: Vec<Formula> = schema
                .letters()
                .iter()
                .map(|l| args.get(l))
                .collect::<Result<_, _>>()?;
            F::disj((0..letters.len()).map(|i| {
                let rest = letters
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, f)| f.clone());
                F::boxed(F::imp(F::boxplus(letters[i].clone()), F::disj(rest)))
            }))
        }
        Schema::GlpLob { n } => {
            let a = a()?;
            F::imp(
                F::boxn(n, F::imp(F::boxn(n, a.clone()), a.clone())),
                F::boxn(n, a),
            )
        }
        Schema::GlpMonotone { m, n } => {
            if m > n {
                return Err(SchemaError::BadParameters(format!(
                    "need m <= n, got {m} > {n}"
                )));
            }
            let a = a()?;
            F::imp(F::boxn(m, a.clone()), F::boxn(n, a))
        }
        Schema::GlpNegative { m, n } => {
            if m >= n {
                return Err(SchemaError::BadParameters(format!(
                    "need m < n, got {m} >= {n}"
                )));
            }
            let a = a()?;
            F::imp(F::dian(m, a.clone()), F::boxn(n, F::dian(m, a)))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse_formula, FragmentTag};

    fn p() -> Formula {
        Formula::var("p")
    }
    fn q() -> Formula {
        Formula::var("q")
    }

    #[test]
    fn lob_literal() {
        let l = instantiate_schema(Schema::Lob, &SchemaArgs::from([("A", p())])).unwrap();
        assert_eq!(l, parse_formula("[]([]p -> p) -> []p").unwrap());
    }

    #[test]
    fn fgl1_axiom_for_column_zero() {
        let b = Formula::boxed(Formula::Bot);
        let f = instantiate_schema(
            Schema::FglAxiom { n: 1, index: 0 },
            &SchemaArgs::from([("B", b)]),
        )
        .unwrap();
        assert_eq!(f, parse_formula("[](~s1 -> []bot) -> [][]bot").unwrap());
    }

    #[test]
    fn column_formula_reads_bits() {
        assert_eq!(column_formula(2, 2), parse_formula("~s1 & s2").unwrap());
        assert_eq!(column_formula(0, 0), Formula::top());
    }

    #[test]
    fn fgl_axiom_rejects_bad_b() {
        let err = instantiate_schema(
            Schema::FglAxiom { n: 1, index: 1 },
            &SchemaArgs::from([("B", Formula::cons(1))]),
        );
        assert!(matches!(err, Err(SchemaError::MalformedB(_))));
        let ok = instantiate_schema(
            Schema::FglAxiom { n: 1, index: 1 },
            &SchemaArgs::from([("B", Formula::top())]),
        );
        assert!(ok.is_ok());
    }

    #[test]
    fn non_branching_n0() {
        let f = instantiate_schema(
            Schema::NonBranching { n: 0 },
            &SchemaArgs::from([("A1", p()), ("A2", q())]),
        )
        .unwrap();
        assert_eq!(
            f,
            parse_formula("[](boxplus p -> q) | [](boxplus q -> p)").unwrap()
        );
    }

    #[test]
    fn missing_letter() {
        let err = instantiate_schema(Schema::K, &SchemaArgs::from([("A", p())]));
        assert_eq!(err, Err(SchemaError::MissingArgument("B".into())));
    }

    #[test]
    fn closed_arguments_stay_closed() {
        let a = Formula::boxed(Formula::Bot);
        let b = Formula::dia(Formula::top());
        let args = SchemaArgs::from([("A", a.clone()), ("B", b.clone()), ("C", a)]);
        for s in [
            Schema::K,
            Schema::Lob,
            Schema::Four,
            Schema::Linearity,
            Schema::Q1,
            Schema::Q2,
        ] {
            let f = instantiate_schema(s, &args).unwrap();
            assert!(f.in_fragment(FragmentTag::ClosedB), "{s:?}");
        }
    }
}
