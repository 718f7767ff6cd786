//! Modal formulas for the GL family and for interpretability logic.
//!
//! Both [`Formula`] and [`IlFormula`] keep a minimal core of connectives:
//! `⊥`, `→`, indexed boxes, propositional variables and the constants
//! `s1, s2, …`. Negation, conjunction, disjunction, `⊤`, diamonds and `□⁺`
//! are smart constructors that expand into that core, and the printer folds
//! the expanded shapes back into sugar.

mod parse;
mod print;
mod schema;

use std::collections::BTreeSet;
use std::fmt;

pub use parse::{parse, parse_formula, parse_il, parse_in, ParseError};
pub use schema::{
    column_formula, instantiate_schema, is_rank_combination, Schema, SchemaArgs, SchemaError,
};

/// A formula of the provability-logic language.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Bot,
    Var(String),
    /// Constant `s_i`, `i ≥ 1`.
    Const(u32),
    Implies(Box<Formula>, Box<Formula>),
    /// `[n]A`; plain `□` is level 0.
    BoxN(u32, Box<Formula>),
}

/// A formula of the interpretability-logic language: [`Formula`] plus `▷`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IlFormula {
    Bot,
    Var(String),
    Const(u32),
    Implies(Box<IlFormula>, Box<IlFormula>),
    BoxN(u32, Box<IlFormula>),
    Rhd(Box<IlFormula>, Box<IlFormula>),
}

/// Atomic letters: variables and constants are both atoms for Kripke semantics.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Var(String),
    Const(u32),
}

impl Atom {
    /// Parses `s<digits>` as a constant and anything else as a variable name.
    pub fn from_name(name: &str) -> Atom {
        match const_index(name) {
            Some(i) => Atom::Const(i),
            None => Atom::Var(name.to_string()),
        }
    }

    pub fn to_formula(&self) -> Formula {
        match self {
            Atom::Var(v) => Formula::Var(v.clone()),
            Atom::Const(i) => Formula::Const(*i),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Var(v) => write!(f, "{v}"),
            Atom::Const(i) => write!(f, "s{i}"),
        }
    }
}

pub(crate) fn const_index(name: &str) -> Option<u32> {
    let digits = name.strip_prefix('s')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

/// Syntactic fragments named by the grammar of each logic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FragmentTag {
    /// `ℬ ::= ⊥ | ℬ→ℬ | □ℬ`
    ClosedB,
    /// `𝒟 ::= ⊥ | 𝒟→𝒟 | [n]𝒟`
    ClosedD,
    /// `ℱₙ ::= s₁ | … | sₙ | ⊥ | ℱₙ→ℱₙ | □ℱₙ`
    Fn(u32),
    FullGL,
    FullIL,
}

impl fmt::Display for FragmentTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FragmentTag::ClosedB => write!(f, "closed fragment B"),
            FragmentTag::ClosedD => write!(f, "closed GLP fragment D"),
            FragmentTag::Fn(n) => write!(f, "fragment F{n}"),
            FragmentTag::FullGL => write!(f, "full GL language"),
            FragmentTag::FullIL => write!(f, "full IL language"),
        }
    }
}

/// Borrowed view of one node, shared by the parser/printer of both languages.
#[derive(Debug, Clone, Copy)]
pub enum Node<'a, F> {
    Bot,
    Var(&'a str),
    Const(u32),
    Implies(&'a F, &'a F),
    BoxN(u32, &'a F),
    Rhd(&'a F, &'a F),
}

/// Core constructors plus the derived connectives, written once for both ASTs.
pub trait Syntax: Sized + Clone + PartialEq {
    fn bot() -> Self;
    fn var(name: &str) -> Self;
    fn cons(index: u32) -> Self;
    fn imp(a: Self, b: Self) -> Self;
    fn boxn(level: u32, a: Self) -> Self;
    /// `None` when the language has no `▷`.
    fn try_rhd(a: Self, b: Self) -> Option<Self>;
    fn node(&self) -> Node<'_, Self>;

    fn top() -> Self {
        Self::imp(Self::bot(), Self::bot())
    }
    fn not(a: Self) -> Self {
        Self::imp(a, Self::bot())
    }
    fn and(a: Self, b: Self) -> Self {
        Self::not(Self::imp(a, Self::not(b)))
    }
    fn or(a: Self, b: Self) -> Self {
        Self::imp(Self::not(a), b)
    }
    fn iff(a: Self, b: Self) -> Self {
        Self::and(Self::imp(a.clone(), b.clone()), Self::imp(b, a))
    }
    fn boxed(a: Self) -> Self {
        Self::boxn(0, a)
    }
    fn dian(level: u32, a: Self) -> Self {
        Self::not(Self::boxn(level, Self::not(a)))
    }
    fn dia(a: Self) -> Self {
        Self::dian(0, a)
    }
    /// `□⁺A := A ∧ □A`
    fn boxplus(a: Self) -> Self {
        Self::and(a.clone(), Self::boxed(a))
    }
    /// `□ᵏA`
    fn box_iter(k: usize, a: Self) -> Self {
        (0..k).fold(a, |acc, _| Self::boxed(acc))
    }
    /// `◇ᵏA`
    fn dia_iter(k: usize, a: Self) -> Self {
        (0..k).fold(a, |acc, _| Self::dia(acc))
    }
    /// Left-nested conjunction; `⊤` when empty.
    fn conj<I: IntoIterator<Item = Self>>(items: I) -> Self {
        let mut it = items.into_iter();
        match it.next() {
            None => Self::top(),
            Some(first) => it.fold(first, Self::and),
        }
    }
    /// Left-nested disjunction; `⊥` when empty.
    fn disj<I: IntoIterator<Item = Self>>(items: I) -> Self {
        let mut it = items.into_iter();
        match it.next() {
            None => Self::bot(),
            Some(first) => it.fold(first, Self::or),
        }
    }
}

impl Syntax for Formula {
    fn bot() -> Self {
        Formula::Bot
    }
    fn var(name: &str) -> Self {
        Formula::Var(name.to_string())
    }
    fn cons(index: u32) -> Self {
        Formula::Const(index)
    }
    fn imp(a: Self, b: Self) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }
    fn boxn(level: u32, a: Self) -> Self {
        Formula::BoxN(level, Box::new(a))
    }
    fn try_rhd(_: Self, _: Self) -> Option<Self> {
        None
    }
    fn node(&self) -> Node<'_, Self> {
        match self {
            Formula::Bot => Node::Bot,
            Formula::Var(v) => Node::Var(v),
            Formula::Const(i) => Node::Const(*i),
            Formula::Implies(a, b) => Node::Implies(a, b),
            Formula::BoxN(n, a) => Node::BoxN(*n, a),
        }
    }
}

impl Syntax for IlFormula {
    fn bot() -> Self {
        IlFormula::Bot
    }
    fn var(name: &str) -> Self {
        IlFormula::Var(name.to_string())
    }
    fn cons(index: u32) -> Self {
        IlFormula::Const(index)
    }
    fn imp(a: Self, b: Self) -> Self {
        IlFormula::Implies(Box::new(a), Box::new(b))
    }
    fn boxn(level: u32, a: Self) -> Self {
        IlFormula::BoxN(level, Box::new(a))
    }
    fn try_rhd(a: Self, b: Self) -> Option<Self> {
        Some(IlFormula::Rhd(Box::new(a), Box::new(b)))
    }
    fn node(&self) -> Node<'_, Self> {
        match self {
            IlFormula::Bot => Node::Bot,
            IlFormula::Var(v) => Node::Var(v),
            IlFormula::Const(i) => Node::Const(*i),
            IlFormula::Implies(a, b) => Node::Implies(a, b),
            IlFormula::BoxN(n, a) => Node::BoxN(*n, a),
            IlFormula::Rhd(a, b) => Node::Rhd(a, b),
        }
    }
}

impl IlFormula {
    pub fn rhd(a: IlFormula, b: IlFormula) -> IlFormula {
        IlFormula::Rhd(Box::new(a), Box::new(b))
    }

    /// The formula without `▷`, if it has none.
    pub fn to_gl(&self) -> Option<Formula> {
        Some(match self {
            IlFormula::Bot => Formula::Bot,
            IlFormula::Var(v) => Formula::Var(v.clone()),
            IlFormula::Const(i) => Formula::Const(*i),
            IlFormula::Implies(a, b) => Formula::imp(a.to_gl()?, b.to_gl()?),
            IlFormula::BoxN(n, a) => Formula::boxn(*n, a.to_gl()?),
            IlFormula::Rhd(..) => return None,
        })
    }

    pub fn contains_rhd(&self) -> bool {
        match self {
            IlFormula::Rhd(..) => true,
            IlFormula::Implies(a, b) => a.contains_rhd() || b.contains_rhd(),
            IlFormula::BoxN(_, a) => a.contains_rhd(),
            _ => false,
        }
    }

    /// Modal depth where `A ▷ B` counts as two nested modalities over `B`
    /// and one over `A`, matching the `□(A → B ∨ ◇B)` reading.
    pub fn modal_depth(&self) -> usize {
        match self {
            IlFormula::Bot | IlFormula::Var(_) | IlFormula::Const(_) => 0,
            IlFormula::Implies(a, b) => a.modal_depth().max(b.modal_depth()),
            IlFormula::BoxN(_, a) => 1 + a.modal_depth(),
            IlFormula::Rhd(a, b) => 2 + a.modal_depth().max(b.modal_depth()),
        }
    }

    pub fn fragment_violation(&self, tag: FragmentTag) -> Option<String> {
        match (tag, self.to_gl()) {
            (FragmentTag::FullIL, _) => None,
            (_, None) => Some(format!("`|>` is not part of the {tag}")),
            (_, Some(f)) => f.fragment_violation(tag),
        }
    }
}

impl From<Formula> for IlFormula {
    fn from(f: Formula) -> Self {
        match f {
            Formula::Bot => IlFormula::Bot,
            Formula::Var(v) => IlFormula::Var(v),
            Formula::Const(i) => IlFormula::Const(i),
            Formula::Implies(a, b) => IlFormula::imp((*a).into(), (*b).into()),
            Formula::BoxN(n, a) => IlFormula::boxn(n, (*a).into()),
        }
    }
}

impl Formula {
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Bot | Formula::Var(_) | Formula::Const(_) => 0,
            Formula::Implies(a, b) => a.modal_depth().max(b.modal_depth()),
            Formula::BoxN(_, a) => 1 + a.modal_depth(),
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Bot | Formula::Var(_) | Formula::Const(_) => 1,
            Formula::Implies(a, b) => 1 + a.size() + b.size(),
            Formula::BoxN(_, a) => 1 + a.size(),
        }
    }

    /// All subformulas, `self` included.
    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_subformulas(&mut out);
        out
    }

    fn collect_subformulas(&self, out: &mut BTreeSet<Formula>) {
        if !out.insert(self.clone()) {
            return;
        }
        match self {
            Formula::Implies(a, b) => {
                a.collect_subformulas(out);
                b.collect_subformulas(out);
            }
            Formula::BoxN(_, a) => a.collect_subformulas(out),
            _ => {}
        }
    }

    /// Distinct subformulas of the form `[n]B`.
    pub fn box_subformulas(&self) -> Vec<Formula> {
        self.subformulas()
            .into_iter()
            .filter(|s| matches!(s, Formula::BoxN(..)))
            .collect()
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::Var(v) => {
                out.insert(Atom::Var(v.clone()));
            }
            Formula::Const(i) => {
                out.insert(Atom::Const(*i));
            }
            Formula::Implies(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            Formula::BoxN(_, a) => a.collect_atoms(out),
            Formula::Bot => {}
        }
    }

    pub fn max_level(&self) -> u32 {
        match self {
            Formula::Implies(a, b) => a.max_level().max(b.max_level()),
            Formula::BoxN(n, a) => (*n).max(a.max_level()),
            _ => 0,
        }
    }

    pub fn max_const(&self) -> u32 {
        match self {
            Formula::Const(i) => *i,
            Formula::Implies(a, b) => a.max_const().max(b.max_const()),
            Formula::BoxN(_, a) => a.max_const(),
            _ => 0,
        }
    }

    pub fn has_vars(&self) -> bool {
        match self {
            Formula::Var(_) => true,
            Formula::Implies(a, b) => a.has_vars() || b.has_vars(),
            Formula::BoxN(_, a) => a.has_vars(),
            _ => false,
        }
    }

    pub fn has_consts(&self) -> bool {
        self.max_const() > 0
    }

    /// Replaces variables according to `map`; unmapped variables stay.
    pub fn substitute(&self, map: &std::collections::BTreeMap<String, Formula>) -> Formula {
        match self {
            Formula::Var(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            Formula::Implies(a, b) => Formula::imp(a.substitute(map), b.substitute(map)),
            Formula::BoxN(n, a) => Formula::boxn(*n, a.substitute(map)),
            _ => self.clone(),
        }
    }

    /// `None` if the formula lies in the fragment, otherwise a reason.
    pub fn fragment_violation(&self, tag: FragmentTag) -> Option<String> {
        match tag {
            FragmentTag::FullGL | FragmentTag::FullIL => None,
            FragmentTag::ClosedB => {
                if self.has_vars() || self.has_consts() {
                    Some("closed formulas contain no variables or constants".into())
                } else if self.max_level() > 0 {
                    Some("only the level-0 box is allowed".into())
                } else {
                    None
                }
            }
            FragmentTag::ClosedD => {
                if self.has_vars() || self.has_consts() {
                    Some("closed formulas contain no variables or constants".into())
                } else {
                    None
                }
            }
            FragmentTag::Fn(n) => {
                if self.has_vars() {
                    Some("no propositional variables are allowed".into())
                } else if self.max_const() > n {
                    Some(format!("constant s{} exceeds s{n}", self.max_const()))
                } else if self.max_level() > 0 {
                    Some("only the level-0 box is allowed".into())
                } else {
                    None
                }
            }
        }
    }

    pub fn in_fragment(&self, tag: FragmentTag) -> bool {
        self.fragment_violation(tag).is_none()
    }

    /// `n` such that the formula is `□ⁿ⊥` (only level-0 boxes).
    pub fn as_box_tower(&self) -> Option<usize> {
        let mut k = 0;
        let mut cur = self;
        loop {
            match cur {
                Formula::Bot => return Some(k),
                Formula::BoxN(0, a) => {
                    k += 1;
                    cur = a;
                }
                _ => return None,
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::print(self))
    }
}

impl fmt::Display for IlFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::print(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::var("p")
    }
    fn q() -> Formula {
        Formula::var("q")
    }

    #[test]
    fn depth_of_defining_formulas() {
        assert_eq!(Formula::Bot.modal_depth(), 0);
        assert_eq!(Formula::boxed(Formula::Bot).modal_depth(), 1);
        // Structural recursion: ◇ⁿ⊤ has depth n, □ⁿ⁺¹⊥ has depth n+1.
        for n in 0..6 {
            let d = Formula::and(
                Formula::dia_iter(n, Formula::top()),
                Formula::box_iter(n + 1, Formula::Bot),
            );
            assert_eq!(d.modal_depth(), n + 1);
        }
    }

    #[test]
    fn subformulas_small_cases() {
        let f = Formula::boxed(Formula::Bot);
        let expected: BTreeSet<_> = [f.clone(), Formula::Bot].into_iter().collect();
        assert_eq!(f.subformulas(), expected);

        let g = Formula::imp(p(), q());
        let expected: BTreeSet<_> = [g.clone(), p(), q()].into_iter().collect();
        assert_eq!(g.subformulas(), expected);
    }

    #[test]
    fn subformulas_of_q2_instance() {
        let q2 =
            instantiate_schema(Schema::Q2, &SchemaArgs::from([("A", p()), ("B", q())])).unwrap();
        let subs = q2.subformulas();
        let dia_p = Formula::dia(p());
        let box_q = Formula::boxed(q());
        for must in [
            Formula::dia(Formula::and(dia_p.clone(), box_q.clone())),
            Formula::boxed(Formula::or(dia_p.clone(), q())),
            dia_p,
            box_q,
            p(),
            q(),
            Formula::Bot,
        ] {
            assert!(subs.contains(&must), "missing {must}");
        }
        assert!(subs.len() <= q2.size());
    }

    #[test]
    fn lob_adds_two_to_depth() {
        let a = Formula::boxed(Formula::dia(p()));
        let l = instantiate_schema(Schema::Lob, &SchemaArgs::from([("A", a.clone())])).unwrap();
        assert_eq!(l.modal_depth(), a.modal_depth() + 2);
    }

    #[test]
    fn fragment_membership() {
        let b = Formula::boxed(Formula::imp(Formula::boxed(Formula::Bot), Formula::Bot));
        assert!(b.in_fragment(FragmentTag::ClosedB));
        assert!(b.in_fragment(FragmentTag::ClosedD));
        assert!(b.in_fragment(FragmentTag::Fn(0)));
        let d = Formula::boxn(2, Formula::Bot);
        assert!(!d.in_fragment(FragmentTag::ClosedB));
        assert!(d.in_fragment(FragmentTag::ClosedD));
        let s = Formula::boxed(Formula::cons(2));
        assert!(!s.in_fragment(FragmentTag::Fn(1)));
        assert!(s.in_fragment(FragmentTag::Fn(2)));
        assert!(!p().in_fragment(FragmentTag::Fn(3)));
        assert!(p().in_fragment(FragmentTag::FullGL));
    }

    #[test]
    fn box_tower_recognition() {
        assert_eq!(Formula::box_iter(3, Formula::Bot).as_box_tower(), Some(3));
        assert_eq!(Formula::Bot.as_box_tower(), Some(0));
        assert_eq!(Formula::top().as_box_tower(), None);
    }

    #[test]
    fn il_depth_bounds_translation_shape() {
        let f = IlFormula::rhd(IlFormula::var("p"), IlFormula::boxed(IlFormula::var("q")));
        assert_eq!(f.modal_depth(), 3);
        assert!(f.to_gl().is_none());
        assert!(IlFormula::from(p()).to_gl().is_some());
    }
}
