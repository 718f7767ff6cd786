//! ASCII printer. Output always re-parses to the same AST.

use super::{Node, Syntax};

const IMP: u8 = 1;
const RHD: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const PRE: u8 = 5;
const ATOM: u8 = 6;

fn as_not<F: Syntax>(f: &F) -> Option<&F> {
    match f.node() {
        Node::Implies(a, b) if matches!(b.node(), Node::Bot) => Some(a),
        _ => None,
    }
}

fn as_and<F: Syntax>(f: &F) -> Option<(&F, &F)> {
    match as_not(f)?.node() {
        Node::Implies(a, nb) => Some((a, as_not(nb)?)),
        _ => None,
    }
}

fn as_dia<F: Syntax>(f: &F) -> Option<(u32, &F)> {
    match as_not(f)?.node() {
        Node::BoxN(n, na) => Some((n, as_not(na)?)),
        _ => None,
    }
}

fn as_boxplus<F: Syntax>(f: &F) -> Option<&F> {
    let (a, b) = as_and(f)?;
    match b.node() {
        Node::BoxN(0, inner) if inner == a => Some(a),
        _ => None,
    }
}

fn as_iff<F: Syntax>(f: &F) -> Option<(&F, &F)> {
    let (l, r) = as_and(f)?;
    match (l.node(), r.node()) {
        (Node::Implies(a, b), Node::Implies(b2, a2)) if a == a2 && b == b2 => Some((a, b)),
        _ => None,
    }
}

fn is_top<F: Syntax>(f: &F) -> bool {
    matches!(as_not(f).map(|a| a.node()), Some(Node::Bot))
}

fn wrap<F: Syntax>(f: &F, min: u8) -> String {
    let (s, level) = raw(f);
    if level < min {
        format!("({s})")
    } else {
        s
    }
}

fn box_token(n: u32) -> String {
    if n == 0 {
        "[]".into()
    } else {
        format!("[{n}]")
    }
}

fn dia_token(n: u32) -> String {
    if n == 0 {
        "<>".into()
    } else {
        format!("<{n}>")
    }
}

fn raw<F: Syntax>(f: &F) -> (String, u8) {
    if is_top(f) {
        return ("top".into(), ATOM);
    }
    if let Some(a) = as_boxplus(f) {
        return (format!("boxplus {}", wrap(a, PRE)), PRE);
    }
    if let Some((a, b)) = as_iff(f) {
        return (format!("{} <-> {}", wrap(a, RHD), wrap(b, IMP)), IMP);
    }
    if let Some((a, b)) = as_and(f) {
        return (format!("{} & {}", wrap(a, AND), wrap(b, PRE)), AND);
    }
    if let Some((n, a)) = as_dia(f) {
        return (format!("{}{}", dia_token(n), wrap(a, PRE)), PRE);
    }
    if let Some(a) = as_not(f) {
        return (format!("~{}", wrap(a, PRE)), PRE);
    }
    match f.node() {
        Node::Bot => ("bot".into(), ATOM),
        Node::Var(v) => (v.to_string(), ATOM),
        Node::Const(i) => (format!("s{i}"), ATOM),
        Node::BoxN(n, a) => (format!("{}{}", box_token(n), wrap(a, PRE)), PRE),
        Node::Rhd(a, b) => (format!("{} |> {}", wrap(a, OR), wrap(b, OR)), RHD),
        Node::Implies(a, b) => {
            let sugared = is_top(a) || as_and(a).is_some() || as_dia(a).is_some();
            if let (false, Some(na)) = (sugared, as_not(a)) {
                return (format!("{} | {}", wrap(na, OR), wrap(b, AND)), OR);
            }
            (format!("{} -> {}", wrap(a, RHD), wrap(b, IMP)), IMP)
        }
    }
}

pub(crate) fn print<F: Syntax>(f: &F) -> String {
    raw(f).0
}

#[cfg(test)]
mod tests {
    use crate::formula::{parse_formula, parse_il, Formula, IlFormula, Syntax};
    use proptest::prelude::*;

    fn arb_formula() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            Just(Formula::Bot),
            prop::sample::select(vec!["p", "q", "r", "v1"]).prop_map(Formula::var),
            (1u32..4).prop_map(Formula::cons),
        ];
        leaf.prop_recursive(5, 40, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
                (0u32..3, inner.clone()).prop_map(|(n, a)| Formula::boxn(n, a)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                inner.clone().prop_map(Formula::dia),
                inner.clone().prop_map(Formula::boxplus),
                inner.prop_map(Formula::not),
            ]
        })
    }

    fn arb_il() -> impl Strategy<Value = IlFormula> {
        let leaf = prop_oneof![
            Just(IlFormula::Bot),
            prop::sample::select(vec!["p", "q"]).prop_map(IlFormula::var),
        ];
        leaf.prop_recursive(5, 40, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| IlFormula::imp(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| IlFormula::rhd(a, b)),
                inner.clone().prop_map(IlFormula::boxed),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| IlFormula::iff(a, b)),
                inner.prop_map(IlFormula::dia),
            ]
        })
    }

    proptest! {
        #[test]
        fn parse_print_round_trip(f in arb_formula()) {
            let text = f.to_string();
            prop_assert_eq!(parse_formula(&text).unwrap(), f, "{}", text);
        }

        #[test]
        fn il_round_trip(f in arb_il()) {
            let text = f.to_string();
            prop_assert_eq!(parse_il(&text).unwrap(), f, "{}", text);
        }
    }

    #[test]
    fn sugar_is_recovered() {
        let cases = [
            "[]([]p -> q) | []((q & []q) -> p)",
            "<>(<>p & []q) -> [](<>p | q)",
            "boxplus p -> ~[2]s1",
            "p <-> q",
            "top",
        ];
        let expect = [
            "[]([]p -> q) | [](boxplus q -> p)",
            "<>(<>p & []q) -> [](<>p | q)",
            "boxplus p -> ~[2]s1",
            "p <-> q",
            "top",
        ];
        for (c, e) in cases.iter().zip(expect) {
            assert_eq!(parse_formula(c).unwrap().to_string(), e);
        }
        let il = parse_il("p |> q -> p |> q & []~p").unwrap();
        assert_eq!(il.to_string(), "p |> q -> p |> q & []~p");
    }
}
