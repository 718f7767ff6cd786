use thiserror::Error;

use super::{const_index, Formula, FragmentTag, IlFormula, Syntax};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("formula is outside the {tag}: {reason}")]
    Fragment { tag: FragmentTag, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Bot,
    Top,
    BoxPlus,
    Ident(String),
    Not,
    And,
    Or,
    Imp,
    Iff,
    Rhd,
    Box(u32),
    Dia(u32),
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::End => "end of input".into(),
            other => format!("{other:?}"),
        }
    }
}

fn syntax(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos,
        msg: msg.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let rest = &text[i..];
        let tok = if rest.starts_with("<->") {
            i += 3;
            Tok::Iff
        } else if rest.starts_with("->") {
            i += 2;
            Tok::Imp
        } else if rest.starts_with("|>") {
            i += 2;
            Tok::Rhd
        } else if rest.starts_with("[]") {
            i += 2;
            Tok::Box(0)
        } else if rest.starts_with("<>") {
            i += 2;
            Tok::Dia(0)
        } else if c == b'[' || c == b'<' {
            let close = if c == b'[' { b']' } else { b'>' };
            let mut j = i + 1;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if j == i + 1 || j >= bytes.len() || bytes[j] != close {
                return Err(syntax(start, "expected a modality like `[2]` or `<2>`"));
            }
            let level: u32 = text[i + 1..j]
                .parse()
                .map_err(|_| syntax(start, "modality level out of range"))?;
            i = j + 1;
            if c == b'[' {
                Tok::Box(level)
            } else {
                Tok::Dia(level)
            }
        } else if c == b'~' {
            i += 1;
            Tok::Not
        } else if c == b'&' {
            i += 1;
            Tok::And
        } else if c == b'|' {
            i += 1;
            Tok::Or
        } else if c == b'(' {
            i += 1;
            Tok::LParen
        } else if c == b')' {
            i += 1;
            Tok::RParen
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let mut j = i;
            while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                j += 1;
            }
            let word = &text[i..j];
            i = j;
            match word {
                "bot" => Tok::Bot,
                "top" => Tok::Top,
                "boxplus" => Tok::BoxPlus,
                _ => Tok::Ident(word.to_string()),
            }
        } else {
            return Err(syntax(
                start,
                format!("unexpected character `{}`", c as char),
            ));
        };
        out.push((start, tok));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }
    fn pos(&self) -> usize {
        self.toks[self.at].0
    }
    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    // imp := rhd (('->' | '<->') imp)?
    fn imp<F: Syntax>(&mut self) -> Result<F, ParseError> {
        let lhs = self.rhd()?;
        match self.peek() {
            Tok::Imp => {
                self.bump();
                Ok(F::imp(lhs, self.imp()?))
            }
            Tok::Iff => {
                self.bump();
                Ok(F::iff(lhs, self.imp()?))
            }
            _ => Ok(lhs),
        }
    }

    // rhd := or ('|>' or)?
    fn rhd<F: Syntax>(&mut self) -> Result<F, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Rhd {
            let pos = self.pos();
            self.bump();
            let rhs = self.or()?;
            return F::try_rhd(lhs, rhs)
                .ok_or_else(|| syntax(pos, "`|>` is only allowed in interpretability formulas"));
        }
        Ok(lhs)
    }

    fn or<F: Syntax>(&mut self) -> Result<F, ParseError> {
        let mut acc = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            acc = F::or(acc, self.and()?);
        }
        Ok(acc)
    }

    fn and<F: Syntax>(&mut self) -> Result<F, ParseError> {
        let mut acc = self.prefix()?;
        while *self.peek() == Tok::And {
            self.bump();
            acc = F::and(acc, self.prefix()?);
        }
        Ok(acc)
    }

    fn prefix<F: Syntax>(&mut self) -> Result<F, ParseError> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(F::not(self.prefix()?))
            }
            Tok::Box(n) => {
                self.bump();
                Ok(F::boxn(n, self.prefix()?))
            }
            Tok::Dia(n) => {
                self.bump();
                Ok(F::dian(n, self.prefix()?))
            }
            Tok::BoxPlus => {
                self.bump();
                Ok(F::boxplus(self.prefix()?))
            }
            _ => self.atom(),
        }
    }

    fn atom<F: Syntax>(&mut self) -> Result<F, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Bot => Ok(F::bot()),
            Tok::Top => Ok(F::top()),
            Tok::Ident(name) => {
                if let Some(i) = const_index(&name) {
                    if i == 0 {
                        return Err(syntax(pos, "constant indices start at s1"));
                    }
                    Ok(F::cons(i))
                } else if name.starts_with('s')
                    && name[1..].bytes().all(|b| b.is_ascii_digit())
                    && name.len() > 1
                {
                    Err(syntax(
                        pos,
                        format!("constant index out of range in `{name}`"),
                    ))
                } else {
                    Ok(F::var(&name))
                }
            }
            Tok::LParen => {
                let inner = self.imp()?;
                let close = self.pos();
                match self.bump() {
                    Tok::RParen => Ok(inner),
                    other => Err(syntax(
                        close,
                        format!("expected `)`, found {}", other.describe()),
                    )),
                }
            }
            other => Err(syntax(
                pos,
                format!("expected a formula, found {}", other.describe()),
            )),
        }
    }
}

fn parse_generic<F: Syntax>(text: &str) -> Result<F, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0 };
    let f = p.imp()?;
    if *p.peek() != Tok::End {
        return Err(syntax(
            p.pos(),
            format!("unexpected {}", p.peek().describe()),
        ));
    }
    Ok(f)
}

/// Parses an interpretability formula (the most general language).
pub fn parse_il(text: &str) -> Result<IlFormula, ParseError> {
    parse_generic(text)
}

/// Parses a formula without `▷`.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    parse_generic(text)
}

/// Parses and checks fragment membership.
pub fn parse_in(text: &str, tag: FragmentTag) -> Result<Formula, ParseError> {
    let f = parse_formula(text)?;
    match f.fragment_violation(tag) {
        None => Ok(f),
        Some(reason) => Err(ParseError::Fragment { tag, reason }),
    }
}

/// Parses in any language: `FullIL` yields formulas that may contain `▷`.
pub fn parse(text: &str, tag: FragmentTag) -> Result<IlFormula, ParseError> {
    let f = parse_il(text)?;
    match f.fragment_violation(tag) {
        None => Ok(f),
        Some(reason) => Err(ParseError::Fragment { tag, reason }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{instantiate_schema, Schema, SchemaArgs};

    #[test]
    fn lob_instance() {
        let f = parse_formula("[]([]p -> p) -> []p").unwrap();
        let l =
            instantiate_schema(Schema::Lob, &SchemaArgs::from([("A", Formula::var("p"))])).unwrap();
        assert_eq!(f, l);
    }

    #[test]
    fn bot_is_atomic() {
        assert_eq!(parse_formula("bot").unwrap(), Formula::Bot);
        assert_eq!(parse_formula("top").unwrap(), Formula::top());
    }

    #[test]
    fn rhd_binds_tighter_than_implication() {
        let f = parse_il("p |> q -> r").unwrap();
        let expected = IlFormula::imp(
            IlFormula::rhd(IlFormula::var("p"), IlFormula::var("q")),
            IlFormula::var("r"),
        );
        assert_eq!(f, expected);
        let g = parse_il("p & []r |> q | r").unwrap();
        let expected = IlFormula::rhd(
            IlFormula::and(IlFormula::var("p"), IlFormula::boxed(IlFormula::var("r"))),
            IlFormula::or(IlFormula::var("q"), IlFormula::var("r")),
        );
        assert_eq!(g, expected);
    }

    #[test]
    fn implication_is_right_associative() {
        let f = parse_formula("p -> q -> r").unwrap();
        assert_eq!(
            f,
            Formula::imp(
                Formula::var("p"),
                Formula::imp(Formula::var("q"), Formula::var("r"))
            )
        );
    }

    #[test]
    fn indexed_modalities_and_constants() {
        let f = parse_formula("[2]s3 -> <1>v12").unwrap();
        assert_eq!(
            f,
            Formula::imp(
                Formula::boxn(2, Formula::cons(3)),
                Formula::dian(1, Formula::var("v12"))
            )
        );
        assert_eq!(
            parse_formula("boxplus p").unwrap(),
            Formula::boxplus(Formula::var("p"))
        );
    }

    #[test]
    fn errors_carry_positions() {
        match parse_formula("p & (q -> ") {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 10),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_formula("p |> q"),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
        assert!(parse_formula("s0").is_err());
        assert!(parse_formula("p q").is_err());
        assert!(parse_formula("[x]p").is_err());
        assert!(parse_il("p |> q |> r").is_err());
    }

    #[test]
    fn fragment_violations() {
        assert!(matches!(
            parse_in("[]p", FragmentTag::ClosedB),
            Err(ParseError::Fragment { .. })
        ));
        assert!(parse_in("[]s1 -> s1", FragmentTag::Fn(1)).is_ok());
        assert!(parse_in("[1]bot", FragmentTag::ClosedD).is_ok());
        assert!(parse("p |> q", FragmentTag::FullGL).is_err());
        assert!(parse("p |> q", FragmentTag::FullIL).is_ok());
    }
}
