//! Ordinals below ε₀ in hereditary Cantor normal form.
//!
//! An ordinal `ω^λₖ + … + ω^λ₁` is stored as the weakly decreasing list of
//! its exponents `[λₖ, …, λ₁]`; coefficients are repetitions. Only
//! comparison and the end exponent `e(α)` are provided.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    exps: Vec<Ordinal>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("ordinal syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("exponents must be weakly decreasing: `{0}` is not in Cantor normal form")]
    NotNormal(String),
}

impl Ordinal {
    pub fn zero() -> Ordinal {
        Ordinal { exps: Vec::new() }
    }

    pub fn nat(k: usize) -> Ordinal {
        Ordinal {
            exps: vec![Ordinal::zero(); k],
        }
    }

    pub fn one() -> Ordinal {
        Ordinal::nat(1)
    }

    /// `ω^e`
    pub fn omega_pow(e: Ordinal) -> Ordinal {
        Ordinal { exps: vec![e] }
    }

    pub fn omega() -> Ordinal {
        Ordinal::omega_pow(Ordinal::one())
    }

    /// Builds from an exponent list, rejecting lists that are not weakly
    /// decreasing.
    pub fn from_exponents(exps: Vec<Ordinal>) -> Result<Ordinal, OrdinalError> {
        if exps.windows(2).any(|w| w[0] < w[1]) {
            let shown = Ordinal { exps: exps.clone() };
            return Err(OrdinalError::NotNormal(shown.to_string()));
        }
        Ok(Ordinal { exps })
    }

    /// The value of the written sum `ω^e₁ + ω^e₂ + …` in normal form: a term
    /// followed by a strictly larger one is absorbed.
    pub fn from_sum(exps: Vec<Ordinal>) -> Ordinal {
        let mut out: Vec<Ordinal> = Vec::with_capacity(exps.len());
        for e in exps {
            while out.last().is_some_and(|last| *last < e) {
                out.pop();
            }
            out.push(e);
        }
        Ordinal { exps: out }
    }

    pub fn exponents(&self) -> &[Ordinal] {
        &self.exps
    }

    pub fn is_zero(&self) -> bool {
        self.exps.is_empty()
    }

    /// `e(α)`: the last, smallest exponent of the normal form; `e(0) = 0`.
    pub fn end_exponent(&self) -> Ordinal {
        self.exps.last().cloned().unwrap_or_default()
    }

    /// The natural number this ordinal denotes, if finite.
    pub fn as_nat(&self) -> Option<usize> {
        self.exps
            .iter()
            .all(Ordinal::is_zero)
            .then_some(self.exps.len())
    }

    /// Hereditary size: every `ω` symbol counts once, including those inside
    /// exponents; `size(0) = 0`, `size(n) = n`, `size(ω) = 2`.
    pub fn size(&self) -> usize {
        self.exps.iter().map(|e| 1 + e.size()).sum()
    }

    /// All ordinals of size at most `bound`, in increasing order.
    pub fn all_up_to_size(bound: usize) -> Vec<Ordinal> {
        if bound == 0 {
            return vec![Ordinal::zero()];
        }
        let mut candidates = Ordinal::all_up_to_size(bound - 1);
        candidates.reverse();
        let mut out = Vec::new();
        let mut stack = Vec::new();
        fn extend(
            cands: &[Ordinal],
            from: usize,
            budget: usize,
            stack: &mut Vec<Ordinal>,
            out: &mut Vec<Ordinal>,
        ) {
            out.push(Ordinal {
                exps: stack.clone(),
            });
            for (k, e) in cands.iter().enumerate().skip(from) {
                let cost = 1 + e.size();
                if cost <= budget {
                    stack.push(e.clone());
                    extend(cands, k, budget - cost, stack, out);
                    stack.pop();
                }
            }
        }
        extend(&candidates, 0, bound, &mut stack, &mut out);
        out.sort();
        out.dedup();
        out
    }

    pub fn parse(text: &str) -> Result<Ordinal, OrdinalError> {
        Self::parse_with(text, false)
    }

    /// With `normalize`, out-of-order sums are evaluated instead of rejected.
    pub fn parse_with(text: &str, normalize: bool) -> Result<Ordinal, OrdinalError> {
        let mut p = OrdParser {
            src: text,
            at: 0,
            normalize,
        };
        let o = p.sum()?;
        p.skip_ws();
        if p.at != text.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(o)
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.exps.iter().zip(&other.exps) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                non_eq => return non_eq,
            }
        }
        self.exps.len().cmp(&other.exps.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.exps.len() {
            let e = &self.exps[i];
            let mut k = 1;
            while i + k < self.exps.len() && self.exps[i + k] == *e {
                k += 1;
            }
            i += k;
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if e.is_zero() {
                write!(f, "{k}")?;
                continue;
            }
            write!(f, "w")?;
            match e.as_nat() {
                Some(1) => {}
                Some(n) => write!(f, "^{n}")?,
                None if e.exps.len() == 1 => write!(f, "^{e}")?,
                None => write!(f, "^({e})")?,
            }
            if k > 1 {
                write!(f, "*{k}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Ordinal::parse(&text).map_err(serde::de::Error::custom)
    }
}

struct OrdParser<'a> {
    src: &'a str,
    at: usize,
    normalize: bool,
}

impl OrdParser<'_> {
    fn err(&self, msg: &str) -> OrdinalError {
        OrdinalError::Syntax {
            pos: self.at,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src[self.at..].starts_with(|c: char| c.is_whitespace()) {
            self.at += self.src[self.at..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.at..].starts_with(s) {
            self.at += s.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Option<usize> {
        self.skip_ws();
        let digits = self.src[self.at..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        if digits == 0 {
            return None;
        }
        let n = self.src[self.at..self.at + digits].parse().ok()?;
        self.at += digits;
        Some(n)
    }

    fn sum(&mut self) -> Result<Ordinal, OrdinalError> {
        let start = self.at;
        let mut exps = self.term()?;
        while self.eat("+") {
            exps.extend(self.term()?);
        }
        if self.normalize {
            Ok(Ordinal::from_sum(exps))
        } else {
            Ordinal::from_exponents(exps).map_err(|e| match e {
                OrdinalError::NotNormal(_) => {
                    OrdinalError::NotNormal(self.src[start..self.at].trim().to_string())
                }
                other => other,
            })
        }
    }

    fn term(&mut self) -> Result<Vec<Ordinal>, OrdinalError> {
        if let Some(n) = self.number() {
            return Ok(vec![Ordinal::zero(); n]);
        }
        if !self.eat("w") {
            return Err(self.err("expected a number or `w`"));
        }
        let e = if self.eat("^") {
            self.exponent()?
        } else {
            Ordinal::one()
        };
        let k = if self.eat("*") || self.eat("·") {
            self.number()
                .ok_or_else(|| self.err("expected a coefficient"))?
        } else {
            1
        };
        Ok(vec![e; k])
    }

    fn exponent(&mut self) -> Result<Ordinal, OrdinalError> {
        if let Some(n) = self.number() {
            return Ok(Ordinal::nat(n));
        }
        if self.eat("(") {
            let inner = self.sum()?;
            if !self.eat(")") {
                return Err(self.err("expected `)`"));
            }
            return Ok(inner);
        }
        if self.eat("w") {
            let e = if self.eat("^") {
                self.exponent()?
            } else {
                Ordinal::one()
            };
            return Ok(Ordinal::omega_pow(e));
        }
        Err(self.err("expected an exponent"))
    }
}
