//! JSON and DOT formats for frames and models.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use super::{Frame, KripkeError, Model};
use crate::formula::Atom;

/// World ids in JSON may be numbers or strings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WorldId {
    Num(u64),
    Str(String),
}

impl fmt::Display for WorldId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WorldId::Num(n) => write!(f, "{n}"),
            WorldId::Str(s) => f.write_str(s),
        }
    }
}

impl From<&str> for WorldId {
    fn from(s: &str) -> WorldId {
        match s.parse::<u64>() {
            Ok(n) if n.to_string() == s => WorldId::Num(n),
            _ => WorldId::Str(s.to_string()),
        }
    }
}

/// `{"worlds": [...], "rel": [[a, b], ...], "val": {"p": [...]}}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameJson {
    pub worlds: Vec<WorldId>,
    pub rel: Vec<(WorldId, WorldId)>,
    #[serde(default)]
    pub val: BTreeMap<String, Vec<WorldId>>,
}

impl FrameJson {
    pub fn parse(text: &str) -> Result<FrameJson, KripkeError> {
        serde_json::from_str(text).map_err(|e| KripkeError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn to_frame(&self) -> Result<Frame, KripkeError> {
        let names: Vec<String> = self.worlds.iter().map(|w| w.to_string()).collect();
        let provisional = Frame::new(names, &[])?;
        let edges = self
            .rel
            .iter()
            .map(|(a, b)| {
                Ok((
                    provisional.index_of(&a.to_string())?,
                    provisional.index_of(&b.to_string())?,
                ))
            })
            .collect::<Result<Vec<_>, KripkeError>>()?;
        Frame::new(provisional.names().to_vec(), &edges)
    }

    pub fn to_model(&self) -> Result<Model, KripkeError> {
        let frame = self.to_frame()?;
        let mut val = BTreeMap::new();
        for (atom, ws) in &self.val {
            let set = ws
                .iter()
                .map(|w| frame.index_of(&w.to_string()))
                .collect::<Result<BTreeSet<_>, _>>()?;
            val.insert(Atom::from_name(atom), set);
        }
        Model::with_valuation(frame, val)
    }

    pub fn from_frame(frame: &Frame) -> FrameJson {
        FrameJson {
            worlds: frame
                .names()
                .iter()
                .map(|n| WorldId::from(n.as_str()))
                .collect(),
            rel: frame
                .edges()
                .into_iter()
                .map(|(a, b)| (WorldId::from(frame.name(a)), WorldId::from(frame.name(b))))
                .collect(),
            val: BTreeMap::new(),
        }
    }

    pub fn from_model(m: &Model) -> FrameJson {
        let mut out = FrameJson::from_frame(&m.frame);
        out.val = m
            .valuation()
            .iter()
            .map(|(a, ws)| {
                (
                    a.to_string(),
                    ws.iter().map(|&w| WorldId::from(m.frame.name(w))).collect(),
                )
            })
            .collect();
        out
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn frame_to_dot(frame: &Frame) -> String {
    model_to_dot(&Model::new(frame.clone()), None)
}

/// DOT rendering; `highlight` is drawn as a double circle. Node labels list
/// the atoms true at the world.
pub fn model_to_dot(m: &Model, highlight: Option<usize>) -> String {
    let fr = &m.frame;
    let mut out = String::from("digraph model {\n  rankdir=BT;\n");
    for w in 0..fr.len() {
        let atoms: Vec<String> = m
            .valuation()
            .iter()
            .filter(|(_, ws)| ws.contains(&w))
            .map(|(a, _)| a.to_string())
            .collect();
        let label = if atoms.is_empty() {
            fr.name(w).to_string()
        } else {
            format!("{}: {}", fr.name(w), atoms.join(", "))
        };
        let shape = if highlight == Some(w) {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(
            out,
            "  {} [label={}, shape={}];",
            quote(fr.name(w)),
            quote(&label),
            shape
        );
    }
    for (a, b) in fr.edges() {
        let _ = writeln!(out, "  {} -> {};", quote(fr.name(a)), quote(fr.name(b)));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let text = r#"{"worlds":["r",1,2],"rel":[["r",1],["r",2]],"val":{"p":[1],"s1":["r"]}}"#;
        let j = FrameJson::parse(text).unwrap();
        let m = j.to_model().unwrap();
        assert_eq!(m.frame.len(), 3);
        assert!(m.holds_atom(&Atom::Var("p".into()), 1));
        assert!(m.holds_atom(&Atom::Const(1), 0));
        let back = FrameJson::from_model(&m);
        assert_eq!(back, j);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn json_errors() {
        assert!(FrameJson::parse("{").is_err());
        let j = FrameJson::parse(r#"{"worlds":[0],"rel":[[0,1]]}"#).unwrap();
        assert!(matches!(j.to_frame(), Err(KripkeError::UnknownWorld(_))));
    }

    #[test]
    fn dot_marks_world() {
        let mut m = Model::new(Frame::linear(2));
        m.set(Atom::Var("p".into()), [0]);
        let dot = model_to_dot(&m, Some(1));
        assert!(dot.contains("\"1\" [label=\"1\", shape=doublecircle];"));
        assert!(dot.contains("\"0\" [label=\"0: p\", shape=circle];"));
        assert!(dot.contains("\"1\" -> \"0\";"));
    }
}
