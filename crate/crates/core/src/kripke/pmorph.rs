//! P-morphisms and the recursive map from the two-column frame 𝔊₁ onto
//! rooted frames of class C.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::{frame_class, Frame, KripkeError};

/// A point `⟨m,i⟩` of 𝔊₁: row `m`, column `i ∈ {0,1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct G1Point {
    pub m: usize,
    pub i: usize,
}

impl fmt::Display for G1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{}>", self.m, self.i)
    }
}

/// The subframe of 𝔊₁ generated by `p`: `p` itself (index 0) followed by
/// both columns of every lower row, rows descending.
pub fn g1_generated_frame(p: G1Point) -> (Frame, Vec<G1Point>) {
    let mut points = vec![p];
    for m in (0..p.m).rev() {
        points.push(G1Point { m, i: 0 });
        points.push(G1Point { m, i: 1 });
    }
    let mut frame = Frame::from_fn(points.len(), |a, b| points[b].m < points[a].m);
    frame.rename(points.iter().map(|q| q.to_string()).collect());
    (frame, points)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PMorphism {
    pub source: Frame,
    pub target: Frame,
    pub map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PMorphismFailure {
    #[error("map has {got} entries for {expected} source worlds or points outside the target")]
    NotTotal { expected: usize, got: usize },
    #[error("forth fails: {x} R {y} but their images are unrelated")]
    Forth { x: String, y: String },
    #[error("back fails: f({x}) R {target} but no successor of {x} maps to {target}")]
    Back { x: String, target: String },
}

impl PMorphism {
    /// Forth and back conditions, by enumeration.
    pub fn verify(&self) -> Result<(), PMorphismFailure> {
        let (src, tgt) = (&self.source, &self.target);
        if self.map.len() != src.len() || self.map.iter().any(|&t| t >= tgt.len()) {
            return Err(PMorphismFailure::NotTotal {
                expected: src.len(),
                got: self.map.len(),
            });
        }
        for x in 0..src.len() {
            for y in src.successors(x) {
                if !tgt.related(self.map[x], self.map[y]) {
                    return Err(PMorphismFailure::Forth {
                        x: src.name(x).into(),
                        y: src.name(y).into(),
                    });
                }
            }
            for t in tgt.successors(self.map[x]) {
                if !src.successors(x).any(|y| self.map[y] == t) {
                    return Err(PMorphismFailure::Back {
                        x: src.name(x).into(),
                        target: tgt.name(t).into(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.verify().is_ok()
    }

    pub fn is_surjective(&self) -> bool {
        let hit: BTreeSet<usize> = self.map.iter().copied().collect();
        hit.len() == self.target.len()
    }
}

type G1Map = BTreeMap<G1Point, usize>;

/// Recursion on the worlds `active` (the subframe generated by `x`).
fn construct(
    fr: &Frame,
    active: &BTreeSet<usize>,
    x: usize,
) -> Result<(G1Point, G1Map), KripkeError> {
    let succ: Vec<usize> = fr.successors(x).filter(|w| active.contains(w)).collect();
    let immediate: Vec<usize> = succ
        .iter()
        .copied()
        .filter(|&y| !succ.iter().any(|&z| fr.related(z, y)))
        .collect();
    match immediate.len() {
        0 => Ok((
            G1Point { m: 0, i: 0 },
            BTreeMap::from([(G1Point { m: 0, i: 0 }, x)]),
        )),
        1 => {
            let y = immediate[0];
            let below: BTreeSet<usize> = fr
                .reachable_from(y)
                .into_iter()
                .filter(|w| active.contains(w))
                .collect();
            let (p, mut f) = construct(fr, &below, y)?;
            f.insert(G1Point { m: p.m + 1, i: p.i }, x);
            f.insert(G1Point { m: p.m, i: 1 - p.i }, y);
            Ok((G1Point { m: p.m + 1, i: p.i }, f))
        }
        2 => {
            let leaves: Vec<usize> = active
                .iter()
                .copied()
                .filter(|&w| !fr.successors(w).any(|v| active.contains(&v)))
                .collect();
            if leaves.is_empty() || leaves.len() > 2 {
                return Err(KripkeError::NotInClass(format!(
                    "{} maximal points below `{}`",
                    leaves.len(),
                    fr.name(x)
                )));
            }
            let rest: BTreeSet<usize> = active
                .iter()
                .copied()
                .filter(|w| !leaves.contains(w))
                .collect();
            let (p, f) = construct(fr, &rest, x)?;
            let mut shifted: G1Map = f
                .into_iter()
                .map(|(q, w)| (G1Point { m: q.m + 1, i: q.i }, w))
                .collect();
            shifted.insert(G1Point { m: 0, i: 0 }, leaves[0]);
            shifted.insert(G1Point { m: 0, i: 1 }, *leaves.last().expect("non-empty"));
            Ok((G1Point { m: p.m + 1, i: p.i }, shifted))
        }
        k => Err(KripkeError::NotInClass(format!(
            "`{}` has {k} immediate successors",
            fr.name(x)
        ))),
    }
}

/// A point `⟨m,i⟩` of 𝔊₁ and a verified p-morphism from the subframe it
/// generates onto the subframe of `target` generated by `x`.
pub fn build_pmorphism_from_g1(
    target: &Frame,
    x: usize,
) -> Result<(G1Point, PMorphism), KripkeError> {
    if x >= target.len() {
        return Err(KripkeError::UnknownWorld(x.to_string()));
    }
    let (sub, _) = target.generated_subframe(x);
    let report = frame_class(&sub);
    if !report.in_c() {
        return Err(KripkeError::NotInClass(format!("{report:?}")));
    }
    // The generated subframe lists worlds in index order; find x within it.
    let root = sub.index_of(target.name(x))?;
    let all: BTreeSet<usize> = (0..sub.len()).collect();
    let (point, f) = construct(&sub, &all, root)?;
    let (source, points) = g1_generated_frame(point);
    let map = points
        .iter()
        .map(|q| {
            f.get(q)
                .copied()
                .ok_or_else(|| KripkeError::ConstructionFailed(format!("point {q} left unmapped")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let pm = PMorphism {
        source,
        target: sub,
        map,
    };
    pm.verify()
        .map_err(|e| KripkeError::ConstructionFailed(e.to_string()))?;
    if !pm.is_surjective() {
        return Err(KripkeError::ConstructionFailed("map is not onto".into()));
    }
    Ok((point, pm))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(ws: &[&str]) -> Vec<String> {
        ws.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn identity_is_pmorphism() {
        let fr = Frame::from_fn(4, |a, b| a < b);
        let pm = PMorphism {
            source: fr.clone(),
            target: fr,
            map: vec![0, 1, 2, 3],
        };
        assert!(pm.is_valid());
    }

    #[test]
    fn collapsing_a_chain_to_a_point() {
        let chain = Frame::linear(2);
        // Target with a loop: forth holds, back fails at the bottom world.
        let looped = Frame::new(names(&["t"]), &[(0, 0)]).unwrap();
        let pm = PMorphism {
            source: chain.clone(),
            target: looped,
            map: vec![0, 0],
        };
        assert_eq!(
            pm.verify(),
            Err(PMorphismFailure::Back {
                x: "0".into(),
                target: "t".into()
            })
        );
        // Edgeless target: forth fails on the edge.
        let dot = Frame::new(names(&["t"]), &[]).unwrap();
        let pm = PMorphism {
            source: chain,
            target: dot,
            map: vec![0, 0],
        };
        assert_eq!(
            pm.verify(),
            Err(PMorphismFailure::Forth {
                x: "1".into(),
                y: "0".into()
            })
        );
    }

    #[test]
    fn single_point() {
        let fr = Frame::new(names(&["x"]), &[]).unwrap();
        let (p, pm) = build_pmorphism_from_g1(&fr, 0).unwrap();
        assert_eq!(p, G1Point { m: 0, i: 0 });
        assert_eq!(pm.map, vec![0]);
    }

    #[test]
    fn two_chain() {
        let fr = Frame::new(names(&["x", "y"]), &[(0, 1)]).unwrap();
        let (p, pm) = build_pmorphism_from_g1(&fr, 0).unwrap();
        assert_eq!(p.m, 1);
        assert!(pm.is_valid() && pm.is_surjective());
        assert_eq!(pm.map[0], 0);
    }

    #[test]
    fn fork() {
        let fr = Frame::new(names(&["r", "a", "b"]), &[(0, 1), (0, 2)]).unwrap();
        let (p, pm) = build_pmorphism_from_g1(&fr, 0).unwrap();
        assert_eq!(p.m, 1);
        assert_eq!(pm.map[0], 0);
        let row0: BTreeSet<usize> = pm.map[1..].iter().copied().collect();
        assert_eq!(row0, BTreeSet::from([1, 2]));
    }

    #[test]
    fn rejects_frames_outside_c() {
        let fan = Frame::from_fn(4, |a, b| a == 0 && b != 0);
        assert!(matches!(
            build_pmorphism_from_g1(&fan, 0),
            Err(KripkeError::NotInClass(_))
        ));
    }

    #[test]
    fn g1_frame_shape() {
        let (fr, pts) = g1_generated_frame(G1Point { m: 2, i: 1 });
        assert_eq!(fr.len(), 5);
        assert_eq!(pts[0], G1Point { m: 2, i: 1 });
        assert!(fr.related(0, 4));
        assert!(fr.related(1, 3) && !fr.related(1, 2));
    }
}
