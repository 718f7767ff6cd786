//! Substituting variables by disjunctions of world-defining formulas.

use std::collections::{BTreeMap, BTreeSet};

use super::{KripkeError, Model};
use crate::formula::{Formula, Syntax};

/// For each variable `p` of `v`, `p* = ⋁ { D_x : x ∈ V(p), x in the cone of i }`
/// with disjuncts in increasing world order; the empty disjunction is `⊥`.
///
/// Every `D_x` that gets used must hold at `x` and nowhere else in `m`.
pub fn restricted_substitution(
    m: &Model,
    i: usize,
    v: &BTreeMap<String, BTreeSet<usize>>,
    defining: &BTreeMap<usize, Formula>,
) -> Result<BTreeMap<String, Formula>, KripkeError> {
    if i >= m.frame.len() {
        return Err(KripkeError::UnknownWorld(i.to_string()));
    }
    let cone: BTreeSet<usize> = m.frame.reachable_from(i).into_iter().collect();
    let mut checked = BTreeSet::new();
    let mut out = BTreeMap::new();
    for (p, worlds) in v {
        let mut disjuncts = Vec::new();
        for &x in worlds.intersection(&cone) {
            let d = defining
                .get(&x)
                .ok_or_else(|| KripkeError::NotDefining(m.frame.name(x).to_string()))?;
            if checked.insert(x) {
                let truth = m.truth_set(d)?;
                let exact = truth.iter().enumerate().all(|(w, &t)| t == (w == x));
                if !exact {
                    return Err(KripkeError::NotDefining(m.frame.name(x).to_string()));
                }
            }
            disjuncts.push(d.clone());
        }
        out.insert(p.clone(), Formula::disj(disjuncts));
    }
    Ok(out)
}
