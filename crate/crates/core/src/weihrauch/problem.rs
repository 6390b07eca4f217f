//! Finite multi-valued problems `f : X → P(Y)` and their reductions.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::containers::{find_morphism_finset, Container, FinSetCat, Morphism};
use crate::error::{Error, Result};
use crate::finbase::{self, FinMap, FinSet};

/// Inputs outside the domain carry an empty solution set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteProblem {
    inputs: FinSet,
    outputs: FinSet,
    solutions: Vec<BTreeSet<usize>>,
}

/// The serialized form `{"inputs": [...], "outputs": [...], "solutions": {in: [out, ...]}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemData {
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    #[serde(default)]
    pub solutions: BTreeMap<String, Vec<String>>,
}

impl FiniteProblem {
    pub fn new(inputs: FinSet, outputs: FinSet, solutions: Vec<BTreeSet<usize>>) -> Result<Self> {
        if solutions.len() != inputs.len() {
            return Err(Error::InvalidProblem("one solution set per input".into()));
        }
        if solutions.iter().flatten().any(|&y| y >= outputs.len()) {
            return Err(Error::InvalidProblem("solution outside the outputs".into()));
        }
        Ok(FiniteProblem {
            inputs,
            outputs,
            solutions,
        })
    }

    pub fn from_data(d: &ProblemData) -> Result<Self> {
        let inputs = FinSet::new(d.inputs.iter().cloned())?;
        let outputs = FinSet::new(d.outputs.iter().cloned())?;
        let mut solutions = vec![BTreeSet::new(); inputs.len()];
        for (i, ys) in &d.solutions {
            let u = inputs
                .index_of(i)
                .ok_or_else(|| Error::InvalidProblem(format!("unknown input {i:?}")))?;
            for y in ys {
                let v = outputs
                    .index_of(y)
                    .ok_or_else(|| Error::InvalidProblem(format!("unknown output {y:?}")))?;
                solutions[u].insert(v);
            }
        }
        FiniteProblem::new(inputs, outputs, solutions)
    }

    pub fn to_data(&self) -> ProblemData {
        ProblemData {
            inputs: self.inputs.elements().to_vec(),
            outputs: self.outputs.elements().to_vec(),
            solutions: (0..self.inputs.len())
                .filter(|&u| !self.solutions[u].is_empty())
                .map(|u| {
                    let ys = self.solutions[u].iter().map(|&y| self.outputs.label(y).to_owned()).collect();
                    (self.inputs.label(u).to_owned(), ys)
                })
                .collect(),
        }
    }

    pub fn inputs(&self) -> &FinSet {
        &self.inputs
    }

    pub fn outputs(&self) -> &FinSet {
        &self.outputs
    }

    pub fn solutions(&self, u: usize) -> &BTreeSet<usize> {
        &self.solutions[u]
    }

    /// Inputs with at least one solution.
    pub fn domain(&self) -> Vec<usize> {
        (0..self.inputs.len()).filter(|&u| !self.solutions[u].is_empty()).collect()
    }
}

/// `c(f) : Σ_{u ∈ dom f} f(u) → dom f`, the first projection.
pub fn c_of(f: &FiniteProblem) -> Container<FinSetCat> {
    let dom = f.domain();
    let base = f.inputs.subset(&dom);
    let mut rows: Vec<(String, usize)> = Vec::new();
    for (k, &u) in dom.iter().enumerate() {
        for &y in &f.solutions[u] {
            rows.push((finbase::pair_label(f.inputs.label(u), f.outputs.label(y)), k));
        }
    }
    rows.sort();
    let total = FinSet::from_labels_unchecked(rows.iter().map(|r| r.0.clone()).collect());
    Container::from_map(FinMap::new(total, base, rows.into_iter().map(|r| r.1).collect()).expect("in range"))
}

/// `w(P)`: inputs are the positions, solutions the fibres.
pub fn w_of(p: &Container<FinSetCat>) -> Result<FiniteProblem> {
    if !p.is_answerable() {
        return Err(Error::NotAnswerable);
    }
    let solutions = p.fibres().into_iter().map(|xs| xs.into_iter().collect()).collect();
    FiniteProblem::new(p.base().clone(), p.total().clone(), solutions)
}

/// A reduction `f₁ ≤ f₂`: `forward` sends each input in `dom f₁` to an
/// input of `f₂`; `backward` sends `(u, y)` with `y ∈ f₂(forward u)` to a
/// solution of `f₁` at `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemReduction {
    pub forward: BTreeMap<usize, usize>,
    pub backward: BTreeMap<(usize, usize), usize>,
}

/// Serialized reduction with labels; `backward` is keyed by `"(u,y)"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionData {
    pub forward: BTreeMap<String, String>,
    pub backward: BTreeMap<String, String>,
}

impl ProblemReduction {
    /// Checks both obligations directly on the problems.
    pub fn verify(&self, f1: &FiniteProblem, f2: &FiniteProblem) -> bool {
        for u in f1.domain() {
            let Some(&v) = self.forward.get(&u) else {
                return false;
            };
            if v >= f2.inputs.len() || f2.solutions[v].is_empty() {
                return false;
            }
            for &y in &f2.solutions[v] {
                match self.backward.get(&(u, y)) {
                    Some(x) if f1.solutions[u].contains(x) => {}
                    _ => return false,
                }
            }
        }
        true
    }

    /// `w₂ ∘ w₁ : f₁ ≤ f₃` from `w₁ : f₁ ≤ f₂` and `w₂ : f₂ ≤ f₃`: the
    /// input goes through both forward maps, and a solution of `f₃` comes
    /// back through `w₂` and then `w₁`.
    pub fn compose(w2: &ProblemReduction, w1: &ProblemReduction, f1: &FiniteProblem, f3: &FiniteProblem) -> Option<ProblemReduction> {
        let mut forward = BTreeMap::new();
        let mut backward = BTreeMap::new();
        for u in f1.domain() {
            let v = *w1.forward.get(&u)?;
            let w = *w2.forward.get(&v)?;
            forward.insert(u, w);
            for &z in &f3.solutions[w] {
                let y = *w2.backward.get(&(v, z))?;
                backward.insert((u, z), *w1.backward.get(&(u, y))?);
            }
        }
        Some(ProblemReduction { forward, backward })
    }

    pub fn identity(f: &FiniteProblem) -> ProblemReduction {
        let dom = f.domain();
        ProblemReduction {
            forward: dom.iter().map(|&u| (u, u)).collect(),
            backward: dom
                .iter()
                .flat_map(|&u| f.solutions[u].iter().map(move |&y| ((u, y), y)))
                .collect(),
        }
    }

    pub fn to_data(&self, f1: &FiniteProblem, f2: &FiniteProblem) -> ReductionData {
        ReductionData {
            forward: self
                .forward
                .iter()
                .map(|(&u, &v)| (f1.inputs.label(u).to_owned(), f2.inputs.label(v).to_owned()))
                .collect(),
            backward: self
                .backward
                .iter()
                .map(|(&(u, y), &x)| {
                    (
                        finbase::pair_label(f1.inputs.label(u), f2.outputs.label(y)),
                        f1.outputs.label(x).to_owned(),
                    )
                })
                .collect(),
        }
    }

    pub fn from_data(d: &ReductionData, f1: &FiniteProblem, f2: &FiniteProblem) -> Result<ProblemReduction> {
        let idx = |s: &FinSet, l: &str| s.index_of(l).ok_or_else(|| Error::UnknownLabel(l.to_owned()));
        let mut forward = BTreeMap::new();
        for (u, v) in &d.forward {
            forward.insert(idx(&f1.inputs, u)?, idx(&f2.inputs, v)?);
        }
        let mut backward = BTreeMap::new();
        for (k, x) in &d.backward {
            let (u, y) = split_pair(k).ok_or_else(|| Error::UnknownLabel(k.clone()))?;
            backward.insert((idx(&f1.inputs, u)?, idx(&f2.outputs, y)?), idx(&f1.outputs, x)?);
        }
        Ok(ProblemReduction { forward, backward })
    }
}

/// Splits `"(a,b)"` at its top-level comma.
pub(crate) fn split_pair(label: &str) -> Option<(&str, &str)> {
    let inner = label.strip_prefix('(')?.strip_suffix(')')?;
    let mut depth = 0i32;
    for (i, c) in inner.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            ',' if depth == 0 => return Some((&inner[..i], &inner[i + 1..])),
            _ => {}
        }
    }
    None
}

/// Reads a reduction off a container morphism `c(f₁) → c(f₂)`.
pub fn reduction_from_morphism(m: &Morphism<FinSetCat>, f1: &FiniteProblem, f2: &FiniteProblem) -> ProblemReduction {
    let dom1 = f1.domain();
    let dom2 = f2.domain();
    let p = m.src();
    let q = m.dst();
    let forward = dom1
        .iter()
        .enumerate()
        .map(|(k, &u)| (u, dom2[m.forward().apply(k)]))
        .collect();
    let out_of = |c: &Container<FinSetCat>, f: &FiniteProblem, x: usize| {
        let (_, y) = split_pair(c.total().label(x)).expect("pair label");
        f.outputs.index_of(y).expect("output label")
    };
    let apex = m.apex();
    let backward = (0..apex.apex.len())
        .map(|k| {
            let u = dom1[apex.proj1.apply(k)];
            let y = out_of(q, f2, apex.proj2.apply(k));
            let x = out_of(p, f1, m.backward().apply(k));
            ((u, y), x)
        })
        .collect();
    ProblemReduction { forward, backward }
}

/// Decides `f₁ ≤ f₂`; `None` is definitive.
pub fn reduce(f1: &FiniteProblem, f2: &FiniteProblem) -> Option<ProblemReduction> {
    let m = find_morphism_finset(&c_of(f1), &c_of(f2))?;
    Some(reduction_from_morphism(&m, f1, f2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn problem(n_in: usize, n_out: usize, sol: &[&[usize]]) -> FiniteProblem {
        FiniteProblem::new(
            FinSet::numbered("i", n_in),
            FinSet::numbered("o", n_out),
            sol.iter().map(|s| s.iter().copied().collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn empty_domain_gives_initial() {
        let f = problem(2, 1, &[&[], &[]]);
        let c = c_of(&f);
        assert!(c.base().is_empty() && c.total().is_empty());
    }

    #[test]
    fn single_input_two_outputs() {
        let f = problem(1, 2, &[&[0, 1]]);
        let c = c_of(&f);
        assert_eq!((c.total().len(), c.base().len()), (2, 1));
        assert!(c.is_answerable());
    }

    #[test]
    fn reflexivity_and_composition() {
        let f = problem(3, 2, &[&[0], &[0, 1], &[]]);
        let g = problem(2, 3, &[&[2], &[0, 1]]);
        let id = ProblemReduction::identity(&f);
        assert!(id.verify(&f, &f));
        let w = reduce(&f, &g).unwrap();
        assert!(w.verify(&f, &g));
        let back = reduce(&g, &f).unwrap();
        let round = ProblemReduction::compose(&back, &w, &f, &f).unwrap();
        assert!(round.verify(&f, &f));
    }

    #[test]
    fn empty_solution_input_is_not_in_domain() {
        let f = problem(1, 1, &[&[]]);
        let g = problem(1, 1, &[&[0]]);
        assert!(reduce(&f, &g).is_some());
        // The everywhere-solvable side cannot reduce to a problem with empty domain.
        assert!(reduce(&g, &f).is_none());
    }

    #[test]
    fn data_round_trip() {
        let f = problem(2, 2, &[&[1], &[0, 1]]);
        let d = f.to_data();
        assert_eq!(FiniteProblem::from_data(&d).unwrap(), f);
        let w = ProblemReduction::identity(&f);
        assert_eq!(ProblemReduction::from_data(&w.to_data(&f, &f), &f, &f).unwrap(), w);
    }
}
