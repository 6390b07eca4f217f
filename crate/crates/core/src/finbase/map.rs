use std::collections::BTreeMap;
use std::fmt;

use super::FinSet;
use crate::error::{Error, Result};

/// A total function between finite sets, stored as the index of the image of
/// every domain element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinMap {
    dom: FinSet,
    cod: FinSet,
    graph: Vec<usize>,
}

impl FinMap {
    pub fn new(dom: FinSet, cod: FinSet, graph: Vec<usize>) -> Result<Self> {
        if graph.len() != dom.len() {
            return Err(Error::NotTotal(format!(
                "graph has {} entries for a domain of {}",
                graph.len(),
                dom.len()
            )));
        }
        if let Some(&j) = graph.iter().find(|&&j| j >= cod.len()) {
            return Err(Error::NotTotal(format!("image index {j} outside codomain")));
        }
        Ok(FinMap { dom, cod, graph })
    }

    pub(crate) fn new_unchecked(dom: FinSet, cod: FinSet, graph: Vec<usize>) -> Self {
        debug_assert_eq!(graph.len(), dom.len());
        debug_assert!(graph.iter().all(|&j| j < cod.len()));
        FinMap { dom, cod, graph }
    }

    pub fn from_fn(dom: FinSet, cod: FinSet, f: impl FnMut(usize) -> usize) -> Result<Self> {
        let graph = (0..dom.len()).map(f).collect();
        FinMap::new(dom, cod, graph)
    }

    /// Builds a map from a label-to-label assignment, which must cover the
    /// domain exactly.
    pub fn from_labels(dom: FinSet, cod: FinSet, assignment: &BTreeMap<String, String>) -> Result<Self> {
        if let Some(extra) = assignment.keys().find(|k| !dom.contains(k)) {
            return Err(Error::UnknownLabel(extra.clone()));
        }
        let mut graph = Vec::with_capacity(dom.len());
        for a in dom.iter() {
            let b = assignment
                .get(a)
                .ok_or_else(|| Error::NotTotal(format!("no image for {a:?}")))?;
            graph.push(cod.index_of(b).ok_or_else(|| Error::UnknownLabel(b.clone()))?);
        }
        Ok(FinMap { dom, cod, graph })
    }

    pub fn identity(set: &FinSet) -> Self {
        FinMap {
            dom: set.clone(),
            cod: set.clone(),
            graph: (0..set.len()).collect(),
        }
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn graph(&self) -> &[usize] {
        &self.graph
    }

    pub fn apply(&self, i: usize) -> usize {
        self.graph[i]
    }

    pub fn apply_label(&self, label: &str) -> Option<&str> {
        self.dom.index_of(label).map(|i| self.cod.label(self.graph[i]))
    }

    pub fn to_labels(&self) -> BTreeMap<String, String> {
        self.dom
            .iter()
            .zip(&self.graph)
            .map(|(a, &j)| (a.to_owned(), self.cod.label(j).to_owned()))
            .collect()
    }

    /// Indices of the domain elements sent to `j`, in domain order.
    pub fn fibre(&self, j: usize) -> Vec<usize> {
        (0..self.graph.len()).filter(|&i| self.graph[i] == j).collect()
    }

    /// All fibres at once, indexed by codomain element.
    pub fn fibres(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.cod.len()];
        for (i, &j) in self.graph.iter().enumerate() {
            out[j].push(i);
        }
        out
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.len()];
        for &j in &self.graph {
            hit[j] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.cod.len()];
        for &j in &self.graph {
            if std::mem::replace(&mut hit[j], true) {
                return false;
            }
        }
        true
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.len() == self.cod.len() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<FinMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut graph = vec![0; self.cod.len()];
        for (i, &j) in self.graph.iter().enumerate() {
            graph[j] = i;
        }
        Some(FinMap {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            graph,
        })
    }

    /// Restriction to a subset of the domain given by indices.
    pub fn restrict(&self, indices: &[usize]) -> FinMap {
        let dom = self.dom.subset(indices);
        let graph = dom
            .iter()
            .map(|l| self.graph[self.dom.index_of(l).expect("subset label")])
            .collect();
        FinMap {
            dom,
            cod: self.cod.clone(),
            graph,
        }
    }
}

/// `g ∘ f`.
pub fn compose(g: &FinMap, f: &FinMap) -> Result<FinMap> {
    if f.cod != g.dom {
        return Err(Error::CodDomMismatch(format!(
            "cod(f) = {:?} but dom(g) = {:?}",
            f.cod, g.dom
        )));
    }
    Ok(FinMap {
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        graph: f.graph.iter().map(|&j| g.graph[j]).collect(),
    })
}

pub fn is_surjective(f: &FinMap) -> bool {
    f.is_surjective()
}

impl fmt::Debug for FinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.dom.iter().zip(self.graph.iter().map(|&j| self.cod.label(j))))
            .finish()
    }
}

/// Iterates every map `dom → cod` in lexicographic order of the image
/// vector, first domain element most significant.
pub fn all_maps(dom: &FinSet, cod: &FinSet) -> AllMaps {
    let exhausted = cod.is_empty() && !dom.is_empty();
    AllMaps {
        dom: dom.clone(),
        cod: cod.clone(),
        next: if exhausted { None } else { Some(vec![0; dom.len()]) },
    }
}

pub struct AllMaps {
    dom: FinSet,
    cod: FinSet,
    next: Option<Vec<usize>>,
}

impl Iterator for AllMaps {
    type Item = FinMap;

    fn next(&mut self) -> Option<FinMap> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut pos = succ.len();
        let mut advanced = false;
        while pos > 0 {
            pos -= 1;
            if succ[pos] + 1 < self.cod.len() {
                succ[pos] += 1;
                advanced = true;
                break;
            }
            succ[pos] = 0;
        }
        if advanced {
            self.next = Some(succ);
        }
        Some(FinMap::new_unchecked(self.dom.clone(), self.cod.clone(), current))
    }
}

/// Iterates every choice vector picking one entry from each list, in
/// lexicographic order. Yields nothing if some list is empty.
pub(crate) fn choices(lists: &[Vec<usize>]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let mut state: Option<Vec<usize>> = if lists.iter().any(Vec::is_empty) {
        None
    } else {
        Some(vec![0; lists.len()])
    };
    std::iter::from_fn(move || {
        let cur = state.take()?;
        let out: Vec<usize> = cur.iter().zip(lists).map(|(&k, l)| l[k]).collect();
        let mut succ = cur;
        let mut pos = succ.len();
        while pos > 0 {
            pos -= 1;
            if succ[pos] + 1 < lists[pos].len() {
                succ[pos] += 1;
                state = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(labels: &[&str]) -> FinSet {
        FinSet::new(labels.iter().copied()).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let a = set(&["a", "b"]);
        let b = set(&["0", "1", "2"]);
        let f = FinMap::new(a.clone(), b.clone(), vec![2, 0]).unwrap();
        assert_eq!(compose(&f, &FinMap::identity(&a)).unwrap(), f);
        assert_eq!(compose(&FinMap::identity(&b), &f).unwrap(), f);
    }

    #[test]
    fn one_point_composition() {
        let f = FinMap::from_labels(
            set(&["a"]),
            set(&["0"]),
            &[("a".into(), "0".into())].into_iter().collect(),
        )
        .unwrap();
        let g = FinMap::from_labels(
            set(&["0"]),
            set(&["x"]),
            &[("0".into(), "x".into())].into_iter().collect(),
        )
        .unwrap();
        let h = compose(&g, &f).unwrap();
        assert_eq!(h.apply_label("a"), Some("x"));
    }

    #[test]
    fn composition_rejects_mismatch() {
        let f = FinMap::identity(&set(&["a"]));
        let g = FinMap::identity(&set(&["b"]));
        assert!(matches!(compose(&g, &f), Err(Error::CodDomMismatch(_))));
    }

    #[test]
    fn all_maps_counts() {
        assert_eq!(all_maps(&set(&["a", "b"]), &set(&["0", "1", "2"])).count(), 9);
        assert_eq!(all_maps(&FinSet::empty(), &FinSet::empty()).count(), 1);
        assert_eq!(all_maps(&set(&["a"]), &FinSet::empty()).count(), 0);
        assert_eq!(all_maps(&FinSet::empty(), &set(&["a"])).count(), 1);
        let first: Vec<_> = all_maps(&set(&["a", "b"]), &set(&["0", "1"]))
            .map(|m| m.graph().to_vec())
            .collect();
        assert_eq!(first, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn surjectivity_edge_cases() {
        let one = set(&["*"]);
        assert!(FinMap::identity(&one).is_surjective());
        assert!(!FinMap::new(FinSet::empty(), one, vec![]).unwrap().is_surjective());
        assert!(FinMap::identity(&FinSet::empty()).is_surjective());
    }

    #[test]
    fn choices_enumerates_products() {
        let lists = vec![vec![3, 4], vec![7], vec![1, 2]];
        assert_eq!(choices(&lists).count(), 4);
        assert_eq!(choices(&[vec![1], vec![]]).count(), 0);
        assert_eq!(choices(&[]).count(), 1);
    }
}
