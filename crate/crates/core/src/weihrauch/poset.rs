//! The degree poset of a finite corpus under a reducibility oracle.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::containers::BaseKind;

/// Outcome of one ordered reducibility query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Reducibility {
    Reducible,
    NotReducible,
    UnknownAtBound { bound: usize, budget: u64 },
}

impl Reducibility {
    pub fn tag(&self) -> &'static str {
        match self {
            Reducibility::Reducible => "REDUCIBLE",
            Reducibility::NotReducible => "NOT-REDUCIBLE",
            Reducibility::UnknownAtBound { .. } => "UNKNOWN-AT-BOUND",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairOutcome {
    pub from: String,
    pub to: String,
    pub outcome: Reducibility,
}

/// Equivalence classes (members sorted, classes ordered by least member),
/// the covering edges `lower → upper` between classes, and every pairwise
/// query outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreePoset {
    pub kind: BaseKind,
    pub bound: Option<(usize, u64)>,
    pub classes: Vec<Vec<String>>,
    pub hasse: Vec<(usize, usize)>,
    pub pairs: Vec<PairOutcome>,
}

/// Builds the poset from `names` and an oracle on indices into the sorted
/// name list. Classes are the strongly connected components of the
/// reducible-pairs graph; the class order is the transitive closure, and
/// its covering edges are always direct reductions between members.
pub fn degree_poset(
    kind: BaseKind,
    bound: Option<(usize, u64)>,
    names: &[String],
    mut query: impl FnMut(&str, &str) -> Reducibility,
) -> DegreePoset {
    let names: Vec<String> = names.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let n = names.len();
    let mut pairs = Vec::new();
    let mut reach = vec![vec![false; n]; n];
    for i in 0..n {
        reach[i][i] = true;
        for j in 0..n {
            if i == j {
                continue;
            }
            let outcome = query(&names[i], &names[j]);
            reach[i][j] = outcome == Reducibility::Reducible;
            pairs.push(PairOutcome {
                from: names[i].clone(),
                to: names[j].clone(),
                outcome,
            });
        }
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<String>> = Vec::new();
    for i in 0..n {
        if class_of[i] != usize::MAX {
            continue;
        }
        let c = classes.len();
        let mut members = Vec::new();
        for j in i..n {
            if reach[i][j] && reach[j][i] {
                class_of[j] = c;
                members.push(names[j].clone());
            }
        }
        classes.push(members);
    }
    let rep: Vec<usize> = (0..classes.len())
        .map(|c| class_of.iter().position(|&k| k == c).expect("non-empty class"))
        .collect();
    let below = |a: usize, b: usize| a != b && reach[rep[a]][rep[b]];
    let m = classes.len();
    let mut hasse = Vec::new();
    for a in 0..m {
        for b in 0..m {
            if below(a, b) && !(0..m).any(|c| below(a, c) && below(c, b)) {
                hasse.push((a, b));
            }
        }
    }
    DegreePoset {
        kind,
        bound,
        classes,
        hasse,
        pairs,
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

impl DegreePoset {
    /// Graphviz output. PAsm edges are dashed and carry the search bound.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "digraph degrees {{").unwrap();
        writeln!(out, "  rankdir=BT;").unwrap();
        for (c, members) in self.classes.iter().enumerate() {
            writeln!(out, "  c{c} [label={}];", quote(&members.join(" ≡ "))).unwrap();
        }
        for &(a, b) in &self.hasse {
            match (self.kind, self.bound) {
                (BaseKind::PAsm, Some((bound, budget))) => writeln!(
                    out,
                    "  c{a} -> c{b} [style=dashed, label={}];",
                    quote(&format!("bound {bound}, budget {budget}"))
                )
                .unwrap(),
                _ => writeln!(out, "  c{a} -> c{b};").unwrap(),
            }
        }
        writeln!(out, "}}").unwrap();
        out
    }

    /// Plain text listing of classes, covering edges and pair outcomes.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (c, members) in self.classes.iter().enumerate() {
            writeln!(out, "class c{c}: {}", members.join(" ")).unwrap();
        }
        for &(a, b) in &self.hasse {
            writeln!(out, "edge c{a} <= c{b}").unwrap();
        }
        for p in &self.pairs {
            writeln!(out, "{} <= {}: {}", p.from, p.to, p.outcome.tag()).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_oracle(a: &str, b: &str) -> Reducibility {
        // Order by length, with equal lengths equivalent.
        if a.len() <= b.len() {
            Reducibility::Reducible
        } else {
            Reducibility::NotReducible
        }
    }

    #[test]
    fn chain_with_equivalents() {
        let names: Vec<String> = ["bb", "a", "ccc", "dd"].iter().map(|s| s.to_string()).collect();
        let p = degree_poset(BaseKind::FinSet, None, &names, chain_oracle);
        assert_eq!(p.classes, vec![vec!["a".to_string()], vec!["bb".into(), "dd".into()], vec!["ccc".into()]]);
        assert_eq!(p.hasse, vec![(0, 1), (1, 2)]);
        assert_eq!(p.pairs.len(), 12);
    }

    #[test]
    fn permutation_stable() {
        let names: Vec<String> = ["x", "yy", "zzz"].iter().map(|s| s.to_string()).collect();
        let mut rev = names.clone();
        rev.reverse();
        let a = degree_poset(BaseKind::FinSet, None, &names, chain_oracle);
        let b = degree_poset(BaseKind::FinSet, None, &rev, chain_oracle);
        assert_eq!(a.to_dot(), b.to_dot());
    }

    #[test]
    fn pasm_edges_are_dashed() {
        let names: Vec<String> = ["a", "bb"].iter().map(|s| s.to_string()).collect();
        let p = degree_poset(BaseKind::PAsm, Some((7, 100)), &names, chain_oracle);
        assert!(p.to_dot().contains("style=dashed, label=\"bound 7, budget 100\""));
    }
}
