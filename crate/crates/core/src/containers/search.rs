//! Deciding and searching for container morphisms.

use std::collections::{BTreeMap, HashMap, HashSet};

use super::{Container, FinSetCat, Morphism, PAsmCat, SearchBounds, SearchOutcome};
use crate::assemblies::{Assembly, TrackedMap};
use crate::finbase::{self, all_maps, choices, FinMap};
use crate::sk::{terms_up_to, MemoApply, Term};

/// A morphism `P → Q` of FinSet containers, if one exists. Each position
/// is sent to the least position it can be sent to, and each direction is
/// answered by the least direction over its position.
pub fn find_morphism_finset(p: &Container<FinSetCat>, q: &Container<FinSetCat>) -> Option<Morphism<FinSetCat>> {
    let pf = p.fibres();
    let qf = q.fibres();
    let graph = pf
        .iter()
        .map(|xs| (0..qf.len()).find(|&v| !xs.is_empty() || qf[v].is_empty()))
        .collect::<Option<Vec<usize>>>()?;
    let forward = FinMap::new(p.base().clone(), q.base().clone(), graph).expect("in range");
    let pb = finbase::pullback(&forward, q.bundle()).expect("typed");
    let back: Vec<usize> = (0..pb.apex.len()).map(|k| pf[pb.proj1.apply(k)][0]).collect();
    let backward = FinMap::new(pb.apex, p.total().clone(), back).expect("in range");
    Some(Morphism::new(p.clone(), q.clone(), forward, backward).expect("constructed in the fibres"))
}

/// Every morphism `P → Q`, ordered by forward graph and then backward
/// graph.
pub fn all_morphisms_finset(p: &Container<FinSetCat>, q: &Container<FinSetCat>) -> Vec<Morphism<FinSetCat>> {
    let pf = p.fibres();
    let mut out = Vec::new();
    for forward in all_maps(p.base(), q.base()) {
        let pb = finbase::pullback(&forward, q.bundle()).expect("typed");
        let lists: Vec<Vec<usize>> = (0..pb.apex.len()).map(|k| pf[pb.proj1.apply(k)].clone()).collect();
        for back in choices(&lists) {
            let backward = FinMap::new(pb.apex.clone(), p.total().clone(), back).expect("in range");
            out.push(Morphism::new(p.clone(), q.clone(), forward.clone(), backward).expect("valid"));
        }
    }
    out
}

/// Carrier maps `U → V` tracked by a code of size at most the bound, each
/// with its least code.
fn tracked_forwards(
    u: &Assembly,
    v: &Assembly,
    admissible: impl Fn(usize, usize) -> bool,
    size_bound: usize,
    memo: &mut MemoApply,
) -> BTreeMap<Vec<usize>, Term> {
    let v_index = v.index();
    let mut found: BTreeMap<Vec<usize>, Term> = BTreeMap::new();
    let mut seen: HashSet<Vec<Vec<usize>>> = HashSet::new();
    'codes: for c in terms_up_to(size_bound) {
        let mut lists = Vec::with_capacity(u.len());
        for i in 0..u.len() {
            let Some(out) = memo.apply(&c, u.realizer(i)) else {
                continue 'codes;
            };
            let targets: Vec<usize> = v_index
                .get(&out)
                .map(|vs| vs.iter().copied().filter(|&j| admissible(i, j)).collect())
                .unwrap_or_default();
            if targets.is_empty() {
                continue 'codes;
            }
            lists.push(targets);
        }
        if !seen.insert(lists.clone()) {
            continue;
        }
        for g in choices(&lists) {
            found.entry(g).or_insert_with(|| c.clone());
        }
    }
    found
}

/// A bounded search for a morphism of PAsm containers. Forward maps are
/// tried in graph order, each with the least backward code. A miss never
/// claims non-reducibility.
pub fn find_morphism_pasm(p: &Container<PAsmCat>, q: &Container<PAsmCat>, bounds: SearchBounds) -> SearchOutcome<Morphism<PAsmCat>> {
    let unknown = SearchOutcome::UnknownAtBound {
        bound: bounds.size_bound,
        budget: bounds.budget.max_steps(),
    };
    let mut memo = MemoApply::new(bounds.budget);
    let pf = p.fibres();
    let qf = q.fibres();
    let forwards = tracked_forwards(
        p.base(),
        q.base(),
        |i, j| !pf[i].is_empty() || qf[j].is_empty(),
        bounds.size_bound,
        &mut memo,
    );
    let x = p.total();
    let x_index: HashMap<Term, Vec<usize>> = x.index();
    for (graph, fcode) in forwards {
        let fmap = FinMap::new(p.base().carrier().clone(), q.base().carrier().clone(), graph).expect("in range");
        let Ok(forward) = TrackedMap::verified(p.base().clone(), q.base().clone(), fmap, fcode, bounds.budget) else {
            continue;
        };
        let Ok(pb) = <PAsmCat as super::BaseCategory>::pullback(&forward, q.bundle()) else {
            continue;
        };
        let apex = &pb.apex;
        let over: Vec<usize> = (0..apex.len()).map(|k| pb.proj1.map().apply(k)).collect();
        let hit = terms_up_to(bounds.size_bound).find_map(|d| {
            let mut back = Vec::with_capacity(apex.len());
            for (k, &pos) in over.iter().enumerate() {
                let out = memo.apply(&d, apex.realizer(k))?;
                let xs = x_index.get(&out)?;
                let xi = xs.iter().copied().find(|&xi| pf[pos].binary_search(&xi).is_ok())?;
                back.push(xi);
            }
            Some((d, back))
        });
        if let Some((d, back)) = hit {
            let bmap = FinMap::new(apex.carrier().clone(), x.carrier().clone(), back).expect("in range");
            let Ok(backward) = TrackedMap::verified(apex.clone(), x.clone(), bmap, d, bounds.budget) else {
                continue;
            };
            if let Ok(m) = Morphism::new(p.clone(), q.clone(), forward, backward) {
                return SearchOutcome::Found(m);
            }
        }
    }
    unknown
}
