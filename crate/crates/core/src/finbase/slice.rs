//! The slice calculus `Σ_f ⊣ f* ⊣ Π_f` on families of finite sets.

use std::collections::HashMap;

use super::limits::pullback;
use super::map::{all_maps, choices, compose};
use super::set::{graph_label, pair_label};
use super::{FinMap, FinSet};
use crate::error::{Error, Result};

/// A family of sets indexed by `base`, presented as a map `total → base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceObj {
    pub total: FinSet,
    pub base: FinSet,
    pub map: FinMap,
}

impl SliceObj {
    pub fn new(map: FinMap) -> Self {
        SliceObj {
            total: map.dom().clone(),
            base: map.cod().clone(),
            map,
        }
    }

    pub fn fibre_sizes(&self) -> Vec<usize> {
        self.map.fibres().iter().map(Vec::len).collect()
    }
}

fn check_base(expected: &FinSet, found: &FinSet) -> Result<()> {
    if expected != found {
        return Err(Error::BaseMismatch(format!("expected base {expected:?}, found {found:?}")));
    }
    Ok(())
}

/// Postcomposition with `f`.
pub fn sigma_along(f: &FinMap, a: &SliceObj) -> Result<SliceObj> {
    check_base(f.dom(), &a.base)?;
    Ok(SliceObj::new(compose(f, &a.map)?))
}

/// Pullback of `b` along `f`; elements are `(i,x)` with `f(i) = b(x)`.
pub fn reindex(f: &FinMap, b: &SliceObj) -> Result<SliceObj> {
    check_base(f.cod(), &b.base)?;
    let pb = pullback(f, &b.map)?;
    Ok(SliceObj::new(pb.proj1))
}

/// Dependent product: the fibre over `j` is the set of sections of `a` over
/// `f⁻¹(j)`, labelled `(j,sec:{i↦x,...})`.
pub fn pi_along(f: &FinMap, a: &SliceObj) -> Result<SliceObj> {
    check_base(f.dom(), &a.base)?;
    let mut rows = pi_rows(f, a);
    rows.sort();
    let total = FinSet::from_labels_unchecked(rows.iter().map(|r| r.0.clone()).collect());
    let graph = rows.iter().map(|r| r.1).collect();
    Ok(SliceObj::new(FinMap::new_unchecked(total, f.cod().clone(), graph)))
}

fn section_label(f: &FinMap, a: &SliceObj, j: usize, sec: &[usize]) -> String {
    let fib = f.fibre(j);
    let body = graph_label(
        fib.iter()
            .zip(sec)
            .map(|(&i, &x)| (a.base.label(i), a.total.label(x))),
    );
    pair_label(f.cod().label(j), &format!("sec:{body}"))
}

fn pi_rows(f: &FinMap, a: &SliceObj) -> Vec<(String, usize)> {
    let afib = a.map.fibres();
    let mut rows = Vec::new();
    for j in 0..f.cod().len() {
        let lists: Vec<Vec<usize>> = f.fibre(j).into_iter().map(|i| afib[i].clone()).collect();
        for sec in choices(&lists) {
            rows.push((section_label(f, a, j, &sec), j));
        }
    }
    rows
}

/// All maps `a.total → b.total` over a common base.
pub fn slice_homs(a: &SliceObj, b: &SliceObj) -> Result<Vec<FinMap>> {
    check_base(&a.base, &b.base)?;
    let bfib = b.map.fibres();
    let lists: Vec<Vec<usize>> = (0..a.total.len()).map(|x| bfib[a.map.apply(x)].clone()).collect();
    Ok(choices(&lists)
        .map(|g| FinMap::new_unchecked(a.total.clone(), b.total.clone(), g))
        .collect())
}

/// Transpose across `Σ_f ⊣ f*`: a map `h : Σ_f a → b` over `f.cod` becomes
/// `x ↦ (a(x), h(x))` into `f* b`.
pub fn sigma_transpose(f: &FinMap, a: &SliceObj, b: &SliceObj, h: &FinMap) -> Result<FinMap> {
    let fb = reindex(f, b)?;
    let index: HashMap<&str, usize> = fb.total.iter().enumerate().map(|(k, l)| (l, k)).collect();
    FinMap::from_fn(a.total.clone(), fb.total.clone(), |x| {
        let label = pair_label(a.base.label(a.map.apply(x)), b.total.label(h.apply(x)));
        index[label.as_str()]
    })
}

/// Transpose across `f* ⊣ Π_f`: a map `h : f* g → a` over `f.dom` becomes
/// `y ↦ (g(y), section i ↦ h(i,y))` into `Π_f a`.
pub fn pi_transpose(f: &FinMap, g: &SliceObj, a: &SliceObj, h: &FinMap) -> Result<FinMap> {
    let fg = reindex(f, g)?;
    let pi = pi_along(f, a)?;
    let src: HashMap<&str, usize> = fg.total.iter().enumerate().map(|(k, l)| (l, k)).collect();
    let mut graph = Vec::with_capacity(g.total.len());
    for y in 0..g.total.len() {
        let j = g.map.apply(y);
        let sec: Vec<usize> = f
            .fibre(j)
            .into_iter()
            .map(|i| h.apply(src[pair_label(f.dom().label(i), g.total.label(y)).as_str()]))
            .collect();
        let label = section_label(f, a, j, &sec);
        graph.push(pi.total.index_of(&label).expect("section present"));
    }
    FinMap::new(g.total.clone(), pi.total, graph)
}

/// Every slice over `base` with total set drawn from `totals`.
pub fn all_slices(totals: &[FinSet], base: &FinSet) -> Vec<SliceObj> {
    totals
        .iter()
        .flat_map(|t| all_maps(t, base).map(SliceObj::new))
        .collect()
}
