//! Finite limits and colimits in the category of finite sets.
//!
//! Derived objects use fixed label schemes: `(a,b)` for pairs, `inl:a` and
//! `inr:b` for coproduct summands, `{a↦x,...}` for function graphs and `*`
//! for the point of the terminal set.

use std::collections::HashMap;

use super::map::{all_maps, compose};
use super::set::{graph_label, pair_label};
use super::{FinMap, FinSet};
use crate::error::{Error, Result};

pub const POINT: &str = "*";

/// The canonical pullback of `left: A → C` and `right: B → C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackResult {
    pub apex: FinSet,
    /// Projection to `A`.
    pub proj1: FinMap,
    /// Projection to `B`.
    pub proj2: FinMap,
    pub left: FinMap,
    pub right: FinMap,
}

pub fn pullback(f: &FinMap, g: &FinMap) -> Result<PullbackResult> {
    if f.cod() != g.cod() {
        return Err(Error::CodDomMismatch(format!(
            "pullback of maps into {:?} and {:?}",
            f.cod(),
            g.cod()
        )));
    }
    let a = f.dom();
    let b = g.dom();
    let fib = g.fibres();
    let mut rows: Vec<(String, usize, usize)> = Vec::new();
    for i in 0..a.len() {
        for &j in &fib[f.apply(i)] {
            rows.push((pair_label(a.label(i), b.label(j)), i, j));
        }
    }
    rows.sort();
    let apex = FinSet::from_labels_unchecked(rows.iter().map(|r| r.0.clone()).collect());
    let proj1 = FinMap::new_unchecked(apex.clone(), a.clone(), rows.iter().map(|r| r.1).collect());
    let proj2 = FinMap::new_unchecked(apex.clone(), b.clone(), rows.iter().map(|r| r.2).collect());
    Ok(PullbackResult {
        apex,
        proj1,
        proj2,
        left: f.clone(),
        right: g.clone(),
    })
}

/// The unique `γ : Z → apex` with `proj2 ∘ γ = alpha` and `proj1 ∘ γ = beta`.
pub fn mediating(pb: &PullbackResult, alpha: &FinMap, beta: &FinMap) -> Result<FinMap> {
    if alpha.dom() != beta.dom() || alpha.cod() != pb.right.dom() || beta.cod() != pb.left.dom() {
        return Err(Error::CodDomMismatch("cone is not over the pullback legs".into()));
    }
    if compose(&pb.left, beta)? != compose(&pb.right, alpha)? {
        return Err(Error::SquareDoesNotCommute);
    }
    let index: HashMap<(usize, usize), usize> = (0..pb.apex.len())
        .map(|k| ((pb.proj1.apply(k), pb.proj2.apply(k)), k))
        .collect();
    FinMap::from_fn(alpha.dom().clone(), pb.apex.clone(), |z| {
        index[&(beta.apply(z), alpha.apply(z))]
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductSet {
    pub obj: FinSet,
    pub p1: FinMap,
    pub p2: FinMap,
    index: Vec<Vec<usize>>,
}

impl ProductSet {
    /// Index of the pair `(i, j)`.
    pub fn index(&self, i: usize, j: usize) -> usize {
        self.index[i][j]
    }
}

pub fn product(a: &FinSet, b: &FinSet) -> ProductSet {
    let mut rows: Vec<(String, usize, usize)> = Vec::with_capacity(a.len() * b.len());
    for i in 0..a.len() {
        for j in 0..b.len() {
            rows.push((pair_label(a.label(i), b.label(j)), i, j));
        }
    }
    rows.sort();
    let obj = FinSet::from_labels_unchecked(rows.iter().map(|r| r.0.clone()).collect());
    let mut index = vec![vec![0; b.len()]; a.len()];
    for (k, r) in rows.iter().enumerate() {
        index[r.1][r.2] = k;
    }
    ProductSet {
        p1: FinMap::new_unchecked(obj.clone(), a.clone(), rows.iter().map(|r| r.1).collect()),
        p2: FinMap::new_unchecked(obj.clone(), b.clone(), rows.iter().map(|r| r.2).collect()),
        obj,
        index,
    }
}

/// `⟨f, g⟩ : Z → A × B`.
pub fn pairing(prod: &ProductSet, f: &FinMap, g: &FinMap) -> Result<FinMap> {
    if f.dom() != g.dom() || f.cod() != prod.p1.cod() || g.cod() != prod.p2.cod() {
        return Err(Error::CodDomMismatch("pairing legs do not match the product".into()));
    }
    FinMap::from_fn(f.dom().clone(), prod.obj.clone(), |z| {
        prod.index(f.apply(z), g.apply(z))
    })
}

pub fn product_map(f: &FinMap, g: &FinMap) -> FinMap {
    let src = product(f.dom(), g.dom());
    let dst = product(f.cod(), g.cod());
    let left = compose(f, &src.p1).expect("typed");
    let right = compose(g, &src.p2).expect("typed");
    pairing(&dst, &left, &right).expect("typed")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoproductSet {
    pub obj: FinSet,
    pub inl: FinMap,
    pub inr: FinMap,
}

impl CoproductSet {
    /// `Ok(i)` for a left summand element, `Err(j)` for a right one.
    pub fn case(&self, k: usize) -> std::result::Result<usize, usize> {
        // Left labels all start with "inl:" which sorts before "inr:".
        let n = self.inl.dom().len();
        if k < n {
            Ok(k)
        } else {
            Err(k - n)
        }
    }
}

pub fn coproduct(a: &FinSet, b: &FinSet) -> CoproductSet {
    let mut labels: Vec<String> = a.iter().map(|l| format!("inl:{l}")).collect();
    labels.extend(b.iter().map(|l| format!("inr:{l}")));
    let obj = FinSet::from_labels_unchecked(labels);
    let n = a.len();
    CoproductSet {
        inl: FinMap::new_unchecked(a.clone(), obj.clone(), (0..n).collect()),
        inr: FinMap::new_unchecked(b.clone(), obj.clone(), (n..n + b.len()).collect()),
        obj,
    }
}

/// `[f, g] : A + B → Z`.
pub fn copairing(cp: &CoproductSet, f: &FinMap, g: &FinMap) -> Result<FinMap> {
    if f.cod() != g.cod() || f.dom() != cp.inl.dom() || g.dom() != cp.inr.dom() {
        return Err(Error::CodDomMismatch("copairing legs do not match the coproduct".into()));
    }
    FinMap::from_fn(cp.obj.clone(), f.cod().clone(), |k| match cp.case(k) {
        Ok(i) => f.apply(i),
        Err(j) => g.apply(j),
    })
}

pub fn coproduct_map(f: &FinMap, g: &FinMap) -> FinMap {
    let src = coproduct(f.dom(), g.dom());
    let dst = coproduct(f.cod(), g.cod());
    let left = compose(&dst.inl, f).expect("typed");
    let right = compose(&dst.inr, g).expect("typed");
    copairing(&src, &left, &right).expect("typed")
}

pub fn terminal() -> FinSet {
    FinSet::from_labels_unchecked(vec![POINT.to_owned()])
}

pub fn initial() -> FinSet {
    FinSet::empty()
}

pub fn to_terminal(a: &FinSet) -> FinMap {
    FinMap::new_unchecked(a.clone(), terminal(), vec![0; a.len()])
}

pub fn from_initial(a: &FinSet) -> FinMap {
    FinMap::new_unchecked(FinSet::empty(), a.clone(), Vec::new())
}

#[derive(Clone, Debug)]
pub struct Exponential {
    /// `B^A`, labelled by full function graphs.
    pub obj: FinSet,
    /// The functions, in the order of `obj`.
    pub maps: Vec<FinMap>,
    /// `ev : B^A × A → B`.
    pub eval: FinMap,
    pub product: ProductSet,
}

pub fn exponential(a: &FinSet, b: &FinSet) -> Exponential {
    let mut rows: Vec<(String, FinMap)> = all_maps(a, b)
        .map(|m| {
            let label = graph_label(a.iter().zip(m.graph().iter().map(|&j| b.label(j))));
            (label, m)
        })
        .collect();
    rows.sort_by(|x, y| x.0.cmp(&y.0));
    let obj = FinSet::from_labels_unchecked(rows.iter().map(|r| r.0.clone()).collect());
    let maps: Vec<FinMap> = rows.into_iter().map(|r| r.1).collect();
    let product = product(&obj, a);
    let eval = FinMap::from_fn(product.obj.clone(), b.clone(), |k| {
        maps[product.p1.apply(k)].apply(product.p2.apply(k))
    })
    .expect("typed");
    Exponential {
        obj,
        maps,
        eval,
        product,
    }
}

/// The canonical iso `A × (B + C) → A × B + A × C` and its inverse.
pub fn distributor(a: &FinSet, b: &FinSet, c: &FinSet) -> (FinMap, FinMap) {
    let bc = coproduct(b, c);
    let lhs = product(a, &bc.obj);
    let ab = product(a, b);
    let ac = product(a, c);
    let rhs = coproduct(&ab.obj, &ac.obj);
    let forward = FinMap::from_fn(lhs.obj.clone(), rhs.obj.clone(), |k| {
        let i = lhs.p1.apply(k);
        match bc.case(lhs.p2.apply(k)) {
            Ok(j) => rhs.inl.apply(ab.index(i, j)),
            Err(j) => rhs.inr.apply(ac.index(i, j)),
        }
    })
    .expect("typed");
    let back_left = pairing(&lhs, &ab.p1, &compose(&bc.inl, &ab.p2).unwrap()).unwrap();
    let back_right = pairing(&lhs, &ac.p1, &compose(&bc.inr, &ac.p2).unwrap()).unwrap();
    let backward = copairing(&rhs, &back_left, &back_right).unwrap();
    (forward, backward)
}
