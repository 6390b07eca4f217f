//! Polynomial functor semantics `⟦P⟧(A) = Σ_{u∈U} A^{X_u}` of FinSet
//! containers, and the natural transformations induced by morphisms.

use std::collections::HashMap;

use crate::containers::{Container, FinSetCat, Morphism};
use crate::error::{Error, Result};
use crate::finbase::{choices, compose, graph_label, pair_label, FinMap, FinSet};

/// `⟦P⟧(A)`, with each element decoded as a position and a function on its
/// fibre (listed in fibre order).
#[derive(Clone, Debug)]
pub struct PolyEval {
    pub container: Container<FinSetCat>,
    pub argument: FinSet,
    pub result: FinSet,
    entries: Vec<(usize, Vec<usize>)>,
    lookup: HashMap<(usize, Vec<usize>), usize>,
}

impl PolyEval {
    pub fn len(&self) -> usize {
        self.result.len()
    }

    pub fn is_empty(&self) -> bool {
        self.result.is_empty()
    }

    /// Position and fibre function of element `k`.
    pub fn entry(&self, k: usize) -> (usize, &[usize]) {
        let (u, g) = &self.entries[k];
        (*u, g)
    }

    pub fn index_of(&self, u: usize, g: &[usize]) -> Option<usize> {
        self.lookup.get(&(u, g.to_vec())).copied()
    }
}

/// `Σ_u |A|^{|X_u|}` without building the set.
pub fn poly_cardinality(p: &Container<FinSetCat>, a: usize) -> u128 {
    p.fibres()
        .iter()
        .map(|xs| (a as u128).pow(xs.len() as u32))
        .sum()
}

pub fn poly_eval(p: &Container<FinSetCat>, a: &FinSet) -> PolyEval {
    let fibres = p.fibres();
    let total = p.total();
    let mut rows: Vec<(String, usize, Vec<usize>)> = Vec::new();
    for (u, xs) in fibres.iter().enumerate() {
        let lists = vec![(0..a.len()).collect::<Vec<_>>(); xs.len()];
        for g in choices(&lists) {
            let body = graph_label(xs.iter().zip(&g).map(|(&x, &i)| (total.label(x), a.label(i))));
            rows.push((pair_label(p.base().label(u), &body), u, g));
        }
    }
    rows.sort_by(|x, y| x.0.cmp(&y.0));
    let result = FinSet::from_labels_unchecked(rows.iter().map(|r| r.0.clone()).collect());
    let entries: Vec<(usize, Vec<usize>)> = rows.into_iter().map(|r| (r.1, r.2)).collect();
    let lookup = entries.iter().cloned().enumerate().map(|(k, e)| (e, k)).collect();
    PolyEval {
        container: p.clone(),
        argument: a.clone(),
        result,
        entries,
        lookup,
    }
}

/// `⟦P⟧(f) : ⟦P⟧(A) → ⟦P⟧(B)`, postcomposition with `f`.
pub fn poly_map_between(src: &PolyEval, dst: &PolyEval, f: &FinMap) -> Result<FinMap> {
    if src.container != dst.container || f.dom() != &src.argument || f.cod() != &dst.argument {
        return Err(Error::CodDomMismatch("map does not fit the evaluations".into()));
    }
    FinMap::from_fn(src.result.clone(), dst.result.clone(), |k| {
        let (u, g) = src.entry(k);
        let fg: Vec<usize> = g.iter().map(|&i| f.apply(i)).collect();
        dst.index_of(u, &fg).expect("image is an element")
    })
}

pub fn poly_map(p: &Container<FinSetCat>, f: &FinMap) -> Result<FinMap> {
    poly_map_between(&poly_eval(p, f.dom()), &poly_eval(p, f.cod()), f)
}

/// The component at `A` of the transformation `⟦P⟧ → ⟦Q⟧` induced by
/// `m : P → Q`: `(u, g) ↦ (φ u, g ∘ ψ_u)`.
pub fn nat_trans_between(m: &Morphism<FinSetCat>, src: &PolyEval, dst: &PolyEval) -> Result<FinMap> {
    if &src.container != m.src() || &dst.container != m.dst() || src.argument != dst.argument {
        return Err(Error::CodDomMismatch("evaluations do not fit the morphism".into()));
    }
    let p = m.src();
    let q = m.dst();
    let mut pos_in_fibre = vec![0; p.total().len()];
    for xs in p.fibres() {
        for (j, &x) in xs.iter().enumerate() {
            pos_in_fibre[x] = j;
        }
    }
    let apex = m.apex();
    let mut at: HashMap<(usize, usize), usize> = HashMap::new();
    for k in 0..apex.apex.len() {
        at.insert((apex.proj1.apply(k), apex.proj2.apply(k)), k);
    }
    let qf = q.fibres();
    FinMap::from_fn(src.result.clone(), dst.result.clone(), |k| {
        let (u, g) = src.entry(k);
        let v = m.forward().apply(u);
        let h: Vec<usize> = qf[v]
            .iter()
            .map(|&y| g[pos_in_fibre[m.backward().apply(at[&(u, y)])]])
            .collect();
        dst.index_of(v, &h).expect("image is an element")
    })
}

pub fn morphism_to_nat_trans(m: &Morphism<FinSetCat>, a: &FinSet) -> Result<FinMap> {
    nat_trans_between(m, &poly_eval(m.src(), a), &poly_eval(m.dst(), a))
}

/// `⟦Q⟧(f) ∘ η_A = η_B ∘ ⟦P⟧(f)` for `f : A → B`.
pub fn naturality_check(m: &Morphism<FinSetCat>, f: &FinMap) -> bool {
    let pa = poly_eval(m.src(), f.dom());
    let pb = poly_eval(m.src(), f.cod());
    let qa = poly_eval(m.dst(), f.dom());
    let qb = poly_eval(m.dst(), f.cod());
    let run = || -> Result<bool> {
        let left = compose(&poly_map_between(&qa, &qb, f)?, &nat_trans_between(m, &pa, &qa)?)?;
        let right = compose(&nat_trans_between(m, &pb, &qb)?, &poly_map_between(&pa, &pb, f)?)?;
        Ok(left == right)
    };
    run().unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cont(nx: usize, nu: usize, graph: Vec<usize>) -> Container<FinSetCat> {
        Container::from_map(FinMap::new(FinSet::numbered("x", nx), FinSet::numbered("u", nu), graph).unwrap())
    }

    #[test]
    fn cardinalities() {
        let a = FinSet::numbered("a", 3);
        assert_eq!(poly_eval(&cont(2, 1, vec![0, 0]), &a).len(), 9);
        assert_eq!(poly_eval(&Container::terminal(), &a).len(), 1);
        assert_eq!(poly_eval(&Container::terminal(), &FinSet::empty()).len(), 1);
        assert_eq!(poly_eval(&Container::initial(), &a).len(), 0);
        let p = cont(3, 3, vec![0, 0, 2]);
        assert_eq!(poly_eval(&p, &a).len() as u128, poly_cardinality(&p, 3));
    }

    #[test]
    fn identity_gives_identity_component() {
        let p = cont(3, 2, vec![0, 1, 1]);
        let a = FinSet::numbered("a", 2);
        let eta = morphism_to_nat_trans(&Morphism::identity(&p), &a).unwrap();
        assert_eq!(eta, FinMap::identity(&poly_eval(&p, &a).result));
    }

    #[test]
    fn naturality_on_all_small_maps() {
        let p = cont(3, 2, vec![0, 1, 1]);
        let q = cont(2, 2, vec![0, 0]);
        for m in crate::containers::all_morphisms_finset(&p, &q) {
            for f in crate::finbase::all_maps(&FinSet::numbered("a", 2), &FinSet::numbered("b", 2)) {
                assert!(naturality_check(&m, &f));
            }
        }
    }
}
