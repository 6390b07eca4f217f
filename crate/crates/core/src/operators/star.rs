//! The composition product `P ★ Q` over FinSet and its bounded variant
//! `P ★ₚ Q` over PAsm, where the function part of a position carries a
//! tracking code.

use std::collections::HashMap;

use super::poly::{poly_eval, poly_map_between, PolyEval};
use crate::assemblies::{is_partitioned, search_tracking_memo, Assembly, TrackedMap};
use crate::containers::{Container, FinSetCat, PAsmCat};
use crate::error::{Error, Result};
use crate::finbase::{choices, compose, graph_label, pair_label, FinMap, FinSet};
use crate::sk::{pair_value, standard_codes, EvalBudget, MemoApply};

/// `P ★ Q` with its positions and directions decoded.
#[derive(Clone, Debug)]
pub struct StarContainer {
    pub container: Container<FinSetCat>,
    /// `(v, f)` with `f` listed along the fibre of `Q` over `v`.
    pub positions: Vec<(usize, Vec<usize>)>,
    /// `(position, y, x)` with `x` over `f(y)`.
    pub directions: Vec<(usize, usize, usize)>,
}

fn position_label(q: &Container<FinSetCat>, p: &Container<FinSetCat>, v: usize, ys: &[usize], f: &[usize]) -> String {
    let body = graph_label(ys.iter().zip(f).map(|(&y, &u)| (q.total().label(y), p.base().label(u))));
    pair_label(q.base().label(v), &body)
}

/// Positions `(v, f : Y_v → U)`; the directions over `(v, f)` are the pairs
/// `(y, x)` with `y ∈ Y_v` and `x ∈ X_{f(y)}`.
pub fn star_detailed(p: &Container<FinSetCat>, q: &Container<FinSetCat>) -> StarContainer {
    let pf = p.fibres();
    let qf = q.fibres();
    let mut pos_rows: Vec<(String, usize, Vec<usize>)> = Vec::new();
    for (v, ys) in qf.iter().enumerate() {
        let lists = vec![(0..p.base().len()).collect::<Vec<_>>(); ys.len()];
        for f in choices(&lists) {
            pos_rows.push((position_label(q, p, v, ys, &f), v, f));
        }
    }
    pos_rows.sort_by(|a, b| a.0.cmp(&b.0));
    let base = FinSet::from_labels_unchecked(pos_rows.iter().map(|r| r.0.clone()).collect());

    let mut dir_rows: Vec<(String, usize, usize, usize)> = Vec::new();
    for (n, (label, v, f)) in pos_rows.iter().enumerate() {
        for (&y, &u) in qf[*v].iter().zip(f) {
            for &x in &pf[u] {
                let d = pair_label(label, &pair_label(q.total().label(y), p.total().label(x)));
                dir_rows.push((d, n, y, x));
            }
        }
    }
    dir_rows.sort_by(|a, b| a.0.cmp(&b.0));
    let total = FinSet::from_labels_unchecked(dir_rows.iter().map(|r| r.0.clone()).collect());
    let bundle = FinMap::new(total, base, dir_rows.iter().map(|r| r.1).collect()).expect("in range");
    StarContainer {
        container: Container::from_map(bundle),
        positions: pos_rows.into_iter().map(|r| (r.1, r.2)).collect(),
        directions: dir_rows.into_iter().map(|r| (r.1, r.2, r.3)).collect(),
    }
}

pub fn star(p: &Container<FinSetCat>, q: &Container<FinSetCat>) -> Container<FinSetCat> {
    star_detailed(p, q).container
}

/// The bijection `⟦P ★ Q⟧(A) → ⟦Q⟧(⟦P⟧(A))` sending `((v, f), g)` to
/// `(v, y ↦ (f y, g(y, -)))`, computed from given evaluations.
pub fn star_semantics_map(s: &StarContainer, q: &Container<FinSetCat>, lhs: &PolyEval, pa: &PolyEval, rhs: &PolyEval) -> Result<FinMap> {
    if lhs.container != s.container || rhs.container != *q || rhs.argument != pa.result || lhs.argument != pa.argument {
        return Err(Error::CodDomMismatch("evaluations do not fit the composition product".into()));
    }
    let p = &pa.container;
    let pf = p.fibres();
    let qf = q.fibres();
    let star_fibres = s.container.fibres();
    let mut slot: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for fibre in &star_fibres {
        for (j, &d) in fibre.iter().enumerate() {
            slot.insert(s.directions[d], j);
        }
    }
    FinMap::from_fn(lhs.result.clone(), rhs.result.clone(), |k| {
        let (n, g) = lhs.entry(k);
        let (v, f) = &s.positions[n];
        let h: Vec<usize> = qf[*v]
            .iter()
            .zip(f)
            .map(|(&y, &u)| {
                let gx: Vec<usize> = pf[u].iter().map(|&x| g[slot[&(n, y, x)]]).collect();
                pa.index_of(u, &gx).expect("element of ⟦P⟧(A)")
            })
            .collect();
        rhs.index_of(*v, &h).expect("element of ⟦Q⟧(⟦P⟧(A))")
    })
}

pub fn star_semantics_bijection(p: &Container<FinSetCat>, q: &Container<FinSetCat>, a: &FinSet) -> Result<FinMap> {
    let s = star_detailed(p, q);
    let pa = poly_eval(p, a);
    let lhs = poly_eval(&s.container, a);
    let rhs = poly_eval(q, &pa.result);
    star_semantics_map(&s, q, &lhs, &pa, &rhs)
}

/// `⟦(P ★ Q) ★ R⟧(A) → ⟦P ★ (Q ★ R)⟧(A)`, assembled from the semantic
/// bijections through `⟦R⟧(⟦Q⟧(⟦P⟧(A)))`.
pub fn star_assoc_bijection(
    p: &Container<FinSetCat>,
    q: &Container<FinSetCat>,
    r: &Container<FinSetCat>,
    a: &FinSet,
) -> Result<FinMap> {
    let pq = star_detailed(p, q);
    let qr = star_detailed(q, r);
    let pq_r = star_detailed(&pq.container, r);
    let p_qr = star_detailed(p, &qr.container);

    let pa = poly_eval(p, a);
    let pqa = poly_eval(&pq.container, a);
    let qpa = poly_eval(q, &pa.result);
    let to_qpa = star_semantics_map(&pq, q, &pqa, &pa, &qpa)?;

    let left = poly_eval(&pq_r.container, a);
    let r_pqa = poly_eval(r, &pqa.result);
    let step1 = star_semantics_map(&pq_r, r, &left, &pqa, &r_pqa)?;
    let r_qpa = poly_eval(r, &qpa.result);
    let step2 = poly_map_between(&r_pqa, &r_qpa, &to_qpa)?;

    let qr_pa = poly_eval(&qr.container, &pa.result);
    let step3 = star_semantics_map(&qr, r, &qr_pa, &qpa, &r_qpa)?;
    let right = poly_eval(&p_qr.container, a);
    let step4 = star_semantics_map(&p_qr, &qr.container, &right, &pa, &qr_pa)?;

    let inv = |m: &FinMap| {
        m.inverse()
            .ok_or_else(|| Error::InvalidRep("semantic map is not a bijection".into()))
    };
    let via = compose(&step2, &step1)?;
    compose(&inv(&step4)?, &compose(&inv(&step3)?, &via)?)
}

/// `P ★ₚ Q`: positions `(e, (v, f))` where `e` is the least code of size at
/// most `size_bound` tracking `f : Y_v → U`, realized by `pair(r_v, e)`.
/// Functions with no tracking code inside the bound are left out.
pub fn star_p_bounded(
    p: &Container<PAsmCat>,
    q: &Container<PAsmCat>,
    size_bound: usize,
    budget: EvalBudget,
) -> Result<Container<PAsmCat>> {
    let (u, x, v, y) = (p.base(), p.total(), q.base(), q.total());
    if ![u, x, v, y].into_iter().all(is_partitioned) {
        return Err(Error::IllFormedAssembly("composition product needs partitioned assemblies".into()));
    }
    let pf = p.fibres();
    let qf = q.fibres();
    let mut memo = MemoApply::new(budget);
    let mut pos_rows = Vec::new();
    for (vi, ys) in qf.iter().enumerate() {
        let fibre = y.subset(ys);
        let lists = vec![(0..u.len()).collect::<Vec<_>>(); ys.len()];
        for f in choices(&lists) {
            let fmap = FinMap::new(fibre.carrier().clone(), u.carrier().clone(), f.clone()).expect("in range");
            let Some(e) = search_tracking_memo(&fibre, u, &fmap, size_bound, &mut memo) else {
                continue;
            };
            let body = graph_label(ys.iter().zip(&f).map(|(&yi, &ui)| (y.carrier().label(yi), u.carrier().label(ui))));
            let label = pair_label(&e.to_string(), &pair_label(v.carrier().label(vi), &body));
            let realizer = pair_value(v.realizer(vi), &e);
            pos_rows.push((label, vi, f, realizer));
        }
    }
    pos_rows.sort_by(|a, b| a.0.cmp(&b.0));
    let positions = Assembly::partitioned(
        FinSet::from_labels_unchecked(pos_rows.iter().map(|r| r.0.clone()).collect()),
        pos_rows.iter().map(|r| r.3.clone()).collect(),
    )?;

    let mut dir_rows = Vec::new();
    for (n, (label, vi, f, realizer)) in pos_rows.iter().enumerate() {
        for (&yi, &ui) in qf[*vi].iter().zip(f) {
            for &xi in &pf[ui] {
                let d = pair_label(label, &pair_label(y.carrier().label(yi), x.carrier().label(xi)));
                let r = pair_value(realizer, &pair_value(y.realizer(yi), x.realizer(xi)));
                dir_rows.push((d, n, r));
            }
        }
    }
    dir_rows.sort_by(|a, b| a.0.cmp(&b.0));
    let directions = Assembly::partitioned(
        FinSet::from_labels_unchecked(dir_rows.iter().map(|r| r.0.clone()).collect()),
        dir_rows.iter().map(|r| r.2.clone()).collect(),
    )?;
    let map = FinMap::new(
        directions.carrier().clone(),
        positions.carrier().clone(),
        dir_rows.iter().map(|r| r.1).collect(),
    )?;
    let bundle = TrackedMap::verified(directions, positions, map, standard_codes().fst.clone(), budget)?;
    Container::new(bundle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assemblies::Assembly;
    use crate::sk::Term;

    fn cont(nx: usize, nu: usize, graph: Vec<usize>) -> Container<FinSetCat> {
        Container::from_map(FinMap::new(FinSet::numbered("x", nx), FinSet::numbered("u", nu), graph).unwrap())
    }

    #[test]
    fn two_positions_two_directions() {
        let p = cont(2, 1, vec![0, 0]);
        let q = cont(2, 2, vec![0, 1]);
        let s = star(&p, &q);
        assert_eq!(s.base().len(), 2);
        assert!(s.fibres().iter().all(|f| f.len() == 2));
    }

    #[test]
    fn star_with_terminal() {
        let p = cont(2, 2, vec![0, 1]);
        let s = star(&p, &Container::terminal());
        assert_eq!(s.base().len(), 1);
        assert_eq!(s.total().len(), 0);
    }

    #[test]
    fn semantic_bijection_small() {
        let p = cont(3, 2, vec![0, 1, 1]);
        let q = cont(2, 2, vec![0, 0]);
        for n in 0..=2 {
            let m = star_semantics_bijection(&p, &q, &FinSet::numbered("a", n)).unwrap();
            assert!(m.is_bijective());
        }
    }

    #[test]
    fn associativity_small() {
        let p = cont(1, 1, vec![0]);
        let q = cont(2, 2, vec![0, 1]);
        let r = cont(2, 1, vec![0, 0]);
        let m = star_assoc_bijection(&p, &q, &r, &FinSet::numbered("a", 2)).unwrap();
        assert!(m.is_bijective());
    }

    fn pasm_id(codes: &[&str]) -> Container<PAsmCat> {
        let a = Assembly::partitioned(
            FinSet::numbered("a", codes.len()),
            codes.iter().map(|c| Term::parse(c).unwrap()).collect(),
        )
        .unwrap();
        Container::identity_on(&a).unwrap()
    }

    #[test]
    fn bounded_star_empty_fibres() {
        let q = Container::<PAsmCat>::terminal();
        let p = pasm_id(&["K"]);
        let s = star_p_bounded(&p, &q, 3, EvalBudget::default()).unwrap();
        assert_eq!(s.base().len(), 1);
        assert_eq!(s.total().len(), 0);
    }

    #[test]
    fn bounded_star_monotone() {
        let p = pasm_id(&["K", "S"]);
        let q = pasm_id(&["K", "S K"]);
        let small = star_p_bounded(&p, &q, 2, EvalBudget::default()).unwrap();
        let large = star_p_bounded(&p, &q, 5, EvalBudget::default()).unwrap();
        let strip = |c: &Container<PAsmCat>| -> Vec<String> {
            c.base().carrier().iter().map(|l| l.split_once(",(").unwrap().1.to_owned()).collect()
        };
        let (s, l) = (strip(&small), strip(&large));
        assert!(s.iter().all(|x| l.contains(x)));
        assert!(l.len() >= s.len());
    }
}
