//! Seeded generators for random finite data.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::containers::{all_morphisms_finset, Container, FinSetCat, Morphism};
use crate::finbase::{FinMap, FinSet};
use crate::sk::Term;
use crate::weihrauch::FiniteProblem;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A container with at most `max_total` directions and `max_base` positions.
pub fn container(rng: &mut impl Rng, max_total: usize, max_base: usize) -> Container<FinSetCat> {
    let nu = rng.gen_range(0..=max_base);
    let nx = if nu == 0 { 0 } else { rng.gen_range(0..=max_total) };
    let graph = (0..nx).map(|_| rng.gen_range(0..nu)).collect();
    Container::from_map(FinMap::new(FinSet::numbered("x", nx), FinSet::numbered("u", nu), graph).expect("in range"))
}

/// An answerable container; `min_base` positions at least.
pub fn answerable_container(rng: &mut impl Rng, min_base: usize, max_total: usize, max_base: usize) -> Container<FinSetCat> {
    let hi = max_base.min(max_total).max(min_base);
    let nu = rng.gen_range(min_base..=hi);
    let nx = if nu == 0 { 0 } else { rng.gen_range(nu..=max_total.max(nu)) };
    let mut graph: Vec<usize> = (0..nu).chain((nu..nx).map(|_| rng.gen_range(0..nu))).collect();
    graph.shuffle(rng);
    Container::from_map(FinMap::new(FinSet::numbered("x", nx), FinSet::numbered("u", nu), graph).expect("in range"))
}

/// Every container with at most `max` directions and positions, one per
/// bundle graph.
pub fn all_containers(max: usize) -> Vec<Container<FinSetCat>> {
    let mut out = Vec::new();
    for nu in 0..=max {
        for nx in 0..=max {
            let base = FinSet::numbered("u", nu);
            for m in crate::finbase::all_maps(&FinSet::numbered("x", nx), &base) {
                out.push(Container::from_map(m));
            }
        }
    }
    out
}

pub fn problem(rng: &mut impl Rng, max_inputs: usize, max_outputs: usize) -> FiniteProblem {
    let ni = rng.gen_range(0..=max_inputs);
    let no = rng.gen_range(0..=max_outputs);
    let solutions = (0..ni)
        .map(|_| (0..no).filter(|_| rng.gen_bool(0.5)).collect::<BTreeSet<_>>())
        .collect();
    FiniteProblem::new(FinSet::numbered("i", ni), FinSet::numbered("o", no), solutions).expect("in range")
}

/// A uniformly shaped random term with between 1 and `max_size` leaves.
pub fn term(rng: &mut impl Rng, max_size: usize) -> Term {
    let n = rng.gen_range(1..=max_size.max(1));
    term_of_size(rng, n)
}

fn term_of_size(rng: &mut impl Rng, n: usize) -> Term {
    if n == 1 {
        return if rng.gen_bool(0.5) { Term::S } else { Term::K };
    }
    let left = rng.gen_range(1..n);
    Term::app(term_of_size(rng, left), term_of_size(rng, n - left))
}

fn pick_morphism(rng: &mut impl Rng, p: &Container<FinSetCat>, q: &Container<FinSetCat>) -> Option<Morphism<FinSetCat>> {
    all_morphisms_finset(p, q).choose(rng).cloned()
}

/// Composable `f : P → Q`, `g : Q → R`, `h : R → S` with carriers at most
/// `max`, retrying until all three hom-sets are inhabited.
pub fn composable_triple(
    rng: &mut impl Rng,
    max: usize,
) -> (Morphism<FinSetCat>, Morphism<FinSetCat>, Morphism<FinSetCat>) {
    loop {
        let cs: Vec<_> = (0..4).map(|_| container(rng, max, max)).collect();
        let f = pick_morphism(rng, &cs[0], &cs[1]);
        let g = pick_morphism(rng, &cs[1], &cs[2]);
        let h = pick_morphism(rng, &cs[2], &cs[3]);
        if let (Some(f), Some(g), Some(h)) = (f, g, h) {
            return (f, g, h);
        }
    }
}
