//! Finite sets and functions: the decidable ambient category.

mod limits;
mod map;
mod set;
mod slice;

pub use limits::{
    coproduct, coproduct_map, copairing, distributor, exponential, from_initial, initial, mediating, pairing,
    product, product_map, pullback, terminal, to_terminal, CoproductSet, Exponential, ProductSet,
    PullbackResult, POINT,
};
pub use map::{all_maps, compose, is_surjective, AllMaps, FinMap};
pub(crate) use map::choices;
pub use set::{is_valid_label, FinSet};
pub(crate) use set::{graph_label, pair_label};
pub use slice::{
    all_slices, pi_along, pi_transpose, reindex, sigma_along, sigma_transpose, slice_homs, SliceObj,
};

/// Pullback stability checked directly: `f` is stable if pulling it back
/// along every map from a set of at most `max` elements yields a map that is
/// surjective. Used to cross-check [`is_surjective`].
pub fn is_pullback_stable_epi(f: &FinMap, max: usize) -> bool {
    for n in 0..=max {
        let z = FinSet::numbered("z", n);
        for g in all_maps(&z, f.cod()) {
            let pb = pullback(&g, f).expect("typed");
            if !pb.proj1.is_surjective() {
                return false;
            }
        }
    }
    // Along each point 1 → cod the pullback is the fibre, so for max ≥ 1
    // this loop alone decides surjectivity.
    true
}
