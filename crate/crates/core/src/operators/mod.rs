//! The operator algebra on containers: `×`, `+`, `⊗`, `★`, the bounded
//! `★ₚ`, and polynomial-functor evaluation.

mod lattice;
mod poly;
mod star;
mod tensor;

pub use lattice::{coproduct, distributivity, product, ProductContainer, SumContainer};
pub use poly::{
    morphism_to_nat_trans, nat_trans_between, naturality_check, poly_cardinality, poly_eval, poly_map,
    poly_map_between, PolyEval,
};
pub use star::{
    star, star_assoc_bijection, star_detailed, star_p_bounded, star_semantics_bijection, star_semantics_map,
    StarContainer,
};
pub use tensor::{tensor, tensor_distributes, tensor_product_map};

use crate::containers::{find_morphism_finset, Container, FinSetCat, Morphism};
use crate::error::{Error, Result};

/// Largest carrier accepted by [`star_meet_witness`].
pub const WITNESS_CARRIER_LIMIT: usize = 2;

/// A morphism `(P ★ Q) × R → (P × R) ★ Q`, found by exhaustive search.
pub fn star_meet_witness(
    p: &Container<FinSetCat>,
    q: &Container<FinSetCat>,
    r: &Container<FinSetCat>,
) -> Result<Morphism<FinSetCat>> {
    for c in [p, q, r] {
        if c.total().len() > WITNESS_CARRIER_LIMIT || c.base().len() > WITNESS_CARRIER_LIMIT {
            return Err(Error::SearchSpaceExceeded(format!(
                "carriers above {WITNESS_CARRIER_LIMIT} elements"
            )));
        }
    }
    let lhs = product(&star(p, q), r)?.container;
    let rhs = star(&product(p, r)?.container, q);
    find_morphism_finset(&lhs, &rhs)
        .ok_or_else(|| Error::SearchSpaceExceeded("no morphism between the composite containers".into()))
}
