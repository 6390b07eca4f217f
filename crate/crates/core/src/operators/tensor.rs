//! The parallel product `P ⊗ Q : X × Y → U × V`.

use super::lattice::{bundle_iso_morphisms, coproduct, product};
use crate::containers::base::{associator, product_map};
use crate::containers::{BaseCategory, Container, Morphism};
use crate::error::Result;

pub fn tensor<B: BaseCategory>(p: &Container<B>, q: &Container<B>) -> Result<Container<B>> {
    Container::new(product_map::<B>(p.bundle(), q.bundle())?)
}

/// `A × (B × C) → (A × B) × C`.
pub(crate) fn associator_inv<B: BaseCategory>(a: &B::Obj, b: &B::Obj, c: &B::Obj) -> Result<B::Mor> {
    let bc = B::product(b, c);
    let lhs = B::product(a, &bc.obj);
    let ab = B::product(a, b);
    let rhs = B::product(&ab.obj, c);
    let to_b = B::compose(&bc.p1, &lhs.p2)?;
    let to_c = B::compose(&bc.p2, &lhs.p2)?;
    let to_ab = B::pair(&ab, &lhs.p1, &to_b)?;
    B::pair(&rhs, &to_ab, &to_c)
}

/// `P ⊗ (Q + R) ≅ P ⊗ Q + P ⊗ R`, both directions.
pub fn tensor_distributes<B: BaseCategory>(
    p: &Container<B>,
    q: &Container<B>,
    r: &Container<B>,
) -> Result<(Morphism<B>, Morphism<B>)> {
    let lhs = tensor(p, &coproduct(q, r)?.container)?;
    let rhs = coproduct(&tensor(p, q)?, &tensor(p, r)?)?.container;
    let (a, a_inv) = B::distributor(p.base(), q.base(), r.base());
    let (b, b_inv) = B::distributor(p.total(), q.total(), r.total());
    bundle_iso_morphisms(&lhs, &rhs, (&a, &a_inv), (&b, &b_inv))
}

/// `(P ⊗ Q) × R → P ⊗ (Q × R)`. Positions are reassociated; an answer
/// `(x, y, w)` comes back as itself, and an answer `(x, (v, z))` to the `R`
/// question is returned as `((P x, v), z)`.
pub fn tensor_product_map<B: BaseCategory>(p: &Container<B>, q: &Container<B>, r: &Container<B>) -> Result<Morphism<B>> {
    let src = product(&tensor(p, q)?, r)?.container;
    let dst = tensor(p, &product(q, r)?.container)?;
    let (u, v, w) = (p.base(), q.base(), r.base());
    let (x, y, z) = (p.total(), q.total(), r.total());
    let forward = associator::<B>(u, v, w)?;
    let apex = B::pullback(&forward, dst.bundle())?;

    let yw = B::product(y, w).obj;
    let vz = B::product(v, z).obj;
    let (dist, _) = B::distributor(x, &yw, &vz);
    let xy_w = B::product(&B::product(x, y).obj, w).obj;
    let uv_z = B::product(&B::product(u, v).obj, z).obj;
    let out = B::coproduct(&xy_w, &uv_z);
    let left = B::compose(&out.inl, &associator_inv::<B>(x, y, w)?)?;
    let answer = product_map::<B>(p.bundle(), &B::identity(&vz))?;
    let right = B::compose(&out.inr, &B::compose(&associator_inv::<B>(u, v, z)?, &answer)?)?;
    let parts = B::coproduct(&B::product(x, &yw).obj, &B::product(x, &vz).obj);
    let c = B::compose(&B::copair(&parts, &left, &right)?, &dist)?;
    let backward = B::compose(&c, &apex.proj2)?;
    Morphism::new(src, dst, forward, backward)
}
