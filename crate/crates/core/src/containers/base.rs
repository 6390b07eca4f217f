//! The finite categories containers live over.

use std::fmt::Debug;

use super::{BaseKind, Container, Morphism, SearchBounds, SearchOutcome};
use crate::error::Result;
use crate::finbase::{FinMap, FinSet};

#[derive(Clone, Debug)]
pub struct Pullback<B: BaseCategory> {
    pub apex: B::Obj,
    /// Projection to the domain of `left`.
    pub proj1: B::Mor,
    /// Projection to the domain of `right`.
    pub proj2: B::Mor,
    pub left: B::Mor,
    pub right: B::Mor,
}

#[derive(Clone, Debug)]
pub struct Coproduct<B: BaseCategory> {
    pub obj: B::Obj,
    pub inl: B::Mor,
    pub inr: B::Mor,
}

#[derive(Clone, Debug)]
pub struct Product<B: BaseCategory> {
    pub obj: B::Obj,
    pub p1: B::Mor,
    pub p2: B::Mor,
}

/// The decomposition `Z ≅ Z₁ + Z₂` induced by a map `m : Z → A + B`.
#[derive(Clone, Debug)]
pub struct Split<B: BaseCategory> {
    pub sum: Coproduct<B>,
    /// `Z₁ → A`, the restriction of `m` with the coprojection removed.
    pub to_left: B::Mor,
    /// `Z₂ → B`.
    pub to_right: B::Mor,
    /// `Z₁ → Z`.
    pub incl_left: B::Mor,
    /// `Z₂ → Z`.
    pub incl_right: B::Mor,
    /// `Z → Z₁ + Z₂`, inverse to the copairing of the inclusions.
    pub iso: B::Mor,
}

/// A finitely complete and cocomplete category whose objects have finite
/// carriers. All constructions are canonical: building twice gives equal
/// results.
pub trait BaseCategory: Clone + Debug + PartialEq + Eq + 'static {
    type Obj: Clone + Debug + PartialEq + Eq;
    type Mor: Clone + Debug + PartialEq + Eq;

    const KIND: BaseKind;

    fn carrier(o: &Self::Obj) -> &FinSet;
    fn dom(m: &Self::Mor) -> &Self::Obj;
    fn cod(m: &Self::Mor) -> &Self::Obj;
    fn underlying(m: &Self::Mor) -> &FinMap;

    fn check_object(o: &Self::Obj) -> Result<()>;
    fn check_morphism(m: &Self::Mor) -> Result<()>;

    fn identity(o: &Self::Obj) -> Self::Mor;
    /// `g ∘ f`.
    fn compose(g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor>;

    fn pullback(f: &Self::Mor, g: &Self::Mor) -> Result<Pullback<Self>>;
    /// The unique `γ` with `proj2 ∘ γ = alpha` and `proj1 ∘ γ = beta`.
    fn mediating(pb: &Pullback<Self>, alpha: &Self::Mor, beta: &Self::Mor) -> Result<Self::Mor>;

    fn initial() -> Self::Obj;
    fn terminal() -> Self::Obj;
    fn to_terminal(o: &Self::Obj) -> Self::Mor;
    fn from_initial(o: &Self::Obj) -> Self::Mor;

    fn coproduct(a: &Self::Obj, b: &Self::Obj) -> Coproduct<Self>;
    fn copair(cp: &Coproduct<Self>, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;
    fn product(a: &Self::Obj, b: &Self::Obj) -> Product<Self>;
    fn pair(prod: &Product<Self>, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;

    /// Removes the left coprojection from a map landing in the left summand.
    fn factor_left(cp: &Coproduct<Self>, m: &Self::Mor) -> Result<Self::Mor>;
    fn factor_right(cp: &Coproduct<Self>, m: &Self::Mor) -> Result<Self::Mor>;
    fn split(cp: &Coproduct<Self>, m: &Self::Mor) -> Result<Split<Self>>;

    /// `A × (B + C) → A × B + A × C` and its inverse.
    fn distributor(a: &Self::Obj, b: &Self::Obj, c: &Self::Obj) -> (Self::Mor, Self::Mor);

    /// The inverse of a map whose carrier map is bijective.
    fn invert_iso(m: &Self::Mor) -> Result<Self::Mor>;

    fn find_morphism(p: &Container<Self>, q: &Container<Self>, bounds: SearchBounds) -> SearchOutcome<Morphism<Self>>;
}

/// `f × g`.
pub fn product_map<B: BaseCategory>(f: &B::Mor, g: &B::Mor) -> Result<B::Mor> {
    let src = B::product(B::dom(f), B::dom(g));
    let dst = B::product(B::cod(f), B::cod(g));
    B::pair(&dst, &B::compose(f, &src.p1)?, &B::compose(g, &src.p2)?)
}

/// `f + g`.
pub fn coproduct_map<B: BaseCategory>(f: &B::Mor, g: &B::Mor) -> Result<B::Mor> {
    let src = B::coproduct(B::dom(f), B::dom(g));
    let dst = B::coproduct(B::cod(f), B::cod(g));
    B::copair(&src, &B::compose(&dst.inl, f)?, &B::compose(&dst.inr, g)?)
}

/// `(A × B) × C → A × (B × C)`.
pub fn associator<B: BaseCategory>(a: &B::Obj, b: &B::Obj, c: &B::Obj) -> Result<B::Mor> {
    let ab = B::product(a, b);
    let lhs = B::product(&ab.obj, c);
    let bc = B::product(b, c);
    let rhs = B::product(a, &bc.obj);
    let to_a = B::compose(&ab.p1, &lhs.p1)?;
    let to_b = B::compose(&ab.p2, &lhs.p1)?;
    let to_bc = B::pair(&bc, &to_b, &lhs.p2)?;
    B::pair(&rhs, &to_a, &to_bc)
}

/// `A × B → B × A`.
pub fn symmetry<B: BaseCategory>(a: &B::Obj, b: &B::Obj) -> Result<B::Mor> {
    let ab = B::product(a, b);
    let ba = B::product(b, a);
    B::pair(&ba, &ab.p2, &ab.p1)
}

pub fn is_iso<B: BaseCategory>(m: &B::Mor) -> bool {
    B::underlying(m).is_bijective()
}
