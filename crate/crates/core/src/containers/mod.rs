//! Containers (bundles `P : X → U`) over a base category and their
//! morphisms, stored on the canonical pullback apex.

use std::fmt;

use serde::{Deserialize, Serialize};

pub mod base;
mod finset_base;
mod pasm_base;
pub mod search;

pub use base::{BaseCategory, Coproduct, Product, Pullback, Split};
pub use finset_base::FinSetCat;
pub use pasm_base::PAsmCat;
pub use search::{all_morphisms_finset, find_morphism_finset, find_morphism_pasm};

use crate::error::{Error, Result};
use crate::finbase::FinMap;
use crate::sk::{EvalBudget, DEFAULT_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BaseKind {
    FinSet,
    PAsm,
}

impl fmt::Display for BaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseKind::FinSet => f.write_str("FinSet"),
            BaseKind::PAsm => f.write_str("PAsm"),
        }
    }
}

pub const DEFAULT_SIZE_BOUND: usize = 7;

/// Limits for code searches over PAsm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub size_bound: usize,
    pub budget: EvalBudget,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            size_bound: DEFAULT_SIZE_BOUND,
            budget: EvalBudget::new(DEFAULT_BUDGET).expect("positive"),
        }
    }
}

/// Result of a morphism search. Over FinSet the search is exhaustive and
/// `NotReducible` is definitive; over PAsm a miss is only reported with the
/// bounds it was observed at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<M> {
    Found(M),
    NotReducible,
    UnknownAtBound { bound: usize, budget: u64 },
}

impl<M> SearchOutcome<M> {
    pub fn found(&self) -> Option<&M> {
        match self {
            SearchOutcome::Found(m) => Some(m),
            _ => None,
        }
    }

    pub fn into_found(self) -> Option<M> {
        match self {
            SearchOutcome::Found(m) => Some(m),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn map<N>(self, f: impl FnOnce(M) -> N) -> SearchOutcome<N> {
        match self {
            SearchOutcome::Found(m) => SearchOutcome::Found(f(m)),
            SearchOutcome::NotReducible => SearchOutcome::NotReducible,
            SearchOutcome::UnknownAtBound { bound, budget } => SearchOutcome::UnknownAtBound { bound, budget },
        }
    }
}

/// A bundle `P : X → U`; `U` holds the positions, `X` the directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Container<B: BaseCategory> {
    bundle: B::Mor,
}

impl<B: BaseCategory> Container<B> {
    pub fn new(bundle: B::Mor) -> Result<Self> {
        B::check_morphism(&bundle).map_err(|e| match e {
            Error::UnverifiedTracking => Error::UnverifiedTracking,
            other => Error::IllTyped(other.to_string()),
        })?;
        Ok(Container { bundle })
    }

    pub fn kind(&self) -> BaseKind {
        B::KIND
    }

    pub fn bundle(&self) -> &B::Mor {
        &self.bundle
    }

    pub fn total(&self) -> &B::Obj {
        B::dom(&self.bundle)
    }

    pub fn base(&self) -> &B::Obj {
        B::cod(&self.bundle)
    }

    pub fn map(&self) -> &FinMap {
        B::underlying(&self.bundle)
    }

    /// Directions over each position.
    pub fn fibres(&self) -> Vec<Vec<usize>> {
        self.map().fibres()
    }

    /// Every position has at least one direction.
    pub fn is_answerable(&self) -> bool {
        self.map().is_surjective()
    }

    /// `0 → 0`.
    pub fn initial() -> Self {
        Container {
            bundle: B::identity(&B::initial()),
        }
    }

    /// `0 → 1`.
    pub fn terminal() -> Self {
        Container {
            bundle: B::from_initial(&B::terminal()),
        }
    }

    /// `id : 1 → 1`, the unit of the tensor.
    pub fn unit() -> Self {
        Container {
            bundle: B::identity(&B::terminal()),
        }
    }

    pub fn identity_on(obj: &B::Obj) -> Result<Self> {
        Container::new(B::identity(obj))
    }
}

impl Container<FinSetCat> {
    pub fn from_map(map: FinMap) -> Self {
        Container { bundle: map }
    }
}

/// A morphism with its backward part on the canonical apex, the pullback
/// of the target bundle along the forward map. Equality is equality of the
/// underlying data, which decides the quotient on representatives.
#[derive(Clone, Debug)]
pub struct Morphism<B: BaseCategory> {
    src: Container<B>,
    dst: Container<B>,
    forward: B::Mor,
    backward: B::Mor,
    apex: Pullback<B>,
}

impl<B: BaseCategory> PartialEq for Morphism<B> {
    fn eq(&self, other: &Self) -> bool {
        self.src == other.src && self.dst == other.dst && self.forward == other.forward && self.backward == other.backward
    }
}

impl<B: BaseCategory> Eq for Morphism<B> {}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidRep(msg.into())
}

impl<B: BaseCategory> Morphism<B> {
    /// Validates `(forward, backward)` with `backward` on the canonical
    /// apex.
    pub fn new(src: Container<B>, dst: Container<B>, forward: B::Mor, backward: B::Mor) -> Result<Self> {
        if B::dom(&forward) != src.base() || B::cod(&forward) != dst.base() {
            return Err(invalid("forward map is not typed between the bases"));
        }
        B::check_morphism(&forward).map_err(|e| invalid(format!("forward: {e}")))?;
        B::check_morphism(&backward).map_err(|e| invalid(format!("backward: {e}")))?;
        let apex = B::pullback(&forward, dst.bundle())?;
        if B::dom(&backward) != &apex.apex || B::cod(&backward) != src.total() {
            return Err(invalid("backward map is not typed from the canonical apex"));
        }
        let tri = crate::finbase::compose(src.map(), B::underlying(&backward))?;
        if &tri != B::underlying(&apex.proj1) {
            return Err(invalid("backward map leaves the fibre over its position"));
        }
        Ok(Morphism {
            src,
            dst,
            forward,
            backward,
            apex,
        })
    }

    pub fn src(&self) -> &Container<B> {
        &self.src
    }

    pub fn dst(&self) -> &Container<B> {
        &self.dst
    }

    pub fn forward(&self) -> &B::Mor {
        &self.forward
    }

    pub fn backward(&self) -> &B::Mor {
        &self.backward
    }

    pub fn apex(&self) -> &Pullback<B> {
        &self.apex
    }

    pub fn identity(p: &Container<B>) -> Self {
        let forward = B::identity(p.base());
        let apex = B::pullback(&forward, p.bundle()).expect("typed");
        let backward = apex.proj2.clone();
        Morphism::new(p.clone(), p.clone(), forward, backward).expect("identity is valid")
    }

    /// `m2 ∘ m1`: the forward maps compose; the backward map carries a
    /// direction `(u, z)` to `(φ u, z)`, applies `β`, then `ψ`.
    pub fn compose(m2: &Morphism<B>, m1: &Morphism<B>) -> Result<Self> {
        if m1.dst != m2.src {
            return Err(Error::TypeMismatch("target of the first is not the source of the second".into()));
        }
        let forward = B::compose(&m2.forward, &m1.forward)?;
        let apex = B::pullback(&forward, m2.dst.bundle())?;
        let phi_u = B::compose(&m1.forward, &apex.proj1)?;
        let med2 = B::mediating(&m2.apex, &apex.proj2, &phi_u)?;
        let y = B::compose(&m2.backward, &med2)?;
        let med1 = B::mediating(&m1.apex, &y, &apex.proj1)?;
        let chi = B::compose(&m1.backward, &med1)?;
        Morphism::new(m1.src.clone(), m2.dst.clone(), forward, chi)
    }

    /// A morphism whose forward map is an identity.
    pub fn is_vertical(&self) -> bool {
        B::underlying(&self.forward) == &FinMap::identity(B::carrier(self.src.base()))
    }

    /// A morphism whose backward map is a bijection.
    pub fn is_horizontal(&self) -> bool {
        B::underlying(&self.backward).is_bijective()
    }

    /// Splits `self` as a vertical morphism into `φ*Q` followed by the
    /// horizontal morphism `φ*Q → Q`.
    pub fn factorize(&self) -> Result<(Morphism<B>, Morphism<B>)> {
        let (mid, horizontal) = horizontal(&self.forward, &self.dst)?;
        let forward = B::identity(self.src.base());
        let apex = B::pullback(&forward, mid.bundle())?;
        let backward = B::compose(&self.backward, &apex.proj2)?;
        let vertical = Morphism::new(self.src.clone(), mid, forward, backward)?;
        Ok((vertical, horizontal))
    }
}

/// The reindexed container `φ*Q` and the horizontal morphism `(φ, id)`
/// from it to `Q`.
pub fn horizontal<B: BaseCategory>(phi: &B::Mor, q: &Container<B>) -> Result<(Container<B>, Morphism<B>)> {
    let pb = B::pullback(phi, q.bundle())?;
    let mid = Container::new(pb.proj1.clone())?;
    let m = Morphism::new(mid.clone(), q.clone(), phi.clone(), B::identity(&pb.apex))?;
    Ok((mid, m))
}

/// A morphism representative on an arbitrary pullback apex.
#[derive(Clone, Debug)]
pub struct MorphismRep<B: BaseCategory> {
    pub src: Container<B>,
    pub dst: Container<B>,
    pub forward: B::Mor,
    pub apex: B::Obj,
    /// `apex → base(src)`.
    pub proj1: B::Mor,
    /// `apex → total(dst)`.
    pub proj2: B::Mor,
    pub backward: B::Mor,
    /// `canonical apex → apex`, when known; otherwise it is computed.
    pub apex_iso: Option<B::Mor>,
}

impl<B: BaseCategory> MorphismRep<B> {
    pub fn from_morphism(m: &Morphism<B>) -> Self {
        MorphismRep {
            src: m.src.clone(),
            dst: m.dst.clone(),
            forward: m.forward.clone(),
            apex: m.apex.apex.clone(),
            proj1: m.apex.proj1.clone(),
            proj2: m.apex.proj2.clone(),
            backward: m.backward.clone(),
            apex_iso: Some(B::identity(&m.apex.apex)),
        }
    }

    /// Checks typing, commutation and that the apex is a pullback, and
    /// returns the comparison `canonical apex → apex`.
    fn comparison(&self) -> Result<B::Mor> {
        if B::dom(&self.forward) != self.src.base() || B::cod(&self.forward) != self.dst.base() {
            return Err(invalid("forward map is not typed between the bases"));
        }
        for (name, m) in [("forward", &self.forward), ("proj1", &self.proj1), ("proj2", &self.proj2), ("backward", &self.backward)] {
            B::check_morphism(m).map_err(|e| invalid(format!("{name}: {e}")))?;
        }
        if B::dom(&self.proj1) != &self.apex
            || B::dom(&self.proj2) != &self.apex
            || B::dom(&self.backward) != &self.apex
            || B::cod(&self.proj1) != self.src.base()
            || B::cod(&self.proj2) != self.dst.total()
            || B::cod(&self.backward) != self.src.total()
        {
            return Err(invalid("apex maps are mistyped"));
        }
        let canon = B::pullback(&self.forward, self.dst.bundle())?;
        let to_canon = B::mediating(&canon, &self.proj2, &self.proj1)
            .map_err(|_| invalid("apex square does not commute"))?;
        if !B::underlying(&to_canon).is_bijective() {
            return Err(invalid("apex is not a pullback"));
        }
        let theta = match &self.apex_iso {
            Some(t) => {
                if B::dom(t) != &canon.apex || B::cod(t) != &self.apex {
                    return Err(invalid("apex iso is mistyped"));
                }
                B::check_morphism(t).map_err(|e| invalid(format!("apex iso: {e}")))?;
                let round = B::compose(&to_canon, t)?;
                if B::underlying(&round) != &FinMap::identity(B::carrier(&canon.apex)) {
                    return Err(invalid("apex iso is not the comparison"));
                }
                t.clone()
            }
            None => B::invert_iso(&to_canon)?,
        };
        let tri = crate::finbase::compose(self.src.map(), B::underlying(&self.backward))?;
        if &tri != B::underlying(&self.proj1) {
            return Err(invalid("backward map leaves the fibre over its position"));
        }
        Ok(theta)
    }

    pub fn validate(&self) -> bool {
        self.comparison().is_ok()
    }

    /// Re-expresses the backward map on the canonical apex.
    pub fn normalize(&self) -> Result<Morphism<B>> {
        let theta = self.comparison()?;
        let backward = B::compose(&self.backward, &theta)?;
        Morphism::new(self.src.clone(), self.dst.clone(), self.forward.clone(), backward)
    }
}

pub fn validate_rep<B: BaseCategory>(r: &MorphismRep<B>) -> bool {
    r.validate()
}

pub fn normalize<B: BaseCategory>(r: &MorphismRep<B>) -> Result<Morphism<B>> {
    r.normalize()
}

pub fn is_answerable<B: BaseCategory>(p: &Container<B>) -> bool {
    p.is_answerable()
}

pub fn find_morphism<B: BaseCategory>(p: &Container<B>, q: &Container<B>, bounds: SearchBounds) -> SearchOutcome<Morphism<B>> {
    B::find_morphism(p, q, bounds)
}
