//! Serialized forms of containers, morphisms and workspace bindings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::assemblies::{search_tracking, Assembly, TrackedMap};
use crate::containers::{BaseCategory, BaseKind, Container, FinSetCat, Morphism, PAsmCat};
use crate::error::{Error, Result};
use crate::finbase::{FinMap, FinSet};
use crate::sk::{EvalBudget, Term};
use crate::weihrauch::{PredicateData, ProblemData};

/// `{"kind": "FinSet", "total": [...], "base": [...], "bundle": {x: u}}`, or
/// for PAsm the realizer maps of both assemblies, the bundle graph and an
/// optional tracking code (searched for when absent).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ContainerData {
    FinSet {
        total: Vec<String>,
        base: Vec<String>,
        bundle: BTreeMap<String, String>,
    },
    PAsm {
        total: BTreeMap<String, Vec<Term>>,
        base: BTreeMap<String, Vec<Term>>,
        bundle: BTreeMap<String, String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        code: Option<Term>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        budget: Option<u64>,
    },
}

/// A container of either kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyContainer {
    FinSet(Container<FinSetCat>),
    PAsm(Container<PAsmCat>),
}

impl AnyContainer {
    pub fn kind(&self) -> BaseKind {
        match self {
            AnyContainer::FinSet(_) => BaseKind::FinSet,
            AnyContainer::PAsm(_) => BaseKind::PAsm,
        }
    }

    pub fn positions(&self) -> usize {
        match self {
            AnyContainer::FinSet(c) => c.base().len(),
            AnyContainer::PAsm(c) => c.base().len(),
        }
    }

    pub fn directions(&self) -> usize {
        match self {
            AnyContainer::FinSet(c) => c.total().len(),
            AnyContainer::PAsm(c) => c.total().len(),
        }
    }

    pub fn is_answerable(&self) -> bool {
        match self {
            AnyContainer::FinSet(c) => c.is_answerable(),
            AnyContainer::PAsm(c) => c.is_answerable(),
        }
    }

    pub fn to_data(&self) -> ContainerData {
        match self {
            AnyContainer::FinSet(c) => ContainerData::FinSet {
                total: c.total().elements().to_vec(),
                base: c.base().elements().to_vec(),
                bundle: c.bundle().to_labels(),
            },
            AnyContainer::PAsm(c) => ContainerData::PAsm {
                total: c.total().to_labels(),
                base: c.base().to_labels(),
                bundle: c.bundle().map().to_labels(),
                code: Some(c.bundle().code().clone()),
                budget: Some(c.bundle().budget().max_steps()),
            },
        }
    }

    /// Validates `d`; a PAsm bundle without a code gets the least code of
    /// size at most `size_bound`.
    pub fn from_data(d: &ContainerData, size_bound: usize, budget: EvalBudget) -> Result<AnyContainer> {
        match d {
            ContainerData::FinSet { total, base, bundle } => {
                let total = FinSet::new(total.iter().cloned())?;
                let base = FinSet::new(base.iter().cloned())?;
                Ok(AnyContainer::FinSet(Container::new(FinMap::from_labels(total, base, bundle)?)?))
            }
            ContainerData::PAsm {
                total,
                base,
                bundle,
                code,
                budget: b,
            } => {
                let x = Assembly::from_labels(total)?;
                let u = Assembly::from_labels(base)?;
                let map = FinMap::from_labels(x.carrier().clone(), u.carrier().clone(), bundle)?;
                let budget = match b {
                    Some(n) => EvalBudget::new(*n)?,
                    None => budget,
                };
                let code = match code {
                    Some(c) => c.clone(),
                    None => search_tracking(&x, &u, &map, size_bound, budget).ok_or_else(|| {
                        Error::TrackingFailed(format!("no tracking code of size at most {size_bound}"))
                    })?,
                };
                let bundle = TrackedMap::verified(x, u, map, code, budget)?;
                Ok(AnyContainer::PAsm(Container::new(bundle)?))
            }
        }
    }
}

/// A tracked map as `{"map": {a: b}, "code": term, "budget": n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrackedData {
    pub map: BTreeMap<String, String>,
    pub code: Term,
    pub budget: u64,
}

/// A container morphism; the backward map is keyed by apex labels
/// `(position, direction)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum MorphismData {
    FinSet {
        forward: BTreeMap<String, String>,
        backward: BTreeMap<String, String>,
    },
    PAsm {
        forward: TrackedData,
        backward: TrackedData,
    },
}

fn tracked_data(t: &TrackedMap) -> TrackedData {
    TrackedData {
        map: t.map().to_labels(),
        code: t.code().clone(),
        budget: t.budget().max_steps(),
    }
}

pub fn finset_morphism_data(m: &Morphism<FinSetCat>) -> MorphismData {
    MorphismData::FinSet {
        forward: m.forward().to_labels(),
        backward: m.backward().to_labels(),
    }
}

pub fn pasm_morphism_data(m: &Morphism<PAsmCat>) -> MorphismData {
    MorphismData::PAsm {
        forward: tracked_data(m.forward()),
        backward: tracked_data(m.backward()),
    }
}

pub fn finset_morphism_from_data(
    d: &MorphismData,
    p: &Container<FinSetCat>,
    q: &Container<FinSetCat>,
) -> Result<Morphism<FinSetCat>> {
    let MorphismData::FinSet { forward, backward } = d else {
        return Err(Error::KindMismatch {
            expected: BaseKind::FinSet,
            found: BaseKind::PAsm,
        });
    };
    let f = FinMap::from_labels(p.base().clone(), q.base().clone(), forward)?;
    let apex = FinSetCat::pullback(&f, q.bundle())?.apex;
    let b = FinMap::from_labels(apex, p.total().clone(), backward)?;
    Morphism::new(p.clone(), q.clone(), f, b)
}

pub fn pasm_morphism_from_data(
    d: &MorphismData,
    p: &Container<PAsmCat>,
    q: &Container<PAsmCat>,
) -> Result<Morphism<PAsmCat>> {
    let MorphismData::PAsm { forward, backward } = d else {
        return Err(Error::KindMismatch {
            expected: BaseKind::PAsm,
            found: BaseKind::FinSet,
        });
    };
    let fmap = FinMap::from_labels(p.base().carrier().clone(), q.base().carrier().clone(), &forward.map)?;
    let f = TrackedMap::verified(
        p.base().clone(),
        q.base().clone(),
        fmap,
        forward.code.clone(),
        EvalBudget::new(forward.budget)?,
    )?;
    let apex = PAsmCat::pullback(&f, q.bundle())?.apex;
    let bmap = FinMap::from_labels(apex.carrier().clone(), p.total().carrier().clone(), &backward.map)?;
    let b = TrackedMap::verified(apex, p.total().clone(), bmap, backward.code.clone(), EvalBudget::new(backward.budget)?)?;
    Morphism::new(p.clone(), q.clone(), f, b)
}

/// One workspace entry, written `{"problem": ...}`, `{"container": ...}`,
/// `{"predicate": ...}` or `{"term": "..."}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BindingData {
    Problem(ProblemData),
    Container(ContainerData),
    Predicate(PredicateData),
    Term(Term),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Settings {
    #[serde(default = "default_bound")]
    pub size_bound: usize,
    #[serde(default = "default_budget")]
    pub budget: u64,
}

fn default_bound() -> usize {
    crate::containers::DEFAULT_SIZE_BOUND
}

fn default_budget() -> u64 {
    crate::sk::DEFAULT_BUDGET
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            size_bound: default_bound(),
            budget: default_budget(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct WorkspaceData {
    #[serde(default)]
    pub settings: Settings,
    #[serde(default)]
    pub bindings: BTreeMap<String, BindingData>,
}
