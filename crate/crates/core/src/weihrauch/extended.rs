//! Extended predicates `p : A ⇀ P(P(A))` over SK and their reductions,
//! together with the passage to PAsm containers and back.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::assemblies::{is_partitioned, Assembly, TrackedMap};
use crate::containers::{Container, PAsmCat, SearchBounds, SearchOutcome};
use crate::error::{Error, Result};
use crate::finbase::{self, FinMap, FinSet};
use crate::sk::{compile_with, pair_value, reduce, standard_codes, terms_up_to, underline, EvalBudget, MemoApply, Term};

/// A finite extended predicate: the support maps each realizer to a
/// non-empty family of realizer sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedPredicate {
    theta: BTreeMap<Term, BTreeSet<BTreeSet<Term>>>,
}

/// Serialized form `{"support": [...], "theta": {r: [[s, ...], ...]}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateData {
    pub support: Vec<Term>,
    pub theta: BTreeMap<String, Vec<Vec<Term>>>,
}

impl ExtendedPredicate {
    pub fn new(theta: BTreeMap<Term, BTreeSet<BTreeSet<Term>>>) -> Result<Self> {
        for (r, fam) in &theta {
            if fam.is_empty() {
                return Err(Error::InvalidPredicate(format!("{r} has an empty family")));
            }
            let all = std::iter::once(r).chain(fam.iter().flatten());
            if let Some(bad) = all.into_iter().find(|t| !t.is_normal()) {
                return Err(Error::InvalidPredicate(format!("{bad} is not normal")));
            }
        }
        Ok(ExtendedPredicate { theta })
    }

    pub fn from_data(d: &PredicateData) -> Result<Self> {
        let mut theta = BTreeMap::new();
        for (k, fam) in &d.theta {
            let r = Term::parse(k)?;
            let fam: BTreeSet<BTreeSet<Term>> = fam.iter().map(|s| s.iter().cloned().collect()).collect();
            theta.insert(r, fam);
        }
        let support: BTreeSet<Term> = d.support.iter().cloned().collect();
        if support.len() != d.support.len() || support.iter().ne(theta.keys()) {
            return Err(Error::InvalidPredicate("support must list exactly the keys of theta".into()));
        }
        ExtendedPredicate::new(theta)
    }

    pub fn to_data(&self) -> PredicateData {
        PredicateData {
            support: self.theta.keys().cloned().collect(),
            theta: self
                .theta
                .iter()
                .map(|(r, fam)| (r.to_string(), fam.iter().map(|s| s.iter().cloned().collect()).collect()))
                .collect(),
        }
    }

    pub fn support(&self) -> impl Iterator<Item = &Term> + '_ {
        self.theta.keys()
    }

    pub fn in_support(&self, r: &Term) -> bool {
        self.theta.contains_key(r)
    }

    /// `p(r)`, empty outside the support.
    pub fn family(&self, r: &Term) -> impl Iterator<Item = &BTreeSet<Term>> + '_ {
        self.theta.get(r).into_iter().flatten()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Term, &BTreeSet<BTreeSet<Term>>)> + '_ {
        self.theta.iter()
    }
}

/// The weak law of excluded middle: one realizer, two singleton demands.
pub fn wlem() -> ExtendedPredicate {
    let fam = BTreeSet::from([BTreeSet::from([underline(0)]), BTreeSet::from([underline(1)])]);
    ExtendedPredicate::new(BTreeMap::from([(underline(0), fam)])).expect("normal codes")
}

/// Witness for `p ≤ q`: `e_fwd` moves the support, `f_family` picks for
/// each `(r, θ)` a member of `q(e_fwd r)`, and `e_bwd r s` lands in `θ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtReductionWitness {
    pub e_fwd: Term,
    pub f_family: BTreeMap<(Term, BTreeSet<Term>), BTreeSet<Term>>,
    pub e_bwd: Term,
    pub budget: EvalBudget,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyEntry {
    pub r: Term,
    pub theta: Vec<Term>,
    pub xi: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessData {
    pub e_fwd: Term,
    pub e_bwd: Term,
    pub budget: u64,
    pub f_family: Vec<FamilyEntry>,
}

impl ExtReductionWitness {
    pub fn to_data(&self) -> WitnessData {
        WitnessData {
            e_fwd: self.e_fwd.clone(),
            e_bwd: self.e_bwd.clone(),
            budget: self.budget.max_steps(),
            f_family: self
                .f_family
                .iter()
                .map(|((r, theta), xi)| FamilyEntry {
                    r: r.clone(),
                    theta: theta.iter().cloned().collect(),
                    xi: xi.iter().cloned().collect(),
                })
                .collect(),
        }
    }

    pub fn from_data(d: &WitnessData) -> Result<Self> {
        Ok(ExtReductionWitness {
            e_fwd: d.e_fwd.clone(),
            e_bwd: d.e_bwd.clone(),
            budget: EvalBudget::new(d.budget)?,
            f_family: d
                .f_family
                .iter()
                .map(|e| ((e.r.clone(), e.theta.iter().cloned().collect()), e.xi.iter().cloned().collect()))
                .collect(),
        })
    }
}

fn run(t: Term, b: EvalBudget) -> Option<Term> {
    reduce(&t, b).normal()
}

/// The first obligation that `w` fails for `p ≤ q`, if any.
pub fn ext_reduce_failure(p: &ExtendedPredicate, q: &ExtendedPredicate, w: &ExtReductionWitness) -> Option<String> {
    for (r, fam) in p.entries() {
        let Some(fr) = run(Term::app(w.e_fwd.clone(), r.clone()), w.budget) else {
            return Some(format!("e_fwd does not normalize on {r}"));
        };
        let Some(qfam) = q.theta.get(&fr) else {
            return Some(format!("e_fwd sends {r} to {fr}, outside the support"));
        };
        for theta in fam {
            let Some(xi) = w.f_family.get(&(r.clone(), theta.clone())) else {
                return Some(format!("no choice for ({r}, {})", set_label(theta)));
            };
            if !qfam.contains(xi) {
                return Some(format!("choice {} is not in q({fr})", set_label(xi)));
            }
            for s in xi {
                match run(w.e_bwd.clone().apply_all([r.clone(), s.clone()]), w.budget) {
                    Some(out) if theta.contains(&out) => {}
                    Some(out) => return Some(format!("e_bwd {r} {s} = {out}, not in {}", set_label(theta))),
                    None => return Some(format!("e_bwd does not normalize on {r} {s}")),
                }
            }
        }
    }
    None
}

pub fn ext_reduce_verify(p: &ExtendedPredicate, q: &ExtendedPredicate, w: &ExtReductionWitness) -> bool {
    ext_reduce_failure(p, q, w).is_none()
}

/// Bounded search for a witness of `p ≤ q`: forward codes are grouped by
/// the function they induce on the support, and for each group backward
/// codes are tried in size order. A miss is never definitive.
pub fn ext_reduce_search(p: &ExtendedPredicate, q: &ExtendedPredicate, bounds: SearchBounds) -> SearchOutcome<ExtReductionWitness> {
    let mut memo = MemoApply::new(bounds.budget);
    let supp: Vec<&Term> = p.support().collect();
    let mut forwards: Vec<(Term, Vec<Term>)> = Vec::new();
    let mut seen: BTreeSet<Vec<Term>> = BTreeSet::new();
    for d in terms_up_to(bounds.size_bound) {
        let vals: Option<Vec<Term>> = supp
            .iter()
            .map(|r| memo.apply(&d, r).filter(|v| q.in_support(v)))
            .collect();
        if let Some(vals) = vals {
            if seen.insert(vals.clone()) {
                forwards.push((d, vals));
            }
        }
    }
    for (d, vals) in &forwards {
        for e in terms_up_to(bounds.size_bound) {
            if let Some(f_family) = backward_choices(p, q, &supp, vals, &e, &mut memo) {
                let w = ExtReductionWitness {
                    e_fwd: d.clone(),
                    f_family,
                    e_bwd: e,
                    budget: bounds.budget,
                };
                if ext_reduce_verify(p, q, &w) {
                    return SearchOutcome::Found(w);
                }
            }
        }
    }
    SearchOutcome::UnknownAtBound {
        bound: bounds.size_bound,
        budget: bounds.budget.max_steps(),
    }
}

fn backward_choices(
    p: &ExtendedPredicate,
    q: &ExtendedPredicate,
    supp: &[&Term],
    vals: &[Term],
    e: &Term,
    memo: &mut MemoApply,
) -> Option<BTreeMap<(Term, BTreeSet<Term>), BTreeSet<Term>>> {
    let mut out = BTreeMap::new();
    for (r, fr) in supp.iter().zip(vals) {
        let er = memo.apply(e, r)?;
        for theta in p.family(r) {
            let xi = q
                .family(fr)
                .find(|xi| xi.iter().all(|s| memo.apply(&er, s).is_some_and(|o| theta.contains(&o))))?;
            out.insert(((*r).clone(), theta.clone()), xi.clone());
        }
    }
    Some(out)
}

fn set_label(s: &BTreeSet<Term>) -> String {
    let body: Vec<String> = s.iter().map(Term::to_string).collect();
    format!("{{{}}}", body.join(","))
}

fn position_label(r: &Term, theta: &BTreeSet<Term>) -> String {
    finbase::pair_label(&r.to_string(), &set_label(theta))
}

/// `p̂`: positions `(r, θ)` realized by `r`, directions `(r, θ, s)` with
/// `s ∈ θ` realized by `pair r s`, and the bundle tracked by `fst`.
pub fn hat_of(p: &ExtendedPredicate) -> Container<PAsmCat> {
    let mut pos: Vec<(String, Term)> = Vec::new();
    let mut dir: Vec<(String, String, Term)> = Vec::new();
    for (r, fam) in p.entries() {
        for theta in fam {
            let pl = position_label(r, theta);
            for s in theta {
                dir.push((finbase::pair_label(&pl, &s.to_string()), pl.clone(), pair_value(r, s)));
            }
            pos.push((pl, r.clone()));
        }
    }
    pos.sort();
    dir.sort();
    let base_set = FinSet::from_labels_unchecked(pos.iter().map(|x| x.0.clone()).collect());
    let total_set = FinSet::from_labels_unchecked(dir.iter().map(|x| x.0.clone()).collect());
    let graph = dir.iter().map(|d| base_set.index_of(&d.1).expect("position")).collect();
    let base = Assembly::partitioned(base_set, pos.into_iter().map(|x| x.1).collect()).expect("normal");
    let total = Assembly::partitioned(total_set.clone(), dir.into_iter().map(|x| x.2).collect()).expect("normal");
    let map = FinMap::new(total_set, base.carrier().clone(), graph).expect("in range");
    let bundle = TrackedMap::verified(total, base, map, standard_codes().fst.clone(), EvalBudget::default())
        .expect("first projection tracks the bundle");
    Container::new(bundle).expect("partitioned bundle")
}

/// `Φ(i)`, the realizers of the fibre over position `i`.
fn fibre_realizers(p: &Container<PAsmCat>) -> Vec<BTreeSet<Term>> {
    p.fibres()
        .into_iter()
        .map(|xs| xs.into_iter().map(|x| p.total().realizer(x).clone()).collect())
        .collect()
}

/// `φ_P(r) = {Φ(i) : r ⊩ i}`. Positions with empty fibres contribute the
/// empty demand.
pub fn phi_of(p: &Container<PAsmCat>) -> Result<ExtendedPredicate> {
    if !is_partitioned(p.base()) || !is_partitioned(p.total()) {
        return Err(Error::IllFormedAssembly("container must be partitioned".into()));
    }
    let mut theta: BTreeMap<Term, BTreeSet<BTreeSet<Term>>> = BTreeMap::new();
    for (i, phi) in fibre_realizers(p).into_iter().enumerate() {
        theta.entry(p.base().realizer(i).clone()).or_default().insert(phi);
    }
    ExtendedPredicate::new(theta)
}

fn lambda(src: &str) -> Term {
    let c = standard_codes();
    let env = [("pair", &c.pair), ("snd", &c.snd)]
        .into_iter()
        .map(|(k, v)| (k.to_owned(), v.clone()))
        .collect();
    compile_with(src, &env).expect("closed")
}

/// Witness for `p ≤ φ_{p̂}`: the identity forward, the family of pairs
/// `{pair r s : s ∈ θ}`, and the second projection backward.
pub fn witness_into_phi_hat(p: &ExtendedPredicate) -> ExtReductionWitness {
    let f_family = p
        .entries()
        .flat_map(|(r, fam)| {
            fam.iter()
                .map(move |theta| ((r.clone(), theta.clone()), theta.iter().map(|s| pair_value(r, s)).collect()))
        })
        .collect();
    ExtReductionWitness {
        e_fwd: standard_codes().ident.clone(),
        f_family,
        e_bwd: lambda("\\x y. snd y"),
        budget: EvalBudget::default(),
    }
}

/// Witness for `φ_{p̂} ≤ p`: the identity forward, the demand `θ` whose
/// fibre realizers are `ξ` (least `θ` on ties), and pairing backward.
pub fn witness_from_phi_hat(p: &ExtendedPredicate) -> ExtReductionWitness {
    let mut f_family = BTreeMap::new();
    for (r, fam) in p.entries() {
        for theta in fam {
            let xi: BTreeSet<Term> = theta.iter().map(|s| pair_value(r, s)).collect();
            f_family.entry((r.clone(), xi)).or_insert_with(|| theta.clone());
        }
    }
    ExtReductionWitness {
        e_fwd: standard_codes().ident.clone(),
        f_family,
        e_bwd: lambda("\\r s. pair r s"),
        budget: EvalBudget::default(),
    }
}

/// Reflexivity: identity forward, `θ` itself, and `λr s. s` backward.
pub fn witness_identity(p: &ExtendedPredicate) -> ExtReductionWitness {
    let f_family = p
        .entries()
        .flat_map(|(r, fam)| fam.iter().map(move |t| ((r.clone(), t.clone()), t.clone())))
        .collect();
    ExtReductionWitness {
        e_fwd: standard_codes().ident.clone(),
        f_family,
        e_bwd: lambda("\\r s. s"),
        budget: EvalBudget::default(),
    }
}
