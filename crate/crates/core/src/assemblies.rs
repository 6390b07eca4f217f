//! Finite assemblies over SK terms and the maps tracked by codes between
//! them.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::finbase::{pair_label, pullback, FinMap, FinSet};
use crate::sk::{apply, compose_code, pair_value, simplified, standard_codes, terms_up_to, underline, EvalBudget, MemoApply, Term};

/// A finite carrier with a non-empty finite set of normal-form realizers
/// for each element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Assembly {
    carrier: FinSet,
    realizers: Vec<BTreeSet<Term>>,
}

/// An assembly whose elements have exactly one realizer each. Constructors
/// documented as returning one guarantee the property; [`is_partitioned`]
/// checks it.
pub type PartitionedAssembly = Assembly;

impl Assembly {
    pub fn new(carrier: FinSet, realizers: Vec<BTreeSet<Term>>) -> Result<Self> {
        if realizers.len() != carrier.len() {
            return Err(Error::IllFormedAssembly(format!(
                "{} realizer sets for {} elements",
                realizers.len(),
                carrier.len()
            )));
        }
        for (i, rs) in realizers.iter().enumerate() {
            if rs.is_empty() {
                return Err(Error::IllFormedAssembly(format!("{} has no realizer", carrier.label(i))));
            }
            if let Some(bad) = rs.iter().find(|t| !t.is_normal()) {
                return Err(Error::IllFormedAssembly(format!("realizer {bad} is not normal")));
            }
        }
        Ok(Assembly { carrier, realizers })
    }

    pub fn from_labels(realizers: &BTreeMap<String, Vec<Term>>) -> Result<Self> {
        let carrier = FinSet::new(realizers.keys().cloned())?;
        let sets = carrier
            .iter()
            .map(|l| realizers[l].iter().cloned().collect())
            .collect();
        Assembly::new(carrier, sets)
    }

    /// One realizer per element, in carrier order.
    pub fn partitioned(carrier: FinSet, codes: Vec<Term>) -> Result<PartitionedAssembly> {
        Assembly::new(carrier, codes.into_iter().map(|t| BTreeSet::from([t])).collect())
    }

    pub(crate) fn partitioned_unchecked(carrier: FinSet, codes: Vec<Term>) -> PartitionedAssembly {
        Assembly {
            carrier,
            realizers: codes.into_iter().map(|t| BTreeSet::from([t])).collect(),
        }
    }

    pub fn empty() -> Self {
        Assembly {
            carrier: FinSet::empty(),
            realizers: Vec::new(),
        }
    }

    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn realizers(&self, i: usize) -> &BTreeSet<Term> {
        &self.realizers[i]
    }

    /// The least realizer; the only one when partitioned.
    pub fn realizer(&self, i: usize) -> &Term {
        self.realizers[i].iter().next().expect("non-empty")
    }

    pub fn realizes(&self, e: &Term, i: usize) -> bool {
        self.realizers[i].contains(e)
    }

    /// Elements realized by each code.
    pub fn index(&self) -> HashMap<Term, Vec<usize>> {
        let mut out: HashMap<Term, Vec<usize>> = HashMap::new();
        for (i, rs) in self.realizers.iter().enumerate() {
            for e in rs {
                out.entry(e.clone()).or_default().push(i);
            }
        }
        out
    }

    pub fn to_labels(&self) -> BTreeMap<String, Vec<Term>> {
        self.carrier
            .iter()
            .zip(&self.realizers)
            .map(|(l, rs)| (l.to_owned(), rs.iter().cloned().collect()))
            .collect()
    }

    /// Restriction to the elements at `indices`, keeping their realizers.
    pub fn subset(&self, indices: &[usize]) -> Assembly {
        let carrier = self.carrier.subset(indices);
        let realizers = carrier
            .iter()
            .map(|l| self.realizers[self.carrier.index_of(l).expect("subset")].clone())
            .collect();
        Assembly { carrier, realizers }
    }
}

impl std::fmt::Debug for Assembly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.carrier.iter().zip(&self.realizers)).finish()
    }
}

pub fn is_modest(a: &Assembly) -> bool {
    a.index().values().all(|v| v.len() <= 1)
}

pub fn is_partitioned(a: &Assembly) -> bool {
    a.realizers.iter().all(|rs| rs.len() == 1)
}

/// The diagnostic for the first `(x, e)` pair at which `code` fails to
/// track `map`, if any.
pub fn tracking_failure(src: &Assembly, dst: &Assembly, map: &FinMap, code: &Term, b: EvalBudget) -> Option<String> {
    if map.dom() != src.carrier() || map.cod() != dst.carrier() {
        return Some("map is not typed between the carriers".into());
    }
    for i in 0..src.len() {
        for e in src.realizers(i) {
            match apply(code, e, b).normal() {
                None => return Some(format!("{code} · {e} exhausted the budget of {}", b.max_steps())),
                Some(r) if dst.realizes(&r, map.apply(i)) => {}
                Some(r) => {
                    return Some(format!(
                        "{code} · {e} = {r}, which does not realize {}",
                        dst.carrier().label(map.apply(i))
                    ))
                }
            }
        }
    }
    None
}

pub fn verify_tracking(src: &Assembly, dst: &Assembly, map: &FinMap, code: &Term, b: EvalBudget) -> bool {
    tracking_failure(src, dst, map, code, b).is_none()
}

/// The least code of size at most `size_bound` tracking `map`. `None` only
/// means nothing was found at this bound.
pub fn search_tracking(src: &Assembly, dst: &Assembly, map: &FinMap, size_bound: usize, b: EvalBudget) -> Option<Term> {
    if map.dom() != src.carrier() || map.cod() != dst.carrier() {
        return None;
    }
    let mut memo = MemoApply::new(b);
    search_tracking_memo(src, dst, map, size_bound, &mut memo)
}

pub(crate) fn search_tracking_memo(
    src: &Assembly,
    dst: &Assembly,
    map: &FinMap,
    size_bound: usize,
    memo: &mut MemoApply,
) -> Option<Term> {
    terms_up_to(size_bound).find(|code| {
        (0..src.len()).all(|i| {
            src.realizers(i)
                .iter()
                .all(|e| memo.apply(code, e).is_some_and(|r| dst.realizes(&r, map.apply(i))))
        })
    })
}

/// A carrier map together with a code claimed to track it.
#[derive(Clone, Debug)]
pub struct TrackedMap {
    src: Assembly,
    dst: Assembly,
    map: FinMap,
    code: Term,
    budget: EvalBudget,
    verified: bool,
}

/// Tracked maps are equal when their carrier maps are; codes are
/// provenance.
impl PartialEq for TrackedMap {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && self.src == other.src && self.dst == other.dst
    }
}

impl Eq for TrackedMap {}

impl TrackedMap {
    /// Runs the verifier and records the result.
    pub fn new(src: Assembly, dst: Assembly, map: FinMap, code: Term, budget: EvalBudget) -> Result<Self> {
        if map.dom() != src.carrier() || map.cod() != dst.carrier() {
            return Err(Error::CodDomMismatch("carrier map is not typed between the assemblies".into()));
        }
        let verified = verify_tracking(&src, &dst, &map, &code, budget);
        Ok(TrackedMap {
            src,
            dst,
            map,
            code,
            budget,
            verified,
        })
    }

    /// As [`TrackedMap::new`], failing unless the code tracks the map.
    pub fn verified(src: Assembly, dst: Assembly, map: FinMap, code: Term, budget: EvalBudget) -> Result<Self> {
        if let Some(why) = tracking_failure(&src, &dst, &map, &code, budget) {
            return Err(Error::TrackingFailed(why));
        }
        Ok(TrackedMap {
            src,
            dst,
            map,
            code,
            budget,
            verified: true,
        })
    }

    pub fn identity(a: &Assembly) -> Self {
        TrackedMap {
            src: a.clone(),
            dst: a.clone(),
            map: FinMap::identity(a.carrier()),
            code: standard_codes().ident.clone(),
            budget: EvalBudget::default(),
            verified: true,
        }
    }

    pub fn src(&self) -> &Assembly {
        &self.src
    }

    pub fn dst(&self) -> &Assembly {
        &self.dst
    }

    pub fn map(&self) -> &FinMap {
        &self.map
    }

    pub fn code(&self) -> &Term {
        &self.code
    }

    pub fn budget(&self) -> EvalBudget {
        self.budget
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// Re-runs the verifier instead of trusting the stored flag.
    pub fn reverify(&self) -> bool {
        verify_tracking(&self.src, &self.dst, &self.map, &self.code, self.budget)
    }

    /// `g ∘ f`, tracked by the simplified form of `λx. g (f x)` at the sum
    /// of the budgets.
    pub fn compose(g: &TrackedMap, f: &TrackedMap) -> Result<TrackedMap> {
        if f.dst != g.src {
            return Err(Error::CodDomMismatch("tracked maps are not composable".into()));
        }
        let map = crate::finbase::compose(&g.map, &f.map)?;
        TrackedMap::verified(
            f.src.clone(),
            g.dst.clone(),
            map,
            simplified(&compose_code(&g.code, &f.code)),
            f.budget.sum(g.budget),
        )
    }
}

/// The pullback of two verified maps out of partitioned assemblies. The
/// realizer of `(x,y)` is `pair r_x r_y`; projections are tracked by `fst`
/// and `snd`.
pub fn pasm_pullback(f: &TrackedMap, g: &TrackedMap) -> Result<(PartitionedAssembly, TrackedMap, TrackedMap)> {
    if !f.verified || !g.verified {
        return Err(Error::UnverifiedInput);
    }
    if f.dst != g.dst {
        return Err(Error::CodDomMismatch("pullback legs have different codomains".into()));
    }
    if !is_partitioned(&f.src) || !is_partitioned(&g.src) {
        return Err(Error::IllFormedAssembly("pullback sources must be partitioned".into()));
    }
    let pb = pullback(&f.map, &g.map)?;
    let codes = (0..pb.apex.len())
        .map(|k| pair_value(f.src.realizer(pb.proj1.apply(k)), g.src.realizer(pb.proj2.apply(k))))
        .collect();
    let apex = Assembly::partitioned_unchecked(pb.apex.clone(), codes);
    let c = standard_codes();
    let p1 = TrackedMap::verified(apex.clone(), f.src.clone(), pb.proj1, c.fst.clone(), EvalBudget::default())?;
    let p2 = TrackedMap::verified(apex.clone(), g.src.clone(), pb.proj2, c.snd.clone(), EvalBudget::default())?;
    Ok((apex, p1, p2))
}

/// The partitioned assembly of pairs `(e, x)` with `e ⊩ x`, realized by
/// `e`, and the counit onto `a`, tracked by the identity code.
pub fn projective_cover(a: &Assembly) -> (PartitionedAssembly, TrackedMap) {
    let mut rows: Vec<(String, Term, usize)> = Vec::new();
    for i in 0..a.len() {
        for e in a.realizers(i) {
            rows.push((pair_label(&e.to_string(), a.carrier().label(i)), e.clone(), i));
        }
    }
    rows.sort_by(|x, y| x.0.cmp(&y.0));
    let carrier = FinSet::from_labels_unchecked(rows.iter().map(|r| r.0.clone()).collect());
    let cover = Assembly::partitioned_unchecked(carrier.clone(), rows.iter().map(|r| r.1.clone()).collect());
    let map = FinMap::new_unchecked(carrier, a.carrier().clone(), rows.iter().map(|r| r.2).collect());
    let counit = TrackedMap::verified(cover.clone(), a.clone(), map, standard_codes().ident.clone(), EvalBudget::default())
        .expect("the identity code tracks the counit");
    (cover, counit)
}

/// Certifies `f` as a regular epi: `e_section` must send every realizer of
/// each `y` to a realizer of some `x` over `y`, and `f`'s code must bring
/// that back to a realizer of `y`.
pub fn regular_epi_check(f: &TrackedMap, e_section: &Term, b: EvalBudget) -> bool {
    if !f.verified {
        return false;
    }
    let fibres = f.map.fibres();
    for y in 0..f.dst.len() {
        for r in f.dst.realizers(y) {
            let Some(s) = apply(e_section, r, b).normal() else {
                return false;
            };
            if !fibres[y].iter().any(|&x| f.src.realizes(&s, x)) {
                return false;
            }
            match apply(&f.code, &s, b).normal() {
                Some(back) if f.dst.realizes(&back, y) => {}
                _ => return false,
            }
        }
    }
    true
}

/// Every element realized by the code for 0.
pub fn nabla(n: &FinSet) -> PartitionedAssembly {
    Assembly::partitioned_unchecked(n.clone(), vec![underline(0); n.len()])
}
