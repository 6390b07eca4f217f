use std::collections::{BTreeMap, BTreeSet};

use super::base::{BaseCategory, Coproduct, Product, Pullback, Split};
use super::finset_base::FinSetCat;
use super::{search, BaseKind, Container, Morphism, SearchBounds, SearchOutcome};
use crate::assemblies::{is_partitioned, pasm_pullback, search_tracking, Assembly, TrackedMap};
use crate::error::{Error, Result};
use crate::finbase::{self, FinMap, FinSet};
use crate::sk::{compile_with, simplified, pair_value, standard_codes, EvalBudget, Term};

/// Size bound used when a structural inverse has to be searched for.
const INVERSE_SEARCH_BOUND: usize = 7;

/// Partitioned assemblies over SK terms with tracked maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct PAsmCat;

/// Compiles a λ-code over the standard pairing and boolean names.
pub(crate) fn code(src: &str, env: &[(&str, &Term)]) -> Term {
    let c = standard_codes();
    let mut names: BTreeMap<String, Term> = [
        ("pair", &c.pair),
        ("fst", &c.fst),
        ("snd", &c.snd),
        ("tt", &c.tt),
        ("ff", &c.ff),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_owned(), v.clone()))
    .collect();
    for (k, v) in env {
        names.insert((*k).to_owned(), (*v).clone());
    }
    compile_with(src, &names).expect("structural codes are closed")
}

fn tracked(src: &Assembly, dst: &Assembly, map: FinMap, code: Term, budget: EvalBudget) -> Result<TrackedMap> {
    TrackedMap::verified(src.clone(), dst.clone(), map, simplified(&code), budget)
}

fn structural(src: &Assembly, dst: &Assembly, map: FinMap, code: Term) -> TrackedMap {
    tracked(src, dst, map, code, EvalBudget::default()).expect("structural map is tracked by its code")
}

fn pair_sets(a: &BTreeSet<Term>, b: &BTreeSet<Term>) -> BTreeSet<Term> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| pair_value(x, y)))
        .collect()
}

fn tagged(tag: &Term, a: &BTreeSet<Term>) -> BTreeSet<Term> {
    a.iter().map(|x| pair_value(tag, x)).collect()
}

fn left_summand(cp: &Coproduct<PAsmCat>) -> &Assembly {
    cp.inl.src()
}

fn right_summand(cp: &Coproduct<PAsmCat>) -> &Assembly {
    cp.inr.src()
}

impl BaseCategory for PAsmCat {
    type Obj = Assembly;
    type Mor = TrackedMap;

    const KIND: BaseKind = BaseKind::PAsm;

    fn carrier(o: &Assembly) -> &FinSet {
        o.carrier()
    }

    fn dom(m: &TrackedMap) -> &Assembly {
        m.src()
    }

    fn cod(m: &TrackedMap) -> &Assembly {
        m.dst()
    }

    fn underlying(m: &TrackedMap) -> &FinMap {
        m.map()
    }

    fn check_object(o: &Assembly) -> Result<()> {
        if is_partitioned(o) {
            Ok(())
        } else {
            Err(Error::IllFormedAssembly("assembly is not partitioned".into()))
        }
    }

    fn check_morphism(m: &TrackedMap) -> Result<()> {
        if !m.is_verified() {
            return Err(Error::UnverifiedTracking);
        }
        Self::check_object(m.src())?;
        Self::check_object(m.dst())
    }

    fn identity(o: &Assembly) -> TrackedMap {
        TrackedMap::identity(o)
    }

    fn compose(g: &TrackedMap, f: &TrackedMap) -> Result<TrackedMap> {
        TrackedMap::compose(g, f)
    }

    fn pullback(f: &TrackedMap, g: &TrackedMap) -> Result<Pullback<Self>> {
        let (apex, proj1, proj2) = pasm_pullback(f, g)?;
        Ok(Pullback {
            apex,
            proj1,
            proj2,
            left: f.clone(),
            right: g.clone(),
        })
    }

    fn mediating(pb: &Pullback<Self>, alpha: &TrackedMap, beta: &TrackedMap) -> Result<TrackedMap> {
        let raw = finbase::PullbackResult {
            apex: pb.apex.carrier().clone(),
            proj1: pb.proj1.map().clone(),
            proj2: pb.proj2.map().clone(),
            left: pb.left.map().clone(),
            right: pb.right.map().clone(),
        };
        let map = finbase::mediating(&raw, alpha.map(), beta.map())?;
        let c = code("\\z. pair (b z) (a z)", &[("a", alpha.code()), ("b", beta.code())]);
        let budget = alpha.budget().sum(beta.budget()).sum(EvalBudget::default());
        tracked(alpha.src(), &pb.apex, map, c, budget)
    }

    fn initial() -> Assembly {
        Assembly::empty()
    }

    fn terminal() -> Assembly {
        Assembly::partitioned_unchecked(finbase::terminal(), vec![Term::K])
    }

    fn to_terminal(o: &Assembly) -> TrackedMap {
        structural(o, &Self::terminal(), finbase::to_terminal(o.carrier()), Term::app(Term::K, Term::K))
    }

    fn from_initial(o: &Assembly) -> TrackedMap {
        structural(&Assembly::empty(), o, finbase::from_initial(o.carrier()), standard_codes().ident.clone())
    }

    fn coproduct(a: &Assembly, b: &Assembly) -> Coproduct<Self> {
        let set = finbase::coproduct(a.carrier(), b.carrier());
        let c = standard_codes();
        let realizers = (0..set.obj.len())
            .map(|k| match set.case(k) {
                Ok(i) => tagged(&c.tt, a.realizers(i)),
                Err(j) => tagged(&c.ff, b.realizers(j)),
            })
            .collect();
        let obj = Assembly::new(set.obj.clone(), realizers).expect("tagged realizers");
        let inl = structural(a, &obj, set.inl, code("\\x. pair tt x", &[]));
        let inr = structural(b, &obj, set.inr, code("\\x. pair ff x", &[]));
        Coproduct { obj, inl, inr }
    }

    fn copair(cp: &Coproduct<Self>, f: &TrackedMap, g: &TrackedMap) -> Result<TrackedMap> {
        if f.src() != left_summand(cp) || g.src() != right_summand(cp) || f.dst() != g.dst() {
            return Err(Error::CodDomMismatch("copairing legs do not match the coproduct".into()));
        }
        let set = finbase::coproduct(f.src().carrier(), g.src().carrier());
        let map = finbase::copairing(&set, f.map(), g.map())?;
        let c = code("\\p. fst p (f (snd p)) (g (snd p))", &[("f", f.code()), ("g", g.code())]);
        tracked(&cp.obj, f.dst(), map, c, f.budget().sum(g.budget()).sum(EvalBudget::default()))
    }

    fn product(a: &Assembly, b: &Assembly) -> Product<Self> {
        let set = finbase::product(a.carrier(), b.carrier());
        let realizers = (0..set.obj.len())
            .map(|k| pair_sets(a.realizers(set.p1.apply(k)), b.realizers(set.p2.apply(k))))
            .collect();
        let obj = Assembly::new(set.obj.clone(), realizers).expect("paired realizers");
        let c = standard_codes();
        let p1 = structural(&obj, a, set.p1, c.fst.clone());
        let p2 = structural(&obj, b, set.p2, c.snd.clone());
        Product { obj, p1, p2 }
    }

    fn pair(prod: &Product<Self>, f: &TrackedMap, g: &TrackedMap) -> Result<TrackedMap> {
        if f.src() != g.src() || f.dst() != prod.p1.dst() || g.dst() != prod.p2.dst() {
            return Err(Error::CodDomMismatch("pairing legs do not match the product".into()));
        }
        let set = finbase::product(f.dst().carrier(), g.dst().carrier());
        let map = finbase::pairing(&set, f.map(), g.map())?;
        let c = code("\\z. pair (f z) (g z)", &[("f", f.code()), ("g", g.code())]);
        tracked(f.src(), &prod.obj, map, c, f.budget().sum(g.budget()).sum(EvalBudget::default()))
    }

    fn factor_left(cp: &Coproduct<Self>, m: &TrackedMap) -> Result<TrackedMap> {
        let fcp = FinSetCat::coproduct(left_summand(cp).carrier(), right_summand(cp).carrier());
        let map = FinSetCat::factor_left(&fcp, m.map())?;
        let c = code("\\z. snd (m z)", &[("m", m.code())]);
        tracked(m.src(), left_summand(cp), map, c, m.budget().sum(EvalBudget::default()))
    }

    fn factor_right(cp: &Coproduct<Self>, m: &TrackedMap) -> Result<TrackedMap> {
        let fcp = FinSetCat::coproduct(left_summand(cp).carrier(), right_summand(cp).carrier());
        let map = FinSetCat::factor_right(&fcp, m.map())?;
        let c = code("\\z. snd (m z)", &[("m", m.code())]);
        tracked(m.src(), right_summand(cp), map, c, m.budget().sum(EvalBudget::default()))
    }

    fn split(cp: &Coproduct<Self>, m: &TrackedMap) -> Result<Split<Self>> {
        let fcp = FinSetCat::coproduct(left_summand(cp).carrier(), right_summand(cp).carrier());
        let fs = FinSetCat::split(&fcp, m.map())?;
        let z = m.src();
        let ident = standard_codes().ident.clone();
        let left_idx: Vec<usize> = fs.incl_left.graph().to_vec();
        let right_idx: Vec<usize> = fs.incl_right.graph().to_vec();
        let zl = z.subset(&left_idx);
        let zr = z.subset(&right_idx);
        let incl_left = structural(&zl, z, fs.incl_left, ident.clone());
        let incl_right = structural(&zr, z, fs.incl_right, ident);
        let to_left = Self::factor_left(cp, &Self::compose(m, &incl_left)?)?;
        let to_right = Self::factor_right(cp, &Self::compose(m, &incl_right)?)?;
        let sum = Self::coproduct(&zl, &zr);
        let c = code("\\z. pair (fst (m z)) z", &[("m", m.code())]);
        let iso = tracked(z, &sum.obj, fs.iso, c, m.budget().sum(EvalBudget::default()))?;
        Ok(Split {
            sum,
            to_left,
            to_right,
            incl_left,
            incl_right,
            iso,
        })
    }

    fn distributor(a: &Assembly, b: &Assembly, c: &Assembly) -> (TrackedMap, TrackedMap) {
        let (fwd, bwd) = finbase::distributor(a.carrier(), b.carrier(), c.carrier());
        let bc = Self::coproduct(b, c);
        let lhs = Self::product(a, &bc.obj);
        let ab = Self::product(a, b);
        let ac = Self::product(a, c);
        let rhs = Self::coproduct(&ab.obj, &ac.obj);
        // Both directions swap the tag with the first component.
        let swap = code("\\p. pair (fst (snd p)) (pair (fst p) (snd (snd p)))", &[]);
        (
            structural(&lhs.obj, &rhs.obj, fwd, swap.clone()),
            structural(&rhs.obj, &lhs.obj, bwd, swap),
        )
    }

    fn invert_iso(m: &TrackedMap) -> Result<TrackedMap> {
        let inv = m
            .map()
            .inverse()
            .ok_or_else(|| Error::InvalidRep("map is not a bijection".into()))?;
        let budget = EvalBudget::default();
        let c = search_tracking(m.dst(), m.src(), &inv, INVERSE_SEARCH_BOUND, budget).ok_or_else(|| {
            Error::InvalidRep(format!("no code of size <= {INVERSE_SEARCH_BOUND} tracks the inverse"))
        })?;
        tracked(m.dst(), m.src(), inv, c, budget)
    }

    fn find_morphism(p: &Container<Self>, q: &Container<Self>, bounds: SearchBounds) -> SearchOutcome<Morphism<Self>> {
        search::find_morphism_pasm(p, q, bounds)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assemblies::nabla;
    use crate::containers::base::{associator, coproduct_map, product_map, symmetry};
    use crate::sk::underline;

    fn two() -> Assembly {
        Assembly::partitioned(FinSet::new(["0", "1"]).unwrap(), vec![underline(0), underline(1)]).unwrap()
    }

    #[test]
    fn coproduct_laws() {
        let (a, b) = (two(), nabla(&FinSet::new(["x"]).unwrap()));
        let cp = PAsmCat::coproduct(&a, &b);
        let to = PAsmCat::to_terminal(&a);
        let tb = PAsmCat::to_terminal(&b);
        let h = PAsmCat::copair(&cp, &to, &tb).unwrap();
        assert_eq!(PAsmCat::compose(&h, &cp.inl).unwrap(), to);
        assert_eq!(PAsmCat::factor_left(&cp, &cp.inl).unwrap(), PAsmCat::identity(&a));
    }

    #[test]
    fn product_and_pullback_agree_over_terminal() {
        let a = two();
        let prod = PAsmCat::product(&a, &a);
        let pb = PAsmCat::pullback(&PAsmCat::to_terminal(&a), &PAsmCat::to_terminal(&a)).unwrap();
        assert_eq!(prod.obj, pb.apex);
        let d = PAsmCat::pair(&prod, &prod.p1, &prod.p2).unwrap();
        assert_eq!(d, PAsmCat::identity(&prod.obj));
    }

    #[test]
    fn distributor_round_trip() {
        let a = two();
        let b = nabla(&FinSet::new(["x", "y"]).unwrap());
        let (f, g) = PAsmCat::distributor(&a, &b, &a);
        assert_eq!(PAsmCat::compose(&g, &f).unwrap(), PAsmCat::identity(f.src()));
        assert_eq!(PAsmCat::compose(&f, &g).unwrap(), PAsmCat::identity(g.src()));
    }

    #[test]
    fn split_reassembles() {
        let a = two();
        let cp = PAsmCat::coproduct(&a, &a);
        let s = PAsmCat::split(&cp, &PAsmCat::identity(&cp.obj)).unwrap();
        let back = PAsmCat::copair(&s.sum, &s.incl_left, &s.incl_right).unwrap();
        assert_eq!(PAsmCat::compose(&back, &s.iso).unwrap(), PAsmCat::identity(&cp.obj));
    }

    #[test]
    fn derived_maps_are_tracked() {
        let a = two();
        let n = nabla(a.carrier());
        assert!(associator::<PAsmCat>(&a, &n, &a).unwrap().reverify());
        assert!(symmetry::<PAsmCat>(&a, &n).unwrap().reverify());
        let id = PAsmCat::identity(&a);
        assert!(product_map::<PAsmCat>(&id, &id).unwrap().reverify());
        assert!(coproduct_map::<PAsmCat>(&id, &id).unwrap().reverify());
    }

    #[test]
    fn relabelling_inverse_found() {
        let a = two();
        let b = Assembly::partitioned(FinSet::new(["a", "b"]).unwrap(), vec![underline(0), underline(1)]).unwrap();
        let m = FinMap::new(a.carrier().clone(), b.carrier().clone(), vec![0, 1]).unwrap();
        let f = TrackedMap::verified(a.clone(), b, m, standard_codes().ident.clone(), EvalBudget::default()).unwrap();
        let inv = PAsmCat::invert_iso(&f).unwrap();
        assert_eq!(PAsmCat::compose(&inv, &f).unwrap(), PAsmCat::identity(&a));
    }
}
