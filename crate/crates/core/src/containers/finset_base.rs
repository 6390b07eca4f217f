use super::base::{BaseCategory, Coproduct, Product, Pullback, Split};
use super::{search, BaseKind, Container, Morphism, SearchBounds, SearchOutcome};
use crate::error::{Error, Result};
use crate::finbase::{self, FinMap, FinSet};

/// Finite sets and all functions between them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct FinSetCat;

fn coproduct_set(cp: &Coproduct<FinSetCat>) -> finbase::CoproductSet {
    finbase::coproduct(cp.inl.dom(), cp.inr.dom())
}

impl BaseCategory for FinSetCat {
    type Obj = FinSet;
    type Mor = FinMap;

    const KIND: BaseKind = BaseKind::FinSet;

    fn carrier(o: &FinSet) -> &FinSet {
        o
    }

    fn dom(m: &FinMap) -> &FinSet {
        m.dom()
    }

    fn cod(m: &FinMap) -> &FinSet {
        m.cod()
    }

    fn underlying(m: &FinMap) -> &FinMap {
        m
    }

    fn check_object(_o: &FinSet) -> Result<()> {
        Ok(())
    }

    fn check_morphism(_m: &FinMap) -> Result<()> {
        Ok(())
    }

    fn identity(o: &FinSet) -> FinMap {
        FinMap::identity(o)
    }

    fn compose(g: &FinMap, f: &FinMap) -> Result<FinMap> {
        finbase::compose(g, f)
    }

    fn pullback(f: &FinMap, g: &FinMap) -> Result<Pullback<Self>> {
        let pb = finbase::pullback(f, g)?;
        Ok(Pullback {
            apex: pb.apex,
            proj1: pb.proj1,
            proj2: pb.proj2,
            left: pb.left,
            right: pb.right,
        })
    }

    fn mediating(pb: &Pullback<Self>, alpha: &FinMap, beta: &FinMap) -> Result<FinMap> {
        let raw = finbase::PullbackResult {
            apex: pb.apex.clone(),
            proj1: pb.proj1.clone(),
            proj2: pb.proj2.clone(),
            left: pb.left.clone(),
            right: pb.right.clone(),
        };
        finbase::mediating(&raw, alpha, beta)
    }

    fn initial() -> FinSet {
        finbase::initial()
    }

    fn terminal() -> FinSet {
        finbase::terminal()
    }

    fn to_terminal(o: &FinSet) -> FinMap {
        finbase::to_terminal(o)
    }

    fn from_initial(o: &FinSet) -> FinMap {
        finbase::from_initial(o)
    }

    fn coproduct(a: &FinSet, b: &FinSet) -> Coproduct<Self> {
        let cp = finbase::coproduct(a, b);
        Coproduct {
            obj: cp.obj,
            inl: cp.inl,
            inr: cp.inr,
        }
    }

    fn copair(cp: &Coproduct<Self>, f: &FinMap, g: &FinMap) -> Result<FinMap> {
        finbase::copairing(&coproduct_set(cp), f, g)
    }

    fn product(a: &FinSet, b: &FinSet) -> Product<Self> {
        let p = finbase::product(a, b);
        Product {
            obj: p.obj,
            p1: p.p1,
            p2: p.p2,
        }
    }

    fn pair(prod: &Product<Self>, f: &FinMap, g: &FinMap) -> Result<FinMap> {
        finbase::pairing(&finbase::product(prod.p1.cod(), prod.p2.cod()), f, g)
    }

    fn factor_left(cp: &Coproduct<Self>, m: &FinMap) -> Result<FinMap> {
        let set = coproduct_set(cp);
        if m.cod() != &set.obj {
            return Err(Error::CodDomMismatch("map does not land in the coproduct".into()));
        }
        let graph = m
            .graph()
            .iter()
            .map(|&k| set.case(k).map_err(|_| Error::CodDomMismatch("map leaves the left summand".into())))
            .collect::<Result<Vec<_>>>()?;
        FinMap::new(m.dom().clone(), cp.inl.dom().clone(), graph)
    }

    fn factor_right(cp: &Coproduct<Self>, m: &FinMap) -> Result<FinMap> {
        let set = coproduct_set(cp);
        if m.cod() != &set.obj {
            return Err(Error::CodDomMismatch("map does not land in the coproduct".into()));
        }
        let graph = m
            .graph()
            .iter()
            .map(|&k| match set.case(k) {
                Err(j) => Ok(j),
                Ok(_) => Err(Error::CodDomMismatch("map leaves the right summand".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        FinMap::new(m.dom().clone(), cp.inr.dom().clone(), graph)
    }

    fn split(cp: &Coproduct<Self>, m: &FinMap) -> Result<Split<Self>> {
        let set = coproduct_set(cp);
        if m.cod() != &set.obj {
            return Err(Error::CodDomMismatch("map does not land in the coproduct".into()));
        }
        let (left, right): (Vec<usize>, Vec<usize>) = (0..m.dom().len()).partition(|&z| set.case(m.apply(z)).is_ok());
        let incl_left = FinMap::identity(m.dom()).restrict(&left);
        let incl_right = FinMap::identity(m.dom()).restrict(&right);
        let to_left = Self::factor_left(cp, &finbase::compose(m, &incl_left)?)?;
        let to_right = Self::factor_right(cp, &finbase::compose(m, &incl_right)?)?;
        let sum = Self::coproduct(incl_left.dom(), incl_right.dom());
        let back = Self::copair(&sum, &incl_left, &incl_right)?;
        let iso = back.inverse().expect("summands partition the domain");
        Ok(Split {
            sum,
            to_left,
            to_right,
            incl_left,
            incl_right,
            iso,
        })
    }

    fn distributor(a: &FinSet, b: &FinSet, c: &FinSet) -> (FinMap, FinMap) {
        finbase::distributor(a, b, c)
    }

    fn invert_iso(m: &FinMap) -> Result<FinMap> {
        m.inverse()
            .ok_or_else(|| Error::InvalidRep("map is not a bijection".into()))
    }

    fn find_morphism(p: &Container<Self>, q: &Container<Self>, _bounds: SearchBounds) -> SearchOutcome<Morphism<Self>> {
        match search::find_morphism_finset(p, q) {
            Some(m) => SearchOutcome::Found(m),
            None => SearchOutcome::NotReducible,
        }
    }
}
