//! Binary products and coproducts of containers, and the distributivity
//! isomorphism between them.

use crate::containers::base::{coproduct_map, product_map, symmetry};
use crate::containers::{BaseCategory, Container, Coproduct, Morphism, Product};
use crate::error::{Error, Result};

/// `P + Q : X₁ + X₂ → U₁ + U₂` with its coprojections.
#[derive(Clone, Debug)]
pub struct SumContainer<B: BaseCategory> {
    pub container: Container<B>,
    pub inl: Morphism<B>,
    pub inr: Morphism<B>,
    left: Container<B>,
    right: Container<B>,
    base: Coproduct<B>,
    total: Coproduct<B>,
}

pub fn coproduct<B: BaseCategory>(p: &Container<B>, q: &Container<B>) -> Result<SumContainer<B>> {
    let base = B::coproduct(p.base(), q.base());
    let total = B::coproduct(p.total(), q.total());
    let bundle = B::copair(
        &total,
        &B::compose(&base.inl, p.bundle())?,
        &B::compose(&base.inr, q.bundle())?,
    )?;
    let container = Container::new(bundle)?;
    let apex = B::pullback(&base.inl, container.bundle())?;
    let inl = Morphism::new(p.clone(), container.clone(), base.inl.clone(), B::factor_left(&total, &apex.proj2)?)?;
    let apex = B::pullback(&base.inr, container.bundle())?;
    let inr = Morphism::new(q.clone(), container.clone(), base.inr.clone(), B::factor_right(&total, &apex.proj2)?)?;
    Ok(SumContainer {
        container,
        inl,
        inr,
        left: p.clone(),
        right: q.clone(),
        base,
        total,
    })
}

impl<B: BaseCategory> SumContainer<B> {
    /// `[f, g] : P + Q → R`.
    pub fn copair(&self, f: &Morphism<B>, g: &Morphism<B>) -> Result<Morphism<B>> {
        if f.src() != &self.left || g.src() != &self.right || f.dst() != g.dst() {
            return Err(Error::TypeMismatch("copairing legs do not match the summands".into()));
        }
        let r = f.dst();
        let forward = B::copair(&self.base, f.forward(), g.forward())?;
        let apex = B::pullback(&forward, r.bundle())?;
        let split = B::split(&self.base, &apex.proj1)?;

        let to_r = B::compose(&apex.proj2, &split.incl_left)?;
        let med = B::mediating(f.apex(), &to_r, &split.to_left)?;
        let b1 = B::compose(&self.total.inl, &B::compose(f.backward(), &med)?)?;

        let to_r = B::compose(&apex.proj2, &split.incl_right)?;
        let med = B::mediating(g.apex(), &to_r, &split.to_right)?;
        let b2 = B::compose(&self.total.inr, &B::compose(g.backward(), &med)?)?;

        let backward = B::compose(&B::copair(&split.sum, &b1, &b2)?, &split.iso)?;
        Morphism::new(self.container.clone(), r.clone(), forward, backward)
    }
}

/// `P × Q : X₁ × U₂ + U₁ × X₂ → U₁ × U₂` with its projections.
#[derive(Clone, Debug)]
pub struct ProductContainer<B: BaseCategory> {
    pub container: Container<B>,
    pub pi1: Morphism<B>,
    pub pi2: Morphism<B>,
    left_factor: Container<B>,
    right_factor: Container<B>,
    base: Product<B>,
    left: Product<B>,
    right: Product<B>,
    total: Coproduct<B>,
}

pub fn product<B: BaseCategory>(p: &Container<B>, q: &Container<B>) -> Result<ProductContainer<B>> {
    let base = B::product(p.base(), q.base());
    let left = B::product(p.total(), q.base());
    let right = B::product(p.base(), q.total());
    let total = B::coproduct(&left.obj, &right.obj);
    let l = product_map::<B>(p.bundle(), &B::identity(q.base()))?;
    let r = product_map::<B>(&B::identity(p.base()), q.bundle())?;
    let container = Container::new(B::copair(&total, &l, &r)?)?;

    let apex = B::pullback(&base.p1, p.bundle())?;
    let other = B::compose(&base.p2, &apex.proj1)?;
    let back = B::compose(&total.inl, &B::pair(&left, &apex.proj2, &other)?)?;
    let pi1 = Morphism::new(container.clone(), p.clone(), base.p1.clone(), back)?;

    let apex = B::pullback(&base.p2, q.bundle())?;
    let other = B::compose(&base.p1, &apex.proj1)?;
    let back = B::compose(&total.inr, &B::pair(&right, &other, &apex.proj2)?)?;
    let pi2 = Morphism::new(container.clone(), q.clone(), base.p2.clone(), back)?;

    Ok(ProductContainer {
        container,
        pi1,
        pi2,
        left_factor: p.clone(),
        right_factor: q.clone(),
        base,
        left,
        right,
        total,
    })
}

impl<B: BaseCategory> ProductContainer<B> {
    /// `⟨f, g⟩ : R → P × Q`. A question to `R` becomes questions to both
    /// factors; an answer from either factor is passed back through its leg.
    pub fn pair(&self, f: &Morphism<B>, g: &Morphism<B>) -> Result<Morphism<B>> {
        if f.dst() != &self.left_factor || g.dst() != &self.right_factor || f.src() != g.src() {
            return Err(Error::TypeMismatch("pairing legs do not match the factors".into()));
        }
        let r = f.src();
        let forward = B::pair(&self.base, f.forward(), g.forward())?;
        let apex = B::pullback(&forward, self.container.bundle())?;
        let split = B::split(&self.total, &apex.proj2)?;

        let alpha = B::compose(&self.left.p1, &split.to_left)?;
        let beta = B::compose(&apex.proj1, &split.incl_left)?;
        let b1 = B::compose(f.backward(), &B::mediating(f.apex(), &alpha, &beta)?)?;

        let alpha = B::compose(&self.right.p2, &split.to_right)?;
        let beta = B::compose(&apex.proj1, &split.incl_right)?;
        let b2 = B::compose(g.backward(), &B::mediating(g.apex(), &alpha, &beta)?)?;

        let backward = B::compose(&B::copair(&split.sum, &b1, &b2)?, &split.iso)?;
        Morphism::new(r.clone(), self.container.clone(), forward, backward)
    }
}

/// `A × C + B × C → (A + B) × C` and its inverse.
pub(crate) fn right_distributor<B: BaseCategory>(a: &B::Obj, b: &B::Obj, c: &B::Obj) -> Result<(B::Mor, B::Mor)> {
    let ab = B::coproduct(a, b);
    let (dist, undist) = B::distributor(c, a, b);
    let swaps = coproduct_map::<B>(&symmetry::<B>(a, c)?, &symmetry::<B>(b, c)?)?;
    let unswaps = coproduct_map::<B>(&symmetry::<B>(c, a)?, &symmetry::<B>(c, b)?)?;
    let fwd = B::compose(&symmetry::<B>(c, &ab.obj)?, &B::compose(&undist, &swaps)?)?;
    let inv = B::compose(&unswaps, &B::compose(&dist, &symmetry::<B>(&ab.obj, c)?)?)?;
    Ok((fwd, inv))
}

/// `(A + B) + (C + D) → (A + C) + (B + D)`.
pub(crate) fn shuffle<B: BaseCategory>(a: &B::Obj, b: &B::Obj, c: &B::Obj, d: &B::Obj) -> Result<B::Mor> {
    let ab = B::coproduct(a, b);
    let cd = B::coproduct(c, d);
    let src = B::coproduct(&ab.obj, &cd.obj);
    let ac = B::coproduct(a, c);
    let bd = B::coproduct(b, d);
    let dst = B::coproduct(&ac.obj, &bd.obj);
    let from_ab = B::copair(
        &ab,
        &B::compose(&dst.inl, &ac.inl)?,
        &B::compose(&dst.inr, &bd.inl)?,
    )?;
    let from_cd = B::copair(
        &cd,
        &B::compose(&dst.inl, &ac.inr)?,
        &B::compose(&dst.inr, &bd.inr)?,
    )?;
    B::copair(&src, &from_ab, &from_cd)
}

/// The pair of morphisms induced by isomorphisms `a` of bases and `b` of
/// totals commuting with the bundles.
pub(crate) fn bundle_iso_morphisms<B: BaseCategory>(
    p: &Container<B>,
    q: &Container<B>,
    a: (&B::Mor, &B::Mor),
    b: (&B::Mor, &B::Mor),
) -> Result<(Morphism<B>, Morphism<B>)> {
    let apex = B::pullback(a.0, q.bundle())?;
    let there = Morphism::new(p.clone(), q.clone(), a.0.clone(), B::compose(b.1, &apex.proj2)?)?;
    let apex = B::pullback(a.1, p.bundle())?;
    let back = Morphism::new(q.clone(), p.clone(), a.1.clone(), B::compose(b.0, &apex.proj2)?)?;
    Ok((there, back))
}

/// The canonical morphism `(P₁ × Q) + (P₂ × Q) → (P₁ + P₂) × Q` together
/// with its inverse.
pub fn distributivity<B: BaseCategory>(
    p1: &Container<B>,
    p2: &Container<B>,
    q: &Container<B>,
) -> Result<(Morphism<B>, Morphism<B>)> {
    let lhs = coproduct(&product(p1, q)?.container, &product(p2, q)?.container)?.container;
    let rhs = product(&coproduct(p1, p2)?.container, q)?.container;
    let (u1, u2, v) = (p1.base(), p2.base(), q.base());
    let (x1, x2, y) = (p1.total(), p2.total(), q.total());
    let (a, a_inv) = right_distributor::<B>(u1, u2, v)?;

    let x1v = B::product(x1, v).obj;
    let x2v = B::product(x2, v).obj;
    let u1y = B::product(u1, y).obj;
    let u2y = B::product(u2, y).obj;
    let (dx, dx_inv) = right_distributor::<B>(x1, x2, v)?;
    let (du, du_inv) = right_distributor::<B>(u1, u2, y)?;
    let b = B::compose(&coproduct_map::<B>(&dx, &du)?, &shuffle::<B>(&x1v, &u1y, &x2v, &u2y)?)?;
    let b_inv = B::compose(&shuffle::<B>(&x1v, &x2v, &u1y, &u2y)?, &coproduct_map::<B>(&dx_inv, &du_inv)?)?;
    bundle_iso_morphisms(&lhs, &rhs, (&a, &a_inv), (&b, &b_inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::containers::{FinSetCat, PAsmCat};
    use crate::finbase::{FinMap, FinSet};

    fn cont(nx: usize, nu: usize, graph: Vec<usize>) -> Container<FinSetCat> {
        Container::from_map(FinMap::new(FinSet::numbered("x", nx), FinSet::numbered("u", nu), graph).unwrap())
    }

    #[test]
    fn coproduct_with_initial_is_iso() {
        let p = cont(3, 2, vec![0, 1, 1]);
        let s = coproduct(&p, &Container::initial()).unwrap();
        assert!(s.inl.is_horizontal());
        assert_eq!(s.container.fibres().iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn copair_of_coprojections_is_identity() {
        let p = cont(2, 2, vec![0, 1]);
        let q = cont(1, 2, vec![1]);
        let s = coproduct(&p, &q).unwrap();
        let id = s.copair(&s.inl, &s.inr).unwrap();
        assert_eq!(id, Morphism::identity(&s.container));
    }

    #[test]
    fn product_fibres_are_sums() {
        let p = cont(3, 2, vec![0, 0, 1]);
        let q = cont(1, 2, vec![1]);
        let pr = product(&p, &q).unwrap();
        let sizes: Vec<usize> = pr.container.fibres().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![2, 3, 1, 2]);
        let id = pr.pair(&pr.pi1, &pr.pi2).unwrap();
        assert_eq!(id, Morphism::identity(&pr.container));
    }

    #[test]
    fn distributivity_round_trips() {
        let p1 = cont(2, 2, vec![0, 1]);
        let p2 = cont(1, 1, vec![0]);
        let q = cont(2, 2, vec![1, 1]);
        let (f, g) = distributivity(&p1, &p2, &q).unwrap();
        assert_eq!(Morphism::compose(&g, &f).unwrap(), Morphism::identity(f.src()));
        assert_eq!(Morphism::compose(&f, &g).unwrap(), Morphism::identity(f.dst()));
    }

    #[test]
    fn pasm_lattice_constructions() {
        let a = crate::assemblies::Assembly::partitioned(
            FinSet::numbered("a", 2),
            vec![crate::sk::Term::parse("K").unwrap(), crate::sk::Term::parse("S").unwrap()],
        )
        .unwrap();
        let p = Container::<PAsmCat>::identity_on(&a).unwrap();
        let q = Container::<PAsmCat>::unit();
        let s = coproduct(&p, &q).unwrap();
        assert_eq!(s.copair(&s.inl, &s.inr).unwrap(), Morphism::identity(&s.container));
        let pr = product(&p, &q).unwrap();
        assert_eq!(pr.pair(&pr.pi1, &pr.pi2).unwrap(), Morphism::identity(&pr.container));
        let (f, g) = distributivity(&p, &q, &q).unwrap();
        assert!(f.is_horizontal() && g.is_horizontal());
        assert_eq!(f.src(), g.dst());
    }
}
