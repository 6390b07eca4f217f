//! Seeded law suites over the container engine, reported check by check.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use rand::Rng;
use serde::Serialize;

use crate::containers::{
    all_morphisms_finset, find_morphism_finset, find_morphism_pasm, normalize, Container, FinSetCat, Morphism,
    MorphismRep, SearchBounds,
};
use crate::finbase::FinSet;
use crate::gen;
use crate::operators::{
    coproduct, distributivity, star_meet_witness, poly_cardinality, product, star, star_assoc_bijection,
    star_semantics_bijection, tensor, tensor_distributes, tensor_product_map,
};
use crate::sk::{compile, pair_value, reduce, standard_codes, underline, EvalBudget, Expr, Term};
use crate::weihrauch::{
    c_of, ext_reduce_failure, hat_of, phi_of, reduce as reduce_problems, w_of, witness_from_phi_hat,
    witness_into_phi_hat, wlem, ExtendedPredicate, ProblemReduction,
};

pub const SUITES: [&str; 9] = [
    "category",
    "lattice",
    "answerability",
    "tensor",
    "star-semantics",
    "star-meet",
    "round-trip",
    "predicates",
    "sk",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub checked: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub suite: String,
    pub seed: u64,
    pub sizes: usize,
    pub checks: Vec<CheckResult>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failed == 0)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.failed == 0 { "PASS" } else { "FAIL" };
            writeln!(out, "{status} {}/{}: {} checked, {} failed", self.suite, c.name, c.checked, c.failed).unwrap();
            if let Some(f) = &c.first_failure {
                writeln!(out, "  first failure: {f}").unwrap();
            }
        }
        out
    }
}

#[derive(Default)]
struct Checks {
    list: Vec<CheckResult>,
}

impl Checks {
    fn record(&mut self, name: &str, ok: bool, what: impl FnOnce() -> String) {
        let c = match self.list.iter_mut().find(|c| c.name == name) {
            Some(c) => c,
            None => {
                self.list.push(CheckResult {
                    name: name.to_owned(),
                    checked: 0,
                    failed: 0,
                    first_failure: None,
                });
                self.list.last_mut().expect("just pushed")
            }
        };
        c.checked += 1;
        if !ok {
            c.failed += 1;
            c.first_failure.get_or_insert_with(what);
        }
    }
}

/// Runs one suite. `sizes` caps the carriers of generated data.
pub fn run_suite(suite: &str, seed: u64, sizes: usize) -> Option<LawReport> {
    let mut rng = gen::rng(seed);
    let mut ch = Checks::default();
    let sizes = sizes.max(1);
    match suite {
        "category" => category(&mut rng, sizes.min(3), &mut ch),
        "lattice" => lattice(sizes.min(2), &mut ch),
        "answerability" => answerability(&mut rng, sizes.min(3), &mut ch),
        "tensor" => tensor_laws(&mut rng, sizes.min(2), &mut ch),
        "star-semantics" => star_semantics(&mut rng, sizes.min(3), &mut ch),
        "star-meet" => star_meet(&mut rng, &mut ch),
        "round-trip" => round_trip(&mut rng, sizes.min(3), &mut ch),
        "predicates" => predicates(&mut ch),
        "sk" => sk_laws(&mut rng, &mut ch),
        _ => return None,
    }
    Some(LawReport {
        suite: suite.to_owned(),
        seed,
        sizes,
        checks: ch.list,
    })
}

type M = Morphism<FinSetCat>;

fn key(m: &M) -> (Vec<usize>, Vec<usize>) {
    (m.forward().graph().to_vec(), m.backward().graph().to_vec())
}

fn category(rng: &mut impl Rng, max: usize, ch: &mut Checks) {
    for _ in 0..200 {
        let (f, g, h) = gen::composable_triple(rng, max);
        let lhs = M::compose(&h, &M::compose(&g, &f).expect("composable")).expect("composable");
        let rhs = M::compose(&M::compose(&h, &g).expect("composable"), &f).expect("composable");
        ch.record("associativity", lhs == rhs, || format!("{f:?}"));
        let left = M::compose(&M::identity(f.dst()), &f).expect("composable");
        ch.record("left-identity", left == f, || format!("{f:?}"));
        let right = M::compose(&f, &M::identity(f.src())).expect("composable");
        ch.record("right-identity", right == f, || format!("{f:?}"));
        let rep = MorphismRep::from_morphism(&lhs);
        ch.record(
            "normal-form",
            rep.validate() && normalize(&rep).as_ref() == Ok(&lhs),
            || format!("{lhs:?}"),
        );
    }
}

/// Universal properties by exhaustive uniqueness: every cone factors
/// through exactly one mediating morphism.
fn lattice(max: usize, ch: &mut Checks) {
    let all = gen::all_containers(max);
    for p in &all {
        for q in &all {
            let prod = product(p, q).expect("product");
            let sum = coproduct(p, q).expect("coproduct");
            for z in &all {
                let into_t = all_morphisms_finset(z, &prod.container);
                let mut cones: HashMap<_, usize> = HashMap::new();
                for h in &into_t {
                    let a = M::compose(&prod.pi1, h).expect("composable");
                    let b = M::compose(&prod.pi2, h).expect("composable");
                    *cones.entry((key(&a), key(&b))).or_default() += 1;
                }
                let zp = all_morphisms_finset(z, p);
                let zq = all_morphisms_finset(z, q);
                let mut ok = cones.len() == zp.len() * zq.len() && cones.values().all(|&n| n == 1);
                for f in &zp {
                    for g in &zq {
                        let h = prod.pair(f, g).expect("pairing");
                        ok &= M::compose(&prod.pi1, &h).as_ref() == Ok(f) && M::compose(&prod.pi2, &h).as_ref() == Ok(g);
                    }
                }
                ch.record("product-universal", ok, || format!("{p:?} {q:?} {z:?}"));

                let from_s = all_morphisms_finset(&sum.container, z);
                let mut cocones: HashMap<_, usize> = HashMap::new();
                for h in &from_s {
                    let a = M::compose(h, &sum.inl).expect("composable");
                    let b = M::compose(h, &sum.inr).expect("composable");
                    *cocones.entry((key(&a), key(&b))).or_default() += 1;
                }
                let pz = all_morphisms_finset(p, z);
                let qz = all_morphisms_finset(q, z);
                let mut ok = cocones.len() == pz.len() * qz.len() && cocones.values().all(|&n| n == 1);
                for f in &pz {
                    for g in &qz {
                        let h = sum.copair(f, g).expect("copairing");
                        ok &= M::compose(&h, &sum.inl).as_ref() == Ok(f) && M::compose(&h, &sum.inr).as_ref() == Ok(g);
                    }
                }
                ch.record("coproduct-universal", ok, || format!("{p:?} {q:?} {z:?}"));

                let (d, d_inv) = distributivity(p, q, z).expect("distributivity");
                let there = M::compose(&d_inv, &d).expect("composable") == M::identity(d.src());
                let back = M::compose(&d, &d_inv).expect("composable") == M::identity(d.dst());
                ch.record("distributivity", there && back, || format!("{p:?} {q:?} {z:?}"));
            }
        }
    }
}

fn answerability(rng: &mut impl Rng, max: usize, ch: &mut Checks) {
    for _ in 0..100 {
        let p = gen::answerable_container(rng, 0, max, max);
        let q = gen::answerable_container(rng, 0, max, max);
        let prod = product(&p, &q).expect("product").container;
        ch.record("product-preserves", prod.is_answerable(), || format!("{p:?} {q:?}"));
        let sum = coproduct(&p, &q).expect("coproduct").container;
        ch.record("coproduct-preserves", sum.is_answerable(), || format!("{p:?} {q:?}"));
    }
    ch.record("initial-answerable", Container::<FinSetCat>::initial().is_answerable(), String::new);
    ch.record("terminal-not-answerable", !Container::<FinSetCat>::terminal().is_answerable(), String::new);
}

fn tensor_laws(rng: &mut impl Rng, max: usize, ch: &mut Checks) {
    for _ in 0..50 {
        let p = gen::container(rng, max, max);
        let q = gen::container(rng, max, max);
        let r = gen::container(rng, max, max);
        let (d, d_inv) = tensor_distributes(&p, &q, &r).expect("distributor");
        let ok = M::compose(&d_inv, &d).expect("composable") == M::identity(d.src())
            && M::compose(&d, &d_inv).expect("composable") == M::identity(d.dst());
        ch.record("distributes-over-coproduct", ok, || format!("{p:?} {q:?} {r:?}"));
        ch.record("product-map", tensor_product_map(&p, &q, &r).is_ok(), || format!("{p:?} {q:?} {r:?}"));
        if p.is_answerable() && q.is_answerable() {
            let t = tensor(&p, &q).expect("tensor");
            ch.record("preserves-answerable", t.is_answerable(), || format!("{p:?} {q:?}"));
        }
    }
}

/// Largest `|⟦Q⟧(⟦P⟧(3))|` admitted to the bijection corpus.
pub const STAR_EVAL_LIMIT: u128 = 20_000;

/// Twenty pairs with carriers at most `max` whose composite evaluation at
/// a 3-element argument stays within [`STAR_EVAL_LIMIT`].
pub fn star_corpus(rng: &mut impl Rng, max: usize) -> Vec<(Container<FinSetCat>, Container<FinSetCat>)> {
    let mut out = Vec::new();
    while out.len() < 20 {
        let p = gen::container(rng, max, max);
        let q = gen::container(rng, max, max);
        if poly_cardinality(&q, poly_cardinality(&p, 3) as usize) <= STAR_EVAL_LIMIT {
            out.push((p, q));
        }
    }
    out
}

fn star_semantics(rng: &mut impl Rng, max: usize, ch: &mut Checks) {
    for (p, q) in star_corpus(rng, max) {
        for n in 0..=3 {
            let a = FinSet::numbered("a", n);
            let ok = star_semantics_bijection(&p, &q, &a).is_ok_and(|m| m.is_bijective());
            ch.record("bijection", ok, || format!("{p:?} {q:?} |A|={n}"));
        }
    }
    for _ in 0..200 {
        let p = gen::container(rng, max, max);
        let q = gen::container(rng, max, max);
        let s = star(&p, &q);
        let n = rng.gen_range(0..=3);
        let ok = poly_cardinality(&s, n) == poly_cardinality(&q, poly_cardinality(&p, n) as usize);
        ch.record("cardinality", ok, || format!("{p:?} {q:?} |A|={n}"));
    }
    for _ in 0..20 {
        let cs: Vec<_> = (0..3).map(|_| gen::container(rng, 2, 2)).collect();
        let n = rng.gen_range(0..=2);
        let ok = star_assoc_bijection(&cs[0], &cs[1], &cs[2], &FinSet::numbered("a", n)).is_ok_and(|m| m.is_bijective());
        ch.record("associativity-bijection", ok, || format!("{cs:?} |A|={n}"));
    }
}

fn star_meet(rng: &mut impl Rng, ch: &mut Checks) {
    for _ in 0..10 {
        let cs: Vec<_> = (0..3).map(|_| gen::container(rng, 2, 2)).collect();
        let (p, q, r) = (&cs[0], &cs[1], &cs[2]);
        let found = star_meet_witness(p, q, r);
        ch.record("witness-found", found.is_ok(), || format!("{cs:?}"));
        // Degrees do not depend on the representative: `r × r` is
        // equivalent to `r`, and the inequality must hold with it too.
        let r2 = product(r, r).expect("product").container;
        let equivalent = find_morphism_finset(r, &r2).is_some() && find_morphism_finset(&r2, r).is_some();
        let lhs = product(&star(p, q), &r2).expect("product").container;
        let rhs = star(&product(p, &r2).expect("product").container, q);
        let fits = equivalent && find_morphism_finset(&lhs, &rhs).is_some();
        ch.record("degree-inequality", fits, || format!("{cs:?}"));
    }
}

fn isomorphic(p: &Container<FinSetCat>, q: &Container<FinSetCat>) -> bool {
    let back = all_morphisms_finset(q, p);
    all_morphisms_finset(p, q).iter().any(|f| {
        back.iter().any(|g| {
            M::compose(g, f).is_ok_and(|m| m == M::identity(p)) && M::compose(f, g).is_ok_and(|m| m == M::identity(q))
        })
    })
}

fn round_trip(rng: &mut impl Rng, max: usize, ch: &mut Checks) {
    for _ in 0..50 {
        let f = gen::problem(rng, max, max);
        let g = w_of(&c_of(&f)).expect("answerable");
        ch.record("problem-answerable", c_of(&f).is_answerable(), || format!("{f:?}"));
        let there = reduce_problems(&f, &g);
        let back = reduce_problems(&g, &f);
        let ok = match (&there, &back) {
            (Some(a), Some(b)) => {
                a.verify(&f, &g)
                    && b.verify(&g, &f)
                    && ProblemReduction::compose(b, a, &f, &f).is_some_and(|w| w.verify(&f, &f))
            }
            _ => false,
        };
        ch.record("problem-mutual-reducibility", ok, || format!("{f:?}"));
    }
    for _ in 0..50 {
        let p = gen::answerable_container(rng, 0, max, max);
        let c = c_of(&w_of(&p).expect("answerable"));
        ch.record("container-isomorphism", isomorphic(&p, &c), || format!("{p:?}"));
    }
}

/// Extended predicates used by the double-translation checks.
pub fn predicate_corpus() -> Vec<ExtendedPredicate> {
    let (a, b, k) = (underline(0), underline(1), Term::K);
    let one = |t: &Term| BTreeSet::from([t.clone()]);
    let pred = |entries: Vec<(Term, Vec<BTreeSet<Term>>)>| {
        ExtendedPredicate::new(entries.into_iter().map(|(r, f)| (r, f.into_iter().collect())).collect())
            .expect("normal codes")
    };
    vec![
        wlem(),
        pred(vec![(a.clone(), vec![one(&a)])]),
        pred(vec![(a.clone(), vec![BTreeSet::from([a.clone(), b.clone()])])]),
        pred(vec![(a.clone(), vec![one(&a)]), (b.clone(), vec![one(&b)])]),
        pred(vec![(k.clone(), vec![one(&a), one(&b), one(&k)])]),
        pred(vec![(a.clone(), vec![one(&b), BTreeSet::from([a, k])]), (b.clone(), vec![one(&b)])]),
    ]
}

fn predicates(ch: &mut Checks) {
    let bounds = SearchBounds::default();
    for p in predicate_corpus() {
        let h = hat_of(&p);
        let q = phi_of(&h).expect("partitioned");
        let a = ext_reduce_failure(&p, &q, &witness_into_phi_hat(&p));
        ch.record("into-double", a.is_none(), || a.clone().unwrap_or_default());
        let b = ext_reduce_failure(&q, &p, &witness_from_phi_hat(&p));
        ch.record("from-double", b.is_none(), || b.clone().unwrap_or_default());
        let hh = hat_of(&q);
        ch.record("container-to-double", find_morphism_pasm(&h, &hh, bounds).is_found(), || format!("{p:?}"));
        ch.record("container-from-double", find_morphism_pasm(&hh, &h, bounds).is_found(), || format!("{p:?}"));
    }
}

fn nf(t: &Term, steps: u64) -> Option<Term> {
    reduce(t, EvalBudget::new(steps).expect("positive")).normal()
}

fn random_expr(rng: &mut impl Rng, depth: usize) -> Expr {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..3) {
            0 => Expr::var("x"),
            1 => Expr::Const(Term::S),
            _ => Expr::Const(Term::K),
        };
    }
    Expr::app(random_expr(rng, depth - 1), random_expr(rng, depth - 1))
}

fn sk_laws(rng: &mut impl Rng, ch: &mut Checks) {
    for _ in 0..1000 {
        let t = gen::term(rng, 12);
        let once = reduce(&t, EvalBudget::default());
        ch.record("determinism", once == reduce(&t, EvalBudget::default()), || t.to_string());
        let small = nf(&t, 200);
        ch.record(
            "budget-monotonicity",
            small.is_none() || small == nf(&t, 10_000),
            || t.to_string(),
        );
    }
    for _ in 0..50 {
        let body = random_expr(rng, 4);
        let arg = gen::term(rng, 4);
        let abs = compile(Expr::lam("x", body.clone())).expect("closed");
        let env = BTreeMap::from([("x".to_owned(), arg.clone())]);
        let direct = compile(body.clone().substitute(&env)).expect("closed");
        let lhs = nf(&Term::app(abs, arg.clone()), 10_000);
        let rhs = nf(&direct, 10_000);
        ch.record("beta-simulation", lhs == rhs, || format!("{body:?} {arg}"));
    }
    let c = standard_codes();
    let (a, b) = (Term::S, Term::app(Term::K, Term::S));
    let pab = pair_value(&a, &b);
    ch.record("first-projection", nf(&Term::app(c.fst.clone(), pab.clone()), 1000) == Some(a.clone()), String::new);
    ch.record("second-projection", nf(&Term::app(c.snd.clone(), pab), 1000) == Some(b.clone()), String::new);
    ch.record("true-selects-first", nf(&c.tt.clone().apply_all([a.clone(), b.clone()]), 1000) == Some(a.clone()), String::new);
    ch.record("false-selects-second", nf(&c.ff.clone().apply_all([a.clone(), b.clone()]), 1000) == Some(b.clone()), String::new);
    ch.record("identity", nf(&Term::app(c.ident.clone(), b.clone()), 1000) == Some(b), String::new);
}

/// A deterministic text form of a set of reports.
pub fn render(reports: &[LawReport]) -> String {
    reports.iter().map(LawReport::to_text).collect()
}
