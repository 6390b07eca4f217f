use std::sync::OnceLock;

use super::{compile_with, reduce, EvalBudget, Term};

/// The fixed encodings of booleans and pairs.
#[derive(Clone, Debug)]
pub struct StandardCodes {
    /// `λx.λy.λz. z x y`
    pub pair: Term,
    /// `λp. p tt`
    pub fst: Term,
    /// `λp. p ff`
    pub snd: Term,
    /// `λx.λy. x`, the code for 1.
    pub tt: Term,
    /// `λx.λy. y`, the code for 0.
    pub ff: Term,
    /// `λx. x`
    pub ident: Term,
}

pub fn standard_codes() -> &'static StandardCodes {
    static CODES: OnceLock<StandardCodes> = OnceLock::new();
    CODES.get_or_init(|| {
        let none = Default::default();
        let tt = compile_with("\\x y. x", &none).expect("closed");
        let ff = compile_with("\\x y. y", &none).expect("closed");
        let env = [("tt".to_owned(), tt.clone()), ("ff".to_owned(), ff.clone())]
            .into_iter()
            .collect();
        StandardCodes {
            pair: compile_with("\\x y z. z x y", &none).expect("closed"),
            fst: compile_with("\\p. p tt", &env).expect("closed"),
            snd: compile_with("\\p. p ff", &env).expect("closed"),
            ident: compile_with("\\x. x", &none).expect("closed"),
            tt,
            ff,
        }
    })
}

/// `underline(i)` for `i ∈ {0, 1}`.
pub fn underline(i: u8) -> Term {
    let c = standard_codes();
    match i {
        0 => c.ff.clone(),
        1 => c.tt.clone(),
        _ => panic!("only 0 and 1 have codes"),
    }
}

/// Normal form of `pair a b`. Pairs of normal forms always normalize, in
/// a handful of steps.
pub fn pair_value(a: &Term, b: &Term) -> Term {
    let t = standard_codes().pair.clone().apply_all([a.clone(), b.clone()]);
    reduce(&t, EvalBudget::default())
        .normal()
        .expect("pairing normalizes")
}

/// `λx. g (f x)`.
pub fn compose_code(g: &Term, f: &Term) -> Term {
    let env = [("g".to_owned(), g.clone()), ("f".to_owned(), f.clone())]
        .into_iter()
        .collect();
    compile_with("\\x. g (f x)", &env).expect("closed")
}

/// `λx. t`.
pub fn const_code(t: &Term) -> Term {
    Term::app(Term::K, t.clone())
}
