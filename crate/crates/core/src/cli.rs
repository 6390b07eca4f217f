//! Batch commands over a workspace of named bindings. Every command is a
//! pure function returning its report and exit code.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::containers::{
    find_morphism_finset, find_morphism_pasm, BaseKind, Container, FinSetCat, PAsmCat, SearchBounds, SearchOutcome,
};
use crate::error::{Error, Result};
use crate::json::{
    finset_morphism_data, finset_morphism_from_data, pasm_morphism_data, pasm_morphism_from_data, AnyContainer,
    BindingData, MorphismData, Settings, WorkspaceData,
};
use crate::laws;
use crate::operators::{coproduct, product, star, star_p_bounded, tensor};
use crate::sk::{EvalBudget, Term};
use crate::weihrauch::{
    c_of, degree_poset, ext_reduce_failure, ext_reduce_search, hat_of, reduce, ExtReductionWitness, ExtendedPredicate,
    FiniteProblem, ProblemReduction, ReductionData, Reducibility, WitnessData,
};

pub const VERSION: &str = concat!("wcon ", env!("CARGO_PKG_VERSION"));

pub const EXIT_REDUCIBLE: i32 = 0;
pub const EXIT_NOT_REDUCIBLE: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_ERROR: i32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Binding {
    Problem(FiniteProblem),
    Container(AnyContainer),
    Predicate(ExtendedPredicate),
    Term(Term),
}

impl Binding {
    fn type_name(&self) -> &'static str {
        match self {
            Binding::Problem(_) => "problem",
            Binding::Container(AnyContainer::FinSet(_)) => "FinSet container",
            Binding::Container(AnyContainer::PAsm(_)) => "PAsm container",
            Binding::Predicate(_) => "predicate",
            Binding::Term(_) => "term",
        }
    }

    pub fn to_data(&self) -> BindingData {
        match self {
            Binding::Problem(p) => BindingData::Problem(p.to_data()),
            Binding::Container(c) => BindingData::Container(c.to_data()),
            Binding::Predicate(p) => BindingData::Predicate(p.to_data()),
            Binding::Term(t) => BindingData::Term(t.clone()),
        }
    }
}

/// Validated bindings plus search settings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Workspace {
    pub settings: Settings,
    pub bindings: BTreeMap<String, Binding>,
}

impl Workspace {
    pub fn from_data(d: &WorkspaceData) -> Result<Workspace> {
        let budget = EvalBudget::new(d.settings.budget)?;
        let mut bindings = BTreeMap::new();
        for (name, b) in &d.bindings {
            let ctx = |e: Error| Error::Json(format!("binding {name:?}: {e}"));
            let v = match b {
                BindingData::Problem(p) => Binding::Problem(FiniteProblem::from_data(p).map_err(ctx)?),
                BindingData::Container(c) => {
                    Binding::Container(AnyContainer::from_data(c, d.settings.size_bound, budget).map_err(ctx)?)
                }
                BindingData::Predicate(p) => Binding::Predicate(ExtendedPredicate::from_data(p).map_err(ctx)?),
                BindingData::Term(t) => Binding::Term(t.clone()),
            };
            bindings.insert(name.clone(), v);
        }
        Ok(Workspace {
            settings: d.settings,
            bindings,
        })
    }

    pub fn parse(text: &str) -> Result<Workspace> {
        Workspace::from_data(&serde_json::from_str(text)?)
    }

    pub fn to_data(&self) -> WorkspaceData {
        WorkspaceData {
            settings: self.settings,
            bindings: self.bindings.iter().map(|(k, v)| (k.clone(), v.to_data())).collect(),
        }
    }

    pub fn get(&self, name: &str) -> Result<&Binding> {
        self.bindings
            .get(name)
            .ok_or_else(|| Error::UnknownLabel(format!("no binding named {name}")))
    }

    pub fn bounds(&self) -> Result<SearchBounds> {
        Ok(SearchBounds {
            size_bound: self.settings.size_bound,
            budget: EvalBudget::new(self.settings.budget)?,
        })
    }

    /// Overrides the settings with command-line values.
    pub fn with_overrides(mut self, bound: Option<usize>, budget: Option<u64>) -> Workspace {
        if let Some(b) = bound {
            self.settings.size_bound = b;
        }
        if let Some(b) = budget {
            self.settings.budget = b;
        }
        self
    }
}

/// A command's printable output and exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub code: i32,
}

impl Report {
    fn new(text: String, code: i32) -> Report {
        Report { text, code }
    }
}

pub fn error_report(e: &Error, as_json: bool) -> Report {
    let text = if as_json {
        pretty(&json!({"tool": VERSION, "error": e.to_string()}))
    } else {
        format!("{VERSION}\nerror: {e}\n")
    };
    Report::new(text, EXIT_ERROR)
}

fn pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn header(ws: &Workspace, what: &str) -> String {
    format!(
        "{VERSION} {what} size_bound={} budget={}\n",
        ws.settings.size_bound, ws.settings.budget
    )
}

fn finish(ws: &Workspace, what: &str, result: &str, code: i32, witness: Option<Value>, as_json: bool) -> Report {
    let text = if as_json {
        let mut v = json!({
            "tool": VERSION,
            "command": what,
            "settings": ws.settings,
            "result": result,
        });
        if let Some(w) = witness {
            v["witness"] = w;
        }
        pretty(&v)
    } else {
        let mut s = header(ws, what);
        s.push_str(result);
        s.push('\n');
        if let Some(w) = witness {
            s.push_str("witness: ");
            s.push_str(&serde_json::to_string(&w).expect("serializable"));
            s.push('\n');
        }
        s
    };
    Report::new(text, code)
}

fn unknown_result(bound: usize, budget: u64) -> String {
    format!("UNKNOWN-AT-BOUND (size {bound}, budget {budget})")
}

fn mismatch(a: &Binding, b: &Binding) -> Error {
    Error::TypeMismatch(format!("cannot compare a {} with a {}", a.type_name(), b.type_name()))
}

/// `a ≤ b` for two bindings of the same type.
pub fn cmd_reduce(ws: &Workspace, a: &str, b: &str, as_json: bool) -> Report {
    match reduce_inner(ws, a, b, as_json) {
        Ok(r) => r,
        Err(e) => error_report(&e, as_json),
    }
}

fn outcome_report<W>(ws: &Workspace, what: &str, out: SearchOutcome<W>, to_value: impl FnOnce(W) -> Value, as_json: bool) -> Report {
    match out {
        SearchOutcome::Found(w) => finish(ws, what, "REDUCIBLE", EXIT_REDUCIBLE, Some(to_value(w)), as_json),
        SearchOutcome::NotReducible => finish(ws, what, "NOT-REDUCIBLE", EXIT_NOT_REDUCIBLE, None, as_json),
        SearchOutcome::UnknownAtBound { bound, budget } => {
            finish(ws, what, &unknown_result(bound, budget), EXIT_UNKNOWN, None, as_json)
        }
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn reduce_inner(ws: &Workspace, a: &str, b: &str, as_json: bool) -> Result<Report> {
    let what = format!("reduce {a} {b}");
    let bounds = ws.bounds()?;
    let (x, y) = (ws.get(a)?, ws.get(b)?);
    Ok(match (x, y) {
        (Binding::Problem(f), Binding::Problem(g)) => {
            let out = match reduce(f, g) {
                Some(w) => SearchOutcome::Found(w),
                None => SearchOutcome::NotReducible,
            };
            outcome_report(ws, &what, out, |w| to_value(w.to_data(f, g)), as_json)
        }
        (Binding::Container(AnyContainer::FinSet(p)), Binding::Container(AnyContainer::FinSet(q))) => {
            let out = match find_morphism_finset(p, q) {
                Some(m) => SearchOutcome::Found(m),
                None => SearchOutcome::NotReducible,
            };
            outcome_report(ws, &what, out, |m| to_value(finset_morphism_data(&m)), as_json)
        }
        (Binding::Container(AnyContainer::PAsm(p)), Binding::Container(AnyContainer::PAsm(q))) => {
            let out = find_morphism_pasm(p, q, bounds);
            outcome_report(ws, &what, out, |m| to_value(pasm_morphism_data(&m)), as_json)
        }
        (Binding::Predicate(p), Binding::Predicate(q)) => {
            let out = ext_reduce_search(p, q, bounds);
            outcome_report(ws, &what, out, |w| to_value(w.to_data()), as_json)
        }
        (Binding::Container(p), Binding::Container(q)) => {
            return Err(Error::KindMismatch {
                expected: p.kind(),
                found: q.kind(),
            })
        }
        _ => return Err(mismatch(x, y)),
    })
}

/// Re-checks a witness for `a ≤ b`. `witness` is either a bare witness or
/// a full `--json` report carrying one.
pub fn cmd_verify(ws: &Workspace, a: &str, b: &str, witness: &str, as_json: bool) -> Report {
    match verify_inner(ws, a, b, witness) {
        Ok(None) => finish(ws, &format!("verify {a} {b}"), "VERIFIED", 0, None, as_json),
        Ok(Some(why)) => finish(ws, &format!("verify {a} {b}"), &format!("REJECTED: {why}"), 1, None, as_json),
        Err(e) => error_report(&e, as_json),
    }
}

fn verify_inner(ws: &Workspace, a: &str, b: &str, witness: &str) -> Result<Option<String>> {
    let mut v: Value = serde_json::from_str(witness)?;
    if let Some(w) = v.get("witness") {
        v = w.clone();
    }
    let (x, y) = (ws.get(a)?, ws.get(b)?);
    let rejected = |e: Error| Ok(Some(e.to_string()));
    match (x, y) {
        (Binding::Problem(f), Binding::Problem(g)) => {
            let d: ReductionData = serde_json::from_value(v)?;
            let w = match ProblemReduction::from_data(&d, f, g) {
                Ok(w) => w,
                Err(e) => return rejected(e),
            };
            Ok((!w.verify(f, g)).then(|| "reduction obligations fail".to_owned()))
        }
        (Binding::Container(AnyContainer::FinSet(p)), Binding::Container(AnyContainer::FinSet(q))) => {
            let d: MorphismData = serde_json::from_value(v)?;
            match finset_morphism_from_data(&d, p, q) {
                Ok(_) => Ok(None),
                Err(e) => rejected(e),
            }
        }
        (Binding::Container(AnyContainer::PAsm(p)), Binding::Container(AnyContainer::PAsm(q))) => {
            let d: MorphismData = serde_json::from_value(v)?;
            match pasm_morphism_from_data(&d, p, q) {
                Ok(_) => Ok(None),
                Err(e) => rejected(e),
            }
        }
        (Binding::Predicate(p), Binding::Predicate(q)) => {
            let d: WitnessData = serde_json::from_value(v)?;
            let w = match ExtReductionWitness::from_data(&d) {
                Ok(w) => w,
                Err(e) => return rejected(e),
            };
            Ok(ext_reduce_failure(p, q, &w))
        }
        _ => Err(mismatch(x, y)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    Plus,
    Times,
    Par,
    Star,
    StarP(usize),
    Open,
    Close,
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '+' {
            out.push(Tok::Plus);
            i += 1;
        } else if c == '(' {
            out.push(Tok::Open);
            i += 1;
        } else if c == ')' {
            out.push(Tok::Close);
            i += 1;
        } else if c.is_alphanumeric() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || matches!(chars[i], '_' | '-' | '.')) {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            out.push(match word.as_str() {
                "x" => Tok::Times,
                "par" => Tok::Par,
                "star" => Tok::Star,
                "star_p" => {
                    let rest: String = chars[i..].iter().collect();
                    let close = rest
                        .strip_prefix('[')
                        .and_then(|r| r.find(']').map(|k| &r[..k]))
                        .ok_or_else(|| Error::Parse("star_p needs a bound, as in star_p[5]".into()))?;
                    let n = close
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad star_p bound {close:?}")))?;
                    i += close.chars().count() + 2;
                    Tok::StarP(n)
                }
                _ => Tok::Name(word),
            });
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct ExprParser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    ws: &'a Workspace,
}

fn kind_error(expected: BaseKind, found: BaseKind) -> Error {
    Error::KindMismatch { expected, found }
}

fn same_kind<R>(
    a: AnyContainer,
    b: AnyContainer,
    fin: impl FnOnce(&Container<FinSetCat>, &Container<FinSetCat>) -> Result<Container<FinSetCat>>,
    pasm: impl FnOnce(&Container<PAsmCat>, &Container<PAsmCat>) -> Result<R>,
) -> Result<AnyContainer>
where
    R: Into<Container<PAsmCat>>,
{
    match (a, b) {
        (AnyContainer::FinSet(p), AnyContainer::FinSet(q)) => Ok(AnyContainer::FinSet(fin(&p, &q)?)),
        (AnyContainer::PAsm(p), AnyContainer::PAsm(q)) => Ok(AnyContainer::PAsm(pasm(&p, &q)?.into())),
        (p, q) => Err(kind_error(p.kind(), q.kind())),
    }
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn sum(&mut self) -> Result<AnyContainer> {
        let mut acc = self.prod()?;
        while self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            let rhs = self.prod()?;
            acc = same_kind(acc, rhs, |p, q| Ok(coproduct(p, q)?.container), |p, q| Ok(coproduct(p, q)?.container))?;
        }
        Ok(acc)
    }

    fn prod(&mut self) -> Result<AnyContainer> {
        let mut acc = self.par()?;
        while self.peek() == Some(&Tok::Times) {
            self.pos += 1;
            let rhs = self.par()?;
            acc = same_kind(acc, rhs, |p, q| Ok(product(p, q)?.container), |p, q| Ok(product(p, q)?.container))?;
        }
        Ok(acc)
    }

    fn par(&mut self) -> Result<AnyContainer> {
        let mut acc = self.star()?;
        while self.peek() == Some(&Tok::Par) {
            self.pos += 1;
            let rhs = self.star()?;
            acc = same_kind(acc, rhs, tensor, tensor)?;
        }
        Ok(acc)
    }

    fn star(&mut self) -> Result<AnyContainer> {
        let mut acc = self.atom()?;
        loop {
            match self.peek().cloned() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.atom()?;
                    acc = match (acc, rhs) {
                        (AnyContainer::FinSet(p), AnyContainer::FinSet(q)) => AnyContainer::FinSet(star(&p, &q)),
                        (AnyContainer::FinSet(_), q) => return Err(kind_error(BaseKind::FinSet, q.kind())),
                        (p, _) => return Err(kind_error(BaseKind::FinSet, p.kind())),
                    };
                }
                Some(Tok::StarP(n)) => {
                    self.pos += 1;
                    let rhs = self.atom()?;
                    let budget = EvalBudget::new(self.ws.settings.budget)?;
                    acc = match (acc, rhs) {
                        (AnyContainer::PAsm(p), AnyContainer::PAsm(q)) => {
                            AnyContainer::PAsm(star_p_bounded(&p, &q, n, budget)?)
                        }
                        (AnyContainer::PAsm(_), q) => return Err(kind_error(BaseKind::PAsm, q.kind())),
                        (p, _) => return Err(kind_error(BaseKind::PAsm, p.kind())),
                    };
                }
                _ => return Ok(acc),
            }
        }
    }

    fn atom(&mut self) -> Result<AnyContainer> {
        match self.peek().cloned() {
            Some(Tok::Open) => {
                self.pos += 1;
                let e = self.sum()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(Error::Parse("missing )".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Tok::Name(n)) => {
                self.pos += 1;
                match self.ws.get(&n)? {
                    Binding::Container(c) => Ok(c.clone()),
                    Binding::Problem(f) => Ok(AnyContainer::FinSet(c_of(f))),
                    Binding::Predicate(p) => Ok(AnyContainer::PAsm(hat_of(p))),
                    Binding::Term(_) => Err(Error::TypeMismatch(format!("{n} is a term, not a container"))),
                }
            }
            Some(t) => Err(Error::Parse(format!("unexpected {t:?}"))),
            None => Err(Error::Parse("unexpected end of expression".into())),
        }
    }
}

/// Evaluates an operator expression. Problems enter as `c(f)`, predicates
/// as `p̂`. Precedence from loosest: `+`, `x`, `par`, then `star` and
/// `star_p[b]`; all left associative.
pub fn eval_expr(ws: &Workspace, src: &str) -> Result<AnyContainer> {
    let mut p = ExprParser {
        toks: tokenize(src)?,
        pos: 0,
        ws,
    };
    let out = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(out)
}

pub fn cmd_expr(ws: &Workspace, src: &str, as_json: bool) -> Report {
    match eval_expr(ws, src) {
        Ok(c) => {
            let binding = BindingData::Container(c.to_data());
            let text = if as_json {
                pretty(&binding)
            } else {
                let mut s = header(ws, &format!("expr {src}"));
                s.push_str(&format!(
                    "kind={} positions={} directions={} answerable={}\n",
                    c.kind(),
                    c.positions(),
                    c.directions(),
                    c.is_answerable()
                ));
                s.push_str(&pretty(&binding));
                s
            };
            Report::new(text, 0)
        }
        Err(e) => error_report(&e, as_json),
    }
}

/// Runs `suite` (or every suite for `"all"`); exit 1 on any failure.
pub fn cmd_laws(suite: &str, seed: u64, sizes: usize, as_json: bool) -> Report {
    let names: Vec<&str> = if suite == "all" { laws::SUITES.to_vec() } else { vec![suite] };
    let mut reports = Vec::new();
    for n in names {
        match laws::run_suite(n, seed, sizes) {
            Some(r) => reports.push(r),
            None => {
                let e = Error::UnknownLabel(format!("no suite {n}; known: all, {}", laws::SUITES.join(", ")));
                return error_report(&e, as_json);
            }
        }
    }
    let ok = reports.iter().all(laws::LawReport::passed);
    let verdict = if ok { "PASS" } else { "FAIL" };
    let text = if as_json {
        pretty(&json!({"tool": VERSION, "suite": suite, "seed": seed, "sizes": sizes, "result": verdict, "reports": reports}))
    } else {
        format!("{VERSION} laws suite={suite} seed={seed} sizes={sizes}\n{}RESULT {verdict}\n", laws::render(&reports))
    };
    Report::new(text, if ok { 0 } else { 1 })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ItemType {
    Problem,
    FinSet,
    PAsm,
    Predicate,
}

fn item_type(b: &Binding) -> Option<ItemType> {
    match b {
        Binding::Problem(_) => Some(ItemType::Problem),
        Binding::Container(AnyContainer::FinSet(_)) => Some(ItemType::FinSet),
        Binding::Container(AnyContainer::PAsm(_)) => Some(ItemType::PAsm),
        Binding::Predicate(_) => Some(ItemType::Predicate),
        Binding::Term(_) => None,
    }
}

/// The degree poset of `names` (every comparable binding when empty), as
/// text or DOT.
pub fn cmd_poset(ws: &Workspace, names: &[String], dot: bool) -> Report {
    let (text, graph) = cmd_poset_both(ws, names);
    match graph {
        Some(g) if dot => Report::new(g, 0),
        _ => text,
    }
}

/// The text report and, on success, the DOT rendering of one poset run.
pub fn cmd_poset_both(ws: &Workspace, names: &[String]) -> (Report, Option<String>) {
    match poset_inner(ws, names) {
        Ok((text, dot)) => (Report::new(text, 0), Some(dot)),
        Err(e) => (error_report(&e, false), None),
    }
}

fn poset_inner(ws: &Workspace, names: &[String]) -> Result<(String, String)> {
    let names: Vec<String> = if names.is_empty() {
        ws.bindings
            .iter()
            .filter(|(_, b)| item_type(b).is_some())
            .map(|(k, _)| k.clone())
            .collect()
    } else {
        names.to_vec()
    };
    let mut ty = None;
    for n in &names {
        let b = ws.get(n)?;
        let t = item_type(b).ok_or_else(|| Error::TypeMismatch(format!("{n} is a term")))?;
        if ty.is_some_and(|u| u != t) {
            return Err(Error::TypeMismatch("poset items must all have the same type".into()));
        }
        ty = Some(t);
    }
    let bounds = ws.bounds()?;
    let definite = |found: bool| if found { Reducibility::Reducible } else { Reducibility::NotReducible };
    let semi = |found: bool| {
        if found {
            Reducibility::Reducible
        } else {
            Reducibility::UnknownAtBound {
                bound: bounds.size_bound,
                budget: bounds.budget.max_steps(),
            }
        }
    };
    let kind = match ty {
        Some(ItemType::PAsm | ItemType::Predicate) => BaseKind::PAsm,
        _ => BaseKind::FinSet,
    };
    let bound = (kind == BaseKind::PAsm).then(|| (bounds.size_bound, bounds.budget.max_steps()));
    let poset = degree_poset(kind, bound, &names, |a, b| {
        match (&ws.bindings[a], &ws.bindings[b]) {
            (Binding::Problem(f), Binding::Problem(g)) => definite(reduce(f, g).is_some()),
            (Binding::Container(AnyContainer::FinSet(p)), Binding::Container(AnyContainer::FinSet(q))) => {
                definite(find_morphism_finset(p, q).is_some())
            }
            (Binding::Container(AnyContainer::PAsm(p)), Binding::Container(AnyContainer::PAsm(q))) => {
                semi(find_morphism_pasm(p, q, bounds).is_found())
            }
            (Binding::Predicate(p), Binding::Predicate(q)) => semi(ext_reduce_search(p, q, bounds).is_found()),
            _ => unreachable!("types checked above"),
        }
    });
    let mut dot = format!(
        "// {VERSION} poset size_bound={} budget={}\n",
        ws.settings.size_bound, ws.settings.budget
    );
    dot.push_str(&poset.to_dot());
    let mut text = header(ws, "poset");
    text.push_str(&poset.to_text());
    Ok((text, dot))
}
