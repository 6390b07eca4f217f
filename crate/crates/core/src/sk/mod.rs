//! SK combinatory logic: the partial combinatory algebra used for
//! realizers.

mod bracket;
mod codes;
mod enumerate;
mod filter;
mod memo;
mod parse;
mod reduce;
mod simplify;
mod term;

pub use bracket::{bracket_abstract, compile, compile_with, Expr};
pub use codes::{compose_code, const_code, pair_value, standard_codes, underline, StandardCodes};
pub use enumerate::{count_up_to, terms_of_size, terms_up_to};
pub use filter::{check_filter_closure, FilterSpec};
pub use memo::MemoApply;
pub use parse::{parse_expr, parse_term};
pub use reduce::{apply, reduce, EvalBudget, EvalOutcome, DEFAULT_BUDGET, MAX_TERM_SIZE};
pub use simplify::{simplified, simplify_code, SIMPLIFY_STEPS};
pub use term::{size_lex_cmp, Term};
