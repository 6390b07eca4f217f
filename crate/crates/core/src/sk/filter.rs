use std::fmt;
use std::sync::Arc;

use super::Term;

/// A decidable sub-collection of codes, closed under application and
/// containing `S` and `K` when well formed.
#[derive(Clone)]
pub struct FilterSpec {
    name: String,
    member: Arc<dyn Fn(&Term) -> bool + Send + Sync>,
}

impl FilterSpec {
    pub fn new(name: impl Into<String>, member: impl Fn(&Term) -> bool + Send + Sync + 'static) -> Self {
        FilterSpec {
            name: name.into(),
            member: Arc::new(member),
        }
    }

    /// Every term.
    pub fn trivial() -> Self {
        FilterSpec::new("all", |_| true)
    }

    /// Terms with at most `n` leaves.
    pub fn size_bounded(n: usize) -> Self {
        FilterSpec::new(format!("size<={n}"), move |t| t.size() <= n)
    }

    pub fn contains(&self, t: &Term) -> bool {
        (self.member)(t)
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl Default for FilterSpec {
    fn default() -> Self {
        FilterSpec::trivial()
    }
}

impl fmt::Debug for FilterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FilterSpec({})", self.name)
    }
}

/// Checks the filter on a log of observed applications `(a, x, a·x)`: it
/// must contain `S` and `K`, and whenever `a` and `x` are members so is the
/// result.
pub fn check_filter_closure(fs: &FilterSpec, observed: &[(Term, Term, Term)]) -> bool {
    fs.contains(&Term::S)
        && fs.contains(&Term::K)
        && observed
            .iter()
            .all(|(a, x, r)| !(fs.contains(a) && fs.contains(x)) || fs.contains(r))
}
