use std::sync::{Arc, Mutex, OnceLock};

use super::Term;

fn cache() -> &'static Mutex<Vec<Arc<Vec<Term>>>> {
    static CACHE: OnceLock<Mutex<Vec<Arc<Vec<Term>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Arc::new(Vec::new()), Arc::new(vec![Term::S, Term::K])]))
}

/// All terms with exactly `n` leaves, in structural order.
pub fn terms_of_size(n: usize) -> Arc<Vec<Term>> {
    let mut c = cache().lock().expect("term cache poisoned");
    while c.len() <= n {
        let m = c.len();
        let mut out = Vec::new();
        for k in 1..m {
            for f in c[k].iter() {
                for a in c[m - k].iter() {
                    out.push(Term::app(f.clone(), a.clone()));
                }
            }
        }
        out.sort();
        c.push(Arc::new(out));
    }
    c[n].clone()
}

/// All terms of size at most `bound`, size first then structural order.
pub fn terms_up_to(bound: usize) -> impl Iterator<Item = Term> {
    (1..=bound).flat_map(|n| {
        let level = terms_of_size(n);
        (0..level.len()).map(move |i| level[i].clone())
    })
}

/// Number of terms of size at most `bound`.
pub fn count_up_to(bound: usize) -> usize {
    (1..=bound).map(|n| terms_of_size(n).len()).sum()
}
