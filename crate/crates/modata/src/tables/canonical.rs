use itertools::Itertools;

use super::matrix::ExactMatrix;
use crate::exactnum::Int;

/// Representative of the class of `p` under simultaneous row/column
/// permutations fixing index 0: the lexicographically least row-major
/// entry sequence. Returns the matrix and the permutation used
/// (new index -> old index).
pub fn canonical_form_with_perm<T: Int>(p: &ExactMatrix<T>) -> (ExactMatrix<T>, Vec<usize>) {
    let r = p.rank();
    let mut best: Option<(ExactMatrix<T>, Vec<usize>)> = None;
    for tail in (1..r).permutations(r - 1) {
        let perm: Vec<usize> = std::iter::once(0).chain(tail).collect();
        let cand = p.permuted(&perm);
        let better = match &best {
            None => true,
            Some((b, _)) => row_major_less(&cand, b),
        };
        if better {
            best = Some((cand, perm));
        }
    }
    best.expect("rank is positive")
}

pub fn canonical_form<T: Int>(p: &ExactMatrix<T>) -> ExactMatrix<T> {
    canonical_form_with_perm(p).0
}

/// Whether two tables agree up to a relabelling fixing index 0.
pub fn equivalent<T: Int>(a: &ExactMatrix<T>, b: &ExactMatrix<T>) -> bool {
    a.rank() == b.rank() && canonical_form(a).entries() == canonical_form(b).entries()
}

fn row_major_less<T: Int>(a: &ExactMatrix<T>, b: &ExactMatrix<T>) -> bool {
    a.entries()
        .iter()
        .flatten()
        .lt(b.entries().iter().flatten())
}
