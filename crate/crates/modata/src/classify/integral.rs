//! Integer-entry tables of rank 3 to 5 do not exist beyond the group cases.
//!
//! Route (a) enumerates square degree vectors up to a bound; route (b)
//! sorts degree vectors by how many degrees are even and closes every class
//! by a mod-4 or size argument.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{
    classify_rank3_asymmetric, classify_rank3_symmetric, enumerate_degree_vectors, is_square_u64,
    ClassificationResult, Collector, SearchBound,
};
use crate::exactnum::Int;

/// One parity class of the nontrivial degrees and the argument closing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCase {
    /// Number of even nontrivial degrees.
    pub evens: usize,
    pub label: String,
    pub impossible: bool,
}

/// Route (b) for rank 4 and 5. Every nontrivial degree is a square, so odd
/// degrees are `1 mod 4` and even ones `0 mod 4`, fixing `n mod 4`.
pub fn parity_cases(rank: usize) -> Vec<ParityCase> {
    let m = rank - 1;
    (0..=m)
        .map(|evens| {
            let odds = m - evens;
            let n_mod4 = (1 + odds) % 4;
            let (label, impossible) = match (rank, evens) {
                (4, 0) => (
                    "all odd: odd squares are 1 mod 4, so n = 0 mod 4 = k_max a with a >= 4, \
                     giving 3 k_max <= 1 + (other two degrees) < 3 k_max"
                        .to_string(),
                    true,
                ),
                (4, _) => (
                    format!("{evens} even: an even square is 0 mod 4 but n = {n_mod4} mod 4, so it cannot divide n"),
                    true,
                ),
                (5, 0) => (
                    "case 1, all odd: n/k_i are odd squares >= 9, so n >= 9 k_max > 1 + 4 k_max".to_string(),
                    true,
                ),
                (5, 1) => (
                    "case 2, three odd one even: n = 0 mod 4; if the even degree is largest \
                     n >= 4 k_max > 4 k_max - 2, else k_1 = k_2 = k_3 = x^2, k_4 = x^2 - 1 \
                     must divide 4x^2 with x odd"
                        .to_string(),
                    true,
                ),
                (5, 2) => ("case 3, two odd two even: n = 3 mod 4, not a square".to_string(), true),
                (5, 3) => ("case 4, one odd three even: n = 2 mod 4, not a square".to_string(), true),
                (5, 4) => (
                    "all even: n = 1 mod 4 is odd, so no even degree divides it".to_string(),
                    true,
                ),
                _ => (format!("{evens} even: no argument"), false),
            };
            ParityCase {
                evens,
                label,
                impossible,
            }
        })
        .collect()
}

/// Both routes for integer-entry tables of `rank`.
pub fn integral_nonexistence<T: Int>(rank: usize, max_degree: u64) -> ClassificationResult<T> {
    let mut out: Collector<T> = Collector::new();
    let mut hyp = vec!["non-homogeneous", "integral Fourier", "degrees are squares"];
    if rank == 5 {
        hyp.push("external axiom: the order n is a square");
    }

    let mut survivors = 0;
    for dv in enumerate_degree_vectors::<BigInt>(rank, true, max_degree) {
        let ks: Vec<u64> = dv
            .degrees()
            .iter()
            .map(|k| k.to_integer().to_u64().unwrap())
            .collect();
        if ks.iter().all(|&k| k == 1) {
            continue;
        }
        let n: u64 = ks.iter().sum();
        let desc = format!("degrees {dv}");
        if rank == 5 && !is_square_u64(n) {
            out.reject(desc, "order_square", format!("n = {n} is not a square"));
            continue;
        }
        let evens = ks[1..].iter().filter(|k| k.is_even()).count();
        match parity_cases(rank)
            .into_iter()
            .find(|c| c.evens == evens && c.impossible)
        {
            Some(c) => out.reject(desc, "parity", c.label),
            None => survivors += 1,
        }
    }
    out.note(format!(
        "(a) exhaustive up to {max_degree}: {survivors} non-homogeneous square degree vector(s) remain"
    ));

    match rank {
        3 => {
            let sym = classify_rank3_symmetric::<T>();
            let asym = classify_rank3_asymmetric::<T>();
            let square = |s: &super::Survivor<T>| {
                s.degrees
                    .degrees()
                    .iter()
                    .all(|k| k.is_integer() && k.to_integer().to_u64().is_some_and(is_square_u64))
            };
            let bad: Vec<String> = sym
                .survivors
                .iter()
                .chain(asym.survivors.iter())
                .filter(|s| {
                    square(s)
                        && s.degrees
                            .degrees()
                            .iter()
                            .any(|k| !k.is_integer() || k.to_integer() != T::one())
                })
                .map(|s| s.degrees.to_string())
                .collect();
            if bad.is_empty() {
                out.note(
                    "(b) unconditional: impossible (the symmetric rank-3 survivor has degree 2, \
                     the asymmetric one is homogeneous)",
                );
            } else {
                out.unresolved(format!(
                    "(b) square-degree rank-3 survivors {}",
                    bad.join(", ")
                ));
            }
        }
        4 | 5 => {
            let cases = parity_cases(rank);
            if cases.iter().all(|c| c.impossible) {
                let labels: Vec<String> = cases.iter().map(|c| c.label.clone()).collect();
                out.note(format!(
                    "(b) unconditional: impossible ({})",
                    labels.join("; ")
                ));
            } else {
                out.unresolved("(b) a parity class is left open".to_string());
            }
        }
        _ => out.unresolved(format!("(b) no parity argument for rank {rank}")),
    }

    out.finish(rank, &hyp, SearchBound::UpTo(max_degree))
}
