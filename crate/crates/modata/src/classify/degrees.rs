use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactnum::Int;
use crate::tables::DegreeVector;
use crate::Rational;

/// All nondecreasing `terms`-tuples of positive integers whose reciprocals
/// sum to 1.
///
/// Degrees with every `k_i | n` are exactly these tuples read as
/// `x_i = n / k_i`, so the list is finite for each rank.
pub fn unit_fraction_partitions(terms: usize) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    if terms > 0 {
        let mut acc = Vec::with_capacity(terms);
        descend(terms, Rational::one(), BigInt::one(), &mut acc, &mut out);
    }
    out
}

fn descend(
    terms: usize,
    rest: Rational,
    min_x: BigInt,
    acc: &mut Vec<BigInt>,
    out: &mut Vec<Vec<BigInt>>,
) {
    if terms == 1 {
        if rest.numer().is_one() && rest.denom() >= &min_x {
            acc.push(rest.denom().clone());
            out.push(acc.clone());
            acc.pop();
        }
        return;
    }
    // 1/x < rest and terms/x >= rest
    let recip = rest.recip();
    let mut x = recip.floor().to_integer() + BigInt::one();
    if x < min_x {
        x = min_x;
    }
    let hi = (recip * Rational::from_integer(BigInt::from(terms)))
        .floor()
        .to_integer();
    while x <= hi {
        let part = Rational::new(BigInt::one(), x.clone());
        acc.push(x.clone());
        descend(terms - 1, &rest - part, x.clone(), acc, out);
        acc.pop();
        x += 1;
    }
}

/// Degree vectors `(1, k_1 <= ... <= k_{r-1})` with every `k_i` dividing
/// the order, each `k_i <= max_degree`; `squares_only` keeps perfect squares.
pub fn enumerate_degree_vectors<T: Int>(
    rank: usize,
    squares_only: bool,
    max_degree: u64,
) -> Vec<DegreeVector<T>> {
    let max = BigInt::from(max_degree);
    let mut out = Vec::new();
    for xs in unit_fraction_partitions(rank) {
        let n = xs.last().unwrap().clone();
        if xs.iter().any(|x| !n.is_multiple_of(x)) {
            continue;
        }
        // largest denominator is the order, standing for k_0 = 1
        let mut ks: Vec<BigInt> = xs.iter().rev().map(|x| &n / x).collect();
        ks.sort();
        if ks[1..].iter().any(|k| k > &max) {
            continue;
        }
        if squares_only && ks.iter().any(|k| !is_square(k)) {
            continue;
        }
        let degrees = ks
            .iter()
            .map(|k| {
                num_rational::Ratio::from_integer(
                    T::from_str_radix(&k.to_string(), 10).ok().unwrap(),
                )
            })
            .collect();
        out.push(DegreeVector::new(degrees).expect("positive degrees starting at 1"));
    }
    out.sort_by(|a, b| a.degrees().cmp(b.degrees()));
    out
}

fn is_square(k: &BigInt) -> bool {
    if k.is_negative() {
        return false;
    }
    let r = k.sqrt();
    &r * &r == *k || k.is_zero()
}
