//! Tables with a nontrivial degree equal to 1.
//!
//! With `k_1 = 1`, column 1 holds roots of unity `w_i` and row 1 is
//! `w_j k_j`. The remaining entries `p_ij` (`i, j >= 2`) satisfy
//! `p_ij k_i = p_ji k_j`, so only the upper triangle is unknown. Orthogonality
//! against rows 0 and 1 is linear in those unknowns; the mutual
//! orthogonality of the other rows supplies quadratic norm equations for
//! whatever the linear solve leaves free.

use itertools::Itertools;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::{common_disc, enumerate_degree_vectors, int, is_square_u64, root_of, Collector};
use super::{ClassificationResult, SearchBound};
use crate::exactnum::{Int, Poly, Quad};
use crate::tables::{entry_bound_holds, DegreeVector, ExactMatrix, Role};

const HYPOTHESES: [&str; 3] = [
    "non-homogeneous",
    "a nontrivial degree equals 1",
    "entry bound |s_ij| <= s_0j",
];

/// Degree vectors with at least three degree-1 indices. A non-real row 1
/// forces its conjugate to be another degree-1 row, so these are the only
/// vectors that can carry a non-real row 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonRealRowConfig {
    pub degrees: Vec<u64>,
    pub degree_one_count: usize,
    /// Set when the norm bound rules the vector out.
    pub refutation: Option<String>,
}

/// Each degree-1 column `c` has `|p_jc| = 1` in every row, so
/// `d_j = n / k_j >= #{c : k_c = 1}`.
fn norm_bound(ks: &[u64]) -> Option<String> {
    let n: u64 = ks.iter().sum();
    let t = ks.iter().filter(|&&k| k == 1).count() as u64;
    ks.iter().enumerate().find_map(|(j, &k)| {
        (n < t * k).then(|| {
            format!(
                "d_{j} = n/k_{j} = {n}/{k} < {t} = number of degree-1 columns, each contributing |p_{j}c|^2 = 1"
            )
        })
    })
}

pub fn non_real_row_configurations(rank: usize) -> Vec<NonRealRowConfig> {
    enumerate_degree_vectors::<num_bigint::BigInt>(rank, false, u64::MAX)
        .iter()
        .filter_map(|dv| {
            let ks: Vec<u64> = dv
                .degrees()
                .iter()
                .map(|k| k.to_integer().to_u64().unwrap())
                .collect();
            let ones = ks.iter().filter(|&&k| k == 1).count();
            (ones >= 3 && ones < ks.len()).then(|| NonRealRowConfig {
                refutation: norm_bound(&ks),
                degrees: ks,
                degree_one_count: ones,
            })
        })
        .collect()
}

/// Pairs `k_2 < k_3` with `k_2 | 2k_3 + 4` and `k_3 | 2k_2 + 4`: the degree
/// pairs compatible with row 1 `[1, 1, k_2, k_3, -(k_2 + k_3 + 2)]`.
pub fn mutual_divisor_pairs(max_degree: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for k2 in 1..=max_degree {
        let m = 2 * k2 + 4;
        // k_3 ranges over divisors of 2k_2 + 4 above k_2
        for k3 in (1..=m.min(max_degree)).filter(|d| m % d == 0) {
            if k3 > k2 && (2 * k3 + 4) % k2 == 0 {
                out.push((k2, k3));
            }
        }
    }
    out
}

/// Keeps the pairs whose order `2(k_2 + k_3 + 2)` is a square, as an
/// integer table of odd rank requires.
pub fn square_order_filter(pairs: &[(u64, u64)]) -> Vec<(u64, u64)> {
    pairs
        .iter()
        .copied()
        .filter(|&(a, b)| is_square_u64(2 * (a + b + 2)))
        .collect()
}

pub fn classify_rank4_linear<T: Int>() -> ClassificationResult<T> {
    classify_with_degree_one(4)
}

pub fn classify_rank5_linear<T: Int>() -> ClassificationResult<T> {
    classify_with_degree_one(5)
}

/// Runs the engine over every non-homogeneous degree vector of `rank` that
/// has a nontrivial degree 1.
pub fn classify_with_degree_one<T: Int>(rank: usize) -> ClassificationResult<T> {
    let vectors: Vec<DegreeVector<T>> = enumerate_degree_vectors::<T>(rank, false, u64::MAX)
        .into_iter()
        .filter(|dv| {
            let ks = dv.degrees();
            ks.len() > 1 && ks[1] == int(1) && ks.iter().any(|k| k != &ks[1])
        })
        .collect();
    let parts: Vec<Collector<T>> = vectors.par_iter().map(search_degrees).collect();
    let mut out = Collector::new();
    out.note(format!(
        "{} degree vectors with every k_i | n and a nontrivial degree 1",
        vectors.len()
    ));
    for part in parts {
        out.merge(part);
    }
    out.finish(rank, &HYPOTHESES, SearchBound::Exhaustive)
}

fn q<T: Int>(x: &Ratio<T>) -> Quad<T> {
    Quad::rational(x.clone())
}

/// Roots of unity in `Q(sqrt(disc))` for the imaginary fields that have
/// more than `+-1`.
fn units<T: Int>(disc: i64) -> Vec<Quad<T>> {
    let d = T::from_i64(disc).unwrap();
    let h = Ratio::new(T::one(), T::from_i64(2).unwrap());
    match disc {
        -1 => vec![
            Quad::one(),
            -Quad::one(),
            Quad::sqrt_of(d.clone()),
            -Quad::sqrt_of(d),
        ],
        -3 => {
            let mut v = vec![Quad::one(), -Quad::one()];
            for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let s = |x: i64| if x > 0 { h.clone() } else { -h.clone() };
                v.push(Quad::new(s(a), s(b), d.clone()));
            }
            v
        }
        _ => vec![Quad::one(), -Quad::one()],
    }
}

fn row_text<T: Int>(row: &[Quad<T>]) -> String {
    format!("[{}]", row.iter().map(|x| x.pretty()).join(","))
}

fn search_degrees<T: Int>(dv: &DegreeVector<T>) -> Collector<T> {
    let mut out = Collector::new();
    let ks = dv.degrees().to_vec();
    let r = ks.len();
    let zero_sum = |omega: &[Quad<T>]| {
        let s: Quad<T> = Quad::one() + (1..r).map(|j| &omega[j] * &q(&ks[j])).sum::<Quad<T>>();
        s.is_zero()
    };

    let signs = units::<T>(1);
    let mut real_patterns = 0;
    for pick in (1..r).map(|_| signs.iter()).multi_cartesian_product() {
        let omega: Vec<Quad<T>> = std::iter::once(Quad::one())
            .chain(pick.into_iter().cloned())
            .collect();
        if zero_sum(&omega) {
            real_patterns += 1;
            solve_pattern(&ks, &omega, &mut out);
        }
    }
    if real_patterns == 0 {
        out.reject(
            format!("degrees {dv}"),
            "row1_sign_pattern",
            "no signs make 1 +- k_1 +- ... +- k_{r-1} vanish",
        );
    }

    let ints: Vec<u64> = ks
        .iter()
        .map(|k| k.to_integer().to_u64().unwrap())
        .collect();
    let ones = ints.iter().filter(|&&k| k == 1).count();
    if ones >= 3 {
        if let Some(w) = norm_bound(&ints) {
            out.reject(
                format!("degrees {dv}, non-real row 1"),
                "degree_one_norm_bound",
                w,
            );
            return out;
        }
        for disc in [-1, -3] {
            let us = units::<T>(disc);
            for pick in (1..r).map(|_| us.iter()).multi_cartesian_product() {
                if pick.iter().all(|w| w.is_real()) {
                    continue;
                }
                let omega: Vec<Quad<T>> = std::iter::once(Quad::one())
                    .chain(pick.into_iter().cloned())
                    .collect();
                if zero_sum(&omega) {
                    solve_pattern(&ks, &omega, &mut out);
                }
            }
        }
    }
    out
}

/// Affine form over the unknowns: coefficients, then the constant.
type Form<T> = Vec<Quad<T>>;

fn axpy<T: Int>(acc: &mut [Quad<T>], c: &Quad<T>, x: &[Quad<T>]) {
    for (a, b) in acc.iter_mut().zip(x) {
        if !b.is_zero() {
            *a = &*a + &(c * b);
        }
    }
}

/// Solves `rows * x = rhs` (each row: coefficients then rhs). Returns a
/// particular solution and a basis of the kernel, or `None` if inconsistent.
fn solve_affine<T: Int>(
    mut rows: Vec<Vec<Quad<T>>>,
    m: usize,
) -> Option<(Vec<Quad<T>>, Vec<Vec<Quad<T>>>)> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m {
        let Some(p) = (row..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(row, p);
        let inv = rows[row][col].try_recip().unwrap();
        for x in rows[row].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[row].clone();
        for (i, other) in rows.iter_mut().enumerate() {
            if i != row && !other[col].is_zero() {
                let f = -other[col].clone();
                axpy(other, &f, &pivot_row);
            }
        }
        pivots.push(col);
        row += 1;
    }
    if rows[row..].iter().any(|r| !r[m].is_zero()) {
        return None;
    }
    let mut x0 = vec![Quad::zero(); m];
    for (i, &c) in pivots.iter().enumerate() {
        x0[c] = rows[i][m].clone();
    }
    let mut basis = Vec::new();
    for free in (0..m).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Quad::zero(); m];
        v[free] = Quad::one();
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = -rows[i][free].clone();
        }
        basis.push(v);
    }
    Some((x0, basis))
}

/// Entry `(c, e)` standing for `c + e t`.
type Entry<T> = (Quad<T>, Quad<T>);

fn solve_pattern<T: Int>(ks: &[Ratio<T>], omega: &[Quad<T>], out: &mut Collector<T>) {
    let r = ks.len();
    let n: Ratio<T> = ks.iter().fold(Ratio::zero(), |a, k| a + k);
    let row1: Vec<Quad<T>> = (0..r).map(|j| &omega[j] * &q(&ks[j])).collect();
    let degrees = format!("({})", ks.iter().join(","));
    let desc = format!("degrees {degrees} row1 {}", row_text(&row1));

    let pairs: Vec<(usize, usize)> = (2..r).flat_map(|i| (i..r).map(move |j| (i, j))).collect();
    let m = pairs.len();
    let index = |i: usize, j: usize| {
        pairs
            .iter()
            .position(|&p| p == (i.min(j), i.max(j)))
            .unwrap()
    };
    let form = |i: usize, j: usize| -> Form<T> {
        let mut f = vec![Quad::zero(); m + 1];
        match j {
            0 => f[m] = Quad::one(),
            1 => f[m] = omega[i].clone(),
            _ if i <= j => f[index(i, j)] = Quad::one(),
            _ => f[index(i, j)] = q(&(&ks[j] / &ks[i])),
        }
        f
    };

    let mut eqs = Vec::new();
    for i in 2..r {
        let mut sum = vec![Quad::zero(); m + 1];
        let mut against1 = vec![Quad::zero(); m + 1];
        for j in 0..r {
            let f = form(i, j);
            axpy(&mut sum, &Quad::one(), &f);
            axpy(&mut against1, &omega[j].conj(), &f);
        }
        for mut e in [sum, against1] {
            e[m] = -e[m].clone();
            eqs.push(e);
        }
    }
    let Some((x0, basis)) = solve_affine(eqs, m) else {
        out.reject(
            desc,
            "row_orthogonal",
            "orthogonality to rows 0 and 1 has no solution",
        );
        return;
    };
    if basis.len() > 1 {
        out.unresolved(format!(
            "{desc}: {} free parameters after the linear solve",
            basis.len()
        ));
        return;
    }

    let mut grid: Vec<Vec<Entry<T>>> = vec![vec![(Quad::zero(), Quad::zero()); r]; r];
    for j in 0..r {
        grid[0][j] = (q(&ks[j]), Quad::zero());
        grid[1][j] = (row1[j].clone(), Quad::zero());
    }
    for i in 2..r {
        for j in 0..r {
            let f = form(i, j);
            let c = f[m].clone() + (0..m).map(|u| &f[u] * &x0[u]).sum::<Quad<T>>();
            let e = match basis.first() {
                Some(b) => (0..m).map(|u| &f[u] * &b[u]).sum::<Quad<T>>(),
                None => Quad::zero(),
            };
            grid[i][j] = (c, e);
        }
    }

    if basis.is_empty() {
        emit(&desc, &grid, &Quad::zero(), out);
        return;
    }

    // c0 + c1 |t|^2 + c2 t + c3 conj(t) = 0 for each pair of rows i <= j
    let mut quads: Vec<[Quad<T>; 4]> = Vec::new();
    for i in 2..r {
        for j in i..r {
            let mut c = [Quad::zero(), Quad::zero(), Quad::zero(), Quad::zero()];
            for l in 0..r {
                let w = q(&ks[l].recip());
                let (ci, ei) = &grid[i][l];
                let (cj, ej) = (grid[j][l].0.conj(), grid[j][l].1.conj());
                c[0] = &c[0] + &(ci * &cj * &w);
                c[1] = &c[1] + &(ei * &ej * &w);
                c[2] = &c[2] + &(ei * &cj * &w);
                c[3] = &c[3] + &(ci * &ej * &w);
            }
            if i == j {
                c[0] = &c[0] - &q(&(&n / &ks[i]));
            }
            quads.push(c);
        }
    }

    // t is itself an entry, so |t| <= max degree and t is an algebraic integer
    let bound = ks.iter().map(|k| k.to_integer()).max().unwrap();
    let disc = common_disc(omega);
    let params = match disc {
        None => real_field_params(&quads, &bound),
        Some(d) => imaginary_field_params(&quads, &d, &bound),
    };
    match params {
        Err(why) => out.unresolved(format!("{desc}: {why}")),
        Ok(ts) if ts.is_empty() => out.reject(
            desc,
            "row_orthogonal",
            "norm equations for the free entry have no solution",
        ),
        Ok(ts) => {
            for t in ts {
                emit(&format!("{desc} t={}", t.pretty()), &grid, &t, out);
            }
        }
    }
}

/// Solutions `t` when every coefficient is rational.
fn real_field_params<T: Int>(quads: &[[Quad<T>; 4]], bound: &T) -> Result<Vec<Quad<T>>, String> {
    let rat = |x: &Quad<T>| x.as_rational().cloned().expect("rational coefficients");
    let mut ts = Vec::new();

    // real t
    let polys: Vec<Poly<T>> = quads
        .iter()
        .map(|c| Poly::new(vec![rat(&c[0]), rat(&c[2]) + rat(&c[3]), rat(&c[1])]))
        .filter(|p| !p.is_zero())
        .collect();
    let Some(first) = polys.first() else {
        return Err("norm equations vanish for every real t".into());
    };
    let g = polys
        .iter()
        .skip(1)
        .fold(first.clone(), |acc, p| acc.gcd(p));
    if g.degree().unwrap_or(0) > 0 {
        ts.extend(g.rational_roots().into_iter().map(Quad::rational));
        let rest = g.strip_rational_roots();
        if let Some(roots) = rest.quadratic_roots() {
            ts.extend(roots.into_iter().filter(|t| t.is_real()));
        }
    }

    // non-real t = a + iy needs c2 = c3; then c0 + c1 S + 2 c2 a = 0, S = a^2 + y^2
    if quads.iter().all(|c| c[2] == c[3]) {
        let rows: Vec<Vec<Quad<T>>> = quads
            .iter()
            .map(|c| vec![c[1].clone(), &c[2] * &Quad::from_int(2), -c[0].clone()])
            .collect();
        let Some((x, basis)) = solve_affine(rows, 2) else {
            return Ok(ts);
        };
        let (x_s, x_a) = (rat(&x[0]), rat(&x[1]));
        let b2 = Ratio::from_integer(bound.clone() * bound.clone());
        let mut push = |s: Ratio<T>, a: Ratio<T>| {
            let y2 = &s - &a * &a;
            if s.is_integer() && (&a * int(2)).is_integer() && y2.is_positive() && s <= b2 {
                ts.push(Quad::rational(a) + root_of(&-y2));
            }
        };
        match basis.len() {
            0 => push(x_s, x_a),
            1 => {
                let (v_s, v_a) = (rat(&basis[0][0]), rat(&basis[0][1]));
                if v_a.is_zero() {
                    for s in 1..=int_of(&b2) {
                        push(int(s), x_a.clone());
                    }
                } else {
                    for a in half_integers(bound) {
                        let tau = (&a - &x_a) / &v_a;
                        push(&x_s + &tau * &v_s, a);
                    }
                }
            }
            _ => {
                for a in half_integers(bound) {
                    for s in 1..=int_of(&b2) {
                        push(int(s), a.clone());
                    }
                }
            }
        }
    }
    Ok(ts)
}

/// Solutions `t = a + b sqrt(d)` over an imaginary field: each equation
/// splits into rational and surd parts, linear in `(|t|^2, a, b)`.
fn imaginary_field_params<T: Int>(
    quads: &[[Quad<T>; 4]],
    d: &T,
    bound: &T,
) -> Result<Vec<Quad<T>>, String> {
    let parts = |x: &Quad<T>| (x.rat().clone(), x.surd().clone());
    let dq = Ratio::from_integer(d.clone());
    let mut rows = Vec::new();
    for c in quads {
        let (c0r, c0s) = parts(&c[0]);
        let (c1r, c1s) = parts(&c[1]);
        let (c2r, c2s) = parts(&c[2]);
        let (c3r, c3s) = parts(&c[3]);
        rows.push(vec![c1r, &c2r + &c3r, &dq * (&c2s - &c3s), -c0r]);
        rows.push(vec![c1s, &c2s + &c3s, &c2r - &c3r, -c0s]);
    }
    let rows: Vec<Vec<Quad<T>>> = rows
        .into_iter()
        .map(|r| r.into_iter().map(Quad::rational).collect())
        .collect();
    let Some((x, basis)) = solve_affine(rows, 3) else {
        return Ok(vec![]);
    };
    let rat = |x: &Quad<T>| x.as_rational().cloned().unwrap();
    let build = |s: &Ratio<T>, a: &Ratio<T>, b: &Ratio<T>| -> Option<Quad<T>> {
        (s == &(a * a - &dq * b * b)).then(|| Quad::new(a.clone(), b.clone(), d.clone()))
    };
    if basis.is_empty() {
        return Ok(build(&rat(&x[0]), &rat(&x[1]), &rat(&x[2]))
            .into_iter()
            .collect());
    }
    // a family: enumerate algebraic integers a + b sqrt(d) with |t| <= bound
    let b2 = Ratio::from_integer(bound.clone() * bound.clone());
    let mut out = Vec::new();
    for a in half_integers(bound) {
        for b in half_integers(bound) {
            let norm = &a * &a - &dq * &b * &b;
            if norm > b2 || !norm.is_integer() || b.is_zero() {
                continue;
            }
            let t = Quad::new(a.clone(), b.clone(), d.clone());
            let tc = t.conj();
            let n = Quad::rational(norm);
            if quads
                .iter()
                .all(|c| (&c[0] + &(&c[1] * &n) + &c[2] * &t + &c[3] * &tc).is_zero())
            {
                out.push(t);
            }
        }
    }
    Ok(out)
}

/// `m/2` for `|m| <= 2 bound`.
fn half_integers<T: Int>(bound: &T) -> Vec<Ratio<T>> {
    let b = bound.to_i64().unwrap();
    (-2 * b..=2 * b)
        .map(|m| Ratio::new(T::from_i64(m).unwrap(), T::from_i64(2).unwrap()))
        .collect()
}

fn int_of<T: Int>(x: &Ratio<T>) -> i64 {
    x.to_integer().to_i64().unwrap()
}

fn emit<T: Int>(desc: &str, grid: &[Vec<Entry<T>>], t: &Quad<T>, out: &mut Collector<T>) {
    let rows: Vec<Vec<Quad<T>>> = grid
        .iter()
        .map(|row| row.iter().map(|(c, e)| c + &(e * t)).collect())
        .collect();
    let disc = common_disc(rows.iter().flatten());
    let p = match ExactMatrix::new(rows, disc, Role::Eigen) {
        Ok(p) => p,
        Err(e) => {
            out.reject(desc.to_string(), "single_field", e.to_string());
            return;
        }
    };
    if !entry_bound_holds(&p) {
        let r = p.rank();
        let (i, j) = (0..r)
            .cartesian_product(0..r)
            .find(|&(i, j)| {
                let diff = &(p.get(0, j) * p.get(0, j)) - &p.get(i, j).abs_squared();
                diff.real_sign().is_some_and(|s| s.is_lt())
            })
            .unwrap();
        let w = format!(
            "|p_{i}{j}| = |{}| > p_0{j} = {}",
            p.get(i, j).pretty(),
            p.get(0, j).pretty()
        );
        out.reject_table(desc.to_string(), "entry_bound", w, p);
        return;
    }
    out.consider(desc.to_string(), p);
}
