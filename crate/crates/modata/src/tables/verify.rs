use num_rational::Ratio;
use num_traits::{One, Signed};

use super::matrix::{inverse, ExactMatrix};
use super::report::VerificationReport;
use super::structure::{
    fourier_structure_constants, norms, structure_constants_lambda, structure_constants_n,
    StructureTensor,
};
use crate::exactnum::{is_integer_square, rational_sqrt, Int, Quad};

type Witness = Option<(Vec<usize>, String)>;

fn sub(i: usize, j: usize) -> String {
    format!("{i}{j}")
}

/// `S = diag(r)^(-1/2) E` is symmetric: `E_ij^2 r_j = E_ji^2 r_i` and
/// `E_ij / E_ji` positive real, or both zero.
fn scaled_symmetry<T: Int>(e: &[Vec<Quad<T>>], r: &[Quad<T>]) -> Witness {
    let n = e.len();
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = (&e[i][j], &e[j][i]);
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let ok = !a.is_zero()
                && !b.is_zero()
                && &(a * a) * &r[j] == &(b * b) * &r[i]
                && (a / b).is_positive_real();
            if !ok {
                return Some((
                    vec![i, j],
                    format!(
                        "entries ({i},{j}) = {} and ({j},{i}) = {} are not mirror images",
                        a.pretty(),
                        b.pretty()
                    ),
                ));
            }
        }
    }
    None
}

/// Rows of `diag(r)^(-1/2) E` are orthonormal: `sum_j E_ij conj(E_kj) = delta_ik r_i`.
fn scaled_unitarity<T: Int>(e: &[Vec<Quad<T>>], r: &[Quad<T>]) -> Witness {
    let n = e.len();
    for i in 0..n {
        for k in i..n {
            let dot: Quad<T> = (0..n).map(|j| &e[i][j] * &e[k][j].conj()).sum();
            let want = if i == k { r[i].clone() } else { Quad::zero() };
            if dot != want {
                return Some((
                    vec![i, k],
                    format!(
                        "row product ({i},{k}) is {}, expected {}",
                        dot.pretty(),
                        want.pretty()
                    ),
                ));
            }
        }
    }
    None
}

fn first_non_integer<T: Int>(n: &StructureTensor<T>) -> Witness {
    n.triples()
        .find(|&(i, j, k)| !n.get(i, j, k).is_rational_integer())
        .map(|(i, j, k)| {
            (
                vec![i, j, k],
                format!(
                    "N_{i}{j}{k} = {} is not an integer",
                    n.get(i, j, k).pretty()
                ),
            )
        })
}

fn first_column_positive<T: Int>(e: &[Vec<Quad<T>>]) -> Witness {
    e.iter()
        .position(|row| !row[0].is_positive_real())
        .map(|i| {
            (
                vec![i],
                format!("S_{i}0 = {} is not positive", e[i][0].pretty()),
            )
        })
}

/// Fourier matrix checks: symmetric, unitary, positive first column,
/// integral structure constants. Carried out on the radical-free encoding.
pub fn verify_fourier<T: Int>(f: &ExactMatrix<T>) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let e = f.entries();
    let r: Vec<Quad<T>> = (0..f.rank())
        .map(|i| Quad::rational(f.scale_of(i)))
        .collect();
    rep.record("symmetric", scaled_symmetry(e, &r));
    rep.record("unitary", scaled_unitarity(e, &r));
    let col = first_column_positive(e);
    let undefined = col.is_some();
    rep.record("first_column_positive", col);
    if undefined {
        rep.fail(
            "n_integral",
            &[],
            "structure constants undefined: S_i0 vanishes or is not positive",
        );
    } else {
        match fourier_structure_constants(f) {
            Ok(n) => rep.record("n_integral", first_non_integer(&n)),
            Err(err) => rep.fail("n_integral", &[], err.to_string()),
        }
    }
    rep
}

fn column_zero_ones<T: Int>(e: &[Vec<Quad<T>>]) -> Witness {
    e.iter().position(|row| !row[0].is_one()).map(|i| {
        (
            vec![i],
            format!("entry ({i},0) = {} is not 1", e[i][0].pretty()),
        )
    })
}

fn off_diagonal_orthogonality<T: Int>(e: &[Vec<Quad<T>>]) -> Witness {
    let n = e.len();
    for i in 0..n {
        for k in (i + 1)..n {
            let dot: Quad<T> = (0..n).map(|j| &e[i][j] * &e[k][j].conj()).sum();
            if !dot.is_zero() {
                return Some((
                    vec![i, k],
                    format!("rows {i} and {k} have Hermitian product {}", dot.pretty()),
                ));
            }
        }
    }
    None
}

/// Allen matrix checks: column of ones, symmetrisable by the norms,
/// orthogonal rows, integral structure constants, algebraic-integer entries.
pub fn verify_allen<T: Int>(s: &ExactMatrix<T>) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let e = s.entries();
    rep.record("column0_ones", column_zero_ones(e));
    let d = norms(s);
    rep.record("symmetrizable", scaled_symmetry(e, &d));
    rep.record("row_orthogonal", off_diagonal_orthogonality(e));
    match structure_constants_n(s) {
        Ok(n) => rep.record("n_integral", first_non_integer(&n)),
        Err(err) => rep.fail("n_integral", &[], err.to_string()),
    }
    let bad = (0..s.rank())
        .flat_map(|i| (0..s.rank()).map(move |j| (i, j)))
        .find(|&(i, j)| !e[i][j].is_algebraic_integer());
    rep.record(
        "algebraic_integer_entries",
        bad.map(|(i, j)| {
            (
                vec![i, j],
                format!(
                    "s_{} = {} is not an algebraic integer",
                    sub(i, j),
                    e[i][j].pretty()
                ),
            )
        }),
    );
    rep
}

/// Integral Fourier matrix checks.
pub fn verify_integral_fourier<T: Int>(s: &ExactMatrix<T>) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let e = s.entries();
    let r = s.rank();
    let bad = (0..r)
        .flat_map(|i| (0..r).map(move |j| (i, j)))
        .find(|&(i, j)| !e[i][j].is_rational_integer());
    rep.record(
        "integer_entries",
        bad.map(|(i, j)| {
            (
                vec![i, j],
                format!(
                    "s_{} = {} is not a rational integer",
                    sub(i, j),
                    e[i][j].pretty()
                ),
            )
        }),
    );
    rep.record("column0_ones", column_zero_ones(e));
    rep.record(
        "nonsingular",
        inverse(e)
            .is_none()
            .then(|| (vec![], "determinant is zero".to_string())),
    );
    rep.record("row_orthogonal", off_diagonal_orthogonality(e));
    let d = norms(s);
    rep.record("symmetrizable", scaled_symmetry(e, &d));
    match structure_constants_n(s) {
        Ok(n) => rep.record("n_integral", first_non_integer(&n)),
        Err(err) => rep.fail("n_integral", &[], err.to_string()),
    }
    rep
}

/// Column `j*` with `conj(b_j) = b_{j*}`, or a description of the failure.
pub fn involution<T: Int>(p: &ExactMatrix<T>) -> Result<Vec<usize>, (Vec<usize>, String)> {
    let r = p.rank();
    let mut star = Vec::with_capacity(r);
    for j in 0..r {
        let cj: Vec<Quad<T>> = p.column(j).iter().map(|x| x.conj()).collect();
        let hits: Vec<usize> = (0..r).filter(|&c| p.column(c) == cj).collect();
        match hits.as_slice() {
            [one] => star.push(*one),
            [] => {
                return Err((
                    vec![j],
                    format!("the conjugate of column {j} is not a column"),
                ))
            }
            many => {
                return Err((
                    many.to_vec(),
                    format!("the conjugate of column {j} matches several columns {many:?}"),
                ))
            }
        }
    }
    if star[0] != 0 {
        return Err((vec![0], "column 0 is not self-conjugate".into()));
    }
    if let Some(j) = (0..r).find(|&j| star[star[j]] != j) {
        return Err((
            vec![j],
            format!("conjugation is not an involution at column {j}"),
        ));
    }
    Ok(star)
}

/// C-algebra axioms read off the eigenmatrix.
pub fn verify_c_algebra<T: Int>(p: &ExactMatrix<T>) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let e = p.entries();
    let r = p.rank();
    rep.record("identity_column", column_zero_ones(e));
    rep.record(
        "degrees_positive",
        (0..r).find(|&j| !e[0][j].is_positive_real()).map(|j| {
            (
                vec![j],
                format!("degree p_0{j} = {} is not positive", e[0][j].pretty()),
            )
        }),
    );
    let lambda = structure_constants_lambda(p);
    rep.record(
        "nonsingular",
        lambda
            .is_err()
            .then(|| (vec![], "columns do not span: P is singular".to_string())),
    );
    let star = involution(p);
    rep.record("involution", star.clone().err());
    rep.record(
        "row_sums_zero",
        (1..r).find_map(|i| {
            let s: Quad<T> = e[i].iter().cloned().sum();
            (!s.is_zero()).then(|| (vec![i], format!("row {i} sums to {}", s.pretty())))
        }),
    );
    let (lam, star) = match (lambda, star) {
        (Ok(l), Ok(s)) => (l, s),
        (Err(_), _) => {
            for name in LAMBDA_CHECKS {
                rep.fail(name, &[], "structure constants unavailable: P is singular");
            }
            return rep;
        }
        (_, Err(_)) => {
            for name in LAMBDA_CHECKS {
                rep.fail(name, &[], "structure constants unavailable: no involution");
            }
            return rep;
        }
    };
    rep.record(
        "lambda_real",
        lam.triples()
            .find(|&(i, j, k)| !lam.get(i, j, k).is_real())
            .map(|(i, j, k)| {
                (
                    vec![i, j, k],
                    format!(
                        "lambda_{i}{j}{k} = {} is not real",
                        lam.get(i, j, k).pretty()
                    ),
                )
            }),
    );
    let support = (0..r)
        .flat_map(|i| (0..r).map(move |j| (i, j)))
        .find(|&(i, j)| lam.get(i, j, 0).is_zero() == (j == star[i]));
    rep.record(
        "lambda_ij0_support",
        support.map(|(i, j)| {
            (
                vec![i, j, 0],
                format!(
                    "lambda_{i}{j}0 = {} but {i}* = {}",
                    lam.get(i, j, 0).pretty(),
                    star[i]
                ),
            )
        }),
    );
    rep.record(
        "lambda_ii*0_positive",
        (0..r)
            .find(|&i| !lam.get(i, star[i], 0).is_positive_real())
            .map(|i| {
                (
                    vec![i, star[i], 0],
                    format!(
                        "lambda_{i}{}0 = {} is not positive",
                        star[i],
                        lam.get(i, star[i], 0).pretty()
                    ),
                )
            }),
    );
    rep.record(
        "degree_involution",
        (0..r).find(|&i| e[0][i] != e[0][star[i]]).map(|i| {
            (
                vec![i, star[i]],
                format!(
                    "degrees of b_{i} and its conjugate differ: {} vs {}",
                    e[0][i].pretty(),
                    e[0][star[i]].pretty()
                ),
            )
        }),
    );
    rep.record(
        "standard_basis",
        (0..r)
            .find(|&i| lam.get(i, star[i], 0) != &e[0][i])
            .map(|i| {
                (
                    vec![i, star[i], 0],
                    format!(
                        "lambda_{i}{}0 = {} differs from the degree {}",
                        star[i],
                        lam.get(i, star[i], 0).pretty(),
                        e[0][i].pretty()
                    ),
                )
            }),
    );
    rep
}

const LAMBDA_CHECKS: [&str; 5] = [
    "lambda_real",
    "lambda_ij0_support",
    "lambda_ii*0_positive",
    "degree_involution",
    "standard_basis",
];

/// Order `n` as the sum of row 0, when that is a positive rational.
pub fn order_of<T: Int>(p: &ExactMatrix<T>) -> Option<Ratio<T>> {
    let s: Quad<T> = p.entries()[0].iter().cloned().sum();
    s.as_rational().filter(|q| q.is_positive()).cloned()
}

/// Allen-level norms computed from `P` without radicals:
/// `d_i = sum_j |p_ij|^2 / p_0j`.
pub fn eigen_norms<T: Int>(p: &ExactMatrix<T>) -> Option<Vec<Quad<T>>> {
    let e = p.entries();
    let mut inv_k = Vec::with_capacity(p.rank());
    for x in &e[0] {
        inv_k.push(x.try_recip().ok()?);
    }
    Some(
        e.iter()
            .map(|row| {
                row.iter()
                    .zip(&inv_k)
                    .map(|(x, ik)| x.abs_squared() * ik)
                    .sum()
            })
            .collect(),
    )
}

/// Multiplicities `m_i = n / d_i` from the orthogonality relation.
pub fn multiplicities<T: Int>(p: &ExactMatrix<T>) -> Option<Vec<Quad<T>>> {
    let n = Quad::rational(order_of(p)?);
    eigen_norms(p)?
        .iter()
        .map(|d| d.try_recip().ok().map(|inv| &n * &inv))
        .collect()
}

/// Degrees against multiplicities: `d_0 = n`, `m_i = k_i`, `k_i | n`.
pub fn degrees_multiplicities<T: Int>(p: &ExactMatrix<T>) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let names = [
        "principal_norm",
        "multiplicity_equals_degree",
        "degree_divides_order",
    ];
    let (Some(n), Some(d), Some(k)) = (order_of(p), eigen_norms(p), p.degrees()) else {
        for name in names {
            rep.fail(
                name,
                &[0],
                "row 0 is not a vector of positive rational degrees",
            );
        }
        return rep;
    };
    let nq = Quad::rational(n.clone());
    rep.record(
        "principal_norm",
        (d[0] != nq).then(|| {
            (
                vec![0],
                format!("d_0 = {} differs from the order {}", d[0].pretty(), n),
            )
        }),
    );
    rep.record(
        "multiplicity_equals_degree",
        (0..p.rank()).find_map(|i| {
            let want = Quad::rational(&n / &k[i]);
            (d[i] != want).then(|| {
                (
                    vec![i],
                    format!(
                        "m_{i} = {} needs d_{i} = d_0/m_{i} = {}, found d_{i} = {}",
                        k[i],
                        want.pretty(),
                        d[i].pretty()
                    ),
                )
            })
        }),
    );
    rep.record(
        "degree_divides_order",
        (0..p.rank()).find_map(|j| {
            let q = &n / &k[j];
            (!(k[j].is_integer() && n.is_integer() && q.is_integer())).then(|| {
                (
                    vec![j],
                    format!("k_{j} = {} does not divide n = {}", k[j], n),
                )
            })
        }),
    );
    rep
}

/// Weighted orthogonality of characters and the product `P conj(P) = n I`.
pub fn verify_orthogonality<T: Int>(p: &ExactMatrix<T>) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let e = p.entries();
    let r = p.rank();
    let (Some(n), Some(k)) = (order_of(p), p.degrees()) else {
        rep.fail(
            "orthogonality_relation",
            &[0],
            "row 0 is not a degree vector",
        );
        rep.fail("p_pbar_nI", &[0], "row 0 is not a degree vector");
        return rep;
    };
    let nq = Quad::rational(n.clone());
    let mut bad = None;
    'outer: for i in 0..r {
        for j in 0..r {
            let lhs: Quad<T> = (0..r)
                .map(|c| &e[i][c] * &e[j][c].conj() * Quad::rational(Ratio::one() / &k[c]))
                .sum();
            let want = if i == j {
                Quad::rational(&n / &k[i])
            } else {
                Quad::zero()
            };
            if lhs != want {
                bad = Some((
                    vec![i, j],
                    format!(
                        "sum_k p_{i}k conj(p_{j}k)/k_k = {}, expected {}",
                        lhs.pretty(),
                        want.pretty()
                    ),
                ));
                break 'outer;
            }
        }
    }
    rep.record("orthogonality_relation", bad);
    rep.record("p_pbar_nI", product_mismatch(e, &nq, false));
    rep
}

fn product_mismatch<T: Int>(e: &[Vec<Quad<T>>], n: &Quad<T>, transpose: bool) -> Witness {
    let r = e.len();
    for i in 0..r {
        for j in 0..r {
            let v: Quad<T> = (0..r)
                .map(|l| {
                    let other = if transpose { &e[j][l] } else { &e[l][j] };
                    &e[i][l] * &other.conj()
                })
                .sum();
            let want = if i == j { n.clone() } else { Quad::zero() };
            if v != want {
                return Some((
                    vec![i, j],
                    format!("entry ({i},{j}) of the product is {}", v.pretty()),
                ));
            }
        }
    }
    None
}

/// Whether `P conj(P) = nI` holds as written, and with a transpose on the
/// second factor.
pub fn product_conventions<T: Int>(p: &ExactMatrix<T>) -> (bool, bool) {
    let Some(n) = order_of(p) else {
        return (false, false);
    };
    let nq = Quad::rational(n);
    (
        product_mismatch(p.entries(), &nq, false).is_none(),
        product_mismatch(p.entries(), &nq, true).is_none(),
    )
}

/// `S` symmetric, expressed on `P`: `p_ij^2 k_i d_j = p_ji^2 k_j d_i` with
/// `p_ij / p_ji` positive real.
pub fn verify_self_duality<T: Int>(p: &ExactMatrix<T>) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let Some(d) = eigen_norms(p) else {
        rep.fail("self_dual_symmetry", &[0], "a degree vanishes");
        return rep;
    };
    let e = p.entries();
    // S_ij = p_ij / sqrt(k_j d_i), so the row radicands are d_i / k_i.
    let weight: Vec<Quad<T>> = (0..p.rank())
        .map(|i| &d[i] * &e[0][i].try_recip().unwrap())
        .collect();
    let bad = scaled_symmetry(e, &weight).map(|(idx, _)| {
        let (i, j) = (idx[0], idx[1]);
        (
            idx,
            format!(
                "S_{} != S_{}: p_{} = {}, p_{} = {}",
                sub(i, j),
                sub(j, i),
                sub(i, j),
                e[i][j].pretty(),
                sub(j, i),
                e[j][i].pretty()
            ),
        )
    });
    rep.record("self_dual_symmetry", bad);
    rep
}

/// Allen entries `p_ij / sqrt(k_j)` are algebraic integers, tested through
/// their squares `p_ij^2 / k_j`.
pub fn verify_allen_entries<T: Int>(p: &ExactMatrix<T>) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let e = p.entries();
    let r = p.rank();
    let mut bad = None;
    'outer: for i in 0..r {
        for j in 0..r {
            let Ok(ik) = e[0][j].try_recip() else {
                bad = Some((vec![0, j], format!("degree p_0{j} vanishes")));
                break 'outer;
            };
            let sq = &e[i][j] * &e[i][j] * &ik;
            if !sq.is_algebraic_integer() {
                bad = Some((
                    vec![i, j],
                    format!(
                        "Allen entry p_{}/sqrt({}) = {}/sqrt({}) squares to {}, not an algebraic integer",
                        sub(i, j),
                        e[0][j].pretty(),
                        e[i][j].pretty(),
                        e[0][j].pretty(),
                        sq.pretty()
                    ),
                ));
                break 'outer;
            }
        }
    }
    rep.record("allen_entries_algebraic_integer", bad);
    rep
}

/// `N_ijk = lambda_ijk sqrt(k_k) / sqrt(k_i k_j)` must be an integer; tested
/// as `lambda^2 k_k / (k_i k_j)` being the square of an integer.
pub fn allen_integrality<T: Int>(p: &ExactMatrix<T>) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let lam = match structure_constants_lambda(p) {
        Ok(l) => l,
        Err(err) => {
            rep.fail("allen_integrality", &[], err.to_string());
            return rep;
        }
    };
    let k = &p.entries()[0];
    let mut bad = None;
    for (i, j, c) in lam.triples() {
        let l = lam.get(i, j, c);
        if l.is_zero() {
            continue;
        }
        if !l.is_real() {
            bad = Some((
                vec![i, j, c],
                format!("lambda_{i}{j}{c} = {} is not real", l.pretty()),
            ));
            break;
        }
        let q = l * l * &k[c] / (&k[i] * &k[j]);
        let witness = match q.as_rational() {
            Some(q) if is_integer_square(q) => continue,
            Some(q) => match rational_sqrt(q) {
                Some(root) => format!(
                    "lambda_{i}{j}{c} = {} gives N_{i}{j}{c} = {}{}, not an integer",
                    l.pretty(),
                    if l.is_positive_real() { "" } else { "-" },
                    root
                ),
                None => format!(
                    "lambda_{i}{j}{c} = {} gives N_{i}{j}{c}^2 = lambda^2 k_{c}/(k_{i} k_{j}) = {}, not an integer square",
                    l.pretty(),
                    q
                ),
            },
            None => format!(
                "lambda_{i}{j}{c} = {} gives N_{i}{j}{c}^2 = {}, not rational",
                l.pretty(),
                q.pretty()
            ),
        };
        bad = Some((vec![i, j, c], witness));
        break;
    }
    rep.record("allen_integrality", bad);
    rep
}

/// Everything a table arising from an Allen matrix must satisfy.
pub fn full_suite<T: Int>(p: &ExactMatrix<T>) -> VerificationReport {
    let mut rep = verify_c_algebra(p);
    rep.extend(degrees_multiplicities(p));
    rep.extend(verify_orthogonality(p));
    rep.extend(verify_self_duality(p));
    rep.extend(verify_allen_entries(p));
    rep.extend(allen_integrality(p));
    rep
}

/// `|p_ij| <= p_0j` for every entry.
pub fn entry_bound_holds<T: Int>(p: &ExactMatrix<T>) -> bool {
    let e = p.entries();
    (0..p.rank()).all(|i| {
        (0..p.rank()).all(|j| {
            let diff = &e[0][j] * &e[0][j] - e[i][j].abs_squared();
            diff.real_sign() != Some(std::cmp::Ordering::Less)
        })
    })
}

/// Rational integer `n` from a rational, if integral.
pub fn as_integer<T: Int>(q: &Ratio<T>) -> Option<T> {
    q.is_integer().then(|| q.to_integer())
}
