use std::collections::HashSet;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use super::{common_disc, enumerate_degree_vectors, int, root_of, Collector};
use super::{ClassificationResult, SearchBound};
use crate::exactnum::{Bound, Int, Poly, Quad};
use crate::tables::{ExactMatrix, Role};

/// Degrees tried explicitly by the rank-2 and asymmetric rank-3 engines;
/// the closing arguments in their notes cover every larger degree.
pub const SMALL_WINDOW: i64 = 16;

fn eigen<T: Int>(rows: Vec<Vec<Quad<T>>>) -> ExactMatrix<T> {
    let disc = common_disc(rows.iter().flatten());
    ExactMatrix::new(rows, disc, Role::Eigen).expect("entries share one field")
}

fn integrality_witness<T: Int>(
    name: &str,
    formula: &str,
    value: &Quad<T>,
    num: i64,
    den: i64,
) -> String {
    let raw = format!("{num}/{den}");
    if value.is_rational() && raw != value.pretty() {
        format!(
            "{name} = {formula} = {raw} = {}, not an integer",
            value.pretty()
        )
    } else if value.is_rational() {
        format!("{name} = {formula} = {raw}, not an integer")
    } else {
        format!("{name} = {formula} = {}, irrational", value.pretty())
    }
}

/// Rank 2: the only row orthogonal to `[1, k]` is `[1, -1]`, and
/// `N_111 = (k-1)/sqrt(k)` must be an integer.
pub fn classify_rank2<T: Int>() -> ClassificationResult<T> {
    let mut out = Collector::new();
    for k in 1..=SMALL_WINDOW {
        let desc = format!("degrees (1,{k})");
        let n111 = Quad::new(
            Ratio::zero(),
            Ratio::new(T::from_i64(k - 1).unwrap(), T::from_i64(k).unwrap()),
            T::from_i64(k).unwrap(),
        );
        if !n111.is_rational_integer() {
            let w = integrality_witness("N_111", "(k-1)/sqrt(k)", &n111, k - 1, isqrt(k));
            out.reject(desc, "n_integral", w);
            continue;
        }
        let p = eigen(vec![
            vec![Quad::one(), Quad::from_int(k)],
            vec![Quad::one(), Quad::from_int(-1)],
        ]);
        out.consider(desc, p);
    }
    out.note("k divides (k-1)^2 only for k = 1, so larger degrees add nothing");
    out.finish(2, &[], SearchBound::Exhaustive)
}

fn isqrt(k: i64) -> i64 {
    (k as f64).sqrt().round() as i64
}

/// Rank 3 with `b_2 = b_1*`: row 1 is `[1, a, conj(a)]` with
/// `a = (-1 + sqrt(-(1+2k)))/2`.
pub fn classify_rank3_asymmetric<T: Int>() -> ClassificationResult<T> {
    let mut out = Collector::new();
    let t = |n: i64| T::from_i64(n).unwrap();
    for k in 1..=SMALL_WINDOW {
        let desc = format!("degrees (1,{k},{k})");
        let plus = Quad::new(Ratio::zero(), Ratio::new(t(k + 1), t(2 * k)), t(k));
        let minus = Quad::new(Ratio::zero(), Ratio::new(t(k - 1), t(2 * k)), t(k));
        if !plus.is_rational_integer() || !plus.real_sign().is_some_and(|s| s.is_gt()) {
            let w = integrality_witness("N_112", "(k+1)/(2*sqrt(k))", &plus, k + 1, 2 * isqrt(k));
            out.reject(desc, "n_integral", w);
            continue;
        }
        if !minus.is_rational_integer() {
            let w = integrality_witness("N_121", "(k-1)/(2*sqrt(k))", &minus, k - 1, 2 * isqrt(k));
            out.reject(desc, "n_integral", w);
            continue;
        }
        let half = Ratio::new(t(-1), t(2));
        let a = Quad::new(half.clone(), Ratio::new(t(1), t(2)), t(-(1 + 2 * k)));
        let p = eigen(vec![
            vec![Quad::one(), Quad::from_int(k), Quad::from_int(k)],
            vec![Quad::one(), a.clone(), a.conj()],
            vec![Quad::one(), a.conj(), a],
        ]);
        out.consider(desc, p);
    }
    out.note("N_112 + N_121 = sqrt(k) forces k = m^2, and m | m^2 + 1 forces m = 1");
    out.finish(3, &["b_2 = b_1*"], SearchBound::Exhaustive)
}

/// Pieces of the symmetric rank-3 parametrisation for degrees `(1, k, l)`
/// and `b_1 b_2 = u b_1 + v b_2`, as polynomials in `u`.
struct Rank3Family<T: Int> {
    k: Ratio<T>,
    l: Ratio<T>,
    v: Poly<T>,
    /// `v - u - 1`
    a: Poly<T>,
    /// `u - v - 1`
    c: Poly<T>,
    /// `(u - v - 1)^2 + 4u`
    disc: Poly<T>,
}

impl<T: Int> Rank3Family<T> {
    fn new(k: Ratio<T>, l: Ratio<T>) -> Self {
        let u = Poly::var();
        let one = Poly::constant(int(1));
        // N_012 = 0 gives v = k - u k / l
        let v = Poly::constant(k.clone()).sub(&u.scale(&(&k / &l)));
        let a = v.sub(&u).sub(&one);
        let c = u.sub(&v).sub(&one);
        let disc = c.mul(&c).add(&u.scale(&int(4)));
        Rank3Family {
            k,
            l,
            v,
            a,
            c,
            disc,
        }
    }

    fn order(&self) -> Ratio<T> {
        int::<T>(1) + &self.k + &self.l
    }

    /// Column-norm equations for columns 1 and 2, with the radical cleared:
    /// `A + B sqrt(D) = 0` becomes `A^2 - B^2 D = 0`.
    fn constraints(&self) -> [Poly<T>; 2] {
        let n = self.order();
        let one = int::<T>(1);
        let col = |x: &Poly<T>, own: &Ratio<T>, other: &Ratio<T>| {
            let big_a = Poly::constant((own - &n) * int(4))
                .add(&x.mul(x).add(&self.disc).scale(&(&one + other / own)));
            let big_b = x.scale(&((&one - other / own) * int(2)));
            big_a.mul(&big_a).sub(&big_b.mul(&big_b).mul(&self.disc))
        };
        [
            col(&self.a, &self.k, &self.l),
            col(&self.c, &self.l, &self.k),
        ]
    }

    /// Both sign choices of the square root; `Err(D)` when `D < 0` and the
    /// table would not be real.
    fn tables(&self, u: &Ratio<T>) -> Result<Vec<ExactMatrix<T>>, Ratio<T>> {
        let d = self.disc.eval(u);
        if d.is_negative() {
            return Err(d);
        }
        let w = root_of(&d);
        let a = Quad::rational(self.a.eval(u));
        let c = Quad::rational(self.c.eval(u));
        let half = Quad::from_frac(1, 2);
        let mut out = Vec::new();
        for w in [w.clone(), -w] {
            let phi = [(&a + &w) * &half, (&c - &w) * &half];
            let psi = [(&a - &w) * &half, (&c + &w) * &half];
            out.push(eigen(vec![
                vec![
                    Quad::one(),
                    Quad::rational(self.k.clone()),
                    Quad::rational(self.l.clone()),
                ],
                vec![Quad::one(), phi[0].clone(), phi[1].clone()],
                vec![Quad::one(), psi[0].clone(), psi[1].clone()],
            ]));
        }
        Ok(out)
    }
}

/// Reference constraints for the patterns `[1,1,2]` and `[1,2,3]`.
fn reference_constraint<T: Int>(k: i64, l: i64) -> Option<Poly<T>> {
    match (k, l) {
        (1, 2) => Some(Poly::from_ints(&[0, 0, 0, -1, 1])),
        (2, 3) => Some(Poly::from_ints(&[243, -1296, 2520, -1850, 625])),
        _ => None,
    }
}

/// Looks for a real root of `p` of the form `m * sqrt(l)`, the only
/// irrational values `u = N_121 sqrt(l)` can take.
fn surd_root<T: Int>(p: &Poly<T>, l: &Ratio<T>) -> Option<Quad<T>> {
    let bound =
        p.coeffs()
            .iter()
            .map(|c| (c / p.lead()).abs())
            .fold(
                Ratio::zero(),
                |acc: Ratio<T>, c| if c > acc { c } else { acc },
            )
            + int(1);
    let mut m = T::one();
    let sqrt_l = root_of(l);
    if sqrt_l.is_rational() {
        return None;
    }
    loop {
        let mq = Ratio::from_integer(m.clone());
        if &mq * &mq * l > &bound * &bound {
            return None;
        }
        for s in [Quad::rational(mq.clone()), Quad::rational(-mq.clone())] {
            let x = &s * &sqrt_l;
            if p.eval_quad(&x).is_zero() {
                return Some(x);
            }
        }
        m = m + T::one();
    }
}

/// Rank 3 with real, symmetric tables.
pub fn classify_rank3_symmetric<T: Int>() -> ClassificationResult<T> {
    let mut out = Collector::new();
    let mut built: HashSet<ExactMatrix<T>> = HashSet::new();
    for dv in enumerate_degree_vectors::<T>(3, false, u64::MAX) {
        let ks = dv.degrees();
        let pattern = format!("[{},{},{}]", ks[0], ks[1], ks[2]);
        let orders = if ks[1] == ks[2] {
            vec![(ks[1].clone(), ks[2].clone())]
        } else {
            vec![
                (ks[1].clone(), ks[2].clone()),
                (ks[2].clone(), ks[1].clone()),
            ]
        };
        for (k, l) in orders {
            let fam = Rank3Family::new(k.clone(), l.clone());
            let label = format!("pattern {pattern} with (k,l) = ({k},{l})");
            let mut polys: Vec<(String, Poly<T>)> = fam
                .constraints()
                .into_iter()
                .zip(["column-1 norm", "column-2 norm"])
                .map(|(p, name)| (name.to_string(), p))
                .collect();
            if k.is_integer() && l.is_integer() {
                let (ki, li) = (k.to_integer().to_i64(), l.to_integer().to_i64());
                if let (Some(ki), Some(li)) = (ki, li) {
                    if let Some(p) = reference_constraint::<T>(ki, li) {
                        polys.push(("reference".to_string(), p));
                    }
                }
            }
            let mut candidates: Vec<Ratio<T>> = Vec::new();
            for (name, p) in &polys {
                if p.is_zero() {
                    out.unresolved(format!("{label}: {name} constraint vanishes identically"));
                    continue;
                }
                let roots = p.rational_roots();
                let rest = p.strip_rational_roots();
                let real = rest
                    .count_real_roots(&Bound::NegInf, &Bound::PosInf)
                    .unwrap_or(0);
                if roots.is_empty() && real == 0 {
                    out.reject(
                        format!("{label}: {name} constraint {}", p.render("u")),
                        "sturm_count",
                        "0 real roots".to_string(),
                    );
                } else if real > 0 {
                    match surd_root(&rest, &l) {
                        Some(x) => out.unresolved(format!(
                            "{label}: {name} constraint has root u = {}, outside a single field",
                            x.pretty()
                        )),
                        None => out.reject(
                            format!("{label}: {name} constraint {}", rest.render("u")),
                            "structure_constant_form",
                            format!("{real} irrational real root(s), none of the form m*sqrt({l})"),
                        ),
                    }
                }
                candidates.extend(roots);
            }
            candidates.sort();
            candidates.dedup();
            for u in candidates {
                let v = fam.v.eval(&u);
                let desc = format!("{label}, (u,v) = ({u},{v})");
                match fam.tables(&u) {
                    Err(d) => out.reject(desc, "real_table", format!("(u-v-1)^2+4u = {d} < 0")),
                    Ok(tables) => {
                        for p in tables {
                            if built.insert(p.clone()) {
                                out.consider(desc.clone(), p);
                            }
                        }
                    }
                }
            }
        }
    }
    out.finish(3, &["real symmetric table"], SearchBound::Exhaustive)
}
