//! Necessary conditions on degrees or tables for arising from an Allen
//! matrix. Each rule either admits, rejects with a witness, or declares
//! itself not applicable when its side hypotheses are not asserted.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::exactnum::{Int, Quad};
use crate::tables::{
    allen_from_eigen, entry_bound_holds, involution, structure_constants_lambda,
    verify_integral_fourier, DegreeVector, ExactMatrix,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    LinearGroupCheck,
    OneDegreeDifferent,
    OddOrderLinear,
    DivisorOfT,
    PowerOfTwo,
    DegreeMultiple,
    OddRankOrder,
    DegreesDivideOrder,
}

impl Rule {
    pub const ALL: [Rule; 8] = [
        Rule::LinearGroupCheck,
        Rule::OneDegreeDifferent,
        Rule::OddOrderLinear,
        Rule::DivisorOfT,
        Rule::PowerOfTwo,
        Rule::DegreeMultiple,
        Rule::OddRankOrder,
        Rule::DegreesDivideOrder,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::LinearGroupCheck => "linear_group_check",
            Rule::OneDegreeDifferent => "one_degree_different",
            Rule::OddOrderLinear => "odd_order_linear",
            Rule::DivisorOfT => "divisor_of_t",
            Rule::PowerOfTwo => "power_of_two",
            Rule::DegreeMultiple => "degree_multiple",
            Rule::OddRankOrder => "odd_rank_order",
            Rule::DegreesDivideOrder => "degrees_divide_order",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Admissible,
    Rejected,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub rule: Rule,
    pub outcome: Outcome,
    pub witness: String,
}

impl Verdict {
    fn admit(rule: Rule, witness: impl Into<String>) -> Self {
        Verdict {
            rule,
            outcome: Outcome::Admissible,
            witness: witness.into(),
        }
    }

    fn reject(rule: Rule, witness: impl Into<String>) -> Self {
        Verdict {
            rule,
            outcome: Outcome::Rejected,
            witness: witness.into(),
        }
    }

    fn skip(rule: Rule, witness: impl Into<String>) -> Self {
        Verdict {
            rule,
            outcome: Outcome::NotApplicable,
            witness: witness.into(),
        }
    }

    /// True unless the rule rejected.
    pub fn admissible(&self) -> bool {
        self.outcome != Outcome::Rejected
    }

    /// The rule, when it rejected.
    pub fn violated_rule(&self) -> Option<Rule> {
        (self.outcome == Outcome::Rejected).then_some(self.rule)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.outcome {
            Outcome::Admissible => "admissible",
            Outcome::Rejected => "rejected",
            Outcome::NotApplicable => "n/a",
        };
        write!(f, "{} {}", self.rule, tag)?;
        if !self.witness.is_empty() {
            write!(f, ": {}", self.witness)?;
        }
        Ok(())
    }
}

/// Side hypotheses of the rules.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Hypotheses {
    /// The table is real.
    pub real: bool,
    /// `lambda_iij >= 0` and `lambda_ii*j >= 0` for all `i, j`.
    pub nonneg_lambda: bool,
    /// `|p_ij| <= p_0j` for all entries.
    pub entry_bound: bool,
    /// The Allen matrix is an integral Fourier matrix.
    pub integral_fourier: bool,
}

impl Hypotheses {
    /// Reads every flag off the table itself.
    pub fn derive<T: Int>(p: &ExactMatrix<T>) -> Self {
        let real = p.is_real();
        let nonneg_lambda = match (structure_constants_lambda(p), involution(p)) {
            (Ok(lam), Ok(star)) => (0..p.rank()).all(|i| {
                (0..p.rank()).all(|j| nonneg(lam.get(i, i, j)) && nonneg(lam.get(i, star[i], j)))
            }),
            _ => false,
        };
        let integral_fourier = allen_from_eigen(p)
            .map(|s| verify_integral_fourier(&s).passed())
            .unwrap_or(false);
        Hypotheses {
            real,
            nonneg_lambda,
            entry_bound: entry_bound_holds(p),
            integral_fourier,
        }
    }
}

fn nonneg<T: Int>(x: &Quad<T>) -> bool {
    x.is_zero() || x.is_positive_real()
}

/// Integer degrees, when every degree is an integer.
fn int_degrees<T: Int>(d: &DegreeVector<T>) -> Option<Vec<T>> {
    d.integer_degrees()
}

fn order_int<T: Int>(ks: &[T]) -> T {
    ks.iter().fold(T::zero(), |a, k| a + k.clone())
}

fn is_power_of_two<T: Int>(n: &T) -> bool {
    let two = T::one() + T::one();
    let mut m = n.clone();
    if !m.is_positive() {
        return false;
    }
    while m.is_even() {
        m = m / two.clone();
    }
    m.is_one()
}

/// `(t, k)` when the degrees are `t` ones and all the others equal `k`.
fn ones_and_one_value<T: Int>(ks: &[T]) -> Option<(usize, T)> {
    let t = ks.iter().filter(|k| k.is_one()).count();
    let mut rest = ks.iter().filter(|k| !k.is_one());
    let k = rest.next()?.clone();
    rest.all(|x| *x == k).then_some((t, k))
}

/// Degree-one basis elements form an abelian group under the entrywise
/// product, elementary abelian when the table is real.
pub fn linear_group_check<T: Int>(p: &ExactMatrix<T>, hyp: &Hypotheses) -> Verdict {
    let rule = Rule::LinearGroupCheck;
    if !hyp.nonneg_lambda {
        return Verdict::skip(rule, "needs lambda_ii*j >= 0");
    }
    let e = p.entries();
    let r = p.rank();
    let linear: Vec<usize> = (0..r).filter(|&j| e[0][j].is_one()).collect();
    let col = |j: usize| p.column(j);
    let mut table = BTreeMap::new();
    for &a in &linear {
        for &b in &linear {
            let prod: Vec<Quad<T>> = (0..r).map(|l| &e[l][a] * &e[l][b]).collect();
            match linear.iter().find(|&&c| col(c) == prod) {
                Some(&c) => {
                    table.insert((a, b), c);
                }
                None => {
                    return Verdict::reject(
                        rule,
                        format!("b_{a} o b_{b} is not a degree-one basis element"),
                    )
                }
            }
        }
    }
    if let Some(&a) = linear
        .iter()
        .find(|&&a| !linear.iter().any(|&b| table[&(a, b)] == 0))
    {
        return Verdict::reject(
            rule,
            format!("b_{a} has no inverse among degree-one elements"),
        );
    }
    let structure = abelian_invariants(&linear, &table);
    if hyp.real {
        if let Some(&a) = linear.iter().find(|&&a| table[&(a, a)] != 0) {
            return Verdict::reject(
                rule,
                format!(
                    "real table but b_{a} o b_{a} != b_0; group of order {} is {}, not elementary abelian",
                    linear.len(),
                    structure
                ),
            );
        }
    }
    Verdict::admit(rule, format!("L = {structure}"))
}

/// Invariant factors of a finite abelian group given by its table, as
/// `Z2 x Z2`, `Z3`, or `1`.
fn abelian_invariants(elems: &[usize], table: &BTreeMap<(usize, usize), usize>) -> String {
    let power = |a: usize, m: usize| {
        let mut x = 0;
        for _ in 0..m {
            x = table[&(x, a)];
        }
        x
    };
    let size = elems.len();
    let mut factors: Vec<usize> = Vec::new();
    let mut rest = size;
    let mut prime = 2;
    while rest > 1 {
        if rest.is_multiple_of(prime) {
            while rest.is_multiple_of(prime) {
                rest /= prime;
            }
            // rank of the p-part in each layer: count x with x^(p^k) = 1
            let mut pk = 1;
            let mut prev_log = 0;
            let mut layers: Vec<usize> = Vec::new();
            loop {
                pk *= prime;
                let c = elems.iter().filter(|&&a| power(a, pk) == 0).count();
                let mut log = 0;
                let mut m = c;
                while m % prime == 0 && m > 1 {
                    m /= prime;
                    log += 1;
                }
                if log == prev_log {
                    break;
                }
                layers.push(log - prev_log);
                prev_log = log;
            }
            // layers[k] = number of cyclic factors of order >= p^(k+1)
            for k in 0..layers.len() {
                let here = layers[k] - layers.get(k + 1).copied().unwrap_or(0);
                for _ in 0..here {
                    factors.push(prime.pow(k as u32 + 1));
                }
            }
        }
        prime += 1;
    }
    if factors.is_empty() {
        return "1".into();
    }
    factors.sort_unstable();
    factors
        .iter()
        .map(|f| format!("Z{f}"))
        .collect::<Vec<_>>()
        .join(" x ")
}

/// A real table with nonnegative `lambda_iij` cannot have exactly one degree
/// other than 1 in even rank above 2, nor (with the entry bound, rank above
/// 3) a single degree at least the rank with all others 1.
pub fn one_degree_different<T: Int>(d: &DegreeVector<T>, hyp: &Hypotheses) -> Verdict {
    let rule = Rule::OneDegreeDifferent;
    if !(hyp.real && hyp.nonneg_lambda) {
        return Verdict::skip(rule, "needs a real table with lambda_iij >= 0");
    }
    let r = d.rank();
    let ks = d.degrees();
    let big: Vec<usize> = (0..r).filter(|&i| !ks[i].is_one()).collect();
    if big.len() != 1 {
        return Verdict::admit(rule, format!("{} degrees differ from 1", big.len()));
    }
    if r.is_multiple_of(2) && r > 2 {
        return Verdict::reject(
            rule,
            format!("even rank {r} with exactly one degree {} != 1", ks[big[0]]),
        );
    }
    let rank_q = num_rational::Ratio::from_integer(T::from_usize(r).unwrap());
    if r > 3 && hyp.entry_bound && ks[big[0]] >= rank_q {
        return Verdict::reject(
            rule,
            format!(
                "rank {r} with one degree {} >= rank and the rest 1",
                ks[big[0]]
            ),
        );
    }
    Verdict::admit(rule, "")
}

/// A real table of odd order has some nontrivial degree other than 1.
pub fn odd_order_linear<T: Int>(d: &DegreeVector<T>, hyp: &Hypotheses) -> Verdict {
    let rule = Rule::OddOrderLinear;
    if !hyp.real {
        return Verdict::skip(rule, "needs a real table");
    }
    if d.rank() < 2 {
        return Verdict::skip(rule, "rank 1");
    }
    let n = d.order();
    let odd = n.is_integer() && n.to_integer().is_odd();
    if odd && d.degrees().iter().all(|k| k.is_one()) {
        return Verdict::reject(rule, format!("odd order {n} with every degree 1"));
    }
    Verdict::admit(rule, "")
}

/// `t` ones and the remaining degrees all `k`: then `k | t`.
pub fn divisor_of_t<T: Int>(d: &DegreeVector<T>) -> Verdict {
    let rule = Rule::DivisorOfT;
    let Some(ks) = int_degrees(d) else {
        return Verdict::skip(rule, "degrees are not integers");
    };
    let Some((t, k)) = ones_and_one_value(&ks) else {
        return Verdict::skip(rule, "degrees are not t ones and a single other value");
    };
    let tt = T::from_usize(t).unwrap();
    if tt.is_multiple_of(&k) {
        Verdict::admit(rule, format!("t = {t}, k = {k}"))
    } else {
        Verdict::reject(rule, format!("t = {t} ones, k = {k} does not divide t"))
    }
}

/// Real, `lambda_iij >= 0`, one nontrivial degree value `k`: the degree-one
/// elements form an elementary abelian 2-group of order `2^m` and `k | 2^m`.
pub fn power_of_two<T: Int>(d: &DegreeVector<T>, hyp: &Hypotheses) -> Verdict {
    let rule = Rule::PowerOfTwo;
    if !(hyp.real && hyp.nonneg_lambda) {
        return Verdict::skip(rule, "needs a real table with lambda_iij >= 0");
    }
    let Some(ks) = int_degrees(d) else {
        return Verdict::skip(rule, "degrees are not integers");
    };
    let Some((t, k)) = ones_and_one_value(&ks) else {
        return Verdict::skip(rule, "degrees are not t ones and a single other value");
    };
    let tt = T::from_usize(t).unwrap();
    if !is_power_of_two(&tt) {
        return Verdict::reject(rule, format!("{t} degree-one elements, not a power of 2"));
    }
    if !tt.is_multiple_of(&k) {
        return Verdict::reject(rule, format!("k = {k} does not divide 2^m = {t}"));
    }
    Verdict::admit(rule, format!("2^m = {t}, k = {k}"))
}

/// Divisibility of partial degree sums by a degree that is divisible by
/// every smaller degree and divides every larger one.
pub fn degree_multiple<T: Int>(d: &DegreeVector<T>) -> Verdict {
    let rule = Rule::DegreeMultiple;
    let Some(ks) = int_degrees(d) else {
        return Verdict::skip(rule, "degrees are not integers");
    };
    let mut values: Vec<T> = ks.clone();
    values.sort();
    values.dedup();
    let ones = ks.iter().filter(|k| k.is_one()).count();
    let nontrivial: Vec<&T> = values.iter().filter(|k| !k.is_one()).collect();
    if let Some(&kj) = nontrivial.first() {
        if nontrivial.iter().all(|k| k.is_multiple_of(kj)) {
            let t = T::from_usize(ones).unwrap();
            if !t.is_multiple_of(kj) {
                return Verdict::reject(
                    rule,
                    format!("{ones} degrees equal 1, not a multiple of the smallest degree {kj}"),
                );
            }
        }
    }
    for (pos, kt) in values.iter().enumerate().skip(1) {
        let below = &values[..pos];
        let above = &values[pos + 1..];
        if !below.iter().all(|k| kt.is_multiple_of(k))
            || !above.iter().all(|k| k.is_multiple_of(kt))
        {
            continue;
        }
        let ks_val = &values[pos - 1];
        let smaller: T = order_int(
            &ks.iter()
                .filter(|k| *k < ks_val)
                .cloned()
                .collect::<Vec<_>>(),
        );
        let equal = T::from_usize(ks.iter().filter(|k| *k == ks_val).count()).unwrap();
        let total = smaller.clone() + equal.clone() * ks_val.clone();
        if !total.is_multiple_of(kt) {
            return Verdict::reject(
                rule,
                format!(
                    "k_t = {kt}, k_s = {ks_val}: {smaller} + {equal}*{ks_val} = {total} is not divisible by {kt}"
                ),
            );
        }
    }
    Verdict::admit(rule, "")
}

/// Integral Fourier, odd rank, odd order, odd maximum degree: rank >= 10.
pub fn odd_rank_order<T: Int>(d: &DegreeVector<T>, hyp: &Hypotheses) -> Verdict {
    let rule = Rule::OddRankOrder;
    if !hyp.integral_fourier {
        return Verdict::skip(rule, "needs an integral Fourier matrix");
    }
    let Some(ks) = int_degrees(d) else {
        return Verdict::skip(rule, "degrees are not integers");
    };
    let r = d.rank();
    let n = order_int(&ks);
    let max = ks.iter().max().unwrap().clone();
    if r.is_multiple_of(2) || r < 2 || n.is_even() || max.is_even() {
        return Verdict::skip(rule, "needs odd rank, odd order and odd largest degree");
    }
    if r < 10 {
        return Verdict::reject(
            rule,
            format!("rank {r} < 10 with odd order {n} and odd largest degree {max} (uses: d_0 is an odd square)"),
        );
    }
    Verdict::admit(rule, "")
}

/// Degrees are multiplicities, which are integers dividing the order.
pub fn degrees_divide_order<T: Int>(d: &DegreeVector<T>) -> Verdict {
    let rule = Rule::DegreesDivideOrder;
    let Some(ks) = int_degrees(d) else {
        let bad = d.degrees().iter().find(|k| !k.is_integer()).unwrap();
        return Verdict::reject(rule, format!("degree {bad} is not an integer"));
    };
    let n = order_int(&ks);
    match ks.iter().find(|k| !n.is_multiple_of(k)) {
        Some(k) => Verdict::reject(rule, format!("degree {k} does not divide the order {n}")),
        None => Verdict::admit(rule, format!("n = {n}")),
    }
}

/// What `screen_all` runs on.
pub enum ScreenInput<'a, T: Int> {
    Degrees(&'a DegreeVector<T>),
    Table(&'a ExactMatrix<T>),
}

/// Every rule, in `Rule::ALL` order. The input is screened out iff some
/// verdict is a rejection.
pub fn screen_all<T: Int>(input: ScreenInput<'_, T>, hyp: &Hypotheses) -> Vec<Verdict> {
    let (degrees, table) = match input {
        ScreenInput::Degrees(d) => (d.clone(), None),
        ScreenInput::Table(p) => match p.degrees().map(DegreeVector::new) {
            Some(Ok(d)) => (d, Some(p)),
            _ => {
                return vec![Verdict::reject(
                    Rule::DegreesDivideOrder,
                    "row 0 is not a degree vector starting with 1",
                )]
            }
        },
    };
    Rule::ALL
        .iter()
        .map(|rule| match rule {
            Rule::LinearGroupCheck => match table {
                Some(p) => linear_group_check(p, hyp),
                None => Verdict::skip(*rule, "needs table entries"),
            },
            Rule::OneDegreeDifferent => one_degree_different(&degrees, hyp),
            Rule::OddOrderLinear => odd_order_linear(&degrees, hyp),
            Rule::DivisorOfT => divisor_of_t(&degrees),
            Rule::PowerOfTwo => power_of_two(&degrees, hyp),
            Rule::DegreeMultiple => degree_multiple(&degrees),
            Rule::OddRankOrder => odd_rank_order(&degrees, hyp),
            Rule::DegreesDivideOrder => degrees_divide_order(&degrees),
        })
        .collect()
}

/// First rejecting verdict, if any.
pub fn first_rejection(verdicts: &[Verdict]) -> Option<&Verdict> {
    verdicts.iter().find(|v| !v.admissible())
}
