use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use super::{squarefree_split, ExactError, Int, Quad};

/// Dense univariate polynomial over the rationals, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<T: Int> {
    coeffs: Vec<Ratio<T>>,
}

/// Endpoint of a root-counting interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound<T: Int> {
    NegInf,
    PosInf,
    At(Ratio<T>),
}

impl<T: Int> Poly<T> {
    pub fn new(mut coeffs: Vec<Ratio<T>>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Ratio::from_integer(T::from_i64(c).unwrap()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn constant(c: Ratio<T>) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `u`.
    pub fn var() -> Self {
        Self::new(vec![Ratio::zero(), Ratio::one()])
    }

    /// `u - r`.
    pub fn linear_root(r: &Ratio<T>) -> Self {
        Self::new(vec![-r.clone(), Ratio::one()])
    }

    pub fn coeffs(&self) -> &[Ratio<T>] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Ratio<T> {
        self.coeffs.last().cloned().unwrap_or_else(Ratio::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = Ratio::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Ratio::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &Ratio<T>) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(Ratio::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        self.scale(&(Ratio::one() / l))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Ratio::from_integer(T::from_usize(i).unwrap()))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.coeffs.len() - 1;
        let lead = divisor.lead();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Ratio::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = &rem[i + j] - &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors.
    pub fn squarefree(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn eval(&self, x: &Ratio<T>) -> Ratio<T> {
        self.coeffs
            .iter()
            .rev()
            .fold(Ratio::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_quad(&self, x: &Quad<T>) -> Quad<T> {
        self.coeffs
            .iter()
            .rev()
            .fold(Quad::zero(), |acc, c| acc * x + Quad::rational(c.clone()))
    }

    fn sign_at(&self, at: &Bound<T>) -> Ordering {
        match at {
            Bound::At(x) => sign(&self.eval(x)),
            Bound::PosInf => sign(&self.lead()),
            Bound::NegInf => {
                let s = sign(&self.lead());
                if self.degree().unwrap_or(0) % 2 == 1 {
                    s.reverse()
                } else {
                    s
                }
            }
        }
    }

    /// Canonical Sturm chain of the squarefree part.
    pub fn sturm_chain(&self) -> Vec<Self> {
        let p = self.squarefree();
        let mut chain = vec![p.clone(), p.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].div_rem(&chain[n - 1]).1;
            if r.is_zero() {
                break;
            }
            chain.push(r.neg());
        }
        chain
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count_real_roots(&self, lo: &Bound<T>, hi: &Bound<T>) -> Result<usize, ExactError> {
        if self.is_zero() {
            return Err(ExactError::ZeroPolynomial);
        }
        if self.degree() == Some(0) {
            return Ok(0);
        }
        let chain = self.sturm_chain();
        let changes = |at: &Bound<T>| {
            let signs: Vec<Ordering> = chain
                .iter()
                .map(|p| p.sign_at(at))
                .filter(|s| *s != Ordering::Equal)
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        let (a, b) = (changes(lo), changes(hi));
        Ok(a.saturating_sub(b))
    }

    /// Integer-coefficient multiple with content 1.
    fn primitive_integer_coeffs(&self) -> Vec<T> {
        let lcm = self
            .coeffs
            .iter()
            .fold(T::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<T> = self
            .coeffs
            .iter()
            .map(|c| (c * Ratio::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(T::zero(), |acc, c| acc.gcd(c));
        ints.into_iter().map(|c| c / g.clone()).collect()
    }

    /// All distinct rational roots, ascending.
    pub fn rational_roots(&self) -> Vec<Ratio<T>> {
        if self.degree().unwrap_or(0) == 0 {
            return vec![];
        }
        let mut roots = Vec::new();
        let mut p = self.squarefree();
        if p.coeffs[0].is_zero() {
            roots.push(Ratio::zero());
            p = p.div_rem(&Self::var()).0;
        }
        if p.degree().unwrap_or(0) > 0 {
            let ints = p.primitive_integer_coeffs();
            let c0 = ints[0].abs();
            let cn = ints.last().unwrap().abs();
            for num in divisors(&c0) {
                for den in divisors(&cn) {
                    if !num.gcd(&den).is_one() {
                        continue;
                    }
                    for cand in [
                        Ratio::new(num.clone(), den.clone()),
                        Ratio::new(-num.clone(), den.clone()),
                    ] {
                        if p.eval(&cand).is_zero() {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots.dedup();
        roots
    }

    /// Divides out every rational root, returning the cofactor.
    pub fn strip_rational_roots(&self) -> Self {
        let mut p = self.squarefree();
        for r in self.rational_roots() {
            p = p.div_rem(&Self::linear_root(&r)).0;
        }
        p.monic()
    }

    /// Roots of a degree-2 polynomial, in the quadratic field they generate.
    pub fn quadratic_roots(&self) -> Option<Vec<Quad<T>>> {
        if self.degree() != Some(2) {
            return None;
        }
        let m = self.monic();
        let b = &m.coeffs[1];
        let c = &m.coeffs[0];
        let two = Ratio::from_integer(T::from_u8(2).unwrap());
        let four = &two * &two;
        let disc = b * b - c * &four;
        // (-b +- sqrt(disc)) / 2 with disc = num/den, sqrt(disc) = sqrt(num*den)/den
        let nd = disc.numer().clone() * disc.denom().clone();
        let (square, free) = squarefree_split(&nd);
        let base = -b / &two;
        if free.is_zero() {
            return Some(vec![Quad::rational(base)]);
        }
        let half = Ratio::new(square, disc.denom().clone()) / &two;
        let plus = Quad::new(base.clone(), half.clone(), free.clone());
        let minus = Quad::new(base, -half, free);
        let mut v = vec![minus, plus];
        v.sort();
        v.dedup();
        Some(v)
    }

    /// Pretty form in the variable `u`, highest degree first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { "-" } else { "+" });
            }
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                out.push_str(&mag.to_string());
            }
            match i {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{i}")),
            }
        }
        out
    }
}

impl<T: Int> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("u"))
    }
}

fn sign<T: Int>(q: &Ratio<T>) -> Ordering {
    if q.is_positive() {
        Ordering::Greater
    } else if q.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

fn divisors<T: Int>(n: &T) -> Vec<T> {
    if n.is_zero() {
        return vec![T::one()];
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = T::one();
    while d.clone() * d.clone() <= *n {
        if n.is_multiple_of(&d) {
            let other = n.clone() / d.clone();
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d = d + T::one();
    }
    small.extend(large.into_iter().rev());
    small
}
