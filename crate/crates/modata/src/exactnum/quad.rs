use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use super::{rational_sqrt, squarefree_split, ExactError, Int};

/// An element `rat + surd * sqrt(disc)` of a quadratic field.
///
/// `disc` is squarefree and never 0 or 1; it is `None` exactly when
/// `surd` is zero, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Quad<T: Int> {
    rat: Ratio<T>,
    surd: Ratio<T>,
    disc: Option<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl<T: Int> Quad<T> {
    pub fn zero() -> Self {
        Self::rational(Ratio::zero())
    }

    pub fn one() -> Self {
        Self::rational(Ratio::one())
    }

    pub fn rational(q: Ratio<T>) -> Self {
        Quad {
            rat: q,
            surd: Ratio::zero(),
            disc: None,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(Ratio::from_integer(
            T::from_i64(n).expect("integer fits backing type"),
        ))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        let t = |x| T::from_i64(x).expect("integer fits backing type");
        Self::rational(Ratio::new(t(n), t(d)))
    }

    /// `rat + surd * sqrt(d)` for an arbitrary integer `d`; square factors of
    /// `d` are pulled into `surd`.
    pub fn new(rat: Ratio<T>, surd: Ratio<T>, d: T) -> Self {
        let (square, free) = squarefree_split(&d);
        if free.is_zero() {
            return Self::rational(rat);
        }
        let surd = surd * Ratio::from_integer(square);
        if free.is_one() {
            return Self::rational(rat + surd);
        }
        if surd.is_zero() {
            return Self::rational(rat);
        }
        Quad {
            rat,
            surd,
            disc: Some(free),
        }
    }

    /// `sqrt(d)` itself.
    pub fn sqrt_of(d: T) -> Self {
        Self::new(Ratio::zero(), Ratio::one(), d)
    }

    pub fn rat(&self) -> &Ratio<T> {
        &self.rat
    }

    pub fn surd(&self) -> &Ratio<T> {
        &self.surd
    }

    pub fn disc(&self) -> Option<&T> {
        self.disc.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.surd.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rat.is_one() && self.surd.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.disc.is_none()
    }

    pub fn as_rational(&self) -> Option<&Ratio<T>> {
        self.is_rational().then_some(&self.rat)
    }

    pub fn is_real(&self) -> bool {
        match &self.disc {
            None => true,
            Some(d) => d.is_positive(),
        }
    }

    fn common_disc(&self, other: &Self) -> Result<Option<T>, ExactError> {
        match (&self.disc, &other.disc) {
            (None, None) => Ok(None),
            (Some(d), None) | (None, Some(d)) => Ok(Some(d.clone())),
            (Some(a), Some(b)) if a == b => Ok(Some(a.clone())),
            (Some(a), Some(b)) => Err(ExactError::DiscMismatch {
                left: a.to_string(),
                right: b.to_string(),
            }),
        }
    }

    fn build(rat: Ratio<T>, surd: Ratio<T>, disc: Option<T>) -> Self {
        match disc {
            Some(d) if !surd.is_zero() => Quad {
                rat,
                surd,
                disc: Some(d),
            },
            _ => Self::rational(rat),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        let d = self.common_disc(other)?;
        Ok(Self::build(
            &self.rat + &other.rat,
            &self.surd + &other.surd,
            d,
        ))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        let d = self.common_disc(other)?;
        Ok(Self::build(
            &self.rat - &other.rat,
            &self.surd - &other.surd,
            d,
        ))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        let d = self.common_disc(other)?;
        let dr = d
            .as_ref()
            .map(|x| Ratio::from_integer(x.clone()))
            .unwrap_or_else(Ratio::zero);
        let rat = &self.rat * &other.rat + &self.surd * &other.surd * dr;
        let surd = &self.rat * &other.surd + &self.surd * &other.rat;
        Ok(Self::build(rat, surd, d))
    }

    pub fn try_recip(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let n = self.field_norm();
        Ok(Self::build(
            &self.rat / &n,
            -(&self.surd / &n),
            self.disc.clone(),
        ))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ExactError> {
        self.common_disc(other)?;
        self.try_mul(&other.try_recip()?)
    }

    /// `a - b sqrt(d)`.
    pub fn galois_conj(&self) -> Self {
        Self::build(self.rat.clone(), -self.surd.clone(), self.disc.clone())
    }

    /// Complex conjugation: identity on real fields.
    pub fn conj(&self) -> Self {
        if self.is_real() {
            self.clone()
        } else {
            self.galois_conj()
        }
    }

    /// `x * conj(x)`.
    pub fn abs_squared(&self) -> Self {
        self * &self.conj()
    }

    /// `a^2 - d b^2`.
    pub fn field_norm(&self) -> Ratio<T> {
        let sq = &self.rat * &self.rat;
        match &self.disc {
            None => sq,
            Some(d) => sq - &self.surd * &self.surd * Ratio::from_integer(d.clone()),
        }
    }

    /// `2a`, the field trace.
    pub fn field_trace(&self) -> Ratio<T> {
        &self.rat + &self.rat
    }

    pub fn is_rational_integer(&self) -> bool {
        self.is_rational() && self.rat.is_integer()
    }

    pub fn is_algebraic_integer(&self) -> bool {
        if self.is_rational() {
            return self.rat.is_integer();
        }
        self.field_trace().is_integer() && self.field_norm().is_integer()
    }

    /// Sign of a real element; `None` for non-real values.
    pub fn real_sign(&self) -> Option<Ordering> {
        if !self.is_real() {
            return None;
        }
        let sa = sign_of(&self.rat);
        let sb = sign_of(&self.surd);
        if sb == Ordering::Equal {
            return Some(sa);
        }
        if sa == Ordering::Equal || sa == sb {
            return Some(sb);
        }
        let d = Ratio::from_integer(self.disc.clone().unwrap());
        let lhs = &self.rat * &self.rat;
        let rhs = &self.surd * &self.surd * d;
        Some(if lhs > rhs { sa } else { sb })
    }

    pub fn is_positive_real(&self) -> bool {
        self.real_sign() == Some(Ordering::Greater)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Renders with `sqrt(d)` written out, for diagnostics.
    pub fn pretty(&self) -> String {
        match &self.disc {
            None => self.rat.to_string(),
            Some(d) => {
                let r = format!("sqrt({d})");
                render(&self.rat, &self.surd, &r)
            }
        }
    }
}

fn sign_of<T: Int>(q: &Ratio<T>) -> Ordering {
    if q.is_positive() {
        Ordering::Greater
    } else if q.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

/// Field arithmetic with the error cases surfaced.
pub fn arith<T: Int>(x: &Quad<T>, y: &Quad<T>, op: ArithOp) -> Result<Quad<T>, ExactError> {
    match op {
        ArithOp::Add => x.try_add(y),
        ArithOp::Sub => x.try_sub(y),
        ArithOp::Mul => x.try_mul(y),
        ArithOp::Div => x.try_div(y),
    }
}

/// Positive square root of `q` inside `Q(sqrt(disc))`, if it lies there.
pub fn sqrt_in_field<T: Int>(q: &Ratio<T>, disc: Option<&T>) -> Option<Quad<T>> {
    if q.is_zero() {
        return Some(Quad::zero());
    }
    if let Some(r) = rational_sqrt(q) {
        return Some(Quad::rational(r));
    }
    let d = disc?;
    let (_, free) = squarefree_split(d);
    if free.is_zero() || free.is_one() {
        return None;
    }
    let ratio = q / Ratio::from_integer(free.clone());
    let c = rational_sqrt(&ratio)?;
    Some(Quad::new(Ratio::zero(), c, free))
}

fn render<T: Int>(a: &Ratio<T>, b: &Ratio<T>, sym: &str) -> String {
    let mut out = String::new();
    if !a.is_zero() {
        out.push_str(&a.to_string());
    }
    let neg = b.is_negative();
    let mag = b.abs();
    if neg {
        out.push('-');
    } else if !out.is_empty() {
        out.push('+');
    }
    if mag.is_one() {
        out.push_str(sym);
    } else {
        out.push_str(&format!("{mag}*{sym}"));
    }
    out
}

/// The file-format spelling: `a`, `a+b*r`, `b*r`, `-r`, ...
impl<T: Int> fmt::Display for Quad<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.disc.is_none() {
            write!(f, "{}", self.rat)
        } else {
            write!(f, "{}", render(&self.rat, &self.surd, "r"))
        }
    }
}

impl<T: Int> PartialOrd for Quad<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Real fields: numeric order. Imaginary fields: lexicographic on the
/// rational and surd parts. Values from unrelated fields fall back to
/// comparing discriminants first.
impl<T: Int> Ord for Quad<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.common_disc(other) {
            Ok(Some(d)) if d.is_negative() => self
                .rat
                .cmp(&other.rat)
                .then_with(|| self.surd.cmp(&other.surd)),
            Ok(_) => (self - other).real_sign().unwrap(),
            Err(_) => self
                .disc
                .cmp(&other.disc)
                .then_with(|| self.rat.cmp(&other.rat))
                .then_with(|| self.surd.cmp(&other.surd)),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl<'a, T: Int> $trait<&'a Quad<T>> for &'a Quad<T> {
            type Output = Quad<T>;
            fn $method(self, rhs: &'a Quad<T>) -> Quad<T> {
                match self.$try(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!(
                        "{e}: {} {} {}",
                        self.pretty(),
                        stringify!($method),
                        rhs.pretty()
                    ),
                }
            }
        }
        impl<T: Int> $trait<Quad<T>> for Quad<T> {
            type Output = Quad<T>;
            fn $method(self, rhs: Quad<T>) -> Quad<T> {
                (&self).$method(&rhs)
            }
        }
        impl<'a, T: Int> $trait<&'a Quad<T>> for Quad<T> {
            type Output = Quad<T>;
            fn $method(self, rhs: &'a Quad<T>) -> Quad<T> {
                (&self).$method(rhs)
            }
        }
        impl<'a, T: Int> $trait<Quad<T>> for &'a Quad<T> {
            type Output = Quad<T>;
            fn $method(self, rhs: Quad<T>) -> Quad<T> {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl<T: Int> Neg for Quad<T> {
    type Output = Quad<T>;
    fn neg(self) -> Quad<T> {
        Quad::build(-self.rat, -self.surd, self.disc)
    }
}

impl<T: Int> Neg for &Quad<T> {
    type Output = Quad<T>;
    fn neg(self) -> Quad<T> {
        -self.clone()
    }
}

impl<T: Int> From<Ratio<T>> for Quad<T> {
    fn from(q: Ratio<T>) -> Self {
        Quad::rational(q)
    }
}

impl<T: Int> std::iter::Sum for Quad<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Quad::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type Q = Quad<BigInt>;

    fn q(n: i64, d: i64) -> Ratio<BigInt> {
        Ratio::new(BigInt::from(n), BigInt::from(d))
    }

    fn surd(a: Ratio<BigInt>, b: Ratio<BigInt>, d: i64) -> Q {
        Q::new(a, b, BigInt::from(d))
    }

    #[test]
    fn norm_of_one_plus_root_two() {
        let x = surd(q(1, 1), q(1, 1), 2);
        let y = surd(q(1, 1), q(-1, 1), 2);
        assert_eq!(&x * &y, Q::from_int(-1));
    }

    #[test]
    fn cube_root_of_unity_squares_to_its_conjugate() {
        let z = surd(q(-1, 2), q(1, 2), -3);
        assert_eq!(&z * &z, z.conj());
        assert_eq!(&z * &z, surd(q(-1, 2), q(-1, 2), -3));
        assert_eq!(z.pow(3), Q::one());
    }

    #[test]
    fn conjugate_pair_sums_to_rational() {
        let a = surd(q(-3, 4), q(1, 4), 17);
        let b = surd(q(-3, 4), q(-1, 4), 17);
        let s = &a + &b;
        assert_eq!(s, Q::from_frac(-3, 2));
        assert!(s.disc().is_none());
    }

    #[test]
    fn mismatched_fields_and_zero_division() {
        let a = Q::sqrt_of(BigInt::from(2));
        let b = Q::sqrt_of(BigInt::from(3));
        assert!(matches!(
            arith(&a, &b, ArithOp::Add),
            Err(ExactError::DiscMismatch { .. })
        ));
        assert_eq!(
            arith(&a, &Q::zero(), ArithOp::Div),
            Err(ExactError::DivisionByZero)
        );
        // a rational operand combines with anything
        assert!(arith(&a, &Q::from_int(5), ArithOp::Mul).is_ok());
    }

    #[test]
    fn abs_squared_examples() {
        assert_eq!(Q::sqrt_of(BigInt::from(2)).abs_squared(), Q::from_int(2));
        let z = surd(q(-1, 2), q(1, 2), -3);
        assert_eq!(z.abs_squared(), Q::one());
        // alpha = (-1 + i sqrt(1 + 2k)) / 2 at k = 1
        let alpha = surd(q(-1, 2), q(1, 2), -(1 + 2));
        assert_eq!(alpha.abs_squared(), Q::one());
    }

    #[test]
    fn integrality_predicates() {
        assert!(Q::from_int(4).is_rational_integer());
        assert!(!Q::from_frac(3, 2).is_rational_integer());
        let two_over_root3 = surd(q(0, 1), q(2, 3), 3);
        assert!(!two_over_root3.is_rational_integer());
        assert!(!two_over_root3.is_algebraic_integer());

        assert!(surd(q(-1, 2), q(1, 2), -3).is_algebraic_integer());
        assert!(Q::sqrt_of(BigInt::from(2)).is_algebraic_integer());
        assert!(!surd(q(-3, 4), q(1, 4), 17).is_algebraic_integer());
        // golden ratio: half-integer parts are fine when d = 1 mod 4
        assert!(surd(q(1, 2), q(1, 2), 5).is_algebraic_integer());
    }

    #[test]
    fn sqrt_in_field_examples() {
        let four = q(4, 1);
        assert_eq!(
            sqrt_in_field(&four, Some(&BigInt::from(7))),
            Some(Q::from_int(2))
        );
        assert_eq!(sqrt_in_field(&four, None), Some(Q::from_int(2)));
        assert_eq!(
            sqrt_in_field(&q(2, 1), Some(&BigInt::from(2))),
            Some(Q::sqrt_of(BigInt::from(2)))
        );
        assert_eq!(sqrt_in_field(&q(3, 1), Some(&BigInt::from(2))), None);
        // 12 = 4 * 3
        assert_eq!(
            sqrt_in_field(&q(12, 1), Some(&BigInt::from(3))),
            Some(surd(q(0, 1), q(2, 1), 3))
        );
        assert_eq!(sqrt_in_field(&q(12, 1), None), None);
    }

    #[test]
    fn construction_normalises_discriminant() {
        assert_eq!(Q::sqrt_of(BigInt::from(8)), surd(q(0, 1), q(2, 1), 2));
        assert_eq!(Q::sqrt_of(BigInt::from(9)), Q::from_int(3));
        assert_eq!(Q::sqrt_of(BigInt::from(0)), Q::zero());
        assert_eq!(Q::sqrt_of(BigInt::from(-4)).disc(), Some(&BigInt::from(-1)));
    }

    #[test]
    fn order_on_real_and_imaginary_fields() {
        let r2 = Q::sqrt_of(BigInt::from(2));
        assert!(r2 > Q::from_frac(141, 100));
        assert!(r2 < Q::from_frac(142, 100));
        assert!(-&r2 < Q::zero());
        let x = surd(q(1, 1), q(-1, 1), 2);
        assert_eq!(x.real_sign(), Some(Ordering::Less));
        let z = surd(q(-1, 2), q(1, 2), -3);
        assert!(z > z.conj());
        assert!(Q::zero() > z);
    }

    #[test]
    fn display_uses_file_grammar() {
        assert_eq!(surd(q(-3, 4), q(1, 4), 17).to_string(), "-3/4+1/4*r");
        assert_eq!(surd(q(0, 1), q(-1, 1), 2).to_string(), "-r");
        assert_eq!(surd(q(2, 1), q(-3, 1), 2).to_string(), "2-3*r");
        assert_eq!(Q::from_frac(-5, 2).to_string(), "-5/2");
    }
}
