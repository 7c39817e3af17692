//! Exact arithmetic in the coefficient field `k`, either `ℚ` or `ℚ(√2)`.
//!
//! Every value is stored as a pair of rationals `(a, b)` denoting `a + b√2`.
//! Over [`FieldClass::Rat`] the `b` part is always zero.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The coefficient (and residue) field of a series field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldClass {
    /// The rationals.
    Rat,
    /// The quadratic extension `ℚ(√2)`.
    Root2,
}

impl FieldClass {
    pub fn contains(self, x: &Scalar) -> bool {
        match self {
            FieldClass::Rat => x.b.is_zero(),
            FieldClass::Root2 => true,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FieldClass::Rat => "Rat",
            FieldClass::Root2 => "Root2",
        }
    }
}

impl fmt::Display for FieldClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An exact element `a + b√2` of `ℚ(√2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
}

pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn sign_of(q: &BigRational) -> Ordering {
    q.cmp(&BigRational::zero())
}

impl Scalar {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Scalar { a, b }
    }

    pub fn rational(a: BigRational) -> Self {
        Scalar {
            a,
            b: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::rational(BigRational::from_integer(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::rational(rat(n, d))
    }

    /// `√2` itself.
    pub fn sqrt2() -> Self {
        Scalar {
            a: BigRational::zero(),
            b: BigRational::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// Rational part.
    pub fn a(&self) -> &BigRational {
        &self.a
    }

    /// Coefficient of `√2`.
    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The value as a rational integer, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        (self.b.is_zero() && self.a.is_integer()).then(|| self.a.to_integer())
    }

    /// Sign of the value: `Less` for negative, `Equal` for zero, `Greater` for positive.
    pub fn signum(&self) -> Ordering {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // Opposite signs: |a| vs |b|√2 decides, via a² - 2b², which never vanishes.
        let norm = self.norm();
        if norm.is_positive() {
            sa
        } else {
            sa.reverse()
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    /// Galois conjugate `a - b√2`.
    pub fn conjugate(&self) -> Self {
        Scalar {
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    /// Field norm `a² - 2b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(2.into()) * &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(Scalar {
            a: &self.a / &n,
            b: -&self.b / &n,
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// The unique integer `z` with `z <= self < z + 1`.
    pub fn floor(&self) -> BigInt {
        if self.b.is_zero() {
            return self.a.floor().to_integer();
        }
        // Irrational: bracket √2 between consecutive continued-fraction
        // convergents until the bracket for `a + b√2` has a single floor.
        let (mut p, mut q) = (BigInt::one(), BigInt::one());
        loop {
            let (np, nq): (BigInt, BigInt) = (&p + &q * 2u32, &p + &q);
            let c0 = BigRational::new(p.clone(), q.clone());
            let c1 = BigRational::new(np.clone(), nq.clone());
            let (lo, hi) = if c0 < c1 { (c0, c1) } else { (c1, c0) };
            let (xlo, xhi) = if self.b.is_positive() {
                (&self.a + &self.b * &lo, &self.a + &self.b * &hi)
            } else {
                (&self.a + &self.b * &hi, &self.a + &self.b * &lo)
            };
            let flo = xlo.floor();
            if flo == xhi.floor() {
                return flo.to_integer();
            }
            p = np;
            q = nq;
        }
    }

    /// An exact `n`-th root in `field`, positive, when one exists.
    ///
    /// Rational radicands are tried in `ℚ` first. Over `ℚ(√2)` the root
    /// `y = c + d√2` is located through its norm (an exact rational root of
    /// the radicand's norm) and a rational candidate for `c` recovered from
    /// a bisected approximation of the real root; every candidate is
    /// verified by exact exponentiation.
    pub fn nth_root(&self, n: u32, field: FieldClass) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("root index must be positive".into()));
        }
        if !self.is_positive() {
            return Err(Error::NonPositiveRadicand);
        }
        if n == 1 {
            return Ok(self.clone());
        }
        if self.b.is_zero() {
            if let Some(r) = rational_nth_root(&self.a, n) {
                return Ok(Scalar::rational(r));
            }
        }
        let no_root = || Error::NoExactRoot {
            value: self.to_string(),
            n,
        };
        if field == FieldClass::Rat {
            return Err(no_root());
        }
        quadratic_nth_root(self, n).ok_or_else(no_root)
    }
}

/// Exact rational `n`-th root carrying the sign for odd `n`.
fn rational_nth_root(q: &BigRational, n: u32) -> Option<BigRational> {
    if q.is_negative() {
        if n.is_multiple_of(2) {
            return None;
        }
        return rational_nth_root(&-q, n).map(|r| -r);
    }
    let num = q.numer().nth_root(n);
    let den = q.denom().nth_root(n);
    (num.pow(n) == *q.numer() && den.pow(n) == *q.denom()).then(|| BigRational::new(num, den))
}

/// Simplest rational (least denominator) in the closed interval `[lo, hi]`.
pub(crate) fn simplest_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    debug_assert!(lo <= hi);
    if !lo.is_positive() && !hi.is_negative() {
        return BigRational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    let ceil = lo.ceil();
    if &ceil <= hi {
        return ceil;
    }
    let fl = lo.floor();
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

fn quadratic_nth_root(x: &Scalar, n: u32) -> Option<Scalar> {
    let norm_roots: Vec<BigRational> = match rational_nth_root(&x.norm(), n) {
        Some(r) if n.is_multiple_of(2) => vec![r.clone(), -r],
        Some(r) => vec![r],
        None => return None,
    };
    // Bracket the positive real root by bisection with exact comparisons.
    let mut lo = BigRational::zero();
    let upper = x.a.abs() + x.b.abs() * rat(3, 2);
    let mut hi = if upper > BigRational::one() {
        upper
    } else {
        BigRational::one()
    };
    let half = rat(1, 2);
    let mut iterations = 0u32;
    for precision in [64u32, 128, 256, 512] {
        while iterations < precision {
            let mid = (&lo + &hi) * &half;
            if Scalar::rational(mid.clone()).pow(n) < *x {
                lo = mid;
            } else {
                hi = mid;
            }
            iterations += 1;
        }
        if lo.is_zero() {
            continue;
        }
        for m in &norm_roots {
            // c = (y + m/y) / 2 is monotone on a bracket that avoids √|m|;
            // evaluate at both ends and pad by the bracket width.
            let at = |y: &BigRational| (y + m / y) * &half;
            let (c_lo, c_hi) = {
                let (u, v) = (at(&lo), at(&hi));
                let pad = (&u - &v).abs() + (&hi - &lo);
                if u < v {
                    (u - &pad, v + &pad)
                } else {
                    (v - &pad, u + &pad)
                }
            };
            let c = simplest_between(&c_lo, &c_hi);
            let d_sq = (&c * &c - m) * &half;
            let Some(d) = rational_nth_root(&d_sq, 2) else {
                continue;
            };
            for d in [d.clone(), -d] {
                let y = Scalar::new(c.clone(), d);
                if y.is_positive() && y.pow(n) == *x {
                    return Some(y);
                }
            }
        }
    }
    None
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let two = BigRational::from_integer(2.into());
        Scalar {
            a: &self.a * &rhs.a + two * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    /// `a/b`, `a+b*r2`, `a-b*r2`, or `b*r2` when the rational part vanishes.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write_rational(f, &self.a);
        }
        let mag = self.b.abs();
        if !self.a.is_zero() {
            write_rational(f, &self.a)?;
            f.write_str(if self.b.is_negative() { "-" } else { "+" })?;
        } else if self.b.is_negative() {
            f.write_str("-")?;
        }
        if !mag.is_one() {
            write_rational(f, &mag)?;
            f.write_str("*")?;
        }
        f.write_str("r2")
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d)
    }

    fn quad(a: i64, b: i64) -> Scalar {
        Scalar::new(rat(a, 1), rat(b, 1))
    }

    #[test]
    fn inverse_of_one_plus_root2() {
        assert_eq!(quad(1, 1).inv().unwrap(), quad(-1, 1));
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&q(1, 3) + &q(1, 6), q(1, 2));
        assert_eq!(&quad(1, 1) * &quad(1, -1), Scalar::from_int(-1));
        assert_eq!(Scalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn comparisons() {
        assert_eq!(quad(1, 1).cmp(&q(5, 2)), Ordering::Less);
        assert_eq!(quad(-1, 1).cmp(&Scalar::zero()), Ordering::Greater);
        assert_eq!(quad(3, -2).signum(), Ordering::Greater); // 3 - 2.828...
        assert_eq!(quad(-3, 2).signum(), Ordering::Less);
        let x = quad(7, -5);
        assert_eq!(x.cmp(&x), Ordering::Equal);
    }

    #[test]
    fn floors() {
        assert_eq!(q(7, 2).floor(), BigInt::from(3));
        assert_eq!(q(-1, 2).floor(), BigInt::from(-1));
        assert_eq!(Scalar::sqrt2().floor(), BigInt::from(1));
        assert_eq!(quad(0, -1).floor(), BigInt::from(-2));
        // 17/12 is a convergent just above √2, so 17 - 12√2 is a tiny positive number
        assert_eq!(quad(17, -12).floor(), BigInt::from(0));
        assert_eq!(quad(-17, 12).floor(), BigInt::from(-1));
        assert_eq!(Scalar::from_int(-4).floor(), BigInt::from(-4));
    }

    #[test]
    fn roots() {
        assert_eq!(q(8, 27).nth_root(3, FieldClass::Rat).unwrap(), q(2, 3));
        assert!(matches!(
            Scalar::from_int(2).nth_root(2, FieldClass::Rat),
            Err(Error::NoExactRoot { .. })
        ));
        assert_eq!(
            quad(3, 2).nth_root(2, FieldClass::Root2).unwrap(),
            quad(1, 1)
        );
        assert_eq!(
            Scalar::from_int(2).nth_root(2, FieldClass::Root2).unwrap(),
            Scalar::sqrt2()
        );
        // (1 + √2)^3 = 7 + 5√2
        assert_eq!(
            quad(7, 5).nth_root(3, FieldClass::Root2).unwrap(),
            quad(1, 1)
        );
        // (-1 + √2)^2 = 3 - 2√2, and the positive root is returned
        assert_eq!(
            quad(3, -2).nth_root(2, FieldClass::Root2).unwrap(),
            quad(-1, 1)
        );
        assert!(Scalar::from_int(3).nth_root(2, FieldClass::Root2).is_err());
        assert_eq!(
            Scalar::from_int(-1).nth_root(3, FieldClass::Rat),
            Err(Error::NonPositiveRadicand)
        );
    }

    #[test]
    fn display_forms() {
        assert_eq!(q(-3, 4).to_string(), "-3/4");
        assert_eq!(quad(1, -2).to_string(), "1-2*r2");
        assert_eq!(quad(0, 1).to_string(), "r2");
        assert_eq!(Scalar::new(rat(0, 1), rat(-1, 2)).to_string(), "-1/2*r2");
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(simplest_between(&rat(31, 100), &rat(34, 100)), rat(1, 3));
        assert_eq!(simplest_between(&rat(-7, 2), &rat(-3, 1)), rat(-3, 1));
        assert_eq!(simplest_between(&rat(-1, 2), &rat(1, 2)), rat(0, 1));
    }
}
