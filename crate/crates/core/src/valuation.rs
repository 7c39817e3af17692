//! The natural valuation toolkit on `k((G))`: classification against the
//! valuation ring `R_v`, its ideal `μ_v`, the positive units and the infinite
//! elements; the residue map; and the additive and multiplicative splittings
//! into canonical complements.
//!
//! The complements are the canonical monomial choices available in a power
//! series field: `A` is the span of negative-exponent monomials, `A′` the
//! constants, `B` the monomials `t^g` and `B′` the positive constants.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::scalar::Scalar;
use crate::series::Series;

/// Where a series sits relative to `R_v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValuationClass {
    Zero,
    /// Nonzero element of `μ_v`: `v(x) > 0`.
    Infinitesimal,
    /// Unit of `R_v`: `v(x) = 0`.
    FiniteUnit,
    /// Element of `P_K`: `v(x) < 0`.
    Infinite,
}

impl fmt::Display for ValuationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ValuationClass::Zero => "Zero",
            ValuationClass::Infinitesimal => "Infinitesimal",
            ValuationClass::FiniteUnit => "FiniteUnit",
            ValuationClass::Infinite => "Infinite",
        })
    }
}

pub fn classify(x: &Series) -> ValuationClass {
    match x.terms().first() {
        None => ValuationClass::Zero,
        Some((e, _)) => match e.signum() {
            Ordering::Greater => ValuationClass::Infinitesimal,
            Ordering::Equal => ValuationClass::FiniteUnit,
            Ordering::Less => ValuationClass::Infinite,
        },
    }
}

/// Image in the residue field `R_v/μ_v`: the constant coefficient.
pub fn residue(x: &Series) -> Result<Scalar> {
    if classify(x) == ValuationClass::Infinite {
        return Err(Error::NotFinite(x.to_string()));
    }
    Ok(x.coeff(&GroupElement::zero(x.group().clone())))
}

/// `x = a + c + ε` with `a ∈ A` (negative support), `c ∈ k`, `ε ∈ μ_v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditiveDecomposition {
    pub infinite_part: Series,
    pub constant_part: Scalar,
    pub infinitesimal_part: Series,
}

impl AdditiveDecomposition {
    pub fn recompose(&self) -> Series {
        let c = Series::constant(
            self.infinite_part.field(),
            self.infinite_part.group().clone(),
            self.constant_part.clone(),
        )
        .expect("constant part comes from the same field");
        self.infinite_part
            .try_add(&c)
            .and_then(|s| s.try_add(&self.infinitesimal_part))
            .expect("parts share carriers")
    }
}

pub fn decompose_additive(x: &Series) -> AdditiveDecomposition {
    let mut infinite = Vec::new();
    let mut constant = Scalar::zero();
    let mut infinitesimal = Vec::new();
    for (e, c) in x.terms() {
        match e.signum() {
            Ordering::Less => infinite.push((e.clone(), c.clone())),
            Ordering::Equal => constant = c.clone(),
            Ordering::Greater => infinitesimal.push((e.clone(), c.clone())),
        }
    }
    let build = |terms: Vec<(GroupElement, Scalar)>| {
        Series::from_terms(x.field(), x.group().clone(), terms).expect("terms come from x")
    };
    AdditiveDecomposition {
        infinite_part: build(infinite),
        constant_part: constant,
        infinitesimal_part: build(infinitesimal),
    }
}

/// `x = t^{g} · u · (1 + ε)` with `u > 0` constant and `ε ∈ μ_v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicativeDecomposition {
    pub exponent: GroupElement,
    pub unit_coeff: Scalar,
    pub one_unit: Series,
}

impl MultiplicativeDecomposition {
    pub fn recompose(&self) -> Series {
        self.one_unit
            .shift(&self.exponent)
            .and_then(|s| s.scale(&self.unit_coeff))
            .expect("parts share carriers")
    }
}

/// Factors out the leading monomial. Division by a monomial is exact, so the
/// 1-unit is always a finite series and recomposition is exact.
pub fn decompose_multiplicative(x: &Series) -> Result<MultiplicativeDecomposition> {
    if !x.is_positive() {
        return Err(Error::NonPositive);
    }
    let (g, c) = x.leading()?;
    let one_unit = x.shift(&g.neg())?.scale(&c.inv()?)?;
    Ok(MultiplicativeDecomposition {
        exponent: g.clone(),
        unit_coeff: c.clone(),
        one_unit,
    })
}

/// Membership in the 1-units `1 + μ_v`.
pub fn is_one_unit(x: &Series) -> bool {
    let one = Series::one(x.field(), x.group().clone());
    x.try_sub(&one)
        .map(|d| matches!(classify(&d), ValuationClass::Zero | ValuationClass::Infinitesimal))
        .unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_series, SessionContext};

    fn ctx() -> SessionContext {
        SessionContext::parse_carriers("field Rat; group HahnSum(Finite(1); Rat)").unwrap()
    }

    fn s(src: &str) -> Series {
        parse_series(src, &ctx()).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&s("t")), ValuationClass::Infinitesimal);
        assert_eq!(classify(&s("7/2")), ValuationClass::FiniteUnit);
        assert_eq!(classify(&s("t^{-1} + 5")), ValuationClass::Infinite);
        assert_eq!(classify(&s("0")), ValuationClass::Zero);
    }

    #[test]
    fn residue_examples() {
        assert_eq!(residue(&s("3 + t")).unwrap(), Scalar::from_int(3));
        assert_eq!(residue(&s("t")).unwrap(), Scalar::zero());
        let x = s("1 + t");
        let y = s("2 - t");
        let xy = x.try_mul(&y).unwrap();
        assert_eq!(residue(&xy).unwrap(), Scalar::from_int(2));
        assert_eq!(
            residue(&xy).unwrap(),
            &residue(&x).unwrap() * &residue(&y).unwrap()
        );
        assert!(matches!(residue(&s("t^{-1}")), Err(Error::NotFinite(_))));
    }

    #[test]
    fn additive_examples() {
        let d = decompose_additive(&s("3*t^{-1/2} + 2 - 5*t^{2/3}"));
        assert_eq!(d.infinite_part, s("3*t^{-1/2}"));
        assert_eq!(d.constant_part, Scalar::from_int(2));
        assert_eq!(d.infinitesimal_part, s("-5*t^{2/3}"));
        assert_eq!(d.recompose(), s("3*t^{-1/2} + 2 - 5*t^{2/3}"));

        let d = decompose_additive(&s("0"));
        assert!(d.infinite_part.is_zero() && d.constant_part.is_zero());
        assert!(d.infinitesimal_part.is_zero());

        let d = decompose_additive(&s("t^{-1}"));
        assert_eq!(d.infinite_part, s("t^{-1}"));
        assert!(d.constant_part.is_zero() && d.infinitesimal_part.is_zero());
    }

    #[test]
    fn multiplicative_examples() {
        let d = decompose_multiplicative(&s("2*t^{-1} + 6")).unwrap();
        assert_eq!(d.exponent, s("t^{-1}").leading().unwrap().0.clone());
        assert_eq!(d.unit_coeff, Scalar::from_int(2));
        assert_eq!(d.one_unit, s("1 + 3*t"));
        assert!(is_one_unit(&d.one_unit));
        assert_eq!(d.recompose(), s("2*t^{-1} + 6"));

        let d = decompose_multiplicative(&s("5")).unwrap();
        assert!(d.exponent.is_zero());
        assert_eq!(d.unit_coeff, Scalar::from_int(5));
        assert!(d.one_unit.is_one());

        let d = decompose_multiplicative(&s("t^{3}")).unwrap();
        assert_eq!(d.exponent, s("t^{3}").leading().unwrap().0.clone());
        assert!(d.unit_coeff.is_one() && d.one_unit.is_one());

        assert_eq!(decompose_multiplicative(&s("-t")), Err(Error::NonPositive));
        assert_eq!(decompose_multiplicative(&s("0")), Err(Error::NonPositive));
    }
}
