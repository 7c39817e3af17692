//! The canonical integer part `Z = ℤ + {series with negative support}` of
//! `k((G))`, with an exact floor.
//!
//! `Z` is a discretely ordered subring: a nonzero element either has a
//! negative-exponent term, and is then infinite, or it is a nonzero rational
//! integer. Its finite elements are exactly the standard integers.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;

use crate::error::{Error, Result};
use crate::group::{ArchClass, ChainOrder, GroupElement, GroupPresentation};
use crate::sample::Sampler;
use crate::scalar::{FieldClass, Scalar};
use crate::series::Series;
use crate::valuation::{classify, decompose_additive, ValuationClass};

/// An element of the canonical integer part.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IPElement(Series);

impl IPElement {
    pub fn new(carrier: Series) -> Result<Self> {
        if is_ip_member(&carrier) {
            Ok(IPElement(carrier))
        } else {
            Err(Error::NotInIntegerPart(carrier.to_string()))
        }
    }

    pub fn carrier(&self) -> &Series {
        &self.0
    }

    pub fn into_carrier(self) -> Series {
        self.0
    }
}

impl fmt::Display for IPElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Every nonconstant term has a negative exponent and the constant term is
/// a rational integer.
pub fn is_ip_member(x: &Series) -> bool {
    x.terms().iter().all(|(e, c)| {
        if e.is_zero() {
            c.as_integer().is_some()
        } else {
            e.is_negative()
        }
    })
}

/// The unique `z ∈ Z` with `z <= x < z + 1`.
pub fn floor(x: &Series) -> IPElement {
    let parts = decompose_additive(x);
    let mut n = parts.constant_part.floor();
    let exact = Scalar::from_bigint(n.clone()) == parts.constant_part;
    if exact && parts.infinitesimal_part.is_negative() {
        n -= 1;
    }
    IPElement(parts.infinite_part.add_integer(&n))
}

/// Outcome of one property family in [`ip_closure_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyResult {
    pub name: &'static str,
    pub checked: usize,
    pub counterexample: Option<String>,
}

impl FamilyResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IpCheckReport {
    pub families: Vec<FamilyResult>,
}

impl IpCheckReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(FamilyResult::passed)
    }
}

impl fmt::Display for IpCheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for fam in &self.families {
            match &fam.counterexample {
                None => writeln!(f, "PASS {} ({} checks)", fam.name, fam.checked)?,
                Some(c) => writeln!(f, "FAIL {}: {}", fam.name, c)?,
            }
        }
        Ok(())
    }
}

struct Family {
    name: &'static str,
    checked: usize,
    counterexample: Option<String>,
}

impl Family {
    fn new(name: &'static str) -> Self {
        Family {
            name,
            checked: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(witness());
        }
    }

    fn finish(self) -> FamilyResult {
        FamilyResult {
            name: self.name,
            checked: self.checked,
            counterexample: self.counterexample,
        }
    }
}

/// Randomized check of the integer-part properties over the sampler's
/// carriers: ring closure, the floor contract, `R_v ∩ Z = ℤ`, and
/// discreteness. Deterministic in `seed`.
pub fn ip_closure_check_with(sampler: &mut Sampler, sample_count: usize) -> IpCheckReport {
    let mut closure = Family::new("closure under +, -, *");
    let mut floor_contract = Family::new("floor contract z <= x < z+1");
    let mut finite_are_integers = Family::new("finite elements of Z are standard integers");
    let mut discrete = Family::new("no nonzero element of Z has absolute value below 1");

    let one = Series::one(sampler.field(), sampler.group().clone());
    for _ in 0..sample_count {
        let x = sampler.ip_series();
        let y = sampler.ip_series();
        for (op, r) in [
            ("+", x.try_add(&y)),
            ("-", x.try_sub(&y)),
            ("*", x.try_mul(&y)),
        ] {
            let r = r.expect("same carriers");
            closure.record(is_ip_member(&r), || format!("({x}) {op} ({y}) = {r}"));
        }

        let r = sampler.series();
        let z = floor(&r);
        let z1 = z.carrier().add_integer(&BigInt::one());
        let ok = z.carrier() <= &r && r < z1 && is_ip_member(z.carrier());
        floor_contract.record(ok, || format!("floor({r}) = {z}"));

        if classify(&x) != ValuationClass::Infinite {
            let c = x.coeff(&GroupElement::zero(x.group().clone()));
            let ok = c.as_integer().is_some() && x.terms().len() <= 1;
            finite_are_integers.record(ok, || format!("{x} is finite but not a standard integer"));
        }

        let below_one = !x.is_zero() && {
            let abs = if x.is_positive() { x.clone() } else { x.neg() };
            abs < one
        };
        discrete.record(!below_one, || {
            format!("{x} is a nonzero element of absolute value below 1")
        });
    }

    // A few crafted samples on the floor boundary: integer constant with a
    // negative infinitesimal tail.
    if let Some(pos) = sampler.positive_group_element() {
        for _ in 0..sample_count.min(50) {
            let n = sampler.rng().gen_range(-5i64..=5);
            let tail = Series::monomial(sampler.field(), pos.clone(), Scalar::from_int(-1))
                .expect("1 lies in every field");
            let r = tail.add_integer(&BigInt::from(n));
            let z = floor(&r);
            let ok = z.carrier().as_integer() == Some(BigInt::from(n - 1));
            floor_contract.record(ok, || format!("floor({r}) = {z}"));
        }
    }

    IpCheckReport {
        families: vec![
            closure.finish(),
            floor_contract.finish(),
            finite_are_integers.finish(),
            discrete.finish(),
        ],
    }
}

/// [`ip_closure_check_with`] over `ℚ((G))` with `G = HahnSum(Rationals; Rat)`.
pub fn ip_closure_check(sample_count: usize, seed: u64) -> Result<IpCheckReport> {
    if sample_count == 0 {
        return Err(Error::InvalidArgument("sample count must be positive".into()));
    }
    let group = Arc::new(GroupPresentation::uniform(ChainOrder::Rationals, ArchClass::Rat));
    let mut sampler = Sampler::new(seed, FieldClass::Rat, group);
    Ok(ip_closure_check_with(&mut sampler, sample_count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_series, SessionContext};

    fn s(src: &str) -> Series {
        let ctx = SessionContext::parse_carriers("field Rat; group HahnSum(Finite(1); Rat)").unwrap();
        parse_series(src, &ctx).unwrap()
    }

    #[test]
    fn floor_examples() {
        assert_eq!(floor(&s("3*t^{-1} + 1/2")).carrier(), &s("3*t^{-1}"));
        assert_eq!(floor(&s("5")).carrier(), &s("5"));
        assert_eq!(floor(&s("1 - t")).carrier(), &s("0"));
        assert_eq!(floor(&s("-t")).carrier(), &s("-1"));
        assert_eq!(floor(&s("t^{-1} - 7/2 + t")).carrier(), &s("t^{-1} - 4"));
    }

    #[test]
    fn membership_examples() {
        assert!(is_ip_member(&s("3*t^{-1} + 2")));
        assert!(!is_ip_member(&s("1/2")));
        assert!(!is_ip_member(&s("t")));
        assert!(!is_ip_member(&s("t^{-1} + 1/2")));
        assert!(IPElement::new(s("t")).is_err());
    }

    #[test]
    fn closure_instance_and_integers() {
        let x = s("t^{-1}");
        assert_eq!(x.try_mul(&x).unwrap(), s("t^{-2}"));
        assert_eq!(classify(&s("3*t^{-1}")), ValuationClass::Infinite);
        let four = s("4");
        assert_eq!(classify(&four), ValuationClass::FiniteUnit);
        assert_eq!(four.as_integer(), Some(BigInt::from(4)));
    }

    #[test]
    fn randomized_suite_passes() {
        let report = ip_closure_check(300, 42).unwrap();
        assert!(report.passed(), "{report}");
        assert!(ip_closure_check(0, 1).is_err());
    }

    #[test]
    fn quadratic_constants_floor_to_integers() {
        let ctx = SessionContext::parse_carriers("field Root2; group HahnSum(Finite(1); Rat)").unwrap();
        let x = parse_series("t^{-1} + r2 - t", &ctx).unwrap();
        let z = floor(&x);
        assert_eq!(z.carrier(), &parse_series("t^{-1} + 1", &ctx).unwrap());
    }
}
