//! Finitely supported generalized power series `Σ c_g t^g` in `k((G))`.
//!
//! Only finite supports are values. Elements of `k((G))` with infinite
//! support (inverses, roots) appear as truncations carrying a certified
//! bound on the valuation of their residual.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::group::{ChainPoint, GroupElement, GroupPresentation};
use crate::scalar::{FieldClass, Scalar};

/// `v(x)` for a series: a group element, or `∞` for zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(GroupElement),
    Infinity,
}

impl Valuation {
    pub fn finite(&self) -> Option<&GroupElement> {
        match self {
            Valuation::Finite(g) => Some(g),
            Valuation::Infinity => None,
        }
    }
}

/// An element of `k((G))` with finite support.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Series {
    field: FieldClass,
    group: Arc<GroupPresentation>,
    /// Strictly ascending exponents, no zero coefficients.
    terms: Vec<(GroupElement, Scalar)>,
}

impl Series {
    pub fn zero(field: FieldClass, group: Arc<GroupPresentation>) -> Self {
        Series {
            field,
            group,
            terms: Vec::new(),
        }
    }

    pub fn constant(field: FieldClass, group: Arc<GroupPresentation>, c: Scalar) -> Result<Self> {
        let zero = GroupElement::zero(group.clone());
        Self::monomial(field, zero, c)
    }

    pub fn one(field: FieldClass, group: Arc<GroupPresentation>) -> Self {
        Self::constant(field, group, Scalar::one()).expect("1 lies in every field")
    }

    /// `c·t^g`.
    pub fn monomial(field: FieldClass, exponent: GroupElement, c: Scalar) -> Result<Self> {
        if !field.contains(&c) {
            return Err(Error::CoefficientOutsideField(c.to_string()));
        }
        let group = exponent.group().clone();
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(exponent, c)]
        };
        Ok(Series {
            field,
            group,
            terms,
        })
    }

    /// The infinitesimal `t = t^{1}`, with exponent 1 at chain point 0.
    pub fn t(field: FieldClass, group: Arc<GroupPresentation>) -> Result<Self> {
        let e = GroupElement::single(group, ChainPoint::index(0), Scalar::one())?;
        Self::monomial(field, e, Scalar::one())
    }

    /// Builds a canonical series, summing repeated exponents.
    pub fn from_terms(
        field: FieldClass,
        group: Arc<GroupPresentation>,
        terms: impl IntoIterator<Item = (GroupElement, Scalar)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<GroupElement, Scalar> = BTreeMap::new();
        for (e, c) in terms {
            if e.group() != &group {
                return Err(Error::MixedPresentations);
            }
            if !field.contains(&c) {
                return Err(Error::CoefficientOutsideField(c.to_string()));
            }
            let slot = map.entry(e).or_insert_with(Scalar::zero);
            *slot = &*slot + &c;
        }
        Ok(Self::from_sorted(field, group, map))
    }

    fn from_sorted(
        field: FieldClass,
        group: Arc<GroupPresentation>,
        map: BTreeMap<GroupElement, Scalar>,
    ) -> Self {
        Series {
            field,
            group,
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn field(&self) -> FieldClass {
        self.field
    }

    pub fn group(&self) -> &Arc<GroupPresentation> {
        &self.group
    }

    pub fn terms(&self) -> &[(GroupElement, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(e, c)] if e.is_zero() && c.is_one())
    }

    /// Coefficient of `t^g`, zero when absent.
    pub fn coeff(&self, g: &GroupElement) -> Scalar {
        self.terms
            .binary_search_by(|(e, _)| e.cmp(g))
            .map_or_else(|_| Scalar::zero(), |i| self.terms[i].1.clone())
    }

    pub fn same_carriers(&self, other: &Series) -> bool {
        self.field == other.field
            && (Arc::ptr_eq(&self.group, &other.group) || self.group == other.group)
    }

    fn check(&self, other: &Series) -> Result<()> {
        if self.same_carriers(other) {
            Ok(())
        } else {
            Err(Error::MixedCarriers)
        }
    }

    fn with_terms(&self, terms: Vec<(GroupElement, Scalar)>) -> Series {
        Series {
            field: self.field,
            group: self.group.clone(),
            terms,
        }
    }

    /// Pointwise sum; callers guarantee common carriers.
    fn add_same(&self, other: &Series) -> Series {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (e, c) = &self.terms[i];
            let (f, d) = &other.terms[j];
            match e.cmp(f) {
                Ordering::Less => {
                    out.push((e.clone(), c.clone()));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((f.clone(), d.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = c + d;
                    if !s.is_zero() {
                        out.push((e.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        self.with_terms(out)
    }

    fn mul_same(&self, other: &Series) -> Series {
        let mut acc: BTreeMap<GroupElement, Scalar> = BTreeMap::new();
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                let prod = c * d;
                let slot = acc.entry(e.add_same(f)).or_insert_with(Scalar::zero);
                *slot = &*slot + &prod;
            }
        }
        Self::from_sorted(self.field, self.group.clone(), acc)
    }

    pub fn try_add(&self, other: &Series) -> Result<Series> {
        self.check(other)?;
        Ok(self.add_same(other))
    }

    pub fn try_sub(&self, other: &Series) -> Result<Series> {
        self.check(other)?;
        Ok(self.add_same(&other.neg()))
    }

    /// Convolution product.
    pub fn try_mul(&self, other: &Series) -> Result<Series> {
        self.check(other)?;
        Ok(self.mul_same(other))
    }

    pub fn neg(&self) -> Series {
        self.with_terms(self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect())
    }

    pub fn scale(&self, k: &Scalar) -> Result<Series> {
        if !self.field.contains(k) {
            return Err(Error::CoefficientOutsideField(k.to_string()));
        }
        if k.is_zero() {
            return Ok(self.with_terms(Vec::new()));
        }
        Ok(self.with_terms(self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect()))
    }

    /// Multiplies by `t^g`.
    pub fn shift(&self, g: &GroupElement) -> Result<Series> {
        if g.group() != &self.group {
            return Err(Error::MixedPresentations);
        }
        Ok(self.with_terms(
            self.terms
                .iter()
                .map(|(e, c)| (e.add_same(g), c.clone()))
                .collect(),
        ))
    }

    /// Sign of the leading coefficient.
    pub fn signum(&self) -> Ordering {
        self.terms
            .first()
            .map_or(Ordering::Equal, |(_, c)| c.signum())
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    /// The value as a rational integer when the series is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::from(0)),
            [(e, c)] if e.is_zero() => c.as_integer(),
            _ => None,
        }
    }

    /// Lexicographic order: the sign of `x - y`.
    pub fn try_cmp(&self, other: &Series) -> Result<Ordering> {
        self.check(other)?;
        Ok(self.add_same(&other.neg()).signum())
    }

    pub fn valuation(&self) -> Valuation {
        self.terms
            .first()
            .map_or(Valuation::Infinity, |(e, _)| Valuation::Finite(e.clone()))
    }

    /// Least exponent with its coefficient.
    pub fn leading(&self) -> Result<(&GroupElement, &Scalar)> {
        self.terms
            .first()
            .map(|(e, c)| (e, c))
            .ok_or(Error::LeadingOfZero)
    }

    /// Drops every term with exponent strictly above `bound`.
    pub fn truncate_above(&self, bound: &GroupElement) -> Series {
        self.with_terms(
            self.terms
                .iter()
                .take_while(|(e, _)| e <= bound)
                .cloned()
                .collect(),
        )
    }

    /// Writes `self = c·t^{v}·(1 + ε)` with `v(ε) > 0`.
    fn split_leading(&self) -> Result<(GroupElement, Scalar, Series)> {
        let (v, c) = self.leading()?;
        let (v, c) = (v.clone(), c.clone());
        let c_inv = c.inv()?;
        let eps = self.with_terms(
            self.terms[1..]
                .iter()
                .map(|(e, d)| (e.add_same(&v.neg()), d * &c_inv))
                .collect(),
        );
        Ok((v, c, eps))
    }

    /// `self + n` for a rational integer `n`.
    pub fn add_integer(&self, n: &BigInt) -> Series {
        let c = Series::constant(self.field, self.group.clone(), Scalar::from_bigint(n.clone()))
            .expect("integers lie in every field");
        self.add_same(&c)
    }

    /// Exact power for `n >= 0`; negative powers only for monomials.
    pub fn pow(&self, n: i64) -> Result<Series> {
        if n < 0 {
            if self.terms.len() != 1 {
                return Err(Error::NotExactlyInvertible(self.to_string()));
            }
            let (e, c) = &self.terms[0];
            let m = u32::try_from(-n).map_err(|_| Error::ExponentTooLarge(n.to_string()))?;
            return Ok(self.with_terms(vec![(e.times(n), c.inv()?.pow(m))]));
        }
        let mut base = self.clone();
        let mut acc = Series::one(self.field, self.group.clone());
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_same(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_same(&base);
            }
        }
        Ok(acc)
    }

    /// A truncated inverse `x̂` with `v(x·x̂ - 1) > bound`, exact when the
    /// geometric expansion terminates (monomials).
    ///
    /// With `x = c·t^{v}·(1 + ε)` this is `c⁻¹·t^{-v}·Σ_j (-ε)^j` with the
    /// unit-part sum cut after exponent `bound`.
    pub fn inv_trunc(&self, bound: &GroupElement) -> Result<Series> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.check_bound(bound)?;
        let (v, c, eps) = self.split_leading()?;
        let minus_eps = eps.neg();
        let unit = self.unit_series(&minus_eps, bound, |_| Scalar::one())?;
        unit.shift(&v.neg())?.scale(&c.inv()?)
    }

    /// A truncated positive `n`-th root `r` with
    /// `v(rⁿ - x) > bound + (n-1)·v(x)/n`, i.e. `r` agrees with the true
    /// root beyond exponent `bound`.
    pub fn root_trunc(&self, n: u32, bound: &GroupElement) -> Result<Series> {
        if n == 0 {
            return Err(Error::InvalidArgument("root index must be positive".into()));
        }
        if !self.is_positive() {
            return Err(Error::NonPositive);
        }
        self.check_bound(bound)?;
        let (v, c, eps) = self.split_leading()?;
        let v_root = v
            .scale(&BigRational::new(1.into(), n.into()))
            .map_err(|_| Error::NotDivisibleExponent {
                valuation: v.to_string(),
                n,
            })?;
        let c_root = c.nth_root(n, self.field)?;
        // binom(1/n, j) for the binomial series of (1 + ε)^{1/n}
        let exponent = Scalar::from_ratio(1, n as i64);
        let unit_bound = bound.add_same(&v_root.neg());
        let unit = self.unit_series(&eps, &unit_bound, |j| {
            let mut b = Scalar::one();
            for i in 0..j {
                let num = &exponent - &Scalar::from_int(i as i64);
                b = &(&b * &num) * &Scalar::from_ratio(1, i as i64 + 1);
            }
            b
        })?;
        unit.shift(&v_root)?.scale(&c_root)
    }

    fn check_bound(&self, bound: &GroupElement) -> Result<()> {
        if bound.group() != &self.group {
            return Err(Error::MixedPresentations);
        }
        Ok(())
    }

    /// `Σ_j coeff(j)·ρ^j` keeping exponents `<= bound`, for `v(ρ) > 0`.
    fn unit_series(
        &self,
        rho: &Series,
        bound: &GroupElement,
        coeff: impl Fn(u64) -> Scalar,
    ) -> Result<Series> {
        let one = Series::one(self.field, self.group.clone());
        let mut sum = one.truncate_above(bound);
        if rho.is_zero() {
            return Ok(sum);
        }
        let (step, _) = rho.leading()?;
        if !bound.is_negative() && !reachable(step, bound) {
            return Err(Error::UnreachableBound {
                step: step.to_string(),
                bound: bound.to_string(),
            });
        }
        let mut power = one;
        let mut j = 0u64;
        loop {
            power = power.mul_same(rho).truncate_above(bound);
            j += 1;
            if power.is_zero() {
                return Ok(sum);
            }
            sum = sum.add_same(&power.scale(&coeff(j))?);
        }
    }
}

/// Whether some multiple of the positive `step` exceeds `bound >= 0`:
/// true unless `step` sits in a strictly smaller Archimedean class.
fn reachable(step: &GroupElement, bound: &GroupElement) -> bool {
    match (step.leading(), bound.leading()) {
        (_, None) => true,
        (Some((p, _)), Some((q, _))) => p <= q,
        (None, Some(_)) => false,
    }
}

impl PartialOrd for Series {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{ArchClass, ChainOrder};

    fn carriers() -> (FieldClass, Arc<GroupPresentation>) {
        (
            FieldClass::Rat,
            Arc::new(GroupPresentation::uniform(ChainOrder::Finite(1), ArchClass::Rat)),
        )
    }

    fn g(n: i64, d: i64) -> GroupElement {
        let (_, grp) = carriers();
        GroupElement::single(grp, ChainPoint::index(0), Scalar::from_ratio(n, d)).unwrap()
    }

    /// Σ c·t^{e} from (c_num, c_den, e_num, e_den) tuples.
    fn s(terms: &[(i64, i64, i64, i64)]) -> Series {
        let (f, grp) = carriers();
        Series::from_terms(
            f,
            grp,
            terms
                .iter()
                .map(|&(cn, cd, en, ed)| (g(en, ed), Scalar::from_ratio(cn, cd))),
        )
        .unwrap()
    }

    #[test]
    fn addition_examples() {
        let one_plus_t = s(&[(1, 1, 0, 1), (1, 1, 1, 1)]);
        let one_minus_t = s(&[(1, 1, 0, 1), (-1, 1, 1, 1)]);
        assert_eq!(one_plus_t.try_add(&one_minus_t).unwrap(), s(&[(2, 1, 0, 1)]));
        let tinv = s(&[(1, 1, -1, 1)]);
        assert_eq!(tinv.try_add(&s(&[])).unwrap(), tinv);
        let x = s(&[(3, 1, -1, 2), (2, 1, 0, 1)]);
        let y = s(&[(-3, 1, -1, 2), (1, 1, 2, 3)]);
        assert_eq!(x.try_add(&y).unwrap(), s(&[(2, 1, 0, 1), (1, 1, 2, 3)]));
    }

    #[test]
    fn product_examples() {
        let one_plus_t = s(&[(1, 1, 0, 1), (1, 1, 1, 1)]);
        let one_minus_t = s(&[(1, 1, 0, 1), (-1, 1, 1, 1)]);
        assert_eq!(
            one_plus_t.try_mul(&one_minus_t).unwrap(),
            s(&[(1, 1, 0, 1), (-1, 1, 2, 1)])
        );
        let x = s(&[(2, 1, -1, 1), (1, 1, 0, 1)]);
        let y = s(&[(1, 2, 1, 1), (1, 1, 0, 1)]);
        assert_eq!(
            x.try_mul(&y).unwrap(),
            s(&[(2, 1, -1, 1), (2, 1, 0, 1), (1, 2, 1, 1)])
        );
    }

    #[test]
    fn order_examples() {
        let tinv = s(&[(1, 1, -1, 1)]);
        assert_eq!(tinv.try_cmp(&s(&[(1_000_000, 1, 0, 1)])).unwrap(), Ordering::Greater);
        let t = s(&[(1, 1, 1, 1)]);
        assert_eq!(t.try_cmp(&s(&[])).unwrap(), Ordering::Greater);
        for n in 1..50 {
            assert_eq!(t.try_cmp(&s(&[(1, n, 0, 1)])).unwrap(), Ordering::Less);
        }
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(s(&[]).valuation(), Valuation::Infinity);
        let x = s(&[(3, 1, -1, 2), (2, 1, 0, 1), (-5, 1, 2, 3)]);
        assert_eq!(x.valuation(), Valuation::Finite(g(-1, 2)));
        assert_eq!(s(&[(7, 1, 0, 1)]).valuation(), Valuation::Finite(g(0, 1)));
        assert_eq!(s(&[]).leading(), Err(Error::LeadingOfZero));
    }

    #[test]
    fn inverse_examples() {
        let t = s(&[(1, 1, 1, 1)]);
        assert_eq!(t.inv_trunc(&g(10, 1)).unwrap(), s(&[(1, 1, -1, 1)]));

        let x = s(&[(1, 1, 0, 1), (-1, 1, 1, 1)]);
        let inv = x.inv_trunc(&g(3, 1)).unwrap();
        assert_eq!(inv, s(&[(1, 1, 0, 1), (1, 1, 1, 1), (1, 1, 2, 1), (1, 1, 3, 1)]));
        let one = Series::one(x.field(), x.group().clone());
        let residual = x.try_mul(&inv).unwrap().try_sub(&one).unwrap();
        assert_eq!(residual.valuation(), Valuation::Finite(g(4, 1)));

        // 2t^{-1}(1 + t²)
        let x = s(&[(2, 1, -1, 1), (2, 1, 1, 1)]);
        let inv = x.inv_trunc(&g(5, 1)).unwrap();
        assert_eq!(inv, s(&[(1, 2, 1, 1), (-1, 2, 3, 1), (1, 2, 5, 1)]));
        let residual = x.try_mul(&inv).unwrap().try_sub(&one).unwrap();
        // the product is exactly 1 + t⁶
        assert_eq!(residual, s(&[(1, 1, 6, 1)]));

        assert_eq!(s(&[]).inv_trunc(&g(1, 1)), Err(Error::DivisionByZero));
    }

    #[test]
    fn root_examples() {
        let t2 = s(&[(1, 1, 2, 1)]);
        assert_eq!(t2.root_trunc(2, &g(5, 1)).unwrap(), s(&[(1, 1, 1, 1)]));

        let x = s(&[(1, 1, 0, 1), (1, 1, 1, 1)]);
        let r = x.root_trunc(2, &g(2, 1)).unwrap();
        assert_eq!(r, s(&[(1, 1, 0, 1), (1, 2, 1, 1), (-1, 8, 2, 1)]));
        let residual = r.pow(2).unwrap().try_sub(&x).unwrap();
        assert_eq!(residual.valuation(), Valuation::Finite(g(3, 1)));

        let two_t = s(&[(2, 1, 1, 1)]);
        assert!(matches!(
            two_t.root_trunc(2, &g(1, 1)),
            Err(Error::NoExactRoot { .. })
        ));
        assert_eq!(s(&[(-1, 1, 0, 1)]).root_trunc(2, &g(1, 1)), Err(Error::NonPositive));
    }

    #[test]
    fn root_needs_divisible_valuation() {
        let grp = Arc::new(GroupPresentation::uniform(ChainOrder::Finite(1), ArchClass::Int));
        let e = GroupElement::single(grp.clone(), ChainPoint::index(0), Scalar::one()).unwrap();
        let x = Series::monomial(FieldClass::Rat, e.clone(), Scalar::one()).unwrap();
        assert!(matches!(
            x.root_trunc(2, &e),
            Err(Error::NotDivisibleExponent { .. })
        ));
    }

    #[test]
    fn unreachable_bound_is_reported() {
        // ε lives at chain point 1, the bound at the dominant point 0
        let grp = Arc::new(GroupPresentation::uniform(ChainOrder::Finite(2), ArchClass::Rat));
        let e = GroupElement::single(grp.clone(), ChainPoint::index(1), Scalar::one()).unwrap();
        let b = GroupElement::single(grp.clone(), ChainPoint::index(0), Scalar::one()).unwrap();
        let x = Series::from_terms(
            FieldClass::Rat,
            grp.clone(),
            [(GroupElement::zero(grp), Scalar::one()), (e, Scalar::one())],
        )
        .unwrap();
        assert!(matches!(x.inv_trunc(&b), Err(Error::UnreachableBound { .. })));
    }

    #[test]
    fn negative_powers_of_monomials() {
        let x = s(&[(2, 1, 1, 3)]);
        assert_eq!(x.pow(-2).unwrap(), s(&[(1, 4, -2, 3)]));
        assert!(s(&[(1, 1, 0, 1), (1, 1, 1, 1)]).pow(-1).is_err());
    }
}
