//! Presentable ordered abelian groups: Hahn sums `⊕_{γ∈Γ} B_γ` over a
//! catalog chain `Γ` with catalog Archimedean components `B_γ`.
//!
//! Elements are finitely supported functions from the chain into the
//! components, ordered lexicographically: the sign of `x - y` is the sign of
//! its value at the least chain point of its support. Smaller chain points
//! therefore carry the dominant Archimedean classes.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The rank `Γ` of a Hahn sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChainOrder {
    /// `{0, 1, …, n-1}` with the usual order.
    Finite(u32),
    /// `ℤ`.
    Integers,
    /// `ℚ`.
    Rationals,
}

impl ChainOrder {
    pub fn contains(&self, p: &ChainPoint) -> bool {
        match self {
            ChainOrder::Finite(n) => {
                p.0.is_integer() && !p.0.is_negative() && p.0.to_integer() < BigInt::from(*n)
            }
            ChainOrder::Integers => p.0.is_integer(),
            ChainOrder::Rationals => true,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ChainOrder::Finite(_))
    }
}

impl fmt::Display for ChainOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainOrder::Finite(n) => write!(f, "Finite({n})"),
            ChainOrder::Integers => f.write_str("Integers"),
            ChainOrder::Rationals => f.write_str("Rationals"),
        }
    }
}

/// A point `γ` of a chain. Integer-indexed chains use integral positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainPoint(BigRational);

impl ChainPoint {
    pub fn new(position: BigRational) -> Self {
        ChainPoint(position)
    }

    pub fn index(i: i64) -> Self {
        ChainPoint(BigRational::from_integer(i.into()))
    }

    pub fn position(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for ChainPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Catalog of Archimedean components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArchClass {
    /// `(ℤ, +)`.
    Int,
    /// `(ℚ, +)`.
    Rat,
    /// `(ℚ + ℚ√2, +)`, the additive group of `ℚ(√2)`.
    RatRoot2,
}

impl ArchClass {
    pub fn is_divisible(self) -> bool {
        !matches!(self, ArchClass::Int)
    }

    /// Ordered-group isomorphism within the catalog. `ℤ` and `ℚ` share
    /// rational rank one but differ in divisibility, so only equal classes
    /// are isomorphic.
    pub fn is_isomorphic(self, other: ArchClass) -> bool {
        self == other
    }

    pub fn admits(self, v: &Scalar) -> bool {
        match self {
            ArchClass::Int => v.as_integer().is_some(),
            ArchClass::Rat => v.is_rational(),
            ArchClass::RatRoot2 => true,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ArchClass::Int => "Int",
            ArchClass::Rat => "Rat",
            ArchClass::RatRoot2 => "RatRoot2",
        }
    }
}

impl fmt::Display for ArchClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `G = ⊕_{γ∈Γ} B_γ` with a uniform component and, on finite chains only,
/// per-point exceptions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupPresentation {
    chain: ChainOrder,
    default_component: ArchClass,
    overrides: BTreeMap<ChainPoint, ArchClass>,
}

impl GroupPresentation {
    pub fn uniform(chain: ChainOrder, component: ArchClass) -> Self {
        GroupPresentation {
            chain,
            default_component: component,
            overrides: BTreeMap::new(),
        }
    }

    /// Overrides equal to the default component are dropped, so equal groups
    /// have equal presentations.
    pub fn with_overrides(
        chain: ChainOrder,
        default_component: ArchClass,
        overrides: impl IntoIterator<Item = (ChainPoint, ArchClass)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (p, c) in overrides {
            if !chain.is_finite() {
                return Err(Error::InvalidPresentation(format!(
                    "overrides are only allowed on finite chains, not {chain}"
                )));
            }
            if !chain.contains(&p) {
                return Err(Error::InvalidChainPoint {
                    point: p.to_string(),
                    chain: chain.to_string(),
                });
            }
            if map.insert(p.clone(), c).is_some() {
                return Err(Error::InvalidPresentation(format!(
                    "duplicate override at chain point {p}"
                )));
            }
        }
        map.retain(|_, c| *c != default_component);
        Ok(GroupPresentation {
            chain,
            default_component,
            overrides: map,
        })
    }

    /// The trivial group, `Finite(0)`.
    pub fn trivial() -> Self {
        Self::uniform(ChainOrder::Finite(0), ArchClass::Rat)
    }

    pub fn chain(&self) -> ChainOrder {
        self.chain
    }

    pub fn default_component(&self) -> ArchClass {
        self.default_component
    }

    pub fn overrides(&self) -> &BTreeMap<ChainPoint, ArchClass> {
        &self.overrides
    }

    pub fn is_trivial(&self) -> bool {
        self.chain == ChainOrder::Finite(0)
    }

    pub fn component_at(&self, p: &ChainPoint) -> ArchClass {
        self.overrides
            .get(p)
            .copied()
            .unwrap_or(self.default_component)
    }

    /// Components actually occurring, one (point, class) witness per
    /// override plus the uniform component at its least non-overridden
    /// point, sorted by point. Infinite chains report the uniform component
    /// at point 0.
    pub fn component_witnesses(&self) -> Vec<(ChainPoint, ArchClass)> {
        match self.chain {
            ChainOrder::Finite(n) => {
                let mut out: Vec<(ChainPoint, ArchClass)> =
                    self.overrides.iter().map(|(p, c)| (p.clone(), *c)).collect();
                if let Some(p) = (0..n as i64)
                    .map(ChainPoint::index)
                    .find(|p| !self.overrides.contains_key(p))
                {
                    out.push((p, self.default_component));
                }
                out.sort();
                out
            }
            _ => vec![(ChainPoint::index(0), self.default_component)],
        }
    }

    pub fn max_point(&self) -> Option<ChainPoint> {
        match self.chain {
            ChainOrder::Finite(n) if n > 0 => Some(ChainPoint::index(n as i64 - 1)),
            _ => None,
        }
    }

    pub fn min_point(&self) -> Option<ChainPoint> {
        match self.chain {
            ChainOrder::Finite(n) if n > 0 => Some(ChainPoint::index(0)),
            _ => None,
        }
    }

    /// Whether `G` has a least positive element: exactly when `Γ` has a
    /// maximum whose component is `ℤ`.
    pub fn has_min_positive(&self) -> bool {
        self.max_point()
            .is_some_and(|p| self.component_at(&p) == ArchClass::Int)
    }

    pub fn is_divisible(&self) -> bool {
        self.component_witnesses()
            .iter()
            .all(|(_, c)| c.is_divisible())
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HahnSum({}; {}", self.chain, self.default_component)?;
        for (p, c) in &self.overrides {
            write!(f, ", {p}:{c}")?;
        }
        f.write_str(")")
    }
}

/// A finitely supported element of a Hahn sum.
///
/// Terms are sorted strictly ascending by chain point and carry no zero
/// values, so structural equality is group equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    group: Arc<GroupPresentation>,
    terms: Vec<(ChainPoint, Scalar)>,
}

fn same_group(a: &Arc<GroupPresentation>, b: &Arc<GroupPresentation>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl GroupElement {
    pub fn zero(group: Arc<GroupPresentation>) -> Self {
        GroupElement {
            group,
            terms: Vec::new(),
        }
    }

    /// Builds a canonical element, summing repeated points and dropping zeros.
    pub fn from_terms(
        group: Arc<GroupPresentation>,
        terms: impl IntoIterator<Item = (ChainPoint, Scalar)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<ChainPoint, Scalar> = BTreeMap::new();
        for (p, v) in terms {
            if !group.chain.contains(&p) {
                return Err(Error::InvalidChainPoint {
                    point: p.to_string(),
                    chain: group.chain.to_string(),
                });
            }
            let class = group.component_at(&p);
            if !class.admits(&v) {
                return Err(Error::ComponentOutOfClass {
                    point: p.to_string(),
                    class: class.to_string(),
                    value: v.to_string(),
                });
            }
            let slot = map.entry(p).or_insert_with(Scalar::zero);
            *slot = &*slot + &v;
        }
        Ok(GroupElement {
            group,
            terms: map.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        })
    }

    /// The element with value `v` at the single point `p`.
    pub fn single(group: Arc<GroupPresentation>, p: ChainPoint, v: Scalar) -> Result<Self> {
        Self::from_terms(group, [(p, v)])
    }

    pub fn group(&self) -> &Arc<GroupPresentation> {
        &self.group
    }

    pub fn terms(&self) -> &[(ChainPoint, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The least support point and its value; this term decides the sign.
    pub fn leading(&self) -> Option<&(ChainPoint, Scalar)> {
        self.terms.first()
    }

    pub fn signum(&self) -> Ordering {
        self.terms
            .first()
            .map_or(Ordering::Equal, |(_, v)| v.signum())
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if same_group(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::MixedPresentations)
        }
    }

    /// Componentwise sum. Callers guarantee a common group.
    pub(crate) fn add_same(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (p, v) = &self.terms[i];
            let (q, w) = &other.terms[j];
            match p.cmp(q) {
                Ordering::Less => {
                    out.push((p.clone(), v.clone()));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((q.clone(), w.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = v + w;
                    if !s.is_zero() {
                        out.push((p.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        GroupElement {
            group: self.group.clone(),
            terms: out,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.add_same(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.add_same(&other.neg()))
    }

    pub fn neg(&self) -> Self {
        GroupElement {
            group: self.group.clone(),
            terms: self.terms.iter().map(|(p, v)| (p.clone(), -v)).collect(),
        }
    }

    /// `n·x`; always stays inside the group.
    pub fn times(&self, n: i64) -> Self {
        if n == 0 {
            return Self::zero(self.group.clone());
        }
        let k = Scalar::from_int(n);
        GroupElement {
            group: self.group.clone(),
            terms: self.terms.iter().map(|(p, v)| (p.clone(), v * &k)).collect(),
        }
    }

    /// `q·x` for rational `q`, failing where an integral component would
    /// receive a non-integer.
    pub fn scale(&self, q: &BigRational) -> Result<Self> {
        if q.is_zero() {
            return Ok(Self::zero(self.group.clone()));
        }
        let k = Scalar::rational(q.clone());
        let mut terms = Vec::with_capacity(self.terms.len());
        for (p, v) in &self.terms {
            let w = v * &k;
            let class = self.group.component_at(p);
            if !class.admits(&w) {
                return Err(Error::NotDivisible {
                    point: p.to_string(),
                    class: class.to_string(),
                    divisor: q.denom().to_string(),
                });
            }
            terms.push((p.clone(), w));
        }
        Ok(GroupElement {
            group: self.group.clone(),
            terms,
        })
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        self.check_same(other)?;
        Ok(lex_cmp(&self.terms, &other.terms))
    }
}

/// Sign of `x - y` without materializing the difference.
fn lex_cmp(x: &[(ChainPoint, Scalar)], y: &[(ChainPoint, Scalar)]) -> Ordering {
    let (mut i, mut j) = (0, 0);
    loop {
        match (x.get(i), y.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some((_, v)), None) => return v.signum(),
            (None, Some((_, w))) => return w.signum().reverse(),
            (Some((p, v)), Some((q, w))) => match p.cmp(q) {
                Ordering::Less => return v.signum(),
                Ordering::Greater => return w.signum().reverse(),
                Ordering::Equal => {
                    let c = v.cmp(w);
                    if c != Ordering::Equal {
                        return c;
                    }
                    i += 1;
                    j += 1;
                }
            },
        }
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The group order. Elements of different presentations never meet inside
/// one series; for them the presentations themselves break the tie so the
/// order stays total and consistent with `Eq`.
impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        lex_cmp(&self.terms, &other.terms).then_with(|| {
            if same_group(&self.group, &other.group) {
                Ordering::Equal
            } else {
                self.group.cmp(&other.group)
            }
        })
    }
}

impl fmt::Display for GroupElement {
    /// `{(p, v), …}`; the zero element prints as `{}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (p, v)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({p}, {v})")?;
        }
        f.write_str("}")
    }
}

/// Decidable order-type invariants of the rank `Γ` and of the negative
/// cone `G^{<0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderInvariants {
    pub is_trivial: bool,
    /// `Some(n)` when `Γ` has exactly `n` points.
    pub rank_finite: Option<u32>,
    /// Dense in the strict sense: at least two points, and a third strictly
    /// between any two.
    pub rank_dense: bool,
    pub rank_has_min: bool,
    pub rank_has_max: bool,
    pub negcone_dense: bool,
    pub negcone_has_endpoints: bool,
    pub divisible: bool,
}

/// Computes the invariants from the presentation.
///
/// `G^{<0}` never has a least element (`2x < x`), and it has a greatest
/// element exactly when `G` has a least positive one. It is dense exactly
/// when it has no such gap.
pub fn order_invariants(g: &GroupPresentation) -> OrderInvariants {
    let trivial = g.is_trivial();
    let (rank_finite, rank_dense, has_min, has_max) = match g.chain {
        ChainOrder::Finite(n) => (Some(n), false, n > 0, n > 0),
        ChainOrder::Integers => (None, false, false, false),
        ChainOrder::Rationals => (None, true, false, false),
    };
    let min_pos = g.has_min_positive();
    OrderInvariants {
        is_trivial: trivial,
        rank_finite,
        rank_dense,
        rank_has_min: has_min,
        rank_has_max: has_max,
        negcone_dense: !trivial && !min_pos,
        negcone_has_endpoints: min_pos,
        divisible: g.is_divisible(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn finite(n: u32, c: ArchClass) -> Arc<GroupPresentation> {
        Arc::new(GroupPresentation::uniform(ChainOrder::Finite(n), c))
    }

    fn el(g: &Arc<GroupPresentation>, terms: &[(i64, i64, i64)]) -> GroupElement {
        GroupElement::from_terms(
            g.clone(),
            terms
                .iter()
                .map(|&(p, n, d)| (ChainPoint::index(p), Scalar::from_ratio(n, d))),
        )
        .unwrap()
    }

    #[test]
    fn addition_examples() {
        let g = finite(2, ArchClass::Rat);
        assert!(el(&g, &[(0, 1, 1)]).try_add(&el(&g, &[(0, -1, 1)])).unwrap().is_zero());
        assert_eq!(
            el(&g, &[(0, 1, 2)]).try_add(&el(&g, &[(1, 3, 1)])).unwrap(),
            el(&g, &[(0, 1, 2), (1, 3, 1)])
        );
        assert_eq!(
            el(&g, &[(0, 2, 1), (1, -1, 1)])
                .try_add(&el(&g, &[(0, -2, 1), (1, 5, 1)]))
                .unwrap(),
            el(&g, &[(1, 4, 1)])
        );
    }

    #[test]
    fn mixed_presentations_rejected() {
        let a = el(&finite(1, ArchClass::Rat), &[(0, 1, 1)]);
        let b = el(&finite(2, ArchClass::Rat), &[(0, 1, 1)]);
        assert_eq!(a.try_add(&b), Err(Error::MixedPresentations));
        assert_eq!(a.try_cmp(&b), Err(Error::MixedPresentations));
    }

    #[test]
    fn integral_components_reject_fractions() {
        let g = finite(1, ArchClass::Int);
        let r = GroupElement::single(g, ChainPoint::index(0), Scalar::from_ratio(1, 2));
        assert!(matches!(r, Err(Error::ComponentOutOfClass { .. })));
    }

    #[test]
    fn comparison_examples() {
        let g = finite(2, ArchClass::Rat);
        assert_eq!(
            el(&g, &[(0, 1, 1)]).try_cmp(&el(&g, &[(1, 100, 1)])).unwrap(),
            Ordering::Greater
        );
        let z = GroupElement::zero(g.clone());
        assert_eq!(z.try_cmp(&z).unwrap(), Ordering::Equal);
        assert_eq!(el(&g, &[(0, -1, 3)]).try_cmp(&z).unwrap(), Ordering::Less);
    }

    #[test]
    fn scaling_examples() {
        let q = finite(6, ArchClass::Rat);
        assert_eq!(el(&q, &[(0, 3, 1)]).scale(&rat(1, 2)).unwrap(), el(&q, &[(0, 3, 2)]));
        let z = finite(1, ArchClass::Int);
        assert!(matches!(
            el(&z, &[(0, 3, 1)]).scale(&rat(1, 2)),
            Err(Error::NotDivisible { .. })
        ));
        assert_eq!(
            el(&q, &[(0, 1, 2), (5, 1, 1)]).scale(&rat(-2, 1)).unwrap(),
            el(&q, &[(0, -1, 1), (5, -2, 1)])
        );
    }

    #[test]
    fn invariants_examples() {
        let inv = order_invariants(&GroupPresentation::uniform(ChainOrder::Finite(1), ArchClass::Rat));
        assert_eq!(inv.rank_finite, Some(1));
        assert!(!inv.rank_dense);
        assert!(inv.negcone_dense && !inv.negcone_has_endpoints && inv.divisible);

        let inv = order_invariants(&GroupPresentation::uniform(ChainOrder::Finite(1), ArchClass::Int));
        assert!(!inv.negcone_dense && !inv.divisible);

        let inv = order_invariants(&GroupPresentation::uniform(ChainOrder::Rationals, ArchClass::Rat));
        assert!(inv.rank_dense && !inv.rank_has_min && !inv.rank_has_max && inv.divisible);

        let inv = order_invariants(&GroupPresentation::trivial());
        assert!(inv.is_trivial && !inv.negcone_dense);
    }

    #[test]
    fn overrides_only_on_finite_chains() {
        let r = GroupPresentation::with_overrides(
            ChainOrder::Rationals,
            ArchClass::Rat,
            [(ChainPoint::index(0), ArchClass::Int)],
        );
        assert!(matches!(r, Err(Error::InvalidPresentation(_))));
        let r = GroupPresentation::with_overrides(
            ChainOrder::Finite(2),
            ArchClass::Rat,
            [(ChainPoint::index(2), ArchClass::Int)],
        );
        assert!(matches!(r, Err(Error::InvalidChainPoint { .. })));
        let g = GroupPresentation::with_overrides(
            ChainOrder::Finite(2),
            ArchClass::Rat,
            [(ChainPoint::index(1), ArchClass::Rat)],
        )
        .unwrap();
        assert_eq!(g, GroupPresentation::uniform(ChainOrder::Finite(2), ArchClass::Rat));
    }

    #[test]
    fn display_forms() {
        let g = GroupPresentation::with_overrides(
            ChainOrder::Finite(2),
            ArchClass::Rat,
            [(ChainPoint::index(1), ArchClass::Int)],
        )
        .unwrap();
        assert_eq!(g.to_string(), "HahnSum(Finite(2); Rat, 1:Int)");
        let g = Arc::new(g);
        assert_eq!(el(&g, &[(0, -1, 2), (1, 3, 1)]).to_string(), "{(0, -1/2), (1, 3)}");
        assert_eq!(GroupElement::zero(g).to_string(), "{}");
    }
}
