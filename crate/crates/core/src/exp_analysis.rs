//! Exponential-group analysis of value groups.
//!
//! If a non-Archimedean real closed field has an integer part whose
//! non-negative cone models `PA` (or just `IΔ₀ + EXP`), its value group `G`
//! must be an *exponential group* in the additive group `C` of the residue
//! field: the rank of `G` is order-isomorphic to the negative cone `G^{<0}`
//! and every Archimedean component is isomorphic to `C`. In particular the
//! rank is a dense linear order without endpoints.
//!
//! [`check_exponential_group`] decides every catalog-level necessary
//! condition and returns a machine-checkable witness on failure. Passing is
//! never reported as sufficient: the full order isomorphism between rank and
//! negative cone is recorded as not decided. [`ipa_verdict`] turns a failure
//! (or a full power series field) into a "no such integer part" certificate.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{order_invariants, ArchClass, ChainOrder, ChainPoint, GroupPresentation};
use crate::scalar::FieldClass;

/// A failed necessary condition, with the data that witnesses it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FailureReason {
    TrivialGroup,
    NotDivisible {
        point: ChainPoint,
        class: ArchClass,
    },
    ComponentsNotAllIsomorphic {
        first: (ChainPoint, ArchClass),
        second: (ChainPoint, ArchClass),
    },
    ComponentNotIsomorphicToTarget {
        point: ChainPoint,
        component: ArchClass,
        target: ArchClass,
    },
    RankFinite {
        points: u32,
    },
    RankNotDense,
    RankHasEndpoint {
        min: bool,
        max: bool,
    },
    NegConeMismatch {
        rank_dense: bool,
        negcone_dense: bool,
        rank_has_endpoints: bool,
        negcone_has_endpoints: bool,
    },
}

impl FailureReason {
    pub fn tag(&self) -> &'static str {
        match self {
            FailureReason::TrivialGroup => "TrivialGroup",
            FailureReason::NotDivisible { .. } => "NotDivisible",
            FailureReason::ComponentsNotAllIsomorphic { .. } => "ComponentsNotAllIsomorphic",
            FailureReason::ComponentNotIsomorphicToTarget { .. } => {
                "ComponentNotIsomorphicToTarget"
            }
            FailureReason::RankFinite { .. } => "RankFinite",
            FailureReason::RankNotDense => "RankNotDense",
            FailureReason::RankHasEndpoint { .. } => "RankHasEndpoint",
            FailureReason::NegConeMismatch { .. } => "NegConeMismatch",
        }
    }

    /// Re-derives the cited invariant from the presentation and confirms
    /// that it fails with exactly this data.
    pub fn revalidate(&self, g: &GroupPresentation, target: ArchClass) -> bool {
        let inv = order_invariants(g);
        match self {
            FailureReason::TrivialGroup => inv.is_trivial,
            FailureReason::NotDivisible { point, class } => {
                !inv.divisible
                    && g.chain().contains(point)
                    && g.component_at(point) == *class
                    && !class.is_divisible()
            }
            FailureReason::ComponentsNotAllIsomorphic { first, second } => {
                g.chain().contains(&first.0)
                    && g.chain().contains(&second.0)
                    && g.component_at(&first.0) == first.1
                    && g.component_at(&second.0) == second.1
                    && !first.1.is_isomorphic(second.1)
            }
            FailureReason::ComponentNotIsomorphicToTarget {
                point,
                component,
                target: t,
            } => {
                *t == target
                    && g.chain().contains(point)
                    && g.component_at(point) == *component
                    && !component.is_isomorphic(target)
            }
            FailureReason::RankFinite { points } => inv.rank_finite == Some(*points),
            FailureReason::RankNotDense => !inv.is_trivial && !inv.rank_dense,
            FailureReason::RankHasEndpoint { min, max } => {
                (*min || *max) && inv.rank_has_min == *min && inv.rank_has_max == *max
            }
            FailureReason::NegConeMismatch {
                rank_dense,
                negcone_dense,
                rank_has_endpoints,
                negcone_has_endpoints,
            } => {
                inv.rank_dense == *rank_dense
                    && inv.negcone_dense == *negcone_dense
                    && (inv.rank_has_min || inv.rank_has_max) == *rank_has_endpoints
                    && inv.negcone_has_endpoints == *negcone_has_endpoints
                    && (rank_dense != negcone_dense || rank_has_endpoints != negcone_has_endpoints)
            }
        }
    }
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailureReason::TrivialGroup => f.write_str("TrivialGroup"),
            FailureReason::NotDivisible { point, class } => {
                write!(f, "NotDivisible(point={point}, class={class})")
            }
            FailureReason::ComponentsNotAllIsomorphic { first, second } => write!(
                f,
                "ComponentsNotAllIsomorphic({}:{}, {}:{})",
                first.0, first.1, second.0, second.1
            ),
            FailureReason::ComponentNotIsomorphicToTarget {
                point,
                component,
                target,
            } => write!(
                f,
                "ComponentNotIsomorphicToTarget(point={point}, component={component}, target={target})"
            ),
            FailureReason::RankFinite { points } => write!(f, "RankFinite(points={points})"),
            FailureReason::RankNotDense => f.write_str("RankNotDense"),
            FailureReason::RankHasEndpoint { min, max } => {
                write!(f, "RankHasEndpoint(min={min}, max={max})")
            }
            FailureReason::NegConeMismatch {
                rank_dense,
                negcone_dense,
                rank_has_endpoints,
                negcone_has_endpoints,
            } => write!(
                f,
                "NegConeMismatch(rank_dense={rank_dense}, negcone_dense={negcone_dense}, \
                 rank_endpoints={rank_has_endpoints}, negcone_endpoints={negcone_has_endpoints})"
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckStatus {
    Passed,
    NotDecided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Check {
    pub name: &'static str,
    pub status: CheckStatus,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.status {
            CheckStatus::Passed => "passed",
            CheckStatus::NotDecided => "not-decided",
        };
        write!(f, "{}={}", self.name, s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExpGroupVerdict {
    NotExponential(FailureReason),
    /// Every decidable necessary condition holds; the list records each one,
    /// including what was left undecided.
    PassesNecessaryConditions(Vec<Check>),
}

impl ExpGroupVerdict {
    pub fn failure(&self) -> Option<&FailureReason> {
        match self {
            ExpGroupVerdict::NotExponential(r) => Some(r),
            ExpGroupVerdict::PassesNecessaryConditions(_) => None,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            ExpGroupVerdict::NotExponential(_) => "NotExponential",
            ExpGroupVerdict::PassesNecessaryConditions(_) => "PassesNecessaryConditions",
        }
    }

    /// The `witness:`/`checks:` line of the serialized record.
    fn detail_line(&self) -> String {
        match self {
            ExpGroupVerdict::NotExponential(r) => format!("witness: {r}"),
            ExpGroupVerdict::PassesNecessaryConditions(checks) => {
                let list: Vec<String> = checks.iter().map(Check::to_string).collect();
                format!("checks: {}", list.join(", "))
            }
        }
    }

    /// Structured text record with a stable field order.
    pub fn to_record(&self, g: &GroupPresentation, target: ArchClass) -> String {
        format!(
            "verdict: {}\n{}\ngroup: {g}\ntarget: {target}\n",
            self.tag(),
            self.detail_line()
        )
    }
}

const PASSING_CHECKS: [&str; 7] = [
    "nontrivial",
    "divisible",
    "components-isomorphic",
    "components-match-target",
    "rank-dense",
    "rank-no-endpoints",
    "negcone-consistent",
];

/// Runs the necessary conditions in a fixed order and reports the first
/// failure: nontrivial, divisible, components mutually isomorphic,
/// components isomorphic to `target`, rank dense, rank without endpoints,
/// rank invariants consistent with those of `G^{<0}`.
pub fn check_exponential_group(g: &GroupPresentation, target: ArchClass) -> ExpGroupVerdict {
    use ExpGroupVerdict::NotExponential;
    let inv = order_invariants(g);
    if inv.is_trivial {
        return NotExponential(FailureReason::TrivialGroup);
    }
    let components = g.component_witnesses();
    if let Some((point, class)) = components.iter().find(|(_, c)| !c.is_divisible()) {
        return NotExponential(FailureReason::NotDivisible {
            point: point.clone(),
            class: *class,
        });
    }
    let first = &components[0];
    if let Some(other) = components.iter().find(|(_, c)| !c.is_isomorphic(first.1)) {
        return NotExponential(FailureReason::ComponentsNotAllIsomorphic {
            first: first.clone(),
            second: other.clone(),
        });
    }
    if !first.1.is_isomorphic(target) {
        return NotExponential(FailureReason::ComponentNotIsomorphicToTarget {
            point: first.0.clone(),
            component: first.1,
            target,
        });
    }
    if let Some(points) = inv.rank_finite {
        return NotExponential(FailureReason::RankFinite { points });
    }
    if !inv.rank_dense {
        return NotExponential(FailureReason::RankNotDense);
    }
    if inv.rank_has_min || inv.rank_has_max {
        return NotExponential(FailureReason::RankHasEndpoint {
            min: inv.rank_has_min,
            max: inv.rank_has_max,
        });
    }
    let rank_endpoints = inv.rank_has_min || inv.rank_has_max;
    if inv.rank_dense != inv.negcone_dense || rank_endpoints != inv.negcone_has_endpoints {
        return NotExponential(FailureReason::NegConeMismatch {
            rank_dense: inv.rank_dense,
            negcone_dense: inv.negcone_dense,
            rank_has_endpoints: rank_endpoints,
            negcone_has_endpoints: inv.negcone_has_endpoints,
        });
    }
    let mut checks: Vec<Check> = PASSING_CHECKS
        .iter()
        .map(|&name| Check {
            name,
            status: CheckStatus::Passed,
        })
        .collect();
    checks.push(Check {
        name: "rank-isomorphic-to-negcone",
        status: CheckStatus::NotDecided,
    });
    ExpGroupVerdict::PassesNecessaryConditions(checks)
}

/// The additive group of a residue field, as a catalog component.
pub fn additive_class(field: FieldClass) -> ArchClass {
    match field {
        FieldClass::Rat => ArchClass::Rat,
        FieldClass::Root2 => ArchClass::RatRoot2,
    }
}

/// A real closed field `K` with `k(G)^{rc} ⊆ K ⊆ k((G))`, or all of `k((G))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub field: FieldClass,
    pub group: GroupPresentation,
    pub full_power_series: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IpaVerdict {
    NoIPA,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// The value group fails a necessary condition for being exponential.
    ValueGroupNotExponential,
    /// Full power series fields admit no left exponential.
    MaximallyValued,
}

impl Rule {
    pub fn token(self) -> &'static str {
        match self {
            Rule::ValueGroupNotExponential => "value-group-not-exponential",
            Rule::MaximallyValued => "maximally-valued",
        }
    }
}

/// Citation token for the maximally-valued rule.
pub const NO_LEFT_EXPONENTIAL: &str = "full-power-series-fields-admit-no-left-exponential";

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Witness {
    Failure(FailureReason),
    Citation(&'static str),
    NecessaryConditionsPass,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Failure(r) => r.fmt(f),
            Witness::Citation(c) => f.write_str(c),
            Witness::NecessaryConditionsPass => f.write_str("PassesNecessaryConditions"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IpaCertificate {
    pub verdict: IpaVerdict,
    pub rule: Option<Rule>,
    pub witness: Witness,
    pub spec: FieldSpec,
    pub caveats: Vec<String>,
}

impl IpaCertificate {
    /// Structured text record: verdict, rule, witness, carriers, caveats.
    pub fn to_record(&self) -> String {
        let verdict = match self.verdict {
            IpaVerdict::NoIPA => "NoIPA",
            IpaVerdict::Inconclusive => "Inconclusive",
        };
        let rule = self.rule.map_or("none", Rule::token);
        let scope = if self.spec.full_power_series {
            "full-power-series"
        } else {
            "between-real-closure-and-power-series"
        };
        let caveats = if self.caveats.is_empty() {
            "none".to_string()
        } else {
            self.caveats.join("; ")
        };
        format!(
            "verdict: {verdict}\nrule: {rule}\nwitness: {}\nfield: {}\ngroup: {}\nscope: {scope}\ncaveats: {caveats}\n",
            self.witness, self.spec.field, self.spec.group
        )
    }

    /// Re-runs the cited invariant and checks it reproduces this certificate.
    pub fn revalidate(&self) -> bool {
        let target = additive_class(self.spec.field);
        let witness_ok = match &self.witness {
            Witness::Failure(r) => r.revalidate(&self.spec.group, target),
            Witness::Citation(_) => self.spec.full_power_series && !self.spec.group.is_trivial(),
            Witness::NecessaryConditionsPass => matches!(
                check_exponential_group(&self.spec.group, target),
                ExpGroupVerdict::PassesNecessaryConditions(_)
            ),
        };
        witness_ok && ipa_verdict(&self.spec, target).as_ref() == Ok(self)
    }
}

/// Certifies that no `K` described by `spec` has an integer part modelling
/// `PA` (or `IΔ₀ + EXP`), or reports that nothing can be concluded.
pub fn ipa_verdict(spec: &FieldSpec, target: ArchClass) -> Result<IpaCertificate> {
    if target != additive_class(spec.field) {
        return Err(Error::ResidueMismatch {
            target: target.to_string(),
            field: spec.field.to_string(),
        });
    }
    let verdict = check_exponential_group(&spec.group, target);
    let cert = match verdict {
        ExpGroupVerdict::NotExponential(reason) => IpaCertificate {
            verdict: IpaVerdict::NoIPA,
            rule: Some(Rule::ValueGroupNotExponential),
            witness: Witness::Failure(reason),
            spec: spec.clone(),
            caveats: Vec::new(),
        },
        ExpGroupVerdict::PassesNecessaryConditions(_) if spec.full_power_series => IpaCertificate {
            verdict: IpaVerdict::NoIPA,
            rule: Some(Rule::MaximallyValued),
            witness: Witness::Citation(NO_LEFT_EXPONENTIAL),
            spec: spec.clone(),
            caveats: vec![format!(
                "the rule is established for real coefficients; here k = {}",
                spec.field
            )],
        },
        ExpGroupVerdict::PassesNecessaryConditions(_) => IpaCertificate {
            verdict: IpaVerdict::Inconclusive,
            rule: None,
            witness: Witness::NecessaryConditionsPass,
            spec: spec.clone(),
            caveats: vec![
                "passing the necessary conditions does not imply such an integer part exists"
                    .to_string(),
            ],
        },
    };
    Ok(cert)
}

/// One arithmetic fact about exponentiation checked on an initial segment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactResult {
    pub number: u8,
    pub statement: &'static str,
    pub checked: u64,
    pub counterexample: Option<String>,
}

impl FactResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomsReport {
    pub bound: u64,
    pub facts: Vec<FactResult>,
}

impl AxiomsReport {
    pub fn passed(&self) -> bool {
        self.facts.iter().all(FactResult::passed)
    }
}

impl fmt::Display for AxiomsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for fact in &self.facts {
            match &fact.counterexample {
                None => writeln!(
                    f,
                    "PASS fact {}: {} ({} checks)",
                    fact.number, fact.statement, fact.checked
                )?,
                Some(c) => writeln!(f, "FAIL fact {}: {}: {c}", fact.number, fact.statement)?,
            }
        }
        Ok(())
    }
}

/// Largest bound accepted by [`exp_axioms_check`]; fact (4) scans every
/// integer up to the bound.
pub const MAX_AXIOM_BOUND: u64 = 1 << 32;

/// Checks the five basic facts about `E(x) = 2^x` on the standard integers.
///
/// Exponentiation is only partially defined below `bound`, as in a model of
/// `IΔ₀` without `EXP`: facts (1), (2), (3) and (5) range over all `x` with
/// `2^x <= bound`, fact (4) over every `1 <= x <= bound`.
pub fn exp_axioms_check(bound: u64) -> Result<AxiomsReport> {
    if bound < 2 {
        return Err(Error::InvalidArgument("bound must be at least 2".into()));
    }
    if bound > MAX_AXIOM_BOUND {
        return Err(Error::InvalidArgument(format!(
            "bound must be at most {MAX_AXIOM_BOUND}"
        )));
    }
    // The graph of E below the bound, built by the recursion of fact (1).
    let mut graph: Vec<u64> = vec![1];
    while let Some(next) = graph.last().unwrap().checked_mul(2).filter(|&v| v <= bound) {
        graph.push(next);
    }
    let top = graph.len() as u64 - 1;
    let e = |x: u64| graph[x as usize];

    let mut facts = Vec::with_capacity(5);

    let mut checked = 1;
    let mut cx = (e(0) != 1).then(|| format!("E(0) = {}", e(0)));
    for x in 0..top {
        checked += 1;
        if cx.is_none() && (e(x + 1) != 2 * e(x) || e(x) != 1u64 << x) {
            cx = Some(format!("E({}) = {}, E({x}) = {}", x + 1, e(x + 1), e(x)));
        }
    }
    facts.push(FactResult {
        number: 1,
        statement: "E(0) = 1 and E(x+1) = 2E(x)",
        checked,
        counterexample: cx,
    });

    let mut cx = None;
    for x in 1..=top {
        if cx.is_none() && e(x) < x + 1 {
            cx = Some(format!("E({x}) = {} < {}", e(x), x + 1));
        }
    }
    facts.push(FactResult {
        number: 2,
        statement: "x >= 1 implies E(x) >= x+1",
        checked: top,
        counterexample: cx,
    });

    let (mut cx, mut checked) = (None, 0);
    for a in 0..=top {
        for b in 0..=top - a {
            checked += 1;
            if cx.is_none() && e(a + b) != e(a) * e(b) {
                cx = Some(format!("E({a}+{b}) != E({a})E({b})"));
            }
        }
    }
    facts.push(FactResult {
        number: 3,
        statement: "E(a+b) = E(a)E(b)",
        checked,
        counterexample: cx,
    });

    let mut cx = None;
    for x in 1..=bound {
        let mut found = 0u32;
        for y in 0..=top {
            let z = e(y);
            if z <= x && x < 2 * z {
                found += 1;
            }
        }
        if cx.is_none() && found != 1 {
            cx = Some(format!("{x} lies between {found} pairs of successive powers"));
        }
    }
    facts.push(FactResult {
        number: 4,
        statement: "every x >= 1 lies between successive powers of 2, uniquely",
        checked: bound,
        counterexample: cx,
    });

    let (mut cx, mut checked) = (None, 0);
    for a in 0..=top {
        for b in a + 1..=top {
            checked += 1;
            if cx.is_none() && e(a) >= e(b) {
                cx = Some(format!("E({a}) >= E({b})"));
            }
        }
    }
    facts.push(FactResult {
        number: 5,
        statement: "a < b implies E(a) < E(b)",
        checked,
        counterexample: cx,
    });

    Ok(AxiomsReport { bound, facts })
}

/// A regression entry: presentation, target, expected verdict and the
/// failure mode it illustrates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub group: GroupPresentation,
    pub target: ArchClass,
    pub expected: ExpGroupVerdict,
    pub note: &'static str,
    /// The verdict computed when the catalog was built.
    pub observed: ExpGroupVerdict,
}

impl CatalogEntry {
    pub fn matches(&self) -> bool {
        self.expected == self.observed
    }
}

fn point(i: i64) -> ChainPoint {
    ChainPoint::index(i)
}

/// The built-in corpus: each failure mode of the exponential-group test plus
/// passing cases, each re-checked as it is built.
pub fn catalog_examples() -> Vec<CatalogEntry> {
    use ArchClass::*;
    use ExpGroupVerdict::NotExponential;
    use FailureReason as F;

    let uniform = GroupPresentation::uniform;
    let mixed = |over: &[(i64, ArchClass)]| {
        GroupPresentation::with_overrides(
            ChainOrder::Finite(2),
            Rat,
            over.iter().map(|&(p, c)| (point(p), c)),
        )
        .expect("catalog presentations are valid")
    };
    let passing = check_exponential_group(&uniform(ChainOrder::Rationals, Rat), Rat);

    let raw: Vec<(GroupPresentation, ArchClass, ExpGroupVerdict, &'static str)> = vec![
        (
            uniform(ChainOrder::Finite(0), Rat),
            Rat,
            NotExponential(F::TrivialGroup),
            "the trivial group has an empty rank",
        ),
        (
            uniform(ChainOrder::Finite(1), Rat),
            Rat,
            NotExponential(F::RankFinite { points: 1 }),
            "finite rank",
        ),
        (
            uniform(ChainOrder::Finite(3), Rat),
            Rat,
            NotExponential(F::RankFinite { points: 3 }),
            "finite rank",
        ),
        (
            mixed(&[(1, RatRoot2)]),
            Rat,
            NotExponential(F::ComponentsNotAllIsomorphic {
                first: (point(0), Rat),
                second: (point(1), RatRoot2),
            }),
            "divisible components that are not all isomorphic",
        ),
        (
            uniform(ChainOrder::Rationals, Rat),
            RatRoot2,
            NotExponential(F::ComponentNotIsomorphicToTarget {
                point: point(0),
                component: Rat,
                target: RatRoot2,
            }),
            "residue field additive group not isomorphic to the components",
        ),
        (
            mixed(&[(1, Int)]),
            Rat,
            NotExponential(F::NotDivisible {
                point: point(1),
                class: Int,
            }),
            "a non-divisible component",
        ),
        (
            uniform(ChainOrder::Rationals, Int),
            Int,
            NotExponential(F::NotDivisible {
                point: point(0),
                class: Int,
            }),
            "a non-divisible component",
        ),
        (
            uniform(ChainOrder::Integers, Rat),
            Rat,
            NotExponential(F::RankNotDense),
            "rank is a discrete order",
        ),
        (
            uniform(ChainOrder::Rationals, Rat),
            Rat,
            passing.clone(),
            "dense rank without endpoints, uniform components equal to the target",
        ),
        (
            uniform(ChainOrder::Rationals, RatRoot2),
            RatRoot2,
            passing,
            "dense rank without endpoints, uniform components equal to the target",
        ),
    ];
    raw.into_iter()
        .map(|(group, target, expected, note)| {
            let observed = check_exponential_group(&group, target);
            CatalogEntry {
                group,
                target,
                expected,
                note,
                observed,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(src: &str) -> GroupPresentation {
        crate::syntax::parse_presentation(src).unwrap()
    }

    #[test]
    fn verdict_examples() {
        assert_eq!(
            check_exponential_group(&g("HahnSum(Finite(1); Rat)"), ArchClass::Rat),
            ExpGroupVerdict::NotExponential(FailureReason::RankFinite { points: 1 })
        );
        assert_eq!(
            check_exponential_group(&g("HahnSum(Rationals; Rat)"), ArchClass::RatRoot2).failure().map(FailureReason::tag),
            Some("ComponentNotIsomorphicToTarget")
        );
        assert!(matches!(
            check_exponential_group(&g("HahnSum(Rationals; Rat)"), ArchClass::Rat),
            ExpGroupVerdict::PassesNecessaryConditions(_)
        ));
        assert_eq!(
            check_exponential_group(&g("HahnSum(Finite(2); Rat, 1:RatRoot2)"), ArchClass::Rat)
                .failure()
                .map(FailureReason::tag),
            Some("ComponentsNotAllIsomorphic")
        );
        assert_eq!(
            check_exponential_group(&g("HahnSum(Finite(2); Rat, 1:Int)"), ArchClass::Rat)
                .failure()
                .map(FailureReason::tag),
            Some("NotDivisible")
        );
    }

    #[test]
    fn passing_reports_the_undecided_isomorphism() {
        let v = check_exponential_group(&g("HahnSum(Rationals; Rat)"), ArchClass::Rat);
        let ExpGroupVerdict::PassesNecessaryConditions(checks) = v else {
            panic!("expected a pass");
        };
        assert_eq!(
            checks.last().unwrap().status,
            CheckStatus::NotDecided
        );
    }

    #[test]
    fn ipa_examples() {
        let spec = |group: &str, full| FieldSpec {
            field: FieldClass::Rat,
            group: g(group),
            full_power_series: full,
        };
        let c = ipa_verdict(&spec("HahnSum(Finite(1); Rat)", false), ArchClass::Rat).unwrap();
        assert_eq!(c.verdict, IpaVerdict::NoIPA);
        assert_eq!(c.rule, Some(Rule::ValueGroupNotExponential));
        assert_eq!(c.witness, Witness::Failure(FailureReason::RankFinite { points: 1 }));

        let c = ipa_verdict(&spec("HahnSum(Rationals; Rat)", true), ArchClass::Rat).unwrap();
        assert_eq!(c.rule, Some(Rule::MaximallyValued));
        assert_eq!(c.caveats.len(), 1);

        let c = ipa_verdict(&spec("HahnSum(Rationals; Rat)", false), ArchClass::Rat).unwrap();
        assert_eq!(c.verdict, IpaVerdict::Inconclusive);
        assert!(c.revalidate());

        assert!(matches!(
            ipa_verdict(&spec("HahnSum(Rationals; Rat)", false), ArchClass::RatRoot2),
            Err(Error::ResidueMismatch { .. })
        ));
    }

    #[test]
    fn axioms_small_bounds() {
        let r = exp_axioms_check(1000).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.facts.len(), 5);
        assert!(exp_axioms_check(1).is_err());
    }

    #[test]
    fn catalog_is_self_consistent() {
        let cat = catalog_examples();
        assert!(cat.iter().all(CatalogEntry::matches));
        for e in &cat {
            if let Some(r) = e.expected.failure() {
                assert!(r.revalidate(&e.group, e.target), "{r} on {}", e.group);
            }
        }
    }

    #[test]
    fn witnesses_do_not_revalidate_on_the_wrong_group() {
        let r = FailureReason::RankFinite { points: 1 };
        assert!(!r.revalidate(&g("HahnSum(Rationals; Rat)"), ArchClass::Rat));
        let r = FailureReason::NotDivisible {
            point: point(0),
            class: ArchClass::Int,
        };
        assert!(!r.revalidate(&g("HahnSum(Finite(2); Rat, 1:Int)"), ArchClass::Rat));
    }
}
