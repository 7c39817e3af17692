//! Seeded random generators for scalars, group elements and series.
//!
//! Values are drawn from small grids so that sums and products regularly
//! collide and cancel, which is where canonicalization bugs live.

use std::sync::Arc;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group::{ArchClass, ChainOrder, ChainPoint, GroupElement, GroupPresentation};
use crate::scalar::{FieldClass, Scalar};
use crate::series::Series;

pub struct Sampler {
    rng: ChaCha8Rng,
    field: FieldClass,
    group: Arc<GroupPresentation>,
    /// Upper bound on the number of terms in a sampled series.
    pub max_terms: usize,
}

impl Sampler {
    pub fn new(seed: u64, field: FieldClass, group: Arc<GroupPresentation>) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            field,
            group,
            max_terms: 4,
        }
    }

    pub fn field(&self) -> FieldClass {
        self.field
    }

    pub fn group(&self) -> &Arc<GroupPresentation> {
        &self.group
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn small_rational(&mut self, max_num: i64, max_den: i64) -> BigRational {
        let n = self.rng.gen_range(-max_num..=max_num);
        let d = self.rng.gen_range(1..=max_den);
        BigRational::new(n.into(), d.into())
    }

    /// A scalar of the sampler's field, possibly zero.
    pub fn scalar(&mut self) -> Scalar {
        let a = self.small_rational(6, 4);
        if self.field == FieldClass::Root2 && self.rng.gen_bool(0.5) {
            Scalar::new(a, self.small_rational(4, 3))
        } else {
            Scalar::rational(a)
        }
    }

    pub fn nonzero_scalar(&mut self) -> Scalar {
        loop {
            let s = self.scalar();
            if !s.is_zero() {
                return s;
            }
        }
    }

    pub fn chain_point(&mut self) -> Option<ChainPoint> {
        match self.group.chain() {
            ChainOrder::Finite(0) => None,
            ChainOrder::Finite(n) => Some(ChainPoint::index(self.rng.gen_range(0..n.min(8)) as i64)),
            ChainOrder::Integers => Some(ChainPoint::index(self.rng.gen_range(-3..=3))),
            ChainOrder::Rationals => Some(ChainPoint::new(BigRational::new(
                self.rng.gen_range(-4..=4).into(),
                2.into(),
            ))),
        }
    }

    fn component_value(&mut self, class: ArchClass) -> Scalar {
        match class {
            ArchClass::Int => Scalar::from_int(self.rng.gen_range(-3..=3)),
            ArchClass::Rat => Scalar::rational(self.small_rational(3, 3)),
            ArchClass::RatRoot2 => {
                let a = self.small_rational(3, 2);
                if self.rng.gen_bool(0.3) {
                    Scalar::new(a, self.small_rational(2, 2))
                } else {
                    Scalar::rational(a)
                }
            }
        }
    }

    /// A group element with up to two support points.
    pub fn group_element(&mut self) -> GroupElement {
        let k = self.rng.gen_range(0..=2);
        let mut terms = Vec::new();
        for _ in 0..k {
            if let Some(p) = self.chain_point() {
                let v = self.component_value(self.group.component_at(&p));
                terms.push((p, v));
            }
        }
        GroupElement::from_terms(self.group.clone(), terms).expect("sampled inside the group")
    }

    pub fn positive_group_element(&mut self) -> Option<GroupElement> {
        if self.group.is_trivial() {
            return None;
        }
        loop {
            let g = self.group_element();
            if g.is_positive() {
                return Some(g);
            }
        }
    }

    pub fn series(&mut self) -> Series {
        let k = self.rng.gen_range(0..=self.max_terms);
        self.series_with_terms(k)
    }

    pub fn series_with_terms(&mut self, k: usize) -> Series {
        let terms: Vec<_> = (0..k)
            .map(|_| (self.group_element(), self.nonzero_scalar()))
            .collect();
        Series::from_terms(self.field, self.group.clone(), terms).expect("sampled inside carriers")
    }

    pub fn nonzero_series(&mut self) -> Series {
        loop {
            let s = self.series();
            if !s.is_zero() {
                return s;
            }
        }
    }

    pub fn positive_series(&mut self) -> Series {
        let s = self.nonzero_series();
        if s.is_positive() {
            s
        } else {
            s.neg()
        }
    }

    /// A series with only negative exponents plus a rational integer: a
    /// member of the canonical integer part.
    pub fn ip_series(&mut self) -> Series {
        let k = self.rng.gen_range(0..=self.max_terms);
        let mut terms = Vec::new();
        for _ in 0..k {
            let g = self.group_element();
            if g.is_negative() {
                terms.push((g, self.nonzero_scalar()));
            }
        }
        let n = self.rng.gen_range(-5..=5);
        terms.push((GroupElement::zero(self.group.clone()), Scalar::from_int(n)));
        Series::from_terms(self.field, self.group.clone(), terms).expect("sampled inside carriers")
    }
}
