//! Rational self-maps of P¹ given by a pair of coprime binary forms.
//!
//! A map `m = (N, D)` sends `x` to `N(x)/D(x)`; on homogeneous coordinates it
//! is `(x₀ : x₁) ↦ (D(x₀, x₁) : N(x₀, x₁))`, matching the point convention of
//! [`ProjPoint`] where the affine value is `x₁/x₀`.

use serde_json::{json, Value};
use thiserror::Error;

use crate::field::{Field, FieldElement, FieldError, ProjPoint};
use crate::poly::{BinaryForm, PolyError, RootSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("numerator and denominator share the factor {0:?}")]
    CommonFactor(BinaryForm),
    #[error("denominator is the zero form")]
    ZeroDenominator,
    #[error("numerator has degree {0}, denominator degree {1}")]
    DegreeMismatch(usize, usize),
    #[error("the homogeneous Jacobian vanishes identically")]
    InseparableMap,
    #[error("Möbius matrix is singular")]
    SingularMobius,
}

impl From<FieldError> for MapError {
    fn from(e: FieldError) -> Self {
        MapError::Poly(e.into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSelfMap {
    num: BinaryForm,
    den: BinaryForm,
}

impl RationalSelfMap {
    /// Builds the map and cancels any common factor of `num` and `den`.
    pub fn new(num: BinaryForm, den: BinaryForm) -> Result<Self, MapError> {
        let (num, den, _) = Self::split_common(num, den)?;
        Ok(RationalSelfMap { num, den })
    }

    /// Like [`RationalSelfMap::new`], but a nontrivial common factor is an error.
    pub fn new_coprime(num: BinaryForm, den: BinaryForm) -> Result<Self, MapError> {
        let (n, d, g) = Self::split_common(num, den)?;
        if g.degree() > 0 {
            return Err(MapError::CommonFactor(g));
        }
        Ok(RationalSelfMap { num: n, den: d })
    }

    fn split_common(
        num: BinaryForm,
        den: BinaryForm,
    ) -> Result<(BinaryForm, BinaryForm, BinaryForm), MapError> {
        if num.degree() != den.degree() {
            return Err(MapError::DegreeMismatch(num.degree(), den.degree()));
        }
        if num.field() != den.field() {
            return Err(FieldError::DescriptorMismatch(num.field(), den.field()).into());
        }
        if den.is_zero() {
            return Err(MapError::ZeroDenominator);
        }
        let g = num.gcd(&den)?;
        if g.degree() == 0 {
            return Ok((num, den, g));
        }
        Ok((num.exact_div(&g)?, den.exact_div(&g)?, g))
    }

    pub fn field(&self) -> Field {
        self.num.field()
    }

    pub fn degree(&self) -> usize {
        self.num.degree()
    }

    pub fn numerator(&self) -> &BinaryForm {
        &self.num
    }

    pub fn denominator(&self) -> &BinaryForm {
        &self.den
    }

    pub fn evaluate(&self, p: &ProjPoint) -> ProjPoint {
        ProjPoint::new(&self.den.eval(p), &self.num.eval(p))
            .expect("coprime forms have no common zero")
    }

    /// `t ∘ self`.
    pub fn post_compose(&self, t: &Mobius) -> Result<Self, MapError> {
        let [a, b, c, d] = &t.m;
        let den = self.den.scale(a).checked_add(&self.num.scale(b))?;
        let num = self.den.scale(c).checked_add(&self.num.scale(d))?;
        Self::new(num, den)
    }

    /// `self ∘ t`.
    pub fn pre_compose(&self, t: &Mobius) -> Result<Self, MapError> {
        let [a, b, c, d] = &t.m;
        Self::new(
            self.num.substitute(a, b, c, d),
            self.den.substitute(a, b, c, d),
        )
    }

    /// `∂N/∂x₀·∂D/∂x₁ − ∂N/∂x₁·∂D/∂x₀`, a form of degree `2d − 2`.
    pub fn jacobian(&self) -> Result<BinaryForm, MapError> {
        if self.degree() == 0 {
            return Err(MapError::InseparableMap);
        }
        let left = self.num.d_dx0().checked_mul(&self.den.d_dx1())?;
        let right = self.num.d_dx1().checked_mul(&self.den.d_dx0())?;
        Ok(left.checked_sub(&right)?)
    }

    /// Zero divisor of the Jacobian: the ramification divisor, with the
    /// degree of any part that does not split over the base field.
    pub fn critical_divisor(&self) -> Result<RootSet, MapError> {
        let j = self.jacobian()?;
        if j.is_zero() {
            return Err(MapError::InseparableMap);
        }
        Ok(j.roots_in_field()?)
    }

    /// Distinct images of the base-field critical points, sorted.
    pub fn branch_points(&self) -> Result<Vec<ProjPoint>, MapError> {
        let mut out: Vec<ProjPoint> = self
            .critical_divisor()?
            .roots
            .iter()
            .map(|(p, _)| self.evaluate(p))
            .collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Preimages of `q` with multiplicity; the residual counts preimages
    /// outside the base field.
    pub fn fiber(&self, q: &ProjPoint) -> Result<RootSet, MapError> {
        let (q0, q1) = q.coords();
        let form = self.num.scale(q0).checked_sub(&self.den.scale(q1))?;
        Ok(form.roots_in_field()?)
    }

    /// Equality as maps: same degree and `N·D′ = N′·D`.
    pub fn same_map(&self, other: &Self) -> bool {
        self.degree() == other.degree()
            && self.field() == other.field()
            && self.num.checked_mul(&other.den).ok() == other.num.checked_mul(&self.den).ok()
    }

    pub fn to_json(&self) -> Value {
        json!({ "num": self.num.to_json(), "den": self.den.to_json(), "deg": self.degree() })
    }
}

/// `(x₀ : x₁) ↦ (a·x₀ + b·x₁ : c·x₀ + d·x₁)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mobius {
    m: [FieldElement; 4],
}

impl Mobius {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement) -> Result<Self, MapError> {
        let det = a.checked_mul(&d)?.checked_sub(&b.checked_mul(&c)?)?;
        if det.is_zero() {
            return Err(MapError::SingularMobius);
        }
        Ok(Mobius { m: [a, b, c, d] })
    }

    pub fn identity(field: Field) -> Self {
        Mobius {
            m: [field.one(), field.zero(), field.zero(), field.one()],
        }
    }

    /// `(x₀ : x₁ − s·x₀)`, i.e. `x ↦ x − s`.
    pub fn translate(s: &FieldElement) -> Self {
        let f = s.field();
        Mobius {
            m: [f.one(), f.zero(), -s, f.one()],
        }
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let [a, b, c, d] = &self.m;
        let (x0, x1) = p.coords();
        ProjPoint::new(&(&(a * x0) + &(b * x1)), &(&(c * x0) + &(d * x1)))
            .expect("invertible matrix")
    }

    /// The transformation as a degree-1 self-map.
    pub fn as_map(&self) -> RationalSelfMap {
        let [a, b, c, d] = &self.m;
        RationalSelfMap {
            num: BinaryForm::linear(c, d),
            den: BinaryForm::linear(a, b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn pt(n: i64, d: i64) -> ProjPoint {
        ProjPoint::affine(q().ratio(n, d).unwrap())
    }

    fn inf() -> ProjPoint {
        ProjPoint::infinity(q())
    }

    /// u for λ = 3, p₁ = 5: 3(x − 5)x² / (x³ − 5x² − 14x + 6).
    fn sample_u() -> RationalSelfMap {
        let num = BinaryForm::homogenize(&Polynomial::from_ints(q(), &[0, 0, -15, 3]));
        let den = BinaryForm::homogenize(&Polynomial::from_ints(q(), &[6, -14, -5, 1]));
        RationalSelfMap::new_coprime(num, den).unwrap()
    }

    #[test]
    fn make_map_reduces() {
        // (x₁², x₀x₁) → (x₁, x₀)
        let n = BinaryForm::new(2, Polynomial::from_ints(q(), &[0, 0, 1])).unwrap();
        let d = BinaryForm::new(2, Polynomial::from_ints(q(), &[0, 1])).unwrap();
        let m = RationalSelfMap::new(n.clone(), d.clone()).unwrap();
        assert_eq!(m.degree(), 1);
        assert!(m.same_map(&Mobius::identity(q()).as_map()));
        assert!(matches!(
            RationalSelfMap::new_coprime(n.clone(), d),
            Err(MapError::CommonFactor(g)) if g.degree() == 1
        ));
        let zero = BinaryForm::new(2, Polynomial::zero(q())).unwrap();
        assert_eq!(RationalSelfMap::new(n, zero), Err(MapError::ZeroDenominator));
        assert_eq!(sample_u().degree(), 3);
    }

    #[test]
    fn evaluate_sample() {
        let u = sample_u();
        assert_eq!(u.evaluate(&inf()), pt(3, 1));
        assert_eq!(u.evaluate(&pt(0, 1)), pt(0, 1));
        assert_eq!(u.evaluate(&pt(1, 1)), pt(1, 1));
        assert_eq!(u.evaluate(&pt(3, 1)), pt(1, 1));
    }

    #[test]
    fn compositions() {
        let u = sample_u();
        let grave = u.post_compose(&Mobius::translate(&q().one())).unwrap();
        assert_eq!(grave.evaluate(&pt(1, 1)), pt(0, 1));
        assert_eq!(grave.evaluate(&pt(0, 1)), pt(-1, 1));
        let hat = u.post_compose(&Mobius::translate(&q().int(3))).unwrap();
        assert_eq!(hat.evaluate(&inf()), pt(0, 1));
        assert_eq!(hat.degree(), 3);
        assert!(u.post_compose(&Mobius::identity(q())).unwrap().same_map(&u));
        assert!(u.pre_compose(&Mobius::identity(q())).unwrap().same_map(&u));
        // x ↦ 1/x swaps 0 and ∞
        let inv = Mobius::new(q().zero(), q().one(), q().one(), q().zero()).unwrap();
        let v = u.pre_compose(&inv).unwrap();
        assert_eq!(v.evaluate(&inf()), u.evaluate(&pt(0, 1)));
        assert_eq!(
            Mobius::new(q().one(), q().one(), q().one(), q().one()),
            Err(MapError::SingularMobius)
        );
    }

    #[test]
    fn critical_divisor_sample() {
        let crit = sample_u().critical_divisor().unwrap();
        assert_eq!(crit.roots, vec![(pt(0, 1), 1), (pt(1, 1), 1), (pt(15, 7), 1), (inf(), 1)]);
        assert_eq!(crit.residual_degree, 0);
        let branch = sample_u().branch_points().unwrap();
        assert_eq!(branch, vec![pt(0, 1), pt(1, 1), pt(1125, 1061), pt(3, 1)]);
    }

    #[test]
    fn mobius_has_no_critical_points() {
        let m = Mobius::new(q().int(2), q().int(1), q().int(5), q().int(3)).unwrap().as_map();
        let crit = m.critical_divisor().unwrap();
        assert!(crit.roots.is_empty());
        assert_eq!(crit.total_degree(), 0);
        assert!(m.branch_points().unwrap().is_empty());
    }

    #[test]
    fn constant_map_is_inseparable() {
        let c = RationalSelfMap::new(
            BinaryForm::constant(q().int(2)),
            BinaryForm::constant(q().one()),
        )
        .unwrap();
        assert_eq!(c.critical_divisor(), Err(MapError::InseparableMap));
    }

    #[test]
    fn fibers_sample() {
        let u = sample_u();
        let f0 = u.fiber(&pt(0, 1)).unwrap();
        assert_eq!(f0.roots, vec![(pt(0, 1), 2), (pt(5, 1), 1)]);
        let f1 = u.fiber(&pt(1, 1)).unwrap();
        assert_eq!(f1.roots, vec![(pt(1, 1), 2), (pt(3, 1), 1)]);
        let fl = u.fiber(&pt(3, 1)).unwrap();
        assert_eq!(fl.roots, vec![(pt(3, 7), 1), (inf(), 2)]);
        let finf = u.fiber(&inf()).unwrap();
        assert_eq!(finf.total_degree(), 3);
    }

    fn mobius_101() -> impl Strategy<Value = Mobius> {
        let f = Field::prime(101).unwrap();
        (0i64..101, 0i64..101, 0i64..101, 0i64..101)
            .prop_filter_map("singular", move |(a, b, c, d)| {
                Mobius::new(f.int(a), f.int(b), f.int(c), f.int(d)).ok()
            })
    }

    fn map_101() -> impl Strategy<Value = RationalSelfMap> {
        let f = Field::prime(101).unwrap();
        (prop::collection::vec(0i64..101, 4), prop::collection::vec(0i64..101, 4))
            .prop_filter_map("degenerate", move |(n, d)| {
                let n = BinaryForm::new(3, Polynomial::from_ints(f, &n)).ok()?;
                let d = BinaryForm::new(3, Polynomial::from_ints(f, &d)).ok()?;
                RationalSelfMap::new_coprime(n, d).ok()
            })
    }

    proptest! {
        #[test]
        fn post_compose_commutes_with_evaluation(m in map_101(), t in mobius_101(), x in 0i64..102) {
            let f = m.field();
            let p = if x == 101 { ProjPoint::infinity(f) } else { ProjPoint::affine(f.int(x)) };
            let composed = m.post_compose(&t).unwrap();
            prop_assert_eq!(composed.evaluate(&p), t.apply(&m.evaluate(&p)));
            prop_assert_eq!(composed.degree(), m.degree());
            let pre = m.pre_compose(&t).unwrap();
            prop_assert_eq!(pre.evaluate(&p), m.evaluate(&t.apply(&p)));
        }

        #[test]
        fn riemann_hurwitz(m in map_101()) {
            let crit = m.critical_divisor().unwrap();
            prop_assert_eq!(crit.total_degree(), 2 * m.degree() - 2);
        }

        #[test]
        fn fibers_have_full_degree(m in map_101(), y in 0i64..102) {
            let f = m.field();
            let q = if y == 101 { ProjPoint::infinity(f) } else { ProjPoint::affine(f.int(y)) };
            let fib = m.fiber(&q).unwrap();
            prop_assert_eq!(fib.total_degree(), m.degree());
            for (p, _) in &fib.roots {
                prop_assert_eq!(m.evaluate(p), q.clone());
            }
        }
    }
}
