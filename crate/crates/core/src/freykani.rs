//! Genus-2 degree-3 covers of the Legendre curve `E_λ` built from the
//! degree-3 self-map
//!
//! ```text
//! u(x) = λ(x − p₁)x² / g(x),   g(x) = x³ − p₁x² + (−2λp₁ + 2p₁ + 3λ − 3)x + (λ − 1)(p₁ − 2)
//! ```
//!
//! ramified at 0, 1, ∞ with `u(0) = 0`, `u(1) = 1`, `u(∞) = λ`. The genus-2
//! curve is `C: y² = (x − p₁)(x − p₁ + 2)((2p₁ − 3)x − p₁ + 2)·g(x)` and the
//! cover is `f±(x, y) = (g(x) : λ(x − p₁)x² : ±λ(λ − 1)·x(x − 1)·y / g(x))`.
//!
//! Everything here is exact; every verifier compares fully expanded
//! polynomials or canonical field elements.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::field::{Field, FieldElement, FieldError, ProjPoint};
use crate::poly::{BinaryForm, PolyError, Polynomial, RootSet};
use crate::ratmap::{MapError, Mobius, RationalSelfMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("λ = {0} is not allowed (λ must differ from 0 and 1)")]
    BadLambda(String),
    #[error("p₁ = {0} gives a map of degree below 3")]
    DegreeDrop(String),
    #[error("parameter is not a point of the moduli space: {0}")]
    NotInModuli(Membership),
    #[error("sextic for p₁ = {0} is not squarefree")]
    SingularSextic(String),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Where a parameter `p₁ ∈ P¹` sits relative to `P¹ ∖ ({1, 2, ∞} ∪ Z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Membership {
    InModuli,
    ExcludedBasePoint,
    ExcludedZ,
    ExcludedInfinity,
}

impl Membership {
    pub fn as_str(&self) -> &'static str {
        match self {
            Membership::InModuli => "InModuli",
            Membership::ExcludedBasePoint => "ExcludedBasePoint",
            Membership::ExcludedZ => "ExcludedZ",
            Membership::ExcludedInfinity => "ExcludedInfinity",
        }
    }
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_str(&self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// `E_λ: y² = x(x − 1)(x − λ)`, origin at `(0 : 0 : 1)` in `(x₀ : x₁ : y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LegendreCurve {
    lambda: FieldElement,
}

impl LegendreCurve {
    pub fn new(lambda: FieldElement) -> Result<Self, CoverError> {
        if lambda.is_zero() || lambda.is_one() {
            return Err(CoverError::BadLambda(lambda.to_string()));
        }
        Ok(LegendreCurve { lambda })
    }

    pub fn lambda(&self) -> &FieldElement {
        &self.lambda
    }

    pub fn field(&self) -> Field {
        self.lambda.field()
    }

    /// x-coordinates of the nontrivial 2-torsion points.
    pub fn two_torsion_x(&self) -> [FieldElement; 3] {
        let f = self.field();
        [f.zero(), f.one(), self.lambda.clone()]
    }

    /// `x(x − 1)(x − λ)`.
    pub fn cubic(&self) -> Polynomial {
        let f = self.field();
        &(&Polynomial::x(f) * &Polynomial::linear_root(&f.one()))
            * &Polynomial::linear_root(&self.lambda)
    }

    pub fn contains(&self, x: &FieldElement, y: &FieldElement) -> bool {
        y * y == self.cubic().eval(x)
    }
}

/// The monic quartic `(λ − 1)(2t − 3)³ + t³(t − 2)` whose roots form `Z`.
pub fn z_quartic(lambda: &FieldElement) -> Polynomial {
    let f = lambda.field();
    let two_t_minus_3 = Polynomial::from_ints(f, &[-3, 2]);
    let t3_t_minus_2 = Polynomial::from_ints(f, &[0, 0, 0, -2, 1]);
    &two_t_minus_3.pow(3).scale(&(lambda - &f.one())) + &t3_t_minus_2
}

/// Every scalar attached to one `(λ, p₁)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverParams {
    pub lambda: FieldElement,
    pub p1: FieldElement,
    pub g2: FieldElement,
    pub g1: FieldElement,
    pub g0: FieldElement,
    /// `g(1, 1)`, evaluated from the cubic.
    pub g11: FieldElement,
    pub p2: FieldElement,
    pub p3: ProjPoint,
    pub delta: ProjPoint,
    pub mu: ProjPoint,
    pub zeta: ProjPoint,
    /// The Z quartic evaluated at `p₁`.
    pub zq: FieldElement,
    pub c: FieldElement,
    pub d: FieldElement,
    pub e: FieldElement,
    /// `λ − ζ`; absent when `ζ = ∞`.
    pub f: Option<FieldElement>,
    pub membership: Membership,
}

impl CoverParams {
    pub fn field(&self) -> Field {
        self.lambda.field()
    }

    /// `g(1, x) = x³ + g₂x² + g₁x + g₀`.
    pub fn g(&self) -> Polynomial {
        Polynomial::new(
            self.field(),
            vec![self.g0.clone(), self.g1.clone(), self.g2.clone(), self.field().one()],
        )
        .expect("coefficients share the field")
    }

    /// `λ(x − p₁)x²`.
    pub fn x1_poly(&self) -> Polynomial {
        let f = self.field();
        Polynomial::new(
            f,
            vec![f.zero(), f.zero(), -&(&self.lambda * &self.p1), self.lambda.clone()],
        )
        .expect("coefficients share the field")
    }

    /// `(p₁ − 2)/(2p₁ − 3)`, the root of the linear factor over λ (∞ at p₁ = 3/2).
    pub fn third_weierstrass(&self) -> ProjPoint {
        let f = self.field();
        ProjPoint::from_fraction(&(&self.p1 - &f.int(2)), &(&(&f.int(2) * &self.p1) - &f.int(3)))
            .expect("p₁ − 2 and 2p₁ − 3 never vanish together")
    }

    pub fn pattern(&self) -> RamificationPattern {
        let f = self.field();
        if self.delta.is_infinity() {
            RamificationPattern::TripleOverLambda
        } else if self.delta == ProjPoint::affine(f.zero()) {
            RamificationPattern::TripleOverZero
        } else if self.delta == ProjPoint::affine(f.one()) {
            RamificationPattern::TripleOverOne
        } else {
            RamificationPattern::Simple
        }
    }
}

/// How the fourth critical point `δ` sits relative to 0, 1, ∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RamificationPattern {
    /// Four simple critical points.
    Simple,
    /// `δ = 0` (p₁ = 0): ramification index 3 over 0.
    TripleOverZero,
    /// `δ = 1` (p₁ = 3): ramification index 3 over 1.
    TripleOverOne,
    /// `δ = ∞` (p₁ = 3/2): ramification index 3 over λ.
    TripleOverLambda,
}

impl RamificationPattern {
    pub fn is_degenerate(&self) -> bool {
        *self != RamificationPattern::Simple
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            RamificationPattern::Simple => "simple",
            RamificationPattern::TripleOverZero => "triple_over_0",
            RamificationPattern::TripleOverOne => "triple_over_1",
            RamificationPattern::TripleOverLambda => "triple_over_lambda",
        }
    }
}

pub fn membership(lambda: &FieldElement, p1: &ProjPoint) -> Result<Membership, CoverError> {
    let curve = LegendreCurve::new(lambda.clone())?;
    let Some(p1) = p1.value() else {
        return Ok(Membership::ExcludedInfinity);
    };
    if p1.field() != curve.field() {
        return Err(FieldError::DescriptorMismatch(curve.field(), p1.field()).into());
    }
    if p1.is_one() || *p1 == p1.field().int(2) {
        return Ok(Membership::ExcludedBasePoint);
    }
    if z_quartic(lambda).eval(p1).is_zero() {
        return Ok(Membership::ExcludedZ);
    }
    Ok(Membership::InModuli)
}

pub fn derive_params(lambda: &FieldElement, p1: &FieldElement) -> Result<CoverParams, CoverError> {
    LegendreCurve::new(lambda.clone())?;
    let f = lambda.field();
    if p1.field() != f {
        return Err(FieldError::DescriptorMismatch(f, p1.field()).into());
    }
    let int = |n| f.int(n);
    let one = f.one();
    let lam_m1 = lambda - &one;
    let p1_m2 = p1 - &int(2);
    let two_p1_m3 = &(&int(2) * p1) - &int(3);

    let g2 = -p1;
    let g1 = &(&(&(&int(-2) * p1) * lambda) + &(&int(2) * p1)) + &(&(&int(3) * lambda) - &int(3));
    let g0 = &lam_m1 * &p1_m2;
    let g11 = &(&(&one + &g2) + &g1) + &g0;

    let p2 = p1_m2.clone();
    let p3 = ProjPoint::from_fraction(&two_p1_m3, &p1_m2)?;
    let delta = ProjPoint::from_fraction(&(p1 * &p1_m2), &two_p1_m3)?;
    let mu = match delta.value() {
        Some(dv) => ProjPoint::affine(p1 - &(&int(2) * dv)),
        None => ProjPoint::infinity(f),
    };
    let p1_cubed = p1.pow(3);
    let zq = &(&lam_m1 * &two_p1_m3.pow(3)) + &(&p1_cubed * &p1_m2);
    let zeta = ProjPoint::from_fraction(&(&(lambda * &p1_cubed) * &p1_m2), &zq)?;
    let f_aux = zeta.value().map(|z| lambda - z);

    Ok(CoverParams {
        membership: membership(lambda, &ProjPoint::affine(p1.clone()))?,
        lambda: lambda.clone(),
        p1: p1.clone(),
        e: lambda * &g0,
        c: lambda.clone(),
        d: lam_m1,
        g2,
        g1,
        g0,
        g11,
        p2,
        p3,
        delta,
        mu,
        zeta,
        zq,
        f: f_aux,
    })
}

/// `u = (λ(x₁ − p₁x₀)x₁² : g(x₀, x₁))` as a self-map (value = numerator / denominator).
pub fn build_cover_u(params: &CoverParams) -> Result<RationalSelfMap, CoverError> {
    let num = BinaryForm::new(3, params.x1_poly())?;
    let den = BinaryForm::new(3, params.g())?;
    match RationalSelfMap::new_coprime(num, den) {
        Err(MapError::CommonFactor(_)) => Err(CoverError::DegreeDrop(params.p1.to_string())),
        other => Ok(other?),
    }
}

fn linear_form(a: &FieldElement, b: &FieldElement) -> BinaryForm {
    // a·x₁ + b·x₀, kept at declared degree 1 even when a = 0
    BinaryForm::new(1, Polynomial::linear(a, b)).expect("degree ≤ 1")
}

/// The degree-6 form `(x − p₁)(x − p₁ + 2)((2p₁ − 3)x − p₁ + 2)·g(x)`,
/// without any admissibility check.
pub fn sextic_form(params: &CoverParams) -> BinaryForm {
    let f = params.field();
    let one = f.one();
    let p1 = &params.p1;
    let l1 = linear_form(&one, &-p1);
    let l2 = linear_form(&one, &(&f.int(2) - p1));
    let l3 = linear_form(&(&(&f.int(2) * p1) - &f.int(3)), &(&f.int(2) - p1));
    let g = BinaryForm::new(3, params.g()).expect("cubic");
    [l2, l3, g]
        .iter()
        .fold(l1, |acc, l| acc.checked_mul(l).expect("same field"))
}

fn require_moduli(params: &CoverParams) -> Result<(), CoverError> {
    match params.membership {
        Membership::InModuli => Ok(()),
        other => Err(CoverError::NotInModuli(other)),
    }
}

/// The curve `C` as a squarefree sextic binary form.
pub fn build_curve(params: &CoverParams) -> Result<BinaryForm, CoverError> {
    require_moduli(params)?;
    let sextic = sextic_form(params);
    if !sextic.is_squarefree()? {
        return Err(CoverError::SingularSextic(params.p1.to_string()));
    }
    Ok(sextic)
}

/// `C` together with `f± = (X₀ : X₁ : Ynum·y/X₀)` and the map `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Genus2Cover {
    pub params: CoverParams,
    pub sextic: BinaryForm,
    pub u: RationalSelfMap,
    pub x0: Polynomial,
    pub x1: Polynomial,
    /// `±λ(λ − 1)·x(x − 1)`, sign included.
    pub ynum: Polynomial,
    pub sign: Sign,
}

/// Image of a point of `C` on `E_λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurvePoint {
    Origin,
    Affine(FieldElement, FieldElement),
}

impl Genus2Cover {
    pub fn curve(&self) -> LegendreCurve {
        LegendreCurve::new(self.params.lambda.clone()).expect("validated at derivation")
    }

    /// `f±(x, y)` for an affine point `(x, y)` of `C`.
    ///
    /// Points over roots of `g` go to the origin: `u` sends them to ∞ and the
    /// only point of `E` over ∞ is `(0 : 0 : 1)`.
    pub fn image(&self, x: &FieldElement, y: &FieldElement) -> CurvePoint {
        let x0 = self.x0.eval(x);
        if x0.is_zero() {
            return CurvePoint::Origin;
        }
        let inv = x0.inv().expect("nonzero");
        let ex = &self.x1.eval(x) * &inv;
        let ey = &(&self.ynum.eval(x) * y) * &(&inv * &inv);
        CurvePoint::Affine(ex, ey)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "X0": self.x0.to_json(),
            "X1": self.x1.to_json(),
            "Ynum": self.ynum.to_json(),
            "sign": self.sign.as_str(),
        })
    }
}

pub fn build_cover_map(params: &CoverParams, sign: Sign) -> Result<Genus2Cover, CoverError> {
    let sextic = build_curve(params)?;
    let u = build_cover_u(params)?;
    let f = params.field();
    let lam = &params.lambda;
    let mut k = lam * &(lam - &f.one());
    if sign == Sign::Minus {
        k = -k;
    }
    let ynum = Polynomial::from_ints(f, &[0, -1, 1]).scale(&k);
    Ok(Genus2Cover {
        params: params.clone(),
        sextic,
        u,
        x0: params.g(),
        x1: params.x1_poly(),
        ynum,
        sign,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    Pass,
    Fail,
    Skipped(&'static str),
}

impl Check {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Check::Pass
        } else {
            Check::Fail
        }
    }

    pub fn is_fail(&self) -> bool {
        *self == Check::Fail
    }

    pub fn to_json(&self) -> Value {
        match self {
            Check::Pass => json!(true),
            Check::Fail => json!(false),
            Check::Skipped(_) => json!("skipped"),
        }
    }
}

/// Named sub-checks, kept in name order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub checks: BTreeMap<String, Check>,
}

impl CheckReport {
    fn put(&mut self, name: &str, check: Check) {
        self.checks.insert(name.to_string(), check);
    }

    fn put_bool(&mut self, name: &str, ok: bool) {
        self.put(name, Check::from_bool(ok));
    }

    pub fn all_passed(&self) -> bool {
        !self.checks.values().any(Check::is_fail)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, c)| c.is_fail())
            .map(|(n, _)| n.as_str())
            .collect()
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.get(name)
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }

    pub fn to_json(&self) -> Value {
        Value::Object(
            self.checks
                .iter()
                .map(|(k, v)| (k.clone(), v.to_json()))
                .collect::<Map<_, _>>(),
        )
    }
}

/// Exact checks of the closed-form relations between `λ`, `p₁` and the
/// coefficients of `g`. Holds for every `λ ∉ {0, 1}` and finite `p₁`.
pub fn verify_identities(params: &CoverParams) -> CheckReport {
    let f = params.field();
    let int = |n| f.int(n);
    let one = f.one();
    let lam = &params.lambda;
    let p1 = &params.p1;
    let lam_m1 = lam - &one;
    let g = params.g();
    let x1 = params.x1_poly();
    let mut r = CheckReport::default();

    // X₁ − λX₀ = −λ(1 − λ)((2p₁ − 3)x − p₁ + 2)
    let lhs = &x1 - &g.scale(lam);
    let lin = Polynomial::linear(&(&(&int(2) * p1) - &int(3)), &(&int(2) - p1));
    let rhs = lin.scale(&-&(lam * &(&one - lam)));
    r.put_bool("fiber_over_lambda_identity", lhs == rhs);

    // X₁ − X₀ = (λ − 1)(x − p₁ + 2)(x − 1)²
    let lhs = &x1 - &g;
    let x_m1 = Polynomial::linear_root(&one);
    let rhs = (&(&Polynomial::linear_root(&params.p2) * &x_m1) * &x_m1).scale(&lam_m1);
    r.put_bool("fiber_over_one_identity", lhs == rhs);

    r.put_bool("g_at_one_is_g11", g.eval(&one) == params.g11);
    r.put_bool(
        "p1_from_g_at_one",
        *p1 == &one - &params.g11.checked_div(lam).expect("λ ≠ 0"),
    );
    r.put_bool(
        "p2_from_g0",
        params.p2 == params.g0.checked_div(&lam_m1).expect("λ ≠ 1"),
    );
    if params.g0.is_zero() {
        r.put("p3_from_g_at_one", Check::Skipped("g0 = 0"));
    } else {
        let v = &one + &(&(&one - lam) * &params.g11).checked_div(&(lam * &params.g0)).unwrap();
        r.put_bool("p3_from_g_at_one", params.p3 == ProjPoint::affine(v));
    }
    r.put_bool("p1_equals_minus_g2", *p1 == -&params.g2);
    r.put_bool(
        "minus_g2_linear_relation",
        -&params.g2
            == &(&(&(&int(-2) * &lam_m1) + &params.p2) - &(lam * &params.p2)) + &(p1 * lam),
    );
    r.put_bool("p2_equals_p1_minus_2", params.p2 == p1 - &int(2));
    if params.p2.is_zero() {
        r.put("p3_closed_form", Check::Skipped("p1 = 2"));
    } else {
        let v = (&(&int(2) * p1) - &int(3)).checked_div(&params.p2).unwrap();
        r.put_bool("p3_closed_form", params.p3 == ProjPoint::affine(v));
    }
    r.put_bool("g0_closed_form", params.g0 == &lam_m1 * &params.p2);
    r.put_bool(
        "g1_closed_form",
        params.g1 == &(&(&params.g11 - &one) - &params.g2) - &params.g0,
    );
    // x₁²x₀ coefficients after moving 1 resp. λ to 0
    r.put_bool(
        "x1sq_x0_coefficient_shift_one",
        &(&int(-2) * &lam_m1) - &params.g0 == &(&params.g11 - lam) - &params.g2,
    );
    r.put_bool(
        "x1sq_x0_coefficient_shift_lambda",
        (&(&params.g11 - lam) - &(lam * &params.g2)).is_zero(),
    );
    r.put_bool("aux_c_d_e", params.c == *lam && params.d == lam_m1 && params.e == lam * &params.g0);
    r.put_bool(
        "aux_f",
        match (&params.f, params.zeta.value()) {
            (Some(fv), Some(z)) => *fv == lam - z,
            (None, None) => true,
            _ => false,
        },
    );

    // the shifted maps (x₀ : x₁ − x₀)∘u and (x₀ : x₁ − λx₀)∘u
    let n = BinaryForm::new(3, x1.clone()).unwrap();
    let dform = BinaryForm::new(3, g.clone()).unwrap();
    let x1_minus_x0 = linear_form(&one, &-&one);
    let grave = linear_form(&one, &-&params.p2)
        .checked_mul(&x1_minus_x0)
        .and_then(|a| a.checked_mul(&x1_minus_x0))
        .unwrap()
        .scale(&params.d);
    r.put_bool("shift_by_one_numerator", n.checked_sub(&dform).ok() == Some(grave));
    match params.p3.value() {
        None => r.put("shift_by_lambda_numerator", Check::Skipped("p3 = inf")),
        Some(p3) => {
            let x0_sq = BinaryForm::new(2, Polynomial::one(f)).unwrap();
            let hat = linear_form(p3, &-&one)
                .checked_mul(&x0_sq)
                .unwrap()
                .scale(&params.e);
            r.put_bool(
                "shift_by_lambda_numerator",
                n.checked_sub(&dform.scale(lam)).ok() == Some(hat),
            );
        }
    }

    match build_cover_u(params) {
        Err(_) => {
            r.put("shifted_map_values", Check::Skipped("degree drops"));
            r.put("u_values", Check::Skipped("degree drops"));
        }
        Ok(u) => {
            let pt = |v: FieldElement| ProjPoint::affine(v);
            let zero = pt(f.zero());
            let onep = pt(one.clone());
            let inf = ProjPoint::infinity(f);
            r.put_bool(
                "u_values",
                u.evaluate(&zero) == zero
                    && u.evaluate(&onep) == onep
                    && u.evaluate(&inf) == pt(lam.clone()),
            );
            let grave = u.post_compose(&Mobius::translate(&one)).unwrap();
            let hat = u.post_compose(&Mobius::translate(lam)).unwrap();
            r.put_bool(
                "shifted_map_values",
                grave.evaluate(&zero) == pt(-&one)
                    && grave.evaluate(&onep) == zero
                    && grave.evaluate(&inf) == pt(lam_m1.clone())
                    && hat.evaluate(&zero) == pt(-lam)
                    && hat.evaluate(&onep) == pt(&one - lam)
                    && hat.evaluate(&inf) == zero,
            );
        }
    }
    r
}

/// `λ²(λ − 1)²·s(x)·x²(x − 1)² = g·X₁·(X₁ − X₀)·(X₁ − λX₀)`: the relation
/// `Y²X₀ = X₁(X₁ − X₀)(X₁ − λX₀)` with `Y = Ynum·y/g` and `y² = s(x)`,
/// denominators cleared.
pub fn verify_function_field(params: &CoverParams, sign: Sign) -> Result<bool, CoverError> {
    let cover = build_cover_map(params, sign)?;
    let s = cover.sextic.affine();
    let lhs = &(&cover.ynum * &cover.ynum) * s;
    let rhs = &(&(&cover.x0 * &cover.x1) * &(&cover.x1 - &cover.x0))
        * &(&cover.x1 - &cover.x0.scale(&params.lambda));
    Ok(lhs == rhs)
}

/// `i ∘ f± = u ∘ h`: the first two coordinates of `f±` define the map `u`.
pub fn verify_diagram(params: &CoverParams) -> Result<bool, CoverError> {
    let cover = build_cover_map(params, Sign::Plus)?;
    let projected = RationalSelfMap::new(
        BinaryForm::new(3, cover.x1.clone())?,
        BinaryForm::new(3, cover.x0.clone())?,
    )?;
    Ok(projected.same_map(&cover.u) && projected.degree() == 3)
}

/// Weierstrass points of `C` land on `2·[0] + E[2]`.
pub fn verify_normalization(params: &CoverParams) -> Result<CheckReport, CoverError> {
    let cover = build_cover_map(params, Sign::Plus)?;
    let f = params.field();
    let u = &cover.u;
    let lam = ProjPoint::affine(params.lambda.clone());
    let w1 = ProjPoint::affine(params.p1.clone());
    let w2 = ProjPoint::affine(params.p2.clone());
    let w3 = params.third_weierstrass();
    let mut r = CheckReport::default();

    r.put_bool("weierstrass_p1_over_0", u.evaluate(&w1) == ProjPoint::affine(f.zero()));
    r.put_bool("weierstrass_p1_minus_2_over_1", u.evaluate(&w2) == ProjPoint::affine(f.one()));
    r.put_bool("weierstrass_third_over_lambda", u.evaluate(&w3) == lam);
    r.put_bool(
        "weierstrass_points_on_sextic",
        [&w1, &w2, &w3].iter().all(|w| cover.sextic.eval(w).is_zero()),
    );
    // g is the denominator of u and coprime to its numerator, and has no root
    // at ∞, so all three remaining Weierstrass points lie over u = ∞.
    let coprime = cover.x1.gcd(&cover.x0)?.degree() == Some(0);
    r.put_bool("g_roots_over_origin", coprime && cover.x0.degree() == Some(3));
    let g_roots = cover.x0.roots_in_field()?;
    r.put_bool(
        "g_roots_in_field_map_to_infinity",
        g_roots
            .roots
            .iter()
            .all(|(p, _)| u.evaluate(p).is_infinity() && cover.image(p.value().unwrap(), &f.zero()) == CurvePoint::Origin),
    );
    r.put_bool("six_distinct_weierstrass_points", cover.sextic.is_squarefree()?);
    Ok(r)
}

/// Result of [`verify_ramification`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamificationReport {
    pub report: CheckReport,
    pub critical: RootSet,
    pub branch: Vec<ProjPoint>,
    pub pattern: RamificationPattern,
}

fn expected_divisor(points: &[ProjPoint]) -> Vec<(ProjPoint, usize)> {
    let mut sorted = points.to_vec();
    sorted.sort();
    let mut out: Vec<(ProjPoint, usize)> = Vec::new();
    for p in sorted {
        match out.last_mut() {
            Some((q, m)) if *q == p => *m += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Ramification of `u`: critical divisor `[0] + [1] + [∞] + [δ]`, branch
/// points `{0, 1, λ, ζ}`, and `u(δ) = u(μ) = ζ` with `δ` doubled in the fiber.
pub fn verify_ramification(params: &CoverParams) -> Result<RamificationReport, CoverError> {
    require_moduli(params)?;
    let u = build_cover_u(params)?;
    let f = params.field();
    let zero = ProjPoint::affine(f.zero());
    let one = ProjPoint::affine(f.one());
    let inf = ProjPoint::infinity(f);
    let lam = ProjPoint::affine(params.lambda.clone());
    let crit = u.critical_divisor()?;
    let mut branch = u.branch_points()?;
    branch.sort();
    let mut r = CheckReport::default();

    r.put_bool("critical_degree_is_4", crit.total_degree() == 4);
    r.put_bool("critical_divisor_splits", crit.residual_degree == 0);
    let expect = expected_divisor(&[zero.clone(), one.clone(), inf.clone(), params.delta.clone()]);
    r.put_bool("critical_support", crit.roots == expect);
    let mut expect_branch = vec![zero, one, lam, params.zeta.clone()];
    expect_branch.sort();
    expect_branch.dedup();
    r.put_bool("branch_points", branch == expect_branch);
    r.put_bool("zeta_finite", !params.zeta.is_infinity() && !params.zq.is_zero());
    r.put_bool("delta_maps_to_zeta", u.evaluate(&params.delta) == params.zeta);
    r.put_bool("mu_maps_to_zeta", u.evaluate(&params.mu) == params.zeta);
    r.put_bool(
        "mu_closed_form",
        match (params.delta.value(), params.mu.value()) {
            (Some(d), Some(m)) => *m == &params.p1 - &(&f.int(2) * d),
            (None, None) => true,
            _ => false,
        },
    );
    r.put_bool(
        "p3_times_delta_is_p1",
        match (params.p3.value(), params.delta.value()) {
            (Some(p3), Some(d)) => p3 * d == params.p1,
            _ => true,
        },
    );
    let fib = u.fiber(&params.zeta)?;
    let expect_fib = expected_divisor(&[params.delta.clone(), params.delta.clone(), params.mu.clone()]);
    r.put_bool("fiber_over_zeta", fib.roots == expect_fib && fib.residual_degree == 0);

    Ok(RamificationReport {
        report: r,
        critical: crit,
        branch,
        pattern: params.pattern(),
    })
}

/// The Z locus for one λ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZReport {
    pub lambda: FieldElement,
    pub quartic: Polynomial,
    pub discriminant: FieldElement,
    pub roots: RootSet,
    /// Critical divisor of `ζ̃(t) = λt³(t − 2)/q(t)`.
    pub zeta_tilde_critical: RootSet,
    pub report: CheckReport,
}

impl ZReport {
    pub fn to_json(&self) -> Value {
        json!({
            "lambda": self.lambda.to_json(),
            "quartic": self.quartic.to_json(),
            "discriminant": self.discriminant.to_json(),
            "roots": self.roots.points().iter().map(ProjPoint::to_json).collect::<Vec<_>>(),
            "residual_degree": self.roots.residual_degree,
            "zeta_tilde_critical": self.zeta_tilde_critical.to_json(),
            "checks": self.report.to_json(),
        })
    }
}

pub fn z_locus(lambda: &FieldElement) -> Result<ZReport, CoverError> {
    LegendreCurve::new(lambda.clone())?;
    let f = lambda.field();
    let q = z_quartic(lambda);
    let disc = q.discriminant()?;
    let roots = q.roots_in_field()?;
    let mut r = CheckReport::default();

    r.put_bool("monic_quartic", q.degree() == Some(4) && q.leading().is_some_and(FieldElement::is_one));
    r.put_bool("discriminant_nonzero", !disc.is_zero());

    // σ(t) = (2t − 3)³ / (t³(t − 2)): quotient rule against the closed form
    let a = Polynomial::from_ints(f, &[-3, 2]).pow(3);
    let b = Polynomial::from_ints(f, &[0, 0, 0, -2, 1]);
    let numer = &(&a.derivative() * &b) - &(&a * &b.derivative());
    let closed = (&(&Polynomial::from_ints(f, &[-3, 2]).pow(2) * &Polynomial::from_ints(f, &[0, 0, 1]))
        * &Polynomial::from_ints(f, &[-3, 1]).pow(2))
        .scale(&f.int(-2));
    let denom_closed = &Polynomial::from_ints(f, &[0, 1]).pow(6) * &Polynomial::from_ints(f, &[-2, 1]).pow(2);
    r.put_bool("sigma_derivative_numerator", numer == closed);
    r.put_bool("sigma_derivative_denominator", &b * &b == denom_closed);

    // ζ̃ = (1 + (λ − 1)/λ · σ)⁻¹ has the same critical points as σ
    let zeta_tilde = RationalSelfMap::new_coprime(
        BinaryForm::new(4, b.scale(lambda))?,
        BinaryForm::new(4, q.clone())?,
    )?;
    let crit = zeta_tilde.critical_divisor()?;
    let three_halves = f.ratio(3, 2)?;
    let expect: Vec<(ProjPoint, usize)> = {
        let mut v = vec![
            (ProjPoint::affine(f.zero()), 2),
            (ProjPoint::affine(three_halves.clone()), 2),
            (ProjPoint::affine(f.int(3)), 2),
        ];
        v.sort();
        v
    };
    r.put_bool("zeta_tilde_critical_points", crit.roots == expect && crit.residual_degree == 0);
    r.put_bool(
        "quartic_nonzero_at_critical_points",
        [f.zero(), three_halves, f.int(3)].iter().all(|t| !q.eval(t).is_zero()),
    );
    r.put_bool(
        "base_points_not_in_z",
        q.eval(&f.one()) == -lambda && q.eval(&f.int(2)) == lambda - &f.one(),
    );

    Ok(ZReport {
        lambda: lambda.clone(),
        quartic: q,
        discriminant: disc,
        roots,
        zeta_tilde_critical: crit,
        report: r,
    })
}

/// All verifier results for an admissible `(λ, p₁)`.
pub fn verify_all(params: &CoverParams, sign: Sign) -> Result<(CheckReport, RamificationPattern), CoverError> {
    let mut r = verify_identities(params);
    r.put_bool("function_field", verify_function_field(params, sign)?);
    r.put_bool("diagram_commutes", verify_diagram(params)?);
    r.merge(verify_normalization(params)?);
    let ram = verify_ramification(params)?;
    r.merge(ram.report);
    Ok((r, ram.pattern))
}

/// JSON record for one `(λ, p₁)`; `sextic` and `cover` are null outside the
/// moduli space.
pub fn cover_record(params: &CoverParams, sign: Sign) -> Result<Value, CoverError> {
    if params.membership == Membership::InModuli {
        let cover = build_cover_map(params, sign)?;
        let (checks, _) = verify_all(params, sign)?;
        Ok(record_json(params, Some(&cover), &checks))
    } else {
        Ok(record_json(params, None, &verify_identities(params)))
    }
}

pub fn record_json(params: &CoverParams, cover: Option<&Genus2Cover>, checks: &CheckReport) -> Value {
    json!({
        "lambda": params.lambda.to_json(),
        "p1": params.p1.to_json(),
        "g": params.g().to_json(),
        "p2": params.p2.to_json(),
        "p3": params.p3.to_json(),
        "delta": params.delta.to_json(),
        "mu": params.mu.to_json(),
        "zeta": params.zeta.to_json(),
        "membership": params.membership.as_str(),
        "sextic": cover.map_or(Value::Null, |c| c.sextic.to_json()),
        "cover": cover.map_or(Value::Null, Genus2Cover::to_json),
        "checks": checks.to_json(),
    })
}
