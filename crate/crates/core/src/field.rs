//! Exact scalars over ℚ and prime fields 𝔽p (p ≥ 5), and points of P¹.
//!
//! Rationals are arbitrary-precision reduced fractions, prime-field elements
//! are residues in `[0, p)`. Every element carries its [`Field`] so that
//! arithmetic between different fields is an error instead of a silent
//! coercion.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("characteristic {0} is not allowed (must differ from 2 and 3)")]
    ForbiddenCharacteristic(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields ({0} vs {1})")]
    DescriptorMismatch(Field, Field),
    #[error("(0, 0) is not a point of the projective line")]
    ZeroVector,
    #[error("cannot parse {0:?} as a field element")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldKind {
    Rationals,
    PrimeField,
}

/// Descriptor of the base field: ℚ or 𝔽p with p prime and p ≥ 5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Field {
    modulus: Option<u64>,
}

/// Deterministic trial division; moduli here are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    pub const fn rationals() -> Self {
        Field { modulus: None }
    }

    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p == 2 || p == 3 {
            return Err(FieldError::ForbiddenCharacteristic(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NonPrimeModulus(p));
        }
        // Residue products are computed in u128, but keep p below 2^63 so
        // that additions of two residues never overflow.
        if p >= 1 << 63 {
            return Err(FieldError::NonPrimeModulus(p));
        }
        Ok(Field { modulus: Some(p) })
    }

    pub fn make(kind: FieldKind, modulus: Option<u64>) -> Result<Self, FieldError> {
        match kind {
            FieldKind::Rationals => Ok(Self::rationals()),
            FieldKind::PrimeField => Self::prime(modulus.unwrap_or(0)),
        }
    }

    pub fn kind(&self) -> FieldKind {
        match self.modulus {
            None => FieldKind::Rationals,
            Some(_) => FieldKind::PrimeField,
        }
    }

    /// The prime p for 𝔽p, `None` for ℚ.
    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn is_rationals(&self) -> bool {
        self.modulus.is_none()
    }

    pub fn zero(&self) -> FieldElement {
        self.int(0)
    }

    pub fn one(&self) -> FieldElement {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> FieldElement {
        match self.modulus {
            None => FieldElement::rational(BigRational::from_integer(BigInt::from(n))),
            Some(p) => FieldElement::residue(n.rem_euclid(p as i64) as u64, p),
        }
    }

    pub fn big(&self, n: &BigInt) -> FieldElement {
        match self.modulus {
            None => FieldElement::rational(BigRational::from_integer(n.clone())),
            Some(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                FieldElement::residue(r.to_u64().expect("residue fits in u64"), p)
            }
        }
    }

    /// The element `num / den`.
    pub fn ratio(&self, num: i64, den: i64) -> Result<FieldElement, FieldError> {
        self.int(num).checked_div(&self.int(den))
    }

    /// Image of an exact rational in this field; fails if the denominator is
    /// not invertible mod p.
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElement, FieldError> {
        match self.modulus {
            None => Ok(FieldElement::rational(q.clone())),
            Some(_) => self.big(q.numer()).checked_div(&self.big(q.denom())),
        }
    }

    /// Parses `"a/b"` or an integer literal.
    pub fn parse(&self, s: &str) -> Result<FieldElement, FieldError> {
        let err = || FieldError::Parse(s.to_string());
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n = BigInt::from_str(n).map_err(|_| err())?;
        let d = BigInt::from_str(d).map_err(|_| err())?;
        if d.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        self.from_rational(&BigRational::new(n, d))
    }

    /// All elements of a prime field in residue order; `None` for ℚ.
    pub fn elements(&self) -> Option<impl Iterator<Item = FieldElement>> {
        self.modulus
            .map(|p| (0..p).map(move |r| FieldElement::residue(r, p)))
    }

    pub fn to_json(&self) -> Value {
        match self.modulus {
            None => json!("rational"),
            Some(p) => json!(p),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus {
            None => write!(f, "Q"),
            Some(p) => write!(f, "F_{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Rational(BigRational),
    Residue(u64),
}

/// An element of ℚ or 𝔽p in canonical form.
///
/// Canonical forms are unique, so derived equality is field equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    repr: Repr,
}

fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    // extended Euclid on (a, p)
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

impl FieldElement {
    fn rational(q: BigRational) -> Self {
        // BigRational::new reduces and keeps the denominator positive.
        FieldElement {
            field: Field::rationals(),
            repr: Repr::Rational(q),
        }
    }

    fn residue(r: u64, p: u64) -> Self {
        debug_assert!(r < p);
        FieldElement {
            field: Field { modulus: Some(p) },
            repr: Repr::Residue(r),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rational(q) => q.is_zero(),
            Repr::Residue(r) => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Rational(q) => q.is_one(),
            Repr::Residue(r) => *r == 1,
        }
    }

    /// The rational value, for elements of ℚ.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rational(q) => Some(q),
            Repr::Residue(_) => None,
        }
    }

    /// The residue in `[0, p)`, for elements of 𝔽p.
    pub fn residue_value(&self) -> Option<u64> {
        match &self.repr {
            Repr::Residue(r) => Some(*r),
            Repr::Rational(_) => None,
        }
    }

    fn same_field(&self, other: &Self) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::DescriptorMismatch(self.field, other.field))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Self::rational(a + b),
            (Repr::Residue(a), Repr::Residue(b)) => {
                let p = self.field.modulus.unwrap();
                Self::residue((a + b) % p, p)
            }
            _ => unreachable!("field checked above"),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Self::rational(a * b),
            (Repr::Residue(a), Repr::Residue(b)) => {
                let p = self.field.modulus.unwrap();
                Self::residue(((*a as u128 * *b as u128) % p as u128) as u64, p)
            }
            _ => unreachable!("field checked above"),
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match &self.repr {
            Repr::Rational(q) => Self::rational(q.recip()),
            Repr::Residue(r) => {
                let p = self.field.modulus.unwrap();
                Self::residue(mod_inverse(*r, p).expect("p is prime"), p)
            }
        })
    }

    fn neg_ref(&self) -> Self {
        match &self.repr {
            Repr::Rational(q) => Self::rational(-q),
            Repr::Residue(r) => {
                let p = self.field.modulus.unwrap();
                Self::residue((p - r) % p, p)
            }
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// JSON encoding: `"a/b"` (or `"a"`) over ℚ, `{"residue": r, "p": p}` over 𝔽p.
    pub fn to_json(&self) -> Value {
        match &self.repr {
            Repr::Rational(_) => Value::String(self.to_string()),
            Repr::Residue(r) => json!({ "residue": r, "p": self.field.modulus.unwrap() }),
        }
    }

    pub fn from_json(field: Field, v: &Value) -> Result<Self, FieldError> {
        let bad = || FieldError::Parse(v.to_string());
        match (field.modulus, v) {
            (None, Value::String(s)) => field.parse(s),
            (Some(p), Value::Object(map)) => {
                let r = map.get("residue").and_then(Value::as_u64).ok_or_else(bad)?;
                let q = map.get("p").and_then(Value::as_u64).ok_or_else(bad)?;
                if q != p || r >= p {
                    return Err(bad());
                }
                Ok(Self::residue(r, p))
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rational(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Repr::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Repr::Residue(r) => write!(f, "{r}"),
        }
    }
}

/// Total order used for deterministic output: by field, then by rational
/// value or by residue.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field.cmp(&other.field).then_with(|| match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => a.cmp(b),
            (Repr::Residue(a), Repr::Residue(b)) => a.cmp(b),
            _ => Ordering::Equal,
        })
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Operator forms panic on field mismatch; use the `checked_*` methods where
// the operands are not already known to share a field.
macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field element arithmetic")
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$checked(&rhs).expect("field element arithmetic")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

/// A point `(x₀ : x₁)` of P¹ with affine value `x₁/x₀`.
///
/// Canonical: `x₀ = 1`, or `(0 : 1)` for ∞.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    x0: FieldElement,
    x1: FieldElement,
}

impl ProjPoint {
    pub fn new(x0: &FieldElement, x1: &FieldElement) -> Result<Self, FieldError> {
        x0.same_field(x1)?;
        if x0.is_zero() {
            if x1.is_zero() {
                return Err(FieldError::ZeroVector);
            }
            let field = x0.field();
            return Ok(ProjPoint {
                x0: field.zero(),
                x1: field.one(),
            });
        }
        Ok(ProjPoint {
            x1: x1.checked_div(x0)?,
            x0: x0.field().one(),
        })
    }

    pub fn affine(x: FieldElement) -> Self {
        ProjPoint {
            x0: x.field().one(),
            x1: x,
        }
    }

    pub fn infinity(field: Field) -> Self {
        ProjPoint {
            x0: field.zero(),
            x1: field.one(),
        }
    }

    /// `num / den` as a point, ∞ when `den = 0`.
    pub fn from_fraction(num: &FieldElement, den: &FieldElement) -> Result<Self, FieldError> {
        Self::new(den, num)
    }

    pub fn field(&self) -> Field {
        self.x0.field()
    }

    pub fn is_infinity(&self) -> bool {
        self.x0.is_zero()
    }

    pub fn value(&self) -> Option<&FieldElement> {
        (!self.is_infinity()).then_some(&self.x1)
    }

    pub fn coords(&self) -> (&FieldElement, &FieldElement) {
        (&self.x0, &self.x1)
    }

    /// `"inf"` for ∞, otherwise the field-element encoding of the affine value.
    pub fn to_json(&self) -> Value {
        match self.value() {
            None => json!("inf"),
            Some(v) => v.to_json(),
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            None => write!(f, "inf"),
            Some(v) => write!(f, "{v}"),
        }
    }
}

/// Finite points in value order, then ∞.
impl Ord for ProjPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.value(), other.value()) {
            (Some(a), Some(b)) => a.cmp(b),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => self.field().cmp(&other.field()),
        }
    }
}

impl PartialOrd for ProjPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Bit length of the larger of numerator and denominator.
pub(crate) fn rational_bits(q: &BigRational) -> u64 {
    q.numer().abs().bits().max(q.denom().bits())
}
