//! Dense univariate polynomials over a [`Field`] and binary forms.
//!
//! A [`BinaryForm`] of declared degree `d` is stored through its
//! dehomogenization in the chart `x₀ = 1`: the coefficient of `xⁱ` is the
//! coefficient of `x₁ⁱ x₀^(d−i)`. When the honest degree of that polynomial is
//! below `d`, the form vanishes at ∞ = `(0 : 1)` with the missing multiplicity.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::field::{rational_bits, Field, FieldElement, FieldError, ProjPoint};

/// Coefficient size limit for rational root search.
pub const RATIONAL_ROOT_BIT_BOUND: u64 = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("polynomial division by zero")]
    DivisionByZero,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("operation undefined for a constant polynomial")]
    ConstantPolynomial,
    #[error("rational root search refused: coefficients of {bits} bits exceed the {bound}-bit bound")]
    UnsupportedForRationals { bits: u64, bound: u64 },
    #[error("polynomial of degree {actual} does not fit a form of degree {declared}")]
    DegreeExceeded { declared: usize, actual: usize },
    #[error("division is not exact")]
    InexactDivision,
}

/// Dense polynomial, ascending coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn new(field: Field, coeffs: Vec<FieldElement>) -> Result<Self, PolyError> {
        if let Some(c) = coeffs.iter().find(|c| c.field() != field) {
            return Err(FieldError::DescriptorMismatch(field, c.field()).into());
        }
        Ok(Self::from_vec(field, coeffs))
    }

    fn from_vec(field: Field, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    pub fn from_ints(field: Field, coeffs: &[i64]) -> Self {
        Self::from_vec(field, coeffs.iter().map(|&c| field.int(c)).collect())
    }

    pub fn zero(field: Field) -> Self {
        Polynomial {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::from_vec(c.field(), vec![c])
    }

    /// The polynomial `x`.
    pub fn x(field: Field) -> Self {
        Self::from_vec(field, vec![field.zero(), field.one()])
    }

    /// `x − r`.
    pub fn linear_root(r: &FieldElement) -> Self {
        Self::from_vec(r.field(), vec![-r, r.field().one()])
    }

    /// `a·x + b`.
    pub fn linear(a: &FieldElement, b: &FieldElement) -> Self {
        Self::from_vec(a.field(), vec![b.clone(), a.clone()])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::from_vec(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.field), |acc, _| &acc * self)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("leading coefficient is nonzero")),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::from_vec(
            self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &self.field.int(i as i64))
                .collect(),
        )
    }

    fn check(&self, other: &Self) -> Result<(), PolyError> {
        if self.field != other.field {
            return Err(FieldError::DescriptorMismatch(self.field, other.field).into());
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Self::from_vec(
            self.field,
            (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect(),
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.field));
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Ok(Self::from_vec(self.field, out))
    }

    /// Euclidean division: `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        self.check(divisor)?;
        let d = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lc_inv = divisor.leading().unwrap().inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Self::zero(self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + d] * &lc_inv;
            if !c.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = &rem[k + j] - &(&c * b);
                }
            }
            quot[k] = c;
        }
        rem.truncate(d);
        Ok((Self::from_vec(self.field, quot), Self::from_vec(self.field, rem)))
    }

    pub fn exact_div(&self, divisor: &Self) -> Result<Self, PolyError> {
        let (q, r) = self.divmod(divisor)?;
        if !r.is_zero() {
            return Err(PolyError::InexactDivision);
        }
        Ok(q)
    }

    /// Monic gcd; `gcd(a, 0) = monic(a)`.
    pub fn gcd(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::BothZero);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divmod(&b)?.1;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// True iff there is no repeated root over the algebraic closure.
    ///
    /// `gcd(f, f′) = 1` decides this in every characteristic: a common root
    /// `r` of `f = (x − r)h` and `f′ = h + (x − r)h′` forces `h(r) = 0`. When
    /// `f′` vanishes identically the gcd is `f` itself, a p-th power.
    pub fn is_squarefree(&self) -> Result<bool, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(self.gcd(&self.derivative())?.degree() == Some(0))
    }

    /// The squarefree part `f / gcd(f, f′)`, monic.
    pub fn squarefree_part(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative())?;
        Ok(self.exact_div(&g)?.monic())
    }

    /// `(−1)^(n(n−1)/2) · Res(f, f′) / lc(f)`, with `f′` taken at formal
    /// degree `n − 1`.
    pub fn discriminant(&self) -> Result<FieldElement, PolyError> {
        let n = self.degree().ok_or(PolyError::ZeroPolynomial)?;
        if n == 0 {
            return Err(PolyError::ConstantPolynomial);
        }
        let res = resultant_formal(self, n, &self.derivative(), n - 1)?;
        let sign = if (n * (n - 1) / 2) % 2 == 0 {
            self.field.one()
        } else {
            -self.field.one()
        };
        Ok((&sign * &res).checked_div(self.leading().unwrap())?)
    }

    /// Roots lying in the base field, with multiplicity.
    ///
    /// Over 𝔽p this is an exhaustive residue scan. Over ℚ the candidates are
    /// isolated with a Sturm sequence after reducing to a monic integer
    /// polynomial, so no integer factoring is needed.
    pub fn roots_in_field(&self) -> Result<RootSet, PolyError> {
        let n = self.degree().ok_or(PolyError::ZeroPolynomial)?;
        let candidates: Vec<FieldElement> = match self.field.modulus() {
            Some(_) => {
                let mut found = Vec::new();
                let mut rest = self.clone();
                for r in self.field.elements().unwrap() {
                    if rest.degree() == Some(0) {
                        break;
                    }
                    if rest.eval(&r).is_zero() {
                        rest = rest.exact_div(&Self::linear_root(&r))?;
                        found.push(r);
                    }
                }
                found
            }
            None => rational_root_candidates(self)?,
        };
        let mut roots = Vec::new();
        let mut rest = self.clone();
        for r in candidates {
            let lin = Self::linear_root(&r);
            let mut mult = 0;
            loop {
                let (q, rem) = rest.divmod(&lin)?;
                if !rem.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                roots.push((ProjPoint::affine(r), mult));
            }
        }
        roots.sort();
        let split: usize = roots.iter().map(|(_, m)| m).sum();
        Ok(RootSet {
            roots,
            residual_degree: n - split,
        })
    }

    /// `Σ cᵢ · argⁱ` (Horner composition).
    pub fn compose(&self, arg: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(self.field), |acc, c| &(&acc * arg) + &Self::constant(c.clone()))
    }

    pub fn to_json(&self) -> Value {
        json!({ "coeffs": self.coeffs.iter().map(FieldElement::to_json).collect::<Vec<_>>() })
    }

    pub fn from_json(field: Field, v: &Value) -> Result<Self, PolyError> {
        let arr = v
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| FieldError::Parse(v.to_string()))?;
        let coeffs = arr
            .iter()
            .map(|c| FieldElement::from_json(field, c))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(field, coeffs)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial arithmetic")
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$checked(&rhs).expect("polynomial arithmetic")
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::from_vec(self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Sylvester-matrix resultant of `a` and `b` at formal degrees `m ≥ deg a`
/// and `n ≥ deg b`.
pub fn resultant_formal(
    a: &Polynomial,
    m: usize,
    b: &Polynomial,
    n: usize,
) -> Result<FieldElement, PolyError> {
    a.check(b)?;
    let field = a.field;
    if a.degree().is_some_and(|d| d > m) || b.degree().is_some_and(|d| d > n) {
        return Err(PolyError::DegreeExceeded {
            declared: m.max(n),
            actual: a.degree().max(b.degree()).unwrap_or(0),
        });
    }
    let size = m + n;
    if size == 0 {
        return Ok(field.one());
    }
    let mut mat = vec![vec![field.zero(); size]; size];
    for row in 0..n {
        for k in 0..=m {
            mat[row][row + k] = a.coeff(m - k);
        }
    }
    for row in 0..m {
        for k in 0..=n {
            mat[n + row][row + k] = b.coeff(n - k);
        }
    }
    determinant(mat)
}

pub fn resultant(a: &Polynomial, b: &Polynomial) -> Result<FieldElement, PolyError> {
    let m = a.degree().ok_or(PolyError::ZeroPolynomial)?;
    let n = b.degree().ok_or(PolyError::ZeroPolynomial)?;
    resultant_formal(a, m, b, n)
}

fn determinant(mut mat: Vec<Vec<FieldElement>>) -> Result<FieldElement, PolyError> {
    let size = mat.len();
    let field = mat[0][0].field();
    let mut det = field.one();
    for col in 0..size {
        let Some(pivot) = (col..size).find(|&r| !mat[r][col].is_zero()) else {
            return Ok(field.zero());
        };
        if pivot != col {
            mat.swap(pivot, col);
            det = -det;
        }
        let p = mat[col][col].clone();
        det = &det * &p;
        let p_inv = p.inv()?;
        for r in col + 1..size {
            if mat[r][col].is_zero() {
                continue;
            }
            let factor = &mat[r][col] * &p_inv;
            let (upper, lower) = mat.split_at_mut(r);
            for (dst, src) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                *dst = &*dst - &(&factor * src);
            }
        }
    }
    Ok(det)
}

/// Roots of a polynomial or form found in the base field, plus the degree of
/// the part that does not split into base-field linear factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSet {
    pub roots: Vec<(ProjPoint, usize)>,
    pub residual_degree: usize,
}

impl RootSet {
    pub fn split_degree(&self) -> usize {
        self.roots.iter().map(|(_, m)| m).sum()
    }

    pub fn total_degree(&self) -> usize {
        self.split_degree() + self.residual_degree
    }

    pub fn multiplicity(&self, p: &ProjPoint) -> usize {
        self.roots
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, m)| *m)
    }

    pub fn points(&self) -> Vec<ProjPoint> {
        self.roots.iter().map(|(p, _)| p.clone()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "roots": self.roots.iter().map(|(p, m)| json!({"point": p.to_json(), "mult": m})).collect::<Vec<_>>(),
            "residual_degree": self.residual_degree,
        })
    }
}

fn to_integer_coeffs(f: &Polynomial) -> Vec<BigInt> {
    let qs: Vec<&BigRational> = f.coeffs.iter().map(|c| c.as_rational().unwrap()).collect();
    let lcm = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = qs.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &content).collect()
}

fn sign_changes(chain: &[Polynomial], x: &FieldElement) -> usize {
    let signs: Vec<bool> = chain
        .iter()
        .map(|p| p.eval(x))
        .filter(|v| !v.is_zero())
        .map(|v| v.as_rational().unwrap().is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Rational roots of `f` over ℚ (distinct, unordered).
fn rational_root_candidates(f: &Polynomial) -> Result<Vec<FieldElement>, PolyError> {
    let bits = f.coeffs.iter().map(|c| rational_bits(c.as_rational().unwrap())).max().unwrap_or(0);
    if f.degree() > Some(0) && bits > RATIONAL_ROOT_BIT_BOUND {
        return Err(PolyError::UnsupportedForRationals {
            bits,
            bound: RATIONAL_ROOT_BIT_BOUND,
        });
    }
    let field = f.field;
    let sqf = f.squarefree_part()?;
    let n = sqf.degree().unwrap();
    if n == 0 {
        return Ok(Vec::new());
    }
    // x = y / a_n turns a·f into a monic integer polynomial in y whose
    // rational roots are integers.
    let a = to_integer_coeffs(&sqf);
    let lead = a[n].clone();
    let mut monic = Vec::with_capacity(n + 1);
    let mut scale = BigInt::one();
    for i in (0..n).rev() {
        monic.push(&a[i] * &scale);
        scale *= &lead;
    }
    monic.reverse();
    monic.push(BigInt::one());
    let bound = monic.iter().map(|c| c.abs()).max().unwrap() + BigInt::one();
    let g = Polynomial::from_vec(field, monic.iter().map(|c| field.big(c)).collect());

    let mut chain = vec![g.clone(), g.derivative()];
    while let Some(r) = {
        let k = chain.len();
        let r = chain[k - 2].divmod(&chain[k - 1])?.1;
        (!r.is_zero()).then_some(r)
    } {
        chain.push(-r);
    }

    let mut out = Vec::new();
    let mut stack = vec![(-&bound - BigInt::one(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let (flo, fhi) = (field.big(&lo), field.big(&hi));
        let count = sign_changes(&chain, &flo) as i64 - sign_changes(&chain, &fhi) as i64;
        if count <= 0 {
            continue;
        }
        if &hi - &lo == BigInt::one() {
            if g.eval(&fhi).is_zero() {
                out.push(field.big(&hi).checked_div(&field.big(&lead))?);
            }
            continue;
        }
        let mid = (&lo + &hi).div_floor(&BigInt::from(2));
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    Ok(out)
}

/// Homogeneous polynomial in `(x₀, x₁)` of declared degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    degree: usize,
    affine: Polynomial,
}

impl BinaryForm {
    /// Homogenizes `affine` to declared degree `degree`.
    pub fn new(degree: usize, affine: Polynomial) -> Result<Self, PolyError> {
        if let Some(d) = affine.degree() {
            if d > degree {
                return Err(PolyError::DegreeExceeded {
                    declared: degree,
                    actual: d,
                });
            }
        }
        Ok(BinaryForm { degree, affine })
    }

    /// Homogenizes at the polynomial's own degree (no root at ∞).
    pub fn homogenize(affine: &Polynomial) -> Self {
        BinaryForm {
            degree: affine.degree().unwrap_or(0),
            affine: affine.clone(),
        }
    }

    /// `a·x₀ + b·x₁`.
    pub fn linear(a: &FieldElement, b: &FieldElement) -> Self {
        BinaryForm {
            degree: 1,
            affine: Polynomial::linear(b, a),
        }
    }

    pub fn constant(c: FieldElement) -> Self {
        BinaryForm {
            degree: 0,
            affine: Polynomial::constant(c),
        }
    }

    pub fn field(&self) -> Field {
        self.affine.field()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Dehomogenization in the chart `x₀ = 1`.
    pub fn affine(&self) -> &Polynomial {
        &self.affine
    }

    /// Dehomogenization in the chart `x₁ = 1`, as a polynomial in `x₀`.
    pub fn chart_at_infinity(&self) -> Polynomial {
        let c = (0..=self.degree)
            .map(|j| self.affine.coeff(self.degree - j))
            .collect();
        Polynomial::from_vec(self.field(), c)
    }

    /// Coefficients of `x₁ⁱ x₀^(d−i)` for `i = 0..=d`.
    pub fn coeffs(&self) -> Vec<FieldElement> {
        (0..=self.degree).map(|i| self.affine.coeff(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.affine.is_zero()
    }

    /// Order of vanishing at ∞ = `(0 : 1)`.
    pub fn multiplicity_at_infinity(&self) -> Option<usize> {
        self.affine.degree().map(|d| self.degree - d)
    }

    pub fn eval(&self, p: &ProjPoint) -> FieldElement {
        let (x0, x1) = p.coords();
        let mut acc = self.field().zero();
        let mut x0_pow = self.field().one();
        for i in (0..=self.degree).rev() {
            acc = &acc + &(&self.affine.coeff(i) * &(&x1.pow(i as u64) * &x0_pow));
            x0_pow = &x0_pow * x0;
        }
        acc
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        BinaryForm {
            degree: self.degree,
            affine: self.affine.scale(c),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        if self.degree != other.degree {
            return Err(PolyError::DegreeExceeded {
                declared: self.degree,
                actual: other.degree,
            });
        }
        Ok(BinaryForm {
            degree: self.degree,
            affine: self.affine.checked_add(&other.affine)?,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.checked_add(&other.scale(&-other.field().one()))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        Ok(BinaryForm {
            degree: self.degree + other.degree,
            affine: self.affine.checked_mul(&other.affine)?,
        })
    }

    /// `∂/∂x₀`, a form of degree `d − 1`.
    pub fn d_dx0(&self) -> Self {
        let f = self.field();
        let d = self.degree;
        let c = (0..d)
            .map(|i| &self.affine.coeff(i) * &f.int((d - i) as i64))
            .collect();
        BinaryForm {
            degree: d.saturating_sub(1),
            affine: Polynomial::from_vec(f, c),
        }
    }

    /// `∂/∂x₁`, a form of degree `d − 1`.
    pub fn d_dx1(&self) -> Self {
        BinaryForm {
            degree: self.degree.saturating_sub(1),
            affine: self.affine.derivative(),
        }
    }

    /// `F(a·x₀ + b·x₁, c·x₀ + d·x₁)`.
    pub fn substitute(&self, a: &FieldElement, b: &FieldElement, c: &FieldElement, d: &FieldElement) -> Self {
        let field = self.field();
        let new_x0 = Polynomial::linear(b, a);
        let new_x1 = Polynomial::linear(d, c);
        let mut acc = Polynomial::zero(field);
        for i in 0..=self.degree {
            let ci = self.affine.coeff(i);
            if ci.is_zero() {
                continue;
            }
            let term = &new_x1.pow(i as u32) * &new_x0.pow((self.degree - i) as u32);
            acc = &acc + &term.scale(&ci);
        }
        BinaryForm {
            degree: self.degree,
            affine: acc,
        }
    }

    /// Common factor as a form: `x₀^min(m, m′) · gcd` of the affine parts.
    pub fn gcd(&self, other: &Self) -> Result<Self, PolyError> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Err(PolyError::BothZero),
            (true, false) => return Ok(other.monic()),
            (false, true) => return Ok(self.monic()),
            _ => {}
        }
        let g = self.affine.gcd(&other.affine)?;
        let at_inf = self
            .multiplicity_at_infinity()
            .unwrap()
            .min(other.multiplicity_at_infinity().unwrap());
        Ok(BinaryForm {
            degree: g.degree().unwrap() + at_inf,
            affine: g,
        })
    }

    fn monic(&self) -> Self {
        BinaryForm {
            degree: self.degree,
            affine: self.affine.monic(),
        }
    }

    pub fn exact_div(&self, divisor: &Self) -> Result<Self, PolyError> {
        if divisor.degree > self.degree {
            return Err(PolyError::InexactDivision);
        }
        let q = self.affine.exact_div(&divisor.affine)?;
        let out = BinaryForm::new(self.degree - divisor.degree, q)?;
        // the x₀-power of the quotient must be non-negative
        if !self.is_zero()
            && self.multiplicity_at_infinity() < divisor.multiplicity_at_infinity()
        {
            return Err(PolyError::InexactDivision);
        }
        Ok(out)
    }

    /// Decided in both affine charts, so a repeated root at ∞ is seen.
    pub fn is_squarefree(&self) -> Result<bool, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(self.affine.is_squarefree()? && self.chart_at_infinity().is_squarefree()?)
    }

    /// Base-field roots including ∞, with multiplicity.
    pub fn roots_in_field(&self) -> Result<RootSet, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut set = self.affine.roots_in_field()?;
        let at_inf = self.multiplicity_at_infinity().unwrap();
        if at_inf > 0 {
            set.roots.push((ProjPoint::infinity(self.field()), at_inf));
        }
        Ok(set)
    }

    /// `{"coeffs": [c₀, …, c_d], "degree": d}`, all `d + 1` coefficients.
    pub fn to_json(&self) -> Value {
        json!({
            "coeffs": self.coeffs().iter().map(FieldElement::to_json).collect::<Vec<_>>(),
            "degree": self.degree,
        })
    }

    pub fn from_json(field: Field, v: &Value) -> Result<Self, PolyError> {
        let affine = Polynomial::from_json(field, v)?;
        let degree = v
            .get("degree")
            .and_then(Value::as_u64)
            .ok_or_else(|| FieldError::Parse(v.to_string()))?;
        Self::new(degree as usize, affine)
    }
}
