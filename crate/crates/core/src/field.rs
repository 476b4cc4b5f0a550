//! Coefficient fields.
//!
//! Everything above this module is generic over [`Field`]. Two instances are
//! provided: [`Rat`] for plain integration over ℚ, and [`Qt`] = ℚ(t) for
//! problems carrying a parameter (creative telescoping).

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::Poly;
use crate::ratfunc::RatFunc;

/// A field of characteristic zero with an optional derivation `D_t`.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Whether the field carries a parameter `t` with a nontrivial derivation.
    const HAS_PARAMETER: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(n: i64) -> Self;
    fn from_rational(q: BigRational) -> Self;

    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.clone() - other.clone()
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }
    fn div_ref(&self, other: &Self) -> Self {
        self.mul_ref(&other.inv())
    }

    /// The derivation with respect to the parameter; zero when there is none.
    fn diff_param(&self) -> Self;

    /// A nonzero rational polynomial (coefficients low to high) vanishing at
    /// every rational root of the polynomial with the given coefficients.
    /// Returns an empty vector when all coefficients are zero.
    fn rational_shadow(coeffs: &[Self]) -> Vec<BigRational>;

    /// Rescale a vector by a nonzero field element so that it is free of
    /// denominators and content, with a positive leading term in its last
    /// nonzero entry.
    fn normalize_content(v: &mut [Self]);

    /// True when the printed form can be used as a factor without parentheses.
    fn is_simple(&self) -> bool;

    /// Whether the printed form starts with a minus sign that can be lifted
    /// out as a subtraction.
    fn is_negative(&self) -> bool;

    /// Substitute a rational value for the parameter, if defined there.
    fn specialize(&self, _t: &BigRational) -> Option<BigRational>;
}

/// Arbitrary-precision rational number.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn new(n: i64, d: i64) -> Self {
        Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }
    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }
    pub fn to_f64(&self) -> Option<f64> {
        self.0.to_f64()
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! rat_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                Rat(self.0.$m(rhs.0))
            }
        }
    };
}
rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);
rat_binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

/// The positive rational `s` such that `s * q` are coprime integers.
fn integer_normalizer<'a>(values: impl Iterator<Item = &'a BigRational> + Clone) -> BigRational {
    let mut den = BigInt::one();
    for q in values.clone() {
        den = den.lcm(q.denom());
    }
    let mut g = BigInt::zero();
    for q in values {
        g = g.gcd(&(q * BigRational::from_integer(den.clone())).to_integer());
    }
    if g.is_zero() {
        return BigRational::one();
    }
    BigRational::new(den, g)
}

impl Field for Rat {
    const HAS_PARAMETER: bool = false;

    fn zero() -> Self {
        Rat(BigRational::zero())
    }
    fn one() -> Self {
        Rat(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn from_i64(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }
    fn from_rational(q: BigRational) -> Self {
        Rat(q)
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Rat(self.0.recip())
    }
    fn add_ref(&self, other: &Self) -> Self {
        Rat(&self.0 + &other.0)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        Rat(&self.0 - &other.0)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        Rat(&self.0 * &other.0)
    }
    fn div_ref(&self, other: &Self) -> Self {
        Rat(&self.0 / &other.0)
    }
    fn diff_param(&self) -> Self {
        Self::zero()
    }
    fn rational_shadow(coeffs: &[Self]) -> Vec<BigRational> {
        if coeffs.iter().all(|c| c.is_zero()) {
            return Vec::new();
        }
        coeffs.iter().map(|c| c.0.clone()).collect()
    }
    fn normalize_content(v: &mut [Self]) {
        let Some(last) = v.iter().rposition(|c| !c.is_zero()) else {
            return;
        };
        let mut scale = integer_normalizer(v.iter().map(|c| &c.0));
        if v[last].0.is_negative() {
            scale = -scale;
        }
        for c in v.iter_mut() {
            c.0 = &c.0 * &scale;
        }
    }
    fn is_simple(&self) -> bool {
        !self.0.is_negative()
    }
    fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
    fn specialize(&self, _t: &BigRational) -> Option<BigRational> {
        Some(self.0.clone())
    }
}

/// The rational function field ℚ(t), with `D_t` as its derivation.
#[derive(Clone, PartialEq)]
pub struct Qt(pub RatFunc<Rat>);

impl Qt {
    /// The parameter `t`.
    pub fn t() -> Self {
        Qt(RatFunc::from_poly(Poly::x()))
    }
    pub fn from_ratfunc(r: RatFunc<Rat>) -> Self {
        Qt(r)
    }
    pub fn inner(&self) -> &RatFunc<Rat> {
        &self.0
    }
}

impl fmt::Display for Qt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.to_string_in("t"))
    }
}

impl fmt::Debug for Qt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! qt_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Qt {
            type Output = Qt;
            fn $m(self, rhs: Qt) -> Qt {
                Qt(self.0.$m(rhs.0))
            }
        }
    };
}
qt_binop!(Add, add);
qt_binop!(Sub, sub);
qt_binop!(Mul, mul);
qt_binop!(Div, div);

impl Neg for Qt {
    type Output = Qt;
    fn neg(self) -> Qt {
        Qt(-self.0)
    }
}

impl Field for Qt {
    const HAS_PARAMETER: bool = true;

    fn zero() -> Self {
        Qt(RatFunc::zero())
    }
    fn one() -> Self {
        Qt(RatFunc::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn from_i64(n: i64) -> Self {
        Qt(RatFunc::constant(Rat::from_i64(n)))
    }
    fn from_rational(q: BigRational) -> Self {
        Qt(RatFunc::constant(Rat(q)))
    }
    fn inv(&self) -> Self {
        Qt(self.0.inv())
    }
    fn add_ref(&self, other: &Self) -> Self {
        Qt(self.0.add_ref(&other.0))
    }
    fn sub_ref(&self, other: &Self) -> Self {
        Qt(self.0.sub_ref(&other.0))
    }
    fn mul_ref(&self, other: &Self) -> Self {
        Qt(self.0.mul_ref(&other.0))
    }
    fn div_ref(&self, other: &Self) -> Self {
        Qt(self.0.div_ref(&other.0))
    }
    fn diff_param(&self) -> Self {
        Qt(self.0.derivative())
    }
    fn rational_shadow(coeffs: &[Self]) -> Vec<BigRational> {
        // Clear t-denominators; a rational root must annihilate every
        // t-coefficient, so any nonzero one will do.
        let mut den = Poly::<Rat>::one();
        for c in coeffs {
            den = den.lcm(c.0.denom());
        }
        let nums: Vec<Poly<Rat>> = coeffs
            .iter()
            .map(|c| c.0.numer() * &den.exact_div(c.0.denom()))
            .collect();
        let max_deg = nums.iter().filter_map(|p| p.degree()).max();
        let Some(max_deg) = max_deg else {
            return Vec::new();
        };
        for k in 0..=max_deg {
            let row: Vec<BigRational> = nums.iter().map(|p| p.coeff(k).0).collect();
            if row.iter().any(|c| !c.is_zero()) {
                return row;
            }
        }
        Vec::new()
    }
    fn normalize_content(v: &mut [Self]) {
        let Some(last) = v.iter().rposition(|c| !c.is_zero()) else {
            return;
        };
        let mut den = Poly::<Rat>::one();
        for c in v.iter() {
            den = den.lcm(c.0.denom());
        }
        let nums: Vec<Poly<Rat>> = v
            .iter()
            .map(|c| c.0.numer() * &den.exact_div(c.0.denom()))
            .collect();
        let mut g = Poly::<Rat>::zero();
        for p in &nums {
            g = Poly::gcd(&g, p);
        }
        let nums: Vec<Poly<Rat>> = nums.iter().map(|p| p.exact_div(&g)).collect();
        let scale = integer_normalizer(nums.iter().flat_map(|p| p.coeffs().iter().map(|c| &c.0)));
        let mut out: Vec<Poly<Rat>> = nums.iter().map(|p| p.scale(&Rat(scale.clone()))).collect();
        // sign convention: the leading coefficient of the last entry is positive
        if out[last].lc().is_negative() {
            out = out.into_iter().map(|p| -p).collect();
        }
        for (c, p) in v.iter_mut().zip(out) {
            *c = Qt(RatFunc::from_poly(p));
        }
    }
    fn is_simple(&self) -> bool {
        if !self.0.denom().is_one() {
            return false;
        }
        let n = self.0.numer();
        match n.degree() {
            None => true,
            Some(0) => !n.lc().is_negative(),
            Some(d) => n.coeffs()[..d].iter().all(|c| c.is_zero()) && n.lc().is_one(),
        }
    }
    fn is_negative(&self) -> bool {
        self.0.denom().is_one()
            && self.0.numer().degree().is_some()
            && self.0.numer().terms_nonzero() == 1
            && self.0.numer().lc().is_negative()
    }
    fn specialize(&self, t: &BigRational) -> Option<BigRational> {
        let d = self.0.denom().eval(&Rat(t.clone()));
        if d.is_zero() {
            return None;
        }
        Some((self.0.numer().eval(&Rat(t.clone())) / d).0)
    }
}

/// Nonnegative integer roots of a polynomial over `K` (coefficients low to high).
pub fn nonneg_integer_roots<K: Field>(coeffs: &[K]) -> Vec<u64> {
    let shadow = K::rational_shadow(coeffs);
    let Some(top) = shadow.iter().rposition(|c| !c.is_zero()) else {
        return Vec::new();
    };
    if top == 0 {
        return Vec::new();
    }
    // Cauchy bound on the absolute value of any root.
    let lead = shadow[top].abs();
    let mut bound = BigRational::zero();
    for c in &shadow[..top] {
        let r = c.abs() / &lead;
        if r > bound {
            bound = r;
        }
    }
    let bound = (bound + BigRational::one()).ceil().to_integer();
    let limit = bound.to_u64().unwrap_or(u64::MAX).min(1 << 20);
    let mut roots = Vec::new();
    for s in 0..=limit {
        let sk = K::from_rational(BigRational::from_integer(BigInt::from(s)));
        let mut acc = K::zero();
        for c in coeffs.iter().rev() {
            acc = acc.mul_ref(&sk).add_ref(c);
        }
        if acc.is_zero() {
            roots.push(s);
        }
    }
    roots
}

/// Render a field element for use as a factor in a product.
pub fn factor_string<K: Field>(c: &K) -> String {
    if c.is_simple() {
        alloc::format!("{c}")
    } else {
        alloc::format!("({c})")
    }
}
