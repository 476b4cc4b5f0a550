//! Rational functions `num/den` over a [`Field`], kept in lowest terms with a
//! monic denominator.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;

use crate::field::Field;
use crate::poly::Poly;

#[derive(Clone, PartialEq)]
pub struct RatFunc<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFunc<F> {
    /// Panics if `den` is zero.
    pub fn new(num: Poly<F>, den: Poly<F>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.exact_div(&g), den.exact_div(&g)) };
        let k = den.lc().inv();
        RatFunc { num: num.scale(&k), den: den.scale(&k) }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn numer(&self) -> &Poly<F> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<F> {
        &self.den
    }

    pub fn into_parts(self) -> (Poly<F>, Poly<F>) {
        (self.num, self.den)
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    /// The value as a polynomial, if it is one.
    pub fn as_poly(&self) -> Option<&Poly<F>> {
        self.is_polynomial().then_some(&self.num)
    }

    /// `d/dx` on the main variable.
    pub fn derivative(&self) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative());
        }
        let dd = self.den.derivative();
        let g = Poly::gcd(&self.den, &dd);
        let q = self.den.exact_div(&g);
        let n = &(&self.num.derivative() * &q) - &(&self.num * &dd.exact_div(&g));
        Self::new(n, &self.den * &q)
    }

    /// The parameter derivation applied through the quotient rule.
    pub fn diff_param(&self) -> Self {
        if !F::HAS_PARAMETER || self.num.is_zero() {
            return Self::zero();
        }
        let dn = self.num.diff_param();
        if self.den.is_one() {
            return Self::from_poly(dn);
        }
        let dd = self.den.diff_param();
        let g = Poly::gcd(&self.den, &dd);
        let q = self.den.exact_div(&g);
        let n = &(&dn * &q) - &(&self.num * &dd.exact_div(&g));
        Self::new(n, &self.den * &q)
    }

    /// `deg(den) - deg(num)`, the order at infinity; `None` for zero.
    pub fn valuation_at_infinity(&self) -> Option<isize> {
        if self.num.is_zero() {
            None
        } else {
            Some(self.den.deg() - self.num.deg())
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &Poly<F>) -> Self {
        Self::new(&self.num * p, self.den.clone())
    }

    pub fn to_string_in(&self, var: &str) -> String {
        let n = self.num.to_string_in(var);
        if self.den.is_one() {
            return n;
        }
        let d = self.den.to_string_in(var);
        let n = if self.num.terms_nonzero() > 1 { format!("({n})") } else { n };
        let d = if self.den.terms_nonzero() > 1 || !self.den.lc().is_one() { format!("({d})") } else { d };
        format!("{n}/{d}")
    }

    /// Substitute a value for the main variable, if defined there.
    pub fn eval(&self, at: &F) -> Option<F> {
        let d = self.den.eval(at);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(at).div_ref(&d))
        }
    }
}

/// Common monic denominator of a vector of rational functions, with the
/// corresponding polynomial numerators.
pub fn common_denominator<F: Field>(v: &[RatFunc<F>]) -> (Poly<F>, Vec<Poly<F>>) {
    let mut den = Poly::one();
    for c in v {
        den = den.lcm(c.denom());
    }
    let nums = v.iter().map(|c| c.numer() * &den.exact_div(c.denom())).collect();
    (den, nums)
}

impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("x"))
    }
}

impl<F: Field> fmt::Debug for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("x"))
    }
}

impl<F: Field> Add for RatFunc<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl<F: Field> Sub for RatFunc<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.sub_ref(&rhs)
    }
}

impl<F: Field> Mul for RatFunc<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<F: Field> Div for RatFunc<F> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self.div_ref(&rhs)
    }
}

impl<F: Field> Neg for RatFunc<F> {
    type Output = Self;
    fn neg(self) -> Self {
        RatFunc { num: -self.num, den: self.den }
    }
}

impl<F: Field> Field for RatFunc<F> {
    const HAS_PARAMETER: bool = F::HAS_PARAMETER;

    fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }
    fn one() -> Self {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    fn from_i64(n: i64) -> Self {
        Self::constant(F::from_i64(n))
    }
    fn from_rational(q: BigRational) -> Self {
        Self::constant(F::from_rational(q))
    }
    fn inv(&self) -> Self {
        assert!(!self.num.is_zero(), "inverse of zero rational function");
        let k = self.num.lc().inv();
        RatFunc { num: self.den.scale(&k), den: self.num.scale(&k) }
    }
    fn add_ref(&self, other: &Self) -> Self {
        if self.num.is_zero() {
            return other.clone();
        }
        if other.num.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            if self.den.is_one() {
                return Self::from_poly(&self.num + &other.num);
            }
            return Self::new(&self.num + &other.num, self.den.clone());
        }
        // Both fractions are reduced, so only factors of gcd(den, den') can
        // cancel.
        let g = Poly::gcd(&self.den, &other.den);
        let a = self.den.exact_div(&g);
        let b = other.den.exact_div(&g);
        let num = &(&self.num * &b) + &(&other.num * &a);
        if num.is_zero() {
            return Self::zero();
        }
        let den = &a * &other.den;
        if g.is_one() {
            return RatFunc { num, den };
        }
        let h = Poly::gcd(&num, &g);
        if h.is_one() {
            return RatFunc { num, den };
        }
        RatFunc { num: num.exact_div(&h), den: den.exact_div(&h) }
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&-other.clone())
    }
    fn mul_ref(&self, other: &Self) -> Self {
        if self.num.is_zero() || other.num.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(&self.num * &other.num);
        }
        // cross-cancel before multiplying
        let g1 = Poly::gcd(&self.num, &other.den);
        let g2 = Poly::gcd(&other.num, &self.den);
        let n = &self.num.exact_div(&g1) * &other.num.exact_div(&g2);
        let d = &self.den.exact_div(&g2) * &other.den.exact_div(&g1);
        let k = d.lc().inv();
        RatFunc { num: n.scale(&k), den: d.scale(&k) }
    }
    fn div_ref(&self, other: &Self) -> Self {
        self.mul_ref(&other.inv())
    }
    fn diff_param(&self) -> Self {
        RatFunc::diff_param(self)
    }
    fn rational_shadow(coeffs: &[Self]) -> Vec<BigRational> {
        // Roots in K are roots of the numerators after clearing denominators;
        // pick the first nonzero x-coefficient row and defer to K.
        let (_, nums) = common_denominator(coeffs);
        let max_deg = nums.iter().filter_map(|p| p.degree()).max();
        let Some(max_deg) = max_deg else {
            return Vec::new();
        };
        for k in 0..=max_deg {
            let row: Vec<F> = nums.iter().map(|p| p.coeff(k)).collect();
            let s = F::rational_shadow(&row);
            if !s.is_empty() {
                return s;
            }
        }
        Vec::new()
    }
    fn normalize_content(v: &mut [Self]) {
        let (_, nums) = common_denominator(v);
        let mut g = Poly::zero();
        for p in &nums {
            g = Poly::gcd(&g, p);
        }
        if g.is_zero() {
            return;
        }
        for (c, p) in v.iter_mut().zip(nums) {
            *c = Self::from_poly(p.exact_div(&g));
        }
    }
    fn is_simple(&self) -> bool {
        self.den.is_one() && self.num.terms_nonzero() <= 1 && self.num.lc().is_simple()
    }
    fn is_negative(&self) -> bool {
        self.den.is_one() && self.num.terms_nonzero() == 1 && self.num.lc().is_negative()
    }
    fn specialize(&self, _t: &BigRational) -> Option<BigRational> {
        None
    }
}
