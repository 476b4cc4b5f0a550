//! Dense univariate polynomials over a [`Field`].

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{factor_string, Field, Rat};
use num_bigint::BigInt;
use num_rational::BigRational;

/// A polynomial stored densely by increasing degree, without trailing zeros.
#[derive(Clone, PartialEq)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn monomial(c: F, k: usize) -> Self {
        let mut coeffs = vec![F::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| F::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the convention `deg 0 = -1`.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn terms_nonzero(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn eval(&self, at: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(at).add_ref(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul_ref(&F::from_i64(i as i64)))
                .collect(),
        )
    }

    /// Apply the parameter derivation coefficientwise.
    pub fn diff_param(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.diff_param()).collect())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a.mul_ref(c)).collect() }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lc = self.lc();
        if lc == F::one() {
            return self.clone();
        }
        self.scale(&lc.inv())
    }

    /// A scalar multiple free of denominators and content; see
    /// [`Field::normalize_content`].
    pub fn primitive(&self) -> Self {
        let mut c = self.coeffs.clone();
        F::normalize_content(&mut c);
        Poly { coeffs: c }
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division. Panics on division by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.deg();
        if self.deg() < dd {
            return (Self::zero(), self.clone());
        }
        let lc_inv = divisor.lc().inv();
        let mut rem = self.coeffs.clone();
        let dd = dd as usize;
        let mut quot = vec![F::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].mul_ref(&lc_inv);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub_ref(&c.mul_ref(dc));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Division that is known to be exact.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.deg() == 0 || b.deg() == 0 {
            return Self::one();
        }
        if F::HAS_PARAMETER && coprime_at_sample_point(a, b) {
            return Self::one();
        }
        // Primitive remainder sequence: content is stripped at every step,
        // which keeps coefficient growth down over K = Q(t).
        let (mut r0, mut r1) = if a.deg() >= b.deg() { (a.primitive(), b.primitive()) } else { (b.primitive(), a.primitive()) };
        loop {
            let r = r0.rem(&r1);
            if r.is_zero() {
                return r1.monic();
            }
            if r.deg() == 0 {
                return Self::one();
            }
            r0 = r1;
            r1 = r.primitive();
        }
    }

    /// Monic least common multiple; zero if either argument is zero.
    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g = Self::gcd(self, other);
        (&self.exact_div(&g) * other).monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `g = s·a + t·b`, `g` monic.
    pub fn ext_gcd(a: &Self, b: &Self) -> Result<(Self, Self, Self)> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::Domain("ext_gcd of two zero polynomials".into()));
        }
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s);
            t0 = core::mem::replace(&mut t1, t);
        }
        let k = r0.lc().inv();
        Ok((r0.scale(&k), s0.scale(&k), t0.scale(&k)))
    }

    /// Inverse modulo `m`, if `gcd(self, m) = 1`.
    pub fn inv_mod(&self, m: &Self) -> Option<Self> {
        let a = self.rem(m);
        if a.is_zero() {
            return None;
        }
        let (g, s, _) = Self::ext_gcd(&a, m).ok()?;
        if g.is_one() {
            Some(s.rem(m))
        } else {
            None
        }
    }

    /// Monic `p / gcd(p, p')`.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("squarefree part of zero".into()));
        }
        let g = Self::gcd(self, &self.derivative());
        Ok(self.exact_div(&g).monic())
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && Self::gcd(self, &self.derivative()).is_constant()
    }

    /// Yun's algorithm: monic, pairwise coprime, squarefree factors with
    /// strictly increasing multiplicities. The unit content is dropped.
    pub fn squarefree_factorization(&self) -> Result<Vec<(Self, usize)>> {
        if self.is_zero() {
            return Err(Error::Domain("squarefree factorization of zero".into()));
        }
        let p = self.monic();
        let mut out = Vec::new();
        if p.is_constant() {
            return Ok(out);
        }
        let dp = p.derivative();
        let b = Self::gcd(&p, &dp);
        let mut c = p.exact_div(&b);
        let mut d = &dp.exact_div(&b) - &c.derivative();
        let mut i = 1;
        while !c.is_constant() {
            let a = Self::gcd(&c, &d);
            c = c.exact_div(&a);
            d = &d.exact_div(&a) - &c.derivative();
            if !a.is_constant() {
                out.push((a, i));
            }
            i += 1;
        }
        Ok(out)
    }

    /// `∏ qᵢ^⌊mᵢ/2⌋` over the squarefree factorization `∏ qᵢ^mᵢ`.
    pub fn half_squarefull(&self) -> Result<Self> {
        let mut acc = Self::one();
        for (q, m) in self.squarefree_factorization()? {
            acc = &acc * &q.pow((m / 2) as u32);
        }
        Ok(acc)
    }

    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative() { (true, -c.clone()) } else { (false, c.clone()) };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.into(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                out.push_str(&factor_string(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&factor_string(&mag));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

/// Substitute a rational value for the parameter in every coefficient.
fn specialize<F: Field>(p: &Poly<F>, t: &BigRational) -> Option<Poly<Rat>> {
    let cs = p.coeffs.iter().map(|c| c.specialize(t).map(Rat)).collect::<Option<Vec<_>>>()?;
    Some(Poly::from_coeffs(cs))
}

/// Sound test for `gcd(a, b) = 1` over `K = Q(t)`: at a point where both
/// leading coefficients survive, the monic gcd specializes to a divisor of
/// the images of the same degree. `false` means "unknown".
fn coprime_at_sample_point<F: Field>(a: &Poly<F>, b: &Poly<F>) -> bool {
    for (n, d) in [(2i64, 7i64), (-5, 3), (11, 13), (-17, 19)] {
        let t = BigRational::new(BigInt::from(n), BigInt::from(d));
        let (Some(sa), Some(sb)) = (specialize(a, &t), specialize(b, &t)) else {
            continue;
        };
        if sa.deg() != a.deg() || sb.deg() != b.deg() {
            continue;
        }
        return Poly::gcd(&sa, &sb).deg() == 0;
    }
    false
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("x"))
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("x"))
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a = a.add_ref(b);
        }
        Poly::from_coeffs(coeffs)
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => a.sub_ref(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => -b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(coeffs)
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, rhs: Poly<F>) -> Poly<F> {
                (&self).$m(&rhs)
            }
        }
        impl<F: Field> $tr<&Poly<F>> for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, rhs: &Poly<F>) -> Poly<F> {
                (&self).$m(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -&self
    }
}

/// Resultant with respect to `y` of two polynomials given as coefficient
/// vectors in `y` over `K[x]` (lowest degree first).
pub fn resultant<F: Field>(p: &[Poly<F>], q: &[Poly<F>]) -> Result<Poly<F>> {
    use crate::matrix::Matrix;
    use crate::ratfunc::RatFunc;

    let trim = |v: &[Poly<F>]| -> Vec<Poly<F>> {
        let mut v = v.to_vec();
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    };
    let (p, q) = (trim(p), trim(q));
    if p.len() <= 1 && q.len() <= 1 {
        return Err(Error::Domain("resultant of two polynomials constant in y".into()));
    }
    if p.is_empty() || q.is_empty() {
        return Ok(Poly::zero());
    }
    let (dp, dq) = (p.len() - 1, q.len() - 1);
    let n = dp + dq;
    let mut s = Matrix::<RatFunc<F>>::zeros(n, n);
    // Sylvester matrix, highest coefficients first.
    for i in 0..dq {
        for (j, c) in p.iter().rev().enumerate() {
            s.set(i, i + j, RatFunc::from_poly(c.clone()));
        }
    }
    for i in 0..dp {
        for (j, c) in q.iter().rev().enumerate() {
            s.set(dq + i, i + j, RatFunc::from_poly(c.clone()));
        }
    }
    let det = s.det();
    debug_assert!(det.denom().is_one());
    Ok(det.numer().clone())
}
