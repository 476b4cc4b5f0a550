//! The function field `A = K(x)[y]/⟨m⟩` and its elements.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{factor_string, Field};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

/// A polynomial in `y` with coefficients in `K[x]`, lowest degree first.
pub type BiPoly<K> = Vec<Poly<K>>;

/// An element `Σ cᵢ(x)·yⁱ` of `A`, reduced modulo `m`.
#[derive(Clone, PartialEq)]
pub struct AlgElem<K: Field> {
    coeffs: Vec<RatFunc<K>>,
}

impl<K: Field> AlgElem<K> {
    /// Panics if `coeffs` is empty.
    pub fn from_coeffs(coeffs: Vec<RatFunc<K>>) -> Self {
        assert!(!coeffs.is_empty());
        AlgElem { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        AlgElem { coeffs: vec![RatFunc::zero(); n] }
    }

    pub fn from_base(n: usize, r: RatFunc<K>) -> Self {
        let mut e = Self::zero(n);
        e.coeffs[0] = r;
        e
    }

    pub fn coeffs(&self) -> &[RatFunc<K>] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Whether the element lies in `K` (a constant for `d/dx`).
    pub fn is_constant(&self) -> bool {
        self.coeffs[0].is_constant() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, r: &RatFunc<K>) -> Self {
        AlgElem { coeffs: self.coeffs.iter().map(|c| c.mul_ref(r)).collect() }
    }

    pub fn scale_k(&self, c: &K) -> Self {
        AlgElem { coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    /// Coefficientwise parameter derivative (the `t`-dependence of the
    /// coefficients only, not of `y`).
    fn diff_param_coeffs(&self) -> Self {
        AlgElem { coeffs: self.coeffs.iter().map(|c| c.diff_param()).collect() }
    }

    /// Drop the `K`-constant part of the `y⁰` coefficient (the constant term
    /// of its polynomial part).
    pub fn without_constant(&self) -> Self {
        let mut out = self.clone();
        let c0 = &self.coeffs[0];
        let (q, _) = c0.numer().div_rem(c0.denom());
        let k = q.coeff(0);
        if !k.is_zero() {
            out.coeffs[0] = c0.sub_ref(&RatFunc::constant(k));
        }
        out
    }

    pub fn to_expr_string(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "y".into(),
                _ => format!("y^{i}"),
            };
            let term = if i == 0 {
                let s = c.to_string();
                if c.is_polynomial() || out.is_empty() { s } else { format!("({s})") }
            } else if c.is_one() {
                mono
            } else {
                format!("{}*{mono}", factor_string(c))
            };
            if !out.is_empty() {
                out.push_str(" + ");
            }
            out.push_str(&term);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl<K: Field> fmt::Display for AlgElem<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr_string())
    }
}

impl<K: Field> fmt::Debug for AlgElem<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr_string())
    }
}

impl<K: Field> Add for &AlgElem<K> {
    type Output = AlgElem<K>;
    fn add(self, rhs: &AlgElem<K>) -> AlgElem<K> {
        AlgElem { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.add_ref(b)).collect() }
    }
}

impl<K: Field> Sub for &AlgElem<K> {
    type Output = AlgElem<K>;
    fn sub(self, rhs: &AlgElem<K>) -> AlgElem<K> {
        AlgElem { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.sub_ref(b)).collect() }
    }
}

impl<K: Field> Neg for &AlgElem<K> {
    type Output = AlgElem<K>;
    fn neg(self) -> AlgElem<K> {
        AlgElem { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

impl<K: Field> Add for AlgElem<K> {
    type Output = AlgElem<K>;
    fn add(self, rhs: AlgElem<K>) -> AlgElem<K> {
        &self + &rhs
    }
}

impl<K: Field> Sub for AlgElem<K> {
    type Output = AlgElem<K>;
    fn sub(self, rhs: AlgElem<K>) -> AlgElem<K> {
        &self - &rhs
    }
}

/// The defining data of `A = K(x)[y]/⟨m⟩` together with cached derivations.
#[derive(Clone, Debug)]
pub struct Curve<K: Field> {
    m: BiPoly<K>,
    n: usize,
    /// `yᵏ` for `k = n .. 2n-2`, reduced.
    reductions: Vec<Vec<RatFunc<K>>>,
    dmdx: BiPoly<K>,
    dmdy: BiPoly<K>,
    dmdt: BiPoly<K>,
    /// `d/dx (yⁱ)` for `i < n`.
    dx_powers: Vec<AlgElem<K>>,
    /// `d/dt (yⁱ)` for `i < n`; zeros when `K` has no parameter.
    dt_powers: Vec<AlgElem<K>>,
}

impl<K: Field> Curve<K> {
    /// Normalize `m` (remove its content in `K[x]`, make the leading
    /// coefficient in `y` monic) and populate the derivation caches.
    pub fn new(m: BiPoly<K>) -> Result<Self> {
        let mut m = m;
        while m.last().is_some_and(|c| c.is_zero()) {
            m.pop();
        }
        if m.len() < 2 {
            return Err(Error::Domain("defining polynomial must have positive degree in y".into()));
        }
        let mut content = Poly::zero();
        for c in &m {
            content = Poly::gcd(&content, c);
        }
        let lc = m.last().unwrap().exact_div(&content).lc().inv();
        let m: BiPoly<K> = m.iter().map(|c| c.exact_div(&content).scale(&lc)).collect();
        let n = m.len() - 1;

        let lead = RatFunc::from_poly(m[n].clone());
        // y^n = -(1/lead) Σ_{i<n} m_i y^i
        let mut reductions: Vec<Vec<RatFunc<K>>> = Vec::new();
        let base: Vec<RatFunc<K>> = (0..n).map(|i| -RatFunc::from_poly(m[i].clone()).div_ref(&lead)).collect();
        if n >= 2 {
            reductions.push(base.clone());
            for _ in n + 1..=2 * n - 2 {
                let prev = reductions.last().unwrap();
                // y · prev
                let mut next = vec![RatFunc::zero(); n];
                next[1..n].clone_from_slice(&prev[..n - 1]);
                let top = &prev[n - 1];
                for i in 0..n {
                    next[i] = next[i].add_ref(&top.mul_ref(&base[i]));
                }
                reductions.push(next);
            }
        }

        let dmdx: BiPoly<K> = m.iter().map(|c| c.derivative()).collect();
        let dmdy: BiPoly<K> = m.iter().enumerate().skip(1).map(|(i, c)| c.scale(&K::from_i64(i as i64))).collect();
        let dmdt: BiPoly<K> = m.iter().map(|c| c.diff_param()).collect();

        let mut curve = Curve {
            m,
            n,
            reductions,
            dmdx,
            dmdy,
            dmdt,
            dx_powers: Vec::new(),
            dt_powers: Vec::new(),
        };
        if n == 1 {
            // y = -m_0/m_1 lies in K(x); A is K(x) itself.
            curve.dx_powers = vec![AlgElem::zero(1)];
            curve.dt_powers = vec![AlgElem::zero(1)];
            return Ok(curve);
        }
        let my_inv = curve.inv(&curve.bipoly_elem(&curve.dmdy))?;
        let dy = -&curve.mul(&curve.bipoly_elem(&curve.dmdx), &my_inv);
        let dty = -&curve.mul(&curve.bipoly_elem(&curve.dmdt), &my_inv);
        curve.dx_powers = curve.power_derivatives(&dy);
        curve.dt_powers = curve.power_derivatives(&dty);
        Ok(curve)
    }

    fn power_derivatives(&self, dy: &AlgElem<K>) -> Vec<AlgElem<K>> {
        let mut out = vec![AlgElem::zero(self.n)];
        let mut ypow = self.one();
        for i in 1..self.n {
            // d(yⁱ) = i·yⁱ⁻¹·y'
            out.push(self.mul(&ypow, dy).scale_k(&K::from_i64(i as i64)));
            ypow = self.mul(&ypow, &self.y());
        }
        out
    }

    /// `deg_y(m)`.
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn defining_poly(&self) -> &BiPoly<K> {
        &self.m
    }

    /// Leading coefficient of `m` in `y`.
    pub fn lead(&self) -> &Poly<K> {
        &self.m[self.n]
    }

    pub fn dmdx(&self) -> &BiPoly<K> {
        &self.dmdx
    }

    pub fn dmdy(&self) -> &BiPoly<K> {
        &self.dmdy
    }

    pub fn dmdt(&self) -> &BiPoly<K> {
        &self.dmdt
    }

    pub fn zero(&self) -> AlgElem<K> {
        AlgElem::zero(self.n)
    }

    pub fn one(&self) -> AlgElem<K> {
        AlgElem::from_base(self.n, RatFunc::one())
    }

    /// The class of `y`. For `n = 1` this is `-m₀/m₁ ∈ K(x)`.
    pub fn y(&self) -> AlgElem<K> {
        if self.n == 1 {
            return AlgElem::from_base(1, RatFunc::new(-self.m[0].clone(), self.m[1].clone()));
        }
        let mut e = self.zero();
        e.coeffs[1] = RatFunc::one();
        e
    }

    /// The power-basis element `yⁱ`, `i < n`.
    pub fn y_pow(&self, i: usize) -> AlgElem<K> {
        assert!(i < self.n);
        let mut e = self.zero();
        e.coeffs[i] = RatFunc::one();
        e
    }

    pub fn base(&self, r: RatFunc<K>) -> AlgElem<K> {
        AlgElem::from_base(self.n, r)
    }

    /// Image of a polynomial in `y` with `K(x)` coefficients.
    pub fn from_y_poly(&self, coeffs: &[RatFunc<K>]) -> AlgElem<K> {
        self.reduce(coeffs.to_vec())
    }

    /// Image of a polynomial in `y` with `K[x]` coefficients.
    pub fn bipoly_elem(&self, p: &[Poly<K>]) -> AlgElem<K> {
        let coeffs: Vec<RatFunc<K>> = p.iter().map(|c| RatFunc::from_poly(c.clone())).collect();
        self.from_y_poly(&coeffs)
    }

    fn reduce(&self, mut c: Vec<RatFunc<K>>) -> AlgElem<K> {
        if c.len() <= self.n {
            c.resize(self.n, RatFunc::zero());
            return AlgElem { coeffs: c };
        }
        if self.n == 1 {
            // substitute y = -m0/m1
            let y = self.y().coeffs[0].clone();
            let mut acc = RatFunc::zero();
            for a in c.iter().rev() {
                acc = acc.mul_ref(&y).add_ref(a);
            }
            return AlgElem { coeffs: vec![acc] };
        }
        // Higher powers: reduce from the top using y^n = Σ base_i y^i.
        let n = self.n;
        while c.len() > 2 * n - 1 {
            let top = c.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let k = c.len(); // power being eliminated
            let base = &self.reductions[0];
            for (ci, bi) in c[k - n..k].iter_mut().zip(base) {
                *ci = ci.add_ref(&top.mul_ref(bi));
            }
        }
        let mut out: Vec<RatFunc<K>> = c[..n].to_vec();
        for (k, ck) in c.iter().enumerate().skip(n) {
            if ck.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(&self.reductions[k - n]) {
                if !r.is_zero() {
                    *o = o.add_ref(&ck.mul_ref(r));
                }
            }
        }
        AlgElem { coeffs: out }
    }

    pub fn mul(&self, a: &AlgElem<K>, b: &AlgElem<K>) -> AlgElem<K> {
        let n = self.n;
        let mut c = vec![RatFunc::zero(); 2 * n - 1];
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                c[i + j] = c[i + j].add_ref(&ai.mul_ref(bj));
            }
        }
        self.reduce(c)
    }

    pub fn pow(&self, a: &AlgElem<K>, e: u32) -> AlgElem<K> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Multiplicative inverse. A zero divisor exposes a factor of `m`.
    pub fn inv(&self, a: &AlgElem<K>) -> Result<AlgElem<K>> {
        if a.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        if self.n == 1 {
            return Ok(AlgElem::from_base(1, a.coeffs[0].inv()));
        }
        let m = Poly::from_coeffs(self.m.iter().map(|c| RatFunc::from_poly(c.clone())).collect());
        let f = Poly::from_coeffs(a.coeffs.clone());
        let (g, s, _) = Poly::ext_gcd(&f, &m)?;
        if !g.is_constant() {
            let (_, nums) = crate::ratfunc::common_denominator(g.coeffs());
            let factor = format_bipoly(&nums);
            return Err(Error::CurveReducible { factor });
        }
        Ok(self.reduce(s.into_coeffs()))
    }

    pub fn div(&self, a: &AlgElem<K>, b: &AlgElem<K>) -> Result<AlgElem<K>> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// The derivation `d/dx`.
    pub fn dx(&self, f: &AlgElem<K>) -> AlgElem<K> {
        let mut out = AlgElem { coeffs: f.coeffs.iter().map(|c| c.derivative()).collect() };
        for (c, dp) in f.coeffs.iter().zip(&self.dx_powers).skip(1) {
            if !c.is_zero() {
                out = &out + &dp.scale(c);
            }
        }
        out
    }

    /// The derivation `d/dt`; zero on everything when `K` has no parameter.
    pub fn dt(&self, f: &AlgElem<K>) -> AlgElem<K> {
        let mut out = f.diff_param_coeffs();
        for (c, dp) in f.coeffs.iter().zip(&self.dt_powers).skip(1) {
            if !c.is_zero() {
                out = &out + &dp.scale(c);
            }
        }
        out
    }

    /// Matrix of multiplication by `f` on the power basis: row `i` holds
    /// the coordinates of `f·yⁱ`.
    pub fn mult_matrix(&self, f: &AlgElem<K>) -> Matrix<RatFunc<K>> {
        let mut rows = Vec::with_capacity(self.n);
        let mut cur = f.clone();
        for i in 0..self.n {
            rows.push(cur.coeffs.clone());
            if i + 1 < self.n {
                cur = self.mul(&cur, &self.y());
            }
        }
        Matrix::from_rows(rows)
    }

    pub fn trace(&self, f: &AlgElem<K>) -> RatFunc<K> {
        let m = self.mult_matrix(f);
        (0..self.n).fold(RatFunc::zero(), |acc, i| acc.add_ref(m.get(i, i)))
    }

    /// Characteristic polynomial of multiplication by `f` over `K(x)`,
    /// monic of degree `n` (Faddeev–LeVerrier).
    pub fn char_poly(&self, f: &AlgElem<K>) -> Poly<RatFunc<K>> {
        let a = self.mult_matrix(f);
        let n = self.n;
        let mut coeffs = vec![RatFunc::zero(); n + 1];
        coeffs[n] = RatFunc::one();
        let mut mk = Matrix::<RatFunc<K>>::zeros(n, n);
        for k in 1..=n {
            let mut next = a.mul(&mk);
            for i in 0..n {
                let v = next.get(i, i).add_ref(&coeffs[n - k + 1]);
                next.set(i, i, v);
            }
            mk = next;
            let am = a.mul(&mk);
            let tr = (0..n).fold(RatFunc::zero(), |acc, i| acc.add_ref(am.get(i, i)));
            coeffs[n - k] = -tr.scale(&K::from_i64(k as i64).inv());
        }
        Poly::from_coeffs(coeffs)
    }

    /// Integral over `K[x]`: every characteristic polynomial coefficient is
    /// a polynomial.
    pub fn is_integral(&self, f: &AlgElem<K>) -> bool {
        self.char_poly(f).coeffs().iter().all(|c| c.is_polynomial())
    }

    /// Integral over the valuation ring at infinity: every characteristic
    /// polynomial coefficient has numerator degree at most its denominator
    /// degree.
    pub fn is_integral_at_infinity(&self, f: &AlgElem<K>) -> bool {
        self.char_poly(f).coeffs().iter().all(|c| c.is_zero() || c.valuation_at_infinity().unwrap() >= 0)
    }

    pub fn to_expr_string(&self) -> String {
        format_bipoly(&self.m)
    }
}

fn format_bipoly<K: Field>(p: &[Poly<K>]) -> String {
    let mut out = String::new();
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "y".into(),
            _ => format!("y^{i}"),
        };
        let term = if i == 0 {
            c.to_string()
        } else if c.is_one() {
            mono
        } else {
            format!("({c})*{mono}")
        };
        match term.strip_prefix('-') {
            Some(rest) if !out.is_empty() => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            _ => {
                if !out.is_empty() {
                    out.push_str(" + ");
                }
                out.push_str(&term);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<K: Field> fmt::Display for Curve<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Qt, Rat};

    type P = Poly<Rat>;
    type R = RatFunc<Rat>;

    fn sqrt_x() -> Curve<Rat> {
        Curve::new(vec![P::from_i64s(&[0, -1]), P::zero(), P::one()]).unwrap()
    }

    fn r(n: &[i64], d: &[i64]) -> R {
        R::new(P::from_i64s(n), P::from_i64s(d))
    }

    #[test]
    fn content_is_removed() {
        let c = Curve::new(vec![P::from_i64s(&[0, 0, -1]), P::zero(), P::from_i64s(&[0, 1])]).unwrap();
        assert_eq!(c.defining_poly(), sqrt_x().defining_poly());
        assert!(Curve::<Rat>::new(vec![P::from_i64s(&[1, 1])]).is_err());
    }

    #[test]
    fn multiplication_and_inverse() {
        let c = sqrt_x();
        let y = c.y();
        assert_eq!(c.mul(&y, &y), c.base(r(&[0, 1], &[1])));
        let yi = c.inv(&y).unwrap();
        assert_eq!(yi, y.scale(&r(&[1], &[0, 1])));
        assert_eq!(c.mul(&y, &yi), c.one());
    }

    #[test]
    fn derivative_of_sqrt() {
        let c = sqrt_x();
        // y' = y/(2x)
        assert_eq!(c.dx(&c.y()), c.y().scale(&r(&[1], &[0, 2])));
        let x2 = c.base(r(&[0, 0, 1], &[1]));
        assert_eq!(c.dx(&x2), c.base(r(&[0, 2], &[1])));
    }

    #[test]
    fn derivative_with_parameter() {
        // m = y^2 - (x + t); d/dx (2/3 (x+t) y) = y
        type PQ = Poly<Qt>;
        let t = Qt::t();
        let m = vec![PQ::from_coeffs(vec![-t.clone(), Qt::from_i64(-1)]), PQ::zero(), PQ::one()];
        let c = Curve::new(m).unwrap();
        let g = c.y().scale(&RatFunc::from_poly(PQ::from_coeffs(vec![t.clone(), Qt::one()]).scale(
            &(Qt::from_i64(2) / Qt::from_i64(3)),
        )));
        assert_eq!(c.dx(&g), c.y());
        // dt(x) = 0; Leibniz for t·y
        assert!(c.dt(&c.base(RatFunc::from_poly(PQ::x()))).is_zero());
        let ty = c.y().scale(&RatFunc::constant(t.clone()));
        assert_eq!(c.dt(&ty), &c.y() + &c.dt(&c.y()).scale(&RatFunc::constant(t)));
    }

    #[test]
    fn char_poly_examples() {
        let c = sqrt_x();
        // T^2 - x
        let cp = c.char_poly(&c.y());
        assert_eq!(cp.coeffs(), &[r(&[0, -1], &[1]), R::zero(), R::one()]);
        // (T - 3)^2
        let cp = c.char_poly(&c.base(r(&[3], &[1])));
        assert_eq!(cp.coeffs(), &[r(&[9], &[1]), r(&[-6], &[1]), R::one()]);
        // y/x -> T^2 - 1/x
        let cp = c.char_poly(&c.y().scale(&r(&[1], &[0, 1])));
        assert_eq!(cp.coeffs(), &[r(&[-1], &[0, 1]), R::zero(), R::one()]);
        assert_eq!(c.trace(&c.y()), R::zero());
    }

    #[test]
    fn integrality_examples() {
        let c = sqrt_x();
        assert!(c.is_integral(&c.y()));
        assert!(!c.is_integral_at_infinity(&c.y()));
        let inv_x = c.base(r(&[1], &[0, 1]));
        assert!(!c.is_integral(&inv_x));
        assert!(c.is_integral_at_infinity(&inv_x));
        assert!(c.is_integral(&c.y().scale(&r(&[1, 0, 1], &[1]))));
    }

    #[test]
    fn reducible_curve_is_detected() {
        // y^2 - x^2 = (y - x)(y + x): y - x is a zero divisor
        let c = Curve::new(vec![P::from_i64s(&[0, 0, -1]), P::zero(), P::one()]).unwrap();
        let z = &c.y() - &c.base(r(&[0, 1], &[1]));
        assert!(matches!(c.inv(&z), Err(Error::CurveReducible { .. })));
    }
}
