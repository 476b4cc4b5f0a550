//! Polynomial reduction and the additive decomposition.
//!
//! After Hermite reduction the remainder splits into a part with denominator
//! `d` (coprime to `e`) and a part with denominator `e`. The latter is moved
//! to a basis `V` that is suitable at infinity and reduced modulo the image
//! of `φ(p) = (a·u·p' − a·u'·p + u·p·B)/u²`, which satisfies
//! `(1/a)·φ(p)·V = ((p/u)·V)'`. What survives lies in the finite-dimensional
//! standard complement `N_V`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::basis::{initial_suitable_basis, BasisW};
use crate::curve::{AlgElem, Curve};
use crate::error::{Error, Result};
use crate::field::{nonneg_integer_roots, Field};
use crate::hermite::{lazy_hermite_reduce, Remainder};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::ratfunc::{common_denominator, RatFunc};

/// A pair of coordinate vectors, e.g. the two halves of a split.
pub type PolyPair<K> = (Vec<Poly<K>>, Vec<Poly<K>>);

/// `(d, P, Q, g)` from [`Reducer::reduce`].
pub type Reduced<K> = (Poly<K>, Vec<Poly<K>>, Vec<Poly<K>>, AlgElem<K>);

/// A basis `V` with `a·V' = B·V`.
#[derive(Clone, Debug)]
pub struct InfinityBasis<K: Field> {
    elements: Vec<AlgElem<K>>,
    trans: Matrix<RatFunc<K>>,
    trans_inv: Matrix<RatFunc<K>>,
    a: Poly<K>,
    b: Vec<Vec<Poly<K>>>,
}

fn max_deg<K: Field>(rows: &[Vec<Poly<K>>]) -> isize {
    rows.iter().flatten().map(|p| p.deg()).max().unwrap_or(-1)
}

fn vec_deg<K: Field>(v: &[Poly<K>]) -> isize {
    v.iter().map(|p| p.deg()).max().unwrap_or(-1)
}

impl<K: Field> InfinityBasis<K> {
    pub fn new(curve: &Curve<K>, elements: Vec<AlgElem<K>>) -> Result<Self> {
        let n = curve.degree();
        if elements.len() != n {
            return Err(Error::Domain(format!("a basis needs {n} elements, got {}", elements.len())));
        }
        let trans = Matrix::from_rows(elements.iter().map(|w| w.coeffs().to_vec()).collect());
        let Some(trans_inv) = trans.inverse() else {
            return Err(Error::RankDeficient("basis elements are linearly dependent over K(x)".into()));
        };
        let coords: Vec<Vec<RatFunc<K>>> = elements.iter().map(|w| trans_inv.vec_mul(curve.dx(w).coeffs())).collect();
        let mut a = Poly::one();
        for c in coords.iter().flatten() {
            a = a.lcm(c.denom());
        }
        let b = coords
            .iter()
            .map(|row| row.iter().map(|c| c.numer() * &a.exact_div(c.denom())).collect())
            .collect();
        Ok(InfinityBasis { elements, trans, trans_inv, a, b })
    }

    pub fn elements(&self) -> &[AlgElem<K>] {
        &self.elements
    }

    pub fn a(&self) -> &Poly<K> {
        &self.a
    }

    pub fn b(&self) -> &[Vec<Poly<K>>] {
        &self.b
    }

    /// `deg B < deg a`.
    pub fn is_suitable(&self) -> bool {
        max_deg(&self.b) < self.a.deg()
    }

    pub fn coords(&self, f: &AlgElem<K>) -> Vec<RatFunc<K>> {
        self.trans_inv.vec_mul(f.coeffs())
    }

    pub fn combine(&self, c: &[RatFunc<K>]) -> AlgElem<K> {
        AlgElem::from_coeffs(self.trans.vec_mul(c))
    }

    /// `(1/den)·Σ cᵢvᵢ`.
    pub fn combine_poly(&self, c: &[Poly<K>], den: &Poly<K>) -> AlgElem<K> {
        let c: Vec<RatFunc<K>> = c.iter().map(|p| RatFunc::new(p.clone(), den.clone())).collect();
        self.combine(&c)
    }

    /// Membership in the module generated by `V` over the valuation ring at
    /// infinity.
    pub fn contains(&self, f: &AlgElem<K>) -> bool {
        self.coords(f).iter().all(|c| c.is_zero() || c.valuation_at_infinity().unwrap() >= 0)
    }
}

/// A basis suitable at infinity: the power basis scaled by `x^{-τᵢ}` until
/// each element is integral at infinity, then enlarged over the valuation
/// ring at infinity by `x·vᵢ'` for offending rows until `deg B < deg a`.
pub fn suitable_at_infinity<K: Field>(curve: &Curve<K>) -> Result<InfinityBasis<K>> {
    let mut elements = Vec::new();
    for i in 0..curve.degree() {
        let mut v = curve.y_pow(i);
        let inv_x = RatFunc::new(Poly::one(), Poly::x());
        // y^i/x^{τ} is integral at infinity once τ exceeds the pole order.
        for _ in 0..=64 {
            if curve.is_integral_at_infinity(&v) {
                break;
            }
            v = v.scale(&inv_x);
        }
        if !curve.is_integral_at_infinity(&v) {
            return Err(Error::SuitabilityFailure(format!("could not make y^{i} integral at infinity")));
        }
        elements.push(v);
    }
    let mut v = InfinityBasis::new(curve, elements)?;
    let x = RatFunc::from_poly(Poly::x());
    for _ in 0..256 {
        let da = v.a.deg();
        let Some(row) = (0..v.b.len()).find(|&i| vec_deg(&v.b[i]) >= da) else {
            return Ok(v);
        };
        let cand = curve.dx(&v.elements[row]).scale(&x);
        v = dvr_module_enlarge(curve, &v, &cand)?;
    }
    Err(Error::SuitabilityFailure("no basis suitable at infinity after repeated enlargement".into()))
}

/// Enlarge the module generated by `V` over the valuation ring at infinity
/// by `v_new`: the basis element at the coordinate of smallest valuation is
/// replaced by `v_new`.
pub fn dvr_module_enlarge<K: Field>(curve: &Curve<K>, v: &InfinityBasis<K>, v_new: &AlgElem<K>) -> Result<InfinityBasis<K>> {
    if !curve.is_integral_at_infinity(v_new) {
        return Err(Error::Precondition(format!("{v_new} is not integral at infinity")));
    }
    let coords = v.coords(v_new);
    let j = coords
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .min_by_key(|(i, c)| (c.valuation_at_infinity().unwrap(), *i))
        .map(|(i, _)| i);
    let Some(j) = j else {
        return Ok(v.clone());
    };
    if coords[j].valuation_at_infinity().unwrap() >= 0 {
        return Ok(v.clone());
    }
    let mut elements = v.elements.clone();
    elements[j] = v_new.clone();
    InfinityBasis::new(curve, elements)
}

/// `W = (1/b)·C·V` with `b` monic and `C` polynomial.
pub fn change_of_basis<K: Field>(w: &BasisW<K>, v: &InfinityBasis<K>) -> (Poly<K>, Vec<Vec<Poly<K>>>) {
    let n = w.len();
    let flat: Vec<RatFunc<K>> = w.elements().iter().flat_map(|x| v.coords(x)).collect();
    let (b, nums) = common_denominator(&flat);
    (b, nums.chunks(n).map(|c| c.to_vec()).collect())
}

/// `b · ∏ p^⌊r/2⌋` over the squarefree factorization of `Disc(W)`: a
/// multiple of the denominator of any antiderivative of an `e`-remainder.
pub fn compute_u<K: Field>(curve: &Curve<K>, w: &BasisW<K>, b: &Poly<K>) -> Result<Poly<K>> {
    if !w.is_integral() {
        return Err(Error::Precondition("basis is not certified integral".into()));
    }
    let disc = w.discriminant(curve);
    let Some(disc) = disc.as_poly() else {
        return Err(Error::Precondition("discriminant of an integral basis is not a polynomial".into()));
    };
    Ok((b * &disc.half_squarefull()?).monic())
}

/// `hᵢ = rᵢ·e + sᵢ·d` with `deg rᵢ < deg d`, so that
/// `h = (1/d)·Σrᵢωᵢ + (1/e)·Σsᵢωᵢ`.
pub fn euclid_split<K: Field>(h: &Remainder<K>) -> Result<PolyPair<K>> {
    let (g, _, t) = Poly::ext_gcd(&h.d, &h.e)?;
    if !g.is_one() {
        return Err(Error::Precondition(format!("gcd(d, e) = {g} is not 1")));
    }
    // t·e ≡ 1 (mod d)
    let mut r = Vec::with_capacity(h.nums.len());
    let mut s = Vec::with_capacity(h.nums.len());
    for hi in &h.nums {
        let ri = (hi * &t).rem(&h.d);
        let si = (hi - &(&ri * &h.e)).exact_div(&h.d);
        r.push(ri);
        s.push(si);
    }
    Ok((r, s))
}

/// `φ(p) = (a·u·p' − a·u'·p + u·p·B)/u²` for fixed `u`, `a`, `B`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiMap<K: Field> {
    pub u: Poly<K>,
    pub a: Poly<K>,
    pub b: Vec<Vec<Poly<K>>>,
}

impl<K: Field> PhiMap<K> {
    /// `a` must be a multiple of `v.a()`; `B` is scaled along with it.
    pub fn new(u: Poly<K>, v: &InfinityBasis<K>, a: Poly<K>) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::Precondition("u must be nonzero".into()));
        }
        let (k, r) = a.div_rem(v.a());
        if !r.is_zero() {
            return Err(Error::Precondition(format!("{a} is not a multiple of {}", v.a())));
        }
        let b = v.b.iter().map(|row| row.iter().map(|p| p * &k).collect()).collect();
        Ok(PhiMap { u, a, b })
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    /// `u²·φ(p)`, a polynomial vector.
    pub fn phi_tilde(&self, p: &[Poly<K>]) -> Vec<Poly<K>> {
        let n = self.n();
        let au = &self.a * &self.u;
        let adu = &self.a * &self.u.derivative();
        (0..n)
            .map(|j| {
                let mut acc = &(&au * &p[j].derivative()) - &(&adu * &p[j]);
                for (i, pi) in p.iter().enumerate() {
                    if !pi.is_zero() && !self.b[i][j].is_zero() {
                        acc = &acc + &(&(&self.u * pi) * &self.b[i][j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn apply(&self, p: &[Poly<K>]) -> Vec<RatFunc<K>> {
        let u2 = &self.u * &self.u;
        self.phi_tilde(p).into_iter().map(|c| RatFunc::new(c, u2.clone())).collect()
    }

    fn mu(&self) -> isize {
        self.a.deg() - 1
    }

    /// Largest `s ≥ 0` at which the leading coefficient of `φ̃(p)` can cancel
    /// for `deg p = s`: the largest nonnegative integer root of
    /// `det(lc(a)·(s − deg u)·I + B_μ)`, `B_μ` the coefficient of `x^μ` in `B`.
    pub fn degree_drop_bound(&self) -> u64 {
        let n = self.n();
        let mu = self.mu();
        let lca = self.a.lc();
        let l = K::from_i64(self.u.deg() as i64);
        let mut m = Matrix::<RatFunc<K>>::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let bij = if mu >= 0 { self.b[i][j].coeff(mu as usize) } else { K::zero() };
                let mut entry = Poly::constant(bij);
                if i == j {
                    // lc(a)·s − lc(a)·ℓ
                    entry = &entry + &Poly::from_coeffs(vec![-lca.mul_ref(&l), lca.clone()]);
                }
                m.set(i, j, RatFunc::from_poly(entry));
            }
        }
        let det = m.det();
        let roots = nonneg_integer_roots(det.numer().coeffs());
        roots.into_iter().max().unwrap_or(0)
    }

    /// Degree of `φ(p)` can only exceed `deg p + deg u + μ − 2·deg u` by
    /// cancellation-free growth; see [`PhiMap::degree_drop_bound`].
    fn preimage_window(&self, cap: usize) -> usize {
        let s = cap as isize + self.u.deg() - self.mu();
        s.max(self.degree_drop_bound() as isize).max(0) as usize
    }

    pub fn margin(&self) -> usize {
        (self.a.deg().max(max_deg(&self.b)).max(0) + 2 * self.u.deg() + 1) as usize
    }
}

#[derive(Clone, Debug)]
struct EchelonRow<K: Field> {
    /// Leading monomial `e_i x^j`.
    lt: (usize, usize),
    q: Vec<Poly<K>>,
    p: Vec<Poly<K>>,
}

/// Echelonized generators of `im(φ) ∩ K[x]ⁿ` up to `degree_cap` and the
/// standard monomials that are not leading terms.
///
/// Monomials are ordered by degree, then by component with `e₁` largest.
#[derive(Clone, Debug)]
pub struct ComplementNV<K: Field> {
    pub phi: PhiMap<K>,
    pub degree_cap: usize,
    rows: Vec<EchelonRow<K>>,
    /// `(i, j)` for `eᵢ·x^j`, `j ≤ degree_cap`, in increasing order.
    pub standard_monomials: Vec<(usize, usize)>,
}

impl<K: Field> ComplementNV<K> {
    pub fn dim_below_cap(&self) -> usize {
        self.standard_monomials.len()
    }

    /// Leading monomials of the echelon rows, decreasing.
    pub fn leading_terms(&self) -> Vec<(usize, usize)> {
        self.rows.iter().map(|r| r.lt).collect()
    }

    /// Whether `q` is supported on standard monomials.
    pub fn contains(&self, q: &[Poly<K>]) -> bool {
        let lts = self.leading_terms();
        q.iter().enumerate().all(|(i, p)| {
            p.coeffs().iter().enumerate().all(|(j, c)| c.is_zero() || (j <= self.degree_cap && !lts.contains(&(i, j))))
        })
    }
}

fn leading_monomial<K: Field>(q: &[Poly<K>]) -> Option<(usize, usize)> {
    let d = vec_deg(q);
    if d < 0 {
        return None;
    }
    let d = d as usize;
    (0..q.len()).find(|&i| q[i].deg() == d as isize).map(|i| (i, d))
}

/// Column of `eᵢx^j` in a flattening with the largest monomial first.
fn column(n: usize, maxdeg: usize, i: usize, j: usize) -> usize {
    (maxdeg - j) * n + i
}

/// Exact echelon data of `im(φ) ∩ K[x]ⁿ` in degrees `≤ cap`.
///
/// Every element of degree `≤ cap` has a preimage of degree at most
/// `max(s₀, cap + deg u − μ)`, so the images `φ̃(eᵢx^s)` over that window,
/// intersected with `u²K[x]ⁿ` by one row reduction, span all of them.
pub fn complement_build<K: Field>(phi: &PhiMap<K>, cap: usize) -> Result<ComplementNV<K>> {
    let n = phi.n();
    if max_deg(&phi.b) >= phi.a.deg() {
        return Err(Error::Precondition("deg B must be less than deg a".into()));
    }
    let smax = phi.preimage_window(cap);
    let u2 = &phi.u * &phi.u;
    let l2 = u2.deg() as usize;

    let mut gens: Vec<PolyPair<K>> = Vec::with_capacity(n * (smax + 1));
    for s in 0..=smax {
        for i in 0..n {
            let mut p = vec![Poly::zero(); n];
            p[i] = Poly::monomial(K::one(), s);
            let img = phi.phi_tilde(&p);
            gens.push((p, img));
        }
    }
    let img_deg = gens.iter().map(|(_, g)| vec_deg(g)).max().unwrap_or(0).max(0) as usize;

    let cond_cols = n * l2;
    let img_cols = n * (img_deg + 1);
    let pre_cols = n * (smax + 1);
    let mut m = Matrix::<K>::zeros(gens.len(), cond_cols + img_cols + pre_cols);
    for (r, (p, img)) in gens.iter().enumerate() {
        for (i, c) in img.iter().enumerate() {
            if l2 > 0 {
                for (k, x) in c.rem(&u2).coeffs().iter().enumerate() {
                    m.set(r, i * l2 + k, x.clone());
                }
            }
            for (j, x) in c.coeffs().iter().enumerate() {
                m.set(r, cond_cols + column(n, img_deg, i, j), x.clone());
            }
        }
        for (i, c) in p.iter().enumerate() {
            for (j, x) in c.coeffs().iter().enumerate() {
                m.set(r, cond_cols + img_cols + column(n, smax, i, j), x.clone());
            }
        }
    }
    let (red, pivots) = m.rref();

    let mut rows = Vec::new();
    for (r, &pc) in pivots.iter().enumerate() {
        if pc < cond_cols || pc >= cond_cols + img_cols {
            continue;
        }
        let mut img = vec![Poly::zero(); n];
        let mut pre = vec![Poly::zero(); n];
        for (i, (im, pr)) in img.iter_mut().zip(pre.iter_mut()).enumerate() {
            let ic: Vec<K> = (0..=img_deg).map(|j| red.get(r, cond_cols + column(n, img_deg, i, j)).clone()).collect();
            *im = Poly::from_coeffs(ic);
            let pcs: Vec<K> =
                (0..=smax).map(|j| red.get(r, cond_cols + img_cols + column(n, smax, i, j)).clone()).collect();
            *pr = Poly::from_coeffs(pcs);
        }
        let q: Vec<Poly<K>> = img.iter().map(|c| c.exact_div(&u2)).collect();
        let lt = leading_monomial(&q).expect("nonzero image row");
        rows.push(EchelonRow { lt, q, p: pre });
    }
    rows.sort_by(|x, y| y.lt.1.cmp(&x.lt.1).then(x.lt.0.cmp(&y.lt.0)));

    let lts: Vec<(usize, usize)> = rows.iter().map(|r| r.lt).collect();
    let mut standard = Vec::new();
    for j in 0..=cap {
        for i in (0..n).rev() {
            if !lts.contains(&(i, j)) {
                standard.push((i, j));
            }
        }
    }
    Ok(ComplementNV { phi: phi.clone(), degree_cap: cap, rows, standard_monomials: standard })
}

/// Raise the cap from `start` in steps of `step` until the top
/// [`PhiMap::margin`] degrees below the cap contain no standard monomial.
pub fn complement_stabilized<K: Field>(phi: &PhiMap<K>, start: usize, step: usize) -> Result<ComplementNV<K>> {
    let margin = phi.margin();
    let mut cap = start.max(margin);
    for _ in 0..64 {
        let nv = complement_build(phi, cap)?;
        let lo = cap + 1 - margin;
        if nv.standard_monomials.iter().all(|&(_, j)| j < lo) {
            return Ok(nv);
        }
        cap += step.max(1);
    }
    Err(Error::Domain("standard complement did not stabilize".into()))
}

/// `q = φ(p₁) + q₂` with `q₂` supported on standard monomials.
pub fn polyreduce<K: Field>(nv: &ComplementNV<K>, q: &[Poly<K>]) -> Result<PolyPair<K>> {
    let n = nv.phi.n();
    let dq = vec_deg(q);
    let rebuilt;
    let nv = if dq > nv.degree_cap as isize {
        rebuilt = complement_build(&nv.phi, dq as usize)?;
        &rebuilt
    } else {
        nv
    };
    let mut q2 = q.to_vec();
    let mut p1 = vec![Poly::zero(); n];
    for row in &nv.rows {
        let (i, j) = row.lt;
        let c = q2[i].coeff(j);
        if c.is_zero() {
            continue;
        }
        let k = c.div_ref(&row.q[i].coeff(j));
        for t in 0..n {
            q2[t] = &q2[t] - &row.q[t].scale(&k);
            p1[t] = &p1[t] + &row.p[t].scale(&k);
        }
    }
    Ok((p1, q2))
}

/// `f = g' + (1/d)·P·W + (1/a)·Q·V`.
#[derive(Clone, Debug)]
pub struct AdditiveDecomp<K: Field> {
    pub g: AlgElem<K>,
    pub d: Poly<K>,
    pub p: Vec<Poly<K>>,
    pub w: BasisW<K>,
    pub q: Vec<Poly<K>>,
    pub v: InfinityBasis<K>,
    pub a: Poly<K>,
    /// The denominator bound used for the polynomial reduction.
    pub u: Poly<K>,
    /// Elements adjoined by the Hermite stage.
    pub update_log: Vec<AlgElem<K>>,
}

impl<K: Field> AdditiveDecomp<K> {
    pub fn is_integrable(&self) -> bool {
        self.p.iter().all(|x| x.is_zero()) && self.q.iter().all(|x| x.is_zero())
    }

    /// `(1/d)·P·W + (1/a)·Q·V`.
    pub fn remainder(&self) -> AlgElem<K> {
        &self.w.combine_poly(&self.p, &self.d) + &self.v.combine_poly(&self.q, &self.a)
    }

    pub fn reassemble(&self, curve: &Curve<K>) -> AlgElem<K> {
        &curve.dx(&self.g) + &self.remainder()
    }
}

/// The reduction data for one `(W, V)` pair.
#[derive(Clone, Debug)]
pub struct Reducer<K: Field> {
    pub w: BasisW<K>,
    pub v: InfinityBasis<K>,
    pub b: Poly<K>,
    pub c: Vec<Vec<Poly<K>>>,
    pub nv: ComplementNV<K>,
}

impl<K: Field> Reducer<K> {
    /// `a` is taken as `lcm(a_V, e·b)` so that `(1/e)·s·W` has a polynomial
    /// numerator over `a` in `V`.
    pub fn new(curve: &Curve<K>, w: &BasisW<K>, v: &InfinityBasis<K>) -> Result<Self> {
        let (b, c) = change_of_basis(w, v);
        let u = compute_u(curve, w, &b)?;
        let a = v.a().lcm(&(w.e() * &b));
        let phi = PhiMap::new(u, v, a)?;
        let nv = complement_build(&phi, 0)?;
        Ok(Reducer { w: w.clone(), v: v.clone(), b, c, nv })
    }

    pub fn a(&self) -> &Poly<K> {
        &self.nv.phi.a
    }

    pub fn u(&self) -> &Poly<K> {
        &self.nv.phi.u
    }

    /// `Ũ` with `(1/e)·s·W = (1/a)·Ũ·V`.
    pub fn to_v(&self, s: &[Poly<K>]) -> Vec<Poly<K>> {
        let n = s.len();
        let k = self.a().exact_div(&(self.w.e() * &self.b));
        (0..n)
            .map(|j| {
                let mut acc = Poly::zero();
                for (i, si) in s.iter().enumerate() {
                    if !si.is_zero() {
                        acc = &acc + &(si * &self.c[i][j]);
                    }
                }
                &acc * &k
            })
            .collect()
    }

    /// Reduce a Hermite remainder over `self.w`: returns `(d, P, Q, g₂)` with
    /// `h = g₂' + (1/d)·P·W + (1/a)·Q·V`. Grows the cached complement as
    /// needed.
    pub fn reduce(&mut self, h: &Remainder<K>) -> Result<Reduced<K>> {
        let (r, s) = euclid_split(h)?;
        let ut = self.to_v(&s);
        let dq = vec_deg(&ut);
        if dq > self.nv.degree_cap as isize {
            self.nv = complement_build(&self.nv.phi, dq as usize)?;
        }
        let (p1, q2) = polyreduce(&self.nv, &ut)?;
        let g2 = self.v.combine_poly(&p1, self.u());
        Ok((h.d.clone(), r, q2, g2))
    }
}

/// The full pipeline on a fresh suitable basis and basis suitable at
/// infinity.
pub fn additive_decompose<K: Field>(curve: &Curve<K>, f: &AlgElem<K>) -> Result<AdditiveDecomp<K>> {
    let w0 = initial_suitable_basis(curve)?;
    let v = suitable_at_infinity(curve)?;
    additive_decompose_with(curve, f, &w0, &v)
}

pub fn additive_decompose_with<K: Field>(
    curve: &Curve<K>,
    f: &AlgElem<K>,
    w0: &BasisW<K>,
    v: &InfinityBasis<K>,
) -> Result<AdditiveDecomp<K>> {
    let hr = lazy_hermite_reduce(curve, f, w0)?;
    let mut red = Reducer::new(curve, &hr.basis, v)?;
    let (d, p, q, g2) = red.reduce(&hr.h)?;
    Ok(AdditiveDecomp {
        g: (&hr.g + &g2).without_constant(),
        d,
        p,
        w: hr.basis,
        q,
        v: v.clone(),
        a: red.a().clone(),
        u: red.u().clone(),
        update_log: hr.update_log,
    })
}

/// The antiderivative, when the decomposition certifies one.
pub fn antiderivative<K: Field>(dec: &AdditiveDecomp<K>) -> Option<AlgElem<K>> {
    dec.is_integrable().then(|| dec.g.clone())
}
