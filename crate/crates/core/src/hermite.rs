//! Lazy Hermite reduction.
//!
//! Each step removes one power of a repeated denominator factor `v` by
//! solving `b·((uv/e)M − (d−1)uv'I) ≡ a (mod v)`. When that system does not
//! have a unique solution the basis is not integral enough at some factor of
//! `v`; an integral element outside the module is read off the kernel data,
//! the module is enlarged, and the step is retried.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::basis::{make_suitable, BasisW};
use crate::curve::{AlgElem, Curve};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::ratfunc::{common_denominator, RatFunc};
use crate::solve_mod::{solve_mod, ModVector, SolveOutcome};

/// `f = (1/(u·v^d))·Σ aₖωₖ` with `v` squarefree, `gcd(u, v) = 1`,
/// `gcd(v, a) = 1`, `d ≥ 2` and `e | u·v`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteInput<K: Field> {
    pub u: Poly<K>,
    pub v: Poly<K>,
    pub d: usize,
    pub a: Vec<Poly<K>>,
}

impl<K: Field> HermiteInput<K> {
    /// Present `f` in `W` for a step on its most repeated denominator
    /// factor. `None` when the denominator is already squarefree.
    pub fn new(f: &AlgElem<K>, w: &BasisW<K>) -> Result<Option<Self>> {
        let (den, a) = common_denominator(&w.coords(f));
        let sqf = den.squarefree_factorization()?;
        let Some((v, d)) = sqf.iter().max_by_key(|(_, k)| *k).cloned() else {
            return Ok(None);
        };
        if d < 2 {
            return Ok(None);
        }
        let u = den.exact_div(&v.pow(d as u32));
        let uv = &u * &v;
        let k = w.e().exact_div(&Poly::gcd(w.e(), &uv));
        let (u, a) = if k.is_one() { (u, a) } else { (&u * &k, a.iter().map(|p| p * &k).collect()) };
        Ok(Some(HermiteInput { u, v, d, a }))
    }

    /// `(uv/e)·M − (d−1)·u·v'·I`, reduced modulo `v`.
    pub fn system(&self, w: &BasisW<K>) -> Vec<Vec<Poly<K>>> {
        let n = w.len();
        let scale = (&self.u * &self.v).exact_div(w.e());
        let diag = (&self.u * &self.v.derivative()).scale(&K::from_i64(self.d as i64 - 1));
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut x = &scale * &w.m()[i][j];
                        if i == j {
                            x = &x - &diag;
                        }
                        x.rem(&self.v)
                    })
                    .collect()
            })
            .collect()
    }

    /// The represented element.
    pub fn to_elem(&self, w: &BasisW<K>) -> AlgElem<K> {
        w.combine_poly(&self.a, &(&self.u * &self.v.pow(self.d as u32)))
    }
}

/// The outcome of one reduction step.
#[derive(Clone, Debug)]
pub enum StepOutcome<K: Field> {
    /// `g = (1/v^{d−1})·Σbₖωₖ`; `rest = f − g'` has a lower power of `v` in
    /// its denominator.
    Reduced { g: AlgElem<K>, rest: AlgElem<K> },
    /// The system was not uniquely solvable.
    Degenerate(SolveOutcome<K>),
}

/// One step of the reduction on the presentation `inp` of `f`.
pub fn hermite_step<K: Field>(curve: &Curve<K>, w: &BasisW<K>, f: &AlgElem<K>, inp: &HermiteInput<K>) -> Result<StepOutcome<K>> {
    let sys = inp.system(w);
    let a: Vec<Poly<K>> = inp.a.iter().map(|p| p.rem(&inp.v)).collect();
    let out = solve_mod(&sys, &a, &inp.v)?;
    let SolveOutcome::Unique { solution, .. } = out else {
        return Ok(StepOutcome::Degenerate(out));
    };
    let g = w.combine_poly(&solution, &inp.v.pow(inp.d as u32 - 1));
    let rest = f - &curve.dx(&g);
    Ok(StepOutcome::Reduced { g, rest })
}

/// An integral element outside the module of `W`, read off degenerate
/// kernel data.
///
/// For every kernel vector `c` modulo `p` (left kernel first, then the
/// certificates of inconsistency) the candidates are `u·Σcᵢωᵢ'` and then
/// `(1/p)·Σcᵢωᵢ`. A candidate is accepted only if it is integral and not a
/// member of the module.
pub fn basis_update<K: Field>(
    curve: &Curve<K>,
    w: &BasisW<K>,
    inp: &HermiteInput<K>,
    out: &SolveOutcome<K>,
) -> Result<AlgElem<K>> {
    let empty = Vec::new();
    let (kernel, certs): (&[ModVector<K>], &[ModVector<K>]) = match out {
        SolveOutcome::Unique { .. } => (&empty, &empty),
        SolveOutcome::Underdetermined { kernel, .. } => (kernel, &empty),
        SolveOutcome::Inconsistent { certificates, kernel, .. } => (kernel, certificates),
    };
    let derivs: Vec<AlgElem<K>> = w.elements().iter().map(|x| curve.dx(x)).collect();
    let u = RatFunc::from_poly(inp.u.clone());
    let mut rejected: Vec<String> = Vec::new();
    for c in kernel.iter().chain(certs) {
        let mut dsum = curve.zero();
        for (ci, dw) in c.vector.iter().zip(&derivs) {
            if !ci.is_zero() {
                dsum = &dsum + &dw.scale(&RatFunc::from_poly(ci.clone()));
            }
        }
        let cands = [dsum.scale(&u), w.combine_poly(&c.vector, &c.modulus)];
        for theta in cands {
            if !curve.is_integral(&theta) {
                rejected.push(format!("{theta} (not integral)"));
            } else if w.contains(&theta) {
                rejected.push(format!("{theta} (already in the module)"));
            } else {
                return Ok(theta);
            }
        }
    }
    Err(Error::UpdateCandidatesExhausted(format!(
        "no integral element outside the module at v = {}; rejected: [{}]",
        inp.v,
        rejected.join("; ")
    )))
}

/// `h = Σ hᵢ/(d·e)·ωᵢ` with `d` squarefree and coprime to `e`.
#[derive(Clone, Debug)]
pub struct Remainder<K: Field> {
    pub basis: BasisW<K>,
    pub d: Poly<K>,
    pub e: Poly<K>,
    pub nums: Vec<Poly<K>>,
}

impl<K: Field> Remainder<K> {
    /// Normalize an element whose denominator in `W` is squarefree.
    pub fn from_elem(f: &AlgElem<K>, w: &BasisW<K>) -> Result<Self> {
        let (den, a) = common_denominator(&w.coords(f));
        if !den.is_squarefree() {
            return Err(Error::Precondition(format!("denominator {den} is not squarefree")));
        }
        let g = Poly::gcd(&den, w.e());
        let d = den.exact_div(&g);
        let k = w.e().exact_div(&g);
        let nums = a.iter().map(|p| p * &k).collect();
        Ok(Remainder { basis: w.clone(), d, e: w.e().clone(), nums })
    }

    pub fn to_elem(&self) -> AlgElem<K> {
        self.basis.combine_poly(&self.nums, &(&self.d * &self.e))
    }

    pub fn is_zero(&self) -> bool {
        self.nums.iter().all(|p| p.is_zero())
    }
}

/// `f = g' + h`.
#[derive(Clone, Debug)]
pub struct HermiteResult<K: Field> {
    pub g: AlgElem<K>,
    pub h: Remainder<K>,
    pub basis: BasisW<K>,
    /// Elements adjoined to the module, in order.
    pub update_log: Vec<AlgElem<K>>,
}

/// Reduce `f` starting from the suitable basis `w0`.
pub fn lazy_hermite_reduce<K: Field>(curve: &Curve<K>, f: &AlgElem<K>, w0: &BasisW<K>) -> Result<HermiteResult<K>> {
    if !w0.is_suitable() {
        return Err(Error::Precondition("starting basis is not suitable".into()));
    }
    let mut w = w0.clone();
    let mut g = curve.zero();
    let mut f = f.clone();
    let mut update_log = Vec::new();
    while let Some(inp) = HermiteInput::new(&f, &w)? {
        match hermite_step(curve, &w, &f, &inp)? {
            StepOutcome::Reduced { g: gs, rest } => {
                g = &g + &gs;
                f = rest;
            }
            StepOutcome::Degenerate(out) => {
                let theta = basis_update(curve, &w, &inp, &out)?;
                let bigger = w.enlarge(curve, core::slice::from_ref(&theta))?;
                update_log.push(theta);
                let (fixed, extra) = make_suitable(curve, bigger)?;
                update_log.extend(extra);
                w = fixed;
            }
        }
    }
    let h = Remainder::from_elem(&f, &w)?;
    Ok(HermiteResult { g, h, basis: w, update_log })
}
