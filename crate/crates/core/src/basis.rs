//! Bases of `A` over `K(x)`, their derivation data `e·W' = M·W`, and the
//! `K[x]`-modules they generate.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::curve::{AlgElem, Curve};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{hnf_over_polyring, Matrix};
use crate::poly::Poly;
use crate::ratfunc::{common_denominator, RatFunc};
use crate::solve_mod::{solve_mod, SolveOutcome};

/// An ordered `K(x)`-basis `W` of `A`.
#[derive(Clone, Debug)]
pub struct BasisW<K: Field> {
    elements: Vec<AlgElem<K>>,
    /// Row `i` holds the power-basis coordinates of `ωᵢ`.
    trans: Matrix<RatFunc<K>>,
    trans_inv: Matrix<RatFunc<K>>,
    e: Poly<K>,
    m: Vec<Vec<Poly<K>>>,
    integral: bool,
    e_squarefree: bool,
}

impl<K: Field> BasisW<K> {
    /// Compute `(e, M)` for the given elements: `e` is the monic least common
    /// denominator of the coordinates of the `ωᵢ'`, and `M = e·N`.
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
        let mut e = Poly::one();
        for row in &coords {
            for c in row {
                e = e.lcm(c.denom());
            }
        }
        let m = coords
            .iter()
            .map(|row| row.iter().map(|c| c.numer() * &e.exact_div(c.denom())).collect())
            .collect();
        let integral = elements.iter().all(|w| curve.is_integral(w));
        let e_squarefree = e.is_squarefree();
        Ok(BasisW { elements, trans, trans_inv, e, m, integral, e_squarefree })
    }

    /// The power basis `(1, y, …, yⁿ⁻¹)`.
    pub fn power(curve: &Curve<K>) -> Result<Self> {
        Self::new(curve, (0..curve.degree()).map(|i| curve.y_pow(i)).collect())
    }

    pub fn elements(&self) -> &[AlgElem<K>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn trans(&self) -> &Matrix<RatFunc<K>> {
        &self.trans
    }

    pub fn e(&self) -> &Poly<K> {
        &self.e
    }

    pub fn m(&self) -> &[Vec<Poly<K>>] {
        &self.m
    }

    /// Every element passed the integrality oracle.
    pub fn is_integral(&self) -> bool {
        self.integral
    }

    pub fn e_is_squarefree(&self) -> bool {
        self.e_squarefree
    }

    /// Suitable: integral with squarefree `e`.
    pub fn is_suitable(&self) -> bool {
        self.integral && self.e_squarefree
    }

    /// `K(x)`-coordinates of `f` with respect to `W`.
    pub fn coords(&self, f: &AlgElem<K>) -> Vec<RatFunc<K>> {
        self.trans_inv.vec_mul(f.coeffs())
    }

    /// `Σ cᵢ ωᵢ`.
    pub fn combine(&self, c: &[RatFunc<K>]) -> AlgElem<K> {
        AlgElem::from_coeffs(self.trans.vec_mul(c))
    }

    /// `(1/den) Σ cᵢ ωᵢ` for polynomial `cᵢ`.
    pub fn combine_poly(&self, c: &[Poly<K>], den: &Poly<K>) -> AlgElem<K> {
        let c: Vec<RatFunc<K>> = c.iter().map(|p| RatFunc::new(p.clone(), den.clone())).collect();
        self.combine(&c)
    }

    /// The `K[x]`-coordinates of `f` if `f` lies in the module generated by `W`.
    pub fn membership(&self, f: &AlgElem<K>) -> Option<Vec<Poly<K>>> {
        self.coords(f).into_iter().map(|c| c.as_poly().cloned()).collect()
    }

    pub fn contains(&self, f: &AlgElem<K>) -> bool {
        self.membership(f).is_some()
    }

    /// Whether this module contains every generator of `other`.
    pub fn contains_module(&self, other: &BasisW<K>) -> bool {
        other.elements.iter().all(|w| self.contains(w))
    }

    pub fn same_module(&self, other: &BasisW<K>) -> bool {
        self.contains_module(other) && other.contains_module(self)
    }

    /// `det(Tr(ωᵢωⱼ))`.
    pub fn discriminant(&self, curve: &Curve<K>) -> RatFunc<K> {
        let n = self.len();
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let t = curve.trace(&curve.mul(&self.elements[i], &self.elements[j]));
                g.set(i, j, t.clone());
                g.set(j, i, t);
            }
        }
        g.det()
    }

    /// A basis of the module generated by `W` and `new`, in Hermite normal
    /// form with respect to the power basis. Returns `W` itself when every
    /// new element is already a member.
    pub fn enlarge(&self, curve: &Curve<K>, new: &[AlgElem<K>]) -> Result<Self> {
        for f in new {
            if !curve.is_integral(f) {
                return Err(Error::Precondition(format!("{f} is not integral")));
            }
        }
        if new.iter().all(|f| self.contains(f)) {
            return Ok(self.clone());
        }
        let n = self.len();
        let rows: Vec<&[RatFunc<K>]> =
            self.elements.iter().map(|w| w.coeffs()).chain(new.iter().map(|f| f.coeffs())).collect();
        let flat: Vec<RatFunc<K>> = rows.iter().flat_map(|r| r.iter().cloned()).collect();
        let (den, nums) = common_denominator(&flat);
        let prows: Vec<Vec<Poly<K>>> = nums.chunks(n).map(|c| c.to_vec()).collect();
        let h = hnf_over_polyring(&prows, n)?;
        let elements = h
            .iter()
            .map(|row| AlgElem::from_coeffs(row.iter().map(|p| RatFunc::new(p.clone(), den.clone())).collect()))
            .collect();
        Self::new(curve, elements)
    }
}

/// The scaled power basis `(1, ℓy, …, ℓⁿ⁻¹yⁿ⁻¹)`, `ℓ` the leading
/// coefficient of `m`, repaired until `e` is squarefree.
pub fn initial_suitable_basis<K: Field>(curve: &Curve<K>) -> Result<BasisW<K>> {
    let lead = RatFunc::from_poly(curve.lead().clone());
    let mut scale = RatFunc::one();
    let mut elements = Vec::new();
    for i in 0..curve.degree() {
        elements.push(curve.y_pow(i).scale(&scale));
        scale = scale.mul_ref(&lead);
    }
    let w = BasisW::new(curve, elements)?;
    Ok(make_suitable(curve, w)?.0)
}

/// Enlarge an integral basis until its `e` is squarefree. Returns the new
/// basis and the adjoined elements.
///
/// For a factor `p` of `e` of multiplicity at least two, the candidates are
/// `(e/p)·ωᵢ'` (integral, since `e/p` still vanishes on every root of `e`)
/// followed by `(1/p)·Σcᵢωᵢ` for kernel vectors of `M` modulo `p`. Each is
/// accepted only if it is integral and outside the current module.
pub fn make_suitable<K: Field>(curve: &Curve<K>, basis: BasisW<K>) -> Result<(BasisW<K>, Vec<AlgElem<K>>)> {
    if !basis.is_integral() {
        return Err(Error::Precondition("basis elements are not all integral".into()));
    }
    let mut w = basis;
    let mut adjoined = Vec::new();
    // Each round strictly enlarges the module inside the integral closure;
    // the bound only guards against a bug.
    for _ in 0..256 {
        if w.e_is_squarefree() {
            return Ok((w, adjoined));
        }
        let repeated: Vec<Poly<K>> =
            w.e.squarefree_factorization()?.into_iter().filter(|(_, k)| *k >= 2).map(|(p, _)| p).collect();
        let mut found = None;
        let mut tried = Vec::new();
        'factors: for p in &repeated {
            for cand in suitability_candidates(&w, p)? {
                if curve.is_integral(&cand) && !w.contains(&cand) {
                    found = Some(cand);
                    break 'factors;
                }
                tried.push(cand);
            }
        }
        let Some(theta) = found else {
            let tried: Vec<String> = tried.iter().map(|c| c.to_expr_string()).collect();
            return Err(Error::SuitabilityFailure(format!(
                "e = {} is not squarefree and no candidate enlarges the module (tried: {})",
                w.e,
                tried.join(", ")
            )));
        };
        w = w.enlarge(curve, core::slice::from_ref(&theta))?;
        adjoined.push(theta);
    }
    Err(Error::SuitabilityFailure(format!("no squarefree e after repeated enlargement; e = {}", w.e)))
}

fn suitability_candidates<K: Field>(w: &BasisW<K>, p: &Poly<K>) -> Result<Vec<AlgElem<K>>> {
    let mut out = Vec::new();
    for row in w.m() {
        out.push(w.combine_poly(row, p));
    }
    let n = w.len();
    let zero = vec![Poly::zero(); n];
    let transposed: Vec<Vec<Poly<K>>> = (0..n).map(|j| (0..n).map(|i| w.m[i][j].clone()).collect()).collect();
    for d in [w.m.clone(), transposed] {
        if let SolveOutcome::Underdetermined { kernel, .. } = solve_mod(&d, &zero, p)? {
            for k in kernel {
                out.push(w.combine_poly(&k.vector, &k.modulus));
            }
        }
    }
    Ok(out)
}
