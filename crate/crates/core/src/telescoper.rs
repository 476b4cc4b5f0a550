//! Reduction-based creative telescoping.
//!
//! With `f = G₀' + R₀` and `D_t R_{r−1} = g_r' + R_r`, every `D_tʳ f` equals
//! `G_r' + R_r` where `G_r = D_t G_{r−1} + g_r`. The remainders live in a
//! space of normal forms over a common pair `(W, V)`, so a `K`-linear
//! relation `Σ cᵢRᵢ = 0` yields `Σ cᵢ D_tⁱ f = (Σ cᵢGᵢ)'`.

use alloc::format;
use alloc::vec::Vec;

use crate::basis::{initial_suitable_basis, BasisW};
use crate::curve::{AlgElem, Curve};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hermite::lazy_hermite_reduce;
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::polyred::{suitable_at_infinity, InfinityBasis, Reducer};

/// `L = Σ cᵢ D_tⁱ`, content-free with positive leading term.
#[derive(Clone, Debug, PartialEq)]
pub struct Telescoper<K: Field> {
    pub coeffs: Vec<K>,
}

impl<K: Field> Telescoper<K> {
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// `L` applied to `f`.
    pub fn apply(&self, curve: &Curve<K>, f: &AlgElem<K>) -> AlgElem<K> {
        let mut acc = curve.zero();
        let mut df = f.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                df = curve.dt(&df);
            }
            if !c.is_zero() {
                acc = &acc + &df.scale_k(c);
            }
        }
        acc
    }
}

/// `L·f = D_x g`.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate<K: Field> {
    pub g: AlgElem<K>,
}

/// One iterate: `D_tⁱ f = G' + (1/d)·P·W + (1/a)·Q·V`.
#[derive(Clone, Debug)]
pub struct LedgerEntry<K: Field> {
    pub g: AlgElem<K>,
    pub d: Poly<K>,
    pub p: Vec<Poly<K>>,
    pub q: Vec<Poly<K>>,
}

/// Remainders of `f, D_t f, …` over one shared `(W, V)` pair.
#[derive(Clone, Debug)]
pub struct RemainderLedger<K: Field> {
    pub entries: Vec<LedgerEntry<K>>,
    pub reducer: Reducer<K>,
}

impl<K: Field> RemainderLedger<K> {
    pub fn new(curve: &Curve<K>, w: &BasisW<K>, v: &InfinityBasis<K>) -> Result<Self> {
        Ok(RemainderLedger { entries: Vec::new(), reducer: Reducer::new(curve, w, v)? })
    }

    pub fn basis(&self) -> &BasisW<K> {
        &self.reducer.w
    }

    pub fn remainder(&self, i: usize) -> AlgElem<K> {
        let e = &self.entries[i];
        &self.reducer.w.combine_poly(&e.p, &e.d) + &self.reducer.v.combine_poly(&e.q, self.reducer.a())
    }
}

/// `(g, d, P, Q)` for each element, all over the returned basis, which
/// contains `w`.
type Settled<K> = (BasisW<K>, Vec<(AlgElem<K>, Poly<K>, Vec<Poly<K>>, Vec<Poly<K>>)>);

fn settle<K: Field>(curve: &Curve<K>, v: &InfinityBasis<K>, w: &BasisW<K>, elems: &[AlgElem<K>]) -> Result<Settled<K>> {
    let mut w = w.clone();
    'outer: for _ in 0..64 {
        let mut hs = Vec::with_capacity(elems.len());
        for f in elems {
            let hr = lazy_hermite_reduce(curve, f, &w)?;
            if !same_basis(&hr.basis, &w) {
                w = hr.basis;
                continue 'outer;
            }
            hs.push(hr);
        }
        let mut red = Reducer::new(curve, &w, v)?;
        let mut out = Vec::with_capacity(hs.len());
        for hr in hs {
            let (d, p, q, g2) = red.reduce(&hr.h)?;
            out.push((&hr.g + &g2, d, p, q));
        }
        return Ok((w, out));
    }
    Err(Error::SuitabilityFailure("basis kept growing while settling remainders".into()))
}

fn same_basis<K: Field>(a: &BasisW<K>, b: &BasisW<K>) -> bool {
    a.elements() == b.elements()
}

/// Re-express every entry over `w_new`, whose module must contain the
/// current one, rerunning the polynomial reduction. The represented
/// elements `G' + R` are unchanged.
pub fn rebase_ledger<K: Field>(curve: &Curve<K>, ledger: &RemainderLedger<K>, w_new: &BasisW<K>) -> Result<RemainderLedger<K>> {
    if same_basis(ledger.basis(), w_new) {
        return Ok(ledger.clone());
    }
    if !w_new.contains_module(ledger.basis()) {
        return Err(Error::ContainmentViolated("new basis does not contain the ledger's module".into()));
    }
    let rems: Vec<AlgElem<K>> = (0..ledger.entries.len()).map(|i| ledger.remainder(i)).collect();
    let v = &ledger.reducer.v;
    let (w, settled) = settle(curve, v, w_new, &rems)?;
    let entries = ledger
        .entries
        .iter()
        .zip(settled)
        .map(|(old, (g, d, p, q))| LedgerEntry { g: &old.g + &g, d, p, q })
        .collect();
    Ok(RemainderLedger { entries, reducer: Reducer::new(curve, &w, v)? })
}

fn coefficient_rows<K: Field>(ledger: &RemainderLedger<K>) -> Matrix<K> {
    let mut den = Poly::one();
    for e in &ledger.entries {
        den = den.lcm(&e.d);
    }
    let n = ledger.reducer.w.len();
    let dp = den.deg().max(0) as usize;
    let qdeg = ledger.entries.iter().flat_map(|e| e.q.iter()).map(|p| p.deg()).max().unwrap_or(-1);
    let qw = (qdeg + 1).max(0) as usize;
    let cols = n * (dp + qw);
    let mut m = Matrix::zeros(ledger.entries.len(), cols);
    for (r, e) in ledger.entries.iter().enumerate() {
        let k = den.exact_div(&e.d);
        for (i, p) in e.p.iter().enumerate() {
            for (j, c) in (p * &k).coeffs().iter().enumerate() {
                m.set(r, i * dp + j, c.clone());
            }
        }
        for (i, q) in e.q.iter().enumerate() {
            for (j, c) in q.coeffs().iter().enumerate() {
                m.set(r, n * dp + i * qw + j, c.clone());
            }
        }
    }
    m
}

/// Rank of the span of the ledger's remainders.
pub fn ledger_rank<K: Field>(ledger: &RemainderLedger<K>) -> usize {
    if ledger.entries.is_empty() {
        return 0;
    }
    coefficient_rows(ledger).rank()
}

/// A nonzero `c` with `Σ cᵢRᵢ = 0`, normalized, if the remainders are
/// dependent. Compares `P` over the lcm of the `dᵢ` and `Q` coefficientwise.
pub fn find_dependency<K: Field>(ledger: &RemainderLedger<K>) -> Option<Vec<K>> {
    if ledger.entries.is_empty() {
        return None;
    }
    let m = coefficient_rows(ledger);
    let mut c = m.left_nullspace().into_iter().next()?;
    K::normalize_content(&mut c);
    Some(c)
}

/// Minimal-order telescoper for `f` relative to the reduction.
pub fn telescope<K: Field>(curve: &Curve<K>, f: &AlgElem<K>, max_order: usize) -> Result<(Telescoper<K>, Certificate<K>)> {
    let w0 = initial_suitable_basis(curve)?;
    let v = suitable_at_infinity(curve)?;
    telescope_with(curve, f, max_order, &w0, &v)
}

pub fn telescope_with<K: Field>(
    curve: &Curve<K>,
    f: &AlgElem<K>,
    max_order: usize,
    w0: &BasisW<K>,
    v: &InfinityBasis<K>,
) -> Result<(Telescoper<K>, Certificate<K>)> {
    if !K::HAS_PARAMETER {
        return Err(Error::Precondition("telescoping needs a coefficient field with a parameter".into()));
    }
    let mut ledger = RemainderLedger::new(curve, w0, v)?;
    let mut trace = Vec::new();
    for r in 0..=max_order {
        let (target, g_base) = match ledger.entries.last() {
            None => (f.clone(), curve.zero()),
            Some(last) => (curve.dt(&ledger.remainder(r - 1)), curve.dt(&last.g)),
        };
        let (w1, mut settled) = settle(curve, v, ledger.basis(), core::slice::from_ref(&target))?;
        if !same_basis(&w1, ledger.basis()) {
            ledger = rebase_ledger(curve, &ledger, &w1)?;
            let (w2, s2) = settle(curve, v, ledger.basis(), core::slice::from_ref(&target))?;
            if !same_basis(&w2, ledger.basis()) {
                return Err(Error::ContainmentViolated(format!("basis changed after rebasing at order {r}")));
            }
            settled = s2;
        }
        let (g, d, p, q) = settled.pop().expect("one element settled");
        ledger.entries.push(LedgerEntry { g: &g_base + &g, d, p, q });
        if let Some(c) = find_dependency(&ledger) {
            let mut g = curve.zero();
            for (ci, e) in c.iter().zip(&ledger.entries) {
                if !ci.is_zero() {
                    g = &g + &e.g.scale_k(ci);
                }
            }
            let l = Telescoper { coeffs: c };
            let cert = Certificate { g: g.without_constant() };
            if !verify_telescoper(curve, &l, &cert, f) {
                return Err(Error::Domain("telescoping identity failed to verify".into()));
            }
            return Ok((l, cert));
        }
        trace.push(ledger_rank(&ledger));
    }
    Err(Error::MaxOrderExceeded { max_order, trace })
}

/// `Σ cᵢ·D_tⁱ f = D_x g` exactly.
pub fn verify_telescoper<K: Field>(curve: &Curve<K>, l: &Telescoper<K>, g: &Certificate<K>, f: &AlgElem<K>) -> bool {
    if l.coeffs.iter().all(|c| c.is_zero()) {
        return false;
    }
    (&l.apply(curve, f) - &curve.dx(&g.g)).is_zero()
}
