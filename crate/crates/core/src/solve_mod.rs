//! Linear systems `b·D ≡ a (mod v)` over `K[x]/⟨v⟩` for squarefree `v`.
//!
//! `v` need not be irreducible. Elimination proceeds as if `K[x]/⟨v⟩` were a
//! field; when a nonzero pivot turns out to share a factor with `v`, the
//! modulus is split along that factor and each part is solved on its own
//! (dynamic evaluation). Consistent parts are recombined by the Chinese
//! remainder theorem.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

/// A vector meaningful modulo one factor of the original modulus.
#[derive(Clone, Debug, PartialEq)]
pub struct ModVector<K: Field> {
    pub modulus: Poly<K>,
    pub vector: Vec<Poly<K>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Copy)]
pub enum SolveKind {
    Unique,
    Underdetermined,
    Inconsistent,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SolveOutcome<K: Field> {
    /// The unique `b` with `deg bᵢ < deg v`.
    Unique { solution: Vec<Poly<K>>, factors: Vec<Poly<K>> },
    /// A particular solution plus left-kernel vectors `c` with
    /// `c·D ≡ 0 (mod c.modulus)`.
    Underdetermined { solution: Vec<Poly<K>>, kernel: Vec<ModVector<K>>, factors: Vec<Poly<K>> },
    /// Right-kernel certificates `c` with `D·cᵀ ≡ 0` and `a·c ≢ 0` modulo
    /// `c.modulus`. `kernel` carries left-kernel vectors, those on the
    /// inconsistent factors first.
    Inconsistent { certificates: Vec<ModVector<K>>, kernel: Vec<ModVector<K>>, factors: Vec<Poly<K>> },
}

impl<K: Field> SolveOutcome<K> {
    pub fn kind(&self) -> SolveKind {
        match self {
            SolveOutcome::Unique { .. } => SolveKind::Unique,
            SolveOutcome::Underdetermined { .. } => SolveKind::Underdetermined,
            SolveOutcome::Inconsistent { .. } => SolveKind::Inconsistent,
        }
    }

    /// The factorization of the modulus discovered while solving.
    pub fn factors(&self) -> &[Poly<K>] {
        match self {
            SolveOutcome::Unique { factors, .. }
            | SolveOutcome::Underdetermined { factors, .. }
            | SolveOutcome::Inconsistent { factors, .. } => factors,
        }
    }

    pub fn solution(&self) -> Option<&[Poly<K>]> {
        match self {
            SolveOutcome::Unique { solution, .. } | SolveOutcome::Underdetermined { solution, .. } => {
                Some(solution)
            }
            SolveOutcome::Inconsistent { .. } => None,
        }
    }
}

enum Local<K> {
    Unique(Vec<Poly<K>>),
    Under(Vec<Poly<K>>, Vec<Vec<Poly<K>>>),
    Incons(Vec<Vec<Poly<K>>>, Vec<Vec<Poly<K>>>),
}

/// Solve `b·D ≡ a (mod v)`; see the module docs.
pub fn solve_mod<K: Field>(d: &[Vec<Poly<K>>], a: &[Poly<K>], v: &Poly<K>) -> Result<SolveOutcome<K>> {
    let n = d.len();
    if d.iter().any(|row| row.len() != n) || a.len() != n {
        return Err(Error::Precondition(format!("system must be square with {n} right-hand sides")));
    }
    if v.is_constant() {
        return Err(Error::Precondition("modulus must have positive degree".into()));
    }
    if !v.is_squarefree() {
        return Err(Error::Precondition(format!("modulus {v} is not squarefree")));
    }
    let v = v.monic();
    let mut parts = Vec::new();
    solve_split(d, a, &v, &mut parts);

    let factors: Vec<Poly<K>> = parts.iter().map(|(m, _)| m.clone()).collect();
    let mut certificates = Vec::new();
    let mut kernel = Vec::new();
    let mut bad_kernel = Vec::new();
    let mut consistent: Vec<(Poly<K>, Vec<Poly<K>>)> = Vec::new();
    for (m, local) in parts {
        match local {
            Local::Unique(x) => consistent.push((m, x)),
            Local::Under(x, ker) => {
                kernel.extend(ker.into_iter().map(|vector| ModVector { modulus: m.clone(), vector }));
                consistent.push((m, x));
            }
            Local::Incons(certs, ker) => {
                certificates.extend(certs.into_iter().map(|vector| ModVector { modulus: m.clone(), vector }));
                bad_kernel.extend(ker.into_iter().map(|vector| ModVector { modulus: m.clone(), vector }));
            }
        }
    }
    if !certificates.is_empty() {
        bad_kernel.extend(kernel);
        let kernel = bad_kernel;
        return Ok(SolveOutcome::Inconsistent { certificates, kernel, factors });
    }
    let solution = crt_vectors(&consistent, n);
    if kernel.is_empty() {
        Ok(SolveOutcome::Unique { solution, factors })
    } else {
        Ok(SolveOutcome::Underdetermined { solution, kernel, factors })
    }
}

fn solve_split<K: Field>(d: &[Vec<Poly<K>>], a: &[Poly<K>], v: &Poly<K>, out: &mut Vec<(Poly<K>, Local<K>)>) {
    match solve_local(d, a, v) {
        Ok(local) => out.push((v.clone(), local)),
        Err(g) => {
            let g = g.monic();
            let h = v.exact_div(&g).monic();
            solve_split(d, a, &g, out);
            solve_split(d, a, &h, out);
        }
    }
}

/// Gauss–Jordan elimination of `[Dᵀ | aᵀ | I]` over `K[x]/⟨v⟩`. Returns the
/// zero-divisor factor of `v` if a pivot is not invertible.
fn solve_local<K: Field>(d: &[Vec<Poly<K>>], a: &[Poly<K>], v: &Poly<K>) -> core::result::Result<Local<K>, Poly<K>> {
    let n = d.len();
    let width = 2 * n + 1;
    let mut m: Vec<Vec<Poly<K>>> = (0..n)
        .map(|i| {
            let mut row = Vec::with_capacity(width);
            row.extend((0..n).map(|j| d[j][i].rem(v)));
            row.push(a[i].rem(v));
            row.extend((0..n).map(|j| if i == j { Poly::one() } else { Poly::zero() }));
            row
        })
        .collect();

    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..n).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        let inv = match m[p][c].inv_mod(v) {
            Some(inv) => inv,
            None => return Err(Poly::gcd(&m[p][c], v)),
        };
        m.swap(r, p);
        for e in m[r].iter_mut() {
            *e = (&*e * &inv).rem(v);
        }
        let prow = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (e, pe) in row.iter_mut().zip(&prow) {
                if !pe.is_zero() {
                    *e = (&*e - &(&f * pe)).rem(v);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == n {
            break;
        }
    }

    // Left kernel of D = nullspace of Dᵀ.
    let mut kernel = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut vec_ = vec![Poly::zero(); n];
        vec_[free] = Poly::one();
        for (row, &pc) in pivots.iter().enumerate() {
            vec_[pc] = (-&m[row][free]).rem(v);
        }
        kernel.push(vec_);
    }

    // Rows r.. are zero in the Dᵀ block; a nonzero right-hand side there
    // certifies inconsistency, and the identity block records the combination.
    let certs: Vec<Vec<Poly<K>>> = (r..n)
        .filter(|&i| !m[i][n].is_zero())
        .map(|i| m[i][n + 1..].to_vec())
        .collect();
    if !certs.is_empty() {
        return Ok(Local::Incons(certs, kernel));
    }
    let mut x = vec![Poly::zero(); n];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = m[row][n].clone();
    }
    if kernel.is_empty() {
        Ok(Local::Unique(x))
    } else {
        Ok(Local::Under(x, kernel))
    }
}

fn crt_vectors<K: Field>(parts: &[(Poly<K>, Vec<Poly<K>>)], n: usize) -> Vec<Poly<K>> {
    let mut modulus = Poly::one();
    let mut acc = vec![Poly::zero(); n];
    for (m, x) in parts {
        let inv = modulus.inv_mod(m).unwrap_or_else(Poly::one);
        for (a, xi) in acc.iter_mut().zip(x) {
            let t = (&(xi - &*a) * &inv).rem(m);
            *a = &*a + &(&modulus * &t);
        }
        modulus = &modulus * m;
    }
    acc.iter().map(|a| a.rem(&modulus)).collect()
}
