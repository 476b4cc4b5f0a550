//! Properties of the exact polynomial layer.

use algint_core::matrix::hnf_over_polyring;
use algint_core::solve_mod::{solve_mod, SolveOutcome};
use algint_core::{Field, Poly, Rat};
use proptest::prelude::*;

type P = Poly<Rat>;

fn poly(max_deg: usize) -> impl Strategy<Value = P> {
    prop::collection::vec(-6i64..=6, 0..=max_deg + 1).prop_map(|c| P::from_i64s(&c))
}

fn nonzero_poly(max_deg: usize) -> impl Strategy<Value = P> {
    poly(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

/// Product of distinct monic linear factors with roots in `-5..=5`.
fn squarefree(max_deg: usize) -> impl Strategy<Value = P> {
    prop::collection::btree_set(-5i64..=5, 1..=max_deg).prop_map(|roots| {
        roots.into_iter().fold(P::one(), |acc, r| &acc * &P::from_i64s(&[-r, 1]))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn bezout(a in poly(6), b in poly(6)) {
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let (g, s, t) = P::ext_gcd(&a, &b).unwrap();
        prop_assert!(g.divides(&a) && g.divides(&b));
        prop_assert_eq!(&(&s * &a) + &(&t * &b), g.clone());
        prop_assert_eq!(g, P::gcd(&a, &b));
    }

    #[test]
    fn squarefree_parts(a in nonzero_poly(4), b in nonzero_poly(3)) {
        let p = &(&a * &b) * &b;
        let sf = p.squarefree_part().unwrap();
        prop_assert!(P::gcd(&sf, &sf.derivative()).is_one());
        let back = (&sf * &P::gcd(&p, &p.derivative())).scale(&p.lc());
        // p / gcd(p, p') · gcd(p, p') recovers p up to the unit
        prop_assert_eq!(back.monic(), p.monic());
        let mut prod = P::one();
        for (f, k) in p.squarefree_factorization().unwrap() {
            prod = &prod * &f.pow(k as u32);
        }
        prop_assert_eq!(prod.monic(), p.monic());
    }

    #[test]
    fn exact_ring_ops(p in poly(6), q in nonzero_poly(5)) {
        prop_assert_eq!(&(&p + &q) - &q, p.clone());
        prop_assert_eq!((&p * &q).exact_div(&q), p.clone());
        let (quo, rem) = p.div_rem(&q);
        prop_assert!(rem.deg() < q.deg());
        prop_assert_eq!(&(&quo * &q) + &rem, p);
    }

    #[test]
    fn solve_mod_outcomes(
        v in squarefree(3),
        entries in prop::collection::vec(poly(3), 4),
        rhs in prop::collection::vec(poly(3), 2),
    ) {
        let d = vec![entries[0..2].to_vec(), entries[2..4].to_vec()];
        let out = solve_mod(&d, &rhs, &v).unwrap();
        let apply = |b: &[P]| -> Vec<P> {
            (0..2).map(|j| (0..2).fold(P::zero(), |acc, i| &acc + &(&b[i] * &d[i][j]))).collect()
        };
        match out {
            SolveOutcome::Unique { solution, .. } => {
                for (l, r) in apply(&solution).iter().zip(&rhs) {
                    prop_assert!((l - r).rem(&v).is_zero());
                }
                // trivial left kernel: det D is a unit modulo v
                let det = &(&d[0][0] * &d[1][1]) - &(&d[0][1] * &d[1][0]);
                prop_assert!(P::gcd(&det, &v).is_one());
            }
            SolveOutcome::Underdetermined { solution, kernel, .. } => {
                for (l, r) in apply(&solution).iter().zip(&rhs) {
                    prop_assert!((l - r).rem(&v).is_zero());
                }
                prop_assert!(!kernel.is_empty());
                for k in kernel {
                    prop_assert!(k.vector.iter().any(|c| !c.rem(&k.modulus).is_zero()));
                    for c in apply(&k.vector) {
                        prop_assert!(c.rem(&k.modulus).is_zero());
                    }
                }
            }
            SolveOutcome::Inconsistent { certificates, .. } => {
                prop_assert!(!certificates.is_empty());
                for c in certificates {
                    let m = &c.modulus;
                    for row in &d {
                        let s = (0..2).fold(P::zero(), |acc, j| &acc + &(&row[j] * &c.vector[j]));
                        prop_assert!(s.rem(m).is_zero());
                    }
                    let ac = (0..2).fold(P::zero(), |acc, j| &acc + &(&rhs[j] * &c.vector[j]));
                    prop_assert!(!ac.rem(m).is_zero());
                }
            }
        }
    }

    #[test]
    fn hnf_generates_same_module(rows in prop::collection::vec(prop::collection::vec(poly(2), 2), 2..=4)) {
        let Ok(h) = hnf_over_polyring(&rows, 2) else {
            // rank deficient input
            let minors_vanish = (0..rows.len()).all(|i| {
                (i + 1..rows.len()).all(|j| (&(&rows[i][0] * &rows[j][1]) - &(&rows[i][1] * &rows[j][0])).is_zero())
            });
            prop_assert!(minors_vanish);
            return Ok(());
        };
        prop_assert_eq!(h.len(), 2);
        prop_assert!(h[1][0].is_zero());
        // each input row is a K[x]-combination of the HNF rows
        for r in &rows {
            let (c0, r0) = r[0].div_rem(&h[0][0]);
            prop_assert!(r0.is_zero());
            let rest = &r[1] - &(&c0 * &h[0][1]);
            prop_assert!(rest.rem(&h[1][1]).is_zero());
        }
        // and the determinants agree up to a unit, so the HNF rows lie in the span
        let mut g = P::zero();
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                let d = &(&rows[i][0] * &rows[j][1]) - &(&rows[i][1] * &rows[j][0]);
                g = P::gcd(&g, &d);
            }
        }
        prop_assert_eq!((&h[0][0] * &h[1][1]).monic(), g);
    }
}

#[test]
fn rationals_stay_exact() {
    let third = Rat::new(1, 3);
    let mut acc = Rat::zero();
    for _ in 0..3 {
        acc = acc.add_ref(&third);
    }
    assert_eq!(acc, Rat::one());
}
