//! Telescopers are trusted only through exact verification.

use algint_core::telescoper::telescope;
use algint_core::{verify_telescoper, Certificate, Curve, Error, Field, Poly, Qt, RatFunc, Telescoper};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type P = Poly<Qt>;
type R = RatFunc<Qt>;

/// A polynomial in `t`, coefficients low to high.
fn tp(cs: &[i64]) -> Qt {
    Qt::from_ratfunc(RatFunc::from_poly(Poly::from_i64s(cs)))
}

fn legendre() -> Curve<Qt> {
    Curve::new(vec![P::from_coeffs(vec![tp(&[0]), tp(&[0, -1]), tp(&[1, 1]), tp(&[-1])]), P::zero(), P::one()]).unwrap()
}

#[test]
fn legendre_family_has_order_two() {
    let c = legendre();
    let f = c.inv(&c.y()).unwrap();
    let (l, g) = telescope(&c, &f, 20).unwrap();
    assert_eq!(l.order(), 2);
    assert!(verify_telescoper(&c, &l, &g, &f));
    match telescope(&c, &f, 1) {
        Err(Error::MaxOrderExceeded { max_order, trace }) => {
            assert_eq!(max_order, 1);
            assert_eq!(trace, vec![1, 2]);
        }
        other => panic!("expected no order-1 telescoper, got {other:?}"),
    }
}

#[test]
fn integrable_input_has_order_zero() {
    let c = Curve::new(vec![P::from_coeffs(vec![tp(&[0, -1]), tp(&[-1])]), P::zero(), P::one()]).unwrap();
    let (l, g) = telescope(&c, &c.y(), 20).unwrap();
    assert_eq!(l.coeffs, vec![Qt::one()]);
    let expect = c.y().scale(&R::from_poly(P::from_coeffs(vec![tp(&[0, 2]), tp(&[2])]))).scale_k(&tp(&[1]).div_ref(&tp(&[3])));
    assert_eq!(g.g, expect);
}

#[test]
fn perturbed_certificate_fails() {
    let c = legendre();
    let f = c.inv(&c.y()).unwrap();
    let (l, g) = telescope(&c, &f, 20).unwrap();
    assert!(!verify_telescoper(&c, &l, &Certificate { g: &g.g + &c.y() }, &f));
    let scaled = Telescoper { coeffs: l.coeffs.iter().map(|x| x.mul_ref(&tp(&[0, 1]))).collect() };
    assert!(!verify_telescoper(&c, &scaled, &g, &f));
}

fn rand_curve(rng: &mut ChaCha8Rng) -> Curve<Qt> {
    // y² − (x − t)·q(x) or y³ − x·(x − t)
    if rng.gen_bool(0.7) {
        let r = rng.gen_range(-2..=2);
        let q = Poly::from_coeffs(vec![tp(&[-r]), tp(&[1])]);
        let lin = Poly::from_coeffs(vec![tp(&[0, -1]), tp(&[1])]);
        let m0 = -&(&lin * &q);
        Curve::new(vec![m0, P::zero(), P::one()]).unwrap()
    } else {
        let m0 = P::from_coeffs(vec![tp(&[0]), tp(&[0, 1]), tp(&[-1])]);
        Curve::new(vec![m0, P::zero(), P::zero(), P::one()]).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn emitted_telescopers_verify(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = rand_curve(&mut rng);
        let i = rng.gen_range(0..c.degree());
        let s = rng.gen_range(-2..=2);
        let den = Poly::from_coeffs(vec![tp(&[-s]), tp(&[1])]);
        let num = Poly::from_coeffs(vec![tp(&[rng.gen_range(-2..=2), rng.gen_range(0..=1)]), tp(&[rng.gen_range(0..=1)])]);
        prop_assume!(!num.is_zero());
        let f = c.y_pow(i).scale(&R::new(num, den));
        let (l, g) = telescope(&c, &f, 8).unwrap();
        prop_assert!(verify_telescoper(&c, &l, &g, &f));
        prop_assert!(!l.coeffs.last().unwrap().is_zero());
        // no dependency one order lower
        if l.order() > 0 {
            let lower = telescope(&c, &f, l.order() - 1);
            prop_assert!(matches!(lower, Err(Error::MaxOrderExceeded { .. })), "lower order found");
            if let Err(Error::MaxOrderExceeded { trace, .. }) = lower {
                prop_assert!(trace.windows(2).all(|w| w[0] <= w[1]));
            }
        }
        // D_x and D_t commute along the iterates
        let mut h = f.clone();
        for _ in 0..=l.order() {
            prop_assert_eq!(c.dx(&c.dt(&h)), c.dt(&c.dx(&h)));
            h = c.dt(&h);
        }
    }
}
