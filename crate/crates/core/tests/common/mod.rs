#![allow(dead_code)]

use algint_core::{AlgElem, BasisW, Curve, Field, Poly, Rat, RatFunc};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type P = Poly<Rat>;
pub type R = RatFunc<Rat>;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

pub fn linear(r: i64) -> P {
    P::from_i64s(&[-r, 1])
}

pub fn rand_poly(rng: &mut ChaCha8Rng, deg: usize, bound: i64) -> P {
    P::from_coeffs((0..=deg).map(|_| Rat::from_i64(rng.gen_range(-bound..=bound))).collect())
}

/// Squarefree `p` of the given degree with some rational roots, so that
/// both power bases and denominators at branch points show up.
pub fn rand_branch_poly(rng: &mut ChaCha8Rng, deg: usize) -> (P, Vec<i64>) {
    let mut roots: Vec<i64> = (-4..=4).collect();
    roots.shuffle(rng);
    let mut p = P::constant(Rat::from_i64(*[1, 2, -1, 3].choose(rng).unwrap()));
    let mut used = Vec::new();
    let mut left = deg;
    if deg >= 2 && rng.gen_bool(0.3) {
        p = &p * &P::from_i64s(&[rng.gen_range(1..=3), 0, 1]);
        left -= 2;
    }
    for &r in roots.iter().take(left) {
        p = &p * &linear(r);
        used.push(r);
    }
    (p, used)
}

/// `y^n − p`.
pub fn radical_curve(n: usize, p: &P) -> Curve<Rat> {
    let mut m = vec![P::zero(); n + 1];
    m[0] = -p;
    m[n] = P::one();
    Curve::new(m).unwrap()
}

/// `Σ (aᵢ/bᵢ)·yⁱ` with `bᵢ` a product of small powers of `x − r`, `r`
/// drawn from `poles`.
pub fn rand_elem(rng: &mut ChaCha8Rng, c: &Curve<Rat>, poles: &[i64], deg: usize) -> AlgElem<Rat> {
    let coeffs: Vec<R> = (0..c.degree())
        .map(|_| {
            if rng.gen_bool(0.25) {
                return R::from_poly(P::zero());
            }
            let nd = rng.gen_range(0..=deg);
            let num = rand_poly(rng, nd, 4);
            let mut den = P::one();
            for _ in 0..rng.gen_range(0..=2) {
                let r = *poles.choose(rng).unwrap();
                den = &den * &linear(r).pow(rng.gen_range(1..=2));
            }
            R::new(num, den)
        })
        .collect();
    c.from_y_poly(&coeffs)
}

/// `p` of the given degree with repeated rational roots allowed, but never
/// an `n`-th power, so `yⁿ − p` stays irreducible.
pub fn rand_power_poly(rng: &mut ChaCha8Rng, n: usize, deg: usize) -> (P, Vec<i64>) {
    loop {
        let mut p = P::constant(Rat::from_i64(*[1, 2, -1, 3].choose(rng).unwrap()));
        let mut roots = Vec::new();
        let mut mults = Vec::new();
        let mut left = deg;
        while left > 0 {
            let r = rng.gen_range(-3..=3);
            if roots.contains(&r) {
                continue;
            }
            let k = rng.gen_range(1..=left.min(3));
            p = &p * &linear(r).pow(k as u32);
            left -= k;
            roots.push(r);
            mults.push(k);
        }
        // yⁿ − p is irreducible when some root multiplicity is coprime to n.
        if mults.iter().any(|&k| num_integer::gcd(k, n) == 1) {
            return (p, roots);
        }
    }
}

pub fn rand_poly_upto(rng: &mut ChaCha8Rng, max_deg: usize, bound: i64) -> P {
    let d = rng.gen_range(0..=max_deg);
    rand_poly(rng, d, bound)
}

/// A product of random elementary row operations over `ℚ[x]`.
pub fn rand_unimodular(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<P>> {
    let mut u: Vec<Vec<P>> = (0..n).map(|i| (0..n).map(|j| if i == j { P::one() } else { P::zero() }).collect()).collect();
    for _ in 0..rng.gen_range(1..=4) {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..3) {
            0 if i != j => {
                // row_i += p · row_j
                let p = rand_poly_upto(rng, 2, 3);
                let add: Vec<P> = u[j].iter().map(|c| c * &p).collect();
                for (a, b) in u[i].iter_mut().zip(add) {
                    *a = &*a + &b;
                }
            }
            1 => u.swap(i, j),
            _ => {
                let k = Rat::from_i64(*[-2, 3, 5].get(rng.gen_range(0..3)).unwrap());
                for a in u[i].iter_mut() {
                    *a = a.scale(&k);
                }
            }
        }
    }
    u
}

/// The rows of `t` applied to the elements of `w`.
pub fn transform(c: &Curve<Rat>, t: &[Vec<P>], w: &BasisW<Rat>) -> Vec<AlgElem<Rat>> {
    t.iter().map(|row| w.combine_poly(row, &P::one())).map(|e| c.from_y_poly(e.coeffs())).collect()
}

/// A random curve `yⁿ − p` from the test family, with the rational roots of
/// `p` and a couple of regular points as pole candidates.
pub fn family(rng: &mut ChaCha8Rng) -> (Curve<Rat>, Vec<i64>, P) {
    let (n, deg) = if rng.gen_bool(0.5) { (2, rng.gen_range(1..=5)) } else { (3, rng.gen_range(1..=3)) };
    let (p, mut roots) = rand_power_poly(rng, n, deg);
    roots.push(5);
    roots.push(-5);
    (radical_curve(n, &p), roots, p)
}
