//! End-to-end acceptance run: one PASS/FAIL line per criterion.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use algint::corpus::{corpus_document, parse_corpus, run_corpus, BUNDLED};
use algint::expr::{parse_constant, parse_curve, parse_element};
use algint_core::basis::initial_suitable_basis;
use algint_core::hermite::{basis_update, hermite_step, HermiteInput, StepOutcome};
use algint_core::polyred::{additive_decompose_with, change_of_basis, complement_build, complement_stabilized, compute_u, suitable_at_infinity, Reducer};
use algint_core::solve_mod::SolveKind;
use algint_core::{additive_decompose, antiderivative, lazy_hermite_reduce, telescope, verify_telescoper, AlgElem, BasisW, Curve, Error, Field, Qt, Rat, RatFunc};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn sqrt_x() -> Curve<Rat> {
    parse_curve("y^2 - x").unwrap()
}

fn el(c: &Curve<Rat>, s: &str) -> AlgElem<Rat> {
    parse_element(c, s).unwrap()
}

fn basis(c: &Curve<Rat>, gens: &[&str]) -> BasisW<Rat> {
    BasisW::new(c, gens.iter().map(|s| el(c, s)).collect()).unwrap()
}

fn classify(c: &Curve<Rat>, w: &BasisW<Rat>, f: &AlgElem<Rat>) -> SolveKind {
    let inp = HermiteInput::new(f, w).unwrap().expect("repeated denominator factor");
    match hermite_step(c, w, f, &inp).unwrap() {
        StepOutcome::Reduced { .. } => SolveKind::Unique,
        StepOutcome::Degenerate(out) => out.kind(),
    }
}

fn example_one() -> Outcome {
    let c = sqrt_x();
    let f = el(&c, "y/((x+1)*x^2)");
    let got: Vec<SolveKind> = [["x", "x*y"], ["x", "y"], ["x", "(x+1)*y"]].iter().map(|g| classify(&c, &basis(&c, g), &f)).collect();
    let want = [SolveKind::Unique, SolveKind::Underdetermined, SolveKind::Inconsistent];
    ensure!(got == want, "outcomes {got:?}");
    Ok(format!("{got:?}"))
}

fn example_two() -> Outcome {
    let c = sqrt_x();
    let f = el(&c, "y/((x+1)*x^2)");
    let mut found = Vec::new();
    for (start, target) in [(["x", "y"], ["1", "y"]), (["x", "(x+1)*y"], ["x", "y"])] {
        let w = basis(&c, &start);
        let inp = HermiteInput::new(&f, &w).unwrap().unwrap();
        let StepOutcome::Degenerate(out) = hermite_step(&c, &w, &f, &inp).unwrap() else {
            return Err(format!("{start:?}: step was not degenerate"));
        };
        let theta = basis_update(&c, &w, &inp, &out).map_err(|e| e.to_string())?;
        ensure!(c.is_integral(&theta), "{theta} is not integral");
        ensure!(!w.contains(&theta), "{theta} already in the module");
        let w2 = w.enlarge(&c, std::slice::from_ref(&theta)).map_err(|e| e.to_string())?;
        let t = basis(&c, &target);
        ensure!(w2.contains_module(&t) && t.contains_module(&w2), "{start:?} + {theta} does not generate {target:?}");
        found.push(theta.to_string());
    }
    Ok(format!("updates {found:?}"))
}

fn closing_example() -> Outcome {
    let c = sqrt_x();
    let f = el(&c, "y/((x+1)*x^2)");
    let r = lazy_hermite_reduce(&c, &f, &basis(&c, &["x", "y"])).map_err(|e| e.to_string())?;
    let h = r.h.to_elem();
    ensure!(&c.dx(&r.g) + &h == f, "f != g' + h");
    ensure!(h == el(&c, "-y/(x*(x+1))"), "h = {h}");
    let p = basis(&c, &["1", "y"]);
    ensure!(r.basis.contains_module(&p) && p.contains_module(&r.basis), "final module differs from (1, y)");
    ensure!((&r.g - &el(&c, "-2*y/x")).is_constant(), "g = {}", r.g);
    Ok(format!("g = {}, h = {h}", r.g))
}

fn examples_three_five() -> Outcome {
    let c = sqrt_x();
    let f = el(&c, "y/x^3");
    let w0 = basis(&c, &["1", "(x^2+1)*y"]);
    let r = lazy_hermite_reduce(&c, &f, &w0).map_err(|e| e.to_string())?;
    ensure!(&c.dx(&r.g) + &r.h.to_elem() == f, "reassembly failed");
    ensure!(r.h.to_elem() == el(&c, "y/(3*x)"), "remainder {}", r.h.to_elem());
    let v = suitable_at_infinity(&c).map_err(|e| e.to_string())?;
    let (b, _) = change_of_basis(&r.basis, &v);
    let u = compute_u(&c, &r.basis, &b).map_err(|e| e.to_string())?;
    ensure!(u.to_string() == "x^2 + 1", "u = {u}");
    let dec = additive_decompose_with(&c, &f, &w0, &v).map_err(|e| e.to_string())?;
    ensure!(dec.u == u, "decomposition used u = {}", dec.u);
    let g = antiderivative(&dec).ok_or("not certified integrable")?;
    ensure!(c.dx(&g) == f, "g' != f");
    ensure!(g == el(&c, "-2*y/(3*x^2)"), "g = {g}");
    Ok(format!("u = {u}, antiderivative {g}"))
}

fn discriminants() -> Outcome {
    let c = sqrt_x();
    let d1 = basis(&c, &["1", "y"]).discriminant(&c);
    let d2 = basis(&c, &["1", "(x^2+1)*y"]).discriminant(&c);
    let base = |s: &str| el(&c, s).coeffs()[0].clone();
    ensure!(d1 == base("4*x"), "Disc(1, y) = {d1}");
    ensure!(d2 == base("4*(x^2+1)^2*x"), "Disc(1, (x^2+1)y) = {d2}");
    Ok(format!("{d1}; {d2}"))
}

fn integrability() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1e9);
    let mut n_int = 0;
    while n_int < 200 {
        let (c, poles, _) = family(&mut rng);
        let g = rand_elem(&mut rng, &c, &poles, 4);
        let f = c.dx(&g);
        let dec = additive_decompose(&c, &f).map_err(|e| format!("{c}: {e}"))?;
        ensure!(dec.is_integrable(), "{c}: dx({g}) declared non-integrable");
        ensure!(dec.d.is_constant(), "{c}: d = {}", dec.d);
        let anti = antiderivative(&dec).unwrap();
        ensure!((&anti - &g).is_constant(), "{c}: antiderivative {anti} vs {g}");
        n_int += 1;
    }
    let mut n_res = 0;
    while n_res < 50 {
        let (c, poles, p) = family(&mut rng);
        // simple pole at the regular point 7 with residue k·y(7)^i ≠ 0
        if p.eval(&Rat::from_i64(7)).is_zero() {
            continue;
        }
        let g = rand_elem(&mut rng, &c, &poles, 3);
        let i = rng.gen_range(0..c.degree());
        let k = rng.gen_range(1..=4);
        let f = &c.dx(&g) + &c.y_pow(i).scale(&RatFunc::new(P::from_i64s(&[k]), linear(7)));
        let dec = additive_decompose(&c, &f).map_err(|e| format!("{c}: {e}"))?;
        ensure!(!dec.is_integrable(), "{c}: {f} declared integrable");
        ensure!(dec.reassemble(&c) == f, "{c}: reassembly failed");
        n_res += 1;
    }
    Ok(format!("{n_int} integrable, {n_res} with residues"))
}

fn e_invariance() -> Outcome {
    let curves: Vec<Curve<Rat>> = ["y^2 - x", "y^2 - x^3 + x", "y^2 - x^3", "y^3 - x^2 - x", "y^3 - x^2", "y^2 + x*y - x^3 - 1"]
        .iter()
        .map(|s| parse_curve(s).unwrap())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut n = 0;
    for k in 0..60 {
        let c = &curves[k % curves.len()];
        let w = initial_suitable_basis(c).map_err(|e| e.to_string())?;
        let u = rand_unimodular(&mut rng, c.degree());
        let w2 = BasisW::new(c, transform(c, &u, &w)).map_err(|e| e.to_string())?;
        ensure!(w2.e() == w.e(), "{c}: e changed from {} to {}", w.e(), w2.e());
        n += 1;
    }
    Ok(format!("{n} changes of basis"))
}

fn complement_finiteness() -> Outcome {
    let curves = ["y^2 - x", "y^2 - x^3 + x", "y^2 - x^3", "y^3 - x^2 - x", "y^3 - x^2", "y^2 + x*y - x^3 - 1", "y^2 - x^5 + 1"];
    let mut dims = Vec::new();
    for s in curves {
        let c: Curve<Rat> = parse_curve(s).unwrap();
        let w = initial_suitable_basis(&c).map_err(|e| e.to_string())?;
        let v = suitable_at_infinity(&c).map_err(|e| e.to_string())?;
        let red = Reducer::new(&c, &w, &v).map_err(|e| e.to_string())?;
        let phi = &red.nv.phi;
        let m = phi.margin();
        let a = complement_stabilized(phi, m, 1).map_err(|e| e.to_string())?;
        let b = complement_stabilized(phi, 2 * m + 3, m).map_err(|e| e.to_string())?;
        ensure!(a.standard_monomials == b.standard_monomials, "{s}: schedules disagree");
        let big = complement_build(phi, b.degree_cap + 2 * m).map_err(|e| e.to_string())?;
        ensure!(big.standard_monomials == a.standard_monomials, "{s}: grows past the cap");
        dims.push(a.standard_monomials.len());
    }
    Ok(format!("dim N_V {dims:?}"))
}

fn telescoping() -> Outcome {
    let a: Curve<Qt> = parse_curve("y^2 - (x + t)").unwrap();
    let fa = parse_element(&a, "y").unwrap();
    let (l, g) = telescope(&a, &fa, 20).map_err(|e| e.to_string())?;
    ensure!(l.order() == 0 && verify_telescoper(&a, &l, &g, &fa), "(a): order {}", l.order());

    let b: Curve<Qt> = parse_curve("y^2 - x*(x - 1)*(x - t)").unwrap();
    let fb = parse_element(&b, "1/y").unwrap();
    match telescope(&b, &fb, 1) {
        Err(Error::MaxOrderExceeded { .. }) => {}
        other => return Err(format!("(b): order <= 1 not excluded: {other:?}")),
    }
    let (l, g) = telescope(&b, &fb, 20).map_err(|e| e.to_string())?;
    ensure!(l.order() == 2, "(b): order {}", l.order());
    ensure!(verify_telescoper(&b, &l, &g, &fb), "(b): identity fails");
    let want: Vec<Qt> = ["1", "8*t - 4", "4*t^2 - 4*t"].iter().map(|s| parse_constant(s).unwrap()).collect();
    ensure!(l.coeffs == want, "(b): operator {:?}", l.coeffs);
    Ok(format!("(a) order 0, (b) {:?}", l.coeffs))
}

fn corpus() -> Outcome {
    let lines = parse_corpus(BUNDLED);
    let rows = run_corpus(&lines, 1, 20);
    ensure!(rows.len() == 12, "{} rows", rows.len());
    for r in &rows {
        ensure!(r.is_ok() && r.verified, "{}: {}", r.name, r.status);
    }
    let one = serde_json::to_string_pretty(&corpus_document(&rows, false)).unwrap();
    let four = serde_json::to_string_pretty(&corpus_document(&run_corpus(&lines, 4, 20), false)).unwrap();
    ensure!(one == four, "structured output depends on --jobs");
    Ok("12/12 verified, identical bytes for --jobs 1 and 4".into())
}

fn main() {
    type Check = fn() -> Outcome;
    let criteria: [(&str, Check, Duration); 10] = [
        ("example 1 classification", example_one, Duration::from_secs(1)),
        ("example 2 basis updates", example_two, Duration::from_secs(1)),
        ("closing example of lazy reduction", closing_example, Duration::from_secs(1)),
        ("examples 3 and 5", examples_three_five, Duration::from_secs(2)),
        ("discriminants", discriminants, Duration::from_secs(1)),
        ("integrable iff remainder vanishes", integrability, Duration::from_secs(600)),
        ("e invariant under unimodular change", e_invariance, Duration::from_secs(60)),
        ("N_V finite and schedule independent", complement_finiteness, Duration::from_secs(60)),
        ("telescoping", telescoping, Duration::from_secs(120)),
        ("bundled corpus", corpus, Duration::from_secs(120)),
    ];
    let mut failed = Vec::new();
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let res = match res {
            Ok(_) if took > *limit => Err(format!("took {took:.2?}, limit {limit:?}")),
            r => r,
        };
        match res {
            Ok(detail) => println!("PASS {:>2} {name} ({took:.2?}): {detail}", i + 1),
            Err(why) => {
                println!("FAIL {:>2} {name} ({took:.2?}): {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {} failed", criteria.len() - failed.len(), failed.len());
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
