//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use common::*;
use num_complex::Complex64;
use num_integer::Integer;
use plane_branch::algebra::text::parse_poly;
use plane_branch::algebra::{int, Coeff, MultiPoly, Rational, Var, YSeriesPoly};
use plane_branch::branch::{
    characteristic_of, family_weierstrass_coeffs, index_set, unity_power_sum, validate_support, verify_parametrisation,
    weierstrass_from_puiseux, Characteristic, ParamFamily, PuiseuxParam, Vanishing,
};
use plane_branch::grading::{homogeneous_weight, initial_form, Weight};
use plane_branch::hensel::{hensel_lift, residual_to_weight};
use plane_branch::resultants::{bezout_cofactors, poly_mul, GradedBezout};
use plane_branch::rewrite::{
    char_coeff_relation, rewrite_invariant, subalgebra_membership_check, translate_nondegeneracy, Budget, Membership,
    RewriteContext,
};
use plane_branch::weierstrass::{approximate_root, weierstrass_prepare};
use plane_branch::Error;
use rand::Rng;

/// Absolute/relative tolerance of the float oracles.
const FLOAT_TOL: f64 = 1e-9;
/// Exact criteria compare with zero tolerance.
const EXACT_TOL: i64 = 0;

type Outcome = Result<String, String>;

/// Name, time limit and check.
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn p(s: &str) -> Poly {
    parse_poly(s).unwrap()
}

fn closed_34() -> RewriteContext {
    let ch = Characteristic::new(vec![3, 4]).unwrap();
    RewriteContext::new(&ParamFamily::closed(&ch, 30, [4, 7, 10].into()).unwrap()).unwrap()
}

fn c1_closed_34_coefficients() -> Outcome {
    let ch = Characteristic::new(vec![3, 4]).unwrap();
    let coeffs = family_weierstrass_coeffs(&ParamFamily::closed(&ch, 30, [4, 7, 10].into()).unwrap())
        .map_err(|e| e.to_string())?;
    // c_k is the coefficient of X^k in Y^3 - f, i.e. -C_{k,0}
    let expected = [
        (4, "A4^3"),
        (5, "3*A4^2*A7"),
        (6, "3*A4*A7^2 + 3*A4^2*A10"),
        (7, "A7^3 + 6*A4*A7*A10"),
        (8, "3*A7^2*A10 + 3*A4*A10^2"),
        (9, "3*A7*A10^2"),
        (10, "A10^3"),
    ];
    for (k, c) in expected {
        let got = coeffs.get(k, 0).unwrap().neg();
        ensure(got == p(c), || format!("c_{k} = {got}, expected {c}"))?;
    }
    for ((i, j), f) in &coeffs.entries {
        let expected_zero = !(*j == 3 && *i == 0) && !(*j == 0 && (4..=10).contains(i));
        ensure(!expected_zero || f.is_zero(), || {
            format!("F_{i},{j} = {f} should vanish")
        })?;
    }
    Ok(format!("c4..c10 exact (tolerance {EXACT_TOL})"))
}

fn c2_closed_34_rewrite() -> Outcome {
    let ctx = closed_34();
    let q = p("A4*A7^2");
    let r = rewrite_invariant(&ctx, &q, Budget::default_for(3)).map_err(|e| e.to_string())?;
    let vf = ctx.substitute(&r.v);
    ensure(q.mul(&vf) == ctx.substitute(&r.w), || "Q V(F) != W(F)".into())?;
    // V(F) is a nonzero constant times a^3
    let (mono, c) = vf.leading_term().ok_or("V(F) = 0")?;
    ensure(
        vf.len() == 1 && *mono == p("A4^3").leading_term().unwrap().0.clone() && !Coeff::is_zero(c),
        || format!("V(F) = {vf}"),
    )?;
    // W / V = c5^2 / (9 c4) with c_k = -C_{k,0}
    ensure(r.w == p("1/9*C5_0^2") && r.v == p("-C4_0"), || {
        format!("W = {}, V = {}", r.w, r.v)
    })?;
    Ok(format!("W = {}, V = {}, V(F) = {vf}", r.w, r.v))
}

fn c3_non_membership() -> Outcome {
    let got = subalgebra_membership_check(&closed_34(), &p("A4*A7^2"), 4).map_err(|e| e.to_string())?;
    ensure(got == Membership::NoneUpToDegree(4), || format!("{got:?}"))?;
    Ok("NoneUpToDegree(4)".into())
}

fn c4_root_substitution() -> Outcome {
    let mut rng = rng(4);
    for _ in 0..50 {
        let n = rng.gen_range(1..=6);
        let prec = rng.gen_range(n.max(2)..=60);
        let size = rng.gen_range(1..=4);
        let param = random_param(&mut rng, n, prec, size);
        let f = weierstrass_from_puiseux(&param).map_err(|e| e.to_string())?;
        let v = verify_parametrisation(&f, &param);
        ensure(matches!(v, Vanishing::AtLeast(k) if k > param.prec), || {
            format!("{param}: order {v}")
        })?;
    }
    Ok("50 parametrisations vanish to their truncation".into())
}

fn c5_hensel() -> Outcome {
    let mut rng = rng(5);
    let excess = 20u32;
    let mut done = 0;
    while done < 50 {
        let w = Weight::new(rng.gen_range(1..=3), rng.gen_range(1..=3)).unwrap();
        let (m, n) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let g0 = random_quasi_monic(&mut rng, w, m);
        let h0 = random_quasi_monic(&mut rng, w, n);
        if matches!(GradedBezout::new(&g0, &h0, w), Err(Error::NotCoprime)) {
            continue;
        }
        let top = w.b as u64 * (m + n) as u64 + excess as u64;
        let mut fpoly = g0.mul(&h0);
        for _ in 0..6 {
            let wt = rng.gen_range(top - excess as u64 + 1..=top);
            let j = rng.gen_range(0..m + n);
            if let Some(i) = w.x_exponent(wt, j).filter(|&i| i > 0) {
                fpoly = fpoly.add(&xy_term(small_int(&mut rng, 9), i, j));
            }
        }
        let prec = (top + 1).div_ceil(w.a as u64) as u32;
        let f = YSeriesPoly::from_poly(Var::X, prec, &fpoly).map_err(|e| e.to_string())?;
        let lift = hensel_lift(&f, w, &g0, &h0, excess).map_err(|e| e.to_string())?;
        let (g, h) = (lift.g_poly(), lift.h_poly());
        ensure(residual_to_weight(&fpoly, &g, &h, w, top).is_zero(), || {
            format!("residual for {fpoly}")
        })?;
        ensure(
            initial_form(&g, w).unwrap() == g0 && initial_form(&h, w).unwrap() == h0,
            || "initial forms changed".into(),
        )?;
        ensure(lift.scaled_parts_integral(), || {
            format!("R-scaled parts not integral for {fpoly}")
        })?;
        done += 1;
    }
    Ok(format!("50 lifts to excess {excess}"))
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(Coeff::is_zero) {
        v.pop();
    }
    v
}

fn c6_bezout() -> Outcome {
    let mut rng = rng(6);
    for _ in 0..200 {
        let (m, n) = (rng.gen_range(0..=5usize), rng.gen_range(0..=5usize));
        if m + n == 0 {
            continue;
        }
        let g: Vec<Rational> = (0..=m).map(|_| small_int(&mut rng, 6)).collect();
        let h: Vec<Rational> = (0..=n).map(|_| small_int(&mut rng, 6)).collect();
        let f: Vec<Rational> = (0..m + n).map(|_| small_int(&mut rng, 6)).collect();
        let res = plane_branch::resultants::resultant(&g, m, &h, n).map_err(|e| e.to_string());
        let Ok(res) = res else { continue };
        let (a, b) = bezout_cofactors(&g, m, &h, n, &f).map_err(|e| e.to_string())?;
        let lhs: Vec<Rational> = {
            let (x, y) = (poly_mul(&g, &a), poly_mul(&h, &b));
            (0..x.len().max(y.len()))
                .map(|k| x.get(k).cloned().unwrap_or_default() + y.get(k).cloned().unwrap_or_default())
                .collect()
        };
        let rhs: Vec<Rational> = f.iter().map(|c| c * &res).collect();
        ensure(trim(lhs) == trim(rhs), || {
            format!("Bezout identity fails for {g:?}, {h:?}")
        })?;
        ensure(a.len() <= n && b.len() <= m, || "cofactor degrees".into())?;
    }
    let mut done = 0;
    while done < 200 {
        let w = Weight::new(rng.gen_range(1..=3), rng.gen_range(1..=3)).unwrap();
        let (m, n) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let g = random_quasi_monic(&mut rng, w, m);
        let h = random_quasi_monic(&mut rng, w, n);
        let Ok(solver) = GradedBezout::new(&g, &h, w) else {
            continue;
        };
        let (s, t) = (w.b as u64 * m as u64, w.b as u64 * n as u64);
        let i = rng.gen_range(0..=8u64);
        let f = random_homogeneous(&mut rng, w, s + t + i, m + n);
        let (phi, psi) = solver.solve(&f).map_err(|e| e.to_string())?;
        ensure(g.mul(&phi).add(&h.mul(&psi)) == f, || "G phi + H psi != F".into())?;
        ensure(phi.is_zero() || homogeneous_weight(&phi, w) == Some(t + i), || {
            "weight of phi".into()
        })?;
        ensure(psi.is_zero() || homogeneous_weight(&psi, w) == Some(s + i), || {
            "weight of psi".into()
        })?;
        ensure(phi.degree_in(Var::Y).is_none_or(|k| k < n), || "y-degree of phi".into())?;
        ensure(psi.degree_in(Var::Y).is_none_or(|k| k < m), || "y-degree of psi".into())?;
        let delta = random_homogeneous(&mut rng, w, t + i, n);
        let (phi2, psi2) = solver.solve(&f.add(&g.mul(&delta))).map_err(|e| e.to_string())?;
        ensure(phi2 == phi.add(&delta) && psi2 == psi, || "solution not unique".into())?;
        done += 1;
    }
    Ok("200 univariate + 200 graded instances".into())
}

fn c7_roots_of_unity() -> Outcome {
    let close = |a: f64, b: f64| (a - b).abs() <= FLOAT_TOL * b.abs().max(1.0);
    for n in 1..=12u32 {
        for i in -40i64..=40 {
            let s: Complex64 = (0..n)
                .map(|k| Complex64::from_polar(1.0, 2.0 * PI * (k as f64) * (i as f64) / n as f64))
                .sum();
            let exact = unity_power_sum(n, i) as f64;
            ensure(close(s.re, exact) && s.im.abs() <= FLOAT_TOL, || {
                format!("n={n}, i={i}")
            })?;
        }
    }
    let mut rng = rng(7);
    for _ in 0..40 {
        let n = rng.gen_range(1..=6u32);
        let prec = rng.gen_range(n..=20);
        let param = random_param(&mut rng, n, prec, 3);
        let f = weierstrass_from_puiseux(&param).map_err(|e| e.to_string())?;
        // brute-force prod_eps (Y - alpha(eps T)) in T-degrees <= prec
        let len = prec as usize + 1;
        let zero = Complex64::new(0.0, 0.0);
        let mut prod = vec![vec![zero; len]];
        prod[0][0] = Complex64::new(1.0, 0.0);
        for k in 0..n {
            let eps = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64);
            let mut next = vec![vec![zero; len]; prod.len() + 1];
            for (j, row) in prod.iter().enumerate() {
                for d in 0..len {
                    next[j + 1][d] += row[d];
                    for (&i, c) in param.coeffs.iter().filter(|(&i, _)| d + (i as usize) < len) {
                        next[j][d + i as usize] -= row[d] * eps.powi(i as i32) * to_f64(c);
                    }
                }
            }
            prod = next;
        }
        for (j, row) in prod.iter().enumerate() {
            for (d, z) in row.iter().enumerate() {
                let d = d as u32;
                let exact = if d.is_multiple_of(n) {
                    to_f64(&f.coeff_at(d / n, j))
                } else {
                    0.0
                };
                ensure(
                    close(z.re, exact) && z.im.abs() <= FLOAT_TOL * z.norm().max(1.0),
                    || format!("{param}: Y^{j} T^{d}: {z} vs {exact}"),
                )?;
            }
        }
    }
    Ok(format!(
        "power sums n <= 12, |i| <= 40; 40 products n <= 6 (tolerance {FLOAT_TOL:e})"
    ))
}

fn c8_preparation() -> Outcome {
    let mut rng = rng(8);
    for _ in 0..50 {
        let m = rng.gen_range(0..=4);
        let deg = m + rng.gen_range(0..=3);
        let prec = rng.gen_range(1..=8);
        let f = random_y_regular(&mut rng, m, deg, prec);
        let prep = weierstrass_prepare(&f, prec).map_err(|e| e.to_string())?;
        ensure(prep.u.mul(&prep.w) == f.truncate(prec), || format!("f != u w for {f}"))?;
        ensure(prep.u.coeff_at(0, 0) == int(1), || "u(0,0) != 1".into())?;
        ensure(prep.w.is_weierstrass() && prep.degree() == m as usize, || {
            "w not Weierstrass".into()
        })?;
        ensure(is_integral(&prep.u.to_poly()) && is_integral(&prep.w.to_poly()), || {
            "not integral".into()
        })?;
    }
    Ok("50 integer inputs prepared exactly".into())
}

fn c9_approximate_roots() -> Outcome {
    let mut rng = rng(9);
    for _ in 0..50 {
        let n = rng.gen_range(1..=8u32);
        let divisors: Vec<u32> = (1..=n).filter(|d| n % d == 0).collect();
        let d = divisors[rng.gen_range(0..divisors.len())];
        let f = random_monic(&mut rng, n, 3);
        let root = approximate_root(&f, d).map_err(|e| e.to_string())?;
        let r = f.sub(&root.pow(d));
        ensure(root.is_monic() && root.degree() as u32 == n / d, || "root shape".into())?;
        ensure(r.is_zero() || (r.degree() as u32) < n - n / d, || {
            format!("deg(f - p^{d}) too big")
        })?;
    }
    // the approximate square root of a (4,6,7) branch is parametrised by
    // (T^2, sum_{2i < 7} a_{2i} T^i) to the order the characteristic allows
    let ch = Characteristic::new(vec![4, 6, 7]).unwrap();
    let fam = ParamFamily::open(&ch, 28).unwrap();
    for _ in 0..10 {
        let values = random_point(&mut rng, &fam);
        let f = weierstrass_from_puiseux(&fam.specialize(&values)).map_err(|e| e.to_string())?;
        let root = approximate_root(&f, 2).map_err(|e| e.to_string())?;
        let (e1, b2) = (ch.e()[1], ch.b()[2]);
        let prec = (b2 - 1) / e1;
        let coeffs: BTreeMap<u32, Rational> = values
            .iter()
            .filter(|(&i, _)| i % e1 == 0 && i < b2)
            .map(|(&i, c)| (i / e1, c.clone()))
            .collect();
        let reduced = PuiseuxParam::new(ch.n() / e1, coeffs, prec).map_err(|e| e.to_string())?;
        let v = verify_parametrisation(&root, &reduced);
        ensure(v == Vanishing::AtLeast(prec + 1), || {
            format!("approximate root order {v}")
        })?;
    }
    Ok("50 random roots; (4,6,7) compatibility on 10 members".into())
}

fn c10_characteristics() -> Outcome {
    let mut rng = rng(10);
    let brute = |n: u32, supp: &BTreeSet<u32>| {
        let mut out = vec![n];
        let mut g = n;
        for &i in supp {
            if g.gcd(&i) < g {
                g = g.gcd(&i);
                out.push(i);
            }
        }
        (g == 1).then_some(out)
    };
    for _ in 0..200 {
        let n = rng.gen_range(1..=12u32);
        let size = rng.gen_range(1..=6);
        let supp: BTreeSet<u32> = (0..size).map(|_| rng.gen_range(1..=60)).collect();
        let got = characteristic_of(n, &supp).ok().map(|c| c.b().to_vec());
        ensure(got == brute(n, &supp), || format!("n={n}, supp={supp:?}"))?;
    }
    let (mut pos, mut neg) = (0, 0);
    while pos < 200 || neg < 200 {
        let n = rng.gen_range(2..=12u32);
        let seed = random_primitive_support(&mut rng, n, 30, 3);
        let ch = characteristic_of(n, &seed).unwrap();
        let mut supp: BTreeSet<u32> = ch.b()[1..].iter().copied().collect();
        let pool = index_set(&ch, 3 * ch.b_m());
        for _ in 0..rng.gen_range(0..5) {
            supp.insert(pool[rng.gen_range(0..pool.len())]);
        }
        match rng.gen_range(0..3) {
            0 => {}
            1 => {
                supp.remove(&ch.b()[rng.gen_range(1..ch.b().len())]);
            }
            _ => {
                supp.insert(rng.gen_range(1..=3 * ch.b_m()));
            }
        }
        let expected = ch.b()[1..].iter().all(|b| supp.contains(b)) && supp.iter().all(|&i| ch.in_index_set(i));
        let valid = validate_support(&ch, &supp);
        ensure(valid == expected, || format!("{ch}, {supp:?}"))?;
        ensure(valid == characteristic_of(n, &supp).is_ok_and(|c| c == ch), || {
            format!("{ch}, {supp:?}")
        })?;
        if valid {
            pos += 1;
        } else {
            neg += 1;
        }
    }
    Ok(format!("200 supports; {pos} valid and {neg} invalid cases"))
}

fn c11_relations() -> Outcome {
    let r = char_coeff_relation(&closed_34(), 1, Budget::default_for(3)).map_err(|e| e.to_string())?;
    ensure(r.m == p("-C4_0") && r.n_mono.is_one(), || format!("(3,4): M = {}", r.m))?;
    let c23 = Characteristic::new(vec![2, 3]).unwrap();
    let ctx = RewriteContext::new(&ParamFamily::closed(&c23, 6, [3].into()).unwrap()).unwrap();
    let r = char_coeff_relation(&ctx, 1, Budget::default_for(2)).map_err(|e| e.to_string())?;
    ensure(r.m == p("-C3_0") && r.n_mono.is_one(), || format!("(2,3): M = {}", r.m))?;

    let ch = Characteristic::new(vec![4, 6, 7]).unwrap();
    let ctx = RewriteContext::new(&ParamFamily::open(&ch, 21).unwrap()).unwrap();
    let r = char_coeff_relation(&ctx, 1, Budget::default_for(4)).map_err(|e| e.to_string())?;
    let lhs = MultiPoly::term(r.lhs_power(&ch).mul(&r.n_mono), rational_one());
    let mut rng = rng(11);
    for _ in 0..50 {
        let values = random_point(&mut rng, ctx.family());
        let f = weierstrass_from_puiseux(&ctx.family().specialize(&values)).map_err(|e| e.to_string())?;
        let mut point = c_values(&f);
        point.extend(values.iter().map(|(&i, c)| (Var::A(i), c.clone())));
        ensure(r.m.evaluate(&point) == lhs.evaluate(&point), || {
            "(4,6,7) relation fails".into()
        })?;
    }
    Ok(format!(
        "A4^3 = {}, A3^2 = -C3_0, (4,6,7) level 1 on 50 members",
        p("-C4_0")
    ))
}

fn c12_translation() -> Outcome {
    let ctx = closed_34();
    let mut rng = rng(12);
    let mut ws = Vec::new();
    for (q, zeroable) in [("A10", Some(10u32)), ("A4", None), ("A7", Some(7))] {
        let q = p(q);
        let t = translate_nondegeneracy(&ctx, &q, Budget::default_for(3)).map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let mut values = random_point(&mut rng, ctx.family());
            if let Some(i) = zeroable.filter(|_| rng.gen_range(0..3) == 0) {
                values.insert(i, int(0));
            }
            let f = weierstrass_from_puiseux(&ctx.family().specialize(&values)).map_err(|e| e.to_string())?;
            let mut point = c_values(&f);
            point.extend(values.iter().map(|(&i, c)| (Var::A(i), c.clone())));
            let qv = q.evaluate(&point).unwrap();
            let wv = t.w.evaluate(&point).ok_or("W uses an unknown variable")?;
            ensure(Coeff::is_zero(&qv) == Coeff::is_zero(&wv), || {
                format!("zero sets differ for {q}")
            })?;
        }
        ws.push(t.w);
    }
    ensure(ws[0] == p("C10_0"), || format!("W(c) = {}", ws[0]))?;
    ensure(ws[1] == p("C4_0"), || format!("W(a) = {}", ws[1]))?;
    Ok(format!(
        "W(c) = {}, W(a) = {}, W(b) = {}; 100 samples each",
        ws[0], ws[1], ws[2]
    ))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("(3,4) coefficients", Duration::from_secs(1), c1_closed_34_coefficients),
        ("(3,4) rewriting", Duration::from_secs(10), c2_closed_34_rewrite),
        ("bounded non-membership", Duration::from_secs(30), c3_non_membership),
        ("root substitution", Duration::from_secs(60), c4_root_substitution),
        ("graded Hensel lifting", Duration::from_secs(60), c5_hensel),
        ("Bezout identities", Duration::from_secs(30), c6_bezout),
        ("roots-of-unity oracle", Duration::from_secs(30), c7_roots_of_unity),
        ("Weierstrass preparation", Duration::from_secs(30), c8_preparation),
        ("approximate roots", Duration::from_secs(30), c9_approximate_roots),
        ("characteristic machinery", Duration::from_secs(10), c10_characteristics),
        ("char-coefficient relations", Duration::from_secs(60), c11_relations),
        ("non-degeneracy translation", Duration::from_secs(60), c12_translation),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|msg| {
            if elapsed <= *limit {
                Ok(msg)
            } else {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
        });
        match outcome {
            Ok(msg) => println!("PASS [{:>2}] {name} ({elapsed:.2?}): {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL [{:>2}] {name} ({elapsed:.2?}): {msg}", k + 1)
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
