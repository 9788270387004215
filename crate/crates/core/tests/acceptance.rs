//! Acceptance checks against the reference ideal `(x^2 y + z^3, xyz, y z^2)`.
//! Prints one PASS/FAIL line per criterion. Failures listed in `KNOWN` are
//! reported as `FAIL (known)` and do not change the exit status; any other
//! failure, or a known failure that starts passing, exits nonzero.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use common::*;
use ginbetti::asymptotics::*;
use ginbetti::betti::*;
use ginbetti::boij_soderberg::bs_decompose;
use ginbetti::gin::*;
use ginbetti::groebner::{ideal_power, initial_ideal};
use ginbetti::linalg::dense_rank;
use ginbetti::{Field, Ideal, MonomialIdeal, PrimeField, Rationals, TermOrder};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;

/// Criteria whose target is contradicted by the reference data itself.
const KNOWN: &[(u32, &str)] = &[(
    6,
    "the lexgin entry (1, offset 1) reads 3, 7, 10, 14, 18, 22 for k = 1..6; the printed lexgin(I^2) table \
     also has 7 there, so 4k - 2 starts at k = 3, not k = 2",
)];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration) -> std::result::Result<(), String> {
    ensure(t.elapsed() < limit, || {
        format!("took {:?}, limit {:?}", t.elapsed(), limit)
    })
}

fn q(n: i64, d: i64) -> BigRational {
    rational(n, d)
}

fn poly(c: &[(i64, i64)]) -> Coefficients {
    let mut v: Coefficients = c.iter().map(|&(n, d)| q(n, d)).collect();
    while v.last().is_some_and(|x| *x == q(0, 1)) {
        v.pop();
    }
    v
}

fn series<F: Field>(base: &Ideal<F>, transform: Transform, k_max: u32) -> SeriesReport {
    let spec = SystemSpec {
        base: base.clone(),
        transform,
        k_min: 1,
        k_max,
        r: None,
    };
    compute_series(&spec, SeriesOptions::default()).expect("series")
}

fn c1_power_tables() -> Check {
    let t = Instant::now();
    let i = reference_ideal(&Rationals);
    for k in 1..=6 {
        let r = koszul_betti(&ideal_power(&i, k).unwrap(), u32::MAX).unwrap();
        ensure(!r.truncated, || format!("k = {k}: truncated"))?;
        ensure(r.table == power_table(k), || format!("k = {k}: got {:?}", r.table))?;
    }
    within(t, Duration::from_secs(120))?;
    Ok(format!("k = 1..6 over Q in {:?}", t.elapsed()))
}

fn c2_gin_tables() -> Check {
    let t = Instant::now();
    let fp = PrimeField::default();
    let i = reference_ideal(&fp);
    for k in 1..=6 {
        let mut seen: Option<MonomialIdeal> = None;
        for seed in [0u64, 17, 4242] {
            let opts = GinOptions {
                trials: 3,
                seed,
                ..GinOptions::default()
            };
            let (m, cert) = gin_of_power(&i, k, TermOrder::GrevLex, opts).map_err(|e| e.to_string())?;
            ensure(cert.certified(), || format!("k = {k}, seed {seed}: not certified"))?;
            ensure(seen.as_ref().is_none_or(|s| *s == m), || {
                format!("k = {k}: seeds disagree")
            })?;
            let table = ek_betti(&m).unwrap();
            ensure(table == gin_table(k), || format!("k = {k}: got {table:?}"))?;
            seen = Some(m);
        }
        if k <= 2 {
            let (mq, cq) = gin_of_power(
                &reference_ideal(&Rationals),
                k,
                TermOrder::GrevLex,
                GinOptions::default(),
            )
            .map_err(|e| e.to_string())?;
            ensure(cq.certified() && Some(&mq) == seen.as_ref(), || {
                format!("k = {k}: Q and F_p disagree")
            })?;
        }
    }
    within(t, Duration::from_secs(300))?;
    Ok(format!(
        "k = 1..6, 3 seeds x 3 trials over F_32003, k <= 2 also over Q, in {:?}",
        t.elapsed()
    ))
}

fn c3_lexgin_tables() -> Check {
    let fp = PrimeField::default();
    let i = reference_ideal(&fp);
    for k in 1..=3 {
        let (m, cert) = gin_of_power(&i, k, TermOrder::Lex, GinOptions::default()).map_err(|e| e.to_string())?;
        ensure(cert.certified(), || format!("k = {k}: not certified"))?;
        let table = ek_betti(&m).unwrap();
        ensure(table == lexgin_table(k), || format!("k = {k}: got {table:?}"))?;
        ensure(table.rows().len() == 3 * k as usize + 1, || {
            format!("k = {k}: row count")
        })?;
        ensure(table.regularity() == Ok(6 * k as i64), || {
            format!("k = {k}: reg {:?}", table.regularity())
        })?;
    }
    Ok("k = 1..3 exact, reg = 6k".into())
}

fn c4_initial_system() -> Check {
    let t = Instant::now();
    let i = reference_ideal(&Rationals);
    let mut tables = BTreeMap::new();
    for k in 3..=10u32 {
        let m = initial_ideal(&ideal_power(&i, k).unwrap(), TermOrder::GrevLex).unwrap();
        tables.insert(k, monomial_betti(&m));
    }
    let got: Vec<u64> = tables.iter().map(|(&k, t)| t.get(2, 3 * k as usize + 2)).collect();
    ensure(got == vec![2, 4, 8, 12, 18, 24, 32, 40], || format!("values {got:?}"))?;
    let fits = fit_entries(&tables, 3, 3, 2);
    let f = fits
        .iter()
        .find(|f| f.i == 2 && f.offset == 0)
        .ok_or("no fit for (2, 0)")?;
    let expected = FitKind::QuasiPolynomial {
        period: 2,
        branches: vec![poly(&[(0, 1), (-1, 1), (1, 2)]), poly(&[(1, 2), (-1, 1), (1, 2)])],
    };
    ensure(f.fit.kind == expected, || format!("fit {}", f.fit))?;
    within(t, Duration::from_secs(300))?;
    Ok(format!("beta_2,3k+2 = {got:?}; {} ; {:?}", f.fit, t.elapsed()))
}

fn c5_stabilization() -> Check {
    let q = Rationals;
    let fp = PrimeField::default();
    let power = series(&reference_ideal(&q), Transform::Power, 6);
    let gin = series(&reference_ideal(&fp), Transform::Gin(TermOrder::GrevLex), 6);
    let lex = series(&reference_ideal(&fp), Transform::Gin(TermOrder::Lex), 3);
    ensure(
        power.stabilization.stabilized && power.stabilization.k0 == Some(3),
        || format!("power: {:?}", power.stabilization),
    )?;
    ensure(gin.stabilization.stabilized && gin.stabilization.k0 == Some(3), || {
        format!("gin: {:?}", gin.stabilization)
    })?;
    ensure(!lex.stabilized_flag(), || format!("lexgin: {:?}", lex.stabilization))?;
    ensure(compare_stabilization_indices(&power, &gin) == Ok(true), || {
        "gin k0 exceeds power k0".into()
    })?;
    Ok(format!(
        "k0 = 3 for powers and gin (trailing run of {} shapes, window {}), lexgin not stabilized",
        power.stabilization.trailing, power.stabilization.window
    ))
}

trait Stab {
    fn stabilized_flag(&self) -> bool;
}

impl Stab for SeriesReport {
    fn stabilized_flag(&self) -> bool {
        self.stabilization.stabilized
    }
}

fn check_fit(report: &SeriesReport, i: usize, offset: i64, expected: &[(i64, i64)]) -> std::result::Result<(), String> {
    let f = report
        .fit(i, offset)
        .ok_or_else(|| format!("no fit for ({i}, {offset})"))?;
    ensure(f.polynomial() == Some(&poly(expected)), || {
        format!("({i}, {offset}): {f}")
    })
}

fn c6_fits() -> Check {
    let power = series(&reference_ideal(&Rationals), Transform::Power, 6);
    ensure(power.fits.len() == 4, || format!("power: {} fits", power.fits.len()))?;
    check_fit(&power, 0, 0, &[(1, 1), (3, 2), (1, 2)])?;
    check_fit(&power, 1, 0, &[(0, 1), (0, 1), (1, 1)])?;
    check_fit(&power, 2, 0, &[(1, 1), (-3, 2), (1, 2)])?;
    check_fit(&power, 1, 1, &[(1, 1)])?;

    let fp = PrimeField::default();
    let gin = series(&reference_ideal(&fp), Transform::Gin(TermOrder::GrevLex), 6);
    ensure(gin.fits.len() == 5, || format!("gin: {} fits", gin.fits.len()))?;
    check_fit(&gin, 0, 0, &[(1, 1), (3, 2), (1, 2)])?;
    check_fit(&gin, 1, 0, &[(1, 1), (0, 1), (1, 1)])?;
    check_fit(&gin, 2, 0, &[(1, 1), (-3, 2), (1, 2)])?;
    check_fit(&gin, 0, 1, &[(1, 1)])?;
    check_fit(&gin, 1, 1, &[(1, 1)])?;

    let t = Instant::now();
    let lex = series(&reference_ideal(&fp), Transform::Gin(TermOrder::Lex), 6);
    within(t, Duration::from_secs(900))?;
    let values: Vec<u64> = lex.tables.iter().map(|(&k, t)| t.get(1, 3 * k as usize + 2)).collect();
    let f = lex.fit(1, 1).ok_or("no lexgin fit for (1, 1)")?;
    ensure(f.polynomial() == Some(&poly(&[(-2, 1), (4, 1)])), || {
        format!("lexgin (1, 1): {f}")
    })?;
    ensure(f.valid_from == Some(2), || {
        format!("powers and gin fits match; lexgin (1, 1) = {f}, values {values:?}, expected validity from k = 2")
    })?;
    Ok("all fits match".into())
}

fn c7_witness() -> Check {
    let w = cancellation_witness(&gin_table(3), &power_table(3)).map_err(|e| e.to_string())?;
    ensure(w.moves == BTreeMap::from([((0, 10), 1)]), || {
        format!("moves {:?}", w.moves)
    })?;
    // and from computed tables
    let fp = PrimeField::default();
    let (m, _) = gin_of_power(&reference_ideal(&fp), 3, TermOrder::GrevLex, GinOptions::default()).unwrap();
    let i3 = koszul_betti_auto(&ideal_power(&reference_ideal(&Rationals), 3).unwrap()).unwrap();
    let w2 = cancellation_witness(&ek_betti(&m).unwrap(), &i3).map_err(|e| e.to_string())?;
    ensure(w2 == w, || "computed tables give a different witness".into())?;
    Ok("one move at (s = 0, r = 10)".into())
}

fn c8_extremal() -> Check {
    let power = series(&reference_ideal(&Rationals), Transform::Power, 6);
    let gin = series(
        &reference_ideal(&PrimeField::default()),
        Transform::Gin(TermOrder::GrevLex),
        6,
    );
    for k in 1..=6u32 {
        let (a, b) = (&power.tables[&k], &gin.tables[&k]);
        ensure(extremal_entries(a) == extremal_entries(b), || {
            format!("k = {k}: extremal entries differ")
        })?;
        ensure(a.regularity() == b.regularity(), || {
            format!("k = {k}: regularity differs")
        })?;
        cancellation_witness(b, a).map_err(|e| format!("k = {k}: {e}"))?;
    }
    Ok("k = 1..6".into())
}

fn c9_complete_intersections() -> Check {
    let q = Rationals;
    for (a, b) in [(2u32, 3u32), (3, 5)] {
        let base = Ideal::from_monomials(q, &MonomialIdeal::from_exps(2, &[&[a, 0], &[0, b]]));
        for k in 1..=8u32 {
            let got = koszul_betti_auto(&ideal_power(&base, k).unwrap()).unwrap();
            let mut expected = BettiTable::new();
            for l in 0..=k {
                expected.add(0, a * k + l * (b - a), 1);
            }
            for l in 1..=k {
                expected.add(1, a * k + l * (b - a) + a, 1);
            }
            ensure(got == expected, || format!("(x^{a}, y^{b})^{k}: {got:?}"))?;
        }
    }
    Ok("(2,3) and (3,5), k <= 8".into())
}

fn c10_oracles() -> Check {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for s in 0..50 {
        let m = random_borel_fixed(&mut rng, 4, 6);
        ensure(ek_betti(&m).unwrap() == monomial_betti(&m), || {
            format!("ek vs lcm lattice, case {s}: {m}")
        })?;
    }
    for s in 0..30 {
        let m = random_monomial_ideal(&mut rng, 3, 6, 4);
        let i = Ideal::from_monomials(Rationals, &m);
        ensure(koszul_betti_auto(&i).unwrap() == monomial_betti(&m), || {
            format!("koszul vs lcm lattice, case {s}: {m}")
        })?;
    }
    let fp = PrimeField::default();
    let mut done = 0;
    while done < 10 {
        let r = rng.gen_range(2..=3);
        let count = rng.gen_range(1..=3);
        let i = random_equigenerated(&mut rng, &fp, r, count);
        if i.is_zero() {
            continue;
        }
        let h: Vec<u64> = (0..3).map(|_| fp.from_i64(rng.gen_range(1..=100))).collect();
        let section = hyperplane_section(&i, &h).map_err(|e| e.to_string())?;
        let opts = GinOptions::default();
        let (g, _) = gin(&i, TermOrder::GrevLex, opts).map_err(|e| e.to_string())?;
        let (gh, _) = gin(&section, TermOrder::GrevLex, opts).map_err(|e| e.to_string())?;
        ensure(gh == restrict_last_variable(&g), || {
            format!("hyperplane case {done}: {i}")
        })?;
        done += 1;
    }
    within(t, Duration::from_secs(600))?;
    Ok(format!("50 + 30 + 10 cases in {:?}", t.elapsed()))
}

fn jacobian_rank(i: &Ideal<Rationals>, seed: u64) -> usize {
    let q = Rationals;
    let n = i.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let point: Vec<_> = (0..n).map(|_| q.from_i64(rng.gen_range(-50..=50))).collect();
    let rows: Vec<Vec<_>> = i
        .generators()
        .iter()
        .map(|g| {
            (0..n)
                .map(|v| {
                    g.terms().iter().fold(q.zero(), |acc, (m, c)| {
                        let e = m.exponent(v);
                        if e == 0 {
                            return acc;
                        }
                        let mut term = q.mul(c, &q.from_i64(e as i64));
                        for w in 0..n {
                            let p = if w == v { e - 1 } else { m.exponent(w) };
                            for _ in 0..p {
                                term = q.mul(&term, &point[w]);
                            }
                        }
                        q.add(&acc, &term)
                    })
                })
                .collect()
        })
        .collect();
    dense_rank(&q, &rows)
}

fn c11_degree_bounds() -> Check {
    let i = reference_ideal(&Rationals);
    let l = analytic_spread(&i).map_err(|e| e.to_string())?;
    ensure(l == 3, || format!("spread {l}"))?;
    ensure(jacobian_rank(&i, 7) == 3, || "Jacobian oracle disagrees".into())?;
    let power = series(&i, Transform::Power, 6);
    let gin = series(
        &reference_ideal(&PrimeField::default()),
        Transform::Gin(TermOrder::GrevLex),
        6,
    );
    ensure(verify_degree_bounds(&power.fits, l), || {
        "power fits violate the bound".into()
    })?;
    ensure(verify_degree_bounds(&gin.fits, l), || {
        "gin fits violate the bound".into()
    })?;
    ensure(power.spread == Some(3) && gin.spread == Some(3), || {
        "series spread".into()
    })?;
    Ok("spread 3 by elimination and Jacobian rank; all fits of degree < 3 with positive leads".into())
}

fn c12_boij_soderberg() -> Check {
    let gin = series(
        &reference_ideal(&PrimeField::default()),
        Transform::Gin(TermOrder::GrevLex),
        6,
    );
    let mut decs = Vec::new();
    for k in 3..=6u32 {
        let t = &gin.tables[&k];
        let d = bs_decompose(t).map_err(|e| format!("k = {k}: {e}"))?;
        ensure(d.reproduces(t), || format!("k = {k}: does not re-sum"))?;
        ensure(d.is_chain(), || format!("k = {k}: not a chain"))?;
        decs.push(d);
    }
    let m = decs[0].parts.len();
    for (t, pair) in decs.windows(2).enumerate() {
        ensure(pair[1].parts.len() == m, || {
            format!("part count changes at k = {}", t + 4)
        })?;
        for (a, b) in pair[0].parts.iter().zip(&pair[1].parts) {
            ensure(b.degrees == a.degrees.translate(3), || {
                format!("{} -> {} is not a shift by 3", a.degrees, b.degrees)
            })?;
        }
    }
    // weights are polynomial in k
    for p in 0..m {
        let pts: Vec<(i64, BigRational)> = decs
            .iter()
            .zip(3..)
            .map(|(d, k)| (k, d.parts[p].weight.clone()))
            .collect();
        ensure(fit_polynomial(&pts, 3).is_some(), || {
            format!("weights of part {p} are not polynomial")
        })?;
    }
    Ok(format!("{m} parts per table, k = 3..6: {}", decs[0]))
}

fn main() {
    let checks: Vec<(u32, &str, fn() -> Check)> = vec![
        (1, "power tables via Koszul homology", c1_power_tables),
        (2, "gin tables via certified gin and EK", c2_gin_tables),
        (3, "lexgin tables and regularity", c3_lexgin_tables),
        (4, "initial system quasi-polynomial", c4_initial_system),
        (5, "stabilization verdicts", c5_stabilization),
        (6, "polynomial fits", c6_fits),
        (7, "cancellation witness", c7_witness),
        (8, "extremal entries and regularity", c8_extremal),
        (9, "complete intersection oracle", c9_complete_intersections),
        (10, "oracle equivalence suites", c10_oracles),
        (11, "degree bounds and analytic spread", c11_degree_bounds),
        (12, "Boij-Soderberg decompositions", c12_boij_soderberg),
    ];
    let mut bad = 0;
    for (id, name, f) in checks {
        let known = KNOWN.iter().find(|(k, _)| *k == id).map(|(_, why)| *why);
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match (outcome, known) {
            (Ok(detail), None) => println!("PASS criterion {id}: {name}: {detail}"),
            (Ok(detail), Some(_)) => {
                bad += 1;
                println!("PASS criterion {id}: {name}: {detail} (listed as known failure; update KNOWN)");
            }
            (Err(why), Some(reason)) => println!("FAIL (known) criterion {id}: {name}: {why}. {reason}"),
            (Err(why), None) => {
                bad += 1;
                println!("FAIL criterion {id}: {name}: {why}");
            }
        }
    }
    if bad > 0 {
        std::process::exit(1);
    }
}
