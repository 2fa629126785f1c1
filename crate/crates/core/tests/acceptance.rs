//! One line per acceptance criterion, exact equality throughout.

mod common;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use num_traits::Zero;
use orbimirror::cohomology::{enumerate_sectors, special_strata, StateSpace, TargetSpec};
use orbimirror::ifunction::{assemble_i, component};
use orbimirror::mirror::{extract_mu, run};
use orbimirror::series::{invert_triangular_map, substitute, var_names};
use orbimirror::{Error, MultiIndex, Rational, Series};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn same(got: &Series, want: &Series, what: &str) -> Check {
    let bad = mismatches(got, want);
    ensure(bad.is_empty(), || format!("{what}: {}", bad.join("; ")))
}

fn within(t: Instant, limit: Duration) -> Check {
    let e = t.elapsed();
    ensure(e < limit, || format!("took {e:?}, limit {limit:?}"))
}

fn table(f: &orbimirror::GeneratingFunction, cells: &[(u32, u32, &str)]) -> Check {
    for d0 in 0..=6u32 {
        for d1 in 0..=6u32 {
            if d0 == 0 && d1 < 3 {
                continue;
            }
            let want = cells.iter().find(|c| (c.0, c.1) == (d0, d1)).map(|c| q(c.2)).unwrap_or_else(Rational::zero);
            let got = f.invariant(d0, &[d1]);
            ensure(got == want, || format!("N({d0},{d1}) = {got}, expected {want}"))?;
        }
    }
    Ok(())
}

fn fact(n: i64) -> Rational {
    (1..=n).fold(z(1), |a, k| a * z(k))
}

fn c1() -> Check {
    let t = Instant::now();
    let m = model(&X7);
    let mu = extract_mu(&m, &assemble_i(&m.space, &m.algebra, &m.git, 5).map_err(|e| e.to_string())?);
    same(&mu.i0, &series(&Q01, 5, X7_I0), "I0")?;
    same(&mu.i1_h, &series(&Q01, 5, X7_I1H), "I1H")?;
    same(&mu.i1_phi[0], &series(&Q01, 5, X7_I1PHI), "I1phi")?;
    // q0^4 q1 has e = (1, 1): prod_{j=1}^{9} j / prod_{k=1}^{4} k
    ensure(mu.i0.get(&[4, 1]) == fact(9) / fact(4), || "q0^4 q1 coefficient".into())?;
    within(t, Duration::from_secs(5))
}

fn c2() -> Check {
    let t = Instant::now();
    let r = run(&model(&X7), 5).map_err(|e| e.to_string())?;
    same(&r.mirror_map[0], &series(&Q01, 5, X7_MAP_Q), "Q(q)")?;
    same(&r.mirror_map[1], &series(&Q01, 5, X7_MAP_T), "t(q)")?;
    for i in 0..2 {
        let back = substitute(&r.mirror_map[i], &r.inverse).map_err(|e| e.to_string())?;
        ensure(back == Series::scalar_variable(back.vars().clone(), 5, i), || format!("round trip {i}"))?;
    }
    within(t, Duration::from_secs(5))
}

fn c3() -> Check {
    let t = Instant::now();
    let r = run(&model(&X7), 12).map_err(|e| e.to_string())?;
    table(&r.f, X7_TABLE)?;
    ensure(r.f.invariant(6, &[0]) == q("1533417713597/48600"), || "N(6,0)".into())?;
    within(t, Duration::from_secs(60))
}

fn c4() -> Check {
    let t = Instant::now();
    let r = run(&model(&X44), 9).map_err(|e| e.to_string())?;
    let f = r.f.series.with_vars(var_names(&Q_T)).map_err(|e| e.to_string())?;
    same(&f, &series(&Q_T, 9, X44_F), "F")?;
    let r = run(&model(&X44), 12).map_err(|e| e.to_string())?;
    table(&r.f, X44_TABLE)?;
    within(t, Duration::from_secs(300))
}

fn c5() -> Check {
    let t = Instant::now();
    let r = run(&model(&X17), 7).map_err(|e| e.to_string())?;
    let f = r.f.series.with_vars(var_names(&X17_VARS)).map_err(|e| e.to_string())?;
    same(&f, &series(&X17_VARS, 7, X17_F), "F")?;
    within(t, Duration::from_secs(1800))
}

fn c6() -> Check {
    let t = Instant::now();
    let r = run(&model(&X24), 5).map_err(|e| e.to_string())?;
    let f = r.f.series.with_vars(var_names(&X24_VARS)).map_err(|e| e.to_string())?;
    same(&f, &series(&X24_VARS, 5, X24_F), "F")?;
    within(t, Duration::from_secs(1800))
}

fn c7() -> Check {
    let slice = |s: &Series| {
        Series::from_scalar_terms(
            var_names(&Q_T),
            6,
            s.terms().filter(|(m, _)| m.get(0) == 0 && m.degree() <= 6).map(|(m, c)| (m.clone(), c.clone())),
        )
        .unwrap()
    };
    let f7 = run(&model(&X7), 6).map_err(|e| e.to_string())?.f.series;
    let f44 = run(&model(&X44), 6).map_err(|e| e.to_string())?.f.series;
    ensure(slice(&f7) == slice(&f44), || format!("{} vs {}", slice(&f7), slice(&f44)))?;
    ensure(!slice(&f7).is_zero(), || "empty degree-zero slice".into())?;

    let f24 = run(&model(&X24), 8).map_err(|e| e.to_string())?.f.series;
    let tv = var_names(&["t"]);
    let tt = Series::scalar_variable(tv.clone(), 8, 0);
    let mut images = vec![Series::zero(tv, 8); 8];
    images[4] = tt.clone();
    images[7] = tt.neg();
    let g = substitute(&f24, &images).map_err(|e| e.to_string())?;
    same(&g, &series(&["t"], 8, &["1/18 t^3", "-1/19440 t^6"]), "X24 restriction")
}

fn c8() -> Check {
    match run(&model(&X24_AMBIENT), 3) {
        Err(Error::NonInvertibleExtension { classes, .. }) => {
            ensure(classes == ["1_1/3[x3=0]"], || format!("named {classes:?}"))
        }
        Err(e) => Err(format!("wrong error: {e}")),
        Ok(_) => Err("ambient extension was accepted".into()),
    }
}

fn c9() -> Check {
    for tg in ALL {
        let m = model(tg);
        let i = assemble_i(&m.space, &m.algebra, &m.git, 1).map_err(|e| e.to_string())?;
        for (a, &phi) in m.phi.iter().enumerate() {
            let got = i.coeff(&MultiIndex::unit(m.m() + 1, a + 1)).cloned();
            ensure(got == Some(m.space.basis_vector(phi)), || format!("{}: dI/dq{} at 0", tg.name, a + 1))?;
        }
        let d = if m.m() > 3 { 4 } else { 6 };
        let r = run(&m, d).map_err(|e| e.to_string())?;
        let vars = r.j.vars().clone();
        ensure(component(&r.j, m.untwisted(0)) == Series::scalar_one(vars.clone(), d), || format!("{}: J z^0 row", tg.name))?;
        for k in m.space.classes_of_degree(2) {
            let want = match m.phi.iter().position(|&p| p == k) {
                Some(a) => Series::scalar_variable(vars.clone(), d, a + 1),
                None => Series::zero(vars.clone(), d),
            };
            ensure(component(&r.j, k) == want, || format!("{}: J z^-1 row", tg.name))?;
        }
        let target = TargetSpec::new(tg.weights, tg.degrees).unwrap();
        let sectors = enumerate_sectors(&target).map_err(|e| e.to_string())?;
        for s in sectors.iter().filter(|s| !s.is_untwisted()) {
            let dual = sectors.iter().find(|x| x.alpha == s.dual_alpha()).ok_or("missing dual sector")?;
            ensure(s.age + dual.age == 3 - s.dimension as i64, || format!("{}: age duality at {}", tg.name, s.label()))?;
            if s.dimension == 0 {
                let strata = special_strata(&target, s).map_err(|e| e.to_string())?;
                let total: Rational = strata.iter().map(|c| c.open_mass.clone()).sum();
                let root = &strata.iter().find(|c| c.lambda.is_empty()).ok_or("no root stratum")?.closure_degree;
                ensure(&total == root, || format!("{}: masses at {}", tg.name, s.label()))?;
            }
        }
        StateSpace::new(&target).map_err(|e| e.to_string())?;
        m.algebra.check_axioms().map_err(|e| e.to_string())?;
    }
    series_properties()
}

fn series_properties() -> Check {
    let names = var_names(&["x", "y", "u"]);
    let d = 5;
    let monos = MultiIndex::all_up_to(3, d);
    let n = monos.len();
    let arb = move |nonconstant: bool| {
        let monos = monos.clone();
        let names = names.clone();
        prop::collection::vec((0..n, -6i64..=6, 1i64..=3), 0..10).prop_map(move |raw| {
            let terms = raw
                .into_iter()
                .filter(|(i, _, _)| !nonconstant || monos[*i].degree() >= 2)
                .map(|(i, a, b)| (monos[i].clone(), Rational::new(a.into(), b.into())));
            Series::from_scalar_terms(names.clone(), d, terms).unwrap()
        })
    };
    let mut runner = TestRunner::new(Config { cases: 32, ..Config::default() });
    let strat = (arb(false), arb(false), arb(false), arb(true), arb(true), arb(true));
    runner
        .run(&strat, |(a, b, c, g0, g1, g2)| {
            prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(a.mul(&b.mul(&c).unwrap()).unwrap(), a.mul(&b).unwrap().mul(&c).unwrap());
            let map: Vec<Series> = [g0, g1, g2]
                .into_iter()
                .enumerate()
                .map(|(i, g)| g.add(&Series::scalar_variable(g.vars().clone(), d, i)).unwrap())
                .collect();
            let out = var_names(&["X", "Y", "U"]);
            let inv = invert_triangular_map(&map, out.clone()).unwrap();
            for (i, g) in map.iter().enumerate() {
                prop_assert_eq!(substitute(g, &inv).unwrap(), Series::scalar_variable(out.clone(), d, i));
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn c10() -> Check {
    let m = model(&QUINTIC);
    let mu = extract_mu(&m, &assemble_i(&m.space, &m.algebra, &m.git, 4).map_err(|e| e.to_string())?);
    for d in 0..=4i64 {
        // brute force: multiply out prod_{k <= 5d} k / (prod_{k <= d} k)^5 one factor at a time
        let mut want = z(1);
        for k in 1..=5 * d {
            want *= z(k);
        }
        for _ in 0..5 {
            for k in 1..=d {
                want /= z(k);
            }
        }
        ensure(mu.i0.get(&[d as u32]) == want, || format!("I0 at q^{d}"))?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("X_7 I-data through degree 5", c1),
        ("X_7 mirror map and inverse", c2),
        ("X_7 7x7 invariant table", c3),
        ("X_{4,4} potential and table", c4),
        ("X_17 potential through degree 7", c5),
        ("X_24 potential through degree 5", c6),
        ("degree-zero cross-checks", c7),
        ("ambient-only X_24 is rejected", c8),
        ("property suites", c9),
        ("quintic hypergeometric coefficients", c10),
    ];
    // the raw handle is not captured by the test harness
    let mut out = std::io::stderr().lock();
    writeln!(out).unwrap();
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(()) => writeln!(out, "PASS criterion {}: {name} ({ms} ms)", i + 1).unwrap(),
            Err(e) => {
                writeln!(out, "FAIL criterion {}: {name} ({ms} ms): {e}", i + 1).unwrap();
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
