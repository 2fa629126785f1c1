mod common;

use common::{descriptor, model, q, ALL, X17, X24, X44, X7};
use num_traits::Zero;
use orbimirror::cohomology::{
    enumerate_sectors, enumerate_special_cycles, pairing_matrix, sector_age, special_strata, ClassKind, Nu,
    PairingNormalization, StateSpace, TargetSpec,
};
use orbimirror::{Error, Rational};
use proptest::prelude::*;

fn target(t: &common::Target) -> TargetSpec {
    TargetSpec::new(t.weights, t.degrees).unwrap()
}

fn alphas(t: &common::Target) -> Vec<Rational> {
    enumerate_sectors(&target(t)).unwrap().into_iter().map(|s| s.alpha).collect()
}

fn floor_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

#[test]
fn validation() {
    assert!(TargetSpec::new(&[1, 1, 1, 1, 3], &[7]).is_ok());
    assert!(TargetSpec::new(&[1, 1, 1, 1, 1, 3], &[4, 4]).is_ok());
    for (w, b) in [
        (vec![1, 1, 1, 1, 3], vec![6]),
        (vec![2, 2, 2, 2, 2], vec![10]),
        (vec![1, 1, 1, 1, 1, 3], vec![8]),
        (vec![], vec![]),
        (vec![1, 1, 1, 1, 0], vec![4]),
    ] {
        assert!(matches!(TargetSpec::new(&w, &b), Err(Error::Validation(_))), "{w:?} {b:?}");
    }
    // the degree-21 equation cannot involve only x0, x2 of weight 6
    let t = TargetSpec::new(&[6, 1, 6, 4, 4], &[21]).unwrap();
    assert!(matches!(enumerate_sectors(&t), Err(Error::Validation(_))));
}

#[test]
fn sector_lists() {
    assert_eq!(alphas(&X7), vec![q("0"), q("1/3"), q("2/3")]);
    let mut want17: Vec<Rational> = vec![q("0"), q("1/2"), q("1/3"), q("2/3")];
    want17.extend((1..7).map(|k| Rational::new(k.into(), 7.into())));
    want17.sort();
    assert_eq!(alphas(&X17), want17);
    let a24 = alphas(&X24);
    for s in ["1/4", "1/2", "3/4", "1/3", "2/3"] {
        assert!(a24.contains(&q(s)), "{s}");
    }
    for k in 1..9 {
        assert!(a24.contains(&Rational::new(k.into(), 9.into())));
    }
    assert!(!a24.contains(&q("1/6")));
    // 3/9 and 6/9 coincide with 1/3 and 2/3
    assert_eq!(a24.len(), 1 + 3 + 8);
}

#[test]
fn ages() {
    let t = target(&X7);
    assert_eq!(sector_age(&t, &q("1/3")), 1);
    assert_eq!(sector_age(&t, &q("2/3")), 2);
    assert_eq!(sector_age(&t, &q("0")), 0);
    // independent evaluation of sum floor(a b) - sum floor(a w) with a = k/r
    for tg in ALL {
        let t = target(tg);
        for s in enumerate_sectors(&t).unwrap() {
            let k: i64 = s.alpha.numer().try_into().unwrap();
            let r: i64 = s.alpha.denom().try_into().unwrap();
            let want: i64 = tg.degrees.iter().map(|&b| floor_div(k * b, r)).sum::<i64>()
                - tg.weights.iter().map(|&w| floor_div(k * w, r)).sum::<i64>();
            assert_eq!(s.age, want);
        }
    }
}

#[test]
fn age_duality_and_dimensions() {
    for tg in ALL {
        let sectors = enumerate_sectors(&target(tg)).unwrap();
        for s in &sectors {
            assert_ne!(s.dimension, 2);
            if s.is_untwisted() {
                assert_eq!(s.dimension, 3);
                continue;
            }
            let d = sectors.iter().find(|t| t.alpha == s.dual_alpha()).expect("dual sector");
            assert_eq!(s.age + d.age, 3 - s.dimension as i64, "{} {}", tg.name, s.label());
            assert_eq!(s.dimension, d.dimension);
        }
    }
}

#[test]
fn special_cycle_masses() {
    let t = target(&X7);
    let s = enumerate_sectors(&t).unwrap().into_iter().find(|s| s.alpha == q("1/3")).unwrap();
    let c = enumerate_special_cycles(&t, &s).unwrap();
    assert_eq!(c.len(), 1);
    assert!(c[0].lambda.is_empty());
    assert_eq!(c[0].open_mass, q("1/3"));

    let t = target(&X24);
    let s = enumerate_sectors(&t).unwrap().into_iter().find(|s| s.alpha == q("1/3")).unwrap();
    let c = enumerate_special_cycles(&t, &s).unwrap();
    let lambdas: Vec<Vec<usize>> = c.iter().map(|c| c.lambda.clone()).collect();
    assert_eq!(lambdas, vec![vec![], vec![3]]);
    // closure of x3 = 0 is P(9): 1/9; whole sector 24/(6*9) = 4/9
    assert_eq!(c[1].closure_degree, q("1/9"));
    assert_eq!(c[1].open_mass, q("1/9"));
    assert_eq!(c[1].gamma, vec![0]);
    assert_eq!(c[0].closure_degree, Rational::new(24.into(), 54.into()));
    assert_eq!(c[0].open_mass, q("4/9") - q("1/9"));
}

#[test]
fn mass_consistency_on_all_point_sectors() {
    for tg in ALL {
        let t = target(tg);
        for s in enumerate_sectors(&t).unwrap() {
            if s.dimension != 0 {
                assert!(matches!(special_strata(&t, &s), Err(Error::Domain(_))));
                continue;
            }
            let all = special_strata(&t, &s).unwrap();
            let total: Rational = all.iter().map(|c| c.open_mass.clone()).sum();
            let root = all.iter().find(|c| c.lambda.is_empty()).unwrap();
            assert_eq!(total, root.closure_degree, "{} {}", tg.name, s.label());
            for c in &all {
                assert_eq!(c.lambda.len(), c.gamma.len());
                assert!(!c.open_mass.is_zero() || !enumerate_special_cycles(&t, &s).unwrap().contains(c));
            }
        }
    }
}

#[test]
fn admissible_bases() {
    let m7 = model(&X7);
    assert_eq!(m7.space.labels(), ["1", "H", "H^2", "H^3", "1_1/3", "1_2/3"]);
    assert_eq!(m7.phi_labels(), ["1_1/3"]);
    assert_eq!(model(&X44).phi_labels(), ["1_1/3"]);

    let s17 = StateSpace::new(&target(&X17)).unwrap();
    let auto: Vec<String> = s17.degree2_twisted().iter().map(|&k| s17.classes[k].label()).collect();
    assert_eq!(auto, ["1_1/7", "1_1/3", "1_1/2", "1_4/7", "1_2/3", "1_5/7"]);

    let s24 = StateSpace::new(&target(&X24)).unwrap();
    let auto: Vec<String> = s24.degree2_twisted().iter().map(|&k| s24.classes[k].label()).collect();
    assert_eq!(auto, ["1_1/9", "1_1/4", "1_1/3", "1_1/3[x3=0]", "1_1/2", "1_5/9", "1_7/9"]);
    let g = s24.find(&descriptor("1/3:3")).unwrap();
    assert_eq!(s24.classes[g].kind, ClassKind::SpecialCycle(q("1/3"), vec![3]));
    // P(4,4,6) sector at 1/2 is a curve of age 1
    let half = s24.sector_index(&q("1/2")).unwrap();
    assert_eq!(s24.sectors[half].dimension, 1);
    assert_eq!(s24.sectors[half].age, 1);
    assert!(s24.power_class(half, 1).is_some());

    for tg in ALL {
        let s = StateSpace::new(&target(tg)).unwrap();
        for c in &s.classes {
            let sec = &s.sectors[c.sector];
            let want = match c.kind {
                ClassKind::UntwistedPower(p) => 2 * p as i64,
                ClassKind::SectorFundamental(_) | ClassKind::SpecialCycle(..) => 2 * sec.age,
                ClassKind::SectorHyperplane(_) => 2 * sec.age + 2,
            };
            assert_eq!(c.cr_degree, want);
        }
    }
}

#[test]
fn pairing_values() {
    let m7 = model(&X7);
    let p = &m7.pairing;
    let (a, b) = (m7.space.find(&descriptor("1/3")).unwrap(), m7.space.find(&descriptor("2/3")).unwrap());
    assert_eq!(p.get(a, b), &q("1/3"));
    assert_eq!(p.get(1, 2), &q("7/3"));
    assert_eq!(p.get(0, 3), &q("7/3"));
    assert_eq!(p.get(1, 1), &Rational::zero());

    let s24 = StateSpace::new(&target(&X24)).unwrap();
    let p24 = pairing_matrix(&s24, PairingNormalization::default()).unwrap();
    let one13 = s24.find(&descriptor("1/3")).unwrap();
    let g13 = s24.find(&descriptor("1/3:3")).unwrap();
    let one23 = s24.find(&descriptor("2/3")).unwrap();
    let g23 = s24.find(&descriptor("2/3:3")).unwrap();
    assert_eq!(p24.get(g13, g23), &q("1/9"));
    assert_eq!(p24.get(one13, one23), &(q("1/9") + q("1/3")));
    assert_eq!(p24.get(one13, g23), &q("1/9"));

    // curve sector P(2,2) of the degree-17 target: int over the inertia component
    let s17 = StateSpace::new(&target(&X17)).unwrap();
    let half = s17.sector_index(&q("1/2")).unwrap();
    let (f, h) = (s17.power_class(half, 0).unwrap(), s17.power_class(half, 1).unwrap());
    let inertia = pairing_matrix(&s17, PairingNormalization::default()).unwrap();
    assert_eq!(inertia.get(f, h), &q("1/4"));
    let order = pairing_matrix(&s17, PairingNormalization { point_sectors: Nu::One, curve_sectors: Nu::Order }).unwrap();
    assert_eq!(order.get(f, h), &q("1/2"));
}

#[test]
fn pairing_structure() {
    for tg in ALL {
        let m = model(tg);
        let p = &m.pairing;
        assert!(p.is_symmetric());
        assert_eq!(p.rank(), m.space.dim());
        for (i, ci) in m.space.classes.iter().enumerate() {
            for (j, cj) in m.space.classes.iter().enumerate() {
                if !p.get(i, j).is_zero() {
                    assert_eq!(m.space.dual_sector(ci.sector), cj.sector);
                    assert_eq!(ci.cr_degree + cj.cr_degree, 6);
                }
            }
        }
        m.algebra.check_axioms().unwrap();
    }
}

proptest! {
    #[test]
    fn random_targets_have_consistent_sectors(ws in prop::collection::vec(1i64..=6, 5)) {
        let sum: i64 = ws.iter().sum();
        if let Ok(t) = TargetSpec::new(&ws, &[sum]) {
            if let Ok(sectors) = enumerate_sectors(&t) {
                for s in &sectors {
                    if s.is_untwisted() { continue; }
                    let d = sectors.iter().find(|x| x.alpha == s.dual_alpha());
                    prop_assert!(d.is_some());
                    prop_assert_eq!(s.age + d.unwrap().age, 3 - s.dimension as i64);
                    if s.dimension == 0 {
                        let all = special_strata(&t, s).unwrap();
                        let total: Rational = all.iter().map(|c| c.open_mass.clone()).sum();
                        let root = &all.iter().find(|c| c.lambda.is_empty()).unwrap().closure_degree;
                        prop_assert_eq!(&total, root);
                    }
                }
            }
        }
    }
}
