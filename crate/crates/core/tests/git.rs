mod common;

use common::{model, q, X17, X24, X24_AMBIENT, X44, X7};
use orbimirror::git::{check_shape, enumerate_curve_classes, verify_calabi_yau, CurveClass};
use orbimirror::{Error, MultiIndex};
use proptest::prelude::*;

#[test]
fn x7_matrix() {
    let g = model(&X7).git;
    assert_eq!(g.a, vec![vec![1, 1, 1, 1, 3, 0], vec![0, 0, 0, 0, 1, 1]]);
    assert_eq!(g.xi, vec![vec![7, 2]]);
    assert_eq!(g.w, 3);
    assert!(check_shape(&g));
}

#[test]
fn x44_matrix() {
    let g = model(&X44).git;
    assert_eq!(g.a, vec![vec![1, 1, 1, 1, 1, 3, 0], vec![0, 0, 0, 0, 0, 1, 1]]);
    assert_eq!(g.xi, vec![vec![4, 1], vec![4, 1]]);
}

fn with_identity(rows: &[[i64; 5]]) -> Vec<Vec<i64>> {
    let m = rows.len() - 1;
    rows.iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.to_vec();
            v.extend((0..m).map(|k| i64::from(k + 1 == i)));
            v
        })
        .collect()
}

#[test]
fn x17_matrix() {
    let g = model(&X17).git;
    let want = with_identity(&[
        [2, 2, 3, 3, 7],
        [0, 0, 0, 0, 1],
        [1, 1, 1, 1, 4],
        [1, 1, 2, 2, 5],
        [1, 1, 1, 1, 3],
        [0, 0, 1, 1, 2],
        [1, 1, 2, 2, 4],
    ]);
    assert_eq!(g.a, want);
    assert_eq!(g.xi, vec![vec![17, 2, 9, 12, 8, 5, 11]]);
    assert!(check_shape(&g));
}

#[test]
fn x24_matrices() {
    let rows = [
        [1, 4, 4, 6, 9],
        [0, 1, 1, 1, 2],
        [0, 2, 2, 3, 4],
        [0, 0, 0, 0, 1],
        [0, 1, 1, 2, 3],
        [0, 2, 2, 3, 5],
        [0, 3, 3, 4, 7],
        [0, 1, 1, 1, 3],
    ];
    let g = model(&X24).git;
    assert_eq!(g.a, with_identity(&rows));
    assert_eq!(g.xi, vec![vec![24, 6, 12, 2, 8, 13, 18, 7]]);
    let amb = model(&X24_AMBIENT).git;
    assert_eq!(amb.a, with_identity(&rows[..7]));
    assert_eq!(amb.xi, vec![vec![24, 6, 12, 2, 8, 13, 18]]);

    // beta = (-1/3, 0, 0, 3, 0, 0, 0) pairs to -2 with the column of x3
    let beta = CurveClass::from_lattice(&amb, MultiIndex::from(vec![0, 0, 0, 3, 0, 0, 0]));
    assert_eq!(beta.e[0], q("-1/3"));
    assert_eq!(amb.chi(3), vec![6, 1, 3, 0, 2, 3, 4]);
    assert_eq!(beta.chi_pairing(&amb, 3), q("-2"));
    assert_eq!(beta.target_alpha(), q("1/3"));
}

#[test]
fn calabi_yau_check_fails_on_tampered_degrees() {
    let mut g = model(&X7).git;
    g.xi[0][1] = 1;
    match verify_calabi_yau(&g) {
        Err(Error::CalabiYau { row, columns, degrees }) => assert_eq!((row, columns, degrees), (1, 2, 1)),
        other => panic!("{other:?}"),
    }
    let mut g = model(&X7).git;
    g.a[1][0] = 3;
    assert!(!check_shape(&g));
}

#[test]
fn x7_low_degree_classes() {
    let m = model(&X7);
    let classes = enumerate_curve_classes(&m.space, &m.git, 1);
    let got: Vec<(Vec<u32>, Vec<String>)> = classes
        .iter()
        .map(|c| (c.d.exponents().to_vec(), c.e.iter().map(|x| x.to_string()).collect()))
        .collect();
    let want = vec![
        (vec![0, 0], vec!["0".to_string(), "0".to_string()]),
        (vec![1, 0], vec!["1/3".to_string(), "0".to_string()]),
        (vec![0, 1], vec!["-1/3".to_string(), "1".to_string()]),
    ];
    for w in &want {
        assert!(got.contains(w), "{w:?} missing from {got:?}");
    }
    assert_eq!(got.len(), 3);
    // the q1 term lands in the 1/3 sector
    assert_eq!(classes.iter().find(|c| c.d.get(1) == 1).unwrap().target_alpha(), q("1/3"));
}

proptest! {
    #[test]
    fn lattice_round_trip(d in prop::collection::vec(0u32..12, 7)) {
        let g = model(&X17).git;
        let c = CurveClass::from_lattice(&g, MultiIndex::from(d.clone()));
        prop_assert_eq!(c.lattice_d0(&g), common::z(d[0] as i64));
        // e . chi_c for an extension column is e_c itself
        for i in 0..6 {
            prop_assert_eq!(c.chi_pairing(&g, 5 + i), common::z(d[i + 1] as i64));
        }
        // the CY row identity: sum of chi pairings equals sum of xi pairings
        let lhs: orbimirror::Rational = (0..g.ncols()).map(|k| c.chi_pairing(&g, k)).sum();
        prop_assert_eq!(lhs, c.xi_pairing(&g, 0));
    }
}
