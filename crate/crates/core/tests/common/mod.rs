#![allow(dead_code)]

use num_bigint::BigInt;
use orbimirror::cohomology::{ClassDescriptor, PairingNormalization};
use orbimirror::git::Extension;
use orbimirror::rational::parse;
use orbimirror::series::var_names;
use orbimirror::{Model, MultiIndex, Rational, Series};

pub struct Target {
    pub name: &'static str,
    pub weights: &'static [i64],
    pub degrees: &'static [i64],
    /// `alpha` or `alpha:i.j` for a stratum; empty means automatic.
    pub extension: &'static [&'static str],
}

pub const X7: Target = Target { name: "X7", weights: &[1, 1, 1, 1, 3], degrees: &[7], extension: &[] };
pub const X44: Target = Target { name: "X44", weights: &[1, 1, 1, 1, 1, 3], degrees: &[4, 4], extension: &[] };
pub const X17: Target = Target {
    name: "X17",
    weights: &[2, 2, 3, 3, 7],
    degrees: &[17],
    extension: &["1/7", "4/7", "5/7", "1/2", "1/3", "2/3"],
};
pub const X24: Target = Target {
    name: "X24",
    weights: &[1, 4, 4, 6, 9],
    degrees: &[24],
    extension: &["1/4", "1/2", "1/9", "1/3", "5/9", "7/9", "1/3:3"],
};
pub const X24_AMBIENT: Target = Target {
    name: "X24 ambient",
    weights: &[1, 4, 4, 6, 9],
    degrees: &[24],
    extension: &["1/4", "1/2", "1/9", "1/3", "5/9", "7/9"],
};
pub const QUINTIC: Target = Target { name: "quintic", weights: &[1, 1, 1, 1, 1], degrees: &[5], extension: &[] };

pub const ALL: [&Target; 5] = [&X7, &X44, &X17, &X24, &QUINTIC];

pub fn descriptor(s: &str) -> ClassDescriptor {
    let (a, l) = s.split_once(':').unwrap_or((s, ""));
    let lambda = l.split('.').filter(|x| !x.is_empty()).map(|x| x.parse().unwrap()).collect();
    ClassDescriptor { alpha: q(a), lambda }
}

pub fn extension(t: &Target) -> Extension {
    if t.extension.is_empty() {
        Extension::Auto
    } else {
        Extension::Explicit(t.extension.iter().map(|s| descriptor(s)).collect())
    }
}

pub fn model(t: &Target) -> Model {
    Model::new(t.weights, t.degrees, &extension(t), PairingNormalization::default()).unwrap()
}

pub fn q(s: &str) -> Rational {
    parse(s).unwrap_or_else(|| panic!("bad rational {s}"))
}

pub fn z(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse `"c v1^a v2 ..."` terms into a series over `vars`.
pub fn series(vars: &[&str], truncation: u32, terms: &[&str]) -> Series {
    let parsed = terms.iter().map(|t| term(vars, t));
    Series::from_scalar_terms(var_names(vars), truncation, parsed).unwrap()
}

pub fn term(vars: &[&str], t: &str) -> (MultiIndex, Rational) {
    let mut it = t.split_whitespace();
    let c = q(it.next().unwrap());
    let mut e = vec![0u32; vars.len()];
    for f in it {
        let (v, p) = f.split_once('^').unwrap_or((f, "1"));
        let i = vars.iter().position(|x| *x == v).unwrap_or_else(|| panic!("unknown variable {v}"));
        e[i] += p.parse::<u32>().unwrap();
    }
    (MultiIndex::from(e), c)
}

/// Terms of `s` that differ from `want`, as readable lines.
pub fn mismatches(s: &Series, want: &Series) -> Vec<String> {
    let mut out = Vec::new();
    for (m, c) in want.terms() {
        let got = s.get(m.exponents());
        if &got != c {
            out.push(format!("{:?}: got {got}, want {c}", m.exponents()));
        }
    }
    for (m, c) in s.terms() {
        if m.degree() <= want.truncation() && want.coeff(m).is_none() {
            out.push(format!("{:?}: got {c}, want 0", m.exponents()));
        }
    }
    out
}

pub const Q_T: [&str; 2] = ["Q", "t"];
pub const Q01: [&str; 2] = ["q0", "q1"];

pub const X7_I0: &[&str] = &["1", "2 q0 q1", "840 q0^3", "6 q0^2 q1^2", "15120 q0^4 q1"];
pub const X7_I1H: &[&str] = &["15 q0 q1", "7266 q0^3", "121/2 q0^2 q1^2", "144438 q0^4 q1"];
pub const X7_I1PHI: &[&str] = &[
    "1 q1",
    "385/3 q0^2",
    "5/9 q0 q1^2",
    "130900/81 q0^3 q1",
    "-1/648 q1^4",
    "5084951872/6075 q0^5",
    "220/243 q0^2 q1^3",
];
pub const X7_MAP_Q: &[&str] = &["1 q0", "5 q0^2 q1", "2422 q0^4", "68/3 q0^3 q1^2"];
pub const X7_MAP_T: &[&str] = &[
    "1 q1",
    "385/3 q0^2",
    "-13/9 q0 q1^2",
    "42070/81 q0^3 q1",
    "-1/648 q1^4",
    "4430066872/6075 q0^5",
    "-536/243 q0^2 q1^3",
];
pub const X7_COEFF_H2: &[&str] = &["4 Q t", "19873/3 Q^3", "-47/9 Q^2 t^2", "617288/81 Q^4 t", "1/162 Q t^4"];
pub const X7_COEFF_23: &[&str] = &[
    "84 Q",
    "1/2 t^2",
    "-329/3 Q^2 t",
    "1080254/27 Q^4",
    "14/27 Q t^3",
    "3094/27 Q^3 t^2",
    "-1/1080 t^5",
];
pub const X7_F: &[&str] =
    &["28 Q t", "139111/9 Q^3", "1/18 t^3", "-329/18 Q^2 t^2", "1080254/81 Q^4 t", "7/162 Q t^4"];

/// `(d0, d1, invariant)`; every other cell of the 7x7 grid is zero.
pub const X7_TABLE: &[(u32, u32, &str)] = &[
    (0, 3, "1/3"),
    (0, 6, "-1/27"),
    (1, 1, "28"),
    (1, 4, "28/27"),
    (2, 2, "-329/9"),
    (2, 5, "707/243"),
    (3, 0, "139111/9"),
    (3, 3, "6188/81"),
    (3, 6, "10052/243"),
    (4, 1, "1080254/81"),
    (4, 4, "534751/4374"),
    (5, 2, "-726355322/18225"),
    (5, 5, "1672112666/492075"),
    (6, 0, "1533417713597/48600"),
    (6, 3, "5386105627/36450"),
    (6, 6, "12986899639/328050"),
];

pub const X44_F: &[&str] = &[
    "16 Q t",
    "20800/9 Q^3",
    "1/18 t^3",
    "-46/9 Q^2 t^2",
    "46490/81 Q^4 t",
    "2/81 Q t^4",
    "2329313056/6075 Q^6",
    "304/243 Q^3 t^3",
    "-1/19440 t^6",
    "-9256192/18225 Q^5 t^2",
    "77/7290 Q^2 t^5",
    "1704994246016/8037225 Q^7 t",
    "1391/13122 Q^4 t^4",
    "-29/229635 Q t^7",
    "1690784332712/10935 Q^9",
    "17945392/54675 Q^6 t^3",
    "122/10935 Q^3 t^6",
    "1/3265920 t^9",
];

pub const X44_TABLE: &[(u32, u32, &str)] = &[
    (0, 3, "1/3"),
    (0, 6, "-1/27"),
    (1, 1, "16"),
    // printed as 28/27, which disagrees with 2/81 Q t^4 in the potential
    (1, 4, "16/27"),
    (2, 2, "-92/9"),
    (2, 5, "308/243"),
    (3, 0, "20800/9"),
    (3, 3, "608/81"),
    (3, 6, "1952/243"),
    (4, 1, "46490/81"),
    (4, 4, "5564/2187"),
    (5, 2, "-18512384/18225"),
    (5, 5, "19492352/492075"),
    (6, 0, "2329313056/6075"),
    (6, 3, "35890784/18225"),
    (6, 6, "83823488/164025"),
];

/// Degree-zero part, shared by both targets with a single `B mu_3` point.
pub const C3_MU3: &[&str] = &[
    "1/18 t^3",
    "-1/19440 t^6",
    "1/3265920 t^9",
    "-1093/349192166400 t^12",
    "119401/2859883842816000 t^15",
    "-27428707/42005973883281408000 t^18",
];

pub const X17_VARS: [&str; 7] = ["Q", "t1", "t2", "t3", "t4", "t5", "t6"];
pub const X17_F: &[&str] = &[
    "1/14 t1^2 t3",
    "1/14 t2 t3^2",
    "-13/54 t5^3",
    "7/54 t6^3",
    "1 Q^2 t3 t5",
    "-1/147 t1^3 t2",
    "-1/98 t1 t2^2 t3",
    "1/48 t4^4",
    "1/18 t5^2 t6^2",
    "5 Q^3 t2 t4",
    "1/7 Q^2 t1 t2 t5",
    "1/6 Q^2 t3 t6^2",
    "1/686 t1^2 t2^3",
    "3/2744 t1 t3^4",
    "1/8232 t2^4 t3",
    "-1/324 t5^4 t6",
    "-1/324 t5 t6^4",
    "1/42 Q^2 t1 t2 t6^2",
    "1/294 Q^2 t2^3 t5",
    "-1/18 Q^2 t3 t5^2 t6",
    "-43/115248 t1^4 t3^2",
    "-31/28812 t1^2 t2 t3^3",
    "-11/144060 t1 t2^5",
    "-5/28812 t2^2 t3^4",
    "1/2880 t4^6",
    "1/9720 t5^6",
    "1/486 t5^3 t6^3",
    "1/9720 t6^6",
    "85/6 Q^6 t1",
    "-1/4 Q^4 t3^2 t6",
    "-5/98 Q^3 t1 t3^2 t4",
    "-5/24 Q^3 t2 t4^3",
    "1/196 Q^2 t1^2 t3^2 t5",
    "-1/126 Q^2 t1 t2 t5^2 t6",
    "1/1764 Q^2 t2^3 t6^2",
    "5/2058 Q^2 t2 t3^3 t5",
    "1/648 Q^2 t3 t5^4",
    "-1/162 Q^2 t3 t5 t6^3",
    "37/6050520 t1^7",
    "311/2016840 t1^5 t2 t3",
    "69/134456 t1^3 t2^2 t3^2",
    "3/16807 t1 t2^3 t3^3",
    "11/6050520 t2^7",
    "2/252105 t3^7",
    "-1/3240 t5^5 t6^2",
    "-1/3240 t5^2 t6^5",
];

pub const X24_VARS: [&str; 8] = ["Q", "t1", "t2", "t3", "t4", "t5", "t6", "t7"];
pub const X24_F: &[&str] = &[
    "6 Q t1 t6",
    "3/4 t1^2 t2",
    "1/18 t3^2 t6",
    "1/9 t3 t4 t5",
    "1/9 t3 t5 t7",
    "2/27 t4^3",
    "1/18 t4^2 t7",
    "1/18 t4 t7^2",
    "1/54 t7^3",
    "3 Q^2 t2 t5",
    "-1/32 t1^4",
    "-5/96 t2^4",
    "-1/162 t3 t4 t6^2",
    "-1/162 t3 t5^2 t6",
    "-1/162 t3 t6^2 t7",
    "-1/81 t4^2 t5 t6",
    "-1/162 t4 t5^3",
    "-2/81 t4 t5 t6 t7",
    "-1/162 t5^3 t7",
    "-1/81 t5 t6 t7^2",
    "45/2 Q^4 t3",
    "1/2 Q^2 t1^2 t5",
    "1/12 Q^2 t2 t6^2",
    "-3/16 Q t1 t2^2 t6",
    "-1/27 Q t1 t3^2 t5",
    "-1/27 Q t1 t3 t4^2",
    "-2/27 Q t1 t3 t4 t7",
    "-1/27 Q t1 t3 t7^2",
    "1/64 t1^2 t2^3",
    "13/17496 t3^4 t5",
    "5/2916 t3^3 t4^2",
    "5/1458 t3^3 t4 t7",
    "5/2916 t3^3 t7^2",
    "1/4374 t3 t5 t6^3",
    "1/1458 t4^2 t6^3",
    "7/2916 t4 t5^2 t6^2",
    "1/729 t4 t6^3 t7",
    "13/17496 t5^4 t6",
    "7/2916 t5^2 t6^2 t7",
    "1/1458 t6^3 t7^2",
];
