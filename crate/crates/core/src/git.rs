//! Extended GIT presentation: one extra torus factor per degree-2 twisted class.

use num_traits::{Signed, Zero};

use crate::cohomology::{vanishing_equations, ClassDescriptor, StateSpace};
use crate::error::{Error, Result};
use crate::rational::{floor_i64, format as fmt_rat, frac, int, rat};
use crate::series::MultiIndex;
use crate::Rational;

/// Choice of the degree-2 classes that receive a coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extension {
    /// Every degree-2 twisted class in canonical order.
    Auto,
    Explicit(Vec<ClassDescriptor>),
}

/// A degree-2 class used to extend the presentation.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionClass {
    /// Index into the admissible basis.
    pub class: usize,
    pub alpha: Rational,
    pub lambda: Vec<usize>,
    /// Equations vanishing identically on the stratum.
    pub gamma: Vec<usize>,
    pub label: String,
}

/// Resolve an extension request against the admissible basis.
pub fn resolve_extension(space: &StateSpace, ext: &Extension) -> Result<Vec<usize>> {
    let degree2 = space.degree2_twisted();
    let chosen = match ext {
        Extension::Auto => degree2,
        Extension::Explicit(list) => {
            let mut out = Vec::with_capacity(list.len());
            for d in list {
                let k = space.find(d).ok_or_else(|| {
                    Error::Validation(format!(
                        "extension class at alpha = {} with Lambda = {:?} is not an admissible basis class",
                        fmt_rat(&d.alpha),
                        d.lambda
                    ))
                })?;
                if !degree2.contains(&k) {
                    return Err(Error::Validation(format!(
                        "extension class {} is not a degree-2 twisted class",
                        space.classes[k].label()
                    )));
                }
                if out.contains(&k) {
                    return Err(Error::Validation(format!(
                        "extension class {} listed twice",
                        space.classes[k].label()
                    )));
                }
                out.push(k);
            }
            out
        }
    };
    Ok(chosen)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedGit {
    /// `(m+1) x (n+1+m)` weight matrix.
    pub a: Vec<Vec<i64>>,
    /// `xi[j]` is the multi-degree of equation `j`, length `m+1`.
    pub xi: Vec<Vec<i64>>,
    pub extension: Vec<ExtensionClass>,
    /// `lcm(w_0..w_n)`.
    pub w: i64,
    /// `n + 1`.
    pub ncoords: usize,
}

impl ExtendedGit {
    pub fn m(&self) -> usize {
        self.extension.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncoords + self.m()
    }

    /// Column `chi_c`.
    pub fn chi(&self, c: usize) -> Vec<i64> {
        self.a.iter().map(|row| row[c]).collect()
    }

    pub fn alphas(&self) -> Vec<Rational> {
        self.extension.iter().map(|e| e.alpha.clone()).collect()
    }
}

/// Weight matrix `A`: first row the weights, one row per extension class with
/// `a_ij = floor(alpha w_j) - [j in Lambda]` followed by an identity block.
pub fn build_weight_matrix(space: &StateSpace, phi: &[usize]) -> Result<ExtendedGit> {
    let target = &space.target;
    let n1 = target.ncoords();
    let m = phi.len();
    let mut extension = Vec::with_capacity(m);
    for &k in phi {
        let c = &space.classes[k];
        let sector = &space.sectors[c.sector];
        if sector.is_untwisted() {
            return Err(Error::Validation(format!("{} is not a twisted class", c.label())));
        }
        let gamma = if sector.dimension == 0 { vanishing_equations(target, sector, &c.lambda) } else { Vec::new() };
        extension.push(ExtensionClass {
            class: k,
            alpha: sector.alpha.clone(),
            lambda: c.lambda.clone(),
            gamma,
            label: c.label(),
        });
    }
    let mut a = Vec::with_capacity(m + 1);
    let mut row0: Vec<i64> = target.weights().to_vec();
    row0.extend(std::iter::repeat(0).take(m));
    a.push(row0);
    for (i, e) in extension.iter().enumerate() {
        let mut row: Vec<i64> = (0..n1)
            .map(|j| floor_i64(&(&e.alpha * int(target.weights()[j]))) - i64::from(e.lambda.contains(&j)))
            .collect();
        row.extend((0..m).map(|k| i64::from(k == i)));
        a.push(row);
    }
    let xi = build_multidegrees(space, &extension);
    Ok(ExtendedGit { a, xi, extension, w: target.lcm(), ncoords: n1 })
}

/// `xi_j = (b_j, floor(alpha_1 b_j) - [j in Gamma_1], ...)`.
pub fn build_multidegrees(space: &StateSpace, extension: &[ExtensionClass]) -> Vec<Vec<i64>> {
    space
        .target
        .degrees()
        .iter()
        .enumerate()
        .map(|(j, &b)| {
            let mut v = vec![b];
            for e in extension {
                v.push(floor_i64(&(&e.alpha * int(b))) - i64::from(e.gamma.contains(&j)));
            }
            v
        })
        .collect()
}

/// Column sums of `A` against the summed multi-degrees, row by row.
pub fn verify_calabi_yau(git: &ExtendedGit) -> Result<()> {
    for (r, row) in git.a.iter().enumerate() {
        let columns: i64 = row.iter().sum();
        let degrees: i64 = git.xi.iter().map(|x| x[r]).sum();
        if columns != degrees {
            return Err(Error::CalabiYau { row: r, columns, degrees });
        }
    }
    Ok(())
}

/// Lattice point `d = (d_0..d_m)` with its curve class `e`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveClass {
    pub d: MultiIndex,
    pub e: Vec<Rational>,
}

impl CurveClass {
    /// `e_0 = d_0 / w - sum alpha_i d_i`, `e_i = d_i`.
    pub fn from_lattice(git: &ExtendedGit, d: MultiIndex) -> Self {
        let mut e0 = rat(d.get(0) as i64, git.w);
        for (i, ex) in git.extension.iter().enumerate() {
            e0 -= &ex.alpha * int(d.get(i + 1) as i64);
        }
        let mut e = vec![e0];
        e.extend((1..d.len()).map(|i| int(d.get(i) as i64)));
        CurveClass { d, e }
    }

    /// Inverse of the lattice substitution: `d_0 = w (e_0 + sum alpha_i e_i)`.
    pub fn lattice_d0(&self, git: &ExtendedGit) -> Rational {
        let mut s = self.e[0].clone();
        for (i, ex) in git.extension.iter().enumerate() {
            s += &ex.alpha * &self.e[i + 1];
        }
        s * int(git.w)
    }

    pub fn chi_pairing(&self, git: &ExtendedGit, c: usize) -> Rational {
        let mut s = Rational::zero();
        for (a, row) in git.a.iter().enumerate() {
            if row[c] != 0 {
                s += &self.e[a] * int(row[c]);
            }
        }
        s
    }

    pub fn xi_pairing(&self, git: &ExtendedGit, j: usize) -> Rational {
        let mut s = Rational::zero();
        for (a, x) in git.xi[j].iter().enumerate() {
            if *x != 0 {
                s += &self.e[a] * int(*x);
            }
        }
        s
    }

    /// `<-e_0>`.
    pub fn target_alpha(&self) -> Rational {
        frac(&-self.e[0].clone())
    }
}

/// All lattice points of total degree at most `max_degree` whose target sector is nonempty.
pub fn enumerate_curve_classes(space: &StateSpace, git: &ExtendedGit, max_degree: u32) -> Vec<CurveClass> {
    MultiIndex::all_up_to(git.m() + 1, max_degree)
        .into_iter()
        .map(|d| CurveClass::from_lattice(git, d))
        .filter(|c| space.sector_index(&c.target_alpha()).is_some())
        .collect()
}

/// Whether every twisted row satisfies `a_ij < w_j` and the identity block is intact.
pub fn check_shape(git: &ExtendedGit) -> bool {
    let m = git.m();
    git.a.iter().enumerate().skip(1).all(|(i, row)| {
        (0..git.ncoords).all(|j| row[j] < git.a[0][j])
            && (0..m).all(|k| row[git.ncoords + k] == i64::from(k + 1 == i))
    }) && git.a[0][git.ncoords..].iter().all(|x| *x == 0)
        && git.a[0][..git.ncoords].iter().all(|x| x.is_positive())
}
