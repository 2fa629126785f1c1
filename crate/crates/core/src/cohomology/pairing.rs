use num_traits::{One, Zero};

use super::basis::StateSpace;
use crate::algebra::CoefficientAlgebra;
use crate::error::{Error, Result};
use crate::rational::int;
use crate::Rational;

/// Per-sector factor `nu_alpha` applied to the integral over a twisted sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nu {
    One,
    /// The order `r` of the sector's band.
    Order,
}

/// Choice of `nu_alpha` by sector kind. The default integrates every sector as a
/// substack of the inertia stack; `Order` rescales by the band order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairingNormalization {
    pub point_sectors: Nu,
    pub curve_sectors: Nu,
}

impl Default for PairingNormalization {
    fn default() -> Self {
        Self::INERTIA
    }
}

impl PairingNormalization {
    pub const INERTIA: PairingNormalization = PairingNormalization { point_sectors: Nu::One, curve_sectors: Nu::One };

    fn factor(&self, space: &StateSpace, sector: usize) -> Rational {
        let s = &space.sectors[sector];
        let nu = match (s.is_untwisted(), s.dimension) {
            (true, _) => Nu::One,
            (false, 0) => self.point_sectors,
            (false, _) => self.curve_sectors,
        };
        match nu {
            Nu::One => Rational::one(),
            Nu::Order => int(s.r),
        }
    }
}

/// Symmetric pairing on the full admissible basis.
#[derive(Debug, Clone, PartialEq)]
pub struct PairingMatrix {
    pub entries: Vec<Vec<Rational>>,
}

impl PairingMatrix {
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn pair(&self, a: &[Rational], b: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() && !self.entries[i][j].is_zero() {
                    s += x * y * &self.entries[i][j];
                }
            }
        }
        s
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.entries.len();
        (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut m = self.entries.clone();
        let n = m.len();
        let cols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..n).find(|&r| !m[r][c].is_zero()) else { continue };
            m.swap(rank, p);
            let pivot = m[rank][c].clone();
            for r in 0..n {
                if r != rank && !m[r][c].is_zero() {
                    let f = &m[r][c] / &pivot;
                    for k in c..cols {
                        let t = &f * &m[rank][k];
                        m[r][k] -= t;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

/// The pairing `(H^a 1_alpha, H^b 1_{1-alpha}) = nu_alpha deg_alpha` for `a + b = dim`,
/// and for point sectors the summed masses of the common strata.
pub fn pairing_matrix(space: &StateSpace, norm: PairingNormalization) -> Result<PairingMatrix> {
    let n = space.dim();
    let mut e = vec![vec![Rational::zero(); n]; n];
    for (si, s) in space.sectors.iter().enumerate() {
        let ti = space.dual_sector(si);
        let nu = norm.factor(space, si);
        if s.dimension == 0 {
            let st = &space.strata[si];
            for a in space.sector_range(si) {
                for b in space.sector_range(ti) {
                    let la = &space.classes[a].lambda;
                    let lb = &space.classes[b].lambda;
                    let mut v = Rational::zero();
                    for c in st {
                        if la.iter().chain(lb.iter()).all(|i| c.lambda.contains(i)) {
                            v += &c.open_mass;
                        }
                    }
                    e[a][b] = v * &nu;
                }
            }
        } else {
            for a in space.sector_range(si) {
                for b in space.sector_range(ti) {
                    if (space.classes[a].h_power + space.classes[b].h_power) as usize == s.dimension {
                        e[a][b] = &s.degree * &nu;
                    }
                }
            }
        }
    }
    let m = PairingMatrix { entries: e };
    if !m.is_symmetric() {
        return Err(Error::Internal("pairing matrix is not symmetric".into()));
    }
    if m.rank() != n {
        return Err(Error::Internal("pairing is degenerate on the admissible space".into()));
    }
    Ok(m)
}

/// Sectorwise cup product on the admissible space: classes on different sectors
/// multiply to zero, `H` is nilpotent past the sector dimension and the strata
/// indicators of a point sector are orthogonal idempotents.
pub fn sectorwise_algebra(space: &StateSpace) -> Result<CoefficientAlgebra<Rational>> {
    let n = space.dim();
    let mut table: Vec<Vec<Vec<(usize, Rational)>>> = vec![vec![Vec::new(); n]; n];
    for (si, s) in space.sectors.iter().enumerate() {
        let range = space.sector_range(si);
        if s.dimension == 0 {
            for a in range.clone() {
                for b in range.clone() {
                    let fa = space.basis_to_strata_function(si, &local(space, si, a));
                    let fb = space.basis_to_strata_function(si, &local(space, si, b));
                    let prod: Vec<Rational> = fa.iter().zip(&fb).map(|(x, y)| x * y).collect();
                    let coords = space.strata_function_to_basis(si, &prod);
                    table[a][b] = range.clone().zip(coords).filter(|(_, c)| !c.is_zero()).collect();
                }
            }
        } else {
            for a in range.clone() {
                for b in range.clone() {
                    let p = space.classes[a].h_power + space.classes[b].h_power;
                    if let Some(k) = space.power_class(si, p) {
                        table[a][b] = vec![(k, Rational::one())];
                    }
                }
            }
        }
    }
    CoefficientAlgebra::new(space.labels(), table, space.unit_vector())
}

fn local(space: &StateSpace, sector: usize, class: usize) -> Vec<Rational> {
    space.sector_range(sector).map(|k| if k == class { Rational::one() } else { Rational::zero() }).collect()
}
