use std::fmt;
use std::ops::Range;

use num_traits::{One, Zero};

use super::sector::{dual_alpha, enumerate_sectors, enumerate_special_cycles, Sector, SpecialCycle};
use super::target::TargetSpec;
use crate::error::{Error, Result};
use crate::rational::format as fmt_rat;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ClassKind {
    /// `H^p` on the untwisted sector.
    UntwistedPower(u32),
    /// `1_alpha`.
    SectorFundamental(Rational),
    /// `H * 1_alpha` on a one-dimensional twisted sector.
    SectorHyperplane(Rational),
    /// Fundamental class of a proper closed stratum of a zero-dimensional sector.
    SpecialCycle(Rational, Vec<usize>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BasisClass {
    pub kind: ClassKind,
    /// Index into [`StateSpace::sectors`].
    pub sector: usize,
    /// Power of `H` (zero on zero-dimensional sectors).
    pub h_power: u32,
    /// Coordinates set to zero (zero-dimensional sectors only).
    pub lambda: Vec<usize>,
    pub cr_degree: i64,
}

impl BasisClass {
    pub fn label(&self) -> String {
        self.kind.to_string()
    }
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassKind::UntwistedPower(0) => write!(f, "1"),
            ClassKind::UntwistedPower(1) => write!(f, "H"),
            ClassKind::UntwistedPower(p) => write!(f, "H^{p}"),
            ClassKind::SectorFundamental(a) => write!(f, "1_{}", fmt_rat(a)),
            ClassKind::SectorHyperplane(a) => write!(f, "H*1_{}", fmt_rat(a)),
            ClassKind::SpecialCycle(a, l) => {
                let xs: Vec<String> = l.iter().map(|i| format!("x{i}")).collect();
                write!(f, "1_{}[{}=0]", fmt_rat(a), xs.join(","))
            }
        }
    }
}

/// Identifies a degree-2 class by its sector and, for a special cycle, its stratum.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassDescriptor {
    pub alpha: Rational,
    pub lambda: Vec<usize>,
}

/// Sectors, strata and the admissible basis of a target.
#[derive(Debug, Clone)]
pub struct StateSpace {
    pub target: TargetSpec,
    pub sectors: Vec<Sector>,
    /// Positive-mass strata per sector (empty for positive-dimensional sectors).
    pub strata: Vec<Vec<SpecialCycle>>,
    pub classes: Vec<BasisClass>,
    ranges: Vec<Range<usize>>,
    dual: Vec<usize>,
}

impl StateSpace {
    pub fn new(target: &TargetSpec) -> Result<Self> {
        let sectors = enumerate_sectors(target)?;
        let mut strata = Vec::with_capacity(sectors.len());
        let mut classes = Vec::new();
        let mut ranges = Vec::with_capacity(sectors.len());
        for (si, s) in sectors.iter().enumerate() {
            let start = classes.len();
            let cycles = if s.dimension == 0 { enumerate_special_cycles(target, s)? } else { Vec::new() };
            if s.is_untwisted() {
                for p in 0..=s.dimension as u32 {
                    classes.push(BasisClass {
                        kind: ClassKind::UntwistedPower(p),
                        sector: si,
                        h_power: p,
                        lambda: Vec::new(),
                        cr_degree: 2 * p as i64,
                    });
                }
            } else if s.dimension == 0 {
                for c in &cycles {
                    let kind = if c.lambda.is_empty() {
                        ClassKind::SectorFundamental(s.alpha.clone())
                    } else {
                        ClassKind::SpecialCycle(s.alpha.clone(), c.lambda.clone())
                    };
                    classes.push(BasisClass {
                        kind,
                        sector: si,
                        h_power: 0,
                        lambda: c.lambda.clone(),
                        cr_degree: 2 * s.age,
                    });
                }
            } else {
                for p in 0..=s.dimension as u32 {
                    let kind = if p == 0 {
                        ClassKind::SectorFundamental(s.alpha.clone())
                    } else {
                        ClassKind::SectorHyperplane(s.alpha.clone())
                    };
                    classes.push(BasisClass {
                        kind,
                        sector: si,
                        h_power: p,
                        lambda: Vec::new(),
                        cr_degree: 2 * (s.age + p as i64),
                    });
                }
            }
            ranges.push(start..classes.len());
            strata.push(cycles);
        }
        let mut dual = Vec::with_capacity(sectors.len());
        for s in &sectors {
            let da = dual_alpha(&s.alpha);
            let k = sectors
                .iter()
                .position(|t| t.alpha == da)
                .ok_or_else(|| Error::Internal(format!("sector {} has no dual sector", s.label())))?;
            dual.push(k);
        }
        Ok(StateSpace { target: target.clone(), sectors, strata, classes, ranges, dual })
    }

    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    pub fn sector_range(&self, sector: usize) -> Range<usize> {
        self.ranges[sector].clone()
    }

    pub fn dual_sector(&self, sector: usize) -> usize {
        self.dual[sector]
    }

    pub fn sector_index(&self, alpha: &Rational) -> Option<usize> {
        self.sectors.iter().position(|s| &s.alpha == alpha)
    }

    pub fn labels(&self) -> Vec<String> {
        self.classes.iter().map(|c| c.label()).collect()
    }

    /// Index of `H^p 1_alpha` on a positive-dimensional (or untwisted) sector.
    pub fn power_class(&self, sector: usize, p: u32) -> Option<usize> {
        let s = &self.sectors[sector];
        if s.dimension == 0 || p as usize > s.dimension {
            return None;
        }
        Some(self.ranges[sector].start + p as usize)
    }

    /// Index of the basis class for a stratum of a zero-dimensional sector.
    pub fn cycle_class(&self, sector: usize, lambda: &[usize]) -> Option<usize> {
        self.ranges[sector].clone().find(|&k| self.classes[k].lambda == lambda && self.sectors[sector].dimension == 0)
    }

    pub fn find(&self, d: &ClassDescriptor) -> Option<usize> {
        let s = self.sector_index(&d.alpha)?;
        if self.sectors[s].dimension == 0 {
            self.cycle_class(s, &d.lambda)
        } else if d.lambda.is_empty() {
            self.power_class(s, 0)
        } else {
            None
        }
    }

    pub fn descriptor(&self, class: usize) -> ClassDescriptor {
        let c = &self.classes[class];
        ClassDescriptor { alpha: self.sectors[c.sector].alpha.clone(), lambda: c.lambda.clone() }
    }

    /// Degree-2 classes on twisted sectors, ascending in `alpha`, then `Lambda`.
    pub fn degree2_twisted(&self) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&k| {
                let c = &self.classes[k];
                c.cr_degree == 2 && !self.sectors[c.sector].is_untwisted()
            })
            .collect()
    }

    /// Classes of a given Chen-Ruan degree.
    pub fn classes_of_degree(&self, deg: i64) -> Vec<usize> {
        (0..self.classes.len()).filter(|&k| self.classes[k].cr_degree == deg).collect()
    }

    pub fn zero_vector(&self) -> Vec<Rational> {
        vec![Rational::zero(); self.dim()]
    }

    pub fn basis_vector(&self, k: usize) -> Vec<Rational> {
        let mut v = self.zero_vector();
        v[k] = Rational::one();
        v
    }

    /// Coordinates of a function on the strata of a zero-dimensional sector
    /// (one value per positive stratum, in basis order) in the closure basis.
    pub fn strata_function_to_basis(&self, sector: usize, values: &[Rational]) -> Vec<Rational> {
        let st = &self.strata[sector];
        assert_eq!(values.len(), st.len());
        // value(L') = sum_{L subset of L'} c_L, solved from the smallest strata up
        let mut order: Vec<usize> = (0..st.len()).collect();
        order.sort_by_key(|&k| st[k].lambda.len());
        let mut c = vec![Rational::zero(); st.len()];
        for &k in &order {
            let mut v = values[k].clone();
            for &l in &order {
                if st[l].lambda.len() < st[k].lambda.len() && st[l].lambda.iter().all(|i| st[k].lambda.contains(i)) {
                    v -= &c[l];
                }
            }
            c[k] = v;
        }
        c
    }

    /// Inverse of [`Self::strata_function_to_basis`].
    pub fn basis_to_strata_function(&self, sector: usize, coords: &[Rational]) -> Vec<Rational> {
        let st = &self.strata[sector];
        (0..st.len())
            .map(|k| {
                let mut v = Rational::zero();
                for l in 0..st.len() {
                    if st[l].lambda.iter().all(|i| st[k].lambda.contains(i)) {
                        v += &coords[l];
                    }
                }
                v
            })
            .collect()
    }

    /// Full-space vector of the indicator of `Ubar_Lambda` in a zero-dimensional sector.
    pub fn closed_stratum_class(&self, sector: usize, lambda: &[usize]) -> Vec<Rational> {
        let st = &self.strata[sector];
        let values: Vec<Rational> = st
            .iter()
            .map(|c| if lambda.iter().all(|i| c.lambda.contains(i)) { Rational::one() } else { Rational::zero() })
            .collect();
        let coords = self.strata_function_to_basis(sector, &values);
        let mut v = self.zero_vector();
        for (k, c) in self.sector_range(sector).zip(coords) {
            v[k] = c;
        }
        v
    }

    /// `sum_alpha 1_alpha`, the unit of the sectorwise algebra.
    pub fn unit_vector(&self) -> Vec<Rational> {
        let mut v = self.zero_vector();
        for s in 0..self.sectors.len() {
            if self.sectors[s].dimension == 0 {
                let u = self.closed_stratum_class(s, &[]);
                for k in self.sector_range(s) {
                    v[k] = u[k].clone();
                }
            } else {
                v[self.ranges[s].start] = Rational::one();
            }
        }
        v
    }

    /// `sum_alpha H * 1_alpha`.
    pub fn hyperplane_vector(&self) -> Vec<Rational> {
        let mut v = self.zero_vector();
        for s in 0..self.sectors.len() {
            if let Some(k) = self.power_class(s, 1) {
                v[k] = Rational::one();
            }
        }
        v
    }
}
