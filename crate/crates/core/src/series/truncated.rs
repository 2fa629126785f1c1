use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::multi_index::MultiIndex;
use super::ring::{CoeffRing, Scalar, ScalarRing};
use crate::error::{Error, Result};

/// Below this many coefficient pairs a product runs on the calling thread.
const PAR_THRESHOLD: usize = 20_000;

/// Multivariate power series truncated at a total degree.
///
/// Terms are kept sparse and in graded-lexicographic order. A stored
/// coefficient is never zero and never sits above the truncation degree.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<E> {
    vars: Arc<[String]>,
    truncation: u32,
    terms: BTreeMap<MultiIndex, E>,
}

pub(crate) type Accum<E> = HashMap<MultiIndex, E>;

pub fn var_names<S: AsRef<str>>(names: &[S]) -> Arc<[String]> {
    names.iter().map(|s| s.as_ref().to_string()).collect()
}

impl<E: Clone + Send + Sync> TruncatedSeries<E> {
    pub fn zero(vars: Arc<[String]>, truncation: u32) -> Self {
        TruncatedSeries { vars, truncation, terms: BTreeMap::new() }
    }

    /// Build from raw terms; zero coefficients and indices above `truncation` are dropped,
    /// repeated indices are summed.
    pub fn from_terms<R, I>(ring: &R, vars: Arc<[String]>, truncation: u32, terms: I) -> Result<Self>
    where
        R: CoeffRing<Elem = E>,
        I: IntoIterator<Item = (MultiIndex, E)>,
    {
        let mut acc: Accum<E> = HashMap::new();
        for (m, c) in terms {
            if m.len() != vars.len() {
                return Err(Error::Structural(format!(
                    "exponent vector of length {} for {} variables",
                    m.len(),
                    vars.len()
                )));
            }
            if m.degree() <= truncation {
                accumulate(ring, &mut acc, m, &c);
            }
        }
        Ok(Self::from_accum(ring, vars, truncation, acc))
    }

    pub(crate) fn from_accum<R: CoeffRing<Elem = E>>(
        ring: &R,
        vars: Arc<[String]>,
        truncation: u32,
        acc: Accum<E>,
    ) -> Self {
        let terms = acc
            .into_iter()
            .filter(|(m, c)| m.degree() <= truncation && !ring.is_zero(c))
            .collect();
        TruncatedSeries { vars, truncation, terms }
    }

    pub fn constant<R: CoeffRing<Elem = E>>(ring: &R, vars: Arc<[String]>, truncation: u32, c: E) -> Self {
        let n = vars.len();
        Self::from_terms(ring, vars, truncation, [(MultiIndex::zero(n), c)])
            .expect("zero index has the right length")
    }

    pub fn one<R: CoeffRing<Elem = E>>(ring: &R, vars: Arc<[String]>, truncation: u32) -> Self {
        Self::constant(ring, vars, truncation, ring.one())
    }

    /// The series `x_i` (times the unit of the ring).
    pub fn variable<R: CoeffRing<Elem = E>>(ring: &R, vars: Arc<[String]>, truncation: u32, i: usize) -> Self {
        let n = vars.len();
        Self::from_terms(ring, vars, truncation, [(MultiIndex::unit(n, i), ring.one())])
            .expect("unit index has the right length")
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &E)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &MultiIndex) -> Option<&E> {
        self.terms.get(m)
    }

    /// Coefficient by exponent slice.
    pub fn coeff_at(&self, e: &[u32]) -> Option<&E> {
        self.terms.get(&MultiIndex::from_slice(e))
    }

    pub fn constant_term(&self) -> Option<&E> {
        self.terms.get(&MultiIndex::zero(self.nvars()))
    }

    /// Smallest total degree of a stored term.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree())
    }

    pub fn truncate(&self, truncation: u32) -> Self {
        let t = truncation.min(self.truncation);
        TruncatedSeries {
            vars: self.vars.clone(),
            truncation: t,
            terms: self.terms.iter().filter(|(m, _)| m.degree() <= t).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Same coefficients under new variable names.
    pub fn with_vars(&self, vars: Arc<[String]>) -> Result<Self> {
        if vars.len() != self.vars.len() {
            return Err(Error::Structural("renaming changes the number of variables".into()));
        }
        Ok(TruncatedSeries { vars, truncation: self.truncation, terms: self.terms.clone() })
    }

    /// Apply `f` to every coefficient, dropping those that become zero.
    pub fn map_coeffs<F, R, G>(&self, ring: &R, f: G) -> TruncatedSeries<F>
    where
        F: Clone + Send + Sync,
        R: CoeffRing<Elem = F>,
        G: Fn(&E) -> F,
    {
        TruncatedSeries {
            vars: self.vars.clone(),
            truncation: self.truncation,
            terms: self
                .terms
                .iter()
                .filter_map(|(m, c)| {
                    let v = f(c);
                    (!ring.is_zero(&v)).then(|| (m.clone(), v))
                })
                .collect(),
        }
    }

    pub fn check_same_vars<F>(&self, other: &TruncatedSeries<F>) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::Structural(format!(
                "variable lists differ: {:?} vs {:?}",
                self.vars, other.vars
            )))
        }
    }

    pub fn add_in<R: CoeffRing<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self> {
        self.check_same_vars(other)?;
        let d = self.truncation.min(other.truncation);
        let mut acc: Accum<E> = HashMap::with_capacity(self.len() + other.len());
        for (m, c) in self.terms.iter().chain(other.terms.iter()) {
            if m.degree() <= d {
                accumulate(ring, &mut acc, m.clone(), c);
            }
        }
        Ok(Self::from_accum(ring, self.vars.clone(), d, acc))
    }

    pub fn neg_in<R: CoeffRing<Elem = E>>(&self, ring: &R) -> Self {
        self.map_coeffs(ring, |c| ring.neg(c))
    }

    pub fn sub_in<R: CoeffRing<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self> {
        self.add_in(ring, &other.neg_in(ring))
    }

    pub fn scale_in<R: CoeffRing<Elem = E>>(&self, ring: &R, s: &R::Scalar) -> Self {
        self.map_coeffs(ring, |c| ring.scale(c, s))
    }

    /// Cauchy product truncated at the smaller truncation.
    pub fn mul_in<R: CoeffRing<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self> {
        self.check_same_vars(other)?;
        let d = self.truncation.min(other.truncation);
        let acc = cauchy(self, other, d, |acc, m, a, b| {
            let p = ring.mul(a, b);
            accumulate(ring, acc, m, &p)
        }, |x, y| merge(ring, x, y));
        Ok(Self::from_accum(ring, self.vars.clone(), d, acc))
    }

    /// Product with a scalar-valued series acting on the coefficients.
    pub fn mul_scalar_series<R: CoeffRing<Elem = E>>(
        &self,
        ring: &R,
        s: &TruncatedSeries<R::Scalar>,
    ) -> Result<Self> {
        self.check_same_vars(s)?;
        let d = self.truncation.min(s.truncation);
        let acc = cauchy(self, s, d, |acc, m, a, b| {
            let p = ring.scale(a, b);
            accumulate(ring, acc, m, &p)
        }, |x, y| merge(ring, x, y));
        Ok(Self::from_accum(ring, self.vars.clone(), d, acc))
    }

    pub fn pow_in<R: CoeffRing<Elem = E>>(&self, ring: &R, n: u32) -> Result<Self> {
        let mut result = Self::one(ring, self.vars.clone(), self.truncation);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul_in(ring, &base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_in(ring, &base)?;
            }
        }
        Ok(result)
    }

    /// Multiplicative inverse; the constant term must be a nonzero multiple of the unit.
    pub fn reciprocal_in<R: CoeffRing<Elem = E>>(&self, ring: &R) -> Result<Self> {
        let c = self
            .constant_term()
            .and_then(|c| ring.unit_part(c))
            .filter(|c| !c.is_zero())
            .ok_or_else(|| Error::Domain("reciprocal needs an invertible constant term".into()))?;
        let cinv = R::Scalar::one() / c;
        let neg_cinv = -cinv.clone();
        let a = self.homogeneous_parts();
        let d = self.truncation;
        let mut b: Vec<Vec<(MultiIndex, E)>> = Vec::with_capacity(d as usize + 1);
        b.push(vec![(MultiIndex::zero(self.nvars()), ring.scale(&ring.one(), &cinv))]);
        for k in 1..=d as usize {
            let mut acc: Accum<E> = HashMap::new();
            for j in 1..=k {
                if j < a.len() {
                    hom_product(ring, &mut acc, &a[j], &b[k - j]);
                }
            }
            let part = acc
                .into_iter()
                .filter(|(_, v)| !ring.is_zero(v))
                .map(|(m, v)| (m, ring.scale(&v, &neg_cinv)))
                .collect();
            b.push(part);
        }
        Ok(Self::from_parts(ring, self.vars.clone(), d, b))
    }

    /// `exp` of a series without constant term.
    pub fn exp_in<R: CoeffRing<Elem = E>>(&self, ring: &R) -> Result<Self> {
        if self.constant_term().is_some() {
            return Err(Error::Domain("exp needs a zero constant term".into()));
        }
        // Euler operator: k E_k = sum_j j a_j E_{k-j}
        let a = self.homogeneous_parts();
        let d = self.truncation;
        let mut e: Vec<Vec<(MultiIndex, E)>> = Vec::with_capacity(d as usize + 1);
        e.push(vec![(MultiIndex::zero(self.nvars()), ring.one())]);
        for k in 1..=d as usize {
            let mut acc: Accum<E> = HashMap::new();
            for j in 1..=k.min(a.len().saturating_sub(1)) {
                let scaled: Vec<(MultiIndex, E)> = a[j]
                    .iter()
                    .map(|(m, c)| (m.clone(), ring.scale(c, &int_scalar::<R::Scalar>(j as i64))))
                    .collect();
                hom_product(ring, &mut acc, &scaled, &e[k - j]);
            }
            let inv_k = R::Scalar::one() / int_scalar::<R::Scalar>(k as i64);
            e.push(
                acc.into_iter()
                    .filter(|(_, v)| !ring.is_zero(v))
                    .map(|(m, v)| (m, ring.scale(&v, &inv_k)))
                    .collect(),
            );
        }
        Ok(Self::from_parts(ring, self.vars.clone(), d, e))
    }

    /// `log` of a series with constant term 1.
    pub fn log_in<R: CoeffRing<Elem = E>>(&self, ring: &R) -> Result<Self> {
        let unit = self.constant_term().and_then(|c| ring.unit_part(c));
        if unit != Some(R::Scalar::one()) {
            return Err(Error::Domain("log needs constant term 1".into()));
        }
        // k L_k = k f_k - sum_{j<k} j L_j f_{k-j}
        let f = self.homogeneous_parts();
        let d = self.truncation;
        let mut l: Vec<Vec<(MultiIndex, E)>> = vec![Vec::new()];
        for k in 1..=d as usize {
            let mut acc: Accum<E> = HashMap::new();
            if k < f.len() {
                let kk = int_scalar::<R::Scalar>(k as i64);
                for (m, c) in &f[k] {
                    accumulate(ring, &mut acc, m.clone(), &ring.scale(c, &kk));
                }
            }
            for j in 1..k {
                if k - j < f.len() {
                    let scaled: Vec<(MultiIndex, E)> = l[j]
                        .iter()
                        .map(|(m, c)| (m.clone(), ring.scale(c, &int_scalar::<R::Scalar>(-(j as i64)))))
                        .collect();
                    hom_product(ring, &mut acc, &scaled, &f[k - j]);
                }
            }
            let inv_k = R::Scalar::one() / int_scalar::<R::Scalar>(k as i64);
            l.push(
                acc.into_iter()
                    .filter(|(_, v)| !ring.is_zero(v))
                    .map(|(m, v)| (m, ring.scale(&v, &inv_k)))
                    .collect(),
            );
        }
        Ok(Self::from_parts(ring, self.vars.clone(), d, l))
    }

    /// Terms grouped by total degree, index `k` holding degree `k`.
    pub(crate) fn homogeneous_parts(&self) -> Vec<Vec<(MultiIndex, E)>> {
        let mut parts: Vec<Vec<(MultiIndex, E)>> = vec![Vec::new(); self.truncation as usize + 1];
        for (m, c) in &self.terms {
            parts[m.degree() as usize].push((m.clone(), c.clone()));
        }
        parts
    }

    fn from_parts<R: CoeffRing<Elem = E>>(
        ring: &R,
        vars: Arc<[String]>,
        truncation: u32,
        parts: Vec<Vec<(MultiIndex, E)>>,
    ) -> Self {
        let terms = parts
            .into_iter()
            .flatten()
            .filter(|(m, c)| m.degree() <= truncation && !ring.is_zero(c))
            .collect();
        TruncatedSeries { vars, truncation, terms }
    }
}

pub(crate) fn int_scalar<T: Scalar>(k: i64) -> T {
    T::from_i64(k).expect("scalar type represents small integers")
}

pub(crate) fn accumulate<R: CoeffRing>(ring: &R, acc: &mut Accum<R::Elem>, m: MultiIndex, c: &R::Elem) {
    match acc.get_mut(&m) {
        Some(v) => ring.add_assign(v, c),
        None => {
            acc.insert(m, c.clone());
        }
    }
}

pub(crate) fn merge<R: CoeffRing>(ring: &R, mut x: Accum<R::Elem>, y: Accum<R::Elem>) -> Accum<R::Elem> {
    if x.len() < y.len() {
        return merge(ring, y, x);
    }
    for (m, c) in y {
        accumulate(ring, &mut x, m, &c);
    }
    x
}

fn hom_product<R: CoeffRing>(
    ring: &R,
    acc: &mut Accum<R::Elem>,
    a: &[(MultiIndex, R::Elem)],
    b: &[(MultiIndex, R::Elem)],
) {
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = ma.add(mb);
            match acc.get_mut(&m) {
                Some(v) => ring.mul_add_assign(v, ca, cb),
                None => {
                    acc.insert(m, ring.mul(ca, cb));
                }
            }
        }
    }
}

/// Generic truncated Cauchy product driver; `step` folds one coefficient pair.
fn cauchy<A, B, E, S, M>(a: &TruncatedSeries<A>, b: &TruncatedSeries<B>, d: u32, step: S, merge_fn: M) -> Accum<E>
where
    A: Clone + Send + Sync,
    B: Clone + Send + Sync,
    E: Send,
    S: Fn(&mut Accum<E>, MultiIndex, &A, &B) + Sync,
    M: Fn(Accum<E>, Accum<E>) -> Accum<E> + Sync + Send,
{
    let bt: Vec<(&MultiIndex, &B, u32)> = b.terms.iter().map(|(m, c)| (m, c, m.degree())).collect();
    let at: Vec<(&MultiIndex, &A, u32)> = a.terms.iter().map(|(m, c)| (m, c, m.degree())).collect();
    let work = |acc: &mut Accum<E>, (ma, ca, da): &(&MultiIndex, &A, u32)| {
        if *da > d {
            return;
        }
        let limit = d - da;
        let end = bt.partition_point(|(_, _, db)| *db <= limit);
        for (mb, cb, _) in &bt[..end] {
            step(acc, ma.add(mb), ca, cb);
        }
    };
    if at.len().saturating_mul(bt.len()) < PAR_THRESHOLD {
        let mut acc = HashMap::new();
        for t in &at {
            work(&mut acc, t);
        }
        acc
    } else {
        at.par_iter()
            .with_min_len(8)
            .fold(HashMap::new, |mut acc, t| {
                work(&mut acc, t);
                acc
            })
            .reduce(HashMap::new, &merge_fn)
    }
}

impl<T: Scalar> TruncatedSeries<T> {
    pub fn scalar_constant(vars: Arc<[String]>, truncation: u32, c: T) -> Self {
        Self::constant(&ScalarRing::new(), vars, truncation, c)
    }

    pub fn scalar_one(vars: Arc<[String]>, truncation: u32) -> Self {
        Self::one(&ScalarRing::new(), vars, truncation)
    }

    pub fn scalar_variable(vars: Arc<[String]>, truncation: u32, i: usize) -> Self {
        Self::variable(&ScalarRing::new(), vars, truncation, i)
    }

    pub fn from_scalar_terms<I>(vars: Arc<[String]>, truncation: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, T)>,
    {
        Self::from_terms(&ScalarRing::new(), vars, truncation, terms)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.add_in(&ScalarRing::new(), other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.sub_in(&ScalarRing::new(), other)
    }

    pub fn neg(&self) -> Self {
        self.neg_in(&ScalarRing::new())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.scale_in(&ScalarRing::new(), s)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.mul_in(&ScalarRing::new(), other)
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        self.pow_in(&ScalarRing::new(), n)
    }

    pub fn reciprocal(&self) -> Result<Self> {
        self.reciprocal_in(&ScalarRing::new())
    }

    pub fn exp(&self) -> Result<Self> {
        self.exp_in(&ScalarRing::new())
    }

    pub fn log(&self) -> Result<Self> {
        self.log_in(&ScalarRing::new())
    }

    /// Coefficient by exponents, zero when absent.
    pub fn get(&self, e: &[u32]) -> T {
        self.coeff_at(e).cloned().unwrap_or_else(T::zero)
    }
}

impl<E: fmt::Display> fmt::Display for TruncatedSeries<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (v, e) in self.vars.iter().zip(m.exponents()) {
                match e {
                    0 => {}
                    1 => write!(f, "*{v}")?,
                    _ => write!(f, "*{v}^{e}")?,
                }
            }
        }
        write!(f, " + O({})", self.truncation + 1)
    }
}

impl<E: fmt::Debug> fmt::Debug for TruncatedSeries<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TruncatedSeries")
            .field("vars", &self.vars)
            .field("truncation", &self.truncation)
            .field("terms", &self.terms)
            .finish()
    }
}
