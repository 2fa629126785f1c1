use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::multi_index::MultiIndex;
use super::ring::{CoeffRing, Scalar, ScalarRing};
use super::truncated::{accumulate, merge, Accum, TruncatedSeries};
use crate::error::{Error, Result};

/// Monomials `g^d = prod_i g_i^{d_i}` in a fixed family of scalar series, memoised.
pub struct PowerCache<T: Scalar> {
    images: Vec<TruncatedSeries<T>>,
    truncation: u32,
    cache: HashMap<MultiIndex, Arc<TruncatedSeries<T>>>,
}

impl<T: Scalar> PowerCache<T> {
    /// All images must share their variables and have zero constant term.
    pub fn new(images: &[TruncatedSeries<T>]) -> Result<Self> {
        let first = images
            .first()
            .ok_or_else(|| Error::Structural("substitution needs at least one image".into()))?;
        for g in images {
            first.check_same_vars(g)?;
            if g.constant_term().is_some() {
                return Err(Error::Domain("substituted series must have zero constant term".into()));
            }
        }
        let truncation = images.iter().map(|g| g.truncation()).min().unwrap_or(0);
        let mut cache = HashMap::new();
        cache.insert(
            MultiIndex::zero(images.len()),
            Arc::new(TruncatedSeries::scalar_one(first.vars().clone(), truncation)),
        );
        Ok(PowerCache { images: images.to_vec(), truncation, cache })
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn out_vars(&self) -> &Arc<[String]> {
        self.images[0].vars()
    }

    /// Ensure every `d` in `wanted` (and its chain of parents) is cached.
    pub fn prepare<'a, I: IntoIterator<Item = &'a MultiIndex>>(&mut self, wanted: I) -> Result<()> {
        let mut levels: Vec<Vec<MultiIndex>> = Vec::new();
        let mut seen: std::collections::HashSet<MultiIndex> = std::collections::HashSet::new();
        for d in wanted {
            if d.len() != self.images.len() {
                return Err(Error::Structural("exponent vector does not match the image count".into()));
            }
            if d.degree() > self.truncation {
                continue;
            }
            let mut cur = d.clone();
            while !self.cache.contains_key(&cur) && seen.insert(cur.clone()) {
                let k = cur.degree() as usize;
                if levels.len() <= k {
                    levels.resize(k + 1, Vec::new());
                }
                levels[k].push(cur.clone());
                cur = parent(&cur).0;
            }
        }
        for level in levels {
            let computed: Vec<(MultiIndex, Arc<TruncatedSeries<T>>)> = level
                .into_par_iter()
                .map(|d| {
                    let (p, i) = parent(&d);
                    let base = self.cache.get(&p).expect("parents are computed first");
                    let s = base.mul(&self.images[i]).expect("images share variables");
                    (d, Arc::new(s))
                })
                .collect();
            self.cache.extend(computed);
        }
        Ok(())
    }

    pub fn get(&mut self, d: &MultiIndex) -> Result<Arc<TruncatedSeries<T>>> {
        if !self.cache.contains_key(d) {
            self.prepare([d])?;
        }
        self.cache
            .get(d)
            .cloned()
            .ok_or_else(|| Error::Domain("monomial above the truncation degree".into()))
    }

    /// `f(g)` for a series `f` over any coefficient ring with these scalars.
    pub fn substitute_in<R>(&mut self, ring: &R, f: &TruncatedSeries<R::Elem>) -> Result<TruncatedSeries<R::Elem>>
    where
        R: CoeffRing<Scalar = T>,
    {
        if f.nvars() != self.images.len() {
            return Err(Error::Structural(format!(
                "{} images for a series in {} variables",
                self.images.len(),
                f.nvars()
            )));
        }
        let d = self.truncation.min(f.truncation());
        let wanted: Vec<&MultiIndex> = f.terms().map(|(m, _)| m).filter(|m| m.degree() <= d).collect();
        self.prepare(wanted.iter().copied())?;
        let cache = &self.cache;
        let terms: Vec<(&MultiIndex, &R::Elem)> = f.terms().filter(|(m, _)| m.degree() <= d).collect();
        let acc: Accum<R::Elem> = terms
            .par_iter()
            .with_min_len(4)
            .fold(HashMap::new, |mut acc, (m, c)| {
                let p = cache.get(*m).expect("prepared");
                for (mm, s) in p.terms() {
                    if mm.degree() > d {
                        break;
                    }
                    match acc.get_mut(mm) {
                        Some(v) => ring.scale_add_assign(v, c, s),
                        None => {
                            accumulate(ring, &mut acc, mm.clone(), &ring.scale(c, s));
                        }
                    }
                }
                acc
            })
            .reduce(HashMap::new, |x, y| merge(ring, x, y));
        Ok(TruncatedSeries::from_accum(ring, self.out_vars().clone(), d, acc))
    }
}

/// Parent used to build `g^d`: drop one factor from the last nonzero slot.
fn parent(d: &MultiIndex) -> (MultiIndex, usize) {
    let i = (0..d.len()).rev().find(|&i| d.get(i) > 0).expect("zero index has no parent");
    let mut p = d.clone();
    p.set(i, d.get(i) - 1);
    (p, i)
}

/// Replace variable `i` of `f` by `images[i]`.
pub fn substitute_in<R: CoeffRing>(
    ring: &R,
    f: &TruncatedSeries<R::Elem>,
    images: &[TruncatedSeries<R::Scalar>],
) -> Result<TruncatedSeries<R::Elem>> {
    PowerCache::new(images)?.substitute_in(ring, f)
}

pub fn substitute<T: Scalar>(f: &TruncatedSeries<T>, images: &[TruncatedSeries<T>]) -> Result<TruncatedSeries<T>> {
    substitute_in(&ScalarRing::new(), f, images)
}

/// Check that `images[i] = x_i + (order >= 2)`.
fn check_near_identity<T: Scalar>(images: &[TruncatedSeries<T>]) -> Result<()> {
    let n = images.len();
    for (i, g) in images.iter().enumerate() {
        if g.nvars() != n {
            return Err(Error::NonInvertibleMap(format!(
                "image {i} lives in {} variables, expected {n}",
                g.nvars()
            )));
        }
        if g.constant_term().is_some() {
            return Err(Error::NonInvertibleMap(format!("image {i} has a constant term")));
        }
        if g.truncation() == 0 {
            // only the constant term is visible
            continue;
        }
        for j in 0..n {
            let c = g.get(MultiIndex::unit(n, j).exponents());
            let want = if i == j { T::one() } else { T::zero() };
            if c != want {
                return Err(Error::NonInvertibleMap(format!(
                    "linear part is not the identity at ({i},{j}): {c:?}"
                )));
            }
        }
    }
    Ok(())
}

/// Formal inverse of a near-identity map `y = G(x)`.
///
/// `images[i]` is `y_i` as a series in the `x` variables; the result gives
/// `x_i` as a series in `new_vars`. The fixed point `F = y - N(F)`, `N = G - id`,
/// is iterated with the truncation raised by one each step, so every step
/// fixes one more degree.
pub fn invert_triangular_map<T: Scalar>(
    images: &[TruncatedSeries<T>],
    new_vars: Arc<[String]>,
) -> Result<Vec<TruncatedSeries<T>>> {
    check_near_identity(images)?;
    let n = images.len();
    if new_vars.len() != n {
        return Err(Error::Structural("inverse needs one new variable per image".into()));
    }
    let d = images.iter().map(|g| g.truncation()).min().unwrap_or(0);
    let nonlinear: Vec<TruncatedSeries<T>> = images
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let x = TruncatedSeries::scalar_variable(g.vars().clone(), g.truncation(), i);
            g.sub(&x)
        })
        .collect::<Result<_>>()?;
    let ident = |k: u32| -> Vec<TruncatedSeries<T>> {
        (0..n).map(|i| TruncatedSeries::scalar_variable(new_vars.clone(), k, i)).collect()
    };
    let mut current = ident(d.min(1));
    for k in 2..=d {
        let lifted: Vec<TruncatedSeries<T>> = current.iter().map(|s| raise(s, k)).collect();
        let mut cache = PowerCache::new(&lifted)?;
        let y = ident(k);
        current = nonlinear
            .iter()
            .zip(y)
            .map(|(nl, yi)| {
                let comp = cache.substitute_in(&ScalarRing::new(), &nl.truncate(k))?;
                yi.sub(&comp)
            })
            .collect::<Result<_>>()?;
    }
    Ok(current)
}

/// Same terms, declared valid up to a higher truncation.
fn raise<T: Scalar>(s: &TruncatedSeries<T>, k: u32) -> TruncatedSeries<T> {
    TruncatedSeries::from_scalar_terms(s.vars().clone(), k, s.terms().map(|(m, c)| (m.clone(), c.clone())))
        .expect("same variables")
}
