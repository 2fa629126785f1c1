//! Finite-dimensional commutative algebras given by structure constants.

use crate::error::{Error, Result};
use crate::series::{CoeffRing, Scalar};

/// Commutative, associative algebra with basis `e_0..e_{n-1}`.
///
/// `table[i][j]` lists the nonzero `(k, c)` with `e_i e_j = sum c e_k`.
/// The unit is stored as a vector since it need not be a basis element.
#[derive(Debug, Clone)]
pub struct CoefficientAlgebra<T> {
    labels: Vec<String>,
    table: Vec<Vec<Vec<(usize, T)>>>,
    unit: Vec<T>,
}

impl<T: Scalar> CoefficientAlgebra<T> {
    pub fn new(labels: Vec<String>, table: Vec<Vec<Vec<(usize, T)>>>, unit: Vec<T>) -> Result<Self> {
        let n = labels.len();
        if table.len() != n || table.iter().any(|row| row.len() != n) || unit.len() != n {
            return Err(Error::Structural("structure constants do not match the basis size".into()));
        }
        if table.iter().flatten().flatten().any(|(k, _)| *k >= n) {
            return Err(Error::Structural("structure constant index out of range".into()));
        }
        let table = table
            .into_iter()
            .map(|row| row.into_iter().map(|e| e.into_iter().filter(|(_, c)| !c.is_zero()).collect()).collect())
            .collect();
        Ok(CoefficientAlgebra { labels, table, unit })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[T] {
        &self.unit
    }

    pub fn basis(&self, i: usize) -> Vec<T> {
        let mut v = vec![T::zero(); self.dim()];
        v[i] = T::one();
        v
    }

    /// Check commutativity, associativity and the unit on basis elements.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            let ei = self.basis(i);
            if self.mul(&self.unit, &ei) != ei {
                return Err(Error::Internal(format!("unit fails on {}", self.labels[i])));
            }
            for j in 0..n {
                let ej = self.basis(j);
                let ij = self.mul(&ei, &ej);
                if ij != self.mul(&ej, &ei) {
                    return Err(Error::Internal(format!(
                        "product not commutative on {} {}",
                        self.labels[i], self.labels[j]
                    )));
                }
                for k in 0..n {
                    let ek = self.basis(k);
                    if self.mul(&ij, &ek) != self.mul(&ei, &self.mul(&ej, &ek)) {
                        return Err(Error::Internal(format!(
                            "product not associative on {} {} {}",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

impl<T: Scalar> CoeffRing for CoefficientAlgebra<T> {
    type Scalar = T;
    type Elem = Vec<T>;

    fn zero(&self) -> Vec<T> {
        vec![T::zero(); self.dim()]
    }

    fn one(&self) -> Vec<T> {
        self.unit.clone()
    }

    fn is_zero(&self, a: &Vec<T>) -> bool {
        a.iter().all(|x| x.is_zero())
    }

    fn add_assign(&self, acc: &mut Vec<T>, b: &Vec<T>) {
        for (x, y) in acc.iter_mut().zip(b) {
            if !y.is_zero() {
                *x += y;
            }
        }
    }

    fn neg(&self, a: &Vec<T>) -> Vec<T> {
        a.iter().map(|x| -x.clone()).collect()
    }

    fn mul(&self, a: &Vec<T>, b: &Vec<T>) -> Vec<T> {
        let mut out = self.zero();
        self.mul_add_assign(&mut out, a, b);
        out
    }

    fn mul_add_assign(&self, acc: &mut Vec<T>, a: &Vec<T>, b: &Vec<T>) {
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let mut xy = x.clone();
                xy *= y;
                for (k, c) in &self.table[i][j] {
                    let mut t = xy.clone();
                    t *= c;
                    acc[*k] += &t;
                }
            }
        }
    }

    fn scale(&self, a: &Vec<T>, s: &T) -> Vec<T> {
        a.iter()
            .map(|x| {
                let mut y = x.clone();
                y *= s;
                y
            })
            .collect()
    }

    fn scale_add_assign(&self, acc: &mut Vec<T>, a: &Vec<T>, s: &T) {
        for (x, y) in acc.iter_mut().zip(a) {
            if !y.is_zero() {
                let mut t = y.clone();
                t *= s;
                *x += &t;
            }
        }
    }

    fn unit_part(&self, a: &Vec<T>) -> Option<T> {
        let k = self.unit.iter().position(|u| !u.is_zero())?;
        let s = a[k].clone() / self.unit[k].clone();
        (self.scale(&self.unit, &s) == *a).then_some(s)
    }
}
