use std::fmt::Debug;
use std::marker::PhantomData;
use std::ops::Neg;

use num_traits::{FromPrimitive, NumAssignRef};

/// Scalar field for series coefficients.
pub trait Scalar:
    Clone + PartialEq + Debug + NumAssignRef + Neg<Output = Self> + FromPrimitive + Send + Sync
{
}

impl<T> Scalar for T where
    T: Clone + PartialEq + Debug + NumAssignRef + Neg<Output = T> + FromPrimitive + Send + Sync
{
}

/// Arithmetic context for series coefficients.
///
/// Coefficient values do not carry their algebra around; every series
/// operation is handed the ring explicitly. Scalars use [`ScalarRing`],
/// cohomology-valued series use a [`crate::CoefficientAlgebra`].
pub trait CoeffRing: Sync {
    type Scalar: Scalar;
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add_assign(&self, acc: &mut Self::Elem, b: &Self::Elem);
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, s: &Self::Scalar) -> Self::Elem;

    /// If `a` is a scalar multiple of the unit, that scalar.
    fn unit_part(&self, a: &Self::Elem) -> Option<Self::Scalar>;

    fn mul_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let p = self.mul(a, b);
        self.add_assign(acc, &p);
    }

    fn scale_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, s: &Self::Scalar) {
        let p = self.scale(a, s);
        self.add_assign(acc, &p);
    }
}

/// The scalars acting on themselves.
#[derive(Debug)]
pub struct ScalarRing<T>(PhantomData<fn() -> T>);

impl<T> ScalarRing<T> {
    pub const fn new() -> Self {
        ScalarRing(PhantomData)
    }
}

impl<T> Default for ScalarRing<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> Clone for ScalarRing<T> {
    fn clone(&self) -> Self {
        Self::new()
    }
}

impl<T: Scalar> CoeffRing for ScalarRing<T> {
    type Scalar = T;
    type Elem = T;

    fn zero(&self) -> T {
        T::zero()
    }
    fn one(&self) -> T {
        T::one()
    }
    fn is_zero(&self, a: &T) -> bool {
        a.is_zero()
    }
    fn add_assign(&self, acc: &mut T, b: &T) {
        *acc += b;
    }
    fn neg(&self, a: &T) -> T {
        -a.clone()
    }
    fn mul(&self, a: &T, b: &T) -> T {
        let mut r = a.clone();
        r *= b;
        r
    }
    fn scale(&self, a: &T, s: &T) -> T {
        self.mul(a, s)
    }
    fn mul_add_assign(&self, acc: &mut T, a: &T, b: &T) {
        let p = self.mul(a, b);
        *acc += &p;
    }
    fn unit_part(&self, a: &T) -> Option<T> {
        Some(a.clone())
    }
}
