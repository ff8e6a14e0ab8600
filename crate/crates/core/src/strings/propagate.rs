use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact_core::poly::Polynomial;
use crate::exact_core::scalar::{to_complex, Scalar};

use super::model::{KreinLangerString, StringEnd};

/// Ring operations the propagation uses; implemented for complex samples of
/// `z` and for exact polynomials in `z`.
pub trait PropagationRing: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
}

impl PropagationRing for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

impl<T: Scalar> PropagationRing for Polynomial<T> {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn one() -> Self {
        Polynomial::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

/// Values of the fundamental solutions `c` and `s` at one point, with the
/// slopes on either side of it.
#[derive(Clone, Debug, PartialEq)]
pub struct PointValues<R> {
    pub c: R,
    pub c_prime_left: R,
    pub c_prime_right: R,
    pub s: R,
    pub s_prime_left: R,
    pub s_prime_right: R,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PropagationState<R> {
    pub points: Vec<PointValues<R>>,
}

/// Number of points `propagate` can visit: the cells plus the end of a
/// finite tail.
pub fn point_count<T: Scalar>(string: &KreinLangerString<T>) -> usize {
    string.len() + usize::from(matches!(string.end(), StringEnd::Finite(_)))
}

/// Transports `c` and `s` across the first `depth` points.
///
/// Between points both solutions are linear; at `x_j` the slope drops by
/// `(zω_j + z²υ_j)f(x_j)`. The end of a finite tail carries no jump.
pub fn propagate_in<T: Scalar, R: PropagationRing>(
    string: &KreinLangerString<T>,
    z: &R,
    lift: impl Fn(&T) -> R,
    depth: usize,
) -> Result<PropagationState<R>> {
    let max = point_count(string);
    if depth > max {
        return Err(Error::OutOfRange { index: depth, max });
    }
    let z2 = z.mul(z);
    let (mut c, mut dc) = (R::one(), R::zero());
    let (mut s, mut ds) = (R::zero(), R::one());
    let mut points = Vec::with_capacity(depth);
    for j in 0..depth {
        let l = lift(string.length(j).expect("within the point count"));
        c = c.add(&l.mul(&dc));
        s = s.add(&l.mul(&ds));
        let (dc_left, ds_left) = (dc.clone(), ds.clone());
        if let Some(cell) = string.cells().get(j) {
            let jump = z.mul(&lift(&cell.omega)).add(&z2.mul(&lift(&cell.upsilon)));
            dc = dc.sub(&jump.mul(&c));
            ds = ds.sub(&jump.mul(&s));
        }
        points.push(PointValues {
            c: c.clone(),
            c_prime_left: dc_left,
            c_prime_right: dc.clone(),
            s: s.clone(),
            s_prime_left: ds_left,
            s_prime_right: ds.clone(),
        });
    }
    Ok(PropagationState { points })
}

/// Complex propagation at a sample `z`.
pub fn propagate<T: Scalar>(
    string: &KreinLangerString<T>,
    z: Complex64,
    depth: usize,
) -> Result<PropagationState<Complex64>> {
    propagate_in(string, &z, to_complex::<T, f64>, depth)
}

/// Exact propagation with polynomial entries in `z`.
pub fn propagate_polynomial<T: Scalar>(
    string: &KreinLangerString<T>,
    depth: usize,
) -> Result<PropagationState<Polynomial<T>>> {
    propagate_in(
        string,
        &Polynomial::z(),
        |x: &T| Polynomial::constant(x.clone()),
        depth,
    )
}
