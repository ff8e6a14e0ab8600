//! Truncated Weyl functions of a Jacobi model, moment matching and Gauss
//! quadrature.
//!
//! `m_n(z) = s_0·((J_{n-1} − z)^{-1} e_0, e_0) = −q_n(z)/p_n(z)`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_core::ratfun::RationalFunction;
use crate::exact_core::scalar::{to_float, Scalar};
use crate::exact_core::sturm::SturmChain;
use crate::moments::{DiscreteMeasure, MomentSequence};
use crate::orthopoly::{first_kind_determinant, second_kind_determinant, JacobiModel};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeylRoute {
    Resolvent,
    PolyRatio,
    ContinuedFraction,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeylSample {
    pub z: Complex64,
    pub value: Complex64,
    pub route: WeylRoute,
    pub depth: usize,
}

pub(crate) fn check_nonreal(z: Complex64) -> Result<()> {
    if z.im == 0.0 {
        Err(Error::RealSpectralParameter)
    } else {
        Ok(())
    }
}

fn check_depth<T: Scalar>(jacobi: &JacobiModel<T>, n: usize) -> Result<()> {
    if n == 0 || n > jacobi.len() {
        Err(Error::OutOfRange {
            index: n,
            max: jacobi.len(),
        })
    } else {
        Ok(())
    }
}

/// First component of `(J_{n-1} − z)x = e_0`, times the mass, by the
/// tridiagonal forward/backward sweep.
pub fn m_resolvent<T: Scalar>(
    jacobi: &JacobiModel<T>,
    n: usize,
    z: Complex64,
) -> Result<Complex64> {
    check_nonreal(z)?;
    check_depth(jacobi, n)?;
    let diag: Vec<Complex64> = jacobi.a()[..n]
        .iter()
        .map(|a| Complex64::new(to_float(a), 0.0) - z)
        .collect();
    let off: Vec<f64> = jacobi.b2()[..n - 1]
        .iter()
        .map(|b2| to_float::<T, f64>(b2).sqrt())
        .collect();
    let mut upper = vec![Complex64::zero(); n];
    let mut rhs = vec![Complex64::zero(); n];
    let mut pivot = diag[0];
    if pivot == Complex64::zero() {
        return Err(Error::SingularSystem(0));
    }
    rhs[0] = Complex64::one() / pivot;
    for i in 1..n {
        upper[i - 1] = off[i - 1] / pivot;
        pivot = diag[i] - off[i - 1] * upper[i - 1];
        if pivot == Complex64::zero() {
            return Err(Error::SingularSystem(i));
        }
        rhs[i] = -off[i - 1] * rhs[i - 1] / pivot;
    }
    let mut x = rhs[n - 1];
    for i in (0..n - 1).rev() {
        x = rhs[i] - upper[i] * x;
    }
    Ok(x * to_float::<T, f64>(jacobi.mass()))
}

/// `−q_n(z)/p_n(z)` with both polynomials taken from their determinant
/// formulas.
pub fn m_poly_ratio<T: Scalar>(s: &MomentSequence<T>, n: usize, z: Complex64) -> Result<Complex64> {
    check_nonreal(z)?;
    let p = first_kind_determinant(s, n)?;
    let q = second_kind_determinant(s, n)?;
    Ok(-q.eval_complex(z) / p.eval_complex(z))
}

/// Bottom-up evaluation of `s_0/(a_0 − z − b_0²/(a_1 − z − …))` with `n`
/// levels.
pub fn m_continued_fraction<T: Scalar>(
    jacobi: &JacobiModel<T>,
    n: usize,
    z: Complex64,
) -> Result<Complex64> {
    check_nonreal(z)?;
    check_depth(jacobi, n)?;
    let a: Vec<f64> = jacobi.a()[..n].iter().map(to_float).collect();
    let b2: Vec<f64> = jacobi.b2()[..n - 1].iter().map(to_float).collect();
    let mut t = a[n - 1] - z;
    for k in (0..n - 1).rev() {
        if t == Complex64::zero() {
            return Err(Error::SingularSystem(k + 1));
        }
        t = a[k] - z - b2[k] / t;
    }
    if t == Complex64::zero() {
        return Err(Error::SingularSystem(0));
    }
    Ok(to_float::<T, f64>(jacobi.mass()) / t)
}

/// The three routes at one point.
pub fn weyl_samples(
    s: &MomentSequence<Rational>,
    jacobi: &JacobiModel<Rational>,
    n: usize,
    z: Complex64,
) -> Result<[WeylSample; 3]> {
    let sample = |route, value| WeylSample {
        z,
        value,
        route,
        depth: n,
    };
    Ok([
        sample(WeylRoute::Resolvent, m_resolvent(jacobi, n, z)?),
        sample(WeylRoute::PolyRatio, m_poly_ratio(s, n, z)?),
        sample(
            WeylRoute::ContinuedFraction,
            m_continued_fraction(jacobi, n, z)?,
        ),
    ])
}

/// Exact `m_n = −q_n/p_n` in lowest terms.
pub fn weyl_ratfun<T: Scalar>(s: &MomentSequence<T>, n: usize) -> Result<RationalFunction<T>> {
    let p = first_kind_determinant(s, n)?;
    let q = second_kind_determinant(s, n)?;
    RationalFunction::new(-q, p)
}

/// `c_k + s_{k-1}` for `k = 1..=n_terms`, where `Σ c_k z^{-k}` is the
/// expansion of `m_n` at infinity.
pub fn moment_match_residuals<T: Scalar>(
    s: &MomentSequence<T>,
    n: usize,
    n_terms: usize,
) -> Result<Vec<T>> {
    if n_terms > 0 {
        s.require(n_terms - 1)?;
    }
    let series = weyl_ratfun(s, n)?.series_at_infinity(n_terms)?;
    Ok(series
        .into_iter()
        .zip(s.as_slice())
        .map(|(c, sk)| c + sk.clone())
        .collect())
}

/// Residuals through order `2n`; all vanish for consistent data.
pub fn moment_match_check<T: Scalar>(s: &MomentSequence<T>, n: usize) -> Result<Vec<T>> {
    moment_match_residuals(s, n, 2 * n)
}

fn quadrature_tolerance() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10u64).pow(14))
}

/// Nodes at the roots of `p_n`, weights `q_n(λ)/p_n'(λ)`.
pub fn gauss_quadrature(s: &MomentSequence<Rational>, n: usize) -> Result<DiscreteMeasure<f64>> {
    let p = first_kind_determinant(s, n)?;
    let q = second_kind_determinant(s, n)?;
    let dp = p.derivative();
    let chain = SturmChain::new(&p);
    let tol = quadrature_tolerance();
    let mut atoms = Vec::with_capacity(n);
    for (lo, hi) in chain.isolate() {
        let (lo, hi) = chain.refine(lo, hi, &tol);
        let x = (to_float::<_, f64>(&lo) + to_float::<_, f64>(&hi)) / 2.0;
        let exact = (lo + hi) / Rational::from_integer(2.into());
        let w = to_float::<_, f64>(&(q.eval(&exact) / dp.eval(&exact)));
        atoms.push((x, w));
    }
    if atoms.len() != n {
        return Err(Error::Inconsistent(format!(
            "p_{n} has {} real roots",
            atoms.len()
        )));
    }
    DiscreteMeasure::new(atoms).map_err(|e| Error::Inconsistent(e.to_string()))
}

/// Simplest rational (smallest denominator) in `[lo, hi]`.
fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    let next = &fl + Rational::one();
    if &next <= hi {
        return next;
    }
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

/// Exact Gauss quadrature when every root of `p_n` is rational; `None`
/// when some root is irrational.
pub fn rational_quadrature(
    s: &MomentSequence<Rational>,
    n: usize,
) -> Result<Option<DiscreteMeasure<Rational>>> {
    let p = first_kind_determinant(s, n)?;
    let q = second_kind_determinant(s, n)?;
    let dp = p.derivative();
    // Clearing denominators gives an integer polynomial whose leading
    // coefficient bounds every rational root's denominator.
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| num_integer_lcm(&acc, c.denom()));
    let lead = Rational::from_integer(lcm);
    let tol = (lead.clone() * lead * Rational::from_integer(2.into())).recip();
    let chain = SturmChain::new(&p);
    let mut atoms = Vec::with_capacity(n);
    for (lo, hi) in chain.isolate() {
        let (lo, hi) = chain.refine(lo, hi, &tol);
        let x = simplest_between(&lo, &hi);
        if !p.eval(&x).is_zero() {
            return Ok(None);
        }
        let w = q.eval(&x) / dp.eval(&x);
        atoms.push((x, w));
    }
    if atoms.len() != n {
        return Err(Error::Inconsistent(format!(
            "p_{n} has {} real roots",
            atoms.len()
        )));
    }
    DiscreteMeasure::new(atoms)
        .map(Some)
        .map_err(|e| Error::Inconsistent(e.to_string()))
}

fn num_integer_lcm(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    a.lcm(b).abs()
}
