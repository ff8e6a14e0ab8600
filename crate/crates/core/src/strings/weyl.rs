use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact_core::poly::Polynomial;
use crate::exact_core::ratfun::RationalFunction;
use crate::exact_core::scalar::{to_float, Scalar};
use crate::jacobi_weyl::check_nonreal;

use super::model::{Cell, KreinLangerString, StringEnd};
use super::propagate::{propagate, propagate_polynomial};

/// Largest `j` for which `m̃_j` is defined.
fn max_truncation<T: Scalar>(string: &KreinLangerString<T>) -> usize {
    match string.end() {
        StringEnd::Truncated => string.len() - 1,
        _ => string.len(),
    }
}

fn check_truncation<T: Scalar>(string: &KreinLangerString<T>, j: usize) -> Result<()> {
    let max = max_truncation(string);
    if j > max {
        Err(Error::OutOfRange { index: j, max })
    } else {
        Ok(())
    }
}

/// Exact value of the string continued fraction through point `j`.
///
/// For `j` below the number of cells the fraction ends in `1/(−l_j z)`; at
/// `j = κ` the tail decides: a finite tail ends in `1/(−l_κ z)` and an
/// infinite one drops the last term.
pub fn m_truncated_ratfun<T: Scalar>(
    string: &KreinLangerString<T>,
    j: usize,
) -> Result<RationalFunction<T>> {
    check_truncation(string, j)?;
    let cells = string.cells();
    let lz = |l: &T| RationalFunction::from_polynomial(Polynomial::linear(T::zero(), -l.clone()));
    let mass = |c: &Cell<T>| {
        RationalFunction::from_polynomial(Polynomial::linear(c.omega.clone(), c.upsilon.clone()))
    };
    // Bottom-up: `acc` is the innermost denominator seen so far.
    let (mut acc, top) = if j == cells.len() {
        match string.end() {
            StringEnd::Finite(l) => (lz(l), j),
            StringEnd::Infinite => (mass(&cells[j - 1]), j - 1),
            StringEnd::Truncated => unreachable!("excluded above"),
        }
    } else {
        (lz(&cells[j].l), j)
    };
    if top < j {
        acc = &lz(&cells[top].l) + &acc.recip()?;
    }
    for i in (0..top).rev() {
        acc = &mass(&cells[i]) + &acc.recip()?;
        acc = &lz(&cells[i].l) + &acc.recip()?;
    }
    acc.recip()
}

/// Exact Weyl function of a finished string.
pub fn string_weyl_ratfun<T: Scalar>(string: &KreinLangerString<T>) -> Result<RationalFunction<T>> {
    if string.end().is_truncated() {
        return Err(Error::InvalidString(
            "a truncated string has no closed-form Weyl function".into(),
        ));
    }
    m_truncated_ratfun(string, string.len())
}

/// `m̃_j(z)` two ways: bottom-up continued fraction and `−c(x_j)/(z s(x_j))`
/// from propagation. At `j = κ` with an infinite tail the second route uses
/// the limit `−c'(x_{κ-1}+)/(z s'(x_{κ-1}+))`.
pub fn m_truncated<T: Scalar>(
    string: &KreinLangerString<T>,
    j: usize,
    z: Complex64,
) -> Result<(Complex64, Complex64)> {
    check_nonreal(z)?;
    check_truncation(string, j)?;
    let cells = string.cells();
    let f = |x: &T| to_float::<T, f64>(x);
    let lz = |l: &T| -z * f(l);
    let mass = |c: &Cell<T>| z * f(&c.upsilon) + f(&c.omega);
    let (mut acc, top) = match string.end() {
        StringEnd::Infinite if j == cells.len() => (mass(&cells[j - 1]), j - 1),
        StringEnd::Finite(l) if j == cells.len() => (lz(l), j),
        _ => (lz(&cells[j].l), j),
    };
    if top < j {
        acc = lz(&cells[top].l) + 1.0 / acc;
    }
    for i in (0..top).rev() {
        acc = mass(&cells[i]) + 1.0 / acc;
        acc = lz(&cells[i].l) + 1.0 / acc;
    }
    let cf = 1.0 / acc;
    let ode = if matches!(string.end(), StringEnd::Infinite) && j == cells.len() {
        let state = propagate(string, z, j)?;
        let p = state.points.last().expect("at least one cell");
        -p.c_prime_right / (z * p.s_prime_right)
    } else {
        let state = propagate(string, z, j + 1)?;
        let p = &state.points[j];
        -p.c / (z * p.s)
    };
    Ok((cf, ode))
}

/// Exact counterpart of [`m_truncated`]: both routes as rational functions.
pub fn m_truncated_exact<T: Scalar>(
    string: &KreinLangerString<T>,
    j: usize,
) -> Result<(RationalFunction<T>, RationalFunction<T>)> {
    let cf = m_truncated_ratfun(string, j)?;
    let z = Polynomial::z();
    let ode = if matches!(string.end(), StringEnd::Infinite) && j == string.len() {
        let state = propagate_polynomial(string, j)?;
        let p = state.points.last().expect("at least one cell");
        RationalFunction::new(-&p.c_prime_right, &z * &p.s_prime_right)?
    } else {
        let state = propagate_polynomial(string, j + 1)?;
        let p = &state.points[j];
        RationalFunction::new(-&p.c, &z * &p.s)?
    };
    Ok((cf, ode))
}
