use crate::error::{Error, Result};
use crate::exact_core::ratfun::RationalFunction;
use crate::exact_core::scalar::Scalar;
use crate::strings::{Cell, KreinLangerString, StringEnd};

fn not_herglotz(what: String) -> Error {
    Error::NotHerglotz(what)
}

/// Splits a rational Herglotz function vanishing at infinity into the
/// continued fraction `f = 1/(−l_0 z + 1/(ω_0 + υ_0 z + 1/(−l_1 z + …)))`.
///
/// The result is a finished string: a `Finite` end when the expansion stops
/// after a length, an `Infinite` end when it stops after a mass/dipole pair.
pub fn euclid_decompose<T: Scalar>(f: &RationalFunction<T>) -> Result<KreinLangerString<T>> {
    if f.is_zero() {
        return Err(not_herglotz("the zero function has no string".into()));
    }
    if !f.vanishes_at_infinity() {
        return Err(Error::NotVanishingAtInfinity {
            num_degree: f.numerator().degree(),
            den_degree: f.denominator().degree(),
        });
    }
    let mut num = f.numerator().clone();
    let mut den = f.denominator().clone();
    let mut cells = Vec::new();
    loop {
        // −den = (l z + c)·num + r, so 1/f = −l z − (c·num + r)/num.
        let (q, r) = (-&den).div_rem(&num)?;
        if q.degree() != 1 {
            return Err(not_herglotz(format!(
                "length step {} has a quotient of degree {}",
                cells.len(),
                q.degree()
            )));
        }
        let l = q.coeff(1);
        if !l.is_positive() {
            return Err(not_herglotz(format!(
                "length l_{} = {l} is not positive",
                cells.len()
            )));
        }
        let rest = &num.scale(&q.coeff(0)) + &r;
        if rest.is_zero() {
            return KreinLangerString::new(cells, StringEnd::Finite(l));
        }
        // −num = (ω + υ z)·rest + r2.
        let (q2, r2) = (-&num).div_rem(&rest)?;
        if q2.degree() > 1 {
            return Err(not_herglotz(format!(
                "mass step {} has a quotient of degree {}",
                cells.len(),
                q2.degree()
            )));
        }
        let omega = q2.coeff(0);
        let upsilon = q2.coeff(1);
        if upsilon.is_negative() {
            return Err(not_herglotz(format!(
                "dipole υ_{} = {upsilon} is negative",
                cells.len()
            )));
        }
        if omega.is_zero() && upsilon.is_zero() {
            return Err(not_herglotz(format!("point {} is empty", cells.len())));
        }
        cells.push(Cell::new(l, omega, upsilon));
        if r2.is_zero() {
            return KreinLangerString::new(cells, StringEnd::Infinite);
        }
        num = r2;
        den = rest;
    }
}
