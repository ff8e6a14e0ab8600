use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::Float;

use super::poly::Polynomial;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Quotient of two polynomials kept in canonical form: coprime, monic
/// denominator, and `0/1` for the zero function.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction<T> {
    num: Polynomial<T>,
    den: Polynomial<T>,
}

impl<T: Scalar> RationalFunction<T> {
    /// Builds `num/den` and reduces it.
    pub fn new(num: Polynomial<T>, den: Polynomial<T>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (mut num, _) = num.div_rem(&g)?;
        let (mut den, _) = den.div_rem(&g)?;
        let lead = den.leading().expect("nonzero").clone();
        if !lead.is_one() {
            let inv = T::one() / lead;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(Self { num, den })
    }

    pub fn zero() -> Self {
        Self {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn from_polynomial(p: Polynomial<T>) -> Self {
        Self {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn numerator(&self) -> &Polynomial<T> {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial<T> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn vanishes_at_infinity(&self) -> bool {
        self.num.degree() < self.den.degree()
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn eval_complex<F: Float>(&self, z: Complex<F>) -> Complex<F> {
        self.num.eval_complex(z) / self.den.eval_complex(z)
    }

    /// Coefficients `c_1..c_n` of `f(z) = Σ c_k z^{-k}` near infinity.
    pub fn series_at_infinity(&self, n_terms: usize) -> Result<Vec<T>> {
        if self.is_zero() {
            return Ok(vec![T::zero(); n_terms]);
        }
        if !self.vanishes_at_infinity() {
            return Err(Error::NotVanishingAtInfinity {
                num_degree: self.num.degree(),
                den_degree: self.den.degree(),
            });
        }
        // num(z) = den(z) Σ_k c_k z^{-k}; match the z^{D-k} coefficients.
        let dd = self.den.degree() as usize;
        let lead = self.den.coeff(dd);
        let mut out: Vec<T> = Vec::with_capacity(n_terms);
        for k in 1..=n_terms {
            let mut acc = if k <= dd {
                self.num.coeff(dd - k)
            } else {
                T::zero()
            };
            for j in 1..k {
                if k - j <= dd {
                    acc = acc - out[j - 1].clone() * self.den.coeff(dd + j - k);
                }
            }
            out.push(acc / lead.clone());
        }
        Ok(out)
    }
}

/// Canonical form of `num/den`.
pub fn ratfun_reduce<T: Scalar>(
    num: Polynomial<T>,
    den: Polynomial<T>,
) -> Result<RationalFunction<T>> {
    RationalFunction::new(num, den)
}

impl<T: Scalar> Add for &RationalFunction<T> {
    type Output = RationalFunction<T>;

    fn add(self, rhs: Self) -> RationalFunction<T> {
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("product of nonzero denominators")
    }
}

impl<T: Scalar> Sub for &RationalFunction<T> {
    type Output = RationalFunction<T>;

    fn sub(self, rhs: Self) -> RationalFunction<T> {
        self + &(-rhs)
    }
}

impl<T: Scalar> Mul for &RationalFunction<T> {
    type Output = RationalFunction<T>;

    fn mul(self, rhs: Self) -> RationalFunction<T> {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("product of nonzero denominators")
    }
}

impl<T: Scalar> Neg for &RationalFunction<T> {
    type Output = RationalFunction<T>;

    fn neg(self) -> RationalFunction<T> {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::scalar::ratio;
    use crate::Rational;

    fn p(c: &[i64]) -> Polynomial<Rational> {
        Polynomial::new(c.iter().map(|&x| ratio(x, 1)).collect())
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| ratio(x, 1)).collect()
    }

    #[test]
    fn reduce_cancels_common_factor() {
        let f = ratfun_reduce(p(&[0, -1, 1]), p(&[0, 1])).unwrap();
        assert_eq!(f.numerator(), &p(&[-1, 1]));
        assert_eq!(f.denominator(), &p(&[1]));
    }

    #[test]
    fn reduce_keeps_coprime_pair() {
        let f = ratfun_reduce(p(&[0, -1]), p(&[-1, 0, 1])).unwrap();
        assert_eq!(f.numerator(), &p(&[0, -1]));
        assert_eq!(f.denominator(), &p(&[-1, 0, 1]));
    }

    #[test]
    fn reduce_zero_numerator() {
        let f = ratfun_reduce(Polynomial::zero(), p(&[-3, 1])).unwrap();
        assert!(f.is_zero());
        assert_eq!(f.denominator(), &p(&[1]));
    }

    #[test]
    fn reduce_makes_denominator_monic() {
        // z / (1 - z^2) = -z / (z^2 - 1)
        let f = ratfun_reduce(p(&[0, 1]), p(&[1, 0, -1])).unwrap();
        assert_eq!(f.numerator(), &p(&[0, -1]));
        assert_eq!(f.denominator(), &p(&[-1, 0, 1]));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            ratfun_reduce(p(&[1]), Polynomial::zero()),
            Err(Error::ZeroDenominator)
        );
    }

    #[test]
    fn series_two_point() {
        let f = ratfun_reduce(p(&[0, 1]), p(&[1, 0, -1])).unwrap();
        assert_eq!(f.series_at_infinity(5).unwrap(), ints(&[-1, 0, -1, 0, -1]));
    }

    #[test]
    fn series_geometric() {
        let f = ratfun_reduce(p(&[1]), p(&[1, -1])).unwrap();
        assert_eq!(f.series_at_infinity(3).unwrap(), ints(&[-1, -1, -1]));
    }

    #[test]
    fn series_of_zero() {
        let f = RationalFunction::<Rational>::zero();
        assert_eq!(f.series_at_infinity(4).unwrap(), ints(&[0, 0, 0, 0]));
    }

    #[test]
    fn series_requires_vanishing() {
        let f = ratfun_reduce(p(&[1, 1]), p(&[2, 1])).unwrap();
        assert!(matches!(
            f.series_at_infinity(2),
            Err(Error::NotVanishingAtInfinity { .. })
        ));
    }

    #[test]
    fn arithmetic_roundtrip() {
        let a = ratfun_reduce(p(&[1]), p(&[1, -1])).unwrap();
        let b = ratfun_reduce(p(&[0, 1]), p(&[1, 0, -1])).unwrap();
        let sum = &a + &b;
        assert_eq!(&sum - &b, a);
        assert_eq!((&a * &b).checked_div(&b).unwrap(), a);
    }
}
