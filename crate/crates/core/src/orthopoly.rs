//! Jacobi coefficients and monic orthogonal polynomials of both kinds.
//!
//! Only the monic rescalings `p_n`, `q_n` are materialised. Orthonormal
//! quantities enter through their squares and ratios, which stay rational.

use crate::error::{Error, Result};
use crate::exact_core::linalg::determinant;
use crate::exact_core::poly::Polynomial;
use crate::exact_core::scalar::{sign, Scalar};
use crate::moments::{HankelLedger, MomentSequence, Shift};

/// Tridiagonal Jacobi matrix with diagonal `a_0..a_{n}` and squared
/// off-diagonal `b_0²..b_{n-1}²`.
///
/// Off-diagonal entries are taken positive, so `b_n = sqrt(b_n²)`.
/// `mass` is `s_0`, the total mass of the spectral measure, which the
/// Weyl function carries as an overall factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JacobiModel<T> {
    a: Vec<T>,
    b2: Vec<T>,
    mass: T,
}

impl<T: Scalar> JacobiModel<T> {
    pub fn new(a: Vec<T>, b2: Vec<T>, mass: T) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::MismatchedInputs("empty diagonal".into()));
        }
        if b2.len() + 1 != a.len() {
            return Err(Error::MismatchedInputs(format!(
                "{} diagonal entries need {} off-diagonal entries, got {}",
                a.len(),
                a.len() - 1,
                b2.len()
            )));
        }
        if let Some((n, b)) = b2.iter().enumerate().find(|(_, b)| !b.is_positive()) {
            return Err(Error::NotPositive {
                n,
                value: b.to_string(),
            });
        }
        if !mass.is_positive() {
            return Err(Error::InvalidMoments(format!(
                "mass {mass} must be positive"
            )));
        }
        Ok(Self { a, b2, mass })
    }

    pub fn a(&self) -> &[T] {
        &self.a
    }

    pub fn b2(&self) -> &[T] {
        &self.b2
    }

    pub fn mass(&self) -> &T {
        &self.mass
    }

    /// Number of diagonal entries.
    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Leading `n×n` block.
    pub fn truncate(&self, n: usize) -> Result<Self> {
        if n == 0 || n > self.a.len() {
            return Err(Error::OutOfRange {
                index: n,
                max: self.a.len(),
            });
        }
        Ok(Self {
            a: self.a[..n].to_vec(),
            b2: self.b2[..n - 1].to_vec(),
            mass: self.mass.clone(),
        })
    }

    /// `tr J_n = a_0 + … + a_n`.
    pub fn trace(&self, n: usize) -> T {
        self.a[..=n].iter().cloned().fold(T::zero(), |x, y| x + y)
    }
}

/// Checks `Δ_{0,m} > 0` for `0 ≤ m ≤ n`.
pub(crate) fn require_strictly_positive<T: Scalar>(
    ledger: &HankelLedger<T>,
    n: usize,
) -> Result<()> {
    for m in 0..=n {
        let d = ledger.d0(m as isize)?;
        if d.is_negative() {
            return Err(Error::NotPositive {
                n: m,
                value: d.to_string(),
            });
        }
        if d.is_zero() {
            return Err(Error::RankExceeded {
                requested: n,
                rank: m,
            });
        }
    }
    Ok(())
}

/// Recurrence coefficients `a_0..a_{n_max}`, `b_0²..b_{n_max-1}²`.
pub fn jacobi_from_moments<T: Scalar>(
    s: &MomentSequence<T>,
    n_max: usize,
) -> Result<JacobiModel<T>> {
    s.require(2 * n_max + 1)?;
    let ledger = HankelLedger::build(s, n_max);
    jacobi_from_ledger(&ledger, n_max, s.s0().clone())
}

/// Deepest Jacobi model the prefix supports, capped at `N - 1` for rank `N`.
pub fn jacobi_from_moments_max<T: Scalar>(s: &MomentSequence<T>) -> Result<JacobiModel<T>> {
    if s.len() < 2 {
        return Err(Error::InsufficientMoments {
            needed: 1,
            available: s.len(),
        });
    }
    let data_depth = (s.len() - 2) / 2;
    let ledger = HankelLedger::build(s, data_depth);
    let mut n = data_depth;
    for m in 1..=data_depth {
        let d = ledger.d0(m as isize)?;
        if d.is_negative() {
            return Err(Error::NotPositive {
                n: m,
                value: d.to_string(),
            });
        }
        if d.is_zero() {
            n = m - 1;
            break;
        }
    }
    jacobi_from_ledger(&ledger, n, s.s0().clone())
}

pub(crate) fn jacobi_from_ledger<T: Scalar>(
    ledger: &HankelLedger<T>,
    n_max: usize,
    mass: T,
) -> Result<JacobiModel<T>> {
    require_strictly_positive(ledger, n_max)?;
    let mut a = Vec::with_capacity(n_max + 1);
    let mut prev = T::zero();
    for n in 0..=n_max as isize {
        let cur = ledger.d0_primed(n)? / ledger.d0(n)?;
        a.push(cur.clone() - prev);
        prev = cur;
    }
    let mut b2 = Vec::with_capacity(n_max);
    for n in 0..n_max as isize {
        let d = ledger.d0(n)?;
        b2.push(ledger.d0(n - 1)? * ledger.d0(n + 1)? / (d.clone() * d));
    }
    JacobiModel::new(a, b2, mass)
}

/// `(p_0..p_n, q_0..q_n)`.
pub type PolynomialFamilies<T> = (Vec<Polynomial<T>>, Vec<Polynomial<T>>);

/// Monic polynomials `p_0..p_n` and `q_0..q_n` from the three-term recurrence.
pub fn recurrence_polys<T: Scalar>(
    jacobi: &JacobiModel<T>,
    n: usize,
) -> Result<PolynomialFamilies<T>> {
    if n > jacobi.len() {
        return Err(Error::OutOfRange {
            index: n,
            max: jacobi.len(),
        });
    }
    let z = Polynomial::z();
    let mut p = vec![Polynomial::one()];
    let mut q = vec![Polynomial::zero()];
    for k in 0..n {
        let shift = &z - &Polynomial::constant(jacobi.a[k].clone());
        let mut pn = &shift * &p[k];
        let mut qn = &shift * &q[k];
        if k == 0 {
            qn = Polynomial::constant(jacobi.mass.clone());
        } else {
            let b2 = &jacobi.b2[k - 1];
            pn = &pn - &p[k - 1].scale(b2);
            qn = &qn - &q[k - 1].scale(b2);
        }
        p.push(pn);
        q.push(qn);
    }
    Ok((p, q))
}

/// Bordered-determinant formula: the moment rows `s_{i+j}` (`i < n`) with
/// the last row `last[k]`, divided by `Δ_{0,n-1}`.
fn bordered<T: Scalar>(
    s: &MomentSequence<T>,
    n: usize,
    last: impl Fn(usize) -> Polynomial<T>,
) -> Result<Polynomial<T>> {
    if n > 0 {
        s.require(2 * n - 1)?;
    }
    let rows: Vec<Vec<T>> = (0..n)
        .map(|i| (0..=n).map(|j| s.as_slice()[i + j].clone()).collect())
        .collect();
    let norm = determinant(&rows.iter().map(|r| r[..n].to_vec()).collect::<Vec<_>>());
    if !norm.is_positive() {
        return Err(Error::RankExceeded {
            requested: n,
            rank: n - 1,
        });
    }
    let mut acc = Polynomial::zero();
    for k in 0..=n {
        let minor: Vec<Vec<T>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != k)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let mut c = determinant(&minor);
        if (n + k) % 2 == 1 {
            c = -c;
        }
        acc = &acc + &last(k).scale(&c);
    }
    Ok(acc.scale(&(T::one() / norm)))
}

/// `p_n` by the bordered determinant with last row `1, z, …, z^n`.
pub fn first_kind_determinant<T: Scalar>(s: &MomentSequence<T>, n: usize) -> Result<Polynomial<T>> {
    bordered(s, n, |k| Polynomial::monomial(T::one(), k))
}

/// `q_n` by the bordered determinant with last row `R_{n,0}, …, R_{n,n}`,
/// `R_{n,k}(z) = Σ_{m<k} s_{k-1-m} z^m`.
pub fn second_kind_determinant<T: Scalar>(
    s: &MomentSequence<T>,
    n: usize,
) -> Result<Polynomial<T>> {
    bordered(s, n, |k| {
        Polynomial::new((0..k).map(|m| s.as_slice()[k - 1 - m].clone()).collect())
    })
}

fn recurrence_at<T: Scalar>(
    s: &MomentSequence<T>,
    n: usize,
) -> Result<(Polynomial<T>, Polynomial<T>)> {
    if n == 0 {
        return Ok((Polynomial::one(), Polynomial::zero()));
    }
    let jacobi = jacobi_from_moments(s, n - 1)?;
    let (mut p, mut q) = recurrence_polys(&jacobi, n)?;
    Ok((p.swap_remove(n), q.swap_remove(n)))
}

/// Monic `p_n`, computed by determinant and by recurrence and checked equal.
pub fn first_kind<T: Scalar>(s: &MomentSequence<T>, n: usize) -> Result<Polynomial<T>> {
    let det = first_kind_determinant(s, n)?;
    let (rec, _) = recurrence_at(s, n)?;
    if det != rec {
        return Err(Error::Inconsistent(format!(
            "p_{n}: determinant {det} vs recurrence {rec}"
        )));
    }
    Ok(det)
}

/// `q_n` with the rescaling of `p_n`, computed both ways and checked equal.
pub fn second_kind<T: Scalar>(s: &MomentSequence<T>, n: usize) -> Result<Polynomial<T>> {
    let det = second_kind_determinant(s, n)?;
    let (_, rec) = recurrence_at(s, n)?;
    if det != rec {
        return Err(Error::Inconsistent(format!(
            "q_{n}: determinant {det} vs recurrence {rec}"
        )));
    }
    Ok(det)
}

/// `p_0..p_n`, `q_0..q_n` and the squared norms `Δ_{0,k}/Δ_{0,k-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthoPolyPair<T> {
    pub p: Vec<Polynomial<T>>,
    pub q: Vec<Polynomial<T>>,
    pub norms2: Vec<T>,
}

/// Polynomials through index `n`; norms through the last index with
/// `Δ_{0,k}` available and positive.
pub fn ortho_polys<T: Scalar>(s: &MomentSequence<T>, n: usize) -> Result<OrthoPolyPair<T>> {
    let (p, q) = if n == 0 {
        (vec![Polynomial::one()], vec![Polynomial::zero()])
    } else {
        let jacobi = jacobi_from_moments(s, n - 1)?;
        recurrence_polys(&jacobi, n)?
    };
    let ledger = HankelLedger::build(s, n);
    let mut norms2 = Vec::new();
    for k in 0..=n as isize {
        match ledger.get(Shift::Zero, k) {
            Some(d) if d.is_positive() => norms2.push(d.clone() / ledger.d0(k - 1)?),
            _ => break,
        }
    }
    Ok(OrthoPolyPair { p, q, norms2 })
}

/// Values of the orthonormal polynomials at zero, as rational squares,
/// ratios and signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryValuesZero<T> {
    /// `P_n(0)²`
    pub p0_sq: Vec<T>,
    /// `Q_n(0)²`
    pub q0_sq: Vec<T>,
    /// `Q_n(0)/P_n(0)`, absent when `P_n(0) = 0`.
    pub ratio: Vec<Option<T>>,
    /// Sign of `P_n(0)`.
    pub sign_p: Vec<i8>,
}

pub fn boundary_values_zero<T: Scalar>(
    s: &MomentSequence<T>,
    n_max: usize,
) -> Result<BoundaryValuesZero<T>> {
    s.require(2 * n_max)?;
    let ledger = HankelLedger::build(s, n_max);
    require_strictly_positive(&ledger, n_max)?;
    let mut out = BoundaryValuesZero {
        p0_sq: Vec::new(),
        q0_sq: Vec::new(),
        ratio: Vec::new(),
        sign_p: Vec::new(),
    };
    for n in 0..=n_max as isize {
        let denom = ledger.d0(n - 1)? * ledger.d0(n)?;
        let d1 = ledger.d1(n)?;
        let dm1 = ledger.dm1(n)?;
        out.p0_sq.push(d1.clone() * d1.clone() / denom.clone());
        out.q0_sq.push(dm1.clone() * dm1.clone() / denom);
        out.ratio.push((!d1.is_zero()).then(|| dm1 / d1.clone()));
        let sg = sign(&d1);
        out.sign_p.push(if n % 2 == 0 { sg } else { -sg });
    }
    Ok(out)
}

/// `b_n²·(P_n Q_{n+1} − P_{n+1} Q_n)² − 1`, computed exactly from the monic
/// rescalings. Zero whenever the data are consistent.
pub fn wronskian_residual<T: Scalar>(s: &MomentSequence<T>, n: usize) -> Result<T> {
    let jacobi = jacobi_from_moments(s, n)?;
    let (p, q) = recurrence_polys(&jacobi, n + 1)?;
    let w = &(&p[n] * &q[n + 1]) - &(&p[n + 1] * &q[n]);
    if w.degree() > 0 {
        return Err(Error::Inconsistent(format!(
            "Wronskian {w} is not constant"
        )));
    }
    let w = w.coeff(0);
    let ledger = HankelLedger::build(s, n);
    let ratio = ledger.d0(n as isize - 1)? / ledger.d0(n as isize)?;
    Ok(ratio.clone() * ratio * w.clone() * w - T::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::scalar::ratio;
    use crate::Rational;

    fn ints(v: &[i64]) -> MomentSequence<Rational> {
        MomentSequence::new(v.iter().map(|&n| ratio(n, 1)).collect()).unwrap()
    }

    fn poly(c: &[i64]) -> Polynomial<Rational> {
        Polynomial::new(c.iter().map(|&x| ratio(x, 1)).collect())
    }

    fn catalan() -> MomentSequence<Rational> {
        ints(&[1, 0, 1, 0, 2, 0, 5, 0, 14, 0, 42])
    }

    fn stieltjes_example() -> MomentSequence<Rational> {
        MomentSequence::new(vec![
            ratio(1, 1),
            ratio(3, 2),
            ratio(5, 2),
            ratio(9, 2),
            ratio(17, 2),
        ])
        .unwrap()
    }

    #[test]
    fn jacobi_examples() {
        let j = jacobi_from_moments(&ints(&[1, 0, 1, 0, 2, 0, 5]), 2).unwrap();
        assert_eq!(j.a(), &[ratio(0, 1), ratio(0, 1), ratio(0, 1)]);
        assert_eq!(j.b2(), &[ratio(1, 1), ratio(1, 1)]);

        let j = jacobi_from_moments_max(&ints(&[1, 0, 1, 0, 1])).unwrap();
        assert_eq!(j.a(), &[ratio(0, 1), ratio(0, 1)]);
        assert_eq!(j.b2(), &[ratio(1, 1)]);

        let j = jacobi_from_moments_max(&ints(&[1, 1, 1])).unwrap();
        assert_eq!(j.a(), &[ratio(1, 1)]);
        assert!(j.b2().is_empty());
    }

    #[test]
    fn jacobi_past_rank_is_rejected() {
        assert_eq!(
            jacobi_from_moments(&ints(&[1, 0, 1, 0, 1, 0]), 2),
            Err(Error::RankExceeded {
                requested: 2,
                rank: 2
            })
        );
    }

    #[test]
    fn jacobi_is_scale_invariant() {
        let s = ints(&[1, 0, 1]);
        let doubled = crate::moments::scale(&s, &ratio(2, 1)).unwrap();
        let (a, b) = (
            jacobi_from_moments_max(&s).unwrap(),
            jacobi_from_moments_max(&doubled).unwrap(),
        );
        assert_eq!(a.a(), b.a());
        assert_eq!(a.b2(), b.b2());
    }

    #[test]
    fn first_kind_examples() {
        assert_eq!(first_kind(&catalan(), 2).unwrap(), poly(&[-1, 0, 1]));
        assert_eq!(first_kind(&catalan(), 0).unwrap(), poly(&[1]));
        let s = stieltjes_example();
        assert_eq!(
            first_kind(&s, 1).unwrap(),
            Polynomial::new(vec![ratio(-3, 2), ratio(1, 1)])
        );
    }

    #[test]
    fn second_kind_examples() {
        assert_eq!(second_kind(&catalan(), 2).unwrap(), poly(&[0, 1]));
        assert!(second_kind(&catalan(), 0).unwrap().is_zero());
        let s = crate::moments::scale(&stieltjes_example(), &ratio(3, 1)).unwrap();
        assert_eq!(second_kind(&s, 1).unwrap(), poly(&[3]));
    }

    #[test]
    fn polynomial_at_rank() {
        // p_N exists for rank N and vanishes on the support
        let s = ints(&[1, 0, 1, 0, 1]);
        assert_eq!(first_kind(&s, 2).unwrap(), poly(&[-1, 0, 1]));
    }

    #[test]
    fn boundary_values_catalan() {
        let bv = boundary_values_zero(&catalan(), 4).unwrap();
        let expect = |v: &[i64]| v.iter().map(|&x| ratio(x, 1)).collect::<Vec<_>>();
        assert_eq!(bv.p0_sq, expect(&[1, 0, 1, 0, 1]));
        assert_eq!(bv.q0_sq, expect(&[0, 1, 0, 1, 0]));
        assert_eq!(bv.ratio[1], None);
        assert_eq!(bv.sign_p, vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn boundary_ratio_matches_polynomials() {
        let s = stieltjes_example();
        let bv = boundary_values_zero(&s, 1).unwrap();
        assert_eq!(bv.ratio[1], Some(ratio(-2, 3)));
        let p = first_kind(&s, 1).unwrap();
        let q = second_kind(&s, 1).unwrap();
        let zero = ratio(0, 1);
        assert_eq!(q.eval(&zero) / p.eval(&zero), ratio(-2, 3));
    }

    #[test]
    fn wronskian_examples() {
        assert_eq!(wronskian_residual(&catalan(), 0).unwrap(), ratio(0, 1));
        assert_eq!(wronskian_residual(&catalan(), 1).unwrap(), ratio(0, 1));
        assert_eq!(
            wronskian_residual(&ints(&[1, 0, 1, 0, 1]), 0).unwrap(),
            ratio(0, 1)
        );
    }

    #[test]
    fn trace_equals_primed_ratio_and_root_sum() {
        let s = stieltjes_example();
        let j = jacobi_from_moments_max(&s).unwrap();
        let ledger = HankelLedger::build(&s, 1);
        let n = j.len() - 1;
        assert_eq!(
            j.trace(n),
            ledger.d0_primed(n as isize).unwrap() / ledger.d0(n as isize).unwrap()
        );
        let p = first_kind(&s, n + 1).unwrap();
        assert_eq!(j.trace(n), -p.coeff(n));
    }

    #[test]
    fn norms() {
        let pair = ortho_polys(&stieltjes_example(), 2).unwrap();
        assert_eq!(pair.norms2, vec![ratio(1, 1), ratio(1, 4)]);
        assert_eq!(pair.p.len(), 3);
    }
}
