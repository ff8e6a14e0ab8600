use num_traits::Float;

use super::poly::Polynomial;
use super::scalar::{sign, to_float, two, Scalar};

/// Sturm chain of a squarefree polynomial: `p, p', -rem(p, p'), …`.
#[derive(Clone, Debug)]
pub struct SturmChain<T> {
    chain: Vec<Polynomial<T>>,
}

impl<T: Scalar> SturmChain<T> {
    pub fn new(p: &Polynomial<T>) -> Self {
        let mut chain = vec![p.clone()];
        let mut next = p.derivative();
        while !next.is_zero() {
            let prev = chain.last().expect("chain starts nonempty");
            let (_, r) = prev.div_rem(&next).expect("divisor is nonzero");
            chain.push(next);
            next = -r;
        }
        Self { chain }
    }

    pub fn polynomial(&self) -> &Polynomial<T> {
        &self.chain[0]
    }

    /// Sign changes of the chain evaluated at `x`, zeros skipped.
    pub fn sign_changes(&self, x: &T) -> usize {
        let mut last = 0i8;
        let mut changes = 0;
        for p in &self.chain {
            let s = sign(&p.eval(x));
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count_roots(&self, lo: &T, hi: &T) -> usize {
        self.sign_changes(lo).saturating_sub(self.sign_changes(hi))
    }

    /// Disjoint intervals `(lo, hi]`, each holding exactly one real root, in
    /// increasing order.
    pub fn isolate(&self) -> Vec<(T, T)> {
        let b = cauchy_bound(self.polynomial());
        let mut out = Vec::new();
        let mut stack = vec![(-b.clone(), b)];
        while let Some((lo, hi)) = stack.pop() {
            match self.count_roots(&lo, &hi) {
                0 => {}
                1 => out.push((lo, hi)),
                _ => {
                    let mid = (lo.clone() + hi.clone()) / two::<T>();
                    stack.push((mid.clone(), hi));
                    stack.push((lo, mid));
                }
            }
        }
        out.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("ordered field"));
        out
    }

    /// Shrinks an isolating interval `(lo, hi]` by bisection until its width
    /// is at most `tol`. Returns the exact root when a midpoint hits it.
    pub fn refine(&self, mut lo: T, mut hi: T, tol: &T) -> (T, T) {
        let p = self.polynomial();
        if p.eval(&hi).is_zero() {
            return (hi.clone(), hi);
        }
        while hi.clone() - lo.clone() > *tol {
            let mid = (lo.clone() + hi.clone()) / two::<T>();
            if p.eval(&mid).is_zero() {
                return (mid.clone(), mid);
            }
            if self.count_roots(&lo, &mid) == 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (lo, hi)
    }
}

/// `1 + max |c_k / c_n|`, a bound on the modulus of every root.
pub fn cauchy_bound<T: Scalar>(p: &Polynomial<T>) -> T {
    let lead = match p.leading() {
        Some(c) => c.abs(),
        None => return T::one(),
    };
    let n = p.coeffs().len() - 1;
    let max = p.coeffs()[..n]
        .iter()
        .map(|c| c.abs() / lead.clone())
        .fold(T::zero(), |m, c| if c > m { c } else { m });
    T::one() + max
}

/// Real roots of a squarefree polynomial as floats, each refined to `tol`.
pub fn real_roots<T: Scalar, F: Float>(p: &Polynomial<T>, tol: &T) -> Vec<F> {
    let chain = SturmChain::new(p);
    chain
        .isolate()
        .into_iter()
        .map(|(lo, hi)| {
            let (lo, hi) = chain.refine(lo, hi, tol);
            (to_float::<T, F>(&lo) + to_float::<T, F>(&hi)) / (F::one() + F::one())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::scalar::ratio;
    use crate::Rational;

    fn p(c: &[i64]) -> Polynomial<Rational> {
        Polynomial::new(c.iter().map(|&x| ratio(x, 1)).collect())
    }

    #[test]
    fn counts_roots_of_quadratic() {
        let chain = SturmChain::new(&p(&[-1, 0, 1]));
        assert_eq!(chain.count_roots(&ratio(-2, 1), &ratio(2, 1)), 2);
        assert_eq!(chain.count_roots(&ratio(0, 1), &ratio(2, 1)), 1);
        assert_eq!(chain.count_roots(&ratio(-1, 1), &ratio(0, 1)), 0);
    }

    #[test]
    fn isolates_clustered_roots() {
        // (z - 1/1000)(z + 1/1000)(z - 3)
        let a = &(&p(&[-1, 1000]) * &p(&[1, 1000])) * &p(&[-3, 1]);
        let roots: Vec<f64> = real_roots(&a, &ratio(1, 1_000_000_000_000_000));
        assert_eq!(roots.len(), 3);
        let expected = [-1e-3, 1e-3, 3.0];
        for (r, e) in roots.iter().zip(expected) {
            assert!((r - e).abs() < 1e-14, "{r} vs {e}");
        }
    }

    #[test]
    fn irrational_roots_to_tolerance() {
        let roots: Vec<f64> = real_roots(&p(&[-2, 0, 1]), &ratio(1, 1_000_000_000_000_000));
        assert!((roots[0] + 2f64.sqrt()).abs() < 1e-14);
        assert!((roots[1] - 2f64.sqrt()).abs() < 1e-14);
    }
}
