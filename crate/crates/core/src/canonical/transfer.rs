use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact_core::scalar::{to_float, Scalar};
use crate::jacobi_weyl::check_nonreal;

use super::angle::AngleData;
use super::hamiltonian::{Extent, HamburgerHamiltonian, Interval};

/// `[[U_11, U_12], [U_21, U_22]]`.
pub type TransferMatrix = [[Complex64; 2]; 2];

pub const IDENTITY: TransferMatrix = [
    [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
    [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
];

fn matmul(a: &TransferMatrix, b: &TransferMatrix) -> TransferMatrix {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn determinant(u: &TransferMatrix) -> Complex64 {
    u[0][0] * u[1][1] - u[0][1] * u[1][0]
}

/// Transfer matrix across one finite interval of length `ℓ` and angle `θ`:
/// `[[1 − zℓ cos θ sin θ, −zℓ sin²θ], [zℓ cos²θ, 1 + zℓ cos θ sin θ]]`.
fn interval_factor<T: Scalar>(length: &T, angle: &AngleData<T>, z: Complex64) -> TransferMatrix {
    let (sin2, cos_sin, cos2) = angle.trig();
    let zl = z * to_float::<T, f64>(length);
    let one = Complex64::new(1.0, 0.0);
    [
        [
            one - zl * to_float::<T, f64>(&cos_sin),
            -zl * to_float::<T, f64>(&sin2),
        ],
        [
            zl * to_float::<T, f64>(&cos2),
            one + zl * to_float::<T, f64>(&cos_sin),
        ],
    ]
}

fn finite_length<T>(iv: &Interval<T>, index: usize, max: usize) -> Result<&T> {
    iv.length.finite().ok_or(Error::OutOfRange { index, max })
}

fn check_interval<T: Scalar>(h: &HamburgerHamiltonian<T>, n: usize) -> Result<()> {
    if n < h.len() {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            index: n,
            max: h.len() - 1,
        })
    }
}

/// Index of the last interval with finite length.
fn last_finite<T: Scalar>(h: &HamburgerHamiltonian<T>) -> Option<usize> {
    match h.intervals().last()?.length {
        Extent::Finite(_) => Some(h.len() - 1),
        Extent::Infinite => h.len().checked_sub(2),
    }
}

/// `U(x_n)`: the ordered product of the factors of intervals `from..=n`,
/// later intervals on the left.
fn product<T: Scalar>(
    h: &HamburgerHamiltonian<T>,
    from: usize,
    n: usize,
    z: Complex64,
) -> Result<TransferMatrix> {
    let max = last_finite(h).unwrap_or(0);
    let mut u = IDENTITY;
    for k in from..=n {
        let iv = h
            .intervals()
            .get(k)
            .ok_or(Error::OutOfRange { index: n, max })?;
        let f = interval_factor(finite_length(iv, n, max)?, &iv.angle, z);
        u = matmul(&f, &u);
    }
    Ok(u)
}

/// Transfer matrix from `0` to `x_n`, the right end of interval `n`.
pub fn transfer_matrix<T: Scalar>(
    h: &HamburgerHamiltonian<T>,
    z: Complex64,
    n: usize,
) -> Result<TransferMatrix> {
    product(h, 0, n, z)
}

/// `U_11/U_12` at `x_n`: the Weyl function of the Hamiltonian cut at `x_n`
/// and continued by `H_0`.
pub fn weyl_principal<T: Scalar>(
    h: &HamburgerHamiltonian<T>,
    z: Complex64,
    n: usize,
) -> Result<Complex64> {
    check_nonreal(z)?;
    let u = transfer_matrix(h, z, n)?;
    Ok(u[0][0] / u[0][1])
}

/// Row vector `(p, q)` whose ratio is the Weyl function of everything to
/// the right of the finite intervals: `(1, 0)` for `H_0`, `(cot θ, 1)` for a
/// final infinite interval.
fn end_vector<T: Scalar>(h: &HamburgerHamiltonian<T>) -> (Complex64, Complex64) {
    match h.intervals().last() {
        Some(Interval {
            length: Extent::Infinite,
            angle,
        }) => {
            let cot = angle.cot().map(to_float::<T, f64>).unwrap_or(0.0);
            (Complex64::new(cot, 0.0), Complex64::new(1.0, 0.0))
        }
        _ => (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
    }
}

/// Weyl function `m̃_n` of the Hamiltonian restricted to `[x_{n-1}, ∞)`,
/// by transfer matrices.
///
/// `n = 0` gives the full Weyl function. A truncated Hamiltonian is treated
/// as continued by `H_0` after its last listed interval.
pub fn weyl_tail<T: Scalar>(
    h: &HamburgerHamiltonian<T>,
    z: Complex64,
    n: usize,
) -> Result<Complex64> {
    check_nonreal(z)?;
    check_interval(h, n)?;
    let (p, q) = end_vector(h);
    let Some(last) = last_finite(h).filter(|&last| n <= last) else {
        return Ok(p / q);
    };
    let u = product(h, n, last, z)?;
    Ok((p * u[0][0] + q * u[1][0]) / (p * u[0][1] + q * u[1][1]))
}

/// Full Weyl function of a finished Hamiltonian.
pub fn weyl_function<T: Scalar>(h: &HamburgerHamiltonian<T>, z: Complex64) -> Result<Complex64> {
    if h.is_truncated() {
        return Err(Error::InvalidHamiltonian(
            "a truncated Hamiltonian has no full Weyl function".into(),
        ));
    }
    weyl_tail(h, z, 0)
}

/// `m̃_n` by the interval-by-interval recursion
/// `m̃_k = ℓ_k z + m̃_{k+1}` on zero-mod-π intervals and
/// `m̃_k = cot θ_k + 1/(−ℓ_k sin²θ_k z + 1/(m̃_{k+1} − cot θ_k))` otherwise.
///
/// Values are carried as projective pairs so that `m̃ = ∞` past a cut is exact.
pub fn weyl_tail_recursion<T: Scalar>(
    h: &HamburgerHamiltonian<T>,
    z: Complex64,
    n: usize,
) -> Result<Complex64> {
    check_nonreal(z)?;
    check_interval(h, n)?;
    let (mut p, mut q) = end_vector(h);
    let last = last_finite(h).filter(|&last| n <= last).unwrap_or(0);
    for k in (n..=last)
        .rev()
        .filter(|&k| h.intervals()[k].length.finite().is_some())
    {
        let iv = &h.intervals()[k];
        let l = to_float::<T, f64>(iv.length.finite().expect("finite below the last"));
        match &iv.angle {
            AngleData::ZeroModPi { .. } => {
                p += z * l * q;
            }
            AngleData::Cot { cot, .. } => {
                let c = to_float::<T, f64>(cot);
                let (sin2, _, _) = iv.angle.trig();
                let a = -z * l * to_float::<T, f64>(&sin2);
                // m − c, then 1/·, then a + ·, then 1/·, then c + ·.
                let (p1, q1) = (p - c * q, q);
                let (p2, q2) = (q1 + a * p1, p1);
                let (p3, q3) = (q2, p2);
                p = p3 + c * q3;
                q = q3;
            }
        }
    }
    Ok(p / q)
}
