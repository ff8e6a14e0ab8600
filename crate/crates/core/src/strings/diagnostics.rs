use crate::error::{Error, Result};
use crate::exact_core::scalar::Scalar;
use crate::moments::{HankelLedger, MomentSequence};

use super::construct::kl_index_map;
use super::model::{KreinLangerString, StringEnd};
use super::weyl::{m_truncated_ratfun, string_weyl_ratfun};

/// String-side value minus determinant-side value for the three trace
/// identities at point `j`; all vanish for a string built from the moments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceResiduals<T> {
    /// `x_j − Δ_{2,k(j)}/Δ_{0,k(j)}`.
    pub position: T,
    /// `ω([0, x_j)) + Δ_{-1,k(j)}/Δ_{1,k(j)}`.
    pub mass: T,
    /// `∫_0^{x_j} w² + Σ_{i<j} υ_i + Δ_{-2,k(j)}/Δ_{0,k(j)}`.
    pub quadratic: T,
}

impl<T: Scalar> TraceResiduals<T> {
    pub fn all_zero(&self) -> bool {
        self.position.is_zero() && self.mass.is_zero() && self.quadratic.is_zero()
    }
}

pub fn trace_sums<T: Scalar>(
    s: &MomentSequence<T>,
    string: &KreinLangerString<T>,
    j: usize,
) -> Result<TraceResiduals<T>> {
    if j >= string.len() {
        return Err(Error::OutOfRange {
            index: j,
            max: string.len().saturating_sub(1),
        });
    }
    let ks = kl_index_map(s, j)?;
    let Some(&k) = ks.get(j) else {
        return Err(Error::MismatchedInputs(format!(
            "the moments determine only {} points, point {j} was requested",
            ks.len()
        )));
    };
    let ledger = HankelLedger::build(s, k);
    let ki = k as isize;
    let d0 = ledger.d0(ki)?;
    let cells = &string.cells()[..=j];
    let x = string.positions()[j].clone();
    let mut w = T::zero();
    let mut quad = T::zero();
    for (i, c) in cells.iter().enumerate() {
        quad = quad + c.l.clone() * w.clone() * w.clone();
        if i < j {
            quad = quad + c.upsilon.clone();
            w = w + c.omega.clone();
        }
    }
    Ok(TraceResiduals {
        position: x - ledger.d2(ki)? / d0.clone(),
        mass: w + ledger.dm1(ki)? / ledger.d1(ki)?,
        quadratic: quad + ledger.dm2(ki)? / d0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// Infinite tail: the string is singular and the moment problem determinate.
    Singular,
    /// The computed partial sums stay consistent with convergence.
    RegularSoFar,
    /// The increments of the partial sums do not decay.
    DivergenceDetected,
}

/// Partial sums of `L`, `∫w²` and `Συ` after each listed cell.
///
/// `trajectory[n]` is `Σ_{j≤n} (l_j (1 + w_{j-1}²) + υ_j)`, the partial sum
/// of the series whose divergence characterizes singular strings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityReport<T> {
    pub length: Vec<T>,
    pub w_squared: Vec<T>,
    pub dipoles: Vec<T>,
    pub trajectory: Vec<T>,
    pub verdict: Verdict,
    /// `Some(true)` for finished strings (finite rank), `None` otherwise.
    pub determinate: Option<bool>,
}

/// Divergence trajectory through the first `depth` cells.
///
/// Finished strings get exact verdicts. For truncated ones divergence is
/// reported when the later half of the increments sums to at least the
/// earlier half.
pub fn singularity_diagnostic<T: Scalar>(
    string: &KreinLangerString<T>,
    depth: usize,
) -> SingularityReport<T> {
    let n = depth.min(string.len());
    let (mut length, mut w_squared, mut dipoles, mut trajectory) = (
        Vec::with_capacity(n),
        Vec::with_capacity(n),
        Vec::with_capacity(n),
        Vec::with_capacity(n),
    );
    let (mut l_sum, mut w2_sum, mut u_sum) = (T::zero(), T::zero(), T::zero());
    let mut w = T::zero();
    let mut terms = Vec::with_capacity(n);
    for c in &string.cells()[..n] {
        let w2 = c.l.clone() * w.clone() * w.clone();
        terms.push(c.l.clone() + w2.clone() + c.upsilon.clone());
        l_sum = l_sum + c.l.clone();
        w2_sum = w2_sum + w2;
        u_sum = u_sum + c.upsilon.clone();
        w = w + c.omega.clone();
        trajectory.push(l_sum.clone() + w2_sum.clone() + u_sum.clone());
        length.push(l_sum.clone());
        w_squared.push(w2_sum.clone());
        dipoles.push(u_sum.clone());
    }
    let (verdict, determinate) = match string.end() {
        StringEnd::Infinite => (Verdict::Singular, Some(true)),
        StringEnd::Finite(_) => (Verdict::RegularSoFar, Some(true)),
        StringEnd::Truncated => {
            let half = n / 2;
            let early: T = terms[..half].iter().cloned().fold(T::zero(), |a, b| a + b);
            let late: T = terms[n - half..]
                .iter()
                .cloned()
                .fold(T::zero(), |a, b| a + b);
            if half > 0 && late >= early {
                (Verdict::DivergenceDetected, None)
            } else {
                (Verdict::RegularSoFar, None)
            }
        }
    };
    SingularityReport {
        length,
        w_squared,
        dipoles,
        trajectory,
        verdict,
        determinate,
    }
}

/// Moments recovered from a string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveredMoments<T> {
    pub moments: MomentSequence<T>,
    /// Number of leading coefficients on which consecutive depths agree.
    pub stabilized: usize,
    /// Whether the moments come from the exact Weyl function of a finished string.
    pub exact: bool,
}

/// Moments from the expansion at infinity of the string's Weyl function.
///
/// A finished string yields `s_0..s_{2·depth}` exactly. A truncated one
/// compares `m̃_{depth-1}` with `m̃_depth`, `depth ≥ 2`, and keeps their
/// common prefix.
pub fn moments_from_kl<T: Scalar>(
    string: &KreinLangerString<T>,
    depth: usize,
) -> Result<RecoveredMoments<T>> {
    if string.is_finished() {
        let count = 2 * depth + 1;
        let coeffs = string_weyl_ratfun(string)?.series_at_infinity(count)?;
        let moments = MomentSequence::new(coeffs.into_iter().map(|c| -c).collect())?;
        return Ok(RecoveredMoments {
            moments,
            stabilized: count,
            exact: true,
        });
    }
    if depth < 2 {
        return Err(Error::DepthTooSmall { depth, min: 2 });
    }
    if depth >= string.len() {
        return Err(Error::OutOfRange {
            index: depth,
            max: string.len() - 1,
        });
    }
    let coarse = m_truncated_ratfun(string, depth - 1)?;
    let fine = m_truncated_ratfun(string, depth)?;
    let count = 2 * fine.denominator().degree().max(0) as usize + 2;
    let a = coarse.series_at_infinity(count)?;
    let b = fine.series_at_infinity(count)?;
    let stabilized = a.iter().zip(&b).take_while(|(x, y)| x == y).count();
    let moments = MomentSequence::new(b[..stabilized].iter().map(|c| -c.clone()).collect())?;
    Ok(RecoveredMoments {
        moments,
        stabilized,
        exact: false,
    })
}
