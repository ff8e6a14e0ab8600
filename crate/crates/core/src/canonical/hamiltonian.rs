use crate::error::{Error, Result};
use crate::exact_core::scalar::Scalar;
use crate::moments::{detect_rank, HankelLedger, MomentSequence};

use super::angle::AngleData;

/// Length of an interval; only the last one may be infinite.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Extent<T> {
    Finite(T),
    Infinite,
}

impl<T> Extent<T> {
    pub fn finite(&self) -> Option<&T> {
        match self {
            Extent::Finite(l) => Some(l),
            Extent::Infinite => None,
        }
    }
}

/// An interval on which the Hamiltonian is the constant projection onto
/// `(cos θ, sin θ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval<T> {
    pub length: Extent<T>,
    pub angle: AngleData<T>,
}

impl<T> Interval<T> {
    pub fn new(length: Extent<T>, angle: AngleData<T>) -> Self {
        Self { length, angle }
    }
}

/// Piecewise constant trace-normed Hamiltonian with indivisible intervals.
///
/// A finished Hamiltonian is the whole object: if its last length is
/// finite it continues with `H_0` on an infinite interval. A truncated one
/// lists only the first intervals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HamburgerHamiltonian<T> {
    intervals: Vec<Interval<T>>,
    truncated: bool,
}

impl<T: Scalar> HamburgerHamiltonian<T> {
    pub fn new(intervals: Vec<Interval<T>>, truncated: bool) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidHamiltonian(msg));
        let Some(first) = intervals.first() else {
            return invalid("no intervals".into());
        };
        if first.angle != AngleData::right_angle() {
            return invalid("the first angle must be π/2".into());
        }
        let last = intervals.len() - 1;
        if last == 0 && first.length == Extent::Infinite {
            return invalid("a single infinite interval carries no measure".into());
        }
        for (k, iv) in intervals.iter().enumerate() {
            match &iv.length {
                Extent::Finite(l) if !l.is_positive() => {
                    return invalid(format!("length ℓ_{k} = {l} is not positive"))
                }
                Extent::Infinite if k != last || truncated => {
                    return invalid(format!("interval {k} cannot be infinite"))
                }
                _ => {}
            }
            if k > 0 && !intervals[k - 1].angle.precedes(&iv.angle) {
                return Err(Error::MalformedAngleWindow { index: k });
            }
        }
        if !truncated && intervals[last].angle.is_zero_mod_pi() {
            return invalid("the last angle of a finished Hamiltonian is zero mod π".into());
        }
        Ok(Self {
            intervals,
            truncated,
        })
    }

    pub fn intervals(&self) -> &[Interval<T>] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// `x_0 < x_1 < …`, the right ends of the finite intervals.
    pub fn positions(&self) -> Vec<T> {
        let mut x = T::zero();
        self.intervals
            .iter()
            .filter_map(|iv| iv.length.finite())
            .map(|l| {
                x = x.clone() + l.clone();
                x.clone()
            })
            .collect()
    }

    /// `Σ ℓ_k` over the listed intervals, `None` when one is infinite.
    pub fn total_length(&self) -> Option<T> {
        self.intervals.iter().try_fold(T::zero(), |acc, iv| {
            iv.length.finite().map(|l| acc + l.clone())
        })
    }
}

/// Angle `θ_n` from `cot θ_n = −Δ_{-1,n}/Δ_{1,n}`, or zero mod π when
/// `Δ_{1,n} = 0`, placed in the window after `prev`.
fn angle_at<T: Scalar>(
    ledger: &HankelLedger<T>,
    n: usize,
    prev: Option<&AngleData<T>>,
) -> Result<AngleData<T>> {
    let d1 = ledger.d1(n as isize)?;
    let next = if d1.is_zero() {
        prev.and_then(|p| p.next_zero())
    } else {
        let cot = -ledger.dm1(n as isize)? / d1;
        match prev {
            Some(p) => p.next_cot(cot),
            None if cot.is_zero() => Some(AngleData::right_angle()),
            None => None,
        }
    };
    next.ok_or(Error::MalformedAngleWindow { index: n })
}

/// `ℓ_n = (Δ_{-1,n}² + Δ_{1,n}²) / (Δ_{0,n-1} Δ_{0,n})`.
fn length_at<T: Scalar>(ledger: &HankelLedger<T>, n: usize) -> Result<T> {
    let n = n as isize;
    let (a, b) = (ledger.dm1(n)?, ledger.d1(n)?);
    Ok((a.clone() * a + b.clone() * b) / (ledger.d0(n - 1)? * ledger.d0(n)?))
}

/// Hamiltonian with `depth` intervals, or the whole one when the sequence
/// has finite rank `N ≤ depth`.
///
/// For rank `N` the intervals `0..N` are finite; a final infinite interval
/// with angle `θ_N` follows when `Δ_{1,N} ≠ 0`, otherwise `H_0` does.
pub fn hamiltonian_from_moments<T: Scalar>(
    s: &MomentSequence<T>,
    depth: usize,
) -> Result<HamburgerHamiltonian<T>> {
    let ledger = HankelLedger::build(s, depth);
    let rank = detect_rank(&ledger, depth)?;
    let count = rank.unwrap_or(depth);
    if count == 0 {
        return Err(Error::DepthTooSmall { depth, min: 1 });
    }
    let mut intervals: Vec<Interval<T>> = Vec::with_capacity(count + 1);
    for n in 0..count {
        let angle = angle_at(&ledger, n, intervals.last().map(|iv| &iv.angle))?;
        intervals.push(Interval::new(Extent::Finite(length_at(&ledger, n)?), angle));
    }
    if let Some(n) = rank {
        if !ledger.d1(n as isize)?.is_zero() {
            let angle = angle_at(&ledger, n, intervals.last().map(|iv| &iv.angle))?;
            intervals.push(Interval::new(Extent::Infinite, angle));
        }
    }
    HamburgerHamiltonian::new(intervals, rank.is_none())
}

/// [`hamiltonian_from_moments`] at the largest depth the prefix supports.
pub fn hamiltonian_from_moments_max<T: Scalar>(
    s: &MomentSequence<T>,
) -> Result<HamburgerHamiltonian<T>> {
    let depth = s.max_depth();
    let ledger = HankelLedger::build(s, depth);
    match detect_rank(&ledger, depth)? {
        Some(_) => hamiltonian_from_moments(s, depth),
        None => hamiltonian_from_moments(s, depth.max(1)),
    }
}
