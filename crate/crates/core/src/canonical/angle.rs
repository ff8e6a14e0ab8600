use std::f64::consts::PI;

use crate::exact_core::scalar::{to_float, Scalar};

/// Exact encoding of an angle `θ` whose cotangent is rational.
///
/// `pi_index` is `⌊θ/π⌋`. A `ZeroModPi` angle equals `pi_index · π`; a `Cot`
/// angle lies strictly inside `(pi_index · π, (pi_index + 1) · π)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AngleData<T> {
    ZeroModPi { pi_index: i64 },
    Cot { cot: T, pi_index: i64 },
}

impl<T: Scalar> AngleData<T> {
    /// `θ = π/2`.
    pub fn right_angle() -> Self {
        AngleData::Cot {
            cot: T::zero(),
            pi_index: 0,
        }
    }

    pub fn is_zero_mod_pi(&self) -> bool {
        matches!(self, AngleData::ZeroModPi { .. })
    }

    pub fn pi_index(&self) -> i64 {
        match self {
            AngleData::ZeroModPi { pi_index } | AngleData::Cot { pi_index, .. } => *pi_index,
        }
    }

    pub fn cot(&self) -> Option<&T> {
        match self {
            AngleData::Cot { cot, .. } => Some(cot),
            AngleData::ZeroModPi { .. } => None,
        }
    }

    /// `(sin²θ, cosθ sinθ, cos²θ)` as exact field elements.
    pub fn trig(&self) -> (T, T, T) {
        match self {
            AngleData::ZeroModPi { .. } => (T::zero(), T::zero(), T::one()),
            AngleData::Cot { cot, .. } => {
                let sin2 = T::one() / (T::one() + cot.clone() * cot.clone());
                let cos_sin = cot.clone() * sin2.clone();
                let cos2 = cot.clone() * cos_sin.clone();
                (sin2, cos_sin, cos2)
            }
        }
    }

    /// The angle in radians, for display only.
    pub fn radians(&self) -> f64 {
        let base = self.pi_index() as f64 * PI;
        match self {
            AngleData::ZeroModPi { .. } => base,
            AngleData::Cot { cot, .. } => base + 1.0_f64.atan2(to_float::<T, f64>(cot)),
        }
    }

    /// The zero-mod-π angle that may follow `self`; none after another one.
    pub fn next_zero(&self) -> Option<Self> {
        match self {
            AngleData::Cot { pi_index, .. } => Some(AngleData::ZeroModPi {
                pi_index: pi_index + 1,
            }),
            AngleData::ZeroModPi { .. } => None,
        }
    }

    /// The unique angle with cotangent `cot` less than `π` above `self`.
    ///
    /// A smaller cotangent stays in the current window, a larger one moves
    /// to the next; an equal one would differ by `0` or `π` and is rejected.
    pub fn next_cot(&self, cot: T) -> Option<Self> {
        let pi_index = match self {
            AngleData::ZeroModPi { pi_index } => *pi_index,
            AngleData::Cot {
                cot: prev,
                pi_index,
            } => {
                if cot < *prev {
                    *pi_index
                } else if cot > *prev {
                    pi_index + 1
                } else {
                    return None;
                }
            }
        };
        Some(AngleData::Cot { cot, pi_index })
    }

    /// Whether `next` lies strictly between `self` and `self + π`.
    pub fn precedes(&self, next: &Self) -> bool {
        let expected = match next {
            AngleData::ZeroModPi { .. } => self.next_zero(),
            AngleData::Cot { cot, .. } => self.next_cot(cot.clone()),
        };
        expected.as_ref() == Some(next)
    }
}
