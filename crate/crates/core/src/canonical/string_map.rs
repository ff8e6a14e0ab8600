use crate::error::{Error, Result};
use crate::exact_core::scalar::Scalar;
use crate::strings::{Cell, KreinLangerString, StringEnd};

use super::angle::AngleData;
use super::hamiltonian::{Extent, HamburgerHamiltonian, Interval};

fn push_cot<T: Scalar>(intervals: &mut Vec<Interval<T>>, length: Extent<T>, cot: T) -> Result<()> {
    let index = intervals.len();
    let prev = &intervals
        .last()
        .expect("starts with the first interval")
        .angle;
    let angle = prev
        .next_cot(cot)
        .ok_or(Error::MalformedAngleWindow { index })?;
    intervals.push(Interval::new(length, angle));
    Ok(())
}

/// Hamiltonian of a string under the length reparametrization `ς`.
///
/// The string interval before `x_0` becomes `H_{π/2}` of length `l_0`; a
/// dipole `υ_k` becomes a zero-mod-π interval of length `υ_k`; the interval
/// after `x_k` becomes one of length `l_{k+1}(1 + w_k²)` with `cot θ = w_k`.
/// A truncated string yields a truncated Hamiltonian ending after the last
/// listed dipole.
pub fn kl_to_hamiltonian<T: Scalar>(
    string: &KreinLangerString<T>,
) -> Result<HamburgerHamiltonian<T>> {
    let cells = string.cells();
    let first = match (cells.first(), string.end()) {
        (Some(c), _) => Extent::Finite(c.l.clone()),
        (None, StringEnd::Finite(l)) => Extent::Finite(l.clone()),
        _ => return Err(Error::InvalidString("no intervals".into())),
    };
    let mut intervals = vec![Interval::new(first, AngleData::right_angle())];
    let mut w = T::zero();
    for (k, c) in cells.iter().enumerate() {
        w = w + c.omega.clone();
        if c.upsilon.is_positive() {
            let index = intervals.len();
            let prev = &intervals.last().expect("nonempty").angle;
            let angle = prev
                .next_zero()
                .ok_or(Error::MalformedAngleWindow { index })?;
            intervals.push(Interval::new(Extent::Finite(c.upsilon.clone()), angle));
        }
        let stretch = T::one() + w.clone() * w.clone();
        let length = match cells.get(k + 1) {
            Some(next) => Extent::Finite(next.l.clone() * stretch),
            None => match string.end() {
                StringEnd::Finite(l) => Extent::Finite(l.clone() * stretch),
                StringEnd::Infinite => Extent::Infinite,
                StringEnd::Truncated => break,
            },
        };
        push_cot(&mut intervals, length, w.clone())?;
    }
    HamburgerHamiltonian::new(intervals, string.end().is_truncated())
}

/// String of a Hamiltonian: `l_j = ℓ_{k(j)} sin²θ_{k(j)}` over the intervals
/// not zero mod π, masses from the jumps of `cot θ`, and a dipole `ℓ_k` for
/// each zero-mod-π interval.
///
/// For a truncated Hamiltonian a point is kept only when the angle after it
/// is listed.
pub fn hamiltonian_to_kl<T: Scalar>(h: &HamburgerHamiltonian<T>) -> Result<KreinLangerString<T>> {
    let ivs = h.intervals();
    let ks: Vec<usize> = (0..ivs.len())
        .filter(|&k| !ivs[k].angle.is_zero_mod_pi())
        .collect();
    let cot = |k: usize| ivs[k].angle.cot().expect("not zero mod π").clone();
    let finite = |k: usize| {
        ivs[k]
            .length
            .finite()
            .cloned()
            .ok_or(Error::InvalidHamiltonian(format!(
                "interval {k} is infinite"
            )))
    };
    let mut cells = Vec::with_capacity(ks.len());
    for pair in ks.windows(2) {
        let (k, next) = (pair[0], pair[1]);
        let upsilon = match next - k {
            1 => T::zero(),
            2 => finite(k + 1)?,
            _ => return Err(Error::MalformedAngleWindow { index: k + 2 }),
        };
        let (sin2, _, _) = ivs[k].angle.trig();
        cells.push(Cell::new(finite(k)? * sin2, cot(next) - cot(k), upsilon));
    }
    let end = if h.is_truncated() {
        StringEnd::Truncated
    } else {
        let last = *ks.last().expect("the first angle is π/2");
        let (sin2, _, _) = ivs[last].angle.trig();
        match &ivs[last].length {
            Extent::Finite(l) => StringEnd::Finite(l.clone() * sin2),
            Extent::Infinite => StringEnd::Infinite,
        }
    };
    KreinLangerString::new(cells, end)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::hamiltonian_from_moments;
    use crate::exact_core::scalar::ratio;
    use crate::moments::MomentSequence;
    use crate::strings::kl_from_moments;
    use crate::Rational;

    fn cell(l: i64, w: i64, u: i64) -> Cell<Rational> {
        Cell::new(ratio(l, 1), ratio(w, 1), ratio(u, 1))
    }

    fn two_point_string() -> KreinLangerString<Rational> {
        KreinLangerString::new(vec![cell(1, 0, 1)], StringEnd::Infinite).unwrap()
    }

    fn two_point_hamiltonian() -> HamburgerHamiltonian<Rational> {
        HamburgerHamiltonian::new(
            vec![
                Interval::new(Extent::Finite(ratio(1, 1)), AngleData::right_angle()),
                Interval::new(
                    Extent::Finite(ratio(1, 1)),
                    AngleData::ZeroModPi { pi_index: 1 },
                ),
                Interval::new(
                    Extent::Infinite,
                    AngleData::Cot {
                        cot: ratio(0, 1),
                        pi_index: 1,
                    },
                ),
            ],
            false,
        )
        .unwrap()
    }

    #[test]
    fn two_point_both_ways() {
        assert_eq!(
            kl_to_hamiltonian(&two_point_string()).unwrap(),
            two_point_hamiltonian()
        );
        assert_eq!(
            hamiltonian_to_kl(&two_point_hamiltonian()).unwrap(),
            two_point_string()
        );
    }

    #[test]
    fn massless_string() {
        let h = HamburgerHamiltonian::new(
            vec![Interval::new(
                Extent::Finite(ratio(1, 1)),
                AngleData::right_angle(),
            )],
            false,
        )
        .unwrap();
        let s = hamiltonian_to_kl(&h).unwrap();
        assert!(s.is_empty());
        assert_eq!(s.end(), &StringEnd::Finite(ratio(1, 1)));
        assert_eq!(kl_to_hamiltonian(&s).unwrap(), h);
    }

    #[test]
    fn stieltjes_string_has_increasing_cotangents() {
        let s = KreinLangerString::new(
            vec![cell(1, 2, 0), cell(3, 1, 0), cell(2, 5, 0)],
            StringEnd::Finite(ratio(1, 2)),
        )
        .unwrap();
        let h = kl_to_hamiltonian(&s).unwrap();
        let cots: Vec<Rational> = h
            .intervals()
            .iter()
            .map(|iv| iv.angle.cot().unwrap().clone())
            .collect();
        assert_eq!(
            cots,
            vec![ratio(0, 1), ratio(2, 1), ratio(3, 1), ratio(8, 1)]
        );
        assert_eq!(hamiltonian_to_kl(&h).unwrap(), s);
    }

    #[test]
    fn catalan_square() {
        let c = [1, 0, 1, 0, 2, 0, 5, 0, 14, 0, 42, 0, 132];
        let s = MomentSequence::new(c.iter().map(|&x| ratio(x, 1)).collect()).unwrap();
        let h = hamiltonian_from_moments(&s, 6).unwrap();
        let from_h = hamiltonian_to_kl(&h).unwrap();
        let direct = kl_from_moments(&s, from_h.len()).unwrap();
        assert_eq!(from_h.len(), 2);
        assert_eq!(from_h, direct);
        let back = kl_to_hamiltonian(&direct).unwrap();
        assert_eq!(back.intervals(), &h.intervals()[..back.len()]);
    }

    #[test]
    fn length_identity() {
        let s = KreinLangerString::new(
            vec![cell(1, -1, 2), cell(2, 3, 0), cell(1, 0, 1)],
            StringEnd::Finite(ratio(3, 1)),
        )
        .unwrap();
        let h = kl_to_hamiltonian(&s).unwrap();
        // l_0 + υ_0 + l_1(1+1) + l_2(1+4) + υ_2 + l_3(1+4)
        assert_eq!(h.total_length(), Some(ratio(1 + 2 + 4 + 5 + 1 + 15, 1)));
        assert_eq!(hamiltonian_to_kl(&h).unwrap(), s);
    }
}
