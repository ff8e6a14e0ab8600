//! Moment sequences, discrete measures and the Hankel determinant ledger.

use crate::error::{Error, Result};
use crate::exact_core::linalg::determinant;
use crate::exact_core::scalar::Scalar;

/// Finite prefix `s_0, …, s_M` of a moment sequence with `s_0 > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MomentSequence<T> {
    s: Vec<T>,
}

impl<T: Scalar> MomentSequence<T> {
    pub fn new(s: Vec<T>) -> Result<Self> {
        match s.first() {
            None => Err(Error::InvalidMoments("empty sequence".into())),
            Some(s0) if !s0.is_positive() => Err(Error::InvalidMoments(format!(
                "s_0 = {s0} must be positive"
            ))),
            Some(_) => Ok(Self { s }),
        }
    }

    pub fn as_slice(&self) -> &[T] {
        &self.s
    }

    pub fn into_vec(self) -> Vec<T> {
        self.s
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, k: usize) -> Option<&T> {
        self.s.get(k)
    }

    pub fn s0(&self) -> &T {
        &self.s[0]
    }

    /// Largest `n` for which `Δ_{0,n}` is computable.
    pub fn max_depth(&self) -> usize {
        (self.s.len() - 1) / 2
    }

    /// The first `len` moments.
    pub fn prefix(&self, len: usize) -> Result<Self> {
        if len > self.s.len() {
            return Err(Error::InsufficientMoments {
                needed: len - 1,
                available: self.s.len(),
            });
        }
        Self::new(self.s[..len].to_vec())
    }

    /// `s_k` with negative indices read as zero; errors past the prefix.
    pub(crate) fn at(&self, k: isize) -> Result<T> {
        if k < 0 {
            return Ok(T::zero());
        }
        self.s
            .get(k as usize)
            .cloned()
            .ok_or(Error::InsufficientMoments {
                needed: k as usize,
                available: self.s.len(),
            })
    }

    pub(crate) fn require(&self, needed: usize) -> Result<()> {
        if needed < self.s.len() {
            Ok(())
        } else {
            Err(Error::InsufficientMoments {
                needed,
                available: self.s.len(),
            })
        }
    }
}

/// Finitely many atoms `(λ_i, w_i)`, sorted by position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiscreteMeasure<T> {
    atoms: Vec<(T, T)>,
}

impl<T: Scalar> DiscreteMeasure<T> {
    pub fn new(mut atoms: Vec<(T, T)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::EmptyMeasure);
        }
        if let Some((x, w)) = atoms.iter().find(|(_, w)| !w.is_positive()) {
            return Err(Error::InvalidMeasure(format!(
                "weight {w} at {x} is not positive"
            )));
        }
        atoms.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("ordered positions"));
        if let Some(w) = atoms.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidMeasure(format!(
                "position {} appears twice",
                w[0].0
            )));
        }
        Ok(Self { atoms })
    }

    pub fn atoms(&self) -> &[(T, T)] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// `s_k = Σ w_i λ_i^k` for `k < count`.
pub fn moments_from_measure<T: Scalar>(
    mu: &DiscreteMeasure<T>,
    count: usize,
) -> Result<MomentSequence<T>> {
    if count == 0 {
        return Err(Error::InvalidMoments(
            "at least one moment is required".into(),
        ));
    }
    let mut s = vec![T::zero(); count];
    for (x, w) in mu.atoms() {
        let mut term = w.clone();
        for sk in s.iter_mut() {
            *sk = sk.clone() + term.clone();
            term = term * x.clone();
        }
    }
    MomentSequence::new(s)
}

/// `c·s` for `c > 0`.
///
/// Jacobi coefficients are unchanged; string masses scale by `c` and
/// lengths by `1/c`.
pub fn scale<T: Scalar>(s: &MomentSequence<T>, c: &T) -> Result<MomentSequence<T>> {
    if !c.is_positive() {
        return Err(Error::NonpositiveScale(c.to_string()));
    }
    MomentSequence::new(s.s.iter().map(|x| x.clone() * c.clone()).collect())
}

/// Which Hankel-type determinant family an entry belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shift {
    /// `Δ_{-2,n}`: order `n+2`, entries `s_{i+j-2}`.
    MinusTwo,
    /// `Δ_{-1,n}`: order `n+1`, entries `s_{i+j-1}`.
    MinusOne,
    /// `Δ_{0,n}`: order `n+1`, entries `s_{i+j}`.
    Zero,
    /// `Δ'_{0,n}`: as `Δ_{0,n}` with the last column shifted by one.
    ZeroPrimed,
    /// `Δ_{1,n}`: order `n`, entries `s_{i+j+1}`.
    One,
    /// `Δ_{2,n}`: order `n`, entries `s_{i+j+2}`.
    Two,
}

impl Shift {
    pub const ALL: [Shift; 6] = [
        Shift::MinusTwo,
        Shift::MinusOne,
        Shift::Zero,
        Shift::ZeroPrimed,
        Shift::One,
        Shift::Two,
    ];

    /// Smallest index carried by the family.
    pub fn first_index(self) -> isize {
        match self {
            Shift::Zero | Shift::ZeroPrimed => -1,
            _ => 0,
        }
    }

    /// Highest moment index entering the determinant of index `n`.
    pub fn needed_moment(self, n: isize) -> isize {
        match self {
            Shift::MinusTwo | Shift::Zero | Shift::Two => 2 * n,
            Shift::MinusOne | Shift::One => 2 * n - 1,
            Shift::ZeroPrimed => 2 * n + 1,
        }
    }

    fn matrix<T: Scalar>(self, s: &MomentSequence<T>, n: isize) -> Result<Vec<Vec<T>>> {
        let (order, offset) = match self {
            Shift::MinusTwo => (n + 2, -2),
            Shift::MinusOne => (n + 1, -1),
            Shift::Zero | Shift::ZeroPrimed => (n + 1, 0),
            Shift::One => (n, 1),
            Shift::Two => (n, 2),
        };
        let order = order.max(0);
        let mut rows = Vec::with_capacity(order as usize);
        for i in 0..order {
            let mut row = Vec::with_capacity(order as usize);
            for j in 0..order {
                let k = if self == Shift::ZeroPrimed && j == n {
                    i + j + 1
                } else {
                    i + j + offset
                };
                row.push(s.at(k)?);
            }
            rows.push(row);
        }
        Ok(rows)
    }

    fn base_value<T: Scalar>(self, s: &MomentSequence<T>, n: isize) -> Option<T> {
        match (self, n) {
            (Shift::Zero, -1) | (Shift::One, 0) | (Shift::Two, 0) => Some(T::one()),
            (Shift::ZeroPrimed, -1) | (Shift::MinusOne, 0) | (Shift::MinusTwo, 0) => {
                Some(T::zero())
            }
            (Shift::ZeroPrimed, 0) => s.get(1).cloned(),
            _ => None,
        }
    }
}

/// Single Hankel-type determinant, computed directly.
pub fn hankel_determinant<T: Scalar>(s: &MomentSequence<T>, shift: Shift, n: isize) -> Result<T> {
    if n < shift.first_index() {
        return Err(Error::OutOfRange { index: 0, max: 0 });
    }
    if let Some(v) = shift.base_value(s, n) {
        return Ok(v);
    }
    let needed = shift.needed_moment(n);
    if needed >= 0 {
        s.require(needed as usize)?;
    }
    Ok(determinant(&shift.matrix(s, n)?))
}

/// Every Hankel-type determinant of a moment prefix up to a common depth.
///
/// Entries whose moments lie past the prefix are absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HankelLedger<T> {
    len: usize,
    depth: usize,
    values: [Vec<T>; 6],
}

fn slot(shift: Shift) -> usize {
    Shift::ALL.iter().position(|&x| x == shift).expect("listed")
}

impl<T: Scalar> HankelLedger<T> {
    /// Ledger holding indices up to `depth + 1` in every family, as far as
    /// the prefix allows.
    pub fn build(s: &MomentSequence<T>, depth: usize) -> Self {
        let values = Shift::ALL.map(|shift| {
            let mut out = Vec::new();
            let mut n = shift.first_index();
            while n <= depth as isize + 1 && shift.needed_moment(n) < s.len() as isize {
                out.push(hankel_determinant(s, shift, n).expect("moments are available"));
                n += 1;
            }
            out
        });
        Self {
            len: s.len(),
            depth,
            values,
        }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn get(&self, shift: Shift, n: isize) -> Option<&T> {
        let k = n - shift.first_index();
        if k < 0 {
            return None;
        }
        self.values[slot(shift)].get(k as usize)
    }

    /// Like [`HankelLedger::get`], but names the missing moment.
    pub fn need(&self, shift: Shift, n: isize) -> Result<T> {
        self.get(shift, n).cloned().ok_or_else(|| {
            if n < shift.first_index() || n > self.depth as isize + 1 {
                Error::OutOfRange {
                    index: n.max(0) as usize,
                    max: self.depth + 1,
                }
            } else {
                Error::InsufficientMoments {
                    needed: shift.needed_moment(n) as usize,
                    available: self.len,
                }
            }
        })
    }

    /// Values of one family, starting at its first index.
    pub fn family(&self, shift: Shift) -> &[T] {
        &self.values[slot(shift)]
    }

    /// Highest index available in a family.
    pub fn last_index(&self, shift: Shift) -> isize {
        shift.first_index() + self.values[slot(shift)].len() as isize - 1
    }

    pub fn d0(&self, n: isize) -> Result<T> {
        self.need(Shift::Zero, n)
    }

    pub fn d0_primed(&self, n: isize) -> Result<T> {
        self.need(Shift::ZeroPrimed, n)
    }

    pub fn d1(&self, n: isize) -> Result<T> {
        self.need(Shift::One, n)
    }

    pub fn d2(&self, n: isize) -> Result<T> {
        self.need(Shift::Two, n)
    }

    pub fn dm1(&self, n: isize) -> Result<T> {
        self.need(Shift::MinusOne, n)
    }

    pub fn dm2(&self, n: isize) -> Result<T> {
        self.need(Shift::MinusTwo, n)
    }
}

/// Smallest `N` in `1..=depth` with `Δ_{0,N} = 0`, among the determinants
/// the ledger holds.
pub(crate) fn detect_rank<T: Scalar>(
    ledger: &HankelLedger<T>,
    depth: usize,
) -> Result<Option<usize>> {
    for n in 1..=depth {
        match ledger.get(Shift::Zero, n as isize) {
            None => break,
            Some(d) if d.is_negative() => {
                return Err(Error::NotPositive {
                    n,
                    value: d.to_string(),
                })
            }
            Some(d) if d.is_zero() => return Ok(Some(n)),
            Some(_) => {}
        }
    }
    Ok(None)
}

/// Ledger through `n_max`; `Δ_{0,n_max}` must be computable.
pub fn hankel_ledger<T: Scalar>(s: &MomentSequence<T>, n_max: usize) -> Result<HankelLedger<T>> {
    s.require(2 * n_max)?;
    Ok(HankelLedger::build(s, n_max))
}

/// Positivity facts established by a finite prefix.
///
/// The flags quantify only over the determinants the prefix determines,
/// i.e. `Δ_{0,n}` for `n ≤ examined_depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub positive: bool,
    pub strictly_positive_through: usize,
    pub double_positive: bool,
    pub strictly_double_positive_through: usize,
    pub finite_rank: Option<usize>,
    pub examined_depth: usize,
}

impl Classification {
    /// Highest Jacobi index the data supports: `N - 1` for rank `N`.
    pub fn max_jacobi_index(&self) -> usize {
        match self.finite_rank {
            Some(n) => n - 1,
            None => self.strictly_positive_through,
        }
    }
}

pub fn classify<T: Scalar>(s: &MomentSequence<T>) -> Result<Classification> {
    let depth = s.max_depth();
    let ledger = HankelLedger::build(s, depth);
    classify_ledger(&ledger)
}

pub fn classify_ledger<T: Scalar>(ledger: &HankelLedger<T>) -> Result<Classification> {
    let zero = ledger.family(Shift::Zero);
    let mut finite_rank = None;
    let mut through = 0;
    for (idx, d) in zero.iter().enumerate().skip(1) {
        let n = idx - 1;
        if d.is_negative() {
            return Err(Error::NotPositive {
                n,
                value: d.to_string(),
            });
        }
        match finite_rank {
            None if d.is_zero() => finite_rank = Some(n),
            None => through = n,
            Some(rank) if !d.is_zero() => {
                return Err(Error::InconsistentRank {
                    rank,
                    n,
                    value: d.to_string(),
                })
            }
            Some(_) => {}
        }
    }
    let ones = ledger.family(Shift::One);
    let double_positive = ones.iter().all(|d| !d.is_negative());
    let double_through = ones.iter().take_while(|d| d.is_positive()).count() - 1;
    Ok(Classification {
        positive: true,
        strictly_positive_through: through,
        double_positive,
        strictly_double_positive_through: double_through,
        finite_rank,
        examined_depth: zero.len() - 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::scalar::ratio;
    use crate::Rational;

    fn seq(v: &[(i64, i64)]) -> MomentSequence<Rational> {
        MomentSequence::new(v.iter().map(|&(n, d)| ratio(n, d)).collect()).unwrap()
    }

    fn ints(v: &[i64]) -> MomentSequence<Rational> {
        MomentSequence::new(v.iter().map(|&n| ratio(n, 1)).collect()).unwrap()
    }

    fn stieltjes_example() -> MomentSequence<Rational> {
        seq(&[(1, 1), (3, 2), (5, 2), (9, 2), (17, 2)])
    }

    #[test]
    fn measure_moments() {
        let two_point = DiscreteMeasure::new(vec![
            (ratio(-1, 1), ratio(1, 2)),
            (ratio(1, 1), ratio(1, 2)),
        ])
        .unwrap();
        assert_eq!(
            moments_from_measure(&two_point, 5).unwrap(),
            ints(&[1, 0, 1, 0, 1])
        );
        let delta = DiscreteMeasure::new(vec![(ratio(0, 1), ratio(1, 1))]).unwrap();
        assert_eq!(
            moments_from_measure(&delta, 4).unwrap(),
            ints(&[1, 0, 0, 0])
        );
        let mu = DiscreteMeasure::new(vec![(ratio(1, 1), ratio(1, 2)), (ratio(2, 1), ratio(1, 2))])
            .unwrap();
        assert_eq!(moments_from_measure(&mu, 5).unwrap(), stieltjes_example());
    }

    #[test]
    fn measure_validation() {
        assert_eq!(
            DiscreteMeasure::<Rational>::new(vec![]),
            Err(Error::EmptyMeasure)
        );
        assert!(matches!(
            DiscreteMeasure::new(vec![(ratio(0, 1), ratio(0, 1))]),
            Err(Error::InvalidMeasure(_))
        ));
        assert!(matches!(
            DiscreteMeasure::new(vec![(ratio(1, 1), ratio(1, 2)), (ratio(1, 1), ratio(1, 3))]),
            Err(Error::InvalidMeasure(_))
        ));
    }

    #[test]
    fn sequence_validation() {
        assert!(MomentSequence::<Rational>::new(vec![]).is_err());
        assert!(MomentSequence::new(vec![ratio(0, 1)]).is_err());
    }

    #[test]
    fn ledger_examples() {
        let s = ints(&[1, 0, 1, 0, 2]);
        let l = hankel_ledger(&s, 2).unwrap();
        assert_eq!(l.d0(2).unwrap(), ratio(1, 1));
        assert_eq!(l.d1(2).unwrap(), ratio(-1, 1));
        assert_eq!(l.dm1(1).unwrap(), ratio(-1, 1));
        assert_eq!(l.d0(-1).unwrap(), ratio(1, 1));
        assert_eq!(l.dm1(0).unwrap(), ratio(0, 1));
        assert_eq!(l.d0_primed(0).unwrap(), ratio(0, 1));
        assert!(matches!(
            l.d0_primed(2),
            Err(Error::InsufficientMoments {
                needed: 5,
                available: 5
            })
        ));

        let s = seq(&[(1, 1), (3, 2), (5, 2)]);
        let l = hankel_ledger(&s, 1).unwrap();
        assert_eq!(l.dm2(1).unwrap(), ratio(-1, 1));
        assert_eq!(l.dm2(0).unwrap(), ratio(0, 1));
    }

    #[test]
    fn ledger_stieltjes_values() {
        let l = hankel_ledger(&stieltjes_example(), 2).unwrap();
        assert_eq!(l.d0(1).unwrap(), ratio(1, 4));
        assert_eq!(l.d1(1).unwrap(), ratio(3, 2));
        assert_eq!(l.d1(2).unwrap(), ratio(1, 2));
        assert_eq!(l.dm1(1).unwrap(), ratio(-1, 1));
        assert_eq!(l.d2(1).unwrap(), ratio(5, 2));
    }

    #[test]
    fn ledger_requires_enough_moments() {
        assert_eq!(
            hankel_ledger(&ints(&[1, 0, 1]), 2),
            Err(Error::InsufficientMoments {
                needed: 4,
                available: 3
            })
        );
    }

    #[test]
    fn classify_examples() {
        let c = classify(&ints(&[1, 0, 1, 0, 1])).unwrap();
        assert!(c.positive);
        assert_eq!(c.finite_rank, Some(2));

        let c = classify(&ints(&[1, 0, 1, 0, 2])).unwrap();
        assert_eq!(c.strictly_positive_through, 2);
        assert_eq!(c.finite_rank, None);
        assert_eq!(c.strictly_double_positive_through, 0);
        assert!(!c.double_positive);

        let c = classify(&ints(&[1, -1, 1])).unwrap();
        assert_eq!(c.finite_rank, Some(1));
    }

    #[test]
    fn classify_rejects_negative_determinant() {
        assert_eq!(
            classify(&ints(&[1, 0, -1])),
            Err(Error::NotPositive {
                n: 1,
                value: "-1".into()
            })
        );
    }

    #[test]
    fn classify_rejects_growth_after_rank_drop() {
        // Δ_{0,1} = Δ_{0,2} = 0 but Δ_{0,3} = 27
        let s = ints(&[1, -1, 1, -1, -2, -2, 0]);
        assert!(matches!(
            classify(&s),
            Err(Error::InconsistentRank { rank: 1, n: 3, .. })
        ));
    }

    #[test]
    fn scaling() {
        assert_eq!(
            scale(&ints(&[1, 0, 1]), &ratio(2, 1)).unwrap(),
            ints(&[2, 0, 2])
        );
        assert!(matches!(
            scale(&ints(&[1, 0, 1]), &ratio(0, 1)),
            Err(Error::NonpositiveScale(_))
        ));
    }
}
