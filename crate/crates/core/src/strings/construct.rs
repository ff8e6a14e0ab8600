use crate::canonical::euclid_decompose;
use crate::error::{Error, Result};
use crate::exact_core::scalar::Scalar;
use crate::jacobi_weyl::weyl_ratfun;
use crate::moments::{detect_rank, HankelLedger, MomentSequence, Shift};

use super::model::{Cell, KreinLangerString, StieltjesView, StringEnd};

fn positive_d1<T: Scalar>(ledger: &HankelLedger<T>, n: usize) -> Result<T> {
    let d = ledger.d1(n as isize)?;
    if d.is_positive() {
        Ok(d)
    } else {
        Err(Error::NotDoublePositive {
            n,
            value: d.to_string(),
        })
    }
}

/// `l_n = Δ_{1,n}² / (Δ_{0,n-1} Δ_{0,n})`.
fn ledger_length<T: Scalar>(ledger: &HankelLedger<T>, n: usize) -> Result<T> {
    let n = n as isize;
    let d1 = ledger.d1(n)?;
    Ok(d1.clone() * d1 / (ledger.d0(n - 1)? * ledger.d0(n)?))
}

fn stieltjes_cell<T: Scalar>(ledger: &HankelLedger<T>, n: usize) -> Result<Cell<T>> {
    let d1 = positive_d1(ledger, n)?;
    let d1_next = positive_d1(ledger, n + 1)?;
    let d0 = ledger.d0(n as isize)?;
    let omega = d0.clone() * d0 / (d1 * d1_next);
    Ok(Cell::new(ledger_length(ledger, n)?, omega, T::zero()))
}

/// Krein–Stieltjes string with `depth` cells, or the whole string when the
/// sequence has finite rank `N ≤ depth`.
///
/// Finite rank gives `N` points and an infinite tail when `Δ_{1,N} ≠ 0`,
/// and `N − 1` points followed by a finite tail otherwise.
pub fn stieltjes_from_moments<T: Scalar>(
    s: &MomentSequence<T>,
    depth: usize,
) -> Result<StieltjesView<T>> {
    let ledger = HankelLedger::build(s, depth);
    let string = match detect_rank(&ledger, depth)? {
        Some(rank) => {
            let last = ledger.d1(rank as isize)?;
            if last.is_negative() {
                return Err(Error::NotDoublePositive {
                    n: rank,
                    value: last.to_string(),
                });
            }
            if last.is_zero() {
                let cells = (0..rank - 1)
                    .map(|n| stieltjes_cell(&ledger, n))
                    .collect::<Result<Vec<_>>>()?;
                positive_d1(&ledger, rank - 1)?;
                let tail = ledger_length(&ledger, rank - 1)?;
                KreinLangerString::new(cells, StringEnd::Finite(tail))?
            } else {
                let cells = (0..rank)
                    .map(|n| stieltjes_cell(&ledger, n))
                    .collect::<Result<Vec<_>>>()?;
                KreinLangerString::new(cells, StringEnd::Infinite)?
            }
        }
        None => {
            if depth == 0 {
                return Err(Error::DepthTooSmall { depth, min: 1 });
            }
            let cells = (0..depth)
                .map(|n| stieltjes_cell(&ledger, n))
                .collect::<Result<Vec<_>>>()?;
            KreinLangerString::new(cells, StringEnd::Truncated)?
        }
    };
    StieltjesView::new(string)
}

/// [`stieltjes_from_moments`] at the largest depth the prefix supports.
pub fn stieltjes_from_moments_max<T: Scalar>(s: &MomentSequence<T>) -> Result<StieltjesView<T>> {
    stieltjes_from_moments(s, (s.len() / 2).max(1))
}

/// Indices `k(0) = 0 < k(1) < …` of the nonzero `Δ_{1,k}`, at most
/// `count + 1` of them and none past the rank.
///
/// With `strict`, stopping early for lack of moments is an error.
fn index_map_from_ledger<T: Scalar>(
    ledger: &HankelLedger<T>,
    count: usize,
    rank: Option<usize>,
    strict: bool,
) -> Result<Vec<usize>> {
    let mut ks = vec![0usize];
    while ks.len() <= count {
        let k = *ks.last().expect("nonempty");
        if rank.is_some_and(|n| k >= n) {
            break;
        }
        let step = |n: usize| -> Result<Option<T>> {
            if strict {
                ledger.d1(n as isize).map(Some)
            } else {
                Ok(ledger.get(Shift::One, n as isize).cloned())
            }
        };
        let next = match step(k + 1)? {
            None => break,
            Some(d) if !d.is_zero() => k + 1,
            Some(_) => {
                if rank.is_some_and(|n| k + 1 >= n) {
                    break;
                }
                match step(k + 2)? {
                    None => break,
                    Some(d) if d.is_zero() => {
                        return Err(Error::Inconsistent(format!(
                            "Δ_{{1,{}}} and Δ_{{1,{}}} both vanish",
                            k + 1,
                            k + 2
                        )))
                    }
                    Some(_) => k + 2,
                }
            }
        };
        if rank.is_some_and(|n| next > n) {
            break;
        }
        ks.push(next);
    }
    Ok(ks)
}

/// `k(0), …, k(depth)`, stopping early at the rank or the end of the data.
pub fn kl_index_map<T: Scalar>(s: &MomentSequence<T>, depth: usize) -> Result<Vec<usize>> {
    let ledger = HankelLedger::build(s, 2 * depth);
    let rank = detect_rank(&ledger, 2 * depth)?;
    index_map_from_ledger(&ledger, depth, rank, false)
}

/// Cells `0..ks.len()-1` straight from the determinant formulas.
fn kl_cells_from_ledger<T: Scalar>(ledger: &HankelLedger<T>, ks: &[usize]) -> Result<Vec<Cell<T>>> {
    ks.windows(2)
        .map(|w| {
            let (k, next) = (w[0], w[1]);
            let l = ledger_length(ledger, k)?;
            let (ki, nexti) = (k as isize, next as isize);
            if next == k + 1 {
                let d0 = ledger.d0(ki)?;
                let omega = d0.clone() * d0 / (ledger.d1(ki)? * ledger.d1(nexti)?);
                Ok(Cell::new(l, omega, T::zero()))
            } else {
                let omega =
                    ledger.dm1(ki)? / ledger.d1(ki)? - ledger.dm1(nexti)? / ledger.d1(nexti)?;
                let dm1 = ledger.dm1(ki + 1)?;
                let upsilon = dm1.clone() * dm1 / (ledger.d0(ki)? * ledger.d0(ki + 1)?);
                Ok(Cell::new(l, omega, upsilon))
            }
        })
        .collect()
}

/// Krein–Langer string read off the determinant formulas, without the
/// finite-rank shortcut; the string ends where the data or rank does.
///
/// A rank-`N` sequence with enough data yields the finished string.
pub fn kl_from_ledger<T: Scalar>(
    s: &MomentSequence<T>,
    depth: usize,
) -> Result<KreinLangerString<T>> {
    let ledger = HankelLedger::build(s, 2 * depth.max(1));
    let rank = detect_rank(&ledger, 2 * depth.max(1))?;
    let ks = index_map_from_ledger(&ledger, depth, rank, false)?;
    let cells = kl_cells_from_ledger(&ledger, &ks)?;
    let last = *ks.last().expect("nonempty");
    let end = match rank {
        Some(n) if last == n => StringEnd::Infinite,
        Some(n)
            if last + 1 == n
                && ledger
                    .get(Shift::One, n as isize)
                    .is_some_and(|d| d.is_zero()) =>
        {
            StringEnd::Finite(ledger_length(&ledger, last)?)
        }
        _ => StringEnd::Truncated,
    };
    if cells.is_empty() && end.is_truncated() {
        return Err(Error::DepthTooSmall { depth, min: 1 });
    }
    KreinLangerString::new(cells, end)
}

/// Krein–Langer string with `depth` cells.
///
/// A sequence whose finite rank shows in the prefix goes through the
/// Euclidean decomposition of its exact Weyl function and returns the whole
/// string when it has at most `depth` cells.
pub fn kl_from_moments<T: Scalar>(
    s: &MomentSequence<T>,
    depth: usize,
) -> Result<KreinLangerString<T>> {
    let ledger_depth = 2 * depth.max(1);
    let ledger = HankelLedger::build(s, ledger_depth);
    if let Some(rank) = detect_rank(&ledger, ledger_depth)? {
        let string = euclid_decompose(&weyl_ratfun(s, rank)?)?;
        return Ok(string.prefix(depth));
    }
    if depth == 0 {
        return Err(Error::DepthTooSmall { depth, min: 1 });
    }
    let ks = index_map_from_ledger(&ledger, depth, None, true)?;
    KreinLangerString::new(kl_cells_from_ledger(&ledger, &ks)?, StringEnd::Truncated)
}

/// Finished string of the rank-`n` sequence that shares `s_0..s_{2n-1}`
/// with `s`: the Euclidean decomposition of `−q_n/p_n`.
///
/// For the moments of an `n`-atom measure this is the exact string.
pub fn kl_from_pade<T: Scalar>(s: &MomentSequence<T>, n: usize) -> Result<KreinLangerString<T>> {
    if n == 0 {
        return Err(Error::DepthTooSmall { depth: n, min: 1 });
    }
    euclid_decompose(&weyl_ratfun(s, n)?)
}

/// [`kl_from_moments`] with as many cells as the prefix determines.
pub fn kl_from_moments_max<T: Scalar>(s: &MomentSequence<T>) -> Result<KreinLangerString<T>> {
    let depth = s.max_depth();
    let ledger = HankelLedger::build(s, depth);
    if let Some(rank) = detect_rank(&ledger, depth)? {
        return euclid_decompose(&weyl_ratfun(s, rank)?);
    }
    let ks = index_map_from_ledger(&ledger, usize::MAX - 1, None, false)?;
    if ks.len() < 2 {
        return Err(Error::InsufficientMoments {
            needed: 3,
            available: s.len(),
        });
    }
    KreinLangerString::new(kl_cells_from_ledger(&ledger, &ks)?, StringEnd::Truncated)
}
