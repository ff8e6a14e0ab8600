use crate::error::{Error, Result};
use crate::exact_core::scalar::Scalar;

/// One point of a Krein–Langer string: the interval of length `l` ending at
/// the point, then a mass `omega` and a dipole `upsilon` sitting there.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cell<T> {
    pub l: T,
    pub omega: T,
    pub upsilon: T,
}

impl<T: Scalar> Cell<T> {
    pub fn new(l: T, omega: T, upsilon: T) -> Self {
        Self { l, omega, upsilon }
    }
}

/// What follows the last listed cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StringEnd<T> {
    /// More cells exist but were not computed.
    Truncated,
    /// A final massless interval of the given length.
    Finite(T),
    /// A final massless interval of infinite length.
    Infinite,
}

impl<T> StringEnd<T> {
    pub fn is_truncated(&self) -> bool {
        matches!(self, StringEnd::Truncated)
    }
}

/// Krein–Langer string with finitely many listed cells.
///
/// Positions are `x_j = l_0 + … + l_j`. A finished string (`Finite` or
/// `Infinite` end) is the whole object; a `Truncated` one is a prefix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KreinLangerString<T> {
    cells: Vec<Cell<T>>,
    end: StringEnd<T>,
}

impl<T: Scalar> KreinLangerString<T> {
    pub fn new(cells: Vec<Cell<T>>, end: StringEnd<T>) -> Result<Self> {
        for (j, c) in cells.iter().enumerate() {
            if !c.l.is_positive() {
                return Err(Error::InvalidString(format!(
                    "l_{j} = {} is not positive",
                    c.l
                )));
            }
            if c.upsilon.is_negative() {
                return Err(Error::InvalidString(format!(
                    "dipole υ_{j} = {} is negative",
                    c.upsilon
                )));
            }
            if c.omega.is_zero() && c.upsilon.is_zero() {
                return Err(Error::InvalidString(format!(
                    "point {j} carries neither mass nor dipole"
                )));
            }
        }
        match &end {
            StringEnd::Finite(l) if !l.is_positive() => {
                return Err(Error::InvalidString(format!(
                    "tail length {l} is not positive"
                )))
            }
            StringEnd::Infinite | StringEnd::Truncated if cells.is_empty() => {
                return Err(Error::InvalidString(
                    "string without cells needs a finite tail".into(),
                ))
            }
            _ => {}
        }
        Ok(Self { cells, end })
    }

    pub fn cells(&self) -> &[Cell<T>] {
        &self.cells
    }

    pub fn end(&self) -> &StringEnd<T> {
        &self.end
    }

    /// Number of listed cells.
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn is_finished(&self) -> bool {
        !self.end.is_truncated()
    }

    /// Interval length `l_j`, with `l_κ` the finite tail.
    pub fn length(&self, j: usize) -> Option<&T> {
        match self.cells.get(j) {
            Some(c) => Some(&c.l),
            None if j == self.cells.len() => match &self.end {
                StringEnd::Finite(l) => Some(l),
                _ => None,
            },
            None => None,
        }
    }

    /// `x_0, …, x_{κ-1}`.
    pub fn positions(&self) -> Vec<T> {
        let mut x = T::zero();
        self.cells
            .iter()
            .map(|c| {
                x = x.clone() + c.l.clone();
                x.clone()
            })
            .collect()
    }

    /// `w_j = ω_0 + … + ω_j`, the value of `ω([0, x))` just right of `x_j`.
    pub fn mass_sums(&self) -> Vec<T> {
        let mut w = T::zero();
        self.cells
            .iter()
            .map(|c| {
                w = w.clone() + c.omega.clone();
                w.clone()
            })
            .collect()
    }

    /// The first `n` cells with a truncated end; the whole string when `n`
    /// reaches its cell count and it is finished.
    pub fn prefix(&self, n: usize) -> Self {
        if n >= self.cells.len() {
            return self.clone();
        }
        Self {
            cells: self.cells[..n].to_vec(),
            end: StringEnd::Truncated,
        }
    }

    pub fn is_stieltjes(&self) -> bool {
        self.cells
            .iter()
            .all(|c| c.upsilon.is_zero() && c.omega.is_positive())
    }
}

/// Krein–Stieltjes string: no dipoles and positive masses.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StieltjesView<T>(KreinLangerString<T>);

impl<T: Scalar> StieltjesView<T> {
    pub fn new(string: KreinLangerString<T>) -> Result<Self> {
        if let Some((j, c)) = string
            .cells()
            .iter()
            .enumerate()
            .find(|(_, c)| !(c.upsilon.is_zero() && c.omega.is_positive()))
        {
            return Err(Error::InvalidString(format!(
                "cell {j} (ω = {}, υ = {}) is not a positive point mass",
                c.omega, c.upsilon
            )));
        }
        Ok(Self(string))
    }

    pub fn string(&self) -> &KreinLangerString<T> {
        &self.0
    }

    pub fn into_string(self) -> KreinLangerString<T> {
        self.0
    }

    pub fn lengths(&self) -> Vec<T> {
        self.0.cells().iter().map(|c| c.l.clone()).collect()
    }

    pub fn masses(&self) -> Vec<T> {
        self.0.cells().iter().map(|c| c.omega.clone()).collect()
    }
}
