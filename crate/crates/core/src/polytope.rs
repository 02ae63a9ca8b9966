//! The polytope of `L × L` doubly stochastic matrices and the gluing map φ.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `φ(i, j) = (j − 1, i)` on 0-based indices, with `j − 1` taken cyclically.
pub fn phi_index(i: usize, j: usize, dim: usize) -> (usize, usize) {
    ((j + dim - 1) % dim, i)
}

/// Inverse of [`phi_index`]: `(k, l) ↦ (l, k + 1)`.
pub fn phi_inverse_index(k: usize, l: usize, dim: usize) -> (usize, usize) {
    (l, (k + 1) % dim)
}

/// A square matrix of scalars, row-major. Constructors check double
/// stochasticity; [`StochasticMatrix::from_entries_unchecked`] does not.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StochasticMatrix<T> {
    dim: usize,
    entries: Vec<T>,
}

impl<T: Scalar> StochasticMatrix<T> {
    pub fn new(dim: usize, entries: Vec<T>) -> Result<Self> {
        let m = Self::from_entries_unchecked(dim, entries)?;
        m.check()?;
        Ok(m)
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Dimension("matrix is not square".into()));
        }
        Self::new(dim, rows.into_iter().flatten().collect())
    }

    /// Only the shape is checked.
    pub fn from_entries_unchecked(dim: usize, entries: Vec<T>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::Dimension(format!(
                "expected {} entries for dimension {dim}, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Ok(Self { dim, entries })
    }

    pub fn identity(dim: usize) -> Self {
        Self::permutation(&(0..dim).collect::<Vec<_>>())
    }

    /// The permutation matrix with a one at `(i, perm[i])`.
    pub fn permutation(perm: &[usize]) -> Self {
        let dim = perm.len();
        let mut entries = vec![T::zero(); dim * dim];
        for (i, &j) in perm.iter().enumerate() {
            entries[i * dim + j] = T::one();
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.entries[i * self.dim + j] = value;
    }

    pub fn row_sum(&self, i: usize) -> T {
        self.entries[i * self.dim..(i + 1) * self.dim]
            .iter()
            .fold(T::zero(), |acc, x| acc + x.clone())
    }

    pub fn col_sum(&self, j: usize) -> T {
        (0..self.dim).fold(T::zero(), |acc, i| acc + self.get(i, j).clone())
    }

    /// Lists every violated constraint of the polytope.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                if self.get(i, j).is_neg() {
                    out.push(format!("entry ({}, {}) is negative", i + 1, j + 1));
                }
            }
        }
        for i in 0..self.dim {
            let s = self.row_sum(i);
            if !s.approx_eq(&T::one()) {
                out.push(format!("row {} sums to {s}", i + 1));
            }
            let s = self.col_sum(i);
            if !s.approx_eq(&T::one()) {
                out.push(format!("column {} sums to {s}", i + 1));
            }
        }
        out
    }

    pub fn is_doubly_stochastic(&self) -> bool {
        self.violations().is_empty()
    }

    fn check(&self) -> Result<()> {
        match self.violations().first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidArgument(format!(
                "not doubly stochastic: {v}"
            ))),
        }
    }

    /// The image under the linear extension of `(i, j) ↦ (j − 1, i)`.
    pub fn phi(&self) -> Self {
        let dim = self.dim;
        let mut entries = vec![T::zero(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                let (k, l) = phi_index(i, j, dim);
                entries[k * dim + l] = self.get(i, j).clone();
            }
        }
        Self { dim, entries }
    }

    /// `λ·self + (1 − λ)·other`.
    pub fn mix(&self, lambda: &T, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Dimension(
                "mixing matrices of different sizes".into(),
            ));
        }
        let mu = T::one() - lambda.clone();
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| lambda.clone() * a.clone() + mu.clone() * b.clone())
            .collect();
        Ok(Self {
            dim: self.dim,
            entries,
        })
    }

    /// Sum of entries with `row < col`.
    pub fn strictly_upper_mass(&self) -> T {
        let mut total = T::zero();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                total = total + self.get(i, j).clone();
            }
        }
        total
    }

    /// Sum of entries with `row ≥ col`.
    pub fn lower_mass(&self) -> T {
        let mut total = T::zero();
        for i in 0..self.dim {
            for j in 0..=i {
                total = total + self.get(i, j).clone();
            }
        }
        total
    }
}

impl<T: Scalar> fmt::Display for StochasticMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        let width = cells.iter().map(|c| c.len()).max().unwrap_or(1);
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| format!("{:>width$}", cells[i * self.dim + j]))
                .collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn basis(dim: usize, i: usize, j: usize) -> StochasticMatrix<Q> {
        let mut entries = vec![Q::from_int(0); dim * dim];
        entries[i * dim + j] = Q::from_int(1);
        StochasticMatrix::from_entries_unchecked(dim, entries).unwrap()
    }

    #[test]
    fn phi_on_basis_vectors() {
        for dim in 2..6 {
            // (1,2) ↦ (1,1) and (1,1) ↦ (L,1), written 0-based
            assert_eq!(basis(dim, 0, 1).phi(), basis(dim, 0, 0));
            assert_eq!(basis(dim, 0, 0).phi(), basis(dim, dim - 1, 0));
        }
    }

    #[test]
    fn phi_has_order_dividing_2l() {
        for dim in 1..7 {
            for i in 0..dim {
                for j in 0..dim {
                    let start = basis(dim, i, j);
                    let mut v = start.clone();
                    for _ in 0..2 * dim {
                        v = v.phi();
                    }
                    assert_eq!(v, start);
                    let (k, l) = phi_index(i, j, dim);
                    assert_eq!(phi_inverse_index(k, l, dim), (i, j));
                }
            }
        }
    }

    #[test]
    fn validation() {
        let half = Q::ratio(1, 2);
        let ok = StochasticMatrix::from_rows(vec![
            vec![half.clone(), half.clone()],
            vec![half.clone(), half.clone()],
        ]);
        assert!(ok.is_ok());
        let bad = StochasticMatrix::from_rows(vec![
            vec![Q::from_int(1), Q::from_int(0)],
            vec![Q::from_int(1), Q::from_int(0)],
        ]);
        assert!(bad.is_err());
        let mut m = ok.unwrap();
        m.set(0, 0, Q::ratio(501, 1000));
        assert_eq!(m.violations().len(), 2);
        assert!(StochasticMatrix::<Q>::from_entries_unchecked(2, vec![]).is_err());
    }

    #[test]
    fn masses() {
        let anti = StochasticMatrix::<Q>::permutation(&[1, 0]);
        assert_eq!(anti.strictly_upper_mass(), Q::from_int(1));
        assert_eq!(anti.lower_mass(), Q::from_int(1));
        let id = StochasticMatrix::<Q>::identity(3);
        assert_eq!(id.strictly_upper_mass(), Q::from_int(0));
        assert_eq!(id.lower_mass(), Q::from_int(3));
    }
}
