use std::fmt;
use std::ops::Range;

use num_traits::Zero;

use super::matrix::{rref_with_pivots, Matrix};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A linear subspace of `T^ambient_dim`, stored as the unique reduced
/// row-echelon basis of its row space. Two subspaces are equal iff their
/// stored values are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace<T> {
    ambient_dim: usize,
    basis: Matrix<T>,
}

impl<T: Scalar> Subspace<T> {
    /// The span of `vectors` inside `T^ambient_dim`.
    pub fn from_spanning(ambient_dim: usize, vectors: &[Vec<T>]) -> Result<Self> {
        let m = Matrix::from_rows(ambient_dim, vectors)?;
        Ok(Self::from_matrix(&m))
    }

    /// Row space of `m`.
    pub fn from_matrix(m: &Matrix<T>) -> Self {
        let (r, pivots) = rref_with_pivots(m);
        let rows: Vec<Vec<T>> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Self {
            ambient_dim: m.ncols(),
            basis: Matrix::from_rows(m.ncols(), &rows).expect("rows have ambient length"),
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
        }
    }

    /// Span of the standard basis vectors with the given coordinates.
    pub fn coordinate(ambient_dim: usize, coords: impl IntoIterator<Item = usize>) -> Self {
        let vectors: Vec<Vec<T>> = coords.into_iter().map(|c| unit(ambient_dim, c)).collect();
        Self::from_spanning(ambient_dim, &vectors).expect("unit vectors have ambient length")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// The canonical (RREF) basis matrix.
    pub fn basis(&self) -> &Matrix<T> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<T>> {
        self.basis.to_rows()
    }

    pub fn contains_vector(&self, v: &[T]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        // Reduce v against the RREF basis via its pivot columns.
        let mut w = v.to_vec();
        for row in self.basis.rows() {
            let pivot = row.iter().position(|x| !x.is_zero()).expect("no zero rows");
            if w[pivot].is_zero() {
                continue;
            }
            let f = w[pivot].clone();
            for (wj, rj) in w.iter_mut().zip(row) {
                *wj = wj.clone() - f.clone() * rj.clone();
            }
        }
        w.iter().all(Zero::is_zero)
    }

    /// `self ⊆ other`.
    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.dim() <= other.dim()
            && self.basis.rows().all(|r| other.contains_vector(r))
    }

    /// Smallest subspace containing both.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(Self::from_matrix(&self.basis.stack(&other.basis)?))
    }

    /// Largest common subspace, computed as the annihilator of the sum of the
    /// annihilators.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient_dim));
        }
        let ann = self.annihilator().sum(&other.annihilator())?;
        Ok(ann.annihilator())
    }

    /// `{x : <x, v> = 0 for all v in self}` for the standard pairing.
    pub fn annihilator(&self) -> Self {
        if self.is_zero() {
            return Self::full(self.ambient_dim);
        }
        Self::from_matrix(&self.basis.kernel())
    }

    /// Image under the coordinate projection onto `block`, as a subspace of
    /// `T^block.len()`.
    pub fn project(&self, block: Range<usize>) -> Self {
        let cols: Vec<usize> = block.collect();
        Self::from_matrix(&self.basis.select_columns(&cols))
    }

    /// Preimage under the coordinate inclusion of `block`: the vectors `u` of
    /// `T^block.len()` whose zero-padded extension lies in `self`.
    pub fn block_preimage(&self, block: Range<usize>) -> Self {
        let coords = Self::coordinate(self.ambient_dim, block.clone());
        let meet = self.intersect(&coords).expect("same ambient");
        meet.project(block)
    }

    /// Embeds into `T^ambient_dim` by placing coordinates at `offset..`.
    pub fn embed(&self, ambient_dim: usize, offset: usize) -> Result<Self> {
        if offset + self.ambient_dim > ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: offset + self.ambient_dim,
            });
        }
        let mut rows = Vec::with_capacity(self.dim());
        for r in self.basis.rows() {
            let mut v = vec![T::zero(); ambient_dim];
            v[offset..offset + r.len()].clone_from_slice(r);
            rows.push(v);
        }
        Self::from_spanning(ambient_dim, &rows)
    }

    /// `a ⊕ b` inside `T^(a.ambient + b.ambient)`, `a` occupying the leading
    /// coordinates.
    pub fn direct_sum(a: &Self, b: &Self) -> Self {
        let n = a.ambient_dim + b.ambient_dim;
        let ea = a.embed(n, 0).expect("fits");
        let eb = b.embed(n, a.ambient_dim).expect("fits");
        ea.sum(&eb).expect("same ambient")
    }

    /// Image under the diagonal map multiplying the coordinates in `block` by
    /// `factor` and fixing the rest.
    pub fn scale_block(&self, block: Range<usize>, factor: &T) -> Self {
        let mut m = self.basis.clone();
        for j in block {
            m.scale_column(j, factor);
        }
        Self::from_matrix(&m)
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch {
                left: self.ambient_dim,
                right: other.ambient_dim,
            });
        }
        Ok(())
    }
}

fn unit<T: Scalar>(n: usize, i: usize) -> Vec<T> {
    let mut v = vec![T::zero(); n];
    v[i] = T::one();
    v
}

impl<T: Scalar> fmt::Debug for Subspace<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace({}; {:?})", self.ambient_dim, self.basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn span(n: usize, vs: &[&[i64]]) -> Subspace<Rational> {
        Subspace::from_matrix(&Matrix::from_ints(n, vs).unwrap())
    }

    #[test]
    fn spanning_examples() {
        assert_eq!(
            span(2, &[&[2, 0]]).basis(),
            &Matrix::from_ints(2, &[&[1, 0]]).unwrap()
        );
        assert_eq!(span(3, &[&[1, 1, 0], &[1, 1, 0]]).dim(), 1);
        let s = span(4, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
        assert_eq!(s.dim(), 2);
        assert_eq!(
            s.basis(),
            &Matrix::from_ints(4, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]).unwrap()
        );
    }

    #[test]
    fn spanning_rejects_wrong_length() {
        let v = vec![vec![Rational::from_int(1); 3]];
        assert!(matches!(
            Subspace::from_spanning(2, &v),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn sum_examples() {
        let v = span(3, &[&[1, 2, 3]]);
        assert_eq!(v.sum(&v).unwrap(), v);
        assert_eq!(
            span(2, &[&[1, 0]]).sum(&span(2, &[&[0, 1]])).unwrap(),
            Subspace::full(2)
        );
        assert_eq!(
            span(2, &[&[1, 1]]).sum(&span(2, &[&[0, 1]])).unwrap(),
            span(2, &[&[1, 0], &[0, 1]])
        );
        assert!(span(2, &[&[1, 0]]).sum(&span(3, &[&[1, 0, 0]])).is_err());
    }

    #[test]
    fn intersect_examples() {
        let v = span(3, &[&[1, 2, 3]]);
        assert_eq!(v.intersect(&Subspace::full(3)).unwrap(), v);
        assert!(span(2, &[&[1, 0]])
            .intersect(&span(2, &[&[0, 1]]))
            .unwrap()
            .is_zero());
        let a = span(3, &[&[1, 1, 0], &[0, 0, 1]]);
        let b = span(3, &[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(a.intersect(&b).unwrap(), span(3, &[&[0, 0, 1]]));
        assert!(a.intersect(&span(2, &[&[1, 0]])).is_err());
    }

    #[test]
    fn block_maps() {
        // <e1 + f1, e2> in Q^2 + Q^2.
        let v = span(4, &[&[1, 0, 1, 0], &[0, 1, 0, 0]]);
        assert_eq!(v.project(0..2), Subspace::full(2));
        assert_eq!(v.project(2..4), span(2, &[&[1, 0]]));
        assert_eq!(v.block_preimage(0..2), span(2, &[&[0, 1]]));
        assert!(v.block_preimage(2..4).is_zero());
    }

    #[test]
    fn containment() {
        let v = span(3, &[&[1, 1, 0], &[0, 0, 1]]);
        assert!(v.contains_vector(&[2, 2, 5].map(Rational::from_int)));
        assert!(!v.contains_vector(&[1, 0, 0].map(Rational::from_int)));
        assert!(span(3, &[&[1, 1, 1]]).is_subspace_of(&v));
        assert!(Subspace::zero(3).is_subspace_of(&v));
        assert!(!Subspace::full(3).is_subspace_of(&v));
    }

    #[test]
    fn direct_sum_and_embed() {
        let a = span(2, &[&[1, 1]]);
        let b = span(1, &[&[3]]);
        let s = Subspace::direct_sum(&a, &b);
        assert_eq!(s, span(3, &[&[1, 1, 0], &[0, 0, 1]]));
        assert!(a.embed(1, 0).is_err());
    }
}
