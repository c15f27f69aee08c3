//! Explicit section spaces for a curve made of two rational components `Y`
//! and `Z` glued at a node `P`, with an invertible sheaf of bidegree `(d, 0)`.
//!
//! The ambient is `U = U1 ⊕ U2` where `U1 = k[t]_{≤d}` (sections on `Y`, `t` a
//! local coordinate at `P`) and `U2 = k[s]_{≤d}` (sections of the degree-`d`
//! twist on `Z`). Coordinates are `t^0..t^d` followed by `s^0..s^d`.
//!
//! * `F1^k = <t^k, …, t^d>`: sections on `Y` vanishing to order `≥ k` at `P`.
//! * level-`l` flag on `Z`: `<s^{d−l}, …, s^d>`, dimension `l + 1`.
//!
//! At a non-integer index `i` the space is `F1^{⌈i⌉} ⊕ level ⌊i⌋`. At an
//! integer `i` it is the hyperplane of `F1^i ⊕ level i` on which the
//! coefficient of `t^i` equals the coefficient of `s^{d−i}`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::delta::{ceil, floor};
use crate::error::{Error, Result};
use crate::torus::TorusSplit;
use crate::{QSubspace, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveModel {
    pub d: usize,
}

/// The sections of the `i`-th twist, as a subspace of `U1 ⊕ U2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionSpace {
    pub index: Rational,
    pub subspace: QSubspace,
}

impl CurveModel {
    pub fn new(d: usize) -> Self {
        Self { d }
    }

    pub fn split(&self) -> TorusSplit {
        TorusSplit {
            dim1: self.d + 1,
            dim2: self.d + 1,
        }
    }

    pub fn ambient(&self) -> usize {
        2 * (self.d + 1)
    }

    /// Coordinate of `t^j`.
    pub fn t(&self, j: usize) -> usize {
        j
    }

    /// Coordinate of `s^j`.
    pub fn s(&self, j: usize) -> usize {
        self.d + 1 + j
    }

    /// `F1^k` inside `U1`; zero for `k > d`.
    pub fn y_flag(&self, k: usize) -> QSubspace {
        QSubspace::coordinate(self.d + 1, k.min(self.d + 1)..=self.d)
    }

    /// Level-`l` flag inside `U2`, `l ∈ [-1, d]`; dimension `l + 1`.
    pub fn z_flag(&self, level: i64) -> QSubspace {
        let level = level.clamp(-1, self.d as i64);
        let start = (self.d as i64 - level) as usize;
        QSubspace::coordinate(self.d + 1, start..=self.d)
    }

    fn check_index(&self, i: &Rational) -> Result<()> {
        if *i < Rational::zero() || *i > Rational::from_integer(self.d.into()) {
            return Err(Error::IndexOutOfRange {
                index: i.clone(),
                d: self.d,
            });
        }
        Ok(())
    }

    pub fn section_space(&self, i: &Rational) -> Result<SectionSpace> {
        self.check_index(i)?;
        let n = self.ambient();
        let subspace = if i.is_integer() {
            let c = floor(i);
            // Free directions t^{c+1..d} and s^{d-c+1..d}, plus the glued t^c + s^{d-c}.
            let mut vectors: Vec<Vec<Rational>> = Vec::with_capacity(self.d + 1);
            let unit = |k: usize| {
                let mut v = vec![Rational::zero(); n];
                v[k] = Rational::one();
                v
            };
            for j in c + 1..=self.d {
                vectors.push(unit(self.t(j)));
            }
            for j in self.d - c + 1..=self.d {
                vectors.push(unit(self.s(j)));
            }
            let mut glued = unit(self.t(c));
            glued[self.s(self.d - c)] = Rational::one();
            vectors.push(glued);
            QSubspace::from_spanning(n, &vectors)?
        } else {
            let y = self.y_flag(ceil(i));
            let z = self.z_flag(floor(i) as i64);
            QSubspace::direct_sum(&y, &z)
        };
        Ok(SectionSpace {
            index: i.clone(),
            subspace,
        })
    }

    /// The section space seen at the point `x * E_i` of the twisting family.
    pub fn twisted_space_at(&self, i: &Rational, x: &Rational) -> Result<QSubspace> {
        let base = self.section_space(i)?;
        self.split().act(x, &base.subspace)
    }

    /// `v` is an `(expected_r + 1)`-dimensional space of sections at index `i`.
    pub fn is_generalized_linear_series(
        &self,
        v: &QSubspace,
        i: &Rational,
        expected_r: i64,
    ) -> bool {
        if expected_r < 0 || v.ambient_dim() != self.ambient() {
            return false;
        }
        let Ok(space) = self.section_space(i) else {
            return false;
        };
        v.dim() as i64 == expected_r + 1 && v.is_subspace_of(&space.subspace)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::DeltaSet;
    use crate::linalg::Matrix;

    fn span(n: usize, vs: &[&[i64]]) -> QSubspace {
        QSubspace::from_matrix(&Matrix::from_ints(n, vs).unwrap())
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn degree_one_integer_spaces() {
        let m = CurveModel::new(1);
        // (1, t | 1, s): {(a + bt, a s)}.
        assert_eq!(
            m.section_space(&q(0, 1)).unwrap().subspace,
            span(4, &[&[1, 0, 0, 1], &[0, 1, 0, 0]])
        );
        // {(b t, b + c s)}.
        assert_eq!(
            m.section_space(&q(1, 1)).unwrap().subspace,
            span(4, &[&[0, 1, 1, 0], &[0, 0, 0, 1]])
        );
    }

    #[test]
    fn half_index_is_split() {
        let m = CurveModel::new(2);
        // <t, t^2> ⊕ <s^2> in (1, t, t^2 | 1, s, s^2).
        assert_eq!(
            m.section_space(&q(1, 2)).unwrap().subspace,
            span(
                6,
                &[
                    &[0, 1, 0, 0, 0, 0],
                    &[0, 0, 1, 0, 0, 0],
                    &[0, 0, 0, 0, 0, 1]
                ]
            )
        );
    }

    #[test]
    fn out_of_range() {
        let m = CurveModel::new(2);
        assert!(m.section_space(&q(-1, 2)).is_err());
        assert!(m.section_space(&q(5, 2)).is_err());
    }

    #[test]
    fn twisting() {
        let m = CurveModel::new(1);
        let i0 = q(0, 1);
        assert_eq!(
            m.twisted_space_at(&i0, &q(1, 1)).unwrap(),
            m.section_space(&i0).unwrap().subspace
        );
        // (1/2, 1) applied to {(a + bt, a s)}: {(a + bt, 2a s)}.
        assert_eq!(
            m.twisted_space_at(&i0, &q(2, 1)).unwrap(),
            span(4, &[&[1, 0, 0, 2], &[0, 1, 0, 0]])
        );
        let half = q(1, 2);
        let m2 = CurveModel::new(2);
        for x in [q(3, 1), q(-1, 5)] {
            assert_eq!(
                m2.twisted_space_at(&half, &x).unwrap(),
                m2.section_space(&half).unwrap().subspace
            );
        }
        assert_eq!(m.twisted_space_at(&i0, &q(0, 1)), Err(Error::ZeroParameter));
    }

    #[test]
    fn membership() {
        let m = CurveModel::new(1);
        let i0 = q(0, 1);
        let whole = m.section_space(&i0).unwrap().subspace;
        assert!(m.is_generalized_linear_series(&whole, &i0, 1));
        // (1, 0 | 0, 0) violates the gluing.
        assert!(!m.is_generalized_linear_series(&span(4, &[&[1, 0, 0, 0]]), &i0, 0));
        assert!(m.is_generalized_linear_series(&span(4, &[&[1, 0, 0, 1]]), &i0, 0));
        assert!(!m.is_generalized_linear_series(&QSubspace::zero(4), &i0, -1));
        assert!(!m.is_generalized_linear_series(&QSubspace::zero(4), &i0, 0));
    }

    #[test]
    fn every_index_has_dimension_d_plus_one() {
        for d in 0..=5 {
            let m = CurveModel::new(d);
            let ds = DeltaSet::new(d, &vec![3; d]).unwrap();
            for i in ds.indices() {
                assert_eq!(
                    m.section_space(i).unwrap().subspace.dim(),
                    d + 1,
                    "d={d} i={i}"
                );
            }
        }
    }

    #[test]
    fn restriction_to_z_factors_through_next_space() {
        // rho2 of each section space lies in iota2^{-1} of the next one.
        for d in 1..=4 {
            let m = CurveModel::new(d);
            let split = m.split();
            let ds = DeltaSet::new(d, &vec![2; d]).unwrap();
            for (i, j) in ds.consecutive_pairs() {
                let pi = split
                    .block_profile(&m.section_space(&i).unwrap().subspace)
                    .unwrap();
                let pj = split
                    .block_profile(&m.section_space(&j).unwrap().subspace)
                    .unwrap();
                assert!(pi.rho2.is_subspace_of(&pj.iota2_inv), "d={d} ({i},{j})");
                assert!(pj.rho1.is_subspace_of(&pi.iota1_inv), "d={d} ({i},{j})");
            }
        }
    }
}
