//! The one-dimensional torus acting on `Grass(n, W1 ⊕ W2)` with weight
//! `(-1, 0)`: `x * (u1, u2) = (x⁻¹ u1, u2)`.
//!
//! Everything here is computed from the four block subspaces of a point `V`:
//!
//! * `iota1_inv = V ∩ (W1 ⊕ 0)` and `iota2_inv = V ∩ (0 ⊕ W2)`,
//! * `rho1`, `rho2`: the projections of `V` to `W1` and `W2`.
//!
//! The orbit of a nonfixed `V` closes up at `x → 0` on `rho1 ⊕ iota2_inv` and at
//! `x → ∞` on `iota1_inv ⊕ rho2`, and its closure is a rational curve of degree
//! `dim rho1 − dim iota1_inv`. Limits are computed from these block formulas
//! only; the Plücker-scaling derivation lives in [`crate::oracle`].

use std::collections::BTreeSet;
use std::ops::Range;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{pluecker, Matrix, Subspace};
use crate::scalar::Scalar;

/// Which end of the orbit closure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Zero,
    Infinity,
}

/// An ambient space `W = W1 ⊕ W2` with the `W1` coordinates first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusSplit {
    pub dim1: usize,
    pub dim2: usize,
}

/// `(iota1_inv, iota2_inv, rho1, rho2)` of a point, each reported inside its
/// own block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockProfile<T: Scalar> {
    pub iota1_inv: Subspace<T>,
    pub iota2_inv: Subspace<T>,
    pub rho1: Subspace<T>,
    pub rho2: Subspace<T>,
}

impl<T: Scalar> BlockProfile<T> {
    /// Degree of the orbit closure; zero exactly for fixed points.
    pub fn degree(&self) -> usize {
        self.rho1.dim() - self.iota1_inv.dim()
    }

    pub fn is_fixed(&self) -> bool {
        self.degree() == 0
    }
}

/// Evidence that two orbit closures meet transversally at `point`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentCertificate {
    /// Each nonfixed curve's leading Plücker term is proportional to `point`.
    pub passes_through: bool,
    /// Each nonfixed curve has a nonzero first-order term.
    pub tangents_nonzero: bool,
    /// Rank of `[point; tangent...]`.
    pub rank: usize,
    /// `1 +` number of nonfixed curves.
    pub expected_rank: usize,
}

impl TangentCertificate {
    pub fn passes(&self) -> bool {
        self.passes_through && self.tangents_nonzero && self.rank == self.expected_rank
    }
}

impl TorusSplit {
    pub fn new(dim1: usize, dim2: usize) -> Result<Self> {
        if dim1 + dim2 == 0 {
            return Err(Error::Precondition(
                "ambient dimension must be positive".into(),
            ));
        }
        Ok(Self { dim1, dim2 })
    }

    pub fn ambient(&self) -> usize {
        self.dim1 + self.dim2
    }

    pub fn w1(&self) -> Range<usize> {
        0..self.dim1
    }

    pub fn w2(&self) -> Range<usize> {
        self.dim1..self.ambient()
    }

    /// `(#W1 columns, #W2 columns)` of a column set.
    pub fn weight(&self, cols: &[usize]) -> (usize, usize) {
        let n1 = cols.iter().filter(|&&c| c < self.dim1).count();
        (n1, cols.len() - n1)
    }

    /// `a1 ⊕ a2` with `a1 ⊆ W1`, `a2 ⊆ W2`.
    pub fn join<T: Scalar>(&self, a1: &Subspace<T>, a2: &Subspace<T>) -> Result<Subspace<T>> {
        if a1.ambient_dim() != self.dim1 || a2.ambient_dim() != self.dim2 {
            return Err(Error::AmbientMismatch {
                left: self.ambient(),
                right: a1.ambient_dim() + a2.ambient_dim(),
            });
        }
        Ok(Subspace::direct_sum(a1, a2))
    }

    /// `x * v = (x⁻¹ id_W1 ⊕ id_W2) v`.
    pub fn act<T: Scalar>(&self, x: &T, v: &Subspace<T>) -> Result<Subspace<T>> {
        self.check(v)?;
        if x.is_zero() {
            return Err(Error::ZeroParameter);
        }
        Ok(v.scale_block(self.w1(), &x.inv()))
    }

    pub fn block_profile<T: Scalar>(&self, v: &Subspace<T>) -> Result<BlockProfile<T>> {
        self.check(v)?;
        Ok(BlockProfile {
            iota1_inv: v.block_preimage(self.w1()),
            iota2_inv: v.block_preimage(self.w2()),
            rho1: v.project(self.w1()),
            rho2: v.project(self.w2()),
        })
    }

    pub fn is_fixed<T: Scalar>(&self, v: &Subspace<T>) -> Result<bool> {
        Ok(self.block_profile(v)?.is_fixed())
    }

    /// `lim x*v` as `x → 0` (`rho1 ⊕ iota2_inv`) or `x → ∞` (`iota1_inv ⊕ rho2`).
    pub fn limit<T: Scalar>(&self, v: &Subspace<T>, direction: Direction) -> Result<Subspace<T>> {
        let p = self.block_profile(v)?;
        match direction {
            Direction::Zero => self.join(&p.rho1, &p.iota2_inv),
            Direction::Infinity => self.join(&p.iota1_inv, &p.rho2),
        }
    }

    pub fn orbit_degree<T: Scalar>(&self, v: &Subspace<T>) -> Result<usize> {
        Ok(self.block_profile(v)?.degree())
    }

    /// Block weights `(n1, n2)` of the nonzero Plücker coordinates of `v`.
    pub fn orbit_weight_profile<T: Scalar>(
        &self,
        v: &Subspace<T>,
    ) -> Result<BTreeSet<(usize, usize)>> {
        self.check(v)?;
        Ok(pluecker(v)
            .nonzero()
            .map(|(cols, _)| self.weight(cols))
            .collect())
    }

    /// Intersection of the orbit closures of two nonfixed points of equal
    /// dimension, under the hypothesis `rho1(w) = iota1_inv(v)` or the mirrored
    /// `rho2(w) = iota2_inv(v)`. Returns the unique common point, or `None`.
    pub fn orbit_intersection<T: Scalar>(
        &self,
        v: &Subspace<T>,
        w: &Subspace<T>,
    ) -> Result<Option<Subspace<T>>> {
        if v.dim() != w.dim() {
            return Err(Error::Precondition(format!(
                "orbit intersection needs equal dimensions, got {} and {}",
                v.dim(),
                w.dim()
            )));
        }
        let pv = self.block_profile(v)?;
        let pw = self.block_profile(w)?;
        if pv.is_fixed() || pw.is_fixed() {
            return Err(Error::Precondition(
                "orbit intersection needs nonfixed points".into(),
            ));
        }
        if pw.rho1 == pv.iota1_inv {
            if pv.rho2 == pw.iota2_inv {
                return Ok(Some(self.join(&pv.iota1_inv, &pv.rho2)?));
            }
            return Ok(None);
        }
        if pw.rho2 == pv.iota2_inv {
            if pv.rho1 == pw.iota1_inv {
                return Ok(Some(self.join(&pv.rho1, &pv.iota2_inv)?));
            }
            return Ok(None);
        }
        Err(Error::HypothesisViolated(
            "neither rho1(w) = iota1_inv(v) nor rho2(w) = iota2_inv(v)".into(),
        ))
    }

    /// Leading and first-order Plücker terms of the orbit of `v` at one end,
    /// as dense vectors over all column sets. `None` for fixed points.
    pub fn expansion_at<T: Scalar>(
        &self,
        v: &Subspace<T>,
        end: Direction,
    ) -> Result<Option<(Vec<T>, Vec<T>)>> {
        self.check(v)?;
        let p = pluecker(v);
        let weights: Vec<usize> = p.iter().map(|(c, _)| self.weight(c).0).collect();
        let present: Vec<usize> = p
            .iter()
            .zip(&weights)
            .filter(|((_, x), _)| !x.is_zero())
            .map(|(_, &w)| w)
            .collect();
        let lo = present.iter().copied().min().unwrap_or(0);
        let hi = present.iter().copied().max().unwrap_or(0);
        if lo == hi {
            return Ok(None);
        }
        // x^{-n1} scaling: at ∞ the smallest n1 dominates, at 0 the largest.
        let (lead, first) = match end {
            Direction::Infinity => (lo, lo + 1),
            Direction::Zero => (hi, hi - 1),
        };
        let pick = |target: usize| -> Vec<T> {
            p.iter()
                .zip(&weights)
                .map(|((_, x), &w)| if w == target { x.clone() } else { T::zero() })
                .collect()
        };
        Ok(Some((pick(lead), pick(first))))
    }

    /// First-order transversality check at `point` for the orbit closures of
    /// `incoming` (meeting `point` at its `∞` end) and `outgoing` (at its `0`
    /// end). Fixed curves contribute no tangent.
    pub fn tangent_certificate<T: Scalar>(
        &self,
        point: &Subspace<T>,
        incoming: &Subspace<T>,
        outgoing: &Subspace<T>,
    ) -> Result<TangentCertificate> {
        self.check(point)?;
        let target: Vec<T> = pluecker(point).iter().map(|(_, x)| x.clone()).collect();
        let mut rows = vec![target.clone()];
        let mut passes_through = true;
        let mut tangents_nonzero = true;
        for (v, end) in [(incoming, Direction::Infinity), (outgoing, Direction::Zero)] {
            if let Some((lead, first)) = self.expansion_at(v, end)? {
                passes_through &= proportional(&lead, &target);
                tangents_nonzero &= first.iter().any(|x| !x.is_zero());
                rows.push(first);
            }
        }
        let expected_rank = rows.len();
        let rank = Matrix::from_rows(target.len(), &rows)?.rank();
        Ok(TangentCertificate {
            passes_through,
            tangents_nonzero,
            rank,
            expected_rank,
        })
    }

    fn check<T: Scalar>(&self, v: &Subspace<T>) -> Result<()> {
        if v.ambient_dim() != self.ambient() {
            return Err(Error::AmbientMismatch {
                left: self.ambient(),
                right: v.ambient_dim(),
            });
        }
        Ok(())
    }
}

fn proportional<T: Scalar>(a: &[T], b: &[T]) -> bool {
    let Some(k) = b.iter().position(|x| !x.is_zero()) else {
        return a.iter().all(Zero::is_zero);
    };
    if a[k].is_zero() {
        return false;
    }
    let s = a[k].clone() / b[k].clone();
    a.iter().zip(b).all(|(x, y)| *x == s.clone() * y.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    // Coordinates (e1, e2, f1, f2) unless stated otherwise.
    const S22: TorusSplit = TorusSplit { dim1: 2, dim2: 2 };

    fn span(n: usize, vs: &[&[i64]]) -> Subspace<Rational> {
        Subspace::from_matrix(&Matrix::from_ints(n, vs).unwrap())
    }

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn act_examples() {
        let split_v = span(4, &[&[1, 0, 0, 0], &[0, 0, 0, 1]]);
        assert_eq!(S22.act(&q(5), &split_v).unwrap(), split_v);
        let v = span(4, &[&[1, 0, 1, 0]]);
        assert_eq!(S22.act(&q(2), &v).unwrap(), span(4, &[&[1, 0, 2, 0]]));
        let w = span(4, &[&[1, 2, 1, 0], &[0, 1, -1, 3]]);
        let lhs = S22.act(&q(3), &S22.act(&q(2), &w).unwrap()).unwrap();
        assert_eq!(lhs, S22.act(&q(6), &w).unwrap());
        assert_eq!(S22.act(&q(1), &w).unwrap(), w);
        assert_eq!(S22.act(&q(0), &w), Err(Error::ZeroParameter));
    }

    #[test]
    fn block_profile_examples() {
        let p = S22.block_profile(&span(4, &[&[1, 0, 1, 0]])).unwrap();
        assert!(p.iota1_inv.is_zero());
        assert!(p.iota2_inv.is_zero());
        assert_eq!(p.rho1, span(2, &[&[1, 0]]));
        assert_eq!(p.rho2, span(2, &[&[1, 0]]));

        let p = S22
            .block_profile(&span(4, &[&[1, 0, 0, 0], &[0, 0, 1, 0]]))
            .unwrap();
        assert_eq!(p.iota1_inv, span(2, &[&[1, 0]]));
        assert_eq!(p.iota2_inv, span(2, &[&[1, 0]]));
        assert_eq!(p.rho1, span(2, &[&[1, 0]]));
        assert_eq!(p.rho2, span(2, &[&[1, 0]]));

        let p = S22
            .block_profile(&span(4, &[&[1, 0, 1, 0], &[0, 1, 0, 0]]))
            .unwrap();
        assert_eq!(p.iota1_inv, span(2, &[&[0, 1]]));
        assert!(p.iota2_inv.is_zero());
        assert_eq!(p.rho1, Subspace::full(2));
        assert_eq!(p.rho2, span(2, &[&[1, 0]]));
    }

    #[test]
    fn fixedness() {
        assert!(S22
            .is_fixed(&span(4, &[&[1, 0, 0, 0], &[0, 0, 1, 0]]))
            .unwrap());
        assert!(!S22.is_fixed(&span(4, &[&[1, 0, 1, 0]])).unwrap());
        assert!(S22.is_fixed(&Subspace::<Rational>::zero(4)).unwrap());
    }

    #[test]
    fn limits() {
        let v = span(4, &[&[1, 0, 1, 0]]);
        assert_eq!(
            S22.limit(&v, Direction::Zero).unwrap(),
            span(4, &[&[1, 0, 0, 0]])
        );
        assert_eq!(
            S22.limit(&v, Direction::Infinity).unwrap(),
            span(4, &[&[0, 0, 1, 0]])
        );
        let w = span(4, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
        assert_eq!(
            S22.limit(&w, Direction::Zero).unwrap(),
            span(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]])
        );
        assert_eq!(
            S22.limit(&w, Direction::Infinity).unwrap(),
            span(4, &[&[0, 0, 1, 0], &[0, 0, 0, 1]])
        );
        let f = span(4, &[&[0, 1, 0, 0], &[0, 0, 1, 1]]);
        assert_eq!(S22.limit(&f, Direction::Zero).unwrap(), f);
        assert_eq!(S22.limit(&f, Direction::Infinity).unwrap(), f);
    }

    #[test]
    fn degrees() {
        assert_eq!(S22.orbit_degree(&span(4, &[&[0, 1, 0, 0]])).unwrap(), 0);
        assert_eq!(S22.orbit_degree(&span(4, &[&[1, 0, 1, 0]])).unwrap(), 1);
        assert_eq!(
            S22.orbit_degree(&span(4, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]))
                .unwrap(),
            2
        );
    }

    #[test]
    fn weight_profiles() {
        let fixed = span(4, &[&[1, 0, 0, 0], &[0, 0, 0, 1]]);
        assert_eq!(
            S22.orbit_weight_profile(&fixed).unwrap(),
            BTreeSet::from([(1, 1)])
        );
        assert_eq!(
            S22.orbit_weight_profile(&span(4, &[&[1, 0, 1, 0]]))
                .unwrap(),
            BTreeSet::from([(1, 0), (0, 1)])
        );
        assert_eq!(
            S22.orbit_weight_profile(&span(4, &[&[1, 0, 1, 0], &[0, 1, 0, 0]]))
                .unwrap(),
            BTreeSet::from([(2, 0), (1, 1)])
        );
    }

    #[test]
    fn intersection_point_and_empty() {
        // W1 = <e1, e2>, W2 = <f1, f2>. v = <e1 + f1, e2>: iota1_inv = <e2>,
        // rho2 = <f1>. w = <e2 + f2, f1> has rho1 = <e2> and iota2_inv = <f1>.
        let v = span(4, &[&[1, 0, 1, 0], &[0, 1, 0, 0]]);
        let w = span(4, &[&[0, 1, 0, 1], &[0, 0, 1, 0]]);
        let point = S22.orbit_intersection(&v, &w).unwrap().unwrap();
        assert_eq!(point, span(4, &[&[0, 1, 0, 0], &[0, 0, 1, 0]]));
        assert_eq!(point, S22.limit(&v, Direction::Infinity).unwrap());
        assert_eq!(point, S22.limit(&w, Direction::Zero).unwrap());
        assert!(S22.tangent_certificate(&point, &v, &w).unwrap().passes());

        // Same rho1(w') = <e2> but iota2_inv(w') = <f2> != rho2(v).
        let w2 = span(4, &[&[0, 1, 1, 0], &[0, 0, 0, 1]]);
        assert_eq!(S22.orbit_intersection(&v, &w2).unwrap(), None);
    }

    #[test]
    fn intersection_misuse() {
        let v = span(4, &[&[1, 0, 1, 0]]);
        let w = span(4, &[&[0, 1, 0, 1]]);
        assert!(matches!(
            S22.orbit_intersection(&v, &w),
            Err(Error::HypothesisViolated(_))
        ));
        let fixed = span(4, &[&[1, 0, 0, 0]]);
        assert!(matches!(
            S22.orbit_intersection(&v, &fixed),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn tangent_certificate_detects_wrong_point() {
        let v = span(4, &[&[1, 0, 1, 0], &[0, 1, 0, 0]]);
        let w = span(4, &[&[0, 1, 0, 1], &[0, 0, 1, 0]]);
        let wrong = span(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        assert!(!S22.tangent_certificate(&wrong, &v, &w).unwrap().passes());
    }

    #[test]
    fn ambient_checked() {
        let v = span(3, &[&[1, 0, 1]]);
        assert!(matches!(
            S22.limit(&v, Direction::Zero),
            Err(Error::AmbientMismatch { .. })
        ));
    }
}
