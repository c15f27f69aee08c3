//! Level-δ limit linear series on the model curve.
//!
//! A series is one `(r+1)`-dimensional subspace `V(i) ⊆ U1 ⊕ U2` per `i ∈ Δ(δ)`.
//! All conditions are phrased through the block maps of [`crate::torus`]:
//!
//! * compatible: `rho2(V(i)) ⊆ iota2_inv(V(j))` and `rho1(V(j)) ⊆ iota1_inv(V(i))`
//!   for consecutive `i < j`;
//! * exact: both inclusions are equalities.

use std::fmt;

use num_traits::One;

use crate::delta::{DeltaSet, NumericalData};
use crate::error::{Error, Result};
use crate::linalg::pluecker;
use crate::model::CurveModel;
use crate::torus::{BlockProfile, TorusSplit};
use crate::{QSubspace, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelDeltaLLS {
    model: CurveModel,
    r: usize,
    delta: DeltaSet,
    spaces: Vec<QSubspace>,
}

/// Which of the two linking conditions failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkSide {
    /// `rho2(V(i))` versus `iota2_inv(V(j))`.
    Z,
    /// `rho1(V(j))` versus `iota1_inv(V(i))`.
    Y,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairFailure {
    pub i: Rational,
    pub j: Rational,
    pub side: LinkSide,
    /// Dimension of the `rho` side.
    pub rho_dim: usize,
    /// Dimension of the `iota` side.
    pub iota_dim: usize,
}

impl fmt::Display for PairFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            LinkSide::Z => write!(
                f,
                "({}, {}): rho2(V({})) [dim {}] vs iota2_inv(V({})) [dim {}]",
                self.i, self.j, self.i, self.rho_dim, self.j, self.iota_dim
            ),
            LinkSide::Y => write!(
                f,
                "({}, {}): rho1(V({})) [dim {}] vs iota1_inv(V({})) [dim {}]",
                self.i, self.j, self.j, self.rho_dim, self.i, self.iota_dim
            ),
        }
    }
}

/// Per-pair outcome of a compatibility or exactness check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinkReport {
    pub failures: Vec<PairFailure>,
}

impl LinkReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failing_pair(&self) -> Option<(Rational, Rational)> {
        self.failures.first().map(|f| (f.i.clone(), f.j.clone()))
    }
}

impl LevelDeltaLLS {
    /// Checks the structural invariants: matching `d`, one space per index,
    /// ambient `U1 ⊕ U2`, every space of dimension `r + 1`.
    pub fn new(
        model: CurveModel,
        r: usize,
        delta: DeltaSet,
        spaces: Vec<QSubspace>,
    ) -> Result<Self> {
        if delta.d() != model.d {
            return Err(Error::DimensionMismatch {
                expected: model.d,
                found: delta.d(),
            });
        }
        if spaces.len() != delta.len() {
            return Err(Error::DimensionMismatch {
                expected: delta.len(),
                found: spaces.len(),
            });
        }
        for v in &spaces {
            if v.ambient_dim() != model.ambient() {
                return Err(Error::AmbientMismatch {
                    left: model.ambient(),
                    right: v.ambient_dim(),
                });
            }
            if v.dim() != r + 1 {
                return Err(Error::DimensionMismatch {
                    expected: r + 1,
                    found: v.dim(),
                });
            }
        }
        Ok(Self {
            model,
            r,
            delta,
            spaces,
        })
    }

    /// Like [`LevelDeltaLLS::new`], keyed by index. Every index of `Δ(δ)`
    /// must be present and no others.
    pub fn from_indexed(
        model: CurveModel,
        r: usize,
        delta: DeltaSet,
        spaces: impl IntoIterator<Item = (Rational, QSubspace)>,
    ) -> Result<Self> {
        let mut slots: Vec<Option<QSubspace>> = vec![None; delta.len()];
        for (i, v) in spaces {
            let pos = delta
                .position(&i)
                .ok_or_else(|| Error::MissingIndex(i.clone()))?;
            slots[pos] = Some(v);
        }
        let spaces = slots
            .into_iter()
            .zip(delta.indices())
            .map(|(v, i)| v.ok_or_else(|| Error::MissingIndex(i.clone())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(model, r, delta, spaces)
    }

    pub fn model(&self) -> CurveModel {
        self.model
    }

    pub fn d(&self) -> usize {
        self.model.d
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn delta(&self) -> &DeltaSet {
        &self.delta
    }

    pub fn spaces(&self) -> &[QSubspace] {
        &self.spaces
    }

    pub fn split(&self) -> TorusSplit {
        self.model.split()
    }

    pub fn space_at(&self, i: &Rational) -> Option<&QSubspace> {
        self.delta.position(i).map(|p| &self.spaces[p])
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Rational, &QSubspace)> + '_ {
        self.delta.indices().iter().zip(&self.spaces)
    }

    pub fn profiles(&self) -> Vec<BlockProfile<Rational>> {
        let split = self.split();
        self.spaces
            .iter()
            .map(|v| {
                split
                    .block_profile(v)
                    .expect("ambient checked on construction")
            })
            .collect()
    }

    /// Indices whose space is not inside the section space of the twist.
    pub fn membership_failures(&self) -> Vec<Rational> {
        self.entries()
            .filter(|(i, v)| !self.model.is_generalized_linear_series(v, i, self.r as i64))
            .map(|(i, _)| i.clone())
            .collect()
    }

    pub fn check_membership(&self) -> Result<()> {
        match self.membership_failures().first() {
            None => Ok(()),
            Some(i) => Err(Error::Precondition(format!(
                "V({i}) is not an {}-dimensional space of sections of the twist at {i}",
                self.r + 1
            ))),
        }
    }

    fn link_report(&self, exact: bool) -> LinkReport {
        let profiles = self.profiles();
        let idx = self.delta.indices();
        let mut failures = Vec::new();
        for k in 0..profiles.len().saturating_sub(1) {
            let (a, b) = (&profiles[k], &profiles[k + 1]);
            let sides = [
                (LinkSide::Z, &a.rho2, &b.iota2_inv),
                (LinkSide::Y, &b.rho1, &a.iota1_inv),
            ];
            for (side, rho, iota) in sides {
                let ok = if exact {
                    rho == iota
                } else {
                    rho.is_subspace_of(iota)
                };
                if !ok {
                    failures.push(PairFailure {
                        i: idx[k].clone(),
                        j: idx[k + 1].clone(),
                        side,
                        rho_dim: rho.dim(),
                        iota_dim: iota.dim(),
                    });
                }
            }
        }
        LinkReport { failures }
    }

    pub fn check_compatible(&self) -> LinkReport {
        self.link_report(false)
    }

    pub fn check_exact(&self) -> LinkReport {
        self.link_report(true)
    }

    /// `p_i = dim iota2_inv(V(i))`, `q_i = dim iota1_inv(V(i))`, at every index
    /// including the two ends of `Δ`.
    pub fn numerical_data(&self) -> NumericalData {
        let pq: Vec<(usize, usize)> = self
            .profiles()
            .iter()
            .map(|p| (p.iota2_inv.dim(), p.iota1_inv.dim()))
            .collect();
        NumericalData::new(self.r, self.delta.indices(), &pq).expect("one entry per index")
    }

    /// Restricts an exact series to the indices where `m ≠ 0` or the index is
    /// an integer. The result lives over `Δ(δ')` and is exact and minimal.
    pub fn reduce_minimal(&self) -> Result<Self> {
        if let Some((i, j)) = self.check_exact().first_failing_pair() {
            return Err(Error::NotExact(Box::new((i, j))));
        }
        let (reduced, kept) = self.delta.support_subset(&self.numerical_data())?;
        let spaces = kept.iter().map(|&p| self.spaces[p].clone()).collect();
        Self::new(self.model, self.r, reduced, spaces)
    }

    /// Restriction to the integer indices `0..=d`, a level-1 series.
    pub fn project_level_one(&self) -> Self {
        let spaces = self
            .entries()
            .filter(|(i, _)| i.is_integer())
            .map(|(_, v)| v.clone())
            .collect();
        Self::new(self.model, self.r, DeltaSet::unit(self.d()), spaces)
            .expect("integer slots always present")
    }

    /// Per-index scalars `c_i` with `other(i) = c_i * self(i)`, where `c_i = 1`
    /// at integer indices, if they exist.
    pub fn torus_witness(&self, other: &Self) -> Option<Vec<Rational>> {
        if self.model != other.model || self.r != other.r || self.delta != other.delta {
            return None;
        }
        let split = self.split();
        self.entries()
            .zip(&other.spaces)
            .map(|((i, a), b)| {
                if i.is_integer() {
                    (a == b).then(Rational::one)
                } else {
                    scaling_witness(&split, a, b)
                }
            })
            .collect()
    }

    pub fn torus_equivalent(&self, other: &Self) -> bool {
        self.torus_witness(other).is_some()
    }

    /// Applies `c_i` at each non-integer index; integer slots are untouched.
    pub fn scale_non_integer(&self, factors: &[Rational]) -> Result<Self> {
        if factors.len() != self.spaces.len() {
            return Err(Error::DimensionMismatch {
                expected: self.spaces.len(),
                found: factors.len(),
            });
        }
        let split = self.split();
        let spaces = self
            .entries()
            .zip(factors)
            .map(|((i, v), c)| {
                if i.is_integer() {
                    Ok(v.clone())
                } else {
                    split.act(c, v)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.model, self.r, self.delta.clone(), spaces)
    }
}

/// `Σ m_i = r + 1`.
pub fn is_exact_via_sum(n: &NumericalData) -> bool {
    n.is_exact()
}

/// `m_i > 0` at every non-integer index of `Δ`.
pub fn is_minimal(n: &NumericalData, delta: &DeltaSet) -> bool {
    n.entries.len() == delta.len()
        && n.entries
            .iter()
            .zip(delta.indices())
            .all(|(e, i)| e.index == *i)
        && n.is_minimal()
}

/// A nonzero `c` with `b = c * a`, found from the ratio of two nonzero Plücker
/// coordinates whose `W1` weights differ by one.
pub fn scaling_witness(split: &TorusSplit, a: &QSubspace, b: &QSubspace) -> Option<Rational> {
    if a == b {
        return Some(Rational::one());
    }
    if a.dim() != b.dim() || a.ambient_dim() != b.ambient_dim() {
        return None;
    }
    let pa = pluecker(a);
    let pb = pluecker(b);
    let support_a: Vec<&[usize]> = pa.nonzero().map(|(c, _)| c).collect();
    let support_b: Vec<&[usize]> = pb.nonzero().map(|(c, _)| c).collect();
    if support_a != support_b {
        return None;
    }
    // Coordinates scale as c^{-n1}; adjacent weights pin down c.
    let ratio = |cols: &[usize]| pb.get(cols).cloned().unwrap() / pa.get(cols).cloned().unwrap();
    let lo = support_a.iter().map(|c| split.weight(c).0).min()?;
    let low = support_a.iter().find(|c| split.weight(c).0 == lo)?;
    let next = support_a.iter().find(|c| split.weight(c).0 == lo + 1)?;
    let c = ratio(low) / ratio(next);
    (split.act(&c, a).ok()? == *b).then_some(c)
}
