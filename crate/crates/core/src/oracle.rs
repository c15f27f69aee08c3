//! Brute-force cross-checks for the torus and chain code.
//!
//! Limits and degrees are recomputed from the torus scaling of raw Plücker
//! coordinates: `x * V` has coordinates `x^{-n1(I)} p_I(V)`, so as `x → 0` only
//! the minors of largest `n1` survive, and as `x → ∞` only those of smallest
//! `n1`. Minors are computed here by cofactor expansion and the surviving
//! vector is turned back into a subspace by direct substitution; nothing from
//! [`crate::torus`] or [`crate::linalg::pluecker`] is used.

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chain::{ComponentKind, ContinuousChain};
use crate::linalg::{rref, Matrix, Subspace};
use crate::scalar::Scalar;
use crate::torus::{Direction, TorusSplit};
use crate::{QSubspace, Rational};

/// Cofactor expansion along the first row.
fn laplace<T: Scalar>(rows: &[&[T]], cols: &[usize]) -> T {
    match rows {
        [] => T::one(),
        [first, rest @ ..] => {
            let mut acc = T::zero();
            for (k, &c) in cols.iter().enumerate() {
                let a = &first[c];
                if a.is_zero() {
                    continue;
                }
                let minor_cols: Vec<usize> = cols
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != k)
                    .map(|(_, &c)| c)
                    .collect();
                let term = a.clone() * laplace(rest, &minor_cols);
                if k % 2 == 0 {
                    acc = acc + term;
                } else {
                    acc = acc - term;
                }
            }
            acc
        }
    }
}

fn subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for c in start..n {
        if n - c < k - cur.len() {
            break;
        }
        cur.push(c);
        subsets(n, k, c + 1, cur, out);
        cur.pop();
    }
}

/// All nonzero maximal minors of a basis of `v`, keyed by sorted column set.
fn raw_minors<T: Scalar>(v: &Subspace<T>) -> Vec<(Vec<usize>, T)> {
    let rows: Vec<&[T]> = v.basis().rows().collect();
    let mut sets = Vec::new();
    subsets(v.ambient_dim(), rows.len(), 0, &mut Vec::new(), &mut sets);
    sets.into_iter()
        .map(|cols| {
            let m = laplace(&rows, &cols);
            (cols, m)
        })
        .filter(|(_, m)| !m.is_zero())
        .collect()
}

fn n1(split: &TorusSplit, cols: &[usize]) -> usize {
    cols.iter().filter(|&&c| c < split.dim1).count()
}

/// Sign of the permutation sorting `seq` (distinct entries).
fn sort_sign(seq: &[usize]) -> bool {
    let mut inversions = 0;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] > seq[b] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

/// Rebuilds the subspace with the given (decomposable) Plücker vector: with a
/// pivot set `I0`, row `a` has entry `p(I0 with I0[a] replaced by c) / p(I0)`.
fn reconstruct<T: Scalar>(ambient: usize, coords: &[(Vec<usize>, T)]) -> Subspace<T> {
    let Some((pivot, p0)) = coords.first() else {
        return Subspace::zero(ambient);
    };
    let lookup = |cols: &[usize]| -> T {
        let mut sorted = cols.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return T::zero();
        }
        let value = coords
            .iter()
            .find(|(c, _)| *c == sorted)
            .map(|(_, x)| x.clone())
            .unwrap_or_else(T::zero);
        if sort_sign(cols) {
            value
        } else {
            -value
        }
    };
    let mut data = Vec::with_capacity(pivot.len() * ambient);
    for a in 0..pivot.len() {
        for c in 0..ambient {
            let mut cols = pivot.clone();
            cols[a] = c;
            data.push(lookup(&cols) / p0.clone());
        }
    }
    let m = Matrix::new(pivot.len(), ambient, data).expect("shape is consistent");
    Subspace::from_matrix(&rref(&m))
}

/// Limit of `x * v` at `x → 0` or `x → ∞`, from the dominant Plücker terms.
pub fn limit_via_pluecker<T: Scalar>(
    split: &TorusSplit,
    v: &Subspace<T>,
    direction: Direction,
) -> Subspace<T> {
    let minors = raw_minors(v);
    let weights = minors.iter().map(|(c, _)| n1(split, c));
    let target = match direction {
        Direction::Zero => weights.max(),
        Direction::Infinity => weights.min(),
    };
    let Some(target) = target else {
        return v.clone();
    };
    let surviving: Vec<_> = minors
        .into_iter()
        .filter(|(c, _)| n1(split, c) == target)
        .collect();
    reconstruct(v.ambient_dim(), &surviving)
}

/// Spread of `n1` over the nonzero minors: the degree of the orbit closure.
pub fn degree_via_pluecker<T: Scalar>(split: &TorusSplit, v: &Subspace<T>) -> usize {
    let weights: Vec<usize> = raw_minors(v).iter().map(|(c, _)| n1(split, c)).collect();
    match (weights.iter().max(), weights.iter().min()) {
        (Some(hi), Some(lo)) => hi - lo,
        _ => 0,
    }
}

/// `x * v` computed by scaling the `W1` columns of a basis by `x^{-1}`.
fn scale<T: Scalar>(split: &TorusSplit, x: &T, v: &Subspace<T>) -> Subspace<T> {
    let mut m = v.basis().clone();
    let inv = T::one() / x.clone();
    for c in 0..split.dim1 {
        m.scale_column(c, &inv);
    }
    Subspace::from_matrix(&rref(&m))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SampleFailure {
    /// `x * base` left the section space twisted by `x`.
    Membership { index: Rational, x: Rational },
    /// Two distinct parameters gave the same point on an orbit component.
    NotInjective {
        index: Rational,
        x: Rational,
        y: Rational,
    },
    /// A fixed component moved.
    FixedMoved { index: Rational, x: Rational },
    /// The recorded kind disagrees with the sampled behaviour.
    Model { index: Rational, detail: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleReport {
    pub samples_per_component: usize,
    pub failures: Vec<SampleFailure>,
}

impl SampleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `count` distinct nonzero rationals other than 1.
pub fn sample_parameters(count: usize, rng: &mut impl Rng) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::with_capacity(count);
    while out.len() < count {
        let num: i64 = rng.random_range(-60..=60);
        let den: i64 = rng.random_range(1..=9);
        if num == 0 {
            continue;
        }
        let x = Rational::new(num.into(), den.into());
        if x.is_one() || out.contains(&x) {
            continue;
        }
        out.push(x);
    }
    out
}

/// Samples each component's orbit at random parameters and checks that every
/// sample lies in the twisted section space, that orbit components are
/// injective on the samples and that fixed components do not move.
pub fn sample_orbit_check(
    chain: &ContinuousChain,
    samples_per_component: usize,
    seed: u64,
) -> SampleReport {
    let split = chain.model.split();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for comp in &chain.components {
        let xs = sample_parameters(samples_per_component, &mut rng);
        let mut points: Vec<(Rational, QSubspace)> = Vec::with_capacity(xs.len());
        for x in xs {
            let point = scale(&split, &x, &comp.base_space);
            let fiber = match chain.model.twisted_space_at(&comp.index, &x) {
                Ok(f) => f,
                Err(e) => {
                    failures.push(SampleFailure::Model {
                        index: comp.index.clone(),
                        detail: e.to_string(),
                    });
                    break;
                }
            };
            if point.ambient_dim() != fiber.ambient_dim() || !point.is_subspace_of(&fiber) {
                failures.push(SampleFailure::Membership {
                    index: comp.index.clone(),
                    x: x.clone(),
                });
            }
            match comp.kind {
                ComponentKind::Fixed => {
                    if point != comp.base_space {
                        failures.push(SampleFailure::FixedMoved {
                            index: comp.index.clone(),
                            x: x.clone(),
                        });
                    }
                }
                ComponentKind::Orbit => {
                    if let Some((y, _)) = points.iter().find(|(_, p)| *p == point) {
                        failures.push(SampleFailure::NotInjective {
                            index: comp.index.clone(),
                            x: x.clone(),
                            y: y.clone(),
                        });
                    }
                }
            }
            points.push((x, point));
        }
    }
    SampleReport {
        samples_per_component,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::build_chain;
    use crate::delta::DeltaSet;
    use crate::model::CurveModel;
    use crate::series::LevelDeltaLLS;
    use num_traits::Zero;

    const S22: TorusSplit = TorusSplit { dim1: 2, dim2: 2 };

    fn span(n: usize, vs: &[&[i64]]) -> QSubspace {
        QSubspace::from_matrix(&Matrix::from_ints(n, vs).unwrap())
    }

    #[test]
    fn laplace_matches_small_determinants() {
        let m = Matrix::<Rational>::from_ints(3, &[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]]).unwrap();
        let rows: Vec<&[Rational]> = m.rows().collect();
        assert_eq!(laplace(&rows, &[0, 1, 2]), m.determinant().unwrap());
        assert_eq!(laplace(&rows[..1], &[2]), Rational::from_int(1));
    }

    #[test]
    fn limits_of_simple_lines() {
        // (e1, e2, f1, f2)
        let v = span(4, &[&[1, 0, 1, 0]]);
        assert_eq!(
            limit_via_pluecker(&S22, &v, Direction::Zero),
            span(4, &[&[1, 0, 0, 0]])
        );
        assert_eq!(
            limit_via_pluecker(&S22, &v, Direction::Infinity),
            span(4, &[&[0, 0, 1, 0]])
        );
        let w = span(4, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
        assert_eq!(
            limit_via_pluecker(&S22, &w, Direction::Zero),
            span(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]])
        );
        assert_eq!(
            limit_via_pluecker(&S22, &w, Direction::Infinity),
            span(4, &[&[0, 0, 1, 0], &[0, 0, 0, 1]])
        );
        assert_eq!(degree_via_pluecker(&S22, &v), 1);
        assert_eq!(degree_via_pluecker(&S22, &w), 2);
    }

    #[test]
    fn fixed_points_are_their_own_limits() {
        let v = span(4, &[&[1, 3, 0, 0], &[0, 0, 2, 1]]);
        for dir in [Direction::Zero, Direction::Infinity] {
            assert_eq!(limit_via_pluecker(&S22, &v, dir), v);
        }
        assert_eq!(degree_via_pluecker(&S22, &v), 0);
        let z = QSubspace::zero(4);
        assert_eq!(limit_via_pluecker(&S22, &z, Direction::Zero), z);
    }

    fn e4_chain() -> ContinuousChain {
        let g = LevelDeltaLLS::new(
            CurveModel::new(1),
            0,
            DeltaSet::unit(1),
            vec![span(4, &[&[1, 0, 0, 1]]), span(4, &[&[0, 0, 0, 1]])],
        )
        .unwrap();
        build_chain(&g).unwrap()
    }

    #[test]
    fn e4_samples_pass() {
        let report = sample_orbit_check(&e4_chain(), 20, 7);
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn corrupted_base_space_is_caught() {
        let mut c = e4_chain();
        // (1 | 0): violates the gluing at index 0.
        c.components[0].base_space = span(4, &[&[1, 0, 0, 0]]);
        let report = sample_orbit_check(&c, 5, 1);
        assert!(report
            .failures
            .iter()
            .any(|f| matches!(f, SampleFailure::Membership { .. })));
    }

    #[test]
    fn parameters_are_distinct() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let xs = sample_parameters(50, &mut rng);
        for (a, x) in xs.iter().enumerate() {
            assert!(!x.is_zero() && !x.is_one());
            assert!(!xs[a + 1..].contains(x));
        }
    }
}
