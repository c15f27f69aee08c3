use super::Subspace;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// All `k`-element subsets of `0..n`, each sorted, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // Rightmost position that can still advance.
        let Some(p) = (0..k).rev().find(|&p| idx[p] < n - k + p) else {
            return out;
        };
        idx[p] += 1;
        for q in p + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// Plücker coordinates of an `n`-dimensional subspace: one maximal minor per
/// sorted `n`-element column set, listed lexicographically and scaled so the
/// first nonzero one is `1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Pluecker<T> {
    ambient_dim: usize,
    rank: usize,
    coords: Vec<(Vec<usize>, T)>,
}

impl<T: Scalar> Pluecker<T> {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, cols: &[usize]) -> Option<&T> {
        self.coords
            .binary_search_by(|(c, _)| c.as_slice().cmp(cols))
            .ok()
            .map(|i| &self.coords[i].1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[usize], &T)> + '_ {
        self.coords.iter().map(|(c, x)| (c.as_slice(), x))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (&[usize], &T)> + '_ {
        self.iter().filter(|(_, x)| !x.is_zero())
    }
}

/// All maximal minors of the canonical basis of `v`.
pub fn pluecker<T: Scalar>(v: &Subspace<T>) -> Pluecker<T> {
    let n = v.dim();
    let basis = v.basis();
    let mut coords: Vec<(Vec<usize>, T)> = combinations(v.ambient_dim(), n)
        .into_iter()
        .map(|cols| {
            let det = basis
                .select_columns(&cols)
                .determinant()
                .expect("square by construction");
            (cols, det)
        })
        .collect();
    let lead = coords
        .iter()
        .find(|(_, x)| !x.is_zero())
        .map(|(_, x)| x.clone())
        .expect("a basis has a nonzero maximal minor");
    for (_, x) in coords.iter_mut() {
        *x = x.clone() / lead.clone();
    }
    Pluecker {
        ambient_dim: v.ambient_dim(),
        rank: n,
        coords,
    }
}

/// Recovers the subspace from (any scalar multiple of) its Plücker vector.
///
/// `coords` maps sorted column sets to values; missing sets count as zero. The
/// vector must be decomposable; this is checked by recomputing the minors of
/// the reconstruction.
pub fn from_pluecker<T: Scalar>(
    ambient_dim: usize,
    rank: usize,
    coords: &[(Vec<usize>, T)],
) -> Result<Subspace<T>> {
    if rank == 0 {
        return Ok(Subspace::zero(ambient_dim));
    }
    let lookup = |cols: &[usize]| -> T {
        coords
            .iter()
            .find(|(c, _)| c.as_slice() == cols)
            .map(|(_, x)| x.clone())
            .unwrap_or_else(T::zero)
    };
    let (pivot, p0) = coords
        .iter()
        .find(|(c, x)| c.len() == rank && !x.is_zero())
        .map(|(c, x)| (c.clone(), x.clone()))
        .ok_or_else(|| Error::Precondition("Plücker vector is zero".into()))?;
    let mut rows = Vec::with_capacity(rank);
    for k in 0..rank {
        let mut row = vec![T::zero(); ambient_dim];
        for (j, entry) in row.iter_mut().enumerate() {
            let mut tuple = pivot.clone();
            tuple[k] = j;
            *entry = signed_coord(&tuple, &lookup) / p0.clone();
        }
        rows.push(row);
    }
    let v = Subspace::from_spanning(ambient_dim, &rows)?;
    // Decomposability check: the reconstruction must reproduce every coordinate.
    if v.dim() != rank {
        return Err(Error::Precondition(
            "Plücker vector is not decomposable".into(),
        ));
    }
    let back = pluecker(&v);
    let scale = p0 / back.get(&pivot).cloned().unwrap_or_else(T::zero);
    for (cols, x) in back.iter() {
        if lookup(cols) != x.clone() * scale.clone() {
            return Err(Error::Precondition(
                "Plücker vector is not decomposable".into(),
            ));
        }
    }
    Ok(v)
}

/// Value of the alternating extension at an ordered tuple.
fn signed_coord<T: Scalar>(tuple: &[usize], lookup: &impl Fn(&[usize]) -> T) -> T {
    let mut sorted = tuple.to_vec();
    let mut sign = 1;
    // Bubble sort; the swap count gives the permutation sign.
    for i in 0..sorted.len() {
        for j in 0..sorted.len() - 1 - i {
            if sorted[j] > sorted[j + 1] {
                sorted.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return T::zero();
    }
    let x = lookup(&sorted);
    if sign < 0 {
        -x
    } else {
        x
    }
}
