//! Seeded generation of test instances.
//!
//! Series are generated profile-first: pick the numerical data, then realize
//! it. For each index `k` write `a_k = dim ρ1(V_k)`, `b_k = dim ι1⁻¹(V_k)`,
//! `m_k = a_k − b_k` and `e_k = b_k − a_{k+1} ≥ 0` (the gap, zero for exact
//! series). The `W1` parts form a decreasing chain
//! `A1_0 ⊇ B1_0 ⊇ A1_1 ⊇ …` and the `W2` parts an increasing one
//! `B2_0 ⊆ A2_0 ⊆ B2_1 ⊆ …`, both drawn from the flags of the model. Each
//! `V_k` is `B1_k ⊕ B2_k` plus the graph of a random isomorphism
//! `A1_k / B1_k → A2_k / B2_k`, adjusted at integer indices so that the
//! glued coefficients agree.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::delta::{ceil, floor, DeltaSet};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::model::CurveModel;
use crate::series::LevelDeltaLLS;
use crate::torus::{Direction, TorusSplit};
use crate::{QSubspace, Rational, Scalar};

const ATTEMPTS: usize = 64;
const COEFF: i64 = 4;

/// Deterministic generator with independent streams per task.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn small(rng: &mut impl Rng) -> Rational {
    Rational::from_int(rng.random_range(-COEFF..=COEFF))
}

/// Random vector supported on `coords`.
fn random_on(n: usize, coords: &[usize], rng: &mut impl Rng) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    for &c in coords {
        v[c] = small(rng);
    }
    v
}

/// A random `n`-dimensional subspace of `W1 ⊕ W2` mixing vectors inside
/// `W1`, inside `W2`, sparse vectors and dense ones, so that block profiles of
/// every shape occur (including fixed points).
pub fn random_subspace(split: &TorusSplit, n: usize, rng: &mut impl Rng) -> Result<QSubspace> {
    let ambient = split.ambient();
    if n > ambient {
        return Err(Error::Precondition(format!(
            "dimension {n} exceeds ambient {ambient}"
        )));
    }
    let w1: Vec<usize> = split.w1().collect();
    let w2: Vec<usize> = split.w2().collect();
    let all: Vec<usize> = (0..ambient).collect();
    for _ in 0..ATTEMPTS {
        let mut vectors = Vec::with_capacity(n);
        for _ in 0..n {
            let coords: Vec<usize> = match rng.random_range(0..4) {
                0 => w1.clone(),
                1 => w2.clone(),
                2 => {
                    let mut c = all.clone();
                    c.shuffle(rng);
                    c.truncate(rng.random_range(1..=ambient.min(3)));
                    c
                }
                _ => all.clone(),
            };
            vectors.push(random_on(ambient, &coords, rng));
        }
        let v = QSubspace::from_spanning(ambient, &vectors)?;
        if v.dim() == n {
            return Ok(v);
        }
    }
    Err(Error::Generation(format!(
        "no {n}-dimensional subspace of {ambient} found"
    )))
}

/// Knobs for [`random_lls_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProfileRules {
    /// Require `m > 0` at every non-integer index.
    pub minimal: bool,
    /// Require at least one positive gap (a compatible, non-exact series).
    pub non_exact: bool,
}

/// Flag levels at index `i`: `(upper1, lower1, upper2, lower2)`, where
/// `ρ1 ⊆ F1^{upper1}`, `ι1⁻¹ ⊆ F1^{lower1}`, `ρ2 ⊆ level upper2`,
/// `ι2⁻¹ ⊆ level lower2`.
fn flag_levels(i: &Rational) -> (usize, usize, i64, i64) {
    if i.is_integer() {
        let c = floor(i);
        (c, c + 1, c as i64, c as i64 - 1)
    } else {
        (ceil(i), ceil(i), floor(i) as i64, floor(i) as i64)
    }
}

/// One step of a numerical profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProfileStep {
    pub a: usize,
    pub m: usize,
    pub gap: usize,
}

/// Whether `(a, m)` fits the flag bounds at index `i`.
fn fits(d: usize, n: usize, i: &Rational, a: usize, m: usize) -> bool {
    let (u1, l1, u2, l2) = flag_levels(i);
    let b = a - m;
    a + u1 <= d + 1 && b + l1 <= d + 1 && (n - b) as i64 <= u2 + 1 && (n - a) as i64 <= l2 + 1
}

/// Draws a numerical profile uniformly among the choices that can still be
/// completed, by a feasibility table over `(position, a, gap used)`.
pub fn random_profile(
    d: usize,
    r: usize,
    delta: &DeltaSet,
    rules: ProfileRules,
    rng: &mut impl Rng,
) -> Result<Vec<ProfileStep>> {
    let n = r + 1;
    let idx = delta.indices();
    let len = idx.len();
    let min_m = |k: usize| usize::from(rules.minimal && !idx[k].is_integer());
    let max_gap = if rules.non_exact { n } else { 0 };
    // feasible[k][a][g]: the profile can be completed from position k with
    // a_k = a, where g records whether a gap was used before k.
    let mut feasible = vec![vec![[false; 2]; n + 1]; len + 1];
    let done = |g: usize| !rules.non_exact || g == 1;
    let choices =
        |k: usize, a: usize, g: usize, feasible: &Vec<Vec<[bool; 2]>>| -> Vec<(usize, usize)> {
            let mut out = Vec::new();
            for m in min_m(k)..=a {
                if !fits(d, n, &idx[k], a, m) {
                    continue;
                }
                let b = a - m;
                if k + 1 == len {
                    if b == 0 && done(g) {
                        out.push((m, 0));
                    }
                    continue;
                }
                for gap in 0..=max_gap.min(b) {
                    let g2 = usize::from(g == 1 || gap > 0);
                    if feasible[k + 1][b - gap][g2] {
                        out.push((m, gap));
                    }
                }
            }
            out
        };
    for k in (0..len).rev() {
        for a in 0..=n {
            for g in 0..2 {
                feasible[k][a][g] = !choices(k, a, g, &feasible).is_empty();
            }
        }
    }
    if !feasible[0][n][0] {
        return Err(Error::Generation(format!(
            "no {} profile for d = {d}, r = {r}, delta = {:?}",
            if rules.non_exact {
                "non-exact"
            } else {
                "exact"
            },
            delta.delta()
        )));
    }
    let (mut a, mut g) = (n, 0);
    let mut steps = Vec::with_capacity(len);
    for k in 0..len {
        let options = choices(k, a, g, &feasible);
        let (m, gap) = options[rng.random_range(0..options.len())];
        steps.push(ProfileStep { a, m, gap });
        g = usize::from(g == 1 || gap > 0);
        a = a - m - gap;
    }
    Ok(steps)
}

/// Extends `base` by `count` random vectors supported on `coords`, requiring
/// the dimension to grow by exactly `count`. Returns the new vectors.
fn extend(
    base: &QSubspace,
    count: usize,
    coords: &[usize],
    rng: &mut impl Rng,
) -> Option<(QSubspace, Vec<Vec<Rational>>)> {
    let n = base.ambient_dim();
    for _ in 0..ATTEMPTS {
        let new: Vec<Vec<Rational>> = (0..count).map(|_| random_on(n, coords, rng)).collect();
        let mut all = base.basis_vectors();
        all.extend(new.iter().cloned());
        let grown = QSubspace::from_spanning(n, &all).ok()?;
        if grown.dim() == base.dim() + count {
            return Some((grown, new));
        }
    }
    None
}

fn random_invertible(m: usize, rng: &mut impl Rng) -> Matrix<Rational> {
    loop {
        let data = (0..m * m).map(|_| small(rng)).collect();
        let mat = Matrix::new(m, m, data).expect("square");
        if m == 0 || !mat.determinant().expect("square").is_zero() {
            return mat;
        }
    }
}

/// Realizes a numerical profile as a level-δ series.
pub fn realize_profile(
    model: CurveModel,
    r: usize,
    delta: &DeltaSet,
    profile: &[ProfileStep],
    rng: &mut impl Rng,
) -> Result<LevelDeltaLLS> {
    for _ in 0..ATTEMPTS {
        if let Some(g) = try_realize(model, r, delta, profile, rng)? {
            return Ok(g);
        }
    }
    Err(Error::Generation(format!(
        "could not realize profile {profile:?}"
    )))
}

fn try_realize(
    model: CurveModel,
    r: usize,
    delta: &DeltaSet,
    profile: &[ProfileStep],
    rng: &mut impl Rng,
) -> Result<Option<LevelDeltaLLS>> {
    let d = model.d;
    let n = r + 1;
    let half = d + 1;
    let idx = delta.indices();
    let len = idx.len();
    if profile.len() != len {
        return Err(Error::DimensionMismatch {
            expected: len,
            found: profile.len(),
        });
    }
    // Coordinates inside a single block of size d + 1.
    let y_coords = |k: usize| -> Vec<usize> { (k.min(half)..half).collect() };
    let z_coords = |level: i64| -> Vec<usize> {
        let level = level.clamp(-1, d as i64);
        ((d as i64 - level) as usize..half).collect()
    };

    // W1 side, backwards.
    let mut b1 = vec![QSubspace::zero(half); len];
    let mut a1 = vec![QSubspace::zero(half); len];
    let mut u = vec![Vec::new(); len];
    for k in (0..len).rev() {
        let (up1, lo1, _, _) = flag_levels(&idx[k]);
        let step = profile[k];
        let start = if k + 1 < len {
            a1[k + 1].clone()
        } else {
            QSubspace::zero(half)
        };
        let Some((b, _)) = extend(
            &start,
            if k + 1 < len { step.gap } else { 0 },
            &y_coords(lo1),
            rng,
        ) else {
            return Ok(None);
        };
        let Some((a, new)) = extend(&b, step.m, &y_coords(up1), rng) else {
            return Ok(None);
        };
        b1[k] = b;
        a1[k] = a;
        u[k] = new;
    }
    // W2 side, forwards.
    let mut b2 = vec![QSubspace::zero(half); len];
    let mut w = vec![Vec::new(); len];
    let mut a2_prev = QSubspace::zero(half);
    for k in 0..len {
        let (_, _, up2, lo2) = flag_levels(&idx[k]);
        let step = profile[k];
        let gap = if k > 0 { profile[k - 1].gap } else { 0 };
        let Some((b, _)) = extend(&a2_prev, gap, &z_coords(lo2), rng) else {
            return Ok(None);
        };
        let Some((a, new)) = extend(&b, step.m, &z_coords(up2), rng) else {
            return Ok(None);
        };
        b2[k] = b;
        w[k] = new;
        a2_prev = a;
    }

    let mut spaces = Vec::with_capacity(len);
    for k in 0..len {
        let m = profile[k].m;
        let mut mat = random_invertible(m, rng);
        if idx[k].is_integer() && m > 0 {
            // Solve M β = α by adjusting one column of M.
            let c = floor(&idx[k]);
            let alpha: Vec<Rational> = u[k].iter().map(|x| x[c].clone()).collect();
            let beta: Vec<Rational> = w[k].iter().map(|x| x[d - c].clone()).collect();
            match beta.iter().position(|x| !x.is_zero()) {
                None if alpha.iter().all(Zero::is_zero) => {}
                None => return Ok(None),
                Some(l0) => {
                    for l in 0..m {
                        let mut rest = alpha[l].clone();
                        for (l2, bl2) in beta.iter().enumerate() {
                            if l2 != l0 {
                                rest -= mat[(l, l2)].clone() * bl2.clone();
                            }
                        }
                        mat[(l, l0)] = rest / beta[l0].clone();
                    }
                    if mat.determinant()?.is_zero() {
                        return Ok(None);
                    }
                }
            }
        }
        let mut vectors: Vec<Vec<Rational>> = Vec::with_capacity(n);
        let pad = |first: &[Rational], second: &[Rational]| -> Vec<Rational> {
            first.iter().chain(second).cloned().collect()
        };
        let zero = vec![Rational::zero(); half];
        for v in b1[k].basis_vectors() {
            vectors.push(pad(&v, &zero));
        }
        for v in b2[k].basis_vectors() {
            vectors.push(pad(&zero, &v));
        }
        for l in 0..m {
            let mut image = zero.clone();
            for (l2, wl2) in w[k].iter().enumerate() {
                let coeff = &mat[(l, l2)];
                for (x, y) in image.iter_mut().zip(wl2) {
                    *x = x.clone() + coeff.clone() * y.clone();
                }
            }
            vectors.push(pad(&u[k][l], &image));
        }
        let v = QSubspace::from_spanning(2 * half, &vectors)?;
        if v.dim() != n || !model.is_generalized_linear_series(&v, &idx[k], r as i64) {
            return Ok(None);
        }
        spaces.push(v);
    }
    let g = LevelDeltaLLS::new(model, r, delta.clone(), spaces)?;
    let data = g.numerical_data();
    let matches = data
        .entries
        .iter()
        .zip(profile)
        .all(|(e, s)| e.m == s.m as i64 && e.q == s.a - s.m);
    if !matches || !g.check_compatible().passed() {
        return Ok(None);
    }
    Ok(Some(g))
}

/// A random exact minimal series for `(d, r, δ)`.
pub fn random_exact_lls(d: usize, r: usize, delta: &[usize], seed: u64) -> Result<LevelDeltaLLS> {
    random_lls_with(
        d,
        r,
        delta,
        ProfileRules {
            minimal: true,
            non_exact: false,
        },
        &mut rng_for(seed, 0),
    )
}

/// A random compatible series that is not exact.
pub fn random_non_exact_lls(
    d: usize,
    r: usize,
    delta: &[usize],
    seed: u64,
) -> Result<LevelDeltaLLS> {
    random_lls_with(
        d,
        r,
        delta,
        ProfileRules {
            minimal: false,
            non_exact: true,
        },
        &mut rng_for(seed, 1),
    )
}

pub fn random_lls_with(
    d: usize,
    r: usize,
    delta: &[usize],
    rules: ProfileRules,
    rng: &mut impl Rng,
) -> Result<LevelDeltaLLS> {
    let ds = DeltaSet::new(d, delta)?;
    if r > d {
        return Err(Error::Precondition(format!("r = {r} exceeds d = {d}")));
    }
    let profile = random_profile(d, r, &ds, rules, rng)?;
    realize_profile(CurveModel::new(d), r, &ds, &profile, rng)
}

/// Inserts a constant slot into segment `segment` (between `segment` and
/// `segment + 1`) after the `slot`-th index of that segment, counting the
/// integer `segment` itself as slot 0. The new space is the limit at `∞` of
/// its predecessor, so `m = 0` there and exactness is preserved.
pub fn pad(g: &LevelDeltaLLS, segment: usize, slot: usize) -> Result<LevelDeltaLLS> {
    let d = g.d();
    if segment >= d {
        return Err(Error::Precondition(format!(
            "segment {segment} out of range for d = {d}"
        )));
    }
    let old = g.delta();
    let steps = old.delta()[segment];
    if slot >= steps {
        return Err(Error::Precondition(format!(
            "slot {slot} out of range for {steps} steps"
        )));
    }
    let start = old
        .position(&Rational::from_int(segment as i64))
        .expect("integers are indices");
    let before = start + slot;
    let filler = g.split().limit(&g.spaces()[before], Direction::Infinity)?;
    let mut delta = old.delta().to_vec();
    delta[segment] += 1;
    let mut spaces = g.spaces().to_vec();
    spaces.insert(before + 1, filler);
    LevelDeltaLLS::new(g.model(), g.r(), DeltaSet::new(d, &delta)?, spaces)
}

/// Pads at a random segment and slot; `None` when `d = 0`.
pub fn random_pad(g: &LevelDeltaLLS, rng: &mut impl Rng) -> Result<Option<LevelDeltaLLS>> {
    if g.d() == 0 {
        return Ok(None);
    }
    let segment = rng.random_range(0..g.d());
    let slot = rng.random_range(0..g.delta().delta()[segment]);
    pad(g, segment, slot).map(Some)
}

/// A pair `(V, V')` with `ρ1(V') = ι1⁻¹(V)`, both non-fixed. With `meet` the
/// pair also satisfies `ρ2(V) = ι2⁻¹(V')`; otherwise `ι2⁻¹(V')` is chosen
/// different from `ρ2(V)`.
pub fn random_adjacent_pair(
    split: &TorusSplit,
    n: usize,
    meet: bool,
    rng: &mut impl Rng,
) -> Result<(QSubspace, QSubspace)> {
    let (h1, h2) = (split.dim1, split.dim2);
    for _ in 0..ATTEMPTS {
        let v = random_subspace(split, n, rng)?;
        let p = split.block_profile(&v)?;
        let big_b = p.iota1_inv.clone();
        let rho2 = p.rho2.clone();
        let a = big_b.dim();
        if p.is_fixed() || a == 0 {
            continue;
        }
        // ι2⁻¹(V') has dimension n − a = dim ρ2(V).
        let lower2 = if meet {
            rho2.clone()
        } else {
            let Ok(other) = random_subspace(&TorusSplit { dim1: 0, dim2: h2 }, n - a, rng) else {
                continue;
            };
            if other == rho2 {
                continue;
            }
            other
        };
        let m = rng.random_range(1..=a);
        if n - a + m > h2 {
            continue;
        }
        // B1' ⊂ B with dimension a − m; u spans B modulo B1'.
        let basis = big_b.basis_vectors();
        let mut mix = random_invertible(a, rng);
        let mixed: Vec<Vec<Rational>> = (0..a)
            .map(|row| {
                (0..h1)
                    .map(|c| {
                        (0..a).fold(Rational::zero(), |acc, l| {
                            acc + mix[(row, l)].clone() * basis[l][c].clone()
                        })
                    })
                    .collect()
            })
            .collect();
        mix = random_invertible(m, rng);
        let all2: Vec<usize> = (0..h2).collect();
        let Some((_, w)) = extend(&lower2, m, &all2, rng) else {
            continue;
        };
        let zero1 = vec![Rational::zero(); h1];
        let zero2 = vec![Rational::zero(); h2];
        let join = |x: &[Rational], y: &[Rational]| -> Vec<Rational> {
            x.iter().chain(y).cloned().collect()
        };
        let mut vectors = Vec::with_capacity(n);
        for x in &mixed[m..] {
            vectors.push(join(x, &zero2));
        }
        for y in lower2.basis_vectors() {
            vectors.push(join(&zero1, &y));
        }
        for (l, x) in mixed[..m].iter().enumerate() {
            let mut image = zero2.clone();
            for (l2, wl2) in w.iter().enumerate() {
                for (z, y) in image.iter_mut().zip(wl2) {
                    *z = z.clone() + mix[(l, l2)].clone() * y.clone();
                }
            }
            vectors.push(join(x, &image));
        }
        let v2 = QSubspace::from_spanning(split.ambient(), &vectors)?;
        if v2.dim() != n {
            continue;
        }
        let p2 = split.block_profile(&v2)?;
        if p2.rho1 != p.iota1_inv || p2.is_fixed() {
            continue;
        }
        return Ok((v, v2));
    }
    Err(Error::Generation(format!(
        "no adjacent pair in {h1} + {h2} with n = {n}"
    )))
}
