//! Two-component spinor algebra for the refined Kato inequality.
//!
//! Tensors carry `p` primed and `q` unprimed indices, each ranging over `{0, 1}`.
//! Entries are stored flat with primed indices first; index position `k` of an
//! `n`-index tensor occupies bit `n - 1 - k` of the flat offset.
//!
//! The central fact checked here: for a real tangent vector `v ∈ S₋⊗S₊` and any
//! `U ∈ ⊙⁴S₊`, the projection of `v⊗U` onto `S₋⊗⊙⁵S₊` has squared norm exactly
//! `3/5 |v|²|U|²`, so `⟨v⊗U, T⟩ ≤ √(3/5)|v||U||T|` for every `T` in that image.

use num::{BigInt, BigRational, Complex, Zero};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use std::fmt::Debug;
use std::ops::Neg;

use crate::error::{Error, Result};

pub type Complex64 = Complex<f64>;
/// Complex numbers over the rationals, for exact identity checks.
pub type ExactComplex = Complex<BigRational>;

/// Scalars spinor tensors can hold.
pub trait SpinorScalar: Clone + PartialEq + Debug + num::Num + Neg<Output = Self> {
    fn conj(&self) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
}

impl SpinorScalar for Complex64 {
    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Complex::new(num as f64 / den as f64, 0.0)
    }
}

impl SpinorScalar for ExactComplex {
    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Complex::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpinorTensor<T> {
    primed_rank: usize,
    unprimed_rank: usize,
    entries: Vec<T>,
    symmetric_unprimed: bool,
}

impl<T: SpinorScalar> SpinorTensor<T> {
    pub fn zeros(primed_rank: usize, unprimed_rank: usize) -> Self {
        SpinorTensor {
            primed_rank,
            unprimed_rank,
            entries: vec![T::zero(); 1 << (primed_rank + unprimed_rank)],
            symmetric_unprimed: unprimed_rank <= 1,
        }
    }

    /// Builds a tensor from a function of the full index list (primed first).
    pub fn from_fn(primed_rank: usize, unprimed_rank: usize, mut f: impl FnMut(&[usize]) -> T) -> Self {
        let n = primed_rank + unprimed_rank;
        let entries = (0..1usize << n).map(|flat| f(&unflatten(flat, n))).collect();
        let mut t = SpinorTensor {
            primed_rank,
            unprimed_rank,
            entries,
            symmetric_unprimed: false,
        };
        t.symmetric_unprimed = t.check_symmetric_unprimed();
        t
    }

    /// A totally symmetric tensor in `⊙^q S₊` (tensored with `p` primed slots),
    /// determined by its value on each count of `1`s among the unprimed indices.
    pub fn symmetric(primed_rank: usize, unprimed_rank: usize, mut by_weight: impl FnMut(&[usize], usize) -> T) -> Self {
        let mut t = Self::from_fn(primed_rank, unprimed_rank, |idx| {
            let (primed, unprimed) = idx.split_at(primed_rank);
            by_weight(primed, unprimed.iter().sum())
        });
        t.symmetric_unprimed = true;
        t
    }

    pub fn primed_rank(&self) -> usize {
        self.primed_rank
    }

    pub fn unprimed_rank(&self) -> usize {
        self.unprimed_rank
    }

    pub fn rank(&self) -> usize {
        self.primed_rank + self.unprimed_rank
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn is_symmetric_unprimed(&self) -> bool {
        self.symmetric_unprimed
    }

    pub fn get(&self, idx: &[usize]) -> &T {
        &self.entries[flatten(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: T) {
        let k = flatten(idx);
        self.entries[k] = value;
        self.symmetric_unprimed = self.check_symmetric_unprimed();
    }

    /// Exact check of invariance under every transposition of unprimed indices.
    pub fn check_symmetric_unprimed(&self) -> bool {
        let n = self.rank();
        (0..self.entries.len()).all(|flat| {
            let idx = unflatten(flat, n);
            (self.primed_rank..n.saturating_sub(1)).all(|k| {
                let mut swapped = idx.clone();
                swapped.swap(k, k + 1);
                self.entries[flatten(&swapped)] == self.entries[flat]
            })
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn scaled(&self, c: &T) -> Self {
        let mut out = self.clone();
        for x in &mut out.entries {
            *x = x.clone() * c.clone();
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (x, y) in out.entries.iter_mut().zip(&other.entries) {
            *x = x.clone() + y.clone();
        }
        out.symmetric_unprimed = out.check_symmetric_unprimed();
        Ok(out)
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.primed_rank != other.primed_rank || self.unprimed_rank != other.unprimed_rank {
            return Err(Error::Shape(format!(
                "({}, {}) vs ({}, {})",
                self.primed_rank, self.unprimed_rank, other.primed_rank, other.unprimed_rank
            )));
        }
        Ok(())
    }

    /// Outer product; primed slots of `self` then `other`, followed by unprimed slots likewise.
    pub fn tensor(&self, other: &Self) -> Self {
        let (p1, q1, p2, q2) = (self.primed_rank, self.unprimed_rank, other.primed_rank, other.unprimed_rank);
        Self::from_fn(p1 + p2, q1 + q2, |idx| {
            let (primed, unprimed) = idx.split_at(p1 + p2);
            let left: Vec<usize> = primed[..p1].iter().chain(&unprimed[..q1]).copied().collect();
            let right: Vec<usize> = primed[p1..].iter().chain(&unprimed[q1..]).copied().collect();
            self.get(&left).clone() * other.get(&right).clone()
        })
    }

    /// Hermitian pairing `Σ a · conj(b)`.
    pub fn inner(&self, other: &Self) -> Result<T> {
        self.same_shape(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.conj()))
    }

    /// `|T|²`, the pairing of `T` with itself; real and non-negative.
    pub fn norm_sq(&self) -> T {
        self.entries
            .iter()
            .fold(T::zero(), |acc, a| acc + a.clone() * a.conj())
    }

    /// Raises index `position` with `ε^{AB}` (`ε^{01} = 1`): `κ^A = ε^{AB} κ_B`.
    pub fn raise_index(&self, position: usize) -> Self {
        self.apply_epsilon(position, true)
    }

    /// Lowers index `position` with `ε_{AB}`: `κ_B = κ^A ε_{AB}`.
    pub fn lower_index(&self, position: usize) -> Self {
        self.apply_epsilon(position, false)
    }

    fn apply_epsilon(&self, position: usize, raise: bool) -> Self {
        let n = self.rank();
        let mut out = Self::from_fn(self.primed_rank, self.unprimed_rank, |idx| {
            let mut src = idx.to_vec();
            src[position] = 1 - idx[position];
            let x = self.get(&src).clone();
            // raising: κ^0 = κ_1, κ^1 = -κ_0; lowering: κ_0 = -κ^1, κ_1 = κ^0
            let negate = if raise { idx[position] == 1 } else { idx[position] == 0 };
            if negate {
                -x
            } else {
                x
            }
        });
        debug_assert_eq!(out.rank(), n);
        out.symmetric_unprimed = out.check_symmetric_unprimed();
        out
    }

    /// Average over all permutations of the unprimed indices.
    pub fn symmetrize_unprimed(&self) -> Self {
        let (p, q) = (self.primed_rank, self.unprimed_rank);
        let perms = permutations(q);
        let count = perms.len() as i64;
        let weight = T::from_ratio(1, count);
        let mut out = Self::zeros(p, q);
        let n = p + q;
        for flat in 0..self.entries.len() {
            let idx = unflatten(flat, n);
            let (primed, unprimed) = idx.split_at(p);
            let mut canonical = unprimed.to_vec();
            canonical.sort_unstable();
            if canonical != unprimed {
                continue;
            }
            // each orbit is computed once at its sorted representative
            let mut acc = T::zero();
            for perm in &perms {
                let mut src = primed.to_vec();
                src.extend(perm.iter().map(|&k| unprimed[k]));
                acc = acc + self.get(&src).clone();
            }
            let value = acc * weight.clone();
            for perm in &perms {
                let mut dst = primed.to_vec();
                dst.extend(perm.iter().map(|&k| unprimed[k]));
                out.entries[flatten(&dst)] = value.clone();
            }
        }
        out.symmetric_unprimed = true;
        out
    }
}

fn flatten(idx: &[usize]) -> usize {
    idx.iter().fold(0, |acc, &i| (acc << 1) | (i & 1))
}

fn unflatten(flat: usize, n: usize) -> Vec<usize> {
    (0..n).map(|k| (flat >> (n - 1 - k)) & 1).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

/// The `ε_{AB}` spinor, rank (0, 2), with `ε_{01} = 1`.
pub fn epsilon<T: SpinorScalar>() -> SpinorTensor<T> {
    SpinorTensor::from_fn(0, 2, |idx| match (idx[0], idx[1]) {
        (0, 1) => T::one(),
        (1, 0) => -T::one(),
        _ => T::zero(),
    })
}

/// A real tangent vector and its spinor image `v_{A'A}` in `S₋⊗S₊`.
///
/// The soldering is quaternionic: `v = (x₀·1 + i(x₁σ₁ + x₂σ₂ + x₃σ₃))/√2`, so
/// `Σ|v_{A'A}|² = |x|²` and `v†v = ½|x|²·1`. The second identity is the
/// reality condition on which the 3/5 projection identity rests.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolderedVector {
    pub coords: [f64; 4],
}

impl SolderedVector {
    pub fn new(coords: [f64; 4]) -> Self {
        SolderedVector { coords }
    }

    pub fn euclidean_norm_sq(&self) -> f64 {
        self.coords.iter().map(|x| x * x).sum()
    }

    pub fn spinor(&self) -> SpinorTensor<Complex64> {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let [x0, x1, x2, x3] = self.coords;
        quaternion_matrix(
            Complex::new(x0 * s, x3 * s),
            Complex::new(x2 * s, x1 * s),
        )
    }

    /// `v†v - ½|v|²·1`, zero for the quaternionic soldering.
    pub fn reality_defect(&self) -> f64 {
        let v = self.spinor();
        let half = 0.5 * self.euclidean_norm_sq();
        let mut worst: f64 = 0.0;
        for a in 0..2 {
            for b in 0..2 {
                let mut acc = Complex::zero();
                for ap in 0..2 {
                    acc += v.get(&[ap, a]).conj() * v.get(&[ap, b]);
                }
                let target = if a == b { half } else { 0.0 };
                worst = worst.max((acc - target).norm());
            }
        }
        worst
    }
}

/// Unnormalised quaternionic soldering `x₀·1 + i x·σ` over the rationals.
///
/// The √2 is dropped; every identity tested with it is a scale-free ratio.
pub fn exact_soldering(coords: [i64; 4]) -> SpinorTensor<ExactComplex> {
    let q = |n: i64| BigRational::from_integer(BigInt::from(n));
    let [x0, x1, x2, x3] = coords;
    quaternion_matrix(Complex::new(q(x0), q(x3)), Complex::new(q(x2), q(x1)))
}

fn quaternion_matrix<T>(a: Complex<T>, b: Complex<T>) -> SpinorTensor<Complex<T>>
where
    T: Clone + num::Num + Neg<Output = T>,
    Complex<T>: SpinorScalar,
{
    // [[a, b], [-b̄, ā]], rows primed, columns unprimed
    SpinorTensor::from_fn(1, 1, |idx| match (idx[0], idx[1]) {
        (0, 0) => a.clone(),
        (0, 1) => b.clone(),
        (1, 0) => -b.conj(),
        _ => a.conj(),
    })
}

/// `v_{A'(A} U_{BCDE)}` via the explicit five-term average.
pub fn project_parallel<T: SpinorScalar>(v: &SpinorTensor<T>, u: &SpinorTensor<T>) -> Result<SpinorTensor<T>> {
    if v.primed_rank != 1 || v.unprimed_rank != 1 {
        return Err(Error::Shape("v must have rank (1, 1)".into()));
    }
    if u.primed_rank != 0 || u.unprimed_rank != 4 {
        return Err(Error::Shape("U must have rank (0, 4)".into()));
    }
    if !u.check_symmetric_unprimed() {
        return Err(Error::Shape("U must be totally symmetric".into()));
    }
    let fifth = T::from_ratio(1, 5);
    let mut out = SpinorTensor::from_fn(1, 5, |idx| {
        let (ap, rest) = (idx[0], &idx[1..]);
        let mut acc = T::zero();
        for k in 0..5 {
            let others: Vec<usize> = rest
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, &x)| x)
                .collect();
            acc = acc + v.get(&[ap, rest[k]]).clone() * u.get(&others).clone();
        }
        acc * fifth.clone()
    });
    out.symmetric_unprimed = out.check_symmetric_unprimed();
    Ok(out)
}

/// `|(v⊗U)^∥|² / (|v|²|U|²)`; identically `3/5` for real `v`.
pub fn projection_ratio<T: SpinorScalar>(v: &SpinorTensor<T>, u: &SpinorTensor<T>) -> Result<T> {
    if v.is_zero() {
        return Err(Error::ZeroInput("v"));
    }
    if u.is_zero() {
        return Err(Error::ZeroInput("U"));
    }
    let projected = project_parallel(v, u)?;
    Ok(projected.norm_sq() / (v.norm_sq() * u.norm_sq()))
}

/// Random symmetric `U ∈ ⊙⁴S₊` with standard normal complex coefficients.
pub fn random_symmetric<R: Rng + ?Sized>(rng: &mut R, unprimed_rank: usize) -> SpinorTensor<Complex64> {
    let coeffs: Vec<Complex64> = (0..=unprimed_rank)
        .map(|_| Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    SpinorTensor::symmetric(0, unprimed_rank, |_, w| coeffs[w])
}

pub fn random_tensor<R: Rng + ?Sized>(rng: &mut R, primed_rank: usize, unprimed_rank: usize) -> SpinorTensor<Complex64> {
    SpinorTensor::from_fn(primed_rank, unprimed_rank, |_| {
        Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

pub fn random_vector<R: Rng + ?Sized>(rng: &mut R) -> SolderedVector {
    SolderedVector::new(std::array::from_fn(|_| rng.sample(StandardNormal)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KatoEstimate {
    pub samples: usize,
    /// Largest observed `|⟨v⊗U, T⟩| / (|v||U||T|)`.
    pub cauchy_schwarz_sup: f64,
    /// Reciprocal of the supremum, the Kato constant.
    pub kato_inf: f64,
    /// The same supremum restricted to unstructured random `T`.
    pub random_only_sup: f64,
}

/// Samples the pairing `⟨v⊗U, T⟩` over `T ∈ S₋⊗⊙⁵S₊`.
///
/// Each sample draws `v`, `U`, and a random direction `R` in the image, then
/// evaluates both `T = R` and `T = P/|P| + t R/|R|` with `P` the projection of
/// `v⊗U` and `t = w⁴`, `w` uniform on `[0, 1)`, so that the perturbed family
/// accumulates at the Cauchy-Schwarz maximiser.
pub fn kato_constants_estimate<R: Rng + ?Sized>(rng: &mut R, samples: usize) -> Result<KatoEstimate> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be at least 1".into()));
    }
    let mut sup: f64 = 0.0;
    let mut random_sup: f64 = 0.0;
    for _ in 0..samples {
        let v = random_vector(rng).spinor();
        let u = random_symmetric(rng, 4);
        let vu = v.tensor(&u);
        let p = project_parallel(&v, &u)?;
        let dir = random_tensor(rng, 1, 5).symmetrize_unprimed();
        let base = (v.norm_sq().re * u.norm_sq().re).sqrt();
        let ratio = |t: &SpinorTensor<Complex64>| -> Result<f64> {
            Ok(vu.inner(t)?.norm() / (base * t.norm_sq().re.sqrt()))
        };
        random_sup = random_sup.max(ratio(&dir)?);
        let w: f64 = rng.random();
        let t = w.powi(4);
        let p_unit = p.scaled(&Complex::new(1.0 / p.norm_sq().re.sqrt(), 0.0));
        let d_unit = dir.scaled(&Complex::new(t / dir.norm_sq().re.sqrt(), 0.0));
        sup = sup.max(ratio(&p_unit.add(&d_unit)?)?);
    }
    let sup = sup.max(random_sup);
    Ok(KatoEstimate {
        samples,
        cauchy_schwarz_sup: sup,
        kato_inf: 1.0 / sup,
        random_only_sup: random_sup,
    })
}

/// JSON fixture form: ranks plus `[re, im]` pairs in flat order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpinorTensorJson {
    pub primed_rank: usize,
    pub unprimed_rank: usize,
    pub entries: Vec<[f64; 2]>,
}

impl From<&SpinorTensor<Complex64>> for SpinorTensorJson {
    fn from(t: &SpinorTensor<Complex64>) -> Self {
        SpinorTensorJson {
            primed_rank: t.primed_rank,
            unprimed_rank: t.unprimed_rank,
            entries: t.entries.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl TryFrom<SpinorTensorJson> for SpinorTensor<Complex64> {
    type Error = Error;

    fn try_from(j: SpinorTensorJson) -> Result<Self> {
        let n = j.primed_rank + j.unprimed_rank;
        if j.entries.len() != 1 << n {
            return Err(Error::Shape(format!("expected {} entries, got {}", 1usize << n, j.entries.len())));
        }
        let mut t = SpinorTensor {
            primed_rank: j.primed_rank,
            unprimed_rank: j.unprimed_rank,
            entries: j.entries.iter().map(|&[re, im]| Complex::new(re, im)).collect(),
            symmetric_unprimed: false,
        };
        t.symmetric_unprimed = t.check_symmetric_unprimed();
        Ok(t)
    }
}

impl<T: SpinorScalar> SpinorTensor<T> {
    /// Unit basis element with a single entry `1` at `idx`.
    pub fn basis(primed_rank: usize, unprimed_rank: usize, idx: &[usize]) -> Self {
        let mut t = Self::zeros(primed_rank, unprimed_rank);
        t.set(idx, T::one());
        t
    }
}
