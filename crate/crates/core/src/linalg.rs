//! Small dense complex matrices, density-matrix validation and the spin
//! state factories shared by every scenario.
//!
//! Spin states are stored with `m = +j` in row 0 and `m = -j` in the last
//! row, so a qubit matrix reads `[[<+|rho|+>, <+|rho|->], [<-|rho|+>, <-|rho|->]]`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const TOL_HERMITIAN: f64 = 1e-10;
pub const TOL_TRACE: f64 = 1e-10;
pub const TOL_NORM: f64 = 1e-10;
pub const TOL_PSD: f64 = 1e-9;
pub const TOL_UNITARY: f64 = 1e-10;

/// Validation thresholds for [`assert_density_matrix`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub hermitian: f64,
    pub trace: f64,
    pub psd: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { hermitian: TOL_HERMITIAN, trace: TOL_TRACE, psd: TOL_PSD }
    }
}

impl Tolerances {
    pub fn uniform(tol: f64) -> Self {
        Self { hermitian: tol, trace: tol, psd: tol }
    }
}

/// A spin quantum number or projection, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const HALF: HalfInt = HalfInt(1);
    pub const ONE: HalfInt = HalfInt(2);

    pub const fn from_twice(twice: i32) -> Self {
        HalfInt(twice)
    }

    pub fn new(value: f64) -> Result<Self> {
        let twice = 2.0 * value;
        if !twice.is_finite() || (twice - twice.round()).abs() > 1e-12 {
            return Err(Error::InvalidSpin { value });
        }
        Ok(HalfInt(twice.round() as i32))
    }

    /// Parses a non-negative spin `j`.
    pub fn spin(value: f64) -> Result<Self> {
        let j = Self::new(value)?;
        if j.0 < 0 {
            return Err(Error::InvalidSpin { value });
        }
        Ok(j)
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    /// Hilbert-space dimension `2j + 1`.
    pub fn dim(self) -> usize {
        (self.0 + 1) as usize
    }

    /// Projections `m = j, j-1, ..., -j` in row order.
    pub fn projections(self) -> impl Iterator<Item = HalfInt> + Clone {
        let j = self.0;
        (0..=j).map(move |k| HalfInt(j - 2 * k))
    }

    /// Row of projection `m` inside a spin-`self` matrix.
    pub fn row_of(self, m: HalfInt) -> usize {
        ((self.0 - m.0) / 2) as usize
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Dense square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<C64>);

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        Self(DMatrix::from_fn(dim, dim, f))
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, |r, c| if r == c { diag[r] } else { C64::new(0.0, 0.0) })
    }

    /// Builds a matrix from row slices; fails unless the rows form a square.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::NotSquare { rows: n, cols: bad.len() });
        }
        Ok(Self::from_fn(n, |r, c| rows[r][c]))
    }

    pub fn from_nalgebra(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
        }
        Ok(Self(m))
    }

    /// Outer product `|psi><psi|`.
    pub fn outer(psi: &[C64]) -> Self {
        Self::from_fn(psi.len(), |r, c| psi[r] * psi[c].conj())
    }

    pub fn as_nalgebra(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.dim()).map(|i| self.0[(i, i)]).collect()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self(&self.0 * s)
    }

    /// Kronecker product `self (x) other`, `self` indexing the slow axis.
    pub fn kron(&self, other: &Self) -> Self {
        Self(self.0.kronecker(&other.0))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `max |m - m^dagger|` entrywise.
    pub fn hermiticity_deviation(&self) -> f64 {
        let n = self.dim();
        let mut dev = 0.0_f64;
        for r in 0..n {
            for c in r..n {
                dev = dev.max((self.0[(r, c)] - self.0[(c, r)].conj()).norm());
            }
        }
        dev
    }

    /// `max |u^dagger u - 1|` entrywise.
    pub fn unitarity_deviation(&self) -> f64 {
        let prod = self.adjoint().0 * &self.0;
        let id = DMatrix::<C64>::identity(self.dim(), self.dim());
        (prod - id).iter().fold(0.0, |acc, z| acc.max(z.norm()))
    }

    pub fn check_unitary(&self, tol: f64) -> Result<()> {
        let deviation = self.unitarity_deviation();
        if !(deviation <= tol) {
            return Err(Error::NotUnitary { deviation, tolerance: tol });
        }
        Ok(())
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let herm = (&self.0 + self.0.adjoint()) * C64::new(0.5, 0.0);
        let mut ev: Vec<f64> = SymmetricEigen::new(herm).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, idx: (usize, usize)) -> &C64 {
        &self.0[idx]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, idx: (usize, usize)) -> &mut C64 {
        &mut self.0[idx]
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

/// A validated state: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    /// Validates with the default tolerances.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        assert_density_matrix(m, &Tolerances::default())
    }

    /// Wraps a matrix produced by a map known to preserve the invariants.
    pub(crate) fn from_trusted(m: ComplexMatrix) -> Self {
        DensityMatrix(m)
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        DensityMatrix(ComplexMatrix::identity(dim).scale(C64::new(1.0 / dim as f64, 0.0)))
    }

    /// `|psi><psi|` after normalizing `psi`.
    pub fn pure(psi: &[C64]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroState);
        }
        let unit: Vec<C64> = psi.iter().map(|z| z / norm).collect();
        Ok(DensityMatrix(ComplexMatrix::outer(&unit)))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.0[(r, c)]
    }

    /// Real parts of the diagonal (populations).
    pub fn populations(&self) -> Vec<f64> {
        self.0.diagonal().iter().map(|z| z.re).collect()
    }
}

/// Checks Hermiticity, unit trace and positivity, reporting the first
/// violated invariant together with the measured deviation.
pub fn assert_density_matrix(m: ComplexMatrix, tol: &Tolerances) -> Result<DensityMatrix> {
    if !m.is_finite() {
        return Err(Error::InvalidParameter("density matrix has non-finite entries".into()));
    }
    let deviation = m.hermiticity_deviation();
    if deviation > tol.hermitian {
        return Err(Error::NotHermitian { deviation, tolerance: tol.hermitian });
    }
    let deviation = (m.trace() - C64::new(1.0, 0.0)).norm();
    if deviation > tol.trace {
        return Err(Error::TraceNotOne { deviation, tolerance: tol.trace });
    }
    let min_eigenvalue = m.hermitian_eigenvalues()[0];
    if min_eigenvalue < -tol.psd {
        return Err(Error::NotPositive { min_eigenvalue, tolerance: tol.psd });
    }
    Ok(DensityMatrix(m))
}

/// `u rho u^dagger` for unitary `u`.
pub fn sandwich(u: &ComplexMatrix, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if u.dim() != rho.dim() {
        return Err(Error::DimMismatch { expected: rho.dim(), found: u.dim() });
    }
    u.check_unitary(TOL_UNITARY)?;
    let out = &(u * rho.matrix()) * &u.adjoint();
    Ok(DensityMatrix(out))
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_deviation(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch { expected: a.dim(), found: b.dim() });
    }
    Ok(a.0.iter().zip(b.0.iter()).fold(0.0, |acc, (x, y)| acc.max((x - y).norm())))
}

/// Pure spin-`j` state over Dicke states `|j, m>`, row 0 holding `m = +j`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinState {
    pub j: HalfInt,
    pub amplitudes: Vec<C64>,
}

impl SpinState {
    pub fn amplitude(&self, m: HalfInt) -> C64 {
        self.amplitudes[self.j.row_of(m)]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn density_matrix(&self) -> DensityMatrix {
        DensityMatrix(ComplexMatrix::outer(&self.amplitudes))
    }
}

/// Random mixed state `G G^dagger / tr(G G^dagger)` with entries of `G`
/// uniform in the unit square; full rank with probability one.
pub fn random_density_matrix(dim: usize, rng: &mut impl Rng) -> DensityMatrix {
    let g = ComplexMatrix::from_fn(dim, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let gg = &g * &g.adjoint();
    let tr = gg.trace().re;
    let mut m = gg.scale(C64::new(1.0 / tr, 0.0));
    // exact Hermiticity after rounding
    for r in 0..dim {
        m[(r, r)] = C64::new(m[(r, r)].re, 0.0);
        for c in r + 1..dim {
            m[(c, r)] = m[(r, c)].conj();
        }
    }
    DensityMatrix(m)
}

/// Random unit vector with entries uniform in the unit square before normalizing.
pub fn random_pure_amplitudes(dim: usize, rng: &mut impl Rng) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..dim).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-3 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// Atomic (SU(2)) coherent state `|alpha, beta>`:
/// amplitude on `|j, m>` is
/// `sqrt(C(2j, j+m)) sin^(j+m)(alpha/2) cos^(j-m)(alpha/2) exp(-i (j+m) beta)`.
pub fn atomic_coherent_state(j: HalfInt, alpha: f64, beta: f64) -> Result<SpinState> {
    if j.twice() < 0 {
        return Err(Error::InvalidSpin { value: j.value() });
    }
    let (s, c) = (alpha / 2.0).sin_cos();
    let two_j = j.twice() as u32;
    let amplitudes = j
        .projections()
        .map(|m| {
            // j + m and j - m as integers
            let up = ((j.twice() + m.twice()) / 2) as u32;
            let down = two_j - up;
            let mag = binomial(two_j, up).sqrt() * s.powi(up as i32) * c.powi(down as i32);
            C64::from_polar(mag, -(f64::from(up)) * beta)
        })
        .collect();
    Ok(SpinState { j, amplitudes })
}
