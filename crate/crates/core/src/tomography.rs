//! Tomogram evaluators.
//!
//! Spin tomograms are `w(m1) = sum_{m,m'} D_{m1,m} rho_{m,m'} D*_{m1,m'}`, the
//! populations of the state seen along the axis rotated by the Euler angles.
//! Closed forms exist for the qubit QND and SGAD channels, two qubits in a
//! vacuum bath and a pure spin-1 state. Finite-dimensional tomograms go
//! through the discrete Wigner function, and the damped oscillator has a
//! Gaussian optical tomogram.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;

use crate::baths::{qnd_gamma, OpticalBathSpec, QndBathSpec, SgadParams};
use crate::channels::{damped_cosh_sinhc, DressedTwoQubitState, EinsteinCoefficients};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix, HalfInt, C64};
use crate::rotations::{rotation_matrix, EulerAngles};

const I: C64 = C64::new(0.0, 1.0);

/// Outcome attached to one tomogram component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// Spin projection `m`.
    Spin(HalfInt),
    /// Projections of two spin-1/2 analyzers.
    Pair(HalfInt, HalfInt),
    /// Level index `0..d`.
    Level(usize),
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Spin(m) => write!(f, "m={m}"),
            Outcome::Pair(a, b) => write!(f, "m1={a},m2={b}"),
            Outcome::Level(k) => write!(f, "m={k}"),
        }
    }
}

/// Discrete tomogram: probabilities over a set of outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct TomogramVector {
    pub labels: Vec<Outcome>,
    pub probs: Vec<f64>,
}

impl TomogramVector {
    pub fn new(labels: Vec<Outcome>, probs: Vec<f64>) -> Self {
        assert_eq!(labels.len(), probs.len(), "one label per probability");
        Self { labels, probs }
    }

    fn spin(j: HalfInt, probs: Vec<f64>) -> Self {
        Self::new(j.projections().map(Outcome::Spin).collect(), probs)
    }

    fn levels(probs: Vec<f64>) -> Self {
        Self::new((0..probs.len()).map(Outcome::Level).collect(), probs)
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// `|sum - 1|`.
    pub fn normalization_deviation(&self) -> f64 {
        (self.sum() - 1.0).abs()
    }

    /// Largest excursion of any component outside `[0, 1]`.
    pub fn range_violation(&self) -> f64 {
        self.probs.iter().map(|&p| (-p).max(p - 1.0).max(0.0)).fold(0.0, f64::max)
    }

    /// Largest componentwise difference.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        assert_eq!(self.len(), other.len(), "tomograms of different length");
        self.probs.iter().zip(&other.probs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

/// Spin tomogram of `rho` over `m1 = +j, ..., -j`.
pub fn spin_tomogram(rho: &DensityMatrix, j: HalfInt, angles: &EulerAngles) -> Result<TomogramVector> {
    if rho.dim() != j.dim() {
        return Err(Error::DimMismatch { expected: j.dim(), found: rho.dim() });
    }
    let d = rotation_matrix(j, angles);
    let n = j.dim();
    let probs = (0..n)
        .map(|m1| {
            let mut acc = C64::new(0.0, 0.0);
            for m in 0..n {
                for mp in 0..n {
                    acc += d[(m1, m)] * rho.get(m, mp) * d[(m1, mp)].conj();
                }
            }
            acc.re
        })
        .collect();
    Ok(TomogramVector::spin(j, probs))
}

/// Qubit tomogram of an atomic coherent state `|alpha, beta>` after QND
/// evolution, given the decoherence function value `gamma_t`.
///
/// `w1 = cos^2(b/2) - cos b cos^2(alpha/2) - sin b sin alpha cos(w t + beta + g) exp(-w^2 gamma_t) / 2`.
pub fn acs_qnd_tomogram_with(alpha: f64, beta: f64, angles: &EulerAngles, t: f64, omega: f64, gamma_t: f64) -> TomogramVector {
    let bt = angles.beta;
    let w1 = (bt / 2.0).cos().powi(2) - bt.cos() * (alpha / 2.0).cos().powi(2)
        - 0.5 * bt.sin() * alpha.sin() * (omega * t + beta + angles.gamma).cos() * (-omega * omega * gamma_t).exp();
    TomogramVector::spin(HalfInt::HALF, vec![w1, 1.0 - w1])
}

/// [`acs_qnd_tomogram_with`] using the Ohmic `gamma(t)` of `bath`.
pub fn acs_qnd_tomogram(alpha: f64, beta: f64, angles: &EulerAngles, t: f64, bath: &QndBathSpec) -> Result<TomogramVector> {
    let gamma_t = qnd_gamma(t, bath)?;
    Ok(acs_qnd_tomogram_with(alpha, beta, angles, t, bath.omega, gamma_t))
}

/// Qubit tomogram of an atomic coherent state after the SGAD channel.
pub fn acs_sgad_tomogram(alpha: f64, beta: f64, angles: &EulerAngles, t: f64, p: &SgadParams) -> Result<TomogramVector> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter(format!("time must be finite and >= 0, got {t}")));
    }
    let decay = (-p.gamma_beta * t).exp();
    let loss = -(-p.gamma_beta * t).exp_m1();
    let excited = (alpha / 2.0).sin().powi(2) * decay + p.excited_fraction() * loss;
    let ground = (alpha / 2.0).cos().powi(2) * decay + p.ground_fraction() * loss;
    let (ch, sh) = damped_cosh_sinhc(p.alpha_prime, 0.5 * p.gamma_beta, t);
    let coherence = 0.5 * alpha.sin()
        * (C64::from_polar(1.0, -beta) * (ch - I * p.omega * sh) - p.gamma0 * p.m * sh * C64::from_polar(1.0, beta));
    let cross = 0.5 * angles.beta.sin() * 2.0 * (C64::from_polar(1.0, -angles.gamma) * coherence).re;
    let (s2, c2) = ((angles.beta / 2.0).sin().powi(2), (angles.beta / 2.0).cos().powi(2));
    let w1 = s2 * ground + c2 * excited - cross;
    let w2 = c2 * ground + s2 * excited + cross;
    Ok(TomogramVector::spin(HalfInt::HALF, vec![w1, w2]))
}

/// Two-qubit tomogram `(w1, w2, w3, w4)` over analyzer outcomes
/// `(++, +-, -+, --)`, from the dressed-basis matrix elements.
pub fn two_qubit_tomogram(rho: &DressedTwoQubitState, first: &EulerAngles, second: &EulerAngles) -> TomogramVector {
    let (b1, b2) = (first.beta, second.beta);
    let (c1, c2) = (b1.cos(), b2.cos());
    let (s1, s2) = (b1.sin(), b2.sin());
    let (hc1, hc2) = ((b1 / 2.0).cos().powi(2), (b2 / 2.0).cos().powi(2));
    let (hs1, hs2) = ((b1 / 2.0).sin().powi(2), (b2 / 2.0).sin().powi(2));
    let e1 = C64::from_polar(1.0, first.gamma);
    let e2 = C64::from_polar(1.0, second.gamma);
    let e12 = e1 * e2;
    let dg = first.gamma - second.gamma;

    let (ee, ss, aa, gg) = (rho.ee(), rho.ss(), rho.aa(), rho.gg());
    let (es, ea, eg) = (rho.es(), rho.ea(), rho.eg());
    let (sa, sg, ag) = (rho.sa(), rho.sg(), rho.ag());
    let plus = aa + ss;
    let minus = (aa - ss) * s1 * s2 * dg.cos();
    let twist = I * s1 * s2 * dg.sin();
    let pairs = s1 * s2 * e12 * eg;
    // z + z*
    let re2 = |z: C64| 2.0 * z.re;

    let w1 = 4.0 * ee * hc1 * hc2 + 4.0 * gg * hs1 * hs2 + plus * (1.0 - c1 * c2) - minus
        + re2(sa * (c1 - c2 - twist)
            + SQRT_2
                * (((es - ea) * hc2 + (ag + sg) * hs2) * s1 * e1
                    + s2 * e2 * ((ea + es) * hc1 - (ag - sg) * hs1))
            + pairs);
    let w2 = 4.0 * ee * hc1 * hs2 + 4.0 * gg * hs1 * hc2 + plus * (1.0 + c1 * c2) + minus
        + re2(sa * (c1 + c2 + twist)
            + SQRT_2
                * (((ag + sg) * hc2 - (ea - es) * hs2) * s1 * e1
                    + s2 * e2 * (-(ea + es) * hc1 + (ag - sg) * hs1))
            - pairs);
    let w3 = 4.0 * ee * hs1 * hc2 + 4.0 * gg * hc1 * hs2 + plus * (1.0 + c1 * c2) + minus
        + re2(-sa * (c1 + c2 - twist)
            + SQRT_2
                * ((-(ag + sg) * hs2 + (ea - es) * hc2) * s1 * e1
                    + s2 * e2 * ((ea + es) * hs1 - (ag - sg) * hc1))
            - pairs);
    let w4 = 4.0 * ee * hs1 * hs2 + 4.0 * gg * hc1 * hc2 + plus * (1.0 - c1 * c2) - minus
        + re2(-sa * (c1 - c2 + twist)
            + SQRT_2
                * ((-(ag + sg) * hc2 + (ea - es) * hs2) * s1 * e1
                    + s2 * e2 * (-(ea + es) * hs1 + (ag - sg) * hc1))
            + pairs);

    let (p, m) = (HalfInt::HALF, HalfInt::from_twice(-1));
    TomogramVector::new(
        vec![Outcome::Pair(p, p), Outcome::Pair(p, m), Outcome::Pair(m, p), Outcome::Pair(m, m)],
        [w1, w2, w3, w4].iter().map(|w| w / 4.0).collect(),
    )
}

/// Tomogram of the pure spin-1 state `N (a, b, c)` over `m = 1, 0, -1`.
pub fn spin1_tomogram(a: C64, b: C64, c: C64, angles: &EulerAngles) -> Result<TomogramVector> {
    let norm2 = a.norm_sqr() + b.norm_sqr() + c.norm_sqr();
    if norm2 == 0.0 || !norm2.is_finite() {
        return Err(Error::ZeroState);
    }
    let bt = angles.beta;
    let (s, co) = bt.sin_cos();
    let s2 = s * s;
    let sin2b = (2.0 * bt).sin();
    let p = C64::from_polar(1.0, -angles.gamma);
    let p2 = p * p;
    let (ab, ac, bc) = (a * b.conj(), a * c.conj(), b * c.conj());
    let (na, nb, nc) = (a.norm_sqr(), b.norm_sqr(), c.norm_sqr());
    let k = 1.0 / (2.0 * SQRT_2);
    let re2 = |z: C64| 2.0 * z.re;

    let up = na / 4.0 * (1.0 + co).powi(2) + nb / 2.0 * s2 + nc / 4.0 * (1.0 - co).powi(2)
        + re2(-ab * p * k * s * (1.0 + co) + ac * p2 / 4.0 * s2 - bc * p * k * s * (1.0 - co));
    let zero = na / 2.0 * s2 + nb * co * co + nc / 2.0 * s2
        + re2(ab * p * k * sin2b - ac * p2 / 2.0 * s2 - bc * p * k * sin2b);
    let down = na / 4.0 * (1.0 - co).powi(2) + nb / 2.0 * s2 + nc / 4.0 * (1.0 + co).powi(2)
        + re2(ab * p * k * s * (1.0 - co) + ac * p2 / 4.0 * s2 + bc * p * k * s * (1.0 + co));
    Ok(TomogramVector::spin(HalfInt::ONE, vec![up / norm2, zero / norm2, down / norm2]))
}

/// Discrete Wigner function on the `d x d` phase-number grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteWigner {
    pub d: usize,
    /// Row-major in `(chi, m)`.
    pub values: Vec<f64>,
    /// Largest imaginary part discarded when taking the real grid.
    pub max_imag_residue: f64,
}

impl DiscreteWigner {
    pub fn get(&self, chi: usize, m: usize) -> f64 {
        self.values[chi * self.d + m]
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }
}

fn wrap(k: i64, d: usize) -> usize {
    k.rem_euclid(d as i64) as usize
}

fn check_odd(d: usize) -> Result<()> {
    if d == 0 || d.is_multiple_of(2) {
        return Err(Error::EvenDimension { d });
    }
    Ok(())
}

/// `W(chi, m) = (1/d) sum_T exp(4 pi i m T / d) <chi - T| rho |chi + T>`, indices mod `d`.
///
/// Only odd `d` give a normalized quasi-distribution with this kernel.
pub fn discrete_wigner(rho: &DensityMatrix) -> Result<DiscreteWigner> {
    discrete_wigner_of(rho.matrix())
}

pub(crate) fn discrete_wigner_of(rho: &ComplexMatrix) -> Result<DiscreteWigner> {
    let d = rho.dim();
    check_odd(d)?;
    let mut values = Vec::with_capacity(d * d);
    let mut residue: f64 = 0.0;
    for chi in 0..d as i64 {
        for m in 0..d as i64 {
            let mut acc = C64::new(0.0, 0.0);
            for theta in 0..d as i64 {
                let phase = C64::from_polar(1.0, 4.0 * PI * ((m * theta) % d as i64) as f64 / d as f64);
                acc += phase * rho[(wrap(chi - theta, d), wrap(chi + theta, d))];
            }
            acc /= d as f64;
            residue = residue.max(acc.im.abs());
            values.push(acc.re);
        }
    }
    if residue > 1e-10 {
        return Err(Error::NonHermitianInput { residue });
    }
    Ok(DiscreteWigner { d, values, max_imag_residue: residue })
}

/// Integers `(t, q)` selecting the line family of a finite-dimensional tomogram.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FinitePhaseIndices {
    pub t: i64,
    pub q: i64,
    pub d: usize,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl FinitePhaseIndices {
    /// Requires `gcd(t^2 + q^2, d) = 1`, which makes `(m, chi) -> (tm - q chi, qm + t chi)`
    /// a bijection of the grid; this also excludes `(t, q) = (0, 0) mod d`.
    pub fn new(t: i64, q: i64, d: usize) -> Result<Self> {
        check_odd(d)?;
        let (tr, qr) = (wrap(t, d) as u64, wrap(q, d) as u64);
        let det = (tr * tr + qr * qr) % d as u64;
        if gcd(det, d as u64) != 1 {
            return Err(Error::InvalidPhaseIndices { t, q, d });
        }
        Ok(Self { t, q, d })
    }
}

/// `w(m) = sum_chi W(t m - q chi, q m + t chi)`.
pub fn discrete_tomogram(w: &DiscreteWigner, idx: &FinitePhaseIndices) -> Result<TomogramVector> {
    if w.d != idx.d {
        return Err(Error::DimMismatch { expected: idx.d, found: w.d });
    }
    let d = w.d;
    let probs = (0..d as i64)
        .map(|m| {
            (0..d as i64)
                .map(|chi| w.get(wrap(idx.t * m - idx.q * chi, d), wrap(idx.q * m + idx.t * chi, d)))
                .sum()
        })
        .collect();
    Ok(TomogramVector::levels(probs))
}

/// Discrete Wigner function followed by the line sums.
pub fn finite_tomogram(rho: &DensityMatrix, idx: &FinitePhaseIndices) -> Result<TomogramVector> {
    discrete_tomogram(&discrete_wigner(rho)?, idx)
}

/// Weyl operator `U_nm = sum_a exp(2 pi i a n / d) |a><a + m|`.
pub fn weyl_operator(n: usize, m: usize, d: usize) -> Result<ComplexMatrix> {
    if d == 0 || n >= d || m >= d {
        return Err(Error::InvalidParameter(format!("Weyl indices ({n}, {m}) out of range for d = {d}")));
    }
    let mut u = ComplexMatrix::zeros(d);
    for a in 0..d {
        u[(a, (a + m) % d)] = C64::from_polar(1.0, 2.0 * PI * ((a * n) % d) as f64 / d as f64);
    }
    Ok(u)
}

/// `I/d + sum b_nm U_nm`; `b[n][m]` with `b[0][0]` ignored.
pub fn weyl_expansion(b: &[Vec<C64>]) -> Result<ComplexMatrix> {
    let d = b.len();
    if d == 0 || b.iter().any(|row| row.len() != d) {
        return Err(Error::InvalidParameter("Weyl coefficients must form a d x d grid".into()));
    }
    let mut rho = ComplexMatrix::identity(d).scale(C64::new(1.0 / d as f64, 0.0));
    for (n, row) in b.iter().enumerate() {
        for (m, &coef) in row.iter().enumerate() {
            if (n, m) != (0, 0) && coef != C64::new(0.0, 0.0) {
                rho = &rho + &weyl_operator(n, m, d)?.scale(coef);
            }
        }
    }
    Ok(rho)
}

/// Closed-form qutrit tomogram, `(t, q) = (0, 1)`, under spontaneous emission.
pub fn qutrit_se_tomogram(time: f64, c: &EinsteinCoefficients) -> Result<TomogramVector> {
    if !(time >= 0.0) {
        return Err(Error::InvalidParameter(format!("time must be >= 0, got {time}")));
    }
    let half = |eta: f64| if eta == 0.0 { 1.0 } else { (-eta * time / 2.0).exp() };
    let pair = half(c.eta1) + half(c.eta2);
    let both = half(c.eta1) * half(c.eta2);
    Ok(TomogramVector::levels(vec![
        (10.0 + 7.0 * pair + both) / 30.0,
        (20.0 - pair - 13.0 * both) / 60.0,
        (20.0 - 13.0 * pair + 11.0 * both) / 60.0,
    ]))
}

/// Hermitian unit-trace qutrit operator whose `(t, q) = (0, 1)` tomogram under
/// spontaneous emission is exactly [`qutrit_se_tomogram`].
///
/// The line sums see only the coherences, which the closed form fixes:
/// `rho_01 = 7/20 - i sqrt3/10`, `rho_02 = 7/20 + i sqrt3/10`,
/// `rho_12 = 1/20 + i sqrt3/5`. No choice of populations makes this
/// operator positive, so it is a test operator rather than a state.
pub(crate) fn qutrit_reference_operator() -> ComplexMatrix {
    let r3 = 3f64.sqrt();
    let entries = [
        (0, 1, C64::new(0.35, -r3 / 10.0)),
        (0, 2, C64::new(0.35, r3 / 10.0)),
        (1, 2, C64::new(0.05, r3 / 5.0)),
    ];
    let third = C64::new(1.0 / 3.0, 0.0);
    let mut m = ComplexMatrix::from_diagonal(&[third, third, third]);
    for (r, c, z) in entries {
        m[(r, c)] = z;
        m[(c, r)] = z.conj();
    }
    m
}

/// `V = 2 N M + 1 - (r M e^{-2i theta} + c.c.)` with `M = 1 - exp(-2kt)`.
pub fn optical_variance_term(theta: f64, time: f64, bath: &OpticalBathSpec) -> Result<f64> {
    bath.validate()?;
    if !(time >= 0.0) {
        return Err(Error::InvalidParameter(format!("time must be >= 0, got {time}")));
    }
    let m = -(-2.0 * bath.dissipation * time).exp_m1();
    let v = 2.0 * bath.n_thermal * m + 1.0 - 2.0 * bath.squeezing * m * (2.0 * theta).cos();
    if !(v > 0.0) {
        return Err(Error::UnphysicalVariance { variance: v });
    }
    Ok(v)
}

/// Peak position `Re[beta e^{i theta}] e^{-kt}`.
pub fn optical_center(theta: f64, time: f64, beta: C64, bath: &OpticalBathSpec) -> f64 {
    (beta * C64::from_polar(1.0, theta)).re * (-bath.dissipation * time).exp()
}

/// Optical tomogram `w(X, theta, t)` of a coherent state `|beta>` in a
/// squeezed thermal reservoir.
pub fn optical_tomogram(x: f64, theta: f64, time: f64, beta: C64, bath: &OpticalBathSpec) -> Result<f64> {
    let v = optical_variance_term(theta, time, bath)?;
    let center = optical_center(theta, time, beta, bath);
    Ok((2.0 / PI).sqrt() / v.sqrt() * (-2.0 * (center - x).powi(2) / v).exp())
}

/// Optical tomogram sampled on a uniform `X` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TomogramCurve {
    pub theta: f64,
    pub xs: Vec<f64>,
    pub density: Vec<f64>,
}

impl TomogramCurve {
    pub fn trapezoid(&self) -> f64 {
        self.xs
            .windows(2)
            .zip(self.density.windows(2))
            .map(|(x, w)| 0.5 * (x[1] - x[0]) * (w[0] + w[1]))
            .sum()
    }

    /// Grid point with the largest density.
    pub fn argmax(&self) -> f64 {
        let (i, _) = self
            .density
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, &w)| if w > best.1 { (i, w) } else { best });
        self.xs[i]
    }
}

pub const DEFAULT_CURVE_POINTS: usize = 801;
/// Half-width of the default curve grid in standard deviations.
pub const CURVE_HALF_WIDTH: f64 = 8.0;

/// Curve over `center +- 8 sigma` with `sigma = sqrt(V)/2`.
pub fn optical_tomogram_curve(theta: f64, time: f64, beta: C64, bath: &OpticalBathSpec, points: usize) -> Result<TomogramCurve> {
    if points < 2 {
        return Err(Error::InvalidParameter("a curve needs at least 2 points".into()));
    }
    let sigma = optical_variance_term(theta, time, bath)?.sqrt() / 2.0;
    let center = optical_center(theta, time, beta, bath);
    let lo = center - CURVE_HALF_WIDTH * sigma;
    let step = 2.0 * CURVE_HALF_WIDTH * sigma / (points - 1) as f64;
    let xs: Vec<f64> = (0..points).map(|i| lo + step * i as f64).collect();
    let density = xs
        .iter()
        .map(|&x| optical_tomogram(x, theta, time, beta, bath))
        .collect::<Result<Vec<_>>>()?;
    Ok(TomogramCurve { theta, xs, density })
}
