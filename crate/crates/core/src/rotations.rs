//! Jacobi polynomials, Wigner d- and D-functions and the rotation unitaries
//! that define the tomographic axis.
//!
//! `wigner_d(j, m, m', angles) = exp(-i m alpha) d(j, m, m', beta) exp(-i m' gamma)`
//! with the standard sign convention `d(1/2, 1/2, -1/2, beta) = -sin(beta/2)`.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HalfInt, C64};

/// Euler angles `(alpha, beta, gamma)` of the tomographic rotation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EulerAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

const ANGLE_SLACK: f64 = 1e-12;

impl EulerAngles {
    /// `alpha, gamma` in `[0, 2 pi]` and `beta` in `[0, pi]`.
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let in_range = |x: f64, hi: f64| (-ANGLE_SLACK..=hi + ANGLE_SLACK).contains(&x);
        if !in_range(alpha, TAU) || !in_range(beta, PI) || !in_range(gamma, TAU) {
            return Err(Error::InvalidParameter(format!(
                "Euler angles ({alpha}, {beta}, {gamma}) outside [0,2pi]x[0,pi]x[0,2pi]"
            )));
        }
        Ok(Self { alpha, beta, gamma })
    }

    pub const fn zero() -> Self {
        Self { alpha: 0.0, beta: 0.0, gamma: 0.0 }
    }
}

/// `P_n^(a,b)(x)` by the three-term recurrence.
pub fn jacobi_polynomial(n: u32, a: f64, b: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
    for k in 2..=n {
        let k = f64::from(k);
        let c = 2.0 * k + a + b;
        let lead = 2.0 * k * (k + a + b) * (c - 2.0);
        if lead == 0.0 {
            // Recurrence degenerates for special negative (a, b).
            return jacobi_series(n, a, b, x);
        }
        let next = ((c - 1.0) * (a * a - b * b + c * (c - 2.0) * x) * cur
            - 2.0 * (k + a - 1.0) * (k + b - 1.0) * c * prev)
            / lead;
        prev = cur;
        cur = next;
    }
    cur
}

fn generalized_binomial(z: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (z - f64::from(i)) / f64::from(i + 1))
}

fn jacobi_series(n: u32, a: f64, b: f64, x: f64) -> f64 {
    let (lo, hi) = ((x - 1.0) / 2.0, (x + 1.0) / 2.0);
    (0..=n)
        .map(|s| {
            generalized_binomial(f64::from(n) + a, n - s)
                * generalized_binomial(f64::from(n) + b, s)
                * lo.powi(s as i32)
                * hi.powi((n - s) as i32)
        })
        .sum()
}

fn check_quantum_numbers(j: HalfInt, m: HalfInt, mp: HalfInt) -> Result<()> {
    let ok = j.twice() >= 0
        && m.twice().abs() <= j.twice()
        && mp.twice().abs() <= j.twice()
        && (j.twice() - m.twice()) % 2 == 0
        && (j.twice() - mp.twice()) % 2 == 0;
    if ok {
        Ok(())
    } else {
        Err(Error::BadQuantumNumbers { j: j.value(), m: m.value(), mp: mp.value() })
    }
}

/// Wigner small-d `d^j_{m,m'}(beta)`.
pub fn wigner_small_d(j: HalfInt, m: HalfInt, mp: HalfInt, beta: f64) -> Result<f64> {
    check_quantum_numbers(j, m, mp)?;
    // Jacobi form with non-negative parameters:
    // mu = |m - m'|, nu = |m + m'|, s = j - max(|m|, |m'|).
    let mu = ((m.twice() - mp.twice()).abs() / 2) as u32;
    let nu = ((m.twice() + mp.twice()).abs() / 2) as u32;
    let s = ((j.twice() - m.twice().abs().max(mp.twice().abs())) / 2) as u32;

    // s! (s+mu+nu)! / ((s+mu)! (s+nu)!) as a product of mu ratios
    let ratio = (1..=mu).fold(1.0, |acc, k| {
        acc * f64::from(s + nu + k) / f64::from(s + k)
    });
    let (sin_h, cos_h) = (beta / 2.0).sin_cos();
    let sign = if m.twice() > mp.twice() && mu % 2 == 1 { -1.0 } else { 1.0 };
    Ok(sign
        * ratio.sqrt()
        * sin_h.powi(mu as i32)
        * cos_h.powi(nu as i32)
        * jacobi_polynomial(s, f64::from(mu), f64::from(nu), beta.cos()))
}

/// Wigner D-function `D^j_{m,m'}(alpha, beta, gamma)`.
pub fn wigner_d(j: HalfInt, m: HalfInt, mp: HalfInt, angles: &EulerAngles) -> Result<C64> {
    let d = wigner_small_d(j, m, mp, angles.beta)?;
    let phase = -(m.value() * angles.alpha + mp.value() * angles.gamma);
    Ok(C64::from_polar(d, phase))
}

/// Matrix of the rotation operator, entry `(m1, m1')` = `D^j_{m1,m1'}`.
pub fn rotation_matrix(j: HalfInt, angles: &EulerAngles) -> ComplexMatrix {
    let ms: Vec<HalfInt> = j.projections().collect();
    ComplexMatrix::from_fn(j.dim(), |r, c| {
        wigner_d(j, ms[r], ms[c], angles).expect("projections are valid for j")
    })
}

/// The explicit 2x2 analyzer unitary used for two-qubit tomograms.
///
/// This is `sigma_z D* sigma_z` with `D = rotation_matrix(1/2, angles)`; the
/// two-qubit closed forms are written in this convention.
pub fn qubit_analyzer_unitary(angles: &EulerAngles) -> ComplexMatrix {
    let (s, c) = (angles.beta / 2.0).sin_cos();
    let sum = (angles.alpha + angles.gamma) / 2.0;
    let diff = (angles.alpha - angles.gamma) / 2.0;
    let mut u = ComplexMatrix::zeros(2);
    u[(0, 0)] = C64::from_polar(c, sum);
    u[(0, 1)] = C64::from_polar(s, diff);
    u[(1, 0)] = C64::from_polar(-s, -diff);
    u[(1, 1)] = C64::from_polar(c, -sum);
    u
}

/// `U1 (x) U2` over the bare basis `(++, +-, -+, --)`.
pub fn two_qubit_rotation(first: &EulerAngles, second: &EulerAngles) -> ComplexMatrix {
    qubit_analyzer_unitary(first).kron(&qubit_analyzer_unitary(second))
}
