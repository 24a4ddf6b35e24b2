//! Brute-force counterparts of the closed forms: fixed-step RK4 on the SGAD
//! master equation, rotated-diagonal tomograms, a literal triple loop for
//! finite-dimensional tomograms, and quadrature of optical tomograms.

use nalgebra::{Matrix2, Vector2};

use crate::baths::SgadParams;
use crate::error::{Error, Result};
use crate::linalg::{sandwich, ComplexMatrix, DensityMatrix, C64};
use crate::tomography::{FinitePhaseIndices, Outcome, TomogramVector};

/// Fixed-step fourth-order Runge-Kutta.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    pub dt: f64,
}

impl IntegratorConfig {
    pub fn new(dt: f64) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidParameter(format!("step size must be > 0, got {dt}")));
        }
        Ok(Self { dt })
    }
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self { dt: 1e-4 }
    }
}

const TRACE_DRIFT_LIMIT: f64 = 1e-6;

type M2 = Matrix2<C64>;

/// SGAD generator
/// `-(i w/2)[s_z, rho] + g+ D[s_-] rho + g- D[s_+] rho - g0 M s_+ rho s_+ - g0 M* s_- rho s_-`
/// with `s_+ = |1><0|`, `|1> = |e>` stored in row 0.
struct SgadGenerator {
    omega: f64,
    gamma_plus: f64,
    gamma_minus: f64,
    squeeze: C64,
    sp: M2,
    sm: M2,
    sz: M2,
}

impl SgadGenerator {
    fn new(p: &SgadParams) -> Self {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        let ket1 = Vector2::new(one, zero);
        let ket0 = Vector2::new(zero, one);
        let sp = ket1 * ket0.adjoint();
        let sm = ket0 * ket1.adjoint();
        let sz = sp * sm - sm * sp;
        Self {
            omega: p.omega,
            gamma_plus: p.gamma_plus,
            gamma_minus: p.gamma_minus,
            squeeze: p.m * p.gamma0,
            sp,
            sm,
            sz,
        }
    }

    fn dissipator(jump: &M2, rho: &M2) -> M2 {
        let jj = jump.adjoint() * jump;
        jump * rho * jump.adjoint() - (jj * rho + rho * jj) * C64::new(0.5, 0.0)
    }

    fn apply(&self, rho: &M2) -> M2 {
        let commutator = self.sz * rho - rho * self.sz;
        commutator * C64::new(0.0, -0.5 * self.omega)
            + Self::dissipator(&self.sm, rho) * C64::from(self.gamma_plus)
            + Self::dissipator(&self.sp, rho) * C64::from(self.gamma_minus)
            - self.sp * rho * self.sp * self.squeeze
            - self.sm * rho * self.sm * self.squeeze.conj()
    }

    fn step(&self, rho: &M2, h: f64) -> M2 {
        let hc = C64::from(h);
        let k1 = self.apply(rho);
        let k2 = self.apply(&(rho + k1 * (hc * 0.5)));
        let k3 = self.apply(&(rho + k2 * (hc * 0.5)));
        let k4 = self.apply(&(rho + k3 * hc));
        rho + (k1 + k2 * C64::from(2.0) + k3 * C64::from(2.0) + k4) * (hc / 6.0)
    }
}

fn to_density(m: &M2) -> Result<DensityMatrix> {
    let drift = (m.trace() - C64::new(1.0, 0.0)).norm();
    if drift > TRACE_DRIFT_LIMIT || !drift.is_finite() {
        return Err(Error::StepSizeTooLarge { drift });
    }
    Ok(DensityMatrix::from_trusted(ComplexMatrix::from_fn(2, |r, c| m[(r, c)])))
}

/// SGAD state at each of `times` (ascending), integrated in one pass.
pub fn lindblad_rk4_sgad_trajectory(
    rho0: &DensityMatrix,
    times: &[f64],
    p: &SgadParams,
    cfg: &IntegratorConfig,
) -> Result<Vec<DensityMatrix>> {
    if rho0.dim() != 2 {
        return Err(Error::DimMismatch { expected: 2, found: rho0.dim() });
    }
    if times.iter().any(|t| !(*t >= 0.0 && t.is_finite())) || times.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidParameter("sample times must be finite, >= 0 and ascending".into()));
    }
    let generator = SgadGenerator::new(p);
    let mut rho = M2::new(rho0.get(0, 0), rho0.get(0, 1), rho0.get(1, 0), rho0.get(1, 1));
    let mut now = 0.0;
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        let span = t - now;
        if span > 0.0 {
            // whole number of equal steps no longer than dt
            let steps = (span / cfg.dt - 1e-9).ceil().max(1.0) as u64;
            let h = span / steps as f64;
            for _ in 0..steps {
                rho = generator.step(&rho, h);
            }
        }
        now = t;
        out.push(to_density(&rho)?);
    }
    Ok(out)
}

/// SGAD state at time `t` by direct integration of the master equation.
pub fn lindblad_rk4_sgad(rho0: &DensityMatrix, t: f64, p: &SgadParams, cfg: &IntegratorConfig) -> Result<DensityMatrix> {
    Ok(lindblad_rk4_sgad_trajectory(rho0, &[t], p, cfg)?.remove(0))
}

/// Real diagonal of `u rho u^dagger`.
pub fn rotated_diagonal_tomogram(rho: &DensityMatrix, u: &ComplexMatrix) -> Result<TomogramVector> {
    let rotated = sandwich(u, rho)?;
    let diag = rotated.matrix().diagonal();
    let residue = diag.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if residue > 1e-12 {
        return Err(Error::NotHermitian { deviation: residue, tolerance: 1e-12 });
    }
    Ok(TomogramVector::new(
        (0..diag.len()).map(Outcome::Level).collect(),
        diag.iter().map(|z| z.re).collect(),
    ))
}

/// Finite-dimensional tomogram straight from its definition: for every `m`
/// and `chi`, the Wigner value at `(t m - q chi, q m + t chi)` is summed from
/// matrix elements with no intermediate grid.
pub fn brute_discrete_tomogram(rho: &DensityMatrix, idx: &FinitePhaseIndices) -> Result<TomogramVector> {
    let d = idx.d;
    if rho.dim() != d {
        return Err(Error::DimMismatch { expected: d, found: rho.dim() });
    }
    let di = d as i64;
    let md = |k: i64| k.rem_euclid(di) as usize;
    let mut probs = vec![0.0; d];
    for (m, prob) in probs.iter_mut().enumerate() {
        let m = m as i64;
        let mut total = C64::new(0.0, 0.0);
        for chi in 0..di {
            let x = idx.t * m - idx.q * chi;
            let n = idx.q * m + idx.t * chi;
            for theta in 0..di {
                let angle = 4.0 * std::f64::consts::PI * (md(n) as f64) * (theta as f64) / d as f64;
                total += C64::from_polar(1.0, angle) * rho.get(md(x - theta), md(x + theta)) / d as f64;
            }
        }
        *prob = total.re;
    }
    Ok(TomogramVector::new((0..d).map(Outcome::Level).collect(), probs))
}

/// Integral of `f` over `center +- 10 sigma` by the trapezoid rule, doubling
/// the grid until two successive estimates agree to `1e-13` relative.
pub fn quadrature_normalize(f: impl Fn(f64) -> f64, center: f64, sigma: f64) -> Result<f64> {
    if !(sigma > 0.0 && sigma.is_finite() && center.is_finite()) {
        return Err(Error::InvalidParameter(format!("need finite center and sigma > 0, got ({center}, {sigma})")));
    }
    let (lo, hi) = (center - 10.0 * sigma, center + 10.0 * sigma);
    let mut panels: u64 = 64;
    let mut h = (hi - lo) / panels as f64;
    let mut sum = 0.5 * (f(lo) + f(hi)) + (1..panels).map(|i| f(lo + h * i as f64)).sum::<f64>();
    let mut estimate = sum * h;
    while panels < 1 << 24 {
        // midpoints of the current panels
        let mids: f64 = (0..panels).map(|i| f(lo + h * (i as f64 + 0.5))).sum();
        sum += mids;
        panels *= 2;
        h /= 2.0;
        let refined = sum * h;
        if !refined.is_finite() {
            return Err(Error::QuadratureFailure { reason: "integrand produced non-finite values".into() });
        }
        if (refined - estimate).abs() <= 1e-13 * refined.abs().max(1e-300) || refined == estimate {
            return Ok(refined);
        }
        estimate = refined;
    }
    Err(Error::QuadratureFailure { reason: format!("trapezoid estimate {estimate:e} did not settle") })
}

/// Maximizer of a smooth unimodal positive `f` on `[lo, hi]`: coarse grid,
/// golden-section refinement, then one parabolic step on `ln f` (exact for
/// Gaussians).
pub fn locate_peak(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Result<f64> {
    if !(hi > lo) {
        return Err(Error::InvalidParameter(format!("empty search interval [{lo}, {hi}]")));
    }
    const GRID: usize = 400;
    let step = (hi - lo) / GRID as f64;
    let best = (0..=GRID)
        .map(|i| lo + step * i as f64)
        .fold((lo, f64::NEG_INFINITY), |acc, x| {
            let v = f(x);
            if v > acc.1 {
                (x, v)
            } else {
                acc
            }
        })
        .0;
    let (mut a, mut b) = ((best - step).max(lo), (best + step).min(hi));
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..60 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    let h = step * 1e-2;
    let (l0, l1, l2) = (f(x - h).ln(), f(x).ln(), f(x + h).ln());
    let curvature = l0 - 2.0 * l1 + l2;
    if curvature < 0.0 && curvature.is_finite() {
        let shift = 0.5 * h * (l0 - l2) / curvature;
        if shift.abs() <= h {
            return Ok(x + shift);
        }
    }
    Ok(x)
}

/// Least-squares slope of `ln y` against `x`.
pub fn log_linear_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 || ys.iter().any(|&y| !(y > 0.0)) {
        return Err(Error::InvalidParameter("log-linear fit needs >= 2 points with y > 0".into()));
    }
    let n = xs.len() as f64;
    let logs: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = logs.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&logs).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baths::sgad_params;
    use crate::channels::evolve_sgad_qubit;
    use crate::linalg::{atomic_coherent_state, max_abs_deviation, random_density_matrix, HalfInt};
    use crate::rotations::{rotation_matrix, EulerAngles};
    use crate::tomography::{acs_qnd_tomogram_with, finite_tomogram, optical_center, optical_tomogram};
    use crate::baths::OpticalBathSpec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn acs() -> DensityMatrix {
        atomic_coherent_state(HalfInt::HALF, PI / 2.0, PI / 3.0).unwrap().density_matrix()
    }

    #[test]
    fn free_precession() {
        let p = sgad_params(2.0, 0.5, 1.0, 0.0, 1.0);
        let t = 3.0;
        let out = lindblad_rk4_sgad(&acs(), t, &p, &IntegratorConfig::new(1e-3).unwrap()).unwrap();
        let want = acs().get(0, 1) * C64::from_polar(1.0, -t);
        assert!((out.get(0, 1) - want).norm() < 1e-10);
    }

    #[test]
    fn agrees_with_analytic_map() {
        let p = sgad_params(1.0, 0.0, PI, 0.25, 1.0);
        let times: Vec<f64> = (1..=10).map(|k| 0.5 * f64::from(k)).collect();
        let rk = lindblad_rk4_sgad_trajectory(&acs(), &times, &p, &IntegratorConfig::new(1e-3).unwrap()).unwrap();
        for (t, r) in times.iter().zip(&rk) {
            let exact = evolve_sgad_qubit(&acs(), *t, &p).unwrap();
            assert!(max_abs_deviation(r.matrix(), exact.matrix()).unwrap() < 1e-9);
        }
    }

    #[test]
    fn fourth_order_convergence() {
        let p = sgad_params(10.0, 1.0, PI, 0.25, 1.0);
        let t = 5.0;
        let exact = evolve_sgad_qubit(&acs(), t, &p).unwrap();
        let err = |dt: f64| {
            let r = lindblad_rk4_sgad(&acs(), t, &p, &IntegratorConfig::new(dt).unwrap()).unwrap();
            max_abs_deviation(r.matrix(), exact.matrix()).unwrap()
        };
        let ratio = err(0.1) / err(0.05);
        assert!((12.0..=20.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(IntegratorConfig::new(0.0).is_err());
        let p = sgad_params(0.0, 0.0, 0.0, 0.25, 1.0);
        let r = lindblad_rk4_sgad(&DensityMatrix::maximally_mixed(3), 1.0, &p, &IntegratorConfig::default());
        assert!(matches!(r, Err(Error::DimMismatch { .. })));
        // an unstable step blows the trace up
        let huge = sgad_params(10.0, 1.0, 0.0, 50.0, 1.0);
        let r = lindblad_rk4_sgad(&acs(), 5.0, &huge, &IntegratorConfig::new(1.0).unwrap());
        assert!(matches!(r, Err(Error::StepSizeTooLarge { .. })));
    }

    #[test]
    fn rotated_diagonal_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let rho = random_density_matrix(2, &mut rng);
        let w = rotated_diagonal_tomogram(&rho, &ComplexMatrix::identity(2)).unwrap();
        assert_eq!(w.probs, rho.populations());
        let a = EulerAngles::new(0.3, 1.0, 2.0).unwrap();
        let w = rotated_diagonal_tomogram(&acs(), &rotation_matrix(HalfInt::HALF, &a)).unwrap();
        let closed = acs_qnd_tomogram_with(PI / 2.0, PI / 3.0, &a, 0.0, 1.0, 0.0);
        assert!(w.max_deviation(&closed) < 1e-12);
        let not_unitary = ComplexMatrix::identity(2).scale(C64::new(2.0, 0.0));
        assert!(matches!(rotated_diagonal_tomogram(&rho, &not_unitary), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn brute_tomogram_matches_pipeline() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for d in [3usize, 5] {
            for _ in 0..20 {
                let rho = random_density_matrix(d, &mut rng);
                for (t, q) in [(0, 1), (1, 0), (1, 1), (2, 1)] {
                    let Ok(idx) = FinitePhaseIndices::new(t, q, d) else { continue };
                    let brute = brute_discrete_tomogram(&rho, &idx).unwrap();
                    assert!(brute.max_deviation(&finite_tomogram(&rho, &idx).unwrap()) < 1e-12);
                    assert!(brute.normalization_deviation() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn phase_state_projector() {
        // (t, q) = (1, 0): w(m) = sum_chi W(m, chi) = <m|rho|m>
        let idx = FinitePhaseIndices::new(1, 0, 3).unwrap();
        for chi0 in 0..3 {
            let mut amps = vec![C64::new(0.0, 0.0); 3];
            amps[chi0] = C64::new(1.0, 0.0);
            let w = brute_discrete_tomogram(&DensityMatrix::pure(&amps).unwrap(), &idx).unwrap();
            for m in 0..3 {
                assert!((w.probs[m] - if m == chi0 { 1.0 } else { 0.0 }).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn quadrature_examples() {
        let gauss = |x: f64| (-x * x / 2.0).exp() / (2.0 * PI).sqrt();
        assert!((quadrature_normalize(gauss, 0.0, 1.0).unwrap() - 1.0).abs() < 1e-10);
        assert_eq!(quadrature_normalize(|_| 0.0, 0.0, 1.0).unwrap(), 0.0);
        let bath = OpticalBathSpec { n_thermal: 3.0, squeezing: 0.5, dissipation: 0.5 };
        let beta = C64::new(2.0, 1.0);
        let (theta, t) = (0.7, 1.3);
        let v = crate::tomography::optical_variance_term(theta, t, &bath).unwrap();
        let integral = quadrature_normalize(
            |x| optical_tomogram(x, theta, t, beta, &bath).unwrap(),
            optical_center(theta, t, beta, &bath),
            v.sqrt() / 2.0,
        )
        .unwrap();
        assert!((integral - 1.0).abs() < 1e-8);
    }

    #[test]
    fn peak_and_slope() {
        let f = |x: f64| (-(x - 0.123_456_789).powi(2) * 3.0).exp();
        assert!((locate_peak(f, -5.0, 5.0).unwrap() - 0.123_456_789).abs() < 1e-12);
        let xs = [0.0f64, 1.0, 2.0, 3.0];
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 * (-0.7 * x).exp()).collect();
        assert!((log_linear_slope(&xs, &ys).unwrap() + 0.7).abs() < 1e-14);
    }
}
