//! Self-verification: every closed form against its brute-force route, plus
//! the normalization and limit invariants, as named checks with a measured
//! deviation and a tolerance.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::baths::{qnd_eta, qnd_gamma, sgad_params, OpticalBathSpec, QndBathSpec, SgadParams};
use crate::channels::{
    evolve_sgad_qubit, evolve_two_qubit_vacuum, kraus_apply, qnd_dephase, se_kraus, DressedTwoQubitState,
    EinsteinCoefficients, TwoQubitGeometry,
};
use crate::error::Result;
use crate::linalg::{atomic_coherent_state, max_abs_deviation, random_density_matrix, random_pure_amplitudes, DensityMatrix, HalfInt, C64};
use crate::oracles::{
    brute_discrete_tomogram, lindblad_rk4_sgad, lindblad_rk4_sgad_trajectory, locate_peak, log_linear_slope,
    quadrature_normalize, rotated_diagonal_tomogram, IntegratorConfig,
};
use crate::rotations::{rotation_matrix, two_qubit_rotation, EulerAngles};
use crate::sweep::ScenarioKind;
use crate::tomography::{
    acs_qnd_tomogram_with, acs_sgad_tomogram, discrete_wigner, finite_tomogram, optical_center, optical_tomogram,
    optical_tomogram_curve, optical_variance_term, qutrit_reference_operator, qutrit_se_tomogram, spin1_tomogram,
    spin_tomogram, two_qubit_tomogram, FinitePhaseIndices, TomogramVector, DEFAULT_CURVE_POINTS,
};

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub max_deviation: f64,
    pub tolerance: f64,
    /// Set when the check could not run; the check then fails.
    pub error: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.max_deviation <= self.tolerance
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{:.3e}\t{:.1e}\t{}",
            self.name,
            self.max_deviation,
            self.tolerance,
            if self.passed() { "pass" } else { "FAIL" }
        )?;
        if let Some(e) = &self.error {
            write!(f, "\t{e}")?;
        }
        Ok(())
    }
}

/// Checks of one or more scenarios, in run order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed()).count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "check\tmax_deviation\ttolerance\tstatus")?;
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        write!(f, "{} checks, {} failed", self.checks.len(), self.failures())
    }
}

struct Suite {
    prefix: &'static str,
    checks: Vec<Check>,
}

impl Suite {
    fn new(prefix: &'static str) -> Self {
        Self { prefix, checks: Vec::new() }
    }

    /// Runs `measure`, which returns the worst deviation seen.
    fn check(&mut self, name: &str, tolerance: f64, measure: impl FnOnce() -> Result<f64>) {
        let name = format!("{}/{name}", self.prefix);
        let check = match measure() {
            Ok(d) => Check { name, max_deviation: if d.is_nan() { f64::INFINITY } else { d }, tolerance, error: None },
            Err(e) => Check { name, max_deviation: f64::INFINITY, tolerance, error: Some(e.to_string()) },
        };
        self.checks.push(check);
    }
}

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + salt)
}

pub fn random_angles(rng: &mut impl Rng) -> EulerAngles {
    EulerAngles { alpha: rng.gen_range(0.0..2.0 * PI), beta: rng.gen_range(0.0..PI), gamma: rng.gen_range(0.0..2.0 * PI) }
}

fn analyzer() -> EulerAngles {
    EulerAngles { alpha: 0.0, beta: FRAC_PI_3, gamma: FRAC_PI_4 }
}

fn worst(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, |a, b| if b.is_nan() { f64::INFINITY } else { a.max(b) })
}

fn acs(alpha: f64, beta: f64) -> Result<DensityMatrix> {
    Ok(atomic_coherent_state(HalfInt::HALF, alpha, beta)?.density_matrix())
}

fn alpha_shift_deviation(f: impl Fn(&EulerAngles) -> Result<TomogramVector>, rng: &mut ChaCha8Rng, trials: usize) -> Result<f64> {
    let mut dev: f64 = 0.0;
    for _ in 0..trials {
        let a = random_angles(rng);
        let shifted = EulerAngles { alpha: rng.gen_range(0.0..2.0 * PI), ..a };
        dev = dev.max(f(&a)?.max_deviation(&f(&shifted)?));
    }
    Ok(dev)
}

/// Dephasing bath of the first figure.
pub fn fig_qnd_bath(temperature: f64) -> QndBathSpec {
    QndBathSpec { temperature, gamma0: 0.1, cutoff: 100.0, squeezing: 0.0, squeezing_phase: 0.0, omega: 1.0 }
}

fn verify_qnd() -> Vec<Check> {
    let mut s = Suite::new("qnd");
    s.check("closed-form-vs-rotated-diagonal", 1e-10, || {
        let mut r = rng(1);
        let mut dev: f64 = 0.0;
        for _ in 0..500 {
            let (alpha, beta) = (r.gen_range(0.0..PI), r.gen_range(0.0..2.0 * PI));
            let a = random_angles(&mut r);
            let (t, omega, gamma_t, eta_t) = (r.gen_range(0.0..15.0), r.gen_range(0.1..3.0), r.gen_range(0.0..3.0), r.gen_range(-1.0..0.0));
            let evolved = qnd_dephase(&acs(alpha, beta)?, HalfInt::HALF, t, omega, gamma_t, eta_t)?;
            let brute = rotated_diagonal_tomogram(&evolved, &rotation_matrix(HalfInt::HALF, &a))?;
            dev = dev.max(acs_qnd_tomogram_with(alpha, beta, &a, t, omega, gamma_t).max_deviation(&brute));
        }
        Ok(dev)
    });
    s.check("higher-spin-dephasing-normalization", 1e-10, || {
        let mut r = rng(2);
        let mut dev: f64 = 0.0;
        for j2 in 1..=6 {
            let j = HalfInt::from_twice(j2);
            for _ in 0..50 {
                let rho = random_density_matrix(j.dim(), &mut r);
                let evolved = qnd_dephase(&rho, j, r.gen_range(0.0..10.0), 1.0, r.gen_range(0.0..2.0), r.gen_range(-1.0..0.0))?;
                let w = spin_tomogram(&evolved, j, &random_angles(&mut r))?;
                dev = dev.max(w.normalization_deviation()).max(w.range_violation());
            }
        }
        Ok(dev)
    });
    s.check("ohmic-gamma-zero-temperature-closed-form", 1e-7, || {
        let bath = fig_qnd_bath(0.0);
        let mut dev: f64 = 0.0;
        for t in [0.01, 0.5, 1.0, 5.0, 15.0] {
            let want = bath.gamma0 / (2.0 * PI) * (1.0 + (bath.cutoff * t).powi(2)).ln();
            dev = dev.max(((qnd_gamma(t, &bath)? - want) / want).abs());
        }
        Ok(dev)
    });
    s.check("ohmic-eta-closed-form", 1e-7, || {
        let bath = fig_qnd_bath(1.0);
        let mut dev: f64 = 0.0;
        for t in [0.01, 0.3, 2.0, 10.0] {
            let want = -bath.gamma0 / PI * (bath.cutoff * t).atan();
            dev = dev.max(((qnd_eta(t, &bath)? - want) / want).abs());
        }
        Ok(dev)
    });
    s.check("initial-value", 1e-6, || {
        let w = acs_qnd_tomogram_with(FRAC_PI_2, FRAC_PI_3, &analyzer(), 0.0, 1.0, 0.0);
        Ok((w.probs[0] - 0.612072).abs())
    });
    s.check("alpha-independence", 1e-14, || {
        let mut r = rng(3);
        alpha_shift_deviation(|a| Ok(acs_qnd_tomogram_with(1.0, 2.0, a, 3.0, 1.0, 0.2)), &mut r, 200)
    });
    s.checks
}

/// SGAD rates of the third figure at `(T, r)`.
pub fn fig_sgad_params(temperature: f64, squeezing: f64) -> SgadParams {
    sgad_params(temperature, squeezing, PI, 0.25, 1.0)
}

fn verify_sgad() -> Vec<Check> {
    let mut s = Suite::new("sgad");
    s.check("analytic-vs-rk4", 1e-6, || {
        let rho0 = acs(FRAC_PI_2, FRAC_PI_3)?;
        let times: Vec<f64> = (1..=10).map(|k| 0.5 * f64::from(k)).collect();
        let cfg = IntegratorConfig::new(1e-4)?;
        let mut dev: f64 = 0.0;
        for (temperature, squeezing) in [(1.0, 0.0), (10.0, 0.0), (10.0, 1.0)] {
            let p = fig_sgad_params(temperature, squeezing);
            let rk = lindblad_rk4_sgad_trajectory(&rho0, &times, &p, &cfg)?;
            for (t, numeric) in times.iter().zip(&rk) {
                let exact = evolve_sgad_qubit(&rho0, *t, &p)?;
                dev = dev.max(max_abs_deviation(numeric.matrix(), exact.matrix())?);
            }
        }
        Ok(dev)
    });
    s.check("rk4-richardson-ratio-minus-16", 4.0, || {
        let rho0 = acs(FRAC_PI_2, FRAC_PI_3)?;
        let p = fig_sgad_params(10.0, 1.0);
        let exact = evolve_sgad_qubit(&rho0, 5.0, &p)?;
        let err = |dt: f64| -> Result<f64> {
            let numeric = lindblad_rk4_sgad(&rho0, 5.0, &p, &IntegratorConfig::new(dt)?)?;
            max_abs_deviation(numeric.matrix(), exact.matrix())
        };
        Ok((err(0.1)? / err(0.05)? - 16.0).abs())
    });
    s.check("closed-form-vs-rotated-diagonal", 1e-10, || {
        let mut r = rng(4);
        let mut dev: f64 = 0.0;
        for _ in 0..500 {
            let (alpha, beta) = (r.gen_range(0.0..PI), r.gen_range(0.0..2.0 * PI));
            let a = random_angles(&mut r);
            let t = r.gen_range(0.0..10.0);
            let p = sgad_params(r.gen_range(0.0..10.0), r.gen_range(0.0..2.0), r.gen_range(0.0..2.0 * PI), r.gen_range(0.0..1.0), r.gen_range(0.1..3.0));
            let evolved = evolve_sgad_qubit(&acs(alpha, beta)?, t, &p)?;
            let brute = rotated_diagonal_tomogram(&evolved, &rotation_matrix(HalfInt::HALF, &a))?;
            dev = dev.max(acs_sgad_tomogram(alpha, beta, &a, t, &p)?.max_deviation(&brute));
        }
        Ok(dev)
    });
    s.check("zero-coupling-equals-dephasing-free", 1e-12, || {
        let mut r = rng(5);
        let mut dev: f64 = 0.0;
        for _ in 0..500 {
            let (alpha, beta) = (r.gen_range(0.0..PI), r.gen_range(0.0..2.0 * PI));
            let a = random_angles(&mut r);
            let t = r.gen_range(0.0..10.0);
            let p = sgad_params(r.gen_range(0.0..10.0), r.gen_range(0.0..2.0), r.gen_range(0.0..2.0 * PI), 0.0, 1.0);
            dev = dev.max(acs_sgad_tomogram(alpha, beta, &a, t, &p)?.max_deviation(&acs_qnd_tomogram_with(alpha, beta, &a, t, 1.0, 0.0)));
        }
        Ok(dev)
    });
    s.check("long-time-populations", 1e-10, || {
        let p = fig_sgad_params(10.0, 1.0);
        let w = acs_sgad_tomogram(FRAC_PI_2, FRAC_PI_3, &EulerAngles::zero(), 400.0, &p)?;
        Ok((w.probs[0] - p.excited_fraction()).abs().max((w.probs[1] - p.ground_fraction()).abs()))
    });
    s.check("normalization", 1e-10, || {
        let mut r = rng(6);
        let mut dev: f64 = 0.0;
        for _ in 0..500 {
            let p = sgad_params(r.gen_range(0.0..20.0), r.gen_range(0.0..3.0), r.gen_range(0.0..2.0 * PI), r.gen_range(0.0..2.0), 1.0);
            let w = acs_sgad_tomogram(r.gen_range(0.0..PI), r.gen_range(0.0..2.0 * PI), &random_angles(&mut r), r.gen_range(0.0..50.0), &p)?;
            dev = dev.max(w.normalization_deviation()).max(w.range_violation());
        }
        Ok(dev)
    });
    s.checks
}

/// Vacuum-bath geometry of the two-qubit figures.
pub fn fig_two_qubit_geometry(r12: f64) -> TwoQubitGeometry {
    TwoQubitGeometry { gamma: 0.05, k0: 1.0, r12, mu_dot_r: 0.0, omega0: 1.0 }
}

fn verify_two_qubit() -> Vec<Check> {
    let mut s = Suite::new("two_qubit");
    s.check("closed-form-vs-rotated-diagonal", 1e-10, || {
        let mut r = rng(7);
        let mut dev: f64 = 0.0;
        for _ in 0..300 {
            let (a1, a2) = (random_angles(&mut r), random_angles(&mut r));
            let g = TwoQubitGeometry { mu_dot_r: r.gen_range(-1.0..1.0), ..fig_two_qubit_geometry(r.gen_range(0.01..5.0)) };
            let start = DressedTwoQubitState::new(random_density_matrix(4, &mut r))?;
            let rho = evolve_two_qubit_vacuum(&start, r.gen_range(0.0..60.0), &g)?;
            let brute = rotated_diagonal_tomogram(&rho.to_bare(), &two_qubit_rotation(&a1, &a2))?;
            dev = dev.max(two_qubit_tomogram(&rho, &a1, &a2).max_deviation(&brute));
        }
        Ok(dev)
    });
    s.check("trace-preservation", 1e-12, || {
        let mut r = rng(8);
        let mut dev: f64 = 0.0;
        for _ in 0..300 {
            let start = DressedTwoQubitState::new(random_density_matrix(4, &mut r))?;
            let rho = evolve_two_qubit_vacuum(&start, r.gen_range(0.0..100.0), &fig_two_qubit_geometry(r.gen_range(0.01..5.0)))?;
            dev = dev.max((rho.density().matrix().trace() - 1.0).norm());
        }
        Ok(dev)
    });
    s.check("ground-state-limit", 1e-10, || {
        let rho = evolve_two_qubit_vacuum(&DressedTwoQubitState::initial_e1g2(), 2000.0, &fig_two_qubit_geometry(2.0))?;
        Ok((rho.gg() - 1.0).abs())
    });
    s.check("normalization", 1e-10, || {
        let mut r = rng(9);
        let mut dev: f64 = 0.0;
        for _ in 0..300 {
            let rho = evolve_two_qubit_vacuum(&DressedTwoQubitState::initial_e1g2(), r.gen_range(0.0..30.0), &fig_two_qubit_geometry(r.gen_range(0.05..3.0)))?;
            let w = two_qubit_tomogram(&rho, &random_angles(&mut r), &random_angles(&mut r));
            dev = dev.max(w.normalization_deviation()).max(w.range_violation());
        }
        Ok(dev)
    });
    s.checks
}

fn verify_spin1() -> Vec<Check> {
    let mut s = Suite::new("spin1");
    s.check("closed-form-vs-rotated-diagonal", 1e-10, || {
        let mut r = rng(10);
        let mut dev: f64 = 0.0;
        for _ in 0..500 {
            let v = random_pure_amplitudes(3, &mut r);
            let a = random_angles(&mut r);
            let brute = rotated_diagonal_tomogram(&DensityMatrix::pure(&v)?, &rotation_matrix(HalfInt::ONE, &a))?;
            dev = dev.max(spin1_tomogram(v[0], v[1], v[2], &a)?.max_deviation(&brute));
        }
        Ok(dev)
    });
    s.check("top-state-special-case", 1e-14, || {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        let mut dev: f64 = 0.0;
        for k in 0..100 {
            let b = PI * f64::from(k) / 99.0;
            let w = spin1_tomogram(one, zero, zero, &EulerAngles { alpha: 0.0, beta: b, gamma: 0.7 })?;
            let want = [(1.0 + b.cos()).powi(2) / 4.0, b.sin().powi(2) / 2.0, (1.0 - b.cos()).powi(2) / 4.0];
            dev = dev.max(worst(w.probs.iter().zip(want).map(|(p, q)| (p - q).abs())));
        }
        Ok(dev)
    });
    s.check("alpha-independence", 1e-14, || {
        let mut r = rng(11);
        let third = C64::new(1.0 / 3f64.sqrt(), 0.0);
        alpha_shift_deviation(|a| spin1_tomogram(third, third, third, a), &mut r, 200)
    });
    s.checks
}

fn verify_qutrit() -> Vec<Check> {
    let mut s = Suite::new("qutrit");
    let c = EinsteinCoefficients { eta1: 2.0, eta2: 4.0 };
    s.check("closed-form-vs-brute-pipeline", 1e-12, || {
        // The closed form is linear in the initial operator; the reference
        // operator carries exactly the coherences it encodes.
        let rho0 = DensityMatrix::from_trusted(qutrit_reference_operator());
        let idx = FinitePhaseIndices::new(0, 1, 3)?;
        let mut dev: f64 = 0.0;
        for k in 0..=60 {
            let time = 0.05 * f64::from(k);
            let evolved = kraus_apply(&rho0, &se_kraus(time, &c)?)?;
            dev = dev.max(qutrit_se_tomogram(time, &c)?.max_deviation(&brute_discrete_tomogram(&evolved, &idx)?));
        }
        Ok(dev)
    });
    s.check("closed-form-normalization", 1e-12, || {
        let mut dev: f64 = 0.0;
        for k in 0..=300 {
            dev = dev.max(qutrit_se_tomogram(0.01 * f64::from(k), &c)?.normalization_deviation());
        }
        Ok(dev)
    });
    s.check("brute-pipeline-normalization", 1e-12, || {
        let mut r = rng(12);
        let mut dev: f64 = 0.0;
        for _ in 0..200 {
            let rho = kraus_apply(&random_density_matrix(3, &mut r), &se_kraus(r.gen_range(0.0..5.0), &c)?)?;
            for (t, q) in [(0, 1), (1, 0), (1, 1), (1, 2)] {
                dev = dev.max(brute_discrete_tomogram(&rho, &FinitePhaseIndices::new(t, q, 3)?)?.normalization_deviation());
            }
        }
        Ok(dev)
    });
    s.check("brute-vs-pipeline", 1e-12, || {
        let mut r = rng(13);
        let mut dev: f64 = 0.0;
        for _ in 0..200 {
            let rho = random_density_matrix(3, &mut r);
            let idx = FinitePhaseIndices::new(r.gen_range(0..3), r.gen_range(1..3), 3)?;
            dev = dev.max(brute_discrete_tomogram(&rho, &idx)?.max_deviation(&finite_tomogram(&rho, &idx)?));
        }
        Ok(dev)
    });
    s.check("wigner-sums-to-one", 1e-12, || {
        let mut r = rng(14);
        let mut dev: f64 = 0.0;
        for _ in 0..200 {
            dev = dev.max((discrete_wigner(&random_density_matrix(3, &mut r))?.total() - 1.0).abs());
        }
        Ok(dev)
    });
    s.check("wigner-imaginary-residue", 1e-10, || {
        let mut r = rng(15);
        let mut dev: f64 = 0.0;
        for _ in 0..200 {
            dev = dev.max(discrete_wigner(&random_density_matrix(3, &mut r))?.max_imag_residue);
        }
        Ok(dev)
    });
    s.check("initial-value", 1e-15, || {
        let w = qutrit_se_tomogram(0.0, &c)?;
        Ok(worst(w.probs.iter().zip([5.0 / 6.0, 1.0 / 12.0, 1.0 / 12.0]).map(|(p, q)| (p - q).abs())))
    });
    s.check("approach-to-one-third", 1e-6, || {
        // e^{-eta1 t / 2} < 1e-6
        let t = 2.0 * 1e6f64.ln() / c.eta1 + 1e-9;
        Ok(worst(qutrit_se_tomogram(t, &c)?.probs.iter().map(|p| (p - 1.0 / 3.0).abs())))
    });
    s.checks
}

/// Optical bath of the oscillator figures.
pub fn fig_optical_bath() -> OpticalBathSpec {
    OpticalBathSpec { n_thermal: 5.0, squeezing: 1.0, dissipation: 0.5 }
}

/// Peak position of the optical tomogram found numerically.
pub fn optical_peak(theta: f64, time: f64, beta: C64, bath: &OpticalBathSpec) -> Result<f64> {
    let sigma = optical_variance_term(theta, time, bath)?.sqrt() / 2.0;
    let reach = beta.norm() + 10.0 * sigma;
    locate_peak(|x| optical_tomogram(x, theta, time, beta, bath).unwrap_or(0.0), -reach, reach)
}

fn verify_optical() -> Vec<Check> {
    let mut s = Suite::new("optical");
    s.check("quadrature-normalization", 1e-8, || {
        let mut r = rng(16);
        let mut dev: f64 = 0.0;
        for _ in 0..100 {
            let n = r.gen_range(0.0..10.0);
            let bath = OpticalBathSpec { n_thermal: n, squeezing: r.gen_range(0.0..=n), dissipation: r.gen_range(0.05..2.0) };
            let beta = C64::new(r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0));
            let (theta, t) = (r.gen_range(0.0..PI), r.gen_range(0.0..10.0));
            let sigma = optical_variance_term(theta, t, &bath)?.sqrt() / 2.0;
            let integral = quadrature_normalize(
                |x| optical_tomogram(x, theta, t, beta, &bath).unwrap_or(f64::NAN),
                optical_center(theta, t, beta, &bath),
                sigma,
            )?;
            dev = dev.max((integral - 1.0).abs());
        }
        Ok(dev)
    });
    s.check("curve-normalization", 1e-8, || {
        let mut r = rng(17);
        let mut dev: f64 = 0.0;
        for _ in 0..100 {
            let t = r.gen_range(0.0..10.0);
            let curve = optical_tomogram_curve(r.gen_range(0.0..PI), t, C64::new(2.0, 0.0), &fig_optical_bath(), DEFAULT_CURVE_POINTS)?;
            dev = dev.max((curve.trapezoid() - 1.0).abs());
        }
        Ok(dev)
    });
    s.check("coherent-state-at-t0", 1e-14, || {
        let beta = C64::new(2.0, 0.5);
        let mut dev: f64 = 0.0;
        for k in 0..50 {
            let theta = PI * f64::from(k) / 49.0;
            let center = (beta * C64::from_polar(1.0, theta)).re;
            for x in [-3.0, -1.0, 0.0, 0.5, 2.0] {
                let want = (2.0 / PI).sqrt() * (-2.0 * (x - center).powi(2)).exp();
                dev = dev.max((optical_tomogram(x, theta, 0.0, beta, &fig_optical_bath())? - want).abs());
            }
        }
        Ok(dev)
    });
    s.check("stationary-value", 1e-12, || {
        let w = optical_tomogram(0.0, FRAC_PI_3, f64::INFINITY, C64::new(2.0, 0.0), &fig_optical_bath())?;
        Ok((w - (2.0 / PI).sqrt() / 12f64.sqrt()).abs())
    });
    s.check("peak-decay-rate", 1e-6, || {
        let bath = fig_optical_bath();
        let beta = C64::new(2.0, 0.0);
        let times: Vec<f64> = (0..=20).map(|k| 0.2 * f64::from(k)).collect();
        let peaks = times.iter().map(|&t| optical_peak(FRAC_PI_3, t, beta, &bath)).collect::<Result<Vec<_>>>()?;
        Ok((log_linear_slope(&times, &peaks)? + bath.dissipation).abs())
    });
    s.checks
}

/// Runs the checks of one scenario.
pub fn verify_scenario(kind: ScenarioKind) -> Report {
    let checks = match kind {
        ScenarioKind::Qnd => verify_qnd(),
        ScenarioKind::Sgad => verify_sgad(),
        ScenarioKind::TwoQubit => verify_two_qubit(),
        ScenarioKind::Spin1 => verify_spin1(),
        ScenarioKind::Qutrit => verify_qutrit(),
        ScenarioKind::Optical => verify_optical(),
    };
    Report { checks }
}

/// Runs every scenario's checks.
pub fn verify_all() -> Report {
    let checks = ScenarioKind::ALL.into_iter().flat_map(|k| verify_scenario(k).checks).collect();
    Report { checks }
}
