//! Bath parameters: Planck occupation, squeezed-bath moments, SGAD rates and
//! the QND dephasing kernels `gamma(t)`, `eta(t)`.
//!
//! The QND kernels are mode sums over bath oscillators. They are evaluated
//! here as integrals over an Ohmic spectral density with exponential cutoff,
//! `J(w) = (gamma0 / pi) w exp(-w / w_c)`, with the same squeezing `(r, Phi)`
//! for every mode. Any other kernel can be supplied through
//! [`DephasingKernel`], e.g. a [`TabulatedKernel`].

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::quadrature::{integrate, QuadratureOptions};

/// Mean occupation `1 / (exp(w / T) - 1)` with `hbar = k_B = 1`; zero at `T = 0`.
pub fn planck_number(omega: f64, temperature: f64) -> f64 {
    if temperature <= 0.0 {
        return 0.0;
    }
    1.0 / (omega / temperature).exp_m1()
}

/// Purely dephasing (QND) bath.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QndBathSpec {
    pub temperature: f64,
    pub gamma0: f64,
    pub cutoff: f64,
    pub squeezing: f64,
    pub squeezing_phase: f64,
    /// System transition frequency.
    pub omega: f64,
}

impl QndBathSpec {
    pub fn validate(&self) -> Result<()> {
        let finite = [self.temperature, self.gamma0, self.cutoff, self.squeezing, self.squeezing_phase, self.omega]
            .iter()
            .all(|x| x.is_finite());
        if !finite || self.temperature < 0.0 || self.gamma0 < 0.0 || self.cutoff <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "QND bath needs T >= 0, gamma0 >= 0, cutoff > 0 (got {self:?})"
            )));
        }
        Ok(())
    }
}

/// Squeezed generalized amplitude damping bath, before reduction to rates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SgadBathSpec {
    pub temperature: f64,
    pub squeezing: f64,
    pub squeezing_phase: f64,
    pub gamma0: f64,
    pub omega: f64,
}

impl SgadBathSpec {
    pub fn params(&self) -> SgadParams {
        sgad_params(self.temperature, self.squeezing, self.squeezing_phase, self.gamma0, self.omega)
    }
}

/// Rates entering the SGAD master equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SgadParams {
    /// Squeezed mean excitation `N`.
    pub n: f64,
    /// Squeezing moment `M`.
    pub m: C64,
    pub gamma_plus: f64,
    pub gamma_minus: f64,
    pub gamma_beta: f64,
    /// `sqrt(gamma0^2 |M|^2 - omega^2)` on the principal branch.
    pub alpha_prime: C64,
    pub gamma0: f64,
    pub omega: f64,
}

impl SgadParams {
    /// Steady-state excited population `gamma_- / gamma_beta`, finite at `gamma0 = 0`.
    pub fn excited_fraction(&self) -> f64 {
        self.n / (2.0 * self.n + 1.0)
    }

    /// `gamma_+ / gamma_beta`.
    pub fn ground_fraction(&self) -> f64 {
        (self.n + 1.0) / (2.0 * self.n + 1.0)
    }

    /// `gamma0 / gamma_beta`.
    pub fn emission_fraction(&self) -> f64 {
        1.0 / (2.0 * self.n + 1.0)
    }
}

pub fn sgad_params(temperature: f64, squeezing: f64, phase: f64, gamma0: f64, omega: f64) -> SgadParams {
    let n_th = planck_number(omega, temperature);
    let (sh, ch) = (squeezing.sinh(), squeezing.cosh());
    let n = n_th * (ch * ch + sh * sh) + sh * sh;
    let m = C64::from_polar(-0.5 * (2.0 * n_th + 1.0) * (2.0 * squeezing).sinh(), phase);
    let gamma_plus = gamma0 * (n + 1.0);
    let gamma_minus = gamma0 * n;
    let radicand = gamma0 * gamma0 * m.norm_sqr() - omega * omega;
    let alpha_prime = if radicand >= 0.0 {
        C64::new(radicand.sqrt(), 0.0)
    } else {
        C64::new(0.0, (-radicand).sqrt())
    };
    SgadParams {
        n,
        m,
        gamma_plus,
        gamma_minus,
        gamma_beta: gamma_plus + gamma_minus,
        alpha_prime,
        gamma0,
        omega,
    }
}

/// Thermal, squeezed reservoir of the damped oscillator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OpticalBathSpec {
    pub n_thermal: f64,
    /// Real, non-negative bath squeezing.
    pub squeezing: f64,
    /// Dissipation coefficient `k`.
    pub dissipation: f64,
}

impl OpticalBathSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.n_thermal >= 0.0 && self.squeezing >= 0.0 && self.dissipation > 0.0)
            || !self.n_thermal.is_finite()
            || !self.squeezing.is_finite()
            || !self.dissipation.is_finite()
        {
            return Err(Error::InvalidParameter(format!(
                "optical bath needs N >= 0, r >= 0, k > 0 (got {self:?})"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BathSpec {
    Qnd(QndBathSpec),
    Sgad(SgadBathSpec),
    Optical(OpticalBathSpec),
}

/// Source of the decoherence function `gamma(t)` and phase kernel `eta(t)`.
pub trait DephasingKernel: Sync {
    fn gamma(&self, t: f64) -> Result<f64>;
    fn eta(&self, t: f64) -> Result<f64>;
}

impl DephasingKernel for QndBathSpec {
    fn gamma(&self, t: f64) -> Result<f64> {
        qnd_gamma(t, self)
    }
    fn eta(&self, t: f64) -> Result<f64> {
        qnd_eta(t, self)
    }
}

/// Kernel sampled on a time grid, linearly interpolated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TabulatedKernel {
    pub times: Vec<f64>,
    pub gamma: Vec<f64>,
    pub eta: Vec<f64>,
}

impl TabulatedKernel {
    pub fn new(times: Vec<f64>, gamma: Vec<f64>, eta: Vec<f64>) -> Result<Self> {
        if times.len() < 2 || times.len() != gamma.len() || times.len() != eta.len() {
            return Err(Error::InvalidParameter("tabulated kernel needs >= 2 equal-length columns".into()));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParameter("tabulated kernel times must increase".into()));
        }
        Ok(Self { times, gamma, eta })
    }

    /// Samples another kernel on `times`.
    pub fn sample(kernel: &impl DephasingKernel, times: Vec<f64>) -> Result<Self> {
        let gamma = times.iter().map(|&t| kernel.gamma(t)).collect::<Result<Vec<_>>>()?;
        let eta = times.iter().map(|&t| kernel.eta(t)).collect::<Result<Vec<_>>>()?;
        Self::new(times, gamma, eta)
    }

    fn interpolate(&self, column: &[f64], t: f64) -> Result<f64> {
        let (first, last) = (self.times[0], self.times[self.times.len() - 1]);
        if !(first..=last).contains(&t) {
            return Err(Error::InvalidParameter(format!("t = {t} outside tabulated range [{first}, {last}]")));
        }
        let hi = self.times.partition_point(|&x| x < t).max(1);
        let (t0, t1) = (self.times[hi - 1], self.times[hi]);
        let w = (t - t0) / (t1 - t0);
        Ok(column[hi - 1] * (1.0 - w) + column[hi] * w)
    }
}

impl DephasingKernel for TabulatedKernel {
    fn gamma(&self, t: f64) -> Result<f64> {
        self.interpolate(&self.gamma, t)
    }
    fn eta(&self, t: f64) -> Result<f64> {
        self.interpolate(&self.eta, t)
    }
}

// Spectral integrals run to this many cutoffs; exp(-40) is below the tolerance.
const CUTOFF_SPAN: f64 = 40.0;
// Width (in cutoffs) of the near-zero panel handled by its series limit.
const SERIES_PANEL: f64 = 1e-6;

fn coth(x: f64) -> f64 {
    if x < 1e-6 {
        1.0 / x + x / 3.0
    } else {
        1.0 / x.tanh()
    }
}

/// `gamma(t)` integrand per unit `gamma0 / pi`:
/// `exp(-w/w_c) coth(w / 2T) (1 - cos wt) / w [cosh 2r - sinh 2r cos(wt - 2 Phi)]`.
pub(crate) fn gamma_integrand(w: f64, t: f64, bath: &QndBathSpec) -> f64 {
    let squeeze = (2.0 * bath.squeezing).cosh()
        - (2.0 * bath.squeezing).sinh() * (w * t - 2.0 * bath.squeezing_phase).cos();
    if w == 0.0 {
        // limit: T t^2 [cosh 2r - sinh 2r cos 2Phi], zero at T = 0
        return bath.temperature * t * t * squeeze;
    }
    let thermal = if bath.temperature > 0.0 { coth(w / (2.0 * bath.temperature)) } else { 1.0 };
    let one_minus_cos = 2.0 * (0.5 * w * t).sin().powi(2);
    (-w / bath.cutoff).exp() * thermal * one_minus_cos / w * squeeze
}

fn spectral_options(t: f64, cutoff: f64) -> QuadratureOptions {
    // about one panel per half period of the oscillating factor
    let periods = CUTOFF_SPAN * cutoff * t / PI;
    QuadratureOptions {
        rel_tol: 1e-8,
        abs_tol: 1e-300,
        initial_panels: (periods.ceil() as usize).clamp(64, 400_000),
        max_panels: 4_000_000,
    }
}

fn check_time(t: f64) -> Result<()> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::InvalidParameter(format!("time must be finite and >= 0, got {t}")));
    }
    Ok(())
}

/// Decoherence function `gamma(t) >= 0`, `gamma(0) = 0`.
pub fn qnd_gamma(t: f64, bath: &QndBathSpec) -> Result<f64> {
    check_time(t)?;
    bath.validate()?;
    if t == 0.0 || bath.gamma0 == 0.0 {
        return Ok(0.0);
    }
    let delta = bath.cutoff * SERIES_PANEL;
    let f = |w: f64| gamma_integrand(w, t, bath);
    // The integrand is finite and nearly linear on [0, delta]; trapezoid
    // with the analytic w -> 0 limit.
    let head = 0.5 * delta * (f(0.0) + f(delta));
    let tail = integrate(f, delta, CUTOFF_SPAN * bath.cutoff, &spectral_options(t, bath.cutoff))?;
    Ok(bath.gamma0 / PI * (head + tail))
}

/// Phase kernel `eta(t) = -(gamma0/pi) int exp(-w/w_c) sin(wt) / w dw`.
pub fn qnd_eta(t: f64, bath: &QndBathSpec) -> Result<f64> {
    check_time(t)?;
    bath.validate()?;
    if t == 0.0 || bath.gamma0 == 0.0 {
        return Ok(0.0);
    }
    let f = |w: f64| if w == 0.0 { t } else { (-w / bath.cutoff).exp() * (w * t).sin() / w };
    let integral = integrate(f, 0.0, CUTOFF_SPAN * bath.cutoff, &spectral_options(t, bath.cutoff))?;
    Ok(-bath.gamma0 / PI * integral)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1_bath(temperature: f64) -> QndBathSpec {
        QndBathSpec { temperature, gamma0: 0.1, cutoff: 100.0, squeezing: 0.0, squeezing_phase: 0.0, omega: 1.0 }
    }

    #[test]
    fn planck_examples() {
        assert_eq!(planck_number(1.0, 0.0), 0.0);
        assert!((planck_number(1.0, 1.0 / 2f64.ln()) - 1.0).abs() < 1e-14);
        let t = 1e6;
        assert!(((planck_number(1.0, t) - (t - 0.5)) / t).abs() < 0.01);
        assert!(planck_number(1.0, 2.0) > planck_number(1.0, 1.0));
        assert!(planck_number(2.0, 1.0) < planck_number(1.0, 1.0));
    }

    #[test]
    fn sgad_zero_temperature_examples() {
        let p = sgad_params(0.0, 0.0, 0.7, 0.25, 1.3);
        assert_eq!(p.n, 0.0);
        assert_eq!(p.m.norm(), 0.0);
        assert!((p.alpha_prime - C64::new(0.0, 1.3)).norm() < 1e-15);

        let p = sgad_params(0.0, 1.0, 0.0, 0.25, 1.0);
        assert!((p.n - 1f64.sinh().powi(2)).abs() < 1e-14);
        assert!((p.m - C64::new(-2f64.sinh() / 2.0, 0.0)).norm() < 1e-14);
        assert_eq!(p.gamma_beta, p.gamma_plus + p.gamma_minus);
        assert!((p.gamma_plus - p.gamma_minus - p.gamma0).abs() < 1e-15);
    }

    #[test]
    fn squeezing_moments_are_physical() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let p = sgad_params(rng.gen_range(0.0..20.0), rng.gen_range(0.0..2.0), rng.gen_range(0.0..6.3), 0.25, 1.0);
            assert!(p.m.norm_sqr() <= p.n * (p.n + 1.0) + 1e-12 * (1.0 + p.n * p.n));
        }
    }

    #[test]
    fn integrand_matches_mode_modulus() {
        // |(e^{iwt}-1) cosh r + (e^{-iwt}-1) sinh r e^{2i Phi}|^2 / (2 w) weighted like the integrand
        let bath = QndBathSpec { temperature: 0.7, gamma0: 1.0, cutoff: 5.0, squeezing: 0.6, squeezing_phase: 0.4, omega: 1.0 };
        for &(w, t) in &[(0.3, 1.0), (2.0, 0.4), (7.5, 3.3)] {
            let u = C64::from_polar(1.0, w * t) - 1.0;
            let v = C64::from_polar(1.0, -w * t) - 1.0;
            let modulus = (u * bath.squeezing.cosh() + v * bath.squeezing.sinh() * C64::from_polar(1.0, 2.0 * bath.squeezing_phase)).norm_sqr();
            let want = 0.5 * w * (-w / bath.cutoff).exp() / (w * w) * coth(w / (2.0 * bath.temperature)) * modulus;
            assert!((gamma_integrand(w, t, &bath) - want).abs() < 1e-13 * want.abs().max(1e-3));
        }
    }

    #[test]
    fn gamma_zero_temperature_closed_form() {
        // At T = 0, r = 0: (gamma0 / 2 pi) ln(1 + w_c^2 t^2).
        let bath = fig1_bath(0.0);
        for t in [0.01, 0.5, 1.0, 5.0, 15.0] {
            let want = bath.gamma0 / (2.0 * PI) * (1.0 + (bath.cutoff * t).powi(2)).ln();
            let got = qnd_gamma(t, &bath).unwrap();
            assert!(((got - want) / want).abs() < 1e-7, "t={t}: {got} vs {want}");
        }
    }

    #[test]
    fn eta_closed_form() {
        // eta(t) = -(gamma0/pi) arctan(w_c t), independent of T and squeezing.
        let bath = fig1_bath(1.0);
        for t in [0.01, 0.3, 2.0, 10.0] {
            let want = -bath.gamma0 / PI * (bath.cutoff * t).atan();
            let got = qnd_eta(t, &bath).unwrap();
            assert!(((got - want) / want).abs() < 1e-7, "t={t}: {got} vs {want}");
            assert!(got <= 0.0);
        }
        assert_eq!(qnd_eta(0.0, &bath).unwrap(), 0.0);
    }

    #[test]
    fn gamma_basic_properties() {
        let bath = fig1_bath(0.0);
        assert_eq!(qnd_gamma(0.0, &bath).unwrap(), 0.0);
        let mut prev = 0.0;
        for k in 1..=100 {
            let g = qnd_gamma(0.1 * f64::from(k), &bath).unwrap();
            assert!(g >= prev);
            prev = g;
        }
        let doubled = QndBathSpec { gamma0: 0.2, ..bath };
        let t = 1.7;
        assert_eq!(qnd_gamma(t, &doubled).unwrap(), 2.0 * qnd_gamma(t, &bath).unwrap());
        assert_eq!(qnd_eta(t, &doubled).unwrap(), 2.0 * qnd_eta(t, &bath).unwrap());

        let warm = fig1_bath(1.0);
        let phased = QndBathSpec { squeezing_phase: 1.1, ..warm };
        assert_eq!(qnd_gamma(t, &warm).unwrap(), qnd_gamma(t, &phased).unwrap());
        // hotter baths decohere faster
        assert!(qnd_gamma(t, &fig1_bath(2.0)).unwrap() > qnd_gamma(t, &warm).unwrap());
        assert!(qnd_gamma(t, &warm).unwrap() > qnd_gamma(t, &bath).unwrap());
    }

    #[test]
    fn invalid_inputs() {
        let bad = QndBathSpec { cutoff: 0.0, ..fig1_bath(0.0) };
        assert!(qnd_gamma(1.0, &bad).is_err());
        assert!(qnd_gamma(-1.0, &fig1_bath(0.0)).is_err());
    }

    #[test]
    fn tabulated_kernel_interpolates() {
        let k = TabulatedKernel::new(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 4.0], vec![0.0, -1.0, -2.0]).unwrap();
        assert_eq!(k.gamma(1.5).unwrap(), 2.5);
        assert_eq!(k.eta(0.5).unwrap(), -0.5);
        assert_eq!(k.gamma(2.0).unwrap(), 4.0);
        assert!(k.gamma(2.5).is_err());
        assert!(TabulatedKernel::new(vec![0.0, 0.0], vec![0.0; 2], vec![0.0; 2]).is_err());
    }
}
