//! Time evolution maps: QND dephasing of a spin `j`, the SGAD qubit channel,
//! two qubits decaying into a common vacuum bath, and qutrit spontaneous
//! emission.

use nalgebra::Matrix2;
use serde::{Deserialize, Serialize};

use crate::baths::{DephasingKernel, QndBathSpec, SgadParams};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix, HalfInt, C64};

const I: C64 = C64::new(0.0, 1.0);

fn check_dim(rho: &DensityMatrix, expected: usize) -> Result<()> {
    if rho.dim() != expected {
        return Err(Error::DimMismatch { expected, found: rho.dim() });
    }
    Ok(())
}

fn check_time(t: f64) -> Result<()> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter(format!("time must be finite and >= 0, got {t}")));
    }
    Ok(())
}

/// QND dephasing with precomputed kernel values `gamma(t)`, `eta(t)`.
///
/// Element `(m, n)` picks up
/// `exp(-i w (m-n) t) exp(i w^2 (m^2-n^2) eta) exp(-w^2 (m-n)^2 gamma)`.
pub fn qnd_dephase(rho0: &DensityMatrix, j: HalfInt, t: f64, omega: f64, gamma_t: f64, eta_t: f64) -> Result<DensityMatrix> {
    check_dim(rho0, j.dim())?;
    let ms: Vec<f64> = j.projections().map(HalfInt::value).collect();
    let w2 = omega * omega;
    let out = ComplexMatrix::from_fn(j.dim(), |r, c| {
        if r == c {
            return rho0.get(r, c);
        }
        let (m, n) = (ms[r], ms[c]);
        let phase = -omega * (m - n) * t + w2 * (m * m - n * n) * eta_t;
        rho0.get(r, c) * C64::from_polar((-w2 * (m - n).powi(2) * gamma_t).exp(), phase)
    });
    Ok(DensityMatrix::from_trusted(out))
}

/// QND evolution with kernels drawn from any [`DephasingKernel`].
pub fn evolve_qnd_spin_with(
    rho0: &DensityMatrix,
    j: HalfInt,
    t: f64,
    omega: f64,
    kernel: &impl DephasingKernel,
) -> Result<DensityMatrix> {
    check_time(t)?;
    check_dim(rho0, j.dim())?;
    qnd_dephase(rho0, j, t, omega, kernel.gamma(t)?, kernel.eta(t)?)
}

/// QND evolution with the Ohmic kernels of `bath`.
pub fn evolve_qnd_spin(rho0: &DensityMatrix, j: HalfInt, t: f64, bath: &QndBathSpec) -> Result<DensityMatrix> {
    evolve_qnd_spin_with(rho0, j, t, bath.omega, bath)
}

/// `cosh(a t) e^{-h t}` and `sinh(a t)/a e^{-h t}` for complex `a` with `Re a <= h`.
///
/// Written with decaying exponentials only; the ratio falls back to its
/// Taylor series near `a t = 0`.
pub(crate) fn damped_cosh_sinhc(a: C64, h: f64, t: f64) -> (C64, C64) {
    let grow = ((a - h) * t).exp();
    let fall = ((-a - h) * t).exp();
    let c = 0.5 * (grow + fall);
    let at = a * t;
    let s = if at.norm() < 1e-4 {
        (1.0 + at * at / 6.0) * t * (-h * t).exp()
    } else {
        0.5 * (grow - fall) / a
    };
    (c, s)
}

type M2 = Matrix2<C64>;

fn to_m2(rho: &DensityMatrix) -> M2 {
    M2::new(rho.get(0, 0), rho.get(0, 1), rho.get(1, 0), rho.get(1, 1))
}

fn from_m2(m: &M2) -> ComplexMatrix {
    ComplexMatrix::from_fn(2, |r, c| m[(r, c)])
}

/// Qubit operators in the `(e, g)` row order: `sigma_+ = |e><g|`.
pub(crate) fn sigma_ops() -> (M2, M2, M2) {
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let plus = M2::new(zero, one, zero, zero);
    let minus = M2::new(zero, zero, one, zero);
    let z = M2::new(one, zero, zero, -one);
    (plus, minus, z)
}

/// Analytic SGAD evolution of an arbitrary qubit state, rows `(m=+1/2, m=-1/2)`.
pub fn evolve_sgad_qubit(rho0: &DensityMatrix, t: f64, p: &SgadParams) -> Result<DensityMatrix> {
    check_dim(rho0, 2)?;
    check_time(t)?;
    let rho = to_m2(rho0);
    let (sp, sm, sz) = sigma_ops();
    let h = 0.5 * p.gamma_beta;
    let decay = (-p.gamma_beta * t).exp();
    let loss = -(-p.gamma_beta * t).exp_m1();
    let (ch, sh) = damped_cosh_sinhc(p.alpha_prime, h, t);

    let f_plus = 1.0 + decay + 2.0 * ch;
    let f_minus = 1.0 + decay - 2.0 * ch;
    let g_plus = p.emission_fraction() * loss + 2.0 * I * p.omega * sh;
    let g_minus = p.emission_fraction() * loss - 2.0 * I * p.omega * sh;

    let out = rho * (f_plus / 4.0) + sz * rho * sz * (f_minus / 4.0)
        - rho * sz * (g_minus / 4.0)
        - sz * rho * (g_plus / 4.0)
        - (sp * rho * sp * p.m + sm * rho * sm * p.m.conj()) * (p.gamma0 * sh)
        + (sm * rho * sp * C64::from(p.ground_fraction()) + sp * rho * sm * C64::from(p.excited_fraction())) * C64::from(loss);
    Ok(DensityMatrix::from_trusted(from_m2(&out)))
}

/// Two identical qubits sharing a vacuum bath.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoQubitGeometry {
    /// Single-qubit spontaneous emission rate.
    pub gamma: f64,
    pub k0: f64,
    /// Inter-qubit distance.
    pub r12: f64,
    /// Dipole orientation relative to the separation, `mu . r12`.
    #[serde(default)]
    pub mu_dot_r: f64,
    /// Mean transition frequency.
    #[serde(default = "one")]
    pub omega0: f64,
}

fn one() -> f64 {
    1.0
}

impl TwoQubitGeometry {
    pub fn validate(&self) -> Result<()> {
        let ok = self.gamma > 0.0
            && self.k0 > 0.0
            && self.r12 > 0.0
            && self.mu_dot_r.abs() <= 1.0
            && [self.gamma, self.k0, self.r12, self.omega0].iter().all(|x| x.is_finite());
        if !ok {
            return Err(Error::InvalidParameter(format!(
                "two-qubit geometry needs gamma, k0, r12 > 0 and |mu.r| <= 1 (got {self:?})"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollectiveRates {
    pub gamma12: f64,
    pub omega12: f64,
}

/// Collective decay `Gamma_12 = Gamma F(k0 r12)` and dipole shift `Omega_12`.
pub fn collective_rates(g: &TwoQubitGeometry) -> Result<CollectiveRates> {
    g.validate()?;
    let x = g.k0 * g.r12;
    let mu2 = g.mu_dot_r * g.mu_dot_r;
    let (sin_x, cos_x) = x.sin_cos();
    // sin x / x and cos x / x^2 - sin x / x^3 lose all precision as x -> 0
    let (sinc, tail) = if x < 1e-3 {
        let x2 = x * x;
        (1.0 - x2 / 6.0 + x2 * x2 / 120.0, -1.0 / 3.0 + x2 / 30.0 - x2 * x2 / 840.0)
    } else {
        (sin_x / x, cos_x / (x * x) - sin_x / x.powi(3))
    };
    let f = 1.5 * ((1.0 - mu2) * sinc + (1.0 - 3.0 * mu2) * tail);
    let omega12 = 0.75 * g.gamma
        * (-(1.0 - mu2) * cos_x / x + (1.0 - 3.0 * mu2) * (sin_x / (x * x) + cos_x / x.powi(3)));
    Ok(CollectiveRates { gamma12: g.gamma * f, omega12 })
}

/// Two-qubit state in the dressed basis `(e, s, a, g)`:
/// `|e> = |e1 e2>`, `|s>, |a> = (|e1 g2> +- |g1 e2>)/sqrt 2`, `|g> = |g1 g2>`.
#[derive(Debug, Clone, PartialEq)]
pub struct DressedTwoQubitState(DensityMatrix);

const E: usize = 0;
const S: usize = 1;
const A: usize = 2;
const G: usize = 3;

impl DressedTwoQubitState {
    pub fn new(rho: DensityMatrix) -> Result<Self> {
        check_dim(&rho, 4)?;
        Ok(Self(rho))
    }

    /// `rho_ss = rho_aa = rho_sa = 1/2`, all else zero; this is `|e1 g2>`.
    pub fn initial_e1g2() -> Self {
        let mut m = ComplexMatrix::zeros(4);
        for (r, c) in [(S, S), (A, A), (S, A), (A, S)] {
            m[(r, c)] = C64::new(0.5, 0.0);
        }
        Self(DensityMatrix::from_trusted(m))
    }

    /// Dressed-to-bare change of basis; columns are `e, s, a, g` in the bare
    /// order `(e1e2, e1g2, g1e2, g1g2)`.
    pub fn basis_change() -> ComplexMatrix {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut b = ComplexMatrix::zeros(4);
        b[(0, E)] = C64::new(1.0, 0.0);
        b[(1, S)] = C64::new(h, 0.0);
        b[(2, S)] = C64::new(h, 0.0);
        b[(1, A)] = C64::new(h, 0.0);
        b[(2, A)] = C64::new(-h, 0.0);
        b[(3, G)] = C64::new(1.0, 0.0);
        b
    }

    pub fn from_bare(rho: &DensityMatrix) -> Result<Self> {
        check_dim(rho, 4)?;
        let b = Self::basis_change();
        Ok(Self(DensityMatrix::from_trusted(&(&b.adjoint() * rho.matrix()) * &b)))
    }

    pub fn to_bare(&self) -> DensityMatrix {
        let b = Self::basis_change();
        DensityMatrix::from_trusted(&(&b * self.0.matrix()) * &b.adjoint())
    }

    pub fn density(&self) -> &DensityMatrix {
        &self.0
    }

    fn at(&self, r: usize, c: usize) -> C64 {
        self.0.get(r, c)
    }

    pub fn ee(&self) -> f64 {
        self.at(E, E).re
    }
    pub fn ss(&self) -> f64 {
        self.at(S, S).re
    }
    pub fn aa(&self) -> f64 {
        self.at(A, A).re
    }
    pub fn gg(&self) -> f64 {
        self.at(G, G).re
    }
    pub fn es(&self) -> C64 {
        self.at(E, S)
    }
    pub fn ea(&self) -> C64 {
        self.at(E, A)
    }
    pub fn eg(&self) -> C64 {
        self.at(E, G)
    }
    pub fn sa(&self) -> C64 {
        self.at(S, A)
    }
    pub fn sg(&self) -> C64 {
        self.at(S, G)
    }
    pub fn ag(&self) -> C64 {
        self.at(A, G)
    }
}

/// `(1 - exp(-rate t)) / rate`, continuous at `rate = 0`.
fn saturation(rate: f64, t: f64) -> f64 {
    if (rate * t).abs() < 1e-8 {
        t * (1.0 - 0.5 * rate * t)
    } else {
        -(-rate * t).exp_m1() / rate
    }
}

/// Closed-form vacuum-bath evolution of the ten independent dressed elements.
pub fn evolve_two_qubit_vacuum(rho0: &DressedTwoQubitState, t: f64, g: &TwoQubitGeometry) -> Result<DressedTwoQubitState> {
    check_time(t)?;
    let CollectiveRates { gamma12, omega12 } = collective_rates(g)?;
    let gamma = g.gamma;
    let (gp, gm) = (gamma + gamma12, gamma - gamma12);
    let w0 = g.omega0;
    let decay = |rate: f64| (-rate * t).exp();
    let rotate = |freq: f64| C64::from_polar(1.0, -freq * t);

    let (ee0, ss0, aa0, gg0) = (rho0.ee(), rho0.ss(), rho0.aa(), rho0.gg());

    let ee = decay(2.0 * gamma) * ee0;
    let ss = decay(gp) * ss0 + gp * saturation(gm, t) * decay(gp) * ee0;
    let aa = decay(gm) * aa0 + gm * saturation(gp, t) * decay(gm) * ee0;
    // (2 / gm) e^{-gp t} [gp (1 - e^{-gm t}) / 2 + gm / 2], regrouped to stay finite at gm = 0
    let nested = decay(gp) * (gp * saturation(gm, t) + 1.0);
    let feed = gp / (2.0 * gamma) * (1.0 - nested)
        + gm / gp * (-(-gm * t).exp_m1() - gm / (2.0 * gamma) * -(-2.0 * gamma * t).exp_m1());
    let gg = gg0 + -(-gp * t).exp_m1() * ss0 + -(-gm * t).exp_m1() * aa0 + feed * ee0;

    let es = rotate(w0 - omega12) * decay(0.5 * (3.0 * gamma + gamma12)) * rho0.es();
    let ea = rotate(w0 + omega12) * decay(0.5 * (3.0 * gamma - gamma12)) * rho0.ea();
    let eg = rotate(2.0 * w0) * decay(gamma) * rho0.eg();
    let sa = rotate(2.0 * omega12) * decay(gamma) * rho0.sa();

    let (sin2, cos2) = (2.0 * omega12 * t).sin_cos();
    let damp = decay(gamma);
    let real_part = 2.0 * omega12 * damp * sin2 + gamma * (1.0 - damp * cos2);
    let imag_part = 2.0 * omega12 * (1.0 - damp * cos2) - gamma * damp * sin2;
    let denom = gamma * gamma + 4.0 * omega12 * omega12;
    let sg = rotate(w0 + omega12)
        * decay(0.5 * gp)
        * (rho0.sg() + gp / denom * C64::new(real_part, imag_part) * rho0.es());
    let ag = rotate(w0 - omega12)
        * decay(0.5 * gm)
        * (rho0.ag() - gm / denom * C64::new(real_part, -imag_part) * rho0.ea());

    let mut m = ComplexMatrix::zeros(4);
    for (i, p) in [ee, ss, aa, gg].into_iter().enumerate() {
        m[(i, i)] = C64::new(p, 0.0);
    }
    for (r, c, z) in [(E, S, es), (E, A, ea), (E, G, eg), (S, A, sa), (S, G, sg), (A, G, ag)] {
        m[(r, c)] = z;
        m[(c, r)] = z.conj();
    }
    debug_assert!(
        (m.trace().re - rho0.density().matrix().trace().re).abs() < 1e-9,
        "two-qubit populations lost trace: {}",
        m.trace().re
    );
    Ok(DressedTwoQubitState(DensityMatrix::from_trusted(m)))
}

/// Einstein coefficients of the qutrit spontaneous emission channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EinsteinCoefficients {
    pub eta1: f64,
    pub eta2: f64,
}

impl EinsteinCoefficients {
    pub fn new(eta1: f64, eta2: f64) -> Result<Self> {
        if !(eta1 >= 0.0 && eta2 >= 0.0 && eta1.is_finite() && eta2.is_finite()) {
            return Err(Error::InvalidParameter(format!("Einstein coefficients must be >= 0, got ({eta1}, {eta2})")));
        }
        Ok(Self { eta1, eta2 })
    }
}

/// Kraus operators `K0, K1, K2` of qutrit spontaneous emission into level 0.
/// `t = f64::INFINITY` gives the fully relaxed channel.
pub fn se_kraus(t: f64, c: &EinsteinCoefficients) -> Result<[ComplexMatrix; 3]> {
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter(format!("time must be >= 0, got {t}")));
    }
    let real = |x: f64| C64::new(x, 0.0);
    let survive = |eta: f64| if eta == 0.0 { 1.0 } else { (-eta * t).exp() };
    let (p1, p2) = (survive(c.eta1), survive(c.eta2));
    let k0 = ComplexMatrix::from_diagonal(&[real(1.0), real(p1.sqrt()), real(p2.sqrt())]);
    let mut k1 = ComplexMatrix::zeros(3);
    k1[(0, 1)] = real((1.0 - p1).sqrt());
    let mut k2 = ComplexMatrix::zeros(3);
    k2[(0, 2)] = real((1.0 - p2).sqrt());
    Ok([k0, k1, k2])
}

/// Largest entry of `|sum_i K_i^dagger K_i - 1|`.
pub fn kraus_completeness_deviation(ks: &[ComplexMatrix]) -> Result<f64> {
    let dim = ks.first().map(ComplexMatrix::dim).ok_or_else(|| Error::InvalidParameter("empty Kraus set".into()))?;
    let mut sum = ComplexMatrix::zeros(dim);
    for k in ks {
        if k.dim() != dim {
            return Err(Error::DimMismatch { expected: dim, found: k.dim() });
        }
        sum = &sum + &(&k.adjoint() * k);
    }
    crate::linalg::max_abs_deviation(&sum, &ComplexMatrix::identity(dim))
}

/// `sum_i K_i rho K_i^dagger`.
pub fn kraus_apply(rho0: &DensityMatrix, ks: &[ComplexMatrix]) -> Result<DensityMatrix> {
    let deviation = kraus_completeness_deviation(ks)?;
    if deviation > 1e-8 {
        return Err(Error::IncompleteKrausSet { deviation });
    }
    check_dim(rho0, ks[0].dim())?;
    let mut out = ComplexMatrix::zeros(rho0.dim());
    for k in ks {
        out = &out + &(&(k * rho0.matrix()) * &k.adjoint());
    }
    Ok(DensityMatrix::from_trusted(out))
}
