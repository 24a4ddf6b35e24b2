//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! Run: cargo test -p opentomo-core --test acceptance

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use opentomo::baths::{sgad_params, DephasingKernel, OpticalBathSpec, TabulatedKernel};
use opentomo::channels::{
    evolve_qnd_spin_with, evolve_sgad_qubit, evolve_two_qubit_vacuum, kraus_apply, qnd_dephase, se_kraus,
    DressedTwoQubitState, EinsteinCoefficients,
};
use opentomo::linalg::{atomic_coherent_state, max_abs_deviation, random_density_matrix, random_pure_amplitudes};
use opentomo::oracles::{brute_discrete_tomogram, lindblad_rk4_sgad_trajectory, log_linear_slope, rotated_diagonal_tomogram, IntegratorConfig};
use opentomo::parallel::{par_map, Execution};
use opentomo::rotations::{rotation_matrix, two_qubit_rotation};
use opentomo::tomography::{
    acs_qnd_tomogram_with, acs_sgad_tomogram, discrete_wigner, finite_tomogram, optical_center, optical_tomogram,
    optical_tomogram_curve, qutrit_se_tomogram, spin1_tomogram, spin_tomogram, two_qubit_tomogram,
    FinitePhaseIndices, TomogramVector, DEFAULT_CURVE_POINTS,
};
use opentomo::verify::{fig_optical_bath, fig_qnd_bath, fig_sgad_params, fig_two_qubit_geometry, optical_peak, random_angles, verify_all};
use opentomo::{DensityMatrix, EulerAngles, HalfInt, Result, C64};

type Criterion = fn() -> Result<Outcome>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn acs(alpha: f64, beta: f64) -> DensityMatrix {
    atomic_coherent_state(HalfInt::HALF, alpha, beta).unwrap().density_matrix()
}

fn vector_dev(w: &TomogramVector) -> f64 {
    w.normalization_deviation().max(w.range_violation())
}

fn random_optical(r: &mut ChaCha8Rng) -> (OpticalBathSpec, C64, f64, f64) {
    let n = r.gen_range(0.0..10.0);
    let bath = OpticalBathSpec { n_thermal: n, squeezing: r.gen_range(0.0..=n), dissipation: r.gen_range(0.05..2.0) };
    let beta = C64::new(r.gen_range(-4.0..4.0), r.gen_range(-4.0..4.0));
    (bath, beta, r.gen_range(0.0..PI), r.gen_range(0.0..20.0))
}

const PER_SCENARIO: usize = 2000;

fn normalization_suite() -> Result<Outcome> {
    let start = Instant::now();
    // Ohmic kernels tabulated once per temperature; sample times sit on nodes.
    let grid: Vec<f64> = (0..=300).map(|k| 0.05 * f64::from(k)).collect();
    let temperatures = [0.0, 1.0, 2.0];
    let kernels = par_map(&temperatures, Execution::Parallel, |&temp| TabulatedKernel::sample(&fig_qnd_bath(temp), grid.clone()))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut r = ChaCha8Rng::seed_from_u64(1);
    let (mut points, mut vec_dev, mut curve_dev) = (0usize, 0.0f64, 0.0f64);

    for k in 0..PER_SCENARIO {
        let kernel = &kernels[k % kernels.len()];
        let t = grid[r.gen_range(0..grid.len())];
        let a = random_angles(&mut r);
        let w = if k % 2 == 0 {
            acs_qnd_tomogram_with(r.gen_range(0.0..PI), r.gen_range(0.0..2.0 * PI), &a, t, 1.0, kernel.gamma(t)?)
        } else {
            let j = HalfInt::from_twice(r.gen_range(1..=6));
            let rho = evolve_qnd_spin_with(&random_density_matrix(j.dim(), &mut r), j, t, 1.0, kernel)?;
            spin_tomogram(&rho, j, &a)?
        };
        vec_dev = vec_dev.max(vector_dev(&w));
        points += 1;
    }
    for _ in 0..PER_SCENARIO {
        let p = sgad_params(r.gen_range(0.0..20.0), r.gen_range(0.0..3.0), r.gen_range(0.0..2.0 * PI), r.gen_range(0.0..2.0), r.gen_range(0.1..3.0));
        let w = acs_sgad_tomogram(r.gen_range(0.0..PI), r.gen_range(0.0..2.0 * PI), &random_angles(&mut r), r.gen_range(0.0..50.0), &p)?;
        vec_dev = vec_dev.max(vector_dev(&w));
        points += 1;
    }
    for k in 0..PER_SCENARIO {
        let start_state = if k % 2 == 0 {
            DressedTwoQubitState::initial_e1g2()
        } else {
            DressedTwoQubitState::new(random_density_matrix(4, &mut r))?
        };
        let g = fig_two_qubit_geometry(r.gen_range(0.01..5.0));
        let rho = evolve_two_qubit_vacuum(&start_state, r.gen_range(0.0..60.0), &g)?;
        let w = two_qubit_tomogram(&rho, &random_angles(&mut r), &random_angles(&mut r));
        vec_dev = vec_dev.max(vector_dev(&w));
        points += 1;
    }
    for _ in 0..PER_SCENARIO {
        let v = random_pure_amplitudes(3, &mut r);
        vec_dev = vec_dev.max(vector_dev(&spin1_tomogram(v[0], v[1], v[2], &random_angles(&mut r))?));
        points += 1;
    }
    for k in 0..PER_SCENARIO {
        let c = EinsteinCoefficients::new(r.gen_range(0.0..10.0), r.gen_range(0.0..10.0))?;
        let t = r.gen_range(0.0..20.0);
        let w = if k % 2 == 0 {
            qutrit_se_tomogram(t, &c)?
        } else {
            let rho = kraus_apply(&random_density_matrix(3, &mut r), &se_kraus(t, &c)?)?;
            let idx = FinitePhaseIndices::new(r.gen_range(0..3), r.gen_range(1..3), 3)?;
            finite_tomogram(&rho, &idx)?
        };
        vec_dev = vec_dev.max(vector_dev(&w));
        points += 1;
    }
    for _ in 0..PER_SCENARIO {
        let (bath, beta, theta, t) = random_optical(&mut r);
        let curve = optical_tomogram_curve(theta, t, beta, &bath, DEFAULT_CURVE_POINTS)?;
        curve_dev = curve_dev.max((curve.trapezoid() - 1.0).abs());
        points += 1;
    }
    let elapsed = start.elapsed();
    let pass = points >= 10_000 && vec_dev <= 1e-10 && curve_dev <= 1e-8 && elapsed < Duration::from_secs(30);
    Ok(outcome(
        pass,
        format!("{points} points, max |sum - 1| = {vec_dev:.2e} (tol 1e-10), max |integral - 1| = {curve_dev:.2e} (tol 1e-8), {:.2} s (limit 30 s)", elapsed.as_secs_f64()),
    ))
}

fn sgad_oracle() -> Result<Outcome> {
    let start = Instant::now();
    let rho0 = acs(FRAC_PI_2, FRAC_PI_3);
    let times: Vec<f64> = (1..=10).map(|k| 0.5 * f64::from(k)).collect();
    let cfg = IntegratorConfig::new(1e-4)?;
    let mut dev: f64 = 0.0;
    for (temperature, squeezing) in [(1.0, 0.0), (10.0, 0.0), (10.0, 1.0)] {
        let p = fig_sgad_params(temperature, squeezing);
        let numeric = lindblad_rk4_sgad_trajectory(&rho0, &times, &p, &cfg)?;
        for (t, rk) in times.iter().zip(&numeric) {
            dev = dev.max(max_abs_deviation(rk.matrix(), evolve_sgad_qubit(&rho0, *t, &p)?.matrix())?);
        }
    }
    let elapsed = start.elapsed();
    Ok(outcome(
        dev < 1e-6 && elapsed < Duration::from_secs(10),
        format!("max entrywise deviation {dev:.2e} (tol 1e-6) at dt = 1e-4, {:.2} s (limit 10 s)", elapsed.as_secs_f64()),
    ))
}

fn zero_coupling() -> Result<Outcome> {
    let mut dev: f64 = 0.0;
    let mut count = 0;
    for i in 0..10 {
        for j in 0..10 {
            for k in 0..10 {
                let t = 10.0 * f64::from(i) / 9.0;
                let a = EulerAngles::new(0.3, PI * f64::from(j) / 9.0, 2.0 * PI * f64::from(k) / 9.0)?;
                let p = sgad_params(f64::from(k), 0.2 * f64::from(j), 0.7 * f64::from(i), 0.0, 1.0);
                let alpha = PI * f64::from(k) / 9.0;
                let sgad = acs_sgad_tomogram(alpha, FRAC_PI_3, &a, t, &p)?;
                dev = dev.max(sgad.max_deviation(&acs_qnd_tomogram_with(alpha, FRAC_PI_3, &a, t, 1.0, 0.0)));
                count += 1;
            }
        }
    }
    Ok(outcome(dev <= 1e-12, format!("{count} grid points, max deviation {dev:.2e} (tol 1e-12)")))
}

fn closed_form_vs_rotation() -> Result<Outcome> {
    const TRIALS: usize = 1000;
    let mut r = ChaCha8Rng::seed_from_u64(4);
    let mut devs = [0.0f64; 4];
    for _ in 0..TRIALS {
        let (alpha, beta) = (r.gen_range(0.0..PI), r.gen_range(0.0..2.0 * PI));
        let a = random_angles(&mut r);
        let t = r.gen_range(0.0..15.0);
        let u = rotation_matrix(HalfInt::HALF, &a);

        let (gamma_t, eta_t) = (r.gen_range(0.0..3.0), r.gen_range(-1.0..0.0));
        let evolved = qnd_dephase(&acs(alpha, beta), HalfInt::HALF, t, 1.0, gamma_t, eta_t)?;
        devs[0] = devs[0].max(acs_qnd_tomogram_with(alpha, beta, &a, t, 1.0, gamma_t).max_deviation(&rotated_diagonal_tomogram(&evolved, &u)?));

        let p = sgad_params(r.gen_range(0.0..10.0), r.gen_range(0.0..2.0), r.gen_range(0.0..2.0 * PI), r.gen_range(0.0..1.0), 1.0);
        let evolved = evolve_sgad_qubit(&acs(alpha, beta), t, &p)?;
        devs[1] = devs[1].max(acs_sgad_tomogram(alpha, beta, &a, t, &p)?.max_deviation(&rotated_diagonal_tomogram(&evolved, &u)?));

        let v = random_pure_amplitudes(3, &mut r);
        let brute = rotated_diagonal_tomogram(&DensityMatrix::pure(&v)?, &rotation_matrix(HalfInt::ONE, &a))?;
        devs[2] = devs[2].max(spin1_tomogram(v[0], v[1], v[2], &a)?.max_deviation(&brute));

        let a2 = random_angles(&mut r);
        let start = DressedTwoQubitState::new(random_density_matrix(4, &mut r))?;
        let rho = evolve_two_qubit_vacuum(&start, t, &fig_two_qubit_geometry(r.gen_range(0.01..5.0)))?;
        let brute = rotated_diagonal_tomogram(&rho.to_bare(), &two_qubit_rotation(&a, &a2))?;
        devs[3] = devs[3].max(two_qubit_tomogram(&rho, &a, &a2).max_deviation(&brute));
    }
    Ok(outcome(
        devs.iter().all(|d| *d <= 1e-10),
        format!(
            "{TRIALS} trials each, max deviation qnd {:.2e}, sgad {:.2e}, spin1 {:.2e}, two-qubit {:.2e} (tol 1e-10)",
            devs[0], devs[1], devs[2], devs[3]
        ),
    ))
}

fn spin1_special_case() -> Result<Outcome> {
    let (one, zero) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0));
    let mut dev: f64 = 0.0;
    for k in 0..100 {
        let b = PI * f64::from(k) / 99.0;
        let w = spin1_tomogram(one, zero, zero, &EulerAngles::new(1.1, b, 0.4)?)?;
        let want = [(1.0 + b.cos()).powi(2) / 4.0, b.sin().powi(2) / 2.0, (1.0 - b.cos()).powi(2) / 4.0];
        for (p, q) in w.probs.iter().zip(want) {
            dev = dev.max((p - q).abs());
        }
    }
    Ok(outcome(dev <= 1e-14, format!("100 beta values, max deviation {dev:.2e} (tol 1e-14)")))
}

fn qutrit_limits() -> Result<Outcome> {
    let c = EinsteinCoefficients::new(2.0, 4.0)?;
    let w0 = qutrit_se_tomogram(0.0, &c)?;
    let exact = w0.probs == [5.0 / 6.0, 1.0 / 12.0, 1.0 / 12.0];
    // first time with exp(-eta1 t / 2) < 1e-6, then later times
    let t_star = 2.0 * 1e6f64.ln() / c.eta1;
    let mut dev: f64 = 0.0;
    for k in 0..=200 {
        let t = t_star * (1.0 + 1e-12) + 0.25 * f64::from(k);
        for p in qutrit_se_tomogram(t, &c)?.probs {
            dev = dev.max((p - 1.0 / 3.0).abs());
        }
    }
    Ok(outcome(
        exact && dev <= 1e-6,
        format!("w(0) = {:?} (exact: {exact}), max |w - 1/3| for t >= {t_star:.4} is {dev:.2e} (tol 1e-6)", w0.probs),
    ))
}

fn sample_variance(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)
}

fn two_qubit_spacing() -> Result<Outcome> {
    let a1 = EulerAngles::new(0.0, FRAC_PI_3, FRAC_PI_3)?;
    let a2 = EulerAngles::new(0.0, FRAC_PI_4, FRAC_PI_4)?;
    let times: Vec<f64> = (0..300).map(|k| 30.0 * f64::from(k) / 299.0).collect();
    let variance = |r12: f64| -> Result<f64> {
        let g = fig_two_qubit_geometry(r12);
        let w1 = times
            .iter()
            .map(|&t| Ok(two_qubit_tomogram(&evolve_two_qubit_vacuum(&DressedTwoQubitState::initial_e1g2(), t, &g)?, &a1, &a2).probs[0]))
            .collect::<Result<Vec<_>>>()?;
        Ok(sample_variance(&w1))
    };
    let (near, far) = (variance(0.05)?, variance(2.0)?);
    Ok(outcome(near > far, format!("var(w1) at r12 = 0.05 is {near:.4e}, at r12 = 2.0 is {far:.4e}")))
}

fn alpha_independence() -> Result<Outcome> {
    let mut r = ChaCha8Rng::seed_from_u64(8);
    let mut dev: f64 = 0.0;
    let shifted = |a: &EulerAngles, r: &mut ChaCha8Rng| EulerAngles { alpha: r.gen_range(0.0..2.0 * PI), ..*a };
    for _ in 0..500 {
        let a = random_angles(&mut r);
        let b = shifted(&a, &mut r);
        for j2 in 1..=6 {
            let j = HalfInt::from_twice(j2);
            let rho = random_density_matrix(j.dim(), &mut r);
            dev = dev.max(spin_tomogram(&rho, j, &a)?.max_deviation(&spin_tomogram(&rho, j, &b)?));
        }
        let (alpha, beta, t) = (r.gen_range(0.0..PI), r.gen_range(0.0..2.0 * PI), r.gen_range(0.0..10.0));
        dev = dev.max(acs_qnd_tomogram_with(alpha, beta, &a, t, 1.0, 0.3).max_deviation(&acs_qnd_tomogram_with(alpha, beta, &b, t, 1.0, 0.3)));
        let p = sgad_params(2.0, 0.5, 1.0, 0.25, 1.0);
        dev = dev.max(acs_sgad_tomogram(alpha, beta, &a, t, &p)?.max_deviation(&acs_sgad_tomogram(alpha, beta, &b, t, &p)?));
        let v = random_pure_amplitudes(3, &mut r);
        dev = dev.max(spin1_tomogram(v[0], v[1], v[2], &a)?.max_deviation(&spin1_tomogram(v[0], v[1], v[2], &b)?));
        let other = random_angles(&mut r);
        let other_shifted = shifted(&other, &mut r);
        let rho = DressedTwoQubitState::new(random_density_matrix(4, &mut r))?;
        dev = dev.max(two_qubit_tomogram(&rho, &a, &other).max_deviation(&two_qubit_tomogram(&rho, &b, &other_shifted)));
    }
    Ok(outcome(dev <= 1e-14, format!("max deviation under alpha shifts {dev:.2e} (tol 1e-14)")))
}

fn optical_limits() -> Result<Outcome> {
    let bath = fig_optical_bath();
    let beta = C64::new(2.0, 0.7);
    let mut start_dev: f64 = 0.0;
    for k in 0..=20 {
        let theta = PI * f64::from(k) / 20.0;
        let curve = optical_tomogram_curve(theta, 0.0, beta, &bath, DEFAULT_CURVE_POINTS)?;
        let center = (beta * C64::from_polar(1.0, theta)).re;
        for (x, w) in curve.xs.iter().zip(&curve.density) {
            start_dev = start_dev.max((w - (2.0 / PI).sqrt() * (-2.0 * (x - center).powi(2)).exp()).abs());
        }
    }
    let stationary = optical_tomogram(0.0, FRAC_PI_3, f64::INFINITY, C64::new(2.0, 0.0), &bath)?;
    let stationary_dev = (stationary - (2.0 / PI).sqrt() / 12f64.sqrt()).abs();

    let times: Vec<f64> = (0..=20).map(|k| 0.2 * f64::from(k)).collect();
    let peaks = times.iter().map(|&t| optical_peak(FRAC_PI_3, t, C64::new(2.0, 0.0), &bath)).collect::<Result<Vec<_>>>()?;
    let slope = log_linear_slope(&times, &peaks)?;
    let slope_dev = (slope + bath.dissipation).abs();
    // the numerically located peaks also sit on the closed-form centre
    let center_dev = times
        .iter()
        .zip(&peaks)
        .map(|(&t, p)| (p - optical_center(FRAC_PI_3, t, C64::new(2.0, 0.0), &bath)).abs())
        .fold(0.0, f64::max);
    Ok(outcome(
        start_dev <= 1e-12 && stationary_dev <= 1e-12 && slope_dev <= 1e-6,
        format!(
            "t = 0 Gaussian deviation {start_dev:.2e}, stationary value deviation {stationary_dev:.2e} (tol 1e-12), peak slope {slope:.9} vs -k = {} (|diff| {slope_dev:.2e}, tol 1e-6, peak vs centre {center_dev:.1e})",
            -bath.dissipation
        ),
    ))
}

fn discrete_structure() -> Result<Outcome> {
    let mut r = ChaCha8Rng::seed_from_u64(10);
    let (mut total_dev, mut imag, mut brute_dev) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..1000 {
        let rho = random_density_matrix(3, &mut r);
        let w = discrete_wigner(&rho)?;
        total_dev = total_dev.max((w.total() - 1.0).abs());
        imag = imag.max(w.max_imag_residue);
        for (t, q) in [(0, 1), (1, 0), (1, 1), (2, 1)] {
            let idx = FinitePhaseIndices::new(t, q, 3)?;
            brute_dev = brute_dev.max(brute_discrete_tomogram(&rho, &idx)?.max_deviation(&finite_tomogram(&rho, &idx)?));
        }
    }
    Ok(outcome(
        total_dev <= 1e-12 && imag <= 1e-10 && brute_dev <= 1e-12,
        format!("1000 qutrits: |sum W - 1| {total_dev:.2e} (tol 1e-12), max |Im W| {imag:.2e} (tol 1e-10), brute vs pipeline {brute_dev:.2e} (tol 1e-12)"),
    ))
}

fn verify_everything() -> Result<Outcome> {
    let start = Instant::now();
    let report = verify_all();
    let elapsed = start.elapsed();
    let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect();
    Ok(outcome(
        failed.is_empty() && elapsed < Duration::from_secs(120),
        format!("{} checks, failed {failed:?}, {:.2} s (limit 120 s)", report.checks.len(), elapsed.as_secs_f64()),
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 11] = [
        ("normalization suite", normalization_suite),
        ("SGAD analytic vs RK4", sgad_oracle),
        ("SGAD zero coupling equals dephasing-free QND", zero_coupling),
        ("closed forms vs rotated diagonal", closed_form_vs_rotation),
        ("spin-1 top-state special case", spin1_special_case),
        ("qutrit limits", qutrit_limits),
        ("two-qubit oscillations grow at small spacing", two_qubit_spacing),
        ("alpha independence", alpha_independence),
        ("optical limits and peak decay", optical_limits),
        ("discrete Wigner structure", discrete_structure),
        ("verify all", verify_everything),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let result = run().unwrap_or_else(|e| outcome(false, format!("error: {e}")));
        if !result.pass {
            failures += 1;
        }
        println!("[{}] {:>2} {name}: {}", if result.pass { "PASS" } else { "FAIL" }, i + 1, result.detail);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
