//! Obstacle potentials and Casimir forces measured by a local observer at the
//! right edge of the chain.

use rayon::prelude::*;
use std::f64::consts::PI;

use crate::error::{check_range, Error, Result};
use crate::fit::FitResult;
use crate::metric::{build_profile, HoppingProfile, MetricSpec};
use crate::vacuum::{ground_state_energy, CorrelationMatrix};

/// `V(p) = E₀(J_p → γJ_p) − E₀` for every link `p = 1 .. N−1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialScan {
    pub n: usize,
    pub gamma: f64,
    pub values: Vec<f64>,
}

impl PotentialScan {
    /// `V(p)` for `1 <= p <= N−1`.
    pub fn get(&self, p: usize) -> f64 {
        self.values[p - 1]
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma > 0.0 && gamma <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidGamma(gamma))
    }
}

/// Potential energy of an obstacle that weakens one link by `gamma`.
/// One rediagonalization per link, run in parallel.
pub fn potential_scan(spec: &MetricSpec, n: usize, gamma: f64) -> Result<PotentialScan> {
    check_gamma(gamma)?;
    let profile = build_profile(spec, n)?;
    potential_scan_profile(&profile, gamma)
}

pub fn potential_scan_profile(profile: &HoppingProfile, gamma: f64) -> Result<PotentialScan> {
    check_gamma(gamma)?;
    let n = profile.n_sites();
    if gamma == 1.0 {
        return Ok(PotentialScan { n, gamma, values: vec![0.0; n - 1] });
    }
    let e0 = ground_state_energy(profile)?;
    let values = (1..n)
        .into_par_iter()
        .map(|p| Ok(ground_state_energy(&profile.with_scaled_link(p, gamma)?)? - e0))
        .collect::<Result<Vec<_>>>()?;
    Ok(PotentialScan { n, gamma, values })
}

/// First-order (Hellmann–Feynman) estimate `V(p) ≈ 2(1−γ) J_p ⟨c†_p c_{p+1}⟩`.
pub fn hellmann_feynman_estimate(
    profile: &HoppingProfile,
    c: &CorrelationMatrix,
    p: usize,
    gamma: f64,
) -> Result<f64> {
    check_range(p, 1, profile.n_sites() - 1)?;
    Ok(2.0 * (1.0 - gamma) * profile.hopping(p) * c.get(p - 1, p))
}

/// Force felt by the observer at the right boundary of an `N`-site chain.
#[derive(Debug, Clone, PartialEq)]
pub struct ForceRecord {
    pub n: usize,
    pub energy: f64,
    pub energy_shorter: f64,
    /// `(E_N − E_{N−2}) / (J_{N−1} + J_{N−2})`
    pub force: f64,
    pub metric: MetricSpec,
    /// `J(N)`
    pub edge_hopping: f64,
    /// `J'(N) / J(N)`
    pub log_derivative: f64,
}

/// Two-site discrete force `F_N = (E_N − E_{N−2}) / (J_{N−1} + J_{N−2})`.
///
/// The shorter chain keeps the left origin and the hoppings of the `N`-site
/// chain on the common links, so the observer sits at the growing right edge.
/// Differencing over two sites cancels the period-2 parity oscillation.
pub fn casimir_force(spec: &MetricSpec, n: usize) -> Result<ForceRecord> {
    if n < 6 || !n.is_multiple_of(2) {
        return Err(Error::InvalidLength(n));
    }
    let profile = build_profile(spec, n)?;
    let shorter = profile.truncated(n - 2)?;
    let energy = ground_state_energy(&profile)?;
    let energy_shorter = ground_state_energy(&shorter)?;
    let denom = profile.hopping(n - 1) + profile.hopping(n - 2);
    Ok(ForceRecord {
        n,
        energy,
        energy_shorter,
        force: (energy - energy_shorter) / denom,
        metric: *spec,
        edge_hopping: spec.hopping(n as f64, n),
        log_derivative: spec.log_derivative(n as f64, n),
    })
}

/// Forces for many sizes, in input order.
pub fn force_sweep(spec: &MetricSpec, sizes: &[usize]) -> Result<Vec<ForceRecord>> {
    sizes.par_iter().map(|&n| casimir_force(spec, n)).collect()
}

/// Which smooth-hopping prediction to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForceForm {
    /// `−c₀ − (c_B/2) J'/J − cv π/(24N²) + cv π S_N/(12 J N³)`, keeping the
    /// bulk-sum correction.
    Smooth,
    /// `−c₀ − (c_B/2) J'/J + c π v/(24N²)`, valid when `S_N ≈ N J_N`.
    WeakDeformation,
}

/// Predicted `F_N` with the constants of `constants`. For the free Dirac
/// fermion (`c v_F = 2`) the universal terms are `∓π/(12N²)`.
pub fn force_prediction(spec: &MetricSpec, n: usize, constants: &FitResult, form: ForceForm) -> Result<f64> {
    let profile = build_profile(spec, n)?;
    Ok(force_prediction_for(&profile, spec, constants, form))
}

pub(crate) fn force_prediction_for(
    profile: &HoppingProfile,
    spec: &MetricSpec,
    constants: &FitResult,
    form: ForceForm,
) -> f64 {
    let n = profile.n_sites();
    let nf = n as f64;
    let edge = spec.hopping(nf, n);
    let boundary = -0.5 * constants.cb * spec.log_derivative(nf, n);
    let casimir = constants.cvf * PI / (24.0 * nf * nf);
    match form {
        ForceForm::Smooth => {
            -constants.c0 + boundary - casimir + constants.cvf * PI * profile.sum() / (12.0 * edge * nf.powi(3))
        }
        ForceForm::WeakDeformation => -constants.c0 + boundary + casimir,
    }
}

/// Universal net force on an obstacle at link `p`,
/// `(π/12) (1/(N−p)² − 1/p²)`.
pub fn obstacle_net_force(n: usize, p: usize) -> Result<f64> {
    check_range(p, 1, n - 1)?;
    let (left, right) = (p as f64, (n - p) as f64);
    Ok(PI / 12.0 * (1.0 / (right * right) - 1.0 / (left * left)))
}
