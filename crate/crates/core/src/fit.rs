//! Least-squares extraction of the bulk, boundary and universal constants
//! from vacuum-energy sweeps.

use std::f64::consts::{FRAC_2_PI, PI};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::metric::{HoppingProfile, MetricKind, MetricSpec};

/// Bulk energy per link of the uniform chain, `c₀ = 2/π`.
pub const FREE_FERMION_C0: f64 = FRAC_2_PI;
/// Boundary energy of the uniform chain, `c_B = 4/π − 1`.
pub const FREE_FERMION_CB: f64 = 2.0 * FRAC_2_PI - 1.0;
/// `c · v_F` for the Dirac fermion (`c = 1`, `v_F = 2`).
pub const FREE_FERMION_CVF: f64 = 2.0;

/// Which data went into a fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityMode {
    EvenOnly,
    OddOnly,
    Paired,
}

impl ParityMode {
    pub fn name(self) -> &'static str {
        match self {
            ParityMode::EvenOnly => "even_only",
            ParityMode::OddOnly => "odd_only",
            ParityMode::Paired => "paired",
        }
    }

    fn of(sizes: impl Iterator<Item = usize>) -> Self {
        let (mut even, mut odd) = (false, false);
        for n in sizes {
            if n % 2 == 0 {
                even = true;
            } else {
                odd = true;
            }
        }
        match (even, odd) {
            (true, true) => ParityMode::Paired,
            (false, true) => ParityMode::OddOnly,
            _ => ParityMode::EvenOnly,
        }
    }
}

/// Finite-size model fitted to the energies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CardyModel {
    /// Bulk, boundary and `1/L` terms.
    Leading,
    /// Adds a `1/L²` column for the `O(N⁻²)` remainder.
    WithSubleading,
}

impl CardyModel {
    fn n_params(self) -> usize {
        match self {
            CardyModel::Leading => 3,
            CardyModel::WithSubleading => 4,
        }
    }
}

/// Fitted constants of `E_N = −c₀ S − c_B B − c v_F π/(24 L) [+ d/L²]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub c0: f64,
    pub cb: f64,
    /// Product `c · v_F`.
    pub cvf: f64,
    /// Coefficient of the `1/L²` column, when fitted.
    pub subleading: Option<f64>,
    pub residual_rms: f64,
    pub n_points: usize,
    pub parity_mode: ParityMode,
}

impl FitResult {
    /// Exact constants of the uniform free-fermion chain.
    pub fn free_fermion() -> Self {
        FitResult {
            c0: FREE_FERMION_C0,
            cb: FREE_FERMION_CB,
            cvf: FREE_FERMION_CVF,
            subleading: None,
            residual_rms: 0.0,
            n_points: 0,
            parity_mode: ParityMode::EvenOnly,
        }
    }

    /// `key = value` lines, one per field, prefixed with `prefix.`.
    pub fn report(&self, prefix: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{prefix}.c0 = {:.12e}", self.c0);
        let _ = writeln!(out, "{prefix}.cB = {:.12e}", self.cb);
        let _ = writeln!(out, "{prefix}.cvF = {:.12e}", self.cvf);
        if let Some(d) = self.subleading {
            let _ = writeln!(out, "{prefix}.subleading = {d:.12e}");
        }
        let _ = writeln!(out, "{prefix}.residual_rms = {:.12e}", self.residual_rms);
        let _ = writeln!(out, "{prefix}.n_points = {}", self.n_points);
        let _ = writeln!(out, "{prefix}.parity_mode = {}", self.parity_mode.name());
        out
    }
}

/// Ordinary least squares through a column-scaled Householder QR.
/// `rows` holds the design matrix row by row.
pub fn least_squares(rows: &[Vec<f64>], y: &[f64]) -> Result<Vec<f64>> {
    let m = rows.len();
    let p = rows.first().map_or(0, Vec::len);
    if m < p || p == 0 || y.len() != m {
        return Err(Error::FitFailure(format!("{m} observations for {p} parameters")));
    }
    let mut scale = vec![0.0; p];
    for (j, s) in scale.iter_mut().enumerate() {
        *s = rows.iter().map(|r| r[j] * r[j]).sum::<f64>().sqrt();
        if *s == 0.0 {
            return Err(Error::FitFailure(format!("column {j} of the design matrix is zero")));
        }
    }
    // column-major working copy
    let mut a: Vec<Vec<f64>> = (0..p).map(|j| rows.iter().map(|r| r[j] / scale[j]).collect()).collect();
    let mut b = y.to_vec();
    let mut diag = vec![0.0; p];
    for k in 0..p {
        let norm = a[k][k..].iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm <= 1e-12 {
            return Err(Error::FitFailure("design matrix is rank deficient".into()));
        }
        let alpha = if a[k][k] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = a[k][k..].to_vec();
        v[0] -= alpha;
        let vv: f64 = v.iter().map(|x| x * x).sum();
        diag[k] = alpha;
        for col in a.iter_mut().skip(k + 1) {
            let dot: f64 = v.iter().zip(&col[k..]).map(|(x, y)| x * y).sum();
            let f = 2.0 * dot / vv;
            col[k..].iter_mut().zip(&v).for_each(|(c, vi)| *c -= f * vi);
        }
        let dot: f64 = v.iter().zip(&b[k..]).map(|(x, y)| x * y).sum();
        let f = 2.0 * dot / vv;
        b[k..].iter_mut().zip(&v).for_each(|(c, vi)| *c -= f * vi);
    }
    let mut x = vec![0.0; p];
    for k in (0..p).rev() {
        let mut acc = b[k];
        for j in k + 1..p {
            acc -= a[j][k] * x[j];
        }
        x[k] = acc / diag[k];
    }
    Ok(x.iter().zip(&scale).map(|(xi, s)| xi / s).collect())
}

fn rms_residual(rows: &[Vec<f64>], y: &[f64], coef: &[f64]) -> f64 {
    let ss: f64 = rows
        .iter()
        .zip(y)
        .map(|(r, yi)| {
            let fit: f64 = r.iter().zip(coef).map(|(a, c)| a * c).sum();
            (fit - yi).powi(2)
        })
        .sum();
    (ss / y.len() as f64).sqrt()
}

fn fit_cardy_design(
    sizes: &[usize],
    rows: Vec<Vec<f64>>,
    energies: &[f64],
    model: CardyModel,
) -> Result<FitResult> {
    if rows.len() < model.n_params() + 2 {
        return Err(Error::FitFailure(format!(
            "{} points are too few for {} parameters",
            rows.len(),
            model.n_params()
        )));
    }
    let y: Vec<f64> = energies.iter().map(|e| -e).collect();
    let coef = least_squares(&rows, &y)?;
    Ok(FitResult {
        c0: coef[0],
        cb: coef[1],
        cvf: 24.0 * coef[2] / PI,
        subleading: coef.get(3).copied(),
        residual_rms: rms_residual(&rows, &y, &coef),
        n_points: rows.len(),
        parity_mode: ParityMode::of(sizes.iter().copied()),
    })
}

/// Fits `E_N = −c₀(N−1) − c_B − c v_F π/(24N)` to `(N, E_N)` pairs, optionally
/// with an extra `1/N²` column. Needs at least five sizes, each `N >= 40`.
pub fn fit_flat_cardy(data: &[(usize, f64)], model: CardyModel) -> Result<FitResult> {
    if data.len() < 5 {
        return Err(Error::FitFailure(format!("need at least 5 sizes, got {}", data.len())));
    }
    if let Some(&(n, _)) = data.iter().find(|(n, _)| *n < 40) {
        return Err(Error::FitFailure(format!("size N = {n} is below the fitting window (N >= 40)")));
    }
    let rows = data
        .iter()
        .map(|&(n, _)| {
            let nf = n as f64;
            let mut row = vec![nf - 1.0, 1.0, 1.0 / nf];
            if model == CardyModel::WithSubleading {
                row.push(1.0 / (nf * nf));
            }
            row
        })
        .collect();
    let sizes: Vec<usize> = data.iter().map(|d| d.0).collect();
    let energies: Vec<f64> = data.iter().map(|d| d.1).collect();
    fit_cardy_design(&sizes, rows, &energies, model)
}

/// The profile quantities entering the curved Cardy form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CardyPoint {
    pub n: usize,
    pub energy: f64,
    /// `S_N`
    pub hopping_sum: f64,
    /// `(J_1 + J_{N−1}) / 2`
    pub edge_mean: f64,
    /// `Ñ`
    pub deformed_length: f64,
}

impl CardyPoint {
    pub fn from_profile(profile: &HoppingProfile, energy: f64) -> Self {
        CardyPoint {
            n: profile.n_sites(),
            energy,
            hopping_sum: profile.sum(),
            edge_mean: 0.5 * (profile.first() + profile.last()),
            deformed_length: profile.deformed_length(),
        }
    }
}

/// Fits `E_N = −c₀ S_N − (c_B/2)(J_1 + J_{N−1}) − c v_F π/(24 Ñ)` over a
/// sweep of one metric family, optionally with a `1/Ñ²` column.
pub fn fit_curved_cardy(points: &[CardyPoint], model: CardyModel) -> Result<FitResult> {
    if points.len() < 5 {
        return Err(Error::FitFailure(format!("need at least 5 sizes, got {}", points.len())));
    }
    let rows = points
        .iter()
        .map(|pt| {
            let inv = 1.0 / pt.deformed_length;
            let mut row = vec![pt.hopping_sum, pt.edge_mean, inv];
            if model == CardyModel::WithSubleading {
                row.push(inv * inv);
            }
            row
        })
        .collect();
    let sizes: Vec<usize> = points.iter().map(|p| p.n).collect();
    let energies: Vec<f64> = points.iter().map(|p| p.energy).collect();
    fit_cardy_design(&sizes, rows, &energies, model)
}

/// Effective Fermi velocity of a deformed chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FermiVelocity {
    /// `2 (N−1) / Ñ`, twice the harmonic mean hopping.
    pub harmonic: f64,
    /// `2 S_N / (N−1)`, twice the arithmetic mean hopping.
    pub arithmetic: f64,
}

pub fn effective_fermi_velocity(profile: &HoppingProfile) -> FermiVelocity {
    fermi_velocity_of(profile.hoppings())
}

/// [`effective_fermi_velocity`] for a bare list of link hoppings.
pub fn fermi_velocity_of(hoppings: &[f64]) -> FermiVelocity {
    let links = hoppings.len() as f64;
    FermiVelocity {
        harmonic: 2.0 * links / hoppings.iter().map(|j| j.recip()).sum::<f64>(),
        arithmetic: 2.0 * hoppings.iter().sum::<f64>() / links,
    }
}

/// Size at which the boundary force `(c_B/2)|J'/J|` overtakes the universal
/// term `c v_F π/(24N²)`, found by bisection.
///
/// Defined for metrics whose ratio of the two terms grows monotonically with
/// `N` (Minkowski, Rindler, rainbow). Returns [`Error::NoCrossover`] when the
/// boundary term is still smaller at `n_max`.
pub fn crossover_size(spec: &MetricSpec, constants: &FitResult, n_max: usize) -> Result<f64> {
    if matches!(spec.kind(), MetricKind::Sine | MetricKind::ModulatedSine) {
        return Err(Error::InvalidMetric(format!(
            "no monotone crossover for the {} family",
            spec.kind()
        )));
    }
    let excess = |n: f64| {
        // the rainbow centre moves with the chain; evaluate at its right edge
        let size = n.round().max(2.0) as usize;
        let dlog = match spec {
            MetricSpec::Rainbow { h, .. } => -h,
            _ => spec.log_derivative(n, size),
        };
        0.5 * constants.cb * dlog.abs() * n * n - constants.cvf * PI / 24.0
    };
    let hi0 = n_max as f64;
    // negated so that NaN also counts as no crossover
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(excess(hi0) >= 0.0) {
        return Err(Error::NoCrossover(n_max));
    }
    let (mut lo, mut hi) = (1e-6, hi0);
    if excess(lo) >= 0.0 {
        return Ok(lo);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if excess(mid) >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-12 * hi {
            break;
        }
    }
    Ok(hi)
}

/// Pearson correlation coefficient.
pub fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len().min(y.len()) as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx).powi(2);
        syy += (b - my).powi(2);
    }
    sxy / (sxx * syy).sqrt()
}

/// Straight-line fit, returns `(slope, intercept)`.
pub fn linear_regression(x: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    let rows: Vec<Vec<f64>> = x.iter().map(|&xi| vec![xi, 1.0]).collect();
    let c = least_squares(&rows, y)?;
    Ok((c[0], c[1]))
}
