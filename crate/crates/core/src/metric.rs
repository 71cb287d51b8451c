//! Metric families and the hopping profiles they induce on an open chain.
//!
//! A static optical metric `ds² = -J²(x) dt² + dx²` is encoded by a smooth
//! hopping function `J(x)`. Link `m` (between sites `m` and `m + 1`) is
//! sampled at `x_m = m` with unit lattice spacing.

use std::fmt;

use crate::error::{check_range, Error, Result};

/// Which family a [`MetricSpec`] belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricKind {
    Minkowski,
    Rindler,
    Sine,
    Rainbow,
    ModulatedSine,
}

impl MetricKind {
    pub fn name(self) -> &'static str {
        match self {
            MetricKind::Minkowski => "minkowski",
            MetricKind::Rindler => "rindler",
            MetricKind::Sine => "sine",
            MetricKind::Rainbow => "rainbow",
            MetricKind::ModulatedSine => "modulated_sine",
        }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for MetricKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minkowski" => Ok(MetricKind::Minkowski),
            "rindler" => Ok(MetricKind::Rindler),
            "sine" => Ok(MetricKind::Sine),
            "rainbow" => Ok(MetricKind::Rainbow),
            "modulated_sine" => Ok(MetricKind::ModulatedSine),
            other => Err(Error::InvalidMetric(format!("unknown metric kind '{other}'"))),
        }
    }
}

/// Symbolic description of a hopping function `J(x)`.
///
/// The rainbow family is centred on the middle of the chain it is realized
/// on, so every evaluation takes the chain length `n` as well.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MetricSpec {
    /// `J(x) = J0`
    Minkowski { j0: f64 },
    /// `J(x) = J0 + a x`
    Rindler { j0: f64, a: f64 },
    /// `J(x) = J0 + A sin(k x)`
    Sine { j0: f64, amplitude: f64, wavenumber: f64 },
    /// `J(x) = J0 exp(-h |x - n/2|)`
    Rainbow { j0: f64, h: f64 },
    /// `J(x) = J0 + A sin(k x²)`
    ModulatedSine { j0: f64, amplitude: f64, wavenumber: f64 },
}

fn check_finite(name: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidMetric(format!("{name} must be finite, got {value}")))
    }
}

fn check_j0(j0: f64) -> Result<()> {
    check_finite("J0", j0)?;
    if j0 > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidMetric(format!("J0 must be positive, got {j0}")))
    }
}

impl MetricSpec {
    pub fn minkowski(j0: f64) -> Result<Self> {
        check_j0(j0)?;
        Ok(MetricSpec::Minkowski { j0 })
    }

    pub fn rindler(j0: f64, a: f64) -> Result<Self> {
        check_j0(j0)?;
        check_finite("a", a)?;
        Ok(MetricSpec::Rindler { j0, a })
    }

    pub fn sine(j0: f64, amplitude: f64, wavenumber: f64) -> Result<Self> {
        check_j0(j0)?;
        check_finite("A", amplitude)?;
        check_finite("k", wavenumber)?;
        Ok(MetricSpec::Sine { j0, amplitude, wavenumber })
    }

    pub fn rainbow(j0: f64, h: f64) -> Result<Self> {
        check_j0(j0)?;
        check_finite("h", h)?;
        if h < 0.0 {
            return Err(Error::InvalidMetric("h must be nonnegative".into()));
        }
        Ok(MetricSpec::Rainbow { j0, h })
    }

    pub fn modulated_sine(j0: f64, amplitude: f64, wavenumber: f64) -> Result<Self> {
        check_j0(j0)?;
        check_finite("A", amplitude)?;
        check_finite("k", wavenumber)?;
        Ok(MetricSpec::ModulatedSine { j0, amplitude, wavenumber })
    }

    pub fn kind(&self) -> MetricKind {
        match self {
            MetricSpec::Minkowski { .. } => MetricKind::Minkowski,
            MetricSpec::Rindler { .. } => MetricKind::Rindler,
            MetricSpec::Sine { .. } => MetricKind::Sine,
            MetricSpec::Rainbow { .. } => MetricKind::Rainbow,
            MetricSpec::ModulatedSine { .. } => MetricKind::ModulatedSine,
        }
    }

    pub fn j0(&self) -> f64 {
        match *self {
            MetricSpec::Minkowski { j0 }
            | MetricSpec::Rindler { j0, .. }
            | MetricSpec::Sine { j0, .. }
            | MetricSpec::Rainbow { j0, .. }
            | MetricSpec::ModulatedSine { j0, .. } => j0,
        }
    }

    /// Hopping function `J(x)` for a chain of `n` sites.
    pub fn hopping(&self, x: f64, n: usize) -> f64 {
        match *self {
            MetricSpec::Minkowski { j0 } => j0,
            MetricSpec::Rindler { j0, a } => j0 + a * x,
            MetricSpec::Sine { j0, amplitude, wavenumber } => j0 + amplitude * (wavenumber * x).sin(),
            MetricSpec::Rainbow { j0, h } => j0 * (-h * (x - 0.5 * n as f64).abs()).exp(),
            MetricSpec::ModulatedSine { j0, amplitude, wavenumber } => {
                j0 + amplitude * (wavenumber * x * x).sin()
            }
        }
    }

    /// Analytic `J'(x) / J(x)`, the only non-trivial Christoffel symbol of
    /// the optical metric.
    ///
    /// The rainbow apex `x = n/2` is not differentiable; the right-sided value
    /// `-h` is returned there, since forces are measured at the right edge.
    pub fn log_derivative(&self, x: f64, n: usize) -> f64 {
        let j = self.hopping(x, n);
        match *self {
            MetricSpec::Minkowski { .. } => 0.0,
            MetricSpec::Rindler { a, .. } => a / j,
            MetricSpec::Sine { amplitude, wavenumber, .. } => {
                amplitude * wavenumber * (wavenumber * x).cos() / j
            }
            MetricSpec::Rainbow { h, .. } => {
                if x >= 0.5 * n as f64 {
                    -h
                } else {
                    h
                }
            }
            MetricSpec::ModulatedSine { amplitude, wavenumber, .. } => {
                2.0 * amplitude * wavenumber * x * (wavenumber * x * x).cos() / j
            }
        }
    }

    /// Position of the Rindler horizon `x_h = -J0 / a`, if there is one.
    pub fn horizon(&self) -> Option<f64> {
        match *self {
            MetricSpec::Rindler { j0, a } if a != 0.0 => Some(-j0 / a),
            _ => None,
        }
    }
}

/// Hopping amplitudes `J_1 .. J_{N-1}` realized on a chain of `N` sites.
#[derive(Debug, Clone, PartialEq)]
pub struct HoppingProfile {
    hoppings: Vec<f64>,
    sum: f64,
    deformed_length: f64,
}

impl HoppingProfile {
    /// Wraps explicit hoppings. The chain has `hoppings.len() + 1` sites,
    /// which must be even, and every hopping must be strictly positive.
    pub fn from_hoppings(hoppings: Vec<f64>) -> Result<Self> {
        let n = hoppings.len() + 1;
        if n < 2 || !n.is_multiple_of(2) {
            return Err(Error::InvalidLength(n));
        }
        if let Some((m, &value)) = hoppings
            .iter()
            .enumerate()
            .find(|(_, &j)| !(j > 0.0 && j.is_finite()))
        {
            return Err(Error::NonPositiveHopping { site: m + 1, value });
        }
        let sum = hoppings.iter().sum();
        let deformed_length = hoppings.iter().map(|j| j.recip()).sum();
        Ok(HoppingProfile { hoppings, sum, deformed_length })
    }

    /// Number of sites `N`.
    pub fn n_sites(&self) -> usize {
        self.hoppings.len() + 1
    }

    /// `J_1 .. J_{N-1}`; index 0 holds `J_1`.
    pub fn hoppings(&self) -> &[f64] {
        &self.hoppings
    }

    /// `J_m` for `1 <= m <= N - 1`.
    pub fn hopping(&self, m: usize) -> f64 {
        self.hoppings[m - 1]
    }

    /// `S_N = Σ J_m`.
    pub fn sum(&self) -> f64 {
        self.sum
    }

    /// `Ñ = Σ 1/J_m`, the chain length in deformed coordinates.
    pub fn deformed_length(&self) -> f64 {
        self.deformed_length
    }

    pub fn first(&self) -> f64 {
        self.hoppings[0]
    }

    pub fn last(&self) -> f64 {
        self.hoppings[self.hoppings.len() - 1]
    }

    pub fn max_hopping(&self) -> f64 {
        self.hoppings.iter().cloned().fold(0.0, f64::max)
    }

    /// The same profile with link `p` multiplied by `factor`.
    pub fn with_scaled_link(&self, p: usize, factor: f64) -> Result<Self> {
        check_range(p, 1, self.hoppings.len())?;
        let mut hoppings = self.hoppings.clone();
        hoppings[p - 1] *= factor;
        HoppingProfile::from_hoppings(hoppings)
    }

    /// The left `n` sites of this chain, keeping the hoppings on the common
    /// links.
    pub fn truncated(&self, n: usize) -> Result<Self> {
        check_range(n, 2, self.n_sites())?;
        HoppingProfile::from_hoppings(self.hoppings[..n - 1].to_vec())
    }

    /// Every hopping multiplied by `lambda`.
    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        HoppingProfile::from_hoppings(self.hoppings.iter().map(|j| j * lambda).collect())
    }
}

/// Realizes `spec` on an open chain of `n` sites, `J_m = J(m)`.
///
/// Positivity is required at every integer position of `[0, n]`; the first
/// offending site is reported otherwise.
pub fn build_profile(spec: &MetricSpec, n: usize) -> Result<HoppingProfile> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::InvalidLength(n));
    }
    for site in 0..=n {
        let value = spec.hopping(site as f64, n);
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::NonPositiveHopping { site, value });
        }
    }
    let hoppings = (1..n).map(|m| spec.hopping(m as f64, n)).collect();
    HoppingProfile::from_hoppings(hoppings)
}

/// Deformed coordinate `x̃(ℓ) = Σ_{p=1}^{ℓ-1} 1/J_p`, for `0 <= ℓ <= N`.
pub fn deformed_coordinate(profile: &HoppingProfile, ell: usize) -> Result<f64> {
    check_range(ell, 0, profile.n_sites())?;
    if ell <= 1 {
        return Ok(0.0);
    }
    Ok(profile.hoppings[..ell - 1].iter().map(|j| j.recip()).sum())
}

/// Deformed UV cutoff `Δx̃(ℓ) = 1/J_ℓ`, for `1 <= ℓ <= N - 1`.
pub fn uv_cutoff(profile: &HoppingProfile, ell: usize) -> Result<f64> {
    check_range(ell, 1, profile.n_sites() - 1)?;
    Ok(profile.hopping(ell).recip())
}

/// `J'(x)/J(x)` for `spec` on a chain of `n` sites.
pub fn log_derivative(spec: &MetricSpec, x: f64, n: usize) -> Result<f64> {
    let j = spec.hopping(x, n);
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(j > 0.0) {
        return Err(Error::InvalidMetric(format!("J({x}) = {j} is not positive")));
    }
    Ok(spec.log_derivative(x, n))
}
