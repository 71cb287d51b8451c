//! The half-filled Dirac vacuum: correlation matrix, energies and local
//! correlators.

use rayon::prelude::*;
use std::f64::consts::FRAC_2_PI;

use crate::error::{check_range, Error, Result};
use crate::metric::HoppingProfile;
use crate::tridiag::{eigendecompose, eigenvalues, HoppingMatrix, Spectrum};

/// Two-point function `C_mn = ⟨c†_m c_n⟩` of the half-filled ground state.
///
/// Stored row-major; sites are 0-based in [`CorrelationMatrix::get`].
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    n: usize,
    data: Vec<f64>,
}

impl CorrelationMatrix {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, m: usize, n: usize) -> f64 {
        self.data[m * self.n + n]
    }

    pub fn row(&self, m: usize) -> &[f64] {
        &self.data[m * self.n..(m + 1) * self.n]
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Largest entry of `|C² − C|`.
    pub fn max_projector_error(&self) -> f64 {
        let n = self.n;
        (0..n)
            .into_par_iter()
            .map(|i| {
                let ri = self.row(i);
                (0..n)
                    .map(|j| {
                        // C is symmetric, so (C²)_ij is a row-row product
                        let sq: f64 = ri.iter().zip(self.row(j)).map(|(a, b)| a * b).sum();
                        (sq - self.get(i, j)).abs()
                    })
                    .fold(0.0, f64::max)
            })
            .reduce(|| 0.0, f64::max)
    }

    /// Top-left `ell × ell` block, row-major.
    pub fn block(&self, ell: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(ell * ell);
        for i in 0..ell {
            out.extend_from_slice(&self.row(i)[..ell]);
        }
        out
    }
}

/// Builds `C = Σ_{k occupied} u_k u_kᵀ` with the `N/2` lowest modes filled.
pub fn correlation_matrix(spectrum: &Spectrum) -> Result<CorrelationMatrix> {
    let n = spectrum.dim();
    if !n.is_multiple_of(2) {
        return Err(Error::UnsupportedFilling(n));
    }
    let occupied = n / 2;
    let mut data = vec![0.0; n * n];
    data.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
        for k in 0..occupied {
            let u = spectrum.vector(k);
            let ui = u[i];
            for (r, uj) in row.iter_mut().zip(u) {
                *r += ui * uj;
            }
        }
    });
    // symmetrize away rounding asymmetry
    for i in 0..n {
        for j in i + 1..n {
            let avg = 0.5 * (data[i * n + j] + data[j * n + i]);
            data[i * n + j] = avg;
            data[j * n + i] = avg;
        }
    }
    Ok(CorrelationMatrix { n, data })
}

/// Compensated (Neumaier) summation.
pub(crate) fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

fn sum_lowest_half(sorted: &[f64]) -> f64 {
    compensated_sum(sorted[..sorted.len() / 2].iter().copied())
}

/// Vacuum energy `E = Σ_{k occupied} ε_k`.
pub fn vacuum_energy(profile: &HoppingProfile, spectrum: &Spectrum) -> Result<f64> {
    if spectrum.dim() != profile.n_sites() {
        return Err(Error::InvalidLength(spectrum.dim()));
    }
    Ok(sum_lowest_half(spectrum.eigenvalues()))
}

/// Vacuum energy from bond correlators, `E = −2 Σ_p J_p C_{p,p+1}`.
pub fn energy_from_correlations(profile: &HoppingProfile, c: &CorrelationMatrix) -> f64 {
    compensated_sum(
        profile
            .hoppings()
            .iter()
            .enumerate()
            .map(|(p, j)| -2.0 * j * c.get(p, p + 1)),
    )
}

/// Vacuum energy through the eigenvalue-only path. O(N²).
pub fn ground_state_energy(profile: &HoppingProfile) -> Result<f64> {
    let w = eigenvalues(&HoppingMatrix::from_profile(profile))?;
    Ok(sum_lowest_half(&w))
}

/// Everything derived from one full diagonalization.
#[derive(Debug, Clone)]
pub struct Vacuum {
    pub spectrum: Spectrum,
    pub correlations: CorrelationMatrix,
    pub energy: f64,
}

impl Vacuum {
    pub fn solve(profile: &HoppingProfile) -> Result<Self> {
        let spectrum = eigendecompose(&HoppingMatrix::from_profile(profile))?;
        let correlations = correlation_matrix(&spectrum)?;
        let energy = vacuum_energy(profile, &spectrum)?;
        Ok(Vacuum { spectrum, correlations, energy })
    }
}

/// Nearest-neighbour correlators `⟨c†_p c_{p+1}⟩` for `p = 1 .. N−1`.
pub fn local_correlators(c: &CorrelationMatrix) -> Vec<f64> {
    (0..c.dim() - 1).map(|p| c.get(p, p + 1)).collect()
}

/// Two-link moving average `(C_{p,p+1} + C_{p+1,p+2}) / 2` for
/// `p = 1 .. N−2`; removes the period-2 oscillation at `k_F = π/2`.
pub fn smoothed_correlators(c: &CorrelationMatrix) -> Vec<f64> {
    local_correlators(c).windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
}

/// Correlator of link `p` (1-based).
pub fn link_correlator(c: &CorrelationMatrix, p: usize) -> Result<f64> {
    check_range(p, 1, c.dim() - 1)?;
    Ok(c.get(p - 1, p))
}

/// First-order bulk estimate `E ≈ −c₀ S_N` with `c₀ = 2/π`.
pub fn first_order_energy(profile: &HoppingProfile) -> f64 {
    -FRAC_2_PI * profile.sum()
}
