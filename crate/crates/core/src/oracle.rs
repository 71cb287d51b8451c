//! Brute-force many-body reference for short chains.
//!
//! Builds the half-filled particle-number sector of the hopping Hamiltonian in
//! the occupation basis, diagonalizes it densely and reduces the ground state
//! explicitly. Shares no code with the correlation-matrix path, which makes it
//! a cross-check for energies and block entropies.

use nalgebra::{DMatrix, SymmetricEigen};
use std::collections::BTreeMap;

use crate::error::{check_range, Error, Result};
use crate::metric::HoppingProfile;

/// Largest chain accepted by the oracle; the sector has `C(N, N/2)` states.
pub const MAX_SITES: usize = 14;

/// Ground state of the interacting-basis problem; bit `i` of a basis state
/// is the occupation of site `i + 1`.
#[derive(Debug, Clone)]
pub struct ManyBodyGroundState {
    n: usize,
    basis: Vec<u32>,
    amplitudes: Vec<f64>,
    energy: f64,
}

impl ManyBodyGroundState {
    pub fn solve(profile: &HoppingProfile) -> Result<Self> {
        let n = profile.n_sites();
        if n > MAX_SITES {
            return Err(Error::InvalidLength(n));
        }
        let basis: Vec<u32> = (0u32..1 << n).filter(|s| s.count_ones() as usize == n / 2).collect();
        let index: BTreeMap<u32, usize> = basis.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let dim = basis.len();
        let mut h = DMatrix::<f64>::zeros(dim, dim);
        for (col, &state) in basis.iter().enumerate() {
            for (m, &j) in profile.hoppings().iter().enumerate() {
                // c†_m c_{m+1} + h.c. between neighbours carries no string sign
                let pair = (state >> m) & 0b11;
                if pair == 0b01 || pair == 0b10 {
                    let target = state ^ (0b11 << m);
                    h[(index[&target], col)] -= j;
                }
            }
        }
        let eig = SymmetricEigen::new(h);
        let (ground, energy) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, &e)| (i, e))
            .expect("non-empty sector");
        let amplitudes = eig.eigenvectors.column(ground).iter().copied().collect();
        Ok(ManyBodyGroundState { n, basis, amplitudes, energy })
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    /// Entropy of sites `1..=ell` from the explicitly reduced density matrix.
    pub fn block_entropy(&self, ell: usize) -> Result<f64> {
        check_range(ell, 1, self.n - 1)?;
        let dim_a = 1usize << ell;
        let mask = (dim_a - 1) as u32;
        let mut by_rest: BTreeMap<u32, Vec<(usize, f64)>> = BTreeMap::new();
        for (&s, &amp) in self.basis.iter().zip(&self.amplitudes) {
            by_rest.entry(s >> ell).or_default().push(((s & mask) as usize, amp));
        }
        let mut rho = DMatrix::<f64>::zeros(dim_a, dim_a);
        for group in by_rest.values() {
            for &(a, x) in group {
                for &(b, y) in group {
                    rho[(a, b)] += x * y;
                }
            }
        }
        let eig = SymmetricEigen::new(rho);
        Ok(eig
            .eigenvalues
            .iter()
            .filter(|&&p| p > 1e-14)
            .map(|&p| -p * p.ln())
            .sum())
    }
}
