//! Eigendecomposition of real symmetric tridiagonal matrices by implicit-shift
//! QL iterations (the EISPACK `tql2` scheme).

use crate::error::{Error, Result};
use crate::metric::HoppingProfile;

/// Iteration cap for a single eigenvalue.
const MAX_ITERATIONS: usize = 60;

/// Symmetric tridiagonal matrix.
///
/// For a hopping chain this is the single-particle Hamiltonian: the
/// off-diagonal entries are `-J_m`, so the eigenvalues are the single-body
/// energies and the lowest mode is the nodeless bonding orbital.
#[derive(Debug, Clone, PartialEq)]
pub struct HoppingMatrix {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl HoppingMatrix {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.len() < 2 || offdiag.len() + 1 != diag.len() {
            return Err(Error::InvalidLength(diag.len()));
        }
        Ok(HoppingMatrix { diag, offdiag })
    }

    /// Zero-diagonal matrix with off-diagonal entries `-J_m`.
    pub fn from_hoppings(hoppings: &[f64]) -> Result<Self> {
        HoppingMatrix::new(
            vec![0.0; hoppings.len() + 1],
            hoppings.iter().map(|j| -j).collect(),
        )
    }

    pub fn from_profile(profile: &HoppingProfile) -> Self {
        HoppingMatrix::from_hoppings(profile.hoppings()).expect("profiles have at least two sites")
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// `y = T x`
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        let n = self.dim();
        for i in 0..n {
            let mut acc = self.diag[i] * x[i];
            if i > 0 {
                acc += self.offdiag[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                acc += self.offdiag[i] * x[i + 1];
            }
            y[i] = acc;
        }
    }

    /// Largest absolute matrix entry.
    pub fn max_abs(&self) -> f64 {
        self.diag
            .iter()
            .chain(&self.offdiag)
            .fold(0.0, |acc, v| acc.max(v.abs()))
    }
}

/// Eigenvalues in ascending order and the matching orthonormal eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    n: usize,
    eigenvalues: Vec<f64>,
    // column-major: mode k occupies vectors[k * n..(k + 1) * n]
    vectors: Vec<f64>,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Mode `k` (0-based, ascending energy).
    pub fn vector(&self, k: usize) -> &[f64] {
        &self.vectors[k * self.n..(k + 1) * self.n]
    }

    /// `U_{i,k}` with 0-based site `i` and mode `k`.
    pub fn component(&self, i: usize, k: usize) -> f64 {
        self.vectors[k * self.n + i]
    }

    /// Largest `‖T u_k − ε_k u_k‖∞` over all modes.
    pub fn max_residual(&self, t: &HoppingMatrix) -> f64 {
        let mut y = vec![0.0; self.n];
        let mut worst = 0.0f64;
        for k in 0..self.n {
            let u = self.vector(k);
            t.apply(u, &mut y);
            for (yi, ui) in y.iter().zip(u) {
                worst = worst.max((yi - self.eigenvalues[k] * ui).abs());
            }
        }
        worst
    }

    /// Largest entry of `|UᵀU − I|`.
    pub fn max_orthogonality_error(&self) -> f64 {
        use rayon::prelude::*;
        (0..self.n)
            .into_par_iter()
            .map(|a| {
                let ua = self.vector(a);
                (a..self.n)
                    .map(|b| {
                        let dot: f64 = ua.iter().zip(self.vector(b)).map(|(x, y)| x * y).sum();
                        let target = if a == b { 1.0 } else { 0.0 };
                        (dot - target).abs()
                    })
                    .fold(0.0, f64::max)
            })
            .reduce(|| 0.0, f64::max)
    }
}

fn converge_tridiagonal(d: &mut [f64], e: &mut [f64], mut z: Option<&mut [f64]>) -> Result<()> {
    let n = d.len();
    // e[i] couples i and i + 1; e[n - 1] is scratch.
    // Couplings below eps * |T| are dropped; a purely local test stalls on
    // clusters of eigenvalues near zero.
    let norm = d.iter().zip(e.iter()).map(|(a, b)| a.abs() + b.abs()).fold(0.0, f64::max);
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                if e[m].abs() <= f64::EPSILON * norm {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > MAX_ITERATIONS {
                return Err(Error::NoConvergence { index: l, iterations: MAX_ITERATIONS });
            }

            // Wilkinson-type shift from the leading 2x2 block
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                // entries are far from the overflow range; hypot costs ~4x
                r = (f * f + g * g).sqrt();
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;

                if let Some(z) = z.as_deref_mut() {
                    let (left, right) = z.split_at_mut((i + 1) * n);
                    let zi = &mut left[i * n..];
                    let zj = &mut right[..n];
                    for (a, b) in zi.iter_mut().zip(zj.iter_mut()) {
                        let f = *b;
                        *b = s * *a + c * f;
                        *a = c * *a - s * f;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Eigenvalues of a symmetric tridiagonal matrix given by its diagonal and
/// off-diagonal, in ascending order.
pub(crate) fn tridiagonal_eigenvalues(diag: &[f64], offdiag: &[f64]) -> Result<Vec<f64>> {
    let mut d = diag.to_vec();
    let mut e = offdiag.to_vec();
    e.push(0.0);
    converge_tridiagonal(&mut d, &mut e, None)?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Eigenvalues only, ascending. O(N²).
pub fn eigenvalues(t: &HoppingMatrix) -> Result<Vec<f64>> {
    tridiagonal_eigenvalues(&t.diag, &t.offdiag)
}

/// Full eigendecomposition, O(N³).
///
/// Eigenvalues come out ascending. Each eigenvector is normalized with its
/// first significant component (magnitude above `1e-10` of the column's
/// largest) positive, so repeated runs are bit-identical.
pub fn eigendecompose(t: &HoppingMatrix) -> Result<Spectrum> {
    let n = t.dim();
    let mut d = t.diag.clone();
    let mut e = t.offdiag.clone();
    e.push(0.0);
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }
    converge_tridiagonal(&mut d, &mut e, Some(&mut z))?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]).then(a.cmp(&b)));
    let eigenvalues = order.iter().map(|&k| d[k]).collect();
    let mut vectors = Vec::with_capacity(n * n);
    for &k in &order {
        let col = &z[k * n..(k + 1) * n];
        let largest = col.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        let lead = col.iter().find(|v| v.abs() > 1e-10 * largest).copied().unwrap_or(1.0);
        let sign = if lead < 0.0 { -1.0 } else { 1.0 };
        vectors.extend(col.iter().map(|v| sign * v));
    }
    Ok(Spectrum { n, eigenvalues, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn two_sites() {
        let s = eigendecompose(&HoppingMatrix::from_hoppings(&[1.0]).unwrap()).unwrap();
        assert_relative_eq!(s.eigenvalues()[0], -1.0, epsilon = 1e-15);
        assert_relative_eq!(s.eigenvalues()[1], 1.0, epsilon = 1e-15);
        // bonding orbital (1, 1)/√2 is the ground mode
        assert_relative_eq!(s.component(0, 0), 0.5f64.sqrt(), epsilon = 1e-15);
        assert_relative_eq!(s.component(1, 0), 0.5f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn three_sites_closed_form() {
        let (j1, j2) = (0.7, 1.9);
        let w = eigenvalues(&HoppingMatrix::from_hoppings(&[j1, j2]).unwrap()).unwrap();
        let r = (j1 * j1 + j2 * j2).sqrt();
        assert_relative_eq!(w[0], -r, epsilon = 1e-14);
        assert!(w[1].abs() < 1e-14);
        assert_relative_eq!(w[2], r, epsilon = 1e-14);
    }

    #[test]
    fn uniform_chain_matches_cosine_band() {
        for n in [4usize, 10, 101, 400] {
            let t = HoppingMatrix::from_hoppings(&vec![1.0; n - 1]).unwrap();
            let w = eigenvalues(&t).unwrap();
            for (k, wk) in w.iter().enumerate() {
                let exact = -2.0 * ((k + 1) as f64 * PI / (n + 1) as f64).cos();
                assert!((wk - exact).abs() < 1e-12, "n={n} k={k}: {wk} vs {exact}");
            }
        }
    }

    #[test]
    fn eigenvalue_only_path_agrees() {
        let j: Vec<f64> = (1..60).map(|m| 1.0 + 0.4 * (0.3 * m as f64).sin()).collect();
        let t = HoppingMatrix::from_hoppings(&j).unwrap();
        let full = eigendecompose(&t).unwrap();
        let only = eigenvalues(&t).unwrap();
        for (a, b) in full.eigenvalues().iter().zip(&only) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn nonzero_diagonal() {
        // [[2, 1], [1, 2]] has eigenvalues 1 and 3
        let t = HoppingMatrix::new(vec![2.0, 2.0], vec![1.0]).unwrap();
        let s = eigendecompose(&t).unwrap();
        assert_relative_eq!(s.eigenvalues()[0], 1.0, epsilon = 1e-14);
        assert_relative_eq!(s.eigenvalues()[1], 3.0, epsilon = 1e-14);
        assert!(s.max_residual(&t) < 1e-14);
    }

    #[test]
    fn decoupled_blocks() {
        // a zero hopping splits the chain; degenerate pairs must still be resolved
        let t = HoppingMatrix::from_hoppings(&[1.0, 0.0, 1.0]).unwrap();
        let s = eigendecompose(&t).unwrap();
        assert_eq!(s.eigenvalues().len(), 4);
        assert!(s.max_residual(&t) < 1e-14);
        assert!(s.max_orthogonality_error() < 1e-14);
    }

    #[test]
    fn sign_convention_is_deterministic() {
        let j: Vec<f64> = (1..40).map(|m| 1.0 + 0.01 * m as f64).collect();
        let t = HoppingMatrix::from_hoppings(&j).unwrap();
        let a = eigendecompose(&t).unwrap();
        let b = eigendecompose(&t).unwrap();
        assert_eq!(a, b);
        for k in 0..a.dim() {
            let v = a.vector(k);
            let lead = v.iter().find(|x| x.abs() > 1e-10).unwrap();
            assert!(*lead > 0.0);
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(HoppingMatrix::new(vec![0.0], vec![]).is_err());
        assert!(HoppingMatrix::new(vec![0.0; 3], vec![1.0]).is_err());
    }
}
