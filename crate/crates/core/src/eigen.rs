//! Dense symmetric eigendecomposition by cyclic Jacobi rotations.
//!
//! Output is sorted by ascending eigenvalue and every eigenvector is sign
//! canonicalized, so identical inputs always produce bitwise identical bases.

use crate::error::{Error, Result};
use crate::graph::UndirectedView;
use crate::matrix::Matrix;

/// Eigenvalues within this distance of zero are clamped to exactly zero.
pub const ZERO_CLAMP: f64 = 1e-9;

/// Entries at or below this magnitude are skipped when fixing signs.
pub const SIGN_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiConfig {
    /// Stop once the off-diagonal Frobenius norm drops to `rel_tol · ‖A‖_F`.
    pub rel_tol: f64,
    pub max_sweeps: usize,
}

impl Default for JacobiConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            max_sweeps: 100,
        }
    }
}

/// Laplacian spectrum: `eigenvalues[k]` belongs to column `k` of `eigenvectors`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenBasis {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Matrix,
}

impl EigenBasis {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn vector(&self, k: usize) -> Vec<f64> {
        self.eigenvectors.column(k)
    }

    /// Largest eigenvalue λ_N.
    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }
}

pub fn spectral_radius(basis: &EigenBasis) -> f64 {
    basis.spectral_radius()
}

/// Eigendecomposition of the Laplacian of `view` with default settings.
pub fn eig_sym(view: &UndirectedView) -> Result<EigenBasis> {
    eig_sym_with(view, &JacobiConfig::default())
}

pub fn eig_sym_with(view: &UndirectedView, config: &JacobiConfig) -> Result<EigenBasis> {
    let mut basis = jacobi(&view.laplacian, config)?;
    for v in basis.eigenvalues.iter_mut() {
        if v.abs() <= ZERO_CLAMP {
            *v = 0.0;
        }
    }
    Ok(basis)
}

/// Sorted, sign-canonical eigendecomposition of a symmetric matrix.
pub fn jacobi(matrix: &Matrix, config: &JacobiConfig) -> Result<EigenBasis> {
    let n = matrix.rows();
    if !matrix.is_symmetric(1e-12) {
        return Err(Error::InconsistentInputs(
            "eigensolver input is not symmetric".into(),
        ));
    }
    let mut a = matrix.clone();
    let mut v = Matrix::identity(n);
    let threshold = config.rel_tol * matrix.frobenius_norm();

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= threshold {
            break;
        }
        if sweeps == config.max_sweeps {
            return Err(Error::ConvergenceFailure {
                sweeps,
                residual: off,
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]).then(i.cmp(&j)));

    let eigenvalues = order.iter().map(|&i| a[(i, i)]).collect();
    let mut eigenvectors = Matrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        let flip = (0..n)
            .map(|r| v[(r, src)])
            .find(|x| x.abs() > SIGN_THRESHOLD)
            .is_some_and(|x| x < 0.0);
        let sign = if flip { -1.0 } else { 1.0 };
        for r in 0..n {
            eigenvectors[(r, col)] = sign * v[(r, src)];
        }
    }
    Ok(EigenBasis {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)] * a[(i, j)];
            }
        }
    }
    sum.sqrt()
}

/// Annihilates `a[(p, q)]` with a plane rotation and accumulates it into `v`.
fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    if apq == 0.0 {
        return;
    }
    let n = a.rows();
    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for k in 0..n {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_digraph;
    use crate::matrix::norm;

    fn basis_of(text: &str) -> EigenBasis {
        eig_sym(&parse_digraph(text).unwrap().undirected_view()).unwrap()
    }

    fn assert_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn single_edge() {
        let b = basis_of("0 1");
        assert_close(&b.eigenvalues, &[0.0, 2.0], 1e-12);
        let r = 0.5f64.sqrt();
        assert_close(&b.vector(0), &[r, r], 1e-12);
        assert_close(&b.vector(1), &[r, -r], 1e-12);
        assert!((b.spectral_radius() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn triangle() {
        let b = basis_of("0 1\n1 2\n2 0");
        assert_close(&b.eigenvalues, &[0.0, 3.0, 3.0], 1e-12);
    }

    #[test]
    fn path() {
        let b = basis_of("0 1\n1 2");
        assert_close(&b.eigenvalues, &[0.0, 1.0, 3.0], 1e-12);
        let s = 6f64.sqrt();
        assert_close(&b.vector(2), &[1.0 / s, -2.0 / s, 1.0 / s], 1e-12);
        assert!((b.spectral_radius() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn single_node() {
        let b = basis_of("n 1");
        assert_eq!(b.eigenvalues, vec![0.0]);
        assert_eq!(b.spectral_radius(), 0.0);
        assert_eq!(b.vector(0), vec![1.0]);
    }

    #[test]
    fn canonical_signs_and_residuals() {
        let text = "0 1 0.3\n1 2 2\n2 3 1\n3 0 0.7\n1 3 1.5\n4 2 0.2\n4 0 1";
        let g = parse_digraph(text).unwrap();
        let view = g.undirected_view();
        let b = eig_sym(&view).unwrap();
        assert!(b.eigenvectors.orthonormality_defect() < 1e-12);
        for k in 0..b.len() {
            let v = b.vector(k);
            let first = v.iter().find(|x| x.abs() > SIGN_THRESHOLD).unwrap();
            assert!(*first > 0.0);
            let lv = view.laplacian.mul_vec(&v);
            let r: Vec<f64> = lv
                .iter()
                .zip(&v)
                .map(|(a, x)| a - b.eigenvalues[k] * x)
                .collect();
            assert!(norm(&r) < 1e-10);
        }
        assert!(b.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(b.eigenvalues[0], 0.0);
    }

    #[test]
    fn deterministic() {
        let text = "0 1\n1 2\n2 3\n3 0\n0 2";
        assert_eq!(basis_of(text), basis_of(text));
    }

    #[test]
    fn iteration_cap_reports_failure() {
        let g = parse_digraph("0 1\n1 2\n2 3\n3 0\n0 2").unwrap();
        let cfg = JacobiConfig {
            rel_tol: 1e-12,
            max_sweeps: 0,
        };
        assert!(matches!(
            eig_sym_with(&g.undirected_view(), &cfg),
            Err(Error::ConvergenceFailure { sweeps: 0, .. })
        ));
    }

    #[test]
    fn rejects_asymmetric_input() {
        let m = Matrix::from_rows(&[[1.0, 2.0], [0.0, 1.0]]);
        assert!(jacobi(&m, &JacobiConfig::default()).is_err());
    }
}
