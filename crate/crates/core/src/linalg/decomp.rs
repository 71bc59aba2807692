//! Decompositions backing the operator calculus. nalgebra supplies the
//! Hermitian eigensolver and the SVD; everything here adapts those to the
//! crate's carrier type and ordering contracts.

use nalgebra::DMatrix;

use super::{ComplexMatrix, C64};
use crate::error::{Error, Result};

fn to_na(m: &ComplexMatrix) -> DMatrix<C64> {
    DMatrix::from_fn(m.dim(), m.dim(), |i, j| m.get(i, j))
}

/// Eigendecomposition of a Hermitian matrix: `M = V diag(eigenvalues) V*`.
#[derive(Debug, Clone)]
pub struct HermEig {
    /// Real eigenvalues in ascending order.
    pub eigenvalues: Vec<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub eigenvectors: ComplexMatrix,
}

impl HermEig {
    /// Eigenvector for eigenvalue index `k` (column `k`).
    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        let n = self.eigenvectors.dim();
        (0..n).map(|i| self.eigenvectors.get(i, k)).collect()
    }

    /// Rebuild `V diag(f(lambda)) V*`; the workhorse for operator functions
    /// (square roots, sign functions).
    pub fn rebuild_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.eigenvectors.dim();
        let d = ComplexMatrix::from_real_diag(
            &self.eigenvalues.iter().map(|&l| f(l)).collect::<Vec<_>>(),
        );
        let v = &self.eigenvectors;
        let vd = v.matmul(&d);
        let mut out = ComplexMatrix::zeros(n);
        // vd * v^* without forming the adjoint
        for i in 0..n {
            for j in 0..n {
                let mut acc = super::ZERO;
                for k in 0..n {
                    acc += vd.get(i, k) * v.get(j, k).conj();
                }
                out.set(i, j, acc);
            }
        }
        out
    }
}

/// Hermitian eigendecomposition with eigenvalues ascending.
///
/// Fails with `NotHermitian` when `||M - M*||` exceeds `tol`.
pub fn herm_eig(m: &ComplexMatrix, tol: f64) -> Result<HermEig> {
    let deviation = op_norm(&(m - &m.adjoint()));
    if deviation > tol {
        return Err(Error::NotHermitian { tol, deviation });
    }
    Ok(herm_eig_unchecked(m))
}

/// Same as [`herm_eig`] but trusts the input; the matrix is symmetrized
/// first, so sub-tolerance asymmetries cannot leak into the output.
pub(crate) fn herm_eig_unchecked(m: &ComplexMatrix) -> HermEig {
    let h = to_na(&m.hermitian_part());
    let se = h.symmetric_eigen();
    let n = se.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    // stable: ties keep the solver's order
    order.sort_by(|&a, &b| se.eigenvalues[a].total_cmp(&se.eigenvalues[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| se.eigenvalues[k]).collect();
    let eigenvectors =
        ComplexMatrix::from_fn(n, |i, j| se.eigenvectors[(i, order[j])]);
    HermEig {
        eigenvalues,
        eigenvectors,
    }
}

/// Eigenvalues of a Hermitian matrix, ascending, without eigenvectors; the
/// input is symmetrized first.
pub fn herm_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let h = to_na(&m.hermitian_part());
    let mut vals: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    vals
}

/// Operator (spectral) norm: the largest singular value.
///
/// Hermitian and anti-Hermitian inputs are detected entrywise and routed
/// through the eigensolver directly; general matrices go through `M*M`.
pub fn op_norm(m: &ComplexMatrix) -> f64 {
    let n = m.dim();
    if n == 0 {
        return 0.0;
    }
    let scale = m.max_abs_entry();
    if scale == 0.0 {
        return 0.0;
    }
    let dispatch_tol = 1e-14 * scale * n as f64;
    if m.hermitian_deviation() <= dispatch_tol {
        return herm_eigenvalues(m)
            .iter()
            .fold(0.0f64, |acc, &l| acc.max(l.abs()));
    }
    let anti = m.scale(super::I); // i*M is Hermitian when M is anti-Hermitian
    if anti.hermitian_deviation() <= dispatch_tol {
        return herm_eigenvalues(&anti)
            .iter()
            .fold(0.0f64, |acc, &l| acc.max(l.abs()));
    }
    let gram = m.adjoint().matmul(m);
    let top = herm_eigenvalues(&gram).last().copied().unwrap_or(0.0);
    top.max(0.0).sqrt()
}

/// Singular value decomposition `M = U diag(sigma) V*`.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: ComplexMatrix,
    /// Singular values, descending.
    pub singular_values: Vec<f64>,
    /// The adjoint factor `V*` (rows are right singular vectors conjugated).
    pub v_adjoint: ComplexMatrix,
}

/// Singular triplets via the Hermitian dilation `[[0, M], [M*, 0]]`: its
/// positive eigenpairs `(sigma, (u; w)/sqrt 2)` are exactly the singular
/// triplets of `M`. This routes the SVD through the Hermitian eigensolver,
/// which stays accurate on the rank-deficient matrices this crate produces.
///
/// Returns `(sigma descending, left vectors, right vectors)`, one triplet per
/// column of `M`. Vectors for singular values at noise level are not
/// individually meaningful (their weight is negligible).
fn dilation_triplets(m: &ComplexMatrix) -> (Vec<f64>, Vec<Vec<C64>>, Vec<Vec<C64>>) {
    let n = m.dim();
    let h = ComplexMatrix::from_fn(2 * n, |i, j| {
        if i < n && j >= n {
            m.get(i, j - n)
        } else if i >= n && j < n {
            m.get(j, i - n).conj()
        } else {
            super::ZERO
        }
    });
    let eig = herm_eig_unchecked(&h);
    let mut sigmas = Vec::with_capacity(n);
    let mut us = Vec::with_capacity(n);
    let mut ws = Vec::with_capacity(n);
    for k in 0..n {
        let index = 2 * n - 1 - k; // eigenvalues ascending: walk down from the top
        sigmas.push(eig.eigenvalues[index].max(0.0));
        let z = eig.eigenvector(index);
        let mut u: Vec<C64> = z[..n].to_vec();
        let mut w: Vec<C64> = z[n..].to_vec();
        for half in [&mut u, &mut w] {
            let norm: f64 = half.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            if norm > 0.0 {
                for c in half.iter_mut() {
                    *c /= norm;
                }
            }
        }
        us.push(u);
        ws.push(w);
    }
    (sigmas, us, ws)
}

/// Extend `kept` orthonormal columns to a full orthonormal basis using the
/// large-eigenvalue eigenvectors of the complementary projector.
fn complete_basis(n: usize, kept: &[Vec<C64>]) -> Vec<Vec<C64>> {
    let mut columns: Vec<Vec<C64>> = kept.to_vec();
    if columns.len() < n {
        let mut projector = ComplexMatrix::identity(n);
        for col in &columns {
            for i in 0..n {
                for j in 0..n {
                    let val = projector.get(i, j) - col[i] * col[j].conj();
                    projector.set(i, j, val);
                }
            }
        }
        let eig = herm_eig_unchecked(&projector);
        for k in 0..n - kept.len() {
            columns.push(eig.eigenvector(n - 1 - k));
        }
    }
    columns
}

/// Full SVD with singular values sorted descending, built from the Hermitian
/// dilation. Vector pairs below the noise floor are replaced by orthonormal
/// completions of the kernel spaces.
pub fn svd(m: &ComplexMatrix) -> Svd {
    let n = m.dim();
    let (singular_values, us, ws) = dilation_triplets(m);
    let sigma_max = singular_values.first().copied().unwrap_or(0.0);
    let reliable = sigma_max * n as f64 * 1e-13;
    let rank = singular_values
        .iter()
        .take_while(|&&s| s > reliable)
        .count();
    let u_cols = complete_basis(n, &us[..rank]);
    let w_cols = complete_basis(n, &ws[..rank]);
    Svd {
        u: ComplexMatrix::from_fn(n, |i, j| u_cols[j][i]),
        singular_values,
        v_adjoint: ComplexMatrix::from_fn(n, |i, j| w_cols[i][j].conj()),
    }
}

/// Polar decomposition `T = V |T|` with `V` the partial isometry supported on
/// the singular directions above `rank_tol * sigma_max`.
///
/// `|T| = (T*T)^{1/2}` is assembled from the full spectrum; `V` keeps only
/// the non-negligible directions, so `V V* V = V` holds and the kernel is
/// exact. Returns `ZeroOperator` when the largest singular value is at most
/// `rank_tol`, which is how a vanishing `T` surfaces to callers.
pub fn polar_partial_isometry(
    t: &ComplexMatrix,
    rank_tol: f64,
) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let n = t.dim();
    let (sigmas, us, ws) = dilation_triplets(t);
    let sigma_max = sigmas.first().copied().unwrap_or(0.0);
    if sigma_max <= rank_tol {
        return Err(Error::ZeroOperator { sigma_max });
    }
    let cutoff = rank_tol * sigma_max;
    let rank = sigmas.iter().take_while(|&&s| s > cutoff).count();
    let mut v = ComplexMatrix::zeros(n);
    for k in 0..rank {
        for i in 0..n {
            let uik = us[k][i];
            for j in 0..n {
                let val = v.get(i, j) + uik * ws[k][j].conj();
                v.set(i, j, val);
            }
        }
    }
    // |T| = sum_k sigma_k w_k w_k^*; noise-level triplets carry no weight
    let mut abs_t = ComplexMatrix::zeros(n);
    for k in 0..n {
        let s = C64::new(sigmas[k], 0.0);
        for i in 0..n {
            let wik = ws[k][i] * s;
            for j in 0..n {
                let val = abs_t.get(i, j) + wik * ws[k][j].conj();
                abs_t.set(i, j, val);
            }
        }
    }
    Ok((v, abs_t.hermitian_part()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{pauli_x, pauli_z};

    #[test]
    fn herm_eig_identity() {
        let eig = herm_eig(&ComplexMatrix::identity(3), 1e-12).unwrap();
        for l in &eig.eigenvalues {
            assert!((l - 1.0).abs() < 1e-14);
        }
        assert!(eig.eigenvectors.is_unitary(1e-12));
    }

    #[test]
    fn herm_eig_diagonal_orders_ascending() {
        let eig = herm_eig(&ComplexMatrix::from_real_diag(&[3.0, -1.0]), 1e-12).unwrap();
        assert!((eig.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn herm_eig_pauli_x() {
        // characteristic polynomial by hand: lambda^2 - 1 = 0
        let eig = herm_eig(&pauli_x(), 1e-12).unwrap();
        assert!((eig.eigenvalues[0] + 1.0).abs() < 1e-12);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-12);
        let recon = eig.rebuild_with(|l| l);
        assert!((&recon - &pauli_x()).max_abs_entry() < 1e-12);
    }

    #[test]
    fn herm_eig_rejects_non_hermitian() {
        let m = ComplexMatrix::from_rows(&[
            vec![(0.0, 0.0), (1.0, 0.0)],
            vec![(0.0, 0.0), (0.0, 0.0)],
        ]);
        assert!(matches!(
            herm_eig(&m, 1e-10),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn op_norm_examples() {
        assert!((op_norm(&ComplexMatrix::identity(4)) - 1.0).abs() < 1e-14);
        // singular values of [[0,2],[0,0]] are {2, 0}
        let m = ComplexMatrix::from_rows(&[
            vec![(0.0, 0.0), (2.0, 0.0)],
            vec![(0.0, 0.0), (0.0, 0.0)],
        ]);
        assert!((op_norm(&m) - 2.0).abs() < 1e-12);
        assert!((op_norm(&pauli_z()) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn polar_of_handworked_rank_one() {
        // T = [[0, 1/2], [0, 0]]: V = [[0,1],[0,0]], |T| = diag(0, 1/2)
        let t = ComplexMatrix::from_rows(&[
            vec![(0.0, 0.0), (0.5, 0.0)],
            vec![(0.0, 0.0), (0.0, 0.0)],
        ]);
        let (v, abs_t) = polar_partial_isometry(&t, 1e-10).unwrap();
        let v_expected = ComplexMatrix::from_rows(&[
            vec![(0.0, 0.0), (1.0, 0.0)],
            vec![(0.0, 0.0), (0.0, 0.0)],
        ]);
        let abs_expected = ComplexMatrix::from_real_diag(&[0.0, 0.5]);
        assert!((&v - &v_expected).max_abs_entry() < 1e-12);
        assert!((&abs_t - &abs_expected).max_abs_entry() < 1e-12);
        assert!((&v.matmul(&abs_t) - &t).max_abs_entry() < 1e-12);
    }

    #[test]
    fn polar_of_unitary_input() {
        let u = ComplexMatrix::from_rows(&[
            vec![(0.0, 0.0), (0.0, -1.0)],
            vec![(0.0, 1.0), (0.0, 0.0)],
        ]);
        let (v, abs_t) = polar_partial_isometry(&u, 1e-10).unwrap();
        assert!((&v - &u).max_abs_entry() < 1e-12);
        assert!((&abs_t - &ComplexMatrix::identity(2)).max_abs_entry() < 1e-12);
    }

    #[test]
    fn polar_of_zero_is_an_error() {
        assert!(matches!(
            polar_partial_isometry(&ComplexMatrix::zeros(3), 1e-10),
            Err(Error::ZeroOperator { .. })
        ));
    }

    #[test]
    fn partial_isometry_identity_holds() {
        let t = ComplexMatrix::from_rows(&[
            vec![(0.2, 0.3), (0.5, 0.0), (0.0, -1.0)],
            vec![(0.0, 0.0), (0.1, 0.0), (0.4, 0.4)],
            vec![(0.9, 0.0), (0.0, 0.2), (0.0, 0.0)],
        ]);
        let (v, abs_t) = polar_partial_isometry(&t, 1e-10).unwrap();
        let vvv = v.matmul(&v.adjoint()).matmul(&v);
        assert!((&vvv - &v).max_abs_entry() < 1e-10);
        assert!((&v.matmul(&abs_t) - &t).max_abs_entry() < 1e-10);
        // |T|^2 = T*T
        let sq = abs_t.matmul(&abs_t);
        assert!((&sq - &t.adjoint().matmul(&t)).max_abs_entry() < 1e-10);
    }

    #[test]
    fn op_norm_is_multiplicative_over_tensor() {
        let a = ComplexMatrix::from_rows(&[
            vec![(0.0, 0.0), (2.0, 0.0)],
            vec![(0.0, 0.0), (0.0, 0.0)],
        ]);
        let b = pauli_x().scale_re(3.0);
        let t = a.tensor(&b);
        assert!((op_norm(&t) - op_norm(&a) * op_norm(&b)).abs() < 1e-10);
    }
}
