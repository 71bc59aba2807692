//! Two-mode Gaussian reduction of the chain vacuum: pick one smeared mode
//! per wedge, assemble the 4x4 covariance over `(x_L, p_L, x_R, p_R)`,
//! reduce it to standard form by local squeezing, and fit an effective
//! two-mode squeezing parameter.
//!
//! Covariance convention: `sigma_ij = <{xi_i, xi_j}>` (twice the symmetrized
//! moment), so the single-mode vacuum is the identity and the uncertainty
//! relation reads `sigma + i Omega >= 0`.

use crate::error::{Error, Result};
use crate::linalg::{herm_eigenvalues, ComplexMatrix, C64};

use super::{quadratic_form, vacuum_covariance, LatticeModel, SmearingFunction, WedgeLabel};

/// Standard form `diag blocks A = alpha 1, B = beta 1, C = diag(c+, c-)` of a
/// two-mode covariance after local symplectic balancing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandardForm {
    pub alpha: f64,
    pub beta: f64,
    pub c_plus: f64,
    pub c_minus: f64,
}

/// Extracted two-mode Gaussian data for a wedge pair.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianReduction {
    /// Covariance over `(x_L, p_L, x_R, p_R)`.
    pub covariance: [[f64; 4]; 4],
    pub standard_form: StandardForm,
    /// Effective squeezing from `r = ln((alpha + c+)/(alpha - c+)) / 4`;
    /// exact for pure two-mode squeezed states where `alpha = cosh 2r` and
    /// `c+ = sinh 2r`, a fit otherwise.
    pub squeeze_fit: f64,
}

/// Minimum eigenvalue of the Hermitian matrix `sigma + i Omega`; negative
/// beyond tolerance means the claimed covariance is unphysical.
pub(crate) fn uncertainty_min_eigenvalue(covariance: &[[f64; 4]; 4]) -> f64 {
    let omega: [[f64; 4]; 4] = [
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ];
    let m = ComplexMatrix::from_fn(4, |i, j| C64::new(covariance[i][j], omega[i][j]));
    herm_eigenvalues(&m).first().copied().unwrap_or(0.0)
}

/// Build the smeared canonical pair per wedge and reduce to two-mode data.
///
/// The mode operators are `x = phi(f)`, `p = pi(f)` with the same unit-norm
/// `f`, so each pair is canonical and cross-wedge pairs commute (disjoint
/// supports). Vacuum phi-pi cross correlations vanish, which keeps the
/// covariance block diagonal in the x and p sectors.
pub fn reduce_two_modes(
    model: &LatticeModel,
    f_left: &SmearingFunction,
    f_right: &SmearingFunction,
) -> Result<GaussianReduction> {
    if f_left.support().label() != WedgeLabel::Left {
        return Err(Error::SupportViolation {
            reason: "first smearing must live in the left wedge".into(),
        });
    }
    if f_right.support().label() != WedgeLabel::Right {
        return Err(Error::SupportViolation {
            reason: "second smearing must live in the right wedge".into(),
        });
    }
    if !f_left.support().is_disjoint_from(f_right.support()) {
        return Err(Error::SupportViolation {
            reason: "wedges overlap".into(),
        });
    }
    let cov = vacuum_covariance(model);
    let fl = f_left.coefficients();
    let fr = f_right.coefficients();
    let ax = 2.0 * quadratic_form(cov.g_phi(), fl, fl);
    let ap = 2.0 * quadratic_form(cov.g_pi(), fl, fl);
    let bx = 2.0 * quadratic_form(cov.g_phi(), fr, fr);
    let bp = 2.0 * quadratic_form(cov.g_pi(), fr, fr);
    let cx = 2.0 * quadratic_form(cov.g_phi(), fl, fr);
    let cp = 2.0 * quadratic_form(cov.g_pi(), fl, fr);

    let covariance = [
        [ax, 0.0, cx, 0.0],
        [0.0, ap, 0.0, cp],
        [cx, 0.0, bx, 0.0],
        [0.0, cp, 0.0, bp],
    ];
    let min_eigenvalue = uncertainty_min_eigenvalue(&covariance);
    if min_eigenvalue < -1e-9 {
        return Err(Error::UncertaintyViolation { min_eigenvalue });
    }

    // local squeezing x -> s x, p -> p/s balances each diagonal block
    let s_left = (ap / ax).powf(0.25);
    let s_right = (bp / bx).powf(0.25);
    let alpha = (ax * ap).sqrt();
    let beta = (bx * bp).sqrt();
    let mut c_plus = cx * s_left * s_right;
    let mut c_minus = cp / (s_left * s_right);
    if c_plus < 0.0 {
        // flip the sign of the right mode; a local rotation by pi
        c_plus = -c_plus;
        c_minus = -c_minus;
    }
    let standard_form = StandardForm {
        alpha,
        beta,
        c_plus,
        c_minus,
    };

    let denominator = alpha - c_plus;
    if denominator <= 0.0 {
        return Err(Error::UncertaintyViolation { min_eigenvalue });
    }
    let squeeze_fit = 0.25 * ((alpha + c_plus) / denominator).ln();

    Ok(GaussianReduction {
        covariance,
        standard_form,
        squeeze_fit,
    })
}

impl GaussianReduction {
    /// `(det A, det B, det C, det sigma)`: the local symplectic invariants of
    /// the covariance.
    pub fn invariants(&self) -> (f64, f64, f64, f64) {
        let c = &self.covariance;
        let det_a = c[0][0] * c[1][1] - c[0][1] * c[1][0];
        let det_b = c[2][2] * c[3][3] - c[2][3] * c[3][2];
        let det_c = c[0][2] * c[1][3] - c[0][3] * c[1][2];
        (det_a, det_b, det_c, det4(c))
    }

    /// Same invariants computed from the standard form; equal to
    /// [`Self::invariants`] up to rounding because the reduction is local
    /// symplectic.
    pub fn standard_form_invariants(&self) -> (f64, f64, f64, f64) {
        let s = &self.standard_form;
        let sigma = [
            [s.alpha, 0.0, s.c_plus, 0.0],
            [0.0, s.alpha, 0.0, s.c_minus],
            [s.c_plus, 0.0, s.beta, 0.0],
            [0.0, s.c_minus, 0.0, s.beta],
        ];
        let det_a = s.alpha * s.alpha;
        let det_b = s.beta * s.beta;
        let det_c = s.c_plus * s.c_minus;
        (det_a, det_b, det_c, det4(&sigma))
    }
}

fn det4(m: &[[f64; 4]; 4]) -> f64 {
    let mut a = *m;
    let mut det = 1.0;
    for col in 0..4 {
        let pivot_row = (col..4)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[pivot_row][col] == 0.0 {
            return 0.0;
        }
        if pivot_row != col {
            a.swap(pivot_row, col);
            det = -det;
        }
        det *= a[col][col];
        for row in col + 1..4 {
            let factor = a[row][col] / a[col][col];
            for k in col..4 {
                a[row][k] -= factor * a[col][k];
            }
        }
    }
    det
}
