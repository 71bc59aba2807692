//! Brute-force reference maximizer for qubit pairs, independent of the
//! see-saw path: dichotomic observables are scanned on a dense planar angle
//! grid. Used as a cross-check oracle in tests and reports.

use crate::algebra::{BipartiteSplit, DensityState};
use crate::error::{Error, Result};
use crate::linalg::{pauli_x, pauli_z};

/// Maximum CHSH value of a two-qubit state over observables of the form
/// `cos(theta) z + sin(theta) x`.
///
/// The two B-side angles run over a dense grid with `step_deg` spacing; for
/// each pair the two A-side angles are maximized exactly (the objective is
/// linear in each unit vector `(cos a, sin a)`, so the inner maximum is a
/// Euclidean norm). For states with real matrix entries the optimum lies in
/// this plane, so the returned value is the true planar supremum up to the
/// grid resolution.
pub fn planar_grid_chsh_max(state: &DensityState, step_deg: f64) -> Result<f64> {
    let split = BipartiteSplit::new(2, 2).expect("2x2 split");
    if state.dim() != split.dim() {
        return Err(Error::DimensionMismatch {
            expected: split.dim(),
            actual: state.dim(),
        });
    }
    assert!(step_deg > 0.0, "grid step must be positive");

    // correlation matrix over (z, x) on each side
    let paulis = [pauli_z(), pauli_x()];
    let mut t = [[0.0f64; 2]; 2];
    for (i, si) in paulis.iter().enumerate() {
        for (j, sj) in paulis.iter().enumerate() {
            t[i][j] = state.expectation(&si.tensor(sj))?;
        }
    }
    let apply = |w: [f64; 2]| -> [f64; 2] {
        [
            t[0][0] * w[0] + t[0][1] * w[1],
            t[1][0] * w[0] + t[1][1] * w[1],
        ]
    };
    let norm = |v: [f64; 2]| (v[0] * v[0] + v[1] * v[1]).sqrt();

    let steps = (360.0 / step_deg).round() as usize;
    let step = 360.0_f64.to_radians() / steps as f64;
    let unit: Vec<[f64; 2]> = (0..steps)
        .map(|k| {
            let angle = k as f64 * step;
            [angle.cos(), angle.sin()]
        })
        .collect();

    let mut best = f64::NEG_INFINITY;
    for w1 in &unit {
        for w2 in &unit {
            let sum = apply([w1[0] + w2[0], w1[1] + w2[1]]);
            let diff = apply([w1[0] - w2[0], w1[1] - w2[1]]);
            let value = norm(sum) + norm(diff);
            if value > best {
                best = value;
            }
        }
    }
    Ok(best)
}
