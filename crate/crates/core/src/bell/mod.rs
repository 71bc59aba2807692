//! CHSH machinery: admissible observable quadruples, the Bell operator, the
//! constructive maximal-violation pair built from two non-commuting
//! projections, the commutator norm identity, maximal-violation states, and a
//! see-saw optimizer for the correlation supremum.

use serde::{Deserialize, Serialize};

use crate::algebra::{BipartiteSplit, DensityState};
use crate::error::{Error, Result};
use crate::linalg::{
    herm_eig_unchecked, herm_eigenvalues, op_norm, polar_partial_isometry, ComplexMatrix, I,
};

mod grid;
mod seesaw;

pub use grid::planar_grid_chsh_max;
pub use seesaw::{seesaw_maximize, SeesawOptions, SeesawOutcome};

/// Classical ceiling on the CHSH value.
pub const CLASSICAL_BOUND: f64 = 2.0;

/// Quantum (Tsirelson) ceiling on the CHSH value, `2 sqrt(2)`.
pub const TSIRELSON_BOUND: f64 = 2.0 * std::f64::consts::SQRT_2;

/// Tolerance used when admitting observables into a quadruple.
pub const ADMISSIBLE_TOL: f64 = 1e-10;

/// Two pairs of dichotomic observables on the commuting tensor factors of a
/// bipartite algebra: `A1, A2` act on the left factor, `B1, B2` on the right.
/// Each observable is Hermitian with spectrum inside `[-1, 1]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "QuadrupleWire", into = "QuadrupleWire")]
pub struct AdmissibleQuadruple {
    split: BipartiteSplit,
    a1: ComplexMatrix,
    a2: ComplexMatrix,
    b1: ComplexMatrix,
    b2: ComplexMatrix,
}

#[derive(Serialize, Deserialize)]
struct QuadrupleWire {
    split: BipartiteSplit,
    a1: ComplexMatrix,
    a2: ComplexMatrix,
    b1: ComplexMatrix,
    b2: ComplexMatrix,
}

impl From<AdmissibleQuadruple> for QuadrupleWire {
    fn from(q: AdmissibleQuadruple) -> Self {
        Self {
            split: q.split,
            a1: q.a1,
            a2: q.a2,
            b1: q.b1,
            b2: q.b2,
        }
    }
}

impl TryFrom<QuadrupleWire> for AdmissibleQuadruple {
    type Error = Error;
    fn try_from(w: QuadrupleWire) -> Result<Self> {
        AdmissibleQuadruple::new(w.split, w.a1, w.a2, w.b1, w.b2)
    }
}

fn check_observable(m: &ComplexMatrix, dim: usize, label: &str) -> Result<()> {
    if m.dim() != dim {
        return Err(Error::InvalidQuadruple {
            reason: format!("{label} has dimension {}, expected {dim}", m.dim()),
        });
    }
    let herm_dev = op_norm(&(m - &m.adjoint()));
    if herm_dev > ADMISSIBLE_TOL {
        return Err(Error::InvalidQuadruple {
            reason: format!("{label} is not Hermitian (deviation {herm_dev:e})"),
        });
    }
    let eigenvalues = herm_eigenvalues(m);
    let min = eigenvalues.first().copied().unwrap_or(0.0);
    let max = eigenvalues.last().copied().unwrap_or(0.0);
    if min < -1.0 - ADMISSIBLE_TOL || max > 1.0 + ADMISSIBLE_TOL {
        return Err(Error::InvalidQuadruple {
            reason: format!("{label} has spectrum [{min}, {max}] outside [-1, 1]"),
        });
    }
    Ok(())
}

impl AdmissibleQuadruple {
    pub fn new(
        split: BipartiteSplit,
        a1: ComplexMatrix,
        a2: ComplexMatrix,
        b1: ComplexMatrix,
        b2: ComplexMatrix,
    ) -> Result<Self> {
        check_observable(&a1, split.da, "A1")?;
        check_observable(&a2, split.da, "A2")?;
        check_observable(&b1, split.db, "B1")?;
        check_observable(&b2, split.db, "B2")?;
        Ok(Self { split, a1, a2, b1, b2 })
    }

    pub fn split(&self) -> BipartiteSplit {
        self.split
    }

    pub fn a1(&self) -> &ComplexMatrix {
        &self.a1
    }

    pub fn a2(&self) -> &ComplexMatrix {
        &self.a2
    }

    pub fn b1(&self) -> &ComplexMatrix {
        &self.b1
    }

    pub fn b2(&self) -> &ComplexMatrix {
        &self.b2
    }

    /// Largest deviation of any member from squaring to the identity.
    pub fn dichotomy_deviation(&self) -> f64 {
        let dev = |m: &ComplexMatrix| {
            op_norm(&(&m.matmul(m) - &ComplexMatrix::identity(m.dim())))
        };
        dev(&self.a1).max(dev(&self.a2)).max(dev(&self.b1)).max(dev(&self.b2))
    }
}

/// The Bell operator
/// `C = A1 (x) B1 + A1 (x) B2 + A2 (x) B1 - A2 (x) B2`.
///
/// Hermitian; its operator norm never exceeds the Tsirelson bound.
pub fn bell_operator(q: &AdmissibleQuadruple) -> ComplexMatrix {
    let sum_b = &q.b1 + &q.b2;
    let diff_b = &q.b1 - &q.b2;
    &q.a1.tensor(&sum_b) + &q.a2.tensor(&diff_b)
}

/// CHSH value `omega(C)` of a state against a quadruple.
pub fn chsh_value(state: &DensityState, q: &AdmissibleQuadruple) -> Result<f64> {
    if state.dim() != q.split.dim() {
        return Err(Error::DimensionMismatch {
            expected: q.split.dim(),
            actual: state.dim(),
        });
    }
    Ok(state.evaluate(&bell_operator(q))?.re)
}

/// Intermediate operators of the maximal-pair construction, kept for
/// inspection: `T = E F (1 - E)`, its polar isometry `V`, the projections
/// `X = V*V`, `Y = V V*`, `Z = X + Y`, and the rotated pair
/// `Abar1 = V + V*`, `Abar2 = i(V* - V)`.
#[derive(Debug, Clone)]
pub struct ConstructionTrace {
    pub e: ComplexMatrix,
    pub f: ComplexMatrix,
    pub t: ComplexMatrix,
    pub v: ComplexMatrix,
    pub x: ComplexMatrix,
    pub y: ComplexMatrix,
    pub z: ComplexMatrix,
    pub abar1: ComplexMatrix,
    pub abar2: ComplexMatrix,
}

/// Output of [`construct_maximal_pair`].
#[derive(Debug, Clone)]
pub struct MaximalPair {
    pub a1: ComplexMatrix,
    pub a2: ComplexMatrix,
    pub trace: ConstructionTrace,
}

/// Relative singular-value cutoff deciding the support of the polar isometry.
pub const RANK_TOL: f64 = 1e-10;

/// From two non-commuting orthogonal projections `E`, `F`, build a pair of
/// dichotomic observables with `||[A1, A2]|| = 2`:
///
/// form the nilpotent `T = E F (1 - E)`, take its polar partial isometry `V`,
/// set `Abar1 = V + V*`, `Abar2 = i(V* - V)`, `Z = V*V + V V*`, and shift to
/// `A_i = Abar_i + Z - 1`. Both outputs square to the identity, so their
/// spectra are `{-1, +1}`, and together with an equally built pair on a
/// commuting factor they drive the CHSH value to the Tsirelson bound.
pub fn construct_maximal_pair(
    e: &ComplexMatrix,
    f: &ComplexMatrix,
    tol: f64,
) -> Result<MaximalPair> {
    for (m, name) in [(e, "E"), (f, "F")] {
        let idem = op_norm(&(&m.matmul(m) - m));
        let herm = op_norm(&(m - &m.adjoint()));
        if idem + herm > tol {
            let _ = name;
            return Err(Error::NotProjection {
                tol,
                deviation: idem + herm,
            });
        }
    }
    let commutator_norm = op_norm(&ComplexMatrix::commutator(e, f));
    if commutator_norm <= tol {
        return Err(Error::CommutingProjections { commutator_norm });
    }
    let dim = e.dim();
    let one = ComplexMatrix::identity(dim);
    let t = e.matmul(f).matmul(&(&one - e));
    let (v, _abs_t) = match polar_partial_isometry(&t, RANK_TOL) {
        Ok(pair) => pair,
        Err(Error::ZeroOperator { .. }) => {
            return Err(Error::CommutingProjections { commutator_norm })
        }
        Err(other) => return Err(other),
    };
    let v_adj = v.adjoint();
    let x = v_adj.matmul(&v);
    let y = v.matmul(&v_adj);
    let z = &x + &y;
    let abar1 = &v + &v_adj;
    let abar2 = (&v_adj - &v).scale(I);
    let a1 = &(&abar1 + &z) - &one;
    let a2 = &(&abar2 + &z) - &one;
    Ok(MaximalPair {
        a1,
        a2,
        trace: ConstructionTrace {
            e: e.clone(),
            f: f.clone(),
            t,
            v,
            x,
            y,
            z,
            abar1,
            abar2,
        },
    })
}

/// Norm of the Bell operator computed from the tensor-factor commutators:
/// `2 sqrt(1 + ||[A1,A2]|| * ||[B1,B2]|| / 4)`.
///
/// Exact for dichotomic quadruples, where squaring the Bell operator gives
/// `C^2 = 4*1 - [A1,A2] (x) [B1,B2]`; fails with `NotDichotomic` otherwise.
pub fn landau_norm(q: &AdmissibleQuadruple) -> Result<f64> {
    let deviation = q.dichotomy_deviation();
    if deviation > 1e-9 {
        return Err(Error::NotDichotomic { deviation });
    }
    let ka = op_norm(&ComplexMatrix::commutator(&q.a1, &q.a2));
    let kb = op_norm(&ComplexMatrix::commutator(&q.b1, &q.b2));
    Ok(2.0 * (1.0 + 0.25 * ka * kb).sqrt())
}

/// Pure state maximizing `|omega(C)|`: the eigenvector of the Bell operator
/// with the largest-modulus eigenvalue. Ties between the extreme eigenvalues
/// resolve to the positive one.
pub fn maximal_state(q: &AdmissibleQuadruple) -> (DensityState, f64) {
    let c = bell_operator(q);
    let eig = herm_eig_unchecked(&c);
    let n = eig.eigenvalues.len();
    let low = eig.eigenvalues[0];
    let high = eig.eigenvalues[n - 1];
    let index = if high.abs() >= low.abs() { n - 1 } else { 0 };
    let vector = eig.eigenvector(index);
    let state = DensityState::from_pure(&vector).expect("eigenvector is a unit vector");
    let value = state.evaluate(&c).expect("dimensions agree").re;
    (state, value)
}

/// The singlet state `(|01> - |10>)/sqrt(2)` on two qubits.
pub fn singlet_state() -> DensityState {
    use crate::linalg::{C64, ZERO};
    let amp = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    DensityState::from_pure(&[ZERO, amp, -amp, ZERO]).expect("singlet is a valid state")
}

/// The measurement quadruple reaching the Tsirelson bound on the singlet:
/// `A1 = z, A2 = x, B1 = -(z + x)/sqrt(2), B2 = (x - z)/sqrt(2)`.
pub fn singlet_optimal_quadruple() -> AdmissibleQuadruple {
    use crate::linalg::{pauli_x, pauli_z};
    let sqrt_half = std::f64::consts::FRAC_1_SQRT_2;
    let b1 = (&pauli_z() + &pauli_x()).scale_re(-sqrt_half);
    let b2 = (&pauli_x() - &pauli_z()).scale_re(sqrt_half);
    AdmissibleQuadruple::new(
        BipartiteSplit::new(2, 2).expect("2x2 split"),
        pauli_z(),
        pauli_x(),
        b1,
        b2,
    )
    .expect("singlet quadruple is admissible")
}
