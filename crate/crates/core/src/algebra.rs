//! States over finite-dimensional matrix algebras: density matrices, their
//! closure operations (convex combination, twisting by an algebra element),
//! and positivity checks for measurement families.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{herm_eig, op_norm, ComplexMatrix, MatrixWire, C64};

/// Default tolerance for state and positivity invariants.
pub const STATE_TOL: f64 = 1e-10;

/// Dimensions of the two commuting tensor factors of a bipartite algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteSplit {
    pub da: usize,
    pub db: usize,
}

impl BipartiteSplit {
    pub fn new(da: usize, db: usize) -> Result<Self> {
        if da < 2 || db < 2 {
            return Err(Error::InvalidState {
                reason: format!("both factors must have dimension >= 2, got {da}x{db}"),
            });
        }
        Ok(Self { da, db })
    }

    pub fn dim(&self) -> usize {
        self.da * self.db
    }
}

/// A state `omega(X) = trace(rho X)` represented by its density matrix:
/// Hermitian, positive semidefinite, unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityState {
    rho: ComplexMatrix,
}

/// Wire format: the matrix fields plus a `trace_tol` used to re-validate the
/// state on load.
#[derive(Serialize, Deserialize)]
struct StateWire {
    #[serde(flatten)]
    matrix: MatrixWire,
    trace_tol: f64,
}

impl Serialize for DensityState {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        StateWire {
            matrix: MatrixWire::from(&self.rho),
            trace_tol: STATE_TOL,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DensityState {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = StateWire::deserialize(deserializer)?;
        let rho = ComplexMatrix::try_from(wire.matrix).map_err(D::Error::custom)?;
        DensityState::with_tolerance(rho, wire.trace_tol)
            .map_err(|e| D::Error::custom(e.to_string()))
    }
}

impl DensityState {
    /// Validate and wrap a density matrix. Checks Hermiticity, the spectrum,
    /// and the trace against `tol`.
    pub fn with_tolerance(rho: ComplexMatrix, tol: f64) -> Result<Self> {
        let herm_dev = op_norm(&(&rho - &rho.adjoint()));
        if herm_dev > tol {
            return Err(Error::InvalidState {
                reason: format!("not Hermitian (deviation {herm_dev:e} > {tol:e})"),
            });
        }
        let trace = rho.trace();
        if (trace.re - 1.0).abs() > tol || trace.im.abs() > tol {
            return Err(Error::InvalidState {
                reason: format!("trace is {trace}, expected 1 within {tol:e}"),
            });
        }
        let eig = herm_eig(&rho, tol)?;
        let min = eig.eigenvalues.first().copied().unwrap_or(0.0);
        if min < -tol {
            return Err(Error::InvalidState {
                reason: format!("negative eigenvalue {min:e} below -{tol:e}"),
            });
        }
        Ok(Self { rho })
    }

    pub fn new(rho: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(rho, STATE_TOL)
    }

    /// Wrap without validating. For internal use where the invariants hold by
    /// construction (convex combinations, twists, partial traces of states).
    pub(crate) fn trusted(rho: ComplexMatrix) -> Self {
        Self { rho }
    }

    /// Pure state `|psi><psi| / <psi|psi>`.
    pub fn from_pure(psi: &[C64]) -> Result<Self> {
        let norm_sq: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if norm_sq <= 0.0 || !norm_sq.is_finite() {
            return Err(Error::InvalidState {
                reason: "pure-state vector must be nonzero and finite".into(),
            });
        }
        let scale = 1.0 / norm_sq;
        let rho = ComplexMatrix::from_fn(psi.len(), |i, j| psi[i] * psi[j].conj() * scale);
        Ok(Self { rho })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            rho: ComplexMatrix::identity(dim).scale_re(1.0 / dim as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.rho.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.rho
    }

    /// `omega(X) = trace(rho X)`, computed as a direct double contraction.
    pub fn evaluate(&self, x: &ComplexMatrix) -> Result<C64> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: x.dim(),
            });
        }
        let n = self.dim();
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                acc += self.rho.get(i, j) * x.get(j, i);
            }
        }
        Ok(acc)
    }

    /// Real part of `omega(X)`; the full value for Hermitian observables.
    pub fn expectation(&self, x: &ComplexMatrix) -> Result<f64> {
        Ok(self.evaluate(x)?.re)
    }

    /// `trace(rho^2)`; 1 exactly for pure states.
    pub fn purity(&self) -> f64 {
        let n = self.dim();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self.rho.get(i, j) * self.rho.get(j, i)).re;
            }
        }
        acc
    }

    /// The state `omega_A(.) = omega(A* . A) / omega(A* A)`, i.e.
    /// `A rho A* / trace(A rho A*)`. Fails with `NullTwist` when the
    /// normalization vanishes.
    pub fn twist(&self, a: &ComplexMatrix) -> Result<Self> {
        if a.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: a.dim(),
            });
        }
        let twisted = a.matmul(&self.rho).matmul(&a.adjoint());
        let norm = twisted.trace().re;
        if norm <= 1e-12 {
            return Err(Error::NullTwist { norm });
        }
        Ok(Self::trusted(twisted.scale_re(1.0 / norm).hermitian_part()))
    }
}

/// Convex combination of states with the given weights.
pub fn convex_combine(states: &[DensityState], weights: &[f64]) -> Result<DensityState> {
    if states.is_empty() || states.len() != weights.len() {
        return Err(Error::BadWeights {
            reason: format!(
                "{} states but {} weights",
                states.len(),
                weights.len()
            ),
        });
    }
    if weights.iter().any(|&w| !(w >= 0.0)) {
        return Err(Error::BadWeights {
            reason: "weights must be non-negative".into(),
        });
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::BadWeights {
            reason: format!("weights sum to {total}, expected 1"),
        });
    }
    let dim = states[0].dim();
    for s in states {
        if s.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: s.dim(),
            });
        }
    }
    let mut rho = ComplexMatrix::zeros(dim);
    for (state, &w) in states.iter().zip(weights) {
        rho = &rho + &state.matrix().scale_re(w);
    }
    Ok(DensityState::trusted(rho))
}

/// Positivity in the algebra sense: Hermitian with spectrum bounded below by
/// `-tol`.
pub fn is_positive_element(a: &ComplexMatrix, tol: f64) -> bool {
    positive_witness(a, tol).is_some()
}

/// When `A` is positive, returns the square-root witness `B = A^{1/2}` with
/// `B*B = A`; eigenvalues inside `[-tol, 0)` are clamped to zero.
pub fn positive_witness(a: &ComplexMatrix, tol: f64) -> Option<ComplexMatrix> {
    let eig = herm_eig(a, tol).ok()?;
    let min = eig.eigenvalues.first().copied()?;
    if min < -tol {
        return None;
    }
    Some(eig.rebuild_with(|l| l.max(0.0).sqrt()))
}

/// A finite measurement family: every member positive and the members summing
/// to the identity within `tol`.
pub fn measurement_family_check(family: &[ComplexMatrix], tol: f64) -> bool {
    let Some(first) = family.first() else {
        return false;
    };
    let dim = first.dim();
    if family.iter().any(|m| m.dim() != dim) {
        return false;
    }
    if !family.iter().all(|m| is_positive_element(m, tol)) {
        return false;
    }
    let mut sum = ComplexMatrix::zeros(dim);
    for m in family {
        sum = &sum + m;
    }
    op_norm(&(&sum - &ComplexMatrix::identity(dim))) <= tol
}
