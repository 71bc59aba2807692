//! Unital *-monomorphisms between full matrix algebras, their composition,
//! and the dual (pullback) action on states. Every such map `M_n -> M_{nk}`
//! is unitarily equivalent to `A -> U (A (x) 1_k) U*`, which is the normal
//! form stored here; composition and pullback then reduce to bookkeeping on
//! the conjugating unitary.

use serde::{Deserialize, Serialize};

use crate::algebra::DensityState;
use crate::bell::{chsh_value, AdmissibleQuadruple};
use crate::error::{Error, Result};
use crate::linalg::{op_norm, ComplexMatrix, Factor};

/// Tolerance for the unitarity of the conjugator.
pub const MORPHISM_TOL: f64 = 1e-10;

/// Unital *-monomorphism `gamma(A) = U (A (x) 1_k) U*` from the matrix
/// algebra of dimension `source_dim` into the one of dimension
/// `source_dim * multiplicity`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "MorphismWire", into = "MorphismWire")]
pub struct Monomorphism {
    source_dim: usize,
    multiplicity: usize,
    conjugator: ComplexMatrix,
}

#[derive(Serialize, Deserialize)]
struct MorphismWire {
    source_dim: usize,
    multiplicity: usize,
    conjugator: ComplexMatrix,
}

impl From<Monomorphism> for MorphismWire {
    fn from(m: Monomorphism) -> Self {
        Self {
            source_dim: m.source_dim,
            multiplicity: m.multiplicity,
            conjugator: m.conjugator,
        }
    }
}

impl TryFrom<MorphismWire> for Monomorphism {
    type Error = Error;
    fn try_from(w: MorphismWire) -> Result<Self> {
        Monomorphism::new(w.source_dim, w.multiplicity, w.conjugator)
    }
}

impl Monomorphism {
    pub fn new(source_dim: usize, multiplicity: usize, conjugator: ComplexMatrix) -> Result<Self> {
        if source_dim < 1 || multiplicity < 1 {
            return Err(Error::InvalidMorphism {
                reason: "source dimension and multiplicity must be positive".into(),
            });
        }
        let target = source_dim * multiplicity;
        if conjugator.dim() != target {
            return Err(Error::InvalidMorphism {
                reason: format!(
                    "conjugator has dimension {}, expected {target}",
                    conjugator.dim()
                ),
            });
        }
        if !conjugator.is_unitary(MORPHISM_TOL) {
            return Err(Error::InvalidMorphism {
                reason: "conjugator is not unitary".into(),
            });
        }
        Ok(Self {
            source_dim,
            multiplicity,
            conjugator,
        })
    }

    /// The identity morphism on dimension `dim`.
    pub fn identity(dim: usize) -> Self {
        Self {
            source_dim: dim,
            multiplicity: 1,
            conjugator: ComplexMatrix::identity(dim),
        }
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    pub fn target_dim(&self) -> usize {
        self.source_dim * self.multiplicity
    }

    pub fn conjugator(&self) -> &ComplexMatrix {
        &self.conjugator
    }

    /// `gamma(A) = U (A (x) 1_k) U*`. Unital, multiplicative, *-preserving,
    /// spectrum preserving.
    pub fn apply(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        if a.dim() != self.source_dim {
            return Err(Error::DimensionMismatch {
                expected: self.source_dim,
                actual: a.dim(),
            });
        }
        let embedded = a.tensor(&ComplexMatrix::identity(self.multiplicity));
        Ok(self
            .conjugator
            .matmul(&embedded)
            .matmul(&self.conjugator.adjoint()))
    }

    /// `outer . inner`: requires `outer` to start where `inner` lands. The
    /// composite is again in normal form with multiplicity `k_inner * k_outer`
    /// and conjugator `U_outer (U_inner (x) 1_{k_outer})`.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        if outer.source_dim != inner.target_dim() {
            return Err(Error::DimensionMismatch {
                expected: inner.target_dim(),
                actual: outer.source_dim,
            });
        }
        let lifted_inner = inner
            .conjugator
            .tensor(&ComplexMatrix::identity(outer.multiplicity));
        Ok(Self {
            source_dim: inner.source_dim,
            multiplicity: inner.multiplicity * outer.multiplicity,
            conjugator: outer.conjugator.matmul(&lifted_inner),
        })
    }

    /// Dual map on states: the pullback `sigma` satisfies
    /// `sigma(A) = omega'(gamma(A))` for every `A` on the source algebra.
    /// Concretely, `sigma` is the partial trace over the multiplicity factor
    /// of `U* rho' U`.
    pub fn pullback(&self, target_state: &DensityState) -> Result<DensityState> {
        if target_state.dim() != self.target_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.target_dim(),
                actual: target_state.dim(),
            });
        }
        let rotated = self
            .conjugator
            .adjoint()
            .matmul(target_state.matrix())
            .matmul(&self.conjugator);
        let reduced = rotated
            .partial_trace((self.source_dim, self.multiplicity), Factor::Right)?
            .hermitian_part();
        Ok(DensityState::trusted(reduced))
    }
}

/// Deviation between pulling back through a composite and pulling back in
/// stages: `|| (g2 . g1)^* rho - g1^*(g2^* rho) ||`. Contravariance makes
/// this vanish; the contract is `<= 1e-10`.
pub fn check_contravariance(
    g1: &Monomorphism,
    g2: &Monomorphism,
    state: &DensityState,
) -> Result<f64> {
    let composed = Monomorphism::compose(g2, g1)?;
    let through_composite = composed.pullback(state)?;
    let in_stages = g1.pullback(&g2.pullback(state)?)?;
    Ok(op_norm(
        &(through_composite.matrix() - in_stages.matrix()),
    ))
}

/// Embed a bipartite algebra factor-wise: `A (x) B -> gamma_A(A) (x)
/// gamma_B(B)`. The result is again a monomorphism in normal form; the
/// conjugator absorbs the index shuffle between `(A, B, k_A, k_B)` and
/// `(A, k_A, B, k_B)` orderings.
pub fn bipartite_embed(gamma_a: &Monomorphism, gamma_b: &Monomorphism) -> Monomorphism {
    let (da, ka) = (gamma_a.source_dim, gamma_a.multiplicity);
    let (db, kb) = (gamma_b.source_dim, gamma_b.multiplicity);
    let total = da * ka * db * kb;
    // permutation: column index orders (a, b, alpha, beta), row index orders
    // (a, alpha, b, beta)
    let mut perm = ComplexMatrix::zeros(total);
    for a in 0..da {
        for b in 0..db {
            for alpha in 0..ka {
                for beta in 0..kb {
                    let row = ((a * ka + alpha) * db + b) * kb + beta;
                    let col = ((a * db + b) * ka + alpha) * kb + beta;
                    perm.set(row, col, crate::linalg::ONE);
                }
            }
        }
    }
    let conjugator = gamma_a
        .conjugator
        .tensor(&gamma_b.conjugator)
        .matmul(&perm);
    Monomorphism {
        source_dim: da * db,
        multiplicity: ka * kb,
        conjugator,
    }
}

/// Both sides of the CHSH preservation identity for a factor-wise embedding:
/// the left side evaluates the pulled-back state against the original Bell
/// operator, the right side evaluates the target state against the Bell
/// operator of the embedded observables. They agree to rounding.
pub fn chsh_pullback_check(
    gamma_a: &Monomorphism,
    gamma_b: &Monomorphism,
    q: &AdmissibleQuadruple,
    target_state: &DensityState,
) -> Result<(f64, f64)> {
    let split = q.split();
    if gamma_a.source_dim != split.da {
        return Err(Error::DimensionMismatch {
            expected: split.da,
            actual: gamma_a.source_dim,
        });
    }
    if gamma_b.source_dim != split.db {
        return Err(Error::DimensionMismatch {
            expected: split.db,
            actual: gamma_b.source_dim,
        });
    }
    let joint = bipartite_embed(gamma_a, gamma_b);
    if target_state.dim() != joint.target_dim() {
        return Err(Error::DimensionMismatch {
            expected: joint.target_dim(),
            actual: target_state.dim(),
        });
    }
    let pulled = joint.pullback(target_state)?;
    let lhs = chsh_value(&pulled, q)?;

    let ea1 = gamma_a.apply(q.a1())?;
    let ea2 = gamma_a.apply(q.a2())?;
    let eb1 = gamma_b.apply(q.b1())?;
    let eb2 = gamma_b.apply(q.b2())?;
    let embedded_bell = &(&ea1.tensor(&(&eb1 + &eb2)) + &ea2.tensor(&(&eb1 - &eb2)));
    let rhs = target_state.evaluate(embedded_bell)?.re;
    Ok((lhs, rhs))
}
