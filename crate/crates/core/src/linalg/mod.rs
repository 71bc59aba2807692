//! Dense complex linear algebra: the square-matrix carrier type, tensor
//! products, partial traces, and the decompositions everything else is built
//! on (Hermitian eigendecomposition, SVD, polar decomposition, operator norm).

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

mod decomp;

pub use decomp::{herm_eig, herm_eigenvalues, op_norm, polar_partial_isometry, svd, HermEig, Svd};
pub(crate) use decomp::herm_eig_unchecked;

/// Complex scalar used throughout.
pub type C64 = Complex64;

pub const ONE: C64 = C64::new(1.0, 0.0);
pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Which tensor factor of a bipartite operator an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    Left,
    Right,
}

/// Dense square matrix of complex numbers, row-major storage.
///
/// This is the carrier for every operator in the crate: observables, states,
/// projections, unitaries. Entries are finite by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<C64>,
}

impl ComplexMatrix {
    /// Build from row-major entries. Panics if `entries.len() != dim * dim`
    /// or any entry is non-finite.
    pub fn from_vec(dim: usize, entries: Vec<C64>) -> Self {
        assert_eq!(entries.len(), dim * dim, "entry count must be dim^2");
        assert!(
            entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()),
            "matrix entries must be finite"
        );
        Self { dim, entries }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self::from_vec(dim, entries)
    }

    /// Build from nested rows of `(re, im)` pairs; handy in tests.
    pub fn from_rows(rows: &[Vec<(f64, f64)>]) -> Self {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            assert_eq!(row.len(), dim, "matrix must be square");
            entries.extend(row.iter().map(|&(re, im)| C64::new(re, im)));
        }
        Self::from_vec(dim, entries)
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let dim = diag.len();
        Self::from_fn(dim, |i, j| if i == j { diag[i] } else { ZERO })
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let as_complex: Vec<C64> = diag.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_diag(&as_complex)
    }

    /// Rank-one matrix `|u><v|`.
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        assert_eq!(u.len(), v.len());
        let dim = u.len();
        Self::from_fn(dim, |i, j| u[i] * v[j].conj())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.entries[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: C64) {
        self.entries[i * self.dim + j] = value;
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(C64::new(factor, 0.0))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in matmul");
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = self.entries[i * n + k];
                if aik == ZERO {
                    continue;
                }
                let row = &other.entries[k * n..(k + 1) * n];
                let dst = &mut out[i * n..(i + 1) * n];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += aik * b;
                }
            }
        }
        Self {
            dim: n,
            entries: out,
        }
    }

    /// Matrix-vector product.
    pub fn apply_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        let n = self.dim;
        (0..n)
            .map(|i| (0..n).map(|j| self.entries[i * n + j] * v[j]).sum())
            .collect()
    }

    /// `(M + M*) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.dim, |i, j| {
            (self.get(i, j) + self.get(j, i).conj()) * C64::new(0.5, 0.0)
        })
    }

    /// `AB - BA`.
    pub fn commutator(a: &Self, b: &Self) -> Self {
        &a.matmul(b) - &b.matmul(a)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry deviation from the conjugate transpose; cheap internal
    /// Hermiticity measure (the public predicate uses the operator norm).
    pub(crate) fn hermitian_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..=i {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }

    /// `||M - M*|| <= tol` in operator norm.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        op_norm(&(self - &self.adjoint())) <= tol
    }

    /// `||M*M - 1|| <= tol` in operator norm.
    pub fn is_unitary(&self, tol: f64) -> bool {
        let gram = self.adjoint().matmul(self);
        op_norm(&(&gram - &Self::identity(self.dim))) <= tol
    }

    /// `||M^2 - M|| + ||M - M*|| <= tol` in operator norm.
    pub fn is_projection(&self, tol: f64) -> bool {
        let idem = op_norm(&(&self.matmul(self) - self));
        let herm = op_norm(&(self - &self.adjoint()));
        idem + herm <= tol
    }

    /// Kronecker product; the result lives on the `dim(A) * dim(B)` space with
    /// the left factor as the slow index.
    pub fn tensor(&self, other: &Self) -> Self {
        let da = self.dim;
        let db = other.dim;
        let n = da * db;
        let mut out = vec![ZERO; n * n];
        for i in 0..da {
            for j in 0..da {
                let aij = self.get(i, j);
                if aij == ZERO {
                    continue;
                }
                for k in 0..db {
                    let row = (i * db + k) * n + j * db;
                    for l in 0..db {
                        out[row + l] = aij * other.get(k, l);
                    }
                }
            }
        }
        Self {
            dim: n,
            entries: out,
        }
    }

    /// Trace out one factor of a bipartite operator on `dims.0 * dims.1`.
    pub fn partial_trace(&self, dims: (usize, usize), trace_out: Factor) -> Result<Self> {
        let (da, db) = dims;
        if da * db != self.dim {
            return Err(Error::DimensionMismatch {
                expected: da * db,
                actual: self.dim,
            });
        }
        let out = match trace_out {
            Factor::Right => Self::from_fn(da, |i, j| {
                (0..db).map(|k| self.get(i * db + k, j * db + k)).sum()
            }),
            Factor::Left => Self::from_fn(db, |k, l| {
                (0..da).map(|i| self.get(i * db + k, i * db + l)).sum()
            }),
        };
        Ok(out)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in addition");
        ComplexMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in subtraction");
        ComplexMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale_re(-1.0)
    }
}

/// Pauli x.
pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[vec![(0.0, 0.0), (1.0, 0.0)], vec![(1.0, 0.0), (0.0, 0.0)]])
}

/// Pauli y.
pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[vec![(0.0, 0.0), (0.0, -1.0)], vec![(0.0, 1.0), (0.0, 0.0)]])
}

/// Pauli z.
pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[vec![(1.0, 0.0), (0.0, 0.0)], vec![(0.0, 0.0), (-1.0, 0.0)]])
}

/// JSON wire format: `{ "dim": n, "entries": [[[re, im], ...], ...] }`,
/// row-major.
#[derive(Serialize, Deserialize)]
pub(crate) struct MatrixWire {
    pub(crate) dim: usize,
    pub(crate) entries: Vec<Vec<[f64; 2]>>,
}

impl From<&ComplexMatrix> for MatrixWire {
    fn from(m: &ComplexMatrix) -> Self {
        let entries = (0..m.dim)
            .map(|i| {
                (0..m.dim)
                    .map(|j| {
                        let z = m.get(i, j);
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect();
        MatrixWire {
            dim: m.dim,
            entries,
        }
    }
}

impl TryFrom<MatrixWire> for ComplexMatrix {
    type Error = String;

    fn try_from(wire: MatrixWire) -> std::result::Result<Self, String> {
        if wire.entries.len() != wire.dim {
            return Err(format!(
                "expected {} rows, got {}",
                wire.dim,
                wire.entries.len()
            ));
        }
        let mut entries = Vec::with_capacity(wire.dim * wire.dim);
        for row in &wire.entries {
            if row.len() != wire.dim {
                return Err(format!("expected {} columns, got {}", wire.dim, row.len()));
            }
            for &[re, im] in row {
                if !re.is_finite() || !im.is_finite() {
                    return Err("non-finite matrix entry".into());
                }
                entries.push(C64::new(re, im));
            }
        }
        Ok(ComplexMatrix {
            dim: wire.dim,
            entries,
        })
    }
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixWire::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = MatrixWire::deserialize(deserializer)?;
        ComplexMatrix::try_from(wire).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx_eq(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
        (a - b).max_abs_entry() <= tol
    }

    #[test]
    fn identity_tensor_identity() {
        let t = ComplexMatrix::identity(2).tensor(&ComplexMatrix::identity(3));
        assert!(approx_eq(&t, &ComplexMatrix::identity(6), 0.0));
    }

    #[test]
    fn diagonal_tensor() {
        let d = ComplexMatrix::from_real_diag(&[1.0, -1.0]);
        let t = d.tensor(&d);
        let expected = ComplexMatrix::from_real_diag(&[1.0, -1.0, -1.0, 1.0]);
        assert!(approx_eq(&t, &expected, 0.0));
    }

    #[test]
    fn tensor_mixed_product_rule() {
        // (A tensor B)(C tensor D) = AC tensor BD
        let a = pauli_x();
        let b = pauli_y();
        let c = pauli_z();
        let d = ComplexMatrix::from_rows(&[
            vec![(0.3, 0.1), (0.0, -0.2)],
            vec![(1.0, 0.0), (0.5, 0.5)],
        ]);
        let lhs = a.tensor(&b).matmul(&c.tensor(&d));
        let rhs = a.matmul(&c).tensor(&b.matmul(&d));
        assert!(approx_eq(&lhs, &rhs, 1e-12));
    }

    #[test]
    fn partial_trace_of_product_input() {
        let rho_a = ComplexMatrix::from_real_diag(&[0.25, 0.75]);
        let rho_b = ComplexMatrix::from_rows(&[
            vec![(0.5, 0.0), (0.1, 0.2)],
            vec![(0.1, -0.2), (0.5, 0.0)],
        ]);
        let joint = rho_a.tensor(&rho_b);
        let back = joint.partial_trace((2, 2), Factor::Right).unwrap();
        // trace(rho_b) = 1, so the reduction returns rho_a
        assert!(approx_eq(&back, &rho_a, 1e-14));
        let other = joint.partial_trace((2, 2), Factor::Left).unwrap();
        assert!(approx_eq(&other, &rho_b, 1e-14));
    }

    #[test]
    fn partial_trace_of_identity() {
        let one = ComplexMatrix::identity(6);
        let reduced = one.partial_trace((2, 3), Factor::Right).unwrap();
        assert!(approx_eq(&reduced, &ComplexMatrix::identity(2).scale_re(3.0), 0.0));
    }

    #[test]
    fn partial_trace_of_maximally_entangled_state() {
        // |phi+> = (|00> + |11>)/sqrt(2); reduction is the maximally mixed qubit
        let phi = [
            C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            ZERO,
            ZERO,
            C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        ];
        let rho = ComplexMatrix::outer(&phi, &phi);
        let reduced = rho.partial_trace((2, 2), Factor::Right).unwrap();
        assert!(approx_eq(&reduced, &ComplexMatrix::identity(2).scale_re(0.5), 1e-14));
    }

    #[test]
    fn partial_trace_dimension_mismatch() {
        let m = ComplexMatrix::identity(5);
        assert!(matches!(
            m.partial_trace((2, 2), Factor::Right),
            Err(Error::DimensionMismatch { expected: 4, actual: 5 })
        ));
    }

    #[test]
    fn predicates_on_paulis() {
        for p in [pauli_x(), pauli_y(), pauli_z()] {
            assert!(p.is_hermitian(1e-12));
            assert!(p.is_unitary(1e-12));
            assert!(!p.is_projection(1e-12));
        }
        let proj = ComplexMatrix::from_real_diag(&[1.0, 0.0]);
        assert!(proj.is_projection(1e-12));
    }

    #[test]
    fn matrix_json_round_trip() {
        let m = ComplexMatrix::from_rows(&[
            vec![(1.0, 0.0), (0.25, -0.5)],
            vec![(0.25, 0.5), (-1.0, 0.0)],
        ]);
        let text = serde_json::to_string(&m).unwrap();
        assert!(text.contains("\"dim\":2"));
        let back: ComplexMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn matrix_json_rejects_ragged_rows() {
        let bad = r#"{ "dim": 2, "entries": [[[1.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]] }"#;
        assert!(serde_json::from_str::<ComplexMatrix>(bad).is_err());
    }
}
