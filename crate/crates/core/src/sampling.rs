//! Seeded random generators for operators, states, and morphisms. All
//! sampling is reproducible: the same seed yields the same objects on every
//! run.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::{convex_combine, BipartiteSplit, DensityState};
use crate::functor::Monomorphism;
use crate::linalg::{herm_eig_unchecked, ComplexMatrix, C64, ZERO};

/// The crate's canonical seeded generator.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// Matrix with independent standard complex Gaussian entries.
pub fn complex_gaussian_matrix(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |_, _| C64::new(gaussian(rng), gaussian(rng)))
}

/// Haar-like random unitary: QR of a complex Gaussian matrix via modified
/// Gram-Schmidt with positive diagonal normalization.
pub fn random_unitary(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let g = complex_gaussian_matrix(dim, rng);
    // columns of g, orthonormalized in order
    let mut cols: Vec<Vec<C64>> = (0..dim)
        .map(|j| (0..dim).map(|i| g.get(i, j)).collect())
        .collect();
    for j in 0..dim {
        for k in 0..j {
            let proj: C64 = (0..dim).map(|i| cols[k][i].conj() * cols[j][i]).sum();
            for i in 0..dim {
                let correction = proj * cols[k][i];
                cols[j][i] -= correction;
            }
        }
        let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut cols[j] {
            *z /= norm;
        }
    }
    ComplexMatrix::from_fn(dim, |i, j| cols[j][i])
}

/// Random Hermitian matrix `(G + G*)/2` with Gaussian `G`.
pub fn random_hermitian(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    complex_gaussian_matrix(dim, rng).hermitian_part()
}

/// Rank-`rank` orthogonal projection `U diag(1..rank) U*` with Haar-like `U`.
pub fn random_projection(dim: usize, rank: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    assert!(rank >= 1 && rank < dim, "rank must satisfy 1 <= rank < dim");
    let u = random_unitary(dim, rng);
    let mut p = ComplexMatrix::zeros(dim);
    for k in 0..rank {
        for i in 0..dim {
            let uik = u.get(i, k);
            for j in 0..dim {
                let val = p.get(i, j) + uik * u.get(j, k).conj();
                p.set(i, j, val);
            }
        }
    }
    p.hermitian_part()
}

/// Dichotomic observable: the eigenvalue-sign of a random Hermitian matrix.
pub fn random_dichotomic(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let h = random_hermitian(dim, rng);
    herm_eig_unchecked(&h).rebuild_with(|l| if l >= 0.0 { 1.0 } else { -1.0 })
}

/// Random pure-state vector with Gaussian amplitudes, normalized.
pub fn random_pure(dim: usize, rng: &mut ChaCha8Rng) -> Vec<C64> {
    let mut v: Vec<C64> = (0..dim)
        .map(|_| C64::new(gaussian(rng), gaussian(rng)))
        .collect();
    let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut v {
        *z /= norm;
    }
    v
}

/// Full-rank random density matrix `G G* / trace(G G*)`.
pub fn random_density(dim: usize, rng: &mut ChaCha8Rng) -> DensityState {
    let g = complex_gaussian_matrix(dim, rng);
    let w = g.matmul(&g.adjoint()).hermitian_part();
    let trace = w.trace().re;
    DensityState::new(w.scale_re(1.0 / trace)).expect("Wishart state is valid")
}

fn product_mixture(
    split: BipartiteSplit,
    terms: usize,
    real_only: bool,
    rng: &mut ChaCha8Rng,
) -> DensityState {
    assert!(terms >= 1);
    let mut states = Vec::with_capacity(terms);
    let mut weights: Vec<f64> = (0..terms).map(|_| rng.random::<f64>() + 1e-3).collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    let local_pure = |dim: usize, rng: &mut ChaCha8Rng| -> Vec<C64> {
        let mut v: Vec<C64> = (0..dim)
            .map(|_| {
                let im = if real_only { 0.0 } else { gaussian(rng) };
                C64::new(gaussian(rng), im)
            })
            .collect();
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut v {
            *z /= norm;
        }
        v
    };
    for _ in 0..terms {
        let a = local_pure(split.da, rng);
        let b = local_pure(split.db, rng);
        let mut joint = vec![ZERO; split.dim()];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                joint[i * split.db + j] = ai * bj;
            }
        }
        states.push(DensityState::from_pure(&joint).expect("product state is valid"));
    }
    convex_combine(&states, &weights).expect("mixture of valid states is valid")
}

/// Explicit convex combination of random product pure states; separable by
/// construction.
pub fn random_product_mixture(
    split: BipartiteSplit,
    terms: usize,
    rng: &mut ChaCha8Rng,
) -> DensityState {
    product_mixture(split, terms, false, rng)
}

/// Separable mixture with all local amplitudes real; its correlations stay
/// inside the z-x plane, matching the planar grid oracle.
pub fn random_real_product_mixture(
    split: BipartiteSplit,
    terms: usize,
    rng: &mut ChaCha8Rng,
) -> DensityState {
    product_mixture(split, terms, true, rng)
}

/// Random unital *-monomorphism `A -> U (A tensor 1_k) U*`.
pub fn random_monomorphism(
    source_dim: usize,
    multiplicity: usize,
    rng: &mut ChaCha8Rng,
) -> Monomorphism {
    let u = random_unitary(source_dim * multiplicity, rng);
    Monomorphism::new(source_dim, multiplicity, u).expect("sampled conjugator is unitary")
}
