//! Property suites for the linear-algebra kernel: reconstruction quality,
//! norm identities, tensor/partial-trace duality, and partial isometries on
//! nilpotent inputs.

use proptest::prelude::*;

use chsh_lab::linalg::{
    herm_eig, op_norm, polar_partial_isometry, ComplexMatrix, Factor, C64,
};
use chsh_lab::sampling::{
    complex_gaussian_matrix, random_hermitian, random_projection, seeded_rng,
};

fn reconstruction_error(m: &ComplexMatrix) -> f64 {
    let eig = herm_eig(m, 1e-8).expect("input is Hermitian");
    let recon = eig.rebuild_with(|l| l);
    op_norm(&(&recon - m))
}

#[test]
fn eigendecomposition_reconstructs_up_to_dim_64() {
    for (i, dim) in [2usize, 3, 5, 8, 16, 33, 64].iter().enumerate() {
        let mut rng = seeded_rng(100 + i as u64);
        let m = random_hermitian(*dim, &mut rng);
        let err = reconstruction_error(&m);
        let scale = op_norm(&m);
        assert!(
            err <= 1e-10 * scale,
            "dim {dim}: reconstruction error {err:e} vs scale {scale:e}"
        );
    }
}

#[test]
fn eigenvalues_come_out_ascending() {
    let mut rng = seeded_rng(200);
    for _ in 0..10 {
        let m = random_hermitian(12, &mut rng);
        let eig = herm_eig(&m, 1e-8).unwrap();
        for pair in eig.eigenvalues.windows(2) {
            assert!(pair[0] <= pair[1]);
        }
    }
}

#[test]
fn operator_norm_submultiplicative_and_c_star() {
    let mut rng = seeded_rng(300);
    for _ in 0..25 {
        let a = complex_gaussian_matrix(6, &mut rng);
        let b = complex_gaussian_matrix(6, &mut rng);
        let na = op_norm(&a);
        let nb = op_norm(&b);
        let nab = op_norm(&a.matmul(&b));
        assert!(nab <= na * nb * (1.0 + 1e-12));
        // C*-identity: ||A*A|| = ||A||^2
        let gram_norm = op_norm(&a.adjoint().matmul(&a));
        assert!((gram_norm - na * na).abs() <= 1e-10 * na * na);
    }
}

#[test]
fn tensor_norm_is_multiplicative() {
    let mut rng = seeded_rng(400);
    for _ in 0..10 {
        let a = complex_gaussian_matrix(4, &mut rng);
        let b = complex_gaussian_matrix(5, &mut rng);
        let lhs = op_norm(&a.tensor(&b));
        let rhs = op_norm(&a) * op_norm(&b);
        assert!((lhs - rhs).abs() <= 1e-10 * rhs.max(1.0));
    }
}

#[test]
fn partial_trace_satisfies_basis_duality() {
    // trace(tr_B(M) X) = trace(M (X tensor 1_B)) for every basis element X
    let (da, db) = (3usize, 4usize);
    let mut rng = seeded_rng(500);
    let m = complex_gaussian_matrix(da * db, &mut rng);
    let reduced = m.partial_trace((da, db), Factor::Right).unwrap();
    for i in 0..da {
        for j in 0..da {
            let mut x = ComplexMatrix::zeros(da);
            x.set(i, j, C64::new(1.0, 0.0));
            let lhs = reduced.matmul(&x).trace();
            let rhs = m
                .matmul(&x.tensor(&ComplexMatrix::identity(db)))
                .trace();
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }
    // and the mirrored identity for tracing out the left factor
    let reduced_left = m.partial_trace((da, db), Factor::Left).unwrap();
    for k in 0..db {
        for l in 0..db {
            let mut x = ComplexMatrix::zeros(db);
            x.set(k, l, C64::new(1.0, 0.0));
            let lhs = reduced_left.matmul(&x).trace();
            let rhs = m
                .matmul(&ComplexMatrix::identity(da).tensor(&x))
                .trace();
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }
}

#[test]
fn partial_trace_is_linear() {
    let mut rng = seeded_rng(600);
    let m = complex_gaussian_matrix(6, &mut rng);
    let n = complex_gaussian_matrix(6, &mut rng);
    let combo = &m.scale_re(0.3) + &n.scale_re(-1.7);
    let lhs = combo.partial_trace((2, 3), Factor::Right).unwrap();
    let rhs = &m
        .partial_trace((2, 3), Factor::Right)
        .unwrap()
        .scale_re(0.3)
        + &n.partial_trace((2, 3), Factor::Right)
            .unwrap()
            .scale_re(-1.7);
    assert!((&lhs - &rhs).max_abs_entry() < 1e-12);
}

#[test]
fn polar_factors_are_projections_and_nilpotency_transfers() {
    // T = E F (1 - E) squares to zero; the polar isometry inherits V^2 = 0
    for seed in 0..20u64 {
        let mut rng = seeded_rng(700 + seed);
        let dim = 8;
        let e = random_projection(dim, 4, &mut rng);
        let f = random_projection(dim, 4, &mut rng);
        let one = ComplexMatrix::identity(dim);
        let t = e.matmul(&f).matmul(&(&one - &e));
        let t_squared = op_norm(&t.matmul(&t));
        assert!(t_squared < 1e-12, "T^2 norm {t_squared:e}");
        let (v, abs_t) = polar_partial_isometry(&t, 1e-10).unwrap();
        let x = v.adjoint().matmul(&v);
        let y = v.matmul(&v.adjoint());
        for p in [&x, &y] {
            assert!(p.is_projection(1e-10));
        }
        assert!(op_norm(&v.matmul(&v)) < 1e-10, "V^2 must vanish");
        assert!(op_norm(&(&v.matmul(&abs_t) - &t)) < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tensor_dimensions_and_trace_factorize(
        da in 1usize..4,
        db in 1usize..4,
        seed in 0u64..1000,
    ) {
        let mut rng = seeded_rng(seed);
        let a = complex_gaussian_matrix(da, &mut rng);
        let b = complex_gaussian_matrix(db, &mut rng);
        let t = a.tensor(&b);
        prop_assert_eq!(t.dim(), da * db);
        let lhs = t.trace();
        let rhs = a.trace() * b.trace();
        prop_assert!((lhs - rhs).norm() < 1e-10);
    }

    #[test]
    fn adjoint_is_an_involution_and_antihomomorphism(
        dim in 1usize..5,
        seed in 0u64..1000,
    ) {
        let mut rng = seeded_rng(seed);
        let a = complex_gaussian_matrix(dim, &mut rng);
        let b = complex_gaussian_matrix(dim, &mut rng);
        prop_assert!((&a.adjoint().adjoint() - &a).max_abs_entry() < 1e-15);
        let lhs = a.matmul(&b).adjoint();
        let rhs = b.adjoint().matmul(&a.adjoint());
        prop_assert!((&lhs - &rhs).max_abs_entry() < 1e-12);
    }

    #[test]
    fn matrix_json_round_trips_exactly(
        dim in 1usize..5,
        seed in 0u64..1000,
    ) {
        let mut rng = seeded_rng(seed);
        let m = complex_gaussian_matrix(dim, &mut rng);
        let text = serde_json::to_string(&m).unwrap();
        let back: ComplexMatrix = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(m, back);
    }
}
