//! Property suites for the lattice field: exact translation symmetry of the
//! whole CHSH pipeline, truncation convergence, squeezing monotonicity, and
//! the uncertainty relation for every produced covariance.

use chsh_lab::bell::TSIRELSON_BOUND;
use chsh_lab::field::{
    complementary_wedge_pair, reduce_two_modes, tmsv_chsh, translate_smearing,
    vacuum_covariance, wedge_chsh, weyl_vacuum_expectation_raw, LatticeModel, SmearingFunction,
    WedgeChshOptions,
};

fn standard_setup() -> (LatticeModel, SmearingFunction, SmearingFunction) {
    let model = LatticeModel::new(32, 1.0, 1.0).unwrap();
    let (left, right) = complementary_wedge_pair(&model, 2).unwrap();
    (
        model,
        SmearingFunction::edge_profile(&model, left),
        SmearingFunction::edge_profile(&model, right),
    )
}

fn fast_opts() -> WedgeChshOptions {
    WedgeChshOptions {
        angle_step_deg: 2.0,
        ..WedgeChshOptions::default()
    }
}

#[test]
fn chsh_pipeline_is_translation_invariant() {
    // shifting both smearings rigidly leaves the reduction, the fitted
    // squeezing, and every CHSH value unchanged up to rounding
    let (model, fl, fr) = standard_setup();
    let base = wedge_chsh(&model, &fl, &fr, 9, &fast_opts()).unwrap();
    for shift in [1i64, 4, 16, -5] {
        let (fl_shifted, _) = translate_smearing(&fl, shift);
        let (fr_shifted, _) = translate_smearing(&fr, shift);
        let moved = wedge_chsh(&model, &fl_shifted, &fr_shifted, 9, &fast_opts()).unwrap();
        assert!(
            (base.reduction.squeeze_fit - moved.reduction.squeeze_fit).abs() < 1e-10,
            "shift {shift}"
        );
        assert!((base.chsh.beta_pseudo - moved.chsh.beta_pseudo).abs() < 1e-10);
        assert!((base.chsh.beta_seesaw - moved.chsh.beta_seesaw).abs() < 1e-10);
    }
}

#[test]
fn weyl_expectations_are_translation_invariant_for_many_shifts() {
    let (model, fl, _) = standard_setup();
    let cov = vacuum_covariance(&model);
    let base = weyl_vacuum_expectation_raw(&cov, fl.coefficients());
    for shift in 0..32i64 {
        let (g, _) = translate_smearing(&fl, shift);
        let moved = weyl_vacuum_expectation_raw(&cov, g.coefficients());
        assert!((moved - base).abs() <= 1e-10, "shift {shift}");
    }
}

#[test]
fn squeezing_sweep_is_monotone_and_saturates() {
    let sweep = [0.0, 0.25, 0.5, 1.0, 1.5];
    let opts = fast_opts();
    let betas: Vec<f64> = sweep
        .iter()
        .map(|&r| tmsv_chsh(r, 15, &opts).unwrap().beta_pseudo)
        .collect();
    for pair in betas.windows(2) {
        assert!(pair[1] >= pair[0] - 1e-12, "sweep not monotone: {betas:?}");
    }
    // the curve is flat at r = 0, so the first increment is small by
    // construction; saturation shows up as strictly shrinking increments
    // from the second one onward while the values stay under the ceiling
    let increments: Vec<f64> = betas.windows(2).map(|p| p[1] - p[0]).collect();
    for pair in increments[1..].windows(2) {
        assert!(
            pair[1] < pair[0] + 1e-9,
            "increments not shrinking toward the ceiling: {increments:?}"
        );
    }
    assert!(betas[4] > betas[1], "saturation trend requires growth");
    assert!(betas[4] <= TSIRELSON_BOUND + 1e-9);
}

#[test]
fn truncation_differences_decay() {
    // |beta(n_max) - beta(n_max + 4)| decreases in n_max at fixed r <= 1
    let opts = fast_opts();
    let r = 0.8;
    let beta = |n_max: usize| tmsv_chsh(r, n_max, &opts).unwrap().beta_pseudo;
    let d1 = (beta(7) - beta(11)).abs();
    let d2 = (beta(11) - beta(15)).abs();
    assert!(d2 <= d1 + 1e-12, "d1 {d1:e}, d2 {d2:e}");
}

#[test]
fn produced_covariances_respect_uncertainty() {
    for &(mass, gap) in &[(0.5, 1usize), (1.0, 2), (2.0, 3), (50.0, 2)] {
        let model = LatticeModel::new(32, 1.0, mass).unwrap();
        let (left, right) = complementary_wedge_pair(&model, gap).unwrap();
        let fl = SmearingFunction::edge_profile(&model, left);
        let fr = SmearingFunction::edge_profile(&model, right);
        let red = reduce_two_modes(&model, &fl, &fr).unwrap();
        // reduce_two_modes already guards; recheck through the public data
        let alpha = red.standard_form.alpha;
        let c_plus = red.standard_form.c_plus;
        assert!(alpha >= 1.0 - 1e-9, "mass {mass}: alpha {alpha}");
        assert!(c_plus.abs() <= alpha + 1e-9);
        assert!(red.squeeze_fit >= 0.0);
    }
}

#[test]
fn ceiling_holds_throughout_the_field_pipeline() {
    let (model, fl, fr) = standard_setup();
    for n_max in [5usize, 9, 13] {
        let out = wedge_chsh(&model, &fl, &fr, n_max, &fast_opts()).unwrap();
        assert!(out.chsh.beta_pseudo <= TSIRELSON_BOUND + 1e-9);
        assert!(out.chsh.beta_seesaw <= TSIRELSON_BOUND + 1e-9);
        assert!(out.chsh.beta_seesaw >= out.chsh.beta_pseudo - 1e-6);
    }
}
