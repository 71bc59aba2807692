//! Command implementations. Every command writes its results plus a
//! `manifest.json` into the output directory; `replay` re-executes a
//! manifest and reproduces the outputs byte for byte.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;

use chsh_lab::algebra::{BipartiteSplit, DensityState};
use chsh_lab::bell::{
    bell_operator, chsh_value, construct_maximal_pair, landau_norm, maximal_state,
    seesaw_maximize, AdmissibleQuadruple, SeesawOptions, TSIRELSON_BOUND,
};
use chsh_lab::exec;
use chsh_lab::field::{
    complementary_wedge_pair, tmsv_chsh, translate_smearing, wedge_chsh,
    weyl_vacuum_expectation, LatticeModel, SmearingFunction, WedgeChshOptions,
};
use chsh_lab::functor::{chsh_pullback_check, Monomorphism};
use chsh_lab::linalg::op_norm;
use chsh_lab::sampling::{random_projection, seeded_rng};
use chsh_lab::Error as CoreError;

use crate::io::{read_json, write_json, write_text, CliError};
use crate::manifest::RunManifest;
use crate::{
    ConstructArgs, LatticeArgs, MaximizeArgs, PushforwardArgs, ReplayArgs, ViolateArgs,
};

const CONSTRUCT_RETRIES: usize = 5;
const PUSHFORWARD_AGREEMENT: f64 = 1e-9;

#[derive(Serialize)]
struct ConstructReport {
    dim: usize,
    seed: u64,
    attempt: usize,
    bell_norm: f64,
    landau_norm: f64,
    max_violation: f64,
    tsirelson_bound: f64,
    within_tolerance: bool,
}

pub fn construct(args: &ConstructArgs) -> Result<(), CliError> {
    let dim = args.dim as usize;
    let rank = dim / 2;
    let mut last_commuting = None;
    for attempt in 0..CONSTRUCT_RETRIES {
        let mut rng = seeded_rng(args.seed.wrapping_add(attempt as u64));
        let pairs: Result<Vec<_>, _> = (0..2)
            .map(|_| {
                let e = random_projection(dim, rank, &mut rng);
                let f = random_projection(dim, rank, &mut rng);
                construct_maximal_pair(&e, &f, 1e-8)
            })
            .collect();
        match pairs {
            Err(CoreError::CommutingProjections { .. }) => {
                last_commuting = Some(attempt);
                continue;
            }
            Err(other) => return Err(other.into()),
            Ok(pairs) => {
                let [a_pair, b_pair]: [_; 2] = pairs.try_into().expect("two pairs");
                let quadruple = AdmissibleQuadruple::new(
                    BipartiteSplit::new(dim, dim)?,
                    a_pair.a1,
                    a_pair.a2,
                    b_pair.a1,
                    b_pair.a2,
                )?;
                let bell_norm = op_norm(&bell_operator(&quadruple));
                let landau = landau_norm(&quadruple)?;
                let (_, value) = maximal_state(&quadruple);
                let report = ConstructReport {
                    dim,
                    seed: args.seed,
                    attempt,
                    bell_norm,
                    landau_norm: landau,
                    max_violation: value.abs(),
                    tsirelson_bound: TSIRELSON_BOUND,
                    within_tolerance: (bell_norm - TSIRELSON_BOUND).abs() <= 1e-8
                        && (landau - TSIRELSON_BOUND).abs() <= 1e-8
                        && (value.abs() - TSIRELSON_BOUND).abs() <= 1e-8,
                };
                write_json(&args.out.join("quadruple.json"), &quadruple)?;
                write_json(&args.out.join("report.json"), &report)?;
                let mut parameters = BTreeMap::new();
                parameters.insert("dim".into(), dim.to_string());
                RunManifest::new("construct", parameters, args.seed, &args.out)
                    .save(&args.out)?;
                println!(
                    "construct dim={dim} seed={} attempt={attempt}: |C| = {bell_norm}, \
                     commutator route = {landau}, best state reaches {}",
                    args.seed,
                    value.abs()
                );
                return Ok(());
            }
        }
    }
    let _ = last_commuting;
    Err(CliError::RetriesExhausted {
        attempts: CONSTRUCT_RETRIES,
    })
}

#[derive(Serialize)]
struct ViolateReport {
    chsh_value: f64,
    beta: f64,
    bell_norm: f64,
    classical_bound: f64,
    tsirelson_bound: f64,
}

pub fn violate(args: &ViolateArgs) -> Result<(), CliError> {
    let quadruple: AdmissibleQuadruple = read_json(&args.quadruple)?;
    let state: DensityState = read_json(&args.state)?;
    let value = chsh_value(&state, &quadruple)?;
    let report = ViolateReport {
        chsh_value: value,
        beta: value / 2.0,
        bell_norm: op_norm(&bell_operator(&quadruple)),
        classical_bound: 2.0,
        tsirelson_bound: TSIRELSON_BOUND,
    };
    write_json(&args.out.join("report.json"), &report)?;
    let mut parameters = BTreeMap::new();
    parameters.insert("quadruple".into(), args.quadruple.display().to_string());
    parameters.insert("state".into(), args.state.display().to_string());
    RunManifest::new("violate", parameters, 0, &args.out).save(&args.out)?;
    println!("omega(C) = {value} (classical 2, ceiling {TSIRELSON_BOUND})");
    Ok(())
}

#[derive(Serialize)]
struct MaximizeReport {
    value: f64,
    beta: f64,
    seed: u64,
    restarts: usize,
    best_restart: usize,
    half_steps: usize,
    tsirelson_bound: f64,
}

pub fn maximize(args: &MaximizeArgs) -> Result<(), CliError> {
    let state: DensityState = read_json(&args.state)?;
    let split = BipartiteSplit::new(args.da as usize, args.db as usize)?;
    let opts = SeesawOptions {
        restarts: args.restarts,
        max_iters: args.max_iters,
        tol: args.tol,
        seed: args.seed,
        ..SeesawOptions::default()
    };
    let outcome = seesaw_maximize(&state, split, &opts)?;
    let report = MaximizeReport {
        value: outcome.value,
        beta: outcome.beta,
        seed: args.seed,
        restarts: args.restarts,
        best_restart: outcome.best_restart,
        half_steps: outcome.history.len(),
        tsirelson_bound: TSIRELSON_BOUND,
    };
    write_json(&args.out.join("quadruple.json"), &outcome.quadruple)?;
    write_json(&args.out.join("report.json"), &report)?;
    let mut parameters = BTreeMap::new();
    parameters.insert("state".into(), args.state.display().to_string());
    parameters.insert("da".into(), args.da.to_string());
    parameters.insert("db".into(), args.db.to_string());
    parameters.insert("restarts".into(), args.restarts.to_string());
    parameters.insert("max_iters".into(), args.max_iters.to_string());
    parameters.insert("tol".into(), args.tol.to_string());
    RunManifest::new("maximize", parameters, args.seed, &args.out).save(&args.out)?;
    println!(
        "see-saw best omega(C) = {} (beta = {}) from restart {}",
        outcome.value, outcome.beta, outcome.best_restart
    );
    Ok(())
}

#[derive(Serialize)]
struct PushforwardReport {
    lhs: f64,
    rhs: f64,
    difference: f64,
    tolerance: f64,
}

pub fn pushforward(args: &PushforwardArgs) -> Result<(), CliError> {
    let quadruple: AdmissibleQuadruple = read_json(&args.quadruple)?;
    let gamma_a: Monomorphism = read_json(&args.morphism_a)?;
    let gamma_b: Monomorphism = read_json(&args.morphism_b)?;
    let state: DensityState = read_json(&args.state)?;
    let (lhs, rhs) = chsh_pullback_check(&gamma_a, &gamma_b, &quadruple, &state)?;
    let difference = (lhs - rhs).abs();
    println!("lhs = {lhs}");
    println!("rhs = {rhs}");
    println!("|lhs - rhs| = {difference}");
    let report = PushforwardReport {
        lhs,
        rhs,
        difference,
        tolerance: PUSHFORWARD_AGREEMENT,
    };
    write_json(&args.out.join("report.json"), &report)?;
    let mut parameters = BTreeMap::new();
    parameters.insert("quadruple".into(), args.quadruple.display().to_string());
    parameters.insert("morphism_a".into(), args.morphism_a.display().to_string());
    parameters.insert("morphism_b".into(), args.morphism_b.display().to_string());
    parameters.insert("state".into(), args.state.display().to_string());
    RunManifest::new("pushforward", parameters, 0, &args.out).save(&args.out)?;
    if difference > PUSHFORWARD_AGREEMENT {
        return Err(CliError::AgreementFailed { difference });
    }
    Ok(())
}

fn parse_sweep(spec: &str) -> Result<Vec<f64>, CliError> {
    let malformed =
        || CliError::BadFlag(format!("sweep '{spec}' must look like r=START:END:STEP"));
    let rest = spec.strip_prefix("r=").ok_or_else(malformed)?;
    let parts: Vec<&str> = rest.split(':').collect();
    if parts.len() != 3 {
        return Err(malformed());
    }
    let start: f64 = parts[0].parse().map_err(|_| malformed())?;
    let end: f64 = parts[1].parse().map_err(|_| malformed())?;
    let step: f64 = parts[2].parse().map_err(|_| malformed())?;
    if !(step > 0.0) || end < start || start < 0.0 {
        return Err(malformed());
    }
    let count = ((end - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

fn lattice_setup(
    args: &LatticeArgs,
) -> Result<(LatticeModel, SmearingFunction, SmearingFunction), CliError> {
    let model = LatticeModel::new(args.sites as usize, 1.0, args.mass)?;
    let (left, right) = complementary_wedge_pair(&model, args.gap as usize)?;
    Ok((
        model,
        SmearingFunction::edge_profile(&model, left),
        SmearingFunction::edge_profile(&model, right),
    ))
}

pub fn lattice(args: &LatticeArgs) -> Result<(), CliError> {
    let (model, f_left, f_right) = lattice_setup(args)?;
    let n_max = args.nmax as usize;
    let opts = WedgeChshOptions {
        seesaw: SeesawOptions {
            seed: args.seed,
            ..SeesawOptions::default()
        },
        ..WedgeChshOptions::default()
    };

    // full pipeline at the fitted squeezing, then the same pipeline with both
    // smearings rigidly translated; the circulant vacuum makes the deviation
    // vanish up to rounding
    let base = wedge_chsh(&model, &f_left, &f_right, n_max, &opts)?;
    let (f_left_shifted, _) = translate_smearing(&f_left, args.shift);
    let (f_right_shifted, _) = translate_smearing(&f_right, args.shift);
    let shifted = wedge_chsh(&model, &f_left_shifted, &f_right_shifted, n_max, &opts)?;
    let weyl_base = weyl_vacuum_expectation(&model, &f_left);
    let weyl_shifted = weyl_vacuum_expectation(&model, &f_left_shifted);
    let shift_deviation = (base.chsh.beta_pseudo - shifted.chsh.beta_pseudo)
        .abs()
        .max((base.chsh.beta_seesaw - shifted.chsh.beta_seesaw).abs())
        .max(
            (base.reduction.squeeze_fit - shifted.reduction.squeeze_fit).abs(),
        )
        .max((weyl_base - weyl_shifted).abs());

    let squeeze_fit = base.reduction.squeeze_fit;
    let sweep_values = match &args.sweep {
        Some(spec) => parse_sweep(spec)?,
        None => vec![squeeze_fit],
    };

    let rows: Vec<Result<(f64, f64, f64), CoreError>> =
        exec::map_indexed(sweep_values.len(), args.jobs > 1, |i| {
            let r = sweep_values[i];
            let out = tmsv_chsh(r, n_max, &opts)?;
            Ok((r, out.beta_pseudo, out.beta_seesaw))
        });

    let mut csv = String::from("r,beta_pseudo,beta_seesaw,squeeze_fit,shift_deviation\n");
    for row in rows {
        let (r, beta_pseudo, beta_seesaw) = row?;
        csv.push_str(&format!(
            "{r},{beta_pseudo},{beta_seesaw},{squeeze_fit},{shift_deviation}\n"
        ));
    }
    write_text(&args.out.join("sweep.csv"), &csv)?;

    let mut parameters = BTreeMap::new();
    parameters.insert("sites".into(), args.sites.to_string());
    parameters.insert("mass".into(), args.mass.to_string());
    parameters.insert("gap".into(), args.gap.to_string());
    parameters.insert("shift".into(), args.shift.to_string());
    parameters.insert("nmax".into(), args.nmax.to_string());
    if let Some(spec) = &args.sweep {
        parameters.insert("sweep".into(), spec.clone());
    }
    parameters.insert("jobs".into(), args.jobs.to_string());
    RunManifest::new("lattice", parameters, args.seed, &args.out).save(&args.out)?;
    println!(
        "lattice N={} m={} gap={}: squeeze fit {} over {} row(s), translation deviation {shift_deviation:e}",
        args.sites,
        args.mass,
        args.gap,
        squeeze_fit,
        sweep_values.len()
    );
    Ok(())
}

pub fn replay(args: &ReplayArgs) -> Result<(), CliError> {
    let manifest = RunManifest::load(&args.manifest)?;
    let out = args
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(&manifest.results_path));
    dispatch_manifest(&manifest, &out)
}

fn dispatch_manifest(manifest: &RunManifest, out: &Path) -> Result<(), CliError> {
    match manifest.command.as_str() {
        "construct" => construct(&ConstructArgs {
            dim: manifest.parsed("dim")?,
            seed: manifest.seed,
            out: out.to_path_buf(),
        }),
        "violate" => violate(&ViolateArgs {
            quadruple: PathBuf::from(manifest.parameter("quadruple")?),
            state: PathBuf::from(manifest.parameter("state")?),
            out: out.to_path_buf(),
        }),
        "maximize" => maximize(&MaximizeArgs {
            state: PathBuf::from(manifest.parameter("state")?),
            da: manifest.parsed("da")?,
            db: manifest.parsed("db")?,
            restarts: manifest.parsed("restarts")?,
            max_iters: manifest.parsed("max_iters")?,
            tol: manifest.parsed("tol")?,
            seed: manifest.seed,
            out: out.to_path_buf(),
        }),
        "pushforward" => pushforward(&PushforwardArgs {
            quadruple: PathBuf::from(manifest.parameter("quadruple")?),
            morphism_a: PathBuf::from(manifest.parameter("morphism_a")?),
            morphism_b: PathBuf::from(manifest.parameter("morphism_b")?),
            state: PathBuf::from(manifest.parameter("state")?),
            out: out.to_path_buf(),
        }),
        "lattice" => lattice(&LatticeArgs {
            sites: manifest.parsed("sites")?,
            mass: manifest.parsed("mass")?,
            gap: manifest.parsed("gap")?,
            shift: manifest.parsed("shift")?,
            nmax: manifest.parsed("nmax")?,
            sweep: manifest.parameters.get("sweep").cloned(),
            seed: manifest.seed,
            out: out.to_path_buf(),
            jobs: manifest.parsed("jobs")?,
        }),
        other => Err(CliError::BadFlag(format!(
            "manifest records unknown command '{other}'"
        ))),
    }
}
