//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always show up in `cargo test` output.

mod common;

use std::time::Instant;

use common::*;
use effectkit::fracfun::{
    f_eval, fit_frac, g_symmetry_check, lattice, rigidity_probe, verify_pexider, FracParams,
    RigidityKind,
};
use effectkit::numkern::psd_leq;
use effectkit::numkern::random::{
    random_effect_with, random_psd_with, random_unit_vector_with, trial_rng, SeededRng,
};
use effectkit::sequential::seq_zero_iff_zero;
use effectkit::verify::{
    off_identity_pair, orthogonal_pair, two_block_instance, verify_order, verify_ortho,
    verify_sequential, verify_transition, verify_zero_product,
};
use effectkit::*;
use effectkit_cli::io::{to_json, MatrixDocument};
use rand::Rng;

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn effect(n: usize, rng: &mut SeededRng) -> Effect {
    Effect::new(&random_effect_with(n, rng), &tol()).expect("random effect")
}

fn ray(n: usize, rng: &mut SeededRng) -> RayProjection {
    RayProjection::new(&random_unit_vector_with(n, rng)).expect("random ray")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

const DIMS: [usize; 4] = [2, 3, 4, 5];
const PS: [f64; 5] = [-3.0, -1.0, 0.0, 0.5, 0.9];

fn automorphism_cell(k: usize) -> (usize, f64, bool) {
    let cell = k % 40;
    (DIMS[cell / 10], PS[(cell / 2) % 5], cell % 2 == 1)
}

fn converse_biconditionals() -> Outcome {
    let start = Instant::now();
    let t = tol().scaled(10.0).map_err(err)?;
    let mut pairs = 0;
    for k in 0..100 {
        let (n, p, conj) = automorphism_cell(k);
        let mut rng = trial_rng(2024, k as u64);
        let phi = EffectAutomorphism::random(n, conj, FpParam::new(p).map_err(err)?, &mut rng);
        let order = verify_order(&phi, 50, k as u64, &t);
        let zero = verify_zero_product(&phi, 50, k as u64, &t);
        for r in [&order, &zero] {
            ensure(r.failures == 0, || {
                format!(
                    "{} failed for {}: {:?}",
                    r.suite,
                    phi.name(),
                    r.counterexample
                )
            })?;
        }
        pairs += 2 * 50 + 3 * 50;
    }
    let elapsed = start.elapsed().as_secs_f64();
    ensure(elapsed < 30.0, || format!("took {elapsed:.1}s"))?;
    let control = verify_order(&OrthocomplementMap { n: 3 }, 50, 1, &t);
    ensure(control.failures > 0, || {
        "orthocomplement control passed the order suite".into()
    })?;
    let control = verify_zero_product(&ShrinkMap { n: 3 }, 50, 1, &t);
    ensure(control.failures > 0, || {
        "shrink control passed the zero-product suite".into()
    })?;
    Ok(format!(
        "100 automorphisms, {pairs} pairs, 0 failures in {elapsed:.2}s; negative controls caught"
    ))
}

fn strength_oracle() -> Outcome {
    let t = tol();
    let mut rng = trial_rng(7, 0);
    let (mut checked, mut skipped, mut worst) = (0, 0, 0.0_f64);
    while checked < 500 {
        let n = rng.random_range(2..=6);
        let a = effect(n, &mut rng);
        let r = ray(n, &mut rng);
        let closed = strength_closed(&a, &r, &t).map_err(err)?;
        if closed.near_threshold {
            skipped += 1;
            continue;
        }
        let gap = (closed.value - strength_bisect(&a, &r, &t).map_err(err)?).abs();
        worst = worst.max(gap);
        ensure(gap <= 1e-6, || format!("oracle gap {gap:e} at n={n}"))?;
        checked += 1;
    }
    let mut worst_block = 0.0_f64;
    for i in 0..200 {
        let n = 2 + i % 5;
        let (mu, p, q, r) = two_block_instance(n, &mut rng).map_err(err)?;
        let formula = strength_two_block(mu, &p, &q, &r, &t).map_err(err)?;
        let e = Effect::new(
            &(&p.projection().matrix().scale(mu) + q.projection().matrix()),
            &t,
        )
        .map_err(err)?;
        let closed = strength_closed(&e, &r, &t).map_err(err)?.value;
        let gap = (formula - closed).abs();
        worst_block = worst_block.max(gap);
        ensure(gap <= 1e-8, || format!("two-block gap {gap:e}"))?;
    }
    Ok(format!(
        "500 oracle pairs (worst {worst:.1e}, {skipped} near-threshold skipped); 200 two-block (worst {worst_block:.1e})"
    ))
}

fn weak_atom_maximality() -> Outcome {
    let t = tol();
    let mut rng = trial_rng(8, 0);
    let mut strict = 0;
    for i in 0..300 {
        let n = rng.random_range(2..=6);
        let a = if i % 3 == 0 {
            let rank = rng.random_range(1..n);
            Effect::new(&random_psd_with(n, rank, &mut rng), &t).map_err(err)?
        } else {
            effect(n, &mut rng)
        };
        let r = ray(n, &mut rng);
        let lambda = strength_closed(&a, &r, &t).map_err(err)?.value;
        let p = r.projection().matrix();
        ensure(
            psd_leq(&p.scale(lambda), a.matrix(), &t).map_err(err)?,
            || format!("λP ≤ A fails at λ={lambda}"),
        )?;
        if lambda < 1.0 - 1e-5 {
            strict += 1;
            ensure(
                !psd_leq(&p.scale(lambda + 1e-5), a.matrix(), &t).map_err(err)?,
                || format!("(λ+1e-5)P ≤ A holds at λ={lambda}"),
            )?;
        }
    }
    Ok(format!("300 trials, {strict} with the strict step checked"))
}

fn douglas_characterization() -> Outcome {
    let t = tol();
    let mut rng = trial_rng(9, 0);
    let mut ordered = 0;
    for i in 0..300 {
        let n = rng.random_range(2..=5);
        let b = effect(n, &mut rng);
        let a = if i % 2 == 0 {
            seq_product(&b, &effect(n, &mut rng), &t).map_err(err)?
        } else {
            effect(n, &mut rng)
        };
        let leq = a.leq(&b, &t).map_err(err)?;
        ordered += leq as usize;
        ensure(order_via_seq(&a, &b, &t) == leq, || {
            format!("disagreement on pair {i}")
        })?;
    }
    let mut worst = 0.0_f64;
    let mut singular = 0;
    for _ in 0..300 {
        let n = rng.random_range(2..=5);
        let rank = rng.random_range(1..=n);
        singular += (rank < n) as usize;
        let b = Effect::new(&random_psd_with(n, rank, &mut rng), &t).map_err(err)?;
        let a = seq_product(&b, &effect(n, &mut rng), &t).map_err(err)?;
        let q = douglas_quotient(&a, &b, &t).map_err(err)?;
        let back = seq_product(&b, &q.quotient, &t).map_err(err)?;
        let residual = back.distance(&a);
        worst = worst.max(residual);
        ensure(residual <= 1e-7, || format!("residual {residual:e}"))?;
    }
    Ok(format!(
        "300 mixed pairs agree ({ordered} ordered); 300 round trips ({singular} singular B), worst residual {worst:.1e}"
    ))
}

fn sequential_zero_equivalence() -> Outcome {
    let t = tol();
    let mut rng = trial_rng(10, 0);
    let mut zeros = 0;
    for i in 0..300 {
        let n = rng.random_range(2..=6);
        let (a, b) = match i % 3 {
            0 => orthogonal_pair(n, &mut rng, &t).map_err(err)?,
            1 => {
                let (a, _) = orthogonal_pair(n, &mut rng, &t).map_err(err)?;
                (a.clone(), a)
            }
            _ => (effect(n, &mut rng), effect(n, &mut rng)),
        };
        let (seq_zero, plain_zero) = seq_zero_iff_zero(&a, &b, &t).map_err(err)?;
        zeros += seq_zero as usize;
        ensure(seq_zero == plain_zero, || {
            format!("disagreement on trial {i}")
        })?;
    }
    ensure(zeros == 100, || {
        format!("expected 100 zero pairs, saw {zeros}")
    })?;
    Ok(format!("300 trials, 0 disagreements ({zeros} zero pairs)"))
}

fn pexider_machinery() -> Outcome {
    let mut rng = trial_rng(11, 0);
    let (mut worst_fe, mut worst_fit) = (0.0_f64, 0.0_f64);
    for _ in 0..50 {
        let a: f64 = rng.random_range(0.1..10.0);
        let c: f64 = rng.random_range(0.2..5.0);
        let f = FracParams::new(a, 1.0, c).map_err(err)?;
        let fe = verify_pexider(&f, &f, 20);
        worst_fe = worst_fe.max(fe);
        ensure(fe <= 1e-10, || {
            format!("FE residual {fe:e} at a={a}, c={c}")
        })?;
        let samples: Vec<(f64, f64)> = lattice(50)
            .into_iter()
            .map(|x| f_eval(&f, x).map(|y| (x, y)))
            .collect::<Result<_>>()
            .map_err(err)?;
        let fit = fit_frac(&samples).map_err(err)?;
        let e = (fit.params.a - a).abs().max((fit.params.c - c).abs());
        worst_fit = worst_fit.max(e);
        ensure(e <= 1e-6, || format!("fit error {e:e} at a={a}, c={c}"))?;
    }
    ensure(g_symmetry_check(1.0, 1.0, 20), || {
        "g symmetry rejects (1, 1)".into()
    })?;
    for _ in 0..50 {
        let (b, c) = off_identity_pair(&mut rng);
        ensure(!g_symmetry_check(b, c, 20), || {
            format!("g symmetry accepts ({b}, {c})")
        })?;
    }
    Ok(format!(
        "50 instances: worst FE {worst_fe:.1e}, worst fit error {worst_fit:.1e}; (1,1) accepted, 50 off-identity rejected"
    ))
}

fn rigidity_trichotomy() -> Outcome {
    let t = tol();
    let kinds = [
        RigidityKind::Symmetry,
        RigidityKind::FixedPoint,
        RigidityKind::Multiplicative,
    ];
    let mut worst_fit = 0.0_f64;
    for (k, &p) in [0.0, -1.0, 0.1, 0.5, 0.9].iter().enumerate() {
        let fp = FpParam::new(p).map_err(err)?;
        let mut rng = trial_rng(12, k as u64);
        let phi = EffectAutomorphism::random(3, k % 2 == 1, fp, &mut rng);
        let ortho = verify_ortho(&phi, 20, 1, &t);
        let seq = verify_sequential(&phi, 20, 1, &t);
        let fit = fit_p(&phi, 20, &t).map_err(err)?;
        worst_fit = worst_fit.max((fit.p - p).abs());
        ensure((fit.p - p).abs() <= 1e-6, || {
            format!("fit_p gave {} for p={p}", fit.p)
        })?;
        if p == 0.0 {
            ensure(ortho.failures == 0 && seq.failures == 0, || {
                "p=0 suites failed".into()
            })?;
            ensure(fit.p.abs() <= 1e-6, || "p=0 not recovered".into())?;
            for kind in kinds {
                ensure(rigidity_probe(fp, kind, 100).is_none(), || {
                    format!("{kind:?} probe fails at p=0")
                })?;
            }
        } else {
            ensure(ortho.failures > 0 && seq.failures > 0, || {
                format!("no suite counterexample at p={p}")
            })?;
            for kind in kinds {
                ensure(rigidity_probe(fp, kind, 100).is_some(), || {
                    format!("{kind:?} probe found nothing at p={p}")
                })?;
            }
        }
    }
    let control = fit_p(&SquareMap { n: 2 }, 20, &t);
    ensure(matches!(control, Err(Error::NotInFamily { .. })), || {
        "square map was fitted into the family".into()
    })?;
    Ok(format!(
        "p=0 preserves everything; p in {{-1,0.1,0.5,0.9}} all witnessed; worst fit_p error {worst_fit:.1e}"
    ))
}

fn transition_preservation() -> Outcome {
    let t = tol();
    let mut maps = 0;
    let mut worst = 0.0_f64;
    for (k, &p) in PS.iter().enumerate() {
        for conj in [false, true] {
            let mut rng = trial_rng(13, (2 * k + conj as usize) as u64);
            let n = 2 + (k % 4);
            let phi = EffectAutomorphism::random(n, conj, FpParam::new(p).map_err(err)?, &mut rng);
            let r = verify_transition(&phi, 300, k as u64, &t);
            worst = worst.max(r.worst_violation);
            ensure(r.failures == 0, || {
                format!("{}: {:?}", phi.name(), r.counterexample)
            })?;
            maps += 1;
        }
    }
    Ok(format!(
        "{maps} maps × 300 ray pairs, worst gap {worst:.1e}"
    ))
}

fn scalar_action_independence() -> Outcome {
    let t = tol();
    let mut worst_spread = 0.0_f64;
    for k in 0..10 {
        let mut rng = trial_rng(14, k);
        let n = rng.random_range(2..=5);
        let p: f64 = rng.random_range(-3.0..0.95);
        let fp = FpParam::new(p).map_err(err)?;
        let phi = EffectAutomorphism::random(n, rng.random(), fp, &mut rng);
        let rays: Vec<RayProjection> = (0..10).map(|_| ray(n, &mut rng)).collect();
        for x in lattice(10) {
            let values: Vec<f64> = rays
                .iter()
                .map(|r| extract_scalar_action(&phi, r, x, &t))
                .collect::<Result<_>>()
                .map_err(err)?;
            let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            worst_spread = worst_spread.max(hi - lo);
            ensure(hi - lo <= 1e-9, || {
                format!("spread {:e} at t={x}, p={p}", hi - lo)
            })?;
            let want = fp.eval(x).map_err(err)?;
            ensure((values[0] - want).abs() <= 1e-9, || {
                format!("f_P({x}) != f_p({x})")
            })?;
        }
    }
    Ok(format!(
        "10 maps × 10 rays × 10 values, worst spread {worst_spread:.1e}"
    ))
}

fn cli_contract() -> Outcome {
    let dir = tempfile::tempdir().map_err(err)?;
    let d = dir.path();
    let s = |p: &std::path::Path| p.to_str().unwrap().to_string();

    // strength
    let a = write(d, "a.json", &diag_doc(&[0.5, 1.0]));
    let e1 = write(d, "e1.json", &ray_doc(&[1.0, 0.0]));
    let out = run(&["strength", "--effect", &s(&a), "--ray", &s(&e1), "--oracle"]);
    ensure(code(&out) == 0 && stdout_json(&out)["value"] == 0.5, || {
        "strength".into()
    })?;
    let r3 = write(d, "r3.json", &ray_doc(&[1.0, 0.0, 0.0]));
    ensure(
        code(&run(&["strength", "--effect", &s(&a), "--ray", &s(&r3)])) == 2,
        || "strength dimension mismatch exit code".into(),
    )?;

    // verify: determinism, 0 / 1 / 2
    let (j1, j2) = (d.join("r1.json"), d.join("r2.json"));
    for j in [&j1, &j2] {
        let out = run(&[
            "verify",
            "--suite",
            "all",
            "--p",
            "0,0.5",
            "--trials",
            "10",
            "--seed",
            "1",
            "--json",
            &s(j),
        ]);
        ensure(code(&out) == 0, || "verify all exit code".into())?;
    }
    let (b1, b2) = (
        std::fs::read(&j1).map_err(err)?,
        std::fs::read(&j2).map_err(err)?,
    );
    ensure(b1 == b2, || {
        "verify reports differ between identical runs".into()
    })?;
    let report: effectkit_cli::RunReport = serde_json::from_slice(&b1).map_err(err)?;
    ensure(report.overall == effectkit_cli::Overall::Pass, || {
        "overall".into()
    })?;
    ensure(code(&run(&["verify", "--suite", "nonsense"])) == 2, || {
        "unknown suite".into()
    })?;
    let out = run(&[
        "verify", "--suite", "ortho", "--p", "0.5", "--expect", "preserve", "--trials", "3",
    ]);
    ensure(code(&out) == 1, || "failing verify exit code".into())?;

    // apply
    let m = write(d, "m.json", &map_doc(&[1.0, 1.0], false, 0.5));
    let h = write(d, "h.json", &diag_doc(&[0.5, 0.5]));
    let out = run(&["apply", "--map", &s(&m), "--effect", &s(&h)]);
    let img: MatrixDocument = serde_json::from_slice(&out.stdout).map_err(err)?;
    ensure((img.rows[0][0][0] - 2.0 / 3.0).abs() < 1e-12, || {
        "apply image".into()
    })?;
    let nu = write(d, "nu.json", &map_doc(&[1.0, 0.5], false, 0.0));
    ensure(
        code(&run(&["apply", "--map", &s(&nu), "--effect", &s(&h)])) == 2,
        || "non-unitary exit code".into(),
    )?;

    // fit
    let out = run(&["fit", "--map", &s(&m)]);
    ensure(
        (stdout_json(&out)["p"].as_f64().unwrap_or(9.0) - 0.5).abs() <= 1e-6,
        || "fit".into(),
    )?;
    ensure(
        code(&run(&["fit", "--control", "square", "--dim", "2"])) == 1,
        || "not-in-family exit code".into(),
    )?;

    // JSON round trip
    let text = r#"{"n":2,"rows":[[[0.1,0],[0.2,-0.3]],[[0.2,0.3],[0.4,0]]]}"#;
    let doc: MatrixDocument = serde_json::from_str(text).map_err(err)?;
    let again: MatrixDocument = serde_json::from_str(&to_json(&doc)).map_err(err)?;
    ensure(doc == again, || "MatrixDocument round trip".into())?;
    Ok("strength/verify/apply/fit end to end; exit codes 0/1/2; byte-identical reports; JSON round trip".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "automorphisms preserve order and zero products",
            converse_biconditionals,
        ),
        ("strength closed form matches oracles", strength_oracle),
        ("weak-atom maximality", weak_atom_maximality),
        (
            "order via sequential factorization",
            douglas_characterization,
        ),
        (
            "sequential zero-product equivalence",
            sequential_zero_equivalence,
        ),
        ("Pexider solution family and fitting", pexider_machinery),
        ("rigidity trichotomy", rigidity_trichotomy),
        (
            "transition probability preservation",
            transition_preservation,
        ),
        (
            "scalar action independent of the ray",
            scalar_action_independence,
        ),
        ("command-line contract", cli_contract),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS  {:>2}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {:>2}. {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
