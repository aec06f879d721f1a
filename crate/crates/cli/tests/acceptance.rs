//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails.

mod common;

use std::process::Command;

use clap::Parser;
use serde_json::Value;

use trapent::schmidt::{converge, schmidt_spectrum, RadialGrid, SchmidtSpectrum, Tolerances};
use trapent::spectrum::{energy_of_inv_a, shooting_oracle};
use trapent::wavefunction::TwoBodyState;
use trapent_cli::args::Cli;

use common::{rdm_schmidt, OracleGrid};

const L_MAX: usize = 30;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn ground(inv_a: f64) -> TwoBodyState {
    TwoBodyState::trap(energy_of_inv_a(inv_a, 0).unwrap())
}

fn default_spectrum(state: &TwoBodyState) -> SchmidtSpectrum {
    schmidt_spectrum(state, &RadialGrid::default(), L_MAX).unwrap()
}

fn within(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol
}

/// Completeness defects gathered along the way for criterion 6.
#[derive(Default)]
struct Defects(Vec<(String, f64)>);

fn unitarity_values(defects: &mut Defects) -> Outcome {
    let cli = Cli::try_parse_from(["trapent", "unitarity"]).unwrap();
    let doc: Value = serde_json::from_str(&trapent_cli::execute(&cli).unwrap()).unwrap();
    let k: Vec<f64> = (0..3)
        .map(|i| doc[format!("K_1{i}")].as_f64().unwrap())
        .collect();
    for (i, s) in doc["states"].as_array().unwrap().iter().enumerate() {
        defects.0.push((
            format!("unitarity k={i}"),
            s["completeness_defect"].as_f64().unwrap(),
        ));
    }
    let agree = doc["states"]
        .as_array()
        .unwrap()
        .iter()
        .all(|s| s["agrees"].as_bool() == Some(true));
    let pass = within(k[0], 1.98, 0.02) && within(k[1], 3.45, 0.05) && within(k[2], 9.11, 0.15);
    outcome(
        pass && agree,
        format!(
            "K_10 = {:.5} (1.98 ± 0.02), K_11 = {:.5} (3.45 ± 0.05), K_12 = {:.5} (9.11 ± 0.15), branch route agrees: {agree}",
            k[0], k[1], k[2]
        ),
    )
}

fn attractive_ground(defects: &mut Defects) -> Outcome {
    let s = default_spectrum(&ground(-2.0));
    defects
        .0
        .push(("ground 1/a=-2".into(), s.completeness_defect));
    let p10 = s.entry(1, 0).map_or(0.0, |e| e.channel_prob);
    let k_ok = within(s.k, 1.2, 0.05);
    let p_ok = within(p10, 0.70, 0.03);
    outcome(
        k_ok && p_ok,
        format!(
            "K = {:.5} (1.2 ± 0.05: {}), p(1,0) = {:.4} (0.70 ± 0.03: {}); note K ≥ 1/max p, so K ≤ 1.25 requires max p ≥ 0.8",
            s.k,
            if k_ok { "ok" } else { "off" },
            p10,
            if p_ok { "ok" } else { "off" }
        ),
    )
}

fn repulsive_ground(defects: &mut Defects) -> Outcome {
    let tol = Tolerances::default();
    match converge(&ground(2.0), &RadialGrid::default(), 25, &tol) {
        Ok((s, report)) => {
            defects
                .0
                .push(("ground 1/a=2".into(), s.completeness_defect));
            let at = |l: usize| report.trace.iter().find(|p| p.l_max == l).map(|p| p.k);
            let (k25, k30) = (at(25), at(30));
            let dk = match (k25, k30) {
                (Some(a), Some(b)) => (b - a).abs(),
                _ => f64::INFINITY,
            };
            outcome(
                within(s.k, 10.13, 0.3) && dk < 1e-2,
                format!(
                    "K = {:.5} (10.13 ± 0.3), |K(30) - K(25)| = {dk:.2e} (< 1e-2), K at dr = {} is {:.5}",
                    s.k, report.grid_check.dr_fine, report.grid_check.k_fine
                ),
            )
        }
        Err(e) => outcome(false, format!("convergence failed: {e}")),
    }
}

fn condition_consistency() -> Outcome {
    let mut worst: f64 = 0.0;
    for b in 0..3 {
        for x in [-4.0, -2.0, -1.0, 0.0, 1.0, 2.0] {
            let e = energy_of_inv_a(x, b).unwrap().energy;
            let s = shooting_oracle(x, b).unwrap();
            worst = worst.max((e - s).abs());
        }
    }
    let unit: Vec<f64> = (0..3)
        .map(|b| energy_of_inv_a(0.0, b).unwrap().energy)
        .collect();
    let unit_ok = unit
        .iter()
        .zip([0.5, 2.5, 4.5])
        .all(|(e, t)| (e - t).abs() < 1e-8);
    let e_neg = energy_of_inv_a(-1e6, 0).unwrap().energy;
    let e_pos = energy_of_inv_a(1e6, 1).unwrap().energy;
    let e10 = energy_of_inv_a(10.0, 0).unwrap().energy;
    let pass = worst < 1e-6
        && unit_ok
        && (e_neg - 1.5).abs() < 1e-4
        && (e_pos - 1.5).abs() < 1e-4
        && (e10 / -50.0 - 1.0).abs() < 0.02;
    outcome(
        pass,
        format!(
            "max |E - E_shoot| = {worst:.1e}; E(0) = {:?}; E(-1e6, b=0) = {e_neg:.7}, E(+1e6, b=1) = {e_pos:.7}; E(10) = {e10:.4}",
            unit
        ),
    )
}

fn closed_forms() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for k in 0..3 {
        let closed = TwoBodyState::unitarity(k).unwrap();
        let trap = TwoBodyState::trap(energy_of_inv_a(0.0, k).unwrap());
        for i in 0..10 {
            for j in 0..10 {
                for c in 0..10 {
                    let r1 = 0.07 + 0.31 * i as f64;
                    let r2 = 0.03 + 0.29 * j as f64;
                    let cg = -0.97 + 0.213 * c as f64;
                    let a = closed.psi_full(r1, r2, cg).unwrap();
                    let b = trap.psi_full(r1, r2, cg).unwrap();
                    worst = worst.max((a - b).abs() / a.abs().max(1e-300));
                    count += 1;
                }
            }
        }
    }
    outcome(
        worst < 1e-6,
        format!("{count} points (1000 per state), max relative difference {worst:.1e}"),
    )
}

fn completeness(defects: &Defects) -> Outcome {
    let product = default_spectrum(&TwoBodyState::noninteracting().unwrap());
    let product_ok = (product.k - 1.0).abs() < 1e-3
        && product.entropy.abs() < 1e-3
        && product.completeness_defect.abs() < 1e-3;
    let mut parts = vec![format!(
        "product: K = {:.6}, S = {:.1e}, defect = {:.1e}",
        product.k, product.entropy, product.completeness_defect
    )];
    let mut pass = product_ok;
    for (name, d) in &defects.0 {
        pass &= d.abs() <= 1e-3;
        parts.push(format!("{name}: defect = {d:.2e}"));
    }
    parts.push(format!("all at l_max = {L_MAX}"));
    outcome(pass, parts.join("; "))
}

fn oracle_equivalence() -> Outcome {
    let st = ground(-2.0);
    let start = std::time::Instant::now();
    let oracle = rdm_schmidt(&st, &OracleGrid::default());
    let secs = start.elapsed().as_secs_f64();
    let pipe = schmidt_spectrum(&st, &RadialGrid::new(0.1, 2.5).unwrap(), 8).unwrap();
    let rel = (oracle.k / pipe.k - 1.0).abs();
    outcome(
        rel < 0.05 && secs < 60.0,
        format!(
            "oracle K = {:.5} (norm {:.5}), pipeline K = {:.5}, relative difference {rel:.2e}, oracle time {secs:.1} s",
            oracle.k, oracle.total, pipe.k
        ),
    )
}

fn figure_regression() -> Outcome {
    let k =
        |x: f64, b: usize| default_spectrum(&TwoBodyState::trap(energy_of_inv_a(x, b).unwrap())).k;
    let mut pass = true;
    let mut parts = Vec::new();
    for (b, name) in [(1, "B"), (2, "C")] {
        let (km4, km2, kp2, kp4) = (k(-4.0, b), k(-2.0, b), k(2.0, b), k(4.0, b));
        let neg = (km4 / km2 - 1.0).abs();
        let pos = (kp4 / kp2 - 1.0).abs();
        let window = (kp2 / km2 - 1.0).abs();
        pass &= neg < 0.02 && pos < 0.02 && window > 0.10;
        parts.push(format!(
            "{name}: K(-4) = {km4:.4}, K(-2) = {km2:.4}, K(2) = {kp2:.4}, K(4) = {kp4:.4}; change -4/-2 {:.1}%, +4/+2 {:.1}%, across window {:.1}%",
            100.0 * neg,
            100.0 * pos,
            100.0 * window
        ));
    }
    let xs = [0.0, 0.5, 1.0, 1.5, 2.0];
    let ks: Vec<f64> = xs.iter().map(|&x| k(x, 0)).collect();
    let mono = ks.windows(2).all(|w| w[1] > w[0]);
    pass &= mono;
    parts.push(format!(
        "branch 0 on [0, 2]: {} (monotone: {mono})",
        ks.iter()
            .map(|v| format!("{v:.4}"))
            .collect::<Vec<_>>()
            .join(", ")
    ));
    outcome(pass, parts.join("; "))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let runs: [&[&str]; 6] = [
        &["spectrum-sweep", "--e-range", "-3:6:91"],
        &["density", "--inv-a", "-2,0,2", "--dr", "0.05"],
        &["schmidt", "--inv-a", "-2", "--dr", "0.05", "--l-max", "8"],
        &[
            "k-sweep",
            "--inv-a-range",
            "-1:1:3",
            "--dr",
            "0.1",
            "--l-max",
            "6",
        ],
        &["unitarity", "--dr", "0.1", "--l-max", "6"],
        &[
            "modes",
            "--inv-a",
            "1",
            "--dr",
            "0.05",
            "--modes",
            "1:0,1:1,2:0",
        ],
    ];
    let mut bad = Vec::new();
    for (i, args) in runs.iter().enumerate() {
        let mut outputs = Vec::new();
        for (rep, jobs) in ["1", "4"].iter().enumerate() {
            let path = dir.path().join(format!("run{i}_{rep}"));
            let status = Command::new(env!("CARGO_BIN_EXE_trapent"))
                .args(*args)
                .args(["--jobs", jobs, "--out"])
                .arg(&path)
                .status()
                .unwrap();
            assert!(status.success(), "{args:?} failed");
            outputs.push(std::fs::read(&path).unwrap());
        }
        if outputs[0] != outputs[1] {
            bad.push(args[0]);
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            "six commands, two runs each with 1 and 4 threads, byte-identical".into()
        } else {
            format!("outputs differ for {bad:?}")
        },
    )
}

fn main() {
    let mut defects = Defects::default();
    // evaluated in order: criterion 6 reads the defects gathered by 1 to 3
    let results: Vec<(usize, &str, Outcome)> = vec![
        (
            1,
            "unitarity Schmidt numbers",
            unitarity_values(&mut defects),
        ),
        (
            2,
            "ground state at 1/a = -2",
            attractive_ground(&mut defects),
        ),
        (3, "ground state at 1/a = 2", repulsive_ground(&mut defects)),
        (
            4,
            "eigenvalue condition consistency",
            condition_consistency(),
        ),
        (5, "closed-form cross-check", closed_forms()),
        (6, "completeness", completeness(&defects)),
        (7, "reduced-density oracle", oracle_equivalence()),
        (8, "K against 1/a regression", figure_regression()),
        (9, "determinism", determinism()),
    ];

    let mut failed = 0;
    for (n, name, o) in &results {
        println!(
            "criterion {n} [{}] {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    println!(
        "{} of {} criteria pass",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
