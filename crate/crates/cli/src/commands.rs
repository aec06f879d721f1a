use rayon::prelude::*;
use serde_json::{json, Map, Value};

use trapent::schmidt::{
    assemble_spectrum, converge, decompose_state, schmidt_spectrum, ConvergenceReport, RadialGrid,
    SchmidtSpectrum, Tolerances,
};
use trapent::spectrum::{energy_of_inv_a, inv_a_of_energy};
use trapent::wavefunction::TwoBodyState;

use crate::args::{
    ChannelArgs, DensityArgs, Format, GridArgs, KSweepArgs, ModesArgs, SchmidtArgs,
    SpectrumSweepArgs, UnitarityArgs,
};
use crate::output::{json_num, render_json, Cell, Provenance, Table};
use crate::CliError;

/// Energies closer than this to a noninteracting level are skipped.
pub const POLE_EXCLUSION: f64 = 1e-3;

/// Branch 0 is cut above this 1/a in `k-sweep`, where K grows without bound.
pub const GROUND_TRUNCATION: f64 = 2.0;

/// Two routes to the unitarity states must agree on K to this relative level.
pub const CROSS_CHECK_TOL: f64 = 1e-2;

fn render(table: &Table, prov: &Provenance, format: Format) -> String {
    match format {
        Format::Csv => table.csv(prov),
        Format::Json => render_json(&table.json(prov)),
    }
}

fn grid_of(g: &GridArgs) -> Result<RadialGrid, CliError> {
    Ok(RadialGrid::new(g.dr, g.r_max)?)
}

fn near_pole(e: f64) -> bool {
    let k = ((e - 1.5) / 2.0).round().max(0.0);
    (e - (1.5 + 2.0 * k)).abs() < POLE_EXCLUSION
}

/// Index of the branch whose energy interval holds `e`.
fn branch_of_energy(e: f64) -> i64 {
    if e < 1.5 {
        0
    } else {
        ((e - 1.5) / 2.0).floor() as i64 + 1
    }
}

pub fn spectrum_sweep(a: &SpectrumSweepArgs, format: Format) -> Result<String, CliError> {
    let energies = if a.energy.is_empty() {
        a.e_range.values()
    } else {
        a.energy.clone()
    };
    let mut table = Table {
        columns: vec!["E".into(), "inv_a".into(), "branch".into()],
        rows: Vec::new(),
    };
    for &e in energies.iter().filter(|&&e| !near_pole(e)) {
        table.rows.push(vec![
            Cell::Num(e),
            Cell::Num(inv_a_of_energy(e)?),
            Cell::Int(branch_of_energy(e)),
        ]);
    }
    if table.rows.is_empty() {
        return Err(CliError::Usage(
            "every requested energy lies within the pole exclusion".into(),
        ));
    }
    let prov = Provenance {
        extra: vec![(
            "pole_exclusion".into(),
            format!("|E - (3/2 + 2k)| < {POLE_EXCLUSION}"),
        )],
        ..Provenance::default()
    };
    Ok(render(&table, &prov, format))
}

pub fn density(a: &DensityArgs, format: Format) -> Result<String, CliError> {
    let grid = grid_of(&a.grid)?;
    let points = grid.points();
    let states = a
        .inv_a
        .iter()
        .map(|&x| energy_of_inv_a(x, a.branch))
        .collect::<Result<Vec<_>, _>>()?;
    let columns: Vec<Vec<f64>> = states
        .par_iter()
        .map(|s| points.iter().map(|&r| s.radial_density(r)).collect())
        .collect::<Result<_, _>>()?;

    let mut table = Table {
        columns: vec!["r".into()],
        rows: Vec::new(),
    };
    let mut extra = Vec::new();
    for (x, col) in a.inv_a.iter().zip(&columns) {
        let name = format!("rho_b{}_inv_a={x}", a.branch);
        let integral = col.iter().sum::<f64>() * grid.dr;
        extra.push((format!("integral {name}"), crate::output::fmt_num(integral)));
        table.columns.push(name);
    }
    for (i, &r) in points.iter().enumerate() {
        let mut row = vec![Cell::Num(r)];
        row.extend(columns.iter().map(|c| Cell::Num(c[i])));
        table.rows.push(row);
    }
    let prov = Provenance {
        dr: Some(grid.dr),
        r_max: Some(grid.r_max),
        extra,
        ..Provenance::default()
    };
    Ok(render(&table, &prov, format))
}

fn spectrum_for(
    state: &TwoBodyState,
    grid: &RadialGrid,
    ch: &ChannelArgs,
) -> Result<(SchmidtSpectrum, Option<ConvergenceReport>), CliError> {
    if ch.converge {
        let tol = Tolerances {
            l_cap: ch.l_cap,
            ..Tolerances::default()
        };
        let (s, r) = converge(state, grid, ch.l_start, &tol)?;
        Ok((s, Some(r)))
    } else {
        Ok((schmidt_spectrum(state, grid, ch.l_max)?, None))
    }
}

fn sorted_entries(s: &SchmidtSpectrum) -> Vec<&trapent::schmidt::SchmidtEntry> {
    let mut e: Vec<_> = s.entries.iter().collect();
    e.sort_by(|a, b| {
        b.big_lambda
            .total_cmp(&a.big_lambda)
            .then(a.l.cmp(&b.l))
            .then(a.n.cmp(&b.n))
    });
    e
}

fn spectrum_provenance(s: &SchmidtSpectrum) -> Provenance {
    Provenance {
        dr: Some(s.grid.dr),
        r_max: Some(s.grid.r_max),
        l_max: Some(s.l_max),
        completeness_defect: Some(s.completeness_defect),
        extra: Vec::new(),
    }
}

fn report_json(r: &ConvergenceReport) -> Value {
    json!({
        "trace": r.trace.iter().map(|p| json!({"l_max": p.l_max, "K": json_num(p.k)})).collect::<Vec<_>>(),
        "l_converged": r.l_converged,
        "l_final": r.l_final,
        "grid_check": {
            "dr_fine": json_num(r.grid_check.dr_fine),
            "K_coarse": json_num(r.grid_check.k_coarse),
            "K_fine": json_num(r.grid_check.k_fine),
            "relative_change": json_num(r.grid_check.rel_change),
        },
    })
}

pub fn schmidt(a: &SchmidtArgs, format: Format) -> Result<String, CliError> {
    let grid = grid_of(&a.grid)?;
    let (state, state_json) = match (a.unitarity, a.inv_a) {
        (Some(k), _) => (
            TwoBodyState::unitarity(k)?,
            json!({"kind": "unitarity", "k": k}),
        ),
        (None, Some(x)) => {
            let s = energy_of_inv_a(x, a.branch)?;
            let j = json!({
                "kind": "trap",
                "inv_a": json_num(x),
                "branch": a.branch,
                "energy": json_num(s.energy),
            });
            (TwoBodyState::trap(s), j)
        }
        (None, None) => return Err(CliError::Usage("give --inv-a or --unitarity".into())),
    };
    let (s, report) = spectrum_for(&state, &grid, &a.channels)?;
    let entries = sorted_entries(&s);
    let shown = if a.top == 0 {
        entries.len()
    } else {
        a.top.min(entries.len())
    };
    let dominant = s
        .dominant()
        .ok_or_else(|| CliError::Usage("the spectrum is empty".into()))?;
    let mut prov = spectrum_provenance(&s);

    match format {
        Format::Csv => {
            prov.extra.extend([
                ("K".into(), crate::output::fmt_num(s.k)),
                ("entropy_nats".into(), crate::output::fmt_num(s.entropy)),
                (
                    "dominant".into(),
                    format!(
                        "n={} l={} p={}",
                        dominant.n,
                        dominant.l,
                        crate::output::fmt_num(dominant.channel_prob)
                    ),
                ),
            ]);
            if let Some(r) = &report {
                prov.extra
                    .push(("l_converged".into(), r.l_converged.to_string()));
            }
            let table = Table {
                columns: ["n", "l", "lambda", "Lambda", "mode_prob", "channel_prob"]
                    .map(String::from)
                    .to_vec(),
                rows: entries[..shown]
                    .iter()
                    .map(|e| {
                        vec![
                            Cell::Int(e.n as i64),
                            Cell::Int(e.l as i64),
                            Cell::Num(e.lambda),
                            Cell::Num(e.big_lambda),
                            Cell::Num(e.mode_prob),
                            Cell::Num(e.channel_prob),
                        ]
                    })
                    .collect(),
            };
            Ok(table.csv(&prov))
        }
        Format::Json => {
            let entry = |e: &trapent::schmidt::SchmidtEntry| {
                json!({
                    "n": e.n,
                    "l": e.l,
                    "lambda": json_num(e.lambda),
                    "Lambda": json_num(e.big_lambda),
                    "mode_prob": json_num(e.mode_prob),
                    "channel_prob": json_num(e.channel_prob),
                })
            };
            let mut m = Map::new();
            m.insert("provenance".into(), prov.json());
            m.insert("state".into(), state_json);
            m.insert("K".into(), json_num(s.k));
            m.insert("entropy_nats".into(), json_num(s.entropy));
            m.insert(
                "completeness_defect".into(),
                json_num(s.completeness_defect),
            );
            m.insert("completeness_ok".into(), Value::Bool(s.completeness_ok));
            m.insert("dominant".into(), entry(dominant));
            m.insert(
                "top_modes".into(),
                Value::Array(entries.iter().take(5).map(|e| entry(e)).collect()),
            );
            m.insert(
                "lambda_table".into(),
                Value::Array(entries[..shown].iter().map(|e| entry(e)).collect()),
            );
            if let Some(r) = &report {
                m.insert("convergence".into(), report_json(r));
            }
            Ok(render_json(&Value::Object(m)))
        }
    }
}

pub fn k_sweep(a: &KSweepArgs, format: Format) -> Result<String, CliError> {
    let grid = grid_of(&a.grid)?;
    let xs = a.inv_a_range.values();
    let branches = a.branch.branches();
    let tasks: Vec<(f64, usize)> = xs
        .iter()
        .flat_map(|&x| branches.iter().map(move |&b| (x, b)))
        .collect();
    let results: Vec<Option<SchmidtSpectrum>> = tasks
        .par_iter()
        .map(|&(x, b)| {
            if b == 0 && x > GROUND_TRUNCATION && !a.no_truncate {
                return Ok(None);
            }
            let state = TwoBodyState::trap(energy_of_inv_a(x, b)?);
            spectrum_for(&state, &grid, &a.channels).map(|(s, _)| Some(s))
        })
        .collect::<Result<_, CliError>>()?;

    let mut table = Table {
        columns: vec!["inv_a".into()],
        rows: Vec::new(),
    };
    table
        .columns
        .extend(branches.iter().map(|b| format!("K_branch{b}")));
    for (i, &x) in xs.iter().enumerate() {
        let mut row = vec![Cell::Num(x)];
        row.extend(
            results[i * branches.len()..(i + 1) * branches.len()]
                .iter()
                .map(|s| s.as_ref().map_or(Cell::Empty, |s| Cell::Num(s.k))),
        );
        table.rows.push(row);
    }
    let computed: Vec<&SchmidtSpectrum> = results.iter().flatten().collect();
    let worst = computed
        .iter()
        .map(|s| s.completeness_defect)
        .max_by(|a, b| a.abs().total_cmp(&b.abs()));
    let mut prov = Provenance {
        dr: Some(grid.dr),
        r_max: Some(grid.r_max),
        l_max: computed.iter().map(|s| s.l_max).max(),
        completeness_defect: worst,
        extra: Vec::new(),
    };
    if !a.no_truncate && branches.contains(&0) {
        prov.extra.push((
            "truncation".into(),
            format!("branch 0 omitted above inv_a = {GROUND_TRUNCATION}"),
        ));
    }
    Ok(render(&table, &prov, format))
}

pub fn unitarity(a: &UnitarityArgs, format: Format) -> Result<String, CliError> {
    let grid = grid_of(&a.grid)?;
    let rows: Vec<(SchmidtSpectrum, Option<SchmidtSpectrum>)> = (0..3usize)
        .into_par_iter()
        .map(|k| {
            let (closed, _) = spectrum_for(&TwoBodyState::unitarity(k)?, &grid, &a.channels)?;
            let routed = if a.no_cross_check {
                None
            } else {
                let st = TwoBodyState::trap(energy_of_inv_a(0.0, k)?);
                Some(spectrum_for(&st, &grid, &a.channels)?.0)
            };
            Ok((closed, routed))
        })
        .collect::<Result<_, CliError>>()?;

    let worst = rows
        .iter()
        .map(|(s, _)| s.completeness_defect)
        .max_by(|a, b| a.abs().total_cmp(&b.abs()));
    let prov = Provenance {
        dr: Some(grid.dr),
        r_max: Some(grid.r_max),
        l_max: rows.iter().map(|(s, _)| s.l_max).max(),
        completeness_defect: worst,
        extra: Vec::new(),
    };
    let rel = |c: &SchmidtSpectrum, r: &SchmidtSpectrum| ((r.k - c.k) / c.k).abs();

    match format {
        Format::Csv => {
            let table = Table {
                columns: [
                    "k",
                    "energy",
                    "K",
                    "entropy_nats",
                    "completeness_defect",
                    "K_branch_route",
                ]
                .map(String::from)
                .to_vec(),
                rows: rows
                    .iter()
                    .enumerate()
                    .map(|(k, (c, r))| {
                        vec![
                            Cell::Int(k as i64),
                            Cell::Num(0.5 + 2.0 * k as f64),
                            Cell::Num(c.k),
                            Cell::Num(c.entropy),
                            Cell::Num(c.completeness_defect),
                            r.as_ref().map_or(Cell::Empty, |r| Cell::Num(r.k)),
                        ]
                    })
                    .collect(),
            };
            Ok(table.csv(&prov))
        }
        Format::Json => {
            let mut m = Map::new();
            m.insert("provenance".into(), prov.json());
            for (k, (c, _)) in rows.iter().enumerate() {
                m.insert(format!("K_1{k}"), json_num(c.k));
            }
            let states = rows
                .iter()
                .enumerate()
                .map(|(k, (c, r))| {
                    let mut s = json!({
                        "k": k,
                        "energy": json_num(0.5 + 2.0 * k as f64),
                        "K": json_num(c.k),
                        "entropy_nats": json_num(c.entropy),
                        "completeness_defect": json_num(c.completeness_defect),
                    });
                    if let Some(r) = r {
                        s["K_branch_route"] = json_num(r.k);
                        s["relative_difference"] = json_num(rel(c, r));
                        s["agrees"] = Value::Bool(rel(c, r) < CROSS_CHECK_TOL);
                    }
                    s
                })
                .collect();
            m.insert("states".into(), Value::Array(states));
            if !a.no_cross_check {
                m.insert("cross_check_tolerance".into(), json_num(CROSS_CHECK_TOL));
            }
            Ok(render_json(&Value::Object(m)))
        }
    }
}

pub fn modes(a: &ModesArgs, format: Format) -> Result<String, CliError> {
    let grid = grid_of(&a.grid)?;
    let l_top = a.modes.iter().map(|&(_, l)| l).max().unwrap_or(0);
    let state = TwoBodyState::trap(energy_of_inv_a(a.inv_a, a.branch)?);
    let channels = decompose_state(&state, &grid, l_top)?;
    let spectrum = assemble_spectrum(&channels, None)?;

    let mut columns = Vec::new();
    let mut prov = spectrum_provenance(&spectrum);
    for &(n, l) in &a.modes {
        let entry = match spectrum.entry(n, l) {
            Some(e) if n <= channels[l].retained() => e,
            _ => {
                let available = channels
                    .iter()
                    .map(|c| format!("l={}: n=1..={}", c.l, c.retained()))
                    .collect::<Vec<_>>()
                    .join("; ");
                return Err(CliError::Usage(format!(
                    "mode (n, l) = ({n}, {l}) is not available; retained modes are {available}"
                )));
            }
        };
        prov.extra.push((
            format!("u_{n}_{l}"),
            format!(
                "lambda={} Lambda={}",
                crate::output::fmt_num(entry.lambda),
                crate::output::fmt_num(entry.big_lambda)
            ),
        ));
        columns.push(channels[l].mode(n)?);
    }
    let mut table = Table {
        columns: vec!["r".into()],
        rows: Vec::new(),
    };
    table
        .columns
        .extend(a.modes.iter().map(|(n, l)| format!("u_{n}_{l}")));
    for (i, r) in grid.points().into_iter().enumerate() {
        let mut row = vec![Cell::Num(r)];
        row.extend(columns.iter().map(|c| Cell::Num(c[i])));
        table.rows.push(row);
    }
    Ok(render(&table, &prov, format))
}
