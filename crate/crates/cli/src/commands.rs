use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use uav_hitch::sim::{
    run_experiment, sweep_curves, trial_scenario, write_experiment_csv, GeneratorParams, Grid,
    Scenario, SweepKind, SweepSpec,
};
use uav_hitch::{
    brute_force_match, build_saving_matrix, eligibility, greedy_match, msa_match, plan_pair,
    verify_duals, Eligibility, HitchPlan, MatchResult, PairGeometry, PlannerConfig, UavTask,
    VehicleOffer,
};

use crate::number::sig6;
use crate::{Format, Kind, MatchArgs, PlanArgs, SimulateArgs, Solver, SweepArgs, ValidateArgs};

/// Stdout or a freshly created file.
fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            fs::File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn read_scenario(path: &Path) -> Result<Scenario> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Scenario::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

#[derive(Serialize)]
struct PlanOutput {
    /// Absent for battery-swap vehicles, which accept every heading.
    eligibility: Option<Eligibility>,
    plan: HitchPlan,
}

pub fn plan(a: &PlanArgs) -> Result<()> {
    let theta = if a.degrees {
        a.theta.to_radians()
    } else {
        a.theta
    };
    let cfg = PlannerConfig::with_tol(a.omega, a.tol)?;
    let task = UavTask::new(a.x, a.u)?
        .with_deadline(a.deadline)?
        .with_battery(a.battery_capacity, a.battery_level)?;
    let offer = VehicleOffer::new(a.v, a.gamma)?;
    let geom = PairGeometry::new(theta)?;
    let elig = if offer.is_battery_swap() {
        None
    } else {
        Some(eligibility(&cfg, &task, &offer, &geom)?)
    };
    let plan = plan_pair(&cfg, &task, &offer, &geom)?;

    let mut out = sink(None)?;
    match a.format {
        Format::Json => {
            serde_json::to_writer_pretty(
                &mut out,
                &PlanOutput {
                    eligibility: elig,
                    plan,
                },
            )?;
            writeln!(out)?;
        }
        Format::Human => {
            match elig {
                Some(e) => {
                    let verdict = if e.eligible { "yes" } else { "no" };
                    writeln!(out, "eligible         {verdict} ({:?})", e.reason)?;
                    let phi = e
                        .threshold_angle
                        .map_or("-".into(), |p| format!("{} rad", sig6(p)));
                    writeln!(out, "threshold angle  {phi}")?;
                }
                None => writeln!(out, "eligible         yes (battery swap)")?,
            }
            writeln!(out, "binding          {:?}", plan.binding)?;
            writeln!(out, "hitch distance   {} km", sig6(plan.y_star))?;
            writeln!(out, "total time       {} h", sig6(plan.total_time))?;
            writeln!(out, "energy           {}", sig6(plan.energy))?;
            writeln!(out, "consumption      {}", sig6(plan.consumption))?;
            writeln!(out, "fly direct       {}", sig6(plan.baseline))?;
            writeln!(out, "saving           {}", sig6(plan.saving))?;
            if plan.departs_after_swap {
                writeln!(out, "leaves the vehicle right after the swap")?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct PairOutput {
    uav: usize,
    vehicle: usize,
    saving: f64,
    plan: Option<HitchPlan>,
}

#[derive(Serialize)]
struct MatchOutput {
    solver: &'static str,
    total_saving: f64,
    /// Vehicle index per UAV; null when the UAV flies direct.
    assignment: Vec<Option<usize>>,
    pairs: Vec<PairOutput>,
    /// Dual certificate check, optimal matching only.
    duals_verified: Option<bool>,
    iterations: Option<usize>,
}

pub fn match_fleet(a: &MatchArgs) -> Result<()> {
    let s = read_scenario(&a.scenario)?;
    let limited = s.tasks.iter().any(|t| t.has_finite_battery());
    let m = build_saving_matrix(&s.config, &s.tasks, &s.offers, &s.geoms, limited)?;
    let (name, result, duals_verified, iterations): (_, MatchResult, _, _) = match a.solver {
        Solver::Msa => {
            let sol = msa_match(&m);
            let tol = 1e-9 * m.max_weight().max(1.0);
            let ok = verify_duals(&m, &sol.result, &sol.duals, tol);
            ("msa", sol.result, Some(ok), Some(sol.iterations))
        }
        Solver::Greedy => ("greedy", greedy_match(&m), None, None),
        Solver::Brute => ("brute", brute_force_match(&m)?, None, None),
    };
    let output = MatchOutput {
        solver: name,
        total_saving: result.total_saving,
        assignment: result.assignment.clone(),
        pairs: result
            .per_pair
            .iter()
            .map(|p| PairOutput {
                uav: p.uav,
                vehicle: p.vehicle,
                saving: p.saving,
                plan: p.plan,
            })
            .collect(),
        duals_verified,
        iterations,
    };

    let mut out = sink(None)?;
    match a.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &output)?;
            writeln!(out)?;
        }
        Format::Human => {
            writeln!(out, "solver        {name}")?;
            writeln!(
                out,
                "fleet         {} UAVs, {} vehicles",
                s.n_uavs(),
                s.n_vehicles()
            )?;
            for p in &output.pairs {
                let ride = p.plan.map_or(String::new(), |plan| {
                    format!("  ride {} km ({:?})", sig6(plan.y_star), plan.binding)
                });
                writeln!(
                    out,
                    "uav {} -> vehicle {}  saving {}{ride}",
                    p.uav,
                    p.vehicle,
                    sig6(p.saving)
                )?;
            }
            let direct: Vec<String> = output
                .assignment
                .iter()
                .enumerate()
                .filter(|(_, a)| a.is_none())
                .map(|(i, _)| i.to_string())
                .collect();
            let direct = if direct.is_empty() {
                "-".into()
            } else {
                direct.join(", ")
            };
            writeln!(out, "fly direct    {direct}")?;
            writeln!(out, "total saving  {}", sig6(output.total_saving))?;
            if let Some(n) = iterations {
                writeln!(out, "iterations    {n}")?;
            }
            if let Some(ok) = duals_verified {
                let status = if ok { "verified" } else { "FAILED" };
                writeln!(out, "certificate   {status}")?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

pub fn simulate(a: &SimulateArgs, verbose: bool) -> Result<()> {
    let mut params = match &a.params {
        Some(path) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str::<GeneratorParams>(&text)
                .with_context(|| format!("parsing {}", path.display()))?
        }
        None => GeneratorParams::case(a.case, 0, 40)?,
    };
    if let Some(j) = a.vehicles {
        params.n_vehicles = j;
    }
    if a.uavs.is_empty() {
        bail!("--uavs needs at least one population");
    }
    let run = || -> Result<()> {
        let rows = run_experiment(&params, a.trials, &a.uavs, a.seed)?;
        if let Some(dir) = &a.emit_scenarios {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            for &count in &a.uavs {
                for t in 0..a.trials {
                    let s = trial_scenario(&params, count, t, a.seed)?;
                    let path = dir.join(format!("{}.json", s.label));
                    fs::write(&path, s.to_json())
                        .with_context(|| format!("writing {}", path.display()))?;
                }
            }
        }
        let mut out = sink(a.output.as_deref())?;
        write_experiment_csv(&rows, &mut out)?;
        out.flush()?;
        if verbose {
            for row in &rows {
                let imp = row.improvement();
                eprintln!(
                    "I={:<3} extra reduction {:.2}% of direct, {:.2}% of greedy saving, {:.2}% of greedy total; max iterations {}",
                    row.uav_count,
                    100.0 * imp.vs_direct,
                    100.0 * imp.vs_greedy_saving,
                    100.0 * imp.vs_greedy_total,
                    row.max_iterations()
                );
            }
        }
        Ok(())
    };
    match a.threads {
        Some(0) => bail!("--threads must be at least 1"),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()?
            .install(run),
        None => run(),
    }
}

fn parse_grid(flag: &str, text: &str) -> Result<Grid> {
    let parts: Vec<&str> = text.split(':').collect();
    let [start, stop, steps] = parts[..] else {
        bail!("{flag}: expected start:stop:steps, got {text:?}");
    };
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .with_context(|| format!("{flag}: bad number {s:?}"))
    };
    let steps = steps
        .trim()
        .parse::<usize>()
        .with_context(|| format!("{flag}: bad step count {steps:?}"))?;
    Ok(Grid::new(num(start)?, num(stop)?, steps))
}

pub fn sweep(a: &SweepArgs) -> Result<()> {
    let kind = match a.kind {
        Kind::Speed => SweepKind::Speed,
        Kind::Gamma => SweepKind::Gamma,
        Kind::Surface => SweepKind::Surface,
        Kind::Battery => SweepKind::Battery,
    };
    let mut spec = SweepSpec::new(kind);
    let fields = [
        (a.x, &mut spec.x),
        (a.u, &mut spec.u),
        (a.omega, &mut spec.omega),
        (a.theta, &mut spec.theta),
        (a.v, &mut spec.v),
        (a.gamma, &mut spec.gamma),
        (a.deadline, &mut spec.deadline),
    ];
    for (value, slot) in fields {
        if let Some(value) = value {
            *slot = value;
        }
    }
    if let Some(g) = &a.v_grid {
        spec.v_grid = parse_grid("--v-grid", g)?;
    }
    if let Some(g) = &a.gamma_grid {
        spec.gamma_grid = parse_grid("--gamma-grid", g)?;
    }
    if let Some(g) = &a.headroom_grid {
        spec.headroom_grid = parse_grid("--headroom-grid", g)?;
    }
    let table = sweep_curves(&spec)?;
    let mut out = sink(a.output.as_deref())?;
    table.write_csv(&mut out)?;
    out.flush()?;
    Ok(())
}

pub fn validate(a: &ValidateArgs) -> Result<()> {
    for path in &a.files {
        let s = read_scenario(path)?;
        println!(
            "ok  {}  {} UAVs x {} vehicles  label {:?}",
            path.display(),
            s.n_uavs(),
            s.n_vehicles(),
            s.label
        );
    }
    Ok(())
}
