//! `experiment`: seeded batches of composition, rate and Dykstra checks.
//!
//! Every trial draws one two-set instance whose predicted behavior matches the
//! case filter, checks that behavior, and runs Dykstra against the closed form.
//! Rate checks use the exact projectors (no boundary band), since the band
//! would stall iterates at about the size of the rate slack.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use polyproj::closed_form::{project_halfspace_pair_with, project_hyperplane_halfspace_with};
use polyproj::generate::{Generator, MixedStratum, PairStratum};
use polyproj::iterate::{dykstra_run, RATE_SLACK};
use polyproj::{
    classify_pair, compose_iterate, format_f64, predict_behavior, BandedHalfspace, BehaviorCase,
    Constraint, Halfspace, Hyperplane, Projector, Tolerances, Vector,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const BEHAVIOR_TAGS: [&str; 4] = [
    "ExactComposition",
    "LinearRateBAM",
    "OneStepFeasible",
    "ExactBothOrders",
];

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub seed: u64,
    pub dim: usize,
    pub trials: usize,
    #[serde(default)]
    pub case_filter: Option<String>,
    #[serde(default = "default_k_max")]
    pub k_max: usize,
    #[serde(default)]
    pub tolerances: ToleranceConfig,
}

fn default_k_max() -> usize {
    50
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(default, deny_unknown_fields)]
pub struct ToleranceConfig {
    /// Relative threshold for dependent normals.
    pub dependence: f64,
    /// Relative membership band; `POLYPROJ_TOL` applies when absent.
    pub membership: Option<f64>,
    /// Absolute slack added to each γᵏ bound.
    pub rate_slack: f64,
    /// Allowed deviation of one composition step from the projection.
    pub exactness: f64,
    /// Dykstra stops once a sweep moves the state by at most this much.
    pub dykstra_sweep: f64,
    /// Allowed distance between the Dykstra limit and the projection.
    pub dykstra_match: f64,
    pub max_sweeps: usize,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            dependence: Tolerances::default().dependence,
            membership: None,
            rate_slack: RATE_SLACK,
            exactness: 1e-10,
            dykstra_sweep: 1e-12,
            dykstra_match: 1e-6,
            max_sweeps: 10_000,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.dim < 2 {
            return Err(CliError::Input(format!(
                "dim must be at least 2, got {}",
                self.dim
            )));
        }
        if self.k_max == 0 {
            return Err(CliError::Input("k_max must be at least 1".into()));
        }
        if let Some(f) = &self.case_filter {
            if !BEHAVIOR_TAGS.contains(&f.as_str()) {
                return Err(CliError::Input(format!(
                    "unknown case_filter {f:?}; expected one of {BEHAVIOR_TAGS:?}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
enum Plan {
    Pair(PairStratum),
    Mixed(MixedStratum),
}

/// Nonempty two-set configurations grouped by predicted behavior.
fn plans_for(tag: &str) -> Vec<Plan> {
    match tag {
        "ExactComposition" => [1, 3, 5, 7, 9]
            .into_iter()
            .map(|i| Plan::Pair(PairStratum::Dependent(i)))
            .chain([Plan::Pair(PairStratum::Orthogonal)])
            .collect(),
        "LinearRateBAM" => vec![
            Plan::Pair(PairStratum::Negative),
            Plan::Mixed(MixedStratum::Negative),
            Plan::Mixed(MixedStratum::Positive),
        ],
        "OneStepFeasible" => vec![Plan::Pair(PairStratum::Positive)],
        "ExactBothOrders" => vec![
            Plan::Mixed(MixedStratum::Dependent),
            Plan::Mixed(MixedStratum::WholeSpaceHyperplane),
            Plan::Mixed(MixedStratum::Orthogonal),
        ],
        _ => unreachable!("validated tag"),
    }
}

enum Pair {
    Halfspaces(Halfspace, Halfspace),
    Mixed(Hyperplane, Halfspace),
}

impl Pair {
    fn sets(&self) -> Vec<Constraint> {
        match self {
            Pair::Halfspaces(a, b) => vec![a.clone().into(), b.clone().into()],
            Pair::Mixed(a, b) => vec![a.clone().into(), b.clone().into()],
        }
    }

    fn project(&self, x: &Vector, tol: &Tolerances) -> polyproj::Result<Vector> {
        Ok(match self {
            Pair::Halfspaces(a, b) => project_halfspace_pair_with(a, b, x, tol)?.point,
            Pair::Mixed(a, b) => project_hyperplane_halfspace_with(a, b, x, tol)?.point,
        })
    }
}

#[derive(Debug, Default, Clone, Serialize)]
pub struct Tally {
    pub rows: usize,
    pub ok: usize,
}

#[derive(Debug, Default, Clone, Serialize)]
pub struct CaseTally {
    pub trials: usize,
    pub passed: usize,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub trials: usize,
    pub cases: BTreeMap<String, CaseTally>,
    pub rates: Tally,
    pub exactness: Tally,
    pub dykstra: Tally,
    pub max_exactness_deviation: f64,
    pub max_dykstra_distance: f64,
}

struct Tables {
    rates: Vec<[String; 6]>,
    exactness: Vec<[String; 6]>,
    dykstra: Vec<[String; 6]>,
}

fn flag(ok: bool) -> String {
    ok.to_string()
}

fn compose(projectors: &[&dyn Projector], x: &Vector) -> polyproj::Result<Vector> {
    Ok(compose_iterate(projectors, x, 1, None)?.iterates[1].clone())
}

pub fn run(
    config: &ExperimentConfig,
    env_membership: Option<f64>,
    out: &Path,
) -> Result<Summary, CliError> {
    config.validate()?;
    let t = &config.tolerances;
    let tol = Tolerances {
        dependence: t.dependence,
        membership: t
            .membership
            .or(env_membership)
            .unwrap_or(Tolerances::default().membership),
    };
    let exact = Tolerances {
        membership: 0.0,
        ..tol
    };

    let plans: Vec<Plan> = match &config.case_filter {
        Some(tag) => plans_for(tag),
        None => BEHAVIOR_TAGS.iter().flat_map(|t| plans_for(t)).collect(),
    };
    let mut master = ChaCha8Rng::seed_from_u64(config.seed);
    let mut tables = Tables {
        rates: Vec::new(),
        exactness: Vec::new(),
        dykstra: Vec::new(),
    };
    let mut summary = Summary {
        trials: config.trials,
        cases: BEHAVIOR_TAGS
            .iter()
            .map(|t| (t.to_string(), CaseTally::default()))
            .collect(),
        rates: Tally::default(),
        exactness: Tally::default(),
        dykstra: Tally::default(),
        max_exactness_deviation: 0.0,
        max_dykstra_distance: 0.0,
    };

    for trial in 0..config.trials {
        let plan = plans[master.random_range(0..plans.len())];
        let mut g = Generator::new(master.random(), config.dim)?;
        let pair = match plan {
            Plan::Pair(s) => {
                let (a, b) = g.halfspace_pair(s);
                Pair::Halfspaces(a, b)
            }
            Plan::Mixed(s) => {
                let (a, b) = g.hyperplane_halfspace(s);
                Pair::Mixed(a, b)
            }
        };
        let x = g.point();
        let sets = pair.sets();
        let class = classify_pair(sets[0].normal(), sets[1].normal(), tol.dependence)?;
        let behavior = predict_behavior(sets[0].kind(), sets[1].kind(), class);
        let target = pair.project(&x, &tol)?;
        let mut trial_ok = true;

        let exact_row = |order: &str,
                         got: Vector,
                         required: bool,
                         tables: &mut Tables,
                         summary: &mut Summary| {
            let deviation = got.distance(&target);
            let feasible = sets.iter().all(|s| {
                s.contains(&got, tol.membership)
                    .map(|m| m.is_member())
                    .unwrap_or(false)
            });
            let ok = feasible && (!required || deviation <= t.exactness);
            if required {
                summary.max_exactness_deviation = summary.max_exactness_deviation.max(deviation);
            }
            summary.exactness.rows += 1;
            summary.exactness.ok += usize::from(ok);
            tables.exactness.push([
                trial.to_string(),
                behavior.tag().to_string(),
                order.to_string(),
                format_f64(deviation),
                flag(feasible),
                flag(ok),
            ]);
            ok
        };

        match (&pair, behavior) {
            (Pair::Halfspaces(w1, w2), BehaviorCase::ExactComposition) => {
                trial_ok &= exact_row(
                    "W2W1",
                    compose(&[w1, w2], &x)?,
                    true,
                    &mut tables,
                    &mut summary,
                );
            }
            (Pair::Halfspaces(w1, w2), BehaviorCase::OneStepFeasible) => {
                let inside = |w: &Halfspace, p: &Vector| {
                    w.contains(p, tol.membership).map(|m| m.is_member())
                };
                let p_h1 = polyproj::project_hyperplane(&w1.boundary(), &x)?;
                let required = inside(w1, &x)? || inside(w2, &x)? || inside(w2, &p_h1)?;
                trial_ok &= exact_row(
                    "W2W1",
                    compose(&[w1, w2], &x)?,
                    required,
                    &mut tables,
                    &mut summary,
                );
            }
            (Pair::Mixed(h1, w2), BehaviorCase::ExactBothOrders) => {
                trial_ok &= exact_row(
                    "W2H1",
                    compose(&[h1, w2], &x)?,
                    true,
                    &mut tables,
                    &mut summary,
                );
                trial_ok &= exact_row(
                    "H1W2",
                    compose(&[w2, h1], &x)?,
                    true,
                    &mut tables,
                    &mut summary,
                );
            }
            (_, BehaviorCase::LinearRateBAM { gamma }) => {
                let target = pair.project(&x, &exact)?;
                let initial = x.distance(&target);
                let mut y = x.clone();
                let mut factor = 1.0;
                for k in 1..=config.k_max {
                    y = match &pair {
                        Pair::Halfspaces(w1, w2) => {
                            let (p1, p2) = (banded(w1), banded(w2));
                            compose(&[&p1, &p2], &y)?
                        }
                        Pair::Mixed(h1, w2) => compose(&[h1, &banded(w2)], &y)?,
                    };
                    factor *= gamma;
                    let observed = y.distance(&target);
                    let bound = factor * initial;
                    let ok = observed <= bound + t.rate_slack;
                    trial_ok &= ok;
                    summary.rates.rows += 1;
                    summary.rates.ok += usize::from(ok);
                    tables.rates.push([
                        trial.to_string(),
                        format_f64(gamma),
                        k.to_string(),
                        format_f64(observed),
                        format_f64(bound),
                        flag(ok),
                    ]);
                }
            }
            _ => unreachable!("plans only produce matching behaviors"),
        }

        let (trace, _) = dykstra_run(&sets, &x, t.max_sweeps, t.dykstra_sweep)?;
        let distance = trace.last().distance(&target);
        let ok = distance <= t.dykstra_match;
        trial_ok &= ok;
        summary.max_dykstra_distance = summary.max_dykstra_distance.max(distance);
        summary.dykstra.rows += 1;
        summary.dykstra.ok += usize::from(ok);
        tables.dykstra.push([
            trial.to_string(),
            behavior.tag().to_string(),
            trace.steps().to_string(),
            format!("{:?}", trace.stop_reason),
            format_f64(distance),
            flag(ok),
        ]);

        let tally = summary.cases.get_mut(behavior.tag()).expect("known tag");
        tally.trials += 1;
        tally.passed += usize::from(trial_ok);
    }

    fs::create_dir_all(out)?;
    write_csv(
        &out.join("rates.csv"),
        [
            "trial",
            "gamma",
            "k",
            "observed_error",
            "bound_gamma_pow_k",
            "ok",
        ],
        &tables.rates,
    )?;
    write_csv(
        &out.join("exactness.csv"),
        ["trial", "case", "order", "deviation", "feasible", "ok"],
        &tables.exactness,
    )?;
    write_csv(
        &out.join("dykstra.csv"),
        ["trial", "case", "sweeps", "stop_reason", "distance", "ok"],
        &tables.dykstra,
    )?;
    fs::write(out.join("summary.json"), crate::json::to_string(&summary)?)?;
    Ok(summary)
}

fn banded(w: &Halfspace) -> BandedHalfspace<'_> {
    BandedHalfspace { set: w, tol: 0.0 }
}

fn write_csv(path: &Path, header: [&str; 6], rows: &[[String; 6]]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}
