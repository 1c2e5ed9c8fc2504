//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use polyproj::closed_form::{
    project_halfspace_pair_with, project_hyperplane_halfspace_with, Case, DependentCase,
    ProjectionBreakdown, Region,
};
use polyproj::generate::{Generator, MixedStratum, PairStratum, SystemStratum};
use polyproj::oracle::{kkt_check, oracle_project, split_multipliers};
use polyproj::sets::Membership;
use polyproj::{
    compose_iterate, dykstra, project_halfspace, project_halfspace_pair, project_hyperplane,
    project_hyperplane_halfspace, project_hyperplanes, rate_gamma, verify_bam, BandedHalfspace,
    Constraint, Halfspace, Hyperplane, ProjError, Projector, Result, Tolerances, Vector,
};

const MEMBERSHIP_TOL: f64 = 1e-10;

/// Rate checks run on the exact projectors: the default boundary band would
/// stall iterates about 1e-9 short of the limit, the size of the slack.
const EXACT: Tolerances = Tolerances {
    dependence: 1e-10,
    membership: 0.0,
};

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome {
            passed,
            detail: detail.into(),
        }
    }
}

fn v(c: &[f64]) -> Vector {
    Vector::from_slice(c).unwrap()
}

fn hs(u: &[f64], eta: f64) -> Halfspace {
    Halfspace::new(v(u), eta).unwrap()
}

fn hp(u: &[f64], eta: f64) -> Hyperplane {
    Hyperplane::new(v(u), eta).unwrap()
}

fn dim_for(i: usize) -> usize {
    2 + i % 9
}

/// Closed-form result and its constraint list for one random instance.
struct Sample {
    sets: Vec<Constraint>,
    x: Vector,
    closed: Result<ProjectionBreakdown>,
    label: String,
}

fn pair_sample(i: usize) -> Sample {
    let stratum = PairStratum::ALL[i % PairStratum::ALL.len()];
    let mut g = Generator::new(10_000 + i as u64, dim_for(i / PairStratum::ALL.len())).unwrap();
    let (w1, w2) = g.halfspace_pair(stratum);
    let x = g.point();
    let closed = project_halfspace_pair(&w1, &w2, &x);
    let label = match (&stratum, &closed) {
        (PairStratum::Dependent(k), _) => format!("pair/dependent-{k}"),
        (_, Ok(b)) => format!("pair/{}", b.case.label()),
        (_, Err(e)) => format!("pair/error-{e}"),
    };
    Sample {
        sets: vec![w1.into(), w2.into()],
        x,
        closed,
        label,
    }
}

fn mixed_sample(i: usize) -> Sample {
    let stratum = MixedStratum::ALL[i % MixedStratum::ALL.len()];
    let mut g = Generator::new(20_000 + i as u64, dim_for(i / MixedStratum::ALL.len())).unwrap();
    let (h1, w2) = g.hyperplane_halfspace(stratum);
    let x = g.point();
    let closed = project_hyperplane_halfspace(&h1, &w2, &x);
    let label = match &closed {
        Ok(b) => format!("mixed/{}", b.case.label()),
        Err(ProjError::EmptySet) => "mixed/empty".to_string(),
        Err(e) => format!("mixed/error-{e}"),
    };
    Sample {
        sets: vec![h1.into(), w2.into()],
        x,
        closed,
        label,
    }
}

fn system_sample(i: usize) -> Sample {
    let stratum = SystemStratum::ALL[i % SystemStratum::ALL.len()];
    let mut g = Generator::new(30_000 + i as u64, dim_for(i / SystemStratum::ALL.len())).unwrap();
    let planes = g.hyperplane_system(stratum);
    let x = g.point();
    let closed = project_hyperplanes(&planes, &x);
    let label = match &closed {
        Ok(_) => format!("system/{stratum:?}"),
        Err(ProjError::EmptySet) => "system/empty".to_string(),
        Err(e) => format!("system/error-{e}"),
    };
    Sample {
        sets: planes.into_iter().map(Constraint::from).collect(),
        x,
        closed,
        label,
    }
}

fn all_samples() -> Vec<Sample> {
    let mut out = Vec::with_capacity(10_000);
    out.extend((0..4_000).map(pair_sample));
    out.extend((0..3_000).map(mixed_sample));
    out.extend((0..3_000).map(system_sample));
    out
}

fn criterion_oracle(samples: &[Sample]) -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut mismatches = 0;
    let mut seen = BTreeSet::new();
    for s in samples {
        let oracle = oracle_project(&s.sets, &s.x);
        match (&s.closed, &oracle) {
            (Ok(b), Ok(o)) => {
                let d = b.point.distance(&o.point);
                worst = worst.max(d);
                if d > 1e-9 {
                    mismatches += 1;
                }
            }
            (Err(ProjError::EmptySet), Err(ProjError::EmptySet)) => {}
            _ => mismatches += 1,
        }
        seen.insert(s.label.clone());
    }
    let mut required: Vec<String> = (1..=9).map(|k| format!("pair/dependent-{k}")).collect();
    for r in ["InsideBoth", "C1", "C2", "C3"] {
        required.push(format!("pair/{r}"));
    }
    for r in ["InC", "NotInC", "FirstSetOnly", "SecondSetOnly"] {
        required.push(format!("mixed/{r}"));
    }
    required.push("mixed/empty".into());
    for r in ["Independent", "Redundant", "WithZeroPlane"] {
        required.push(format!("system/{r}"));
    }
    required.push("system/empty".into());
    let missing: Vec<&String> = required.iter().filter(|r| !seen.contains(*r)).collect();
    let elapsed = start.elapsed().as_secs_f64();
    Outcome::new(
        mismatches == 0 && missing.is_empty() && elapsed < 60.0,
        format!(
            "{} instances, {mismatches} mismatches, max distance {worst:.2e}, missing branches {missing:?}, {elapsed:.1}s",
            samples.len()
        ),
    )
}

fn exact(w: &Halfspace) -> BandedHalfspace<'_> {
    BandedHalfspace { set: w, tol: 0.0 }
}

fn compose(projectors: &[&dyn Projector], x: &Vector) -> Result<Vector> {
    Ok(compose_iterate(projectors, x, 1, None)?.iterates[1].clone())
}

fn criterion_exactness() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    let mut record = |got: Result<Vector>, want: &Vector| match got {
        Ok(p) => {
            let d = p.distance(want);
            worst = worst.max(d);
            if d > 1e-10 {
                failures += 1;
            }
        }
        Err(_) => failures += 1,
    };

    let feasible_ld = [1u8, 3, 5, 7, 9];
    for i in 0..1_000 {
        let mut g = Generator::new(40_000 + i as u64, dim_for(i)).unwrap();
        let (w1, w2) = g.halfspace_pair(PairStratum::Dependent(feasible_ld[i % 5]));
        let x = g.point();
        let want = project_halfspace_pair(&w1, &w2, &x).unwrap().point;
        record(compose(&[&w1, &w2], &x), &want);
    }
    for i in 0..1_000 {
        let mut g = Generator::new(41_000 + i as u64, dim_for(i)).unwrap();
        let (w1, w2) = g.halfspace_pair(PairStratum::Orthogonal);
        let x = g.point();
        let want = project_halfspace_pair(&w1, &w2, &x).unwrap().point;
        record(compose(&[&w1, &w2], &x), &want);
    }
    let mixed = [
        MixedStratum::Dependent,
        MixedStratum::WholeSpaceHyperplane,
        MixedStratum::Orthogonal,
    ];
    for i in 0..1_000 {
        let mut g = Generator::new(42_000 + i as u64, dim_for(i)).unwrap();
        let (h1, w2) = g.hyperplane_halfspace(mixed[i % 3]);
        let x = g.point();
        let want = project_hyperplane_halfspace(&h1, &w2, &x).unwrap().point;
        record(compose(&[&h1, &w2], &x), &want);
        record(compose(&[&w2, &h1], &x), &want);
    }
    Outcome::new(
        failures == 0,
        format!("4000 composition checks, {failures} failures, max deviation {worst:.2e}"),
    )
}

fn criterion_rates() -> Outcome {
    let mut failures = 0;
    let mut worst = f64::NEG_INFINITY;
    for i in 0..1_000 {
        let mut g = Generator::new(50_000 + i as u64, dim_for(i)).unwrap();
        let (w1, w2) = g.halfspace_pair(PairStratum::Negative);
        let x = g.point();
        let gamma = rate_gamma(&w1.u, &w2.u).unwrap();
        let (p1, p2) = (exact(&w1), exact(&w2));
        let report = verify_bam(
            |y| compose(&[&p1, &p2], y),
            |y| Ok(project_halfspace_pair_with(&w1, &w2, y, &EXACT)?.point),
            gamma,
            &[x],
            50,
        );
        failures += usize::from(!report.all_hold());
        worst = worst.max(report.samples[0].worst_excess);
    }
    for i in 0..1_000 {
        let mut g = Generator::new(51_000 + i as u64, dim_for(i)).unwrap();
        let stratum = if i % 2 == 0 {
            MixedStratum::Negative
        } else {
            MixedStratum::Positive
        };
        let (h1, w2) = g.hyperplane_halfspace(stratum);
        let x = g.point();
        let gamma = rate_gamma(&h1.u, &w2.u).unwrap();
        let p2 = exact(&w2);
        let report = verify_bam(
            |y| compose(&[&h1, &p2], y),
            |y| Ok(project_hyperplane_halfspace_with(&h1, &w2, y, &EXACT)?.point),
            gamma,
            &[x],
            50,
        );
        failures += usize::from(!report.all_hold());
        worst = worst.max(report.samples[0].worst_excess);
    }
    Outcome::new(
        failures == 0,
        format!("2000 instances, k ≤ 50, {failures} failures, worst excess over bound {worst:.2e}"),
    )
}

fn criterion_one_step() -> Outcome {
    let mut infeasible = 0;
    let mut unequal = 0;
    let mut equal_checks = 0;
    for i in 0..1_000 {
        let mut g = Generator::new(60_000 + i as u64, dim_for(i)).unwrap();
        let (w1, w2) = g.halfspace_pair(PairStratum::Positive);
        let x = g.point();
        let y = compose(&[&w1, &w2], &x).unwrap();
        let inside = |w: &Halfspace, p: &Vector| w.contains(p, MEMBERSHIP_TOL).unwrap().is_member();
        if !(inside(&w1, &y) && inside(&w2, &y)) {
            infeasible += 1;
        }
        let p_h1 = project_hyperplane(&w1.boundary(), &x).unwrap();
        if inside(&w1, &x) || inside(&w2, &x) || inside(&w2, &p_h1) {
            equal_checks += 1;
            let want = project_halfspace_pair(&w1, &w2, &x).unwrap().point;
            if y.distance(&want) > 1e-10 {
                unequal += 1;
            }
        }
    }
    let mut min_gap = f64::INFINITY;
    let witnesses = 60;
    let mut g = Generator::new(61_000, 3).unwrap();
    for _ in 0..witnesses {
        let (w1, w2, x) = g.one_step_witness();
        let y = compose(&[&w1, &w2], &x).unwrap();
        let want = project_halfspace_pair(&w1, &w2, &x).unwrap().point;
        min_gap = min_gap.min(y.distance(&want));
    }
    Outcome::new(
        infeasible == 0 && unequal == 0 && min_gap > 1e-6,
        format!(
            "1000 pairs: {infeasible} infeasible outputs, {unequal}/{equal_checks} equality failures; {witnesses} witnesses, min gap {min_gap:.2e}"
        ),
    )
}

fn criterion_reverse_order() -> Outcome {
    let mut failures = [0usize; 2];
    let mut worst = f64::NEG_INFINITY;
    for (slot, x_in_w2) in [(0, true), (1, false)] {
        let mut g = Generator::new(70_000 + slot as u64, 4).unwrap();
        for _ in 0..250 {
            let (h1, w2, x) = g.reverse_order_witness(x_in_w2);
            let target = project_hyperplane_halfspace_with(&h1, &w2, &x, &EXACT)
                .unwrap()
                .point;
            let gamma = rate_gamma(&h1.u, &w2.u).unwrap();
            let initial = x.distance(&target);
            let p2 = exact(&w2);
            let trace = compose_iterate(&[&p2, &h1], &x, 50, None).unwrap();
            let mut bound = 1.0;
            for k in 1..=50 {
                bound *= gamma;
                let z = &trace.iterates[k.min(trace.steps())];
                let observed = if x_in_w2 {
                    p2.project(z).unwrap()
                } else {
                    z.clone()
                };
                let excess = observed.distance(&target) - bound * initial;
                worst = worst.max(excess);
                if excess > 1e-9 {
                    failures[slot] += 1;
                    break;
                }
            }
        }
    }
    // when P_{H1} P_{W2} x lands in W2 it is the projection onto H1 ∩ W2
    let mut lands = 0;
    let mut misses = 0;
    for i in 0..1_000 {
        let mut g = Generator::new(71_000 + i as u64, dim_for(i)).unwrap();
        let (h1, w2) = g.hyperplane_halfspace(MixedStratum::Negative);
        let x = g.point();
        let z = compose(&[&w2, &h1], &x).unwrap();
        if w2.contains(&z, MEMBERSHIP_TOL).unwrap().is_member() {
            lands += 1;
            let on_h1 = h1.contains(&z, MEMBERSHIP_TOL).unwrap() == Membership::OnPlane;
            if !on_h1 {
                misses += 1;
            }
        }
    }
    Outcome::new(
        failures == [0, 0] && misses == 0,
        format!(
            "250 with x ∈ W2: {} failures; 250 with x ∉ W2: {} failures; worst excess {worst:.2e}; {lands} one-step landings, {misses} off H1",
            failures[0], failures[1]
        ),
    )
}

fn criterion_dykstra() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    let pair_strata = [
        PairStratum::Negative,
        PairStratum::Positive,
        PairStratum::Orthogonal,
        PairStratum::Dependent(7),
        PairStratum::Dependent(9),
    ];
    for i in 0..500 {
        let mut g = Generator::new(80_000 + i as u64, dim_for(i)).unwrap();
        let (sets, want): (Vec<Constraint>, Vector);
        let x;
        if i % 4 == 3 {
            let (h1, w2) = g.hyperplane_halfspace(MixedStratum::Negative);
            x = g.point();
            want = project_hyperplane_halfspace(&h1, &w2, &x).unwrap().point;
            sets = vec![h1.into(), w2.into()];
        } else {
            let (w1, w2) = g.halfspace_pair(pair_strata[i % pair_strata.len()]);
            x = g.point();
            want = project_halfspace_pair(&w1, &w2, &x).unwrap().point;
            sets = vec![w1.into(), w2.into()];
        }
        let trace = dykstra(&sets, &x, 10_000, 1e-13).unwrap();
        let d = trace.last().distance(&want);
        worst = worst.max(d);
        if d > 1e-6 {
            failures += 1;
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    Outcome::new(
        failures == 0 && elapsed < 30.0,
        format!("500 instances, {failures} failures, max distance {worst:.2e}, {elapsed:.1}s"),
    )
}

fn criterion_kkt(samples: &[Sample]) -> Outcome {
    let mut checked = 0;
    let mut invalid = 0;
    let mut perturbations = 0;
    let mut weak = 0;
    let mut min_residual = f64::INFINITY;
    for s in samples {
        let Ok(b) = &s.closed else { continue };
        checked += 1;
        let (lambda, beta) = split_multipliers(&s.sets, &b.coefficients);
        let cert = kkt_check(&s.sets, &s.x, &b.point, &lambda, &beta, 1e-9).unwrap();
        if !cert.valid {
            invalid += 1;
        }
        for i in 0..b.coefficients.len() {
            if b.coefficients[i] == 0.0 {
                continue;
            }
            for delta in [0.1, -0.1] {
                let mut c = b.coefficients.clone();
                c[i] += delta;
                let (lambda, beta) = split_multipliers(&s.sets, &c);
                let cert = kkt_check(&s.sets, &s.x, &b.point, &lambda, &beta, 1e-9).unwrap();
                perturbations += 1;
                min_residual = min_residual.min(cert.stationarity_residual);
                if cert.stationarity_residual < 0.05 {
                    weak += 1;
                }
            }
        }
    }
    Outcome::new(
        invalid == 0 && weak == 0 && perturbations > 0,
        format!(
            "{checked} certificates, {invalid} invalid; {perturbations} perturbations, {weak} below 0.05, min residual {min_residual:.3}"
        ),
    )
}

fn criterion_desk_examples() -> Outcome {
    let failed: RefCell<Vec<&str>> = RefCell::new(Vec::new());
    let check = |name: &'static str, got: Result<Vector>, want: &[f64], tol: f64| {
        if !matches!(got, Ok(ref p) if p.distance(&v(want)) <= tol) {
            failed.borrow_mut().push(name);
        }
    };
    let tol = 1e-12;
    check(
        "hyperplane (3,2)",
        project_hyperplane(&hp(&[1.0, 0.0], 1.0), &v(&[3.0, 2.0])),
        &[1.0, 2.0],
        tol,
    );
    check(
        "hyperplane (1,1)",
        project_hyperplane(&hp(&[1.0, 1.0], 0.0), &v(&[1.0, 1.0])),
        &[0.0, 0.0],
        tol,
    );
    check(
        "hyperplane fixed point",
        project_hyperplane(&hp(&[2.0, 0.0], 2.0), &v(&[1.0, 7.0])),
        &[1.0, 7.0],
        tol,
    );
    check(
        "halfspace interior",
        project_halfspace(&hs(&[1.0, 0.0], 1.0), &v(&[0.0, 0.0])),
        &[0.0, 0.0],
        tol,
    );
    check(
        "halfspace exterior",
        project_halfspace(&hs(&[1.0, 0.0], 1.0), &v(&[2.0, 0.0])),
        &[1.0, 0.0],
        tol,
    );
    check(
        "halfspace whole space",
        project_halfspace(&hs(&[0.0, 0.0], 3.0), &v(&[5.0, 5.0])),
        &[5.0, 5.0],
        tol,
    );
    let planes = |p: &[Hyperplane], x: &[f64]| project_hyperplanes(p, &v(x)).map(|b| b.point);
    check(
        "system R³",
        planes(
            &[hp(&[1.0, 0.0, 0.0], 1.0), hp(&[0.0, 1.0, 0.0], 2.0)],
            &[0.0, 0.0, 5.0],
        ),
        &[1.0, 2.0, 5.0],
        tol,
    );
    check(
        "system point",
        planes(&[hp(&[1.0, 0.0], 1.0), hp(&[1.0, 1.0], 3.0)], &[0.0, 0.0]),
        &[1.0, 2.0],
        tol,
    );
    check(
        "system redundant",
        planes(&[hp(&[1.0, 0.0], 1.0), hp(&[2.0, 0.0], 2.0)], &[4.0, 4.0]),
        &[1.0, 4.0],
        tol,
    );
    let pair = |w1: Halfspace, w2: Halfspace, x: &[f64]| -> Result<(Vector, Vec<f64>, Case)> {
        let b = project_halfspace_pair(&w1, &w2, &v(x))?;
        Ok((b.point, b.coefficients, b.case))
    };
    match pair(hs(&[1.0, 0.0], 0.0), hs(&[0.0, 1.0], 0.0), &[2.0, 3.0]) {
        Ok((p, c, Case::Region(Region::C3)))
            if p.distance(&v(&[0.0, 0.0])) <= tol && c == [2.0, 3.0] => {}
        _ => failed.borrow_mut().push("orthant pair"),
    }
    match pair(hs(&[1.0, 0.0], 1.0), hs(&[1.0, 1.0], 0.0), &[2.0, 2.0]) {
        Ok((p, c, Case::Region(Region::C2)))
            if p.distance(&v(&[0.0, 0.0])) <= tol && c == [0.0, 2.0] => {}
        _ => failed.borrow_mut().push("C2 pair"),
    }
    match pair(hs(&[1.0, 0.0], 1.0), hs(&[-2.0, 0.0], 1.0), &[-3.0, 0.0]) {
        Ok((p, _, Case::Dependent(DependentCase::Slab))) if p.distance(&v(&[-0.5, 0.0])) <= tol => {
        }
        _ => failed.borrow_mut().push("slab pair"),
    }
    let mixed =
        |h: Hyperplane, w: Halfspace, x: &[f64]| project_hyperplane_halfspace(&h, &w, &v(x));
    match mixed(hp(&[1.0, 0.0], 1.0), hs(&[0.0, 1.0], 0.0), &[3.0, 2.0]) {
        Ok(b)
            if b.point.distance(&v(&[1.0, 0.0])) <= tol
                && b.coefficients == [2.0, 2.0]
                && b.case == Case::Region(Region::InC) => {}
        _ => failed.borrow_mut().push("mixed InC"),
    }
    match mixed(hp(&[1.0, 0.0], 1.0), hs(&[0.0, 1.0], 0.0), &[3.0, -5.0]) {
        Ok(b)
            if b.point.distance(&v(&[1.0, -5.0])) <= tol
                && b.coefficients == [2.0, 0.0]
                && b.case == Case::Region(Region::NotInC) => {}
        _ => failed.borrow_mut().push("mixed NotInC"),
    }
    check(
        "mixed dependent",
        mixed(hp(&[1.0, 0.0], 1.0), hs(&[2.0, 0.0], 4.0), &[9.0, 9.0]).map(|b| b.point),
        &[1.0, 9.0],
        tol,
    );
    let (h1, w2) = (hp(&[1.0, 0.0], 1.0), hs(&[1.0, 1.0], 0.0));
    check(
        "composition P_W2 P_H1",
        compose(&[&h1, &w2], &v(&[2.0, 2.0])),
        &[-0.5, 0.5],
        tol,
    );
    let (w1, w2) = (hs(&[1.0, 0.0], 0.0), hs(&[0.0, 1.0], 0.0));
    check(
        "composition orthant",
        compose(&[&w1, &w2], &v(&[2.0, 3.0])),
        &[0.0, 0.0],
        tol,
    );

    let oracle = |sets: Vec<Constraint>, x: &[f64]| oracle_project(&sets, &v(x)).map(|o| o.point);
    check(
        "oracle orthant",
        oracle(vec![w1.clone().into(), w2.clone().into()], &[2.0, 3.0]),
        &[0.0, 0.0],
        tol,
    );
    check(
        "oracle mixed",
        oracle(
            vec![hp(&[1.0, 0.0], 1.0).into(), hs(&[0.0, 1.0], 0.0).into()],
            &[3.0, 2.0],
        ),
        &[1.0, 0.0],
        tol,
    );
    check(
        "oracle interior",
        oracle(vec![hs(&[1.0, 0.0], 5.0).into()], &[1.0, 1.0]),
        &[1.0, 1.0],
        tol,
    );
    let dyk = |sets: Vec<Constraint>, x: &[f64]| {
        dykstra(&sets, &v(x), 10_000, 1e-14).map(|t| t.last().clone())
    };
    check(
        "dykstra orthant",
        dyk(vec![w1.clone().into(), w2.clone().into()], &[2.0, 3.0]),
        &[0.0, 0.0],
        1e-6,
    );
    check(
        "dykstra pair",
        dyk(
            vec![hs(&[1.0, 0.0], 1.0).into(), hs(&[1.0, 1.0], 0.0).into()],
            &[2.0, 2.0],
        ),
        &[0.0, 0.0],
        1e-6,
    );

    let sets: Vec<Constraint> = vec![hp(&[1.0, 0.0], 1.0).into(), hs(&[0.0, 1.0], 0.0).into()];
    let x = v(&[3.0, 2.0]);
    let p = v(&[1.0, 0.0]);
    match kkt_check(&sets, &x, &p, &[2.0], &[2.0], 1e-9) {
        Ok(c) if c.valid && c.stationarity_residual <= 1e-12 => {}
        _ => failed.borrow_mut().push("kkt valid"),
    }
    match kkt_check(&sets, &x, &p, &[0.0], &[2.0], 1e-9) {
        Ok(c) if !c.valid && (c.stationarity_residual - 2.0).abs() <= tol => {}
        _ => failed.borrow_mut().push("kkt invalid"),
    }

    let failed = failed.into_inner();
    Outcome::new(failed.is_empty(), format!("failed examples: {failed:?}"))
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() -> ExitCode {
    let samples = all_samples();
    let criteria: Vec<Criterion> = vec![
        (
            "oracle equivalence",
            Box::new(|| criterion_oracle(&samples)),
        ),
        (
            "exact-composition identities",
            Box::new(criterion_exactness),
        ),
        ("rate bounds", Box::new(criterion_rates)),
        ("one-step feasibility", Box::new(criterion_one_step)),
        ("reverse-order bounds", Box::new(criterion_reverse_order)),
        ("Dykstra convergence", Box::new(criterion_dykstra)),
        ("KKT certificates", Box::new(|| criterion_kkt(&samples))),
        ("worked examples", Box::new(criterion_desk_examples)),
    ];
    let mut all_passed = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        all_passed &= outcome.passed;
        let tag = if outcome.passed { "PASS" } else { "FAIL" };
        println!("{tag} criterion {}: {name}: {}", i + 1, outcome.detail);
    }
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
