//! Acceptance suite. Each test prints a single `[PASS]`/`[FAIL]` line for
//! its criterion before asserting, so `cargo test --test acceptance --
//! --nocapture` gives a one-screen summary.

mod common;

use chebcert::{
    check_isolability, cut_condition_check, descent_direction, extract_extremal_sets,
    extremal_tolerance, fit_minimax, uniform_error, verify_necessary_condition,
    verify_optimality, verify_shift_lemma, verify_signed_sets, BasisSpec, Coefficients, Dataset,
    Isolability, ShiftIdentity, SignedPointSet, Verdict,
};
use common::*;
use rand::Rng;
use std::time::{Duration, Instant};

const EXTREMAL_REL: f64 = 1e-7;
const CERT_TOL: f64 = 1e-7;

fn report(id: u32, title: &str, pass: bool, detail: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("criterion {id} [{tag}] {title}: {detail}");
}

struct Instance {
    label: String,
    basis: BasisSpec<f64>,
    data: Dataset<f64>,
    coefficients: Coefficients<f64>,
    /// Whether the coefficients are a fitted optimum (otherwise perturbed).
    fitted: bool,
}

fn tolerance_for(inst: &Instance) -> f64 {
    let psi = uniform_error(&inst.basis, &inst.coefficients, &inst.data).unwrap();
    extremal_tolerance(psi, EXTREMAL_REL)
}

fn verdict(inst: &Instance) -> Verdict<f64> {
    verify_optimality(&inst.basis, &inst.coefficients, &inst.data, tolerance_for(inst)).unwrap()
}

/// Moves `coefficients` along a random direction until `Ψ` exceeds
/// `factor · Ψ*`.
fn perturb(
    rng: &mut TestRng,
    basis: &BasisSpec<f64>,
    data: &Dataset<f64>,
    coefficients: &Coefficients<f64>,
    psi: f64,
    factor: f64,
) -> Coefficients<f64> {
    let dir: Vec<f64> = (0..basis.size()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let mut t = 0.05 * psi.max(1e-3);
    loop {
        let c = coefficients.stepped(&dir, t);
        if uniform_error(basis, &c, data).unwrap() >= factor * psi {
            return c;
        }
        t *= 2.0;
    }
}

fn uneven_instance() -> Instance {
    let (points, values) = uneven_points();
    let data = Dataset::new(points, values).unwrap();
    let basis = BasisSpec::monomial(2, 1).unwrap();
    let fit = fit_minimax(&basis, &data).unwrap();
    Instance { label: "uneven".into(), basis, data, coefficients: fit.coefficients, fitted: true }
}

fn univariate_instances() -> Vec<(UnivariateCase, Instance, Instance)> {
    let mut rng = rng(0x5eed_0003);
    (0..200)
        .map(|i| {
            let case = univariate_case(&mut rng);
            let data = Dataset::new(case.points.clone(), case.values.clone()).unwrap();
            let basis = BasisSpec::monomial(1, case.degree).unwrap();
            let fit = fit_minimax(&basis, &data).unwrap();
            let moved = perturb(&mut rng, &basis, &data, &fit.coefficients, fit.error, 1.1);
            let fitted = Instance {
                label: format!("univariate #{i}"),
                basis: basis.clone(),
                data: data.clone(),
                coefficients: fit.coefficients,
                fitted: true,
            };
            let perturbed = Instance {
                label: format!("univariate #{i} perturbed"),
                basis,
                data,
                coefficients: moved,
                fitted: false,
            };
            (case, fitted, perturbed)
        })
        .collect()
}

/// Small random instances with their oracle value; the perturbed instance
/// is absent when the data lie in the model span.
fn small_instances() -> Vec<(f64, Instance, Option<Instance>)> {
    let mut rng = rng(0x5eed_0004);
    (0..100)
        .map(|i| {
            let case = small_case(&mut rng);
            let exps = reference_monomials(case.dimension, case.degree);
            let lifts: Vec<Vec<f64>> = case.points.iter().map(|p| reference_lift(&exps, p)).collect();
            let oracle = circuit_minimax_error(&lifts, &case.values);
            let data = Dataset::new(case.points, case.values).unwrap();
            let basis = BasisSpec::monomial(case.dimension, case.degree).unwrap();
            let fit = fit_minimax(&basis, &data).unwrap();
            let perturbed = (fit.error > 1e-6).then(|| Instance {
                label: format!("small #{i} perturbed"),
                coefficients: perturb(&mut rng, &basis, &data, &fit.coefficients, fit.error, 1.1),
                basis: basis.clone(),
                data: data.clone(),
                fitted: false,
            });
            let fitted = Instance {
                label: format!("small #{i}"),
                basis,
                data,
                coefficients: fit.coefficients,
                fitted: true,
            };
            (oracle, fitted, perturbed)
        })
        .collect()
}

/// Every instance from criteria 1, 3 and 4 with non-zero error.
fn all_instances() -> Vec<Instance> {
    let mut out = vec![uneven_instance()];
    for (_, f, p) in univariate_instances() {
        out.push(f);
        out.push(p);
    }
    for (_, f, p) in small_instances() {
        if let Some(p) = p {
            out.push(f);
            out.push(p);
        }
    }
    out
}

#[test]
fn criterion_1_uneven_example() {
    let start = Instant::now();
    let inst = uneven_instance();
    let psi = uniform_error(&inst.basis, &inst.coefficients, &inst.data).unwrap();
    let mut problems = Vec::new();
    if (psi - 1.0).abs() > 1e-9 {
        problems.push(format!("error {psi}"));
    }
    match verdict(&inst) {
        Verdict::Optimal(cert) => {
            let pos: Vec<usize> = cert.positive.iter().map(|s| s.index).collect();
            let mut neg: Vec<usize> = cert.negative.iter().map(|s| s.index).collect();
            neg.sort_unstable();
            if pos != vec![3] || neg != vec![0, 1, 2] {
                problems.push(format!("support {pos:?} / {neg:?}"));
            }
            for (idx, w) in [(0, 0.25), (1, 0.25), (2, 0.5)] {
                let got = cert.negative.iter().find(|s| s.index == idx).map_or(0.0, |s| s.weight);
                if (got - w).abs() > 1e-7 {
                    problems.push(format!("weight on point {idx} is {got}, expected {w}"));
                }
            }
        }
        Verdict::NotOptimal(_) => problems.push("verdict NotOptimal".into()),
    }
    let ext =
        extract_extremal_sets(&inst.basis, &inst.coefficients, &inst.data, tolerance_for(&inst))
            .unwrap();
    if ext.positive != vec![3] || ext.negative != vec![0, 1, 2] {
        problems.push(format!("extremal sets {:?} / {:?}", ext.positive, ext.negative));
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(1) {
        problems.push(format!("took {elapsed:?}"));
    }
    let pass = problems.is_empty();
    let detail = if pass {
        format!("error 1, Optimal, weights (1/4, 1/4, 1/2), {elapsed:?}")
    } else {
        problems.join("; ")
    };
    report(1, "uneven four-point example", pass, &detail);
    assert!(pass, "{detail}");
}

#[test]
fn criterion_2_stated_counterexample() {
    let start = Instant::now();
    let (plus, minus) = stated_counterexample();
    let basis = BasisSpec::monomial(2, 2).unwrap();
    let full = verify_signed_sets(&basis, &plus, &minus).unwrap();
    let set = SignedPointSet::from_sides(plus, minus, 2).unwrap();
    let cuts = cut_condition_check(&set).unwrap();
    let elapsed = start.elapsed();

    let full_infeasible = !full.is_optimal();
    let cuts_hold = cuts.holds();
    let pass = full_infeasible && cuts_hold && elapsed < Duration::from_secs(1);
    let full_text = match &full {
        Verdict::Optimal(c) => {
            let w = |side: &[chebcert::SupportPoint<f64>]| {
                side.iter().map(|s| format!("{}:{:.4}", s.index, s.weight)).collect::<Vec<_>>()
            };
            format!(
                "full hull LP FEASIBLE (weights E+ {:?}, E- {:?}, residual {:.1e})",
                w(&c.positive),
                w(&c.negative),
                c.residual
            )
        }
        Verdict::NotOptimal(w) => format!("full hull LP infeasible (margin {:.3e})", w.margin),
    };
    let detail = format!(
        "{full_text}; {} of {} line cuts feasible; {elapsed:?}",
        cuts.checks.iter().filter(|c| c.feasible).count(),
        cuts.checks.len()
    );
    report(2, "counterexample: cuts hold, full condition fails", pass, &detail);
    assert!(pass, "{detail}");
}

#[test]
fn criterion_3_univariate_alternance() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (case, fitted, perturbed) in univariate_instances() {
        let m = case.degree as usize;
        let tol = tolerance_for(&fitted);
        let ext =
            extract_extremal_sets(&fitted.basis, &fitted.coefficients, &fitted.data, tol).unwrap();
        let mut idx: Vec<(usize, bool)> = ext
            .positive
            .iter()
            .map(|&k| (k, true))
            .chain(ext.negative.iter().map(|&k| (k, false)))
            .collect();
        idx.sort_unstable();
        let signs: Vec<bool> = idx.iter().map(|&(_, s)| s).collect();
        let alternation = alternation_length(&signs);
        if alternation < m + 2 {
            failures.push(format!("{}: alternation {alternation} < {}", fitted.label, m + 2));
        }
        if !verdict(&fitted).is_optimal() {
            failures.push(format!("{}: fit not certified optimal", fitted.label));
        }
        let set = SignedPointSet::from_extremal(&fitted.data, &ext, case.degree).unwrap();
        if !verify_necessary_condition(&set).unwrap().holds() {
            failures.push(format!("{}: degree reduction violated", fitted.label));
        }
        if verdict(&perturbed).is_optimal() {
            failures.push(format!("{}: certified optimal", perturbed.label));
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(30) {
        failures.push(format!("took {elapsed:?}"));
    }
    let pass = failures.is_empty();
    let detail = if pass {
        format!("200 datasets, all alternate and certify; perturbations rejected; {elapsed:?}")
    } else {
        format!("{} problems, first: {}", failures.len(), failures[0])
    };
    report(3, "univariate alternance", pass, &detail);
    assert!(pass, "{failures:#?}");
}

#[test]
fn criterion_4_oracle_equivalence() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    for (oracle, fitted, _) in small_instances() {
        let psi = uniform_error(&fitted.basis, &fitted.coefficients, &fitted.data).unwrap();
        let gap = (psi - oracle).abs();
        worst = worst.max(gap);
        if gap > 1e-5 {
            failures.push(format!("{}: LP {psi} vs oracle {oracle}", fitted.label));
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(60) {
        failures.push(format!("took {elapsed:?}"));
    }
    let pass = failures.is_empty();
    let detail = if pass {
        format!("100 instances, max |LP − oracle| = {worst:.2e}, {elapsed:?}")
    } else {
        format!("{} problems, first: {}", failures.len(), failures[0])
    };
    report(4, "LP error matches circuit-enumeration oracle", pass, &detail);
    assert!(pass, "{failures:#?}");
}

#[test]
fn criterion_5_certificate_and_witness_soundness() {
    let mut failures = Vec::new();
    let (mut certs, mut descents) = (0, 0);
    for inst in all_instances() {
        match verdict(&inst) {
            Verdict::Optimal(cert) => {
                certs += 1;
                if let Err(e) = cert.validate(CERT_TOL) {
                    failures.push(format!("{}: {e}", inst.label));
                }
                if cert.support_size() > inst.basis.size() + 1 {
                    failures.push(format!("{}: support {}", inst.label, cert.support_size()));
                }
            }
            Verdict::NotOptimal(w) => {
                descents += 1;
                match descent_direction(&inst.basis, &inst.coefficients, &inst.data, &w) {
                    Ok(d) if d.error_after < d.error_before => {}
                    Ok(d) => failures.push(format!("{}: no decrease {d:?}", inst.label)),
                    Err(e) => failures.push(format!("{}: {e}", inst.label)),
                }
            }
        }
    }
    let pass = failures.is_empty();
    let detail = if pass {
        format!("{certs} certificates re-validated, {descents} witnesses gave descent")
    } else {
        format!("{} problems, first: {}", failures.len(), failures[0])
    };
    report(5, "certificate and witness soundness", pass, &detail);
    assert!(pass, "{failures:#?}");
}

#[test]
fn criterion_6_isolability_equivalence() {
    let mut disagreements = Vec::new();
    let mut checked = 0;
    for inst in all_instances() {
        let ext = extract_extremal_sets(
            &inst.basis,
            &inst.coefficients,
            &inst.data,
            tolerance_for(&inst),
        )
        .unwrap();
        let pick = |idx: &[usize]| -> Vec<Vec<f64>> {
            idx.iter().map(|&k| inst.data.point(k).to_vec()).collect()
        };
        let iso = check_isolability(&pick(&ext.positive), &pick(&ext.negative), &inst.basis).unwrap();
        let optimal = verdict(&inst).is_optimal();
        checked += 1;
        if optimal == iso.is_isolable() {
            disagreements.push(format!("{} (fitted: {})", inst.label, inst.fitted));
        }
    }
    for (name, (plus, minus)) in
        [("stated counterexample", stated_counterexample()), ("gap example", gap_example())]
    {
        let basis = BasisSpec::monomial(2, 2).unwrap();
        let optimal = verify_signed_sets(&basis, &plus, &minus).unwrap().is_optimal();
        let iso = check_isolability(&plus, &minus, &basis).unwrap();
        checked += 1;
        if optimal == matches!(iso, Isolability::Isolable(_)) {
            disagreements.push(name.to_string());
        }
    }
    let pass = disagreements.is_empty();
    let detail = format!("{checked} instances, {} disagreements", disagreements.len());
    report(6, "Optimal iff not isolable", pass, &detail);
    assert!(pass, "{disagreements:#?}");
}

#[test]
fn criterion_7_shift_identity() {
    let mut rng = rng(0x5eed_0007);
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    for _ in 0..1000 {
        let c = shift_case(&mut rng);
        let id = ShiftIdentity {
            alpha: c.alpha.clone(),
            a: c.a.clone(),
            x: c.x.clone(),
            beta: c.beta.clone(),
            b: c.b.clone(),
            y: c.y.clone(),
        };
        if !id.weights_valid() || !id.premises_hold() {
            failures += 1;
            continue;
        }
        for _ in 0..10 {
            let delta = rng.gen_range(-10.0..10.0);
            let (l, r) = shift_sides(&c, delta);
            let rel = (l - r).abs() / (1.0 + l.abs());
            worst = worst.max(rel);
            let ok = verify_shift_lemma(&c.alpha, &c.a, &c.x, &c.beta, &c.b, &c.y, delta);
            if rel > 1e-9 || !ok {
                failures += 1;
            }
        }
    }
    let pass = failures == 0;
    let detail = format!("1000 instances × 10 shifts, worst relative residual {worst:.2e}, {failures} failures");
    report(7, "shift identity", pass, &detail);
    assert!(pass, "{detail}");
}
