//! Total-belief constructor and enumerator: the worked three-cell instance
//! with prior over the whole power set, random-problem verification,
//! minimal-solution enumeration and column substitutions.

use ranset_core::frame::{Frame, SubsetMask};
use ranset_core::mass::MassFunction;
use ranset_core::multivariate::Refining;
use ranset_core::sampling;
use ranset_core::total_belief::{
    admissible_focal_elements, assemble_special_total, build_constraint_system,
    column_substitution, construct_total, construct_total_product, enumerate_minimal_solutions,
    find_second_solution, select_minimal_system, solution_mass_function, verify_total,
    TotalBeliefProblem,
};
use ranset_core::{Error, Rng};

/// The three-cell worked instance: cells of sizes 2/1/2, conditionals with
/// 2, 1 and 2 focal elements, prior with every nonempty subset focal.
fn worked_instance() -> TotalBeliefProblem {
    let coarse = Frame::new(["w1", "w2", "w3"]).unwrap();
    let fine = Frame::new(["a", "b", "c", "d", "e"]).unwrap();
    let cells = vec![
        SubsetMask::new(0b00011), // {a, b}
        SubsetMask::new(0b00100), // {c}
        SubsetMask::new(0b11000), // {d, e}
    ];
    let rho = Refining::new(coarse.clone(), fine, cells).unwrap();
    // Conditionals: e1^1 = {a}, e1^2 = {b}; e2^1 = {c}; e3^1 = {d},
    // e3^2 = {d, e}.
    let c0 = rho.cell_frame(0);
    let cond0 = MassFunction::new(
        c0,
        [
            (SubsetMask::singleton(0), 0.5),
            (SubsetMask::singleton(1), 0.5),
        ],
        true,
    )
    .unwrap();
    let cond1 = MassFunction::categorical(rho.cell_frame(1), SubsetMask::singleton(0)).unwrap();
    let c2 = rho.cell_frame(2);
    let cond2 = MassFunction::new(
        c2.clone(),
        [(SubsetMask::singleton(0), 1.0 / 3.0), (c2.full(), 2.0 / 3.0)],
        true,
    )
    .unwrap();
    let prior = MassFunction::new(
        coarse.clone(),
        [
            (SubsetMask::new(0b001), 1.0 / 16.0),
            (SubsetMask::new(0b010), 1.0 / 16.0),
            (SubsetMask::new(0b100), 1.0 / 16.0),
            (SubsetMask::new(0b011), 2.0 / 16.0),
            (SubsetMask::new(0b110), 4.0 / 16.0),
            (SubsetMask::new(0b101), 3.0 / 16.0),
            (coarse.full(), 4.0 / 16.0),
        ],
        true,
    )
    .unwrap();
    TotalBeliefProblem::new(rho, prior, vec![cond0, cond1, cond2]).unwrap()
}

#[test]
fn worked_instance_masses_and_counts() {
    let problem = worked_instance();
    let total = construct_total(&problem).unwrap();
    // m(e1^1 ∪ e2^1 ∪ e3^1) = m({a,c,d}) = 1/4 · 1/2 · 1 · 1/3 = 1/24.
    assert!((total.mass(SubsetMask::new(0b01101)) - 1.0 / 24.0).abs() <= 1e-12);
    // m(e1^2 ∪ e2^1 ∪ e3^2) = m({b,c,d,e}) = 1/4 · 1/2 · 1 · 2/3 = 1/12.
    assert!((total.mass(SubsetMask::new(0b11110)) - 1.0 / 12.0).abs() <= 1e-12);

    // |ℰ| = 5 + 8 + 4 = 17 admissible elements; |G| = 8 independent rows
    // (the stacked-row rank is 9 because it includes the normalization,
    // which the count of 8 treats as given).
    let system = build_constraint_system(&problem).unwrap();
    assert_eq!(system.unknown_count, 17);
    assert_eq!(system.g1_independent + system.g2_independent, 8);
    assert_eq!(system.rank, 9);

    // Both properties hold.
    let report = verify_total(&problem, &total).unwrap();
    assert!(report.p1_ok && report.p2_ok);
    assert!(report.prior_residual <= 1e-10);
    assert!(report.conditional_residuals.iter().all(|&r| r <= 1e-10));

    // The canonical solution satisfies every raw constraint row.
    assert!(system.residual_of(&total) <= 1e-12);
}

#[test]
fn worked_instance_has_a_second_solution() {
    let problem = worked_instance();
    let canonical = construct_total(&problem).unwrap();
    let second = find_second_solution(&problem).unwrap();
    let report = verify_total(&problem, &second).unwrap();
    assert!(report.p1_ok && report.p2_ok, "{report:?}");
    assert!(
        second.sup_diff(&canonical) > 1e-4,
        "second solution too close: {}",
        second.sup_diff(&canonical)
    );
}

#[test]
fn perturbed_solution_fails_verification_proportionally() {
    let problem = worked_instance();
    let total = construct_total(&problem).unwrap();
    // Move 1e-3 of mass between two focal elements.
    let entries: Vec<(SubsetMask, f64)> = total
        .focal_elements()
        .map(|(s, m)| {
            if s == SubsetMask::new(0b01101) {
                (s, m - 1e-3)
            } else if s == SubsetMask::new(0b11110) {
                (s, m + 1e-3)
            } else {
                (s, m)
            }
        })
        .collect();
    let perturbed =
        MassFunction::new(problem.refining().fine().clone(), entries, true).unwrap();
    let report = verify_total(&problem, &perturbed).unwrap();
    assert!(!report.p2_ok);
    let worst = report
        .conditional_residuals
        .iter()
        .cloned()
        .fold(0.0f64, f64::max);
    assert!(worst > 1e-4 && worst < 1e-2, "residual {worst}");
}

#[test]
fn admissible_elements_of_full_prior_focal_element() {
    let problem = worked_instance();
    let full = problem.prior().frame().full();
    let adm = admissible_focal_elements(&problem, full).unwrap();
    assert_eq!(adm.len(), 4); // 2 · 1 · 2
}

#[test]
fn enumeration_of_the_restricted_full_subproblem() {
    // Restricted to E = Ω: n_min = (1 + 0 + 1) + 1 = 3, n_max = 4, so
    // C(4,3) = 4 systems. With masses (1/2, 1/2) and (1/3, 2/3) exactly two
    // column choices give nonnegative solutions; the canonical (product)
    // solution uses all four columns and is not minimal, but it satisfies
    // the same constraint rows.
    let problem = worked_instance();
    let full = problem.prior().frame().full();
    let e = enumerate_minimal_solutions(&problem, full, 10_000).unwrap();
    assert_eq!(e.n_min, 3);
    assert_eq!(e.n_max, 4);
    assert_eq!(e.systems_total, 4);
    assert_eq!(e.solutions.len(), 2);

    // Hand-solved values: dropping column (0,·,1) gives (1/3, 1/6, 1/2) on
    // columns {(0,0),(0,1),(1,1)}; dropping (0,·,0) gives (1/2, 1/3, 1/6)
    // on {(0,1),(1,0),(1,1)}.
    let mut found_a = false;
    let mut found_b = false;
    for solution in &e.solutions {
        let vals = &solution.values;
        if solution.column_indices == vec![0, 1, 3] {
            found_a = (vals[0] - 1.0 / 3.0).abs() <= 1e-12
                && (vals[1] - 1.0 / 6.0).abs() <= 1e-12
                && (vals[2] - 0.5).abs() <= 1e-12;
        }
        if solution.column_indices == vec![1, 2, 3] {
            found_b = (vals[0] - 0.5).abs() <= 1e-12
                && (vals[1] - 1.0 / 3.0).abs() <= 1e-12
                && (vals[2] - 1.0 / 6.0).abs() <= 1e-12;
        }
    }
    assert!(found_a && found_b, "{:?}", e.solutions);

    // Every enumerated nonnegative solution solves the restricted
    // subproblem.
    let sub = problem.subproblem(full).unwrap();
    for solution in &e.solutions {
        let mass = solution_mass_function(&problem, full, solution).unwrap();
        let report = verify_total(&sub, &mass).unwrap();
        assert!(report.p1_ok && report.p2_ok, "{report:?}");
    }

    // Cross-check: the canonical construction restricted to E satisfies the
    // same subproblem.
    let canonical_sub = construct_total(&sub).unwrap();
    let report = verify_total(&sub, &canonical_sub).unwrap();
    assert!(report.p1_ok && report.p2_ok);
}

#[test]
fn random_problems_construct_and_verify() {
    let mut rng = Rng::seed_from(77);
    let mut count = 0;
    for _ in 0..500 {
        let problem = random_problem(&mut rng);
        let direct = construct_total(&problem).unwrap();
        let closed = construct_total_product(&problem).unwrap();
        assert!(direct.sup_diff(&closed) <= 1e-12);
        let report = verify_total(&problem, &direct).unwrap();
        assert!(report.prior_residual <= 1e-10, "{report:?}");
        assert!(
            report.conditional_residuals.iter().all(|&r| r <= 1e-10),
            "{report:?}"
        );
        count += 1;
    }
    assert_eq!(count, 500);
}

/// Random instance: |Ω| ≤ 3, cell sizes ≤ 2, conditional focal counts ≤ 3.
fn random_problem(rng: &mut Rng) -> TotalBeliefProblem {
    let omega = 1 + rng.below(3);
    let cell_sizes: Vec<usize> = (0..omega).map(|_| 1 + rng.below(2)).collect();
    let fine_size: usize = cell_sizes.iter().sum();
    let coarse = Frame::of_size(omega).unwrap();
    let fine = Frame::new((0..fine_size).map(|i| format!("t{i}"))).unwrap();
    let mut cells = Vec::new();
    let mut next = 0usize;
    for &size in &cell_sizes {
        let mut mask = SubsetMask::EMPTY;
        for i in 0..size {
            mask = mask.union(SubsetMask::singleton(next + i));
        }
        cells.push(mask);
        next += size;
    }
    let rho = Refining::new(coarse.clone(), fine, cells).unwrap();
    let prior = sampling::random_full_support(&coarse, rng);
    let conditionals: Vec<MassFunction> = (0..omega)
        .map(|i| {
            let cell_frame = rho.cell_frame(i);
            let max_focals = cell_frame.subset_count() - 1;
            sampling::random_with_focal_count(&cell_frame, max_focals.min(3), rng).unwrap()
        })
        .collect();
    TotalBeliefProblem::new(rho, prior, conditionals).unwrap()
}

#[test]
fn bayesian_priors_have_unique_minimal_solutions() {
    let mut rng = Rng::seed_from(78);
    for _ in 0..50 {
        let problem = random_bayesian_problem(&mut rng);
        let closed = construct_total_product(&problem).unwrap();
        let mut parts = Vec::new();
        for (prior_fe, _) in problem.prior().focal_elements() {
            let e = enumerate_minimal_solutions(&problem, prior_fe, 10_000).unwrap();
            assert_eq!(
                e.solutions.len(),
                1,
                "Bayesian prior must give a unique nonnegative solution"
            );
            parts.push((prior_fe, e.solutions[0].clone()));
        }
        let assembled = assemble_special_total(&problem, &parts).unwrap();
        assert!(assembled.sup_diff(&closed) <= 1e-12);
        let report = verify_total(&problem, &assembled).unwrap();
        assert!(report.p1_ok && report.p2_ok);
    }
}

fn random_bayesian_problem(rng: &mut Rng) -> TotalBeliefProblem {
    let omega = 2 + rng.below(2);
    let cell_sizes: Vec<usize> = (0..omega).map(|_| 1 + rng.below(2)).collect();
    let fine_size: usize = cell_sizes.iter().sum();
    let coarse = Frame::of_size(omega).unwrap();
    let fine = Frame::new((0..fine_size).map(|i| format!("t{i}"))).unwrap();
    let mut cells = Vec::new();
    let mut next = 0usize;
    for &size in &cell_sizes {
        let mut mask = SubsetMask::EMPTY;
        for i in 0..size {
            mask = mask.union(SubsetMask::singleton(next + i));
        }
        cells.push(mask);
        next += size;
    }
    let rho = Refining::new(coarse.clone(), fine, cells).unwrap();
    let prior = sampling::random_bayesian(&coarse, rng);
    let conditionals: Vec<MassFunction> = (0..omega)
        .map(|i| {
            let cell_frame = rho.cell_frame(i);
            let max_focals = cell_frame.subset_count() - 1;
            sampling::random_with_focal_count(&cell_frame, max_focals.min(3), rng).unwrap()
        })
        .collect();
    TotalBeliefProblem::new(rho, prior, conditionals).unwrap()
}

/// Two cells of size 2, two focal elements each, vacuous prior: the
/// substitution test bench. Conditional masses (0.3, 0.7) and (0.4, 0.6).
fn substitution_instance() -> TotalBeliefProblem {
    let coarse = Frame::new(["w1", "w2"]).unwrap();
    let fine = Frame::new(["a", "b", "c", "d"]).unwrap();
    let cells = vec![SubsetMask::new(0b0011), SubsetMask::new(0b1100)];
    let rho = Refining::new(coarse.clone(), fine, cells).unwrap();
    let c0 = rho.cell_frame(0);
    let cond0 = MassFunction::new(
        c0,
        [
            (SubsetMask::singleton(0), 0.3),
            (SubsetMask::singleton(1), 0.7),
        ],
        true,
    )
    .unwrap();
    let c1 = rho.cell_frame(1);
    let cond1 = MassFunction::new(
        c1,
        [
            (SubsetMask::singleton(0), 0.4),
            (SubsetMask::singleton(1), 0.6),
        ],
        true,
    )
    .unwrap();
    let prior = MassFunction::vacuous(coarse);
    TotalBeliefProblem::new(rho, prior, vec![cond0, cond1]).unwrap()
}

#[test]
fn column_substitution_flips_the_negative_component() {
    let problem = substitution_instance();
    let full = problem.prior().frame().full();
    // Columns (0,0), (0,1), (1,0): solution (a+b−1, 1−b, 1−a) =
    // (−0.3, 0.6, 0.7) for a = 0.3, b = 0.4.
    let columns = vec![vec![0, 0], vec![0, 1], vec![1, 0]];
    let system = select_minimal_system(&problem, full, &columns).unwrap();
    assert!((system.solution[0] + 0.3).abs() <= 1e-12);
    assert!((system.solution[1] - 0.6).abs() <= 1e-12);
    assert!((system.solution[2] - 0.7).abs() <= 1e-12);

    let report = column_substitution(&problem, &system, 0).unwrap();
    // e' = −(0,0) + (0,1) + (1,0) = (1,1).
    assert_eq!(report.new_system.columns[0], vec![1, 1]);
    assert_eq!(report.companions, vec![1, 2]);
    assert!(report.selections.is_empty());
    // Documented effects: new component −s, companions decreased by |s|.
    assert!((report.predicted_solution[0] - 0.3).abs() <= 1e-12);
    assert!((report.predicted_solution[1] - 0.3).abs() <= 1e-12);
    assert!((report.predicted_solution[2] - 0.4).abs() <= 1e-12);
    assert!(report.predicted_residual <= 1e-12);
    // Bookkeeping matches an independent solve of the new system.
    for (a, b) in report
        .predicted_solution
        .iter()
        .zip(&report.new_system.solution)
    {
        assert!((a - b).abs() <= 1e-12);
    }
    // Most negative component strictly shrank in magnitude (here: vanished).
    let new_min = report
        .new_system
        .solution
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    assert!(new_min > -1e-12);
}

#[test]
fn substitution_on_positive_component_is_rejected() {
    let problem = substitution_instance();
    let full = problem.prior().frame().full();
    let columns = vec![vec![0, 0], vec![0, 1], vec![1, 0]];
    let system = select_minimal_system(&problem, full, &columns).unwrap();
    assert!(matches!(
        column_substitution(&problem, &system, 1),
        Err(Error::NothingToSubstitute)
    ));
}
