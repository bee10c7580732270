//! Max-entropy classifier oracles: rejection sampling, the bisection
//! closed form for a single binary feature, linearity of the coordinate
//! maps and relaxation dominance over the classical solution.

use ranset_core::frame::SubsetMask;
use ranset_core::mass::MassFunction;
use ranset_core::maxent::{
    classical_maxent, constraint_values, entropy, fit_maxent, EntropyKind, FeatureTable,
    MaxentConfig, MaxentProblem,
};
use ranset_core::sampling;
use ranset_core::Rng;

fn indicator(size: usize, at: usize) -> FeatureTable {
    let mut values = vec![0.0; size];
    values[at] = 1.0;
    FeatureTable {
        name: format!("ind{at}"),
        values,
    }
}

fn two_by_two(entropy: EntropyKind, features: Vec<FeatureTable>) -> MaxentProblem {
    MaxentProblem::new(
        &["x0", "x1"],
        &["c0", "c1"],
        vec![0.35, 0.15, 0.2, 0.3],
        features,
        entropy,
    )
    .unwrap()
}

#[test]
fn solver_beats_rejection_sampled_feasible_points() {
    // 2-class 2-observation toy with one indicator feature: the fitted
    // objective dominates every rejection-sampled feasible assignment.
    let mut rng = Rng::seed_from(61);
    for kind in [EntropyKind::HBel, EntropyKind::Hn, EntropyKind::Hd] {
        let problem = two_by_two(kind, vec![indicator(4, 1)]);
        let fit = fit_maxent(&problem, &MaxentConfig::default()).unwrap();
        assert!(fit.kkt.max_residual <= 1e-6, "{kind:?}: {:?}", fit.kkt);
        let mut accepted = 0usize;
        let mut attempts = 0usize;
        while accepted < 20_000 && attempts < 2_000_000 {
            attempts += 1;
            let candidate = sampling::random_full_support(problem.frame(), &mut rng);
            let gs = constraint_values(&problem, &candidate).unwrap();
            if gs.iter().all(|&(a, b)| a <= 1e-12 && b <= 1e-12) {
                accepted += 1;
                let h = entropy(&candidate, kind).unwrap();
                assert!(
                    h <= fit.objective + 1e-7,
                    "{kind:?}: sampled entropy {h} beats fit {}",
                    fit.objective
                );
            }
        }
        assert!(accepted >= 1_000, "rejection sampler starved: {accepted}");
    }
}

#[test]
fn single_binary_feature_matches_bisection_closed_form() {
    // Classical maxent with one binary feature over classes at a single x:
    // the two-point conditional solves a one-dimensional moment equation,
    // solvable by bisection on the logit.
    let histogram = vec![0.7, 0.3];
    let problem = MaxentProblem::new(
        &["x0"],
        &["c0", "c1"],
        histogram.clone(),
        vec![indicator(2, 0)],
        EntropyKind::Hn,
    )
    .unwrap();
    let fit = classical_maxent(&problem).unwrap();
    // Oracle: find z = λ with p(c0|x0) = e^z/(e^z + 1) matching Ê[φ] = 0.7.
    let mut lo: f64 = -50.0;
    let mut hi: f64 = 50.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let p = mid.exp() / (mid.exp() + 1.0);
        if p < 0.7 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let z: f64 = 0.5 * (lo + hi);
    let p_oracle = z.exp() / (z.exp() + 1.0);
    assert!((fit.conditional[0][0] - p_oracle).abs() <= 1e-8);
    assert!(fit.moment_residual <= 1e-8);
}

#[test]
fn belief_and_plausibility_coordinates_are_linear_in_mass() {
    // Superposition: coordinates of αm₁ + (1−α)m₂ equal the mixture of
    // coordinates, grounding the convexity of the constraints.
    let frame = ranset_core::Frame::new(["a", "b", "c"]).unwrap();
    let mut rng = Rng::seed_from(62);
    for _ in 0..200 {
        let m1 = sampling::random_full_support(&frame, &mut rng);
        let m2 = sampling::random_full_support(&frame, &mut rng);
        let alpha = rng.f64();
        let mix_entries: Vec<(SubsetMask, f64)> = frame
            .subsets()
            .filter(|s| !s.is_empty())
            .map(|s| (s, alpha * m1.mass(s) + (1.0 - alpha) * m2.mass(s)))
            .collect();
        let mix = MassFunction::new(frame.clone(), mix_entries, true).unwrap();
        let bel_mix = mix.belief().unwrap();
        let pl_mix = mix.plausibility().unwrap();
        let bel1 = m1.belief().unwrap();
        let bel2 = m2.belief().unwrap();
        let pl1 = m1.plausibility().unwrap();
        let pl2 = m2.plausibility().unwrap();
        for s in frame.subsets() {
            let b = alpha * bel1.value(s) + (1.0 - alpha) * bel2.value(s);
            let p = alpha * pl1.value(s) + (1.0 - alpha) * pl2.value(s);
            assert!((bel_mix.value(s) - b).abs() <= 1e-12);
            assert!((pl_mix.value(s) - p).abs() <= 1e-12);
        }
    }
}

#[test]
fn optimal_entropy_dominates_the_classical_embedding() {
    // The generalised problem relaxes the classical one, so the optimal
    // entropy is at least the entropy of the classical solution embedded as
    // a Bayesian assignment.
    for kind in EntropyKind::ALL {
        let problem = two_by_two(kind, vec![indicator(4, 0)]);
        let fit = fit_maxent(&problem, &MaxentConfig::default()).unwrap();
        let classical = classical_maxent(&problem).unwrap();
        let embedded =
            MassFunction::bayesian(problem.frame().clone(), &classical.joint).unwrap();
        let classical_entropy = entropy(&embedded, kind).unwrap();
        assert!(
            fit.objective >= classical_entropy - 1e-6,
            "{kind:?}: {} < {classical_entropy}",
            fit.objective
        );
    }
}

#[test]
fn histogram_start_is_always_feasible() {
    let mut rng = Rng::seed_from(63);
    for _ in 0..50 {
        let histogram = sampling::random_convex_weights(4, &mut rng);
        let features = vec![
            FeatureTable {
                name: String::from("f0"),
                values: (0..4).map(|_| rng.f64() * 2.0 - 1.0).collect(),
            },
            FeatureTable {
                name: String::from("f1"),
                values: (0..4).map(|_| rng.f64()).collect(),
            },
        ];
        let problem = MaxentProblem::new(
            &["x0", "x1"],
            &["c0", "c1"],
            histogram,
            features,
            EntropyKind::HBel,
        )
        .unwrap();
        let m = problem.histogram_mass().unwrap();
        let gs = constraint_values(&problem, &m).unwrap();
        for (g1, g2) in gs {
            assert!(g1 <= 1e-12 && g2 <= 1e-12);
        }
    }
}
