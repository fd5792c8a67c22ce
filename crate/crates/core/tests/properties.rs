use nbde_core::baselines::{self, mutate_de_rand_1_indexed, BaselineAlgorithm, BaselineConfig};
use nbde_core::nbde::{self, choose_crossover, mutate_nbde, window_extension};
use nbde_core::population::{clamp_to_bounds, euclidean_distance, nearest_better, uniform_init};
use nbde_core::{
    make_suite, Bounds, CrossoverKind, CrossoverMix, FunctionId, GenerationState, Individual,
    NbdeConfig, ObjectiveSpec, Population, RngStream,
};
use proptest::prelude::*;

/// Exhaustive scan: collect strictly better members with their distances,
/// sort by (distance, index) and take the first.
fn nearest_better_oracle(pop: &Population, i: usize) -> Option<usize> {
    let own = pop.members[i].fitness.unwrap();
    let mut better: Vec<(f64, usize)> = pop
        .members
        .iter()
        .enumerate()
        .filter(|(k, m)| *k != i && m.fitness.unwrap() < own)
        .map(|(k, m)| (euclidean_distance(&pop.members[i].position, &m.position).unwrap(), k))
        .collect();
    better.sort_by(|a, b| a.partial_cmp(b).unwrap());
    better.first().map(|&(_, k)| k)
}

fn random_population(rng: &mut RngStream, np: usize, dim: usize) -> Population {
    let members = (0..np)
        .map(|_| {
            // coarse grid so that distance and fitness ties actually occur
            let pos: Vec<f64> = (0..dim).map(|_| rng.index(5) as f64).collect();
            Individual::evaluated(pos, rng.index(6) as f64)
        })
        .collect();
    Population {
        members,
        generation: 0,
    }
}

#[test]
fn nearest_better_matches_exhaustive_scan() {
    let mut gen = RngStream::seed_from_u64(2024);
    let mut checked = 0;
    for _ in 0..1000 {
        let np = 2 + gen.index(19);
        let dim = 1 + gen.index(5);
        let pop = random_population(&mut gen, np, dim);
        for i in 0..np {
            let got = nearest_better(&pop, i, &mut gen).unwrap();
            match nearest_better_oracle(&pop, i) {
                Some(expected) => {
                    assert_eq!(got, expected);
                    assert!(pop.members[got].fitness < pop.members[i].fitness);
                    checked += 1;
                }
                None => assert_ne!(got, i),
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn exponential_window_length_matches_binomial_mean() {
    // Extension L is the count of D uniform draws <= cr: Binomial(D, cr).
    let (dim, cr, n) = (10usize, 0.6, 10_000);
    let mut rng = RngStream::seed_from_u64(8);
    let total: usize = (0..n).map(|_| window_extension(dim, cr, &mut rng)).sum();
    let mean = total as f64 / n as f64;
    let sd_of_mean = (dim as f64 * cr * (1.0 - cr) / n as f64).sqrt();
    assert!((mean - cr * dim as f64).abs() <= 3.0 * sd_of_mean, "mean {mean}");
}

#[test]
fn crossover_choice_frequencies() {
    let mut rng = RngStream::seed_from_u64(77);
    let mut counts = [0usize; 3];
    let n = 30_000;
    for _ in 0..n {
        let k = match choose_crossover(&CrossoverMix::UNIFORM, &mut rng) {
            CrossoverKind::Binary => 0,
            CrossoverKind::Exponential => 1,
            CrossoverKind::None => 2,
        };
        counts[k] += 1;
    }
    let sigma = (n as f64 * (1.0 / 3.0) * (2.0 / 3.0)).sqrt();
    for c in counts {
        assert!((c as f64 - 10_000.0).abs() <= 3.0 * sigma, "{counts:?}");
    }
}

#[test]
fn hybrid_mutant_mean() {
    // 1-D: x_i = 0, guide = 4, other members at 1 and 3.
    let pop = Population {
        members: vec![
            Individual::evaluated(vec![0.0], 5.0),
            Individual::evaluated(vec![4.0], 0.0),
            Individual::evaluated(vec![1.0], 6.0),
            Individual::evaluated(vec![3.0], 7.0),
        ],
        generation: 0,
    };
    let n = 10_000;
    let mut rng = RngStream::seed_from_u64(12);
    let samples: Vec<f64> = (0..n).map(|_| mutate_nbde(&pop, 0, 1, &mut rng).unwrap()[0]).collect();
    let mean = samples.iter().sum::<f64>() / n as f64;
    let var = samples.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    // random difference is ±2 with equal probability, guide offset is 4
    let expected = 0.0 + 0.5 * 0.0 + 0.5 * 4.0;
    assert!((mean - expected).abs() <= 3.0 * (var / n as f64).sqrt(), "mean {mean}");
}

#[test]
fn full_takeover_equals_mutant() {
    let spec = ObjectiveSpec::new(FunctionId::F8, 6).unwrap();
    let mut config = NbdeConfig::for_dimension(6);
    config.crossover_mix = CrossoverMix::new(1.0, 0.0, 0.0).unwrap();
    config.cr_low = 1.0;
    config.cr_high = 1.0;
    let mut rng = RngStream::seed_from_u64(3);
    let state = nbde::initialize(&config, &spec, &mut rng).unwrap();
    for i in 0..config.np {
        let p = nbde::propose(&state.population, i, &config, &mut rng).unwrap();
        assert_eq!(p.crossover, CrossoverKind::Binary);
        assert_eq!(p.trial, p.mutant);
        assert_eq!(
            clamp_to_bounds(&p.trial, &spec.bounds).unwrap(),
            clamp_to_bounds(&p.mutant, &spec.bounds).unwrap()
        );
    }
}

#[test]
fn de_rand_1_indices_are_distinct() {
    let mut rng = RngStream::seed_from_u64(5);
    let pop = random_population(&mut rng, 6, 2);
    for _ in 0..10_000 {
        let i = rng.index(6);
        let (_, [r1, r2, r3]) = mutate_de_rand_1_indexed(&pop, i, 0.5, &mut rng).unwrap();
        assert!(r1 != r2 && r1 != r3 && r2 != r3);
        assert!(r1 != i && r2 != i && r3 != i);
    }
}

#[test]
fn zero_scale_de_is_crossover_with_a_member() {
    let spec = ObjectiveSpec::new(FunctionId::F1, 5).unwrap();
    let mut config = BaselineConfig::for_dimension(BaselineAlgorithm::DeRand1, 5);
    config.f = 0.0;
    let mut rng = RngStream::seed_from_u64(21);
    let state = baselines::initialize(&config, &spec, &mut rng).unwrap();
    let pop = &state.population;
    for i in 0..pop.len() {
        let trial = baselines::propose(pop, i, state.best_index, &config, &mut rng).unwrap();
        let parent = pop.position(i);
        let fits = (0..pop.len()).filter(|&k| k != i).any(|k| {
            let other = pop.position(k);
            (0..5).all(|j| trial[j] == parent[j] || trial[j] == other[j])
        });
        assert!(fits, "member {i}");
    }
}

#[test]
fn benchmark_minimizers_and_lower_bounds() {
    let mut rng = RngStream::seed_from_u64(1);
    for d in [2, 10, 30] {
        for spec in make_suite(d).unwrap() {
            if !spec.noisy {
                let v = spec.evaluate(&spec.id.minimizer(d), &mut rng).unwrap();
                let tol = if spec.id == FunctionId::F6 { 1e-3 } else { 1e-6 };
                assert!((v - spec.optimum_value).abs() <= tol, "{} D={d}: {v}", spec.id);
            }
            for _ in 0..1000 {
                let x: Vec<f64> = spec
                    .bounds
                    .lower()
                    .iter()
                    .zip(spec.bounds.upper())
                    .map(|(&lo, &hi)| rng.uniform_in(lo, hi))
                    .collect();
                assert!(spec.evaluate(&x, &mut rng).unwrap() >= spec.optimum_value - 1e-9);
            }
        }
    }
}

/// Runs generation by generation, checking elitism, containment and budget.
fn check_loop_invariants(
    mut state: GenerationState,
    max: u64,
    spec: &ObjectiveSpec,
    mut step: impl FnMut(GenerationState) -> GenerationState,
) {
    let mut best = state.best_fitness();
    let mut generations = 0;
    while state.evaluations_used < max {
        let before = state.evaluations_used;
        let np = state.population.len() as u64;
        state = step(state);
        generations += 1;
        assert!(state.evaluations_used - before <= np);
        assert!(state.evaluations_used <= max);
        assert!(state.best_fitness() <= best);
        best = state.best_fitness();
        let fits = state.population.fitnesses().unwrap();
        let min = fits.iter().cloned().fold(f64::INFINITY, f64::min);
        assert_eq!(best, min);
        assert_eq!(fits.iter().position(|&f| f == min), Some(state.best_index));
        for m in &state.population.members {
            assert!(spec.bounds.contains(&m.position));
        }
    }
    assert_eq!(state.evaluations_used, max);
    assert!(generations > 0);
}

#[test]
fn loop_invariants_hold_for_every_optimizer() {
    for spec in make_suite(4).unwrap() {
        let max = 2_000;
        let mut config = NbdeConfig::for_dimension(4);
        config.max_evaluations = max;
        let mut rng = RngStream::seed_from_u64(spec.id.number().into());
        let state = nbde::initialize(&config, &spec, &mut rng).unwrap();
        check_loop_invariants(state, max, &spec, |s| nbde::step(s, &config, &spec, &mut rng).unwrap());

        for alg in [BaselineAlgorithm::DeRand1, BaselineAlgorithm::DeBest2, BaselineAlgorithm::Wsa] {
            let mut config = BaselineConfig::for_dimension(alg, 4);
            config.max_evaluations = max;
            let state = baselines::initialize(&config, &spec, &mut rng).unwrap();
            check_loop_invariants(state, max, &spec, |s| {
                baselines::step(s, &config, &spec, &mut rng).unwrap()
            });
        }
    }
}

proptest! {
    #[test]
    fn clamp_is_idempotent_and_contained(
        x in prop::collection::vec(-1e3f64..1e3, 3),
        lo in -10.0f64..0.0,
        width in 0.1f64..20.0,
    ) {
        let b = Bounds::cube(lo, lo + width, 3).unwrap();
        let once = clamp_to_bounds(&x, &b).unwrap();
        prop_assert!(b.contains(&once));
        prop_assert_eq!(clamp_to_bounds(&once, &b).unwrap(), once.clone());
        for (c, v) in once.iter().zip(&x) {
            if b.lower()[0] <= *v && *v <= b.upper()[0] {
                prop_assert_eq!(c, v);
            }
        }
    }

    #[test]
    fn equal_seeds_give_bit_identical_populations(seed in any::<u64>(), np in 4usize..30, dim in 1usize..8) {
        let b = Bounds::cube(-3.0, 7.0, dim).unwrap();
        let p1 = uniform_init(&b, np, &mut RngStream::seed_from_u64(seed)).unwrap();
        let p2 = uniform_init(&b, np, &mut RngStream::seed_from_u64(seed)).unwrap();
        let bits = |p: &Population| -> Vec<u64> {
            p.members.iter().flat_map(|m| m.position.iter().map(|v| v.to_bits())).collect()
        };
        prop_assert_eq!(bits(&p1), bits(&p2));
    }

    #[test]
    fn distance_is_symmetric(a in prop::collection::vec(-50f64..50.0, 4), b in prop::collection::vec(-50f64..50.0, 4)) {
        let ab = euclidean_distance(&a, &b).unwrap();
        prop_assert_eq!(ab, euclidean_distance(&b, &a).unwrap());
        prop_assert_eq!(ab == 0.0, a == b);
    }

    #[test]
    fn success_rate_ignores_order(flags in prop::collection::vec(any::<bool>(), 1..40), seed in any::<u64>()) {
        use nbde_core::harness::success_rate;
        let records: Vec<_> = flags.iter().map(|&s| nbde_core::RunRecord {
            algorithm: nbde_core::Algorithm::Nbde,
            function: FunctionId::F1,
            dimension: 2,
            seed: 0,
            best_fitness: 0.0,
            final_error: 0.0,
            success: s,
            evaluations_used: 0,
            best_so_far_trace: vec![],
        }).collect();
        let mut shuffled = records.clone();
        let mut rng = RngStream::seed_from_u64(seed);
        for k in (1..shuffled.len()).rev() {
            shuffled.swap(k, rng.index(k + 1));
        }
        prop_assert_eq!(success_rate(&records).unwrap(), success_rate(&shuffled).unwrap());
    }
}
