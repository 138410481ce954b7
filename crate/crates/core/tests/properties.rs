mod common;

use gpgroup::engine::{run_experiment, run_one_observed, ExperimentConfig};
use gpgroup::gp::{full_tree, grow_tree, Evaluator};
use gpgroup::seed::rng_from_seed;
use gpgroup::timing::cached_records;
use gpgroup::{
    build_case_table, evaluate, evaluate_population, group_breed, partition_by_time,
    ramped_half_and_half, sequential_emulation_breed, subtree_crossover, BreedPlan, Individual,
    TimerMode,
};
use proptest::prelude::*;
use rand::Rng;

use common::{brute_force_fitness, optimal_makespan, spearman};

#[test]
fn oracles_agree_with_hand_values() {
    // x0 agrees with even parity on cases 2 (x0=0, odd) and 3 (x0=1, even)
    assert_eq!(brute_force_fitness(&gpgroup::ProgramTree::leaf(0), 2), (2, 4));
    assert_eq!(brute_force_fitness(&"(nor x0 x1)".parse().unwrap(), 2).0, 3);
    assert_eq!(optimal_makespan(&[3, 3, 2, 2, 2], 2), 6);
    assert_eq!(optimal_makespan(&[5, 3, 2], 2), 5);
    assert!((spearman(&[1.0, 2.0, 3.0], &[10.0, 20.0, 30.0]) - 1.0).abs() < 1e-12);
    assert!((spearman(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]) + 1.0).abs() < 1e-12);
}

#[test]
fn evaluation_matches_oracle_and_work_model() {
    let mut rng = rng_from_seed(0xF00D);
    for bits in [2u32, 3, 4, 6] {
        let table = build_case_table(bits).unwrap();
        for _ in 0..300 {
            let depth = rng.random_range(0..=7);
            let tree = if rng.random::<bool>() {
                full_tree(depth.min(6), bits as u8, &mut rng)
            } else {
                grow_tree(depth, bits as u8, &mut rng)
            };
            let (expected, oracle_visits) = brute_force_fitness(&tree, bits);
            let mut ev = Evaluator::new(&table);
            assert_eq!(ev.evaluate(&tree).unwrap(), expected, "{tree}");
            assert_eq!(ev.node_visits(), oracle_visits);
            assert_eq!(ev.node_visits(), (tree.size() as u64) << bits);
        }
    }
}

#[test]
fn crossover_closure_ten_thousand() {
    let mut rng = rng_from_seed(17);
    let mut pool: Vec<_> = ramped_half_and_half(64, (2, 6), 6, &mut rng).unwrap();
    let mut deepest = 0;
    for _ in 0..10_000 {
        let a = rng.random_range(0..pool.len());
        let b = rng.random_range(0..pool.len());
        let (c1, c2) = subtree_crossover(&pool[a], &pool[b], 17, &mut rng);
        for c in [&c1, &c2] {
            assert!(c.depth() <= 17);
            deepest = deepest.max(c.depth());
            assert!(gpgroup::ProgramTree::from_prefix(c.nodes().to_vec()).is_ok());
        }
        // replace the shallower parent so depths climb toward the limit
        let slot = if pool[a].depth() <= pool[b].depth() { a } else { b };
        pool[slot] = if c1.depth() >= c2.depth() { c1 } else { c2 };
    }
    assert_eq!(deepest, 17);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn crossover_respects_any_depth_limit(seed in any::<u64>(), limit in 1usize..12) {
        let mut rng = rng_from_seed(seed);
        let a = grow_tree(limit, 5, &mut rng);
        let b = grow_tree(limit, 5, &mut rng);
        let (c1, c2) = subtree_crossover(&a, &b, limit, &mut rng);
        prop_assert!(c1.depth() <= limit && c2.depth() <= limit);
        prop_assert!(c1.max_input().unwrap() < 5 && c2.max_input().unwrap() < 5);
    }

    #[test]
    fn initialization_is_seeded(seed in any::<u64>()) {
        let a = ramped_half_and_half(20, (2, 6), 4, &mut rng_from_seed(seed)).unwrap();
        let b = ramped_half_and_half(20, (2, 6), 4, &mut rng_from_seed(seed)).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn wall_clock_duration_tracks_size() {
    let table = build_case_table(12).unwrap();
    let mut rng = rng_from_seed(5);
    let mut pop: Vec<Individual> = ramped_half_and_half(500, (2, 6), 12, &mut rng)
        .unwrap()
        .into_iter()
        .map(Individual::new)
        .collect();
    // warm caches and the allocator
    for ind in pop.iter().take(50) {
        evaluate(ind.genome(), &table).unwrap();
    }
    let records = evaluate_population(&mut pop, &table, TimerMode::WallClock, 1).unwrap();
    let sizes: Vec<f64> = records.iter().map(|r| r.size as f64).collect();
    let durations: Vec<f64> = records.iter().map(|r| r.duration as f64).collect();
    let rho = spearman(&sizes, &durations);
    assert!(rho > 0.8, "spearman {rho}");
}

#[test]
fn sequential_emulation_equals_parallel() {
    let table = build_case_table(6).unwrap();
    for seed in 0..5u64 {
        let mut pop: Vec<Individual> =
            ramped_half_and_half(100, (2, 6), 6, &mut rng_from_seed(seed))
                .unwrap()
                .into_iter()
                .map(Individual::new)
                .collect();
        evaluate_population(&mut pop, &table, TimerMode::CostModel, 1).unwrap();
        let plan = BreedPlan::default();
        let g = 1 + (seed as usize * 7) % 20;
        let part = partition_by_time(&cached_records(&pop).unwrap(), g).unwrap();
        let par = group_breed(&pop, &part, &plan, &table, TimerMode::CostModel, 8, seed).unwrap();
        let seq = sequential_emulation_breed(&pop, g, &plan, &table, TimerMode::CostModel, seed).unwrap();
        assert_eq!(par, seq);
    }
}

fn desk(groups: usize) -> ExperimentConfig {
    ExperimentConfig {
        num_bits: 8,
        population_size: 256,
        generations: 30,
        groups,
        runs: 5,
        master_seed: 7,
        ..ExperimentConfig::default()
    }
}

fn mean_sizes(config: &ExperimentConfig) -> Vec<f64> {
    let results = run_experiment(config).unwrap();
    let rows = gpgroup::aggregate(&results).unwrap();
    rows.iter().map(|r| r.avg_size_mean).collect()
}

#[test]
fn sixteen_groups_stay_below_standard_after_generation_ten() {
    let grouped = mean_sizes(&desk(16));
    let standard = mean_sizes(&desk(1));
    for g in 11..=30 {
        assert!(grouped[g] < standard[g], "generation {g}: {} vs {}", grouped[g], standard[g]);
    }
}

/// Children resemble their own parents in size more than they resemble a
/// random pair drawn from the whole parent population.
#[test]
fn offspring_size_follows_parents() {
    let mut within = 0.0;
    let mut random_pairs = 0.0;
    let mut count = 0usize;
    for run in 0..30 {
        let config = ExperimentConfig {
            num_bits: 6,
            population_size: 128,
            generations: 12,
            groups: 8,
            runs: 1,
            master_seed: 99,
            ..ExperimentConfig::default()
        };
        let mut rng = rng_from_seed(run as u64);
        run_one_observed(&config, run, |ev| {
            for (child, lin) in ev.offspring.iter().zip(ev.lineage) {
                let Some(b) = lin.parents.1 else { continue };
                let a = lin.parents.0;
                let size = child.size() as f64;
                let parents_mean = (ev.parents[a].size() + ev.parents[b].size()) as f64 / 2.0;
                let x = rng.random_range(0..ev.parents.len());
                let y = rng.random_range(0..ev.parents.len());
                let random_mean = (ev.parents[x].size() + ev.parents[y].size()) as f64 / 2.0;
                within += (size - parents_mean).abs();
                random_pairs += (size - random_mean).abs();
                count += 1;
            }
        })
        .unwrap();
    }
    let (within, random_pairs) = (within / count as f64, random_pairs / count as f64);
    assert!(within < random_pairs, "{within} vs {random_pairs}");
}

#[test]
fn paper_scale_config_is_flagged() {
    let config = ExperimentConfig {
        num_bits: 12,
        generations: 50,
        ..ExperimentConfig::default()
    };
    assert!(config.validate().is_ok());
    assert!(config.is_long_running());
    assert!(!desk(1).is_long_running());
}
