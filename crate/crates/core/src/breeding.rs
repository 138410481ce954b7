//! Generational breeders.
//!
//! [`standard_breed`] is plain generational GP over the whole population.
//! [`group_breed`] runs the same breeder independently inside each group of a
//! [`GroupPartition`] and evaluates each group's offspring in the worker that
//! bred them. Every group draws from its own random stream keyed by
//! `(breed seed, group index)`, so the result does not depend on how groups are
//! scheduled onto workers. [`sequential_emulation_breed`] does the grouping
//! itself from cached durations and runs all groups on one thread.

use std::sync::Mutex;

use rand::Rng;

use crate::error::{ConfigError, GpError};
use crate::gp::{subtree_crossover, tournament_select, Evaluator, FitnessCaseTable, Individual};
use crate::grouping::{partition_by_time, GroupPartition};
use crate::seed::{group_seed, rng_from_seed};
use crate::timing::{cached_records, timed_evaluate_with, TimerMode};

/// Operator rates and limits used by a breeder.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BreedPlan {
    pub crossover_prob: f64,
    pub reproduction_prob: f64,
    pub tournament_size: usize,
    /// Best individuals copied unchanged into each breeding pool's offspring.
    pub elitism: usize,
    /// Crossover children deeper than this are replaced by their parent.
    pub max_depth: usize,
}

impl Default for BreedPlan {
    fn default() -> Self {
        Self {
            crossover_prob: 0.9,
            reproduction_prob: 0.1,
            tournament_size: 7,
            elitism: 0,
            max_depth: 17,
        }
    }
}

impl BreedPlan {
    /// A plan with the given crossover rate; reproduction takes the rest.
    pub fn with_crossover(crossover_prob: f64) -> Self {
        Self {
            crossover_prob,
            reproduction_prob: 1.0 - crossover_prob,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let p = self.crossover_prob;
        if !(0.0..=1.0).contains(&p) {
            return Err(ConfigError::new("xo-prob", format!("{p} is not a probability")));
        }
        if (p + self.reproduction_prob - 1.0).abs() > 1e-9 || self.reproduction_prob < 0.0 {
            return Err(ConfigError::new(
                "xo-prob",
                "crossover and reproduction probabilities must sum to 1",
            ));
        }
        if self.tournament_size == 0 {
            return Err(ConfigError::new("tournament", "must be at least 1"));
        }
        Ok(())
    }
}

/// Where an offspring came from. Parent indices refer to the parent
/// population.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lineage {
    pub group: usize,
    pub parents: (usize, Option<usize>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupBreedOutcome {
    /// Evaluated offspring, concatenated in group order.
    pub offspring: Vec<Individual>,
    /// One entry per offspring.
    pub lineage: Vec<Lineage>,
}

/// A child and the pool positions of its parents.
type Bred = (Individual, (usize, Option<usize>));

/// Breeds `pool.len()` offspring from `pool`. Returned parent references are
/// positions in `pool`.
fn breed_pool<R: Rng + ?Sized>(
    pool: &[&Individual],
    plan: &BreedPlan,
    rng: &mut R,
) -> Result<Vec<Bred>, GpError> {
    if let Some(i) = pool.iter().position(|ind| !ind.is_evaluated()) {
        return Err(GpError::NotEvaluated(i));
    }
    let n = pool.len();
    let mut out = Vec::with_capacity(n);

    if plan.elitism > 0 {
        let mut ranked: Vec<usize> = (0..n).collect();
        ranked.sort_by(|&a, &b| pool[b].fitness().cmp(&pool[a].fitness()).then(a.cmp(&b)));
        for &i in ranked.iter().take(plan.elitism.min(n)) {
            out.push((pool[i].clone(), (i, None)));
        }
    }

    // A lone individual has no crossover partner and is copied.
    let can_cross = n >= 2 && plan.crossover_prob > 0.0;
    while out.len() < n {
        if can_cross && rng.random::<f64>() < plan.crossover_prob {
            let a = tournament_select(pool, plan.tournament_size, rng)?;
            let b = tournament_select(pool, plan.tournament_size, rng)?;
            let (c1, c2) =
                subtree_crossover(pool[a].genome(), pool[b].genome(), plan.max_depth, rng);
            out.push((Individual::new(c1), (a, Some(b))));
            if out.len() < n {
                out.push((Individual::new(c2), (b, Some(a))));
            }
        } else {
            let a = tournament_select(pool, plan.tournament_size, rng)?;
            out.push((pool[a].clone(), (a, None)));
        }
    }
    Ok(out)
}

/// One generation of standard GP over the whole population.
///
/// Crossover children are unevaluated; reproduced and elite copies keep their
/// cached evaluation.
pub fn standard_breed<R: Rng + ?Sized>(
    pop: &[Individual],
    plan: &BreedPlan,
    rng: &mut R,
) -> Result<Vec<Individual>, GpError> {
    if pop.len() < 2 {
        return Err(GpError::InvalidArgument(format!(
            "standard breeding needs at least 2 individuals, got {}",
            pop.len()
        )));
    }
    let pool: Vec<&Individual> = pop.iter().collect();
    Ok(breed_pool(&pool, plan, rng)?
        .into_iter()
        .map(|(ind, _)| ind)
        .collect())
}

#[allow(clippy::too_many_arguments)]
fn breed_group(
    pop: &[Individual],
    partition: &GroupPartition,
    group: usize,
    plan: &BreedPlan,
    table: &FitnessCaseTable,
    mode: TimerMode,
    breed_seed: u64,
    first_index: usize,
) -> Result<(Vec<Individual>, Vec<Lineage>), GpError> {
    // Breeding sees the group's members in population order.
    let mut members = partition.group(group).to_vec();
    members.sort_unstable();
    let pool: Vec<&Individual> = members.iter().map(|&i| &pop[i]).collect();
    let mut rng = rng_from_seed(group_seed(breed_seed, group));
    let bred = breed_pool(&pool, plan, &mut rng).map_err(|e| match e {
        GpError::NotEvaluated(i) => GpError::NotEvaluated(members[i]),
        other => other,
    })?;

    let mut evaluator = Evaluator::new(table);
    let mut offspring = Vec::with_capacity(bred.len());
    let mut lineage = Vec::with_capacity(bred.len());
    for (k, (mut child, (a, b))) in bred.into_iter().enumerate() {
        timed_evaluate_with(first_index + k, &mut child, &mut evaluator, mode).map_err(|e| {
            GpError::Evaluation {
                index: first_index + k,
                source: Box::new(e),
            }
        })?;
        offspring.push(child);
        lineage.push(Lineage {
            group,
            parents: (members[a], b.map(|b| members[b])),
        });
    }
    Ok((offspring, lineage))
}

/// Grouped breeding with parentage records.
#[allow(clippy::too_many_arguments)]
pub fn group_breed_traced(
    pop: &[Individual],
    partition: &GroupPartition,
    plan: &BreedPlan,
    table: &FitnessCaseTable,
    mode: TimerMode,
    workers: usize,
    breed_seed: u64,
) -> Result<GroupBreedOutcome, GpError> {
    if partition.len() != pop.len() {
        return Err(GpError::InvalidArgument(format!(
            "partition covers {} individuals but the population has {}",
            partition.len(),
            pop.len()
        )));
    }
    if workers == 0 {
        return Err(GpError::InvalidArgument("workers must be at least 1".into()));
    }
    let groups = partition.group_count();
    let offsets: Vec<usize> = partition
        .groups()
        .iter()
        .scan(0, |acc, g| {
            let start = *acc;
            *acc += g.len();
            Some(start)
        })
        .collect();
    let run = |g: usize| breed_group(pop, partition, g, plan, table, mode, breed_seed, offsets[g]);

    let mut results: Vec<Option<Result<_, GpError>>> = (0..groups).map(|_| None).collect();
    if workers == 1 || groups == 1 {
        for (g, slot) in results.iter_mut().enumerate() {
            *slot = Some(run(g));
        }
    } else {
        let queue = Mutex::new(results.iter_mut().enumerate());
        std::thread::scope(|s| {
            for _ in 0..workers.min(groups) {
                s.spawn(|| loop {
                    let next = queue.lock().unwrap().next();
                    let Some((g, slot)) = next else { break };
                    *slot = Some(run(g));
                });
            }
        });
    }

    let mut offspring = Vec::with_capacity(pop.len());
    let mut lineage = Vec::with_capacity(pop.len());
    for r in results {
        let (o, l) = r.expect("every group ran")?;
        offspring.extend(o);
        lineage.extend(l);
    }
    Ok(GroupBreedOutcome { offspring, lineage })
}

/// Breeds and evaluates the next generation group by group.
///
/// Each group of `partition` produces exactly as many offspring as it has
/// members, using only its own members as parents. Output is grouped in
/// partition order. Under [`TimerMode::CostModel`] the result depends only
/// on `(pop, partition, plan, breed_seed)`, not on `workers`.
pub fn group_breed(
    pop: &[Individual],
    partition: &GroupPartition,
    plan: &BreedPlan,
    table: &FitnessCaseTable,
    mode: TimerMode,
    workers: usize,
    breed_seed: u64,
) -> Result<Vec<Individual>, GpError> {
    group_breed_traced(pop, partition, plan, table, mode, workers, breed_seed).map(|o| o.offspring)
}

/// Single-threaded emulation of the grouped breeder: group the evaluated
/// population by its cached durations, then breed each group in turn.
pub fn sequential_emulation_breed(
    pop: &[Individual],
    groups: usize,
    plan: &BreedPlan,
    table: &FitnessCaseTable,
    mode: TimerMode,
    breed_seed: u64,
) -> Result<Vec<Individual>, GpError> {
    let records = cached_records(pop)?;
    let partition = partition_by_time(&records, groups)?;
    group_breed(pop, &partition, plan, table, mode, 1, breed_seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gp::{build_case_table, ramped_half_and_half, ProgramTree};
    use crate::seed::rng_from_seed;
    use crate::timing::evaluate_population;

    fn evaluated_pop(n: usize, bits: u8, seed: u64) -> (Vec<Individual>, FitnessCaseTable) {
        let table = build_case_table(bits as u32).unwrap();
        let mut pop: Vec<Individual> = ramped_half_and_half(n, (2, 6), bits, &mut rng_from_seed(seed))
            .unwrap()
            .into_iter()
            .map(Individual::new)
            .collect();
        evaluate_population(&mut pop, &table, TimerMode::CostModel, 1).unwrap();
        (pop, table)
    }

    fn partition(pop: &[Individual], g: usize) -> GroupPartition {
        partition_by_time(&cached_records(pop).unwrap(), g).unwrap()
    }

    #[test]
    fn identical_single_node_parents_stay_closed() {
        let table = build_case_table(2).unwrap();
        let mut pop = vec![Individual::new(ProgramTree::leaf(1)); 2];
        evaluate_population(&mut pop, &table, TimerMode::CostModel, 1).unwrap();
        let out = standard_breed(&pop, &BreedPlan::default(), &mut rng_from_seed(4)).unwrap();
        assert_eq!(out.len(), 2);
        assert!(out.iter().all(|i| i.genome() == pop[0].genome()));
    }

    #[test]
    fn no_crossover_means_copies() {
        let (pop, _) = evaluated_pop(40, 4, 1);
        let plan = BreedPlan::with_crossover(0.0);
        let out = standard_breed(&pop, &plan, &mut rng_from_seed(2)).unwrap();
        assert_eq!(out.len(), 40);
        for child in &out {
            assert!(child.is_evaluated());
            assert!(pop.contains(child));
        }
    }

    #[test]
    fn standard_breed_is_seeded() {
        let (pop, _) = evaluated_pop(50, 4, 3);
        let plan = BreedPlan::default();
        let a = standard_breed(&pop, &plan, &mut rng_from_seed(9)).unwrap();
        let b = standard_breed(&pop, &plan, &mut rng_from_seed(9)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn standard_breed_preconditions() {
        let (mut pop, _) = evaluated_pop(10, 4, 3);
        let plan = BreedPlan::default();
        assert!(standard_breed(&pop[..1], &plan, &mut rng_from_seed(1)).is_err());
        pop[3] = Individual::new(pop[3].genome().clone());
        assert_eq!(
            standard_breed(&pop, &plan, &mut rng_from_seed(1)).unwrap_err(),
            GpError::NotEvaluated(3)
        );
    }

    #[test]
    fn elites_come_first() {
        let (pop, _) = evaluated_pop(30, 4, 5);
        let plan = BreedPlan { elitism: 3, ..BreedPlan::default() };
        let out = standard_breed(&pop, &plan, &mut rng_from_seed(5)).unwrap();
        let mut best: Vec<u32> = pop.iter().map(|i| i.fitness().unwrap()).collect();
        best.sort_unstable_by(|a, b| b.cmp(a));
        let elite: Vec<u32> = out[..3].iter().map(|i| i.fitness().unwrap()).collect();
        assert_eq!(elite, best[..3]);
    }

    #[test]
    fn ten_into_three_groups_breeds_4_3_3() {
        let (pop, table) = evaluated_pop(10, 4, 8);
        let part = partition(&pop, 3);
        let out = group_breed_traced(&pop, &part, &BreedPlan::default(), &table, TimerMode::CostModel, 2, 77)
            .unwrap();
        let counts: Vec<usize> = (0..3)
            .map(|g| out.lineage.iter().filter(|l| l.group == g).count())
            .collect();
        assert_eq!(counts, vec![4, 3, 3]);
        assert!(out.offspring.iter().all(Individual::is_evaluated));
    }

    #[test]
    fn singleton_groups_copy_their_member() {
        let (pop, table) = evaluated_pop(12, 4, 10);
        let part = partition(&pop, 12);
        let plan = BreedPlan::with_crossover(1.0);
        let out = group_breed(&pop, &part, &plan, &table, TimerMode::CostModel, 3, 5).unwrap();
        for (g, child) in out.iter().enumerate() {
            assert_eq!(child, &pop[part.group(g)[0]]);
        }
    }

    #[test]
    fn parents_stay_inside_their_group() {
        let (pop, table) = evaluated_pop(64, 5, 12);
        let part = partition(&pop, 8);
        let out = group_breed_traced(&pop, &part, &BreedPlan::default(), &table, TimerMode::CostModel, 4, 6)
            .unwrap();
        for l in &out.lineage {
            assert_eq!(part.group_of(l.parents.0).unwrap(), l.group);
            if let Some(b) = l.parents.1 {
                assert_eq!(part.group_of(b).unwrap(), l.group);
            }
        }
    }

    #[test]
    fn worker_count_independent() {
        let (pop, table) = evaluated_pop(60, 5, 13);
        let part = partition(&pop, 6);
        let plan = BreedPlan::default();
        let reference = group_breed(&pop, &part, &plan, &table, TimerMode::CostModel, 1, 31).unwrap();
        for w in [2, 4, 8] {
            assert_eq!(group_breed(&pop, &part, &plan, &table, TimerMode::CostModel, w, 31).unwrap(), reference);
        }
        let seq = sequential_emulation_breed(&pop, 6, &plan, &table, TimerMode::CostModel, 31).unwrap();
        assert_eq!(seq, reference);
    }

    #[test]
    fn one_group_equals_standard_breed() {
        let (pop, table) = evaluated_pop(40, 4, 14);
        let plan = BreedPlan::default();
        let grouped = group_breed(&pop, &partition(&pop, 1), &plan, &table, TimerMode::CostModel, 4, 55).unwrap();
        let mut rng = rng_from_seed(group_seed(55, 0));
        let mut standard = standard_breed(&pop, &plan, &mut rng).unwrap();
        evaluate_population(&mut standard, &table, TimerMode::CostModel, 1).unwrap();
        assert_eq!(grouped, standard);
    }

    #[test]
    fn mismatched_partition() {
        let (pop, table) = evaluated_pop(10, 4, 1);
        let part = partition(&pop[..8], 2);
        assert!(group_breed(&pop, &part, &BreedPlan::default(), &table, TimerMode::CostModel, 1, 0).is_err());
    }

    #[test]
    fn plan_validation() {
        assert!(BreedPlan::default().validate().is_ok());
        assert!(BreedPlan::with_crossover(1.5).validate().is_err());
        let skewed = BreedPlan { reproduction_prob: 0.5, ..BreedPlan::default() };
        assert_eq!(skewed.validate().unwrap_err().key, "xo-prob");
        let no_k = BreedPlan { tournament_size: 0, ..BreedPlan::default() };
        assert_eq!(no_k.validate().unwrap_err().key, "tournament");
    }
}
