use crate::error::{EngineError, GpError};
use crate::gp::Individual;

/// Population aggregates for one generation.
#[derive(Clone, Debug, PartialEq)]
pub struct GenerationStats {
    pub generation: usize,
    pub best_fitness: u32,
    pub avg_fitness: f64,
    pub avg_size: f64,
    pub avg_duration: f64,
    pub max_size: usize,
}

impl GenerationStats {
    pub fn from_population(generation: usize, pop: &[Individual]) -> Result<Self, GpError> {
        if pop.is_empty() {
            return Err(GpError::EmptyPopulation);
        }
        let mut best = 0u32;
        let (mut fit_sum, mut size_sum, mut dur_sum) = (0u64, 0u64, 0f64);
        let mut max_size = 0;
        for (i, ind) in pop.iter().enumerate() {
            let e = ind.evaluation().ok_or(GpError::NotEvaluated(i))?;
            best = best.max(e.fitness);
            fit_sum += e.fitness as u64;
            size_sum += ind.size() as u64;
            dur_sum += e.duration as f64;
            max_size = max_size.max(ind.size());
        }
        let n = pop.len() as f64;
        Ok(Self {
            generation,
            best_fitness: best,
            avg_fitness: fit_sum as f64 / n,
            avg_size: size_sum as f64 / n,
            avg_duration: dur_sum / n,
            max_size,
        })
    }
}

/// Cross-run mean and sample standard deviation per generation.
#[derive(Clone, Debug, PartialEq)]
pub struct AggregateRow {
    pub generation: usize,
    pub best_fitness_mean: f64,
    pub best_fitness_sd: f64,
    pub avg_fitness_mean: f64,
    pub avg_fitness_sd: f64,
    pub avg_size_mean: f64,
    pub avg_size_sd: f64,
    pub avg_duration_mean: f64,
}

/// Mean and sample (n - 1) standard deviation; a single value has SD 0.
pub fn mean_sd(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
    (mean, (ss / (n - 1.0)).sqrt())
}

/// Aggregates per-generation statistics of several runs of one configuration.
pub fn aggregate_stats(runs: &[&[GenerationStats]]) -> Result<Vec<AggregateRow>, EngineError> {
    let first = runs
        .first()
        .ok_or_else(|| EngineError::Aggregate("no runs to aggregate".into()))?;
    if let Some(bad) = runs.iter().position(|r| r.len() != first.len()) {
        return Err(EngineError::Aggregate(format!(
            "run {bad} has {} generations, run 0 has {}",
            runs[bad].len(),
            first.len()
        )));
    }
    let rows = (0..first.len())
        .map(|g| {
            let column = |f: fn(&GenerationStats) -> f64| -> Vec<f64> {
                runs.iter().map(|r| f(&r[g])).collect()
            };
            let (best_m, best_sd) = mean_sd(&column(|s| s.best_fitness as f64));
            let (fit_m, fit_sd) = mean_sd(&column(|s| s.avg_fitness));
            let (size_m, size_sd) = mean_sd(&column(|s| s.avg_size));
            let (dur_m, _) = mean_sd(&column(|s| s.avg_duration));
            AggregateRow {
                generation: first[g].generation,
                best_fitness_mean: best_m,
                best_fitness_sd: best_sd,
                avg_fitness_mean: fit_m,
                avg_fitness_sd: fit_sd,
                avg_size_mean: size_m,
                avg_size_sd: size_sd,
                avg_duration_mean: dur_m,
            }
        })
        .collect();
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stats(generation: usize, best: u32, avg_size: f64) -> GenerationStats {
        GenerationStats {
            generation,
            best_fitness: best,
            avg_fitness: best as f64 / 2.0,
            avg_size,
            avg_duration: avg_size * 4.0,
            max_size: avg_size as usize,
        }
    }

    #[test]
    fn single_run_has_zero_sd() {
        let run = vec![stats(0, 10, 5.0), stats(1, 12, 7.0)];
        let rows = aggregate_stats(&[&run]).unwrap();
        assert_eq!(rows[1].best_fitness_mean, 12.0);
        assert_eq!(rows[1].avg_size_mean, 7.0);
        assert!(rows.iter().all(|r| r.best_fitness_sd == 0.0 && r.avg_size_sd == 0.0));
    }

    #[test]
    fn two_runs_sample_sd() {
        let a = vec![stats(5, 1, 10.0)];
        let b = vec![stats(5, 1, 20.0)];
        let rows = aggregate_stats(&[&a, &b]).unwrap();
        assert_eq!(rows[0].avg_size_mean, 15.0);
        assert!((rows[0].avg_size_sd - 50f64.sqrt()).abs() < 1e-12);
        assert!((rows[0].avg_size_sd - 7.0711).abs() < 1e-4);
    }

    #[test]
    fn constant_runs_have_zero_sd() {
        let run: Vec<_> = (0..5).map(|g| stats(g, 8, 3.0)).collect();
        let runs: Vec<&[GenerationStats]> = (0..30).map(|_| run.as_slice()).collect();
        let rows = aggregate_stats(&runs).unwrap();
        assert!(rows
            .iter()
            .all(|r| r.best_fitness_sd == 0.0 && r.avg_fitness_sd == 0.0 && r.avg_size_sd == 0.0));
    }

    #[test]
    fn mismatched_lengths() {
        let a = vec![stats(0, 1, 1.0)];
        let b = vec![stats(0, 1, 1.0), stats(1, 1, 1.0)];
        assert!(aggregate_stats(&[&a, &b]).is_err());
        assert!(aggregate_stats(&[]).is_err());
    }

    #[test]
    fn population_stats() {
        use crate::gp::{Evaluation, Individual, ProgramTree};
        let pop = vec![
            Individual::with_evaluation(ProgramTree::leaf(0), Evaluation { fitness: 2, duration: 4 }),
            Individual::with_evaluation(
                "(and x0 x1)".parse().unwrap(),
                Evaluation { fitness: 1, duration: 12 },
            ),
        ];
        let s = GenerationStats::from_population(3, &pop).unwrap();
        assert_eq!(s.best_fitness, 2);
        assert_eq!(s.avg_fitness, 1.5);
        assert_eq!(s.avg_size, 2.0);
        assert_eq!(s.avg_duration, 8.0);
        assert_eq!(s.max_size, 3);
        assert!(s.best_fitness as f64 >= s.avg_fitness);
    }
}
