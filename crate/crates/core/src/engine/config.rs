use crate::breeding::BreedPlan;
use crate::error::ConfigError;
use crate::gp::{MAX_BITS, MIN_BITS};
use crate::timing::TimerMode;

/// Everything needed to reproduce an experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub num_bits: u8,
    pub population_size: usize,
    pub generations: usize,
    pub groups: usize,
    pub runs: usize,
    pub timer: TimerMode,
    pub workers: usize,
    pub master_seed: u64,
    pub plan: BreedPlan,
    /// Depth ramp of the initial population, inclusive.
    pub init_depth: (usize, usize),
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            num_bits: 12,
            population_size: 1024,
            generations: 50,
            groups: 1,
            runs: 30,
            timer: TimerMode::CostModel,
            workers: 1,
            master_seed: 0,
            plan: BreedPlan::default(),
            init_depth: (2, 6),
        }
    }
}

/// Keys accepted by [`ExperimentConfig::set`], matching the CLI flags.
pub const CONFIG_KEYS: &[&str] = &[
    "bits",
    "pop",
    "gens",
    "groups",
    "runs",
    "seed",
    "timer",
    "workers",
    "tournament",
    "xo-prob",
    "max-depth",
    "elitism",
    "init-min-depth",
    "init-max-depth",
];

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, ConfigError>
where
    T::Err: std::fmt::Display,
{
    value
        .trim()
        .parse()
        .map_err(|e| ConfigError::new(key, format!("`{value}`: {e}")))
}

impl ExperimentConfig {
    /// Sets one field from its textual key/value form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "bits" => self.num_bits = parse(key, value)?,
            "pop" => self.population_size = parse(key, value)?,
            "gens" => self.generations = parse(key, value)?,
            "groups" => self.groups = parse(key, value)?,
            "runs" => self.runs = parse(key, value)?,
            "seed" => self.master_seed = parse(key, value)?,
            "timer" => self.timer = parse(key, value)?,
            "workers" => self.workers = parse(key, value)?,
            "tournament" => self.plan.tournament_size = parse(key, value)?,
            "xo-prob" => {
                let p: f64 = parse(key, value)?;
                self.plan.crossover_prob = p;
                self.plan.reproduction_prob = 1.0 - p;
            }
            "max-depth" => self.plan.max_depth = parse(key, value)?,
            "elitism" => self.plan.elitism = parse(key, value)?,
            "init-min-depth" => self.init_depth.0 = parse(key, value)?,
            "init-max-depth" => self.init_depth.1 = parse(key, value)?,
            other => {
                return Err(ConfigError::new(
                    other,
                    format!("unknown key (expected one of {})", CONFIG_KEYS.join(", ")),
                ))
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(MIN_BITS..=MAX_BITS).contains(&self.num_bits) {
            return Err(ConfigError::new(
                "bits",
                format!("{} is outside {MIN_BITS}..={MAX_BITS}", self.num_bits),
            ));
        }
        if self.population_size < 2 {
            return Err(ConfigError::new("pop", "population must have at least 2 individuals"));
        }
        if self.generations < 1 {
            return Err(ConfigError::new("gens", "must be at least 1"));
        }
        if self.groups < 1 || self.groups > self.population_size {
            return Err(ConfigError::new(
                "groups",
                format!("{} must be in 1..={}", self.groups, self.population_size),
            ));
        }
        if self.runs < 1 {
            return Err(ConfigError::new("runs", "must be at least 1"));
        }
        if self.workers < 1 {
            return Err(ConfigError::new("workers", "must be at least 1"));
        }
        let (lo, hi) = self.init_depth;
        if lo < 1 || lo > hi {
            return Err(ConfigError::new(
                "init-min-depth",
                format!("init depth range [{lo},{hi}] must satisfy 1 <= min <= max"),
            ));
        }
        if hi > self.plan.max_depth {
            return Err(ConfigError::new(
                "max-depth",
                format!("{} is below the initial depth {hi}", self.plan.max_depth),
            ));
        }
        self.plan.validate()
    }

    /// Paper-scale workloads (12+ bit parity) run for hours.
    pub fn is_long_running(&self) -> bool {
        self.num_bits >= 12
    }
}
