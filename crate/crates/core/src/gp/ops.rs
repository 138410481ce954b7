use std::borrow::Borrow;

use rand::Rng;

use crate::error::GpError;
use crate::gp::individual::Individual;
use crate::gp::tree::ProgramTree;

/// Probability that a crossover point is drawn from the function nodes
/// rather than the terminals (when the tree has any function node).
pub const INTERNAL_NODE_BIAS: f64 = 0.9;

/// Draws `k` members of `pool` uniformly with replacement and returns the
/// position of the fittest; on ties the earliest draw wins.
pub fn tournament_select<I, R>(pool: &[I], k: usize, rng: &mut R) -> Result<usize, GpError>
where
    I: Borrow<Individual>,
    R: Rng + ?Sized,
{
    if pool.is_empty() {
        return Err(GpError::EmptyPopulation);
    }
    if k == 0 {
        return Err(GpError::InvalidArgument("tournament size must be at least 1".into()));
    }
    let fitness_at = |i: usize| {
        pool[i]
            .borrow()
            .fitness()
            .ok_or(GpError::NotEvaluated(i))
    };
    let mut best = rng.random_range(0..pool.len());
    let mut best_fitness = fitness_at(best)?;
    for _ in 1..k {
        let cand = rng.random_range(0..pool.len());
        let f = fitness_at(cand)?;
        if f > best_fitness {
            best = cand;
            best_fitness = f;
        }
    }
    Ok(best)
}

fn pick_point<R: Rng + ?Sized>(tree: &ProgramTree, rng: &mut R) -> usize {
    let functions = tree.function_positions().count();
    let use_function = functions > 0 && rng.random::<f64>() < INTERNAL_NODE_BIAS;
    if use_function {
        let nth = rng.random_range(0..functions);
        tree.function_positions().nth(nth).unwrap()
    } else {
        let terminals = tree.size() - functions;
        let nth = rng.random_range(0..terminals);
        tree.terminal_positions().nth(nth).unwrap()
    }
}

/// Swaps one subtree of `a` with one subtree of `b`.
///
/// A child deeper than `max_depth` is discarded and replaced by a copy of the
/// parent it was derived from.
pub fn subtree_crossover<R: Rng + ?Sized>(
    a: &ProgramTree,
    b: &ProgramTree,
    max_depth: usize,
    rng: &mut R,
) -> (ProgramTree, ProgramTree) {
    let pa = pick_point(a, rng);
    let pb = pick_point(b, rng);
    let child_a = a.replace_subtree(pa, b.subtree(pb));
    let child_b = b.replace_subtree(pb, a.subtree(pa));
    let child_a = if child_a.depth() > max_depth { a.clone() } else { child_a };
    let child_b = if child_b.depth() > max_depth { b.clone() } else { child_b };
    (child_a, child_b)
}
