//! Test oracles, coded independently of the library's evaluation and
//! scheduling paths.

#![allow(dead_code)]

use gpgroup::{Primitive, ProgramTree};

/// Case-by-case recursive interpreter over the prefix sequence. Returns the
/// output and advances `pos` past the subtree; counts one visit per node.
fn interpret(nodes: &[Primitive], pos: &mut usize, case: usize, visits: &mut u64) -> bool {
    let p = nodes[*pos];
    *pos += 1;
    *visits += 1;
    match p {
        Primitive::Input(i) => (case >> i) & 1 == 1,
        op => {
            let a = interpret(nodes, pos, case, visits);
            let b = interpret(nodes, pos, case, visits);
            match op {
                Primitive::And => a && b,
                Primitive::Or => a || b,
                Primitive::Nand => !(a && b),
                Primitive::Nor => !(a || b),
                Primitive::Input(_) => unreachable!(),
            }
        }
    }
}

/// Brute-force truth-table fitness plus the number of node visits spent.
pub fn brute_force_fitness(tree: &ProgramTree, num_bits: u32) -> (u32, u64) {
    let mut hits = 0;
    let mut visits = 0;
    for case in 0..(1usize << num_bits) {
        let mut pos = 0;
        let out = interpret(tree.nodes(), &mut pos, case, &mut visits);
        assert_eq!(pos, tree.size());
        let even = case.count_ones() % 2 == 0;
        if out == even {
            hits += 1;
        }
    }
    (hits, visits)
}

/// Optimal makespan by enumerating every assignment of tasks to workers.
pub fn optimal_makespan(durations: &[u64], workers: usize) -> u64 {
    fn go(d: &[u64], i: usize, loads: &mut Vec<u64>, best: &mut u64) {
        if i == d.len() {
            *best = (*best).min(loads.iter().copied().max().unwrap_or(0));
            return;
        }
        for w in 0..loads.len() {
            loads[w] += d[i];
            if loads[w] < *best {
                go(d, i + 1, loads, best);
            }
            loads[w] -= d[i];
        }
    }
    let mut best = durations.iter().sum::<u64>();
    if durations.is_empty() {
        return 0;
    }
    go(durations, 0, &mut vec![0; workers], &mut best);
    best
}

/// Spearman rank correlation with average ranks for ties.
pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
    fn ranks(v: &[f64]) -> Vec<f64> {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&a, &b| v[a].partial_cmp(&v[b]).unwrap());
        let mut r = vec![0.0; v.len()];
        let mut i = 0;
        while i < idx.len() {
            let mut j = i;
            while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
                j += 1;
            }
            let avg = (i + j) as f64 / 2.0 + 1.0;
            for k in i..=j {
                r[idx[k]] = avg;
            }
            i = j + 1;
        }
        r
    }
    let (rx, ry) = (ranks(x), ranks(y));
    let n = x.len() as f64;
    let mx = rx.iter().sum::<f64>() / n;
    let my = ry.iter().sum::<f64>() / n;
    let cov: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = rx.iter().map(|a| (a - mx).powi(2)).sum();
    let vy: f64 = ry.iter().map(|b| (b - my).powi(2)).sum();
    cov / (vx * vy).sqrt()
}
