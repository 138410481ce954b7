use rand::Rng;

use crate::error::GpError;
use crate::gp::tree::{Primitive, ProgramTree};

fn random_function<R: Rng + ?Sized>(rng: &mut R) -> Primitive {
    Primitive::FUNCTIONS[rng.random_range(0..Primitive::FUNCTIONS.len())]
}

fn random_input<R: Rng + ?Sized>(num_bits: u8, rng: &mut R) -> Primitive {
    Primitive::Input(rng.random_range(0..num_bits))
}

/// Every branch reaches exactly `depth`.
pub fn full_tree<R: Rng + ?Sized>(depth: usize, num_bits: u8, rng: &mut R) -> ProgramTree {
    let mut nodes = Vec::with_capacity((1 << (depth + 1).min(20)) - 1);
    fn build<R: Rng + ?Sized>(d: usize, num_bits: u8, rng: &mut R, out: &mut Vec<Primitive>) {
        if d == 0 {
            out.push(random_input(num_bits, rng));
        } else {
            out.push(random_function(rng));
            build(d - 1, num_bits, rng, out);
            build(d - 1, num_bits, rng, out);
        }
    }
    build(depth, num_bits, rng, &mut nodes);
    ProgramTree::from_prefix_unchecked(nodes)
}

/// Each node above `max_depth` is drawn uniformly from functions and
/// terminals together; nodes at `max_depth` are terminals.
pub fn grow_tree<R: Rng + ?Sized>(max_depth: usize, num_bits: u8, rng: &mut R) -> ProgramTree {
    let mut nodes = Vec::new();
    fn build<R: Rng + ?Sized>(d: usize, num_bits: u8, rng: &mut R, out: &mut Vec<Primitive>) {
        let choices = Primitive::FUNCTIONS.len() + num_bits as usize;
        let pick = if d == 0 { choices } else { rng.random_range(0..choices) };
        if d == 0 || pick >= Primitive::FUNCTIONS.len() {
            out.push(random_input(num_bits, rng));
        } else {
            out.push(Primitive::FUNCTIONS[pick]);
            build(d - 1, num_bits, rng, out);
            build(d - 1, num_bits, rng, out);
        }
    }
    build(max_depth, num_bits, rng, &mut nodes);
    ProgramTree::from_prefix_unchecked(nodes)
}

/// Ramped half-and-half: tree `i` targets depth `min + (i / 2) % span` and is
/// built by "full" when `i` is even and by "grow" when odd, so both methods
/// cover every depth in the ramp.
pub fn ramped_half_and_half<R: Rng + ?Sized>(
    count: usize,
    depth_range: (usize, usize),
    num_bits: u8,
    rng: &mut R,
) -> Result<Vec<ProgramTree>, GpError> {
    let (min, max) = depth_range;
    if count == 0 {
        return Err(GpError::InvalidArgument("count must be at least 1".into()));
    }
    if min < 1 || min > max {
        return Err(GpError::InvalidArgument(format!(
            "depth range [{min},{max}] must satisfy 1 <= min <= max"
        )));
    }
    if num_bits == 0 {
        return Err(GpError::InvalidArgument("num_bits must be positive".into()));
    }
    let span = max - min + 1;
    Ok((0..count)
        .map(|i| {
            let depth = min + (i / 2) % span;
            if i % 2 == 0 {
                full_tree(depth, num_bits, rng)
            } else {
                grow_tree(depth, num_bits, rng)
            }
        })
        .collect())
}
