use crate::error::GpError;
use crate::gp::tree::{Primitive, ProgramTree};

pub const MIN_BITS: u8 = 2;
pub const MAX_BITS: u8 = 16;

/// The complete even-parity truth table for `num_bits` inputs.
///
/// Case `c` assigns bit `i` of `c` to input `x{i}`. Cases are packed 64 per
/// word so that one gate application covers 64 rows.
#[derive(Clone, Debug)]
pub struct FitnessCaseTable {
    num_bits: u8,
    num_cases: usize,
    /// `columns[i]` holds input `x{i}` across all cases.
    columns: Vec<Vec<u64>>,
    target: Vec<u64>,
    /// Valid-case mask for the last word (tables smaller than 64 rows).
    tail_mask: u64,
}

pub fn build_case_table(num_bits: u32) -> Result<FitnessCaseTable, GpError> {
    if !(MIN_BITS as u32..=MAX_BITS as u32).contains(&num_bits) {
        return Err(GpError::BitWidth(num_bits));
    }
    let num_cases = 1usize << num_bits;
    let words = num_cases.div_ceil(64);
    let mut columns = vec![vec![0u64; words]; num_bits as usize];
    let mut target = vec![0u64; words];
    for case in 0..num_cases {
        let (w, b) = (case / 64, case % 64);
        for (i, col) in columns.iter_mut().enumerate() {
            if (case >> i) & 1 == 1 {
                col[w] |= 1 << b;
            }
        }
        if case.count_ones() % 2 == 0 {
            target[w] |= 1 << b;
        }
    }
    let tail = num_cases % 64;
    let tail_mask = if tail == 0 { u64::MAX } else { (1u64 << tail) - 1 };
    Ok(FitnessCaseTable {
        num_bits: num_bits as u8,
        num_cases,
        columns,
        target,
        tail_mask,
    })
}

impl FitnessCaseTable {
    pub fn num_bits(&self) -> u8 {
        self.num_bits
    }

    pub fn num_cases(&self) -> usize {
        self.num_cases
    }

    fn words(&self) -> usize {
        self.target.len()
    }

    /// Input bits and target of case `c`.
    pub fn case(&self, c: usize) -> (Vec<bool>, bool) {
        assert!(c < self.num_cases);
        let inputs = (0..self.num_bits).map(|i| (c >> i) & 1 == 1).collect();
        (inputs, c.count_ones().is_multiple_of(2))
    }

    pub fn cases(&self) -> impl Iterator<Item = (Vec<bool>, bool)> + '_ {
        (0..self.num_cases).map(|c| self.case(c))
    }

    pub fn check(&self, genome: &ProgramTree) -> Result<(), GpError> {
        match genome.max_input() {
            Some(i) if i >= self.num_bits => Err(GpError::InputOutOfRange {
                index: i,
                num_bits: self.num_bits,
            }),
            _ => Ok(()),
        }
    }
}

/// Counts the fitness cases on which `genome` outputs the even-parity target.
///
/// Every node is computed for every case; there is no short-circuiting, so the
/// work done is exactly `size × 2^num_bits` node visits.
pub fn evaluate(genome: &ProgramTree, table: &FitnessCaseTable) -> Result<u32, GpError> {
    Evaluator::new(table).evaluate(genome)
}

/// Reusable evaluation buffers plus a node-visit counter.
pub struct Evaluator<'a> {
    table: &'a FitnessCaseTable,
    stack: Vec<u64>,
    node_visits: u64,
}

impl<'a> Evaluator<'a> {
    pub fn new(table: &'a FitnessCaseTable) -> Self {
        Self {
            table,
            stack: Vec::new(),
            node_visits: 0,
        }
    }

    /// Node visits accumulated over every evaluation so far, one visit being
    /// one node computed on one fitness case.
    pub fn node_visits(&self) -> u64 {
        self.node_visits
    }

    pub fn evaluate(&mut self, genome: &ProgramTree) -> Result<u32, GpError> {
        self.table.check(genome)?;
        let w = self.table.words();
        self.stack.clear();
        // Reverse prefix order is a valid postfix schedule.
        for &p in genome.nodes().iter().rev() {
            match p {
                Primitive::Input(i) => {
                    self.stack.extend_from_slice(&self.table.columns[i as usize]);
                }
                op => {
                    let len = self.stack.len();
                    let (lower, upper) = self.stack.split_at_mut(len - w);
                    let first = &upper[..w];
                    let second = &mut lower[len - 2 * w..];
                    for (dst, &a) in second.iter_mut().zip(first) {
                        *dst = op.apply(a, *dst);
                    }
                    self.stack.truncate(len - w);
                }
            }
            self.node_visits += self.table.num_cases as u64;
        }
        debug_assert_eq!(self.stack.len(), w);
        let mut hits = 0u32;
        for (k, (&out, &tgt)) in self.stack.iter().zip(&self.table.target).enumerate() {
            let mut agree = !(out ^ tgt);
            if k == w - 1 {
                agree &= self.table.tail_mask;
            }
            hits += agree.count_ones();
        }
        Ok(hits)
    }
}
