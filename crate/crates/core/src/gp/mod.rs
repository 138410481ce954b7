//! Boolean program trees for the even-parity benchmark.

mod individual;
mod init;
mod ops;
mod parity;
mod tree;

pub use individual::{Evaluation, Individual};
pub use init::{full_tree, grow_tree, ramped_half_and_half};
pub use ops::{subtree_crossover, tournament_select, INTERNAL_NODE_BIAS};
pub use parity::{build_case_table, evaluate, Evaluator, FitnessCaseTable, MAX_BITS, MIN_BITS};
pub use tree::{Primitive, ProgramTree};
