use crate::gp::tree::ProgramTree;

/// The cached outcome of a timed evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Evaluation {
    /// Number of fitness cases answered correctly (maximized).
    pub fitness: u32,
    /// Evaluation cost in timer units (node visits or nanoseconds).
    pub duration: u64,
}

/// A genome with its cached size and, once evaluated, its fitness and
/// measured evaluation duration.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Individual {
    genome: ProgramTree,
    size: usize,
    evaluation: Option<Evaluation>,
}

impl Individual {
    pub fn new(genome: ProgramTree) -> Self {
        let size = genome.size();
        Self {
            genome,
            size,
            evaluation: None,
        }
    }

    pub fn with_evaluation(genome: ProgramTree, evaluation: Evaluation) -> Self {
        let mut ind = Self::new(genome);
        ind.evaluation = Some(evaluation);
        ind
    }

    pub fn genome(&self) -> &ProgramTree {
        &self.genome
    }

    pub fn into_genome(self) -> ProgramTree {
        self.genome
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_evaluated(&self) -> bool {
        self.evaluation.is_some()
    }

    pub fn evaluation(&self) -> Option<Evaluation> {
        self.evaluation
    }

    pub fn fitness(&self) -> Option<u32> {
        self.evaluation.map(|e| e.fitness)
    }

    pub fn duration(&self) -> Option<u64> {
        self.evaluation.map(|e| e.duration)
    }

    pub(crate) fn mark_evaluated(&mut self, evaluation: Evaluation) {
        self.evaluation = Some(evaluation);
    }
}

impl From<ProgramTree> for Individual {
    fn from(genome: ProgramTree) -> Self {
        Individual::new(genome)
    }
}
