use std::fmt;
use std::str::FromStr;

use crate::error::GpError;

/// A node label. Functions are binary Boolean gates, terminals read one input
/// bit of the fitness case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Primitive {
    And,
    Or,
    Nand,
    Nor,
    Input(u8),
}

impl Primitive {
    pub const FUNCTIONS: [Primitive; 4] =
        [Primitive::And, Primitive::Or, Primitive::Nand, Primitive::Nor];

    pub fn arity(self) -> usize {
        match self {
            Primitive::Input(_) => 0,
            _ => 2,
        }
    }

    pub fn is_function(self) -> bool {
        self.arity() > 0
    }

    /// Applies a gate to 64 fitness cases at once. Terminals are not gates.
    #[inline]
    pub(crate) fn apply(self, a: u64, b: u64) -> u64 {
        match self {
            Primitive::And => a & b,
            Primitive::Or => a | b,
            Primitive::Nand => !(a & b),
            Primitive::Nor => !(a | b),
            Primitive::Input(_) => unreachable!("terminal has no operands"),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Primitive::And => "and",
            Primitive::Or => "or",
            Primitive::Nand => "nand",
            Primitive::Nor => "nor",
            Primitive::Input(_) => "x",
        }
    }
}

impl fmt::Display for Primitive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Primitive::Input(i) => write!(f, "x{i}"),
            p => f.write_str(p.name()),
        }
    }
}

/// A program tree stored as its prefix (pre-order) node sequence.
///
/// Every subtree occupies a contiguous range of the sequence, so subtree
/// extraction and replacement are slice operations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProgramTree {
    nodes: Vec<Primitive>,
}

impl ProgramTree {
    /// Builds a tree from a prefix sequence, checking that arities close it
    /// exactly.
    pub fn from_prefix(nodes: Vec<Primitive>) -> Result<Self, GpError> {
        if nodes.is_empty() {
            return Err(GpError::MalformedTree("empty node sequence".into()));
        }
        let mut open = 1usize;
        for (i, p) in nodes.iter().enumerate() {
            if open == 0 {
                return Err(GpError::MalformedTree(format!(
                    "trailing nodes after position {i}"
                )));
            }
            open = open - 1 + p.arity();
        }
        if open != 0 {
            return Err(GpError::MalformedTree(format!("{open} missing operand(s)")));
        }
        Ok(Self { nodes })
    }

    pub(crate) fn from_prefix_unchecked(nodes: Vec<Primitive>) -> Self {
        debug_assert!(Self::from_prefix(nodes.clone()).is_ok());
        Self { nodes }
    }

    pub fn leaf(input: u8) -> Self {
        Self {
            nodes: vec![Primitive::Input(input)],
        }
    }

    /// Combines two subtrees under a binary gate.
    pub fn node(op: Primitive, left: ProgramTree, right: ProgramTree) -> Self {
        assert!(op.is_function(), "{op} is not a function");
        let mut nodes = Vec::with_capacity(1 + left.size() + right.size());
        nodes.push(op);
        nodes.extend(left.nodes);
        nodes.extend(right.nodes);
        Self { nodes }
    }

    pub fn nodes(&self) -> &[Primitive] {
        &self.nodes
    }

    pub fn root(&self) -> Primitive {
        self.nodes[0]
    }

    /// Node count.
    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    /// Longest root-to-leaf path counted in edges; a single node has depth 0.
    pub fn depth(&self) -> usize {
        // Pending operand slots per open ancestor, tracked as a stack of
        // remaining-children counters.
        let mut stack: Vec<usize> = Vec::with_capacity(32);
        let mut max_depth = 0;
        for p in &self.nodes {
            max_depth = max_depth.max(stack.len());
            if p.is_function() {
                stack.push(p.arity());
            } else {
                while let Some(top) = stack.last_mut() {
                    *top -= 1;
                    if *top > 0 {
                        break;
                    }
                    stack.pop();
                }
            }
        }
        max_depth
    }

    /// End (exclusive) of the subtree rooted at `start`.
    pub fn subtree_end(&self, start: usize) -> usize {
        let mut open = 1usize;
        let mut i = start;
        while open > 0 {
            open = open - 1 + self.nodes[i].arity();
            i += 1;
        }
        i
    }

    pub fn subtree(&self, start: usize) -> &[Primitive] {
        &self.nodes[start..self.subtree_end(start)]
    }

    /// Returns a copy with the subtree at `start` replaced by `replacement`,
    /// which must itself be a complete prefix sequence.
    pub fn replace_subtree(&self, start: usize, replacement: &[Primitive]) -> ProgramTree {
        let end = self.subtree_end(start);
        let mut nodes = Vec::with_capacity(self.size() - (end - start) + replacement.len());
        nodes.extend_from_slice(&self.nodes[..start]);
        nodes.extend_from_slice(replacement);
        nodes.extend_from_slice(&self.nodes[end..]);
        ProgramTree::from_prefix_unchecked(nodes)
    }

    /// Largest input index referenced, if any terminal is present.
    pub fn max_input(&self) -> Option<u8> {
        self.nodes
            .iter()
            .filter_map(|p| match p {
                Primitive::Input(i) => Some(*i),
                _ => None,
            })
            .max()
    }

    pub fn function_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_function())
            .map(|(i, _)| i)
    }

    pub fn terminal_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_function())
            .map(|(i, _)| i)
    }
}

impl fmt::Display for ProgramTree {
    /// S-expression form, e.g. `(and x0 (nor x1 x2))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pending: Vec<usize> = Vec::new();
        for (i, p) in self.nodes.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if p.is_function() {
                write!(f, "({p}")?;
                pending.push(p.arity());
            } else {
                write!(f, "{p}")?;
                while let Some(top) = pending.last_mut() {
                    *top -= 1;
                    if *top > 0 {
                        break;
                    }
                    pending.pop();
                    f.write_str(")")?;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for ProgramTree {
    type Err = GpError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let spaced = s.replace('(', " ( ").replace(')', " ) ");
        let mut nodes = Vec::new();
        let mut expect_op = false;
        let mut depth = 0i64;
        for tok in spaced.split_whitespace() {
            match tok {
                "(" => {
                    depth += 1;
                    expect_op = true;
                }
                ")" => depth -= 1,
                t => {
                    let p = match t.to_ascii_lowercase().as_str() {
                        "and" => Primitive::And,
                        "or" => Primitive::Or,
                        "nand" => Primitive::Nand,
                        "nor" => Primitive::Nor,
                        other => {
                            let idx = other
                                .strip_prefix('x')
                                .and_then(|d| d.parse::<u8>().ok())
                                .ok_or_else(|| {
                                    GpError::MalformedTree(format!("unknown token `{t}`"))
                                })?;
                            Primitive::Input(idx)
                        }
                    };
                    if expect_op != p.is_function() {
                        return Err(GpError::MalformedTree(format!("misplaced token `{t}`")));
                    }
                    expect_op = false;
                    nodes.push(p);
                }
            }
            if depth < 0 {
                return Err(GpError::MalformedTree("unbalanced parentheses".into()));
            }
        }
        if depth != 0 {
            return Err(GpError::MalformedTree("unbalanced parentheses".into()));
        }
        ProgramTree::from_prefix(nodes)
    }
}
