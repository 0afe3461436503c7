//! LHom(H) instances and the exact solvers.

mod brute;
mod cliquebased;
mod cliques;
mod preprocess;
mod string_solver;
mod twosat;

pub use brute::{solve_bruteforce, solve_bruteforce_ctl};
pub use cliquebased::{solve_cliquebased, CliqueBasedCfg, SepProvider};
pub use cliques::enumerate_clique_colorings;
pub use preprocess::{preprocess, Preprocessed};
pub use string_solver::{solve_string, DegThreshold, StringCfg, StringError};
pub use twosat::{solve_2sat, TwoSatError};

use crate::graph::Graph;
use crate::target::{ColorSet, TargetGraph};
use std::time::Instant;

/// An LHom(H) instance: a loopless graph plus one color list per vertex.
#[derive(Clone, Debug)]
pub struct ListInstance {
    pub graph: Graph,
    pub lists: Vec<ColorSet>,
}

impl ListInstance {
    pub fn new(graph: Graph, lists: Vec<ColorSet>) -> Self {
        assert_eq!(graph.n(), lists.len());
        ListInstance { graph, lists }
    }

    pub fn full_lists(graph: Graph, h: &TargetGraph) -> Self {
        let lists = vec![h.full_mask(); graph.n()];
        ListInstance { graph, lists }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Induced sub-instance; vertex i of the result is `verts[i]`.
    pub fn induced(&self, verts: &[usize]) -> ListInstance {
        ListInstance {
            graph: self.graph.induced(verts),
            lists: verts.iter().map(|&v| self.lists[v]).collect(),
        }
    }
}

/// Search statistics; counters merge by addition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub branch_nodes: u64,
    pub max_depth: usize,
    pub separators_used: u64,
}

impl Stats {
    pub fn merge(&mut self, other: &Stats) {
        self.branch_nodes += other.branch_nodes;
        self.max_depth = self.max_depth.max(other.max_depth);
        self.separators_used += other.separators_used;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Answer {
    Yes(Vec<usize>),
    No,
}

impl Answer {
    pub fn is_yes(&self) -> bool {
        matches!(self, Answer::Yes(_))
    }

    pub fn witness(&self) -> Option<&[usize]> {
        match self {
            Answer::Yes(w) => Some(w),
            Answer::No => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub answer: Answer,
    pub stats: Stats,
}

/// Raised when the cooperative deadline expires at a branch boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TimedOut;

/// Shared mutable search state: statistics plus an optional deadline that is
/// polled at branch nodes.
pub struct SolveCtl {
    pub stats: Stats,
    deadline: Option<Instant>,
    poll: u32,
}

impl SolveCtl {
    pub fn new(deadline: Option<Instant>) -> Self {
        SolveCtl {
            stats: Stats::default(),
            deadline,
            poll: 0,
        }
    }

    pub fn unbounded() -> Self {
        Self::new(None)
    }

    /// Count one branch node and poll the deadline.
    pub fn tick(&mut self, depth: usize) -> Result<(), TimedOut> {
        self.stats.branch_nodes += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        self.poll = self.poll.wrapping_add(1);
        if self.poll % 512 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    return Err(TimedOut);
                }
            }
        }
        Ok(())
    }
}

/// Check `f(v) ∈ L(v)` for every vertex and `f(u)f(v) ∈ E(H)` for every edge.
pub fn verify_homomorphism(h: &TargetGraph, inst: &ListInstance, f: &[usize]) -> bool {
    if f.len() != inst.n() {
        return false;
    }
    for (v, &c) in f.iter().enumerate() {
        if c >= h.n() || inst.lists[v] >> c & 1 == 0 {
            return false;
        }
    }
    for (u, v) in inst.graph.edges() {
        if !h.has_edge(f[u], f[v]) {
            return false;
        }
    }
    true
}
