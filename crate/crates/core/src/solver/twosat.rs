//! Polynomial solver for instances whose lists all have size at most 2,
//! by reduction to 2-SAT: one boolean per vertex choosing between the two
//! (sorted) list entries, a binary clause per edge and non-adjacent color
//! pair, satisfiability by strongly connected components of the implication
//! digraph, and a deterministic model from the condensation order.

use super::{Answer, ListInstance, SolveCtl, SolveResult, TimedOut};
use crate::target::TargetGraph;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TwoSatError {
    #[error("vertex {0} has a list of size {1}, 2-SAT requires size 1 or 2")]
    ListTooBig(usize, u32),
}

struct Implications {
    n_vars: usize,
    adj: Vec<Vec<u32>>,
}

impl Implications {
    fn new(n_vars: usize) -> Self {
        Implications {
            n_vars,
            adj: vec![Vec::new(); 2 * n_vars],
        }
    }

    fn node(&self, var: usize, value: bool) -> u32 {
        (var + if value { 0 } else { self.n_vars }) as u32
    }

    /// Clause (¬(var_a = va) ∨ ¬(var_b = vb)).
    fn add_forbidden(&mut self, a: usize, va: bool, b: usize, vb: bool) {
        let a_is = self.node(a, va);
        let a_not = self.node(a, !va);
        let b_is = self.node(b, vb);
        let b_not = self.node(b, !vb);
        self.adj[a_is as usize].push(b_not);
        self.adj[b_is as usize].push(a_not);
    }

    fn force(&mut self, var: usize, value: bool) {
        let bad = self.node(var, !value);
        let good = self.node(var, value);
        self.adj[bad as usize].push(good);
    }
}

/// Iterative Tarjan; returns SCC index per node, numbered in reverse
/// topological order of the condensation.
fn scc(adj: &[Vec<u32>]) -> Vec<u32> {
    let n = adj.len();
    const UNSET: u32 = u32::MAX;
    let mut index = vec![UNSET; n];
    let mut low = vec![0u32; n];
    let mut comp = vec![UNSET; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut call: Vec<(u32, usize)> = Vec::new();
    let mut next_index = 0u32;
    let mut next_comp = 0u32;

    for root in 0..n as u32 {
        if index[root as usize] != UNSET {
            continue;
        }
        call.push((root, 0));
        while let Some(&mut (v, ref mut ei)) = call.last_mut() {
            let vu = v as usize;
            if *ei == 0 {
                index[vu] = next_index;
                low[vu] = next_index;
                next_index += 1;
                stack.push(v);
                on_stack[vu] = true;
            }
            if *ei < adj[vu].len() {
                let w = adj[vu][*ei];
                *ei += 1;
                let wu = w as usize;
                if index[wu] == UNSET {
                    call.push((w, 0));
                } else if on_stack[wu] {
                    low[vu] = low[vu].min(index[wu]);
                }
            } else {
                if low[vu] == index[vu] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w as usize] = false;
                        comp[w as usize] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
                call.pop();
                if let Some(&mut (p, _)) = call.last_mut() {
                    let pu = p as usize;
                    low[pu] = low[pu].min(low[vu]);
                }
            }
        }
    }
    comp
}

pub fn solve_2sat(h: &TargetGraph, inst: &ListInstance) -> Result<SolveResult, TwoSatError> {
    let mut ctl = SolveCtl::unbounded();
    let answer = solve_2sat_ctl(h, inst, &mut ctl)?.expect("no deadline");
    Ok(SolveResult {
        answer,
        stats: ctl.stats,
    })
}

pub(crate) fn solve_2sat_ctl(
    h: &TargetGraph,
    inst: &ListInstance,
    ctl: &mut SolveCtl,
) -> Result<Result<Answer, TimedOut>, TwoSatError> {
    let n = inst.n();
    if let Err(to) = ctl.tick(0) {
        return Ok(Err(to));
    }
    // per-vertex ordered candidates
    let mut cand: Vec<(usize, usize)> = Vec::with_capacity(n);
    for (v, &list) in inst.lists.iter().enumerate() {
        match list.count_ones() {
            0 => return Ok(Ok(Answer::No)),
            1 => {
                let c = list.trailing_zeros() as usize;
                cand.push((c, c));
            }
            2 => {
                let c0 = list.trailing_zeros() as usize;
                let c1 = (list & (list - 1)).trailing_zeros() as usize;
                cand.push((c0, c1));
            }
            k => return Err(TwoSatError::ListTooBig(v, k)),
        }
    }

    let mut imp = Implications::new(n);
    for v in 0..n {
        if cand[v].0 == cand[v].1 {
            imp.force(v, false);
        }
    }
    for (u, v) in inst.graph.edges() {
        for (iu, cu) in [(false, cand[u].0), (true, cand[u].1)] {
            for (iv, cv) in [(false, cand[v].0), (true, cand[v].1)] {
                if !h.has_edge(cu, cv) {
                    imp.add_forbidden(u, iu, v, iv);
                }
            }
        }
    }

    let comp = scc(&imp.adj);
    for v in 0..n {
        if comp[imp.node(v, true) as usize] == comp[imp.node(v, false) as usize] {
            return Ok(Ok(Answer::No));
        }
    }
    let witness: Vec<usize> = (0..n)
        .map(|v| {
            let pick_second = comp[imp.node(v, true) as usize] < comp[imp.node(v, false) as usize];
            if pick_second {
                cand[v].1
            } else {
                cand[v].0
            }
        })
        .collect();
    Ok(Ok(Answer::Yes(witness)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::solver::{solve_bruteforce, verify_homomorphism};
    use crate::target::known;

    fn cycle(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    #[test]
    fn odd_cycle_into_k2_is_no() {
        let h = known::irreflexive_clique(2);
        let inst = ListInstance::full_lists(cycle(3), &h);
        assert_eq!(solve_2sat(&h, &inst).unwrap().answer, Answer::No);
        assert_eq!(solve_bruteforce(&h, &inst).answer, Answer::No);
    }

    #[test]
    fn even_cycle_into_k2_is_yes() {
        let h = known::irreflexive_clique(2);
        let inst = ListInstance::full_lists(cycle(4), &h);
        let res = solve_2sat(&h, &inst).unwrap();
        let w = res.answer.witness().expect("C4 -> K2");
        assert!(verify_homomorphism(&h, &inst, w));
    }

    #[test]
    fn singleton_vertex() {
        let h = known::reflexive_k2();
        let inst = ListInstance::new(Graph::new(1), vec![0b01]);
        let res = solve_2sat(&h, &inst).unwrap();
        assert_eq!(res.answer, Answer::Yes(vec![0]));
    }

    #[test]
    fn oversized_list_rejected() {
        let h = known::irreflexive_clique(3);
        let inst = ListInstance::full_lists(Graph::new(1), &h);
        assert!(matches!(
            solve_2sat(&h, &inst),
            Err(TwoSatError::ListTooBig(0, 3))
        ));
    }

    #[test]
    fn deterministic_witness() {
        let h = known::c5_loops_12();
        let mut g = cycle(6);
        g.add_edge(0, 3);
        let lists = vec![0b00011u32; 6];
        let inst = ListInstance::new(g, lists);
        let r1 = solve_2sat(&h, &inst).unwrap();
        let r2 = solve_2sat(&h, &inst).unwrap();
        assert_eq!(r1.answer, r2.answer);
    }
}
