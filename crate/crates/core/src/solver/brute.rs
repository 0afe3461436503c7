//! Complete backtracking solver: minimum-remaining-values vertex order with
//! arc-consistency propagation at every node. This is the oracle every other
//! solver is tested against.

use super::{Answer, ListInstance, SolveCtl, SolveResult, TimedOut};
use crate::target::{ColorSet, TargetGraph};

pub fn solve_bruteforce(h: &TargetGraph, inst: &ListInstance) -> SolveResult {
    let mut ctl = SolveCtl::unbounded();
    let answer = solve_bruteforce_ctl(h, inst, &mut ctl).expect("no deadline set");
    SolveResult {
        answer,
        stats: ctl.stats,
    }
}

pub fn solve_bruteforce_ctl(
    h: &TargetGraph,
    inst: &ListInstance,
    ctl: &mut SolveCtl,
) -> Result<Answer, TimedOut> {
    let n = inst.n();
    let mut lists = inst.lists.clone();
    if !propagate(h, &inst.graph, &mut lists, None) {
        ctl.tick(0)?;
        return Ok(Answer::No);
    }
    let mut colors: Vec<usize> = vec![usize::MAX; n];
    if go(h, inst, &mut lists, &mut colors, 0, ctl)? {
        Ok(Answer::Yes(colors))
    } else {
        Ok(Answer::No)
    }
}

/// Arc consistency to fixpoint; `touched` optionally seeds the worklist.
/// Returns false when a list empties.
fn propagate(
    h: &TargetGraph,
    graph: &crate::graph::Graph,
    lists: &mut [ColorSet],
    touched: Option<usize>,
) -> bool {
    let n = lists.len();
    let mut queue: Vec<usize> = match touched {
        Some(v) => std::iter::once(v).chain(graph.neighbors(v)).collect(),
        None => (0..n).collect(),
    };
    while let Some(u) = queue.pop() {
        if lists[u] == 0 {
            return false;
        }
        for v in graph.neighbors(u) {
            let mut keep = lists[v];
            let mut m = keep;
            while m != 0 {
                let a = m.trailing_zeros() as usize;
                m &= m - 1;
                if h.nbr_mask(a) & lists[u] == 0 {
                    keep &= !(1 << a);
                }
            }
            if keep != lists[v] {
                lists[v] = keep;
                if keep == 0 {
                    return false;
                }
                queue.push(v);
            }
        }
    }
    true
}

fn go(
    h: &TargetGraph,
    inst: &ListInstance,
    lists: &mut Vec<ColorSet>,
    colors: &mut Vec<usize>,
    depth: usize,
    ctl: &mut SolveCtl,
) -> Result<bool, TimedOut> {
    ctl.tick(depth)?;
    // MRV: unassigned vertex with the smallest list, ties by index
    let mut pick: Option<(u32, usize)> = None;
    for v in 0..inst.n() {
        if colors[v] == usize::MAX {
            let sz = lists[v].count_ones();
            if pick.map_or(true, |(best, _)| sz < best) {
                pick = Some((sz, v));
            }
        }
    }
    let Some((_, v)) = pick else {
        return Ok(true);
    };
    let mut m = lists[v];
    while m != 0 {
        let c = m.trailing_zeros() as usize;
        m &= m - 1;
        let saved = lists.clone();
        lists[v] = 1 << c;
        colors[v] = c;
        if propagate(h, &inst.graph, lists, Some(v)) && go(h, inst, lists, colors, depth + 1, ctl)? {
            return Ok(true);
        }
        colors[v] = usize::MAX;
        *lists = saved;
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::solver::verify_homomorphism;
    use crate::target::known;

    #[test]
    fn triangle_three_colors() {
        let h = known::irreflexive_clique(3);
        let mut g = Graph::new(3);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(0, 2);
        let inst = ListInstance::full_lists(g, &h);
        let res = solve_bruteforce(&h, &inst);
        let w = res.answer.witness().expect("K3 -> K3");
        assert!(verify_homomorphism(&h, &inst, w));
    }

    #[test]
    fn triangle_two_colors_fails() {
        let h = known::irreflexive_clique(2);
        let mut g = Graph::new(3);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(0, 2);
        let inst = ListInstance::full_lists(g, &h);
        assert_eq!(solve_bruteforce(&h, &inst).answer, Answer::No);
    }

    /// Spec example: C5 into C5-with-loops-on-{1,2}, all lists {3,4,5},
    /// cross-checked against full enumeration of the 3^5 maps.
    #[test]
    fn c5_restricted_lists_match_enumeration() {
        let h = known::c5_loops_12();
        let mut g = Graph::new(5);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
        }
        let lists = vec![0b11100u32; 5];
        let inst = ListInstance::new(g, lists);

        let mut any = false;
        for code in 0..3u32.pow(5) {
            let mut f = Vec::new();
            let mut c = code;
            for _ in 0..5 {
                f.push(2 + (c % 3) as usize);
                c /= 3;
            }
            if verify_homomorphism(&h, &inst, &f) {
                any = true;
            }
        }
        assert_eq!(solve_bruteforce(&h, &inst).answer.is_yes(), any);
    }
}
