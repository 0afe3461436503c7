//! Preprocessing rules, applied to fixpoint in order:
//!   1. shrink every list to an incomparable set,
//!   2. arc consistency along edges,
//!   3. delete vertices with singleton lists, recording the forced color.
//!
//! An emptied list terminates with `Unsat`. The rules preserve the yes/no
//! status of the instance.

use super::ListInstance;
use crate::target::{ColorSet, Comparability, TargetGraph};

#[derive(Clone, Debug)]
pub enum Preprocessed {
    Unsat,
    Reduced {
        inst: ListInstance,
        /// Input-local ids of the surviving vertices, ascending.
        kept: Vec<usize>,
        /// Forced colors of deleted vertices, as (input-local id, color).
        forced: Vec<(usize, usize)>,
    },
}

/// Rule 1 on one list: drop `a` whenever some other member `b` has
/// `N(a) ⊆ N(b)`; equal neighborhoods drop the lexicographically smaller label.
fn incomparable_core(h: &TargetGraph, mut list: ColorSet) -> ColorSet {
    loop {
        let mut removed = None;
        let colors: Vec<usize> = (0..h.n()).filter(|&c| list >> c & 1 == 1).collect();
        'scan: for &a in &colors {
            for &b in &colors {
                if a == b {
                    continue;
                }
                match h.comparability(a, b) {
                    Comparability::ALeB => {
                        removed = Some(a);
                        break 'scan;
                    }
                    Comparability::Equal => {
                        let drop = if h.label(a) < h.label(b) { a } else { b };
                        removed = Some(drop);
                        break 'scan;
                    }
                    _ => {}
                }
            }
        }
        match removed {
            Some(a) => list &= !(1 << a),
            None => return list,
        }
    }
}

pub fn preprocess(h: &TargetGraph, inst: &ListInstance) -> Preprocessed {
    let n = inst.n();
    let mut lists = inst.lists.clone();
    let mut alive: Vec<bool> = vec![true; n];
    let mut forced: Vec<(usize, usize)> = Vec::new();

    loop {
        let mut changed = false;

        // rule 1
        for v in 0..n {
            if !alive[v] {
                continue;
            }
            let shrunk = incomparable_core(h, lists[v]);
            if shrunk != lists[v] {
                lists[v] = shrunk;
                changed = true;
            }
            if lists[v] == 0 {
                return Preprocessed::Unsat;
            }
        }

        // rule 2: remove a from L(u) when no b in L(v) of a neighbor v has ab in E(H)
        loop {
            let mut any = false;
            for u in 0..n {
                if !alive[u] {
                    continue;
                }
                let mut keep = lists[u];
                for v in inst.graph.neighbors(u) {
                    if !alive[v] {
                        continue;
                    }
                    let mut m = keep;
                    while m != 0 {
                        let a = m.trailing_zeros() as usize;
                        m &= m - 1;
                        if h.nbr_mask(a) & lists[v] == 0 {
                            keep &= !(1 << a);
                        }
                    }
                }
                if keep != lists[u] {
                    lists[u] = keep;
                    any = true;
                    changed = true;
                    if keep == 0 {
                        return Preprocessed::Unsat;
                    }
                }
            }
            if !any {
                break;
            }
        }

        // rule 3: eliminate singleton vertices
        for v in 0..n {
            if alive[v] && lists[v].count_ones() == 1 {
                let c = lists[v].trailing_zeros() as usize;
                forced.push((v, c));
                alive[v] = false;
                changed = true;
            }
        }

        if !changed {
            break;
        }
    }

    let kept: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let graph = inst.graph.induced(&kept);
    let lists: Vec<ColorSet> = kept.iter().map(|&v| lists[v]).collect();
    forced.sort_unstable();
    Preprocessed::Reduced {
        inst: ListInstance { graph, lists },
        kept,
        forced,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::target::TargetGraph;

    fn path3() -> TargetGraph {
        TargetGraph::from_edges(
            vec!["1".into(), "2".into(), "3".into()],
            &[(0, 1), (1, 2)],
        )
        .unwrap()
    }

    #[test]
    fn forced_chain_is_eliminated() {
        // H = irreflexive path 1-2-3, G = edge uv, L(u)={1}, L(v)=all
        let h = path3();
        let mut g = Graph::new(2);
        g.add_edge(0, 1);
        let inst = ListInstance::new(g, vec![0b001, 0b111]);
        match preprocess(&h, &inst) {
            Preprocessed::Reduced { inst, kept, forced } => {
                assert!(kept.is_empty());
                assert_eq!(inst.n(), 0);
                assert_eq!(forced, vec![(0, 0), (1, 1)]);
            }
            Preprocessed::Unsat => panic!("should be satisfiable"),
        }
    }

    #[test]
    fn rule1_collapses_equal_neighborhoods() {
        // N(1) = N(3) in the path; the smaller label is dropped
        let h = path3();
        let g = Graph::new(1);
        let inst = ListInstance::new(g, vec![0b101]);
        match preprocess(&h, &inst) {
            Preprocessed::Reduced { forced, .. } => {
                assert_eq!(forced, vec![(0, 2)]);
            }
            Preprocessed::Unsat => panic!(),
        }
    }

    #[test]
    fn incompatible_singletons_unsat() {
        // edge uv with L(u)={1}, L(v)={3}: 1-3 not an edge of the path
        let h = path3();
        let mut g = Graph::new(2);
        g.add_edge(0, 1);
        let inst = ListInstance::new(g, vec![0b001, 0b100]);
        assert!(matches!(preprocess(&h, &inst), Preprocessed::Unsat));
    }
}
