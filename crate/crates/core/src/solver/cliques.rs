//! Colorings of a clique of the instance graph, generated in the structured
//! form suggested by the clique-mapping observation: choose which clique
//! vertices go to irreflexive colors (injectively), then color the remainder
//! inside the reflexive part, where pairwise adjacency confines it to a
//! reflexive clique.

use super::ListInstance;
use crate::target::TargetGraph;

struct Enum<'a> {
    h: &'a TargetGraph,
    inst: &'a ListInstance,
    clique: &'a [usize],
    r_mask: u32,
    i_colors: Vec<usize>,
    out: Vec<Vec<usize>>,
}

impl Enum<'_> {
    /// Colors already placed must all be adjacent in H to `c`; every clique
    /// pair is an instance edge, and a repeated color needs a loop.
    fn compatible(&self, colors: &[usize], p: usize, c: usize) -> bool {
        colors
            .iter()
            .enumerate()
            .all(|(q, &cc)| q == p || cc == usize::MAX || self.h.has_edge(cc, c))
    }

    fn choose_positions(&mut self, start: usize, left: usize, subset: &mut Vec<usize>) {
        let k = self.clique.len();
        let mut colors = vec![usize::MAX; k];
        self.assign_i(subset.clone(), 0, &mut colors);
        if left > 0 {
            for p in start..k {
                subset.push(p);
                self.choose_positions(p + 1, left - 1, subset);
                subset.pop();
            }
        }
    }

    fn assign_i(&mut self, subset: Vec<usize>, idx: usize, colors: &mut Vec<usize>) {
        if idx == subset.len() {
            let rest: Vec<usize> = (0..self.clique.len())
                .filter(|p| !subset.contains(p))
                .collect();
            self.assign_r(&rest, 0, colors);
            return;
        }
        let p = subset[idx];
        let i_colors = self.i_colors.clone();
        for c in i_colors {
            if self.inst.lists[self.clique[p]] >> c & 1 == 0 {
                continue;
            }
            if colors.contains(&c) {
                continue; // injective into I(H)
            }
            if self.compatible(colors, p, c) {
                colors[p] = c;
                self.assign_i(subset.clone(), idx + 1, colors);
                colors[p] = usize::MAX;
            }
        }
    }

    fn assign_r(&mut self, rest: &[usize], idx: usize, colors: &mut Vec<usize>) {
        if idx == rest.len() {
            self.out.push(colors.clone());
            return;
        }
        let p = rest[idx];
        let mut m = self.inst.lists[self.clique[p]] & self.r_mask;
        while m != 0 {
            let c = m.trailing_zeros() as usize;
            m &= m - 1;
            if self.compatible(colors, p, c) {
                colors[p] = c;
                self.assign_r(rest, idx + 1, colors);
                colors[p] = usize::MAX;
            }
        }
    }
}

/// All list-respecting colorings of `clique` (which must induce a clique in
/// the instance graph), one color vector aligned with `clique` per item.
pub fn enumerate_clique_colorings(
    h: &TargetGraph,
    inst: &ListInstance,
    clique: &[usize],
) -> Vec<Vec<usize>> {
    debug_assert!(inst.graph.is_clique(clique));
    let (r_mask, i_mask) = h.reflexive_partition();
    let i_colors: Vec<usize> = (0..h.n()).filter(|&c| i_mask >> c & 1 == 1).collect();
    let max_i = i_colors.len().min(clique.len());
    let mut e = Enum {
        h,
        inst,
        clique,
        r_mask,
        i_colors,
        out: Vec::new(),
    };
    e.choose_positions(0, max_i, &mut Vec::new());
    e.out
}

/// Test-oracle shape: all clique colorings by plain backtracking.
pub(crate) fn clique_colorings_by_bruteforce(
    h: &TargetGraph,
    inst: &ListInstance,
    clique: &[usize],
) -> Vec<Vec<usize>> {
    fn rec(
        h: &TargetGraph,
        inst: &ListInstance,
        clique: &[usize],
        colors: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let p = colors.len();
        if p == clique.len() {
            out.push(colors.clone());
            return;
        }
        let mut m = inst.lists[clique[p]];
        while m != 0 {
            let c = m.trailing_zeros() as usize;
            m &= m - 1;
            if colors.iter().all(|&cc| h.has_edge(cc, c)) {
                colors.push(c);
                rec(h, inst, clique, colors, out);
                colors.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(h, inst, clique, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::target::{known, TargetGraph};

    fn sorted(mut v: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        v.sort();
        v
    }

    #[test]
    fn single_vertex_two_colors() {
        let h = known::reflexive_k2();
        let inst = ListInstance::full_lists(Graph::new(1), &h);
        let cols = enumerate_clique_colorings(&h, &inst, &[0]);
        assert_eq!(sorted(cols), vec![vec![0], vec![1]]);
    }

    #[test]
    fn mixed_target_k3() {
        // H: irreflexive i adjacent to reflexive r; K3 admits rrr, irr, rir, rri
        let mut h = TargetGraph::new(vec!["i".into(), "r".into()]).unwrap();
        h.add_edge(0, 1);
        h.add_edge(1, 1);
        let mut g = Graph::new(3);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(0, 2);
        let inst = ListInstance::full_lists(g, &h);
        let cols = sorted(enumerate_clique_colorings(&h, &inst, &[0, 1, 2]));
        assert_eq!(
            cols,
            vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0], vec![1, 1, 1]]
        );
    }

    #[test]
    fn matches_bruteforce_on_clique() {
        let h = known::c5_loops_12();
        let mut g = Graph::new(4);
        for i in 0..4 {
            for j in i + 1..4 {
                g.add_edge(i, j);
            }
        }
        let inst = ListInstance::new(g, vec![0b11111, 0b00011, 0b01111, 0b11010]);
        let a = sorted(enumerate_clique_colorings(&h, &inst, &[0, 1, 2, 3]));
        let b = sorted(clique_colorings_by_bruteforce(&h, &inst, &[0, 1, 2, 3]));
        assert_eq!(a, b);
    }

    #[test]
    fn count_bound_for_mrc_at_most_one() {
        // count <= (|C|+1)^{|I|} * (|R|+1) when mrc(H) <= 1
        let h = known::vertex_cover_h();
        assert_eq!(h.mrc(), 1);
        let mut g = Graph::new(3);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(0, 2);
        let inst = ListInstance::full_lists(g, &h);
        let cols = enumerate_clique_colorings(&h, &inst, &[0, 1, 2]);
        let (r, i) = h.reflexive_partition();
        let bound = (3usize + 1).pow(i.count_ones()) * (r.count_ones() as usize + 1);
        assert!(cols.len() <= bound);
    }
}
