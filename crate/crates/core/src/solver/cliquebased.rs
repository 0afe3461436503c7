//! Divide-&-conquer over clique-based separators: guess the coloring of each
//! separator clique (streamed Cartesian product), update neighbor lists, and
//! recurse into the components of the rest.

use super::{
    enumerate_clique_colorings, solve_bruteforce_ctl, Answer, ListInstance, SolveCtl, SolveResult,
    TimedOut,
};
use crate::graph::Graph;
use crate::separators::CliqueSeparator;
use crate::target::{ColorSet, TargetGraph};

/// Produces a clique separator for the given subgraph; the second argument
/// maps its vertices back to the root instance (scene object indices for
/// scene-backed providers). `None` triggers the brute-force fallback.
pub type SepProvider<'a> = dyn FnMut(&Graph, &[usize]) -> Option<CliqueSeparator> + 'a;

#[derive(Clone, Copy, Debug)]
pub struct CliqueBasedCfg {
    pub base_n: usize,
    pub delta: (u64, u64),
}

impl Default for CliqueBasedCfg {
    fn default() -> Self {
        CliqueBasedCfg {
            base_n: 12,
            delta: (2, 3),
        }
    }
}

pub fn solve_cliquebased(
    h: &TargetGraph,
    inst: &ListInstance,
    provider: &mut SepProvider,
    cfg: &CliqueBasedCfg,
) -> SolveResult {
    let mut ctl = SolveCtl::unbounded();
    let answer = solve_cliquebased_ctl(h, inst, provider, cfg, &mut ctl).expect("no deadline");
    SolveResult {
        answer,
        stats: ctl.stats,
    }
}

pub fn solve_cliquebased_ctl(
    h: &TargetGraph,
    inst: &ListInstance,
    provider: &mut SepProvider,
    cfg: &CliqueBasedCfg,
    ctl: &mut SolveCtl,
) -> Result<Answer, TimedOut> {
    let n = inst.n();
    let mut witness = vec![usize::MAX; n];
    let orig: Vec<usize> = (0..n).collect();
    if go(
        h,
        inst.graph.clone(),
        inst.lists.clone(),
        orig,
        &mut witness,
        0,
        ctl,
        cfg,
        provider,
    )? {
        Ok(Answer::Yes(witness))
    } else {
        Ok(Answer::No)
    }
}

#[allow(clippy::too_many_arguments)]
fn go(
    h: &TargetGraph,
    graph: Graph,
    lists: Vec<ColorSet>,
    orig: Vec<usize>,
    witness: &mut Vec<usize>,
    depth: usize,
    ctl: &mut SolveCtl,
    cfg: &CliqueBasedCfg,
    provider: &mut SepProvider,
) -> Result<bool, TimedOut> {
    ctl.tick(depth)?;
    let inst = ListInstance { graph, lists };
    let n = inst.n();
    if n == 0 {
        return Ok(true);
    }

    // disconnected instances are conjunctions over components
    let comps = inst.graph.components();
    if comps.len() > 1 {
        for comp in comps {
            let sub = inst.induced(&comp);
            let sub_orig: Vec<usize> = comp.iter().map(|&v| orig[v]).collect();
            if !go(
                h, sub.graph, sub.lists, sub_orig, witness, depth + 1, ctl, cfg, provider,
            )? {
                return Ok(false);
            }
        }
        return Ok(true);
    }

    if n <= cfg.base_n {
        return base_case(h, &inst, &orig, witness, ctl);
    }

    let sep = provider(&inst.graph, &orig);
    let sep = match sep {
        Some(s) if !s.union().is_empty() && s.verify(&inst.graph) => s,
        _ => return base_case(h, &inst, &orig, witness, ctl),
    };
    ctl.stats.separators_used += 1;

    // per-clique coloring candidates
    let per_clique: Vec<Vec<Vec<usize>>> = sep
        .cliques
        .iter()
        .map(|c| enumerate_clique_colorings(h, &inst, c))
        .collect();
    if per_clique.iter().any(|v| v.is_empty()) {
        return Ok(false);
    }
    let s_union = sep.union();

    // odometer over the Cartesian product, streamed
    let k = per_clique.len();
    let mut idx = vec![0usize; k];
    loop {
        ctl.tick(depth + 1)?;
        // materialize this combined coloring
        let mut color_of: std::collections::BTreeMap<usize, usize> = Default::default();
        for (ci, clique) in sep.cliques.iter().enumerate() {
            for (pos, &v) in clique.iter().enumerate() {
                color_of.insert(v, per_clique[ci][idx[ci]][pos]);
            }
        }
        if separator_consistent(h, &inst.graph, &color_of) {
            // propagate into the rest and recurse per component
            let mut lists = inst.lists.clone();
            let mut dead = false;
            for (&v, &c) in &color_of {
                lists[v] = 1 << c;
                for u in inst.graph.neighbors(v) {
                    if !color_of.contains_key(&u) {
                        lists[u] &= h.nbr_mask(c);
                        if lists[u] == 0 {
                            dead = true;
                        }
                    }
                }
            }
            if !dead {
                let mut all_ok = true;
                for comp in inst.graph.components_without(&s_union) {
                    let sub_graph = inst.graph.induced(&comp);
                    let sub_lists: Vec<ColorSet> = comp.iter().map(|&v| lists[v]).collect();
                    let sub_orig: Vec<usize> = comp.iter().map(|&v| orig[v]).collect();
                    if !go(
                        h, sub_graph, sub_lists, sub_orig, witness, depth + 1, ctl, cfg, provider,
                    )? {
                        all_ok = false;
                        break;
                    }
                }
                if all_ok {
                    for (&v, &c) in &color_of {
                        witness[orig[v]] = c;
                    }
                    return Ok(true);
                }
            }
        }
        // advance odometer
        let mut i = 0;
        loop {
            if i == k {
                return Ok(false);
            }
            idx[i] += 1;
            if idx[i] < per_clique[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// Instance edges between separator vertices of different cliques must map to
/// H-edges (within-clique pairs are valid by construction of the enumeration).
fn separator_consistent(
    h: &TargetGraph,
    graph: &Graph,
    color_of: &std::collections::BTreeMap<usize, usize>,
) -> bool {
    for (&u, &cu) in color_of {
        for v in graph.neighbors(u) {
            if v > u {
                if let Some(&cv) = color_of.get(&v) {
                    if !h.has_edge(cu, cv) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn base_case(
    h: &TargetGraph,
    inst: &ListInstance,
    orig: &[usize],
    witness: &mut Vec<usize>,
    ctl: &mut SolveCtl,
) -> Result<bool, TimedOut> {
    match solve_bruteforce_ctl(h, inst, ctl)? {
        Answer::Yes(w) => {
            for (local, c) in w.into_iter().enumerate() {
                witness[orig[local]] = c;
            }
            Ok(true)
        }
        Answer::No => Ok(false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::separators::clique_based_separator;
    use crate::solver::{solve_bruteforce, verify_homomorphism};
    use crate::target::known;

    #[test]
    fn disconnected_conjunction() {
        let h = known::irreflexive_clique(2);
        let mut g = Graph::new(6);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(0, 2); // triangle: NO into K2
        g.add_edge(3, 4);
        g.add_edge(4, 5);
        let inst = ListInstance::full_lists(g, &h);
        let mut provider =
            |g: &Graph, _orig: &[usize]| clique_based_separator(None, g, (2, 3));
        let res = solve_cliquebased(&h, &inst, &mut provider, &CliqueBasedCfg::default());
        assert_eq!(res.answer, Answer::No);
    }

    #[test]
    fn matches_oracle_on_path_instances() {
        let h = known::c5_loops_12();
        let cfg = CliqueBasedCfg {
            base_n: 3,
            delta: (2, 3),
        };
        for n in [6usize, 9, 12] {
            let mut g = Graph::new(n);
            for i in 0..n - 1 {
                g.add_edge(i, i + 1);
            }
            let lists: Vec<u32> = (0..n).map(|v| if v % 2 == 0 { 0b11100 } else { 0b11111 }).collect();
            let inst = ListInstance::new(g, lists);
            let expect = solve_bruteforce(&h, &inst).answer.is_yes();
            let mut provider =
                |g: &Graph, _orig: &[usize]| clique_based_separator(None, g, (2, 3));
            let res = solve_cliquebased(&h, &inst, &mut provider, &cfg);
            assert_eq!(res.answer.is_yes(), expect);
            if let Answer::Yes(w) = res.answer {
                assert!(verify_homomorphism(&h, &inst, &w));
            }
        }
    }
}
