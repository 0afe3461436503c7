//! Pipeline for fat, similarly-sized scenes: reduction of small-area
//! components to reflexive-clique-list instances (solved by 2-SAT when lists
//! have size at most 2), and an area-balanced line-separator recursion
//! otherwise.

use crate::geometry::{
    area, cell_cliques_of, intersection_graph, validate_fat_similarly_sized, GeoObject, Rat,
    Scene,
};
use crate::graph::Graph;
use crate::separators::{line_separator, LineSeparation, SeparatorError};
use crate::solver::{
    preprocess, solve_2sat, solve_bruteforce, solve_bruteforce_ctl, Answer, ListInstance,
    Preprocessed, SolveCtl, SolveResult, TimedOut,
};
use crate::target::{ColorSet, TargetGraph};
use thiserror::Error;

/// A ListInstance whose every list induces a reflexive clique of H.
#[derive(Clone, Debug)]
pub struct RcInstance(pub ListInstance);

/// Check the reflexive-clique-list property of every list.
pub fn is_rc_instance(h: &TargetGraph, inst: &ListInstance) -> bool {
    let r_mask = h.reflexive_mask();
    inst.lists.iter().all(|&list| {
        if list & !r_mask != 0 {
            return false;
        }
        let colors: Vec<usize> = (0..h.n()).filter(|&c| list >> c & 1 == 1).collect();
        colors
            .iter()
            .all(|&a| colors.iter().all(|&b| h.has_edge(a, b)))
    })
}

/// One branch of the reduction: an instance on the surviving vertices plus
/// the colors guessed for the deleted ones (input-local ids).
#[derive(Clone, Debug)]
pub struct RcBranch {
    pub inst: ListInstance,
    pub kept: Vec<usize>,
    pub forced: Vec<(usize, usize)>,
}

/// One per-cell guess: some vertices sent injectively to irreflexive colors,
/// the remainder confined to one maximal reflexive clique.
#[derive(Clone, Debug)]
struct CellChoice {
    guessed: Vec<(usize, usize)>,
    clique: ColorSet,
}

fn cell_choices(h: &TargetGraph, inst: &ListInstance, cell: &[usize]) -> Vec<CellChoice> {
    let (_, i_mask) = h.reflexive_partition();
    let i_colors: Vec<usize> = (0..h.n()).filter(|&c| i_mask >> c & 1 == 1).collect();
    let max_take = i_colors.len().min(cell.len());
    let cliques = h.maximal_reflexive_cliques();
    let mut out = Vec::new();

    let mut subset: Vec<usize> = Vec::new();
    fn rec(
        h: &TargetGraph,
        inst: &ListInstance,
        cell: &[usize],
        i_colors: &[usize],
        cliques: &[ColorSet],
        start: usize,
        left: usize,
        subset: &mut Vec<usize>,
        out: &mut Vec<CellChoice>,
    ) {
        // assign the current subset injectively, then pick a clique
        let mut assignment: Vec<(usize, usize)> = Vec::new();
        fn assign(
            h: &TargetGraph,
            inst: &ListInstance,
            cell: &[usize],
            i_colors: &[usize],
            cliques: &[ColorSet],
            subset: &[usize],
            idx: usize,
            assignment: &mut Vec<(usize, usize)>,
            out: &mut Vec<CellChoice>,
        ) {
            if idx == subset.len() {
                let remainder = cell.len() - subset.len();
                if remainder == 0 {
                    out.push(CellChoice {
                        guessed: assignment.clone(),
                        clique: 0,
                    });
                } else {
                    for &q in cliques {
                        out.push(CellChoice {
                            guessed: assignment.clone(),
                            clique: q,
                        });
                    }
                }
                return;
            }
            let p = subset[idx];
            let v = cell[p];
            for &c in i_colors {
                if inst.lists[v] >> c & 1 == 0 {
                    continue;
                }
                // injective into I(H); cell vertices are pairwise adjacent
                if assignment.iter().any(|&(_, cc)| cc == c || !h.has_edge(cc, c)) {
                    continue;
                }
                assignment.push((v, c));
                assign(
                    h, inst, cell, i_colors, cliques, subset, idx + 1, assignment, out,
                );
                assignment.pop();
            }
        }
        assign(
            h, inst, cell, i_colors, cliques, subset, 0, &mut assignment, out,
        );
        if left > 0 {
            for p in start..cell.len() {
                subset.push(p);
                rec(
                    h,
                    inst,
                    cell,
                    i_colors,
                    cliques,
                    p + 1,
                    left - 1,
                    subset,
                    out,
                );
                subset.pop();
            }
        }
    }
    rec(
        h,
        inst,
        cell,
        &i_colors,
        &cliques,
        0,
        max_take,
        &mut subset,
        &mut out,
    );
    out
}

/// Lazy stream over the equivalent family of reflexive-clique-list instances,
/// one branch per combination of per-cell guesses.
pub struct RcReduction<'a> {
    h: &'a TargetGraph,
    inst: &'a ListInstance,
    cells: Vec<Vec<usize>>,
    choices: Vec<Vec<CellChoice>>,
    idx: Vec<usize>,
    done: bool,
}

impl<'a> RcReduction<'a> {
    /// Number of choices for cell `i` (the per-cell branch factor).
    pub fn branch_counts(&self) -> Vec<usize> {
        self.choices.iter().map(Vec::len).collect()
    }
}

pub fn reduce_to_rc<'a>(
    h: &'a TargetGraph,
    inst: &'a ListInstance,
    cells: &[Vec<usize>],
) -> RcReduction<'a> {
    let choices: Vec<Vec<CellChoice>> = cells.iter().map(|c| cell_choices(h, inst, c)).collect();
    let done = choices.iter().any(Vec::is_empty);
    RcReduction {
        h,
        inst,
        cells: cells.to_vec(),
        idx: vec![0; choices.len()],
        choices,
        done,
    }
}

impl Iterator for RcReduction<'_> {
    type Item = RcBranch;

    fn next(&mut self) -> Option<RcBranch> {
        if self.done {
            return None;
        }
        let h = self.h;
        let inst = self.inst;
        let n = inst.n();

        let mut lists = inst.lists.clone();
        let mut guessed: Vec<(usize, usize)> = Vec::new();
        for (ci, cell) in self.cells.iter().enumerate() {
            let choice = &self.choices[ci][self.idx[ci]];
            for &(v, c) in &choice.guessed {
                guessed.push((v, c));
            }
            let taken: Vec<usize> = choice.guessed.iter().map(|&(v, _)| v).collect();
            for &v in cell {
                if !taken.contains(&v) {
                    lists[v] &= choice.clique;
                }
            }
        }
        guessed.sort_unstable();
        // propagate each guessed color into neighbor lists, then delete
        for &(v, c) in &guessed {
            lists[v] = 1 << c;
        }
        for &(v, c) in &guessed {
            for u in inst.graph.neighbors(v) {
                if guessed.binary_search_by_key(&u, |&(w, _)| w).is_err() {
                    lists[u] &= h.nbr_mask(c);
                }
            }
        }
        // guessed vertices adjacent to each other must be H-adjacent
        let mut consistent = true;
        for &(v, c) in &guessed {
            for u in inst.graph.neighbors(v) {
                if let Ok(pos) = guessed.binary_search_by_key(&u, |&(w, _)| w) {
                    if !h.has_edge(c, guessed[pos].1) {
                        consistent = false;
                    }
                }
            }
        }

        let kept: Vec<usize> = (0..n)
            .filter(|v| guessed.binary_search_by_key(v, |&(w, _)| w).is_err())
            .collect();
        let branch = if consistent {
            RcBranch {
                inst: ListInstance {
                    graph: inst.graph.induced(&kept),
                    lists: kept.iter().map(|&v| lists[v]).collect(),
                },
                kept,
                forced: guessed,
            }
        } else {
            // an internally contradictory guess: emit it as a trivially
            // unsatisfiable branch so the stream stays a disjunction
            RcBranch {
                inst: ListInstance {
                    graph: inst.graph.induced(&kept),
                    lists: vec![0; kept.len()],
                },
                kept,
                forced: guessed,
            }
        };

        // advance odometer
        let mut i = 0;
        loop {
            if i == self.choices.len() {
                self.done = true;
                break;
            }
            self.idx[i] += 1;
            if self.idx[i] < self.choices[i].len() {
                break;
            }
            self.idx[i] = 0;
            i += 1;
        }
        if self.choices.is_empty() {
            self.done = true;
        }
        Some(branch)
    }
}

/// Solve a reflexive-clique-list instance: 2-SAT when every list has size at
/// most 2, complete backtracking otherwise.
pub fn solve_rc(h: &TargetGraph, inst: &ListInstance) -> SolveResult {
    debug_assert!(is_rc_instance(h, inst));
    if inst.lists.iter().all(|l| l.count_ones() <= 2) {
        if inst.lists.iter().any(|&l| l == 0) {
            return SolveResult {
                answer: Answer::No,
                stats: Default::default(),
            };
        }
        solve_2sat(h, inst).expect("lists already checked")
    } else {
        solve_bruteforce(h, inst)
    }
}

#[derive(Clone, Debug)]
pub struct FatCfg {
    /// Area threshold coefficient as a fraction: RC path when
    /// area <= (num/den) * n^(2/3).
    pub c_area: (i64, i64),
    /// Outer-radius bound for the validator.
    pub r_max: Rat,
}

impl Default for FatCfg {
    fn default() -> Self {
        FatCfg {
            c_area: (3, 1),
            r_max: crate::geometry::rint(4),
        }
    }
}

#[derive(Debug, Error)]
pub enum FatError {
    #[error("scene has {scene} objects, instance has {inst} vertices")]
    SizeMismatch { scene: usize, inst: usize },
    #[error("declared instance graph differs from the scene intersection graph")]
    SceneMismatch,
    #[error("scene fails fat/similarly-sized validation")]
    NotFat,
    #[error("timed out")]
    TimedOut,
}

pub fn solve_fat(
    h: &TargetGraph,
    inst: &ListInstance,
    scene: &Scene,
    cfg: &FatCfg,
) -> Result<SolveResult, FatError> {
    let mut ctl = SolveCtl::unbounded();
    let answer = solve_fat_ctl(h, inst, scene, cfg, &mut ctl)?;
    Ok(SolveResult {
        answer,
        stats: ctl.stats,
    })
}

pub fn solve_fat_ctl(
    h: &TargetGraph,
    inst: &ListInstance,
    scene: &Scene,
    cfg: &FatCfg,
    ctl: &mut SolveCtl,
) -> Result<Answer, FatError> {
    if scene.len() != inst.n() {
        return Err(FatError::SizeMismatch {
            scene: scene.len(),
            inst: inst.n(),
        });
    }
    if intersection_graph(scene) != inst.graph {
        return Err(FatError::SceneMismatch);
    }
    if !validate_fat_similarly_sized(scene, &cfg.r_max).pass() {
        return Err(FatError::NotFat);
    }
    let n = inst.n();
    let mut witness = vec![usize::MAX; n];
    let objs: Vec<usize> = (0..n).collect();
    match fat_go(
        h,
        scene,
        &inst.graph,
        inst.lists.clone(),
        objs,
        &mut witness,
        0,
        ctl,
        cfg,
    ) {
        Err(TimedOut) => Err(FatError::TimedOut),
        Ok(true) => Ok(Answer::Yes(witness)),
        Ok(false) => Ok(Answer::No),
    }
}

#[allow(clippy::too_many_arguments)]
fn fat_go(
    h: &TargetGraph,
    scene: &Scene,
    full: &Graph,
    lists: Vec<ColorSet>, // root-sized
    objs: Vec<usize>,
    witness: &mut Vec<usize>,
    depth: usize,
    ctl: &mut SolveCtl,
    cfg: &FatCfg,
) -> Result<bool, TimedOut> {
    ctl.tick(depth)?;
    if objs.is_empty() {
        return Ok(true);
    }
    let comps = full.components_within(&objs);
    if comps.len() > 1 {
        for comp in comps {
            if !fat_go(
                h,
                scene,
                full,
                lists.clone(),
                comp,
                witness,
                depth + 1,
                ctl,
                cfg,
            )? {
                return Ok(false);
            }
        }
        return Ok(true);
    }

    let n = objs.len();
    let refs: Vec<&GeoObject> = objs.iter().map(|&i| &scene.objects[i]).collect();
    let comp_area = area(&refs).expect("nonempty");
    let lhs = (comp_area as i128 * cfg.c_area.1 as i128).pow(3);
    let rhs = (cfg.c_area.0 as i128).pow(3) * (n as i128).pow(2);

    if lhs <= rhs {
        return rc_path(h, scene, full, &lists, &objs, witness, ctl);
    }

    match line_separator(scene, &objs, cfg.c_area) {
        Ok(LineSeparation::Split {
            crossing,
            left,
            right,
            ..
        }) => {
            ctl.stats.separators_used += 1;
            let mut lists = lists;
            color_crossing(
                h, scene, full, &crossing, 0, &mut lists, &left, &right, witness, depth, ctl, cfg,
            )
        }
        Ok(LineSeparation::SmallArea) => rc_path(h, scene, full, &lists, &objs, witness, ctl),
        Err(SeparatorError::NoLine) => {
            // degenerate component: fall back to complete search
            let local = local_instance(full, &lists, &objs);
            match solve_bruteforce_ctl(h, &local, ctl)? {
                Answer::Yes(w) => {
                    for (i, c) in w.into_iter().enumerate() {
                        witness[objs[i]] = c;
                    }
                    Ok(true)
                }
                Answer::No => Ok(false),
            }
        }
        Err(_) => Ok(false),
    }
}

fn local_instance(full: &Graph, lists: &[ColorSet], objs: &[usize]) -> ListInstance {
    ListInstance {
        graph: full.induced(objs),
        lists: objs.iter().map(|&v| lists[v]).collect(),
    }
}

/// Small-area path: stream the reflexive-clique reduction over the component's
/// cell-cliques, first satisfiable branch wins.
fn rc_path(
    h: &TargetGraph,
    scene: &Scene,
    full: &Graph,
    lists: &[ColorSet],
    objs: &[usize],
    witness: &mut Vec<usize>,
    ctl: &mut SolveCtl,
) -> Result<bool, TimedOut> {
    let parts = match cell_cliques_of(scene, objs) {
        Ok(p) => p,
        Err(_) => return Ok(false),
    };
    let local = local_instance(full, lists, objs);
    let cells: Vec<Vec<usize>> = parts
        .iter()
        .map(|(_, part)| {
            part.iter()
                .map(|&root| objs.binary_search(&root).unwrap())
                .collect()
        })
        .collect();
    let stream = reduce_to_rc(h, &local, &cells);
    for branch in stream {
        ctl.tick(0)?;
        let res = solve_rc(h, &branch.inst);
        ctl.stats.branch_nodes += res.stats.branch_nodes;
        if let Answer::Yes(w) = res.answer {
            for &(lv, c) in &branch.forced {
                witness[objs[lv]] = c;
            }
            for (i, &lv) in branch.kept.iter().enumerate() {
                witness[objs[lv]] = w[i];
            }
            return Ok(true);
        }
    }
    Ok(false)
}

/// Exhaustively color the crossing set with propagation, then solve the two
/// sides independently.
#[allow(clippy::too_many_arguments)]
fn color_crossing(
    h: &TargetGraph,
    scene: &Scene,
    full: &Graph,
    s: &[usize],
    idx: usize,
    lists: &mut Vec<ColorSet>,
    left: &[usize],
    right: &[usize],
    witness: &mut Vec<usize>,
    depth: usize,
    ctl: &mut SolveCtl,
    cfg: &FatCfg,
) -> Result<bool, TimedOut> {
    ctl.tick(depth)?;
    if idx == s.len() {
        for side in [left, right] {
            if !fat_go(
                h,
                scene,
                full,
                lists.clone(),
                side.to_vec(),
                witness,
                depth + 1,
                ctl,
                cfg,
            )? {
                return Ok(false);
            }
        }
        for &v in s {
            witness[v] = lists[v].trailing_zeros() as usize;
        }
        return Ok(true);
    }
    let v = s[idx];
    let mut m = lists[v];
    while m != 0 {
        let c = m.trailing_zeros() as usize;
        m &= m - 1;
        let saved = lists.clone();
        lists[v] = 1 << c;
        let mut dead = false;
        for u in full.neighbors(v) {
            lists[u] &= h.nbr_mask(c);
            if lists[u] == 0 && (s.contains(&u) || left.contains(&u) || right.contains(&u)) {
                dead = true;
                break;
            }
        }
        if !dead
            && color_crossing(
                h, scene, full, s, idx + 1, lists, left, right, witness, depth + 1, ctl, cfg,
            )?
        {
            return Ok(true);
        }
        *lists = saved;
    }
    Ok(false)
}

/// Status-preserving preprocessing wrapper used by callers that want the
/// reduction without solving (mirrors the core preprocess contract).
pub fn preprocess_fat(h: &TargetGraph, inst: &ListInstance) -> Preprocessed {
    preprocess(h, inst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::parse_scene;
    use crate::solver::verify_homomorphism;
    use crate::target::{known, TargetGraph};

    fn disk_chain(n: usize) -> Scene {
        let mut text = String::new();
        for i in 0..n {
            text.push_str(&format!("disk {} 0 1 anchor {} 0\n", 2 * i, 2 * i));
        }
        parse_scene(&text).unwrap()
    }

    #[test]
    fn rc_checks() {
        let h = known::reflexive_c4();
        let g = Graph::new(2);
        // {1,2} is a reflexive edge of C4: an RC list
        assert!(is_rc_instance(
            &h,
            &ListInstance::new(g.clone(), vec![0b0011, 0b0001])
        ));
        // {1,3} spans a non-edge of C4
        assert!(!is_rc_instance(
            &h,
            &ListInstance::new(g.clone(), vec![0b0101, 0b0001])
        ));
        let h2 = known::vertex_cover_h();
        // any list containing the irreflexive vertex 1 fails
        assert!(!is_rc_instance(&h2, &ListInstance::new(g, vec![0b01, 0b10])));
    }

    #[test]
    fn reduction_on_single_cell() {
        // H: irreflexive i - reflexive r, one vertex with a full list
        let mut h = TargetGraph::new(vec!["i".into(), "r".into()]).unwrap();
        h.add_edge(0, 1);
        h.add_edge(1, 1);
        let inst = ListInstance::full_lists(Graph::new(1), &h);
        let branches: Vec<RcBranch> = reduce_to_rc(&h, &inst, &[vec![0]]).collect();
        assert_eq!(branches.len(), 2);
        // one branch removes the vertex (guessed i), one confines it to {r}
        let removed = branches.iter().filter(|b| b.kept.is_empty()).count();
        assert_eq!(removed, 1);
        let confined = branches
            .iter()
            .filter(|b| b.kept.len() == 1 && b.inst.lists[0] == 0b10)
            .count();
        assert_eq!(confined, 1);
    }

    #[test]
    fn fully_reflexive_has_no_removals() {
        let h = known::reflexive_c4();
        let mut g = Graph::new(2);
        g.add_edge(0, 1);
        let inst = ListInstance::full_lists(g, &h);
        let branches: Vec<RcBranch> = reduce_to_rc(&h, &inst, &[vec![0, 1]]).collect();
        assert!(branches.iter().all(|b| b.forced.is_empty()));
        // one branch per maximal reflexive clique
        assert_eq!(branches.len(), h.maximal_reflexive_cliques().len());
        for b in &branches {
            assert!(is_rc_instance(&h, &b.inst));
        }
    }

    #[test]
    fn fat_solver_matches_oracle_on_chain() {
        let h = known::c5_loops_12();
        let scene = disk_chain(8);
        let g = intersection_graph(&scene);
        let lists: Vec<u32> = (0..8).map(|v| if v % 2 == 0 { 0b00011 } else { 0b11111 }).collect();
        let inst = ListInstance::new(g, lists);
        let expect = solve_bruteforce(&h, &inst).answer.is_yes();
        let res = solve_fat(&h, &inst, &scene, &FatCfg::default()).unwrap();
        assert_eq!(res.answer.is_yes(), expect);
        if let Answer::Yes(w) = res.answer {
            assert!(verify_homomorphism(&h, &inst, &w));
        }
    }

    #[test]
    fn scene_mismatch_rejected() {
        let h = known::reflexive_k2();
        let scene = disk_chain(3);
        let inst = ListInstance::full_lists(Graph::new(3), &h); // missing edges
        assert!(matches!(
            solve_fat(&h, &inst, &scene, &FatCfg::default()),
            Err(FatError::SceneMismatch)
        ));
    }

    #[test]
    fn long_chain_uses_line_separator() {
        let h = known::reflexive_k2();
        let scene = disk_chain(60);
        let g = intersection_graph(&scene);
        let inst = ListInstance::full_lists(g, &h);
        let res = solve_fat(&h, &inst, &scene, &FatCfg::default()).unwrap();
        assert!(res.answer.is_yes());
        assert!(res.stats.separators_used >= 1, "expected separator usage");
    }
}
