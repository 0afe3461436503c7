//! Min-cost homomorphism and weighted homomorphism: exact rational cost
//! tables, the list-to-cost reduction, clique-separator divide-&-conquer
//! optimization with a branch-&-bound base case, problem encoders for
//! vertex cover and max cut, and the stacked-triangle vertex-cover scene
//! generator over the reflexive C4.

use crate::geometry::{
    intersection_graph, orient, Point, Rat, Scene, Shape, GeoObject,
};
use crate::graph::Graph;
use crate::separators::CliqueSeparator;
use crate::solver::{ListInstance, SolveCtl, TimedOut};
use crate::target::{known, ColorSet, TargetGraph};
use num_traits::Zero;
use std::collections::BTreeMap;

pub type EdgeCosts = BTreeMap<(usize, usize), BTreeMap<(usize, usize), Rat>>;

/// Vertex (and optionally edge) cost tables plus a budget, all exact.
#[derive(Clone, Debug)]
pub struct CostTables {
    /// `vcost[v][a]`: cost of coloring vertex v with color a. Total.
    pub vcost: Vec<Vec<Rat>>,
    /// Optional edge costs, keyed by the normalized G-edge (u < v) and the
    /// normalized color pair (cost(uv, ab) = cost(vu, ba)).
    pub ecost: Option<EdgeCosts>,
    pub budget: Rat,
}

impl CostTables {
    pub fn zero(n: usize, h: &TargetGraph) -> Self {
        CostTables {
            vcost: vec![vec![Rat::zero(); h.n()]; n],
            ecost: None,
            budget: Rat::zero(),
        }
    }

    pub fn ecost_of(&self, u: usize, v: usize, a: usize, b: usize) -> Rat {
        let Some(e) = &self.ecost else {
            return Rat::zero();
        };
        let key = if u < v { (u, v) } else { (v, u) };
        let pat = if a < b { (a, b) } else { (b, a) };
        e.get(&key)
            .and_then(|m| m.get(&pat))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Total cost of a full assignment.
    pub fn cost_of(&self, g: &Graph, f: &[usize]) -> Rat {
        let mut c = Rat::zero();
        for (v, &a) in f.iter().enumerate() {
            c += self.vcost[v][a].clone();
        }
        for (u, v) in g.edges() {
            c += self.ecost_of(u, v, f[u], f[v]);
        }
        c
    }
}

/// The list-to-cost reduction: w(v,a) = 0 if a ∈ L(v) and 1 otherwise, with
/// budget 0. The budget-0 decision equals the LHom answer.
pub fn lists_to_costs(h: &TargetGraph, inst: &ListInstance) -> CostTables {
    let vcost = inst
        .lists
        .iter()
        .map(|&list| {
            (0..h.n())
                .map(|a| {
                    if list >> a & 1 == 1 {
                        Rat::zero()
                    } else {
                        Rat::from_integer(1.into())
                    }
                })
                .collect()
        })
        .collect();
    CostTables {
        vcost,
        ecost: None,
        budget: Rat::zero(),
    }
}

/// Move the costs of edges incident to colored vertices onto the vertex costs
/// of the surviving endpoints. Returns the surviving vertices (ascending),
/// their updated tables, and the scalar offset contributed by the colored
/// part (its vertex costs plus the edge costs inside it).
pub fn transfer_edge_costs(
    g: &Graph,
    costs: &CostTables,
    colored: &[(usize, usize)],
) -> (Vec<usize>, CostTables, Rat) {
    let color_of: BTreeMap<usize, usize> = colored.iter().copied().collect();
    let kept: Vec<usize> = (0..g.n()).filter(|v| !color_of.contains_key(v)).collect();
    let mut offset = Rat::zero();
    for (&v, &a) in &color_of {
        offset += costs.vcost[v][a].clone();
    }
    for (u, v) in g.edges() {
        if let (Some(&a), Some(&b)) = (color_of.get(&u), color_of.get(&v)) {
            offset += costs.ecost_of(u, v, a, b);
        }
    }
    let mut vcost: Vec<Vec<Rat>> = kept.iter().map(|&v| costs.vcost[v].clone()).collect();
    let ncolors = costs.vcost.first().map_or(0, Vec::len);
    for (i, &v) in kept.iter().enumerate() {
        for u in g.neighbors(v) {
            if let Some(&a) = color_of.get(&u) {
                for b in 0..ncolors {
                    let add = costs.ecost_of(u, v, a, b);
                    vcost[i][b] += add;
                }
            }
        }
    }
    let ecost = costs.ecost.as_ref().map(|e| {
        let mut out: EdgeCosts = BTreeMap::new();
        for (i, &v) in kept.iter().enumerate() {
            for (j, &w) in kept.iter().enumerate().skip(i + 1) {
                if g.has_edge(v, w) {
                    let key = if v < w { (v, w) } else { (w, v) };
                    if let Some(m) = e.get(&key) {
                        out.insert((i, j), m.clone());
                    }
                }
            }
        }
        out
    });
    (
        kept,
        CostTables {
            vcost,
            ecost,
            budget: costs.budget.clone(),
        },
        offset,
    )
}

#[derive(Clone, Copy, Debug)]
pub struct McCfg {
    pub base_n: usize,
    pub delta: (u64, u64),
}

impl Default for McCfg {
    fn default() -> Self {
        McCfg {
            base_n: 12,
            delta: (2, 3),
        }
    }
}

pub type McSepProvider<'a> = dyn FnMut(&Graph, &[usize]) -> Option<CliqueSeparator> + 'a;

/// Exact minimum of Σ vcost(v, f(v)) over homomorphisms f : G -> H
/// (`None` when no homomorphism exists), with a witness.
/// `costs.ecost` must be absent.
pub fn solve_mincost(
    h: &TargetGraph,
    g: &Graph,
    costs: &CostTables,
    provider: &mut McSepProvider,
    cfg: &McCfg,
) -> Option<(Rat, Vec<usize>)> {
    assert!(costs.ecost.is_none(), "solve_mincost takes vertex costs only");
    solve_weighted_impl(h, g, costs, None, provider, cfg)
}

/// Exact minimum of Σ vcost + Σ ecost over homomorphisms, with a witness.
pub fn solve_whom(
    h: &TargetGraph,
    g: &Graph,
    costs: &CostTables,
    provider: &mut McSepProvider,
    cfg: &McCfg,
) -> Option<(Rat, Vec<usize>)> {
    solve_weighted_impl(h, g, costs, costs.ecost.as_ref(), provider, cfg)
}

/// Budget decision with color pruning: a color whose vertex cost alone
/// exceeds the budget cannot appear in a within-budget homomorphism.
pub fn solve_decision(
    h: &TargetGraph,
    g: &Graph,
    costs: &CostTables,
    provider: &mut McSepProvider,
    cfg: &McCfg,
) -> (bool, Option<(Rat, Vec<usize>)>) {
    let mut pruned = costs.clone();
    let big = &costs.budget + Rat::from_integer(1.into());
    for v in 0..g.n() {
        for a in 0..pruned.vcost[v].len() {
            if pruned.vcost[v][a] > costs.budget {
                pruned.vcost[v][a] = big.clone();
            }
        }
    }
    let lists: Vec<ColorSet> = (0..g.n())
        .map(|v| {
            let mut m = 0u32;
            for a in 0..pruned.vcost[v].len() {
                if pruned.vcost[v][a] <= costs.budget {
                    m |= 1 << a;
                }
            }
            m
        })
        .collect();
    let res = weighted_go(
        h,
        costs.ecost.as_ref(),
        g.clone(),
        lists,
        pruned.vcost.clone(),
        (0..g.n()).collect(),
        provider,
        cfg,
        &mut SolveCtl::unbounded(),
    )
    .expect("no deadline");
    match res {
        Some((min, w)) if min <= costs.budget => (true, Some((min, w))),
        other => (false, other),
    }
}

fn solve_weighted_impl(
    h: &TargetGraph,
    g: &Graph,
    costs: &CostTables,
    ecost: Option<&EdgeCosts>,
    provider: &mut McSepProvider,
    cfg: &McCfg,
) -> Option<(Rat, Vec<usize>)> {
    let lists = vec![h.full_mask(); g.n()];
    weighted_go(
        h,
        ecost,
        g.clone(),
        lists,
        costs.vcost.clone(),
        (0..g.n()).collect(),
        provider,
        cfg,
        &mut SolveCtl::unbounded(),
    )
    .expect("no deadline")
}

/// Recursive optimizer. `orig` maps local vertices to root ids (edge costs are
/// keyed by root ids); `vcost` is local (it absorbs transferred edge costs).
#[allow(clippy::too_many_arguments)]
fn weighted_go(
    h: &TargetGraph,
    ecost: Option<&EdgeCosts>,
    graph: Graph,
    lists: Vec<ColorSet>,
    vcost: Vec<Vec<Rat>>,
    orig: Vec<usize>,
    provider: &mut McSepProvider,
    cfg: &McCfg,
    ctl: &mut SolveCtl,
) -> Result<Option<(Rat, Vec<usize>)>, TimedOut> {
    ctl.tick(0)?;
    let n = graph.n();
    if n == 0 {
        return Ok(Some((Rat::zero(), Vec::new())));
    }

    let comps = graph.components();
    if comps.len() > 1 {
        let mut total = Rat::zero();
        let mut witness = vec![usize::MAX; n];
        for comp in comps {
            let sub_lists: Vec<ColorSet> = comp.iter().map(|&v| lists[v]).collect();
            let sub_vcost: Vec<Vec<Rat>> = comp.iter().map(|&v| vcost[v].clone()).collect();
            let sub_orig: Vec<usize> = comp.iter().map(|&v| orig[v]).collect();
            match weighted_go(
                h,
                ecost,
                graph.induced(&comp),
                sub_lists,
                sub_vcost,
                sub_orig,
                provider,
                cfg,
                ctl,
            )? {
                None => return Ok(None),
                Some((c, w)) => {
                    total += c;
                    for (i, &v) in comp.iter().enumerate() {
                        witness[v] = w[i];
                    }
                }
            }
        }
        return Ok(Some((total, witness)));
    }

    if n <= cfg.base_n {
        return Ok(branch_and_bound(h, ecost, &graph, &lists, &vcost, &orig));
    }

    let sep = provider(&graph, &orig);
    let sep = match sep {
        Some(s) if !s.union().is_empty() && s.verify(&graph) => s,
        _ => return Ok(branch_and_bound(h, ecost, &graph, &lists, &vcost, &orig)),
    };
    ctl.stats.separators_used += 1;
    let s_union = sep.union();

    let mut best: Option<(Rat, Vec<usize>)> = None;
    let mut assignment: Vec<(usize, usize)> = Vec::new();
    color_sep_min(
        h, ecost, &graph, &lists, &vcost, &orig, &s_union, 0, &mut assignment, provider, cfg, ctl,
        &mut best,
    )?;
    Ok(best)
}

/// Enumerate separator colorings; for each, transfer boundary edge costs and
/// optimize the components independently.
#[allow(clippy::too_many_arguments)]
fn color_sep_min(
    h: &TargetGraph,
    ecost: Option<&EdgeCosts>,
    graph: &Graph,
    lists: &[ColorSet],
    vcost: &[Vec<Rat>],
    orig: &[usize],
    s: &[usize],
    idx: usize,
    assignment: &mut Vec<(usize, usize)>,
    provider: &mut McSepProvider,
    cfg: &McCfg,
    ctl: &mut SolveCtl,
    best: &mut Option<(Rat, Vec<usize>)>,
) -> Result<(), TimedOut> {
    ctl.tick(idx)?;
    if idx == s.len() {
        let color_of: BTreeMap<usize, usize> = assignment.iter().copied().collect();
        // separator cost: vertex costs plus edge costs inside the separator
        let mut sep_cost = Rat::zero();
        for &(v, c) in assignment.iter() {
            sep_cost += vcost[v][c].clone();
        }
        for (i, &(u, cu)) in assignment.iter().enumerate() {
            for &(v, cv) in &assignment[i + 1..] {
                if graph.has_edge(u, v) {
                    if !h.has_edge(cu, cv) {
                        return Ok(());
                    }
                    if let Some(_e) = ecost {
                        sep_cost += lookup_ecost(ecost, orig[u], orig[v], cu, cv);
                    }
                }
            }
        }
        if let Some((b, _)) = best {
            if sep_cost >= *b {
                // every remaining cost is nonnegative
                let mut lower = sep_cost.clone();
                for v in 0..graph.n() {
                    if !color_of.contains_key(&v) {
                        if let Some(m) = min_cost_in_list(&vcost[v], lists[v]) {
                            lower += m;
                        }
                    }
                }
                if lower >= *b {
                    return Ok(());
                }
            }
        }
        // restrict lists of neighbors, transfer boundary edge costs
        let mut lists2 = lists.to_vec();
        let mut vcost2 = vcost.to_vec();
        let mut dead = false;
        for &(v, c) in assignment.iter() {
            for u in graph.neighbors(v) {
                if color_of.contains_key(&u) {
                    continue;
                }
                lists2[u] &= h.nbr_mask(c);
                if lists2[u] == 0 {
                    dead = true;
                }
                if ecost.is_some() {
                    for b in 0..h.n() {
                        let add = lookup_ecost(ecost, orig[v], orig[u], c, b);
                        vcost2[u][b] += add;
                    }
                }
            }
        }
        if dead {
            return Ok(());
        }
        let mut total = sep_cost;
        let mut witness = vec![usize::MAX; graph.n()];
        for &(v, c) in assignment.iter() {
            witness[v] = c;
        }
        for comp in graph.components_without(s) {
            let sub_lists: Vec<ColorSet> = comp.iter().map(|&v| lists2[v]).collect();
            let sub_vcost: Vec<Vec<Rat>> = comp.iter().map(|&v| vcost2[v].clone()).collect();
            let sub_orig: Vec<usize> = comp.iter().map(|&v| orig[v]).collect();
            match weighted_go(
                h,
                ecost,
                graph.induced(&comp),
                sub_lists,
                sub_vcost,
                sub_orig,
                provider,
                cfg,
                ctl,
            )? {
                None => return Ok(()),
                Some((c, w)) => {
                    total += c;
                    for (i, &v) in comp.iter().enumerate() {
                        witness[v] = w[i];
                    }
                }
            }
        }
        let better = match best {
            None => true,
            Some((b, bw)) => total < *b || (total == *b && witness < *bw),
        };
        if better {
            *best = Some((total, witness));
        }
        return Ok(());
    }
    let v = s[idx];
    let mut m = lists[v];
    while m != 0 {
        let c = m.trailing_zeros() as usize;
        m &= m - 1;
        let consistent = assignment
            .iter()
            .all(|&(u, cu)| !graph.has_edge(u, v) || h.has_edge(cu, c));
        if consistent {
            assignment.push((v, c));
            color_sep_min(
                h, ecost, graph, lists, vcost, orig, s, idx + 1, assignment, provider, cfg, ctl,
                best,
            )?;
            assignment.pop();
        }
    }
    Ok(())
}

fn lookup_ecost(ecost: Option<&EdgeCosts>, u: usize, v: usize, a: usize, b: usize) -> Rat {
    let Some(e) = ecost else { return Rat::zero() };
    let key = if u < v { (u, v) } else { (v, u) };
    let pat = if a < b { (a, b) } else { (b, a) };
    e.get(&key)
        .and_then(|m| m.get(&pat))
        .cloned()
        .unwrap_or_else(Rat::zero)
}

fn min_cost_in_list(row: &[Rat], list: ColorSet) -> Option<Rat> {
    let mut best: Option<Rat> = None;
    let mut m = list;
    while m != 0 {
        let a = m.trailing_zeros() as usize;
        m &= m - 1;
        if best.as_ref().map_or(true, |b| &row[a] < b) {
            best = Some(row[a].clone());
        }
    }
    best
}

/// Exhaustive minimum on a small graph, pruned by the admissible bound
/// Σ_v min_a vcost(v, a) over the unassigned suffix.
fn branch_and_bound(
    h: &TargetGraph,
    ecost: Option<&EdgeCosts>,
    graph: &Graph,
    lists: &[ColorSet],
    vcost: &[Vec<Rat>],
    orig: &[usize],
) -> Option<(Rat, Vec<usize>)> {
    let n = graph.n();
    let mut suffix_min: Vec<Rat> = vec![Rat::zero(); n + 1];
    for v in (0..n).rev() {
        let m = min_cost_in_list(&vcost[v], lists[v])?;
        suffix_min[v] = suffix_min[v + 1].clone() + m;
    }
    let mut best: Option<(Rat, Vec<usize>)> = None;
    let mut colors: Vec<usize> = Vec::with_capacity(n);

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        h: &TargetGraph,
        ecost: Option<&EdgeCosts>,
        graph: &Graph,
        lists: &[ColorSet],
        vcost: &[Vec<Rat>],
        orig: &[usize],
        suffix_min: &[Rat],
        colors: &mut Vec<usize>,
        cost: Rat,
        best: &mut Option<(Rat, Vec<usize>)>,
    ) {
        let v = colors.len();
        if let Some((b, _)) = best {
            if &(cost.clone() + suffix_min[v].clone()) >= &*b {
                return;
            }
        }
        if v == graph.n() {
            *best = Some((cost, colors.clone()));
            return;
        }
        let mut m = lists[v];
        while m != 0 {
            let c = m.trailing_zeros() as usize;
            m &= m - 1;
            let ok = graph
                .neighbors(v)
                .filter(|&u| u < v)
                .all(|u| h.has_edge(colors[u], c));
            if !ok {
                continue;
            }
            let mut step = cost.clone() + vcost[v][c].clone();
            if ecost.is_some() {
                for u in graph.neighbors(v).filter(|&u| u < v) {
                    step += lookup_ecost(ecost, orig[u], orig[v], colors[u], c);
                }
            }
            colors.push(c);
            dfs(
                h, ecost, graph, lists, vcost, orig, suffix_min, colors, step, best,
            );
            colors.pop();
        }
    }
    dfs(
        h,
        ecost,
        graph,
        lists,
        vcost,
        orig,
        &suffix_min,
        &mut colors,
        Rat::zero(),
        &mut best,
    );
    best
}

/// Vertex-cover encoder: homomorphisms to `H_vc` are exactly the indicator
/// maps of independent sets (color "1" is loopless), so with w(v,"2") = 1 the
/// minimum cost is the minimum vertex cover.
pub fn encode_vertex_cover(g: &Graph) -> (TargetGraph, CostTables) {
    let h = known::vertex_cover_h();
    let two = h.index_of("2").unwrap();
    let mut costs = CostTables::zero(g.n(), &h);
    for v in 0..g.n() {
        costs.vcost[v][two] = Rat::from_integer(1.into());
    }
    (h, costs)
}

/// Max-cut encoder over the reflexive K2: w(e,12) = 0, w(e,11) = w(e,22) = the
/// edge weight; the minimum WHom cost is total weight minus the max cut.
pub fn encode_max_cut(g: &Graph, weights: &[Rat]) -> (TargetGraph, CostTables) {
    let h = known::reflexive_k2();
    let edges = g.edges();
    assert_eq!(edges.len(), weights.len());
    let mut ecost: EdgeCosts = BTreeMap::new();
    for ((u, v), w) in edges.into_iter().zip(weights) {
        let mut m = BTreeMap::new();
        m.insert((0, 0), w.clone());
        m.insert((1, 1), w.clone());
        m.insert((0, 1), Rat::zero());
        ecost.insert((u, v), m);
    }
    let mut costs = CostTables::zero(g.n(), &h);
    costs.ecost = Some(ecost);
    (h, costs)
}

/// Output of the stacked-triangle vertex-cover construction.
#[derive(Clone, Debug)]
pub struct VcTriangleInstance {
    pub scene: Scene,
    pub h: TargetGraph,
    pub graph: Graph,
    pub costs: CostTables,
    /// The lists emulated through surrogate costs, kept for inspection.
    pub lists: Vec<ColorSet>,
    /// Per input vertex: the indices of its interacting triangles (x, y).
    pub specials: Vec<(usize, usize)>,
}

/// The abstract vertex gadget: a 4-chain x - m1 - m2 - y over the reflexive
/// C4 whose only list homomorphisms are (1,4,1,4) and (2,3,2,3).
pub fn vc_vertex_gadget() -> crate::target::Gadget {
    let mut g = Graph::new(4);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    crate::target::Gadget {
        graph: g,
        lists: vec![0b0011, 0b1100, 0b0011, 0b1100],
        interface: vec![0, 3],
    }
}

/// Build the triangle scene for Min Vertex Cover on `g` with budget `k`:
/// one 4-triangle gadget per vertex (two homomorphisms, selected/unselected),
/// one strip triangle per edge with list {2,3} touching the x triangle of one
/// endpoint and the y triangle of the other, selection cost 1 on x, list
/// constraints emulated by costs of budget + 1.
pub fn gen_mchom_vc_triangles(g: &Graph, k: &Rat) -> VcTriangleInstance {
    let h = known::reflexive_c4();
    let n = g.n();
    let edges = g.edges();
    let m = edges.len();

    // colors by index: 0="1", 1="2", 2="3", 3="4"
    let list_12: ColorSet = 0b0011;
    let list_34: ColorSet = 0b1100;
    let list_23: ColorSet = 0b0110;

    // zone geometry: z-strip between x = ±8, gadget chains routed through
    // contact corners on the lines x = ±8, y = 16, x = 0 (north)
    let den_n = (n as i64) + 1;
    let den_m = (m as i64) + 1;
    let contact_y = |kk: usize| Rat::new((8 * (kk as i64 + 1)).into(), den_n.into());
    let micro = |kk: usize| Rat::new((kk as i64 + 1).into(), den_n.into());

    let mut objects: Vec<GeoObject> = Vec::new();
    let mut lists: Vec<ColorSet> = Vec::new();
    let mut specials: Vec<(usize, usize)> = Vec::new();
    let mut structural: Vec<(usize, usize)> = Vec::new();

    let tri = |a: Point, b: Point, c: Point| {
        let shape = if orient(&a, &b, &c).is_zero() {
            panic!("degenerate gadget triangle")
        } else {
            Shape::Triangle { a, b, c }
        };
        let anchor = centroid(&shape);
        GeoObject {
            shape,
            anchor: Some(anchor),
        }
    };

    for v in 0..n {
        let ya = contact_y(v); // z-contact height on both strips
        let mu = micro(v);
        // x_v: west of x=-8, south of y=16
        let x_idx = objects.len();
        objects.push(tri(
            Point::new(crate::geometry::rint(-8), ya.clone()),
            Point::new(crate::geometry::rint(-10) - &mu, crate::geometry::rint(16)),
            Point::new(crate::geometry::rint(-24), crate::geometry::rint(-2)),
        ));
        lists.push(list_12);
        // m1_v: north-west quadrant
        let m1_idx = objects.len();
        objects.push(tri(
            Point::new(crate::geometry::rint(-10) - &mu, crate::geometry::rint(16)),
            Point::new(crate::geometry::rint(0), crate::geometry::rint(20) + &mu),
            Point::new(crate::geometry::rint(-16), crate::geometry::rint(32)),
        ));
        lists.push(list_34);
        // m2_v: north-east quadrant
        let m2_idx = objects.len();
        objects.push(tri(
            Point::new(crate::geometry::rint(0), crate::geometry::rint(20) + &mu),
            Point::new(crate::geometry::rint(10) + &mu, crate::geometry::rint(16)),
            Point::new(crate::geometry::rint(16), crate::geometry::rint(32)),
        ));
        lists.push(list_12);
        // y_v: east of x=8, south of y=16
        let y_idx = objects.len();
        objects.push(tri(
            Point::new(crate::geometry::rint(10) + &mu, crate::geometry::rint(16)),
            Point::new(crate::geometry::rint(8), ya),
            Point::new(crate::geometry::rint(24), crate::geometry::rint(-2)),
        ));
        lists.push(list_34);
        specials.push((x_idx, y_idx));
        structural.push((x_idx, m1_idx));
        structural.push((m1_idx, m2_idx));
        structural.push((m2_idx, y_idx));
    }

    for (e, &(u, v)) in edges.iter().enumerate() {
        // z touches x_u on the west strip line and y_v on the east one
        let (x_u, _) = specials[u];
        let (_, y_v) = specials[v];
        let south = Rat::new((-12 - e as i64).into(), 1.into())
            - Rat::new((e as i64 + 1).into(), den_m.into());
        let z_idx = objects.len();
        objects.push(tri(
            Point::new(crate::geometry::rint(-8), contact_y(u)),
            Point::new(crate::geometry::rint(8), contact_y(v)),
            Point::new(crate::geometry::rint(0), south),
        ));
        lists.push(list_23);
        structural.push((z_idx, x_u));
        structural.push((z_idx, y_v));
    }

    let scene = Scene::new(objects);
    let graph = intersection_graph(&scene);

    // every structural contact must exist, and every surplus edge must be
    // free (all list color pairs adjacent in H)
    for &(a, b) in &structural {
        assert!(graph.has_edge(a, b), "missing designed contact {a}-{b}");
    }
    for (a, b) in graph.edges() {
        if structural.contains(&(a, b)) || structural.contains(&(b, a)) {
            continue;
        }
        assert!(
            free_pair(&h, lists[a], lists[b]),
            "unintended constraining contact {a}-{b}"
        );
    }

    // costs: selecting a vertex (x colored "2") costs 1; lists are emulated
    // with a surrogate cost of budget + 1
    let mut costs = CostTables::zero(scene.len(), &h);
    let surrogate = k.clone() + Rat::from_integer(1.into());
    for (v, &list) in lists.iter().enumerate() {
        for a in 0..h.n() {
            if list >> a & 1 == 0 {
                costs.vcost[v][a] = surrogate.clone();
            }
        }
    }
    let two = h.index_of("2").unwrap();
    for &(x_idx, _) in &specials {
        costs.vcost[x_idx][two] = Rat::from_integer(1.into());
    }
    costs.budget = k.clone();

    VcTriangleInstance {
        scene,
        h,
        graph,
        costs,
        lists,
        specials,
    }
}

/// A surplus geometric contact is harmless iff every pair of listed colors is
/// an H-edge.
pub fn free_pair(h: &TargetGraph, la: ColorSet, lb: ColorSet) -> bool {
    for a in 0..h.n() {
        if la >> a & 1 == 0 {
            continue;
        }
        for b in 0..h.n() {
            if lb >> b & 1 == 1 && !h.has_edge(a, b) {
                return false;
            }
        }
    }
    true
}

fn centroid(shape: &Shape) -> Point {
    match shape {
        Shape::Triangle { a, b, c } => Point::new(
            (&a.x + &b.x + &c.x) / Rat::from_integer(3.into()),
            (&a.y + &b.y + &c.y) / Rat::from_integer(3.into()),
        ),
        _ => unreachable!("vc generator emits triangles only"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::validate_fat_similarly_sized;
    use crate::separators::clique_based_separator;
    use crate::solver::verify_homomorphism;
    use crate::target::verify_switch_gadget;

    fn fallback_provider() -> impl FnMut(&Graph, &[usize]) -> Option<CliqueSeparator> {
        |g: &Graph, _orig: &[usize]| clique_based_separator(None, g, (2, 3))
    }

    fn k3() -> Graph {
        let mut g = Graph::new(3);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(0, 2);
        g
    }

    #[test]
    fn single_vertex_cost() {
        let mut h = TargetGraph::new(vec!["a".into()]).unwrap();
        h.add_edge(0, 0);
        let g = Graph::new(1);
        let mut costs = CostTables::zero(1, &h);
        costs.vcost[0][0] = Rat::from_integer(5.into());
        let mut p = fallback_provider();
        let (min, w) = solve_mincost(&h, &g, &costs, &mut p, &McCfg::default()).unwrap();
        assert_eq!(min, Rat::from_integer(5.into()));
        assert_eq!(w, vec![0]);
    }

    #[test]
    fn vertex_cover_of_k3_is_two() {
        let g = k3();
        let (h, costs) = encode_vertex_cover(&g);
        let mut p = fallback_provider();
        let (min, _) = solve_mincost(&h, &g, &costs, &mut p, &McCfg::default()).unwrap();
        assert_eq!(min, Rat::from_integer(2.into()));
    }

    #[test]
    fn vertex_cover_of_p3_is_one() {
        let mut g = Graph::new(3);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        let (h, costs) = encode_vertex_cover(&g);
        let mut p = fallback_provider();
        let (min, _) = solve_mincost(&h, &g, &costs, &mut p, &McCfg::default()).unwrap();
        assert_eq!(min, Rat::from_integer(1.into()));
    }

    #[test]
    fn max_cut_of_k3() {
        let g = k3();
        let w = vec![Rat::from_integer(1.into()); 3];
        let (h, costs) = encode_max_cut(&g, &w);
        let mut p = fallback_provider();
        let (min, _) = solve_whom(&h, &g, &costs, &mut p, &McCfg::default()).unwrap();
        // total 3 - maxcut 2
        assert_eq!(min, Rat::from_integer(1.into()));
    }

    #[test]
    fn max_cut_of_c4_is_perfect() {
        let mut g = Graph::new(4);
        for i in 0..4 {
            g.add_edge(i, (i + 1) % 4);
        }
        let w = vec![Rat::from_integer(1.into()); 4];
        let (h, costs) = encode_max_cut(&g, &w);
        let mut p = fallback_provider();
        let (min, _) = solve_whom(&h, &g, &costs, &mut p, &McCfg::default()).unwrap();
        assert_eq!(min, Rat::zero());
    }

    #[test]
    fn transfer_identity_small() {
        let h = known::reflexive_c4();
        let mut g = Graph::new(3);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        let mut ecost: EdgeCosts = BTreeMap::new();
        for (u, v) in g.edges() {
            let mut m = BTreeMap::new();
            for a in 0..4 {
                for b in a..4 {
                    m.insert((a, b), Rat::new(((a + 2 * b + u + v) as i64).into(), 3.into()));
                }
            }
            ecost.insert((u, v), m);
        }
        let mut costs = CostTables::zero(3, &h);
        costs.ecost = Some(ecost);
        for v in 0..3 {
            costs.vcost[v][v % 4] = Rat::from_integer(2.into());
        }
        let colored = vec![(1usize, 2usize)];
        let (kept, rest, offset) = transfer_edge_costs(&g, &costs, &colored);
        assert_eq!(kept, vec![0, 2]);
        // identity over all completions
        for a in 0..4 {
            for b in 0..4 {
                let full = vec![a, 2, b];
                let before = costs.cost_of(&g, &full);
                let g_rest = g.induced(&kept);
                let after = rest.cost_of(&g_rest, &[a, b]);
                assert_eq!(before, offset.clone() + after);
            }
        }
    }

    #[test]
    fn lists_to_costs_zero_budget() {
        let h = known::c5_loops_12();
        let mut g = Graph::new(2);
        g.add_edge(0, 1);
        let inst = ListInstance::new(g.clone(), vec![0b00011, 0b11111]);
        let costs = lists_to_costs(&h, &inst);
        assert_eq!(costs.vcost[0][0], Rat::zero());
        assert_eq!(costs.vcost[0][2], Rat::from_integer(1.into()));
        assert_eq!(costs.budget, Rat::zero());
    }

    #[test]
    fn vc_gadget_is_a_switch() {
        let h = known::reflexive_c4();
        let g = vc_vertex_gadget();
        // colors: 0="1", 1="2", 2="3", 3="4"; projection {(1,4),(2,3)}
        assert!(verify_switch_gadget(&g, &h, 0, 1, 3, 2).unwrap());
    }

    #[test]
    fn vc_triangles_small_graph() {
        let g = k3();
        let out = gen_mchom_vc_triangles(&g, &Rat::from_integer(2.into()));
        assert_eq!(out.scene.len(), 4 * 3 + 3);
        assert!(validate_fat_similarly_sized(&out.scene, &crate::geometry::rint(64)).pass());
        // decision at k=2 is YES, at k=1 NO
        let mut p = fallback_provider();
        let (yes, _) = solve_decision(&out.h, &out.graph, &out.costs, &mut p, &McCfg::default());
        assert!(yes);
        let out1 = gen_mchom_vc_triangles(&g, &Rat::from_integer(1.into()));
        let mut p = fallback_provider();
        let (yes1, _) =
            solve_decision(&out1.h, &out1.graph, &out1.costs, &mut p, &McCfg::default());
        assert!(!yes1);
    }

    #[test]
    fn mincost_witness_is_valid() {
        let g = k3();
        let (h, costs) = encode_vertex_cover(&g);
        let mut p = fallback_provider();
        let (_, w) = solve_mincost(&h, &g, &costs, &mut p, &McCfg::default()).unwrap();
        let inst = ListInstance::full_lists(g, &h);
        assert!(verify_homomorphism(&h, &inst, &w));
    }
}
