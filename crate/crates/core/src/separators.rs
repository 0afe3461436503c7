//! Balanced vertex separators, clique-based separators, and the
//! area-balanced axis-parallel line separator for fat similarly-sized scenes.

use crate::geometry::{
    area, cell_cliques_of, hull_crosses_line, object_grid_rect, Axis, GeoObject, Scene,
};
use crate::graph::Graph;
use thiserror::Error;

/// A family of vertex-disjoint cliques whose union is a balanced separator.
/// The weight is Σ log2(|Ci| + 1).
#[derive(Clone, Debug)]
pub struct CliqueSeparator {
    pub cliques: Vec<Vec<usize>>,
    pub delta: (u64, u64),
}

impl CliqueSeparator {
    pub fn union(&self) -> Vec<usize> {
        let mut u: Vec<usize> = self.cliques.iter().flatten().copied().collect();
        u.sort_unstable();
        u
    }

    pub fn weight(&self) -> f64 {
        self.cliques
            .iter()
            .map(|c| ((c.len() + 1) as f64).log2())
            .sum()
    }

    /// Re-verify the type invariants against the host graph.
    pub fn verify(&self, g: &Graph) -> bool {
        let union = self.union();
        let mut seen = vec![false; g.n()];
        for &v in &union {
            if seen[v] {
                return false; // cliques must be disjoint
            }
            seen[v] = true;
        }
        if !self.cliques.iter().all(|c| g.is_clique(c)) {
            return false;
        }
        let n = g.n() as u64;
        g.components_without(&union)
            .iter()
            .all(|comp| (comp.len() as u64) * self.delta.1 <= n * self.delta.0)
    }
}

fn balanced(comps: &[Vec<usize>], n: usize, delta: (u64, u64)) -> bool {
    comps
        .iter()
        .all(|c| (c.len() as u64) * delta.1 <= (n as u64) * delta.0)
}

/// Search for a `delta`-balanced vertex separator of size at most
/// `size_budget`: exhaustive when the graph is small, BFS-level cuts with
/// greedy shrinking otherwise. `None` means the search failed; callers fall
/// back to branching, so completeness is not required here.
pub fn balanced_vertex_separator(
    g: &Graph,
    delta: (u64, u64),
    size_budget: usize,
) -> Option<Vec<usize>> {
    let n = g.n();
    if n == 0 {
        return Some(Vec::new());
    }
    if balanced(&g.components(), n, delta) {
        return Some(Vec::new());
    }
    if n <= 18 {
        // subsets in size order, lexicographic within a size
        for size in 1..=size_budget.min(n) {
            let mut pick: Vec<usize> = (0..size).collect();
            'combos: loop {
                if balanced(&g.components_without(&pick), n, delta) {
                    return Some(pick);
                }
                // advance to the next combination
                let mut i = size;
                loop {
                    if i == 0 {
                        break 'combos;
                    }
                    i -= 1;
                    if pick[i] != i + n - size {
                        pick[i] += 1;
                        for j in i + 1..size {
                            pick[j] = pick[j - 1] + 1;
                        }
                        break;
                    }
                }
            }
        }
        return None;
    }

    // heuristic: BFS level cuts from several deterministic roots
    let mut best: Option<Vec<usize>> = None;
    let roots: Vec<usize> = {
        let mut r = vec![0, n / 4, n / 2, (3 * n) / 4, n - 1];
        r.sort_unstable();
        r.dedup();
        r
    };
    for root in roots {
        let mut level = vec![usize::MAX; n];
        level[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        let mut max_level = 0;
        while let Some(u) = queue.pop_front() {
            for v in g.neighbors(u) {
                if level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    max_level = max_level.max(level[v]);
                    queue.push_back(v);
                }
            }
        }
        for cut in 1..=max_level {
            let mut s: Vec<usize> = (0..n).filter(|&v| level[v] == cut).collect();
            if s.is_empty() || s.len() > size_budget {
                continue;
            }
            if !balanced(&g.components_without(&s), n, delta) {
                continue;
            }
            // greedy shrink: drop vertices that keep the separator valid
            let mut i = 0;
            while i < s.len() {
                let mut trial = s.clone();
                trial.remove(i);
                if balanced(&g.components_without(&trial), n, delta) {
                    s = trial;
                } else {
                    i += 1;
                }
            }
            if best.as_ref().map_or(true, |b| s.len() < b.len()) {
                best = Some(s);
            }
        }
    }
    best
}

/// Default separator budget: ⌈4√m⌉.
pub fn default_size_budget(m: usize) -> usize {
    let mut b = 1usize;
    while b * b < 16 * m {
        b += 1;
    }
    b.max(1)
}

/// Either the component already has small area, or a separating grid line.
#[derive(Clone, Debug)]
pub enum LineSeparation {
    SmallArea,
    Split {
        axis: Axis,
        line: i64,
        crossing: Vec<usize>,
        left: Vec<usize>,
        right: Vec<usize>,
    },
}

#[derive(Debug, Error)]
pub enum SeparatorError {
    #[error("scene objects fail fat/similarly-sized validation")]
    NotValidated,
    #[error("intersection graph is not connected")]
    Disconnected,
    #[error("geometry error: {0}")]
    Geom(#[from] crate::geometry::GeomError),
    #[error("no admissible separating line")]
    NoLine,
}

/// Middle-third candidate line indices for an extent of grid lines
/// `lo..=hi` (interior lines strictly inside the bounding box).
fn middle_third(lo: i64, hi: i64) -> Vec<i64> {
    if hi < lo {
        return Vec::new();
    }
    let a = hi - lo + 2; // number of grid lines touching the box
    let from = lo + (a - 1) / 3;
    let to = lo + (2 * (a - 1)) / 3;
    (from..=to).filter(|&l| l > lo - 1 && l <= hi + 1).collect()
}

/// The area-balanced line separator. Scans the middle third of both axes,
/// keeps lines whose two sides each retain at most 3/4 of the area, and
/// returns the admissible line crossing the fewest convex hulls
/// (ties: vertical before horizontal, then smaller index).
pub fn line_separator(
    scene: &Scene,
    subset: &[usize],
    c_area: (i64, i64),
) -> Result<LineSeparation, SeparatorError> {
    let objs: Vec<&GeoObject> = subset.iter().map(|&i| &scene.objects[i]).collect();
    let bb = area_box(&objs)?;
    let total_area = bb.area();
    let n = subset.len() as i64;
    // area <= c_area * n^(2/3)  ⟺  (area * den)^3 <= (num^3) * n^2
    let lhs = (total_area as i128 * c_area.1 as i128).pow(3);
    let rhs = (c_area.0 as i128).pow(3) * (n as i128).pow(2);
    if lhs <= rhs {
        return Ok(LineSeparation::SmallArea);
    }

    let mut best: Option<(usize, Axis, i64)> = None;
    for axis in [Axis::Vertical, Axis::Horizontal] {
        let (lo, hi) = match axis {
            Axis::Vertical => (bb.col_lo, bb.col_hi),
            Axis::Horizontal => (bb.row_lo, bb.row_hi),
        };
        for line in middle_third(lo + 1, hi) {
            let mut crossing = 0usize;
            let mut left: Vec<usize> = Vec::new();
            let mut right: Vec<usize> = Vec::new();
            for (k, o) in objs.iter().enumerate() {
                if hull_crosses_line(o, axis, line) {
                    crossing += 1;
                } else {
                    let r = object_grid_rect(o);
                    let before = match axis {
                        Axis::Vertical => r.col_hi < line,
                        Axis::Horizontal => r.row_hi < line,
                    };
                    if before {
                        left.push(subset[k]);
                    } else {
                        right.push(subset[k]);
                    }
                }
            }
            let ok = |side: &[usize]| -> bool {
                if side.is_empty() {
                    return true;
                }
                let sobjs: Vec<&GeoObject> = side.iter().map(|&i| &scene.objects[i]).collect();
                let a = area(&sobjs).expect("nonempty");
                4 * a <= 3 * total_area
            };
            if ok(&left) && ok(&right) {
                if best.map_or(true, |(c, _, _)| crossing < c) {
                    best = Some((crossing, axis, line));
                }
            }
        }
    }

    let (_, axis, line) = best.ok_or(SeparatorError::NoLine)?;
    let mut crossing = Vec::new();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for &i in subset {
        let o = &scene.objects[i];
        if hull_crosses_line(o, axis, line) {
            crossing.push(i);
        } else {
            let r = object_grid_rect(o);
            let before = match axis {
                Axis::Vertical => r.col_hi < line,
                Axis::Horizontal => r.row_hi < line,
            };
            if before {
                left.push(i);
            } else {
                right.push(i);
            }
        }
    }
    Ok(LineSeparation::Split {
        axis,
        line,
        crossing,
        left,
        right,
    })
}

fn area_box(objs: &[&GeoObject]) -> Result<crate::geometry::GridRect, SeparatorError> {
    crate::geometry::bounding_box(objs).map_err(SeparatorError::Geom)
}

/// Clique-based separator construction. Strategies in order:
/// (a) anchored scenes: cell-cliques split by the best balanced grid line,
/// (b) general fat scenes: multi-scale cells crossed by a line, greedily
///     split into true cliques,
/// (c) fallback: a balanced vertex separator covered greedily by cliques.
pub fn clique_based_separator(
    scene: Option<(&Scene, &[usize])>,
    g: &Graph,
    delta: (u64, u64),
) -> Option<CliqueSeparator> {
    let n = g.n();
    if n == 0 || balanced(&g.components(), n, delta) {
        return Some(CliqueSeparator {
            cliques: Vec::new(),
            delta,
        });
    }

    if let Some((scene, objs)) = scene {
        if let Some(sep) = by_grid_line(scene, objs, g, delta) {
            return Some(sep);
        }
        if let Some(sep) = by_multiscale(scene, objs, g, delta) {
            return Some(sep);
        }
    }

    // fallback: vertex separator + greedy clique cover
    let budget = default_size_budget(g.edge_count());
    let s = balanced_vertex_separator(g, delta, budget)?;
    let cliques = greedy_clique_cover(g, &s);
    let sep = CliqueSeparator { cliques, delta };
    sep.verify(g).then_some(sep)
}

/// Split a vertex set into cliques greedily, scanning in ascending order.
pub fn greedy_clique_cover(g: &Graph, verts: &[usize]) -> Vec<Vec<usize>> {
    let mut remaining: Vec<usize> = verts.to_vec();
    remaining.sort_unstable();
    let mut out = Vec::new();
    while let Some(&seed) = remaining.first() {
        let mut clique = vec![seed];
        remaining.remove(0);
        let mut i = 0;
        while i < remaining.len() {
            let v = remaining[i];
            if clique.iter().all(|&u| g.has_edge(u, v)) {
                clique.push(v);
                remaining.remove(i);
            } else {
                i += 1;
            }
        }
        out.push(clique);
    }
    out
}

/// Strategy (a): take the grid line (middle third, both axes, vertex-count
/// balanced) crossed by the fewest object hulls; the crossing objects grouped
/// by anchor cell form the cliques.
fn by_grid_line(
    scene: &Scene,
    objs: &[usize],
    g: &Graph,
    delta: (u64, u64),
) -> Option<CliqueSeparator> {
    let refs: Vec<&GeoObject> = objs.iter().map(|&i| &scene.objects[i]).collect();
    let bb = crate::geometry::bounding_box(&refs).ok()?;
    let n = g.n();
    let pos_of = |obj: usize| objs.iter().position(|&o| o == obj).unwrap();

    let mut best: Option<(usize, Axis, i64)> = None;
    for axis in [Axis::Vertical, Axis::Horizontal] {
        let (lo, hi) = match axis {
            Axis::Vertical => (bb.col_lo, bb.col_hi),
            Axis::Horizontal => (bb.row_lo, bb.row_hi),
        };
        for line in middle_third(lo + 1, hi) {
            let mut crossing = 0usize;
            let mut left = 0usize;
            let mut right = 0usize;
            for o in &refs {
                if hull_crosses_line(o, axis, line) {
                    crossing += 1;
                } else {
                    let r = object_grid_rect(o);
                    let before = match axis {
                        Axis::Vertical => r.col_hi < line,
                        Axis::Horizontal => r.row_hi < line,
                    };
                    if before {
                        left += 1;
                    } else {
                        right += 1;
                    }
                }
            }
            if (left as u64) * delta.1 <= (n as u64) * delta.0
                && (right as u64) * delta.1 <= (n as u64) * delta.0
                && best.map_or(true, |(c, _, _)| crossing < c)
            {
                best = Some((crossing, axis, line));
            }
        }
    }
    let (_, axis, line) = best?;
    let crossing: Vec<usize> = objs
        .iter()
        .copied()
        .filter(|&i| hull_crosses_line(&scene.objects[i], axis, line))
        .collect();
    let parts = cell_cliques_of(scene, &crossing).ok()?;
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    for (_, part) in parts {
        let local: Vec<usize> = part.iter().map(|&obj| pos_of(obj)).collect();
        // anchored fat objects in one cell always form a clique; split
        // defensively if the scene violates that
        for c in split_into_cliques(g, &local) {
            cliques.push(c);
        }
    }
    let sep = CliqueSeparator { cliques, delta };
    sep.verify(g).then_some(sep)
}

/// Strategy (b): objects binned at cell side 2^⌈log2 diam⌉ by anchor; all
/// scale-cells crossed by a chosen line form the separator.
fn by_multiscale(
    scene: &Scene,
    objs: &[usize],
    g: &Graph,
    delta: (u64, u64),
) -> Option<CliqueSeparator> {
    use num_traits::ToPrimitive;
    let n = g.n();
    let pos_of = |obj: usize| objs.iter().position(|&o| o == obj).unwrap();
    // scale per object: smallest power of two >= diam
    let mut scale: Vec<i64> = Vec::with_capacity(objs.len());
    let mut anchors: Vec<(f64, f64)> = Vec::with_capacity(objs.len());
    for &i in objs {
        let o = &scene.objects[i];
        let d2 = o.shape.diam2();
        let mut s = 1i64;
        while num_rational::BigRational::from_integer((s * s).into()) < d2 {
            s *= 2;
            if s > (1 << 40) {
                return None;
            }
        }
        scale.push(s);
        let a = o.anchor.as_ref()?;
        anchors.push((a.x.to_f64()?, a.y.to_f64()?));
    }
    let refs: Vec<&GeoObject> = objs.iter().map(|&i| &scene.objects[i]).collect();
    let bb = crate::geometry::bounding_box(&refs).ok()?;
    let mut best: Option<(usize, Axis, i64)> = None;
    for axis in [Axis::Vertical, Axis::Horizontal] {
        let (lo, hi) = match axis {
            Axis::Vertical => (bb.col_lo, bb.col_hi),
            Axis::Horizontal => (bb.row_lo, bb.row_hi),
        };
        for line in middle_third(lo + 1, hi) {
            let mut crossing = 0usize;
            let mut left = 0usize;
            let mut right = 0usize;
            for o in &refs {
                if hull_crosses_line(o, axis, line) {
                    crossing += 1;
                } else {
                    let r = object_grid_rect(o);
                    let before = match axis {
                        Axis::Vertical => r.col_hi < line,
                        Axis::Horizontal => r.row_hi < line,
                    };
                    if before {
                        left += 1;
                    } else {
                        right += 1;
                    }
                }
            }
            if (left as u64) * delta.1 <= (n as u64) * delta.0
                && (right as u64) * delta.1 <= (n as u64) * delta.0
                && best.map_or(true, |(c, _, _)| crossing < c)
            {
                best = Some((crossing, axis, line));
            }
        }
    }
    let (_, axis, line) = best?;
    // group crossing objects by (scale, scale-cell of anchor)
    let mut cells: std::collections::BTreeMap<(i64, i64, i64), Vec<usize>> =
        std::collections::BTreeMap::new();
    for (k, &i) in objs.iter().enumerate() {
        if hull_crosses_line(&scene.objects[i], axis, line) {
            let s = scale[k];
            let (ax, ay) = anchors[k];
            let cell = ((ax / s as f64).floor() as i64, (ay / s as f64).floor() as i64);
            cells.entry((s, cell.0, cell.1)).or_default().push(pos_of(i));
        }
    }
    let mut cliques = Vec::new();
    for (_, part) in cells {
        for c in split_into_cliques(g, &part) {
            cliques.push(c);
        }
    }
    let sep = CliqueSeparator { cliques, delta };
    sep.verify(g).then_some(sep)
}

fn split_into_cliques(g: &Graph, verts: &[usize]) -> Vec<Vec<usize>> {
    if g.is_clique(verts) {
        vec![verts.to_vec()]
    } else {
        greedy_clique_cover(g, verts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{parse_scene, intersection_graph};

    #[test]
    fn path_middle_vertex() {
        let mut g = Graph::new(9);
        for i in 0..8 {
            g.add_edge(i, i + 1);
        }
        let s = balanced_vertex_separator(&g, (2, 3), 1).unwrap();
        assert_eq!(s, vec![3]);
        let comps = g.components_without(&s);
        assert!(comps.iter().all(|c| c.len() <= 6));
    }

    #[test]
    fn k5_has_no_single_vertex_separator() {
        let mut g = Graph::new(5);
        for i in 0..5 {
            for j in i + 1..5 {
                g.add_edge(i, j);
            }
        }
        assert!(balanced_vertex_separator(&g, (2, 3), 1).is_none());
    }

    #[test]
    fn grid5_column_separator() {
        let mut g = Graph::new(25);
        for r in 0..5 {
            for c in 0..5 {
                let v = r * 5 + c;
                if c + 1 < 5 {
                    g.add_edge(v, v + 1);
                }
                if r + 1 < 5 {
                    g.add_edge(v, v + 5);
                }
            }
        }
        let s = balanced_vertex_separator(&g, (2, 3), 5).unwrap();
        assert!(s.len() <= 5);
        let comps = g.components_without(&s);
        assert!(comps.iter().all(|c| c.len() * 3 <= 25 * 2));
    }

    #[test]
    fn chain_scene_line_separator() {
        // horizontal chain of touching unit disks
        let mut text = String::new();
        for i in 0..60 {
            text.push_str(&format!("disk {} 0 1 anchor {} 0\n", 2 * i, 2 * i));
        }
        let scene = parse_scene(&text).unwrap();
        let subset: Vec<usize> = (0..60).collect();
        match line_separator(&scene, &subset, (3, 1)).unwrap() {
            LineSeparation::Split {
                crossing,
                left,
                right,
                ..
            } => {
                assert!(crossing.len() <= 2, "chain crossing {}", crossing.len());
                assert!(!left.is_empty() && !right.is_empty());
                let objs: Vec<&GeoObject> =
                    subset.iter().map(|&i| &scene.objects[i]).collect();
                let total = area(&objs).unwrap();
                for side in [&left, &right] {
                    let sobjs: Vec<&GeoObject> =
                        side.iter().map(|&i| &scene.objects[i]).collect();
                    assert!(4 * area(&sobjs).unwrap() <= 3 * total);
                }
            }
            LineSeparation::SmallArea => panic!("area should exceed threshold"),
        }
    }

    #[test]
    fn small_area_short_circuit() {
        let scene = parse_scene("disk 0 0 1 anchor 0 0\n").unwrap();
        assert!(matches!(
            line_separator(&scene, &[0], (3, 1)).unwrap(),
            LineSeparation::SmallArea
        ));
    }

    #[test]
    fn disk_grid_clique_separator() {
        // 8x8 grid of touching unit disks
        let mut text = String::new();
        for r in 0..8 {
            for c in 0..8 {
                text.push_str(&format!("disk {} {} 1 anchor {} {}\n", 2 * c, 2 * r, 2 * c, 2 * r));
            }
        }
        let scene = parse_scene(&text).unwrap();
        let g = intersection_graph(&scene);
        let objs: Vec<usize> = (0..64).collect();
        let sep = clique_based_separator(Some((&scene, &objs)), &g, (2, 3)).unwrap();
        assert!(sep.verify(&g));
        assert!(!sep.cliques.is_empty());
        // weight of singletons sanity: every clique weighs at least 1
        assert!(sep.weight() >= sep.cliques.len() as f64);
    }

    #[test]
    fn edgeless_graph_empty_separator() {
        let g = Graph::new(6);
        let sep = clique_based_separator(None, &g, (2, 3)).unwrap();
        assert!(sep.cliques.is_empty());
        assert!(sep.verify(&g));
    }
}
