//! The fixed target graph `H` (loops allowed) and its derived structure:
//! reflexive/irreflexive partition, maximum reflexive cliques, neighborhood
//! comparability, predators, and the associated bipartite graph `H*`.

use crate::graph::Graph;
use thiserror::Error;

/// Vertex subsets of `H` as bitmasks; `H` is capped at [`MAX_H`] vertices.
pub type ColorSet = u32;

/// Hard cap on |V(H)|: structural analysis is exhaustive over subsets.
pub const MAX_H: usize = 24;

#[derive(Debug, Error)]
pub enum TargetError {
    #[error("target graph has {0} vertices, limit is {MAX_H}")]
    TooLarge(usize),
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),
    #[error("malformed target graph file: {0}")]
    Parse(String),
}

/// Target graph with possible loops. Adjacency rows include self-bits for loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetGraph {
    labels: Vec<String>,
    adj: Vec<ColorSet>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparability {
    ALeB,
    BLeA,
    Equal,
    Incomparable,
}

impl TargetGraph {
    pub fn new(labels: Vec<String>) -> Result<Self, TargetError> {
        if labels.len() > MAX_H {
            return Err(TargetError::TooLarge(labels.len()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(TargetError::DuplicateLabel(l.clone()));
            }
        }
        let n = labels.len();
        Ok(TargetGraph {
            labels,
            adj: vec![0; n],
        })
    }

    /// Build from labels and edge pairs; a pair `(a, a)` is a loop.
    pub fn from_edges(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Self, TargetError> {
        let mut h = Self::new(labels)?;
        for &(a, b) in edges {
            h.add_edge(a, b);
        }
        Ok(h)
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        (self.adj[a] >> b) & 1 == 1
    }

    pub fn has_loop(&self, a: usize) -> bool {
        self.has_edge(a, a)
    }

    /// Closed neighborhood mask of `a` in the loop sense: `a ∈ N(a)` iff `a` has a loop.
    pub fn nbr_mask(&self, a: usize) -> ColorSet {
        self.adj[a]
    }

    pub fn full_mask(&self) -> ColorSet {
        if self.n() == 32 {
            u32::MAX
        } else {
            (1u32 << self.n()) - 1
        }
    }

    /// Number of edges counting each loop once.
    pub fn edge_count(&self) -> usize {
        let mut c = 0;
        for a in 0..self.n() {
            for b in a..self.n() {
                if self.has_edge(a, b) {
                    c += 1;
                }
            }
        }
        c
    }

    /// Partition of V(H) into reflexive and irreflexive vertices.
    pub fn reflexive_partition(&self) -> (ColorSet, ColorSet) {
        let mut r = 0;
        for a in 0..self.n() {
            if self.has_loop(a) {
                r |= 1 << a;
            }
        }
        (r, self.full_mask() & !r)
    }

    pub fn reflexive_mask(&self) -> ColorSet {
        self.reflexive_partition().0
    }

    pub fn irreflexive_mask(&self) -> ColorSet {
        self.reflexive_partition().1
    }

    fn is_reflexive_clique(&self, set: ColorSet) -> bool {
        let mut rest = set;
        while rest != 0 {
            let a = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            // loop on a plus adjacency to every member (including itself)
            if self.adj[a] & set != set || !self.has_loop(a) {
                return false;
            }
        }
        true
    }

    /// Size of a maximum reflexive clique with one witness, by exhaustive search
    /// over subsets of R(H) (branch on lowest vertex, prune by adjacency).
    pub fn max_reflexive_clique(&self) -> (usize, ColorSet) {
        let r = self.reflexive_mask();
        let mut best: (usize, ColorSet) = (0, 0);
        fn grow(
            h: &TargetGraph,
            current: ColorSet,
            size: usize,
            candidates: ColorSet,
            best: &mut (usize, ColorSet),
        ) {
            if size > best.0 {
                *best = (size, current);
            }
            let mut rest = candidates;
            while rest != 0 {
                let a = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                grow(h, current | (1 << a), size + 1, rest & h.adj[a], best);
            }
        }
        grow(self, 0, 0, r, &mut best);
        best
    }

    pub fn mrc(&self) -> usize {
        self.max_reflexive_clique().0
    }

    /// All maximal reflexive cliques, each as a mask, in deterministic order.
    pub fn maximal_reflexive_cliques(&self) -> Vec<ColorSet> {
        let r = self.reflexive_mask();
        let mut all: Vec<ColorSet> = Vec::new();
        // enumerate all reflexive cliques, keep the maximal ones
        fn grow(h: &TargetGraph, current: ColorSet, candidates: ColorSet, out: &mut Vec<ColorSet>) {
            if current != 0 {
                out.push(current);
            }
            let mut rest = candidates;
            while rest != 0 {
                let a = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                grow(h, current | (1 << a), rest & h.adj[a], out);
            }
        }
        grow(self, 0, r, &mut all);
        let mut maximal: Vec<ColorSet> = all
            .iter()
            .copied()
            .filter(|&c| !all.iter().any(|&d| d != c && d & c == c))
            .collect();
        maximal.sort_unstable();
        maximal.dedup();
        maximal
    }

    /// Classify `a` vs `b` by containment of their neighborhoods (loops included).
    pub fn comparability(&self, a: usize, b: usize) -> Comparability {
        debug_assert!(a != b);
        let na = self.adj[a];
        let nb = self.adj[b];
        match (na & !nb == 0, nb & !na == 0) {
            (true, true) => Comparability::Equal,
            (true, false) => Comparability::ALeB,
            (false, true) => Comparability::BLeA,
            (false, false) => Comparability::Incomparable,
        }
    }

    fn incomparable_pair(&self, a: usize, b: usize) -> bool {
        a != b && self.comparability(a, b) == Comparability::Incomparable
    }

    /// Search `H` itself for a predator: two internally incomparable 2-element
    /// sets `{a1,a2}`, `{b1,b2}` that are complete to each other. The sets may
    /// share vertices. Returns the lexicographically smallest witness.
    pub fn find_predator(&self) -> Option<(usize, usize, usize, usize)> {
        let n = self.n();
        for a1 in 0..n {
            for a2 in a1 + 1..n {
                if !self.incomparable_pair(a1, a2) {
                    continue;
                }
                for b1 in 0..n {
                    for b2 in b1 + 1..n {
                        if !self.incomparable_pair(b1, b2) {
                            continue;
                        }
                        if self.has_edge(a1, b1)
                            && self.has_edge(a1, b2)
                            && self.has_edge(a2, b1)
                            && self.has_edge(a2, b2)
                        {
                            return Some((a1, a2, b1, b2));
                        }
                    }
                }
            }
        }
        None
    }

    /// True iff R(H) is a reflexive clique and I(H) is an independent set.
    pub fn is_strong_split(&self) -> bool {
        let (r, i) = self.reflexive_partition();
        if !self.is_reflexive_clique(r) {
            return false;
        }
        let mut rest = i;
        while rest != 0 {
            let a = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.adj[a] & i != 0 {
                return false;
            }
        }
        true
    }

    /// The associated bipartite graph H*: vertices a', a'' per vertex a of H,
    /// with a'b'' an edge iff ab is an edge of H.
    pub fn build_associated_bipartite(&self) -> BipartiteAssociate {
        let n = self.n();
        let mut labels = Vec::with_capacity(2 * n);
        for a in 0..n {
            labels.push(format!("{}'", self.labels[a]));
        }
        for a in 0..n {
            labels.push(format!("{}''", self.labels[a]));
        }
        let mut hstar = TargetGraph::new(labels).expect("2|V(H)| within cap");
        for a in 0..n {
            for b in 0..n {
                if self.has_edge(a, b) {
                    hstar.add_edge(a, n + b);
                }
            }
        }
        let side_of = (0..2 * n)
            .map(|v| if v < n { Side::X } else { Side::Y })
            .collect();
        let origin = (0..2 * n)
            .map(|v| {
                if v < n {
                    (v, Tick::Prime)
                } else {
                    (v - n, Tick::DoublePrime)
                }
            })
            .collect();
        BipartiteAssociate {
            hstar,
            side_of,
            origin,
        }
    }

    /// Serialize in the `H <n>` / `v <label>` / `e <a> <b>` text format.
    pub fn to_text(&self) -> String {
        let mut s = format!("H {}\n", self.n());
        for l in &self.labels {
            s.push_str(&format!("v {}\n", l));
        }
        for a in 0..self.n() {
            for b in a..self.n() {
                if self.has_edge(a, b) {
                    s.push_str(&format!("e {} {}\n", self.labels[a], self.labels[b]));
                }
            }
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, TargetError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| TargetError::Parse("empty file".into()))?;
        let mut parts = header.split_whitespace();
        if parts.next() != Some("H") {
            return Err(TargetError::Parse("expected `H <n>` header".into()));
        }
        let n: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| TargetError::Parse("bad vertex count".into()))?;
        let mut labels = Vec::with_capacity(n);
        let mut edges: Vec<(String, String)> = Vec::new();
        for line in lines {
            let mut toks = line.split_whitespace();
            match toks.next() {
                Some("v") => {
                    let l = toks
                        .next()
                        .ok_or_else(|| TargetError::Parse("`v` without label".into()))?;
                    labels.push(l.to_string());
                }
                Some("e") => {
                    let a = toks
                        .next()
                        .ok_or_else(|| TargetError::Parse("`e` missing endpoint".into()))?;
                    let b = toks
                        .next()
                        .ok_or_else(|| TargetError::Parse("`e` missing endpoint".into()))?;
                    edges.push((a.to_string(), b.to_string()));
                }
                Some(other) => {
                    return Err(TargetError::Parse(format!("unknown line kind `{other}`")))
                }
                None => {}
            }
        }
        if labels.len() != n {
            return Err(TargetError::Parse(format!(
                "declared {n} vertices, found {}",
                labels.len()
            )));
        }
        let mut h = TargetGraph::new(labels)?;
        for (a, b) in edges {
            let ia = h
                .index_of(&a)
                .ok_or_else(|| TargetError::UnknownLabel(a.clone()))?;
            let ib = h
                .index_of(&b)
                .ok_or_else(|| TargetError::UnknownLabel(b.clone()))?;
            h.add_edge(ia, ib);
        }
        Ok(h)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    X,
    Y,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tick {
    Prime,
    DoublePrime,
}

/// H* together with the bookkeeping of where each vertex came from.
#[derive(Clone, Debug)]
pub struct BipartiteAssociate {
    pub hstar: TargetGraph,
    pub side_of: Vec<Side>,
    pub origin: Vec<(usize, Tick)>,
}

impl BipartiteAssociate {
    pub fn side_mask(&self, side: Side) -> ColorSet {
        let mut m = 0;
        for (v, &s) in self.side_of.iter().enumerate() {
            if s == side {
                m |= 1 << v;
            }
        }
        m
    }
}

/// An instance fragment with distinguished interface vertices, used by the
/// gadget verifiers and shipped gadget templates.
#[derive(Clone, Debug)]
pub struct Gadget {
    pub graph: Graph,
    pub lists: Vec<ColorSet>,
    pub interface: Vec<usize>,
}

#[derive(Debug, Error)]
pub enum GadgetError {
    #[error("gadget interface has {got} vertices, expected {want}")]
    InterfaceArity { want: usize, got: usize },
    #[error("interface vertex {0} has wrong list")]
    InterfaceList(usize),
    #[error("interface vertices must be distinct")]
    InterfaceDup,
    #[error("gadget has an empty list at vertex {0}")]
    EmptyList(usize),
}

/// Enumerate every list homomorphism of `(graph, lists) -> H` and feed the
/// color tuple at `proj` to `f`. Plain backtracking; fragments are small.
pub fn for_each_list_hom<F: FnMut(&[usize])>(
    h: &TargetGraph,
    graph: &Graph,
    lists: &[ColorSet],
    proj: &[usize],
    f: &mut F,
) {
    let n = graph.n();
    let mut colors = vec![usize::MAX; n];
    let mut tuple = vec![0usize; proj.len()];
    fn rec<F: FnMut(&[usize])>(
        h: &TargetGraph,
        graph: &Graph,
        lists: &[ColorSet],
        proj: &[usize],
        colors: &mut [usize],
        v: usize,
        tuple: &mut [usize],
        f: &mut F,
    ) {
        if v == graph.n() {
            for (i, &p) in proj.iter().enumerate() {
                tuple[i] = colors[p];
            }
            f(tuple);
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
            if ok {
                colors[v] = c;
                rec(h, graph, lists, proj, colors, v + 1, tuple, f);
                colors[v] = usize::MAX;
            }
        }
    }
    rec(h, graph, lists, proj, &mut colors, 0, &mut tuple, f);
}

/// Check a gadget against the OR3(a,b) contract: interface lists are `{a,b}`
/// and the projection of all list homomorphisms onto the interface triple is
/// exactly every pattern except `(b,b,b)`.
pub fn verify_or3_gadget(
    g: &Gadget,
    h: &TargetGraph,
    a: usize,
    b: usize,
) -> Result<bool, GadgetError> {
    if g.interface.len() != 3 {
        return Err(GadgetError::InterfaceArity {
            want: 3,
            got: g.interface.len(),
        });
    }
    check_interface(g, &[(0, a, b), (1, a, b), (2, a, b)])?;
    let mut seen = std::collections::BTreeSet::new();
    for_each_list_hom(h, &g.graph, &g.lists, &g.interface, &mut |t| {
        seen.insert((t[0], t[1], t[2]));
    });
    let mut expected = std::collections::BTreeSet::new();
    for &x in &[a, b] {
        for &y in &[a, b] {
            for &z in &[a, b] {
                if (x, y, z) != (b, b, b) {
                    expected.insert((x, y, z));
                }
            }
        }
    }
    Ok(seen == expected)
}

/// Check a gadget against the (a/b -> c/d) contract: `L(p)={a,b}`, `L(q)={c,d}`,
/// and the projection onto `(p,q)` is exactly `{(a,c),(b,d)}`.
pub fn verify_switch_gadget(
    g: &Gadget,
    h: &TargetGraph,
    a: usize,
    b: usize,
    c: usize,
    d: usize,
) -> Result<bool, GadgetError> {
    if g.interface.len() != 2 {
        return Err(GadgetError::InterfaceArity {
            want: 2,
            got: g.interface.len(),
        });
    }
    check_interface(g, &[(0, a, b), (1, c, d)])?;
    let mut seen = std::collections::BTreeSet::new();
    for_each_list_hom(h, &g.graph, &g.lists, &g.interface, &mut |t| {
        seen.insert((t[0], t[1]));
    });
    let expected: std::collections::BTreeSet<_> = [(a, c), (b, d)].into_iter().collect();
    Ok(seen == expected)
}

fn check_interface(g: &Gadget, wants: &[(usize, usize, usize)]) -> Result<(), GadgetError> {
    let mut distinct = std::collections::BTreeSet::new();
    for &v in &g.interface {
        if !distinct.insert(v) {
            return Err(GadgetError::InterfaceDup);
        }
    }
    for (l, list) in g.lists.iter().enumerate() {
        if *list == 0 {
            return Err(GadgetError::EmptyList(l));
        }
    }
    for &(slot, x, y) in wants {
        let v = g.interface[slot];
        if g.lists[v] != (1 << x) | (1 << y) {
            return Err(GadgetError::InterfaceList(v));
        }
    }
    Ok(())
}

/// True iff `(G, L*)` is a consistent instance of LHom(H*): G bipartite, and for
/// each component one orientation maps its sides into the X / Y color sides.
pub fn is_consistent_instance(
    graph: &Graph,
    lists_star: &[ColorSet],
    assoc: &BipartiteAssociate,
) -> bool {
    let x = assoc.side_mask(Side::X);
    let y = assoc.side_mask(Side::Y);
    match two_color(graph) {
        None => false,
        Some(side) => {
            for comp in graph.components() {
                let fits = |ca: ColorSet, cb: ColorSet| {
                    comp.iter().all(|&v| {
                        let target = if side[v] == 0 { ca } else { cb };
                        lists_star[v] & !target == 0
                    })
                };
                if !fits(x, y) && !fits(y, x) {
                    return false;
                }
            }
            true
        }
    }
}

/// Proper 2-coloring per component (side 0 = component root), or None on odd cycles.
fn two_color(graph: &Graph) -> Option<Vec<u8>> {
    let n = graph.n();
    let mut side = vec![u8::MAX; n];
    for start in 0..n {
        if side[start] != u8::MAX {
            continue;
        }
        side[start] = 0;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for v in graph.neighbors(u) {
                if side[v] == u8::MAX {
                    side[v] = 1 - side[u];
                    stack.push(v);
                } else if side[v] == side[u] {
                    return None;
                }
            }
        }
    }
    Some(side)
}

#[derive(Debug, Error)]
#[error("instance is not consistent")]
pub struct NotConsistent;

/// Collapse ticks of a consistent LHom(H*) instance into lists over V(H):
/// `L(v) = {a : {a', a''} ∩ L*(v) ≠ ∅}`.
pub fn project_consistent(
    graph: &Graph,
    lists_star: &[ColorSet],
    assoc: &BipartiteAssociate,
) -> Result<Vec<ColorSet>, NotConsistent> {
    if !is_consistent_instance(graph, lists_star, assoc) {
        return Err(NotConsistent);
    }
    let mut out = vec![0 as ColorSet; lists_star.len()];
    for (v, &ls) in lists_star.iter().enumerate() {
        let mut m = ls;
        while m != 0 {
            let star_vertex = m.trailing_zeros() as usize;
            m &= m - 1;
            out[v] |= 1 << assoc.origin[star_vertex].0;
        }
    }
    Ok(out)
}

/// Convenience constructors used across tests and generators.
pub mod known {
    use super::TargetGraph;

    fn mk(labels: &[&str], edges: &[(usize, usize)]) -> TargetGraph {
        TargetGraph::from_edges(labels.iter().map(|s| s.to_string()).collect(), edges).unwrap()
    }

    /// Complete irreflexive graph on `k` vertices labelled 1..k.
    pub fn irreflexive_clique(k: usize) -> TargetGraph {
        let labels: Vec<String> = (1..=k).map(|i| i.to_string()).collect();
        let mut edges = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                edges.push((a, b));
            }
        }
        TargetGraph::from_edges(labels, &edges).unwrap()
    }

    /// Complete reflexive graph on `k` vertices (all loops present).
    pub fn reflexive_clique(k: usize) -> TargetGraph {
        let labels: Vec<String> = (1..=k).map(|i| i.to_string()).collect();
        let mut edges = Vec::new();
        for a in 0..k {
            for b in a..k {
                edges.push((a, b));
            }
        }
        TargetGraph::from_edges(labels, &edges).unwrap()
    }

    /// The five-cycle 1-2-3-4-5 with loops on vertices 1 and 2.
    pub fn c5_loops_12() -> TargetGraph {
        mk(
            &["1", "2", "3", "4", "5"],
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 0), (1, 1)],
        )
    }

    /// The reflexive four-cycle on 1,2,3,4.
    pub fn reflexive_c4() -> TargetGraph {
        mk(
            &["1", "2", "3", "4"],
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (0, 0),
                (1, 1),
                (2, 2),
                (3, 3),
            ],
        )
    }

    /// Vertex-cover target: vertices 1, 2 with edge 12 and a loop on 2 only.
    pub fn vertex_cover_h() -> TargetGraph {
        mk(&["1", "2"], &[(0, 1), (1, 1)])
    }

    /// Reflexive edge: both loops plus the connecting edge.
    pub fn reflexive_k2() -> TargetGraph {
        reflexive_clique(2)
    }
}

#[cfg(test)]
mod tests {
    use super::known::*;
    use super::*;

    #[test]
    fn reflexive_partition_examples() {
        let (r, i) = reflexive_k2().reflexive_partition();
        assert_eq!((r, i), (0b11, 0b00));
        let (r, i) = irreflexive_clique(4).reflexive_partition();
        assert_eq!((r, i), (0b0000, 0b1111));
        let (r, i) = c5_loops_12().reflexive_partition();
        assert_eq!(r, 0b00011);
        assert_eq!(i, 0b11100);
    }

    #[test]
    fn mrc_examples() {
        assert_eq!(irreflexive_clique(4).mrc(), 0);
        assert_eq!(c5_loops_12().mrc(), 2);
        assert_eq!(reflexive_c4().mrc(), 2);
    }

    #[test]
    fn mrc_matches_subset_enumeration() {
        // independent oracle: scan all subsets of V(H)
        for h in [c5_loops_12(), reflexive_c4(), vertex_cover_h()] {
            let mut best = 0;
            for set in 0u32..(1 << h.n()) {
                let ok = (0..h.n())
                    .filter(|&a| set >> a & 1 == 1)
                    .all(|a| h.has_loop(a) && (0..h.n()).all(|b| set >> b & 1 == 0 || h.has_edge(a, b)));
                if ok {
                    best = best.max(set.count_ones() as usize);
                }
            }
            assert_eq!(h.mrc(), best);
        }
    }

    #[test]
    fn comparability_examples() {
        let h = reflexive_k2();
        assert_eq!(h.comparability(0, 1), Comparability::Equal);

        // irreflexive path 1-2-3: endpoints have equal neighborhoods {2}
        let p3 = TargetGraph::from_edges(
            vec!["1".into(), "2".into(), "3".into()],
            &[(0, 1), (1, 2)],
        )
        .unwrap();
        assert_eq!(p3.comparability(0, 2), Comparability::Equal);

        let k4 = irreflexive_clique(4);
        assert_eq!(k4.comparability(0, 1), Comparability::Incomparable);
    }

    #[test]
    fn predator_examples() {
        assert_eq!(reflexive_k2().find_predator(), None);
        assert!(irreflexive_clique(4).find_predator().is_some());

        // K_{2,2} with pendant private neighbors on both sides
        let mut h = TargetGraph::new(
            ["a1", "a2", "b1", "b2", "c1", "c2", "d1", "d2"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
        )
        .unwrap();
        for a in [0, 1] {
            for b in [2, 3] {
                h.add_edge(a, b);
            }
        }
        h.add_edge(0, 4);
        h.add_edge(1, 5);
        h.add_edge(2, 6);
        h.add_edge(3, 7);
        assert_eq!(h.find_predator(), Some((0, 1, 2, 3)));
    }

    #[test]
    fn predator_matches_exhaustive() {
        // equivalence with a direct scan over all ordered 4-tuples, |V(H)| <= 7
        let graphs = [
            c5_loops_12(),
            reflexive_c4(),
            irreflexive_clique(4),
            vertex_cover_h(),
            irreflexive_clique(3),
        ];
        for h in graphs {
            let n = h.n();
            let mut found = false;
            'outer: for a1 in 0..n {
                for a2 in 0..n {
                    for b1 in 0..n {
                        for b2 in 0..n {
                            if a1 >= a2 || b1 >= b2 {
                                continue;
                            }
                            if h.comparability(a1, a2) == Comparability::Incomparable
                                && h.comparability(b1, b2) == Comparability::Incomparable
                                && h.has_edge(a1, b1)
                                && h.has_edge(a1, b2)
                                && h.has_edge(a2, b1)
                                && h.has_edge(a2, b2)
                            {
                                found = true;
                                break 'outer;
                            }
                        }
                    }
                }
            }
            assert_eq!(h.find_predator().is_some(), found, "H = {:?}", h.labels());
        }
    }

    #[test]
    fn strong_split_examples() {
        assert!(reflexive_clique(3).is_strong_split());
        assert!(!irreflexive_clique(2).is_strong_split());
        assert!(!reflexive_c4().is_strong_split());
        assert!(vertex_cover_h().is_strong_split());
    }

    #[test]
    fn hstar_construction() {
        // single looped vertex: H* is the single edge a'a''
        let h = TargetGraph::from_edges(vec!["a".into()], &[(0, 0)]).unwrap();
        let assoc = h.build_associated_bipartite();
        assert_eq!(assoc.hstar.n(), 2);
        assert!(assoc.hstar.has_edge(0, 1));
        assert_eq!(assoc.hstar.edge_count(), 1);

        // irreflexive K2: two disjoint edges a'b'', b'a''
        let h = irreflexive_clique(2);
        let assoc = h.build_associated_bipartite();
        assert_eq!(assoc.hstar.n(), 4);
        assert!(assoc.hstar.has_edge(0, 3));
        assert!(assoc.hstar.has_edge(1, 2));
        assert_eq!(assoc.hstar.edge_count(), 2);
    }

    #[test]
    fn hstar_edge_count_identity() {
        // |E(H*)| = 2 * (nonloop edges) + loops
        for h in [c5_loops_12(), reflexive_c4(), irreflexive_clique(4)] {
            let assoc = h.build_associated_bipartite();
            let loops = (0..h.n()).filter(|&a| h.has_loop(a)).count();
            let nonloop = h.edge_count() - loops;
            assert_eq!(assoc.hstar.edge_count(), 2 * nonloop + loops);
            assert!(assoc.hstar.reflexive_mask() == 0);
        }
    }

    #[test]
    fn consistency_examples() {
        let h = c5_loops_12();
        let assoc = h.build_associated_bipartite();
        // single vertex with list inside X
        let g1 = Graph::new(1);
        assert!(is_consistent_instance(&g1, &[0b1], &assoc));
        // edge with both lists inside X: violates both patterns
        let mut g2 = Graph::new(2);
        g2.add_edge(0, 1);
        assert!(!is_consistent_instance(&g2, &[0b1, 0b10], &assoc));
        // odd cycle: not bipartite
        let mut g3 = Graph::new(3);
        g3.add_edge(0, 1);
        g3.add_edge(1, 2);
        g3.add_edge(2, 0);
        let y = assoc.side_mask(Side::Y);
        let x = assoc.side_mask(Side::X);
        assert!(!is_consistent_instance(&g3, &[x, y, x], &assoc));
    }

    #[test]
    fn projection_collapses_ticks() {
        let h = c5_loops_12();
        let assoc = h.build_associated_bipartite();
        let g = Graph::new(1);
        // L*(v) = {a'} with a = vertex 0
        let lists = project_consistent(&g, &[1 << 0], &assoc).unwrap();
        assert_eq!(lists[0], 1 << 0);
        // L*(v) = {a', b'}
        let lists = project_consistent(&g, &[0b11], &assoc).unwrap();
        assert_eq!(lists[0], 0b11);
    }

    #[test]
    fn gadget_verifier_rejects_free_triple() {
        // three isolated interface vertices admit bbb, so OR3 must fail
        let h = c5_loops_12();
        let a = 2; // color 3
        let b = 4; // color 5
        let g = Gadget {
            graph: Graph::new(3),
            lists: vec![(1 << a) | (1 << b); 3],
            interface: vec![0, 1, 2],
        };
        assert!(!verify_or3_gadget(&g, &h, a, b).unwrap());
    }

    #[test]
    fn switch_verifier_rejects_free_pair() {
        let h = c5_loops_12();
        let g = Gadget {
            graph: Graph::new(2),
            lists: vec![(1 << 2) | (1 << 4), (1 << 2) | (1 << 4)],
            interface: vec![0, 1],
        };
        assert!(!verify_switch_gadget(&g, &h, 2, 4, 4, 2).unwrap());
    }

    #[test]
    fn parse_roundtrip() {
        let h = c5_loops_12();
        let text = h.to_text();
        let back = TargetGraph::parse(&text).unwrap();
        assert_eq!(h, back);
    }
}
