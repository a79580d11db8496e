//! Pair graph of a sliding block code: two source paths read in lockstep
//! with equal outputs.

use std::collections::VecDeque;

use crate::analysis::Digraph;
use crate::code::{window_graph, SlidingBlockCode, WindowGraph};
use crate::shift::essential_vertices;
use crate::shift::{EpConfig, PeriodicConfig, Symbol, Word};

/// Edge of the pair graph: two window-graph edges with the same label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairEdge {
    pub source: usize,
    pub target: usize,
    pub first: usize,
    pub second: usize,
}

/// Trimmed pair graph. Vertex `(u, v)` is diagonal when `u = v`.
#[derive(Debug, Clone)]
pub struct PairGraph {
    pub window: WindowGraph,
    pub vertices: Vec<(usize, usize)>,
    pub edges: Vec<PairEdge>,
    out: Vec<Vec<usize>>,
}

impl PairGraph {
    pub fn new(code: &SlidingBlockCode) -> Self {
        let g = window_graph(code);
        let n = g.vertex_count();
        let mut raw: Vec<(usize, usize, usize, usize)> = Vec::new();
        for u in 0..n {
            for v in 0..n {
                for &e in g.out_edges(u) {
                    for &f in g.out_edges(v) {
                        let (ee, ff) = (&g.edges[e], &g.edges[f]);
                        if ee.label == ff.label {
                            raw.push((u * n + v, ee.target * n + ff.target, e, f));
                        }
                    }
                }
            }
        }
        let pairs: Vec<(usize, usize)> = raw.iter().map(|r| (r.0, r.1)).collect();
        let alive = essential_vertices(n * n, &pairs);
        let mut id = vec![usize::MAX; n * n];
        let mut vertices = Vec::new();
        for (k, &a) in alive.iter().enumerate() {
            if a {
                id[k] = vertices.len();
                vertices.push((k / n, k % n));
            }
        }
        let edges: Vec<PairEdge> = raw
            .into_iter()
            .filter(|r| alive[r.0] && alive[r.1])
            .map(|(s, t, first, second)| PairEdge {
                source: id[s],
                target: id[t],
                first,
                second,
            })
            .collect();
        let mut out = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            out[e.source].push(i);
        }
        PairGraph {
            window: g,
            vertices,
            edges,
            out,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_diagonal(&self, v: usize) -> bool {
        let (a, b) = self.vertices[v];
        a == b
    }

    pub fn off_diagonal_count(&self) -> usize {
        (0..self.vertex_count())
            .filter(|&v| !self.is_diagonal(v))
            .count()
    }

    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    fn symbols(&self, path: &[usize]) -> (Vec<Symbol>, Vec<Symbol>) {
        path.iter()
            .map(|&i| {
                let e = &self.edges[i];
                (
                    self.window.edges[e.first].symbol,
                    self.window.edges[e.second].symbol,
                )
            })
            .unzip()
    }

    /// Shortest cycle through `v`, as pair-edge indices starting at `v`.
    fn shortest_cycle(&self, v: usize) -> Option<Vec<usize>> {
        let mut prev: Vec<Option<usize>> = vec![None; self.vertex_count()];
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            for &i in self.out_edges(u) {
                let t = self.edges[i].target;
                if t == v {
                    let mut path = vec![i];
                    let mut cur = u;
                    while cur != v {
                        let j = prev[cur].expect("BFS parent");
                        path.push(j);
                        cur = self.edges[j].source;
                    }
                    path.reverse();
                    return Some(path);
                }
                if prev[t].is_none() && t != v {
                    prev[t] = Some(i);
                    queue.push_back(t);
                }
            }
        }
        None
    }

    /// Shortest diamond: pair edges leaving a diagonal vertex, staying
    /// off-diagonal, and re-entering the diagonal.
    ///
    /// The search is a BFS over off-diagonal vertices, so every excursion it
    /// returns repeats no pair state and has length at most the number of
    /// off-diagonal vertices plus one. Any longer diamond contains a repeated
    /// pair state and shortens to one within that bound.
    pub fn shortest_diamond(&self) -> Option<Vec<usize>> {
        let mut prev: Vec<Option<usize>> = vec![None; self.vertex_count()];
        let mut queue = VecDeque::new();
        let finish = |prev: &[Option<usize>], last: usize| {
            let mut path = vec![last];
            let mut cur = self.edges[last].source;
            while !self.is_diagonal(cur) {
                let j = prev[cur].expect("BFS parent");
                path.push(j);
                cur = self.edges[j].source;
            }
            path.reverse();
            path
        };
        for d in (0..self.vertex_count()).filter(|&d| self.is_diagonal(d)) {
            for &i in self.out_edges(d) {
                let t = self.edges[i].target;
                if !self.is_diagonal(t) && prev[t].is_none() {
                    prev[t] = Some(i);
                    queue.push_back(t);
                }
            }
        }
        while let Some(u) = queue.pop_front() {
            for &i in self.out_edges(u) {
                let t = self.edges[i].target;
                if self.is_diagonal(t) {
                    return Some(finish(&prev, i));
                }
                if prev[t].is_none() {
                    prev[t] = Some(i);
                    queue.push_back(t);
                }
            }
        }
        None
    }
}

/// Window-graph helpers for closing finite paths into eventually periodic
/// points.
struct Closer<'a> {
    g: &'a WindowGraph,
    recurrent: Vec<bool>,
    pred: Vec<Vec<usize>>,
}

impl<'a> Closer<'a> {
    fn new(g: &'a WindowGraph) -> Self {
        let d = Digraph::from_pairs(
            g.vertex_count(),
            g.edges.iter().map(|e| (e.source, e.target)),
        );
        let mut recurrent = vec![false; g.vertex_count()];
        for scc in d.sccs() {
            if scc.recurrent {
                for &v in &scc.vertices {
                    recurrent[v] = true;
                }
            }
        }
        let mut pred = vec![Vec::new(); g.vertex_count()];
        for (i, e) in g.edges.iter().enumerate() {
            pred[e.target].push(i);
        }
        Closer { g, recurrent, pred }
    }

    fn symbols(&self, path: &[usize]) -> Vec<Symbol> {
        path.iter().map(|&i| self.g.edges[i].symbol).collect()
    }

    /// Shortest path from some recurrent vertex into `v`.
    fn path_into(&self, v: usize) -> (usize, Vec<usize>) {
        let mut next: Vec<Option<usize>> = vec![None; self.g.vertex_count()];
        let mut seen = vec![false; self.g.vertex_count()];
        seen[v] = true;
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            if self.recurrent[u] {
                let mut path = Vec::new();
                let mut cur = u;
                while cur != v {
                    let i = next[cur].expect("BFS parent");
                    path.push(i);
                    cur = self.g.edges[i].target;
                }
                return (u, path);
            }
            for &i in &self.pred[u] {
                let s = self.g.edges[i].source;
                if !seen[s] {
                    seen[s] = true;
                    next[s] = Some(i);
                    queue.push_back(s);
                }
            }
        }
        unreachable!("every window-graph vertex lies on a bi-infinite path")
    }

    /// Shortest path from `v` to some recurrent vertex.
    fn path_from(&self, v: usize) -> (usize, Vec<usize>) {
        let mut prev: Vec<Option<usize>> = vec![None; self.g.vertex_count()];
        let mut seen = vec![false; self.g.vertex_count()];
        seen[v] = true;
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            if self.recurrent[u] {
                let mut path = Vec::new();
                let mut cur = u;
                while cur != v {
                    let i = prev[cur].expect("BFS parent");
                    path.push(i);
                    cur = self.g.edges[i].source;
                }
                path.reverse();
                return (u, path);
            }
            for &i in self.g.out_edges(u) {
                let t = self.g.edges[i].target;
                if !seen[t] {
                    seen[t] = true;
                    prev[t] = Some(i);
                    queue.push_back(t);
                }
            }
        }
        unreachable!("every window-graph vertex lies on a bi-infinite path")
    }

    /// Shortest cycle at a recurrent vertex.
    fn cycle_at(&self, v: usize) -> Vec<usize> {
        let mut prev: Vec<Option<usize>> = vec![None; self.g.vertex_count()];
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            for &i in self.g.out_edges(u) {
                let t = self.g.edges[i].target;
                if t == v {
                    let mut path = vec![i];
                    let mut cur = u;
                    while cur != v {
                        let j = prev[cur].expect("BFS parent");
                        path.push(j);
                        cur = self.g.edges[j].source;
                    }
                    path.reverse();
                    return path;
                }
                if prev[t].is_none() && t != v {
                    prev[t] = Some(i);
                    queue.push_back(t);
                }
            }
        }
        unreachable!("recurrent vertex without a cycle")
    }
}

/// Result of an injectivity or pre-injectivity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairVerdict {
    pub holds: bool,
    /// Two distinct points with equal image; homoclinic for the
    /// pre-injectivity test.
    pub witness: Option<(EpConfig, EpConfig)>,
}

impl PairVerdict {
    fn holds() -> Self {
        PairVerdict {
            holds: true,
            witness: None,
        }
    }

    fn fails(x: EpConfig, y: EpConfig) -> Self {
        PairVerdict {
            holds: false,
            witness: Some((x.normalized(), y.normalized())),
        }
    }
}

/// Two homoclinic points built around a diamond of the pair graph.
fn diamond_witness(pg: &PairGraph, diamond: &[usize]) -> (EpConfig, EpConfig) {
    let closer = Closer::new(&pg.window);
    let start = pg.vertices[pg.edges[diamond[0]].source].0;
    let end = pg.vertices[pg.edges[*diamond.last().expect("non-empty")].target].0;
    let (z0, into) = closer.path_into(start);
    let (z1, from) = closer.path_from(end);
    let left = closer.symbols(&closer.cycle_at(z0));
    let right = closer.symbols(&closer.cycle_at(z1));
    let (mid_x, mid_y) = pg.symbols(diamond);
    let head = closer.symbols(&into);
    let tail = closer.symbols(&from);
    let bridge =
        |mid: &[Symbol]| -> Word { Word([head.as_slice(), mid, tail.as_slice()].concat()) };
    (
        EpConfig::new(left.clone(), bridge(&mid_x), right.clone(), 0),
        EpConfig::new(left, bridge(&mid_y), right, 0),
    )
}

/// Injective iff the trimmed pair graph has no off-diagonal vertex.
///
/// The witness is read off the shortest cycle through an off-diagonal
/// vertex, ties broken by the pair of periodic words; when no off-diagonal
/// vertex lies on a cycle, a diamond supplies a homoclinic witness.
pub fn is_injective(code: &SlidingBlockCode) -> PairVerdict {
    is_injective_on(&PairGraph::new(code))
}

pub fn is_injective_on(pg: &PairGraph) -> PairVerdict {
    let mut best: Option<(usize, Word, Word)> = None;
    for v in (0..pg.vertex_count()).filter(|&v| !pg.is_diagonal(v)) {
        if let Some(cycle) = pg.shortest_cycle(v) {
            let (x, y) = pg.symbols(&cycle);
            let cand = (cycle.len(), Word(x), Word(y));
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    if let Some((_, x, y)) = best {
        return PairVerdict::fails(
            PeriodicConfig::new(x).to_ep(),
            PeriodicConfig::new(y).to_ep(),
        );
    }
    match pg.shortest_diamond() {
        Some(d) => {
            let (x, y) = diamond_witness(pg, &d);
            PairVerdict::fails(x, y)
        }
        None => {
            debug_assert_eq!(pg.off_diagonal_count(), 0);
            PairVerdict::holds()
        }
    }
}

/// Pre-injective iff the trimmed pair graph has no diamond.
pub fn is_pre_injective(code: &SlidingBlockCode) -> PairVerdict {
    is_pre_injective_on(&PairGraph::new(code))
}

pub fn is_pre_injective_on(pg: &PairGraph) -> PairVerdict {
    match pg.shortest_diamond() {
        Some(d) => {
            let (x, y) = diamond_witness(pg, &d);
            PairVerdict::fails(x, y)
        }
        None => PairVerdict::holds(),
    }
}
